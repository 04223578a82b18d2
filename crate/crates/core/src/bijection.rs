//! The box-peeling correspondence between rigged configurations and tensor
//! products of KR tableaux: the single-box step and its inverse, the
//! splitting maps, the full correspondence in both directions, and the
//! filling recursions for the rectangle families.

use std::collections::BTreeSet;

use serde_json::{json, Value};

use crate::cartan::CartanType;
use crate::crystal;
use crate::rc::{RiggedConfig, TensorShape, TwoRowParams};
use crate::tableaux::{KrTableau, Letter, TensorProduct};

/// Boxes removed from the two partitions by one peeling step, per letter.
pub fn removal_counts(b: Letter) -> (i64, i64) {
    match b {
        Letter::One => (0, 0),
        Letter::Two => (1, 0),
        Letter::Three => (1, 1),
        Letter::Zero | Letter::Empty => (2, 1),
        Letter::ThreeBar => (3, 1),
        Letter::TwoBar => (3, 2),
        Letter::OneBar => (4, 2),
    }
}

/// Trace of one peeling step: the letter, the selected levels (lengths at
/// the moment each box is removed, after any resets), and case tags.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DeltaStep {
    pub letter: Letter,
    pub l1: Option<i64>,
    pub l2: Option<i64>,
    pub l3: Option<i64>,
    pub l3bar: Option<i64>,
    pub l2bar: Option<i64>,
    pub l1bar: Option<i64>,
    pub cases: Vec<&'static str>,
}

impl DeltaStep {
    pub fn to_json(&self) -> Value {
        let lvl = |v: Option<i64>| v.map(Value::from).unwrap_or(Value::Null);
        json!({
            "letter": self.letter.symbol(),
            "levels": {
                "l1": lvl(self.l1),
                "l2": lvl(self.l2),
                "l3": lvl(self.l3),
                "l3bar": lvl(self.l3bar),
                "l2bar": lvl(self.l2bar),
                "l1bar": lvl(self.l1bar),
            },
            "cases": self.cases,
        })
    }
}

#[derive(Clone)]
struct Work {
    len: i64,
    rig: i64,
    used: bool,
    boxes: i64,
    quasi_final: bool,
}

/// One peeling step on a configuration whose leftmost factor is a single
/// cell.  Returns the emitted letter and the configuration over the
/// remaining factors.
pub fn delta(rc: &RiggedConfig) -> (Letter, RiggedConfig) {
    let (b, out, _) = delta_traced(rc);
    (b, out)
}

pub fn delta_traced(rc: &RiggedConfig) -> (Letter, RiggedConfig, DeltaStep) {
    assert_eq!(rc.ty(), CartanType::G2);
    assert_eq!(
        rc.shape().factors().first(),
        Some(&(1, 1)),
        "peeling consumes a leading single cell"
    );

    // All selections are made against the input labels.  A string one short
    // of singular only acts quasi-singular when no unused singular string of
    // its length remains, which the singular-first preference below encodes.
    let vac = |a: u8, len: i64| rc.vacancy(a, len);
    let mut work: Vec<Vec<Work>> = (1u8..=2)
        .map(|a| {
            rc.strings(a)
                .iter()
                .map(|&(len, rig)| Work {
                    len,
                    rig,
                    used: false,
                    boxes: 0,
                    quasi_final: false,
                })
                .collect()
        })
        .collect();
    let is_singular = |a: u8, w: &Work| w.rig == vac(a, w.len);
    let is_quasi = |a: u8, w: &Work| w.rig == vac(a, w.len) - 1;

    // Scan for the shortest unused singular string of length >= floor.
    let pick_singular = |work: &[Work], a: u8, floor: i64| -> Option<usize> {
        work.iter()
            .enumerate()
            .filter(|(_, w)| !w.used && w.len >= floor && is_singular(a, w))
            .min_by_key(|(_, w)| w.len)
            .map(|(i, _)| i)
    };

    let mut step = DeltaStep {
        letter: Letter::One,
        l1: None,
        l2: None,
        l3: None,
        l3bar: None,
        l2bar: None,
        l1bar: None,
        cases: Vec::new(),
    };

    let letter = 'emit: {
        // First pass through the first partition.
        let Some(i1) = pick_singular(&work[0], 1, 1) else {
            break 'emit Letter::One;
        };
        work[0][i1].used = true;
        work[0][i1].boxes = 1;
        step.l1 = Some(work[0][i1].len);

        // First pass through the second partition.
        let Some(i2) = pick_singular(&work[1], 2, work[0][i1].len) else {
            break 'emit Letter::Two;
        };
        work[1][i2].used = true;
        work[1][i2].boxes = 1;
        step.l2 = Some(work[1][i2].len);

        // Second pass through the first partition: singular or
        // quasi-singular strings count.
        let floor = step.l2.unwrap();
        let cand = work[0]
            .iter()
            .enumerate()
            .filter(|(_, w)| !w.used && w.len >= floor && (is_singular(1, w) || is_quasi(1, w)))
            .min_by_key(|(_, w)| (w.len, !is_singular(1, w)))
            .map(|(i, _)| i);
        let Some(i3) = cand else {
            break 'emit Letter::Three;
        };
        if is_singular(1, &work[0][i3]) {
            let len = work[0][i3].len;
            if len == 1 {
                work[0][i3].used = true;
                work[0][i3].boxes = 1;
                step.l3 = Some(1);
                step.cases.push("P");
                break 'emit Letter::Empty;
            }
            work[0][i3].used = true;
            work[0][i3].boxes = 2;
            step.l3 = Some(len - 1);
            step.l3bar = Some(len);
            step.cases.push("S");
        } else {
            // Quasi-singular: search for a strictly longer singular partner.
            let len = work[0][i3].len;
            work[0][i3].used = true;
            work[0][i3].boxes = 1;
            step.l3 = Some(len);
            let partner = work[0]
                .iter()
                .enumerate()
                .filter(|(_, w)| !w.used && w.len > len && is_singular(1, w))
                .min_by_key(|(_, w)| w.len)
                .map(|(i, _)| i);
            match partner {
                None => {
                    step.cases.push("Q");
                    break 'emit Letter::Zero;
                }
                Some(j) => {
                    work[0][j].used = true;
                    work[0][j].boxes = 1;
                    work[0][j].quasi_final = true;
                    step.l3bar = Some(work[0][j].len);
                    step.cases.push("QS");
                }
            }
        }

        // Return pass through the second partition.
        if step.l2 == step.l3bar {
            work[1][i2].boxes = 2;
            step.l2bar = step.l2;
            step.l2 = Some(step.l2bar.unwrap() - 1);
            step.cases.push("S2@2");
        } else {
            let Some(j2) = pick_singular(&work[1], 2, step.l3bar.unwrap()) else {
                break 'emit Letter::ThreeBar;
            };
            work[1][j2].used = true;
            work[1][j2].boxes = 1;
            step.l2bar = Some(work[1][j2].len);
        }

        // Return pass through the first partition.
        if step.l1 == step.l2bar {
            work[0][i1].boxes = 2;
            step.l1bar = step.l1;
            step.l1 = Some(step.l1bar.unwrap() - 1);
            step.cases.push("S2@1");
            break 'emit Letter::OneBar;
        }
        let Some(j1) = pick_singular(&work[0], 1, step.l2bar.unwrap()) else {
            break 'emit Letter::TwoBar;
        };
        work[0][j1].used = true;
        work[0][j1].boxes = 1;
        step.l1bar = Some(work[0][j1].len);
        Letter::OneBar
    };
    step.letter = letter;

    // Assemble the output configuration: peel the leading factor, shorten
    // the selected strings, re-rig changed strings singular (the longer
    // partner of a quasi-singular selection becomes quasi-singular), keep
    // the labels of untouched strings.
    let out_shape = TensorShape::new(CartanType::G2, rc.shape().factors()[1..].to_vec());
    let skeleton: Vec<Vec<(i64, i64)>> = work
        .iter()
        .map(|strings| {
            strings
                .iter()
                .filter(|w| w.len > w.boxes)
                .map(|w| (w.len - w.boxes, 0))
                .collect()
        })
        .collect();
    let probe = RiggedConfig::from_parts(out_shape.clone(), skeleton);
    let nu: Vec<Vec<(i64, i64)>> = work
        .iter()
        .enumerate()
        .map(|(node, strings)| {
            let a = node as u8 + 1;
            strings
                .iter()
                .filter(|w| w.len > w.boxes)
                .map(|w| {
                    let len = w.len - w.boxes;
                    if w.boxes == 0 {
                        (len, w.rig)
                    } else {
                        let p = probe.vacancy(a, len);
                        (len, if w.quasi_final { p - 1 } else { p })
                    }
                })
                .collect()
        })
        .collect();
    let out = RiggedConfig::from_parts(out_shape, nu);

    // The removed boxes account for the letter's weight.
    assert_eq!(
        out.weight(),
        rc.weight() - letter.weight(),
        "peeled weight mismatch at {rc}"
    );
    let (n1, n2) = removal_counts(letter);
    let removed: Vec<i64> = work
        .iter()
        .map(|strings| strings.iter().map(|w| w.boxes).sum())
        .collect();
    assert_eq!(removed, vec![n1, n2], "box count mismatch for {letter}");

    // Vacancy changes follow the level indicators.
    let chi = |lvl: Option<i64>, i: i64| i64::from(lvl.is_some_and(|l| i >= l));
    let max_len = 2 + work.iter().flatten().map(|w| w.len).max().unwrap_or(0);
    for i in 1..=max_len {
        let row = chi(step.l1, i) + chi(step.l3, i) + chi(step.l3bar, i) + chi(step.l1bar, i);
        let col = chi(step.l2, i) + chi(step.l2bar, i);
        assert_eq!(
            out.vacancy(1, i) - rc.vacancy(1, i),
            -1 + 2 * row - 3 * col,
            "first-node vacancy change at length {i}"
        );
        assert_eq!(
            out.vacancy(2, i) - rc.vacancy(2, i),
            2 * col - row,
            "second-node vacancy change at length {i}"
        );
    }

    (letter, out, step)
}

/// Inverse peeling: prepend a single-cell factor carrying the letter.  The
/// preimage is found among the configurations that grow the currently
/// singular or quasi-singular strings by the letter's box counts, and is
/// certified by running the forward step.
pub fn delta_inv(b: Letter, rc: &RiggedConfig) -> RiggedConfig {
    assert_eq!(rc.ty(), CartanType::G2);
    let mut factors = vec![(1u8, 1u8)];
    factors.extend_from_slice(rc.shape().factors());
    let shape = TensorShape::new(CartanType::G2, factors);

    if b == Letter::One {
        return RiggedConfig::from_parts(shape, rc.nu().to_vec());
    }
    if b == Letter::Empty {
        let mut nu = rc.nu().to_vec();
        nu[0].push((1, 0));
        nu[0].push((1, 0));
        nu[1].push((1, 0));
        let probe = RiggedConfig::from_parts(shape.clone(), nu.clone());
        nu[0].pop();
        nu[0].pop();
        nu[1].pop();
        nu[0].push((1, probe.vacancy(1, 1)));
        nu[0].push((1, probe.vacancy(1, 1)));
        nu[1].push((1, probe.vacancy(2, 1)));
        let out = RiggedConfig::from_parts(shape, nu);
        debug_assert_eq!(delta(&out), (b, rc.clone()));
        return out;
    }

    let (n1, n2) = removal_counts(b);
    let plans1 = growth_plans(rc, 1, n1);
    let plans2 = growth_plans(rc, 2, n2);
    for p1 in &plans1 {
        for p2 in &plans2 {
            // At most one changed string of the first partition may end
            // quasi-singular: a singly grown, currently singular one.
            let mut quasi_options: Vec<Option<usize>> = vec![None];
            if matches!(
                b,
                Letter::Zero | Letter::ThreeBar | Letter::TwoBar | Letter::OneBar
            ) {
                for (slot, &(_, grow, was_quasi)) in p1.iter().enumerate() {
                    if grow == 1 && !was_quasi {
                        quasi_options.push(Some(slot));
                    }
                }
                if b == Letter::Zero {
                    // The forward step's plain quasi-singular case demands it.
                    quasi_options.remove(0);
                }
            }
            for &quasi_slot in &quasi_options {
                let cand = build_grown(rc, &shape, p1, p2, quasi_slot);
                if !cand.is_valid() {
                    continue;
                }
                let (letter, peeled, _) = delta_traced(&cand);
                if letter == b && peeled == *rc {
                    return cand;
                }
            }
        }
    }
    panic!("no preimage for {b} at {rc}");
}

/// Growth plans for one node: assignments of 1 or 2 extra boxes to strings
/// that are currently singular (or quasi-singular, which must then regrow
/// to singular) plus up to two new strings, totalling `boxes`.
/// Entries are `(string index or usize::MAX for new, growth, was_quasi)`.
fn growth_plans(rc: &RiggedConfig, a: u8, boxes: i64) -> Vec<Vec<(usize, i64, bool)>> {
    let strings = rc.strings(a);
    let vac = |len: i64| rc.vacancy(a, len);
    let mut cands: Vec<(usize, bool)> = Vec::new();
    for (i, &(len, rig)) in strings.iter().enumerate() {
        if rig == vac(len) {
            cands.push((i, false));
        } else if rig == vac(len) - 1 {
            cands.push((i, true));
        }
    }

    let mut out = Vec::new();
    let mut cur: Vec<(usize, i64, bool)> = Vec::new();
    fn rec(
        cands: &[(usize, bool)],
        pos: usize,
        remaining: i64,
        cur: &mut Vec<(usize, i64, bool)>,
        out: &mut Vec<Vec<(usize, i64, bool)>>,
    ) {
        if pos == cands.len() {
            // New strings of one or two boxes, at most two, unordered.
            fn virt(
                remaining: i64,
                max_growth: i64,
                count: usize,
                cur: &mut Vec<(usize, i64, bool)>,
                out: &mut Vec<Vec<(usize, i64, bool)>>,
            ) {
                if remaining == 0 {
                    out.push(cur.clone());
                    return;
                }
                if count == 2 {
                    return;
                }
                for g in (1..=max_growth.min(remaining)).rev() {
                    cur.push((usize::MAX, g, false));
                    virt(remaining - g, g, count + 1, cur, out);
                    cur.pop();
                }
            }
            virt(remaining, 2, 0, cur, out);
            return;
        }
        let (idx, was_quasi) = cands[pos];
        let max = if was_quasi { 1 } else { 2 };
        for g in 0..=max.min(remaining) {
            if g > 0 {
                cur.push((idx, g, was_quasi));
            }
            rec(cands, pos + 1, remaining - g, cur, out);
            if g > 0 {
                cur.pop();
            }
        }
    }
    rec(&cands, 0, boxes, &mut cur, &mut out);
    out
}

/// Apply growth plans and re-rig: untouched strings keep labels, changed
/// strings become singular, except the chosen slot of the first partition
/// which becomes quasi-singular.
fn build_grown(
    rc: &RiggedConfig,
    shape: &TensorShape,
    p1: &[(usize, i64, bool)],
    p2: &[(usize, i64, bool)],
    quasi_slot: Option<usize>,
) -> RiggedConfig {
    let mut nu: Vec<Vec<(i64, i64)>> = Vec::with_capacity(2);
    let mut changed: Vec<Vec<Option<bool>>> = Vec::with_capacity(2);
    for (node, plan) in [p1, p2].into_iter().enumerate() {
        let strings = rc.strings(node as u8 + 1);
        let mut rows: Vec<(i64, i64)> = strings.to_vec();
        let mut marks: Vec<Option<bool>> = vec![None; rows.len()];
        for (slot, &(idx, grow, _)) in plan.iter().enumerate() {
            let quasi = node == 0 && quasi_slot == Some(slot);
            if idx == usize::MAX {
                rows.push((grow, 0));
                marks.push(Some(quasi));
            } else {
                rows[idx].0 += grow;
                marks[idx] = Some(quasi);
            }
        }
        nu.push(rows);
        changed.push(marks);
    }
    let skeleton: Vec<Vec<(i64, i64)>> = nu
        .iter()
        .map(|rows| rows.iter().map(|&(len, _)| (len, 0)).collect())
        .collect();
    let probe = RiggedConfig::from_parts(shape.clone(), skeleton);
    for (node, rows) in nu.iter_mut().enumerate() {
        let a = node as u8 + 1;
        for (row, mark) in rows.iter_mut().zip(&changed[node]) {
            if let Some(quasi) = mark {
                row.1 = probe.vacancy(a, row.0) - i64::from(*quasi);
            }
        }
    }
    RiggedConfig::from_parts(shape.clone(), nu)
}

/// Split the leading rectangle into its leftmost column and the rest.  The
/// string data is untouched.
pub fn left_split(rc: &RiggedConfig) -> RiggedConfig {
    let factors = rc.shape().factors();
    let &(r, s) = factors.first().expect("nonempty shape");
    assert!(s >= 2, "only widths of at least two split");
    let mut new_factors = vec![(r, 1), (r, s - 1)];
    new_factors.extend_from_slice(&factors[1..]);
    RiggedConfig::from_parts(TensorShape::new(rc.ty(), new_factors), rc.nu().to_vec())
}

/// Merge a leading column back into the following rectangle.
pub fn left_split_inv(rc: &RiggedConfig) -> RiggedConfig {
    let factors = rc.shape().factors();
    assert!(factors.len() >= 2, "need a column and a rectangle");
    let (r1, s1) = factors[0];
    let (r2, s2) = factors[1];
    assert!(s1 == 1 && r1 == r2, "column must match the rectangle");
    let mut new_factors = vec![(r1, s2 + 1)];
    new_factors.extend_from_slice(&factors[2..]);
    let out = RiggedConfig::from_parts(TensorShape::new(rc.ty(), new_factors), rc.nu().to_vec());
    assert!(out.is_valid(), "merge keeps riggings within vacancies");
    out
}

/// Split the rightmost rectangle into the rest and its rightmost column.
pub fn right_split(rc: &RiggedConfig) -> RiggedConfig {
    let factors = rc.shape().factors();
    let &(r, s) = factors.last().expect("nonempty shape");
    assert!(s >= 2, "only widths of at least two split");
    let mut new_factors = factors[..factors.len() - 1].to_vec();
    new_factors.push((r, s - 1));
    new_factors.push((r, 1));
    RiggedConfig::from_parts(TensorShape::new(rc.ty(), new_factors), rc.nu().to_vec())
}

/// Split a leading two-row column into two cells, adding a singular string
/// of length one to the first partition.  Vacancy numbers are unchanged.
pub fn left_box_split(rc: &RiggedConfig) -> RiggedConfig {
    let factors = rc.shape().factors();
    assert_eq!(
        factors.first(),
        Some(&(2, 1)),
        "leading factor must be a two-row column"
    );
    let mut new_factors = vec![(1, 1), (1, 1)];
    new_factors.extend_from_slice(&factors[1..]);
    let shape = TensorShape::new(rc.ty(), new_factors);
    let mut nu = rc.nu().to_vec();
    nu[0].push((1, 0));
    let probe = RiggedConfig::from_parts(shape.clone(), nu.clone());
    let p = probe.vacancy(1, 1);
    let last = nu[0].len() - 1;
    nu[0][last] = (1, p);
    RiggedConfig::from_parts(shape, nu)
}

/// Merge two leading cells into a two-row column, removing one singular
/// string of length one from the first partition.
pub fn left_box_split_inv(rc: &RiggedConfig) -> RiggedConfig {
    let factors = rc.shape().factors();
    assert!(
        factors.len() >= 2 && factors[0] == (1, 1) && factors[1] == (1, 1),
        "need two leading cells"
    );
    let mut new_factors = vec![(2, 1)];
    new_factors.extend_from_slice(&factors[2..]);
    let mut nu = rc.nu().to_vec();
    let pos = nu[0]
        .iter()
        .position(|&(len, rig)| len == 1 && rig == rc.vacancy(1, 1))
        .expect("a singular string of length one to remove");
    nu[0].remove(pos);
    RiggedConfig::from_parts(TensorShape::new(rc.ty(), new_factors), nu)
}

/// Split a trailing two-row column into two cells, adding a string of
/// length one with rigging zero to the first partition.
pub fn right_box_split(rc: &RiggedConfig) -> RiggedConfig {
    let factors = rc.shape().factors();
    assert_eq!(
        factors.last(),
        Some(&(2, 1)),
        "trailing factor must be a two-row column"
    );
    let mut new_factors = factors[..factors.len() - 1].to_vec();
    new_factors.push((1, 1));
    new_factors.push((1, 1));
    let mut nu = rc.nu().to_vec();
    nu[0].push((1, 0));
    RiggedConfig::from_parts(TensorShape::new(rc.ty(), new_factors), nu)
}

/// Split a trailing two-row column of a tensor product into two cells, by
/// transporting the configuration-side split through the correspondence.
/// The added string is only cosingular at highest weight, so the map is
/// transported there and back along the classical raising path.  This is
/// not a naive cell split: the pair of letters can differ from the entries
/// of the column.
pub fn right_box_split_tensor(tp: &TensorProduct) -> TensorProduct {
    let last = tp.factors().last().expect("nonempty product");
    assert_eq!((last.r(), last.s()), (2, 1));
    let (hw, path) = crystal::to_highest_weight(tp, &[1, 2]);
    let split = phi(&right_box_split(&phi_inv(&hw)));
    let lowering: Vec<u8> = path.iter().rev().copied().collect();
    crystal::apply_f_string(&split, &lowering)
}

/// Full correspondence: peel the configuration factor by factor into the
/// tensor product of filled tableaux.  Cells of each factor are produced
/// columns left to right, bottom cell before top cell.
pub fn phi(rc: &RiggedConfig) -> TensorProduct {
    let mut cur = rc.clone();
    let mut out: Vec<KrTableau> = Vec::new();
    for &(r, s) in rc.shape().factors() {
        match r {
            1 => {
                let mut row = Vec::with_capacity(s as usize);
                for j in 0..s {
                    if s - j > 1 {
                        cur = left_split(&cur);
                    }
                    let (b, next) = delta(&cur);
                    row.push(b);
                    cur = next;
                }
                out.push(KrTableau::new(1, s, vec![row]));
            }
            2 => {
                let mut top = Vec::with_capacity(s as usize);
                let mut bottom = Vec::with_capacity(s as usize);
                for j in 0..s {
                    if s - j > 1 {
                        cur = left_split(&cur);
                    }
                    cur = left_box_split(&cur);
                    let (b1, next) = delta(&cur);
                    let (b2, next) = delta(&next);
                    bottom.push(b1);
                    top.push(b2);
                    cur = next;
                }
                out.push(KrTableau::new(2, s, vec![top, bottom]));
            }
            _ => panic!("unsupported factor ({r},{s})"),
        }
    }
    assert!(cur.shape().factors().is_empty());
    assert!(
        cur.nu().iter().all(|rows| rows.is_empty()),
        "peeling must exhaust the partitions: left {cur} from {rc}"
    );
    TensorProduct::new(out)
}

/// Inverse correspondence: rebuild the configuration cell by cell from the
/// right.
pub fn phi_inv(tp: &TensorProduct) -> RiggedConfig {
    let mut cur = RiggedConfig::vacuum(TensorShape::new(CartanType::G2, Vec::new()));
    for factor in tp.factors().iter().rev() {
        let (r, s) = (factor.r(), factor.s());
        match r {
            1 => {
                for j in (0..s).rev() {
                    cur = delta_inv(factor.rows()[0][j as usize], &cur);
                    if j < s - 1 {
                        cur = left_split_inv(&cur);
                    }
                }
            }
            2 => {
                for j in (0..s).rev() {
                    let top = factor.rows()[0][j as usize];
                    let bottom = factor.rows()[1][j as usize];
                    cur = delta_inv(top, &cur);
                    cur = delta_inv(bottom, &cur);
                    cur = left_box_split_inv(&cur);
                    if j < s - 1 {
                        cur = left_split_inv(&cur);
                    }
                }
            }
            _ => panic!("unsupported factor ({r},{s})"),
        }
    }
    cur
}

/// Peeling step for a leading two-row column: split the column and peel
/// both cells, returning them bottom first.
pub fn delta_prime(rc: &RiggedConfig) -> (Letter, Letter, RiggedConfig) {
    let split = left_box_split(rc);
    let (bottom, rest) = delta(&split);
    let (top, rest) = delta(&rest);
    (bottom, top, rest)
}

/// Filled tableau of the single-row highest weight family member with `k`
/// boxes.
pub fn fill_row(s: u8, k: u8) -> KrTableau {
    KrTableau::highest_row(s, k)
}

/// Filled tableau attached to a two-row family parameter quadruple by the
/// column-emitting recursion.
pub fn fill_two_rows(s: u8, params: &TwoRowParams) -> KrTableau {
    use Letter::*;
    let TwoRowParams { k1, k2, k3, k4 } = *params;
    assert!(
        0 <= k3
            && 2 * k3 <= k2
            && k1 >= 0
            && k1 + k2 <= s as i64
            && (0..=k2 - 2 * k3).contains(&k4),
        "parameters outside the family: {params:?}"
    );
    let mut cols: Vec<(Letter, Letter)> = Vec::with_capacity(s as usize);
    let (mut k1, mut k2, mut k3, mut x) = (k1, k2, k3, k4);
    let mut w = s as i64;
    loop {
        if w == 1 {
            cols.push(match (k1, k2, k3, x) {
                (0, 0, 0, 0) => (One, Two),
                (0, 1, 0, 0) => (One, Zero),
                (0, 1, 0, 1) => (One, Empty),
                (1, 0, 0, 0) => (Empty, Empty),
                other => panic!("unreachable width-one state {other:?}"),
            });
            break;
        }
        if w > k1 + k2 {
            cols.push((One, Two));
            w -= 1;
            continue;
        }
        if k2 == 0 {
            if k1 == 2 {
                assert_eq!(w, 2);
                cols.push((Zero, OneBar));
                cols.push((One, Empty));
                break;
            }
            cols.push((TwoBar, OneBar));
            (k1, k2, k3, x) = (k1 - 3, 2, 1, 0);
            w -= 1;
            continue;
        }
        let xc = (k2 - 2 * k3) - x;
        if xc > 2 {
            cols.push((One, Three));
            (k2, k3) = (k2 - 1, k3 + 1);
        } else if xc == 2 {
            cols.push((Two, Three));
            (k2, x) = (k2 - 1, k2 - 2 * k3 - 1);
        } else if xc == 1 {
            if k3 > 0 {
                cols.push((Two, Zero));
                (k2, k3, x) = (k2 - 1, k3 - 1, k2 - 2 * k3 + 1);
            } else if k2 > 1 {
                cols.push((Three, Zero));
                (k2, x) = (k2 - 2, k2 - 2 * k3 - 2);
            } else {
                cols.push((Zero, Zero));
                (k1, k2, k3, x) = (k1 - 1, 1, 0, 0);
            }
        } else {
            assert_eq!(xc, 0);
            if k3 > 1 {
                cols.push((Two, ThreeBar));
                (k2, k3, x) = (k2 - 1, k3 - 2, k2 - 2 * k3 + 3);
            } else if k3 == 1 {
                cols.push((Three, ThreeBar));
                (k2, k3, x) = (k2 - 2, 0, k2 - 2 * k3);
            } else if k2 > 2 {
                cols.push((Three, TwoBar));
                (k2, x) = (k2 - 3, k2 - 2 * k3 - 3);
            } else if k2 == 2 && k1 > 0 {
                cols.push((Zero, TwoBar));
                (k1, k2, k3, x) = (k1 - 1, 1, 0, 0);
            } else if k2 == 2 && k1 == 0 {
                assert_eq!(w, 2);
                cols.push((One, TwoBar));
                cols.push((One, Two));
                break;
            } else if k1 > 1 {
                cols.push((ThreeBar, TwoBar));
                (k1, k2, k3, x) = (k1 - 2, 2, 0, 0);
            } else {
                assert_eq!((k1, k2), (1, 1));
                assert_eq!(w, 2);
                cols.push((Two, TwoBar));
                cols.push((One, Zero));
                break;
            }
        }
        w -= 1;
    }
    assert_eq!(cols.len(), s as usize);
    let top: Vec<Letter> = cols.iter().map(|c| c.0).collect();
    let bottom: Vec<Letter> = cols.iter().map(|c| c.1).collect();
    KrTableau::new(2, s, vec![top, bottom])
}

/// The full two-row crystal of width `s`: classical closure of the filled
/// highest weight family.
pub fn b2_crystal(s: u8) -> BTreeSet<KrTableau> {
    let seeds = TwoRowParams::all(s)
        .iter()
        .map(|p| fill_two_rows(s, p))
        .collect::<Vec<_>>();
    crystal::generate_closure(seeds, &[1, 2])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal::CrystalElement;
    use crate::rc::enumerate_hw;

    fn running_shape() -> TensorShape {
        TensorShape::new(CartanType::G2, vec![(1, 1), (2, 1), (1, 2)])
    }

    fn rc(shape: &TensorShape, parts: &[&[i64]], rigs: &[&[i64]]) -> RiggedConfig {
        let p: Vec<Vec<i64>> = parts.iter().map(|v| v.to_vec()).collect();
        let r: Vec<Vec<i64>> = rigs.iter().map(|v| v.to_vec()).collect();
        RiggedConfig::from_rows(shape.clone(), &p, &r)
    }

    fn rest_shape() -> TensorShape {
        TensorShape::new(CartanType::G2, vec![(2, 1), (1, 2)])
    }

    #[test]
    fn peeling_golden_cases() {
        let shape = running_shape();
        let rest = rest_shape();

        let (b, out) = delta(&rc(&shape, &[&[4, 1], &[4]], &[&[3, 1], &[-2]]));
        assert_eq!(b, Letter::Three);
        assert_eq!(out, rc(&rest, &[&[4], &[3]], &[&[3], &[-2]]));
        assert_eq!(out.vacancies(), vec![vec![3], vec![-2]]);

        let (b, out) = delta(&rc(&shape, &[&[4, 1], &[4]], &[&[5, 1], &[-2]]));
        assert_eq!(b, Letter::TwoBar);
        assert_eq!(out, rc(&rest, &[&[2], &[2]], &[&[4], &[-1]]));

        let (b, out) = delta(&rc(
            &shape,
            &[&[2, 2, 2, 1, 1], &[2, 1, 1]],
            &[&[-1, -1, -1, 1, -1], &[1, 0, 0]],
        ));
        assert_eq!(b, Letter::OneBar);
        assert_eq!(
            out,
            rc(&rest, &[&[2, 1, 1], &[1, 1]], &[&[-1, 1, -1], &[0, 0]])
        );
        assert_eq!(out.vacancies(), vec![vec![0, 1, 1], vec![0, 0]]);
    }

    #[test]
    fn correspondence_golden_chain() {
        let shape = running_shape();
        let start = rc(&shape, &[&[4, 1], &[4]], &[&[3, 1], &[-2]]);

        let (b, step1) = delta(&start);
        assert_eq!(b, Letter::Three);

        let step2 = left_box_split(&step1);
        assert_eq!(
            step2,
            rc(
                &TensorShape::new(CartanType::G2, vec![(1, 1), (1, 1), (1, 2)]),
                &[&[4, 1], &[3]],
                &[&[3, 2], &[-2]]
            )
        );

        let (b, step3) = delta(&step2);
        assert_eq!(b, Letter::ThreeBar);
        assert_eq!(
            step3,
            rc(
                &TensorShape::new(CartanType::G2, vec![(1, 1), (1, 2)]),
                &[&[2], &[2]],
                &[&[5], &[-2]]
            )
        );

        let (b, step4) = delta(&step3);
        assert_eq!(b, Letter::Three);
        assert_eq!(
            step4,
            rc(
                &TensorShape::new(CartanType::G2, vec![(1, 2)]),
                &[&[1], &[1]],
                &[&[2], &[-1]]
            )
        );

        let step5 = left_split(&step4);
        let (b, step6) = delta(&step5);
        assert_eq!(b, Letter::One);
        assert_eq!(
            step6,
            rc(
                &TensorShape::new(CartanType::G2, vec![(1, 1)]),
                &[&[1], &[1]],
                &[&[2], &[-1]]
            )
        );

        let (b, step7) = delta(&step6);
        assert_eq!(b, Letter::Three);
        assert!(step7.nu().iter().all(|v| v.is_empty()));

        let product = phi(&start);
        assert_eq!(
            product.to_string(),
            "[[3]] \u{2297} [[3],[-3]] \u{2297} [[1,3]]"
        );
        assert_eq!(phi_inv(&product), start);
    }

    fn row_product(widths_and_rows: &[(u8, &[Letter])]) -> TensorProduct {
        TensorProduct::new(
            widths_and_rows
                .iter()
                .map(|&(s, row)| KrTableau::new(1, s, vec![row.to_vec()]))
                .collect(),
        )
    }

    #[test]
    #[allow(clippy::type_complexity)]
    fn inverse_correspondence_golden_rows() {
        use Letter::*;
        // Single wide rows.
        let cases: Vec<(Vec<(u8, Vec<Letter>)>, (&[&[i64]], &[&[i64]]))> = vec![
            (
                vec![(5, vec![One, One, OneBar, One, Empty])],
                (&[&[3, 3], &[3]], &[&[0, 0], &[0]]),
            ),
            (
                vec![(5, vec![One, One, One, OneBar, One])],
                (&[&[2, 2], &[2]], &[&[0, 0], &[0]]),
            ),
            (
                vec![(5, vec![One, OneBar, One, OneBar, One])],
                (&[&[4, 4], &[4]], &[&[0, 0], &[0]]),
            ),
            // A leading cell against a wide row.
            (
                vec![(1, vec![One]), (5, vec![One, One, OneBar, One, Empty])],
                (&[&[3, 3], &[3]], &[&[0, 0], &[0]]),
            ),
            (
                vec![(1, vec![Two]), (5, vec![One, One, One, OneBar, One])],
                (&[&[3, 2], &[2]], &[&[0, 0], &[0]]),
            ),
            (
                vec![(1, vec![Zero]), (5, vec![One, One, One, OneBar, One])],
                (&[&[3, 3], &[3]], &[&[1, 0], &[0]]),
            ),
            (
                vec![(1, vec![ThreeBar]), (5, vec![One, One, One, OneBar, One])],
                (&[&[4, 3], &[3]], &[&[0, 1], &[0]]),
            ),
            (
                vec![(1, vec![OneBar]), (5, vec![One, OneBar, One, OneBar, One])],
                (&[&[6, 6], &[6]], &[&[0, 0], &[0]]),
            ),
            (
                vec![(1, vec![Empty]), (5, vec![One, One, One, OneBar, One])],
                (&[&[2, 2, 1, 1], &[2, 1]], &[&[0, 0, 0, 0], &[0, 0]]),
            ),
            (
                vec![(1, vec![Two]), (5, vec![One, One, One, One, One])],
                (&[&[1], &[]], &[&[0], &[]]),
            ),
            // Cell pairs.
            (
                vec![(1, vec![Empty]), (1, vec![One])],
                (&[&[1, 1], &[1]], &[&[1, 1], &[0]]),
            ),
            (
                vec![(1, vec![One]), (1, vec![Empty])],
                (&[&[1, 1], &[1]], &[&[0, 0], &[0]]),
            ),
            (
                vec![(1, vec![Two]), (1, vec![One])],
                (&[&[1], &[]], &[&[0], &[]]),
            ),
            // Wider left factors.
            (
                vec![(2, vec![OneBar, Empty]), (1, vec![One])],
                (&[&[3, 3], &[3]], &[&[0, 0], &[0]]),
            ),
            (
                vec![(2, vec![Zero, Empty]), (1, vec![One])],
                (&[&[2, 2], &[2]], &[&[1, 0], &[0]]),
            ),
            (
                vec![(2, vec![OneBar, One]), (1, vec![One])],
                (&[&[2, 2], &[2]], &[&[1, 1], &[0]]),
            ),
            (
                vec![(3, vec![Zero, OneBar, One]), (1, vec![One])],
                (&[&[3, 3], &[3]], &[&[1, 0], &[0]]),
            ),
            (
                vec![(3, vec![OneBar, One, Empty]), (1, vec![One])],
                (&[&[3, 3], &[3]], &[&[1, 1], &[0]]),
            ),
            (
                vec![(4, vec![OneBar, One, OneBar, One]), (1, vec![One])],
                (&[&[4, 4], &[4]], &[&[1, 1], &[0]]),
            ),
            (
                vec![(5, vec![One, One, Two, Zero, Empty]), (1, vec![One])],
                (&[&[3, 2], &[2]], &[&[0, 0], &[0]]),
            ),
            (
                vec![(5, vec![One, One, Zero, OneBar, One]), (1, vec![One])],
                (&[&[3, 3], &[3]], &[&[1, 0], &[0]]),
            ),
            (
                vec![(5, vec![One, Two, OneBar, One, Empty]), (1, vec![One])],
                (&[&[4, 3], &[3]], &[&[0, 1], &[0]]),
            ),
            (
                vec![(5, vec![OneBar, OneBar, One, OneBar, One]), (1, vec![One])],
                (&[&[6, 6], &[6]], &[&[0, 0], &[0]]),
            ),
            (
                vec![(5, vec![One, One, One, OneBar, One]), (1, vec![Empty])],
                (&[&[2, 2, 1, 1], &[2, 1]], &[&[0, 0, 0, 0], &[0, 0]]),
            ),
        ];
        for (factors, (parts, rigs)) in cases {
            let spec: Vec<(u8, &[Letter])> = factors
                .iter()
                .map(|(s, row)| (*s, row.as_slice()))
                .collect();
            let tp = row_product(&spec);
            let shape = TensorShape::new(
                CartanType::G2,
                tp.factors().iter().map(|t| (t.r(), t.s())).collect(),
            );
            let expected = rc(&shape, parts, rigs);
            assert_eq!(phi_inv(&tp), expected, "at {tp}");
            assert_eq!(phi(&expected), tp, "back at {tp}");
        }
    }

    #[test]
    fn correspondence_round_trip_on_small_products() {
        let shapes = [
            vec![(1, 1), (1, 1)],
            vec![(1, 2), (1, 1)],
            vec![(2, 1)],
            vec![(1, 1), (2, 1)],
            vec![(2, 2)],
        ];
        for factors in shapes {
            let shape = TensorShape::new(CartanType::G2, factors);
            let all = crystal::generate_closure(enumerate_hw(&shape), &[1, 2]);
            for x in &all {
                let tp = phi(x);
                assert_eq!(tp.weight(), x.weight(), "weights at {x}");
                assert_eq!(&phi_inv(&tp), x, "round trip at {x}");
            }
            // The correspondence is a bijection onto a set of the same size.
            let images: BTreeSet<String> = all.iter().map(|x| phi(x).to_string()).collect();
            assert_eq!(images.len(), all.len());
        }
    }

    #[test]
    fn peeling_respects_highest_weight() {
        let shape = TensorShape::new(CartanType::G2, vec![(1, 1), (1, 2)]);
        for hw in enumerate_hw(&shape) {
            let tp = phi(&hw);
            assert_eq!(tp.e(1), None, "classically highest at {hw}");
            assert_eq!(tp.e(2), None, "classically highest at {hw}");
        }
    }

    #[test]
    fn row_filling_agrees_with_the_correspondence() {
        for s in 1..=4u8 {
            for (k, hw) in crate::rc::hw_b1_family(s).iter().enumerate() {
                let boxes = s as i64 - hw.strings(2).first().map_or(0, |&(l, _)| l);
                assert_eq!(
                    phi(hw),
                    TensorProduct::new(vec![fill_row(s, boxes as u8)]),
                    "width {s}, member {k}"
                );
            }
        }
    }

    #[test]
    fn two_row_filling_agrees_with_the_correspondence() {
        for s in 1..=2u8 {
            for params in TwoRowParams::all(s) {
                let direct = fill_two_rows(s, &params);
                let via_rc = phi(&params.rc(s));
                assert_eq!(
                    via_rc,
                    TensorProduct::new(vec![direct.clone()]),
                    "{params:?} width {s}"
                );
                let single = TensorProduct::new(vec![direct]);
                assert_eq!(single.e(1), None, "{params:?}");
                assert_eq!(single.e(2), None, "{params:?}");
                assert_eq!(single.weight(), params.lambda(s), "{params:?}");
            }
        }
    }

    #[test]
    fn two_row_base_cases() {
        use Letter::*;
        let expect = [
            ((0, 0, 0, 0), vec![vec![One], vec![Two]]),
            ((0, 1, 0, 0), vec![vec![One], vec![Zero]]),
            ((0, 1, 0, 1), vec![vec![One], vec![Empty]]),
            ((1, 0, 0, 0), vec![vec![Empty], vec![Empty]]),
        ];
        for ((k1, k2, k3, k4), rows) in expect {
            let params = TwoRowParams { k1, k2, k3, k4 };
            assert_eq!(fill_two_rows(1, &params), KrTableau::new(2, 1, rows));
        }
    }

    #[test]
    fn two_row_crystal_sizes() {
        assert_eq!(b2_crystal(1).len(), 29);
        assert_eq!(b2_crystal(2).len(), 329);
    }

    #[test]
    fn column_splitting_is_inert() {
        let shape = TensorShape::new(CartanType::G2, vec![(2, 1), (1, 2)]);
        let all = crystal::generate_closure(enumerate_hw(&shape), &[1, 2]);
        for x in &all {
            let split = left_box_split(x);
            for a in 1..=2u8 {
                for &(len, _) in x.strings(a) {
                    assert_eq!(split.vacancy(a, len), x.vacancy(a, len), "node {a} at {x}");
                }
            }
            assert!(split.strings(1).contains(&(1, split.vacancy(1, 1))));
            assert_eq!(left_box_split_inv(&split), *x, "at {x}");
        }
    }
}
