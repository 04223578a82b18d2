//! Consistency suites behind `krc verify`.  Every suite prints one line per
//! check and a summary; the exit status is nonzero exactly when a hard check
//! fails.  Mismatches of the experimental zero arrows are reported as
//! CONJECTURE-FAIL lines and do not fail the run.

use std::collections::{BTreeMap, BTreeSet};

use anyhow::{bail, Result};
use serde_json::{json, Value};

use krc_core::bijection::{fill_row, fill_two_rows, left_box_split, phi, phi_inv};
use krc_core::cartan::weyl_dimension_g2;
use krc_core::crystal::{self, CrystalElement};
use krc_core::rc::{enumerate_hw, hw_b1_family, hw_b2_family, rc_b1_crystal, TwoRowParams};
use krc_core::statistics::{
    classically_highest, component_multiplicity, lead_cell_r_images, m_polynomials,
    m_polynomials_refined, r_matrix, tensor_elements, x_polynomials, GradeQuadruple, Poly,
};
use krc_core::virtualization::{psi_embed, rc_virtualize, virtual_cocharge, virtual_e, virtual_f};
use krc_core::{CartanType, KrTableau, Letter, RiggedConfig, TensorProduct, TensorShape, Weight};

use crate::{parse_lambda, parse_shape, Suite, VerifyArgs};

const NODE_CAP: usize = 100_000;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Pass,
    Fail,
    ConjectureFail,
    Note,
}

struct Report {
    lines: Vec<(Status, String)>,
}

impl Report {
    fn new() -> Report {
        Report { lines: Vec::new() }
    }

    fn check(&mut self, ok: bool, msg: impl Into<String>) {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.lines.push((status, msg.into()));
    }

    fn conjecture(&mut self, ok: bool, msg: impl Into<String>) {
        let status = if ok {
            Status::Pass
        } else {
            Status::ConjectureFail
        };
        self.lines.push((status, msg.into()));
    }

    fn note(&mut self, msg: impl Into<String>) {
        self.lines.push((Status::Note, msg.into()));
    }

    /// Print all lines plus a summary; true means no hard failure.
    fn finish(self, suite: &str) -> Result<bool> {
        use std::fmt::Write;
        let mut fails = 0;
        let mut conjecture_fails = 0;
        let mut notes = 0;
        let mut out = String::new();
        for (status, msg) in &self.lines {
            let tag = match status {
                Status::Pass => "ok",
                Status::Fail => {
                    fails += 1;
                    "FAIL"
                }
                Status::ConjectureFail => {
                    conjecture_fails += 1;
                    "CONJECTURE-FAIL"
                }
                Status::Note => {
                    notes += 1;
                    "--"
                }
            };
            let _ = writeln!(out, "{tag:15} {msg}");
        }
        let n = self.lines.len() - notes;
        if fails > 0 {
            let _ = writeln!(out, "verify {suite}: FAIL ({fails} of {n} checks)");
        } else if conjecture_fails > 0 {
            let _ = writeln!(
                out,
                "verify {suite}: {conjecture_fails} CONJECTURE-FAIL reports out of {n} checks; implementation checks pass"
            );
        } else {
            let _ = writeln!(out, "verify {suite}: pass ({n} checks)");
        }
        crate::write_stdout(&out)?;
        Ok(fails == 0 && conjecture_fails == 0)
    }
}

pub fn run(args: &VerifyArgs) -> Result<bool> {
    match args.suite {
        Suite::Xm => xm(args),
        Suite::Bijection => bijection(args),
        Suite::Rmatrix => rmatrix(args),
        Suite::Filling => filling(args),
        Suite::Virtualization => virtualization(args),
        Suite::Decomposition => decomposition(args),
        Suite::AffineConjecture => affine_conjecture(args),
    }
}

fn shape_arg(args: &VerifyArgs, default: &str) -> Result<TensorShape> {
    let spec = args.factors.clone().unwrap_or_else(|| default.to_string());
    let shape = parse_shape(&spec)?;
    if shape.factors().is_empty() {
        bail!("at least one tensor factor is required");
    }
    Ok(shape)
}

fn poly_json(p: &Poly) -> Value {
    let mut m = serde_json::Map::new();
    for (i, &c) in p.coeffs().iter().enumerate() {
        if c != 0 {
            m.insert(i.to_string(), json!(c));
        }
    }
    Value::Object(m)
}

fn weight_coeffs(w: &Weight) -> Vec<i64> {
    w.coeffs().to_vec()
}

/// The correspondence restricted to the classically highest elements:
/// weight preserving, injective, onto, and inverted by the reverse map.
fn bijectivity_checks(shape: &TensorShape, report: &mut Report) {
    let hw = enumerate_hw(shape);
    let mut images = BTreeSet::new();
    let mut weights_ok = true;
    let mut highest_ok = true;
    let mut round_trip_ok = true;
    for rc in &hw {
        let t = phi(rc);
        weights_ok &= t.weight() == rc.weight();
        highest_ok &= t.e(1).is_none() && t.e(2).is_none();
        round_trip_ok &= phi_inv(&t) == *rc;
        images.insert(t);
    }
    report.check(
        weights_ok,
        format!(
            "the correspondence preserves weights on {} configurations",
            hw.len()
        ),
    );
    report.check(
        highest_ok,
        "images of highest configurations are classically highest",
    );
    report.check(
        images.len() == hw.len(),
        "the correspondence is injective on highest configurations",
    );
    let targets: BTreeSet<TensorProduct> = classically_highest(shape).into_iter().collect();
    report.check(
        images == targets,
        format!(
            "the image is exactly the {} classically highest elements",
            targets.len()
        ),
    );
    report.check(round_trip_ok, "the reverse map inverts the correspondence");
}

/// Lowering commutes with the reverse correspondence over the whole product.
fn intertwining_checks(shape: &TensorShape, report: &mut Report) {
    let elements = tensor_elements(shape);
    if elements.len() > NODE_CAP {
        report.check(
            false,
            format!(
                "{} elements exceed the {} node cap",
                elements.len(),
                NODE_CAP
            ),
        );
        return;
    }
    let mut ok = true;
    for x in &elements {
        let rc = phi_inv(x);
        for a in [1u8, 2] {
            if x.f(a).map(|y| phi_inv(&y)) != rc.f(a) {
                ok = false;
            }
        }
    }
    report.check(
        ok,
        format!(
            "lowering commutes with the reverse correspondence at {} elements",
            elements.len()
        ),
    );
}

/// Splitting a cell off a leading column raises the cocharge by one plus
/// the number of single-row factors.
fn box_split_shift_check(shape: &TensorShape, report: &mut Report) {
    if shape.factors().first() != Some(&(2, 1)) {
        report.note("cocharge shift not checked: the box split needs a leading (2,1) factor");
        return;
    }
    let rows = shape.factors().iter().filter(|&&(r, _)| r == 1).count() as i64;
    let mut ok = true;
    for rc in enumerate_hw(shape) {
        if left_box_split(&rc).cocharge() != rc.cocharge() + 1 + rows {
            ok = false;
        }
    }
    report.check(
        ok,
        format!("the leading box split shifts the cocharge by {}", 1 + rows),
    );
}

fn xm(args: &VerifyArgs) -> Result<bool> {
    let shape = shape_arg(args, "1,2;1,1")?;
    let lambda = args.lambda.as_deref().map(parse_lambda).transpose()?;
    let mut report = Report::new();

    if shape.factors().iter().any(|&(r, _)| r == 2) {
        bijectivity_checks(&shape, &mut report);
        intertwining_checks(&shape, &mut report);
        box_split_shift_check(&shape, &mut report);
        report.note("energy side: out of scope for column factors; checked bijectivity, intertwining, and the cocharge shift");
        return report.finish("xm");
    }

    let x = x_polynomials(&shape);
    let m = m_polynomials(&shape);
    let mb = m_polynomials_refined(&shape);
    let mut weights: BTreeSet<Weight> = x.keys().cloned().collect();
    weights.extend(m.keys().cloned());
    weights.extend(mb.keys().cloned());
    if let Some(l) = &lambda {
        weights.retain(|w| w == l);
        if weights.is_empty() {
            report.check(
                false,
                format!("no component of weight {:?}", weight_coeffs(l)),
            );
        }
    }
    for w in &weights {
        let px = x.get(w).cloned().unwrap_or_default();
        let pm = m.get(w).cloned().unwrap_or_default();
        let pmb = mb.get(w).cloned().unwrap_or_default();
        let ok = px == pm && pm == pmb;
        let line = serde_json::to_string(&json!({
            "lambda": weight_coeffs(w),
            "x": poly_json(&px),
            "m": poly_json(&pm),
            "m_binomial": poly_json(&pmb),
            "match": ok,
        }))?;
        crate::write_stdout(&format!("{line}\n"))?;
        report.check(
            ok,
            format!("graded sums agree at weight {:?}", weight_coeffs(w)),
        );
    }
    report.finish("xm")
}

fn bijection(args: &VerifyArgs) -> Result<bool> {
    let shape = shape_arg(args, "1,1;2,1;1,2")?;
    let mut report = Report::new();
    bijectivity_checks(&shape, &mut report);
    intertwining_checks(&shape, &mut report);
    report.finish("bijection")
}

fn rmatrix(args: &VerifyArgs) -> Result<bool> {
    let s = args.s.unwrap_or(3);
    let mut report = Report::new();

    for w in 1..=s {
        let table = lead_cell_r_images(w);
        let ok = table
            .iter()
            .all(|(input, image)| r_matrix(input, 0) == *image);
        report.check(
            ok,
            format!(
                "the leading cell table is reproduced at width {w} ({} entries)",
                table.len()
            ),
        );
    }

    for s1 in 1..=4u8 {
        for s2 in 1..=4u8 {
            if s1 + s2 > 5 {
                continue;
            }
            let shape = TensorShape::new(CartanType::G2, vec![(1, s1), (1, s2)]);
            let mut ok = true;
            let mut n = 0usize;
            for x in classically_highest(&shape) {
                let once = r_matrix(&x, 0);
                ok &= once.weight() == x.weight();
                ok &= r_matrix(&once, 0) == x;
                n += 1;
            }
            report.check(
                ok,
                format!("R is a weight preserving involution on the {n} highest pairs of widths ({s1},{s2})"),
            );
        }
    }

    // The mixed pair with a column factor: R must be a classical
    // isomorphism onto the swapped product and square to the identity.
    let shape = TensorShape::new(CartanType::G2, vec![(1, 1), (2, 1)]);
    let elements = tensor_elements(&shape);
    let mut ok = true;
    for x in &elements {
        let once = r_matrix(x, 0);
        ok &= once.shape() == [(2, 1), (1, 1)];
        ok &= once.weight() == x.weight();
        ok &= r_matrix(&once, 0) == *x;
        for a in [1u8, 2] {
            ok &= x.f(a).map(|y| r_matrix(&y, 0)) == once.f(a);
        }
    }
    report.check(
        ok,
        format!(
            "R is a classical isomorphism on all {} elements of the mixed pair",
            elements.len()
        ),
    );

    report.finish("rmatrix")
}

fn filling(args: &VerifyArgs) -> Result<bool> {
    let r = args.r.unwrap_or(2);
    let s = args.s.unwrap_or(2);
    let mut report = Report::new();
    match r {
        1 => {
            for w in 1..=s {
                let family = hw_b1_family(w);
                let mut ok = true;
                for (k, rc) in family.iter().enumerate() {
                    let filled = fill_row(w, k as u8);
                    ok &= phi(rc).factors() == [filled.clone()];
                    ok &= filled.e(1).is_none() && filled.e(2).is_none();
                }
                report.check(
                    ok,
                    format!(
                        "row fillings match the correspondence at width {w} ({} members)",
                        family.len()
                    ),
                );
            }
            // Partial rows close with the alternating tail, padded by the
            // blank when a cell is left over.
            use Letter::{OneBar, Three, TwoBar, Zero};
            let head = [Three, Zero, TwoBar, TwoBar, OneBar];
            let t9 = KrTableau::from_partial_row(9, &head);
            report.check(
                t9.to_string() == "[[3,0,-2,-2,-1,-1,1,-1,1]]",
                "a width nine partial row closes with the alternating tail",
            );
            let t8 = KrTableau::from_partial_row(8, &head);
            report.check(
                t8.to_string() == "[[3,0,-2,-2,-1,-1,1,E]]",
                "a width eight partial row pads with the blank",
            );
        }
        2 => {
            for w in 1..=s {
                let family = TwoRowParams::all(w);
                if w == 1 {
                    report.check(family.len() == 4, "the width one family has four members");
                }
                if w == 2 {
                    report.check(
                        family.len() == 11,
                        "the width two family has eleven members",
                    );
                }
                let mut ok = true;
                for p in &family {
                    let filled = fill_two_rows(w, p);
                    ok &= phi(&p.rc(w)).factors() == [filled.clone()];
                    ok &= filled.e(1).is_none() && filled.e(2).is_none();
                }
                report.check(
                    ok,
                    format!(
                        "two-row fillings match the correspondence at width {w} ({} members)",
                        family.len()
                    ),
                );
            }
        }
        r => bail!("unsupported row count {r}; factors are (1,s) or (2,s)"),
    }
    report.finish("filling")
}

fn virtualization(args: &VerifyArgs) -> Result<bool> {
    let s = args.s.unwrap_or(3);
    let mut report = Report::new();

    let survey = |label: String, set: &BTreeSet<RiggedConfig>, report: &mut Report| {
        let mut weights_ok = true;
        let mut ops_ok = true;
        let mut cocharge_ok = true;
        for rc in set {
            let image = rc_virtualize(rc);
            weights_ok &= image.weight() == psi_embed(&rc.weight());
            cocharge_ok &= virtual_cocharge(rc) == rc.cocharge();
            for a in [1u8, 2] {
                ops_ok &= rc.f(a).map(|y| rc_virtualize(&y)) == virtual_f(a, &image);
                ops_ok &= rc.e(a).map(|y| rc_virtualize(&y)) == virtual_e(a, &image);
            }
        }
        report.check(
            weights_ok,
            format!("the ambient image folds the weight on {label}"),
        );
        report.check(
            ops_ok,
            format!("orbit products intertwine the operators on {label}"),
        );
        report.check(
            cocharge_ok,
            format!("the ambient cocharge is preserved on {label}"),
        );
    };

    for w in 1..=s {
        let set = rc_b1_crystal(w);
        survey(
            format!("all {} single-row configurations of width {w}", set.len()),
            &set,
            &mut report,
        );
    }
    for w in 1..=s.min(2) {
        let set = crystal::generate_closure(hw_b2_family(w), &[1, 2]);
        survey(
            format!("all {} two-row configurations of width {w}", set.len()),
            &set,
            &mut report,
        );
    }
    report.finish("virtualization")
}

fn decomposition(args: &VerifyArgs) -> Result<bool> {
    let s = args.s.unwrap_or(4);
    let mut report = Report::new();
    for w in 1..=s {
        let family = TwoRowParams::all(w);

        // The parameter family is exactly the highest weight enumeration.
        let shape = TensorShape::new(CartanType::G2, vec![(2, w)]);
        let family_rcs: BTreeSet<RiggedConfig> = family.iter().map(|p| p.rc(w)).collect();
        report.check(
            family_rcs.len() == family.len() && family_rcs == enumerate_hw(&shape),
            format!(
                "the parameter family enumerates the {} highest configurations at width {w}",
                family.len()
            ),
        );

        // Component multiplicities against the closed product formula.
        let mut by_lambda: BTreeMap<Weight, i64> = BTreeMap::new();
        for p in &family {
            *by_lambda.entry(p.lambda(w)).or_insert(0) += 1;
        }
        let mut mult_ok = true;
        for m1 in 0..=w as i64 {
            for m2 in 0..=w as i64 {
                let lam = Weight::new(CartanType::G2, &[m1, m2]);
                let found = by_lambda.get(&lam).copied().unwrap_or(0);
                if found != component_multiplicity(w, &lam) {
                    mult_ok = false;
                }
            }
        }
        report.check(
            mult_ok,
            format!("component multiplicities match the closed product at width {w}"),
        );

        // Graded multiplicities: cocharge generating series per weight
        // against the exponent quadruple series.
        let mut cc_side: BTreeMap<Weight, Poly> = BTreeMap::new();
        for p in &family {
            *cc_side.entry(p.lambda(w)).or_default() += &Poly::q_power(p.cocharge());
        }
        let mut grade_side: BTreeMap<Weight, Poly> = BTreeMap::new();
        for g in GradeQuadruple::all(w) {
            *grade_side.entry(g.weight(w)).or_default() += &Poly::q_power(g.grade());
        }
        report.check(
            cc_side == grade_side,
            format!("graded multiplicities agree at width {w}"),
        );

        // Total dimension through the Weyl formula, pinned for the two
        // smallest widths.
        let total: u64 = by_lambda
            .iter()
            .map(|(lam, &mult)| mult as u64 * weyl_dimension_g2(lam))
            .sum();
        match w {
            1 => report.check(total == 29, "the width one crystal has 29 elements"),
            2 => report.check(total == 329, "the width two crystal has 329 elements"),
            _ => report.note(format!(
                "the width {w} crystal has {total} elements across {} components",
                family.len()
            )),
        }
    }
    report.finish("decomposition")
}

fn affine_conjecture(args: &VerifyArgs) -> Result<bool> {
    let s = args.s.unwrap_or(2);
    let mut report = Report::new();

    for w in 1..=s {
        let set = rc_b1_crystal(w);
        let mut mismatches = 0usize;
        for rc in set.iter() {
            let t = phi(rc);
            let pairs = [
                ("f", t.f(0), rc.affine_f0().map(|y| phi(&y))),
                ("e", t.e(0), rc.affine_e0().map(|y| phi(&y))),
            ];
            for (dir, coordinate, experimental) in pairs {
                if coordinate != experimental {
                    mismatches += 1;
                    report.conjecture(false, format!("zero {dir} differs at {rc}"));
                }
            }
        }
        report.conjecture(
            mismatches == 0,
            format!(
                "experimental zero arrows match the coordinate ones on all {} configurations of width {w}",
                set.len()
            ),
        );
    }

    // Width one graph comparison: the configuration graph with zero arrows,
    // relabelled along the correspondence, is the tableau graph.
    let rc_edges: BTreeSet<(TensorProduct, TensorProduct, u8)> = rc_b1_crystal(1)
        .iter()
        .flat_map(|rc| {
            let mut edges = Vec::new();
            for a in [0u8, 1, 2] {
                let image = if a == 0 { rc.affine_f0() } else { rc.f(a) };
                if let Some(y) = image {
                    edges.push((phi(rc), phi(&y), a));
                }
            }
            edges
        })
        .collect();
    let tableau_edges: BTreeSet<(TensorProduct, TensorProduct, u8)> =
        tensor_elements(&TensorShape::new(CartanType::G2, vec![(1, 1)]))
            .iter()
            .flat_map(|x| {
                let mut edges = Vec::new();
                for a in [0u8, 1, 2] {
                    if let Some(y) = x.f(a) {
                        edges.push((x.clone(), y, a));
                    }
                }
                edges
            })
            .collect();
    report.conjecture(
        rc_edges == tableau_edges,
        "the width one configuration graph matches the tableau graph edge for edge",
    );

    report.finish("affine-conjecture")
}
