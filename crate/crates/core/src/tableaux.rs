//! Tableau models: the letter alphabet, single-row and two-row rectangles in
//! filled form, the coordinate form of single-row crystals with its affine
//! operators, tensor products, and the bar involution.

use std::collections::BTreeSet;
use std::fmt;

use crate::cartan::{CartanType, Weight};
use crate::crystal::{self, CrystalElement};

/// The nine-step alphabet minus the repeated middle: `1 < 2 < 3 < 0 < -3 <
/// -2 < -1 < E`, where `E` is the extra letter closing the zero-string of
/// single-cell crystals.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Letter {
    One,
    Two,
    Three,
    Zero,
    ThreeBar,
    TwoBar,
    OneBar,
    Empty,
}

pub const LETTERS: [Letter; 8] = [
    Letter::One,
    Letter::Two,
    Letter::Three,
    Letter::Zero,
    Letter::ThreeBar,
    Letter::TwoBar,
    Letter::OneBar,
    Letter::Empty,
];

impl Letter {
    pub fn symbol(self) -> &'static str {
        match self {
            Letter::One => "1",
            Letter::Two => "2",
            Letter::Three => "3",
            Letter::Zero => "0",
            Letter::ThreeBar => "-3",
            Letter::TwoBar => "-2",
            Letter::OneBar => "-1",
            Letter::Empty => "E",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Letter> {
        LETTERS.iter().copied().find(|l| l.symbol() == s)
    }

    /// Barred partner; `0` and `E` are self-paired.
    pub fn bar(self) -> Letter {
        match self {
            Letter::One => Letter::OneBar,
            Letter::Two => Letter::TwoBar,
            Letter::Three => Letter::ThreeBar,
            Letter::Zero => Letter::Zero,
            Letter::ThreeBar => Letter::Three,
            Letter::TwoBar => Letter::Two,
            Letter::OneBar => Letter::One,
            Letter::Empty => Letter::Empty,
        }
    }

    pub fn weight(self) -> Weight {
        let (a, b) = match self {
            Letter::One => (1, 0),
            Letter::Two => (-1, 1),
            Letter::Three => (2, -1),
            Letter::Zero => (0, 0),
            Letter::ThreeBar => (-2, 1),
            Letter::TwoBar => (1, -1),
            Letter::OneBar => (-1, 0),
            Letter::Empty => (0, 0),
        };
        Weight::new(CartanType::G2, &[a, b])
    }

    pub fn classical_f(self, a: u8) -> Option<Letter> {
        match (a, self) {
            (1, Letter::One) => Some(Letter::Two),
            (1, Letter::Three) => Some(Letter::Zero),
            (1, Letter::Zero) => Some(Letter::ThreeBar),
            (1, Letter::TwoBar) => Some(Letter::OneBar),
            (2, Letter::Two) => Some(Letter::Three),
            (2, Letter::ThreeBar) => Some(Letter::TwoBar),
            (1 | 2, _) => None,
            _ => panic!("invalid classical index {a}"),
        }
    }

    pub fn classical_e(self, a: u8) -> Option<Letter> {
        LETTERS
            .iter()
            .copied()
            .find(|l| l.classical_f(a) == Some(self))
    }

    /// Zero-arrow on the eight-element single-cell crystal.
    pub fn affine_f(self) -> Option<Letter> {
        match self {
            Letter::OneBar => Some(Letter::Empty),
            Letter::Empty => Some(Letter::One),
            Letter::ThreeBar => Some(Letter::Two),
            Letter::TwoBar => Some(Letter::Three),
            _ => None,
        }
    }

    pub fn affine_e(self) -> Option<Letter> {
        LETTERS.iter().copied().find(|l| l.affine_f() == Some(self))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

pub fn letter_eps(l: Letter, a: u8) -> i64 {
    let mut n = 0;
    let mut cur = l;
    while let Some(prev) = cur.classical_e(a) {
        n += 1;
        cur = prev;
    }
    n
}

pub fn letter_phi(l: Letter, a: u8) -> i64 {
    let mut n = 0;
    let mut cur = l;
    while let Some(next) = cur.classical_f(a) {
        n += 1;
        cur = next;
    }
    n
}

/// A Kirillov-Reshetikhin tableau in filled form: an `r x s` rectangle of
/// letters.  Single-row tableaux consist of a weakly increasing segment of
/// real letters followed by inert padding (`-1 1` pairs, then at most one
/// `E`).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct KrTableau {
    r: u8,
    s: u8,
    rows: Vec<Vec<Letter>>,
}

impl KrTableau {
    pub fn new(r: u8, s: u8, rows: Vec<Vec<Letter>>) -> Self {
        assert_eq!(rows.len(), r as usize, "row count must equal r");
        for row in &rows {
            assert_eq!(row.len(), s as usize, "row length must equal s");
        }
        KrTableau { r, s, rows }
    }

    /// Pad a weakly increasing row of at most `s` real letters out to width
    /// `s`: floor((s-k)/2) inert `-1 1` pairs, then `E` if a cell remains.
    pub fn from_partial_row(s: u8, partial: &[Letter]) -> Self {
        let k = partial.len();
        assert!(k <= s as usize, "row of length {k} exceeds width {s}");
        let mut zeros = 0;
        for (i, &l) in partial.iter().enumerate() {
            assert!(l != Letter::Empty, "real rows contain no E");
            if l == Letter::Zero {
                zeros += 1;
            }
            if i > 0 {
                assert!(partial[i - 1] <= l, "row must be weakly increasing");
            }
        }
        assert!(zeros <= 1, "at most one 0 per row");
        let mut row = partial.to_vec();
        for _ in 0..(s as usize - k) / 2 {
            row.push(Letter::OneBar);
            row.push(Letter::One);
        }
        if (s as usize - k) % 2 == 1 {
            row.push(Letter::Empty);
        }
        KrTableau {
            r: 1,
            s,
            rows: vec![row],
        }
    }

    /// Classically highest element of the width-`s` single-row family with
    /// `k` boxes.
    pub fn highest_row(s: u8, k: u8) -> Self {
        Self::from_partial_row(s, &vec![Letter::One; k as usize])
    }

    pub fn r(&self) -> u8 {
        self.r
    }

    pub fn s(&self) -> u8 {
        self.s
    }

    pub fn rows(&self) -> &[Vec<Letter>] {
        &self.rows
    }

    /// Strip the padding of a single-row tableau.  Unambiguous: a weakly
    /// increasing row never has `1` directly after `-1`.
    pub fn unfilled_row(&self) -> Vec<Letter> {
        assert_eq!(self.r, 1, "only single-row tableaux unfill");
        let mut row = self.rows[0].clone();
        if row.last() == Some(&Letter::Empty) {
            row.pop();
        }
        while row.len() >= 2
            && row[row.len() - 2] == Letter::OneBar
            && row[row.len() - 1] == Letter::One
        {
            row.pop();
            row.pop();
        }
        assert!(!row.contains(&Letter::Empty), "malformed padding");
        row
    }

    /// Number of real boxes of a single-row tableau.
    pub fn box_count(&self) -> u8 {
        self.unfilled_row().len() as u8
    }

    /// Cells bottom-to-top within each column, columns left to right; the
    /// first letter is the leftmost factor of the corresponding word.
    pub fn reading_word(&self) -> Vec<Letter> {
        let r = self.r as usize;
        let mut word = Vec::with_capacity(r * self.s as usize);
        for j in 0..self.s as usize {
            for i in (0..r).rev() {
                word.push(self.rows[i][j]);
            }
        }
        word
    }

    fn replace_word_cell(&self, idx: usize, letter: Letter) -> Self {
        let r = self.r as usize;
        let col = idx / r;
        let row = r - 1 - idx % r;
        let mut out = self.clone();
        out.rows[row][col] = letter;
        out
    }

    fn word_stats(&self, a: u8) -> Vec<(i64, i64)> {
        self.reading_word()
            .iter()
            .map(|&l| (letter_eps(l, a), letter_phi(l, a)))
            .collect()
    }

    fn classical_op(&self, a: u8, lower: bool) -> Option<Self> {
        let stats = self.word_stats(a);
        let pos = if lower {
            crystal::tensor_f_position(&stats)
        } else {
            crystal::tensor_e_position(&stats)
        }?;
        let word = self.reading_word();
        let img = if lower {
            word[pos].classical_f(a)
        } else {
            word[pos].classical_e(a)
        }
        .expect("selected cell admits the operator");
        Some(self.replace_word_cell(pos, img))
    }

    pub fn coordinates(&self) -> CoordinateRep {
        assert_eq!(self.r, 1, "coordinates describe single-row tableaux");
        let mut n = [0i64; 8];
        for &l in &self.unfilled_row() {
            n[l as usize] += 1;
        }
        CoordinateRep {
            s: self.s,
            x: [
                n[Letter::One as usize],
                n[Letter::Two as usize],
                2 * n[Letter::Three as usize] + n[Letter::Zero as usize],
                2 * n[Letter::ThreeBar as usize] + n[Letter::Zero as usize],
                n[Letter::TwoBar as usize],
                n[Letter::OneBar as usize],
            ],
        }
    }
}

impl fmt::Display for KrTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|row| {
                let cells: Vec<&str> = row.iter().map(|l| l.symbol()).collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

impl KrTableau {
    /// Row-major array of letter symbols.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!(self
            .rows
            .iter()
            .map(|row| row.iter().map(|l| l.symbol()).collect::<Vec<_>>())
            .collect::<Vec<_>>())
    }

    pub fn from_json(v: &serde_json::Value) -> Result<KrTableau, String> {
        let rows = v.as_array().ok_or("tableau must be an array of rows")?;
        if rows.is_empty() {
            return Err("tableau needs at least one row".into());
        }
        let mut parsed: Vec<Vec<Letter>> = Vec::with_capacity(rows.len());
        for row in rows {
            let cells = row.as_array().ok_or("row must be an array of letters")?;
            let mut letters = Vec::with_capacity(cells.len());
            for cell in cells {
                let sym = cell.as_str().ok_or("letters are strings")?;
                letters.push(
                    Letter::from_symbol(sym).ok_or_else(|| format!("unknown letter {sym:?}"))?,
                );
            }
            parsed.push(letters);
        }
        let s = parsed[0].len();
        if parsed.iter().any(|row| row.len() != s) || s == 0 {
            return Err("rows must be nonempty and of equal length".into());
        }
        Ok(KrTableau::new(parsed.len() as u8, s as u8, parsed))
    }
}

impl CrystalElement for KrTableau {
    fn e(&self, a: u8) -> Option<Self> {
        match a {
            0 => {
                assert_eq!(self.r, 1, "zero-arrows exist only on single-row tableaux");
                self.coordinates().e0().map(|c| c.to_tableau())
            }
            1 | 2 => self.classical_op(a, false),
            _ => panic!("invalid crystal index {a}"),
        }
    }

    fn f(&self, a: u8) -> Option<Self> {
        match a {
            0 => {
                assert_eq!(self.r, 1, "zero-arrows exist only on single-row tableaux");
                self.coordinates().f0().map(|c| c.to_tableau())
            }
            1 | 2 => self.classical_op(a, true),
            _ => panic!("invalid crystal index {a}"),
        }
    }

    fn weight(&self) -> Weight {
        let mut w = Weight::zero(CartanType::G2);
        for row in &self.rows {
            for &l in row {
                w = w + l.weight();
            }
        }
        w
    }

    fn eps(&self, a: u8) -> i64 {
        match a {
            0 => {
                let mut n = 0;
                let mut cur = self.coordinates();
                while let Some(prev) = cur.e0() {
                    n += 1;
                    cur = prev;
                }
                n
            }
            1 | 2 => crystal::tensor_eps(&self.word_stats(a)),
            _ => panic!("invalid crystal index {a}"),
        }
    }

    fn phi(&self, a: u8) -> i64 {
        match a {
            0 => {
                let mut n = 0;
                let mut cur = self.coordinates();
                while let Some(next) = cur.f0() {
                    n += 1;
                    cur = next;
                }
                n
            }
            1 | 2 => crystal::tensor_phi(&self.word_stats(a)),
            _ => panic!("invalid crystal index {a}"),
        }
    }
}

/// Letter counts of a single-row tableau, with the middle letters doubled:
/// `x = (x1, x2, x3, x3b, x2b, x1b)` where `x3 = 2#3 + #0` and
/// `x3b = 2#(-3) + #0`.  The zero-arrows are case analyses in the
/// differences `z`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CoordinateRep {
    pub s: u8,
    pub x: [i64; 6],
}

/// Half-space data for the six zero-arrow regions: linear forms in
/// `z = (z1, z2, z3, z4)` required `<= 0` (or `< 0` when raising) and forms
/// required `> 0` (or `>= 0` when raising).
type Form = [i64; 4];
const REGIONS: [(&[Form], &[Form]); 6] = [
    (
        &[[1, 1, 1, 3], [1, 1, 0, 3], [1, 1, 0, 0], [1, 0, 0, 0]],
        &[],
    ),
    (&[[1, 1, 1, 3], [0, 1, 0, 3], [0, 1, 0, 0]], &[[1, 0, 0, 0]]),
    (
        &[[1, 0, 1, 3], [0, 0, 1, 3], [0, 0, 0, 1]],
        &[[0, 1, 0, 0], [1, 1, 0, 0]],
    ),
    (
        &[[0, 0, 1, 0], [1, 0, 1, 0]],
        &[[1, 1, 0, 3], [0, 1, 0, 3], [0, 0, 0, 1]],
    ),
    (&[[1, 0, 0, 0]], &[[1, 1, 1, 3], [0, 0, 1, 3], [0, 0, 1, 0]]),
    (
        &[],
        &[[1, 1, 1, 3], [1, 0, 1, 3], [1, 0, 1, 0], [1, 0, 0, 0]],
    ),
];

/// Coordinate increments applied by the lowering operator in each region;
/// the raising operator applies the negation in the mirrored region.
const INCREMENTS: [&[(usize, i64)]; 6] = [
    &[(0, 1)],
    &[(2, 1), (3, 1), (5, -1)],
    &[(2, 2), (4, -1)],
    &[(1, 1), (3, -2)],
    &[(0, 1), (2, -1), (3, -1)],
    &[(5, -1)],
];

impl CoordinateRep {
    fn z(&self) -> [i64; 4] {
        let [x1, x2, x3, x3b, x2b, x1b] = self.x;
        debug_assert_eq!((x3b - x3).rem_euclid(2), 0);
        [x1b - x1, x2b - x3b, x3 - x2, (x3b - x3) / 2]
    }

    fn region(&self, raising: bool) -> Option<usize> {
        let z = self.z();
        let dot = |c: &Form| c.iter().zip(z).map(|(a, b)| a * b).sum::<i64>();
        let mut found = None;
        for (idx, (upper, lower)) in REGIONS.iter().enumerate() {
            let up = upper
                .iter()
                .all(|c| if raising { dot(c) < 0 } else { dot(c) <= 0 });
            let lo = lower
                .iter()
                .all(|c| if raising { dot(c) >= 0 } else { dot(c) > 0 });
            if up && lo {
                assert!(found.is_none(), "zero-arrow regions overlap at {z:?}");
                found = Some(idx);
            }
        }
        found
    }

    fn shifted(&self, region: usize, sign: i64) -> Option<CoordinateRep> {
        let mut x = self.x;
        for &(i, d) in INCREMENTS[region] {
            x[i] += sign * d;
        }
        let out = CoordinateRep { s: self.s, x };
        out.is_valid().then_some(out)
    }

    pub fn f0(&self) -> Option<CoordinateRep> {
        self.shifted(self.region(false)?, 1)
    }

    pub fn e0(&self) -> Option<CoordinateRep> {
        self.shifted(self.region(true)?, -1)
    }

    pub fn is_valid(&self) -> bool {
        let [x1, x2, x3, x3b, x2b, x1b] = self.x;
        let nonneg = self.x.iter().all(|&v| v >= 0);
        nonneg
            && (x3 - x3b).rem_euclid(2) == 0
            && x1 + x2 + x2b + x1b + (x3 + x3b) / 2 <= self.s as i64
    }

    /// Number of real boxes.
    pub fn box_count(&self) -> i64 {
        let [x1, x2, x3, x3b, x2b, x1b] = self.x;
        x1 + x2 + x2b + x1b + (x3 + x3b) / 2
    }

    pub fn to_tableau(&self) -> KrTableau {
        let [x1, x2, x3, x3b, x2b, x1b] = self.x;
        let zeros = x3.rem_euclid(2);
        assert_eq!(x3b.rem_euclid(2), zeros, "parity mismatch");
        let mut row = Vec::new();
        let mut push = |l: Letter, n: i64| {
            for _ in 0..n {
                row.push(l);
            }
        };
        push(Letter::One, x1);
        push(Letter::Two, x2);
        push(Letter::Three, (x3 - zeros) / 2);
        push(Letter::Zero, zeros);
        push(Letter::ThreeBar, (x3b - zeros) / 2);
        push(Letter::TwoBar, x2b);
        push(Letter::OneBar, x1b);
        KrTableau::from_partial_row(self.s, &row)
    }
}

/// An ordered tensor product of KR tableaux, leftmost factor first.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TensorProduct {
    factors: Vec<KrTableau>,
}

impl TensorProduct {
    pub fn new(factors: Vec<KrTableau>) -> Self {
        TensorProduct { factors }
    }

    pub fn factors(&self) -> &[KrTableau] {
        &self.factors
    }

    pub fn shape(&self) -> Vec<(u8, u8)> {
        self.factors.iter().map(|t| (t.r(), t.s())).collect()
    }

    /// Array of tableaux, leftmost factor first.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!(self.factors.iter().map(|t| t.to_json()).collect::<Vec<_>>())
    }

    pub fn from_json(v: &serde_json::Value) -> Result<TensorProduct, String> {
        let factors = v.as_array().ok_or("tensor element must be an array")?;
        if factors.is_empty() {
            return Err("tensor element needs at least one factor".into());
        }
        let parsed = factors
            .iter()
            .map(KrTableau::from_json)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TensorProduct::new(parsed))
    }
}

impl fmt::Display for TensorProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|t| t.to_string()).collect();
        f.write_str(&parts.join(" \u{2297} "))
    }
}

impl CrystalElement for TensorProduct {
    fn e(&self, a: u8) -> Option<Self> {
        let stats: Vec<(i64, i64)> = self.factors.iter().map(|t| (t.eps(a), t.phi(a))).collect();
        let pos = crystal::tensor_e_position(&stats)?;
        let mut out = self.clone();
        out.factors[pos] = out.factors[pos].e(a).expect("selected factor admits e");
        Some(out)
    }

    fn f(&self, a: u8) -> Option<Self> {
        let stats: Vec<(i64, i64)> = self.factors.iter().map(|t| (t.eps(a), t.phi(a))).collect();
        let pos = crystal::tensor_f_position(&stats)?;
        let mut out = self.clone();
        out.factors[pos] = out.factors[pos].f(a).expect("selected factor admits f");
        Some(out)
    }

    fn weight(&self) -> Weight {
        let mut w = Weight::zero(CartanType::G2);
        for t in &self.factors {
            w = w + t.weight();
        }
        w
    }

    fn eps(&self, a: u8) -> i64 {
        let stats: Vec<(i64, i64)> = self.factors.iter().map(|t| (t.eps(a), t.phi(a))).collect();
        crystal::tensor_eps(&stats)
    }

    fn phi(&self, a: u8) -> i64 {
        let stats: Vec<(i64, i64)> = self.factors.iter().map(|t| (t.eps(a), t.phi(a))).collect();
        crystal::tensor_phi(&stats)
    }
}

/// The full width-`s` single-row crystal: classical closure of the highest
/// elements with `k = 0, ..., s` boxes.
pub fn b1_crystal(s: u8) -> BTreeSet<KrTableau> {
    let seeds = (0..=s).map(|k| KrTableau::highest_row(s, k));
    crystal::generate_closure(seeds, &[1, 2])
}

/// Bar involution on single-row tableaux: bar and reverse the real letters,
/// then repad.
pub fn psi(t: &KrTableau) -> KrTableau {
    assert_eq!(t.r(), 1, "the bar involution acts on single-row tableaux");
    let mut row: Vec<Letter> = t.unfilled_row().iter().map(|l| l.bar()).collect();
    row.reverse();
    KrTableau::from_partial_row(t.s(), &row)
}

/// The classical highest weight crystal with highest weight
/// `m1 w1 + m2 w2`, realised as the component of the product of fundamental
/// highest weight elements.
pub fn b_lambda(m1: u8, m2: u8) -> BTreeSet<TensorProduct> {
    let mut factors = Vec::new();
    for _ in 0..m2 {
        factors.push(KrTableau::new(
            2,
            1,
            vec![vec![Letter::One], vec![Letter::Two]],
        ));
    }
    for _ in 0..m1 {
        factors.push(KrTableau::new(1, 1, vec![vec![Letter::One]]));
    }
    crystal::generate_closure([TensorProduct::new(factors)], &[1, 2])
}
