//! The diagram folding onto the D4 ambient type: weight embedding, shape and
//! rigged configuration virtualization with orbit-product operators, virtual
//! cocharge, and letter-level virtualization of tableaux.
//!
//! The ambient side is exercised through rigged configurations only; the
//! tableau images are emitted as formal letter data (vector letters and spin
//! columns), not as elements of a full ambient tableau model.

use std::fmt;

use serde_json::{json, Value};

use crate::cartan::{CartanType, Weight};
use crate::crystal::{self, CrystalElement};
use crate::rc::{RiggedConfig, TensorShape};
use crate::tableaux::{KrTableau, Letter};

/// Fiber of the folding over a folded node: the ambient nodes collapsing to
/// it.  The long node 1 sits under the central ambient node; the short node
/// 2 sits under the three-element arm orbit.
pub fn orbit(a: u8) -> &'static [u8] {
    match a {
        1 => &[2],
        2 => &[1, 3, 4],
        _ => panic!("invalid folded node {a}"),
    }
}

/// Folding direction: ambient node to folded node.
pub fn fold(b: u8) -> u8 {
    match b {
        2 => 1,
        1 | 3 | 4 => 2,
        _ => panic!("invalid ambient node {b}"),
    }
}

/// Weight embedding: each fundamental weight maps to the sum of the
/// fundamental weights over its fiber; simple roots map the same way.
pub fn psi_embed(w: &Weight) -> Weight {
    assert_eq!(w.cartan_type(), CartanType::G2);
    let mut out = Weight::zero(CartanType::D4);
    for a in CartanType::G2.nodes() {
        for &b in orbit(a) {
            out.set(b, out.get(b) + w.get(a));
        }
    }
    out
}

/// Ambient shape: each rectangle `(r, s)` contributes one rectangle `(b, s)`
/// for every ambient node `b` in the fiber of `r` (the aspect ratios are not
/// stretched: the folding has trivial scaling here).
pub fn virtual_shape(shape: &TensorShape) -> TensorShape {
    assert_eq!(shape.ty(), CartanType::G2);
    let mut factors = Vec::new();
    for &(r, s) in shape.factors() {
        for &b in orbit(r) {
            factors.push((b, s));
        }
    }
    TensorShape::new(CartanType::D4, factors)
}

/// Recover the folded shape from an ambient one produced by
/// [`virtual_shape`].
fn devirtual_shape(shape: &TensorShape) -> Result<TensorShape, String> {
    assert_eq!(shape.ty(), CartanType::D4);
    let fs = shape.factors();
    let mut factors = Vec::new();
    let mut i = 0;
    while i < fs.len() {
        let (r, s) = fs[i];
        match r {
            2 => {
                factors.push((1, s));
                i += 1;
            }
            1 => {
                if fs.get(i + 1) != Some(&(3, s)) || fs.get(i + 2) != Some(&(4, s)) {
                    return Err(format!("factor block at {i} is not an arm triple"));
                }
                factors.push((2, s));
                i += 3;
            }
            _ => return Err(format!("factor ({r},{s}) does not start a fiber block")),
        }
    }
    Ok(TensorShape::new(CartanType::G2, factors))
}

/// Virtualize a rigged configuration: the string data of each node is copied
/// verbatim to every ambient node in its fiber (riggings are not scaled).
/// Vacancy numbers and weights carry over: `p_i` at an ambient node equals
/// `p_i` at the node it folds to, and the weight is the [`psi_embed`] image.
pub fn rc_virtualize(rc: &RiggedConfig) -> RiggedConfig {
    assert_eq!(rc.ty(), CartanType::G2);
    let mut nu = vec![Vec::new(); CartanType::D4.rank()];
    for a in CartanType::G2.nodes() {
        for &b in orbit(a) {
            nu[b as usize - 1] = rc.strings(a).to_vec();
        }
    }
    let out = RiggedConfig::from_parts(virtual_shape(rc.shape()), nu);
    debug_assert_eq!(out.weight(), psi_embed(&rc.weight()));
    out
}

/// Inverse of [`rc_virtualize`]; fails when the configuration is not
/// arm-symmetric or the shape is not an ambient image.
pub fn rc_devirtualize(rc_hat: &RiggedConfig) -> Result<RiggedConfig, String> {
    assert_eq!(rc_hat.ty(), CartanType::D4);
    let shape = devirtual_shape(rc_hat.shape())?;
    for a in CartanType::G2.nodes() {
        let fiber = orbit(a);
        for &b in &fiber[1..] {
            if rc_hat.strings(b) != rc_hat.strings(fiber[0]) {
                return Err(format!(
                    "nodes {} and {b} carry different string data",
                    fiber[0]
                ));
            }
        }
    }
    let nu = CartanType::G2
        .nodes()
        .map(|a| rc_hat.strings(orbit(a)[0]).to_vec())
        .collect();
    Ok(RiggedConfig::from_parts(shape, nu))
}

/// Orbit-product lowering operator on the ambient side.  The fiber nodes are
/// mutually non-adjacent, so the composition order is immaterial; `None` when
/// any factor annihilates.
pub fn virtual_f(a: u8, rc_hat: &RiggedConfig) -> Option<RiggedConfig> {
    assert_eq!(rc_hat.ty(), CartanType::D4);
    let mut cur = rc_hat.clone();
    for &b in orbit(a) {
        cur = cur.f(b)?;
    }
    Some(cur)
}

/// Orbit-product raising operator on the ambient side.
pub fn virtual_e(a: u8, rc_hat: &RiggedConfig) -> Option<RiggedConfig> {
    assert_eq!(rc_hat.ty(), CartanType::D4);
    let mut cur = rc_hat.clone();
    for &b in orbit(a) {
        cur = cur.e(b)?;
    }
    Some(cur)
}

/// Cocharge of the ambient image.  The ambient type is simply laced, so this
/// is the plain unweighted statistic; it equals the cocharge of `rc` itself
/// (the arm copies account exactly for the root-length weights).
pub fn virtual_cocharge(rc: &RiggedConfig) -> i64 {
    rc_virtualize(rc).cocharge()
}

/// A letter of the ambient eight-letter alphabet `1 < 2 < 3 < 4, -4 < -3 <
/// -2 < -1` (4 and -4 are incomparable).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum AmbientLetter {
    One,
    Two,
    Three,
    Four,
    FourBar,
    ThreeBar,
    TwoBar,
    OneBar,
}

pub const AMBIENT_LETTERS: [AmbientLetter; 8] = [
    AmbientLetter::One,
    AmbientLetter::Two,
    AmbientLetter::Three,
    AmbientLetter::Four,
    AmbientLetter::FourBar,
    AmbientLetter::ThreeBar,
    AmbientLetter::TwoBar,
    AmbientLetter::OneBar,
];

impl AmbientLetter {
    pub fn symbol(self) -> &'static str {
        match self {
            AmbientLetter::One => "1",
            AmbientLetter::Two => "2",
            AmbientLetter::Three => "3",
            AmbientLetter::Four => "4",
            AmbientLetter::FourBar => "-4",
            AmbientLetter::ThreeBar => "-3",
            AmbientLetter::TwoBar => "-2",
            AmbientLetter::OneBar => "-1",
        }
    }

    /// Weight in the ambient fundamental-weight basis, via the orthogonal
    /// coordinates `e_1 = w_1`, `e_2 = w_2 - w_1`, `e_3 = w_3 + w_4 - w_2`,
    /// `e_4 = w_4 - w_3`.
    pub fn weight(self) -> Weight {
        let (k, sign) = match self {
            AmbientLetter::One => (0, 1),
            AmbientLetter::Two => (1, 1),
            AmbientLetter::Three => (2, 1),
            AmbientLetter::Four => (3, 1),
            AmbientLetter::FourBar => (3, -1),
            AmbientLetter::ThreeBar => (2, -1),
            AmbientLetter::TwoBar => (1, -1),
            AmbientLetter::OneBar => (0, -1),
        };
        let units = [[1, 0, 0, 0], [-1, 1, 0, 0], [0, -1, 1, 1], [0, 0, -1, 1]];
        let coeffs: Vec<i64> = units[k].iter().map(|&c| c * sign).collect();
        Weight::new(CartanType::D4, &coeffs)
    }

    fn vector_f(self, b: u8) -> Option<AmbientLetter> {
        use AmbientLetter::*;
        match (b, self) {
            (1, One) => Some(Two),
            (1, TwoBar) => Some(OneBar),
            (2, Two) => Some(Three),
            (2, ThreeBar) => Some(TwoBar),
            (3, Three) => Some(Four),
            (3, FourBar) => Some(ThreeBar),
            (4, Three) => Some(FourBar),
            (4, Four) => Some(ThreeBar),
            (1..=4, _) => None,
            _ => panic!("invalid ambient index {b}"),
        }
    }

    fn vector_e(self, b: u8) -> Option<AmbientLetter> {
        AMBIENT_LETTERS
            .iter()
            .copied()
            .find(|l| l.vector_f(b) == Some(self))
    }
}

impl fmt::Display for AmbientLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Column-by-column virtualization of the single-row letters into two-cell
/// ambient columns (top, bottom).
pub fn letter_virtualize(l: Letter) -> (AmbientLetter, AmbientLetter) {
    use AmbientLetter as A;
    match l {
        Letter::One => (A::One, A::Two),
        Letter::Two => (A::One, A::Three),
        Letter::Three => (A::Two, A::ThreeBar),
        Letter::Zero => (A::Three, A::ThreeBar),
        Letter::ThreeBar => (A::Three, A::TwoBar),
        Letter::TwoBar => (A::ThreeBar, A::OneBar),
        Letter::OneBar => (A::TwoBar, A::OneBar),
        Letter::Empty => (A::One, A::OneBar),
    }
}

/// A two-row rectangle of ambient letters, the image of a single-row
/// tableau.  Formal data: no crystal structure is attached.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct AmbientTableau {
    rows: [Vec<AmbientLetter>; 2],
}

impl AmbientTableau {
    pub fn rows(&self) -> &[Vec<AmbientLetter>; 2] {
        &self.rows
    }

    pub fn weight(&self) -> Weight {
        let mut w = Weight::zero(CartanType::D4);
        for row in &self.rows {
            for &l in row {
                w = w + l.weight();
            }
        }
        w
    }

    pub fn to_json(&self) -> Value {
        json!({
            "cartan": "D4",
            "rows": self.rows.iter().map(|row| {
                row.iter().map(|l| l.symbol()).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for AmbientTableau {
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

/// Virtualize a single-row tableau cell by cell into a two-row ambient
/// rectangle of the same width.
pub fn tableau_virtualize(t: &KrTableau) -> AmbientTableau {
    assert_eq!(t.r(), 1, "cellwise images are for single rows");
    let mut top = Vec::with_capacity(t.s() as usize);
    let mut bottom = Vec::with_capacity(t.s() as usize);
    for &l in &t.rows()[0] {
        let (hi, lo) = letter_virtualize(l);
        top.push(hi);
        bottom.push(lo);
    }
    let out = AmbientTableau {
        rows: [top, bottom],
    };
    debug_assert_eq!(out.weight(), psi_embed(&t.weight()));
    out
}

/// A spin column: four signs, recording a weight `(s_1 e_1 + ... + s_4
/// e_4)/2`.  The `node` tag (3 or 4) names which end node the column belongs
/// to; its parity constrains the number of minus signs (even for 4, odd
/// for 3).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SpinColumn {
    node: u8,
    signs: [bool; 4],
}

impl SpinColumn {
    pub fn new(node: u8, signs: [bool; 4]) -> Self {
        assert!(node == 3 || node == 4, "spin columns sit at the end nodes");
        let minuses = signs.iter().filter(|&&s| !s).count();
        assert_eq!(
            minuses % 2 == 0,
            node == 4,
            "sign parity must match the node"
        );
        SpinColumn { node, signs }
    }

    pub fn node(&self) -> u8 {
        self.node
    }

    pub fn signs(&self) -> [bool; 4] {
        self.signs
    }

    pub fn weight(&self) -> Weight {
        let mut w = Weight::zero(CartanType::D4);
        let units = [[1, 0, 0, 0], [-1, 1, 0, 0], [0, -1, 1, 1], [0, 0, -1, 1]];
        for (k, &plus) in self.signs.iter().enumerate() {
            let sign = if plus { 1 } else { -1 };
            for (b, &unit) in units[k].iter().enumerate() {
                w.set(b as u8 + 1, w.get(b as u8 + 1) + sign * unit);
            }
        }
        // Half-sum of unit vectors: each coefficient is necessarily even by
        // the construction above only after pairing, so divide via the raw
        // coefficient vector.
        let coeffs: Vec<i64> = (1..=4)
            .map(|b| {
                let c = w.get(b);
                assert_eq!(c % 2, 0, "spin weight is half-integral in units");
                c / 2
            })
            .collect();
        Weight::new(CartanType::D4, &coeffs)
    }

    fn spin_f(&self, b: u8) -> Option<SpinColumn> {
        let mut signs = self.signs;
        let ok = match b {
            1..=3 => {
                let i = b as usize - 1;
                if signs[i] && !signs[i + 1] {
                    signs[i] = false;
                    signs[i + 1] = true;
                    true
                } else {
                    false
                }
            }
            4 => {
                if signs[2] && signs[3] {
                    signs[2] = false;
                    signs[3] = false;
                    true
                } else {
                    false
                }
            }
            _ => panic!("invalid ambient index {b}"),
        };
        ok.then_some(SpinColumn {
            node: self.node,
            signs,
        })
    }

    fn spin_e(&self, b: u8) -> Option<SpinColumn> {
        let mut signs = self.signs;
        let ok = match b {
            1..=3 => {
                let i = b as usize - 1;
                if !signs[i] && signs[i + 1] {
                    signs[i] = true;
                    signs[i + 1] = false;
                    true
                } else {
                    false
                }
            }
            4 => {
                if !signs[2] && !signs[3] {
                    signs[2] = true;
                    signs[3] = true;
                    true
                } else {
                    false
                }
            }
            _ => panic!("invalid ambient index {b}"),
        };
        ok.then_some(SpinColumn {
            node: self.node,
            signs,
        })
    }
}

impl fmt::Display for SpinColumn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<&str> = self
            .signs
            .iter()
            .map(|&s| if s { "+" } else { "-" })
            .collect();
        write!(f, "({})", cells.join(","))
    }
}

/// One factor of the ambient image of a two-row column: a vector letter or a
/// spin column.  Carries just enough crystal structure to extend the
/// virtualization map along operator words.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
enum AmbientFactor {
    Vector(AmbientLetter),
    Spin(SpinColumn),
}

impl CrystalElement for AmbientFactor {
    fn e(&self, b: u8) -> Option<Self> {
        match self {
            AmbientFactor::Vector(l) => l.vector_e(b).map(AmbientFactor::Vector),
            AmbientFactor::Spin(c) => c.spin_e(b).map(AmbientFactor::Spin),
        }
    }

    fn f(&self, b: u8) -> Option<Self> {
        match self {
            AmbientFactor::Vector(l) => l.vector_f(b).map(AmbientFactor::Vector),
            AmbientFactor::Spin(c) => c.spin_f(b).map(AmbientFactor::Spin),
        }
    }

    fn weight(&self) -> Weight {
        match self {
            AmbientFactor::Vector(l) => l.weight(),
            AmbientFactor::Spin(c) => c.weight(),
        }
    }
}

fn triple_op(factors: &[AmbientFactor; 3], b: u8, lower: bool) -> Option<[AmbientFactor; 3]> {
    let stats: Vec<(i64, i64)> = factors.iter().map(|x| (x.eps(b), x.phi(b))).collect();
    let pos = if lower {
        crystal::tensor_f_position(&stats)?
    } else {
        crystal::tensor_e_position(&stats)?
    };
    let mut out = factors.clone();
    out[pos] = if lower {
        factors[pos].f(b)?
    } else {
        factors[pos].e(b)?
    };
    Some(out)
}

/// Ambient image of a two-row column: a vector letter tensor two spin
/// columns (end nodes 3 and 4, in that order).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct AmbientColumnTriple {
    factors: [AmbientFactor; 3],
}

impl AmbientColumnTriple {
    fn seed(vector: AmbientLetter, arm_signs: [bool; 4]) -> Self {
        AmbientColumnTriple {
            factors: [
                AmbientFactor::Vector(vector),
                AmbientFactor::Spin(SpinColumn::new(3, arm_signs)),
                AmbientFactor::Spin(SpinColumn::new(4, [true; 4])),
            ],
        }
    }

    pub fn vector(&self) -> AmbientLetter {
        match self.factors[0] {
            AmbientFactor::Vector(l) => l,
            _ => unreachable!("first factor is the vector letter"),
        }
    }

    pub fn spin(&self, node: u8) -> SpinColumn {
        let idx = match node {
            3 => 1,
            4 => 2,
            _ => panic!("spin factors sit at the end nodes"),
        };
        match self.factors[idx] {
            AmbientFactor::Spin(c) => c,
            _ => unreachable!("tail factors are spin columns"),
        }
    }

    pub fn weight(&self) -> Weight {
        self.factors
            .iter()
            .fold(Weight::zero(CartanType::D4), |w, x| w + x.weight())
    }

    /// Orbit-product lowering operator on the triple.
    pub fn virtual_f(&self, a: u8) -> Option<AmbientColumnTriple> {
        let mut cur = self.factors.clone();
        for &b in orbit(a) {
            cur = triple_op(&cur, b, true)?;
        }
        Some(AmbientColumnTriple { factors: cur })
    }

    /// Orbit-product raising operator on the triple.
    pub fn virtual_e(&self, a: u8) -> Option<AmbientColumnTriple> {
        let mut cur = self.factors.clone();
        for &b in orbit(a) {
            cur = triple_op(&cur, b, false)?;
        }
        Some(AmbientColumnTriple { factors: cur })
    }

    pub fn to_json(&self) -> Value {
        let spin = |c: SpinColumn| {
            c.signs()
                .iter()
                .map(|&s| if s { "+" } else { "-" })
                .collect::<Vec<_>>()
        };
        json!({
            "cartan": "D4",
            "vector": self.vector().symbol(),
            "spin3": spin(self.spin(3)),
            "spin4": spin(self.spin(4)),
        })
    }
}

impl fmt::Display for AmbientColumnTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] (x) {} (x) {}",
            self.vector(),
            self.spin(3),
            self.spin(4)
        )
    }
}

/// Virtualize a two-row column into the vector-spin-spin triple.  The four
/// classically highest columns have pinned images; everything else is
/// reached by replaying its raising path with the orbit-product lowering
/// operators, which is well defined because the map is a classical crystal
/// morphism.
pub fn b2_virtualize(t: &KrTableau) -> AmbientColumnTriple {
    use AmbientLetter as A;
    assert_eq!((t.r(), t.s()), (2, 1), "two-row columns only");
    let (hw, path) = crystal::to_highest_weight(t, &[1, 2]);
    let head = (hw.rows()[0][0], hw.rows()[1][0]);
    let seed = match head {
        (Letter::One, Letter::Two) => AmbientColumnTriple::seed(A::One, [true, true, true, false]),
        (Letter::One, Letter::Zero) => {
            AmbientColumnTriple::seed(A::Two, [true, false, false, false])
        }
        (Letter::One, Letter::Empty) => {
            AmbientColumnTriple::seed(A::ThreeBar, [true, true, true, false])
        }
        (Letter::Empty, Letter::Empty) => {
            AmbientColumnTriple::seed(A::OneBar, [true, false, false, false])
        }
        _ => unreachable!("not a highest weight column: {head:?}"),
    };
    let mut cur = seed;
    for &a in path.iter().rev() {
        cur = cur.virtual_f(a).expect("orbit product must not annihilate");
    }
    debug_assert_eq!(cur.weight(), psi_embed(&t.weight()));
    cur
}
