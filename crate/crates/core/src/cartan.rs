//! Cartan data and integral weights for the two root systems in play.
//!
//! `G2` is the classical subalgebra of the twisted affine algebra we work
//! with; `D4` is the simply laced ambient type used by the virtualization
//! machinery.  Node numbering: `G2` has nodes 1 (short) and 2 (long) with
//! `<h_2, alpha_1> = -1`; `D4` has the triality nodes 1, 3, 4 attached to
//! the central node 2.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub type Int = i64;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum CartanType {
    G2,
    D4,
}

impl CartanType {
    pub fn rank(self) -> usize {
        match self {
            CartanType::G2 => 2,
            CartanType::D4 => 4,
        }
    }

    /// Classical node labels, 1-based.
    pub fn nodes(self) -> impl Iterator<Item = u8> {
        (1..=self.rank() as u8).collect::<Vec<_>>().into_iter()
    }

    /// Cartan matrix entry `A_{ab} = <h_a, alpha_b>`, nodes 1-based.
    pub fn cartan(self, a: u8, b: u8) -> Int {
        debug_assert!(self.valid_node(a) && self.valid_node(b));
        match self {
            CartanType::G2 => match (a, b) {
                (1, 1) | (2, 2) => 2,
                (1, 2) => -3,
                (2, 1) => -1,
                _ => unreachable!(),
            },
            CartanType::D4 => {
                if a == b {
                    2
                } else if a == 2 || b == 2 {
                    -1
                } else {
                    0
                }
            }
        }
    }

    /// Symmetrizing factor `d_a`, normalized so `(alpha_a | alpha_a) = 2 d_a`
    /// with the short roots having `d = 1`.
    pub fn sym(self, a: u8) -> Int {
        debug_assert!(self.valid_node(a));
        match (self, a) {
            (CartanType::G2, 2) => 3,
            _ => 1,
        }
    }

    /// Dual translation factor `t_a` (equals `d_a` in these normalizations).
    pub fn dual_scale(self, a: u8) -> Int {
        self.sym(a)
    }

    pub fn valid_node(self, a: u8) -> bool {
        1 <= a && (a as usize) <= self.rank()
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CartanType::G2 => write!(f, "G2"),
            CartanType::D4 => write!(f, "D4"),
        }
    }
}

/// An integral classical weight written in the fundamental-weight basis.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Weight {
    ty: CartanType,
    coeffs: [Int; 4],
}

impl Weight {
    pub fn zero(ty: CartanType) -> Self {
        Weight { ty, coeffs: [0; 4] }
    }

    pub fn fundamental(ty: CartanType, a: u8) -> Self {
        let mut w = Weight::zero(ty);
        w.set(a, 1);
        w
    }

    pub fn new(ty: CartanType, coeffs: &[Int]) -> Self {
        assert_eq!(coeffs.len(), ty.rank());
        let mut w = Weight::zero(ty);
        w.coeffs[..coeffs.len()].copy_from_slice(coeffs);
        w
    }

    pub fn cartan_type(&self) -> CartanType {
        self.ty
    }

    /// Coefficient of the fundamental weight at node `a`; this is also the
    /// pairing `<h_a, lambda>`.
    pub fn get(&self, a: u8) -> Int {
        debug_assert!(self.ty.valid_node(a));
        self.coeffs[(a - 1) as usize]
    }

    pub fn set(&mut self, a: u8, v: Int) {
        debug_assert!(self.ty.valid_node(a));
        self.coeffs[(a - 1) as usize] = v;
    }

    pub fn pairing_h(&self, a: u8) -> Int {
        self.get(a)
    }

    pub fn is_dominant(&self) -> bool {
        self.coeffs[..self.ty.rank()].iter().all(|&c| c >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs[..self.ty.rank()]
    }

    /// Expansion in the simple-root basis, doubled to stay integral for D4
    /// (whose Cartan matrix has determinant 4 but halves suffice here).
    pub fn root_coefficients_x2(&self) -> Vec<Int> {
        let m = &self.coeffs;
        match self.ty {
            CartanType::G2 => vec![2 * (2 * m[0] + 3 * m[1]), 2 * (m[0] + 2 * m[1])],
            CartanType::D4 => vec![
                2 * m[0] + 2 * m[1] + m[2] + m[3],
                2 * (m[0] + 2 * m[1] + m[2] + m[3]),
                m[0] + 2 * m[1] + 2 * m[2] + m[3],
                m[0] + 2 * m[1] + m[2] + 2 * m[3],
            ],
        }
    }

    /// Expansion in the simple-root basis, if the weight lies in the root
    /// lattice.
    pub fn root_coefficients(&self) -> Option<Vec<Int>> {
        let doubled = self.root_coefficients_x2();
        if doubled.iter().all(|c| c % 2 == 0) {
            Some(doubled.iter().map(|c| c / 2).collect())
        } else {
            None
        }
    }

    /// True when `self - other` is a nonnegative integral combination of
    /// simple roots.
    pub fn dominates(&self, other: &Weight) -> bool {
        assert_eq!(self.ty, other.ty);
        match (*self - *other).root_coefficients() {
            Some(c) => c.iter().all(|&x| x >= 0),
            None => false,
        }
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        assert_eq!(self.ty, rhs.ty);
        let mut out = self;
        for i in 0..4 {
            out.coeffs[i] += rhs.coeffs[i];
        }
        out
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        self + (-rhs)
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        let mut out = self;
        for c in &mut out.coeffs {
            *c = -*c;
        }
        out
    }
}

impl Mul<Int> for Weight {
    type Output = Weight;
    fn mul(self, rhs: Int) -> Weight {
        let mut out = self;
        for c in &mut out.coeffs {
            *c *= rhs;
        }
        out
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for a in self.ty.nodes() {
            let c = self.get(a);
            if c == 0 {
                continue;
            }
            if !first && c > 0 {
                write!(f, "+")?;
            }
            match c {
                1 => {}
                -1 => write!(f, "-")?,
                _ => write!(f, "{c}")?,
            }
            write!(f, "w{a}")?;
            first = false;
        }
        Ok(())
    }
}

/// Simple root `alpha_a` in the fundamental-weight basis: its coefficient at
/// node `b` is `A_{ba}`.
pub fn simple_root(ty: CartanType, a: u8) -> Weight {
    assert!(ty.valid_node(a));
    let mut w = Weight::zero(ty);
    for b in ty.nodes() {
        w.set(b, ty.cartan(b, a));
    }
    w
}

/// Symmetric pairing `(alpha_a | alpha_b) = d_a A_{ab}`.
pub fn root_pairing(ty: CartanType, a: u8, b: u8) -> Int {
    ty.sym(a) * ty.cartan(a, b)
}

/// A level-zero affine weight for the twisted algebra over the G2 nodes,
/// in the affine fundamental-weight basis `Lambda_0, Lambda_1, Lambda_2`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct AffineWeight {
    pub c0: Int,
    pub c1: Int,
    pub c2: Int,
}

/// Lift a classical G2 weight to the level-zero affine weight lattice.  The
/// `Lambda_0` coefficient is forced by `<wt, c> = 0` for the canonical
/// central element, giving `c_0 = -(2 c_1 + 3 c_2)`.
pub fn affinize(w: &Weight) -> AffineWeight {
    assert_eq!(w.cartan_type(), CartanType::G2);
    let (c1, c2) = (w.get(1), w.get(2));
    AffineWeight {
        c0: -(2 * c1 + 3 * c2),
        c1,
        c2,
    }
}

impl fmt::Display for AffineWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, name) in [(self.c0, "L0"), (self.c1, "L1"), (self.c2, "L2")] {
            if c == 0 {
                continue;
            }
            if !first && c > 0 {
                write!(f, "+")?;
            }
            match c {
                1 => {}
                -1 => write!(f, "-")?,
                _ => write!(f, "{c}")?,
            }
            write!(f, "{name}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Dimension of the irreducible G2 module with highest weight `lambda`, via
/// the Weyl dimension formula over the six positive roots.
pub fn weyl_dimension_g2(lambda: &Weight) -> u64 {
    assert_eq!(lambda.cartan_type(), CartanType::G2);
    assert!(lambda.is_dominant());
    // Positive roots a*alpha_1 + b*alpha_2 with <lambda, alpha^vee> listed as
    // linear forms in (m1, m2).
    const FORMS: [(Int, Int); 6] = [(1, 0), (0, 1), (1, 3), (2, 3), (1, 1), (1, 2)];
    let (m1, m2) = (lambda.get(1), lambda.get(2));
    let mut num: u64 = 1;
    let mut den: u64 = 1;
    for (u, v) in FORMS {
        num *= (u * (m1 + 1) + v * (m2 + 1)) as u64;
        den *= (u + v) as u64;
    }
    assert_eq!(num % den, 0);
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_roots_g2() {
        assert_eq!(simple_root(CartanType::G2, 1).coeffs(), &[2, -1]);
        assert_eq!(simple_root(CartanType::G2, 2).coeffs(), &[-3, 2]);
    }

    #[test]
    fn simple_roots_d4() {
        assert_eq!(simple_root(CartanType::D4, 1).coeffs(), &[2, -1, 0, 0]);
        assert_eq!(simple_root(CartanType::D4, 2).coeffs(), &[-1, 2, -1, -1]);
        assert_eq!(simple_root(CartanType::D4, 3).coeffs(), &[0, -1, 2, 0]);
        assert_eq!(simple_root(CartanType::D4, 4).coeffs(), &[0, -1, 0, 2]);
    }

    #[test]
    fn pairing_symmetric() {
        for ty in [CartanType::G2, CartanType::D4] {
            for a in ty.nodes() {
                for b in ty.nodes() {
                    assert_eq!(root_pairing(ty, a, b), root_pairing(ty, b, a));
                }
            }
        }
        assert_eq!(root_pairing(CartanType::G2, 1, 1), 2);
        assert_eq!(root_pairing(CartanType::G2, 1, 2), -3);
        assert_eq!(root_pairing(CartanType::G2, 2, 2), 6);
    }

    #[test]
    fn root_coefficients_round_trip() {
        // G2: the Cartan matrix has determinant 1, so every weight is in the
        // root lattice.
        let w = Weight::new(CartanType::G2, &[4, -2]);
        let c = w.root_coefficients().unwrap();
        assert_eq!(c, vec![2 * 4 + 3 * (-2), 4 + 2 * (-2)]);
        let back = simple_root(CartanType::G2, 1) * c[0] + simple_root(CartanType::G2, 2) * c[1];
        assert_eq!(back, w);

        // D4 fundamental weights at the triality nodes are not in the root
        // lattice; the central one is.
        assert!(Weight::fundamental(CartanType::D4, 1)
            .root_coefficients()
            .is_none());
        assert_eq!(
            Weight::fundamental(CartanType::D4, 2)
                .root_coefficients()
                .unwrap(),
            vec![1, 2, 1, 1]
        );
        let orbit_sum = Weight::new(CartanType::D4, &[1, 0, 1, 1]);
        assert_eq!(orbit_sum.root_coefficients().unwrap(), vec![2, 3, 2, 2]);
    }

    #[test]
    fn affinization() {
        let w = Weight::new(CartanType::G2, &[2, 1]);
        assert_eq!(
            affinize(&w),
            AffineWeight {
                c0: -7,
                c1: 2,
                c2: 1
            }
        );
        let w = Weight::new(CartanType::G2, &[5, -2]);
        assert_eq!(
            affinize(&w),
            AffineWeight {
                c0: -4,
                c1: 5,
                c2: -2
            }
        );
        assert_eq!(
            affinize(&Weight::zero(CartanType::G2)),
            AffineWeight {
                c0: 0,
                c1: 0,
                c2: 0
            }
        );
    }

    #[test]
    fn weyl_dimensions() {
        let dim = |m1, m2| weyl_dimension_g2(&Weight::new(CartanType::G2, &[m1, m2]));
        assert_eq!(dim(0, 0), 1);
        assert_eq!(dim(1, 0), 7);
        assert_eq!(dim(0, 1), 14);
        assert_eq!(dim(2, 0), 27);
        assert_eq!(dim(1, 1), 64);
        assert_eq!(dim(3, 0), 77);
        assert_eq!(dim(0, 2), 77);
        assert_eq!(dim(4, 0), 182);
        assert_eq!(dim(2, 1), 189);
    }

    #[test]
    fn dominance_order() {
        let hi = Weight::new(CartanType::G2, &[2, 0]);
        let lo = Weight::new(CartanType::G2, &[0, 1]);
        // 2w1 - w2 = alpha_1, so hi dominates lo but not conversely.
        assert!(hi.dominates(&lo));
        assert!(!lo.dominates(&hi));
    }
}
