//! Rigged configurations: tensor shapes, vacancy numbers, the classical
//! crystal structure, cocharge, the rigging complement, highest weight
//! enumeration, and the experimental zero-arrows on single-factor shapes.

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::{Arc, Mutex};

use itertools::Itertools;
use once_cell::sync::Lazy;
use serde_json::{json, Value};

use crate::cartan::{affinize, root_pairing, simple_root, AffineWeight, CartanType, Int, Weight};
use crate::crystal::{self, CrystalElement};

/// An ordered tensor product of rectangle labels `(r, s)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TensorShape {
    ty: CartanType,
    factors: Vec<(u8, u8)>,
}

impl TensorShape {
    pub fn new(ty: CartanType, factors: Vec<(u8, u8)>) -> Self {
        for &(r, s) in &factors {
            assert!(
                ty.valid_node(r),
                "factor row count {r} is not a node of {ty}"
            );
            assert!(s >= 1, "factor width must be positive");
        }
        TensorShape { ty, factors }
    }

    pub fn ty(&self) -> CartanType {
        self.ty
    }

    pub fn factors(&self) -> &[(u8, u8)] {
        &self.factors
    }

    /// Multiplicity `L_i^{(a)}` of the rectangle `(a, i)`.
    pub fn l_count(&self, a: u8, i: i64) -> Int {
        self.factors
            .iter()
            .filter(|&&(r, s)| r == a && s as i64 == i)
            .count() as Int
    }

    /// `sum_j min(i, j) L_j^{(a)}`.
    pub fn l_min_sum(&self, a: u8, i: i64) -> Int {
        self.factors
            .iter()
            .filter(|&&(r, _)| r == a)
            .map(|&(_, s)| i.min(s as i64))
            .sum()
    }

    /// Dominant weight `sum_j s_j w_{r_j}` of the whole product.
    pub fn lambda(&self) -> Weight {
        let mut w = Weight::zero(self.ty);
        for &(r, s) in &self.factors {
            w = w + Weight::fundamental(self.ty, r) * (s as Int);
        }
        w
    }

    pub fn reversed(&self) -> TensorShape {
        let mut factors = self.factors.clone();
        factors.reverse();
        TensorShape {
            ty: self.ty,
            factors,
        }
    }

    pub fn to_json(&self) -> Value {
        json!(self
            .factors
            .iter()
            .map(|&(r, s)| vec![r, s])
            .collect::<Vec<_>>())
    }
}

impl fmt::Display for TensorShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(r, s)| format!("B{r},{s}"))
            .collect();
        write!(f, "{}", parts.join(" (x) "))
    }
}

/// A rigged configuration: per node, a multiset of strings `(length,
/// rigging)` kept sorted by decreasing length, then decreasing rigging.
///
/// Validity (every rigging at most its vacancy number) is a separate check,
/// not a construction invariant, so intermediate states of box-moving
/// algorithms can be represented.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct RiggedConfig {
    shape: TensorShape,
    nu: Vec<Vec<(i64, i64)>>,
}

impl RiggedConfig {
    pub fn from_parts(shape: TensorShape, mut nu: Vec<Vec<(i64, i64)>>) -> Self {
        assert_eq!(nu.len(), shape.ty().rank(), "one partition per node");
        for strings in &mut nu {
            for &(len, _) in strings.iter() {
                assert!(len >= 1, "string lengths are positive");
            }
            strings.sort_by_key(|&(len, rig)| (-len, -rig));
        }
        RiggedConfig { shape, nu }
    }

    /// Empty configuration of the given shape.
    pub fn vacuum(shape: TensorShape) -> Self {
        let rank = shape.ty().rank();
        RiggedConfig {
            shape,
            nu: vec![Vec::new(); rank],
        }
    }

    /// Convenience constructor from parallel partition and rigging lists.
    pub fn from_rows(shape: TensorShape, partitions: &[Vec<i64>], riggings: &[Vec<i64>]) -> Self {
        assert_eq!(partitions.len(), riggings.len());
        let nu = partitions
            .iter()
            .zip(riggings)
            .map(|(lens, rigs)| {
                assert_eq!(lens.len(), rigs.len(), "one rigging per string");
                lens.iter().copied().zip(rigs.iter().copied()).collect()
            })
            .collect();
        Self::from_parts(shape, nu)
    }

    pub fn shape(&self) -> &TensorShape {
        &self.shape
    }

    pub fn ty(&self) -> CartanType {
        self.shape.ty()
    }

    pub fn nu(&self) -> &[Vec<(i64, i64)>] {
        &self.nu
    }

    pub fn strings(&self, a: u8) -> &[(i64, i64)] {
        &self.nu[a as usize - 1]
    }

    /// `sum_j min(i, j) m_j^{(b)}` over the strings of node `b`.
    fn m_min_sum(&self, b: u8, i: i64) -> i64 {
        self.nu[b as usize - 1]
            .iter()
            .map(|&(len, _)| i.min(len))
            .sum()
    }

    /// Vacancy number `p_i^{(a)}`.
    pub fn vacancy(&self, a: u8, i: i64) -> i64 {
        let ty = self.ty();
        let mut p = self.shape.l_min_sum(a, i);
        for b in ty.nodes() {
            p -= ty.cartan(a, b) * self.m_min_sum(b, i);
        }
        p
    }

    pub fn vacancies(&self) -> Vec<Vec<i64>> {
        self.ty()
            .nodes()
            .map(|a| {
                self.strings(a)
                    .iter()
                    .map(|&(len, _)| self.vacancy(a, len))
                    .collect()
            })
            .collect()
    }

    pub fn is_valid(&self) -> bool {
        self.ty().nodes().all(|a| {
            self.strings(a)
                .iter()
                .all(|&(len, rig)| rig <= self.vacancy(a, len))
        })
    }

    pub fn is_highest(&self) -> bool {
        self.is_valid()
            && self
                .nu
                .iter()
                .all(|strings| strings.iter().all(|&(_, rig)| rig >= 0))
    }

    pub fn weight(&self) -> Weight {
        let ty = self.ty();
        let mut w = self.shape.lambda();
        for a in ty.nodes() {
            let size: i64 = self.strings(a).iter().map(|&(len, _)| len).sum();
            w = w - simple_root(ty, a) * size;
        }
        w
    }

    pub fn affine_weight(&self) -> AffineWeight {
        affinize(&self.weight())
    }

    /// Quadratic part of the cocharge.
    pub fn cocharge_nu(&self) -> i64 {
        let ty = self.ty();
        let mut total = 0;
        for a in ty.nodes() {
            for b in ty.nodes() {
                let pairing = root_pairing(ty, a, b);
                for &(i, _) in self.strings(a) {
                    for &(j, _) in self.strings(b) {
                        total += pairing * i.min(j);
                    }
                }
            }
        }
        assert_eq!(total.rem_euclid(2), 0, "cocharge quadratic form is even");
        total / 2
    }

    /// Quadratic part in the vacancy-number form; agrees with
    /// [`Self::cocharge_nu`] and serves as an independent route.
    pub fn cocharge_nu_alt(&self) -> i64 {
        let ty = self.ty();
        let mut total = 0;
        for a in ty.nodes() {
            let t = ty.dual_scale(a);
            for &(i, _) in self.strings(a) {
                total += t * (-self.vacancy(a, i) + self.shape.l_min_sum(a, i));
            }
        }
        assert_eq!(total.rem_euclid(2), 0, "cocharge quadratic form is even");
        total / 2
    }

    /// Full cocharge: quadratic part plus the rigging sum, each node scaled
    /// by its root length.  The scaling makes the cocharge constant on
    /// classical components: a lowering operator on node `a` shifts the
    /// riggings of every other node by the coupling to `a`, and only the
    /// scaled sum absorbs that against the quadratic part.
    pub fn cocharge(&self) -> i64 {
        let ty = self.ty();
        let rig_sum: i64 = ty
            .nodes()
            .map(|a| ty.dual_scale(a) * self.strings(a).iter().map(|&(_, rig)| rig).sum::<i64>())
            .sum();
        self.cocharge_nu() + rig_sum
    }

    /// Replace one string of node `a` (keeping every other string's colabel
    /// fixed) and insert a replacement with an explicit label.
    fn with_box_change(
        &self,
        a: u8,
        remove: Option<(i64, i64)>,
        insert: Option<(i64, i64)>,
    ) -> RiggedConfig {
        let idx = a as usize - 1;
        let mut nu = self.nu.clone();
        if let Some(rm) = remove {
            let pos = nu[idx]
                .iter()
                .position(|&s| s == rm)
                .expect("string to remove exists");
            nu[idx].remove(pos);
        }
        // Skeleton with the new lengths decides the new vacancy numbers.
        let mut skeleton = nu.clone();
        if let Some(ins) = insert {
            skeleton[idx].push(ins);
        }
        let next = RiggedConfig::from_parts(self.shape.clone(), skeleton);
        let mut out = Vec::with_capacity(nu.len());
        for (node, strings) in nu.iter().enumerate() {
            let b = node as u8 + 1;
            out.push(
                strings
                    .iter()
                    .map(|&(len, rig)| {
                        let colabel = self.vacancy(b, len) - rig;
                        (len, next.vacancy(b, len) - colabel)
                    })
                    .collect::<Vec<_>>(),
            );
        }
        if let Some(ins) = insert {
            out[idx].push(ins);
        }
        RiggedConfig::from_parts(self.shape.clone(), out)
    }
}

impl CrystalElement for RiggedConfig {
    /// Shorten a minimal-length string among those with the smallest (and
    /// negative) label, raising that label; colabels elsewhere are fixed.
    fn e(&self, a: u8) -> Option<Self> {
        assert!(self.ty().valid_node(a), "invalid crystal index {a}");
        let strings = self.strings(a);
        let x = strings.iter().map(|&(_, rig)| rig).min()?;
        if x >= 0 {
            return None;
        }
        let len = strings
            .iter()
            .filter(|&&(_, rig)| rig == x)
            .map(|&(len, _)| len)
            .min()
            .unwrap();
        let insert = (len > 1).then_some((len - 1, x + 1));
        let out = self.with_box_change(a, Some((len, x)), insert);
        assert!(out.is_valid(), "raising preserves validity");
        Some(out)
    }

    /// Lengthen a maximal-length string among those with the smallest label
    /// (creating a new length-one string when all labels are positive),
    /// lowering that label; colabels elsewhere are fixed.  Annihilates when
    /// the new label would exceed its vacancy number.
    fn f(&self, a: u8) -> Option<Self> {
        assert!(self.ty().valid_node(a), "invalid crystal index {a}");
        let strings = self.strings(a);
        let x = strings.iter().map(|&(_, rig)| rig).min().unwrap_or(1);
        let out = if x > 0 {
            self.with_box_change(a, None, Some((1, -1)))
        } else {
            let len = strings
                .iter()
                .filter(|&&(_, rig)| rig == x)
                .map(|&(len, _)| len)
                .max()
                .unwrap();
            self.with_box_change(a, Some((len, x)), Some((len + 1, x - 1)))
        };
        out.is_valid().then_some(out)
    }

    fn weight(&self) -> Weight {
        RiggedConfig::weight(self)
    }

    fn eps(&self, a: u8) -> i64 {
        assert!(self.ty().valid_node(a), "invalid crystal index {a}");
        let min = self
            .strings(a)
            .iter()
            .map(|&(_, rig)| rig)
            .min()
            .unwrap_or(0);
        -min.min(0)
    }

    fn phi(&self, a: u8) -> i64 {
        self.eps(a) + self.weight().pairing_h(a)
    }
}

impl fmt::Display for RiggedConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = |pick: &dyn Fn(&(i64, i64)) -> i64| {
            let per_node: Vec<String> = self
                .nu
                .iter()
                .map(|strings| {
                    let vals: Vec<String> = strings.iter().map(|s| pick(s).to_string()).collect();
                    format!("[{}]", vals.join(","))
                })
                .collect();
            format!("[{}]", per_node.join(","))
        };
        write!(f, "nu={} J={}", part(&|s| s.0), part(&|s| s.1))
    }
}

impl RiggedConfig {
    pub fn to_json(&self) -> Value {
        json!({
            "cartan": self.ty().to_string(),
            "factors": self.shape.to_json(),
            "nu": self.nu.iter().map(|strings| {
                strings.iter().map(|&(len, _)| len).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
            "riggings": self.nu.iter().map(|strings| {
                strings.iter().map(|&(_, rig)| rig).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<RiggedConfig, String> {
        let ty = match v.get("cartan").and_then(Value::as_str) {
            Some("G2") => CartanType::G2,
            Some("D4") => CartanType::D4,
            other => return Err(format!("unknown cartan field {other:?}")),
        };
        let pairs = |key: &str| -> Result<Vec<Vec<i64>>, String> {
            v.get(key)
                .and_then(Value::as_array)
                .ok_or(format!("{key} must be an array"))?
                .iter()
                .map(|row| {
                    row.as_array()
                        .ok_or(format!("{key} rows are arrays"))?
                        .iter()
                        .map(|x| x.as_i64().ok_or(format!("{key} entries are integers")))
                        .collect()
                })
                .collect()
        };
        let factors = v
            .get("factors")
            .and_then(Value::as_array)
            .ok_or("factors must be an array")?
            .iter()
            .map(|f| {
                let pair = f.as_array().filter(|p| p.len() == 2);
                let pair = pair.ok_or("factors are [r, s] pairs")?;
                let r = pair[0].as_u64().ok_or("r is a positive integer")?;
                let s = pair[1].as_u64().filter(|&s| s >= 1).ok_or("s >= 1")?;
                Ok::<(u8, u8), String>((r as u8, s as u8))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let nu = pairs("nu")?;
        let riggings = pairs("riggings")?;
        if nu.len() != ty.rank() || riggings.len() != ty.rank() {
            return Err(format!("expected {} partitions", ty.rank()));
        }
        if nu
            .iter()
            .zip(&riggings)
            .any(|(lens, rigs)| lens.len() != rigs.len())
        {
            return Err("one rigging per string".into());
        }
        if nu.iter().flatten().any(|&len| len < 1) {
            return Err("string lengths are positive".into());
        }
        Ok(RiggedConfig::from_rows(
            TensorShape::new(ty, factors),
            &nu,
            &riggings,
        ))
    }

    /// Rigging complement: at the classical highest weight every rigging is
    /// replaced by its colabel, the factor order is reversed, and the map is
    /// transported along lowering strings.
    pub fn eta(&self) -> RiggedConfig {
        let (hw, path) = crystal::to_highest_weight(self, &classical_indices(self.ty()));
        let nu = hw
            .nu
            .iter()
            .enumerate()
            .map(|(node, strings)| {
                let a = node as u8 + 1;
                strings
                    .iter()
                    .map(|&(len, rig)| (len, hw.vacancy(a, len) - rig))
                    .collect()
            })
            .collect();
        let mut cur = RiggedConfig::from_parts(self.shape.reversed(), nu);
        for &a in path.iter().rev() {
            cur = cur.f(a).expect("complement transports along strings");
        }
        cur
    }
}

pub fn classical_indices(ty: CartanType) -> Vec<u8> {
    ty.nodes().collect()
}

/// All weakly decreasing positive integer sequences summing to `n`.
pub fn partitions(n: i64) -> Vec<Vec<i64>> {
    fn rec(n: i64, max: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=max.min(n)).rev() {
            cur.push(part);
            rec(n - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Brute-force enumeration of the highest weight rigged configurations of a
/// shape: scan candidate partitions for every dominant weight below the
/// shape's weight and attach all admissible riggings.
pub fn enumerate_hw(shape: &TensorShape) -> BTreeSet<RiggedConfig> {
    let mut out = BTreeSet::new();
    for base in hw_skeletons(shape) {
        extend_with_riggings(&base, &mut out);
    }
    out
}

/// Zero-rigged skeletons of the highest weight configurations: partition
/// tuples whose weight stays dominant and whose occupied vacancy numbers are
/// all nonnegative.  Attaching riggings in `0..=p` per string recovers
/// `enumerate_hw` exactly.
pub fn hw_skeletons(shape: &TensorShape) -> Vec<RiggedConfig> {
    let ty = shape.ty();
    let rank = ty.rank();
    let lambda_top = shape.lambda();
    let bounds = lambda_top.root_coefficients_x2();
    let mut out = Vec::new();

    let mut sizes = vec![0i64; rank];
    loop {
        let mut lam = lambda_top;
        for (node, &m) in sizes.iter().enumerate() {
            lam = lam - simple_root(ty, node as u8 + 1) * m;
        }
        if lam.is_dominant() {
            let parts_per_node: Vec<Vec<Vec<i64>>> = sizes.iter().map(|&m| partitions(m)).collect();
            for combo in parts_per_node
                .iter()
                .map(|p| p.iter())
                .multi_cartesian_product()
            {
                let nu: Vec<Vec<(i64, i64)>> = combo
                    .iter()
                    .map(|lens| lens.iter().map(|&l| (l, 0)).collect())
                    .collect();
                let base = RiggedConfig::from_parts(shape.clone(), nu);
                let admissible = ty.nodes().all(|a| {
                    base.strings(a)
                        .iter()
                        .all(|&(len, _)| base.vacancy(a, len) >= 0)
                });
                if admissible {
                    out.push(base);
                }
            }
        }
        // Advance the size tuple like an odometer.
        let mut node = 0;
        loop {
            if node == rank {
                return out;
            }
            sizes[node] += 1;
            if sizes[node] <= bounds[node] {
                break;
            }
            sizes[node] = 0;
            node += 1;
        }
    }
}

/// Attach every admissible rigging (weakly decreasing within equal lengths,
/// between 0 and the vacancy number) to a zero-rigged skeleton.
pub(crate) fn extend_with_riggings(base: &RiggedConfig, out: &mut BTreeSet<RiggedConfig>) {
    let ty = base.ty();
    // Group occupied lengths as (node, length, multiplicity, vacancy).
    let mut groups: Vec<(usize, i64, usize, i64)> = Vec::new();
    for a in ty.nodes() {
        let strings = base.strings(a);
        let mut by_len: BTreeMap<i64, usize> = BTreeMap::new();
        for &(len, _) in strings {
            *by_len.entry(len).or_insert(0) += 1;
        }
        for (len, mult) in by_len {
            let p = base.vacancy(a, len);
            if p < 0 {
                return;
            }
            groups.push((a as usize - 1, len, mult, p));
        }
    }
    let choices_per_group: Vec<Vec<Vec<i64>>> = groups
        .iter()
        .map(|&(_, _, mult, p)| {
            (0..=p)
                .rev()
                .combinations_with_replacement(mult)
                .collect::<Vec<_>>()
        })
        .collect();
    for assignment in choices_per_group
        .iter()
        .map(|c| c.iter())
        .multi_cartesian_product()
    {
        let mut nu: Vec<Vec<(i64, i64)>> = vec![Vec::new(); base.nu().len()];
        for ((node, len, _, _), rigs) in groups.iter().zip(&assignment) {
            for &rig in rigs.iter() {
                nu[*node].push((*len, rig));
            }
        }
        out.insert(RiggedConfig::from_parts(base.shape().clone(), nu));
    }
    if groups.is_empty() {
        out.insert(base.clone());
    }
}

/// Closed-form highest weight family of the single-row shapes: for each
/// `k = 0, ..., s` two rows of length `s - k` on the first node and one on
/// the second, all riggings zero.
pub fn hw_b1_family(s: u8) -> Vec<RiggedConfig> {
    let shape = TensorShape::new(CartanType::G2, vec![(1, s)]);
    (0..=s)
        .map(|k| {
            let n = (s - k) as i64;
            let rows = if n == 0 {
                vec![vec![], vec![]]
            } else {
                vec![vec![n, n], vec![n]]
            };
            let rigs: Vec<Vec<i64>> = rows.iter().map(|r| vec![0; r.len()]).collect();
            RiggedConfig::from_rows(shape.clone(), &rows, &rigs)
        })
        .collect()
}

/// Parameter quadruple of the two-row highest weight family.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct TwoRowParams {
    pub k1: i64,
    pub k2: i64,
    pub k3: i64,
    pub k4: i64,
}

impl TwoRowParams {
    pub fn all(s: u8) -> Vec<TwoRowParams> {
        let s = s as i64;
        let mut out = Vec::new();
        for k1 in 0..=s {
            for k2 in 0..=(s - k1) {
                for k3 in 0..=(k2 / 2) {
                    for k4 in 0..=(k2 - 2 * k3) {
                        out.push(TwoRowParams { k1, k2, k3, k4 });
                    }
                }
            }
        }
        out
    }

    /// The classical weight of the corresponding component.
    pub fn lambda(&self, s: u8) -> Weight {
        Weight::new(
            CartanType::G2,
            &[
                self.k2 - 2 * self.k3,
                s as i64 - self.k1 - self.k2 + self.k3,
            ],
        )
    }

    pub fn cocharge(&self) -> i64 {
        3 * self.k1 + self.k2 + self.k3 + self.k4
    }

    /// The highest weight rigged configuration with these parameters.
    pub fn rc(&self, s: u8) -> RiggedConfig {
        let shape = TensorShape::new(CartanType::G2, vec![(2, s)]);
        let TwoRowParams { k1, k2, k3, k4 } = *self;
        let mut nu1: Vec<(i64, i64)> = Vec::new();
        if k1 + k2 + k3 > 0 {
            nu1.push((k1 + k2 + k3, k4));
        }
        if k1 > 0 {
            nu1.push((k1, 0));
            nu1.push((k1, 0));
        }
        let mut nu2: Vec<(i64, i64)> = Vec::new();
        if k1 + k2 > 0 {
            nu2.push((k1 + k2, 0));
        }
        if k1 > 0 {
            nu2.push((k1, 0));
        }
        RiggedConfig::from_parts(shape, vec![nu1, nu2])
    }
}

/// Closed-form highest weight family of the two-row shapes.
pub fn hw_b2_family(s: u8) -> Vec<RiggedConfig> {
    TwoRowParams::all(s).iter().map(|k| k.rc(s)).collect()
}

/// The full rigged configuration crystal of a single-row shape (classical
/// closure of the highest weight family), cached per width.
pub fn rc_b1_crystal(s: u8) -> Arc<BTreeSet<RiggedConfig>> {
    static CACHE: Lazy<Mutex<BTreeMap<u8, Arc<BTreeSet<RiggedConfig>>>>> =
        Lazy::new(|| Mutex::new(BTreeMap::new()));
    let mut cache = CACHE.lock().unwrap();
    cache
        .entry(s)
        .or_insert_with(|| Arc::new(crystal::generate_closure(hw_b1_family(s), &[1, 2])))
        .clone()
}

impl RiggedConfig {
    fn assert_single_row_shape(&self) -> u8 {
        let factors = self.shape.factors();
        assert!(
            self.ty() == CartanType::G2 && factors.len() == 1 && factors[0].0 == 1,
            "zero-arrows are defined on single-factor single-row shapes"
        );
        factors[0].1
    }

    /// Experimental zero-arrow (lowering): remove one box from each of the
    /// two rows of the first partition and the single row of the second,
    /// keeping colabels fixed.  Annihilates unless the first partition has
    /// exactly two rows and the second exactly one, every vanishing string
    /// has colabel zero, and the result lies in the crystal.
    pub fn affine_f0(&self) -> Option<RiggedConfig> {
        let s = self.assert_single_row_shape();
        if self.nu[0].len() != 2 || self.nu[1].len() != 1 {
            return None;
        }
        let mut nu = Vec::with_capacity(2);
        for (node, strings) in self.nu.iter().enumerate() {
            let a = node as u8 + 1;
            let mut rows = Vec::new();
            for &(len, rig) in strings {
                let colabel = self.vacancy(a, len) - rig;
                if len == 1 {
                    if colabel != 0 {
                        return None;
                    }
                } else {
                    rows.push((len - 1, colabel));
                }
            }
            nu.push(rows);
        }
        self.finish_zero_arrow(s, nu)
    }

    /// Experimental zero-arrow (raising): add one box to the two longest
    /// rows of the first partition and the longest row of the second,
    /// creating singular strings of length zero as needed, keeping colabels
    /// fixed.  Annihilates unless the result lies in the crystal.
    pub fn affine_e0(&self) -> Option<RiggedConfig> {
        let s = self.assert_single_row_shape();
        if self.nu[0].len() > 2 || self.nu[1].len() > 1 {
            return None;
        }
        let mut nu = Vec::with_capacity(2);
        for (node, strings) in self.nu.iter().enumerate() {
            let a = node as u8 + 1;
            let grow = if node == 0 { 2 } else { 1 };
            let mut rows: Vec<(i64, i64)> = strings
                .iter()
                .map(|&(len, rig)| (len, self.vacancy(a, len) - rig))
                .collect();
            // Created strings of length zero are singular: colabel zero.
            while rows.len() < grow {
                rows.push((0, 0));
            }
            nu.push(
                rows.into_iter()
                    .map(|(len, colabel)| (len + 1, colabel))
                    .collect(),
            );
        }
        self.finish_zero_arrow(s, nu)
    }

    /// Convert colabel bookkeeping back to riggings and keep the result only
    /// if it is an element of the crystal.
    fn finish_zero_arrow(&self, s: u8, colabel_rows: Vec<Vec<(i64, i64)>>) -> Option<RiggedConfig> {
        let skeleton: Vec<Vec<(i64, i64)>> = colabel_rows
            .iter()
            .map(|rows| rows.iter().map(|&(len, _)| (len, 0)).collect())
            .collect();
        let probe = RiggedConfig::from_parts(self.shape.clone(), skeleton);
        let nu = colabel_rows
            .into_iter()
            .enumerate()
            .map(|(node, rows)| {
                let a = node as u8 + 1;
                rows.into_iter()
                    .map(|(len, colabel)| (len, probe.vacancy(a, len) - colabel))
                    .collect()
            })
            .collect();
        let out = RiggedConfig::from_parts(self.shape.clone(), nu);
        rc_b1_crystal(s).contains(&out).then_some(out)
    }
}
