//! Tree-based enumeration of classically highest weight rigged
//! configurations: the simply laced tree algorithm for D4 and its
//! orbit-symmetric restriction, which enumerates the configurations of the
//! twisted type through the ambient model.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use serde_json::{json, Value};

use crate::cartan::{simple_root, CartanType, Weight};
use crate::rc::{extend_with_riggings, RiggedConfig, TensorShape};

/// Multiplicities of the ambient rectangles, keyed by `(node, width)`.
pub type LevelData = BTreeMap<(u8, u8), i64>;

#[derive(Clone, Debug)]
pub struct KleberNode {
    /// Running weight; final value after construction completes.
    pub weight: Weight,
    pub parent: Option<usize>,
    pub depth: usize,
    /// Weight drop from the parent at creation time.  Both endpoints gain
    /// the same later additions, so the drop never changes.
    pub drop: Option<Weight>,
}

#[derive(Clone, Debug)]
pub struct KleberTree {
    pub ty: CartanType,
    pub levels: LevelData,
    pub nodes: Vec<KleberNode>,
}

/// Nonnegative integral coordinates of a weight in the simple root basis,
/// or `None` if it lies outside the positive root cone.
fn positive_root_coords(w: &Weight) -> Option<Vec<i64>> {
    let x2 = w.root_coefficients_x2();
    if x2
        .iter()
        .take(w.cartan_type().rank())
        .all(|&c| c >= 0 && c % 2 == 0)
    {
        Some(
            x2.iter()
                .take(w.cartan_type().rank())
                .map(|&c| c / 2)
                .collect(),
        )
    } else {
        None
    }
}

fn sigma_symmetric(w: &Weight) -> bool {
    w.get(1) == w.get(3) && w.get(1) == w.get(4)
}

/// Grow the tree for the given rectangle multiplicities.  With
/// `orbit_symmetric` set, only children whose weights are fixed by the
/// order-three arm symmetry are created.
pub fn kleber_tree(ty: CartanType, levels: &LevelData, orbit_symmetric: bool) -> KleberTree {
    assert_eq!(ty, CartanType::D4, "the tree grows in the ambient type");
    let max_width = levels.keys().map(|&(_, s)| s).max().unwrap_or(0);
    let mut nodes = vec![KleberNode {
        weight: Weight::zero(ty),
        parent: None,
        depth: 0,
        drop: None,
    }];

    let mut level = 1u8;
    loop {
        // Every node absorbs the weight of the columns still unprocessed.
        let mut addition = Weight::zero(ty);
        for (&(a, s), &count) in levels {
            if s >= level {
                addition = addition + Weight::fundamental(ty, a) * count;
            }
        }
        if !addition.is_zero() {
            for node in &mut nodes {
                node.weight = node.weight + addition;
            }
        }

        let mut added = false;
        for idx in 0..nodes.len() {
            if nodes[idx].depth != level as usize - 1 {
                continue;
            }
            let x = nodes[idx].weight;
            let parent_drop = nodes[idx].drop;
            for (y, drop) in children(&x) {
                if let Some(pd) = parent_drop {
                    // Drops must weakly decrease along the branch.
                    if positive_root_coords(&(pd - drop)).is_none() {
                        continue;
                    }
                }
                if orbit_symmetric && !sigma_symmetric(&y) {
                    continue;
                }
                nodes.push(KleberNode {
                    weight: y,
                    parent: Some(idx),
                    depth: level as usize,
                    drop: Some(drop),
                });
                added = true;
            }
        }
        if !added && level >= max_width {
            break;
        }
        level += 1;
    }
    KleberTree {
        ty,
        levels: levels.clone(),
        nodes,
    }
}

/// Dominant weights strictly below `x` in the positive root order,
/// together with the drop `x - y`.
fn children(x: &Weight) -> Vec<(Weight, Weight)> {
    let ty = x.cartan_type();
    let rank = ty.rank();
    let bounds: Vec<i64> = x
        .root_coefficients_x2()
        .iter()
        .take(rank)
        .map(|&c| c / 2)
        .collect();
    let mut out = Vec::new();
    let mut c = vec![0i64; rank];
    'outer: loop {
        if c.iter().any(|&v| v > 0) {
            let mut y = *x;
            for (node, &coeff) in c.iter().enumerate() {
                y = y - simple_root(ty, node as u8 + 1) * coeff;
            }
            if y.is_dominant() {
                out.push((y, *x - y));
            }
        }
        let mut node = 0;
        loop {
            if node == rank {
                break 'outer;
            }
            c[node] += 1;
            if c[node] <= bounds[node] {
                break;
            }
            c[node] = 0;
            node += 1;
        }
    }
    out
}

impl KleberTree {
    /// Path of final weights from the root to `idx`.
    fn path(&self, idx: usize) -> Vec<Weight> {
        let mut rev = Vec::new();
        let mut cur = Some(idx);
        while let Some(i) = cur {
            rev.push(self.nodes[i].weight);
            cur = self.nodes[i].parent;
        }
        rev.reverse();
        rev
    }

    /// String multiplicities `m_i^{(a)}` and vacancy numbers read off a
    /// node's path: second differences of the weights, paired with the
    /// unprocessed column corrections.
    pub fn node_data(&self, idx: usize) -> NodeData {
        let ty = self.ty;
        let rank = ty.rank();
        let path = self.path(idx);
        let depth = path.len() - 1;
        let at = |k: usize| path[k.min(depth)];
        let mut strings: Vec<(u8, i64, i64, i64)> = Vec::new();
        for i in 1..=depth {
            let diff = at(i - 1) - (at(i) * 2) + at(i + 1);
            let coords = positive_root_coords(&diff)
                .expect("second differences lie in the positive root cone");
            for a in 1..=rank as u8 {
                let m = coords[a as usize - 1];
                if m > 0 {
                    let mut p = at(i).get(a);
                    for (&(b, s), &count) in &self.levels {
                        if b == a && (s as usize) > i {
                            p -= (s as i64 - i as i64) * count;
                        }
                    }
                    strings.push((a, i as i64, m, p));
                }
            }
        }
        NodeData {
            weight: self.nodes[idx].weight,
            strings,
        }
    }

    pub fn to_json(&self) -> Value {
        let nodes: Vec<Value> = self
            .nodes
            .iter()
            .enumerate()
            .map(|(i, n)| {
                json!({
                    "id": i,
                    "weight": (1..=self.ty.rank() as u8)
                        .map(|a| n.weight.get(a))
                        .collect::<Vec<_>>(),
                    "depth": n.depth,
                    "parent": n.parent.map(Value::from).unwrap_or(Value::Null),
                })
            })
            .collect();
        json!({
            "type": self.ty.to_string(),
            "levels": self
                .levels
                .iter()
                .map(|(&(a, s), &c)| json!({"node": a, "width": s, "count": c}))
                .collect::<Vec<_>>(),
            "nodes": nodes,
        })
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph kleber {\n  rankdir=TB;\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let coeffs: Vec<String> = (1..=self.ty.rank() as u8)
                .map(|a| n.weight.get(a).to_string())
                .collect();
            out.push_str(&format!("  n{i} [label=\"({})\"];\n", coeffs.join(",")));
        }
        for (i, n) in self.nodes.iter().enumerate() {
            if let Some(p) = n.parent {
                out.push_str(&format!("  n{p} -> n{i};\n"));
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Highest weight data extracted from one tree node: the final weight and
/// the strings as `(node, length, multiplicity, vacancy)`.
pub struct NodeData {
    pub weight: Weight,
    pub strings: Vec<(u8, i64, i64, i64)>,
}

/// Ambient rectangle multiplicities of a shape: a single-row factor feeds
/// the central node, a two-row factor feeds the three-arm orbit.
pub fn ambient_levels(shape: &TensorShape) -> LevelData {
    assert_eq!(shape.ty(), CartanType::G2);
    let mut levels = LevelData::new();
    for &(r, s) in shape.factors() {
        match r {
            1 => *levels.entry((2, s)).or_insert(0) += 1,
            2 => {
                for a in [1, 3, 4] {
                    *levels.entry((a, s)).or_insert(0) += 1;
                }
            }
            _ => panic!("unsupported factor ({r},{s})"),
        }
    }
    levels
}

/// Enumerate the highest weight rigged configurations of a shape through
/// the orbit-symmetric ambient tree.
pub fn virtual_hw_rcs(shape: &TensorShape) -> BTreeSet<RiggedConfig> {
    let tree = kleber_tree(CartanType::D4, &ambient_levels(shape), true);
    let mut out = BTreeSet::new();
    for idx in 0..tree.nodes.len() {
        let data = tree.node_data(idx);
        // Arm symmetry of the string data.
        let by_node = |a: u8| -> Vec<(i64, i64, i64)> {
            data.strings
                .iter()
                .filter(|&&(b, _, _, _)| b == a)
                .map(|&(_, i, m, p)| (i, m, p))
                .collect()
        };
        assert_eq!(by_node(1), by_node(3), "arm symmetry at node {idx}");
        assert_eq!(by_node(1), by_node(4), "arm symmetry at node {idx}");
        assert!(sigma_symmetric(&data.weight));

        // Fold: the central node carries the first partition, the orbit the
        // second.
        let mut nu: Vec<Vec<(i64, i64)>> = vec![Vec::new(), Vec::new()];
        for (i, m, _) in by_node(2) {
            for _ in 0..m {
                nu[0].push((i, 0));
            }
        }
        for (i, m, _) in by_node(1) {
            for _ in 0..m {
                nu[1].push((i, 0));
            }
        }
        let base = RiggedConfig::from_parts(shape.clone(), nu);

        // The folded vacancy numbers must agree with the ambient ones.
        for &(a, i, _, p) in &data.strings {
            let g2_node = if a == 2 { 1 } else { 2 };
            assert_eq!(base.vacancy(g2_node, i), p, "vacancy fold at node {idx}");
        }
        let lambda = Weight::new(CartanType::G2, &[data.weight.get(2), data.weight.get(1)]);
        assert_eq!(base.weight(), lambda, "weight fold at node {idx}");

        extend_with_riggings(&base, &mut out);
    }
    out
}
