//! Abstract crystal toolkit: the element contract, the tensor-product rule,
//! highest-weight search, closure generation, and graph export.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde_json::{json, Value};

use crate::cartan::Weight;

/// An element of a normal crystal.  Operators return `None` on annihilation;
/// passing an index the model does not define is a programming error and
/// panics.
pub trait CrystalElement: Clone + Eq + Ord {
    fn e(&self, a: u8) -> Option<Self>;
    fn f(&self, a: u8) -> Option<Self>;
    fn weight(&self) -> Weight;

    /// Number of times `e_a` applies.
    fn eps(&self, a: u8) -> i64 {
        let mut n = 0;
        let mut cur = self.clone();
        while let Some(next) = cur.e(a) {
            n += 1;
            cur = next;
        }
        n
    }

    /// Number of times `f_a` applies.
    fn phi(&self, a: u8) -> i64 {
        let mut n = 0;
        let mut cur = self.clone();
        while let Some(next) = cur.f(a) {
            n += 1;
            cur = next;
        }
        n
    }
}

/// In a tensor product written left to right, `e_a` and `f_a` act on a single
/// factor selected from the per-factor statistics `(eps_a, phi_a)`.  The
/// selection below is the one under which `eps`/`phi` of the product satisfy
/// the usual max-formulas; see [`tensor_eps`] and [`tensor_phi`].
///
/// Returns the index of the factor acted on, or `None` when the operator
/// annihilates the product.
pub fn tensor_e_position(stats: &[(i64, i64)]) -> Option<usize> {
    let n = stats.len();
    if n == 0 || tensor_eps(stats) == 0 {
        return None;
    }
    let prefix = prefix_eps(stats);
    let mut k = n - 1;
    while k > 0 && prefix[k - 1] > stats[k].1 {
        k -= 1;
    }
    Some(k)
}

/// Factor index on which `f_a` acts; see [`tensor_e_position`].
pub fn tensor_f_position(stats: &[(i64, i64)]) -> Option<usize> {
    let n = stats.len();
    if n == 0 || tensor_phi(stats) == 0 {
        return None;
    }
    let prefix = prefix_eps(stats);
    let mut k = n - 1;
    while k > 0 && prefix[k - 1] >= stats[k].1 {
        k -= 1;
    }
    Some(k)
}

fn prefix_eps(stats: &[(i64, i64)]) -> Vec<i64> {
    let mut out = Vec::with_capacity(stats.len());
    let mut eps = 0;
    for (k, &(e, p)) in stats.iter().enumerate() {
        eps = if k == 0 { e } else { e.max(eps - (p - e)) };
        out.push(eps);
    }
    out
}

/// `eps_a` of the full product: fold of `max(eps_v, eps_u - wt_h(v))`.
pub fn tensor_eps(stats: &[(i64, i64)]) -> i64 {
    *prefix_eps(stats).last().unwrap_or(&0)
}

/// `phi_a` of the full product: fold of `max(phi_u, phi_v + wt_h(u))` with
/// the accumulated prefix on the left.
pub fn tensor_phi(stats: &[(i64, i64)]) -> i64 {
    let mut it = stats.iter();
    let Some(&(e0, p0)) = it.next() else {
        return 0;
    };
    let mut phi = p0;
    let mut wt_h = p0 - e0;
    for &(e, p) in it {
        phi = phi.max(p + wt_h);
        wt_h += p - e;
    }
    phi
}

/// Repeatedly apply raising operators, smallest index first, until none
/// applies.  Returns the highest weight element and the sequence of indices
/// applied (in application order).
pub fn to_highest_weight<T: CrystalElement>(x: &T, indices: &[u8]) -> (T, Vec<u8>) {
    let mut cur = x.clone();
    let mut path = Vec::new();
    'outer: loop {
        for &a in indices {
            if let Some(next) = cur.e(a) {
                cur = next;
                path.push(a);
                continue 'outer;
            }
        }
        return (cur, path);
    }
}

/// Apply a sequence of lowering operators; panics if any annihilates.
pub fn apply_f_string<T: CrystalElement>(x: &T, path: &[u8]) -> T {
    let mut cur = x.clone();
    for &a in path {
        cur = cur.f(a).expect("f-string step annihilated");
    }
    cur
}

/// Closure of the seeds under `e_a` and `f_a` for the given indices.
pub fn generate_closure<T: CrystalElement>(
    seeds: impl IntoIterator<Item = T>,
    indices: &[u8],
) -> BTreeSet<T> {
    generate_closure_with(
        seeds,
        indices,
        |x, a, dir| if dir { x.f(a) } else { x.e(a) },
    )
}

/// Closure under caller-supplied operators; `dir` is false for raising and
/// true for lowering.
pub fn generate_closure_with<T: Clone + Ord>(
    seeds: impl IntoIterator<Item = T>,
    indices: &[u8],
    op: impl Fn(&T, u8, bool) -> Option<T>,
) -> BTreeSet<T> {
    let mut seen: BTreeSet<T> = seeds.into_iter().collect();
    let mut queue: VecDeque<T> = seen.iter().cloned().collect();
    while let Some(x) = queue.pop_front() {
        for &a in indices {
            for dir in [false, true] {
                if let Some(y) = op(&x, a, dir) {
                    if seen.insert(y.clone()) {
                        queue.push_back(y);
                    }
                }
            }
        }
    }
    seen
}

/// A finite crystal graph with index-labelled edges, in a deterministic node
/// order.
#[derive(Clone, Debug)]
pub struct CrystalGraph<T> {
    pub nodes: Vec<T>,
    pub edges: Vec<GraphEdge>,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct GraphEdge {
    pub from: usize,
    pub to: usize,
    pub index: u8,
    pub conjectural: bool,
}

impl<T: Clone + Ord> CrystalGraph<T> {
    /// Build the graph on the given node set with `f`-edges supplied by a
    /// closure; edges with indices in `conjectural` are flagged.
    pub fn build(
        nodes: BTreeSet<T>,
        indices: &[u8],
        f: impl Fn(&T, u8) -> Option<T>,
        conjectural: &[u8],
    ) -> Self {
        let nodes: Vec<T> = nodes.into_iter().collect();
        let pos: BTreeMap<&T, usize> = nodes.iter().enumerate().map(|(i, x)| (x, i)).collect();
        let mut edges = Vec::new();
        for (i, x) in nodes.iter().enumerate() {
            for &a in indices {
                if let Some(y) = f(x, a) {
                    let j = *pos.get(&y).expect("edge target escapes node set");
                    edges.push(GraphEdge {
                        from: i,
                        to: j,
                        index: a,
                        conjectural: conjectural.contains(&a),
                    });
                }
            }
        }
        edges.sort();
        CrystalGraph { nodes, edges }
    }

    pub fn to_dot(&self, label: impl Fn(&T) -> String) -> String {
        let mut out = String::from("digraph crystal {\n  rankdir=TB;\n");
        for (i, x) in self.nodes.iter().enumerate() {
            out.push_str(&format!("  n{i} [label=\"{}\"];\n", escape(&label(x))));
        }
        for e in &self.edges {
            let extra = if e.conjectural {
                ", style=dashed, conjectural=\"true\""
            } else {
                ""
            };
            out.push_str(&format!(
                "  n{} -> n{} [label=\"{}\"{extra}];\n",
                e.from, e.to, e.index
            ));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self, label: impl Fn(&T) -> Value) -> Value {
        json!({
            "nodes": self.nodes.iter().map(&label).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|e| {
                json!({
                    "from": e.from,
                    "to": e.to,
                    "index": e.index.to_string(),
                    "conjectural": e.conjectural,
                })
            }).collect::<Vec<_>>(),
        })
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
