//! Edge decompositions of `K_n` and their correspondence with P-groupoids.
//!
//! A P-groupoid pairs up, at every vertex `y`, the edges `{x, y}` and
//! `{y, x·y}`. Following these pairings splits the edges of `K_n` into closed
//! trails; conversely any partition of the edges into closed trails defines
//! the pairing and hence the table. A colour class is a set of closed trails.
//! When every vertex of a class has degree 0 or 2 the class is a disjoint
//! union of simple cycles and the trail order carries no extra information.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::iso::{find_isomorphism, for_each_isomorphism};
use crate::perm::Permutation;
use crate::properties::is_p_groupoid;
use crate::table::CayleyTable;

/// An undirected edge with `u < v`.
pub type Edge = (usize, usize);

fn edge(a: usize, b: usize) -> Edge {
    (a.min(b), a.max(b))
}

/// A closed trail `v0 v1 … v(k-1)` using edges `{v_i, v_(i+1 mod k)}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Circuit(Vec<usize>);

impl Circuit {
    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Oriented edges in traversal order.
    pub fn steps(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let k = self.0.len();
        (0..k).map(move |i| (self.0[i], self.0[(i + 1) % k]))
    }

    /// True when no vertex repeats.
    pub fn is_simple(&self) -> bool {
        let mut v = self.0.clone();
        v.sort_unstable();
        v.windows(2).all(|w| w[0] != w[1])
    }

    /// Rotation and orientation whose first step is the lexicographically
    /// least oriented edge.
    fn canonical(&self) -> Circuit {
        let k = self.0.len();
        let mut best: Option<(usize, bool)> = None;
        let mut best_pair = (usize::MAX, usize::MAX);
        for i in 0..k {
            let fwd = (self.0[i], self.0[(i + 1) % k]);
            if fwd < best_pair {
                best_pair = fwd;
                best = Some((i, true));
            }
            let bwd = (self.0[(i + 1) % k], self.0[i]);
            if bwd < best_pair {
                best_pair = bwd;
                best = Some(((i + 1) % k, false));
            }
        }
        let Some((start, forward)) = best else {
            return self.clone();
        };
        let seq = (0..k)
            .map(|j| {
                if forward {
                    self.0[(start + j) % k]
                } else {
                    self.0[(start + k - j) % k]
                }
            })
            .collect();
        Circuit(seq)
    }
}

/// One colour class.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColorClass {
    circuits: Vec<Circuit>,
}

impl ColorClass {
    pub fn circuits(&self) -> &[Circuit] {
        &self.circuits
    }

    /// Sorted edge set.
    pub fn edges(&self) -> Vec<Edge> {
        let mut e: Vec<Edge> = self
            .circuits
            .iter()
            .flat_map(|c| c.steps().map(|(a, b)| edge(a, b)).collect::<Vec<_>>())
            .collect();
        e.sort_unstable();
        e
    }

    pub fn edge_count(&self) -> usize {
        self.circuits.iter().map(Circuit::len).sum()
    }

    /// Distinct vertices touched by the class.
    pub fn support(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.circuits.iter().flat_map(|c| c.0.clone()).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Every touched vertex has degree exactly 2.
    pub fn is_two_regular(&self) -> bool {
        self.circuits.iter().all(Circuit::is_simple) && {
            let mut all: Vec<usize> = self.circuits.iter().flat_map(|c| c.0.clone()).collect();
            let len = all.len();
            all.sort_unstable();
            all.dedup();
            all.len() == len
        }
    }

    /// Lengths of the closed trails.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        self.circuits.iter().map(Circuit::len).collect()
    }
}

/// A partition of the edges of `K_n` into colour classes of closed trails.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Decomposition {
    n: usize,
    classes: Vec<ColorClass>,
}

#[derive(Serialize, Deserialize)]
struct DecompositionJson {
    n: usize,
    classes: Vec<Vec<[usize; 2]>>,
}

impl Decomposition {
    /// Builds and validates a decomposition whose classes are given as lists
    /// of closed trails (vertex sequences).
    pub fn from_circuits(n: usize, classes: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        let classes = classes
            .into_iter()
            .map(|cs| ColorClass {
                circuits: cs.into_iter().map(Circuit).collect(),
            })
            .collect();
        let d = Decomposition { n, classes };
        d.validate()?;
        Ok(d)
    }

    /// Builds a decomposition from edge lists. A class in which every vertex
    /// has degree 0 or 2 may list its edges in any order and orientation;
    /// any other class must list oriented edges `[u, v]` in traversal order,
    /// each closed trail as a consecutive run.
    pub fn from_edge_lists(n: usize, classes: Vec<Vec<(usize, usize)>>) -> Result<Self> {
        let mut out = Vec::with_capacity(classes.len());
        for (ci, list) in classes.iter().enumerate() {
            if list.is_empty() {
                return Err(Error::InvalidDecomposition(format!("class {ci} is empty")));
            }
            for &(u, v) in list {
                if u >= n || v >= n {
                    return Err(Error::InvalidDecomposition(format!(
                        "edge [{u}, {v}] in class {ci} is outside 0..{n}"
                    )));
                }
                if u == v {
                    return Err(Error::InvalidDecomposition(format!(
                        "loop [{u}, {v}] in class {ci}"
                    )));
                }
            }
            let mut degree = vec![0usize; n];
            for &(u, v) in list {
                degree[u] += 1;
                degree[v] += 1;
            }
            let circuits = if degree.iter().all(|&d| d == 0 || d == 2) {
                cycles_of_two_regular(n, list)
            } else {
                chained_trails(list).ok_or_else(|| {
                    Error::InvalidDecomposition(format!(
                        "class {ci} is not 2-regular and its edges do not form closed trails in listed order"
                    ))
                })?
            };
            out.push(ColorClass {
                circuits: circuits.into_iter().map(Circuit).collect(),
            });
        }
        let d = Decomposition { n, classes: out };
        d.validate()?;
        Ok(d)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let parsed: DecompositionJson = serde_json::from_str(text)
            .map_err(|e| Error::InvalidDecomposition(format!("bad JSON: {e}")))?;
        let classes = parsed
            .classes
            .into_iter()
            .map(|c| c.into_iter().map(|[u, v]| (u, v)).collect())
            .collect();
        Self::from_edge_lists(parsed.n, classes)
    }

    /// JSON with each class as its oriented edges in traversal order.
    pub fn to_json(&self) -> serde_json::Value {
        let classes: Vec<Vec<[usize; 2]>> = self
            .classes
            .iter()
            .map(|c| {
                c.circuits
                    .iter()
                    .flat_map(|cc| cc.steps().map(|(a, b)| [a, b]).collect::<Vec<_>>())
                    .collect()
            })
            .collect();
        serde_json::json!({ "n": self.n, "classes": classes })
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n;
        if n == 0 {
            return Err(Error::InvalidDecomposition(
                "vertex count must be positive".into(),
            ));
        }
        let mut used = vec![false; n * n];
        let mut count = 0usize;
        for (ci, class) in self.classes.iter().enumerate() {
            if class.circuits.is_empty() {
                return Err(Error::InvalidDecomposition(format!("class {ci} is empty")));
            }
            for c in &class.circuits {
                if c.len() < 3 {
                    return Err(Error::InvalidDecomposition(format!(
                        "class {ci} has a closed trail of length {} (< 3)",
                        c.len()
                    )));
                }
                for (a, b) in c.steps() {
                    if a >= n || b >= n {
                        return Err(Error::InvalidDecomposition(format!(
                            "vertex out of range in class {ci}"
                        )));
                    }
                    if a == b {
                        return Err(Error::InvalidDecomposition(format!(
                            "loop at {a} in class {ci}"
                        )));
                    }
                    let (u, v) = edge(a, b);
                    if std::mem::replace(&mut used[u * n + v], true) {
                        return Err(Error::InvalidDecomposition(format!(
                            "edge {{{u}, {v}}} is used more than once"
                        )));
                    }
                    count += 1;
                }
            }
        }
        let total = n * (n - 1) / 2;
        if count != total {
            return Err(Error::InvalidDecomposition(format!(
                "classes cover {count} of the {total} edges of K_{n}"
            )));
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn classes(&self) -> &[ColorClass] {
        &self.classes
    }

    /// One class per closed trail, each trail in canonical rotation and
    /// orientation, classes sorted by their first edge.
    pub fn normalized(&self) -> Decomposition {
        let mut circuits: Vec<Circuit> = self
            .classes
            .iter()
            .flat_map(|c| c.circuits.iter().map(Circuit::canonical))
            .collect();
        circuits.sort_by(|a, b| (a.0[0], a.0[1]).cmp(&(b.0[0], b.0[1])));
        Decomposition {
            n: self.n,
            classes: circuits
                .into_iter()
                .map(|c| ColorClass { circuits: vec![c] })
                .collect(),
        }
    }

    /// Image under a vertex relabelling.
    pub fn relabel(&self, sigma: &Permutation) -> Decomposition {
        assert_eq!(sigma.degree(), self.n, "relabelling degree mismatch");
        Decomposition {
            n: self.n,
            classes: self
                .classes
                .iter()
                .map(|c| ColorClass {
                    circuits: c
                        .circuits
                        .iter()
                        .map(|cc| Circuit(cc.0.iter().map(|&v| sigma.apply(v)).collect()))
                        .collect(),
                })
                .collect(),
        }
    }

    /// Graphviz rendering, one subgraph per class.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph decomposition {\n  node [shape=circle];\n");
        for v in 0..self.n {
            let _ = writeln!(s, "  {v};");
        }
        for (ci, class) in self.classes.iter().enumerate() {
            let _ = writeln!(s, "  subgraph class_{ci} {{");
            let _ = writeln!(s, "    edge [color=\"{}\"];", palette(ci));
            for (u, v) in class.edges() {
                let _ = writeln!(s, "    {u} -- {v};");
            }
            s.push_str("  }\n");
        }
        s.push_str("}\n");
        s
    }
}

pub(crate) fn palette(i: usize) -> String {
    const NAMED: [&str; 10] = [
        "red",
        "blue",
        "darkgreen",
        "orange",
        "purple",
        "brown",
        "magenta",
        "cyan",
        "gold",
        "gray",
    ];
    match NAMED.get(i) {
        Some(c) => (*c).to_string(),
        None => format!("{:.3} 0.800 0.800", (i as f64 * 0.618_034) % 1.0),
    }
}

fn cycles_of_two_regular(n: usize, list: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in list {
        nbrs[u].push(v);
        nbrs[v].push(u);
    }
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] || nbrs[start].is_empty() {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut prev = start;
        let mut cur = nbrs[start][0].min(nbrs[start][1]);
        while cur != start {
            seen[cur] = true;
            cycle.push(cur);
            let next = if nbrs[cur][0] == prev {
                nbrs[cur][1]
            } else {
                nbrs[cur][0]
            };
            prev = cur;
            cur = next;
        }
        out.push(cycle);
    }
    out
}

/// Splits an oriented edge list into maximal chained runs; each run must
/// end where it started.
fn chained_trails(list: &[(usize, usize)]) -> Option<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut trail: Vec<usize> = Vec::new();
    for (j, &(a, b)) in list.iter().enumerate() {
        trail.push(a);
        let chains = list.get(j + 1).is_some_and(|&(c, _)| c == b);
        if !chains {
            if b != trail[0] {
                return None;
            }
            out.push(std::mem::take(&mut trail));
        }
    }
    Some(out)
}

/// The trail decomposition induced by a P-groupoid: `{x, y}` is followed by
/// `{y, x·y}`. Trails start at their least edge, oriented from its smaller
/// end, and classes come out sorted (already normalized).
pub fn decomposition_from_groupoid(t: &CayleyTable) -> Result<Decomposition> {
    let report = is_p_groupoid(t);
    if !report.is_p_groupoid.holds {
        return Err(Error::NotPGroupoid(format!(
            "axiom violated at {:?}",
            report.is_p_groupoid.witness.unwrap_or_default()
        )));
    }
    let n = t.order();
    let mut visited = vec![false; n * n];
    let mut classes = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if visited[u * n + v] {
                continue;
            }
            let mut seq = vec![u];
            let (mut a, mut b) = (u, v);
            loop {
                let (p, q) = edge(a, b);
                visited[p * n + q] = true;
                let c = t.get(a, b);
                if (b, c) == (u, v) {
                    break;
                }
                seq.push(b);
                a = b;
                b = c;
            }
            classes.push(ColorClass {
                circuits: vec![Circuit(seq)],
            });
        }
    }
    Ok(Decomposition { n, classes })
}

/// The P-groupoid of a decomposition: for `x ≠ y`, `x·y` is the vertex that
/// follows `y` after the edge `{x, y}` in its closed trail; `x·x = x`.
pub fn groupoid_from_decomposition(d: &Decomposition) -> Result<CayleyTable> {
    d.validate()?;
    let n = d.n;
    let mut cells: Vec<usize> = (0..n * n)
        .map(|i| if i / n == i % n { i / n } else { usize::MAX })
        .collect();
    for class in &d.classes {
        for c in &class.circuits {
            let k = c.len();
            for i in 0..k {
                let prev = c.0[(i + k - 1) % k];
                let cur = c.0[i];
                let next = c.0[(i + 1) % k];
                cells[prev * n + cur] = next;
                cells[next * n + cur] = prev;
            }
        }
    }
    debug_assert!(cells.iter().all(|&v| v < n));
    Ok(CayleyTable::from_cells_unchecked(n, cells))
}

/// Exactly `(n−1)/2` classes, each a single cycle through all `n` vertices.
pub fn is_hamiltonian(d: &Decomposition) -> bool {
    let n = d.n;
    n % 2 == 1
        && d.classes.len() == (n - 1) / 2
        && d.classes
            .iter()
            .all(|c| c.circuits.len() == 1 && c.circuits[0].len() == n && c.circuits[0].is_simple())
}

fn class_map(d: &Decomposition) -> BTreeMap<Edge, usize> {
    d.classes
        .iter()
        .enumerate()
        .flat_map(|(i, c)| c.edges().into_iter().map(move |e| (e, i)))
        .collect()
}

/// A vertex bijection carrying the closed trails of `a` onto those of `b`
/// (classes may be permuted). With `strict`, class `i` must map onto class
/// `i`. Found by isomorphism search on the induced P-groupoids.
pub fn decomposition_isomorphism(
    a: &Decomposition,
    b: &Decomposition,
    strict: bool,
) -> Option<Permutation> {
    if a.n != b.n || a.classes.len() != b.classes.len() && strict {
        return None;
    }
    let ta = groupoid_from_decomposition(a).ok()?;
    let tb = groupoid_from_decomposition(b).ok()?;
    if !strict {
        return find_isomorphism(&ta, &tb);
    }
    let classes_b = class_map(b);
    let mut found = None;
    for_each_isomorphism(&ta, &tb, |phi| {
        let keeps_classes = a.classes.iter().enumerate().all(|(i, c)| {
            c.edges()
                .iter()
                .all(|&(u, v)| classes_b.get(&edge(phi.apply(u), phi.apply(v))) == Some(&i))
        });
        if keeps_classes {
            found = Some(phi);
            std::ops::ControlFlow::Break(())
        } else {
            std::ops::ControlFlow::Continue(())
        }
    });
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::denes_keedwell;

    #[test]
    fn dk5_is_pentagon_and_pentagram() {
        let d = decomposition_from_groupoid(&denes_keedwell(5).unwrap()).unwrap();
        let cycles: Vec<Vec<usize>> = d
            .classes()
            .iter()
            .map(|c| c.circuits()[0].vertices().to_vec())
            .collect();
        assert_eq!(cycles, vec![vec![0, 1, 2, 3, 4], vec![0, 2, 4, 1, 3]]);
        assert!(is_hamiltonian(&d));
    }

    #[test]
    fn order_one_has_no_edges() {
        let t = CayleyTable::from_fn(1, |_, _| 0).unwrap();
        let d = decomposition_from_groupoid(&t).unwrap();
        assert!(d.classes().is_empty());
        assert_eq!(groupoid_from_decomposition(&d).unwrap(), t);
    }

    #[test]
    fn triangle_gives_order_three() {
        let d = Decomposition::from_edge_lists(3, vec![vec![(0, 1), (1, 2), (0, 2)]]).unwrap();
        assert_eq!(
            groupoid_from_decomposition(&d).unwrap(),
            denes_keedwell(3).unwrap()
        );
    }

    #[test]
    fn rejects_invalid_decompositions() {
        // missing edge
        assert!(Decomposition::from_edge_lists(3, vec![vec![(0, 1), (1, 2)]]).is_err());
        // even order: every vertex has odd degree
        let k4 = vec![vec![(0, 1), (1, 2), (2, 3), (3, 0)], vec![(0, 2), (1, 3)]];
        assert!(Decomposition::from_edge_lists(4, k4).is_err());
        // duplicated edge
        assert!(
            Decomposition::from_circuits(3, vec![vec![vec![0, 1, 2]], vec![vec![0, 1, 2]]])
                .is_err()
        );
        // out of range and loops
        assert!(Decomposition::from_edge_lists(3, vec![vec![(0, 1), (1, 5), (5, 0)]]).is_err());
        assert!(Decomposition::from_edge_lists(3, vec![vec![(0, 0)]]).is_err());
        // non-groupoid input
        let z3 = CayleyTable::from_fn(3, |x, y| (x + y) % 3).unwrap();
        assert!(matches!(
            decomposition_from_groupoid(&z3),
            Err(Error::NotPGroupoid(_))
        ));
    }

    #[test]
    fn json_round_trip() {
        let d = decomposition_from_groupoid(&denes_keedwell(7).unwrap()).unwrap();
        let text = d.to_json().to_string();
        assert_eq!(Decomposition::from_json(&text).unwrap(), d);
        assert!(text.starts_with("{\"n\":7,\"classes\":[[[0,1],[1,2]"));
    }

    #[test]
    fn sorted_edge_lists_accepted_for_two_regular_classes() {
        let d = Decomposition::from_json(
            r#"{"n":5,"classes":[[[0,1],[0,4],[1,2],[2,3],[3,4]],[[0,2],[0,3],[1,3],[1,4],[2,4]]]}"#,
        )
        .unwrap();
        assert_eq!(
            groupoid_from_decomposition(&d).unwrap(),
            denes_keedwell(5).unwrap()
        );
    }

    #[test]
    fn non_simple_trail_needs_traversal_order() {
        // 0-based trail 0-3-2-4-1-3-4-0 plus triangle 0-1-2
        let trail = vec![(0, 3), (3, 2), (2, 4), (4, 1), (1, 3), (3, 4), (4, 0)];
        let tri = vec![(0, 1), (1, 2), (2, 0)];
        let d = Decomposition::from_edge_lists(5, vec![tri.clone(), trail.clone()]).unwrap();
        let t = groupoid_from_decomposition(&d).unwrap();
        assert!(is_p_groupoid(&t).is_p_groupoid.holds);
        assert_eq!(decomposition_from_groupoid(&t).unwrap(), d.normalized());
        let mut scrambled = trail;
        scrambled.swap(1, 5);
        assert!(Decomposition::from_edge_lists(5, vec![tri, scrambled]).is_err());
    }

    #[test]
    fn strict_isomorphism_keeps_classes() {
        let d = decomposition_from_groupoid(&denes_keedwell(5).unwrap()).unwrap();
        // swapping the two classes: relabel x -> 2x maps pentagon to pentagram
        let sigma = Permutation::from_images((0..5).map(|x| 2 * x % 5).collect()).unwrap();
        let e = d.relabel(&sigma);
        assert!(decomposition_isomorphism(&d, &e, false).is_some());
        let phi = decomposition_isomorphism(&d, &e, true).unwrap();
        let classes_e = class_map(&e);
        for (i, c) in d.classes().iter().enumerate() {
            for (u, v) in c.edges() {
                assert_eq!(classes_e[&edge(phi.apply(u), phi.apply(v))], i);
            }
        }
    }

    #[test]
    fn dot_has_one_subgraph_per_class() {
        let d = decomposition_from_groupoid(&denes_keedwell(5).unwrap()).unwrap();
        let dot = d.to_dot();
        assert_eq!(dot.matches("subgraph").count(), 2);
        assert!(dot.contains("color=\"red\"") && dot.contains("color=\"blue\""));
        assert_eq!(dot.matches(" -- ").count(), 10);
    }
}
