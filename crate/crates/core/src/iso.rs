//! Groupoid isomorphisms by backtracking with product propagation.
//!
//! Elements of the source are assigned in increasing order and candidates are
//! tried in increasing order. Every assignment forces `φ(x·y) = φ(x)·φ(y)` for
//! assigned `x, y`, which is propagated to a fixpoint before branching again.
//! Because each branch point is the least unassigned element, maps are
//! produced in lexicographic order of their image arrays.

use std::ops::ControlFlow;

use crate::perm::Permutation;
use crate::table::CayleyTable;

/// Isomorphism-invariant description of one element.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct ElementSignature {
    idempotent: bool,
    row_image_size: usize,
    column_image_size: usize,
    /// Cycle type of the column map when it is a bijection.
    column_cycle_type: Option<Vec<usize>>,
    row_cycle_type: Option<Vec<usize>>,
    /// How often the element occurs as a product.
    occurrences: usize,
    /// Number of `y` with `x·y = y`.
    left_fixed: usize,
}

fn distinct(values: impl Iterator<Item = usize>, n: usize) -> usize {
    let mut seen = vec![false; n];
    values
        .filter(|&v| !std::mem::replace(&mut seen[v], true))
        .count()
}

fn cycle_type_of(map: &[usize]) -> Option<Vec<usize>> {
    Permutation::from_images(map.to_vec())
        .ok()
        .map(|p| p.cycle_type())
}

fn signatures(t: &CayleyTable) -> Vec<ElementSignature> {
    let n = t.order();
    let mut occurrences = vec![0; n];
    for &v in t.cells() {
        occurrences[v] += 1;
    }
    (0..n)
        .map(|x| {
            let row = t.row_map(x);
            let col = t.column_map(x);
            ElementSignature {
                idempotent: t.get(x, x) == x,
                row_image_size: distinct(row.iter().copied(), n),
                column_image_size: distinct(col.iter().copied(), n),
                column_cycle_type: cycle_type_of(&col),
                row_cycle_type: cycle_type_of(&row),
                occurrences: occurrences[x],
                left_fixed: (0..n).filter(|&y| t.get(x, y) == y).count(),
            }
        })
        .collect()
}

const UNSET: usize = usize::MAX;

struct Matcher<'a> {
    a: &'a CayleyTable,
    b: &'a CayleyTable,
    n: usize,
    candidates: Vec<Vec<usize>>,
    forward: Vec<usize>,
    backward: Vec<usize>,
    trail: Vec<usize>,
}

impl<'a> Matcher<'a> {
    fn new(a: &'a CayleyTable, b: &'a CayleyTable) -> Option<Self> {
        let n = a.order();
        if n != b.order() {
            return None;
        }
        let sa = signatures(a);
        let sb = signatures(b);
        let mut ka = sa.clone();
        let mut kb = sb.clone();
        ka.sort();
        kb.sort();
        if ka != kb {
            return None;
        }
        let candidates = sa
            .iter()
            .map(|s| (0..n).filter(|&y| sb[y] == *s).collect())
            .collect();
        Some(Matcher {
            a,
            b,
            n,
            candidates,
            forward: vec![UNSET; n],
            backward: vec![UNSET; n],
            trail: Vec::new(),
        })
    }

    fn assign(&mut self, x: usize, y: usize) -> bool {
        if self.forward[x] != UNSET {
            return self.forward[x] == y;
        }
        if self.backward[y] != UNSET || !self.candidates[x].contains(&y) {
            return false;
        }
        self.forward[x] = y;
        self.backward[y] = x;
        self.trail.push(x);
        true
    }

    /// Assigns `x ↦ y` and propagates products; false on conflict.
    fn assign_and_propagate(&mut self, x: usize, y: usize) -> bool {
        if !self.assign(x, y) {
            return false;
        }
        let mut queue = vec![x];
        while let Some(u) = queue.pop() {
            // products of u with every assigned element, both sides
            for v in 0..self.n {
                if self.forward[v] == UNSET {
                    continue;
                }
                for (p, q) in [(u, v), (v, u)] {
                    let src = self.a.get(p, q);
                    let img = self.b.get(self.forward[p], self.forward[q]);
                    let was_unset = self.forward[src] == UNSET;
                    if !self.assign(src, img) {
                        return false;
                    }
                    if was_unset {
                        queue.push(src);
                    }
                }
            }
        }
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let x = self.trail.pop().expect("trail non-empty");
            self.backward[self.forward[x]] = UNSET;
            self.forward[x] = UNSET;
        }
    }

    fn search<F>(&mut self, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(Permutation) -> ControlFlow<()>,
    {
        let Some(x) = (0..self.n).find(|&x| self.forward[x] == UNSET) else {
            return visit(Permutation::from_images_unchecked(self.forward.clone()));
        };
        for i in 0..self.candidates[x].len() {
            let y = self.candidates[x][i];
            if self.backward[y] != UNSET {
                continue;
            }
            let mark = self.trail.len();
            if self.assign_and_propagate(x, y) {
                self.search(visit)?;
            }
            self.undo_to(mark);
        }
        ControlFlow::Continue(())
    }
}

/// Visits every isomorphism `a → b` in lexicographic order of image arrays,
/// stopping early when `visit` breaks.
pub fn for_each_isomorphism<F>(a: &CayleyTable, b: &CayleyTable, mut visit: F)
where
    F: FnMut(Permutation) -> ControlFlow<()>,
{
    if let Some(mut m) = Matcher::new(a, b) {
        let _ = m.search(&mut visit);
    }
}

/// Lexicographically least `φ` with `φ(x·y) = φ(x)·φ(y)`, or `None`.
pub fn find_isomorphism(a: &CayleyTable, b: &CayleyTable) -> Option<Permutation> {
    let mut found = None;
    for_each_isomorphism(a, b, |phi| {
        found = Some(phi);
        ControlFlow::Break(())
    });
    found
}

/// All automorphisms, in lexicographic order (identity first).
pub fn automorphisms(t: &CayleyTable) -> Vec<Permutation> {
    let mut out = Vec::new();
    for_each_isomorphism(t, t, |phi| {
        out.push(phi);
        ControlFlow::Continue(())
    });
    out
}

/// Whether `phi` is an isomorphism from `a` to `b`.
pub fn is_isomorphism(a: &CayleyTable, b: &CayleyTable, phi: &Permutation) -> bool {
    let n = a.order();
    n == b.order()
        && phi.degree() == n
        && (0..n)
            .all(|x| (0..n).all(|y| phi.apply(a.get(x, y)) == b.get(phi.apply(x), phi.apply(y))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dk(n: usize) -> CayleyTable {
        CayleyTable::from_fn(n, |r, s| (2 * s + n - r) % n).unwrap()
    }

    fn all_permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in all_permutations(n - 1) {
            for i in 0..n {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn self_isomorphism_is_identity() {
        let t = dk(7);
        assert_eq!(find_isomorphism(&t, &t), Some(Permutation::identity(7)));
    }

    #[test]
    fn recovers_relabelling() {
        let t = dk(5);
        let sigma = Permutation::from_cycles(5, &[&[0, 1]]).unwrap();
        let u = t.relabel(&sigma);
        let phi = find_isomorphism(&t, &u).unwrap();
        assert!(is_isomorphism(&t, &u, &phi));
    }

    #[test]
    fn different_orders_are_not_isomorphic() {
        assert_eq!(find_isomorphism(&dk(3), &dk(5)), None);
    }

    #[test]
    fn automorphism_counts_match_brute_force() {
        for n in [1, 3, 5, 7] {
            let t = dk(n);
            let brute: Vec<Permutation> = all_permutations(n)
                .into_iter()
                .map(|p| Permutation::from_images(p).unwrap())
                .filter(|p| is_isomorphism(&t, &t, p))
                .collect();
            assert_eq!(automorphisms(&t), brute, "n = {n}");
        }
        assert_eq!(automorphisms(&dk(5)).len(), 20);
        assert_eq!(automorphisms(&dk(7)).len(), 42);
    }

    #[test]
    fn affine_maps_are_the_automorphisms_of_dk5() {
        let t = dk(5);
        let mut affine = Vec::new();
        for a in 1..5 {
            for b in 0..5 {
                affine.push(
                    Permutation::from_images((0..5).map(|x| (a * x + b) % 5).collect()).unwrap(),
                );
            }
        }
        affine.sort();
        assert_eq!(automorphisms(&t), affine);
    }

    #[test]
    fn first_isomorphism_is_lexicographically_least() {
        let t = dk(5);
        let sigma = Permutation::from_images(vec![3, 1, 4, 0, 2]).unwrap();
        let u = t.relabel(&sigma);
        let least = all_permutations(5)
            .into_iter()
            .map(|p| Permutation::from_images(p).unwrap())
            .find(|p| is_isomorphism(&t, &u, p))
            .unwrap();
        assert_eq!(find_isomorphism(&t, &u), Some(least));
    }
}
