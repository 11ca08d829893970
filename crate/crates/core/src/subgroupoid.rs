//! Closed subsets (subgroupoids) of a Cayley table.

use std::collections::BTreeSet;

use crate::table::CayleyTable;

/// Smallest superset of `seed` closed under the operation.
pub fn subgroupoid_closure(t: &CayleyTable, seed: &BTreeSet<usize>) -> BTreeSet<usize> {
    let n = t.order();
    let mut inside = vec![false; n];
    let mut members: Vec<usize> = Vec::new();
    for &s in seed {
        assert!(s < n, "element {s} out of range for order {n}");
        if !inside[s] {
            inside[s] = true;
            members.push(s);
        }
    }
    // every pair (i, j) with max(i, j) < done has already been multiplied
    let mut done = 0;
    while done < members.len() {
        let k = done;
        done += 1;
        for i in 0..=k {
            let (a, b) = (members[i], members[k]);
            for p in [t.get(a, b), t.get(b, a)] {
                if !inside[p] {
                    inside[p] = true;
                    members.push(p);
                }
            }
        }
    }
    members.into_iter().collect()
}

/// All non-empty subgroupoids, sorted by size and then lexicographically.
///
/// Seeds are every subset of size at most two; unions of found subgroupoids
/// are re-closed until nothing new appears.
pub fn enumerate_subgroupoids(t: &CayleyTable) -> Vec<BTreeSet<usize>> {
    let n = t.order();
    let mut found: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    for a in 0..n {
        for b in a..n {
            found.insert(subgroupoid_closure(t, &BTreeSet::from([a, b])));
        }
    }
    let mut frontier: Vec<BTreeSet<usize>> = found.iter().cloned().collect();
    while !frontier.is_empty() {
        let snapshot: Vec<BTreeSet<usize>> = found.iter().cloned().collect();
        let mut next = Vec::new();
        for f in &frontier {
            for g in &snapshot {
                if f.is_subset(g) || g.is_subset(f) {
                    continue;
                }
                let union: BTreeSet<usize> = f.union(g).copied().collect();
                let closed = subgroupoid_closure(t, &union);
                if found.insert(closed.clone()) {
                    next.push(closed);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<BTreeSet<usize>> = found.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Subgroupoids other than singletons and the whole carrier.
pub fn nontrivial_subgroupoids(t: &CayleyTable) -> Vec<BTreeSet<usize>> {
    enumerate_subgroupoids(t)
        .into_iter()
        .filter(|s| s.len() > 1 && s.len() < t.order())
        .collect()
}
