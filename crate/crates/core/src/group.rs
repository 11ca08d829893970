//! Permutation groups small enough to enumerate element by element.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::table::CayleyTable;

/// Default element cap for [`generate_group`].
pub const DEFAULT_ORDER_CAP: usize = 1_000_000;
/// Default group-order cap for [`group_automorphisms`].
pub const DEFAULT_AUTOMORPHISM_CAP: usize = 4000;

/// A permutation group with its full element list. Element 0 is the identity.
#[derive(Debug, Clone)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
}

impl PermutationGroup {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index.contains_key(p)
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Index of `elements[i] · elements[j]` (apply `i` first).
    pub fn multiply(&self, i: usize, j: usize) -> usize {
        self.index[&self.elements[i].then(&self.elements[j])]
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|a| self.generators.iter().all(|b| a.then(b) == b.then(a)))
    }

    /// Element set as a hash set (for comparisons independent of order).
    pub fn element_set(&self) -> HashSet<Permutation> {
        self.elements.iter().cloned().collect()
    }
}

/// Breadth-first closure of `gens` with the default cap.
pub fn generate_group(degree: usize, gens: &[Permutation]) -> Result<PermutationGroup> {
    generate_group_with_cap(degree, gens, DEFAULT_ORDER_CAP)
}

/// Breadth-first closure of `gens`; fails once more than `cap` elements appear.
pub fn generate_group_with_cap(
    degree: usize,
    gens: &[Permutation],
    cap: usize,
) -> Result<PermutationGroup> {
    if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
        return Err(Error::DegreeMismatch(degree, g.degree()));
    }
    let identity = Permutation::identity(degree);
    let mut elements = vec![identity.clone()];
    let mut index = HashMap::from([(identity, 0)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in gens {
            let p = elements[i].then(g);
            if !index.contains_key(&p) {
                if elements.len() >= cap {
                    return Err(Error::OrderCapExceeded(format!(
                        "group has more than {cap} elements"
                    )));
                }
                index.insert(p.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(p);
            }
        }
    }
    Ok(PermutationGroup {
        degree,
        generators: gens.to_vec(),
        elements,
        index,
    })
}

/// `Mlt_ρ`, `Mlt_λ` and `Mlt` of a table.
#[derive(Debug, Clone)]
pub struct MultiplicationGroups {
    pub right: PermutationGroup,
    pub left: PermutationGroup,
    pub full: PermutationGroup,
}

fn right_translations(t: &CayleyTable) -> Result<Vec<Permutation>> {
    (0..t.order()).map(|x| t.right_translation(x)).collect()
}

fn left_translations(t: &CayleyTable) -> Result<Vec<Permutation>> {
    (0..t.order()).map(|x| t.left_translation(x)).collect()
}

/// `Mlt_ρ(Q) = ⟨R_x⟩`.
pub fn right_multiplication_group(t: &CayleyTable) -> Result<PermutationGroup> {
    generate_group(t.order(), &right_translations(t)?)
}

/// `Mlt_λ(Q) = ⟨L_x⟩`.
pub fn left_multiplication_group(t: &CayleyTable) -> Result<PermutationGroup> {
    generate_group(t.order(), &left_translations(t)?)
}

/// All three multiplication groups; errors when either side has a
/// non-bijective translation.
pub fn multiplication_groups(t: &CayleyTable) -> Result<MultiplicationGroups> {
    let rights = right_translations(t)?;
    let lefts = left_translations(t)?;
    let right = generate_group(t.order(), &rights)?;
    let left = generate_group(t.order(), &lefts)?;
    let both: Vec<Permutation> = rights.into_iter().chain(lefts).collect();
    let full = generate_group(t.order(), &both)?;
    Ok(MultiplicationGroups { right, left, full })
}

/// Returns `m ≥ 3` when `G ≅ D_2m`: `|G| = 2m`, some `r` has order `m`, and
/// some involution `s ∉ ⟨r⟩` satisfies `s r s = r⁻¹`.
pub fn is_dihedral(g: &PermutationGroup) -> Option<usize> {
    let order = g.order();
    if order < 6 || order % 2 == 1 {
        return None;
    }
    let m = order / 2;
    let els = g.elements();
    let involutions: Vec<&Permutation> = els.iter().filter(|p| p.order() == 2).collect();
    for r in els.iter().filter(|p| p.order() == m) {
        let rotations: HashSet<Permutation> = (0..m).map(|k| r.pow(k)).collect();
        let r_inv = r.inverse();
        let reflects = |s: &&Permutation| !rotations.contains(*s) && s.then(r).then(s) == r_inv;
        if involutions.iter().any(reflects) {
            return Some(m);
        }
    }
    None
}

/// An automorphism of an abstract group, as a map on element indices of the
/// enumerated [`PermutationGroup`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupAutomorphism {
    pub images: Vec<usize>,
}

impl GroupAutomorphism {
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn then(&self, other: &GroupAutomorphism) -> GroupAutomorphism {
        GroupAutomorphism {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> GroupAutomorphism {
        let mut images = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v] = i;
        }
        GroupAutomorphism { images }
    }
}

/// Greedy small generating set: elements of largest order first, each added
/// only if it is outside the subgroup generated so far.
fn small_generating_set(g: &PermutationGroup) -> Vec<usize> {
    let mut by_order: Vec<(usize, usize)> = g
        .elements()
        .iter()
        .enumerate()
        .map(|(i, p)| (p.order(), i))
        .collect();
    by_order.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let mut chosen: Vec<usize> = Vec::new();
    let mut covered: HashSet<Permutation> = HashSet::from([Permutation::identity(g.degree())]);
    for (_, i) in by_order {
        if covered.len() == g.order() {
            break;
        }
        if covered.contains(&g.elements()[i]) {
            continue;
        }
        chosen.push(i);
        let gens: Vec<Permutation> = chosen.iter().map(|&j| g.elements()[j].clone()).collect();
        covered = generate_group(g.degree(), &gens)
            .expect("subgroup of an enumerated group")
            .element_set();
    }
    chosen
}

struct RightMultiplier<'a> {
    group: &'a PermutationGroup,
    cache: HashMap<usize, Vec<usize>>,
}

impl RightMultiplier<'_> {
    /// Column of the Cayley table for right multiplication by element `h`.
    fn by(&mut self, h: usize) -> &[usize] {
        let group = self.group;
        self.cache
            .entry(h)
            .or_insert_with(|| (0..group.order()).map(|a| group.multiply(a, h)).collect())
    }
}

/// Every automorphism of `g` (identity first), with the default cap.
pub fn group_automorphisms(g: &PermutationGroup) -> Result<Vec<GroupAutomorphism>> {
    group_automorphisms_with_cap(g, DEFAULT_AUTOMORPHISM_CAP)
}

/// Every automorphism of `g`. A small generating set is mapped to all
/// order-preserving image tuples; each tuple is extended along the Cayley
/// graph and kept when the extension is a well-defined bijection.
pub fn group_automorphisms_with_cap(
    g: &PermutationGroup,
    cap: usize,
) -> Result<Vec<GroupAutomorphism>> {
    let order = g.order();
    if order > cap {
        return Err(Error::OrderCapExceeded(format!(
            "group of order {order} exceeds automorphism cap {cap}"
        )));
    }
    let gens = small_generating_set(g);
    let element_orders: Vec<usize> = g.elements().iter().map(Permutation::order).collect();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&gi| {
            (0..order)
                .filter(|&h| element_orders[h] == element_orders[gi])
                .collect()
        })
        .collect();
    let mut mult = RightMultiplier {
        group: g,
        cache: HashMap::new(),
    };
    let gen_columns: Vec<Vec<usize>> = gens.iter().map(|&gi| mult.by(gi).to_vec()).collect();

    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    loop {
        let images: Vec<usize> = choice
            .iter()
            .zip(&candidates)
            .map(|(&c, cands)| cands[c])
            .collect();
        if let Some(phi) = extend(order, &gen_columns, &images, &mut mult) {
            out.push(phi);
        }
        // odometer over candidate tuples
        let mut i = gens.len();
        loop {
            if i == 0 {
                out.sort();
                return Ok(out);
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < candidates[i].len() {
                break;
            }
            choice[i] = 0;
        }
    }
}

fn extend(
    order: usize,
    gen_columns: &[Vec<usize>],
    images: &[usize],
    mult: &mut RightMultiplier<'_>,
) -> Option<GroupAutomorphism> {
    const UNSET: usize = usize::MAX;
    let mut phi = vec![UNSET; order];
    let mut hit = vec![false; order];
    phi[0] = 0;
    hit[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(a) = queue.pop_front() {
        for (k, column) in gen_columns.iter().enumerate() {
            let b = column[a];
            let target = mult.by(images[k])[phi[a]];
            if phi[b] == UNSET {
                if hit[target] {
                    return None;
                }
                phi[b] = target;
                hit[target] = true;
                queue.push_back(b);
            } else if phi[b] != target {
                return None;
            }
        }
    }
    if phi.contains(&UNSET) {
        return None;
    }
    Some(GroupAutomorphism { images: phi })
}

/// Whether every automorphism of `g` maps the elements of `h` onto themselves.
pub fn is_characteristic(h: &PermutationGroup, g: &PermutationGroup) -> Result<bool> {
    let inside: Option<HashSet<usize>> = h.elements().iter().map(|p| g.index_of(p)).collect();
    let inside = inside.ok_or(Error::NotSubgroup)?;
    let autos = group_automorphisms(g)?;
    Ok(autos
        .iter()
        .all(|phi| inside.iter().all(|&i| inside.contains(&phi.apply(i)))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    fn s3() -> PermutationGroup {
        generate_group(3, &[perm(3, &[&[0, 1]]), perm(3, &[&[0, 1, 2]])]).unwrap()
    }

    /// Brute force: every bijection of element indices fixing the identity
    /// that preserves the full multiplication table.
    fn brute_force_automorphism_count(g: &PermutationGroup) -> usize {
        let n = g.order();
        let table: Vec<Vec<usize>> = (0..n)
            .map(|i| (0..n).map(|j| g.multiply(i, j)).collect())
            .collect();
        let mut count = 0;
        let mut images = vec![usize::MAX; n];
        let mut used = vec![false; n];
        images[0] = 0;
        used[0] = true;
        fn rec(
            k: usize,
            table: &[Vec<usize>],
            images: &mut Vec<usize>,
            used: &mut Vec<bool>,
            count: &mut usize,
        ) {
            let n = table.len();
            if k == n {
                let ok = (0..n)
                    .all(|i| (0..n).all(|j| images[table[i][j]] == table[images[i]][images[j]]));
                if ok {
                    *count += 1;
                }
                return;
            }
            for v in 1..n {
                if !used[v] {
                    used[v] = true;
                    images[k] = v;
                    rec(k + 1, table, images, used, count);
                    used[v] = false;
                }
            }
        }
        rec(1, &table, &mut images, &mut used, &mut count);
        count
    }

    #[test]
    fn small_closures() {
        assert_eq!(
            generate_group(2, &[perm(2, &[&[0, 1]])]).unwrap().order(),
            2
        );
        assert_eq!(generate_group(3, &[]).unwrap().order(), 1);
        assert_eq!(s3().order(), 6);
        assert!(matches!(
            generate_group_with_cap(3, s3().generators(), 4),
            Err(Error::OrderCapExceeded(_))
        ));
        assert!(matches!(
            generate_group(3, &[perm(4, &[&[0, 1]])]),
            Err(Error::DegreeMismatch(3, 4))
        ));
    }

    #[test]
    fn dihedral_recognition() {
        assert_eq!(is_dihedral(&s3()), Some(3));
        let c4 = generate_group(4, &[perm(4, &[&[0, 1, 2, 3]])]).unwrap();
        assert_eq!(is_dihedral(&c4), None);
        let c6 = generate_group(6, &[perm(6, &[&[0, 1, 2, 3, 4, 5]])]).unwrap();
        assert_eq!(is_dihedral(&c6), None);
        let square = generate_group(4, &[perm(4, &[&[0, 1, 2, 3]]), perm(4, &[&[1, 3]])]).unwrap();
        assert_eq!(is_dihedral(&square), Some(4));
    }

    #[test]
    fn automorphism_counts() {
        let c2 = generate_group(2, &[perm(2, &[&[0, 1]])]).unwrap();
        assert_eq!(group_automorphisms(&c2).unwrap().len(), 1);
        assert_eq!(group_automorphisms(&s3()).unwrap().len(), 6);
        let klein = generate_group(4, &[perm(4, &[&[0, 1]]), perm(4, &[&[2, 3]])]).unwrap();
        assert_eq!(group_automorphisms(&klein).unwrap().len(), 6);
        let c6 = generate_group(6, &[perm(6, &[&[0, 1, 2, 3, 4, 5]])]).unwrap();
        assert_eq!(group_automorphisms(&c6).unwrap().len(), 2);
        for g in [s3(), klein, c6] {
            assert_eq!(
                group_automorphisms(&g).unwrap().len(),
                brute_force_automorphism_count(&g)
            );
        }
    }

    #[test]
    fn characteristic_subgroups() {
        let klein = generate_group(4, &[perm(4, &[&[0, 1]]), perm(4, &[&[2, 3]])]).unwrap();
        let h = generate_group(4, &[perm(4, &[&[0, 1]])]).unwrap();
        assert_eq!(is_characteristic(&h, &klein), Ok(false));
        let trivial = generate_group(4, &[]).unwrap();
        assert_eq!(is_characteristic(&trivial, &klein), Ok(true));
        let outside = generate_group(4, &[perm(4, &[&[0, 2]])]).unwrap();
        assert_eq!(is_characteristic(&outside, &klein), Err(Error::NotSubgroup));
        let a3 = generate_group(3, &[perm(3, &[&[0, 1, 2]])]).unwrap();
        assert_eq!(is_characteristic(&a3, &s3()), Ok(true));
    }

    #[test]
    fn automorphisms_form_a_group() {
        let g = s3();
        let autos = group_automorphisms(&g).unwrap();
        let set: HashSet<_> = autos.iter().cloned().collect();
        for a in &autos {
            assert!(set.contains(&a.inverse()));
            for b in &autos {
                assert!(set.contains(&a.then(b)));
            }
        }
    }
}
