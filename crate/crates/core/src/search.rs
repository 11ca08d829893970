//! Exhaustive enumeration of P-groupoids of a given odd order.
//!
//! The axioms say exactly that column `y` (the map `x ↦ x·y`) fixes `y` and
//! is a fixed-point-free involution on the remaining `n − 1` elements, with
//! columns otherwise independent. The search therefore assigns one column at
//! a time from the `(n−2)!!` perfect matchings of `Q ∖ {y}`, in lexicographic
//! order of the column vector. Extra constraints are checked on the partial
//! table whenever every cell they mention is already assigned.

use std::collections::HashSet;
use std::ops::ControlFlow;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::decomp::{decomposition_from_groupoid, is_hamiltonian};
use crate::error::{Error, Result};
use crate::iso::find_isomorphism;
use crate::properties::Law;
use crate::table::CayleyTable;

/// Largest order accepted by the search engine.
pub const MAX_SEARCH_ORDER: usize = 13;
/// Largest order for which [`canonical_form`] runs without `force`.
pub const CANONICAL_FORM_CAP: usize = 9;
/// Orders up to this use canonical forms for isomorphism rejection; larger
/// orders compare against accepted representatives pairwise.
const CANONICAL_DEDUP_CAP: usize = 7;

/// Predicates restricting the search, plus resource limits.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchConstraints {
    pub require_quasigroup: bool,
    pub require_left_distributive: bool,
    pub require_quandle: bool,
    pub forbid_quandle: bool,
    pub require_hamiltonian: bool,
    pub up_to_iso: bool,
    pub max_models: Option<usize>,
    pub time_budget: Option<Duration>,
    /// Worker threads; 0 or 1 runs sequentially.
    pub threads: usize,
}

impl SearchConstraints {
    pub fn validate(&self) -> Result<()> {
        if self.require_quandle && self.forbid_quandle {
            return Err(Error::Invalid(
                "require_quandle and forbid_quandle are mutually exclusive".into(),
            ));
        }
        Ok(())
    }
}

/// Models found by [`search_p_groupoids`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    /// Labeled models, or canonical representatives with `up_to_iso`.
    pub tables: Vec<CayleyTable>,
    /// Number of labeled models visited.
    pub labeled: u64,
    /// False when `max_models` or `time_budget` cut the search short.
    pub complete: bool,
}

/// Result of [`count_models`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModelCount {
    pub labeled: u64,
    /// Only computed when `up_to_iso` is requested.
    pub iso_classes: Option<u64>,
    pub complete: bool,
}

/// Fixed-point-free involutions of `{0..n-1} ∖ {y}` (fixing `y`), in
/// lexicographic order of their image vectors.
pub fn involution_columns(n: usize, y: usize) -> Vec<Vec<u8>> {
    fn rec(col: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        const FREE: u8 = u8::MAX;
        let Some(a) = col.iter().position(|&v| v == FREE) else {
            out.push(col.clone());
            return;
        };
        for b in a + 1..col.len() {
            if col[b] == FREE {
                col[a] = b as u8;
                col[b] = a as u8;
                rec(col, out);
                col[a] = FREE;
                col[b] = FREE;
            }
        }
    }
    let mut col = vec![u8::MAX; n];
    col[y] = y as u8;
    let mut out = Vec::new();
    rec(&mut col, &mut out);
    out
}

struct Engine<'a> {
    n: usize,
    domains: Vec<Vec<Vec<u8>>>,
    c: &'a SearchConstraints,
    deadline: Option<Instant>,
    nodes: u64,
    timed_out: bool,
}

/// Column-major partial table: `cells[y * n + x] = x·y` for assigned `y`.
struct Partial {
    n: usize,
    cells: Vec<u8>,
}

impl Partial {
    #[inline]
    fn get(&self, x: usize, y: usize) -> usize {
        self.cells[y * self.n + x] as usize
    }

    fn to_table(&self) -> CayleyTable {
        let n = self.n;
        let mut rows = vec![0usize; n * n];
        for y in 0..n {
            for x in 0..n {
                rows[x * n + y] = self.get(x, y);
            }
        }
        CayleyTable::from_cells_unchecked(n, rows)
    }
}

impl<'a> Engine<'a> {
    fn new(n: usize, c: &'a SearchConstraints, deadline: Option<Instant>) -> Self {
        Engine {
            n,
            domains: (0..n).map(|y| involution_columns(n, y)).collect(),
            c,
            deadline,
            nodes: 0,
            timed_out: false,
        }
    }

    /// Consistency of the partial table after columns `0..=j` are assigned.
    fn consistent(&self, p: &Partial, j: usize) -> bool {
        let n = self.n;
        let known = |y: usize| y <= j;
        if self.c.require_quasigroup {
            for x in 0..n {
                let v = p.get(x, j);
                if (0..j).any(|k| p.get(x, k) == v) {
                    return false;
                }
            }
        }
        if self.c.require_left_distributive {
            // x(yz) = (xy)(xz)
            for z in 0..=j {
                for y in 0..n {
                    let yz = p.get(y, z);
                    if !known(yz) || !known(y) {
                        continue;
                    }
                    for x in 0..n {
                        let xz = p.get(x, z);
                        if known(xz) && p.get(x, yz) != p.get(p.get(x, y), xz) {
                            return false;
                        }
                    }
                }
            }
        }
        if self.c.require_quandle {
            // (xy)z = (xz)(yz)
            for z in 0..=j {
                for y in 0..n {
                    let yz = p.get(y, z);
                    if !known(yz) {
                        continue;
                    }
                    for x in 0..n {
                        if known(y) && p.get(p.get(x, y), z) != p.get(p.get(x, z), yz) {
                            return false;
                        }
                    }
                }
            }
        }
        if self.c.require_hamiltonian && !self.trails_can_be_hamiltonian(p, j) {
            return false;
        }
        true
    }

    /// Follows every trail as far as the assigned columns allow; fails on a
    /// repeated vertex or a trail that closes with fewer than `n` edges.
    fn trails_can_be_hamiltonian(&self, p: &Partial, j: usize) -> bool {
        let n = self.n;
        let mut seen = vec![false; n];
        let mut seq: Vec<usize> = Vec::with_capacity(n + 1);
        for u in 0..n {
            for v in u + 1..n {
                seq.clear();
                seen.iter_mut().for_each(|s| *s = false);
                seq.push(u);
                seq.push(v);
                seen[u] = true;
                seen[v] = true;
                loop {
                    let (a, b) = (seq[seq.len() - 2], seq[seq.len() - 1]);
                    if b > j {
                        break;
                    }
                    let c = p.get(a, b);
                    if c == u {
                        if seq.len() != n {
                            return false;
                        }
                        if u <= j && p.get(b, u) != v {
                            return false;
                        }
                        break;
                    }
                    if seen[c] {
                        return false;
                    }
                    seen[c] = true;
                    seq.push(c);
                }
            }
        }
        true
    }

    fn accept_leaf(&self, p: &Partial) -> bool {
        if !self.c.forbid_quandle && !self.c.require_hamiltonian {
            return true;
        }
        let t = p.to_table();
        if self.c.forbid_quandle && Law::RightDistributive.first_violation(&t).is_none() {
            return false;
        }
        if self.c.require_hamiltonian {
            let d = decomposition_from_groupoid(&t).expect("search emits P-groupoids");
            if !is_hamiltonian(&d) {
                return false;
            }
        }
        true
    }

    fn out_of_time(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes & 0xfff == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.timed_out = true;
                }
            }
        }
        self.timed_out
    }

    fn dfs<F>(&mut self, p: &mut Partial, j: usize, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&Partial) -> ControlFlow<()>,
    {
        let n = self.n;
        if j == n {
            return if self.accept_leaf(p) {
                visit(p)
            } else {
                ControlFlow::Continue(())
            };
        }
        if self.out_of_time() {
            return ControlFlow::Break(());
        }
        for k in 0..self.domains[j].len() {
            p.cells[j * n..(j + 1) * n].copy_from_slice(&self.domains[j][k]);
            if self.consistent(p, j) {
                self.dfs(p, j + 1, visit)?;
            }
        }
        ControlFlow::Continue(())
    }

    /// Runs the subtree whose first column is domain entry `first`
    /// (or the whole tree when `first` is `None`).
    fn run<F>(&mut self, first: Option<usize>, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&Partial) -> ControlFlow<()>,
    {
        let n = self.n;
        let mut p = Partial {
            n,
            cells: vec![0; n * n],
        };
        match first {
            None => self.dfs(&mut p, 0, visit),
            Some(k) => {
                p.cells[..n].copy_from_slice(&self.domains[0][k]);
                if self.consistent(&p, 0) {
                    self.dfs(&mut p, 1, visit)
                } else {
                    ControlFlow::Continue(())
                }
            }
        }
    }
}

fn check_order(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Invalid("order must be positive".into()));
    }
    if n.is_multiple_of(2) {
        return Err(Error::EvenOrder(n));
    }
    if n > MAX_SEARCH_ORDER {
        return Err(Error::OrderCapExceeded(format!(
            "search supports orders up to {MAX_SEARCH_ORDER}"
        )));
    }
    Ok(())
}

fn thread_pool(threads: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Invalid(format!("thread pool: {e}")))
}

/// Incremental isomorphism rejection.
enum Dedup {
    Canonical(HashSet<CayleyTable>),
    Pairwise(Vec<CayleyTable>),
}

impl Dedup {
    fn new(n: usize) -> Self {
        if n <= CANONICAL_DEDUP_CAP {
            Dedup::Canonical(HashSet::new())
        } else {
            Dedup::Pairwise(Vec::new())
        }
    }

    /// Returns the representative to emit when `t` opens a new class.
    fn insert(&mut self, t: CayleyTable) -> Option<CayleyTable> {
        match self {
            Dedup::Canonical(seen) => {
                let canon = canonical_form(&t).expect("order within canonical cap");
                seen.insert(canon.clone()).then_some(canon)
            }
            Dedup::Pairwise(reps) => {
                if reps.iter().any(|r| find_isomorphism(r, &t).is_some()) {
                    None
                } else {
                    reps.push(t.clone());
                    Some(t)
                }
            }
        }
    }

    fn len(&self) -> usize {
        match self {
            Dedup::Canonical(seen) => seen.len(),
            Dedup::Pairwise(reps) => reps.len(),
        }
    }
}

/// Enumerates the P-groupoids of order `n` satisfying `c`.
///
/// With `up_to_iso` the result holds one table per isomorphism class, in
/// order of first discovery; each is the class's canonical form when
/// `n ≤ 9` and the first labeled model found otherwise.
pub fn search_p_groupoids(n: usize, c: &SearchConstraints) -> Result<SearchOutcome> {
    check_order(n)?;
    c.validate()?;
    let deadline = c.time_budget.map(|b| Instant::now() + b);

    // labeled models in deterministic order, possibly truncated
    let (labeled_tables, complete) = if c.threads > 1 && c.max_models.is_none() {
        let pool = thread_pool(c.threads)?;
        let branches = involution_columns(n, 0).len();
        let parts: Vec<(Vec<CayleyTable>, bool)> = pool.install(|| {
            (0..branches)
                .into_par_iter()
                .map(|k| {
                    let mut engine = Engine::new(n, c, deadline);
                    let mut found = Vec::new();
                    let _ = engine.run(Some(k), &mut |p: &Partial| {
                        found.push(p.to_table());
                        ControlFlow::Continue(())
                    });
                    (found, !engine.timed_out)
                })
                .collect()
        });
        let complete = parts.iter().all(|(_, ok)| *ok);
        (
            parts.into_iter().flat_map(|(t, _)| t).collect::<Vec<_>>(),
            complete,
        )
    } else {
        let mut engine = Engine::new(n, c, deadline);
        let mut found = Vec::new();
        let mut dedup = c.up_to_iso.then(|| Dedup::new(n));
        let mut hit_max = false;
        let mut labeled = 0u64;
        let mut reps = Vec::new();
        let _ = engine.run(None, &mut |p: &Partial| {
            labeled += 1;
            let t = p.to_table();
            match dedup.as_mut() {
                Some(d) => {
                    if let Some(rep) = d.insert(t) {
                        reps.push(rep);
                    }
                }
                None => found.push(t),
            }
            let emitted = if dedup.is_some() {
                reps.len()
            } else {
                found.len()
            };
            if c.max_models.is_some_and(|m| emitted >= m) {
                hit_max = true;
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        });
        let complete = !engine.timed_out && !hit_max;
        if c.up_to_iso {
            return Ok(SearchOutcome {
                tables: reps,
                labeled,
                complete,
            });
        }
        return Ok(SearchOutcome {
            tables: found,
            labeled,
            complete,
        });
    };

    let labeled = labeled_tables.len() as u64;
    let tables = if c.up_to_iso {
        let mut dedup = Dedup::new(n);
        labeled_tables
            .into_iter()
            .filter_map(|t| dedup.insert(t))
            .collect()
    } else {
        labeled_tables
    };
    Ok(SearchOutcome {
        tables,
        labeled,
        complete,
    })
}

/// Counts models without materializing labeled tables (isomorphism classes
/// are still tracked when `up_to_iso` is set).
pub fn count_models(n: usize, c: &SearchConstraints) -> Result<ModelCount> {
    check_order(n)?;
    c.validate()?;
    let deadline = c.time_budget.map(|b| Instant::now() + b);
    let limit = c.max_models.map(|m| m as u64);

    // labeled count, completion, and (with up_to_iso) the tables needed to
    // count classes: canonical forms for small orders, raw tables otherwise
    let run_branch = |first: Option<usize>| -> (u64, bool, Vec<CayleyTable>) {
        let mut engine = Engine::new(n, c, deadline);
        let mut labeled = 0u64;
        let mut hit_max = false;
        let mut seen: HashSet<CayleyTable> = HashSet::new();
        let mut raw = Vec::new();
        let _ = engine.run(first, &mut |p: &Partial| {
            labeled += 1;
            if c.up_to_iso {
                let t = p.to_table();
                if n <= CANONICAL_DEDUP_CAP {
                    seen.insert(canonical_form(&t).expect("order within canonical cap"));
                } else {
                    raw.push(t);
                }
            }
            if limit.is_some_and(|m| labeled >= m) {
                hit_max = true;
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        });
        raw.extend(seen);
        (labeled, !engine.timed_out && !hit_max, raw)
    };

    let parts: Vec<(u64, bool, Vec<CayleyTable>)> = if c.threads > 1 && limit.is_none() {
        let pool = thread_pool(c.threads)?;
        let branches = involution_columns(n, 0).len();
        pool.install(|| {
            (0..branches)
                .into_par_iter()
                .map(|k| run_branch(Some(k)))
                .collect()
        })
    } else {
        vec![run_branch(None)]
    };
    let labeled = parts.iter().map(|p| p.0).sum();
    let complete = parts.iter().all(|p| p.1);
    let iso_classes = c.up_to_iso.then(|| {
        let mut dedup = Dedup::new(n);
        for t in parts.into_iter().flat_map(|p| p.2) {
            dedup.insert(t);
        }
        dedup.len() as u64
    });
    Ok(ModelCount {
        labeled,
        iso_classes,
        complete,
    })
}

/// Lexicographically least relabelling (row-major cells) over all `n!`
/// vertex permutations. Refuses `n > 9`; see [`canonical_form_forced`].
pub fn canonical_form(t: &CayleyTable) -> Result<CayleyTable> {
    if t.order() > CANONICAL_FORM_CAP {
        return Err(Error::OrderCapExceeded(format!(
            "canonical form is limited to order {CANONICAL_FORM_CAP}"
        )));
    }
    Ok(canonical_form_forced(t))
}

/// [`canonical_form`] without the order cap.
pub fn canonical_form_forced(t: &CayleyTable) -> CayleyTable {
    let n = t.order();
    // order[i] = original element placed at new label i
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut label = vec![usize::MAX; n];
    let mut best: Option<Vec<usize>> = None;
    let mut scratch = vec![0usize; n * n];

    fn rec(
        t: &CayleyTable,
        order: &mut Vec<usize>,
        label: &mut Vec<usize>,
        best: &mut Option<Vec<usize>>,
        scratch: &mut Vec<usize>,
    ) {
        let n = t.order();
        let k = order.len();
        // compare the row-major prefix that is already determined
        if let Some(b) = best.as_ref() {
            'prefix: for i in 0..k {
                for j in 0..n {
                    if j >= k {
                        break 'prefix;
                    }
                    let v = label[t.get(order[i], order[j])];
                    if v == usize::MAX {
                        break 'prefix;
                    }
                    match v.cmp(&b[i * n + j]) {
                        std::cmp::Ordering::Greater => return,
                        std::cmp::Ordering::Less => break 'prefix,
                        std::cmp::Ordering::Equal => {}
                    }
                }
            }
        }
        if k == n {
            for i in 0..n {
                for j in 0..n {
                    scratch[i * n + j] = label[t.get(order[i], order[j])];
                }
            }
            if best.as_ref().is_none_or(|b| scratch[..] < b[..]) {
                *best = Some(scratch.clone());
            }
            return;
        }
        for x in 0..n {
            if label[x] == usize::MAX {
                label[x] = k;
                order.push(x);
                rec(t, order, label, best, scratch);
                order.pop();
                label[x] = usize::MAX;
            }
        }
    }

    rec(t, &mut order, &mut label, &mut best, &mut scratch);
    CayleyTable::from_cells_unchecked(n, best.expect("at least one permutation"))
}
