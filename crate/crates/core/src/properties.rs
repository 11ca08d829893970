//! Algebraic predicates on Cayley tables, decided by exhaustive sweeps.
//!
//! Each predicate is a universally quantified [`Law`] over tuples of
//! elements. Tuples are visited in lexicographic (row-major) order, so a
//! failing flag always carries the first violating tuple.

use serde::Serialize;

use crate::table::CayleyTable;

/// A law quantified over all tuples of a fixed arity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Law {
    /// `x·x = x`
    Idempotent,
    /// `x ≠ y ⇒ x·y ∉ {x, y}`
    NoTrivialProducts,
    /// `(x·y)·y = x`
    RightKeyed,
    /// `b ≠ c ⇒ a·b ≠ a·c ∧ b·a ≠ c·a`
    Cancellative,
    /// `x·(y·z) = (x·y)·(x·z)`
    LeftDistributive,
    /// `(x·y)·z = (x·z)·(y·z)`
    RightDistributive,
    /// `(x·y)·(z·w) = (x·z)·(y·w)`
    Medial,
    /// `a·a = a`, `b ≠ c ⇒ b·a ≠ c·a`, and `(a·b)·c = (a·c)·(b·c)`
    Quandle,
}

impl Law {
    pub fn arity(self) -> usize {
        match self {
            Law::Idempotent => 1,
            Law::NoTrivialProducts | Law::RightKeyed => 2,
            Law::Cancellative | Law::LeftDistributive | Law::RightDistributive | Law::Quandle => 3,
            Law::Medial => 4,
        }
    }

    /// Whether the law holds at one tuple (of length [`arity`](Self::arity)).
    pub fn holds_at(self, t: &CayleyTable, v: &[usize]) -> bool {
        let m = |a, b| t.get(a, b);
        match self {
            Law::Idempotent => m(v[0], v[0]) == v[0],
            Law::NoTrivialProducts => {
                let (x, y) = (v[0], v[1]);
                x == y || (m(x, y) != x && m(x, y) != y)
            }
            Law::RightKeyed => m(m(v[0], v[1]), v[1]) == v[0],
            Law::Cancellative => {
                let (a, b, c) = (v[0], v[1], v[2]);
                b == c || (m(a, b) != m(a, c) && m(b, a) != m(c, a))
            }
            Law::LeftDistributive => {
                let (x, y, z) = (v[0], v[1], v[2]);
                m(x, m(y, z)) == m(m(x, y), m(x, z))
            }
            Law::RightDistributive => {
                let (x, y, z) = (v[0], v[1], v[2]);
                m(m(x, y), z) == m(m(x, z), m(y, z))
            }
            Law::Medial => {
                let (x, y, z, w) = (v[0], v[1], v[2], v[3]);
                m(m(x, y), m(z, w)) == m(m(x, z), m(y, w))
            }
            Law::Quandle => {
                let (a, b, c) = (v[0], v[1], v[2]);
                m(a, a) == a
                    && (b == c || m(b, a) != m(c, a))
                    && m(m(a, b), c) == m(m(a, c), m(b, c))
            }
        }
    }

    /// First violating tuple in lexicographic order, if any.
    pub fn first_violation(self, t: &CayleyTable) -> Option<Vec<usize>> {
        let n = t.order();
        let k = self.arity();
        let mut tuple = vec![0usize; k];
        loop {
            if !self.holds_at(t, &tuple) {
                return Some(tuple);
            }
            // odometer increment, last coordinate fastest
            let mut i = k;
            loop {
                if i == 0 {
                    return None;
                }
                i -= 1;
                tuple[i] += 1;
                if tuple[i] < n {
                    break;
                }
                tuple[i] = 0;
            }
        }
    }

    pub fn check(self, t: &CayleyTable) -> Flag {
        Flag::from_witness(self.first_violation(t))
    }
}

/// Truth value of one predicate plus its first counterexample.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Flag {
    pub holds: bool,
    pub witness: Option<Vec<usize>>,
}

impl Flag {
    fn from_witness(witness: Option<Vec<usize>>) -> Self {
        Flag {
            holds: witness.is_none(),
            witness,
        }
    }

    fn not_evaluated() -> Self {
        Flag {
            holds: false,
            witness: None,
        }
    }
}

/// Verdicts for every predicate. Field order is the JSON key order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub p1: Flag,
    pub p2: Flag,
    pub p3: Flag,
    pub is_p_groupoid: Flag,
    pub is_quasigroup: Flag,
    pub left_distributive: Flag,
    pub right_distributive: Flag,
    pub medial: Flag,
    pub quandle: Flag,
    /// False when only the P-groupoid axioms were evaluated; the remaining
    /// flags then carry no information.
    pub complete: bool,
}

impl PropertyReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

fn axiom_flags(t: &CayleyTable) -> (Flag, Flag, Flag, Flag) {
    let p1 = Law::Idempotent.check(t);
    let p2 = Law::NoTrivialProducts.check(t);
    let p3 = Law::RightKeyed.check(t);
    let witness = [&p1, &p2, &p3]
        .iter()
        .find(|f| !f.holds)
        .and_then(|f| f.witness.clone());
    let all = Flag::from_witness(witness);
    (p1, p2, p3, all)
}

/// Evaluates the three P-groupoid axioms only.
pub fn is_p_groupoid(t: &CayleyTable) -> PropertyReport {
    let (p1, p2, p3, all) = axiom_flags(t);
    PropertyReport {
        p1,
        p2,
        p3,
        is_p_groupoid: all,
        is_quasigroup: Flag::not_evaluated(),
        left_distributive: Flag::not_evaluated(),
        right_distributive: Flag::not_evaluated(),
        medial: Flag::not_evaluated(),
        quandle: Flag::not_evaluated(),
        complete: false,
    }
}

/// Evaluates every predicate.
pub fn property_report(t: &CayleyTable) -> PropertyReport {
    let (p1, p2, p3, all) = axiom_flags(t);
    PropertyReport {
        p1,
        p2,
        p3,
        is_p_groupoid: all,
        is_quasigroup: Law::Cancellative.check(t),
        left_distributive: Law::LeftDistributive.check(t),
        right_distributive: Law::RightDistributive.check(t),
        medial: Law::Medial.check(t),
        quandle: Law::Quandle.check(t),
        complete: true,
    }
}

/// Shorthand for `is_p_groupoid(t).is_p_groupoid.holds`.
pub fn satisfies_p_axioms(t: &CayleyTable) -> bool {
    Law::Idempotent.first_violation(t).is_none()
        && Law::NoTrivialProducts.first_violation(t).is_none()
        && Law::RightKeyed.first_violation(t).is_none()
}
