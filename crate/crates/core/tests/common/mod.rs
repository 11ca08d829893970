//! Shared fixtures and independent oracles for the integration tests.
#![allow(dead_code)]

use std::path::PathBuf;

use pgroupoid::CayleyTable;

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("data")
        .join(name)
}

pub fn read_data(name: &str) -> String {
    std::fs::read_to_string(data_path(name)).expect("fixture present")
}

/// Golden tables are stored with labels 1..n.
pub fn golden_table(name: &str) -> CayleyTable {
    CayleyTable::parse_with_base(&read_data(name), 1).expect("fixture parses")
}

/// One line per trail, 1-based vertices.
pub fn golden_cycles(name: &str) -> Vec<Vec<usize>> {
    read_data(name)
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            l.split_whitespace()
                .map(|w| w.parse::<usize>().unwrap() - 1)
                .collect()
        })
        .collect()
}

/// (n−2)!! for odd n, the number of fixed-point-free involutions on n−1 points.
pub fn double_factorial_below(n: u64) -> u64 {
    (1..=n.saturating_sub(2)).step_by(2).product()
}

pub fn euler_phi(n: usize) -> usize {
    (1..=n).filter(|&k| gcd(k, n) == 1).count()
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Multiplicative order of 2 mod odd n, by direct doubling.
pub fn order_of_two(n: usize) -> usize {
    let mut v = 2 % n;
    let mut k = 1;
    while v != 1 % n {
        v = v * 2 % n;
        k += 1;
    }
    k
}

/// All labeled P-groupoids of order n by plain product enumeration: every
/// column y is a fixed-point-free involution of the other points, with y·y = y.
/// Independent of the search engine.
pub fn brute_force_p_groupoids(n: usize) -> Vec<CayleyTable> {
    fn matchings(points: &[usize]) -> Vec<Vec<(usize, usize)>> {
        let Some((&a, rest)) = points.split_first() else {
            return vec![Vec::new()];
        };
        let mut out = Vec::new();
        for i in 0..rest.len() {
            let mut remaining = rest.to_vec();
            let b = remaining.remove(i);
            for mut m in matchings(&remaining) {
                m.push((a, b));
                out.push(m);
            }
        }
        out
    }
    let columns: Vec<Vec<Vec<(usize, usize)>>> = (0..n)
        .map(|y| matchings(&(0..n).filter(|&v| v != y).collect::<Vec<_>>()))
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; n];
    loop {
        let mut rows = vec![vec![0usize; n]; n];
        for y in 0..n {
            rows[y][y] = y;
            for &(a, b) in &columns[y][choice[y]] {
                rows[a][y] = b;
                rows[b][y] = a;
            }
        }
        out.push(CayleyTable::from_rows(rows).unwrap());
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            choice[i] += 1;
            if choice[i] < columns[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Direct left-distributivity check: x(yz) = (xy)(xz).
pub fn left_distributive(t: &CayleyTable) -> bool {
    let n = t.order();
    (0..n).all(|x| {
        (0..n).all(|y| (0..n).all(|z| t.get(x, t.get(y, z)) == t.get(t.get(x, y), t.get(x, z))))
    })
}

/// Direct right-distributivity check: (xy)z = (xz)(yz).
pub fn right_distributive(t: &CayleyTable) -> bool {
    let n = t.order();
    (0..n).all(|x| {
        (0..n).all(|y| (0..n).all(|z| t.get(t.get(x, y), z) == t.get(t.get(x, z), t.get(y, z))))
    })
}

/// Latin-square check.
pub fn latin(t: &CayleyTable) -> bool {
    let n = t.order();
    (0..n).all(|i| {
        let mut row = vec![false; n];
        let mut col = vec![false; n];
        for j in 0..n {
            row[t.get(i, j)] = true;
            col[t.get(j, i)] = true;
        }
        row.iter().chain(&col).all(|&b| b)
    })
}
