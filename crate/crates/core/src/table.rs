//! Cayley tables of finite groupoids over `{0..n-1}`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// The operation table of a finite groupoid; `get(x, y)` is `x·y`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CayleyTable {
    n: usize,
    cells: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    n: usize,
    cells: Vec<Vec<i64>>,
}

impl CayleyTable {
    /// Builds a table from rows, validating shape and range.
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::MalformedTable("empty table".into()));
        }
        let mut cells = Vec::with_capacity(n * n);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::MalformedTable(format!(
                    "row {r} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (c, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::OutOfRange {
                        row: r,
                        col: c,
                        value: v as i64,
                        n,
                    });
                }
                cells.push(v);
            }
        }
        Ok(CayleyTable { n, cells })
    }

    /// Builds a table by evaluating `op` on every pair.
    pub fn from_fn(n: usize, op: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let rows = (0..n).map(|x| (0..n).map(|y| op(x, y)).collect()).collect();
        CayleyTable::from_rows(rows)
    }

    pub(crate) fn from_cells_unchecked(n: usize, cells: Vec<usize>) -> Self {
        debug_assert_eq!(cells.len(), n * n);
        debug_assert!(cells.iter().all(|&v| v < n));
        CayleyTable { n, cells }
    }

    /// Parses the text format: optional `# order n` header, then `n` lines of
    /// `n` whitespace-separated 0-based integers. Blank lines and other `#`
    /// comment lines are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        Self::parse_with_base(text, 0)
    }

    /// Parses a table whose labels start at `base` (1 for tables copied from
    /// 1-based sources), shifting every entry down by `base`.
    pub fn parse_with_base(text: &str, base: usize) -> Result<Self> {
        let mut declared = None;
        let mut raw_rows: Vec<Vec<i64>> = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                let words: Vec<&str> = rest.split_whitespace().collect();
                if words.len() == 2 && words[0] == "order" {
                    let n = words[1]
                        .parse::<usize>()
                        .map_err(|_| Error::MalformedTable(format!("bad order header: {line}")))?;
                    declared = Some(n);
                }
                continue;
            }
            let row = line
                .split_whitespace()
                .map(|w| {
                    w.parse::<i64>()
                        .map_err(|_| Error::MalformedTable(format!("non-integer entry {w:?}")))
                })
                .collect::<Result<Vec<i64>>>()?;
            raw_rows.push(row);
        }
        Self::from_raw(raw_rows, declared, base)
    }

    /// Parses the JSON form `{"n": int, "cells": [[int]]}` (0-based).
    pub fn from_json(text: &str) -> Result<Self> {
        let parsed: TableJson =
            serde_json::from_str(text).map_err(|e| Error::MalformedTable(e.to_string()))?;
        Self::from_raw(parsed.cells, Some(parsed.n), 0)
    }

    /// Accepts either the text or the JSON form.
    pub fn parse_any(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            Self::from_json(text)
        } else {
            Self::parse(text)
        }
    }

    fn from_raw(raw_rows: Vec<Vec<i64>>, declared: Option<usize>, base: usize) -> Result<Self> {
        let n = raw_rows.len();
        if n == 0 {
            return Err(Error::MalformedTable("no rows".into()));
        }
        if let Some(d) = declared {
            if d != n {
                return Err(Error::MalformedTable(format!(
                    "header declares order {d} but {n} rows were given"
                )));
            }
        }
        let mut cells = Vec::with_capacity(n * n);
        for (r, row) in raw_rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::MalformedTable(format!(
                    "row {r} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (c, &v) in row.iter().enumerate() {
                let shifted = v - base as i64;
                if shifted < 0 || shifted >= n as i64 {
                    return Err(Error::OutOfRange {
                        row: r,
                        col: c,
                        value: v,
                        n,
                    });
                }
                cells.push(shifted as usize);
            }
        }
        Ok(CayleyTable { n, cells })
    }

    /// Text form with a `# order n` header, one row per line, trailing newline.
    pub fn to_text(&self) -> String {
        let mut s = format!("# order {}\n", self.n);
        for row in self.rows() {
            let parts: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            s.push_str(&parts.join(" "));
            s.push('\n');
        }
        s
    }

    /// Same as [`to_text`](Self::to_text) with every label shifted by `base`.
    pub fn to_text_with_base(&self, base: usize) -> String {
        let mut s = format!("# order {}\n", self.n);
        for row in self.rows() {
            let parts: Vec<String> = row.iter().map(|v| (v + base).to_string()).collect();
            s.push_str(&parts.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "cells": self.rows().map(|r| r.to_vec()).collect::<Vec<_>>(),
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> usize {
        self.cells[x * self.n + y]
    }

    pub fn row(&self, x: usize) -> &[usize] {
        &self.cells[x * self.n..(x + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[usize]> {
        self.cells.chunks(self.n)
    }

    pub fn column(&self, y: usize) -> Vec<usize> {
        (0..self.n).map(|x| self.get(x, y)).collect()
    }

    /// Row-major cells.
    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    /// The map `y ↦ x·y`, which need not be a bijection.
    pub fn row_map(&self, x: usize) -> Vec<usize> {
        self.row(x).to_vec()
    }

    /// The map `y ↦ y·x`.
    pub fn column_map(&self, x: usize) -> Vec<usize> {
        self.column(x)
    }

    /// `R_x: y ↦ y·x`.
    pub fn right_translation(&self, x: usize) -> Result<Permutation> {
        Permutation::from_images(self.column(x))
            .map_err(|_| Error::NotBijective(format!("right translation R_{x}")))
    }

    /// `L_x: y ↦ x·y`.
    pub fn left_translation(&self, x: usize) -> Result<Permutation> {
        Permutation::from_images(self.row_map(x))
            .map_err(|_| Error::NotBijective(format!("left translation L_{x}")))
    }

    /// `a\b`: the unique `x` with `a·x = b`.
    pub fn left_division(&self, a: usize, b: usize) -> Result<usize> {
        let mut hits = (0..self.n).filter(|&x| self.get(a, x) == b);
        match (hits.next(), hits.next()) {
            (Some(x), None) => Ok(x),
            _ => Err(Error::NonUniqueDivision(format!("{a}\\{b}"))),
        }
    }

    /// `b/a`: the unique `y` with `y·a = b`.
    pub fn right_division(&self, b: usize, a: usize) -> Result<usize> {
        let mut hits = (0..self.n).filter(|&y| self.get(y, a) == b);
        match (hits.next(), hits.next()) {
            (Some(y), None) => Ok(y),
            _ => Err(Error::NonUniqueDivision(format!("{b}/{a}"))),
        }
    }

    /// The isomorphic copy under the relabelling `sigma`: the result `U`
    /// satisfies `U(σx, σy) = σ(x·y)`.
    pub fn relabel(&self, sigma: &Permutation) -> CayleyTable {
        assert_eq!(sigma.degree(), self.n, "relabelling degree mismatch");
        let n = self.n;
        let mut cells = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                cells[sigma.apply(x) * n + sigma.apply(y)] = sigma.apply(self.get(x, y));
            }
        }
        CayleyTable { n, cells }
    }
}

/// Free-function form of [`CayleyTable::parse`].
pub fn parse_table(text: &str) -> Result<CayleyTable> {
    CayleyTable::parse(text)
}

impl fmt::Debug for CayleyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CayleyTable(n = {})", self.n)?;
        for row in self.rows() {
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

impl fmt::Display for CayleyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
