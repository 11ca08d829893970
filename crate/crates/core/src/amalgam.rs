//! Amalgamation: pushing a coloured decomposition through a vertex surjection.

use std::fmt::Write as _;

use serde::Serialize;

use crate::decomp::{palette, Decomposition};
use crate::error::{Error, Result};

/// A surjection `ψ` from source vertices onto `{0..codomain-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmalgamationMap {
    images: Vec<usize>,
    codomain: usize,
}

impl AmalgamationMap {
    pub fn new(images: Vec<usize>, codomain: usize) -> Result<Self> {
        let mut hit = vec![false; codomain];
        for &v in &images {
            if v >= codomain {
                return Err(Error::NotSurjective(codomain));
            }
            hit[v] = true;
        }
        if hit.iter().any(|h| !h) {
            return Err(Error::NotSurjective(codomain));
        }
        Ok(AmalgamationMap { images, codomain })
    }

    /// Codomain inferred as `max image + 1`; gaps are rejected.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let codomain = images.iter().max().map_or(0, |m| m + 1);
        Self::new(images, codomain)
    }

    /// Parses a comma-separated image list such as `"0,1,1,2,2"`.
    pub fn parse(text: &str) -> Result<Self> {
        let images = text
            .split(',')
            .map(|w| {
                w.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Invalid(format!("bad map entry {w:?}")))
            })
            .collect::<Result<Vec<usize>>>()?;
        Self::from_images(images)
    }

    pub fn source_count(&self) -> usize {
        self.images.len()
    }

    pub fn codomain(&self) -> usize {
        self.codomain
    }

    pub fn apply(&self, v: usize) -> usize {
        self.images[v]
    }
}

/// An edge of the amalgamated multigraph; `u == v` is a loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ColoredEdge {
    pub u: usize,
    pub v: usize,
    pub color: usize,
}

impl ColoredEdge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiGraph {
    pub vertices: usize,
    pub colors: usize,
    pub edges: Vec<ColoredEdge>,
}

impl MultiGraph {
    pub fn loops(&self) -> impl Iterator<Item = &ColoredEdge> {
        self.edges.iter().filter(|e| e.is_loop())
    }

    pub fn loops_of_color(&self, color: usize) -> Vec<ColoredEdge> {
        self.loops().filter(|e| e.color == color).copied().collect()
    }

    /// Edge count per colour, indexed by colour.
    pub fn color_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.colors];
        for e in &self.edges {
            counts[e.color] += 1;
        }
        counts
    }

    /// Degree with loops counted twice.
    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|e| usize::from(e.u == v) + usize::from(e.v == v))
            .sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "vertices": self.vertices,
            "edge_count": self.edges.len(),
            "loop_count": self.loops().count(),
            "color_counts": self.color_counts(),
            "degrees": (0..self.vertices).map(|v| self.degree(v)).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|e| [e.u, e.v, e.color]).collect::<Vec<_>>(),
        })
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph amalgamation {\n  node [shape=circle];\n");
        for v in 0..self.vertices {
            let _ = writeln!(s, "  {v};");
        }
        for e in &self.edges {
            let _ = writeln!(s, "  {} -- {} [color=\"{}\"];", e.u, e.v, palette(e.color));
        }
        s.push_str("}\n");
        s
    }
}

/// Each edge `{x, y}` of colour `c` becomes `{ψx, ψy}` of colour `c`; edges
/// inside one fibre become loops. Edges are listed by colour, then by the
/// source edge order.
pub fn amalgamate(d: &Decomposition, psi: &AmalgamationMap) -> Result<MultiGraph> {
    if psi.source_count() != d.vertex_count() {
        return Err(Error::Invalid(format!(
            "map has {} entries but the decomposition has {} vertices",
            psi.source_count(),
            d.vertex_count()
        )));
    }
    let mut edges = Vec::new();
    for (color, class) in d.classes().iter().enumerate() {
        for (x, y) in class.edges() {
            let (a, b) = (psi.apply(x), psi.apply(y));
            edges.push(ColoredEdge {
                u: a.min(b),
                v: a.max(b),
                color,
            });
        }
    }
    Ok(MultiGraph {
        vertices: psi.codomain(),
        colors: d.classes().len(),
        edges,
    })
}
