//! Dual graphs of the stratification by top cells and walls.
//!
//! Vertices of the subdivided graph are the top cells `(1^k)` together with the
//! walls `(1^i, 2, 1^j)`; a wall is joined to each top cell it bounds. The
//! multigraph variant contracts every wall vertex into a labeled edge between
//! its two neighbouring top cells.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::composition::{enumerate_omega, Composition, ReducedNormFilter};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub a: Composition,
    pub b: Composition,
    pub label: Composition,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrataGraph {
    d: usize,
    subdivided: bool,
    vertices: Vec<Composition>,
    edges: Vec<Edge>,
}

#[derive(Serialize)]
struct AdjacencyDump<'a> {
    vertices: &'a [Composition],
    edges: Vec<(&'a Composition, &'a Composition, &'a Composition)>,
}

impl StrataGraph {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn is_subdivided(&self) -> bool {
        self.subdivided
    }

    pub fn vertices(&self) -> &[Composition] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn degree(&self, v: &Composition) -> usize {
        self.edges
            .iter()
            .map(|e| usize::from(&e.a == v) + usize::from(&e.b == v))
            .sum()
    }

    pub fn is_connected(&self) -> bool {
        let Some(start) = self.vertices.first() else {
            return true;
        };
        let mut adjacency: BTreeMap<&Composition, Vec<&Composition>> = BTreeMap::new();
        for e in &self.edges {
            adjacency.entry(&e.a).or_default().push(&e.b);
            adjacency.entry(&e.b).or_default().push(&e.a);
        }
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in adjacency.get(v).into_iter().flatten() {
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen.len() == self.vertices.len()
    }

    /// DOT rendering with composition labels; output order is deterministic.
    pub fn to_dot(&self) -> String {
        let kind = if self.subdivided { "subdivided" } else { "walls" };
        let mut out = format!("graph strata_d{}_{} {{\n", self.d, kind);
        for v in &self.vertices {
            let _ = writeln!(out, "  \"{v}\";");
        }
        for e in &self.edges {
            let _ = writeln!(out, "  \"{}\" -- \"{}\" [label=\"{}\"];", e.a, e.b, e.label);
        }
        out.push_str("}\n");
        out
    }

    /// `{"vertices": [...], "edges": [[u, v, label], ...]}` with compositions as integer arrays.
    pub fn to_json_value(&self) -> impl Serialize + '_ {
        AdjacencyDump {
            vertices: &self.vertices,
            edges: self.edges.iter().map(|e| (&e.a, &e.b, &e.label)).collect(),
        }
    }
}

/// Builds the dual graph of the codimension <= 1 strata of degree-`d` polynomials.
///
/// A wall is adjacent to a top cell exactly when it is a single merge or insert
/// of that cell's pattern.
pub fn build_dual_graph(d: usize, subdivided: bool) -> Result<StrataGraph> {
    if d < 2 {
        return Err(Error::DegreeTooSmall(d));
    }
    let cells = enumerate_omega(d, ReducedNormFilter::Eq(0));
    let walls = enumerate_omega(d, ReducedNormFilter::Eq(1));

    let mut incidence: BTreeMap<&Composition, Vec<&Composition>> = BTreeMap::new();
    for cell in &cells {
        for next in cell.successors() {
            if let Some(wall) = walls.iter().find(|w| **w == next) {
                incidence.entry(wall).or_default().push(cell);
            }
        }
    }

    let (vertices, edges) = if subdivided {
        let mut vertices = cells.clone();
        vertices.extend(walls.iter().cloned());
        vertices.sort();
        let mut edges = Vec::new();
        for cell in &cells {
            for next in cell.successors() {
                if walls.contains(&next) {
                    edges.push(Edge { a: cell.clone(), b: next.clone(), label: next });
                }
            }
        }
        edges.sort_by(|x, y| (&x.a, &x.label).cmp(&(&y.a, &y.label)));
        (vertices, edges)
    } else {
        let mut edges = Vec::new();
        for wall in &walls {
            let ends = &incidence[wall];
            assert_eq!(ends.len(), 2, "wall {wall} must bound exactly two cells");
            let (a, b) = if ends[0] < ends[1] { (ends[0], ends[1]) } else { (ends[1], ends[0]) };
            edges.push(Edge { a: a.clone(), b: b.clone(), label: wall.clone() });
        }
        edges.sort_by(|x, y| (&x.a, &x.label).cmp(&(&y.a, &y.label)));
        (cells, edges)
    };

    Ok(StrataGraph { d, subdivided, vertices, edges })
}

/// First Betti number `E - V + 1` of a connected graph.
pub fn graph_rank(g: &StrataGraph) -> Result<usize> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(g.edges.len() + 1 - g.vertices.len())
}

/// Number of circles in the wedge: `d(d-2)/4` for even `d`, `(d-1)^2/4` for odd `d`.
pub fn expected_rank(d: usize) -> usize {
    if d % 2 == 0 {
        d * d.saturating_sub(2) / 4
    } else {
        (d - 1) * (d - 1) / 4
    }
}
