//! Common-divisor graphs on non-central (p-regular) conjugacy classes.

use std::collections::VecDeque;
use std::fmt::{self, Write as _};

use num_integer::Integer;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::classes::{ClassSet, ClassTable};
use crate::permgroup::{Group, PrimeSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Ordinary,
    PRegular(u64),
}

impl Serialize for Mode {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Mode::Ordinary => s.serialize_str("ordinary"),
            Mode::PRegular(p) => s.serialize_str(&format!("p-regular({p})")),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Ordinary => f.write_str("ordinary"),
            Mode::PRegular(p) => write!(f, "p-regular({p})"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph has no vertices")]
    EmptyGraph,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Diameter {
    /// Empty graph.
    Undefined,
    Finite(u32),
    Infinite,
}

impl Diameter {
    pub fn finite(self) -> Option<u32> {
        match self {
            Diameter::Finite(d) => Some(d),
            _ => None,
        }
    }
}

impl Serialize for Diameter {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Diameter::Undefined => s.serialize_none(),
            Diameter::Finite(d) => s.serialize_u32(*d),
            Diameter::Infinite => s.serialize_str("inf"),
        }
    }
}

impl fmt::Display for Diameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diameter::Undefined => f.write_str("null"),
            Diameter::Finite(d) => write!(f, "{d}"),
            Diameter::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Vertex {
    /// Index into the class table.
    pub class: usize,
    pub size: u64,
    pub rep: String,
    pub primes: PrimeSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub label: PrimeSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassGraph {
    pub mode: Mode,
    pub vertices: Vec<Vertex>,
    /// `u < v`, lexicographic.
    pub edges: Vec<Edge>,
    /// Hop counts; `None` between components.
    pub dist: Vec<Vec<Option<u32>>>,
    /// Each component ascending; components ordered by least vertex.
    pub components: Vec<Vec<usize>>,
}

/// BFS distances in the gcd graph on `sizes` (vertex `i` has size `sizes[i]`).
pub fn gcd_distances(sizes: &[u64]) -> Vec<Vec<Option<u32>>> {
    let n = sizes.len();
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| j != i && sizes[i].gcd(&sizes[j]) > 1)
                .collect()
        })
        .collect();
    (0..n)
        .map(|s| {
            let mut d = vec![None; n];
            d[s] = Some(0);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let du = d[u].expect("queued vertices are reached");
                for &v in &adj[u] {
                    if d[v].is_none() {
                        d[v] = Some(du + 1);
                        queue.push_back(v);
                    }
                }
            }
            d
        })
        .collect()
}

pub fn build_graph(table: &ClassTable, mode: Mode) -> ClassGraph {
    let vertices: Vec<Vertex> = table
        .classes()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_central())
        .filter(|(_, c)| match mode {
            Mode::Ordinary => true,
            Mode::PRegular(p) => c.is_p_regular(p),
        })
        .map(|(i, c)| Vertex {
            class: i,
            size: c.size,
            rep: c.rep.to_string(),
            primes: c.primes.clone(),
        })
        .collect();
    let n = vertices.len();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let label = vertices[u].primes.intersection(&vertices[v].primes);
            if !label.is_empty() {
                edges.push(Edge { u, v, label });
            }
        }
    }
    let sizes: Vec<u64> = vertices.iter().map(|v| v.size).collect();
    let dist = gcd_distances(&sizes);
    let mut components: Vec<Vec<usize>> = Vec::new();
    let mut assigned = vec![false; n];
    for s in 0..n {
        if assigned[s] {
            continue;
        }
        let comp: Vec<usize> = (0..n).filter(|&t| dist[s][t].is_some()).collect();
        for &t in &comp {
            assigned[t] = true;
        }
        components.push(comp);
    }
    ClassGraph {
        mode,
        vertices,
        edges,
        dist,
        components,
    }
}

impl ClassGraph {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn sizes(&self) -> Vec<u64> {
        self.vertices.iter().map(|v| v.size).collect()
    }

    pub fn is_connected(&self) -> bool {
        self.components.len() <= 1
    }

    pub fn is_disconnected(&self) -> bool {
        self.components.len() >= 2
    }

    pub fn component_of(&self, v: usize) -> usize {
        self.components
            .iter()
            .position(|c| c.contains(&v))
            .expect("every vertex lies in a component")
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.dist[u][v] == Some(1)
    }

    pub fn diameter(&self) -> Diameter {
        diameter(self)
    }

    /// Class set of the vertex classes.
    pub fn class_set(
        &self,
        table: &ClassTable,
        vertices: impl IntoIterator<Item = usize>,
    ) -> ClassSet {
        table.set_of(vertices.into_iter().map(|v| self.vertices[v].class))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("graph serializes");
        v["diameter"] = serde_json::to_value(self.diameter()).expect("diameter serializes");
        v
    }

    /// Graphviz text; node `v<i>` is vertex `i`.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        let escaped = name.replace('\\', "\\\\").replace('"', "\\\"");
        writeln!(out, "graph \"{escaped}\" {{").unwrap();
        for (i, v) in self.vertices.iter().enumerate() {
            writeln!(out, "  v{i} [label=\"size={} rep={}\"];", v.size, v.rep).unwrap();
        }
        for e in &self.edges {
            let label: Vec<String> = e.label.iter().map(|p| p.to_string()).collect();
            writeln!(
                out,
                "  v{} -- v{} [label=\"{}\"];",
                e.u,
                e.v,
                label.join(",")
            )
            .unwrap();
        }
        out.push_str("}\n");
        out
    }
}

pub fn diameter(graph: &ClassGraph) -> Diameter {
    if graph.is_empty() {
        return Diameter::Undefined;
    }
    if graph.is_disconnected() {
        return Diameter::Infinite;
    }
    let d = graph
        .dist
        .iter()
        .flatten()
        .map(|d| d.expect("connected"))
        .max()
        .unwrap_or(0);
    Diameter::Finite(d)
}

/// Vertices of maximal class size, ascending.
pub fn maximal_classes(graph: &ClassGraph) -> Result<Vec<usize>, GraphError> {
    let max = graph
        .vertices
        .iter()
        .map(|v| v.size)
        .max()
        .ok_or(GraphError::EmptyGraph)?;
    Ok((0..graph.len())
        .filter(|&i| graph.vertices[i].size == max)
        .collect())
}

/// Vertices at distance at least 2 from `b0`, including other components.
pub fn far_vertices(graph: &ClassGraph, b0: usize) -> Vec<usize> {
    (0..graph.len())
        .filter(|&d| graph.dist[b0][d].is_none_or(|x| x >= 2))
        .collect()
}

/// `S` as a class set: the closure of the classes at distance ≥ 2 from `b0`
/// together with the central classes of the graph's mode, which are never
/// adjacent to `b0`.
pub fn s_subgroup_classes(table: &ClassTable, graph: &ClassGraph, b0: usize) -> ClassSet {
    let mut gens = graph.class_set(table, far_vertices(graph, b0));
    for (i, c) in table.classes().iter().enumerate() {
        let admitted = match graph.mode {
            Mode::Ordinary => true,
            Mode::PRegular(p) => c.is_p_regular(p),
        };
        if c.is_central() && admitted {
            gens.insert(i);
        }
    }
    table.closure(&gens)
}

pub fn s_subgroup(table: &ClassTable, graph: &ClassGraph, b0: usize) -> Group {
    table.subgroup_of(&s_subgroup_classes(table, graph, b0))
}

/// Unordered vertex pairs `(u, v)`, `u < v`, at distance exactly `d`.
pub fn distance_pairs(graph: &ClassGraph, d: u32) -> Vec<(usize, usize)> {
    let n = graph.len();
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if graph.dist[u][v] == Some(d) {
                out.push((u, v));
            }
        }
    }
    out
}
