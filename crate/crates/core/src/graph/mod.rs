//! Graph inverse semigroups: directed graphs, finite paths, doubly-pointed
//! path pairs with the symbolic product, and the grading into the free
//! group on the edge alphabet.
//!
//! Paths are written the way they are walked: `edges[0]` leaves the source
//! vertex.  Rendered strings follow the opposite, right-to-left convention
//! (`e3.e2.e1` walks `e1` first), so that concatenation in the algebra
//! matches juxtaposition in the notation; vertex paths render as `@v`.

pub mod pipeline;

pub use pipeline::{gis_ktheory, truncate, truncate_within, GisError, GisOptions, Truncation};

use std::collections::HashMap;

use crate::grading::{Group, GroupElem};

/// A finite directed graph with named vertices and edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedGraph {
    vertices: Vec<String>,
    edges: Vec<String>,
    source: Vec<usize>,
    range: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphDefError {
    #[error("graph needs at least one vertex")]
    NoVertices,
    #[error("duplicate name {0:?}")]
    DuplicateName(String),
    #[error("edge {edge:?} references unknown vertex {vertex:?}")]
    UnknownVertex { edge: String, vertex: String },
}

impl DirectedGraph {
    /// Builds a graph from vertex names and `(edge, source, range)` triples
    /// naming vertices.
    pub fn new(
        vertices: Vec<String>,
        edges: Vec<(String, String, String)>,
    ) -> Result<DirectedGraph, GraphDefError> {
        if vertices.is_empty() {
            return Err(GraphDefError::NoVertices);
        }
        let mut seen: HashMap<&str, usize> = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if seen.insert(v, i).is_some() {
                return Err(GraphDefError::DuplicateName(v.clone()));
            }
        }
        let vertex_of = |edge: &str, name: &str| {
            seen.get(name).copied().ok_or_else(|| GraphDefError::UnknownVertex {
                edge: edge.to_string(),
                vertex: name.to_string(),
            })
        };
        let mut names = Vec::with_capacity(edges.len());
        let mut source = Vec::with_capacity(edges.len());
        let mut range = Vec::with_capacity(edges.len());
        let mut edge_seen: HashMap<String, ()> = HashMap::new();
        for (name, s, r) in &edges {
            if vertices.contains(name) || edge_seen.insert(name.clone(), ()).is_some() {
                return Err(GraphDefError::DuplicateName(name.clone()));
            }
            source.push(vertex_of(name, s)?);
            range.push(vertex_of(name, r)?);
            names.push(name.clone());
        }
        Ok(DirectedGraph { vertices, edges: names, source, range })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn edge_name(&self, e: usize) -> &str {
        &self.edges[e]
    }

    /// Source vertex of an edge (where the edge is walked from).
    pub fn edge_source(&self, e: usize) -> usize {
        self.source[e]
    }

    /// Range vertex of an edge (where the edge arrives).
    pub fn edge_range(&self, e: usize) -> usize {
        self.range[e]
    }

    /// The free group on the edge alphabet — the grading codomain.
    pub fn edge_group(&self) -> Group {
        Group::Free { alphabet: self.edges.clone() }
    }

    /// Every path of length at most `depth`: vertex paths first (in vertex
    /// order), then by length, breadth-first.  Deterministic.
    pub fn paths_up_to(&self, depth: usize) -> Vec<FinitePath> {
        let mut all: Vec<FinitePath> =
            (0..self.vertex_count()).map(FinitePath::vertex).collect();
        let mut frontier = all.clone();
        for _ in 0..depth {
            let mut next = Vec::new();
            for p in &frontier {
                let at = p.range(self);
                for e in 0..self.edge_count() {
                    if self.source[e] == at {
                        let mut edges = p.edges.clone();
                        edges.push(e as u32);
                        next.push(FinitePath { source: p.source, edges });
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            all.extend(next.iter().cloned());
            frontier = next;
        }
        all
    }
}

/// `graph v1` text format: `vertex <name>` lines, then `edge <name>
/// <source> <range>` lines.  Comments (`#`) and blank lines are skipped.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphParseError {
    #[error("line {line}: expected `vertex <name>` or `edge <name> <source> <range>`, found {text:?}")]
    BadDirective { line: usize, text: String },
    #[error("line {line}: vertex takes exactly one name")]
    VertexArity { line: usize },
    #[error("line {line}: edge takes a name, a source vertex and a range vertex")]
    EdgeArity { line: usize },
    #[error("line {line}: vertex lines must come before edge lines")]
    VertexAfterEdge { line: usize },
    #[error("line {line}: {source}")]
    Def { line: usize, source: GraphDefError },
    #[error("no vertices declared")]
    Empty,
}

pub fn parse_graph(input: &str) -> Result<DirectedGraph, GraphParseError> {
    let mut vertices: Vec<String> = Vec::new();
    let mut edges: Vec<(String, String, String)> = Vec::new();
    let mut names: std::collections::HashSet<String> = std::collections::HashSet::new();
    let mut saw_edge = false;
    for (i, raw) in input.lines().enumerate() {
        let line = i + 1;
        let text = raw.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = text.split_whitespace().collect();
        let fresh = |names: &mut std::collections::HashSet<String>, name: &str| {
            names.insert(name.to_string()).then_some(()).ok_or(GraphParseError::Def {
                line,
                source: GraphDefError::DuplicateName(name.to_string()),
            })
        };
        match fields[0] {
            "vertex" => {
                if saw_edge {
                    return Err(GraphParseError::VertexAfterEdge { line });
                }
                if fields.len() != 2 {
                    return Err(GraphParseError::VertexArity { line });
                }
                fresh(&mut names, fields[1])?;
                vertices.push(fields[1].to_string());
            }
            "edge" => {
                if fields.len() != 4 {
                    return Err(GraphParseError::EdgeArity { line });
                }
                saw_edge = true;
                fresh(&mut names, fields[1])?;
                for vertex in [fields[2], fields[3]] {
                    if !vertices.iter().any(|v| v == vertex) {
                        return Err(GraphParseError::Def {
                            line,
                            source: GraphDefError::UnknownVertex {
                                edge: fields[1].to_string(),
                                vertex: vertex.to_string(),
                            },
                        });
                    }
                }
                edges.push((fields[1].to_string(), fields[2].to_string(), fields[3].to_string()));
            }
            _ => return Err(GraphParseError::BadDirective { line, text: text.to_string() }),
        }
    }
    if vertices.is_empty() {
        return Err(GraphParseError::Empty);
    }
    Ok(DirectedGraph::new(vertices, edges).expect("parser pre-checked the definition"))
}

pub fn render_graph(graph: &DirectedGraph) -> String {
    let mut out = String::new();
    for v in &graph.vertices {
        out.push_str(&format!("vertex {}\n", v));
    }
    for e in 0..graph.edge_count() {
        out.push_str(&format!(
            "edge {} {} {}\n",
            graph.edges[e],
            graph.vertices[graph.source[e]],
            graph.vertices[graph.range[e]]
        ));
    }
    out
}

/// A finite path: a lone vertex, or a nonempty composable edge sequence in
/// traversal order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinitePath {
    source: usize,
    edges: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PathError {
    #[error("empty edge list (use a vertex path)")]
    Empty,
    #[error("edges {first} and {second} do not compose")]
    NotComposable { first: usize, second: usize },
}

impl FinitePath {
    pub fn vertex(v: usize) -> FinitePath {
        FinitePath { source: v, edges: Vec::new() }
    }

    /// Path from edges in traversal order.
    pub fn from_edges(graph: &DirectedGraph, edges: Vec<u32>) -> Result<FinitePath, PathError> {
        if edges.is_empty() {
            return Err(PathError::Empty);
        }
        for pair in edges.windows(2) {
            if graph.edge_range(pair[0] as usize) != graph.edge_source(pair[1] as usize) {
                return Err(PathError::NotComposable {
                    first: pair[0] as usize,
                    second: pair[1] as usize,
                });
            }
        }
        let source = graph.edge_source(edges[0] as usize);
        Ok(FinitePath { source, edges })
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn range(&self, graph: &DirectedGraph) -> usize {
        match self.edges.last() {
            Some(&e) => graph.edge_range(e as usize),
            None => self.source,
        }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_vertex(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[u32] {
        &self.edges
    }

    /// First edge walked, if any — the discriminator for maximality of
    /// pairs.
    pub fn first_edge(&self) -> Option<u32> {
        self.edges.first().copied()
    }

    /// The composite "self after other": walk `other`, then `self`.
    /// `None` when the endpoints do not meet.  Vertex paths act as the
    /// units of this partial product.
    pub fn after(&self, other: &FinitePath, graph: &DirectedGraph) -> Option<FinitePath> {
        if self.source != other.range(graph) {
            return None;
        }
        let mut edges = other.edges.clone();
        edges.extend_from_slice(&self.edges);
        Some(FinitePath { source: other.source, edges })
    }

    /// Splits off `head` from the walked-first end: `Some(rest)` with
    /// `self = rest.after(head)`.
    pub fn strip_walked_first(
        &self,
        head: &FinitePath,
        graph: &DirectedGraph,
    ) -> Option<FinitePath> {
        if head.is_vertex() {
            return (self.source == head.source).then(|| self.clone());
        }
        if !self.edges.starts_with(&head.edges) {
            return None;
        }
        let rest = self.edges[head.edges.len()..].to_vec();
        Some(match rest.first() {
            Some(_) => FinitePath { source: head.range(graph), edges: rest },
            None => FinitePath::vertex(head.range(graph)),
        })
    }

    /// Splits off `tail` from the walked-last end: `Some(rest)` with
    /// `self = tail.after(rest)`.
    pub fn strip_walked_last(
        &self,
        tail: &FinitePath,
        graph: &DirectedGraph,
    ) -> Option<FinitePath> {
        if tail.is_vertex() {
            return (self.range(graph) == tail.source).then(|| self.clone());
        }
        if !self.edges.ends_with(&tail.edges) {
            return None;
        }
        let rest = self.edges[..self.edges.len() - tail.edges.len()].to_vec();
        Some(match rest.first() {
            Some(_) => FinitePath { source: self.source, edges: rest },
            None => FinitePath::vertex(self.source),
        })
    }

    /// `@v` for a vertex, otherwise edge names right-to-left separated by
    /// dots (the last edge walked comes first).
    pub fn display(&self, graph: &DirectedGraph) -> String {
        if self.is_vertex() {
            return format!("@{}", graph.vertex_name(self.source));
        }
        let names: Vec<&str> =
            self.edges.iter().rev().map(|&e| graph.edge_name(e as usize)).collect();
        names.join(".")
    }
}

/// An element of the graph inverse semigroup: zero, or a pair of paths
/// sharing a source vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GraphISElement {
    Zero,
    Pair(FinitePath, FinitePath),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("paths start at different vertices ({mu} vs {nu})")]
pub struct SourceMismatch {
    pub mu: usize,
    pub nu: usize,
}

impl GraphISElement {
    pub fn pair(mu: FinitePath, nu: FinitePath) -> Result<GraphISElement, SourceMismatch> {
        if mu.source() != nu.source() {
            return Err(SourceMismatch { mu: mu.source(), nu: nu.source() });
        }
        Ok(GraphISElement::Pair(mu, nu))
    }

    pub fn star(&self) -> GraphISElement {
        match self {
            GraphISElement::Zero => GraphISElement::Zero,
            GraphISElement::Pair(mu, nu) => GraphISElement::Pair(nu.clone(), mu.clone()),
        }
    }

    pub fn is_idempotent(&self) -> bool {
        match self {
            GraphISElement::Zero => true,
            GraphISElement::Pair(mu, nu) => mu == nu,
        }
    }

    /// The semigroup product.  A pair product is nonzero exactly when one
    /// middle path extends the other.
    pub fn multiply(a: &GraphISElement, b: &GraphISElement, graph: &DirectedGraph) -> GraphISElement {
        let (GraphISElement::Pair(mu, nu), GraphISElement::Pair(alpha, beta)) = (a, b) else {
            return GraphISElement::Zero;
        };
        if let Some(nu_rest) = nu.strip_walked_last(alpha, graph) {
            let second = beta.after(&nu_rest, graph).expect("junction endpoints meet");
            return GraphISElement::Pair(mu.clone(), second);
        }
        if let Some(alpha_rest) = alpha.strip_walked_last(nu, graph) {
            let first = mu.after(&alpha_rest, graph).expect("junction endpoints meet");
            return GraphISElement::Pair(first, beta.clone());
        }
        GraphISElement::Zero
    }

    /// Grade in the free group on edges: the first component's word times
    /// the inverse of the second's (vertex paths grade to the identity).
    /// The single-component form degenerates to the identity everywhere
    /// and could not separate maximal elements.
    pub fn sigma(&self, group: &Group) -> Option<GroupElem> {
        let GraphISElement::Pair(mu, nu) = self else {
            return None;
        };
        let letters = mu
            .edges
            .iter()
            .rev()
            .map(|&e| (e, false))
            .chain(nu.edges.iter().map(|&e| (e, true)));
        Some(group.word_from_letters(letters).expect("edge indices fit the alphabet"))
    }

    pub fn display(&self, graph: &DirectedGraph) -> String {
        match self {
            GraphISElement::Zero => "0".to_string(),
            GraphISElement::Pair(mu, nu) => {
                format!("({}|{})", mu.display(graph), nu.display(graph))
            }
        }
    }
}
