//! Resolution dual graphs of normal surface singularities.
//!
//! A [`DualGraph`] records the exceptional components of a resolution as
//! vertices (self-intersection and genus) and their intersection points as
//! edges. Construction always validates connectivity and negative
//! definiteness of the intersection matrix, so every `DualGraph` value in
//! circulation is admissible as the exceptional lattice of a resolution.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("line {line}: unknown vertex \"{id}\"")]
    UnknownVertex { line: usize, id: String },
    #[error("line {line}: vertex \"{id}\" has no self-intersection")]
    MissingSelfIntersection { line: usize, id: String },
    #[error("line {line}: field `{field}` is not a valid integer: \"{value}\"")]
    InvalidInteger {
        line: usize,
        field: String,
        value: String,
    },
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("duplicate vertex id \"{0}\"")]
    DuplicateVertex(String),
    #[error("vertex \"{id}\" has self-intersection {value}, expected <= -1")]
    SelfIntersectionTooLarge { id: String, value: i64 },
    #[error("edge joins vertex \"{0}\" to itself")]
    SelfLoop(String),
    #[error("graph has no vertices")]
    Empty,
    #[error("graph is not connected")]
    Disconnected,
    #[error("intersection matrix is not negative definite")]
    NotNegativeDefinite,
}

/// An exceptional component of the resolution.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub id: String,
    pub self_intersection: i64,
    pub genus: u32,
}

impl Vertex {
    pub fn new(id: impl Into<String>, self_intersection: i64, genus: u32) -> Self {
        Self {
            id: id.into(),
            self_intersection,
            genus,
        }
    }

    /// A rational (genus 0) component.
    pub fn rational(id: impl Into<String>, self_intersection: i64) -> Self {
        Self::new(id, self_intersection, 0)
    }
}

/// Symmetric integer matrix `E_i . E_j`, indexed by vertex order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntersectionMatrix {
    size: usize,
    entries: Vec<i64>,
}

impl IntersectionMatrix {
    /// Builds a matrix from rows. Only squareness is enforced here; symmetry
    /// is checked by the operations that need it.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self, GraphError> {
        let size = rows.len();
        if rows.iter().any(|row| row.len() != size) {
            return Err(GraphError::InvalidParameter(
                "intersection matrix must be square".into(),
            ));
        }
        Ok(Self {
            size,
            entries: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.size + j]
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i * self.size..(i + 1) * self.size]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.size).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.size).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Leading principal minors `det_1, ..., det_n`, each computed exactly by
    /// fraction-free (Bareiss) elimination on the leading block.
    pub fn leading_minors(&self) -> Vec<BigInt> {
        (1..=self.size)
            .map(|k| self.leading_determinant(k))
            .collect()
    }

    fn leading_determinant(&self, k: usize) -> BigInt {
        let mut a: Vec<Vec<BigInt>> = (0..k)
            .map(|i| (0..k).map(|j| BigInt::from(self.get(i, j))).collect())
            .collect();
        let mut sign = BigInt::from(1);
        let mut prev = BigInt::from(1);
        for p in 0..k {
            if a[p][p].is_zero() {
                match (p + 1..k).find(|&r| !a[r][p].is_zero()) {
                    Some(r) => {
                        a.swap(p, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in p + 1..k {
                for j in p + 1..k {
                    let v = &a[i][j] * &a[p][p] - &a[i][p] * &a[p][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[p][p].clone();
        }
        sign * prev
    }
}

/// Sylvester's criterion: negative definite iff `sign(det_k) = (-1)^k` for
/// every leading principal minor.
pub fn is_negative_definite(m: &IntersectionMatrix) -> Result<bool, GraphError> {
    if !m.is_symmetric() {
        return Err(GraphError::InvalidParameter(
            "matrix is not symmetric".into(),
        ));
    }
    Ok(m.leading_minors().iter().enumerate().all(|(i, det)| {
        if (i + 1) % 2 == 1 {
            det.is_negative()
        } else {
            det.is_positive()
        }
    }))
}

/// A validated resolution dual graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualGraph {
    vertices: Vec<Vertex>,
    edges: Vec<(usize, usize)>,
    matrix: IntersectionMatrix,
}

impl DualGraph {
    /// Validates and builds a graph. Edges are index pairs into `vertices`;
    /// repeated pairs add multiplicity.
    pub fn new(vertices: Vec<Vertex>, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        if vertices.is_empty() {
            return Err(GraphError::Empty);
        }
        let mut seen = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if seen.insert(v.id.as_str(), i).is_some() {
                return Err(GraphError::DuplicateVertex(v.id.clone()));
            }
            if v.self_intersection > -1 && v.self_intersection != 0 {
                return Err(GraphError::SelfIntersectionTooLarge {
                    id: v.id.clone(),
                    value: v.self_intersection,
                });
            }
        }
        let n = vertices.len();
        let mut edges = edges;
        for e in edges.iter_mut() {
            if e.0 >= n || e.1 >= n {
                return Err(GraphError::InvalidParameter(format!(
                    "edge ({}, {}) out of range for {} vertices",
                    e.0, e.1, n
                )));
            }
            if e.0 == e.1 {
                return Err(GraphError::SelfLoop(vertices[e.0].id.clone()));
            }
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }

        let mut rows = vec![vec![0i64; n]; n];
        for (i, v) in vertices.iter().enumerate() {
            rows[i][i] = v.self_intersection;
        }
        for &(a, b) in &edges {
            rows[a][b] += 1;
            rows[b][a] += 1;
        }
        let matrix = IntersectionMatrix::from_rows(&rows)?;

        if !is_connected(n, &edges) {
            return Err(GraphError::Disconnected);
        }
        // A self-intersection of 0 is let through the per-vertex check so it
        // surfaces as the definiteness failure it actually is.
        if !is_negative_definite(&matrix)? {
            return Err(GraphError::NotNegativeDefinite);
        }
        Ok(Self {
            vertices,
            edges,
            matrix,
        })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    pub fn intersection_matrix(&self) -> &IntersectionMatrix {
        &self.matrix
    }

    /// `K . E_i = -E_i^2 - 2 + 2 g_i` for every vertex (adjunction).
    pub fn canonical_degree(&self) -> Vec<i64> {
        self.vertices
            .iter()
            .map(|v| -v.self_intersection - 2 + 2 * i64::from(v.genus))
            .collect()
    }

    /// Non-fatal remarks about the graph, e.g. (-1)-curves in a
    /// non-minimal resolution.
    pub fn warnings(&self) -> Vec<String> {
        self.vertices
            .iter()
            .filter(|v| v.self_intersection == -1)
            .map(|v| {
                format!(
                    "vertex \"{}\" is a (-1)-curve; the resolution is not minimal",
                    v.id
                )
            })
            .collect()
    }

    /// Serializes into the line format accepted by [`parse_dual_graph`].
    pub fn render(&self) -> String {
        let mut out = String::new();
        for v in &self.vertices {
            out.push_str(&format!("vertex {} self={}", v.id, v.self_intersection));
            if v.genus != 0 {
                out.push_str(&format!(" genus={}", v.genus));
            }
            out.push('\n');
        }
        for &(a, b) in &self.edges {
            out.push_str(&format!(
                "edge {} {}\n",
                self.vertices[a].id, self.vertices[b].id
            ));
        }
        out
    }
}

fn is_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut adjacency = vec![Vec::new(); n];
    for &(a, b) in edges {
        adjacency[a].push(b);
        adjacency[b].push(a);
    }
    let mut visited = vec![false; n];
    let mut stack = vec![0];
    visited[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adjacency[v] {
            if !visited[w] {
                visited[w] = true;
                stack.push(w);
            }
        }
    }
    visited.into_iter().all(|x| x)
}

/// Parses the graph file format:
///
/// ```text
/// # comment
/// vertex <id> self=<int> [genus=<uint>]
/// edge <id> <id>
/// ```
///
/// Edges may reference vertices declared later in the file.
pub fn parse_dual_graph(text: &str) -> Result<DualGraph, GraphError> {
    let mut vertices = Vec::new();
    let mut pending_edges = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = content.split_whitespace();
        let Some(directive) = tokens.next() else {
            continue;
        };
        match directive {
            "vertex" => {
                let id = tokens.next().ok_or_else(|| GraphError::Malformed {
                    line,
                    message: "vertex directive without id".into(),
                })?;
                let mut self_intersection = None;
                let mut genus = 0u32;
                for field in tokens {
                    let (key, value) =
                        field.split_once('=').ok_or_else(|| GraphError::Malformed {
                            line,
                            message: format!("expected key=value, found \"{field}\""),
                        })?;
                    let bad_int = || GraphError::InvalidInteger {
                        line,
                        field: key.to_string(),
                        value: value.to_string(),
                    };
                    match key {
                        "self" => {
                            self_intersection = Some(value.parse::<i64>().map_err(|_| bad_int())?)
                        }
                        "genus" => genus = value.parse::<u32>().map_err(|_| bad_int())?,
                        _ => {
                            return Err(GraphError::Malformed {
                                line,
                                message: format!("unknown vertex field \"{key}\""),
                            })
                        }
                    }
                }
                let self_intersection =
                    self_intersection.ok_or_else(|| GraphError::MissingSelfIntersection {
                        line,
                        id: id.to_string(),
                    })?;
                vertices.push(Vertex::new(id, self_intersection, genus));
            }
            "edge" => {
                let ends: Vec<&str> = tokens.collect();
                if ends.len() != 2 {
                    return Err(GraphError::Malformed {
                        line,
                        message: format!("edge needs exactly two vertex ids, found {}", ends.len()),
                    });
                }
                pending_edges.push((line, ends[0].to_string(), ends[1].to_string()));
            }
            other => {
                return Err(GraphError::Malformed {
                    line,
                    message: format!("unknown directive \"{other}\""),
                })
            }
        }
    }

    let lookup = |line: usize, id: &str| {
        vertices
            .iter()
            .position(|v: &Vertex| v.id == id)
            .ok_or_else(|| GraphError::UnknownVertex {
                line,
                id: id.to_string(),
            })
    };
    let edges = pending_edges
        .iter()
        .map(|(line, a, b)| Ok((lookup(*line, a)?, lookup(*line, b)?)))
        .collect::<Result<Vec<_>, GraphError>>()?;
    DualGraph::new(vertices, edges)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AdeFamily {
    A,
    D,
    E,
}

/// A rational double point type `A_k`, `D_k` or `E_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AdeType {
    family: AdeFamily,
    k: u32,
}

impl AdeType {
    pub fn new(family: AdeFamily, k: u32) -> Result<Self, GraphError> {
        let ok = match family {
            AdeFamily::A => k >= 1,
            AdeFamily::D => k >= 4,
            AdeFamily::E => (6..=8).contains(&k),
        };
        if !ok {
            let need = match family {
                AdeFamily::A => "k >= 1",
                AdeFamily::D => "k >= 4",
                AdeFamily::E => "k in {6, 7, 8}",
            };
            return Err(GraphError::InvalidParameter(format!(
                "{family:?}{k} is not a Dynkin type ({family:?} requires {need})"
            )));
        }
        Ok(Self { family, k })
    }

    pub fn family(&self) -> AdeFamily {
        self.family
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Every supported type with at most `max_k` vertices, in the order
    /// A_1.., D_4.., E_6, E_7, E_8.
    pub fn all_up_to(max_k: u32) -> Vec<AdeType> {
        let a = (1..=max_k).map(|k| AdeType {
            family: AdeFamily::A,
            k,
        });
        let d = (4..=max_k).map(|k| AdeType {
            family: AdeFamily::D,
            k,
        });
        let e = (6..=max_k.min(8)).map(|k| AdeType {
            family: AdeFamily::E,
            k,
        });
        a.chain(d).chain(e).collect()
    }
}

impl fmt::Display for AdeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.k)
    }
}

impl FromStr for AdeType {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => AdeFamily::A,
            Some('D') => AdeFamily::D,
            Some('E') => AdeFamily::E,
            _ => {
                return Err(GraphError::InvalidParameter(format!(
                    "\"{s}\" is not of the form A<k>, D<k> or E<k>"
                )))
            }
        };
        let k = chars
            .as_str()
            .parse::<u32>()
            .map_err(|_| GraphError::InvalidParameter(format!("\"{s}\" has no valid index k")))?;
        AdeType::new(family, k)
    }
}

/// The Dynkin diagram of the given type, every vertex a rational
/// (-2)-curve.
///
/// Vertex order: `A_k` is the chain; `D_k` lists the branch vertex first,
/// then its two short legs, then the long arm outward; `E_k` is the chain
/// of length `k - 1` followed by the branch vertex attached to the third
/// chain vertex.
pub fn build_ade(ty: AdeType) -> DualGraph {
    let k = ty.k as usize;
    let vertices: Vec<Vertex> = (1..=k)
        .map(|i| Vertex::rational(format!("e{i}"), -2))
        .collect();
    let edges: Vec<(usize, usize)> = match ty.family {
        AdeFamily::A => (1..k).map(|i| (i - 1, i)).collect(),
        AdeFamily::D => {
            let mut e = vec![(0, 1), (0, 2)];
            if k > 3 {
                e.push((0, 3));
            }
            e.extend((4..k).map(|i| (i - 1, i)));
            e
        }
        AdeFamily::E => {
            let mut e: Vec<(usize, usize)> = (1..k - 1).map(|i| (i - 1, i)).collect();
            e.push((2, k - 1));
            e
        }
    };
    DualGraph::new(vertices, edges).expect("Dynkin diagrams are negative definite")
}
