//! Ideal structure and K-theory of graph algebras of finite graphs.
//!
//! Gauge-invariant ideals correspond to hereditary saturated vertex sets.
//! Hereditary means closed forward along edges: if `v ∈ H` and `v → w` then
//! `w ∈ H`. Saturated means every vertex whose edges all land in `H` lies in `H`.
//! For a subquotient on the vertices `X`, with `A_X` the restricted adjacency
//! matrix, `K₀ = coker(A_Xᵀ − I)` and `K₁ = ker(A_Xᵀ − I)`.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::abelian::{cokernel, kernel, FgAbelianGroup, GroupHom};
use crate::kcrossed::{pv_crossed_product, CrossedProductK, KTheoryData};
use crate::matrix::IntMatrix;
use crate::poset::PosetDiagram;
use crate::{Error, Result};

/// A finite directed multigraph without sinks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    /// `adjacency[(v, w)]` = number of edges `v → w`.
    adjacency: IntMatrix,
}

impl Graph {
    pub fn new(vertices: Vec<String>, adjacency: IntMatrix) -> Result<Self> {
        let n = vertices.len();
        if adjacency.rows() != n || adjacency.cols() != n {
            return Err(Error::InvalidGraph(format!(
                "adjacency is {}x{} for {n} vertices",
                adjacency.rows(),
                adjacency.cols()
            )));
        }
        let mut seen = BTreeSet::new();
        for name in &vertices {
            if !seen.insert(name.as_str()) {
                return Err(Error::InvalidGraph(format!("duplicate vertex name {name:?}")));
            }
        }
        if adjacency.entries().iter().any(Signed::is_negative) {
            return Err(Error::InvalidGraph("negative edge multiplicity".into()));
        }
        if let Some(v) = (0..n).find(|&v| adjacency.row(v).iter().all(Zero::is_zero)) {
            return Err(Error::InvalidGraph(format!("vertex {} is a sink", vertices[v])));
        }
        Ok(Self { vertices, adjacency })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn adjacency(&self) -> &IntMatrix {
        &self.adjacency
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn has_edge(&self, v: usize, w: usize) -> bool {
        !self.adjacency[(v, w)].is_zero()
    }

    pub fn successors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&w| self.has_edge(v, w))
    }

    /// Looks up vertices by name.
    pub fn vertex_set<'a, I: IntoIterator<Item = &'a str>>(&self, names: I) -> Result<VertexSet> {
        names
            .into_iter()
            .map(|name| {
                self.index_of(name).ok_or_else(|| Error::InvalidGraph(format!("unknown vertex {name:?}")))
            })
            .collect()
    }

    /// Braced, comma-separated vertex names, e.g. `{v2,v4}`.
    pub fn label(&self, s: &VertexSet) -> String {
        let names: Vec<&str> = s.iter().map(|v| self.vertices[v].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }

    /// Vertices reachable from each vertex by a path of length at least one.
    pub fn reachability(&self) -> Vec<BTreeSet<usize>> {
        (0..self.len())
            .map(|start| {
                let mut seen = BTreeSet::new();
                let mut queue: VecDeque<usize> = self.successors(start).collect();
                while let Some(v) = queue.pop_front() {
                    if seen.insert(v) {
                        queue.extend(self.successors(v));
                    }
                }
                seen
            })
            .collect()
    }

    fn check(&self, s: &VertexSet) -> Result<()> {
        match s.iter().find(|&v| v >= self.len()) {
            Some(v) => Err(Error::InvalidGraph(format!("vertex index {v} out of range"))),
            None => Ok(()),
        }
    }
}

/// A set of vertex indices, ordered by size and then lexicographically.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct VertexSet(BTreeSet<usize>);

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn full(n: usize) -> Self {
        (0..n).collect()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(&v)
    }

    pub fn insert(&mut self, v: usize) -> bool {
        self.0.insert(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn difference(&self, other: &Self) -> Self {
        Self(self.0.difference(&other.0).copied().collect())
    }

    pub fn intersection(&self, other: &Self) -> Self {
        Self(self.0.intersection(&other.0).copied().collect())
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.iter().cmp(other.0.iter()))
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn is_hereditary(g: &Graph, s: &VertexSet) -> bool {
    s.iter().all(|v| g.successors(v).all(|w| s.contains(w)))
}

pub fn is_saturated(g: &Graph, s: &VertexSet) -> bool {
    (0..g.len()).all(|v| s.contains(v) || g.successors(v).any(|w| !s.contains(w)))
}

pub fn is_hereditary_saturated(g: &Graph, s: &VertexSet) -> bool {
    is_hereditary(g, s) && is_saturated(g, s)
}

/// Smallest hereditary saturated set containing `s`.
pub fn hereditary_saturated_closure(g: &Graph, s: &VertexSet) -> Result<VertexSet> {
    g.check(s)?;
    let mut h = s.clone();
    loop {
        let mut changed = false;
        let mut stack: Vec<usize> = h.iter().collect();
        while let Some(v) = stack.pop() {
            for w in g.successors(v) {
                if h.insert(w) {
                    stack.push(w);
                    changed = true;
                }
            }
        }
        for v in 0..g.len() {
            if !h.contains(v) && g.successors(v).all(|w| h.contains(w)) {
                h.insert(v);
                changed = true;
            }
        }
        if !changed {
            return Ok(h);
        }
    }
}

/// Every hereditary saturated set, sorted by size and then lexicographically.
///
/// Generated from the closure of `∅` by repeatedly adding one vertex and
/// closing again; every closed set is reached this way since each one is the
/// closure of a chain of its own elements.
pub fn enumerate_hereditary_saturated(g: &Graph) -> Vec<VertexSet> {
    let bottom = hereditary_saturated_closure(g, &VertexSet::new()).expect("empty set is in range");
    let mut found = BTreeSet::new();
    let mut queue = VecDeque::new();
    found.insert(bottom.clone());
    queue.push_back(bottom);
    while let Some(h) = queue.pop_front() {
        for v in (0..g.len()).filter(|&v| !h.contains(v)) {
            let mut bigger = h.clone();
            bigger.insert(v);
            let closed = hereditary_saturated_closure(g, &bigger).expect("indices in range");
            if found.insert(closed.clone()) {
                queue.push_back(closed);
            }
        }
    }
    found.into_iter().collect()
}

/// Hasse diagram of the hereditary saturated sets under inclusion.
pub fn ideal_lattice_hasse(g: &Graph) -> PosetDiagram {
    let family = enumerate_hereditary_saturated(g);
    let labels = family.iter().map(|s| g.label(s)).collect();
    PosetDiagram::from_order(labels, |a, b| family[a].is_subset(&family[b]))
}

/// Strongly connected components, ordered by their smallest vertex.
pub fn strongly_connected_components(g: &Graph) -> Vec<Vec<usize>> {
    let reach = g.reachability();
    let mut assigned = vec![false; g.len()];
    let mut out = Vec::new();
    for v in 0..g.len() {
        if assigned[v] {
            continue;
        }
        let comp: Vec<usize> =
            (v..g.len()).filter(|&w| w == v || (reach[v].contains(&w) && reach[w].contains(&v))).collect();
        for &w in &comp {
            assigned[w] = true;
        }
        out.push(comp);
    }
    out
}

/// Primitive ideal space as a poset of strongly connected components, with
/// `a ≤ b` iff `b` reaches `a`. Covers are `(lower, upper)`.
pub fn prim_poset(g: &Graph) -> Result<PosetDiagram> {
    let reach = g.reachability();
    if let Some(v) = (0..g.len()).find(|&v| !reach[v].contains(&v)) {
        return Err(Error::PrimRequiresCycles { vertex: g.vertices[v].clone() });
    }
    let comps = strongly_connected_components(g);
    let labels = comps
        .iter()
        .map(|c| c.iter().map(|&v| g.vertices[v].as_str()).collect::<Vec<_>>().join(","))
        .collect();
    Ok(PosetDiagram::from_order(labels, |a, b| a == b || reach[comps[b][0]].contains(&comps[a][0])))
}

/// `(K₀, K₁)` of the subquotient `I_Z / I_Y`.
pub fn subquotient_k(g: &Graph, z: &VertexSet, y: &VertexSet) -> Result<(FgAbelianGroup, FgAbelianGroup)> {
    g.check(z)?;
    g.check(y)?;
    if !is_hereditary_saturated(g, z) {
        return Err(Error::NotHereditarySaturated { which: "Z" });
    }
    if !is_hereditary_saturated(g, y) {
        return Err(Error::NotHereditarySaturated { which: "Y" });
    }
    if !y.is_subset(z) {
        return Err(Error::NotNested);
    }
    let x: Vec<usize> = z.difference(y).iter().collect();
    // Implied by saturation of Y and heredity of Z when the graph has no sinks.
    if let Some(&v) = x.iter().find(|&&v| !x.iter().any(|&w| g.has_edge(v, w))) {
        return Err(Error::NoInternalEdge { vertex: g.vertices[v].clone() });
    }

    let n = x.len();
    let mut m = IntMatrix::zeros(n, n);
    for (i, &v) in x.iter().enumerate() {
        for (j, &w) in x.iter().enumerate() {
            // (A_Xᵀ − I)[j][i] = A[v][w] − δ
            m[(j, i)] = &g.adjacency[(v, w)] - BigInt::from(u8::from(i == j));
        }
    }
    let free = FgAbelianGroup::free(n);
    let h = GroupHom::new(free.clone(), free, m)?;
    Ok((cokernel(&h)?.group, kernel(&h)?.group))
}

/// K-theory of `⟨I_Z⟩ / ⟨I_Y⟩` in the crossed product by an endomorphism
/// acting trivially on K-theory.
pub fn crossed_subquotient_k(g: &Graph, z: &VertexSet, y: &VertexSet) -> Result<CrossedProductK> {
    let (k0, k1) = subquotient_k(g, z, y)?;
    pv_crossed_product(&KTheoryData::trivial_action(&k0, &k1))
}
