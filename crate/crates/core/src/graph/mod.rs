//! Finite graphs made of flags, vertices, a boundary map and an involution on flags.

pub mod canon;
pub mod morphism;
pub mod random;

pub use canon::{canonical_form, is_isomorphic, CanonicalForm, FlagStructure};
pub use morphism::{AtomizationDiagram, GraphMorphism, MorphismClass, MorphismDecomposition};

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

pub type FlagId = u32;
pub type VertexId = u32;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Graph {
    pub flags: Vec<FlagId>,
    pub vertices: Vec<VertexId>,
    #[serde(default)]
    pub boundary: BTreeMap<FlagId, VertexId>,
    #[serde(default)]
    pub involution: BTreeMap<FlagId, FlagId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize)]
pub struct ValidityReport {
    pub violations: Vec<String>,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, msg: impl Into<String>) {
        self.violations.push(msg.into());
    }

    pub fn extend(&mut self, prefix: &str, other: ValidityReport) {
        for v in other.violations {
            self.violations.push(format!("{prefix}{v}"));
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphInvariants {
    pub components: usize,
    pub edges: usize,
    pub tails: usize,
    pub first_betti: i64,
}

impl Graph {
    pub fn empty() -> Self {
        Graph::default()
    }

    /// Corolla on flags `0..n` at vertex 0.
    pub fn corolla(n: u32) -> Self {
        Graph::corolla_on(0, (0..n).collect())
    }

    pub fn corolla_on(v: VertexId, flags: Vec<FlagId>) -> Self {
        let mut flags = flags;
        flags.sort_unstable();
        Graph {
            boundary: flags.iter().map(|&f| (f, v)).collect(),
            involution: flags.iter().map(|&f| (f, f)).collect(),
            flags,
            vertices: vec![v],
        }
    }

    /// Builds a graph from per-flag vertex and partner lists; `partner[f] == f` marks a tail.
    pub fn from_lists(nv: u32, vertex_of: &[u32], partner: &[u32]) -> Self {
        let n = vertex_of.len() as u32;
        Graph {
            flags: (0..n).collect(),
            vertices: (0..nv).collect(),
            boundary: (0..n).map(|f| (f, vertex_of[f as usize])).collect(),
            involution: (0..n).map(|f| (f, partner[f as usize])).collect(),
        }
    }

    pub fn j(&self, f: FlagId) -> FlagId {
        self.involution.get(&f).copied().unwrap_or(f)
    }

    pub fn vertex(&self, f: FlagId) -> VertexId {
        self.boundary[&f]
    }

    pub fn is_tail(&self, f: FlagId) -> bool {
        self.j(f) == f
    }

    pub fn tails(&self) -> Vec<FlagId> {
        self.flags.iter().copied().filter(|&f| self.is_tail(f)).collect()
    }

    /// Edges as ordered pairs `(f, j f)` with `f < j f`.
    pub fn edges(&self) -> Vec<(FlagId, FlagId)> {
        self.flags.iter().filter_map(|&f| {
            let g = self.j(f);
            (f < g).then_some((f, g))
        }).collect()
    }

    pub fn flags_at(&self, v: VertexId) -> Vec<FlagId> {
        self.flags.iter().copied().filter(|f| self.boundary.get(f) == Some(&v)).collect()
    }

    pub fn is_corolla(&self) -> bool {
        self.vertices.len() == 1 && self.flags.iter().all(|&f| self.is_tail(f))
    }

    pub fn has_flag(&self, f: FlagId) -> bool {
        self.flags.binary_search(&f).is_ok()
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// Sorts id lists and drops identity entries that are implicit.
    pub fn normalized(mut self) -> Self {
        self.flags.sort_unstable();
        self.vertices.sort_unstable();
        let flags = self.flags.clone();
        for f in flags {
            self.involution.entry(f).or_insert(f);
        }
        self
    }

    pub fn validate(&self) -> ValidityReport {
        let mut r = ValidityReport::default();
        let fset: BTreeSet<FlagId> = self.flags.iter().copied().collect();
        let vset: BTreeSet<VertexId> = self.vertices.iter().copied().collect();
        if fset.len() != self.flags.len() {
            r.push("duplicate flag ids");
        }
        if vset.len() != self.vertices.len() {
            r.push("duplicate vertex ids");
        }
        if self.vertices.is_empty() && !self.flags.is_empty() {
            r.push("flags present but no vertices");
        }
        for &f in &self.flags {
            match self.boundary.get(&f) {
                None => r.push(format!("boundary undefined at flag {f}")),
                Some(v) if !vset.contains(v) => r.push(format!("flag {f} attached to unknown vertex {v}")),
                _ => {}
            }
            match self.involution.get(&f) {
                None => r.push(format!("involution undefined at flag {f}")),
                Some(g) if !fset.contains(g) => r.push(format!("involution sends flag {f} to unknown flag {g}")),
                Some(&g) => {
                    if self.involution.get(&g) != Some(&f) {
                        r.push(format!("involution is not an involution at flag {f}"));
                    }
                }
            }
        }
        for f in self.boundary.keys() {
            if !fset.contains(f) {
                r.push(format!("boundary defined at unknown flag {f}"));
            }
        }
        for f in self.involution.keys() {
            if !fset.contains(f) {
                r.push(format!("involution defined at unknown flag {f}"));
            }
        }
        r
    }

    /// Connected components as sorted vertex lists, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let idx: BTreeMap<VertexId, usize> = self.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut uf = UnionFind::new(self.vertices.len());
        for (a, b) in self.edges() {
            uf.union(idx[&self.vertex(a)], idx[&self.vertex(b)]);
        }
        let mut groups: BTreeMap<usize, Vec<VertexId>> = BTreeMap::new();
        for (i, &v) in self.vertices.iter().enumerate() {
            groups.entry(uf.find(i)).or_default().push(v);
        }
        let mut out: Vec<Vec<VertexId>> = groups.into_values().collect();
        out.sort();
        out
    }

    pub fn invariants(&self) -> GraphInvariants {
        let components = self.components().len();
        let edges = self.edges().len();
        GraphInvariants {
            components,
            edges,
            tails: self.tails().len(),
            first_betti: edges as i64 - self.vertices.len() as i64 + components as i64,
        }
    }

    /// Subgraph on a vertex set, with flags whose partner leaves the set turned into tails.
    pub fn induced(&self, vs: &BTreeSet<VertexId>) -> Graph {
        let flags: Vec<FlagId> = self.flags.iter().copied().filter(|f| vs.contains(&self.vertex(*f))).collect();
        let fs: BTreeSet<FlagId> = flags.iter().copied().collect();
        Graph {
            involution: flags.iter().map(|&f| {
                let g = self.j(f);
                (f, if fs.contains(&g) { g } else { f })
            }).collect(),
            boundary: flags.iter().map(|&f| (f, self.vertex(f))).collect(),
            flags,
            vertices: vs.iter().copied().collect(),
        }
    }

    /// Renames ids; maps must be injective on this graph's ids.
    pub fn relabel(&self, fmap: &dyn Fn(FlagId) -> FlagId, vmap: &dyn Fn(VertexId) -> VertexId) -> Graph {
        let mut flags: Vec<FlagId> = self.flags.iter().map(|&f| fmap(f)).collect();
        flags.sort_unstable();
        let mut vertices: Vec<VertexId> = self.vertices.iter().map(|&v| vmap(v)).collect();
        vertices.sort_unstable();
        Graph {
            flags,
            vertices,
            boundary: self.boundary.iter().map(|(&f, &v)| (fmap(f), vmap(v))).collect(),
            involution: self.involution.iter().map(|(&f, &g)| (fmap(f), fmap(g))).collect(),
        }
    }

    /// Renumbers flags and vertices to `0..n` preserving order.
    pub fn compacted(&self) -> (Graph, BTreeMap<FlagId, FlagId>, BTreeMap<VertexId, VertexId>) {
        let fm: BTreeMap<FlagId, FlagId> = self.flags.iter().enumerate().map(|(i, &f)| (f, i as FlagId)).collect();
        let vm: BTreeMap<VertexId, VertexId> = self.vertices.iter().enumerate().map(|(i, &v)| (v, i as VertexId)).collect();
        let g = self.relabel(&|f| fm[&f], &|v| vm[&v]);
        (g, fm, vm)
    }

    pub fn max_flag(&self) -> Option<FlagId> {
        self.flags.iter().max().copied()
    }

    pub fn max_vertex(&self) -> Option<VertexId> {
        self.vertices.iter().max().copied()
    }
}

/// Ordered disjoint union: the flags and vertices of `a` come first, each block keeps its order.
/// Returns the union and the id maps of both summands.
pub fn disjoint_union(a: &Graph, b: &Graph) -> (Graph, DisjointUnionMaps) {
    let (ca, fa, va) = a.compacted();
    let (cb, fb, vb) = b.compacted();
    let (nf, nv) = (ca.flags.len() as u32, ca.vertices.len() as u32);
    let cb = cb.relabel(&|f| f + nf, &|v| v + nv);
    let g = Graph {
        flags: ca.flags.iter().chain(&cb.flags).copied().collect(),
        vertices: ca.vertices.iter().chain(&cb.vertices).copied().collect(),
        boundary: ca.boundary.iter().chain(&cb.boundary).map(|(&x, &y)| (x, y)).collect(),
        involution: ca.involution.iter().chain(&cb.involution).map(|(&x, &y)| (x, y)).collect(),
    };
    let maps = DisjointUnionMaps {
        left_flags: fa,
        left_vertices: va,
        right_flags: fb.into_iter().map(|(k, v)| (k, v + nf)).collect(),
        right_vertices: vb.into_iter().map(|(k, v)| (k, v + nv)).collect(),
    };
    (g, maps)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisjointUnionMaps {
    pub left_flags: BTreeMap<FlagId, FlagId>,
    pub left_vertices: BTreeMap<VertexId, VertexId>,
    pub right_flags: BTreeMap<FlagId, FlagId>,
    pub right_vertices: BTreeMap<VertexId, VertexId>,
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Keeps the smaller root so representatives are deterministic.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_and_corolla_are_valid() {
        assert!(Graph::empty().validate().is_valid());
        let c = Graph::corolla(4);
        assert!(c.validate().is_valid());
        assert_eq!(c.invariants(), GraphInvariants { components: 1, edges: 0, tails: 4, first_betti: 0 });
    }

    #[test]
    fn loop_vertex() {
        let g = Graph::from_lists(1, &[0, 0], &[1, 0]);
        assert!(g.validate().is_valid());
        assert_eq!(g.invariants(), GraphInvariants { components: 1, edges: 1, tails: 0, first_betti: 1 });
    }

    #[test]
    fn isolated_vertex_is_a_component() {
        let g = Graph { flags: vec![], vertices: vec![0, 1], boundary: BTreeMap::new(), involution: BTreeMap::new() };
        assert_eq!(g.invariants().components, 2);
    }

    #[test]
    fn broken_involution_is_reported() {
        let mut g = Graph::from_lists(1, &[0, 0, 0], &[1, 2, 0]);
        assert!(!g.validate().is_valid());
        g.boundary.remove(&0);
        assert!(g.validate().violations.iter().any(|v| v.contains("boundary undefined")));
    }

    #[test]
    fn union_is_additive_and_unital() {
        let a = Graph::from_lists(2, &[0, 1, 1], &[1, 0, 2]);
        let b = Graph::corolla(3);
        let (u, _) = disjoint_union(&a, &b);
        assert_eq!(u.edges().len(), 1);
        assert_eq!(u.flags.len(), 6);
        let (e, _) = disjoint_union(&a, &Graph::empty());
        assert_eq!(e, a.compacted().0);
    }
}
