//! Graph morphisms: contravariant injective flag maps, surjective vertex maps and
//! virtual involutions pairing contracted tails.

use super::{FlagId, Graph, UnionFind, ValidityReport, VertexId};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphMorphism {
    pub source: Graph,
    pub target: Graph,
    /// Target flag ↦ source flag.
    pub flag_map: BTreeMap<FlagId, FlagId>,
    /// Source vertex ↦ target vertex.
    pub vertex_map: BTreeMap<VertexId, VertexId>,
    /// Symmetric pairing of contracted source tails; fixed points are omitted.
    #[serde(default)]
    pub virtual_involution: BTreeMap<FlagId, FlagId>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MorphismClass {
    Isomorphism,
    VirtualContraction,
    Contraction,
    FullContraction,
    Grafting,
    TotalGrafting,
    Merger,
    FullMerger,
    General,
}

impl fmt::Display for MorphismClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).unwrap();
        write!(f, "{}", s.as_str().unwrap())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismDecomposition {
    pub virtual_contraction: GraphMorphism,
    pub contraction: GraphMorphism,
    pub grafting: GraphMorphism,
    pub merger: GraphMorphism,
    /// Set when a virtual edge joins two distinct source vertices; the factors then run
    /// merger → virtual contraction → contraction → grafting.
    #[serde(default)]
    pub merger_first: bool,
}

impl MorphismDecomposition {
    /// Factors in composition order, first applied first.
    pub fn factors(&self) -> [&GraphMorphism; 4] {
        if self.merger_first {
            [&self.merger, &self.virtual_contraction, &self.contraction, &self.grafting]
        } else {
            [&self.virtual_contraction, &self.contraction, &self.grafting, &self.merger]
        }
    }

    pub fn recompose(&self) -> Result<GraphMorphism> {
        let [a, b, c, d] = self.factors();
        d.after(&c.after(&b.after(a)?)?)
    }
}

/// The square `h ∘ k = ∘_σ ∘ (∐ h_v)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomizationDiagram {
    /// `h_v : τ_v → σ_v` for each target vertex, in vertex order.
    pub parts: Vec<(VertexId, GraphMorphism)>,
    /// `∐ h_v`, carrying the ids of `τ` and `σ`.
    pub coproduct: GraphMorphism,
    /// `k : ∐ τ_v → τ`, identity on ids.
    pub k: GraphMorphism,
    /// `∘_σ : ∐ σ_v → σ`.
    pub total_grafting: GraphMorphism,
    /// Edges of `σ` whose preimages are tails of `τ`.
    pub grafted: Vec<(FlagId, FlagId)>,
    pub h: GraphMorphism,
}

impl AtomizationDiagram {
    pub fn commutes(&self) -> Result<bool> {
        Ok(self.h.after(&self.k)? == self.total_grafting.after(&self.coproduct)?)
    }
}

impl GraphMorphism {
    pub fn identity(g: &Graph) -> Self {
        GraphMorphism {
            source: g.clone(),
            target: g.clone(),
            flag_map: g.flags.iter().map(|&f| (f, f)).collect(),
            vertex_map: g.vertices.iter().map(|&v| (v, v)).collect(),
            virtual_involution: BTreeMap::new(),
        }
    }

    pub fn jh(&self, f: FlagId) -> FlagId {
        self.virtual_involution.get(&f).copied().unwrap_or(f)
    }

    pub fn image_flags(&self) -> BTreeSet<FlagId> {
        self.flag_map.values().copied().collect()
    }

    pub fn contracted_flags(&self) -> BTreeSet<FlagId> {
        let img = self.image_flags();
        self.source.flags.iter().copied().filter(|f| !img.contains(f)).collect()
    }

    /// Source flag ↦ target flag on the image.
    pub fn inverse_flag_map(&self) -> BTreeMap<FlagId, FlagId> {
        self.flag_map.iter().map(|(&s, &t)| (t, s)).collect()
    }

    pub fn validate(&self) -> ValidityReport {
        let mut r = ValidityReport::default();
        r.extend("source: ", self.source.validate());
        r.extend("target: ", self.target.validate());
        if !r.is_valid() {
            return r;
        }
        let (tau, sigma) = (&self.source, &self.target);
        // (i)
        let keys: BTreeSet<FlagId> = self.flag_map.keys().copied().collect();
        if keys != sigma.flags.iter().copied().collect() {
            r.push("(i) flag map must be defined exactly on the target flags");
        }
        for (&s, &t) in &self.flag_map {
            if !tau.has_flag(t) {
                r.push(format!("(i) flag map sends target flag {s} to unknown source flag {t}"));
            }
        }
        let img = self.image_flags();
        if img.len() != self.flag_map.len() {
            r.push("(i) flag map is not injective");
        }
        let vkeys: BTreeSet<VertexId> = self.vertex_map.keys().copied().collect();
        if vkeys != tau.vertices.iter().copied().collect() {
            r.push("(i) vertex map must be defined exactly on the source vertices");
        }
        let vimg: BTreeSet<VertexId> = self.vertex_map.values().copied().collect();
        if vimg != sigma.vertices.iter().copied().collect() {
            r.push("(i) vertex map is not surjective onto the target vertices");
        }
        if !r.is_valid() {
            return r;
        }
        // (ii)
        for &f in &tau.flags {
            if img.contains(&f) != img.contains(&tau.j(f)) {
                r.push(format!("(ii) image of the flag map is not invariant under the involution at flag {f}"));
            }
        }
        for (&a, &b) in &self.virtual_involution {
            if a == b {
                r.push(format!("(ii) virtual involution lists fixed point {a}"));
            } else if self.virtual_involution.get(&b) != Some(&a) {
                r.push(format!("(ii) virtual involution is not symmetric at flag {a}"));
            }
            if img.contains(&a) || !tau.has_flag(a) || !tau.is_tail(a) {
                r.push(format!("(ii) virtual involution must pair contracted tails, got flag {a}"));
            }
        }
        for &f in &tau.flags {
            if !img.contains(&f) && tau.is_tail(f) && !self.virtual_involution.contains_key(&f) {
                r.push(format!("(ii) contracted tail {f} is fixed by the virtual involution"));
            }
        }
        // (iii)
        for (&s, &t) in &self.flag_map {
            if self.vertex_map[&tau.vertex(t)] != sigma.vertex(s) {
                r.push(format!("(iii) vertex of source flag {t} does not map to the vertex of target flag {s}"));
            }
        }
        for &f in &tau.flags {
            if img.contains(&f) {
                continue;
            }
            let g = if tau.is_tail(f) { self.jh(f) } else { tau.j(f) };
            if tau.has_flag(g) && self.vertex_map[&tau.vertex(f)] != self.vertex_map[&tau.vertex(g)] {
                r.push(format!("(iii) ends of contracted edge ({f},{g}) have different images"));
            }
        }
        // (iv)
        let inv = self.inverse_flag_map();
        for (a, b) in tau.edges() {
            if let (Some(&sa), Some(&sb)) = (inv.get(&a), inv.get(&b)) {
                if sigma.j(sa) != sb {
                    r.push(format!("(iv) edge ({a},{b}) of the source is not sent to an edge"));
                }
            }
        }
        r
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &GraphMorphism) -> Result<GraphMorphism> {
        compose(self, f)
    }

    /// Tails of the source mapped onto edges of the target.
    pub fn grafted_pairs(&self) -> Vec<(FlagId, FlagId)> {
        let mut out = Vec::new();
        for (a, b) in self.target.edges() {
            let (fa, fb) = (self.flag_map[&a], self.flag_map[&b]);
            if self.source.is_tail(fa) {
                out.push((a, b));
            }
            debug_assert_eq!(self.source.is_tail(fa), self.source.is_tail(fb));
        }
        out
    }

    pub fn classify(&self) -> MorphismClass {
        let (tau, sigma) = (&self.source, &self.target);
        let inv = self.inverse_flag_map();
        let flags_bij = self.flag_map.len() == tau.flags.len();
        let verts_bij = tau.vertices.len() == sigma.vertices.len();
        let identifies_j = flags_bij && tau.flags.iter().all(|&f| inv[&tau.j(f)] == sigma.j(inv[&f]));
        if flags_bij && verts_bij && identifies_j {
            return MorphismClass::Isomorphism;
        }
        let contracted = self.contracted_flags();
        let tails_bij = {
            let tt: BTreeSet<FlagId> = tau.tails().into_iter().collect();
            let st: BTreeSet<FlagId> = sigma.tails().iter().map(|f| self.flag_map[f]).collect();
            tt == st
        };
        if tails_bij && self.fibers_connected_by_contracted_edges() {
            if sigma.edges().is_empty() && sigma.vertices.len() == tau.components().len() {
                return MorphismClass::FullContraction;
            }
            return MorphismClass::Contraction;
        }
        if flags_bij && verts_bij {
            if tau.edges().is_empty() {
                return MorphismClass::TotalGrafting;
            }
            return MorphismClass::Grafting;
        }
        if identifies_j {
            if sigma.vertices.len() == 1 {
                return MorphismClass::FullMerger;
            }
            return MorphismClass::Merger;
        }
        let restricted_j = tau
            .flags
            .iter()
            .filter(|f| !contracted.contains(f))
            .all(|&f| inv[&tau.j(f)] == sigma.j(inv[&f]));
        if contracted.iter().all(|&f| tau.is_tail(f)) && restricted_j && verts_bij {
            return MorphismClass::VirtualContraction;
        }
        MorphismClass::General
    }

    fn fibers_connected_by_contracted_edges(&self) -> bool {
        let tau = &self.source;
        let idx: BTreeMap<VertexId, usize> = tau.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut uf = UnionFind::new(tau.vertices.len());
        let contracted = self.contracted_flags();
        for (a, b) in tau.edges() {
            if contracted.contains(&a) {
                uf.union(idx[&tau.vertex(a)], idx[&tau.vertex(b)]);
            }
        }
        let mut rep: BTreeMap<VertexId, usize> = BTreeMap::new();
        for &v in &tau.vertices {
            let r = uf.find(idx[&v]);
            match rep.get(&self.vertex_map[&v]) {
                Some(&r0) if r0 != r => return false,
                _ => {
                    rep.insert(self.vertex_map[&v], r);
                }
            }
        }
        true
    }

    /// Factorization virtual contraction → contraction → grafting → merger when every virtual
    /// edge has both ends at one vertex; otherwise merger → virtual contraction → contraction → grafting.
    /// Intermediate vertices are named by the least vertex of their class.
    pub fn decompose(&self) -> MorphismDecomposition {
        let tau = &self.source;
        if self.virtual_involution.iter().any(|(a, b)| tau.vertex(*a) != tau.vertex(*b)) {
            self.decompose_merger_first()
        } else {
            self.decompose_standard()
        }
    }

    fn decompose_merger_first(&self) -> MorphismDecomposition {
        let tau = &self.source;
        let img = self.image_flags();
        let mut least: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        for &v in &tau.vertices {
            least.entry(self.vertex_map[&v]).or_insert(v);
        }
        let fiber: BTreeMap<VertexId, VertexId> = tau.vertices.iter().map(|&v| (v, least[&self.vertex_map[&v]])).collect();
        let mut mv: Vec<VertexId> = least.values().copied().collect();
        mv.sort_unstable();
        let merged = Graph {
            vertices: mv.clone(),
            boundary: tau.flags.iter().map(|&f| (f, fiber[&tau.vertex(f)])).collect(),
            ..tau.clone()
        };
        let ident_v: BTreeMap<VertexId, VertexId> = mv.iter().map(|&v| (v, v)).collect();
        let merger = GraphMorphism {
            source: tau.clone(),
            target: merged.clone(),
            flag_map: tau.flags.iter().map(|&f| (f, f)).collect(),
            vertex_map: fiber,
            virtual_involution: BTreeMap::new(),
        };
        let keep1: Vec<FlagId> =
            tau.flags.iter().copied().filter(|f| img.contains(f) || !tau.is_tail(*f)).collect();
        let no_virtual = Graph {
            flags: keep1.clone(),
            boundary: keep1.iter().map(|&f| (f, merged.vertex(f))).collect(),
            involution: keep1.iter().map(|&f| (f, tau.j(f))).collect(),
            vertices: mv.clone(),
        };
        let vc = GraphMorphism {
            source: merged,
            target: no_virtual.clone(),
            flag_map: keep1.iter().map(|&f| (f, f)).collect(),
            vertex_map: ident_v.clone(),
            virtual_involution: self.virtual_involution.clone(),
        };
        let keep2: Vec<FlagId> = keep1.iter().copied().filter(|f| img.contains(f)).collect();
        let contracted = Graph {
            flags: keep2.clone(),
            boundary: keep2.iter().map(|&f| (f, no_virtual.vertex(f))).collect(),
            involution: keep2.iter().map(|&f| (f, tau.j(f))).collect(),
            vertices: mv.clone(),
        };
        let con = GraphMorphism {
            source: no_virtual,
            target: contracted.clone(),
            flag_map: keep2.iter().map(|&f| (f, f)).collect(),
            vertex_map: ident_v,
            virtual_involution: BTreeMap::new(),
        };
        let graft = GraphMorphism {
            source: contracted,
            target: self.target.clone(),
            flag_map: self.flag_map.clone(),
            vertex_map: mv.iter().map(|&v| (v, self.vertex_map[&v])).collect(),
            virtual_involution: BTreeMap::new(),
        };
        MorphismDecomposition { virtual_contraction: vc, contraction: con, grafting: graft, merger, merger_first: true }
    }

    fn decompose_standard(&self) -> MorphismDecomposition {
        let tau = &self.source;
        let img = self.image_flags();
        let vtails: BTreeSet<FlagId> = tau.flags.iter().copied().filter(|f| !img.contains(f) && tau.is_tail(*f)).collect();
        // τ1: drop virtually contracted tails
        let keep1: Vec<FlagId> = tau.flags.iter().copied().filter(|f| !vtails.contains(f)).collect();
        let tau1 = Graph {
            flags: keep1.clone(),
            vertices: tau.vertices.clone(),
            boundary: keep1.iter().map(|&f| (f, tau.vertex(f))).collect(),
            involution: keep1.iter().map(|&f| (f, tau.j(f))).collect(),
        };
        let vc = GraphMorphism {
            source: tau.clone(),
            target: tau1.clone(),
            flag_map: keep1.iter().map(|&f| (f, f)).collect(),
            vertex_map: tau.vertices.iter().map(|&v| (v, v)).collect(),
            virtual_involution: self.virtual_involution.clone(),
        };
        // τ2: contract actual contracted edges
        let idx: BTreeMap<VertexId, usize> = tau.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut uf = UnionFind::new(tau.vertices.len());
        for (a, b) in tau1.edges() {
            if !img.contains(&a) {
                uf.union(idx[&tau.vertex(a)], idx[&tau.vertex(b)]);
            }
        }
        let class: BTreeMap<VertexId, VertexId> =
            tau.vertices.iter().map(|&v| (v, tau.vertices[uf.find(idx[&v])])).collect();
        let keep2: Vec<FlagId> = keep1.iter().copied().filter(|f| img.contains(f)).collect();
        let mut v2: Vec<VertexId> = class.values().copied().collect();
        v2.sort_unstable();
        v2.dedup();
        let tau2 = Graph {
            flags: keep2.clone(),
            vertices: v2.clone(),
            boundary: keep2.iter().map(|&f| (f, class[&tau.vertex(f)])).collect(),
            involution: keep2.iter().map(|&f| (f, tau.j(f))).collect(),
        };
        let con = GraphMorphism {
            source: tau1,
            target: tau2.clone(),
            flag_map: keep2.iter().map(|&f| (f, f)).collect(),
            vertex_map: class.clone(),
            virtual_involution: BTreeMap::new(),
        };
        // τ3: graft according to the target involution
        let inv = self.inverse_flag_map();
        let tau3 = Graph {
            involution: keep2.iter().map(|&f| (f, self.flag_map[&self.target.j(inv[&f])])).collect(),
            ..tau2.clone()
        };
        let graft = GraphMorphism {
            source: tau2,
            target: tau3.clone(),
            flag_map: keep2.iter().map(|&f| (f, f)).collect(),
            vertex_map: v2.iter().map(|&v| (v, v)).collect(),
            virtual_involution: BTreeMap::new(),
        };
        let merger = GraphMorphism {
            source: tau3,
            target: self.target.clone(),
            flag_map: self.flag_map.clone(),
            vertex_map: v2.iter().map(|&v| (v, self.vertex_map[&v])).collect(),
            virtual_involution: BTreeMap::new(),
        };
        MorphismDecomposition { virtual_contraction: vc, contraction: con, grafting: graft, merger, merger_first: false }
    }

    pub fn atomize(&self) -> AtomizationDiagram {
        let (tau, sigma) = (&self.source, &self.target);
        let img = self.image_flags();
        let split = Graph {
            involution: tau.flags.iter().map(|&f| (f, if img.contains(&f) { f } else { tau.j(f) })).collect(),
            ..tau.clone()
        };
        let corollas = Graph { involution: sigma.flags.iter().map(|&f| (f, f)).collect(), ..sigma.clone() };
        let mut parts = Vec::new();
        for &v in &sigma.vertices {
            let vs: BTreeSet<VertexId> = tau.vertices.iter().copied().filter(|w| self.vertex_map[w] == v).collect();
            let tv = split.induced(&vs);
            let sv = Graph::corolla_on(v, sigma.flags_at(v));
            let fset: BTreeSet<FlagId> = tv.flags.iter().copied().collect();
            parts.push((
                v,
                GraphMorphism {
                    flag_map: sv.flags.iter().map(|&f| (f, self.flag_map[&f])).collect(),
                    vertex_map: vs.iter().map(|&w| (w, v)).collect(),
                    virtual_involution: self
                        .virtual_involution
                        .iter()
                        .filter(|(a, _)| fset.contains(a))
                        .map(|(&a, &b)| (a, b))
                        .collect(),
                    source: tv,
                    target: sv,
                },
            ));
        }
        let coproduct = GraphMorphism {
            source: split.clone(),
            target: corollas.clone(),
            flag_map: self.flag_map.clone(),
            vertex_map: self.vertex_map.clone(),
            virtual_involution: self.virtual_involution.clone(),
        };
        let k = GraphMorphism {
            source: split,
            target: tau.clone(),
            flag_map: tau.flags.iter().map(|&f| (f, f)).collect(),
            vertex_map: tau.vertices.iter().map(|&v| (v, v)).collect(),
            virtual_involution: BTreeMap::new(),
        };
        AtomizationDiagram {
            parts,
            coproduct,
            k,
            total_grafting: total_grafting(sigma),
            grafted: self.grafted_pairs(),
            h: self.clone(),
        }
    }
}

/// `g ∘ f`; contracted flags of `g` whose preimages are tails become virtual pairs.
pub fn compose(g: &GraphMorphism, f: &GraphMorphism) -> Result<GraphMorphism> {
    if f.target != g.source {
        return Err(Error::InvalidInput("morphisms are not composable: target of the first is not the source of the second".into()));
    }
    let flag_map: BTreeMap<FlagId, FlagId> = g.flag_map.iter().map(|(&r, &s)| (r, f.flag_map[&s])).collect();
    let vertex_map: BTreeMap<VertexId, VertexId> = f.vertex_map.iter().map(|(&t, &s)| (t, g.vertex_map[&s])).collect();
    let mut pairs: Vec<(FlagId, FlagId)> = f.virtual_involution.iter().map(|(&a, &b)| (a, b)).collect();
    for (&a, &b) in &g.virtual_involution {
        pairs.push((f.flag_map[&a], f.flag_map[&b]));
    }
    let gimg = g.image_flags();
    for (a, b) in f.target.edges() {
        if !gimg.contains(&a) {
            let (ta, tb) = (f.flag_map[&a], f.flag_map[&b]);
            if f.source.is_tail(ta) {
                pairs.push((ta, tb));
                pairs.push((tb, ta));
            }
        }
    }
    let mut vi: BTreeMap<FlagId, FlagId> = BTreeMap::new();
    for (a, b) in pairs {
        if let Some(&prev) = vi.get(&a) {
            if prev != b {
                return Err(Error::Invariant(format!("virtual involutions conflict at flag {a}: paired with {prev} and {b}")));
            }
        }
        vi.insert(a, b);
    }
    let h = GraphMorphism { source: f.source.clone(), target: g.target.clone(), flag_map, vertex_map, virtual_involution: vi };
    let report = h.validate();
    if !report.is_valid() {
        return Err(Error::Invariant(format!("composite is not a valid morphism: {}", report.violations.join("; "))));
    }
    Ok(h)
}

/// `∘_τ : ∐ τ_v → τ`, the source being `τ` with every edge cut.
pub fn total_grafting(tau: &Graph) -> GraphMorphism {
    let source = Graph { involution: tau.flags.iter().map(|&f| (f, f)).collect(), ..tau.clone() };
    GraphMorphism {
        source,
        target: tau.clone(),
        flag_map: tau.flags.iter().map(|&f| (f, f)).collect(),
        vertex_map: tau.vertices.iter().map(|&v| (v, v)).collect(),
        virtual_involution: BTreeMap::new(),
    }
}

/// Contracts every edge; each component becomes a corolla named by its least vertex.
pub fn full_contraction(tau: &Graph) -> GraphMorphism {
    let comps = tau.components();
    let tails = tau.tails();
    let mut vertex_map = BTreeMap::new();
    for c in &comps {
        for &v in c {
            vertex_map.insert(v, c[0]);
        }
    }
    let target = Graph {
        flags: tails.clone(),
        vertices: comps.iter().map(|c| c[0]).collect(),
        boundary: tails.iter().map(|&f| (f, vertex_map[&tau.vertex(f)])).collect(),
        involution: tails.iter().map(|&f| (f, f)).collect(),
    };
    GraphMorphism {
        source: tau.clone(),
        target,
        flag_map: tails.iter().map(|&f| (f, f)).collect(),
        vertex_map,
        virtual_involution: BTreeMap::new(),
    }
}

/// Contracts the given edges; each contracted cluster keeps its least vertex id.
pub fn contract_edges(tau: &Graph, edges: &[(FlagId, FlagId)]) -> GraphMorphism {
    let idx: BTreeMap<VertexId, usize> = tau.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut uf = UnionFind::new(tau.vertices.len());
    let mut gone = BTreeSet::new();
    for &(a, b) in edges {
        uf.union(idx[&tau.vertex(a)], idx[&tau.vertex(b)]);
        gone.insert(a);
        gone.insert(b);
    }
    let vertex_map: BTreeMap<VertexId, VertexId> = tau.vertices.iter().map(|&v| (v, tau.vertices[uf.find(idx[&v])])).collect();
    let flags: Vec<FlagId> = tau.flags.iter().copied().filter(|f| !gone.contains(f)).collect();
    let vertices: BTreeSet<VertexId> = vertex_map.values().copied().collect();
    let target = Graph {
        boundary: flags.iter().map(|&f| (f, vertex_map[&tau.vertex(f)])).collect(),
        involution: flags.iter().map(|&f| (f, tau.j(f))).collect(),
        flags: flags.clone(),
        vertices: vertices.into_iter().collect(),
    };
    GraphMorphism {
        source: tau.clone(),
        target,
        flag_map: flags.iter().map(|&f| (f, f)).collect(),
        vertex_map,
        virtual_involution: BTreeMap::new(),
    }
}

/// Merges all vertices into the least one; the empty graph maps to itself.
pub fn full_merger(tau: &Graph) -> GraphMorphism {
    let Some(&v0) = tau.vertices.first() else { return GraphMorphism::identity(tau) };
    let target = Graph { vertices: vec![v0], boundary: tau.flags.iter().map(|&f| (f, v0)).collect(), ..tau.clone() };
    GraphMorphism {
        source: tau.clone(),
        target,
        flag_map: tau.flags.iter().map(|&f| (f, f)).collect(),
        vertex_map: tau.vertices.iter().map(|&v| (v, v0)).collect(),
        virtual_involution: BTreeMap::new(),
    }
}

/// `con_τ`: full contraction followed by full merger.
pub fn contraction_to_corolla(tau: &Graph) -> GraphMorphism {
    let c = full_contraction(tau);
    let m = full_merger(&c.target);
    m.after(&c).expect("full contraction and full merger compose")
}

/// Heredity with every target edge reconnected.
pub fn assemble(sigma: &Graph, parts: &[(VertexId, GraphMorphism)]) -> Result<GraphMorphism> {
    assemble_with(sigma, parts, &[])
}

/// Heredity: glue `h_v : τ_v → σ_v` along the edges of `σ`, leaving `grafted` edges as tail pairs.
pub fn assemble_with(sigma: &Graph, parts: &[(VertexId, GraphMorphism)], grafted: &[(FlagId, FlagId)]) -> Result<GraphMorphism> {
    let by_v: BTreeMap<VertexId, &GraphMorphism> = parts.iter().map(|(v, h)| (*v, h)).collect();
    if by_v.len() != parts.len() || by_v.keys().copied().collect::<Vec<_>>() != sigma.vertices {
        return Err(Error::InvalidInput("assembly needs exactly one part per target vertex".into()));
    }
    let mut tau = Graph::empty();
    let mut flag_map = BTreeMap::new();
    let mut vertex_map = BTreeMap::new();
    let mut vi = BTreeMap::new();
    for (&v, h) in &by_v {
        let expected = Graph::corolla_on(v, sigma.flags_at(v));
        if h.target != expected {
            return Err(Error::InvalidInput(format!("part at vertex {v} does not target the corolla of that vertex")));
        }
        let report = h.validate();
        if !report.is_valid() {
            return Err(Error::InvalidInput(format!("part at vertex {v} is invalid: {}", report.violations.join("; "))));
        }
        for &f in &h.source.flags {
            if tau.boundary.insert(f, h.source.vertex(f)).is_some() {
                return Err(Error::InvalidInput(format!("flag id {f} used by two parts")));
            }
            tau.involution.insert(f, h.source.j(f));
            tau.flags.push(f);
        }
        for &w in &h.source.vertices {
            if vertex_map.insert(w, v).is_some() {
                return Err(Error::InvalidInput(format!("vertex id {w} used by two parts")));
            }
            tau.vertices.push(w);
        }
        flag_map.extend(h.flag_map.iter().map(|(&a, &b)| (a, b)));
        vi.extend(h.virtual_involution.iter().map(|(&a, &b)| (a, b)));
    }
    let skip: BTreeSet<FlagId> = grafted.iter().flat_map(|&(a, b)| [a, b]).collect();
    for (a, b) in sigma.edges() {
        if !skip.contains(&a) {
            let (ta, tb) = (flag_map[&a], flag_map[&b]);
            tau.involution.insert(ta, tb);
            tau.involution.insert(tb, ta);
        }
    }
    tau.flags.sort_unstable();
    tau.vertices.sort_unstable();
    let h = GraphMorphism { source: tau, target: sigma.clone(), flag_map, vertex_map, virtual_involution: vi };
    let report = h.validate();
    if !report.is_valid() {
        return Err(Error::Invariant(format!("assembled morphism is invalid: {}", report.violations.join("; "))));
    }
    Ok(h)
}

/// `f ⊔ g` under the ordered disjoint-union convention.
pub fn disjoint_union_morphisms(f: &GraphMorphism, g: &GraphMorphism) -> GraphMorphism {
    let (src, ms) = super::disjoint_union(&f.source, &g.source);
    let (tgt, mt) = super::disjoint_union(&f.target, &g.target);
    let mut flag_map = BTreeMap::new();
    for (a, b) in &f.flag_map {
        flag_map.insert(mt.left_flags[a], ms.left_flags[b]);
    }
    for (a, b) in &g.flag_map {
        flag_map.insert(mt.right_flags[a], ms.right_flags[b]);
    }
    let mut vertex_map = BTreeMap::new();
    for (a, b) in &f.vertex_map {
        vertex_map.insert(ms.left_vertices[a], mt.left_vertices[b]);
    }
    for (a, b) in &g.vertex_map {
        vertex_map.insert(ms.right_vertices[a], mt.right_vertices[b]);
    }
    let mut vi = BTreeMap::new();
    for (a, b) in &f.virtual_involution {
        vi.insert(ms.left_flags[a], ms.left_flags[b]);
    }
    for (a, b) in &g.virtual_involution {
        vi.insert(ms.right_flags[a], ms.right_flags[b]);
    }
    GraphMorphism { source: src, target: tgt, flag_map, vertex_map, virtual_involution: vi }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Two vertices 0,1 joined by edge (0,1); tails 2 at vertex 0 and 3 at vertex 1.
    fn dumbbell() -> Graph {
        Graph::from_lists(2, &[0, 1, 0, 1], &[1, 0, 2, 3])
    }

    #[test]
    fn identity_is_valid_isomorphism() {
        let g = dumbbell();
        let id = GraphMorphism::identity(&g);
        assert!(id.is_valid());
        assert_eq!(id.classify(), MorphismClass::Isomorphism);
    }

    #[test]
    fn edge_contraction_onto_corolla() {
        let h = contraction_to_corolla(&dumbbell());
        assert!(h.is_valid(), "{:?}", h.validate());
        assert_eq!(h.target, Graph::corolla_on(0, vec![2, 3]));
        assert_eq!(h.classify(), MorphismClass::FullContraction);
    }

    #[test]
    fn grafting_two_tails() {
        let src = Graph::from_lists(2, &[0, 1], &[0, 1]);
        let tgt = Graph::from_lists(2, &[0, 1], &[1, 0]);
        let h = GraphMorphism {
            source: src,
            target: tgt,
            flag_map: [(0, 0), (1, 1)].into(),
            vertex_map: [(0, 0), (1, 1)].into(),
            virtual_involution: BTreeMap::new(),
        };
        assert!(h.is_valid());
        assert_eq!(h.classify(), MorphismClass::TotalGrafting);
        assert_eq!(h.grafted_pairs(), vec![(0, 1)]);
    }

    #[test]
    fn contraction_after_grafting_contracts_the_union() {
        // path 0 -e- 1 -e- 2 with the second link as two loose tails first
        let src = Graph::from_lists(3, &[0, 1, 1, 2], &[1, 0, 2, 3]);
        let grafted = Graph::from_lists(3, &[0, 1, 1, 2], &[1, 0, 3, 2]);
        let f = GraphMorphism {
            source: src.clone(),
            target: grafted.clone(),
            flag_map: (0..4).map(|i| (i, i)).collect(),
            vertex_map: (0..3).map(|i| (i, i)).collect(),
            virtual_involution: BTreeMap::new(),
        };
        let g = contraction_to_corolla(&grafted);
        let h = g.after(&f).unwrap();
        assert_eq!(h.contracted_flags(), (0..4).collect());
        assert_eq!(h.virtual_involution, BTreeMap::from([(2, 3), (3, 2)]));
        assert!(h.is_valid());
    }

    #[test]
    fn successive_one_edge_contractions() {
        let path = Graph::from_lists(3, &[0, 1, 1, 2, 0, 2], &[1, 0, 3, 2, 4, 5]);
        let e1 = Graph {
            flags: vec![2, 3, 4, 5],
            vertices: vec![0, 2],
            boundary: [(2, 0), (3, 2), (4, 0), (5, 2)].into(),
            involution: [(2, 3), (3, 2), (4, 4), (5, 5)].into(),
        };
        let f = GraphMorphism {
            source: path.clone(),
            target: e1.clone(),
            flag_map: [(2, 2), (3, 3), (4, 4), (5, 5)].into(),
            vertex_map: [(0, 0), (1, 0), (2, 2)].into(),
            virtual_involution: BTreeMap::new(),
        };
        assert!(f.is_valid(), "{:?}", f.validate());
        let g = contraction_to_corolla(&e1);
        let direct = contraction_to_corolla(&path);
        assert_eq!(g.after(&f).unwrap(), direct);
    }

    #[test]
    fn decomposition_of_isomorphism_and_atomization() {
        let g = dumbbell();
        let iso = GraphMorphism {
            source: g.clone(),
            target: g.relabel(&|f| f + 10, &|v| 1 - v),
            flag_map: (0..4).map(|f| (f + 10, f)).collect(),
            vertex_map: [(0, 1), (1, 0)].into(),
            virtual_involution: BTreeMap::new(),
        };
        assert!(iso.is_valid());
        let d = iso.decompose();
        assert!(d.virtual_contraction.flag_map.iter().all(|(a, b)| a == b));
        assert_eq!(d.merger, iso);
        assert_eq!(d.recompose().unwrap(), iso);

        let h = contraction_to_corolla(&g);
        let at = h.atomize();
        assert!(at.commutes().unwrap());
        assert_eq!(at.parts.len(), 1);
        assert_eq!(at.parts[0].1.classify(), MorphismClass::FullContraction);
        let back = assemble_with(&h.target, &at.parts, &at.grafted).unwrap();
        assert_eq!(back, h);
    }

    #[test]
    fn total_grafting_cuts_loops() {
        let g = Graph::from_lists(1, &[0, 0, 0], &[1, 0, 2]);
        let t = total_grafting(&g);
        assert!(t.is_valid());
        assert_eq!(t.source.tails().len(), 3);
        assert_eq!(t.source.vertices.len(), 1);
    }

    #[test]
    fn two_components_are_merged() {
        let (g, _) = super::super::disjoint_union(&dumbbell(), &Graph::corolla(2));
        let h = contraction_to_corolla(&g);
        assert!(h.is_valid());
        assert!(h.target.is_corolla());
        assert_eq!(h.target.flags.len(), 4);
        assert_eq!(h.classify(), MorphismClass::General);
        let c = full_contraction(&g);
        assert_eq!(c.classify(), MorphismClass::FullContraction);
        assert_eq!(full_merger(&c.target).classify(), MorphismClass::FullMerger);
    }
}
