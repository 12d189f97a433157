//! Labeled graphs: orientations, genera, colors and cyclic orders on top of plain graphs.

pub mod axioms;
pub mod preset;

pub use preset::{Caps, GammaPreset, Signature};

use crate::error::{Error, Result};
use crate::graph::canon::{isomorphism, FlagStructure};
use crate::graph::morphism::GraphMorphism;
use crate::graph::{FlagId, Graph, UnionFind, ValidityReport, VertexId};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    In,
    Out,
}

impl Orientation {
    pub fn flip(self) -> Self {
        match self {
            Orientation::In => Orientation::Out,
            Orientation::Out => Orientation::In,
        }
    }
}

/// Empty maps mean the labeling kind is absent.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Labeling {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub orientation: BTreeMap<FlagId, Orientation>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub genus: BTreeMap<VertexId, u32>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub color: BTreeMap<FlagId, String>,
    /// Cyclic successor of each flag among the flags of its vertex.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub cyclic: BTreeMap<FlagId, FlagId>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LabelVariant {
    None,
    Oriented,
    Directed,
    Modular,
    Colored,
    Cyclic,
    Composite,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct LabeledGraph {
    #[serde(flatten)]
    pub graph: Graph,
    #[serde(flatten)]
    pub labels: Labeling,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledMorphism {
    pub morphism: GraphMorphism,
    pub source_labels: Labeling,
    pub target_labels: Labeling,
}

impl LabeledMorphism {
    pub fn source(&self) -> LabeledGraph {
        LabeledGraph { graph: self.morphism.source.clone(), labels: self.source_labels.clone() }
    }

    pub fn target(&self) -> LabeledGraph {
        LabeledGraph { graph: self.morphism.target.clone(), labels: self.target_labels.clone() }
    }

    pub fn identity(g: &LabeledGraph) -> Self {
        LabeledMorphism {
            morphism: GraphMorphism::identity(&g.graph),
            source_labels: g.labels.clone(),
            target_labels: g.labels.clone(),
        }
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &LabeledMorphism) -> Result<LabeledMorphism> {
        if f.target_labels != self.source_labels {
            return Err(Error::InvalidInput("labelings do not match at the composition point".into()));
        }
        Ok(LabeledMorphism {
            morphism: self.morphism.after(&f.morphism)?,
            source_labels: f.source_labels.clone(),
            target_labels: self.target_labels.clone(),
        })
    }
}

impl LabeledGraph {
    pub fn plain(graph: Graph) -> Self {
        LabeledGraph { graph, labels: Labeling::default() }
    }

    pub fn variant(&self) -> LabelVariant {
        let l = &self.labels;
        let kinds = [!l.orientation.is_empty(), !l.genus.is_empty(), !l.color.is_empty(), !l.cyclic.is_empty()];
        match kinds.iter().filter(|&&k| k).count() {
            0 => LabelVariant::None,
            1 if kinds[0] => {
                if self.has_oriented_wheel().is_none() {
                    LabelVariant::Directed
                } else {
                    LabelVariant::Oriented
                }
            }
            1 if kinds[1] => LabelVariant::Modular,
            1 if kinds[2] => LabelVariant::Colored,
            1 => LabelVariant::Cyclic,
            _ => LabelVariant::Composite,
        }
    }

    pub fn orientation(&self, f: FlagId) -> Option<Orientation> {
        self.labels.orientation.get(&f).copied()
    }

    pub fn genus_of(&self, v: VertexId) -> u32 {
        self.labels.genus.get(&v).copied().unwrap_or(0)
    }

    /// Checks the graph and every present labeling kind.
    pub fn validate(&self) -> ValidityReport {
        let mut r = self.graph.validate();
        if !r.is_valid() {
            return r;
        }
        let g = &self.graph;
        let l = &self.labels;
        if !l.orientation.is_empty() {
            for &f in &g.flags {
                match l.orientation.get(&f) {
                    None => r.push(format!("orientation missing at flag {f}")),
                    Some(o) if !g.is_tail(f) && l.orientation.get(&g.j(f)) == Some(o) => {
                        r.push(format!("both halves of the edge at flag {f} carry the same orientation"))
                    }
                    _ => {}
                }
            }
        }
        if !l.genus.is_empty() {
            for &v in &g.vertices {
                if !l.genus.contains_key(&v) {
                    r.push(format!("genus missing at vertex {v}"));
                }
            }
        }
        if !l.color.is_empty() {
            for &f in &g.flags {
                match l.color.get(&f) {
                    None => r.push(format!("color missing at flag {f}")),
                    Some(c) if l.color.get(&g.j(f)) != Some(c) => {
                        r.push(format!("halves of the edge at flag {f} have different colors"))
                    }
                    _ => {}
                }
            }
        }
        if !l.cyclic.is_empty() {
            for &v in &g.vertices {
                let at = g.flags_at(v);
                if at.is_empty() {
                    continue;
                }
                let mut seen = BTreeSet::new();
                let mut f = at[0];
                let mut ok = true;
                for _ in 0..at.len() {
                    if !seen.insert(f) {
                        ok = false;
                        break;
                    }
                    match l.cyclic.get(&f) {
                        Some(&s) if g.boundary.get(&s) == Some(&v) => f = s,
                        _ => {
                            ok = false;
                            break;
                        }
                    }
                }
                if !ok || f != at[0] || seen.len() != at.len() {
                    r.push(format!("cyclic order at vertex {v} is not a single cycle on its flags"));
                }
            }
        }
        r
    }

    /// Directed edges `(source vertex, target vertex, out-flag)`.
    fn arrows(&self) -> Vec<(VertexId, VertexId, FlagId)> {
        let g = &self.graph;
        let mut out = Vec::new();
        for &f in &g.flags {
            if !g.is_tail(f) && self.orientation(f) == Some(Orientation::Out) {
                out.push((g.vertex(f), g.vertex(g.j(f)), f));
            }
        }
        out
    }

    /// An oriented wheel as a list of out-flags, found by depth-first search.
    pub fn has_oriented_wheel(&self) -> Option<Vec<FlagId>> {
        let g = &self.graph;
        let mut adj: BTreeMap<VertexId, Vec<(VertexId, FlagId)>> = BTreeMap::new();
        for (a, b, f) in self.arrows() {
            adj.entry(a).or_default().push((b, f));
        }
        #[derive(Clone, Copy, PartialEq)]
        enum St {
            New,
            Active,
            Done,
        }
        let mut state: BTreeMap<VertexId, St> = g.vertices.iter().map(|&v| (v, St::New)).collect();
        fn dfs(
            v: VertexId,
            adj: &BTreeMap<VertexId, Vec<(VertexId, FlagId)>>,
            state: &mut BTreeMap<VertexId, St>,
            stack: &mut Vec<(VertexId, FlagId)>,
        ) -> Option<Vec<FlagId>> {
            state.insert(v, St::Active);
            for &(w, f) in adj.get(&v).map(|x| x.as_slice()).unwrap_or(&[]) {
                match state[&w] {
                    St::Active => {
                        let start = stack.iter().position(|&(u, _)| u == w).unwrap_or(stack.len());
                        let mut cyc: Vec<FlagId> = stack[start..].iter().map(|&(_, f)| f).collect();
                        cyc.push(f);
                        return Some(cyc);
                    }
                    St::New => {
                        stack.push((v, f));
                        if let Some(c) = dfs(w, adj, state, stack) {
                            return Some(c);
                        }
                        stack.pop();
                    }
                    St::Done => {}
                }
            }
            state.insert(v, St::Done);
            None
        }
        for &v in &g.vertices {
            if state[&v] == St::New {
                if let Some(c) = dfs(v, &adj, &mut state, &mut Vec::new()) {
                    return Some(c);
                }
            }
        }
        None
    }

    /// Longest-path heights (sinks at 0, every arrow strictly decreasing) via Kahn's algorithm,
    /// or `None` when an oriented wheel blocks the order.
    pub fn directed_heights(&self) -> Option<BTreeMap<VertexId, u32>> {
        let g = &self.graph;
        let arrows = self.arrows();
        let mut outdeg: BTreeMap<VertexId, usize> = g.vertices.iter().map(|&v| (v, 0)).collect();
        let mut preds: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
        for &(a, b, _) in &arrows {
            *outdeg.get_mut(&a).unwrap() += 1;
            preds.entry(b).or_default().push(a);
        }
        let mut height: BTreeMap<VertexId, u32> = BTreeMap::new();
        let mut queue: VecDeque<VertexId> = outdeg.iter().filter(|(_, &d)| d == 0).map(|(&v, _)| v).collect();
        for &v in &queue {
            height.insert(v, 0);
        }
        while let Some(v) = queue.pop_front() {
            let h = height[&v];
            for &u in preds.get(&v).map(|x| x.as_slice()).unwrap_or(&[]) {
                let e = height.entry(u).or_insert(0);
                *e = (*e).max(h + 1);
                let d = outdeg.get_mut(&u).unwrap();
                *d -= 1;
                if *d == 0 {
                    queue.push_back(u);
                }
            }
        }
        (height.len() == g.vertices.len()).then_some(height)
    }

    pub fn is_directed(&self) -> DirectedWitness {
        match self.directed_heights() {
            Some(h) => DirectedWitness::Heights(h),
            None => DirectedWitness::Wheel(self.has_oriented_wheel().unwrap_or_default()),
        }
    }

    /// Genus `Σ g_v + b₁` of one connected component, chosen by index when the graph is disconnected.
    pub fn genus(&self, component: Option<usize>) -> Result<i64> {
        let comps = self.graph.components();
        let comp = match (component, comps.len()) {
            (None, 1) => &comps[0],
            (None, 0) => return Ok(0),
            (None, _) => return Err(Error::InvalidInput("graph is disconnected; select a component".into())),
            (Some(i), _) => comps.get(i).ok_or_else(|| Error::InvalidInput(format!("no component {i}")))?,
        };
        let vs: BTreeSet<VertexId> = comp.iter().copied().collect();
        let b1 = self.graph.induced(&vs).invariants().first_betti;
        Ok(comp.iter().map(|&v| self.genus_of(v) as i64).sum::<i64>() + b1)
    }

    pub fn restrict(&self, sub: &Graph) -> LabeledGraph {
        let l = &self.labels;
        let fs: BTreeSet<FlagId> = sub.flags.iter().copied().collect();
        let vs: BTreeSet<VertexId> = sub.vertices.iter().copied().collect();
        LabeledGraph {
            graph: sub.clone(),
            labels: Labeling {
                orientation: l.orientation.iter().filter(|(f, _)| fs.contains(f)).map(|(&f, &o)| (f, o)).collect(),
                genus: l.genus.iter().filter(|(v, _)| vs.contains(v)).map(|(&v, &g)| (v, g)).collect(),
                color: l.color.iter().filter(|(f, _)| fs.contains(f)).map(|(&f, c)| (f, c.clone())).collect(),
                cyclic: l.cyclic.iter().filter(|(f, _)| fs.contains(f)).map(|(&f, &s)| (f, s)).collect(),
            },
        }
    }

    pub fn relabel(&self, fmap: &dyn Fn(FlagId) -> FlagId, vmap: &dyn Fn(VertexId) -> VertexId) -> LabeledGraph {
        let l = &self.labels;
        LabeledGraph {
            graph: self.graph.relabel(fmap, vmap),
            labels: Labeling {
                orientation: l.orientation.iter().map(|(&f, &o)| (fmap(f), o)).collect(),
                genus: l.genus.iter().map(|(&v, &g)| (vmap(v), g)).collect(),
                color: l.color.iter().map(|(&f, c)| (fmap(f), c.clone())).collect(),
                cyclic: l.cyclic.iter().map(|(&f, &s)| (fmap(f), fmap(s))).collect(),
            },
        }
    }
}

/// Stable 32-bit code of a color name.
fn color_code(c: &str) -> u64 {
    c.bytes().fold(0x811c_9dc5u32, |h, b| (h ^ b as u32).wrapping_mul(0x0100_0193)) as u64
}

impl LabeledGraph {
    /// Colored flag structure with every label folded into colors; `extra` tags individual flags.
    pub fn flag_structure(&self, extra: &dyn Fn(FlagId) -> u64) -> (FlagStructure, Vec<FlagId>, Vec<VertexId>) {
        let (mut s, flags, vertices) = FlagStructure::of_graph(&self.graph);
        for (i, &f) in flags.iter().enumerate() {
            let o = match self.orientation(f) {
                None => 0,
                Some(Orientation::In) => 1,
                Some(Orientation::Out) => 2,
            };
            let c = self.labels.color.get(&f).map(|c| color_code(c) + 1).unwrap_or(0);
            s.flag_color[i] = (extra(f) << 34) | (c << 2) | o;
        }
        for (i, &v) in vertices.iter().enumerate() {
            s.vertex_color[i] = self.labels.genus.get(&v).copied().unwrap_or(0) as u64;
        }
        if !self.labels.cyclic.is_empty() {
            let idx: BTreeMap<FlagId, usize> = flags.iter().enumerate().map(|(i, &f)| (f, i)).collect();
            s.succ = Some(flags.iter().map(|f| idx[&self.labels.cyclic[f]]).collect());
        }
        (s, flags, vertices)
    }

    /// A label-preserving isomorphism `self → other` as id maps.
    pub fn isomorphism_to(&self, other: &LabeledGraph) -> Result<Option<(BTreeMap<FlagId, FlagId>, BTreeMap<VertexId, VertexId>)>> {
        let (sa, fa, va) = self.flag_structure(&|_| 0);
        let (sb, fb, vb) = other.flag_structure(&|_| 0);
        Ok(isomorphism(&sa, &sb)?.map(|(f, v)| {
            (
                f.iter().enumerate().map(|(i, &j)| (fa[i], fb[j])).collect(),
                v.iter().enumerate().map(|(i, &j)| (va[i], vb[j])).collect(),
            )
        }))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DirectedWitness {
    Heights(BTreeMap<VertexId, u32>),
    Wheel(Vec<FlagId>),
}

impl DirectedWitness {
    pub fn is_directed(&self) -> bool {
        matches!(self, DirectedWitness::Heights(_))
    }
}

pub fn is_stable(genus: u32, flags: usize) -> bool {
    2 * genus as i64 - 2 + flags as i64 > 0
}

/// Partner of a contracted source flag: its edge partner or its virtual partner.
fn contracted_partner(h: &GraphMorphism, f: FlagId) -> FlagId {
    if h.source.is_tail(f) {
        h.jh(f)
    } else {
        h.source.j(f)
    }
}

/// Target labels induced by `h` from source labels: transported orientations and colors,
/// genera `Σ g_v + b₁` of each fiber, and cyclic orders read around contracted flags.
pub fn push_forward_labels(h: &GraphMorphism, src: &Labeling) -> Labeling {
    let tau = &h.source;
    let img = h.image_flags();
    let mut out = Labeling::default();
    if !src.orientation.is_empty() {
        out.orientation = h.flag_map.iter().filter_map(|(&s, t)| src.orientation.get(t).map(|&o| (s, o))).collect();
    }
    if !src.color.is_empty() {
        out.color = h.flag_map.iter().filter_map(|(&s, t)| src.color.get(t).map(|c| (s, c.clone()))).collect();
    }
    if !src.genus.is_empty() {
        out.genus = fiber_genera(h, src);
    }
    if !src.cyclic.is_empty() {
        for (&s, &t) in &h.flag_map {
            let mut g = src.cyclic.get(&t).copied().unwrap_or(t);
            let mut guard = 0;
            while !img.contains(&g) && guard <= tau.flags.len() {
                let p = contracted_partner(h, g);
                g = src.cyclic.get(&p).copied().unwrap_or(p);
                guard += 1;
            }
            let inv = h.inverse_flag_map();
            if let Some(&succ) = inv.get(&g) {
                out.cyclic.insert(s, succ);
            }
        }
    }
    out
}

/// `g_w = Σ_{v ↦ w} g_v + b₁` of the fiber over `w` with its contracted edges.
pub fn fiber_genera(h: &GraphMorphism, src: &Labeling) -> BTreeMap<VertexId, u32> {
    let tau = &h.source;
    let contracted = h.contracted_flags();
    let idx: BTreeMap<VertexId, usize> = tau.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut uf = UnionFind::new(tau.vertices.len());
    let mut edges: BTreeMap<VertexId, i64> = BTreeMap::new();
    for &f in &contracted {
        let p = contracted_partner(h, f);
        if f < p {
            uf.union(idx[&tau.vertex(f)], idx[&tau.vertex(p)]);
            *edges.entry(h.vertex_map[&tau.vertex(f)]).or_default() += 1;
        }
    }
    let mut out = BTreeMap::new();
    for &w in &h.target.vertices {
        let fiber: Vec<VertexId> = tau.vertices.iter().copied().filter(|v| h.vertex_map[v] == w).collect();
        let comps: BTreeSet<usize> = fiber.iter().map(|v| uf.find(idx[v])).collect();
        let gsum: i64 = fiber.iter().map(|v| src.genus.get(v).copied().unwrap_or(0) as i64).sum();
        let b1 = edges.get(&w).copied().unwrap_or(0) - fiber.len() as i64 + comps.len() as i64;
        out.insert(w, (gsum + b1).max(0) as u32);
    }
    out
}

/// Checks that `m` transports every present labeling kind correctly.
pub fn check_label_compatibility(m: &LabeledMorphism) -> ValidityReport {
    let mut r = ValidityReport::default();
    let h = &m.morphism;
    let (ls, lt) = (&m.source_labels, &m.target_labels);
    for (&s, &t) in &h.flag_map {
        if ls.orientation.get(&t) != lt.orientation.get(&s) {
            r.push(format!("orientation of target flag {s} differs from its preimage {t}"));
        }
        if ls.color.get(&t) != lt.color.get(&s) {
            r.push(format!("color of target flag {s} differs from its preimage {t}"));
        }
    }
    if !ls.genus.is_empty() || !lt.genus.is_empty() {
        let expected = fiber_genera(h, ls);
        for (&w, &g) in &expected {
            if lt.genus.get(&w).copied().unwrap_or(0) != g {
                r.push(format!("genus at target vertex {w} is {}, contraction gives {g}", lt.genus.get(&w).copied().unwrap_or(0)));
            }
        }
    }
    if !ls.cyclic.is_empty() || !lt.cyclic.is_empty() {
        let pushed = push_forward_labels(h, ls);
        if pushed.cyclic != lt.cyclic {
            r.push("cyclic orders of the target are not the merged cyclic orders of the source");
        }
    }
    r
}

/// The unique `(V¹, V²)` with edges running from `V¹` to `V²`, inputs on `V¹` and outputs on `V²`.
/// Vertices without edges are placed by their tails; mixed tails block the partition.
pub fn two_level_partition(g: &LabeledGraph) -> Option<(Vec<VertexId>, Vec<VertexId>)> {
    let gr = &g.graph;
    let mut level: BTreeMap<VertexId, u8> = BTreeMap::new();
    for (a, b, _) in g.arrows() {
        for (v, l) in [(a, 1u8), (b, 2u8)] {
            if let Some(&prev) = level.get(&v) {
                if prev != l {
                    return None;
                }
            }
            level.insert(v, l);
        }
    }
    for &v in &gr.vertices {
        let tails: Vec<Orientation> = gr.flags_at(v).into_iter().filter(|&f| gr.is_tail(f)).filter_map(|f| g.orientation(f)).collect();
        let ins = tails.iter().any(|&o| o == Orientation::In);
        let outs = tails.iter().any(|&o| o == Orientation::Out);
        match level.get(&v) {
            Some(1) if outs => return None,
            Some(2) if ins => return None,
            Some(_) => {}
            None => {
                if ins && outs {
                    return None;
                }
                level.insert(v, if outs { 2 } else { 1 });
            }
        }
    }
    let v1 = level.iter().filter(|(_, &l)| l == 1).map(|(&v, _)| v).collect();
    let v2 = level.iter().filter(|(_, &l)| l == 2).map(|(&v, _)| v).collect();
    Some((v1, v2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::morphism::contraction_to_corolla;

    fn oriented(g: Graph, outs: &[FlagId]) -> LabeledGraph {
        let orientation = g.flags.iter().map(|&f| (f, if outs.contains(&f) { Orientation::Out } else { Orientation::In })).collect();
        LabeledGraph { graph: g, labels: Labeling { orientation, ..Default::default() } }
    }

    #[test]
    fn directedness_examples() {
        let edge = oriented(Graph::from_lists(2, &[0, 1], &[1, 0]), &[0]);
        assert!(edge.is_directed().is_directed());
        assert!(edge.has_oriented_wheel().is_none());
        let lp = oriented(Graph::from_lists(1, &[0, 0], &[1, 0]), &[0]);
        assert_eq!(lp.is_directed(), DirectedWitness::Wheel(vec![0]));
        // all-out corolla {0,1,2} grafted via flag 0 to input 3 of the all-in corolla {3,4,5}
        let g = Graph::from_lists(2, &[0, 0, 0, 1, 1, 1], &[3, 1, 2, 0, 4, 5]);
        let h = oriented(g, &[0, 1, 2]);
        assert!(h.validate().is_valid());
        assert!(h.is_directed().is_directed());
    }

    #[test]
    fn genus_examples() {
        let mut one = LabeledGraph::plain(Graph::corolla(0));
        one.labels.genus.insert(0, 2);
        assert_eq!(one.genus(None).unwrap(), 2);
        let mut two = LabeledGraph::plain(Graph::from_lists(2, &[0, 1], &[1, 0]));
        two.labels.genus = [(0, 0), (1, 1)].into();
        assert_eq!(two.genus(None).unwrap(), 1);
        let mut lp = LabeledGraph::plain(Graph::from_lists(1, &[0, 0], &[1, 0]));
        lp.labels.genus.insert(0, 0);
        assert_eq!(lp.genus(None).unwrap(), 1);
        let (u, _) = crate::graph::disjoint_union(&two.graph, &lp.graph);
        assert!(LabeledGraph::plain(u).genus(None).is_err());
    }

    #[test]
    fn genus_bookkeeping_under_contraction() {
        let mut two = LabeledGraph::plain(Graph::from_lists(2, &[0, 1, 0], &[1, 0, 2]));
        two.labels.genus = [(0, 1), (1, 2)].into();
        let h = contraction_to_corolla(&two.graph);
        assert_eq!(push_forward_labels(&h, &two.labels).genus, BTreeMap::from([(0, 3)]));
        let mut lp = LabeledGraph::plain(Graph::from_lists(1, &[0, 0, 0], &[1, 0, 2]));
        lp.labels.genus.insert(0, 0);
        let h = contraction_to_corolla(&lp.graph);
        let tl = push_forward_labels(&h, &lp.labels);
        assert_eq!(tl.genus, BTreeMap::from([(0, 1)]));
        let m = LabeledMorphism { morphism: h, source_labels: lp.labels.clone(), target_labels: tl };
        assert!(check_label_compatibility(&m).is_valid());
    }

    #[test]
    fn stability() {
        assert!(is_stable(0, 3));
        assert!(!is_stable(0, 2));
        assert!(is_stable(1, 1));
    }

    #[test]
    fn cyclic_orders_merge_along_contracted_edge() {
        // vertex 0 cycle (0 1 2), vertex 1 cycle (3 4 5), edge (2,3)
        let g = Graph::from_lists(2, &[0, 0, 0, 1, 1, 1], &[0, 1, 3, 2, 4, 5]);
        let mut lg = LabeledGraph::plain(g);
        lg.labels.cyclic = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)].into();
        assert!(lg.validate().is_valid());
        let h = contraction_to_corolla(&lg.graph);
        let tl = push_forward_labels(&h, &lg.labels);
        assert_eq!(tl.cyclic, BTreeMap::from([(0, 1), (1, 4), (4, 5), (5, 0)]));
    }

    #[test]
    fn two_level_examples() {
        let g = Graph::from_lists(2, &[0, 1, 0, 1], &[1, 0, 2, 3]);
        let lg = oriented(g, &[0, 3]);
        assert_eq!(two_level_partition(&lg), Some((vec![0], vec![1])));
        let chain = Graph::from_lists(3, &[0, 1, 1, 2], &[1, 0, 3, 2]);
        let lc = oriented(chain, &[0, 2]);
        assert_eq!(two_level_partition(&lc), None);
        let all_in = oriented(Graph::corolla(3), &[]);
        assert_eq!(two_level_partition(&all_in), Some((vec![0], vec![])));
        let mixed = oriented(Graph::corolla(3), &[0]);
        assert_eq!(two_level_partition(&mixed), None);
    }
}
