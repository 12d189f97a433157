//! Isomorphism classes of graphs over a corolla, enumerated by vertex splits.

use crate::error::{Error, Result};
use crate::graph::canon::canonical_form;
use crate::graph::{FlagId, VertexId};
use crate::labeling::{Caps, GammaPreset, LabeledGraph, Orientation, Signature};
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

/// Flags of `v` in standard position order: planar vertices start at their output and follow the
/// cyclic order, oriented vertices list outputs then inputs, others list flags by id.
pub fn std_order(preset: GammaPreset, g: &LabeledGraph, v: VertexId) -> Vec<FlagId> {
    let flags = g.graph.flags_at(v);
    if preset.planar() && !flags.is_empty() {
        let start = flags.iter().copied().find(|&f| g.orientation(f) == Some(Orientation::Out)).unwrap_or(flags[0]);
        let mut out = vec![start];
        let mut f = g.labels.cyclic[&start];
        while f != start {
            out.push(f);
            f = g.labels.cyclic[&f];
        }
        return out;
    }
    if preset.oriented() {
        let (mut outs, ins): (Vec<FlagId>, Vec<FlagId>) = flags.into_iter().partition(|&f| g.orientation(f) == Some(Orientation::Out));
        outs.extend(ins);
        return outs;
    }
    flags
}

/// A graph over the standard corolla of `sig`, in canonical ids `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphClass {
    pub sig: Signature,
    pub graph: LabeledGraph,
    /// Tail ↦ standard position in the target corolla.
    pub legs: BTreeMap<FlagId, usize>,
    pub vertex_sigs: Vec<Signature>,
    pub std_orders: Vec<Vec<FlagId>>,
    /// Position of each flag within the standard order of its vertex.
    pub flag_pos: Vec<usize>,
    /// Automorphisms fixing every tail, as forward `(flag map, vertex map)` indexed by id; identity first.
    pub automorphisms: Vec<(Vec<FlagId>, Vec<VertexId>)>,
    pub key: Vec<u64>,
}

impl GraphClass {
    pub fn weight(&self) -> usize {
        self.graph.graph.vertices.len()
    }

    pub fn is_corolla(&self) -> bool {
        self.weight() == 1 && self.graph.graph.edges().is_empty()
    }
}

/// Canonical key and canonical relabeling `(flag map, vertex map)` of a graph with legs.
pub fn canonize(g: &LabeledGraph, legs: &BTreeMap<FlagId, usize>) -> Result<(Vec<u64>, BTreeMap<FlagId, FlagId>, BTreeMap<VertexId, VertexId>)> {
    let (s, flags, vertices) = g.flag_structure(&|f| legs.get(&f).map_or(0, |&p| p as u64 + 1));
    let cf = canonical_form(&s)?;
    let fpos = cf.flag_position();
    let vpos = cf.vertex_position();
    let fmap = flags.iter().enumerate().map(|(i, &f)| (f, fpos[i] as FlagId)).collect();
    let vmap = vertices.iter().enumerate().map(|(i, &v)| (v, vpos[i] as VertexId)).collect();
    Ok((cf.key, fmap, vmap))
}

fn build_class(preset: GammaPreset, sig: Signature, g: &LabeledGraph, legs: &BTreeMap<FlagId, usize>) -> Result<GraphClass> {
    let (key, fmap, vmap) = canonize(g, legs)?;
    let mut rep = g.relabel(&|f| fmap[&f], &|v| vmap[&v]);
    rep.graph = rep.graph.normalized();
    let rlegs: BTreeMap<FlagId, usize> = legs.iter().map(|(f, &p)| (fmap[f], p)).collect();
    let (s, _, _) = rep.flag_structure(&|f| rlegs.get(&f).map_or(0, |&p| p as u64 + 1));
    let automorphisms = canonical_form(&s)?
        .automorphisms()
        .into_iter()
        .map(|(f, v)| (f.into_iter().map(|x| x as FlagId).collect(), v.into_iter().map(|x| x as VertexId).collect()))
        .collect();
    let nv = rep.graph.vertices.len();
    let std_orders: Vec<Vec<FlagId>> = (0..nv as VertexId).map(|v| std_order(preset, &rep, v)).collect();
    let mut flag_pos = vec![0; rep.graph.flags.len()];
    for order in &std_orders {
        for (k, &f) in order.iter().enumerate() {
            flag_pos[f as usize] = k;
        }
    }
    Ok(GraphClass {
        sig,
        vertex_sigs: (0..nv as VertexId).map(|v| preset.signature_at(&rep, v)).collect(),
        graph: rep,
        legs: rlegs,
        std_orders,
        flag_pos,
        automorphisms,
        key,
    })
}

/// All classes over each admissible corolla within the caps, sorted by `(weight, key)`.
#[derive(Clone, Debug)]
pub struct ClassCatalog {
    pub preset: GammaPreset,
    pub caps: Caps,
    classes: BTreeMap<Signature, Vec<GraphClass>>,
    lookup: BTreeMap<Signature, HashMap<Vec<u64>, usize>>,
}

impl ClassCatalog {
    pub fn new(preset: GammaPreset, caps: Caps) -> Result<Self> {
        let mut cat = ClassCatalog { preset, caps, classes: BTreeMap::new(), lookup: BTreeMap::new() };
        for sig in preset.signatures(&caps) {
            let list = enumerate_to_corolla(preset, sig, &caps)?;
            cat.lookup.insert(sig, list.iter().enumerate().map(|(i, c)| (c.key.clone(), i)).collect());
            cat.classes.insert(sig, list);
        }
        Ok(cat)
    }

    pub fn signatures(&self) -> impl Iterator<Item = &Signature> {
        self.classes.keys()
    }

    pub fn classes(&self, sig: &Signature) -> &[GraphClass] {
        self.classes.get(sig).map_or(&[], |v| v.as_slice())
    }

    /// Class of `(g, legs)` over `sig` with the canonical isomorphism onto its representative.
    pub fn locate(&self, sig: &Signature, g: &LabeledGraph, legs: &BTreeMap<FlagId, usize>) -> Result<(usize, BTreeMap<FlagId, FlagId>, BTreeMap<VertexId, VertexId>)> {
        let (key, fmap, vmap) = canonize(g, legs)?;
        let idx = self
            .lookup
            .get(sig)
            .and_then(|m| m.get(&key))
            .copied()
            .ok_or_else(|| Error::CapExceeded(format!("graph over {sig} lies outside the enumerated classes")))?;
        Ok((idx, fmap, vmap))
    }
}

/// Largest first Betti number allowed for sources over `sig`.
fn betti_cap(preset: GammaPreset, sig: Signature, caps: &Caps) -> i64 {
    if preset.has_genus() {
        sig.genus as i64
    } else if preset.tree_like() {
        0
    } else {
        caps.max_genus as i64
    }
}

/// Classes of `⇒σ` with at most `caps.max_weight` vertices.
pub fn enumerate_to_corolla(preset: GammaPreset, sig: Signature, caps: &Caps) -> Result<Vec<GraphClass>> {
    let sigma = preset.standard_corolla(sig);
    let legs: BTreeMap<FlagId, usize> = (0..sig.flags()).map(|k| (k as FlagId, k)).collect();
    let b1cap = betti_cap(preset, sig, caps);
    let mut seen: HashMap<Vec<u64>, GraphClass> = HashMap::new();
    let first = build_class(preset, sig, &sigma, &legs)?;
    let mut queue = VecDeque::from([(first.graph.clone(), first.legs.clone())]);
    seen.insert(first.key.clone(), first);
    while let Some((g, glegs)) = queue.pop_front() {
        for cand in splits(preset, &g, caps.max_weight, b1cap) {
            if !preset.admits(&cand).is_valid() {
                continue;
            }
            let c = build_class(preset, sig, &cand, &glegs)?;
            if !seen.contains_key(&c.key) {
                queue.push_back((c.graph.clone(), c.legs.clone()));
                seen.insert(c.key.clone(), c);
            }
        }
        if seen.len() > 200_000 {
            return Err(Error::CapExceeded(format!("more than 200000 classes over {sig}")));
        }
    }
    let mut out: Vec<GraphClass> = seen.into_values().collect();
    out.sort_by(|a, b| (a.weight(), &a.key).cmp(&(b.weight(), &b.key)));
    Ok(out)
}

/// Graphs contracting onto `g` by one vertex split, a loop removal, or a merger.
fn splits(preset: GammaPreset, g: &LabeledGraph, max_weight: usize, b1cap: i64) -> Vec<LabeledGraph> {
    let mut out = Vec::new();
    let gr = &g.graph;
    let b1 = gr.invariants().first_betti;
    let nf = gr.max_flag().map_or(0, |f| f + 1);
    let nu = gr.max_vertex().map_or(0, |v| v + 1);
    for &v in &gr.vertices {
        let gv = g.genus_of(v);
        if preset.has_genus() && gv > 0 {
            // a new loop at v lowers its genus by one
            let mut h = g.clone();
            for (f, p) in [(nf, nf + 1), (nf + 1, nf)] {
                h.graph.flags.push(f);
                h.graph.boundary.insert(f, v);
                h.graph.involution.insert(f, p);
            }
            h.labels.genus.insert(v, gv - 1);
            out.push(h);
        }
        if gr.vertices.len() >= max_weight {
            continue;
        }
        let flags = gr.flags_at(v);
        let (kmin, kmax) = if preset.tree_like() || preset.has_genus() {
            (1, 1)
        } else {
            (if preset.allows_mergers() { 0 } else { 1 }, (1 + b1cap - b1).max(0) as usize)
        };
        let parts: Vec<(Vec<FlagId>, Option<Vec<FlagId>>)> = if preset.planar() {
            let seq = std_order(preset, g, v);
            let n = seq.len();
            let mut ps = Vec::new();
            for a in 0..n {
                for len in 1..n {
                    let u: Vec<FlagId> = (0..len).map(|i| seq[(a + i) % n]).collect();
                    ps.push((u, Some(seq.clone())));
                }
            }
            ps
        } else {
            (0u64..(1 << flags.len())).map(|mask| (flags.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &f)| f).collect(), None)).collect()
        };
        for (uflags, cyc) in parts {
            for k in kmin..=kmax {
                let genus_splits: Vec<(u32, u32)> = if preset.has_genus() { (0..=gv).map(|a| (a, gv - a)).collect() } else { vec![(0, 0)] };
                for (gu, gw) in genus_splits {
                    out.push(split_vertex(preset, g, v, nu, nf, &uflags, k, gu, gw, cyc.as_deref()));
                }
            }
        }
    }
    out
}

/// Moves `uflags` to a new vertex `u` joined to `v` by `k` edges running `u → v` when oriented.
#[allow(clippy::too_many_arguments)]
fn split_vertex(
    preset: GammaPreset,
    g: &LabeledGraph,
    v: VertexId,
    u: VertexId,
    nf: FlagId,
    uflags: &[FlagId],
    k: usize,
    gu: u32,
    gw: u32,
    cyc: Option<&[FlagId]>,
) -> LabeledGraph {
    let mut h = g.clone();
    h.graph.vertices.push(u);
    for &f in uflags {
        h.graph.boundary.insert(f, u);
    }
    let uset: BTreeSet<FlagId> = uflags.iter().copied().collect();
    let mut new_u = Vec::new();
    let mut new_v = Vec::new();
    for i in 0..k as FlagId {
        let (a, b) = (nf + 2 * i, nf + 2 * i + 1);
        h.graph.flags.extend([a, b]);
        h.graph.boundary.insert(a, u);
        h.graph.boundary.insert(b, v);
        h.graph.involution.insert(a, b);
        h.graph.involution.insert(b, a);
        new_u.push(a);
        new_v.push(b);
    }
    if preset.oriented() {
        let out_on_u = preset.rooted() && uflags.iter().any(|&f| g.orientation(f) == Some(Orientation::Out));
        let (ou, ov) = if out_on_u { (Orientation::In, Orientation::Out) } else { (Orientation::Out, Orientation::In) };
        for &a in &new_u {
            h.labels.orientation.insert(a, ou);
        }
        for &b in &new_v {
            h.labels.orientation.insert(b, ov);
        }
    }
    if preset.has_genus() {
        h.labels.genus.insert(u, gu);
        h.labels.genus.insert(v, gw);
    }
    if let Some(seq) = cyc {
        // u: interval then its new flag; v: the rest with the new flag in place of the interval
        let (a, b) = (new_u[0], new_v[0]);
        let mut uc: Vec<FlagId> = uflags.to_vec();
        uc.push(a);
        let start = seq.iter().position(|f| !uset.contains(f)).unwrap_or(0);
        let mut vc = Vec::new();
        let mut placed = false;
        for i in 0..seq.len() {
            let f = seq[(start + i) % seq.len()];
            if uset.contains(&f) {
                if !placed {
                    vc.push(b);
                    placed = true;
                }
            } else {
                vc.push(f);
            }
        }
        for c in [uc, vc] {
            for i in 0..c.len() {
                h.labels.cyclic.insert(c[i], c[(i + 1) % c.len()]);
            }
        }
    }
    h.graph.flags.sort_unstable();
    h.graph.vertices.sort_unstable();
    h
}
