//! The free operad on a collection, truncated by total weight, with its triple structure.

pub mod algebra;
pub mod catalog;
pub mod presentation;
pub mod two_level;


pub use algebra::{OperadAlgebra, Quotient};
pub use catalog::{ClassCatalog, GraphClass};
pub use presentation::{OperadPresentation, PresentedOperad};

use crate::collections::{aut_elements, aut_generators, aut_relations, Collection, CollectionMorphism, Component};
use crate::error::{Error, Result};
use crate::graph::{FlagId, VertexId};
use crate::labeling::{Caps, GammaPreset, LabeledGraph, Labeling, Signature};
use crate::linalg::svec::Accum;
use crate::linalg::{Coinvariants, GroupAction, LinearMap, Perm, Q, SVec};
use num_traits::One;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

/// Basis of the part of `⊗_v A_v` whose total weight stays within a cap, in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncTensor {
    pub basis: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl TruncTensor {
    pub fn new(weights: &[&[usize]], cap: usize) -> Self {
        let mut basis = Vec::new();
        let mut cur = Vec::with_capacity(weights.len());
        fn rec(weights: &[&[usize]], budget: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            let k = cur.len();
            if k == weights.len() {
                out.push(cur.clone());
                return;
            }
            // the remaining factors each need at least their lightest weight
            let rest: usize = weights[k + 1..].iter().map(|w| w.iter().copied().min().unwrap_or(0)).sum();
            for (i, &w) in weights[k].iter().enumerate() {
                if w + rest <= budget {
                    cur.push(i);
                    rec(weights, budget - w, cur, out);
                    cur.pop();
                }
            }
        }
        if weights.iter().all(|w| !w.is_empty()) {
            rec(weights, cap, &mut cur, &mut basis);
        }
        let index = basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        TruncTensor { basis, index }
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn index_of(&self, m: &[usize]) -> Option<usize> {
        self.index.get(m).copied()
    }
}

/// Expands `⊗_k v_k` into weighted multi-indices.
pub fn expand(factors: &[&SVec]) -> Vec<(Vec<usize>, Q)> {
    let mut acc: Vec<(Vec<usize>, Q)> = vec![(Vec::with_capacity(factors.len()), Q::one())];
    for f in factors {
        let mut next = Vec::with_capacity(acc.len() * f.nnz());
        for (m, c) in &acc {
            for (i, x) in f.entries() {
                let mut m2 = m.clone();
                m2.push(*i);
                next.push((m2, c * x));
            }
        }
        acc = next;
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub class: usize,
    pub tensor: TruncTensor,
    pub coinv: Coinvariants,
    pub offset: usize,
    pub weights: Vec<usize>,
}

impl Summand {
    pub fn dim(&self) -> usize {
        self.coinv.dim
    }

    pub fn weight(&self) -> usize {
        self.weights.first().copied().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeComponent {
    pub sig: Signature,
    pub summands: Vec<Summand>,
    pub dim: usize,
    pub action: GroupAction,
    pub weights: Vec<usize>,
    by_class: BTreeMap<usize, usize>,
}

impl FreeComponent {
    pub fn summand_of_class(&self, class: usize) -> Option<&Summand> {
        self.by_class.get(&class).map(|&i| &self.summands[i])
    }

    /// Summand containing basis vector `i`, with the local index.
    pub fn locate(&self, i: usize) -> (&Summand, usize) {
        let k = self.summands.partition_point(|s| s.offset + s.dim() <= i);
        let s = &self.summands[k];
        (s, i - s.offset)
    }

    pub fn dims_by_weight(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for w in &self.weights {
            *out.entry(*w).or_insert(0) += 1;
        }
        out
    }
}

/// Per-vertex collections and orders of a graph being transported.
pub struct Decorated<'a> {
    pub sigs: &'a [Signature],
    pub orders: &'a [Vec<FlagId>],
    pub collections: Vec<&'a Collection>,
}

/// `F(A)` within the caps of a class catalog.
#[derive(Clone, Debug)]
pub struct FreeOperad {
    pub catalog: Arc<ClassCatalog>,
    pub gens: Collection,
    pub components: BTreeMap<Signature, FreeComponent>,
    rho: HashMap<(Signature, Perm), LinearMap>,
}

fn rho_table(gens: &Collection) -> HashMap<(Signature, Perm), LinearMap> {
    let mut out = HashMap::new();
    for s in gens.components.keys() {
        for p in aut_elements(gens.preset, *s) {
            let m = gens.rho(s, &p);
            out.insert((*s, p), m);
        }
    }
    out
}

/// Forward position permutation induced at a vertex by a flag bijection.
fn position_perm(order: &[FlagId], psi_f: &dyn Fn(FlagId) -> FlagId, tgt_pos: &dyn Fn(FlagId) -> usize) -> Perm {
    order.iter().map(|&f| tgt_pos(psi_f(f))).collect()
}

impl FreeOperad {
    pub fn new(catalog: Arc<ClassCatalog>, gens: &Collection) -> Result<Self> {
        if gens.preset != catalog.preset {
            return Err(Error::InvalidInput(format!("collection is for {}, catalog for {}", gens.preset, catalog.preset)));
        }
        gens.validate()?;
        for (s, c) in &gens.components {
            for g in &c.action.generators {
                for (j, col) in g.columns().iter().enumerate() {
                    if col.entries().iter().any(|(i, _)| c.weights[*i] != c.weights[j]) {
                        return Err(Error::InvalidInput(format!("action on {s} mixes weights")));
                    }
                }
            }
        }
        let mut op = FreeOperad { catalog: catalog.clone(), gens: gens.clone(), components: BTreeMap::new(), rho: rho_table(gens) };
        let cap = catalog.caps.max_weight;
        for sig in catalog.signatures() {
            let mut summands = Vec::new();
            let mut by_class = BTreeMap::new();
            let mut offset = 0;
            for (ci, class) in catalog.classes(sig).iter().enumerate() {
                let comps: Option<Vec<&Component>> = class.vertex_sigs.iter().map(|s| gens.component(s)).collect();
                let Some(comps) = comps else { continue };
                let w: Vec<&[usize]> = comps.iter().map(|c| c.weights.as_slice()).collect();
                let tensor = TruncTensor::new(&w, cap);
                if tensor.is_empty() {
                    continue;
                }
                let dec = Decorated { sigs: &class.vertex_sigs, orders: &class.std_orders, collections: vec![gens; class.weight()] };
                let mats: Vec<LinearMap> = class
                    .automorphisms
                    .iter()
                    .map(|(fm, vm)| op.transport(&dec, &tensor, &|f| fm[f as usize], &|v| vm[v as usize], class, &tensor))
                    .collect::<Result<_>>()?;
                let coinv = Coinvariants::from_elements(tensor.len(), &mats);
                let weights: Vec<usize> = coinv
                    .section
                    .columns()
                    .iter()
                    .map(|col| {
                        let m = &tensor.basis[col.leading().expect("nonzero section column")];
                        m.iter().zip(&comps).map(|(&i, c)| c.weights[i]).sum()
                    })
                    .collect();
                by_class.insert(ci, summands.len());
                let dim = coinv.dim;
                summands.push(Summand { class: ci, tensor, coinv, offset, weights });
                offset += dim;
            }
            if offset == 0 {
                continue;
            }
            let weights = summands.iter().flat_map(|s| s.weights.iter().copied()).collect();
            let comp = FreeComponent {
                sig: *sig,
                dim: offset,
                summands,
                action: GroupAction { dim: offset, generators: Vec::new(), relations: aut_relations(catalog.preset, *sig) },
                weights,
                by_class,
            };
            op.components.insert(*sig, comp);
        }
        let sigs: Vec<Signature> = op.components.keys().copied().collect();
        for sig in sigs {
            let gens_m: Vec<LinearMap> = aut_generators(catalog.preset, sig).iter().map(|p| op.relabel_legs(&sig, p)).collect::<Result<_>>()?;
            op.components.get_mut(&sig).unwrap().action.generators = gens_m;
        }
        Ok(op)
    }

    pub fn preset(&self) -> GammaPreset {
        self.catalog.preset
    }

    pub fn caps(&self) -> Caps {
        self.catalog.caps
    }

    pub fn dim(&self, sig: &Signature) -> usize {
        self.components.get(sig).map_or(0, |c| c.dim)
    }

    /// `F(A)` as a collection, weights from summand weights.
    pub fn as_collection(&self) -> Collection {
        let components = self
            .components
            .iter()
            .map(|(s, c)| (*s, Component { action: c.action.clone(), weights: c.weights.clone() }))
            .collect();
        Collection { preset: self.preset(), components }
    }

    fn rho_of(&self, coll: &Collection, sig: &Signature, p: &[usize]) -> LinearMap {
        if std::ptr::eq(coll, &self.gens) || *coll == self.gens {
            if let Some(m) = self.rho.get(&(*sig, p.to_vec())) {
                return m.clone();
            }
        }
        coll.rho(sig, p)
    }

    /// Matrix of the map `⊗_v A(τ_v) → ⊗_w A(τ'_w)` induced by a decoration-preserving
    /// isomorphism `ψ` onto the representative of `tgt`.
    #[allow(clippy::too_many_arguments)]
    pub fn transport(
        &self,
        src: &Decorated,
        src_tensor: &TruncTensor,
        psi_f: &dyn Fn(FlagId) -> FlagId,
        psi_v: &dyn Fn(VertexId) -> VertexId,
        tgt: &GraphClass,
        tgt_tensor: &TruncTensor,
    ) -> Result<LinearMap> {
        let n = src.sigs.len();
        let slots: Vec<usize> = (0..n as VertexId).map(|v| psi_v(v) as usize).collect();
        let rhos: Vec<LinearMap> = (0..n)
            .map(|i| {
                let q = position_perm(&src.orders[i], psi_f, &|f| tgt.flag_pos[f as usize]);
                self.rho_of(src.collections[i], &src.sigs[i], &q)
            })
            .collect();
        let cols = src_tensor
            .basis
            .iter()
            .map(|m| {
                let empty = SVec::new();
                let mut factors: Vec<&SVec> = vec![&empty; n];
                for i in 0..n {
                    factors[slots[i]] = rhos[i].column(m[i]);
                }
                let mut acc = Accum::new();
                for (mm, c) in expand(&factors) {
                    let k = tgt_tensor.index_of(&mm).ok_or_else(|| Error::Invariant("transport left the truncated tensor".into()))?;
                    acc.add(k, c);
                }
                Ok(acc.finish())
            })
            .collect::<Result<Vec<SVec>>>()?;
        Ok(LinearMap::from_columns(tgt_tensor.len(), cols))
    }

    /// Aut(σ) acts by relabeling legs: `p` is a forward permutation of standard positions.
    fn relabel_legs(&self, sig: &Signature, p: &[usize]) -> Result<LinearMap> {
        let comp = &self.components[sig];
        let classes = self.catalog.classes(sig);
        let mut cols = Vec::with_capacity(comp.dim);
        for s in &comp.summands {
            let c = &classes[s.class];
            let legs: BTreeMap<FlagId, usize> = c.legs.iter().map(|(&f, &k)| (f, p[k])).collect();
            let (ti, fmap, vmap) = self.catalog.locate(sig, &c.graph, &legs)?;
            let t = comp.summand_of_class(ti).ok_or_else(|| Error::Invariant("relabeled class has no summand".into()))?;
            let dec = Decorated { sigs: &c.vertex_sigs, orders: &c.std_orders, collections: vec![&self.gens; c.weight()] };
            let tr = self.transport(&dec, &s.tensor, &|f| fmap[&f], &|v| vmap[&v], &classes[ti], &t.tensor)?;
            let block = t.coinv.projection.compose(&tr)?.compose(&s.coinv.section)?;
            for col in block.columns() {
                cols.push(col.map_indices(|i| i + t.offset));
            }
        }
        Ok(LinearMap::from_columns(comp.dim, cols))
    }

    /// Coordinates in `F(A)(σ)` of the decorated graph `(g, legs)` with decoration `x ∈ ⊗_v A(g_v)`,
    /// factors in the order of `g.graph.vertices` and each in the flag order `orders[v]`.
    pub fn embed(&self, sig: &Signature, g: &LabeledGraph, legs: &BTreeMap<FlagId, usize>, orders: &[Vec<FlagId>], x: &[(Vec<usize>, Q)]) -> Result<SVec> {
        let (ci, fmap, vmap) = self.catalog.locate(sig, g, legs)?;
        let comp = self.components.get(sig).ok_or_else(|| Error::InvalidInput(format!("F(A) vanishes at {sig}")))?;
        let s = comp.summand_of_class(ci).ok_or_else(|| Error::InvalidInput("decorations are not supported by the generators".into()))?;
        let class = &self.catalog.classes(sig)[ci];
        let sigs: Vec<Signature> = g.graph.vertices.iter().map(|&v| self.preset().signature_at(g, v)).collect();
        let cw: Vec<&[usize]> = sigs.iter().map(|s| self.gens.component(s).map_or(&[][..], |c| c.weights.as_slice())).collect();
        let src_tensor = TruncTensor::new(&cw, usize::MAX);
        let dec = Decorated { sigs: &sigs, orders, collections: vec![&self.gens; sigs.len()] };
        let tr = self.transport(&dec, &src_tensor, &|f| fmap[&f], &|v| vmap[&g.graph.vertices[v as usize]], class, &s.tensor);
        let tr = tr?;
        let mut acc = Accum::new();
        for (m, c) in x {
            let k = src_tensor.index_of(m).ok_or_else(|| Error::InvalidInput("decoration index out of range".into()))?;
            acc.add_vec(tr.column(k), c);
        }
        Ok(s.coinv.projection.apply(&acc.finish()).map_indices(|i| i + s.offset))
    }

    /// `η : A → F(A)`, the corolla summand.
    pub fn eta(&self) -> BTreeMap<Signature, LinearMap> {
        let mut out = BTreeMap::new();
        for (sig, a) in &self.gens.components {
            let Some(comp) = self.components.get(sig) else { continue };
            let classes = self.catalog.classes(sig);
            let s = comp.summands.iter().find(|s| classes[s.class].is_corolla()).expect("corolla summand");
            let cols = (0..a.dim())
                .map(|i| match s.tensor.index_of(&[i]) {
                    Some(k) => s.coinv.projection.apply(&SVec::unit(k)).map_indices(|j| j + s.offset),
                    None => SVec::new(),
                })
                .collect();
            out.insert(*sig, LinearMap::from_columns(comp.dim, cols));
        }
        out
    }

    /// `F(f) : F(A) → F(B)` for a weight-preserving collection morphism `f : A → B`.
    pub fn free_map(&self, target: &FreeOperad, f: &CollectionMorphism) -> Result<BTreeMap<Signature, LinearMap>> {
        let mut out = BTreeMap::new();
        for (sig, comp) in &self.components {
            let tdim = target.dim(sig);
            let mut cols = Vec::with_capacity(comp.dim);
            for s in &comp.summands {
                let class = &self.catalog.classes(sig)[s.class];
                let Some(t) = target.components.get(sig).and_then(|c| c.summand_of_class(s.class)) else {
                    cols.extend(std::iter::repeat(SVec::new()).take(s.dim()));
                    continue;
                };
                let maps: Vec<&LinearMap> = class.vertex_sigs.iter().map(|vs| f.maps.get(vs).ok_or_else(|| Error::InvalidInput(format!("morphism lacks component {vs}")))).collect::<Result<_>>()?;
                let tensor_cols: Vec<SVec> = s
                    .tensor
                    .basis
                    .iter()
                    .map(|m| {
                        let factors: Vec<&SVec> = m.iter().zip(&maps).map(|(&i, f)| f.column(i)).collect();
                        let mut acc = Accum::new();
                        for (mm, c) in expand(&factors) {
                            let k = t.tensor.index_of(&mm).ok_or_else(|| Error::CapExceeded("collection morphism raises weight past the cap".into()))?;
                            acc.add(k, c);
                        }
                        Ok(acc.finish())
                    })
                    .collect::<Result<_>>()?;
                let tens = LinearMap::from_columns(t.tensor.len(), tensor_cols);
                let block = t.coinv.projection.compose(&tens)?.compose(&s.coinv.section)?;
                cols.extend(block.columns().iter().map(|c| c.map_indices(|i| i + t.offset)));
            }
            out.insert(*sig, LinearMap::from_columns(tdim, cols));
        }
        Ok(out)
    }

    /// Graph obtained by inserting inner representatives into the vertices of an outer representative,
    /// with legs, per-vertex signatures and standard orders; vertex and flag ids are contiguous.
    pub fn substitute_graph(&self, outer: &GraphClass, inner: &[&GraphClass]) -> (LabeledGraph, BTreeMap<FlagId, usize>, Vec<Signature>, Vec<Vec<FlagId>>) {
        let nv = outer.weight();
        let mut foff = Vec::with_capacity(nv);
        let mut voff = Vec::with_capacity(nv);
        let (mut fo, mut vo) = (0 as FlagId, 0 as VertexId);
        for c in inner {
            foff.push(fo);
            voff.push(vo);
            fo += c.graph.graph.flags.len() as FlagId;
            vo += c.weight() as VertexId;
        }
        // outer flag ↦ id of the inner tail standing for it
        let inv_legs: Vec<BTreeMap<usize, FlagId>> = inner.iter().map(|c| c.legs.iter().map(|(&f, &k)| (k, f)).collect()).collect();
        let tail_of = |f: FlagId| -> FlagId {
            let v = outer.graph.graph.vertex(f) as usize;
            foff[v] + inv_legs[v][&outer.flag_pos[f as usize]]
        };
        let mut g = LabeledGraph { graph: crate::graph::Graph::empty(), labels: Labeling::default() };
        let mut legs = BTreeMap::new();
        let mut sigs = Vec::new();
        let mut orders = Vec::new();
        for (v, c) in inner.iter().enumerate() {
            let (df, dv) = (foff[v], voff[v]);
            let cg = &c.graph;
            for &u in &cg.graph.vertices {
                g.graph.vertices.push(dv + u);
                if let Some(&gen) = cg.labels.genus.get(&u) {
                    g.labels.genus.insert(dv + u, gen);
                }
            }
            for &f in &cg.graph.flags {
                g.graph.flags.push(df + f);
                g.graph.boundary.insert(df + f, dv + cg.graph.vertex(f));
                if let Some(&o) = cg.labels.orientation.get(&f) {
                    g.labels.orientation.insert(df + f, o);
                }
                if let Some(col) = cg.labels.color.get(&f) {
                    g.labels.color.insert(df + f, col.clone());
                }
                if let Some(&s) = cg.labels.cyclic.get(&f) {
                    g.labels.cyclic.insert(df + f, df + s);
                }
                if !cg.graph.is_tail(f) {
                    g.graph.involution.insert(df + f, df + cg.graph.j(f));
                }
            }
            sigs.extend(c.vertex_sigs.iter().copied());
            orders.extend(c.std_orders.iter().map(|o| o.iter().map(|&f| df + f).collect::<Vec<_>>()));
        }
        for &f in &outer.graph.graph.flags {
            let t = tail_of(f);
            if outer.graph.graph.is_tail(f) {
                g.graph.involution.insert(t, t);
                legs.insert(t, outer.legs[&f]);
            } else {
                g.graph.involution.insert(t, tail_of(outer.graph.graph.j(f)));
            }
        }
        (g, legs, sigs, orders)
    }
}

/// `μ : F(F(A)) → F(A)`, where `outer` is the free operad on `inner.as_collection()`.
pub fn mu(inner: &FreeOperad, outer: &FreeOperad) -> Result<BTreeMap<Signature, LinearMap>> {
    let cap = inner.caps().max_weight;
    let mut out = BTreeMap::new();
    for (sig, ocomp) in &outer.components {
        let tcomp = inner.components.get(sig).ok_or_else(|| Error::Invariant(format!("F(A) vanishes at {sig} while F(F(A)) does not")))?;
        let mut cols = Vec::with_capacity(ocomp.dim);
        for s in &ocomp.summands {
            let oc = &outer.catalog.classes(sig)[s.class];
            // per tuple of inner classes: target offset, projected transport, and the tensor of the substituted graph
            let mut plans: HashMap<Vec<usize>, (usize, LinearMap, TruncTensor)> = HashMap::new();
            let mut tensor_cols = Vec::with_capacity(s.tensor.len());
            for m in &s.tensor.basis {
                let located: Vec<(&Summand, usize)> = m.iter().zip(&oc.vertex_sigs).map(|(&b, vs)| inner.components[vs].locate(b)).collect();
                let key: Vec<usize> = located.iter().map(|(su, _)| su.class).collect();
                if !plans.contains_key(&key) {
                    let reps: Vec<&GraphClass> = key.iter().zip(&oc.vertex_sigs).map(|(&ci, vs)| &inner.catalog.classes(vs)[ci]).collect();
                    let (g, legs, gsigs, gorders) = inner.substitute_graph(oc, &reps);
                    let (ti, fmap, vmap) = inner.catalog.locate(sig, &g, &legs)?;
                    let t = tcomp.summand_of_class(ti).ok_or_else(|| Error::Invariant("substituted class has no summand".into()))?;
                    let cw: Vec<&[usize]> = gsigs.iter().map(|vs| inner.gens.components[vs].weights.as_slice()).collect();
                    let gt = TruncTensor::new(&cw, cap);
                    let dec = Decorated { sigs: &gsigs, orders: &gorders, collections: vec![&inner.gens; gsigs.len()] };
                    let tr = inner.transport(&dec, &gt, &|f| fmap[&f], &|v| vmap[&v], &inner.catalog.classes(sig)[ti], &t.tensor)?;
                    plans.insert(key.clone(), (t.offset, t.coinv.projection.compose(&tr)?, gt));
                }
                let (offset, proj, gt) = &plans[&key];
                let sections: Vec<&SVec> = located.iter().map(|(su, k)| su.coinv.section.column(*k)).collect();
                let mut acc = Accum::new();
                for (parts, c) in expand(&sections) {
                    let mut mm = Vec::new();
                    for (p, (su, _)) in parts.iter().zip(&located) {
                        mm.extend_from_slice(&su.tensor.basis[*p]);
                    }
                    let k = gt.index_of(&mm).ok_or_else(|| Error::Invariant("substitution left the truncated tensor".into()))?;
                    acc.add_vec(proj.column(k), &c);
                }
                tensor_cols.push(acc.finish().map_indices(|i| i + offset));
            }
            let tens = LinearMap::from_columns(tcomp.dim, tensor_cols);
            cols.extend(tens.compose(&s.coinv.section)?.columns().iter().cloned());
        }
        out.insert(*sig, LinearMap::from_columns(tcomp.dim, cols));
    }
    Ok(out)
}

/// Outcome of the three monad identities on one free operad, each as an exact matrix equality.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct TripleLaws {
    pub associativity: bool,
    pub left_unit: bool,
    pub right_unit: bool,
}

impl TripleLaws {
    pub fn holds(&self) -> bool {
        self.associativity && self.left_unit && self.right_unit
    }
}

/// `μ∘μF = μ∘Fμ`, `μ∘ηF = id` and `μ∘Fη = id` on `F(A)`, computed through `F(F(F(A)))`.
pub fn check_triple_laws(op: &FreeOperad) -> Result<TripleLaws> {
    let ff = FreeOperad::new(op.catalog.clone(), &op.as_collection())?;
    let m = mu(op, &ff)?;
    let mut left_unit = true;
    for (s, e) in &ff.eta() {
        left_unit &= m[s].compose(e)?.is_identity();
    }
    let mut right_unit = true;
    for (s, e) in &op.free_map(&ff, &CollectionMorphism { maps: op.eta() })? {
        right_unit &= m[s].compose(e)?.is_identity();
    }
    let fff = FreeOperad::new(op.catalog.clone(), &ff.as_collection())?;
    let mu_f = mu(&ff, &fff)?;
    let f_mu = fff.free_map(&ff, &CollectionMorphism { maps: m.clone() })?;
    let associativity = compose_maps(&m, &mu_f)? == compose_maps(&m, &f_mu)?;
    Ok(TripleLaws { associativity, left_unit, right_unit })
}

/// Componentwise composite `f ∘ g`.
pub fn compose_maps(f: &BTreeMap<Signature, LinearMap>, g: &BTreeMap<Signature, LinearMap>) -> Result<BTreeMap<Signature, LinearMap>> {
    let mut out = BTreeMap::new();
    for (s, gm) in g {
        match f.get(s) {
            Some(fm) => {
                out.insert(*s, fm.compose(gm)?);
            }
            None => {
                if gm.nrows() != 0 {
                    return Err(Error::Dimension(format!("no map at {s} to compose with")));
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::collections::standard::*;
    use std::collections::BTreeSet;

    fn catalog(preset: GammaPreset, arity: usize, weight: usize, genus: u32) -> Arc<ClassCatalog> {
        Arc::new(ClassCatalog::new(preset, Caps { max_arity: arity, max_weight: weight, max_genus: genus }).unwrap())
    }

    /// Unordered binary trees with labeled leaves, as sorted nested strings.
    fn symmetric_trees(leaves: &[usize]) -> BTreeSet<String> {
        if leaves.len() == 1 {
            return BTreeSet::from([leaves[0].to_string()]);
        }
        let mut out = BTreeSet::new();
        let n = leaves.len();
        for mask in 1..(1u32 << n) - 1 {
            let (l, r): (Vec<usize>, Vec<usize>) = (0..n).partition(|i| mask >> i & 1 == 1);
            let l: Vec<usize> = l.iter().map(|&i| leaves[i]).collect();
            let r: Vec<usize> = r.iter().map(|&i| leaves[i]).collect();
            for a in symmetric_trees(&l) {
                for b in symmetric_trees(&r) {
                    let (x, y) = if a < b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
                    out.insert(format!("({x},{y})"));
                }
            }
        }
        out
    }

    fn planar_trees(n: usize) -> Vec<String> {
        if n == 1 {
            return vec!["x".into()];
        }
        let mut out = Vec::new();
        for k in 1..n {
            for a in planar_trees(k) {
                for b in planar_trees(n - k) {
                    out.push(format!("({a}{b})"));
                }
            }
        }
        out
    }

    #[test]
    fn ordinary_classes_over_ternary_corolla() {
        let cat = catalog(GammaPreset::Ordinary, 3, 2, 0);
        let classes = cat.classes(&Signature::new(0, 1, 3));
        assert_eq!(classes.len(), 4);
        assert_eq!(classes.iter().filter(|c| c.weight() == 2).count(), 3);
        assert!(classes[0].is_corolla());
    }

    #[test]
    fn symmetric_binary_dims_match_tree_count() {
        let op = FreeOperad::new(catalog(GammaPreset::Ordinary, 4, 3, 0), &binary_symmetric(GammaPreset::Ordinary)).unwrap();
        for n in 2..=4 {
            let leaves: Vec<usize> = (0..n).collect();
            assert_eq!(op.dim(&Signature::new(0, 1, n)), symmetric_trees(&leaves).len(), "arity {n}");
        }
        assert_eq!(op.dim(&Signature::new(0, 1, 4)), 15);
    }

    #[test]
    fn planar_binary_dims_match_bracketings() {
        let op = FreeOperad::new(catalog(GammaPreset::NonSymmetric, 4, 3, 0), &binary_symmetric(GammaPreset::NonSymmetric)).unwrap();
        for n in 2..=4 {
            assert_eq!(op.dim(&Signature::new(0, 1, n)), planar_trees(n).len(), "arity {n}");
        }
    }

    #[test]
    fn stable_modular_loop_class() {
        let cat = catalog(GammaPreset::StableModular, 1, 2, 1);
        let classes = cat.classes(&Signature::new(1, 0, 1));
        let loop_class = classes.iter().find(|c| c.weight() == 1 && !c.is_corolla()).expect("loop graph");
        assert_eq!(loop_class.graph.genus_of(0), 0);
        assert_eq!(loop_class.graph.graph.edges().len(), 1);
        assert_eq!(loop_class.automorphisms.len(), 2);
    }

    #[test]
    fn regular_binary_gives_leaf_labeled_planar_trees() {
        // one binary operation with free symmetry: plane trees with labeled leaves, n!·C(n-1)
        let op = FreeOperad::new(catalog(GammaPreset::Ordinary, 4, 3, 0), &binary_regular(GammaPreset::Ordinary)).unwrap();
        for (n, fact) in [(2, 2), (3, 6), (4, 24)] {
            assert_eq!(op.dim(&Signature::new(0, 1, n)), fact * planar_trees(n).len());
        }
    }

    #[test]
    fn free_operad_actions_satisfy_relations() {
        let op = FreeOperad::new(catalog(GammaPreset::Ordinary, 4, 3, 0), &binary_regular(GammaPreset::Ordinary)).unwrap();
        op.as_collection().validate().unwrap();
    }
}

#[cfg(test)]
mod triple_tests {
    use super::*;
    use crate::collections::standard::*;

    pub(super) fn check(op: &FreeOperad) {
        let laws = check_triple_laws(op).unwrap();
        assert!(laws.holds(), "{laws:?}");
    }

    #[test]
    fn triple_laws_ordinary_regular_binary() {
        let cat = Arc::new(ClassCatalog::new(GammaPreset::Ordinary, Caps { max_arity: 4, max_weight: 3, max_genus: 0 }).unwrap());
        let op = FreeOperad::new(cat, &binary_regular(GammaPreset::Ordinary)).unwrap();
        check(&op);
    }

    #[test]
    fn triple_laws_planar() {
        let cat = Arc::new(ClassCatalog::new(GammaPreset::NonSymmetric, Caps { max_arity: 4, max_weight: 3, max_genus: 0 }).unwrap());
        let op = FreeOperad::new(cat, &binary_symmetric(GammaPreset::NonSymmetric)).unwrap();
        check(&op);
    }
}

#[cfg(test)]
mod modular_triple {
    use super::*;
    use crate::collections::standard::random_collection;
    use rand::SeedableRng;

    #[test]
    fn triple_laws_stable_modular_random() {
        let caps = Caps { max_arity: 4, max_weight: 3, max_genus: 1 };
        let cat = Arc::new(ClassCatalog::new(GammaPreset::StableModular, caps).unwrap());
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let sigs: Vec<Signature> = GammaPreset::StableModular.signatures(&caps);
        let a = random_collection(GammaPreset::StableModular, &sigs, 2, &mut rng);
        let op = FreeOperad::new(cat, &a).unwrap();
        super::triple_tests::check(&op);
    }
}
