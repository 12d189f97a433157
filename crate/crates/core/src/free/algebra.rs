//! Algebras over the free-operad triple: axioms, morphisms, ideals, quotients, white products.

use super::{compose_maps, expand, mu, ClassCatalog, FreeOperad, TruncTensor};
use crate::collections::{Collection, CollectionMorphism, Component};
use crate::error::{Error, Result};
use crate::graph::{FlagId, VertexId};
use crate::labeling::{LabeledMorphism, Signature};
use crate::linalg::svec::Accum;
use crate::linalg::tensor::{flatten, multi_indices};
use crate::linalg::{GroupAction, LinearMap, SVec, Subspace};
use std::collections::BTreeMap;
use std::sync::Arc;

pub type ComponentMaps = BTreeMap<Signature, LinearMap>;

/// A collection with a structure map `α : F(A) → A`.
#[derive(Clone, Debug)]
pub struct OperadAlgebra {
    pub collection: Collection,
    pub alpha: ComponentMaps,
    /// `F(A)`, the domain of `α`.
    pub free: FreeOperad,
}

#[derive(Clone, Debug, Default, serde::Serialize)]
pub struct AxiomResult {
    pub unit_law: bool,
    pub associativity: bool,
    pub failures: Vec<String>,
}

impl AxiomResult {
    pub fn holds(&self) -> bool {
        self.unit_law && self.associativity
    }
}

impl OperadAlgebra {
    pub fn catalog(&self) -> &Arc<ClassCatalog> {
        &self.free.catalog
    }

    pub fn dim(&self, sig: &Signature) -> usize {
        self.collection.dim(sig)
    }

    /// `F(E)` with `α = μ`.
    pub fn free_on(op: &FreeOperad) -> Result<OperadAlgebra> {
        let coll = op.as_collection();
        let ff = FreeOperad::new(op.catalog.clone(), &coll)?;
        let alpha = mu(op, &ff)?;
        Ok(OperadAlgebra { collection: coll, alpha, free: ff })
    }

    /// The one-dimensional collection with every composite equal to 1.
    pub fn unit(catalog: Arc<ClassCatalog>) -> Result<OperadAlgebra> {
        let coll = Collection::unit(catalog.preset, &catalog.caps);
        let free = FreeOperad::new(catalog, &coll)?;
        let mut alpha = BTreeMap::new();
        for (sig, comp) in &free.components {
            let classes = free.catalog.classes(sig);
            let mut row = Accum::new();
            for su in &comp.summands {
                let Some(k) = su.tensor.index_of(&vec![0; classes[su.class].weight()]) else { continue };
                let p = su.coinv.projection.column(k);
                let (i, c) = p.entries().first().ok_or_else(|| Error::Invariant("unit decoration projects to zero".into()))?;
                row.add(su.offset + i, crate::linalg::scalar::one() / c);
            }
            alpha.insert(*sig, LinearMap::from_rows(comp.dim, &[row.finish()]));
        }
        Ok(OperadAlgebra { collection: coll, alpha, free })
    }

    /// Builds `F(A)` for `coll` and wraps the given structure map.
    pub fn new(catalog: Arc<ClassCatalog>, collection: Collection, alpha: ComponentMaps) -> Result<OperadAlgebra> {
        let free = FreeOperad::new(catalog, &collection)?;
        for (s, c) in &free.components {
            let a = alpha.get(s).ok_or_else(|| Error::InvalidInput(format!("structure map missing at {s}")))?;
            if a.ncols() != c.dim || a.nrows() != collection.dim(s) {
                return Err(Error::Dimension(format!("structure map at {s} is {}x{}, expected {}x{}", a.nrows(), a.ncols(), collection.dim(s), c.dim)));
            }
        }
        Ok(OperadAlgebra { collection, alpha, free })
    }

    /// `α ∘ η = id` and `α ∘ F(α) = α ∘ μ`.
    pub fn check_axioms(&self) -> Result<AxiomResult> {
        let mut r = AxiomResult { unit_law: true, associativity: true, failures: Vec::new() };
        for (s, e) in self.free.eta() {
            if !self.alpha[&s].compose(&e)?.is_identity() {
                r.unit_law = false;
                r.failures.push(format!("unit law fails at {s}"));
            }
        }
        let ff = FreeOperad::new(self.free.catalog.clone(), &self.free.as_collection())?;
        let m = mu(&self.free, &ff)?;
        let f_alpha = ff.free_map(&self.free, &CollectionMorphism { maps: self.alpha.clone() })?;
        let lhs = compose_maps(&self.alpha, &f_alpha)?;
        let rhs = compose_maps(&self.alpha, &m)?;
        for (s, l) in &lhs {
            if rhs.get(s) != Some(l) {
                r.associativity = false;
                r.failures.push(format!("associativity fails at {s}"));
            }
        }
        Ok(r)
    }

    /// `f ∘ α_A = α_B ∘ F(f)`.
    pub fn is_morphism_to(&self, target: &OperadAlgebra, f: &CollectionMorphism) -> Result<bool> {
        let ff = self.free.free_map(&target.free, f)?;
        let lhs = compose_maps(&f.maps, &self.alpha)?;
        let rhs = compose_maps(&target.alpha, &ff)?;
        Ok(lhs.iter().all(|(s, l)| rhs.get(s).map_or(l.is_zero(), |r| r == l)))
    }

    /// Closes a family of subspaces under the automorphism actions.
    pub fn saturate(&self, r: &BTreeMap<Signature, Subspace>) -> BTreeMap<Signature, Subspace> {
        let mut out = BTreeMap::new();
        for (s, sub) in r {
            let mut cur = sub.clone();
            let gens = self.collection.component(s).map(|c| c.action.generators.clone()).unwrap_or_default();
            loop {
                let mut next = cur.clone();
                for g in &gens {
                    next.extend(cur.basis().map(|v| g.apply(v)));
                }
                if next.dim() == cur.dim() {
                    break;
                }
                cur = next;
            }
            out.insert(*s, cur);
        }
        out
    }

    /// Smallest family of invariant subspaces containing `r` and closed under `α` with one slot in it.
    pub fn ideal_generated(&self, r: &BTreeMap<Signature, Subspace>) -> Result<BTreeMap<Signature, Subspace>> {
        let weights = |s: &Signature| self.collection.component(s).map(|c| c.weights.clone()).unwrap_or_default();
        for (s, sub) in r {
            let w = weights(s);
            for v in sub.basis() {
                let ws: std::collections::BTreeSet<usize> = v.entries().iter().map(|(i, _)| w[*i]).collect();
                if ws.len() > 1 {
                    return Err(Error::InvalidInput(format!("relation at {s} is not weight-homogeneous")));
                }
            }
        }
        let mut ideal = self.saturate(r);
        for _ in 0..8 {
            let mut next: BTreeMap<Signature, Subspace> = self
                .collection
                .components
                .iter()
                .map(|(s, c)| (*s, ideal.get(s).cloned().unwrap_or_else(|| Subspace::zero(c.dim()))))
                .collect();
            let cap = self.free.caps().max_weight;
            for (sig, comp) in &self.free.components {
                let classes = self.free.catalog.classes(sig);
                for su in &comp.summands {
                    let c = &classes[su.class];
                    for v0 in 0..c.weight() {
                        let Some(rv) = ideal.get(&c.vertex_sigs[v0]) else { continue };
                        let w0 = weights(&c.vertex_sigs[v0]);
                        for rvec in rv.basis() {
                            let wr = w0[rvec.leading().unwrap()];
                            if wr > cap {
                                continue;
                            }
                            let others: Vec<Vec<usize>> = (0..c.weight()).filter(|&v| v != v0).map(|v| weights(&c.vertex_sigs[v])).collect();
                            let refs: Vec<&[usize]> = others.iter().map(|x| x.as_slice()).collect();
                            for m in TruncTensor::new(&refs, cap - wr).basis {
                                let mut acc = Accum::new();
                                for (i, x) in rvec.entries() {
                                    let mut full = m.clone();
                                    full.insert(v0, *i);
                                    let k = su.tensor.index_of(&full).ok_or_else(|| Error::Invariant("ideal element outside the truncated tensor".into()))?;
                                    acc.add(k, x.clone());
                                }
                                let x = su.coinv.projection.apply(&acc.finish()).map_indices(|i| i + su.offset);
                                let y = self.alpha[sig].apply(&x);
                                if !y.is_zero() {
                                    next.get_mut(sig).expect("component").insert(y);
                                }
                            }
                        }
                    }
                }
            }
            let next = self.saturate(&next);
            let grew = next.iter().any(|(s, sub)| ideal.get(s).map_or(sub.dim() > 0, |o| o.dim() != sub.dim()));
            ideal = next;
            if !grew {
                return Ok(ideal);
            }
        }
        Err(Error::Invariant("ideal generation did not stabilize".into()))
    }

    /// Checks that `α` sends decorations with one slot in `ideal` into `ideal`.
    pub fn is_ideal(&self, ideal: &BTreeMap<Signature, Subspace>) -> Result<bool> {
        let closed = self.ideal_generated(ideal)?;
        Ok(closed.iter().all(|(s, sub)| ideal.get(s).map_or(sub.dim() == 0, |i| i.dim() == sub.dim())))
    }

    /// `A / I` with projection and section, `α_Q = π ∘ α ∘ F(s)`.
    pub fn quotient(&self, ideal: &BTreeMap<Signature, Subspace>) -> Result<Quotient> {
        let mut coll = Collection::empty(self.collection.preset);
        let mut proj = BTreeMap::new();
        let mut sect = BTreeMap::new();
        for (s, c) in &self.collection.components {
            let i = ideal.get(s).cloned().unwrap_or_else(|| Subspace::zero(c.dim()));
            let p = i.quotient_map();
            let q = i.quotient_section();
            let free = i.free_columns();
            proj.insert(*s, p.clone());
            sect.insert(*s, q.clone());
            if free.is_empty() {
                continue;
            }
            let generators = c.action.generators.iter().map(|g| p.compose(g)?.compose(&q)).collect::<Result<_>>()?;
            let comp = Component {
                action: GroupAction { dim: free.len(), generators, relations: c.action.relations.clone() },
                weights: free.iter().map(|&k| c.weights[k]).collect(),
            };
            coll.components.insert(*s, comp);
        }
        let fq = FreeOperad::new(self.free.catalog.clone(), &coll)?;
        let f_s = fq.free_map(&self.free, &CollectionMorphism { maps: sect.iter().filter(|(s, _)| coll.components.contains_key(s)).map(|(s, m)| (*s, m.clone())).collect() })?;
        let alpha = compose_maps(&proj, &compose_maps(&self.alpha, &f_s)?)?;
        let alpha = alpha.into_iter().filter(|(s, _)| coll.components.contains_key(s)).collect();
        Ok(Quotient {
            algebra: OperadAlgebra { collection: coll, alpha, free: fq },
            projection: CollectionMorphism { maps: proj },
            section: CollectionMorphism { maps: sect },
        })
    }

    /// `A ○ B` with `α = (α_A ⊗ α_B) ∘ j`.
    pub fn white_product(&self, other: &OperadAlgebra) -> Result<OperadAlgebra> {
        let coll = self.collection.white_product(&other.collection)?;
        let fab = FreeOperad::new(self.free.catalog.clone(), &coll)?;
        let j = j_map(&fab, &self.free, &other.free)?;
        let mut alpha = BTreeMap::new();
        for (s, jm) in &j {
            let ab = self.alpha[s].kron(&other.alpha[s]);
            alpha.insert(*s, ab.compose(jm)?);
        }
        Ok(OperadAlgebra { collection: coll, alpha, free: fab })
    }

    /// The value on a labeled morphism `h : τ → σ`, as a map `⊗_{v ∈ V_τ} A(τ_v) → ⊗_{w ∈ V_σ} A(σ_w)`
    /// with factors in vertex-id order and each corolla in standard flag order.
    pub fn value_on_morphism(&self, h: &LabeledMorphism) -> Result<LinearMap> {
        let preset = self.collection.preset;
        let tau = h.source();
        let sigma = h.target();
        let tv = &tau.graph.vertices;
        let sv = &sigma.graph.vertices;
        let dims_of = |g: &crate::labeling::LabeledGraph, vs: &[VertexId]| -> Vec<usize> { vs.iter().map(|&v| self.collection.dim(&preset.signature_at(g, v))).collect() };
        let tdims = dims_of(&tau, tv);
        let sdims = dims_of(&sigma, sv);
        let d = h.morphism.atomize();
        // per target vertex: the source vertices over it and the composite map on their factors
        let mut blocks: Vec<(Vec<usize>, LinearMap)> = Vec::new();
        for (w, part) in &d.parts {
            let sig = preset.signature_at(&sigma, *w);
            let order = super::catalog::std_order(preset, &sigma, *w);
            let legs: BTreeMap<FlagId, usize> = order.iter().enumerate().map(|(k, s)| (part.flag_map[s], k)).collect();
            let tw = tau.restrict(&part.source);
            let vs: Vec<VertexId> = part.source.vertices.clone();
            let orders: Vec<Vec<FlagId>> = vs.iter().map(|&v| super::catalog::std_order(preset, &tw, v)).collect();
            let local_dims: Vec<usize> = vs.iter().map(|&v| self.collection.dim(&preset.signature_at(&tw, v))).collect();
            let mut cols = Vec::new();
            for m in multi_indices(&local_dims) {
                let x = self.free.embed(&sig, &tw, &legs, &orders, &[(m, crate::linalg::scalar::one())])?;
                cols.push(self.alpha[&sig].apply(&x));
            }
            let slots: Vec<usize> = vs.iter().map(|v| tv.iter().position(|x| x == v).expect("source vertex")).collect();
            blocks.push((slots, LinearMap::from_columns(self.collection.dim(&sig), cols)));
        }
        let total: usize = tdims.iter().product();
        let cols = (0..total)
            .map(|k| {
                let m = crate::linalg::tensor::unflatten(&tdims, k);
                let images: Vec<SVec> = blocks
                    .iter()
                    .map(|(slots, map)| {
                        let local: Vec<usize> = slots.iter().map(|&i| m[i]).collect();
                        let ld: Vec<usize> = slots.iter().map(|&i| tdims[i]).collect();
                        map.column(flatten(&ld, &local)).clone()
                    })
                    .collect();
                let refs: Vec<&SVec> = images.iter().collect();
                SVec::from_pairs(expand(&refs).into_iter().map(|(mm, c)| (flatten(&sdims, &mm), c)))
            })
            .collect();
        Ok(LinearMap::from_columns(sdims.iter().product(), cols))
    }
}

/// `A / I` with its projection and section.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: OperadAlgebra,
    pub projection: CollectionMorphism,
    pub section: CollectionMorphism,
}

/// `j : F(A ○ B) → F(A) ○ F(B)`: each decorated graph goes to the pair of its two decorations
/// on the same graph.
pub fn j_map(fab: &FreeOperad, fa: &FreeOperad, fb: &FreeOperad) -> Result<ComponentMaps> {
    let mut out = BTreeMap::new();
    for (sig, comp) in &fab.components {
        let (ca, cb) = match (fa.components.get(sig), fb.components.get(sig)) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(Error::Invariant(format!("F(A○B) is nonzero at {sig} but a factor vanishes"))),
        };
        let classes = fab.catalog.classes(sig);
        let mut cols = Vec::with_capacity(comp.dim);
        for s in &comp.summands {
            let c = &classes[s.class];
            let sa = ca.summand_of_class(s.class).ok_or_else(|| Error::Invariant("missing summand in F(A)".into()))?;
            let sb = cb.summand_of_class(s.class).ok_or_else(|| Error::Invariant("missing summand in F(B)".into()))?;
            let db: Vec<usize> = c.vertex_sigs.iter().map(|vs| fb.gens.dim(vs)).collect();
            let tcols: Vec<SVec> = s
                .tensor
                .basis
                .iter()
                .map(|m| {
                    let ma: Vec<usize> = m.iter().zip(&db).map(|(&x, &d)| x / d).collect();
                    let mb: Vec<usize> = m.iter().zip(&db).map(|(&x, &d)| x % d).collect();
                    let ia = sa.tensor.index_of(&ma).ok_or_else(|| Error::Invariant("A-part outside the truncation".into()))?;
                    let ib = sb.tensor.index_of(&mb).ok_or_else(|| Error::Invariant("B-part outside the truncation".into()))?;
                    let xa = sa.coinv.projection.column(ia);
                    let xb = sb.coinv.projection.column(ib);
                    let mut acc = Accum::new();
                    for (i, x) in xa.entries() {
                        for (k, y) in xb.entries() {
                            acc.add((sa.offset + i) * cb.dim + sb.offset + k, x * y);
                        }
                    }
                    Ok(acc.finish())
                })
                .collect::<Result<_>>()?;
            let block = LinearMap::from_columns(ca.dim * cb.dim, tcols).compose(&s.coinv.section)?;
            cols.extend(block.columns().iter().cloned());
        }
        out.insert(*sig, LinearMap::from_columns(ca.dim * cb.dim, cols));
    }
    Ok(out)
}

/// The operad morphism `F(E) → B` extending `φ : E → B`, namely `α_B ∘ F(φ)`.
pub fn extend_from_generators(fe: &FreeOperad, target: &OperadAlgebra, phi: &CollectionMorphism) -> Result<ComponentMaps> {
    let f = fe.free_map(&target.free, phi)?;
    compose_maps(&target.alpha, &f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::collections::standard::binary_regular;
    use crate::free::presentation::{associative, graft_corollas};
    use crate::graph::morphism::{contract_edges, contraction_to_corolla, total_grafting};
    use crate::labeling::axioms::lift;
    use crate::labeling::{Caps, GammaPreset};

    fn caps() -> Caps {
        Caps { max_arity: 4, max_weight: 3, max_genus: 0 }
    }

    fn assoc(preset: GammaPreset) -> OperadAlgebra {
        let (pres, free) = associative(preset, caps()).unwrap();
        pres.quotient(&free).unwrap().quotient.algebra
    }

    #[test]
    fn unit_operad_satisfies_axioms() {
        let cat = Arc::new(ClassCatalog::new(GammaPreset::Ordinary, caps()).unwrap());
        let u = OperadAlgebra::unit(cat).unwrap();
        assert!(u.check_axioms().unwrap().holds());
    }

    #[test]
    fn free_operad_is_an_algebra() {
        let cat = Arc::new(ClassCatalog::new(GammaPreset::NonSymmetric, caps()).unwrap());
        let op = FreeOperad::new(cat, &crate::collections::standard::binary_symmetric(GammaPreset::NonSymmetric)).unwrap();
        assert!(OperadAlgebra::free_on(&op).unwrap().check_axioms().unwrap().holds());
    }

    #[test]
    fn white_product_with_unit_is_isomorphic() {
        let a = assoc(GammaPreset::Ordinary);
        let u = OperadAlgebra::unit(a.catalog().clone()).unwrap();
        let au = a.white_product(&u).unwrap();
        assert!(au.check_axioms().unwrap().holds());
        let iso = CollectionMorphism { maps: a.collection.components.keys().map(|s| (*s, LinearMap::identity(a.dim(s)))).collect() };
        for s in a.collection.components.keys() {
            assert_eq!(au.dim(s), a.dim(s));
        }
        assert!(a.is_morphism_to(&au, &iso).unwrap());
        assert!(au.is_morphism_to(&a, &iso).unwrap());
    }

    #[test]
    fn white_square_of_associative_operad() {
        let a = assoc(GammaPreset::NonSymmetric);
        let aa = a.white_product(&a).unwrap();
        for s in a.collection.components.keys() {
            assert_eq!(aa.dim(s), a.dim(s) * a.dim(s));
        }
        assert!(aa.check_axioms().unwrap().holds());
    }

    #[test]
    fn j_is_injective_at_arity_three() {
        let cat = Arc::new(ClassCatalog::new(GammaPreset::Ordinary, caps()).unwrap());
        let e = binary_regular(GammaPreset::Ordinary);
        let fe = FreeOperad::new(cat.clone(), &e).unwrap();
        let fee = FreeOperad::new(cat, &e.white_product(&e).unwrap()).unwrap();
        let j = j_map(&fee, &fe, &fe).unwrap();
        let s3 = Signature::new(0, 1, 3);
        assert_eq!(j[&s3].rank(), fee.dim(&s3));
        for (s, m) in &j {
            let src = &fee.components[s].action;
            let tgt_a = &fe.components[s].action;
            for (g, (ga, gb)) in src.generators.iter().zip(tgt_a.generators.iter().zip(&tgt_a.generators)) {
                assert_eq!(m.compose(g).unwrap(), ga.kron(gb).compose(m).unwrap());
            }
        }
    }

    #[test]
    fn extension_of_identity_is_identity() {
        let cat = Arc::new(ClassCatalog::new(GammaPreset::NonSymmetric, caps()).unwrap());
        let op = FreeOperad::new(cat, &crate::collections::standard::binary_symmetric(GammaPreset::NonSymmetric)).unwrap();
        let b = OperadAlgebra::free_on(&op).unwrap();
        let eta = CollectionMorphism { maps: op.eta() };
        let ext = extend_from_generators(&op, &b, &eta).unwrap();
        assert!(ext.values().all(LinearMap::is_identity));
        let zero = CollectionMorphism { maps: eta.maps.iter().map(|(s, m)| (*s, LinearMap::zero(m.nrows(), m.ncols()))).collect() };
        assert!(extend_from_generators(&op, &b, &zero).unwrap().values().all(LinearMap::is_zero));
    }

    #[test]
    fn value_on_morphism_is_functorial() {
        let preset = GammaPreset::Ordinary;
        let a = assoc(preset);
        let bin = Signature::new(0, 1, 2);
        let t = graft_corollas(preset, bin, 1, bin, 0).unwrap();
        let id = crate::labeling::LabeledMorphism::identity(&t.graph);
        let v = a.value_on_morphism(&id).unwrap();
        assert!(v.is_identity());
        let graft = lift(total_grafting(&t.graph.graph), &t.graph.labels);
        assert!(a.value_on_morphism(&graft).unwrap().is_identity());
        let tern = Signature::new(0, 1, 4);
        let three = a.catalog().classes(&tern).iter().find(|c| c.weight() == 3).unwrap().graph.clone();
        let e = three.graph.edges()[0];
        let g = lift(contract_edges(&three.graph, &[e]), &three.labels);
        let h = lift(contraction_to_corolla(&g.morphism.target), &g.target_labels);
        let hg = h.after(&g).unwrap();
        let lhs = a.value_on_morphism(&hg).unwrap();
        let rhs = a.value_on_morphism(&h).unwrap().compose(&a.value_on_morphism(&g).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert!(!lhs.is_zero());
    }
}
