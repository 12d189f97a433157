//! Operad presentations: generators, relations inside the truncated free operad, and the quotient.

use super::algebra::{OperadAlgebra, Quotient};
use super::catalog::std_order;
use super::{ClassCatalog, FreeOperad};
use crate::collections::Collection;
use crate::error::{Error, Result};
use crate::graph::{FlagId, Graph};
use crate::labeling::{Caps, GammaPreset, LabeledGraph, Orientation, Signature};
use crate::linalg::scalar::{format_q, one, parse_q};
use crate::linalg::{SVec, Subspace, Q};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Two standard corollas joined along one flag of each, over the corolla of the composite.
#[derive(Clone, Debug)]
pub struct Grafted {
    pub sig: Signature,
    pub graph: LabeledGraph,
    pub legs: BTreeMap<FlagId, usize>,
    pub orders: Vec<Vec<FlagId>>,
}

impl Grafted {
    /// Moves the leg at position `p` to position `perm[p]`.
    pub fn permute_legs(&self, perm: &[usize]) -> Grafted {
        let mut out = self.clone();
        for p in out.legs.values_mut() {
            *p = perm[*p];
        }
        out
    }
}

/// Joins standard position `outer_pos` of the outer corolla (vertex 0) to `inner_pos` of the inner
/// one (vertex 1). Legs of the inner vertex replace the joined flag, following its standard order.
pub fn graft_corollas(preset: GammaPreset, outer: Signature, outer_pos: usize, inner: Signature, inner_pos: usize) -> Result<Grafted> {
    if outer_pos >= outer.flags() || inner_pos >= inner.flags() {
        return Err(Error::InvalidInput("grafting position out of range".into()));
    }
    let a = preset.standard_corolla(outer);
    let b = preset.standard_corolla(inner);
    let shift = outer.flags() as FlagId;
    let b = b.relabel(&|f| f + shift, &|_| 1);
    let (fa, fb) = (outer_pos as FlagId, inner_pos as FlagId + shift);
    if preset.oriented() && (a.orientation(fa) != Some(Orientation::In) || b.orientation(fb) != Some(Orientation::Out)) {
        return Err(Error::InvalidInput("an edge joins an input of the outer vertex to an output of the inner one".into()));
    }
    let mut graph = Graph::empty();
    graph.vertices = vec![0, 1];
    for (g, _) in [(&a, 0), (&b, 1)] {
        graph.flags.extend(&g.graph.flags);
        graph.boundary.extend(&g.graph.boundary);
        graph.involution.extend(&g.graph.involution);
    }
    graph.involution.insert(fa, fb);
    graph.involution.insert(fb, fa);
    let mut labels = a.labels.clone();
    labels.orientation.extend(b.labels.orientation.clone());
    labels.genus.extend(b.labels.genus.clone());
    labels.cyclic.extend(b.labels.cyclic.clone());
    let g = LabeledGraph { graph, labels };
    let inner_order = std_order(preset, &g, 1);
    let k = inner_order.iter().position(|&f| f == fb).expect("joined flag");
    let inner_rest: Vec<FlagId> = inner_order[k + 1..].iter().chain(&inner_order[..k]).copied().collect();
    let mut seq = Vec::new();
    for f in std_order(preset, &g, 0) {
        if f == fa {
            seq.extend(&inner_rest);
        } else {
            seq.push(f);
        }
    }
    if preset.oriented() && !preset.planar() {
        seq.sort_by_key(|&f| g.orientation(f) != Some(Orientation::Out));
    }
    let sig = if preset.oriented() {
        Signature::new(outer.genus + inner.genus, outer.outputs + inner.outputs - 1, outer.inputs + inner.inputs - 1)
    } else {
        Signature::new(outer.genus + inner.genus, 0, outer.flags() + inner.flags() - 2)
    };
    let legs = seq.iter().enumerate().map(|(p, &f)| (f, p)).collect();
    let orders = vec![std_order(preset, &g, 0), std_order(preset, &g, 1)];
    Ok(Grafted { sig, graph: g, legs, orders })
}

/// A linear chain of `k ≥ 1` vertices; vertex 0 carries the output, vertex `i` feeds vertex `i − 1`.
pub fn chain(k: usize) -> Grafted {
    let preset = GammaPreset::Linear;
    let k32 = k as FlagId;
    let mut graph = Graph::empty();
    graph.vertices = (0..k32).collect();
    graph.flags = (0..2 * k32).collect();
    for f in 0..2 * k32 {
        graph.boundary.insert(f, f / 2);
        graph.involution.insert(f, f);
    }
    for i in 0..k32.saturating_sub(1) {
        graph.involution.insert(2 * i + 1, 2 * i + 2);
        graph.involution.insert(2 * i + 2, 2 * i + 1);
    }
    let mut labels = crate::labeling::Labeling::default();
    labels.orientation = (0..2 * k32).map(|f| (f, if f % 2 == 0 { Orientation::Out } else { Orientation::In })).collect();
    let g = LabeledGraph { graph, labels };
    let orders = (0..k32).map(|v| std_order(preset, &g, v)).collect();
    let legs = BTreeMap::from([(0, 0), (2 * k32 - 1, 1)]);
    Grafted { sig: Signature::new(0, 1, 1), graph: g, legs, orders }
}

impl FreeOperad {
    /// `A_1^{⊗k} → F(A_1)(1, 1)` on the chain of length `k`; the first letter sits at the output.
    pub fn word_map(&self, k: usize) -> Result<crate::linalg::LinearMap> {
        let t = chain(k);
        let d = self.gens.dim(&t.sig);
        let dims = vec![d; k];
        let cols = crate::linalg::tensor::multi_indices(&dims).map(|w| self.embed(&t.sig, &t.graph, &t.legs, &t.orders, &[(w, one())])).collect::<Result<_>>()?;
        Ok(crate::linalg::LinearMap::from_columns(self.dim(&t.sig), cols))
    }

    /// The decorated two-vertex graph `t` with basis vectors `a` (outer) and `b` (inner).
    pub fn grafted_element(&self, t: &Grafted, a: usize, b: usize) -> Result<SVec> {
        self.embed(&t.sig, &t.graph, &t.legs, &t.orders, &[(vec![a, b], one())])
    }
}

/// Generators, relations inside `F(E)` and caps.
#[derive(Clone, Debug)]
pub struct OperadPresentation {
    pub generators: Collection,
    pub relations: BTreeMap<Signature, Subspace>,
    pub caps: Caps,
}

impl OperadPresentation {
    pub fn preset(&self) -> GammaPreset {
        self.generators.preset
    }

    pub fn free(&self) -> Result<FreeOperad> {
        let cat = Arc::new(ClassCatalog::new(self.preset(), self.caps)?);
        FreeOperad::new(cat, &self.generators)
    }

    pub fn free_on_catalog(&self, cat: Arc<ClassCatalog>) -> Result<FreeOperad> {
        if cat.preset != self.preset() || cat.caps != self.caps {
            return Err(Error::InvalidInput("catalog preset or caps differ from the presentation".into()));
        }
        FreeOperad::new(cat, &self.generators)
    }

    /// Quotient of `F(E)` by the ideal generated by the relations.
    pub fn quotient(&self, free: &FreeOperad) -> Result<PresentedOperad> {
        for (s, r) in &self.relations {
            if r.ambient() != free.dim(s) {
                return Err(Error::InvalidInput(format!("relations at {s} live in dimension {}, but F(E) has dimension {}", r.ambient(), free.dim(s))));
            }
        }
        let fe = OperadAlgebra::free_on(free)?;
        let ideal = fe.ideal_generated(&self.relations)?;
        let q = fe.quotient(&ideal)?;
        Ok(PresentedOperad { free: fe, ideal, quotient: q })
    }

    pub fn to_json(&self) -> Value {
        let rels: Vec<Value> = self
            .relations
            .iter()
            .filter(|(_, r)| !r.is_zero())
            .map(|(s, r)| {
                let n = r.ambient();
                json!({
                    "signature": s,
                    "ambient": n,
                    "vectors": r.basis().map(|v| v.to_dense(n).iter().map(format_q).collect::<Vec<_>>()).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({ "caps": self.caps, "generators": self.generators.to_json(), "relations": rels })
    }

    pub fn from_json(v: &Value) -> Result<OperadPresentation> {
        let generators = Collection::from_json(v.get("generators").ok_or_else(|| Error::Parse("presentation needs generators".into()))?)?;
        let caps: Caps = match v.get("caps") {
            Some(c) => serde_json::from_value(c.clone())?,
            None => Caps::default(),
        };
        let mut relations = BTreeMap::new();
        for r in v.get("relations").and_then(Value::as_array).map(Vec::as_slice).unwrap_or(&[]) {
            let sig: Signature = serde_json::from_value(r.get("signature").cloned().unwrap_or(Value::Null))?;
            let vecs = r.get("vectors").and_then(Value::as_array).ok_or_else(|| Error::Parse("relation needs vectors".into()))?;
            let mut dense: Vec<Vec<Q>> = Vec::new();
            for row in vecs {
                let row = row.as_array().ok_or_else(|| Error::Parse("relation vector must be an array".into()))?;
                dense.push(row.iter().map(|x| x.as_str().and_then(parse_q).or_else(|| x.as_i64().map(|i| Q::from_integer(i.into())))).collect::<Option<_>>().ok_or_else(|| Error::Parse("bad rational in relation".into()))?);
            }
            let n = match r.get("ambient").and_then(Value::as_u64) {
                Some(n) => n as usize,
                None => dense.first().map_or(0, Vec::len),
            };
            if dense.iter().any(|row| row.len() != n) {
                return Err(Error::Parse(format!("relation vectors at {sig} must have length {n}")));
            }
            let sub = relations.entry(sig).or_insert_with(|| Subspace::zero(n));
            sub.extend(dense.iter().map(|row| SVec::from_dense(row)));
        }
        Ok(OperadPresentation { generators, relations, caps })
    }
}

/// `F(E)`, the ideal and the quotient operad.
#[derive(Clone, Debug)]
pub struct PresentedOperad {
    pub free: OperadAlgebra,
    pub ideal: BTreeMap<Signature, Subspace>,
    pub quotient: Quotient,
}

impl PresentedOperad {
    pub fn algebra(&self) -> &OperadAlgebra {
        &self.quotient.algebra
    }
}

/// One binary generator with associativity relations, in the rooted presets.
///
/// Symmetric presets use the regular two-dimensional generator; the planar one uses a single
/// binary operation.
pub fn associative(preset: GammaPreset, caps: Caps) -> Result<(OperadPresentation, FreeOperad)> {
    use crate::collections::standard::{binary_regular, binary_symmetric};
    let gens = match preset {
        GammaPreset::Ordinary => binary_regular(preset),
        GammaPreset::NonSymmetric => binary_symmetric(preset),
        _ => return Err(Error::InvalidInput(format!("the associative operad is provided for ordinary and non_symmetric, not {preset}"))),
    };
    let pres = OperadPresentation { generators: gens, relations: BTreeMap::new(), caps };
    let free = pres.free()?;
    let bin = Signature::new(0, 1, 2);
    // (x1 x2) x3 - x1 (x2 x3)
    let left = free.grafted_element(&graft_corollas(preset, bin, 1, bin, 0)?, 0, 0)?;
    let right = free.grafted_element(&graft_corollas(preset, bin, 2, bin, 0)?, 0, 0)?;
    let tern = Signature::new(0, 1, 3);
    let rel = Subspace::span(free.dim(&tern), [left.sub(&right)]);
    Ok((OperadPresentation { relations: BTreeMap::from([(tern, rel)]), ..pres }, free))
}

/// The commutative operad on the ordinary preset: one symmetric binary operation, associative.
pub fn commutative(caps: Caps) -> Result<(OperadPresentation, FreeOperad)> {
    let preset = GammaPreset::Ordinary;
    let pres = OperadPresentation { generators: crate::collections::standard::binary_symmetric(preset), relations: BTreeMap::new(), caps };
    let free = pres.free()?;
    let bin = Signature::new(0, 1, 2);
    let left = free.grafted_element(&graft_corollas(preset, bin, 1, bin, 0)?, 0, 0)?;
    let right = free.grafted_element(&graft_corollas(preset, bin, 2, bin, 0)?, 0, 0)?;
    let tern = Signature::new(0, 1, 3);
    let rel = Subspace::span(free.dim(&tern), [left.sub(&right)]);
    Ok((OperadPresentation { relations: BTreeMap::from([(tern, rel)]), ..pres }, free))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factorial(n: usize) -> usize {
        (1..=n).product()
    }

    #[test]
    fn associative_symmetric_dims_are_factorials() {
        let (pres, free) = associative(GammaPreset::Ordinary, Caps { max_arity: 4, max_weight: 3, max_genus: 0 }).unwrap();
        let q = pres.quotient(&free).unwrap();
        for n in 2..=4 {
            assert_eq!(q.algebra().dim(&Signature::new(0, 1, n)), factorial(n), "arity {n}");
        }
        assert!(q.algebra().check_axioms().unwrap().holds());
    }

    #[test]
    fn associative_planar_dims_are_one() {
        let (pres, free) = associative(GammaPreset::NonSymmetric, Caps { max_arity: 4, max_weight: 3, max_genus: 0 }).unwrap();
        let q = pres.quotient(&free).unwrap();
        for n in 2..=4 {
            assert_eq!(q.algebra().dim(&Signature::new(0, 1, n)), 1, "arity {n}");
        }
        assert!(q.algebra().check_axioms().unwrap().holds());
    }

    #[test]
    fn presentation_json_round_trip() {
        let (pres, _) = associative(GammaPreset::NonSymmetric, Caps { max_arity: 3, max_weight: 2, max_genus: 0 }).unwrap();
        let back = OperadPresentation::from_json(&pres.to_json()).unwrap();
        assert_eq!(back.relations, pres.relations);
        assert_eq!(back.caps, pres.caps);
    }
}
