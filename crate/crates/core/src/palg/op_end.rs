//! Endomorphism operads of flavored families and the space of `P`-algebra structures on them.

use crate::collections::{aut_generators, aut_relations, Collection, CollectionMorphism, Component};
use crate::error::{Error, Result};
use crate::free::algebra::{extend_from_generators, OperadAlgebra};
use crate::free::{ClassCatalog, FreeOperad};
use crate::labeling::{GammaPreset, Orientation, Signature};
use crate::linalg::group::{equivariant_maps, perm_inverse, combine};
use crate::linalg::scalar::{format_q, one, parse_q, q};
use crate::linalg::tensor::{factor_permutation, flatten, unflatten};
use crate::linalg::{GroupAction, LinearMap, SVec, Q};
use crate::operad_cohom::Presented;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Spaces indexed by flavor and the one-edge bilinear forms between them.
///
/// Oriented presets use the flavors `out` and `in` with a form `V_out ⊗ V_in → k`;
/// unoriented presets use the single flavor `v` with a symmetric form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlavoredFamily {
    pub preset: GammaPreset,
    pub dims: BTreeMap<String, usize>,
    pub pairings: BTreeMap<(String, String), Vec<Vec<Q>>>,
}

fn flavor_at(preset: GammaPreset, sig: Signature, pos: usize) -> &'static str {
    if !preset.oriented() {
        "v"
    } else if pos < sig.outputs {
        "out"
    } else {
        "in"
    }
}

fn identity_form(d: usize) -> Vec<Vec<Q>> {
    (0..d).map(|i| (0..d).map(|j| if i == j { one() } else { q(0) }).collect()).collect()
}

impl FlavoredFamily {
    /// `V_out = V`, `V_in = V*` with the evaluation pairing, or `V` with the standard form when unoriented.
    pub fn standard(preset: GammaPreset, dim: usize) -> Self {
        let (dims, key) = if preset.oriented() {
            (BTreeMap::from([("out".to_string(), dim), ("in".to_string(), dim)]), ("out".to_string(), "in".to_string()))
        } else {
            (BTreeMap::from([("v".to_string(), dim)]), ("v".to_string(), "v".to_string()))
        };
        FlavoredFamily { preset, dims, pairings: BTreeMap::from([(key, identity_form(dim))]) }
    }

    fn required_pair(&self) -> (String, String) {
        if self.preset.oriented() {
            ("out".into(), "in".into())
        } else {
            ("v".into(), "v".into())
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (a, b) = self.required_pair();
        let da = *self.dims.get(&a).ok_or_else(|| Error::InvalidInput(format!("flavor `{a}` has no dimension")))?;
        let db = *self.dims.get(&b).ok_or_else(|| Error::InvalidInput(format!("flavor `{b}` has no dimension")))?;
        let m = self.pairings.get(&(a.clone(), b.clone())).ok_or_else(|| Error::InvalidInput(format!("missing pairing for flavors ({a}, {b})")))?;
        if m.len() != da || m.iter().any(|r| r.len() != db) {
            return Err(Error::Dimension(format!("pairing ({a}, {b}) must be {da}x{db}")));
        }
        if a == b && (0..da).any(|i| (0..da).any(|j| m[i][j] != m[j][i])) {
            return Err(Error::InvalidInput("the pairing of an unoriented family must be symmetric".into()));
        }
        Ok(())
    }

    fn position_dims(&self, sig: Signature) -> Vec<usize> {
        (0..sig.flags()).map(|k| self.dims[flavor_at(self.preset, sig, k)]).collect()
    }

    /// `Coll(V)(σ) = ⊗_j V_j^{⊗ F^{(j)}}` with automorphisms permuting tensor factors.
    pub fn collection(&self, caps: &crate::labeling::Caps) -> Result<Collection> {
        self.validate()?;
        let mut out = Collection::empty(self.preset);
        for sig in self.preset.signatures(caps) {
            let dims = self.position_dims(sig);
            let generators = aut_generators(self.preset, sig).iter().map(|p| factor_permutation(&dims, &perm_inverse(p))).collect();
            let dim = dims.iter().product();
            let action = GroupAction { dim, generators, relations: aut_relations(self.preset, sig) };
            out = out.with_component(sig, Component { action, weights: vec![1; dim] })?;
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        let pairings: Vec<Value> = self
            .pairings
            .iter()
            .map(|((a, b), m)| json!({ "flavors": [a, b], "matrix": m.iter().map(|r| r.iter().map(format_q).collect::<Vec<_>>()).collect::<Vec<_>>() }))
            .collect();
        json!({ "preset": self.preset.name(), "dims": self.dims, "pairings": pairings })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("family: {m}"));
        let preset: GammaPreset = v["preset"].as_str().ok_or_else(|| bad("missing preset"))?.parse()?;
        let dims = v["dims"]
            .as_object()
            .ok_or_else(|| bad("missing dims"))?
            .iter()
            .map(|(k, d)| d.as_u64().map(|d| (k.clone(), d as usize)).ok_or_else(|| bad("dims must be integers")))
            .collect::<Result<_>>()?;
        let mut pairings = BTreeMap::new();
        for p in v["pairings"].as_array().ok_or_else(|| bad("missing pairings"))? {
            let fl = p["flavors"].as_array().filter(|a| a.len() == 2).ok_or_else(|| bad("pairing needs two flavors"))?;
            let name = |x: &Value| x.as_str().map(str::to_string).ok_or_else(|| bad("flavor names are strings"));
            let rows = p["matrix"]
                .as_array()
                .ok_or_else(|| bad("pairing matrix"))?
                .iter()
                .map(|r| {
                    r.as_array()
                        .ok_or_else(|| bad("matrix rows"))?
                        .iter()
                        .map(|x| x.as_str().and_then(parse_q).or_else(|| x.as_i64().map(q)).ok_or_else(|| bad("matrix entries")))
                        .collect::<Result<Vec<Q>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            pairings.insert((name(&fl[0])?, name(&fl[1])?), rows);
        }
        let fam = FlavoredFamily { preset, dims, pairings };
        fam.validate()?;
        Ok(fam)
    }
}

/// `OpEnd(V, v)`: the collection `Coll(V)` with structure map contracting every edge by its form.
#[derive(Clone, Debug)]
pub struct EndomorphismOperad {
    pub family: FlavoredFamily,
    pub algebra: OperadAlgebra,
}

pub fn op_end(family: &FlavoredFamily, catalog: Arc<ClassCatalog>) -> Result<EndomorphismOperad> {
    if family.preset != catalog.preset {
        return Err(Error::InvalidInput(format!("family is for {}, catalog for {}", family.preset, catalog.preset)));
    }
    let coll = family.collection(&catalog.caps)?;
    let free = FreeOperad::new(catalog.clone(), &coll)?;
    let (pa, pb) = family.required_pair();
    let form = &family.pairings[&(pa, pb)];
    let mut alpha = BTreeMap::new();
    for (sig, comp) in &free.components {
        let classes = catalog.classes(sig);
        let out_dims = family.position_dims(*sig);
        let rows = coll.dim(sig);
        let mut cols = Vec::with_capacity(comp.dim);
        for s in &comp.summands {
            let class = &classes[s.class];
            let vdims: Vec<Vec<usize>> = class.vertex_sigs.iter().map(|vs| family.position_dims(*vs)).collect();
            let edges = class.graph.graph.edges();
            let mut value_cols = Vec::with_capacity(s.tensor.len());
            for m in &s.tensor.basis {
                let mut index_of_flag = BTreeMap::new();
                for (v, order) in class.std_orders.iter().enumerate() {
                    for (f, i) in order.iter().zip(unflatten(&vdims[v], m[v])) {
                        index_of_flag.insert(*f, i);
                    }
                }
                let mut c = one();
                for &(f, g) in &edges {
                    let (a, b) = if class.graph.orientation(f) == Some(Orientation::In) { (g, f) } else { (f, g) };
                    c *= &form[index_of_flag[&a]][index_of_flag[&b]];
                    if c == q(0) {
                        break;
                    }
                }
                let mut out = vec![0; out_dims.len()];
                for (f, &p) in &class.legs {
                    out[p] = index_of_flag[f];
                }
                value_cols.push(SVec::from_pairs([(flatten(&out_dims, &out), c)]));
            }
            let value = LinearMap::from_columns(rows, value_cols);
            cols.extend(value.compose(&s.coinv.section)?.columns().iter().cloned());
        }
        alpha.insert(*sig, LinearMap::from_columns(rows, cols));
    }
    Ok(EndomorphismOperad { family: family.clone(), algebra: OperadAlgebra { collection: coll, alpha, free } })
}

/// A homogeneous polynomial in the structure parameters, one per output coordinate of a condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    pub terms: BTreeMap<Vec<u32>, Q>,
}

impl Polynomial {
    pub fn eval(&self, x: &[Q]) -> Q {
        self.terms
            .iter()
            .map(|(e, c)| e.iter().zip(x).fold(c.clone(), |acc, (&k, xi)| acc * powq(xi, k)))
            .sum()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

fn powq(x: &Q, k: u32) -> Q {
    (0..k).fold(one(), |acc, _| acc * x)
}

/// Exponent vectors of total degree `w` in `m` variables.
fn exponents(m: usize, w: u32) -> Vec<Vec<u32>> {
    if m == 0 {
        return if w == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for k in (0..=w).rev() {
        for mut rest in exponents(m - 1, w - k) {
            rest.insert(0, k);
            out.push(rest);
        }
    }
    out
}

/// Equivariant generator maps `P_1 → OpEnd` as a linear family, with the relation conditions
/// of `P` as polynomials in the family's coordinates.
#[derive(Clone, Debug)]
pub struct StructureSpace {
    pub candidates: BTreeMap<Signature, Vec<LinearMap>>,
    pub conditions: Vec<Polynomial>,
    p: Presented,
    end: EndomorphismOperad,
}

impl StructureSpace {
    /// Parameters in signature order, then candidate order.
    pub fn num_params(&self) -> usize {
        self.candidates.values().map(Vec::len).sum()
    }

    pub fn morphism(&self, coeffs: &[Q]) -> Result<CollectionMorphism> {
        if coeffs.len() != self.num_params() {
            return Err(Error::Dimension(format!("expected {} parameters, got {}", self.num_params(), coeffs.len())));
        }
        let gens = self.p.generators();
        let mut maps = BTreeMap::new();
        let mut k = 0;
        for (s, basis) in &self.candidates {
            let (rows, cols) = (self.end.algebra.dim(s), gens.dim(s));
            maps.insert(*s, combine(basis, &coeffs[k..k + basis.len()], rows, cols));
            k += basis.len();
        }
        Ok(CollectionMorphism { maps })
    }

    /// Coordinates of a generator map in the candidate family, if it is equivariant.
    pub fn coordinates(&self, phi: &CollectionMorphism) -> Option<Vec<Q>> {
        let mut out = Vec::new();
        for (s, basis) in &self.candidates {
            let target = phi.maps.get(s)?;
            let flat = |m: &LinearMap| SVec::from_pairs(m.columns().iter().enumerate().flat_map(|(j, c)| c.entries().iter().map(move |(i, x)| (j * m.nrows() + i, x.clone()))));
            let a = LinearMap::from_columns(target.nrows() * target.ncols(), basis.iter().map(flat).collect());
            out.extend(a.solve(&flat(target))?.to_dense(basis.len()));
        }
        Some(out)
    }

    /// Values of the relations of `P` under the extension of `phi`.
    pub fn relation_values(&self, phi: &CollectionMorphism) -> Result<Vec<SVec>> {
        let ext = extend_from_generators(&self.p.free, &self.end.algebra, phi)?;
        let mut out = Vec::new();
        for (s, r) in &self.p.presentation.relations {
            for v in r.basis() {
                out.push(ext[s].apply(v));
            }
        }
        Ok(out)
    }

    /// Exact membership test at a point of the candidate family.
    pub fn is_structure(&self, coeffs: &[Q]) -> Result<bool> {
        Ok(self.relation_values(&self.morphism(coeffs)?)?.iter().all(SVec::is_zero))
    }

    pub fn conditions_hold(&self, coeffs: &[Q]) -> bool {
        self.conditions.iter().all(|p| p.eval(coeffs) == q(0))
    }
}

/// `Hom(P, OpEnd(V, v))` on generators: the candidate maps and their polynomial conditions.
pub fn p_algebra_structures(p: &Presented, end: &EndomorphismOperad) -> Result<StructureSpace> {
    if p.free.catalog.preset != end.family.preset || p.free.catalog.caps != end.algebra.catalog().caps {
        return Err(Error::InvalidInput("operad and endomorphism operad must share preset and caps".into()));
    }
    let gens = p.generators();
    let mut candidates = BTreeMap::new();
    for (s, c) in &gens.components {
        let tgt = end.algebra.collection.component(s).ok_or_else(|| Error::CapExceeded(format!("OpEnd vanishes at {s}")))?;
        candidates.insert(*s, equivariant_maps(&c.action, &tgt.action));
    }
    let mut space = StructureSpace { candidates, conditions: Vec::new(), p: p.clone(), end: end.clone() };
    let m = space.num_params();
    let mut degree_of = Vec::new();
    for (s, r) in &p.presentation.relations {
        for v in r.basis() {
            let (su, _) = p.free.components[s].locate(v.leading().expect("nonzero relation"));
            degree_of.push((*s, su.weight() as u32));
        }
    }
    // interpolate at the exponent vectors themselves, which are unisolvent for forms of degree `w`
    let mut by_degree: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (k, (_, w)) in degree_of.iter().enumerate() {
        by_degree.entry(*w).or_default().push(k);
    }
    for (w, idx) in by_degree {
        let mons = exponents(m, w);
        let values: Vec<Vec<SVec>> = mons
            .iter()
            .map(|e| space.relation_values(&space.morphism(&e.iter().map(|&k| q(k as i64)).collect::<Vec<_>>())?))
            .collect::<Result<_>>()?;
        let vander = LinearMap::from_dense(
            &mons.iter().map(|pt| mons.iter().map(|e| e.iter().zip(pt).fold(one(), |acc, (&k, &x)| acc * powq(&q(x as i64), k))).collect()).collect::<Vec<_>>(),
            mons.len(),
        );
        for k in idx {
            let dim = end.algebra.dim(&degree_of[k].0);
            for coord in 0..dim {
                let rhs = SVec::from_pairs(values.iter().enumerate().map(|(i, v)| (i, v[k].get(coord))));
                let sol = vander.solve(&rhs).ok_or_else(|| Error::Invariant("interpolation system is singular".into()))?;
                let terms: BTreeMap<Vec<u32>, Q> = sol.entries().iter().map(|(i, c)| (mons[*i].clone(), c.clone())).collect();
                if !terms.is_empty() {
                    space.conditions.push(Polynomial { terms });
                }
            }
        }
    }
    Ok(space)
}
