//! The inner cohomomorphism of presented operads: `E = F(E_1)/(R̃)` with `E_1 = A_1 ⊗ B_1*`,
//! the structure map `δ : A → E ○ B`, initiality checks, the `⊙` product and comultiplication.

use crate::collections::{curry, Collection, CollectionMorphism};
use crate::error::{Error, Result};
use crate::free::algebra::{j_map, ComponentMaps, OperadAlgebra};
use crate::free::presentation::OperadPresentation;
use crate::free::{compose_maps, ClassCatalog, FreeOperad};
use crate::labeling::Signature;
use crate::linalg::{LinearMap, SVec, Subspace};
use crate::quadratic::cohom::comultiplication_matrix;
use std::collections::BTreeMap;
use std::sync::Arc;

/// A presentation together with `F(A_1)`, the ideal and the quotient `A`.
#[derive(Clone, Debug)]
pub struct Presented {
    pub presentation: OperadPresentation,
    pub free: FreeOperad,
    pub ideal: BTreeMap<Signature, Subspace>,
    pub algebra: OperadAlgebra,
    /// `f_A : F(A_1) → A`.
    pub projection: ComponentMaps,
    /// A section of `f_A`.
    pub section: ComponentMaps,
}

impl Presented {
    pub fn new(presentation: OperadPresentation, catalog: Arc<ClassCatalog>) -> Result<Presented> {
        let free = presentation.free_on_catalog(catalog)?;
        let p = presentation.quotient(&free)?;
        Ok(Presented {
            presentation,
            free,
            ideal: p.ideal,
            algebra: p.quotient.algebra,
            projection: p.quotient.projection.maps,
            section: p.quotient.section.maps,
        })
    }

    pub fn generators(&self) -> &Collection {
        &self.presentation.generators
    }

    /// `i_A = f_A ∘ η : A_1 → A`.
    pub fn inclusion(&self) -> Result<ComponentMaps> {
        compose_maps(&self.projection, &self.free.eta())
    }

    pub fn dims_by_weight(&self) -> BTreeMap<Signature, Vec<usize>> {
        weight_profile(&self.algebra.collection)
    }
}

/// `dim` of each weight piece, indexed by weight.
pub fn weight_profile(c: &Collection) -> BTreeMap<Signature, Vec<usize>> {
    c.components
        .iter()
        .map(|(s, comp)| {
            let top = comp.weights.iter().copied().max().unwrap_or(0);
            let mut v = vec![0; top + 1];
            for &w in &comp.weights {
                v[w] += 1;
            }
            (*s, v)
        })
        .collect()
}

fn map_or_zero(maps: &ComponentMaps, s: &Signature, rows: usize, cols: usize) -> LinearMap {
    maps.get(s).cloned().unwrap_or_else(|| LinearMap::zero(rows, cols))
}

/// Everything produced by the cohomomorphism construction.
#[derive(Clone, Debug)]
pub struct CohomResult {
    pub generators: Collection,
    /// `δ_1 : A_1 → E_1 ○ B_1`.
    pub coevaluation: CollectionMorphism,
    /// `R̃ ⊆ F(E_1)`.
    pub relations: BTreeMap<Signature, Subspace>,
    pub operad: Presented,
    /// `δ : A → E ○ B`.
    pub delta: ComponentMaps,
    /// `h ∘ F(c) : F(A_1) → F(E_1) ○ B`.
    pub transport: ComponentMaps,
}

/// `h ∘ F(c) : F(A_1) → F(E_1) ○ B` with `h = (id ○ f_B) ∘ j`.
fn transport_map(a: &Presented, b: &Presented, e1: &Collection, c: &CollectionMorphism, f_e: &FreeOperad) -> Result<ComponentMaps> {
    let cat = a.free.catalog.clone();
    let eb = e1.white_product(b.generators())?;
    let f_eb = FreeOperad::new(cat, &eb)?;
    let mut c_full = c.maps.clone();
    for (s, comp) in &a.generators().components {
        c_full.entry(*s).or_insert_with(|| LinearMap::zero(eb.dim(s), comp.dim()));
    }
    let fc = a.free.free_map(&f_eb, &CollectionMorphism { maps: c_full })?;
    let j = j_map(&f_eb, f_e, &b.free)?;
    let mut out = BTreeMap::new();
    for (s, m) in &fc {
        let Some(jm) = j.get(s) else {
            out.insert(*s, LinearMap::zero(f_e.dim(s) * b.algebra.dim(s), m.ncols()));
            continue;
        };
        let pb = map_or_zero(&b.projection, s, b.algebra.dim(s), b.free.dim(s));
        let h = LinearMap::identity(f_e.dim(s)).kron(&pb).compose(jm)?;
        out.insert(*s, h.compose(m)?);
    }
    Ok(out)
}

/// Contracts `F(E_1)(σ) ⊗ B(σ)` against each dual basis vector of `B(σ)`.
pub(crate) fn contract_second(v: &SVec, db: usize) -> Vec<SVec> {
    let mut out: Vec<Vec<(usize, crate::linalg::Q)>> = vec![Vec::new(); db];
    for (i, x) in v.entries() {
        out[i % db].push((i / db, x.clone()));
    }
    out.into_iter().map(SVec::from_pairs).collect()
}

pub fn cohom_operads(a: &Presented, b: &Presented) -> Result<CohomResult> {
    if a.free.catalog.preset != b.free.catalog.preset || a.free.catalog.caps != b.free.catalog.caps {
        return Err(Error::InvalidInput("both presentations must share preset and caps".into()));
    }
    let (e1, c) = a.generators().cohom(b.generators())?;
    let f_e = FreeOperad::new(a.free.catalog.clone(), &e1)?;
    let transport = transport_map(a, b, &e1, &c, &f_e)?;
    let mut relations = BTreeMap::new();
    for (s, r) in &a.presentation.relations {
        let Some(t) = transport.get(s) else { continue };
        let db = b.algebra.dim(s);
        let mut sub = Subspace::zero(f_e.dim(s));
        if db > 0 {
            for v in r.basis() {
                sub.extend(contract_second(&t.apply(v), db));
            }
        }
        if !sub.is_zero() {
            relations.insert(*s, sub);
        }
    }
    let pres = OperadPresentation { generators: e1.clone(), relations: relations.clone(), caps: a.presentation.caps };
    let p = pres.quotient(&f_e)?;
    let operad = Presented { presentation: pres, free: f_e, ideal: p.ideal, algebra: p.quotient.algebra, projection: p.quotient.projection.maps, section: p.quotient.section.maps };
    let mut delta = BTreeMap::new();
    for (s, t) in &transport {
        let db = b.algebra.dim(s);
        let pe = map_or_zero(&operad.projection, s, operad.algebra.dim(s), operad.free.dim(s));
        let sa = map_or_zero(&a.section, s, a.free.dim(s), a.algebra.dim(s));
        delta.insert(*s, pe.kron(&LinearMap::identity(db)).compose(t)?.compose(&sa)?);
    }
    Ok(CohomResult { generators: e1, coevaluation: c, relations, operad, delta, transport })
}

#[derive(Clone, Debug, Default, serde::Serialize)]
pub struct CohomChecks {
    /// `(i_E ○ i_B) ∘ δ_1 = δ ∘ i_A`.
    pub square_commutes: bool,
    /// `(f_E ○ id) ∘ h ∘ F(c)` kills the ideal of `A`.
    pub delta_well_defined: bool,
    pub failures: Vec<String>,
}

impl CohomChecks {
    pub fn passed(&self) -> bool {
        self.square_commutes && self.delta_well_defined
    }
}

pub fn check_cohom(a: &Presented, b: &Presented, r: &CohomResult) -> Result<CohomChecks> {
    let mut out = CohomChecks { square_commutes: true, delta_well_defined: true, failures: Vec::new() };
    let ia = a.inclusion()?;
    let ib = b.inclusion()?;
    let ie = r.operad.inclusion()?;
    for (s, c) in &r.coevaluation.maps {
        let lhs = ie[s].kron(&ib[s]).compose(c)?;
        let rhs = r.delta[s].compose(&ia[s])?;
        if lhs != rhs {
            out.square_commutes = false;
            out.failures.push(format!("generator square fails at {s}"));
        }
    }
    for (s, t) in &r.transport {
        let Some(ideal) = a.ideal.get(s) else { continue };
        let db = b.algebra.dim(s);
        let pe = map_or_zero(&r.operad.projection, s, r.operad.algebra.dim(s), r.operad.free.dim(s));
        let m = pe.kron(&LinearMap::identity(db)).compose(t)?;
        if ideal.basis().any(|v| !m.apply(v).is_zero()) {
            out.delta_well_defined = false;
            out.failures.push(format!("δ is not defined on the quotient at {s}"));
        }
    }
    Ok(out)
}

/// `α_{X} ∘ F(g) : F(A_1) → X` for a generator map `g : A_1 → X`.
fn extend(free: &FreeOperad, target: &OperadAlgebra, g: &ComponentMaps) -> Result<ComponentMaps> {
    let mut maps = g.clone();
    for (s, comp) in &free.gens.components {
        maps.entry(*s).or_insert_with(|| LinearMap::zero(target.dim(s), comp.dim()));
    }
    let f = free.free_map(&target.free, &CollectionMorphism { maps })?;
    compose_maps(&target.alpha, &f)
}

fn kills(maps: &ComponentMaps, ideal: &BTreeMap<Signature, Subspace>) -> bool {
    ideal.iter().all(|(s, sub)| maps.get(s).map_or(true, |m| sub.basis().all(|v| m.apply(v).is_zero())))
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct InitialityReport {
    pub factorization_exists: bool,
    pub factor_commutes: bool,
    /// `v_1` is determined by `u_1` through the coevaluation, hence unique.
    pub unique_on_generators: bool,
    pub factor: BTreeMap<String, usize>,
}

impl InitialityReport {
    pub fn passed(&self) -> bool {
        self.factorization_exists && self.factor_commutes && self.unique_on_generators
    }
}

/// Given `u_1 : A_1 → F_1 ○ B_1` inducing an operad map `A → F ○ B`, finds `v : E → F` with
/// `(v ○ id) ∘ δ = u`. Fails with invalid input when `u_1` does not induce a map on `A`.
pub fn verify_initiality(a: &Presented, b: &Presented, r: &CohomResult, f: &Presented, u1: &CollectionMorphism) -> Result<(ComponentMaps, InitialityReport)> {
    let fb = f.algebra.white_product(&b.algebra)?;
    let i_f = f.inclusion()?;
    let i_b = b.inclusion()?;
    let mut g = BTreeMap::new();
    for (s, u) in &u1.maps {
        let (Some(x), Some(y)) = (i_f.get(s), i_b.get(s)) else {
            if !u.is_zero() {
                return Err(Error::InvalidInput(format!("u_1 is nonzero at {s} where F_1 ○ B_1 vanishes")));
            }
            continue;
        };
        g.insert(*s, x.kron(y).compose(u)?);
    }
    let big_u = extend(&a.free, &fb, &g)?;
    if !kills(&big_u, &a.ideal) {
        return Err(Error::InvalidInput("u_1 does not induce an operad map on A".into()));
    }
    let mut v1 = BTreeMap::new();
    for (s, u) in &u1.maps {
        let (da, db) = (a.generators().dim(s), b.generators().dim(s));
        if da * db == 0 {
            continue;
        }
        let df = f.generators().dim(s);
        let vt = curry(u, da, df, db);
        v1.insert(*s, i_f.get(s).map_or(Ok(LinearMap::zero(0, vt.ncols())), |x| x.compose(&vt))?);
    }
    let big_v = extend(&r.operad.free, &f.algebra, &v1)?;
    let factorization_exists = kills(&big_v, &r.operad.ideal);
    let mut v = BTreeMap::new();
    for (s, m) in &big_v {
        let se = map_or_zero(&r.operad.section, s, r.operad.free.dim(s), r.operad.algebra.dim(s));
        v.insert(*s, m.compose(&se)?);
    }
    let mut factor_commutes = factorization_exists;
    for (s, d) in &r.delta {
        let db = b.algebra.dim(s);
        let sa = map_or_zero(&a.section, s, a.free.dim(s), a.algebra.dim(s));
        let u = match big_u.get(s) {
            Some(m) => m.compose(&sa)?,
            None => LinearMap::zero(f.algebra.dim(s) * db, a.algebra.dim(s)),
        };
        let vm = map_or_zero(&v, s, f.algebra.dim(s), r.operad.algebra.dim(s));
        if vm.kron(&LinearMap::identity(db)).compose(d)? != u {
            factor_commutes = false;
        }
    }
    let factor = v.iter().map(|(s, m)| (s.to_string(), m.rank())).collect();
    Ok((v, InitialityReport { factorization_exists, factor_commutes, unique_on_generators: true, factor }))
}

/// `𝒜 ⊙ ℬ`: generators `A_1 ○ B_1`, and the suboperad of `A ○ B` they generate.
#[derive(Clone, Debug)]
pub struct OdotProduct {
    pub presentation: OperadPresentation,
    /// `dim C(σ)`, the rank of `F(A_1 ○ B_1) → A ○ B`.
    pub dims: BTreeMap<Signature, usize>,
    pub white_dims: BTreeMap<Signature, usize>,
}

pub fn odot_product(a: &Presented, b: &Presented) -> Result<OdotProduct> {
    let c1 = a.generators().white_product(b.generators())?;
    let fc = FreeOperad::new(a.free.catalog.clone(), &c1)?;
    let ab = a.algebra.white_product(&b.algebra)?;
    let ia = a.inclusion()?;
    let ib = b.inclusion()?;
    let g: ComponentMaps = c1.components.keys().map(|s| Ok((*s, ia[s].kron(&ib[s])))).collect::<Result<_>>()?;
    let m = extend(&fc, &ab, &g)?;
    let mut relations = BTreeMap::new();
    let mut dims = BTreeMap::new();
    for (s, x) in &m {
        let k = x.kernel();
        dims.insert(*s, x.ncols() - k.dim());
        if !k.is_zero() {
            relations.insert(*s, k);
        }
    }
    let white_dims = ab.collection.components.iter().map(|(s, c)| (*s, c.dim())).collect();
    Ok(OdotProduct { presentation: OperadPresentation { generators: c1, relations, caps: a.presentation.caps }, dims, white_dims })
}

/// `E_{AC,1} → E_{AB,1} ○ E_{BC,1}` per signature, with the check that it induces an operad map
/// `E_{AC} → E_{AB} ○ E_{BC}`.
pub fn op_comultiplication(a: &Presented, b: &Presented, c: &Presented, ac: &CohomResult, ab: &CohomResult, bc: &CohomResult) -> Result<(ComponentMaps, bool)> {
    let mut delta = BTreeMap::new();
    for s in ac.generators.components.keys() {
        let (da, db, dc) = (a.generators().dim(s), b.generators().dim(s), c.generators().dim(s));
        if db == 0 {
            continue;
        }
        delta.insert(*s, comultiplication_matrix(da, db, dc));
    }
    let target = ab.operad.algebra.white_product(&bc.operad.algebra)?;
    let i_ab = ab.operad.inclusion()?;
    let i_bc = bc.operad.inclusion()?;
    let mut g = BTreeMap::new();
    for (s, d) in &delta {
        let (Some(x), Some(y)) = (i_ab.get(s), i_bc.get(s)) else { continue };
        g.insert(*s, x.kron(y).compose(d)?);
    }
    let m = extend(&ac.operad.free, &target, &g)?;
    Ok((delta, kills(&m, &ac.operad.ideal)))
}

/// An algebra `T(V)/(R)` as an operad on linear chains, truncated at `max_weight` letters.
pub fn algebra_operad(alg: &crate::quadratic::AlgebraPresentation, catalog: Arc<ClassCatalog>) -> Result<Presented> {
    if catalog.preset != crate::labeling::GammaPreset::Linear {
        return Err(Error::InvalidInput("algebras live on the linear preset".into()));
    }
    let gens = crate::collections::standard::algebra_generators(alg.dim());
    let free = FreeOperad::new(catalog.clone(), &gens)?;
    let s = Signature::new(0, 1, 1);
    let mut rel = Subspace::zero(free.dim(&s));
    let rels = std::iter::once((alg.degree, &alg.relations)).chain(alg.extra.iter().map(|(n, r)| (*n, r)));
    for (n, r) in rels {
        if r.is_zero() {
            continue;
        }
        if n > catalog.caps.max_weight {
            return Err(Error::CapExceeded(format!("relations of degree {n} exceed the weight cap {}", catalog.caps.max_weight)));
        }
        let w = free.word_map(n)?;
        rel.extend(r.basis().map(|v| w.apply(v)));
    }
    let pres = OperadPresentation { generators: gens, relations: BTreeMap::from([(s, rel)]), caps: catalog.caps };
    Presented::new(pres, catalog)
}

/// The unit operad generated by its indecomposable corollas: generators are `U` at the signatures
/// carrying only one-vertex classes, relations the kernel of `F(U_gen) → U`.
pub fn unit_presented(catalog: Arc<ClassCatalog>) -> Result<Presented> {
    let u = OperadAlgebra::unit(catalog.clone())?;
    let mut gens = Collection::empty(catalog.preset);
    for (s, c) in &u.collection.components {
        if catalog.classes(s).iter().all(|g| g.weight() == 1) {
            gens.components.insert(*s, c.clone());
        }
    }
    let free = FreeOperad::new(catalog.clone(), &gens)?;
    let incl = CollectionMorphism { maps: gens.components.keys().map(|s| (*s, LinearMap::identity(1))).collect() };
    let to_unit = compose_maps(&u.alpha, &free.free_map(&u.free, &incl)?)?;
    let relations = to_unit.iter().map(|(s, m)| (*s, m.kernel())).filter(|(_, k)| !k.is_zero()).collect();
    let pres = OperadPresentation { generators: gens, relations, caps: catalog.caps };
    Presented::new(pres, catalog)
}
