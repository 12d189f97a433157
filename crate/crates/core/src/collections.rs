//! Collections: a finite-dimensional representation of the automorphism group of every
//! admissible corolla type, with white products and componentwise inner cohomomorphisms.

use crate::error::{Error, Result};
use crate::labeling::{Caps, GammaPreset, Signature};
use crate::linalg::group::{adjacent_word, equivariant_maps, perm_group_closure, perm_identity};
use crate::linalg::{GroupAction, LinearMap, Perm, SVec};
use serde::Deserialize;
use serde_json::{json, Value};
use std::collections::BTreeMap;

/// Flag permutations generating the automorphisms of the standard corolla: adjacent output
/// swaps, then adjacent input swaps. Planar and linear presets have none.
pub fn aut_generators(preset: GammaPreset, sig: Signature) -> Vec<Perm> {
    if preset.planar() || preset == GammaPreset::Linear {
        return Vec::new();
    }
    let n = sig.flags();
    let mut out = Vec::new();
    for block in [(0, sig.outputs), (sig.outputs, n)] {
        for i in block.0..block.1.saturating_sub(1) {
            let mut p = perm_identity(n);
            p.swap(i, i + 1);
            out.push(p);
        }
    }
    out
}

/// Coxeter relators for the generators of `aut_generators`.
pub fn aut_relations(preset: GammaPreset, sig: Signature) -> Vec<Vec<usize>> {
    let gens = aut_generators(preset, sig);
    let pos: Vec<usize> = gens.iter().map(|p| p.iter().enumerate().find(|(i, &x)| *i != x).unwrap().0).collect();
    let mut rels = Vec::new();
    for a in 0..gens.len() {
        rels.push(vec![a, a]);
        for b in a + 1..gens.len() {
            if pos[b] == pos[a] + 1 {
                rels.push(vec![a, b, a, b, a, b]);
            } else {
                rels.push(vec![a, b, a, b]);
            }
        }
    }
    rels
}

/// Every automorphism of the standard corolla as a forward flag permutation.
pub fn aut_elements(preset: GammaPreset, sig: Signature) -> Vec<Perm> {
    perm_group_closure(sig.flags(), &aut_generators(preset, sig))
}

/// Generator index of the adjacent swap at position `i`.
fn generator_index(sig: Signature, i: usize) -> usize {
    if i < sig.outputs {
        i
    } else {
        sig.outputs.saturating_sub(1) + (i - sig.outputs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub action: GroupAction,
    /// Weight of each basis vector; sums of weights are truncated by `Caps::max_weight`.
    pub weights: Vec<usize>,
}

impl Component {
    pub fn dim(&self) -> usize {
        self.action.dim
    }

    pub fn trivial(preset: GammaPreset, sig: Signature, dim: usize, weight: usize) -> Self {
        let ngens = aut_generators(preset, sig).len();
        Component { action: GroupAction::trivial(dim, ngens, aut_relations(preset, sig)), weights: vec![weight; dim] }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Collection {
    pub preset: GammaPreset,
    pub components: BTreeMap<Signature, Component>,
}

/// Per-signature linear maps between two collections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollectionMorphism {
    pub maps: BTreeMap<Signature, LinearMap>,
}

impl Collection {
    pub fn empty(preset: GammaPreset) -> Self {
        Collection { preset, components: BTreeMap::new() }
    }

    /// One-dimensional trivial representation at every signature within the caps.
    pub fn unit(preset: GammaPreset, caps: &Caps) -> Self {
        let components = preset.signatures(caps).into_iter().map(|s| (s, Component::trivial(preset, s, 1, 1))).collect();
        Collection { preset, components }
    }

    pub fn with_component(mut self, sig: Signature, c: Component) -> Result<Self> {
        self.check_component(sig, &c)?;
        self.components.insert(sig, c);
        Ok(self)
    }

    pub fn component(&self, sig: &Signature) -> Option<&Component> {
        self.components.get(sig)
    }

    pub fn dim(&self, sig: &Signature) -> usize {
        self.components.get(sig).map_or(0, Component::dim)
    }

    pub fn check_component(&self, sig: Signature, c: &Component) -> Result<()> {
        if !self.preset.admissible_signature(sig) {
            return Err(Error::InvalidInput(format!("signature {sig} is not admissible for {}", self.preset)));
        }
        let ngens = aut_generators(self.preset, sig).len();
        if c.action.generators.len() != ngens {
            return Err(Error::InvalidInput(format!("component {sig} needs {ngens} generator matrices, got {}", c.action.generators.len())));
        }
        if c.weights.len() != c.dim() {
            return Err(Error::InvalidInput(format!("component {sig} has {} weights for dimension {}", c.weights.len(), c.dim())));
        }
        if c.action.relations != aut_relations(self.preset, sig) {
            return Err(Error::InvalidInput(format!("component {sig} carries foreign relators")));
        }
        c.action.check_relations()
    }

    pub fn validate(&self) -> Result<()> {
        for (s, c) in &self.components {
            self.check_component(*s, c)?;
        }
        Ok(())
    }

    pub fn max_weight(&self) -> usize {
        self.components.values().flat_map(|c| c.weights.iter().copied()).max().unwrap_or(0)
    }

    /// Action of a forward flag permutation of the standard corolla.
    pub fn rho(&self, sig: &Signature, p: &[usize]) -> LinearMap {
        let c = &self.components[sig];
        if c.action.generators.is_empty() {
            return LinearMap::identity(c.dim());
        }
        let word: Vec<usize> = adjacent_word(p).into_iter().map(|i| generator_index(*sig, i)).collect();
        c.action.word(&word)
    }

    pub fn same_shape(&self, other: &Collection) -> Result<()> {
        if self.preset != other.preset {
            return Err(Error::InvalidInput(format!("preset mismatch: {} vs {}", self.preset, other.preset)));
        }
        Ok(())
    }

    /// `(A ○ B)(σ) = A(σ) ⊗ B(σ)` with the diagonal action; weights combine by maximum.
    pub fn white_product(&self, other: &Collection) -> Result<Collection> {
        self.same_shape(other)?;
        let mut out = Collection::empty(self.preset);
        for (s, a) in &self.components {
            if let Some(b) = other.components.get(s) {
                let weights = a.weights.iter().flat_map(|&x| b.weights.iter().map(move |&y| x.max(y))).collect();
                out.components.insert(*s, Component { action: a.action.tensor(&b.action), weights });
            }
        }
        Ok(out)
    }

    /// `B(σ)*` with the contragredient action.
    pub fn dual(&self) -> Collection {
        let components = self
            .components
            .iter()
            .map(|(s, c)| (*s, Component { action: c.action.dual_of_involutions(), weights: c.weights.clone() }))
            .collect();
        Collection { preset: self.preset, components }
    }

    /// `E(σ) = A(σ) ⊗ B(σ)*` and the coevaluation `A → E ○ B`.
    pub fn cohom(&self, other: &Collection) -> Result<(Collection, CollectionMorphism)> {
        let e = self.white_product(&other.dual())?;
        let mut maps = BTreeMap::new();
        for (s, a) in &self.components {
            let Some(b) = other.components.get(s) else { continue };
            maps.insert(*s, coevaluation_matrix(a.dim(), b.dim()));
        }
        Ok((e, CollectionMorphism { maps }))
    }

    pub fn to_json(&self) -> Value {
        let comps: Vec<Value> = self
            .components
            .iter()
            .map(|(s, c)| {
                json!({
                    "signature": s,
                    "dim": c.dim(),
                    "weights": c.weights,
                    "action": c.action.generators.iter().map(LinearMap::to_json).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({ "preset": self.preset, "components": comps })
    }

    pub fn from_json(v: &Value) -> Result<Collection> {
        #[derive(Deserialize)]
        struct Raw {
            preset: GammaPreset,
            components: Vec<RawComp>,
        }
        #[derive(Deserialize)]
        struct RawComp {
            signature: Signature,
            dim: usize,
            #[serde(default)]
            weights: Option<Vec<usize>>,
            #[serde(default)]
            action: Vec<Value>,
        }
        let raw: Raw = serde_json::from_value(v.clone())?;
        let mut out = Collection::empty(raw.preset);
        for rc in raw.components {
            let relations = aut_relations(raw.preset, rc.signature);
            let ngens = aut_generators(raw.preset, rc.signature).len();
            let generators = if rc.action.is_empty() {
                vec![LinearMap::identity(rc.dim); ngens]
            } else {
                rc.action.iter().map(|m| LinearMap::from_json(m, rc.dim)).collect::<Result<_>>()?
            };
            let c = Component {
                action: GroupAction { dim: rc.dim, generators, relations },
                weights: rc.weights.unwrap_or_else(|| vec![1; rc.dim]),
            };
            if out.components.contains_key(&rc.signature) {
                return Err(Error::InvalidInput(format!("signature {} listed twice", rc.signature)));
            }
            out = out.with_component(rc.signature, c)?;
        }
        Ok(out)
    }
}

/// `a_i ↦ Σ_j (a_i ⊗ b_j*) ⊗ b_j`, indexed `(i·dB + j)·dB + k`.
pub fn coevaluation_matrix(da: usize, db: usize) -> LinearMap {
    let cols = (0..da).map(|i| SVec::from_pairs((0..db).map(|j| ((i * db + j) * db + j, crate::linalg::scalar::one())))).collect();
    LinearMap::from_columns(da * db * db, cols)
}

/// `u : A → F ⊗ B` gives `ũ : A ⊗ B* → F` with `ũ(a_i ⊗ b_j*) = (id ⊗ b_j*)(u(a_i))`.
pub fn curry(u: &LinearMap, da: usize, df: usize, db: usize) -> LinearMap {
    let cols = (0..da * db)
        .map(|ij| {
            let (i, j) = (ij / db, ij % db);
            SVec::from_pairs(u.column(i).entries().iter().filter(|(r, _)| r % db == j).map(|(r, c)| (r / db, c.clone())))
        })
        .collect();
    LinearMap::from_columns(df, cols)
}

/// Inverse of `curry`: `u = (ũ ⊗ id_B) ∘ coevaluation`.
pub fn uncurry(ut: &LinearMap, da: usize, db: usize) -> Result<LinearMap> {
    ut.kron(&LinearMap::identity(db)).compose(&coevaluation_matrix(da, db))
}

impl CollectionMorphism {
    pub fn identity(a: &Collection) -> Self {
        CollectionMorphism { maps: a.components.iter().map(|(s, c)| (*s, LinearMap::identity(c.dim()))).collect() }
    }

    pub fn zero(a: &Collection, b: &Collection) -> Self {
        CollectionMorphism { maps: a.components.iter().map(|(s, c)| (*s, LinearMap::zero(b.dim(s), c.dim()))).collect() }
    }

    /// Checks `f ∘ ρ_A(g) = ρ_B(g) ∘ f` for every generator and matching shapes.
    pub fn check_equivariant(&self, a: &Collection, b: &Collection) -> Result<()> {
        for (s, f) in &self.maps {
            let (da, db) = (a.dim(s), b.dim(s));
            if f.ncols() != da || f.nrows() != db {
                return Err(Error::Dimension(format!("map at {s} is {}x{}, expected {db}x{da}", f.nrows(), f.ncols())));
            }
            if da == 0 || db == 0 {
                continue;
            }
            for (ga, gb) in a.components[s].action.generators.iter().zip(&b.components[s].action.generators) {
                if f.compose(ga)? != gb.compose(f)? {
                    return Err(Error::InvalidInput(format!("map at {s} is not equivariant")));
                }
            }
        }
        Ok(())
    }
}

/// Basis of `Hom_G(A(σ), B(σ))`.
pub fn equivariant_basis(a: &Collection, b: &Collection, sig: &Signature) -> Vec<LinearMap> {
    match (a.component(sig), b.component(sig)) {
        (Some(x), Some(y)) => equivariant_maps(&x.action, &y.action),
        _ => Vec::new(),
    }
}

/// Standard generating collections.
pub mod standard {
    use super::*;
    use crate::linalg::scalar::q;

    /// One binary operation with trivial symmetry.
    pub fn binary_symmetric(preset: GammaPreset) -> Collection {
        let s = Signature::new(0, 1, 2);
        Collection::empty(preset).with_component(s, Component::trivial(preset, s, 1, 1)).expect("admissible")
    }

    /// The regular representation of the input permutations of a binary corolla.
    pub fn binary_regular(preset: GammaPreset) -> Collection {
        let s = Signature::new(0, 1, 2);
        let ngens = aut_generators(preset, s).len();
        let c = Component {
            action: GroupAction { dim: 2, generators: vec![LinearMap::permutation(&[1, 0]); ngens], relations: aut_relations(preset, s) },
            weights: vec![1, 1],
        };
        Collection::empty(preset).with_component(s, c).expect("admissible")
    }

    /// Generators of a graded algebra, as a collection on the chain preset.
    pub fn algebra_generators(dim: usize) -> Collection {
        let s = Signature::new(0, 1, 1);
        Collection::empty(GammaPreset::Linear).with_component(s, Component::trivial(GammaPreset::Linear, s, dim, 1)).expect("admissible")
    }

    /// Random representation at each listed signature: a conjugated sum of sign characters of the
    /// output and input blocks, dimensions in `1..=max_dim`, all weights 1.
    pub fn random_collection<R: rand::Rng>(preset: GammaPreset, sigs: &[Signature], max_dim: usize, rng: &mut R) -> Collection {
        let mut out = Collection::empty(preset);
        for &s in sigs {
            let d = rng.gen_range(1..=max_dim);
            let chars: Vec<(bool, bool)> = (0..d).map(|_| (rng.gen_bool(0.5), rng.gen_bool(0.5))).collect();
            let mut p = LinearMap::identity(d).to_dense();
            for (i, row) in p.iter_mut().enumerate() {
                for x in row.iter_mut().skip(i + 1) {
                    *x = q(rng.gen_range(-2..=2));
                }
            }
            let p = LinearMap::from_dense(&p, d);
            let pinv = p.inverse().expect("unipotent");
            let generators = aut_generators(preset, s)
                .iter()
                .map(|g| {
                    let pos = g.iter().enumerate().find(|(i, &x)| *i != x).unwrap().0;
                    let diag: Vec<Vec<crate::linalg::Q>> = (0..d)
                        .map(|i| {
                            let flip = if pos < s.outputs { chars[i].0 } else { chars[i].1 };
                            (0..d).map(|j| if i != j { q(0) } else if flip { q(-1) } else { q(1) }).collect()
                        })
                        .collect();
                    p.compose(&LinearMap::from_dense(&diag, d)).unwrap().compose(&pinv).unwrap()
                })
                .collect();
            let c = Component { action: GroupAction { dim: d, generators, relations: aut_relations(preset, s) }, weights: vec![1; d] };
            out = out.with_component(s, c).expect("valid random component");
        }
        out
    }

    /// Sign representation of the input swap on a binary corolla.
    pub fn binary_antisymmetric(preset: GammaPreset) -> Collection {
        let s = Signature::new(0, 1, 2);
        let ngens = aut_generators(preset, s).len();
        let g = LinearMap::from_dense(&[vec![q(-1)]], 1);
        let c = Component { action: GroupAction { dim: 1, generators: vec![g; ngens], relations: aut_relations(preset, s) }, weights: vec![1] };
        Collection::empty(preset).with_component(s, c).expect("admissible")
    }
}

#[cfg(test)]
mod tests {
    use super::standard::*;
    use super::*;
    use crate::linalg::group::perm_compose;

    #[test]
    fn automorphism_groups_have_expected_orders() {
        let s = Signature::new(0, 2, 3);
        assert_eq!(aut_elements(GammaPreset::Prop, s).len(), 12);
        assert_eq!(aut_elements(GammaPreset::Ordinary, Signature::new(0, 1, 3)).len(), 6);
        assert_eq!(aut_elements(GammaPreset::NonSymmetric, Signature::new(0, 1, 3)).len(), 1);
        assert_eq!(aut_elements(GammaPreset::Cyclic, Signature::new(0, 0, 4)).len(), 24);
    }

    #[test]
    fn rho_is_a_homomorphism() {
        let s = Signature::new(0, 1, 3);
        let reg = Collection::empty(GammaPreset::Ordinary);
        // regular representation of S_3 on the inputs via permutation matrices of positions 1..3
        let gens: Vec<LinearMap> = aut_generators(GammaPreset::Ordinary, s).iter().map(|p| LinearMap::permutation(p)).collect();
        let c = Component { action: GroupAction { dim: 4, generators: gens, relations: aut_relations(GammaPreset::Ordinary, s) }, weights: vec![1; 4] };
        let reg = reg.with_component(s, c).unwrap();
        let els = aut_elements(GammaPreset::Ordinary, s);
        for a in &els {
            assert_eq!(reg.rho(&s, a), LinearMap::permutation(a));
            for b in &els {
                let lhs = reg.rho(&s, &perm_compose(a, b));
                assert_eq!(lhs, reg.rho(&s, a).compose(&reg.rho(&s, b)).unwrap());
            }
        }
    }

    #[test]
    fn white_product_dims_and_unit() {
        let caps = Caps::default();
        let a = binary_regular(GammaPreset::Ordinary);
        let u = Collection::unit(GammaPreset::Ordinary, &caps);
        let au = a.white_product(&u).unwrap();
        assert_eq!(au.components.len(), 1);
        assert_eq!(au.components.values().next().unwrap(), a.components.values().next().unwrap());
        let aa = a.white_product(&a).unwrap();
        assert_eq!(aa.dim(&Signature::new(0, 1, 2)), 4);
        aa.validate().unwrap();
        let uu = u.white_product(&u).unwrap();
        assert_eq!(uu, u);
    }

    #[test]
    fn json_round_trip() {
        let a = binary_antisymmetric(GammaPreset::Ordinary).white_product(&binary_regular(GammaPreset::Ordinary)).unwrap();
        let back = Collection::from_json(&a.to_json()).unwrap();
        assert_eq!(a, back);
    }

    #[test]
    fn cohom_with_unit_is_identity() {
        let a = binary_regular(GammaPreset::Ordinary);
        let u = Collection::unit(GammaPreset::Ordinary, &Caps::default());
        let (e, c) = a.cohom(&u).unwrap();
        assert_eq!(e.components[&Signature::new(0, 1, 2)].action, a.components[&Signature::new(0, 1, 2)].action);
        for m in c.maps.values() {
            assert!(m.is_identity());
        }
    }

    #[test]
    fn curry_round_trip() {
        let u = LinearMap::from_dense(
            &(0..6).map(|r| (0..2).map(|c| crate::linalg::scalar::q(((r * 3 + c * 5) % 7) as i64 - 3)).collect()).collect::<Vec<_>>(),
            2,
        );
        // A dim 2, F dim 3, B dim 2
        let ut = curry(&u, 2, 3, 2);
        assert_eq!(ut.nrows(), 3);
        assert_eq!(ut.ncols(), 4);
        assert_eq!(uncurry(&ut, 2, 2).unwrap(), u);
    }
}
