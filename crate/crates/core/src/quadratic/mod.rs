//! Homogeneous algebras `T(V)/(R)` with relations in one degree `N`, their graded pieces,
//! duality, white and black products, and inner cohomomorphisms.

pub mod cohom;
pub mod text;

use crate::error::{Error, Result};
use crate::linalg::tensor::{flatten, interleave, multi_indices};
use crate::linalg::{Label, LinearMap, SVec, Subspace, VectorSpace};
use std::collections::BTreeMap;

/// Generators `V`, degree `N ≥ 2`, relations `R ⊆ V^{⊗N}` and optional relations in degrees `> N`.
///
/// Words are indexed row-major with the first letter most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraPresentation {
    pub generators: VectorSpace,
    pub degree: usize,
    pub relations: Subspace,
    pub extra: BTreeMap<usize, Subspace>,
}

/// `A_n` as a quotient of `V^{⊗n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedComponent {
    pub degree: usize,
    pub ideal: Subspace,
    /// Words whose images form a basis of `A_n`.
    pub basis: Vec<usize>,
}

impl GradedComponent {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

pub fn word_count(d: usize, n: usize) -> usize {
    d.pow(n as u32)
}

impl AlgebraPresentation {
    pub fn new(generators: VectorSpace, degree: usize, relations: Subspace) -> Result<Self> {
        if degree < 2 {
            return Err(Error::InvalidInput("relation degree must be at least 2".into()));
        }
        let expected = word_count(generators.dim(), degree);
        if relations.ambient() != expected {
            return Err(Error::Dimension(format!("relations live in dimension {}, expected {expected}", relations.ambient())));
        }
        Ok(AlgebraPresentation { generators, degree, relations, extra: BTreeMap::new() })
    }

    pub fn with_extra(mut self, degree: usize, rel: Subspace) -> Result<Self> {
        if degree <= self.degree {
            return Err(Error::InvalidInput(format!("extra relations must sit above degree {}", self.degree)));
        }
        if rel.ambient() != word_count(self.dim(), degree) {
            return Err(Error::Dimension(format!("extra relations in degree {degree} have the wrong ambient dimension")));
        }
        self.extra.insert(degree, rel);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.generators.dim()
    }

    pub fn is_single_degree(&self) -> bool {
        self.extra.values().all(Subspace::is_zero)
    }

    fn all_relations(&self) -> impl Iterator<Item = (usize, &Subspace)> {
        std::iter::once((self.degree, &self.relations)).chain(self.extra.iter().map(|(d, r)| (*d, r)))
    }

    /// `Σ_i V^{⊗i} ⊗ R ⊗ V^{⊗(n−N−i)}` over all relation degrees.
    pub fn ideal(&self, n: usize) -> Subspace {
        let d = self.dim();
        let mut out = Subspace::zero(word_count(d, n));
        for (deg, rel) in self.all_relations() {
            if deg > n {
                continue;
            }
            for i in 0..=n - deg {
                let (pre, post) = (word_count(d, i), word_count(d, n - deg - i));
                let block = word_count(d, deg);
                for r in rel.basis() {
                    for u in 0..pre {
                        for w in 0..post {
                            out.insert(SVec::from_pairs(r.entries().iter().map(|(k, c)| ((u * block + k) * post + w, c.clone()))));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn graded_component(&self, n: usize) -> GradedComponent {
        let ideal = self.ideal(n);
        let basis = ideal.free_columns();
        GradedComponent { degree: n, ideal, basis }
    }

    /// `dim A_0, …, dim A_cap`.
    pub fn hilbert(&self, cap: usize) -> Vec<usize> {
        (0..=cap).map(|n| self.graded_component(n).dim()).collect()
    }

    /// Drops relations above the generating degree.
    pub fn homogeneous_part(&self) -> AlgebraPresentation {
        AlgebraPresentation { extra: BTreeMap::new(), ..self.clone() }
    }

    fn require_single_degree(&self) -> Result<()> {
        if self.is_single_degree() {
            Ok(())
        } else {
            Err(Error::InvalidInput("operation needs relations in a single degree".into()))
        }
    }

    fn same_degree(&self, other: &AlgebraPresentation) -> Result<()> {
        if self.degree != other.degree {
            return Err(Error::InvalidInput(format!("relation degrees differ: {} and {}", self.degree, other.degree)));
        }
        self.require_single_degree()?;
        other.require_single_degree()
    }

    /// `A^!`: generators `V*`, relations `R^⊥` under `⟨φ_1⊗…⊗φ_N, v_1⊗…⊗v_N⟩ = Π φ_i(v_i)`.
    pub fn dual(&self) -> Result<AlgebraPresentation> {
        self.require_single_degree()?;
        AlgebraPresentation::new(self.generators.dual(), self.degree, self.relations.annihilator())
    }

    /// `A ∘ B`: generators `A_1 ⊗ B_1`, relations the regrouped `R_A ⊗ B_1^{⊗N} + A_1^{⊗N} ⊗ R_B`.
    pub fn white_product(&self, other: &AlgebraPresentation) -> Result<AlgebraPresentation> {
        self.same_degree(other)?;
        let n = self.degree;
        let full_a = Subspace::full(word_count(self.dim(), n));
        let full_b = Subspace::full(word_count(other.dim(), n));
        let s = interleave(self.dim(), other.dim(), n);
        let mut rel = tensor_subspaces(&self.relations, &full_b).image(&s);
        rel = rel.sum(&tensor_subspaces(&full_a, &other.relations).image(&s));
        AlgebraPresentation::new(self.generators.tensor(&other.generators), n, rel)
    }

    /// `A • B`: generators `A_1 ⊗ B_1`, relations the regrouped `R_A ⊗ R_B`.
    pub fn black_product(&self, other: &AlgebraPresentation) -> Result<AlgebraPresentation> {
        self.same_degree(other)?;
        let s = interleave(self.dim(), other.dim(), self.degree);
        let rel = tensor_subspaces(&self.relations, &other.relations).image(&s);
        AlgebraPresentation::new(self.generators.tensor(&other.generators), self.degree, rel)
    }

    /// Relation subspace after renaming generators by `perm` (new index of old generator `i` is `perm[i]`).
    pub fn relabel(&self, perm: &[usize], generators: VectorSpace) -> Result<AlgebraPresentation> {
        let d = self.dim();
        let map = generator_power(&LinearMap::from_columns(d, perm.iter().map(|&p| SVec::unit(p)).collect()), self.degree);
        AlgebraPresentation::new(generators, self.degree, self.relations.image(&map))
    }
}

/// `U ⊗ W` inside `V_U ⊗ V_W`.
pub fn tensor_subspaces(u: &Subspace, w: &Subspace) -> Subspace {
    let dw = w.ambient();
    let vecs: Vec<SVec> = u
        .basis()
        .flat_map(|a| w.basis().map(move |b| SVec::from_pairs(a.entries().iter().flat_map(|(i, x)| b.entries().iter().map(move |(j, y)| (i * dw + j, x * y))))))
        .collect();
    Subspace::span(u.ambient() * dw, vecs)
}

/// `f^{⊗n}`.
pub fn generator_power(f: &LinearMap, n: usize) -> LinearMap {
    let mut out = LinearMap::identity(1);
    for _ in 0..n {
        out = out.kron(f);
    }
    out
}

/// `k[t]`, the unit for `∘` in degree `n`.
pub fn polynomial_line(n: usize) -> AlgebraPresentation {
    AlgebraPresentation::new(VectorSpace::new(vec![Label::atom("t")]), n, Subspace::zero(1)).expect("valid")
}

/// `k[ε]/(ε^n)`, the unit for `•` in degree `n`.
pub fn truncated_line(n: usize) -> AlgebraPresentation {
    AlgebraPresentation::new(VectorSpace::new(vec![Label::atom("e")]), n, Subspace::full(1)).expect("valid")
}

/// The free algebra on named generators, relations in degree `n`.
pub fn free_algebra(names: &[&str], n: usize) -> AlgebraPresentation {
    let v = VectorSpace::new(names.iter().map(|s| Label::atom(*s)).collect());
    let ambient = word_count(v.dim(), n);
    AlgebraPresentation::new(v, n, Subspace::zero(ambient)).expect("valid")
}

/// `k⟨x, y⟩/(x y − q y x)`.
pub fn quantum_plane(q: crate::linalg::Q) -> AlgebraPresentation {
    let v = VectorSpace::new(vec![Label::atom("x"), Label::atom("y")]);
    let r = SVec::from_pairs([(1, crate::linalg::scalar::one()), (2, -q)]);
    AlgebraPresentation::new(v, 2, Subspace::span(4, [r])).expect("valid")
}

/// `k⟨x, y⟩` modulo `w − q^{inv(w, w')} w'` for words `w'` obtained from `w` by sorting letters,
/// where `inv` counts the swapped pairs; the degree-`n` analogue of the quantum plane.
pub fn quantum_space(q: &crate::linalg::Q, n: usize) -> AlgebraPresentation {
    let v = VectorSpace::new(vec![Label::atom("x"), Label::atom("y")]);
    let dims = vec![2; n];
    let mut rel = Subspace::zero(word_count(2, n));
    for w in multi_indices(&dims) {
        let mut sorted = w.clone();
        sorted.sort_unstable();
        if sorted == w {
            continue;
        }
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| w[i] > w[j]).count();
        let coeff = num_traits::pow(q.clone(), inversions);
        rel.insert(SVec::from_pairs([(flatten(&dims, &sorted), coeff), (flatten(&dims, &w), -crate::linalg::scalar::one())]));
    }
    AlgebraPresentation::new(v, n, rel).expect("valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::q;

    #[test]
    fn planes_have_linear_growth() {
        assert_eq!(free_algebra(&["x", "y"], 2).hilbert(4), vec![1, 2, 4, 8, 16]);
        for k in [1, 3] {
            assert_eq!(quantum_plane(q(k)).hilbert(4), vec![1, 2, 3, 4, 5]);
        }
    }

    #[test]
    fn dual_of_plane_is_exterior() {
        assert_eq!(quantum_plane(q(1)).dual().unwrap().hilbert(3), vec![1, 2, 1, 0]);
        assert_eq!(free_algebra(&["x", "y"], 2).dual().unwrap().hilbert(3), vec![1, 2, 0, 0]);
    }

    #[test]
    fn quantum_space_is_commutative_up_to_scalars() {
        // monomial counts x^a y^b with a + b = n
        assert_eq!(quantum_space(&q(2), 2).hilbert(4), vec![1, 2, 3, 4, 5]);
        assert_eq!(quantum_space(&q(1), 3).hilbert(4), vec![1, 2, 4, 4, 5]);
    }

    #[test]
    fn white_relation_count_is_inclusion_exclusion() {
        let a = quantum_plane(q(3));
        let b = free_algebra(&["u", "v", "w"], 2);
        let ab = a.white_product(&b).unwrap();
        let (ra, rb) = (a.relations.dim(), b.relations.dim());
        assert_eq!(ab.relations.dim(), ra * 9 + 4 * rb - ra * rb);
    }
}
