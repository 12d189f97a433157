//! Inner cohomomorphisms `A • (qB)^!`, coevaluation, comultiplication and the adjunction check.

use super::{generator_power, polynomial_line, AlgebraPresentation};
use crate::collections::coevaluation_matrix;
use crate::error::{Error, Result};
use crate::linalg::tensor::{multi_indices, unflatten};
use crate::linalg::{LinearMap, SVec, Subspace, Q};
use num_traits::Zero;
use rand::Rng;
use std::collections::BTreeMap;

/// `cohom(A, B)` with its coevaluation `A_1 → cohom(A, B)_1 ⊗ B_1`.
#[derive(Clone, Debug)]
pub struct Cohom {
    pub algebra: AlgebraPresentation,
    pub coevaluation: LinearMap,
}

/// `A • (qB)^!`, where `qB` keeps only the relations of the generating degree.
pub fn cohom(a: &AlgebraPresentation, b: &AlgebraPresentation) -> Result<Cohom> {
    let qb = b.homogeneous_part();
    let algebra = a.black_product(&qb.dual()?)?;
    Ok(Cohom { algebra, coevaluation: coevaluation_matrix(a.dim(), b.dim()) })
}

/// `cohom(A, A)`, a quantum semigroup of matrices.
pub fn coend(a: &AlgebraPresentation) -> Result<Cohom> {
    cohom(a, a)
}

/// Whether the generator map `f : A_1 → B_1` sends the relations of `A` into the ideal of `B`.
pub fn is_algebra_map(f: &LinearMap, a: &AlgebraPresentation, b: &AlgebraPresentation) -> Result<bool> {
    if f.ncols() != a.dim() || f.nrows() != b.dim() {
        return Err(Error::Dimension(format!("generator map is {}x{}, expected {}x{}", f.nrows(), f.ncols(), b.dim(), a.dim())));
    }
    for (n, rel) in std::iter::once((a.degree, &a.relations)).chain(a.extra.iter().map(|(n, r)| (*n, r))) {
        if rel.is_zero() {
            continue;
        }
        let fp = generator_power(f, n);
        let ideal = b.ideal(n);
        if !rel.basis().all(|r| ideal.contains(&fp.apply(r))) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks that the coevaluation is an algebra map `A → cohom(A, B) ∘ B`.
pub fn coevaluation_is_algebra_map(a: &AlgebraPresentation, b: &AlgebraPresentation) -> Result<bool> {
    let c = cohom(a, b)?;
    let target = c.algebra.white_product(&b.homogeneous_part())?;
    is_algebra_map(&c.coevaluation, a, &target)
}

/// `cohom(A, C)_1 → cohom(A, B)_1 ⊗ cohom(B, C)_1`, `x ⊗ z* ↦ Σ_y (x ⊗ y*) ⊗ (y ⊗ z*)`.
pub fn comultiplication_matrix(da: usize, db: usize, dc: usize) -> LinearMap {
    let cols = (0..da * dc)
        .map(|k| {
            let (a, c) = (k / dc, k % dc);
            SVec::from_pairs((0..db).map(|b| ((a * db + b) * (db * dc) + b * dc + c, crate::linalg::scalar::one())))
        })
        .collect();
    LinearMap::from_columns(da * db * db * dc, cols)
}

/// The generator-level comultiplication with the check that it is an algebra map
/// `cohom(A, C) → cohom(A, B) ∘ cohom(B, C)`.
pub fn comultiplication(a: &AlgebraPresentation, b: &AlgebraPresentation, c: &AlgebraPresentation) -> Result<(LinearMap, bool)> {
    let ac = cohom(a, c)?.algebra;
    let target = cohom(a, b)?.algebra.white_product(&cohom(b, c)?.algebra)?;
    let m = comultiplication_matrix(a.dim(), b.dim(), c.dim());
    let ok = is_algebra_map(&m, &ac, &target)?;
    Ok((m, ok))
}

/// `x ⊗ y* ↦ δ_{xy}`, the counit `cohom(A, A)_1 → k`.
pub fn counit_matrix(d: usize) -> LinearMap {
    LinearMap::from_rows(d * d, &[SVec::from_pairs((0..d).map(|i| (i * d + i, crate::linalg::scalar::one())))])
}

/// Whether the counit is an algebra map `cohom(A, A) → k[t]`.
pub fn counit_is_algebra_map(a: &AlgebraPresentation) -> Result<bool> {
    let e = coend(a)?.algebra;
    is_algebra_map(&counit_matrix(a.dim()), &e, &polynomial_line(a.degree))
}

/// `ψ : A_1 → B_1 ⊗ C_1` from `φ : A_1 ⊗ B_1* → C_1`, `ψ(x) = Σ_y y ⊗ φ(x ⊗ y*)`.
pub fn curry_generator_map(phi: &LinearMap, da: usize, db: usize) -> LinearMap {
    let dc = phi.nrows();
    let cols = (0..da)
        .map(|a| {
            let mut pairs = Vec::new();
            for b in 0..db {
                for (c, x) in phi.column(a * db + b).entries() {
                    pairs.push((b * dc + c, x.clone()));
                }
            }
            SVec::from_pairs(pairs)
        })
        .collect();
    LinearMap::from_columns(db * dc, cols)
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct AdjunctionReport {
    pub samples: usize,
    pub both_hold: usize,
    pub counterexamples: usize,
    /// Rank of the polynomial conditions on `φ` for `A • B^! → C`.
    pub rank_black_side: usize,
    /// Rank of the conditions on the curried map for `A → B ∘ C`.
    pub rank_white_side: usize,
    pub condition_spans_equal: bool,
}

impl AdjunctionReport {
    pub fn passed(&self) -> bool {
        self.counterexamples == 0 && self.condition_spans_equal
    }
}

/// Degree-`n` polynomials in the entries of a generator map whose vanishing is the algebra-map
/// condition `f^{⊗n}(R) ⊆ I_n`. `var(row, col)` names the variable for each matrix entry.
fn condition_polynomials(
    rel: &Subspace,
    n: usize,
    src_dim: usize,
    tgt_dim: usize,
    target_ideal: &Subspace,
    var: &dyn Fn(usize, usize) -> usize,
    monomials: &mut BTreeMap<Vec<usize>, usize>,
) -> Vec<SVec> {
    let quotient = target_ideal.quotient_map();
    let src_dims = vec![src_dim; n];
    let tgt_dims = vec![tgt_dim; n];
    let mut out = Vec::new();
    for r in rel.basis() {
        let mut per_row: BTreeMap<usize, BTreeMap<usize, Q>> = BTreeMap::new();
        for u in multi_indices(&tgt_dims) {
            let uidx = crate::linalg::tensor::flatten(&tgt_dims, &u);
            let col = quotient.column(uidx);
            if col.is_zero() {
                continue;
            }
            for (w, rw) in r.entries() {
                let wv = unflatten(&src_dims, *w);
                let mut mono: Vec<usize> = u.iter().zip(&wv).map(|(&uk, &wk)| var(uk, wk)).collect();
                mono.sort_unstable();
                let next = monomials.len();
                let m = *monomials.entry(mono).or_insert(next);
                for (q, p) in col.entries() {
                    let e = per_row.entry(*q).or_default().entry(m).or_insert_with(Q::zero);
                    *e += rw * p;
                }
            }
        }
        out.extend(per_row.into_values().map(|m| SVec::from_pairs(m.into_iter())).filter(|v| !v.is_zero()));
    }
    out
}

/// Compares `Hom(A • B^!, C)` with `Hom(A, B ∘ C)` under currying: the polynomial conditions
/// must span the same space, and each random sample must satisfy both or neither.
pub fn check_adjunction<R: Rng>(a: &AlgebraPresentation, b: &AlgebraPresentation, c: &AlgebraPresentation, samples: usize, rng: &mut R) -> Result<AdjunctionReport> {
    let n = a.degree;
    let black = a.black_product(&b.dual()?)?;
    let white = b.white_product(c)?;
    let (da, db, dc) = (a.dim(), b.dim(), c.dim());
    let mut monomials = BTreeMap::new();
    let var_phi = |row: usize, col: usize| row * da * db + col;
    let var_psi = |row: usize, col: usize| (row % dc) * da * db + col * db + row / dc;
    let p1 = condition_polynomials(&black.relations, n, da * db, dc, &c.ideal(n), &var_phi, &mut monomials);
    let p2 = condition_polynomials(&a.relations, n, da, db * dc, &white.ideal(n), &var_psi, &mut monomials);
    let total = monomials.len();
    let s1 = Subspace::span(total, p1);
    let s2 = Subspace::span(total, p2);
    let mut report = AdjunctionReport {
        samples: 0,
        both_hold: 0,
        counterexamples: 0,
        rank_black_side: s1.dim(),
        rank_white_side: s2.dim(),
        condition_spans_equal: s1.is_subspace_of(&s2) && s2.is_subspace_of(&s1),
    };
    let mut phis = vec![LinearMap::zero(dc, da * db)];
    if dc == da * db {
        phis.extend((1..=3).map(|k| LinearMap::identity(dc).scale(&Q::from_integer(k.into()))));
    }
    for k in 0..samples.saturating_sub(phis.len()) {
        // every third sample is rank one, which satisfies more conditions
        let dense: Vec<Vec<Q>> = if k % 3 == 0 {
            let u: Vec<i64> = (0..dc).map(|_| rng.gen_range(-2..=2)).collect();
            let v: Vec<i64> = (0..da * db).map(|_| rng.gen_range(-2..=2)).collect();
            u.iter().map(|x| v.iter().map(|y| Q::from_integer((x * y).into())).collect()).collect()
        } else {
            (0..dc).map(|_| (0..da * db).map(|_| Q::from_integer(rng.gen_range(-3i64..=3).into())).collect()).collect()
        };
        phis.push(LinearMap::from_dense(&dense, da * db));
    }
    for phi in phis {
        let left = is_algebra_map(&phi, &black, c)?;
        let right = is_algebra_map(&curry_generator_map(&phi, da, db), a, &white)?;
        report.samples += 1;
        if left && right {
            report.both_hold += 1;
        }
        if left != right {
            report.counterexamples += 1;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::q;
    use crate::quadratic::{free_algebra, quantum_plane, truncated_line};
    use rand::SeedableRng;

    /// Relations of `cohom(A, A)` written out from `Σ r_{kl} f_{jm} z_{kj} z_{lm}` over `r ∈ R`, `f ∈ R^⊥`.
    fn coend_oracle(a: &AlgebraPresentation) -> Subspace {
        let d = a.dim();
        let z = |i: usize, j: usize| i * d + j;
        let e = d * d;
        let mut vecs = Vec::new();
        for r in a.relations.basis() {
            for f in a.relations.annihilator().basis() {
                let mut acc = BTreeMap::<usize, Q>::new();
                for (kl, rc) in r.entries() {
                    for (jm, fc) in f.entries() {
                        let (k, l, j, m) = (kl / d, kl % d, jm / d, jm % d);
                        *acc.entry(z(k, j) * e + z(l, m)).or_insert_with(Q::zero) += rc * fc;
                    }
                }
                vecs.push(SVec::from_pairs(acc));
            }
        }
        Subspace::span(e * e, vecs)
    }

    #[test]
    fn coend_of_plane_has_three_manin_relations() {
        for k in [1, 3] {
            let a = quantum_plane(q(k));
            let e = coend(&a).unwrap();
            assert_eq!(e.algebra.relations.dim(), 3);
            assert_eq!(e.algebra.relations, coend_oracle(&a));
        }
    }

    #[test]
    fn coend_at_q_one_is_commutation_of_columns() {
        // a = x⊗x*, b = x⊗y*, c = y⊗x*, d = y⊗y*
        let e = coend(&quantum_plane(q(1))).unwrap().algebra;
        let words = |pairs: &[(usize, usize, i64)]| SVec::from_pairs(pairs.iter().map(|&(i, j, c)| (i * 4 + j, q(c))));
        let (a, b, c, d) = (0, 1, 2, 3);
        let expected = Subspace::span(16, [words(&[(a, c, 1), (c, a, -1)]), words(&[(b, d, 1), (d, b, -1)]), words(&[(a, d, 1), (d, a, -1), (b, c, 1), (c, b, -1)])]);
        assert_eq!(e.relations, expected);
    }

    #[test]
    fn coevaluation_and_counit_are_algebra_maps() {
        for a in [quantum_plane(q(1)), quantum_plane(q(3)), free_algebra(&["x", "y"], 2), truncated_line(2)] {
            for b in [quantum_plane(q(2)), truncated_line(2)] {
                assert!(coevaluation_is_algebra_map(&a, &b).unwrap());
            }
            assert!(counit_is_algebra_map(&a).unwrap());
        }
    }

    #[test]
    fn comultiplication_is_coassociative_and_multiplicative() {
        let a = quantum_plane(q(2));
        let (m, ok) = comultiplication(&a, &a, &a).unwrap();
        assert!(ok);
        let d = a.dim();
        let e = d * d;
        let left = m.kron(&LinearMap::identity(e)).compose(&m).unwrap();
        let right = LinearMap::identity(e).kron(&m).compose(&m).unwrap();
        assert_eq!(left, right);
        let counit = counit_matrix(d);
        assert!(counit.kron(&LinearMap::identity(e)).compose(&m).unwrap().is_identity());
    }

    #[test]
    fn adjunction_on_plane_exterior_triple() {
        let p = quantum_plane(q(1));
        let ext = p.dual().unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let r = check_adjunction(&p, &ext, &p, 30, &mut rng).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.rank_black_side, r.rank_white_side);
        let c = p.black_product(&ext.dual().unwrap()).unwrap();
        let r = check_adjunction(&p, &ext, &c, 30, &mut rng).unwrap();
        assert!(r.passed() && r.both_hold >= 4, "{r:?}");
        let t = truncated_line(2);
        let r = check_adjunction(&t, &t, &t, 10, &mut rng).unwrap();
        assert!(r.passed() && r.both_hold == r.samples);
    }
}
