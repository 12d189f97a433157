use opcohom::linalg::scalar::q;
use opcohom::linalg::{SVec, Subspace, VectorSpace};
use opcohom::quadratic::*;
use proptest::prelude::*;

fn random_presentation(d: usize, n: usize, rows: Vec<Vec<i64>>) -> AlgebraPresentation {
    let ambient = word_count(d, n);
    let vecs = rows.into_iter().map(|r| SVec::from_pairs(r.into_iter().take(ambient).enumerate().map(|(i, c)| (i, q(c)))));
    AlgebraPresentation::new(VectorSpace::numbered("x", d), n, Subspace::span(ambient, vecs.collect::<Vec<_>>())).unwrap()
}

fn presentation() -> impl Strategy<Value = AlgebraPresentation> {
    (1usize..=2, 2usize..=3).prop_flat_map(|(d, n)| {
        let ambient = word_count(d, n);
        prop::collection::vec(prop::collection::vec(-2i64..=2, ambient), 0..=3).prop_map(move |rows| random_presentation(d, n, rows))
    })
}

fn pair(n: usize) -> impl Strategy<Value = (AlgebraPresentation, AlgebraPresentation)> {
    let one = move || {
        (1usize..=2).prop_flat_map(move |d| {
            let ambient = word_count(d, n);
            prop::collection::vec(prop::collection::vec(-2i64..=2, ambient), 0..=2).prop_map(move |rows| random_presentation(d, n, rows))
        })
    };
    (one(), one())
}

fn test_family(n: usize) -> Vec<AlgebraPresentation> {
    let mut out = vec![free_algebra(&["x", "y"], n), truncated_line(n)];
    for k in [1, 2, 3, 5] {
        out.push(quantum_space(&q(k), n));
    }
    if n == 2 {
        out.push(quantum_plane(q(1)).dual().unwrap());
    }
    out
}

/// `A ∘ B` relabeled to the generator order of `B ∘ A`.
fn swapped(a: &AlgebraPresentation, b: &AlgebraPresentation, ab: &AlgebraPresentation, ba: &AlgebraPresentation) -> Subspace {
    let (da, db) = (a.dim(), b.dim());
    let perm: Vec<usize> = (0..da * db).map(|k| (k % db) * da + k / db).collect();
    ab.relabel(&perm, ba.generators.clone()).unwrap().relations
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn duality_is_an_involution(a in presentation()) {
        prop_assert_eq!(a.dual().unwrap().dual().unwrap().relations, a.relations);
    }

    #[test]
    fn unit_laws(a in presentation()) {
        let n = a.degree;
        prop_assert_eq!(a.white_product(&polynomial_line(n)).unwrap().relations, a.relations.clone());
        prop_assert_eq!(a.black_product(&truncated_line(n)).unwrap().relations, a.relations);
    }

    #[test]
    fn products_are_interchanged_by_duality((a, b) in pair(2)) {
        let lhs = a.white_product(&b).unwrap().dual().unwrap();
        let rhs = a.dual().unwrap().black_product(&b.dual().unwrap()).unwrap();
        prop_assert_eq!(lhs.relations, rhs.relations);
    }

    #[test]
    fn products_are_symmetric((a, b) in pair(2)) {
        let (ab, ba) = (a.white_product(&b).unwrap(), b.white_product(&a).unwrap());
        prop_assert_eq!(swapped(&a, &b, &ab, &ba), ba.relations.clone());
        let (ab, ba) = (a.black_product(&b).unwrap(), b.black_product(&a).unwrap());
        prop_assert_eq!(swapped(&a, &b, &ab, &ba), ba.relations.clone());
    }

    #[test]
    fn black_relations_have_tensor_rank((a, b) in pair(3)) {
        prop_assert_eq!(a.black_product(&b).unwrap().relations.dim(), a.relations.dim() * b.relations.dim());
    }

    #[test]
    fn products_are_associative((a, b) in pair(2), c in presentation().prop_filter("degree 2", |p| p.degree == 2)) {
        let l = a.white_product(&b).unwrap().white_product(&c).unwrap();
        let r = a.white_product(&b.white_product(&c).unwrap()).unwrap();
        prop_assert_eq!(l.relations, r.relations);
        let l = a.black_product(&b).unwrap().black_product(&c).unwrap();
        let r = a.black_product(&b.black_product(&c).unwrap()).unwrap();
        prop_assert_eq!(l.relations, r.relations);
    }
}

#[test]
fn duality_on_named_algebras() {
    for n in [2, 3] {
        for a in test_family(n) {
            assert_eq!(a.dual().unwrap().dual().unwrap().relations, a.relations);
        }
    }
}

#[test]
fn quantum_plane_dual_relations() {
    for k in [2, 3, 5] {
        let d = quantum_plane(q(k)).dual().unwrap();
        let w = |pairs: &[(usize, i64)]| SVec::from_pairs(pairs.iter().map(|&(i, c)| (i, q(c))));
        // x*x*, y*y*, q x*y* + y*x*
        let expected = Subspace::span(4, [w(&[(0, 1)]), w(&[(3, 1)]), w(&[(1, k), (2, 1)])]);
        assert_eq!(d.relations, expected);
    }
}

#[test]
fn segre_dimensions_on_test_pairs() {
    let family = test_family(2);
    for a in &family {
        for b in &family {
            let ab = a.white_product(b).unwrap();
            let (ha, hb, hab) = (a.hilbert(4), b.hilbert(4), ab.hilbert(4));
            for n in 0..=4 {
                assert_eq!(hab[n], ha[n] * hb[n], "degree {n}");
            }
        }
    }
}

#[test]
fn exterior_plane_vanishes_above_dimension() {
    for k in [1, 2, 3] {
        let ext = quantum_plane(q(k)).dual().unwrap();
        assert_eq!(ext.hilbert(4)[3..], [0, 0]);
    }
}

#[test]
fn plane_exterior_interchange() {
    let p = quantum_plane(q(1));
    let e = p.dual().unwrap();
    for (a, b) in [(&p, &e), (&e, &p), (&p, &p)] {
        let lhs = a.white_product(b).unwrap().dual().unwrap();
        let rhs = a.dual().unwrap().black_product(&b.dual().unwrap()).unwrap();
        assert_eq!(lhs.relations, rhs.relations);
    }
}
