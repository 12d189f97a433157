use opcohom::collections::standard::binary_symmetric;
use opcohom::collections::CollectionMorphism;
use opcohom::free::presentation::{associative, graft_corollas, OperadPresentation};
use opcohom::free::ClassCatalog;
use opcohom::labeling::{Caps, GammaPreset, Signature};
use opcohom::linalg::scalar::q;
use opcohom::linalg::{LinearMap, SVec, Subspace};
use opcohom::operad_cohom::*;
use opcohom::quadratic::cohom::cohom;
use opcohom::quadratic::{free_algebra, quantum_plane, truncated_line, AlgebraPresentation};
use std::collections::BTreeMap;
use std::sync::Arc;

fn caps() -> Caps {
    Caps { max_arity: 4, max_weight: 3, max_genus: 0 }
}

fn assoc(preset: GammaPreset) -> Presented {
    let (pres, free) = associative(preset, caps()).unwrap();
    Presented::new(pres, free.catalog.clone()).unwrap()
}

/// `R̃` at arity 3 from the associator by direct tree evaluation: each decorated tree
/// `T(a, a')` goes to `Σ_{j,j'} T(a⊗b_j*, a'⊗b_j'*) ⊗ f_B(T(b_j, b_j'))`, then `B(3)` is contracted away.
fn associator_transport_oracle(a: &Presented, b: &Presented, r: &CohomResult) -> Subspace {
    let bin = Signature::new(0, 1, 2);
    let tern = Signature::new(0, 1, 3);
    let db1 = b.generators().dim(&bin);
    let fe = &r.operad.free;
    let pb = &b.projection[&tern];
    let trees = [(graft_corollas(GammaPreset::Ordinary, bin, 1, bin, 0).unwrap(), q(1)), (graft_corollas(GammaPreset::Ordinary, bin, 2, bin, 0).unwrap(), q(-1))];
    let _ = a;
    let dim_b = b.algebra.dim(&tern);
    let mut per_beta = vec![BTreeMap::<usize, opcohom::linalg::Q>::new(); dim_b];
    for (t, sign) in &trees {
        for j in 0..db1 {
            for jj in 0..db1 {
                let b_elem = pb.apply(&b.free.grafted_element(t, j, jj).unwrap());
                let e_elem = fe.grafted_element(t, j, jj).unwrap();
                for (k, bc) in b_elem.entries() {
                    for (i, ec) in e_elem.entries() {
                        *per_beta[*k].entry(*i).or_insert_with(|| q(0)) += sign * bc * ec;
                    }
                }
            }
        }
    }
    Subspace::span(fe.dim(&tern), per_beta.into_iter().map(SVec::from_pairs).collect::<Vec<_>>())
}

#[test]
fn associative_self_cohom_ordinary() {
    let a = assoc(GammaPreset::Ordinary);
    let r = cohom_operads(&a, &a).unwrap();
    let bin = Signature::new(0, 1, 2);
    assert_eq!(r.generators.dim(&bin), 4);
    let checks = check_cohom(&a, &a, &r).unwrap();
    assert!(checks.passed(), "{checks:?}");
    assert_eq!(r.relations[&Signature::new(0, 1, 3)], associator_transport_oracle(&a, &a, &r));
    assert!(r.operad.algebra.check_axioms().unwrap().holds());
}

#[test]
fn commutative_self_cohom_has_one_dimensional_generators() {
    let preset = GammaPreset::Ordinary;
    let cat = Arc::new(ClassCatalog::new(preset, caps()).unwrap());
    let gens = binary_symmetric(preset);
    let free = opcohom::free::FreeOperad::new(cat.clone(), &gens).unwrap();
    let bin = Signature::new(0, 1, 2);
    let t1 = graft_corollas(preset, bin, 1, bin, 0).unwrap();
    let t2 = graft_corollas(preset, bin, 2, bin, 0).unwrap();
    let tern = Signature::new(0, 1, 3);
    let rel = Subspace::span(free.dim(&tern), [free.grafted_element(&t1, 0, 0).unwrap().sub(&free.grafted_element(&t2, 0, 0).unwrap())]);
    let a = Presented::new(OperadPresentation { generators: gens, relations: BTreeMap::from([(tern, rel)]), caps: caps() }, cat).unwrap();
    for n in 2..=4 {
        assert_eq!(a.algebra.dim(&Signature::new(0, 1, n)), 1);
    }
    let r = cohom_operads(&a, &a).unwrap();
    assert_eq!(r.generators.dim(&bin), 1);
    assert!(check_cohom(&a, &a, &r).unwrap().passed());
    for n in 2..=4 {
        assert_eq!(r.operad.algebra.dim(&Signature::new(0, 1, n)), 1);
    }
}

#[test]
fn unit_second_argument_returns_first() {
    let a = assoc(GammaPreset::NonSymmetric);
    let u = unit_presented(a.free.catalog.clone()).unwrap();
    let r = cohom_operads(&a, &u).unwrap();
    assert!(check_cohom(&a, &u, &r).unwrap().passed());
    for (s, c) in &a.algebra.collection.components {
        assert_eq!(r.operad.algebra.dim(s), c.dim());
    }
}

fn linear_catalog(weight: usize) -> Arc<ClassCatalog> {
    Arc::new(ClassCatalog::new(GammaPreset::Linear, Caps { max_arity: 1, max_weight: weight, max_genus: 0 }).unwrap())
}

#[test]
fn linear_chains_reproduce_quadratic_cohom() {
    let cat = linear_catalog(4);
    let s = Signature::new(0, 1, 1);
    let pairs: Vec<(AlgebraPresentation, AlgebraPresentation)> = vec![
        (quantum_plane(q(1)), quantum_plane(q(1))),
        (quantum_plane(q(3)), quantum_plane(q(3))),
        (quantum_plane(q(2)), quantum_plane(q(1)).dual().unwrap()),
        (free_algebra(&["x", "y"], 2), quantum_plane(q(5))),
        (quantum_plane(q(1)), truncated_line(2)),
    ];
    for (x, y) in pairs {
        let a = algebra_operad(&x, cat.clone()).unwrap();
        let b = algebra_operad(&y, cat.clone()).unwrap();
        let r = cohom_operads(&a, &b).unwrap();
        assert!(check_cohom(&a, &b, &r).unwrap().passed());
        let expected = cohom(&x, &y).unwrap().algebra;
        let words = r.operad.free.word_map(2).unwrap();
        let got = r.relations.get(&s).cloned().unwrap_or_else(|| Subspace::zero(r.operad.free.dim(&s)));
        assert_eq!(got, expected.relations.image(&words), "{}", x.to_text());
        let hilbert = expected.hilbert(4);
        assert_eq!(&weight_profile(&r.operad.algebra.collection)[&s][1..], &hilbert[1..]);
    }
}

#[test]
fn initiality_on_samples() {
    let a = assoc(GammaPreset::NonSymmetric);
    let r = cohom_operads(&a, &a).unwrap();
    let e = &r.operad;
    for scale in [1, 2] {
        let u1 = CollectionMorphism { maps: r.coevaluation.maps.iter().map(|(s, m)| (*s, m.scale(&q(scale)))).collect() };
        let (v, report) = verify_initiality(&a, &a, &r, e, &u1).unwrap();
        assert!(report.passed(), "{report:?}");
        if scale == 1 {
            assert!(v.values().all(LinearMap::is_identity));
        }
    }
    let a = assoc(GammaPreset::Ordinary);
    let r = cohom_operads(&a, &a).unwrap();
    let bin = Signature::new(0, 1, 2);
    let c = &r.coevaluation.maps[&bin];
    // keep the first generator's image and send the second to a multiple of it
    let skew = LinearMap::from_columns(c.nrows(), vec![c.column(0).clone(), c.column(0).scale(&q(3))]);
    let bad = CollectionMorphism { maps: BTreeMap::from([(bin, skew)]) };
    let err = verify_initiality(&a, &a, &r, &r.operad, &bad).unwrap_err();
    assert!(matches!(err, opcohom::error::Error::InvalidInput(_)), "{err}");
}

#[test]
fn odot_with_unit_and_self() {
    let a = assoc(GammaPreset::Ordinary);
    let u = unit_presented(a.free.catalog.clone()).unwrap();
    let p = odot_product(&a, &u).unwrap();
    for (s, c) in &a.algebra.collection.components {
        assert_eq!(p.dims[s], c.dim());
    }
    let p = odot_product(&a, &a).unwrap();
    for (s, d) in &p.dims {
        assert!(*d <= p.white_dims[s]);
    }
}

#[test]
fn comultiplication_of_cohoms() {
    let cat = linear_catalog(3);
    let x = algebra_operad(&quantum_plane(q(2)), cat.clone()).unwrap();
    let y = algebra_operad(&quantum_plane(q(1)).dual().unwrap(), cat.clone()).unwrap();
    let xx = cohom_operads(&x, &x).unwrap();
    let (delta, ok) = op_comultiplication(&x, &x, &x, &xx, &xx, &xx).unwrap();
    assert!(ok);
    let s = Signature::new(0, 1, 1);
    assert_eq!(delta[&s], opcohom::quadratic::cohom::comultiplication_matrix(2, 2, 2));
    let xy = cohom_operads(&x, &y).unwrap();
    let yx = cohom_operads(&y, &x).unwrap();
    let (_, ok) = op_comultiplication(&x, &y, &x, &xx, &xy, &yx).unwrap();
    assert!(ok);
}
