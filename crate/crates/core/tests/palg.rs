use opcohom::collections::CollectionMorphism;
use opcohom::free::presentation::{associative, commutative, graft_corollas, OperadPresentation};
use opcohom::free::ClassCatalog;
use opcohom::labeling::{Caps, GammaPreset, Signature};
use opcohom::linalg::scalar::q;
use opcohom::linalg::tensor::flatten;
use opcohom::linalg::{LinearMap, SVec, Q};
use opcohom::operad_cohom::Presented;
use opcohom::palg::op_end::{op_end, p_algebra_structures, FlavoredFamily, StructureSpace};
use opcohom::palg::*;
use opcohom::quadratic::cohom::cohom;
use opcohom::quadratic::{free_algebra, polynomial_line, quantum_plane, AlgebraPresentation};
use proptest::prelude::*;
use std::collections::BTreeMap;
use std::sync::Arc;

fn small_caps() -> Caps {
    Caps { max_arity: 3, max_weight: 2, max_genus: 0 }
}

fn presented(pair: (OperadPresentation, opcohom::free::FreeOperad)) -> Presented {
    let (pres, free) = pair;
    Presented::new(pres, free.catalog.clone()).unwrap()
}

fn assoc_operad(caps: Caps) -> AlgebraOperad {
    AlgebraOperad::with_diagonal(presented(associative(GammaPreset::Ordinary, caps).unwrap())).unwrap()
}

fn comm_operad(caps: Caps) -> AlgebraOperad {
    AlgebraOperad::with_diagonal(presented(commutative(caps).unwrap())).unwrap()
}

#[test]
fn endomorphism_components_count_flags() {
    let cat = Arc::new(ClassCatalog::new(GammaPreset::Ordinary, small_caps()).unwrap());
    for d in [1usize, 2] {
        let end = op_end(&FlavoredFamily::standard(GammaPreset::Ordinary, d), cat.clone()).unwrap();
        for n in 2..=3 {
            assert_eq!(end.algebra.dim(&Signature::new(0, 1, n)), d.pow(1 + n as u32));
        }
        assert!(end.algebra.check_axioms().unwrap().holds());
        if d == 1 {
            for m in end.algebra.alpha.values() {
                assert!(m.to_dense().iter().flatten().all(|x| *x == q(1)));
            }
        }
    }
}

#[test]
fn cyclic_endomorphisms_satisfy_axioms() {
    let caps = Caps { max_arity: 4, max_weight: 2, max_genus: 0 };
    let cat = Arc::new(ClassCatalog::new(GammaPreset::Cyclic, caps).unwrap());
    let mut fam = FlavoredFamily::standard(GammaPreset::Cyclic, 2);
    fam.pairings.insert(("v".into(), "v".into()), vec![vec![q(0), q(1)], vec![q(1), q(0)]]);
    let end = op_end(&fam, cat).unwrap();
    assert!(end.algebra.check_axioms().unwrap().holds());
}

#[test]
fn one_edge_contraction_is_the_pairing() {
    let cat = Arc::new(ClassCatalog::new(GammaPreset::Ordinary, small_caps()).unwrap());
    let form = vec![vec![q(2), q(3)], vec![q(5), q(7)]];
    let mut fam = FlavoredFamily::standard(GammaPreset::Ordinary, 2);
    fam.pairings.insert(("out".into(), "in".into()), form.clone());
    let end = op_end(&fam, cat).unwrap();
    let bin = Signature::new(0, 1, 2);
    let t = graft_corollas(GammaPreset::Ordinary, bin, 1, bin, 0).unwrap();
    let tern = Signature::new(0, 1, 3);
    for outer in 0..8 {
        for inner in 0..8 {
            let x = end.algebra.free.grafted_element(&t, outer, inner).unwrap();
            let v = end.algebra.alpha[&tern].apply(&x);
            let (o, i1, i2) = (outer / 4, (outer / 2) % 2, outer % 2);
            let (o2, j1, j2) = (inner / 4, (inner / 2) % 2, inner % 2);
            let expected = SVec::from_pairs([(flatten(&[2; 4], &[o, j1, j2, i2]), form[o2][i1].clone())]);
            assert_eq!(v, expected, "outer {outer} inner {inner}");
        }
    }
    fam.pairings.clear();
    assert!(FlavoredFamily::from_json(&fam.to_json()).is_err());
}

#[test]
fn family_json_round_trip() {
    let fam = FlavoredFamily::standard(GammaPreset::Dioperad, 3);
    assert_eq!(FlavoredFamily::from_json(&fam.to_json()).unwrap(), fam);
}

type Product = [[[i64; 2]; 2]; 2];

/// `products[i][j]` lists the coefficients of `u_i u_j`.
fn structure(space: &StructureSpace, end_dim: usize, product: &Product) -> CollectionMorphism {
    let bin = Signature::new(0, 1, 2);
    let e0 = SVec::from_pairs((0..8).map(|k| {
        let (o, i, j) = (k / 4, (k / 2) % 2, k % 2);
        (k, q(product[i][j][o]))
    }));
    let swap = opcohom::linalg::tensor::factor_permutation(&[2, 2, 2], &[0, 2, 1]);
    let e1 = swap.apply(&e0);
    let phi = CollectionMorphism { maps: BTreeMap::from([(bin, LinearMap::from_columns(end_dim, vec![e0, e1]))]) };
    assert!(space.coordinates(&phi).is_some());
    phi
}

fn associative_oracle(m: &Product) -> bool {
    let mul = |x: [i64; 2], y: [i64; 2]| -> [i64; 2] {
        let mut out = [0; 2];
        for i in 0..2 {
            for j in 0..2 {
                for o in 0..2 {
                    out[o] += x[i] * y[j] * m[i][j][o];
                }
            }
        }
        out
    };
    let basis = [[1, 0], [0, 1]];
    basis.iter().all(|&a| basis.iter().all(|&b| basis.iter().all(|&c| mul(mul(a, b), c) == mul(a, mul(b, c)))))
}

fn structure_space() -> StructureSpace {
    let cat = Arc::new(ClassCatalog::new(GammaPreset::Ordinary, small_caps()).unwrap());
    let p = presented(associative(GammaPreset::Ordinary, small_caps()).unwrap());
    let end = op_end(&FlavoredFamily::standard(GammaPreset::Ordinary, 2), cat).unwrap();
    p_algebra_structures(&p, &end).unwrap()
}

#[test]
fn associative_structures_on_the_plane() {
    let space = structure_space();
    assert_eq!(space.num_params(), 8);
    let matrix_units: Product = [[[1, 0], [0, 1]], [[0, 0], [0, 0]]];
    let zero: Product = [[[0, 0]; 2]; 2];
    let dual_numbers: Product = [[[1, 0], [0, 1]], [[0, 1], [0, 0]]];
    let skew: Product = [[[0, 1], [0, 0]], [[1, 0], [0, 0]]];
    for (m, expected) in [(matrix_units, true), (zero, true), (dual_numbers, true), (skew, false)] {
        assert_eq!(associative_oracle(&m), expected);
        let phi = structure(&space, 8, &m);
        let x = space.coordinates(&phi).unwrap();
        assert_eq!(space.is_structure(&x).unwrap(), expected, "{m:?}");
        assert_eq!(space.conditions_hold(&x), expected);
    }
}

#[test]
fn scalar_structures_are_all_admissible() {
    let cat = Arc::new(ClassCatalog::new(GammaPreset::Ordinary, small_caps()).unwrap());
    let p = presented(associative(GammaPreset::Ordinary, small_caps()).unwrap());
    let end = op_end(&FlavoredFamily::standard(GammaPreset::Ordinary, 1), cat.clone()).unwrap();
    let space = p_algebra_structures(&p, &end).unwrap();
    assert!(space.conditions.is_empty());
    for lambda in [0, 1, 2, -3] {
        assert!(space.is_structure(&vec![q(lambda); space.num_params()]).unwrap());
    }
    let free = presented((OperadPresentation { relations: BTreeMap::new(), ..associative(GammaPreset::Ordinary, small_caps()).unwrap().0 }, associative(GammaPreset::Ordinary, small_caps()).unwrap().1));
    let end2 = op_end(&FlavoredFamily::standard(GammaPreset::Ordinary, 2), cat).unwrap();
    let space = p_algebra_structures(&free, &end2).unwrap();
    assert!(space.conditions.is_empty());
    assert!(space.is_structure(&(1..=8).map(q).collect::<Vec<_>>()).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn structure_conditions_match_associativity(entries in proptest::collection::vec(-1i64..=1, 8)) {
        let space = structure_space();
        let mut m: Product = [[[0; 2]; 2]; 2];
        for (k, e) in entries.iter().enumerate() {
            m[k / 4][(k / 2) % 2][k % 2] = *e;
        }
        let x = space.coordinates(&structure(&space, 8, &m)).unwrap();
        let oracle = associative_oracle(&m);
        prop_assert_eq!(space.is_structure(&x).unwrap(), oracle);
        prop_assert_eq!(space.conditions_hold(&x), oracle);
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn free_algebra_dimensions() {
    let caps = Caps { max_arity: 4, max_weight: 3, max_genus: 0 };
    let assoc = assoc_operad(caps);
    let comm = comm_operad(caps);
    for d in 1..=3 {
        let cap = if d == 3 { 3 } else { 4 };
        let fa = free_p_algebra(&assoc, d, cap).unwrap();
        let fc = free_p_algebra(&comm, d, cap).unwrap();
        for n in 1..=cap {
            assert_eq!(fa.algebra.dims[n], d.pow(n as u32));
            assert_eq!(fc.algebra.dims[n], binomial(d + n - 1, n));
        }
    }
    let cat = Arc::new(ClassCatalog::new(GammaPreset::Ordinary, caps).unwrap());
    let empty = OperadPresentation { generators: opcohom::collections::Collection::empty(GammaPreset::Ordinary), relations: BTreeMap::new(), caps };
    let unit_only = AlgebraOperad::with_diagonal(Presented::new(empty, cat).unwrap()).unwrap();
    let f = free_p_algebra(&unit_only, 3, 4).unwrap();
    assert_eq!(f.algebra.dims, vec![0, 3, 0, 0, 0]);
}

fn small_matrix(rows: usize, cols: usize, seed: i64) -> LinearMap {
    LinearMap::from_dense(&(0..rows).map(|i| (0..cols).map(|j| q(((i as i64 * 7 + j as i64 * 3 + seed) % 5) - 2)).collect()).collect::<Vec<_>>(), cols)
}

#[test]
fn free_algebra_is_functorial() {
    let p = assoc_operad(small_caps());
    let c = comm_operad(small_caps());
    for op in [&p, &c] {
        let (x, y, z) = (free_p_algebra(op, 2, 3).unwrap(), free_p_algebra(op, 3, 3).unwrap(), free_p_algebra(op, 2, 3).unwrap());
        let (f, g) = (small_matrix(3, 2, 1), small_matrix(2, 3, 4));
        for n in 1..=3 {
            let lhs = x.map_to(&z, &g.compose(&f).unwrap(), n).unwrap();
            let rhs = y.map_to(&z, &g, n).unwrap().compose(&x.map_to(&y, &f, n).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
        let fs: Vec<LinearMap> = (0..=3).map(|n| if n == 0 { LinearMap::zero(0, 0) } else { x.map_to(&y, &f, n).unwrap() }).collect();
        assert!(x.algebra.is_morphism_to(&y.algebra, &fs, op.dim(2)).unwrap());
    }
}

#[test]
fn j_map_descends_and_is_multiplicative() {
    for p in [assoc_operad(small_caps()), comm_operad(small_caps())] {
        for (de, dw) in [(1, 1), (2, 1), (2, 2)] {
            let fe = free_p_algebra(&p, de, 3).unwrap();
            let fw = free_p_algebra(&p, dw, 3).unwrap();
            let few = free_p_algebra(&p, de * dw, 3).unwrap();
            let mut js = vec![LinearMap::zero(0, 0)];
            for n in 1..=3 {
                assert!(j_descends(&p, &fe, &fw, &few, n).unwrap());
                js.push(j_map(&p, &fe, &fw, &few, n).unwrap());
            }
            assert!(js[1].is_identity());
            let target = fe.algebra.tensor(&fw.algebra, &p).unwrap();
            assert!(few.algebra.is_morphism_to(&target, &js, p.dim(2)).unwrap());
            if (de, dw) == (1, 1) && p.dim(2) == 2 {
                assert_eq!(js[2], LinearMap::identity(1));
            }
        }
    }
}

#[test]
fn tensor_products_of_presented_algebras() {
    let p = assoc_operad(small_caps());
    let plane = PresentedPAlgebra::from_quadratic(&p, &quantum_plane(q(2)), 3).unwrap();
    let line = PresentedPAlgebra::from_quadratic(&p, &polynomial_line(2), 3).unwrap();
    let t = tensor_p_algebras(&p, &plane, &line).unwrap();
    assert_eq!(t.presented.dims(), plane.dims());
    for n in 1..=3 {
        assert_eq!(t.presented.ideal[n], plane.ideal[n]);
    }
    let pairs = [(quantum_plane(q(2)), quantum_plane(q(1)).dual().unwrap()), (free_algebra(&["x", "y"], 2), quantum_plane(q(3)))];
    for (a, b) in pairs {
        let (va, vb) = (PresentedPAlgebra::from_quadratic(&p, &a, 3).unwrap(), PresentedPAlgebra::from_quadratic(&p, &b, 3).unwrap());
        let t = tensor_p_algebras(&p, &va, &vb).unwrap();
        for n in 1..=3 {
            assert_eq!(t.presented.algebra.dims[n], va.algebra.dims[n] * vb.algebra.dims[n]);
            assert_eq!(t.comparison[n].rank(), t.product.dims[n]);
        }
        assert!(t.presented.algebra.is_morphism_to(&t.product, &t.comparison, 2).unwrap());
        let white = a.white_product(&b).unwrap();
        let words = t.presented.free.word_map(&p, 2).unwrap();
        assert_eq!(t.presented.ideal[2], white.relations.image(&words));
    }
}

#[test]
fn tensor_of_scalar_structures_multiplies_constants() {
    let p = assoc_operad(small_caps());
    let scalar = |c: i64| LinearMap::from_dense(&[vec![q(c), q(c)]], 2);
    let t = tensor_structures(&p, &scalar(3), 1, &scalar(-5), 1).unwrap();
    assert_eq!(t, scalar(-15));
    let mu = |m: &Product| {
        let e0 = SVec::from_pairs((0..8).map(|k| (k, q(m[(k / 2) % 2][k % 2][k / 4]))));
        let e1 = opcohom::linalg::tensor::factor_permutation(&[2, 2, 2], &[0, 2, 1]).apply(&e0);
        LinearMap::from_columns(8, vec![e0, e1])
    };
    let matrix_units: Product = [[[1, 0], [0, 1]], [[0, 0], [0, 0]]];
    let dual_numbers: Product = [[[1, 0], [0, 1]], [[0, 1], [0, 0]]];
    let (a, b) = (mu(&matrix_units), mu(&dual_numbers));
    let left = tensor_structures(&p, &tensor_structures(&p, &a, 2, &b, 2).unwrap(), 4, &a, 2).unwrap();
    let right = tensor_structures(&p, &a, 2, &tensor_structures(&p, &b, 2, &a, 2).unwrap(), 4).unwrap();
    assert_eq!(left, right);
    // the tensor of two associative products is associative
    let ab = tensor_structures(&p, &a, 2, &b, 2).unwrap();
    let d = 4;
    let coef = |i: usize, j: usize, o: usize| ab.column(0).get(flatten(&[d; 3], &[o, i, j]));
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                for o in 0..d {
                    let lhs: Q = (0..d).map(|m| coef(i, j, m) * coef(m, k, o)).sum();
                    let rhs: Q = (0..d).map(|m| coef(j, k, m) * coef(i, m, o)).sum();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}

fn cohom_matches_quadratic(p: &AlgebraOperad, a: &AlgebraPresentation, b: &AlgebraPresentation) {
    let (va, vb) = (PresentedPAlgebra::from_quadratic(p, a, 3).unwrap(), PresentedPAlgebra::from_quadratic(p, b, 3).unwrap());
    let (c, checks) = cohom_p_algebras(p, &va, &vb).unwrap();
    assert!(checks.passed(), "{checks:?}");
    let expected = cohom(a, b).unwrap().algebra;
    let words = c.algebra.free.word_map(p, 2).unwrap();
    assert_eq!(c.algebra.presentation.relations[&2], expected.relations.image(&words), "{}", a.to_text());
    assert_eq!(c.algebra.dims(), &expected.hilbert(3)[1..]);
}

#[test]
fn associative_cohom_matches_quadratic_engine() {
    let p = assoc_operad(small_caps());
    cohom_matches_quadratic(&p, &quantum_plane(q(1)), &quantum_plane(q(1)));
    cohom_matches_quadratic(&p, &quantum_plane(q(2)), &quantum_plane(q(1)).dual().unwrap());
    cohom_matches_quadratic(&p, &free_algebra(&["x", "y"], 2), &quantum_plane(q(3)));
}

#[test]
fn cohom_with_the_free_line_returns_the_first_argument() {
    let p = assoc_operad(small_caps());
    let v = PresentedPAlgebra::from_quadratic(&p, &quantum_plane(q(5)), 3).unwrap();
    let w = PresentedPAlgebra::new(&p, PAlgebraPresentation { generators: 1, relations: BTreeMap::new() }, 3).unwrap();
    let (c, checks) = cohom_p_algebras(&p, &v, &w).unwrap();
    assert!(checks.passed());
    assert_eq!(c.algebra.dims(), v.dims());
}

#[test]
fn commutative_one_generator_cohom_keeps_relation_degree() {
    let p = comm_operad(small_caps());
    let free = free_p_algebra(&p, 1, 3).unwrap();
    let square = |n: usize| BTreeMap::from([(n, opcohom::linalg::Subspace::full(free.algebra.dims[n]))]);
    let v = PresentedPAlgebra::new(&p, PAlgebraPresentation { generators: 1, relations: square(2) }, 3).unwrap();
    let line = PresentedPAlgebra::new(&p, PAlgebraPresentation { generators: 1, relations: BTreeMap::new() }, 3).unwrap();
    let truncated = PresentedPAlgebra::new(&p, PAlgebraPresentation { generators: 1, relations: square(2) }, 3).unwrap();
    let (c, checks) = cohom_p_algebras(&p, &v, &line).unwrap();
    assert!(checks.passed());
    assert_eq!(c.algebra.presentation.relations[&2].dim(), 1);
    assert_eq!(c.algebra.dims(), &[1, 0, 0]);
    let (c, checks) = cohom_p_algebras(&p, &v, &truncated).unwrap();
    assert!(checks.passed());
    assert_eq!(c.algebra.presentation.relations[&2].dim(), 0);
    assert_eq!(c.algebra.dims(), &[1, 1, 1]);
}

#[test]
fn classical_points_of_the_deformation_cohom_are_structures() {
    let caps = small_caps();
    let cat = Arc::new(ClassCatalog::new(GammaPreset::Ordinary, caps).unwrap());
    let ass = presented(associative(GammaPreset::Ordinary, caps).unwrap());
    let end1 = op_end(&FlavoredFamily::standard(GammaPreset::Ordinary, 1), cat.clone()).unwrap();
    let unit = opcohom::operad_cohom::unit_presented(cat).unwrap();
    for (s, c) in &end1.algebra.collection.components {
        assert_eq!(unit.algebra.dim(s), c.dim());
    }
    let e = opcohom::operad_cohom::cohom_operads(&ass, &unit).unwrap().operad;
    let points = p_algebra_structures(&e, &end1).unwrap();
    let structures = p_algebra_structures(&ass, &end1).unwrap();
    assert_eq!(points.num_params(), structures.num_params());
    for lambda in [-2, 0, 1, 3] {
        let x = vec![q(lambda); points.num_params()];
        assert!(points.is_structure(&x).unwrap());
        let phi = points.morphism(&x).unwrap();
        let y = structures.coordinates(&phi).expect("a point restricts to a generator map");
        assert!(structures.is_structure(&y).unwrap());
        assert_eq!(structures.morphism(&y).unwrap(), phi);
    }
}
