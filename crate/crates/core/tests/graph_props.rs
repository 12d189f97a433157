use opcohom::graph::canon::graph_canonical;
use opcohom::graph::morphism::{assemble_with, compose, GraphMorphism};
use opcohom::graph::random::{random_graph, random_morphism};
use opcohom::graph::Graph;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

fn random_iso(rng: &mut ChaCha8Rng, g: &Graph, base: u32) -> GraphMorphism {
    let mut fs = g.flags.clone();
    fs.shuffle(rng);
    let mut vs = g.vertices.clone();
    vs.shuffle(rng);
    let fmap: BTreeMap<u32, u32> = fs.iter().enumerate().map(|(i, &f)| (f, base + i as u32)).collect();
    let vmap: BTreeMap<u32, u32> = vs.iter().enumerate().map(|(i, &v)| (v, base + i as u32)).collect();
    let target = g.relabel(&|f| fmap[&f], &|v| vmap[&v]);
    GraphMorphism {
        source: g.clone(),
        target,
        flag_map: fmap.iter().map(|(&a, &b)| (b, a)).collect(),
        vertex_map: vmap,
        virtual_involution: BTreeMap::new(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn composition_is_associative(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tau = random_graph(&mut rng, 8, 4);
        let f = random_morphism(&mut rng, &tau, 100);
        let g = random_morphism(&mut rng, &f.target, 200);
        let h = random_morphism(&mut rng, &g.target, 300);
        let left = compose(&compose(&h, &g).unwrap(), &f).unwrap();
        let right = compose(&h, &compose(&g, &f).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn decomposition_recomposes(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tau = random_graph(&mut rng, 8, 4);
        let h = random_morphism(&mut rng, &tau, 100);
        let d = h.decompose();
        use opcohom::graph::MorphismClass::*;
        let tagged = [
            (&d.virtual_contraction, vec![VirtualContraction]),
            (&d.contraction, vec![Contraction, FullContraction]),
            (&d.grafting, vec![Grafting, TotalGrafting]),
            (&d.merger, vec![Merger, FullMerger]),
        ];
        for (factor, classes) in tagged {
            prop_assert!(factor.is_valid(), "{:?}", factor.validate());
            let c = factor.classify();
            prop_assert!(c == Isomorphism || classes.contains(&c), "factor classified as {}", c);
        }
        prop_assert_eq!(d.recompose().unwrap(), h);
    }

    #[test]
    fn atomization_round_trips(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tau = random_graph(&mut rng, 8, 4);
        let h = random_morphism(&mut rng, &tau, 100);
        let at = h.atomize();
        prop_assert!(at.commutes().unwrap());
        for (_, p) in &at.parts {
            prop_assert!(p.is_valid(), "{:?}", p.validate());
        }
        let back = assemble_with(&h.target, &at.parts, &at.grafted).unwrap();
        prop_assert_eq!(&back, &h);
        prop_assert_eq!(back.atomize(), at);
    }

    #[test]
    fn classification_ignores_isomorphisms(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tau = random_graph(&mut rng, 6, 4);
        let h = random_morphism(&mut rng, &tau, 100);
        let pre = random_iso(&mut rng, &tau, 500);
        let pre_inv = GraphMorphism {
            source: pre.target.clone(),
            target: pre.source.clone(),
            flag_map: pre.flag_map.iter().map(|(&a, &b)| (b, a)).collect(),
            vertex_map: pre.vertex_map.iter().map(|(&a, &b)| (b, a)).collect(),
            virtual_involution: BTreeMap::new(),
        };
        let post = random_iso(&mut rng, &h.target, 900);
        let twisted = compose(&post, &compose(&h, &pre_inv).unwrap()).unwrap();
        prop_assert_eq!(twisted.classify(), h.classify());
    }

    #[test]
    fn invariants_and_keys_are_isomorphism_invariant(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, 7, 4);
        let iso = random_iso(&mut rng, &g, 40);
        prop_assert_eq!(g.invariants(), iso.target.invariants());
        let (ka, ca) = graph_canonical(&g).unwrap();
        let (kb, cb) = graph_canonical(&iso.target).unwrap();
        prop_assert_eq!(ka, kb);
        prop_assert_eq!(ca, cb);
    }

    #[test]
    fn genus_formula_forms_agree(seed in any::<u64>(), genera in proptest::collection::vec(0i64..3, 8)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, 8, 4);
        for comp in g.components() {
            let vs = comp.iter().copied().collect();
            let sub = g.induced(&vs);
            let inv = sub.invariants();
            let gsum: i64 = comp.iter().map(|&v| genera[v as usize]).sum();
            let alt: i64 = comp.iter().map(|&v| genera[v as usize] - 1).sum::<i64>() + inv.edges as i64 + 1;
            prop_assert_eq!(gsum + inv.first_betti, alt);
        }
    }
}
