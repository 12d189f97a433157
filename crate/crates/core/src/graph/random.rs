//! Seeded generators of random graphs and valid morphisms.

use super::morphism::GraphMorphism;
use super::{FlagId, Graph, UnionFind, VertexId};
use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::{BTreeMap, BTreeSet};

pub fn random_graph<R: Rng>(rng: &mut R, max_vertices: usize, max_valence: usize) -> Graph {
    let nv = rng.gen_range(1..=max_vertices);
    let mut vertex_of = Vec::new();
    for v in 0..nv {
        for _ in 0..rng.gen_range(0..=max_valence) {
            vertex_of.push(v as u32);
        }
    }
    let n = vertex_of.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut partner: Vec<u32> = (0..n as u32).collect();
    let mut i = 0;
    while i + 1 < order.len() {
        if rng.gen_bool(0.6) {
            partner[order[i]] = order[i + 1] as u32;
            partner[order[i + 1]] = order[i] as u32;
            i += 2;
        } else {
            i += 1;
        }
    }
    Graph::from_lists(nv as u32, &vertex_of, &partner)
}

/// A random valid morphism out of `tau`: contracts, virtually pairs, grafts and merges at random,
/// then renames target ids starting at `id_base`.
pub fn random_morphism<R: Rng>(rng: &mut R, tau: &Graph, id_base: u32) -> GraphMorphism {
    let mut contracted: BTreeSet<FlagId> = BTreeSet::new();
    for (a, b) in tau.edges() {
        if rng.gen_bool(0.35) {
            contracted.insert(a);
            contracted.insert(b);
        }
    }
    let mut tails = tau.tails();
    tails.shuffle(rng);
    let mut virtual_involution = BTreeMap::new();
    let mut grafts: Vec<(FlagId, FlagId)> = Vec::new();
    let mut i = 0;
    while i + 1 < tails.len() {
        let x: f64 = rng.gen();
        if x < 0.2 {
            let (a, b) = (tails[i], tails[i + 1]);
            virtual_involution.insert(a, b);
            virtual_involution.insert(b, a);
            contracted.insert(a);
            contracted.insert(b);
            i += 2;
        } else if x < 0.4 {
            grafts.push((tails[i], tails[i + 1]));
            i += 2;
        } else {
            i += 1;
        }
    }
    let idx: BTreeMap<VertexId, usize> = tau.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut uf = UnionFind::new(tau.vertices.len());
    for &f in &contracted {
        let g = if tau.is_tail(f) { virtual_involution[&f] } else { tau.j(f) };
        uf.union(idx[&tau.vertex(f)], idx[&tau.vertex(g)]);
    }
    for _ in 0..rng.gen_range(0..=1) {
        if tau.vertices.len() > 1 {
            let a = rng.gen_range(0..tau.vertices.len());
            let b = rng.gen_range(0..tau.vertices.len());
            uf.union(a, b);
        }
    }
    let mut roots: Vec<usize> = (0..tau.vertices.len()).map(|i| uf.find(i)).collect::<BTreeSet<_>>().into_iter().collect();
    roots.shuffle(rng);
    let vname: BTreeMap<usize, VertexId> = roots.iter().enumerate().map(|(k, &r)| (r, id_base + k as u32)).collect();
    let vertex_map: BTreeMap<VertexId, VertexId> =
        tau.vertices.iter().map(|&v| (v, vname[&uf.find(idx[&v])])).collect();
    let mut kept: Vec<FlagId> = tau.flags.iter().copied().filter(|f| !contracted.contains(f)).collect();
    kept.shuffle(rng);
    let fname: BTreeMap<FlagId, FlagId> = kept.iter().enumerate().map(|(k, &f)| (f, id_base + k as u32)).collect();
    let mut sigma_j: BTreeMap<FlagId, FlagId> = BTreeMap::new();
    for &f in &kept {
        sigma_j.insert(fname[&f], fname[&tau.j(f)]);
    }
    for &(a, b) in &grafts {
        sigma_j.insert(fname[&a], fname[&b]);
        sigma_j.insert(fname[&b], fname[&a]);
    }
    let mut sflags: Vec<FlagId> = fname.values().copied().collect();
    sflags.sort_unstable();
    let mut sverts: Vec<VertexId> = vname.values().copied().collect();
    sverts.sort_unstable();
    let sigma = Graph {
        boundary: kept.iter().map(|&f| (fname[&f], vertex_map[&tau.vertex(f)])).collect(),
        involution: sigma_j,
        flags: sflags,
        vertices: sverts,
    };
    GraphMorphism {
        source: tau.clone(),
        target: sigma,
        flag_map: fname.iter().map(|(&t, &s)| (s, t)).collect(),
        vertex_map,
        virtual_involution,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_morphisms_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let g = random_graph(&mut rng, 6, 4);
            assert!(g.validate().is_valid());
            let h = random_morphism(&mut rng, &g, 100);
            assert!(h.is_valid(), "{:?}", h.validate());
        }
    }
}
