//! The two-level product of collections over directed graphs.

use super::{ClassCatalog, Decorated, FreeOperad, TruncTensor};
use crate::collections::Collection;
use crate::error::{Error, Result};
use crate::graph::VertexId;
use crate::labeling::{two_level_partition, Signature};
use crate::linalg::{Coinvariants, LinearMap};
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct TwoLevelSummand {
    pub class: usize,
    pub lower_level: Vec<VertexId>,
    pub upper_level: Vec<VertexId>,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct TwoLevelComponent {
    pub sig: Signature,
    pub dim: usize,
    pub summands: Vec<TwoLevelSummand>,
}

/// `(upper ⊠ lower)(σ)`: coinvariants over two-level graphs above `σ`, lower-level vertices
/// decorated by `lower` and upper-level ones by `upper`.
pub fn two_level_product(catalog: &Arc<ClassCatalog>, upper: &Collection, lower: &Collection, sig: &Signature) -> Result<TwoLevelComponent> {
    let preset = catalog.preset;
    if !preset.oriented() {
        return Err(Error::InvalidInput(format!("the two-level product needs a directed preset, not {preset}")));
    }
    if upper.preset != preset || lower.preset != preset {
        return Err(Error::InvalidInput("collections and catalog use different presets".into()));
    }
    let host = FreeOperad { catalog: catalog.clone(), gens: lower.clone(), components: BTreeMap::new(), rho: super::rho_table(lower) };
    let mut summands = Vec::new();
    for (ci, class) in catalog.classes(sig).iter().enumerate() {
        let Some((v1, v2)) = two_level_partition(&class.graph) else { continue };
        let colls: Vec<&Collection> = (0..class.weight() as VertexId).map(|v| if v1.contains(&v) { lower } else { upper }).collect();
        let dims: Vec<usize> = colls.iter().zip(&class.vertex_sigs).map(|(c, s)| c.dim(s)).collect();
        if dims.contains(&0) {
            continue;
        }
        let ones: Vec<Vec<usize>> = dims.iter().map(|&d| vec![0; d]).collect();
        let w: Vec<&[usize]> = ones.iter().map(Vec::as_slice).collect();
        let tensor = TruncTensor::new(&w, 0);
        let dec = Decorated { sigs: &class.vertex_sigs, orders: &class.std_orders, collections: colls };
        let mats: Vec<LinearMap> = class
            .automorphisms
            .iter()
            .map(|(fm, vm)| host.transport(&dec, &tensor, &|f| fm[f as usize], &|v| vm[v as usize], class, &tensor))
            .collect::<Result<_>>()?;
        let coinv = Coinvariants::from_elements(tensor.len(), &mats);
        summands.push(TwoLevelSummand { class: ci, lower_level: v1, upper_level: v2, dim: coinv.dim });
    }
    Ok(TwoLevelComponent { sig: *sig, dim: summands.iter().map(|s| s.dim).sum(), summands })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::collections::standard::binary_symmetric;
    use crate::collections::Component;
    use crate::labeling::{Caps, GammaPreset};

    fn catalog(preset: GammaPreset) -> Arc<ClassCatalog> {
        Arc::new(ClassCatalog::new(preset, Caps { max_arity: 4, max_weight: 3, max_genus: 0 }).unwrap())
    }

    #[test]
    fn ordinary_binary_levels_pair_up_leaves() {
        let cat = catalog(GammaPreset::Ordinary);
        let e = binary_symmetric(GammaPreset::Ordinary);
        // one root fed by two binary vertices: unordered pairs of unordered pairs of 4 leaves
        assert_eq!(two_level_product(&cat, &e, &e, &Signature::new(0, 1, 4)).unwrap().dim, 3);
        for n in 2..=3 {
            assert_eq!(two_level_product(&cat, &e, &e, &Signature::new(0, 1, n)).unwrap().dim, 0);
        }
    }

    #[test]
    fn dioperad_single_edge_is_a_product_of_dims() {
        let p = GammaPreset::Dioperad;
        let cat = catalog(p);
        let (split, join) = (Signature::new(0, 2, 1), Signature::new(0, 1, 2));
        let lower = Collection::empty(p).with_component(join, Component::trivial(p, join, 2, 1)).unwrap();
        let upper = Collection::empty(p).with_component(split, Component::trivial(p, split, 3, 1)).unwrap();
        let c = two_level_product(&cat, &upper, &lower, &Signature::new(0, 2, 2)).unwrap();
        assert_eq!(c.dim, 6);
        assert_eq!(c.summands.len(), 1);
        assert_eq!(two_level_product(&cat, &lower, &upper, &Signature::new(0, 2, 2)).unwrap().dim, 0);
    }

    #[test]
    fn agrees_with_two_level_part_of_free_operad() {
        let p = GammaPreset::Dioperad;
        let cat = catalog(p);
        let e = crate::collections::standard::random_collection(p, &[Signature::new(0, 1, 2), Signature::new(0, 2, 1), Signature::new(0, 1, 1)], 2, &mut <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(7));
        let fe = FreeOperad::new(cat.clone(), &e).unwrap();
        for (sig, comp) in &fe.components {
            let classes = cat.classes(sig);
            let expected: usize = comp.summands.iter().filter(|s| two_level_partition(&classes[s.class].graph).is_some()).map(|s| s.dim()).sum();
            assert_eq!(two_level_product(&cat, &e, &e, sig).unwrap().dim, expected, "{sig}");
        }
    }

    #[test]
    fn unoriented_presets_are_rejected() {
        let cat = Arc::new(ClassCatalog::new(GammaPreset::Cyclic, Caps::default()).unwrap());
        let e = Collection::empty(GammaPreset::Cyclic);
        assert!(two_level_product(&cat, &e, &e, &Signature::new(0, 0, 3)).is_err());
    }
}
