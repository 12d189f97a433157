//! Tensor-factor permutations and multi-index bookkeeping.

use super::map::LinearMap;
use super::svec::SVec;

/// Row-major flattening; the first factor is most significant.
pub fn flatten(dims: &[usize], idx: &[usize]) -> usize {
    idx.iter().zip(dims).fold(0, |acc, (&i, &d)| acc * d + i)
}

pub fn unflatten(dims: &[usize], mut k: usize) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for (slot, &d) in out.iter_mut().zip(dims).rev() {
        *slot = k % d;
        k /= d;
    }
    out
}

/// Iterates all multi-indices of the given shape in flattening order.
pub fn multi_indices(dims: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    let total: usize = dims.iter().product();
    (0..total).map(move |k| unflatten(dims, k))
}

/// Map `V_0 ⊗ … ⊗ V_{n-1} → V_{perm[0]} ⊗ … ⊗ V_{perm[n-1]}`: output factor `k` is input factor `perm[k]`.
pub fn factor_permutation(dims: &[usize], perm: &[usize]) -> LinearMap {
    let out_dims: Vec<usize> = perm.iter().map(|&p| dims[p]).collect();
    let cols = multi_indices(dims)
        .map(|idx| {
            let out: Vec<usize> = perm.iter().map(|&p| idx[p]).collect();
            SVec::unit(flatten(&out_dims, &out))
        })
        .collect();
    LinearMap::from_columns(dims.iter().product(), cols)
}

/// The middle-factor swap `V_0 ⊗ V_1 ⊗ V_2 ⊗ V_3 → V_0 ⊗ V_2 ⊗ V_1 ⊗ V_3`.
pub fn swap_middle(d0: usize, d1: usize, d2: usize, d3: usize) -> LinearMap {
    factor_permutation(&[d0, d1, d2, d3], &[0, 2, 1, 3])
}

/// `A^{⊗n} ⊗ B^{⊗n} → (A ⊗ B)^{⊗n}`.
pub fn interleave(da: usize, db: usize, n: usize) -> LinearMap {
    let mut dims = vec![da; n];
    dims.extend(std::iter::repeat(db).take(n));
    let perm: Vec<usize> = (0..n).flat_map(|i| [i, n + i]).collect();
    factor_permutation(&dims, &perm)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flatten_round_trip() {
        let dims = [2, 3, 4];
        for k in 0..24 {
            assert_eq!(flatten(&dims, &unflatten(&dims, k)), k);
        }
    }

    #[test]
    fn swap_middle_is_involution_for_square_shapes() {
        let s = swap_middle(2, 3, 3, 2);
        assert!(s.compose(&s).unwrap().is_identity());
        let t = swap_middle(2, 3, 5, 2);
        let back = swap_middle(2, 5, 3, 2);
        assert!(back.compose(&t).unwrap().is_identity());
    }
}
