//! Finite group actions given by generator matrices, and their coinvariants.

use super::map::LinearMap;
use super::scalar::Q;
use super::svec::SVec;
use super::subspace::Subspace;
use crate::error::{Error, Result};
use num_traits::{One, Zero};
use std::collections::{BTreeSet, VecDeque};

/// One-line permutation: `p[i]` is the image of `i`.
pub type Perm = Vec<usize>;

pub fn perm_identity(n: usize) -> Perm {
    (0..n).collect()
}

/// `(a ∘ b)(i) = a(b(i))`
pub fn perm_compose(a: &[usize], b: &[usize]) -> Perm {
    b.iter().map(|&i| a[i]).collect()
}

pub fn perm_inverse(a: &[usize]) -> Perm {
    let mut out = vec![0; a.len()];
    for (i, &j) in a.iter().enumerate() {
        out[j] = i;
    }
    out
}

pub fn is_perm(a: &[usize]) -> bool {
    let mut seen = vec![false; a.len()];
    a.iter().all(|&i| i < a.len() && !std::mem::replace(&mut seen[i], true))
}

/// Word `w` with `p = s_{w[0]} ∘ s_{w[1]} ∘ …`, where `s_i` swaps `i` and `i+1`.
pub fn adjacent_word(p: &[usize]) -> Vec<usize> {
    let mut a = p.to_vec();
    let mut swaps = Vec::new();
    let n = a.len();
    for pass in 0..n {
        let mut done = true;
        for i in 0..n.saturating_sub(1 + pass) {
            if a[i] > a[i + 1] {
                a.swap(i, i + 1);
                swaps.push(i);
                done = false;
            }
        }
        if done {
            break;
        }
    }
    swaps.reverse();
    swaps
}

/// Closure of a set of permutations under composition.
pub fn perm_group_closure(n: usize, gens: &[Perm]) -> Vec<Perm> {
    let id = perm_identity(n);
    let mut seen: BTreeSet<Perm> = BTreeSet::new();
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h = perm_compose(s, &g);
            if seen.insert(h.clone()) {
                queue.push_back(h);
            }
        }
    }
    seen.into_iter().collect()
}

/// Action of a finitely presented group: generator matrices and relator words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAction {
    pub dim: usize,
    pub generators: Vec<LinearMap>,
    pub relations: Vec<Vec<usize>>,
}

impl GroupAction {
    pub fn trivial(dim: usize, ngens: usize, relations: Vec<Vec<usize>>) -> Self {
        GroupAction { dim, generators: vec![LinearMap::identity(dim); ngens], relations }
    }

    pub fn word(&self, w: &[usize]) -> LinearMap {
        let mut acc = LinearMap::identity(self.dim);
        for &g in w {
            acc = acc.compose(&self.generators[g]).expect("square generators");
        }
        acc
    }

    /// Every relator must act as the identity.
    pub fn check_relations(&self) -> Result<()> {
        for g in &self.generators {
            if g.nrows() != self.dim || g.ncols() != self.dim {
                return Err(Error::Dimension(format!("generator is {}x{}, expected {}x{}", g.nrows(), g.ncols(), self.dim, self.dim)));
            }
        }
        for (k, r) in self.relations.iter().enumerate() {
            if !self.word(r).is_identity() {
                return Err(Error::InvalidInput(format!("relator {k} {r:?} does not act trivially")));
            }
        }
        Ok(())
    }

    /// All distinct matrices in the image of the group, capped at `cap` elements.
    pub fn elements(&self, cap: usize) -> Result<Vec<LinearMap>> {
        let id = LinearMap::identity(self.dim);
        let mut seen: BTreeSet<LinearMap> = BTreeSet::new();
        seen.insert(id.clone());
        let mut queue = VecDeque::from([id]);
        while let Some(g) = queue.pop_front() {
            for s in &self.generators {
                let h = s.compose(&g)?;
                if seen.insert(h.clone()) {
                    if seen.len() > cap {
                        return Err(Error::CapExceeded(format!("group image exceeds {cap} elements")));
                    }
                    queue.push_back(h);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    pub fn coinvariants(&self) -> Result<Coinvariants> {
        if self.generators.iter().all(LinearMap::is_identity) {
            return Ok(Coinvariants::identity(self.dim));
        }
        Ok(Coinvariants::from_elements(self.dim, &self.elements(100_000)?))
    }

    /// Tensor product action with the same generator list.
    pub fn tensor(&self, other: &GroupAction) -> GroupAction {
        GroupAction {
            dim: self.dim * other.dim,
            generators: self.generators.iter().zip(&other.generators).map(|(a, b)| a.kron(b)).collect(),
            relations: self.relations.clone(),
        }
    }

    /// Contragredient action, valid when every generator is an involution.
    pub fn dual_of_involutions(&self) -> GroupAction {
        GroupAction {
            dim: self.dim,
            generators: self.generators.iter().map(LinearMap::transpose).collect(),
            relations: self.relations.clone(),
        }
    }
}

/// `V_G` with projection `V → V_G` and a section `V_G → V` of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coinvariants {
    pub dim: usize,
    pub projection: LinearMap,
    pub section: LinearMap,
}

impl Coinvariants {
    pub fn identity(n: usize) -> Self {
        Coinvariants { dim: n, projection: LinearMap::identity(n), section: LinearMap::identity(n) }
    }

    /// Averaging projector `P = |G|⁻¹ Σ g`; `V_G ≅ im P` with coordinates read at RREF pivots.
    pub fn from_elements(n: usize, elements: &[LinearMap]) -> Self {
        if elements.len() <= 1 {
            return Coinvariants::identity(n);
        }
        let p = symmetrizer(n, elements);
        let image = p.image();
        let pivots = image.pivots();
        let rows = p.rows_sparse();
        let proj_rows: Vec<SVec> = pivots.iter().map(|&k| rows[k].clone()).collect();
        Coinvariants {
            dim: pivots.len(),
            projection: LinearMap::from_rows(n, &proj_rows),
            section: image.inclusion(),
        }
    }
}

pub fn symmetrizer(n: usize, elements: &[LinearMap]) -> LinearMap {
    let mut acc = LinearMap::zero(n, n);
    for g in elements {
        acc = acc.add(g);
    }
    acc.scale(&(Q::one() / Q::from_integer((elements.len() as i64).into())))
}

/// Basis of `Hom_G(src, tgt)` for two actions on the same generator list.
pub fn equivariant_maps(src: &GroupAction, tgt: &GroupAction) -> Vec<LinearMap> {
    let (m, n) = (tgt.dim, src.dim);
    let idx = |i: usize, j: usize| i * n + j;
    let mut eqs: Vec<SVec> = Vec::new();
    for (a, b) in src.generators.iter().zip(&tgt.generators) {
        let (ad, bd) = (a.to_dense(), b.to_dense());
        for i in 0..m {
            for j in 0..n {
                let mut pairs = Vec::new();
                for k in 0..n {
                    if !ad[k][j].is_zero() {
                        pairs.push((idx(i, k), ad[k][j].clone()));
                    }
                }
                for k in 0..m {
                    if !bd[i][k].is_zero() {
                        pairs.push((idx(k, j), -bd[i][k].clone()));
                    }
                }
                let e = SVec::from_pairs(pairs);
                if !e.is_zero() {
                    eqs.push(e);
                }
            }
        }
    }
    let sol = Subspace::span(m * n, eqs).annihilator();
    sol.basis()
        .map(|v| {
            let rows: Vec<SVec> = (0..m)
                .map(|i| SVec::from_pairs((0..n).map(|j| (j, v.get(idx(i, j))))))
                .collect();
            LinearMap::from_rows(n, &rows)
        })
        .collect()
}

/// Matrix of `Σ_k coeffs[k] · basis[k]`.
pub fn combine(basis: &[LinearMap], coeffs: &[Q], rows: usize, cols: usize) -> LinearMap {
    let mut acc = LinearMap::zero(rows, cols);
    for (b, c) in basis.iter().zip(coeffs) {
        acc = acc.add(&b.scale(c));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::q;

    fn swap_action() -> GroupAction {
        GroupAction { dim: 2, generators: vec![LinearMap::permutation(&[1, 0])], relations: vec![vec![0, 0]] }
    }

    #[test]
    fn adjacent_word_reconstructs_permutation() {
        for p in [vec![2, 0, 1], vec![3, 1, 0, 2], vec![0, 1], vec![1, 0, 3, 2]] {
            let mut acc = perm_identity(p.len());
            for &i in &adjacent_word(&p) {
                let mut s = perm_identity(p.len());
                s.swap(i, i + 1);
                acc = perm_compose(&acc, &s);
            }
            assert_eq!(acc, p);
        }
    }

    #[test]
    fn swap_coinvariants_are_one_dimensional() {
        let c = swap_action().coinvariants().unwrap();
        assert_eq!(c.dim, 1);
        assert!(c.projection.compose(&c.section).unwrap().is_identity());
        let g = LinearMap::permutation(&[1, 0]);
        assert_eq!(c.projection.compose(&g).unwrap(), c.projection);
    }

    #[test]
    fn equivariant_maps_of_regular_swap() {
        let a = swap_action();
        let basis = equivariant_maps(&a, &a);
        assert_eq!(basis.len(), 2);
        let triv = GroupAction::trivial(1, 1, vec![vec![0, 0]]);
        assert_eq!(equivariant_maps(&a, &triv).len(), 1);
        let sign = GroupAction { dim: 1, generators: vec![LinearMap::identity(1).scale(&q(-1))], relations: vec![vec![0, 0]] };
        assert_eq!(equivariant_maps(&triv, &sign).len(), 0);
        assert_eq!(perm_group_closure(3, &[vec![1, 0, 2], vec![0, 2, 1]]).len(), 6);
    }
}
