//! Subspaces of `Q^n` held in reduced row echelon form, so equal subspaces are equal values.

use super::scalar::Q;
use super::svec::{Accum, SVec};
use super::map::LinearMap;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Invariant: each row has coefficient 1 at its pivot and 0 at every other pivot.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    rows: BTreeMap<usize, SVec>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, rows: BTreeMap::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, rows: (0..ambient).map(|i| (i, SVec::unit(i))).collect() }
    }

    pub fn span(ambient: usize, vecs: impl IntoIterator<Item = SVec>) -> Self {
        let mut s = Subspace::zero(ambient);
        for v in vecs {
            s.insert(v);
        }
        s
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn codim(&self) -> usize {
        self.ambient - self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn basis(&self) -> impl Iterator<Item = &SVec> {
        self.rows.values()
    }

    pub fn basis_vec(&self) -> Vec<SVec> {
        self.rows.values().cloned().collect()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.keys().copied().collect()
    }

    /// Normal form of `v` modulo the subspace: zero at every pivot column.
    pub fn reduce(&self, v: &SVec) -> SVec {
        let mut acc = Accum::new();
        acc.add_vec(v, &Q::one());
        for (p, x) in v.entries() {
            if let Some(r) = self.rows.get(p) {
                acc.add_vec(r, &-x.clone());
            }
        }
        acc.finish()
    }

    pub fn contains(&self, v: &SVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Returns whether the span grew.
    pub fn insert(&mut self, v: SVec) -> bool {
        debug_assert!(v.max_index().map_or(true, |m| m < self.ambient));
        let r = self.reduce(&v);
        let Some(p) = r.leading() else { return false };
        let lead = r.get(p);
        let r = r.scale(&(Q::one() / lead));
        for row in self.rows.values_mut() {
            let c = row.get(p);
            if !c.is_zero() {
                *row = row.add_scaled(&r, &-c);
            }
        }
        self.rows.insert(p, r);
        true
    }

    pub fn extend(&mut self, vecs: impl IntoIterator<Item = SVec>) -> bool {
        let mut grew = false;
        for v in vecs {
            grew |= self.insert(v);
        }
        grew
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut s = self.clone();
        s.extend(other.basis().cloned());
        s
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        self.annihilator().sum(&other.annihilator()).annihilator()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis().all(|v| other.contains(v))
    }

    /// Annihilator in the dual space, written in the dual basis.
    pub fn annihilator(&self) -> Subspace {
        let vecs = self.free_columns().into_iter().map(|f| {
            let mut pairs = vec![(f, Q::one())];
            for (p, row) in &self.rows {
                let c = row.get(f);
                if !c.is_zero() {
                    pairs.push((*p, -c));
                }
            }
            SVec::from_pairs(pairs)
        });
        Subspace::span(self.ambient, vecs.collect::<Vec<_>>())
    }

    /// Non-pivot columns, which index a basis of the quotient.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ambient).filter(|i| !self.rows.contains_key(i)).collect()
    }

    /// Quotient projection `Q^n → Q^n / S` in the basis of free columns.
    pub fn quotient_map(&self) -> LinearMap {
        let free = self.free_columns();
        let pos: BTreeMap<usize, usize> = free.iter().enumerate().map(|(k, &f)| (f, k)).collect();
        let cols = (0..self.ambient)
            .map(|i| {
                let r = self.reduce(&SVec::unit(i));
                SVec::from_pairs(r.entries().iter().map(|(j, x)| (pos[j], x.clone())))
            })
            .collect();
        LinearMap::from_columns(free.len(), cols)
    }

    /// Section of `quotient_map` sending quotient basis `k` to the unit vector at free column `k`.
    pub fn quotient_section(&self) -> LinearMap {
        let free = self.free_columns();
        LinearMap::from_columns(self.ambient, free.into_iter().map(SVec::unit).collect())
    }

    pub fn image(&self, f: &LinearMap) -> Subspace {
        Subspace::span(f.nrows(), self.basis().map(|v| f.apply(v)))
    }

    /// Inclusion map `Q^dim → Q^n` onto the echelon basis.
    pub fn inclusion(&self) -> LinearMap {
        LinearMap::from_columns(self.ambient, self.basis_vec())
    }

    /// Coordinates of `v ∈ S` in the echelon basis; `None` if `v ∉ S`.
    pub fn coordinates(&self, v: &SVec) -> Option<SVec> {
        if !self.contains(v) {
            return None;
        }
        Some(SVec::from_pairs(
            self.rows.keys().enumerate().map(|(k, p)| (k, v.get(*p))),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::q;

    fn v(xs: &[i64]) -> SVec {
        SVec::from_dense(&xs.iter().map(|&x| q(x)).collect::<Vec<_>>())
    }

    #[test]
    fn canonical_form_is_basis_independent() {
        let a = Subspace::span(3, [v(&[1, 2, 0]), v(&[0, 1, 1])]);
        let b = Subspace::span(3, [v(&[1, 3, 1]), v(&[2, 3, -1])]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn annihilator_pairs_to_zero() {
        let a = Subspace::span(4, [v(&[1, 2, 0, 3]), v(&[0, 1, 1, 1])]);
        let ann = a.annihilator();
        assert_eq!(ann.dim(), 2);
        for x in a.basis() {
            for y in ann.basis() {
                assert!(x.dot(y).is_zero());
            }
        }
        assert_eq!(ann.annihilator(), a);
    }

    #[test]
    fn quotient_map_and_section() {
        let a = Subspace::span(3, [v(&[1, 1, 0])]);
        let p = a.quotient_map();
        let s = a.quotient_section();
        assert!(p.compose(&s).unwrap().is_identity());
        assert!(p.apply(&v(&[1, 1, 0])).is_zero());
        assert_eq!(a.intersection(&Subspace::span(3, [v(&[2, 2, 0]), v(&[0, 0, 1])])), a);
    }
}
