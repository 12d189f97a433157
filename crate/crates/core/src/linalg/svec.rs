//! Sparse coordinate vectors with strictly increasing indices and no stored zeros.

use super::scalar::Q;
use num_traits::Zero;
use std::collections::BTreeMap;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SVec(Vec<(usize, Q)>);

impl SVec {
    pub fn new() -> Self {
        SVec(Vec::new())
    }

    pub fn unit(i: usize) -> Self {
        SVec(vec![(i, num_traits::One::one())])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, Q)>) -> Self {
        let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
        for (i, x) in pairs {
            *acc.entry(i).or_insert_with(Q::zero) += x;
        }
        SVec(acc.into_iter().filter(|(_, x)| !x.is_zero()).collect())
    }

    pub fn from_dense(v: &[Q]) -> Self {
        SVec(v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect())
    }

    pub fn to_dense(&self, n: usize) -> Vec<Q> {
        let mut out = vec![Q::zero(); n];
        for (i, x) in &self.0 {
            out[*i] = x.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, Q)] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<(usize, Q)> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, i: usize) -> Q {
        match self.0.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(k) => self.0[k].1.clone(),
            Err(_) => Q::zero(),
        }
    }

    pub fn leading(&self) -> Option<usize> {
        self.0.first().map(|(i, _)| *i)
    }

    pub fn max_index(&self) -> Option<usize> {
        self.0.last().map(|(i, _)| *i)
    }

    pub fn scale(&self, c: &Q) -> SVec {
        if c.is_zero() {
            return SVec::new();
        }
        SVec(self.0.iter().map(|(i, x)| (*i, x * c)).collect())
    }

    /// `self + c * other`
    pub fn add_scaled(&self, other: &SVec, c: &Q) -> SVec {
        if c.is_zero() {
            return self.clone();
        }
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i >= a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0, &b[j].1 * c));
                j += 1;
            } else {
                let s = &a[i].1 + &b[j].1 * c;
                if !s.is_zero() {
                    out.push((a[i].0, s));
                }
                i += 1;
                j += 1;
            }
        }
        SVec(out)
    }

    pub fn add(&self, other: &SVec) -> SVec {
        self.add_scaled(other, &num_traits::One::one())
    }

    pub fn sub(&self, other: &SVec) -> SVec {
        self.add_scaled(other, &-Q::from_integer(1.into()))
    }

    pub fn dot(&self, other: &SVec) -> Q {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        let mut s = Q::zero();
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    s += &a[i].1 * &b[j].1;
                    i += 1;
                    j += 1;
                }
            }
        }
        s
    }

    pub fn map_indices(&self, f: impl Fn(usize) -> usize) -> SVec {
        SVec::from_pairs(self.0.iter().map(|(i, x)| (f(*i), x.clone())))
    }
}

/// Accumulator for building sparse vectors from many scattered contributions.
#[derive(Default)]
pub struct Accum(BTreeMap<usize, Q>);

impl Accum {
    pub fn new() -> Self {
        Accum(BTreeMap::new())
    }

    pub fn add(&mut self, i: usize, x: Q) {
        if x.is_zero() {
            return;
        }
        match self.0.entry(i) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(x);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += x;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_vec(&mut self, v: &SVec, c: &Q) {
        for (i, x) in v.entries() {
            self.add(*i, x * c);
        }
    }

    pub fn finish(self) -> SVec {
        SVec(self.0.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::q;

    #[test]
    fn merge_arithmetic() {
        let a = SVec::from_pairs([(0, q(1)), (3, q(2))]);
        let b = SVec::from_pairs([(3, q(1)), (5, q(4))]);
        let c = a.add_scaled(&b, &q(-2));
        assert_eq!(c, SVec::from_pairs([(0, q(1)), (5, q(-8))]));
        assert_eq!(a.dot(&b), q(2));
        assert_eq!(c.get(3), q(0));
        assert_eq!(SVec::from_pairs([(1, q(1)), (1, q(-1))]), SVec::new());
    }
}
