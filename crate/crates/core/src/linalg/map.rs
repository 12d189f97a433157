//! Linear maps stored column-sparse: column `j` is the image of basis vector `j`.

use super::scalar::{format_q, parse_q, Q};
use super::svec::{Accum, SVec};
use crate::error::{Error, Result};
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearMap {
    rows: usize,
    cols: Vec<SVec>,
}

impl LinearMap {
    pub fn zero(rows: usize, cols: usize) -> Self {
        LinearMap { rows, cols: vec![SVec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        LinearMap { rows: n, cols: (0..n).map(SVec::unit).collect() }
    }

    pub fn from_columns(rows: usize, cols: Vec<SVec>) -> Self {
        debug_assert!(cols.iter().all(|c| c.max_index().map_or(true, |m| m < rows)));
        LinearMap { rows, cols }
    }

    pub fn from_rows(cols: usize, rows: &[SVec]) -> Self {
        let mut acc: Vec<Vec<(usize, Q)>> = vec![Vec::new(); cols];
        for (i, r) in rows.iter().enumerate() {
            for (j, x) in r.entries() {
                acc[*j].push((i, x.clone()));
            }
        }
        LinearMap { rows: rows.len(), cols: acc.into_iter().map(SVec::from_pairs).collect() }
    }

    pub fn from_dense(rows: &[Vec<Q>], ncols: usize) -> Self {
        let sv: Vec<SVec> = rows.iter().map(|r| SVec::from_dense(r)).collect();
        Self::from_rows(ncols, &sv)
    }

    /// Permutation matrix sending basis vector `j` to `perm[j]`.
    pub fn permutation(perm: &[usize]) -> Self {
        LinearMap { rows: perm.len(), cols: perm.iter().map(|&i| SVec::unit(i)).collect() }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &SVec {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SVec] {
        &self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Q {
        self.cols[j].get(i)
    }

    pub fn apply(&self, v: &SVec) -> SVec {
        let mut acc = Accum::new();
        for (j, x) in v.entries() {
            acc.add_vec(&self.cols[*j], x);
        }
        acc.finish()
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &LinearMap) -> Result<LinearMap> {
        if other.rows != self.ncols() {
            return Err(Error::Dimension(format!(
                "cannot compose {}x{} after {}x{}",
                self.rows,
                self.ncols(),
                other.rows,
                other.ncols()
            )));
        }
        Ok(LinearMap { rows: self.rows, cols: other.cols.iter().map(|c| self.apply(c)).collect() })
    }

    pub fn transpose(&self) -> LinearMap {
        LinearMap::from_rows(self.rows, &self.cols)
    }

    pub fn rows_sparse(&self) -> Vec<SVec> {
        self.transpose().cols
    }

    pub fn add(&self, other: &LinearMap) -> LinearMap {
        assert_eq!((self.rows, self.ncols()), (other.rows, other.ncols()));
        LinearMap { rows: self.rows, cols: self.cols.iter().zip(&other.cols).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn scale(&self, c: &Q) -> LinearMap {
        LinearMap { rows: self.rows, cols: self.cols.iter().map(|a| a.scale(c)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.ncols() && self.cols.iter().enumerate().all(|(j, c)| *c == SVec::unit(j))
    }

    /// Kronecker product; basis index of `a ⊗ b` is `i * dim_b + j`.
    pub fn kron(&self, other: &LinearMap) -> LinearMap {
        let (ra, rb) = (self.rows, other.rows);
        let mut cols = Vec::with_capacity(self.ncols() * other.ncols());
        for ca in &self.cols {
            for cb in &other.cols {
                let mut pairs = Vec::with_capacity(ca.nnz() * cb.nnz());
                for (i, x) in ca.entries() {
                    for (j, y) in cb.entries() {
                        pairs.push((i * rb + j, x * y));
                    }
                }
                cols.push(SVec::from_pairs(pairs));
            }
        }
        LinearMap { rows: ra * rb, cols }
    }

    pub fn to_dense(&self) -> Vec<Vec<Q>> {
        let mut out = vec![vec![Q::zero(); self.ncols()]; self.rows];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, x) in c.entries() {
                out[*i][j] = x.clone();
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.to_dense()
                .into_iter()
                .map(|r| serde_json::Value::Array(r.iter().map(|x| serde_json::Value::String(format_q(x))).collect()))
                .collect(),
        )
    }

    /// Rows of `"p/q"` strings; `ncols` disambiguates the empty matrix.
    pub fn from_json(v: &serde_json::Value, ncols: usize) -> Result<LinearMap> {
        let rows = v.as_array().ok_or_else(|| Error::Parse("matrix must be an array of rows".into()))?;
        let mut dense = Vec::with_capacity(rows.len());
        for r in rows {
            let r = r.as_array().ok_or_else(|| Error::Parse("matrix row must be an array".into()))?;
            if r.len() != ncols {
                return Err(Error::Parse(format!("matrix row has {} entries, expected {}", r.len(), ncols)));
            }
            let mut row = Vec::with_capacity(ncols);
            for x in r {
                let parsed = match x {
                    serde_json::Value::String(s) => parse_q(s),
                    serde_json::Value::Number(n) => n.as_i64().map(|i| Q::from_integer(i.into())),
                    _ => None,
                };
                row.push(parsed.ok_or_else(|| Error::Parse(format!("bad rational entry {x}")))?);
            }
            dense.push(row);
        }
        Ok(LinearMap::from_dense(&dense, ncols))
    }

    pub fn rank(&self) -> usize {
        super::subspace::Subspace::span(self.rows, self.cols.iter().cloned()).dim()
    }

    pub fn image(&self) -> super::subspace::Subspace {
        super::subspace::Subspace::span(self.rows, self.cols.iter().cloned())
    }

    pub fn kernel(&self) -> super::subspace::Subspace {
        let rows = self.rows_sparse();
        super::subspace::Subspace::span(self.ncols(), rows).annihilator()
    }

    /// Square matrices only.
    pub fn pow(&self, k: usize) -> LinearMap {
        let mut acc = LinearMap::identity(self.rows);
        for _ in 0..k {
            acc = self.compose(&acc).expect("square");
        }
        acc
    }

    pub fn trace(&self) -> Q {
        let mut s = Q::zero();
        for (j, c) in self.cols.iter().enumerate() {
            s += c.get(j);
        }
        s
    }

    /// Inverse of a square matrix, by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Option<LinearMap> {
        let n = self.rows;
        if self.ncols() != n {
            return None;
        }
        let mut a = self.to_dense();
        let mut inv: Vec<Vec<Q>> = (0..n).map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()).collect();
        for c in 0..n {
            let p = (c..n).find(|&r| !a[r][c].is_zero())?;
            a.swap(c, p);
            inv.swap(c, p);
            let piv = a[c][c].clone();
            for x in a[c].iter_mut().chain(inv[c].iter_mut()) {
                *x /= piv.clone();
            }
            for r in 0..n {
                if r != c && !a[r][c].is_zero() {
                    let f = a[r][c].clone();
                    for k in 0..n {
                        let (ack, ick) = (a[c][k].clone(), inv[c][k].clone());
                        a[r][k] -= &f * ack;
                        inv[r][k] -= &f * ick;
                    }
                }
            }
        }
        Some(LinearMap::from_dense(&inv, n))
    }

    /// Some `x` with `self · x = b`.
    pub fn solve(&self, b: &SVec) -> Option<SVec> {
        // append b as an extra column and read a solution off the kernel
        let mut cols = self.cols.clone();
        cols.push(b.scale(&-Q::one()));
        let ext = LinearMap::from_columns(self.rows, cols);
        let n = self.ncols();
        let ker = ext.kernel();
        let v = ker.basis().find(|v| !v.get(n).is_zero())?.clone();
        let c = v.get(n);
        Some(SVec::from_pairs(v.entries().iter().filter(|(i, _)| *i < n).map(|(i, x)| (*i, x / &c))))
    }

    pub fn is_permutation_like(&self) -> bool {
        self.cols.iter().all(|c| c.nnz() == 1 && c.entries()[0].1.is_one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::q;

    fn m(rows: &[&[i64]]) -> LinearMap {
        let d: Vec<Vec<Q>> = rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        LinearMap::from_dense(&d, rows[0].len())
    }

    #[test]
    fn composition_matches_hand_product() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let b = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.compose(&b).unwrap(), m(&[&[2, 1], &[4, 3]]));
        assert_eq!(b.compose(&a).unwrap(), m(&[&[3, 4], &[1, 2]]));
    }

    #[test]
    fn kron_index_convention() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let i = LinearMap::identity(2);
        let k = a.kron(&i);
        assert_eq!(k.get(2, 0), q(3));
        assert_eq!(k.get(3, 1), q(3));
        assert_eq!(k.get(0, 2), q(2));
    }

    #[test]
    fn json_round_trip() {
        let a = m(&[&[1, -2, 0], &[0, 5, 7]]);
        let j = a.to_json();
        assert_eq!(j[0][1], "-2/1");
        assert_eq!(LinearMap::from_json(&j, 3).unwrap(), a);
    }

    #[test]
    fn kernel_and_rank() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(a.rank(), 1);
        let k = a.kernel();
        assert_eq!(k.dim(), 2);
        for v in k.basis() {
            assert!(a.apply(v).is_zero());
        }
    }
}
