use std::collections::BTreeMap;
use std::io::Write;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::linalg;
use super::Cutoff;
use crate::error::{Error, Result};
use crate::ncpoly::AlgebraOps;

/// A square sparse complex matrix on the retained basis, stored by
/// columns, with a mask of the columns known to be exact.
///
/// Column `j` is interior when the corresponding column of the
/// untruncated operator lies entirely inside the box, so that the stored
/// column equals the true image of the basis vector.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedOperator {
    cutoff: Cutoff,
    columns: Vec<Vec<(usize, Complex64)>>,
    interior: Vec<bool>,
}

fn collect_column(map: BTreeMap<usize, Complex64>) -> Vec<(usize, Complex64)> {
    map.into_iter().filter(|(_, v)| *v != Complex64::new(0.0, 0.0)).collect()
}

impl TruncatedOperator {
    pub(crate) fn from_columns(cutoff: Cutoff, columns: Vec<Vec<(usize, Complex64)>>, interior: Vec<bool>) -> Self {
        debug_assert_eq!(columns.len(), interior.len());
        TruncatedOperator { cutoff, columns, interior }
    }

    pub fn identity(dim: usize, cutoff: Cutoff) -> Self {
        let columns = (0..dim).map(|j| vec![(j, Complex64::new(1.0, 0.0))]).collect();
        TruncatedOperator { cutoff, columns, interior: vec![true; dim] }
    }

    pub fn zero(dim: usize, cutoff: Cutoff) -> Self {
        TruncatedOperator { cutoff, columns: vec![Vec::new(); dim], interior: vec![true; dim] }
    }

    pub fn dim(&self) -> usize {
        self.columns.len()
    }

    pub fn cutoff(&self) -> Cutoff {
        self.cutoff
    }

    pub fn column(&self, j: usize) -> &[(usize, Complex64)] {
        &self.columns[j]
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.columns[j]
            .binary_search_by_key(&i, |(r, _)| *r)
            .map(|k| self.columns[j][k].1)
            .unwrap_or_default()
    }

    pub fn interior_mask(&self) -> &[bool] {
        &self.interior
    }

    pub fn interior_count(&self) -> usize {
        self.interior.iter().filter(|&&b| b).count()
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    fn check_dims(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::InvalidParameter(format!("dimension {} vs {}", self.dim(), other.dim())));
        }
        Ok(())
    }

    /// Matrix product; column `j` is interior when it is interior in `rhs`
    /// and every basis vector it touches is interior in `self`.
    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        self.check_dims(rhs)?;
        let mut columns = Vec::with_capacity(rhs.dim());
        let mut interior = Vec::with_capacity(rhs.dim());
        for (j, col) in rhs.columns.iter().enumerate() {
            let mut acc = BTreeMap::new();
            let mut exact = rhs.interior[j];
            for &(k, b) in col {
                exact &= self.interior[k];
                for &(i, a) in &self.columns[k] {
                    *acc.entry(i).or_insert(Complex64::new(0.0, 0.0)) += a * b;
                }
            }
            columns.push(collect_column(acc));
            interior.push(exact);
        }
        Ok(TruncatedOperator { cutoff: self.cutoff, columns, interior })
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.check_dims(rhs)?;
        let mut columns = Vec::with_capacity(self.dim());
        for (a, b) in self.columns.iter().zip(&rhs.columns) {
            let mut acc: BTreeMap<usize, Complex64> = a.iter().copied().collect();
            for &(i, v) in b {
                *acc.entry(i).or_insert(Complex64::new(0.0, 0.0)) += v;
            }
            columns.push(collect_column(acc));
        }
        let interior = self.interior.iter().zip(&rhs.interior).map(|(a, b)| *a && *b).collect();
        Ok(TruncatedOperator { cutoff: self.cutoff, columns, interior })
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.try_mul(rhs).expect("operators on the same box")
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.try_add(rhs).expect("operators on the same box")
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let columns = self
            .columns
            .iter()
            .map(|col| col.iter().map(|&(i, v)| (i, v * c)).filter(|(_, v)| *v != Complex64::new(0.0, 0.0)).collect())
            .collect();
        TruncatedOperator { cutoff: self.cutoff, columns, interior: self.interior.clone() }
    }

    /// Replaces the interior mask by its conjunction with `mask`.
    pub fn restrict_mask(&self, mask: &[bool]) -> Self {
        let interior = self.interior.iter().zip(mask).map(|(a, b)| *a && *b).collect();
        TruncatedOperator { interior, ..self.clone() }
    }

    /// Operator norm of the matrix restricted to interior columns.
    pub fn interior_norm(&self) -> f64 {
        let cols: Vec<usize> = (0..self.dim()).filter(|&j| self.interior[j]).collect();
        linalg::operator_norm(&self.columns, &cols)
    }

    /// Operator norm of the whole truncated matrix.
    pub fn norm(&self) -> f64 {
        let cols: Vec<usize> = (0..self.dim()).collect();
        linalg::operator_norm(&self.columns, &cols)
    }

    /// Largest entry modulus over interior columns.
    pub fn interior_max_abs(&self) -> f64 {
        self.columns
            .iter()
            .zip(&self.interior)
            .filter(|(_, &keep)| keep)
            .flat_map(|(col, _)| col.iter().map(|(_, v)| v.norm()))
            .fold(0.0, f64::max)
    }

    /// `f(H)` for a Hermitian `H`, applied blockwise on the connected
    /// components of the sparsity pattern. A column is interior when every
    /// column of its component is.
    pub fn hermitian_function(&self, f: impl Fn(f64) -> f64) -> Self {
        let (columns, interior) = linalg::hermitian_function(&self.columns, &self.interior, f);
        TruncatedOperator { cutoff: self.cutoff, columns, interior }
    }

    /// `H^{-1/2}` for a positive Hermitian `H`.
    pub fn inverse_sqrt(&self) -> Result<Self> {
        let min = linalg::min_hermitian_eigenvalue(&self.columns);
        if min < 1e-10 {
            return Err(Error::Singular { min_eigenvalue: min });
        }
        Ok(self.hermitian_function(|x| 1.0 / x.sqrt()))
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let n = self.dim();
        let mut out = DMatrix::zeros(n, n);
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, v) in col {
                out[(i, j)] = v;
            }
        }
        out
    }

    /// Matrix Market coordinate format, complex general, 1-based indices.
    pub fn write_matrix_market<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "%%MatrixMarket matrix coordinate complex general")?;
        writeln!(w, "{} {} {}", self.dim(), self.dim(), self.nnz())?;
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, v) in col {
                writeln!(w, "{} {} {:.17e} {:.17e}", i + 1, j + 1, v.re, v.im)?;
            }
        }
        Ok(())
    }
}

impl AlgebraOps for TruncatedOperator {
    fn mul(&self, rhs: &Self) -> Self {
        TruncatedOperator::mul(self, rhs)
    }

    fn add(&self, rhs: &Self) -> Self {
        TruncatedOperator::add(self, rhs)
    }

    fn scale(&self, c: Complex64) -> Self {
        TruncatedOperator::scale(self, c)
    }
}
