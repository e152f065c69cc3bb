use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix, row-major, with arbitrary-precision entries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// From rows of machine integers. All rows must have equal length.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged integer matrix");
        let data = rows.iter().flatten().map(|&x| BigInt::from(x)).collect();
        IntMatrix { rows: rows.len(), cols, data }
    }

    /// A matrix with `rows` rows and no columns, or the reverse.
    pub fn empty(rows: usize, cols: usize) -> Self {
        Self::zeros(rows, cols)
    }

    pub fn diagonal(entries: &[BigInt]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, d) in entries.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "incompatible shapes");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = a * &rhs[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum()).collect()
    }

    /// `[self | rhs]`.
    pub fn hstack(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, rhs.rows);
        let mut out = Self::zeros(self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..rhs.cols {
                out[(i, self.cols + j)] = rhs[(i, j)].clone();
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Determinant by fraction-free elimination (square matrices only).
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * a[(n - 1, n - 1)].clone()
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[target] += k · row[source]`
    pub(crate) fn add_row(&mut self, target: usize, source: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = k * &self[(source, j)];
            self[(target, j)] += v;
        }
    }

    /// `col[target] += k · col[source]`
    pub(crate) fn add_col(&mut self, target: usize, source: usize, k: &BigInt) {
        for i in 0..self.rows {
            let v = k * &self[(i, source)];
            self[(i, target)] += v;
        }
    }

    pub(crate) fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -&self[(r, j)];
            self[(r, j)] = v;
        }
    }

    pub(crate) fn negate_col(&mut self, c: usize) {
        for i in 0..self.rows {
            let v = -&self[(i, c)];
            self[(i, c)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> =
            (0..self.rows).map(|i| (0..self.cols).map(|j| self[(i, j)].to_string()).collect()).collect();
        write!(f, "{rows:?}")
    }
}

/// `U · M · V = D` with `U`, `V` unimodular and `D` diagonal, its nonzero
/// entries positive and each dividing the next.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }

    /// Checks `U·M·V = D`, `|det U| = |det V| = 1`, the inverses, that `D`
    /// is diagonal with nonnegative entries, and the divisibility chain.
    pub fn verify(&self, m: &IntMatrix) -> bool {
        let unimodular = |x: &IntMatrix| x.determinant().abs().is_one();
        let diag = self.diagonal();
        let off_diagonal_zero =
            (0..self.d.rows).all(|i| (0..self.d.cols).all(|j| i == j || self.d[(i, j)].is_zero()));
        let chain = diag.windows(2).all(|w| {
            if w[0].is_zero() {
                w[1].is_zero()
            } else {
                w[1].is_multiple_of(&w[0])
            }
        });
        self.u.mul(m).mul(&self.v) == self.d
            && unimodular(&self.u)
            && unimodular(&self.v)
            && self.u.mul(&self.u_inv) == IntMatrix::identity(m.rows)
            && self.v.mul(&self.v_inv) == IntMatrix::identity(m.cols)
            && off_diagonal_zero
            && diag.iter().all(|x| !x.is_negative())
            && chain
    }
}

struct Reducer {
    m: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.m.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.m.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    fn add_row(&mut self, target: usize, source: usize, k: &BigInt) {
        self.m.add_row(target, source, k);
        self.u.add_row(target, source, k);
        self.u_inv.add_col(source, target, &-k);
    }

    fn add_col(&mut self, target: usize, source: usize, k: &BigInt) {
        self.m.add_col(target, source, k);
        self.v.add_col(target, source, k);
        self.v_inv.add_row(source, target, &-k);
    }

    fn negate_row(&mut self, r: usize) {
        self.m.negate_row(r);
        self.u.negate_row(r);
        self.u_inv.negate_col(r);
    }

    /// Smallest nonzero entry (by modulus) in the trailing block.
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.m.rows {
            for j in t..self.m.cols {
                let x = &self.m[(i, j)];
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < self.m[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    fn run(mut self) -> SmithForm {
        let n = self.m.rows.min(self.m.cols);
        for t in 0..n {
            let Some((pi, pj)) = self.pivot(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut dirty = false;
                for i in t + 1..self.m.rows {
                    if !self.m[(i, t)].is_zero() {
                        let q = self.m[(i, t)].div_floor(&self.m[(t, t)]);
                        self.add_row(i, t, &-q);
                        if !self.m[(i, t)].is_zero() {
                            dirty = true;
                        }
                    }
                }
                for j in t + 1..self.m.cols {
                    if !self.m[(t, j)].is_zero() {
                        let q = self.m[(t, j)].div_floor(&self.m[(t, t)]);
                        self.add_col(j, t, &-q);
                        if !self.m[(t, j)].is_zero() {
                            dirty = true;
                        }
                    }
                }
                if !dirty {
                    // The pivot must divide the whole trailing block.
                    let offender = (t + 1..self.m.rows)
                        .flat_map(|i| (t + 1..self.m.cols).map(move |j| (i, j)))
                        .find(|&(i, j)| !self.m[(i, j)].is_multiple_of(&self.m[(t, t)]));
                    match offender {
                        Some((i, _)) => {
                            self.add_row(t, i, &BigInt::one());
                            dirty = true;
                        }
                        None => break,
                    }
                }
                if dirty {
                    // Bring the smallest remaining entry of row/column t to the pivot.
                    let mut best = (t, t);
                    for i in t..self.m.rows {
                        let x = &self.m[(i, t)];
                        if !x.is_zero() && x.abs() < self.m[best].abs() {
                            best = (i, t);
                        }
                    }
                    for j in t..self.m.cols {
                        let x = &self.m[(t, j)];
                        if !x.is_zero() && x.abs() < self.m[best].abs() {
                            best = (t, j);
                        }
                    }
                    self.swap_rows(t, best.0);
                    self.swap_cols(t, best.1);
                }
            }
            if self.m[(t, t)].is_negative() {
                self.negate_row(t);
            }
        }
        SmithForm { u: self.u, u_inv: self.u_inv, d: self.m, v: self.v, v_inv: self.v_inv }
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    Reducer {
        m: m.clone(),
        u: IntMatrix::identity(m.rows),
        u_inv: IntMatrix::identity(m.rows),
        v: IntMatrix::identity(m.cols),
        v_inv: IntMatrix::identity(m.cols),
    }
    .run()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(m: &IntMatrix) -> Vec<i64> {
        smith_normal_form(m).diagonal().iter().map(|x| i64::try_from(x).unwrap()).collect()
    }

    #[test]
    fn rank_one_example() {
        assert_eq!(diag(&IntMatrix::from_rows(&[vec![1, -1], vec![0, 0]])), vec![1, 0]);
    }

    #[test]
    fn coprime_diagonal() {
        assert_eq!(diag(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]])), vec![1, 6]);
    }

    #[test]
    fn identity_is_fixed() {
        assert_eq!(diag(&IntMatrix::identity(3)), vec![1, 1, 1]);
    }

    #[test]
    fn factorisation_holds() {
        let m = IntMatrix::from_rows(&[vec![4, 6, 2], vec![2, 8, 10], vec![6, 4, -2]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
        assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(3));
        assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(3));
    }

    #[test]
    fn determinant_small() {
        let m = IntMatrix::from_rows(&[vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]);
        assert_eq!(m.determinant(), BigInt::from(18));
        assert_eq!(IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).determinant(), BigInt::from(-1));
    }
}
