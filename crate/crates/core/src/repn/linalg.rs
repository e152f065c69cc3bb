use std::collections::BTreeMap;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

/// Singular values at or below this (after column normalisation) count as zero.
pub const RANK_THRESHOLD: f64 = 1e-8;

/// Components above this many rows or columns use power iteration instead
/// of a dense SVD.
const DENSE_LIMIT: usize = 400;

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Groups the given columns into blocks that share no rows.
fn column_blocks(columns: &[Vec<(usize, Complex64)>], cols: &[usize]) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(cols.len());
    let mut owner: BTreeMap<usize, usize> = BTreeMap::new();
    for (pos, &j) in cols.iter().enumerate() {
        for &(i, _) in &columns[j] {
            match owner.get(&i) {
                Some(&other) => uf.union(pos, other),
                None => {
                    owner.insert(i, pos);
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (pos, &j) in cols.iter().enumerate() {
        if !columns[j].is_empty() {
            groups.entry(uf.find(pos)).or_default().push(j);
        }
    }
    groups.into_values().collect()
}

fn dense_block(columns: &[Vec<(usize, Complex64)>], block: &[usize]) -> DMatrix<Complex64> {
    let rows: Vec<usize> = {
        let mut r: Vec<usize> = block.iter().flat_map(|&j| columns[j].iter().map(|(i, _)| *i)).collect();
        r.sort_unstable();
        r.dedup();
        r
    };
    let row_pos: BTreeMap<usize, usize> = rows.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let mut m = DMatrix::zeros(rows.len(), block.len());
    for (c, &j) in block.iter().enumerate() {
        for &(i, v) in &columns[j] {
            m[(row_pos[&i], c)] = v;
        }
    }
    m
}

fn block_rows(columns: &[Vec<(usize, Complex64)>], block: &[usize]) -> usize {
    let mut r: Vec<usize> = block.iter().flat_map(|&j| columns[j].iter().map(|(i, _)| *i)).collect();
    r.sort_unstable();
    r.dedup();
    r.len()
}

fn power_iteration_norm(columns: &[Vec<(usize, Complex64)>], block: &[usize]) -> f64 {
    let mut x: BTreeMap<usize, Complex64> = block.iter().map(|&j| (j, Complex64::new(1.0, 0.0))).collect();
    let mut sigma = 0.0;
    for _ in 0..1000 {
        let mut y: BTreeMap<usize, Complex64> = BTreeMap::new();
        for (&j, &xj) in &x {
            for &(i, v) in &columns[j] {
                *y.entry(i).or_insert(Complex64::new(0.0, 0.0)) += v * xj;
            }
        }
        let mut z: BTreeMap<usize, Complex64> = BTreeMap::new();
        for &j in block {
            let mut acc = Complex64::new(0.0, 0.0);
            for &(i, v) in &columns[j] {
                if let Some(yi) = y.get(&i) {
                    acc += v.conj() * yi;
                }
            }
            z.insert(j, acc);
        }
        let norm: f64 = z.values().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return 0.0;
        }
        let next = norm.sqrt();
        for v in z.values_mut() {
            *v /= norm;
        }
        x = z;
        if (next - sigma).abs() <= 1e-15 * next {
            return next;
        }
        sigma = next;
    }
    sigma
}

/// Largest singular value of the submatrix formed by `cols`.
pub(crate) fn operator_norm(columns: &[Vec<(usize, Complex64)>], cols: &[usize]) -> f64 {
    column_blocks(columns, cols)
        .iter()
        .map(|block| {
            if block.len() > DENSE_LIMIT || block_rows(columns, block) > DENSE_LIMIT {
                power_iteration_norm(columns, block)
            } else {
                dense_block(columns, block).singular_values().iter().copied().fold(0.0, f64::max)
            }
        })
        .fold(0.0, f64::max)
}

/// Connected components of the square matrix viewed as a graph on indices.
fn index_components(columns: &[Vec<(usize, Complex64)>]) -> Vec<Vec<usize>> {
    let n = columns.len();
    let mut uf = UnionFind::new(n);
    for (j, col) in columns.iter().enumerate() {
        for &(i, _) in col {
            uf.union(i, j);
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for j in 0..n {
        groups.entry(uf.find(j)).or_default().push(j);
    }
    groups.into_values().collect()
}

fn hermitian_block(columns: &[Vec<(usize, Complex64)>], idx: &[usize]) -> SymmetricEigen<Complex64, nalgebra::Dyn> {
    let pos: BTreeMap<usize, usize> = idx.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let k = idx.len();
    let mut h = DMatrix::<Complex64>::zeros(k, k);
    for (c, &j) in idx.iter().enumerate() {
        for &(i, v) in &columns[j] {
            h[(pos[&i], c)] = v;
        }
    }
    let hermitian = (&h + h.adjoint()) * Complex64::new(0.5, 0.0);
    SymmetricEigen::new(hermitian)
}

pub(crate) fn min_hermitian_eigenvalue(columns: &[Vec<(usize, Complex64)>]) -> f64 {
    index_components(columns)
        .iter()
        .map(|idx| hermitian_block(columns, idx).eigenvalues.iter().copied().fold(f64::INFINITY, f64::min))
        .fold(f64::INFINITY, f64::min)
}

pub(crate) fn hermitian_function(
    columns: &[Vec<(usize, Complex64)>],
    interior: &[bool],
    f: impl Fn(f64) -> f64,
) -> (Vec<Vec<(usize, Complex64)>>, Vec<bool>) {
    let n = columns.len();
    let mut out = vec![Vec::new(); n];
    let mut mask = vec![false; n];
    for idx in index_components(columns) {
        let exact = idx.iter().all(|&j| interior[j]);
        let eig = hermitian_block(columns, &idx);
        let vecs = &eig.eigenvectors;
        let vals: Vec<f64> = eig.eigenvalues.iter().map(|&x| f(x)).collect();
        for (c, &j) in idx.iter().enumerate() {
            let mut col = Vec::new();
            for (r, &i) in idx.iter().enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                for (k, &lam) in vals.iter().enumerate() {
                    acc += vecs[(r, k)] * vecs[(c, k)].conj() * lam;
                }
                if acc != Complex64::new(0.0, 0.0) {
                    col.push((i, acc));
                }
            }
            out[j] = col;
            mask[j] = exact;
        }
    }
    (out, mask)
}

/// Numerical rank of a family of sparse vectors: each is normalised, the
/// family is split into groups with disjoint supports, and singular values
/// above [`RANK_THRESHOLD`] are counted per group.
pub fn numerical_rank(vectors: &[Vec<(usize, Complex64)>]) -> usize {
    let normalised: Vec<Vec<(usize, Complex64)>> = vectors
        .iter()
        .map(|v| {
            let norm = v.iter().map(|(_, c)| c.norm_sqr()).sum::<f64>().sqrt();
            if norm == 0.0 {
                Vec::new()
            } else {
                v.iter().map(|&(i, c)| (i, c / norm)).collect()
            }
        })
        .collect();
    let all: Vec<usize> = (0..normalised.len()).collect();
    column_blocks(&normalised, &all)
        .iter()
        .map(|block| {
            dense_block(&normalised, block).singular_values().iter().filter(|&&s| s > RANK_THRESHOLD).count()
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn rank_of_dependent_family() {
        let v = vec![vec![(0, c(1.0)), (1, c(1.0))], vec![(0, c(2.0)), (1, c(2.0))], vec![(5, c(1.0))], vec![]];
        assert_eq!(numerical_rank(&v), 2);
    }

    #[test]
    fn norm_by_blocks_matches_dense() {
        let columns = vec![vec![(0, c(3.0))], vec![(0, c(4.0))], vec![(2, c(1.0))]];
        assert!((operator_norm(&columns, &[0, 1, 2]) - 5.0).abs() < 1e-12);
        assert!((power_iteration_norm(&columns, &[0, 1]) - 5.0).abs() < 1e-10);
    }
}
