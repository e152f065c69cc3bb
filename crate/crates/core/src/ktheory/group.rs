use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::{smith_normal_form, IntMatrix};
use crate::error::{Error, Result};

/// `Z/d_1 ⊕ … ⊕ Z/d_k`, a factor `0` standing for a free summand `Z`.
///
/// Factors are kept in canonical order: torsion factors `> 1`, each
/// dividing the next, followed by the zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct FGAbelianGroup {
    invariant_factors: Vec<u64>,
}

impl FGAbelianGroup {
    /// Validates canonical order; see [`FGAbelianGroup::canonical`] for
    /// arbitrary factor lists.
    pub fn new(invariant_factors: Vec<u64>) -> Result<Self> {
        let torsion: Vec<u64> = invariant_factors.iter().copied().take_while(|&d| d != 0).collect();
        if invariant_factors[torsion.len()..].iter().any(|&d| d != 0) {
            return Err(Error::InvalidParameter(format!("free factors must come last: {invariant_factors:?}")));
        }
        if torsion.contains(&1) {
            return Err(Error::InvalidParameter(format!("trivial factor 1 in {invariant_factors:?}")));
        }
        if torsion.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::InvalidParameter(format!("divisibility chain broken: {invariant_factors:?}")));
        }
        Ok(FGAbelianGroup { invariant_factors })
    }

    /// The group `⊕ Z/d_i` for any list of factors, brought to canonical form.
    pub fn canonical(factors: &[u64]) -> Self {
        let diag: Vec<BigInt> = factors.iter().map(|&d| BigInt::from(d)).collect();
        let snf = smith_normal_form(&IntMatrix::diagonal(&diag));
        Self::from_diagonal(&snf.diagonal())
    }

    /// Canonical group from an SNF diagonal, dropping unit factors.
    pub(crate) fn from_diagonal(diag: &[BigInt]) -> Self {
        let invariant_factors =
            diag.iter().filter(|d| !d.is_one()).map(|d| d.to_u64().expect("invariant factor fits in u64")).collect();
        FGAbelianGroup { invariant_factors }
    }

    pub fn free(rank: usize) -> Self {
        FGAbelianGroup { invariant_factors: vec![0; rank] }
    }

    pub fn trivial() -> Self {
        FGAbelianGroup { invariant_factors: Vec::new() }
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    /// Number of generators.
    pub fn generators(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn free_rank(&self) -> usize {
        self.invariant_factors.iter().filter(|&&d| d == 0).count()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.invariant_factors.iter().all(|&d| d == 0)
    }

    fn factor(&self, i: usize) -> BigInt {
        BigInt::from(self.invariant_factors[i])
    }

    /// Relation lattice: column `i` is `d_i e_i`.
    pub(crate) fn relations(&self) -> IntMatrix {
        let diag: Vec<BigInt> = (0..self.generators()).map(|i| self.factor(i)).collect();
        IntMatrix::diagonal(&diag)
    }

    /// Reduces each coordinate modulo its factor.
    pub(crate) fn reduce(&self, v: &mut [BigInt]) {
        for (i, x) in v.iter_mut().enumerate() {
            let d = self.factor(i);
            if !d.is_zero() {
                *x = x.mod_floor(&d);
            }
        }
    }

    /// Whether `v` lies in the relation lattice.
    pub(crate) fn is_relation(&self, v: &[BigInt]) -> bool {
        v.iter().enumerate().all(|(i, x)| {
            let d = self.factor(i);
            if d.is_zero() {
                x.is_zero()
            } else {
                x.is_multiple_of(&d)
            }
        })
    }
}

impl TryFrom<Vec<u64>> for FGAbelianGroup {
    type Error = Error;

    fn try_from(v: Vec<u64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<FGAbelianGroup> for Vec<u64> {
    fn from(g: FGAbelianGroup) -> Self {
        g.invariant_factors
    }
}

impl fmt::Display for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> =
            self.invariant_factors.iter().filter(|&&d| d != 0).map(|d| format!("Z/{d}")).collect();
        match self.free_rank() {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Homomorphism between presented groups; column `j` is the image of the
/// `j`-th domain generator, reduced modulo the codomain factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    domain: FGAbelianGroup,
    codomain: FGAbelianGroup,
    matrix: IntMatrix,
}

impl GroupHom {
    pub fn new(domain: FGAbelianGroup, codomain: FGAbelianGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != codomain.generators() || matrix.cols() != domain.generators() {
            return Err(Error::IllDefinedHom(format!(
                "matrix is {}x{} but {domain} -> {codomain} needs {}x{}",
                matrix.rows(),
                matrix.cols(),
                codomain.generators(),
                domain.generators()
            )));
        }
        let mut columns = Vec::with_capacity(matrix.cols());
        for j in 0..matrix.cols() {
            let mut col = matrix.column(j);
            let d = domain.factor(j);
            if !d.is_zero() {
                let scaled: Vec<BigInt> = col.iter().map(|x| x * &d).collect();
                if !codomain.is_relation(&scaled) {
                    return Err(Error::IllDefinedHom(format!(
                        "generator {j} has order {d} but its image {col:?} does not"
                    )));
                }
            }
            codomain.reduce(&mut col);
            columns.push(col);
        }
        let matrix = IntMatrix::from_columns(codomain.generators(), &columns);
        Ok(GroupHom { domain, codomain, matrix })
    }

    pub fn from_rows(domain: FGAbelianGroup, codomain: FGAbelianGroup, rows: &[Vec<i64>]) -> Result<Self> {
        let matrix =
            if rows.is_empty() { IntMatrix::zeros(0, domain.generators()) } else { IntMatrix::from_rows(rows) };
        Self::new(domain, codomain, matrix)
    }

    pub fn zero(domain: FGAbelianGroup, codomain: FGAbelianGroup) -> Self {
        let matrix = IntMatrix::zeros(codomain.generators(), domain.generators());
        GroupHom { domain, codomain, matrix }
    }

    pub fn identity(group: FGAbelianGroup) -> Self {
        let matrix = IntMatrix::identity(group.generators());
        GroupHom { domain: group.clone(), codomain: group, matrix }
    }

    pub fn domain(&self) -> &FGAbelianGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &FGAbelianGroup {
        &self.codomain
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &GroupHom) -> Result<GroupHom> {
        if self.codomain != next.domain {
            return Err(Error::NotComposable(format!("{} vs {}", self.codomain, next.domain)));
        }
        GroupHom::new(self.domain.clone(), next.codomain.clone(), next.matrix.mul(&self.matrix))
    }

    pub fn is_zero(&self) -> bool {
        (0..self.matrix.cols()).all(|j| self.codomain.is_relation(&self.matrix.column(j)))
    }

    pub fn is_isomorphism(&self) -> bool {
        kernel(self).is_trivial() && cokernel(self).is_trivial()
    }

    /// `[M | relations of codomain]`.
    fn with_relations(&self) -> IntMatrix {
        self.matrix.hstack(&self.codomain.relations())
    }
}

/// Generators of `{x : M x = 0}`.
fn integer_kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(m);
    (snf.rank()..m.cols()).map(|j| snf.v.column(j)).collect()
}

/// Whether `v` lies in the lattice spanned by the columns of `gens`.
pub(crate) fn lattice_contains(gens: &IntMatrix, v: &[BigInt]) -> bool {
    let snf = smith_normal_form(gens);
    let w = snf.u.mul_vec(v);
    let diag = snf.diagonal();
    w.iter().enumerate().all(|(i, x)| match diag.get(i) {
        Some(d) if !d.is_zero() => x.is_multiple_of(d),
        _ => x.is_zero(),
    })
}

/// Generators of the preimage of the codomain relations under `h`, as
/// vectors in the domain coordinates.
fn kernel_lattice(h: &GroupHom) -> Vec<Vec<BigInt>> {
    let n = h.domain.generators();
    integer_kernel(&h.with_relations()).into_iter().map(|mut v| {
        v.truncate(n);
        v
    }).collect()
}

/// The kernel as a group together with its inclusion into the domain.
pub fn kernel_inclusion(h: &GroupHom) -> GroupHom {
    let n = h.domain.generators();
    let gens = kernel_lattice(h);
    let k = IntMatrix::from_columns(n, &gens);
    // Basis of the kernel lattice: b_i = d_i U^{-1} e_i.
    let snf = smith_normal_form(&k);
    let diag = snf.diagonal();
    let s = snf.rank();
    let basis: Vec<Vec<BigInt>> =
        (0..s).map(|i| snf.u_inv.column(i).into_iter().map(|x| x * &diag[i]).collect()).collect();
    // Domain relations expressed in that basis.
    let rels: Vec<Vec<BigInt>> = (0..n)
        .filter(|&j| !h.domain.factor(j).is_zero())
        .map(|j| {
            let a = h.domain.factor(j);
            (0..s).map(|i| (&a * &snf.u[(i, j)]) / &diag[i]).collect()
        })
        .collect();
    let y = IntMatrix::from_columns(s, &rels);
    let quotient = smith_normal_form(&y);
    let qdiag = quotient.diagonal();
    let factor = |i: usize| qdiag.get(i).cloned().unwrap_or_else(BigInt::zero);
    let kept: Vec<usize> = (0..s).filter(|&i| !factor(i).is_one()).collect();
    let group = FGAbelianGroup::from_diagonal(&kept.iter().map(|&i| factor(i)).collect::<Vec<_>>());
    let basis_matrix = IntMatrix::from_columns(n, &basis);
    let columns: Vec<Vec<BigInt>> =
        kept.iter().map(|&i| basis_matrix.mul_vec(&quotient.u_inv.column(i))).collect();
    let matrix = IntMatrix::from_columns(n, &columns);
    GroupHom::new(group, h.domain.clone(), matrix).expect("kernel inclusion is well defined")
}

/// The cokernel as a group together with the quotient map from the codomain.
pub fn cokernel_projection(h: &GroupHom) -> GroupHom {
    let m = h.codomain.generators();
    let snf = smith_normal_form(&h.with_relations());
    let diag = snf.diagonal();
    let factor = |i: usize| diag.get(i).cloned().unwrap_or_else(BigInt::zero);
    let kept: Vec<usize> = (0..m).filter(|&i| !factor(i).is_one()).collect();
    let group = FGAbelianGroup::from_diagonal(&kept.iter().map(|&i| factor(i)).collect::<Vec<_>>());
    let mut matrix = IntMatrix::zeros(kept.len(), m);
    for (r, &i) in kept.iter().enumerate() {
        for j in 0..m {
            matrix[(r, j)] = snf.u[(i, j)].clone();
        }
    }
    GroupHom::new(h.codomain.clone(), group, matrix).expect("quotient map is well defined")
}

pub fn kernel(h: &GroupHom) -> FGAbelianGroup {
    kernel_inclusion(h).domain
}

pub fn cokernel(h: &GroupHom) -> FGAbelianGroup {
    cokernel_projection(h).codomain
}

/// Rank over `Q` of the image.
pub fn image_rank(h: &GroupHom) -> usize {
    let free: Vec<usize> = (0..h.codomain.generators()).filter(|&i| h.codomain.factor(i).is_zero()).collect();
    let mut m = IntMatrix::zeros(free.len(), h.domain.generators());
    for (r, &i) in free.iter().enumerate() {
        for j in 0..h.domain.generators() {
            if h.domain.factor(j).is_zero() {
                m[(r, j)] = h.matrix[(i, j)].clone();
            }
        }
    }
    smith_normal_form(&m).rank()
}

/// True iff `im = ker` at every node shared by consecutive maps.
pub fn check_exact(seq: &[GroupHom]) -> Result<bool> {
    for pair in seq.windows(2) {
        if pair[0].codomain != pair[1].domain {
            return Err(Error::NotComposable(format!("{} vs {}", pair[0].codomain, pair[1].domain)));
        }
    }
    for pair in seq.windows(2) {
        let (f, g) = (&pair[0], &pair[1]);
        let composite = g.matrix.mul(&f.matrix);
        if !(0..composite.cols()).all(|j| g.codomain.is_relation(&composite.column(j))) {
            return Ok(false);
        }
        let image = f.with_relations();
        if !kernel_lattice(g).iter().all(|v| lattice_contains(&image, v)) {
            return Ok(false);
        }
    }
    Ok(true)
}
