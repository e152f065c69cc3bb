use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use rand::Rng;

use super::{Letter, Presentation, ProjKind, WordPiece, ZERO_THRESHOLD};
use crate::error::{Error, Result};

/// Minimal associative-algebra surface used by homomorphic images.
pub trait AlgebraOps: Clone {
    fn mul(&self, rhs: &Self) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn scale(&self, c: Complex64) -> Self;

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(Complex64::new(-1.0, 0.0)))
    }
}

/// An algebra with an involution and an exact-zero test (up to the
/// coefficient threshold).
pub trait StarAlgebra: AlgebraOps {
    fn adjoint(&self) -> Self;
    fn is_negligible(&self, tol: f64) -> bool;
}

/// A finite complex-linear combination of canonical monomials.
#[derive(Clone, PartialEq)]
pub struct Element<P: Presentation> {
    pres: P,
    terms: BTreeMap<P::Monomial, Complex64>,
}

impl<P: Presentation> Element<P> {
    pub fn zero(pres: &P) -> Self {
        Element { pres: pres.clone(), terms: BTreeMap::new() }
    }

    pub fn one(pres: &P) -> Self {
        Self::scalar(pres, Complex64::new(1.0, 0.0))
    }

    pub fn scalar(pres: &P, c: Complex64) -> Self {
        Self::monomial(pres, pres.unit_monomial(), c)
    }

    pub fn monomial(pres: &P, m: P::Monomial, c: Complex64) -> Self {
        Self::from_terms(pres, vec![(c, m)])
    }

    pub fn from_terms(pres: &P, terms: impl IntoIterator<Item = (Complex64, P::Monomial)>) -> Self {
        let mut map = BTreeMap::new();
        for (c, m) in terms {
            *map.entry(m).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        map.retain(|_, c: &mut Complex64| c.norm() >= ZERO_THRESHOLD);
        Element { pres: pres.clone(), terms: map }
    }

    pub fn generator(pres: &P, letter: Letter) -> Result<Self> {
        Self::normal_form(&[letter], pres)
    }

    pub fn presentation(&self) -> &P {
        &self.pres
    }

    pub fn terms(&self) -> impl Iterator<Item = (&P::Monomial, &Complex64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &P::Monomial) -> Complex64 {
        self.terms.get(m).copied().unwrap_or_default()
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.pres != other.pres {
            return Err(Error::PresentationMismatch {
                left: self.pres.describe(),
                right: other.pres.describe(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let terms = self.terms.iter().chain(other.terms.iter()).map(|(m, c)| (*c, m.clone()));
        Ok(Self::from_terms(&self.pres, terms))
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Vec::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                for (c, m) in self.pres.mul_monomials(ma, mb) {
                    out.push((ca * cb * c, m));
                }
            }
        }
        Ok(Self::from_terms(&self.pres, out))
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Vec::new();
        for (m, c) in &self.terms {
            for (d, n) in self.pres.adjoint_monomial(m) {
                out.push((c.conj() * d, n));
            }
        }
        Self::from_terms(&self.pres, out)
    }

    /// Rewrites a word in the generators to its unique basis expansion.
    pub fn normal_form(word: &[Letter], pres: &P) -> Result<Self> {
        for &l in word {
            if !pres.letters().contains(&l) {
                return Err(Error::InvalidLetter {
                    letter: format!("{l:?}"),
                    algebra: pres.kind().to_string(),
                });
            }
        }
        let mut acc = Self::one(pres);
        for &l in word {
            acc = acc.rmul_piece(WordPiece::Gen(l));
        }
        Ok(acc)
    }

    /// Same result as [`Element::normal_form`], but the word is reduced
    /// along a random bracketing: subwords are normalised independently and
    /// then multiplied, so the rewriting rules fire in a different order.
    pub fn normal_form_shuffled<R: Rng>(word: &[Letter], pres: &P, rng: &mut R) -> Result<Self> {
        if word.len() <= 1 {
            return Self::normal_form(word, pres);
        }
        let split = rng.gen_range(1..word.len());
        let left = Self::normal_form_shuffled(&word[..split], pres, rng)?;
        let right = Self::normal_form_shuffled(&word[split..], pres, rng)?;
        left.multiply(&right)
    }

    pub(crate) fn rmul_piece(&self, piece: WordPiece) -> Self {
        let mut out = Vec::new();
        for (m, c) in &self.terms {
            for (d, n) in self.pres.rmul_piece(m, piece) {
                out.push((c * d, n));
            }
        }
        Self::from_terms(&self.pres, out)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        match self.try_add(&other.scale(Complex64::new(-1.0, 0.0))) {
            Ok(diff) => diff.max_abs() <= tol,
            Err(_) => false,
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Image under the algebra map determined by the images of the four
    /// letters. The target must satisfy the defining relations for the
    /// result to be meaningful.
    pub fn map_into<T: AlgebraOps>(&self, unit: &T, image: impl Fn(Letter) -> T) -> T {
        let letters: Vec<T> = Letter::ALL.iter().map(|&l| image(l)).collect();
        let mut projections: BTreeMap<WordPiece, T> = BTreeMap::new();
        let mut total = unit.scale(Complex64::new(0.0, 0.0));
        for (m, c) in &self.terms {
            let mut acc = unit.clone();
            for piece in self.pres.word_pieces(m) {
                let factor = match piece {
                    WordPiece::Gen(l) => letters[l.index()].clone(),
                    WordPiece::Proj { gen, kind } => projections
                        .entry(piece)
                        .or_insert_with(|| projection_image(unit, &letters, gen, kind))
                        .clone(),
                };
                acc = acc.mul(&factor);
            }
            total = total.add(&acc.scale(*c));
        }
        total
    }

    /// Canonical text form `coeff * monomial + ...`.
    pub fn to_canonical_string(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(m, c)| format!("{} * {}", format_coefficient(*c), self.pres.format_monomial(m)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn projection_image<T: AlgebraOps>(unit: &T, letters: &[T], gen: Letter, kind: ProjKind) -> T {
    let g = &letters[gen.base().index()];
    let gs = &letters[gen.base().star().index()];
    match kind {
        ProjKind::Power(n) => {
            let defect = unit.sub(&g.mul(gs));
            let mut acc = unit.clone();
            for _ in 0..n {
                acc = acc.mul(&defect);
            }
            acc
        }
        ProjKind::Range(k) => {
            let mut up = unit.clone();
            let mut down = unit.clone();
            for _ in 0..k {
                up = up.mul(g);
                down = down.mul(gs);
            }
            unit.sub(&up.mul(&down))
        }
    }
}

/// `re±im i`, 12 significant digits each.
pub fn format_coefficient(c: Complex64) -> String {
    format!("{:.11e}{:+.11e}i", c.re, c.im)
}

impl<P: Presentation> fmt::Debug for Element<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

impl<P: Presentation> fmt::Display for Element<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

// The trait impls below panic on presentation mismatch; use `multiply` /
// `try_add` when operands may come from different algebras.
impl<P: Presentation> AlgebraOps for Element<P> {
    fn mul(&self, rhs: &Self) -> Self {
        self.multiply(rhs).expect("multiplying elements of different presentations")
    }

    fn add(&self, rhs: &Self) -> Self {
        self.try_add(rhs).expect("adding elements of different presentations")
    }

    fn scale(&self, c: Complex64) -> Self {
        Self::from_terms(&self.pres, self.terms.iter().map(|(m, d)| (c * d, m.clone())))
    }
}

impl<P: Presentation> StarAlgebra for Element<P> {
    fn adjoint(&self) -> Self {
        Element::adjoint(self)
    }

    fn is_negligible(&self, tol: f64) -> bool {
        self.max_abs() <= tol
    }
}
