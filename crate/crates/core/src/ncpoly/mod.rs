//! Presented *-algebras with rewriting to canonical linear bases.
//!
//! Every algebra here has at most two generators, written abstractly as
//! [`Letter::X`] and [`Letter::Y`] (plus their adjoints). A [`Presentation`]
//! knows its canonical monomials and how to right-multiply a monomial by a
//! single [`WordPiece`]; everything else (products, adjoints, normal forms of
//! words, homomorphic images) is generic and lives in [`Element`].

mod disc;
mod element;
mod identities;
mod side;
mod sphere;

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use disc::{DiscElement, DiscMonomial, DiscPresentation};
pub use element::{format_coefficient, AlgebraOps, Element, StarAlgebra};
pub use identities::{check_identity, range_projection, Identity};
pub use sphere::{basis_monomials, BasisBounds, NCElement, SphereMonomial, SpherePresentation, Tag};

/// Coefficients whose magnitude falls below this are dropped.
pub const ZERO_THRESHOLD: f64 = 1e-12;

/// `exp(2πiθ)`.
pub fn root_of_unity(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * theta)
}

/// `mu^k` for an integer exponent, computed from the angle so that large
/// exponents do not accumulate rounding.
pub(crate) fn phase_power(theta: f64, k: i64) -> Complex64 {
    if k == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let turns = (theta * k as f64).rem_euclid(1.0);
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * turns)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AlgebraKind {
    SpherePQ,
    Sphere00,
    DiscQ,
    CrossedPlus,
    CrossedMinus,
    Torus,
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            AlgebraKind::SpherePQ => "SpherePQ",
            AlgebraKind::Sphere00 => "Sphere00",
            AlgebraKind::DiscQ => "DiscQ",
            AlgebraKind::CrossedPlus => "CrossedPlus",
            AlgebraKind::CrossedMinus => "CrossedMinus",
            AlgebraKind::Torus => "Torus",
        };
        f.write_str(s)
    }
}

/// Abstract generator letters. `X` is the first generator of the algebra
/// (`a`, `s`, `z`, `s+`, `t-`, `x`), `Y` the second (`b`, `t`, `u`, `v`, `y`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Letter {
    X,
    XStar,
    Y,
    YStar,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::X, Letter::XStar, Letter::Y, Letter::YStar];

    pub fn star(self) -> Letter {
        match self {
            Letter::X => Letter::XStar,
            Letter::XStar => Letter::X,
            Letter::Y => Letter::YStar,
            Letter::YStar => Letter::Y,
        }
    }

    pub fn is_star(self) -> bool {
        matches!(self, Letter::XStar | Letter::YStar)
    }

    pub fn base(self) -> Letter {
        match self {
            Letter::X | Letter::XStar => Letter::X,
            Letter::Y | Letter::YStar => Letter::Y,
        }
    }

    pub(crate) fn index(self) -> usize {
        match self {
            Letter::X => 0,
            Letter::XStar => 1,
            Letter::Y => 2,
            Letter::YStar => 3,
        }
    }

    /// `x_α` in the convention `x^α` for `α ≥ 0`, `(x*)^{-α}` otherwise.
    pub fn signed_power(self, exponent: i64) -> impl Iterator<Item = Letter> {
        let letter = if exponent >= 0 { self.base() } else { self.base().star() };
        std::iter::repeat(letter).take(exponent.unsigned_abs() as usize)
    }
}

/// Defect projections built from one generator `g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProjKind {
    /// `(1 - g g*)^n`
    Power(u32),
    /// `1 - g^k (g*)^k`
    Range(u32),
}

/// A factor of a canonical monomial: a generator letter or a defect
/// projection attached to one generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WordPiece {
    Gen(Letter),
    Proj { gen: Letter, kind: ProjKind },
}

impl WordPiece {
    pub fn adjoint(self) -> WordPiece {
        match self {
            WordPiece::Gen(l) => WordPiece::Gen(l.star()),
            proj => proj,
        }
    }
}

pub type Terms<M> = Vec<(Complex64, M)>;

/// A finitely presented *-algebra with a canonical monomial basis.
pub trait Presentation: Clone + PartialEq + fmt::Debug {
    type Monomial: Ord + Clone + fmt::Debug;

    fn kind(&self) -> AlgebraKind;

    fn unit_monomial(&self) -> Self::Monomial;

    /// Generators accepted by [`Element::normal_form`].
    fn letters(&self) -> &'static [Letter];

    fn letter_name(&self, letter: Letter) -> &'static str;

    /// The factorisation of a canonical monomial into word pieces, read left
    /// to right.
    fn word_pieces(&self, m: &Self::Monomial) -> Vec<WordPiece>;

    /// `m · piece`, reduced to canonical monomials.
    fn rmul_piece(&self, m: &Self::Monomial, piece: WordPiece) -> Terms<Self::Monomial>;

    fn format_monomial(&self, m: &Self::Monomial) -> String;

    /// `(p, q, θ)`, with parameters the algebra does not have set to zero.
    fn parameters(&self) -> (f64, f64, f64);

    fn mul_monomials(&self, a: &Self::Monomial, b: &Self::Monomial) -> Terms<Self::Monomial> {
        let mut acc: Terms<Self::Monomial> = vec![(Complex64::new(1.0, 0.0), a.clone())];
        for piece in self.word_pieces(b) {
            let mut next = Vec::new();
            for (c, m) in &acc {
                for (d, n) in self.rmul_piece(m, piece) {
                    next.push((c * d, n));
                }
            }
            acc = merge_terms(next);
        }
        acc
    }

    fn adjoint_monomial(&self, m: &Self::Monomial) -> Terms<Self::Monomial> {
        let mut acc: Terms<Self::Monomial> = vec![(Complex64::new(1.0, 0.0), self.unit_monomial())];
        for piece in self.word_pieces(m).into_iter().rev() {
            let mut next = Vec::new();
            for (c, n) in &acc {
                for (d, k) in self.rmul_piece(n, piece.adjoint()) {
                    next.push((c * d, k));
                }
            }
            acc = merge_terms(next);
        }
        acc
    }

    fn describe(&self) -> String {
        format!("{:?}", self)
    }
}

pub(crate) fn merge_terms<M: Ord>(terms: Terms<M>) -> Terms<M> {
    let mut map = std::collections::BTreeMap::new();
    for (c, m) in terms {
        *map.entry(m).or_insert(Complex64::new(0.0, 0.0)) += c;
    }
    map.into_iter().filter(|(_, c)| c.norm() >= ZERO_THRESHOLD).map(|(m, c)| (c, m)).collect()
}

/// A uniformly random word of length `0..=max_len` over the presentation's letters.
pub fn random_word<P: Presentation, R: rand::Rng>(pres: &P, rng: &mut R, max_len: usize) -> Vec<Letter> {
    let letters = pres.letters();
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| letters[rng.gen_range(0..letters.len())]).collect()
}

/// A random linear combination of `terms` random words with coefficients in
/// the unit square.
pub fn random_element<P: Presentation, R: rand::Rng>(pres: &P, rng: &mut R, terms: usize, max_len: usize) -> Element<P> {
    let mut acc = Element::zero(pres);
    for _ in 0..terms {
        let word = random_word(pres, rng, max_len);
        let c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let e = Element::normal_form(&word, pres).expect("letters drawn from the presentation");
        acc = acc.add(&e.scale(c));
    }
    acc
}
