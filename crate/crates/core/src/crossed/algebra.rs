use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ncpoly::{phase_power, AlgebraKind, Element, Letter, Presentation, Terms, WordPiece};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CrossedSide {
    Plus,
    Minus,
}

/// Toeplitz algebra crossed by the rotation through `±θ`.
///
/// Plus side: isometry `s₊` and unitary `u` with `s₊u = μ us₊`.
/// Minus side: isometry `t₋` and unitary `v` with `t₋v = μ̄ vt₋`.
/// Letter `X` is the isometry, `Y` the unitary.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossedPresentation {
    side: CrossedSide,
    theta: f64,
}

/// `u^m s₊^j (s₊*)^l` (resp. `v^m t₋^j (t₋*)^l`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CrossedMonomial {
    pub m: i64,
    pub j: u32,
    pub l: u32,
}

impl CrossedMonomial {
    pub fn new(m: i64, j: u32, l: u32) -> Self {
        CrossedMonomial { m, j, l }
    }
}

pub type CrossedElement = Element<CrossedPresentation>;

fn check_theta(theta: f64) -> Result<()> {
    if !(0.0..1.0).contains(&theta) {
        return Err(Error::InvalidParameter(format!("theta = {theta} not in [0,1)")));
    }
    Ok(())
}

impl CrossedPresentation {
    pub fn new(side: CrossedSide, theta: f64) -> Result<Self> {
        check_theta(theta)?;
        Ok(CrossedPresentation { side, theta })
    }

    pub fn plus(theta: f64) -> Result<Self> {
        Self::new(CrossedSide::Plus, theta)
    }

    pub fn minus(theta: f64) -> Result<Self> {
        Self::new(CrossedSide::Minus, theta)
    }

    pub fn side(&self) -> CrossedSide {
        self.side
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn element(&self, word: &[Letter]) -> Result<CrossedElement> {
        Element::normal_form(word, self)
    }

    /// Phase picked up when `u` (resp. `v`) moves left across `s^j s*^l`.
    fn phase(&self, shift: i64) -> Complex64 {
        match self.side {
            CrossedSide::Plus => phase_power(self.theta, shift),
            CrossedSide::Minus => phase_power(self.theta, -shift),
        }
    }
}

impl Presentation for CrossedPresentation {
    type Monomial = CrossedMonomial;

    fn kind(&self) -> AlgebraKind {
        match self.side {
            CrossedSide::Plus => AlgebraKind::CrossedPlus,
            CrossedSide::Minus => AlgebraKind::CrossedMinus,
        }
    }

    fn unit_monomial(&self) -> CrossedMonomial {
        CrossedMonomial::new(0, 0, 0)
    }

    fn letters(&self) -> &'static [Letter] {
        &Letter::ALL
    }

    fn letter_name(&self, letter: Letter) -> &'static str {
        match (self.side, letter) {
            (CrossedSide::Plus, Letter::X) => "s+",
            (CrossedSide::Plus, Letter::XStar) => "s+*",
            (CrossedSide::Plus, Letter::Y) => "u",
            (CrossedSide::Plus, Letter::YStar) => "u*",
            (CrossedSide::Minus, Letter::X) => "t-",
            (CrossedSide::Minus, Letter::XStar) => "t-*",
            (CrossedSide::Minus, Letter::Y) => "v",
            (CrossedSide::Minus, Letter::YStar) => "v*",
        }
    }

    fn word_pieces(&self, mono: &CrossedMonomial) -> Vec<WordPiece> {
        let mut out: Vec<WordPiece> = Letter::Y.signed_power(mono.m).map(WordPiece::Gen).collect();
        out.extend(std::iter::repeat(WordPiece::Gen(Letter::X)).take(mono.j as usize));
        out.extend(std::iter::repeat(WordPiece::Gen(Letter::XStar)).take(mono.l as usize));
        out
    }

    fn rmul_piece(&self, mono: &CrossedMonomial, piece: WordPiece) -> Terms<CrossedMonomial> {
        let CrossedMonomial { m, j, l } = *mono;
        let one = Complex64::new(1.0, 0.0);
        match piece {
            WordPiece::Gen(Letter::X) if l > 0 => vec![(one, CrossedMonomial::new(m, j, l - 1))],
            WordPiece::Gen(Letter::X) => vec![(one, CrossedMonomial::new(m, j + 1, 0))],
            WordPiece::Gen(Letter::XStar) => vec![(one, CrossedMonomial::new(m, j, l + 1))],
            WordPiece::Gen(Letter::Y) => {
                vec![(self.phase(j as i64 - l as i64), CrossedMonomial::new(m + 1, j, l))]
            }
            WordPiece::Gen(Letter::YStar) => {
                vec![(self.phase(l as i64 - j as i64), CrossedMonomial::new(m - 1, j, l))]
            }
            WordPiece::Proj { .. } => unreachable!("crossed monomials carry no projection tags"),
        }
    }

    fn format_monomial(&self, mono: &CrossedMonomial) -> String {
        let (y, x) = match self.side {
            CrossedSide::Plus => ("u", "s+"),
            CrossedSide::Minus => ("v", "t-"),
        };
        format!("{y}^{} {x}^{} {x}*^{}", mono.m, mono.j, mono.l)
    }

    fn parameters(&self) -> (f64, f64, f64) {
        (0.0, 0.0, self.theta)
    }
}

/// Noncommutative torus: unitaries `x, y` with `xy = μ yx`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TorusPresentation {
    theta: f64,
}

/// `x^m y^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TorusMonomial {
    pub m: i64,
    pub n: i64,
}

pub type TorusElement = Element<TorusPresentation>;

impl TorusPresentation {
    pub fn new(theta: f64) -> Result<Self> {
        check_theta(theta)?;
        Ok(TorusPresentation { theta })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn element(&self, word: &[Letter]) -> Result<TorusElement> {
        Element::normal_form(word, self)
    }
}

impl Presentation for TorusPresentation {
    type Monomial = TorusMonomial;

    fn kind(&self) -> AlgebraKind {
        AlgebraKind::Torus
    }

    fn unit_monomial(&self) -> TorusMonomial {
        TorusMonomial { m: 0, n: 0 }
    }

    fn letters(&self) -> &'static [Letter] {
        &Letter::ALL
    }

    fn letter_name(&self, letter: Letter) -> &'static str {
        match letter {
            Letter::X => "x",
            Letter::XStar => "x*",
            Letter::Y => "y",
            Letter::YStar => "y*",
        }
    }

    fn word_pieces(&self, mono: &TorusMonomial) -> Vec<WordPiece> {
        Letter::X
            .signed_power(mono.m)
            .chain(Letter::Y.signed_power(mono.n))
            .map(WordPiece::Gen)
            .collect()
    }

    fn rmul_piece(&self, mono: &TorusMonomial, piece: WordPiece) -> Terms<TorusMonomial> {
        let TorusMonomial { m, n } = *mono;
        let one = Complex64::new(1.0, 0.0);
        match piece {
            // y^n x = μ^{-n} x y^n
            WordPiece::Gen(Letter::X) => vec![(phase_power(self.theta, -n), TorusMonomial { m: m + 1, n })],
            WordPiece::Gen(Letter::XStar) => vec![(phase_power(self.theta, n), TorusMonomial { m: m - 1, n })],
            WordPiece::Gen(Letter::Y) => vec![(one, TorusMonomial { m, n: n + 1 })],
            WordPiece::Gen(Letter::YStar) => vec![(one, TorusMonomial { m, n: n - 1 })],
            WordPiece::Proj { .. } => unreachable!("torus monomials carry no projection tags"),
        }
    }

    fn format_monomial(&self, mono: &TorusMonomial) -> String {
        format!("x^{} y^{}", mono.m, mono.n)
    }

    fn parameters(&self) -> (f64, f64, f64) {
        (0.0, 0.0, self.theta)
    }
}
