use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::side::{self, SideKind, SideState};
use super::{phase_power, root_of_unity, AlgebraKind, Element, Letter, Presentation, ProjKind, Terms, WordPiece};
use crate::error::{Error, Result};

/// The quantum 3-sphere with parameters `p, q ∈ [0,1)` and angle `θ`.
///
/// Generators `a, b` (written `s, t` when `p = q = 0`) subject to
/// `a*a = p aa* + 1 - p`, `b*b = q bb* + 1 - q`, `(1-aa*)(1-bb*) = 0`,
/// `ab = μ ba`, `ab* = μ̄ b*a` with `μ = e^{2πiθ}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpherePresentation {
    p: f64,
    q: f64,
    theta: f64,
}

fn check_unit_interval(name: &str, v: f64) -> Result<()> {
    if !(0.0..1.0).contains(&v) {
        return Err(Error::InvalidParameter(format!("{name} = {v} not in [0,1)")));
    }
    Ok(())
}

impl SpherePresentation {
    pub fn new(p: f64, q: f64, theta: f64) -> Result<Self> {
        check_unit_interval("p", p)?;
        check_unit_interval("q", q)?;
        check_unit_interval("theta", theta)?;
        Ok(SpherePresentation { p, q, theta })
    }

    pub fn sphere00(theta: f64) -> Result<Self> {
        Self::new(0.0, 0.0, theta)
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn mu(&self) -> Complex64 {
        root_of_unity(self.theta)
    }

    pub(crate) fn a_side(&self) -> SideKind {
        SideKind::from_param(self.p)
    }

    pub(crate) fn b_side(&self) -> SideKind {
        SideKind::from_param(self.q)
    }

    pub fn is_valid(&self, m: &SphereMonomial) -> bool {
        let (sa, sb) = m.sides();
        side::is_valid(self.a_side(), sa) && side::is_valid(self.b_side(), sb)
    }

    pub fn element(&self, word: &[Letter]) -> Result<NCElement> {
        Element::normal_form(word, self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Tag {
    None,
    /// `A^m` when `p > 0`, `A_k = 1 - a^k a*^k` when `p = 0`.
    A(u32),
    /// `B^m` when `q > 0`, `B_k = 1 - b^k b*^k` when `q = 0`.
    B(u32),
}

/// `a_α b_β` times an optional tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SphereMonomial {
    pub alpha: i64,
    pub beta: i64,
    pub tag: Tag,
}

impl SphereMonomial {
    pub const UNIT: SphereMonomial = SphereMonomial { alpha: 0, beta: 0, tag: Tag::None };

    pub fn new(alpha: i64, beta: i64, tag: Tag) -> Self {
        let tag = match tag {
            Tag::A(0) | Tag::B(0) => Tag::None,
            t => t,
        };
        SphereMonomial { alpha, beta, tag }
    }

    fn sides(&self) -> (SideState, SideState) {
        let (ta, tb) = match self.tag {
            Tag::None => (0, 0),
            Tag::A(k) => (k, 0),
            Tag::B(k) => (0, k),
        };
        (SideState::new(self.alpha, ta), SideState::new(self.beta, tb))
    }

    fn from_sides(sa: SideState, sb: SideState) -> Option<Self> {
        let tag = match (sa.tag, sb.tag) {
            (0, 0) => Tag::None,
            (k, 0) => Tag::A(k),
            (0, k) => Tag::B(k),
            _ => return None,
        };
        Some(SphereMonomial { alpha: sa.exp, beta: sb.exp, tag })
    }
}

pub type NCElement = Element<SpherePresentation>;

impl Presentation for SpherePresentation {
    type Monomial = SphereMonomial;

    fn kind(&self) -> AlgebraKind {
        if self.p == 0.0 && self.q == 0.0 {
            AlgebraKind::Sphere00
        } else {
            AlgebraKind::SpherePQ
        }
    }

    fn unit_monomial(&self) -> SphereMonomial {
        SphereMonomial::UNIT
    }

    fn letters(&self) -> &'static [Letter] {
        &Letter::ALL
    }

    fn letter_name(&self, letter: Letter) -> &'static str {
        let sphere00 = self.kind() == AlgebraKind::Sphere00;
        match (letter, sphere00) {
            (Letter::X, false) => "a",
            (Letter::XStar, false) => "a*",
            (Letter::Y, false) => "b",
            (Letter::YStar, false) => "b*",
            (Letter::X, true) => "s",
            (Letter::XStar, true) => "s*",
            (Letter::Y, true) => "t",
            (Letter::YStar, true) => "t*",
        }
    }

    fn word_pieces(&self, m: &SphereMonomial) -> Vec<WordPiece> {
        let mut out: Vec<WordPiece> = Letter::X.signed_power(m.alpha).map(WordPiece::Gen).collect();
        out.extend(Letter::Y.signed_power(m.beta).map(WordPiece::Gen));
        let proj = |gen: Letter, kind: SideKind, k: u32| WordPiece::Proj {
            gen,
            kind: if kind.is_range() { ProjKind::Range(k) } else { ProjKind::Power(k) },
        };
        match m.tag {
            Tag::None => {}
            Tag::A(k) => out.push(proj(Letter::X, self.a_side(), k)),
            Tag::B(k) => out.push(proj(Letter::Y, self.b_side(), k)),
        }
        out
    }

    fn rmul_piece(&self, m: &SphereMonomial, piece: WordPiece) -> Terms<SphereMonomial> {
        let (sa, sb) = m.sides();
        let (on_a, results, phase) = match piece {
            WordPiece::Gen(l) if l.base() == Letter::X => {
                // b_β a = μ^{-β} a b_β,  b_β a* = μ^{β} a* b_β
                let phase = phase_power(self.theta, if l.is_star() { m.beta } else { -m.beta });
                (true, side::mul_gen(self.a_side(), sa, l.is_star()), phase)
            }
            WordPiece::Gen(l) => (false, side::mul_gen(self.b_side(), sb, l.is_star()), Complex64::new(1.0, 0.0)),
            WordPiece::Proj { gen, kind } => {
                let k = match kind {
                    ProjKind::Power(k) | ProjKind::Range(k) => k,
                };
                if gen.base() == Letter::X {
                    (true, side::mul_proj(self.a_side(), sa, k), Complex64::new(1.0, 0.0))
                } else {
                    (false, side::mul_proj(self.b_side(), sb, k), Complex64::new(1.0, 0.0))
                }
            }
        };
        results
            .into_iter()
            .filter_map(|(c, s)| {
                let mono = if on_a { SphereMonomial::from_sides(s, sb) } else { SphereMonomial::from_sides(sa, s) };
                mono.map(|mono| (phase * c, mono))
            })
            .collect()
    }

    fn parameters(&self) -> (f64, f64, f64) {
        (self.p, self.q, self.theta)
    }

    fn format_monomial(&self, m: &SphereMonomial) -> String {
        let sphere00 = self.kind() == AlgebraKind::Sphere00;
        let (x, y) = if sphere00 { ("s", "t") } else { ("a", "b") };
        let mut out = format!("{x}_{{{}}} {y}_{{{}}}", m.alpha, m.beta);
        let tag = |name: &str, kind: SideKind, k: u32| {
            if kind.is_range() {
                format!(" {name}_{{{k}}}")
            } else {
                format!(" {name}^{{{k}}}")
            }
        };
        match m.tag {
            Tag::None if !sphere00 && !self.a_side().is_range() => out.push_str(" A^{0}"),
            Tag::None => {}
            Tag::A(k) => out.push_str(&tag("A", self.a_side(), k)),
            Tag::B(k) => out.push_str(&tag("B", self.b_side(), k)),
        }
        out
    }
}

/// Inclusive bounds for basis enumeration: `|α| ≤ alpha`, `|β| ≤ beta`,
/// tag index `≤ tag`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BasisBounds {
    pub alpha: i64,
    pub beta: i64,
    pub tag: u32,
}

/// All valid basis monomials within the bounds, in canonical order.
pub fn basis_monomials(pres: &SpherePresentation, bounds: BasisBounds) -> Vec<SphereMonomial> {
    let mut out = Vec::new();
    for alpha in -bounds.alpha..=bounds.alpha {
        for beta in -bounds.beta..=bounds.beta {
            out.push(SphereMonomial::new(alpha, beta, Tag::None));
            for k in 1..=bounds.tag {
                for tag in [Tag::A(k), Tag::B(k)] {
                    let m = SphereMonomial::new(alpha, beta, tag);
                    if pres.is_valid(&m) {
                        out.push(m);
                    }
                }
            }
        }
    }
    out.sort();
    out
}
