use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::side::{self, SideKind, SideState};
use super::{AlgebraKind, Element, Letter, Presentation, ProjKind, Terms, WordPiece};
use crate::error::{Error, Result};

/// The quantum disc: one generator `z` with `z*z - q zz* = 1 - q`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiscPresentation {
    q: f64,
}

/// `z_α Z^k` (or `z_α Z_k` at `q = 0`); `tag == 0` is the plain monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DiscMonomial {
    pub alpha: i64,
    pub tag: u32,
}

pub type DiscElement = Element<DiscPresentation>;

impl DiscPresentation {
    pub fn new(q: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&q) {
            return Err(Error::InvalidParameter(format!("q = {q} not in [0,1)")));
        }
        Ok(DiscPresentation { q })
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    fn side(&self) -> SideKind {
        SideKind::from_param(self.q)
    }

    pub fn element(&self, word: &[Letter]) -> Result<DiscElement> {
        Element::normal_form(word, self)
    }

    /// Valid monomials with `|α| ≤ alpha` and `k ≤ tag`.
    pub fn basis_monomials(&self, alpha: i64, tag: u32) -> Vec<DiscMonomial> {
        let mut out = Vec::new();
        for a in -alpha..=alpha {
            for k in 0..=tag {
                if side::is_valid(self.side(), SideState::new(a, k)) {
                    out.push(DiscMonomial { alpha: a, tag: k });
                }
            }
        }
        out
    }
}

impl Presentation for DiscPresentation {
    type Monomial = DiscMonomial;

    fn kind(&self) -> AlgebraKind {
        AlgebraKind::DiscQ
    }

    fn unit_monomial(&self) -> DiscMonomial {
        DiscMonomial { alpha: 0, tag: 0 }
    }

    fn letters(&self) -> &'static [Letter] {
        &[Letter::X, Letter::XStar]
    }

    fn letter_name(&self, letter: Letter) -> &'static str {
        match letter {
            Letter::X => "z",
            Letter::XStar => "z*",
            Letter::Y => "?",
            Letter::YStar => "?*",
        }
    }

    fn word_pieces(&self, m: &DiscMonomial) -> Vec<WordPiece> {
        let mut out: Vec<WordPiece> = Letter::X.signed_power(m.alpha).map(WordPiece::Gen).collect();
        if m.tag > 0 {
            let kind = if self.side().is_range() { ProjKind::Range(m.tag) } else { ProjKind::Power(m.tag) };
            out.push(WordPiece::Proj { gen: Letter::X, kind });
        }
        out
    }

    fn rmul_piece(&self, m: &DiscMonomial, piece: WordPiece) -> Terms<DiscMonomial> {
        let s = SideState::new(m.alpha, m.tag);
        let results = match piece {
            WordPiece::Gen(l) => side::mul_gen(self.side(), s, l.is_star()),
            WordPiece::Proj { kind: ProjKind::Power(k) | ProjKind::Range(k), .. } => {
                side::mul_proj(self.side(), s, k)
            }
        };
        results
            .into_iter()
            .map(|(c, s)| (Complex64::new(c, 0.0), DiscMonomial { alpha: s.exp, tag: s.tag }))
            .collect()
    }

    fn parameters(&self) -> (f64, f64, f64) {
        (0.0, self.q, 0.0)
    }

    fn format_monomial(&self, m: &DiscMonomial) -> String {
        if self.side().is_range() {
            if m.tag == 0 {
                format!("z_{{{}}}", m.alpha)
            } else {
                format!("z_{{{}}} Z_{{{}}}", m.alpha, m.tag)
            }
        } else {
            format!("z_{{{}}} Z^{{{}}}", m.alpha, m.tag)
        }
    }
}
