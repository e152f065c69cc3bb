//! Truncations of the Hilbert-space representations to finite boxes of basis
//! vectors, as sparse complex matrices.
//!
//! Every representation here acts by weighted shifts on a basis `e_k` or
//! `e_{m,n}`, so the image of a basis vector under a word can be simulated
//! exactly on unbounded indices and only then compared against the box.

mod eval;
mod linalg;
mod operator;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ncpoly::{phase_power, AlgebraKind, Letter, Presentation};

pub use eval::{
    build_generator, evaluate, evaluate_word, independence_rank, independence_rank_elements, norm_estimate,
    relation_residuals, NormEstimate,
};
pub use linalg::{numerical_rank, RANK_THRESHOLD};
pub use operator::TruncatedOperator;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RepKind {
    RhoLambda,
    RhoPrimeLambda,
    Rho,
    RhoPrime,
    DiscPi,
    RhoBar,
    RhoBarPrime,
}

impl RepKind {
    pub fn is_double(self) -> bool {
        !matches!(self, RepKind::RhoLambda | RepKind::RhoPrimeLambda | RepKind::DiscPi)
    }
}

/// Box of retained basis vectors: `n ∈ 0..n`, and `m ∈ -m..=m` for doubly
/// indexed bases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cutoff {
    pub n: usize,
    pub m: usize,
}

impl Cutoff {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::InvalidParameter(format!("cutoff ({n}, {m}) must be positive")));
        }
        Ok(Cutoff { n, m })
    }

    pub fn square(n: usize) -> Self {
        Cutoff { n: n.max(1), m: n.max(1) }
    }
}

/// A basis index on the unbounded lattice; single-index bases use `m = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct Idx {
    pub m: i64,
    pub n: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepSpec {
    pub kind: RepKind,
    pub lambda: Complex64,
    pub p: f64,
    pub q: f64,
    pub theta: f64,
}

impl RepSpec {
    pub fn new(kind: RepKind, p: f64, q: f64, theta: f64) -> Self {
        RepSpec { kind, lambda: Complex64::new(1.0, 0.0), p, q, theta }
    }

    pub fn with_lambda(mut self, lambda: Complex64) -> Result<Self> {
        if (lambda.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!("|lambda| = {} != 1", lambda.norm())));
        }
        self.lambda = lambda;
        Ok(self)
    }

    pub fn algebra_kinds(&self) -> &'static [AlgebraKind] {
        match self.kind {
            RepKind::DiscPi => &[AlgebraKind::DiscQ],
            RepKind::RhoBar => &[AlgebraKind::CrossedPlus],
            RepKind::RhoBarPrime => &[AlgebraKind::CrossedMinus],
            _ => &[AlgebraKind::SpherePQ, AlgebraKind::Sphere00],
        }
    }

    pub fn letters(&self) -> &'static [Letter] {
        match self.kind {
            RepKind::DiscPi => &[Letter::X, Letter::XStar],
            _ => &Letter::ALL,
        }
    }

    pub(crate) fn check_presentation<P: Presentation>(&self, pres: &P) -> Result<()> {
        let (p, q, theta) = pres.parameters();
        let params_match = match self.kind {
            RepKind::DiscPi => q == self.q,
            RepKind::RhoBar | RepKind::RhoBarPrime => theta == self.theta,
            _ => p == self.p && q == self.q && theta == self.theta,
        };
        if !self.algebra_kinds().contains(&pres.kind()) || !params_match {
            return Err(Error::RepresentationMismatch { rep: format!("{self:?}"), algebra: pres.describe() });
        }
        Ok(())
    }

    pub(crate) fn check_letter(&self, l: Letter) -> Result<()> {
        if !self.letters().contains(&l) {
            return Err(Error::InvalidLetter { letter: format!("{l:?}"), algebra: format!("{:?}", self.kind) });
        }
        Ok(())
    }

    fn mu(&self, k: i64) -> Complex64 {
        phase_power(self.theta, k)
    }

    /// The image of a basis vector under one generator, or `None` if it is
    /// annihilated.
    pub(crate) fn act(&self, l: Letter, idx: Idx) -> Option<(Complex64, Idx)> {
        let Idx { m, n } = idx;
        let up = |r: f64| Some((Complex64::new((1.0 - r.powi(n as i32 + 1)).sqrt(), 0.0), Idx { m, n: n + 1 }));
        let down = |r: f64| {
            (n > 0).then(|| (Complex64::new((1.0 - r.powi(n as i32)).sqrt(), 0.0), Idx { m, n: n - 1 }))
        };
        let phased = |c: Option<(Complex64, Idx)>, ph: Complex64| c.map(|(v, i)| (v * ph, i));
        let diag = |c: Complex64| Some((c, idx));
        let shift_m = |d: i64| Some((Complex64::new(1.0, 0.0), Idx { m: m + d, n }));
        let lam = self.lambda;
        match (self.kind, l) {
            (RepKind::RhoLambda, Letter::X) => up(self.p),
            (RepKind::RhoLambda, Letter::XStar) => down(self.p),
            (RepKind::RhoLambda, Letter::Y) => diag(lam * self.mu(-n)),
            (RepKind::RhoLambda, Letter::YStar) => diag(lam.conj() * self.mu(n)),
            (RepKind::RhoPrimeLambda, Letter::X) => diag(lam * self.mu(n)),
            (RepKind::RhoPrimeLambda, Letter::XStar) => diag(lam.conj() * self.mu(-n)),
            (RepKind::RhoPrimeLambda, Letter::Y) => up(self.q),
            (RepKind::RhoPrimeLambda, Letter::YStar) => down(self.q),
            (RepKind::Rho, Letter::X) => phased(up(self.p), self.mu(m)),
            (RepKind::Rho, Letter::XStar) => phased(down(self.p), self.mu(-m)),
            (RepKind::Rho, Letter::Y) => shift_m(1),
            (RepKind::Rho, Letter::YStar) => shift_m(-1),
            (RepKind::RhoPrime, Letter::X) => shift_m(1),
            (RepKind::RhoPrime, Letter::XStar) => shift_m(-1),
            (RepKind::RhoPrime, Letter::Y) => phased(up(self.q), self.mu(-m)),
            (RepKind::RhoPrime, Letter::YStar) => phased(down(self.q), self.mu(m)),
            (RepKind::DiscPi, Letter::X) => up(self.q),
            (RepKind::DiscPi, Letter::XStar) => down(self.q),
            (RepKind::DiscPi, _) => None,
            (RepKind::RhoBar, Letter::X) => phased(up(0.0), self.mu(m)),
            (RepKind::RhoBar, Letter::XStar) => phased(down(0.0), self.mu(-m)),
            (RepKind::RhoBar, Letter::Y) => shift_m(1),
            (RepKind::RhoBar, Letter::YStar) => shift_m(-1),
            (RepKind::RhoBarPrime, Letter::X) => phased(up(0.0), self.mu(-m)),
            (RepKind::RhoBarPrime, Letter::XStar) => phased(down(0.0), self.mu(m)),
            (RepKind::RhoBarPrime, Letter::Y) => shift_m(1),
            (RepKind::RhoBarPrime, Letter::YStar) => shift_m(-1),
        }
    }

    /// Applies a word (leftmost letter acts last) to a basis vector.
    pub(crate) fn act_word(&self, word: &[Letter], idx: Idx) -> Option<(Complex64, Idx)> {
        let mut state = (Complex64::new(1.0, 0.0), idx);
        for &l in word.iter().rev() {
            let (c, next) = self.act(l, state.1)?;
            state = (state.0 * c, next);
        }
        Some(state)
    }

    pub(crate) fn layout(&self, cutoff: Cutoff) -> Layout {
        Layout { double: self.kind.is_double(), cutoff }
    }
}

/// Flattening of the box: `(m + M)·N + n` for doubly indexed bases.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Layout {
    pub double: bool,
    pub cutoff: Cutoff,
}

impl Layout {
    pub fn dim(&self) -> usize {
        if self.double {
            (2 * self.cutoff.m + 1) * self.cutoff.n
        } else {
            self.cutoff.n
        }
    }

    pub fn flat(&self, idx: Idx) -> Option<usize> {
        let n_max = self.cutoff.n as i64;
        if idx.n < 0 || idx.n >= n_max {
            return None;
        }
        if self.double {
            let m_max = self.cutoff.m as i64;
            if idx.m.abs() > m_max {
                return None;
            }
            Some(((idx.m + m_max) * n_max + idx.n) as usize)
        } else if idx.m == 0 {
            Some(idx.n as usize)
        } else {
            None
        }
    }

    pub fn index(&self, flat: usize) -> Idx {
        let n_max = self.cutoff.n;
        if self.double {
            Idx { m: (flat / n_max) as i64 - self.cutoff.m as i64, n: (flat % n_max) as i64 }
        } else {
            Idx { m: 0, n: flat as i64 }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout_roundtrip() {
        let layout = Layout { double: true, cutoff: Cutoff::new(5, 3).unwrap() };
        assert_eq!(layout.dim(), 35);
        for j in 0..layout.dim() {
            assert_eq!(layout.flat(layout.index(j)), Some(j));
        }
        assert_eq!(layout.flat(Idx { m: -3, n: 0 }), Some(0));
        assert_eq!(layout.flat(Idx { m: 4, n: 0 }), None);
    }

    #[test]
    fn rho_a_weight() {
        let spec = RepSpec::new(RepKind::Rho, 0.5, 0.5, 0.3);
        let (c, idx) = spec.act(Letter::X, Idx { m: 0, n: 1 }).unwrap();
        assert!((c.re - 0.75f64.sqrt()).abs() < 1e-15);
        assert_eq!(idx, Idx { m: 0, n: 2 });
        assert!(spec.act(Letter::XStar, Idx { m: 2, n: 0 }).is_none());
    }
}
