//! Rewriting rules for one generator `x` together with its defect
//! projections, in the form `x_α D` with `D` a tag.
//!
//! Two regimes occur. When `x* x = r x x* + 1 - r` with `r > 0` the tag is a
//! power `D^n` of `D = 1 - x x*`, and `D x = r x D`. When `r = 0` the
//! generator is an isometry and the tag is one of the projections
//! `D_n = 1 - x^n (x*)^n`, which satisfy `D_n x = x D_{n-1}`,
//! `D_n x* = x* D_{n+1}` and `D_n D_k = D_{min(n,k)}`.

/// The parameter regime of one side.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) enum SideKind {
    Power(f64),
    Range,
}

impl SideKind {
    pub(crate) fn from_param(r: f64) -> Self {
        if r > 0.0 {
            SideKind::Power(r)
        } else {
            SideKind::Range
        }
    }

    pub(crate) fn is_range(self) -> bool {
        matches!(self, SideKind::Range)
    }
}

/// `x_α` times a tag; `tag == 0` means no projection.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct SideState {
    pub exp: i64,
    pub tag: u32,
}

impl SideState {
    pub(crate) fn new(exp: i64, tag: u32) -> Self {
        SideState { exp, tag }
    }
}

pub(crate) fn is_valid(kind: SideKind, s: SideState) -> bool {
    match kind {
        SideKind::Power(_) => true,
        SideKind::Range => s.tag == 0 || s.exp > -(s.tag as i64),
    }
}

/// `s · x` (or `s · x*` when `star`).
pub(crate) fn mul_gen(kind: SideKind, s: SideState, star: bool) -> Vec<(f64, SideState)> {
    let SideState { exp, tag } = s;
    match (kind, star) {
        (SideKind::Power(r), false) => {
            let c = r.powi(tag as i32);
            if exp >= 0 {
                vec![(c, SideState::new(exp + 1, tag))]
            } else {
                vec![(c, SideState::new(exp + 1, tag)), (-c * r, SideState::new(exp + 1, tag + 1))]
            }
        }
        (SideKind::Power(r), true) => {
            let c = r.powi(-(tag as i32));
            if exp <= 0 {
                vec![(c, SideState::new(exp - 1, tag))]
            } else {
                vec![(c, SideState::new(exp - 1, tag)), (-c, SideState::new(exp - 1, tag + 1))]
            }
        }
        (SideKind::Range, false) => match tag {
            1 => vec![],
            0 =>vec![(1.0, SideState::new(exp + 1, 0))],
            n => vec![(1.0, SideState::new(exp + 1, n - 1))],
        },
        (SideKind::Range, true) => {
            let mut out = vec![(1.0, SideState::new(exp - 1, if tag == 0 { 0 } else { tag + 1 }))];
            if exp > 0 {
                out.push((-1.0, SideState::new(exp - 1, 1)));
            }
            out
        }
    }
}

/// `s · D^k` (power regime) or `s · D_k` (range regime).
pub(crate) fn mul_proj(kind: SideKind, s: SideState, k: u32) -> Vec<(f64, SideState)> {
    match kind {
        SideKind::Power(_) => vec![(1.0, SideState::new(s.exp, s.tag + k))],
        SideKind::Range => {
            let j = if s.tag == 0 { k } else { s.tag.min(k) };
            let next = SideState::new(s.exp, j);
            if is_valid(kind, next) {
                vec![(1.0, next)]
            } else {
                vec![]
            }
        }
    }
}
