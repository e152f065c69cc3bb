use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use super::{AlgebraKind, AlgebraOps, Element, Letter, NCElement, Presentation, SpherePresentation, ZERO_THRESHOLD};
use crate::error::{Error, Result};

/// Named projection identities of the `p = q = 0` sphere.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Identity {
    TCommutesAk,
    AkShift,
    AkAdjointShift,
    AkRecursion,
    SCommutesBk,
    BkShift,
    BkAdjointShift,
    BkRecursion,
    AkBlZero,
}

impl Identity {
    pub const ALL: [Identity; 9] = [
        Identity::TCommutesAk,
        Identity::AkShift,
        Identity::AkAdjointShift,
        Identity::AkRecursion,
        Identity::SCommutesBk,
        Identity::BkShift,
        Identity::BkAdjointShift,
        Identity::BkRecursion,
        Identity::AkBlZero,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::TCommutesAk => "[t,A_k]=0",
            Identity::AkShift => "A_{k+1}s=sA_k",
            Identity::AkAdjointShift => "s*A_{k+1}=A_ks*",
            Identity::AkRecursion => "A_{k+1}=sA_ks*+A_1",
            Identity::SCommutesBk => "[s,B_k]=0",
            Identity::BkShift => "B_{k+1}t=tB_k",
            Identity::BkAdjointShift => "t*B_{k+1}=B_kt*",
            Identity::BkRecursion => "B_{k+1}=tB_kt*+B_1",
            Identity::AkBlZero => "AkBl_zero",
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::UnknownIdentity(s.to_string()))
    }
}

/// `1 - g^k (g*)^k` computed from the word, for `g` one of the generators.
pub fn range_projection(pres: &SpherePresentation, gen: Letter, k: u32) -> Result<NCElement> {
    let g = gen.base();
    let word: Vec<Letter> = std::iter::repeat(g)
        .take(k as usize)
        .chain(std::iter::repeat(g.star()).take(k as usize))
        .collect();
    let power = Element::normal_form(&word, pres)?;
    Ok(Element::one(pres).sub(&power))
}

/// Checks the identity for every index `1 ≤ k, l ≤ range`.
pub fn check_identity(pres: &SpherePresentation, id: Identity, range: u32) -> Result<bool> {
    if pres.kind() != AlgebraKind::Sphere00 {
        return Err(Error::InvalidParameter(format!("identity {id} needs the p = q = 0 sphere")));
    }
    if range < 1 {
        return Err(Error::InvalidParameter("range must be at least 1".into()));
    }
    let gen = |l: Letter| Element::generator(pres, l);
    let (s, ss, t, ts) = (gen(Letter::X)?, gen(Letter::XStar)?, gen(Letter::Y)?, gen(Letter::YStar)?);
    let proj_a = |k| range_projection(pres, Letter::X, k);
    let proj_b = |k| range_projection(pres, Letter::Y, k);
    let zero = |e: &NCElement| e.max_abs() < ZERO_THRESHOLD;
    let same = |x: &NCElement, y: &NCElement| zero(&x.sub(y));

    for k in 1..=range {
        let ok = match id {
            Identity::TCommutesAk => {
                let a = proj_a(k)?;
                same(&t.mul(&a), &a.mul(&t))
            }
            Identity::SCommutesBk => {
                let b = proj_b(k)?;
                same(&s.mul(&b), &b.mul(&s))
            }
            Identity::AkShift => same(&proj_a(k + 1)?.mul(&s), &s.mul(&proj_a(k)?)),
            Identity::BkShift => same(&proj_b(k + 1)?.mul(&t), &t.mul(&proj_b(k)?)),
            Identity::AkAdjointShift => same(&ss.mul(&proj_a(k + 1)?), &proj_a(k)?.mul(&ss)),
            Identity::BkAdjointShift => same(&ts.mul(&proj_b(k + 1)?), &proj_b(k)?.mul(&ts)),
            Identity::AkRecursion => {
                let rhs = s.mul(&proj_a(k)?).mul(&ss).add(&proj_a(1)?);
                same(&proj_a(k + 1)?, &rhs)
            }
            Identity::BkRecursion => {
                let rhs = t.mul(&proj_b(k)?).mul(&ts).add(&proj_b(1)?);
                same(&proj_b(k + 1)?, &rhs)
            }
            Identity::AkBlZero => {
                let a = proj_a(k)?;
                let mut all = true;
                for l in 1..=range {
                    all &= zero(&a.mul(&proj_b(l)?));
                }
                all
            }
        };
        if !ok {
            return Ok(false);
        }
    }
    // Guard against a vacuous pass: the projections themselves must be nonzero.
    let nonzero = !zero(&proj_a(1)?) && !zero(&proj_b(1)?) && !zero(&Element::scalar(pres, Complex64::new(1.0, 0.0)));
    Ok(nonzero)
}
