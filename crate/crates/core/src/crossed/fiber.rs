use num_complex::Complex64;

use super::algebra::{CrossedElement, CrossedPresentation, CrossedSide, TorusElement, TorusPresentation};
use crate::error::{Error, Result};
use crate::ncpoly::{AlgebraKind, AlgebraOps, Element, Letter, NCElement, Presentation, StarAlgebra};

fn torus_of(pres: &CrossedPresentation) -> TorusPresentation {
    TorusPresentation::new(pres.theta()).expect("theta already validated")
}

fn torus_letter(torus: &TorusPresentation, l: Letter) -> TorusElement {
    Element::generator(torus, l).expect("torus accepts all letters")
}

fn require_side(e: &CrossedElement, side: CrossedSide) -> Result<()> {
    if e.presentation().side() != side {
        return Err(Error::PresentationMismatch {
            left: format!("{side:?}"),
            right: e.presentation().describe(),
        });
    }
    Ok(())
}

/// Symbol map of the plus side: `s₊ ↦ x`, `u ↦ y`.
pub fn pi1(e: &CrossedElement) -> Result<TorusElement> {
    require_side(e, CrossedSide::Plus)?;
    let torus = torus_of(e.presentation());
    Ok(e.map_into(&Element::one(&torus), |l| torus_letter(&torus, l)))
}

/// Symbol map of the minus side: `t₋ ↦ y`, `v ↦ x`.
pub fn pi2(e: &CrossedElement) -> Result<TorusElement> {
    require_side(e, CrossedSide::Minus)?;
    let torus = torus_of(e.presentation());
    let swap = |l: Letter| match l {
        Letter::X => Letter::Y,
        Letter::XStar => Letter::YStar,
        Letter::Y => Letter::X,
        Letter::YStar => Letter::XStar,
    };
    Ok(e.map_into(&Element::one(&torus), |l| torus_letter(&torus, swap(l))))
}

/// `s₊ ↦ t₋`, `u ↦ v*`.
pub fn plus_to_minus(e: &CrossedElement) -> Result<CrossedElement> {
    require_side(e, CrossedSide::Plus)?;
    let minus = CrossedPresentation::minus(e.presentation().theta())?;
    let image = |l: Letter| {
        let target = match l {
            Letter::Y => Letter::YStar,
            Letter::YStar => Letter::Y,
            x => x,
        };
        Element::generator(&minus, target).expect("crossed accepts all letters")
    };
    Ok(e.map_into(&Element::one(&minus), image))
}

/// An element of the direct sum of the two crossed products; a member of
/// the fiber product when both symbols agree.
#[derive(Clone, Debug, PartialEq)]
pub struct FiberPair {
    pub f1: CrossedElement,
    pub f2: CrossedElement,
}

impl FiberPair {
    /// Builds a pair, rejecting it unless the two symbols coincide.
    pub fn new(f1: CrossedElement, f2: CrossedElement) -> Result<Self> {
        let pair = FiberPair { f1, f2 };
        let defect = pair.fiber_defect()?;
        if defect > 0.0 {
            return Err(Error::FiberViolation(format!("symbols differ by {defect:e}")));
        }
        Ok(pair)
    }

    pub(crate) fn unchecked(f1: CrossedElement, f2: CrossedElement) -> Self {
        FiberPair { f1, f2 }
    }

    pub fn one(theta: f64) -> Result<Self> {
        Ok(FiberPair {
            f1: Element::one(&CrossedPresentation::plus(theta)?),
            f2: Element::one(&CrossedPresentation::minus(theta)?),
        })
    }

    /// Largest coefficient of `π₁(f1) - π₂(f2)`.
    pub fn fiber_defect(&self) -> Result<f64> {
        let d = pi1(&self.f1)?.try_add(&pi2(&self.f2)?.scale(Complex64::new(-1.0, 0.0)))?;
        Ok(d.max_abs())
    }

    pub fn fiber_check(&self) -> bool {
        matches!(self.fiber_defect(), Ok(d) if d == 0.0)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.f1.approx_eq(&other.f1, tol) && self.f2.approx_eq(&other.f2, tol)
    }
}

impl AlgebraOps for FiberPair {
    fn mul(&self, rhs: &Self) -> Self {
        FiberPair { f1: self.f1.mul(&rhs.f1), f2: self.f2.mul(&rhs.f2) }
    }

    fn add(&self, rhs: &Self) -> Self {
        FiberPair { f1: self.f1.add(&rhs.f1), f2: self.f2.add(&rhs.f2) }
    }

    fn scale(&self, c: Complex64) -> Self {
        FiberPair { f1: self.f1.scale(c), f2: self.f2.scale(c) }
    }
}

impl StarAlgebra for FiberPair {
    fn adjoint(&self) -> Self {
        FiberPair { f1: self.f1.adjoint(), f2: self.f2.adjoint() }
    }

    fn is_negligible(&self, tol: f64) -> bool {
        self.f1.max_abs() <= tol && self.f2.max_abs() <= tol
    }
}

fn require_sphere00(e: &NCElement) -> Result<()> {
    if e.presentation().kind() != AlgebraKind::Sphere00 {
        return Err(Error::PresentationMismatch {
            left: AlgebraKind::Sphere00.to_string(),
            right: e.presentation().describe(),
        });
    }
    Ok(())
}

/// `h(s) = (s₊, v)`, `h(t) = (u, t₋)`.
pub fn h_image(e: &NCElement) -> Result<FiberPair> {
    require_sphere00(e)?;
    let theta = e.presentation().theta();
    let plus = CrossedPresentation::plus(theta)?;
    let minus = CrossedPresentation::minus(theta)?;
    let image = |l: Letter| {
        let (first, second) = match l {
            Letter::X => (Letter::X, Letter::Y),
            Letter::XStar => (Letter::XStar, Letter::YStar),
            Letter::Y => (Letter::Y, Letter::X),
            Letter::YStar => (Letter::YStar, Letter::XStar),
        };
        FiberPair::unchecked(
            Element::generator(&plus, first).expect("crossed accepts all letters"),
            Element::generator(&minus, second).expect("crossed accepts all letters"),
        )
    };
    let pair = e.map_into(&FiberPair::one(theta)?, image);
    let defect = pair.fiber_defect()?;
    if defect > 0.0 {
        return Err(Error::FiberViolation(format!("h produced symbols differing by {defect:e}")));
    }
    Ok(pair)
}

pub fn h1(e: &NCElement) -> Result<CrossedElement> {
    Ok(h_image(e)?.f1)
}

pub fn h2(e: &NCElement) -> Result<CrossedElement> {
    Ok(h_image(e)?.f2)
}

/// `φ_d = π₁ ∘ pr₁`.
pub fn phi_d(pair: &FiberPair) -> Result<TorusElement> {
    pi1(&pair.f1)
}

/// `φ_c = φ_d ∘ h`.
pub fn phi_c(e: &NCElement) -> Result<TorusElement> {
    phi_d(&h_image(e)?)
}

/// The quotient map `s ↦ x`, `t ↦ y` written directly on generators.
pub fn phi_c_direct(e: &NCElement) -> Result<TorusElement> {
    require_sphere00(e)?;
    let torus = TorusPresentation::new(e.presentation().theta())?;
    Ok(e.map_into(&Element::one(&torus), |l| torus_letter(&torus, l)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncpoly::SpherePresentation;
    use Letter::*;

    #[test]
    fn h_on_generators() {
        let sphere = SpherePresentation::sphere00(0.3).unwrap();
        let s = sphere.element(&[X]).unwrap();
        let h = h_image(&s).unwrap();
        let plus = CrossedPresentation::plus(0.3).unwrap();
        let minus = CrossedPresentation::minus(0.3).unwrap();
        assert_eq!(h.f1, plus.element(&[X]).unwrap());
        assert_eq!(h.f2, minus.element(&[Y]).unwrap());
        assert!(h.fiber_check());
    }

    #[test]
    fn h_of_projection_kills_minus_side() {
        let sphere = SpherePresentation::sphere00(0.3).unwrap();
        let a1 = crate::ncpoly::range_projection(&sphere, X, 1).unwrap();
        let h = h_image(&a1).unwrap();
        assert!(h.f2.is_empty());
        assert!(pi1(&h.f1).unwrap().is_empty());
    }

    #[test]
    fn symbol_of_u_squared_s() {
        let plus = CrossedPresentation::plus(0.25).unwrap();
        let torus = TorusPresentation::new(0.25).unwrap();
        let e = plus.element(&[Y, Y, X]).unwrap();
        assert_eq!(pi1(&e).unwrap(), torus.element(&[Y, Y, X]).unwrap());
    }

    #[test]
    fn fiber_pair_rejects_mismatch() {
        let plus = CrossedPresentation::plus(0.25).unwrap();
        let minus = CrossedPresentation::minus(0.25).unwrap();
        let bad = FiberPair::new(plus.element(&[X]).unwrap(), minus.element(&[X]).unwrap());
        assert!(matches!(bad, Err(Error::FiberViolation(_))));
    }

    #[test]
    fn phi_c_matches_direct_quotient() {
        let sphere = SpherePresentation::sphere00(0.41).unwrap();
        let e = sphere.element(&[X, Y, YStar, X, XStar, Y]).unwrap();
        assert!(phi_c(&e).unwrap().approx_eq(&phi_c_direct(&e).unwrap(), 1e-12));
    }
}
