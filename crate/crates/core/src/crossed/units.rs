use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::algebra::{CrossedElement, CrossedPresentation};
use super::fiber::FiberPair;
use crate::error::Result;
use crate::ncpoly::{range_projection, AlgebraOps, Element, Letter, NCElement, SpherePresentation, StarAlgebra};

/// Which copy of `K ⊗ C(S¹)` an element lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Summand {
    /// `K ⊗ C(S¹)`: entries `E_ij ⊗ w^n`.
    Left,
    /// `C(S¹) ⊗ K`: entries `w^n ⊗ E_ij`.
    Right,
}

/// Finite combination of matrix units tensored with powers of the
/// circle generator `w`.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixUnitElement {
    pub summand: Summand,
    pub entries: BTreeMap<(u32, u32, i64), Complex64>,
}

impl MatrixUnitElement {
    pub fn unit(summand: Summand, i: u32, j: u32, n: i64) -> Self {
        let mut entries = BTreeMap::new();
        entries.insert((i, j, n), Complex64::new(1.0, 0.0));
        MatrixUnitElement { summand, entries }
    }
}

fn power(word: &mut Vec<Letter>, l: Letter, k: u32) {
    word.extend(std::iter::repeat(l).take(k as usize));
}

/// `j_c`: `E_ij ⊗ w^n ↦ s^i A₁ t_n (s*)^j` on the left summand and
/// `w^n ⊗ E_ij ↦ t^i B₁ s_n (t*)^j` on the right one.
pub fn jc_image(e: &MatrixUnitElement, theta: f64) -> Result<NCElement> {
    let pres = SpherePresentation::sphere00(theta)?;
    let (x, y) = match e.summand {
        Summand::Left => (Letter::X, Letter::Y),
        Summand::Right => (Letter::Y, Letter::X),
    };
    let proj = range_projection(&pres, x, 1)?;
    let mut acc = Element::zero(&pres);
    for (&(i, j, n), &c) in &e.entries {
        let mut left = Vec::new();
        power(&mut left, x, i);
        let mut right: Vec<Letter> = y.signed_power(n).collect();
        power(&mut right, x.star(), j);
        let term = pres.element(&left)?.mul(&proj).mul(&pres.element(&right)?);
        acc = acc.add(&term.scale(c));
    }
    Ok(acc)
}

/// `j_d`: left `E_ij ⊗ w^n ↦ (s₊^i (1 - s₊s₊*) u_n (s₊*)^j, 0)`, right
/// `w^n ⊗ E_ij ↦ (0, t₋^i (1 - t₋t₋*) v_n (t₋*)^j)`.
pub fn jd_image(e: &MatrixUnitElement, theta: f64) -> Result<FiberPair> {
    let plus = CrossedPresentation::plus(theta)?;
    let minus = CrossedPresentation::minus(theta)?;
    let side = match e.summand {
        Summand::Left => &plus,
        Summand::Right => &minus,
    };
    let defect = Element::one(side).sub(&side.element(&[Letter::X, Letter::XStar])?);
    let mut acc = Element::zero(side);
    for (&(i, j, n), &c) in &e.entries {
        let mut left = Vec::new();
        power(&mut left, Letter::X, i);
        let mut right: Vec<Letter> = Letter::Y.signed_power(n).collect();
        power(&mut right, Letter::XStar, j);
        let term = side.element(&left)?.mul(&defect).mul(&side.element(&right)?);
        acc = acc.add(&term.scale(c));
    }
    Ok(match e.summand {
        Summand::Left => FiberPair::unchecked(acc, Element::zero(&minus)),
        Summand::Right => FiberPair::unchecked(Element::zero(&plus), acc),
    })
}

/// Candidate matrix units `e_ij` and partial-isometry pieces `w_ij`,
/// `0 ≤ i, j ≤ N`.
pub struct UnitFamily<E> {
    pub e: Vec<Vec<E>>,
    pub w: Vec<Vec<E>>,
}

fn family<E: AlgebraOps>(n: u32, build: impl Fn(u32, u32, bool) -> E) -> UnitFamily<E> {
    let grid = |with_w: bool| (0..=n).map(|i| (0..=n).map(|j| build(i, j, with_w)).collect()).collect();
    UnitFamily { e: grid(false), w: grid(true) }
}

/// `e_ij = s^i A₁ (s*)^j`, `w_ij = s^i A₁ t (s*)^j` in the `p = q = 0` sphere.
pub fn sphere00_family(theta: f64, n: u32) -> Result<UnitFamily<NCElement>> {
    let pres = SpherePresentation::sphere00(theta)?;
    let proj = range_projection(&pres, Letter::X, 1)?;
    let t = pres.element(&[Letter::Y])?;
    Ok(family(n, |i, j, with_w| {
        let mut left = Vec::new();
        power(&mut left, Letter::X, i);
        let mut right = Vec::new();
        power(&mut right, Letter::XStar, j);
        let mid = if with_w { proj.mul(&t) } else { proj.clone() };
        pres.element(&left).unwrap().mul(&mid).mul(&pres.element(&right).unwrap())
    }))
}

/// `e_ij = s₊^i (1 - s₊s₊*) (s₊*)^j`, `w_ij = s₊^i (1 - s₊s₊*) u (s₊*)^j`.
pub fn crossed_family(theta: f64, n: u32) -> Result<UnitFamily<CrossedElement>> {
    let plus = CrossedPresentation::plus(theta)?;
    let defect = Element::one(&plus).sub(&plus.element(&[Letter::X, Letter::XStar])?);
    let u = plus.element(&[Letter::Y])?;
    Ok(family(n, |i, j, with_w| {
        let mut left = Vec::new();
        power(&mut left, Letter::X, i);
        let mut right = Vec::new();
        power(&mut right, Letter::XStar, j);
        let mid = if with_w { defect.mul(&u) } else { defect.clone() };
        plus.element(&left).unwrap().mul(&mid).mul(&plus.element(&right).unwrap())
    }))
}

/// The three generating conditions for an embedding of `K ⊗ C(S¹)`:
/// the `e_ij` are matrix units, `W = Σ w_ii` is a partial unitary, and
/// `W` commutes with every `e_ij` with `e_ij W = w_ij`.
pub fn lemma_gen_check<E: StarAlgebra>(family: &UnitFamily<E>, tol: f64) -> bool {
    let n = family.e.len();
    let zero_like = |x: &E| x.is_negligible(tol);
    let same = |x: &E, y: &E| zero_like(&x.sub(y));
    let e = &family.e;
    for i in 0..n {
        for j in 0..n {
            if !same(&e[i][j].adjoint(), &e[j][i]) {
                return false;
            }
            for k in 0..n {
                for l in 0..n {
                    let prod = e[i][j].mul(&e[k][l]);
                    let ok = if j == k { same(&prod, &e[i][l]) } else { zero_like(&prod) };
                    if !ok {
                        return false;
                    }
                }
            }
        }
    }
    // Units that vanish identically satisfy the algebra trivially; the
    // diagonal ones must be genuine projections.
    if (0..n).any(|i| zero_like(&e[i][i])) {
        return false;
    }

    let mut w_total = family.w[0][0].scale(Complex64::new(0.0, 0.0));
    for i in 0..n {
        w_total = w_total.add(&family.w[i][i]);
    }
    let ws = w_total.adjoint();
    let source = ws.mul(&w_total);
    let range = w_total.mul(&ws);
    if !same(&source, &range) || !same(&source.mul(&source), &source) {
        return false;
    }

    for i in 0..n {
        for j in 0..n {
            if !same(&w_total.mul(&e[i][j]), &e[i][j].mul(&w_total)) {
                return false;
            }
            if !same(&e[i][j].mul(&w_total), &family.w[i][j]) {
                return false;
            }
        }
    }
    true
}
