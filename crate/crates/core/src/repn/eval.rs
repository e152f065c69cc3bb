use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{linalg, Cutoff, Idx, Layout, RepKind, RepSpec, TruncatedOperator};
use crate::error::{Error, Result};
use crate::ncpoly::{Element, Letter, NCElement, Presentation, ProjKind, SphereMonomial, SpherePresentation, WordPiece};

fn diagonal_value(spec: &RepSpec, word: &[Letter], idx: Idx) -> Complex64 {
    match spec.act_word(word, idx) {
        Some((c, out)) => {
            debug_assert_eq!(out, idx, "projection word must act diagonally");
            c
        }
        None => Complex64::new(0.0, 0.0),
    }
}

fn apply_pieces(spec: &RepSpec, pieces: &[WordPiece], idx: Idx) -> Option<(Complex64, Idx)> {
    let one = Complex64::new(1.0, 0.0);
    let mut state = (one, idx);
    for piece in pieces.iter().rev() {
        match *piece {
            WordPiece::Gen(l) => {
                let (c, next) = spec.act(l, state.1)?;
                state = (state.0 * c, next);
            }
            WordPiece::Proj { gen, kind } => {
                let g = gen.base();
                let factor = match kind {
                    ProjKind::Power(k) => (one - diagonal_value(spec, &[g, g.star()], state.1)).powu(k),
                    ProjKind::Range(k) => {
                        let word: Vec<Letter> = std::iter::repeat(g)
                            .take(k as usize)
                            .chain(std::iter::repeat(g.star()).take(k as usize))
                            .collect();
                        one - diagonal_value(spec, &word, state.1)
                    }
                };
                if factor == Complex64::new(0.0, 0.0) {
                    return None;
                }
                state.0 *= factor;
            }
        }
    }
    Some(state)
}

fn simulate(spec: &RepSpec, layout: Layout, terms: &[(Complex64, Vec<WordPiece>)]) -> TruncatedOperator {
    let dim = layout.dim();
    let mut columns = Vec::with_capacity(dim);
    let mut interior = Vec::with_capacity(dim);
    for j in 0..dim {
        let idx = layout.index(j);
        let mut acc: BTreeMap<usize, Complex64> = BTreeMap::new();
        let mut exact = true;
        for (c, pieces) in terms {
            if let Some((v, out)) = apply_pieces(spec, pieces, idx) {
                match layout.flat(out) {
                    Some(i) => *acc.entry(i).or_insert(Complex64::new(0.0, 0.0)) += c * v,
                    None => exact = false,
                }
            }
        }
        columns.push(acc.into_iter().filter(|(_, v)| *v != Complex64::new(0.0, 0.0)).collect());
        interior.push(exact);
    }
    TruncatedOperator::from_columns(layout.cutoff, columns, interior)
}

/// The compression of the represented element to the box. Each column is
/// computed exactly; it is interior when no term leaves the box.
pub fn evaluate<P: Presentation>(spec: &RepSpec, e: &Element<P>, cutoff: Cutoff) -> Result<TruncatedOperator> {
    let pres = e.presentation();
    spec.check_presentation(pres)?;
    let terms: Vec<(Complex64, Vec<WordPiece>)> = e.terms().map(|(m, c)| (*c, pres.word_pieces(m))).collect();
    Ok(simulate(spec, spec.layout(cutoff), &terms))
}

/// The compression of a word in the generators.
pub fn evaluate_word(spec: &RepSpec, word: &[Letter], cutoff: Cutoff) -> Result<TruncatedOperator> {
    for &l in word {
        spec.check_letter(l)?;
    }
    let pieces = word.iter().map(|&l| WordPiece::Gen(l)).collect();
    Ok(simulate(spec, spec.layout(cutoff), &[(Complex64::new(1.0, 0.0), pieces)]))
}

/// The truncated matrix of one generator; shifts leaving the box map to
/// zero and mark their column non-interior.
pub fn build_generator(spec: &RepSpec, gen: Letter, cutoff: Cutoff) -> Result<TruncatedOperator> {
    evaluate_word(spec, &[gen], cutoff)
}

fn residual(op: &TruncatedOperator) -> f64 {
    if op.interior_count() == 0 {
        return f64::NAN;
    }
    op.interior_norm()
}

/// Interior operator-norm residual of each defining relation, computed
/// from products of truncated generator matrices.
pub fn relation_residuals(spec: &RepSpec, cutoff: Cutoff) -> Result<BTreeMap<String, f64>> {
    let g = |l| build_generator(spec, l, cutoff);
    let dim = spec.layout(cutoff).dim();
    let id = TruncatedOperator::identity(dim, cutoff);
    let real = |x: f64| Complex64::new(x, 0.0);
    let mu = super::phase_power(spec.theta, 1);
    let mut out = BTreeMap::new();
    match spec.kind {
        RepKind::DiscPi => {
            let (z, zs) = (g(Letter::X)?, g(Letter::XStar)?);
            let lhs = zs.mul(&z).sub(&z.mul(&zs).scale(real(spec.q))).sub(&id.scale(real(1.0 - spec.q)));
            out.insert("z*z = q zz* + 1 - q".to_string(), residual(&lhs));
        }
        RepKind::RhoBar | RepKind::RhoBarPrime => {
            let (x, xs, y, ys) = (g(Letter::X)?, g(Letter::XStar)?, g(Letter::Y)?, g(Letter::YStar)?);
            let (xn, yn, phase, ph) = match spec.kind {
                RepKind::RhoBar => ("s+", "u", mu, "mu"),
                _ => ("t-", "v", mu.conj(), "conj(mu)"),
            };
            out.insert(format!("{xn}*{xn} = 1"), residual(&xs.mul(&x).sub(&id)));
            out.insert(format!("{yn}*{yn} = 1"), residual(&ys.mul(&y).sub(&id)));
            out.insert(format!("{yn}{yn}* = 1"), residual(&y.mul(&ys).sub(&id)));
            out.insert(format!("{xn}{yn} = {ph} {yn}{xn}"), residual(&x.mul(&y).sub(&y.mul(&x).scale(phase))));
        }
        _ => {
            let (a, as_, b, bs) = (g(Letter::X)?, g(Letter::XStar)?, g(Letter::Y)?, g(Letter::YStar)?);
            let disc = |x: &TruncatedOperator, xs: &TruncatedOperator, r: f64| {
                xs.mul(x).sub(&x.mul(xs).scale(real(r))).sub(&id.scale(real(1.0 - r)))
            };
            out.insert("a*a = p aa* + 1 - p".to_string(), residual(&disc(&a, &as_, spec.p)));
            out.insert("b*b = q bb* + 1 - q".to_string(), residual(&disc(&b, &bs, spec.q)));
            let sphere = id.sub(&a.mul(&as_)).mul(&id.sub(&b.mul(&bs)));
            out.insert("(1 - aa*)(1 - bb*) = 0".to_string(), residual(&sphere));
            out.insert("ab = mu ba".to_string(), residual(&a.mul(&b).sub(&b.mul(&a).scale(mu))));
            out.insert("ab* = conj(mu) b*a".to_string(), residual(&a.mul(&bs).sub(&bs.mul(&a).scale(mu.conj()))));
        }
    }
    Ok(out)
}

/// Numerical rank of the images of `elements` under `ρ ⊕ ρ'`, restricted
/// to the columns interior for every element.
pub fn independence_rank_elements(elements: &[NCElement], cutoff: Cutoff) -> Result<usize> {
    let Some(first) = elements.first() else {
        return Ok(0);
    };
    let pres = *first.presentation();
    let (p, q, theta) = pres.parameters();
    let mut vectors: Vec<Vec<(usize, Complex64)>> = vec![Vec::new(); elements.len()];
    let mut offset = 0usize;
    for kind in [RepKind::Rho, RepKind::RhoPrime] {
        let spec = RepSpec::new(kind, p, q, theta);
        let ops = elements.iter().map(|e| evaluate(&spec, e, cutoff)).collect::<Result<Vec<_>>>()?;
        let dim = spec.layout(cutoff).dim();
        let common: Vec<usize> = (0..dim).filter(|&j| ops.iter().all(|op| op.interior_mask()[j])).collect();
        for (k, op) in ops.iter().enumerate() {
            for (pos, &j) in common.iter().enumerate() {
                vectors[k].extend(op.column(j).iter().map(|&(i, v)| (offset + pos * dim + i, v)));
            }
        }
        offset += common.len() * dim;
    }
    for (k, v) in vectors.iter().enumerate() {
        if v.is_empty() {
            return Err(Error::CutoffTooSmall { monomial: elements[k].to_canonical_string() });
        }
    }
    Ok(linalg::numerical_rank(&vectors))
}

/// [`independence_rank_elements`] for basis monomials.
pub fn independence_rank(pres: &SpherePresentation, monomials: &[SphereMonomial], cutoff: Cutoff) -> Result<usize> {
    let elements: Vec<NCElement> =
        monomials.iter().map(|m| Element::monomial(pres, *m, Complex64::new(1.0, 0.0))).collect();
    if let Some(bad) = monomials.iter().find(|m| !pres.is_valid(m)) {
        return Err(Error::InvalidParameter(format!("invalid monomial {bad:?}")));
    }
    independence_rank_elements(&elements, cutoff).map_err(|e| match e {
        Error::CutoffTooSmall { monomial } => {
            let named = monomials
                .iter()
                .zip(&elements)
                .find(|(_, el)| el.to_canonical_string() == monomial)
                .map(|(m, _)| pres.format_monomial(m))
                .unwrap_or(monomial);
            Error::CutoffTooSmall { monomial: named }
        }
        other => other,
    })
}

/// Operator norms of the compressions at each cutoff.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormEstimate {
    pub cutoffs: Vec<Cutoff>,
    pub values: Vec<f64>,
}

impl NormEstimate {
    /// The value at the largest cutoff.
    pub fn estimate(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    pub fn is_monotone(&self, tol: f64) -> bool {
        self.values.windows(2).all(|w| w[1] >= w[0] - tol)
    }
}

pub fn norm_estimate<P: Presentation>(e: &Element<P>, spec: &RepSpec, cutoffs: &[Cutoff]) -> Result<NormEstimate> {
    let values = cutoffs.iter().map(|&c| evaluate(spec, e, c).map(|op| op.norm())).collect::<Result<Vec<_>>>()?;
    Ok(NormEstimate { cutoffs: cutoffs.to_vec(), values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncpoly::{range_projection, DiscPresentation, Tag};

    #[test]
    fn a_projection_is_diagonal_power() {
        let pres = SpherePresentation::new(0.5, 0.4, 0.2).unwrap();
        let spec = RepSpec::new(RepKind::Rho, 0.5, 0.4, 0.2);
        let cutoff = Cutoff::new(6, 2).unwrap();
        let a = Element::monomial(&pres, SphereMonomial::new(0, 0, Tag::A(1)), Complex64::new(1.0, 0.0));
        let op = evaluate(&spec, &a, cutoff).unwrap();
        let layout = spec.layout(cutoff);
        for j in 0..layout.dim() {
            let n = layout.index(j).n;
            assert!((op.entry(j, j).re - 0.5f64.powi(n as i32)).abs() < 1e-15);
        }
        let b = Element::monomial(&pres, SphereMonomial::new(0, 0, Tag::B(1)), Complex64::new(1.0, 0.0));
        assert_eq!(evaluate(&spec, &b, cutoff).unwrap().nnz(), 0);
    }

    #[test]
    fn range_projection_under_rho() {
        let pres = SpherePresentation::sphere00(0.1).unwrap();
        let spec = RepSpec::new(RepKind::Rho, 0.0, 0.0, 0.1);
        let cutoff = Cutoff::new(6, 1).unwrap();
        let a3 = range_projection(&pres, Letter::X, 3).unwrap();
        let op = evaluate(&spec, &a3, cutoff).unwrap();
        let layout = spec.layout(cutoff);
        for j in 0..layout.dim() {
            let expected = if layout.index(j).n < 3 { 1.0 } else { 0.0 };
            assert!((op.entry(j, j) - expected).norm() < 1e-14);
        }
    }

    #[test]
    fn rank_of_repeated_unit() {
        let pres = SpherePresentation::sphere00(0.0).unwrap();
        let cutoff = Cutoff::new(4, 2).unwrap();
        let rank = independence_rank(&pres, &[SphereMonomial::UNIT, SphereMonomial::UNIT], cutoff).unwrap();
        assert_eq!(rank, 1);
        let two = [SphereMonomial::new(0, 0, Tag::A(1)), SphereMonomial::new(0, 0, Tag::A(2))];
        assert_eq!(independence_rank(&pres, &two, cutoff).unwrap(), 2);
    }

    #[test]
    fn cutoff_too_small_names_monomial() {
        let pres = SpherePresentation::sphere00(0.0).unwrap();
        let cutoff = Cutoff::new(2, 1).unwrap();
        let err = independence_rank(&pres, &[SphereMonomial::new(3, 0, Tag::None)], cutoff).unwrap_err();
        assert!(matches!(err, Error::CutoffTooSmall { ref monomial } if monomial.contains("s_{3}")), "{err:?}");
    }

    #[test]
    fn disc_mismatch_is_rejected() {
        let disc = DiscPresentation::new(0.5).unwrap();
        let spec = RepSpec::new(RepKind::Rho, 0.0, 0.5, 0.0);
        let e = Element::one(&disc);
        assert!(matches!(evaluate(&spec, &e, Cutoff::square(4)), Err(Error::RepresentationMismatch { .. })));
    }
}
