//! The mutually inverse maps `f` (deformed sphere → `p = q = 0` sphere) and
//! `g` (the other way), realised on truncated representations.
//!
//! `f(a) = Σ_k p_k s^{k+1} (s*)^k` with `p_k = √(1-p^{k+1}) - √(1-p^k)`, and
//! `g(s) = a (a*a)^{-1/2}`; likewise for `b`, `t` with `q`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ncpoly::{AlgebraOps, Element, Letter, NCElement, SpherePresentation};
use crate::repn::{evaluate, Cutoff, RepKind, RepSpec, TruncatedOperator};

/// The series coefficients for `f(a)` and `f(b)`, truncated after `k` terms.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesCoeffs {
    pub p: Vec<f64>,
    pub q: Vec<f64>,
    pub k: usize,
}

fn coefficients(r: f64, k: usize) -> Vec<f64> {
    (0..k).map(|i| (1.0 - r.powi(i as i32 + 1)).sqrt() - (1.0 - r.powi(i as i32)).sqrt()).collect()
}

impl SeriesCoeffs {
    pub fn new(p: f64, q: f64, k: usize) -> Result<Self> {
        if k < 1 {
            return Err(Error::InvalidParameter("series length K must be at least 1".into()));
        }
        Ok(SeriesCoeffs { p: coefficients(p, k), q: coefficients(q, k), k })
    }

    /// `|Σ_{k<K} c_k - √(1 - r^K)|`, the larger of the two sides.
    pub fn telescoping_error(&self, p: f64, q: f64) -> f64 {
        let err = |cs: &[f64], r: f64| (cs.iter().sum::<f64>() - (1.0 - r.powi(self.k as i32)).sqrt()).abs();
        err(&self.p, p).max(err(&self.q, q))
    }

    /// `1 - √(1 - r^K)`, the norm of the dropped tail.
    pub fn tail_bound(&self, r: f64) -> f64 {
        1.0 - (1.0 - r.powi(self.k as i32)).sqrt()
    }
}

/// Smallest `K` with `r^K ≤ 1e-10` for the larger parameter `r`, clamped to
/// `1..=200`.
pub fn default_k(p: f64, q: f64) -> usize {
    let r = p.max(q);
    if r <= 0.0 {
        return 1;
    }
    let k = ((1e-10f64).ln() / r.ln()).ceil();
    (k as usize).clamp(1, 200)
}

/// `f(gen)` as an element of the `p = q = 0` sphere.
pub fn f_element(gen: Letter, coeffs: &SeriesCoeffs, theta: f64) -> Result<NCElement> {
    let pres = SpherePresentation::sphere00(theta)?;
    let cs = match gen.base() {
        Letter::X => &coeffs.p,
        _ => &coeffs.q,
    };
    let g = gen.base();
    let mut acc = Element::zero(&pres);
    for (k, &c) in cs.iter().enumerate() {
        let word: Vec<Letter> =
            std::iter::repeat(g).take(k + 1).chain(std::iter::repeat(g.star()).take(k)).collect();
        acc = acc.add(&pres.element(&word)?.scale(Complex64::new(c, 0.0)));
    }
    Ok(if gen.is_star() { acc.adjoint() } else { acc })
}

fn require_sphere_rep(spec: &RepSpec) -> Result<()> {
    if matches!(spec.kind, RepKind::DiscPi | RepKind::RhoBar | RepKind::RhoBarPrime) {
        return Err(Error::RepresentationMismatch { rep: format!("{:?}", spec.kind), algebra: "sphere".into() });
    }
    Ok(())
}

/// The truncated operator of `f(gen)` in a representation of the
/// `p = q = 0` sphere.
pub fn f_image(gen: Letter, coeffs: &SeriesCoeffs, spec00: &RepSpec, cutoff: Cutoff) -> Result<TruncatedOperator> {
    require_sphere_rep(spec00)?;
    evaluate(spec00, &f_element(gen, coeffs, spec00.theta)?, cutoff)
}

/// The truncated operator of `g(gen)`: `a (a*a)^{-1/2}` for `s`,
/// `(a*a)^{-1/2} a*` for `s*`, and the same with `b` for `t`.
pub fn g_image(gen: Letter, spec_pq: &RepSpec, cutoff: Cutoff) -> Result<TruncatedOperator> {
    require_sphere_rep(spec_pq)?;
    let pres = SpherePresentation::new(spec_pq.p, spec_pq.q, spec_pq.theta)?;
    let g = gen.base();
    let modulus = evaluate(spec_pq, &pres.element(&[g.star(), g])?, cutoff)?.inverse_sqrt()?;
    let op = evaluate(spec_pq, &pres.element(&[gen])?, cutoff)?;
    Ok(if gen.is_star() { modulus.mul(&op) } else { op.mul(&modulus) })
}

/// The four generator images of a homomorphism into truncated operators.
struct Images {
    ops: [TruncatedOperator; 4],
}

impl Images {
    fn get(&self, l: Letter) -> TruncatedOperator {
        let i = match l {
            Letter::X => 0,
            Letter::XStar => 1,
            Letter::Y => 2,
            Letter::YStar => 3,
        };
        self.ops[i].clone()
    }

    fn unit(&self) -> TruncatedOperator {
        TruncatedOperator::identity(self.ops[0].dim(), self.ops[0].cutoff())
    }

    fn apply(&self, e: &NCElement) -> TruncatedOperator {
        e.map_into(&self.unit(), |l| self.get(l))
    }
}

fn g_images(spec: &RepSpec, cutoff: Cutoff) -> Result<Images> {
    let ops = [
        g_image(Letter::X, spec, cutoff)?,
        g_image(Letter::XStar, spec, cutoff)?,
        g_image(Letter::Y, spec, cutoff)?,
        g_image(Letter::YStar, spec, cutoff)?,
    ];
    Ok(Images { ops })
}

fn f_images(coeffs: &SeriesCoeffs, spec: &RepSpec, cutoff: Cutoff) -> Result<Images> {
    let ops = [
        f_image(Letter::X, coeffs, spec, cutoff)?,
        f_image(Letter::XStar, coeffs, spec, cutoff)?,
        f_image(Letter::Y, coeffs, spec, cutoff)?,
        f_image(Letter::YStar, coeffs, spec, cutoff)?,
    ];
    Ok(Images { ops })
}

fn interior_residual(d: &TruncatedOperator) -> f64 {
    if d.interior_count() == 0 {
        return f64::NAN;
    }
    d.interior_norm()
}

fn interior_distance(x: &TruncatedOperator, y: &TruncatedOperator) -> f64 {
    interior_residual(&x.sub(y))
}

/// Interior distances between each generator and its image under the
/// roundtrip. `a` and `s` are tested in `ρ`, `b` and `t` in `ρ'`, the
/// representations faithful on the respective disc subalgebras.
pub fn roundtrip_residual(p: f64, q: f64, theta: f64, k: usize, cutoff: Cutoff) -> Result<BTreeMap<String, f64>> {
    let coeffs = SeriesCoeffs::new(p, q, k)?;
    let pq = SpherePresentation::new(p, q, theta)?;
    let s00 = SpherePresentation::sphere00(theta)?;
    let mut out = BTreeMap::new();
    for (kind, gen, pq_name, name00) in [(RepKind::Rho, Letter::X, "a", "s"), (RepKind::RhoPrime, Letter::Y, "b", "t")] {
        let spec_pq = RepSpec::new(kind, p, q, theta);
        let spec00 = RepSpec::new(kind, 0.0, 0.0, theta);

        let gf = g_images(&spec_pq, cutoff)?.apply(&f_element(gen, &coeffs, theta)?);
        let original = evaluate(&spec_pq, &pq.element(&[gen])?, cutoff)?;
        out.insert(format!("g∘f({pq_name})"), interior_distance(&gf, &original));

        let fg_op = f_image(gen, &coeffs, &spec00, cutoff)?;
        let fa = f_element(gen, &coeffs, theta)?;
        let modulus = evaluate(&spec00, &fa.adjoint().mul(&fa), cutoff)?.inverse_sqrt()?;
        let fg = fg_op.mul(&modulus);
        let original = evaluate(&spec00, &s00.element(&[gen])?, cutoff)?;
        out.insert(format!("f∘g({name00})"), interior_distance(&fg, &original));
    }
    Ok(out)
}

fn sphere_relations(images: &Images, p: f64, q: f64, theta: f64) -> Vec<(&'static str, TruncatedOperator)> {
    let (a, as_, b, bs) = (images.get(Letter::X), images.get(Letter::XStar), images.get(Letter::Y), images.get(Letter::YStar));
    let id = images.unit();
    let real = |x: f64| Complex64::new(x, 0.0);
    let mu = crate::ncpoly::root_of_unity(theta);
    let disc = |x: &TruncatedOperator, xs: &TruncatedOperator, r: f64| {
        xs.mul(x).sub(&x.mul(xs).scale(real(r))).sub(&id.scale(real(1.0 - r)))
    };
    vec![
        ("x*x = p xx* + 1 - p", disc(&a, &as_, p)),
        ("y*y = q yy* + 1 - q", disc(&b, &bs, q)),
        ("(1 - xx*)(1 - yy*) = 0", id.sub(&a.mul(&as_)).mul(&id.sub(&b.mul(&bs)))),
        ("xy = mu yx", a.mul(&b).sub(&b.mul(&a).scale(mu))),
        ("xy* = conj(mu) y*x", a.mul(&bs).sub(&bs.mul(&a).scale(mu.conj()))),
    ]
}

/// Residuals of the defining relations on the `f`-images (in `ρ ⊕ ρ'` of
/// the `p = q = 0` sphere, against the `(p, q)` relations) and on the
/// `g`-images (in `ρ ⊕ ρ'` of the `(p, q)` sphere, against the `p = q = 0`
/// relations), maximised over both summands.
pub fn relation_check_images(p: f64, q: f64, theta: f64, k: usize, cutoff: Cutoff) -> Result<BTreeMap<String, f64>> {
    let coeffs = SeriesCoeffs::new(p, q, k)?;
    let mut out: BTreeMap<String, f64> = BTreeMap::new();
    for kind in [RepKind::Rho, RepKind::RhoPrime] {
        let f = f_images(&coeffs, &RepSpec::new(kind, 0.0, 0.0, theta), cutoff)?;
        for (name, op) in sphere_relations(&f, p, q, theta) {
            let r = interior_residual(&op);
            let slot = out.entry(format!("f: {name}")).or_insert(0.0);
            *slot = slot.max(r);
        }
        let g = g_images(&RepSpec::new(kind, p, q, theta), cutoff)?;
        for (name, op) in sphere_relations(&g, 0.0, 0.0, theta) {
            let r = interior_residual(&op);
            let slot = out.entry(format!("g: {name}")).or_insert(0.0);
            *slot = slot.max(r);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn telescoping_sum() {
        for &p in &[0.0, 0.3, 0.5, 0.9] {
            for &k in &[1, 5, 40] {
                let c = SeriesCoeffs::new(p, p, k).unwrap();
                assert!(c.telescoping_error(p, p) <= 1e-12);
                assert!(c.p.iter().all(|&x| x >= 0.0));
            }
        }
    }

    #[test]
    fn default_length() {
        assert_eq!(default_k(0.0, 0.0), 1);
        let k = default_k(0.5, 0.3);
        let c = SeriesCoeffs::new(0.5, 0.3, k).unwrap();
        assert!(c.tail_bound(0.5) < 1e-9);
        assert_eq!(default_k(0.999, 0.0), 200);
    }

    #[test]
    fn f_is_identity_at_zero() {
        let c = SeriesCoeffs::new(0.0, 0.0, 5).unwrap();
        let pres = SpherePresentation::sphere00(0.2).unwrap();
        assert_eq!(f_element(Letter::X, &c, 0.2).unwrap(), pres.element(&[Letter::X]).unwrap());
    }

    #[test]
    fn rejects_empty_series() {
        assert!(SeriesCoeffs::new(0.5, 0.5, 0).is_err());
    }

    #[test]
    fn roundtrip_at_deformed_point() {
        let r = roundtrip_residual(0.5, 0.5, 0.3, 40, Cutoff::new(10, 4).unwrap()).unwrap();
        assert_eq!(r.len(), 4);
        for (name, v) in r {
            assert!(v <= 1e-6, "{name}: {v}");
        }
    }
}
