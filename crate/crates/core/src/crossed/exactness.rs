use serde::{Deserialize, Serialize};

use super::fiber::{h_image, phi_c, phi_d};
use super::units::{jc_image, jd_image, MatrixUnitElement, Summand};
use crate::error::Result;
use crate::ncpoly::{range_projection, AlgebraOps, Letter, NCElement, SpherePresentation};
use crate::repn::{independence_rank_elements, Cutoff};

/// Index ranges sampled by [`ses_exactness_check`].
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct SesBounds {
    /// Matrix-unit indices `0 ≤ i, j ≤ index`.
    pub index: u32,
    /// Circle powers `|n| ≤ power`.
    pub power: i64,
    /// Matrix-unit indices used for the injectivity rank.
    pub rank_index: u32,
    pub cutoff: Cutoff,
}

impl Default for SesBounds {
    fn default() -> Self {
        SesBounds { index: 3, power: 2, rank_index: 2, cutoff: Cutoff::square(16) }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SesReport {
    /// Largest coefficient of `φ_c(j_c(E))` over the sampled units.
    pub phi_c_jc: f64,
    /// Largest coefficient of `φ_d(j_d(E))` over the sampled units.
    pub phi_d_jd: f64,
    /// Largest torus-relation defect of the classes of `s, t` and of
    /// `(s₊, v), (u, t₋)`, together with the class of `A₁`.
    pub quotient_relations: f64,
    pub jc_rank: usize,
    pub jc_expected: usize,
}

impl SesReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.phi_c_jc <= tol && self.phi_d_jd <= tol && self.quotient_relations <= tol && self.jc_rank == self.jc_expected
    }
}

fn sampled_units(bounds: &SesBounds) -> Vec<MatrixUnitElement> {
    let mut out = Vec::new();
    for summand in [Summand::Left, Summand::Right] {
        for i in 0..=bounds.index {
            for j in 0..=bounds.index {
                for n in -bounds.power..=bounds.power {
                    out.push(MatrixUnitElement::unit(summand, i, j, n));
                }
            }
        }
    }
    out
}

/// Checks the rows of the ideal/quotient diagram at desk scale.
pub fn ses_exactness_check(theta: f64, bounds: SesBounds) -> Result<SesReport> {
    let units = sampled_units(&bounds);
    let mut phi_c_jc: f64 = 0.0;
    let mut phi_d_jd: f64 = 0.0;
    for e in &units {
        phi_c_jc = phi_c_jc.max(phi_c(&jc_image(e, theta)?)?.max_abs());
        phi_d_jd = phi_d_jd.max(phi_d(&jd_image(e, theta)?)?.max_abs());
    }

    let pres = SpherePresentation::sphere00(theta)?;
    let mu = pres.mu();
    let mut quotient: f64 = 0.0;
    let class = |w: &[Letter]| -> Result<_> { phi_c(&pres.element(w)?) };
    let one = class(&[])?;
    for g in [Letter::X, Letter::Y] {
        quotient = quotient.max(class(&[g, g.star()])?.sub(&one).max_abs());
        quotient = quotient.max(class(&[g.star(), g])?.sub(&one).max_abs());
    }
    let (x, y) = (class(&[Letter::X])?, class(&[Letter::Y])?);
    quotient = quotient.max(x.mul(&y).sub(&y.mul(&x).scale(mu)).max_abs());
    quotient = quotient.max(phi_c(&range_projection(&pres, Letter::X, 1)?)?.max_abs());
    quotient = quotient.max(phi_c(&range_projection(&pres, Letter::Y, 1)?)?.max_abs());
    let (hs, ht) = (h_image(&pres.element(&[Letter::X])?)?, h_image(&pres.element(&[Letter::Y])?)?);
    let (dx, dy) = (phi_d(&hs)?, phi_d(&ht)?);
    quotient = quotient.max(dx.mul(&dy).sub(&dy.mul(&dx).scale(mu)).max_abs());
    quotient = quotient.max(dx.sub(&x).max_abs()).max(dy.sub(&y).max_abs());

    let rank_units: Vec<NCElement> = [Summand::Left, Summand::Right]
        .into_iter()
        .flat_map(|s| {
            (0..=bounds.rank_index)
                .flat_map(move |i| (0..=bounds.rank_index).map(move |j| MatrixUnitElement::unit(s, i, j, 0)))
        })
        .map(|e| jc_image(&e, theta))
        .collect::<Result<_>>()?;
    let jc_rank = independence_rank_elements(&rank_units, bounds.cutoff)?;

    Ok(SesReport { phi_c_jc, phi_d_jd, quotient_relations: quotient, jc_rank, jc_expected: rank_units.len() })
}
