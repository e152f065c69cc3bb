//! Toeplitz crossed products, the noncommutative torus, and the maps that
//! glue the `p = q = 0` sphere into a fiber product over the torus.

mod algebra;
mod exactness;
mod fiber;
mod units;

pub use algebra::{
    CrossedElement, CrossedMonomial, CrossedPresentation, CrossedSide, TorusElement, TorusMonomial,
    TorusPresentation,
};
pub use exactness::{ses_exactness_check, SesBounds, SesReport};
pub use fiber::{h1, h2, h_image, phi_c, phi_c_direct, phi_d, pi1, pi2, plus_to_minus, FiberPair};
pub use units::{
    crossed_family, jc_image, jd_image, lemma_gen_check, sphere00_family, MatrixUnitElement, Summand,
    UnitFamily,
};
