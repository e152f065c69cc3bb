use proptest::prelude::*;
use qsphere::crossed::{
    h_image, jc_image, jd_image, phi_c, phi_c_direct, phi_d, pi1, pi2, plus_to_minus, CrossedPresentation, FiberPair,
    MatrixUnitElement, Summand, TorusPresentation,
};
use qsphere::ncpoly::{random_element, AlgebraOps, Element, Letter, SpherePresentation, StarAlgebra};
use qsphere::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use Letter::*;

const TOL: f64 = 1e-12;

fn pair_gap(a: &FiberPair, b: &FiberPair) -> f64 {
    a.f1.sub(&b.f1).max_abs().max(a.f2.sub(&b.f2).max_abs())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn h_is_a_star_homomorphism(seed in any::<u64>(), theta in prop::sample::select(vec![0.0, 0.3, 0.7071])) {
        let pres = SpherePresentation::sphere00(theta).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e1 = random_element(&pres, &mut rng, 3, 5);
        let e2 = random_element(&pres, &mut rng, 3, 5);
        let (h1, h2) = (h_image(&e1).unwrap(), h_image(&e2).unwrap());
        prop_assert!(h1.fiber_check());
        prop_assert!(pair_gap(&h_image(&e1.mul(&e2)).unwrap(), &h1.mul(&h2)) < TOL);
        prop_assert!(pair_gap(&h_image(&e1.adjoint()).unwrap(), &h1.adjoint()) < TOL);
        prop_assert!(phi_c(&e1).unwrap().sub(&phi_c_direct(&e1).unwrap()).max_abs() < TOL);
    }

    #[test]
    fn plus_to_minus_is_an_isomorphism(seed in any::<u64>(), theta in prop::sample::select(vec![0.0, 0.3, 0.7071])) {
        let plus = CrossedPresentation::plus(theta).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e1 = random_element(&plus, &mut rng, 3, 5);
        let e2 = random_element(&plus, &mut rng, 3, 5);
        let (m1, m2) = (plus_to_minus(&e1).unwrap(), plus_to_minus(&e2).unwrap());
        prop_assert!(plus_to_minus(&e1.mul(&e2)).unwrap().sub(&m1.mul(&m2)).max_abs() < TOL);
        prop_assert!(plus_to_minus(&e1.adjoint()).unwrap().sub(&m1.adjoint()).max_abs() < TOL);
        // Normal forms correspond term by term, so the map is injective on them.
        prop_assert_eq!(m1.len(), e1.len());
    }

    #[test]
    fn ideal_maps_to_zero(i in 0u32..4, j in 0u32..4, n in -2i64..=2, right in any::<bool>()) {
        let summand = if right { Summand::Right } else { Summand::Left };
        let e = MatrixUnitElement::unit(summand, i, j, n);
        prop_assert!(phi_c(&jc_image(&e, 0.3).unwrap()).unwrap().is_empty());
        let d = jd_image(&e, 0.3).unwrap();
        prop_assert!(d.fiber_check());
        prop_assert!(phi_d(&d).unwrap().is_empty());
        let c = jc_image(&e, 0.3).unwrap();
        prop_assert!(pair_gap(&h_image(&c).unwrap(), &d) < TOL);
    }
}

#[test]
fn h_on_words() {
    let theta = 0.3;
    let pres = SpherePresentation::sphere00(theta).unwrap();
    let plus = CrossedPresentation::plus(theta).unwrap();
    let minus = CrossedPresentation::minus(theta).unwrap();
    let st = h_image(&pres.element(&[X, Y]).unwrap()).unwrap();
    assert!(st.f1.approx_eq(&plus.element(&[X, Y]).unwrap(), TOL));
    assert!(st.f2.approx_eq(&minus.element(&[Y, X]).unwrap(), TOL));
    assert!(pi1(&st.f1).unwrap().approx_eq(&pi2(&st.f2).unwrap(), TOL));
    let one = h_image(&Element::one(&pres)).unwrap();
    assert!(pair_gap(&one, &FiberPair::one(theta).unwrap()) < TOL);
}

#[test]
fn symbol_maps() {
    let theta = 0.3;
    let torus = TorusPresentation::new(theta).unwrap();
    let plus = CrossedPresentation::plus(theta).unwrap();
    let minus = CrossedPresentation::minus(theta).unwrap();
    // u^2 s+ -> y^2 x = mu^{-2} x y^2 by xy = mu yx.
    let mu = Complex64::from_polar(1.0, std::f64::consts::TAU * theta);
    let lhs = pi1(&plus.element(&[Y, Y, X]).unwrap()).unwrap();
    assert!(lhs.approx_eq(&torus.element(&[X, Y, Y]).unwrap().scale(mu.powi(-2)), TOL));
    let defect = Element::one(&plus).sub(&plus.element(&[X, XStar]).unwrap());
    assert!(pi1(&defect).unwrap().is_empty());
    assert!(pi2(&minus.element(&[Y]).unwrap()).unwrap().approx_eq(&torus.element(&[X]).unwrap(), TOL));
    assert!(pi1(&minus.element(&[Y]).unwrap()).is_err());
}

#[test]
fn matrix_unit_images() {
    let theta = 0.3;
    let pres = SpherePresentation::sphere00(theta).unwrap();
    let a1 = Element::one(&pres).sub(&pres.element(&[X, XStar]).unwrap());
    let e00 = jc_image(&MatrixUnitElement::unit(Summand::Left, 0, 0, 0), theta).unwrap();
    assert!(e00.approx_eq(&a1, TOL));
    let e12 = jc_image(&MatrixUnitElement::unit(Summand::Left, 1, 2, 1), theta).unwrap();
    let expected = pres.element(&[X]).unwrap().mul(&a1).mul(&pres.element(&[Y, XStar, XStar]).unwrap());
    assert!(e12.approx_eq(&expected, TOL));

    let minus = CrossedPresentation::minus(theta).unwrap();
    let right = jd_image(&MatrixUnitElement::unit(Summand::Right, 0, 0, 1), theta).unwrap();
    let defect = Element::one(&minus).sub(&minus.element(&[X, XStar]).unwrap());
    assert!(right.f1.is_empty());
    assert!(right.f2.approx_eq(&defect.mul(&minus.element(&[Y]).unwrap()), TOL));
}
