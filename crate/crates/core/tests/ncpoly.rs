use proptest::prelude::*;
use qsphere::crossed::CrossedPresentation;
use qsphere::ncpoly::{AlgebraOps, DiscPresentation, Element, Letter, Presentation, SpherePresentation};
use qsphere::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-12;

fn word(letters: &'static [Letter], max: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec(prop::sample::select(letters), 0..=max)
}

fn sphere() -> impl Strategy<Value = SpherePresentation> {
    let grid = [0.0, 0.3, 0.7];
    (prop::sample::select(grid.to_vec()), prop::sample::select(grid.to_vec()), prop::sample::select(vec![0.0, 0.5, 0.7071]))
        .prop_map(|(p, q, t)| SpherePresentation::new(p, q, t).unwrap())
}

fn starred(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().map(|l| l.star()).collect()
}

fn confluent<P: Presentation>(pres: &P, w: &[Letter], seed: u64) -> bool {
    let reference = Element::normal_form(w, pres).unwrap();
    // Coefficients grow like q^{-k} in the disc, so compare relative to their size.
    let tol = TOL * reference.max_abs().max(1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..3).all(|_| Element::normal_form_shuffled(w, pres, &mut rng).unwrap().approx_eq(&reference, tol))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn sphere_rewriting_is_confluent(pres in sphere(), w in word(&Letter::ALL, 8), seed in any::<u64>()) {
        prop_assert!(confluent(&pres, &w, seed));
    }

    #[test]
    fn normal_form_is_multiplicative(pres in sphere(), w1 in word(&Letter::ALL, 5), w2 in word(&Letter::ALL, 5)) {
        let lhs = Element::normal_form(&w1, &pres).unwrap().multiply(&Element::normal_form(&w2, &pres).unwrap()).unwrap();
        let joined: Vec<Letter> = w1.iter().chain(&w2).copied().collect();
        prop_assert!(lhs.approx_eq(&Element::normal_form(&joined, &pres).unwrap(), TOL));
    }

    #[test]
    fn adjoint_laws(pres in sphere(), w1 in word(&Letter::ALL, 5), w2 in word(&Letter::ALL, 5)) {
        let e1 = Element::normal_form(&w1, &pres).unwrap();
        let e2 = Element::normal_form(&w2, &pres).unwrap();
        prop_assert!(e1.adjoint().adjoint().approx_eq(&e1, TOL));
        prop_assert!(e1.adjoint().approx_eq(&Element::normal_form(&starred(&w1), &pres).unwrap(), TOL));
        let lhs = e1.multiply(&e2).unwrap().adjoint();
        prop_assert!(lhs.approx_eq(&e2.adjoint().multiply(&e1.adjoint()).unwrap(), TOL));
    }

    #[test]
    fn disc_rewriting_is_confluent(q in prop::sample::select(vec![0.0, 0.3, 0.7]), w in word(&[Letter::X, Letter::XStar], 10), seed in any::<u64>()) {
        let pres = DiscPresentation::new(q).unwrap();
        prop_assert!(confluent(&pres, &w, seed));
    }

    #[test]
    fn crossed_rewriting_is_confluent(minus in any::<bool>(), theta in prop::sample::select(vec![0.0, 0.5, 0.7071]), w in word(&Letter::ALL, 8), seed in any::<u64>()) {
        let pres = if minus { CrossedPresentation::minus(theta) } else { CrossedPresentation::plus(theta) }.unwrap();
        prop_assert!(confluent(&pres, &w, seed));
        let e = Element::normal_form(&w, &pres).unwrap();
        prop_assert!(e.adjoint().approx_eq(&Element::normal_form(&starred(&w), &pres).unwrap(), TOL));
    }
}

#[test]
fn sphere_relations_hold_in_normal_form() {
    use Letter::*;
    for (p, q, theta) in [(0.3, 0.7, 0.5), (0.0, 0.0, 0.7071), (0.5, 0.0, 0.3)] {
        let pres = SpherePresentation::new(p, q, theta).unwrap();
        let nf = |w: &[Letter]| pres.element(w).unwrap();
        let one = Element::one(&pres);
        let real = |x: f64| Complex64::new(x, 0.0);
        let disc = |x: Letter, r: f64| nf(&[x.star(), x]).sub(&nf(&[x, x.star()]).scale(real(r))).sub(&one.scale(real(1.0 - r)));
        assert!(disc(X, p).is_empty(), "a*a at {p} {q} {theta}");
        assert!(disc(Y, q).is_empty(), "b*b at {p} {q} {theta}");
        let sphere = one.sub(&nf(&[X, XStar])).mul(&one.sub(&nf(&[Y, YStar])));
        assert!(sphere.max_abs() < TOL);
        assert!(nf(&[X, Y]).sub(&nf(&[Y, X]).scale(pres.mu())).max_abs() < TOL);
        assert!(nf(&[X, YStar]).sub(&nf(&[YStar, X]).scale(pres.mu().conj())).max_abs() < TOL);
    }
}

#[test]
fn crossed_relations_hold_in_normal_form() {
    use Letter::*;
    let plus = CrossedPresentation::plus(0.3).unwrap();
    let nf = |w: &[Letter]| plus.element(w).unwrap();
    let mu = Complex64::from_polar(1.0, std::f64::consts::TAU * 0.3);
    assert!(nf(&[X, Y]).approx_eq(&nf(&[Y, X]).scale(mu), TOL));
    assert!(nf(&[XStar, X]).approx_eq(&Element::one(&plus), TOL));
    let defect = Element::one(&plus).sub(&nf(&[X, XStar]));
    assert!(defect.mul(&defect).approx_eq(&defect, TOL));
    assert!(nf(&[Y, YStar]).approx_eq(&Element::one(&plus), TOL));
}
