use qsphere::isomap::{default_k, f_image, g_image, relation_check_images, roundtrip_residual, SeriesCoeffs};
use qsphere::ncpoly::Letter;
use qsphere::repn::{build_generator, Cutoff, RepKind, RepSpec, TruncatedOperator};
use qsphere::{Complex64, Error};

fn interior_gap(a: &TruncatedOperator, b: &TruncatedOperator) -> f64 {
    let (da, db) = (a.to_dense(), b.to_dense());
    let mut gap: f64 = 0.0;
    for j in 0..a.dim() {
        if a.interior_mask()[j] && b.interior_mask()[j] {
            for i in 0..a.dim() {
                gap = gap.max((da[(i, j)] - db[(i, j)]).norm());
            }
        }
    }
    gap
}

const CASES: [(f64, f64, f64); 4] = [(0.5, 0.5, 0.3), (0.3, 0.7, 0.0), (0.7, 0.0, 0.7071), (0.0, 0.3, 0.5)];

/// `ρ_{pq} = ρ_{00} ∘ f`: the series reproduces the weighted shift.
#[test]
fn f_intertwines_representations() {
    let cutoff = Cutoff::new(16, 6).unwrap();
    for (p, q, theta) in CASES {
        let k = default_k(p, q);
        let coeffs = SeriesCoeffs::new(p, q, k).unwrap();
        for (kind, gen) in [(RepKind::Rho, Letter::X), (RepKind::RhoPrime, Letter::Y)] {
            let image = f_image(gen, &coeffs, &RepSpec::new(kind, 0.0, 0.0, theta), cutoff).unwrap();
            let target = build_generator(&RepSpec::new(kind, p, q, theta), gen, cutoff).unwrap();
            let gap = interior_gap(&image, &target);
            assert!(gap < 1e-9, "{kind:?} {gen:?} at ({p}, {q}, {theta}): {gap}");
        }
    }
}

/// `ρ_{00} = ρ_{pq} ∘ g`: the polar part of a weighted shift is the plain shift.
#[test]
fn g_intertwines_representations() {
    let cutoff = Cutoff::new(16, 6).unwrap();
    for (p, q, theta) in CASES {
        for (kind, gen) in [(RepKind::Rho, Letter::X), (RepKind::RhoPrime, Letter::Y), (RepKind::RhoLambda, Letter::X)] {
            let spec = RepSpec::new(kind, p, q, theta).with_lambda(Complex64::from_polar(1.0, 1.1)).unwrap();
            let image = g_image(gen, &spec, cutoff).unwrap();
            let target = build_generator(&RepSpec { p: 0.0, q: 0.0, ..spec }, gen, cutoff).unwrap();
            let gap = interior_gap(&image, &target);
            assert!(gap < 1e-12, "{kind:?} {gen:?} at ({p}, {q}, {theta}): {gap}");
        }
    }
}

#[test]
fn roundtrip_at_reference_point() {
    let res = roundtrip_residual(0.5, 0.5, 0.3, 40, Cutoff::square(24)).unwrap();
    assert_eq!(res.len(), 4);
    for (key, v) in &res {
        assert!(*v <= 1e-6, "{key}: {v}");
    }
    let rel = relation_check_images(0.5, 0.5, 0.3, 40, Cutoff::square(24)).unwrap();
    assert!(rel.keys().any(|k| k.starts_with("f: ")) && rel.keys().any(|k| k.starts_with("g: ")));
    for (key, v) in &rel {
        assert!(*v <= 1e-8, "{key}: {v}");
    }
}

#[test]
fn telescoping_sum() {
    for (p, q, _) in CASES {
        for k in [1, 5, 40] {
            let c = SeriesCoeffs::new(p, q, k).unwrap();
            assert!(c.telescoping_error(p, q) <= 1e-12, "{p} {q} {k}");
        }
    }
    assert!(matches!(SeriesCoeffs::new(0.5, 0.5, 0), Err(Error::InvalidParameter(_))));
}

#[test]
fn short_series_is_detected() {
    let res = relation_check_images(0.7, 0.7, 0.0, 2, Cutoff::square(16)).unwrap();
    assert!(res.values().any(|&v| v > 1e-3), "{res:?}");
}
