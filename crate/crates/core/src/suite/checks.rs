use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{CheckRecord, SuiteConfig, SuiteName};
use crate::crossed::{
    crossed_family, h1, h2, h_image, lemma_gen_check, phi_c, phi_c_direct, pi1, pi2, plus_to_minus,
    ses_exactness_check, sphere00_family, CrossedPresentation, FiberPair, SesBounds,
};
use crate::error::{Error, Result};
use crate::isomap::{default_k, relation_check_images, roundtrip_residual, SeriesCoeffs};
use crate::ktheory::{
    cokernel, image_rank, kernel, pv_sequence, smith_normal_form, solve_six_term, FGAbelianGroup, GroupHom, IntMatrix,
    SixTermData,
};
use crate::ncpoly::{
    basis_monomials, check_identity, random_element, AlgebraOps, BasisBounds, Identity, Letter, SpherePresentation,
    StarAlgebra,
};
use crate::repn::{independence_rank, relation_residuals, Cutoff, RepKind, RepSpec};

type Inputs = BTreeMap<String, String>;

fn inputs(pairs: &[(&str, String)]) -> Inputs {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn cell(p: f64, q: f64, theta: f64) -> Inputs {
    inputs(&[("p", p.to_string()), ("q", q.to_string()), ("theta", theta.to_string())])
}

fn with(mut base: Inputs, key: &str, value: impl ToString) -> Inputs {
    base.insert(key.to_string(), value.to_string());
    base
}

/// `measured ≤ tol`; `NaN` fails.
fn numeric(suite: SuiteName, name: impl Into<String>, inputs: Inputs, measured: f64, tol: f64) -> CheckRecord {
    CheckRecord {
        suite,
        name: name.into(),
        inputs,
        measured: json!(measured),
        threshold: json!(tol),
        pass: measured <= tol,
    }
}

fn exact<T: serde::Serialize + PartialEq>(
    suite: SuiteName,
    name: impl Into<String>,
    inputs: Inputs,
    measured: T,
    expected: T,
) -> CheckRecord {
    let pass = measured == expected;
    CheckRecord { suite, name: name.into(), inputs, measured: json!(measured), threshold: json!(expected), pass }
}

fn failure(suite: SuiteName, name: impl Into<String>, inputs: Inputs, err: &Error) -> CheckRecord {
    CheckRecord {
        suite,
        name: name.into(),
        inputs,
        measured: Value::String(format!("error: {err}")),
        threshold: Value::Null,
        pass: false,
    }
}

/// Maps `f` over `items` on scoped threads, preserving order.
fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(items.len().max(1));
    let chunk = items.len().div_ceil(workers).max(1);
    std::thread::scope(|scope| {
        let handles: Vec<_> =
            items.chunks(chunk).map(|c| scope.spawn(|| c.iter().map(&f).collect::<Vec<R>>())).collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    })
}

fn cell_seed(seed: u64, theta: f64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ theta.to_bits())
}

pub(super) fn relations(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    let suite = SuiteName::Relations;
    let cutoff = cfg.cutoff_or(Cutoff::square(24));
    let tol = cfg.tolerance(1e-10);
    let lambdas: Vec<Complex64> = (0..8).map(|j| Complex64::from_polar(1.0, TAU * j as f64 / 8.0)).collect();
    let one = [Complex64::new(1.0, 0.0)];
    let reps: [(&str, RepKind, &[Complex64]); 4] = [
        ("rho", RepKind::Rho, &one),
        ("rho'", RepKind::RhoPrime, &one),
        ("rho_lambda", RepKind::RhoLambda, &lambdas),
        ("rho'_lambda", RepKind::RhoPrimeLambda, &lambdas),
    ];
    let per_cell = par_map(&cfg.grid(), |&(p, q, theta)| -> Result<Vec<CheckRecord>> {
        let mut out = Vec::new();
        for (label, kind, lams) in reps {
            let mut worst: BTreeMap<String, f64> = BTreeMap::new();
            for &lam in lams {
                let spec = RepSpec::new(kind, p, q, theta).with_lambda(lam)?;
                for (rel, v) in relation_residuals(&spec, cutoff)? {
                    let e = worst.entry(rel).or_insert(0.0);
                    if !e.is_nan() && (v.is_nan() || v > *e) {
                        *e = v;
                    }
                }
            }
            let base = with(with(cell(p, q, theta), "rep", label), "lambdas", lams.len());
            out.extend(worst.into_iter().map(|(rel, v)| numeric(suite, rel, base.clone(), v, tol)));
        }
        Ok(out)
    });
    Ok(per_cell.into_iter().collect::<Result<Vec<_>>>()?.into_iter().flatten().collect())
}

pub(super) fn basis(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    let suite = SuiteName::Basis;
    let cutoff = cfg.cutoff_or(Cutoff { n: 12, m: 8 });
    let bounds = BasisBounds { alpha: 2, beta: 2, tag: 2 };
    let per_cell = par_map(&cfg.grid(), |&(p, q, theta)| -> Result<CheckRecord> {
        let pres = SpherePresentation::new(p, q, theta)?;
        let monomials = basis_monomials(&pres, bounds);
        let base = with(cell(p, q, theta), "monomials", monomials.len());
        Ok(match independence_rank(&pres, &monomials, cutoff) {
            Ok(rank) => exact(suite, "independence rank", base, rank, monomials.len()),
            Err(e) => failure(suite, "independence rank", base, &e),
        })
    });
    per_cell.into_iter().collect()
}

pub(super) fn identities(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    let suite = SuiteName::Identities;
    let mut out = Vec::new();
    for &theta in &cfg.theta {
        let pres = SpherePresentation::sphere00(theta)?;
        for id in Identity::ALL {
            let range = if id == Identity::AkBlZero { 4 } else { 5 };
            let base = inputs(&[("theta", theta.to_string()), ("range", range.to_string())]);
            out.push(match check_identity(&pres, id, range) {
                Ok(holds) => exact(suite, id.name(), base, holds, true),
                Err(e) => failure(suite, id.name(), base, &e),
            });
        }
    }
    Ok(out)
}

pub(super) fn iso(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    let suite = SuiteName::Iso;
    let cutoff = cfg.cutoff_or(Cutoff::square(24));
    let per_cell = par_map(&cfg.grid(), |&(p, q, theta)| -> Vec<CheckRecord> {
        let k = cfg.k.unwrap_or_else(|| default_k(p, q));
        let base = with(cell(p, q, theta), "K", k);
        let mut out = Vec::new();
        match SeriesCoeffs::new(p, q, k) {
            Ok(c) => out.push(numeric(
                suite,
                "telescoping identity",
                base.clone(),
                c.telescoping_error(p, q),
                cfg.tolerance(1e-12),
            )),
            Err(e) => out.push(failure(suite, "telescoping identity", base.clone(), &e)),
        }
        match roundtrip_residual(p, q, theta, k, cutoff) {
            Ok(map) => out.extend(
                map.into_iter()
                    .map(|(key, v)| numeric(suite, format!("roundtrip {key}"), base.clone(), v, cfg.tolerance(1e-6))),
            ),
            Err(e) => out.push(failure(suite, "roundtrip", base.clone(), &e)),
        }
        match relation_check_images(p, q, theta, k, cutoff) {
            Ok(map) => out.extend(
                map.into_iter()
                    .map(|(key, v)| numeric(suite, format!("image relation {key}"), base.clone(), v, cfg.tolerance(1e-8))),
            ),
            Err(e) => out.push(failure(suite, "image relation", base.clone(), &e)),
        }
        out
    });
    Ok(per_cell.into_iter().flatten().collect())
}

fn pair_size(x: &FiberPair) -> f64 {
    x.f1.max_abs().max(x.f2.max_abs())
}

pub(super) fn fiber(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    let suite = SuiteName::Fiber;
    let tol = cfg.tolerance(1e-12);
    let mut out = Vec::new();
    for &theta in &cfg.theta {
        let base = inputs(&[("theta", theta.to_string())]);
        let bounds = SesBounds { cutoff: cfg.cutoff_or(SesBounds::default().cutoff), ..SesBounds::default() };
        let ses_inputs = with(
            with(with(base.clone(), "index", bounds.index), "power", bounds.power),
            "cutoff",
            format!("{},{}", bounds.cutoff.n, bounds.cutoff.m),
        );
        match ses_exactness_check(theta, bounds) {
            Ok(r) => {
                out.push(numeric(suite, "phi_c o j_c = 0", ses_inputs.clone(), r.phi_c_jc, tol));
                out.push(numeric(suite, "phi_d o j_d = 0", ses_inputs.clone(), r.phi_d_jd, tol));
                out.push(numeric(suite, "quotient classes satisfy torus relations", ses_inputs.clone(), r.quotient_relations, tol));
                out.push(exact(suite, "j_c injective (rank)", ses_inputs, r.jc_rank, r.jc_expected));
            }
            Err(e) => out.push(failure(suite, "short exact sequence", ses_inputs, &e)),
        }

        let pres = SpherePresentation::sphere00(theta)?;
        let plus = CrossedPresentation::plus(theta)?;
        let mut rng = cell_seed(cfg.seed, theta);
        let samples = with(base.clone(), "samples", 100);
        let mut fiber_defect: f64 = 0.0;
        let mut hom_defect: f64 = 0.0;
        let mut star_defect: f64 = 0.0;
        let mut iso_defect: f64 = 0.0;
        for _ in 0..100 {
            let e1 = random_element(&pres, &mut rng, 3, 5);
            let e2 = random_element(&pres, &mut rng, 3, 5);
            let (h1e, h2e) = (h_image(&e1)?, h_image(&e2)?);
            fiber_defect = fiber_defect.max(h1e.fiber_defect()?);
            hom_defect = hom_defect.max(pair_size(&h_image(&e1.mul(&e2))?.sub(&h1e.mul(&h2e))));
            star_defect = star_defect.max(pair_size(&h_image(&e1.adjoint())?.sub(&h1e.adjoint())));
            let c1 = random_element(&plus, &mut rng, 3, 5);
            let c2 = random_element(&plus, &mut rng, 3, 5);
            let lhs = plus_to_minus(&c1.mul(&c2))?;
            let rhs = plus_to_minus(&c1)?.mul(&plus_to_minus(&c2)?);
            iso_defect = iso_defect.max(lhs.sub(&rhs).max_abs());
            iso_defect = iso_defect.max(plus_to_minus(&c1.adjoint())?.sub(&plus_to_minus(&c1)?.adjoint()).max_abs());
        }
        out.push(numeric(suite, "h lands in the fiber product", samples.clone(), fiber_defect, tol));
        out.push(numeric(suite, "h multiplicative", samples.clone(), hom_defect, tol));
        out.push(numeric(suite, "h preserves adjoints", samples.clone(), star_defect, tol));
        out.push(numeric(suite, "plus to minus is a *-homomorphism", samples, iso_defect, tol));

        let mut diagram: f64 = 0.0;
        for l in Letter::ALL {
            let g = pres.element(&[l])?;
            let pair = h_image(&g)?;
            diagram = diagram.max(pair.f1.sub(&h1(&g)?).max_abs()).max(pair.f2.sub(&h2(&g)?).max_abs());
            diagram = diagram.max(pi1(&h1(&g)?)?.sub(&pi2(&h2(&g)?)?).max_abs());
            diagram = diagram.max(phi_c(&g)?.sub(&phi_c_direct(&g)?).max_abs());
        }
        out.push(numeric(suite, "diagram commutes on generators", base, diagram, tol));
    }
    Ok(out)
}

pub(super) fn lemma_gen(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    let suite = SuiteName::LemmaGen;
    let tol = cfg.tolerance(1e-12);
    let mut out = Vec::new();
    for &theta in &cfg.theta {
        let base = inputs(&[("theta", theta.to_string()), ("N", "3".to_string())]);
        out.push(exact(suite, "sphere00 family", base.clone(), lemma_gen_check(&sphere00_family(theta, 3)?, tol), true));
        out.push(exact(suite, "crossed family", base.clone(), lemma_gen_check(&crossed_family(theta, 3)?, tol), true));
        let mut corrupted = sphere00_family(theta, 1)?;
        corrupted.e[0][1] = corrupted.e[0][1].scale(Complex64::new(0.0, 0.0));
        let base1 = with(base, "N", 1);
        out.push(exact(suite, "corrupted family rejected", base1, !lemma_gen_check(&corrupted, tol), true));
    }
    Ok(out)
}

fn random_matrix(rng: &mut ChaCha8Rng) -> IntMatrix {
    let rows = rng.gen_range(1..=8);
    let cols = rng.gen_range(1..=8);
    let data: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-20..=20)).collect()).collect();
    IntMatrix::from_rows(&data)
}

pub(super) fn ktheory(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    let suite = SuiteName::Ktheory;
    let mut out = Vec::new();
    let presets: Vec<String> = match &cfg.preset {
        Some(name) => vec![name.clone()],
        None => SixTermData::preset_names().iter().map(|s| s.to_string()).collect(),
    };
    for name in presets {
        let base = inputs(&[("preset", name.clone())]);
        match SixTermData::preset(&name).and_then(|d| solve_six_term(&d)) {
            Ok(sol) => {
                out.push(exact(suite, "G0", base.clone(), sol.g0.to_string(), "Z".to_string()));
                out.push(exact(suite, "G1", base.clone(), sol.g1.to_string(), "Z".to_string()));
                out.push(exact(suite, "exactness certificate", base, sol.certificate, true));
            }
            Err(e) => out.push(failure(suite, "six-term", base, &e)),
        }
    }

    let z1 = FGAbelianGroup::free(1);
    let toeplitz = GroupHom::zero(z1.clone(), z1);
    let base = inputs(&[("map", "0".to_string())]);
    match pv_sequence(1, 0, &toeplitz) {
        Ok((k0, k1)) => out.push(exact(suite, "pv sequence (K0, K1)", base, format!("({k0}, {k1})"), "(Z, Z)".into())),
        Err(e) => out.push(failure(suite, "pv sequence (K0, K1)", base, &e)),
    }

    let diff = GroupHom::from_rows(FGAbelianGroup::free(2), FGAbelianGroup::free(2), &[vec![1, -1], vec![0, 0]])?;
    let base = inputs(&[("map", "(m,n) -> (m-n,0)".to_string())]);
    out.push(exact(suite, "kernel", base.clone(), kernel(&diff).to_string(), "Z".into()));
    out.push(exact(suite, "cokernel", base, cokernel(&diff).to_string(), "Z".into()));

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut snf_failures = 0usize;
    let mut rank_failures = 0usize;
    for _ in 0..500 {
        let m = random_matrix(&mut rng);
        if !smith_normal_form(&m).verify(&m) {
            snf_failures += 1;
        }
        let h = GroupHom::new(FGAbelianGroup::free(m.cols()), FGAbelianGroup::free(m.rows()), m.clone())?;
        if kernel(&h).free_rank() + image_rank(&h) != m.cols() {
            rank_failures += 1;
        }
    }
    let base = inputs(&[("matrices", "500".to_string()), ("max_size", "8".to_string()), ("entries", "[-20, 20]".to_string())]);
    out.push(exact(suite, "smith normal form property", base.clone(), snf_failures, 0));
    out.push(exact(suite, "rank-nullity", base, rank_failures, 0));
    Ok(out)
}
