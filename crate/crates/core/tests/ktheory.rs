use num_bigint::BigInt;
use proptest::prelude::*;
use qsphere::ktheory::{
    check_exact, cokernel, cokernel_projection, image_rank, kernel, kernel_inclusion, pv_sequence, smith_normal_form,
    solve_six_term, FGAbelianGroup, GroupHom, IntMatrix, SixTermData,
};

fn matrix(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-20i64..=20, c), r))
}

/// The first invariant factor is the gcd of all entries.
fn gcd_of_entries(rows: &[Vec<i64>]) -> i64 {
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 { a.abs() } else { gcd(b, a % b) }
    }
    rows.iter().flatten().fold(0, |g, &x| gcd(g, x))
}

fn small_group() -> impl Strategy<Value = FGAbelianGroup> {
    prop::collection::vec(prop::sample::select(vec![0u64, 2, 3, 4, 6]), 0..=3).prop_map(|f| FGAbelianGroup::canonical(&f))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn smith_form_properties(rows in matrix(8)) {
        let m = IntMatrix::from_rows(&rows);
        let snf = smith_normal_form(&m);
        prop_assert!(snf.verify(&m));
        let first = snf.diagonal()[0].clone();
        prop_assert_eq!(first, BigInt::from(gcd_of_entries(&rows)));
    }

    #[test]
    fn rank_nullity(rows in matrix(6)) {
        let m = IntMatrix::from_rows(&rows);
        let h = GroupHom::new(FGAbelianGroup::free(m.cols()), FGAbelianGroup::free(m.rows()), m.clone()).unwrap();
        let (k, c) = (kernel(&h), cokernel(&h));
        prop_assert_eq!(k.free_rank() + image_rank(&h), m.cols());
        prop_assert_eq!(c.free_rank() + image_rank(&h), m.rows());
        prop_assert!(k.is_free());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn kernel_and_cokernel_close_up_exactly(a in small_group(), b in small_group(), seed in prop::collection::vec(-6i64..=6, 9)) {
        // A torsion generator may only hit multiples of the target factor.
        let rows: Vec<Vec<i64>> = (0..b.generators())
            .map(|i| (0..a.generators()).map(|j| {
                let x = seed[(3 * i + j) % seed.len()];
                match (a.invariant_factors()[j], b.invariant_factors()[i]) {
                    (0, _) => x,
                    (_, 0) => 0,
                    (_, c) => x * c as i64,
                }
            }).collect())
            .collect();
        let h = GroupHom::from_rows(a.clone(), b.clone(), &rows).unwrap();
        let zero = FGAbelianGroup::trivial();
        let inc = kernel_inclusion(&h);
        let proj = cokernel_projection(&h);
        let seq = [
            GroupHom::zero(zero.clone(), inc.domain().clone()),
            inc.clone(),
            h.clone(),
            proj.clone(),
            GroupHom::zero(proj.codomain().clone(), zero),
        ];
        prop_assert!(check_exact(&seq).unwrap());
    }
}

#[test]
fn examples() {
    let z = FGAbelianGroup::free;
    let d = |rows: &[Vec<i64>]| smith_normal_form(&IntMatrix::from_rows(rows)).diagonal();
    assert_eq!(d(&[vec![1, -1], vec![0, 0]]), vec![BigInt::from(1), BigInt::from(0)]);
    assert_eq!(d(&[vec![2, 0], vec![0, 3]]), vec![BigInt::from(1), BigInt::from(6)]);

    let top = GroupHom::from_rows(z(2), z(2), &[vec![1, -1], vec![0, 0]]).unwrap();
    assert_eq!(kernel(&top), z(1));
    assert_eq!(cokernel(&top), z(1));
    assert_eq!(kernel(&GroupHom::zero(z(2), z(2))), z(2));

    assert_eq!(pv_sequence(1, 0, &GroupHom::zero(z(1), z(1))).unwrap(), (z(1), z(1)));

    for preset in ["s3-quantum", "s3-classical"] {
        let sol = solve_six_term(&SixTermData::preset(preset).unwrap()).unwrap();
        assert_eq!((sol.g0.to_string(), sol.g1.to_string()), ("Z".to_string(), "Z".to_string()));
        assert!(sol.certificate);
        assert_eq!(sol.hexagon.len(), 6);
    }
}

#[test]
fn json_config_roundtrip() {
    let text = r#"{
        "groups": {"k0_pieces": [0, 0], "k0_boundary": [0, 0], "k1_pieces": [0], "k1_boundary": [0]},
        "top": [[1, -1], [0, 0]],
        "bottom": [[2]]
    }"#;
    let data = SixTermData::from_json(text).unwrap();
    // Bottom map x2 on Z: kernel 0, cokernel Z/2.
    let sol = solve_six_term(&data).unwrap();
    assert_eq!(sol.g0.to_string(), "Z/2 + Z");
    assert_eq!(sol.g1.to_string(), "Z");
    assert!(sol.certificate);
}
