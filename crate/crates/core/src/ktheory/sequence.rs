use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::group::{check_exact, cokernel_projection, kernel_inclusion, FGAbelianGroup, GroupHom};
use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// K-groups of a crossed product by `Z` from the reduced sequence
/// `0 → K1 → Z^r →(α) Z^r → K0 → 0`, available when `K1` of the
/// coefficient algebra vanishes. Returns `(K0, K1)`.
pub fn pv_sequence(k0_rank: usize, k1_rank: usize, alpha_star: &GroupHom) -> Result<(FGAbelianGroup, FGAbelianGroup)> {
    if k1_rank != 0 {
        return Err(Error::PatternNotApplicable(format!("K1 of the coefficient algebra has rank {k1_rank}")));
    }
    let free = FGAbelianGroup::free(k0_rank);
    if alpha_star.domain() != &free || alpha_star.codomain() != &free {
        return Err(Error::InconsistentRanks(format!(
            "map {} -> {} on K0 of rank {k0_rank}",
            alpha_star.domain(),
            alpha_star.codomain()
        )));
    }
    Ok((cokernel_projection(alpha_star).codomain().clone(), kernel_inclusion(alpha_star).domain().clone()))
}

/// Connecting maps of the hexagon declared zero in advance.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnownZero {
    /// `K0` of the overlap into `G1`.
    #[serde(default)]
    pub delta0: bool,
    /// `K1` of the overlap into `G0`.
    #[serde(default)]
    pub delta1: bool,
}

/// The hexagon
///
/// ```text
/// G0 -> M0 --top--> D0
///  ^                 |
///  |                 v
/// D1 <--bottom-- M1 <- G1
/// ```
///
/// with `M_j = K_j(A1) ⊕ K_j(A2)` and `D_j = K_j` of the overlap.
#[derive(Clone, Debug)]
pub struct SixTermData {
    pub top: GroupHom,
    pub bottom: GroupHom,
    pub known_zero: KnownZero,
    pub generator_labels: BTreeMap<String, Vec<String>>,
}

#[derive(Clone, Debug)]
pub struct SixTermSolution {
    pub g0: FGAbelianGroup,
    pub g1: FGAbelianGroup,
    /// `G0 → M0 → D0 → G1 → M1 → D1 → G0`.
    pub hexagon: Vec<GroupHom>,
    /// Outcome of [`check_exact`] on the hexagon closed up cyclically.
    pub certificate: bool,
}

impl SixTermData {
    pub fn new(top: GroupHom, bottom: GroupHom) -> Self {
        SixTermData { top, bottom, known_zero: KnownZero::default(), generator_labels: BTreeMap::new() }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: SixTermConfig = serde_json::from_str(text)?;
        cfg.build()
    }

    pub fn preset(name: &str) -> Result<Self> {
        match name {
            "s3-quantum" => Self::from_json(S3_QUANTUM),
            "s3-classical" => Self::from_json(S3_CLASSICAL),
            other => Err(Error::Config(format!("unknown preset `{other}`"))),
        }
    }

    pub fn preset_names() -> &'static [&'static str] {
        &["s3-quantum", "s3-classical"]
    }
}

/// `G` sits in `0 → coker(into) → G → ker(out) → 0`; it is determined when
/// either end vanishes or when `ker(out)` is free, in which case the sequence
/// splits. Returns `G`, the map from the previous corner into `G` and the
/// map from `G` onward.
fn corner(into: &GroupHom, out: &GroupHom, name: &str) -> Result<(FGAbelianGroup, GroupHom, GroupHom)> {
    let quotient = cokernel_projection(into);
    let inclusion = kernel_inclusion(out);
    if !inclusion.domain().is_free() && !quotient.codomain().is_trivial() {
        return Err(Error::PatternNotApplicable(format!(
            "{name} is an extension of {} by {}",
            inclusion.domain(),
            quotient.codomain()
        )));
    }
    // G = coker(into) ⊕ ker(out); canonical because the second summand is free
    // whenever the first is nonzero.
    let (c, k) = (quotient.codomain().generators(), inclusion.domain().generators());
    let factors: Vec<u64> =
        quotient.codomain().invariant_factors().iter().chain(inclusion.domain().invariant_factors()).copied().collect();
    let g = FGAbelianGroup::new(factors)?;
    let mut first = IntMatrix::zeros(c + k, into.codomain().generators());
    for i in 0..c {
        for j in 0..first.cols() {
            first[(i, j)] = quotient.matrix()[(i, j)].clone();
        }
    }
    let mut second = IntMatrix::zeros(out.domain().generators(), c + k);
    for i in 0..second.rows() {
        for j in 0..k {
            second[(i, c + j)] = inclusion.matrix()[(i, j)].clone();
        }
    }
    Ok((
        g.clone(),
        GroupHom::new(into.codomain().clone(), g.clone(), first)?,
        GroupHom::new(g, out.domain().clone(), second)?,
    ))
}

pub fn solve_six_term(data: &SixTermData) -> Result<SixTermSolution> {
    if data.known_zero.delta1 && !cokernel_projection(&data.bottom).codomain().is_trivial() {
        return Err(Error::PatternNotApplicable("D1 -> G0 declared zero but the bottom map is not onto".into()));
    }
    if data.known_zero.delta0 && !cokernel_projection(&data.top).codomain().is_trivial() {
        return Err(Error::PatternNotApplicable("D0 -> G1 declared zero but the top map is not onto".into()));
    }
    let (g0, delta1, alpha0) = corner(&data.bottom, &data.top, "G0")?;
    let (g1, delta0, alpha1) = corner(&data.top, &data.bottom, "G1")?;
    let hexagon = vec![alpha0, data.top.clone(), delta0, alpha1, data.bottom.clone(), delta1];
    let mut closed = hexagon.clone();
    closed.push(hexagon[0].clone());
    let certificate = check_exact(&closed)?;
    Ok(SixTermSolution { g0, g1, hexagon, certificate })
}

#[derive(Deserialize)]
struct GroupsConfig {
    k0_pieces: FGAbelianGroup,
    k0_boundary: FGAbelianGroup,
    k1_pieces: FGAbelianGroup,
    k1_boundary: FGAbelianGroup,
}

#[derive(Deserialize)]
struct SixTermConfig {
    groups: GroupsConfig,
    top: Vec<Vec<i64>>,
    bottom: Vec<Vec<i64>>,
    #[serde(default)]
    known_zero: KnownZero,
    #[serde(default)]
    generator_labels: BTreeMap<String, Vec<String>>,
}

impl SixTermConfig {
    fn build(self) -> Result<SixTermData> {
        let g = self.groups;
        let top = GroupHom::from_rows(g.k0_pieces, g.k0_boundary, &self.top)?;
        let bottom = GroupHom::from_rows(g.k1_pieces, g.k1_boundary, &self.bottom)?;
        Ok(SixTermData { top, bottom, known_zero: self.known_zero, generator_labels: self.generator_labels })
    }
}

const S3_QUANTUM: &str = r#"{
  "groups": {
    "k0_pieces": [0, 0],
    "k0_boundary": [0, 0],
    "k1_pieces": [0, 0],
    "k1_boundary": [0, 0]
  },
  "top": [[1, -1], [0, 0]],
  "bottom": [[1, 0], [0, -1]],
  "generator_labels": {
    "k0_pieces": ["[1] in T x_theta Z", "[1] in T x_-theta Z"],
    "k0_boundary": ["[1] in T^2_theta", "Hopf line bundle on the noncommutative torus"],
    "k1_pieces": ["unitary implementing theta", "unitary implementing -theta"],
    "k1_boundary": ["[x]", "[y]"]
  }
}"#;

const S3_CLASSICAL: &str = r#"{
  "groups": {
    "k0_pieces": [0, 0],
    "k0_boundary": [0, 0],
    "k1_pieces": [0, 0],
    "k1_boundary": [0, 0]
  },
  "top": [[1, -1], [0, 0]],
  "bottom": [[1, 0], [0, -1]],
  "generator_labels": {
    "k0_pieces": ["trivial line bundle on D x S^1", "trivial line bundle on S^1 x D"],
    "k0_boundary": ["trivial line bundle on T^2", "Bott class on T^2"],
    "k1_pieces": ["circle coordinate of D x S^1", "circle coordinate of S^1 x D"],
    "k1_boundary": ["first circle coordinate", "second circle coordinate"]
  }
}"#;

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> FGAbelianGroup {
        FGAbelianGroup::free(n)
    }

    #[test]
    fn toeplitz_pattern() {
        let zero_map = GroupHom::zero(z(1), z(1));
        assert_eq!(pv_sequence(1, 0, &zero_map).unwrap(), (z(1), z(1)));
        let id = GroupHom::identity(z(1));
        assert_eq!(pv_sequence(1, 0, &id).unwrap(), (FGAbelianGroup::trivial(), FGAbelianGroup::trivial()));
        let double = GroupHom::from_rows(z(1), z(1), &[vec![2]]).unwrap();
        let (k0, k1) = pv_sequence(1, 0, &double).unwrap();
        assert_eq!(k0.invariant_factors(), &[2]);
        assert!(k1.is_trivial());
        assert!(matches!(pv_sequence(2, 0, &id), Err(Error::InconsistentRanks(_))));
        assert!(matches!(pv_sequence(1, 1, &id), Err(Error::PatternNotApplicable(_))));
    }

    #[test]
    fn presets_give_z_z() {
        for name in SixTermData::preset_names() {
            let sol = solve_six_term(&SixTermData::preset(name).unwrap()).unwrap();
            assert_eq!(sol.g0, z(1), "{name}");
            assert_eq!(sol.g1, z(1), "{name}");
            assert!(sol.certificate);
        }
        assert!(matches!(SixTermData::preset("nope"), Err(Error::Config(_))));
    }

    #[test]
    fn both_isomorphisms() {
        let sol = solve_six_term(&SixTermData::new(GroupHom::identity(z(2)), GroupHom::identity(z(1)))).unwrap();
        assert!(sol.g0.is_trivial() && sol.g1.is_trivial() && sol.certificate);
    }

    #[test]
    fn split_extension() {
        // Both corners are extensions of Z by Z, which split.
        let zero = GroupHom::zero(z(1), z(1));
        let sol = solve_six_term(&SixTermData::new(zero.clone(), zero)).unwrap();
        assert_eq!((sol.g0, sol.g1), (z(2), z(2)));
        assert!(sol.certificate);
    }

    #[test]
    fn unresolved_extension() {
        // 0 -> Z/2 -> G0 -> Z/2 -> 0 does not determine G0.
        let z2 = FGAbelianGroup::new(vec![2]).unwrap();
        let top = GroupHom::zero(z2.clone(), z2.clone());
        let bottom = GroupHom::zero(z2.clone(), z2);
        assert!(matches!(solve_six_term(&SixTermData::new(top, bottom)), Err(Error::PatternNotApplicable(_))));
    }

    #[test]
    fn inconsistent_known_zero() {
        let mut data = SixTermData::preset("s3-quantum").unwrap();
        data.known_zero.delta0 = true;
        assert!(matches!(solve_six_term(&data), Err(Error::PatternNotApplicable(_))));
        data.known_zero = KnownZero { delta0: false, delta1: true };
        assert!(solve_six_term(&data).is_ok());
    }

    #[test]
    fn config_validation() {
        let bad = r#"{"groups":{"k0_pieces":[3,2],"k0_boundary":[0],"k1_pieces":[],"k1_boundary":[]},
                      "top":[[1,1]],"bottom":[]}"#;
        assert!(SixTermData::from_json(bad).is_err());
    }
}
