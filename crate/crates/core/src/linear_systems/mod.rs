//! Plane curves with assigned multiplicities at general points.

mod pencil;
mod ternary;

pub use pencil::{
    cubic_pencil_discriminant, discriminant_with_nodes, general_position_violations,
    sample_pencil, PencilSample, PlanePoint, SampledPencil, CUBIC_MONOMIALS,
};
pub use ternary::Ternary;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::picard::{PositionAssumption, SurfaceModel};

/// `V(d; r_1 x_1, ..., r_n x_n)`: degree-`d` plane curves with multiplicity at
/// least `r_i` at the i-th of `n` distinct general points.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinearSystemSpec {
    pub d: i64,
    pub mults: Vec<i64>,
}

impl LinearSystemSpec {
    pub fn new(d: i64, mults: impl Into<Vec<i64>>) -> Result<Self> {
        let mults = mults.into();
        if d < 1 {
            return Err(Error::InvalidLinearSystem(format!("degree must be >= 1, got {d}")));
        }
        if let Some(&m) = mults.iter().find(|&&m| m < 1) {
            return Err(Error::InvalidLinearSystem(format!("multiplicities must be >= 1, got {m}")));
        }
        Ok(LinearSystemSpec { d, mults })
    }

    pub fn expected_dim(&self) -> i64 {
        expected_dim_raw(self.d, &self.mults)
    }
}

fn triangular(m: i64) -> i64 {
    m * (m + 1) / 2
}

/// `d(d+3)/2 - sum r_i(r_i+1)/2`, the lower bound on the projective dimension.
/// Zero multiplicities are allowed and contribute nothing.
pub fn expected_dim_raw(d: i64, mults: &[i64]) -> i64 {
    d * (d + 3) / 2 - mults.iter().map(|&m| triangular(m)).sum::<i64>()
}

pub fn expected_dim(spec: &LinearSystemSpec) -> i64 {
    spec.expected_dim()
}

/// The dimension count guarantees a curve when `expected_dim >= 0`.
pub fn nonempty_at_general_points(spec: &LinearSystemSpec) -> bool {
    spec.expected_dim() >= 0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Existence {
    NonEmpty,
    /// Negative expected dimension at very general points.
    Empty,
    /// Negative expected dimension, but only general position is assumed.
    Undetermined,
}

/// Existence verdict. Emptiness is only concluded for very general points.
pub fn existence(spec: &LinearSystemSpec, surface: &SurfaceModel) -> Existence {
    if nonempty_at_general_points(spec) {
        Existence::NonEmpty
    } else if surface.assumption == PositionAssumption::VeryGeneral {
        Existence::Empty
    } else {
        Existence::Undetermined
    }
}

/// An irreducible degree-`d` curve and a degree-`aux_degree` curve without
/// common components meet in at most `d * aux_degree` points with
/// multiplicity. Returns whether `mult_sum` respects that bound.
pub fn bezout_mult_bound(d: i64, aux_degree: i64, mult_sum: i64) -> Result<bool> {
    if d < 1 || aux_degree < 1 {
        return Err(Error::InvalidLinearSystem(format!(
            "Bezout needs positive degrees, got {d} and {aux_degree}"
        )));
    }
    Ok(mult_sum <= d * aux_degree)
}

/// Line, conic and cubic compatibility tests for an irreducible degree-`d`
/// curve with multiplicities `mults` at general points, other than the
/// auxiliary curve itself:
/// any two multiplicities sum to at most `d`, any five to at most `2d`, and
/// any seven with one of them counted twice to at most `3d`.
pub fn passes_bezout_filters(d: i64, mults: &[i64]) -> bool {
    let mut s = mults.to_vec();
    s.sort_unstable_by(|x, y| y.cmp(x));
    let top = |k: usize| -> i64 { s.iter().take(k).sum() };
    if s.len() >= 2 && top(2) > d {
        return false;
    }
    if top(5) > 2 * d {
        return false;
    }
    let doubled = s.first().copied().unwrap_or(0);
    top(7) + doubled <= 3 * d
}

/// Hypotheses for a smooth cubic through eight points.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EightPointHypotheses {
    pub four_collinear: bool,
    pub seven_on_conic: bool,
}

impl EightPointHypotheses {
    /// Eight points in general position.
    pub fn general() -> Self {
        Self::default()
    }
}

/// Whether a smooth cubic through the eight points is guaranteed: no four
/// collinear and no conic through seven of them. The smoothness itself is an
/// assumption-backed conclusion, not certified over coordinates.
pub fn smooth_cubic_through_eight(h: &EightPointHypotheses) -> bool {
    !h.four_collinear && !h.seven_on_conic
}

/// Maximum of `sum mult` over the eight points `x_1..x_7, x` for an
/// irreducible component of degree `e`: Bezout against a cubic through the
/// eight points and one further point of the component gives `3e - 1`.
pub fn component_mult_bound(e: i64) -> i64 {
    3 * e - 1
}

/// One decomposition type of the sextic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionCase {
    pub name: String,
    pub component_degrees: Vec<i64>,
    pub component_bounds: Vec<i64>,
    pub max_total: i64,
    pub excluded: bool,
}

/// Counting certificate that the sextic `V(6; 2^7, 3)` member is irreducible
/// and reduced at general points, and that its multiplicities are exactly the
/// assigned ones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExclusionReport {
    pub degree: i64,
    pub mults: Vec<i64>,
    pub expected_dim: i64,
    /// `sum mults`, the total an actual member must reach.
    pub required_total: i64,
    /// Bezout against a cubic through the eight points plus one more point of
    /// the sextic.
    pub irreducible_bound: i64,
    /// Irreducible member has multiplicities exactly as assigned.
    pub mults_forced: bool,
    pub cases: Vec<DecompositionCase>,
    /// Every degree partition with at least two parts, not just the named ones.
    pub all_partitions_excluded: bool,
}

impl ExclusionReport {
    pub fn all_excluded(&self) -> bool {
        self.cases.iter().all(|c| c.excluded) && self.all_partitions_excluded
    }
}

fn decomposition_case(name: &str, degrees: &[i64], required: i64) -> DecompositionCase {
    let bounds: Vec<i64> = degrees.iter().map(|&e| component_mult_bound(e)).collect();
    let max_total = bounds.iter().sum();
    DecompositionCase {
        name: name.to_string(),
        component_degrees: degrees.to_vec(),
        component_bounds: bounds,
        max_total,
        excluded: max_total < required,
    }
}

fn partitions(n: i64, max_part: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if n == 0 {
        out.push(prefix.clone());
        return;
    }
    for p in (1..=max_part.min(n)).rev() {
        prefix.push(p);
        partitions(n - p, p, prefix, out);
        prefix.pop();
    }
}

/// The exclusion argument for the sextic with seven double points and a
/// triple point at `x` on `X_7`.
pub fn decomposition_excluded_r7() -> ExclusionReport {
    let mut mults = vec![2; 7];
    mults.push(3);
    let degree = 6;
    let required_total: i64 = mults.iter().sum();
    let irreducible_bound = degree * 3 - 1;
    let cases = vec![
        decomposition_case("two cubics", &[3, 3], required_total),
        decomposition_case("quintic + line", &[5, 1], required_total),
        decomposition_case("quartic + conic", &[4, 2], required_total),
        decomposition_case("three conics", &[2, 2, 2], required_total),
    ];
    let mut parts = Vec::new();
    partitions(degree, degree, &mut Vec::new(), &mut parts);
    let all_partitions_excluded = parts
        .iter()
        .filter(|p| p.len() >= 2)
        .all(|p| p.iter().map(|&e| component_mult_bound(e)).sum::<i64>() < required_total);
    ExclusionReport {
        degree,
        expected_dim: expected_dim_raw(degree, &mults),
        mults,
        required_total,
        irreducible_bound,
        mults_forced: irreducible_bound == required_total,
        cases,
        all_partitions_excluded,
    }
}

/// Certificate for the member of `|-K_{X_r}|` with a double point at a
/// general `x`, `r <= 6`: the plane cubic through `x_1..x_r` singular at `x`
/// exists by the dimension count, and an irreducible cubic has multiplicity
/// at most 2 at `x` (a line through `x` and another curve point meets it in
/// `mult_x + 1 <= 3`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoublePointCubic {
    pub r: usize,
    pub expected_dim: i64,
    pub max_mult_at_x: i64,
}

pub fn double_point_cubic(r: usize) -> Result<DoublePointCubic> {
    if r > 6 {
        return Err(Error::UnsupportedR { r, reason: "a cubic through r points double at x needs r <= 6" });
    }
    let mut mults = vec![1; r];
    mults.push(2);
    let max_mult_at_x = (1..=3).rev().find(|&m| bezout_mult_bound(3, 1, m + 1).unwrap()).unwrap();
    Ok(DoublePointCubic { r, expected_dim: expected_dim_raw(3, &mults), max_mult_at_x })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn spec(d: i64, mults: &[i64]) -> LinearSystemSpec {
        LinearSystemSpec::new(d, mults.to_vec()).unwrap()
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(expected_dim(&spec(6, &[2, 2, 2, 2, 2, 2, 2, 3])), 0);
        assert_eq!(expected_dim(&spec(4, &[1; 13])), 1);
        assert_eq!(expected_dim(&spec(3, &[1; 13])), -4);
    }

    #[test]
    fn nonemptiness_examples() {
        assert!(nonempty_at_general_points(&spec(3, &[1, 1, 1, 1, 1, 1, 2])));
        assert!(!nonempty_at_general_points(&spec(3, &[1, 1, 1, 1, 1, 1, 1, 1, 2])));
        assert!(nonempty_at_general_points(&spec(1, &[1, 1])));
    }

    #[test]
    fn emptiness_needs_very_general() {
        let s = spec(3, &[1; 13]);
        assert_eq!(existence(&s, &SurfaceModel::very_general(13)), Existence::Empty);
        assert_eq!(existence(&s, &SurfaceModel::general(13)), Existence::Undetermined);
        assert_eq!(existence(&spec(4, &[1; 13]), &SurfaceModel::general(13)), Existence::NonEmpty);
    }

    #[test]
    fn invalid_specs() {
        assert!(LinearSystemSpec::new(0, vec![1]).is_err());
        assert!(LinearSystemSpec::new(2, vec![1, 0]).is_err());
    }

    #[test]
    fn bezout_examples() {
        assert!(bezout_mult_bound(3, 1, 2 + 1).unwrap());
        assert!(bezout_mult_bound(6, 3, 18).unwrap());
        assert!(!bezout_mult_bound(6, 3, 19).unwrap());
        assert!(bezout_mult_bound(0, 3, 1).is_err());
    }

    #[test]
    fn filters() {
        assert!(passes_bezout_filters(6, &[2, 2, 2, 2, 2, 2, 2, 3]));
        assert!(!passes_bezout_filters(1, &[1, 1]));
        assert!(!passes_bezout_filters(2, &[1, 1, 1, 1, 1]));
        assert!(!passes_bezout_filters(3, &[2, 1, 1, 1, 1, 1, 1]));
        assert!(passes_bezout_filters(3, &[2, 1, 1, 1, 1, 1]));
    }

    #[test]
    fn sextic_exclusions() {
        let rep = decomposition_excluded_r7();
        assert_eq!(rep.required_total, 17);
        assert_eq!(rep.expected_dim, 0);
        assert_eq!(rep.irreducible_bound, 17);
        assert!(rep.mults_forced);
        let totals: Vec<(String, i64)> = rep.cases.iter().map(|c| (c.name.clone(), c.max_total)).collect();
        assert_eq!(
            totals,
            vec![
                ("two cubics".to_string(), 16),
                ("quintic + line".to_string(), 16),
                ("quartic + conic".to_string(), 16),
                ("three conics".to_string(), 15),
            ]
        );
        assert_eq!(rep.cases[1].component_bounds, vec![14, 2]);
        assert!(rep.all_excluded());
    }

    #[test]
    fn eight_point_cubic() {
        assert!(smooth_cubic_through_eight(&EightPointHypotheses::general()));
        assert!(!smooth_cubic_through_eight(&EightPointHypotheses { four_collinear: true, seven_on_conic: false }));
    }

    #[test]
    fn double_point_member() {
        for r in 0..=6 {
            let c = double_point_cubic(r).unwrap();
            assert_eq!(c.expected_dim, 6 - r as i64);
            assert_eq!(c.max_mult_at_x, 2);
        }
        assert!(double_point_cubic(7).is_err());
    }

    proptest! {
        #[test]
        fn expected_dim_symmetric_and_decreasing(
            d in 1i64..15,
            mults in prop::collection::vec(1i64..8, 1..10),
            i in any::<prop::sample::Index>(),
        ) {
            let base = expected_dim_raw(d, &mults);
            let mut rev = mults.clone();
            rev.reverse();
            prop_assert_eq!(base, expected_dim_raw(d, &rev));
            let k = i.index(mults.len());
            let mut bumped = mults.clone();
            bumped[k] += 1;
            prop_assert!(expected_dim_raw(d, &bumped) < base);
            // true -> false only
            if base < 0 {
                prop_assert!(expected_dim_raw(d, &bumped) < 0);
            }
        }
    }
}
