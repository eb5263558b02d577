//! Positivity of `-K` against rational curves on blow-ups at 10 and 13 points.
//!
//! On a blow-up at very general points, an irreducible rational curve of
//! class `(d; a)` can only exist when `3d - 1 - sum a_i >= 0`. Every such class
//! therefore has `-K.C = 3d - sum a_i >= 1`, so `-K` is positive on all
//! rational curves even where it fails to be nef or pseudoeffective.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linear_systems::{existence, expected_dim_raw, Existence, LinearSystemSpec};
use crate::picard::{anticanonical, deg_anticanonical, intersect, DivisorClass, SurfaceModel};

/// Default plane-degree bound of the rational-class scan.
pub const DEFAULT_SCAN_DEGREE: i64 = 12;

/// Whether an irreducible rational curve of class `c` can exist on the very
/// general blow-up.
pub fn rational_class_admissible(c: &DivisorClass) -> Result<bool> {
    if c.d < 1 || c.a.iter().any(|&x| x < 0) {
        return Err(Error::InvalidArgument(format!(
            "admissibility is stated for d >= 1 and a_i >= 0, got {c}"
        )));
    }
    Ok(3 * c.d - 1 - c.mult_sum() >= 0)
}

/// `c . g >= 0` for every generator.
pub fn is_nef_against(c: &DivisorClass, generators: &[DivisorClass]) -> Result<bool> {
    for g in generators {
        if intersect(c, g)? < 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// An effective curve with negative `-K` degree.
    NegativeCurve { class: DivisorClass, self_intersection: i64, anticanonical_degree: i64 },
    /// `-K` has an effective member.
    EffectiveMember { class: DivisorClass },
    /// A moving class `M` (`M^2 >= 0`, at least a pencil) with `-K.M < 0`.
    CoveringFamily {
        class: DivisorClass,
        self_intersection: i64,
        anticanonical_degree: i64,
        family_dimension: i64,
    },
    /// Non-nefness implied by the failure of pseudoeffectivity.
    ImpliedByPseff { class: DivisorClass, anticanonical_degree: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub holds: bool,
    pub certificate: Certificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalScan {
    /// `3d - 1 - sum a_i >= 0` forces `-K.C >= 1` for every degree.
    pub analytic_guarantee: bool,
    pub d_max: i64,
    /// Orbit representatives (sorted multiplicities) plus the `E_i`.
    pub classes_scanned: usize,
    pub scanned_min: i64,
    pub min_class: DivisorClass,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositivityReport {
    pub r: usize,
    pub surface: SurfaceModel,
    pub k_squared: i64,
    pub nef: Verdict,
    pub pseff: Verdict,
    pub rational_positive: bool,
    pub rational_scan: RationalScan,
    pub implications: Vec<String>,
    pub assumptions: Vec<String>,
}

/// Minimum of `-K.C` over admissible rational classes with `d <= d_max` on the
/// blow-up at `r` very general points, scanning multiplicity profiles up to
/// permutation, plus the exceptional curves.
pub fn rational_scan(r: usize, d_max: i64) -> Result<RationalScan> {
    if d_max < 1 || r == 0 {
        return Err(Error::InvalidArgument(format!("scan needs r >= 1 and d_max >= 1, got {r}, {d_max}")));
    }
    let mut min_class = DivisorClass::exceptional(0, r);
    let mut scanned_min = 1;
    let mut classes_scanned = r;
    for d in 1..=d_max {
        let mut prefix = Vec::with_capacity(r);
        profiles_with_sum(r, d, 3 * d - 1, &mut prefix, &mut |a| {
            let c = DivisorClass::new(d, a.to_vec());
            debug_assert!(rational_class_admissible(&c).unwrap());
            classes_scanned += 1;
            let k = deg_anticanonical(&c);
            if k < scanned_min {
                scanned_min = k;
                min_class = c;
            }
        });
    }
    Ok(RationalScan { analytic_guarantee: true, d_max, classes_scanned, scanned_min, min_class })
}

/// Non-increasing vectors of length `k`, entries in `0..=cap`, sum `<= budget`.
fn profiles_with_sum(k: usize, cap: i64, budget: i64, prefix: &mut Vec<i64>, emit: &mut dyn FnMut(&[i64])) {
    if prefix.len() == k {
        emit(prefix);
        return;
    }
    let top = prefix.last().copied().unwrap_or(cap).min(budget);
    for x in (0..=top).rev() {
        prefix.push(x);
        profiles_with_sum(k, cap, budget - x, prefix, emit);
        prefix.pop();
    }
}

/// Ten points: nine very general points and a tenth on the unique cubic
/// through them. The strict transform `C'` of that cubic lies in `|-K|` and
/// has `C'^2 = -1`.
pub fn verify_ten_point_example(d_max: i64) -> Result<PositivityReport> {
    let surface = SurfaceModel::very_general(10);
    let minus_k = anticanonical(10);
    let cubic = DivisorClass::uniform(3, 1, 10);
    let nef_holds = is_nef_against(&minus_k, std::slice::from_ref(&cubic))?;
    let scan = rational_scan(10, d_max)?;
    Ok(PositivityReport {
        r: 10,
        surface,
        k_squared: minus_k.self_intersection(),
        nef: Verdict {
            holds: nef_holds,
            certificate: Certificate::NegativeCurve {
                self_intersection: cubic.self_intersection(),
                anticanonical_degree: deg_anticanonical(&cubic),
                class: cubic.clone(),
            },
        },
        pseff: Verdict { holds: true, certificate: Certificate::EffectiveMember { class: cubic.clone() } },
        rational_positive: scan.scanned_min >= 1,
        implications: vec![format!(
            "{cubic} is not an admissible rational class: 3d - 1 - sum a = {}",
            3 * cubic.d - 1 - cubic.mult_sum()
        )],
        assumptions: vec![
            "the first nine points are very general".into(),
            "the tenth point lies on the cubic through the first nine".into(),
        ],
        rational_scan: scan,
    })
}

/// Thirteen very general points: a pencil of quartics and no cubic passes
/// through them, and the quartics sweep out `X` while meeting `-K` negatively.
pub fn verify_thirteen_point_example(d_max: i64) -> Result<PositivityReport> {
    let surface = SurfaceModel::very_general(13);
    let minus_k = anticanonical(13);
    let quartics = LinearSystemSpec::new(4, vec![1; 13])?;
    let cubics = LinearSystemSpec::new(3, vec![1; 13])?;
    let pencil_dim = quartics.expected_dim();
    if pencil_dim < 1 || existence(&cubics, &surface) != Existence::Empty {
        return Err(Error::DegenerateConfiguration("thirteen-point dimension counts changed".into()));
    }
    let moving = DivisorClass::uniform(4, 1, 13);
    let m_sq = moving.self_intersection();
    let m_k = deg_anticanonical(&moving);
    let pseff_holds = !(m_sq >= 0 && pencil_dim >= 1 && m_k < 0);
    let nef_holds = pseff_holds && is_nef_against(&minus_k, std::slice::from_ref(&moving))?;
    let scan = rational_scan(13, d_max)?;
    let mut implications = vec![format!(
        "quartic pencil dimension {pencil_dim}, cubic system dimension {} (empty at very general points)",
        expected_dim_raw(3, &cubics.mults)
    )];
    if !pseff_holds {
        implications.push("pseff = false implies nef = false".into());
    }
    Ok(PositivityReport {
        r: 13,
        surface,
        k_squared: minus_k.self_intersection(),
        nef: Verdict {
            holds: nef_holds,
            certificate: Certificate::ImpliedByPseff { class: moving.clone(), anticanonical_degree: m_k },
        },
        pseff: Verdict {
            holds: pseff_holds,
            certificate: Certificate::CoveringFamily {
                class: moving,
                self_intersection: m_sq,
                anticanonical_degree: m_k,
                family_dimension: pencil_dim,
            },
        },
        rational_positive: scan.scanned_min >= 1,
        rational_scan: scan,
        implications,
        assumptions: vec!["the thirteen points are very general".into()],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::mori_generators;
    use proptest::prelude::*;

    #[test]
    fn admissibility_examples() {
        assert!(!rational_class_admissible(&DivisorClass::uniform(4, 1, 13)).unwrap());
        let mut a = vec![1; 9];
        a.push(0);
        assert!(!rational_class_admissible(&DivisorClass::new(3, a)).unwrap());
        let mut line = vec![0; 10];
        line[0] = 1;
        line[1] = 1;
        assert!(rational_class_admissible(&DivisorClass::new(1, line)).unwrap());
        assert!(rational_class_admissible(&DivisorClass::new(0, [-1])).is_err());
    }

    #[test]
    fn nef_examples() {
        let gens = mori_generators(6).unwrap().classes;
        assert_eq!(gens.len(), 27);
        let mk = anticanonical(6);
        assert!(gens.iter().all(|g| mk.intersect(g).unwrap() == 1));
        assert!(is_nef_against(&mk, &gens).unwrap());
        assert!(!is_nef_against(&anticanonical(10), &[DivisorClass::uniform(3, 1, 10)]).unwrap());
        assert!(is_nef_against(&anticanonical(3), &[DivisorClass::line(4)]).is_err());
    }

    #[test]
    fn ten_points() {
        let rep = verify_ten_point_example(DEFAULT_SCAN_DEGREE).unwrap();
        assert_eq!(rep.k_squared, -1);
        assert!(!rep.nef.holds);
        assert!(rep.pseff.holds);
        assert!(rep.rational_positive);
        assert_eq!(rep.rational_scan.scanned_min, 1);
        match rep.nef.certificate {
            Certificate::NegativeCurve { class, anticanonical_degree, .. } => {
                assert_eq!(class, DivisorClass::uniform(3, 1, 10));
                assert_eq!(anticanonical_degree, -1);
            }
            other => panic!("unexpected certificate {other:?}"),
        }
    }

    #[test]
    fn thirteen_points() {
        let rep = verify_thirteen_point_example(DEFAULT_SCAN_DEGREE).unwrap();
        assert_eq!(rep.k_squared, -4);
        assert!(!rep.pseff.holds);
        assert!(!rep.nef.holds);
        assert!(rep.rational_positive);
        assert!(rep.implications.iter().any(|s| s.contains("implies nef = false")));
        match rep.pseff.certificate {
            Certificate::CoveringFamily { self_intersection, anticanonical_degree, family_dimension, .. } => {
                assert_eq!((self_intersection, anticanonical_degree, family_dimension), (3, -1, 1));
            }
            other => panic!("unexpected certificate {other:?}"),
        }
    }

    #[test]
    fn scan_rejects_bad_degree() {
        assert!(rational_scan(10, 0).is_err());
    }

    proptest! {
        #[test]
        fn admissible_classes_have_positive_degree(
            d in 1i64..30,
            a in prop::collection::vec(0i64..12, 1..14),
        ) {
            let c = DivisorClass::new(d, a.clone());
            if rational_class_admissible(&c).unwrap() {
                prop_assert!(deg_anticanonical(&c) >= 1);
            }
            let mut rev = a;
            rev.reverse();
            prop_assert_eq!(
                rational_class_admissible(&c).unwrap(),
                rational_class_admissible(&DivisorClass::new(d, rev)).unwrap()
            );
        }
    }
}
