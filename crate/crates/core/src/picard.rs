//! The Picard lattice of a blow-up of the plane.
//!
//! A class is stored as `(d; a_1, ..., a_r)` and stands for `dH - sum a_i E_i`,
//! where `H` is the pullback of a line and `E_i` the exceptional curve over the
//! i-th blown-up point. The intersection form is `diag(1, -1, ..., -1)` in the
//! basis `(H, E_1, ..., E_r)`. With this sign convention the strict transform
//! of a plane curve of degree `d` with multiplicity `a_i` at the i-th point is
//! literally `(d; a)`, and `E_i` is `(0; 0, ..., -1, ..., 0)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest number of points for which `X_r` is del Pezzo.
pub const MAX_DEL_PEZZO_R: usize = 8;

/// `dH - sum a_i E_i` on `X_r`, with `r = a.len()`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DivisorClass {
    pub d: i64,
    pub a: Vec<i64>,
}

impl DivisorClass {
    pub fn new(d: i64, a: impl Into<Vec<i64>>) -> Self {
        DivisorClass { d, a: a.into() }
    }

    /// `(d; m, m, ..., m)` with `r` equal entries.
    pub fn uniform(d: i64, m: i64, r: usize) -> Self {
        DivisorClass::new(d, vec![m; r])
    }

    /// The line class `H`.
    pub fn line(r: usize) -> Self {
        DivisorClass::new(1, vec![0; r])
    }

    /// The exceptional class `E_i`, zero-based.
    pub fn exceptional(i: usize, r: usize) -> Self {
        assert!(i < r, "exceptional index {i} out of range for r = {r}");
        let mut a = vec![0; r];
        a[i] = -1;
        DivisorClass::new(0, a)
    }

    pub fn r(&self) -> usize {
        self.a.len()
    }

    /// True for the `E_i` shape: `d = 0`, one entry `-1`, the rest zero.
    pub fn is_exceptional(&self) -> bool {
        self.d == 0
            && self.a.iter().filter(|&&x| x == -1).count() == 1
            && self.a.iter().all(|&x| x == 0 || x == -1)
    }

    /// Appends a multiplicity `m` at a new point, giving a class on `X_{r+1}`.
    pub fn extended(&self, m: i64) -> Self {
        let mut a = self.a.clone();
        a.push(m);
        DivisorClass::new(self.d, a)
    }

    /// Drops the last slot, giving a class on `X_{r-1}`.
    pub fn truncated(&self) -> Self {
        let mut a = self.a.clone();
        a.pop();
        DivisorClass::new(self.d, a)
    }

    pub fn mult_sum(&self) -> i64 {
        self.a.iter().sum()
    }

    /// Multiplicities sorted in non-increasing order.
    pub fn sorted_mults(&self) -> Vec<i64> {
        let mut s = self.a.clone();
        s.sort_unstable_by(|x, y| y.cmp(x));
        s
    }

    pub fn self_intersection(&self) -> i64 {
        let sq: i128 = self.a.iter().map(|&x| i128::from(x) * i128::from(x)).sum();
        to_i64(i128::from(self.d) * i128::from(self.d) - sq)
    }

    pub fn intersect(&self, other: &DivisorClass) -> Result<i64> {
        intersect(self, other)
    }

    pub fn deg_anticanonical(&self) -> i64 {
        deg_anticanonical(self)
    }

    pub fn arithmetic_genus(&self) -> i64 {
        arithmetic_genus(self)
    }
}

fn to_i64(x: i128) -> i64 {
    i64::try_from(x).expect("intersection number overflows i64")
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.d)?;
        if !self.a.is_empty() {
            let parts: Vec<String> = self.a.iter().map(|x| x.to_string()).collect();
            write!(f, "; {}", parts.join(","))?;
        }
        write!(f, ")")
    }
}

/// Parses the `d:a1,a2,...` syntax (and `d` alone for `r = 0`).
impl FromStr for DivisorClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (d_part, a_part) = match s.split_once(':') {
            Some((d, a)) => (d, Some(a)),
            None => (s, None),
        };
        let d = d_part
            .trim()
            .parse::<i64>()
            .map_err(|e| Error::Parse(format!("degree `{d_part}`: {e}")))?;
        let a = match a_part {
            None => Vec::new(),
            Some(list) if list.trim().is_empty() => Vec::new(),
            Some(list) => list
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<i64>()
                        .map_err(|e| Error::Parse(format!("multiplicity `{t}`: {e}")))
                })
                .collect::<Result<Vec<_>>>()?,
        };
        Ok(DivisorClass { d, a })
    }
}

/// Position assumption on the blown-up points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PositionAssumption {
    General,
    /// Also licenses emptiness of linear systems with negative expected
    /// dimension and the emptiness of rational-curve moduli for classes with
    /// `3d - 1 - sum a_i < 0`.
    VeryGeneral,
}

/// The blow-up `X_r` of the plane at `r` distinct points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceModel {
    pub r: usize,
    pub assumption: PositionAssumption,
}

impl SurfaceModel {
    pub fn general(r: usize) -> Self {
        SurfaceModel { r, assumption: PositionAssumption::General }
    }

    pub fn very_general(r: usize) -> Self {
        SurfaceModel { r, assumption: PositionAssumption::VeryGeneral }
    }

    pub fn is_very_general(&self) -> bool {
        self.assumption == PositionAssumption::VeryGeneral
    }

    pub fn is_del_pezzo(&self) -> bool {
        self.r <= MAX_DEL_PEZZO_R
    }

    /// Fails unless `r <= 8`.
    pub fn require_del_pezzo(&self) -> Result<()> {
        require_del_pezzo(self.r)
    }

    pub fn anticanonical(&self) -> DivisorClass {
        anticanonical(self.r)
    }

    /// Topological Euler number `3 + r`.
    pub fn euler_number(&self) -> u64 {
        3 + self.r as u64
    }
}

pub(crate) fn require_del_pezzo(r: usize) -> Result<()> {
    if r > MAX_DEL_PEZZO_R {
        return Err(Error::UnsupportedR { r, reason: "del Pezzo surfaces need r <= 8" });
    }
    Ok(())
}

/// `d1 d2 - sum a1_i a2_i`.
pub fn intersect(c1: &DivisorClass, c2: &DivisorClass) -> Result<i64> {
    if c1.r() != c2.r() {
        return Err(Error::DimensionMismatch { left: c1.r(), right: c2.r() });
    }
    let dot: i128 = c1
        .a
        .iter()
        .zip(&c2.a)
        .map(|(&x, &y)| i128::from(x) * i128::from(y))
        .sum();
    Ok(to_i64(i128::from(c1.d) * i128::from(c2.d) - dot))
}

/// `-K = 3H - sum E_i`.
pub fn anticanonical(r: usize) -> DivisorClass {
    DivisorClass::uniform(3, 1, r)
}

/// `K = -3H + sum E_i`.
pub fn canonical(r: usize) -> DivisorClass {
    DivisorClass::uniform(-3, -1, r)
}

/// `-K . C = 3d - sum a_i`.
pub fn deg_anticanonical(c: &DivisorClass) -> i64 {
    3 * c.d - c.mult_sum()
}

/// Adjunction: `p_a = (C^2 + C.K)/2 + 1`.
pub fn arithmetic_genus(c: &DivisorClass) -> i64 {
    let twice = c.self_intersection() - deg_anticanonical(c);
    // C^2 + C.K = d(d-3) - sum a_i(a_i - 1), a sum of even numbers
    debug_assert!(twice % 2 == 0, "odd C^2 + C.K for {c}");
    twice / 2 + 1
}

/// Gram matrix of the basis `(H, E_1, ..., E_r)`.
pub fn gram_matrix(r: usize) -> Vec<Vec<i64>> {
    let basis: Vec<DivisorClass> = std::iter::once(DivisorClass::line(r))
        .chain((0..r).map(|i| DivisorClass::exceptional(i, r)))
        .collect();
    basis
        .iter()
        .map(|u| basis.iter().map(|v| intersect(u, v).unwrap()).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn line_squares_to_one() {
        let h = DivisorClass::line(4);
        assert_eq!(intersect(&h, &h).unwrap(), 1);
    }

    #[test]
    fn exceptional_squares_to_minus_one() {
        let e1 = DivisorClass::exceptional(0, 3);
        assert_eq!(intersect(&e1, &e1).unwrap(), -1);
        assert!(e1.is_exceptional());
    }

    #[test]
    fn ten_point_anticanonical_square() {
        let c = DivisorClass::uniform(3, 1, 10);
        assert_eq!(intersect(&c, &c).unwrap(), -1);
    }

    #[test]
    fn mismatched_lattices() {
        let err = intersect(&DivisorClass::line(2), &DivisorClass::line(3)).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { left: 2, right: 3 });
    }

    #[test]
    fn anticanonical_degrees() {
        assert_eq!(anticanonical(5), DivisorClass::uniform(3, 1, 5));
        assert_eq!(anticanonical(5).self_intersection(), 4);
        assert_eq!(anticanonical(6).self_intersection(), 3);
        assert_eq!(anticanonical(10).self_intersection(), -1);
        for r in 0..=9 {
            assert_eq!(anticanonical(r).self_intersection(), 9 - r as i64);
        }
    }

    #[test]
    fn genus_examples() {
        assert_eq!(arithmetic_genus(&DivisorClass::uniform(2, 1, 5)), 0);
        assert_eq!(arithmetic_genus(&DivisorClass::new(3, [1, 1, 1, 1, 1, 1, 2])), 0);
        let sextic = DivisorClass::uniform(6, 2, 7);
        assert_eq!(sextic.self_intersection(), 8);
        assert_eq!(intersect(&sextic, &canonical(7)).unwrap(), -4);
        assert_eq!(arithmetic_genus(&sextic), 3);
    }

    #[test]
    fn anticanonical_degree_examples() {
        assert_eq!(deg_anticanonical(&DivisorClass::uniform(4, 1, 13)), -1);
        assert_eq!(deg_anticanonical(&DivisorClass::new(1, [1])), 2);
        for m in 1..=60 {
            let mut a = vec![m; 8];
            a.push(m - 1);
            assert_eq!(deg_anticanonical(&DivisorClass::new(3 * m, a)), 1);
        }
    }

    #[test]
    fn gram_is_diagonal_signature() {
        let g = gram_matrix(5);
        for (i, row) in g.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                let expected = match (i, j) {
                    (0, 0) => 1,
                    (i, j) if i == j => -1,
                    _ => 0,
                };
                assert_eq!(v, expected);
            }
        }
    }

    #[test]
    fn parse_and_display() {
        let c: DivisorClass = "2:1,1,1,1,1".parse().unwrap();
        assert_eq!(c, DivisorClass::uniform(2, 1, 5));
        assert_eq!(c.to_string(), "(2; 1,1,1,1,1)");
        let h: DivisorClass = "1".parse().unwrap();
        assert_eq!(h, DivisorClass::line(0));
        assert!("x:1".parse::<DivisorClass>().is_err());
        assert!("1:1,,2".parse::<DivisorClass>().is_err());
    }

    #[test]
    fn del_pezzo_guard() {
        assert!(SurfaceModel::general(8).require_del_pezzo().is_ok());
        assert!(SurfaceModel::general(9).require_del_pezzo().is_err());
        assert_eq!(SurfaceModel::general(9).euler_number(), 12);
    }

    fn class(r: usize) -> impl Strategy<Value = DivisorClass> {
        (-20i64..20, prop::collection::vec(-10i64..10, r))
            .prop_map(|(d, a)| DivisorClass::new(d, a))
    }

    proptest! {
        #[test]
        fn genus_is_permutation_invariant(c in class(7), seed in any::<u64>()) {
            let mut a = c.a.clone();
            let n = a.len();
            // deterministic shuffle driven by the seed
            let mut s = seed;
            for i in (1..n).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                a.swap(i, (s >> 33) as usize % (i + 1));
            }
            let p = DivisorClass::new(c.d, a);
            prop_assert_eq!(arithmetic_genus(&c), arithmetic_genus(&p));
        }
    }
}
