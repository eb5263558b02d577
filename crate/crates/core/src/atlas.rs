//! Negative curves on `X_r`: the (-1)-classes, Mori cone generators, the
//! distinguished curve through a special point, and the candidate pool of
//! plane-curve classes scanned by the brute-force Seshadri oracle.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linear_systems::{expected_dim_raw, passes_bezout_filters};
use crate::picard::{deg_anticanonical, require_del_pezzo, DivisorClass};
use crate::seshadri::PointSpec;

/// A class with `C^2 = -1` and `-K.C = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MinusOneClass(DivisorClass);

impl MinusOneClass {
    /// Checks the two defining equations.
    pub fn new(cls: DivisorClass) -> Option<Self> {
        is_minus_one_class(&cls).then_some(MinusOneClass(cls))
    }

    pub fn class(&self) -> &DivisorClass {
        &self.0
    }

    pub fn into_class(self) -> DivisorClass {
        self.0
    }
}

pub fn is_minus_one_class(c: &DivisorClass) -> bool {
    c.self_intersection() == -1 && deg_anticanonical(c) == 1 && (c.d > 0 || c.is_exceptional())
}

/// Generators of the Mori cone of `X_r`, `r <= 8`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoriGenerators {
    pub r: usize,
    pub classes: Vec<DivisorClass>,
}

/// Ordering used for every class list: degree, then the sorted multiplicity
/// profile, then the raw vector.
pub fn canonical_cmp(x: &DivisorClass, y: &DivisorClass) -> Ordering {
    x.d.cmp(&y.d)
        .then_with(|| x.sorted_mults().cmp(&y.sorted_mults()))
        .then_with(|| x.a.cmp(&y.a))
}

/// All (-1)-classes of `X_r` for `r <= 8`, in canonical order.
pub fn enumerate_minus_one_classes(r: usize) -> Result<Vec<MinusOneClass>> {
    if r > 8 {
        return Err(Error::UnsupportedR {
            r,
            reason: "X_r has infinitely many (-1)-classes for r >= 9",
        });
    }
    // (3d-1)^2 <= r(d^2+1) bounds the degree; for r <= 8 this gives d <= 7.
    let d_max = (0..).take_while(|&d: &i64| (3 * d - 1).pow(2) <= r as i64 * (d * d + 1)).last();
    let out = minus_one_solutions(r, d_max.unwrap_or(0));
    Ok(out.into_iter().map(MinusOneClass).collect())
}

/// Integer solutions of `C^2 = -1`, `-K.C = 1` with `d <= d_max`. For `d = 0`
/// only the `E_i` shape is kept. Works for any `r`, so it also serves the
/// degree-bounded scan on `X_9`.
pub fn minus_one_solutions(r: usize, d_max: i64) -> Vec<DivisorClass> {
    let mut out = Vec::new();
    for d in 0..=d_max {
        let mut a = Vec::with_capacity(r);
        search_slots(r, 3 * d - 1, d * d + 1, &mut a, &mut |a| {
            let c = DivisorClass::new(d, a.to_vec());
            if d > 0 || c.is_exceptional() {
                out.push(c);
            }
        });
    }
    out.sort_by(canonical_cmp);
    out
}

/// Depth-first search for integer vectors of length `k` with prescribed sum
/// and sum of squares, pruned by Cauchy-Schwarz on the unfilled slots.
fn search_slots(k: usize, sum: i64, sq: i64, prefix: &mut Vec<i64>, emit: &mut dyn FnMut(&[i64])) {
    let remaining = k - prefix.len();
    if remaining == 0 {
        if sum == 0 && sq == 0 {
            emit(prefix);
        }
        return;
    }
    if sq < 0 || sum * sum > remaining as i64 * sq {
        return;
    }
    let bound = isqrt(sq);
    for x in -bound..=bound {
        prefix.push(x);
        search_slots(k, sum - x, sq - x * x, prefix, emit);
        prefix.pop();
    }
}

fn isqrt(n: i64) -> i64 {
    if n <= 0 {
        return 0;
    }
    let mut x = (n as f64).sqrt() as i64;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

pub fn mori_generators(r: usize) -> Result<MoriGenerators> {
    require_del_pezzo(r)?;
    let classes = match r {
        0 => vec![DivisorClass::line(0)],
        1 => vec![DivisorClass::exceptional(0, 1), DivisorClass::new(1, [1])],
        _ => enumerate_minus_one_classes(r)?.into_iter().map(MinusOneClass::into_class).collect(),
    };
    Ok(MoriGenerators { r, classes })
}

/// The distinguished (-1)-curve through a point that fails general position.
///
/// General points, and nodes of anticanonical members on `X_8`, lie on no
/// distinguished curve: a (-1)-curve `C` through a node `x` of `D` would give
/// `1 = C.D >= mult_x D = 2`.
pub fn distinguished_curves_through(r: usize, p: &PointSpec) -> Result<Vec<DivisorClass>> {
    require_del_pezzo(r)?;
    p.validate(r)?;
    Ok(match p {
        PointSpec::General | PointSpec::AnticanonicalNode => Vec::new(),
        PointSpec::OnDistinguished(cls) => vec![cls.clone()],
    })
}

/// Sorted (non-increasing) multiplicity profiles of the candidate pool.
///
/// A class `(d; a)` with `1 <= d <= d_max`, `0 <= a_i <= d` qualifies when it
/// is a (-1)-class, or when its linear system is non-empty by the dimension
/// count and it passes the line/conic/cubic Bezout filters.
pub fn effective_candidate_orbits(r: usize, d_max: i64) -> Vec<DivisorClass> {
    let mut out: Vec<DivisorClass> = (1..=d_max.max(0))
        .into_par_iter()
        .flat_map_iter(|d| {
            let mut found = Vec::new();
            let budget = d * (d + 3) / 2;
            let mut prefix = Vec::with_capacity(r);
            nonincreasing_profiles(r, d, budget, &mut prefix, &mut |a| {
                if is_candidate(d, a) {
                    found.push(DivisorClass::new(d, a.to_vec()));
                }
            });
            found
        })
        .collect();
    out.sort_by(canonical_cmp);
    out
}

/// `(d; a)` is a candidate irreducible class at general points.
pub fn is_candidate(d: i64, a: &[i64]) -> bool {
    if d < 1 || a.iter().any(|&x| x < 0 || x > d) {
        return false;
    }
    let cls = DivisorClass::new(d, a.to_vec());
    is_minus_one_class(&cls) || (expected_dim_raw(d, a) >= 0 && passes_bezout_filters(d, a))
}

/// Non-increasing vectors of length `k` with entries in `0..=cap` and
/// `sum a_i(a_i+1)/2 <= budget`.
fn nonincreasing_profiles(
    k: usize,
    cap: i64,
    budget: i64,
    prefix: &mut Vec<i64>,
    emit: &mut dyn FnMut(&[i64]),
) {
    if prefix.len() == k {
        emit(prefix);
        return;
    }
    let top = prefix.last().copied().unwrap_or(cap);
    for x in (0..=top).rev() {
        let cost = x * (x + 1) / 2;
        if cost > budget {
            continue;
        }
        prefix.push(x);
        nonincreasing_profiles(k, cap, budget - cost, prefix, emit);
        prefix.pop();
    }
}

/// The full candidate pool: every permutation of every orbit representative,
/// plus the exceptional classes `E_i`.
pub fn effective_candidates(r: usize, d_max: i64) -> Vec<DivisorClass> {
    let mut out: Vec<DivisorClass> = (0..r).map(|i| DivisorClass::exceptional(i, r)).collect();
    for rep in effective_candidate_orbits(r, d_max) {
        out.extend(distinct_permutations(&rep.a).into_iter().map(|a| DivisorClass::new(rep.d, a)));
    }
    out.sort_by(canonical_cmp);
    out
}

/// Distinct permutations of a multiset, in lexicographic order.
pub fn distinct_permutations(items: &[i64]) -> Vec<Vec<i64>> {
    let mut cur = items.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    // classic next-permutation
    loop {
        let n = cur.len();
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
    out
}
