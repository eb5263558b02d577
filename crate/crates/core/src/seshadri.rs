//! Seshadri constants of `-K` on `X_r`, `1 <= r <= 8`.
//!
//! At a general point `x` the constant is the nef threshold
//! `max { t : pi^*(-K) - t E_x is nef }` on the blow-up of `X_r` at `x`, which
//! is `X_{r+1}` at general points. For `r + 1 <= 8` the Mori cone of `X_{r+1}`
//! is spanned by finitely many classes, so the threshold is a finite minimum.
//! For `r = 8` the threshold is certified on `X_9` directly: `-K_{X_9}` is nef
//! (an irreducible member of square 0), and the fibre class through `x` caps
//! the value at 1.

use std::fmt;
use std::str::FromStr;

use num_traits::One;
use rayon::prelude::*;
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::atlas::{is_candidate, is_minus_one_class, minus_one_solutions, mori_generators};
use crate::error::{Error, Result};
use crate::exact::{format_q, q, q_frac, Q};
use crate::picard::{anticanonical, arithmetic_genus, deg_anticanonical, DivisorClass, SurfaceModel};

/// Default degree bound of the brute-force oracle.
pub const DEFAULT_D_MAX: i64 = 12;

/// Degree bound for the scan of (-1)-classes on `X_9` in the `r = 8` threshold.
pub const X9_SCAN_DEGREE: i64 = 9;

/// Members of the limiting family checked by the `r = 8` threshold.
pub const FAMILY_SCAN: i64 = 50;

/// Where the query point sits.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "class", rename_all = "snake_case")]
pub enum PointSpec {
    General,
    /// On the distinguished (-1)-curve of the given class; `r <= 7` only.
    #[serde(rename = "distinguished")]
    OnDistinguished(DivisorClass),
    /// A singular point of a member of `|-K_{X_8}|`.
    #[serde(rename = "node")]
    AnticanonicalNode,
}

impl PointSpec {
    pub fn validate(&self, r: usize) -> Result<()> {
        let invalid = |reason: String| Err(Error::InvalidPointSpec { r, reason });
        match self {
            PointSpec::General => Ok(()),
            PointSpec::AnticanonicalNode if r == 8 => Ok(()),
            PointSpec::AnticanonicalNode => invalid("anticanonical nodes are only modelled for r = 8".into()),
            PointSpec::OnDistinguished(_) if r > 7 => {
                invalid("distinguished curves are only defined for r <= 7".into())
            }
            PointSpec::OnDistinguished(c) if c.r() != r => {
                invalid(format!("class {c} has {} multiplicities", c.r()))
            }
            PointSpec::OnDistinguished(c) if !is_minus_one_class(c) => {
                invalid(format!("{c} is not a (-1)-class of X_{r}"))
            }
            PointSpec::OnDistinguished(_) => Ok(()),
        }
    }
}

impl fmt::Display for PointSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointSpec::General => write!(f, "general"),
            PointSpec::AnticanonicalNode => write!(f, "node"),
            PointSpec::OnDistinguished(c) => {
                let a: Vec<String> = c.a.iter().map(i64::to_string).collect();
                write!(f, "distinguished:{}:{}", c.d, a.join(","))
            }
        }
    }
}

/// `general`, `node`, or `distinguished:<d>:<a1>,<a2>,...`.
impl FromStr for PointSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "general" => Ok(PointSpec::General),
            "node" => Ok(PointSpec::AnticanonicalNode),
            other => match other.split_once(':') {
                Some(("distinguished", cls)) => Ok(PointSpec::OnDistinguished(cls.parse()?)),
                _ => Err(Error::Parse(format!(
                    "point `{other}`: expected general, node or distinguished:<d>:<a1,...>"
                ))),
            },
        }
    }
}

/// A curve class through `x` with multiplicity `mult` there.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Witness {
    pub class: DivisorClass,
    pub mult: i64,
}

impl Witness {
    pub fn ratio(&self) -> Q {
        q_frac(deg_anticanonical(&self.class), self.mult)
    }

    /// `p_a` minus the drop `m(m-1)/2` of an ordinary `m`-fold point at `x`.
    pub fn genus_after_assignment(&self) -> i64 {
        arithmetic_genus(&self.class) - self.mult * (self.mult - 1) / 2
    }
}

/// The nodal rational curves `(3m; m^8, m-1)` on `X_9`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDescriptor {
    pub shape: String,
    pub ratio: String,
    pub limit: String,
}

impl FamilyDescriptor {
    fn limiting() -> Self {
        FamilyDescriptor {
            shape: "(3m; m^8, m-1)".into(),
            ratio: "m/(m-1)".into(),
            limit: "1".into(),
        }
    }
}

/// Why the value is also a lower bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LowerBound {
    /// Nef threshold on the blow-up at `x`.
    NefThreshold,
    /// `-K` very ample, `r <= 6`.
    VeryAmple,
    /// A member of `|-K|` smooth at `x` (smooth cubic through eight points).
    SmoothAnticanonicalMember,
    /// The nodal member `D` at `x`: `-K.C = D.C >= 2 mult_x C` for `C != D`.
    NodalMember,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeshadriResult {
    pub r: usize,
    pub point: PointSpec,
    pub value: Q,
    /// Attained by a rational curve through `x`.
    pub attained: bool,
    pub witness: Option<Witness>,
    pub family: Option<FamilyDescriptor>,
    pub lower_bound: LowerBound,
}

impl Serialize for SeshadriResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SeshadriResult", 7)?;
        st.serialize_field("r", &self.r)?;
        st.serialize_field("point", &self.point)?;
        st.serialize_field("value", &format_q(&self.value))?;
        st.serialize_field("attained", &self.attained)?;
        st.serialize_field("witness", &self.witness)?;
        st.serialize_field("family", &self.family)?;
        st.serialize_field("lower_bound", &self.lower_bound)?;
        st.end()
    }
}

fn require_range(r: usize) -> Result<()> {
    if !(1..=8).contains(&r) {
        return Err(Error::UnsupportedR { r, reason: "Seshadri constants are computed for 1 <= r <= 8" });
    }
    Ok(())
}

fn require_general(r: usize, p: &PointSpec) -> Result<()> {
    if *p != PointSpec::General {
        return Err(Error::InvalidPointSpec { r, reason: format!("expected a general point, got {p}") });
    }
    Ok(())
}

/// Witness tie-break: lowest degree, then the multiplicity vector that is
/// lexicographically greatest.
fn witness_key(c: &DivisorClass) -> (i64, std::cmp::Reverse<Vec<i64>>) {
    (c.d, std::cmp::Reverse(c.a.clone()))
}

/// `-K_{X_r}` degree of the first `r` slots over the multiplicity in the last.
fn ratio_at_last(c: &DivisorClass) -> Option<Q> {
    let m = *c.a.last()?;
    (m >= 1).then(|| q_frac(deg_anticanonical(&c.truncated()), m))
}

/// Classes on `X_{r+1}` that bound the threshold, with the minimum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdCertificate {
    pub r: usize,
    pub value: Q,
    /// Generators attaining the minimum, as classes on `X_{r+1}`.
    pub binding: Vec<DivisorClass>,
    /// Number of constraints checked.
    pub constraints: usize,
}

/// `(3;1^r, t)` scaled by the denominator of `t`, a class on `X_{r+1}`.
pub fn threshold_class(r: usize, t: &Q) -> DivisorClass {
    let den: i64 = t.denom().try_into().expect("threshold denominator fits i64");
    let num: i64 = t.numer().try_into().expect("threshold numerator fits i64");
    DivisorClass::new(3 * den, vec![den; r]).extended(num)
}

pub fn nef_threshold(r: usize, p: &PointSpec) -> Result<Q> {
    Ok(nef_threshold_certificate(r, p)?.value)
}

pub fn nef_threshold_certificate(r: usize, p: &PointSpec) -> Result<ThresholdCertificate> {
    require_range(r)?;
    require_general(r, p)?;
    if r <= 7 {
        let gens = mori_generators(r + 1)?.classes;
        let mut best: Option<Q> = None;
        let mut binding = Vec::new();
        for g in &gens {
            let Some(ratio) = ratio_at_last(g) else { continue };
            match &best {
                Some(b) if ratio > *b => {}
                Some(b) if ratio == *b => binding.push(g.clone()),
                _ => {
                    best = Some(ratio);
                    binding = vec![g.clone()];
                }
            }
        }
        let value = best.expect("X_{r+1} always has a generator through the new point");
        return Ok(ThresholdCertificate { r, value, binding, constraints: gens.len() });
    }
    r8_threshold()
}

/// `r = 8`: nefness of `-K_{X_9}` gives `t >= 1`; the fibre `(3;1^9)` gives
/// `t <= 1`. Every (-1)-curve of `X_9` up to [`X9_SCAN_DEGREE`] and every
/// limiting family member up to [`FAMILY_SCAN`] is checked to sit above 1.
fn r8_threshold() -> Result<ThresholdCertificate> {
    let fibre = DivisorClass::uniform(3, 1, 9);
    let k9 = anticanonical(9);
    debug_assert_eq!(k9.self_intersection(), 0);
    let one = Q::one();
    let mut constraints = 1;
    for c in minus_one_solutions(9, X9_SCAN_DEGREE) {
        if c.d < 1 || c.a.iter().any(|&x| x < 0) {
            continue;
        }
        if let Some(ratio) = ratio_at_last(&c) {
            constraints += 1;
            if ratio < one {
                return Err(Error::DegenerateConfiguration(format!("{c} undercuts the nef threshold")));
            }
        }
    }
    for m in 2..=FAMILY_SCAN {
        constraints += 1;
        let member = limiting_family(m)?;
        if member.ratio.as_ref().is_some_and(|r| *r <= one) {
            return Err(Error::DegenerateConfiguration(format!("family member m = {m} undercuts 1")));
        }
    }
    let value = ratio_at_last(&fibre).expect("fibre passes through x");
    Ok(ThresholdCertificate { r: 8, value, binding: vec![fibre], constraints })
}

/// Rational curve through `x` realising the constant.
pub fn witness_rational_curve(r: usize, p: &PointSpec) -> Result<Witness> {
    require_range(r)?;
    p.validate(r)?;
    let w = match p {
        PointSpec::General if r == 8 => return Err(Error::NotAttained { r }),
        PointSpec::General => {
            let cert = nef_threshold_certificate(r, p)?;
            let best = cert
                .binding
                .iter()
                .min_by_key(|c| witness_key(&c.truncated()))
                .expect("threshold has a binding generator");
            Witness { class: best.truncated(), mult: *best.a.last().unwrap() }
        }
        PointSpec::OnDistinguished(c) => Witness { class: c.clone(), mult: 1 },
        PointSpec::AnticanonicalNode => Witness { class: anticanonical(8), mult: 2 },
    };
    debug_assert_eq!(w.genus_after_assignment(), 0, "witness {w:?} is not rational");
    Ok(w)
}

pub fn seshadri_constant(r: usize, p: &PointSpec) -> Result<SeshadriResult> {
    require_range(r)?;
    p.validate(r)?;
    let result = match p {
        PointSpec::General if r == 8 => SeshadriResult {
            r,
            point: p.clone(),
            value: nef_threshold(r, p)?,
            attained: false,
            witness: None,
            family: Some(FamilyDescriptor::limiting()),
            lower_bound: LowerBound::NefThreshold,
        },
        PointSpec::General => SeshadriResult {
            r,
            point: p.clone(),
            value: nef_threshold(r, p)?,
            attained: true,
            witness: Some(witness_rational_curve(r, p)?),
            family: None,
            lower_bound: LowerBound::NefThreshold,
        },
        PointSpec::OnDistinguished(_) => SeshadriResult {
            r,
            point: p.clone(),
            value: Q::one(),
            attained: true,
            witness: Some(witness_rational_curve(r, p)?),
            family: None,
            lower_bound: if r <= 6 { LowerBound::VeryAmple } else { LowerBound::SmoothAnticanonicalMember },
        },
        PointSpec::AnticanonicalNode => SeshadriResult {
            r,
            point: p.clone(),
            value: q_frac(1, 2),
            attained: true,
            witness: Some(witness_rational_curve(r, p)?),
            family: None,
            lower_bound: LowerBound::NodalMember,
        },
    };
    if let Some(w) = &result.witness {
        debug_assert_eq!(w.ratio(), result.value);
    }
    Ok(result)
}

/// Value from the anticanonical-member argument at a general point: an
/// irreducible `D_x` in `|-kK|` with multiplicity `m` at `x` bounds every
/// other curve by `k(-K.C) = D_x.C >= m mult_x C`, and `D_x` itself gives
/// `-K.D_x / m`. For `r <= 6`, `D_x` is the cubic double at `x`; for `r = 7`,
/// the sextic with seven double points and a triple point at `x`.
pub fn anticanonical_member_value(r: usize) -> Result<Q> {
    require_range(r)?;
    let (k, mult) = match r {
        1..=6 => (1, 2),
        7 => (2, 3),
        _ => return Err(Error::NotAttained { r }),
    };
    let member = DivisorClass::new(3 * k, vec![k; r]);
    let others = q_frac(k, mult).recip();
    let itself = q_frac(deg_anticanonical(&member), mult);
    Ok(if itself < others { itself } else { others })
}

/// Outcome of the brute-force infimum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub value: Q,
    /// Minimising class on `X_{r+1}` (multiplicity at `x` in the last slot).
    pub argmin: DivisorClass,
    pub candidates: usize,
}

/// Minimum of `-K.C / mult_x C` over the candidate curve pool.
///
/// At a general point every candidate is an effective class on `X_{r+1}`
/// (non-empty linear system or (-1)-class), so each ratio bounds the constant
/// from above. Multiplicities at the `r` blown-up points are scanned up to
/// permutation.
pub fn brute_force_seshadri(r: usize, p: &PointSpec, d_max: i64) -> Result<OracleResult> {
    require_range(r)?;
    p.validate(r)?;
    if d_max < 6 {
        return Err(Error::InvalidArgument(format!("oracle degree bound must be >= 6, got {d_max}")));
    }
    match p {
        PointSpec::General => {}
        PointSpec::OnDistinguished(_) | PointSpec::AnticanonicalNode => {
            let w = witness_rational_curve(r, p)?;
            return Ok(OracleResult { value: w.ratio(), argmin: w.class.extended(w.mult), candidates: 1 });
        }
    }
    let per_degree: Vec<(Option<(Q, DivisorClass)>, usize)> = (1..=d_max)
        .into_par_iter()
        .map(|d| {
            let mut best: Option<(Q, DivisorClass)> = None;
            let mut count = 0;
            let budget = d * (d + 3) / 2;
            let mut prefix = Vec::with_capacity(r + 1);
            sorted_profiles(r, d, budget, &mut prefix, &mut |a, left| {
                let base = 3 * d - a.iter().sum::<i64>();
                let mut full = a.to_vec();
                full.push(0);
                for m in 1..=d {
                    if m * (m + 1) / 2 > left {
                        break;
                    }
                    *full.last_mut().unwrap() = m;
                    if !is_candidate(d, &full) {
                        continue;
                    }
                    count += 1;
                    let ratio = q_frac(base, m);
                    let cls = DivisorClass::new(d, full.clone());
                    let better = match &best {
                        None => true,
                        Some((b, c)) => ratio < *b || (ratio == *b && witness_key(&cls) < witness_key(c)),
                    };
                    if better {
                        best = Some((ratio, cls));
                    }
                }
            });
            (best, count)
        })
        .collect();
    let mut best: Option<(Q, DivisorClass)> = None;
    let mut candidates = 0;
    for (b, n) in per_degree {
        candidates += n;
        if let Some((v, c)) = b {
            let better = match &best {
                None => true,
                Some((bv, bc)) => v < *bv || (v == *bv && witness_key(&c) < witness_key(bc)),
            };
            if better {
                best = Some((v, c));
            }
        }
    }
    let (value, argmin) = best.expect("a line through x and a blown-up point is always a candidate");
    Ok(OracleResult { value, argmin, candidates })
}

/// Non-increasing vectors of length `k` in `0..=cap` with
/// `sum a_i(a_i+1)/2 <= budget`; the callback also gets the unused budget.
fn sorted_profiles(k: usize, cap: i64, budget: i64, prefix: &mut Vec<i64>, emit: &mut dyn FnMut(&[i64], i64)) {
    if prefix.len() == k {
        emit(prefix, budget);
        return;
    }
    let top = prefix.last().copied().unwrap_or(cap);
    for x in (0..=top).rev() {
        let cost = x * (x + 1) / 2;
        if cost > budget {
            continue;
        }
        prefix.push(x);
        sorted_profiles(k, cap, budget - cost, prefix, emit);
        prefix.pop();
    }
}

/// A member of the limiting family on `X_9`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyMember {
    pub m: i64,
    pub class: DivisorClass,
    pub mult_at_x: i64,
    /// `m/(m-1)`; `None` for `m = 1`, where the curve misses `x`.
    pub ratio: Option<Q>,
}

impl Serialize for FamilyMember {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FamilyMember", 4)?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("class", &self.class)?;
        st.serialize_field("mult_at_x", &self.mult_at_x)?;
        st.serialize_field("ratio", &self.ratio.as_ref().map(format_q))?;
        st.end()
    }
}

/// `(3m; m^8, m-1)` on `X_9`, read as a curve on `X_8` with multiplicity
/// `m - 1` at the ninth point `x`.
pub fn limiting_family(m: i64) -> Result<FamilyMember> {
    if m < 1 {
        return Err(Error::InvalidArgument(format!("family index must be >= 1, got {m}")));
    }
    let class = DivisorClass::uniform(3 * m, m, 8).extended(m - 1);
    debug_assert_eq!(deg_anticanonical(&class), 1);
    let mult_at_x = m - 1;
    let ratio = ratio_at_last(&class);
    Ok(FamilyMember { m, class, mult_at_x, ratio })
}

/// Upper bounds `m/(m-1)` at a general point of `X_8`, `m = 2..=m_max`.
pub fn family_upper_bounds(m_max: i64) -> Result<Vec<FamilyMember>> {
    (2..=m_max).map(limiting_family).collect()
}

/// Singular members in a general pencil of cubics: the Euler number of the
/// rational elliptic surface `X_9` is `3 + 9`, the smooth fibres contribute 0
/// and each nodal fibre contributes 1.
pub fn count_anticanonical_nodes() -> u64 {
    SurfaceModel::general(9).euler_number()
}

/// One row of the case table.
pub fn theorem_table() -> Result<Vec<SeshadriResult>> {
    let mut out = Vec::new();
    for r in 1..=8 {
        out.push(seshadri_constant(r, &PointSpec::General)?);
        if r == 8 {
            out.push(seshadri_constant(r, &PointSpec::AnticanonicalNode)?);
            continue;
        }
        for cls in distinguished_representatives(r) {
            out.push(seshadri_constant(r, &PointSpec::OnDistinguished(cls))?);
        }
    }
    Ok(out)
}

/// One class per distinguished-curve type on `X_r`, `r <= 7`: `E_1`, the line
/// through `x_1, x_2`, the conic through `x_1..x_5`, the cubic through
/// `x_1..x_7` double at `x_1`.
pub fn distinguished_representatives(r: usize) -> Vec<DivisorClass> {
    let mut out = Vec::new();
    let with_prefix = |d: i64, prefix: &[i64]| {
        let mut a = prefix.to_vec();
        a.resize(r, 0);
        DivisorClass::new(d, a)
    };
    if r >= 1 {
        out.push(DivisorClass::exceptional(0, r));
    }
    if r >= 2 {
        out.push(with_prefix(1, &[1, 1]));
    }
    if r >= 5 {
        out.push(with_prefix(2, &[1, 1, 1, 1, 1]));
    }
    if r == 7 {
        out.push(with_prefix(3, &[2, 1, 1, 1, 1, 1, 1]));
    }
    out
}

/// `value^2 <= (-K)^2 = 9 - r` at a general point.
pub fn within_volume_bound(r: usize, value: &Q) -> bool {
    value * value <= q(9 - r as i64)
}
