//! Singular members of the pencil of plane cubics through eight points.
//!
//! The pencil `lambda F + G` is cut out by the kernel of the 8 x 10 evaluation
//! matrix. A member is singular iff its three partial derivatives (ternary
//! quadrics, linear in `lambda`) share a projective zero, i.e. iff their
//! resultant vanishes. That resultant has degree at most 12 in `lambda`; it is
//! evaluated exactly at rational nodes with the Macaulay matrix and recovered
//! by interpolation.

use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::ser::{Serialize, SerializeStruct, Serializer};

use super::ternary::{monomials_of_degree, Ternary};
use crate::error::{Error, Result};
use crate::exact::{determinant, format_q, kernel_basis, q, q_frac, rank, Poly, Q};

/// `X^3, X^2Y, X^2Z, XY^2, XYZ, XZ^2, Y^3, Y^2Z, YZ^2, Z^3`.
pub const CUBIC_MONOMIALS: [[u32; 3]; 10] = [
    [3, 0, 0],
    [2, 1, 0],
    [2, 0, 1],
    [1, 2, 0],
    [1, 1, 1],
    [1, 0, 2],
    [0, 3, 0],
    [0, 2, 1],
    [0, 1, 2],
    [0, 0, 3],
];

/// Degree of the discriminant of plane cubics.
pub const DISCRIMINANT_DEGREE: usize = 12;

const MIN_NODES: usize = DISCRIMINANT_DEGREE + 1;

/// Affine point `(x, y)`, i.e. `(x : y : 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlanePoint {
    pub x: Q,
    pub y: Q,
}

impl PlanePoint {
    pub fn new(x: Q, y: Q) -> Self {
        PlanePoint { x, y }
    }

    pub fn int(x: i64, y: i64) -> Self {
        PlanePoint::new(q(x), q(y))
    }

    fn homogeneous(&self) -> [Q; 3] {
        [self.x.clone(), self.y.clone(), Q::one()]
    }
}

impl fmt::Display for PlanePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Serialize for PlanePoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [format_q(&self.x), format_q(&self.y)].serialize(s)
    }
}

/// A sampled pencil with its exact discriminant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PencilSample {
    pub points: Vec<PlanePoint>,
    /// Coefficients over [`CUBIC_MONOMIALS`].
    pub f: Vec<Q>,
    pub g: Vec<Q>,
    /// Discriminant of `lambda F + G` in `lambda`, constant term first,
    /// normalised to be monic.
    pub discriminant: Poly,
    /// Singular members at finite `lambda`, with multiplicity.
    pub degree: usize,
    /// Distinct singular members at finite `lambda`.
    pub squarefree_degree: usize,
    /// `12 - degree`: multiplicity of the member `F` (`lambda = infinity`).
    pub roots_at_infinity: usize,
    pub general_position_violations: Vec<String>,
}

impl PencilSample {
    pub fn f_poly(&self) -> Ternary {
        Ternary::from_coeffs(&CUBIC_MONOMIALS, &self.f)
    }

    pub fn g_poly(&self) -> Ternary {
        Ternary::from_coeffs(&CUBIC_MONOMIALS, &self.g)
    }
}

impl Serialize for PencilSample {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let strs = |v: &[Q]| v.iter().map(format_q).collect::<Vec<_>>();
        let mut st = s.serialize_struct("PencilSample", 8)?;
        st.serialize_field("points", &self.points)?;
        st.serialize_field("f", &strs(&self.f))?;
        st.serialize_field("g", &strs(&self.g))?;
        st.serialize_field("discriminant", &strs(self.discriminant.coeffs()))?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("squarefree_degree", &self.squarefree_degree)?;
        st.serialize_field("roots_at_infinity", &self.roots_at_infinity)?;
        st.serialize_field("general_position_violations", &self.general_position_violations)?;
        st.end()
    }
}

fn evaluation_matrix(points: &[PlanePoint]) -> Vec<Vec<Q>> {
    points
        .iter()
        .map(|p| {
            let h = p.homogeneous();
            CUBIC_MONOMIALS.iter().map(|m| Ternary::monomial(*m, Q::one()).eval(&h)).collect()
        })
        .collect()
}

fn det3(rows: [[&Q; 3]; 3]) -> Q {
    let m: Vec<Vec<Q>> = rows.iter().map(|r| r.iter().map(|&x| x.clone()).collect()).collect();
    determinant(&m)
}

/// Failures of general position among the points: repeated points, three on
/// a line, six on a conic, eight on a cubic singular at one of them.
pub fn general_position_violations(points: &[PlanePoint]) -> Vec<String> {
    let n = points.len();
    let mut out = Vec::new();
    let one = Q::one();
    for i in 0..n {
        for j in i + 1..n {
            if points[i] == points[j] {
                out.push(format!("points {i} and {j} coincide"));
            }
        }
    }
    for (i, j, k) in triples(n) {
        let (a, b, c) = (&points[i], &points[j], &points[k]);
        if det3([[&a.x, &a.y, &one], [&b.x, &b.y, &one], [&c.x, &c.y, &one]]).is_zero() {
            out.push(format!("points {i}, {j}, {k} are collinear"));
        }
    }
    let conic = monomials_of_degree(2);
    for six in subsets(n, 6) {
        let m: Vec<Vec<Q>> = six
            .iter()
            .map(|&i| {
                let h = points[i].homogeneous();
                conic.iter().map(|e| Ternary::monomial(*e, Q::one()).eval(&h)).collect()
            })
            .collect();
        if determinant(&m).is_zero() {
            out.push(format!("points {six:?} lie on a conic"));
        }
    }
    if n == 8 {
        let base = evaluation_matrix(points);
        for (i, p) in points.iter().enumerate() {
            let h = p.homogeneous();
            let mut m = base.clone();
            for var in 0..2 {
                m.push(
                    CUBIC_MONOMIALS
                        .iter()
                        .map(|e| Ternary::monomial(*e, Q::one()).partial(var).eval(&h))
                        .collect(),
                );
            }
            if determinant(&m).is_zero() {
                out.push(format!("the points lie on a cubic singular at point {i}"));
            }
        }
    }
    out
}

fn triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| (i, j, k))))
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Resultant of three ternary quadrics by Macaulay's quotient formula at
/// degree 4. `None` when the extraneous minor vanishes at this input.
fn macaulay_resultant(quadrics: &[Ternary; 3]) -> Option<Q> {
    let monos = monomials_of_degree(4);
    let rows: Vec<Vec<Q>> = monos
        .iter()
        .map(|m| {
            // first variable whose square divides m picks the quadric
            let i = (0..3).find(|&i| m[i] >= 2).expect("degree-4 monomial has a squared variable");
            let mut shift = *m;
            shift[i] -= 2;
            let row_poly = Ternary::monomial(shift, Q::one()).mul(&quadrics[i]);
            let mut row = vec![Q::zero(); monos.len()];
            for (c, e) in monos.iter().enumerate() {
                row[c] = row_poly.coeff(*e);
            }
            row
        })
        .collect();
    let non_reduced: Vec<usize> = monos
        .iter()
        .enumerate()
        .filter(|(_, m)| m.iter().filter(|&&k| k >= 2).count() >= 2)
        .map(|(i, _)| i)
        .collect();
    debug_assert_eq!(non_reduced.len(), 3);
    let minor: Vec<Vec<Q>> = non_reduced
        .iter()
        .map(|&r| non_reduced.iter().map(|&c| rows[r][c].clone()).collect())
        .collect();
    let extraneous = determinant(&minor);
    if extraneous.is_zero() {
        return None;
    }
    Some(determinant(&rows) / extraneous)
}

fn gradient(c: &Ternary) -> [Ternary; 3] {
    [c.partial(0), c.partial(1), c.partial(2)]
}

/// Coordinate frames tried in turn when the extraneous minor of the Macaulay
/// matrix vanishes identically in `lambda`.
fn frames() -> Vec<[Ternary; 3]> {
    let v = |i| Ternary::var(i);
    let mut out = vec![
        [v(0), v(1), v(2)],
        [v(1), v(2), v(0)],
        [v(2), v(0), v(1)],
    ];
    // shears
    for s in 1..=3 {
        let sq = q(s);
        out.push([
            v(0).add(&v(1).scale(&sq)),
            v(1).add(&v(2).scale(&sq)),
            v(2).add(&v(0).scale(&sq)),
        ]);
    }
    out
}

/// Default interpolation nodes `0, 1, -1, 2, -2, ...`.
pub fn default_nodes(count: usize) -> Vec<Q> {
    (0..count as i64)
        .map(|i| if i % 2 == 1 { q((i + 1) / 2) } else { q(-i / 2) })
        .collect()
}

/// Interpolated discriminant of `lambda F + G` using the given nodes. At
/// least 13 nodes must have a nonzero extraneous factor; any extra usable
/// nodes serve as a consistency check. The result is monic.
pub fn discriminant_with_nodes(f: &Ternary, g: &Ternary, nodes: &[Q]) -> Result<Poly> {
    for frame in frames() {
        let (tf, tg) = (f.substitute(&frame), g.substitute(&frame));
        let values: Vec<(Q, Q)> = nodes
            .par_iter()
            .filter_map(|lambda| {
                let member = tf.scale(lambda).add(&tg);
                macaulay_resultant(&gradient(&member)).map(|v| (lambda.clone(), v))
            })
            .collect();
        if values.len() < MIN_NODES {
            continue;
        }
        let (fit, check) = values.split_at(MIN_NODES);
        let poly = Poly::interpolate(fit);
        if check.iter().any(|(x, y)| &poly.eval(x) != y) {
            return Err(Error::DegenerateConfiguration(
                "resultant values are not a polynomial of degree <= 12".into(),
            ));
        }
        if poly.is_zero() {
            return Err(Error::NonReducedPencil);
        }
        return Ok(poly.monic());
    }
    Err(Error::DegenerateConfiguration(
        "Macaulay extraneous factor vanishes in every coordinate frame".into(),
    ))
}

/// Pencil of cubics through eight points and its discriminant.
pub fn cubic_pencil_discriminant(points: &[PlanePoint]) -> Result<PencilSample> {
    if points.len() != 8 {
        return Err(Error::DegenerateConfiguration(format!("need 8 points, got {}", points.len())));
    }
    let m = evaluation_matrix(points);
    let rk = rank(&m);
    if rk != 8 {
        return Err(Error::DegenerateConfiguration(format!(
            "the points impose {rk} conditions on cubics, expected 8"
        )));
    }
    let mut basis = kernel_basis(&m).into_iter();
    let (f, g) = (basis.next().unwrap(), basis.next().unwrap());
    let fp = Ternary::from_coeffs(&CUBIC_MONOMIALS, &f);
    let gp = Ternary::from_coeffs(&CUBIC_MONOMIALS, &g);
    let discriminant = discriminant_with_nodes(&fp, &gp, &default_nodes(MIN_NODES + 4))?;
    let degree = discriminant.degree().unwrap_or(0);
    let squarefree_degree = discriminant.squarefree_degree().unwrap_or(0);
    Ok(PencilSample {
        points: points.to_vec(),
        f,
        g,
        discriminant,
        degree,
        squarefree_degree,
        roots_at_infinity: DISCRIMINANT_DEGREE.saturating_sub(degree),
        general_position_violations: general_position_violations(points),
    })
}

/// A pencil drawn from a seeded generator.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct SampledPencil {
    pub seed: u64,
    pub attempts: u32,
    pub sample: PencilSample,
}

const MAX_ATTEMPTS: u32 = 1000;

fn random_point(rng: &mut ChaCha8Rng) -> PlanePoint {
    let mut coord = || q_frac(rng.gen_range(-9..=9), rng.gen_range(1..=4));
    let x = coord();
    let y = coord();
    PlanePoint::new(x, y)
}

/// Draws eight small-height rational points in general position, retrying on
/// degenerate configurations.
pub fn sample_pencil(seed: u64) -> Result<SampledPencil> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=MAX_ATTEMPTS {
        let points: Vec<PlanePoint> = (0..8).map(|_| random_point(&mut rng)).collect();
        if !general_position_violations(&points).is_empty() {
            continue;
        }
        match cubic_pencil_discriminant(&points) {
            Ok(sample) => return Ok(SampledPencil { seed, attempts: attempt, sample }),
            Err(Error::DegenerateConfiguration(_) | Error::NonReducedPencil) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::DegenerateConfiguration(format!(
        "no general configuration found in {MAX_ATTEMPTS} attempts for seed {seed}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_q;

    fn fixture() -> Vec<PlanePoint> {
        [(-3, 1), (-4, -4), (4, 0), (1, 6), (1, 0), (-1, 3), (6, -5), (-4, 3)]
            .iter()
            .map(|&(x, y)| PlanePoint::int(x, y))
            .collect()
    }

    // Produced independently by lex Groebner elimination of the affine
    // gradient ideal of lambda F + G (same kernel basis convention).
    const FIXTURE_MONIC_HIGH_TO_LOW: [&str; 13] = [
        "1",
        "15096214348564019800008766748371427/14264523946975622506709241473285764",
        "-605369398895289927125907177911105938354573/8384801292223846714423745811929158365312",
        "-1555867680825006566376256012438091293610720467/2616058003173840174900208693321897409977344",
        "-1320280071341192793366279560556049892721386390891/502283136609377313580840069117804302715650048",
        "-1537121493360489753529711020323537261661277933097/188356176228516492592815025919176613518368768",
        "-51542837561270119271510117973761868979273979293/2716675618680526335473293643065047310361088",
        "-443278715480092411659481690930828256912588656719457/13561644688453187466682681866180716173322551296",
        "-13148380188497804436698256134825490297807784506760627/325479472522876499200384364788337188159741231104",
        "-116681838250501955113598447838929461119606223928743/3390411172113296866670670466545179043330637824",
        "-55888974025655723254861599333935589147835580307954025/2929315252705888492803459283095034693437671079936",
        "-36196942646660926029162299315212144681459891175504923/5858630505411776985606918566190069386875342159872",
        "-6385560017943352274054810613714339483802856640551147/7210622160506802443823899773772393091538882658304",
    ];

    #[test]
    fn fixture_matches_elimination_oracle() {
        let s = cubic_pencil_discriminant(&fixture()).unwrap();
        assert!(s.general_position_violations.is_empty());
        assert_eq!(s.f[8], q(1));
        assert_eq!(s.g[9], q(1));
        assert_eq!(s.f[0], q_frac(471, 16436));
        let expected: Vec<Q> = FIXTURE_MONIC_HIGH_TO_LOW.iter().rev().map(|t| parse_q(t).unwrap()).collect();
        assert_eq!(s.discriminant.coeffs(), &expected[..]);
        assert_eq!(s.degree, 12);
        assert_eq!(s.squarefree_degree, 12);
        assert_eq!(s.roots_at_infinity, 0);
    }

    #[test]
    fn node_choice_does_not_matter() {
        let s = cubic_pencil_discriminant(&fixture()).unwrap();
        let nodes: Vec<Q> = (100..120).map(|i| q_frac(i, 7)).collect();
        let other = discriminant_with_nodes(&s.f_poly(), &s.g_poly(), &nodes).unwrap();
        assert_eq!(other, s.discriminant);
    }

    #[test]
    fn macaulay_normalisation() {
        let sq = |i: usize| Ternary::var(i).mul(&Ternary::var(i));
        assert_eq!(macaulay_resultant(&[sq(0), sq(1), sq(2)]), Some(q(1)));
        // common zero (0:0:1)
        let xy = Ternary::var(0).mul(&Ternary::var(1));
        let xz = Ternary::var(0).mul(&Ternary::var(2));
        let yz = Ternary::var(1).mul(&Ternary::var(2));
        let f1 = sq(0).add(&yz);
        let f2 = sq(1).add(&xz);
        let f3 = xy.add(&sq(0));
        assert_eq!(macaulay_resultant(&[f1, f2, f3]), Some(q(0)));
    }

    #[test]
    fn collinear_triple_is_flagged() {
        let mut pts = fixture();
        pts[2] = PlanePoint::int(-5, -9); // on the line through (-3,1), (-4,-4)
        let v = general_position_violations(&pts);
        assert!(v.iter().any(|s| s.contains("collinear")), "{v:?}");
    }

    #[test]
    fn four_collinear_points_are_rejected() {
        let mut pts = fixture();
        for (i, x) in [0, 1, 2, 3].iter().enumerate() {
            pts[i] = PlanePoint::int(*x, 2 * x + 1);
        }
        match cubic_pencil_discriminant(&pts) {
            Err(Error::NonReducedPencil) | Err(Error::DegenerateConfiguration(_)) => {}
            Ok(s) => assert!(s.degree < 12 || !s.general_position_violations.is_empty()),
            Err(e) => panic!("unexpected error {e}"),
        }
    }

    #[test]
    fn wrong_point_count() {
        assert!(cubic_pencil_discriminant(&fixture()[..7]).is_err());
    }

    #[test]
    fn rank_deficient_configuration() {
        // five collinear points impose only 4 conditions on cubics
        let mut pts = fixture();
        for (i, x) in [0, 1, 2, 3, 5].iter().enumerate() {
            pts[i] = PlanePoint::int(*x, 0);
        }
        assert!(matches!(cubic_pencil_discriminant(&pts), Err(Error::DegenerateConfiguration(_))));
    }

    #[test]
    fn seeded_sample_is_reproducible() {
        let a = sample_pencil(7).unwrap();
        let b = sample_pencil(7).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.sample.degree, 12);
    }

    #[test]
    fn nodes_interleave() {
        assert_eq!(default_nodes(5), vec![q(0), q(1), q(-1), q(2), q(-2)]);
    }
}
