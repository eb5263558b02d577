use delpezzo_core::exact::{q, q_frac, Poly};
use delpezzo_core::linear_systems::{cubic_pencil_discriminant, discriminant_with_nodes, sample_pencil, PlanePoint, Ternary};

fn nodes(n: i64) -> Vec<delpezzo_core::Q> {
    (0..n).map(|i| q(i - n / 2)).collect()
}

#[test]
fn hesse_pencil_has_four_triangles() {
    // lambda (X^3 + Y^3 + Z^3) + XYZ is singular at lambda = 0 and at the
    // three cube roots of -1/27; each singular member is a triangle with
    // three nodes, so every root has multiplicity 3.
    let fermat = Ternary::monomial([3, 0, 0], q(1))
        .add(&Ternary::monomial([0, 3, 0], q(1)))
        .add(&Ternary::monomial([0, 0, 3], q(1)));
    let xyz = Ternary::monomial([1, 1, 1], q(1));
    let disc = discriminant_with_nodes(&fermat, &xyz, &nodes(17)).unwrap();
    let cube = Poly::new(vec![q_frac(1, 27), q(0), q(0), q(1)]);
    let lambda3 = Poly::new(vec![q(0), q(0), q(0), q(1)]);
    let mut expected = lambda3;
    for _ in 0..3 {
        expected = mul(&expected, &cube);
    }
    assert_eq!(disc, expected);
    assert_eq!(disc.squarefree_degree(), Some(4));
}

fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![q(0); a.coeffs().len() + b.coeffs().len() - 1];
    for (i, x) in a.coeffs().iter().enumerate() {
        for (j, y) in b.coeffs().iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    Poly::new(out)
}

#[test]
fn cusp_member_is_a_double_root() {
    // G = Y^2 Z - X^3 has a cusp, a double root of the discriminant at 0.
    let g = Ternary::monomial([0, 2, 1], q(1)).add(&Ternary::monomial([3, 0, 0], q(-1)));
    let f = Ternary::monomial([0, 0, 3], q(1))
        .add(&Ternary::monomial([1, 1, 1], q(2)))
        .add(&Ternary::monomial([0, 3, 0], q(3)))
        .add(&Ternary::monomial([1, 0, 2], q(-1)));
    let disc = discriminant_with_nodes(&f, &g, &nodes(17)).unwrap();
    assert!(disc.eval(&q(0)) == q(0));
    assert!(disc.derivative().eval(&q(0)) == q(0));
}

#[test]
fn seeded_samples_have_twelve_distinct_nodal_members() {
    for seed in [10u64, 11] {
        let s = sample_pencil(seed).unwrap();
        assert!(s.sample.general_position_violations.is_empty());
        assert_eq!((s.sample.degree, s.sample.squarefree_degree), (12, 12), "seed {seed}");
        // Every point lies on both basis cubics.
        for p in &s.sample.points {
            let h = [p.x.clone(), p.y.clone(), q(1)];
            assert_eq!(s.sample.f_poly().eval(&h), q(0));
            assert_eq!(s.sample.g_poly().eval(&h), q(0));
        }
    }
}

#[test]
fn special_configurations_are_flagged() {
    // Six points on the conic x^2 + y^2 = 25.
    let pts: Vec<PlanePoint> =
        [(3, 4), (4, 3), (5, 0), (0, 5), (-3, 4), (-4, -3), (7, 1), (2, -9)].iter().map(|&(x, y)| PlanePoint::int(x, y)).collect();
    let s = cubic_pencil_discriminant(&pts).unwrap();
    assert!(s.general_position_violations.iter().any(|v| v.contains("conic")), "{:?}", s.general_position_violations);
}
