//! Exact linear algebra and univariate polynomials over the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut [Vec<Q>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(p) = (row..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                let (top, rest) = split_pair(m, row, i);
                for (x, y) in rest.iter_mut().zip(top.iter()) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Borrows row `a` immutably and row `b` mutably.
fn split_pair(m: &mut [Vec<Q>], a: usize, b: usize) -> (&Vec<Q>, &mut Vec<Q>) {
    if a < b {
        let (lo, hi) = m.split_at_mut(b);
        (&lo[a], &mut hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(a);
        (&hi[0], &mut lo[b])
    }
}

pub fn rank(m: &[Vec<Q>]) -> usize {
    let mut w = m.to_vec();
    rref(&mut w).len()
}

/// Basis of the right kernel, one vector per free column (in column order),
/// normalised to 1 at its free column.
pub fn kernel_basis(m: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let cols = m.first().map_or(0, Vec::len);
    let mut w = m.to_vec();
    let pivots = rref(&mut w);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); cols];
            v[f] = Q::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -w[row][f].clone();
            }
            v
        })
        .collect()
}

/// Determinant by Gaussian elimination.
pub fn determinant(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut w = m.to_vec();
    let mut det = Q::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !w[i][col].is_zero()) else {
            return Q::zero();
        };
        if p != col {
            w.swap(p, col);
            det = -det;
        }
        det *= &w[col][col];
        let inv = w[col][col].recip();
        for i in col + 1..n {
            if w[i][col].is_zero() {
                continue;
            }
            let f = &w[i][col] * &inv;
            let (top, rest) = split_pair(&mut w, col, i);
            for (x, y) in rest.iter_mut().zip(top.iter()).skip(col) {
                *x -= &f * y;
            }
        }
    }
    det
}

/// Dense univariate polynomial, coefficients from the constant term up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Q>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Q> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.coeffs.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Poly::zero(),
            Some(lc) => {
                let inv = lc.recip();
                Poly::new(self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * q(i as i64))
                .collect(),
        )
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc_inv = divisor.leading().unwrap().recip();
        let mut r = self.coeffs.clone();
        while r.len() > dd {
            let top = r.last().unwrap().clone();
            let shift = r.len() - 1 - dd;
            if !top.is_zero() {
                let f = top * &lc_inv;
                for (i, c) in divisor.coeffs.iter().enumerate() {
                    r[shift + i] -= &f * c;
                }
            }
            r.pop();
        }
        Poly::new(r)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Degree of the squarefree part `p / gcd(p, p')`.
    pub fn squarefree_degree(&self) -> Option<usize> {
        let deg = self.degree()?;
        let g = self.gcd(&self.derivative());
        Some(deg - g.degree().unwrap_or(0))
    }

    /// Newton interpolation through `(x_i, y_i)` with distinct nodes.
    pub fn interpolate(points: &[(Q, Q)]) -> Poly {
        let n = points.len();
        let xs: Vec<&Q> = points.iter().map(|(x, _)| x).collect();
        let mut dd: Vec<Q> = points.iter().map(|(_, y)| y.clone()).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                dd[i] = (&dd[i] - &dd[i - 1]) / (xs[i] - xs[i - level]);
            }
        }
        // expand the Newton form back to monomials
        let mut acc = vec![Q::zero(); n];
        for k in (0..n).rev() {
            // acc = acc * (x - x_k) + dd[k]
            let mut next = vec![Q::zero(); n];
            for (i, c) in acc.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if i + 1 < n {
                    next[i + 1] += c;
                }
                next[i] -= c * xs[k];
            }
            next[0] += &dd[k];
            acc = next;
        }
        Poly::new(acc)
    }
}

/// `p/q` with the denominator omitted when it is 1.
pub fn format_q(x: &Q) -> String {
    x.to_string()
}

pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Q::new(n.trim().parse().ok()?, d))
        }
        None => Some(Q::from_integer(s.parse().ok()?)),
    }
}
