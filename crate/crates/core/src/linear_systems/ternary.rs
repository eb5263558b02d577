use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::exact::{q, Q};

/// Sparse polynomial in `X, Y, Z` with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Ternary {
    terms: BTreeMap<[u32; 3], Q>,
}

impl Ternary {
    pub fn zero() -> Self {
        Ternary::default()
    }

    pub fn monomial(exp: [u32; 3], c: Q) -> Self {
        let mut t = Ternary::zero();
        t.add_term(exp, c);
        t
    }

    /// The variable with index `i` (0 = X, 1 = Y, 2 = Z).
    pub fn var(i: usize) -> Self {
        let mut exp = [0; 3];
        exp[i] = 1;
        Ternary::monomial(exp, Q::one())
    }

    pub fn from_coeffs(monomials: &[[u32; 3]], coeffs: &[Q]) -> Self {
        let mut t = Ternary::zero();
        for (m, c) in monomials.iter().zip(coeffs) {
            t.add_term(*m, c.clone());
        }
        t
    }

    pub fn to_coeffs(&self, monomials: &[[u32; 3]]) -> Vec<Q> {
        monomials.iter().map(|m| self.coeff(*m)).collect()
    }

    pub fn coeff(&self, exp: [u32; 3]) -> Q {
        self.terms.get(&exp).cloned().unwrap_or_else(Q::zero)
    }

    fn add_term(&mut self, exp: [u32; 3], c: Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Ternary) -> Ternary {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Q) -> Ternary {
        let mut out = Ternary::zero();
        for (e, c) in &self.terms {
            out.add_term(*e, c * s);
        }
        out
    }

    pub fn mul(&self, other: &Ternary) -> Ternary {
        let mut out = Ternary::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term([e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]], c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Ternary {
        (0..n).fold(Ternary::monomial([0, 0, 0], Q::one()), |acc, _| acc.mul(self))
    }

    pub fn partial(&self, i: usize) -> Ternary {
        let mut out = Ternary::zero();
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut f = *e;
            f[i] -= 1;
            out.add_term(f, c * q(i64::from(e[i])));
        }
        out
    }

    /// Replaces `X, Y, Z` by the given polynomials.
    pub fn substitute(&self, images: &[Ternary; 3]) -> Ternary {
        let mut out = Ternary::zero();
        for (e, c) in &self.terms {
            let term = images[0].pow(e[0]).mul(&images[1].pow(e[1])).mul(&images[2].pow(e[2]));
            out = out.add(&term.scale(c));
        }
        out
    }

    /// Value at an affine point `(x, y, z)`.
    pub fn eval(&self, p: &[Q; 3]) -> Q {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut v = c.clone();
                for (i, &k) in e.iter().enumerate() {
                    for _ in 0..k {
                        v *= &p[i];
                    }
                }
                v
            })
            .sum()
    }
}

/// Monomials of total degree `deg` in `X, Y, Z`, ordered by descending
/// exponent of `X`, then of `Y`.
pub fn monomials_of_degree(deg: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for i in (0..=deg).rev() {
        for j in (0..=deg - i).rev() {
            out.push([i, j, deg - i - j]);
        }
    }
    out
}
