//! Univariate polynomials over the rationals, just enough for characteristic
//! polynomials and rational root extraction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::Matrix;
use crate::rational::Rational;

/// Coefficients in ascending degree order, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &Rational::from(i))
                .collect(),
        )
    }

    fn lead(&self) -> &Rational {
        self.coeffs.last().expect("zero polynomial has no leading coefficient")
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead().clone();
        Poly::new(self.coeffs.iter().map(|c| c / &l).collect())
    }

    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::new(vec![]), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        let lead = divisor.lead().clone();
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * d;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// The product of the distinct irreducible factors.
    pub fn squarefree_part(&self) -> Poly {
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Distinct rational roots, ascending.
    pub fn rational_roots(&self) -> Vec<Rational> {
        if self.is_zero() {
            return vec![];
        }
        let mut f = self.squarefree_part();
        let mut roots = Vec::new();
        if f.coeffs.first().is_some_and(Rational::is_zero) {
            roots.push(Rational::zero());
            f = Poly::new(f.coeffs[1..].to_vec());
        }
        if f.degree().unwrap_or(0) == 0 {
            return roots;
        }
        // Clear denominators: integer coefficients with the same roots.
        let lcm = f.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> =
            f.coeffs.iter().map(|c| (c.numer() * &lcm) / c.denom()).collect();
        let constant = ints[0].abs();
        let leading = ints.last().unwrap().abs();
        for p in divisors(&constant) {
            for qd in divisors(&leading) {
                for sign in [1i64, -1] {
                    let cand = Rational::from_bigs(&p * BigInt::from(sign), qd.clone());
                    if !roots.contains(&cand) && f.eval(&cand).is_zero() {
                        roots.push(cand);
                    }
                }
            }
        }
        roots.sort();
        roots
    }
}

/// Positive divisors of a positive integer by trial division.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    assert!(n.is_positive());
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut m = n.clone();
    let mut d = BigInt::from(2);
    while &d * &d <= m {
        let mut e = 0;
        while (&m % &d).is_zero() {
            m /= &d;
            e += 1;
        }
        if e > 0 {
            primes.push((d.clone(), e));
        }
        d += if d == BigInt::from(2) { 1 } else { 2 };
    }
    if m > BigInt::one() {
        primes.push((m, 1));
    }
    let mut out = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for base in &out {
            let mut pw = base.clone();
            for _ in 0..=e {
                next.push(pw.clone());
                pw *= &p;
            }
        }
        out = next;
    }
    out.sort();
    out
}

/// Characteristic polynomial `det(tI - M)` by the Faddeev-LeVerrier recursion.
pub fn char_poly(m: &Matrix) -> Poly {
    assert!(m.is_square(), "characteristic polynomial needs a square matrix");
    let n = m.rows();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut acc = Matrix::zeros(n, n);
    for k in 1..=n {
        let mut next = m * &acc;
        for i in 0..n {
            next[(i, i)] += &coeffs[n + 1 - k];
        }
        let t = (m * &next).trace();
        coeffs[n - k] = -(&t / &Rational::from(k));
        acc = next;
    }
    Poly::new(coeffs)
}
