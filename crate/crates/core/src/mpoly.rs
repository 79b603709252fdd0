//! Sparse multivariate polynomials over the rationals, only as far as a
//! symbolic determinant of a linear matrix pencil needs.

use std::collections::BTreeMap;

use crate::matrix::Matrix;
use crate::rational::Rational;

/// Map from exponent vectors to nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MPoly {
    pub(crate) fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub(crate) fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = MPoly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// `sum_i coeffs[i] * c_i`.
    pub(crate) fn linear(coeffs: &[Rational]) -> Self {
        let nvars = coeffs.len();
        let mut p = MPoly::zero(nvars);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; nvars];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub(crate) fn add(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub(crate) fn mul(&self, other: &MPoly) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub(crate) fn neg(&self) -> MPoly {
        MPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    /// Substitutes `c_var = value`, keeping the variable count.
    pub(crate) fn substitute(&self, var: usize, value: &Rational) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = std::mem::replace(&mut e2[var], 0);
            out.add_term(e2, c * &value.pow(k));
        }
        out
    }

    pub(crate) fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    /// Constant value of a polynomial with every variable substituted.
    pub(crate) fn constant_value(&self) -> Rational {
        self.terms.get(&vec![0; self.nvars]).cloned().unwrap_or_else(Rational::zero)
    }
}

/// Determinant of a square matrix of polynomials, expanding along rows with
/// the minors indexed by column subsets.
pub(crate) fn determinant(entries: &[Vec<MPoly>], nvars: usize) -> MPoly {
    let d = entries.len();
    assert!(d < usize::BITS as usize);
    // minors[mask]: determinant of the first popcount(mask) rows on columns `mask`.
    let mut minors: Vec<Option<MPoly>> = vec![None; 1 << d];
    minors[0] = Some(MPoly::constant(nvars, Rational::one()));
    for mask in 1usize..(1 << d) {
        let row = mask.count_ones() as usize - 1;
        let mut acc = MPoly::zero(nvars);
        // Column positions in increasing order; sign from the position of `c`.
        for (pos, c) in (0..d).filter(|c| mask & (1 << c) != 0).enumerate() {
            if entries[row][c].is_zero() {
                continue;
            }
            let sub = minors[mask & !(1 << c)].as_ref().unwrap();
            if sub.is_zero() {
                continue;
            }
            let term = entries[row][c].mul(sub);
            let last = mask.count_ones() as usize - 1;
            acc = if (last - pos).is_multiple_of(2) { acc.add(&term) } else { acc.add(&term.neg()) };
        }
        minors[mask] = Some(acc);
    }
    minors.pop().unwrap().unwrap()
}

/// `det(sum_i c_i basis_i)` as a polynomial in the `c_i`.
pub(crate) fn pencil_determinant(basis: &[Matrix]) -> MPoly {
    let d = basis[0].rows();
    let m = basis.len();
    let entries: Vec<Vec<MPoly>> = (0..d)
        .map(|r| {
            (0..d)
                .map(|c| MPoly::linear(&basis.iter().map(|t| t[(r, c)].clone()).collect::<Vec<_>>()))
                .collect()
        })
        .collect();
    determinant(&entries, m)
}

/// A point where a nonzero polynomial does not vanish, found one variable at
/// a time: a nonzero polynomial of degree `k` in a variable survives
/// substitution of at least one of `0, ..., k`.
pub(crate) fn nonvanishing_point(p: &MPoly) -> Option<Vec<Rational>> {
    if p.is_zero() {
        return None;
    }
    let mut cur = p.clone();
    let mut point = Vec::with_capacity(p.nvars);
    for var in 0..p.nvars {
        let deg = cur.degree_in(var);
        let (value, next) = (0..=deg as i64)
            .map(|v| (Rational::from(v), cur.substitute(var, &Rational::from(v))))
            .find(|(_, q)| !q.is_zero())
            .expect("nonzero polynomial survives some substitution");
        point.push(value);
        cur = next;
    }
    debug_assert!(!cur.constant_value().is_zero());
    Some(point)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg;
    use crate::rational::q;

    #[test]
    fn pencil_determinant_matches_numeric() {
        let t1 = Matrix::from_i64(&[&[1, 2, 0], &[0, 1, 3], &[4, 0, 1]]);
        let t2 = Matrix::from_i64(&[&[0, 1, 1], &[2, 0, 0], &[0, 5, 1]]);
        let p = pencil_determinant(&[t1.clone(), t2.clone()]);
        for (a, b) in [(1, 0), (0, 1), (2, -3), (5, 7)] {
            let numeric = linalg::determinant(&(&t1.scale(&q(a, 1)) + &t2.scale(&q(b, 1))));
            let symbolic = p.substitute(0, &q(a, 1)).substitute(1, &q(b, 1)).constant_value();
            assert_eq!(numeric, symbolic);
        }
    }

    #[test]
    fn singular_pencil_is_zero() {
        let t1 = Matrix::from_i64(&[&[1, 0], &[0, 0]]);
        let t2 = Matrix::from_i64(&[&[0, 1], &[0, 0]]);
        assert!(pencil_determinant(&[t1, t2]).is_zero());
    }

    #[test]
    fn point_avoids_roots() {
        // c0 * c1 * (c0 - 1) vanishes at small integers unless chosen carefully.
        let c0 = MPoly::linear(&[q(1, 1), q(0, 1)]);
        let c1 = MPoly::linear(&[q(0, 1), q(1, 1)]);
        let p = c0.mul(&c1).mul(&c0.add(&MPoly::constant(2, q(-1, 1))));
        let pt = nonvanishing_point(&p).unwrap();
        let v = p.substitute(0, &pt[0]).substitute(1, &pt[1]).constant_value();
        assert!(!v.is_zero());
        assert!(nonvanishing_point(&MPoly::zero(2)).is_none());
    }
}
