//! Exact linear algebra over the rationals.
//!
//! Everything here is plain Gauss-Jordan elimination with leftmost pivots.
//! Desk-scale sizes keep that cheap, and deterministic pivoting makes the
//! bases handed back reproducible.

use serde::{Deserialize, Serialize};

use crate::error::{domain, input, Result};
use crate::matrix::Matrix;
use crate::poly::{char_poly, Poly};
use crate::rational::Rational;

pub type Vector = Vec<Rational>;

/// Reduced row echelon form together with its pivot columns.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

pub fn rref(m: &Matrix) -> Echelon {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<Rational>> = (0..rows).map(|r| m.row(r).to_vec()).collect();
    let mut pivots = Vec::new();
    let mut pr = 0;
    for c in 0..cols {
        if pr == rows {
            break;
        }
        let Some(found) = (pr..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(pr, found);
        let inv = a[pr][c].recip();
        if !inv.is_one() {
            for x in a[pr][c..].iter_mut() {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
        }
        let pivot_row = a[pr].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == pr || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        pr += 1;
    }
    Echelon { reduced: Matrix::from_vec(rows, cols, a.into_iter().flatten().collect()), pivots }
}

pub fn rank(m: &Matrix) -> usize {
    rref(m).pivots.len()
}

/// Basis of the right null space, one vector per free column.
pub fn kernel_basis(m: &Matrix) -> Vec<Vector> {
    let Echelon { reduced, pivots } = rref(m);
    let cols = m.cols();
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -&reduced[(r, f)];
            }
            v
        })
        .collect()
}

/// Complete solution set of `A x = b`.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub particular: Vector,
    pub kernel: Vec<Vector>,
}

/// `Ok(None)` when the system is inconsistent.
pub fn solve_linear(a: &Matrix, b: &[Rational]) -> Result<Option<Solution>> {
    if a.rows() != b.len() {
        return input(format!(
            "right-hand side has length {} but matrix has {} rows",
            b.len(),
            a.rows()
        ));
    }
    let cols = a.cols();
    let aug = Matrix::from_fn(a.rows(), cols + 1, |r, c| {
        if c < cols {
            a[(r, c)].clone()
        } else {
            b[r].clone()
        }
    });
    let Echelon { reduced, pivots } = rref(&aug);
    if pivots.last() == Some(&cols) {
        return Ok(None);
    }
    let mut particular = vec![Rational::zero(); cols];
    for (r, &p) in pivots.iter().enumerate() {
        particular[p] = reduced[(r, cols)].clone();
    }
    Ok(Some(Solution { particular, kernel: kernel_basis(a) }))
}

pub fn inverse(m: &Matrix) -> Option<Matrix> {
    if !m.is_square() {
        return None;
    }
    let n = m.rows();
    let aug = Matrix::from_fn(n, 2 * n, |r, c| {
        if c < n {
            m[(r, c)].clone()
        } else if c - n == r {
            Rational::one()
        } else {
            Rational::zero()
        }
    });
    let Echelon { reduced, pivots } = rref(&aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(reduced.block(0, n, n, n))
}

pub fn determinant(m: &Matrix) -> Rational {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.rows();
    let mut a: Vec<Vec<Rational>> = (0..n).map(|r| m.row(r).to_vec()).collect();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let piv = a[c][c].clone();
        det *= &piv;
        let pivot_row = a[c].clone();
        for row in a.iter_mut().skip(c + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = &row[c] / &piv;
            for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
    }
    det
}

/// Incrementally grown subspace, kept as fully reduced echelon rows so that
/// membership tests are a single reduction pass.
#[derive(Debug, Clone)]
pub struct SpanBuilder {
    dim: usize,
    rows: Vec<(usize, Vector)>,
}

impl SpanBuilder {
    pub fn new(dim: usize) -> Self {
        SpanBuilder { dim, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Residue of `v` modulo the span: zero at every pivot column, so the
    /// remaining entries are coordinates in the standard complement.
    pub fn reduce(&self, v: &[Rational]) -> Vector {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Rational::is_zero)
    }

    /// Adds `v`; returns whether the span grew.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.dim, "span vector length mismatch");
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].recip();
        for x in r.iter_mut() {
            *x *= &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&r) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.rows.push((p, r));
        true
    }

    /// Current reduced basis, ordered by pivot column.
    pub fn basis(&self) -> Vec<Vector> {
        let mut rows = self.rows.clone();
        rows.sort_by_key(|(p, _)| *p);
        rows.into_iter().map(|(_, v)| v).collect()
    }

    pub fn pivots(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.rows.iter().map(|(p, _)| *p).collect();
        p.sort_unstable();
        p
    }
}

/// Rank of a family of vectors of common length `dim`.
pub fn vectors_rank(dim: usize, vectors: &[Vector]) -> usize {
    let mut span = SpanBuilder::new(dim);
    for v in vectors {
        span.insert(v);
    }
    span.rank()
}

fn check_square(m: &Matrix, what: &str) -> Result<()> {
    if !m.is_square() {
        return input(format!("{what} must be square, got {}x{}", m.rows(), m.cols()));
    }
    Ok(())
}

/// Jordan block sizes at eigenvalue 0 of a nilpotent matrix, descending,
/// recovered from the rank sequence `rank(N^k)`.
pub fn nilpotent_elementary_divisors(n: &Matrix) -> Result<Vec<usize>> {
    check_square(n, "nilpotent operator")?;
    let dim = n.rows();
    let mut ranks = vec![dim];
    let mut power = Matrix::identity(dim);
    while *ranks.last().unwrap() > 0 {
        if ranks.len() > dim {
            return domain("operator is not nilpotent");
        }
        power = &power * n;
        let r = rank(&power);
        if r == *ranks.last().unwrap() {
            return domain("operator is not nilpotent");
        }
        ranks.push(r);
    }
    // at_least[k] = number of blocks of size >= k.
    let at_least: Vec<usize> = (1..ranks.len()).map(|k| ranks[k - 1] - ranks[k]).collect();
    let mut sizes = Vec::new();
    for k in (1..=at_least.len()).rev() {
        let exactly = at_least[k - 1] - at_least.get(k).copied().unwrap_or(0);
        sizes.extend(std::iter::repeat_n(k, exactly));
    }
    Ok(sizes)
}

/// Smallest `m` with `theta^m v = 0`.
pub fn vector_order(theta: &Matrix, v: &[Rational]) -> Result<usize> {
    check_square(theta, "operator")?;
    if theta.cols() != v.len() {
        return input("vector length does not match operator size");
    }
    let mut cur = v.to_vec();
    for m in 0..=theta.rows() {
        if cur.iter().all(Rational::is_zero) {
            return Ok(m);
        }
        cur = theta.mul_vec(&cur);
    }
    domain("operator is not nilpotent on the given vector")
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct JordanBlock {
    pub eigenvalue: Rational,
    pub size: usize,
}

/// `p * a * p^-1 == j`, with `j` a direct sum of upper Jordan blocks.
#[derive(Debug, Clone)]
pub struct JordanForm {
    pub j: Matrix,
    pub p: Matrix,
    pub blocks: Vec<JordanBlock>,
}

/// Jordan form of `a` given its (rational) eigenvalues.
///
/// Blocks are grouped by eigenvalue in order of first appearance in
/// `eigenvalues`, sizes descending within an eigenvalue.
pub fn jordan_form(a: &Matrix, eigenvalues: &[Rational]) -> Result<JordanForm> {
    check_square(a, "matrix")?;
    let n = a.rows();
    let mut distinct: Vec<Rational> = Vec::new();
    for ev in eigenvalues {
        if !distinct.contains(ev) {
            distinct.push(ev.clone());
        }
    }
    let mut chains: Vec<Vector> = Vec::new();
    let mut blocks = Vec::new();
    for mu in &distinct {
        let nil = a - &Matrix::scalar(n, mu);
        // kernels[s] = basis of ker nil^s, grown until it stabilizes.
        let mut kernels: Vec<Vec<Vector>> = vec![Vec::new()];
        let mut power = Matrix::identity(n);
        loop {
            power = &power * &nil;
            let k = kernel_basis(&power);
            if k.len() == kernels.last().unwrap().len() {
                break;
            }
            kernels.push(k);
        }
        let height = kernels.len() - 1;
        if height == 0 {
            return domain(format!("{mu} is not an eigenvalue"));
        }
        // Tops chosen so far, with their chain lengths.
        let mut tops: Vec<(Vector, usize)> = Vec::new();
        for s in (1..=height).rev() {
            let mut span = SpanBuilder::new(n);
            for v in &kernels[s - 1] {
                span.insert(v);
            }
            for (top, len) in &tops {
                let mut w = top.clone();
                for _ in 0..(len - s) {
                    w = nil.mul_vec(&w);
                }
                span.insert(&w);
            }
            for cand in &kernels[s] {
                if span.insert(cand) {
                    tops.push((cand.clone(), s));
                }
            }
        }
        for (top, len) in tops {
            let mut chain = vec![top];
            for _ in 1..len {
                let next = nil.mul_vec(chain.last().unwrap());
                chain.push(next);
            }
            chain.reverse();
            chains.extend(chain);
            blocks.push(JordanBlock { eigenvalue: mu.clone(), size: len });
        }
    }
    if chains.len() != n {
        return domain(format!(
            "given eigenvalues account for {} of {} dimensions",
            chains.len(),
            n
        ));
    }
    let q = Matrix::from_columns(n, &chains);
    let p = inverse(&q).expect("Jordan chains are linearly independent");
    let j = Matrix::block_diag(
        &blocks.iter().map(|b| Matrix::jordan_upper(b.size, &b.eigenvalue)).collect::<Vec<_>>(),
    );
    debug_assert_eq!(&(&p * a) * &q, j);
    Ok(JordanForm { j, p, blocks })
}

/// Distinct eigenvalues with algebraic multiplicities, or `None` when the
/// characteristic polynomial does not split over the rationals.
pub fn rational_spectrum(m: &Matrix) -> Option<Vec<(Rational, usize)>> {
    assert!(m.is_square());
    let cp = char_poly(m);
    let mut out = Vec::new();
    let mut total = 0;
    for root in cp.rational_roots() {
        let linear = Poly::new(vec![-&root, Rational::one()]);
        let mut f = cp.clone();
        let mut mult = 0;
        loop {
            let (quot, rem) = f.div_rem(&linear);
            if !rem.is_zero() {
                break;
            }
            f = quot;
            mult += 1;
        }
        total += mult;
        out.push((root, mult));
    }
    (total == m.rows()).then_some(out)
}

/// Coordinates of `v` in the basis given by the columns of `basis`, if `v`
/// lies in their span.
pub fn coordinates(basis: &Matrix, v: &[Rational]) -> Option<Vector> {
    solve_linear(basis, v).ok().flatten().map(|s| s.particular)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use proptest::prelude::*;

    fn ints(rows: &[&[i64]]) -> Matrix {
        Matrix::from_i64(rows)
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&Matrix::identity(3)), 3);
        assert_eq!(rank(&Matrix::jordan_upper(4, &q(0, 1))), 3);
        assert_eq!(rank(&Matrix::zeros(2, 5)), 0);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&Matrix::jordan_upper(2, &q(0, 1))), vec![vec![q(1, 1), q(0, 1)]]);
        assert!(kernel_basis(&Matrix::identity(4)).is_empty());
        // [[1,1],[2,2]] -> span{(1,-1)}
        assert_eq!(kernel_basis(&ints(&[&[1, 1], &[2, 2]])), vec![vec![q(-1, 1), q(1, 1)]]);
    }

    #[test]
    fn solve_examples() {
        let b = vec![q(3, 1), q(-1, 2)];
        let sol = solve_linear(&Matrix::identity(2), &b).unwrap().unwrap();
        assert_eq!(sol.particular, b);
        assert!(sol.kernel.is_empty());

        assert_eq!(solve_linear(&Matrix::zeros(2, 2), &[q(1, 1), q(0, 1)]).unwrap(), None);

        let sol = solve_linear(&ints(&[&[1, 1]]), &[q(2, 1)]).unwrap().unwrap();
        assert_eq!(sol.particular, vec![q(2, 1), q(0, 1)]);
        assert_eq!(sol.kernel, vec![vec![q(-1, 1), q(1, 1)]]);

        assert!(matches!(
            solve_linear(&Matrix::identity(2), &[q(1, 1)]),
            Err(crate::Error::Input(_))
        ));
    }

    #[test]
    fn divisors_of_direct_sums() {
        let z = q(0, 1);
        assert_eq!(nilpotent_elementary_divisors(&Matrix::jordan_upper(5, &z)).unwrap(), vec![5]);
        let m = Matrix::block_diag(&[Matrix::jordan_upper(3, &z), Matrix::jordan_upper(1, &z)]);
        assert_eq!(nilpotent_elementary_divisors(&m).unwrap(), vec![3, 1]);
        assert_eq!(nilpotent_elementary_divisors(&Matrix::zeros(3, 3)).unwrap(), vec![1, 1, 1]);
        assert!(matches!(
            nilpotent_elementary_divisors(&Matrix::identity(2)),
            Err(crate::Error::Domain(_))
        ));
    }

    #[test]
    fn vector_order_examples() {
        let j = Matrix::jordan_upper(4, &q(0, 1));
        assert_eq!(vector_order(&j, &vec![q(0, 1); 4]).unwrap(), 0);
        let e4 = vec![q(0, 1), q(0, 1), q(0, 1), q(1, 1)];
        assert_eq!(vector_order(&j, &e4).unwrap(), 4);
    }

    #[test]
    fn jordan_of_scalar_and_lower_block() {
        let a = q(3, 2);
        let d = Matrix::scalar(2, &a);
        let jf = jordan_form(&d, std::slice::from_ref(&a)).unwrap();
        assert_eq!(jf.j, d);
        assert_eq!(jf.p, Matrix::identity(2));

        let low = Matrix::jordan_lower(2, &a);
        let jf = jordan_form(&low, std::slice::from_ref(&a)).unwrap();
        assert_eq!(jf.j, Matrix::jordan_upper(2, &a));
        assert_eq!(&(&jf.p * &low) * &inverse(&jf.p).unwrap(), jf.j);
    }

    #[test]
    fn jordan_block_order_follows_eigenvalue_list() {
        let a = Matrix::block_diag(&[
            Matrix::jordan_upper(1, &q(2, 1)),
            Matrix::jordan_upper(2, &q(5, 1)),
            Matrix::jordan_upper(3, &q(2, 1)),
        ]);
        let jf = jordan_form(&a, &[q(5, 1), q(2, 1)]).unwrap();
        let sizes: Vec<_> = jf.blocks.iter().map(|b| (b.eigenvalue.clone(), b.size)).collect();
        assert_eq!(sizes, vec![(q(5, 1), 2), (q(2, 1), 3), (q(2, 1), 1)]);
        assert!(matches!(jordan_form(&a, &[q(5, 1)]), Err(crate::Error::Domain(_))));
    }

    #[test]
    fn determinant_and_inverse_agree() {
        let m = ints(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(determinant(&m), q(18, 1));
        let inv = inverse(&m).unwrap();
        assert_eq!(&m * &inv, Matrix::identity(3));
        assert!(inverse(&ints(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn spectrum_detects_irrational() {
        assert!(rational_spectrum(&ints(&[&[0, 2], &[1, 0]])).is_none());
        let s = rational_spectrum(&Matrix::jordan_upper(3, &q(-1, 4))).unwrap();
        assert_eq!(s, vec![(q(-1, 4), 3)]);
    }

    fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
        proptest::collection::vec((-4i64..5, 1i64..3), rows * cols).prop_map(move |v| {
            Matrix::from_vec(rows, cols, v.into_iter().map(|(n, d)| q(n, d)).collect())
        })
    }

    fn invertible(n: usize) -> impl Strategy<Value = Matrix> {
        // Unit lower times upper with nonzero diagonal.
        (
            proptest::collection::vec(-2i64..3, n * n),
            proptest::collection::vec(-2i64..3, n * n),
            proptest::collection::vec(prop_oneof![Just(1i64), Just(-1), Just(2)], n),
        )
            .prop_map(move |(l, u, d)| {
                let lower = Matrix::from_fn(n, n, |r, c| match r.cmp(&c) {
                    std::cmp::Ordering::Greater => q(l[r * n + c], 1),
                    std::cmp::Ordering::Equal => q(1, 1),
                    std::cmp::Ordering::Less => q(0, 1),
                });
                let upper = Matrix::from_fn(n, n, |r, c| match r.cmp(&c) {
                    std::cmp::Ordering::Less => q(u[r * n + c], 1),
                    std::cmp::Ordering::Equal => q(d[r], 1),
                    std::cmp::Ordering::Greater => q(0, 1),
                });
                &lower * &upper
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn rank_nullity(m in (1usize..6, 1usize..6).prop_flat_map(|(r, c)| small_matrix(r, c))) {
            let k = kernel_basis(&m);
            prop_assert_eq!(rank(&m) + k.len(), m.cols());
            for v in &k {
                prop_assert!(m.mul_vec(v).iter().all(Rational::is_zero));
            }
        }

        #[test]
        fn divisors_invariant_under_conjugation(
            p in invertible(5),
            sizes in proptest::collection::vec(1usize..4, 1..3),
        ) {
            let total: usize = sizes.iter().sum();
            prop_assume!(total <= 5);
            let mut blocks: Vec<Matrix> =
                sizes.iter().map(|&s| Matrix::jordan_upper(s, &q(0, 1))).collect();
            if total < 5 {
                blocks.push(Matrix::zeros(5 - total, 5 - total));
            }
            let n = Matrix::block_diag(&blocks);
            let conj = &(&p * &n) * &inverse(&p).unwrap();
            prop_assert_eq!(
                nilpotent_elementary_divisors(&conj).unwrap(),
                nilpotent_elementary_divisors(&n).unwrap()
            );
        }

        #[test]
        fn jordan_round_trip(
            p in invertible(5),
            split in 1usize..5,
            a in -3i64..4,
            b in -3i64..4,
        ) {
            let (a, b) = (q(a, 2), q(b, 1));
            prop_assume!(a != b);
            let j0 = Matrix::block_diag(&[
                Matrix::jordan_upper(split, &a),
                Matrix::jordan_upper(5 - split, &b),
            ]);
            let m = &(&p * &j0) * &inverse(&p).unwrap();
            let jf = jordan_form(&m, &[a.clone(), b.clone()]).unwrap();
            prop_assert_eq!(&(&jf.p * &m) * &inverse(&jf.p).unwrap(), jf.j.clone());
            prop_assert_eq!(jf.j, j0);
        }

        #[test]
        fn order_bounded_by_largest_divisor(v in proptest::collection::vec(-3i64..4, 6)) {
            let z = q(0, 1);
            let theta = Matrix::block_diag(&[Matrix::jordan_upper(4, &z), Matrix::jordan_upper(2, &z)]);
            let v: Vec<Rational> = v.into_iter().map(|x| q(x, 1)).collect();
            let max = nilpotent_elementary_divisors(&theta).unwrap()[0];
            prop_assert!(vector_order(&theta, &v).unwrap() <= max);
        }
    }
}
