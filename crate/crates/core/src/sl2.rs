//! sl(2) machinery on the space `M_{p,q}` of block matrices `[[0, N], [0, 0]]`
//! with `N` of shape `p x q`.
//!
//! sl(2) acts on `N` through `y.N = R_a(y) N - N R_b(y)` with `a = p - 1`,
//! `b = q - 1`, which is the tensor product `V(a) ⊗ V(b)` in disguise. The
//! shifted adjoint operator `theta = ad A - lambda` for
//! `A = J^p(alpha) ⊕ J^q(alpha - lambda)` coincides with the action of `e`,
//! so Clebsch-Gordan hands us its elementary divisors.
//!
//! All operators act on row-major vectorizations of `N`.

use serde::{Deserialize, Serialize};

use crate::linalg::solve_linear;
use crate::matrix::Matrix;
use crate::rational::Rational;

/// Matrix model of the irreducible sl(2)-module of highest weight `a`.
#[derive(Debug, Clone, PartialEq)]
pub struct Sl2Triple {
    pub highest_weight: usize,
    pub h: Matrix,
    pub e: Matrix,
    pub f: Matrix,
}

/// `h = diag(a, a-2, ..., -a)`, `e = J^{a+1}(0)`, and `f` the unique lower
/// subdiagonal matrix with `[e, f] = h`.
pub fn sl2_irrep(a: usize) -> Sl2Triple {
    let dim = a + 1;
    let h = Matrix::diagonal(
        &(0..dim).map(|i| Rational::from(a as i64 - 2 * i as i64)).collect::<Vec<_>>(),
    );
    let e = Matrix::jordan_upper(dim, &Rational::zero());
    let f = if a == 0 {
        Matrix::zeros(1, 1)
    } else {
        // Unknowns: the subdiagonal entries f[k][k-1], k = 1..=a.
        let columns: Vec<Vec<Rational>> = (1..dim)
            .map(|k| e.commutator(&Matrix::unit(dim, dim, k, k - 1)).vectorize())
            .collect();
        let system = Matrix::from_columns(dim * dim, &columns);
        let sol = solve_linear(&system, &h.vectorize())
            .expect("shapes agree")
            .expect("[e, f] = h is solvable");
        debug_assert!(sol.kernel.is_empty());
        let mut f = Matrix::zeros(dim, dim);
        for (k, c) in (1..dim).zip(sol.particular) {
            f[(k, k - 1)] = c;
        }
        f
    };
    Sl2Triple { highest_weight: a, h, e, f }
}

/// The three sl(2) operators on vectorized `M_{p,q}`.
#[derive(Debug, Clone)]
pub struct MpqAction {
    pub p: usize,
    pub q: usize,
    pub e_op: Matrix,
    pub h_op: Matrix,
    pub f_op: Matrix,
}

pub fn mpq_action(p: usize, q: usize) -> MpqAction {
    assert!(p > 0 && q > 0);
    let left = sl2_irrep(p - 1);
    let right = sl2_irrep(q - 1);
    // vec(L N) = (L ⊗ I) vec N and vec(N R) = (I ⊗ R^T) vec N, row-major.
    let op = |l: &Matrix, r: &Matrix| {
        &l.kron(&Matrix::identity(q)) - &Matrix::identity(p).kron(&r.transpose())
    };
    MpqAction {
        p,
        q,
        e_op: op(&left.e, &right.e),
        h_op: op(&left.h, &right.h),
        f_op: op(&left.f, &right.f),
    }
}

/// Embed `N` (p x q) as the top-right block of a `(p+q) x (p+q)` matrix.
pub fn hat(n: &Matrix) -> Matrix {
    let (p, q) = (n.rows(), n.cols());
    let mut m = Matrix::zeros(p + q, p + q);
    m.set_block(0, p, n);
    m
}

/// Top-right `p x q` block of a `(p+q) x (p+q)` matrix.
pub fn unhat(m: &Matrix, p: usize, q: usize) -> Matrix {
    m.block(0, p, p, q)
}

/// `A = J^p(alpha) ⊕ J^q(alpha - lambda)`.
pub fn split_jordan(p: usize, q: usize, alpha: &Rational, lambda: &Rational) -> Matrix {
    Matrix::block_diag(&[Matrix::jordan_upper(p, alpha), Matrix::jordan_upper(q, &(alpha - lambda))])
}

/// Matrix of `X -> [A, X] - lambda X` on vectorized `M_{p,q}`, computed
/// directly from the commutator.
pub fn theta_operator(p: usize, q: usize, alpha: &Rational, lambda: &Rational) -> Matrix {
    let a = split_jordan(p, q, alpha, lambda);
    let columns: Vec<Vec<Rational>> = (0..p * q)
        .map(|idx| {
            let x = hat(&Matrix::unit(p, q, idx / q, idx % q));
            let image = a.ad_shifted(&x, lambda);
            debug_assert_eq!(hat(&unhat(&image, p, q)), image, "M_pq is theta-invariant");
            unhat(&image, p, q).vectorize()
        })
        .collect();
    Matrix::from_columns(p * q, &columns)
}

/// Lowest weight vector `E(i)` of `M_{p,q}`, supported on the `i`-th lower
/// diagonal (positions `(p-1-t, i-t)`, 0-based, for `t = 0..=i`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LowestWeightVector {
    pub index: usize,
    /// `alpha_0 = 1, alpha_1, ..., alpha_i`; `alpha_t` sits at row `p-1-t`.
    pub coefficients: Vec<Rational>,
    pub matrix: Matrix,
}

impl LowestWeightVector {
    /// Order of `E(i)` under `theta`.
    pub fn order(&self) -> usize {
        self.matrix.rows() + self.matrix.cols() - 1 - 2 * self.index
    }
}

/// The `min(p, q)` lowest weight vectors, from the closed product formula
/// `alpha_t = prod_{j=1..t} (i+1-j)(b+j-i) / (j(a+1-j))`.
pub fn lowest_weight_vectors(p: usize, q: usize) -> Vec<LowestWeightVector> {
    assert!(p > 0 && q > 0);
    let (a, b) = ((p - 1) as i64, (q - 1) as i64);
    (0..p.min(q))
        .map(|i| {
            let ii = i as i64;
            let mut coefficients = vec![Rational::one()];
            for t in 1..=ii {
                let num = Rational::from((ii + 1 - t) * (b + t - ii));
                let den = Rational::from(t * (a + 1 - t));
                let prev = coefficients.last().unwrap().clone();
                coefficients.push(&prev * &(&num / &den));
            }
            let mut matrix = Matrix::zeros(p, q);
            for (t, c) in coefficients.iter().enumerate() {
                matrix[(p - 1 - t, i - t)] = c.clone();
            }
            LowestWeightVector { index: i, coefficients, matrix }
        })
        .collect()
}

/// Elementary divisors of `theta` on `M_{p,q}` with the lowest weight vectors
/// generating the cyclic summands.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CgDecomposition {
    pub p: usize,
    pub q: usize,
    /// `p+q-1, p+q-3, ..., p+q-1-2z` with `z = min(p, q) - 1`.
    pub exponents: Vec<usize>,
    pub generators: Vec<LowestWeightVector>,
}

pub fn cg_elementary_divisors(p: usize, q: usize) -> CgDecomposition {
    assert!(p > 0 && q > 0);
    let exponents = (0..p.min(q)).map(|i| p + q - 1 - 2 * i).collect();
    CgDecomposition { p, q, exponents, generators: lowest_weight_vectors(p, q) }
}

/// Whether `N` has the maximal `theta`-order `p+q-1`: exactly when its
/// bottom-left entry is nonzero.
pub fn minimal_poly_criterion(n: &Matrix) -> bool {
    !n[(n.rows() - 1, 0)].is_zero()
}
