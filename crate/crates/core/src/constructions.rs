//! The named representation families, the extension spaces over a fixed
//! `R_{alpha,k,X}`, and block superdiagonal normalization.

use serde::{Deserialize, Serialize};

use crate::algebra::{JordanSpec, Representation};
use crate::error::{domain, input, Error, Refusal, Result};
use crate::linalg::{vectors_rank, Vector};
use crate::matrix::Matrix;
use crate::rational::Rational;
use crate::sl2::{hat, lowest_weight_vectors, split_jordan, theta_operator, LowestWeightVector};

/// Canonical label of a faithful uniserial representation of a single-block
/// algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "variant")]
pub enum ClassLabel {
    /// `R_{alpha,k,X}`, `1 < k < n`, `X` of shape `(k-1) x (n-k)`.
    #[serde(rename = "KX")]
    Kx {
        alpha: Rational,
        lambda: Rational,
        n: usize,
        k: usize,
        #[serde(rename = "X")]
        x: Matrix,
    },
    /// `R_{alpha,n}`.
    #[serde(rename = "TOP")]
    Top { alpha: Rational, lambda: Rational, n: usize },
    /// `R_{alpha,1}`.
    #[serde(rename = "BOTTOM")]
    Bottom { alpha: Rational, lambda: Rational, n: usize },
    /// `R_{alpha,a}`, dimension `n + 2`.
    #[serde(rename = "AA")]
    Aa { alpha: Rational, lambda: Rational, n: usize, a: Vec<Rational> },
    /// `T_{alpha,ell}` for the one-dimensional `V`.
    #[serde(rename = "DIAG")]
    Diag { alpha: Rational, lambda: Rational, ell: usize },
}

impl ClassLabel {
    pub fn alpha(&self) -> &Rational {
        match self {
            ClassLabel::Kx { alpha, .. }
            | ClassLabel::Top { alpha, .. }
            | ClassLabel::Bottom { alpha, .. }
            | ClassLabel::Aa { alpha, .. }
            | ClassLabel::Diag { alpha, .. } => alpha,
        }
    }

    pub fn lambda(&self) -> &Rational {
        match self {
            ClassLabel::Kx { lambda, .. }
            | ClassLabel::Top { lambda, .. }
            | ClassLabel::Bottom { lambda, .. }
            | ClassLabel::Aa { lambda, .. }
            | ClassLabel::Diag { lambda, .. } => lambda,
        }
    }

    /// Size of the Jordan block of `x` on `V`.
    pub fn n(&self) -> usize {
        match self {
            ClassLabel::Kx { n, .. }
            | ClassLabel::Top { n, .. }
            | ClassLabel::Bottom { n, .. }
            | ClassLabel::Aa { n, .. } => *n,
            ClassLabel::Diag { .. } => 1,
        }
    }

    pub fn spec(&self) -> JordanSpec {
        JordanSpec::single_eigenvalue(self.lambda(), &[self.n()]).expect("n > 0")
    }

    /// Checks the label invariants. `n = 1` is only expressible as `DIAG`
    /// so that every representation has exactly one label.
    pub fn validate(&self) -> Result<()> {
        match self {
            ClassLabel::Kx { n, k, x, .. } => {
                if !(1 < *k && k < n) {
                    return input(format!("KX needs 1 < k < n, got k={k}, n={n}"));
                }
                if (x.rows(), x.cols()) != (k - 1, n - k) {
                    return input(format!(
                        "KX needs X of shape {}x{}, got {}x{}",
                        k - 1,
                        n - k,
                        x.rows(),
                        x.cols()
                    ));
                }
            }
            ClassLabel::Top { n, .. } | ClassLabel::Bottom { n, .. } => {
                if *n < 2 {
                    return input("TOP and BOTTOM need n >= 2; use DIAG with ell = 2");
                }
            }
            ClassLabel::Aa { n, a, .. } => {
                if *n < 3 || n % 2 == 0 {
                    return input(format!("AA needs odd n >= 3, got {n}"));
                }
                check_aa_vector(*n, a)?;
                if let Some(i) = (2..=*n).step_by(2).find(|i| !a[i - 1].is_zero()) {
                    return input(format!("AA needs a_{i} = 0 for even {i}"));
                }
            }
            ClassLabel::Diag { ell, .. } => {
                if *ell < 2 {
                    return input(format!("DIAG needs ell >= 2, got {ell}"));
                }
            }
        }
        Ok(())
    }
}

fn check_aa_vector(n: usize, a: &[Rational]) -> Result<()> {
    if a.len() != n {
        return input(format!("a must have length {n}, got {}", a.len()));
    }
    if !a[0].is_one() {
        return input("a_1 must be 1");
    }
    Ok(())
}

/// `[[0, X], [1, 0]]` in `M_{k, n+1-k}`.
pub fn kx_block(k: usize, n: usize, x: &Matrix) -> Matrix {
    let mut nm = Matrix::zeros(k, n + 1 - k);
    nm.set_block(0, 1, x);
    nm[(k - 1, 0)] = Rational::one();
    nm
}

/// `x -> J^p(alpha) ⊕ J^q(alpha - lambda)`, `v_0 -> N̂`. Built for any `n`,
/// including those where the result fails to be a representation.
#[allow(non_snake_case)]
pub fn construct_R_pqN(
    alpha: &Rational,
    lambda: &Rational,
    n: usize,
    p: usize,
    q: usize,
    nm: &Matrix,
) -> Result<Representation> {
    if n == 0 || p == 0 || q == 0 {
        return input("n, p, q must be positive");
    }
    if (nm.rows(), nm.cols()) != (p, q) {
        return input(format!("N must be {p}x{q}, got {}x{}", nm.rows(), nm.cols()));
    }
    if nm[(p - 1, 0)].is_zero() {
        return input("N must have nonzero bottom-left entry");
    }
    let spec = JordanSpec::single_eigenvalue(lambda, &[n])?;
    Representation::new(spec, split_jordan(p, q, alpha, lambda), vec![hat(nm)])
}

/// `R_{alpha,a}` without the parity conditions on `n` and `a`.
pub fn construct_aa_raw(alpha: &Rational, lambda: &Rational, a: &[Rational]) -> Result<Representation> {
    let n = a.len();
    if n == 0 {
        return input("a must be nonempty");
    }
    check_aa_vector(n, a)?;
    let two_lambda = lambda + lambda;
    let big = Matrix::block_diag(&[
        Matrix::scalar(1, alpha),
        Matrix::jordan_upper(n, &(alpha - lambda)),
        Matrix::scalar(1, &(alpha - &two_lambda)),
    ]);
    let mut e0 = Matrix::zeros(n + 2, n + 2);
    for (i, ai) in a.iter().enumerate() {
        e0[(0, 1 + i)] = ai.clone();
    }
    e0[(n, n + 1)] = Rational::one();
    Representation::new(JordanSpec::single_eigenvalue(lambda, &[n])?, big, vec![e0])
}

#[allow(non_snake_case)]
pub fn construct_R(label: &ClassLabel) -> Result<Representation> {
    label.validate()?;
    match label {
        ClassLabel::Kx { alpha, lambda, n, k, x } => {
            construct_R_pqN(alpha, lambda, *n, *k, n + 1 - k, &kx_block(*k, *n, x))
        }
        ClassLabel::Top { alpha, lambda, n } => {
            construct_R_pqN(alpha, lambda, *n, *n, 1, &Matrix::unit(*n, 1, n - 1, 0))
        }
        ClassLabel::Bottom { alpha, lambda, n } => {
            construct_R_pqN(alpha, lambda, *n, 1, *n, &Matrix::unit(1, *n, 0, 0))
        }
        ClassLabel::Aa { alpha, lambda, a, .. } => construct_aa_raw(alpha, lambda, a),
        ClassLabel::Diag { alpha, lambda, ell } => {
            let diag: Vec<Rational> =
                (0..*ell).map(|i| alpha - &(lambda * &Rational::from(i))).collect();
            Representation::new(
                JordanSpec::single_eigenvalue(lambda, &[1])?,
                Matrix::diagonal(&diag),
                vec![Matrix::jordan_upper(*ell, &Rational::zero())],
            )
        }
    }
}

/// Coefficient slot: the image of `v_{block,0}` carries
/// `c * theta^power * Ê(generator)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ParameterSlot {
    pub block: usize,
    pub generator: usize,
    pub power: usize,
}

/// Homomorphisms `V -> M_{k,n+1-k}` of `F[t]`-modules sending the first
/// generator to the `E_0` of `R_{alpha,k,X}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtensionSpace {
    pub spec: JordanSpec,
    pub alpha: Rational,
    pub lambda: Rational,
    pub k: usize,
    #[serde(rename = "X")]
    pub x: Matrix,
    /// `J^k(alpha) ⊕ J^{n+1-k}(alpha - lambda)`.
    #[serde(rename = "A")]
    pub a: Matrix,
    /// The `k x (n+1-k)` block of the first generator image.
    pub e0: Matrix,
    pub target_generators: Vec<LowestWeightVector>,
    /// `theta`-orders `n, n-2, ...` of the target generators.
    pub orders: Vec<usize>,
    /// Free slots per block; block 0 is fixed and has none.
    pub block_counts: Vec<usize>,
    pub slots: Vec<ParameterSlot>,
}

fn refuse<T>(r: Refusal) -> Result<T> {
    Err(Error::Refused(r))
}

/// Checks the conditions under which `R_{alpha,k,X}` extends, in a fixed
/// order, and enumerates the parameter slots.
pub fn extension_space(spec: &JordanSpec, alpha: &Rational, k: usize, x: &Matrix) -> Result<ExtensionSpace> {
    let blocks = spec.blocks();
    let lambda = blocks[0].eigenvalue.clone();
    if blocks.iter().any(|b| b.eigenvalue != lambda) {
        return refuse(Refusal::MixedEigenvalues);
    }
    if lambda.is_zero() {
        return refuse(Refusal::ZeroEigenvalue);
    }
    let n = blocks[0].size;
    if !(1 < k && k < n) {
        return refuse(Refusal::SplitIndex { k, n });
    }
    for (i, b) in blocks.iter().enumerate().skip(1) {
        let bound = n.saturating_sub(2 * i);
        if b.size > bound {
            return refuse(Refusal::BlockSizeBound { block: i, size: b.size, bound });
        }
    }
    let (p, q) = (k, n + 1 - k);
    let s = p.min(q);
    if blocks.len() > s {
        return refuse(Refusal::TooManyBlocks { blocks: blocks.len(), bound: s });
    }
    if (x.rows(), x.cols()) != (k - 1, n - k) {
        return refuse(Refusal::ParameterShape { expected: (k - 1, n - k), found: (x.rows(), x.cols()) });
    }
    let target_generators = lowest_weight_vectors(p, q);
    let orders: Vec<usize> = target_generators.iter().map(LowestWeightVector::order).collect();
    let mut block_counts = vec![0];
    let mut slots = Vec::new();
    for (i, b) in blocks.iter().enumerate().skip(1) {
        let mut count = 0;
        for (j, &o) in orders.iter().enumerate() {
            let len = b.size.min(o);
            count += len;
            slots.extend((o - len..o).map(|power| ParameterSlot { block: i, generator: j, power }));
        }
        block_counts.push(count);
    }
    Ok(ExtensionSpace {
        spec: spec.clone(),
        alpha: alpha.clone(),
        lambda: lambda.clone(),
        k,
        x: x.clone(),
        a: split_jordan(p, q, alpha, &lambda),
        e0: kx_block(k, n, x),
        target_generators,
        orders,
        block_counts,
        slots,
    })
}

/// One coefficient of a parameter assignment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlotValue {
    pub block: usize,
    pub generator: usize,
    pub power: usize,
    pub value: Rational,
}

impl SlotValue {
    pub fn new(block: usize, generator: usize, power: usize, value: Rational) -> Self {
        SlotValue { block, generator, power, value }
    }

    pub fn slot(&self) -> ParameterSlot {
        ParameterSlot { block: self.block, generator: self.generator, power: self.power }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BuiltExtension {
    pub representation: Representation,
    /// Whether the induced map `V -> M_{k,n+1-k}` is injective.
    pub injective: bool,
}

/// Builds the extension for a parameter assignment. Slots not mentioned
/// are zero; a slot outside the space is an input error.
pub fn build_extension(space: &ExtensionSpace, params: &[SlotValue]) -> Result<BuiltExtension> {
    let (p, n) = (space.k, space.spec.blocks()[0].size);
    let q = n + 1 - p;
    let mut coeffs: Vec<Rational> = vec![Rational::zero(); space.slots.len()];
    for sv in params {
        let Some(pos) = space.slots.iter().position(|s| *s == sv.slot()) else {
            return input(format!(
                "({}, {}, {}) is not a parameter slot",
                sv.block, sv.generator, sv.power
            ));
        };
        coeffs[pos] = &coeffs[pos] + &sv.value;
    }
    let theta = theta_operator(p, q, &space.alpha, &space.lambda);
    let apply_pow = |v: &Vector, m: usize| (0..m).fold(v.clone(), |acc, _| theta.mul_vec(&acc));
    let mut block_vecs: Vec<Vector> = vec![space.e0.vectorize()];
    for i in 1..space.spec.len() {
        let mut w = vec![Rational::zero(); p * q];
        for (slot, c) in space.slots.iter().zip(&coeffs) {
            if slot.block != i || c.is_zero() {
                continue;
            }
            let term = apply_pow(&space.target_generators[slot.generator].matrix.vectorize(), slot.power);
            for (x, y) in w.iter_mut().zip(term) {
                *x += c * &y;
            }
        }
        block_vecs.push(w);
    }
    let mut images = Vec::new();
    for (b, w) in space.spec.blocks().iter().zip(&block_vecs) {
        let mut cur = w.clone();
        for _ in 0..b.size {
            images.push(cur.clone());
            cur = theta.mul_vec(&cur);
        }
    }
    let injective = vectors_rank(p * q, &images) == space.spec.dim_v();
    let generators = block_vecs.into_iter().map(|w| hat(&Matrix::from_vec(p, q, w))).collect();
    let representation = Representation::new(space.spec.clone(), space.a.clone(), generators)?;
    Ok(BuiltExtension { representation, injective })
}

/// `R_{alpha,a}` extended to `J^n(lambda) ⊕ J^1(2 lambda)` by
/// `w_0 -> beta E^{1,n+2}`.
pub fn build_extension_type3(
    alpha: &Rational,
    lambda: &Rational,
    a: &[Rational],
    beta: &Rational,
) -> Result<Representation> {
    let n = a.len();
    ClassLabel::Aa { alpha: alpha.clone(), lambda: lambda.clone(), n, a: a.to_vec() }.validate()?;
    if beta.is_zero() {
        return input("beta must be nonzero");
    }
    let base = construct_aa_raw(alpha, lambda, a)?;
    let spec = JordanSpec::from_pairs(&[(lambda.clone(), n), (lambda + lambda, 1)])?;
    let w0 = Matrix::unit(n + 2, n + 2, 0, n + 1).scale(beta);
    Representation::new(spec, base.a().clone(), vec![base.generators()[0].clone(), w0])
}

/// Upper triangular Toeplitz matrix with first row `t`.
fn toeplitz(t: &[Rational]) -> Matrix {
    let d = t.len();
    Matrix::from_fn(d, d, |i, j| if j >= i { t[j - i].clone() } else { Rational::zero() })
}

/// Conjugates `e` by a block diagonal `x`, each block a unit of
/// `F[J^{d_i}(0)]`, so that every first-superdiagonal block of
/// `h = x e x^-1` has first column equal to the last canonical vector and
/// the final one has last row equal to the first canonical vector.
pub fn normalize_superdiagonal(e: &Matrix, sizes: &[usize]) -> Result<(Matrix, Matrix)> {
    let l = sizes.len();
    if l < 2 {
        return input("need at least two diagonal blocks");
    }
    let d: usize = sizes.iter().sum();
    if !e.is_square() || e.rows() != d {
        return input(format!("block sizes sum to {d}, matrix is {}x{}", e.rows(), e.cols()));
    }
    let offsets: Vec<usize> = sizes.iter().scan(0, |acc, s| Some(std::mem::replace(acc, *acc + s))).collect();
    let block_of = |r: usize| offsets.iter().rposition(|&o| o <= r).unwrap();
    for r in 0..d {
        for c in 0..d {
            if block_of(c) <= block_of(r) && !e[(r, c)].is_zero() {
                return domain("matrix is not strictly block upper triangular");
            }
        }
    }
    let sup = |m: &Matrix, i: usize| m.block(offsets[i], offsets[i + 1], sizes[i], sizes[i + 1]);
    for (i, &size) in sizes.iter().enumerate().take(l - 1) {
        if sup(e, i)[(size - 1, 0)].is_zero() {
            return domain(format!("superdiagonal block {i} has zero bottom-left entry"));
        }
    }
    let conj = |x: &Matrix, m: &Matrix| {
        let blocks_inv: Vec<Matrix> = (0..l)
            .map(|i| {
                let b = x.block(offsets[i], offsets[i], sizes[i], sizes[i]);
                crate::linalg::inverse(&b).expect("units are invertible")
            })
            .collect();
        &(x * m) * &Matrix::block_diag(&blocks_inv)
    };

    // Left factors push each first column onto the last canonical vector.
    let mut xs: Vec<Matrix> = Vec::with_capacity(l);
    for i in 0..l - 1 {
        let u = sup(e, i).column(0);
        let dd = u.len();
        let mut t = vec![Rational::one()];
        for s in 1..dd {
            let acc: Rational = (0..s).map(|j| &t[j] * &u[dd - 1 - s + j]).sum();
            t.push(-(&acc / &u[dd - 1]));
        }
        xs.push(toeplitz(&t));
    }
    xs.push(Matrix::identity(sizes[l - 1]));
    let x1 = Matrix::block_diag(&xs);
    let h1 = conj(&x1, e);

    // Scalars make the surviving corner entries 1.
    let mut y = vec![Rational::one(); l];
    for i in (0..l - 1).rev() {
        let beta = &sup(&h1, i)[(sizes[i] - 1, 0)];
        y[i] = &y[i + 1] / beta;
    }
    let ymat = Matrix::block_diag(&(0..l).map(|i| Matrix::scalar(sizes[i], &y[i])).collect::<Vec<_>>());
    let h2 = conj(&ymat, &h1);

    // The last block clears the final last row beyond its first entry.
    let r = sup(&h2, l - 2).row(sizes[l - 2] - 1).to_vec();
    let mut z = vec![Rational::one()];
    for c in 1..r.len() {
        let acc: Rational = (0..c).map(|s| &r[c - s] * &z[s]).sum();
        z.push(-(&acc / &r[0]));
    }
    let zinv = crate::linalg::inverse(&toeplitz(&z)).expect("unipotent");
    let mut last: Vec<Matrix> = sizes[..l - 1].iter().map(|&s| Matrix::identity(s)).collect();
    last.push(zinv);
    let x3 = Matrix::block_diag(&last);
    let h = conj(&x3, &h2);
    let x = &(&x3 * &ymat) * &x1;
    Ok((h, x))
}
