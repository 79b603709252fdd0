//! The algebra `g = <x> ⋉ V` attached to a Jordan specification, its
//! representations, and the structural checks run on them.

use serde::{Deserialize, Serialize};

use crate::error::{domain, input, Error, Result};
use crate::linalg::{inverse, kernel_basis, rational_spectrum, vectors_rank, JordanBlock, SpanBuilder, Vector};
use crate::matrix::Matrix;
use crate::rational::Rational;

/// How `x` acts on `V`: a list of Jordan blocks.
///
/// Blocks sharing an eigenvalue appear with sizes descending. Serialized as
/// a bare list of `{"eigenvalue", "size"}` objects.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<JordanBlock>", into = "Vec<JordanBlock>")]
pub struct JordanSpec {
    blocks: Vec<JordanBlock>,
}

impl TryFrom<Vec<JordanBlock>> for JordanSpec {
    type Error = Error;

    fn try_from(blocks: Vec<JordanBlock>) -> Result<Self> {
        JordanSpec::new(blocks)
    }
}

impl From<JordanSpec> for Vec<JordanBlock> {
    fn from(s: JordanSpec) -> Self {
        s.blocks
    }
}

impl JordanSpec {
    pub fn new(blocks: Vec<JordanBlock>) -> Result<Self> {
        if blocks.is_empty() {
            return input("Jordan specification has no blocks");
        }
        for (i, b) in blocks.iter().enumerate() {
            if b.size == 0 {
                return input(format!("block {i} has size 0"));
            }
            if let Some(prev) = blocks[..i].iter().rev().find(|p| p.eigenvalue == b.eigenvalue) {
                if prev.size < b.size {
                    return input(format!(
                        "sizes for eigenvalue {} must be descending, found {} before {}",
                        b.eigenvalue, prev.size, b.size
                    ));
                }
            }
        }
        Ok(JordanSpec { blocks })
    }

    /// Convenience constructor from `(eigenvalue, size)` pairs.
    pub fn from_pairs(pairs: &[(Rational, usize)]) -> Result<Self> {
        JordanSpec::new(
            pairs.iter().map(|(ev, size)| JordanBlock { eigenvalue: ev.clone(), size: *size }).collect(),
        )
    }

    /// Blocks of equal eigenvalue `lambda` with the given sizes.
    pub fn single_eigenvalue(lambda: &Rational, sizes: &[usize]) -> Result<Self> {
        JordanSpec::from_pairs(&sizes.iter().map(|s| (lambda.clone(), *s)).collect::<Vec<_>>())
    }

    pub fn blocks(&self) -> &[JordanBlock] {
        &self.blocks
    }

    /// Number of blocks.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dim_v(&self) -> usize {
        self.blocks.iter().map(|b| b.size).sum()
    }

    pub fn max_size(&self) -> usize {
        self.blocks.iter().map(|b| b.size).max().unwrap()
    }

    pub fn is_diagonalizable(&self) -> bool {
        self.blocks.iter().all(|b| b.size == 1)
    }

    /// Distinct eigenvalues in order of first appearance.
    pub fn eigenvalues(&self) -> Vec<Rational> {
        let mut out: Vec<Rational> = Vec::new();
        for b in &self.blocks {
            if !out.contains(&b.eigenvalue) {
                out.push(b.eigenvalue.clone());
            }
        }
        out
    }

    /// The matrix of `ad x` on `V` in the basis `v_{i,j}`: a direct sum of
    /// lower Jordan blocks, since `v_{i,j} -> lambda_i v_{i,j} + v_{i,j+1}`.
    pub fn ad_x_on_v(&self) -> Matrix {
        Matrix::block_diag(
            &self.blocks.iter().map(|b| Matrix::jordan_lower(b.size, &b.eigenvalue)).collect::<Vec<_>>(),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisElement {
    X,
    V { block: usize, index: usize },
}

/// Basis `x, v_{0,0}, ..., v_{0,n_0-1}, v_{1,0}, ...` with the bracket
/// `[x, v_{i,j}] = lambda_i v_{i,j} + v_{i,j+1}` and `V` abelian.
#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebraData {
    pub spec: JordanSpec,
    pub basis: Vec<BasisElement>,
}

pub fn build_algebra(spec: &JordanSpec) -> LieAlgebraData {
    let mut basis = vec![BasisElement::X];
    for (block, b) in spec.blocks().iter().enumerate() {
        basis.extend((0..b.size).map(|index| BasisElement::V { block, index }));
    }
    LieAlgebraData { spec: spec.clone(), basis }
}

impl LieAlgebraData {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, e: BasisElement) -> Option<usize> {
        self.basis.iter().position(|b| *b == e)
    }

    /// `[basis[a], basis[b]]` as a coordinate vector.
    pub fn bracket(&self, a: usize, b: usize) -> Vector {
        let mut out = vec![Rational::zero(); self.dim()];
        let (sign, v) = match (self.basis[a], self.basis[b]) {
            (BasisElement::X, BasisElement::V { block, index }) => (Rational::one(), (block, index)),
            (BasisElement::V { block, index }, BasisElement::X) => (-Rational::one(), (block, index)),
            _ => return out,
        };
        let (block, index) = v;
        let lambda = &self.spec.blocks()[block].eigenvalue;
        out[b.max(a)] = &sign * lambda;
        if index + 1 < self.spec.blocks()[block].size {
            out[b.max(a) + 1] = sign;
        }
        out
    }
}

/// A representation, stored through `A = R(x)` and `R(v_{i,0})`. The image
/// of `v_{i,j}` is `(ad A - lambda_i)^j R(v_{i,0})`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RepresentationRepr", into = "RepresentationRepr")]
pub struct Representation {
    spec: JordanSpec,
    a: Matrix,
    generators: Vec<Matrix>,
}

#[derive(Serialize, Deserialize)]
struct RepresentationRepr {
    spec: JordanSpec,
    d: usize,
    #[serde(rename = "A")]
    a: Matrix,
    generators: Vec<Matrix>,
}

impl TryFrom<RepresentationRepr> for Representation {
    type Error = Error;

    fn try_from(r: RepresentationRepr) -> Result<Self> {
        if r.a.rows() != r.d {
            return input(format!("declared d={} but A is {}x{}", r.d, r.a.rows(), r.a.cols()));
        }
        Representation::new(r.spec, r.a, r.generators)
    }
}

impl From<Representation> for RepresentationRepr {
    fn from(r: Representation) -> Self {
        RepresentationRepr { d: r.d(), spec: r.spec, a: r.a, generators: r.generators }
    }
}

impl Representation {
    pub fn new(spec: JordanSpec, a: Matrix, generators: Vec<Matrix>) -> Result<Self> {
        if !a.is_square() {
            return input("A must be square");
        }
        if generators.len() != spec.len() {
            return input(format!(
                "{} generator images for {} blocks",
                generators.len(),
                spec.len()
            ));
        }
        let d = a.rows();
        if let Some(i) = generators.iter().position(|g| g.rows() != d || g.cols() != d) {
            return input(format!("generator {i} is not {d}x{d}"));
        }
        Ok(Representation { spec, a, generators })
    }

    pub fn spec(&self) -> &JordanSpec {
        &self.spec
    }

    pub fn d(&self) -> usize {
        self.a.rows()
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    pub fn algebra(&self) -> LieAlgebraData {
        build_algebra(&self.spec)
    }

    /// `T R(y) T^-1` for every `y`.
    pub fn conjugate(&self, t: &Matrix) -> Result<Representation> {
        let Some(t_inv) = inverse(t) else {
            return input("conjugating matrix is singular");
        };
        if t.rows() != self.d() {
            return input("conjugating matrix has the wrong size");
        }
        let conj = |m: &Matrix| &(t * m) * &t_inv;
        Ok(Representation {
            spec: self.spec.clone(),
            a: conj(&self.a),
            generators: self.generators.iter().map(conj).collect(),
        })
    }

    /// Block-diagonal sum of two representations of the same algebra.
    pub fn direct_sum(&self, other: &Representation) -> Result<Representation> {
        if self.spec != other.spec {
            return input("direct sum needs a common Jordan specification");
        }
        Ok(Representation {
            spec: self.spec.clone(),
            a: Matrix::block_diag(&[self.a.clone(), other.a.clone()]),
            generators: self
                .generators
                .iter()
                .zip(&other.generators)
                .map(|(g, h)| Matrix::block_diag(&[g.clone(), h.clone()]))
                .collect(),
        })
    }
}

/// Images of the basis of `g`, in basis order.
pub fn all_images(rep: &Representation) -> Vec<Matrix> {
    let mut out = vec![rep.a.clone()];
    for (b, g) in rep.spec.blocks().iter().zip(&rep.generators) {
        let mut cur = g.clone();
        for j in 0..b.size {
            if j > 0 {
                cur = rep.a.ad_shifted(&cur, &b.eigenvalue);
            }
            out.push(cur.clone());
        }
    }
    out
}

/// Images of the basis of `V` only.
pub fn v_images(rep: &Representation) -> Vec<Matrix> {
    all_images(rep).split_off(1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    /// `[R(v), R(w)] = 0`.
    Commute,
    /// `(ad A - lambda_i)^{n_i} R(v_{i,0}) = 0`.
    ChainEnd,
    /// `[A, R(v_{i,j})] = lambda_i R(v_{i,j}) + R(v_{i,j+1})`.
    Bracket,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub relation: Relation,
    /// Basis indices of `g` involved.
    pub indices: Vec<usize>,
    pub residual: Matrix,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

pub fn verify_representation(rep: &Representation) -> Verdict {
    let images = all_images(rep);
    let mut violations = Vec::new();
    let mut offset = 1;
    for (b, _) in rep.spec.blocks().iter().zip(&rep.generators) {
        for j in 0..b.size {
            let idx = offset + j;
            let lhs = rep.a.ad_shifted(&images[idx], &b.eigenvalue);
            if j + 1 < b.size {
                let residual = &lhs - &images[idx + 1];
                if !residual.is_zero() {
                    violations.push(Violation { relation: Relation::Bracket, indices: vec![0, idx], residual });
                }
            } else if !lhs.is_zero() {
                violations.push(Violation { relation: Relation::ChainEnd, indices: vec![idx], residual: lhs });
            }
        }
        offset += b.size;
    }
    for i in 1..images.len() {
        for j in i + 1..images.len() {
            let residual = images[i].commutator(&images[j]);
            if !residual.is_zero() {
                violations.push(Violation { relation: Relation::Commute, indices: vec![i, j], residual });
            }
        }
    }
    Verdict { ok: violations.is_empty(), violations }
}

pub fn is_faithful(rep: &Representation) -> bool {
    let images: Vec<Vector> = all_images(rep).iter().map(Matrix::vectorize).collect();
    vectors_rank(rep.d() * rep.d(), &images) == images.len()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SocleSeries {
    /// Bases of `0 = S_0 ⊂ S_1 ⊂ ... ⊂ S_k = F^d`, as reduced echelon rows.
    pub chain: Vec<Vec<Vector>>,
    pub factor_dims: Vec<usize>,
}

/// Matrix of the operator induced by `m` on `F^d / span`, in the basis of
/// standard vectors at non-pivot positions.
fn quotient_operator(m: &Matrix, span: &SpanBuilder, free: &[usize]) -> Matrix {
    let columns: Vec<Vector> = free
        .iter()
        .map(|&c| {
            let r = span.reduce(&m.column(c));
            free.iter().map(|&i| r[i].clone()).collect()
        })
        .collect();
    Matrix::from_columns(free.len(), &columns)
}

pub fn socle_series(rep: &Representation) -> Result<SocleSeries> {
    let d = rep.d();
    let vs = v_images(rep);
    for (i, m) in vs.iter().enumerate() {
        if !m.pow(d).is_zero() {
            return domain(format!("image of V basis element {i} is not nilpotent"));
        }
    }
    let mut span = SpanBuilder::new(d);
    let mut chain = vec![Vec::new()];
    let mut factor_dims = Vec::new();
    while span.rank() < d {
        let pivots = span.pivots();
        let free: Vec<usize> = (0..d).filter(|c| !pivots.contains(c)).collect();
        let r = free.len();
        let stacked = Matrix::vstack(
            &vs.iter().map(|m| quotient_operator(m, &span, &free)).collect::<Vec<_>>(),
        );
        let w = kernel_basis(&stacked);
        // A leaves W invariant because [A, V] lies in V.
        let w_mat = Matrix::from_columns(r, &w);
        let a_q = quotient_operator(&rep.a, &span, &free);
        let a_w_cols: Vec<Vector> = w
            .iter()
            .map(|v| {
                crate::linalg::coordinates(&w_mat, &a_q.mul_vec(v))
                    .expect("W is invariant under A")
            })
            .collect();
        let a_w = Matrix::from_columns(w.len(), &a_w_cols);
        let Some(spectrum) = rational_spectrum(&a_w) else {
            return domain("induced action of x has irrational eigenvalues");
        };
        let before = span.rank();
        for (mu, _) in spectrum {
            let shifted = &a_w - &Matrix::scalar(w.len(), &mu);
            for coords in kernel_basis(&shifted) {
                let in_quotient = w_mat.mul_vec(&coords);
                let mut lifted = vec![Rational::zero(); d];
                for (&i, c) in free.iter().zip(in_quotient) {
                    lifted[i] = c;
                }
                span.insert(&lifted);
            }
        }
        let grown = span.rank() - before;
        assert!(grown > 0, "socle of a nonzero module is nonzero");
        factor_dims.push(grown);
        chain.push(span.basis());
    }
    Ok(SocleSeries { chain, factor_dims })
}

pub fn is_uniserial(rep: &Representation) -> Result<bool> {
    Ok(socle_series(rep)?.factor_dims.iter().all(|&f| f == 1))
}

/// `K(y) = -R(y)^T`.
pub fn dual_representation(rep: &Representation) -> Representation {
    let neg_t = |m: &Matrix| -&m.transpose();
    Representation {
        spec: rep.spec.clone(),
        a: neg_t(&rep.a),
        generators: rep.generators.iter().map(neg_t).collect(),
    }
}

/// Representation of `<x> ⋉ (⊕_{i in subset} V_i)`; blocks keep spec order.
pub fn restrict(rep: &Representation, subset: &[usize]) -> Result<Representation> {
    if subset.is_empty() {
        return input("block subset is empty");
    }
    let mut idx = subset.to_vec();
    idx.sort_unstable();
    idx.dedup();
    if let Some(&bad) = idx.iter().find(|&&i| i >= rep.spec.len()) {
        return input(format!("block {bad} does not exist"));
    }
    let spec = JordanSpec::new(idx.iter().map(|&i| rep.spec.blocks()[i].clone()).collect())?;
    Ok(Representation {
        spec,
        a: rep.a.clone(),
        generators: idx.iter().map(|&i| rep.generators[i].clone()).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{jordan_form, nilpotent_elementary_divisors};
    use crate::rational::q;

    /// `x -> J^n(alpha) ⊕ (alpha - lambda)`, `v_0 -> E^{n, n+1}`.
    fn top(alpha: i64, lambda: i64, n: usize) -> Representation {
        let a = Matrix::block_diag(&[
            Matrix::jordan_upper(n, &q(alpha, 1)),
            Matrix::scalar(1, &q(alpha - lambda, 1)),
        ]);
        let spec = JordanSpec::single_eigenvalue(&q(lambda, 1), &[n]).unwrap();
        Representation::new(spec, a, vec![Matrix::unit(n + 1, n + 1, n - 1, n)]).unwrap()
    }

    #[test]
    fn spec_validation() {
        assert!(JordanSpec::new(vec![]).is_err());
        assert!(JordanSpec::from_pairs(&[(q(1, 1), 0)]).is_err());
        assert!(JordanSpec::from_pairs(&[(q(1, 1), 2), (q(1, 1), 3)]).is_err());
        assert!(JordanSpec::from_pairs(&[(q(1, 1), 2), (q(2, 1), 3)]).is_ok());
        let s = JordanSpec::from_pairs(&[(q(1, 1), 3), (q(2, 1), 1)]).unwrap();
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"[{"eigenvalue":"1","size":3},{"eigenvalue":"2","size":1}]"#);
        assert_eq!(serde_json::from_str::<JordanSpec>(&json).unwrap(), s);
        assert!(serde_json::from_str::<JordanSpec>("[]").is_err());
    }

    #[test]
    fn algebra_brackets() {
        let g = build_algebra(&JordanSpec::single_eigenvalue(&q(2, 1), &[1]).unwrap());
        assert_eq!(g.dim(), 2);
        assert_eq!(g.bracket(0, 1), vec![q(0, 1), q(2, 1)]);

        let lambda = q(3, 1);
        let g = build_algebra(&JordanSpec::single_eigenvalue(&lambda, &[3]).unwrap());
        assert_eq!(g.bracket(0, 1), vec![q(0, 1), q(3, 1), q(1, 1), q(0, 1)]);
        assert_eq!(g.bracket(0, 2), vec![q(0, 1), q(0, 1), q(3, 1), q(1, 1)]);
        assert_eq!(g.bracket(0, 3), vec![q(0, 1), q(0, 1), q(0, 1), q(3, 1)]);
        assert_eq!(g.bracket(3, 0), vec![q(0, 1), q(0, 1), q(0, 1), q(-3, 1)]);
        assert!(g.bracket(1, 2).iter().all(Rational::is_zero));

        let spec = JordanSpec::single_eigenvalue(&q(1, 1), &[7, 5, 3]).unwrap();
        let g = build_algebra(&spec);
        assert_eq!(g.dim(), 16);
        assert_eq!(g.basis[8], BasisElement::V { block: 1, index: 0 });
        for a in 0..g.dim() {
            for b in 0..g.dim() {
                let sum: Vec<Rational> =
                    g.bracket(a, b).iter().zip(g.bracket(b, a)).map(|(x, y)| x + &y).collect();
                assert!(sum.iter().all(Rational::is_zero));
            }
        }
        let jf = jordan_form(&spec.ad_x_on_v(), &[q(1, 1)]).unwrap();
        let sizes: Vec<usize> = jf.blocks.iter().map(|b| b.size).collect();
        assert_eq!(sizes, vec![7, 5, 3]);
    }

    #[test]
    fn top_family_is_faithful_uniserial() {
        for n in 1..6 {
            let rep = top(2, 3, n);
            assert!(verify_representation(&rep).ok);
            assert!(is_faithful(&rep));
            let s = socle_series(&rep).unwrap();
            assert_eq!(s.factor_dims, vec![1; n + 1]);
            let images = all_images(&rep);
            for e in &images[1..] {
                assert!(e.entries().iter().enumerate().all(|(k, x)| k / (n + 1) < k % (n + 1) || x.is_zero()));
            }
            let last = images.last().unwrap();
            assert!(rep.a().ad_shifted(last, &q(3, 1)).is_zero());
        }
    }

    #[test]
    fn broken_chain_end_is_reported() {
        let spec = JordanSpec::single_eigenvalue(&q(1, 1), &[2]).unwrap();
        let a = Matrix::diagonal(&[q(0, 1), q(-1, 1), q(-2, 1)]);
        // E^{1,3} has ad-eigenvalue 2, so it is not killed by (ad A - 1)^2.
        let rep = Representation::new(spec, a, vec![Matrix::unit(3, 3, 0, 2)]).unwrap();
        let v = verify_representation(&rep);
        assert!(!v.ok);
        assert_eq!(v.violations[0].relation, Relation::ChainEnd);
        assert_eq!(v.violations[0].indices, vec![2]);
    }

    #[test]
    fn socle_examples() {
        let spec = JordanSpec::single_eigenvalue(&q(1, 1), &[1]).unwrap();
        let rep = Representation::new(spec.clone(), Matrix::scalar(1, &q(4, 1)), vec![Matrix::zeros(1, 1)]).unwrap();
        assert_eq!(socle_series(&rep).unwrap().factor_dims, vec![1]);
        assert!(!is_faithful(&rep));

        let two = Representation::new(spec, Matrix::diagonal(&[q(1, 1), q(5, 1)]), vec![Matrix::zeros(2, 2)]).unwrap();
        assert_eq!(socle_series(&two).unwrap().factor_dims, vec![2]);

        let doubled = top(0, 1, 3).direct_sum(&top(0, 1, 3)).unwrap();
        assert!(verify_representation(&doubled).ok);
        assert!(!is_uniserial(&doubled).unwrap());
    }

    #[test]
    fn socle_chain_is_invariant() {
        let rep = top(1, 2, 4).conjugate(&Matrix::from_fn(5, 5, |i, j| q(((i + 2 * j) % 3) as i64 + (i == j) as i64 * 4, 1))).unwrap();
        let s = socle_series(&rep).unwrap();
        let images = all_images(&rep);
        for basis in &s.chain {
            let mut span = SpanBuilder::new(5);
            for v in basis {
                span.insert(v);
            }
            for m in &images {
                for v in basis {
                    assert!(span.contains(&m.mul_vec(v)));
                }
            }
        }
        let dims: Vec<usize> = s.chain.iter().map(Vec::len).collect();
        assert_eq!(dims, vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn irrational_and_non_nilpotent_inputs_are_refused() {
        let spec = JordanSpec::single_eigenvalue(&q(0, 1), &[1]).unwrap();
        let rot = Matrix::from_i64(&[&[0, -1], &[1, 0]]);
        let rep = Representation::new(spec.clone(), rot.clone(), vec![Matrix::zeros(2, 2)]).unwrap();
        assert!(matches!(socle_series(&rep), Err(Error::Domain(_))));
        let rep = Representation::new(spec, Matrix::zeros(2, 2), vec![Matrix::identity(2)]).unwrap();
        assert!(matches!(socle_series(&rep), Err(Error::Domain(_))));
    }

    #[test]
    fn dual_and_restrict() {
        let rep = top(1, 2, 3);
        let dual = dual_representation(&rep);
        assert_eq!(dual_representation(&dual), rep);
        assert!(verify_representation(&dual).ok);
        assert!(is_faithful(&dual) && is_uniserial(&dual).unwrap());

        assert_eq!(restrict(&rep, &[0]).unwrap(), rep);
        assert!(matches!(restrict(&rep, &[]), Err(Error::Input(_))));
        assert!(restrict(&rep, &[1]).is_err());
    }

    #[test]
    fn representation_json_roundtrip() {
        let rep = top(0, 1, 2);
        let json = serde_json::to_value(&rep).unwrap();
        assert_eq!(json["d"], 3);
        assert_eq!(json["A"]["rows"], 3);
        let back: Representation = serde_json::from_value(json.clone()).unwrap();
        assert_eq!(back, rep);
        let mut bad = json;
        bad["d"] = 4.into();
        assert!(serde_json::from_value::<Representation>(bad).is_err());
    }

    #[test]
    fn homomorphism_on_all_pairs() {
        let rep = top(3, -2, 4);
        let g = rep.algebra();
        let images = all_images(&rep);
        for a in 0..g.dim() {
            for b in 0..g.dim() {
                let want = g.bracket(a, b).iter().zip(&images).fold(Matrix::zeros(5, 5), |acc, (c, m)| &acc + &m.scale(c));
                assert_eq!(images[a].commutator(&images[b]), want);
            }
        }
        assert_eq!(nilpotent_elementary_divisors(&images[1]).unwrap(), vec![2, 1, 1, 1]);
    }
}
