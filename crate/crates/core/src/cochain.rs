//! Cochain complexes of n-Lie algebras and the graded Lie algebra of
//! block-skew endomorphism cochains.

use std::sync::Arc;

use num_traits::One;

use crate::error::{Error, Result};
use crate::kernel::{
    axpy, basis_vector, is_zero_vector, rank, shuffles, sign_pow, zero_vector, Matrix, Scalar,
    Vector,
};
use crate::multilinear::{
    bidegree_of, has_bidegree, Bidegree, BlockMap, Evaluate, KeyLayout, Module, Space,
    SumSpaceMap, UnknownCochain,
};
use crate::nlie::Representation;

fn basis_block(d: usize, idx: &[usize]) -> Vec<Vector> {
    idx.iter().map(|&i| basis_vector(d, i)).collect()
}

/// `(∂_ρ f)(X_1, …, X_m, x)` for a cochain `f` with `m - 1` blocks, at a
/// basis key. Generic over concrete and symbolic values.
pub fn coboundary_at<M: Module, F: Evaluate<M> + ?Sized>(
    rep: &Representation,
    f: &F,
    blocks: &[Vec<usize>],
    tail: usize,
) -> M {
    let n = rep.n();
    let d = rep.g_dim();
    let m = blocks.len();
    let alg = rep.algebra();
    let mut out = M::zero(rep.v_dim());
    if m == 0 {
        return out;
    }
    let ads: Vec<Matrix> = blocks.iter().map(|b| alg.ad_basis(b)).collect();
    let vec_blocks: Vec<Vec<Vector>> = blocks.iter().map(|b| basis_block(d, b)).collect();
    let tail_v = basis_vector(d, tail);
    let without = |j: usize| -> Vec<Vec<Vector>> {
        vec_blocks
            .iter()
            .enumerate()
            .filter(|&(a, _)| a != j)
            .map(|(_, b)| b.clone())
            .collect()
    };

    // Σ_{j<k} (-1)^j f(.., X̂_j, .., X_j∘X_k, .., x)
    for j in 0..m {
        if ads[j].is_zero() {
            continue;
        }
        let sign = sign_pow(j as i64 + 1);
        for k in j + 1..m {
            for i in 0..n - 1 {
                let col = ads[j].column(blocks[k][i]);
                if is_zero_vector(&col) {
                    continue;
                }
                let mut args = without(j);
                args[k - 1][i] = col;
                out.add_scaled(&sign, &f.eval_at(&args, &tail_v));
            }
        }
    }
    // Σ_j (-1)^j f(.., X̂_j, .., [X_j, x])
    for j in 0..m {
        let col = ads[j].column(tail);
        if is_zero_vector(&col) {
            continue;
        }
        out.add_scaled(&sign_pow(j as i64 + 1), &f.eval_at(&without(j), &col));
    }
    // Σ_j (-1)^{j+1} ρ(X_j) f(.., X̂_j, .., x)
    for j in 0..m {
        let r = rep.rho_basis(&blocks[j]);
        if r.is_zero() {
            continue;
        }
        out.add_scaled(&sign_pow(j as i64), &f.eval_at(&without(j), &tail_v).transform(&r));
    }
    // Σ_i (-1)^{n+m-i+1} ρ(x_m^1, .., x̂_m^i, .., x) f(X_1, .., X_{m-1}, x_m^i)
    let last = &blocks[m - 1];
    for i in 0..n - 1 {
        let mut idx: Vec<usize> = last.iter().enumerate().filter(|&(a, _)| a != i).map(|(_, &x)| x).collect();
        idx.push(tail);
        let r = rep.rho_basis(&idx);
        if r.is_zero() {
            continue;
        }
        let value = f.eval_at(&vec_blocks[..m - 1], &basis_vector(d, last[i]));
        out.add_scaled(&sign_pow((n + m - i) as i64), &value.transform(&r));
    }
    out
}

/// `∂_ρ f` as a map with one more block.
pub fn coboundary(rep: &Representation, f: &BlockMap) -> Result<BlockMap> {
    check_cochain_shape(rep, f)?;
    Ok(BlockMap::from_fn(
        rep.n(),
        f.blocks() + 1,
        f.source().clone(),
        f.target().clone(),
        |bs, tail| coboundary_at::<Vector, _>(rep, f, bs, tail),
    ))
}

fn check_cochain_shape(rep: &Representation, f: &BlockMap) -> Result<()> {
    if f.n() != rep.n() || f.source().dim != rep.g_dim() || f.target().dim != rep.v_dim() {
        return Err(Error::Shape(format!(
            "cochain on a {}-dimensional space with values in dimension {} does not match the pair ({}, {})",
            f.source().dim,
            f.target().dim,
            rep.g_dim(),
            rep.v_dim()
        )));
    }
    Ok(())
}

/// Number of cochains of degree `m ≥ 1`: `C(d, n-1)^{m-1} · d · dim V`.
pub fn cochain_dim(rep: &Representation, m: usize) -> usize {
    assert!(m >= 1);
    KeyLayout::new(rep.n(), m - 1, rep.g_dim()).key_count() * rep.v_dim()
}

/// Matrix of `∂_ρ: C^m → C^{m+1}` in the canonical cochain bases.
pub fn coboundary_matrix(rep: &Representation, m: usize) -> Matrix {
    assert!(m >= 1);
    let unknown = UnknownCochain::new(rep.n(), m - 1, rep.g_dim(), rep.v_dim());
    let out_layout = KeyLayout::new(rep.n(), m, rep.g_dim());
    let vd = rep.v_dim();
    let mut mat = Matrix::zeros(out_layout.key_count() * vd, unknown.unknowns());
    for key in 0..out_layout.key_count() {
        let (bs, tail) = out_layout.key_indices(key);
        let value = coboundary_at(rep, &unknown, &bs, tail);
        for (c, comp) in value.comps.iter().enumerate() {
            for (col, x) in comp {
                mat[(key * vd + c, *col)] = x.clone();
            }
        }
    }
    mat
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CohomologyRow {
    pub m: usize,
    pub cochain_dim: usize,
    /// Rank of the differential leaving degree `m`.
    pub rank: usize,
    pub dim: usize,
}

/// `dim H^m = dim C^m - rank ∂_m - rank ∂_{m-1}` (nothing subtracted below 1).
pub fn cohomology_dim(rep: &Representation, m: usize) -> usize {
    assert!(m >= 1, "cohomology starts in degree 1");
    let c = cochain_dim(rep, m);
    let out = rank(&coboundary_matrix(rep, m));
    let inc = if m > 1 { rank(&coboundary_matrix(rep, m - 1)) } else { 0 };
    c - out - inc
}

pub fn cohomology_table(rep: &Representation, max_m: usize) -> Vec<CohomologyRow> {
    let ranks: Vec<usize> = (1..=max_m).map(|m| rank(&coboundary_matrix(rep, m))).collect();
    (1..=max_m)
        .map(|m| {
            let c = cochain_dim(rep, m);
            let inc = if m > 1 { ranks[m - 2] } else { 0 };
            CohomologyRow {
                m,
                cochain_dim: c,
                rank: ranks[m - 1],
                dim: c - ranks[m - 1] - inc,
            }
        })
        .collect()
}

enum Node {
    Map(BlockMap),
    Compose(GradedElement, GradedElement),
    Linear(Vec<(Scalar, GradedElement)>),
}

/// Element of the graded Lie algebra `⊕_p Hom(⊗^p(∧^{n-1} L) ⊗ L, L)`.
/// Brackets are kept as expression trees and evaluated on demand; use
/// [`GradedElement::materialize`] to tabulate.
#[derive(Clone)]
pub struct GradedElement {
    n: usize,
    dim: usize,
    degree: usize,
    node: Arc<Node>,
}

impl std::fmt::Debug for GradedElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GradedElement(n={}, dim={}, degree={})", self.n, self.dim, self.degree)
    }
}

impl GradedElement {
    pub fn from_map(map: BlockMap) -> Result<Self> {
        if map.source().dim != map.target().dim {
            return Err(Error::Shape("graded elements are endomorphism cochains".into()));
        }
        Ok(GradedElement {
            n: map.n(),
            dim: map.source().dim,
            degree: map.blocks(),
            node: Arc::new(Node::Map(map)),
        })
    }

    pub fn zero(n: usize, dim: usize, degree: usize) -> Self {
        let s = Space::new(dim, "L");
        Self::from_map(BlockMap::zero(n, degree, s.clone(), s)).expect("endomorphism")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of blocks.
    pub fn degree(&self) -> usize {
        self.degree
    }

    fn same_space(&self, other: &GradedElement) -> Result<()> {
        if self.n != other.n || self.dim != other.dim {
            return Err(Error::SpaceMismatch(format!(
                "graded elements over (n={}, dim={}) and (n={}, dim={})",
                self.n, self.dim, other.n, other.dim
            )));
        }
        Ok(())
    }

    pub fn eval(&self, blocks: &[Vec<Vector>], tail: &Vector) -> Vector {
        debug_assert_eq!(blocks.len(), self.degree);
        match &*self.node {
            Node::Map(m) => m.eval_at(blocks, tail),
            Node::Linear(terms) => {
                let mut out = zero_vector(self.dim);
                for (c, e) in terms {
                    axpy(&mut out, c, &e.eval(blocks, tail));
                }
                out
            }
            Node::Compose(p, q) => compose_eval(p, q, blocks, tail),
        }
    }

    /// `P∘Q`.
    pub fn compose(&self, q: &GradedElement) -> Result<GradedElement> {
        self.same_space(q)?;
        Ok(GradedElement {
            n: self.n,
            dim: self.dim,
            degree: self.degree + q.degree,
            node: Arc::new(Node::Compose(self.clone(), q.clone())),
        })
    }

    pub fn linear_combination(terms: Vec<(Scalar, GradedElement)>) -> Result<GradedElement> {
        let first = terms
            .first()
            .ok_or_else(|| Error::Shape("empty linear combination".into()))?
            .1
            .clone();
        for (_, t) in &terms {
            first.same_space(t)?;
            if t.degree != first.degree {
                return Err(Error::Shape("terms of different degrees".into()));
            }
        }
        Ok(GradedElement {
            n: first.n,
            dim: first.dim,
            degree: first.degree,
            node: Arc::new(Node::Linear(terms)),
        })
    }

    pub fn add(&self, other: &GradedElement) -> Result<GradedElement> {
        Self::linear_combination(vec![(Scalar::one(), self.clone()), (Scalar::one(), other.clone())])
    }

    pub fn sub(&self, other: &GradedElement) -> Result<GradedElement> {
        Self::linear_combination(vec![(Scalar::one(), self.clone()), (-Scalar::one(), other.clone())])
    }

    pub fn scale(&self, c: &Scalar) -> GradedElement {
        Self::linear_combination(vec![(c.clone(), self.clone())]).expect("one term")
    }

    /// Tabulates the element on every basis key.
    pub fn materialize(&self) -> BlockMap {
        if let Node::Map(m) = &*self.node {
            return m.clone();
        }
        let s = Space::new(self.dim, "L");
        BlockMap::materialize(self.n, self.degree, s.clone(), s, self)
    }

    pub fn is_zero(&self) -> bool {
        self.materialize().is_zero()
    }
}

impl Evaluate<Vector> for GradedElement {
    fn eval_at(&self, blocks: &[Vec<Vector>], tail: &Vector) -> Vector {
        self.eval(blocks, tail)
    }
}

fn compose_eval(p: &GradedElement, q: &GradedElement, blocks: &[Vec<Vector>], tail: &Vector) -> Vector {
    let pd = p.degree;
    let qd = q.degree;
    let n = p.n;
    let mut out = zero_vector(p.dim);
    // insertions of Q into an argument of block k + q
    for k in 1..=pd {
        let base = sign_pow(((k - 1) * qd) as i64);
        let target = &blocks[k + qd - 1];
        for sh in shuffles(k - 1, qd) {
            let sign = if sh.sign > 0 { base.clone() } else { -base.clone() };
            let p_front: Vec<Vec<Vector>> = sh.permutation[..k - 1].iter().map(|&a| blocks[a].clone()).collect();
            let q_args: Vec<Vec<Vector>> = sh.permutation[k - 1..].iter().map(|&a| blocks[a].clone()).collect();
            for i in 0..n - 1 {
                let qv = q.eval(&q_args, &target[i]);
                if is_zero_vector(&qv) {
                    continue;
                }
                let mut modified = target.clone();
                modified[i] = qv;
                let mut args = p_front.clone();
                args.push(modified);
                args.extend(blocks[k + qd..].iter().cloned());
                axpy(&mut out, &sign, &p.eval(&args, tail));
            }
        }
    }
    // insertion of Q into the tail
    let base = sign_pow((pd * qd) as i64);
    for sh in shuffles(pd, qd) {
        let sign = if sh.sign > 0 { base.clone() } else { -base.clone() };
        let q_args: Vec<Vec<Vector>> = sh.permutation[pd..].iter().map(|&a| blocks[a].clone()).collect();
        let qv = q.eval(&q_args, tail);
        if is_zero_vector(&qv) {
            continue;
        }
        let p_args: Vec<Vec<Vector>> = sh.permutation[..pd].iter().map(|&a| blocks[a].clone()).collect();
        axpy(&mut out, &sign, &p.eval(&p_args, &qv));
    }
    out
}

/// `[P, Q] = P∘Q - (-1)^{pq} Q∘P`.
pub fn graded_bracket(p: &GradedElement, q: &GradedElement) -> Result<GradedElement> {
    let pq = p.compose(q)?;
    let qp = q.compose(p)?;
    let c = -sign_pow((p.degree * q.degree) as i64);
    GradedElement::linear_combination(vec![(Scalar::one(), pq), (c, qp)])
}

/// Whether `μ̂ + ρ̂` squares to zero under the graded bracket.
pub fn check_mc_pair(rep: &Representation) -> bool {
    let delta = GradedElement::from_map(rep.lifted_structure().map).expect("endomorphism");
    graded_bracket(&delta, &delta).expect("same space").is_zero()
}

/// `d_π f = [π, f]`, defined when `[π, π] = 0`.
pub fn twisted_differential(pi: &GradedElement, f: &GradedElement) -> Result<GradedElement> {
    if !graded_bracket(pi, pi)?.is_zero() {
        return Err(Error::Precondition("[pi, pi] is not zero".into()));
    }
    graded_bracket(pi, f)
}

/// Whether `[f, g]` has bidegree `(k_f + k_g)|(l_f + l_g)` (or vanishes).
pub fn check_bidegree_additivity(f: &SumSpaceMap, g: &SumSpaceMap) -> Result<bool> {
    if f.split != g.split {
        return Err(Error::SpaceMismatch("different splittings".into()));
    }
    if f.map.is_zero() || g.map.is_zero() {
        return Ok(true);
    }
    let bf = bidegree_of(f).ok_or_else(|| Error::Precondition("first map is not homogeneous".into()))?;
    let bg = bidegree_of(g).ok_or_else(|| Error::Precondition("second map is not homogeneous".into()))?;
    let ef = GradedElement::from_map(f.map.clone())?;
    let eg = GradedElement::from_map(g.map.clone())?;
    let br = SumSpaceMap::new(graded_bracket(&ef, &eg)?.materialize(), f.split)?;
    Ok(has_bidegree(&br, Bidegree { k: bf.k + bg.k, l: bf.l + bg.l }))
}
