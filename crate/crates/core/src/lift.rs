//! From an n-Lie algebra with a bracket-annihilating functional `f` to the
//! (n+1)-Lie algebra `g_f`, the companion representation `ϱ`, and the
//! chain maps `Φ` between the two cochain complexes.

use crate::cochain::coboundary;
use crate::error::{Error, Result};
use crate::kernel::{
    axpy, combinations, dot, is_zero_vector, kernel_basis, scale, sign_pow, sort_to_block, zero_vector, Matrix, Scalar,
    Vector, WedgeBasis,
};
use crate::multilinear::{BlockMap, KeyLayout, Space};
use crate::nlie::{NLieAlgebra, Representation};
use crate::report::CheckReport;
use crate::rota_baxter::{OperatorCochain, RBOperator};

/// A covector `f ∈ g*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceFunctional {
    f: Vector,
}

impl TraceFunctional {
    pub fn new(f: Vector) -> Self {
        TraceFunctional { f }
    }

    pub fn dim(&self) -> usize {
        self.f.len()
    }

    pub fn coefficients(&self) -> &[Scalar] {
        &self.f
    }

    pub fn apply(&self, x: &[Scalar]) -> Scalar {
        dot(&self.f, x)
    }

    /// `f ∘ T ∈ V*`.
    pub fn compose(&self, t: &Matrix) -> TraceFunctional {
        TraceFunctional::new(t.transpose().mul_vec(&self.f))
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.f)
    }
}

/// Checks `f([x_1, …, x_n]) = 0` on increasing basis tuples.
pub fn admissibility_report(a: &NLieAlgebra, f: &TraceFunctional) -> CheckReport {
    if f.dim() != a.dim() {
        return CheckReport::pass().and(CheckReport::fail(crate::report::Witness::new(
            "admissible",
            vec![],
            &vec![Scalar::from_integer(f.dim().into())],
            &vec![Scalar::from_integer(a.dim().into())],
        )));
    }
    for args in combinations(a.dim(), a.n()) {
        let v = f.apply(&a.bracket_basis(&args));
        if let Some(r) = CheckReport::compare("admissible", args, &vec![v], &zero_vector(1)) {
            return r;
        }
    }
    CheckReport::pass()
}

pub fn check_admissible(a: &NLieAlgebra, f: &TraceFunctional) -> bool {
    admissibility_report(a, f).holds
}

fn require_admissible(a: &NLieAlgebra, f: &TraceFunctional) -> Result<()> {
    let r = admissibility_report(a, f);
    if r.holds {
        return Ok(());
    }
    let args = r.witness.map(|w| w.args).unwrap_or_default();
    Err(Error::Precondition(format!(
        "functional does not annihilate the bracket at basis indices {:?}",
        args.iter().map(|i| i + 1).collect::<Vec<_>>()
    )))
}

/// `{x_1, …, x_{n+1}} = Σ (-1)^{i-1} f(x_i) [x_1, …, x̂_i, …, x_{n+1}]`.
pub fn build_gf(a: &NLieAlgebra, f: &TraceFunctional) -> Result<NLieAlgebra> {
    require_admissible(a, f)?;
    let n = a.n();
    let entries: Vec<(Vec<usize>, Vector)> = combinations(a.dim(), n + 1)
        .into_iter()
        .map(|s| {
            let mut v = zero_vector(a.dim());
            for i in 0..=n {
                let c = &f.coefficients()[s[i]];
                if num_traits::Zero::is_zero(c) {
                    continue;
                }
                let hat: Vec<usize> = s.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x).collect();
                axpy(&mut v, &(sign_pow(i as i64) * c), &a.bracket_basis(&hat));
            }
            (s, v)
        })
        .collect();
    NLieAlgebra::from_structure_constants(n + 1, a.dim(), &entries)
}

/// `ϱ(x_1, …, x_n) = Σ (-1)^{i-1} f(x_i) ρ(x_1, …, x̂_i, …, x_n)` over `g_f`.
pub fn build_varrho(r: &Representation, f: &TraceFunctional) -> Result<Representation> {
    let gf = build_gf(r.algebra(), f)?;
    let n = r.n();
    let vd = r.v_dim();
    let wedge = WedgeBasis::new(r.g_dim(), n);
    let action = wedge
        .subsets()
        .iter()
        .map(|blk| {
            let mut m = Matrix::zeros(vd, vd);
            for i in 0..n {
                let c = &f.coefficients()[blk[i]];
                if num_traits::Zero::is_zero(c) {
                    continue;
                }
                let hat: Vec<usize> = blk.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x).collect();
                m = m.add(&r.rho_basis(&hat).scale(&(sign_pow(i as i64) * c)));
            }
            m
        })
        .collect();
    Representation::new(gf, vd, action)
}

/// The same matrix `T`, now over `(g_f; ϱ)`.
pub fn lift_rb(t: &RBOperator, f: &TraceFunctional) -> Result<RBOperator> {
    RBOperator::new(build_varrho(t.rep(), f)?, t.matrix().clone())
}

/// Whether `P` is antisymmetric in its last block together with the tail.
/// Only then is the second summand of `P̃`, which feeds a whole n-block
/// into the last `n` slots of `P`, antisymmetric in that block.
pub fn is_liftable(p: &BlockMap) -> bool {
    let n = p.n();
    let m = p.blocks();
    if m == 0 {
        return true;
    }
    let layout = p.layout();
    (0..layout.key_count()).all(|key| {
        let (bs, tail) = layout.key_indices(key);
        let mut last = bs[m - 1].clone();
        last.push(tail);
        match sort_to_block(&last) {
            None => is_zero_vector(&p.value(&bs, tail)),
            Some((b, sign)) => {
                let mut moved = bs.clone();
                moved[m - 1] = b.indices()[..n - 1].to_vec();
                let v = p.value(&moved, b.indices()[n - 1]);
                scale(&Scalar::from_integer(sign.into()), &v) == p.value(&bs, tail)
            }
        }
    })
}

/// `P̃` for a cochain with `m ≥ 1` blocks, weighting by `f` on the
/// source; cochains without blocks pass through with arity `n+1`.
fn lift_map(p: &BlockMap, f: &TraceFunctional) -> Result<BlockMap> {
    if f.dim() != p.source().dim {
        return Err(Error::Shape(format!("functional has length {}, source has dimension {}", f.dim(), p.source().dim)));
    }
    let n = p.n();
    let m = p.blocks();
    if m == 0 {
        return Ok(BlockMap::from_matrix(n + 1, p.source().clone(), p.target().clone(), &p.to_matrix()));
    }
    if !is_liftable(p) {
        return Err(Error::Precondition(
            "cochain is not antisymmetric in its last block and final argument; its lift is not a cochain".into(),
        ));
    }
    let fc = f.coefficients();
    let td = p.target().dim;
    let drop = |b: &[usize], i: usize| -> Vec<usize> { b.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x).collect() };
    Ok(BlockMap::from_fn(n + 1, m, p.source().clone(), p.target().clone(), |bs, tail| {
        let mut out = zero_vector(td);
        // choices[j] is the slot removed from block j
        let total = n.pow(m as u32);
        for code in 0..total {
            let mut choices = Vec::with_capacity(m);
            let mut c = code;
            for _ in 0..m {
                choices.push(c % n);
                c /= n;
            }
            let mut w: Scalar = (0..m).map(|j| fc[bs[j][choices[j]]].clone()).product();
            if !num_traits::Zero::is_zero(&w) {
                let parity: usize = choices.iter().sum();
                w *= sign_pow(parity as i64);
                let reduced: Vec<Vec<usize>> = (0..m).map(|j| drop(&bs[j], choices[j])).collect();
                axpy(&mut out, &w, &p.value(&reduced, tail));
            }
            // second group: only the first m-1 blocks lose a slot, the tail
            // carries the weight and the last block fills P's last slots
            if choices[m - 1] == 0 {
                let mut w: Scalar = (0..m - 1).map(|j| fc[bs[j][choices[j]]].clone()).product();
                w *= &fc[tail];
                if num_traits::Zero::is_zero(&w) {
                    continue;
                }
                let parity: usize = choices[..m - 1].iter().sum::<usize>() + n;
                w *= sign_pow(parity as i64);
                let mut reduced: Vec<Vec<usize>> = (0..m - 1).map(|j| drop(&bs[j], choices[j])).collect();
                let last = &bs[m - 1];
                reduced.push(last[..n - 1].to_vec());
                axpy(&mut out, &w, &p.value(&reduced, last[n - 1]));
            }
        }
        out
    }))
}

/// `Φ` on cochains of the pair: `P ↦ P̃` for degree `≥ 2`, identity (with
/// arity `n+1`) in degree 1. Degree `≥ 2` requires [`is_liftable`]; such
/// cochains form a subcomplex.
pub fn lift_cochain(p: &BlockMap, f: &TraceFunctional) -> Result<BlockMap> {
    lift_map(p, f)
}

/// Whether `∂̃_ϱ Φ(P) = Φ(∂_ρ P)`.
pub fn check_pair_chain_map(r: &Representation, f: &TraceFunctional, p: &BlockMap) -> Result<bool> {
    let varrho = build_varrho(r, f)?;
    let lhs = coboundary(&varrho, &lift_cochain(p, f)?)?;
    let rhs = lift_cochain(&coboundary(r, p)?, f)?;
    Ok(lhs == rhs)
}

/// Basis of the center of `g ⋉_ρ V`, as vectors in `g ⊕ V`.
pub fn find_center(r: &Representation) -> Vec<Vector> {
    let s = r.semidirect_product();
    let d = s.dim();
    let blocks = combinations(d, s.n() - 1);
    if blocks.is_empty() {
        return (0..d).map(|i| crate::kernel::basis_vector(d, i)).collect();
    }
    let stacked = blocks.iter().map(|b| s.ad_basis(b)).fold(Matrix::zeros(0, d), |acc, m| acc.stack(&m));
    kernel_basis(&stacked)
}

/// Whether every semidirect bracket containing `x0` vanishes.
pub fn is_central(r: &Representation, x0: &[Scalar]) -> bool {
    let s = r.semidirect_product();
    if x0.len() != s.dim() {
        return false;
    }
    combinations(s.dim(), s.n() - 1).iter().all(|b| is_zero_vector(&s.ad_basis(b).mul_vec(x0)))
}

/// Rescales a central element so that `(-1)^{n-1} f(a) = 1`, `a` its
/// `g`-component; `None` if `f(a) = 0`.
pub fn normalize_center(x0: &[Scalar], f: &TraceFunctional, n: usize) -> Option<Vector> {
    let fa = f.apply(&x0[..f.dim()]);
    if num_traits::Zero::is_zero(&fa) {
        return None;
    }
    Some(scale(&(sign_pow((n - 1) as i64) / fa), x0))
}

/// `𝔛 ↦ 𝔛 ∧ a` from `∧^{n-1} g` to `∧^n g`.
fn wedge_with(x: &[Scalar], a: &[Scalar], n: usize) -> Vector {
    let gd = a.len();
    let src = WedgeBasis::new(gd, n - 1);
    let dst = WedgeBasis::new(gd, n);
    let mut out = zero_vector(dst.len());
    for (k, c) in x.iter().enumerate() {
        if num_traits::Zero::is_zero(c) {
            continue;
        }
        for (r, ar) in a.iter().enumerate() {
            if num_traits::Zero::is_zero(ar) {
                continue;
            }
            let mut idx = src.subset(k).to_vec();
            idx.push(r);
            if let Some((blk, sign)) = sort_to_block(&idx) {
                out[dst.rank(blk.indices())] += c * ar * Scalar::from_integer(sign.into());
            }
        }
    }
    out
}

/// `Φ` on the operator complex: `𝔛 ↦ 𝔛 ∧ x₀` in degree 0 (through the
/// `g`-component of `x₀`), identity in degree 1, `P̃` weighted by `f∘T`
/// over `(V, [-]_T)` in degree `≥ 2`.
pub fn lift_rb_cochain(p: &OperatorCochain, t: &RBOperator, f: &TraceFunctional, x0: &[Scalar]) -> Result<OperatorCochain> {
    require_admissible(t.rep().algebra(), f)?;
    let gd = t.rep().g_dim();
    if !is_central(t.rep(), x0) {
        return Err(Error::Precondition("x0 is not central in the semidirect product".into()));
    }
    match p {
        OperatorCochain::Wedge(x) => {
            if x.len() != t.rep().wedge().len() {
                return Err(Error::Shape(format!("expected {} wedge coefficients, got {}", t.rep().wedge().len(), x.len())));
            }
            Ok(OperatorCochain::Wedge(wedge_with(x, &x0[..gd], t.n())))
        }
        OperatorCochain::Map(m) => {
            if m.source().dim != t.rep().v_dim() || m.target().dim != gd || m.n() != t.n() {
                return Err(Error::Shape("operator cochain does not match (V, g)".into()));
            }
            Ok(OperatorCochain::Map(lift_map(m, &f.compose(t.matrix()))?))
        }
    }
}

/// Whether `d̃ Φ(P) = Φ(d P)` on the operator complexes.
pub fn check_operator_chain_map(t: &RBOperator, f: &TraceFunctional, x0: &[Scalar], p: &OperatorCochain) -> Result<bool> {
    let lifted = lift_rb(t, f)?;
    let lhs = lifted.coboundary(&lift_rb_cochain(p, t, f, x0)?)?;
    let rhs = lift_rb_cochain(&t.coboundary(p)?, t, f, x0)?;
    Ok(lhs == rhs)
}

/// Basis of the liftable cochains with `blocks` blocks: matrix units when
/// `blocks = 0`, otherwise one map per front key, n-subset and target
/// component.
pub fn liftable_basis(n: usize, blocks: usize, source: &Space, target: &Space) -> Vec<BlockMap> {
    let (d, td) = (source.dim, target.dim);
    if blocks == 0 {
        return (0..d * td)
            .map(|k| BlockMap::from_coordinates(n, 0, source.clone(), target.clone(), &crate::kernel::basis_vector(d * td, k)))
            .collect();
    }
    let front = KeyLayout::new(n, blocks - 1, d);
    let fronts = if d == 0 { 0 } else { front.key_count() / d };
    let fw = WedgeBasis::new(d, n - 1);
    let top = WedgeBasis::new(d, n);
    let mut out = Vec::new();
    for fk in 0..fronts {
        for s in top.subsets() {
            for c in 0..td {
                out.push(BlockMap::from_fn(n, blocks, source.clone(), target.clone(), |bs, tail| {
                    let ranks: Vec<usize> = bs[..blocks - 1].iter().map(|x| fw.rank(x)).collect();
                    let mut last = bs[blocks - 1].clone();
                    last.push(tail);
                    match sort_to_block(&last) {
                        Some((b, sign)) if b.indices() == &s[..] && front.encode(&ranks, 0) == fk * d => {
                            scale(&Scalar::from_integer(sign.into()), &crate::kernel::basis_vector(td, c))
                        }
                        _ => zero_vector(td),
                    }
                }));
            }
        }
    }
    out
}

fn chain_map_witness(id: String, k: usize, lhs: &BlockMap, rhs: &BlockMap) -> CheckReport {
    CheckReport::fail(crate::report::Witness::new(id, vec![k], &lhs.coordinates(), &rhs.coordinates()))
}

/// Checks `∂̃_ϱ Φ = Φ ∂_ρ` on a basis of liftable cochains of degrees
/// `1..=max_degree`.
pub fn verify_pair_chain_map(r: &Representation, f: &TraceFunctional, max_degree: usize) -> Result<CheckReport> {
    let varrho = build_varrho(r, f)?;
    let (g, v) = (r.algebra().space().clone(), r.module().clone());
    for degree in 1..=max_degree {
        for (k, p) in liftable_basis(r.n(), degree - 1, &g, &v).iter().enumerate() {
            let lhs = coboundary(&varrho, &lift_cochain(p, f)?)?;
            let rhs = lift_cochain(&coboundary(r, p)?, f)?;
            if lhs != rhs {
                return Ok(chain_map_witness(format!("pair-chain-map-{degree}"), k, &lhs, &rhs));
            }
        }
    }
    Ok(CheckReport::pass())
}

/// Checks `d̃ Φ = Φ d` on the operator complexes: degree 0 on the wedge
/// basis when `x0` is given, degrees `1..=max_degree` on liftable bases.
pub fn verify_operator_chain_map(
    t: &RBOperator,
    f: &TraceFunctional,
    x0: Option<&[Scalar]>,
    max_degree: usize,
) -> Result<CheckReport> {
    let lifted = lift_rb(t, f)?;
    let w = t.rep().wedge().len();
    let zero = zero_vector(t.rep().g_dim() + t.rep().v_dim());
    let mut cochains: Vec<(usize, OperatorCochain)> = Vec::new();
    if x0.is_some() {
        cochains.extend((0..w).map(|k| (0, OperatorCochain::Wedge(crate::kernel::basis_vector(w, k)))));
    }
    let x0 = x0.unwrap_or(&zero);
    let (vs, gs) = (Space::new(t.rep().v_dim(), "V"), Space::new(t.rep().g_dim(), "g"));
    for degree in 1..=max_degree {
        cochains.extend(liftable_basis(t.n(), degree - 1, &vs, &gs).into_iter().map(|p| (degree, OperatorCochain::Map(p))));
    }
    for (k, (degree, p)) in cochains.iter().enumerate() {
        let lhs = lifted.coboundary(&lift_rb_cochain(p, t, f, x0)?)?;
        let rhs = lift_rb_cochain(&t.coboundary(p)?, t, f, x0)?;
        if lhs != rhs {
            let (OperatorCochain::Map(a), OperatorCochain::Map(b)) = (&lhs, &rhs) else {
                unreachable!("coboundaries are maps")
            };
            return Ok(chain_map_witness(format!("operator-chain-map-{degree}"), k, a, b));
        }
    }
    Ok(CheckReport::pass())
}
