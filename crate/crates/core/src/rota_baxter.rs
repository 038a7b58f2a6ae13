//! Relative Rota-Baxter operators `T: V → g`, the derived n-bracket on
//! `Hom(⊗^m(∧^{n-1} V) ⊗ V, g)`, and the cochain complex of `T`.

use num_traits::One;

use crate::cochain::{coboundary, coboundary_matrix, graded_bracket, GradedElement};
use crate::error::{Error, Result};
use crate::kernel::{
    axpy, basis_vector, combinations, factorial, rank, sign_pow, zero_vector, Matrix, Scalar,
    Vector, WedgeBasis,
};
use crate::multilinear::{lift_to_sum, BlockMap, Evaluate, KeyLayout, LiftSource, Space};
use crate::nlie::{NLieAlgebra, NPreLie, Representation};
use crate::report::CheckReport;

/// `[Tv_1, …, Tv_n] - Σ (-1)^{n-i} T ρ(Tv_1, …, T̂v_i, …, Tv_n) v_i`.
fn rb_defect(rep: &Representation, t: &Matrix, vs: &[Vector]) -> Vector {
    let n = rep.n();
    let tv: Vec<Vector> = vs.iter().map(|v| t.mul_vec(v)).collect();
    let mut out = rep.algebra().bracket(&tv);
    for i in 0..n {
        let hat: Vec<Vector> = tv.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, v)| v.clone()).collect();
        let term = t.mul_vec(&rep.rho(&hat).mul_vec(&vs[i]));
        axpy(&mut out, &-sign_pow((n - 1 - i) as i64), &term);
    }
    out
}

/// Checks the Rota-Baxter identity on all increasing basis n-tuples of `V`.
pub fn check_rb(rep: &Representation, t: &Matrix) -> CheckReport {
    let n = rep.n();
    let vd = rep.v_dim();
    for u in combinations(vd, n) {
        let vs: Vec<Vector> = u.iter().map(|&i| basis_vector(vd, i)).collect();
        let tv: Vec<Vector> = vs.iter().map(|v| t.mul_vec(v)).collect();
        let lhs = rep.algebra().bracket(&tv);
        let defect = rb_defect(rep, t, &vs);
        let mut rhs = lhs.clone();
        axpy(&mut rhs, &-Scalar::one(), &defect);
        if let Some(r) = CheckReport::compare("rota-baxter", u, &lhs, &rhs) {
            return r;
        }
    }
    CheckReport::pass()
}

/// A linear map `T: V → g` (matrix `dim g × dim V`) over an n-LieRep pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RBOperator {
    rep: Representation,
    t: Matrix,
}

impl RBOperator {
    pub fn new(rep: Representation, t: Matrix) -> Result<Self> {
        if t.rows() != rep.g_dim() || t.cols() != rep.v_dim() {
            return Err(Error::Shape(format!(
                "operator must be {}x{}, got {}x{}",
                rep.g_dim(),
                rep.v_dim(),
                t.rows(),
                t.cols()
            )));
        }
        Ok(RBOperator { rep, t })
    }

    pub fn rep(&self) -> &Representation {
        &self.rep
    }

    pub fn matrix(&self) -> &Matrix {
        &self.t
    }

    pub fn n(&self) -> usize {
        self.rep.n()
    }

    pub fn check(&self) -> CheckReport {
        check_rb(&self.rep, &self.t)
    }

    /// `T` as an element of degree 0 in `Hom(⊗^m(∧^{n-1} V) ⊗ V, g)`.
    pub fn as_cochain(&self) -> BlockMap {
        operator_cochain_of(&self.rep, &self.t)
    }

    /// `[u]_T = Σ (-1)^{n-i} ρ(Tu_1, …, T̂u_i, …, Tu_n) u_i` on `V`.
    pub fn induced_bracket(&self) -> NLieAlgebra {
        let n = self.n();
        let vd = self.rep.v_dim();
        let entries: Vec<(Vec<usize>, Vector)> = combinations(vd, n)
            .into_iter()
            .map(|u| {
                let tu: Vec<Vector> = u.iter().map(|&i| self.t.column(i)).collect();
                let mut v = zero_vector(vd);
                for i in 0..n {
                    let hat: Vec<Vector> = tu.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, x)| x.clone()).collect();
                    axpy(&mut v, &sign_pow((n - 1 - i) as i64), &self.rep.rho(&hat).column(u[i]));
                }
                (u, v)
            })
            .collect();
        let mut a = NLieAlgebra::from_structure_constants(n, vd, &entries).expect("sorted entries");
        if vd == 0 {
            a = NLieAlgebra::zero(n, 0);
        }
        a
    }

    /// `{u_1, …, u_n}_T = ρ(Tu_1, …, Tu_{n-1}) u_n`.
    pub fn pre_lie(&self) -> NPreLie {
        let n = self.n();
        let vd = self.rep.v_dim();
        let s = Space::new(vd, "V");
        let product = BlockMap::from_fn(n, 1, s.clone(), s, |bs, tail| {
            let tu: Vec<Vector> = bs[0].iter().map(|&i| self.t.column(i)).collect();
            self.rep.rho(&tu).column(tail)
        });
        NPreLie::new(product).expect("one-block map")
    }

    /// Representation of `(V, [-]_T)` on `g`:
    /// `ρ_T(u)x = [Tu_1, …, Tu_{n-1}, x] - Σ_{i<n} (-1)^{n-i} T ρ(Tu_1, …, T̂u_i, …, Tu_{n-1}, x) u_i`.
    pub fn rho_t(&self) -> Representation {
        let n = self.n();
        let gd = self.rep.g_dim();
        let vd = self.rep.v_dim();
        let wedge = WedgeBasis::new(vd, n - 1);
        let alg = self.rep.algebra();
        let action: Vec<Matrix> = wedge
            .subsets()
            .iter()
            .map(|u| {
                let tu: Vec<Vector> = u.iter().map(|&i| self.t.column(i)).collect();
                let cols: Vec<Vector> = (0..gd)
                    .map(|x| {
                        let ex = basis_vector(gd, x);
                        let mut args = tu.clone();
                        args.push(ex.clone());
                        let mut v = alg.bracket(&args);
                        for i in 0..n - 1 {
                            let mut hat: Vec<Vector> = tu.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, y)| y.clone()).collect();
                            hat.push(ex.clone());
                            let term = self.t.mul_vec(&self.rep.rho(&hat).column(u[i]));
                            axpy(&mut v, &-sign_pow((n - 1 - i) as i64), &term);
                        }
                        v
                    })
                    .collect();
                Matrix::from_columns(&cols, gd)
            })
            .collect();
        Representation::new(self.induced_bracket(), gd, action).expect("shapes agree")
    }

    /// `δ_T(X) v = T ρ(X) v - [X, Tv]`, with `X` given by coefficients over
    /// the sorted `(n-1)`-blocks of `g`.
    pub fn delta(&self, x: &[Scalar]) -> Result<BlockMap> {
        let wedge = self.rep.wedge();
        if x.len() != wedge.len() {
            return Err(Error::Shape(format!("expected {} wedge coefficients, got {}", wedge.len(), x.len())));
        }
        let gd = self.rep.g_dim();
        let vd = self.rep.v_dim();
        let mut m = Matrix::zeros(gd, vd);
        for (k, c) in x.iter().enumerate() {
            if num_traits::Zero::is_zero(c) {
                continue;
            }
            let blk = wedge.subset(k);
            let term = self.t.mul(&self.rep.action()[k]).sub(&self.rep.algebra().ad_basis(blk).mul(&self.t));
            m = m.add(&term.scale(c));
        }
        Ok(BlockMap::from_matrix(self.n(), Space::new(vd, "V"), Space::new(gd, "g"), &m))
    }

    /// `d` on the operator complex.
    pub fn coboundary(&self, f: &OperatorCochain) -> Result<OperatorCochain> {
        match f {
            OperatorCochain::Wedge(x) => Ok(OperatorCochain::Map(self.delta(x)?)),
            OperatorCochain::Map(m) => {
                if m.source().dim != self.rep.v_dim() || m.target().dim != self.rep.g_dim() || m.n() != self.n() {
                    return Err(Error::Shape("operator cochain does not match (V, g)".into()));
                }
                let rho_t = self.rho_t();
                let out = coboundary(&rho_t, &m.relabel(Space::new(m.source().dim, "g"), Space::new(m.target().dim, "V")))?;
                Ok(OperatorCochain::Map(out.relabel(Space::new(self.rep.v_dim(), "V"), Space::new(self.rep.g_dim(), "g"))))
            }
        }
    }

    /// Dimension of `C^m_T`.
    pub fn cochain_dim(&self, m: usize) -> usize {
        if m == 0 {
            self.rep.wedge().len()
        } else {
            KeyLayout::new(self.n(), m - 1, self.rep.v_dim()).key_count() * self.rep.g_dim()
        }
    }

    /// Matrix of `d: C^m_T → C^{m+1}_T` in canonical coordinates.
    pub fn coboundary_matrix(&self, m: usize) -> Matrix {
        if m == 0 {
            let w = self.rep.wedge().len();
            let cols: Vec<Vector> = (0..w)
                .map(|k| self.delta(&basis_vector(w, k)).expect("shape").coordinates())
                .collect();
            Matrix::from_columns(&cols, self.cochain_dim(1))
        } else {
            coboundary_matrix(&self.rho_t(), m)
        }
    }

    /// `dim H^m` with `B^0 = 0`.
    pub fn cohomology_dim(&self, m: usize) -> usize {
        let c = self.cochain_dim(m);
        let out = rank(&self.coboundary_matrix(m));
        let inc = if m > 0 { rank(&self.coboundary_matrix(m - 1)) } else { 0 };
        c - out - inc
    }

    /// Rows for degrees `0..=max_m`; `rank` is the rank of `d` leaving each degree.
    pub fn cohomology_table(&self, max_m: usize) -> Vec<crate::cochain::CohomologyRow> {
        let ranks: Vec<usize> = (0..=max_m).map(|m| rank(&self.coboundary_matrix(m))).collect();
        (0..=max_m)
            .map(|m| {
                let c = self.cochain_dim(m);
                let inc = if m > 0 { ranks[m - 1] } else { 0 };
                crate::cochain::CohomologyRow {
                    m,
                    cochain_dim: c,
                    rank: ranks[m],
                    dim: c - ranks[m] - inc,
                }
            })
            .collect()
    }
}

fn operator_cochain_of(rep: &Representation, t: &Matrix) -> BlockMap {
    BlockMap::from_matrix(rep.n(), Space::new(rep.v_dim(), "V"), Space::new(rep.g_dim(), "g"), t)
}

/// Cochain of the operator complex: `∧^{n-1} g` in degree 0, maps
/// `⊗^{m-1}(∧^{n-1} V) ⊗ V → g` in degree `m ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OperatorCochain {
    Wedge(Vector),
    Map(BlockMap),
}

impl OperatorCochain {
    pub fn degree(&self) -> usize {
        match self {
            OperatorCochain::Wedge(_) => 0,
            OperatorCochain::Map(m) => m.degree(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            OperatorCochain::Wedge(x) => crate::kernel::is_zero_vector(x),
            OperatorCochain::Map(m) => m.is_zero(),
        }
    }

    pub fn as_map(&self) -> Option<&BlockMap> {
        match self {
            OperatorCochain::Map(m) => Some(m),
            OperatorCochain::Wedge(_) => None,
        }
    }
}

/// The pair together with `Δ = μ̂ + ρ̂`, the data for derived brackets.
#[derive(Clone, Debug)]
pub struct DerivedBracketContext {
    rep: Representation,
    delta: GradedElement,
}

impl DerivedBracketContext {
    /// Fails unless `[Δ, Δ] = 0`.
    pub fn new(rep: &Representation) -> Result<Self> {
        let ctx = Self::new_unchecked(rep);
        if !graded_bracket(&ctx.delta, &ctx.delta)?.is_zero() {
            return Err(Error::Precondition("the pair is not a Maurer-Cartan element".into()));
        }
        Ok(ctx)
    }

    pub fn new_unchecked(rep: &Representation) -> Self {
        let delta = GradedElement::from_map(rep.lifted_structure().map).expect("endomorphism");
        DerivedBracketContext {
            rep: rep.clone(),
            delta,
        }
    }

    pub fn rep(&self) -> &Representation {
        &self.rep
    }

    fn lift(&self, p: &BlockMap) -> Result<GradedElement> {
        if p.source().dim != self.rep.v_dim() || p.target().dim != self.rep.g_dim() || p.n() != self.rep.n() {
            return Err(Error::SpaceMismatch("cochain is not over (V, g) of this pair".into()));
        }
        GradedElement::from_map(lift_to_sum(LiftSource::Operator { p })?.map)
    }

    /// `{P_1, …, P_k}` partial bracket `[[[Δ, P_1], P_2], …, P_k]` as a
    /// lazy element on `g ⊕ V`.
    fn nested(&self, ps: &[BlockMap]) -> Result<GradedElement> {
        let mut acc = self.delta.clone();
        for p in ps {
            acc = graded_bracket(&acc, &self.lift(p)?)?;
        }
        Ok(acc)
    }

    /// Evaluates an element on all-`V` keys and projects to `g`.
    fn project(&self, e: &GradedElement) -> BlockMap {
        let gd = self.rep.g_dim();
        let vd = self.rep.v_dim();
        let d = gd + vd;
        let lift_vec = |i: usize| basis_vector(d, gd + i);
        BlockMap::from_fn(self.rep.n(), e.degree(), Space::new(vd, "V"), Space::new(gd, "g"), |bs, tail| {
            let blocks: Vec<Vec<Vector>> = bs.iter().map(|b| b.iter().map(|&i| lift_vec(i)).collect()).collect();
            e.eval_at(&blocks, &lift_vec(tail))[..gd].to_vec()
        })
    }

    /// `{P_1, …, P_n} = [[[Δ, P_1], P_2], …, P_n]` restricted to `V` and
    /// projected to `g`.
    pub fn derived_bracket(&self, ps: &[BlockMap]) -> Result<BlockMap> {
        if ps.len() != self.rep.n() {
            return Err(Error::Arity(format!("derived bracket takes {} arguments, got {}", self.rep.n(), ps.len())));
        }
        Ok(self.project(&self.nested(ps)?))
    }

    /// Whether `{T, …, T} = 0`.
    pub fn check_rb_mc(&self, t: &Matrix) -> bool {
        let tc = operator_cochain_of(&self.rep, t);
        let ts = vec![tc; self.rep.n()];
        self.derived_bracket(&ts).expect("shapes agree").is_zero()
    }

    /// `l^T_k(P_1, …, P_k) = 1/(n-k)! {T, …, T, P_1, …, P_k}`; zero for `k > n`.
    pub fn twisted_lk(&self, t: &Matrix, ps: &[BlockMap]) -> Result<BlockMap> {
        let n = self.rep.n();
        let k = ps.len();
        let degree: usize = ps.iter().map(|p| p.blocks()).sum::<usize>() + 1;
        if k > n {
            return Ok(BlockMap::zero(n, degree, Space::new(self.rep.v_dim(), "V"), Space::new(self.rep.g_dim(), "g")));
        }
        let tc = operator_cochain_of(&self.rep, t);
        let mut args = vec![tc; n - k];
        args.extend(ps.iter().cloned());
        let b = self.derived_bracket(&args)?;
        Ok(b.scale(&(Scalar::one() / factorial(n - k))))
    }

    /// `Σ_{k=1}^{n} 1/k! l^T_k(T', …, T')`.
    pub fn twisted_mc(&self, t: &Matrix, t_prime: &Matrix) -> Result<BlockMap> {
        let n = self.rep.n();
        let tp = operator_cochain_of(&self.rep, t_prime);
        let mut acc = BlockMap::zero(n, 1, Space::new(self.rep.v_dim(), "V"), Space::new(self.rep.g_dim(), "g"));
        for k in 1..=n {
            let term = self.twisted_lk(t, &vec![tp.clone(); k])?;
            acc = acc.combine(&term, &(Scalar::one() / factorial(k)))?;
        }
        Ok(acc)
    }
}

/// `n! ([Tv_1, …, Tv_n] - Σ (-1)^{n-i} T ρ(…) v_i)` as a one-block map on `V`.
pub fn rb_defect_scaled(rep: &Representation, t: &Matrix) -> BlockMap {
    let n = rep.n();
    let vd = rep.v_dim();
    let nf = factorial(n);
    BlockMap::from_fn(n, 1, Space::new(vd, "V"), Space::new(rep.g_dim(), "g"), |bs, tail| {
        let mut vs: Vec<Vector> = bs[0].iter().map(|&i| basis_vector(vd, i)).collect();
        vs.push(basis_vector(vd, tail));
        rb_defect(rep, t, &vs).iter().map(|x| x * &nf).collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::int;

    fn nilpotent() -> NLieAlgebra {
        NLieAlgebra::from_structure_constants(3, 4, &[(vec![0, 1, 2], basis_vector(4, 3))]).unwrap()
    }

    fn heisenberg() -> NLieAlgebra {
        // [x, y] = z
        NLieAlgebra::from_structure_constants(2, 3, &[(vec![0, 1], basis_vector(3, 2))]).unwrap()
    }

    #[test]
    fn zero_operator_is_rota_baxter() {
        let ad = Representation::adjoint(&nilpotent());
        assert!(check_rb(&ad, &Matrix::zeros(4, 4)).holds);
        let ctx = DerivedBracketContext::new(&ad).unwrap();
        assert!(ctx.check_rb_mc(&Matrix::zeros(4, 4)));
    }

    #[test]
    fn identity_on_left_multiplication() {
        // pre-Lie algebra e1·e1 = e2 on a 2-dimensional space
        let s = Space::new(2, "g");
        let mut p = BlockMap::zero(2, 1, s.clone(), s);
        p.set(&[&[0]], 0, basis_vector(2, 1)).unwrap();
        let l = NPreLie::new(p).unwrap().left_mult_rep();
        assert!(check_rb(&l, &Matrix::identity(2)).holds);
    }

    #[test]
    fn tt_bracket_is_n_factorial_defect() {
        let ad = Representation::adjoint(&heisenberg());
        let ctx = DerivedBracketContext::new(&ad).unwrap();
        for t in [Matrix::identity(3), Matrix::from_i64(3, 3, &[1, 2, 0, 0, 1, 0, 1, 0, 3])] {
            let tc = operator_cochain_of(&ad, &t);
            let tt = ctx.derived_bracket(&[tc.clone(), tc]).unwrap();
            assert_eq!(tt, rb_defect_scaled(&ad, &t));
        }
    }

    #[test]
    fn derived_bracket_with_zero_argument() {
        let ad = Representation::adjoint(&heisenberg());
        let ctx = DerivedBracketContext::new(&ad).unwrap();
        let z = operator_cochain_of(&ad, &Matrix::zeros(3, 3));
        let t = operator_cochain_of(&ad, &Matrix::identity(3));
        assert!(ctx.derived_bracket(&[t, z]).unwrap().is_zero());
    }

    #[test]
    fn lk_vanishes_above_n() {
        let ad = Representation::adjoint(&heisenberg());
        let ctx = DerivedBracketContext::new(&ad).unwrap();
        let t = operator_cochain_of(&ad, &Matrix::identity(3));
        assert!(ctx.twisted_lk(&Matrix::identity(3), &[t.clone(), t.clone(), t]).unwrap().is_zero());
    }

    #[test]
    fn induced_structures_of_zero_operator() {
        let ad = Representation::adjoint(&nilpotent());
        let t = RBOperator::new(ad, Matrix::zeros(4, 4)).unwrap();
        assert!(t.induced_bracket().is_abelian());
        assert!(t.pre_lie().product_map().is_zero());
    }

    #[test]
    fn zero_instance_cohomology() {
        let rep = Representation::zero(NLieAlgebra::zero(3, 3), 2);
        let t = RBOperator::new(rep, Matrix::zeros(3, 2)).unwrap();
        let dims: Vec<usize> = (0..4).map(|m| t.cohomology_dim(m)).collect();
        assert_eq!(dims, vec![3, 6, 6, 6]);
    }

    #[test]
    fn delta_of_zero_is_zero() {
        let ad = Representation::adjoint(&nilpotent());
        let t = RBOperator::new(ad, Matrix::identity(4)).unwrap();
        assert!(t.delta(&zero_vector(6)).unwrap().is_zero());
        assert!(t.delta(&[int(1), int(0), int(0), int(0), int(0), int(0)]).is_ok());
    }
}
