//! Truncated deformations `T_t = Σ_{i≤m} 𝔗_i t^i` of a relative
//! Rota-Baxter operator, their equivalence, and the obstruction to
//! extending them by one order.

use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::{axpy, basis_vector, combinations, compositions, factorial, sign_pow, solve_linear, zero_vector, Matrix, Scalar, Vector};
use crate::multilinear::{BlockMap, Space};
use crate::report::Witness;
use crate::rota_baxter::{DerivedBracketContext, OperatorCochain, RBOperator};

/// Operator `T = 𝔗_0` with higher coefficients `𝔗_1, …, 𝔗_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformationJet {
    base: RBOperator,
    coeffs: Vec<Matrix>,
}

/// Result of checking a jet order by order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JetReport {
    pub holds: bool,
    /// Lowest order whose coefficient equation fails.
    pub failed_order: Option<usize>,
    pub witness: Option<Witness>,
}

impl DeformationJet {
    pub fn new(base: RBOperator, coeffs: Vec<Matrix>) -> Result<Self> {
        let (gd, vd) = (base.rep().g_dim(), base.rep().v_dim());
        for (i, c) in coeffs.iter().enumerate() {
            if c.rows() != gd || c.cols() != vd {
                return Err(Error::Shape(format!(
                    "coefficient {} must be {gd}x{vd}, got {}x{}",
                    i + 1,
                    c.rows(),
                    c.cols()
                )));
            }
        }
        Ok(DeformationJet { base, coeffs })
    }

    /// The jet `T + 0·t + … + 0·t^m`.
    pub fn constant(base: RBOperator, m: usize) -> Self {
        let z = Matrix::zeros(base.rep().g_dim(), base.rep().v_dim());
        DeformationJet {
            base,
            coeffs: vec![z; m],
        }
    }

    pub fn base(&self) -> &RBOperator {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// `𝔗_1, …, 𝔗_m`.
    pub fn coefficients(&self) -> &[Matrix] {
        &self.coeffs
    }

    /// `𝔗_i`, with `𝔗_0 = T`.
    pub fn coefficient(&self, i: usize) -> &Matrix {
        if i == 0 {
            self.base.matrix()
        } else {
            &self.coeffs[i - 1]
        }
    }

    /// Both sides of the `t^s` coefficient equation at `us`, summed over
    /// index vectors with entries at most `max_index`.
    fn sides(&self, s: usize, max_index: usize, us: &[Vector]) -> (Vector, Vector) {
        let rep = self.base.rep();
        let n = rep.n();
        let gd = rep.g_dim();
        let mut lhs = zero_vector(gd);
        let mut rhs = zero_vector(gd);
        for idx in compositions(s, n, max_index) {
            let tu: Vec<Vector> = (0..n).map(|j| self.coefficient(idx[j]).mul_vec(&us[j])).collect();
            axpy(&mut lhs, &Scalar::one(), &rep.algebra().bracket(&tu));
            let mut inner = zero_vector(rep.v_dim());
            for k in 0..n {
                // the remaining u's take 𝔗_{i_2}, …, 𝔗_{i_n} in order
                let args: Vec<Vector> = (0..n)
                    .filter(|&j| j != k)
                    .enumerate()
                    .map(|(pos, j)| self.coefficient(idx[pos + 1]).mul_vec(&us[j]))
                    .collect();
                axpy(&mut inner, &sign_pow((n - 1 - k) as i64), &rep.rho(&args).mul_vec(&us[k]));
            }
            axpy(&mut rhs, &Scalar::one(), &self.coefficient(idx[0]).mul_vec(&inner));
        }
        (lhs, rhs)
    }

    /// Checks the `t^s` equation for `s = 0..=m` on all increasing basis
    /// n-tuples of `V`.
    pub fn check_order_m(&self) -> JetReport {
        let rep = self.base.rep();
        let vd = rep.v_dim();
        let tuples = combinations(vd, rep.n());
        for s in 0..=self.order() {
            for u in &tuples {
                let us: Vec<Vector> = u.iter().map(|&i| basis_vector(vd, i)).collect();
                let (lhs, rhs) = self.sides(s, s, &us);
                if lhs != rhs {
                    return JetReport {
                        holds: false,
                        failed_order: Some(s),
                        witness: Some(Witness::new(format!("order-{s}"), u.clone(), &lhs, &rhs)),
                    };
                }
            }
        }
        JetReport {
            holds: true,
            failed_order: None,
            witness: None,
        }
    }

    /// `Θ_m` evaluated directly: the `t^{m+1}` equation restricted to
    /// indices `≤ m`.
    pub fn theta(&self) -> BlockMap {
        let rep = self.base.rep();
        let (n, gd, vd) = (rep.n(), rep.g_dim(), rep.v_dim());
        let m = self.order();
        BlockMap::from_fn(n, 1, Space::new(vd, "V"), Space::new(gd, "g"), |bs, tail| {
            let mut us: Vec<Vector> = bs[0].iter().map(|&i| basis_vector(vd, i)).collect();
            us.push(basis_vector(vd, tail));
            let (mut lhs, rhs) = self.sides(m + 1, m, &us);
            axpy(&mut lhs, &-Scalar::one(), &rhs);
            lhs
        })
    }

    /// `1/n! Σ {𝔗_{i_1}, …, 𝔗_{i_n}}` over `i_1 + … + i_n = m+1`,
    /// `0 ≤ i_j ≤ m`, through the derived bracket.
    pub fn theta_from_brackets(&self, ctx: &DerivedBracketContext) -> Result<BlockMap> {
        let rep = self.base.rep();
        let (n, gd, vd) = (rep.n(), rep.g_dim(), rep.v_dim());
        let m = self.order();
        let as_map = |t: &Matrix| BlockMap::from_matrix(n, Space::new(vd, "V"), Space::new(gd, "g"), t);
        let mut acc = BlockMap::zero(n, 1, Space::new(vd, "V"), Space::new(gd, "g"));
        for idx in compositions(m + 1, n, m) {
            let ps: Vec<BlockMap> = idx.iter().map(|&i| as_map(self.coefficient(i))).collect();
            acc = acc.add(&ctx.derived_bracket(&ps)?)?;
        }
        Ok(acc.scale(&(Scalar::one() / factorial(n))))
    }

    /// Appends `𝔗_{m+1}`.
    pub fn extended(&self, next: Matrix) -> Result<DeformationJet> {
        let mut coeffs = self.coeffs.clone();
        coeffs.push(next);
        DeformationJet::new(self.base.clone(), coeffs)
    }
}

fn operator_map(t: &RBOperator, m: &Matrix) -> Result<BlockMap> {
    let (gd, vd) = (t.rep().g_dim(), t.rep().v_dim());
    if m.rows() != gd || m.cols() != vd {
        return Err(Error::Shape(format!("expected a {gd}x{vd} matrix, got {}x{}", m.rows(), m.cols())));
    }
    Ok(BlockMap::from_matrix(t.n(), Space::new(vd, "V"), Space::new(gd, "g"), m))
}

/// Whether `𝔗_1` is a 1-cocycle of the operator complex.
pub fn check_infinitesimal(t: &RBOperator, t1: &Matrix) -> Result<bool> {
    let f = OperatorCochain::Map(operator_map(t, t1)?);
    Ok(t.coboundary(&f)?.is_zero())
}

/// Solves `𝔗_1' - 𝔗_1 = d𝔛` for `𝔛 ∈ ∧^{n-1} g`, given as coefficients
/// over the sorted blocks.
pub fn find_equivalence(t: &RBOperator, t1: &Matrix, t1p: &Matrix) -> Result<Option<Vector>> {
    if !check_infinitesimal(t, t1)? || !check_infinitesimal(t, t1p)? {
        return Err(Error::Precondition("both infinitesimal deformations must be 1-cocycles".into()));
    }
    let diff = operator_map(t, &t1p.sub(t1))?.coordinates();
    Ok(solve_linear(&t.coboundary_matrix(0), &diff))
}

/// `Θ_m` together with the outcome of the cocycle check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionClass {
    pub theta: BlockMap,
    pub cocycle_checked: bool,
}

pub fn obstruction(jet: &DeformationJet) -> Result<ObstructionClass> {
    let report = jet.check_order_m();
    if !report.holds {
        return Err(Error::Precondition(format!(
            "not a deformation: order {} fails",
            report.failed_order.unwrap_or_default()
        )));
    }
    let theta = jet.theta();
    let d = jet.base.coboundary(&OperatorCochain::Map(theta.clone()))?;
    Ok(ObstructionClass {
        theta,
        cocycle_checked: d.is_zero(),
    })
}

/// The linear system `d𝔗_{m+1} = -Θ_m` as (matrix, right-hand side).
pub fn extension_system(jet: &DeformationJet) -> (Matrix, Vector) {
    let a = jet.base.coboundary_matrix(1);
    let b = jet.theta().coordinates().iter().map(|x| -x).collect();
    (a, b)
}

/// `𝔗_{m+1}` with `Θ_m = -d𝔗_{m+1}`, or `None` if `[Θ_m] ≠ 0`. The
/// extended jet is checked again before returning.
pub fn extend(jet: &DeformationJet) -> Result<Option<Matrix>> {
    obstruction(jet)?;
    let (a, b) = extension_system(jet);
    let Some(x) = solve_linear(&a, &b) else {
        return Ok(None);
    };
    let rep = jet.base.rep();
    let next = BlockMap::from_coordinates(rep.n(), 0, Space::new(rep.v_dim(), "V"), Space::new(rep.g_dim(), "g"), &x).to_matrix();
    let report = jet.extended(next.clone())?.check_order_m();
    if !report.holds {
        return Err(Error::Precondition(format!(
            "extended jet fails at order {}",
            report.failed_order.unwrap_or_default()
        )));
    }
    Ok(Some(next))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::int;
    use crate::nlie::{NLieAlgebra, Representation};

    fn heisenberg_ad() -> Representation {
        let a = NLieAlgebra::from_structure_constants(2, 3, &[(vec![0, 1], basis_vector(3, 2))]).unwrap();
        Representation::adjoint(&a)
    }

    #[test]
    fn constant_jet_extends_by_zero() {
        let t = RBOperator::new(heisenberg_ad(), Matrix::zeros(3, 3)).unwrap();
        let jet = DeformationJet::constant(t, 2);
        assert!(jet.check_order_m().holds);
        assert!(jet.theta().is_zero());
        let next = extend(&jet).unwrap().unwrap();
        assert!(next.is_zero());
    }

    #[test]
    fn coboundary_is_infinitesimal_and_equivalent() {
        let t = RBOperator::new(heisenberg_ad(), Matrix::zeros(3, 3)).unwrap();
        let x = vec![int(1), int(-2), int(3)];
        let dx = t.delta(&x).unwrap().to_matrix();
        assert!(check_infinitesimal(&t, &dx).unwrap());
        let jet = DeformationJet::new(t.clone(), vec![dx.clone()]).unwrap();
        assert!(jet.check_order_m().holds);
        let z = Matrix::zeros(3, 3);
        let found = find_equivalence(&t, &z, &dx).unwrap().unwrap();
        assert_eq!(t.delta(&found).unwrap(), t.delta(&x).unwrap());
    }

    #[test]
    fn arbitrary_second_coefficient_fails() {
        let t = RBOperator::new(heisenberg_ad(), Matrix::zeros(3, 3)).unwrap();
        // with T = 0 the order-2 equation reads [𝔗_1 u, 𝔗_1 v] = 𝔗_1[u, v]_{𝔗_1},
        // and 𝔗_1 = E_00 + E_11 gives e_3 on the left, 0 on the right
        let mut e = Matrix::zeros(3, 3);
        e[(0, 0)] = int(1);
        e[(1, 1)] = int(1);
        let mut f = Matrix::zeros(3, 3);
        f[(1, 1)] = int(1);
        let jet = DeformationJet::new(t, vec![e.clone(), f]).unwrap();
        let r = jet.check_order_m();
        assert!(!r.holds);
        assert_eq!(r.failed_order, Some(2));
        assert!(r.witness.is_some());
    }
}
