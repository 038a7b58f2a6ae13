//! n-Lie algebras, representations, n-pre-Lie algebras and symplectic forms.
//!
//! Constructors accept raw data. Nothing is validated until a checker runs,
//! so counterexamples are ordinary values.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::kernel::{
    axpy, basis_vector, combinations, is_zero_vector, rank, sign_pow, sort_to_block, zero_vector,
    Matrix, Scalar, Vector, WedgeBasis,
};
use crate::multilinear::{lift_to_sum, Evaluate, LiftSource, Space, SumSpaceMap, BlockMap};
use crate::report::{CheckReport, Witness};

/// A fully antisymmetric n-bracket stored as a one-block map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NLieAlgebra {
    space: Space,
    bracket: BlockMap,
}

impl NLieAlgebra {
    pub fn zero(n: usize, dim: usize) -> Self {
        let space = Space::new(dim, "g");
        NLieAlgebra {
            bracket: BlockMap::zero(n, 1, space.clone(), space.clone()),
            space,
        }
    }

    /// Builds the bracket from its values on strictly increasing n-tuples.
    pub fn from_structure_constants(n: usize, dim: usize, entries: &[(Vec<usize>, Vector)]) -> Result<Self> {
        let mut a = Self::zero(n, dim);
        for (args, value) in entries {
            if args.len() != n {
                return Err(Error::Arity(format!("bracket takes {n} arguments, got {}", args.len())));
            }
            if !args.windows(2).all(|w| w[0] < w[1]) {
                return Err(Error::Shape(format!("bracket arguments {args:?} are not strictly increasing")));
            }
            if args.iter().any(|&i| i >= dim) || value.len() != dim {
                return Err(Error::Range(format!("bracket entry {args:?} out of range")));
            }
            a.set_sorted(args, value);
        }
        Ok(a)
    }

    /// Wraps a one-block map, which must already be antisymmetric across
    /// the block and the tail.
    pub fn from_block_map(map: BlockMap) -> Result<Self> {
        if map.blocks() != 1 || map.source().dim != map.target().dim {
            return Err(Error::Shape("a bracket is a one-block endomorphism map".into()));
        }
        let n = map.n();
        let dim = map.source().dim;
        let mut a = Self::zero(n, dim);
        a.space = map.source().clone();
        a.bracket = a.bracket.relabel(a.space.clone(), a.space.clone());
        for t in combinations(dim, n) {
            let v = map.value(&[t[..n - 1].to_vec()], t[n - 1]);
            a.set_sorted(&t, &v);
        }
        if a.bracket != map {
            return Err(Error::Shape("bracket is not fully antisymmetric".into()));
        }
        Ok(a)
    }

    fn set_sorted(&mut self, args: &[usize], value: &Vector) {
        let n = args.len();
        for i in 0..n {
            let block: Vec<usize> = args.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x).collect();
            // moving x_i to the end passes n - 1 - i arguments
            let v: Vector = value.iter().map(|x| x * sign_pow((n - 1 - i) as i64)).collect();
            self.bracket.set(&[&block], args[i], v).expect("indices checked");
        }
    }

    pub fn n(&self) -> usize {
        self.bracket.n()
    }

    pub fn dim(&self) -> usize {
        self.space.dim
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn bracket_map(&self) -> &BlockMap {
        &self.bracket
    }

    /// Nonzero values on strictly increasing n-tuples.
    pub fn structure_constants(&self) -> Vec<(Vec<usize>, Vector)> {
        let n = self.n();
        combinations(self.dim(), n)
            .into_iter()
            .filter_map(|t| {
                let v = self.bracket.value(&[t[..n - 1].to_vec()], t[n - 1]);
                (!is_zero_vector(&v)).then_some((t, v))
            })
            .collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.bracket.is_zero()
    }

    /// Bracket of basis vectors in any order.
    pub fn bracket_basis(&self, args: &[usize]) -> Vector {
        let n = self.n();
        assert_eq!(args.len(), n);
        match sort_to_block(args) {
            None => zero_vector(self.dim()),
            Some((b, s)) => {
                let idx = b.indices();
                let v = self.bracket.value(&[idx[..n - 1].to_vec()], idx[n - 1]);
                if s < 0 {
                    v.into_iter().map(|x| -x).collect()
                } else {
                    v
                }
            }
        }
    }

    pub fn bracket(&self, args: &[Vector]) -> Vector {
        let n = self.n();
        assert_eq!(args.len(), n);
        self.bracket.eval_at(&[args[..n - 1].to_vec()], &args[n - 1])
    }

    /// Matrix of `y ↦ [x_1, …, x_{n-1}, y]` for basis indices `x`.
    pub fn ad_basis(&self, block: &[usize]) -> Matrix {
        let d = self.dim();
        let cols: Vec<Vector> = (0..d)
            .map(|y| {
                let mut args = block.to_vec();
                args.push(y);
                self.bracket_basis(&args)
            })
            .collect();
        Matrix::from_columns(&cols, d)
    }

    pub fn ad(&self, xs: &[Vector]) -> Matrix {
        let d = self.dim();
        let cols: Vec<Vector> = (0..d)
            .map(|y| {
                let mut args = xs.to_vec();
                args.push(basis_vector(d, y));
                self.bracket(&args)
            })
            .collect();
        Matrix::from_columns(&cols, d)
    }

    /// Fundamental identity: each `ad_X` is a derivation of the bracket.
    pub fn check_filippov(&self) -> CheckReport {
        let n = self.n();
        let d = self.dim();
        for x in combinations(d, n - 1) {
            let dx = self.ad_basis(&x);
            if dx.is_zero() {
                continue;
            }
            for y in combinations(d, n) {
                let lhs = dx.mul_vec(&self.bracket_basis(&y));
                let mut rhs = zero_vector(d);
                for i in 0..n {
                    let mut args: Vec<Vector> = y.iter().map(|&j| basis_vector(d, j)).collect();
                    args[i] = dx.column(y[i]);
                    axpy(&mut rhs, &Scalar::from_integer(1.into()), &self.bracket(&args));
                }
                let mut w = x.clone();
                w.extend(&y);
                if let Some(r) = CheckReport::compare("filippov", w, &lhs, &rhs) {
                    return r;
                }
            }
        }
        CheckReport::pass()
    }

    /// Image of `f` under a change of basis: `μ'(x) = A⁻¹ μ(A x)`.
    pub fn transform(&self, a: &Matrix, a_inv: &Matrix) -> NLieAlgebra {
        let n = self.n();
        let d = self.dim();
        let mut out = Self::zero(n, d);
        out.space = self.space.clone();
        out.bracket = out.bracket.relabel(self.space.clone(), self.space.clone());
        for t in combinations(d, n) {
            let args: Vec<Vector> = t.iter().map(|&j| a.column(j)).collect();
            out.set_sorted(&t, &a_inv.mul_vec(&self.bracket(&args)));
        }
        out
    }
}

/// Action of an n-Lie algebra on a module `V`, one matrix per sorted
/// `(n-1)`-block of basis indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    algebra: NLieAlgebra,
    module: Space,
    wedge: WedgeBasis,
    action: Vec<Matrix>,
}

impl Representation {
    pub fn new(algebra: NLieAlgebra, v_dim: usize, action: Vec<Matrix>) -> Result<Self> {
        let wedge = WedgeBasis::new(algebra.dim(), algebra.n() - 1);
        if action.len() != wedge.len() {
            return Err(Error::Shape(format!(
                "expected {} action matrices, got {}",
                wedge.len(),
                action.len()
            )));
        }
        if action.iter().any(|m| m.rows() != v_dim || m.cols() != v_dim) {
            return Err(Error::Shape(format!("action matrices must be {v_dim}x{v_dim}")));
        }
        Ok(Representation {
            algebra,
            module: Space::new(v_dim, "V"),
            wedge,
            action,
        })
    }

    pub fn zero(algebra: NLieAlgebra, v_dim: usize) -> Self {
        let w = WedgeBasis::new(algebra.dim(), algebra.n() - 1).len();
        Self::new(algebra, v_dim, vec![Matrix::zeros(v_dim, v_dim); w]).expect("shapes agree")
    }

    /// Sparse constructor from sorted blocks.
    pub fn from_blocks(algebra: NLieAlgebra, v_dim: usize, entries: &[(Vec<usize>, Matrix)]) -> Result<Self> {
        let mut r = Self::zero(algebra, v_dim);
        for (block, m) in entries {
            if block.len() != r.algebra.n() - 1 || !block.windows(2).all(|w| w[0] < w[1]) {
                return Err(Error::Shape(format!("block {block:?} is not a sorted (n-1)-block")));
            }
            if block.iter().any(|&i| i >= r.algebra.dim()) {
                return Err(Error::Range(format!("block {block:?} out of range")));
            }
            if m.rows() != v_dim || m.cols() != v_dim {
                return Err(Error::Shape(format!("action matrices must be {v_dim}x{v_dim}")));
            }
            let k = r.wedge.rank(block);
            r.action[k] = m.clone();
        }
        Ok(r)
    }

    /// `ad_X` on `g` itself.
    pub fn adjoint(a: &NLieAlgebra) -> Self {
        let wedge = WedgeBasis::new(a.dim(), a.n() - 1);
        let action = wedge.subsets().iter().map(|b| a.ad_basis(b)).collect();
        Self::new(a.clone(), a.dim(), action).expect("shapes agree")
    }

    /// Dual action on `g*`: the matrix of `ad*_X` is `-ad_Xᵀ`.
    pub fn coadjoint(a: &NLieAlgebra) -> Self {
        let ad = Self::adjoint(a);
        let action = ad.action.iter().map(|m| m.transpose().scale(&-Scalar::from_integer(1.into()))).collect();
        Self::new(a.clone(), a.dim(), action).expect("shapes agree")
    }

    /// Block-diagonal sum of two representations of the same algebra.
    pub fn direct_sum(&self, other: &Representation) -> Result<Self> {
        if self.algebra != other.algebra {
            return Err(Error::SpaceMismatch("direct sum of representations of different algebras".into()));
        }
        let (p, q) = (self.v_dim(), other.v_dim());
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| {
                let mut m = Matrix::zeros(p + q, p + q);
                for r in 0..p {
                    for c in 0..p {
                        m[(r, c)] = a[(r, c)].clone();
                    }
                }
                for r in 0..q {
                    for c in 0..q {
                        m[(p + r, p + c)] = b[(r, c)].clone();
                    }
                }
                m
            })
            .collect();
        Self::new(self.algebra.clone(), p + q, action)
    }

    pub fn algebra(&self) -> &NLieAlgebra {
        &self.algebra
    }

    pub fn n(&self) -> usize {
        self.algebra.n()
    }

    pub fn g_dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn v_dim(&self) -> usize {
        self.module.dim
    }

    pub fn module(&self) -> &Space {
        &self.module
    }

    pub fn wedge(&self) -> &WedgeBasis {
        &self.wedge
    }

    /// Action matrices indexed by wedge rank.
    pub fn action(&self) -> &[Matrix] {
        &self.action
    }

    /// `ρ` on basis indices in any order.
    pub fn rho_basis(&self, block: &[usize]) -> Matrix {
        match sort_to_block(block) {
            None => Matrix::zeros(self.v_dim(), self.v_dim()),
            Some((b, s)) => {
                let m = &self.action[self.wedge.rank(b.indices())];
                if s < 0 {
                    m.scale(&-Scalar::from_integer(1.into()))
                } else {
                    m.clone()
                }
            }
        }
    }

    pub fn rho(&self, xs: &[Vector]) -> Matrix {
        let layout = crate::multilinear::KeyLayout::new(self.n(), 0, self.g_dim());
        let mut out = Matrix::zeros(self.v_dim(), self.v_dim());
        for (k, c) in layout.wedge_coefficients(xs) {
            out = out.add(&self.action[k].scale(&c));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.action.iter().all(Matrix::is_zero)
    }

    /// Both representation axioms on all basis tuples.
    pub fn check(&self) -> CheckReport {
        self.check_rep1().and(self.check_rep2())
    }

    /// `[ρ(X), ρ(Y)] = ρ(X∘Y)`.
    pub fn check_rep1(&self) -> CheckReport {
        let n = self.n();
        let d = self.g_dim();
        let blocks = self.wedge.subsets();
        for (xi, x) in blocks.iter().enumerate() {
            let dx = self.algebra.ad_basis(x);
            for (yi, y) in blocks.iter().enumerate() {
                let lhs = self.action[xi].commutator(&self.action[yi]);
                let mut rhs = Matrix::zeros(self.v_dim(), self.v_dim());
                for i in 0..n - 1 {
                    let mut args: Vec<Vector> = y.iter().map(|&j| basis_vector(d, j)).collect();
                    args[i] = dx.column(y[i]);
                    rhs = rhs.add(&self.rho(&args));
                }
                if lhs != rhs {
                    return self.matrix_witness("rep1", [x.clone(), y.clone()].concat(), &lhs, &rhs);
                }
            }
        }
        CheckReport::pass()
    }

    /// `ρ(x_1, …, x_{n-2}, [y_1, …, y_n]) = Σ (-1)^{n-i} ρ(y^î) ρ(x, y_i)`.
    pub fn check_rep2(&self) -> CheckReport {
        let n = self.n();
        let d = self.g_dim();
        for x in combinations(d, n - 2) {
            for y in combinations(d, n) {
                let mut args: Vec<Vector> = x.iter().map(|&j| basis_vector(d, j)).collect();
                args.push(self.algebra.bracket_basis(&y));
                let lhs = self.rho(&args);
                let mut rhs = Matrix::zeros(self.v_dim(), self.v_dim());
                for i in 0..n {
                    let hat: Vec<usize> = y.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v).collect();
                    let mut xy = x.clone();
                    xy.push(y[i]);
                    let term = self.rho_basis(&hat).mul(&self.rho_basis(&xy));
                    rhs = rhs.add(&term.scale(&sign_pow((n - 1 - i) as i64)));
                }
                if lhs != rhs {
                    return self.matrix_witness("rep2", [x.clone(), y.clone()].concat(), &lhs, &rhs);
                }
            }
        }
        CheckReport::pass()
    }

    fn matrix_witness(&self, id: &str, args: Vec<usize>, lhs: &Matrix, rhs: &Matrix) -> CheckReport {
        let flat = |m: &Matrix| -> Vector { (0..m.rows()).flat_map(|r| m.row(r).to_vec()).collect() };
        CheckReport::fail(Witness::new(id, args, &flat(lhs), &flat(rhs)))
    }

    /// `μ̂ + ρ̂` on `g ⊕ V`.
    pub fn lifted_structure(&self) -> SumSpaceMap {
        let mu = lift_to_sum(LiftSource::Bracket {
            mu: self.algebra.bracket_map(),
            v_dim: self.v_dim(),
        })
        .expect("bracket shape");
        let rho = lift_to_sum(LiftSource::Action {
            n: self.n(),
            g_dim: self.g_dim(),
            v_dim: self.v_dim(),
            action: &self.action,
        })
        .expect("action shape");
        SumSpaceMap::new(mu.map.add(&rho.map).expect("same shape"), self.g_dim()).expect("sum space")
    }

    /// The semidirect product bracket on `g ⊕ V`.
    pub fn semidirect_product(&self) -> NLieAlgebra {
        NLieAlgebra::from_block_map(self.lifted_structure().map).expect("lift is antisymmetric")
    }

    /// Change of basis: `ρ'(X) = B⁻¹ ρ(A X) B`.
    pub fn transform(&self, a: &Matrix, a_inv: &Matrix, b: &Matrix, b_inv: &Matrix) -> Representation {
        let alg = self.algebra.transform(a, a_inv);
        let action = self
            .wedge
            .subsets()
            .iter()
            .map(|blk| {
                let xs: Vec<Vector> = blk.iter().map(|&j| a.column(j)).collect();
                b_inv.mul(&self.rho(&xs)).mul(b)
            })
            .collect();
        Representation::new(alg, self.v_dim(), action).expect("shapes agree")
    }
}

/// Product `{x_1, …, x_{n-1}, x_n}` antisymmetric in the first `n-1` slots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NPreLie {
    product: BlockMap,
}

impl NPreLie {
    pub fn new(product: BlockMap) -> Result<Self> {
        if product.blocks() != 1 || product.source().dim != product.target().dim {
            return Err(Error::Shape("an n-pre-Lie product is a one-block endomorphism map".into()));
        }
        Ok(NPreLie { product })
    }

    pub fn zero(n: usize, dim: usize) -> Self {
        let s = Space::new(dim, "g");
        NPreLie {
            product: BlockMap::zero(n, 1, s.clone(), s),
        }
    }

    pub fn n(&self) -> usize {
        self.product.n()
    }

    pub fn dim(&self) -> usize {
        self.product.source().dim
    }

    pub fn product_map(&self) -> &BlockMap {
        &self.product
    }

    pub fn product(&self, args: &[Vector]) -> Vector {
        let n = self.n();
        self.product.eval_at(&[args[..n - 1].to_vec()], &args[n - 1])
    }

    pub fn product_basis(&self, args: &[usize]) -> Vector {
        let n = self.n();
        self.product
            .evaluate_basis(&[&args[..n - 1]], args[n - 1])
            .expect("indices in range")
    }

    /// `[x]_C = Σ (-1)^{n-i} {x^î, x_i}`.
    pub fn sub_adjacent(&self) -> NLieAlgebra {
        let n = self.n();
        let d = self.dim();
        let entries: Vec<(Vec<usize>, Vector)> = combinations(d, n)
            .into_iter()
            .map(|t| {
                let v = self.commutator_basis(&t);
                (t, v)
            })
            .collect();
        NLieAlgebra::from_structure_constants(n, d, &entries).expect("sorted entries")
    }

    fn commutator(&self, args: &[Vector]) -> Vector {
        let n = self.n();
        let mut out = zero_vector(self.dim());
        for i in 0..n {
            let mut reordered: Vec<Vector> = args.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, v)| v.clone()).collect();
            reordered.push(args[i].clone());
            axpy(&mut out, &sign_pow((n - 1 - i) as i64), &self.product(&reordered));
        }
        out
    }

    fn commutator_basis(&self, args: &[usize]) -> Vector {
        let d = self.dim();
        let vs: Vec<Vector> = args.iter().map(|&i| basis_vector(d, i)).collect();
        self.commutator(&vs)
    }

    /// `L(x_1, …, x_{n-1}) x_n = {x_1, …, x_n}`, a representation of the
    /// sub-adjacent algebra.
    pub fn left_mult_rep(&self) -> Representation {
        let n = self.n();
        let d = self.dim();
        let wedge = WedgeBasis::new(d, n - 1);
        let action = wedge
            .subsets()
            .iter()
            .map(|b| {
                let cols: Vec<Vector> = (0..d)
                    .map(|y| {
                        let mut a = b.clone();
                        a.push(y);
                        self.product_basis(&a)
                    })
                    .collect();
                Matrix::from_columns(&cols, d)
            })
            .collect();
        Representation::new(self.sub_adjacent(), d, action).expect("shapes agree")
    }

    /// Both defining identities, evaluated literally on basis tuples.
    pub fn check(&self) -> CheckReport {
        let n = self.n();
        let d = self.dim();
        let e = |i: usize| basis_vector(d, i);
        let one = Scalar::from_integer(1.into());
        let blocks = combinations(d, n - 1);
        // {x, {y, y_n}} = Σ_{i<n} {y_1..[x, y_i]_C..y_n} + {y, {x, y_n}}
        for x in &blocks {
            let xv: Vec<Vector> = x.iter().map(|&i| e(i)).collect();
            for y in &blocks {
                for yn in 0..d {
                    let mut inner = y.clone();
                    inner.push(yn);
                    let mut args = xv.clone();
                    args.push(self.product_basis(&inner));
                    let lhs = self.product(&args);
                    let mut rhs = zero_vector(d);
                    for i in 0..n - 1 {
                        let mut c = xv.clone();
                        c.push(e(y[i]));
                        let mut a: Vec<Vector> = inner.iter().map(|&j| e(j)).collect();
                        a[i] = self.commutator(&c);
                        axpy(&mut rhs, &one, &self.product(&a));
                    }
                    let mut xa = x.clone();
                    xa.push(yn);
                    let mut a: Vec<Vector> = y.iter().map(|&j| e(j)).collect();
                    a.push(self.product_basis(&xa));
                    axpy(&mut rhs, &one, &self.product(&a));
                    let w = [x.clone(), inner.clone()].concat();
                    if let Some(r) = CheckReport::compare("n-pre-lie-1", w, &lhs, &rhs) {
                        return r;
                    }
                }
            }
        }
        // {[y]_C, x_1..x_{n-1}} = Σ (-1)^{n-i} {y^î, {y_i, x_1..x_{n-1}}}
        for y in combinations(d, n) {
            let c = self.commutator_basis(&y);
            for x in combinations(d, n - 2) {
                for xl in 0..d {
                    let mut args = vec![c.clone()];
                    args.extend(x.iter().map(|&j| e(j)));
                    args.push(e(xl));
                    let lhs = self.product(&args);
                    let mut rhs = zero_vector(d);
                    for i in 0..n {
                        let mut inner = vec![y[i]];
                        inner.extend(&x);
                        inner.push(xl);
                        let mut a: Vec<Vector> = y.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| e(v)).collect();
                        a.push(self.product_basis(&inner));
                        axpy(&mut rhs, &sign_pow((n - 1 - i) as i64), &self.product(&a));
                    }
                    let w = [y.clone(), x.clone(), vec![xl]].concat();
                    if let Some(r) = CheckReport::compare("n-pre-lie-2", w, &lhs, &rhs) {
                        return r;
                    }
                }
            }
        }
        CheckReport::pass()
    }
}

/// Bilinear form with `ω(e_i, e_j) = omega[(i, j)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticForm {
    pub omega: Matrix,
}

impl SymplecticForm {
    pub fn new(omega: Matrix) -> Self {
        SymplecticForm { omega }
    }

    pub fn eval(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        crate::kernel::dot(x, &self.omega.mul_vec(y))
    }

    pub fn is_skew(&self) -> bool {
        self.omega.transpose() == self.omega.scale(&-Scalar::from_integer(1.into()))
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.omega.rows() == self.omega.cols() && rank(&self.omega) == self.omega.rows()
    }

    /// The operator `T: g* → g` with `⟨T⁻¹x, y⟩ = ω(x, y)`, i.e. `T = (ωᵀ)⁻¹`.
    pub fn flat_inverse(&self) -> Option<Matrix> {
        self.omega.transpose().inverse()
    }
}

pub fn check_symplectic(a: &NLieAlgebra, w: &SymplecticForm) -> CheckReport {
    let d = a.dim();
    let n = a.n();
    if w.omega.rows() != d || w.omega.cols() != d {
        return CheckReport::fail(Witness::new("shape", vec![], &vec![], &vec![]));
    }
    if !w.is_skew() {
        let bad = (0..d)
            .flat_map(|i| (0..d).map(move |j| (i, j)))
            .find(|&(i, j)| w.omega[(i, j)] != -w.omega[(j, i)].clone())
            .expect("not skew");
        return CheckReport::fail(Witness::new(
            "skew",
            vec![bad.0, bad.1],
            &vec![w.omega[(bad.0, bad.1)].clone()],
            &vec![-w.omega[(bad.1, bad.0)].clone()],
        ));
    }
    if !w.is_nondegenerate() {
        return CheckReport::fail(Witness::new(
            "nondegenerate",
            vec![],
            &vec![Scalar::from_integer((rank(&w.omega) as i64).into())],
            &vec![Scalar::from_integer((d as i64).into())],
        ));
    }
    for x in combinations(d, n) {
        let bx = a.bracket_basis(&x);
        for y in 0..d {
            let lhs = w.eval(&bx, &basis_vector(d, y));
            let mut rhs = Scalar::zero();
            for i in 0..n {
                let mut args: Vec<usize> = x.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v).collect();
                args.push(y);
                let t = w.eval(&basis_vector(d, x[i]), &a.bracket_basis(&args));
                rhs -= sign_pow((n - 1 - i) as i64) * t;
            }
            if let Some(r) = CheckReport::compare("symplectic", [x.clone(), vec![y]].concat(), &vec![lhs], &vec![rhs]) {
                return r;
            }
        }
    }
    CheckReport::pass()
}

/// Compatible n-pre-Lie product `{x} = T(ad*_{x_1..x_{n-1}} T⁻¹ x_n)`, which
/// satisfies `ω({x_1..x_n}, y) = -ω(x_n, [x_1..x_{n-1}, y])`.
pub fn symplectic_to_pre_lie(a: &NLieAlgebra, w: &SymplecticForm) -> Result<NPreLie> {
    let t = w
        .flat_inverse()
        .ok_or_else(|| Error::Precondition("symplectic form is degenerate".into()))?;
    let t_inv = w.omega.transpose();
    let coad = Representation::coadjoint(a);
    let n = a.n();
    let d = a.dim();
    let s = a.space().clone();
    let product = BlockMap::from_fn(n, 1, s.clone(), s, |bs, tail| {
        let m = &coad.action[coad.wedge.rank(&bs[0])];
        t.mul_vec(&m.mul_vec(&t_inv.mul_vec(&basis_vector(d, tail))))
    });
    NPreLie::new(product)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::int;

    fn e(d: usize, i: usize) -> Vector {
        basis_vector(d, i)
    }

    /// n = 3, dim 4, only [e1, e2, e3] = e4 (0-based: [0,1,2] = 3).
    fn nilpotent() -> NLieAlgebra {
        NLieAlgebra::from_structure_constants(3, 4, &[(vec![0, 1, 2], e(4, 3))]).unwrap()
    }

    #[test]
    fn zero_bracket_is_filippov() {
        assert!(NLieAlgebra::zero(3, 4).check_filippov().holds);
        assert!(NLieAlgebra::zero(2, 3).check_filippov().holds);
    }

    #[test]
    fn nilpotent_is_filippov() {
        assert!(nilpotent().check_filippov().holds);
    }

    #[test]
    fn broken_bracket_fails_with_witness() {
        let a = NLieAlgebra::from_structure_constants(3, 4, &[(vec![0, 1, 2], e(4, 3)), (vec![0, 1, 3], e(4, 0))]).unwrap();
        let r = a.check_filippov();
        assert!(!r.holds);
        let w = r.witness.unwrap();
        assert_eq!(w.identity, "filippov");
        assert_ne!(w.lhs, w.rhs);
    }

    #[test]
    fn bracket_is_antisymmetric() {
        let a = nilpotent();
        assert_eq!(a.bracket_basis(&[1, 0, 2]), crate::kernel::scale(&int(-1), &e(4, 3)));
        assert_eq!(a.bracket_basis(&[2, 0, 1]), e(4, 3));
        assert!(is_zero_vector(&a.bracket_basis(&[0, 0, 2])));
    }

    #[test]
    fn adjoint_of_nilpotent() {
        let ad = Representation::adjoint(&nilpotent());
        let m = ad.rho_basis(&[0, 1]);
        assert_eq!(m.mul_vec(&e(4, 2)), e(4, 3));
        for k in [0, 1, 3] {
            assert!(is_zero_vector(&m.mul_vec(&e(4, k))));
        }
        for b in [[0, 3], [1, 3], [2, 3]] {
            assert!(ad.rho_basis(&b).is_zero());
        }
        assert!(ad.check().holds);
    }

    #[test]
    fn coadjoint_is_negative_transpose() {
        let a = nilpotent();
        let ad = Representation::adjoint(&a);
        let co = Representation::coadjoint(&a);
        assert_eq!(co.rho_basis(&[0, 1]), ad.rho_basis(&[0, 1]).transpose().scale(&int(-1)));
        assert!(co.check().holds);
    }

    #[test]
    fn abelian_adjoint_is_zero() {
        assert!(Representation::adjoint(&NLieAlgebra::zero(3, 3)).is_zero());
    }

    #[test]
    fn random_action_on_nonabelian_fails() {
        let a = nilpotent();
        let r = Representation::from_blocks(a, 1, &[(vec![0, 1], Matrix::from_i64(1, 1, &[1])), (vec![2, 3], Matrix::from_i64(1, 1, &[1]))]).unwrap();
        assert!(!r.check().holds);
    }

    #[test]
    fn semidirect_product_of_adjoint() {
        let ad = Representation::adjoint(&nilpotent());
        let s = ad.semidirect_product();
        assert_eq!(s.dim(), 8);
        assert!(s.check_filippov().holds);
        // two V slots kill every term
        assert!(is_zero_vector(&s.bracket_basis(&[0, 4, 5])));
        // one V slot: [e1, e2, u3] = ρ(e1, e2) u3 = u4
        assert_eq!(s.bracket_basis(&[0, 1, 6]), e(8, 7));
    }

    #[test]
    fn pre_lie_example_n2() {
        let s = Space::new(2, "g");
        let mut p = BlockMap::zero(2, 1, s.clone(), s);
        p.set(&[&[0]], 0, e(2, 1)).unwrap();
        let p = NPreLie::new(p).unwrap();
        assert!(p.check().holds);
        assert!(p.sub_adjacent().is_abelian());
        let l = p.left_mult_rep();
        assert_eq!(l.rho_basis(&[0]).mul_vec(&e(2, 0)), e(2, 1));
        assert!(l.check().holds);
    }

    #[test]
    fn symplectic_abelian() {
        let a = NLieAlgebra::zero(2, 2);
        let w = SymplecticForm::new(Matrix::from_i64(2, 2, &[0, 1, -1, 0]));
        assert!(check_symplectic(&a, &w).holds);
        let degenerate = SymplecticForm::new(Matrix::zeros(2, 2));
        let r = check_symplectic(&a, &degenerate);
        assert_eq!(r.witness.unwrap().identity, "nondegenerate");
        assert!(symplectic_to_pre_lie(&a, &w).unwrap().product_map().is_zero());
    }

    #[test]
    fn symplectic_nilpotent_extension() {
        // ω(e1, e4) = ω(e2, e3) = 1
        let w = SymplecticForm::new(Matrix::from_i64(4, 4, &[0, 0, 0, 1, 0, 0, 1, 0, 0, -1, 0, 0, -1, 0, 0, 0]));
        let a = nilpotent();
        assert!(check_symplectic(&a, &w).holds);
        let p = symplectic_to_pre_lie(&a, &w).unwrap();
        assert!(p.check().holds);
        assert_eq!(p.sub_adjacent(), a);
    }
}
