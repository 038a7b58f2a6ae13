//! Small example algebras, representations and operators, plus seeded
//! random generators for tests and demos.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::deformation::DeformationJet;
use crate::kernel::{basis_vector, int, kernel_basis, sort_to_block, zero_vector, Matrix, Scalar, Vector, WedgeBasis};
use crate::lift::TraceFunctional;
use crate::multilinear::{BlockMap, KeyLayout, Space, SumSpaceMap};
use crate::nlie::{NLieAlgebra, NPreLie, Representation, SymplecticForm};
use crate::rota_baxter::{check_rb, RBOperator};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Integer in `-2..=2`.
pub fn small_scalar(rng: &mut impl Rng) -> Scalar {
    int(rng.gen_range(-2..=2))
}

pub fn random_vector(rng: &mut impl Rng, len: usize) -> Vector {
    (0..len).map(|_| small_scalar(rng)).collect()
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> Matrix {
    Matrix::from_rows((0..rows).map(|_| random_vector(rng, cols)).collect(), cols)
}

/// Entries in `{-1, 0, 1}`, nonzero with probability `density`.
pub fn sparse_matrix(rng: &mut impl Rng, rows: usize, cols: usize, density: f64) -> Matrix {
    let mut m = Matrix::zeros(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            if rng.gen_bool(density) {
                m[(r, c)] = int(if rng.gen_bool(0.5) { 1 } else { -1 });
            }
        }
    }
    m
}

fn alg(n: usize, dim: usize, entries: &[(&[usize], &[i64])]) -> NLieAlgebra {
    let e: Vec<(Vec<usize>, Vector)> = entries.iter().map(|(k, v)| (k.to_vec(), v.iter().map(|&x| int(x)).collect())).collect();
    NLieAlgebra::from_structure_constants(n, dim, &e).expect("catalogue entry")
}

pub fn abelian(n: usize, dim: usize) -> NLieAlgebra {
    NLieAlgebra::zero(n, dim)
}

/// `[e1, e2] = e3`.
pub fn heisenberg() -> NLieAlgebra {
    alg(2, 3, &[(&[0, 1], &[0, 0, 1])])
}

/// Basis `e, f, h`: `[e, f] = h`, `[h, e] = 2e`, `[h, f] = -2f`.
pub fn sl2() -> NLieAlgebra {
    alg(2, 3, &[(&[0, 1], &[0, 0, 1]), (&[0, 2], &[-2, 0, 0]), (&[1, 2], &[0, 2, 0])])
}

/// `[e1, e2] = e3` and cyclic.
pub fn so3() -> NLieAlgebra {
    alg(2, 3, &[(&[0, 1], &[0, 0, 1]), (&[0, 2], &[0, -1, 0]), (&[1, 2], &[1, 0, 0])])
}

/// `[e1, e2] = e2`.
pub fn aff2() -> NLieAlgebra {
    alg(2, 2, &[(&[0, 1], &[0, 1])])
}

/// Heisenberg plus a central line `e4`.
pub fn heisenberg_plus_line() -> NLieAlgebra {
    alg(2, 4, &[(&[0, 1], &[0, 0, 1, 0])])
}

/// `[e1, e2, e3] = e4`.
pub fn nilpotent3() -> NLieAlgebra {
    alg(3, 4, &[(&[0, 1, 2], &[0, 0, 0, 1])])
}

/// The simple 3-Lie algebra: `[e1, …, ê_i, …, e4] = (-1)^{i+1} e_i`.
pub fn a4() -> NLieAlgebra {
    alg(
        3,
        4,
        &[
            (&[1, 2, 3], &[1, 0, 0, 0]),
            (&[0, 2, 3], &[0, -1, 0, 0]),
            (&[0, 1, 3], &[0, 0, 1, 0]),
            (&[0, 1, 2], &[0, 0, 0, -1]),
        ],
    )
}

/// `[e1, e2, e3] = e1`: a solvable 3-Lie algebra.
pub fn solvable3() -> NLieAlgebra {
    alg(3, 3, &[(&[0, 1, 2], &[1, 0, 0])])
}

pub fn catalogue() -> Vec<(&'static str, NLieAlgebra)> {
    vec![
        ("abelian-2-3", abelian(2, 3)),
        ("heisenberg", heisenberg()),
        ("sl2", sl2()),
        ("so3", so3()),
        ("aff2", aff2()),
        ("heisenberg+line", heisenberg_plus_line()),
        ("abelian-3-3", abelian(3, 3)),
        ("nilpotent3", nilpotent3()),
        ("a4", a4()),
        ("solvable3", solvable3()),
    ]
}

/// Random integer matrix of determinant `±1` with its inverse.
pub fn random_unimodular(rng: &mut impl Rng, dim: usize) -> (Matrix, Matrix) {
    let mut a = Matrix::identity(dim);
    if dim >= 2 {
        for _ in 0..dim + 2 {
            let i = rng.gen_range(0..dim);
            let mut j = rng.gen_range(0..dim - 1);
            if j >= i {
                j += 1;
            }
            let c = int(if rng.gen_bool(0.5) { 1 } else { -1 });
            // row operation r_i += c r_j
            let mut e = Matrix::identity(dim);
            e[(i, j)] = c;
            a = e.mul(&a);
        }
    }
    let inv = a.inverse().expect("unimodular");
    (a, inv)
}

/// Catalogue algebra in a random basis.
pub fn random_algebra(rng: &mut impl Rng) -> NLieAlgebra {
    let cat = catalogue();
    let (_, a) = cat.choose(rng).expect("nonempty");
    let (m, inv) = random_unimodular(rng, a.dim());
    a.transform(&m, &inv)
}

/// A representation drawn from adjoint, coadjoint, trivial and direct
/// sums, over a random catalogue algebra.
pub fn random_pair(rng: &mut impl Rng) -> Representation {
    let a = random_algebra(rng);
    pair_over(rng, &a)
}

pub fn pair_over(rng: &mut impl Rng, a: &NLieAlgebra) -> Representation {
    match rng.gen_range(0..5) {
        0 => Representation::adjoint(a),
        1 => Representation::coadjoint(a),
        2 => Representation::zero(a.clone(), rng.gen_range(1..=2)),
        3 => Representation::adjoint(a).direct_sum(&Representation::zero(a.clone(), 1)).expect("same algebra"),
        _ => {
            let ad = Representation::adjoint(a);
            let (b, b_inv) = random_unimodular(rng, a.dim());
            ad.transform(&Matrix::identity(a.dim()), &Matrix::identity(a.dim()), &b, &b_inv)
        }
    }
}

/// Perturbs one structure constant or one action entry until the pair
/// fails the exhaustive axiom checks.
pub fn broken_pair(rng: &mut impl Rng) -> Representation {
    loop {
        let r = random_pair(rng);
        let a = r.algebra();
        let candidate = if rng.gen_bool(0.5) {
            let mut sc = a.structure_constants();
            let all = crate::kernel::combinations(a.dim(), a.n());
            if all.is_empty() {
                continue;
            }
            let key = all.choose(rng).expect("nonempty").clone();
            let mut v = zero_vector(a.dim());
            v[rng.gen_range(0..a.dim())] = int(if rng.gen_bool(0.5) { 1 } else { -1 });
            match sc.iter_mut().find(|(k, _)| *k == key) {
                Some((_, old)) => *old = crate::kernel::add(old, &v),
                None => sc.push((key, v)),
            }
            sc.sort();
            let b = NLieAlgebra::from_structure_constants(a.n(), a.dim(), &sc).expect("sorted keys");
            Representation::new(b, r.v_dim(), r.action().to_vec()).expect("shapes")
        } else {
            let mut action = r.action().to_vec();
            if action.is_empty() || r.v_dim() == 0 {
                continue;
            }
            let k = rng.gen_range(0..action.len());
            let (i, j) = (rng.gen_range(0..r.v_dim()), rng.gen_range(0..r.v_dim()));
            action[k][(i, j)] += int(1);
            Representation::new(a.clone(), r.v_dim(), action).expect("shapes")
        };
        if !(candidate.algebra().check_filippov().holds && candidate.check().holds) {
            return candidate;
        }
    }
}

/// Random cochain with `blocks` blocks.
pub fn random_map(rng: &mut impl Rng, n: usize, blocks: usize, source: Space, target: Space) -> BlockMap {
    let td = target.dim;
    BlockMap::from_fn(n, blocks, source, target, |_, _| random_vector(rng, td))
}

/// Random cochain antisymmetric in its last block together with the tail.
pub fn random_liftable_map(rng: &mut impl Rng, n: usize, blocks: usize, source: Space, target: Space) -> BlockMap {
    assert!(blocks >= 1);
    let d = source.dim;
    let td = target.dim;
    let front = KeyLayout::new(n, blocks - 1, d);
    let top = WedgeBasis::new(d, n);
    // one value per (front key, n-subset); front keys use tail 0
    let table: Vec<Vec<Vector>> = (0..front.key_count() / d.max(1))
        .map(|_| (0..top.len()).map(|_| random_vector(rng, td)).collect())
        .collect();
    let fw = WedgeBasis::new(d, n - 1);
    BlockMap::from_fn(n, blocks, source, target, |bs, tail| {
        let mut last = bs[blocks - 1].clone();
        last.push(tail);
        let Some((b, sign)) = sort_to_block(&last) else {
            return zero_vector(td);
        };
        let ranks: Vec<usize> = bs[..blocks - 1].iter().map(|x| fw.rank(x)).collect();
        let key = front.encode(&ranks, 0) / d;
        table[key][top.rank(b.indices())].iter().map(|x| x * Scalar::from_integer(sign.into())).collect()
    })
}

/// Random map on `g ⊕ V` of bidegree `k|l`, `k + l = blocks (n-1)`.
pub fn random_homogeneous(rng: &mut impl Rng, n: usize, g_dim: usize, v_dim: usize, blocks: usize, k: usize) -> SumSpaceMap {
    let d = g_dim + v_dim;
    let space = SumSpaceMap::sum_space(g_dim, v_dim);
    let map = BlockMap::from_fn(n, blocks, space.clone(), space, |bs, tail| {
        let a = bs.iter().flatten().chain(std::iter::once(&tail)).filter(|&&i| i < g_dim).count();
        let mut v = zero_vector(d);
        if a == k + 1 {
            for x in v.iter_mut().take(g_dim) {
                *x = small_scalar(rng);
            }
        } else if a == k {
            for x in v.iter_mut().skip(g_dim) {
                *x = small_scalar(rng);
            }
        }
        v
    });
    SumSpaceMap::new(map, g_dim).expect("sum space")
}

/// `T' = A⁻¹ T B` for the pair transformed by `(A, B)`.
pub fn transform_operator(t: &Matrix, a_inv: &Matrix, b: &Matrix) -> Matrix {
    a_inv.mul(t).mul(b)
}

/// Operators of rank at most `n - 2`, which satisfy the identity
/// trivially.
pub fn low_rank_operator(rng: &mut impl Rng, rep: &Representation) -> Matrix {
    let (gd, vd) = (rep.g_dim(), rep.v_dim());
    let r = rep.n().saturating_sub(2).min(gd).min(vd);
    let mut t = Matrix::zeros(gd, vd);
    for _ in 0..r {
        let x = random_vector(rng, gd);
        let y = random_vector(rng, vd);
        for i in 0..gd {
            for j in 0..vd {
                t[(i, j)] += &x[i] * &y[j];
            }
        }
    }
    t
}

/// Sparse random matrices that pass the exhaustive check, at most
/// `want` of them from `tries` attempts.
pub fn search_operators(rng: &mut impl Rng, rep: &Representation, tries: usize, want: usize) -> Vec<Matrix> {
    let mut out = Vec::new();
    for _ in 0..tries {
        if out.len() >= want {
            break;
        }
        let density = rng.gen_range(0.1..0.6);
        let t = sparse_matrix(rng, rep.g_dim(), rep.v_dim(), density);
        if !t.is_zero() && check_rb(rep, &t).holds && !out.contains(&t) {
            out.push(t);
        }
    }
    out
}

/// Known nonzero operators on catalogue pairs.
pub fn known_operators() -> Vec<(&'static str, RBOperator)> {
    let mut out = Vec::new();
    let e = |r: usize, c: usize, d: usize| {
        let mut m = Matrix::zeros(d, d);
        m[(r, c)] = int(1);
        m
    };
    // onto the Heisenberg center
    out.push(("heisenberg-center", RBOperator::new(Representation::adjoint(&heisenberg()), e(2, 0, 3).add(&e(2, 1, 3))).unwrap()));
    out.push(("heisenberg-e11", RBOperator::new(Representation::adjoint(&heisenberg()), e(0, 0, 3)).unwrap()));
    out.push((
        "heisenberg-line",
        RBOperator::new(Representation::adjoint(&heisenberg_plus_line()), e(0, 0, 4).add(&e(3, 3, 4))).unwrap(),
    ));
    // identity on the left multiplication of a pre-Lie algebra: e1·e1 = e2
    let s = Space::new(2, "g");
    let mut p = BlockMap::zero(2, 1, s.clone(), s);
    p.set(&[&[0]], 0, basis_vector(2, 1)).unwrap();
    out.push(("pre-lie-identity", RBOperator::new(NPreLie::new(p).unwrap().left_mult_rep(), Matrix::identity(2)).unwrap()));
    // symplectic 3-Lie algebra: T = ω-flat inverse on the coadjoint pair
    let mut w = Matrix::zeros(4, 4);
    w[(0, 3)] = int(1);
    w[(3, 0)] = int(-1);
    w[(1, 2)] = int(1);
    w[(2, 1)] = int(-1);
    let t = SymplecticForm::new(w).flat_inverse().expect("nondegenerate");
    out.push(("nilpotent3-symplectic", RBOperator::new(Representation::coadjoint(&nilpotent3()), t).unwrap()));
    out.push(("a4-zero", RBOperator::new(Representation::adjoint(&a4()), Matrix::zeros(4, 4)).unwrap()));
    out.push((
        "nilpotent3-center",
        RBOperator::new(Representation::adjoint(&nilpotent3()), e(3, 0, 4).add(&e(3, 1, 4).scale(&int(2)))).unwrap(),
    ));
    out
}

/// Admissible functionals: a basis of the annihilator of `[g, …, g]`.
pub fn admissible_functionals(a: &NLieAlgebra) -> Vec<TraceFunctional> {
    let rows: Vec<Vector> = crate::kernel::combinations(a.dim(), a.n()).iter().map(|t| a.bracket_basis(t)).collect();
    let m = Matrix::from_rows(rows, a.dim());
    kernel_basis(&m).into_iter().map(TraceFunctional::new).collect()
}

/// Random combination of admissible functionals.
pub fn random_admissible(rng: &mut impl Rng, a: &NLieAlgebra) -> TraceFunctional {
    let mut f = zero_vector(a.dim());
    for b in admissible_functionals(a) {
        crate::kernel::axpy(&mut f, &small_scalar(rng), b.coefficients());
    }
    TraceFunctional::new(f)
}

/// An order-`m` deformation: a random 1-cocycle followed by solvable
/// extensions, each shifted by a random 1-cocycle. Stops early if an
/// obstruction appears.
pub fn random_jet(rng: &mut impl Rng, t: &RBOperator, m: usize) -> DeformationJet {
    let (gd, vd) = (t.rep().g_dim(), t.rep().v_dim());
    let cocycles = kernel_basis(&t.coboundary_matrix(1));
    let random_cocycle = |rng: &mut dyn rand::RngCore| -> Matrix {
        let mut c = zero_vector(gd * vd);
        for z in &cocycles {
            crate::kernel::axpy(&mut c, &int(rng.gen_range(-1..=1)), z);
        }
        BlockMap::from_coordinates(t.n(), 0, Space::new(vd, "V"), Space::new(gd, "g"), &c).to_matrix()
    };
    let mut jet = DeformationJet::new(t.clone(), vec![]).expect("empty jet");
    for _ in 0..m {
        let next = if jet.order() == 0 {
            Some(random_cocycle(rng))
        } else {
            crate::deformation::extend(&jet).expect("valid jet").map(|x| x.add(&random_cocycle(rng)))
        };
        match next {
            Some(x) => jet = jet.extended(x).expect("shape"),
            None => break,
        }
    }
    jet
}
