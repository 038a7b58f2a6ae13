//! End-to-end acceptance: twelve criteria, one PASS/FAIL line each.
//! Everything is exact; seeds are fixed.

use std::path::Path;
use std::process::Command;

use num_traits::Zero;
use rand::Rng;

use nlie_core::cochain::{check_bidegree_additivity, check_mc_pair, coboundary, graded_bracket, GradedElement};
use nlie_core::deformation::{extend, find_equivalence, obstruction, DeformationJet};
use nlie_core::kernel::{
    axpy, basis_vector, binomial, combinations, factorial, int, kernel_basis, sign_pow, solve_linear, zero_vector, Matrix,
    Scalar, Vector,
};
use nlie_core::lift::{
    build_gf, build_varrho, check_admissible, check_operator_chain_map, check_pair_chain_map, find_center, lift_rb,
    normalize_center,
};
use nlie_core::multilinear::{bidegree_of, BlockMap, Space};
use nlie_core::nlie::Representation;
use nlie_core::rota_baxter::{check_rb, DerivedBracketContext, OperatorCochain, RBOperator};
use nlie_core::samples::{self, rng};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn spaces(rep: &Representation) -> (Space, Space) {
    (Space::new(rep.v_dim(), "V"), Space::new(rep.g_dim(), "g"))
}

/// Validated operators: the known ones plus sparse search hits on random
/// pairs.
fn operator_corpus() -> Vec<(String, RBOperator)> {
    let mut out: Vec<(String, RBOperator)> = samples::known_operators().into_iter().map(|(k, t)| (k.to_string(), t)).collect();
    let mut r = rng(11);
    for i in 0..8 {
        let rep = samples::random_pair(&mut r);
        for (j, t) in samples::search_operators(&mut r, &rep, 60, 2).into_iter().enumerate() {
            out.push((format!("search-{i}-{j}"), RBOperator::new(rep.clone(), t).unwrap()));
        }
    }
    out.retain(|(_, t)| t.check().holds);
    out
}

fn criterion_1() -> Outcome {
    let mut r = rng(1);
    let mut pairs = 0;
    let mut cochains = 0;
    while pairs < 50 {
        let rep = samples::random_pair(&mut r);
        ensure(rep.algebra().check_filippov().holds && rep.check().holds, || "sampled pair is not valid".into())?;
        pairs += 1;
        let (g, v) = (rep.algebra().space().clone(), rep.module().clone());
        let max_blocks = if rep.n() == 2 { 2 } else { 1 };
        for blocks in 0..=max_blocks {
            let f = samples::random_map(&mut r, rep.n(), blocks, g.clone(), v.clone());
            let dd = coboundary(&rep, &coboundary(&rep, &f).unwrap()).unwrap();
            ensure(dd.is_zero(), || format!("pair {pairs}: dd f != 0 with {blocks} blocks"))?;
            cochains += 1;
        }
    }
    Ok(format!("{pairs} pairs, {cochains} cochains"))
}

fn criterion_2() -> Outcome {
    let mut r = rng(2);
    let mut triples = 0;
    let mut nonzero = 0;
    while triples < 100 {
        let n = r.gen_range(2..=3);
        let (gd, vd) = (2, 1);
        let degs: Vec<usize> = loop {
            let d: Vec<usize> = (0..3).map(|_| r.gen_range(0..=2)).collect();
            if d.iter().sum::<usize>() <= if n == 2 { 3 } else { 2 } {
                break d;
            }
        };
        let el: Vec<GradedElement> = degs
            .iter()
            .map(|&b| {
                let k = r.gen_range(0..=b * (n - 1));
                GradedElement::from_map(samples::random_homogeneous(&mut r, n, gd, vd, b, k).map).unwrap()
            })
            .collect();
        let (p, q, s) = (&el[0], &el[1], &el[2]);
        let (dp, dq, ds) = (degs[0] as i64, degs[1] as i64, degs[2] as i64);
        let pq = graded_bracket(p, q).unwrap().materialize();
        let qp = graded_bracket(q, p).unwrap().materialize();
        ensure(pq.combine(&qp, &sign_pow(dp * dq)).unwrap().is_zero(), || format!("antisymmetry fails for degrees {degs:?}"))?;
        let jac = GradedElement::linear_combination(vec![
            (sign_pow(dp * ds), graded_bracket(p, &graded_bracket(q, s).unwrap()).unwrap()),
            (sign_pow(dq * dp), graded_bracket(q, &graded_bracket(s, p).unwrap()).unwrap()),
            (sign_pow(ds * dq), graded_bracket(s, &graded_bracket(p, q).unwrap()).unwrap()),
        ])
        .unwrap();
        ensure(jac.is_zero(), || format!("Jacobi fails for degrees {degs:?} at n={n}"))?;
        if !pq.is_zero() {
            nonzero += 1;
        }
        triples += 1;
    }
    ensure(nonzero >= 30, || format!("only {nonzero} nonzero brackets"))?;
    Ok(format!("{triples} triples, {nonzero} with [P,Q] != 0"))
}

fn criterion_3() -> Outcome {
    let mut r = rng(3);
    let (mut good, mut bad) = (0, 0);
    for i in 0..110 {
        let rep = if i % 4 == 0 { samples::broken_pair(&mut r) } else { samples::random_pair(&mut r) };
        let axioms = rep.algebra().check_filippov().holds && rep.check().holds;
        ensure(check_mc_pair(&rep) == axioms, || format!("instance {i}: MC says {}, axioms say {axioms}", !axioms))?;
        if axioms {
            good += 1;
        } else {
            bad += 1;
        }
    }
    ensure(bad >= 20, || format!("only {bad} non-examples"))?;
    Ok(format!("{good} pairs, {bad} non-examples, 0 disagreements"))
}

fn criterion_4() -> Outcome {
    let mut r = rng(4);
    let mut pairs = 0;
    let mut nonzero = 0;
    while pairs < 50 {
        let n = r.gen_range(2..=3);
        let (gd, vd) = (2, r.gen_range(1..=2));
        let (bf, bg) = (r.gen_range(0..=1), r.gen_range(0..=1));
        let kf = r.gen_range(0..=bf * (n - 1));
        let kg = r.gen_range(0..=bg * (n - 1));
        let f = samples::random_homogeneous(&mut r, n, gd, vd, bf, kf);
        let g = samples::random_homogeneous(&mut r, n, gd, vd, bg, kg);
        if f.map.is_zero() || g.map.is_zero() {
            continue;
        }
        ensure(check_bidegree_additivity(&f, &g).unwrap(), || format!("pair {pairs}: bidegrees do not add"))?;
        let (a, b) = (bidegree_of(&f).unwrap(), bidegree_of(&g).unwrap());
        // the generator's own bookkeeping: k|l with k + l = blocks (n-1)
        ensure(a.k == kf as i64 && b.k == kg as i64, || "generator bidegree mismatch".into())?;
        let br = graded_bracket(&GradedElement::from_map(f.map.clone()).unwrap(), &GradedElement::from_map(g.map.clone()).unwrap())
            .unwrap()
            .materialize();
        if !br.is_zero() {
            nonzero += 1;
        }
        pairs += 1;
    }
    ensure(nonzero >= 20, || format!("only {nonzero} nonzero brackets"))?;
    Ok(format!("{pairs} pairs, {nonzero} nonzero brackets"))
}

/// `n! ([Tv_1..Tv_n] - Σ (-1)^{n-i} T ρ(Tv_1..^i..Tv_n) v_i)`, computed
/// directly from the bracket and the action.
fn defect_oracle(rep: &Representation, t: &Matrix) -> BlockMap {
    let n = rep.n();
    let vd = rep.v_dim();
    let (vs, gs) = spaces(rep);
    let nf = factorial(n);
    BlockMap::from_fn(n, 1, vs, gs, |bs, tail| {
        let mut idx = bs[0].clone();
        idx.push(tail);
        let tv: Vec<Vector> = idx.iter().map(|&i| t.column(i)).collect();
        let mut out = rep.algebra().bracket(&tv);
        for i in 0..n {
            let rest: Vec<Vector> = (0..n).filter(|&j| j != i).map(|j| tv[j].clone()).collect();
            let term = t.mul_vec(&rep.rho(&rest).mul_vec(&basis_vector(vd, idx[i])));
            axpy(&mut out, &-sign_pow((n - 1 - i) as i64), &term);
        }
        out.iter().map(|x| x * &nf).collect()
    })
}

fn criterion_5() -> Outcome {
    let mut r = rng(5);
    let (mut yes, mut no) = (0, 0);
    let corpus = operator_corpus();
    let mut cases: Vec<(Representation, Matrix)> = corpus.iter().map(|(_, t)| (t.rep().clone(), t.matrix().clone())).collect();
    while cases.len() < 110 {
        let rep = samples::random_pair(&mut r);
        let t = if r.gen_bool(0.5) {
            samples::sparse_matrix(&mut r, rep.g_dim(), rep.v_dim(), 0.3)
        } else {
            samples::low_rank_operator(&mut r, &rep)
        };
        cases.push((rep, t));
    }
    for (i, (rep, t)) in cases.iter().enumerate() {
        let ctx = DerivedBracketContext::new(rep).unwrap();
        let rb = check_rb(rep, t).holds;
        ensure(ctx.check_rb_mc(t) == rb, || format!("case {i}: {{T..T}} = 0 disagrees with the identity ({rb})"))?;
        let tc = BlockMap::from_matrix(rep.n(), Space::new(rep.v_dim(), "V"), Space::new(rep.g_dim(), "g"), t);
        let tt = ctx.derived_bracket(&vec![tc; rep.n()]).unwrap();
        ensure(tt == defect_oracle(rep, t), || format!("case {i}: {{T..T}} != n! defect"))?;
        if rb {
            yes += 1;
        } else {
            no += 1;
        }
    }
    ensure(yes >= 10 && no >= 10, || format!("unbalanced sample: {yes} operators, {no} non-operators"))?;
    Ok(format!("{} operators checked ({yes} RB, {no} not), n! identity exact", yes + no))
}

fn criterion_6() -> Outcome {
    let mut r = rng(6);
    let corpus = operator_corpus();
    let (mut pos, mut neg) = (0, 0);
    for (name, op) in &corpus {
        let ctx = DerivedBracketContext::new(op.rep()).unwrap();
        let t = op.matrix();
        let mut candidates: Vec<Matrix> = Vec::new();
        // multiples of an operator are operators (the identity is homogeneous)
        for c in [-1, 2, 3] {
            candidates.push(t.scale(&int(c)).sub(t));
        }
        for _ in 0..2 {
            candidates.push(samples::sparse_matrix(&mut r, t.rows(), t.cols(), 0.3));
        }
        for tp in candidates {
            let rb = check_rb(op.rep(), &t.add(&tp)).holds;
            let mc = ctx.twisted_mc(t, &tp).unwrap().is_zero();
            ensure(rb == mc, || format!("{name}: T+T' RB = {rb}, twisted MC = {mc}"))?;
            if rb {
                pos += 1;
            } else {
                neg += 1;
            }
        }
    }
    ensure(pos >= 30, || format!("only {pos} positive instances"))?;
    ensure(neg >= 5, || format!("only {neg} negative instances"))?;
    Ok(format!("{pos} operators T+T', {neg} non-operators, both directions agree"))
}

fn criterion_7() -> Outcome {
    let mut r = rng(7);
    let corpus = operator_corpus();
    for (name, op) in &corpus {
        let rep = op.rep();
        let (n, vd) = (op.n(), rep.v_dim());
        let t = op.matrix();
        let pl = op.pre_lie();
        ensure(pl.check().holds, || format!("{name}: pre-Lie axioms"))?;
        let bracket = op.induced_bracket();
        ensure(pl.sub_adjacent() == bracket, || format!("{name}: sub-adjacent bracket"))?;
        ensure(bracket.check_filippov().holds, || format!("{name}: induced bracket is not n-Lie"))?;
        for u in combinations(vd, n) {
            let lhs = t.mul_vec(&bracket.bracket_basis(&u));
            let tu: Vec<Vector> = u.iter().map(|&i| t.column(i)).collect();
            ensure(lhs == rep.algebra().bracket(&tu), || format!("{name}: T is not a morphism at {u:?}"))?;
        }
        let rho_t = op.rho_t();
        ensure(rho_t.check().holds, || format!("{name}: rho_T axioms"))?;
        for k in 0..rep.wedge().len() {
            let x = basis_vector(rep.wedge().len(), k);
            let dx = op.delta(&x).unwrap();
            let ddx = op.coboundary(&OperatorCochain::Map(dx)).unwrap();
            ensure(ddx.is_zero(), || format!("{name}: delta_T(x) is not a cocycle"))?;
            ensure(op.coboundary(&OperatorCochain::Wedge(x)).unwrap().as_map() == Some(&op.delta(&basis_vector(rep.wedge().len(), k)).unwrap()), || {
                format!("{name}: d on C^0 is not delta_T")
            })?;
        }
        let (vs, gs) = spaces(rep);
        for blocks in 0..2 {
            let f = samples::random_map(&mut r, n, blocks, vs.clone(), gs.clone());
            let d = op.coboundary(&OperatorCochain::Map(f)).unwrap();
            ensure(op.coboundary(&d).unwrap().is_zero(), || format!("{name}: dd != 0"))?;
        }
    }
    Ok(format!("{} validated operators", corpus.len()))
}

fn criterion_8() -> Outcome {
    let mut r = rng(8);
    let corpus = operator_corpus();
    let mut count = 0;
    let mut nonzero = 0;
    for round in 0.. {
        if count >= 36 {
            break;
        }
        let (_, op) = &corpus[round % corpus.len()];
        let ctx = DerivedBracketContext::new(op.rep()).unwrap();
        let (vs, gs) = spaces(op.rep());
        let m = round % 3 + 1;
        if op.n() == 3 && m == 3 && op.rep().v_dim() > 4 {
            continue;
        }
        let f = samples::random_map(&mut r, op.n(), m - 1, vs, gs);
        let df = op.coboundary(&OperatorCochain::Map(f.clone())).unwrap();
        let l1 = ctx.twisted_lk(op.matrix(), &[f]).unwrap().scale(&sign_pow((m - 1) as i64));
        ensure(df.as_map() == Some(&l1), || format!("round {round}: df != (-1)^(m-1) l1 f at m = {m}"))?;
        if !l1.is_zero() {
            nonzero += 1;
        }
        count += 1;
    }
    Ok(format!("{count} cochains of degree 1..3, {nonzero} with df != 0"))
}

/// Order-`s` coefficient of the identity for `T_t = Σ t^i T_i`, stacked
/// over increasing basis tuples of `V`.
fn order_residual(rep: &Representation, coeffs: &[Matrix], s: usize) -> Vector {
    let n = rep.n();
    let vd = rep.v_dim();
    let coeff = |i: usize| -> Option<&Matrix> { coeffs.get(i) };
    let tuples = |len: usize| -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for _ in 0..len {
            out = out.into_iter().flat_map(|p: Vec<usize>| (0..=s).map(move |i| [p.clone(), vec![i]].concat())).collect();
        }
        out.into_iter().filter(|p| p.iter().sum::<usize>() == s).collect()
    };
    let mut out = Vec::new();
    for u in combinations(vd, n) {
        let mut acc = zero_vector(rep.g_dim());
        for idx in tuples(n) {
            if idx.iter().all(|&i| coeff(i).is_some()) {
                let args: Vec<Vector> = (0..n).map(|j| coeff(idx[j]).unwrap().column(u[j])).collect();
                axpy(&mut acc, &Scalar::from_integer(1.into()), &rep.algebra().bracket(&args));
            }
        }
        for idx in tuples(n) {
            // idx[0] is the outer coefficient, idx[1..] the inner ones
            if !idx.iter().all(|&i| coeff(i).is_some()) {
                continue;
            }
            for k in 0..n {
                let rest: Vec<Vector> = (0..n).filter(|&j| j != k).enumerate().map(|(p, j)| coeff(idx[p + 1]).unwrap().column(u[j])).collect();
                let inner = rep.rho(&rest).mul_vec(&basis_vector(vd, u[k]));
                let term = coeff(idx[0]).unwrap().mul_vec(&inner);
                axpy(&mut acc, &-sign_pow((n - 1 - k) as i64), &term);
            }
        }
        out.extend(acc);
    }
    out
}

fn criterion_9() -> Outcome {
    let mut r = rng(9);
    let corpus = operator_corpus();
    let (mut jets, mut some, mut none, mut gauges) = (0, 0, 0, 0);
    for (name, op) in &corpus {
        if op.rep().v_dim() > 4 {
            continue;
        }
        let (gd, vd) = (op.rep().g_dim(), op.rep().v_dim());
        for m in 1..=2 {
            let mut jet = samples::random_jet(&mut r, op, m);
            if r.gen_bool(0.3) && jet.order() >= 1 {
                // a random, usually obstructed, top coefficient on an
                // otherwise valid jet
                let mut cs = jet.coefficients().to_vec();
                cs.pop();
                let cand = samples::sparse_matrix(&mut r, gd, vd, 0.4);
                let trial = DeformationJet::new(op.clone(), [cs, vec![cand]].concat()).unwrap();
                if trial.check_order_m().holds {
                    jet = trial;
                }
            }
            ensure(jet.check_order_m().holds, || format!("{name}: sampled jet invalid"))?;
            let all: Vec<Matrix> = (0..=jet.order()).map(|i| jet.coefficient(i).clone()).collect();
            for s in 0..=jet.order() {
                ensure(is_zero_vec(&order_residual(op.rep(), &all, s)), || format!("{name}: oracle rejects order {s}"))?;
            }
            let theta = obstruction(&jet).unwrap().theta;
            ensure(op.coboundary(&OperatorCochain::Map(theta)).unwrap().is_zero(), || format!("{name}: d theta != 0"))?;
            // linear system of the next order, built from the oracle
            let s = jet.order() + 1;
            let zero_next = [all.clone(), vec![Matrix::zeros(gd, vd)]].concat();
            let base = order_residual(op.rep(), &zero_next, s);
            let cols: Vec<Vector> = (0..gd * vd)
                .map(|c| {
                    let mut e = Matrix::zeros(gd, vd);
                    e[(c / vd, c % vd)] = int(1);
                    let res = order_residual(op.rep(), &[all.clone(), vec![e]].concat(), s);
                    res.iter().zip(&base).map(|(a, b)| a - b).collect()
                })
                .collect();
            let lin = Matrix::from_columns(&cols, base.len());
            let rhs: Vector = base.iter().map(|x| -x).collect();
            let oracle = solve_linear(&lin, &rhs).is_some();
            let got = extend(&jet).unwrap();
            ensure(got.is_some() == oracle, || format!("{name}: extend says {}, oracle says {oracle}", got.is_some()))?;
            if let Some(next) = got {
                let longer = jet.extended(next.clone()).unwrap();
                ensure(longer.check_order_m().holds, || format!("{name}: extension fails re-verification"))?;
                let all: Vec<Matrix> = [all, vec![next]].concat();
                ensure(is_zero_vec(&order_residual(op.rep(), &all, s)), || format!("{name}: oracle rejects extension"))?;
                some += 1;
            } else {
                none += 1;
            }
            jets += 1;
        }
        // planted gauge
        let cocycles = kernel_basis(&op.coboundary_matrix(1));
        let mut c = zero_vector(op.cochain_dim(1));
        for z in &cocycles {
            axpy(&mut c, &int(r.gen_range(-1..=1)), z);
        }
        let (vs, gs) = spaces(op.rep());
        let t1 = BlockMap::from_coordinates(op.n(), 0, vs, gs, &c).to_matrix();
        let x = samples::random_vector(&mut r, op.cochain_dim(0));
        let dx = op.delta(&x).unwrap().to_matrix();
        let found = find_equivalence(op, &t1, &t1.add(&dx)).unwrap();
        let y = found.ok_or_else(|| format!("{name}: planted gauge not recovered"))?;
        ensure(op.delta(&y).unwrap().to_matrix() == dx, || format!("{name}: recovered gauge has the wrong coboundary"))?;
        gauges += 1;
    }
    ensure(some > 0 && none > 0, || format!("extensions: {some} solvable, {none} obstructed; both kinds are needed"))?;
    Ok(format!("{jets} jets ({some} extendable, {none} obstructed), {gauges} planted gauges recovered"))
}

fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(|x| x.is_zero())
}

fn criterion_10() -> Outcome {
    let mut r = rng(10);
    let corpus = operator_corpus();
    let (mut configs, mut with_x0, mut cochains) = (0, 0, 0);
    for (name, op) in &corpus {
        let rep = op.rep();
        if rep.g_dim() + rep.v_dim() > 8 {
            continue;
        }
        for attempt in 0..2 {
            let f = samples::random_admissible(&mut r, rep.algebra());
            if f.is_zero() && attempt > 0 {
                continue;
            }
            ensure(check_admissible(rep.algebra(), &f), || format!("{name}: sampled f is not admissible"))?;
            let gf = build_gf(rep.algebra(), &f).unwrap();
            ensure(gf.check_filippov().holds, || format!("{name}: g_f fails Filippov"))?;
            let varrho = build_varrho(rep, &f).unwrap();
            ensure(varrho.check().holds, || format!("{name}: varrho fails the axioms"))?;
            let lifted = lift_rb(op, &f).unwrap();
            ensure(lifted.check().holds, || format!("{name}: lifted operator fails the identity"))?;
            let x0 = find_center(rep).iter().find_map(|c| normalize_center(c, &f, op.n()));
            let (gs, vs) = (rep.algebra().space().clone(), rep.module().clone());
            for degree in 1..=3 {
                let blocks = degree - 1;
                let p = if blocks == 0 {
                    samples::random_map(&mut r, op.n(), 0, gs.clone(), vs.clone())
                } else {
                    samples::random_liftable_map(&mut r, op.n(), blocks, gs.clone(), vs.clone())
                };
                ensure(check_pair_chain_map(rep, &f, &p).unwrap(), || format!("{name}: pair chain map fails in degree {degree}"))?;
                let q = if blocks == 0 {
                    samples::random_map(&mut r, op.n(), 0, vs.clone(), gs.clone())
                } else {
                    samples::random_liftable_map(&mut r, op.n(), blocks, vs.clone(), gs.clone())
                };
                let zero = zero_vector(rep.g_dim() + rep.v_dim());
                let ok = check_operator_chain_map(op, &f, x0.as_deref().unwrap_or(&zero), &OperatorCochain::Map(q)).unwrap();
                ensure(ok, || format!("{name}: operator chain map fails in degree {degree}"))?;
                cochains += 2;
            }
            if let Some(x0) = &x0 {
                let w = samples::random_vector(&mut r, rep.wedge().len());
                let ok = check_operator_chain_map(op, &f, x0, &OperatorCochain::Wedge(w)).unwrap();
                ensure(ok, || format!("{name}: operator chain map fails in degree 0"))?;
                with_x0 += 1;
                cochains += 1;
            }
            configs += 1;
        }
    }
    ensure(configs >= 20, || format!("only {configs} admissible configurations"))?;
    Ok(format!("{configs} configurations ({with_x0} with a normalized x0), {cochains} cochains"))
}

fn criterion_11() -> Outcome {
    let rep = Representation::zero(samples::abelian(3, 3), 2);
    let op = RBOperator::new(rep, Matrix::zeros(3, 2)).unwrap();
    let table = op.cohomology_table(4);
    // all differentials vanish: H^0 = dim ∧^2 g, H^m = dim Hom((∧^2 V)^{m-1} ⊗ V, g)
    let closed = |m: usize| if m == 0 { binomial(3, 2) } else { binomial(2, 2).pow(m as u32 - 1) * 2 * 3 };
    for row in &table {
        ensure(row.dim == closed(row.m), || format!("H^{} = {}, expected {}", row.m, row.dim, closed(row.m)))?;
    }
    let dims: Vec<usize> = table.iter().map(|r| r.dim).collect();
    ensure(dims == vec![3, 6, 6, 6, 6], || format!("table {dims:?}"))?;
    Ok(format!("H^0..H^4 = {dims:?}"))
}

fn criterion_12() -> Outcome {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data");
    let mut runs = 0;
    let mut entries: Vec<_> = std::fs::read_dir(&data).unwrap().map(|e| e.unwrap().path()).collect();
    entries.sort();
    for file in entries {
        let file = file.to_str().unwrap().to_string();
        for args in [
            vec!["--json", "verify", &file],
            vec!["--json", "cohomology", &file, "--max-m", "2"],
            vec!["--json", "cohomology", &file, "--max-m", "2", "--target", "operator"],
            vec!["--json", "deform", &file, "--action", "extend"],
            vec!["--json", "lift", &file],
        ] {
            let run = || Command::new(env!("CARGO_BIN_EXE_nlie")).args(&args).output().unwrap();
            let (a, b) = (run(), run());
            ensure(a.stdout == b.stdout && a.status == b.status, || format!("{args:?} differs between runs"))?;
            runs += 1;
        }
    }
    Ok(format!("{runs} command pairs byte-identical"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("complex squares to zero", criterion_1),
        ("graded Lie identities", criterion_2),
        ("pair Maurer-Cartan equivalence", criterion_3),
        ("bidegree additivity", criterion_4),
        ("operator Maurer-Cartan equivalence", criterion_5),
        ("twisted Maurer-Cartan", criterion_6),
        ("induced structures", criterion_7),
        ("sign relation d = (-1)^(m-1) l1", criterion_8),
        ("deformations", criterion_9),
        ("lifting", criterion_10),
        ("zero instance dimensions", criterion_11),
        ("deterministic reports", criterion_12),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.1}s]", i + 1),
            Err(why) => {
                println!("FAIL {:>2} {name}: {why} [{secs:.1}s]", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if !failed.is_empty() {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
