use nlie_core::cochain::{graded_bracket, twisted_differential, GradedElement};
use nlie_core::deformation::{extend, obstruction, DeformationJet};
use nlie_core::kernel::{basis_vector, combinations, int, Matrix, Vector};
use nlie_core::lift::{build_gf, build_varrho, lift_rb, TraceFunctional};
use nlie_core::multilinear::{bidegree_of, lift_to_sum, Bidegree, LiftSource, SumSpaceMap};
use nlie_core::nlie::{check_symplectic, symplectic_to_pre_lie, Representation, SymplecticForm};
use nlie_core::rota_baxter::{check_rb, DerivedBracketContext};
use nlie_core::samples::{self, rng};

fn hat(rep: &Representation) -> (SumSpaceMap, SumSpaceMap) {
    let mu = lift_to_sum(LiftSource::Bracket { mu: rep.algebra().bracket_map(), v_dim: rep.v_dim() }).unwrap();
    let rho = lift_to_sum(LiftSource::Action { n: rep.n(), g_dim: rep.g_dim(), v_dim: rep.v_dim(), action: rep.action() }).unwrap();
    (mu, rho)
}

fn element(m: &SumSpaceMap) -> GradedElement {
    GradedElement::from_map(m.map.clone()).unwrap()
}

#[test]
fn bidegrees_of_lifted_structures() {
    for n in [2, 3] {
        let a = if n == 2 { samples::heisenberg() } else { samples::nilpotent3() };
        let rep = Representation::adjoint(&a);
        let (mu, rho) = hat(&rep);
        let nn = n as i64;
        assert_eq!(bidegree_of(&mu), Some(Bidegree { k: nn - 1, l: 0 }));
        assert_eq!(bidegree_of(&rho), Some(Bidegree { k: nn - 1, l: 0 }));
        let br = SumSpaceMap::new(graded_bracket(&element(&mu), &element(&rho)).unwrap().materialize(), mu.split).unwrap();
        if !br.map.is_zero() {
            assert_eq!(bidegree_of(&br), Some(Bidegree { k: 2 * (nn - 1), l: 0 }));
        }
        let t = Matrix::identity(a.dim());
        let tc = nlie_core::multilinear::BlockMap::from_matrix(n, rep.module().clone(), a.space().clone(), &t);
        let th = lift_to_sum(LiftSource::Operator { p: &tc }).unwrap();
        assert_eq!(bidegree_of(&th), Some(Bidegree { k: -1, l: 1 }));
        let delta = GradedElement::linear_combination(vec![(int(1), element(&mu)), (int(1), element(&rho))]).unwrap();
        let br = SumSpaceMap::new(graded_bracket(&delta, &element(&th)).unwrap().materialize(), mu.split).unwrap();
        assert_eq!(bidegree_of(&br), Some(Bidegree { k: nn - 2, l: 1 }));
    }
}

#[test]
fn twisted_differential_squares_to_zero() {
    let mut r = rng(21);
    for _ in 0..5 {
        let rep = samples::random_pair(&mut r);
        let (mu, rho) = hat(&rep);
        let pi = GradedElement::linear_combination(vec![(int(1), element(&mu)), (int(1), element(&rho))]).unwrap();
        let f = samples::random_homogeneous(&mut r, rep.n(), rep.g_dim(), rep.v_dim(), 0, 0);
        let df = twisted_differential(&pi, &element(&f)).unwrap();
        assert!(twisted_differential(&pi, &df).unwrap().is_zero());
    }
}

#[test]
fn sub_adjacent_of_induced_pre_lie_is_n_lie() {
    for (name, op) in samples::known_operators() {
        let p = op.pre_lie();
        assert!(p.check().holds, "{name}");
        assert!(p.sub_adjacent().check_filippov().holds, "{name}");
        let l = p.left_mult_rep();
        assert!(l.check().holds, "{name}");
        assert!(check_rb(&l, &Matrix::identity(p.dim())).holds, "{name}");
    }
}

#[test]
fn symplectic_structure_gives_compatible_pre_lie() {
    let a = samples::nilpotent3();
    let mut w = Matrix::zeros(4, 4);
    for (i, j) in [(0, 3), (1, 2)] {
        w[(i, j)] = int(1);
        w[(j, i)] = int(-1);
    }
    let w = SymplecticForm::new(w);
    assert!(check_symplectic(&a, &w).holds);
    let p = symplectic_to_pre_lie(&a, &w).unwrap();
    assert!(p.check().holds);
    assert_eq!(p.sub_adjacent(), a);
    let t = w.flat_inverse().unwrap();
    assert!(check_rb(&Representation::coadjoint(&a), &t).holds);
}

#[test]
fn theta_agrees_with_derived_bracket_form() {
    let mut r = rng(22);
    for (name, op) in samples::known_operators() {
        let ctx = DerivedBracketContext::new(op.rep()).unwrap();
        for m in 1..=2 {
            let jet = samples::random_jet(&mut r, &op, m);
            assert_eq!(jet.theta(), jet.theta_from_brackets(&ctx).unwrap(), "{name} m={m}");
        }
    }
}

#[test]
fn constant_jet_has_zero_obstruction() {
    for (name, op) in samples::known_operators() {
        let jet = DeformationJet::constant(op, 2);
        assert!(obstruction(&jet).unwrap().theta.is_zero(), "{name}");
        assert!(extend(&jet).unwrap().unwrap().is_zero(), "{name}");
    }
}

#[test]
fn varrho_is_antisymmetric_in_its_slots() {
    let mut r = rng(23);
    for (name, a) in samples::catalogue() {
        let rep = samples::pair_over(&mut r, &a);
        let f = samples::random_admissible(&mut r, &a);
        let varrho = build_varrho(&rep, &f).unwrap();
        let d = a.dim();
        let e = |i: usize| -> Vector { basis_vector(d, i) };
        for blk in combinations(d, rep.n()) {
            let xs: Vec<Vector> = blk.iter().map(|&i| e(i)).collect();
            let mut swapped = xs.clone();
            swapped.swap(0, 1);
            assert_eq!(varrho.rho(&xs), varrho.rho(&swapped).scale(&int(-1)), "{name} {blk:?}");
        }
    }
}

#[test]
fn lifted_operator_and_its_bracket() {
    let mut r = rng(24);
    for (name, op) in samples::known_operators() {
        let f = samples::random_admissible(&mut r, op.rep().algebra());
        let lifted = lift_rb(&op, &f).unwrap();
        assert!(lifted.check().holds, "{name}");
        let ft: TraceFunctional = f.compose(op.matrix());
        assert_eq!(lifted.induced_bracket(), build_gf(&op.induced_bracket(), &ft).unwrap(), "{name}");
        let zero = TraceFunctional::new(vec![int(0); op.rep().g_dim()]);
        assert!(build_varrho(op.rep(), &zero).unwrap().is_zero(), "{name}");
    }
}
