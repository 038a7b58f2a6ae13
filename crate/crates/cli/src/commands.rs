//! The four pipelines behind the `nlie` subcommands. An `Err` is an input
//! problem (exit code 2); mathematical failures are reported in the
//! [`Report`] verdict.

use serde_json::{json, Value};

use nlie_core::cochain::cohomology_table;
use nlie_core::deformation::{extend, find_equivalence, obstruction, DeformationJet};
use nlie_core::kernel::{format_scalar, zero_vector, Matrix, Scalar, WedgeBasis};
use nlie_core::lift::{
    admissibility_report, build_gf, build_varrho, find_center, is_central, lift_rb, normalize_center,
    verify_operator_chain_map, verify_pair_chain_map, TraceFunctional,
};
use nlie_core::multilinear::BlockMap;
use nlie_core::nlie::{check_symplectic, Representation};
use nlie_core::rota_baxter::{check_rb, RBOperator};
use nlie_core::{Error, Result};

use crate::problem::{matrix_text, sparse_text, vector_text, ProblemFile};
use crate::report::{Report, Status};

/// Degree bound for the basis-wise chain-map checks of `lift`.
pub const CHAIN_MAP_DEGREE: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Pair,
    Operator,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeformAction {
    Check,
    Extend,
    Equivalence,
}

/// Nonzero values of a cochain, keyed by 1-based blocks and tail.
fn map_entries(m: &BlockMap) -> Value {
    let layout = m.layout();
    let entries: Vec<Value> = m
        .entries()
        .filter(|(_, v)| v.iter().any(|x| !num_traits::Zero::is_zero(x)))
        .map(|(key, v)| {
            let (blocks, tail) = layout.key_indices(key);
            let blocks: Vec<Vec<usize>> = blocks.iter().map(|b| b.iter().map(|i| i + 1).collect()).collect();
            json!({ "blocks": blocks, "tail": tail + 1, "value": sparse_text(v) })
        })
        .collect();
    Value::Array(entries)
}

fn wedge_entries(x: &[Scalar], wedge: &WedgeBasis) -> Value {
    let entries: Vec<Value> = x
        .iter()
        .enumerate()
        .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
        .map(|(k, c)| {
            let block: Vec<usize> = wedge.subset(k).iter().map(|i| i + 1).collect();
            json!({ "block": block, "coeff": format_scalar(c) })
        })
        .collect();
    Value::Array(entries)
}

/// Filippov and representation checks; the pair is returned only if both
/// hold.
fn checked_pair(report: &mut Report, file: &ProblemFile) -> Result<Option<Representation>> {
    let rep = file.representation()?;
    let ok = report.check("filippov", rep.algebra().check_filippov());
    let ok = report.check("representation", rep.check()) && ok;
    Ok(ok.then_some(rep))
}

fn required<T>(x: Option<T>, what: &str) -> Result<T> {
    x.ok_or_else(|| Error::Precondition(format!("the problem file has no {what}")))
}

pub fn cmd_verify(file: &ProblemFile) -> Result<Report> {
    let mut report = Report::new("verify");
    let rep = file.representation()?;
    report.check("filippov", rep.algebra().check_filippov());
    report.check("representation", rep.check());
    match file.symplectic_form()? {
        Some(w) => {
            report.check("symplectic", check_symplectic(rep.algebra(), &w));
        }
        None => report.absent("symplectic"),
    }
    match file.operator()? {
        Some(t) => {
            report.check("rota-baxter", check_rb(&rep, &t));
        }
        None => report.absent("rota-baxter"),
    }
    match file.functional()? {
        Some(f) => {
            report.check("admissible", admissibility_report(rep.algebra(), &f));
        }
        None => report.absent("admissible"),
    }
    Ok(report)
}

pub fn cmd_cohomology(file: &ProblemFile, max_m: usize, target: Target) -> Result<Report> {
    let mut report = Report::new("cohomology");
    let t = match target {
        Target::Pair => None,
        Target::Operator => Some(required(file.operator()?, "operator T")?),
    };
    let Some(rep) = checked_pair(&mut report, file)? else {
        return Ok(report);
    };
    match t {
        None => {
            report.set("target", "pair");
            report.table = cohomology_table(&rep, max_m.max(1));
        }
        Some(t) => {
            report.set("target", "operator");
            if !report.check("rota-baxter", check_rb(&rep, &t)) {
                return Ok(report);
            }
            report.table = RBOperator::new(rep, t)?.cohomology_table(max_m);
        }
    }
    Ok(report)
}

pub fn cmd_deform(file: &ProblemFile, action: DeformAction) -> Result<Report> {
    let mut report = Report::new("deform");
    let t = required(file.operator()?, "operator T")?;
    let coeffs = required(file.deformation_coefficients()?, "deformation coefficients")?;
    if action == DeformAction::Equivalence && coeffs.len() < 2 {
        return Err(Error::Parse("equivalence needs two deformation coefficients (T1 and T1')".into()));
    }
    let Some(rep) = checked_pair(&mut report, file)? else {
        return Ok(report);
    };
    if !report.check("rota-baxter", check_rb(&rep, &t)) {
        return Ok(report);
    }
    let op = RBOperator::new(rep, t)?;
    match action {
        DeformAction::Check | DeformAction::Extend => {
            report.set("action", if action == DeformAction::Check { "check" } else { "extend" });
            let jet = DeformationJet::new(op, coeffs)?;
            if !jet_orders(&mut report, &jet) {
                return Ok(report);
            }
            let obs = obstruction(&jet)?;
            report.line(
                "theta-cocycle",
                if obs.cocycle_checked { Status::Pass } else { Status::Fail },
                Some(format!("order {}", jet.order())),
            );
            report.set("theta", map_entries(&obs.theta));
            if action == DeformAction::Extend {
                match extend(&jet)? {
                    Some(next) => {
                        report.line("extension", Status::Pass, Some(format!("order {} re-verified", jet.order() + 1)));
                        report.set("next", matrix_text(&next));
                    }
                    None => report.line("extension", Status::Fail, Some("obstructed: theta is not a coboundary".into())),
                }
            }
        }
        DeformAction::Equivalence => {
            report.set("action", "equivalence");
            let (t1, t1p) = (&coeffs[0], &coeffs[1]);
            let a = report.check("cocycle-T1", cocycle_report(&op, t1)?);
            let b = report.check("cocycle-T1'", cocycle_report(&op, t1p)?);
            if !(a && b) {
                return Ok(report);
            }
            match find_equivalence(&op, t1, t1p)? {
                Some(x) => {
                    report.line("equivalence", Status::Pass, None);
                    report.set("X", wedge_entries(&x, op.rep().wedge()));
                }
                None => report.line("equivalence", Status::Fail, Some("T1' - T1 is not a coboundary".into())),
            }
        }
    }
    Ok(report)
}

fn cocycle_report(op: &RBOperator, m: &Matrix) -> Result<nlie_core::report::CheckReport> {
    let d = op.coboundary(&nlie_core::rota_baxter::OperatorCochain::Map(BlockMap::from_matrix(
        op.n(),
        nlie_core::multilinear::Space::new(op.rep().v_dim(), "V"),
        nlie_core::multilinear::Space::new(op.rep().g_dim(), "g"),
        m,
    )))?;
    let d = d.as_map().expect("degree 2").clone();
    Ok(if d.is_zero() {
        nlie_core::report::CheckReport::pass()
    } else {
        let z = zero_vector(d.space_dim());
        nlie_core::report::CheckReport::fail(nlie_core::report::Witness::new("cocycle", vec![], &d.coordinates(), &z))
    })
}

/// One line per order; orders after the first failure are skipped.
fn jet_orders(report: &mut Report, jet: &DeformationJet) -> bool {
    let r = jet.check_order_m();
    let failed = r.failed_order;
    for s in 0..=jet.order() {
        let status = match failed {
            Some(f) if s == f => Status::Fail,
            Some(f) if s > f => Status::Skipped,
            _ => Status::Pass,
        };
        report.line(&format!("order-{s}"), status, None);
    }
    if let Some(mut w) = r.witness {
        for a in &mut w.args {
            *a += 1;
        }
        report.witnesses.push(w);
    }
    r.holds
}

/// Runs the lift and returns the report with the (n+1) problem file when
/// the functional is admissible.
pub fn cmd_lift(file: &ProblemFile) -> Result<(Report, Option<ProblemFile>)> {
    let mut report = Report::new("lift");
    let f: TraceFunctional = required(file.functional()?, "functional f")?;
    let t = file.operator()?;
    let x0_given = file.center_element()?;
    let Some(rep) = checked_pair(&mut report, file)? else {
        return Ok((report, None));
    };
    if !report.check("admissible", admissibility_report(rep.algebra(), &f)) {
        return Ok((report, None));
    }
    let gf = build_gf(rep.algebra(), &f)?;
    let varrho = build_varrho(&rep, &f)?;
    report.check("gf-filippov", gf.check_filippov());
    report.check("gf-admissible", admissibility_report(&gf, &f));
    report.check("varrho-representation", varrho.check());
    report.check("pair-chain-map", verify_pair_chain_map(&rep, &f, CHAIN_MAP_DEGREE)?);
    match &t {
        None => {
            for name in ["rota-baxter", "lifted-rota-baxter", "operator-chain-map"] {
                report.absent(name);
            }
        }
        Some(tm) => {
            if report.check("rota-baxter", check_rb(&rep, tm)) {
                let op = RBOperator::new(rep.clone(), tm.clone())?;
                let lifted = lift_rb(&op, &f)?;
                report.check("lifted-rota-baxter", lifted.check());
                let ft = f.compose(tm);
                report.check("fT-admissible", admissibility_report(&op.induced_bracket(), &ft));
                let same = lifted.induced_bracket() == build_gf(&op.induced_bracket(), &ft)?;
                report.line("lifted-bracket", if same { Status::Pass } else { Status::Fail }, None);
                operator_chain_map(&mut report, &op, &f, x0_given)?;
            }
        }
    }
    let out = ProblemFile::from_parts(&varrho, t.as_ref(), Some(&f));
    Ok((report, Some(out)))
}

fn operator_chain_map(report: &mut Report, op: &RBOperator, f: &TraceFunctional, x0_given: Option<Vec<Scalar>>) -> Result<()> {
    let rep = op.rep();
    let x0 = match x0_given {
        Some(x) => {
            if !report.check("x0-central", central_report(rep, &x)) {
                return Ok(());
            }
            Some(x)
        }
        None => find_center(rep).iter().find_map(|c| normalize_center(c, f, op.n())),
    };
    match &x0 {
        Some(x) => report.set("x0", vector_text(x)),
        None => report.line(
            "operator-chain-map-0",
            Status::Skipped,
            Some("no central x0 with (-1)^(n-1) f(x0) = 1; degree 0 collapses to x0 = 0".into()),
        ),
    }
    report.check("operator-chain-map", verify_operator_chain_map(op, f, x0.as_deref(), CHAIN_MAP_DEGREE)?);
    Ok(())
}

fn central_report(rep: &Representation, x: &[Scalar]) -> nlie_core::report::CheckReport {
    if is_central(rep, x) {
        nlie_core::report::CheckReport::pass()
    } else {
        nlie_core::report::CheckReport::fail(nlie_core::report::Witness::new("central", vec![], &x.to_vec(), &vec![]))
    }
}
