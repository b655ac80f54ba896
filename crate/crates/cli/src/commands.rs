use gbm_core::broken::enumerate_broken;
use gbm_core::fock::{vacuum_expectation_dense, vacuum_expectation_dense_partition, vacuum_expectation_lambda};
use gbm_core::graph;
use gbm_core::partition::{double_factorial, enumerate_colored, PartitionJson};
use gbm_core::qproduct::{clt_error_curve, gram_psd_check, stirling_check, PSD_TOLERANCE};
use gbm_core::rational::{fmt_f64, to_string};
use gbm_core::thoma::ThomaParameter;
use gbm_core::tfunc::{t_colored, t_n, TFunction};
use gbm_core::word::rho_n;
use gbm_core::{ColoredPairPartition, Error, Q};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::input;
use crate::{CltArgs, CliError, CompareArgs, EnumerateArgs, EvalArgs, GraphArgs, OracleArgs, PdArgs, RunReport, StirlingArgs};

fn inputs(a: &impl Serialize) -> Value {
    serde_json::to_value(a).unwrap_or(Value::Null)
}

pub fn enumerate(a: &EnumerateArgs) -> Result<RunReport, CliError> {
    if a.colors == 0 {
        return Err(CliError::Usage("--colors must be at least 1".into()));
    }
    let mut r = RunReport::new("enumerate", inputs(a));
    let all = enumerate_colored(a.pairs, a.colors)?;
    let expected = (a.colors as u64).checked_pow(a.pairs as u32).map(|p| p * double_factorial(a.pairs));
    r.check("count is (2m-1)!! k^m", expected, all.len() as u64);
    let mut results = json!({ "count": all.len() });
    if !a.count_only {
        results["partitions"] = serde_json::to_value(all.iter().map(PartitionJson::from_colored).collect::<Vec<_>>()).unwrap();
    }
    r.results = results;
    Ok(r)
}

pub fn graph(a: &GraphArgs) -> Result<RunReport, CliError> {
    let p = input::partition(&a.partition)?;
    let g = graph::analyze(&p)?;
    let n = 2 * p.m();
    let mut r = RunReport::new("graph", inputs(a));
    let cycles: Vec<Value> = g
        .cycles
        .iter()
        .map(|c| json!({ "vertices": c.vertices, "inc_paths": c.inc_paths }))
        .collect();
    r.results = json!({
        "r": g.profile.r[1..],
        "p_other": g.profile.other[1..],
        "classification": g.classification[1..],
        "z": g.z[1..],
        "bar": PartitionJson::from_colored(&g.bar),
        "arcs_f": g.arcs_f,
        "arcs_bar_f": g.arcs_bar_f,
        "cycles": cycles,
        "gamma": g.gamma,
        "t_exponent": g.increasing_paths() - g.cycle_count(),
    });
    let involution = (1..=n).all(|k| g.z[k] != k && g.z[g.z[k]] == k);
    r.check("Z is a fixed-point-free involution", true, involution);
    let mut covered: Vec<usize> = g.cycles.iter().flat_map(|c| c.vertices.iter().copied()).collect();
    covered.sort_unstable();
    r.check("cycles partition the points", (1..=n).collect::<Vec<_>>(), covered);
    let balanced = g.cycles.iter().all(|c| c.inc_paths == c.dec_paths && c.inc_paths >= 1);
    r.check("increasing and decreasing paths alternate", true, balanced);
    Ok(r)
}

fn eval_t(a: &EvalArgs) -> Result<TFunction, CliError> {
    let need_n = || a.n.ok_or_else(|| CliError::Usage(format!("--t {} needs --N", a.t)));
    Ok(match a.t.as_str() {
        "tn" => {
            let n = need_n()?;
            if n == 0 {
                return Err(CliError::Usage("N must be nonzero".into()));
            }
            TFunction::TN(n)
        }
        "free" => TFunction::Free,
        "thoma" => match (&a.alpha, &a.beta, a.n) {
            (None, None, Some(n)) => TFunction::Thoma(ThomaParameter::thoma_n(n)?),
            _ => TFunction::Thoma(ThomaParameter::new(
                input::rational_list(a.alpha.as_deref())?,
                input::rational_list(a.beta.as_deref())?,
            )?),
        },
        "tensor" => {
            let minus = a.minus.as_deref().ok_or_else(|| CliError::Usage("--t tensor needs --minus".into()))?;
            let plus = a.plus.as_deref().ok_or_else(|| CliError::Usage("--t tensor needs --plus".into()))?;
            TFunction::Tensor(Box::new(input::t_spec(minus)?), Box::new(input::t_spec(plus)?))
        }
        other => return Err(CliError::Usage(format!("unknown t-function {other}"))),
    })
}

pub fn eval(a: &EvalArgs) -> Result<RunReport, CliError> {
    let p = input::partition(&a.partition)?;
    let t = eval_t(a)?;
    let mut r = RunReport::new("eval", inputs(a));
    let value = if p.num_colors() == 1 { t.eval_uncolored(p.base())? } else { t.eval(&p)? };
    if let (TFunction::TN(n), 2) = (&t, p.num_colors()) {
        let via_thoma = t_colored(&ThomaParameter::thoma_n(*n)?, &p)?;
        r.check("t_N agrees with the Thoma formula at thoma_N", to_string(&via_thoma), to_string(&value));
    }
    r.results = json!({ "value": to_string(&value) });
    Ok(r)
}

/// `None` when the oracle declines the instance (capacity or scope), errors otherwise.
fn optional(x: gbm_core::Result<Q>) -> Result<Option<Q>, CliError> {
    match x {
        Ok(v) => Ok(Some(v)),
        Err(Error::Capacity(_) | Error::Unsupported(_)) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn opt_str(x: &Option<Q>) -> Value {
    x.as_ref().map_or(Value::Null, |v| Value::String(to_string(v)))
}

pub fn oracle(a: &OracleArgs) -> Result<RunReport, CliError> {
    let mut r = RunReport::new("oracle", inputs(a));
    if let Some(w) = &a.word {
        let w = input::word(w)?;
        let dense = vacuum_expectation_dense(&w, a.n)?;
        let formula = rho_n(&w, a.n)?;
        r.check("dense oracle equals the sum over compatible partitions", to_string(&formula), to_string(&dense));
        r.results = json!({ "value": to_string(&dense), "formula": to_string(&formula) });
    } else if let Some(p) = &a.partition {
        let p = input::partition(p)?;
        let formula = t_n(a.n, &p)?;
        let dense = optional(vacuum_expectation_dense_partition(&p, a.n))?;
        let lambda = optional(vacuum_expectation_lambda(&p, a.n))?;
        if dense.is_none() && lambda.is_none() {
            return Err(CliError::Capacity(format!("no oracle covers m = {} at N = {}", p.m(), a.n)));
        }
        for (name, v) in [("dense", &dense), ("lambda", &lambda)] {
            if let Some(v) = v {
                r.check(format!("{name} oracle equals t_N"), to_string(&formula), to_string(v));
            }
        }
        r.results = json!({ "formula": to_string(&formula), "dense": opt_str(&dense), "lambda": opt_str(&lambda) });
    }
    Ok(r)
}

struct Row {
    formula: Q,
    thoma: Q,
    dense: Option<Q>,
    lambda: Option<Q>,
}

pub fn compare(a: &CompareArgs) -> Result<RunReport, CliError> {
    if a.n == 0 {
        return Err(CliError::Usage("N must be nonzero".into()));
    }
    let mut r = RunReport::new("compare", inputs(a));
    let tp = ThomaParameter::thoma_n(a.n)?;
    let mut rows = Vec::new();
    let mut mismatches = Vec::new();
    for m in 1..=a.max_pairs {
        let parts = enumerate_colored(m, 2)?;
        let computed: Vec<Result<Row, CliError>> = parts
            .par_iter()
            .map(|p| {
                Ok(Row {
                    formula: t_n(a.n, p)?,
                    thoma: t_colored(&tp, p)?,
                    dense: optional(vacuum_expectation_dense_partition(p, a.n))?,
                    lambda: optional(vacuum_expectation_lambda(p, a.n))?,
                })
            })
            .collect();
        let mut agree = [0usize; 3];
        let mut skipped = [0usize; 3];
        for (p, row) in parts.iter().zip(computed) {
            let row = row?;
            let cols = [Some(&row.thoma), row.dense.as_ref(), row.lambda.as_ref()];
            for (j, c) in cols.iter().enumerate() {
                match c {
                    None => skipped[j] += 1,
                    Some(v) if **v == row.formula => agree[j] += 1,
                    Some(v) => mismatches.push(mismatch(p, ["thoma", "dense", "lambda"][j], &row.formula, v)),
                }
            }
        }
        let total = parts.len();
        let mut row = json!({ "m": m, "instances": total });
        for (j, name) in ["thoma", "dense", "lambda"].iter().enumerate() {
            row[*name] = json!({ "agree": agree[j], "skipped": skipped[j] });
            r.check(format!("m={m} {name} equals t_N"), total - skipped[j], agree[j]);
        }
        rows.push(row);
    }
    r.results = json!({ "rows": rows, "mismatches": mismatches });
    Ok(r)
}

fn mismatch(p: &ColoredPairPartition, method: &str, formula: &Q, got: &Q) -> Value {
    json!({
        "partition": PartitionJson::from_colored(p),
        "method": method,
        "formula": to_string(formula),
        "value": to_string(got),
    })
}

pub fn clt(a: &CltArgs) -> Result<RunReport, CliError> {
    let q = input::q_matrix(&a.q)?;
    let v = input::partition(&a.v)?;
    let t = match a.t.as_str() {
        "tn" => match a.n_param {
            Some(n) if n != 0 => TFunction::TN(n),
            _ => return Err(CliError::Usage("--t tn needs a nonzero --N".into())),
        },
        _ => TFunction::Free,
    };
    if a.ns.is_empty() || a.ns.contains(&0) {
        return Err(CliError::Usage("--n needs positive sizes".into()));
    }
    let mut r = RunReport::new("clt", inputs(a));
    let (limit, curve) = clt_error_curve(&t, &q, v.base(), &a.ns)?;
    let points: Vec<Value> = curve
        .iter()
        .map(|c| {
            json!({
                "n": c.n,
                "value": to_string(&c.value),
                "error": to_string(&c.error),
                "n_times_error": to_string(&(&c.error * Q::from_integer(c.n.into()))),
            })
        })
        .collect();
    let (first, last) = (curve.iter().min_by_key(|c| c.n).unwrap(), curve.iter().max_by_key(|c| c.n).unwrap());
    r.check_with(
        format!("error(n={}) <= error(n={})", last.n, first.n),
        format!("<= {}", to_string(&first.error)),
        to_string(&last.error),
        last.error <= first.error,
    );
    r.results = json!({ "limit": to_string(&limit), "curve": points });
    Ok(r)
}

pub fn pd_check(a: &PdArgs) -> Result<RunReport, CliError> {
    if a.n == 0 {
        return Err(CliError::Usage("N must be nonzero".into()));
    }
    let t = match a.t.as_str() {
        "qproduct" => {
            let path = a.q.as_deref().ok_or_else(|| CliError::Usage("--t qproduct needs --Q".into()))?;
            let q = input::q_matrix(path)?;
            if q.size() != a.colors {
                return Err(CliError::Usage(format!("Q is {0}x{0} but --colors is {1}", q.size(), a.colors)));
            }
            TFunction::QProduct { parts: vec![TFunction::TN(a.n); a.colors], q }
        }
        "free" => TFunction::Free,
        _ => TFunction::TN(a.n),
    };
    let family = enumerate_broken(a.max_points, a.colors)?;
    let rep = gram_psd_check(&family, &t)?;
    let mut r = RunReport::new("pd-check", inputs(a));
    r.check("Gram matrix is symmetric", true, rep.symmetric);
    r.check_with(
        "smallest eigenvalue",
        format!(">= {PSD_TOLERANCE:e}"),
        fmt_f64(rep.min_eigenvalue),
        rep.min_eigenvalue >= PSD_TOLERANCE,
    );
    r.results = json!({
        "family_size": rep.family_size,
        "blocks": rep.blocks,
        "largest_block": rep.largest_block,
        "min_eigenvalue": fmt_f64(rep.min_eigenvalue),
    });
    Ok(r)
}

pub fn stirling(a: &StirlingArgs) -> Result<RunReport, CliError> {
    let rep = stirling_check(a.n)?;
    let mut r = RunReport::new("stirling", inputs(a));
    r.check("sum by enumeration", "0", rep.by_enumeration.to_string());
    r.check("sum by Stirling numbers", "0", rep.by_stirling.to_string());
    r.check("rising factorial", "0", rep.by_rising_factorial.to_string());
    r.results = json!({
        "value": rep.by_enumeration.to_string(),
        "by_stirling": rep.by_stirling.to_string(),
        "by_rising_factorial": rep.by_rising_factorial.to_string(),
        "pass": rep.pass,
    });
    Ok(r)
}
