use std::fs;

use gbm_core::partition::PartitionJson;
use gbm_core::qproduct::QMatrix;
use gbm_core::rational;
use gbm_core::thoma::ThomaParameter;
use gbm_core::tfunc::TFunction;
use gbm_core::word::Word;
use gbm_core::{ColoredPairPartition, Q};
use serde::de::DeserializeOwned;
use serde_json::Value;

use crate::CliError;

/// A JSON argument: inline when it starts with `{` or `[`, otherwise a file path.
pub fn load<T: DeserializeOwned>(arg: &str) -> Result<T, CliError> {
    let text = if arg.trim_start().starts_with(['{', '[']) {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| CliError::Usage(format!("cannot read {arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("malformed JSON in {arg}: {e}")))
}

pub fn partition(arg: &str) -> Result<ColoredPairPartition, CliError> {
    let j: PartitionJson = load(arg)?;
    Ok(j.to_colored()?)
}

pub fn word(arg: &str) -> Result<Word, CliError> {
    let w: Word = load(arg)?;
    Ok(Word::new(w.0)?)
}

pub fn rational(s: &str) -> Result<Q, CliError> {
    rational::parse(s).ok_or_else(|| CliError::Usage(format!("not a rational: {s:?}")))
}

fn rational_value(v: &Value) -> Result<Q, CliError> {
    match v {
        Value::String(s) => rational(s),
        Value::Number(n) if n.is_i64() => Ok(rational::int(n.as_i64().unwrap())),
        _ => Err(CliError::Usage(format!("matrix entries must be integers or \"p/q\" strings, got {v}"))),
    }
}

pub fn q_matrix(arg: &str) -> Result<QMatrix, CliError> {
    let rows: Vec<Vec<Value>> = load(arg)?;
    let q = rows.iter().map(|r| r.iter().map(rational_value).collect()).collect::<Result<Vec<Vec<Q>>, _>>()?;
    Ok(QMatrix::new(q)?)
}

pub fn rational_list(s: Option<&str>) -> Result<Vec<Q>, CliError> {
    match s {
        None => Ok(Vec::new()),
        Some(s) if s.trim().is_empty() => Ok(Vec::new()),
        Some(s) => s.split(',').map(rational).collect(),
    }
}

/// `free`, `tn:N`, `thoma:a1,a2;b1,b2`.
pub fn t_spec(s: &str) -> Result<TFunction, CliError> {
    let (kind, rest) = s.split_once(':').unwrap_or((s, ""));
    match kind {
        "free" => Ok(TFunction::Free),
        "tn" => {
            let n: i64 = rest.parse().map_err(|_| CliError::Usage(format!("bad N in {s:?}")))?;
            if n == 0 {
                return Err(CliError::Usage("N must be nonzero".into()));
            }
            Ok(TFunction::TN(n))
        }
        "thoma" => {
            let (a, b) = rest.split_once(';').unwrap_or((rest, ""));
            let tp = ThomaParameter::new(rational_list(Some(a))?, rational_list(Some(b))?)?;
            Ok(TFunction::Thoma(tp))
        }
        _ => Err(CliError::Usage(format!("unknown t-function {s:?}; use free, tn:N or thoma:alpha;beta"))),
    }
}
