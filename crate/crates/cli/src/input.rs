use std::io::Read;
use std::path::Path;

use chipfire_core::bigjson::int_vec_from_json;
use chipfire_core::{parse_complex, ComplexDocument, Face, IntChain};
use num_bigint::BigInt;
use serde_json::Value;

pub type CliResult<T> = Result<T, String>;

fn read_source(path: &Path) -> CliResult<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| format!("reading standard input: {e}"))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| format!("reading {}: {e}", path.display()))
}

pub fn load_document(path: &Path) -> CliResult<ComplexDocument> {
    let text = read_source(path)?;
    parse_complex(&text).map_err(|e| format!("{}: {e}", path.display()))
}

/// Inline JSON when the argument looks like JSON, otherwise a file name.
fn json_arg(arg: &str) -> CliResult<Value> {
    let t = arg.trim_start();
    let text = if t.starts_with('[') || t.starts_with('{') {
        arg.to_string()
    } else {
        read_source(Path::new(arg))?
    };
    serde_json::from_str(&text).map_err(|e| format!("invalid JSON in {arg:?}: {e}"))
}

/// A coefficient list, or an object with `coeffs` (and optionally `dim`).
pub fn coefficients(arg: &str) -> CliResult<(Option<i32>, Vec<BigInt>)> {
    let v = json_arg(arg)?;
    let (dim, coeffs) = match &v {
        Value::Object(m) => (
            m.get("dim").and_then(Value::as_i64).map(|d| d as i32),
            m.get("coeffs")
                .ok_or_else(|| format!("{arg:?} has no \"coeffs\""))?,
        ),
        _ => (None, &v),
    };
    Ok((dim, int_vec_from_json(coeffs).map_err(|e| e.to_string())?))
}

pub fn faces(arg: &str) -> CliResult<Vec<Face>> {
    let v = json_arg(arg)?;
    let bad = || format!("{arg:?} is not a list of faces");
    v.as_array()
        .ok_or_else(bad)?
        .iter()
        .map(|f| {
            f.as_array()
                .ok_or_else(bad)?
                .iter()
                .map(|x| x.as_u64().and_then(|x| u32::try_from(x).ok()).ok_or_else(bad))
                .collect()
        })
        .collect()
}

/// Face dimension from the flag, the chain argument, or the embedded chain.
pub fn resolve_dim(flag: Option<i32>, chain_dim: Option<i32>, doc: &ComplexDocument) -> CliResult<i32> {
    flag.or(chain_dim)
        .or(doc.chain.as_ref().map(|c| c.dim))
        .ok_or_else(|| "no dimension given: pass -i/--dim".to_string())
}

pub fn chain(doc: &ComplexDocument, dim: i32, arg: Option<&str>) -> CliResult<IntChain> {
    match arg {
        Some(a) => {
            let (_, coeffs) = coefficients(a)?;
            doc.complex.chain(dim, coeffs).map_err(|e| e.to_string())
        }
        None => match &doc.chain {
            Some(c) if c.dim == dim => Ok(c.clone()),
            Some(c) => Err(format!(
                "embedded chain has dimension {}, not {dim}",
                c.dim
            )),
            None => Err("no chain given: pass --chain".into()),
        },
    }
}
