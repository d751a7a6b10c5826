//! Number rounding and the two text encodings.

use serde::Serialize;
use serde_json::Value;

use crate::error::Result;

pub const DEFAULT_PRECISION: usize = 12;
pub const MIN_PRECISION: usize = 6;
pub const MAX_PRECISION: usize = 17;

/// `x` rounded to `digits` significant decimal digits. Non-finite values
/// pass through.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", digits.saturating_sub(1), x)
        .parse()
        .expect("LowerExp output always parses back")
}

/// CSV cell for a number: plain decimal in the usual range, exponent form
/// outside it, `NaN`/`inf` spelled the way most readers accept.
pub fn csv_number(x: f64, digits: usize) -> String {
    let r = round_sig(x, digits);
    if r.is_nan() {
        "NaN".to_string()
    } else if r.is_infinite() {
        if r > 0.0 { "inf" } else { "-inf" }.to_string()
    } else if r == 0.0 || (1e-4..1e15).contains(&r.abs()) {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}

pub fn csv_optional(x: Option<f64>, digits: usize) -> String {
    x.map(|v| csv_number(v, digits)).unwrap_or_default()
}

fn round_value(v: &mut Value, digits: usize) {
    match v {
        Value::Number(n) => {
            if let Some(f) = n.as_f64().filter(|_| !n.is_i64() && !n.is_u64()) {
                *v = serde_json::Number::from_f64(round_sig(f, digits)).map_or(Value::Null, Value::Number);
            }
        }
        Value::Array(items) => items.iter_mut().for_each(|x| round_value(x, digits)),
        Value::Object(map) => map.values_mut().for_each(|x| round_value(x, digits)),
        _ => {}
    }
}

/// Pretty JSON with every float rounded to `digits`; key order follows the
/// type's field order. Ends with a newline.
pub fn to_json<T: Serialize>(value: &T, digits: usize) -> Result<Vec<u8>> {
    let mut v = serde_json::to_value(value)?;
    round_value(&mut v, digits);
    let mut out = serde_json::to_vec_pretty(&v)?;
    out.push(b'\n');
    Ok(out)
}

/// Minimal CSV table; cells are numbers or fixed identifiers, so no quoting.
#[derive(Debug, Default)]
pub struct Csv {
    out: String,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        let mut csv = Self::default();
        csv.row(header.iter().map(|s| s.to_string()));
        csv
    }

    pub fn row<I: IntoIterator<Item = String>>(&mut self, cells: I) {
        let cells: Vec<String> = cells.into_iter().collect();
        self.out.push_str(&cells.join(","));
        self.out.push('\n');
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.out.into_bytes()
    }
}
