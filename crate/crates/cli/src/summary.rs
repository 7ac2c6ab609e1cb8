//! Run summaries: ordered key/value records rendered as `key: value` lines or JSON.

use hypercover::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde_json::{Map, Number, Value as Json};

/// Digits after the decimal point in `_approx` renderings.
pub const APPROX_DIGITS: u32 = 12;

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Text(String),
    Int(i128),
    Bool(bool),
    Rat(Rational),
    Float(f64),
    None,
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Text(s.to_string())
    }
}

impl From<String> for Value {
    fn from(s: String) -> Self {
        Value::Text(s)
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Bool(b)
    }
}

impl From<Rational> for Value {
    fn from(r: Rational) -> Self {
        Value::Rat(r)
    }
}

impl From<&Rational> for Value {
    fn from(r: &Rational) -> Self {
        Value::Rat(r.clone())
    }
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Float(x)
    }
}

impl<T: Into<Value>> From<Option<T>> for Value {
    fn from(v: Option<T>) -> Self {
        v.map_or(Value::None, Into::into)
    }
}

macro_rules! int_value {
    ($($t:ty),*) => {$(
        impl From<$t> for Value {
            fn from(v: $t) -> Self {
                Value::Int(v as i128)
            }
        }
    )*};
}
int_value!(usize, u64, u32, i64);

/// `x` rounded half away from zero to `digits` decimals, trailing zeros trimmed.
pub fn decimal(x: &Rational, digits: u32) -> String {
    let scale = BigInt::from(10u8).pow(digits);
    let scaled = x.abs() * Rational::from_integer(scale.clone());
    let mut units = scaled.floor().to_integer();
    if scaled.fract() * Rational::from_integer(2.into()) >= Rational::from_integer(1.into()) {
        units += 1;
    }
    let (int, frac) = units.div_rem(&scale);
    let sign = if x.is_negative() && !units.is_zero() { "-" } else { "" };
    let mut frac = format!("{frac:0>width$}", width = digits as usize);
    while frac.len() > 1 && frac.ends_with('0') {
        frac.pop();
    }
    format!("{sign}{int}.{frac}")
}

fn float_text(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.6}")
    } else {
        x.to_string()
    }
}

/// What a run reports, in insertion order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunSummary {
    entries: Vec<(String, Value)>,
}

impl RunSummary {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl Into<Value>) {
        self.entries.push((key.into(), value.into()));
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn rational(&self, key: &str) -> Option<&Rational> {
        match self.get(key) {
            Some(Value::Rat(r)) => Some(r),
            _ => None,
        }
    }

    pub fn flag(&self, key: &str) -> Option<bool> {
        match self.get(key) {
            Some(Value::Bool(b)) => Some(*b),
            _ => None,
        }
    }

    pub fn entries(&self) -> &[(String, Value)] {
        &self.entries
    }

    /// One `key: value` line per entry; rationals get a companion `key_approx` line.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.entries {
            let text = match v {
                Value::Text(s) => s.clone(),
                Value::Int(i) => i.to_string(),
                Value::Bool(b) => b.to_string(),
                Value::Rat(r) => r.to_string(),
                Value::Float(x) => float_text(*x),
                Value::None => "none".to_string(),
            };
            out.push_str(&format!("{k}: {text}\n"));
            if let Value::Rat(r) = v {
                out.push_str(&format!("{k}_approx: {}\n", decimal(r, APPROX_DIGITS)));
            }
        }
        out
    }

    /// A single JSON object; rationals are strings with a numeric `key_approx` beside them.
    pub fn render_json(&self) -> String {
        let mut map = Map::new();
        for (k, v) in &self.entries {
            let json = match v {
                Value::Text(s) => Json::String(s.clone()),
                Value::Int(i) => Json::Number(Number::from_i128(*i).unwrap_or_else(|| Number::from(0))),
                Value::Bool(b) => Json::Bool(*b),
                Value::Rat(r) => Json::String(r.to_string()),
                Value::Float(x) => Number::from_f64(*x).map_or_else(|| Json::String(float_text(*x)), Json::Number),
                Value::None => Json::Null,
            };
            map.insert(k.clone(), json);
            if let Value::Rat(r) = v {
                let approx = decimal(r, APPROX_DIGITS);
                let num = approx.parse::<f64>().ok().and_then(Number::from_f64).map_or(Json::String(approx), Json::Number);
                map.insert(format!("{k}_approx"), num);
            }
        }
        let mut s = serde_json::to_string_pretty(&Json::Object(map)).expect("summary serializes");
        s.push('\n');
        s
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            self.render_json()
        } else {
            self.render_text()
        }
    }
}
