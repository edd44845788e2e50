//! Deterministic numeric formatting for text and JSON output.

use cebit_core::linalg::C64;
use cebit_core::optics::Netlist;
use serde_json::{json, Map, Value};

/// Values below this magnitude print as exactly 0.
pub const ZERO_CUTOFF: f64 = 1e-12;

/// Round to 12 significant digits; tiny values and −0 become 0.
pub fn round12(v: f64) -> f64 {
    if v.abs() < ZERO_CUTOFF {
        return 0.0;
    }
    sig12(v)
}

/// Round to 12 significant digits, keeping small magnitudes.
pub fn sig12(v: f64) -> f64 {
    if !v.is_finite() {
        return v;
    }
    if v == 0.0 {
        return 0.0;
    }
    format!("{v:.11e}").parse().expect("formatted float parses")
}

pub fn num(v: f64) -> Value {
    let r = round12(v);
    serde_json::Number::from_f64(r).map_or(Value::Null, Value::Number)
}

/// Like [`num`] for quantities that are legitimately tiny.
pub fn num_exact(v: f64) -> Value {
    serde_json::Number::from_f64(sig12(v)).map_or(Value::Null, Value::Number)
}

pub fn complex(z: C64) -> Value {
    json!([num(z.re), num(z.im)])
}

pub fn jones(v: [C64; 2]) -> Value {
    json!([complex(v[0]), complex(v[1])])
}

/// Apply [`round12`] to every float in a JSON tree.
pub fn round_tree(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => num(n.as_f64().expect("f64 number")),
        Value::Array(items) => Value::Array(items.into_iter().map(round_tree).collect()),
        Value::Object(map) => {
            Value::Object(map.into_iter().map(|(k, v)| (k, round_tree(v))).collect::<Map<_, _>>())
        }
        other => other,
    }
}

/// Rounded float as text.
pub fn fmt(v: f64) -> String {
    format!("{}", round12(v))
}

/// Netlist text with parameters rounded.
pub fn netlist_text(net: &Netlist) -> String {
    let mut out = format!("cebits {}\n", net.n_cebits());
    for c in net.components() {
        out.push_str(c.kind().name());
        for p in c.kind().parameters() {
            out.push(' ');
            out.push_str(&fmt(p));
        }
        for b in c.beams() {
            out.push_str(&format!(" {b}"));
        }
        out.push('\n');
    }
    out
}
