//! Deterministic JSON emission.

use serde_json::{Map, Number, Value};

pub const SCHEMA: u64 = 1;

/// A float rounded to 12 significant digits; non-finite values become null.
pub fn num(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float");
    Number::from_f64(rounded).map_or(Value::Null, Value::Number)
}

/// Object with keys in sorted order (serde_json's default map is a BTreeMap).
pub fn object<I, K>(fields: I) -> Value
where
    I: IntoIterator<Item = (K, Value)>,
    K: Into<String>,
{
    Value::Object(
        fields
            .into_iter()
            .map(|(k, v)| (k.into(), v))
            .collect::<Map<_, _>>(),
    )
}

/// Top-level report with schema version and command name.
pub fn envelope(command: &str, body: Value) -> Value {
    let mut map = match body {
        Value::Object(m) => m,
        other => Map::from_iter([("result".to_string(), other)]),
    };
    map.insert("schema".into(), SCHEMA.into());
    map.insert("command".into(), command.into());
    Value::Object(map)
}

pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialise");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding() {
        assert_eq!(num(0.1 + 0.2), serde_json::json!(0.3));
        assert_eq!(num(f64::NAN), Value::Null);
        assert_eq!(num(1.0 / 3.0).as_f64().unwrap(), 0.333333333333);
    }

    #[test]
    fn keys_are_sorted() {
        let v = envelope("x", object([("b", 1.into()), ("a", 2.into())]));
        let text = render(&v);
        let a = text.find("\"a\"").unwrap();
        let b = text.find("\"b\"").unwrap();
        let c = text.find("\"command\"").unwrap();
        assert!(a < b && b < c);
    }
}
