//! Keys, values, and the binary operators that fold them.

use std::cmp::Ordering;
use std::fmt;

/// Axis label: a finite number or a text string.
///
/// The key order is total: every number sorts strictly before every text,
/// numbers compare numerically, and texts compare by code point. `NaN` is not
/// a valid key and is rejected at construction.
#[derive(Clone, Debug)]
pub enum Key {
    Num(f64),
    Text(String),
}

impl Key {
    /// Numeric key.
    ///
    /// Panics on `NaN`. Negative zero is normalised to zero so each numeric
    /// key has a single representative.
    pub fn num(x: f64) -> Key {
        assert!(!x.is_nan(), "NaN is not a valid key");
        Key::Num(if x == 0.0 { 0.0 } else { x })
    }

    pub fn text(s: impl Into<String>) -> Key {
        Key::Text(s.into())
    }

    pub fn as_num(&self) -> Option<f64> {
        match self {
            Key::Num(x) => Some(*x),
            Key::Text(_) => None,
        }
    }

    pub fn as_text(&self) -> Option<&str> {
        match self {
            Key::Num(_) => None,
            Key::Text(s) => Some(s),
        }
    }
}

impl Ord for Key {
    fn cmp(&self, other: &Key) -> Ordering {
        match (self, other) {
            (Key::Num(a), Key::Num(b)) => a.total_cmp(b),
            (Key::Num(_), Key::Text(_)) => Ordering::Less,
            (Key::Text(_), Key::Num(_)) => Ordering::Greater,
            (Key::Text(a), Key::Text(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Key) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Key {
    fn eq(&self, other: &Key) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Key {}

impl fmt::Display for Key {
    /// Numbers print in shortest round-trip form, so integral keys print as
    /// integers ("5", never "5.0").
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Key::Num(x) => write!(f, "{x}"),
            Key::Text(s) => f.write_str(s),
        }
    }
}

impl From<f64> for Key {
    fn from(x: f64) -> Key {
        Key::num(x)
    }
}

impl From<i32> for Key {
    fn from(x: i32) -> Key {
        Key::num(x as f64)
    }
}

impl From<&str> for Key {
    fn from(s: &str) -> Key {
        Key::Text(s.to_owned())
    }
}

impl From<String> for Key {
    fn from(s: String) -> Key {
        Key::Text(s)
    }
}

/// Stored cell value: a 64-bit float or a string.
///
/// Each kind has an *empty* element (`0.0`, `""`) that means "absent"; empty
/// values are never stored.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Num(f64),
    Str(String),
}

impl Value {
    pub fn num(x: f64) -> Value {
        Value::Num(x)
    }

    pub fn str(s: impl Into<String>) -> Value {
        Value::Str(s.into())
    }

    /// True for `0.0` and `""`.
    pub fn is_empty(&self) -> bool {
        match self {
            Value::Num(x) => *x == 0.0,
            Value::Str(s) => s.is_empty(),
        }
    }

    pub fn kind(&self) -> ValueKind {
        match self {
            Value::Num(_) => ValueKind::Num,
            Value::Str(_) => ValueKind::Str,
        }
    }

    pub fn as_num(&self) -> Option<f64> {
        match self {
            Value::Num(x) => Some(*x),
            Value::Str(_) => None,
        }
    }

    pub fn as_str(&self) -> Option<&str> {
        match self {
            Value::Num(_) => None,
            Value::Str(s) => Some(s),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Num(x) => write!(f, "{x}"),
            Value::Str(s) => f.write_str(s),
        }
    }
}

impl From<f64> for Value {
    fn from(x: f64) -> Value {
        Value::Num(x)
    }
}

impl From<i32> for Value {
    fn from(x: i32) -> Value {
        Value::Num(x as f64)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Value {
        Value::Str(s.to_owned())
    }
}

impl From<String> for Value {
    fn from(s: String) -> Value {
        Value::Str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ValueKind {
    Num,
    Str,
}

impl ValueKind {
    pub(crate) fn name(self) -> &'static str {
        match self {
            ValueKind::Num => "numeric",
            ValueKind::Str => "string",
        }
    }
}

/// Binary value operator: folds colliding triples and combines arrays.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ValueOp {
    /// Numeric minimum / dictionary-least string. The constructor default.
    Min,
    /// Numeric maximum / dictionary-greatest string.
    Max,
    /// Numeric addition; on strings, concatenation with the left operand
    /// first.
    Sum,
    /// Keep the right (later) operand.
    Last,
}

impl ValueOp {
    pub(crate) fn fold_num(self, acc: f64, x: f64) -> f64 {
        match self {
            ValueOp::Min => acc.min(x),
            ValueOp::Max => acc.max(x),
            ValueOp::Sum => acc + x,
            ValueOp::Last => x,
        }
    }

    pub(crate) fn fold_str(self, acc: &mut String, x: &str) {
        match self {
            ValueOp::Min => {
                if x < acc.as_str() {
                    acc.clear();
                    acc.push_str(x);
                }
            }
            ValueOp::Max => {
                if x > acc.as_str() {
                    acc.clear();
                    acc.push_str(x);
                }
            }
            ValueOp::Sum => acc.push_str(x),
            ValueOp::Last => {
                acc.clear();
                acc.push_str(x);
            }
        }
    }
}

/// Convenience: text keys from anything string-like.
pub fn text_keys<S: AsRef<str>>(xs: impl IntoIterator<Item = S>) -> Vec<Key> {
    xs.into_iter().map(|s| Key::text(s.as_ref())).collect()
}

/// Convenience: numeric keys. Panics on `NaN`.
pub fn num_keys(xs: impl IntoIterator<Item = impl std::borrow::Borrow<f64>>) -> Vec<Key> {
    xs.into_iter().map(|x| Key::num(*x.borrow())).collect()
}

/// Convenience: string values.
pub fn str_values<S: AsRef<str>>(xs: impl IntoIterator<Item = S>) -> Vec<Value> {
    xs.into_iter().map(|s| Value::str(s.as_ref())).collect()
}

/// Convenience: numeric values.
pub fn num_values(xs: impl IntoIterator<Item = impl std::borrow::Borrow<f64>>) -> Vec<Value> {
    xs.into_iter().map(|x| Value::num(*x.borrow())).collect()
}
