//! JSON emission: every exact value as a bit-exact string, every count as a
//! plain number.

use serde_json::{json, Value};
use zorbit::scalar::{render_rat, Int, Rat};
use zorbit::zlinalg::{IntMatrix, IntVector, RatMatrix, RatVector};

/// How a command run can fail: a well-posed question with a negative or
/// impossible answer (exit 1), or input we could not make sense of (exit 2).
#[derive(Debug)]
pub enum Failure {
    Domain(Value),
    Malformed(String),
}

pub fn error_doc(reason: &str, message: &str) -> Value {
    json!({ "error": { "reason": reason, "message": message } })
}

/// Integers render as JSON numbers while they fit, as strings beyond that.
pub fn int_json(x: &Int) -> Value {
    match x.to_string().parse::<i64>() {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

pub fn rat_json(x: &Rat) -> Value {
    json!(render_rat(x))
}

/// The explicitly lossy decimal rendering behind `--approx`.
pub fn rat_approx(x: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn int_vector_json(v: &IntVector) -> Value {
    Value::Array((0..v.len()).map(|i| json!(v.at(i).to_string())).collect())
}

pub fn rat_vector_json(v: &RatVector) -> Value {
    Value::Array((0..v.len()).map(|i| rat_json(v.at(i))).collect())
}

pub fn int_matrix_json(m: &IntMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| {
                Value::Array((0..m.cols()).map(|j| json!(m.at(i, j).to_string())).collect())
            })
            .collect(),
    )
}

pub fn rat_matrix_json(m: &RatMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| {
                Value::Array((0..m.cols()).map(|j| rat_json(m.at(i, j))).collect())
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use zorbit::scalar::{int, rat};

    #[test]
    fn test_int_json_falls_back_to_strings() {
        assert_eq!(int_json(&int(3)), json!(3));
        assert_eq!(int_json(&int(-7)), json!(-7));
        let big: Int = int(10).pow(30u32);
        assert_eq!(int_json(&big), json!(big.to_string()));
    }

    #[test]
    fn test_rat_json_is_reduced() {
        assert_eq!(rat_json(&rat(4, 6)), json!("2/3"));
        assert_eq!(rat_json(&rat(-3, 1)), json!("-3"));
    }

    #[test]
    fn test_rat_approx() {
        assert_eq!(rat_approx(&rat(1, 4)), 0.25);
    }
}
