//! Arbitrary-precision integer and rational scalars.
//!
//! Everything in this crate computes over [`Int`] and [`Rat`]; no floating
//! point is used anywhere. Rationals are kept reduced with positive
//! denominator by `num-rational` itself, so `Rat` equality is exact value
//! equality.

use num_traits::{One, Signed, Zero};

pub type Int = num_bigint::BigInt;
pub type Rat = num_rational::BigRational;

/// Shorthand for small integer literals in tests and examples.
pub fn int(v: i64) -> Int {
    Int::from(v)
}

/// `p/q` as a reduced rational. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(int(p), int(q))
}

/// Parse `"p"` or `"p/q"`. Whitespace around the string is tolerated.
pub fn parse_rat(s: &str) -> Result<Rat, ParseRatError> {
    let t = s.trim();
    if t.is_empty() {
        return Err(ParseRatError(s.to_owned()));
    }
    t.parse::<Rat>().map_err(|_| ParseRatError(s.to_owned()))
}

/// Render as `"p"` for integers and `"p/q"` otherwise, matching [`parse_rat`].
pub fn render_rat(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not a rational number: {0:?}")]
pub struct ParseRatError(pub String);

/// Least common multiple of two integers; `lcm(0, 0) == 0`.
pub fn lcm(a: &Int, b: &Int) -> Int {
    num_integer::Integer::lcm(a, b)
}

/// Greatest common divisor, always nonnegative.
pub fn gcd(a: &Int, b: &Int) -> Int {
    num_integer::Integer::gcd(a, b)
}

/// Extended gcd: returns `(g, x, y)` with `g = a*x + b*y` and `g >= 0`.
///
/// When one argument divides the other, the coefficient of the larger one is
/// `0`. Elimination loops depend on that: combining two rows whose entries
/// already divide each other must leave the divisor row untouched instead
/// of mixing the pair, or a clear-row/clear-column alternation could undo
/// its own progress forever.
pub fn xgcd(a: &Int, b: &Int) -> (Int, Int, Int) {
    let sign_of = |v: &Int| if v.is_negative() { int(-1) } else { int(1) };
    if !a.is_zero() && (b % a).is_zero() {
        return (a.abs(), sign_of(a), Int::zero());
    }
    if !b.is_zero() && (a % b).is_zero() {
        return (b.abs(), Int::zero(), sign_of(b));
    }
    let e = num_integer::Integer::extended_gcd(a, b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Nearest integer to a rational, ties rounded towards `+inf`.
pub fn round_rat(x: &Rat) -> Int {
    (x + Rat::new(int(1), int(2))).floor().to_integer()
}

/// Floor of a rational as an integer.
pub fn floor_rat(x: &Rat) -> Int {
    x.floor().to_integer()
}

/// Largest integer `r >= 0` with `r*r <= n`. Panics on negative input.
pub fn isqrt(n: &Int) -> Int {
    assert!(!n.is_negative(), "isqrt of negative number");
    n.sqrt()
}

/// `|x|` for rationals.
pub fn abs_rat(x: &Rat) -> Rat {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn test_parse_and_render_round_trip() {
        for s in ["0", "5", "-3", "1/2", "-7/3", "22/7"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(render_rat(&r), s);
        }
        // Unreduced and padded forms parse to the reduced value.
        assert_eq!(parse_rat(" 4/6 ").unwrap(), rat(2, 3));
        assert_eq!(parse_rat("-2/-4").unwrap(), rat(1, 2));
        assert!(parse_rat("").is_err());
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("a/b").is_err());
        assert!(parse_rat("1.5").is_err());
    }

    #[test]
    fn test_render_integer_without_slash() {
        assert_eq!(render_rat(&rat(6, 3)), "2");
        assert_eq!(render_rat(&rat(-6, 3)), "-2");
        assert_eq!(render_rat(&rat(0, 5)), "0");
    }

    #[test]
    fn test_xgcd_identity() {
        for a in -9i64..=9 {
            for b in -9i64..=9 {
                let (g, x, y) = xgcd(&int(a), &int(b));
                assert_eq!(g, gcd(&int(a), &int(b)), "gcd({a},{b})");
                assert!(!g.is_negative());
                assert_eq!(g, int(a) * &x + int(b) * &y, "identity at ({a},{b})");
                // divisor coefficients stay trivial so elimination steps
                // never mix a pair whose entries already divide each other
                if a != 0 && b % a == 0 {
                    assert!(y.is_zero(), "xgcd({a},{b}) = ({g},{x},{y})");
                } else if b != 0 && a % b == 0 {
                    assert!(x.is_zero(), "xgcd({a},{b}) = ({g},{x},{y})");
                }
            }
        }
        let (g, x, y) = xgcd(&int(240), &int(46));
        assert_eq!(g, int(2));
        assert_eq!(int(240) * x + int(46) * y, int(2));
    }

    #[test]
    fn test_round_rat() {
        assert_eq!(round_rat(&rat(7, 2)), int(4)); // ties go up
        assert_eq!(round_rat(&rat(-7, 2)), int(-3));
        assert_eq!(round_rat(&rat(1, 3)), int(0));
        assert_eq!(round_rat(&rat(-1, 3)), int(0));
        assert_eq!(round_rat(&rat(5, 3)), int(2));
    }

    #[test]
    fn test_isqrt() {
        assert_eq!(isqrt(&int(0)), int(0));
        assert_eq!(isqrt(&int(15)), int(3));
        assert_eq!(isqrt(&int(16)), int(4));
        assert_eq!(isqrt(&int(17)), int(4));
    }
}
