//! Exact rational arithmetic for metric values.
//!
//! Observation values are ratios of counters and number literals. Keeping
//! them as reduced integer fractions avoids float drift between runs and
//! platforms; rendering to decimal happens only at serialization time.

use std::fmt;

/// A reduced fraction. The denominator is always positive and the pair is
/// always in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: i128,
    den: i128,
}

impl Rational {
    /// Builds `num/den`, normalizing sign and reducing. `None` when `den == 0`.
    pub fn new(num: i128, den: i128) -> Option<Self> {
        if den == 0 {
            return None;
        }
        let sign = if (num < 0) != (den < 0) && num != 0 {
            -1
        } else {
            1
        };
        let (n, d) = (num.unsigned_abs(), den.unsigned_abs());
        let g = gcd(n, d);
        Some(Rational {
            num: sign * (n / g) as i128,
            den: (d / g) as i128,
        })
    }

    pub fn integer(n: i128) -> Self {
        Rational { num: n, den: 1 }
    }

    pub fn zero() -> Self {
        Rational { num: 0, den: 1 }
    }

    pub fn numer(&self) -> i128 {
        self.num
    }

    pub fn denom(&self) -> i128 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    /// Parses a plain decimal string: digits with an optional single point
    /// and optional leading minus. Rejects anything else, including numbers
    /// with more than 18 significant digits (so later cross-multiplication
    /// stays inside `i128`).
    pub fn parse_decimal(text: &str) -> Option<Self> {
        let (neg, body) = match text.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, text),
        };
        if body.is_empty() {
            return None;
        }
        let (int_part, frac_part) = match body.split_once('.') {
            Some((i, f)) => (i, f),
            None => (body, ""),
        };
        if int_part.is_empty()
            || !int_part.bytes().all(|b| b.is_ascii_digit())
            || !frac_part.bytes().all(|b| b.is_ascii_digit())
        {
            return None;
        }
        if body.contains('.') && frac_part.is_empty() {
            return None;
        }
        if int_part.len() + frac_part.len() > 18 || frac_part.len() > 10 {
            return None;
        }
        let mut num: i128 = 0;
        for b in int_part.bytes().chain(frac_part.bytes()) {
            num = num * 10 + (b - b'0') as i128;
        }
        let den = 10_i128.pow(frac_part.len() as u32);
        if neg {
            num = -num;
        }
        Rational::new(num, den)
    }

    /// Exact division. `None` when the divisor is zero.
    pub fn checked_div(self, rhs: Rational) -> Option<Rational> {
        if rhs.is_zero() {
            return None;
        }
        Rational::new(self.num * rhs.den, self.den * rhs.num)
    }

    /// Shortest decimal form: no point for integers, at most 10 fraction
    /// digits (rounded half away from zero) otherwise.
    pub fn to_plain_string(&self) -> String {
        self.render(0)
    }

    /// Decimal form with at least one fraction digit, so the text is a valid
    /// Turtle/SPARQL decimal token: `0.0`, `2.0`, `1.5`.
    pub fn to_decimal_string(&self) -> String {
        self.render(1)
    }

    fn render(&self, min_frac: usize) -> String {
        const MAX_FRAC: usize = 10;
        let neg = self.num < 0;
        let n = self.num.unsigned_abs();
        let d = self.den.unsigned_abs();
        let mut int_part = n / d;
        let mut rem = n % d;
        let mut digits: Vec<u8> = Vec::new();
        while rem != 0 && digits.len() < MAX_FRAC {
            rem *= 10;
            digits.push((rem / d) as u8);
            rem %= d;
        }
        // Round the truncated tail half away from zero.
        if rem != 0 && rem * 2 >= d {
            let mut i = digits.len();
            loop {
                if i == 0 {
                    int_part += 1;
                    break;
                }
                i -= 1;
                if digits[i] == 9 {
                    digits[i] = 0;
                } else {
                    digits[i] += 1;
                    break;
                }
            }
        }
        while digits.len() > min_frac && digits.last() == Some(&0) {
            digits.pop();
        }
        while digits.len() < min_frac {
            digits.push(0);
        }
        let mut out = String::new();
        if neg && (int_part != 0 || digits.iter().any(|&d| d != 0)) {
            out.push('-');
        }
        out.push_str(&int_part.to_string());
        if !digits.is_empty() {
            out.push('.');
            for d in digits {
                out.push((b'0' + d) as char);
            }
        }
        out
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_plain_string())
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a.max(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_on_construction() {
        let r = Rational::new(6, 4).unwrap();
        assert_eq!((r.numer(), r.denom()), (3, 2));
        assert_eq!(Rational::new(3, -6).unwrap(), Rational::new(-1, 2).unwrap());
        assert!(Rational::new(1, 0).is_none());
    }

    #[test]
    fn parses_decimal_text() {
        assert_eq!(Rational::parse_decimal("3"), Some(Rational::integer(3)));
        assert_eq!(Rational::parse_decimal("1.5"), Rational::new(3, 2));
        assert_eq!(Rational::parse_decimal("0.50"), Rational::new(1, 2));
        assert_eq!(Rational::parse_decimal("-2.25"), Rational::new(-9, 4));
        assert_eq!(Rational::parse_decimal(""), None);
        assert_eq!(Rational::parse_decimal("1."), None);
        assert_eq!(Rational::parse_decimal(".5"), None);
        assert_eq!(Rational::parse_decimal("1.2.3"), None);
        assert_eq!(Rational::parse_decimal("1234567890123456789"), None);
    }

    #[test]
    fn division() {
        let three = Rational::integer(3);
        let two = Rational::integer(2);
        assert_eq!(three.checked_div(two), Rational::new(3, 2));
        assert_eq!(three.checked_div(Rational::zero()), None);
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(Rational::new(3, 2).unwrap().to_decimal_string(), "1.5");
        assert_eq!(Rational::integer(2).to_decimal_string(), "2.0");
        assert_eq!(Rational::zero().to_decimal_string(), "0.0");
        assert_eq!(Rational::integer(2).to_plain_string(), "2");
        assert_eq!(Rational::new(1, 4).unwrap().to_plain_string(), "0.25");
        // Non-terminating expansions are cut at ten digits and rounded.
        assert_eq!(
            Rational::new(1, 3).unwrap().to_plain_string(),
            "0.3333333333"
        );
        assert_eq!(
            Rational::new(2, 3).unwrap().to_plain_string(),
            "0.6666666667"
        );
        assert_eq!(Rational::new(-3, 2).unwrap().to_decimal_string(), "-1.5");
    }

    #[test]
    fn rounding_carries_into_integer_part() {
        // 0.99999999999 has eleven nines; cutting at ten digits rounds
        // all the way up to 1
        let r = Rational::new(99_999_999_999, 100_000_000_000).unwrap();
        assert_eq!(r.to_plain_string(), "1");
        // 2/3 rounds its last retained digit up
        assert_eq!(
            Rational::new(2, 3).unwrap().to_plain_string(),
            "0.6666666667"
        );
    }
}
