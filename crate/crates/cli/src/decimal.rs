//! Display-only decimal rendering of exact rationals.

use hurwitz_core::Rational;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

fn ten_pow(e: u32) -> BigInt {
    BigInt::from(10u32).pow(e)
}

/// `x * 10^shift`, exactly.
fn shifted(x: &Rational, shift: i64) -> Rational {
    let p = Rational::from_integer(ten_pow(shift.unsigned_abs() as u32));
    if shift >= 0 {
        x * p
    } else {
        x / p
    }
}

/// Rounds `|x|` to `digits` significant digits; mixed notation for moderate magnitudes.
pub fn render(x: &Rational, digits: u32) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let sign = if x.is_negative() { "-" } else { "" };
    let a = x.abs();
    // floor(log10 a)
    let mut e = a.numer().to_string().len() as i64 - a.denom().to_string().len() as i64;
    if shifted(&a, -e) < Rational::one() {
        e -= 1;
    }
    let scale = i64::from(digits) - 1 - e;
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let mut m = (shifted(&a, scale) + half).floor().to_integer();
    if m >= ten_pow(digits) {
        m /= 10;
        e += 1;
    }
    let mantissa = m.to_string();
    if (-5..=5).contains(&e) {
        if e >= 0 {
            let split = e as usize + 1;
            let (int_part, frac) = mantissa.split_at(split.min(mantissa.len()));
            if frac.is_empty() {
                format!("{sign}{int_part}")
            } else {
                format!("{sign}{int_part}.{frac}")
            }
        } else {
            let zeros = "0".repeat((-e - 1) as usize);
            format!("{sign}0.{zeros}{mantissa}")
        }
    } else {
        let (lead, rest) = mantissa.split_at(1);
        format!("{sign}{lead}.{rest}e{e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hurwitz_core::exactarith::{int, rat};

    #[test]
    fn renders_six_digits() {
        assert_eq!(render(&int(25), 6), "25.0000");
        assert_eq!(render(&rat(1, 2), 6), "0.500000");
        assert_eq!(render(&rat(-1, 3), 6), "-0.333333");
        assert_eq!(render(&rat(2, 3), 6), "0.666667");
        assert_eq!(render(&int(9_999_995), 6), "1.00000e7");
        assert_eq!(render(&int(123_456), 6), "123456");
        assert_eq!(render(&int(1_234_567), 6), "1.23457e6");
        assert_eq!(render(&rat(1, 1_000_000), 6), "1.00000e-6");
        assert_eq!(render(&rat(1, 1000), 6), "0.00100000");
        assert_eq!(render(&int(0), 6), "0");
        assert_eq!(render(&rat(9_999_995, 10_000_000), 6), "1.00000");
    }
}
