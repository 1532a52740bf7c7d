//! Fixed-precision text output for reals and complex numbers.
//!
//! Reports print numbers with 12 significant digits; complex numbers are
//! written `re+imi`, which the constant-expression parser reads back.

use crate::expr::{self, ParseError};
use crate::Complex;

const SIG_DIGITS: usize = 12;

/// Formats a real with 12 significant digits, trailing zeros removed.
pub fn real(x: f64) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", SIG_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..SIG_DIGITS as i32).contains(&exp) {
        let decimals = (SIG_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_zeros(format!("{:.*}", decimals, x))
    } else {
        format!("{}e{}", trim_zeros(mantissa.to_string()), exp)
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    if t == "-0" {
        "0".into()
    } else {
        t.to_string()
    }
}

/// Formats a complex number as `re+imi` (or `re-imi`). A part below the
/// twelfth significant digit of the modulus prints as `0`.
pub fn complex(z: Complex) -> String {
    let cutoff = 0.5e-12 * z.norm();
    let part = |x: f64| if x.abs() < cutoff { 0.0 } else { x };
    let re = real(part(z.re));
    let im = real(part(z.im).abs());
    let sign = if z.im < 0.0 && im != "0" { '-' } else { '+' };
    format!("{re}{sign}{im}i")
}

/// Parses a complex constant such as `2`, `-1.5+0.25i`, `3*i` or `(1+i)/2`.
pub fn parse_complex(s: &str) -> Result<Complex, ParseError> {
    expr::parse_constant(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_digits() {
        assert_eq!(real(1.0), "1");
        assert_eq!(real(-2.5), "-2.5");
        assert_eq!(real(3f64.sqrt()), "1.73205080757");
        assert_eq!(real(1e-7), "1e-7");
        assert_eq!(real(123456789012345.0), "1.23456789012e14");
        assert_eq!(real(-1e-20), "-1e-20");
    }

    #[test]
    fn complex_text() {
        assert_eq!(complex(Complex::new(1.0, -2.0)), "1-2i");
        assert_eq!(complex(Complex::new(0.0, 4.0)), "0+4i");
        assert_eq!(complex(Complex::new(-3.0, 0.0)), "-3+0i");
        assert_eq!(complex(Complex::new(-3.0, -0.0)), "-3+0i");
        assert_eq!(complex(Complex::new(1.5, 1e-60)), "1.5+0i");
        assert_eq!(complex(Complex::new(-1e-20, 0.0)), "-1e-20+0i");
        let z = Complex::new(0.125, -7.5);
        assert_eq!(parse_complex(&complex(z)).unwrap(), z);
    }
}
