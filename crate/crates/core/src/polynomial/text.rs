//! Text form: comma-separated ascending coefficients, each `re`, `re+imi`,
//! `re-imi` or a bare imaginary part such as `2i`, `-i`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;

use super::ComplexPoly;
use crate::error::Error;
use crate::scalar::Real;

fn parse_real<T: Real>(s: &str, whole: &str) -> Result<T, Error> {
    let v: f64 = s
        .parse()
        .map_err(|_| Error::Parse(format!("bad number {s:?} in {whole:?}")))?;
    if !v.is_finite() {
        return Err(Error::Parse(format!("non-finite number in {whole:?}")));
    }
    Ok(T::lit(v))
}

pub fn parse_complex<T: Real>(raw: &str) -> Result<Complex<T>, Error> {
    let s: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty coefficient".into()));
    }
    let Some(body) = s.strip_suffix(['i', 'I']) else {
        return Ok(Complex::new(parse_real(&s, raw)?, T::zero()));
    };
    // Split at the last sign that is not an exponent sign.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("", body),
    };
    let re = if re.is_empty() {
        T::zero()
    } else {
        parse_real(re, raw)?
    };
    let im = match im {
        "" | "+" => T::one(),
        "-" => -T::one(),
        other => parse_real(other, raw)?,
    };
    Ok(Complex::new(re, im))
}

pub fn format_complex<T: Real>(z: Complex<T>) -> String {
    if z.im == T::zero() {
        format!("{}", z.re)
    } else if z.im < T::zero() {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

impl<T: Real> FromStr for ComplexPoly<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let coeffs = s
            .split(',')
            .map(parse_complex)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ComplexPoly::new(coeffs))
    }
}

impl<T: Real> fmt::Display for ComplexPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs().iter().map(|&c| format_complex(c)).collect();
        f.write_str(&parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type C = Complex<f64>;

    #[test]
    fn parses_forms() {
        let p: ComplexPoly<f64> = "1,-1,1".parse().unwrap();
        assert_eq!(p, ComplexPoly::from_reals(&[1.0, -1.0, 1.0]));
        assert_eq!(parse_complex::<f64>("1.5+2i").unwrap(), C::new(1.5, 2.0));
        assert_eq!(parse_complex::<f64>("1.5-2i").unwrap(), C::new(1.5, -2.0));
        assert_eq!(parse_complex::<f64>("-i").unwrap(), C::new(0.0, -1.0));
        assert_eq!(parse_complex::<f64>("3i").unwrap(), C::new(0.0, 3.0));
        assert_eq!(
            parse_complex::<f64>("1e-3+2.5e-2i").unwrap(),
            C::new(1e-3, 2.5e-2)
        );
        assert_eq!(
            parse_complex::<f64>("-1E+2-1e-1i").unwrap(),
            C::new(-100.0, -0.1)
        );
        assert_eq!(parse_complex::<f64>(" 2 ").unwrap(), C::new(2.0, 0.0));
    }

    #[test]
    fn rejects_garbage() {
        assert!("1,,2".parse::<ComplexPoly<f64>>().is_err());
        assert!("abc".parse::<ComplexPoly<f64>>().is_err());
        assert!("1+2j".parse::<ComplexPoly<f64>>().is_err());
        assert!("inf".parse::<ComplexPoly<f64>>().is_err());
    }

    proptest! {
        #[test]
        fn display_parse_roundtrip(parts in prop::collection::vec((-1e6f64..1e6, -1e6f64..1e6), 1..8)) {
            let p = ComplexPoly::new(parts.iter().map(|&(a, b)| C::new(a, b)).collect());
            let back: ComplexPoly<f64> = p.to_string().parse().unwrap();
            prop_assert_eq!(back, p);
        }
    }
}
