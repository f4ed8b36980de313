//! Fixed-precision reals on top of `astro_float`.

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::BigInt;


use crate::ring::Rational;

pub const RM: RoundingMode = RoundingMode::ToEven;

/// Working precision in bits for a decimal-digit target, with guard bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Prec {
    pub digits: u32,
    pub bits: usize,
}

impl Prec {
    pub fn digits(digits: u32) -> Self {
        let bits = (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 64;
        Prec { digits, bits: bits.div_ceil(64) * 64 }
    }

    pub fn int(&self, n: i64) -> BigFloat {
        BigFloat::from_i64(n, self.bits)
    }

    pub fn bigint(&self, n: &BigInt) -> BigFloat {
        let (sign, words) = n.to_u64_digits();
        let base = self.add(&BigFloat::from_u64(u64::MAX, self.bits), &self.int(1));
        let mut acc = self.int(0);
        for w in words.iter().rev() {
            acc = acc.mul(&base, self.bits, RM).add(&BigFloat::from_u64(*w, self.bits), self.bits, RM);
        }
        if sign == num_bigint::Sign::Minus {
            acc = acc.neg();
        }
        acc
    }

    pub fn rational(&self, q: &Rational) -> BigFloat {
        self.bigint(q.numer()).div(&self.bigint(q.denom()), self.bits, RM)
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.bits, RM)
    }
    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.bits, RM)
    }
    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.bits, RM)
    }
    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.bits, RM)
    }
    pub fn sqrt(&self, a: &BigFloat) -> BigFloat {
        a.sqrt(self.bits, RM)
    }
}

pub fn is_negative(x: &BigFloat) -> bool {
    x.sign() == Some(Sign::Neg) && !x.is_zero()
}

/// `log10 |x|`, or `-inf` for zero. Good to a few ulps of an `f64`.
pub fn log10_abs(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let e = x.exponent().unwrap_or(0) as f64;
    // The mantissa is normalised into [0.5, 1).
    mantissa_f64(x).log10() + e * std::f64::consts::LOG10_2
}

fn mantissa_f64(x: &BigFloat) -> f64 {
    match x.mantissa_digits() {
        Some(words) if !words.is_empty() => *words.last().unwrap() as f64 / 2f64.powi(64),
        _ => 0.0,
    }
}

/// Scientific decimal rendering with `sig` significant digits.
pub fn to_decimal(x: &BigFloat, sig: usize) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let mut cc = Consts::new().expect("constant cache");
    match x.format(Radix::Dec, RM, &mut cc) {
        Ok(s) => shorten(&s, sig),
        Err(_) => "nan".into(),
    }
}

fn shorten(s: &str, sig: usize) -> String {
    let (mant, exp) = match s.split_once('e') {
        Some((m, e)) => (m, e),
        None => (s, "0"),
    };
    let (neg, mant) = mant.strip_prefix('-').map_or((false, mant), |m| (true, m));
    let digits: String = mant.chars().filter(|c| c.is_ascii_digit()).collect();
    let point = mant.find('.').unwrap_or(mant.len()) as i64;
    let first = digits.find(|c| c != '0').unwrap_or(0);
    let exp10 = exp.parse::<i64>().unwrap_or(0) + point - 1 - first as i64;
    let sigd: String = digits[first..].chars().take(sig).collect();
    let (lead, rest) = sigd.split_at(1.min(sigd.len()));
    let rest = rest.trim_end_matches('0');
    let body = if rest.is_empty() { lead.to_string() } else { format!("{lead}.{rest}") };
    format!("{}{body}e{exp10}", if neg { "-" } else { "" })
}
