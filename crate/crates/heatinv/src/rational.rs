//! Minimal exact rational arithmetic on `i128`, enough to regenerate and
//! certify the series-inversion coefficients. Overflow panics loudly rather
//! than wrapping; the orders used here stay far below the `i128` range.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, Copy, PartialEq, Eq)]
pub struct Rational {
    num: i128,
    den: i128, // > 0, gcd(num, den) = 1
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Rational {
    pub const ZERO: Rational = Rational { num: 0, den: 1 };
    pub const ONE: Rational = Rational { num: 1, den: 1 };

    pub fn new(num: i128, den: i128) -> Rational {
        assert!(den != 0, "rational with zero denominator");
        let sign = if den < 0 { -1 } else { 1 };
        let g = gcd(num, den).max(1);
        Rational {
            num: sign * num / g,
            den: sign * den / g,
        }
    }

    pub fn from_int(n: i128) -> Rational {
        Rational { num: n, den: 1 }
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

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn recip(&self) -> Rational {
        assert!(self.num != 0, "reciprocal of zero");
        Rational::new(self.den, self.num)
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        // cross-reduce first to keep intermediates small
        let g = gcd(self.den, rhs.den).max(1);
        let lhs_scale = rhs.den / g;
        let rhs_scale = self.den / g;
        let num = self
            .num
            .checked_mul(lhs_scale)
            .and_then(|a| rhs.num.checked_mul(rhs_scale).and_then(|b| a.checked_add(b)))
            .expect("rational overflow in add");
        let den = self.den.checked_mul(lhs_scale).expect("rational overflow in add");
        Rational::new(num, den)
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        self + (-rhs)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        // reduce across the diagonal before multiplying
        let g1 = gcd(self.num, rhs.den).max(1);
        let g2 = gcd(rhs.num, self.den).max(1);
        let num = (self.num / g1)
            .checked_mul(rhs.num / g2)
            .expect("rational overflow in mul");
        let den = (self.den / g2)
            .checked_mul(rhs.den / g1)
            .expect("rational overflow in mul");
        Rational::new(num, den)
    }
}

impl Div for Rational {
    type Output = Rational;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Rational) -> Rational {
        self * rhs.recip()
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

// Dense polynomial helpers over Rational, truncated to a fixed length.
// Coefficient index = power of the formal variable.

pub(crate) fn poly_mul_trunc(a: &[Rational], b: &[Rational], len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::ZERO; len];
    for (i, &ai) in a.iter().enumerate().take(len) {
        if ai.is_zero() {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            if i + j >= len {
                break;
            }
            if bj.is_zero() {
                continue;
            }
            out[i + j] = out[i + j] + ai * bj;
        }
    }
    out
}

pub(crate) fn poly_pow_trunc(base: &[Rational], exp: u32, len: usize) -> Vec<Rational> {
    let mut result = vec![Rational::ZERO; len];
    result[0] = Rational::ONE;
    let mut b = base.to_vec();
    b.resize(len, Rational::ZERO);
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result = poly_mul_trunc(&result, &b, len);
        }
        e >>= 1;
        if e > 0 {
            b = poly_mul_trunc(&b, &b, len);
        }
    }
    result
}

/// `ln(1 + u)` as a truncated series, where `u` has zero constant term.
pub(crate) fn poly_ln_one_plus(u: &[Rational], len: usize) -> Vec<Rational> {
    assert!(u.first().map_or(true, Rational::is_zero));
    let mut acc = vec![Rational::ZERO; len];
    let mut power = vec![Rational::ZERO; len];
    power[0] = Rational::ONE;
    for j in 1..len {
        power = poly_mul_trunc(&power, u, len);
        if power.iter().all(Rational::is_zero) {
            break;
        }
        let coeff = Rational::new(if j % 2 == 1 { 1 } else { -1 }, j as i128);
        for (a, p) in acc.iter_mut().zip(power.iter()) {
            *a = *a + coeff * *p;
        }
    }
    acc
}
