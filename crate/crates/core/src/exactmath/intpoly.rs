use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::parse::parse_poly;
use super::polynomial::VarContext;
use super::rational::Rational;
use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// Univariate polynomial in `t` with arbitrary-precision integer
/// coefficients; index = exponent. Trailing zeros are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// `c * t^k`
    pub fn monomial(c: i64, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = BigInt::from(c);
        Self::new(v)
    }

    /// Parses an expression in the single variable `t` (same grammar as
    /// multivariate input); coefficients must be integers.
    pub fn parse(text: &str) -> Result<Self> {
        let ctx = VarContext::new(&["t"])?;
        let p = parse_poly(text, &ctx, Field::Rational)?;
        let mut coeffs = Vec::new();
        for (m, c) in p.terms() {
            let Scalar::Q(r) = c else { unreachable!() };
            if !r.is_integer() {
                return Err(Error::Invalid(format!("non-integer coefficient {r}")));
            }
            let k = m.degree() as usize;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, BigInt::zero());
            }
            coeffs[k] = r.numer();
        }
        Ok(Self::new(coeffs))
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Horner evaluation at an exact rational point.
    pub fn eval(&self, q: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(q).add(&Rational::from_bigint(c.clone()));
        }
        acc
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Sign of `p(q)` computed without building the rational value.
    pub fn sign_at(&self, q: &Rational) -> i32 {
        // den^deg * p(num/den) = sum c_k num^k den^(deg-k), den > 0
        let Some(d) = self.degree() else { return 0 };
        let (num, den) = (q.numer(), q.denom());
        let mut acc = BigInt::zero();
        let mut npow = BigInt::one();
        let mut dpows = Vec::with_capacity(d + 1);
        let mut dp = BigInt::one();
        for _ in 0..=d {
            dpows.push(dp.clone());
            dp *= &den;
        }
        for (k, c) in self.coeffs.iter().enumerate() {
            acc += c * &npow * &dpows[d - k];
            npow *= &num;
        }
        match acc.sign() {
            num_bigint::Sign::Plus => 1,
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content; the sign is kept.
    pub fn primitive_part(&self) -> Self {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Exact quotient `self / o` when `o` divides `self` in `Z[t]`.
    pub fn div_exact(&self, o: &Self) -> Option<Self> {
        let (q, r) = self.divrem_q(o)?;
        if !r.iter().all(Rational::is_zero) || !q.iter().all(Rational::is_integer) {
            return None;
        }
        Some(Self::new(q.iter().map(Rational::numer).collect()))
    }

    /// Division over the rationals. `None` when `o` is zero.
    pub fn divrem_q(&self, o: &Self) -> Option<(Vec<Rational>, Vec<Rational>)> {
        let a: Vec<Rational> = self.coeffs.iter().cloned().map(Rational::from).collect();
        let b: Vec<Rational> = o.coeffs.iter().cloned().map(Rational::from).collect();
        qpoly_divrem(&a, &b)
    }

    /// Greatest common divisor over the rationals, returned primitive with
    /// positive leading coefficient. `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &Self) -> Self {
        let mut a: Vec<Rational> = self.coeffs.iter().cloned().map(Rational::from).collect();
        let mut b: Vec<Rational> = o.coeffs.iter().cloned().map(Rational::from).collect();
        while !b.is_empty() {
            let (_, r) = qpoly_divrem(&a, &b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        let p = from_qpoly_primitive(&a);
        if p.leading().is_negative() {
            p.neg()
        } else {
            p
        }
    }

    /// Value at `t = 0`.
    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    /// Multiplicity of the root `t = 0`.
    pub fn low_order(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// `self / t^k` for `k = low_order()`.
    pub fn strip_t_powers(&self) -> Self {
        Self::new(self.coeffs[self.low_order().min(self.coeffs.len())..].to_vec())
    }
}

/// Rational polynomial long division; `None` when `b` is zero. Vectors are
/// trimmed (no trailing zeros).
pub(crate) fn qpoly_divrem(a: &[Rational], b: &[Rational]) -> Option<(Vec<Rational>, Vec<Rational>)> {
    let b = trim(b.to_vec());
    if b.is_empty() {
        return None;
    }
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return Some((Vec::new(), r));
    }
    let lb = b.last().unwrap().clone();
    let mut q = vec![Rational::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let f = r.last().unwrap().div(&lb);
        for (i, c) in b.iter().enumerate() {
            r[shift + i] = r[shift + i].sub(&f.mul(c));
        }
        q[shift] = f;
        r.pop();
        r = trim(r);
    }
    Some((trim(q), r))
}

pub(crate) fn trim(mut v: Vec<Rational>) -> Vec<Rational> {
    while v.last().is_some_and(Rational::is_zero) {
        v.pop();
    }
    v
}

/// Scales a rational polynomial by a positive rational to a primitive
/// integer polynomial.
pub(crate) fn from_qpoly_primitive(a: &[Rational]) -> IntPolynomial {
    let l = a.iter().fold(BigInt::one(), |l, c| l.lcm(&c.denom()));
    let ints: Vec<BigInt> = a.iter().map(|c| c.numer() * (&l / c.denom())).collect();
    IntPolynomial::new(ints).primitive_part()
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let a = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            // a leading "-t^k" would parse as (-t)^k
            let lead_neg = first && c.is_negative();
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() && !lead_neg {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{a}*{mono}")?;
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn compressed_denominator_at_one() {
        let d = p(&[1, 0, -5, -5, 0, 1]);
        assert_eq!(d.eval(&Rational::one()), Rational::from_int(-8));
    }

    #[test]
    fn product_expansion() {
        let a = p(&[1, 1]).pow(2);
        assert_eq!(a.mul(&p(&[1, -2])), p(&[1, 0, -3, -2]));
    }

    #[test]
    fn eval_at_zero_is_constant_term() {
        let q = p(&[7, -3, 2]);
        assert_eq!(q.eval(&Rational::zero()), Rational::from_int(7));
    }

    #[test]
    fn gcd_and_exact_division() {
        // (1+t)^2 (1-2t) and (1+t)(1-t)
        let a = p(&[1, 1]).pow(2).mul(&p(&[1, -2]));
        let b = p(&[1, 1]).mul(&p(&[1, -1]));
        assert_eq!(a.gcd(&b), p(&[1, 1]));
        assert_eq!(a.div_exact(&p(&[1, 1])), Some(p(&[1, -1, -2])));
        assert_eq!(a.div_exact(&p(&[1, -1])), None);
        assert_eq!(p(&[2, 4]).gcd(&p(&[0, 3])), p(&[1]));
    }

    #[test]
    fn sign_at_matches_eval() {
        let q = p(&[1, 0, -1, -1]);
        for (n, d) in [(1, 2), (3, 4), (4, 5), (-7, 3), (0, 1)] {
            let x = Rational::new(n, d);
            assert_eq!(q.sign_at(&x), q.eval(&x).signum());
        }
    }

    #[test]
    fn display_and_parse() {
        let q = p(&[0, -1, 0, 3]);
        assert_eq!(q.to_string(), "-1*t + 3*t^3");
        assert_eq!(IntPolynomial::parse(&q.to_string()).unwrap(), q);
        assert_eq!(IntPolynomial::parse("(1+t)^2").unwrap(), p(&[1, 2, 1]));
        assert!(IntPolynomial::parse("t + s").is_err());
    }
}
