use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::rational::Rational;
use crate::error::{Error, Result};

/// Coefficient field: the rationals or a prime field `F_p` with `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u32),
}

impl Field {
    /// `F_p`, checking that `p` is a prime below `2^31`.
    pub fn prime(p: u32) -> Result<Field> {
        if p < 2 || p >= (1 << 31) || !is_prime(p) {
            return Err(Error::Field(format!("{p} is not a prime below 2^31")));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(self) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(Rational::zero()),
            Field::Prime(p) => Scalar::Fp(0, p),
        }
    }

    pub fn one(self) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(Rational::one()),
            Field::Prime(p) => Scalar::Fp(1, p),
        }
    }

    pub fn from_int(self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(Rational::from_int(n)),
            Field::Prime(p) => Scalar::Fp(n.rem_euclid(p as i64) as u32, p),
        }
    }

    pub fn from_bigint(self, n: &BigInt) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(Rational::from_bigint(n.clone())),
            Field::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                Scalar::Fp(r.to_u32().expect("residue below p"), p)
            }
        }
    }

    /// Maps a rational into this field; fails over `F_p` when `p` divides the denominator.
    pub fn from_rational(self, r: &Rational) -> Result<Scalar> {
        match self {
            Field::Rational => Ok(Scalar::Q(r.clone())),
            Field::Prime(p) => {
                let d = self.from_bigint(&r.denom());
                if d.is_zero() {
                    return Err(Error::Field(format!("{r} has no image in F_{p}")));
                }
                Ok(self.from_bigint(&r.numer()).div(&d))
            }
        }
    }

    pub fn characteristic(self) -> u32 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "QQ"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let p = p as u64;
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A field element. Mixing fields inside one computation is an internal
/// invariant violation and panics; public entry points validate fields first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(Rational),
    /// residue in `[0, p)`, modulus `p`
    Fp(u32, u32),
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rational,
            Scalar::Fp(_, p) => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Fp(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_one(),
            Scalar::Fp(v, _) => *v == 1,
        }
    }

    pub fn add(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.add(b)),
            (Scalar::Fp(a, p), Scalar::Fp(b, q)) if p == q => {
                Scalar::Fp(((*a as u64 + *b as u64) % *p as u64) as u32, *p)
            }
            _ => panic!("field mismatch"),
        }
    }

    pub fn sub(&self, o: &Scalar) -> Scalar {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.mul(b)),
            (Scalar::Fp(a, p), Scalar::Fp(b, q)) if p == q => {
                Scalar::Fp(((*a as u64 * *b as u64) % *p as u64) as u32, *p)
            }
            _ => panic!("field mismatch"),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(a.neg()),
            Scalar::Fp(0, p) => Scalar::Fp(0, *p),
            Scalar::Fp(a, p) => Scalar::Fp(p - a, *p),
        }
    }

    /// Panics on zero.
    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(a.inv()),
            Scalar::Fp(a, p) => {
                assert!(*a != 0, "inverse of zero");
                Scalar::Fp(pow_mod(*a as u64, *p as u64 - 2, *p as u64) as u32, *p)
            }
        }
    }

    pub fn div(&self, o: &Scalar) -> Scalar {
        self.mul(&o.inv())
    }

    /// `self - f*o`, the elimination kernel.
    pub fn sub_mul(&self, f: &Scalar, o: &Scalar) -> Scalar {
        match (self, f, o) {
            (Scalar::Fp(a, p), Scalar::Fp(b, _), Scalar::Fp(c, _)) => {
                let p64 = *p as u64;
                let prod = (*b as u64 * *c as u64) % p64;
                Scalar::Fp(((*a as u64 + p64 - prod) % p64) as u32, *p)
            }
            _ => self.sub(&f.mul(o)),
        }
    }

    /// Value as a rational; for `F_p` the residue in `[0, p)`.
    pub fn to_rational(&self) -> Rational {
        match self {
            Scalar::Q(r) => r.clone(),
            Scalar::Fp(v, _) => Rational::from_int(*v as i64),
        }
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_integer(),
            Scalar::Fp(..) => true,
        }
    }

    /// Sign used when printing: residues are always printed non-negative.
    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Q(r) if r.signum() < 0)
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => write!(f, "{r}"),
            Scalar::Fp(v, _) => write!(f, "{v}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(7).unwrap();
        let a = f.from_int(-1);
        assert_eq!(a, Scalar::Fp(6, 7));
        assert!(a.mul(&a).is_one());
        assert!(f.from_int(3).mul(&f.from_int(3).inv()).is_one());
        assert_eq!(f.from_int(2).sub_mul(&f.from_int(3), &f.from_int(4)), f.from_int(2 - 12));
        assert_eq!(f.from_rational(&Rational::new(1, 2)).unwrap(), f.from_int(4));
        assert!(f.from_rational(&Rational::new(1, 7)).is_err());
    }

    #[test]
    fn rejects_composites() {
        assert!(Field::prime(9).is_err());
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(2_147_483_647).is_ok());
        assert!(Field::prime(2_147_483_649).is_err());
    }
}
