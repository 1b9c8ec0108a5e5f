use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::monomial::Monomial;
use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// Ordered list of distinct variable names.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarContext {
    names: Vec<String>,
}

fn valid_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl VarContext {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Arc<VarContext>> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            if !valid_ident(n) {
                return Err(Error::Variables(format!("'{n}' is not an identifier")));
            }
            if names[..i].contains(n) {
                return Err(Error::Variables(format!("duplicate name '{n}'")));
            }
        }
        Ok(Arc::new(VarContext { names }))
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Homogeneity of a polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    Degree(u32),
    Mixed,
    Zero,
}

impl Homogeneity {
    pub fn degree(self) -> Option<u32> {
        match self {
            Homogeneity::Degree(d) => Some(d),
            _ => None,
        }
    }
}

/// Sparse polynomial: monomial → nonzero coefficient, over a fixed field and
/// variable context.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    ctx: Arc<VarContext>,
    field: Field,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero(ctx: &Arc<VarContext>, field: Field) -> Self {
        Polynomial {
            ctx: ctx.clone(),
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ctx: &Arc<VarContext>, field: Field, c: Scalar) -> Self {
        Self::from_terms(ctx, field, [(Monomial::one(ctx.len()), c)])
    }

    pub fn var(ctx: &Arc<VarContext>, field: Field, i: usize) -> Self {
        Self::from_terms(ctx, field, [(Monomial::var(ctx.len(), i), field.one())])
    }

    /// Sums the given terms; zero coefficients are dropped.
    pub fn from_terms<I>(ctx: &Arc<VarContext>, field: Field, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        let mut p = Self::zero(ctx, field);
        for (m, c) in terms {
            assert_eq!(m.nvars(), ctx.len(), "monomial arity");
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn context(&self) -> &Arc<VarContext> {
        &self.ctx
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending degree-lexicographic order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&Scalar> {
        self.terms.get(m)
    }

    fn compatible(&self, o: &Polynomial) -> Result<()> {
        if !Arc::ptr_eq(&self.ctx, &o.ctx) && self.ctx != o.ctx {
            return Err(Error::ContextMismatch);
        }
        if self.field != o.field {
            return Err(Error::FieldMismatch(self.field.to_string(), o.field.to_string()));
        }
        Ok(())
    }

    pub fn add(&self, o: &Polynomial) -> Result<Polynomial> {
        self.compatible(o)?;
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Polynomial) -> Result<Polynomial> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            ctx: self.ctx.clone(),
            field: self.field,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn mul(&self, o: &Polynomial) -> Result<Polynomial> {
        self.compatible(o)?;
        let mut out = Polynomial::zero(&self.ctx, self.field);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), c1.mul(c2));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Result<Polynomial> {
        if c.field() != self.field {
            return Err(Error::FieldMismatch(self.field.to_string(), c.field().to_string()));
        }
        if c.is_zero() {
            return Ok(Polynomial::zero(&self.ctx, self.field));
        }
        Ok(Polynomial {
            ctx: self.ctx.clone(),
            field: self.field,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x.mul(c))).collect(),
        })
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        Polynomial::from_terms(
            &self.ctx,
            self.field,
            self.terms.iter().map(|(t, x)| (t.mul(m), x.mul(c))),
        )
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::constant(&self.ctx, self.field, self.field.one());
        for _ in 0..e {
            acc = acc.mul(self).expect("same context");
        }
        acc
    }

    pub fn homogeneity(&self) -> Homogeneity {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => Homogeneity::Zero,
            Some(d) => {
                if degs.all(|e| e == d) {
                    Homogeneity::Degree(d)
                } else {
                    Homogeneity::Mixed
                }
            }
        }
    }

    /// Rewrites this polynomial into `target` by substituting each variable
    /// with the given polynomial (indexed like this polynomial's context).
    pub fn substitute(&self, images: &[Polynomial], target: &Arc<VarContext>) -> Result<Polynomial> {
        if images.len() != self.ctx.len() {
            return Err(Error::Invalid("substitution arity".into()));
        }
        let mut out = Polynomial::zero(target, self.field);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, self.field, c.clone());
            for (i, e) in m.exps().iter().enumerate() {
                if *e > 0 {
                    t = t.mul(&images[i].pow(*e))?;
                }
            }
            out = out.add(&t)?;
        }
        Ok(out)
    }

    /// Re-expresses this polynomial in a context that contains all of its
    /// variable names.
    pub fn embed(&self, target: &Arc<VarContext>) -> Result<Polynomial> {
        let map: Vec<usize> = self
            .ctx
            .names()
            .iter()
            .map(|n| target.index_of(n).ok_or_else(|| Error::UnknownVariable(n.clone())))
            .collect::<Result<_>>()?;
        Ok(Polynomial::from_terms(
            target,
            self.field,
            self.terms.iter().map(|(m, c)| {
                let mut e = vec![0; target.len()];
                for (i, x) in m.exps().iter().enumerate() {
                    e[map[i]] = *x;
                }
                (Monomial::new(e), c.clone())
            }),
        ))
    }
}

fn fmt_monomial(m: &Monomial, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, e) in m.exps().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[i].clone()),
            _ => parts.push(format!("{}^{}", names[i], e)),
        }
    }
    parts.join("*")
}

/// Prints in the parser's grammar, highest degree-lex term first. Integer
/// coefficients round-trip; non-integral rationals print as `a/b`.
///
/// A leading negative term is written `-c*m` (with an explicit coefficient)
/// because the grammar reads `-x^2` as `(-x)^2`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { c.neg() } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono = fmt_monomial(m, self.ctx.names());
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() && !(neg && k == 0) {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::parse_poly;

    fn ctx() -> Arc<VarContext> {
        VarContext::new(&["x", "y", "z"]).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let c = ctx();
        let a = parse_poly("x+y", &c, Field::Rational).unwrap();
        let b = parse_poly("x-y", &c, Field::Rational).unwrap();
        let want = parse_poly("x^2 - y^2", &c, Field::Rational).unwrap();
        assert_eq!(a.mul(&b).unwrap(), want);
    }

    #[test]
    fn cancellation_gives_zero() {
        let c = ctx();
        let a = parse_poly("x^2", &c, Field::Rational).unwrap();
        assert!(a.add(&a.neg()).unwrap().is_zero());
    }

    #[test]
    fn frobenius_mod_two() {
        let c = ctx();
        let f2 = Field::prime(2).unwrap();
        let a = parse_poly("x+y", &c, f2).unwrap();
        let want = parse_poly("x^2 + y^2", &c, f2).unwrap();
        assert_eq!(a.mul(&a).unwrap(), want);
        assert_eq!(want.num_terms(), 2);
    }

    #[test]
    fn mismatches_are_errors() {
        let c = ctx();
        let d = VarContext::new(&["x", "y"]).unwrap();
        let a = parse_poly("x", &c, Field::Rational).unwrap();
        let b = parse_poly("x", &d, Field::Rational).unwrap();
        assert_eq!(a.add(&b), Err(Error::ContextMismatch));
        let e = parse_poly("x", &c, Field::prime(5).unwrap()).unwrap();
        assert!(matches!(a.mul(&e), Err(Error::FieldMismatch(..))));
    }

    #[test]
    fn homogeneity_cases() {
        let c = ctx();
        let p = |s| parse_poly(s, &c, Field::Rational).unwrap();
        assert_eq!(p("z^2 + x*y").homogeneity(), Homogeneity::Degree(2));
        assert_eq!(p("x + x^2").homogeneity(), Homogeneity::Mixed);
        assert_eq!(p("0").homogeneity(), Homogeneity::Zero);
    }

    #[test]
    fn display_leading_negative() {
        let c = ctx();
        let p = parse_poly("0 - x^2 + 3*y*z", &c, Field::Rational).unwrap();
        let s = p.to_string();
        assert_eq!(s, "-1*x^2 + 3*y*z");
        assert_eq!(parse_poly(&s, &c, Field::Rational).unwrap(), p);
    }

    #[test]
    fn embed_and_substitute() {
        let c = VarContext::new(&["y"]).unwrap();
        let big = ctx();
        let p = parse_poly("y^2", &c, Field::Rational).unwrap();
        let e = p.embed(&big).unwrap();
        assert_eq!(e, parse_poly("y^2", &big, Field::Rational).unwrap());
        let img = vec![parse_poly("x+z", &big, Field::Rational).unwrap()];
        let s = p.substitute(&img, &big).unwrap();
        assert_eq!(s, parse_poly("x^2 + 2*x*z + z^2", &big, Field::Rational).unwrap());
    }
}
