//! Integer power series: truncations, reduced rational series, the closed-form
//! Poincaré series and denominator formulas, Padé-style reconstruction and
//! termwise comparison.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::IntPolynomial;
use crate::linalg::{bareiss_solve, Solution};

/// Default truncation order.
pub const DEFAULT_ORDER: usize = 8;

/// Coefficients `a_0..a_N` of a power series.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        TruncatedSeries { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn from_usize(c: &[usize]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `N`, the index of the last known coefficient.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    pub fn truncate(&self, n: usize) -> Self {
        Self::new(self.coeffs.iter().take(n + 1).cloned().collect())
    }

    /// Cauchy product, truncated to the shorter order.
    pub fn convolve(&self, o: &Self) -> Self {
        let n = self.len().min(o.len());
        Self::new(
            (0..n)
                .map(|k| (0..=k).map(|i| &self.coeffs[i] * &o.coeffs[k - i]).sum())
                .collect(),
        )
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    GolodFormula,
    Levin,
    ConnectedSum,
    Compressed,
    Stretched,
    Kustin,
    PadeReconstructed,
    UserAsserted,
}

impl Provenance {
    pub fn tag(self) -> &'static str {
        match self {
            Provenance::GolodFormula => "golod-formula",
            Provenance::Levin => "levin",
            Provenance::ConnectedSum => "connected-sum",
            Provenance::Compressed => "compressed",
            Provenance::Stretched => "stretched",
            Provenance::Kustin => "kustin",
            Provenance::PadeReconstructed => "pade-reconstructed",
            Provenance::UserAsserted => "user-asserted",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// `num / den` in lowest terms with `den(0) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSeries {
    num: IntPolynomial,
    den: IntPolynomial,
    provenance: Provenance,
    full_denominator: Option<IntPolynomial>,
    flags: Vec<String>,
}

impl RationalSeries {
    /// Reduces `num/den`. Fails unless the reduced denominator has constant
    /// term ±1, which is needed for an integral expansion.
    pub fn new(num: IntPolynomial, den: IntPolynomial, provenance: Provenance) -> Result<Self> {
        if den.constant_term().is_zero() {
            return Err(Error::NotPoincare(format!("denominator {den} vanishes at 0")));
        }
        let (mut n, mut d) = if num.is_zero() {
            (IntPolynomial::zero(), IntPolynomial::one())
        } else {
            let g = num.gcd(&den);
            (
                num.div_exact(&g).expect("gcd divides"),
                den.div_exact(&g).expect("gcd divides"),
            )
        };
        let c = d.constant_term();
        if c == -BigInt::one() {
            n = n.neg();
            d = d.neg();
        } else if !c.is_one() {
            return Err(Error::NotPoincare(format!(
                "reduced denominator {d} has constant term {c}; the expansion is not integral"
            )));
        }
        Ok(RationalSeries {
            num: n,
            den: d,
            provenance,
            full_denominator: None,
            flags: Vec::new(),
        })
    }

    /// A polynomial series.
    pub fn polynomial(p: IntPolynomial, provenance: Provenance) -> Self {
        Self::new(p, IntPolynomial::one(), provenance).expect("denominator 1")
    }

    pub fn with_full_denominator(mut self, d: IntPolynomial) -> Self {
        self.full_denominator = Some(d);
        self
    }

    pub fn with_flag(mut self, note: impl Into<String>) -> Self {
        self.flags.push(note.into());
        self
    }

    pub fn with_provenance(mut self, p: Provenance) -> Self {
        self.provenance = p;
        self
    }

    pub fn numerator(&self) -> &IntPolynomial {
        &self.num
    }

    pub fn denominator(&self) -> &IntPolynomial {
        &self.den
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// The unreduced class denominator, when one was recorded.
    pub fn full_denominator(&self) -> Option<&IntPolynomial> {
        self.full_denominator.as_ref()
    }

    pub fn flags(&self) -> &[String] {
        &self.flags
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    /// First `n + 1` coefficients, by the recurrence `d * a = p`.
    pub fn expand(&self, n: usize) -> TruncatedSeries {
        let d = self.den.coeffs();
        let mut a: Vec<BigInt> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut v = self.num.coeff(k);
            for (j, dj) in d.iter().enumerate().skip(1).take(k) {
                v -= dj * &a[k - j];
            }
            a.push(v);
        }
        TruncatedSeries::new(a)
    }

    /// `1 / self` as numerator and denominator (not reduced).
    fn reciprocal_parts(&self) -> (IntPolynomial, IntPolynomial) {
        (self.den.clone(), self.num.clone())
    }
}

impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.num, self.den)
    }
}

fn one_plus_t_pow(e: u32) -> IntPolynomial {
    IntPolynomial::from_i64(&[1, 1]).pow(e)
}

/// `(1+t)^e / (1 - Σ_{i>=1} h_i t^{i+1})`, reduced. The unreduced
/// denominator is kept as the full denominator.
pub fn golod_series(e: usize, h: &[usize]) -> Result<RationalSeries> {
    if h.first() != Some(&1) {
        return Err(Error::Invalid("Koszul ranks must start with h_0 = 1".into()));
    }
    if e == 0 {
        return Err(Error::Invalid("golod formula needs e >= 1".into()));
    }
    let mut d = vec![BigInt::one()];
    for (i, hi) in h.iter().enumerate().skip(1) {
        d.resize(i + 2, BigInt::zero());
        d[i + 1] = -BigInt::from(*hi);
    }
    let d = IntPolynomial::new(d);
    Ok(RationalSeries::new(one_plus_t_pow(e as u32), d.clone(), Provenance::GolodFormula)?.with_full_denominator(d))
}

/// Series with `1/P' = 1/P - t^2`.
pub fn levin_quotient_series(p: &RationalSeries) -> Result<RationalSeries> {
    let (rn, rd) = p.reciprocal_parts();
    let t2 = IntPolynomial::monomial(1, 2);
    let den = rn.sub(&t2.mul(&rd));
    let out = RationalSeries::new(rd, den, Provenance::Levin)?;
    if p.num == IntPolynomial::one() && p.den == IntPolynomial::one() {
        return Ok(out.with_flag("input P = 1 is the series of a regular ring, not of an Artinian Gorenstein ring"));
    }
    Ok(out)
}

/// Series with `1/P = 1/PS + 1/PT + t^2 - 1`.
pub fn connected_sum_series(ps: &RationalSeries, pt: &RationalSeries) -> Result<RationalSeries> {
    let (sn, sd) = (&ps.num, &ps.den);
    let (tn, td) = (&pt.num, &pt.den);
    let prod = sn.mul(tn);
    let recip_num = sd
        .mul(tn)
        .add(&td.mul(sn))
        .add(&IntPolynomial::from_i64(&[-1, 0, 1]).mul(&prod));
    RationalSeries::new(prod, recip_num, Provenance::ConnectedSum)
}

/// `1 - t (P - 1) + t^{e+1} (1 + t)` for the Hilbert series `P` of degree `e`.
pub fn compressed_denominator(e: usize, pqr: &IntPolynomial) -> Result<IntPolynomial> {
    if pqr.degree() != Some(e) {
        return Err(Error::DegreeMismatch(format!(
            "expected a polynomial of degree {e}, got {pqr}"
        )));
    }
    if !pqr.constant_term().is_one() || pqr.coeffs().iter().any(|c| c.is_negative()) {
        return Err(Error::Invalid(format!(
            "{pqr} must have constant term 1 and non-negative coefficients"
        )));
    }
    let t = IntPolynomial::monomial(1, 1);
    let tail = IntPolynomial::monomial(1, e + 1).mul(&IntPolynomial::from_i64(&[1, 1]));
    Ok(IntPolynomial::one().sub(&t.mul(&pqr.sub(&IntPolynomial::one()))).add(&tail))
}

/// `(1+t)^e / d` for the compressed denominator `d`.
pub fn compressed_series(e: usize, pqr: &IntPolynomial) -> Result<RationalSeries> {
    let d = compressed_denominator(e, pqr)?;
    Ok(RationalSeries::new(one_plus_t_pow(e as u32), d.clone(), Provenance::Compressed)?.with_full_denominator(d))
}

/// `1/(1 - e t + t^2)` with full denominator `(1+t)^e (1 - e t + t^2)`.
pub fn stretched_series(e: usize) -> Result<RationalSeries> {
    if e == 0 {
        return Err(Error::Invalid("stretched formula needs e >= 1".into()));
    }
    let q = IntPolynomial::from_i64(&[1, -(e as i64), 1]);
    let full = one_plus_t_pow(e as u32).mul(&q);
    let out = RationalSeries::new(IntPolynomial::one(), q, Provenance::Stretched)?.with_full_denominator(full);
    if e < 3 {
        return Ok(out.with_flag(format!("e = {e}: the stretched non-complete-intersection case needs e >= 3")));
    }
    Ok(out)
}

fn is_prime(c: u64) -> bool {
    c >= 2 && (2..).take_while(|d| d * d <= c).all(|d| c % d != 0)
}

/// Denominator for Kustin's rings with parameters `n >= 2` and characteristic `c`.
pub fn kustin_denominator(n: usize, c: u64) -> Result<IntPolynomial> {
    if n < 2 {
        return Err(Error::Invalid(format!("n = {n}; need n >= 2")));
    }
    if c != 0 && !is_prime(c) {
        return Err(Error::Invalid(format!("characteristic {c} is neither 0 nor prime")));
    }
    let e = 2 * n as u32 + 1;
    let front = one_plus_t_pow(e);
    let one_minus = IntPolynomial::from_i64(&[1, -1]).pow(e);
    let t3 = IntPolynomial::monomial(1, 3);
    let n64 = n as u64;
    if c == 0 || n64 + 1 <= c {
        return Ok(front.mul(&one_minus.sub(&t3)));
    }
    if n64 + 2 <= 2 * c && c <= n64 {
        let k = 2 * c as usize;
        let factor = IntPolynomial::one()
            .sub(&IntPolynomial::monomial(1, k + 1))
            .sub(&IntPolynomial::monomial(1, k + 2));
        return Ok(front.mul(&one_minus.mul(&factor).sub(&t3)));
    }
    Err(Error::Invalid(format!(
        "no closed formula for n = {n} in characteristic {c}"
    )))
}

/// `(1+t)^{2n+1} / d` for the Kustin denominator `d`.
pub fn kustin_series(n: usize, c: u64) -> Result<RationalSeries> {
    let d = kustin_denominator(n, c)?;
    Ok(RationalSeries::new(one_plus_t_pow(2 * n as u32 + 1), d.clone(), Provenance::Kustin)?.with_full_denominator(d))
}

/// Full denominator `d` with `P = (1+t)^e / d`, when the division is exact.
pub fn full_denominator_for(rs: &RationalSeries, e: usize) -> Option<IntPolynomial> {
    one_plus_t_pow(e as u32).mul(rs.denominator()).div_exact(rs.numerator())
}

fn fit(ts: &TruncatedSeries, p: usize, q: usize) -> Option<RationalSeries> {
    let a = ts.coeffs();
    let n = a.len() - 1;
    let at = |k: i64| if k < 0 { BigInt::zero() } else { a[k as usize].clone() };
    let mut d = vec![BigInt::one()];
    if q > 0 {
        let rows: Vec<Vec<BigInt>> = (p + 1..=n)
            .map(|k| (1..=q).map(|j| at(k as i64 - j as i64)).collect())
            .collect();
        let rhs: Vec<BigInt> = (p + 1..=n).map(|k| -a[k].clone()).collect();
        let Solution::Unique(x) = bareiss_solve(&rows, &rhs) else {
            return None;
        };
        let scale = x.iter().fold(BigInt::one(), |l, c| l.lcm(&c.denom()));
        d = vec![scale.clone()];
        d.extend(x.iter().map(|c| c.numer() * (&scale / c.denom())));
    }
    let num: Vec<BigInt> = (0..=p)
        .map(|k| (0..=q.min(k)).map(|j| &d[j] * &a[k - j]).sum())
        .collect();
    let rs = RationalSeries::new(IntPolynomial::new(num), IntPolynomial::new(d), Provenance::PadeReconstructed).ok()?;
    (rs.expand(n) == *ts).then_some(rs)
}

/// Smallest `p/d` (minimal `deg d`, then minimal `deg p`) with `deg p <= dp`,
/// `deg d <= dq`, `d(0) = 1`, matching every supplied coefficient. Needs
/// `dp + dq + 1 <= N`.
pub fn pade_reconstruct(ts: &TruncatedSeries, dp: usize, dq: usize) -> Result<Option<RationalSeries>> {
    let Some(n) = ts.order() else {
        return Err(Error::Insufficient("empty series".into()));
    };
    if dp + dq + 1 > n {
        return Err(Error::Insufficient(format!(
            "{} coefficients cannot overdetermine degrees ({dp}, {dq})",
            n + 1
        )));
    }
    for q in 0..=dq {
        for p in 0..=dp {
            if let Some(rs) = fit(ts, p, q) {
                return Ok(Some(rs));
            }
        }
    }
    Ok(None)
}

/// Scans all degree pairs with `p + q + 1 <= N`, smallest denominator first.
pub fn pade_auto(ts: &TruncatedSeries) -> Result<Option<RationalSeries>> {
    let Some(n) = ts.order().filter(|n| *n >= 1) else {
        return Err(Error::Insufficient("need at least two coefficients".into()));
    };
    for q in 0..n {
        for p in 0..n - q {
            if let Some(rs) = fit(ts, p, q) {
                return Ok(Some(rs));
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Comparison {
    Equal,
    /// `a <= b` termwise, not equal
    ALeB,
    /// `b <= a` termwise, not equal
    BLeA,
    Incomparable,
}

impl Comparison {
    pub fn tag(self) -> &'static str {
        match self {
            Comparison::Equal => "equal",
            Comparison::ALeB => "a<=b",
            Comparison::BLeA => "b<=a",
            Comparison::Incomparable => "incomparable",
        }
    }
}

/// Termwise comparison on the common prefix.
pub fn series_compare(a: &TruncatedSeries, b: &TruncatedSeries) -> Comparison {
    let (mut le, mut ge) = (true, true);
    for (x, y) in a.coeffs.iter().zip(&b.coeffs) {
        le &= x <= y;
        ge &= x >= y;
    }
    match (le, ge) {
        (true, true) => Comparison::Equal,
        (true, false) => Comparison::ALeB,
        (false, true) => Comparison::BLeA,
        (false, false) => Comparison::Incomparable,
    }
}

/// Lower Golod bound `(1+t)^e / (1 - t^2)^{h_1}` to order `n`.
pub fn golod_lower_bound(e: usize, h1: usize, n: usize) -> TruncatedSeries {
    let den = IntPolynomial::from_i64(&[1, 0, -1]).pow(h1 as u32);
    RationalSeries::new(one_plus_t_pow(e as u32), den, Provenance::GolodFormula)
        .expect("constant term 1")
        .expand(n)
}
