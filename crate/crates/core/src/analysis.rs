//! Exact real-root isolation in `(0, 1]` by Sturm sequences, the root-based
//! denominator checks, curvature estimates and Tor-vanishing certificates.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{from_qpoly_primitive, qpoly_divrem, IntPolynomial, Rational};
use crate::homology::{betti_of_residue_field, koszul_homology};
use crate::ringkit::QuotientRing;
use crate::series::{
    compressed_series, full_denominator_for, golod_series, kustin_series, pade_auto, stretched_series, Provenance,
    RationalSeries, TruncatedSeries,
};

/// Default isolation width `2^-20`.
pub fn default_epsilon() -> Rational {
    Rational::new(1, 1 << 20)
}

fn to_q(p: &IntPolynomial) -> Vec<Rational> {
    p.coeffs().iter().cloned().map(Rational::from).collect()
}

/// `p / gcd(p, p')`, primitive with the sign of `p`'s leading coefficient.
pub fn square_free_part(p: &IntPolynomial) -> IntPolynomial {
    let g = p.gcd(&p.derivative());
    if g.degree().unwrap_or(0) == 0 {
        return p.primitive_part();
    }
    let (q, _) = qpoly_divrem(&to_q(p), &to_q(&g)).expect("nonzero gcd");
    let out = from_qpoly_primitive(&q);
    if out.leading().is_negative() != p.leading().is_negative() {
        out.neg()
    } else {
        out
    }
}

/// Sturm sequence of `p`: `p, p', -rem(p, p'), ...`, each scaled by a
/// positive rational to a primitive integer polynomial.
pub fn sturm_sequence(p: &IntPolynomial) -> Vec<IntPolynomial> {
    let mut seq = vec![p.clone()];
    let d = p.derivative();
    if d.is_zero() {
        return seq;
    }
    seq.push(d);
    loop {
        let n = seq.len();
        let (_, r) = qpoly_divrem(&to_q(&seq[n - 2]), &to_q(&seq[n - 1])).expect("nonzero");
        if r.is_empty() {
            break;
        }
        seq.push(from_qpoly_primitive(&r).neg());
    }
    seq
}

fn sign_changes(seq: &[IntPolynomial], x: &Rational) -> usize {
    let signs: Vec<i32> = seq.iter().map(|s| s.sign_at(x)).filter(|s| *s != 0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Sturm counter for the distinct real roots of a fixed polynomial.
struct Counter {
    seq: Vec<IntPolynomial>,
}

impl Counter {
    fn new(p: &IntPolynomial) -> Self {
        Counter {
            seq: sturm_sequence(&square_free_part(p)),
        }
    }

    /// Distinct roots in `(a, b]`.
    fn count(&self, a: &Rational, b: &Rational) -> usize {
        sign_changes(&self.seq, a).saturating_sub(sign_changes(&self.seq, b))
    }
}

/// Number of distinct real roots of `p` in `(a, b]`.
pub fn count_roots(p: &IntPolynomial, a: &Rational, b: &Rational) -> usize {
    if p.is_zero() || a >= b {
        return 0;
    }
    Counter::new(p).count(a, b)
}

/// A root isolated in `(lo, hi]`, or exactly at `lo = hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatedRoot {
    pub lo: Rational,
    pub hi: Rational,
    pub multiplicity: usize,
}

impl IsolatedRoot {
    pub fn exact(&self) -> Option<&Rational> {
        (self.lo == self.hi).then_some(&self.lo)
    }

    pub fn width(&self) -> Rational {
        self.hi.sub(&self.lo)
    }

    pub fn midpoint(&self) -> Rational {
        self.lo.add(&self.hi).div(&Rational::from_int(2))
    }
}

impl fmt::Display for IsolatedRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exact() {
            Some(r) => write!(f, "{r} (multiplicity {})", self.multiplicity),
            None => write!(f, "({}, {}] (multiplicity {})", self.lo, self.hi, self.multiplicity),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootReport {
    pub polynomial: IntPolynomial,
    pub roots: Vec<IsolatedRoot>,
}

impl RootReport {
    /// Number of roots in the open interval `(0, 1)`, with multiplicity.
    pub fn count_below_one(&self) -> usize {
        self.roots
            .iter()
            .filter(|r| r.exact() != Some(&Rational::one()))
            .map(|r| r.multiplicity)
            .sum()
    }

    pub fn smallest(&self) -> Option<&IsolatedRoot> {
        self.roots.first()
    }
}

fn shrink(c: &Counter, sqf: &IntPolynomial, root: &mut IsolatedRoot) {
    if root.exact().is_some() {
        return;
    }
    if sqf.sign_at(&root.hi) == 0 {
        root.lo = root.hi.clone();
        return;
    }
    let m = root.midpoint();
    if sqf.sign_at(&m) == 0 {
        root.lo = m.clone();
        root.hi = m;
    } else if c.count(&root.lo, &m) == 1 {
        root.hi = m;
    } else {
        root.lo = m;
    }
}

/// Looks for a rational root `num/den` inside the interval, with `den`
/// dividing the leading coefficient.
fn rational_root_in(sqf: &IntPolynomial, lo: &Rational, hi: &Rational) -> Option<Rational> {
    let lead = sqf.leading().abs().to_u64()?;
    if lead > 1 << 40 {
        return None;
    }
    let mut divisors = Vec::new();
    let mut k = 1u64;
    while k * k <= lead {
        if lead % k == 0 {
            divisors.push(k);
            divisors.push(lead / k);
        }
        k += 1;
    }
    divisors.sort_unstable();
    divisors.dedup();
    for q in divisors {
        let qb = BigInt::from(q);
        let start = lo.mul(&Rational::from_bigint(qb.clone())).floor();
        let end = hi.mul(&Rational::from_bigint(qb.clone())).floor();
        if &end - &start > BigInt::from(64) {
            continue;
        }
        let mut p = start;
        while p <= end {
            let cand = Rational::from_big(num_rational::BigRational::new(p.clone(), qb.clone()));
            if &cand > lo && &cand <= hi && sqf.sign_at(&cand) == 0 {
                return Some(cand);
            }
            p += 1;
        }
    }
    None
}

/// Isolates the distinct real roots of `p` in `(0, 1]` to width `<= eps`.
/// Multiplicities come from the chain `p, gcd(p, p'), ...`.
pub fn real_roots_unit_interval(p: &IntPolynomial, eps: &Rational) -> Result<RootReport> {
    if p.is_zero() {
        return Err(Error::Invalid("zero polynomial".into()));
    }
    let base = p.strip_t_powers();
    let mut roots = Vec::new();
    if base.degree().unwrap_or(0) > 0 {
        let sqf = square_free_part(&base);
        let c = Counter::new(&sqf);
        let mut stack = vec![(Rational::zero(), Rational::one())];
        while let Some((a, b)) = stack.pop() {
            match c.count(&a, &b) {
                0 => {}
                1 => {
                    let mut r = IsolatedRoot {
                        lo: a,
                        hi: b,
                        multiplicity: 0,
                    };
                    while r.exact().is_none() && r.width() > *eps {
                        shrink(&c, &sqf, &mut r);
                    }
                    if r.exact().is_none() {
                        if sqf.sign_at(&r.hi) == 0 {
                            r.lo = r.hi.clone();
                        } else if let Some(q) = rational_root_in(&sqf, &r.lo, &r.hi) {
                            r.lo = q.clone();
                            r.hi = q;
                        }
                    }
                    roots.push(r);
                }
                _ => {
                    let m = a.add(&b).div(&Rational::from_int(2));
                    // right half first so that popping yields ascending order
                    stack.push((m.clone(), b));
                    stack.push((a, m));
                }
            }
        }
        // multiplicities
        let mut chain = vec![base.clone()];
        loop {
            let last = chain.last().unwrap();
            let g = last.gcd(&last.derivative());
            if g.degree().unwrap_or(0) == 0 {
                break;
            }
            chain.push(g);
        }
        let counters: Vec<Counter> = chain.iter().map(Counter::new).collect();
        for r in roots.iter_mut() {
            r.multiplicity = chain
                .iter()
                .zip(&counters)
                .filter(|(g, cnt)| match r.exact() {
                    Some(x) => g.sign_at(x) == 0,
                    None => cnt.count(&r.lo, &r.hi) == 1,
                })
                .count();
        }
    }
    Ok(RootReport {
        polynomial: p.clone(),
        roots,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct M4Check {
    pub passes: bool,
    /// roots in `(0, 1)` counted with multiplicity
    pub root_count: usize,
}

/// At most one root in `(0, 1)`, counted with multiplicity.
pub fn lemma_m4_check(d: &IntPolynomial) -> Result<M4Check> {
    let rep = real_roots_unit_interval(d, &default_epsilon())?;
    let n = rep.count_below_one();
    Ok(M4Check {
        passes: n <= 1,
        root_count: n,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignCheck {
    pub value_at_one: BigInt,
    pub nonpositive: bool,
}

pub fn denominator_sign_check(d: &IntPolynomial) -> SignCheck {
    let v = d.eval_int(&BigInt::one());
    SignCheck {
        nonpositive: !v.is_positive(),
        value_at_one: v,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurvatureKind {
    /// finite projective dimension
    Zero,
    One,
    /// `curv > 1`, enclosed in `[lower, upper]`
    Value,
    HeuristicOnly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EstimateSource {
    Denominator,
    BettiSequence,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvatureEstimate {
    pub kind: CurvatureKind,
    pub source: EstimateSource,
    pub lower: Rational,
    pub upper: Rational,
    /// smallest root of the reduced denominator in `(0, 1]`, when used
    pub root: Option<IsolatedRoot>,
    /// `β_{n+1} / β_n`
    pub ratios: Vec<Rational>,
    /// enclosures of `β_n^{1/n}`
    pub nth_roots: Vec<(Rational, Rational)>,
}

impl CurvatureEstimate {
    pub fn exact(&self) -> Option<&Rational> {
        (self.lower == self.upper).then_some(&self.lower)
    }

    pub fn is_heuristic(&self) -> bool {
        self.kind == CurvatureKind::HeuristicOnly
    }

    fn simple(kind: CurvatureKind, value: Rational) -> Self {
        CurvatureEstimate {
            kind,
            source: EstimateSource::Denominator,
            lower: value.clone(),
            upper: value,
            root: None,
            ratios: Vec::new(),
            nth_roots: Vec::new(),
        }
    }
}

/// Order to which Poincaré positivity is validated.
const POSITIVITY_ORDER: usize = 16;

/// `curv = 1/ρ` for the smallest root `ρ` of the reduced denominator in `(0, 1]`.
pub fn curvature_from_denominator(rs: &RationalSeries) -> Result<CurvatureEstimate> {
    if !rs.expand(POSITIVITY_ORDER).is_nonnegative() {
        return Err(Error::NotPoincare(format!("{rs} has a negative coefficient")));
    }
    if rs.is_polynomial() {
        return Ok(CurvatureEstimate::simple(CurvatureKind::Zero, Rational::zero()));
    }
    let eps = default_epsilon();
    let rep = real_roots_unit_interval(rs.denominator(), &eps)?;
    let Some(first) = rep.smallest() else {
        return Err(Error::NotPoincare(format!(
            "denominator of {rs} has no root in (0, 1]"
        )));
    };
    let mut root = first.clone();
    if let Some(x) = root.exact() {
        let kind = if x.is_one() { CurvatureKind::One } else { CurvatureKind::Value };
        let mut est = CurvatureEstimate::simple(kind, x.inv());
        est.root = Some(root);
        return Ok(est);
    }
    // curv lies in [1/hi, 1/lo); refine until that enclosure is narrow enough
    let sqf = square_free_part(&rs.denominator().strip_t_powers());
    let c = Counter::new(&sqf);
    loop {
        if root.lo.is_zero() || root.width() > eps.mul(&root.lo).mul(&root.hi) {
            shrink(&c, &sqf, &mut root);
            if root.exact().is_some() {
                let x = root.lo.clone();
                let mut est = CurvatureEstimate::simple(CurvatureKind::Value, x.inv());
                est.root = Some(root);
                return Ok(est);
            }
            continue;
        }
        break;
    }
    let mut est = CurvatureEstimate::simple(CurvatureKind::Value, root.hi.inv());
    est.upper = root.lo.inv();
    est.root = Some(root);
    Ok(est)
}

/// Enclosure `[lo, hi]` of `x^{1/n}` with `hi - lo <= 2^-20`.
fn nth_root_enclosure(x: &BigInt, n: u32) -> (Rational, Rational) {
    let target = Rational::from_bigint(x.clone());
    let mut lo = Rational::zero();
    let mut hi = Rational::one().max(target.clone());
    let eps = default_epsilon();
    while hi.sub(&lo) > eps {
        let m = lo.add(&hi).div(&Rational::from_int(2));
        if m.pow(n) <= target {
            lo = m;
        } else {
            hi = m;
        }
    }
    (lo, hi)
}

/// Heuristic growth data of a Betti sequence. Never used in certificates.
pub fn curvature_from_betti(ts: &TruncatedSeries) -> Result<CurvatureEstimate> {
    if ts.len() < 4 {
        return Err(Error::Insufficient(format!("need at least 4 terms, got {}", ts.len())));
    }
    if !ts.is_nonnegative() {
        return Err(Error::NotPoincare("negative Betti number".into()));
    }
    let c = ts.coeffs();
    let ratios: Vec<Rational> = c
        .windows(2)
        .filter(|w| !w[0].is_zero())
        .map(|w| Rational::from_bigint(w[1].clone()).div(&Rational::from_bigint(w[0].clone())))
        .collect();
    let nth_roots = c
        .iter()
        .enumerate()
        .skip(1)
        .map(|(n, b)| nth_root_enclosure(b, n as u32))
        .collect();
    let last = ratios.last().cloned().unwrap_or_else(Rational::zero);
    Ok(CurvatureEstimate {
        kind: CurvatureKind::HeuristicOnly,
        source: EstimateSource::BettiSequence,
        lower: last.clone(),
        upper: last,
        root: None,
        ratios,
        nth_roots,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    TorVanishing,
    Inconclusive,
    NotApplicable,
}

impl Verdict {
    pub fn tag(self) -> &'static str {
        match self {
            Verdict::TorVanishing => "tor-vanishing",
            Verdict::Inconclusive => "inconclusive",
            Verdict::NotApplicable => "not-applicable",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub verdict: Verdict,
    pub d_at_one: BigInt,
    pub provenance: Provenance,
    pub generalized_golod_asserted: bool,
    pub rationale: String,
}

/// Tor-vanishing certificate from a common denominator `d`. A vanishing
/// `d(1)` is inconclusive whether or not generalized Golodness is asserted.
pub fn torvanishing_certificate(d: &IntPolynomial, provenance: Provenance, asserted: bool) -> Result<Certificate> {
    if d.is_zero() {
        return Err(Error::Invalid("zero denominator".into()));
    }
    let v = d.eval_int(&BigInt::one());
    let (verdict, rationale) = if v.is_zero() {
        (
            Verdict::Inconclusive,
            format!("d(1) = 0 for d = {d} ({provenance}); the criterion d(1) != 0 does not apply"),
        )
    } else if asserted {
        (
            Verdict::TorVanishing,
            format!(
                "d(1) = {v} != 0 for the common denominator d = {d} ({provenance}); over a generalized Golod ring this forces Tor_i(M, N) = 0 for i >> 0 only when M or N has finite projective dimension"
            ),
        )
    } else {
        (
            Verdict::NotApplicable,
            format!("d(1) = {v} for d = {d} ({provenance}), but generalized Golodness was not asserted"),
        )
    };
    Ok(Certificate {
        verdict,
        d_at_one: v,
        provenance,
        generalized_golod_asserted: asserted,
        rationale,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurvatureTag {
    Zero,
    One,
    CurvK,
    Violation,
}

impl CurvatureTag {
    pub fn tag(self) -> &'static str {
        match self {
            CurvatureTag::Zero => "0",
            CurvatureTag::One => "1",
            CurvatureTag::CurvK => "curv_k",
            CurvatureTag::Violation => "violation",
        }
    }

    pub fn is_zero_or_one(self) -> bool {
        matches!(self, CurvatureTag::Zero | CurvatureTag::One)
    }
}

/// Matches `est` against `{0, 1, curv_k}` by interval overlap widened by `tol`.
pub fn lemma_m5_classify(est: &CurvatureEstimate, curv_k: &CurvatureEstimate, tol: &Rational) -> Result<CurvatureTag> {
    if est.is_heuristic() || curv_k.is_heuristic() {
        return Err(Error::Refused("classification needs denominator-based enclosures".into()));
    }
    let lo = est.lower.sub(tol);
    let hi = est.upper.add(tol);
    let hits = |a: &Rational, b: &Rational| a <= &hi && b >= &lo;
    if est.kind == CurvatureKind::Zero || hits(&Rational::zero(), &Rational::zero()) {
        return Ok(CurvatureTag::Zero);
    }
    if est.kind == CurvatureKind::One || hits(&Rational::one(), &Rational::one()) {
        return Ok(CurvatureTag::One);
    }
    if hits(&curv_k.lower, &curv_k.upper) {
        return Ok(CurvatureTag::CurvK);
    }
    Ok(CurvatureTag::Violation)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DenominatorClass {
    Golod,
    Compressed,
    Stretched,
    Kustin { n: usize, c: u64 },
    /// reconstruction from `β_0..β_order` of the residue field
    Pade { order: usize },
}

impl DenominatorClass {
    pub fn name(self) -> &'static str {
        match self {
            DenominatorClass::Golod => "golod",
            DenominatorClass::Compressed => "compressed",
            DenominatorClass::Stretched => "stretched",
            DenominatorClass::Kustin { .. } => "kustin",
            DenominatorClass::Pade { .. } => "pade",
        }
    }

    /// Closed formulas carry the generalized Golod assertion with them.
    pub fn asserts_generalized_golod(self) -> bool {
        !matches!(self, DenominatorClass::Pade { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassDenominator {
    pub class: DenominatorClass,
    /// `P^R_k` in lowest terms
    pub series: RationalSeries,
    /// `d` with `P^R_k = (1+t)^e / d`
    pub full: IntPolynomial,
    /// directly computed `β_0..β_n` of `k`, when available
    pub betti: Option<Vec<usize>>,
    /// whether `series` agrees with `betti`
    pub agrees_with_betti: Option<bool>,
}

/// Denominator of `P^R_k` for `R` from a class formula or by reconstruction.
/// With `check_order`, the series is compared with directly computed Betti
/// numbers up to that order.
pub fn class_denominator(
    r: &QuotientRing,
    class: DenominatorClass,
    check_order: Option<usize>,
) -> Result<ClassDenominator> {
    let e = r.nvars();
    let series = match class {
        DenominatorClass::Golod => golod_series(e, &koszul_homology(r).ranks)?,
        DenominatorClass::Compressed => {
            let h = koszul_homology(r).ranks;
            let pqr = IntPolynomial::new(h.iter().map(|&x| BigInt::from(x)).collect());
            compressed_series(e, &pqr)?
        }
        DenominatorClass::Stretched => stretched_series(e)?,
        DenominatorClass::Kustin { n, c } => kustin_series(n, c)?,
        DenominatorClass::Pade { order } => {
            return pade_denominator(e, betti_of_residue_field(r, order)?);
        }
    };
    let full = series.full_denominator().cloned().unwrap_or_else(|| series.denominator().clone());
    let (betti, agrees) = match check_order {
        Some(n) => {
            let b = betti_of_residue_field(r, n)?;
            let ok = series.expand(n) == TruncatedSeries::from_usize(&b);
            (Some(b), Some(ok))
        }
        None => (None, None),
    };
    Ok(ClassDenominator {
        class,
        series,
        full,
        betti,
        agrees_with_betti: agrees,
    })
}

/// Reconstructs `P^R_k` from `β_0..β_n` of the residue field of a ring with
/// `e` variables.
pub fn pade_denominator(e: usize, betti: Vec<usize>) -> Result<ClassDenominator> {
    let ts = TruncatedSeries::from_usize(&betti);
    let Some(rs) = pade_auto(&ts)? else {
        return Err(Error::Insufficient(format!(
            "no rational function fits {ts} with a surplus coefficient"
        )));
    };
    let rs = match full_denominator_for(&rs, e) {
        Some(f) => rs.with_full_denominator(f),
        None => rs.with_flag("(1+t)^e * den / num is not a polynomial; the reduced denominator is used"),
    };
    let full = rs.full_denominator().cloned().unwrap_or_else(|| rs.denominator().clone());
    Ok(ClassDenominator {
        class: DenominatorClass::Pade { order: betti.len() - 1 },
        series: rs,
        full,
        betti: Some(betti),
        agrees_with_betti: Some(true),
    })
}

/// Certificate for `R` from the denominator of its class. Closed formulas
/// assert generalized Golodness themselves; reconstruction needs `asserted`.
pub fn certify_ring(
    r: &QuotientRing,
    class: DenominatorClass,
    asserted: bool,
    check_order: Option<usize>,
) -> Result<(ClassDenominator, Certificate)> {
    let cd = class_denominator(r, class, check_order)?;
    let flag = asserted || class.asserts_generalized_golod();
    let cert = torvanishing_certificate(&cd.full, cd.series.provenance(), flag)?;
    Ok((cd, cert))
}
