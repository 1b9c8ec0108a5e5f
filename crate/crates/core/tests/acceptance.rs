//! Acceptance runner. One line per criterion; exits nonzero if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use golodkit::analysis::{
    certify_ring, curvature_from_denominator, default_epsilon, denominator_sign_check, lemma_m4_check,
    lemma_m5_classify, real_roots_unit_interval, torvanishing_certificate, CurvatureTag, DenominatorClass, Verdict,
};
use golodkit::exactmath::{IntPolynomial, Rational};
use golodkit::homology::{betti_of_residue_field, koszul_homology, resolve, tor, ModulePresentation};
use golodkit::ringkit::{connected_sum, teter_quotient, QuotientRing};
use golodkit::series::{
    compressed_denominator, connected_sum_series, golod_series, kustin_denominator, levin_quotient_series,
    pade_auto, Provenance, RationalSeries,
};
use num_bigint::BigInt;

fn poly(c: &[i64]) -> IntPolynomial {
    IntPolynomial::from_i64(c)
}

fn one_over(d: &[i64]) -> RationalSeries {
    RationalSeries::new(poly(&[1]), poly(d), Provenance::UserAsserted).unwrap()
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Denominators produced by the formula database along the way.
#[derive(Default)]
struct Ledger {
    denominators: Vec<(String, IntPolynomial)>,
}

fn betti(r: &QuotientRing, n: usize) -> Result<Vec<usize>, String> {
    betti_of_residue_field(r, n).map_err(err)
}

fn c1(led: &mut Ledger) -> Check {
    let r = compressed();
    let b = betti(&r, 5)?;
    ensure(b == [1, 3, 8, 21, 55, 144], || format!("betti {b:?}"))?;
    ensure(series(&b) == one_over(&[1, -3, 1]).expand(5), || "expansion".into())?;
    let h = koszul_homology(&r).ranks;
    ensure(h == [1, 5, 5, 1], || format!("koszul {h:?}"))?;
    let d = compressed_denominator(3, &poly(&[1, 5, 5, 1])).map_err(err)?;
    ensure(d == poly(&[1, 0, -5, -5, 0, 1]), || format!("denominator {d}"))?;
    ensure(poly(&[1, 1]).pow(3).mul(&poly(&[1, -3, 1])) == d, || "identity".into())?;
    let (cd, cert) = certify_ring(&r, DenominatorClass::Compressed, false, None).map_err(err)?;
    ensure(cd.full == d, || format!("certified with {}", cd.full))?;
    ensure(cert.verdict == Verdict::TorVanishing && cert.d_at_one == BigInt::from(-8), || {
        format!("{} with d(1) = {}", cert.verdict.tag(), cert.d_at_one)
    })?;
    led.denominators.push(("compressed".into(), d));
    Ok(())
}

fn c2(_: &mut Ledger) -> Check {
    let s = ring_s();
    let b = betti(&s, 8)?;
    for (n, bn) in b.iter().enumerate() {
        let want = (1usize << (n + 2)) - (n + 3);
        ensure(*bn == want, || format!("β_{n} = {bn}, expected {want}"))?;
    }
    let k_series = pade_auto(&series(&b)).map_err(err)?.ok_or("no fit for k")?;
    ensure(k_series.denominator() == &poly(&[1, -2]).mul(&poly(&[1, -1]).pow(2)), || {
        format!("P_k = {k_series}")
    })?;
    let curv_k = curvature_from_denominator(&k_series).map_err(err)?;

    let m = |g: &[&str]| ModulePresentation::quotient_by_strings(&s, g).map_err(err);
    let (mz, mw, mxy) = (m(&["z"])?, m(&["w"])?, m(&["x", "y"])?);
    for (name, a, bm) in [("S/(z), S/(w)", &mz, &mw), ("S/(z), S/(x,y)", &mz, &mxy)] {
        let t = tor(&s, a, bm, 8).map_err(err)?;
        ensure(t.dims[1..].iter().all(|x| *x == 0), || format!("Tor({name}) = {:?}", t.dims))?;
    }

    let tol = default_epsilon();
    let mut tags = Vec::new();
    for (name, md) in [("S/(z)", &mz), ("S/(w)", &mw), ("S/(x,y)", &mxy)] {
        let bm = resolve(&s, md, 8).map_err(err)?.betti_numbers();
        let rs = pade_auto(&series(&bm)).map_err(err)?.ok_or_else(|| format!("no fit for {name}"))?;
        let est = curvature_from_denominator(&rs).map_err(err)?;
        let tag = lemma_m5_classify(&est, &curv_k, &tol).map_err(err)?;
        tags.push((name, est.exact().cloned(), tag));
    }
    let get = |n: &str| tags.iter().find(|t| t.0 == n).unwrap().clone();
    let (_, cz, tz) = get("S/(z)");
    let (_, cxy, txy) = get("S/(x,y)");
    let (_, _, tw) = get("S/(w)");
    ensure(cxy == Some(Rational::from_int(2)) && txy == CurvatureTag::CurvK, || {
        format!("S/(x,y): curvature {cxy:?}, tag {}", txy.tag())
    })?;
    ensure(cz == Some(Rational::one()) && tz == CurvatureTag::One, || {
        format!("S/(z): curvature {cz:?}, tag {}", tz.tag())
    })?;
    for (pair, a, b) in [("S/(z), S/(w)", tz, tw), ("S/(z), S/(x,y)", tz, txy)] {
        ensure(a.is_zero_or_one() || b.is_zero_or_one(), || format!("{pair}: neither tag in {{0, 1}}"))?;
    }
    for (name, _, tag) in &tags {
        ensure(*tag != CurvatureTag::Violation, || format!("{name}: violation"))?;
    }
    Ok(())
}

fn c3(led: &mut Ledger) -> Check {
    let r = square_of_max(["x", "y"]);
    let h = koszul_homology(&r).ranks;
    ensure(h == [1, 3, 2], || format!("koszul {h:?}"))?;
    let g = golod_series(2, &h).map_err(err)?;
    ensure(g.numerator() == &poly(&[1]) && g.denominator() == &poly(&[1, -2]), || format!("{g}"))?;
    let b = betti(&r, 10)?;
    ensure(b.iter().enumerate().all(|(n, x)| *x == 1 << n), || format!("betti {b:?}"))?;
    ensure(g.expand(10) == series(&b), || "expansion".into())?;
    led.denominators.push(("golod".into(), g.full_denominator().cloned().unwrap_or_else(|| g.denominator().clone())));
    Ok(())
}

fn c4(led: &mut Ledger) -> Check {
    let r = complete_intersection();
    let q = teter_quotient(&r).map_err(err)?;
    let b = betti(&q, 10)?;
    let want = one_over(&[1, -2]);
    ensure(series(&b) == want.expand(10), || format!("betti {b:?}"))?;
    let l = levin_quotient_series(&one_over(&[1, -2, 1])).map_err(err)?;
    ensure(l.expand(10) == series(&b), || format!("levin gives {l}"))?;
    led.denominators.push(("levin".into(), l.denominator().clone()));
    Ok(())
}

fn c5(led: &mut Ledger) -> Check {
    let s = complete_intersection();
    let t = ring(&["z"], &["z^3"]);
    let c = connected_sum(&s, &t).map_err(err)?;
    let presented = connected_example();
    ensure(c.groebner().generators() == presented.groebner().generators(), || {
        format!("connected sum is {}", c.presentation())
    })?;
    ensure(c.length() == s.length() + t.length() - 2 && c.length() == 5, || format!("length {}", c.length()))?;
    let b = betti(&c, 8)?;
    ensure(series(&b) == one_over(&[1, -3, 1]).expand(8), || format!("betti {b:?}"))?;
    let fit = |r: &QuotientRing| -> Result<RationalSeries, String> {
        pade_auto(&series(&betti(r, 8)?)).map_err(err)?.ok_or("no fit".into())
    };
    let (ps, pt) = (fit(&s)?, fit(&t)?);
    ensure(ps.denominator() == &poly(&[1, -1]).pow(2) && pt.denominator() == &poly(&[1, -1]), || {
        format!("P_S = {ps}, P_T = {pt}")
    })?;
    // Levin's identity needs edim >= 2; the edim-1 factor's Teter quotient is read off directly
    let ps_bar = levin_quotient_series(&ps).map_err(err)?;
    let direct_s_bar = fit(&teter_quotient(&s).map_err(err)?)?;
    ensure(ps_bar == direct_s_bar.clone().with_provenance(Provenance::Levin), || {
        format!("levin gives {ps_bar}, Teter quotient of S has {direct_s_bar}")
    })?;
    let pt_bar = fit(&teter_quotient(&t).map_err(err)?)?;
    let cs = connected_sum_series(&ps_bar, &pt_bar).map_err(err)?;
    ensure(cs.expand(8) == series(&b), || format!("formula gives {cs}"))?;
    led.denominators.push(("connected-sum".into(), cs.denominator().clone()));
    Ok(())
}

fn c6(led: &mut Ledger) -> Check {
    let r = gasharov_peeva();
    ensure(r.hilbert() == [1, 5, 5, 1], || format!("hilbert {:?}", r.hilbert()))?;
    let b = betti(&r, 4)?;
    ensure(b == [1, 5, 20, 76, 285], || format!("betti {b:?}"))?;
    let p = one_over(&[1, -5, 5, -1]);
    ensure(p.expand(4) == series(&b), || "expansion".into())?;
    let x1 = r.parse_element("x1").map_err(err)?;
    ensure(r.exact_pair_check(&x1, &x1).map_err(err)?, || "x1, x1 is not an exact pair".into())?;
    let (cd, cert) = certify_ring(&r, DenominatorClass::Pade { order: 4 }, true, None).map_err(err)?;
    let d = poly(&[1, 1]).pow(5).mul(&poly(&[1, -5, 5, -1]));
    ensure(cd.full == d, || format!("reconstructed d = {}", cd.full))?;
    ensure(cert.verdict == Verdict::Inconclusive && cert.d_at_one == BigInt::from(0), || {
        format!("{} with d(1) = {}", cert.verdict.tag(), cert.d_at_one)
    })?;
    led.denominators.push(("gasharov-peeva".into(), d));
    Ok(())
}

fn c7(led: &mut Ledger) -> Check {
    let r = stretched();
    ensure(r.invariants().gorenstein, || "not Gorenstein".into())?;
    let b = betti(&r, 4)?;
    ensure(b == [1, 3, 8, 21, 55], || format!("betti {b:?}"))?;
    ensure(series(&b) == one_over(&[1, -3, 1]).expand(4), || "expansion".into())?;
    let (cd, cert) = certify_ring(&r, DenominatorClass::Stretched, false, Some(4)).map_err(err)?;
    ensure(cd.agrees_with_betti == Some(true), || "formula disagrees with betti".into())?;
    ensure(cert.d_at_one == BigInt::from(-8) && cert.verdict == Verdict::TorVanishing, || {
        format!("{} with d(1) = {}", cert.verdict.tag(), cert.d_at_one)
    })?;
    led.denominators.push(("stretched".into(), cd.full));
    Ok(())
}

fn c8(led: &mut Ledger) -> Check {
    let p = poly(&[1, 0, -1, -1]);
    let rep = real_roots_unit_interval(&p, &default_epsilon()).map_err(err)?;
    ensure(rep.roots.len() == 1 && rep.roots[0].multiplicity == 1, || format!("roots {:?}", rep.roots))?;
    let root = &rep.roots[0];
    let x = Rational::new(754878, 1_000_000);
    ensure(root.lo <= x && x <= root.hi && root.width() <= default_epsilon(), || format!("root {root}"))?;
    ensure(!led.denominators.is_empty(), || "no denominators collected".into())?;
    for (name, d) in &led.denominators {
        let m4 = lemma_m4_check(d).map_err(err)?;
        ensure(m4.passes, || format!("{name}: {} roots in (0, 1)", m4.root_count))?;
        let sign = denominator_sign_check(d);
        ensure(sign.nonpositive, || format!("{name}: d(1) = {}", sign.value_at_one))?;
    }
    Ok(())
}

fn c9(_: &mut Ledger) -> Check {
    for c in [0u64, 2] {
        let d = kustin_denominator(2, c).map_err(err)?;
        let v = d.eval_int(&BigInt::from(1));
        ensure(v == BigInt::from(-32), || format!("c = {c}: d(1) = {v}"))?;
        ensure(lemma_m4_check(&d).map_err(err)?.passes, || format!("c = {c}: m4 fails"))?;
        let cert = torvanishing_certificate(&d, Provenance::Kustin, true).map_err(err)?;
        ensure(cert.verdict == Verdict::TorVanishing, || format!("c = {c}: {}", cert.verdict.tag()))?;
        ensure(denominator_sign_check(&d).nonpositive, || format!("c = {c}: sign"))?;
    }
    Ok(())
}

fn c10(_: &mut Ledger) -> Check {
    tor_symmetry(5).map_err(|e| format!("tor symmetry: {e}"))?;
    betti_equals_tor(8).map_err(|e| format!("betti vs tor: {e}"))?;
    kunneth(6).map_err(|e| format!("kunneth: {e}"))?;
    sandwich_all(8).map_err(|e| format!("sandwich: {e}"))?;
    pade_roundtrips(2024, 100).map_err(|e| format!("pade: {e}"))?;
    sturm_vs_grid(77, 200).map_err(|e| format!("sturm: {e}"))?;
    certificate_mutations().map_err(|e| format!("mutations: {e}"))
}

type Criterion = fn(&mut Ledger) -> Check;

fn main() -> ExitCode {
    let criteria: [(&str, Criterion, u64); 10] = [
        ("compressed ring identity", c1, 60),
        ("four-variable example end to end", c2, 180),
        ("golod formula", c3, 10),
        ("levin formula on the teter quotient", c4, 10),
        ("connected sum formula", c5, 60),
        ("gasharov-peeva ring", c6, 300),
        ("stretched gorenstein ring", c7, 30),
        ("root analysis", c8, 5),
        ("kustin denominators", c9, 1),
        ("property suites", c10, 120),
    ];
    let mut led = Ledger::default();
    let mut failed = 0;
    let total = Instant::now();
    for (i, (name, f, limit)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let mut res = f(&mut led);
        let el = t.elapsed();
        if res.is_ok() && el > Duration::from_secs(*limit) {
            res = Err(format!("took {el:.2?}, limit {limit} s"));
        }
        match res {
            Ok(()) => println!("criterion {:>2} PASS  {name} ({el:.2?})", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({el:.2?}): {e}", i + 1);
            }
        }
    }
    println!("{} of 10 passed in {:.2?}", 10 - failed, total.elapsed());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
