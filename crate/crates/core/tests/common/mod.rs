// Shared rings and property checks for the integration tests and the
// acceptance runner.
#![allow(dead_code)]

use golodkit::analysis::count_roots;
use golodkit::exactmath::{Field, IntPolynomial, Rational};
use golodkit::homology::{
    betti_of_residue_field, exactness_certificate, koszul_homology, resolve, tor, ModulePresentation,
};
use golodkit::ringkit::{tensor_product, QuotientRing};
use golodkit::series::{
    golod_lower_bound, golod_series, pade_reconstruct, series_compare, Comparison, Provenance, RationalSeries,
    TruncatedSeries,
};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Check = Result<(), String>;

pub fn ring(vars: &[&str], rels: &[&str]) -> QuotientRing {
    QuotientRing::parse(Field::Rational, vars, rels).unwrap()
}

pub fn compressed() -> QuotientRing {
    ring(&["x", "y", "z"], &["x*z", "z^2 + x*y", "y^2*z", "x^2", "y^3"])
}

pub fn ring_s() -> QuotientRing {
    ring(&["w", "x", "y", "z"], &["w^2", "x^2", "x*y", "y^2", "z^2"])
}

pub fn square_of_max(vars: [&str; 2]) -> QuotientRing {
    let (a, b) = (vars[0], vars[1]);
    ring(&vars, &[&format!("{a}^2"), &format!("{a}*{b}"), &format!("{b}^2")])
}

pub fn complete_intersection() -> QuotientRing {
    ring(&["x", "y"], &["x^2", "y^2"])
}

pub fn stretched() -> QuotientRing {
    ring(&["x", "y", "z"], &["x*y", "x*z", "y*z", "x^2 - y^2", "x^2 - z^2"])
}

pub fn connected_example() -> QuotientRing {
    ring(&["x", "y", "z"], &["x^2", "y^2", "x*z", "y*z", "x*y - z^2"])
}

pub fn gasharov_peeva() -> QuotientRing {
    ring(
        &["x1", "x2", "x3", "x4", "x5"],
        &[
            "2*x1*x3 + x2*x3",
            "x1*x4 + x2*x4",
            "x3^2 - x2*x5 + 2*x1*x5",
            "x4^2 - x2*x5 + x1*x5",
            "x1^2",
            "x2^2",
            "x3*x4",
            "x3*x5",
            "x4*x5",
            "x5^2",
        ],
    )
}

/// Rings on which Betti numbers of `k` to order 8 are cheap.
pub fn test_rings() -> Vec<(&'static str, QuotientRing)> {
    vec![
        ("m^2 in 2 vars", square_of_max(["x", "y"])),
        ("x^2, y^2", complete_intersection()),
        ("x^3", ring(&["x"], &["x^3"])),
        ("compressed", compressed()),
        ("S", ring_s()),
        ("stretched", stretched()),
        ("connected sum", connected_example()),
    ]
}

pub fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

pub fn series(b: &[usize]) -> TruncatedSeries {
    TruncatedSeries::from_usize(b)
}

/// `(1+t)^e/(1-t^2)^{h_1} ⪯ P ⪯ (1+t)^e/(1 - Σ h_j t^{j+1})` termwise.
pub fn golod_sandwich(r: &QuotientRing, order: usize) -> Check {
    let e = r.nvars();
    let h = koszul_homology(r).ranks;
    let p = series(&betti_of_residue_field(r, order).map_err(|e| e.to_string())?);
    let lower = golod_lower_bound(e, h[1], order);
    let upper = golod_series(e, &h).map_err(|e| e.to_string())?.expand(order);
    let lo = series_compare(&lower, &p);
    let hi = series_compare(&p, &upper);
    ensure(
        matches!(lo, Comparison::Equal | Comparison::ALeB) && matches!(hi, Comparison::Equal | Comparison::ALeB),
        || format!("sandwich fails: lower {lower} P {p} upper {upper}"),
    )
}

pub fn sandwich_all(order: usize) -> Check {
    for (name, r) in test_rings() {
        golod_sandwich(&r, order).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(())
}

pub struct TorCase {
    pub ring: QuotientRing,
    pub left: Vec<&'static str>,
    pub right: Vec<&'static str>,
}

pub fn tor_cases() -> Vec<TorCase> {
    vec![
        TorCase { ring: ring_s(), left: vec!["z"], right: vec!["w"] },
        TorCase { ring: ring_s(), left: vec!["z"], right: vec!["x", "y"] },
        TorCase { ring: ring_s(), left: vec!["w", "z"], right: vec!["x"] },
        TorCase { ring: compressed(), left: vec!["x"], right: vec!["y"] },
        TorCase { ring: complete_intersection(), left: vec!["x"], right: vec!["y"] },
        TorCase { ring: square_of_max(["x", "y"]), left: vec!["x"], right: vec!["x", "y"] },
        TorCase { ring: connected_example(), left: vec!["z"], right: vec!["x"] },
    ]
}

pub fn tor_symmetry(max_i: usize) -> Check {
    for c in tor_cases() {
        let m = ModulePresentation::quotient_by_strings(&c.ring, &c.left).map_err(|e| e.to_string())?;
        let n = ModulePresentation::quotient_by_strings(&c.ring, &c.right).map_err(|e| e.to_string())?;
        let a = tor(&c.ring, &m, &n, max_i).map_err(|e| e.to_string())?;
        let b = tor(&c.ring, &n, &m, max_i).map_err(|e| e.to_string())?;
        ensure(a.dims == b.dims && a.graded == b.graded, || {
            format!("Tor({:?}, {:?}) = {:?} but reversed {:?}", c.left, c.right, a.dims, b.dims)
        })?;
    }
    Ok(())
}

/// `β_i(M) = dim Tor_i(M, k)` for every test module.
pub fn betti_equals_tor(max_i: usize) -> Check {
    for c in tor_cases() {
        let k = ModulePresentation::residue_field(&c.ring);
        for gens in [&c.left, &c.right] {
            let m = ModulePresentation::quotient_by_strings(&c.ring, gens).map_err(|e| e.to_string())?;
            let b = resolve(&c.ring, &m, max_i).map_err(|e| e.to_string())?.betti_numbers();
            let t = tor(&c.ring, &m, &k, max_i).map_err(|e| e.to_string())?.dims;
            ensure(b == t, || format!("module {gens:?}: betti {b:?} vs Tor {t:?}"))?;
        }
    }
    Ok(())
}

/// Betti numbers of `k` over `A ⊗ B` are the convolution of the factors'.
pub fn kunneth(order: usize) -> Check {
    let a = square_of_max(["x", "y"]);
    let w = ring(&["w"], &["w^2"]);
    let z = ring(&["z"], &["z^2"]);
    let s = tensor_product(&tensor_product(&a, &w).unwrap(), &z).unwrap();
    let b = |r: &QuotientRing| series(&betti_of_residue_field(r, order).unwrap());
    let conv = b(&a).convolve(&b(&w)).convolve(&b(&z));
    let direct = b(&s);
    ensure(conv == direct, || format!("convolution {conv} vs direct {direct}"))?;
    let ci = complete_intersection();
    let cubic = ring(&["u"], &["u^3"]);
    let p = tensor_product(&ci, &cubic).unwrap();
    let conv = b(&ci).convolve(&b(&cubic));
    ensure(conv == b(&p), || format!("convolution {conv} vs direct {}", b(&p)))
}

fn random_poly(rng: &mut ChaCha8Rng, deg: usize, bound: i64) -> IntPolynomial {
    let mut c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-bound..=bound)).collect();
    if c[deg] == 0 {
        c[deg] = 1;
    }
    IntPolynomial::from_i64(&c)
}

/// Random reduced `p/d` with `d(0) = 1`.
pub fn random_rational_series(rng: &mut ChaCha8Rng) -> RationalSeries {
    let dp = rng.gen_range(0..=3);
    let p = random_poly(rng, dp, 5);
    let dq = rng.gen_range(1..=3);
    let mut d: Vec<i64> = (0..=dq).map(|_| rng.gen_range(-4..=4)).collect();
    d[0] = 1;
    if d[dq] == 0 {
        d[dq] = -1;
    }
    RationalSeries::new(p, IntPolynomial::from_i64(&d), Provenance::UserAsserted).unwrap()
}

pub fn pade_roundtrip(rs: &RationalSeries) -> Check {
    let dp = rs.numerator().degree().unwrap_or(0);
    let dq = rs.denominator().degree().unwrap_or(0);
    let n = dp + dq + 1;
    let got = pade_reconstruct(&rs.expand(n), dp, dq).map_err(|e| e.to_string())?;
    ensure(
        got.as_ref().is_some_and(|g| g.numerator() == rs.numerator() && g.denominator() == rs.denominator()),
        || format!("{rs} came back as {got:?}"),
    )
}

pub fn pade_roundtrips(seed: u64, count: usize) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..count {
        pade_roundtrip(&random_rational_series(&mut rng))?;
    }
    Ok(())
}

/// Roots in `(0, 1]` seen on a grid of `2^10` cells: exact zeros at grid
/// points plus sign changes across cells.
pub fn grid_root_count(p: &IntPolynomial) -> usize {
    let n = 1 << 10;
    let signs: Vec<i32> = (0..=n).map(|k| p.sign_at(&Rational::new(k, n))).collect();
    let mut count = 0;
    for k in 1..=n as usize {
        if signs[k] == 0 {
            count += 1;
        } else if signs[k - 1] != 0 && signs[k - 1] != signs[k] {
            count += 1;
        }
    }
    count
}

/// Random polynomial of degree <= 8 built from roots spread over `[-1, 2]`
/// on a coarse grid, so that distinct roots are further apart than a cell.
pub fn random_sturm_poly(rng: &mut ChaCha8Rng) -> IntPolynomial {
    let deg = rng.gen_range(1..=8);
    let mut p = IntPolynomial::from_i64(&[rng.gen_range(1..=3)]);
    let mut used = Vec::new();
    for _ in 0..deg {
        if rng.gen_bool(0.25) {
            // irreducible quadratic t^2 + t + c, c >= 1
            let c = rng.gen_range(1..=5);
            p = p.mul(&IntPolynomial::from_i64(&[c, 1, 1]));
            continue;
        }
        // root k/63, never a grid point inside (0, 1)
        let k: i64 = loop {
            let k = rng.gen_range(-63..=126);
            if !used.contains(&k) {
                break k;
            }
        };
        used.push(k);
        p = p.mul(&IntPolynomial::from_i64(&[-k, 63]));
    }
    p
}

pub fn sturm_vs_grid(seed: u64, count: usize) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..count {
        let p = random_sturm_poly(&mut rng);
        let s = count_roots(&p, &Rational::zero(), &Rational::one());
        let g = grid_root_count(&p);
        ensure(s == g, || format!("{p}: Sturm {s}, grid {g}"))?;
    }
    Ok(())
}

/// The certificate accepts honest prefixes and rejects both mutations.
pub fn certificate_mutations() -> Check {
    for (name, r) in test_rings() {
        let k = ModulePresentation::residue_field(&r);
        let res = resolve(&r, &k, 4).map_err(|e| e.to_string())?;
        let cert = exactness_certificate(&r, &res, &k).map_err(|e| e.to_string())?;
        ensure(cert.ok, || format!("{name}: honest prefix rejected"))?;
        if res.steps[2].differential.is_empty() {
            continue;
        }
        let mut unit = res.clone();
        unit.steps[2].differential[0].insert(0, (0, r.field().one()));
        let c = exactness_certificate(&r, &unit, &k).map_err(|e| e.to_string())?;
        ensure(!c.ok && !c.minimal, || format!("{name}: unit entry accepted"))?;
        let mut cut = res.clone();
        cut.steps[4].degrees.pop();
        cut.steps[4].differential.pop();
        let c = exactness_certificate(&r, &cut, &k).map_err(|e| e.to_string())?;
        ensure(!c.ok && !c.euler_ok, || format!("{name}: truncated kernel accepted"))?;
    }
    Ok(())
}

pub fn big(v: i64) -> BigInt {
    BigInt::from(v)
}
