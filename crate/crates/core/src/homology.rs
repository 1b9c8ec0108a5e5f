//! Minimal graded free resolutions over a [`QuotientRing`] by degreewise
//! linear algebra, Betti tables, Koszul homology and Tor.
//!
//! A free module `F = ⊕ R(-d_g)` stores elements as sparse vectors indexed by
//! `g * L + b`, where `L = dim_k R` and `b` runs over the standard basis.

use std::collections::{BTreeMap, HashMap};
use std::ops::Range;

use crate::error::{Error, Result};
use crate::exactmath::{Field, Scalar};
use crate::linalg::{kernel_of_columns, Echelon, SparseVec};
use crate::ringkit::{QuotientRing, RingElem};

/// Default cap on the number of columns of a single kernel computation.
pub const DEFAULT_MAX_COLUMNS: usize = 20000;

/// Sorts by index, merges duplicates and drops zeros.
fn normalize(mut v: Vec<(usize, Scalar)>) -> SparseVec {
    v.sort_by_key(|e| e.0);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (i, c) in v {
        match out.last_mut() {
            Some((j, acc)) if *j == i => *acc = acc.add(&c),
            _ => out.push((i, c)),
        }
        if out.last().is_some_and(|(_, x)| x.is_zero()) {
            out.pop();
        }
    }
    out
}

/// `b * v` for a basis element `b` of `R` and `v` in a free module.
fn mul_basis_vec(r: &QuotientRing, b: usize, v: &SparseVec) -> SparseVec {
    let l = r.length();
    let mut out = Vec::new();
    for (idx, c) in v {
        let (g, a) = (idx / l, idx % l);
        for (k, z) in r.mul_basis(b, a) {
            out.push((g * l + k, c.mul(z)));
        }
    }
    normalize(out)
}

/// Degree of a homogeneous free-module element, `None` if zero or mixed.
fn element_degree(r: &QuotientRing, degrees: &[i64], v: &SparseVec) -> Option<i64> {
    let l = r.length();
    let mut deg = None;
    for (idx, _) in v {
        let d = degrees[idx / l] + r.basis_degree(idx % l) as i64;
        match deg {
            None => deg = Some(d),
            Some(e) if e != d => return None,
            _ => {}
        }
    }
    deg
}

/// The degree-`j` piece of `⊕_g C(-d_g)` where `C` has a graded basis given
/// by contiguous index ranges per degree.
struct Slice {
    dim: usize,
    stride: usize,
    globals: Vec<usize>,
    starts: Vec<Option<(usize, usize)>>,
}

impl Slice {
    fn new(degrees: &[i64], j: i64, stride: usize, range: impl Fn(i64) -> Range<usize>) -> Slice {
        let mut globals = Vec::new();
        let mut starts = Vec::with_capacity(degrees.len());
        for (g, d) in degrees.iter().enumerate() {
            let rg = range(j - d);
            if rg.is_empty() {
                starts.push(None);
                continue;
            }
            starts.push(Some((globals.len(), rg.start)));
            globals.extend(rg.map(|b| g * stride + b));
        }
        Slice {
            dim: globals.len(),
            stride,
            globals,
            starts,
        }
    }

    fn local(&self, global: usize) -> usize {
        let (g, b) = (global / self.stride, global % self.stride);
        let (off, start) = self.starts[g].expect("element in slice");
        off + b - start
    }

    fn to_local(&self, v: &SparseVec) -> SparseVec {
        v.iter().map(|(i, c)| (self.local(*i), c.clone())).collect()
    }

    fn to_global(&self, v: &SparseVec) -> SparseVec {
        normalize(v.iter().map(|(i, c)| (self.globals[*i], c.clone())).collect())
    }
}

fn degree_span(degrees: &[i64], width: usize) -> Option<(i64, i64)> {
    let lo = *degrees.iter().min()?;
    let hi = *degrees.iter().max()?;
    Some((lo, hi + width as i64))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PresentationKind {
    QuotientByIdeal,
    ResidueField,
    Free,
    Matrix,
}

/// A graded module `coker(F_1 -> F_0)` over a fixed ring: generator degrees
/// of `F_0` and relation columns as elements of `F_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulePresentation {
    gen_degrees: Vec<i64>,
    relations: Vec<SparseVec>,
    relation_degrees: Vec<i64>,
    ring_length: usize,
    kind: PresentationKind,
}

impl ModulePresentation {
    /// `R/J` for `J` generated by homogeneous ring elements. Zero generators
    /// are dropped.
    pub fn quotient_by_ideal(r: &QuotientRing, gens: &[RingElem]) -> Result<Self> {
        let cols: Vec<SparseVec> = gens.iter().filter(|g| !g.is_empty()).cloned().collect();
        Self::build(r, vec![0], cols, PresentationKind::QuotientByIdeal)
    }

    /// `R/J` with generators given as polynomial strings.
    pub fn quotient_by_strings(r: &QuotientRing, gens: &[&str]) -> Result<Self> {
        let elems = gens.iter().map(|s| r.parse_element(s)).collect::<Result<Vec<_>>>()?;
        Self::quotient_by_ideal(r, &elems)
    }

    /// The residue field `k = R/m`.
    pub fn residue_field(r: &QuotientRing) -> Self {
        let cols = (0..r.nvars()).map(|i| r.var(i)).collect();
        let mut m = Self::build(r, vec![0], cols, PresentationKind::ResidueField).expect("variables are linear");
        m.kind = PresentationKind::ResidueField;
        m
    }

    /// `R^rank` with generators in degree 0.
    pub fn free(r: &QuotientRing, rank: usize) -> Self {
        Self::build(r, vec![0; rank], Vec::new(), PresentationKind::Free).expect("no relations")
    }

    /// Explicit presentation: `columns[c][g]` is the entry in row `g`.
    pub fn from_matrix(r: &QuotientRing, gen_degrees: Vec<i64>, columns: &[Vec<RingElem>]) -> Result<Self> {
        let l = r.length();
        let mut cols = Vec::new();
        for col in columns {
            if col.len() != gen_degrees.len() {
                return Err(Error::Presentation(format!(
                    "column has {} entries for {} generators",
                    col.len(),
                    gen_degrees.len()
                )));
            }
            let mut v = Vec::new();
            for (g, e) in col.iter().enumerate() {
                v.extend(e.iter().map(|(b, c)| (g * l + b, c.clone())));
            }
            cols.push(normalize(v));
        }
        Self::build(r, gen_degrees, cols, PresentationKind::Matrix)
    }

    fn build(r: &QuotientRing, gen_degrees: Vec<i64>, cols: Vec<SparseVec>, kind: PresentationKind) -> Result<Self> {
        let l = r.length();
        let mut relation_degrees = Vec::new();
        for (k, col) in cols.iter().enumerate() {
            if col.is_empty() {
                return Err(Error::Presentation(format!("relation column {k} is zero")));
            }
            let Some(d) = element_degree(r, &gen_degrees, col) else {
                return Err(Error::Presentation(format!("relation column {k} is not homogeneous")));
            };
            if col.iter().any(|(i, _)| i % l == 0) {
                return Err(Error::Presentation(format!("relation column {k} has a unit entry")));
            }
            relation_degrees.push(d);
        }
        Ok(ModulePresentation {
            gen_degrees,
            relations: cols,
            relation_degrees,
            ring_length: l,
            kind,
        })
    }

    pub fn gen_degrees(&self) -> &[i64] {
        &self.gen_degrees
    }

    pub fn relations(&self) -> &[SparseVec] {
        &self.relations
    }

    pub fn kind(&self) -> PresentationKind {
        self.kind
    }

    fn check_ring(&self, r: &QuotientRing) -> Result<()> {
        if self.ring_length != r.length() {
            return Err(Error::Presentation("module belongs to a different ring".into()));
        }
        Ok(())
    }
}

/// `M` as a graded vector space with the action of `R`.
pub struct ModuleModel {
    stride: usize,
    gen_degrees: Vec<i64>,
    ring_degrees: Vec<i64>,
    lo: i64,
    ranges: Vec<Range<usize>>,
    slices: Vec<Slice>,
    echelons: Vec<Echelon>,
    /// local column of `F_0` in the degree piece -> basis index of `M`
    local_to_basis: Vec<Vec<Option<usize>>>,
    representatives: Vec<usize>,
    degrees: Vec<i64>,
    action: Vec<Vec<SparseVec>>,
}

impl ModuleModel {
    pub fn new(r: &QuotientRing, m: &ModulePresentation) -> Result<Self> {
        m.check_ring(r)?;
        let l = r.length();
        let s = r.socle_degree();
        let (lo, hi) = degree_span(&m.gen_degrees, s).unwrap_or((0, -1));
        let mut model = ModuleModel {
            stride: l,
            gen_degrees: m.gen_degrees.clone(),
            ring_degrees: (0..l).map(|b| r.basis_degree(b) as i64).collect(),
            lo,
            ranges: Vec::new(),
            slices: Vec::new(),
            echelons: Vec::new(),
            local_to_basis: Vec::new(),
            representatives: Vec::new(),
            degrees: Vec::new(),
            action: Vec::new(),
        };
        for d in lo..=hi {
            let slice = Slice::new(&m.gen_degrees, d, l, |e| r.degree_range(e));
            let mut ech = Echelon::new(r.field(), slice.dim);
            for (col, cd) in m.relations.iter().zip(&m.relation_degrees) {
                for b in r.degree_range(d - cd) {
                    ech.insert(&slice.to_local(&mul_basis_vec(r, b, col)));
                }
            }
            let start = model.representatives.len();
            let mut map = vec![None; slice.dim];
            for (c, slot) in map.iter_mut().enumerate() {
                if !ech.is_pivot(c) {
                    *slot = Some(model.representatives.len());
                    model.representatives.push(slice.globals[c]);
                    model.degrees.push(d);
                }
            }
            model.ranges.push(start..model.representatives.len());
            model.slices.push(slice);
            model.echelons.push(ech);
            model.local_to_basis.push(map);
        }
        let f = r.field();
        model.action = (0..l)
            .map(|b| {
                (0..model.representatives.len())
                    .map(|u| {
                        let v = mul_basis_vec(r, b, &vec![(model.representatives[u], f.one())]);
                        model.coords(&v)
                    })
                    .collect()
            })
            .collect();
        Ok(model)
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    /// Basis indices of degree `d`.
    pub fn degree_range(&self, d: i64) -> Range<usize> {
        let k = d - self.lo;
        if k < 0 || k as usize >= self.ranges.len() {
            return 0..0;
        }
        self.ranges[k as usize].clone()
    }

    pub fn dim_at(&self, d: i64) -> usize {
        self.degree_range(d).len()
    }

    pub fn hilbert(&self) -> BTreeMap<i64, usize> {
        (0..self.ranges.len()).map(|k| (self.lo + k as i64, self.ranges[k].len())).collect()
    }

    /// Coordinates in `M` of a homogeneous element of `F_0`.
    pub fn coords(&self, v: &SparseVec) -> SparseVec {
        let Some((first, _)) = v.first() else {
            return Vec::new();
        };
        let (g, b) = (first / self.stride, first % self.stride);
        let k = self.gen_degrees[g] + self.ring_degrees[b] - self.lo;
        if k < 0 || k as usize >= self.ranges.len() {
            return Vec::new();
        }
        let k = k as usize;
        let red = self.echelons[k].reduce(&self.slices[k].to_local(v));
        normalize(
            red.into_iter()
                .map(|(c, x)| (self.local_to_basis[k][c].expect("non-pivot"), x))
                .collect(),
        )
    }

    /// `b * u` for ring basis `b` and module basis `u`.
    pub fn act(&self, b: usize, u: usize) -> &SparseVec {
        &self.action[b][u]
    }
}

/// One homological step: generator degrees of `F_i` and `d_i` on generators,
/// as elements of `F_{i-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub degrees: Vec<i64>,
    pub differential: Vec<SparseVec>,
}

impl Step {
    pub fn rank(&self) -> usize {
        self.degrees.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    /// `(i, j) -> β_{i,j}`, nonzero entries only
    pub graded: BTreeMap<(usize, i64), usize>,
    pub totals: Vec<usize>,
}

impl BettiTable {
    pub fn steps(&self) -> usize {
        self.totals.len().saturating_sub(1)
    }
}

/// Prefix `F_n -> ... -> F_0` of a minimal graded free resolution.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub steps: Vec<Step>,
    /// `dim (ker d_n)_j` for the last computed step, derived by exactness
    pub last_kernel_dims: BTreeMap<i64, usize>,
    /// set when a kernel computation exceeded the column cap; `steps` holds
    /// the completed prefix
    pub overflow: Option<Error>,
    requested: usize,
}

impl Resolution {
    pub fn betti(&self) -> BettiTable {
        let mut graded = BTreeMap::new();
        for (i, st) in self.steps.iter().enumerate() {
            for d in &st.degrees {
                *graded.entry((i, *d)).or_insert(0) += 1;
            }
        }
        BettiTable {
            graded,
            totals: self.steps.iter().map(Step::rank).collect(),
        }
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        self.steps.iter().map(Step::rank).collect()
    }

    pub fn length(&self) -> usize {
        self.steps.len().saturating_sub(1)
    }

    pub fn is_complete(&self) -> bool {
        self.overflow.is_none()
    }

    pub fn requested_steps(&self) -> usize {
        self.requested
    }

    /// The prefix, or the budget error if it is partial.
    pub fn complete(self) -> Result<Resolution> {
        match self.overflow {
            Some(e) => Err(e),
            None => Ok(self),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResolveOptions {
    pub max_columns: usize,
}

impl Default for ResolveOptions {
    fn default() -> Self {
        ResolveOptions {
            max_columns: DEFAULT_MAX_COLUMNS,
        }
    }
}

/// Images under `d` of the basis of `(F_i)_j`, in local coordinates of `(F_{i-1})_j`.
fn differential_columns(
    r: &QuotientRing,
    dom: &Slice,
    codom: &Slice,
    differential: &[SparseVec],
) -> Vec<SparseVec> {
    let l = r.length();
    dom.globals
        .iter()
        .map(|&gl| {
            let (g, b) = (gl / l, gl % l);
            codom.to_local(&mul_basis_vec(r, b, &differential[g]))
        })
        .collect()
}

pub fn resolve(r: &QuotientRing, m: &ModulePresentation, steps: usize) -> Result<Resolution> {
    resolve_with(r, m, steps, ResolveOptions::default())
}

/// Computes `F_0, ..., F_steps`. Presentation errors are returned as `Err`;
/// a budget overflow yields `Ok` with [`Resolution::overflow`] set.
pub fn resolve_with(
    r: &QuotientRing,
    m: &ModulePresentation,
    steps: usize,
    opts: ResolveOptions,
) -> Result<Resolution> {
    let model = ModuleModel::new(r, m)?;
    let l = r.length();
    let s = r.socle_degree();
    let range = |e: i64| r.degree_range(e);
    let dim_free = |degrees: &[i64], j: i64| -> usize { degrees.iter().map(|d| r.hilbert_at(j - d)).sum() };

    let f0 = Step {
        degrees: m.gen_degrees.clone(),
        differential: Vec::new(),
    };
    let mut kerdim: BTreeMap<i64, usize> = BTreeMap::new();
    if let Some((lo, hi)) = degree_span(&f0.degrees, s) {
        for j in lo..=hi {
            kerdim.insert(j, dim_free(&f0.degrees, j) - model.dim_at(j));
        }
    }
    let mut res = Resolution {
        steps: vec![f0],
        last_kernel_dims: kerdim.clone(),
        overflow: None,
        requested: steps,
    };

    for i in 0..steps {
        let prev = &res.steps[i];
        let Some((lo, hi)) = degree_span(&prev.degrees, s) else {
            res.steps.push(Step {
                degrees: Vec::new(),
                differential: Vec::new(),
            });
            res.last_kernel_dims.clear();
            continue;
        };
        let mut degrees: Vec<i64> = Vec::new();
        let mut gens: Vec<SparseVec> = Vec::new();
        let mut overflow = None;
        for j in lo + 1..=hi {
            let target = kerdim.get(&j).copied().unwrap_or(0);
            if target == 0 {
                continue;
            }
            let dom = Slice::new(&prev.degrees, j, l, range);
            let mut ech = Echelon::new(r.field(), dom.dim);
            for (g, d) in gens.iter().zip(&degrees) {
                for b in r.degree_range(j - d) {
                    ech.insert(&dom.to_local(&mul_basis_vec(r, b, g)));
                }
            }
            if ech.rank() == target {
                continue;
            }
            let candidates: Vec<SparseVec> = if i == 0 {
                m.relations
                    .iter()
                    .zip(&m.relation_degrees)
                    .filter(|(_, d)| **d == j)
                    .map(|(c, _)| dom.to_local(c))
                    .collect()
            } else {
                if dom.dim > opts.max_columns {
                    overflow = Some(Error::Budget {
                        step: i + 1,
                        degree: j as i32,
                        columns: dom.dim,
                        cap: opts.max_columns,
                    });
                    break;
                }
                let before = &res.steps[i - 1];
                let codom = Slice::new(&before.degrees, j, l, range);
                let cols = differential_columns(r, &dom, &codom, &prev.differential);
                kernel_of_columns(r.field(), codom.dim, &cols)
            };
            for v in candidates {
                if ech.rank() == target {
                    break;
                }
                if ech.insert(&v).is_none() {
                    degrees.push(j);
                    gens.push(dom.to_global(&v));
                }
            }
            if ech.rank() != target {
                return Err(Error::Invalid(format!(
                    "kernel in degree {j} at step {} has rank {} but exactness predicts {target}",
                    i + 1,
                    ech.rank()
                )));
            }
        }
        if let Some(e) = overflow {
            res.overflow = Some(e);
            break;
        }
        let mut next: BTreeMap<i64, usize> = BTreeMap::new();
        if let Some((lo, hi)) = degree_span(&degrees, s) {
            for j in lo..=hi {
                let k = dim_free(&degrees, j) - kerdim.get(&j).copied().unwrap_or(0);
                next.insert(j, k);
            }
        }
        kerdim = next;
        res.steps.push(Step {
            degrees,
            differential: gens,
        });
        res.last_kernel_dims = kerdim.clone();
    }
    Ok(res)
}

/// Betti numbers `β_0..β_n` of the residue field.
pub fn betti_of_residue_field(r: &QuotientRing, n: usize) -> Result<Vec<usize>> {
    let k = ModulePresentation::residue_field(r);
    Ok(resolve(r, &k, n)?.complete()?.betti_numbers())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerRow {
    pub degree: i64,
    pub alternating_sum: i64,
    pub module_dim: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessCertificate {
    pub ok: bool,
    pub euler_ok: bool,
    pub composition_zero: bool,
    pub minimal: bool,
    pub failed_degree: Option<i64>,
    pub ledger: Vec<EulerRow>,
}

/// Rank of `d_i` in degree `j`, computed from the stored matrices.
fn differential_rank(r: &QuotientRing, res: &Resolution, i: usize, j: i64) -> usize {
    let l = r.length();
    let dom = Slice::new(&res.steps[i].degrees, j, l, |e| r.degree_range(e));
    let codom = Slice::new(&res.steps[i - 1].degrees, j, l, |e| r.degree_range(e));
    let mut e = Echelon::new(r.field(), codom.dim);
    for c in differential_columns(r, &dom, &codom, &res.steps[i].differential) {
        e.insert(&c);
    }
    e.rank()
}

/// Euler ledger, `d∘d = 0` and minimality for a resolution prefix of `m`.
pub fn exactness_certificate(r: &QuotientRing, res: &Resolution, m: &ModulePresentation) -> Result<ExactnessCertificate> {
    let model = ModuleModel::new(r, m)?;
    let l = r.length();
    let s = r.socle_degree();
    let n = res.steps.len() - 1;

    let all: Vec<i64> = res.steps.iter().flat_map(|st| st.degrees.iter().copied()).collect();
    let mut ledger = Vec::new();
    let mut failed_degree = None;
    if let Some((lo, hi)) = degree_span(&all, s) {
        for d in lo..=hi {
            let mut sum = 0i64;
            for (i, st) in res.steps.iter().enumerate() {
                let dim: usize = st.degrees.iter().map(|g| r.hilbert_at(d - g)).sum();
                sum += if i % 2 == 0 { dim as i64 } else { -(dim as i64) };
            }
            let top: usize = res.steps[n].degrees.iter().map(|g| r.hilbert_at(d - g)).sum();
            let rank = if n == 0 { model.dim_at(d) } else { differential_rank(r, res, n, d) };
            let ker = (top - rank) as i64;
            sum -= if n % 2 == 0 { ker } else { -ker };
            let md = model.dim_at(d) as i64;
            if sum != md && failed_degree.is_none() {
                failed_degree = Some(d);
            }
            ledger.push(EulerRow {
                degree: d,
                alternating_sum: sum,
                module_dim: md,
            });
        }
    }
    let euler_ok = failed_degree.is_none();

    let mut composition_zero = true;
    for i in 1..=n {
        for (g, v) in res.steps[i].differential.iter().enumerate() {
            let zero = if i == 1 {
                model.coords(v).is_empty()
            } else {
                let prev = &res.steps[i - 1].differential;
                let mut acc = Vec::new();
                for (idx, c) in v {
                    let (h, a) = (idx / l, idx % l);
                    for (k, x) in mul_basis_vec(r, a, &prev[h]) {
                        acc.push((k, c.mul(&x)));
                    }
                }
                normalize(acc).is_empty()
            };
            let homogeneous = v.is_empty() || element_degree(r, &res.steps[i - 1].degrees, v) == Some(res.steps[i].degrees[g]);
            if !zero || !homogeneous {
                composition_zero = false;
            }
        }
    }

    let minimal = res
        .steps
        .iter()
        .skip(1)
        .all(|st| st.differential.iter().all(|v| v.iter().all(|(idx, _)| idx % l != 0)));

    Ok(ExactnessCertificate {
        ok: euler_ok && composition_zero && minimal,
        euler_ok,
        composition_zero,
        minimal,
        failed_degree,
        ledger,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorDims {
    pub dims: Vec<usize>,
    /// `(i, j) -> dim Tor_i(M, N)_j`, nonzero entries only
    pub graded: BTreeMap<(usize, i64), usize>,
}

/// Rank of `d_i ⊗ N` in internal degree `j`.
fn tensor_rank(r: &QuotientRing, res: &Resolution, n: &ModuleModel, i: usize, j: i64) -> usize {
    let l = r.length();
    let nd = n.dim();
    let range = |e: i64| n.degree_range(e);
    let dom = Slice::new(&res.steps[i].degrees, j, nd, range);
    let codom = Slice::new(&res.steps[i - 1].degrees, j, nd, range);
    if dom.dim == 0 || codom.dim == 0 {
        return 0;
    }
    let mut e = Echelon::new(r.field(), codom.dim);
    for &gl in &dom.globals {
        let (g, u) = (gl / nd, gl % nd);
        let mut img = Vec::new();
        for (idx, c) in &res.steps[i].differential[g] {
            let (h, a) = (idx / l, idx % l);
            for (w, x) in n.act(a, u) {
                img.push((h * nd + w, c.mul(x)));
            }
        }
        e.insert(&codom.to_local(&normalize(img)));
    }
    e.rank()
}

/// `dim_k Tor_i(M, N)` for `0 <= i <= max_i`, from the minimal resolution of
/// `M` tensored with `N`.
pub fn tor(r: &QuotientRing, m: &ModulePresentation, n: &ModulePresentation, max_i: usize) -> Result<TorDims> {
    tor_with(r, m, n, max_i, ResolveOptions::default())
}

pub fn tor_with(
    r: &QuotientRing,
    m: &ModulePresentation,
    n: &ModulePresentation,
    max_i: usize,
    opts: ResolveOptions,
) -> Result<TorDims> {
    let res = resolve_with(r, m, max_i + 1, opts)?.complete()?;
    let model = ModuleModel::new(r, n)?;
    let hil = model.hilbert();
    let (nlo, nhi) = match (hil.keys().next(), hil.keys().next_back()) {
        (Some(a), Some(b)) => (*a, *b),
        _ => (0, -1),
    };
    let span = |i: usize| -> Option<(i64, i64)> {
        let st = &res.steps[i];
        let lo = *st.degrees.iter().min()?;
        let hi = *st.degrees.iter().max()?;
        Some((lo + nlo, hi + nhi))
    };
    let mut ranks: HashMap<(usize, i64), usize> = HashMap::new();
    let mut rank = |i: usize, j: i64| -> usize {
        if i == 0 || i >= res.steps.len() {
            return 0;
        }
        *ranks.entry((i, j)).or_insert_with(|| tensor_rank(r, &res, &model, i, j))
    };
    let mut dims = Vec::new();
    let mut graded = BTreeMap::new();
    for i in 0..=max_i {
        let mut total = 0;
        if let Some((lo, hi)) = span(i) {
            for j in lo..=hi {
                let c: usize = res.steps[i].degrees.iter().map(|g| model.dim_at(j - g)).sum();
                if c == 0 {
                    continue;
                }
                let h = c - rank(i, j) - rank(i + 1, j);
                if h > 0 {
                    graded.insert((i, j), h);
                    total += h;
                }
            }
        }
        dims.push(total);
    }
    Ok(TorDims { dims, graded })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulHomology {
    /// `h_i = dim_k H_i(K^R)` for `i = 0..=e`
    pub ranks: Vec<usize>,
    /// `(i, j) -> dim H_i(K^R)_j`, nonzero entries only
    pub graded: BTreeMap<(usize, i64), usize>,
}

/// Homology of the Koszul complex on the variables of `R`.
pub fn koszul_homology(r: &QuotientRing) -> KoszulHomology {
    let e = r.nvars();
    let l = r.length();
    let s = r.socle_degree() as i64;
    let f: Field = r.field();
    let subsets: Vec<Vec<u32>> = (0..=e)
        .map(|p| (0u32..(1u32 << e)).filter(|m| m.count_ones() as usize == p).collect())
        .collect();
    let index: Vec<HashMap<u32, usize>> = subsets
        .iter()
        .map(|ss| ss.iter().enumerate().map(|(i, m)| (*m, i)).collect())
        .collect();

    // rank of ∂_p : K_p -> K_{p-1} in internal degree j
    let rank = |p: usize, j: i64| -> usize {
        if p == 0 || p > e {
            return 0;
        }
        let range = |d: i64| r.degree_range(d);
        let dom = Slice::new(&vec![p as i64; subsets[p].len()], j, l, range);
        let codom = Slice::new(&vec![p as i64 - 1; subsets[p - 1].len()], j, l, range);
        let mut ech = Echelon::new(f, codom.dim);
        for &gl in &dom.globals {
            let (si, b) = (gl / l, gl % l);
            let mask = subsets[p][si];
            let mut img = Vec::new();
            let mut pos = 0;
            for v in 0..e {
                if mask & (1 << v) == 0 {
                    continue;
                }
                let sign = if pos % 2 == 0 { f.one() } else { f.one().neg() };
                pos += 1;
                let t = index[p - 1][&(mask & !(1 << v))];
                for (k, c) in r.mul_basis(r.var_index(v), b) {
                    img.push((t * l + k, c.mul(&sign)));
                }
            }
            ech.insert(&codom.to_local(&normalize(img)));
        }
        ech.rank()
    };

    let mut ranks = Vec::new();
    let mut graded = BTreeMap::new();
    for p in 0..=e {
        let mut total = 0;
        for j in p as i64..=p as i64 + s {
            let dim = subsets[p].len() * r.hilbert_at(j - p as i64);
            let h = dim - rank(p, j) - rank(p + 1, j);
            if h > 0 {
                graded.insert((p, j), h);
                total += h;
            }
        }
        ranks.push(total);
    }
    KoszulHomology { ranks, graded }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(vars: &[&str], rels: &[&str]) -> QuotientRing {
        QuotientRing::parse(Field::Rational, vars, rels).unwrap()
    }

    fn compressed() -> QuotientRing {
        ring(&["x", "y", "z"], &["x*z", "z^2 + x*y", "y^2*z", "x^2", "y^3"])
    }

    fn ring_s() -> QuotientRing {
        ring(&["w", "x", "y", "z"], &["w^2", "x^2", "x*y", "y^2", "z^2"])
    }

    #[test]
    fn square_of_maximal_ideal_is_geometric() {
        let r = ring(&["x", "y"], &["x^2", "x*y", "y^2"]);
        let b = betti_of_residue_field(&r, 8).unwrap();
        assert_eq!(b, (0..=8).map(|n| 1usize << n).collect::<Vec<_>>());
    }

    #[test]
    fn compressed_residue_field() {
        let r = compressed();
        assert_eq!(betti_of_residue_field(&r, 5).unwrap(), vec![1, 3, 8, 21, 55, 144]);
    }

    #[test]
    fn hypersurface_is_periodic() {
        let r = ring(&["x"], &["x^3"]);
        let k = ModulePresentation::residue_field(&r);
        let res = resolve(&r, &k, 5).unwrap();
        assert_eq!(res.betti_numbers(), vec![1; 6]);
        // x, x^2, x, x^2, ...
        let degs: Vec<i64> = res.steps.iter().map(|s| s.degrees[0]).collect();
        assert_eq!(degs, vec![0, 1, 3, 4, 6, 7]);
        assert!(exactness_certificate(&r, &res, &k).unwrap().ok);
    }

    #[test]
    fn field_and_free_modules() {
        let k = ring(&[], &[]);
        let m = ModulePresentation::residue_field(&k);
        assert_eq!(resolve(&k, &m, 3).unwrap().betti_numbers(), vec![1, 0, 0, 0]);
        let r = ring(&["x"], &["x^2"]);
        let f = ModulePresentation::free(&r, 2);
        let res = resolve(&r, &f, 2).unwrap();
        assert_eq!(res.betti_numbers(), vec![2, 0, 0]);
        assert!(exactness_certificate(&r, &res, &f).unwrap().ok);
    }

    #[test]
    fn ring_s_modules() {
        let s = ring_s();
        assert_eq!(betti_of_residue_field(&s, 4).unwrap(), vec![1, 4, 11, 26, 57]);
        let mz = ModulePresentation::quotient_by_strings(&s, &["z"]).unwrap();
        assert_eq!(resolve(&s, &mz, 4).unwrap().betti_numbers(), vec![1; 5]);
        let nxy = ModulePresentation::quotient_by_strings(&s, &["x", "y"]).unwrap();
        assert_eq!(resolve(&s, &nxy, 4).unwrap().betti_numbers(), vec![1, 2, 4, 8, 16]);
    }

    #[test]
    fn certificates_and_mutations() {
        let r = compressed();
        let k = ModulePresentation::residue_field(&r);
        let res = resolve(&r, &k, 3).unwrap();
        let cert = exactness_certificate(&r, &res, &k).unwrap();
        assert!(cert.ok, "{cert:?}");

        let mut unit = res.clone();
        unit.steps[2].differential[0].insert(0, (0, r.field().one()));
        let c = exactness_certificate(&r, &unit, &k).unwrap();
        assert!(!c.ok && !c.minimal);

        let mut cut = res.clone();
        cut.steps[3].degrees.pop();
        cut.steps[3].differential.pop();
        let c = exactness_certificate(&r, &cut, &k).unwrap();
        assert!(!c.ok && !c.euler_ok && c.failed_degree.is_some());
    }

    #[test]
    fn budget_overflow_keeps_prefix() {
        let r = compressed();
        let k = ModulePresentation::residue_field(&r);
        let res = resolve_with(&r, &k, 6, ResolveOptions { max_columns: 30 }).unwrap();
        assert!(!res.is_complete());
        assert!(matches!(res.overflow, Some(Error::Budget { .. })));
        let b = res.betti_numbers();
        assert_eq!(b, vec![1, 3, 8, 21][..b.len()].to_vec());
    }

    #[test]
    fn presentations_validate() {
        let r = ring(&["x", "y"], &["x^2", "y^2"]);
        let one = r.one();
        assert!(matches!(
            ModulePresentation::quotient_by_ideal(&r, &[one]),
            Err(Error::Presentation(_))
        ));
        let mixed = r.parse_element("x + x*y").unwrap();
        assert!(ModulePresentation::quotient_by_ideal(&r, &[mixed]).is_err());
        let x = r.var(0);
        let m = ModulePresentation::from_matrix(&r, vec![0, 0], &[vec![x.clone(), r.var(1)]]).unwrap();
        let res = resolve(&r, &m, 2).unwrap();
        assert_eq!(res.betti_numbers()[0], 2);
        assert!(exactness_certificate(&r, &res, &m).unwrap().ok);
        assert!(ModulePresentation::from_matrix(&r, vec![0, 1], &[vec![x, r.var(1)]]).is_err());
    }

    #[test]
    fn koszul_examples() {
        assert_eq!(koszul_homology(&ring(&["x", "y"], &["x^2", "x*y", "y^2"])).ranks, vec![1, 3, 2]);
        assert_eq!(koszul_homology(&ring(&["x"], &["x^2"])).ranks, vec![1, 1]);
        assert_eq!(koszul_homology(&compressed()).ranks, vec![1, 5, 5, 1]);
        assert_eq!(koszul_homology(&ring(&[], &[])).ranks, vec![1]);
    }

    #[test]
    fn tor_examples() {
        let s = ring_s();
        let mz = ModulePresentation::quotient_by_strings(&s, &["z"]).unwrap();
        let nw = ModulePresentation::quotient_by_strings(&s, &["w"]).unwrap();
        let t = tor(&s, &mz, &nw, 4).unwrap();
        assert_eq!(t.dims, vec![3, 0, 0, 0, 0]);
        let k = ModulePresentation::residue_field(&s);
        assert_eq!(tor(&s, &mz, &k, 3).unwrap().dims, vec![1, 1, 1, 1]);
        let free = ModulePresentation::free(&s, 1);
        assert_eq!(tor(&s, &mz, &free, 3).unwrap().dims, vec![6, 0, 0, 0]);
    }

    #[test]
    fn module_model_dimensions() {
        let r = compressed();
        let k = ModulePresentation::residue_field(&r);
        let m = ModuleModel::new(&r, &k).unwrap();
        assert_eq!(m.dim(), 1);
        let free = ModulePresentation::free(&r, 1);
        let f = ModuleModel::new(&r, &free).unwrap();
        assert_eq!(f.dim(), 8);
        assert_eq!(f.hilbert().values().copied().collect::<Vec<_>>(), vec![1, 3, 3, 1]);
    }
}
