//! Reduced Gröbner bases of homogeneous ideals (Buchberger with the normal
//! selection strategy and both Buchberger criteria), normal forms and
//! standard monomial bases.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactmath::{Field, Homogeneity, Monomial, MonomialOrder, Polynomial, Scalar, VarContext};

/// Terms sorted strictly descending in the basis order.
type Terms = Vec<(Monomial, Scalar)>;

#[derive(Clone, PartialEq, Eq)]
struct Key {
    m: Monomial,
    order: MonomialOrder,
}

impl Ord for Key {
    fn cmp(&self, o: &Self) -> Ordering {
        self.order.cmp(&self.m, &o.m)
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

fn to_terms(p: &Polynomial, order: MonomialOrder) -> Terms {
    let mut t: Terms = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
    t.sort_by(|a, b| order.cmp(&b.0, &a.0));
    t
}

fn make_monic(t: &mut Terms) {
    if let Some((_, lc)) = t.first() {
        let inv = lc.inv();
        for (_, c) in t.iter_mut() {
            *c = c.mul(&inv);
        }
    }
}

/// Reduced Gröbner basis together with its order and cached leading monomials.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ctx: Arc<VarContext>,
    field: Field,
    order: MonomialOrder,
    generators: Vec<Polynomial>,
    sorted: Vec<Terms>,
    leading: Vec<Monomial>,
}

struct Reducer<'a> {
    basis: &'a [Terms],
    order: MonomialOrder,
}

impl Reducer<'_> {
    /// Full reduction: no term of the result is divisible by a leading monomial.
    fn reduce(&self, f: Terms) -> Terms {
        let mut work: BTreeMap<Key, Scalar> = f
            .into_iter()
            .map(|(m, c)| (Key { m, order: self.order }, c))
            .collect();
        let mut rem = Terms::new();
        while let Some((key, c)) = work.pop_last() {
            let divisor = self.basis.iter().find(|g| g[0].0.divides(&key.m));
            match divisor {
                None => rem.push((key.m, c)),
                Some(g) => {
                    let q = g[0].0.quotient_of(&key.m).expect("divides");
                    // g is monic: subtract c * q * g (its leading term cancels key)
                    for (m, x) in &g[1..] {
                        let k = Key {
                            m: m.mul(&q),
                            order: self.order,
                        };
                        let delta = c.mul(x).neg();
                        match work.get_mut(&k) {
                            Some(v) => {
                                *v = v.add(&delta);
                                if v.is_zero() {
                                    work.remove(&k);
                                }
                            }
                            None => {
                                work.insert(k, delta);
                            }
                        }
                    }
                }
            }
        }
        rem
    }
}

fn s_poly(f: &Terms, g: &Terms, order: MonomialOrder) -> Terms {
    let l = f[0].0.lcm(&g[0].0);
    let qf = f[0].0.quotient_of(&l).expect("lcm");
    let qg = g[0].0.quotient_of(&l).expect("lcm");
    let mut acc: BTreeMap<Key, Scalar> = BTreeMap::new();
    for (m, c) in &f[1..] {
        let k = Key { m: m.mul(&qf), order };
        acc.insert(k, c.clone());
    }
    for (m, c) in &g[1..] {
        let k = Key { m: m.mul(&qg), order };
        let v = match acc.remove(&k) {
            Some(v) => v.sub(c),
            None => c.neg(),
        };
        if !v.is_zero() {
            acc.insert(k, v);
        }
    }
    acc.into_iter().rev().map(|(k, c)| (k.m, c)).collect()
}

fn check_relations(relations: &[Polynomial]) -> Result<Option<(Arc<VarContext>, Field)>> {
    let Some(first) = relations.first() else {
        return Ok(None);
    };
    for r in relations {
        if r.context() != first.context() {
            return Err(Error::ContextMismatch);
        }
        if r.field() != first.field() {
            return Err(Error::FieldMismatch(first.field().to_string(), r.field().to_string()));
        }
        if r.homogeneity() == Homogeneity::Mixed {
            return Err(Error::NotHomogeneous(r.to_string()));
        }
    }
    Ok(Some((first.context().clone(), first.field())))
}

/// Reduced Gröbner basis of the ideal generated by homogeneous `relations`.
///
/// `ctx` and `field` describe the ambient ring when `relations` is empty.
pub fn buchberger(
    relations: &[Polynomial],
    ctx: &Arc<VarContext>,
    field: Field,
    order: MonomialOrder,
) -> Result<GroebnerBasis> {
    buchberger_truncated(relations, ctx, field, order, None)
}

/// As [`buchberger`], but S-pairs of degree above `max_degree` are skipped,
/// giving a basis that is correct in degrees `<= max_degree`.
pub fn buchberger_truncated(
    relations: &[Polynomial],
    ctx: &Arc<VarContext>,
    field: Field,
    order: MonomialOrder,
    max_degree: Option<u32>,
) -> Result<GroebnerBasis> {
    if let Some((c, f)) = check_relations(relations)? {
        if &c != ctx {
            return Err(Error::ContextMismatch);
        }
        if f != field {
            return Err(Error::FieldMismatch(field.to_string(), f.to_string()));
        }
    }
    let mut inputs: Vec<Terms> = relations
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| to_terms(p, order))
        .collect();
    inputs.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));

    // inputs are inter-reduced on entry so duplicates disappear early
    let mut basis: Vec<Terms> = Vec::new();
    for f in inputs {
        let r = Reducer {
            basis: &basis,
            order,
        }
        .reduce(f);
        if !r.is_empty() {
            let mut r = r;
            make_monic(&mut r);
            basis.push(r);
        }
    }

    let pair_key = |basis: &[Terms], i: usize, j: usize| {
        let l = basis[i][0].0.lcm(&basis[j][0].0);
        (l.degree(), i, j)
    };
    let mut queue: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
    let mut live: HashSet<(usize, usize)> = HashSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            queue.insert(pair_key(&basis, i, j));
            live.insert((i, j));
        }
    }

    while let Some((deg, i, j)) = queue.pop_first() {
        live.remove(&(i, j));
        if max_degree.is_some_and(|m| deg > m) {
            continue;
        }
        let (li, lj) = (&basis[i][0].0, &basis[j][0].0);
        if li.coprime(lj) {
            continue;
        }
        let l = li.lcm(lj);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k][0].0.divides(&l)
                && !live.contains(&(i.min(k), i.max(k)))
                && !live.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = s_poly(&basis[i], &basis[j], order);
        let mut r = Reducer {
            basis: &basis,
            order,
        }
        .reduce(s);
        if r.is_empty() {
            continue;
        }
        make_monic(&mut r);
        basis.push(r);
        let k = basis.len() - 1;
        for a in 0..k {
            queue.insert(pair_key(&basis, a, k));
            live.insert((a, k));
        }
    }

    Ok(GroebnerBasis::reduce_basis(ctx.clone(), field, order, basis))
}

impl GroebnerBasis {
    fn reduce_basis(ctx: Arc<VarContext>, field: Field, order: MonomialOrder, basis: Vec<Terms>) -> Self {
        // minimal: drop elements whose leading monomial is divisible by another's
        let mut keep: Vec<Terms> = Vec::new();
        for (i, g) in basis.iter().enumerate() {
            let redundant = basis.iter().enumerate().any(|(j, h)| {
                j != i && h[0].0.divides(&g[0].0) && (h[0].0 != g[0].0 || j < i)
            });
            if !redundant {
                keep.push(g.clone());
            }
        }
        keep.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
        let mut reduced = Vec::with_capacity(keep.len());
        for (i, g) in keep.iter().enumerate() {
            let others: Vec<Terms> = keep
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, h)| h.clone())
                .collect();
            let tail = Reducer {
                basis: &others,
                order,
            }
            .reduce(g[1..].to_vec());
            let mut t = vec![g[0].clone()];
            t.extend(tail);
            reduced.push(t);
        }
        let leading = reduced.iter().map(|t| t[0].0.clone()).collect();
        let generators = reduced
            .iter()
            .map(|t| Polynomial::from_terms(&ctx, field, t.iter().cloned()))
            .collect();
        GroebnerBasis {
            ctx,
            field,
            order,
            generators,
            sorted: reduced,
            leading,
        }
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.leading
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn context(&self) -> &Arc<VarContext> {
        &self.ctx
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.leading.iter().any(|l| l.divides(m))
    }

    /// Buchberger certificate: every S-polynomial reduces to zero.
    pub fn s_pairs_reduce_to_zero(&self) -> bool {
        let red = Reducer {
            basis: &self.sorted,
            order: self.order,
        };
        for j in 0..self.sorted.len() {
            for i in 0..j {
                let s = s_poly(&self.sorted[i], &self.sorted[j], self.order);
                if !red.reduce(s).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    /// Reducedness: monic, and no leading monomial divides a term of another element.
    pub fn is_reduced(&self) -> bool {
        self.sorted.iter().enumerate().all(|(i, g)| {
            g[0].1.is_one()
                && self
                    .sorted
                    .iter()
                    .enumerate()
                    .all(|(j, h)| i == j || g.iter().all(|(m, _)| !h[0].0.divides(m)))
        })
    }

    /// Normal form of a monomial times a scalar, as sorted terms.
    pub(crate) fn reduce_terms(&self, t: Terms) -> Terms {
        Reducer {
            basis: &self.sorted,
            order: self.order,
        }
        .reduce(t)
    }
}

/// The unique fully reduced remainder of `f` modulo the basis.
pub fn normal_form(f: &Polynomial, gb: &GroebnerBasis) -> Result<Polynomial> {
    if f.context() != &gb.ctx {
        return Err(Error::ContextMismatch);
    }
    if f.field() != gb.field {
        return Err(Error::FieldMismatch(gb.field.to_string(), f.field().to_string()));
    }
    let r = gb.reduce_terms(to_terms(f, gb.order));
    Ok(Polynomial::from_terms(&gb.ctx, gb.field, r))
}

/// Monomials outside the leading-term ideal, grouped by degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardBasis {
    per_degree: Vec<Vec<Monomial>>,
    total: usize,
}

impl StandardBasis {
    /// Monomials of degree `d`, descending in the basis order.
    pub fn degree(&self, d: usize) -> &[Monomial] {
        self.per_degree.get(d).map_or(&[], Vec::as_slice)
    }

    pub fn per_degree(&self) -> &[Vec<Monomial>] {
        &self.per_degree
    }

    pub fn total(&self) -> usize {
        self.total
    }

    /// Hilbert function `H(0), ..., H(s)`.
    pub fn hilbert(&self) -> Vec<usize> {
        self.per_degree.iter().map(Vec::len).collect()
    }

    /// Highest degree with a standard monomial.
    pub fn top_degree(&self) -> usize {
        self.per_degree.len().saturating_sub(1)
    }
}

/// Standard monomials of an Artinian quotient.
pub fn standard_monomials(gb: &GroebnerBasis) -> Result<StandardBasis> {
    let n = gb.ctx.len();
    for v in 0..n {
        if !gb.leading.iter().any(|l| l.pure_power_var() == Some(v)) {
            return Err(Error::NotArtinian(gb.ctx.names()[v].clone()));
        }
    }
    let mut per_degree = Vec::new();
    let mut total = 0;
    for d in 0.. {
        let mut ms: Vec<Monomial> = Monomial::all_of_degree(n, d)
            .into_iter()
            .filter(|m| gb.is_standard(m))
            .collect();
        if ms.is_empty() {
            break;
        }
        ms.sort_by(|a, b| gb.order.cmp(b, a));
        total += ms.len();
        per_degree.push(ms);
    }
    Ok(StandardBasis { per_degree, total })
}
