//! Graded Artinian quotient rings `k[x_1..x_n]/I` with explicit multiplication
//! tables, ring invariants, socles and annihilators, and the constructions
//! tensor product, fiber product, connected sum and socle quotient.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactmath::{
    parse_poly, Field, Homogeneity, Monomial, MonomialOrder, Polynomial, VarContext,
};
use crate::groebner::{buchberger, GroebnerBasis, StandardBasis};
use crate::linalg::{kernel_of_columns, Echelon, SparseVec};

/// Coordinates of a ring element in the standard basis.
pub type RingElem = SparseVec;

/// A fully materialized standard-graded Artinian quotient ring.
///
/// Basis elements are the standard monomials, indexed in ascending degree and,
/// within a degree, descending in the monomial order. Index 0 is always `1`
/// and indices `1..=n` are the variables.
#[derive(Clone)]
pub struct QuotientRing {
    field: Field,
    ctx: Arc<VarContext>,
    relations: Vec<Polynomial>,
    gb: GroebnerBasis,
    standard: StandardBasis,
    basis: Vec<Monomial>,
    degrees: Vec<usize>,
    offsets: Vec<usize>,
    index: HashMap<Monomial, usize>,
    table: Vec<Vec<RingElem>>,
}

impl fmt::Debug for QuotientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuotientRing({})", self.presentation())
    }
}

/// Builds the ring `field[variables]/(relations)` under degrevlex.
pub fn make_ring<S: AsRef<str>>(field: Field, variables: &[S], relations: &[Polynomial]) -> Result<QuotientRing> {
    let ctx = VarContext::new(variables)?;
    QuotientRing::new(field, &ctx, relations, MonomialOrder::DegRevLex)
}

impl QuotientRing {
    /// Materializes the quotient. Relations must be homogeneous of degree at
    /// least 2 and the quotient must be Artinian.
    pub fn new(
        field: Field,
        ctx: &Arc<VarContext>,
        relations: &[Polynomial],
        order: MonomialOrder,
    ) -> Result<QuotientRing> {
        for r in relations {
            if r.context() != ctx {
                return Err(Error::ContextMismatch);
            }
            if r.field() != field {
                return Err(Error::FieldMismatch(field.to_string(), r.field().to_string()));
            }
            match r.homogeneity() {
                Homogeneity::Mixed => return Err(Error::NotHomogeneous(r.to_string())),
                Homogeneity::Degree(d) if d < 2 => return Err(Error::LowDegree(r.to_string())),
                _ => {}
            }
        }
        let relations: Vec<Polynomial> = relations.iter().filter(|r| !r.is_zero()).cloned().collect();
        let gb = buchberger(&relations, ctx, field, order)?;
        let standard = crate::groebner::standard_monomials(&gb)?;

        let mut basis = Vec::new();
        let mut degrees = Vec::new();
        let mut offsets = Vec::new();
        for (d, ms) in standard.per_degree().iter().enumerate() {
            offsets.push(basis.len());
            for m in ms {
                basis.push(m.clone());
                degrees.push(d);
            }
        }
        offsets.push(basis.len());
        let index: HashMap<Monomial, usize> = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let top = standard.top_degree();

        let n = basis.len();
        let mut table = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in i..n {
                if degrees[i] + degrees[j] > top {
                    continue;
                }
                let m = basis[i].mul(&basis[j]);
                let v: RingElem = match index.get(&m) {
                    Some(&k) => vec![(k, field.one())],
                    None => {
                        let mut v: RingElem = gb
                            .reduce_terms(vec![(m, field.one())])
                            .into_iter()
                            .map(|(t, c)| (index[&t], c))
                            .collect();
                        v.sort_by_key(|e| e.0);
                        v
                    }
                };
                table[j][i] = v.clone();
                table[i][j] = v;
            }
        }
        Ok(QuotientRing {
            field,
            ctx: ctx.clone(),
            relations,
            gb,
            standard,
            basis,
            degrees,
            offsets,
            index,
            table,
        })
    }

    /// Parses relation strings in the given variables.
    pub fn parse<S: AsRef<str>>(field: Field, variables: &[S], relations: &[&str]) -> Result<QuotientRing> {
        let ctx = VarContext::new(variables)?;
        let rels = relations
            .iter()
            .map(|s| parse_poly(s, &ctx, field))
            .collect::<Result<Vec<_>>>()?;
        QuotientRing::new(field, &ctx, &rels, MonomialOrder::DegRevLex)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn context(&self) -> &Arc<VarContext> {
        &self.ctx
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    pub fn groebner(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn standard_basis(&self) -> &StandardBasis {
        &self.standard
    }

    pub fn nvars(&self) -> usize {
        self.ctx.len()
    }

    /// `dim_k R`.
    pub fn length(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn basis_degree(&self, i: usize) -> usize {
        self.degrees[i]
    }

    /// Basis indices of degree `d` (empty outside `0..=s`).
    pub fn degree_range(&self, d: i64) -> std::ops::Range<usize> {
        if d < 0 || d as usize + 1 >= self.offsets.len() {
            return 0..0;
        }
        self.offsets[d as usize]..self.offsets[d as usize + 1]
    }

    pub fn hilbert(&self) -> Vec<usize> {
        self.standard.hilbert()
    }

    /// `dim R_d`.
    pub fn hilbert_at(&self, d: i64) -> usize {
        self.degree_range(d).len()
    }

    /// Socle degree `s = max{n : m^n != 0}`.
    pub fn socle_degree(&self) -> usize {
        self.standard.top_degree()
    }

    /// Basis index of variable `i`.
    pub fn var_index(&self, i: usize) -> usize {
        self.index[&Monomial::var(self.nvars(), i)]
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Product of two basis elements.
    pub fn mul_basis(&self, i: usize, j: usize) -> &RingElem {
        &self.table[i][j]
    }

    pub fn mul(&self, a: &RingElem, b: &RingElem) -> RingElem {
        let mut acc = vec![self.field.zero(); self.length()];
        for (i, x) in a {
            for (j, y) in b {
                let xy = x.mul(y);
                for (k, z) in &self.table[*i][*j] {
                    acc[*k] = acc[*k].add(&xy.mul(z));
                }
            }
        }
        acc.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect()
    }

    pub fn one(&self) -> RingElem {
        vec![(0, self.field.one())]
    }

    pub fn var(&self, i: usize) -> RingElem {
        vec![(self.var_index(i), self.field.one())]
    }

    /// Normal form of a polynomial in this ring's variables, as coordinates.
    pub fn element(&self, p: &Polynomial) -> Result<RingElem> {
        let nf = crate::groebner::normal_form(p, &self.gb)?;
        let mut v: RingElem = nf.terms().map(|(m, c)| (self.index[m], c.clone())).collect();
        v.sort_by_key(|e| e.0);
        Ok(v)
    }

    pub fn parse_element(&self, text: &str) -> Result<RingElem> {
        self.element(&parse_poly(text, &self.ctx, self.field)?)
    }

    pub fn to_polynomial(&self, a: &RingElem) -> Polynomial {
        Polynomial::from_terms(
            &self.ctx,
            self.field,
            a.iter().map(|(i, c)| (self.basis[*i].clone(), c.clone())),
        )
    }

    /// Human-readable presentation `F[vars]/(relations)`.
    pub fn presentation(&self) -> String {
        let rels: Vec<String> = self.relations.iter().map(|r| r.to_string()).collect();
        format!("{}[{}]/({})", self.field, self.ctx.names().join(","), rels.join(", "))
    }

    pub fn invariants(&self) -> RingInvariants {
        let socle = self.socle();
        let s = self.socle_degree();
        RingInvariants {
            edim: self.nvars(),
            dimension: 0,
            codim: self.nvars(),
            length: self.length(),
            socle_degree: s,
            loewy_length: s + 1,
            hilbert: self.hilbert(),
            gorenstein: socle.elements.len() == 1,
            socle_dimension: socle.elements.len(),
        }
    }

    /// Basis of `ann(m)`, degree by degree, each vector scaled so its first
    /// nonzero coordinate is 1.
    pub fn socle(&self) -> SocleBasis {
        let n = self.length();
        let e = self.nvars();
        let mut elements = Vec::new();
        let mut degrees = Vec::new();
        for d in 0..=self.socle_degree() {
            let range = self.degree_range(d as i64);
            let cols: Vec<SparseVec> = range
                .clone()
                .map(|b| {
                    let mut col = Vec::new();
                    for v in 0..e {
                        for (k, c) in self.mul_basis(self.var_index(v), b) {
                            col.push((v * n + k, c.clone()));
                        }
                    }
                    col
                })
                .collect();
            for k in kernel_of_columns(self.field, e * n, &cols) {
                let v: RingElem = k.into_iter().map(|(j, c)| (range.start + j, c)).collect();
                elements.push(normalize_first(&v));
                degrees.push(d);
            }
        }
        SocleBasis { elements, degrees }
    }

    /// Basis of `ann(a)`.
    pub fn annihilator(&self, a: &RingElem) -> Result<Vec<RingElem>> {
        self.check_proper(a)?;
        let cols: Vec<SparseVec> = (0..self.length()).map(|j| self.mul(a, &vec![(j, self.field.one())])).collect();
        Ok(kernel_of_columns(self.field, self.length(), &cols))
    }

    /// k-basis (echelon rows) of the principal ideal `(b)`.
    pub fn principal_ideal(&self, b: &RingElem) -> Echelon {
        let mut e = Echelon::new(self.field, self.length());
        for j in 0..self.length() {
            e.insert(&self.mul(b, &vec![(j, self.field.one())]));
        }
        e
    }

    fn check_proper(&self, a: &RingElem) -> Result<()> {
        if a.is_empty() {
            return Err(Error::Invalid("zero element".into()));
        }
        if a.first().is_some_and(|(i, _)| *i == 0) {
            return Err(Error::Invalid("unit element".into()));
        }
        Ok(())
    }

    /// `true` iff `ann(a) = (b)` and `ann(b) = (a)`.
    pub fn exact_pair_check(&self, a: &RingElem, b: &RingElem) -> Result<bool> {
        self.check_proper(a)?;
        self.check_proper(b)?;
        let same = |ann: Vec<RingElem>, ideal: Echelon| {
            ann.len() == ideal.rank() && ann.iter().all(|v| ideal.contains(v))
        };
        Ok(same(self.annihilator(a)?, self.principal_ideal(b))
            && same(self.annihilator(b)?, self.principal_ideal(a)))
    }

    pub fn montano_lyle_check(&self) -> MontanoLyle {
        let e = self.length() as i64;
        let c = self.nvars() as i64;
        let l = self.socle_degree() as i64 + 1;
        MontanoLyle {
            e,
            c,
            l,
            satisfies_2c_plus_l_minus_3: e <= 2 * c + l - 3,
            satisfies_strict: e <= 2 * c + l - 4,
        }
    }

    /// Checks associativity and commutativity on all basis triples.
    pub fn check_multiplication(&self) -> bool {
        let n = self.length();
        let unit = |i| vec![(i, self.field.one())];
        for a in 0..n {
            for b in 0..n {
                if self.table[a][b] != self.table[b][a] {
                    return false;
                }
                for c in 0..n {
                    let l = self.mul(&self.table[a][b], &unit(c));
                    let r = self.mul(&unit(a), &self.table[b][c]);
                    if l != r {
                        return false;
                    }
                }
            }
        }
        true
    }
}

fn normalize_first(v: &RingElem) -> RingElem {
    match v.first() {
        None => Vec::new(),
        Some((_, c)) => {
            let inv = c.inv();
            v.iter().map(|(i, x)| (*i, x.mul(&inv))).collect()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingInvariants {
    pub edim: usize,
    pub dimension: usize,
    pub codim: usize,
    /// `dim_k R`, which is also the multiplicity for Artinian graded rings
    pub length: usize,
    pub socle_degree: usize,
    pub loewy_length: usize,
    pub hilbert: Vec<usize>,
    pub gorenstein: bool,
    pub socle_dimension: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SocleBasis {
    pub elements: Vec<RingElem>,
    pub degrees: Vec<usize>,
}

impl SocleBasis {
    pub fn dimension(&self) -> usize {
        self.elements.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MontanoLyle {
    pub e: i64,
    pub c: i64,
    pub l: i64,
    pub satisfies_2c_plus_l_minus_3: bool,
    pub satisfies_strict: bool,
}

fn union_context(a: &QuotientRing, b: &QuotientRing) -> Result<Arc<VarContext>> {
    if a.field != b.field {
        return Err(Error::FieldMismatch(a.field.to_string(), b.field.to_string()));
    }
    for n in b.ctx.names() {
        if a.ctx.index_of(n).is_some() {
            return Err(Error::Collision(n.clone()));
        }
    }
    let mut names: Vec<String> = a.ctx.names().to_vec();
    names.extend(b.ctx.names().iter().cloned());
    VarContext::new(&names)
}

fn embedded_relations(r: &QuotientRing, ctx: &Arc<VarContext>) -> Result<Vec<Polynomial>> {
    r.relations.iter().map(|p| p.embed(ctx)).collect()
}

fn mixed_products(a: &QuotientRing, b: &QuotientRing, ctx: &Arc<VarContext>) -> Vec<Polynomial> {
    let f = a.field;
    let mut out = Vec::new();
    for i in 0..a.nvars() {
        for j in 0..b.nvars() {
            let xi = Polynomial::var(ctx, f, i);
            let yj = Polynomial::var(ctx, f, a.nvars() + j);
            out.push(xi.mul(&yj).expect("same context"));
        }
    }
    out
}

/// `A ⊗_k B`: union of variables and relations.
pub fn tensor_product(a: &QuotientRing, b: &QuotientRing) -> Result<QuotientRing> {
    let ctx = union_context(a, b)?;
    let mut rels = embedded_relations(a, &ctx)?;
    rels.extend(embedded_relations(b, &ctx)?);
    QuotientRing::new(a.field, &ctx, &rels, MonomialOrder::DegRevLex)
}

/// `S ×_k T`: union of relations plus every mixed product of variables.
pub fn fiber_product(s: &QuotientRing, t: &QuotientRing) -> Result<QuotientRing> {
    if s.nvars() == 0 || t.nvars() == 0 {
        return Err(Error::Invalid("fiber product needs rings with at least one variable".into()));
    }
    let ctx = union_context(s, t)?;
    let mut rels = embedded_relations(s, &ctx)?;
    rels.extend(embedded_relations(t, &ctx)?);
    rels.extend(mixed_products(s, t, &ctx));
    QuotientRing::new(s.field, &ctx, &rels, MonomialOrder::DegRevLex)
}

/// Normalized generator of a one-dimensional socle.
pub fn socle_generator(r: &QuotientRing) -> Result<RingElem> {
    let soc = r.socle();
    if soc.dimension() != 1 {
        return Err(Error::NotGorenstein(soc.dimension()));
    }
    Ok(soc.elements[0].clone())
}

/// `S # T`: the fiber product modulo `σ_S - σ_T` for normalized socle
/// generators. Needs Gorenstein inputs of length >= 3 and equal socle degree.
pub fn connected_sum(s: &QuotientRing, t: &QuotientRing) -> Result<QuotientRing> {
    let sig_s = socle_generator(s)?;
    let sig_t = socle_generator(t)?;
    for r in [s, t] {
        if r.length() < 3 {
            return Err(Error::Invalid(format!("connected sum needs length >= 3, got {}", r.length())));
        }
    }
    if s.socle_degree() != t.socle_degree() {
        return Err(Error::SocleDegreeMismatch(s.socle_degree(), t.socle_degree()));
    }
    let ctx = union_context(s, t)?;
    let mut rels = embedded_relations(s, &ctx)?;
    rels.extend(embedded_relations(t, &ctx)?);
    rels.extend(mixed_products(s, t, &ctx));
    let ps = s.to_polynomial(&sig_s).embed(&ctx)?;
    let pt = t.to_polynomial(&sig_t).embed(&ctx)?;
    rels.push(ps.sub(&pt)?);
    QuotientRing::new(s.field, &ctx, &rels, MonomialOrder::DegRevLex)
}

/// `R / soc R`. Linear socle elements are eliminated by substitution, so the
/// result may have fewer variables.
pub fn teter_quotient(r: &QuotientRing) -> Result<QuotientRing> {
    if r.length() <= 1 {
        return Err(Error::Invalid("ring has length 1; the quotient would be the field".into()));
    }
    let soc = r.socle();
    let n = r.nvars();
    let f = r.field;

    // linear socle elements -> reduced echelon over variable coordinates
    let mut lin = Echelon::new(f, n);
    for (v, d) in soc.elements.iter().zip(&soc.degrees) {
        if *d == 1 {
            let coords: SparseVec = v.iter().map(|(i, c)| (*i - 1, c.clone())).collect();
            lin.insert(&coords);
        }
    }
    let pivots: Vec<usize> = lin.pivots().collect();
    let keep: Vec<usize> = (0..n).filter(|i| !lin.is_pivot(*i)).collect();
    let names: Vec<String> = keep.iter().map(|&i| r.ctx.names()[i].clone()).collect();
    let ctx = VarContext::new(&names)?;

    let mut images: Vec<Polynomial> = vec![Polynomial::zero(&ctx, f); n];
    for (k, &i) in keep.iter().enumerate() {
        images[i] = Polynomial::var(&ctx, f, k);
    }
    for row in lin.rows() {
        let p = row[0].0;
        let tail: SparseVec = row[1..].to_vec();
        let reduced = lin.reduce(&tail);
        // x_p = -(reduced tail), which only involves kept variables
        let mut img = Polynomial::zero(&ctx, f);
        for (j, c) in reduced {
            let k = keep.iter().position(|&x| x == j).expect("non-pivot");
            img = img.add(&Polynomial::var(&ctx, f, k).scale(&c.neg())?)?;
        }
        images[p] = img;
    }
    debug_assert_eq!(pivots.len() + keep.len(), n);

    let mut rels = Vec::new();
    for p in &r.relations {
        rels.push(p.substitute(&images, &ctx)?);
    }
    for (v, d) in soc.elements.iter().zip(&soc.degrees) {
        if *d >= 2 {
            rels.push(r.to_polynomial(v).substitute(&images, &ctx)?);
        }
    }
    let rels: Vec<Polynomial> = rels.into_iter().filter(|p| !p.is_zero()).collect();
    QuotientRing::new(f, &ctx, &rels, MonomialOrder::DegRevLex)
}


#[cfg(test)]
mod tests {
    use super::*;

    fn ring(vars: &[&str], rels: &[&str]) -> QuotientRing {
        QuotientRing::parse(Field::Rational, vars, rels).unwrap()
    }

    pub(crate) fn compressed() -> QuotientRing {
        ring(&["x", "y", "z"], &["x*z", "z^2 + x*y", "y^2*z", "x^2", "y^3"])
    }

    #[test]
    fn square_of_maximal_ideal() {
        let r = ring(&["x", "y"], &["x^2", "x*y", "y^2"]);
        assert_eq!(r.hilbert(), vec![1, 2]);
        let inv = r.invariants();
        assert_eq!((inv.edim, inv.length, inv.socle_degree, inv.loewy_length, inv.codim), (2, 3, 1, 2, 2));
        assert!(!inv.gorenstein);
        assert_eq!(r.socle().dimension(), 2);
        let ml = r.montano_lyle_check();
        assert_eq!((ml.e, ml.c, ml.l), (3, 2, 2));
        assert!(ml.satisfies_2c_plus_l_minus_3);
        assert!(!ml.satisfies_strict);
    }

    #[test]
    fn ring_s_from_example() {
        let s = ring(&["w", "x", "y", "z"], &["w^2", "x^2", "x*y", "y^2", "z^2"]);
        assert_eq!(s.length(), 12);
        assert_eq!(s.hilbert(), vec![1, 4, 5, 2]);
        assert!(s.check_multiplication());
    }

    #[test]
    fn degree_one_relation_rejected() {
        assert!(matches!(
            QuotientRing::parse(Field::Rational, &["x"], &["x"]),
            Err(Error::LowDegree(_))
        ));
        assert!(matches!(
            QuotientRing::parse(Field::Rational, &["x", "y"], &["x^2 + y"]),
            Err(Error::NotHomogeneous(_))
        ));
        assert!(matches!(
            QuotientRing::parse(Field::Rational, &["x", "y"], &["x^2"]),
            Err(Error::NotArtinian(_))
        ));
    }

    #[test]
    fn compressed_invariants() {
        let r = compressed();
        let inv = r.invariants();
        assert_eq!((inv.edim, inv.length, inv.socle_degree, inv.loewy_length), (3, 8, 3, 4));
        assert!(inv.gorenstein);
        assert_eq!(inv.hilbert, vec![1, 3, 3, 1]);
        let ml = r.montano_lyle_check();
        assert!(!ml.satisfies_2c_plus_l_minus_3);
        assert!(r.check_multiplication());
    }

    #[test]
    fn socles() {
        let ci = ring(&["x", "y"], &["x^2", "y^2"]);
        let soc = ci.socle();
        assert_eq!(soc.dimension(), 1);
        assert_eq!(ci.to_polynomial(&soc.elements[0]).to_string(), "x*y");
        let m2 = ring(&["x", "y"], &["x^2", "x*y", "y^2"]);
        assert_eq!(m2.socle().degrees, vec![1, 1]);
    }

    #[test]
    fn exact_pairs() {
        let r = ring(&["x"], &["x^4"]);
        let x = r.parse_element("x").unwrap();
        let x3 = r.parse_element("x^3").unwrap();
        assert!(r.exact_pair_check(&x, &x3).unwrap());
        let ci = ring(&["x", "y"], &["x^2", "y^2"]);
        let (a, b) = (ci.parse_element("x").unwrap(), ci.parse_element("y").unwrap());
        assert!(!ci.exact_pair_check(&a, &b).unwrap());
        assert!(ci.exact_pair_check(&a, &a).unwrap());
        assert!(ci.exact_pair_check(&ci.one(), &a).is_err());
        assert!(ci.annihilator(&Vec::new()).is_err());
    }

    #[test]
    fn tensor_examples() {
        let a = ring(&["x", "y"], &["x^2", "x*y", "y^2"]);
        let w = ring(&["w"], &["w^2"]);
        let z = ring(&["z"], &["z^2"]);
        let s = tensor_product(&tensor_product(&a, &w).unwrap(), &z).unwrap();
        assert_eq!(s.length(), 12);
        let k = ring(&[], &[]);
        assert_eq!(k.length(), 1);
        assert_eq!(tensor_product(&a, &k).unwrap().hilbert(), a.hilbert());
        let xx = ring(&["x"], &["x^2"]);
        let yy = ring(&["y"], &["y^2"]);
        assert_eq!(tensor_product(&xx, &yy).unwrap().length(), 4);
        assert!(matches!(tensor_product(&xx, &xx), Err(Error::Collision(_))));
    }

    #[test]
    fn fiber_examples() {
        let xx = ring(&["x"], &["x^2"]);
        let yy = ring(&["y"], &["y^2"]);
        let f = fiber_product(&xx, &yy).unwrap();
        assert_eq!(f.length(), 3);
        let m2 = ring(&["x", "y"], &["x^2", "x*y", "y^2"]);
        let zz = ring(&["z"], &["z^2"]);
        let g = fiber_product(&m2, &zz).unwrap();
        assert_eq!(g.length(), 4);
        assert_eq!(g.socle_degree(), 1);
    }

    #[test]
    fn connected_sum_examples() {
        let s = ring(&["x", "y"], &["x^2", "y^2"]);
        let t = ring(&["z"], &["z^3"]);
        let c = connected_sum(&s, &t).unwrap();
        assert_eq!(c.length(), 5);
        assert_eq!(c.hilbert(), vec![1, 3, 1]);
        assert!(c.invariants().gorenstein);
        let expected = ring(&["x", "y", "z"], &["x^2", "y^2", "x*z", "y*z", "x*y - z^2"]);
        assert_eq!(c.groebner().generators(), expected.groebner().generators());

        let a = ring(&["x"], &["x^3"]);
        let b = ring(&["y"], &["y^3"]);
        let ab = connected_sum(&a, &b).unwrap();
        assert_eq!(ab.length(), 4);
        let want = ring(&["x", "y"], &["x^3", "y^3", "x*y", "x^2 - y^2"]);
        assert_eq!(ab.groebner().generators(), want.groebner().generators());

        let u = ring(&["u"], &["u^4"]);
        assert!(matches!(connected_sum(&s, &u), Err(Error::SocleDegreeMismatch(2, 3))));
        let m2 = ring(&["p", "q"], &["p^2", "p*q", "q^2"]);
        assert!(matches!(connected_sum(&s, &m2), Err(Error::NotGorenstein(2))));
    }

    #[test]
    fn teter_examples() {
        let ci = ring(&["x", "y"], &["x^2", "y^2"]);
        let t = teter_quotient(&ci).unwrap();
        assert_eq!(t.hilbert(), vec![1, 2]);
        let x3 = ring(&["x"], &["x^3"]);
        assert_eq!(teter_quotient(&x3).unwrap().hilbert(), vec![1, 1]);
        let m2 = ring(&["x", "y"], &["x^2", "x*y", "y^2"]);
        let k = teter_quotient(&m2).unwrap();
        assert_eq!(k.length(), 1);
        assert_eq!(k.nvars(), 0);
        assert!(teter_quotient(&k).is_err());
    }

    #[test]
    fn gorenstein_hilbert_is_symmetric() {
        for r in [compressed(), ring(&["x", "y"], &["x^2", "y^2"]), ring(&["x"], &["x^5"])] {
            let inv = r.invariants();
            assert!(inv.gorenstein);
            let h = inv.hilbert;
            let s = h.len() - 1;
            assert!((0..=s).all(|i| h[i] == h[s - i]));
        }
    }
}
