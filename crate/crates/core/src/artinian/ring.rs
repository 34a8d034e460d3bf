use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use super::field::Field;
use super::linalg::{Echelon, KernelTracker, Row};
use super::monomial::MonomialTable;
use super::poly::Poly;
use crate::calculus::{CalcError, IdealCalculus};

pub const DEFAULT_GUARD: usize = 2;
pub const DEFAULT_BUDGET: u32 = 4;

struct RingInner<F: Field> {
    d: usize,
    n: usize,
    guard: usize,
    field: F,
    names: Vec<String>,
    table: MonomialTable,
}

/// `k[[x_1..x_d]]` computed through its truncations `R/m^T`, `T ≤ N`.
///
/// `N` bounds the work: an ideal is accepted only once it is certified to
/// contain `m^s` with `s ≤ N - guard`.
pub struct TruncatedLocalRing<F: Field> {
    inner: Arc<RingInner<F>>,
}

impl<F: Field> Clone for TruncatedLocalRing<F> {
    fn clone(&self) -> Self {
        TruncatedLocalRing {
            inner: Arc::clone(&self.inner),
        }
    }
}

impl<F: Field> fmt::Debug for TruncatedLocalRing<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "k[[{}]]/m^{} (char {})",
            self.inner.names.join(","),
            self.inner.n,
            self.inner.field.characteristic()
        )
    }
}

fn default_names(d: usize) -> Vec<String> {
    if d <= 3 {
        ["x", "y", "z"][..d].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=d).map(|i| format!("x{i}")).collect()
    }
}

impl<F: Field> TruncatedLocalRing<F> {
    pub fn new(d: usize, n: usize, field: F) -> Result<Self, CalcError> {
        Self::with_names(default_names(d), n, field)
    }

    pub fn with_names(names: Vec<String>, n: usize, field: F) -> Result<Self, CalcError> {
        Self::build(names, n, DEFAULT_GUARD, field)
    }

    fn build(names: Vec<String>, n: usize, guard: usize, field: F) -> Result<Self, CalcError> {
        let d = names.len();
        if d == 0 {
            return Err(CalcError::BadParameters(
                "need at least one variable".into(),
            ));
        }
        if n < 2 {
            return Err(CalcError::BadParameters(format!("truncation {n} < 2")));
        }
        if guard >= n {
            return Err(CalcError::BadParameters(format!(
                "guard {guard} leaves nothing below truncation {n}"
            )));
        }
        Ok(TruncatedLocalRing {
            inner: Arc::new(RingInner {
                d,
                n,
                guard,
                field,
                names,
                table: MonomialTable::new(d, n + 1),
            }),
        })
    }

    /// Same variables and field, different truncation. Ideals of `self` are
    /// not ideals of the result.
    pub fn with_truncation(&self, n: usize) -> Result<Self, CalcError> {
        let i = &self.inner;
        Self::build(i.names.clone(), n, i.guard, i.field.clone())
    }

    pub fn with_guard(&self, guard: usize) -> Result<Self, CalcError> {
        let i = &self.inner;
        Self::build(i.names.clone(), i.n, guard, i.field.clone())
    }

    pub fn truncation(&self) -> usize {
        self.inner.n
    }

    pub fn guard(&self) -> usize {
        self.inner.guard
    }

    pub fn field(&self) -> &F {
        &self.inner.field
    }

    pub fn names(&self) -> &[String] {
        &self.inner.names
    }

    /// `dim R/m^N = C(N-1+d, d)`.
    pub fn ambient_dimension(&self) -> usize {
        self.inner.table.count_below(self.inner.n)
    }

    pub fn same_ring(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
    }

    pub fn var(&self, i: usize) -> Poly<F::Elem> {
        Poly::var(&self.inner.field, self.inner.d, i)
    }

    fn table(&self) -> &MonomialTable {
        &self.inner.table
    }

    fn m(&self, deg: usize) -> usize {
        self.inner.table.count_below(deg)
    }

    fn check(&self, k: &ArtIdeal<F>) -> Result<(), CalcError> {
        if self.same_ring(&k.ring) {
            Ok(())
        } else {
            Err(CalcError::MixedRings)
        }
    }

    /// The image of `p` in `R/m^t`.
    pub fn poly_to_row(&self, p: &Poly<F::Elem>, t: usize) -> Row<F::Elem> {
        let mut row: Row<F::Elem> = p
            .terms()
            .filter_map(|(e, c)| {
                let deg: u32 = e.iter().sum();
                if (deg as usize) < t {
                    self.table().index_of(e).map(|i| (i as u32, c.clone()))
                } else {
                    None
                }
            })
            .collect();
        row.sort_by_key(|x| x.0);
        row
    }

    pub fn row_to_poly(&self, r: &[(u32, F::Elem)]) -> Poly<F::Elem> {
        let f = &self.inner.field;
        let mut p = Poly::zero(self.inner.d);
        for (c, v) in r {
            let mono = Poly::monomial(f, self.table().exponents(*c as usize).to_vec(), v.clone());
            p = p.add(f, &mono);
        }
        p
    }

    fn mul_rows(&self, a: &[(u32, F::Elem)], b: &[(u32, F::Elem)], t: usize) -> Row<F::Elem> {
        let f = &self.inner.field;
        let table = self.table();
        if a.len() == 1 && b.len() == 1 {
            return match table.mul_index(a[0].0 as usize, b[0].0 as usize, t) {
                Some(i) => vec![(i as u32, f.mul(&a[0].1, &b[0].1))],
                None => Vec::new(),
            };
        }
        let mut acc: BTreeMap<u32, F::Elem> = BTreeMap::new();
        for (i, ca) in a {
            for (j, cb) in b {
                if let Some(k) = table.mul_index(*i as usize, *j as usize, t) {
                    let prod = f.mul(ca, cb);
                    acc.entry(k as u32)
                        .and_modify(|v| *v = f.add(v, &prod))
                        .or_insert(prod);
                }
            }
        }
        acc.into_iter().filter(|(_, v)| !f.is_zero(v)).collect()
    }

    /// Promotes a span of `R/m^t` to an ideal. With `exact` the caller knows
    /// `m^t ⊆ K`; otherwise containment of `m^s` is deduced by Nakayama and
    /// needs `s < t`.
    fn certify(&self, e: Echelon<F>, t: usize, exact: bool) -> Result<ArtIdeal<F>, CalcError> {
        let mut s = t;
        while s > 0 && (self.m(s - 1)..self.m(s)).all(|c| e.is_pivot(c)) {
            s -= 1;
        }
        let limit = self.inner.n - self.inner.guard;
        if (!exact && s >= t) || s > limit {
            return Err(CalcError::PrecisionExhausted {
                ord: (s < t).then_some(s),
                truncation: self.inner.n,
            });
        }
        let cut = self.m(s) as u32;
        let rows: Vec<Row<F::Elem>> = e
            .into_reduced()
            .into_iter()
            .filter(|r| r[0].0 < cut)
            .map(|r| r.into_iter().filter(|(c, _)| *c < cut).collect())
            .collect();
        Ok(ArtIdeal::from_parts(self.clone(), s, rows))
    }

    /// The ideal generated by `gens`.
    pub fn ideal(&self, gens: &[Poly<F::Elem>]) -> Result<ArtIdeal<F>, CalcError> {
        let f = &self.inner.field;
        if gens
            .iter()
            .any(|g| g.constant_term().is_some_and(|c| !f.is_zero(c)))
        {
            return Err(CalcError::UnitGenerator);
        }
        if gens.iter().any(|g| g.nvars() != self.inner.d) {
            return Err(CalcError::BadParameters(
                "generator has the wrong number of variables".into(),
            ));
        }
        self.closure(gens)
    }

    fn closure(&self, gens: &[Poly<F::Elem>]) -> Result<ArtIdeal<F>, CalcError> {
        let n = self.inner.n;
        let mut t = n.min(6);
        loop {
            let mut e = Echelon::new(self.inner.field.clone(), self.m(t));
            let mut queue: VecDeque<Row<F::Elem>> =
                gens.iter().map(|g| self.poly_to_row(g, t)).collect();
            while let Some(v) = queue.pop_front() {
                let r = e.reduce(&v);
                if let Some(stored) = e.insert_reduced(r) {
                    let stored = stored.clone();
                    for var in 0..self.inner.d {
                        let x = [(self.table().var_index(var) as u32, self.inner.field.one())];
                        queue.push_back(self.mul_rows(&stored, &x, t));
                    }
                }
            }
            match self.certify(e, t, false) {
                Err(err) if err.is_precision_exhausted() && t < n => t = (2 * t).min(n),
                other => return other,
            }
        }
    }

    pub fn unit(&self) -> ArtIdeal<F> {
        ArtIdeal::from_parts(self.clone(), 0, Vec::new())
    }

    pub fn maximal(&self) -> ArtIdeal<F> {
        ArtIdeal::from_parts(self.clone(), 1, Vec::new())
    }

    /// `Σ e_k K_k`, where single terms need not be m-primary.
    pub fn scaled_sum_of(
        &self,
        terms: &[(Poly<F::Elem>, &ArtIdeal<F>)],
    ) -> Result<ArtIdeal<F>, CalcError> {
        let f = &self.inner.field;
        for (_, k) in terms {
            self.check(k)?;
        }
        let mut parts: Vec<ArtIdeal<F>> = Vec::new();
        let mut rest: Vec<(Row<F::Elem>, &ArtIdeal<F>)> = Vec::new();
        for (e, k) in terms {
            if e.constant_term().is_some_and(|c| !f.is_zero(c)) {
                // a unit times K is K
                parts.push((*k).clone());
            } else if !e.is_zero() {
                rest.push((self.poly_to_row(e, self.inner.n), k));
            }
        }
        let mut acc = match parts.split_first() {
            Some((first, others)) => {
                let mut acc = first.clone();
                for o in others {
                    acc = self.sum_of(&acc, o)?;
                }
                Some(acc)
            }
            None => None,
        };
        if !rest.is_empty() {
            let n = self.inner.n;
            let floor = acc.as_ref().map(|a| a.ord);
            let mut t = n.min(rest.iter().map(|(_, k)| k.ord).max().unwrap_or(0) + 2);
            let piece = loop {
                // a known m-primary summand makes truncation at its order exact
                let (t_eff, exact) = match floor {
                    Some(fl) if t >= fl => (fl, true),
                    _ => (t, false),
                };
                let cols = self.m(t_eff) as u32;
                let mut e = Echelon::new(f.clone(), cols as usize);
                if let Some(a) = &acc {
                    for v in a.lift_rows(t_eff) {
                        e.insert(&v);
                    }
                }
                for (el, k) in &rest {
                    let el: Row<F::Elem> = el.iter().filter(|(c, _)| *c < cols).cloned().collect();
                    for v in k.lift_rows(t_eff) {
                        e.insert(&self.mul_rows(&el, &v, t_eff));
                    }
                }
                match self.certify(e, t_eff, exact) {
                    Err(err) if err.is_precision_exhausted() && !exact && t < n => {
                        t = (2 * t).min(n)
                    }
                    other => break other?,
                }
            };
            acc = Some(piece);
        }
        acc.ok_or(CalcError::PrecisionExhausted {
            ord: None,
            truncation: self.inner.n,
        })
    }

    fn sum_of(&self, a: &ArtIdeal<F>, b: &ArtIdeal<F>) -> Result<ArtIdeal<F>, CalcError> {
        self.check(a)?;
        self.check(b)?;
        let t = a.ord.min(b.ord);
        let mut e = Echelon::new(self.inner.field.clone(), self.m(t));
        for v in a.lift_rows(t).chain(b.lift_rows(t)) {
            e.insert(&v);
        }
        self.certify(e, t, true)
    }

    fn product_of(&self, a: &ArtIdeal<F>, b: &ArtIdeal<F>) -> Result<ArtIdeal<F>, CalcError> {
        self.check(a)?;
        self.check(b)?;
        if a.ord == 0 {
            return Ok(b.clone());
        }
        if b.ord == 0 {
            return Ok(a.clone());
        }
        let (gen_side, other) = if a.mu() <= b.mu() { (a, b) } else { (b, a) };
        let full = a.ord + b.ord;
        let t = full.min(self.inner.n);
        let mut e = Echelon::new(self.inner.field.clone(), self.m(t));
        for g in gen_side.mingens() {
            for v in other.lift_rows(t) {
                e.insert(&self.mul_rows(g, &v, t));
            }
        }
        self.certify(e, t, t == full)
    }

    fn intersect_of(&self, a: &ArtIdeal<F>, b: &ArtIdeal<F>) -> Result<ArtIdeal<F>, CalcError> {
        self.check(a)?;
        self.check(b)?;
        let t = a.ord.max(b.ord);
        let f = self.inner.field.clone();
        let mut tracker = KernelTracker::new(f.clone(), self.m(b.ord), self.m(t));
        let mut direct = Echelon::new(f, self.m(t));
        for v in a.lift_rows(t) {
            let image = b.normal_form(&v);
            if image.is_empty() {
                direct.insert(&v);
            } else {
                tracker.push(&image, &v);
            }
        }
        for v in tracker.kernel() {
            direct.insert(&v);
        }
        self.certify(direct, t, true)
    }

    fn colon_of(&self, a: &ArtIdeal<F>, b: &ArtIdeal<F>) -> Result<ArtIdeal<F>, CalcError> {
        self.check(a)?;
        self.check(b)?;
        if b.ord == 0 {
            return Ok(a.clone());
        }
        let t = a.ord;
        let width = self.m(t);
        let gens = b.mingens();
        let f = self.inner.field.clone();
        let mut tracker = KernelTracker::new(f.clone(), width * gens.len(), width);
        let mut direct = Echelon::new(f.clone(), width);
        for c in 0..width {
            let u = [(c as u32, f.one())];
            let mut image: Row<F::Elem> = Vec::new();
            for (j, g) in gens.iter().enumerate() {
                let off = (j * width) as u32;
                let nf = a.normal_form(&self.mul_rows(&u, g, t));
                image.extend(nf.into_iter().map(|(col, v)| (col + off, v)));
            }
            if image.is_empty() {
                direct.insert(&u);
            } else {
                tracker.push(&image, &u);
            }
        }
        for v in tracker.kernel() {
            direct.insert(&v);
        }
        self.certify(direct, t, true)
    }

    fn subset_of(&self, a: &ArtIdeal<F>, b: &ArtIdeal<F>) -> Result<bool, CalcError> {
        Ok(self.witness_of(a, b)?.is_none())
    }

    fn witness_of(
        &self,
        a: &ArtIdeal<F>,
        b: &ArtIdeal<F>,
    ) -> Result<Option<Row<F::Elem>>, CalcError> {
        self.check(a)?;
        self.check(b)?;
        let t = a.ord.max(b.ord);
        Ok(a.lift_rows(t).find(|v| !b.normal_form(v).is_empty()))
    }
}

/// An m-primary ideal `K` stored as the canonical reduced echelon basis of
/// `K/m^s` inside `R/m^s`, where `s` is the least order with `m^s ⊆ K`.
pub struct ArtIdeal<F: Field> {
    ring: TruncatedLocalRing<F>,
    ord: usize,
    basis: Arc<Echelon<F>>,
    mingens: Arc<OnceLock<Vec<Row<F::Elem>>>>,
}

impl<F: Field> Clone for ArtIdeal<F> {
    fn clone(&self) -> Self {
        ArtIdeal {
            ring: self.ring.clone(),
            ord: self.ord,
            basis: Arc::clone(&self.basis),
            mingens: Arc::clone(&self.mingens),
        }
    }
}

impl<F: Field> fmt::Debug for ArtIdeal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .mingens()
            .iter()
            .map(|g| {
                let p = self.ring.row_to_poly(g);
                p.render(self.ring.field(), self.ring.names())
            })
            .collect();
        write!(f, "({}) [ord {}]", gens.join(", "), self.ord)
    }
}

impl<F: Field> ArtIdeal<F> {
    fn from_parts(ring: TruncatedLocalRing<F>, ord: usize, rows: Vec<Row<F::Elem>>) -> Self {
        let basis = Echelon::from_reduced(ring.field().clone(), ring.m(ord), &rows);
        ArtIdeal {
            ring,
            ord,
            basis: Arc::new(basis),
            mingens: Arc::new(OnceLock::new()),
        }
    }

    pub fn ring(&self) -> &TruncatedLocalRing<F> {
        &self.ring
    }

    /// The least `s` with `m^s ⊆ K`.
    pub fn ord(&self) -> usize {
        self.ord
    }

    pub fn colength(&self) -> usize {
        self.ring.m(self.ord) - self.basis.rank()
    }

    pub fn mu(&self) -> usize {
        self.mingens().len()
    }

    /// Basis of `K/m^t` for `t ≥ ord`.
    fn lift_rows(&self, t: usize) -> impl Iterator<Item = Row<F::Elem>> + '_ {
        let one = self.ring.field().one();
        let lo = self.ring.m(self.ord);
        let hi = self.ring.m(t.max(self.ord));
        self.basis
            .rows()
            .iter()
            .cloned()
            .chain((lo..hi).map(move |c| vec![(c as u32, one.clone())]))
    }

    /// Normal form modulo `K` of a vector of any truncation `≥ ord`.
    fn normal_form(&self, v: &[(u32, F::Elem)]) -> Row<F::Elem> {
        self.basis.reduce(v)
    }

    fn mingens(&self) -> &[Row<F::Elem>] {
        self.mingens.get_or_init(|| {
            let ring = &self.ring;
            let f = ring.field();
            let s = self.ord;
            let t = s + 1;
            let mut mk = Echelon::new(f.clone(), ring.m(t));
            for r in self.basis.rows() {
                for var in 0..ring.inner.d {
                    let x = [(ring.table().var_index(var) as u32, f.one())];
                    mk.insert(&ring.mul_rows(r, &x, t));
                }
            }
            let mut chosen = Vec::new();
            for cand in self.lift_rows(t) {
                let r = mk.reduce(&cand);
                if !r.is_empty() {
                    mk.insert_reduced(r);
                    chosen.push(cand);
                }
            }
            chosen
        })
    }

    pub fn minimal_generators(&self) -> Vec<Poly<F::Elem>> {
        self.mingens()
            .iter()
            .map(|r| self.ring.row_to_poly(r))
            .collect()
    }

    pub fn contains(&self, p: &Poly<F::Elem>) -> bool {
        self.normal_form(&self.ring.poly_to_row(p, self.ord))
            .is_empty()
    }

    /// Every basis row lies in the span after multiplication by a variable.
    pub fn is_closed(&self) -> bool {
        let ring = &self.ring;
        let f = ring.field();
        self.basis.rows().iter().all(|r| {
            (0..ring.inner.d).all(|var| {
                let x = [(ring.table().var_index(var) as u32, f.one())];
                self.normal_form(&ring.mul_rows(r, &x, self.ord)).is_empty()
            })
        })
    }
}

impl<F: Field> PartialEq for ArtIdeal<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_ring(&other.ring)
            && self.ord == other.ord
            && self.basis.rows() == other.basis.rows()
    }
}

impl<F: Field> IdealCalculus for TruncatedLocalRing<F> {
    type Ideal = ArtIdeal<F>;
    type Element = Poly<F::Elem>;

    fn dimension(&self) -> usize {
        self.inner.d
    }

    fn unit_ideal(&self) -> ArtIdeal<F> {
        self.unit()
    }

    fn maximal_ideal(&self) -> ArtIdeal<F> {
        self.maximal()
    }

    fn sum(&self, a: &ArtIdeal<F>, b: &ArtIdeal<F>) -> Result<ArtIdeal<F>, CalcError> {
        self.sum_of(a, b)
    }

    fn product(&self, a: &ArtIdeal<F>, b: &ArtIdeal<F>) -> Result<ArtIdeal<F>, CalcError> {
        self.product_of(a, b)
    }

    fn colon(&self, a: &ArtIdeal<F>, b: &ArtIdeal<F>) -> Result<ArtIdeal<F>, CalcError> {
        self.colon_of(a, b)
    }

    fn intersect(&self, a: &ArtIdeal<F>, b: &ArtIdeal<F>) -> Result<ArtIdeal<F>, CalcError> {
        self.intersect_of(a, b)
    }

    fn subset(&self, a: &ArtIdeal<F>, b: &ArtIdeal<F>) -> Result<bool, CalcError> {
        self.subset_of(a, b)
    }

    fn equals(&self, a: &ArtIdeal<F>, b: &ArtIdeal<F>) -> Result<bool, CalcError> {
        self.check(a)?;
        self.check(b)?;
        Ok(a == b)
    }

    fn length_quotient(&self, a: &ArtIdeal<F>, b: &ArtIdeal<F>) -> Result<usize, CalcError> {
        if !self.subset_of(b, a)? {
            return Err(CalcError::NotContained);
        }
        Ok(b.colength() - a.colength())
    }

    fn colength(&self, a: &ArtIdeal<F>) -> Result<usize, CalcError> {
        self.check(a)?;
        Ok(a.colength())
    }

    fn mu(&self, a: &ArtIdeal<F>) -> Result<usize, CalcError> {
        self.check(a)?;
        Ok(a.mu())
    }

    fn minimal_generators(&self, a: &ArtIdeal<F>) -> Result<Vec<Poly<F::Elem>>, CalcError> {
        self.check(a)?;
        Ok(a.minimal_generators())
    }

    fn contains(&self, a: &ArtIdeal<F>, e: &Poly<F::Elem>) -> Result<bool, CalcError> {
        self.check(a)?;
        Ok(a.contains(e))
    }

    fn witness(
        &self,
        a: &ArtIdeal<F>,
        b: &ArtIdeal<F>,
    ) -> Result<Option<Poly<F::Elem>>, CalcError> {
        Ok(self.witness_of(a, b)?.map(|r| self.row_to_poly(&r)))
    }

    fn scaled_sum(
        &self,
        terms: &[(Poly<F::Elem>, &ArtIdeal<F>)],
    ) -> Result<ArtIdeal<F>, CalcError> {
        self.scaled_sum_of(terms)
    }

    fn render(&self, e: &Poly<F::Elem>) -> String {
        e.render(self.field(), self.names())
    }
}

/// Runs `job` on `ring`, doubling the truncation whenever precision runs out.
/// Returns the value together with the ring it was computed in.
pub fn run_with_precision<F: Field, T>(
    ring: &TruncatedLocalRing<F>,
    budget: u32,
    mut job: impl FnMut(&TruncatedLocalRing<F>) -> Result<T, CalcError>,
) -> Result<(T, TruncatedLocalRing<F>), CalcError> {
    let mut current = ring.clone();
    let mut doublings = 0;
    loop {
        match job(&current) {
            Ok(v) => return Ok((v, current)),
            Err(e) if e.is_precision_exhausted() => {
                if doublings == budget {
                    return Err(CalcError::BudgetExceeded {
                        doublings,
                        truncation: current.truncation(),
                    });
                }
                doublings += 1;
                current = current.with_truncation(2 * current.truncation())?;
            }
            Err(e) => return Err(e),
        }
    }
}

/// A ring in which every generator list builds a certified ideal: `ring`
/// itself when it already suffices, otherwise a doubled truncation.
pub fn ensure_precision<F: Field>(
    ring: &TruncatedLocalRing<F>,
    gen_lists: &[Vec<Poly<F::Elem>>],
    budget: u32,
) -> Result<TruncatedLocalRing<F>, CalcError> {
    run_with_precision(ring, budget, |r| {
        for g in gen_lists {
            r.ideal(g)?;
        }
        Ok(())
    })
    .map(|(_, r)| r)
}

#[cfg(test)]
mod tests {
    use super::super::field::{PrimeField, Rationals};
    use super::*;

    type Q = TruncatedLocalRing<Rationals>;

    fn mono(r: &Q, e: &[u32]) -> Poly<num_rational::BigRational> {
        Poly::monomial(r.field(), e.to_vec(), r.field().one())
    }

    fn polys(r: &Q, list: &[&[(i64, &[u32])]]) -> Vec<Poly<num_rational::BigRational>> {
        let f = r.field();
        list.iter()
            .map(|terms| {
                terms.iter().fold(Poly::zero(r.dimension()), |acc, (c, e)| {
                    acc.add(f, &Poly::monomial(f, e.to_vec(), f.from_i64(*c)))
                })
            })
            .collect()
    }

    fn staircase_oracle(gens: &[&[u32]], bound: u32) -> usize {
        // monomials in two variables not divisible by any generator
        let mut count = 0;
        for a in 0..bound {
            for b in 0..bound {
                if !gens.iter().any(|g| g[0] <= a && g[1] <= b) {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn maximal_ideal_basics() {
        let r = Q::new(2, 8, Rationals).unwrap();
        assert_eq!(r.ambient_dimension(), 36);
        let m = r.ideal(&[r.var(0), r.var(1)]).unwrap();
        assert_eq!(m.ord(), 1);
        assert_eq!(m.colength(), 1);
        assert_eq!(m.mu(), 2);
        assert_eq!(m, r.maximal());
        assert_eq!(r.unit().mu(), 1);
        assert_eq!(Q::new(1, 5, Rationals).unwrap().ambient_dimension(), 5);
        assert!(Q::new(2, 1, Rationals).is_err());
    }

    #[test]
    fn staircase_colength() {
        let r = Q::new(2, 10, Rationals).unwrap();
        let gens: [&[u32]; 3] = [&[3, 0], &[2, 1], &[0, 3]];
        let i = r
            .ideal(&gens.iter().map(|e| mono(&r, e)).collect::<Vec<_>>())
            .unwrap();
        assert_eq!(i.colength(), staircase_oracle(&gens, 10));
        assert_eq!(i.colength(), 7);
        assert_eq!(i.mu(), 3);
        assert!(i.is_closed());
    }

    #[test]
    fn unit_generator_rejected() {
        let r = Q::new(2, 6, Rationals).unwrap();
        let one = Poly::constant(r.field(), 2, r.field().one());
        assert_eq!(
            r.ideal(&[one.add(r.field(), &r.var(0))]).unwrap_err(),
            CalcError::UnitGenerator
        );
    }

    #[test]
    fn non_primary_exhausts_budget() {
        let r = Q::new(2, 4, Rationals).unwrap();
        let x = r.var(0);
        let err = ensure_precision(&r, &[vec![x]], DEFAULT_BUDGET).unwrap_err();
        assert_eq!(
            err,
            CalcError::BudgetExceeded {
                doublings: 4,
                truncation: 64
            }
        );
    }

    #[test]
    fn precision_escalates() {
        let r = Q::new(2, 4, Rationals).unwrap();
        let gens = vec![mono(&r, &[3, 0]), mono(&r, &[0, 3])];
        let bigger = ensure_precision(&r, std::slice::from_ref(&gens), DEFAULT_BUDGET).unwrap();
        assert_eq!(bigger.truncation(), 8);
        assert_eq!(bigger.ideal(&gens).unwrap().colength(), 9);
        let same = ensure_precision(&bigger, &[gens], DEFAULT_BUDGET).unwrap();
        assert!(same.same_ring(&bigger));
    }

    fn plane_pair(r: &Q) -> (ArtIdeal<Rationals>, ArtIdeal<Rationals>) {
        let i = r
            .ideal(&[mono(r, &[3, 0]), mono(r, &[2, 1]), mono(r, &[0, 3])])
            .unwrap();
        let j = r.ideal(&[mono(r, &[3, 0]), mono(r, &[0, 3])]).unwrap();
        (i, j)
    }

    #[test]
    fn plane_pair_facts() {
        let r = Q::new(2, 16, Rationals).unwrap();
        let (i, j) = plane_pair(&r);
        let m = r.maximal();
        let i2 = r.power(&i, 2).unwrap();
        let ji = r.product(&j, &i).unwrap();
        assert_eq!(r.length_quotient(&i2, &ji).unwrap(), 1);
        let mi = r.product(&m, &i).unwrap();
        let mj = r.product(&m, &j).unwrap();
        assert_eq!(r.length_quotient(&mi, &mj).unwrap(), 1);
        let i2j = r.intersect(&i2, &j).unwrap();
        let w = mono(&r, &[4, 2]);
        assert!(i2j.contains(&w));
        assert!(!ji.contains(&w));
        assert_eq!(r.colength(&j).unwrap(), 9);
        let i3 = r.power(&i, 3).unwrap();
        assert_eq!(i3, r.product(&j, &i2).unwrap());
    }

    #[test]
    fn space_pair_facts() {
        let r = Q::new(3, 20, Rationals).unwrap();
        let i = r
            .ideal(&polys(
                &r,
                &[
                    &[(1, &[3, 0, 0])],
                    &[(1, &[0, 3, 0])],
                    &[(1, &[0, 0, 3])],
                    &[(1, &[1, 1, 0])],
                    &[(1, &[0, 1, 1])],
                    &[(1, &[1, 0, 1])],
                ],
            ))
            .unwrap();
        let j = r
            .ideal(&polys(
                &r,
                &[
                    &[(1, &[3, 0, 0]), (1, &[0, 1, 1])],
                    &[(1, &[0, 3, 0]), (1, &[0, 0, 3]), (1, &[1, 0, 1])],
                    &[(1, &[1, 0, 1]), (1, &[1, 1, 0])],
                ],
            ))
            .unwrap();
        assert_eq!(i.colength(), 7);
        assert_eq!(i.mu(), 6);
        assert_eq!(j.mu(), 3);
        assert_eq!(j.colength(), 11);
        assert!(r.subset(&j, &i).unwrap());
        assert_eq!(r.power(&i, 2).unwrap(), r.product(&j, &i).unwrap());
        let jci = r.colon(&j, &i).unwrap();
        assert_eq!(r.length_quotient(&jci, &j).unwrap(), 7);
    }

    #[test]
    fn colon_and_intersection_identities() {
        let r = Q::new(2, 14, Rationals).unwrap();
        let (i, j) = plane_pair(&r);
        let sum = r.sum(&i, &j).unwrap();
        let cap = r.intersect(&i, &j).unwrap();
        assert_eq!(sum, i);
        assert_eq!(cap, j);
        let ij = r.product(&i, &j).unwrap();
        assert!(r.subset(&i, &r.colon(&ij, &j).unwrap()).unwrap());
        assert_eq!(r.colon(&i, &i).unwrap(), r.unit());
        let m = r.maximal();
        // socle of R/I: (I : m)/I
        let soc = r.colon(&i, &m).unwrap();
        assert_eq!(r.length_quotient(&soc, &i).unwrap(), 2);
    }

    #[test]
    fn prime_field_agrees() {
        let rq = Q::new(2, 20, Rationals).unwrap();
        let rp = TruncatedLocalRing::new(2, 20, PrimeField::default_31bit()).unwrap();
        let (iq, jq) = plane_pair(&rq);
        let fp = *rp.field();
        let mp = |e: &[u32]| Poly::monomial(&fp, e.to_vec(), 1u64);
        let ip = rp.ideal(&[mp(&[3, 0]), mp(&[2, 1]), mp(&[0, 3])]).unwrap();
        let jp = rp.ideal(&[mp(&[3, 0]), mp(&[0, 3])]).unwrap();
        for n in 1..4 {
            let a = rq.product(&rq.power(&iq, n).unwrap(), &jq).unwrap();
            let b = rp.product(&rp.power(&ip, n).unwrap(), &jp).unwrap();
            assert_eq!(a.colength(), b.colength());
            assert_eq!(a.mu(), b.mu());
        }
    }

    #[test]
    fn truncation_stability() {
        let mut seen = Vec::new();
        for n in [12, 14, 15] {
            let r = Q::new(2, n, Rationals).unwrap();
            let (i, j) = plane_pair(&r);
            let i2 = r.power(&i, 2).unwrap();
            let gens: [&[u32]; 6] = [&[6, 0], &[5, 1], &[4, 2], &[3, 3], &[2, 4], &[0, 6]];
            assert_eq!(i2.colength(), staircase_oracle(&gens, 12));
            assert_eq!(i2.mu(), 6);
            let cap = r.intersect(&i2, &j).unwrap();
            seen.push((i2.colength(), cap.colength(), cap.mu()));
        }
        assert!(seen.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn scaled_sum_of_non_primary_terms() {
        let r = Q::new(2, 10, Rationals).unwrap();
        let m = r.maximal();
        let m2 = r.power(&m, 2).unwrap();
        // x·m + y^2·m = (x^2, xy, y^3)
        let k = r
            .scaled_sum(&[(r.var(0), &m), (mono(&r, &[0, 2]), &m)])
            .unwrap();
        let expect = r
            .ideal(&[mono(&r, &[2, 0]), mono(&r, &[1, 1]), mono(&r, &[0, 3])])
            .unwrap();
        assert_eq!(k, expect);
        let k2 = r.scaled_sum(&[(r.var(0), &m), (r.var(1), &m)]).unwrap();
        assert_eq!(k2, m2);
    }

    #[test]
    fn mixed_rings_rejected() {
        let a = Q::new(2, 8, Rationals).unwrap();
        let b = Q::new(2, 8, Rationals).unwrap();
        assert_eq!(
            a.sum(&a.maximal(), &b.maximal()).unwrap_err(),
            CalcError::MixedRings
        );
    }
}
