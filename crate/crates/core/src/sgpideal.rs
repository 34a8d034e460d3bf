//! Monomial ideals of a numerical semigroup ring `k[[S]]`, realized as
//! exponent sets `E ⊆ S` with `E + S ⊆ E`.
//!
//! A nonzero ideal is stored as a bit table over `[0, stable_from)` plus the
//! rule that every integer `≥ stable_from` belongs to `E`. Since the ring is a
//! one-dimensional domain, every nonzero ideal is m-primary and has such a
//! tail, which makes all lengths below finite counts.

use std::fmt;
use std::sync::Arc;

use crate::calculus::{CalcError, IdealCalculus};
use crate::numsgp::NumericalSemigroup;

#[derive(Clone)]
pub struct SemigroupIdeal {
    parent: Arc<NumericalSemigroup>,
    // None for the zero ideal
    table: Option<ExpTable>,
}

#[derive(Clone, Debug)]
struct ExpTable {
    stable_from: u32,
    bits: Vec<bool>,
}

impl ExpTable {
    fn contains(&self, n: i64) -> bool {
        if n < 0 {
            return false;
        }
        let n = n as u64;
        n >= self.stable_from as u64 || self.bits[n as usize]
    }

    /// Builds the table from a predicate valid on `[0, bound)`, with everything
    /// at or above `bound` a member; the tail bound is then shrunk to the least
    /// valid one.
    fn from_predicate(bound: u32, pred: impl Fn(u32) -> bool) -> Self {
        let mut bits: Vec<bool> = (0..bound).map(pred).collect();
        while bits.last() == Some(&true) {
            bits.pop();
        }
        ExpTable {
            stable_from: bits.len() as u32,
            bits,
        }
    }
}

impl SemigroupIdeal {
    /// The ideal generated by `t^e` for `e` in `exps`.
    pub fn from_monomials(
        parent: &Arc<NumericalSemigroup>,
        exps: &[u32],
    ) -> Result<Self, CalcError> {
        if let Some(&bad) = exps.iter().find(|&&e| !parent.contains(e as i64)) {
            return Err(CalcError::ExponentNotInSemigroup(bad));
        }
        if exps.is_empty() {
            return Ok(Self::zero(parent));
        }
        let bound = exps.iter().max().unwrap() + parent.conductor();
        let table = ExpTable::from_predicate(bound, |n| {
            exps.iter()
                .any(|&e| n >= e && parent.contains((n - e) as i64))
        });
        Ok(SemigroupIdeal {
            parent: parent.clone(),
            table: Some(table),
        })
    }

    pub fn zero(parent: &Arc<NumericalSemigroup>) -> Self {
        SemigroupIdeal {
            parent: parent.clone(),
            table: None,
        }
    }

    pub fn unit(parent: &Arc<NumericalSemigroup>) -> Self {
        let c = parent.conductor();
        SemigroupIdeal {
            parent: parent.clone(),
            table: Some(ExpTable::from_predicate(c, |n| parent.contains(n as i64))),
        }
    }

    pub fn maximal(parent: &Arc<NumericalSemigroup>) -> Self {
        let bound = parent.conductor().max(1);
        SemigroupIdeal {
            parent: parent.clone(),
            table: Some(ExpTable::from_predicate(bound, |n| {
                n > 0 && parent.contains(n as i64)
            })),
        }
    }

    pub fn parent(&self) -> &Arc<NumericalSemigroup> {
        &self.parent
    }

    pub fn is_zero(&self) -> bool {
        self.table.is_none()
    }

    /// Least `B` with every integer `≥ B` in the exponent set; `None` for zero.
    pub fn stable_from(&self) -> Option<u32> {
        self.table.as_ref().map(|t| t.stable_from)
    }

    pub fn contains_exponent(&self, n: i64) -> bool {
        self.table.as_ref().is_some_and(|t| t.contains(n))
    }

    /// Exponents of the ideal below `bound`.
    pub fn exponents_below(&self, bound: u32) -> Vec<u32> {
        (0..bound)
            .filter(|&n| self.contains_exponent(n as i64))
            .collect()
    }

    /// The same ideal with its tail bound moved `extra` places to the right.
    /// Only the representation changes.
    pub fn padded(&self, extra: u32) -> Self {
        let table = self.table.as_ref().map(|t| {
            let stable_from = t.stable_from + extra;
            ExpTable {
                stable_from,
                bits: (0..stable_from).map(|n| t.contains(n as i64)).collect(),
            }
        });
        SemigroupIdeal {
            parent: self.parent.clone(),
            table,
        }
    }

    fn check_parent(&self, other: &Self) -> Result<(), CalcError> {
        if Arc::ptr_eq(&self.parent, &other.parent) || self.parent == other.parent {
            Ok(())
        } else {
            Err(CalcError::MixedParents)
        }
    }

    /// `E \ (M + E)` with `M = S \ {0}`.
    pub fn minimal_generators(&self) -> Vec<u32> {
        let Some(t) = &self.table else {
            return Vec::new();
        };
        let gens = self.parent.generators();
        let bound = t.stable_from + gens[0];
        (0..bound)
            .filter(|&n| {
                t.contains(n as i64) && !gens.iter().any(|&g| t.contains(n as i64 - g as i64))
            })
            .collect()
    }

    pub fn sum(&self, other: &Self) -> Result<Self, CalcError> {
        self.check_parent(other)?;
        let table = match (&self.table, &other.table) {
            (None, _) => other.table.clone(),
            (_, None) => self.table.clone(),
            (Some(a), Some(b)) => Some(ExpTable::from_predicate(
                a.stable_from.min(b.stable_from),
                |n| a.contains(n as i64) || b.contains(n as i64),
            )),
        };
        Ok(self.with_table(table))
    }

    pub fn product(&self, other: &Self) -> Result<Self, CalcError> {
        self.check_parent(other)?;
        let (Some(_), Some(b)) = (&self.table, &other.table) else {
            return Ok(Self::zero(&self.parent));
        };
        let gens = self.minimal_generators();
        // t^{min E_A} · (all n ≥ B_B) lies in the product
        let bound = gens[0] + b.stable_from;
        let table = ExpTable::from_predicate(bound, |n| {
            gens.iter().any(|&a| n >= a && b.contains((n - a) as i64))
        });
        Ok(self.with_table(Some(table)))
    }

    pub fn power(&self, n: usize) -> Result<Self, CalcError> {
        let mut acc = Self::unit(&self.parent);
        for _ in 0..n {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// `(self : other) = { n ∈ S : n + b ∈ E_self for every generator b }`.
    pub fn colon(&self, other: &Self) -> Result<Self, CalcError> {
        self.check_parent(other)?;
        if other.is_zero() {
            return Err(CalcError::ZeroIdeal);
        }
        let Some(a) = &self.table else {
            return Ok(Self::zero(&self.parent));
        };
        let gens = other.minimal_generators();
        let table = ExpTable::from_predicate(a.stable_from, |n| {
            self.parent.contains(n as i64) && gens.iter().all(|&b| a.contains((n + b) as i64))
        });
        Ok(self.with_table(Some(table)))
    }

    pub fn intersect(&self, other: &Self) -> Result<Self, CalcError> {
        self.check_parent(other)?;
        let (Some(a), Some(b)) = (&self.table, &other.table) else {
            return Ok(Self::zero(&self.parent));
        };
        let table = ExpTable::from_predicate(a.stable_from.max(b.stable_from), |n| {
            a.contains(n as i64) && b.contains(n as i64)
        });
        Ok(self.with_table(Some(table)))
    }

    /// `self ⊆ other`.
    pub fn subset(&self, other: &Self) -> Result<bool, CalcError> {
        self.check_parent(other)?;
        Ok(match (&self.table, &other.table) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some(a), Some(b)) => {
                let bound = a.stable_from.max(b.stable_from);
                (0..bound).all(|n| !a.contains(n as i64) || b.contains(n as i64))
            }
        })
    }

    /// `ℓ(self/other)`, requires `other ⊆ self`.
    pub fn length_quotient(&self, other: &Self) -> Result<usize, CalcError> {
        if !other.subset(self)? {
            return Err(CalcError::NotContained);
        }
        match (&self.table, &other.table) {
            (None, None) => Ok(0),
            (Some(_), None) => Err(CalcError::ZeroIdeal),
            (None, Some(_)) => unreachable!("nonzero ideal inside zero ideal"),
            (Some(a), Some(b)) => {
                let bound = a.stable_from.max(b.stable_from);
                Ok((0..bound)
                    .filter(|&n| a.contains(n as i64) && !b.contains(n as i64))
                    .count())
            }
        }
    }

    /// `ℓ(R/self) = |S \ E|`.
    pub fn colength(&self) -> Result<usize, CalcError> {
        let t = self.table.as_ref().ok_or(CalcError::ZeroIdeal)?;
        Ok((0..t.stable_from)
            .filter(|&n| self.parent.contains(n as i64) && !t.contains(n as i64))
            .count())
    }

    pub fn mu(&self) -> usize {
        self.minimal_generators().len()
    }

    /// Least exponent of `self` outside `other`.
    pub fn witness(&self, other: &Self) -> Result<Option<u32>, CalcError> {
        self.check_parent(other)?;
        let Some(a) = &self.table else {
            return Ok(None);
        };
        let bound = match &other.table {
            Some(b) => a.stable_from.max(b.stable_from),
            None => a.stable_from + 1,
        };
        Ok((0..bound).find(|&n| a.contains(n as i64) && !other.contains_exponent(n as i64)))
    }

    fn with_table(&self, table: Option<ExpTable>) -> Self {
        SemigroupIdeal {
            parent: self.parent.clone(),
            table,
        }
    }
}

impl PartialEq for SemigroupIdeal {
    fn eq(&self, other: &Self) -> bool {
        if self.parent != other.parent {
            return false;
        }
        match (&self.table, &other.table) {
            (None, None) => true,
            (Some(a), Some(b)) => {
                let bound = a.stable_from.max(b.stable_from);
                (0..bound).all(|n| a.contains(n as i64) == b.contains(n as i64))
            }
            _ => false,
        }
    }
}

impl Eq for SemigroupIdeal {}

impl fmt::Debug for SemigroupIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SemigroupIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "(0)");
        }
        let gens: Vec<String> = self
            .minimal_generators()
            .iter()
            .map(|e| format!("t^{e}"))
            .collect();
        write!(f, "({})", gens.join(", "))
    }
}

/// The semigroup ring `k[[S]]` as an [`IdealCalculus`] backend (`d = 1`).
#[derive(Clone, Debug)]
pub struct SemigroupRing {
    sgp: Arc<NumericalSemigroup>,
}

impl SemigroupRing {
    pub fn new(sgp: NumericalSemigroup) -> Self {
        SemigroupRing { sgp: Arc::new(sgp) }
    }

    pub fn semigroup(&self) -> &Arc<NumericalSemigroup> {
        &self.sgp
    }

    pub fn ideal(&self, exps: &[u32]) -> Result<SemigroupIdeal, CalcError> {
        SemigroupIdeal::from_monomials(&self.sgp, exps)
    }
}

impl IdealCalculus for SemigroupRing {
    type Ideal = SemigroupIdeal;
    type Element = u32;

    fn dimension(&self) -> usize {
        1
    }

    fn unit_ideal(&self) -> SemigroupIdeal {
        SemigroupIdeal::unit(&self.sgp)
    }

    fn maximal_ideal(&self) -> SemigroupIdeal {
        SemigroupIdeal::maximal(&self.sgp)
    }

    fn sum(&self, a: &SemigroupIdeal, b: &SemigroupIdeal) -> Result<SemigroupIdeal, CalcError> {
        a.sum(b)
    }

    fn product(&self, a: &SemigroupIdeal, b: &SemigroupIdeal) -> Result<SemigroupIdeal, CalcError> {
        a.product(b)
    }

    fn power(&self, a: &SemigroupIdeal, n: usize) -> Result<SemigroupIdeal, CalcError> {
        a.power(n)
    }

    fn colon(&self, a: &SemigroupIdeal, b: &SemigroupIdeal) -> Result<SemigroupIdeal, CalcError> {
        a.colon(b)
    }

    fn intersect(
        &self,
        a: &SemigroupIdeal,
        b: &SemigroupIdeal,
    ) -> Result<SemigroupIdeal, CalcError> {
        a.intersect(b)
    }

    fn subset(&self, a: &SemigroupIdeal, b: &SemigroupIdeal) -> Result<bool, CalcError> {
        a.subset(b)
    }

    fn equals(&self, a: &SemigroupIdeal, b: &SemigroupIdeal) -> Result<bool, CalcError> {
        a.check_parent(b)?;
        Ok(a == b)
    }

    fn length_quotient(&self, a: &SemigroupIdeal, b: &SemigroupIdeal) -> Result<usize, CalcError> {
        a.length_quotient(b)
    }

    fn colength(&self, a: &SemigroupIdeal) -> Result<usize, CalcError> {
        a.colength()
    }

    fn mu(&self, a: &SemigroupIdeal) -> Result<usize, CalcError> {
        Ok(a.mu())
    }

    fn minimal_generators(&self, a: &SemigroupIdeal) -> Result<Vec<u32>, CalcError> {
        Ok(a.minimal_generators())
    }

    fn contains(&self, a: &SemigroupIdeal, e: &u32) -> Result<bool, CalcError> {
        if !self.sgp.contains(*e as i64) {
            return Err(CalcError::ExponentNotInSemigroup(*e));
        }
        Ok(a.contains_exponent(*e as i64))
    }

    fn witness(&self, a: &SemigroupIdeal, b: &SemigroupIdeal) -> Result<Option<u32>, CalcError> {
        a.witness(b)
    }

    fn scaled_sum(&self, terms: &[(u32, &SemigroupIdeal)]) -> Result<SemigroupIdeal, CalcError> {
        let mut acc = SemigroupIdeal::zero(&self.sgp);
        for (e, k) in terms {
            let principal = self.ideal(&[*e])?;
            acc = acc.sum(&principal.product(k)?)?;
        }
        Ok(acc)
    }

    fn render(&self, e: &u32) -> String {
        format!("t^{e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(gens: &[u32]) -> SemigroupRing {
        SemigroupRing::new(NumericalSemigroup::new(gens).unwrap())
    }

    #[test]
    fn principal_ideal_is_shift() {
        let r = ring(&[6, 11, 15, 31]);
        let i = r.ideal(&[6]).unwrap();
        for n in 0..120 {
            assert_eq!(
                i.contains_exponent(n),
                n >= 6 && r.semigroup().contains(n - 6),
                "n = {n}"
            );
        }
    }

    #[test]
    fn colength_in_sgp6() {
        let r = ring(&[6, 11, 15, 31]);
        let i = r.ideal(&[6, 11, 31]).unwrap();
        // enumeration oracle: members of S below a generous bound that miss E
        let outside: Vec<i64> = (0..200)
            .filter(|&n| r.semigroup().contains(n) && !i.contains_exponent(n))
            .collect();
        assert_eq!(outside, vec![0, 15]);
        assert_eq!(i.colength().unwrap(), 2);
    }

    #[test]
    fn minimal_generators_recovered() {
        let r = ring(&[4, 5, 6, 7]);
        let i = r.ideal(&[4, 5, 6]).unwrap();
        assert_eq!(i.minimal_generators(), vec![4, 5, 6]);
        let m = r.maximal_ideal();
        assert_eq!(m.minimal_generators(), vec![4, 5, 6, 7]);
        let redundant = r.ideal(&[4, 5, 6, 9, 13]).unwrap();
        assert_eq!(redundant, i);
    }

    #[test]
    fn maximal_ideals() {
        let n = ring(&[1]);
        let m = n.maximal_ideal();
        assert!(!m.contains_exponent(0));
        assert!((1..50).all(|k| m.contains_exponent(k)));
        assert_eq!(
            ring(&[5, 6, 7, 8]).maximal_ideal().minimal_generators(),
            vec![5, 6, 7, 8]
        );
        assert_eq!(ring(&[6, 11, 15, 31]).maximal_ideal().mu(), 4);
    }

    #[test]
    fn products_in_sgp6() {
        let r = ring(&[6, 11, 15, 31]);
        let i = r.ideal(&[6, 11, 31]).unwrap();
        let j = r.ideal(&[6]).unwrap();
        let m = r.maximal_ideal();
        let ji = j.product(&i).unwrap();
        // Minkowski oracle on {6} x {6, 11, 31}
        assert_eq!(ji.minimal_generators(), vec![12, 17, 37]);
        let mi2 = m.product(&i.power(2).unwrap()).unwrap();
        let mji = m.product(&ji).unwrap();
        assert!(mi2.contains_exponent(37));
        assert!(!mji.contains_exponent(37));
        assert!(!r.equals(&mi2, &mji).unwrap());
        let unit = i.power(0).unwrap();
        assert_eq!(unit.colength().unwrap(), 0);
    }

    #[test]
    fn colon_witness_in_sgp7() {
        let r = ring(&[7, 15, 17, 33]);
        let i = r.ideal(&[7, 17, 33]).unwrap();
        let j = r.ideal(&[7]).unwrap();
        let m = r.maximal_ideal();
        let i2 = i.power(2).unwrap();
        let ji = j.product(&i).unwrap();
        let num = m.product(&i2).unwrap().sum(&ji).unwrap();
        let lhs = num.colon(&i).unwrap().intersect(&i).unwrap();
        let rhs = m.product(&i).unwrap().sum(&j).unwrap();
        assert!(lhs.contains_exponent(33));
        assert!(!rhs.contains_exponent(33));
    }

    #[test]
    fn colon_principal_is_unit() {
        let r = ring(&[4, 5, 6, 7]);
        let a = r.ideal(&[9]).unwrap();
        assert_eq!(a.colon(&a).unwrap(), r.unit_ideal());
    }

    #[test]
    fn intersections() {
        let r = ring(&[6, 11, 15, 31]);
        let i = r.ideal(&[6, 11, 31]).unwrap();
        let j = r.ideal(&[6]).unwrap();
        assert_eq!(i.intersect(&r.unit_ideal()).unwrap(), i);
        let i2j = i.power(2).unwrap().intersect(&j).unwrap();
        assert_eq!(i2j, j.product(&i).unwrap());

        let r = ring(&[4, 5, 6, 7]);
        let i = r.ideal(&[4, 5, 6]).unwrap();
        let j = r.ideal(&[4]).unwrap();
        let lhs = i.power(2).unwrap().intersect(&j).unwrap();
        let ji = j.product(&i).unwrap();
        assert_ne!(lhs, ji);
        assert_eq!(lhs.witness(&ji).unwrap(), Some(11));
    }

    #[test]
    fn lengths() {
        let r = ring(&[6, 11, 15, 31]);
        let i = r.ideal(&[6, 11, 31]).unwrap();
        let j = r.ideal(&[6]).unwrap();
        assert_eq!(i.length_quotient(&i).unwrap(), 0);
        let i2 = i.power(2).unwrap();
        assert_eq!(i2.length_quotient(&j.product(&i).unwrap()).unwrap(), 1);
        assert_eq!(j.length_quotient(&i), Err(CalcError::NotContained));

        let r = ring(&[7, 15, 17, 33]);
        assert_eq!(r.ideal(&[7, 17, 33]).unwrap().mu(), 3);
    }

    #[test]
    fn zero_ideal_handling() {
        let r = ring(&[3, 5]);
        let z = SemigroupIdeal::zero(r.semigroup());
        let i = r.ideal(&[3]).unwrap();
        assert_eq!(z.colength(), Err(CalcError::ZeroIdeal));
        assert_eq!(i.colon(&z), Err(CalcError::ZeroIdeal));
        assert!(z.colon(&i).unwrap().is_zero());
        assert!(i.product(&z).unwrap().is_zero());
        assert_eq!(z.mu(), 0);
        assert!(z.subset(&i).unwrap());
        assert_eq!(i.length_quotient(&z), Err(CalcError::ZeroIdeal));
    }

    #[test]
    fn errors() {
        let r = ring(&[3, 5]);
        assert_eq!(r.ideal(&[4]), Err(CalcError::ExponentNotInSemigroup(4)));
        let other = ring(&[2, 3]);
        let a = r.ideal(&[3]).unwrap();
        let b = other.ideal(&[2]).unwrap();
        assert_eq!(a.sum(&b), Err(CalcError::MixedParents));
        assert_eq!(a.intersect(&b), Err(CalcError::MixedParents));
    }

    #[test]
    fn padding_is_invisible() {
        let r = ring(&[6, 11, 15, 31]);
        let i = r.ideal(&[6, 11, 31]).unwrap();
        let j = r.ideal(&[6]).unwrap();
        let ip = i.padded(10);
        let jp = j.padded(10);
        assert_eq!(ip, i);
        assert_eq!(ip.product(&jp).unwrap(), i.product(&j).unwrap());
        assert_eq!(ip.colon(&jp).unwrap(), i.colon(&j).unwrap());
        assert_eq!(ip.colength().unwrap(), i.colength().unwrap());
        assert_eq!(ip.mu(), i.mu());
    }
}
