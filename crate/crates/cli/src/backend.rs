//! Turning parsed generators into ideals of either backend.

use fibercone_core::artinian::{Field, Poly, TruncatedLocalRing};
use fibercone_core::{CalcError, IdealCalculus, SemigroupRing};

use crate::session::IntPoly;
use crate::CliError;

/// An [`IdealCalculus`] whose elements can be built from session text.
pub trait Frontend: IdealCalculus {
    fn element(&self, p: &IntPoly) -> Result<Self::Element, CliError>;

    fn ideal_of(&self, gens: &[Self::Element]) -> Result<Self::Ideal, CalcError>;

    fn ideal_from(&self, gens: &[IntPoly]) -> Result<Self::Ideal, CliError> {
        let elems = gens
            .iter()
            .map(|g| self.element(g))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.ideal_of(&elems)?)
    }

    /// `ring.*` lines describing the backend.
    fn describe(&self) -> Vec<(String, String)>;
}

impl Frontend for SemigroupRing {
    fn element(&self, p: &IntPoly) -> Result<u32, CliError> {
        match p.terms.iter().collect::<Vec<_>>().as_slice() {
            [(e, _)] => Ok(e[0]),
            _ => Err(CliError::Usage(
                "semigroup generators must be single monomials t^k".into(),
            )),
        }
    }

    fn ideal_of(&self, gens: &[u32]) -> Result<Self::Ideal, CalcError> {
        self.ideal(gens)
    }

    fn describe(&self) -> Vec<(String, String)> {
        let g: Vec<String> = self
            .semigroup()
            .generators()
            .iter()
            .map(|x| x.to_string())
            .collect();
        vec![
            ("ring.kind".into(), "semigroup".into()),
            ("ring.generators".into(), g.join(" ")),
            ("ring.dimension".into(), "1".into()),
        ]
    }
}

impl<F: Field> Frontend for TruncatedLocalRing<F> {
    fn element(&self, p: &IntPoly) -> Result<Poly<F::Elem>, CliError> {
        let f = self.field();
        Ok(p.terms.iter().fold(Poly::zero(p.nvars), |acc, (e, c)| {
            acc.add(f, &Poly::monomial(f, e.clone(), f.from_i64(*c)))
        }))
    }

    fn ideal_of(&self, gens: &[Poly<F::Elem>]) -> Result<Self::Ideal, CalcError> {
        self.ideal(gens)
    }

    fn describe(&self) -> Vec<(String, String)> {
        vec![
            ("ring.kind".into(), "local".into()),
            ("ring.variables".into(), self.names().join(" ")),
            ("ring.dimension".into(), self.dimension().to_string()),
            (
                "ring.characteristic".into(),
                self.field().characteristic().to_string(),
            ),
            ("ring.truncation".into(), self.truncation().to_string()),
        ]
    }
}

/// Delegates everything to `inner`, optionally reporting every quotient
/// length one too large. Used to check that the example suite notices.
pub struct Faulty<'a, C> {
    pub inner: &'a C,
    pub off_by_one: bool,
}

impl<C: IdealCalculus> IdealCalculus for Faulty<'_, C> {
    type Ideal = C::Ideal;
    type Element = C::Element;

    fn dimension(&self) -> usize {
        self.inner.dimension()
    }
    fn unit_ideal(&self) -> C::Ideal {
        self.inner.unit_ideal()
    }
    fn maximal_ideal(&self) -> C::Ideal {
        self.inner.maximal_ideal()
    }
    fn sum(&self, a: &C::Ideal, b: &C::Ideal) -> Result<C::Ideal, CalcError> {
        self.inner.sum(a, b)
    }
    fn product(&self, a: &C::Ideal, b: &C::Ideal) -> Result<C::Ideal, CalcError> {
        self.inner.product(a, b)
    }
    fn colon(&self, a: &C::Ideal, b: &C::Ideal) -> Result<C::Ideal, CalcError> {
        self.inner.colon(a, b)
    }
    fn intersect(&self, a: &C::Ideal, b: &C::Ideal) -> Result<C::Ideal, CalcError> {
        self.inner.intersect(a, b)
    }
    fn subset(&self, a: &C::Ideal, b: &C::Ideal) -> Result<bool, CalcError> {
        self.inner.subset(a, b)
    }
    fn equals(&self, a: &C::Ideal, b: &C::Ideal) -> Result<bool, CalcError> {
        self.inner.equals(a, b)
    }
    fn length_quotient(&self, a: &C::Ideal, b: &C::Ideal) -> Result<usize, CalcError> {
        Ok(self.inner.length_quotient(a, b)? + usize::from(self.off_by_one))
    }
    fn colength(&self, a: &C::Ideal) -> Result<usize, CalcError> {
        self.inner.colength(a)
    }
    fn mu(&self, a: &C::Ideal) -> Result<usize, CalcError> {
        self.inner.mu(a)
    }
    fn minimal_generators(&self, a: &C::Ideal) -> Result<Vec<C::Element>, CalcError> {
        self.inner.minimal_generators(a)
    }
    fn contains(&self, a: &C::Ideal, e: &C::Element) -> Result<bool, CalcError> {
        self.inner.contains(a, e)
    }
    fn witness(&self, a: &C::Ideal, b: &C::Ideal) -> Result<Option<C::Element>, CalcError> {
        self.inner.witness(a, b)
    }
    fn scaled_sum(&self, terms: &[(C::Element, &C::Ideal)]) -> Result<C::Ideal, CalcError> {
        self.inner.scaled_sum(terms)
    }
    fn render(&self, e: &C::Element) -> String {
        self.inner.render(e)
    }
}
