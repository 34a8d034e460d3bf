use super::fiber::{MultreesReport, Numerator};
use super::pair::{
    Classification, CmReport, GorboundReport, GorensteinReport, Multiplicity, ReductionPair,
    VvReport, WReport,
};
use super::stabilize::Stabilized;
use super::InvError;
use crate::calculus::IdealCalculus;

/// Every invariant of a pair `(I, J)` together with the identities relating
/// them. Each identity is recorded by name; none is used to derive another
/// value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberReport {
    pub dimension: usize,
    pub mu: usize,
    pub mu_maximal: usize,
    pub colength: usize,
    pub reduction_number: usize,
    pub multiplicity: Multiplicity,
    pub multiplicity_maximal: Stabilized<i64>,
    pub f0: Stabilized<i64>,
    pub numerator: Numerator,
    /// `e_(i, d-i)` for `i = 0..=d`.
    pub mixed: Vec<Stabilized<i64>>,
    pub cm: CmReport,
    pub vv: VvReport,
    pub classification: Classification,
    pub gorenstein: GorensteinReport,
    pub w: WReport,
    pub gorbound: GorboundReport,
    pub multrees: MultreesReport,
    pub identities: Vec<(&'static str, bool)>,
}

impl FiberReport {
    pub fn compute<C: IdealCalculus>(pair: &ReductionPair<'_, '_, C>) -> Result<Self, InvError> {
        let fc = pair.fiber();
        let calc = fc.calc();
        let d = fc.dimension();
        let multiplicity = pair.multiplicity()?;
        let multiplicity_maximal = fc.multiplicity_maximal()?;
        let f0 = fc.f0()?;
        let numerator = fc.hilbert_numerator()?;
        let mixed = (0..=d)
            .map(|i| fc.mixed_multiplicity(i, d - i))
            .collect::<Result<Vec<_>, _>>()?;
        let cm = pair.cm_test()?;
        let gorenstein = pair.gorenstein_test()?;
        let classification = pair.classify()?;
        let r = pair.reduction_number();

        let mut identities = vec![
            ("numerator_at_one_is_f0", numerator.at_one() == f0.value),
            ("multiplicity_routes_agree", multiplicity.agree),
            ("mixed_end_is_e_i", mixed[0].value == multiplicity.value()),
            (
                "mixed_end_is_e_m",
                mixed[d].value == multiplicity_maximal.value,
            ),
            ("chuai_bound", classification.chuai),
            (
                "multiplicity_identity",
                classification.multiplicity_identity,
            ),
            ("gorenstein_criteria_consistent", gorenstein.consistent()),
        ];
        if cm.verdict {
            let lengths: Vec<i64> = cm.lengths.iter().map(|&x| x as i64).collect();
            let mut trimmed = lengths.clone();
            while trimmed.len() > 1 && trimmed.last() == Some(&0) {
                trimmed.pop();
            }
            identities.push(("cm_numerator_is_lengths", numerator.coeffs == trimmed));
            identities.push((
                "cm_reduction_number_is_degree",
                numerator.coeffs.len() == r + 1,
            ));
        }
        if let Some(ok) = classification.ammm_dichotomy {
            identities.push(("almost_minimal_mixed_f0", ok));
        }
        let multrees = fc.multrees_prediction()?;
        identities.push((
            "multrees_consistent",
            !multrees.bp_matches_on_grid || multrees.agree,
        ));
        let w = pair.w_criterion()?;
        identities.push(("w_criterion_consistent", w.consistent));
        let gorbound = pair.gorbound_check()?;
        identities.push(("gorbound_consistent", gorbound.consistent));

        Ok(FiberReport {
            dimension: d,
            mu: fc.mu()?,
            mu_maximal: calc.mu(fc.maximal())?,
            colength: calc.colength(fc.ideal())?,
            reduction_number: r,
            multiplicity,
            multiplicity_maximal,
            f0,
            numerator,
            mixed,
            vv: pair.valabrega_valla()?,
            cm,
            classification,
            gorenstein,
            w,
            gorbound,
            multrees,
            identities,
        })
    }

    pub fn identity(&self, name: &str) -> Option<bool> {
        self.identities
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, v)| *v)
    }

    pub fn all_identities_hold(&self) -> bool {
        self.identities.iter().all(|(_, v)| *v)
    }
}
