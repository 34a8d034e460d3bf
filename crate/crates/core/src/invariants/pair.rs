use std::sync::RwLock;

use super::fiber::{FiberCone, Numerator};
use super::stabilize::Stabilized;
use super::InvError;
use crate::calculus::IdealCalculus;

/// `e(I)` by both routes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multiplicity {
    /// `ℓ(R/J)`.
    pub via_reduction: i64,
    /// Stabilized `Δ^d ℓ(R/I^n)`.
    pub via_samuel: Stabilized<i64>,
    pub agree: bool,
}

impl Multiplicity {
    pub fn value(&self) -> i64 {
        self.via_reduction
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CmReport {
    pub verdict: bool,
    pub f0: i64,
    /// `ℓ(F(I)/JF(I))`, the sum of `lengths`.
    pub colength_fiber: i64,
    pub lengths: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub sally: bool,
    pub goto_min: bool,
    pub goto_almost_min: bool,
    pub min_mixed: bool,
    pub almost_min_mixed: bool,
    /// `ℓ(I²/JI)`.
    pub len_i2_over_ji: usize,
    /// `ℓ(mI/mJ)`.
    pub len_mi_over_mj: usize,
    pub e: i64,
    pub e_top: i64,
    pub mu: usize,
    pub colength: usize,
    /// `e(I) ≥ μ(I) - d + ℓ(R/I)`.
    pub chuai: bool,
    /// `e(I) = ℓ(R/I) + μ(I) - d + ℓ(mI/mJ)`.
    pub multiplicity_identity: bool,
    /// On almost minimal mixed inputs: `f0 ∈ {e_top, e_top - 1}`.
    pub ammm_dichotomy: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VvReport {
    pub holds: bool,
    pub failing_n: Option<usize>,
    /// An element of `I^n ∩ J` outside `JI^(n-1)`.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GorensteinReason {
    NotCm,
    SocleLength(usize),
}

/// One specialized criterion evaluated next to the socle route.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionCheck {
    pub name: &'static str,
    pub applies: bool,
    /// What the criterion asserts, where it applies.
    pub criterion: Option<bool>,
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GorensteinReport {
    pub verdict: bool,
    pub reason: GorensteinReason,
    pub socle: Option<Vec<usize>>,
    pub checks: Vec<CriterionCheck>,
    /// Element of `((I²m + JI) : I) ∩ I` outside `mI + J`, when `r = 2`.
    pub r2_witness: Option<String>,
}

impl GorensteinReport {
    pub fn check(&self, name: &str) -> Option<&CriterionCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn consistent(&self) -> bool {
        self.checks.iter().all(|c| c.consistent)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WReport {
    /// `W = I ∩ (mJ : I)` equals `mI + J`.
    pub equal: bool,
    pub witness_w: Option<String>,
    pub witness_target: Option<String>,
    pub hyp_f_cm: bool,
    pub hyp_g_cm: bool,
    pub hyp_almost_min: bool,
    pub hyp_r2: bool,
    pub applicable: bool,
    /// `!applicable` or the comparison matches the Gorenstein verdict.
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GorboundReport {
    /// `ℓ((J:I)/J)`.
    pub colon_length: usize,
    pub colength: usize,
    pub mu: usize,
    pub mu_m_plus_d: usize,
    pub length_equal: bool,
    pub mu_bound: bool,
    /// Almost minimal multiplicity and Gorenstein.
    pub hypotheses: bool,
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SallySuite {
    pub conditions: Vec<(&'static str, bool)>,
    pub all_agree: bool,
}

/// `I` together with a verified minimal reduction `J`.
pub struct ReductionPair<'f, 'a, C: IdealCalculus> {
    fc: &'f FiberCone<'a, C>,
    j: C::Ideal,
    r: usize,
    ji: RwLock<Vec<C::Ideal>>,
}

impl<'f, 'a, C: IdealCalculus> ReductionPair<'f, 'a, C> {
    /// Checks `J ⊆ I`, `μ(J) = d` and finds the reduction number.
    pub fn new(fc: &'f FiberCone<'a, C>, j: C::Ideal) -> Result<Self, InvError> {
        let calc = fc.calc();
        let d = fc.dimension();
        if !calc.subset(&j, fc.ideal())? {
            return Err(InvError::NotAReduction("J is not contained in I".into()));
        }
        let mu = calc.mu(&j)?;
        if mu != d {
            return Err(InvError::NotAReduction(format!(
                "mu(J) = {mu}, expected {d}"
            )));
        }
        let mut ji = vec![j.clone()];
        let mut r = None;
        for n in 0..fc.policy().n_max {
            if n > 0 {
                ji.push(calc.product(&j, &fc.power(n)?)?);
            }
            if calc.equals(&ji[n], &fc.power(n + 1)?)? {
                r = Some(n);
                break;
            }
        }
        let r = r.ok_or(InvError::NotAReductionWithin(fc.policy().n_max))?;
        let next = calc.product(&j, &fc.power(r + 1)?)?;
        if !calc.equals(&next, &fc.power(r + 2)?)? {
            return Err(InvError::Inconsistent(format!(
                "J I^{} = I^{} but not at the next index",
                r,
                r + 1
            )));
        }
        ji.push(next);
        Ok(ReductionPair {
            fc,
            j,
            r,
            ji: RwLock::new(ji),
        })
    }

    pub fn fiber(&self) -> &'f FiberCone<'a, C> {
        self.fc
    }

    pub fn reduction(&self) -> &C::Ideal {
        &self.j
    }

    /// `r_J(I)`.
    pub fn reduction_number(&self) -> usize {
        self.r
    }

    fn calc(&self) -> &'a C {
        self.fc.calc()
    }

    /// `J I^n`.
    pub fn ji(&self, n: usize) -> Result<C::Ideal, InvError> {
        if let Some(k) = self.ji.read().unwrap().get(n) {
            return Ok(k.clone());
        }
        let mut w = self.ji.write().unwrap();
        while w.len() <= n {
            let k = self.calc().product(&self.j, &self.fc.power(w.len())?)?;
            w.push(k);
        }
        Ok(w[n].clone())
    }

    /// `J I^(n-1)` with `I^0 = R`.
    fn j_prev(&self, n: usize) -> Result<C::Ideal, InvError> {
        self.ji(n - 1)
    }

    fn m_times(&self, k: &C::Ideal) -> Result<C::Ideal, InvError> {
        Ok(self.calc().product(self.fc.maximal(), k)?)
    }

    /// `mI^n + J I^(n-1)` for `n ≥ 1`.
    fn fiber_denominator(&self, n: usize) -> Result<C::Ideal, InvError> {
        let calc = self.calc();
        Ok(calc.sum(&self.m_times(&self.fc.power(n)?)?, &self.j_prev(n)?)?)
    }

    /// `ℓ(I^n / (mI^n + J I^(n-1)))`.
    fn fiber_piece(&self, n: usize) -> Result<usize, InvError> {
        Ok(self
            .calc()
            .length_quotient(&self.fc.power(n)?, &self.fiber_denominator(n)?)?)
    }

    fn render(&self, e: Option<C::Element>) -> Option<String> {
        e.map(|e| self.calc().render(&e))
    }

    pub fn multiplicity(&self) -> Result<Multiplicity, InvError> {
        let via_reduction = self.calc().colength(&self.j)? as i64;
        let via_samuel = self.fc.multiplicity_samuel()?;
        Ok(Multiplicity {
            agree: via_samuel.value == via_reduction,
            via_reduction,
            via_samuel,
        })
    }

    /// `[1, ℓ(I/(mI + J)), ..., ℓ(I^r/(mI^r + JI^(r-1)))]`.
    pub fn fiber_quotient_lengths(&self) -> Result<Vec<usize>, InvError> {
        let mut out = vec![1];
        for n in 1..=self.r {
            out.push(self.fiber_piece(n)?);
        }
        Ok(out)
    }

    pub fn cm_test(&self) -> Result<CmReport, InvError> {
        let lengths = self.fiber_quotient_lengths()?;
        let colength_fiber: i64 = lengths.iter().map(|&x| x as i64).sum();
        let f0 = self.fc.f0()?.value;
        Ok(CmReport {
            verdict: f0 == colength_fiber,
            f0,
            colength_fiber,
            lengths,
        })
    }

    /// `((I^(n+1) m + J I^n) : I) ∩ I^n`.
    fn socle_numerator(&self, n: usize) -> Result<C::Ideal, InvError> {
        let calc = self.calc();
        let inner = calc.sum(&self.m_times(&self.fc.power(n + 1)?)?, &self.ji(n)?)?;
        let col = calc.colon(&inner, self.fc.ideal())?;
        Ok(calc.intersect(&col, &self.fc.power(n)?)?)
    }

    /// Lengths of the graded pieces of the socle of `F(I)/JF(I)`, degrees
    /// `1..=r`. Meaningful when `F(I)` is Cohen-Macaulay.
    pub fn socle_decomposition(&self) -> Result<Vec<usize>, InvError> {
        if self.r == 0 {
            return Ok(vec![1]);
        }
        let calc = self.calc();
        let mut out = Vec::with_capacity(self.r);
        for n in 1..self.r {
            let num = self.socle_numerator(n)?;
            out.push(calc.length_quotient(&num, &self.fiber_denominator(n)?)?);
        }
        out.push(self.fiber_piece(self.r)?);
        Ok(out)
    }

    pub fn gorenstein_test(&self) -> Result<GorensteinReport, InvError> {
        let calc = self.calc();
        let d = self.fc.dimension();
        let cm = self.cm_test()?;
        let mu = self.fc.mu()?;
        let r = self.r;
        let numerator = self.fc.hilbert_numerator()?;
        let (verdict, reason, socle) = if cm.verdict {
            let socle = self.socle_decomposition()?;
            let total: usize = socle.iter().sum();
            (
                total == 1,
                GorensteinReason::SocleLength(total),
                Some(socle),
            )
        } else {
            (false, GorensteinReason::NotCm, None)
        };

        let mut checks = Vec::new();
        let r1 = cm.verdict && r == 1;
        checks.push(CriterionCheck {
            name: "r1_mu",
            applies: r1,
            criterion: r1.then_some(mu == d + 1),
            consistent: !r1 || (mu == d + 1) == verdict,
        });
        let hyper = cm.verdict && mu == d + 1;
        checks.push(CriterionCheck {
            name: "mu_hypersurface",
            applies: hyper,
            criterion: hyper.then_some(true),
            consistent: !hyper || verdict,
        });

        let mut r2_witness = None;
        let r2 = cm.verdict && r == 2;
        let r2_crit = if r2 {
            let e = self.socle_numerator(1)?;
            let target = calc.sum(&self.m_times(self.fc.ideal())?, &self.j)?;
            r2_witness = self.render(calc.witness(&e, &target)?);
            let top = self.fiber_piece(2)?;
            Some(calc.equals(&e, &target)? && top == 1)
        } else {
            None
        };
        checks.push(CriterionCheck {
            name: "r2_colon",
            applies: r2,
            criterion: r2_crit,
            consistent: r2_crit.is_none_or(|c| c == verdict),
        });

        let r3 = cm.verdict && r >= 3;
        let sally = self.len_i2_over_ji()? == 1;
        let sally3 = r3 && sally;
        checks.push(CriterionCheck {
            name: "sally_r3_mu",
            applies: sally3,
            criterion: sally3.then_some(mu == d + 1),
            consistent: !sally3 || !verdict || mu == d + 1,
        });
        let r3_crit = if r3 {
            Some(mu == d + self.fiber_piece(r - 1)?)
        } else {
            None
        };
        checks.push(CriterionCheck {
            name: "r3_mu",
            applies: r3,
            criterion: r3_crit,
            consistent: r3_crit.is_none_or(|c| !verdict || c),
        });
        let sym = numerator.is_palindromic();
        checks.push(CriterionCheck {
            name: "h_symmetry",
            applies: true,
            criterion: Some(sym),
            consistent: !verdict || sym,
        });

        Ok(GorensteinReport {
            verdict,
            reason,
            socle,
            checks,
            r2_witness,
        })
    }

    fn len_i2_over_ji(&self) -> Result<usize, InvError> {
        Ok(self
            .calc()
            .length_quotient(&self.fc.power(2)?, &self.ji(1)?)?)
    }

    fn len_mi_over_mj(&self) -> Result<usize, InvError> {
        let mi = self.m_times(self.fc.ideal())?;
        let mj = self.m_times(&self.j)?;
        Ok(self.calc().length_quotient(&mi, &mj)?)
    }

    pub fn valabrega_valla(&self) -> Result<VvReport, InvError> {
        let calc = self.calc();
        for n in 1..=self.r + 1 {
            let a = calc.intersect(&self.fc.power(n)?, &self.j)?;
            let b = self.j_prev(n)?;
            if !calc.equals(&a, &b)? {
                return Ok(VvReport {
                    holds: false,
                    failing_n: Some(n),
                    witness: self.render(calc.witness(&a, &b)?),
                });
            }
        }
        Ok(VvReport {
            holds: true,
            failing_n: None,
            witness: None,
        })
    }

    pub fn w_criterion(&self) -> Result<WReport, InvError> {
        let calc = self.calc();
        let i = self.fc.ideal();
        let mj = self.m_times(&self.j)?;
        let w = calc.intersect(i, &calc.colon(&mj, i)?)?;
        let target = calc.sum(&self.m_times(i)?, &self.j)?;
        let equal = calc.equals(&w, &target)?;
        let hyp_f_cm = self.cm_test()?.verdict;
        let hyp_g_cm = self.valabrega_valla()?.holds;
        let hyp_almost_min = self.len_mi_over_mj()? == 1;
        let hyp_r2 = self.r == 2;
        let applicable = hyp_f_cm && hyp_g_cm && hyp_almost_min && hyp_r2;
        let consistent = !applicable || equal == self.gorenstein_test()?.verdict;
        Ok(WReport {
            equal,
            witness_w: self.render(calc.witness(&w, &target)?),
            witness_target: self.render(calc.witness(&target, &w)?),
            hyp_f_cm,
            hyp_g_cm,
            hyp_almost_min,
            hyp_r2,
            applicable,
            consistent,
        })
    }

    pub fn gorbound_check(&self) -> Result<GorboundReport, InvError> {
        let calc = self.calc();
        let d = self.fc.dimension();
        let col = calc.colon(&self.j, self.fc.ideal())?;
        let colon_length = calc.length_quotient(&col, &self.j)?;
        let colength = calc.colength(self.fc.ideal())?;
        let mu = self.fc.mu()?;
        let mu_m_plus_d = calc.mu(self.fc.maximal())? + d;
        let length_equal = colon_length == colength;
        let mu_bound = mu <= mu_m_plus_d;
        let hypotheses = self.len_mi_over_mj()? == 1 && self.gorenstein_test()?.verdict;
        Ok(GorboundReport {
            colon_length,
            colength,
            mu,
            mu_m_plus_d,
            length_equal,
            mu_bound,
            hypotheses,
            consistent: !hypotheses || (length_equal && mu_bound),
        })
    }

    pub fn classify(&self) -> Result<Classification, InvError> {
        let calc = self.calc();
        let d = self.fc.dimension() as i64;
        let len_i2_over_ji = self.len_i2_over_ji()?;
        let len_mi_over_mj = self.len_mi_over_mj()?;
        let mu = self.fc.mu()?;
        let colength = calc.colength(self.fc.ideal())?;
        let e = self.multiplicity()?.value();
        let e_top = self.fc.mixed_top()?.value;
        let m = mu as i64;
        let almost_min_mixed = e_top == m - d + 2;
        let ammm_dichotomy = if almost_min_mixed {
            let f0 = self.fc.f0()?.value;
            Some(f0 == e_top || f0 == e_top - 1)
        } else {
            None
        };
        Ok(Classification {
            sally: len_i2_over_ji == 1,
            goto_min: len_mi_over_mj == 0,
            goto_almost_min: len_mi_over_mj == 1,
            min_mixed: e_top == m - d + 1,
            almost_min_mixed,
            len_i2_over_ji,
            len_mi_over_mj,
            e,
            e_top,
            mu,
            colength,
            chuai: e >= m - d + colength as i64,
            multiplicity_identity: e == colength as i64 + m - d + len_mi_over_mj as i64,
            ammm_dichotomy,
        })
    }

    /// The equivalent conditions for a Sally ideal, each evaluated on its own.
    pub fn sally_suite(&self) -> Result<SallySuite, InvError> {
        if self.len_i2_over_ji()? != 1 {
            return Err(InvError::NotSally);
        }
        let calc = self.calc();
        let d = self.fc.dimension();
        let mu = self.fc.mu()?;
        let r = self.r;
        let mut conditions = vec![("cm", self.cm_test()?.verdict)];
        let mi2 = self.m_times(&self.fc.power(2)?)?;
        let mji = self.m_times(&self.ji(1)?)?;
        conditions.push(("m_i2_eq_m_ji", calc.equals(&mi2, &mji)?));
        let mut expected = vec![1i64];
        if r >= 1 {
            expected.push(mu as i64 - d as i64);
        }
        expected.extend(std::iter::repeat_n(1, r.saturating_sub(1)));
        let Numerator { coeffs, .. } = self.fc.hilbert_numerator()?;
        conditions.push(("numerator_form", coeffs == expected));
        conditions.push((
            "f0_formula",
            self.fc.f0()?.value == mu as i64 - d as i64 + r as i64,
        ));
        if d == 1 {
            let mut powers_ok = true;
            for k in 2..=r {
                powers_ok &= self.fc.hf_fiber(k)? == mu + k - 1;
            }
            conditions.push(("mu_powers", powers_ok));
            conditions.push(("mu_square", self.fc.hf_fiber(2)? == mu + 1));
        }
        let first = conditions[0].1;
        Ok(SallySuite {
            all_agree: conditions.iter().all(|(_, v)| *v == first),
            conditions,
        })
    }
}
