//! The worked examples as executable assertions.

use std::fmt::Debug;

use fibercone_core::artinian::{Field, Poly, Rationals, TruncatedLocalRing};
use fibercone_core::invariants::{
    with_precision, FiberCone, FiberReport, InvError, ReductionPair, StabilizationPolicy,
};
use fibercone_core::{Exec, IdealCalculus, NumericalSemigroup, SemigroupRing};

use crate::backend::Faulty;
use crate::commands::{DEFAULT_BUDGET, DEFAULT_TRUNCATION};
use crate::report::Report;
use crate::CliError;

pub const EXAMPLES: [&str; 6] = ["sgp6", "sgp7", "sgp4", "plane", "space", "family"];

#[derive(Default)]
struct Checks {
    results: Vec<(String, Result<(), String>)>,
}

impl Checks {
    fn check(&mut self, name: &str, ok: bool) {
        let r = if ok { Ok(()) } else { Err("false".to_string()) };
        self.results.push((name.to_string(), r));
    }

    fn eq<T: PartialEq + Debug>(&mut self, name: &str, got: T, want: T) {
        let r = if got == want {
            Ok(())
        } else {
            Err(format!("got {got:?}, want {want:?}"))
        };
        self.results.push((name.to_string(), r));
    }
}

#[derive(Clone, Copy)]
struct Ctx {
    fault: bool,
    exec: Exec,
    policy: StabilizationPolicy,
}

fn report_of<C: IdealCalculus>(
    ctx: Ctx,
    calc: &C,
    i: &C::Ideal,
    j: &C::Ideal,
) -> Result<FiberReport, InvError> {
    let fc = FiberCone::new(calc, i.clone(), ctx.policy, ctx.exec)?;
    FiberReport::compute(&ReductionPair::new(&fc, j.clone())?)
}

fn m_times<C: IdealCalculus>(c: &C, k: &C::Ideal) -> Result<C::Ideal, InvError> {
    Ok(c.product(&c.maximal_ideal(), k)?)
}

/// `ℓ(I²/JI) = 1` and `I³ = JI²`.
fn sally_r2<C: IdealCalculus>(
    ch: &mut Checks,
    c: &C,
    i: &C::Ideal,
    j: &C::Ideal,
) -> Result<(), InvError> {
    let i2 = c.power(i, 2)?;
    ch.eq(
        "len_i2_over_ji",
        c.length_quotient(&i2, &c.product(j, i)?)?,
        1,
    );
    ch.check("i3_eq_ji2", c.equals(&c.power(i, 3)?, &c.product(j, &i2)?)?);
    Ok(())
}

fn semigroup(ctx: Ctx, id: &str, ch: &mut Checks) -> Result<(), InvError> {
    let (gens, ig, jg): (&[u32], &[u32], &[u32]) = match id {
        "sgp6" => (&[6, 11, 15, 31], &[6, 11, 31], &[6]),
        "sgp7" => (&[7, 15, 17, 33], &[7, 17, 33], &[7]),
        _ => (&[4, 5, 6, 7], &[4, 5, 6], &[4]),
    };
    let ring = SemigroupRing::new(NumericalSemigroup::new(gens).expect("valid generators"));
    let c = Faulty {
        inner: &ring,
        off_by_one: ctx.fault,
    };
    let (i, j) = (ring.ideal(ig)?, ring.ideal(jg)?);
    sally_r2(ch, &c, &i, &j)?;
    let i2 = c.power(&i, 2)?;
    let ji = c.product(&j, &i)?;
    let rep = report_of(ctx, &c, &i, &j)?;
    match id {
        "sgp6" => {
            ch.check("i2_cap_j_eq_ji", c.equals(&c.intersect(&i2, &j)?, &ji)?);
            ch.eq("vv_certificate", rep.vv.holds, true);
            ch.check("t37_in_m_i2", c.contains(&m_times(&c, &i2)?, &37)?);
            ch.check("t37_not_in_m_ji", !c.contains(&m_times(&c, &ji)?, &37)?);
            ch.eq("cm_test", rep.cm.verdict, false);
            let fc = FiberCone::new(&c, i.clone(), ctx.policy, ctx.exec)?;
            let s = ReductionPair::new(&fc, j.clone())?.sally_suite()?;
            ch.check(
                "sally_suite_all_false",
                s.conditions.iter().all(|(_, v)| !v),
            );
        }
        "sgp7" => {
            ch.check("i2_cap_j_eq_ji", c.equals(&c.intersect(&i2, &j)?, &ji)?);
            ch.check(
                "m_i2_eq_m_ji",
                c.equals(&m_times(&c, &i2)?, &m_times(&c, &ji)?)?,
            );
            ch.eq("cm_test", rep.cm.verdict, true);
            ch.eq("numerator", rep.numerator.coeffs.clone(), vec![1, 2, 1]);
            ch.eq("f0", rep.f0.value, 4);
            ch.eq("gorenstein_test", rep.gorenstein.verdict, false);
            let e = c.intersect(&c.colon(&c.sum(&m_times(&c, &i2)?, &ji)?, &i)?, &i)?;
            ch.check("t33_in_socle_colon", c.contains(&e, &33)?);
            ch.check(
                "t33_not_in_j_plus_m_i",
                !c.contains(&c.sum(&j, &m_times(&c, &i)?)?, &33)?,
            );
            ch.check("numerator_symmetric", rep.numerator.is_palindromic());
        }
        _ => {
            ch.check(
                "m_i_eq_m_j",
                c.equals(&m_times(&c, &i)?, &m_times(&c, &j)?)?,
            );
            ch.eq("cm_test", rep.cm.verdict, true);
            ch.check("t11_in_i2_cap_j", c.contains(&c.intersect(&i2, &j)?, &11)?);
            ch.check("t11_not_in_ji", !c.contains(&ji, &11)?);
            ch.eq("vv_certificate", rep.vv.holds, false);
            ch.eq("gorenstein_test", rep.gorenstein.verdict, true);
            let r2 = rep.gorenstein.check("r2_colon");
            ch.check(
                "via_r2_criterion",
                r2.is_some_and(|k| k.applies && k.criterion == Some(true)),
            );
        }
    }
    common_identities(ch, &rep);
    Ok(())
}

fn common_identities(ch: &mut Checks, rep: &FiberReport) {
    ch.check("e_routes_agree", rep.multiplicity.agree);
    ch.eq(
        "f0_is_numerator_at_one",
        rep.numerator.at_one(),
        rep.f0.value,
    );
    ch.check("chuai_inequality", rep.classification.chuai);
    ch.check(
        "gorenstein_implies_symmetric",
        !rep.gorenstein.verdict || rep.numerator.is_palindromic(),
    );
}

fn mono<F: Field>(f: &F, e: &[u32]) -> Poly<F::Elem> {
    Poly::monomial(f, e.to_vec(), f.one())
}

fn sum_of<F: Field>(f: &F, terms: &[&[u32]]) -> Poly<F::Elem> {
    terms
        .iter()
        .fold(Poly::zero(terms[0].len()), |acc, e| acc.add(f, &mono(f, e)))
}

fn local_example(ctx: Ctx, id: &str, ch: &mut Checks) -> Result<(), InvError> {
    let d = if id == "plane" { 2 } else { 3 };
    let start = TruncatedLocalRing::new(d, DEFAULT_TRUNCATION, Rationals)?;
    let (mut local, _) = with_precision(&start, DEFAULT_BUDGET, |r| {
        let mut local = Checks::default();
        let f = r.field();
        let c = Faulty {
            inner: r,
            off_by_one: ctx.fault,
        };
        let (ig, jg) = if d == 2 {
            (
                vec![mono(f, &[3, 0]), mono(f, &[2, 1]), mono(f, &[0, 3])],
                vec![mono(f, &[3, 0]), mono(f, &[0, 3])],
            )
        } else {
            (
                [
                    [3, 0, 0],
                    [0, 3, 0],
                    [0, 0, 3],
                    [1, 1, 0],
                    [0, 1, 1],
                    [1, 0, 1],
                ]
                .iter()
                .map(|e| mono(f, e))
                .collect(),
                vec![
                    sum_of(f, &[&[3, 0, 0], &[0, 1, 1]]),
                    sum_of(f, &[&[0, 3, 0], &[0, 0, 3], &[1, 0, 1]]),
                    sum_of(f, &[&[1, 0, 1], &[1, 1, 0]]),
                ],
            )
        };
        let (i, j) = (r.ideal(&ig)?, r.ideal(&jg)?);
        let rep = report_of(ctx, &c, &i, &j)?;
        let len_mi_mj = c.length_quotient(&m_times(&c, &i)?, &m_times(&c, &j)?)?;
        local.eq("len_mi_over_mj", len_mi_mj, 1);
        if d == 2 {
            sally_r2(&mut local, &c, &i, &j)?;
            let i2 = c.power(&i, 2)?;
            let ji = c.product(&j, &i)?;
            local.check(
                "m_i2_eq_m_ji",
                c.equals(&m_times(&c, &i2)?, &m_times(&c, &ji)?)?,
            );
            local.eq("mu_i", rep.mu, 3);
            let w = mono(f, &[4, 2]);
            local.check("x4y2_in_i2_cap_j", c.contains(&c.intersect(&i2, &j)?, &w)?);
            local.check("x4y2_not_in_ji", !c.contains(&ji, &w)?);
            local.eq("vv_certificate", rep.vv.holds, false);
            local.eq("gorenstein_test", rep.gorenstein.verdict, true);
            local.eq("w_equals_m_i_plus_j", rep.w.equal, false);
            local.check("w_flagged_g_not_cm", !rep.w.hyp_g_cm && !rep.w.applicable);
        } else {
            local.check("i2_eq_ji", c.equals(&c.power(&i, 2)?, &c.product(&j, &i)?)?);
            local.eq("reduction_number", rep.reduction_number, 1);
            local.eq("cm_test", rep.cm.verdict, true);
            local.eq("numerator", rep.numerator.coeffs.clone(), vec![1, 3]);
            local.eq("f0", rep.f0.value, 4);
            local.eq("e2_m_given_i", rep.mixed[1].value, 4);
            local.check("minimal_mixed", rep.classification.min_mixed);
            local.eq("gorenstein_test", rep.gorenstein.verdict, false);
            let z3 = mono(f, &[0, 0, 3]);
            let w = c.intersect(&c.colon(&m_times(&c, &j)?, &i)?, &i)?;
            local.check("z3_in_w", c.contains(&w, &z3)?);
            local.check(
                "z3_not_in_m_i_plus_j",
                !c.contains(&c.sum(&m_times(&c, &i)?, &j)?, &z3)?,
            );
            local.eq("len_j_colon_i_over_j", rep.gorbound.colon_length, 7);
            local.eq("colength_i", rep.colength, 7);
            local.eq("mu_i", rep.mu, 6);
            local.eq("mu_m_plus_d", rep.gorbound.mu_m_plus_d, 6);
        }
        common_identities(&mut local, &rep);
        Ok(local)
    })?;
    ch.results.append(&mut local.results);
    Ok(())
}

fn family(ctx: Ctx, ch: &mut Checks) -> Result<(), InvError> {
    for e in 4u32..=8 {
        let gens: Vec<u32> = (e..=2 * e - 2).collect();
        let s = NumericalSemigroup::new(&gens).expect("coprime generators");
        ch.check(&format!("e{e}.symmetric"), s.is_symmetric());
        ch.eq(&format!("e{e}.conductor"), s.conductor(), 2 * e);
        let ring = SemigroupRing::new(s);
        let c = Faulty {
            inner: &ring,
            off_by_one: ctx.fault,
        };
        let m = c.maximal_ideal();
        let j = ring.ideal(&[e])?;
        ch.eq(&format!("e{e}.mu_m"), c.mu(&m)?, e as usize - 1);
        let m3_j = c.equals(&c.power(&m, 3)?, &c.product(&j, &c.power(&m, 2)?)?)?;
        ch.check(&format!("e{e}.m3_eq_j_m2"), m3_j);
        let rep = report_of(ctx, &c, &m, &j)?;
        ch.check(
            &format!("e{e}.reduction_number_le_2"),
            rep.reduction_number <= 2,
        );
        ch.eq(
            &format!("e{e}.gorenstein_test"),
            rep.gorenstein.verdict,
            true,
        );
    }
    Ok(())
}

/// Runs the examples (all, or only `only`). With `fault` every quotient
/// length is reported one too large.
pub fn example_suite(
    only: Option<&str>,
    fault: bool,
    exec: Exec,
    policy: StabilizationPolicy,
) -> Result<Report, CliError> {
    if let Some(o) = only {
        if !EXAMPLES.contains(&o) {
            return Err(CliError::Usage(format!(
                "unknown example `{o}`, expected one of {}",
                EXAMPLES.join(" ")
            )));
        }
    }
    let ctx = Ctx {
        fault,
        exec,
        policy,
    };
    let mut out = Report::new();
    let (mut total, mut failed) = (0, 0);
    for id in EXAMPLES.iter().filter(|e| only.is_none_or(|o| o == **e)) {
        let mut ch = Checks::default();
        let run = match *id {
            "sgp6" | "sgp7" | "sgp4" => semigroup(ctx, id, &mut ch),
            "plane" | "space" => local_example(ctx, id, &mut ch),
            _ => family(ctx, &mut ch),
        };
        if let Err(e) = run {
            ch.results
                .push(("error".into(), Err(format!("{}: {e}", e.kind()))));
        }
        for (name, r) in ch.results {
            total += 1;
            let v = match r {
                Ok(()) => "pass".to_string(),
                Err(why) => {
                    failed += 1;
                    format!("FAIL ({why})")
                }
            };
            out.push(format!("example.{id}.{name}"), v);
        }
    }
    out.push("suite.assertions", total);
    out.push("suite.failed", failed);
    out.failed = failed > 0;
    Ok(out)
}
