use fibercone_core::artinian::{Field, PrimeField, Rationals, TruncatedLocalRing, DEFAULT_GUARD};
use fibercone_core::invariants::{
    FiberCone, FiberReport, ReductionPair, StabilizationPolicy, SuperficialVariant,
};
use fibercone_core::{Exec, NumericalSemigroup, SemigroupRing};

use crate::backend::Frontend;
use crate::report::Report;
use crate::session::{RingSpec, Session};
use crate::CliError;

pub const DEFAULT_TRUNCATION: usize = 10;
pub const DEFAULT_BUDGET: u32 = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Report {
        i: String,
        j: String,
    },
    Cm {
        i: String,
        j: String,
    },
    Gorenstein {
        i: String,
        j: String,
    },
    Series {
        i: String,
    },
    Mixed {
        i: String,
        a: usize,
        b: usize,
    },
    Vv {
        i: String,
        j: String,
    },
    Superficial {
        i: String,
        x: String,
        a_list: Vec<String>,
        variant: SuperficialVariant,
    },
}

impl Command {
    /// Parses `<command> [args]`. Ideal names default to `I` and `J`.
    pub fn parse(args: &[String], variant: SuperficialVariant) -> Result<Self, CliError> {
        let (name, rest) = args
            .split_first()
            .ok_or_else(|| CliError::Usage("missing command".into()))?;
        let arg = |k: usize, default: &str| rest.get(k).cloned().unwrap_or_else(|| default.into());
        let max_args = |n: usize| {
            if rest.len() > n {
                Err(CliError::Usage(format!("too many arguments for `{name}`")))
            } else {
                Ok(())
            }
        };
        let pair = |f: fn(String, String) -> Command| -> Result<Command, CliError> {
            max_args(2)?;
            Ok(f(arg(0, "I"), arg(1, "J")))
        };
        match name.as_str() {
            "report" => pair(|i, j| Command::Report { i, j }),
            "cm" => pair(|i, j| Command::Cm { i, j }),
            "gorenstein" => pair(|i, j| Command::Gorenstein { i, j }),
            "vv" => pair(|i, j| Command::Vv { i, j }),
            "series" => {
                max_args(1)?;
                Ok(Command::Series { i: arg(0, "I") })
            }
            "mixed" => {
                if rest.len() != 3 {
                    return Err(CliError::Usage("usage: mixed <I> <i> <j>".into()));
                }
                let num = |s: &str| {
                    s.parse::<usize>()
                        .map_err(|_| CliError::Usage(format!("expected a degree, found `{s}`")))
                };
                Ok(Command::Mixed {
                    i: rest[0].clone(),
                    a: num(&rest[1])?,
                    b: num(&rest[2])?,
                })
            }
            "superficial" => {
                if rest.len() < 2 {
                    return Err(CliError::Usage("usage: superficial <I> <x> [a ...]".into()));
                }
                Ok(Command::Superficial {
                    i: rest[0].clone(),
                    x: rest[1].clone(),
                    a_list: rest[2..].to_vec(),
                    variant,
                })
            }
            other => Err(CliError::Usage(format!("unknown command `{other}`"))),
        }
    }
}

/// Command-line overrides of session settings.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub n_max: Option<usize>,
    pub window: Option<usize>,
    pub trunc: Option<usize>,
    pub exec: Exec,
}

pub fn run(session: &Session, cmd: &Command, ov: &Overrides) -> Result<Report, CliError> {
    let s = &session.settings;
    let policy = StabilizationPolicy::new(
        ov.window.or(s.window).unwrap_or(3),
        ov.n_max.or(s.n_max).unwrap_or(40),
    )?;
    match &session.ring {
        RingSpec::Semigroup(g) => {
            let sgp = NumericalSemigroup::new(g).map_err(|e| CliError::Usage(e.to_string()))?;
            execute(&SemigroupRing::new(sgp), session, cmd, policy, ov.exec)
        }
        RingSpec::Local { vars, trunc, char } => {
            let n = ov
                .trunc
                .or(s.trunc)
                .or(*trunc)
                .unwrap_or(DEFAULT_TRUNCATION);
            let guard = s.guard.unwrap_or(DEFAULT_GUARD);
            match char {
                None | Some(0) => local(Rationals, vars, n, guard, session, cmd, policy, ov.exec),
                Some(p) => {
                    let f = PrimeField::new(*p)?;
                    local(f, vars, n, guard, session, cmd, policy, ov.exec)
                }
            }
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn local<F: Field>(
    field: F,
    vars: &[String],
    n: usize,
    guard: usize,
    session: &Session,
    cmd: &Command,
    policy: StabilizationPolicy,
    exec: Exec,
) -> Result<Report, CliError> {
    let mut ring = TruncatedLocalRing::with_names(vars.to_vec(), n, field)?.with_guard(guard)?;
    let mut doublings = 0;
    loop {
        match execute(&ring, session, cmd, policy, exec) {
            Err(e) if e.is_precision_exhausted() => {
                if doublings == DEFAULT_BUDGET {
                    return Err(fibercone_core::CalcError::BudgetExceeded {
                        doublings,
                        truncation: ring.truncation(),
                    }
                    .into());
                }
                doublings += 1;
                ring = ring.with_truncation(2 * ring.truncation())?;
            }
            other => return other,
        }
    }
}

fn execute<C: Frontend>(
    calc: &C,
    session: &Session,
    cmd: &Command,
    policy: StabilizationPolicy,
    exec: Exec,
) -> Result<Report, CliError> {
    let ideal = |name: &str| -> Result<C::Ideal, CliError> {
        let gens = session
            .ideal(name)
            .ok_or_else(|| CliError::UnknownIdeal(name.to_string()))?;
        calc.ideal_from(gens)
    };
    let mut out = Report::new();
    out.extend(calc.describe());
    let pair_cmd =
        |i: &str,
         j: &str,
         out: &mut Report,
         f: &dyn Fn(&ReductionPair<C>, &mut Report) -> Result<(), CliError>| {
            let fc = FiberCone::new(calc, ideal(i)?, policy, exec)?;
            let pair = ReductionPair::new(&fc, ideal(j)?)?;
            out.push("reduction.number", pair.reduction_number());
            f(&pair, out)
        };
    match cmd {
        Command::Report { i, j } => pair_cmd(i, j, &mut out, &|pair, out| {
            let rep = FiberReport::compute(pair)?;
            out.fiber_report(&rep);
            if rep.classification.sally {
                out.sally(&pair.sally_suite()?);
            }
            Ok(())
        })?,
        Command::Cm { i, j } => pair_cmd(i, j, &mut out, &|pair, out| {
            out.cm(&pair.cm_test()?);
            Ok(())
        })?,
        Command::Gorenstein { i, j } => pair_cmd(i, j, &mut out, &|pair, out| {
            let g = pair.gorenstein_test()?;
            out.gorenstein(&g);
            if !g.consistent() {
                out.failed = true;
            }
            Ok(())
        })?,
        Command::Vv { i, j } => pair_cmd(i, j, &mut out, &|pair, out| {
            out.vv(&pair.valabrega_valla()?);
            Ok(())
        })?,
        Command::Series { i } => {
            let fc = FiberCone::new(calc, ideal(i)?, policy, exec)?;
            let n = fc.hilbert_numerator()?;
            out.series(&n, calc.dimension());
            let f0 = fc.f0()?;
            out.push("f0.value", f0.value);
            out.push("f0.stabilized_at", f0.at);
        }
        Command::Mixed { i, a, b } => {
            let fc = FiberCone::new(calc, ideal(i)?, policy, exec)?;
            out.mixed(*a, *b, &fc.mixed_multiplicity(*a, *b)?);
        }
        Command::Superficial {
            i,
            x,
            a_list,
            variant,
        } => {
            let fc = FiberCone::new(calc, ideal(i)?, policy, exec)?;
            let elem =
                |t: &str| -> Result<C::Element, CliError> { calc.element(&session.parse_expr(t)?) };
            let xs = elem(x)?;
            let a = a_list
                .iter()
                .map(|t| elem(t))
                .collect::<Result<Vec<_>, _>>()?;
            out.superficial(&fc.superficial_limit_check(&a, &xs, *variant)?);
        }
    }
    Ok(out)
}
