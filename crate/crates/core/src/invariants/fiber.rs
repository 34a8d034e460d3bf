use std::collections::BTreeMap;
use std::sync::{Mutex, RwLock};

use super::stabilize::{StabilizationPolicy, Stabilized};
use super::{backward_difference, binom, InvError};
use crate::calculus::{CalcError, IdealCalculus};
use crate::exec::Exec;

/// Coefficients of `HS(F(I), t) · (1 - t)^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Numerator {
    pub coeffs: Vec<i64>,
    /// First index of the run of vanishing `Δ^d μ(I^n)`.
    pub stabilized_at: usize,
}

impl Numerator {
    pub fn at_one(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }
}

/// All coefficients `e_α`, `|α| ≤ d`, of the Bhattacharya polynomial of
/// `(m, I)` in the basis `C(r+a, a) C(s+b, b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedTable {
    pub coeffs: BTreeMap<(usize, usize), i64>,
    pub stabilized_at: usize,
}

impl MixedTable {
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.coeffs.get(&(i, j)).copied().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultreesReport {
    /// `g(j) = Σ_{i=1}^{d-j} i e_(i,j)` for `j < d`.
    pub g: Vec<i64>,
    pub predicted: Vec<i64>,
    pub actual: Vec<i64>,
    pub agree: bool,
    /// `BF(r, s) = BP(r, s)` on every grid point computed, the theorem's
    /// hypothesis.
    pub bp_matches_on_grid: bool,
    pub grid_size: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuperficialVariant {
    /// `x ∈ m`, compared against `e_(1,d-1)`.
    MaximalIdeal,
    /// `x ∈ I`, compared against `e(I)`.
    Ideal,
}

/// Formula consistency only: the elements are not certified superficial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperficialReport {
    pub variant: SuperficialVariant,
    pub limit: Stabilized<i64>,
    pub base: i64,
    pub f0: i64,
    pub consistent: bool,
    /// `d = 1` only: `μ(I^n) + ℓ(mI^n/xI^n) = ℓ(R/xR)` at every index seen.
    pub pointwise: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct G1Report {
    pub value: i64,
    pub terms: Vec<i64>,
    pub vanish_from: usize,
}

struct Grid<K> {
    // values[s][r] = ℓ(R/m^r I^s) for r, s < size
    size: usize,
    values: Vec<Vec<usize>>,
    last: Vec<K>,
}

/// Invariants of `F(I)` that need no reduction.
pub struct FiberCone<'a, C: IdealCalculus> {
    calc: &'a C,
    ideal: C::Ideal,
    maximal: C::Ideal,
    policy: StabilizationPolicy,
    exec: Exec,
    powers: RwLock<Vec<C::Ideal>>,
    grid: Mutex<Grid<C::Ideal>>,
}

impl<'a, C: IdealCalculus> FiberCone<'a, C> {
    pub fn new(
        calc: &'a C,
        ideal: C::Ideal,
        policy: StabilizationPolicy,
        exec: Exec,
    ) -> Result<Self, InvError> {
        policy.validate()?;
        // m-primary and proper
        if calc.colength(&ideal)? == 0 {
            return Err(InvError::Calc(CalcError::BadParameters(
                "the ideal is the whole ring".into(),
            )));
        }
        Ok(FiberCone {
            calc,
            maximal: calc.maximal_ideal(),
            powers: RwLock::new(vec![calc.unit_ideal(), ideal.clone()]),
            ideal,
            policy,
            exec,
            grid: Mutex::new(Grid {
                size: 0,
                values: Vec::new(),
                last: Vec::new(),
            }),
        })
    }

    pub fn calc(&self) -> &'a C {
        self.calc
    }

    pub fn ideal(&self) -> &C::Ideal {
        &self.ideal
    }

    pub fn maximal(&self) -> &C::Ideal {
        &self.maximal
    }

    pub fn policy(&self) -> StabilizationPolicy {
        self.policy
    }

    pub fn exec(&self) -> Exec {
        self.exec
    }

    pub fn dimension(&self) -> usize {
        self.calc.dimension()
    }

    /// `I^n`, memoized. Population is single-writer.
    pub fn power(&self, n: usize) -> Result<C::Ideal, InvError> {
        if let Some(p) = self.powers.read().unwrap().get(n) {
            return Ok(p.clone());
        }
        let mut w = self.powers.write().unwrap();
        while w.len() <= n {
            let next = self.calc.product(w.last().unwrap(), &self.ideal)?;
            w.push(next);
        }
        Ok(w[n].clone())
    }

    pub fn mu(&self) -> Result<usize, InvError> {
        Ok(self.calc.mu(&self.ideal)?)
    }

    /// `HF(F(I), n) = μ(I^n)`.
    pub fn hf_fiber(&self, n: usize) -> Result<usize, InvError> {
        Ok(self.calc.mu(&self.power(n)?)?)
    }

    /// `ℓ(R/I^n)`.
    pub fn hs_samuel(&self, n: usize) -> Result<usize, InvError> {
        Ok(self.calc.colength(&self.power(n)?)?)
    }

    fn ensure_grid(&self, upto: usize) -> Result<(), InvError> {
        let mut g = self.grid.lock().unwrap();
        if upto < g.size {
            return Ok(());
        }
        // grow in chunks so that parallel columns have work to share
        let new_size = (upto + 1).max(g.size + self.policy.run_length());
        self.power(new_size - 1)?;
        let old = g.size;
        let starts: Vec<(usize, C::Ideal, usize)> = (0..new_size)
            .map(|s| {
                if s < old {
                    Ok((s, g.last[s].clone(), old))
                } else {
                    Ok((s, self.power(s)?, 0))
                }
            })
            .collect::<Result<_, InvError>>()?;
        let calc = self.calc;
        let m = &self.maximal;
        let columns = self.exec.try_map(&starts, |(_, start, r0)| {
            let mut k = start.clone();
            let mut vals = Vec::with_capacity(new_size - r0);
            for r in *r0..new_size {
                if r > *r0 || *r0 > 0 {
                    k = calc.product(m, &k)?;
                }
                vals.push(calc.colength(&k)?);
            }
            Ok::<_, InvError>((vals, k))
        })?;
        for ((s, _, _), (vals, k)) in starts.iter().zip(columns) {
            if *s < old {
                g.values[*s].extend(vals);
                g.last[*s] = k;
            } else {
                g.values.push(vals);
                g.last.push(k);
            }
        }
        g.size = new_size;
        Ok(())
    }

    /// `BF(r, s) = ℓ(R/m^r I^s)`.
    pub fn bhattacharya(&self, r: usize, s: usize) -> Result<usize, InvError> {
        self.ensure_grid(r.max(s))?;
        Ok(self.grid.lock().unwrap().values[s][r])
    }

    /// `[BF(r, s)]` for `r, s ≤ size`, indexed `[r][s]`.
    pub fn bhattacharya_grid(&self, size: usize) -> Result<Vec<Vec<usize>>, InvError> {
        self.ensure_grid(size)?;
        let g = self.grid.lock().unwrap();
        Ok((0..=size)
            .map(|r| (0..=size).map(|s| g.values[s][r]).collect())
            .collect())
    }

    fn mixed_difference(&self, a: usize, b: usize, n: usize) -> Result<i64, InvError> {
        let mut acc = 0i64;
        for i in 0..=a {
            for k in 0..=b {
                let c = binom(a as i64, i as i64) * binom(b as i64, k as i64);
                let v = self.bhattacharya(n - i, n - k)? as i64;
                acc += if (i + k) % 2 == 0 { c * v } else { -c * v };
            }
        }
        Ok(acc)
    }

    /// `e(I)` as the stabilized `Δ^d ℓ(R/I^n)`.
    pub fn multiplicity_samuel(&self) -> Result<Stabilized<i64>, InvError> {
        let d = self.dimension();
        self.policy.stabilize("Δ^d ℓ(R/I^n)", d, |n| {
            backward_difference(d, n, |k| Ok(self.hs_samuel(k)? as i64))
        })
    }

    /// `e(m)` as the stabilized `Δ^d ℓ(R/m^n)`.
    pub fn multiplicity_maximal(&self) -> Result<Stabilized<i64>, InvError> {
        let d = self.dimension();
        self.policy.stabilize("Δ^d ℓ(R/m^n)", d, |n| {
            backward_difference(d, n, |k| Ok(self.bhattacharya(k, 0)? as i64))
        })
    }

    fn hf_or_zero(&self, n: usize) -> Result<i64, InvError> {
        Ok(self.hf_fiber(n)? as i64)
    }

    /// `f0(I)`: the stabilized `Δ^(d-1) μ(I^n)`.
    pub fn f0(&self) -> Result<Stabilized<i64>, InvError> {
        let d = self.dimension();
        self.policy.stabilize("Δ^(d-1) μ(I^n)", 0, |n| {
            backward_difference(d - 1, n, |k| self.hf_or_zero(k))
        })
    }

    pub fn hilbert_numerator(&self) -> Result<Numerator, InvError> {
        let d = self.dimension();
        let mut coeffs = Vec::new();
        let st = self.policy.stabilize("Δ^d μ(I^n)", 0, |n| {
            let h = backward_difference(d, n, |k| self.hf_or_zero(k))?;
            if coeffs.len() == n {
                coeffs.push(h);
            }
            Ok(h)
        })?;
        if st.value != 0 {
            return Err(InvError::StabilizationFailed {
                what: "Hilbert numerator (Δ^d μ(I^n) does not vanish)".into(),
                n_max: self.policy.n_max,
            });
        }
        coeffs.truncate(st.at);
        Ok(Numerator {
            coeffs,
            stabilized_at: st.at,
        })
    }

    /// `e_(i,j)` with `i + j = d`; slot `i` counts copies of `m`.
    pub fn mixed_multiplicity(&self, i: usize, j: usize) -> Result<Stabilized<i64>, InvError> {
        let d = self.dimension();
        if i + j != d {
            return Err(InvError::BadDegrees { i, j, d });
        }
        self.policy.stabilize(&format!("e_({i},{j})"), d, |n| {
            self.mixed_difference(i, j, n)
        })
    }

    /// `e_(1,d-1) = e_{d-1}(m|I)`.
    pub fn mixed_top(&self) -> Result<Stabilized<i64>, InvError> {
        let d = self.dimension();
        self.mixed_multiplicity(1, d - 1)
    }

    /// Every Bhattacharya coefficient, extracted by total degree from the
    /// top down.
    pub fn bhattacharya_coefficients(&self) -> Result<MixedTable, InvError> {
        let d = self.dimension();
        let mut coeffs: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        let mut at = 0;
        for total in (0..=d).rev() {
            for a in (0..=total).rev() {
                let b = total - a;
                let higher: Vec<((usize, usize), i64)> = coeffs
                    .iter()
                    .filter(|((x, y), _)| *x >= a && *y >= b)
                    .map(|(k, v)| (*k, *v))
                    .collect();
                let st = self.policy.stabilize(&format!("e_({a},{b})"), d, |n| {
                    let mut v = self.mixed_difference(a, b, n)?;
                    let n = n as i64;
                    for ((x, y), e) in &higher {
                        let (x, y) = (*x as i64, *y as i64);
                        let (a, b) = (a as i64, b as i64);
                        v -= e * binom(n + x - a, x - a) * binom(n + y - b, y - b);
                    }
                    Ok(v)
                })?;
                at = at.max(st.at);
                coeffs.insert((a, b), st.value);
            }
        }
        Ok(MixedTable {
            coeffs,
            stabilized_at: at,
        })
    }

    /// The numerator predicted from mixed multiplicities, compared with the
    /// computed one. Disagreement only means `BF ≠ BP` somewhere.
    pub fn multrees_prediction(&self) -> Result<MultreesReport, InvError> {
        let d = self.dimension();
        let table = self.bhattacharya_coefficients()?;
        let g: Vec<i64> = (0..d)
            .map(|j| (1..=d - j).map(|i| i as i64 * table.get(i, j)).sum())
            .collect();
        let mut predicted = vec![0i64; d];
        for (j, gj) in g.iter().enumerate() {
            // (1 - t)^(d-j-1)
            let p = d - j - 1;
            for k in 0..=p {
                let c = binom(p as i64, k as i64);
                predicted[k] += if k % 2 == 0 { c * gj } else { -c * gj };
            }
        }
        while predicted.len() > 1 && predicted.last() == Some(&0) {
            predicted.pop();
        }
        let actual = self.hilbert_numerator()?.coeffs;
        let grid_size = table.stabilized_at + self.policy.run_length();
        let grid = self.bhattacharya_grid(grid_size)?;
        let bp = |r: usize, s: usize| -> i64 {
            table
                .coeffs
                .iter()
                .map(|(&(a, b), e)| {
                    e * binom((r + a) as i64, a as i64) * binom((s + b) as i64, b as i64)
                })
                .sum()
        };
        let bp_matches_on_grid =
            (0..=grid_size).all(|r| (0..=grid_size).all(|s| grid[r][s] as i64 == bp(r, s)));
        Ok(MultreesReport {
            agree: predicted == actual,
            bp_matches_on_grid,
            grid_size,
            g,
            predicted,
            actual,
        })
    }

    /// `ℓ(mI^n / (x I^n + L m I^(n-1)))` and its limit, checked against
    /// `f0 = base - limit`.
    pub fn superficial_limit_check(
        &self,
        a_list: &[C::Element],
        x: &C::Element,
        variant: SuperficialVariant,
    ) -> Result<SuperficialReport, InvError> {
        let d = self.dimension();
        let calc = self.calc;
        if a_list.len() + 1 != d {
            return Err(InvError::DimensionMismatch {
                expected: d - 1,
                got: a_list.len(),
            });
        }
        for a in a_list {
            if !calc.contains(&self.ideal, a)? {
                return Err(InvError::Calc(CalcError::NotContained));
            }
        }
        let home = match variant {
            SuperficialVariant::MaximalIdeal => &self.maximal,
            SuperficialVariant::Ideal => &self.ideal,
        };
        if !calc.contains(home, x)? {
            return Err(InvError::Calc(CalcError::NotContained));
        }
        let unit = calc.unit_ideal();
        let rx = calc.colength(&calc.scaled_sum(&[(x.clone(), &unit)])?)? as i64;
        let mut pointwise = true;
        let limit = self.policy.stabilize("superficial limit", 1, |n| {
            let pn = self.power(n)?;
            let mpn = calc.product(&self.maximal, &pn)?;
            let mprev = calc.product(&self.maximal, &self.power(n - 1)?)?;
            let mut terms: Vec<(C::Element, &C::Ideal)> = vec![(x.clone(), &pn)];
            for a in a_list {
                terms.push((a.clone(), &mprev));
            }
            let denom = calc.scaled_sum(&terms)?;
            let len = calc.length_quotient(&mpn, &denom)? as i64;
            if d == 1 && self.hf_fiber(n)? as i64 + len != rx {
                pointwise = false;
            }
            Ok(len)
        })?;
        let base = match variant {
            SuperficialVariant::MaximalIdeal => self.mixed_top()?.value,
            SuperficialVariant::Ideal => self.multiplicity_samuel()?.value,
        };
        let f0 = self.f0()?.value;
        Ok(SuperficialReport {
            variant,
            consistent: f0 == base - limit.value,
            limit,
            base,
            f0,
            pointwise: (d == 1 && variant == SuperficialVariant::MaximalIdeal).then_some(pointwise),
        })
    }

    /// `g1(I) = Σ_{n≥1} ℓ(mI^n / x m I^(n-1)) - 1` for `d = 1` and a
    /// principal reduction `(x)`.
    pub fn g1_coefficient(&self, x: &C::Element) -> Result<G1Report, InvError> {
        let calc = self.calc;
        if self.dimension() != 1 {
            return Err(InvError::Unsupported(
                "g1 is computed in dimension one only".into(),
            ));
        }
        if !calc.contains(&self.ideal, x)? {
            return Err(InvError::Calc(CalcError::NotContained));
        }
        // (x) must reduce I
        let xi = |k: usize| -> Result<C::Ideal, InvError> {
            Ok(calc.scaled_sum(&[(x.clone(), &self.power(k)?)])?)
        };
        let mut reduces = false;
        for k in 0..self.policy.n_max {
            if calc.equals(&xi(k)?, &self.power(k + 1)?)? {
                reduces = true;
                break;
            }
        }
        if !reduces {
            return Err(InvError::NotAReductionWithin(self.policy.n_max));
        }
        let mut terms = Vec::new();
        let st = self.policy.stabilize("g1 terms", 1, |n| {
            let mpn = calc.product(&self.maximal, &self.power(n)?)?;
            let mprev = calc.product(&self.maximal, &self.power(n - 1)?)?;
            let denom = calc.scaled_sum(&[(x.clone(), &mprev)])?;
            let t = calc.length_quotient(&mpn, &denom)? as i64;
            if terms.len() == n - 1 {
                terms.push(t);
            }
            Ok(t)
        })?;
        if st.value != 0 {
            return Err(InvError::StabilizationFailed {
                what: "g1 terms do not vanish".into(),
                n_max: self.policy.n_max,
            });
        }
        terms.truncate(st.at - 1);
        Ok(G1Report {
            value: terms.iter().sum::<i64>() - 1,
            terms,
            vanish_from: st.at,
        })
    }
}
