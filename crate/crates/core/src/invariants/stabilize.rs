use super::InvError;

/// How "for all large n" is decided: a value is accepted once it repeats over
/// `window` consecutive indices plus two more that re-verify it, all at most
/// `n_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StabilizationPolicy {
    pub window: usize,
    pub n_max: usize,
}

impl Default for StabilizationPolicy {
    fn default() -> Self {
        StabilizationPolicy {
            window: 3,
            n_max: 40,
        }
    }
}

/// A sequence value together with the first index of its constant run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stabilized<T> {
    pub value: T,
    pub at: usize,
}

impl StabilizationPolicy {
    pub fn new(window: usize, n_max: usize) -> Result<Self, InvError> {
        let p = StabilizationPolicy { window, n_max };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), InvError> {
        if self.window < 2 {
            return Err(InvError::BadPolicy(format!("window {} < 2", self.window)));
        }
        if self.n_max < self.window + 2 {
            return Err(InvError::BadPolicy(format!(
                "n_max {} < window + 2",
                self.n_max
            )));
        }
        Ok(())
    }

    /// Length of an accepting run.
    pub fn run_length(&self) -> usize {
        self.window + 2
    }

    /// Scans `f(start), f(start+1), ...` for the first accepting run.
    pub fn stabilize<T: PartialEq + Clone>(
        &self,
        what: &str,
        start: usize,
        mut f: impl FnMut(usize) -> Result<T, InvError>,
    ) -> Result<Stabilized<T>, InvError> {
        let need = self.run_length();
        let mut run_start = start;
        let mut current: Option<T> = None;
        let mut run = 0;
        for n in start..=self.n_max {
            let v = f(n)?;
            if current.as_ref() == Some(&v) {
                run += 1;
            } else {
                current = Some(v);
                run_start = n;
                run = 1;
            }
            if run == need {
                return Ok(Stabilized {
                    value: current.unwrap(),
                    at: run_start,
                });
            }
        }
        Err(InvError::StabilizationFailed {
            what: what.to_string(),
            n_max: self.n_max,
        })
    }
}
