//! Numerical semigroups `S = <a_1, ..., a_k>`, the exponent monoids of the
//! rings `k[[t^a_1, ..., t^a_k]]`.

use std::fmt;

use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error("empty generator list")]
    EmptyInput,
    #[error("generators must be positive")]
    NonPositiveGenerator,
    #[error("generators have gcd {0}, expected 1")]
    NotCoprime(u32),
    #[error("{0} is not a positive member of the semigroup")]
    NotMember(i64),
}

/// A numerical semigroup given by its minimal generating set.
///
/// Membership below the conductor is a sieved bit table; everything at or
/// above the conductor is a member.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NumericalSemigroup {
    generators: Vec<u32>,
    frobenius: i64,
    members: Vec<bool>,
}

impl NumericalSemigroup {
    pub fn new(gens: &[u32]) -> Result<Self, SemigroupError> {
        if gens.is_empty() {
            return Err(SemigroupError::EmptyInput);
        }
        if gens.contains(&0) {
            return Err(SemigroupError::NonPositiveGenerator);
        }
        let g = gens.iter().fold(0u32, |acc, &x| acc.gcd(&x));
        if g != 1 {
            return Err(SemigroupError::NotCoprime(g));
        }

        let mut sorted = gens.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let generators = minimize(&sorted);

        // Scan until a run of max(gens) consecutive members appears; it starts
        // at the conductor.
        let run_needed = *generators.last().unwrap() as usize;
        let mut table = vec![true];
        let mut run = 1usize;
        let mut run_start = 0usize;
        while run < run_needed {
            let n = table.len();
            let member = generators
                .iter()
                .any(|&g| g as usize <= n && table[n - g as usize]);
            table.push(member);
            if member {
                if run == 0 {
                    run_start = n;
                }
                run += 1;
            } else {
                run = 0;
            }
        }
        let conductor = run_start;
        table.truncate(conductor);
        Ok(NumericalSemigroup {
            generators,
            frobenius: conductor as i64 - 1,
            members: table,
        })
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    /// Largest integer outside `S`, or −1 when `S = N`.
    pub fn frobenius(&self) -> i64 {
        self.frobenius
    }

    pub fn conductor(&self) -> u32 {
        (self.frobenius + 1) as u32
    }

    pub fn contains(&self, n: i64) -> bool {
        if n < 0 {
            return false;
        }
        match self.members.get(n as usize) {
            Some(&b) => b,
            None => true,
        }
    }

    /// Least member of each residue class modulo `m`, indexed by residue.
    pub fn apery_set(&self, m: u32) -> Result<Vec<u32>, SemigroupError> {
        if m == 0 || !self.contains(m as i64) {
            return Err(SemigroupError::NotMember(m as i64));
        }
        let mut result: Vec<Option<u32>> = vec![None; m as usize];
        let mut found = 0;
        let mut n = 0u32;
        while found < m {
            if self.contains(n as i64) {
                let slot = &mut result[(n % m) as usize];
                if slot.is_none() {
                    *slot = Some(n);
                    found += 1;
                }
            }
            n += 1;
        }
        Ok(result.into_iter().map(|x| x.unwrap()).collect())
    }

    pub fn is_symmetric(&self) -> bool {
        let f = self.frobenius;
        (0..=f).all(|x| self.contains(x) != self.contains(f - x))
    }

    /// `e(R)`: the least positive member.
    pub fn multiplicity(&self) -> u32 {
        self.generators[0]
    }

    /// `mu(m)`: the number of minimal generators.
    pub fn embedding_dimension(&self) -> usize {
        self.generators.len()
    }

    pub fn gaps(&self) -> Vec<u32> {
        (1..self.conductor())
            .filter(|&n| !self.contains(n as i64))
            .collect()
    }
}

impl fmt::Debug for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(u32::to_string).collect();
        write!(f, "<{}>", gens.join(", "))
    }
}

/// Drops every generator expressible through the smaller ones.
fn minimize(sorted: &[u32]) -> Vec<u32> {
    let mut kept: Vec<u32> = Vec::new();
    let top = *sorted.last().unwrap() as usize;
    // reachable[n]: n is a sum of kept generators
    let mut reachable = vec![false; top + 1];
    reachable[0] = true;
    for &g in sorted {
        if reachable[g as usize] {
            continue;
        }
        kept.push(g);
        for n in g as usize..=top {
            if reachable[n - g as usize] {
                reachable[n] = true;
            }
        }
    }
    kept
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sieve_oracle(gens: &[u32]) -> (i64, Vec<bool>) {
        let bound = (gens[0] * gens[gens.len() - 1]) as usize + 1;
        let mut member = vec![false; bound];
        member[0] = true;
        for n in 1..bound {
            member[n] = gens
                .iter()
                .any(|&g| g as usize <= n && member[n - g as usize]);
        }
        let frob = (0..bound)
            .rev()
            .find(|&n| !member[n])
            .map_or(-1, |n| n as i64);
        (frob, member)
    }

    #[test]
    fn natural_numbers() {
        let s = NumericalSemigroup::new(&[1]).unwrap();
        assert_eq!(s.frobenius(), -1);
        assert_eq!(s.conductor(), 0);
        assert!(s.is_symmetric());
        assert_eq!(s.multiplicity(), 1);
        assert_eq!(s.embedding_dimension(), 1);
        assert!(s.gaps().is_empty());
        assert_eq!(s.apery_set(1).unwrap(), vec![0]);
    }

    #[test]
    fn family_e5() {
        let s = NumericalSemigroup::new(&[5, 6, 7, 8]).unwrap();
        assert_eq!(s.frobenius(), 9);
        assert_eq!(s.conductor(), 10);
        assert!(!s.contains(9));
        assert!(s.is_symmetric());
        assert_eq!(s.apery_set(5).unwrap(), vec![0, 6, 7, 8, 14]);
        assert_eq!(s.multiplicity(), 5);
        assert_eq!(s.embedding_dimension(), 4);
    }

    #[test]
    fn ring_6_11_15_31() {
        let gens = [6, 11, 15, 31];
        let s = NumericalSemigroup::new(&gens).unwrap();
        let (frob, member) = sieve_oracle(&gens);
        assert_eq!(s.frobenius(), frob);
        for (n, &m) in member.iter().enumerate() {
            assert_eq!(s.contains(n as i64), m, "n = {n}");
        }
        assert!(s.contains(0));
        assert!(s.contains(37));
        assert_eq!(s.embedding_dimension(), 4);
    }

    #[test]
    fn not_symmetric() {
        let s = NumericalSemigroup::new(&[4, 5, 6, 7]).unwrap();
        assert_eq!(s.gaps(), vec![1, 2, 3]);
        assert!(!s.is_symmetric());
        assert_eq!(s.apery_set(4).unwrap(), vec![0, 5, 6, 7]);
    }

    #[test]
    fn redundant_generators_dropped() {
        let s = NumericalSemigroup::new(&[6, 4, 10, 9, 4]).unwrap();
        assert_eq!(s.generators(), &[4, 6, 9]);
    }

    #[test]
    fn errors() {
        assert_eq!(
            NumericalSemigroup::new(&[]),
            Err(SemigroupError::EmptyInput)
        );
        assert_eq!(
            NumericalSemigroup::new(&[4, 6]),
            Err(SemigroupError::NotCoprime(2))
        );
        assert_eq!(
            NumericalSemigroup::new(&[0, 3]),
            Err(SemigroupError::NonPositiveGenerator)
        );
        let s = NumericalSemigroup::new(&[3, 5]).unwrap();
        assert_eq!(s.apery_set(4), Err(SemigroupError::NotMember(4)));
    }
}
