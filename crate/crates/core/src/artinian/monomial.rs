//! Indexing of monomials in degree-then-lex order.
//!
//! Monomials of lower degree come first, so the index of a monomial does not
//! depend on the truncation order; truncating at `m^T` keeps exactly the
//! indices below [`MonomialTable::count_below`]`(T)`.

/// All monomials of degree `< max_degree` in `nvars` variables.
#[derive(Clone, Debug)]
pub struct MonomialTable {
    nvars: usize,
    max_degree: usize,
    // flat exponent vectors, stride nvars
    exps: Vec<u32>,
    degrees: Vec<u32>,
    // count_below[D] = number of monomials of degree < D
    count_below: Vec<usize>,
    // binom[n][k]
    binom: Vec<Vec<usize>>,
}

impl MonomialTable {
    pub fn new(nvars: usize, max_degree: usize) -> Self {
        let top = max_degree + nvars + 1;
        // only C(n, k) with k <= nvars is ever needed
        let kmax = nvars + 1;
        let mut binom = vec![vec![0usize; kmax + 1]; top + 1];
        for n in 0..=top {
            binom[n][0] = 1;
            for k in 1..=n.min(kmax) {
                binom[n][k] = binom[n - 1][k - 1] + binom[n - 1][k];
            }
        }
        let count_below: Vec<usize> = (0..=max_degree)
            .map(|d| {
                if d == 0 {
                    0
                } else {
                    binom[d - 1 + nvars][nvars]
                }
            })
            .collect();

        let mut exps = Vec::with_capacity(count_below[max_degree] * nvars);
        let mut degrees = Vec::with_capacity(count_below[max_degree]);
        let mut buf = vec![0u32; nvars];
        for d in 0..max_degree {
            enumerate_degree(nvars, d as u32, 0, &mut buf, &mut |e| {
                exps.extend_from_slice(e);
                degrees.push(d as u32);
            });
        }
        MonomialTable {
            nvars,
            max_degree,
            exps,
            degrees,
            count_below,
            binom,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Number of monomials of degree `< deg`, i.e. `dim R/m^deg`.
    pub fn count_below(&self, deg: usize) -> usize {
        self.count_below[deg]
    }

    pub fn exponents(&self, idx: usize) -> &[u32] {
        &self.exps[idx * self.nvars..(idx + 1) * self.nvars]
    }

    pub fn degree(&self, idx: usize) -> usize {
        self.degrees[idx] as usize
    }

    /// Index of a monomial, `None` when its degree is out of range.
    pub fn index_of(&self, exps: &[u32]) -> Option<usize> {
        debug_assert_eq!(exps.len(), self.nvars);
        let deg: u32 = exps.iter().sum();
        if deg as usize >= self.max_degree {
            return None;
        }
        let mut rank = 0usize;
        let mut remaining = deg as usize;
        for (i, &a) in exps.iter().enumerate().take(self.nvars - 1) {
            let a = a as usize;
            // monomials with a larger exponent in slot i come first
            let rest = self.nvars - i - 1;
            if remaining > a {
                rank += self.binom[remaining - a - 1 + rest][rest];
            }
            remaining -= a;
        }
        Some(self.count_below[deg as usize] + rank)
    }

    /// Index of the product of two monomials, `None` if its degree is `≥ bound`.
    pub fn mul_index(&self, i: usize, j: usize, bound: usize) -> Option<usize> {
        if self.degrees[i] as usize + self.degrees[j] as usize >= bound.min(self.max_degree) {
            return None;
        }
        let mut buf = [0u32; 16];
        let e = if self.nvars <= 16 {
            let (a, b) = (self.exponents(i), self.exponents(j));
            for k in 0..self.nvars {
                buf[k] = a[k] + b[k];
            }
            &buf[..self.nvars]
        } else {
            let v: Vec<u32> = self
                .exponents(i)
                .iter()
                .zip(self.exponents(j))
                .map(|(a, b)| a + b)
                .collect();
            return self.index_of(&v);
        };
        self.index_of(e)
    }

    /// Index of `x_var · monomial(i)`, if below `bound`.
    pub fn mul_var(&self, var: usize, i: usize, bound: usize) -> Option<usize> {
        self.mul_index(i, self.var_index(var), bound)
    }

    pub fn var_index(&self, var: usize) -> usize {
        // degree-one monomials start at index 1 in lex order x_1, x_2, ...
        1 + var
    }
}

fn enumerate_degree(
    nvars: usize,
    deg: u32,
    slot: usize,
    buf: &mut [u32],
    emit: &mut impl FnMut(&[u32]),
) {
    if slot == nvars - 1 {
        buf[slot] = deg;
        emit(buf);
        return;
    }
    for a in (0..=deg).rev() {
        buf[slot] = a;
        enumerate_degree(nvars, deg - a, slot + 1, buf, emit);
    }
}
