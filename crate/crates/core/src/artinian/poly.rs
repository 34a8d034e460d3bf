use std::collections::BTreeMap;

use super::field::Field;

/// A polynomial as a sparse map from exponent vectors to nonzero
/// coefficients. Untruncated; the ring truncates when it embeds one.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<E> {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, E>,
}

impl<E: Clone + PartialEq> Poly<E> {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant<F: Field<Elem = E>>(f: &F, nvars: usize, c: E) -> Self {
        Self::monomial(f, vec![0; nvars], c)
    }

    pub fn monomial<F: Field<Elem = E>>(f: &F, exps: Vec<u32>, c: E) -> Self {
        let mut p = Poly::zero(exps.len());
        if !f.is_zero(&c) {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn var<F: Field<Elem = E>>(f: &F, nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(f, e, f.one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &E)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn constant_term(&self) -> Option<&E> {
        self.terms.get(&vec![0; self.nvars])
    }

    /// Lowest total degree of a term, `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.iter().sum()).min()
    }

    fn add_term<F: Field<Elem = E>>(&mut self, f: &F, exps: Vec<u32>, c: E) {
        let slot = self.terms.entry(exps);
        match slot {
            std::collections::btree_map::Entry::Vacant(v) => {
                if !f.is_zero(&c) {
                    v.insert(c);
                }
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = f.add(o.get(), &c);
                if f.is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        let mut r = self.clone();
        for (k, v) in &other.terms {
            r.add_term(f, k.clone(), v.clone());
        }
        r
    }

    pub fn neg<F: Field<Elem = E>>(&self, f: &F) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), f.neg(v)))
                .collect(),
        }
    }

    pub fn sub<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        self.add(f, &other.neg(f))
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        let mut r = Poly::zero(self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let e: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                r.add_term(f, e, f.mul(ca, cb));
            }
        }
        r
    }

    pub fn pow<F: Field<Elem = E>>(&self, f: &F, n: u32) -> Self {
        let mut acc = Poly::constant(f, self.nvars, f.one());
        for _ in 0..n {
            acc = acc.mul(f, self);
        }
        acc
    }

    /// Renders with the given variable names, highest-degree terms last.
    pub fn render<F: Field<Elem = E>>(&self, f: &F, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().collect();
        // degree, then lex with x_1 first
        keys.sort_by(|a, b| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            da.cmp(&db).then_with(|| b.cmp(a))
        });
        let mut out = String::new();
        for (i, k) in keys.iter().enumerate() {
            let c = f.render(&self.terms[*k]);
            let (neg, mag) = match c.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, c),
            };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = k
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| {
                    if e == 1 {
                        names[v].clone()
                    } else {
                        format!("{}^{}", names[v], e)
                    }
                })
                .collect();
            if mono.is_empty() {
                out.push_str(&mag);
            } else {
                if mag != "1" {
                    out.push_str(&mag);
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}
