//! Sparse row echelon forms over an exact field.
//!
//! Rows are sorted `(column, coefficient)` lists. The pivot of a row is its
//! lowest column, so in degree-then-lex order the pivot is the leading
//! low-degree term.

use std::collections::BTreeMap;

use super::field::Field;

pub type Row<E> = Vec<(u32, E)>;

const NO_PIVOT: u32 = u32::MAX;

/// An echelon basis under construction. Every stored row has leading
/// coefficient one and vanishes at the pivots of the rows stored before it.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    rows: Vec<Row<F::Elem>>,
    pivot_of: Vec<u32>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F, ncols: usize) -> Self {
        Echelon {
            field,
            rows: Vec::new(),
            pivot_of: vec![NO_PIVOT; ncols],
        }
    }

    /// Starts from rows that are already fully reduced with distinct pivots.
    pub fn from_reduced(field: F, ncols: usize, rows: &[Row<F::Elem>]) -> Self {
        let mut e = Echelon::new(field, ncols);
        for r in rows {
            e.pivot_of[r[0].0 as usize] = e.rows.len() as u32;
            e.rows.push(r.clone());
        }
        e
    }

    pub fn ncols(&self) -> usize {
        self.pivot_of.len()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Row<F::Elem>] {
        &self.rows
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_of[col] != NO_PIVOT
    }

    /// Normal form of `v`: the unique vector congruent to `v` modulo the span
    /// that vanishes at every pivot column. Columns beyond `ncols` are dropped.
    pub fn reduce(&self, v: &[(u32, F::Elem)]) -> Row<F::Elem> {
        let f = &self.field;
        let n = self.ncols() as u32;
        // fast path: nothing touches a pivot
        if v.iter()
            .all(|(c, _)| *c < n && self.pivot_of[*c as usize] == NO_PIVOT)
        {
            return v.to_vec();
        }
        let mut acc: BTreeMap<u32, F::Elem> = v.iter().filter(|(c, _)| *c < n).cloned().collect();
        let mut out = Vec::new();
        while let Some((col, coef)) = acc.pop_first() {
            if f.is_zero(&coef) {
                continue;
            }
            let p = self.pivot_of[col as usize];
            if p == NO_PIVOT {
                out.push((col, coef));
                continue;
            }
            for (c2, val) in &self.rows[p as usize][1..] {
                let slot = acc.entry(*c2).or_insert_with(|| f.zero());
                f.sub_mul_assign(slot, &coef, val);
            }
        }
        out
    }

    pub fn reduces_to_zero(&self, v: &[(u32, F::Elem)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span. Returns whether the rank grew.
    pub fn insert(&mut self, v: &[(u32, F::Elem)]) -> bool {
        self.insert_reduced(self.reduce(v)).is_some()
    }

    /// Inserts a vector already in normal form, returning the stored row.
    pub fn insert_reduced(&mut self, mut r: Row<F::Elem>) -> Option<&Row<F::Elem>> {
        if r.is_empty() {
            return None;
        }
        let f = &self.field;
        let lead = f.inv(&r[0].1);
        for (_, val) in r.iter_mut() {
            *val = f.mul(val, &lead);
        }
        self.pivot_of[r[0].0 as usize] = self.rows.len() as u32;
        self.rows.push(r);
        self.rows.last()
    }

    /// Fully reduced basis sorted by pivot.
    pub fn into_reduced(self) -> Vec<Row<F::Elem>> {
        let Echelon {
            field,
            mut rows,
            pivot_of,
        } = self;
        rows.sort_by_key(|r| r[0].0);
        let mut done: Echelon<F> = Echelon::new(field, pivot_of.len());
        for row in rows.into_iter().rev() {
            let mut reduced = vec![row[0].clone()];
            reduced.extend(done.reduce(&row[1..]));
            done.pivot_of[reduced[0].0 as usize] = done.rows.len() as u32;
            done.rows.push(reduced);
        }
        done.rows.reverse();
        done.rows
    }
}

/// Kernel of a linear map given by the images of a list of source vectors.
///
/// Each source is pushed as the pair `(image, source)`; the returned vectors
/// span `{Σ c_k source_k : Σ c_k image_k = 0}`.
pub struct KernelTracker<F: Field> {
    width: u32,
    echelon: Echelon<F>,
}

impl<F: Field> KernelTracker<F> {
    pub fn new(field: F, image_width: usize, source_width: usize) -> Self {
        KernelTracker {
            width: image_width as u32,
            echelon: Echelon::new(field, image_width + source_width),
        }
    }

    pub fn push(&mut self, image: &[(u32, F::Elem)], source: &[(u32, F::Elem)]) {
        let mut v: Row<F::Elem> = image.to_vec();
        v.extend(source.iter().map(|(c, e)| (c + self.width, e.clone())));
        self.echelon.insert(&v);
    }

    pub fn kernel(self) -> Vec<Row<F::Elem>> {
        let w = self.width;
        self.echelon
            .rows
            .into_iter()
            .filter(|r| r[0].0 >= w)
            .map(|r| r.into_iter().map(|(c, e)| (c - w, e)).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::super::field::PrimeField;
    use super::*;

    fn f() -> PrimeField {
        PrimeField::new(101).unwrap()
    }

    #[test]
    fn rank_and_reduction() {
        let mut e = Echelon::new(f(), 4);
        assert!(e.insert(&[(0, 1), (1, 1)]));
        assert!(e.insert(&[(1, 1), (2, 1)]));
        assert!(!e.insert(&[(0, 1), (2, 100)]));
        assert_eq!(e.rank(), 2);
        assert!(e.reduces_to_zero(&[(0, 2), (1, 3), (2, 1)]));
        assert_eq!(e.reduce(&[(0, 1)]), vec![(2, 1)]);
    }

    #[test]
    fn reduced_form_is_canonical() {
        let mut a = Echelon::new(f(), 3);
        a.insert(&[(0, 1), (1, 1)]);
        a.insert(&[(1, 1), (2, 1)]);
        let mut b = Echelon::new(f(), 3);
        b.insert(&[(1, 2), (2, 2)]);
        b.insert(&[(0, 5), (2, 96)]);
        assert_eq!(a.into_reduced(), b.into_reduced());
    }

    #[test]
    fn kernel_of_sum_map() {
        // (a, b) -> a + b on k^1
        let mut k = KernelTracker::new(f(), 1, 2);
        k.push(&[(0, 1)], &[(0, 1)]);
        k.push(&[(0, 1)], &[(1, 1)]);
        let ker = k.kernel();
        assert_eq!(ker.len(), 1);
        assert_eq!(ker[0], vec![(0, 1), (1, 100)]);
    }
}
