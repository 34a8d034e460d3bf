#![allow(dead_code)]

use fibercone_core::artinian::{Field, Poly, TruncatedLocalRing};
use fibercone_core::{NumericalSemigroup, SemigroupIdeal, SemigroupRing};

pub struct SgpExample {
    pub ring: SemigroupRing,
    pub i: SemigroupIdeal,
    pub j: SemigroupIdeal,
}

pub fn sgp_example(gens: &[u32], i: &[u32], j: &[u32]) -> SgpExample {
    let ring = SemigroupRing::new(NumericalSemigroup::new(gens).unwrap());
    SgpExample {
        i: ring.ideal(i).unwrap(),
        j: ring.ideal(j).unwrap(),
        ring,
    }
}

pub fn sgp6() -> SgpExample {
    sgp_example(&[6, 11, 15, 31], &[6, 11, 31], &[6])
}

pub fn sgp7() -> SgpExample {
    sgp_example(&[7, 15, 17, 33], &[7, 17, 33], &[7])
}

pub fn sgp4() -> SgpExample {
    sgp_example(&[4, 5, 6, 7], &[4, 5, 6], &[4])
}

/// A polynomial from `(coefficient, exponents)` terms.
pub fn poly<F: Field>(f: &F, nvars: usize, terms: &[(i64, &[u32])]) -> Poly<F::Elem> {
    terms.iter().fold(Poly::zero(nvars), |acc, (c, e)| {
        acc.add(f, &Poly::monomial(f, e.to_vec(), f.from_i64(*c)))
    })
}

pub fn mono<F: Field>(f: &F, e: &[u32]) -> Poly<F::Elem> {
    Poly::monomial(f, e.to_vec(), f.one())
}

pub fn plane_gens<F: Field>(f: &F) -> (Vec<Poly<F::Elem>>, Vec<Poly<F::Elem>>) {
    (
        vec![mono(f, &[3, 0]), mono(f, &[2, 1]), mono(f, &[0, 3])],
        vec![mono(f, &[3, 0]), mono(f, &[0, 3])],
    )
}

pub fn space_gens<F: Field>(f: &F) -> (Vec<Poly<F::Elem>>, Vec<Poly<F::Elem>>) {
    let i = [
        [3, 0, 0],
        [0, 3, 0],
        [0, 0, 3],
        [1, 1, 0],
        [0, 1, 1],
        [1, 0, 1],
    ]
    .iter()
    .map(|e| mono(f, e))
    .collect();
    let j = vec![
        poly(f, 3, &[(1, &[3, 0, 0]), (1, &[0, 1, 1])]),
        poly(f, 3, &[(1, &[0, 3, 0]), (1, &[0, 0, 3]), (1, &[1, 0, 1])]),
        poly(f, 3, &[(1, &[1, 0, 1]), (1, &[1, 1, 0])]),
    ];
    (i, j)
}

pub fn ring<F: Field>(d: usize, n: usize, f: F) -> TruncatedLocalRing<F> {
    TruncatedLocalRing::new(d, n, f).unwrap()
}
