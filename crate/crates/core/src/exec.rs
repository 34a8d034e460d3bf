//! Data-parallel helpers. With the `parallel` feature off every mode runs
//! sequentially.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// Whether work is actually spread over threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// Maps `f` over `items`, keeping order and stopping at an error.
    pub fn try_map<T, U, E, Fun>(self, items: &[T], f: Fun) -> Result<Vec<U>, E>
    where
        T: Sync,
        U: Send,
        E: Send,
        Fun: Fn(&T) -> Result<U, E> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let xs: Vec<u64> = (0..100).collect();
        let sq = |x: &u64| -> Result<u64, ()> { Ok(x * x) };
        assert_eq!(
            Exec::Sequential.try_map(&xs, sq),
            Exec::Parallel.try_map(&xs, sq)
        );
        let fail = |x: &u64| if *x == 50 { Err(*x) } else { Ok(*x) };
        assert_eq!(Exec::Parallel.try_map(&xs, fail), Err(50));
    }
}
