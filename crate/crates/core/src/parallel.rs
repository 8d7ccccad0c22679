//! Execution mode for batch work: independent cases are mapped either on the
//! rayon pool or in order on the calling thread.

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    /// runs sequentially when the crate is built without the `parallel` feature
    #[default]
    Parallel,
}

impl Exec {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// Maps `f` over `items`, preserving order.
    pub fn map<T, U, F>(self, items: Vec<T>, f: F) -> Vec<U>
    where
        T: Send,
        U: Send,
        F: Fn(T) -> U + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            use rayon::prelude::*;
            return items.into_par_iter().map(f).collect();
        }
        items.into_iter().map(f).collect()
    }

    /// Returns the first item (in input order) for which `f` yields `Some`.
    pub fn find_first<T, U, F>(self, items: Vec<T>, f: F) -> Option<U>
    where
        T: Send,
        U: Send,
        F: Fn(T) -> Option<U> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            use rayon::prelude::*;
            return items.into_par_iter().find_map_first(f);
        }
        items.into_iter().find_map(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let xs: Vec<u64> = (0..1000).collect();
        let a = Exec::Sequential.map(xs.clone(), |x| x * x);
        let b = Exec::Parallel.map(xs.clone(), |x| x * x);
        assert_eq!(a, b);
        let f = |x: u64| (x > 10 && x.is_multiple_of(7)).then_some(x);
        assert_eq!(Exec::Parallel.find_first(xs.clone(), f), Some(14));
        assert_eq!(Exec::Sequential.find_first(xs, f), Some(14));
    }
}
