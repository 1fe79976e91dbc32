//! Batch execution policy.
//!
//! Batch work (enumeration chunks, orbit census, grid scans, round-trip
//! harnesses) goes through [`Execution::map`]. With the `parallel` feature the
//! default is a rayon pool; without it everything runs on the calling thread.
//! Output order always matches input order, so results do not depend on the
//! policy.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[derive(Default)]
pub enum Execution {
    Sequential,
    #[cfg(feature = "parallel")]
    #[default]
    Parallel,
}


impl Execution {
    pub fn map<T, R, G>(self, items: Vec<T>, g: G) -> Vec<R>
    where
        T: Send,
        R: Send,
        G: Fn(T) -> R + Send + Sync,
    {
        match self {
            Execution::Sequential => items.into_iter().map(g).collect(),
            #[cfg(feature = "parallel")]
            Execution::Parallel => {
                use rayon::prelude::*;
                items.into_par_iter().map(g).collect()
            }
        }
    }

    pub fn map_range<R, G>(self, n: usize, g: G) -> Vec<R>
    where
        R: Send,
        G: Fn(usize) -> R + Send + Sync,
    {
        self.map((0..n).collect(), g)
    }
}
