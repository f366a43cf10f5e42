//! Choice between data-parallel and sequential evaluation.
//!
//! Every parallel code path in the crate goes through [`Execution`], so the
//! results are identical in both modes: work is split into index ranges and
//! recombined in index order.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    /// The mode actually used; `Parallel` degrades to `Sequential` when the
    /// crate is built without the `parallel` feature.
    pub fn effective(self) -> Execution {
        if cfg!(feature = "parallel") {
            self
        } else {
            Execution::Sequential
        }
    }

    /// Evaluates `f` on `0..len` and returns the results in index order.
    pub fn map_range<R, F>(self, len: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        match self.effective() {
            #[cfg(feature = "parallel")]
            Execution::Parallel => {
                use rayon::prelude::*;
                (0..len).into_par_iter().map(f).collect()
            }
            _ => (0..len).map(f).collect(),
        }
    }

    /// Evaluates `f` on every item of `items`, preserving order.
    pub fn map_slice<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        self.map_range(items.len(), |i| f(&items[i]))
    }

    /// Splits `0..total` into contiguous chunks of at most `chunk` indices
    /// and maps each chunk `(start, end)`; results come back in chunk order.
    pub fn map_chunks<R, F>(self, total: u64, chunk: u64, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(u64, u64) -> R + Sync + Send,
    {
        let chunk = chunk.max(1);
        let count = total.div_ceil(chunk) as usize;
        self.map_range(count, |c| {
            let start = c as u64 * chunk;
            f(start, (start + chunk).min(total))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let a = Execution::Sequential.map_range(1000, |i| i * i);
        let b = Execution::Parallel.map_range(1000, |i| i * i);
        assert_eq!(a, b);
        let c = Execution::Parallel.map_chunks(10, 3, |s, e| (s, e));
        assert_eq!(c, vec![(0, 3), (3, 6), (6, 9), (9, 10)]);
    }
}
