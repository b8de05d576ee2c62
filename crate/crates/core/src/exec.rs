//! Worker-count plumbing shared by the fixpoint engines.
//!
//! With the `parallel` feature and more than one thread, work runs on a
//! dedicated rayon pool. Otherwise every call degrades to a plain sequential
//! loop. Results are returned in input order either way.

#[cfg(feature = "parallel")]
use std::sync::Arc;

#[derive(Clone)]
pub struct Exec {
    threads: usize,
    #[cfg(feature = "parallel")]
    pool: Option<Arc<rayon::ThreadPool>>,
}

impl std::fmt::Debug for Exec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Exec(threads={})", self.threads)
    }
}

impl Default for Exec {
    fn default() -> Self {
        Exec::sequential()
    }
}

impl Exec {
    pub fn sequential() -> Self {
        Exec {
            threads: 1,
            #[cfg(feature = "parallel")]
            pool: None,
        }
    }

    /// `threads == 0` means one worker per available core.
    pub fn with_threads(threads: usize) -> Self {
        let threads = if threads == 0 {
            std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
        } else {
            threads
        };
        #[cfg(feature = "parallel")]
        {
            if threads > 1 {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build()
                    .expect("thread pool");
                return Exec {
                    threads,
                    pool: Some(Arc::new(pool)),
                };
            }
        }
        Exec {
            threads,
            #[cfg(feature = "parallel")]
            pool: None,
        }
    }

    pub fn threads(&self) -> usize {
        self.threads
    }

    pub fn is_parallel(&self) -> bool {
        #[cfg(feature = "parallel")]
        {
            self.pool.is_some()
        }
        #[cfg(not(feature = "parallel"))]
        {
            false
        }
    }

    pub fn map<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if let Some(pool) = &self.pool {
            use rayon::prelude::*;
            return pool.install(|| items.par_iter().map(&f).collect());
        }
        items.iter().map(f).collect()
    }

    /// Maps fixed-size chunks of `items` and concatenates the per-chunk outputs in order.
    pub fn flat_map_chunks<T, R, F>(&self, items: &[T], chunk: usize, f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&[T]) -> Vec<R> + Sync + Send,
    {
        let chunk = chunk.max(1);
        #[cfg(feature = "parallel")]
        if let Some(pool) = &self.pool {
            use rayon::prelude::*;
            let parts: Vec<Vec<R>> = pool.install(|| items.par_chunks(chunk).map(&f).collect());
            return parts.into_iter().flatten().collect();
        }
        items.chunks(chunk).flat_map(f).collect()
    }

    /// Maps index ranges `[lo, hi)` covering `0..n` and concatenates the outputs in order.
    pub fn flat_map_ranges<R, F>(&self, n: usize, chunk: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize, usize) -> Vec<R> + Sync + Send,
    {
        let chunk = chunk.max(1);
        let starts: Vec<usize> = (0..n).step_by(chunk).collect();
        self.map(&starts, |&lo| f(lo, (lo + chunk).min(n)))
            .into_iter()
            .flatten()
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let items: Vec<u32> = (0..1000).collect();
        for t in [1, 4] {
            let e = Exec::with_threads(t);
            assert_eq!(e.map(&items, |x| x * 2), items.iter().map(|x| x * 2).collect::<Vec<_>>());
            assert_eq!(e.flat_map_chunks(&items, 7, |c| c.to_vec()), items);
            assert_eq!(e.flat_map_ranges(1000, 33, |lo, hi| (lo as u32..hi as u32).collect()), items);
        }
    }
}
