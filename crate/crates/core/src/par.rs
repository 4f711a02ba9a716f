//! Order-preserving data parallelism with a sequential fallback.
//!
//! With the `parallel` feature off, [`Exec::Parallel`] runs sequentially.

/// How per-item work is scheduled. Results always come back in input order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            Exec::Sequential => items.iter().map(f).collect(),
            Exec::Parallel => par_map(items, f),
        }
    }

    /// Whether `Parallel` actually uses worker threads in this build.
    pub fn parallel_available() -> bool {
        cfg!(feature = "parallel")
    }

    /// `Sequential` for one job, `Parallel` otherwise.
    pub fn for_jobs(jobs: usize) -> Exec {
        if jobs == 1 {
            Exec::Sequential
        } else {
            Exec::Parallel
        }
    }
}

#[cfg(feature = "parallel")]
fn par_map<T: Sync, R: Send, F: Fn(&T) -> R + Sync + Send>(items: &[T], f: F) -> Vec<R> {
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn par_map<T: Sync, R: Send, F: Fn(&T) -> R + Sync + Send>(items: &[T], f: F) -> Vec<R> {
    items.iter().map(f).collect()
}

/// Size the global worker pool. Zero means one worker per core. Only the
/// first call in a process takes effect.
pub fn configure_threads(jobs: usize) -> Result<(), String> {
    #[cfg(feature = "parallel")]
    {
        rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global().map_err(|e| e.to_string())
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = jobs;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let v: Vec<u64> = (0..1000).collect();
        let seq = Exec::Sequential.map(&v, |x| x * x);
        let par = Exec::Parallel.map(&v, |x| x * x);
        assert_eq!(seq, par);
        assert_eq!(par[999], 999 * 999);
    }

    #[test]
    fn job_selection() {
        assert_eq!(Exec::for_jobs(1), Exec::Sequential);
        assert_eq!(Exec::for_jobs(0), Exec::Parallel);
    }
}
