//! Trial scheduling. With the `parallel` feature, batches of independent
//! trials run on the rayon pool; otherwise (or with
//! [`Execution::Sequential`]) they run in order. Results never depend on the
//! schedule: every trial owns its RNG and the first failure is the one with
//! the lowest trial index.

/// How trial batches are scheduled.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

/// Lowest trial index in `0..trials` for which `f` yields `Some`.
pub(crate) fn find_first<T, F>(exec: Execution, trials: u64, f: F) -> Option<(u64, T)>
where
    T: Send,
    F: Fn(u64) -> Option<T> + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (0..trials)
                .into_par_iter()
                .find_map_first(|t| f(t).map(|x| (t, x)))
        }
        _ => (0..trials).find_map(|t| f(t).map(|x| (t, x))),
    }
}

/// Order-preserving map over a slice.
pub(crate) fn map_ordered<A, B, F>(exec: Execution, items: &[A], f: F) -> Vec<B>
where
    A: Sync,
    B: Send,
    F: Fn(&A) -> B + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_failure_is_schedule_independent() {
        let f = |t: u64| (t % 7 == 3 || t % 11 == 5).then_some(t * 2);
        let seq = find_first(Execution::Sequential, 1000, f);
        let par = find_first(Execution::Parallel, 1000, f);
        assert_eq!(seq, Some((3, 6)));
        assert_eq!(seq, par);
        assert_eq!(find_first(Execution::Parallel, 3, f), None);
    }

    #[test]
    fn map_keeps_order() {
        let xs: Vec<u32> = (0..100).collect();
        assert_eq!(
            map_ordered(Execution::Parallel, &xs, |x| x + 1),
            map_ordered(Execution::Sequential, &xs, |x| x + 1)
        );
    }
}
