use rayon::prelude::*;

/// Runs `f` on every index in `0..count` in parallel and keeps the result
/// with the smallest key. Keys must be unique for the result to be
/// deterministic; callers include the index in the key.
pub(crate) fn par_min<I, K, W>(
    count: u128,
    init: impl Fn() -> I + Sync + Send,
    f: impl Fn(&mut I, u128) -> Option<(K, W)> + Sync + Send,
) -> Option<(K, W)>
where
    K: Ord + Send,
    W: Send,
{
    let count = u64::try_from(count).expect("search space fits in u64");
    (0..count)
        .into_par_iter()
        .map_init(init, |st, i| f(st, i as u128))
        .flatten()
        .min_by(|a, b| a.0.cmp(&b.0))
}
