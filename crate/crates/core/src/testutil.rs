//! Shared helpers for unit tests.

/// Every sequence of positive integers with length at most `max_len` and sum
/// at most `max_sum`, the empty sequence included.
pub(crate) fn all_sequences(max_sum: u32, max_len: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    let mut frontier: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for s in &frontier {
            let used: u32 = s.iter().sum();
            for i in 1..=max_sum - used {
                let mut t = s.clone();
                t.push(i);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}
