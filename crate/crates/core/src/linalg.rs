//! Linear algebra over GF(2): a dense kernel for small matrices and a sparse
//! incremental eliminator for the large graded maps.

use std::collections::BTreeMap;

/// Right kernel of a dense matrix with `ncols` columns, as the echelon basis
/// indexed by the free columns in increasing order.
pub fn f2_kernel(rows: &[Vec<bool>], ncols: usize) -> Vec<Vec<bool>> {
    assert!(rows.iter().all(|r| r.len() == ncols), "matrix is not rectangular");
    let words = ncols.div_ceil(64);
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| {
            let mut w = vec![0u64; words];
            for (c, &b) in r.iter().enumerate() {
                if b {
                    w[c / 64] |= 1 << (c % 64);
                }
            }
            w
        })
        .collect();
    let bit = |row: &[u64], c: usize| row[c / 64] >> (c % 64) & 1 == 1;

    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&r| bit(&m[r], c)) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && bit(row, c) {
                row.iter_mut().zip(&pivot).for_each(|(a, b)| *a ^= b);
            }
        }
        pivots.push(c);
        rank += 1;
    }

    let mut out = Vec::new();
    let mut is_pivot = vec![false; ncols];
    pivots.iter().for_each(|&c| is_pivot[c] = true);
    for f in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![false; ncols];
        v[f] = true;
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = bit(&m[r], f);
        }
        out.push(v);
    }
    out
}

/// Symmetric difference of two sorted, duplicate-free vectors.
pub fn xor_sorted<T: Ord + Clone>(a: &[T], b: &[T]) -> Vec<T> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j].clone());
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Kernel of a linear map given one source vector at a time. Each pushed
/// image carries a tag (the source vector in some coordinates); images that
/// reduce to zero contribute their reduced tag to the kernel.
#[derive(Debug, Clone)]
pub struct SparseKernel<K> {
    pivots: BTreeMap<K, (Vec<K>, Vec<usize>)>,
    kernel: Vec<Vec<usize>>,
}

impl<K: Ord + Clone> Default for SparseKernel<K> {
    fn default() -> Self {
        SparseKernel { pivots: BTreeMap::new(), kernel: Vec::new() }
    }
}

impl<K: Ord + Clone> SparseKernel<K> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a source vector with the given image. Returns whether the image
    /// was dependent on the earlier ones.
    pub fn push(&mut self, mut image: Vec<K>, mut tag: Vec<usize>) -> bool {
        image.sort();
        image.dedup();
        tag.sort_unstable();
        while let Some(lead) = image.last() {
            let Some((row, row_tag)) = self.pivots.get(lead) else {
                let lead = lead.clone();
                self.pivots.insert(lead, (image, tag));
                return false;
            };
            image = xor_sorted(&image, row);
            tag = xor_sorted(&tag, row_tag);
        }
        if !tag.is_empty() {
            self.kernel.push(tag);
        }
        true
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// The kernel in reduced echelon form, see [`echelonize`].
    pub fn into_kernel(self) -> Vec<Vec<usize>> {
        echelonize(self.kernel)
    }
}

/// Reduced echelon basis of the span of sparse vectors. Each output vector
/// has a distinct least coordinate that appears in no other output vector;
/// vectors are sorted by that coordinate.
pub fn echelonize(vectors: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    let mut rows: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for mut v in vectors {
        v.sort_unstable();
        while let Some(&lead) = v.first() {
            match rows.get(&lead) {
                Some(r) => v = xor_sorted(&v, r),
                None => break,
            }
        }
        if let Some(&lead) = v.first() {
            rows.insert(lead, v);
        }
    }
    // Back substitution, largest pivot first so each row is final before use.
    let keys: Vec<usize> = rows.keys().rev().copied().collect();
    for &p in &keys {
        let pivot_row = rows[&p].clone();
        for &q in keys.iter().filter(|&&q| q < p) {
            let row = &rows[&q];
            if row.binary_search(&p).is_ok() {
                let reduced = xor_sorted(row, &pivot_row);
                rows.insert(q, reduced);
            }
        }
    }
    rows.into_values().collect()
}

/// Every vector of the span of `basis` in a fixed order: the basis vectors,
/// then sums indexed by the masks `1..2^k` in increasing order with single
/// bits skipped, stopping after `limit` vectors.
pub fn span_members(basis: &[Vec<usize>], limit: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = basis.iter().take(limit).cloned().collect();
    let k = basis.len().min(63);
    let mut mask: u64 = 1;
    while out.len() < limit && mask < (1u64 << k) {
        mask += 1;
        if mask.is_power_of_two() || mask >= (1u64 << k) {
            continue;
        }
        let mut v = Vec::new();
        for (i, b) in basis.iter().enumerate().take(k) {
            if mask >> i & 1 == 1 {
                v = xor_sorted(&v, b);
            }
        }
        out.push(v);
    }
    out
}
