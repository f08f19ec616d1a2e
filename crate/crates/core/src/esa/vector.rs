use serde::{Deserialize, Serialize};

/// Sparse vector over concept ids: strictly increasing ids, no zero weights.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SparseVector {
    entries: Vec<(u32, f64)>,
}

impl SparseVector {
    /// Builds from arbitrary entries: sorts by id, sums duplicates, drops zeros.
    pub fn from_entries(mut entries: Vec<(u32, f64)>) -> Self {
        entries.sort_by_key(|(id, _)| *id);
        let mut out: Vec<(u32, f64)> = Vec::with_capacity(entries.len());
        for (id, w) in entries {
            match out.last_mut() {
                Some((last, acc)) if *last == id => *acc += w,
                _ => out.push((id, w)),
            }
        }
        out.retain(|(_, w)| *w != 0.0);
        SparseVector { entries: out }
    }

    /// Wraps entries that already satisfy the invariants.
    pub(crate) fn from_sorted_unchecked(entries: Vec<(u32, f64)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        SparseVector { entries }
    }

    pub fn entries(&self) -> &[(u32, f64)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn norm(&self) -> f64 {
        self.entries.iter().map(|(_, w)| w * w).sum::<f64>().sqrt()
    }

    /// Merge-join dot product.
    pub fn dot(&self, other: &SparseVector) -> f64 {
        let (a, b) = (&self.entries, &other.entries);
        let (mut i, mut j, mut sum) = (0, 0, 0.0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    sum += a[i].1 * b[j].1;
                    i += 1;
                    j += 1;
                }
            }
        }
        sum
    }

    /// Cosine similarity; 0 when either vector is empty. Clamped to [-1, 1]
    /// against rounding.
    pub fn cosine(&self, other: &SparseVector) -> f64 {
        if self.is_empty() || other.is_empty() {
            return 0.0;
        }
        let denom = self.norm() * other.norm();
        if denom == 0.0 {
            return 0.0;
        }
        (self.dot(other) / denom).clamp(-1.0, 1.0)
    }

    /// Adds `other` into `self`.
    pub fn add(&self, other: &SparseVector) -> SparseVector {
        let mut all = self.entries.clone();
        all.extend_from_slice(&other.entries);
        SparseVector::from_entries(all)
    }

    /// Keeps the `k` largest weights (ties to the lower id).
    pub fn truncate_top_k(&mut self, k: usize) {
        if self.entries.len() <= k {
            return;
        }
        let mut by_weight = self.entries.clone();
        by_weight.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
        by_weight.truncate(k);
        by_weight.sort_by_key(|(id, _)| *id);
        self.entries = by_weight;
    }

    pub(crate) fn scale(&mut self, factor: f64) {
        for (_, w) in &mut self.entries {
            *w *= factor;
        }
    }
}
