use crate::error::{Result, SecnetError};

/// Largest k accepted by [`partitions`]; p(40) = 37338 rows.
pub const DEFAULT_PARTITION_CAP: usize = 40;

/// All integer partitions of `k`, one row per partition, rows in
/// reverse-lexicographic order (`[k]` first, `k` ones last).
///
/// For k = 0 the table holds a single empty row: one partition with no
/// parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionTable {
    k: usize,
    rows: Vec<Vec<usize>>,
}

impl PartitionTable {
    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of rows, |ξ_k| = p(k).
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn row(&self, j: usize) -> &[usize] {
        &self.rows[j]
    }

    /// |ξ_{j,k}|: number of parts in row `j`.
    pub fn part_count(&self, j: usize) -> usize {
        self.rows[j].len()
    }

    /// ξ_{i,j,k}: i-th part (0-based) of row `j`.
    pub fn entry(&self, i: usize, j: usize) -> usize {
        self.rows[j][i]
    }

    /// φ_{·,j,k}: multiplicity of each distinct part in row `j`, largest
    /// value first.
    pub fn multiplicities(&self, j: usize) -> Vec<usize> {
        let row = &self.rows[j];
        let mut out: Vec<usize> = Vec::new();
        let mut prev = None;
        for &p in row {
            if prev == Some(p) {
                *out.last_mut().unwrap() += 1;
            } else {
                out.push(1);
                prev = Some(p);
            }
        }
        out
    }

    /// |φ_{j,k}|: number of distinct parts in row `j`.
    pub fn distinct_count(&self, j: usize) -> usize {
        self.multiplicities(j).len()
    }

    /// Ξ_{j,k} for `n_j` jamming streams:
    ///
    /// Π_parts Π_{t=1}^{part} (N_j+1−t)(t−1−δ) / (t(N_j−t+δ)), divided by
    /// the product of the factorials of the part multiplicities.
    pub fn xi_coefficient(&self, j: usize, n_j: usize, delta: f64) -> f64 {
        let nj = n_j as f64;
        let mut num = 1.0;
        'parts: for &part in &self.rows[j] {
            for t in 1..=part {
                let tf = t as f64;
                let factor = (nj + 1.0 - tf) * (tf - 1.0 - delta) / (tf * (nj - tf + delta));
                num *= factor;
                if num == 0.0 {
                    break 'parts;
                }
            }
        }
        let den: f64 = self.multiplicities(j).iter().map(|&m| super::factorial(m)).product();
        num / den
    }
}

/// Partitions of `k` with the default cap.
pub fn partitions(k: usize) -> Result<PartitionTable> {
    partitions_with_cap(k, DEFAULT_PARTITION_CAP)
}

pub fn partitions_with_cap(k: usize, cap: usize) -> Result<PartitionTable> {
    if k > cap {
        return Err(SecnetError::PartitionCap { k, cap });
    }
    let mut rows = Vec::new();
    let mut current = Vec::with_capacity(k);
    descend(k, k, &mut current, &mut rows);
    Ok(PartitionTable { k, rows })
}

// Emits partitions of `remaining` with parts ≤ `max_part`, largest part
// tried first, which yields reverse-lexicographic order.
fn descend(remaining: usize, max_part: usize, current: &mut Vec<usize>, rows: &mut Vec<Vec<usize>>) {
    if remaining == 0 {
        rows.push(current.clone());
        return;
    }
    for part in (1..=max_part.min(remaining)).rev() {
        current.push(part);
        descend(remaining - part, part, current, rows);
        current.pop();
    }
}

/// Ξ_{j,n} for row `j` of the partitions of `n`.
pub fn xi_coefficient(j: usize, n: usize, n_j: usize, delta: f64) -> Result<f64> {
    let table = partitions(n)?;
    if j >= table.len() {
        return Err(SecnetError::Domain(format!("row {j} out of range for partitions of {n}")));
    }
    Ok(table.xi_coefficient(j, n_j, delta))
}
