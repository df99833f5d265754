//! Numerical constraints on splitting patterns of anisotropic quadratic
//! forms: the Hoffmann bound on the first Witt index, the 2-adic bound
//! relating `i₁` to the higher Witt indices, and the possible dimensions of
//! small anisotropic forms in `I^n_q`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fp::{vp, Prime};

fn v2(n: u64) -> u32 {
    vp(n, Prime::TWO).expect("nonzero argument")
}

/// All `i ∈ [1, ⌊dim/2⌋]` with `i ≤ 2^{v₂(dim − i)}`.
pub fn hoffmann_feasible_i1(dim: u64) -> Result<Vec<u64>> {
    if dim < 2 {
        return Err(Error::InvalidArgument(format!(
            "dimension {dim} has no first Witt index"
        )));
    }
    Ok((1..=dim / 2)
        .filter(|&i| i <= 1u64 << v2(dim - i))
        .collect())
}

/// `{2^{n+1} − 2^{i+1} : 0 ≤ i ≤ n}`, ascending.
pub fn inq_allowed_dims(n: u32) -> Result<Vec<u64>> {
    if n == 0 || n > 62 {
        return Err(Error::InvalidArgument(format!(
            "n = {n} out of range 1..=62"
        )));
    }
    let top = 1u64 << (n + 1);
    Ok((0..=n).rev().map(|i| top - (1u64 << (i + 1))).collect())
}

/// Relative higher Witt indices `i₁, …, i_h` of a form of dimension `dim`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WittChain {
    dim: u64,
    indices: Vec<u64>,
}

impl WittChain {
    pub fn new(dim: u64, indices: Vec<u64>) -> Result<Self> {
        if indices.contains(&0) {
            return Err(Error::InvalidArgument("Witt indices are positive".into()));
        }
        let used: u64 = indices.iter().map(|&i| 2 * i).sum();
        if used > dim + 1 {
            return Err(Error::InvalidArgument(format!(
                "indices use {used} dimensions of a {dim}-dimensional form"
            )));
        }
        Ok(WittChain { dim, indices })
    }

    pub fn dim(&self) -> u64 {
        self.dim
    }

    pub fn indices(&self) -> &[u64] {
        &self.indices
    }

    pub fn height(&self) -> usize {
        self.indices.len()
    }

    /// `v₂(i₁) ≥ min_{j ≥ 2} v₂(i_j) − 1`; needs height at least 2.
    pub fn v2_chain_ok(&self) -> Result<bool> {
        if self.height() <= 1 {
            return Err(Error::InvalidArgument(
                "the 2-adic bound needs height at least 2".into(),
            ));
        }
        let rest = self.indices[1..]
            .iter()
            .map(|&i| v2(i) as i64)
            .min()
            .unwrap();
        Ok(v2(self.indices[0]) as i64 >= rest - 1)
    }
}

impl fmt::Display for WittChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices.iter().map(u64::to_string).collect();
        write!(f, "dim {}: ({})", self.dim, idx.join(", "))
    }
}

/// Every chain obtained by picking a Hoffmann-feasible `i_j` for the current
/// anisotropic dimension until at most one dimension is left.
pub fn hoffmann_chains(dim: u64) -> Vec<WittChain> {
    fn go(left: u64, prefix: &mut Vec<u64>, dim: u64, out: &mut Vec<WittChain>) {
        if left <= 1 {
            out.push(WittChain {
                dim,
                indices: prefix.clone(),
            });
            return;
        }
        for i in hoffmann_feasible_i1(left).expect("left ≥ 2") {
            prefix.push(i);
            go(left - 2 * i, prefix, dim, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(dim, &mut Vec::new(), dim, &mut out);
    out
}

/// Chains of height ≥ 2 from [`hoffmann_chains`] that violate the 2-adic
/// bound, over `2 ≤ dim ≤ max_dim`.
pub fn hoffmann_chain_violations(max_dim: u64) -> Vec<WittChain> {
    (2..=max_dim)
        .flat_map(hoffmann_chains)
        .filter(|c| c.height() > 1 && !c.v2_chain_ok().expect("height > 1"))
        .collect()
}
