//! The prototype decomposition `λ = (1, 3, ..., 2n-1) + ι` for partitions
//! with parts at least 2 apart.

use crate::error::{Error, Result};
use crate::family::{is_member, Family};
use crate::partition::Partition;

/// Splits `λ` into its length `n` and `ι_i = λ_i - (2i - 1)`; zero entries
/// of `ι` are dropped.
pub fn rr_decompose(lambda: &Partition) -> Result<(usize, Partition)> {
    if !is_member(lambda, &Family::Rr.into())? {
        return Err(Error::NotMember { partition: lambda.clone(), family: Family::Rr.to_string() });
    }
    let iota = lambda.parts().iter().enumerate().map(|(k, &x)| x - (2 * k as u32 + 1)).collect();
    Ok((lambda.len(), Partition::from_unsorted(iota)))
}

/// Inverse of [`rr_decompose`]; `ι` may have at most `n` parts.
pub fn rr_compose(n: usize, iota: &Partition) -> Result<Partition> {
    if iota.len() > n {
        return Err(Error::BadIncrement(format!("iota = {iota} has more than {n} parts")));
    }
    let mut padded = vec![0; n - iota.len()];
    padded.extend_from_slice(iota.parts());
    let parts = padded.iter().enumerate().map(|(k, &x)| x + 2 * k as u32 + 1).collect();
    Partition::new(parts)
}
