//! Gluing per-piece permutations across the partition `Σᵢ = {⟨i,t⟩ : t ∈ ℕ}`.

use std::sync::Arc;

use crate::countable::{pair_decode, pair_encode, Moiety};
use crate::perm::Perm;

/// The pairing rows `Σᵢ`, which partition ℕ into moieties.
#[derive(Debug, Clone, Copy, Default)]
pub struct MoietyPartition;

impl MoietyPartition {
    pub fn piece(&self, i: u64) -> Moiety {
        Moiety::pairing_row(i)
    }

    /// Index of the piece holding `x`.
    pub fn piece_of(&self, x: u64) -> u64 {
        pair_decode(x).0
    }
}

/// Acts on each `Σᵢ` as `parts(i)` in that piece's rank coordinates.
pub fn glue<F>(_pieces: &MoietyPartition, parts: F) -> Perm
where
    F: Fn(u64) -> Perm + Send + Sync + 'static,
{
    let fwd = Arc::new(parts);
    let bwd = Arc::clone(&fwd);
    Perm::from_fns(
        "glue",
        move |x| {
            let (i, t) = pair_decode(x);
            Ok(pair_encode(i, fwd(i).forward(t)?))
        },
        move |x| {
            let (i, t) = pair_decode(x);
            Ok(pair_encode(i, bwd(i).backward(t)?))
        },
    )
}

/// Glues caller-chosen witnesses, each asserted not to be the restriction to
/// `Σᵢ` of any member of the `i`-th family; the result then lies in none of them.
pub fn escape<F>(pieces: &MoietyPartition, witnesses: F) -> Perm
where
    F: Fn(u64) -> Perm + Send + Sync + 'static,
{
    glue(pieces, witnesses)
}
