use rayon::prelude::*;

use super::{Count, ParityQuery};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::limits::Limits;

/// Sign positions enumerated inside one chunk; the remaining high positions
/// select the chunk.
const CHUNK_BITS: usize = 16;

/// Which sign vectors a filtered enumeration keeps, judged by the number of
/// `+` signs among the first `prefix` coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrefixParity {
    Any,
    Even,
    Odd,
}

/// Number of sign vectors with `sum ei*bi = b0`, by exhaustive enumeration.
pub fn brute_force_count(instance: &Instance, limits: &Limits) -> Result<Count> {
    brute_force_filtered(instance, 0, PrefixParity::Any, limits)
}

/// Like [`brute_force_count`], keeping only vectors with an even number of
/// `+` signs among `b1..bm`.
pub fn brute_force_parity_count(query: &ParityQuery, limits: &Limits) -> Result<Count> {
    brute_force_filtered(
        query.instance(),
        query.prefix_len(),
        PrefixParity::Even,
        limits,
    )
}

/// Enumerates all `2^n` sign vectors, counting those that hit the target and
/// pass the prefix parity filter.
///
/// The sign space is split into chunks on the high positions; chunks run in
/// parallel and are summed in chunk order.
pub fn brute_force_filtered(
    instance: &Instance,
    prefix: usize,
    filter: PrefixParity,
    limits: &Limits,
) -> Result<Count> {
    let n = instance.n();
    let cap = limits.enumeration_cap.min(63);
    if n > cap {
        return Err(Error::resource(
            "enumeration length n",
            n as u128,
            cap as u128,
        ));
    }
    if prefix > n {
        return Err(Error::range("m", prefix, format!("[-1, {n}]")));
    }
    let low = n.min(CHUNK_BITS);
    let chunks = 1u64 << (n - low);
    let per_chunk: Vec<u64> = (0..chunks)
        .into_par_iter()
        .map(|chunk| count_chunk(instance, prefix, filter, low, chunk))
        .collect();
    Ok(Count::from(per_chunk.into_iter().sum::<u64>()))
}

/// Walks the low `low` positions in Gray-code order with the high positions
/// fixed by `chunk`. A set bit means `+`.
fn count_chunk(
    instance: &Instance,
    prefix: usize,
    filter: PrefixParity,
    low: usize,
    chunk: u64,
) -> u64 {
    let b = &instance.coeffs;
    let target = instance.target as i128;
    let mask = chunk << low;
    let mut sum: i128 = 0;
    let mut odd = false;
    for (i, &bi) in b.iter().enumerate() {
        if mask >> i & 1 == 1 {
            sum += bi as i128;
            if i < prefix {
                odd = !odd;
            }
        } else {
            sum -= bi as i128;
        }
    }
    let keep = |odd: bool| match filter {
        PrefixParity::Any => true,
        PrefixParity::Even => !odd,
        PrefixParity::Odd => odd,
    };

    let mut hits = u64::from(sum == target && keep(odd));
    let mut low_mask = 0u64;
    for step in 1..(1u64 << low) {
        let bit = step.trailing_zeros() as usize;
        low_mask ^= 1 << bit;
        let twice = 2 * b[bit] as i128;
        if low_mask >> bit & 1 == 1 {
            sum += twice;
        } else {
            sum -= twice;
        }
        if bit < prefix {
            odd = !odd;
        }
        if sum == target && keep(odd) {
            hits += 1;
        }
    }
    hits
}
