use num_bigint::BigUint;

use super::{Count, ParityQuery};
use crate::error::{Error, Result};
use crate::instance::Instance;

/// Counts over the achievable-sum axis `[-weight, +weight]`, one cell per sum.
///
/// Each cell is a fixed-width little-endian run of `u64` limbs. After `i`
/// coefficients every count is at most `2^i`, so only the low `i / 64 + 1`
/// limbs can be nonzero; arithmetic is restricted to those.
struct SumTable {
    offset: usize,
    stride: usize,
    limbs: Vec<u64>,
}

impl SumTable {
    fn new(weight: usize, stride: usize) -> Self {
        SumTable {
            offset: weight,
            stride,
            limbs: vec![0; (2 * weight + 1) * stride],
        }
    }

    fn index(&self, sum: i64) -> usize {
        (self.offset as i64 + sum) as usize
    }

    fn clear(&mut self, reach: usize, active: usize) {
        let lo = self.offset - reach;
        for cell in lo..=self.offset + reach {
            self.limbs[cell * self.stride..cell * self.stride + active].fill(0);
        }
    }

    fn set_one(&mut self, sum: i64) {
        let cell = self.index(sum);
        self.limbs[cell * self.stride] = 1;
    }

    /// `self[s + shift] += src[s]` for every `s` in `[-reach, reach]`.
    fn add_shifted(&mut self, src: &SumTable, reach: usize, shift: i64, active: usize) {
        let stride = self.stride;
        let lo = src.offset - reach;
        for cell in lo..=src.offset + reach {
            let from = &src.limbs[cell * stride..cell * stride + active];
            if from.iter().all(|&w| w == 0) {
                continue;
            }
            let dst_cell = (cell as i64 + shift) as usize;
            let to = &mut self.limbs[dst_cell * stride..dst_cell * stride + active];
            let mut carry = false;
            for (t, &f) in to.iter_mut().zip(from) {
                let (s1, c1) = t.overflowing_add(f);
                let (s2, c2) = s1.overflowing_add(carry as u64);
                *t = s2;
                carry = c1 || c2;
            }
            debug_assert!(!carry, "count exceeded its limb budget");
        }
    }

    fn read(&self, sum: i64) -> Count {
        let cell = self.index(sum);
        let words: Vec<u32> = self.limbs[cell * self.stride..(cell + 1) * self.stride]
            .iter()
            .flat_map(|&w| [w as u32, (w >> 32) as u32])
            .collect();
        Count::from(BigUint::new(words))
    }
}

fn active_limbs(items: usize) -> usize {
    items / 64 + 1
}

fn table_weight(instance: &Instance) -> Result<usize> {
    let weight = instance.weight();
    // Cells are addressed with i64 sums.
    let limit = (i64::MAX / 4) as u128;
    usize::try_from(weight)
        .ok()
        .filter(|_| weight <= limit)
        .ok_or_else(|| Error::resource("DP table weight", weight, limit))
}

/// Number of sign vectors with `sum ei*bi = b0`, by dynamic programming over
/// achievable sums in `O(n * weight)` time and `O(weight)` space.
pub fn dp_count(instance: &Instance) -> Result<Count> {
    dp_run(instance, 0)
}

/// Number of solutions with an even number of `+` signs among `b1..bm`.
///
/// While the prefix is processed the state is (sum, parity of `+` signs so
/// far); afterwards only the even layer is carried forward.
pub fn dp_parity_count(query: &ParityQuery) -> Result<Count> {
    dp_run(query.instance(), query.prefix_len())
}

fn dp_run(instance: &Instance, prefix: usize) -> Result<Count> {
    let weight = table_weight(instance)?;
    if instance.target.unsigned_abs() as u128 > weight as u128 {
        return Ok(Count::zero());
    }
    let n = instance.n();
    let stride = active_limbs(n);

    let mut even = SumTable::new(weight, stride);
    let mut even_next = SumTable::new(weight, stride);
    let (mut odd, mut odd_next) = if prefix > 0 {
        (SumTable::new(weight, stride), SumTable::new(weight, stride))
    } else {
        (SumTable::new(0, 0), SumTable::new(0, 0))
    };

    even.set_one(0);
    let mut reach = 0usize;
    for (i, &b) in instance.coeffs.iter().enumerate() {
        let next_reach = reach + b.unsigned_abs() as usize;
        let active = active_limbs(i + 1);
        even_next.clear(next_reach, active);
        if i < prefix {
            odd_next.clear(next_reach, active);
            // A `+` sign flips the parity, a `-` sign keeps it.
            even_next.add_shifted(&odd, reach, b, active);
            even_next.add_shifted(&even, reach, -b, active);
            odd_next.add_shifted(&even, reach, b, active);
            odd_next.add_shifted(&odd, reach, -b, active);
            std::mem::swap(&mut odd, &mut odd_next);
        } else {
            even_next.add_shifted(&even, reach, b, active);
            even_next.add_shifted(&even, reach, -b, active);
        }
        std::mem::swap(&mut even, &mut even_next);
        reach = next_reach;
    }
    Ok(even.read(instance.target))
}
