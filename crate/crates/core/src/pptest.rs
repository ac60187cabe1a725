//! Permutation tests for octics.
//!
//! By Wan's bound, a degree-8 polynomial over GF(q) whose value set has more
//! than floor(q - (q-1)/8) elements is a permutation. [`PpTester`] therefore
//! evaluates f at e^0, e^1, ..., e^L with L = floor(q - (q-1)/8) and stops at
//! the first repeated value.

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};
use crate::octic::Octic;

/// floor(q - (q-1)/8) + 1, computed in integers.
pub fn wan_sample_len(q: u32) -> u32 {
    q - (q - 1).div_ceil(8) + 1
}

/// Reusable early-exit permutation tester for one field.
pub struct PpTester {
    ctx: FieldCtx,
    samples: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    seen: Vec<u32>,
    stamp: u32,
}

impl PpTester {
    pub fn new(ctx: &FieldCtx) -> Result<PpTester> {
        let q = ctx.q();
        if q < 9 {
            return Err(Error::Precondition(format!(
                "the Wan test needs q >= 9, got q = {q}"
            )));
        }
        let samples = wan_sample_len(q);
        // The sampled inputs e^j must be distinct nonzero elements.
        assert!(
            samples < q,
            "Wan sample length {samples} exceeds |GF({q})*|"
        );
        let order = q - 1;
        let mut exp = Vec::with_capacity(2 * order as usize);
        for i in 0..2 * order as u64 {
            exp.push(ctx.exp(i).bits());
        }
        let log = (0..q)
            .map(|b| ctx.dlog(FieldElement::from_bits_unchecked(b)).unwrap_or(0))
            .collect();
        Ok(PpTester {
            ctx: ctx.clone(),
            samples,
            exp,
            log,
            seen: vec![0; q as usize],
            stamp: 0,
        })
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn samples(&self) -> u32 {
        self.samples
    }

    /// Wan test on a0 + a1 x + ... + a8 x^8 (low to high).
    pub fn is_pp(&mut self, coeffs: &[FieldElement; 9]) -> bool {
        self.stamp = self.stamp.wrapping_add(1);
        if self.stamp == 0 {
            self.seen.fill(0);
            self.stamp = 1;
        }
        let order = self.ctx.q() - 1;
        // pos[i] tracks log(a_i) + i*j mod (q-1) as j advances.
        let mut pos = [0u32; 9];
        let mut degs = [0u32; 9];
        let mut n = 0;
        let mut constant = 0u32;
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if i == 0 {
                constant = c.bits();
                continue;
            }
            pos[n] = self.log[c.bits() as usize];
            degs[n] = i as u32;
            n += 1;
        }
        for _ in 0..self.samples {
            let mut v = constant;
            for t in 0..n {
                v ^= self.exp[pos[t] as usize];
                pos[t] += degs[t];
                if pos[t] >= order {
                    pos[t] -= order;
                }
            }
            let slot = &mut self.seen[v as usize];
            if *slot == self.stamp {
                return false;
            }
            *slot = self.stamp;
        }
        true
    }
}

/// Wan-bound permutation test.
pub fn is_pp_wan(f: &Octic) -> Result<bool> {
    Ok(PpTester::new(f.ctx())?.is_pp(f.coeffs()))
}

/// Checks injectivity over every input, zero included.
pub fn is_pp_brute(f: &Octic) -> bool {
    let mut seen = vec![false; f.ctx().q() as usize];
    for x in f.ctx().elements() {
        let v = f.eval_in_field(x).bits() as usize;
        if seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}
