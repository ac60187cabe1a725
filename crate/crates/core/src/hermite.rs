//! Hermite's criterion for normalized octics f = x^8 + a7 x^7 + ... + a1 x
//! over GF(2^r).
//!
//! By the multinomial form of Lucas' theorem, the odd multinomial
//! coefficients (k; j_1, ..., j_8) are exactly those whose parts split the
//! binary digits of k. Writing beta(k) = {s_0 < ... < s_(n-1)}, such splits
//! correspond to base-8 words u = (u_0, ..., u_(n-1)): digit u_v = i sends
//! bit 2^(s_v) to part j_i, and digit 0 sends it to the x^8 bucket. So
//!
//!   HC(r, k) = sum over t >= 1 of [x^(t(q-1))] f^k
//!            = sum of a1^j1 ... a7^j7 over words u whose degree
//!              m(u) = j1 + 2 j2 + ... + 7 j7 + 8 j0 is a positive multiple of q - 1.
//!
//! The engine is generic over [`CoeffDomain`], so the same code evaluates
//! concrete field values, symbolic coefficients in F2[a1..a7], or
//! polynomials over GF(q).

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};
use crate::octic::Octic;
use crate::symring::{CoeffDomain, Gf2Poly, SparsePoly7};

/// Bit positions of a positive integer, ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaSet {
    positions: Vec<u32>,
}

impl BetaSet {
    pub fn positions(&self) -> &[u32] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }
}

/// beta(n) = {s : floor(n / 2^s) is odd}.
pub fn beta(n: u64) -> Result<BetaSet> {
    if n == 0 {
        return Err(Error::OutOfRange("beta(n) needs n >= 1".into()));
    }
    let positions = (0..64).filter(|s| n >> s & 1 == 1).collect();
    Ok(BetaSet { positions })
}

/// The multinomial coefficient (k; js) mod 2: odd iff the parts sum to k
/// with pairwise disjoint binary digits.
pub fn multinomial_parity(k: u64, js: &[u64]) -> bool {
    let mut union = 0u64;
    for &j in js {
        if union & j != 0 {
            return false;
        }
        union |= j;
    }
    union == k
}

/// The exponents (j0, j1, ..., j7) attached to the base-8 word `u`; j0 is
/// the x^8 bucket.
pub fn digit_decomposition(k: u64, u: u64) -> Result<[u64; 8]> {
    let b = beta(k)?;
    let n = b.len() as u32;
    if n >= 21 || u >= 8u64.pow(n) {
        return Err(Error::OutOfRange(format!("word {u} is not below 8^{n}")));
    }
    let mut js = [0u64; 8];
    for (v, &s) in b.positions.iter().enumerate() {
        let digit = (u >> (3 * v)) & 7;
        js[digit as usize] += 1 << s;
    }
    Ok(js)
}

/// Enumerates the base-8 words (as digit vectors, one digit per element of
/// beta(k)) whose degree is a positive multiple of q - 1. Branches that can no
/// longer reach a multiple are pruned.
pub fn contributing_words(r: u32, k: u64) -> Result<Vec<Vec<u8>>> {
    check_args(r, k)?;
    let b = beta(k)?;
    let bits: Vec<u64> = b.positions.iter().map(|&s| 1u64 << s).collect();
    let mut suffix = vec![0u64; bits.len() + 1];
    for v in (0..bits.len()).rev() {
        suffix[v] = suffix[v + 1] + bits[v];
    }
    let period = (1u64 << r) - 1;
    let mut out = Vec::new();
    let mut digits = Vec::with_capacity(bits.len());
    walk(&bits, &suffix, period, 0, &mut digits, &mut out);
    Ok(out)
}

fn walk(
    bits: &[u64],
    suffix: &[u64],
    period: u64,
    m: u64,
    digits: &mut Vec<u8>,
    out: &mut Vec<Vec<u8>>,
) {
    let v = digits.len();
    // Remaining digits add between 1x and 8x of the remaining bit weight.
    let lo = (m + suffix[v]).max(period);
    let hi = m + 8 * suffix[v];
    if lo.div_ceil(period) * period > hi {
        return;
    }
    if v == bits.len() {
        out.push(digits.clone());
        return;
    }
    for d in 0u8..8 {
        let weight = if d == 0 { 8 } else { d as u64 };
        digits.push(d);
        walk(bits, suffix, period, m + weight * bits[v], digits, out);
        digits.pop();
    }
}

fn check_args(r: u32, k: u64) -> Result<()> {
    if !(2..=16).contains(&r) {
        return Err(Error::OutOfRange(format!("HC needs 2 <= r <= 16, got {r}")));
    }
    if k == 0 {
        return Err(Error::OutOfRange("HC needs k >= 1".into()));
    }
    Ok(())
}

/// Precomputed contributing words for one (r, k), reusable across
/// evaluations.
#[derive(Clone, Debug)]
pub struct HcPlan {
    r: u32,
    k: u64,
    positions: Vec<u32>,
    words: Vec<Vec<u8>>,
}

impl HcPlan {
    pub fn new(r: u32, k: u64) -> Result<HcPlan> {
        let words = contributing_words(r, k)?;
        let positions = beta(k)?.positions;
        Ok(HcPlan {
            r,
            k,
            positions,
            words,
        })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn word_count(&self) -> usize {
        self.words.len()
    }

    /// HC at `coeffs`, given in the order a7, a6, ..., a1.
    pub fn eval<D: CoeffDomain>(&self, dom: &D, coeffs: &[D::Elem; 7]) -> D::Elem {
        // powers[i][v] = a_i^(2^(s_v)); index 0 unused (the x^8 bucket is monic).
        let max_s = *self.positions.last().expect("beta of k >= 1 is nonempty");
        let mut powers: Vec<Vec<D::Elem>> = vec![Vec::new(); 8];
        for i in 1..8 {
            let mut cur = coeffs[7 - i].clone();
            let mut by_bit = Vec::with_capacity(self.positions.len());
            let mut next = self.positions.iter().peekable();
            for s in 0..=max_s {
                if next.peek() == Some(&&s) {
                    by_bit.push(cur.clone());
                    next.next();
                }
                if s < max_s {
                    cur = dom.square(&cur);
                }
            }
            powers[i] = by_bit;
        }
        let mut total = dom.zero();
        'words: for word in &self.words {
            let mut term = dom.one();
            for (v, &d) in word.iter().enumerate() {
                if d == 0 {
                    continue;
                }
                let factor = &powers[d as usize][v];
                if dom.is_zero(factor) {
                    continue 'words;
                }
                term = dom.mul(&term, factor);
            }
            total = dom.add(&total, &term);
        }
        total
    }
}

/// HC(r, k, a7, ..., a1). `coeffs` is given in the order a7, a6, ..., a1.
pub fn hc<D: CoeffDomain>(dom: &D, r: u32, k: u64, coeffs: &[D::Elem; 7]) -> Result<D::Elem> {
    Ok(HcPlan::new(r, k)?.eval(dom, coeffs))
}

/// HC over F2[a1..a7].
pub fn hc_symbolic(r: u32, k: u64, coeffs: &[SparsePoly7; 7]) -> Result<SparsePoly7> {
    let bound = coeffs
        .iter()
        .map(|c| c.max_exponent() as u64)
        .max()
        .unwrap_or(0);
    if bound.saturating_mul(k) > u16::MAX as u64 {
        return Err(Error::ExponentOverflow);
    }
    hc(&Gf2Poly, r, k, coeffs)
}

/// HC at the coefficients of a normalized octic.
pub fn hc_octic(f: &Octic, k: u64) -> Result<FieldElement> {
    if !f.is_normalized() {
        return Err(Error::Precondition(
            "HC is defined for normalized octics".into(),
        ));
    }
    hc(f.ctx(), f.ctx().r(), k, &f.tuple())
}

/// Coefficient of x^m in f^k, by repeated polynomial multiplication.
pub fn coeff_of_power_oracle(f: &Octic, k: u64, m: u64) -> FieldElement {
    let p = power_by_multiplication(f, k);
    p.get(m as usize).copied().unwrap_or(FieldElement::ZERO)
}

/// sum over 1 <= t <= deg(f^k)/(q-1) of [x^(t(q-1))] f^k, computed from the
/// expanded power.
pub fn power_sum_oracle(f: &Octic, k: u64) -> FieldElement {
    let ctx = f.ctx();
    let p = power_by_multiplication(f, k);
    let period = (ctx.q() - 1) as usize;
    (1..)
        .map(|t| t * period)
        .take_while(|&m| m < p.len())
        .fold(FieldElement::ZERO, |acc, m| ctx.add(acc, p[m]))
}

fn power_by_multiplication(f: &Octic, k: u64) -> Vec<FieldElement> {
    let ctx = f.ctx();
    let mut acc = vec![FieldElement::ONE];
    for _ in 0..k {
        let mut next = vec![FieldElement::ZERO; acc.len() + 8];
        for (i, &x) in acc.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &c) in f.coeffs().iter().enumerate() {
                next[i + j] = ctx.add(next[i + j], ctx.mul(x, c));
            }
        }
        acc = next;
    }
    acc
}

/// Which exponents `hermite_full_check` tests below q - 1.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub enum KRange {
    /// Every 1 <= k <= q - 2.
    #[default]
    All,
    /// Odd k only; sufficient because HC(r, 2k) = HC(r, k)^2.
    Odd,
}

/// Hermite's criterion: HC(r, k) = 0 for the tested k <= q - 2 and
/// HC(r, q - 1) != 0.
pub fn hermite_full_check(f: &Octic, range: KRange) -> Result<bool> {
    let ctx: &FieldCtx = f.ctx();
    if ctx.r() < 2 {
        return Err(Error::Precondition("Hermite check needs q >= 4".into()));
    }
    let q = ctx.q() as u64;
    for k in 1..=q - 2 {
        if range == KRange::Odd && k % 2 == 0 {
            continue;
        }
        if !hc_octic(f, k)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(!hc_octic(f, q - 1)?.is_zero())
}
