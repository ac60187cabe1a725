//! Arithmetic in GF(2^r) for 1 <= r <= 16.
//!
//! Elements are stored in the polynomial basis as bit vectors. Every context
//! carries full exponential and logarithm tables with respect to the fixed
//! generator `e` (a root of the primitive modulus), so multiplication,
//! inversion and powering are table lookups.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::symring::CoeffDomain;

pub const MAX_DEGREE: u32 = 16;

const BUILTIN_MODULI: &str = include_str!("../data/moduli.txt");

/// An element of GF(2^r) in the polynomial basis.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Wraps raw bits without a range check. Use [`FieldCtx::element`] for
    /// untrusted input.
    pub const fn from_bits_unchecked(bits: u32) -> Self {
        FieldElement(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Table of defining polynomials, keyed by extension degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Moduli {
    entries: [Option<u32>; MAX_DEGREE as usize + 1],
}

impl Moduli {
    /// The table shipped with the crate (`data/moduli.txt`).
    pub fn builtin() -> &'static Moduli {
        static TABLE: OnceLock<Moduli> = OnceLock::new();
        TABLE.get_or_init(|| Moduli::parse(BUILTIN_MODULI).expect("builtin moduli table is valid"))
    }

    /// Parses the text format: one `r hex` pair per line, `#` starts a comment.
    pub fn parse(text: &str) -> Result<Moduli> {
        let mut entries = [None; MAX_DEGREE as usize + 1];
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            let (Some(r), Some(hex), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(Error::Parse(format!(
                    "moduli line {}: expected `r hex`",
                    lineno + 1
                )));
            };
            let r: u32 = r.parse().map_err(|_| {
                Error::Parse(format!("moduli line {}: bad degree {r:?}", lineno + 1))
            })?;
            let digits = hex.trim_start_matches("0x").trim_start_matches("0X");
            let modulus = u32::from_str_radix(digits, 16).map_err(|_| {
                Error::Parse(format!("moduli line {}: bad modulus {hex:?}", lineno + 1))
            })?;
            if r == 0 || r > MAX_DEGREE {
                return Err(Error::UnsupportedDegree(r));
            }
            if degree(modulus as u64) != Some(r) {
                return Err(Error::InvalidModulus { r, modulus });
            }
            entries[r as usize] = Some(modulus);
        }
        Ok(Moduli { entries })
    }

    pub fn get(&self, r: u32) -> Option<u32> {
        self.entries.get(r as usize).copied().flatten()
    }
}

/// Immutable arithmetic context for GF(2^r).
///
/// Cloning is cheap; the tables are shared.
#[derive(Clone)]
pub struct FieldCtx {
    r: u32,
    modulus: u32,
    q: u32,
    // exp has 2(q-1) entries so a product of two logs indexes it directly.
    exp: Arc<[u32]>,
    log: Arc<[u32]>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.r == other.r && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GF(2^{}) mod {}",
            self.r,
            modulus_to_string(self.modulus)
        )
    }
}

impl FieldCtx {
    /// Context for GF(2^r) using the builtin modulus table.
    pub fn new(r: u32) -> Result<FieldCtx> {
        Self::from_table(r, Moduli::builtin())
    }

    pub fn from_table(r: u32, table: &Moduli) -> Result<FieldCtx> {
        if r == 0 || r > MAX_DEGREE {
            return Err(Error::UnsupportedDegree(r));
        }
        let modulus = table.get(r).ok_or(Error::MissingModulus(r))?;
        Self::with_modulus(r, modulus)
    }

    /// Builds a context from an explicit modulus, which must be primitive.
    pub fn with_modulus(r: u32, modulus: u32) -> Result<FieldCtx> {
        if r == 0 || r > MAX_DEGREE {
            return Err(Error::UnsupportedDegree(r));
        }
        if degree(modulus as u64) != Some(r) || !is_irreducible(modulus as u64) {
            return Err(Error::InvalidModulus { r, modulus });
        }
        let q = 1u32 << r;
        let order = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * order];
        let mut log = vec![0u32; q as usize];
        let mut seen = vec![false; q as usize];
        // e is the class of x, i.e. bits 0b10, except in GF(2) where x = 1.
        let generator = if r == 1 { 1 } else { 2 };
        let mut cur = 1u32;
        for i in 0..order {
            if seen[cur as usize] {
                return Err(Error::InvalidModulus { r, modulus });
            }
            seen[cur as usize] = true;
            exp[i] = cur;
            exp[i + order] = cur;
            log[cur as usize] = i as u32;
            cur = mulmod_gf2x(cur as u64, generator, modulus as u64) as u32;
        }
        if cur != 1 {
            return Err(Error::InvalidModulus { r, modulus });
        }
        Ok(FieldCtx {
            r,
            modulus,
            q,
            exp: exp.into(),
            log: log.into(),
        })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// Field order q = 2^r.
    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn generator(&self) -> FieldElement {
        FieldElement(self.exp[1 % self.exp.len()])
    }

    pub fn element(&self, bits: u32) -> Result<FieldElement> {
        if bits >= self.q {
            return Err(Error::OutOfRange(format!(
                "{bits:#x} is not an element of GF(2^{})",
                self.r
            )));
        }
        Ok(FieldElement(bits))
    }

    pub fn contains(&self, a: FieldElement) -> bool {
        a.0 < self.q
    }

    /// All elements in bit order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(FieldElement)
    }

    /// All elements in log-index order: 0, e, e^2, ..., e^(q-2), 1.
    pub fn elements_by_log(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(move |i| self.from_log_index(i).expect("index in range"))
    }

    /// Nonzero elements e^1, ..., e^(q-1) = 1.
    pub fn nonzero_by_log(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (1..self.q).map(move |i| self.exp(i as u64))
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(a.0 ^ b.0)
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let i = self.log[a.0 as usize] + self.log[b.0 as usize];
        FieldElement(self.exp[i as usize])
    }

    #[inline]
    pub fn square(&self, a: FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::Domain("zero has no multiplicative inverse".into()));
        }
        let order = self.q - 1;
        let l = self.log[a.0 as usize];
        Ok(FieldElement(self.exp[((order - l) % order) as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// a^n with the convention a^0 = 1 (including 0^0).
    pub fn pow(&self, a: FieldElement, n: u64) -> FieldElement {
        if n == 0 {
            return FieldElement::ONE;
        }
        if a.is_zero() {
            return FieldElement::ZERO;
        }
        let order = (self.q - 1) as u64;
        let l = self.log[a.0 as usize] as u64;
        FieldElement(self.exp[((l * (n % order)) % order) as usize])
    }

    /// a^n for signed n; negative exponents require a != 0.
    pub fn pow_signed(&self, a: FieldElement, n: i64) -> Result<FieldElement> {
        if n >= 0 {
            return Ok(self.pow(a, n as u64));
        }
        if a.is_zero() {
            return Err(Error::Domain("negative power of zero".into()));
        }
        let order = (self.q - 1) as i64;
        Ok(self.pow(a, n.rem_euclid(order) as u64))
    }

    /// The Frobenius power a -> a^(2^j).
    pub fn frob(&self, a: FieldElement, j: u32) -> FieldElement {
        if a.is_zero() {
            return a;
        }
        let order = (self.q - 1) as u64;
        let mut l = self.log[a.0 as usize] as u64;
        for _ in 0..(j % self.r) {
            l = (2 * l) % order;
        }
        FieldElement(self.exp[l as usize])
    }

    /// e^i for any i.
    pub fn exp(&self, i: u64) -> FieldElement {
        let order = (self.q - 1) as u64;
        FieldElement(self.exp[(i % order) as usize])
    }

    /// Discrete log in 0..q-1, or `None` for zero.
    pub fn dlog(&self, a: FieldElement) -> Option<u32> {
        (!a.is_zero()).then(|| self.log[a.0 as usize])
    }

    /// Printed log form: 0 for zero, otherwise the exponent i with
    /// 1 <= i <= q-1 (so the unit is q-1).
    pub fn log_index(&self, a: FieldElement) -> u32 {
        match self.dlog(a) {
            None => 0,
            Some(0) => self.q - 1,
            Some(i) => i,
        }
    }

    /// Inverse of [`FieldCtx::log_index`].
    pub fn from_log_index(&self, i: u32) -> Result<FieldElement> {
        match i {
            0 => Ok(FieldElement::ZERO),
            i if i < self.q => Ok(self.exp(i as u64)),
            _ => Err(Error::OutOfRange(format!(
                "log index {i} exceeds q-1 = {}",
                self.q - 1
            ))),
        }
    }

    /// Element syntax accepted on input: `0`, `1`, `e`, `e^k` (k may be negative).
    pub fn parse_element(&self, s: &str) -> Result<FieldElement> {
        let s = s.trim();
        match s {
            "0" => return Ok(FieldElement::ZERO),
            "1" => return Ok(FieldElement::ONE),
            "e" => return Ok(self.generator()),
            _ => {}
        }
        let Some(k) = s.strip_prefix("e^") else {
            return Err(Error::Parse(format!("{s:?} is not one of 0, 1, e, e^k")));
        };
        let k: i64 = k
            .trim_matches(|c| c == '(' || c == ')')
            .parse()
            .map_err(|_| Error::Parse(format!("bad exponent in {s:?}")))?;
        self.pow_signed(self.generator(), k)
    }

    /// `e^i`, `1` or `0`.
    pub fn format_element(&self, a: FieldElement) -> String {
        match self.dlog(a) {
            None => "0".into(),
            Some(0) => "1".into(),
            Some(1) => "e".into(),
            Some(i) => format!("e^{i}"),
        }
    }
}

impl CoeffDomain for FieldCtx {
    type Elem = FieldElement;

    fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldCtx::add(self, *a, *b)
    }

    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldCtx::mul(self, *a, *b)
    }

    fn is_zero(&self, a: &FieldElement) -> bool {
        a.is_zero()
    }

    fn pow(&self, a: &FieldElement, n: u64) -> FieldElement {
        FieldCtx::pow(self, *a, n)
    }
}

/// Renders a modulus bit vector as `x^4+x+1`.
pub fn modulus_to_string(modulus: u32) -> String {
    let mut terms = Vec::new();
    for i in (0..32).rev() {
        if modulus >> i & 1 == 1 {
            terms.push(match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            });
        }
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

fn degree(p: u64) -> Option<u32> {
    (p != 0).then(|| 63 - p.leading_zeros())
}

fn mulmod_gf2x(a: u64, b: u64, m: u64) -> u64 {
    let d = degree(m).expect("nonzero modulus");
    let mut a = reduce_gf2x(a, m);
    let mut b = b;
    let mut acc = 0u64;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a >> d & 1 == 1 {
            a ^= m;
        }
    }
    acc
}

fn reduce_gf2x(mut a: u64, m: u64) -> u64 {
    let d = degree(m).expect("nonzero modulus");
    while let Some(da) = degree(a) {
        if da < d {
            break;
        }
        a ^= m << (da - d);
    }
    a
}

fn gcd_gf2x(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = reduce_gf2x(a, b);
        a = b;
        b = r;
    }
    a
}

/// Irreducibility over F2: gcd(x^(2^i) - x, m) = 1 for every i <= deg(m)/2.
fn is_irreducible(m: u64) -> bool {
    let Some(d) = degree(m) else { return false };
    if d == 1 {
        return true;
    }
    let x = reduce_gf2x(0b10, m);
    let mut frob = x;
    for _ in 1..=d / 2 {
        frob = mulmod_gf2x(frob, frob, m);
        if gcd_gf2x(m, frob ^ x) != 1 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_moduli_for_search_degrees() {
        assert_eq!(FieldCtx::new(4).unwrap().modulus(), 0b1_0011);
        assert_eq!(FieldCtx::new(5).unwrap().modulus(), 0b10_0101);
        assert_eq!(FieldCtx::new(6).unwrap().modulus(), 0b101_1011);
        assert_eq!(FieldCtx::new(7).unwrap().modulus(), 0b1000_0011);
        assert_eq!(
            modulus_to_string(FieldCtx::new(6).unwrap().modulus()),
            "x^6+x^4+x^3+x+1"
        );
    }

    #[test]
    fn every_builtin_degree_builds() {
        for r in 1..=MAX_DEGREE {
            let ctx = FieldCtx::new(r).unwrap();
            assert_eq!(ctx.q(), 1 << r);
        }
    }

    #[test]
    fn prime_field() {
        let ctx = FieldCtx::new(1).unwrap();
        assert_eq!(ctx.modulus(), 0b11);
        assert_eq!(ctx.elements().count(), 2);
        assert_eq!(ctx.generator(), FieldElement::ONE);
        assert_eq!(
            ctx.mul(FieldElement::ONE, FieldElement::ONE),
            FieldElement::ONE
        );
    }

    #[test]
    fn rejects_bad_degree_and_modulus() {
        assert_eq!(FieldCtx::new(0), Err(Error::UnsupportedDegree(0)));
        assert_eq!(FieldCtx::new(17), Err(Error::UnsupportedDegree(17)));
        // x^4+x^3+x^2+x+1 is irreducible but not primitive.
        assert!(matches!(
            FieldCtx::with_modulus(4, 0b1_1111),
            Err(Error::InvalidModulus { .. })
        ));
        // x^4+1 = (x+1)^4
        assert!(matches!(
            FieldCtx::with_modulus(4, 0b1_0001),
            Err(Error::InvalidModulus { .. })
        ));
    }

    #[test]
    fn small_identities() {
        let ctx = FieldCtx::new(4).unwrap();
        let e = ctx.generator();
        assert_eq!(ctx.pow(e, 15), FieldElement::ONE);
        assert_eq!(ctx.mul(ctx.pow(e, 3), ctx.pow(e, 13)), e);
        assert_eq!(ctx.pow(FieldElement::ZERO, 0), FieldElement::ONE);
        assert_eq!(ctx.pow(FieldElement::ZERO, 5), FieldElement::ZERO);
        assert_eq!(ctx.pow_signed(e, -1).unwrap(), ctx.pow(e, 14));
        assert!(ctx.pow_signed(FieldElement::ZERO, -2).is_err());
        assert!(ctx.inv(FieldElement::ZERO).is_err());
        for a in ctx.elements() {
            assert_eq!(ctx.add(a, a), FieldElement::ZERO);
            assert_eq!(ctx.frob(a, 4), a);
        }
    }

    #[test]
    fn log_index_convention() {
        let ctx = FieldCtx::new(4).unwrap();
        assert_eq!(ctx.log_index(FieldElement::ZERO), 0);
        assert_eq!(ctx.log_index(ctx.generator()), 1);
        assert_eq!(ctx.log_index(FieldElement::ONE), 15);
        for i in 0..16 {
            assert_eq!(ctx.log_index(ctx.from_log_index(i).unwrap()), i);
        }
        assert!(ctx.from_log_index(16).is_err());
        let order: Vec<_> = ctx.elements_by_log().collect();
        assert_eq!(order[1], ctx.generator());
        assert_eq!(order[15], FieldElement::ONE);
    }

    #[test]
    fn parse_and_format() {
        let ctx = FieldCtx::new(5).unwrap();
        assert_eq!(ctx.parse_element("0").unwrap(), FieldElement::ZERO);
        assert_eq!(ctx.parse_element("1").unwrap(), FieldElement::ONE);
        assert_eq!(ctx.parse_element("e").unwrap(), ctx.generator());
        assert_eq!(ctx.parse_element("e^31").unwrap(), FieldElement::ONE);
        assert_eq!(
            ctx.parse_element("e^-1").unwrap(),
            ctx.pow(ctx.generator(), 30)
        );
        assert!(ctx.parse_element("x^2").is_err());
        assert!(ctx.parse_element("e^").is_err());
        assert_eq!(ctx.format_element(ctx.pow(ctx.generator(), 11)), "e^11");
        assert_eq!(ctx.format_element(FieldElement::ONE), "1");
    }

    #[test]
    fn moduli_file_format() {
        let t = Moduli::parse("# comment\n4 0x13\n\n5 25 # trailing\n").unwrap();
        assert_eq!(t.get(4), Some(0x13));
        assert_eq!(t.get(5), Some(0x25));
        assert_eq!(t.get(6), None);
        assert!(Moduli::parse("4").is_err());
        assert!(Moduli::parse("4 0x25").is_err());
        assert!(Moduli::parse("40 0x13").is_err());
        assert_eq!(FieldCtx::from_table(6, &t), Err(Error::MissingModulus(6)));
    }

    #[test]
    fn exp_log_consistent_with_repeated_multiplication() {
        for r in [2, 4, 7, 9] {
            let ctx = FieldCtx::new(r).unwrap();
            let e = ctx.generator();
            let mut cur = FieldElement::ONE;
            for i in 0..ctx.q() - 1 {
                assert_eq!(ctx.exp(i as u64), cur);
                assert_eq!(ctx.dlog(cur), Some(i));
                cur = ctx.mul(cur, e);
            }
            assert_eq!(cur, FieldElement::ONE);
        }
    }

    #[test]
    fn additive_map_has_half_image() {
        let ctx = FieldCtx::new(6).unwrap();
        for a in ctx.nonzero_by_log() {
            let mut image = vec![false; ctx.q() as usize];
            for u in ctx.elements() {
                image[ctx.add(ctx.square(u), ctx.mul(a, u)).bits() as usize] = true;
            }
            assert_eq!(image.iter().filter(|&&b| b).count() as u32, ctx.q() / 2);
        }
    }
}
