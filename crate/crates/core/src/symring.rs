//! Sparse polynomials over F2 in the seven coefficient variables a1..a7, and
//! the [`CoeffDomain`] contract shared by every ring the Hermite engine runs
//! over.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A commutative ring of characteristic 2.
pub trait CoeffDomain {
    type Elem: Clone;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn square(&self, a: &Self::Elem) -> Self::Elem {
        self.mul(a, a)
    }

    /// a^n with a^0 = 1.
    fn pow(&self, a: &Self::Elem, mut n: u64) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.square(&base);
            }
        }
        acc
    }
}

pub const NVARS: usize = 7;

/// Exponent vector (j1, ..., j7). Index 0 is a1.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(pub [u16; NVARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NVARS]);

    /// The variable a_i, 1 <= i <= 7.
    pub fn var(i: usize) -> Monomial {
        assert!((1..=NVARS).contains(&i), "variable index a{i} out of range");
        let mut e = [0; NVARS];
        e[i - 1] = 1;
        Monomial(e)
    }

    pub fn exponent(&self, i: usize) -> u16 {
        self.0[i - 1]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&x| x as u32).sum()
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        let mut e = [0; NVARS];
        for i in 0..NVARS {
            e[i] = self.0[i]
                .checked_add(other.0[i])
                .ok_or(Error::ExponentOverflow)?;
        }
        Ok(Monomial(e))
    }

    pub fn checked_scale(&self, n: u64) -> Result<Monomial> {
        let mut e = [0; NVARS];
        for i in 0..NVARS {
            let v = self.0[i] as u64 * n;
            e[i] = u16::try_from(v).map_err(|_| Error::ExponentOverflow)?;
        }
        Ok(Monomial(e))
    }
}

/// Degree-reverse-lexicographic order with a1 > a2 > ... > a7: higher total
/// degree first, ties broken by the smaller exponent of the last differing
/// variable (a7 first). `Greater` means "printed earlier".
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for i in (0..NVARS).rev() {
            match self.0[i].cmp(&other.0[i]) {
                Ordering::Equal => continue,
                ord => return ord.reverse(),
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "a{}", i + 1)?;
            } else {
                write!(f, "a{}^{}", i + 1, e)?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// A polynomial in F2[a1..a7], stored as its set of monomials.
///
/// Terms are kept sorted in descending monomial order with no repeats, so
/// structural equality is polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparsePoly7 {
    terms: Vec<Monomial>,
}

impl SparsePoly7 {
    pub fn zero() -> Self {
        SparsePoly7 { terms: Vec::new() }
    }

    pub fn one() -> Self {
        SparsePoly7 {
            terms: vec![Monomial::ONE],
        }
    }

    /// The indeterminate a_i.
    pub fn var(i: usize) -> Self {
        SparsePoly7 {
            terms: vec![Monomial::var(i)],
        }
    }

    pub fn constant(bit: bool) -> Self {
        if bit {
            Self::one()
        } else {
            Self::zero()
        }
    }

    pub fn monomial(m: Monomial) -> Self {
        SparsePoly7 { terms: vec![m] }
    }

    /// Sum of the given monomials; repeated monomials cancel in pairs.
    pub fn from_monomials<I: IntoIterator<Item = Monomial>>(monomials: I) -> Self {
        let mut set = HashSet::new();
        for m in monomials {
            if !set.remove(&m) {
                set.insert(m);
            }
        }
        Self::from_set(set)
    }

    fn from_set(set: HashSet<Monomial>) -> Self {
        let mut terms: Vec<_> = set.into_iter().collect();
        terms.sort_unstable_by(|a, b| b.cmp(a));
        SparsePoly7 { terms }
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0] == Monomial::ONE
    }

    /// Constant value, if the polynomial has no variable terms.
    pub fn as_constant(&self) -> Option<bool> {
        match self.terms.as_slice() {
            [] => Some(false),
            [m] if *m == Monomial::ONE => Some(true),
            _ => None,
        }
    }

    pub fn max_exponent(&self) -> u16 {
        self.terms.iter().flat_map(|m| m.0).max().unwrap_or(0)
    }

    /// Symmetric difference of the monomial sets.
    pub fn add(&self, other: &SparsePoly7) -> SparsePoly7 {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        SparsePoly7 { terms: out }
    }

    pub fn checked_mul(&self, other: &SparsePoly7) -> Result<SparsePoly7> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero());
        }
        if self.is_one() {
            return Ok(other.clone());
        }
        if other.is_one() {
            return Ok(self.clone());
        }
        let mut set = HashSet::with_capacity(self.len() * other.len());
        for a in &self.terms {
            for b in &other.terms {
                let m = a.checked_mul(b)?;
                if !set.remove(&m) {
                    set.insert(m);
                }
            }
        }
        Ok(Self::from_set(set))
    }

    /// p^(2^j): in characteristic 2 this scales every exponent vector by 2^j.
    pub fn checked_frobenius(&self, j: u32) -> Result<SparsePoly7> {
        let factor = 1u64.checked_shl(j).ok_or(Error::ExponentOverflow)?;
        let terms = self
            .terms
            .iter()
            .map(|m| m.checked_scale(factor))
            .collect::<Result<Vec<_>>>()?;
        // Scaling by a positive constant preserves the order.
        Ok(SparsePoly7 { terms })
    }

    pub fn checked_pow(&self, mut n: u64) -> Result<SparsePoly7> {
        let mut acc = Self::one();
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.checked_frobenius(1)?;
            }
        }
        Ok(acc)
    }

    /// Evaluates under a ring homomorphism sending a_i to `values[i - 1]`.
    pub fn eval<D: CoeffDomain>(&self, dom: &D, values: &[D::Elem; NVARS]) -> D::Elem {
        let mut acc = dom.zero();
        for m in &self.terms {
            let mut term = dom.one();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = dom.mul(&term, &dom.pow(&values[i], e as u64));
                }
            }
            acc = dom.add(&acc, &term);
        }
        acc
    }

    /// Substitutes polynomials for variables: a_i -> `values[i - 1]`.
    pub fn substitute(&self, values: &[SparsePoly7; NVARS]) -> SparsePoly7 {
        self.eval(&Gf2Poly, values)
    }

    /// Reduces every exponent j >= q to ((j - 1) mod (q - 1)) + 1, the
    /// representative that defines the same function on GF(q). Colliding
    /// monomials cancel in pairs.
    pub fn reduce_exponents(&self, q: u32) -> Result<SparsePoly7> {
        if q < 2 {
            return Err(Error::OutOfRange(format!(
                "field order {q} must be at least 2"
            )));
        }
        let reduced = self.terms.iter().map(|m| {
            let mut e = m.0;
            for x in e.iter_mut() {
                let j = *x as u32;
                if j >= q {
                    *x = (((j - 1) % (q - 1)) + 1) as u16;
                }
            }
            Monomial(e)
        });
        Ok(Self::from_monomials(reduced))
    }
}

impl fmt::Display for SparsePoly7 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, m) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl FromStr for SparsePoly7 {
    type Err = Error;

    /// Parses expressions over a1..a7 with `+`, `*`, `^`, parentheses and the
    /// constants 0 and 1, e.g. `a3*(a3^4 + a3^3 + a2^2)^4`.
    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser {
            src: s.as_bytes(),
            pos: 0,
        };
        let out = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(Error::Parse(format!(
                "unexpected input at offset {} in {s:?}",
                p.pos
            )));
        }
        Ok(out)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Parse(format!("expected a number at offset {start}")))
    }

    fn expr(&mut self) -> Result<SparsePoly7> {
        let mut acc = self.term()?;
        while self.eat(b'+') {
            acc = acc.add(&self.term()?);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<SparsePoly7> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = acc.checked_mul(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<SparsePoly7> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let n = self.number()?;
            return base.checked_pow(n);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<SparsePoly7> {
        self.skip_ws();
        match self.src.get(self.pos) {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(Error::Parse(format!("missing ')' at offset {}", self.pos)));
                }
                Ok(inner)
            }
            Some(b'a') => {
                self.pos += 1;
                let i = self.number()? as usize;
                if !(1..=NVARS).contains(&i) {
                    return Err(Error::Parse(format!("unknown variable a{i}")));
                }
                Ok(SparsePoly7::var(i))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.number()?;
                Ok(SparsePoly7::constant(n % 2 == 1))
            }
            _ => Err(Error::Parse(format!(
                "unexpected token at offset {}",
                self.pos
            ))),
        }
    }
}

/// The ring F2[a1..a7] itself.
///
/// Ring operations panic on u16 exponent overflow; use the `checked_*`
/// methods on [`SparsePoly7`] where inputs are untrusted.
#[derive(Copy, Clone, Debug, Default)]
pub struct Gf2Poly;

impl CoeffDomain for Gf2Poly {
    type Elem = SparsePoly7;

    fn zero(&self) -> SparsePoly7 {
        SparsePoly7::zero()
    }

    fn one(&self) -> SparsePoly7 {
        SparsePoly7::one()
    }

    fn add(&self, a: &SparsePoly7, b: &SparsePoly7) -> SparsePoly7 {
        a.add(b)
    }

    fn mul(&self, a: &SparsePoly7, b: &SparsePoly7) -> SparsePoly7 {
        a.checked_mul(b).expect("exponent overflow in F2[a1..a7]")
    }

    fn is_zero(&self, a: &SparsePoly7) -> bool {
        a.is_zero()
    }

    fn square(&self, a: &SparsePoly7) -> SparsePoly7 {
        a.checked_frobenius(1)
            .expect("exponent overflow in F2[a1..a7]")
    }
}

/// The seven indeterminates in a1..a7 order.
pub fn variables() -> [SparsePoly7; NVARS] {
    std::array::from_fn(|i| SparsePoly7::var(i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;

    fn p(s: &str) -> SparsePoly7 {
        s.parse().unwrap()
    }

    #[test]
    fn display_order_matches_printed_identities() {
        let f = p("a1*a7^2 + a4^2*a7 + a3*a6^2 + a5^3");
        assert_eq!(f.to_string(), "a5^3 + a3*a6^2 + a4^2*a7 + a1*a7^2");
        let g = p("a2*a7^4 + a6^5 + a2^4*a7 + a3^5");
        assert_eq!(g.to_string(), "a3^5 + a6^5 + a2^4*a7 + a2*a7^4");
        assert_eq!(SparsePoly7::zero().to_string(), "0");
        assert_eq!(SparsePoly7::one().to_string(), "1");
    }

    #[test]
    fn characteristic_two() {
        let f = p("a1 + a2*a3 + 1");
        assert!(f.add(&f).is_zero());
        assert_eq!(p("(a3 + a5)^2"), p("a3^2 + a5^2"));
        assert_eq!(
            p("a5").checked_pow(3).unwrap(),
            SparsePoly7::monomial(Monomial([0, 0, 0, 0, 3, 0, 0]))
        );
        assert_eq!(p("a1 + a1"), SparsePoly7::zero());
        assert_eq!(p("3"), SparsePoly7::one());
    }

    #[test]
    fn substitution_example() {
        let f = p("a5^3 + a3*a6^2");
        let ctx = FieldCtx::new(4).unwrap();
        let e = ctx.generator();
        for a3 in ctx.elements() {
            let mut vals = [crate::field::FieldElement::ZERO; NVARS];
            vals[2] = a3;
            vals[4] = e;
            assert_eq!(f.eval(&ctx, &vals), ctx.pow(e, 3));
        }
        assert_eq!(f.substitute(&variables()), f);
        let with_const = p("a1*a2 + 1");
        assert_eq!(
            with_const.eval(&ctx, &[crate::field::FieldElement::ZERO; NVARS]),
            crate::field::FieldElement::ONE
        );
    }

    #[test]
    fn exponent_reduction() {
        assert_eq!(p("a2^128").reduce_exponents(128).unwrap(), p("a2"));
        assert_eq!(p("a5^256").reduce_exponents(128).unwrap(), p("a5^2"));
        assert_eq!(
            p("a5^127 + 1").reduce_exponents(128).unwrap(),
            p("a5^127 + 1")
        );
        assert_eq!(
            p("a2^256*a5 + a2^2*a5").reduce_exponents(128).unwrap(),
            SparsePoly7::zero()
        );
        assert!(p("a1").reduce_exponents(1).is_err());
    }

    #[test]
    fn overflow_is_reported() {
        let big = p("a1^40000");
        assert_eq!(big.checked_mul(&big), Err(Error::ExponentOverflow));
        assert_eq!(big.checked_frobenius(1), Err(Error::ExponentOverflow));
    }

    #[test]
    fn parse_errors() {
        assert!("a8".parse::<SparsePoly7>().is_err());
        assert!("a1 +".parse::<SparsePoly7>().is_err());
        assert!("(a1".parse::<SparsePoly7>().is_err());
        assert!("a1 a2".parse::<SparsePoly7>().is_err());
    }
}
