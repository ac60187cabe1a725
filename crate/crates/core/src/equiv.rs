//! Exceptionality, normal forms under linear transformations, and Frobenius
//! orbit reduction for octics over GF(2^r).
//!
//! A normalized octic x^8 + a7 x^7 + ... + a1 x is in normal form when
//!
//! * (R1) (a7, a6) is (1, 0), (0, 1) or (0, 0);
//! * (R2) if (a7, a6) = (0, 1) then a4 = 0 when a5 = 0, and a4 is 0 or
//!   omega(a5) otherwise;
//! * (R3) if a7 = a6 = 0 != a5 then a4 = 0 and a5 lies in Lambda, which is
//!   {1} for odd r and {1, e, e^2} for even r.
//!
//! Every octic is linearly related to one in normal form, and two normal
//! forms with (a7, a6, a5) != 0 are related only by the identity, by the
//! shift x -> x + a5 (shape (0, 1) with a5 (a3 + a5^3) != 0), or, for even r
//! and shape (0, 0, a5), by x -> t x with t a primitive cube root of unity.

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};
use crate::octic::{LinearWitness, Octic};

/// A normal form together with the witness mapping the input onto it:
/// `input.linear_sub(&witness) == octic`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub octic: Octic,
    pub witness: LinearWitness,
}

/// The element outside {u^2 + a u : u in GF(q)} with the smallest log index.
///
/// Log indices run 1..q-1 with the unit last, which is the order in which
/// the nonzero elements e, e^2, ..., 1 are scanned.
pub fn omega(ctx: &FieldCtx, a: FieldElement) -> Result<FieldElement> {
    if a.is_zero() {
        return Err(Error::Domain(
            "omega(0) is undefined: u -> u^2 is onto".into(),
        ));
    }
    let image = additive_image(ctx, a);
    ctx.nonzero_by_log()
        .find(|w| !image[w.bits() as usize])
        .ok_or_else(|| Error::Domain("u -> u^2 + a u is onto".into()))
}

fn additive_image(ctx: &FieldCtx, a: FieldElement) -> Vec<bool> {
    let mut image = vec![false; ctx.q() as usize];
    for u in ctx.elements() {
        image[ctx.add(ctx.square(u), ctx.mul(a, u)).bits() as usize] = true;
    }
    image
}

/// Coset representatives of GF(q)* modulo cubes: {1} or {1, e, e^2}.
pub fn lambda(ctx: &FieldCtx) -> Vec<FieldElement> {
    if ctx.r() % 2 == 1 {
        vec![FieldElement::ONE]
    } else {
        let e = ctx.generator();
        vec![FieldElement::ONE, e, ctx.square(e)]
    }
}

/// One element per Frobenius orbit on GF(q)*, each the orbit member with
/// the smallest log index.
pub fn gamma(ctx: &FieldCtx) -> Vec<FieldElement> {
    let mut covered = vec![false; ctx.q() as usize];
    let mut reps = Vec::new();
    for a in ctx.nonzero_by_log() {
        if covered[a.bits() as usize] {
            continue;
        }
        reps.push(a);
        for j in 0..ctx.r() {
            covered[ctx.frob(a, j).bits() as usize] = true;
        }
    }
    reps
}

/// Finds (a, j) with `a` in [`gamma`] and a^(2^j) = c.
pub fn orbit_representative(ctx: &FieldCtx, c: FieldElement) -> Option<(FieldElement, u32)> {
    if c.is_zero() {
        return None;
    }
    for a in gamma(ctx) {
        for j in 0..ctx.r() {
            if ctx.frob(a, j) == c {
                return Some((a, j));
            }
        }
    }
    None
}

/// Square matrix over GF(q): entry (i, j) = c_{(i - j) mod r}^(2^j), where
/// c_0..c_3 = a1, a2, a4, a8 are the coefficients of the linearized part.
pub fn dickson_matrix(f: &Octic) -> Vec<Vec<FieldElement>> {
    let ctx = f.ctx();
    let r = ctx.r() as usize;
    let mut c = vec![FieldElement::ZERO; r];
    for (s, deg) in [1usize, 2, 4, 8].into_iter().enumerate() {
        if s < r {
            c[s] = ctx.add(c[s], f.coeff(deg));
        }
    }
    (0..r)
        .map(|i| {
            (0..r)
                .map(|j| ctx.frob(c[(i + r - j) % r], j as u32))
                .collect()
        })
        .collect()
}

/// Determinant by Gaussian elimination with first-nonzero pivoting.
pub fn determinant(ctx: &FieldCtx, matrix: &[Vec<FieldElement>]) -> FieldElement {
    let n = matrix.len();
    let mut m: Vec<Vec<FieldElement>> = matrix.to_vec();
    let mut det = FieldElement::ONE;
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&row| !m[row][col].is_zero()) else {
            return FieldElement::ZERO;
        };
        // Row swaps do not change the sign in characteristic 2.
        m.swap(col, pivot);
        let p = m[col][col];
        det = ctx.mul(det, p);
        let p_inv = ctx.inv(p).expect("pivot is nonzero");
        for row in col + 1..n {
            let factor = ctx.mul(m[row][col], p_inv);
            if factor.is_zero() {
                continue;
            }
            for k in col..n {
                let sub = ctx.mul(factor, m[col][k]);
                m[row][k] = ctx.add(m[row][k], sub);
            }
        }
    }
    det
}

/// f is exceptional iff f - f(0) is linearized (a7 = a6 = a5 = a3 = 0) and
/// its Dickson determinant is nonzero. Requires r > 3.
pub fn is_exceptional_deg8(f: &Octic) -> Result<bool> {
    let ctx = f.ctx();
    if ctx.r() <= 3 {
        return Err(Error::Precondition(format!(
            "exceptionality test needs r > 3, got r = {}",
            ctx.r()
        )));
    }
    if [7, 6, 5, 3].iter().any(|&i| !f.coeff(i).is_zero()) {
        return Ok(false);
    }
    Ok(!determinant(ctx, &dickson_matrix(f)).is_zero())
}

/// Whether a normalized octic satisfies (R1)-(R3).
pub fn satisfies_requirements(f: &Octic) -> bool {
    if !f.is_normalized() {
        return false;
    }
    let ctx = f.ctx();
    let [a7, a6, a5, a4, ..] = f.tuple();
    let one = FieldElement::ONE;
    match (a7 == one, a6 == one, a7.is_zero(), a6.is_zero()) {
        (true, _, _, true) => true,
        (_, true, true, _) => {
            if a5.is_zero() {
                a4.is_zero()
            } else {
                a4.is_zero() || Some(a4) == omega(ctx, a5).ok()
            }
        }
        (_, _, true, true) => a5.is_zero() || (a4.is_zero() && lambda(ctx).contains(&a5)),
        _ => false,
    }
}

fn shift_witness(f: &Octic, u: FieldElement) -> LinearWitness {
    // f(x + u) - f(u)
    LinearWitness {
        s: FieldElement::ONE,
        t: FieldElement::ONE,
        u,
        v: f.eval_in_field(u),
    }
}

/// Maps an arbitrary octic to a linearly related normal form.
pub fn normalize(h: &Octic) -> Result<NormalForm> {
    let ctx = h.ctx().clone();
    let mut cur = h.clone();
    let mut total = LinearWitness::IDENTITY;
    let mut apply = |cur: &mut Octic, w: LinearWitness| -> Result<()> {
        *cur = cur.linear_sub(&w)?;
        total = total.then(&ctx, &w);
        Ok(())
    };

    // Monic with zero constant term.
    let lead_inv = ctx.inv(cur.coeff(8))?;
    if lead_inv != FieldElement::ONE || !cur.coeff(0).is_zero() {
        let w = LinearWitness {
            s: lead_inv,
            t: FieldElement::ONE,
            u: FieldElement::ZERO,
            v: ctx.mul(lead_inv, cur.coeff(0)),
        };
        apply(&mut cur, w)?;
    }

    // (R1)
    let (c7, c6) = (cur.coeff(7), cur.coeff(6));
    if !c7.is_zero() {
        if c7 != FieldElement::ONE || !c6.is_zero() {
            let s = ctx.pow_signed(c7, -8)?;
            let u = ctx.div(c6, c7)?;
            let w = LinearWitness {
                s,
                t: c7,
                u,
                v: ctx.mul(s, cur.eval_in_field(u)),
            };
            apply(&mut cur, w)?;
        }
    } else if !c6.is_zero() && c6 != FieldElement::ONE {
        let t = ctx.frob(c6, ctx.r() - 1);
        let w = LinearWitness {
            s: ctx.pow_signed(c6, -4)?,
            t,
            u: FieldElement::ZERO,
            v: FieldElement::ZERO,
        };
        apply(&mut cur, w)?;
    }

    let [a7, a6, a5, a4, ..] = cur.tuple();
    if a7.is_zero() && a6 == FieldElement::ONE {
        // (R2): the x^4 coefficient of f(x+u) - f(u) is u^2 + a5 u + a4.
        if a5.is_zero() {
            if !a4.is_zero() {
                let u = ctx.frob(a4, ctx.r() - 1);
                let w = shift_witness(&cur, u);
                apply(&mut cur, w)?;
            }
        } else {
            let w = omega(&ctx, a5)?;
            let target_keep = a4;
            let target_omega = ctx.add(a4, w);
            let u = ctx
                .elements_by_log()
                .find(|&u| {
                    let y = ctx.add(ctx.square(u), ctx.mul(a5, u));
                    y == target_keep || y == target_omega
                })
                .expect("u^2 + a5 u hits a4 or a4 + omega(a5)");
            if !u.is_zero() {
                let w = shift_witness(&cur, u);
                apply(&mut cur, w)?;
            }
        }
    } else if a7.is_zero() && a6.is_zero() && !a5.is_zero() {
        // (R3)
        if !a4.is_zero() {
            let u = ctx.div(a4, a5)?;
            let w = shift_witness(&cur, u);
            apply(&mut cur, w)?;
        }
        let a5 = cur.coeff(5);
        let reps = lambda(&ctx);
        let t = std::iter::once(FieldElement::ONE)
            .chain(ctx.nonzero_by_log())
            .find(|&t| reps.contains(&ctx.mul(ctx.pow_signed(t, -3).expect("t != 0"), a5)))
            .expect("Lambda represents every coset of cubes");
        if t != FieldElement::ONE {
            let w = LinearWitness {
                s: ctx.pow_signed(t, -8)?,
                t,
                u: FieldElement::ZERO,
                v: FieldElement::ZERO,
            };
            apply(&mut cur, w)?;
        }
    }

    debug_assert!(satisfies_requirements(&cur));
    Ok(NormalForm {
        octic: cur,
        witness: total,
    })
}

/// The shift partner f(x + a5) - f(a5) of a (0, 1)-shaped normal form with
/// a5 (a3 + a5^3) != 0.
pub fn shift_partner(f: &Octic) -> Option<Octic> {
    let ctx = f.ctx();
    let [a7, a6, a5, _, a3, ..] = f.tuple();
    if !(a7.is_zero() && a6 == FieldElement::ONE) || a5.is_zero() || a3 == ctx.pow(a5, 3) {
        return None;
    }
    f.linear_sub(&shift_witness(f, a5)).ok()
}

/// The primitive cube roots of unity e^((q-1)/3), e^(2(q-1)/3) for even r.
pub fn cube_roots_of_unity(ctx: &FieldCtx) -> Vec<FieldElement> {
    if ctx.r() % 2 == 1 {
        return Vec::new();
    }
    let third = ((ctx.q() - 1) / 3) as u64;
    vec![ctx.exp(third), ctx.exp(2 * third)]
}

/// Decides whether two normal forms with (a7, a6, a5) != (0, 0, 0) are
/// linearly related, returning a witness g = s f(t x + u) + v.
pub fn linearly_related(f: &Octic, g: &Octic) -> Result<Option<LinearWitness>> {
    f.check_same_field(g)?;
    for p in [f, g] {
        if !satisfies_requirements(p) {
            return Err(Error::Precondition(format!(
                "{p} does not satisfy (R1)-(R3)"
            )));
        }
        let [a7, a6, a5, ..] = p.tuple();
        if a7.is_zero() && a6.is_zero() && a5.is_zero() {
            return Err(Error::Precondition(format!(
                "{p} has (a7, a6, a5) = (0, 0, 0)"
            )));
        }
    }
    if f == g {
        return Ok(Some(LinearWitness::IDENTITY));
    }
    if let Some(partner) = shift_partner(f) {
        if partner == *g {
            return Ok(Some(shift_witness(f, f.coeff(5))));
        }
    }
    let ctx = f.ctx();
    let [a7, a6, a5, a4, ..] = f.tuple();
    if a7.is_zero() && a6.is_zero() && a4.is_zero() && !a5.is_zero() {
        for t in cube_roots_of_unity(ctx) {
            let w = LinearWitness {
                s: ctx.pow_signed(t, -8)?,
                t,
                u: FieldElement::ZERO,
                v: FieldElement::ZERO,
            };
            if f.linear_sub(&w)? == *g {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

/// Exhaustive witness search over t in GF(q)*, u in GF(q). Works for any
/// pair of octics over the same field.
pub fn find_witness_brute(f: &Octic, g: &Octic) -> Result<Option<LinearWitness>> {
    f.check_same_field(g)?;
    let ctx = f.ctx();
    for t in ctx.nonzero_by_log() {
        let denom = ctx.mul(f.coeff(8), ctx.pow(t, 8));
        let s = ctx.div(g.coeff(8), denom)?;
        for u in ctx.elements() {
            let partial = f.linear_sub(&LinearWitness {
                s,
                t,
                u,
                v: FieldElement::ZERO,
            })?;
            let v = ctx.add(partial.coeff(0), g.coeff(0));
            if partial.add_constant(v) == *g {
                return Ok(Some(LinearWitness { s, t, u, v }));
            }
        }
    }
    Ok(None)
}

/// Result of [`frobenius_reduce`]: the input is linearly related to
/// `form.octic.frobenius(j)`, and `form.octic` has a5 in [`gamma`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusReduced {
    pub form: NormalForm,
    pub j: u32,
}

/// Moves a (0, 1, a5 != 0)-shaped octic onto a normal form with a5 in
/// Gamma(r), up to a Frobenius power. Permutation behaviour is preserved.
pub fn frobenius_reduce(f: &Octic) -> Result<FrobeniusReduced> {
    let ctx = f.ctx();
    let [a7, a6, a5, ..] = f.tuple();
    if !f.is_normalized() || !a7.is_zero() || a6 != FieldElement::ONE || a5.is_zero() {
        return Err(Error::Precondition(format!(
            "{f} is not of the shape x^8 + x^6 + a5 x^5 + ... with a5 != 0"
        )));
    }
    let (_, j) = orbit_representative(ctx, a5).expect("gamma covers GF(q)*");
    let lifted = f.frobenius((ctx.r() - j) % ctx.r());
    let form = normalize(&lifted)?;
    Ok(FrobeniusReduced { form, j })
}
