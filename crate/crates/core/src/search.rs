//! Classification drivers for r = 4, 5, 6 and proof replay for r = 7, 8, 9.
//!
//! Each driver first re-derives the Hermite constraints it prunes with,
//! symbolically, and records them as proof steps. The search then runs over
//! the (R1)-(R3) shapes that survive the constraints.

use std::fmt;

use rayon::prelude::*;

use crate::equiv::{gamma, is_exceptional_deg8, linearly_related, omega, shift_partner};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};
use crate::hermite::{hc_symbolic, HcPlan};
use crate::octic::Octic;
use crate::pptest::{is_pp_brute, PpTester};
use crate::symring::SparsePoly7;
use crate::unipoly::FunctionRing;

/// One search output: a normalized non-exceptional PP in normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassRecord {
    pub r: u32,
    /// (a7, ..., a1) in log form.
    pub tuple: [u32; 7],
    /// Kept by the Frobenius filter: a5 in Gamma(r) for the shape
    /// (0, 1, a5 != 0), always true for other shapes.
    pub frobenius_rep: bool,
    /// Index of the shift partner x -> x + a5 in the same record list.
    pub pair_link: Option<usize>,
    /// Index of the class this record belongs to, counted in record order.
    pub class_id: usize,
}

impl ClassRecord {
    pub fn octic(&self, ctx: &FieldCtx) -> Result<Octic> {
        Octic::from_log_tuple(ctx, self.tuple)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum StepStatus {
    Pass,
    Fail,
}

impl fmt::Display for StepStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StepStatus::Pass => "PASS",
            StepStatus::Fail => "FAIL",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofStep {
    pub name: String,
    pub status: StepStatus,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProofReport {
    pub steps: Vec<ProofStep>,
}

impl ProofReport {
    pub fn passed(&self) -> bool {
        self.steps.iter().all(|s| s.status == StepStatus::Pass)
    }

    pub fn first_failure(&self) -> Option<&ProofStep> {
        self.steps.iter().find(|s| s.status == StepStatus::Fail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub r: u32,
    pub modulus: u32,
    pub records: Vec<ClassRecord>,
    pub class_count: usize,
    pub report: ProofReport,
}

impl Classification {
    /// The records kept by the Frobenius filter.
    pub fn frobenius_reduced(&self) -> Vec<&ClassRecord> {
        self.records.iter().filter(|c| c.frobenius_rep).collect()
    }

    pub fn verdict(&self) -> String {
        if !self.report.passed() {
            return "FAIL".into();
        }
        if self.r >= 7 {
            format!("no non-exceptional degree-8 PP over GF(2^{})", self.r)
        } else {
            format!(
                "{} records in {} classes of non-exceptional degree-8 PPs over GF(2^{})",
                self.records.len(),
                self.class_count,
                self.r
            )
        }
    }
}

/// How a computed polynomial is compared with the displayed one.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
enum Cmp {
    Exact,
    /// Equal after reducing every exponent with a^q = a.
    ModField(u32),
}

fn poly(s: &str) -> Result<SparsePoly7> {
    s.parse()
}

fn polys(coeffs: [&str; 7]) -> Result<[SparsePoly7; 7]> {
    let mut out: [SparsePoly7; 7] = Default::default();
    for (slot, s) in out.iter_mut().zip(coeffs) {
        *slot = poly(s)?;
    }
    Ok(out)
}

fn sym_hc(r: u32, k: u64, coeffs: [&str; 7]) -> Result<SparsePoly7> {
    hc_symbolic(r, k, &polys(coeffs)?)
}

fn hc_label(r: u32, k: u64, coeffs: [&str; 7]) -> String {
    format!("HC({r},{k},{})", coeffs.join(","))
}

fn compare(got: &SparsePoly7, expected: &SparsePoly7, cmp: Cmp) -> Result<bool> {
    Ok(match cmp {
        Cmp::Exact => got == expected,
        Cmp::ModField(q) => got.reduce_exponents(q)? == expected.reduce_exponents(q)?,
    })
}

fn cmp_suffix(cmp: Cmp) -> String {
    match cmp {
        Cmp::Exact => String::new(),
        Cmp::ModField(q) => format!(" (mod a^{q} = a)"),
    }
}

/// Collects proof steps; after the first failure later steps are skipped.
struct Replay {
    steps: Vec<ProofStep>,
}

impl Replay {
    fn new() -> Self {
        Replay { steps: Vec::new() }
    }

    fn failed(&self) -> bool {
        self.steps.iter().any(|s| s.status == StepStatus::Fail)
    }

    /// Runs `check`, which returns (ok, detail). Computation errors count as
    /// failures.
    fn step(&mut self, name: impl Into<String>, check: impl FnOnce() -> Result<(bool, String)>) {
        if self.failed() {
            return;
        }
        let (status, detail) = match check() {
            Ok((true, detail)) => (StepStatus::Pass, detail),
            Ok((false, detail)) => (StepStatus::Fail, detail),
            Err(e) => (StepStatus::Fail, format!("error: {e}")),
        };
        self.steps.push(ProofStep {
            name: name.into(),
            status,
            detail,
        });
    }

    /// lhs = e_1 = e_2 = ..., each equality under its comparator.
    fn chain(
        &mut self,
        label: &str,
        lhs: impl FnOnce() -> Result<SparsePoly7>,
        rhs: &[(&str, Cmp)],
    ) {
        let mut name = label.to_string();
        for (e, cmp) in rhs {
            name.push_str(&format!(" = {e}{}", cmp_suffix(*cmp)));
        }
        self.step(name, || {
            let mut cur = lhs()?;
            for (e, cmp) in rhs {
                let next = poly(e)?;
                if !compare(&cur, &next, *cmp)? {
                    return Ok((false, format!("computed {cur}, expected {next}")));
                }
                cur = next;
            }
            Ok((true, format!("{cur}")))
        });
    }

    fn hc(&mut self, r: u32, k: u64, coeffs: [&str; 7], rhs: &[(&str, Cmp)]) {
        self.chain(&hc_label(r, k, coeffs), || sym_hc(r, k, coeffs), rhs);
    }

    fn not_pp(&mut self, ctx: &FieldCtx, tuple: [&str; 7], shown: &str) {
        self.step(format!("{shown} is not a PP over GF({})", ctx.q()), || {
            let mut c = [FieldElement::ZERO; 7];
            for (slot, s) in c.iter_mut().zip(tuple) {
                *slot = ctx.parse_element(s)?;
            }
            let f = Octic::normalized(ctx, c)?;
            Ok((
                !is_pp_brute(&f),
                format!("value set size {}", f.value_multiset().len()),
            ))
        });
    }

    fn finish(self) -> ProofReport {
        ProofReport { steps: self.steps }
    }
}

fn require_r(ctx: &FieldCtx, r: u32) -> Result<()> {
    if ctx.r() != r {
        return Err(Error::Precondition(format!(
            "expected a field with r = {r}, got r = {}",
            ctx.r()
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Exhaustive checks shared by the replays.

/// Over every t in F*, the octic x^8 + x^6 + t^2 x^3 + (t^4 + t^3) x^2 + t^4 x
/// has (a3, a2, a1) = (t^2, t^4 + t^3, t^4) solving the two displayed HC
/// equations and satisfies f(t + 1) = t^8 + t^5 = f(t).
fn t_family(rp: &mut Replay, ctx: &FieldCtx, k_pair: (u64, u64)) {
    let r = ctx.r();
    rp.step(
        format!(
            "a3 = t^2, a2 = t^4 + t^3, a1 = t^4 solves HC({r},{}) = HC({r},{}) = 0 and f(t+1) = t^8 + t^5 = f(t) for all t in GF({})*",
            k_pair.0,
            k_pair.1,
            ctx.q()
        ),
        || {
            let p0 = HcPlan::new(r, k_pair.0)?;
            let p1 = HcPlan::new(r, k_pair.1)?;
            let z = FieldElement::ZERO;
            for t in ctx.nonzero_by_log() {
                let a3 = ctx.square(t);
                let a2 = ctx.add(ctx.pow(t, 4), ctx.pow(t, 3));
                let a1 = ctx.pow(t, 4);
                // a1 = a3^3 + a2^2 / a3
                let derived = ctx.add(ctx.pow(a3, 3), ctx.div(ctx.square(a2), a3)?);
                if derived != a1 {
                    return Ok((false, format!("a1 mismatch at t = {}", ctx.format_element(t))));
                }
                let coeffs = [z, FieldElement::ONE, z, z, a3, a2, a1];
                if !p0.eval(ctx, &coeffs).is_zero() || !p1.eval(ctx, &coeffs).is_zero() {
                    return Ok((false, format!("HC nonzero at t = {}", ctx.format_element(t))));
                }
                let f = Octic::normalized(ctx, coeffs)?;
                let t1 = ctx.add(t, FieldElement::ONE);
                let target = ctx.add(ctx.pow(t, 8), ctx.pow(t, 5));
                if t1 == t || f.eval_in_field(t) != target || f.eval_in_field(t1) != target {
                    return Ok((false, format!("no collision at t = {}", ctx.format_element(t))));
                }
            }
            Ok((true, format!("{} values of t", ctx.q() - 1)))
        },
    );
}

/// f = x^8 + x^6 + a5 x^5 + a4 x^4 + a5^3 x^3 + a2 x^2
///     + (a5^7 + a5^5 + a4 a5^3 + a2 a5) x has f(a5) = 0 = f(0).
fn a5_family(rp: &mut Replay, ctx: &FieldCtx) {
    let a1 = "a5^7 + a5^5 + a4*a5^3 + a2*a5";
    rp.step(format!("f(a5) = 0 for f = x^8 + x^6 + a5*x^5 + a4*x^4 + a5^3*x^3 + a2*x^2 + ({a1})*x, symbolically"), || {
        let coeffs = [poly("1")?, poly("0")?, poly("1")?, poly("a5")?, poly("a4")?, poly("a5^3")?, poly("a2")?, poly(a1)?];
        // Horner over x^8, ..., x^1 at x = a5; the constant term is zero.
        let x = poly("a5")?;
        let mut acc = SparsePoly7::zero();
        for c in &coeffs {
            acc = acc.checked_mul(&x)?.add(c);
        }
        acc = acc.checked_mul(&x)?;
        Ok((acc.is_zero(), format!("f(a5) = {acc}")))
    });
    rp.step(
        format!(
            "f(a5) = 0 = f(0) for every a5 in GF({q})*, a4, a2 in GF({q})",
            q = ctx.q()
        ),
        || {
            let bad =
                ctx.nonzero_by_log()
                    .collect::<Vec<_>>()
                    .into_par_iter()
                    .find_any(|&a5| {
                        for a4 in ctx.elements() {
                            for a2 in ctx.elements() {
                                let a3 = ctx.pow(a5, 3);
                                let a1 = ctx.add(
                                    ctx.add(ctx.pow(a5, 7), ctx.pow(a5, 5)),
                                    ctx.add(ctx.mul(a4, a3), ctx.mul(a2, a5)),
                                );
                                let c = [
                                    FieldElement::ZERO,
                                    a1,
                                    a2,
                                    a3,
                                    a4,
                                    a5,
                                    FieldElement::ONE,
                                    FieldElement::ZERO,
                                    FieldElement::ONE,
                                ];
                                let v = c.iter().rev().fold(FieldElement::ZERO, |acc, &x| {
                                    ctx.add(ctx.mul(acc, a5), x)
                                });
                                if !v.is_zero() {
                                    return true;
                                }
                            }
                        }
                        false
                    });
            Ok(match bad {
                None => (
                    true,
                    format!("{} triples", (ctx.q() as u64 - 1) * (ctx.q() as u64).pow(2)),
                ),
                Some(a5) => (
                    false,
                    format!("f(a5) != 0 at a5 = {}", ctx.format_element(a5)),
                ),
            })
        },
    );
}

// ---------------------------------------------------------------------------
// r = 7

pub fn verify_r7(ctx: &FieldCtx) -> Result<ProofReport> {
    require_r(ctx, 7)?;
    let q = ctx.q();
    let e = Cmp::Exact;
    let m = Cmp::ModField(q);
    let mut rp = Replay::new();

    rp.hc(
        7,
        23,
        ["0", "0", "a5", "a4", "a3", "a2", "a1"],
        &[("a5^19", e)],
    );
    rp.hc(
        7,
        29,
        ["0", "0", "0", "a4", "a3", "a2", "a1"],
        &[("a3^21", e)],
    );

    // (0, 1, 0)
    rp.hc(7, 43, ["0", "1", "0", "0", "0", "a2", "a1"], &[("a2", e)]);
    rp.hc(7, 55, ["0", "1", "0", "0", "0", "0", "a1"], &[("a1^16", e)]);
    rp.not_pp(ctx, ["0", "1", "0", "0", "0", "0", "0"], "x^8 + x^6");
    let c010 = ["0", "1", "0", "0", "a3", "a2", "a1"];
    rp.hc(7, 23, c010, &[("a3^5 + a2^2*a3 + a1*a3^2", e)]);
    rp.hc(
        7,
        27,
        c010,
        &[("a3^17 + a2^2*a3^9 + a1*a3^10 + a2^8*a3", e)],
    );
    rp.chain(
        &format!("{}*a3^8 + {}", hc_label(7, 23, c010), hc_label(7, 27, c010)),
        || {
            Ok(sym_hc(7, 23, c010)?
                .checked_mul(&poly("a3^8")?)?
                .add(&sym_hc(7, 27, c010)?))
        },
        &[
            ("a3^17 + a3^13 + a2^8*a3", e),
            ("a3*(a3^4 + a3^3 + a2^2)^4", e),
        ],
    );
    t_family(&mut rp, ctx, (23, 27));

    // (0, 1, a5 != 0)
    let c01 = ["0", "1", "a5", "a4", "a3", "a2", "a1"];
    rp.chain(
        &format!("{}^4*a3 + {}", hc_label(7, 23, c01), hc_label(7, 29, c01)),
        || {
            Ok(sym_hc(7, 23, c01)?
                .checked_pow(4)?
                .checked_mul(&poly("a3")?)?
                .add(&sym_hc(7, 29, c01)?))
        },
        &[("a3*a5^76 + a3^5*a5^64", e), ("a3*a5^64*(a5^3 + a3)^4", e)],
    );

    // a3 = 0
    let c0 = ["0", "1", "a5", "a4", "0", "a2", "a1"];
    rp.chain(
        &format!("{} + {}^8*a5^3", hc_label(7, 27, c0), hc_label(7, 43, c0)),
        || {
            Ok(sym_hc(7, 27, c0)?.add(
                &sym_hc(7, 43, c0)?
                    .checked_frobenius(3)?
                    .checked_mul(&poly("a5^3")?)?,
            ))
        },
        &[
            ("a2^256*a5^27 + a5^67 + a1^2*a5^25", e),
            ("a2^2*a5^27 + a5^67 + a1^2*a5^25", m),
            ("a5^25*(a1 + a2*a5 + a5^21)^2", e),
        ],
    );
    let c0a1 = ["0", "1", "a5", "a4", "0", "a2", "a5^21 + a2*a5"];
    let e23 = "a5^43 + a5^27 + a5^19 + a2*a5^7 + a4^4*a5^3 + a2^2*a5^3";
    rp.hc(7, 23, c0a1, &[(e23, e)]);
    let a4 = "a2^64 + a2^32*a5 + a5^10 + a5^6 + a5^4";
    rp.chain(
        &format!("({e23}) at a4 = {a4}"),
        || {
            let mut vals = crate::symring::variables();
            vals[3] = poly(a4)?;
            Ok(poly(e23)?.substitute(&vals))
        },
        &[("0", m)],
    );
    let c0a4 = ["0", "1", "a5", a4, "0", "a2", "a5^21 + a2*a5"];
    rp.hc(
        7,
        27,
        c0a4,
        &[
            (
                "a2^1024*a5^3 + a2^256*a5^27 + a5^163 + a5^67 + a5^51 + a2^2*a5^27 + a2^8*a5^3",
                e,
            ),
            ("a5^67 + a5^51 + a5^36", m),
            ("a5^35*(a5^32 + a5^16 + a5)", e),
        ],
    );
    rp.chain(
        "(a5^32 + a5^16 + a5)^8",
        || poly("(a5^32 + a5^16 + a5)^8"),
        &[("a5^2 + a5 + a5^8", m)],
    );
    rp.step(
        format!("the nonzero roots of a5^8 + a5^2 + a5 in GF({q}) are the roots of x^7 + x + 1"),
        || {
            let roots8: Vec<_> = ctx
                .nonzero_by_log()
                .filter(|&a| ctx.add(ctx.add(ctx.pow(a, 8), ctx.square(a)), a).is_zero())
                .collect();
            let roots7: Vec<_> = ctx
                .nonzero_by_log()
                .filter(|&a| {
                    ctx.add(ctx.add(ctx.pow(a, 7), a), FieldElement::ONE)
                        .is_zero()
                })
                .collect();
            Ok((
                roots8 == roots7 && roots7.len() == 7,
                format!("{} roots", roots7.len()),
            ))
        },
    );
    rp.step(
        format!(
            "HC(7,31,0,1,e,{},0,a2,e^21 + a2*e) mod a2^{q} - a2 is the constant e^2 + e != 0 for every root e of x^7 + x + 1",
            "a2^64 + a2^32*e + e^10 + e^6 + e^4"
        ),
        || {
            let ring = FunctionRing::new(ctx);
            let plan = HcPlan::new(7, 31)?;
            let y = ring.var();
            let mut shown = Vec::new();
            for rho in ctx.nonzero_by_log() {
                if !ctx.add(ctx.add(ctx.pow(rho, 7), rho), FieldElement::ONE).is_zero() {
                    continue;
                }
                let a4 = ring.from_terms(&[
                    (FieldElement::ONE, 64),
                    (rho, 32),
                    (ctx.add(ctx.add(ctx.pow(rho, 10), ctx.pow(rho, 6)), ctx.pow(rho, 4)), 0),
                ]);
                let a1 = ring.from_terms(&[(ctx.pow(rho, 21), 0), (rho, 1)]);
                let coeffs = [
                    ring.constant(FieldElement::ZERO),
                    ring.constant(FieldElement::ONE),
                    ring.constant(rho),
                    a4,
                    ring.constant(FieldElement::ZERO),
                    y.clone(),
                    a1,
                ];
                let got = plan.eval(&ring, &coeffs);
                let want = ctx.add(ctx.square(rho), rho);
                if got.as_constant() != Some(want) || want.is_zero() {
                    return Ok((false, format!("root {}: got degree {:?}", ctx.format_element(rho), got.degree())));
                }
                shown.push(ctx.format_element(want));
            }
            Ok((shown.len() == 7, format!("constants {}", shown.join(", "))))
        },
    );

    // a3 = a5^3
    let c53 = ["0", "1", "a5", "a4", "a5^3", "a2", "a1"];
    rp.hc(
        7,
        23,
        c53,
        &[
            ("a5^15 + a5^11 + a4^2*a5^7 + a2^2*a5^3 + a1^2*a5", e),
            ("a5*(a5^7 + a5^5 + a4*a5^3 + a2*a5 + a1)^2", e),
        ],
    );
    a5_family(&mut rp, ctx);

    // (1, 0)
    let c10 = ["1", "0", "a5", "a4", "a3", "a2", "a1"];
    rp.hc(7, 19, c10, &[("a5^3 + a4^2 + a1", e)]);
    rp.hc(7, 37, c10, &[("a3^33 + a2", e)]);
    rp.hc(
        7,
        27,
        ["1", "0", "a5", "a4", "a3", "a3^33", "a5^3 + a4^2"],
        &[
            ("a4^16*a5^8 + a3^8*a5^16 + a3^16", e),
            ("(a4^2*a5 + a3*a5^2 + a3^2)^8", e),
        ],
    );
    let a4_10 = "a3^64*a5^64 + a3*a5^63";
    let a1_10 = "a5^3 + a3*a5 + a3^2*a5^126";
    rp.step(
        format!("a4 = {a4_10} solves a4^2*a5 + a3*a5^2 + a3^2 = 0 on GF({q}) x GF({q})*"),
        || {
            for a3 in ctx.elements() {
                for a5 in ctx.nonzero_by_log() {
                    let a4 = ctx.add(
                        ctx.mul(ctx.pow(a3, 64), ctx.pow(a5, 64)),
                        ctx.mul(a3, ctx.pow(a5, 63)),
                    );
                    let v = ctx.add(
                        ctx.add(ctx.mul(ctx.square(a4), a5), ctx.mul(a3, ctx.square(a5))),
                        ctx.square(a3),
                    );
                    if !v.is_zero() {
                        return Ok((
                            false,
                            format!(
                                "fails at a3 = {}, a5 = {}",
                                ctx.format_element(a3),
                                ctx.format_element(a5)
                            ),
                        ));
                    }
                }
            }
            Ok((true, String::new()))
        },
    );
    rp.chain(
        &format!("a5^3 + a4^2 at a4 = {a4_10}"),
        || poly(&format!("a5^3 + ({a4_10})^2")),
        &[(a1_10, m)],
    );
    let search_coeffs = ["1", "0", "a5", a4_10, "a3", "a3^33", a1_10];
    rp.step(
        format!(
            "{}, {} and {} have no common zero on GF({q}) x GF({q})*",
            hc_label(7, 23, search_coeffs),
            hc_label(7, 29, search_coeffs),
            hc_label(7, 31, search_coeffs)
        ),
        || {
            let plans = [
                HcPlan::new(7, 23)?,
                HcPlan::new(7, 29)?,
                HcPlan::new(7, 31)?,
            ];
            let points: Vec<(FieldElement, FieldElement)> = ctx
                .elements()
                .flat_map(|b| ctx.nonzero_by_log().map(move |c| (b, c)))
                .collect();
            let common: Vec<_> = points
                .par_iter()
                .filter(|&&(a3, a5)| {
                    let a4 = ctx.add(
                        ctx.mul(ctx.pow(a3, 64), ctx.pow(a5, 64)),
                        ctx.mul(a3, ctx.pow(a5, 63)),
                    );
                    let a2 = ctx.pow(a3, 33);
                    let a1 = ctx.add(
                        ctx.add(ctx.pow(a5, 3), ctx.mul(a3, a5)),
                        ctx.mul(ctx.square(a3), ctx.pow(a5, 126)),
                    );
                    let c = [FieldElement::ONE, FieldElement::ZERO, a5, a4, a3, a2, a1];
                    plans.iter().all(|p| p.eval(ctx, &c).is_zero())
                })
                .collect();
            Ok((
                common.is_empty(),
                format!(
                    "{} points searched, {} common zeros",
                    points.len(),
                    common.len()
                ),
            ))
        },
    );

    Ok(rp.finish())
}

// ---------------------------------------------------------------------------
// r = 8

pub fn verify_r8(ctx: &FieldCtx) -> Result<ProofReport> {
    require_r(ctx, 8)?;
    let q = ctx.q();
    let e = Cmp::Exact;
    let m = Cmp::ModField(q);
    let mut rp = Replay::new();

    rp.hc(
        8,
        51,
        ["0", "0", "a5", "a4", "a3", "a2", "a1"],
        &[("a5^51", e)],
    );
    rp.hc(
        8,
        55,
        ["0", "0", "0", "a4", "a3", "a2", "a1"],
        &[("a3^37", e)],
    );

    // (0, 1)
    let c01 = ["0", "1", "a5", "a4", "a3", "a2", "a1"];
    rp.hc(8, 43, c01, &[("a5^3 + a3", e)]);
    rp.hc(8, 85, c01, &[("a3^85 + 1", e)]);
    let c53 = ["0", "1", "a5", "a4", "a5^3", "a2", "a1"];
    rp.chain(
        &format!("{}^4*a5^3 + {}", hc_label(8, 47, c53), hc_label(8, 61, c53)),
        || {
            Ok(sym_hc(8, 47, c53)?
                .checked_pow(4)?
                .checked_mul(&poly("a5^3")?)?
                .add(&sym_hc(8, 61, c53)?))
        },
        &[
            (
                "a5^191 + a5^175 + a4^8*a5^159 + a2^8*a5^143 + a1^8*a5^135",
                e,
            ),
            ("a5^135*(a5^7 + a5^5 + a4*a5^3 + a2*a5 + a1)^8", e),
        ],
    );
    a5_family(&mut rp, ctx);

    // (1, 0)
    rp.hc(
        8,
        37,
        ["1", "0", "a5", "a4", "a3", "a2", "a1"],
        &[("a3", e)],
    );
    let c10 = ["1", "0", "a5", "a4", "0", "a2", "a1"];
    rp.hc(
        8,
        53,
        c10,
        &[
            ("a2^4*a5^48 + a2^4*a4^32 + a1^16*a2^4", e),
            ("a2^4*(a5^3 + a4^2 + a1)^16", e),
        ],
    );
    rp.hc(
        8,
        43,
        c10,
        &[
            ("a2^8*a5^3 + a2^8*a4^2 + a1*a2^8 + a1^8", e),
            ("a2^8*(a5^3 + a4^2 + a1) + a1^8", e),
        ],
    );
    rp.hc(
        8,
        43,
        ["1", "0", "a5", "a4", "0", "0", "a1"],
        &[("a1^8", e)],
    );
    rp.hc(
        8,
        43,
        ["1", "0", "a5", "a4", "0", "a2", "a5^3 + a4^2"],
        &[("(a5^3 + a4^2)^8", e)],
    );
    rp.hc(
        8,
        45,
        ["1", "0", "a5", "a4", "0", "a2", "0"],
        &[("a5^32 + a2^12", e)],
    );
    rp.chain(
        "(a5^32 + a2^12)^8",
        || poly("(a5^32 + a2^12)^8"),
        &[("a5 + a2^96", m)],
    );
    rp.hc(8, 39, ["1", "0", "0", "a4", "0", "0", "0"], &[("a4^6", e)]);
    rp.not_pp(ctx, ["1", "0", "0", "0", "0", "0", "0"], "x^8 + x^7");
    rp.chain(
        "(a2^144)^2 + (a2^96)^3",
        || poly("(a2^144)^2 + (a2^96)^3"),
        &[("0", e)],
    );
    rp.hc(
        8,
        39,
        ["1", "0", "a2^96", "a2^144", "0", "a2", "0"],
        &[("a2^386 + a2^4", e)],
    );
    rp.step(
        format!("a2^386 = a2^4 with a2 in GF({q})* forces a2 = 1 (gcd(382, 255) = 1)"),
        || {
            let g = gcd(382, (q - 1) as u64);
            let sols: Vec<_> = ctx
                .nonzero_by_log()
                .filter(|&b| ctx.pow(b, 386) == ctx.pow(b, 4))
                .collect();
            Ok((
                g == 1 && sols == [FieldElement::ONE],
                format!("gcd = {g}, {} solutions", sols.len()),
            ))
        },
    );
    rp.hc(8, 55, ["1", "0", "1", "1", "0", "1", "0"], &[("1", e)]);
    rp.step("HC(8,55,1,0,1,1,0,1,0) = 1 in GF(256)", || {
        let one = FieldElement::ONE;
        let z = FieldElement::ZERO;
        let v = HcPlan::new(8, 55)?.eval(ctx, &[one, z, one, one, z, one, z]);
        Ok((v == one, ctx.format_element(v)))
    });

    Ok(rp.finish())
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

// ---------------------------------------------------------------------------
// r = 9

pub fn verify_r9(ctx: &FieldCtx) -> Result<ProofReport> {
    require_r(ctx, 9)?;
    let e = Cmp::Exact;
    let mut rp = Replay::new();

    rp.hc(
        9,
        73,
        ["a7", "a6", "a5", "a4", "a3", "a2", "a1"],
        &[("a7^73", e)],
    );
    rp.hc(
        9,
        117,
        ["0", "0", "0", "a4", "a3", "a2", "a1"],
        &[("a3^85", e)],
    );

    // (0, 0, a5 != 0), so (a5, a4) = (1, 0)
    rp.hc(9, 93, ["0", "0", "1", "0", "a3", "a2", "a1"], &[("a3", e)]);
    rp.hc(9, 103, ["0", "0", "1", "0", "0", "a2", "a1"], &[("a1", e)]);
    rp.hc(9, 107, ["0", "0", "1", "0", "0", "a2", "0"], &[("a2^8", e)]);
    rp.not_pp(ctx, ["0", "0", "1", "0", "0", "0", "0"], "x^8 + x^5");

    // (0, 1, 0)
    rp.hc(9, 171, ["0", "1", "0", "0", "0", "a2", "a1"], &[("a2", e)]);
    rp.hc(
        9,
        183,
        ["0", "1", "0", "0", "0", "0", "a1"],
        &[("a1^16", e)],
    );
    rp.not_pp(ctx, ["0", "1", "0", "0", "0", "0", "0"], "x^8 + x^6");
    let c010 = ["0", "1", "0", "0", "a3", "a2", "a1"];
    rp.hc(9, 87, c010, &[("a3^5 + a2^2*a3 + a1*a3^2", e)]);
    rp.hc(
        9,
        91,
        c010,
        &[("a3^17 + a2^2*a3^9 + a1*a3^10 + a2^8*a3", e)],
    );
    rp.chain(
        &format!("{}*a3^8 + {}", hc_label(9, 87, c010), hc_label(9, 91, c010)),
        || {
            Ok(sym_hc(9, 87, c010)?
                .checked_mul(&poly("a3^8")?)?
                .add(&sym_hc(9, 91, c010)?))
        },
        &[
            ("a3^17 + a3^13 + a2^8*a3", e),
            ("a3*(a3^4 + a3^3 + a2^2)^4", e),
        ],
    );
    t_family(&mut rp, ctx, (87, 91));

    // (0, 1, a5 != 0)
    let c01 = ["0", "1", "a5", "a4", "a3", "a2", "a1"];
    rp.chain(
        &format!(
            "{}*(a5^96 + a3^32) + {}",
            hc_label(9, 87, c01),
            hc_label(9, 103, c01)
        ),
        || {
            Ok(sym_hc(9, 87, c01)?
                .checked_mul(&poly("a5^96 + a3^32")?)?
                .add(&sym_hc(9, 103, c01)?))
        },
        &[
            ("a5^115 + a3*a5^112 + a3^32*a5^19 + a3^33*a5^16", e),
            ("a5^16*(a5^3 + a3)^33", e),
        ],
    );
    rp.hc(
        9,
        87,
        ["0", "1", "a5", "a4", "a5^3", "a2", "a1"],
        &[
            ("a5^15 + a5^11 + a4^2*a5^7 + a2^2*a5^3 + a1^2*a5", e),
            ("a5*(a5^7 + a5^5 + a4*a5^3 + a2*a5 + a1)^2", e),
        ],
    );
    a5_family(&mut rp, ctx);

    Ok(rp.finish())
}

// ---------------------------------------------------------------------------
// r = 4, 5, 6

fn constraint_checks(r: u32) -> ProofReport {
    let e = Cmp::Exact;
    let mut rp = Replay::new();
    let all = ["a7", "a6", "a5", "a4", "a3", "a2", "a1"];
    match r {
        4 => {
            rp.hc(4, 3, all, &[("a5^3 + a3*a6^2 + a4^2*a7 + a1*a7^2", e)]);
            rp.hc(4, 5, all, &[("a3^5 + a6^5 + a2^4*a7 + a2*a7^4", e)]);
            let c00 = ["0", "0", "a5", "a4", "a3", "a2", "a1"];
            rp.hc(4, 3, c00, &[("a5^3", e)]);
            rp.hc(4, 5, c00, &[("a3^5", e)]);
            let c10 = ["1", "0", "a5", "a4", "a3", "a2", "a1"];
            rp.hc(4, 3, c10, &[("a5^3 + a4^2 + a1", e)]);
            rp.hc(4, 5, c10, &[("a3^5 + a2^4 + a2", e)]);
            let c01 = ["0", "1", "a5", "a4", "a3", "a2", "a1"];
            rp.hc(4, 3, c01, &[("a5^3 + a3", e)]);
            rp.hc(4, 5, c01, &[("a3^5 + 1", e)]);
        }
        5 => {
            rp.hc(
                5,
                7,
                ["0", "0", "0", "a4", "a3", "a2", "a1"],
                &[("a3^5", e)],
            );
            rp.hc(
                5,
                7,
                ["0", "0", "1", "0", "a3", "a2", "a1"],
                &[("a3^5 + a3^2 + a1", e)],
            );
            rp.hc(5, 5, ["1", "0", "a5", "a4", "a3", "a2", "a1"], &[("a3", e)]);
        }
        6 => {
            rp.hc(6, 9, all, &[("a7^9", e)]);
            let c0 = ["0", "a6", "a5", "a4", "a3", "a2", "a1"];
            rp.hc(
                6,
                11,
                c0,
                &[("a5^3*a6^8 + a3*a6^10", e), ("a6^8*(a5^3 + a3*a6^2)", e)],
            );
            rp.hc(6, 21, c0, &[("a3^21 + a6^21", e)]);
        }
        _ => unreachable!("constraint checks exist for r = 4, 5, 6"),
    }
    rp.finish()
}

/// Runs `body` over each outer value in parallel with a per-thread tester and
/// collects the normalized tuples (a7..a1) it accepts.
fn par_search<T, F>(ctx: &FieldCtx, outer: Vec<T>, body: F) -> Vec<[FieldElement; 7]>
where
    T: Send + Sync + Copy,
    F: Fn(&mut PpTester, T, &mut Vec<[FieldElement; 7]>) + Send + Sync,
{
    outer
        .par_iter()
        .map_init(
            || PpTester::new(ctx).expect("q >= 16"),
            |tester, &o| {
                let mut out = Vec::new();
                body(tester, o, &mut out);
                out
            },
        )
        .flatten()
        .collect()
}

fn pp(tester: &mut PpTester, tuple: [FieldElement; 7]) -> bool {
    let mut c = [FieldElement::ZERO; 9];
    for i in 1..8 {
        c[i] = tuple[7 - i];
    }
    c[8] = FieldElement::ONE;
    tester.is_pp(&c)
}

/// Shape (0, 1, a5, a4, a3, a2, a1) with a4 in {0, omega(a5)} (or {0} when
/// a5 = 0) and a3 produced by `a3_of`.
fn search_01(
    ctx: &FieldCtx,
    a5s: Vec<FieldElement>,
    a3_choices: impl Fn(FieldElement) -> Vec<FieldElement> + Send + Sync,
) -> Vec<[FieldElement; 7]> {
    let z = FieldElement::ZERO;
    par_search(ctx, a5s, |tester, a5, out| {
        let a4s = if a5.is_zero() {
            vec![z]
        } else {
            vec![z, omega(ctx, a5).expect("a5 != 0")]
        };
        for &a4 in &a4s {
            for a3 in a3_choices(a5) {
                for a2 in ctx.elements() {
                    for a1 in ctx.elements() {
                        let t = [z, FieldElement::ONE, a5, a4, a3, a2, a1];
                        if pp(tester, t) {
                            out.push(t);
                        }
                    }
                }
            }
        }
    })
}

fn search_r4(ctx: &FieldCtx) -> Vec<[FieldElement; 7]> {
    let z = FieldElement::ZERO;
    let one = FieldElement::ONE;
    // (1, 0): a1 = a5^3 + a4^2, a3^5 = a2^4 + a2
    let mut found = par_search(ctx, ctx.elements().collect(), |tester, a5, out| {
        for a4 in ctx.elements() {
            for a3 in ctx.elements() {
                for a2 in ctx.elements() {
                    if ctx.pow(a3, 5) != ctx.add(ctx.pow(a2, 4), a2) {
                        continue;
                    }
                    let a1 = ctx.add(ctx.pow(a5, 3), ctx.square(a4));
                    let t = [one, z, a5, a4, a3, a2, a1];
                    if pp(tester, t) {
                        out.push(t);
                    }
                }
            }
        }
    });
    // (0, 1): a5 != 0, a3 = a5^3
    found.extend(search_01(ctx, ctx.nonzero_by_log().collect(), |a5| {
        vec![ctx.pow(a5, 3)]
    }));
    found
}

fn search_r5(ctx: &FieldCtx) -> Vec<[FieldElement; 7]> {
    let z = FieldElement::ZERO;
    let one = FieldElement::ONE;
    // (0, 0, 1, 0): a1 = a3^5 + a3^2
    let mut found = par_search(ctx, ctx.elements().collect(), |tester, a3, out| {
        for a2 in ctx.elements() {
            let a1 = ctx.add(ctx.pow(a3, 5), ctx.square(a3));
            let t = [z, z, one, z, a3, a2, a1];
            if pp(tester, t) {
                out.push(t);
            }
        }
    });
    // (1, 0): a3 = 0
    found.extend(par_search(
        ctx,
        ctx.elements().collect(),
        |tester, a5, out| {
            for a4 in ctx.elements() {
                for a2 in ctx.elements() {
                    for a1 in ctx.elements() {
                        let t = [one, z, a5, a4, z, a2, a1];
                        if pp(tester, t) {
                            out.push(t);
                        }
                    }
                }
            }
        },
    ));
    // (0, 1)
    found.extend(search_01(ctx, ctx.elements().collect(), |_| {
        ctx.elements().collect()
    }));
    found
}

fn search_r6(ctx: &FieldCtx) -> Vec<[FieldElement; 7]> {
    let z = FieldElement::ZERO;
    let e = ctx.generator();
    // (0, 0, a5 in {1, e, e^2}, 0, 0)
    let mut found = par_search(
        ctx,
        vec![FieldElement::ONE, e, ctx.square(e)],
        |tester, a5, out| {
            for a2 in ctx.elements() {
                for a1 in ctx.elements() {
                    let t = [z, z, a5, z, z, a2, a1];
                    if pp(tester, t) {
                        out.push(t);
                    }
                }
            }
        },
    );
    // (0, 1, a5 != 0), a3 = a5^3
    found.extend(search_01(ctx, ctx.nonzero_by_log().collect(), |a5| {
        vec![ctx.pow(a5, 3)]
    }));
    found
}

fn build_records(
    ctx: &FieldCtx,
    tuples: Vec<[FieldElement; 7]>,
) -> Result<(Vec<ClassRecord>, usize)> {
    let mut octics = Vec::with_capacity(tuples.len());
    for t in tuples {
        let f = Octic::normalized(ctx, t)?;
        if !is_exceptional_deg8(&f)? {
            octics.push(f);
        }
    }
    octics.sort_by_key(|f| f.log_tuple());
    octics.dedup();

    let gam = gamma(ctx);
    let n = octics.len();
    let mut class_of: Vec<Option<usize>> = vec![None; n];
    let mut classes = 0;
    for i in 0..n {
        if class_of[i].is_some() {
            continue;
        }
        class_of[i] = Some(classes);
        for j in i + 1..n {
            if class_of[j].is_none()
                && octics[i].tuple()[..3] == octics[j].tuple()[..3]
                && linearly_related(&octics[i], &octics[j])?.is_some()
            {
                class_of[j] = Some(classes);
            }
        }
        classes += 1;
    }

    let records = octics
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let [a7, a6, a5, ..] = f.tuple();
            let frobenius_rep =
                !(a7.is_zero() && a6 == FieldElement::ONE && !a5.is_zero()) || gam.contains(&a5);
            let pair_link = shift_partner(f).and_then(|g| octics.iter().position(|h| *h == g));
            ClassRecord {
                r: ctx.r(),
                tuple: f.log_tuple(),
                frobenius_rep,
                pair_link,
                class_id: class_of[i].expect("assigned above"),
            }
        })
        .collect();
    Ok((records, classes))
}

fn run_search(
    ctx: &FieldCtx,
    search: fn(&FieldCtx) -> Vec<[FieldElement; 7]>,
) -> Result<Classification> {
    let report = constraint_checks(ctx.r());
    let (records, class_count) = if report.passed() {
        build_records(ctx, search(ctx))?
    } else {
        (Vec::new(), 0)
    };
    Ok(Classification {
        r: ctx.r(),
        modulus: ctx.modulus(),
        records,
        class_count,
        report,
    })
}

pub fn classify_r4(ctx: &FieldCtx) -> Result<Classification> {
    require_r(ctx, 4)?;
    run_search(ctx, search_r4)
}

pub fn classify_r5(ctx: &FieldCtx) -> Result<Classification> {
    require_r(ctx, 5)?;
    run_search(ctx, search_r5)
}

pub fn classify_r6(ctx: &FieldCtx) -> Result<Classification> {
    require_r(ctx, 6)?;
    run_search(ctx, search_r6)
}

/// Classification for 4 <= r <= 6, proof replay (with no records) for
/// 7 <= r <= 9.
pub fn classify(ctx: &FieldCtx) -> Result<Classification> {
    let replay = |report: ProofReport| Classification {
        r: ctx.r(),
        modulus: ctx.modulus(),
        records: Vec::new(),
        class_count: 0,
        report,
    };
    match ctx.r() {
        4 => classify_r4(ctx),
        5 => classify_r5(ctx),
        6 => classify_r6(ctx),
        7 => Ok(replay(verify_r7(ctx)?)),
        8 => Ok(replay(verify_r8(ctx)?)),
        9 => Ok(replay(verify_r9(ctx)?)),
        r => Err(Error::OutOfRange(format!(
            "classification covers 4 <= r <= 9, got r = {r}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn replay_stops_at_first_failure() {
        let mut rp = Replay::new();
        rp.chain("1", || poly("1"), &[("0", Cmp::Exact)]);
        rp.chain("1", || poly("1"), &[("1", Cmp::Exact)]);
        let report = rp.finish();
        assert_eq!(report.steps.len(), 1);
        assert!(!report.passed());
        assert!(report
            .first_failure()
            .unwrap()
            .detail
            .contains("computed 1"));
    }

    #[test]
    fn mod_field_comparison() {
        let a = poly("a2^256*a5^3").unwrap();
        let b = poly("a2^2*a5^3").unwrap();
        assert!(!compare(&a, &b, Cmp::Exact).unwrap());
        assert!(compare(&a, &b, Cmp::ModField(128)).unwrap());
    }

    #[test]
    fn constraint_checks_pass() {
        for r in 4..=6 {
            let report = constraint_checks(r);
            assert!(report.passed(), "{:?}", report.first_failure());
        }
    }

    #[test]
    fn classify_rejects_out_of_range() {
        assert!(classify(&FieldCtx::new(3).unwrap()).is_err());
        assert!(classify(&FieldCtx::new(10).unwrap()).is_err());
        assert!(classify_r4(&FieldCtx::new(5).unwrap()).is_err());
    }

    #[test]
    fn r4_search_size() {
        let ctx = FieldCtx::new(4).unwrap();
        let c = classify_r4(&ctx).unwrap();
        assert_eq!(c.records.len(), 113);
        assert_eq!(c.class_count, 113);
        assert_eq!(c.frobenius_reduced().len(), 39);
    }
}
