use serde_json::{json, Value};

use super::{Pattern, ShiftError};
use crate::group::{ElementSet, GroupContext, GroupElement};
use crate::lll::Assignment;

/// A configuration restricted to a finite window of the group.
#[derive(Clone, Copy, Debug)]
pub struct ShiftPoint<'a> {
    universe: &'a ElementSet,
    values: &'a Assignment,
}

impl<'a> ShiftPoint<'a> {
    pub fn new(universe: &'a ElementSet, values: &'a Assignment) -> Self {
        assert_eq!(universe.len(), values.len(), "assignment does not cover the window");
        ShiftPoint { universe, values }
    }

    pub fn at(&self, ctx: &GroupContext, e: &GroupElement) -> Result<u32, ShiftError> {
        self.universe
            .position(e)
            .map(|i| self.values.get(i))
            .ok_or_else(|| ShiftError::OutsideWindow(ctx.name(e)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrapVerdict {
    pub gamma: GroupElement,
    /// The first `λ` (canonical order) with `λ⁻¹ γ · x ∈ V_φ`.
    pub witness: Option<GroupElement>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TrapReport {
    pub verdicts: Vec<TrapVerdict>,
    pub trapped: usize,
    pub untrapped: usize,
}

impl TrapReport {
    pub fn all_trapped(&self) -> bool {
        self.untrapped == 0
    }

    pub fn untrapped_gammas(&self) -> impl Iterator<Item = &GroupElement> {
        self.verdicts.iter().filter(|v| v.witness.is_none()).map(|v| &v.gamma)
    }

    pub fn to_json(&self, ctx: &GroupContext) -> Value {
        let verdicts: Vec<Value> = self
            .verdicts
            .iter()
            .map(|v| {
                json!({
                    "gamma": ctx.encode(&v.gamma),
                    "witness": v.witness.as_ref().map(|w| ctx.encode(w)),
                })
            })
            .collect();
        json!({
            "trapped": self.trapped,
            "untrapped": self.untrapped,
            "all_trapped": self.all_trapped(),
            "verdicts": verdicts,
        })
    }
}

/// Whether `γ · x ∈ T · V_φ`, i.e. some `λ ∈ T` has `x(δ λ⁻¹ γ) = φ(δ)` for
/// every `δ ∈ D`, using the shift action `(γ · x)(δ) = x(δ γ)`. Returns the
/// first such `λ`. Every position the check could read must lie in the
/// window.
pub fn is_trapped_at(
    ctx: &GroupContext,
    x: &ShiftPoint<'_>,
    gamma: &GroupElement,
    translates: &ElementSet,
    pattern: &Pattern,
) -> Result<Option<GroupElement>, ShiftError> {
    let inverses = inverse_pairs(ctx, translates)?;
    trapped_with(ctx, x, gamma, &inverses, pattern)
}

fn inverse_pairs<'a>(
    ctx: &GroupContext,
    translates: &'a ElementSet,
) -> Result<Vec<(&'a GroupElement, GroupElement)>, ShiftError> {
    translates.iter().map(|l| Ok((l, ctx.inverse(l)?))).collect()
}

fn trapped_with(
    ctx: &GroupContext,
    x: &ShiftPoint<'_>,
    gamma: &GroupElement,
    inverses: &[(&GroupElement, GroupElement)],
    pattern: &Pattern,
) -> Result<Option<GroupElement>, ShiftError> {
    let mut witness = None;
    for (lambda, lambda_inv) in inverses {
        let shift = ctx.multiply(lambda_inv, gamma)?;
        let mut matches = true;
        for (delta, &want) in pattern.support().iter().zip(pattern.values()) {
            let got = x.at(ctx, &ctx.multiply(delta, &shift)?)?;
            matches &= got == want;
        }
        if matches && witness.is_none() {
            witness = Some((*lambda).clone());
        }
    }
    Ok(witness)
}

/// Runs [`is_trapped_at`] for every `γ` in `core`.
pub fn verify_trapping(
    ctx: &GroupContext,
    x: &ShiftPoint<'_>,
    translates: &ElementSet,
    pattern: &Pattern,
    core: &ElementSet,
) -> Result<TrapReport, ShiftError> {
    let inverses = inverse_pairs(ctx, translates)?;
    let mut report = TrapReport::default();
    for gamma in core {
        let witness = trapped_with(ctx, x, gamma, &inverses, pattern)?;
        if witness.is_some() {
            report.trapped += 1;
        } else {
            report.untrapped += 1;
        }
        report.verdicts.push(TrapVerdict { gamma: gamma.clone(), witness });
    }
    Ok(report)
}
