use log::warn;
use num_bigint::BigUint;
use num_rational::BigRational;
use serde::Serialize;

use super::threshold::{compute_ell0, endgame_verdict};
use super::trap::{verify_trapping, ShiftPoint, TrapReport};
use super::{Pattern, ShiftError};
use crate::certify::{self, Verdict};
use crate::group::{ElementSet, GroupContext, GroupElement};
use crate::lll::{
    solve_moser_tardos, Assignment, BadEvent, Instance, MtSolution, SolveError, VariableUniverse,
};
use crate::separated::{is_separated, left_separated_subset, Side};

/// Everything needed to build the trapping instance.
///
/// `core_window` holds the `γ` at which events are instantiated and trapping
/// is verified; `universe` holds every variable and must contain `D L⁻¹ γ`
/// for each core `γ`. For finite groups both are normally the whole group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftConfig {
    pub ctx: GroupContext,
    pub pattern: Pattern,
    pub translates: ElementSet,
    pub core_window: ElementSet,
    pub universe: ElementSet,
    /// Overrides [`select_l`]; meant for adversarial runs.
    pub explicit_l: Option<ElementSet>,
}

impl ShiftConfig {
    /// Events at every element of a finite group.
    pub fn whole_group(ctx: GroupContext, pattern: Pattern, translates: ElementSet) -> Result<Self, ShiftError> {
        let all = ctx
            .elements()
            .ok_or_else(|| ShiftError::InvalidConfig(format!("{} is infinite; use a window", ctx.describe())))?;
        let cfg = ShiftConfig {
            ctx,
            pattern,
            translates,
            core_window: all.clone(),
            universe: all,
            explicit_l: None,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Events on the ball of radius `core_radius`, variables on the ball of
    /// radius `universe_radius` (smallest sufficient radius when `None`).
    pub fn windowed(
        ctx: GroupContext,
        pattern: Pattern,
        translates: ElementSet,
        core_radius: u64,
        universe_radius: Option<u64>,
    ) -> Result<Self, ShiftError> {
        let universe_radius = match universe_radius {
            Some(r) => r,
            None => {
                let l = select_l(&ctx, &translates, pattern.support())?;
                min_universe_radius(&ctx, pattern.support(), &l, core_radius)?
            }
        };
        let cfg = ShiftConfig {
            core_window: ctx.ball(core_radius),
            universe: ctx.ball(universe_radius),
            ctx,
            pattern,
            translates,
            explicit_l: None,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_l(mut self, l: ElementSet) -> Self {
        self.explicit_l = Some(l);
        self
    }

    fn validate(&self) -> Result<(), ShiftError> {
        if self.translates.is_empty() {
            return Err(ShiftError::InvalidConfig("translate set F must be nonempty".into()));
        }
        let sets = [self.pattern.support(), &self.translates, &self.core_window, &self.universe];
        for e in sets.into_iter().flatten() {
            self.ctx.check(e)?;
        }
        Ok(())
    }

    pub fn k(&self) -> u32 {
        self.pattern.k()
    }
}

/// Radius `r_c + max|δ| + max|λ⁻¹|`, enough for every `D L⁻¹ γ` with
/// `|γ| ≤ r_c` by subadditivity of the length.
pub fn min_universe_radius(
    ctx: &GroupContext,
    support: &ElementSet,
    l: &ElementSet,
    core_radius: u64,
) -> Result<u64, ShiftError> {
    let max_len = |s: &ElementSet| -> Result<u64, ShiftError> {
        s.iter().map(|e| ctx.length(e).map_err(ShiftError::from)).try_fold(0, |m, x| Ok(m.max(x?)))
    };
    Ok(core_radius + max_len(support)? + max_len(&ctx.set_inverse(l)?)?)
}

/// `L ⊆ F` with `L⁻¹` left `D`-separated and `|L| ≥ |F| / |D|²`: a left
/// separated subset of `F⁻¹`, inverted back.
pub fn select_l(ctx: &GroupContext, f: &ElementSet, d: &ElementSet) -> Result<ElementSet, ShiftError> {
    let f_inv = ctx.set_inverse(f)?;
    let l_inv = left_separated_subset(ctx, &f_inv, d)?;
    let l = ctx.set_inverse(&l_inv)?;
    debug_assert!(l.is_subset(f));
    Ok(l)
}

/// `D L⁻¹ γ` as a list of blocks `D λ⁻¹ γ`, one per `λ ∈ L` in canonical
/// order, each block in the canonical order of `D`. Fails unless the blocks
/// are pairwise disjoint.
pub fn event_domain(
    ctx: &GroupContext,
    gamma: &GroupElement,
    l: &ElementSet,
    d: &ElementSet,
) -> Result<Vec<GroupElement>, ShiftError> {
    let mut out = Vec::with_capacity(l.len() * d.len());
    for lambda in l {
        let shift = ctx.multiply(&ctx.inverse(lambda)?, gamma)?;
        for delta in d {
            out.push(ctx.multiply(delta, &shift)?);
        }
    }
    let distinct: ElementSet = out.iter().cloned().collect();
    if distinct.len() != out.len() {
        return Err(ShiftError::NotSeparated);
    }
    Ok(out)
}

/// The event `B_γ` over variables indexed by `universe`: a map on
/// `D L⁻¹ γ` is forbidden iff it disagrees with the pattern somewhere in
/// every block `D λ⁻¹ γ`.
pub fn build_bad_event(
    ctx: &GroupContext,
    gamma: &GroupElement,
    l: &ElementSet,
    pattern: &Pattern,
    universe: &ElementSet,
) -> Result<BadEvent, ShiftError> {
    let domain = event_domain(ctx, gamma, l, pattern.support())?
        .into_iter()
        .map(|x| {
            universe.position(&x).ok_or_else(|| ShiftError::UniverseTooSmall {
                gamma: ctx.name(gamma),
                element: ctx.name(&x),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(BadEvent::block_pattern(domain, pattern.values().to_vec(), pattern.k())?)
}

/// A built trapping instance: event `i` belongs to the `i`-th element of the
/// core window, variable `j` to the `j`-th element of the universe.
#[derive(Clone, Debug)]
pub struct ShiftInstance {
    config: ShiftConfig,
    l: ElementSet,
    instance: Instance,
    ell0: Option<u64>,
}

impl ShiftInstance {
    pub fn config(&self) -> &ShiftConfig {
        &self.config
    }

    pub fn ctx(&self) -> &GroupContext {
        &self.config.ctx
    }

    pub fn l(&self) -> &ElementSet {
        &self.l
    }

    pub fn instance(&self) -> &Instance {
        &self.instance
    }

    /// `ℓ₀` for this pattern, when it could be certified.
    pub fn ell0(&self) -> Option<u64> {
        self.ell0
    }

    pub fn gamma(&self, event: usize) -> &GroupElement {
        &self.config.core_window.as_slice()[event]
    }

    pub fn event_at(&self, gamma: &GroupElement) -> Option<usize> {
        self.config.core_window.position(gamma)
    }

    pub fn point<'a>(&'a self, x: &'a Assignment) -> ShiftPoint<'a> {
        ShiftPoint::new(&self.config.universe, x)
    }

    pub fn solve(&self, seed: u64, max_resamples: u64) -> Result<MtSolution, SolveError> {
        solve_moser_tardos(&self.instance, seed, max_resamples)
    }

    /// Trapping in `F · V_φ` over the core window. A solution of the
    /// instance that is not trapped somewhere is reported as an error.
    pub fn verify_trapping(&self, x: &Assignment) -> Result<TrapReport, ShiftError> {
        let cfg = &self.config;
        let report = verify_trapping(&cfg.ctx, &self.point(x), &cfg.translates, &cfg.pattern, &cfg.core_window)?;
        if self.instance.verify_solution(x).is_empty() {
            if let Some(v) = report.verdicts.iter().find(|v| v.witness.is_none()) {
                return Err(ShiftError::TrappingImplication(cfg.ctx.name(&v.gamma)));
            }
        }
        Ok(report)
    }

    /// Trapping in `L · V_φ`; untrapped `γ` are exactly the violated events.
    pub fn trapping_by_l(&self, x: &Assignment) -> Result<TrapReport, ShiftError> {
        let cfg = &self.config;
        verify_trapping(&cfg.ctx, &self.point(x), &self.l, &cfg.pattern, &cfg.core_window)
    }
}

/// Builds one event per core `γ`. `L` comes from [`select_l`] unless the
/// configuration overrides it.
pub fn build_instance(config: ShiftConfig) -> Result<ShiftInstance, ShiftError> {
    config.validate()?;
    let ctx = &config.ctx;
    let d = config.pattern.support();
    let l = match &config.explicit_l {
        Some(l) => {
            if l.is_empty() {
                return Err(ShiftError::InvalidConfig("L must be nonempty".into()));
            }
            l.clone()
        }
        None => select_l(ctx, &config.translates, d)?,
    };
    if !is_separated(ctx, &ctx.set_inverse(&l)?, d, Side::Left)? {
        return Err(ShiftError::NotSeparated);
    }

    let k = config.k();
    let ell0 = match compute_ell0(k, d.len() as u32) {
        Ok(x) => Some(x),
        Err(err) => {
            warn!("no certified threshold for k = {k}, |D| = {}: {err}", d.len());
            None
        }
    };
    if let Some(l0) = ell0 {
        if (l.len() as u64) < l0 {
            warn!(
                "|L| = {} is below the threshold {l0}; the instance may fail the local lemma criterion",
                l.len()
            );
        }
    }

    let names = config.universe.iter().map(|e| ctx.name(e)).collect();
    let universe = VariableUniverse::new(names, k)?;
    let events = config
        .core_window
        .iter()
        .map(|gamma| build_bad_event(ctx, gamma, &l, &config.pattern, &config.universe))
        .collect::<Result<Vec<_>, _>>()?;
    let instance = Instance::new(universe, events)?;
    Ok(ShiftInstance { config, l, instance, ell0 })
}

/// Measured statistics of a built instance next to the bounds they must
/// satisfy.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundsReport {
    pub k: u32,
    pub support_size: usize,
    pub l_size: usize,
    pub events: usize,
    pub measured_degree: usize,
    /// `|D|² |L|² - 1`.
    pub degree_bound: u64,
    /// `(1 - k^{-|D|})^{|L|}` as a fraction.
    pub closed_form_probability: String,
    pub max_probability: String,
    pub probabilities_match: bool,
    /// Every event domain has exactly `|D| |L|` variables.
    pub domain_sizes_match: bool,
    /// Exhaustive count of the first event against the closed form, when
    /// small enough to enumerate.
    pub enumeration_matches: Option<bool>,
    pub ell0: Option<u64>,
    pub l_meets_ell0: Option<bool>,
    /// `e (1 - k^{-|D|})^{|L|} |D|² |L|² < 1`, evaluated when `|L| ≥ ℓ₀`.
    pub final_inequality: Option<Verdict>,
    pub lll_verdict: Verdict,
    /// Enclosure of `e · p · (d + 1)`.
    pub lll_product: (f64, f64),
    pub violations: Vec<String>,
}

/// Checks the measured degree, the closed-form event probability and, when
/// `|L| ≥ ℓ₀`, the final inequality. Any failure is an implementation bug
/// and is returned as [`ShiftError::BoundViolation`].
pub fn check_bounds(si: &ShiftInstance) -> Result<BoundsReport, ShiftError> {
    let inst = si.instance();
    let k = si.config.k();
    let s = si.config.pattern.len();
    let l = si.l.len();
    let block = BigUint::from(k).pow(s as u32);
    let closed_form = BigRational::new(
        (&block - 1u32).pow(l as u32).into(),
        block.pow(l as u32).into(),
    );
    let mut violations = Vec::new();

    let degree_bound = (s as u64 * l as u64).pow(2) - 1;
    if inst.max_degree() as u64 > degree_bound {
        violations.push(format!("degree {} exceeds {degree_bound}", inst.max_degree()));
    }
    let probabilities_match = inst.events().iter().all(|ev| ev.probability() == closed_form);
    if !probabilities_match {
        violations.push("an event probability differs from the closed form".into());
    }
    let domain_sizes_match = inst.events().iter().all(|ev| ev.domain().len() == s * l);
    if !domain_sizes_match {
        violations.push(format!("an event domain is not of size |D||L| = {}", s * l));
    }
    let enumeration_matches = inst.events().first().and_then(|ev| {
        ev.enumerate_forbidden_count().map(|c| BigUint::from(c) == ev.forbidden_count())
    });
    if enumeration_matches == Some(false) {
        violations.push("enumerated forbidden count differs from the stored count".into());
    }

    let lll_verdict = inst.correctness();
    let (lo, hi) = certify::e_times_bounds(&inst.lll_product());
    let l_meets_ell0 = si.ell0.map(|l0| l as u64 >= l0);
    let final_inequality = match l_meets_ell0 {
        Some(true) => Some(endgame_verdict(k, s as u32, l as u64)?),
        _ => None,
    };
    if let Some(v) = final_inequality {
        if v != Verdict::Correct {
            violations.push(format!("|L| >= l0 but the final inequality is {v:?}"));
        }
        if !inst.is_empty() && lll_verdict == Verdict::Incorrect {
            violations.push("|L| >= l0 but the instance is not correct".into());
        }
    }

    let report = BoundsReport {
        k,
        support_size: s,
        l_size: l,
        events: inst.len(),
        measured_degree: inst.max_degree(),
        degree_bound,
        closed_form_probability: closed_form.to_string(),
        max_probability: inst.max_probability().to_string(),
        probabilities_match,
        domain_sizes_match,
        enumeration_matches,
        ell0: si.ell0,
        l_meets_ell0,
        final_inequality,
        lll_verdict,
        lll_product: (certify::to_f64(&lo), certify::to_f64(&hi)),
        violations,
    };
    if report.violations.is_empty() {
        Ok(report)
    } else {
        Err(ShiftError::BoundViolation(report.violations))
    }
}
