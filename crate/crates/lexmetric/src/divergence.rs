//! Distance-like functionals between l-games and societies: KL social
//! divergence, the l-game premetric with its symmetrizations, and the
//! coherence checks for extensions by one rule.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::law::Regulation;
use crate::lgame::{LGame, ProbabilityModel};

/// Which distance functional a value came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// The directed premetric D(a||b).
    Directed,
    /// D⁺(a,b) = D(a||b) + D(b||a).
    Plus,
    /// Dˢ(a,b) = max(D(a||b), D(b||a)).
    Max,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Directed => "directed",
            Variant::Plus => "plus",
            Variant::Max => "max",
        }
    }
}

/// Carrier for a computed distance value.
#[derive(Debug, Clone, PartialEq)]
pub struct DivergenceReport {
    pub value: f64,
    pub direction: (String, String),
    pub variant: Variant,
}

/// Kullback-Leibler divergence Σ p(x)·log(p(x)/q(x)) between two breach
/// distributions over the same regulation, natural log, with 0·log(0/q) = 0.
pub fn kl_social_divergence(p: &ProbabilityModel, q: &ProbabilityModel) -> Result<f64> {
    if !p.same_regulation(q) {
        return Err(Error::RegulationMismatch);
    }
    let mut total = 0.0;
    for event in p.regulation().events() {
        let pv = p.p(event);
        if pv == 0.0 {
            continue;
        }
        let qv = q.p(event);
        if qv == 0.0 {
            return Err(Error::AbsoluteContinuityViolated {
                event: p.regulation().law().label(event),
                p: pv,
            });
        }
        total += pv * (pv / qv).ln();
    }
    Ok(total)
}

/// The premetric D(target||source) = Σ over the target's event space of
/// p_target(x)·|g_target(x) − g_source(x)|, the source punishment being
/// extended by zero for rules outside its regulation. Reads as the social
/// resistance of moving from `source` to `target`.
pub fn lgame_premetric(target: &LGame, source: &LGame) -> Result<f64> {
    if !target.regulation().same_law(source.regulation()) {
        return Err(Error::LawMismatch);
    }
    source.punishment_model()?;
    let mut total = 0.0;
    for event in target.regulation().events() {
        let p = target.probability().p(event);
        if p == 0.0 {
            continue;
        }
        let g_target = target.punishment_of(event)?;
        let g_source = source.punishment_of(event)?;
        total += p * (g_target - g_source).abs();
    }
    Ok(total)
}

/// D⁺(a,b) = D(a||b) + D(b||a).
pub fn symmetrize_plus(a: &LGame, b: &LGame) -> Result<f64> {
    Ok(lgame_premetric(a, b)? + lgame_premetric(b, a)?)
}

/// Dˢ(a,b) = max(D(a||b), D(b||a)).
pub fn symmetrize_max(a: &LGame, b: &LGame) -> Result<f64> {
    Ok(lgame_premetric(a, b)?.max(lgame_premetric(b, a)?))
}

pub fn distance(a: &LGame, b: &LGame, variant: Variant) -> Result<f64> {
    match variant {
        Variant::Directed => lgame_premetric(a, b),
        Variant::Plus => symmetrize_plus(a, b),
        Variant::Max => symmetrize_max(a, b),
    }
}

/// Outcome of probing the coherence conditions on a one-rule extension.
#[derive(Debug, Clone, PartialEq)]
pub struct CoherenceVerdict {
    /// Distance D(extended||base) on the unmodified instance.
    pub base_distance: f64,
    /// Scaling the added rule's punishment never decreased the distance.
    pub severity_monotone: bool,
    /// Shifting breach mass toward the added rule never decreased the
    /// distance.
    pub breach_monotone: bool,
}

impl CoherenceVerdict {
    pub fn holds(&self) -> bool {
        self.severity_monotone && self.breach_monotone
    }
}

const SEVERITY_FACTORS: [f64; 3] = [1.0, 2.0, 5.0];
const BREACH_SHIFTS: [f64; 3] = [0.0, 0.25, 0.5];

/// Probes the two coherence conditions on a one-rule extension by
/// re-evaluating D(extended||base) under perturbed instances: the added
/// rule's punishment scaled up, and breach mass shifted from the empty
/// event toward the singleton event of the added rule.
///
/// This is an empirical harness over finitely many perturbations, not a
/// proof.
pub fn check_coherence(
    base: &LGame,
    extended: &LGame,
    added_rule: &str,
) -> Result<CoherenceVerdict> {
    let law = base.law().clone();
    if !base.regulation().same_law(extended.regulation()) {
        return Err(Error::LawMismatch);
    }
    let bit = law.bit(added_rule).ok_or_else(|| Error::RuleNotInRegulation {
        rule: added_rule.to_string(),
        regulation: law.label(law.full_mask()),
    })?;
    let rule_bit = 1u32 << bit;
    if extended.regulation().mask() != base.regulation().mask() | rule_bit
        || base.regulation().mask() & rule_bit != 0
    {
        return Err(Error::NotAnExtension {
            base: base.regulation().label(),
            extended: extended.regulation().label(),
            rule: added_rule.to_string(),
        });
    }

    let base_distance = lgame_premetric(extended, base)?;

    // C1: punishment of the added rule scaled by λ ≥ 1.
    let mut severity_monotone = true;
    let mut previous = f64::NEG_INFINITY;
    for factor in SEVERITY_FACTORS {
        let scaled_law = {
            let rules: Vec<(String, f64)> = (0..law.rule_count())
                .map(|b| {
                    let p = law.rule_punishment(b);
                    (
                        law.rule_name(b).to_string(),
                        if b == bit { p * factor } else { p },
                    )
                })
                .collect();
            crate::law::Law::new(rules)?
        };
        let rebuilt = |game: &LGame| -> Result<LGame> {
            let regulation = Regulation::new(scaled_law.clone(), game.regulation().mask());
            let mass: BTreeMap<u32, f64> = game.probability().massed_events().collect();
            let probability = ProbabilityModel::new(regulation, mass)?;
            Ok(LGame::new(probability, Some(game.punishment_model()?.clone())))
        };
        let d = lgame_premetric(&rebuilt(extended)?, &rebuilt(base)?)?;
        if d < previous - 1e-12 {
            severity_monotone = false;
        }
        previous = d;
    }

    // C2: breach mass shifted from the empty event to the singleton event
    // of the added rule.
    let mut breach_monotone = true;
    previous = f64::NEG_INFINITY;
    let empty_mass = extended.probability().p(0);
    for shift in BREACH_SHIFTS {
        let delta = empty_mass * shift;
        let mut mass: BTreeMap<u32, f64> = extended.probability().massed_events().collect();
        *mass.entry(0).or_insert(0.0) -= delta;
        *mass.entry(rule_bit).or_insert(0.0) += delta;
        let probability = ProbabilityModel::new(extended.regulation().clone(), mass)?;
        let shifted = LGame::new(probability, Some(extended.punishment_model()?.clone()));
        let d = lgame_premetric(&shifted, base)?;
        if d < previous - 1e-12 {
            breach_monotone = false;
        }
        previous = d;
    }

    Ok(CoherenceVerdict {
        base_distance,
        severity_monotone,
        breach_monotone,
    })
}
