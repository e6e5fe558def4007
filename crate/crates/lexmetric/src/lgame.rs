//! l-games: probability models over breach events, societies, punishment
//! models and the scalar functionals (expected severity, entropy, titere
//! detection).

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::law::{Law, Regulation};

/// Tolerance for the sums-to-one invariant of probability tables.
pub const MASS_TOLERANCE: f64 = 1e-9;

/// A sparse probability distribution over the events of one regulation.
/// Absent events carry mass 0.
#[derive(Debug, Clone)]
pub struct ProbabilityModel {
    regulation: Regulation,
    mass: BTreeMap<u32, f64>,
}

impl ProbabilityModel {
    pub fn new(regulation: Regulation, mass: BTreeMap<u32, f64>) -> Result<ProbabilityModel> {
        validate_mass(&regulation, &mass, &regulation.label())?;
        Ok(ProbabilityModel { regulation, mass })
    }

    pub fn regulation(&self) -> &Regulation {
        &self.regulation
    }

    pub fn p(&self, event: u32) -> f64 {
        self.mass.get(&event).copied().unwrap_or(0.0)
    }

    /// Events with explicit (possibly zero) mass, in bitmask order.
    pub fn massed_events(&self) -> impl Iterator<Item = (u32, f64)> + '_ {
        self.mass.iter().map(|(&e, &p)| (e, p))
    }

    pub fn same_regulation(&self, other: &ProbabilityModel) -> bool {
        self.regulation.mask() == other.regulation.mask()
            && self.regulation.same_law(&other.regulation)
    }
}

fn validate_mass(regulation: &Regulation, mass: &BTreeMap<u32, f64>, context: &str) -> Result<()> {
    let mut total = 0.0;
    for (&event, &p) in mass {
        if event & !regulation.mask() != 0 {
            return Err(Error::InvalidMass {
                context: format!("{context}: event outside the regulation's event space"),
                sum: p,
            });
        }
        if !(0.0..=1.0 + MASS_TOLERANCE).contains(&p) {
            return Err(Error::InvalidMass {
                context: format!("{context}: mass {p} outside [0,1]"),
                sum: p,
            });
        }
        total += p;
    }
    if (total - 1.0).abs() > MASS_TOLERANCE {
        return Err(Error::InvalidMass {
            context: context.to_string(),
            sum: total,
        });
    }
    Ok(())
}

/// One member of a society: a weight and per-regulation probability tables
/// keyed by regulation bitmask.
#[derive(Debug, Clone)]
pub struct Player {
    pub id: String,
    pub weight: f64,
    pub tables: BTreeMap<u32, BTreeMap<u32, f64>>,
}

/// A named family of players, optionally with directly supplied aggregate
/// tables and/or per-rule independent breach probabilities.
#[derive(Debug, Clone)]
pub struct Society {
    name: String,
    players: Vec<Player>,
    aggregates: BTreeMap<u32, BTreeMap<u32, f64>>,
    /// Per-rule breach probability, indexed by the rule's bit position.
    /// Modeling convenience for regulations with no supplied table: event
    /// masses are products of independent per-rule breach probabilities.
    independent: Option<Vec<f64>>,
}

impl Society {
    pub fn new(
        name: String,
        players: Vec<Player>,
        aggregates: BTreeMap<u32, BTreeMap<u32, f64>>,
        independent: Option<Vec<f64>>,
    ) -> Result<Society> {
        let weight_sum: f64 = players.iter().map(|p| p.weight).sum();
        if !players.is_empty() {
            for player in &players {
                if !(player.weight >= 0.0) {
                    return Err(Error::InvalidMass {
                        context: format!("player {} weight must be nonnegative", player.id),
                        sum: player.weight,
                    });
                }
            }
            if weight_sum <= 0.0 {
                return Err(Error::InvalidMass {
                    context: "player weights must sum to a positive value".into(),
                    sum: weight_sum,
                });
            }
        }
        Ok(Society {
            name,
            players,
            aggregates,
            independent,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn players(&self) -> &[Player] {
        &self.players
    }

    /// The (weight-normalized) mean breach distribution of the society for a
    /// regulation. A directly supplied aggregate wins; otherwise all players
    /// must supply a table; otherwise the independence generator applies.
    pub fn mean_probability(&self, regulation: &Regulation) -> Result<ProbabilityModel> {
        let mask = regulation.mask();
        if let Some(table) = self.aggregates.get(&mask) {
            return ProbabilityModel::new(regulation.clone(), table.clone());
        }
        if !self.players.is_empty() && self.players.iter().all(|p| p.tables.contains_key(&mask)) {
            let weight_sum: f64 = self.players.iter().map(|p| p.weight).sum();
            let mut mean: BTreeMap<u32, f64> = BTreeMap::new();
            for player in &self.players {
                let table = &player.tables[&mask];
                validate_mass(regulation, table, &format!("player {}", player.id))?;
                let w = player.weight / weight_sum;
                for (&event, &p) in table {
                    *mean.entry(event).or_insert(0.0) += w * p;
                }
            }
            return ProbabilityModel::new(regulation.clone(), mean);
        }
        if let Some(q) = &self.independent {
            let mut mass = BTreeMap::new();
            for event in regulation.events() {
                let mut p = 1.0;
                for bit in 0..regulation.law().rule_count() {
                    if !regulation.contains_rule(bit) {
                        continue;
                    }
                    let q_r = q[bit];
                    p *= if event & (1 << bit) != 0 { q_r } else { 1.0 - q_r };
                }
                mass.insert(event, p);
            }
            return ProbabilityModel::new(regulation.clone(), mass);
        }
        Err(Error::MissingTable(regulation.label()))
    }

    /// True iff every event containing `rule` has zero mass under the mean
    /// distribution of `regulation`.
    pub fn is_titere(&self, regulation: &Regulation, rule: &str) -> Result<bool> {
        let bit = regulation
            .law()
            .bit(rule)
            .filter(|&b| regulation.contains_rule(b))
            .ok_or_else(|| Error::RuleNotInRegulation {
                rule: rule.to_string(),
                regulation: regulation.label(),
            })?;
        let model = self.mean_probability(regulation)?;
        Ok(regulation
            .events()
            .filter(|e| e & (1 << bit) != 0)
            .all(|e| model.p(e) == 0.0))
    }

    /// Bitmask of the titere rules of a regulation.
    pub fn titere_mask(&self, regulation: &Regulation) -> Result<u32> {
        let model = self.mean_probability(regulation)?;
        let mut mask = 0u32;
        for bit in 0..regulation.law().rule_count() {
            if regulation.contains_rule(bit)
                && regulation
                    .events()
                    .filter(|e| e & (1 << bit) != 0)
                    .all(|e| model.p(e) == 0.0)
            {
                mask |= 1 << bit;
            }
        }
        Ok(mask)
    }
}

/// How an event's punishment is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PunishmentMode {
    /// Sum of the per-rule punishments of the breached rules, with optional
    /// per-event overrides.
    Additive,
    /// g(x) = log(1/P(x)); expected severity then equals the entropy.
    Entropy,
}

/// Per-event punishments built on the law's per-rule values.
#[derive(Debug, Clone)]
pub struct PunishmentModel {
    mode: PunishmentMode,
    overrides: BTreeMap<u32, f64>,
}

impl PunishmentModel {
    pub fn additive(overrides: BTreeMap<u32, f64>) -> Result<PunishmentModel> {
        if let Some(&v) = overrides.get(&0) {
            if v != 0.0 {
                return Err(Error::InvalidLaw(format!(
                    "the empty event cannot carry punishment {v}: g(∅) = 0"
                )));
            }
        }
        for (&event, &v) in &overrides {
            if !(v >= 0.0) {
                return Err(Error::InvalidLaw(format!(
                    "punishment override for event {event:b} must be nonnegative"
                )));
            }
        }
        Ok(PunishmentModel {
            mode: PunishmentMode::Additive,
            overrides,
        })
    }

    pub fn entropy() -> PunishmentModel {
        PunishmentModel {
            mode: PunishmentMode::Entropy,
            overrides: BTreeMap::new(),
        }
    }

    pub fn mode(&self) -> PunishmentMode {
        self.mode
    }

    pub fn overrides(&self) -> &BTreeMap<u32, f64> {
        &self.overrides
    }
}

/// A regulation with its society-induced breach distribution; "punished"
/// when a punishment model is attached.
#[derive(Debug, Clone)]
pub struct LGame {
    regulation: Regulation,
    probability: ProbabilityModel,
    punishment: Option<PunishmentModel>,
}

impl LGame {
    pub fn new(
        probability: ProbabilityModel,
        punishment: Option<PunishmentModel>,
    ) -> LGame {
        LGame {
            regulation: probability.regulation().clone(),
            probability,
            punishment,
        }
    }

    pub fn regulation(&self) -> &Regulation {
        &self.regulation
    }

    pub fn probability(&self) -> &ProbabilityModel {
        &self.probability
    }

    pub fn law(&self) -> &Arc<Law> {
        self.regulation.law()
    }

    pub fn is_punished(&self) -> bool {
        self.punishment.is_some()
    }

    pub fn punishment_model(&self) -> Result<&PunishmentModel> {
        self.punishment.as_ref().ok_or(Error::Unpunished)
    }

    /// Punishment of an arbitrary event of the law under this game.
    ///
    /// In additive mode, rules outside the regulation carry theoretical
    /// punishment 0, so an event is punished by the sum over its rules that
    /// the regulation does contain; overrides apply only to events inside
    /// the regulation's event space. In entropy mode the punishment is
    /// log(1/P(x)) inside the event space and 0 outside.
    pub fn punishment_of(&self, event: u32) -> Result<f64> {
        let model = self.punishment_model()?;
        let inside = event & !self.regulation.mask() == 0;
        Ok(match model.mode {
            PunishmentMode::Additive => {
                if inside {
                    if let Some(&v) = model.overrides.get(&event) {
                        return Ok(v);
                    }
                }
                self.law().additive_punishment(event & self.regulation.mask())
            }
            PunishmentMode::Entropy => {
                if !inside {
                    0.0
                } else {
                    let p = self.probability.p(event);
                    if p == 0.0 {
                        0.0
                    } else {
                        -p.ln()
                    }
                }
            }
        })
    }

    /// Σ P(x)·g(x) over the game's event space.
    pub fn expected_severity(&self) -> Result<f64> {
        let mut total = 0.0;
        for event in self.regulation.events() {
            let p = self.probability.p(event);
            if p == 0.0 {
                continue;
            }
            total += p * self.punishment_of(event)?;
        }
        Ok(total)
    }

    /// Shannon entropy of the event distribution, natural log, with the
    /// 0·log(0) = 0 convention.
    pub fn entropy(&self) -> f64 {
        self.regulation
            .events()
            .map(|e| self.probability.p(e))
            .filter(|&p| p > 0.0)
            .map(|p| -p * p.ln())
            .sum()
    }
}
