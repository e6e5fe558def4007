//! Config ingestion: a JSON document with top-level keys `law`, `society`,
//! `punishment`, `preferences` and `options`, validated into the domain
//! types. Regulations and events are addressed by member lists; numeric
//! entries may be decimals or exact fraction strings such as "8/30".

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::consensus::{Direction, PreferencePlayer, PreferenceProfile, Preorder};
use crate::divergence::Variant;
use crate::error::{Error, Result};
use crate::exact::ExactInstance;
use crate::gamegraph::GameOfGames;
use crate::law::{Law, Regulation, DEFAULT_RULE_CAP};
use crate::lgame::{Player, PunishmentModel, Society};

/// A number that is either a plain decimal or an exact fraction string
/// ("8/30"); the textual form is preserved so emitting a config
/// round-trips.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Quantity {
    Number(f64),
    Fraction(String),
}

impl Quantity {
    /// The double-precision value; fraction strings must be "int/int" with
    /// a positive denominator.
    pub fn value(&self) -> Result<f64> {
        match self {
            Quantity::Number(v) => Ok(*v),
            Quantity::Fraction(_) => {
                let r = self
                    .ratio()
                    .ok_or_else(|| Error::ParseError(format!("malformed fraction {self:?}")))?;
                Ok(*r.numer() as f64 / *r.denom() as f64)
            }
        }
    }

    /// Exact rational form, when one exists: any fraction string, or a
    /// decimal with at most nine fractional digits.
    pub fn ratio(&self) -> Option<Ratio<i128>> {
        match self {
            Quantity::Number(v) => {
                if !v.is_finite() {
                    return None;
                }
                for k in 0..=9u32 {
                    let scale = 10f64.powi(k as i32);
                    let scaled = v * scale;
                    if scaled.fract() == 0.0 && scaled.abs() < 1e15 {
                        return Some(Ratio::new(scaled as i128, scale as i128));
                    }
                }
                None
            }
            Quantity::Fraction(text) => {
                let (n, d) = text.split_once('/')?;
                let n: i128 = n.trim().parse().ok()?;
                let d: i128 = d.trim().parse().ok()?;
                if d <= 0 {
                    return None;
                }
                Some(Ratio::new(n, d))
            }
        }
    }
}

impl From<f64> for Quantity {
    fn from(v: f64) -> Quantity {
        Quantity::Number(v)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LawConfig {
    pub rules: Vec<String>,
    pub punishments: BTreeMap<String, Quantity>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EventMass {
    pub event: Vec<String>,
    pub p: Quantity,
}

/// One probability table: a regulation (by member list) and the masses of
/// its events.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableConfig {
    pub regulation: Vec<String>,
    pub probabilities: Vec<EventMass>,
}

fn default_weight() -> Quantity {
    Quantity::Number(1.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlayerConfig {
    pub id: String,
    #[serde(default = "default_weight")]
    pub weight: Quantity,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tables: Vec<TableConfig>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SocietyConfig {
    #[serde(default)]
    pub name: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub players: Vec<PlayerConfig>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub aggregate: Vec<TableConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub independent: Option<BTreeMap<String, Quantity>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PunishmentModeConfig {
    #[default]
    Additive,
    Entropy,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OverrideConfig {
    pub event: Vec<String>,
    pub value: Quantity,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PunishmentConfig {
    #[serde(default)]
    pub mode: PunishmentModeConfig,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub overrides: Vec<OverrideConfig>,
}

/// A declared strict preference: `lower` ≺ `upper`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StrictPairConfig {
    pub lower: Vec<String>,
    pub upper: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PreferenceConfig {
    pub id: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub strict: Vec<StrictPairConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threshold: Option<Quantity>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VariantConfig {
    #[serde(rename = "directed")]
    Directed,
    #[serde(rename = "plus")]
    Plus,
    #[serde(rename = "max")]
    Max,
}

impl Default for VariantConfig {
    fn default() -> VariantConfig {
        VariantConfig::Directed
    }
}

impl From<VariantConfig> for Variant {
    fn from(v: VariantConfig) -> Variant {
        match v {
            VariantConfig::Directed => Variant::Directed,
            VariantConfig::Plus => Variant::Plus,
            VariantConfig::Max => Variant::Max,
        }
    }
}

/// Base of reported logarithms; computations stay natural-base and the
/// report rescales.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum LogBase {
    #[default]
    #[serde(rename = "e")]
    E,
    #[serde(rename = "2")]
    Two,
}

impl LogBase {
    /// Rescales a natural-log quantity into this base.
    pub fn convert(self, nats: f64) -> f64 {
        match self {
            LogBase::E => nats,
            LogBase::Two => nats / std::f64::consts::LN_2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            LogBase::E => "e",
            LogBase::Two => "2",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum DirectionConfig {
    #[default]
    #[serde(rename = "to-maximal")]
    ToMaximal,
    #[serde(rename = "from-maximal")]
    FromMaximal,
}

impl From<DirectionConfig> for Direction {
    fn from(d: DirectionConfig) -> Direction {
        match d {
            DirectionConfig::ToMaximal => Direction::ToMaximal,
            DirectionConfig::FromMaximal => Direction::FromMaximal,
        }
    }
}

/// Verbatim edge weight, bypassing the distance computation; used to load
/// externally published figures for comparison.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeOverrideConfig {
    pub from: Vec<String>,
    pub to: Vec<String>,
    pub weight: Quantity,
    #[serde(default)]
    pub symmetric: bool,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptionsConfig {
    #[serde(default)]
    pub variant: VariantConfig,
    #[serde(default)]
    pub log_base: LogBase,
    #[serde(default)]
    pub direction: DirectionConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub allowlist: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub edge_overrides: Vec<EdgeOverrideConfig>,
}

/// The whole analysis document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisConfig {
    pub law: LawConfig,
    pub society: SocietyConfig,
    #[serde(default)]
    pub punishment: PunishmentConfig,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub preferences: Vec<PreferenceConfig>,
    #[serde(default)]
    pub options: OptionsConfig,
}

/// Parses a config document. Syntax problems become ParseError with the
/// location; schema problems become ValidationError.
pub fn parse_config(text: &str) -> Result<AnalysisConfig> {
    match serde_json::from_str::<AnalysisConfig>(text) {
        Ok(config) => Ok(config),
        Err(e) => {
            use serde_json::error::Category;
            match e.classify() {
                Category::Syntax | Category::Eof | Category::Io => {
                    Err(Error::ParseError(e.to_string()))
                }
                Category::Data => Err(Error::ValidationError {
                    path: format!("line {}, column {}", e.line(), e.column()),
                    message: e.to_string(),
                }),
            }
        }
    }
}

/// Deterministic pretty-printed form; `parse_config(emit_config(c)) == c`.
pub fn emit_config(config: &AnalysisConfig) -> String {
    serde_json::to_string_pretty(config).expect("config serialization is infallible")
}

fn invalid(path: impl Into<String>, message: impl Into<String>) -> Error {
    Error::ValidationError {
        path: path.into(),
        message: message.into(),
    }
}

fn at(path: &str, error: Error) -> Error {
    match error {
        Error::ValidationError { .. } => error,
        other => invalid(path, other.to_string()),
    }
}

/// The resolved domain view of a config, with exact rationals kept
/// alongside wherever the inputs allow.
#[derive(Debug)]
pub struct Analysis {
    pub law: Arc<Law>,
    pub society: Society,
    pub punishment: PunishmentModel,
    pub variant: Variant,
    pub direction: Direction,
    pub log_base: LogBase,
    pub allowlist: Option<Vec<u32>>,
    pub edge_overrides: HashMap<(u32, u32), f64>,
    /// Resolved preferences: (id, strict mask pairs, threshold).
    pub preferences: Vec<(String, Vec<(u32, u32)>, Option<f64>)>,
    /// Exact-rational evaluator, available when the punishment is additive
    /// and every table entry has an exact form.
    pub exact: Option<ExactInstance>,
}

impl AnalysisConfig {
    pub fn to_domain(&self) -> Result<Analysis> {
        // law
        if self.law.rules.is_empty() {
            return Err(invalid("law.rules", "a law needs at least one rule"));
        }
        for name in self.law.punishments.keys() {
            if !self.law.rules.contains(name) {
                return Err(invalid(
                    format!("law.punishments.{name}"),
                    "punishment for a rule that is not in law.rules",
                ));
            }
        }
        let mut rules = Vec::new();
        let mut exact_punishments = Vec::new();
        for name in &self.law.rules {
            let quantity = self.law.punishments.get(name).ok_or_else(|| {
                invalid(format!("law.punishments.{name}"), "missing punishment")
            })?;
            let value = quantity
                .value()
                .map_err(|e| at(&format!("law.punishments.{name}"), e))?;
            rules.push((name.clone(), value));
            exact_punishments.push(quantity.ratio());
        }
        let cap = self.law.cap.unwrap_or(DEFAULT_RULE_CAP);
        let law = Law::with_cap(rules, cap).map_err(|e| at("law", e))?;

        let resolve = |path: &str, members: &[String]| -> Result<u32> {
            Regulation::from_members(law.clone(), members)
                .map(|r| r.mask())
                .map_err(|e| at(path, e))
        };

        // society
        let mut exact_tables: Option<BTreeMap<u32, BTreeMap<u32, Ratio<i128>>>> =
            Some(BTreeMap::new());
        let resolve_table = |path: String,
                                 table: &TableConfig,
                                 exact_sink: Option<&mut Option<
            BTreeMap<u32, BTreeMap<u32, Ratio<i128>>>,
        >>|
         -> Result<(u32, BTreeMap<u32, f64>)> {
            let mask = resolve(&path, &table.regulation)?;
            let mut masses = BTreeMap::new();
            let mut exact_row = Some(BTreeMap::new());
            for (i, entry) in table.probabilities.iter().enumerate() {
                let event_path = format!("{path}.probabilities[{i}]");
                let event = resolve(&event_path, &entry.event)?;
                if event & !mask != 0 {
                    return Err(invalid(
                        event_path,
                        format!(
                            "event {} lies outside regulation {}",
                            law.label(event),
                            law.label(mask)
                        ),
                    ));
                }
                if masses.insert(event, entry.p.value().map_err(|e| at(&event_path, e))?)
                    .is_some()
                {
                    return Err(invalid(event_path, "duplicate event"));
                }
                match (&mut exact_row, entry.p.ratio()) {
                    (Some(row), Some(r)) => {
                        row.insert(event, r);
                    }
                    _ => exact_row = None,
                }
            }
            let regulation = Regulation::new(law.clone(), mask);
            crate::lgame::ProbabilityModel::new(regulation, masses.clone())
                .map_err(|e| at(&path, e))?;
            if let Some(sink) = exact_sink {
                match (sink.as_mut(), exact_row) {
                    (Some(tables), Some(row)) => {
                        tables.insert(mask, row);
                    }
                    _ => *sink = None,
                }
            }
            Ok((mask, masses))
        };

        let mut aggregates = BTreeMap::new();
        for (i, table) in self.society.aggregate.iter().enumerate() {
            let path = format!("society.aggregate[{}]", law.label(resolve(
                &format!("society.aggregate[{i}]"),
                &table.regulation,
            )?));
            let (mask, masses) = resolve_table(path.clone(), table, Some(&mut exact_tables))?;
            if aggregates.insert(mask, masses).is_some() {
                return Err(invalid(path, "duplicate regulation"));
            }
        }

        let mut players = Vec::new();
        let mut exact_weights = Some(Vec::new());
        for (i, player) in self.society.players.iter().enumerate() {
            let path = format!("society.players[{i}]");
            let weight = player.weight.value().map_err(|e| at(&path, e))?;
            match (&mut exact_weights, player.weight.ratio()) {
                (Some(ws), Some(r)) => ws.push(r),
                _ => exact_weights = None,
            }
            let mut tables = BTreeMap::new();
            for (j, table) in player.tables.iter().enumerate() {
                let table_path = format!("{path}.tables[{j}]");
                let (mask, masses) = resolve_table(table_path.clone(), table, None)?;
                if tables.insert(mask, masses).is_some() {
                    return Err(invalid(table_path, "duplicate regulation"));
                }
            }
            players.push(Player {
                id: player.id.clone(),
                weight,
                tables,
            });
        }

        let independent = match &self.society.independent {
            None => None,
            Some(map) => {
                let mut q = vec![0.0; law.rule_count()];
                for (name, quantity) in map {
                    let path = format!("society.independent.{name}");
                    let bit = law
                        .bit(name)
                        .ok_or_else(|| invalid(path.clone(), "unknown rule"))?;
                    let value = quantity.value().map_err(|e| at(&path, e))?;
                    if !(0.0..=1.0).contains(&value) {
                        return Err(invalid(path, format!("probability {value} outside [0,1]")));
                    }
                    q[bit] = value;
                }
                for bit in 0..law.rule_count() {
                    if !map.contains_key(law.rule_name(bit)) {
                        return Err(invalid(
                            format!("society.independent.{}", law.rule_name(bit)),
                            "missing per-rule probability",
                        ));
                    }
                }
                Some(q)
            }
        };

        let society = Society::new(
            self.society.name.clone(),
            players,
            aggregates,
            independent,
        )
        .map_err(|e| at("society", e))?;

        // punishment
        let mut exact_overrides = Some(BTreeMap::new());
        let punishment = match self.punishment.mode {
            PunishmentModeConfig::Entropy => {
                if !self.punishment.overrides.is_empty() {
                    return Err(invalid(
                        "punishment.overrides",
                        "overrides apply to additive mode only",
                    ));
                }
                PunishmentModel::entropy()
            }
            PunishmentModeConfig::Additive => {
                let mut overrides = BTreeMap::new();
                for (i, entry) in self.punishment.overrides.iter().enumerate() {
                    let path = format!("punishment.overrides[{i}]");
                    let event = resolve(&path, &entry.event)?;
                    let value = entry.value.value().map_err(|e| at(&path, e))?;
                    if overrides.insert(event, value).is_some() {
                        return Err(invalid(path, "duplicate override event"));
                    }
                    match (&mut exact_overrides, entry.value.ratio()) {
                        (Some(map), Some(r)) => {
                            map.insert(event, r);
                        }
                        _ => exact_overrides = None,
                    }
                }
                PunishmentModel::additive(overrides).map_err(|e| at("punishment.overrides", e))?
            }
        };

        // preferences
        let mut preferences = Vec::new();
        for (i, pref) in self.preferences.iter().enumerate() {
            let path = format!("preferences[{i}]");
            let mut pairs = Vec::new();
            for (j, pair) in pref.strict.iter().enumerate() {
                let pair_path = format!("{path}.strict[{j}]");
                let lo = resolve(&pair_path, &pair.lower)?;
                let hi = resolve(&pair_path, &pair.upper)?;
                if lo == hi {
                    return Err(invalid(pair_path, "a strict pair needs distinct regulations"));
                }
                pairs.push((lo, hi));
            }
            let threshold = match &pref.threshold {
                None => None,
                Some(q) => {
                    let value = q.value().map_err(|e| at(&path, e))?;
                    if !(value >= 0.0) {
                        return Err(invalid(
                            format!("{path}.threshold"),
                            "threshold must be nonnegative",
                        ));
                    }
                    Some(value)
                }
            };
            preferences.push((pref.id.clone(), pairs, threshold));
        }

        // options
        let allowlist = match &self.options.allowlist {
            None => None,
            Some(lists) => {
                if lists.is_empty() {
                    return Err(invalid("options.allowlist", "allowlist cannot be empty"));
                }
                let mut masks = Vec::new();
                for (i, members) in lists.iter().enumerate() {
                    masks.push(resolve(&format!("options.allowlist[{i}]"), members)?);
                }
                masks.sort_unstable();
                masks.dedup();
                Some(masks)
            }
        };
        let mut edge_overrides = HashMap::new();
        for (i, entry) in self.options.edge_overrides.iter().enumerate() {
            let path = format!("options.edge_overrides[{i}]");
            let from = resolve(&path, &entry.from)?;
            let to = resolve(&path, &entry.to)?;
            let weight = entry.weight.value().map_err(|e| at(&path, e))?;
            if !(weight >= 0.0) {
                return Err(invalid(path, "edge weight must be nonnegative"));
            }
            edge_overrides.insert((from, to), weight);
            if entry.symmetric {
                edge_overrides.insert((to, from), weight);
            }
        }

        let exact = match (
            self.punishment.mode,
            exact_punishments.into_iter().collect::<Option<Vec<_>>>(),
            exact_tables,
            exact_overrides,
        ) {
            (PunishmentModeConfig::Additive, Some(punishments), Some(tables), Some(overrides)) => {
                let player_mean = match (&exact_weights, self.society.players.is_empty()) {
                    (Some(weights), false) => {
                        exact_player_tables(self, &law, weights)
                    }
                    _ => None,
                };
                let mut merged = player_mean.unwrap_or_default();
                // directly supplied aggregates win, as in Society
                merged.extend(tables);
                Some(ExactInstance::new(punishments, merged, overrides))
            }
            _ => None,
        };

        Ok(Analysis {
            law,
            society,
            punishment,
            variant: self.options.variant.into(),
            direction: self.options.direction.into(),
            log_base: self.options.log_base,
            allowlist,
            edge_overrides,
            preferences,
            exact,
        })
    }
}

/// Exact weighted-mean tables over the regulations every player supplies.
fn exact_player_tables(
    config: &AnalysisConfig,
    law: &Arc<Law>,
    weights: &[Ratio<i128>],
) -> Option<BTreeMap<u32, BTreeMap<u32, Ratio<i128>>>> {
    let total: Ratio<i128> = weights.iter().sum();
    if total == Ratio::from_integer(0) {
        return None;
    }
    let mut per_player: Vec<BTreeMap<u32, BTreeMap<u32, Ratio<i128>>>> = Vec::new();
    for player in &config.society.players {
        let mut tables = BTreeMap::new();
        for table in &player.tables {
            let mask = Regulation::from_members(law.clone(), &table.regulation)
                .ok()?
                .mask();
            let mut row = BTreeMap::new();
            for entry in &table.probabilities {
                let event = Regulation::from_members(law.clone(), &entry.event)
                    .ok()?
                    .mask();
                row.insert(event, entry.p.ratio()?);
            }
            tables.insert(mask, row);
        }
        per_player.push(tables);
    }
    let shared: Vec<u32> = per_player
        .first()?
        .keys()
        .copied()
        .filter(|mask| per_player.iter().all(|t| t.contains_key(mask)))
        .collect();
    let mut mean = BTreeMap::new();
    for mask in shared {
        let mut row: BTreeMap<u32, Ratio<i128>> = BTreeMap::new();
        for (tables, weight) in per_player.iter().zip(weights) {
            let share = weight / total;
            for (&event, &p) in &tables[&mask] {
                *row.entry(event).or_insert_with(|| Ratio::from_integer(0)) += share * p;
            }
        }
        mean.insert(mask, row);
    }
    Some(mean)
}

impl Analysis {
    /// The Game of games of this config, with the allowlist applied;
    /// `with_overrides` additionally installs the verbatim edge weights.
    pub fn graph(&self, with_overrides: bool) -> GameOfGames {
        let mut g = GameOfGames::build(
            self.law.clone(),
            self.society.clone(),
            self.punishment.clone(),
            self.variant,
        );
        if let Some(allow) = &self.allowlist {
            g = g.with_allowlist(allow);
        }
        if with_overrides && !self.edge_overrides.is_empty() {
            g = g.with_edge_overrides(self.edge_overrides.clone());
        }
        g
    }

    /// Resolves the configured preferences over the given node domain.
    pub fn profile(&self, nodes: &[u32]) -> Result<PreferenceProfile> {
        let mut players = Vec::new();
        for (id, pairs, threshold) in &self.preferences {
            for &(lo, hi) in pairs {
                for node in [lo, hi] {
                    if !nodes.contains(&node) {
                        return Err(Error::InvalidPreorder(format!(
                            "preference {id} mentions {} which is outside the graph",
                            self.law.label(node)
                        )));
                    }
                }
            }
            players.push(PreferencePlayer {
                id: id.clone(),
                preorder: Preorder::from_strict_pairs(nodes, pairs)?,
                threshold: *threshold,
            });
        }
        Ok(PreferenceProfile { players })
    }

    /// Parses a comma-separated member list such as "raffle,comp"; "{}",
    /// "{...}" wrapping and the empty string denote the empty regulation.
    pub fn parse_set(&self, text: &str) -> Result<u32> {
        let inner = text.trim().trim_start_matches('{').trim_end_matches('}');
        let members: Vec<&str> = inner
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty() && *s != "∅")
            .collect();
        Ok(Regulation::from_members(self.law.clone(), &members)?.mask())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn minimal() -> String {
        r#"{
            "law": {"rules": ["tax"], "punishments": {"tax": 100}},
            "society": {"aggregate": [
                {"regulation": [], "probabilities": [{"event": [], "p": 1}]},
                {"regulation": ["tax"], "probabilities": [
                    {"event": [], "p": "22/30"},
                    {"event": ["tax"], "p": "8/30"}
                ]}
            ]}
        }"#
        .to_string()
    }

    #[test]
    fn quantity_parsing() {
        assert_eq!(Quantity::Fraction("8/30".into()).value().unwrap(), 8.0 / 30.0);
        assert_eq!(
            Quantity::Fraction("8/30".into()).ratio().unwrap(),
            Ratio::new(4, 15)
        );
        assert_eq!(Quantity::Number(0.25).ratio().unwrap(), Ratio::new(1, 4));
        assert_eq!(Quantity::Number(100.0).ratio().unwrap(), Ratio::from_integer(100));
        assert!(Quantity::Fraction("8/0".into()).ratio().is_none());
        assert!(Quantity::Fraction("x/3".into()).value().is_err());
    }

    #[test]
    fn minimal_config_round_trips() {
        let config = parse_config(&minimal()).unwrap();
        let emitted = emit_config(&config);
        assert_eq!(parse_config(&emitted).unwrap(), config);
        let analysis = config.to_domain().unwrap();
        assert_eq!(analysis.law.rule_count(), 1);
        assert!(analysis.exact.is_some());
    }

    #[test]
    fn syntax_error_is_parse_error() {
        assert!(matches!(
            parse_config("{ not json"),
            Err(Error::ParseError(_))
        ));
    }

    #[test]
    fn unknown_field_rejected() {
        let text = minimal().replace("\"law\"", "\"surprise\": 1, \"law\"");
        assert!(matches!(
            parse_config(&text),
            Err(Error::ValidationError { .. })
        ));
    }

    #[test]
    fn empty_rules_rejected() {
        let config = parse_config(
            r#"{"law": {"rules": [], "punishments": {}}, "society": {}}"#,
        )
        .unwrap();
        assert!(matches!(
            config.to_domain(),
            Err(Error::ValidationError { path, .. }) if path == "law.rules"
        ));
    }

    #[test]
    fn bad_mass_sum_names_the_regulation() {
        let text = minimal().replace("8/30", "5/30");
        let config = parse_config(&text).unwrap();
        match config.to_domain() {
            Err(Error::ValidationError { path, .. }) => {
                assert!(path.contains("{tax}"), "path was {path}");
            }
            other => panic!("expected validation error, got {other:?}"),
        }
    }

    #[test]
    fn missing_punishment_rejected() {
        let text = minimal().replace(r#"{"tax": 100}"#, "{}");
        let config = parse_config(&text).unwrap();
        assert!(matches!(
            config.to_domain(),
            Err(Error::ValidationError { path, .. }) if path == "law.punishments.tax"
        ));
    }

    #[test]
    fn parse_set_variants() {
        let analysis = parse_config(&minimal()).unwrap().to_domain().unwrap();
        assert_eq!(analysis.parse_set("tax").unwrap(), 1);
        assert_eq!(analysis.parse_set("{tax}").unwrap(), 1);
        assert_eq!(analysis.parse_set("{}").unwrap(), 0);
        assert_eq!(analysis.parse_set("").unwrap(), 0);
        assert_eq!(analysis.parse_set("∅").unwrap(), 0);
        assert!(analysis.parse_set("nope").is_err());
    }

    #[test]
    fn decimal_only_tables_lose_exactness_gracefully() {
        let text = minimal().replace("\"22/30\"", "0.7333333333333333").replace(
            "\"8/30\"",
            "0.26666666666666666",
        );
        let analysis = parse_config(&text).unwrap().to_domain().unwrap();
        assert!(analysis.exact.is_none());
    }
}
