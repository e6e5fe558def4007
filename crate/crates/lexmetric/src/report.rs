//! Report rendering for every CLI command: deterministic human text and a
//! field-for-field JSON mirror, plus the bundled communal reproduction
//! harness that compares definition-based values against the previously
//! published figures.

use std::fmt::Write as _;

use num_rational::Ratio;
use serde_json::{json, Value};

use crate::config::{Analysis, AnalysisConfig};
use crate::consensus::{classify_signer, min_consensus_radius, pareto_deals};
use crate::divergence::{kl_social_divergence, Variant};
use crate::error::{Error, Result};
use crate::exact::{format_ratio, ratio_to_f64};
use crate::law::Regulation;
use crate::lgame::{LGame, ProbabilityModel};

/// The bundled communal instance: 3 rules with punishments 100/100/166 and
/// the full 8-regulation mean probability table.
pub const COMMUNAL_CONFIG: &str = include_str!("../configs/communal.json");

/// Conventional letter names of the communal regulations, indexed by
/// bitmask: E = {tax,raffle} is mask 3, D = {comp} is mask 4.
pub const NODE_LETTERS: [&str; 8] = ["A", "B", "C", "E", "D", "F", "G", "H"];

const LETTER_MASKS: [(char, u32); 8] = [
    ('A', 0b000),
    ('B', 0b001),
    ('C', 0b010),
    ('D', 0b100),
    ('E', 0b011),
    ('F', 0b101),
    ('G', 0b110),
    ('H', 0b111),
];

/// The 28 undirected edge labels of the previously published figure, as
/// (letter, letter, numerator, denominator).
const PUBLISHED_EDGE_LABELS: [(char, char, i128, i128); 28] = [
    ('A', 'B', 166, 30),
    ('A', 'C', 166, 30),
    ('A', 'D', 332, 30),
    ('A', 'E', 80, 9),
    ('A', 'F', 166, 30),
    ('A', 'G', 10, 1),
    ('A', 'H', 88, 10),
    ('B', 'C', 166, 30),
    ('B', 'D', 166, 30),
    ('B', 'E', 166, 30),
    ('B', 'F', 166, 30),
    ('B', 'G', 166, 30),
    ('B', 'H', 166, 30),
    ('C', 'D', 1162, 30),
    ('C', 'E', 1298, 90),
    ('C', 'F', 166, 90),
    ('C', 'G', 166, 30),
    ('C', 'H', 966, 30),
    ('D', 'E', 1796, 90),
    ('D', 'F', 332, 30),
    ('D', 'G', 632, 30),
    ('D', 'H', 332, 30),
    ('E', 'F', 1298, 90),
    ('E', 'G', 170, 9),
    ('E', 'H', 10, 3),
    ('F', 'G', 466, 30),
    ('F', 'H', 966, 30),
    ('G', 'H', 110, 3),
];

/// The previously published least-resistance path claims for A → H.
const PUBLISHED_PATHS: [(&[char; 4], f64); 3] = [
    (&['A', 'D', 'G', 'H'], 12.91),
    (&['A', 'C', 'E', 'H'], 34.422),
    (&['A', 'B', 'G', 'H'], 46.5),
];

fn letter_mask(letter: char) -> u32 {
    LETTER_MASKS
        .iter()
        .find(|(l, _)| *l == letter)
        .expect("known letter")
        .1
}

/// A finished report: deterministic human text, its JSON mirror, and DOT
/// where the command supports it.
pub struct Rendered {
    pub human: String,
    pub json: Value,
    pub dot: Option<String>,
}

impl Rendered {
    fn new(human: String, json: Value) -> Rendered {
        Rendered {
            human,
            json,
            dot: None,
        }
    }
}

/// "5.533333 (= 83/15)" when an exact form exists.
fn fmt_value(value: f64, exact: Option<Ratio<i128>>) -> String {
    match exact {
        Some(r) => format!("{value:.6} (= {})", format_ratio(r)),
        None => format!("{value:.6}"),
    }
}

fn value_json(value: f64, exact: Option<Ratio<i128>>) -> Value {
    match exact {
        Some(r) => json!({ "value": value, "exact": format_ratio(r) }),
        None => json!({ "value": value }),
    }
}

fn labels(analysis: &Analysis, masks: &[u32]) -> Vec<String> {
    masks.iter().map(|&m| analysis.law.label(m)).collect()
}

pub fn validate(analysis: &Analysis, config: &AnalysisConfig) -> Result<Rendered> {
    let g = analysis.graph(false);
    // touch every node so table problems surface here
    for &node in g.nodes() {
        g.game(node)?;
    }
    let mut human = String::new();
    writeln!(human, "config valid").unwrap();
    writeln!(
        human,
        "law: {} rules, {} regulations",
        analysis.law.rule_count(),
        g.node_count()
    )
    .unwrap();
    for bit in 0..analysis.law.rule_count() {
        writeln!(
            human,
            "  rule {} punishment {:.6}",
            analysis.law.rule_name(bit),
            analysis.law.rule_punishment(bit)
        )
        .unwrap();
    }
    writeln!(
        human,
        "society: {} ({} players, {} aggregate tables)",
        analysis.society.name(),
        analysis.society.players().len(),
        config.society.aggregate.len()
    )
    .unwrap();
    writeln!(human, "preferences: {}", analysis.preferences.len()).unwrap();
    writeln!(
        human,
        "options: variant={} log-base={} exact-arithmetic={}",
        analysis.variant.as_str(),
        analysis.log_base.as_str(),
        if analysis.exact.is_some() { "available" } else { "unavailable" }
    )
    .unwrap();
    let json = json!({
        "valid": true,
        "rules": analysis.law.rules(),
        "regulations": g.node_count(),
        "players": analysis.society.players().len(),
        "aggregate_tables": config.society.aggregate.len(),
        "preferences": analysis.preferences.len(),
        "variant": analysis.variant.as_str(),
        "log_base": analysis.log_base.as_str(),
        "exact_arithmetic": analysis.exact.is_some(),
    });
    Ok(Rendered::new(human, json))
}

fn selected_nodes(analysis: &Analysis, from: Option<u32>) -> Vec<u32> {
    match from {
        Some(mask) => vec![mask],
        None => analysis.graph(false).nodes().to_vec(),
    }
}

pub fn severity(analysis: &Analysis, from: Option<u32>) -> Result<Rendered> {
    let g = analysis.graph(false);
    let mut human = String::from("expected severity E[g]\n");
    let mut rows = Vec::new();
    for mask in selected_nodes(analysis, from) {
        let value = g.game(mask)?.expected_severity()?;
        let exact = analysis.exact.as_ref().and_then(|e| e.severity(mask));
        writeln!(
            human,
            "  {:<24} {}",
            analysis.law.label(mask),
            fmt_value(value, exact)
        )
        .unwrap();
        rows.push(json!({
            "regulation": analysis.law.label(mask),
            "severity": value_json(value, exact),
        }));
    }
    Ok(Rendered::new(human, json!({ "severity": rows })))
}

pub fn entropy(analysis: &Analysis, from: Option<u32>) -> Result<Rendered> {
    let g = analysis.graph(false);
    let mut human = format!("entropy (log base {})\n", analysis.log_base.as_str());
    let mut rows = Vec::new();
    for mask in selected_nodes(analysis, from) {
        let value = analysis.log_base.convert(g.game(mask)?.entropy());
        writeln!(human, "  {:<24} {value:.6}", analysis.law.label(mask)).unwrap();
        rows.push(json!({
            "regulation": analysis.law.label(mask),
            "entropy": value,
        }));
    }
    Ok(Rendered::new(
        human,
        json!({ "log_base": analysis.log_base.as_str(), "entropy": rows }),
    ))
}

/// KL social divergence between each player's table and the society mean,
/// over the regulation `from`, both directions.
pub fn divergence(analysis: &Analysis, from: u32) -> Result<Rendered> {
    let regulation = Regulation::new(analysis.law.clone(), from);
    let mean = analysis.society.mean_probability(&regulation)?;
    let with_table: Vec<_> = analysis
        .society
        .players()
        .iter()
        .filter(|p| p.tables.contains_key(&from))
        .collect();
    if with_table.is_empty() {
        return Err(Error::MissingTable(format!(
            "no player tables for {} to compare against the mean",
            regulation.label()
        )));
    }
    let mut human = format!(
        "KL social divergence over {} (log base {})\n",
        regulation.label(),
        analysis.log_base.as_str()
    );
    let mut rows = Vec::new();
    for player in with_table {
        let model = ProbabilityModel::new(regulation.clone(), player.tables[&from].clone())?;
        let render = |r: Result<f64>| match r {
            Ok(v) => (
                format!("{:.6}", analysis.log_base.convert(v)),
                json!(analysis.log_base.convert(v)),
            ),
            Err(e) => (format!("error: {}", error_name(&e)), json!({ "error": error_name(&e) })),
        };
        let (pm_h, pm_j) = render(kl_social_divergence(&model, &mean));
        let (mp_h, mp_j) = render(kl_social_divergence(&mean, &model));
        writeln!(
            human,
            "  {:<16} KL(player||mean) = {pm_h}   KL(mean||player) = {mp_h}",
            player.id
        )
        .unwrap();
        rows.push(json!({
            "player": player.id,
            "kl_player_mean": pm_j,
            "kl_mean_player": mp_j,
        }));
    }
    Ok(Rendered::new(
        human,
        json!({
            "regulation": regulation.label(),
            "log_base": analysis.log_base.as_str(),
            "divergence": rows,
        }),
    ))
}

fn error_name(e: &Error) -> &'static str {
    match e {
        Error::MissingTable(_) => "MissingTable",
        Error::InvalidMass { .. } => "InvalidMass",
        Error::Unpunished => "Unpunished",
        Error::RuleNotInRegulation { .. } => "RuleNotInRegulation",
        Error::RegulationMismatch => "RegulationMismatch",
        Error::AbsoluteContinuityViolated { .. } => "AbsoluteContinuityViolated",
        Error::LawMismatch => "LawMismatch",
        Error::NotAnExtension { .. } => "NotAnExtension",
        Error::LawTooLarge { .. } => "LawTooLarge",
        Error::NotMonotone { .. } => "NotMonotone",
        Error::EmptyMaximalSet(_) => "EmptyMaximalSet",
        Error::InvalidLaw(_) => "InvalidLaw",
        Error::InvalidPreorder(_) => "InvalidPreorder",
        Error::ParseError(_) => "ParseError",
        Error::ValidationError { .. } => "ValidationError",
    }
}

fn game_of(analysis: &Analysis, mask: u32) -> Result<LGame> {
    let regulation = Regulation::new(analysis.law.clone(), mask);
    let probability = analysis.society.mean_probability(&regulation)?;
    Ok(LGame::new(probability, Some(analysis.punishment.clone())))
}

/// Both directed premetric values plus the two symmetrizations.
pub fn distance(analysis: &Analysis, from: u32, to: u32) -> Result<Rendered> {
    let a = game_of(analysis, from)?;
    let b = game_of(analysis, to)?;
    let d_to_from = crate::divergence::lgame_premetric(&b, &a)?;
    let d_from_to = crate::divergence::lgame_premetric(&a, &b)?;
    let plus = d_to_from + d_from_to;
    let max = d_to_from.max(d_from_to);
    let exact = analysis.exact.as_ref();
    let e_to_from = exact.and_then(|e| e.premetric(to, from));
    let e_from_to = exact.and_then(|e| e.premetric(from, to));
    let e_plus = e_to_from.zip(e_from_to).map(|(a, b)| a + b);
    let e_max = e_to_from.zip(e_from_to).map(|(a, b)| if a >= b { a } else { b });
    let from_l = analysis.law.label(from);
    let to_l = analysis.law.label(to);
    let mut human = format!("distances between {from_l} and {to_l}\n");
    writeln!(human, "  D({to_l}||{from_l}) = {}", fmt_value(d_to_from, e_to_from)).unwrap();
    writeln!(human, "  D({from_l}||{to_l}) = {}", fmt_value(d_from_to, e_from_to)).unwrap();
    writeln!(human, "  D+ = {}", fmt_value(plus, e_plus)).unwrap();
    writeln!(human, "  Ds = {}", fmt_value(max, e_max)).unwrap();
    let json = json!({
        "from": from_l,
        "to": to_l,
        "directed_to_from": value_json(d_to_from, e_to_from),
        "directed_from_to": value_json(d_from_to, e_from_to),
        "plus": value_json(plus, e_plus),
        "max": value_json(max, e_max),
    });
    Ok(Rendered::new(human, json))
}

pub fn graph(analysis: &Analysis) -> Result<Rendered> {
    let g = analysis.graph(true);
    let overridden = !analysis.edge_overrides.is_empty();
    let mut human = format!(
        "game of games: {} nodes, variant {}{}\n",
        g.node_count(),
        g.variant().as_str(),
        if overridden {
            " (edge overrides active: overridden weights bypass the distance definition)"
        } else {
            ""
        }
    );
    let mut edges = Vec::new();
    for &u in g.nodes() {
        for &v in g.nodes() {
            if u == v {
                continue;
            }
            let w = g.weight(u, v)?;
            let is_override = analysis.edge_overrides.contains_key(&(u, v));
            let exact = if is_override {
                None
            } else {
                analysis.exact.as_ref().and_then(|e| e.weight(u, v, g.variant()))
            };
            writeln!(
                human,
                "  {:<24} -> {:<24} {}{}",
                analysis.law.label(u),
                analysis.law.label(v),
                fmt_value(w, exact),
                if is_override { "  [override]" } else { "" }
            )
            .unwrap();
            edges.push(json!({
                "from": analysis.law.label(u),
                "to": analysis.law.label(v),
                "weight": value_json(w, exact),
                "override": is_override,
            }));
        }
    }
    let mut rendered = Rendered::new(
        human,
        json!({
            "nodes": labels(analysis, g.nodes()),
            "variant": g.variant().as_str(),
            "overrides_active": overridden,
            "edges": edges,
        }),
    );
    rendered.dot = Some(g.to_dot()?);
    Ok(rendered)
}

pub fn path(
    analysis: &Analysis,
    from: u32,
    to: u32,
    incremental: bool,
    k: usize,
) -> Result<Rendered> {
    let g = analysis.graph(true);
    let paths = if incremental {
        g.k_shortest_incremental_paths(from, to, k)?
    } else {
        vec![g.shortest_path(from, to)?]
    };
    let mut human = format!(
        "{} paths {} -> {}\n",
        if incremental { "incremental (one rule per step)" } else { "shortest" },
        analysis.law.label(from),
        analysis.law.label(to)
    );
    let mut rows = Vec::new();
    for (i, p) in paths.iter().enumerate() {
        let exact = analysis
            .exact
            .as_ref()
            .filter(|_| analysis.edge_overrides.is_empty())
            .and_then(|e| e.path_length(&p.nodes, g.variant()));
        writeln!(
            human,
            "  {}. {}  length {}  max-step {:.6}",
            i + 1,
            p.labels(&analysis.law).join(" -> "),
            fmt_value(p.length, exact),
            p.max_step(&g)?
        )
        .unwrap();
        rows.push(json!({
            "nodes": p.labels(&analysis.law),
            "length": value_json(p.length, exact),
            "max_step": p.max_step(&g)?,
            "incremental": p.incremental,
        }));
    }
    Ok(Rendered::new(human, json!({ "paths": rows })))
}

pub fn pareto(analysis: &Analysis) -> Result<Rendered> {
    let g = analysis.graph(true);
    let profile = analysis.profile(g.nodes())?;
    if profile.players.is_empty() {
        return Err(Error::InvalidPreorder(
            "the config declares no preferences".into(),
        ));
    }
    let outcome = pareto_deals(&g, &profile, analysis.direction)?;
    let closest = crate::consensus::closest_pareto_deal(&g, &profile, analysis.direction)?;
    let mut human = String::from("pareto analysis\n");
    let mut players = Vec::new();
    for (player, ranking) in profile.players.iter().zip(&outcome.rankings) {
        let lsc = !outcome.non_lsc_players.contains(&player.id);
        writeln!(
            human,
            "  player {}: maximal {{{}}} lsc={}",
            player.id,
            labels(analysis, &ranking.maximal).join(" "),
            lsc
        )
        .unwrap();
        for (i, class) in ranking.classes.iter().enumerate() {
            writeln!(
                human,
                "    class {}: {}  (min-distance {:.6})",
                i,
                labels(analysis, class).join(" "),
                ranking.min_distance[&class[0]]
            )
            .unwrap();
        }
        players.push(json!({
            "id": player.id,
            "maximal": labels(analysis, &ranking.maximal),
            "lsc": lsc,
            "classes": ranking.classes.iter().map(|c| labels(analysis, c)).collect::<Vec<_>>(),
        }));
    }
    if !outcome.non_lsc_players.is_empty() {
        writeln!(
            human,
            "  warning: preferences not lower semicontinuous: {} (optimality guarantee void)",
            outcome.non_lsc_players.join(" ")
        )
        .unwrap();
    }
    writeln!(human, "  pareto deals: {}", labels(analysis, &outcome.deals).join(" ")).unwrap();
    writeln!(human, "  closest pareto deal: {}", analysis.law.label(closest)).unwrap();
    Ok(Rendered::new(
        human,
        json!({
            "players": players,
            "non_lsc_players": outcome.non_lsc_players,
            "deals": labels(analysis, &outcome.deals),
            "closest": analysis.law.label(closest),
        }),
    ))
}

pub fn radius(analysis: &Analysis) -> Result<Rendered> {
    let g = analysis.graph(true);
    let profile = analysis.profile(g.nodes())?;
    if profile.players.is_empty() {
        return Err(Error::InvalidPreorder(
            "the config declares no preferences".into(),
        ));
    }
    let result = min_consensus_radius(&g, &profile, analysis.direction)?;
    let mut human = String::from("minimum consensus radius\n");
    for player in &profile.players {
        writeln!(
            human,
            "  player {}: maximal {{{}}}",
            player.id,
            labels(analysis, &player.preorder.maximal_elements()).join(" ")
        )
        .unwrap();
    }
    writeln!(human, "  critical distance: {:.6}", result.critical).unwrap();
    writeln!(
        human,
        "  minimal strict radius: {:e} (critical bumped by one representable step)",
        result.radius
    )
    .unwrap();
    writeln!(human, "  witnesses: {}", labels(analysis, &result.witnesses).join(" ")).unwrap();
    Ok(Rendered::new(
        human,
        json!({
            "critical": result.critical,
            "radius": result.radius,
            "witnesses": labels(analysis, &result.witnesses),
        }),
    ))
}

pub fn signers(analysis: &Analysis, r: Option<f64>) -> Result<Rendered> {
    let g = analysis.graph(true);
    let step = g.step_value()?;
    let mut human = format!("signer classification (graph step value {step:.6})\n");
    let mut rows = Vec::new();
    let mut classify = |name: &str, threshold: f64| -> Result<()> {
        let class = classify_signer(&g, threshold)?;
        writeln!(human, "  {name:<20} r={threshold:.6} -> {}", class.as_str()).unwrap();
        rows.push(json!({
            "player": name,
            "threshold": threshold,
            "class": class.as_str(),
        }));
        Ok(())
    };
    match r {
        Some(threshold) => classify("(--r)", threshold)?,
        None => {
            let declared: Vec<(String, f64)> = analysis
                .preferences
                .iter()
                .filter_map(|(id, _, t)| t.map(|t| (id.clone(), t)))
                .collect();
            if declared.is_empty() {
                return Err(Error::InvalidPreorder(
                    "no signer thresholds declared; pass --r or add preference thresholds".into(),
                ));
            }
            for (id, threshold) in declared {
                classify(&id, threshold)?;
            }
        }
    }
    Ok(Rendered::new(
        human,
        json!({ "step_value": step, "signers": rows }),
    ))
}

/// The communal reproduction harness: definition-based values side by side
/// with the previously published figure labels and path lengths, all
/// deviations flagged.
pub fn reproduce() -> Result<Rendered> {
    let config = crate::config::parse_config(COMMUNAL_CONFIG)?;
    let analysis = config.to_domain()?;
    let exact = analysis
        .exact
        .as_ref()
        .expect("the bundled config is fully rational");
    let g = analysis.graph(false);

    let mut human = String::from("communal reproduction report\n");
    writeln!(
        human,
        "definition-based premetric values vs previously published figures\n"
    )
    .unwrap();

    // edge comparison
    writeln!(human, "edge labels (published value is undirected):").unwrap();
    let mut edge_rows = Vec::new();
    let mut edge_deviations = 0usize;
    for (lu, lv, num, den) in PUBLISHED_EDGE_LABELS {
        let u = letter_mask(lu);
        let v = letter_mask(lv);
        let published = Ratio::new(num, den);
        let uv = exact.weight(u, v, Variant::Directed).unwrap();
        let vu = exact.weight(v, u, Variant::Directed).unwrap();
        let matches = uv == published || vu == published;
        if !matches {
            edge_deviations += 1;
        }
        writeln!(
            human,
            "  {lu}-{lv}: published {:<9} D({lv}||{lu}) = {:<9} D({lu}||{lv}) = {:<9}{}",
            format_ratio(published),
            format_ratio(uv),
            format_ratio(vu),
            if matches { "" } else { "  DEVIATES" }
        )
        .unwrap();
        edge_rows.push(json!({
            "edge": format!("{lu}-{lv}"),
            "published": format_ratio(published),
            "definition_forward": format_ratio(uv),
            "definition_backward": format_ratio(vu),
            "deviates": !matches,
        }));
    }

    // all monotone A → H paths
    let paths = g.k_shortest_incremental_paths(0, 0b111, usize::MAX)?;
    writeln!(human, "\nall {} monotone A->H paths (definition-based):", paths.len()).unwrap();
    let mut path_rows = Vec::new();
    for (i, p) in paths.iter().enumerate() {
        let exact_len = exact.path_length(&p.nodes, Variant::Directed).unwrap();
        let letters: Vec<&str> = p.nodes.iter().map(|&n| NODE_LETTERS[n as usize]).collect();
        writeln!(
            human,
            "  {}. ({})  length {}",
            i + 1,
            letters.join(","),
            fmt_value(p.length, Some(exact_len))
        )
        .unwrap();
        path_rows.push(json!({
            "nodes": letters,
            "length": value_json(p.length, Some(exact_len)),
        }));
    }

    // published path claims
    writeln!(human, "\npublished path-length claims:").unwrap();
    let mut claim_rows = Vec::new();
    let mut path_deviations = 0usize;
    for (letters, claimed) in PUBLISHED_PATHS {
        let nodes: Vec<u32> = letters.iter().map(|&l| letter_mask(l)).collect();
        let exact_len = exact.path_length(&nodes, Variant::Directed).unwrap();
        let definition = ratio_to_f64(exact_len);
        let monotone = nodes
            .windows(2)
            .all(|p| p[0] & !p[1] == 0 && (p[1] & !p[0]).count_ones() == 1);
        let deviates = (definition - claimed).abs() > 1e-6;
        if deviates {
            path_deviations += 1;
        }
        writeln!(
            human,
            "  ({}) published {claimed}  definition {}{}{}",
            letters.iter().collect::<String>(),
            fmt_value(definition, Some(exact_len)),
            if deviates { "  DEVIATES" } else { "" },
            if monotone { "" } else { "  [not one-rule-per-step]" }
        )
        .unwrap();
        claim_rows.push(json!({
            "nodes": letters.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
            "published": claimed,
            "definition": value_json(definition, Some(exact_len)),
            "deviates": deviates,
            "monotone": monotone,
        }));
    }

    let best = &paths[0];
    let best_letters: Vec<&str> = best.nodes.iter().map(|&n| NODE_LETTERS[n as usize]).collect();
    writeln!(
        human,
        "\nleast-resistance incremental path: ({})  length {}  max-step {}",
        best_letters.join(","),
        fmt_value(
            best.length,
            Some(exact.path_length(&best.nodes, Variant::Directed).unwrap())
        ),
        fmt_value(best.max_step(&g)?, Some(Ratio::new(166, 30)))
    )
    .unwrap();
    writeln!(
        human,
        "deviations: {edge_deviations} of 28 edge labels, {path_deviations} of 3 path claims"
    )
    .unwrap();

    Ok(Rendered::new(
        human,
        json!({
            "edges": edge_rows,
            "monotone_paths": path_rows,
            "published_claims": claim_rows,
            "edge_deviations": edge_deviations,
            "path_deviations": path_deviations,
            "least_resistance_path": best_letters,
        }),
    ))
}
