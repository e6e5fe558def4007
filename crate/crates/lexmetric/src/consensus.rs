//! Player preferences over regulations and the agreement machinery built
//! on the distance: distance linear orders, Pareto-optimal and closest
//! deals, the consensus radius and signer classification.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::gamegraph::GameOfGames;
use crate::divergence::Variant;

/// Which way the player-to-deal distance is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Direction {
    /// d(m, y): the resistance of moving from y to the preferred deal m.
    #[default]
    ToMaximal,
    /// d(y, m): the resistance of moving from the preferred deal m to y.
    FromMaximal,
}

fn deal_distance(g: &GameOfGames, direction: Direction, maximal: u32, y: u32) -> Result<f64> {
    match direction {
        Direction::ToMaximal => g.dist(maximal, y),
        Direction::FromMaximal => g.dist(y, maximal),
    }
}

/// A reflexive transitive relation over the nodes of a game graph.
///
/// Built from explicit strict pairs; the reflexive-transitive closure is
/// taken automatically. Antisymmetry and totality are not required, and
/// incomparable pairs are allowed.
#[derive(Debug, Clone)]
pub struct Preorder {
    nodes: Vec<u32>,
    le: Vec<bool>,
}

impl Preorder {
    /// Closure of a strict-pair list. Fails if the closure would collapse a
    /// declared strict pair into indifference.
    pub fn from_strict_pairs(nodes: &[u32], strict: &[(u32, u32)]) -> Result<Preorder> {
        let mut preorder = Preorder::reflexive(nodes);
        let n = nodes.len();
        for &(lo, hi) in strict {
            let i = preorder.index(lo)?;
            let j = preorder.index(hi)?;
            preorder.le[i * n + j] = true;
        }
        preorder.transitive_closure();
        for &(lo, hi) in strict {
            let i = preorder.index(lo)?;
            let j = preorder.index(hi)?;
            if preorder.le[j * n + i] {
                return Err(Error::InvalidPreorder(format!(
                    "closure collapses declared strict pair ({lo:#b}, {hi:#b}) into a cycle"
                )));
            }
        }
        Ok(preorder)
    }

    /// The trivial preference: only reflexive pairs.
    pub fn reflexive(nodes: &[u32]) -> Preorder {
        let n = nodes.len();
        let mut le = vec![false; n * n];
        for i in 0..n {
            le[i * n + i] = true;
        }
        Preorder {
            nodes: nodes.to_vec(),
            le,
        }
    }

    /// A total preorder from a score map: higher score preferred, equal
    /// scores indifferent.
    pub fn from_scores(nodes: &[u32], score: &BTreeMap<u32, f64>) -> Preorder {
        let n = nodes.len();
        let mut le = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                le[i * n + j] = score[&nodes[i]] <= score[&nodes[j]];
            }
        }
        Preorder {
            nodes: nodes.to_vec(),
            le,
        }
    }

    pub fn nodes(&self) -> &[u32] {
        &self.nodes
    }

    fn index(&self, node: u32) -> Result<usize> {
        self.nodes
            .iter()
            .position(|&n| n == node)
            .ok_or_else(|| Error::InvalidPreorder(format!("{node:#b} is not in the domain")))
    }

    fn transitive_closure(&mut self) {
        let n = self.nodes.len();
        for k in 0..n {
            for i in 0..n {
                if self.le[i * n + k] {
                    for j in 0..n {
                        if self.le[k * n + j] {
                            self.le[i * n + j] = true;
                        }
                    }
                }
            }
        }
    }

    pub fn le(&self, a: u32, b: u32) -> bool {
        let (i, j) = (self.index(a).unwrap(), self.index(b).unwrap());
        self.le[i * self.nodes.len() + j]
    }

    pub fn strict(&self, a: u32, b: u32) -> bool {
        self.le(a, b) && !self.le(b, a)
    }

    pub fn incomparable(&self, a: u32, b: u32) -> bool {
        !self.le(a, b) && !self.le(b, a)
    }

    pub fn strict_pairs(&self) -> Vec<(u32, u32)> {
        let mut pairs = Vec::new();
        for &a in &self.nodes {
            for &b in &self.nodes {
                if a != b && self.strict(a, b) {
                    pairs.push((a, b));
                }
            }
        }
        pairs
    }

    /// Elements with no strictly greater element; nonempty on a finite
    /// nonempty domain.
    pub fn maximal_elements(&self) -> Vec<u32> {
        self.nodes
            .iter()
            .copied()
            .filter(|&a| !self.nodes.iter().any(|&b| self.strict(a, b)))
            .collect()
    }

    /// Weak lower contour {t : t ≾ a}.
    pub fn lower_contour(&self, a: u32) -> BTreeSet<u32> {
        self.nodes
            .iter()
            .copied()
            .filter(|&t| self.le(t, a))
            .collect()
    }

    /// All maximal chains: maximal sets of pairwise comparable elements.
    pub fn maximal_chains(&self) -> Vec<Vec<u32>> {
        let n = self.nodes.len();
        let comparable = |i: usize, j: usize| self.le[i * n + j] || self.le[j * n + i];
        let mut chains = Vec::new();
        let mut current = Vec::new();
        fn extend(
            start: usize,
            n: usize,
            comparable: &dyn Fn(usize, usize) -> bool,
            current: &mut Vec<usize>,
            chains: &mut Vec<Vec<usize>>,
        ) {
            let mut extended = false;
            for cand in start..n {
                if current.iter().all(|&c| comparable(c, cand)) {
                    extended = true;
                    current.push(cand);
                    extend(cand + 1, n, comparable, current, chains);
                    current.pop();
                }
            }
            if !extended {
                // maximal only if no earlier element extends it either
                let maximal = (0..n)
                    .all(|cand| current.contains(&cand) || !current.iter().all(|&c| comparable(c, cand)));
                if maximal && !current.is_empty() {
                    chains.push(current.clone());
                }
            }
        }
        let mut index_chains = Vec::new();
        extend(0, n, &comparable, &mut current, &mut index_chains);
        for chain in index_chains {
            chains.push(chain.into_iter().map(|i| self.nodes[i]).collect());
        }
        chains
    }
}

/// One player's preference plus an optional signer threshold.
#[derive(Debug, Clone)]
pub struct PreferencePlayer {
    pub id: String,
    pub preorder: Preorder,
    pub threshold: Option<f64>,
}

/// Per-player preorders over the regulations of one law.
#[derive(Debug, Clone)]
pub struct PreferenceProfile {
    pub players: Vec<PreferencePlayer>,
}

/// A total preorder over regulations, ranked by minimum distance to a
/// player's maximal set; `classes` runs from closest to farthest.
#[derive(Debug, Clone)]
pub struct TotalPreorderRanking {
    pub player_id: String,
    pub classes: Vec<Vec<u32>>,
    pub min_distance: BTreeMap<u32, f64>,
    pub maximal: Vec<u32>,
    pub variant: Variant,
    pub direction: Direction,
}

impl TotalPreorderRanking {
    /// True iff y strictly outranks x (strictly smaller min-distance).
    pub fn strictly_above(&self, y: u32, x: u32) -> bool {
        self.min_distance[&y] < self.min_distance[&x]
    }

    pub fn top_class(&self) -> &[u32] {
        &self.classes[0]
    }
}

/// Ranks every node of the graph by its minimum distance from the maximal
/// set; the result is a total preorder.
pub fn distance_linear_order(
    g: &GameOfGames,
    player_id: &str,
    maximal: &[u32],
    direction: Direction,
) -> Result<TotalPreorderRanking> {
    if maximal.is_empty() {
        return Err(Error::EmptyMaximalSet(player_id.to_string()));
    }
    let mut min_distance = BTreeMap::new();
    for &y in g.nodes() {
        let mut best = f64::INFINITY;
        for &m in maximal {
            best = best.min(deal_distance(g, direction, m, y)?);
        }
        min_distance.insert(y, best);
    }
    let mut distinct: Vec<f64> = min_distance.values().copied().collect();
    distinct.sort_by(|a, b| a.partial_cmp(b).unwrap());
    distinct.dedup();
    let classes: Vec<Vec<u32>> = distinct
        .iter()
        .map(|&d| {
            g.nodes()
                .iter()
                .copied()
                .filter(|y| min_distance[y] == d)
                .collect()
        })
        .collect();
    Ok(TotalPreorderRanking {
        player_id: player_id.to_string(),
        classes,
        min_distance,
        maximal: maximal.to_vec(),
        variant: g.variant(),
        direction,
    })
}

/// True iff every strict preference x ≺ y places x strictly below y in the
/// ranking, checked exhaustively.
pub fn check_linear_extension(preference: &Preorder, ranking: &TotalPreorderRanking) -> bool {
    preference
        .strict_pairs()
        .into_iter()
        .all(|(x, y)| ranking.strictly_above(y, x))
}

/// Checks lower semicontinuity of the preference in the topology
/// τ_U = {U_r = ∪_k B_r(G*_k)}_{r≥0} ∪ {∅}: one shared radius across the
/// maximal deals, so the opens are the nested strict sublevel sets of the
/// minimum deal distance (the full space is admitted as U_∞). The
/// complement of every weak lower contour must be some U_r, which on a
/// finite space reduces to: the largest min-distance inside the complement
/// is strictly below the smallest min-distance on the contour. A
/// preference with an empty strict part is lower semicontinuous by
/// convention.
pub fn is_tau_lsc(
    preference: &Preorder,
    g: &GameOfGames,
    maximal: &[u32],
    direction: Direction,
) -> Result<bool> {
    if preference.strict_pairs().is_empty() {
        return Ok(true);
    }
    if maximal.is_empty() {
        return Ok(false);
    }
    let mut dmin: BTreeMap<u32, f64> = BTreeMap::new();
    for &y in g.nodes() {
        let mut best = f64::INFINITY;
        for &m in maximal {
            best = best.min(deal_distance(g, direction, m, y)?);
        }
        dmin.insert(y, best);
    }
    for &a in g.nodes() {
        let contour = preference.lower_contour(a);
        if contour.is_empty() || contour.len() == g.node_count() {
            continue;
        }
        let complement_max = g
            .nodes()
            .iter()
            .filter(|n| !contour.contains(n))
            .map(|n| dmin[n])
            .fold(f64::NEG_INFINITY, f64::max);
        let contour_min = contour.iter().map(|n| dmin[n]).fold(f64::INFINITY, f64::min);
        if !(complement_max < contour_min) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks the compatibility condition between a preference and the
/// distance: along every maximal chain, moving up in preference never moves
/// away from the chain's maximal class.
pub fn is_compatible(
    preference: &Preorder,
    g: &GameOfGames,
    direction: Direction,
) -> Result<bool> {
    for chain in preference.maximal_chains() {
        let top: Vec<u32> = chain
            .iter()
            .copied()
            .filter(|&a| !chain.iter().any(|&b| preference.strict(a, b)))
            .collect();
        let to_top = |y: u32| -> Result<f64> {
            let mut best = f64::INFINITY;
            for &m in &top {
                best = best.min(deal_distance(g, direction, m, y)?);
            }
            Ok(best)
        };
        for &g1 in &chain {
            for &g2 in &chain {
                if preference.le(g1, g2) && to_top(g2)? > to_top(g1)? + 1e-12 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Everything the Pareto search produces, including the per-player
/// rankings and the players whose preferences failed the semicontinuity
/// check (the optimality guarantee is void for those).
#[derive(Debug, Clone)]
pub struct ParetoOutcome {
    pub deals: Vec<u32>,
    pub rankings: Vec<TotalPreorderRanking>,
    pub non_lsc_players: Vec<String>,
}

/// Builds each player's distance linear order, intersects them and returns
/// the maximal elements of the intersection.
pub fn pareto_deals(
    g: &GameOfGames,
    profile: &PreferenceProfile,
    direction: Direction,
) -> Result<ParetoOutcome> {
    let mut rankings = Vec::new();
    let mut non_lsc_players = Vec::new();
    for player in &profile.players {
        let maximal = player.preorder.maximal_elements();
        if maximal.is_empty() {
            return Err(Error::EmptyMaximalSet(player.id.clone()));
        }
        if !is_tau_lsc(&player.preorder, g, &maximal, direction)? {
            non_lsc_players.push(player.id.clone());
        }
        rankings.push(distance_linear_order(g, &player.id, &maximal, direction)?);
    }
    // x ⊑ y iff every player ranks y at least as close
    let below = |x: u32, y: u32| {
        rankings
            .iter()
            .all(|r| r.min_distance[&y] <= r.min_distance[&x])
    };
    let deals: Vec<u32> = g
        .nodes()
        .iter()
        .copied()
        .filter(|&x| {
            !g.nodes()
                .iter()
                .any(|&y| y != x && below(x, y) && !below(y, x))
        })
        .collect();
    Ok(ParetoOutcome {
        deals,
        rankings,
        non_lsc_players,
    })
}

/// Among the Pareto deals, the one minimizing the maximum distance from
/// every player's maximal deals; ties broken by node bitmask.
pub fn closest_pareto_deal(
    g: &GameOfGames,
    profile: &PreferenceProfile,
    direction: Direction,
) -> Result<u32> {
    let outcome = pareto_deals(g, profile, direction)?;
    let mut best: Option<(f64, u32)> = None;
    for &deal in &outcome.deals {
        let mut worst = 0.0f64;
        for ranking in &outcome.rankings {
            for &m in &ranking.maximal {
                worst = worst.max(deal_distance(g, direction, m, deal)?);
            }
        }
        match best {
            Some((b, _)) if worst >= b => {}
            _ => best = Some((worst, deal)),
        }
    }
    Ok(best.expect("pareto set of a finite nonempty domain is nonempty").1)
}

/// Result of the consensus-radius search: the critical distance at which
/// the intersection of the players' preferred-deal neighborhoods becomes
/// nonempty, the smallest strictly admissible radius (open balls), and the
/// witnessing regulations.
#[derive(Debug, Clone, PartialEq)]
pub struct ConsensusRadius {
    pub critical: f64,
    pub radius: f64,
    pub witnesses: Vec<u32>,
}

fn bump(value: f64) -> f64 {
    if value == 0.0 {
        f64::from_bits(1)
    } else {
        f64::from_bits(value.to_bits() + 1)
    }
}

/// The minimum radius r making ∩_n (∪_k B_r(G*_{n_k})) nonempty.
///
/// Candidates are the finitely many realized deal distances; because the
/// balls are strict, the returned radius is the critical distance bumped
/// by one representable step.
pub fn min_consensus_radius(
    g: &GameOfGames,
    profile: &PreferenceProfile,
    direction: Direction,
) -> Result<ConsensusRadius> {
    let mut maximal_sets = Vec::new();
    for player in &profile.players {
        let maximal = player.preorder.maximal_elements();
        if maximal.is_empty() {
            return Err(Error::EmptyMaximalSet(player.id.clone()));
        }
        maximal_sets.push(maximal);
    }
    let mut critical = f64::INFINITY;
    let mut witnesses = Vec::new();
    for &y in g.nodes() {
        let mut needed = 0.0f64;
        for maximal in &maximal_sets {
            let mut nearest = f64::INFINITY;
            for &m in maximal {
                nearest = nearest.min(deal_distance(g, direction, m, y)?);
            }
            needed = needed.max(nearest);
        }
        if needed < critical {
            critical = needed;
            witnesses = vec![y];
        } else if needed == critical {
            witnesses.push(y);
        }
    }
    Ok(ConsensusRadius {
        critical,
        radius: bump(critical),
        witnesses,
    })
}

/// How a signer threshold relates to the graph's step value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignerClass {
    /// Threshold 0: signs nothing.
    Boycotter,
    /// Positive threshold below the graph's step value: never moves off the
    /// preferred deals.
    Stubborn,
    Ordinary,
}

impl SignerClass {
    pub fn as_str(self) -> &'static str {
        match self {
            SignerClass::Boycotter => "boycotter",
            SignerClass::Stubborn => "stubborn",
            SignerClass::Ordinary => "ordinary",
        }
    }
}

pub fn classify_signer(g: &GameOfGames, threshold: f64) -> Result<SignerClass> {
    if threshold == 0.0 {
        return Ok(SignerClass::Boycotter);
    }
    let step = g.step_value()?;
    Ok(if threshold < step {
        SignerClass::Stubborn
    } else {
        SignerClass::Ordinary
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lgame::PunishmentModel;
    use crate::testdata::communal;
    use std::collections::BTreeMap;

    fn graph() -> GameOfGames {
        GameOfGames::build(
            communal::law(),
            communal::society(),
            communal::punishment(),
            Variant::Directed,
        )
    }

    const A: u32 = 0b000;
    const B: u32 = 0b001;
    const C: u32 = 0b010;
    const D: u32 = 0b100;
    const E: u32 = 0b011;
    const F: u32 = 0b101;
    const G: u32 = 0b110;
    const H: u32 = 0b111;

    fn nodes() -> Vec<u32> {
        (0..8).collect()
    }

    #[test]
    fn preorder_closure_and_maximal() {
        let p = Preorder::from_strict_pairs(&nodes(), &[(A, D), (C, E)]).unwrap();
        assert!(p.strict(A, D));
        assert!(p.incomparable(A, C));
        // maximal set excludes exactly A and C
        assert_eq!(p.maximal_elements(), vec![B, E, D, F, G, H]);
    }

    #[test]
    fn preorder_cycle_detection() {
        assert!(Preorder::from_strict_pairs(&nodes(), &[(A, B), (B, C), (C, A)]).is_err());
    }

    #[test]
    fn total_order_has_unique_top() {
        let score: BTreeMap<u32, f64> = nodes().into_iter().map(|n| (n, n as f64)).collect();
        let p = Preorder::from_scores(&nodes(), &score);
        assert_eq!(p.maximal_elements(), vec![H]);
    }

    #[test]
    fn empty_preference_everything_maximal() {
        let p = Preorder::reflexive(&nodes());
        assert_eq!(p.maximal_elements(), nodes());
    }

    #[test]
    fn distance_linear_order_communal_h() {
        let g = graph();
        let ranking = distance_linear_order(&g, "p", &[H], Direction::ToMaximal).unwrap();
        // dist(H, ·): H 0, {F,G} 10/3, E 83/15, D 20/3, {B,C} 133/15, A 61/5
        assert_eq!(ranking.top_class(), &[H]);
        assert_eq!(ranking.classes.len(), 6);
        assert_eq!(ranking.classes[1], vec![F, G]);
        assert_eq!(ranking.classes[5], vec![A]);
        assert!((ranking.min_distance[&E] - 83.0 / 15.0).abs() < 1e-12);
    }

    #[test]
    fn distance_linear_order_is_total_and_transitive() {
        let g = graph();
        let ranking = distance_linear_order(&g, "p", &[H, B], Direction::ToMaximal).unwrap();
        let le = |x: u32, y: u32| ranking.min_distance[&y] <= ranking.min_distance[&x];
        for x in nodes() {
            for y in nodes() {
                assert!(le(x, y) || le(y, x));
                for z in nodes() {
                    if le(x, y) && le(y, z) {
                        assert!(le(x, z));
                    }
                }
            }
        }
    }

    #[test]
    fn empty_maximal_set_rejected() {
        let g = graph();
        assert!(matches!(
            distance_linear_order(&g, "p", &[], Direction::ToMaximal),
            Err(Error::EmptyMaximalSet(_))
        ));
    }

    #[test]
    fn linear_extension_checks() {
        let g = graph();
        let ranking = distance_linear_order(&g, "p", &[H], Direction::ToMaximal).unwrap();
        // empty strict part → vacuously true
        assert!(check_linear_extension(&Preorder::reflexive(&nodes()), &ranking));
        // preference generated from the ranking itself
        let pref = Preorder::from_scores(
            &nodes(),
            &ranking
                .min_distance
                .iter()
                .map(|(&n, &d)| (n, -d))
                .collect(),
        );
        assert!(check_linear_extension(&pref, &ranking));
        // F ≺ G but the ranking ties them
        let pref = Preorder::from_strict_pairs(&nodes(), &[(F, G)]).unwrap();
        assert!(!check_linear_extension(&pref, &ranking));
    }

    #[test]
    fn lsc_of_empty_and_self_generated_preferences() {
        let g = graph();
        let empty = Preorder::reflexive(&nodes());
        assert!(is_tau_lsc(&empty, &g, &empty.maximal_elements(), Direction::ToMaximal).unwrap());

        let ranking = distance_linear_order(&g, "p", &[H], Direction::ToMaximal).unwrap();
        let pref = Preorder::from_scores(
            &nodes(),
            &ranking
                .min_distance
                .iter()
                .map(|(&n, &d)| (n, -d))
                .collect(),
        );
        let maximal = pref.maximal_elements();
        assert_eq!(maximal, vec![H]);
        assert!(is_tau_lsc(&pref, &g, &maximal, Direction::ToMaximal).unwrap());
    }

    #[test]
    fn lsc_fails_when_preference_fights_the_distance() {
        let g = graph();
        // F is strictly closer to H than A is, so preferring A over F while
        // H stays on top breaks semicontinuity of the lower contours.
        let pref = Preorder::from_strict_pairs(&nodes(), &[(F, A), (A, H)]).unwrap();
        let maximal = pref.maximal_elements();
        assert!(maximal.contains(&H));
        assert!(!is_tau_lsc(&pref, &g, &maximal, Direction::ToMaximal).unwrap());
    }

    #[test]
    fn compatibility_checks() {
        let g = graph();
        // antichain: vacuously compatible
        assert!(is_compatible(&Preorder::reflexive(&nodes()), &g, Direction::ToMaximal).unwrap());
        // the distance linear order is compatible with its own distance
        let ranking = distance_linear_order(&g, "p", &[H], Direction::ToMaximal).unwrap();
        let pref = Preorder::from_scores(
            &nodes(),
            &ranking
                .min_distance
                .iter()
                .map(|(&n, &d)| (n, -d))
                .collect(),
        );
        assert!(is_compatible(&pref, &g, Direction::ToMaximal).unwrap());
        // preferring the farther node breaks it
        let pref = Preorder::from_strict_pairs(&nodes(), &[(F, A), (A, H)]).unwrap();
        assert!(!is_compatible(&pref, &g, Direction::ToMaximal).unwrap());
    }

    fn two_party_profile() -> PreferenceProfile {
        let top_h = Preorder::from_strict_pairs(
            &nodes(),
            &[(A, H), (B, H), (C, H), (D, H), (E, H), (F, H), (G, H)],
        )
        .unwrap();
        let top_a = Preorder::from_strict_pairs(
            &nodes(),
            &[(B, A), (C, A), (D, A), (E, A), (F, A), (G, A), (H, A)],
        )
        .unwrap();
        PreferenceProfile {
            players: vec![
                PreferencePlayer {
                    id: "wants-regulation".into(),
                    preorder: top_h,
                    threshold: None,
                },
                PreferencePlayer {
                    id: "wants-none".into(),
                    preorder: top_a,
                    threshold: None,
                },
            ],
        }
    }

    #[test]
    fn single_player_pareto_is_the_top_class() {
        let g = graph();
        let profile = PreferenceProfile {
            players: vec![PreferencePlayer {
                id: "solo".into(),
                preorder: two_party_profile().players[0].preorder.clone(),
                threshold: None,
            }],
        };
        let outcome = pareto_deals(&g, &profile, Direction::ToMaximal).unwrap();
        assert_eq!(outcome.deals, outcome.rankings[0].top_class());
    }

    #[test]
    fn communal_two_party_pareto() {
        let g = graph();
        let outcome = pareto_deals(&g, &two_party_profile(), Direction::ToMaximal).unwrap();
        // the no-regulation party is at distance 0 from everything, so the
        // intersection is driven by the pro-regulation party: top is H
        assert_eq!(outcome.deals, vec![H]);
        // exhaustive Pareto-definition oracle against the linear extensions
        for &deal in &outcome.deals {
            for y in nodes() {
                let improves = outcome.rankings.iter().any(|r| r.strictly_above(y, deal));
                if improves {
                    assert!(outcome.rankings.iter().any(|r| r.strictly_above(deal, y)));
                }
            }
        }
        assert_eq!(
            closest_pareto_deal(&g, &two_party_profile(), Direction::ToMaximal).unwrap(),
            H
        );
    }

    #[test]
    fn consensus_radius_shared_deal() {
        let g = graph();
        let shared = Preorder::from_strict_pairs(&nodes(), &[(A, D)]).unwrap();
        let profile = PreferenceProfile {
            players: vec![
                PreferencePlayer {
                    id: "p1".into(),
                    preorder: shared.clone(),
                    threshold: None,
                },
                PreferencePlayer {
                    id: "p2".into(),
                    preorder: shared,
                    threshold: None,
                },
            ],
        };
        let result = min_consensus_radius(&g, &profile, Direction::ToMaximal).unwrap();
        assert_eq!(result.critical, 0.0);
        assert!(result.radius > 0.0);
        assert!(!result.witnesses.is_empty());
    }

    #[test]
    fn consensus_radius_communal_two_party() {
        let g = graph();
        let result = min_consensus_radius(&g, &two_party_profile(), Direction::ToMaximal).unwrap();
        // player 2's balls around A cost nothing to enter (D(A||·) = 0),
        // so H itself is the witness at critical distance 0
        assert_eq!(result.critical, 0.0);
        assert!(result.witnesses.contains(&H));
    }

    #[test]
    fn signer_classes() {
        let g = graph();
        assert_eq!(classify_signer(&g, 0.0).unwrap(), SignerClass::Boycotter);
        let step = g.step_value().unwrap();
        assert_eq!(classify_signer(&g, step).unwrap(), SignerClass::Ordinary);
        assert_eq!(
            classify_signer(&g, step * 0.999).unwrap(),
            SignerClass::Stubborn
        );
        assert_eq!(classify_signer(&g, 100.0).unwrap(), SignerClass::Ordinary);
    }

    #[test]
    fn maximal_chains_of_a_vee() {
        let p = Preorder::from_strict_pairs(&[0, 1, 2], &[(0, 1), (0, 2)]).unwrap();
        let mut chains = p.maximal_chains();
        chains.sort();
        assert_eq!(chains, vec![vec![0, 1], vec![0, 2]]);
    }

    // entropy-mode graphs also feed the consensus machinery
    #[test]
    fn entropy_mode_graph_supports_rankings() {
        let g = GameOfGames::build(
            communal::law(),
            communal::society(),
            PunishmentModel::entropy(),
            Variant::Directed,
        );
        let ranking = distance_linear_order(&g, "p", &[H], Direction::ToMaximal).unwrap();
        assert_eq!(ranking.min_distance.len(), 8);
    }
}
