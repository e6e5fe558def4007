//! The Game of games: the complete weighted directed graph over all
//! regulations of a law under one society, with shortest paths, monotone
//! (one-rule-per-step) paths, balls, the subgame preorder and r-step
//! classification.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::{Arc, Mutex};

use itertools::Itertools;

use crate::divergence::{distance, Variant};
use crate::error::{Error, Result};
use crate::law::{Law, Regulation};
use crate::lgame::{LGame, PunishmentModel, Society};

/// The complete directed graph whose nodes are regulations and whose edge
/// (u,v) weighs the social resistance D(v||u) of moving from u to v, under
/// the chosen distance variant.
///
/// Node l-games and edge weights are computed lazily and memoized; the
/// memo tables are internally synchronized so shared readers are safe.
pub struct GameOfGames {
    law: Arc<Law>,
    society: Society,
    punishment: PunishmentModel,
    variant: Variant,
    nodes: Vec<u32>,
    games: Mutex<HashMap<u32, Arc<LGame>>>,
    weights: Mutex<HashMap<(u32, u32), f64>>,
    overrides: HashMap<(u32, u32), f64>,
}

impl GameOfGames {
    pub fn build(
        law: Arc<Law>,
        society: Society,
        punishment: PunishmentModel,
        variant: Variant,
    ) -> GameOfGames {
        let nodes: Vec<u32> = (0..=law.full_mask()).collect();
        GameOfGames {
            law,
            society,
            punishment,
            variant,
            nodes,
            games: Mutex::new(HashMap::new()),
            weights: Mutex::new(HashMap::new()),
            overrides: HashMap::new(),
        }
    }

    /// Restricts the graph to an allowlist of node bitmasks, for laws where
    /// some rule combinations make no sense.
    pub fn with_allowlist(mut self, allow: &[u32]) -> GameOfGames {
        let mut nodes: Vec<u32> = allow.to_vec();
        nodes.sort_unstable();
        nodes.dedup();
        self.nodes = nodes;
        self
    }

    /// Installs verbatim edge weights that bypass the distance computation,
    /// e.g. to load externally published figures for comparison.
    pub fn with_edge_overrides(mut self, overrides: HashMap<(u32, u32), f64>) -> GameOfGames {
        self.overrides = overrides;
        self
    }

    pub fn law(&self) -> &Arc<Law> {
        &self.law
    }

    pub fn society(&self) -> &Society {
        &self.society
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn nodes(&self) -> &[u32] {
        &self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn contains(&self, mask: u32) -> bool {
        self.nodes.binary_search(&mask).is_ok()
    }

    /// The realized l-game of a node.
    pub fn game(&self, mask: u32) -> Result<Arc<LGame>> {
        if let Some(game) = self.games.lock().unwrap().get(&mask) {
            return Ok(game.clone());
        }
        let regulation = Regulation::new(self.law.clone(), mask);
        let probability = self.society.mean_probability(&regulation)?;
        let game = Arc::new(LGame::new(probability, Some(self.punishment.clone())));
        self.games.lock().unwrap().insert(mask, game.clone());
        Ok(game)
    }

    /// Weight of the edge u → v: the resistance D(v||u) of moving from u
    /// to v under the configured variant.
    pub fn weight(&self, from: u32, to: u32) -> Result<f64> {
        if from == to {
            return Ok(0.0);
        }
        if let Some(&w) = self.overrides.get(&(from, to)) {
            return Ok(w);
        }
        if let Some(&w) = self.weights.lock().unwrap().get(&(from, to)) {
            return Ok(w);
        }
        let target = self.game(to)?;
        let source = self.game(from)?;
        let w = distance(&target, &source, self.variant)?;
        self.weights.lock().unwrap().insert((from, to), w);
        Ok(w)
    }

    /// Two-argument distance D(x,y): the resistance of moving from y to x.
    /// Symmetric variants make the argument order irrelevant.
    pub fn dist(&self, x: u32, y: u32) -> Result<f64> {
        self.weight(y, x)
    }

    /// Minimal-length path under nonnegative weights, ties broken by the
    /// lexicographically smallest node-bitmask sequence.
    pub fn shortest_path(&self, from: u32, to: u32) -> Result<LegalPath> {
        #[derive(Clone)]
        struct Best {
            length: f64,
            path: Vec<u32>,
        }
        let mut best: HashMap<u32, Best> = HashMap::new();
        best.insert(
            from,
            Best {
                length: 0.0,
                path: vec![from],
            },
        );
        let mut visited: Vec<u32> = Vec::new();
        loop {
            let next = self
                .nodes
                .iter()
                .filter(|n| !visited.contains(n) && best.contains_key(n))
                .min_by(|a, b| {
                    let ba = &best[a];
                    let bb = &best[b];
                    ba.length
                        .partial_cmp(&bb.length)
                        .unwrap()
                        .then_with(|| ba.path.cmp(&bb.path))
                })
                .copied();
            let Some(u) = next else { break };
            visited.push(u);
            if u == to {
                break;
            }
            let (u_len, u_path) = {
                let b = &best[&u];
                (b.length, b.path.clone())
            };
            for &v in &self.nodes {
                if v == u || visited.contains(&v) {
                    continue;
                }
                let w = self.weight(u, v)?;
                let length = u_len + w;
                let mut path = u_path.clone();
                path.push(v);
                match best.get(&v) {
                    Some(cur) if length > cur.length => {}
                    Some(cur) if length == cur.length && path >= cur.path => {}
                    _ => {
                        best.insert(v, Best { length, path });
                    }
                }
            }
        }
        let found = best.remove(&to).expect("complete graph always has a path");
        Ok(self.make_path(found.path)?)
    }

    /// All monotone hypercube paths from `from` to `to` (each step adds one
    /// rule), ranked by length, first `k` returned.
    pub fn k_shortest_incremental_paths(
        &self,
        from: u32,
        to: u32,
        k: usize,
    ) -> Result<Vec<LegalPath>> {
        if from & !to != 0 {
            return Err(Error::NotMonotone {
                from: self.law.label(from),
                to: self.law.label(to),
            });
        }
        let missing: Vec<u32> = (0..self.law.rule_count() as u32)
            .map(|b| 1u32 << b)
            .filter(|bit| to & bit != 0 && from & bit == 0)
            .collect();
        let m = missing.len();
        let mut paths = Vec::new();
        for perm in missing.into_iter().permutations(m) {
            let mut nodes = vec![from];
            let mut current = from;
            for bit in perm {
                current |= bit;
                nodes.push(current);
            }
            paths.push(self.make_path(nodes)?);
        }
        if paths.is_empty() {
            paths.push(self.make_path(vec![from])?);
        }
        paths.sort_by(|a, b| {
            a.length
                .partial_cmp(&b.length)
                .unwrap()
                .then_with(|| a.nodes.cmp(&b.nodes))
        });
        paths.truncate(k);
        Ok(paths)
    }

    /// Length of the shortest path; satisfies the triangle inequality by
    /// construction.
    pub fn path_distance(&self, u: u32, v: u32) -> Result<f64> {
        Ok(self.shortest_path(u, v)?.length)
    }

    /// Strict open ball of edge weights around a node: nodes reachable from
    /// the center at resistance strictly below r. B_0 is empty.
    pub fn ball(&self, center: u32, r: f64) -> Result<Vec<u32>> {
        let mut members = Vec::new();
        for &v in &self.nodes {
            if self.weight(center, v)? < r {
                members.push(v);
            }
        }
        Ok(members)
    }

    /// Subgame preorder: the game of `sub` is an l-subgame of the game of
    /// `sup` when sup's regulation is contained in sub's and titere status
    /// carries down to the smaller regulation.
    pub fn is_subgame(&self, sub: u32, sup: u32) -> Result<bool> {
        if sup & !sub != 0 {
            return Ok(false);
        }
        let sub_titere = self
            .society
            .titere_mask(&Regulation::new(self.law.clone(), sub))?;
        let sup_titere = self
            .society
            .titere_mask(&Regulation::new(self.law.clone(), sup))?;
        Ok((sub_titere & sup) & !sup_titere == 0)
    }

    /// True iff every distinct ordered pair of nodes is at weight ≥ r.
    pub fn is_r_step(&self, r: f64) -> Result<bool> {
        for &u in &self.nodes {
            for &v in &self.nodes {
                if u != v && self.weight(u, v)? < r {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The graph's step value: the minimum strictly positive weight over
    /// distinct ordered pairs (0 when every pair is at distance 0).
    pub fn step_value(&self) -> Result<f64> {
        let mut min_positive = f64::INFINITY;
        for &u in &self.nodes {
            for &v in &self.nodes {
                if u == v {
                    continue;
                }
                let w = self.weight(u, v)?;
                if w > 0.0 && w < min_positive {
                    min_positive = w;
                }
            }
        }
        Ok(if min_positive.is_finite() {
            min_positive
        } else {
            0.0
        })
    }

    /// DOT export: one node per regulation labeled with its member set,
    /// every directed edge annotated with its weight to six decimal places.
    /// Nodes and edges are ordered by bitmask.
    pub fn to_dot(&self) -> Result<String> {
        let mut out = String::from("digraph lexmetric {\n");
        for &mask in &self.nodes {
            writeln!(out, "  n{} [label=\"{}\"];", mask, self.law.label(mask)).unwrap();
        }
        for &u in &self.nodes {
            for &v in &self.nodes {
                if u == v {
                    continue;
                }
                let w = self.weight(u, v)?;
                writeln!(out, "  n{u} -> n{v} [weight=\"{w:.6}\"];").unwrap();
            }
        }
        out.push_str("}\n");
        Ok(out)
    }

    fn make_path(&self, nodes: Vec<u32>) -> Result<LegalPath> {
        let mut length = 0.0;
        for pair in nodes.windows(2) {
            length += self.weight(pair[0], pair[1])?;
        }
        let incremental = nodes.len() > 1
            && nodes.windows(2).all(|p| {
                p[0] & !p[1] == 0 && (p[1] & !p[0]).count_ones() == 1
            });
        Ok(LegalPath {
            nodes,
            length,
            incremental,
        })
    }
}

/// An ordered sequence of regulations with its total traversal resistance.
#[derive(Debug, Clone, PartialEq)]
pub struct LegalPath {
    pub nodes: Vec<u32>,
    pub length: f64,
    /// Every step adds exactly one rule.
    pub incremental: bool,
}

impl LegalPath {
    pub fn labels(&self, law: &Law) -> Vec<String> {
        self.nodes.iter().map(|&m| law.label(m)).collect()
    }

    /// The largest single-step weight along the path.
    pub fn max_step(&self, graph: &GameOfGames) -> Result<f64> {
        let mut max = 0.0f64;
        for pair in self.nodes.windows(2) {
            max = max.max(graph.weight(pair[0], pair[1])?);
        }
        Ok(max)
    }
}
