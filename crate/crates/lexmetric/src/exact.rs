//! Exact-rational re-evaluation of the additive-punishment premetric, used
//! for reporting ("6 decimals plus the exact fraction") and as an
//! independent oracle against the double-precision pipeline.

use std::collections::BTreeMap;

use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::divergence::Variant;
use crate::law::SubsetIter;

type Q = Ratio<i128>;

/// An additive-punishment instance with fully rational data: per-rule
/// punishments, mean probability tables keyed by regulation then event,
/// and per-event overrides.
#[derive(Debug, Clone)]
pub struct ExactInstance {
    punishments: Vec<Q>,
    tables: BTreeMap<u32, BTreeMap<u32, Q>>,
    overrides: BTreeMap<u32, Q>,
}

impl ExactInstance {
    pub fn new(
        punishments: Vec<Q>,
        tables: BTreeMap<u32, BTreeMap<u32, Q>>,
        overrides: BTreeMap<u32, Q>,
    ) -> ExactInstance {
        ExactInstance {
            punishments,
            tables,
            overrides,
        }
    }

    pub fn has_table(&self, regulation: u32) -> bool {
        self.tables.contains_key(&regulation)
    }

    fn p(&self, regulation: u32, event: u32) -> Option<Q> {
        let table = self.tables.get(&regulation)?;
        Some(table.get(&event).copied().unwrap_or_else(Q::zero))
    }

    /// g(x) for the game of `regulation`: per-rule sums over the rules the
    /// regulation contains, overrides applying inside its event space only.
    pub fn punishment_of(&self, regulation: u32, event: u32) -> Q {
        if event & !regulation == 0 {
            if let Some(&v) = self.overrides.get(&event) {
                return v;
            }
        }
        let inside = event & regulation;
        (0..self.punishments.len())
            .filter(|b| inside & (1 << b) != 0)
            .map(|b| self.punishments[b])
            .sum()
    }

    /// Σ p(x)·g(x) over the event space of `regulation`.
    pub fn severity(&self, regulation: u32) -> Option<Q> {
        self.premetric(regulation, 0)
    }

    /// D(target||source) = Σ over target's events of
    /// p_target(x)·|g_target(x) − g_source(x)|.
    pub fn premetric(&self, target: u32, source: u32) -> Option<Q> {
        if !self.has_table(target) {
            return None;
        }
        let mut total = Q::zero();
        for event in SubsetIter::new(target) {
            let p = self.p(target, event)?;
            if p.is_zero() {
                continue;
            }
            let diff = self.punishment_of(target, event) - self.punishment_of(source, event);
            total += p * diff.abs();
        }
        Some(total)
    }

    pub fn distance(&self, a: u32, b: u32, variant: Variant) -> Option<Q> {
        match variant {
            Variant::Directed => self.premetric(a, b),
            Variant::Plus => Some(self.premetric(a, b)? + self.premetric(b, a)?),
            Variant::Max => {
                let ab = self.premetric(a, b)?;
                let ba = self.premetric(b, a)?;
                Some(if ab >= ba { ab } else { ba })
            }
        }
    }

    /// Edge weight from → to, i.e. D(to||from).
    pub fn weight(&self, from: u32, to: u32, variant: Variant) -> Option<Q> {
        if from == to {
            return Some(Q::zero());
        }
        self.distance(to, from, variant)
    }

    /// Total length of a node sequence.
    pub fn path_length(&self, nodes: &[u32], variant: Variant) -> Option<Q> {
        let mut total = Q::zero();
        for pair in nodes.windows(2) {
            total += self.weight(pair[0], pair[1], variant)?;
        }
        Some(total)
    }
}

/// Reduced textual form: "83/15", or plain "5" for integers.
pub fn format_ratio(r: Q) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn ratio_to_f64(r: Q) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}
