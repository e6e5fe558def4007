//! Laws, regulations and their breach-event spaces.
//!
//! A law fixes a finite universe of rules. The position of a rule in the
//! law's rule list is its bit position, so a regulation (any subset of the
//! law) and an event (any subset of a regulation, read as "these rules were
//! breached together") are both canonical bitmasks.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Default cap on the number of rules, keeping the 2^|Ω| regulation space
/// enumerable.
pub const DEFAULT_RULE_CAP: usize = 16;

/// The finite universe of rules together with per-rule punishments.
#[derive(Debug, Clone, PartialEq)]
pub struct Law {
    rules: Vec<String>,
    punishments: Vec<f64>,
    cap: usize,
}

impl Law {
    pub fn new(rules: Vec<(String, f64)>) -> Result<Arc<Law>> {
        Law::with_cap(rules, DEFAULT_RULE_CAP)
    }

    pub fn with_cap(rules: Vec<(String, f64)>, cap: usize) -> Result<Arc<Law>> {
        if rules.is_empty() {
            return Err(Error::InvalidLaw("a law needs at least one rule".into()));
        }
        if rules.len() > cap.min(32) {
            return Err(Error::LawTooLarge {
                rules: rules.len(),
                cap: cap.min(32),
            });
        }
        let mut names = Vec::with_capacity(rules.len());
        let mut punishments = Vec::with_capacity(rules.len());
        for (name, punishment) in rules {
            if name.is_empty() {
                return Err(Error::InvalidLaw("rule identifiers must be nonempty".into()));
            }
            if names.contains(&name) {
                return Err(Error::InvalidLaw(format!("duplicate rule identifier {name}")));
            }
            if !(punishment >= 0.0) {
                return Err(Error::InvalidLaw(format!(
                    "punishment for {name} must be nonnegative, got {punishment}"
                )));
            }
            names.push(name);
            punishments.push(punishment);
        }
        Ok(Arc::new(Law {
            rules: names,
            punishments,
            cap,
        }))
    }

    pub fn rule_count(&self) -> usize {
        self.rules.len()
    }

    pub fn rules(&self) -> &[String] {
        &self.rules
    }

    /// Bit position of a rule identifier, if it belongs to this law.
    pub fn bit(&self, rule: &str) -> Option<usize> {
        self.rules.iter().position(|r| r == rule)
    }

    pub fn rule_name(&self, bit: usize) -> &str {
        &self.rules[bit]
    }

    pub fn rule_punishment(&self, bit: usize) -> f64 {
        self.punishments[bit]
    }

    /// Mask with one bit per rule of the law.
    pub fn full_mask(&self) -> u32 {
        if self.rules.len() == 32 {
            u32::MAX
        } else {
            (1u32 << self.rules.len()) - 1
        }
    }

    /// Number of regulations definable under this law.
    pub fn regulation_count(&self) -> usize {
        1usize << self.rules.len()
    }

    /// Sum of per-rule punishments over the rules present in `mask`.
    pub fn additive_punishment(&self, mask: u32) -> f64 {
        (0..self.rules.len())
            .filter(|b| mask & (1 << b) != 0)
            .map(|b| self.punishments[b])
            .sum()
    }

    /// Human-readable member list for a bitmask, e.g. `{tax,comp}`.
    pub fn label(&self, mask: u32) -> String {
        let members: Vec<&str> = (0..self.rules.len())
            .filter(|b| mask & (1 << b) != 0)
            .map(|b| self.rules[b].as_str())
            .collect();
        format!("{{{}}}", members.join(","))
    }
}

/// A subset of a law's rules; doubles as the sample space of its l-game.
#[derive(Debug, Clone)]
pub struct Regulation {
    law: Arc<Law>,
    mask: u32,
}

impl Regulation {
    pub fn new(law: Arc<Law>, mask: u32) -> Regulation {
        debug_assert_eq!(mask & !law.full_mask(), 0);
        Regulation { law, mask }
    }

    /// Builds a regulation from rule names; the empty list is the empty
    /// regulation `{∅}`.
    pub fn from_members(law: Arc<Law>, members: &[impl AsRef<str>]) -> Result<Regulation> {
        let mut mask = 0u32;
        for member in members {
            let name = member.as_ref();
            let bit = law.bit(name).ok_or_else(|| Error::RuleNotInRegulation {
                rule: name.to_string(),
                regulation: law.label(law.full_mask()),
            })?;
            mask |= 1 << bit;
        }
        Ok(Regulation { law, mask })
    }

    pub fn law(&self) -> &Arc<Law> {
        &self.law
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn contains_rule(&self, bit: usize) -> bool {
        self.mask & (1 << bit) != 0
    }

    pub fn member_count(&self) -> u32 {
        self.mask.count_ones()
    }

    pub fn is_subset_of(&self, other: &Regulation) -> bool {
        self.mask & !other.mask == 0
    }

    pub fn same_law(&self, other: &Regulation) -> bool {
        Arc::ptr_eq(&self.law, &other.law) || *self.law == *other.law
    }

    /// All events of this regulation: every subset of its members, the empty
    /// event first.
    pub fn events(&self) -> SubsetIter {
        SubsetIter::new(self.mask)
    }

    pub fn event_count(&self) -> usize {
        1usize << self.mask.count_ones()
    }

    pub fn label(&self) -> String {
        self.law.label(self.mask)
    }
}

impl fmt::Display for Regulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Iterates the subsets of a bitmask in increasing numeric order.
pub struct SubsetIter {
    mask: u32,
    next: Option<u32>,
}

impl SubsetIter {
    pub fn new(mask: u32) -> SubsetIter {
        SubsetIter {
            mask,
            next: Some(0),
        }
    }
}

impl Iterator for SubsetIter {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        let current = self.next?;
        self.next = if current == self.mask {
            None
        } else {
            Some((current | !self.mask).wrapping_add(1) & self.mask)
        };
        Some(current)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy_law() -> Arc<Law> {
        Law::new(vec![
            ("tax".into(), 100.0),
            ("raffle".into(), 100.0),
            ("comp".into(), 166.0),
        ])
        .unwrap()
    }

    #[test]
    fn rejects_duplicate_and_empty_rules() {
        assert!(Law::new(vec![("a".into(), 1.0), ("a".into(), 2.0)]).is_err());
        assert!(Law::new(vec![("".into(), 1.0)]).is_err());
        assert!(Law::new(vec![]).is_err());
        assert!(Law::new(vec![("a".into(), -1.0)]).is_err());
    }

    #[test]
    fn cap_is_enforced() {
        let rules: Vec<(String, f64)> = (0..17).map(|i| (format!("r{i}"), 1.0)).collect();
        assert!(matches!(
            Law::new(rules),
            Err(Error::LawTooLarge { rules: 17, cap: 16 })
        ));
    }

    #[test]
    fn subsets_enumerate_the_whole_event_space() {
        let subsets: Vec<u32> = SubsetIter::new(0b101).collect();
        assert_eq!(subsets, vec![0b000, 0b001, 0b100, 0b101]);
        assert_eq!(SubsetIter::new(0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(SubsetIter::new(0b111).count(), 8);
    }

    #[test]
    fn regulation_from_members() {
        let law = toy_law();
        let reg = Regulation::from_members(law.clone(), &["comp", "tax"]).unwrap();
        assert_eq!(reg.mask(), 0b101);
        assert_eq!(reg.label(), "{tax,comp}");
        assert_eq!(reg.event_count(), 4);
        let empty = Regulation::from_members(law.clone(), &[] as &[&str]).unwrap();
        assert_eq!(empty.mask(), 0);
        assert_eq!(empty.event_count(), 1);
        assert!(Regulation::from_members(law, &["nope"]).is_err());
    }

    #[test]
    fn additive_punishment_sums_member_rules() {
        let law = toy_law();
        assert_eq!(law.additive_punishment(0b000), 0.0);
        assert_eq!(law.additive_punishment(0b101), 266.0);
        assert_eq!(law.additive_punishment(0b111), 366.0);
    }
}
