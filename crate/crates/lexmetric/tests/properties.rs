//! Property-based invariants over randomized instances.

use std::collections::BTreeMap;
use std::sync::Arc;

use proptest::prelude::*;

use lexmetric::divergence::{
    kl_social_divergence, lgame_premetric, symmetrize_max, symmetrize_plus,
};
use lexmetric::law::{Law, Regulation, SubsetIter};
use lexmetric::lgame::{LGame, ProbabilityModel, PunishmentModel};

/// Up to three rules with nonnegative punishments.
fn arb_law() -> impl Strategy<Value = Arc<Law>> {
    prop::collection::vec(0.0f64..200.0, 1..=3).prop_map(|punishments| {
        let rules = punishments
            .into_iter()
            .enumerate()
            .map(|(i, p)| (format!("r{i}"), p))
            .collect();
        Law::new(rules).unwrap()
    })
}

/// A normalized distribution over the event space of `mask`.
fn arb_model(law: Arc<Law>, mask: u32) -> impl Strategy<Value = ProbabilityModel> {
    let events: Vec<u32> = SubsetIter::new(mask).collect();
    let n = events.len();
    prop::collection::vec(0.0f64..1.0, n).prop_map(move |raw| {
        let total: f64 = raw.iter().sum();
        let mass: BTreeMap<u32, f64> = if total == 0.0 {
            events.iter().map(|&e| (e, 1.0 / n as f64)).collect()
        } else {
            events.iter().zip(&raw).map(|(&e, &w)| (e, w / total)).collect()
        };
        ProbabilityModel::new(Regulation::new(law.clone(), mask), mass).unwrap()
    })
}

fn arb_game() -> impl Strategy<Value = (LGame, LGame)> {
    arb_law().prop_flat_map(|law| {
        let full = law.full_mask();
        (0..=full, 0..=full).prop_flat_map(move |(a, b)| {
            let law2 = law.clone();
            (arb_model(law.clone(), a), arb_model(law2, b)).prop_map(|(ma, mb)| {
                let punish = || Some(PunishmentModel::additive(BTreeMap::new()).unwrap());
                (LGame::new(ma, punish()), LGame::new(mb, punish()))
            })
        })
    })
}

proptest! {
    #[test]
    fn premetric_axioms((a, b) in arb_game()) {
        prop_assert_eq!(lgame_premetric(&a, &a).unwrap(), 0.0);
        prop_assert_eq!(lgame_premetric(&b, &b).unwrap(), 0.0);
        let ab = lgame_premetric(&a, &b).unwrap();
        let ba = lgame_premetric(&b, &a).unwrap();
        prop_assert!(ab >= 0.0 && ba >= 0.0);
        let plus = symmetrize_plus(&a, &b).unwrap();
        let max = symmetrize_max(&a, &b).unwrap();
        prop_assert_eq!(plus, symmetrize_plus(&b, &a).unwrap());
        prop_assert_eq!(max, symmetrize_max(&b, &a).unwrap());
        // the max symmetrization never exceeds the sum
        prop_assert!(max <= plus + 1e-12);
        prop_assert!(max >= ab.max(ba) - 1e-12);
    }

    #[test]
    fn kl_nonnegative_on_shared_regulations((a, b) in arb_game()) {
        if a.regulation().mask() == b.regulation().mask() {
            let p = a.probability();
            let q = b.probability();
            match kl_social_divergence(p, q) {
                Ok(v) => prop_assert!(v >= -1e-12),
                Err(lexmetric::Error::AbsoluteContinuityViolated { .. }) => {}
                Err(e) => return Err(TestCaseError::fail(format!("unexpected {e}"))),
            }
        }
    }

    #[test]
    fn severity_is_premetric_from_scratch((a, _) in arb_game()) {
        let law = a.law().clone();
        let empty_model = ProbabilityModel::new(
            Regulation::new(law, 0),
            [(0u32, 1.0)].into_iter().collect(),
        ).unwrap();
        let empty = LGame::new(
            empty_model,
            Some(PunishmentModel::additive(BTreeMap::new()).unwrap()),
        );
        let severity = a.expected_severity().unwrap();
        prop_assert!((lgame_premetric(&a, &empty).unwrap() - severity).abs() < 1e-12);
        prop_assert_eq!(lgame_premetric(&empty, &a).unwrap(), 0.0);
    }

    #[test]
    fn subset_iterator_is_complete_and_sorted(mask in 0u32..256) {
        let subsets: Vec<u32> = SubsetIter::new(mask).collect();
        prop_assert_eq!(subsets.len(), 1usize << mask.count_ones());
        prop_assert!(subsets.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(subsets.iter().all(|s| s & !mask == 0));
    }
}
