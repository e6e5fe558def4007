//! Built-in example instances, usable from tests and the reproduction
//! harness.

pub mod communal {
    //! The communal herdsmen instance: three rules (tax, raffle,
    //! compensation), eight regulations, and the society's mean breach
    //! table for each of them.

    use std::collections::BTreeMap;
    use std::sync::Arc;

    use crate::law::{Law, Regulation};
    use crate::lgame::{LGame, PunishmentModel, Society};

    /// Rule order fixes bit positions: tax = bit 0, raffle = 1, comp = 2.
    pub fn law() -> Arc<Law> {
        Law::new(vec![
            ("tax".into(), 100.0),
            ("raffle".into(), 100.0),
            ("comp".into(), 166.0),
        ])
        .unwrap()
    }

    /// Mean breach table per regulation, keyed by regulation bitmask, then
    /// event bitmask.
    pub fn tables() -> BTreeMap<u32, BTreeMap<u32, f64>> {
        let f = |n: f64, d: f64| n / d;
        let rows: Vec<(u32, Vec<(u32, f64)>)> = vec![
            (0b000, vec![(0b000, 1.0)]),
            (0b001, vec![(0b000, f(22.0, 30.0)), (0b001, f(8.0, 30.0))]),
            (0b010, vec![(0b000, f(9.0, 10.0)), (0b010, f(1.0, 10.0))]),
            (0b100, vec![(0b000, f(29.0, 30.0)), (0b100, f(1.0, 30.0))]),
            (
                0b011,
                vec![
                    (0b000, f(82.0, 90.0)),
                    (0b001, f(5.0, 90.0)),
                    (0b010, 0.0),
                    (0b011, f(3.0, 90.0)),
                ],
            ),
            (
                0b101,
                vec![
                    (0b000, f(28.0, 30.0)),
                    (0b001, 0.0),
                    (0b100, 0.0),
                    (0b101, f(2.0, 30.0)),
                ],
            ),
            (
                0b110,
                vec![
                    (0b000, f(87.0, 90.0)),
                    (0b010, 0.0),
                    (0b100, f(2.0, 90.0)),
                    (0b110, f(1.0, 90.0)),
                ],
            ),
            (
                0b111,
                vec![
                    (0b000, f(29.0, 30.0)),
                    (0b001, 0.0),
                    (0b010, 0.0),
                    (0b100, 0.0),
                    (0b011, 0.0),
                    (0b101, 0.0),
                    (0b110, 0.0),
                    (0b111, f(1.0, 30.0)),
                ],
            ),
        ];
        rows.into_iter()
            .map(|(mask, row)| (mask, row.into_iter().collect()))
            .collect()
    }

    pub fn society() -> Society {
        Society::new("communal".into(), vec![], tables(), None).unwrap()
    }

    pub fn punishment() -> PunishmentModel {
        PunishmentModel::additive(BTreeMap::new()).unwrap()
    }

    /// The punished l-game of one regulation, by bitmask.
    pub fn game(mask: u32) -> LGame {
        let regulation = Regulation::new(law(), mask);
        let probability = society().mean_probability(&regulation).unwrap();
        LGame::new(probability, Some(punishment()))
    }
}
