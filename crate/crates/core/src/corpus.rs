//! Bundled inventory-demand corpus and the state spaces used with it.
//!
//! Two 20-period demand series are provided: an all-crisp one (`DEMAND_CRISP`) and a
//! mixed crisp/interval one (`DEMAND_INTERVAL`). `DEMAND_INTERVAL` carries the values the
//! reference mass table was computed from. Periods 12 and 16 differ from the
//! reference data listing ([175,185] and 218 instead of 171 and [215,220]);
//! the listing itself is kept in [`DEMAND_INTERVAL_LISTED`].
//!
//! The anchors in [`INVENTORY_ANCHORS`] shift the lower bounds of `{L}` and
//! `{M}` by one (101 and 151) relative to the listed correspondence
//! table. Only the shifted bounds reproduce the reference distances.

use crate::classical_dtmc::BinSpec;
use crate::evidence::{Anchor, AnchoredStateSpace, Frame};
use crate::interval::{DistanceVariant, Interval};
use crate::scalar::Scalar;

pub const LMH: [&str; 3] = ["L", "M", "H"];

/// Crisp demand, periods 1..=20.
pub const DEMAND_CRISP: [i64; 20] = [
    143, 152, 161, 139, 137, 174, 142, 141, 162, 180, 164, 171, 206, 193, 207, 218, 229, 225, 204,
    200,
];

/// Mixed crisp/interval demand, periods 1..=20, as `(lo, hi)`.
pub const DEMAND_INTERVAL: [(i64, i64); 20] = [
    (143, 143),
    (152, 152),
    (157, 162),
    (139, 139),
    (137, 137),
    (165, 180),
    (142, 142),
    (141, 141),
    (162, 162),
    (180, 180),
    (164, 164),
    (175, 185),
    (204, 209),
    (193, 193),
    (207, 207),
    (218, 218),
    (229, 229),
    (225, 225),
    (204, 204),
    (200, 200),
];

pub const DEMAND_INTERVAL_LISTED: [(i64, i64); 20] = [
    (143, 143),
    (152, 152),
    (157, 162),
    (139, 139),
    (137, 137),
    (165, 180),
    (142, 142),
    (141, 141),
    (162, 162),
    (180, 180),
    (164, 164),
    (171, 171),
    (204, 209),
    (193, 193),
    (207, 207),
    (215, 220),
    (229, 229),
    (225, 225),
    (204, 204),
    (200, 200),
];

/// `(members, lo, hi)` in matrix order.
pub const INVENTORY_ANCHORS: [(&str, i64, i64); 5] = [
    ("L", 101, 150),
    ("L,M", 135, 165),
    ("M", 151, 200),
    ("M,H", 185, 215),
    ("H", 201, 250),
];

/// The correspondence table as listed.
pub const LISTED_ANCHORS: [(&str, i64, i64); 5] = [
    ("L", 100, 150),
    ("L,M", 135, 165),
    ("M", 150, 200),
    ("M,H", 185, 215),
    ("H", 201, 250),
];

pub const INVENTORY_BIN_EDGES: [i64; 4] = [100, 150, 200, 250];

fn intervals<T: Scalar>(raw: &[(i64, i64)]) -> Vec<Interval<T>> {
    raw.iter()
        .map(|&(lo, hi)| Interval::new(T::from_int(lo), T::from_int(hi)).expect("corpus interval"))
        .collect()
}

pub fn crisp_demand_series<T: Scalar>() -> Vec<Interval<T>> {
    DEMAND_CRISP
        .iter()
        .map(|&v| Interval::point(T::from_int(v)))
        .collect()
}

pub fn interval_demand_series<T: Scalar>() -> Vec<Interval<T>> {
    intervals(&DEMAND_INTERVAL)
}

pub fn listed_interval_demand_series<T: Scalar>() -> Vec<Interval<T>> {
    intervals(&DEMAND_INTERVAL_LISTED)
}

pub fn lmh_frame() -> Frame {
    Frame::new(LMH).expect("static frame")
}

pub fn space_from_table<T: Scalar>(
    frame: Frame,
    table: &[(&str, i64, i64)],
    variant: DistanceVariant,
) -> AnchoredStateSpace<T> {
    let anchors = table
        .iter()
        .map(|&(members, lo, hi)| Anchor {
            proposition: frame
                .parse_proposition(members)
                .expect("static proposition"),
            interval: Interval::new(T::from_int(lo), T::from_int(hi)).expect("static interval"),
        })
        .collect();
    AnchoredStateSpace::new(frame, anchors, variant).expect("static state space")
}

/// L/M/H frame, the five shifted anchors, coupled distance.
pub fn inventory_space<T: Scalar>() -> AnchoredStateSpace<T> {
    space_from_table(lmh_frame(), &INVENTORY_ANCHORS, DistanceVariant::Coupled)
}

pub fn listed_anchor_space<T: Scalar>() -> AnchoredStateSpace<T> {
    space_from_table(lmh_frame(), &LISTED_ANCHORS, DistanceVariant::Coupled)
}

/// Two states `A = [0,5]`, `B = [5,10]` with the printed distance.
pub fn two_state_space<T: Scalar>() -> AnchoredStateSpace<T> {
    space_from_table(
        Frame::new(["A", "B"]).expect("static frame"),
        &[("A", 0, 5), ("B", 5, 10)],
        DistanceVariant::Printed,
    )
}

/// `[100,150]`, `(150,200]`, `(200,250]` labelled L, M, H.
pub fn inventory_bins<T: Scalar>() -> BinSpec<T> {
    BinSpec::new(
        INVENTORY_BIN_EDGES
            .iter()
            .map(|&e| T::from_int(e))
            .collect(),
        lmh_frame(),
    )
    .expect("static bins")
}

/// Published figures, four decimals, for regression checks.
pub mod reported {
    /// Distances (not squared) from period 6, `[165,180]`, to each anchor.
    pub const PERIOD6_DISTANCES: [f64; 5] = [48.0139, 22.9129, 10.2632, 27.8388, 53.9011];

    pub const PERIOD6_MASSES: [f64; 5] = [0.0324, 0.1422, 0.7033, 0.0964, 0.0257];

    pub const MASS_TABLE: [[f64; 5]; 20] = [
        [0.1758, 0.7137, 0.0709, 0.0268, 0.0127],
        [0.0713, 0.8047, 0.0855, 0.0270, 0.0115],
        [0.0694, 0.6379, 0.2186, 0.0540, 0.0202],
        [0.2988, 0.5814, 0.0747, 0.0302, 0.0149],
        [0.3728, 0.5072, 0.0738, 0.0307, 0.0155],
        [0.0324, 0.1422, 0.7033, 0.0964, 0.0257],
        [0.2023, 0.6841, 0.0724, 0.0278, 0.0134],
        [0.2319, 0.6518, 0.0736, 0.0288, 0.0139],
        [0.0750, 0.5224, 0.2998, 0.0756, 0.0272],
        [0.0375, 0.1220, 0.5379, 0.2501, 0.0524],
        [0.0720, 0.4456, 0.3636, 0.0883, 0.0304],
        [0.0296, 0.0981, 0.6195, 0.2111, 0.0417],
        [0.0108, 0.0224, 0.0648, 0.7630, 0.1390],
        [0.0183, 0.0452, 0.1715, 0.6959, 0.0692],
        [0.0131, 0.0270, 0.0753, 0.7191, 0.1654],
        [0.0158, 0.0295, 0.0691, 0.3467, 0.5389],
        [0.0144, 0.0249, 0.0514, 0.1716, 0.7377],
        [0.0141, 0.0249, 0.0535, 0.2025, 0.7050],
        [0.0113, 0.0241, 0.0712, 0.7845, 0.1088],
        [0.0108, 0.0240, 0.0773, 0.8151, 0.0728],
    ];

    pub const TRANSITION_BELIEF_MATRIX: [[f64; 5]; 5] = [
        [0.1369, 0.4208, 0.2914, 0.1081, 0.0427],
        [0.1329, 0.4712, 0.2559, 0.1046, 0.0353],
        [0.0923, 0.3188, 0.2250, 0.2769, 0.0870],
        [0.0299, 0.0938, 0.1271, 0.5199, 0.2292],
        [0.0228, 0.0611, 0.0895, 0.4165, 0.4100],
    ];

    pub const NEXT_MASSES: [f64; 5] = [0.0379, 0.1214, 0.1368, 0.4792, 0.2247];

    pub const NEXT_BETP: [f64; 3] = [0.0986, 0.4371, 0.4643];

    /// `(final value, predicted state, probability)`.
    pub const SWEEP: [(i64, &str, f64); 10] = [
        (193, "M", 0.4577),
        (194, "M", 0.4511),
        (195, "M", 0.4479),
        (196, "H", 0.4454),
        (197, "H", 0.4516),
        (198, "H", 0.4568),
        (199, "H", 0.4609),
        (200, "H", 0.4643),
        (201, "H", 0.4670),
        (202, "H", 0.4692),
    ];

    pub const DTMC_COUNTS: [[u64; 3]; 3] = [[2, 3, 0], [2, 4, 2], [0, 2, 4]];
}
