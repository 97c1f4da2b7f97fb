//! Conductor-ceiling tables: for parity `a` and height column `T`, every
//! primitive character with conductor at most `ceiling(T, a, k)` has at most
//! `k` zeros of height up to `T`. The companion table holds the disk
//! center/radius pairs, scaled by 2^11, that certify the analytic entries.

use crate::interval::Interval;

/// The three heights the precomputed tables cover.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HeightColumn {
    FiveSevenths,
    One,
    Two,
}

impl HeightColumn {
    pub const ALL: [HeightColumn; 3] = [
        HeightColumn::FiveSevenths,
        HeightColumn::One,
        HeightColumn::Two,
    ];

    pub fn t_value(self) -> Interval {
        match self {
            HeightColumn::FiveSevenths => Interval::from_ratio(5, 7),
            HeightColumn::One => Interval::point(1.0),
            HeightColumn::Two => Interval::point(2.0),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            HeightColumn::FiveSevenths => "5/7",
            HeightColumn::One => "1",
            HeightColumn::Two => "2",
        }
    }

    /// Recognize an exact enclosure of one of the column heights.
    pub fn from_t(t: Interval) -> Option<HeightColumn> {
        for col in HeightColumn::ALL {
            let v = col.t_value();
            if t.lo() == v.lo() && t.hi() == v.hi() {
                return Some(col);
            }
        }
        None
    }

    fn index(self) -> usize {
        match self {
            HeightColumn::FiveSevenths => 0,
            HeightColumn::One => 1,
            HeightColumn::Two => 2,
        }
    }
}

/// One ceiling entry. `best_possible`: some character with conductor one
/// higher exceeds `k` zeros. `from_enumeration`: the value comes from the
/// exhaustive low-conductor zero dataset, not from the disk bound, so the
/// analytic machinery is not expected to reproduce it.
#[derive(Clone, Copy, Debug)]
pub struct CeilingEntry {
    pub ceiling: u64,
    pub best_possible: bool,
    pub from_enumeration: bool,
}

const B: u8 = 1; // best possible
const S: u8 = 2; // sourced from the enumeration dataset

/// Rows k = 0..=9; columns (T=5/7,a=0), (5/7,1), (1,0), (1,1), (2,0), (2,1).
const CEILINGS: [[(u64, u8); 6]; 10] = [
    [(42, B), (16, B), (36, B), (12, B), (16, B), (10, B)],
    [(172, B), (66, B), (148, B), (42, B), (28, B), (18, B)],
    [(934, S), (934, S), (844, S), (408, B), (120, B), (64, B)],
    [(934, S), (934, S), (844, S), (844, S), (330, B), (210, B)],
    [(934, S), (934, S), (844, S), (844, S), (634, S), (630, B)],
    [(3289, 0), (1909, 0), (1616, 0), (905, 0), (634, S), (634, S)],
    [(15991, 0), (9007, 0), (6256, 0), (3425, 0), (660, 0), (634, S)],
    [(82233, 0), (45137, 0), (25252, 0), (13554, 0), (1669, 0), (1050, 0)],
    [(443412, 0), (238003, 0), (105597, 0), (55727, 0), (4289, 0), (2677, 0)],
    [(2489523, 0), (1310445, 0), (455195, 0), (236710, 0), (11185, 0), (6932, 0)],
];

/// Disk parameters (c*, r*) with c = c*/2^11, r = r*/2^11, for the rows the
/// disk bound can certify. Same column order as `CEILINGS`.
const DISKS: [[Option<(i64, i64)>; 6]; 5] = [
    [
        Some((2822, 5006)),
        Some((2896, 5176)),
        Some((2886, 5212)),
        Some((2961, 5388)),
        None,
        None,
    ],
    [
        Some((2719, 4694)),
        Some((2770, 4836)),
        Some((2778, 4902)),
        Some((2831, 5046)),
        Some((2956, 5481)),
        None,
    ],
    [
        Some((2640, 4447)),
        Some((2677, 4566)),
        Some((2694, 4651)),
        Some((2734, 4771)),
        Some((2861, 5221)),
        Some((2906, 5346)),
    ],
    [
        Some((2577, 4246)),
        Some((2606, 4348)),
        Some((2628, 4444)),
        Some((2660, 4546)),
        Some((2785, 5001)),
        Some((2822, 5107)),
    ],
    [
        Some((2527, 4081)),
        Some((2550, 4168)),
        Some((2575, 4272)),
        Some((2600, 4358)),
        Some((2723, 4812)),
        Some((2753, 4904)),
    ],
];

pub const MAX_K: u8 = 9;

pub fn ceiling_entry(col: HeightColumn, a: u8, k: u8) -> Option<CeilingEntry> {
    if a > 1 || k > MAX_K {
        return None;
    }
    let (ceiling, flags) = CEILINGS[k as usize][2 * col.index() + a as usize];
    Some(CeilingEntry {
        ceiling,
        best_possible: flags == B,
        from_enumeration: flags == S,
    })
}

/// The 2^11-scaled disk pair for (column, parity, k), when the row is
/// certified analytically; k below 5 and the blank corners have none.
pub fn disk_pair(col: HeightColumn, a: u8, k: u8) -> Option<(i64, i64)> {
    if a > 1 || !(5..=MAX_K).contains(&k) {
        return None;
    }
    DISKS[(k - 5) as usize][2 * col.index() + a as usize]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ceilings_increase_with_k_within_a_column() {
        for col in HeightColumn::ALL {
            for a in 0..=1u8 {
                let mut prev = 0;
                for k in 0..=MAX_K {
                    let e = ceiling_entry(col, a, k).unwrap();
                    assert!(e.ceiling >= prev, "column {col:?} a={a} k={k}");
                    prev = e.ceiling;
                }
            }
        }
    }

    #[test]
    fn disk_rows_align_with_ceilings() {
        // Wherever a disk pair exists the ceiling row must too, and the
        // scaled center must sit left of the scaled radius.
        for col in HeightColumn::ALL {
            for a in 0..=1u8 {
                for k in 5..=MAX_K {
                    if let Some((c, r)) = disk_pair(col, a, k) {
                        assert!(ceiling_entry(col, a, k).is_some());
                        assert!(0 < c && c < r);
                    }
                }
            }
        }
    }

    #[test]
    fn height_recognition_is_exact() {
        assert_eq!(
            HeightColumn::from_t(Interval::from_ratio(5, 7)),
            Some(HeightColumn::FiveSevenths)
        );
        assert_eq!(HeightColumn::from_t(Interval::point(2.0)), Some(HeightColumn::Two));
        assert_eq!(HeightColumn::from_t(Interval::point(0.75)), None);
    }
}
