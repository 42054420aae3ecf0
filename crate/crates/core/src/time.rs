//! Discrete time carrier and intervals.
//!
//! A [`Carrier`] is the finite set of time points `0..horizon`. When the
//! carrier is open-ended it stands for a prefix of an unbounded timeline, and
//! every interval that reaches the last point is classified as infinite.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Time = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Carrier {
    horizon: usize,
    open_ended: bool,
}

impl Carrier {
    pub fn new(horizon: usize, open_ended: bool) -> Result<Self> {
        if horizon == 0 {
            return Err(Error::InvalidCarrier("horizon must be at least 1".into()));
        }
        if horizon > 64 {
            return Err(Error::InvalidCarrier(format!(
                "horizon {horizon} exceeds the supported maximum of 64"
            )));
        }
        Ok(Self {
            horizon,
            open_ended,
        })
    }

    pub fn closed(horizon: usize) -> Result<Self> {
        Self::new(horizon, false)
    }

    pub fn open(horizon: usize) -> Result<Self> {
        Self::new(horizon, true)
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn is_open_ended(&self) -> bool {
        self.open_ended
    }

    pub fn with_horizon(&self, horizon: usize) -> Result<Self> {
        Self::new(horizon, self.open_ended)
    }

    pub fn points(&self) -> std::ops::Range<Time> {
        0..self.horizon
    }

    pub fn contains(&self, iv: Interval) -> bool {
        match iv {
            Interval::Empty => true,
            Interval::Range { lo, hi } => lo <= hi && hi < self.horizon,
        }
    }

    pub fn check(&self, iv: Interval) -> Result<()> {
        if self.contains(iv) {
            Ok(())
        } else {
            Err(Error::MalformedInterval {
                interval: iv,
                horizon: self.horizon,
            })
        }
    }

    pub fn classify(&self, iv: Interval) -> Result<IntervalClass> {
        self.check(iv)?;
        Ok(self.classify_unchecked(iv))
    }

    pub(crate) fn classify_unchecked(&self, iv: Interval) -> IntervalClass {
        match iv {
            Interval::Empty => IntervalClass::Empty,
            Interval::Range { hi, .. } if self.open_ended && hi + 1 == self.horizon => {
                IntervalClass::Infinite
            }
            Interval::Range { .. } => IntervalClass::Finite,
        }
    }

    pub fn is_infinite(&self, iv: Interval) -> bool {
        self.classify_unchecked(iv) == IntervalClass::Infinite
    }

    /// Number of intervals of the carrier, the empty interval included.
    pub fn interval_count(&self) -> usize {
        1 + self.horizon * (self.horizon + 1) / 2
    }

    /// The empty interval followed by every range ordered by `(lo, hi)`.
    pub fn all_intervals(&self) -> Vec<Interval> {
        let mut out = Vec::with_capacity(self.interval_count());
        out.push(Interval::Empty);
        for lo in 0..self.horizon {
            for hi in lo..self.horizon {
                out.push(Interval::Range { lo, hi });
            }
        }
        out
    }

    /// Position of `iv` in [`Carrier::all_intervals`].
    pub fn index_of(&self, iv: Interval) -> usize {
        match iv {
            Interval::Empty => 0,
            Interval::Range { lo, hi } => {
                // ranges starting before lo: sum_{k<lo} (H - k)
                let before = lo * self.horizon - lo * (lo.saturating_sub(1)) / 2;
                1 + before + (hi - lo)
            }
        }
    }

    /// Every interval `d0` of the carrier with `d0 ∝ iv`.
    pub fn preceders(&self, iv: Interval) -> Vec<Interval> {
        match iv {
            Interval::Empty => self.all_intervals(),
            Interval::Range { lo, .. } => {
                let mut out = vec![Interval::Empty];
                out.extend((0..lo).map(|a| Interval::Range { lo: a, hi: lo - 1 }));
                out
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum IntervalClass {
    Empty,
    Finite,
    Infinite,
}

/// A contiguous set of time points, closed on both ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Interval {
    Empty,
    Range { lo: Time, hi: Time },
}

impl Interval {
    pub fn range(lo: Time, hi: Time) -> Result<Self> {
        if lo > hi {
            return Err(Error::MalformedInterval {
                interval: Interval::Range { lo, hi },
                horizon: hi + 1,
            });
        }
        Ok(Interval::Range { lo, hi })
    }

    pub fn point(t: Time) -> Self {
        Interval::Range { lo: t, hi: t }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Interval::Empty)
    }

    pub fn len(&self) -> usize {
        match *self {
            Interval::Empty => 0,
            Interval::Range { lo, hi } => hi - lo + 1,
        }
    }

    pub fn contains(&self, t: Time) -> bool {
        match *self {
            Interval::Empty => false,
            Interval::Range { lo, hi } => lo <= t && t <= hi,
        }
    }

    pub fn points(&self) -> std::ops::Range<Time> {
        match *self {
            Interval::Empty => 0..0,
            Interval::Range { lo, hi } => lo..hi + 1,
        }
    }

    pub fn bounds(&self) -> Option<(Time, Time)> {
        match *self {
            Interval::Empty => None,
            Interval::Range { lo, hi } => Some((lo, hi)),
        }
    }

    /// Union of two intervals when it is again an interval.
    pub fn union(self, other: Interval) -> Option<Interval> {
        match (self, other) {
            (Interval::Empty, x) | (x, Interval::Empty) => Some(x),
            (Interval::Range { lo: a, hi: b }, Interval::Range { lo: c, hi: d }) => {
                if b + 1 < c || d + 1 < a {
                    None
                } else {
                    Some(Interval::Range {
                        lo: a.min(c),
                        hi: b.max(d),
                    })
                }
            }
        }
    }

    /// All `(first, second)` pairs with `first ∝ second` whose union is
    /// `self`, ordered by the size of `first`.
    pub fn splits(&self) -> Vec<(Interval, Interval)> {
        match *self {
            Interval::Empty => vec![(Interval::Empty, Interval::Empty)],
            Interval::Range { lo, hi } => {
                let mut out = Vec::with_capacity(hi - lo + 2);
                out.push((Interval::Empty, *self));
                for cut in lo..hi {
                    out.push((
                        Interval::Range { lo, hi: cut },
                        Interval::Range { lo: cut + 1, hi },
                    ));
                }
                out.push((*self, Interval::Empty));
                out
            }
        }
    }
}

/// `first ∝ second`: every point of `first` precedes every point of
/// `second` and the union is contiguous.
pub fn adjoins(first: Interval, second: Interval) -> bool {
    match (first, second) {
        (Interval::Empty, _) | (_, Interval::Empty) => true,
        (Interval::Range { hi, .. }, Interval::Range { lo, .. }) => hi + 1 == lo,
    }
}

/// Precomputed interval structure of one carrier, with intervals referred to
/// by their position in [`Carrier::all_intervals`].
#[derive(Debug, Clone)]
pub struct IntervalTable {
    pub carrier: Carrier,
    pub intervals: Vec<Interval>,
    pub splits: Vec<Vec<(usize, usize)>>,
    pub preceders: Vec<Vec<usize>>,
    pub infinite: Vec<bool>,
}

impl IntervalTable {
    pub fn new(carrier: Carrier) -> Self {
        let intervals = carrier.all_intervals();
        let splits = intervals
            .iter()
            .map(|iv| {
                iv.splits()
                    .into_iter()
                    .map(|(a, b)| (carrier.index_of(a), carrier.index_of(b)))
                    .collect()
            })
            .collect();
        let preceders = intervals
            .iter()
            .map(|&iv| {
                carrier
                    .preceders(iv)
                    .into_iter()
                    .map(|p| carrier.index_of(p))
                    .collect()
            })
            .collect();
        let infinite = intervals
            .iter()
            .map(|&iv| carrier.is_infinite(iv))
            .collect();
        Self {
            carrier,
            intervals,
            splits,
            preceders,
            infinite,
        }
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn index_of(&self, iv: Interval) -> usize {
        self.carrier.index_of(iv)
    }

    /// Greatest fixed point of `Z = empty ∨ (infinite ∧ g) ∨ (g ; Z)` given
    /// the truth vector of `g`, by downward iteration from all-true. Also
    /// returns the number of rounds that changed the vector.
    pub fn omega(&self, g: &[bool]) -> (Vec<bool>, usize) {
        let n = self.len();
        let mut z = vec![true; n];
        let mut rounds = 0;
        loop {
            let next: Vec<bool> = (0..n)
                .map(|i| {
                    self.intervals[i].is_empty()
                        || (self.infinite[i] && g[i])
                        || self.splits[i].iter().any(|&(a, b)| g[a] && z[b])
                })
                .collect();
            if next == z {
                return (z, rounds);
            }
            z = next;
            rounds += 1;
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Interval::Empty => write!(f, "∅"),
            Interval::Range { lo, hi } => write!(f, "[{lo},{hi}]"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(lo: Time, hi: Time) -> Interval {
        Interval::Range { lo, hi }
    }

    // Brute-force adjoining straight from the set definition.
    fn adjoins_by_sets(c: &Carrier, a: Interval, b: Interval) -> bool {
        let ordered = a.points().all(|t1| b.points().all(|t2| t1 < t2));
        let union: Vec<Time> = c
            .points()
            .filter(|&t| a.contains(t) || b.contains(t))
            .collect();
        let contiguous = union.windows(2).all(|w| w[1] == w[0] + 1);
        ordered && contiguous
    }

    #[test]
    fn classify_examples() {
        let open = Carrier::open(4).unwrap();
        assert_eq!(
            open.classify(Interval::Empty).unwrap(),
            IntervalClass::Empty
        );
        assert_eq!(open.classify(r(0, 3)).unwrap(), IntervalClass::Infinite);
        assert_eq!(open.classify(r(1, 2)).unwrap(), IntervalClass::Finite);
        let closed = Carrier::closed(4).unwrap();
        assert_eq!(closed.classify(r(0, 3)).unwrap(), IntervalClass::Finite);
        assert!(matches!(
            closed.classify(r(2, 4)),
            Err(Error::MalformedInterval { .. })
        ));
    }

    #[test]
    fn adjoins_examples() {
        assert!(adjoins(r(1, 2), r(3, 5)));
        assert!(adjoins(Interval::Empty, r(0, 3)));
        assert!(!adjoins(r(1, 3), r(3, 5)));
        assert!(!adjoins(r(1, 2), r(4, 5)));
        assert!(!adjoins(r(3, 4), r(1, 2)));
    }

    #[test]
    fn adjoins_matches_set_definition() {
        for h in 1..=6 {
            let c = Carrier::closed(h).unwrap();
            for a in c.all_intervals() {
                for b in c.all_intervals() {
                    assert_eq!(adjoins(a, b), adjoins_by_sets(&c, a, b), "{a} {b}");
                }
            }
        }
    }

    #[test]
    fn split_examples() {
        assert_eq!(
            r(1, 2).splits(),
            vec![
                (Interval::Empty, r(1, 2)),
                (r(1, 1), r(2, 2)),
                (r(1, 2), Interval::Empty)
            ]
        );
        assert_eq!(
            Interval::Empty.splits(),
            vec![(Interval::Empty, Interval::Empty)]
        );
        assert_eq!(
            r(0, 0).splits(),
            vec![(Interval::Empty, r(0, 0)), (r(0, 0), Interval::Empty)]
        );
    }

    #[test]
    fn splits_are_exactly_the_adjoining_decompositions() {
        for h in 1..=6 {
            let c = Carrier::closed(h).unwrap();
            let all = c.all_intervals();
            for d in &all {
                // oracle: every pair of carrier intervals that adjoin and reunify
                let mut expected: Vec<_> = all
                    .iter()
                    .flat_map(|a| all.iter().map(move |b| (*a, *b)))
                    .filter(|(a, b)| adjoins_by_sets(&c, *a, *b) && a.union(*b) == Some(*d))
                    .collect();
                expected.sort_by_key(|(a, _)| a.len());
                let got = d.splits();
                assert_eq!(got, expected, "splits of {d}");
                if let Interval::Range { lo, hi } = *d {
                    assert_eq!(got.len(), hi - lo + 2);
                }
            }
        }
    }

    #[test]
    fn preceder_examples() {
        let c4 = Carrier::closed(4).unwrap();
        assert_eq!(
            c4.preceders(r(2, 3)),
            vec![Interval::Empty, r(0, 1), r(1, 1)]
        );
        assert_eq!(c4.preceders(r(0, 1)), vec![Interval::Empty]);
        let c2 = Carrier::closed(2).unwrap();
        assert_eq!(
            c2.preceders(Interval::Empty),
            vec![Interval::Empty, r(0, 0), r(0, 1), r(1, 1)]
        );
    }

    #[test]
    fn preceders_match_filter_oracle() {
        for h in 1..=6 {
            let c = Carrier::closed(h).unwrap();
            for d in c.all_intervals() {
                let expected: Vec<_> = c
                    .all_intervals()
                    .into_iter()
                    .filter(|a| adjoins_by_sets(&c, *a, d))
                    .collect();
                assert_eq!(c.preceders(d), expected);
            }
        }
    }

    #[test]
    fn interval_counts_and_indexing() {
        assert_eq!(Carrier::closed(1).unwrap().all_intervals().len(), 2);
        assert_eq!(
            Carrier::closed(2).unwrap().all_intervals(),
            vec![Interval::Empty, r(0, 0), r(0, 1), r(1, 1)]
        );
        assert_eq!(Carrier::closed(4).unwrap().all_intervals().len(), 11);
        for h in 1..=8 {
            let c = Carrier::closed(h).unwrap();
            for (i, iv) in c.all_intervals().into_iter().enumerate() {
                assert_eq!(c.index_of(iv), i);
            }
        }
    }

    #[test]
    fn classify_partitions_all_intervals() {
        for open in [false, true] {
            let c = Carrier::new(5, open).unwrap();
            let classes: Vec<_> = c
                .all_intervals()
                .into_iter()
                .map(|iv| c.classify(iv).unwrap())
                .collect();
            let empties = classes
                .iter()
                .filter(|k| **k == IntervalClass::Empty)
                .count();
            let infinite = classes
                .iter()
                .filter(|k| **k == IntervalClass::Infinite)
                .count();
            assert_eq!(empties, 1);
            assert_eq!(infinite, if open { 5 } else { 0 });
        }
    }

    #[test]
    fn empty_adjoins_everything() {
        let c = Carrier::closed(5).unwrap();
        for d in c.all_intervals() {
            assert!(adjoins(d, Interval::Empty) && adjoins(Interval::Empty, d));
        }
    }

    #[test]
    fn zero_horizon_is_rejected() {
        assert!(Carrier::closed(0).is_err());
    }
}
