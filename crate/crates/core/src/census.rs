//! Exact feature censuses of heads and tails by dynamic programming over
//! the diagonal offset, replacing exhaustive enumeration for large `m`.
//!
//! The DP walks step layers with state `(offset, flag bits)`. Segment
//! hits reduce to offset thresholds: inside a head, a visit at offset +1
//! is always an `L1` point and offset -1 an `L2` point; inside a tail,
//! offset +2 is `L3` and -2 is `L4` (the exhaustive cross-checks in the
//! test suites validate this against the point-set predicates). Order
//! flags latch on first qualifying touch, band flags start set and clear
//! on the first visit outside the band.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::exact::BigNat;
use crate::interp::OrderVariant;
use crate::lattice::{for_each_seq, DiagSegment, GridPoint, LatticePath, SegmentId, Step};
use crate::{Error, Result};

/// Head feature vector: which of `L1`/`L2` the head hits, and whether an
/// `L1` hit precedes an `L2` hit (and mirrored). Both order flags can
/// hold at once for heads long enough to cross twice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HeadFeatures {
    pub hit_l1: bool,
    pub hit_l2: bool,
    pub l1_before_l2: bool,
    pub l2_before_l1: bool,
}

/// Tail feature vector: hits of `L3`/`L4`, the order of first hits when
/// both occur, and weak containment in the two unit bands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TailFeatures {
    pub hit_l3: bool,
    pub hit_l4: bool,
    pub l3_then_l4: bool,
    pub l4_then_l3: bool,
    pub in_band_56: bool,
    pub in_band_67: bool,
}

/// Exact path counts grouped by feature vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeatureCensus<F: Ord> {
    counts: BTreeMap<F, BigNat>,
    total: BigNat,
}

impl<F: Ord + Copy> FeatureCensus<F> {
    fn from_counts(counts: BTreeMap<F, BigNat>) -> Self {
        let total = counts.values().sum();
        FeatureCensus { counts, total }
    }

    pub fn total(&self) -> &BigNat {
        &self.total
    }

    pub fn count(&self, f: &F) -> BigNat {
        self.counts.get(f).cloned().unwrap_or_else(BigNat::zero)
    }

    pub fn classes(&self) -> impl Iterator<Item = (&F, &BigNat)> {
        self.counts.iter()
    }

    /// Sum of counts over the classes matching `pred`.
    pub fn count_matching(&self, pred: impl Fn(&F) -> bool) -> BigNat {
        self.counts
            .iter()
            .filter(|(f, _)| pred(f))
            .map(|(_, c)| c)
            .sum()
    }
}

// Head flag bits.
const H1: u8 = 1;
const H2: u8 = 2;
const B12: u8 = 4;
const B21: u8 = 8;

// Tail flag bits. Band bits start set and are cleared on leaving.
const T3: u8 = 1;
const T4: u8 = 2;
const O34: u8 = 4;
const O43: u8 = 8;
const BAND56: u8 = 16;
const BAND67: u8 = 32;

const HEAD_FLAG_SPACE: usize = 16;
const TAIL_FLAG_SPACE: usize = 64;

fn head_flags_update(flags: u8, arrival_offset: i64) -> u8 {
    let mut f = flags;
    if arrival_offset == 1 {
        if f & H2 != 0 {
            f |= B21;
        }
        f |= H1;
    } else if arrival_offset == -1 {
        if f & H1 != 0 {
            f |= B12;
        }
        f |= H2;
    }
    f
}

fn tail_flags_update(flags: u8, arrival_offset: i64) -> u8 {
    let mut f = flags;
    if arrival_offset == 2 {
        if f & T3 == 0 && f & T4 != 0 {
            f |= O43;
        }
        f |= T3;
    } else if arrival_offset == -2 {
        if f & T4 == 0 && f & T3 != 0 {
            f |= O34;
        }
        f |= T4;
    }
    if !(0..=1).contains(&arrival_offset) {
        f &= !BAND56;
    }
    if !(-1..=0).contains(&arrival_offset) {
        f &= !BAND67;
    }
    f
}

/// Generic layered walk: starting from `(start_offset, start_flags)`,
/// take `steps` ±1 offset steps and return the counts of walks ending at
/// offset `end_offset`, grouped by final flags.
fn offset_walk(
    start_offset: i64,
    start_flags: u8,
    steps: u64,
    end_offset: i64,
    flag_space: usize,
    update: fn(u8, i64) -> u8,
) -> BTreeMap<u8, BigNat> {
    let steps = steps as usize;
    let width = 2 * steps + 1;
    let slot = |offset: i64, flags: u8| -> Option<usize> {
        let shifted = offset - start_offset + steps as i64;
        if (0..width as i64).contains(&shifted) {
            Some(shifted as usize * flag_space + flags as usize)
        } else {
            None
        }
    };
    let mut layer = vec![BigNat::zero(); width * flag_space];
    let mut next = layer.clone();
    layer[slot(start_offset, start_flags).expect("start in range")] = BigNat::from(1u32);

    for _ in 0..steps {
        for cell in next.iter_mut() {
            cell.set_zero();
        }
        for (idx, count) in layer.iter().enumerate() {
            if count.is_zero() {
                continue;
            }
            let offset = (idx / flag_space) as i64 - steps as i64 + start_offset;
            let flags = (idx % flag_space) as u8;
            for delta in [-1i64, 1] {
                let arrival = offset + delta;
                if let Some(target) = slot(arrival, update(flags, arrival)) {
                    next[target] += count;
                }
            }
        }
        std::mem::swap(&mut layer, &mut next);
    }

    let mut result = BTreeMap::new();
    for flags in 0..flag_space as u8 {
        if let Some(idx) = slot(end_offset, flags) {
            if !layer[idx].is_zero() {
                result.insert(flags, layer[idx].clone());
            }
        }
    }
    result
}

pub(crate) fn head_walk(start_offset: i64, start_flags: u8, steps: u64) -> BTreeMap<u8, BigNat> {
    offset_walk(
        start_offset,
        start_flags,
        steps,
        0,
        HEAD_FLAG_SPACE,
        head_flags_update,
    )
}

pub(crate) fn tail_walk(start_offset: i64, start_flags: u8, steps: u64) -> BTreeMap<u8, BigNat> {
    offset_walk(
        start_offset,
        start_flags,
        steps,
        0,
        TAIL_FLAG_SPACE,
        tail_flags_update,
    )
}

pub(crate) fn head_features_from_bits(bits: u8) -> HeadFeatures {
    HeadFeatures {
        hit_l1: bits & H1 != 0,
        hit_l2: bits & H2 != 0,
        l1_before_l2: bits & B12 != 0,
        l2_before_l1: bits & B21 != 0,
    }
}

pub(crate) fn tail_features_from_bits(bits: u8) -> TailFeatures {
    TailFeatures {
        hit_l3: bits & T3 != 0,
        hit_l4: bits & T4 != 0,
        l3_then_l4: bits & O34 != 0,
        l4_then_l3: bits & O43 != 0,
        in_band_56: bits & BAND56 != 0,
        in_band_67: bits & BAND67 != 0,
    }
}

/// Replays a head prefix through the threshold state machine; returns the
/// reached offset and flag bits.
pub(crate) fn simulate_head_prefix(steps: &[Step]) -> (i64, u8) {
    let mut offset = 0i64;
    let mut flags = 0u8;
    for step in steps {
        offset += match step {
            Step::Right => -1,
            Step::Up => 1,
        };
        flags = head_flags_update(flags, offset);
    }
    (offset, flags)
}

/// Replays a tail prefix (starting on the diagonal) through the tail
/// state machine.
pub(crate) fn simulate_tail_prefix(steps: &[Step]) -> (i64, u8) {
    let mut offset = 0i64;
    let mut flags = BAND56 | BAND67;
    for step in steps {
        offset += match step {
            Step::Right => -1,
            Step::Up => 1,
        };
        flags = tail_flags_update(flags, offset);
    }
    (offset, flags)
}

/// Per-feature counts of all heads `(0,0) -> (m,m)`, by DP.
pub fn head_census_dp(m: u64) -> FeatureCensus<HeadFeatures> {
    let walk = head_walk(0, 0, 2 * m);
    FeatureCensus::from_counts(
        walk.into_iter()
            .map(|(bits, count)| (head_features_from_bits(bits), count))
            .collect(),
    )
}

/// Per-feature counts of all tails `(m,m) -> (m+s, m+s)`, by DP. The
/// result is independent of `m` by translation invariance.
pub fn tail_census_dp(s: u64) -> Result<FeatureCensus<TailFeatures>> {
    check_tail_shift(s)?;
    let walk = tail_walk(0, BAND56 | BAND67, 2 * s);
    Ok(FeatureCensus::from_counts(
        walk.into_iter()
            .map(|(bits, count)| (tail_features_from_bits(bits), count))
            .collect(),
    ))
}

/// Per-feature counts of heads by exhaustive enumeration against the
/// explicit segment point sets; the independent route the DP is checked
/// against.
pub fn head_census_brute(m: u64) -> FeatureCensus<HeadFeatures> {
    let l1 = DiagSegment::new(SegmentId::L1, m, 0);
    let l2 = DiagSegment::new(SegmentId::L2, m, 0);
    let mut counts: BTreeMap<HeadFeatures, BigNat> = BTreeMap::new();
    for_each_seq(m as usize, m as usize, |steps| {
        let head = LatticePath::new(GridPoint::ORIGIN, steps.to_vec());
        let features = HeadFeatures {
            hit_l1: head.intersects(&l1),
            hit_l2: head.intersects(&l2),
            l1_before_l2: head.hits_in_order(&l1, &l2),
            l2_before_l1: head.hits_in_order(&l2, &l1),
        };
        *counts.entry(features).or_insert_with(BigNat::zero) += BigNat::from(1u32);
    });
    FeatureCensus::from_counts(counts)
}

/// Per-feature counts of tails by exhaustive enumeration against the
/// point sets (anchored at `(0,0)`, valid for every `m` by translation).
pub fn tail_census_brute(s: u64) -> Result<FeatureCensus<TailFeatures>> {
    check_tail_shift(s)?;
    let m = 0;
    let l3 = DiagSegment::new(SegmentId::L3, m, s);
    let l4 = DiagSegment::new(SegmentId::L4, m, s);
    let mut counts: BTreeMap<TailFeatures, BigNat> = BTreeMap::new();
    for_each_seq(s as usize, s as usize, |steps| {
        let tail = LatticePath::new(GridPoint::ORIGIN, steps.to_vec());
        let first3 = tail.first_hit_index(&l3);
        let first4 = tail.first_hit_index(&l4);
        let features = TailFeatures {
            hit_l3: first3.is_some(),
            hit_l4: first4.is_some(),
            l3_then_l4: matches!((first3, first4), (Some(i), Some(j)) if i < j),
            l4_then_l3: matches!((first3, first4), (Some(i), Some(j)) if j < i),
            in_band_56: tail.stays_between(0, 1),
            in_band_67: tail.stays_between(-1, 0),
        };
        *counts.entry(features).or_insert_with(BigNat::zero) += BigNat::from(1u32);
    });
    Ok(FeatureCensus::from_counts(counts))
}

fn check_tail_shift(s: u64) -> Result<()> {
    if s > 4 {
        return Err(Error::ShiftOutOfRange { s, max: 4 });
    }
    Ok(())
}

/// The census-combinable counting predicates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountPredicate {
    /// The shift `s <= 3` count: no `L1`&`L4` pair and no `L2`&`L3` pair.
    SmallShift,
    /// The shift-4 count under one order-condition variant.
    Shift4(OrderVariant),
    /// All four of `L1..L4` hit, some `L1` hit before an `L2` hit.
    QuadL1First,
    /// All four hit, no `L1` hit before an `L2` hit.
    QuadL1NotFirst,
    /// `L1` and `L2` hit, no `L1` before `L2`, tail inside a unit band.
    BandL1NotFirst,
}

impl CountPredicate {
    /// Joint head/tail feature predicate the censuses are summed over.
    pub fn joint(self, h: &HeadFeatures, t: &TailFeatures) -> bool {
        let base = !(h.hit_l1 && t.hit_l4) && !(h.hit_l2 && t.hit_l3);
        let banded = t.in_band_56 || t.in_band_67;
        match self {
            CountPredicate::SmallShift => base,
            CountPredicate::Shift4(OrderVariant::AsStated) => base && (!h.l1_before_l2 || !banded),
            CountPredicate::Shift4(OrderVariant::OrderNegated) => {
                base && (!(h.hit_l1 && h.hit_l2 && !h.l1_before_l2) || !banded)
            }
            CountPredicate::QuadL1First => {
                h.hit_l1 && h.hit_l2 && h.l1_before_l2 && t.hit_l3 && t.hit_l4
            }
            CountPredicate::QuadL1NotFirst => {
                h.hit_l1 && h.hit_l2 && !h.l1_before_l2 && t.hit_l3 && t.hit_l4
            }
            CountPredicate::BandL1NotFirst => h.hit_l1 && h.hit_l2 && !h.l1_before_l2 && banded,
        }
    }

    fn check_shift(self, s: u64) -> Result<()> {
        match self {
            CountPredicate::SmallShift => {
                if s > 3 {
                    return Err(Error::ShiftOutOfRange { s, max: 3 });
                }
            }
            _ => {
                if s != 4 {
                    return Err(Error::InvalidParams(format!(
                        "predicate {self:?} requires s = 4, got s = {s}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Counts level-0 members satisfying `pred` by combining the head and
/// tail censuses; equals the exhaustive count without enumerating.
pub fn fast_count(m: u64, s: u64, pred: CountPredicate) -> Result<BigNat> {
    pred.check_shift(s)?;
    let head = head_census_dp(m);
    let tail = tail_census_dp(s)?;
    Ok(fast_count_with(&head, &tail, pred))
}

/// As [`fast_count`] but reusing precomputed censuses (the head census
/// for a large `m` dominates the cost and is shared across shifts).
pub fn fast_count_with(
    head: &FeatureCensus<HeadFeatures>,
    tail: &FeatureCensus<TailFeatures>,
    pred: CountPredicate,
) -> BigNat {
    let mut total = BigNat::zero();
    for (h, hc) in head.classes() {
        for (t, tc) in tail.classes() {
            if pred.joint(h, t) {
                total += hc * tc;
            }
        }
    }
    total
}
