//! The path predicates counted by `S(m, m+s)`, the reflection injections
//! for family levels ±1, the double-reflection maps for levels ±2, and
//! the two band-count sets whose cardinalities agree.
//!
//! Throughout, a member of the level-0 family ("Path_0") is a path
//! `(0,0) -> (m,m) -> (m+s, m+s)`; its head is the first `2m` steps and
//! its tail the last `2s`. Segment hits split cleanly: a head can only
//! meet `L1`/`L2`/`L8`/`L9`, a tail only `L3`..`L7`.

use serde::{Deserialize, Serialize};

use crate::exact::BigNat;
use crate::lattice::{
    enumerate_family, DiagSegment, GridPoint, LatticePath, PathFamilySpec, SegmentId,
};
use crate::{Error, Result, DEFAULT_ENUM_BUDGET};

/// The two readings of the order condition in the shift-4 predicate.
///
/// `AsStated` triggers the band exclusion when some `L1` hit occurs
/// before an `L2` hit; `OrderNegated` triggers it when both segments are
/// hit but no `L1` hit precedes an `L2` hit. Exactly one of them counts
/// `S(m, m+4)`; the verification campaigns resolve which.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderVariant {
    AsStated,
    OrderNegated,
}

impl OrderVariant {
    pub const BOTH: [OrderVariant; 2] = [OrderVariant::AsStated, OrderVariant::OrderNegated];

    pub fn token(self) -> &'static str {
        match self {
            OrderVariant::AsStated => "as-stated",
            OrderVariant::OrderNegated => "order-negated",
        }
    }
}

impl std::fmt::Display for OrderVariant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.token())
    }
}

/// How a tail `(m,m) -> (m+s, m+s)` relates to `L3` and `L4`: which it
/// hits, and for double hits which comes first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailClass {
    AvoidsBoth,
    L3Only,
    L4Only,
    L3ThenL4,
    L4ThenL3,
}

/// The unique shift-4 tail that meets `L3` first and `L4` second.
pub const CANONICAL_TAIL_L3_THEN_L4: &str = "UURRRRUU";
/// The unique shift-4 tail that meets `L4` first and `L3` second.
pub const CANONICAL_TAIL_L4_THEN_L3: &str = "RRUUUURR";

fn seg(id: SegmentId, m: u64, s: u64) -> DiagSegment {
    DiagSegment::new(id, m, s)
}

pub(crate) fn validate_path0(path: &LatticePath, m: u64, s: u64) -> Result<()> {
    let total = 2 * (m + s) as usize;
    let end = GridPoint::new((m + s) as i64, (m + s) as i64);
    let mid = GridPoint::new(m as i64, m as i64);
    if path.origin() != GridPoint::ORIGIN || path.len() != total || path.end() != end {
        return Err(Error::BadPath(format!(
            "expected a path (0, 0) -> {mid} -> {end}, got {} -> {} with {} steps",
            path.origin(),
            path.end(),
            path.len()
        )));
    }
    // A monotone path visits (m, m) iff its 2m-th visit is exactly (m, m).
    if path.point_at(2 * m as usize) != mid {
        return Err(Error::BadPath(format!("path does not pass through {mid}")));
    }
    Ok(())
}

/// The predicate counted by `S(m, m+s)` for shifts `s <= 3`: the path
/// hits neither both `L1` and `L4` nor both `L2` and `L3`.
pub fn small_shift_predicate(path: &LatticePath, m: u64, s: u64) -> Result<bool> {
    if s > 3 {
        return Err(Error::ShiftOutOfRange { s, max: 3 });
    }
    validate_path0(path, m, s)?;
    let base = !(path.intersects(&seg(SegmentId::L1, m, s))
        && path.intersects(&seg(SegmentId::L4, m, s)))
        && !(path.intersects(&seg(SegmentId::L2, m, s))
            && path.intersects(&seg(SegmentId::L3, m, s)));
    Ok(base)
}

/// Exhaustive count of level-0 members satisfying
/// [`small_shift_predicate`]; equals `S(m, m+s)`.
pub fn count_small_shift(m: u64, s: u64) -> Result<BigNat> {
    count_small_shift_with_budget(m, s, DEFAULT_ENUM_BUDGET)
}

pub fn count_small_shift_with_budget(m: u64, s: u64, budget: u64) -> Result<BigNat> {
    if s > 3 {
        return Err(Error::ShiftOutOfRange { s, max: 3 });
    }
    count_level0_matching(m, s, budget, |p| {
        small_shift_predicate(p, m, s).expect("level-0 member")
    })
}

/// The shift-4 predicate: the small-shift base condition, and whenever
/// the variant's order condition holds the tail must leave both unit
/// bands (between `L5`/`L6` and between `L6`/`L7`).
pub fn shift4_predicate(path: &LatticePath, m: u64, variant: OrderVariant) -> Result<bool> {
    let s = 4;
    validate_path0(path, m, s)?;
    let l1 = seg(SegmentId::L1, m, s);
    let l2 = seg(SegmentId::L2, m, s);
    let base = !(path.intersects(&l1) && path.intersects(&seg(SegmentId::L4, m, s)))
        && !(path.intersects(&l2) && path.intersects(&seg(SegmentId::L3, m, s)));
    if !base {
        return Ok(false);
    }
    let triggered = match variant {
        OrderVariant::AsStated => path.hits_in_order(&l1, &l2),
        OrderVariant::OrderNegated => {
            path.intersects(&l1) && path.intersects(&l2) && !path.hits_in_order(&l1, &l2)
        }
    };
    if !triggered {
        return Ok(true);
    }
    let tail = path.suffix_from(2 * m as usize);
    Ok(!(tail.stays_between(0, 1) || tail.stays_between(-1, 0)))
}

/// Exhaustive count of level-0 members satisfying [`shift4_predicate`]
/// under the given variant.
pub fn count_shift4(m: u64, variant: OrderVariant) -> Result<BigNat> {
    count_shift4_with_budget(m, variant, DEFAULT_ENUM_BUDGET)
}

pub fn count_shift4_with_budget(m: u64, variant: OrderVariant, budget: u64) -> Result<BigNat> {
    count_level0_matching(m, 4, budget, |p| {
        shift4_predicate(p, m, variant).expect("level-0 member")
    })
}

/// Members hitting all four of `L1..L4` with some `L1` hit before an
/// `L2` hit. This is the set the level ±2 families map onto.
pub fn quad_l1_first_predicate(path: &LatticePath, m: u64) -> Result<bool> {
    validate_path0(path, m, 4)?;
    let lines = four_segments(m);
    Ok(lines.quad(path) && lines.ordered(path))
}

/// Members hitting all four of `L1..L4` but never `L1` before `L2` (the
/// first band-count set).
pub fn quad_l1_not_first_predicate(path: &LatticePath, m: u64) -> Result<bool> {
    validate_path0(path, m, 4)?;
    let lines = four_segments(m);
    Ok(lines.quad(path) && !lines.ordered(path))
}

/// Members hitting `L1` and `L2`, never `L1` before `L2`, with the tail
/// inside one of the two unit bands (the second band-count set; its
/// cardinality equals the first's).
pub fn band_l1_not_first_predicate(path: &LatticePath, m: u64) -> Result<bool> {
    validate_path0(path, m, 4)?;
    let lines = four_segments(m);
    Ok(lines.band_unordered(path, m))
}

/// Shift-4 members that hit all four of `L1..L4` with some `L1` hit
/// before an `L2` hit.
pub fn count_quad_l1_first(m: u64) -> Result<BigNat> {
    count_quad_l1_first_with_budget(m, DEFAULT_ENUM_BUDGET)
}

pub fn count_quad_l1_first_with_budget(m: u64, budget: u64) -> Result<BigNat> {
    let lines = four_segments(m);
    count_level0_matching(m, 4, budget, |p| lines.quad(p) && lines.ordered(p))
}

/// Shift-4 members that hit all four of `L1..L4` but never `L1` before
/// `L2`.
pub fn count_quad_l1_not_first(m: u64) -> Result<BigNat> {
    count_quad_l1_not_first_with_budget(m, DEFAULT_ENUM_BUDGET)
}

pub fn count_quad_l1_not_first_with_budget(m: u64, budget: u64) -> Result<BigNat> {
    let lines = four_segments(m);
    count_level0_matching(m, 4, budget, |p| lines.quad(p) && !lines.ordered(p))
}

/// Shift-4 members counted by [`band_l1_not_first_predicate`].
pub fn count_band_l1_not_first(m: u64) -> Result<BigNat> {
    count_band_l1_not_first_with_budget(m, DEFAULT_ENUM_BUDGET)
}

pub fn count_band_l1_not_first_with_budget(m: u64, budget: u64) -> Result<BigNat> {
    let lines = four_segments(m);
    count_level0_matching(m, 4, budget, |p| lines.band_unordered(p, m))
}

struct FourSegments {
    l1: DiagSegment,
    l2: DiagSegment,
    l3: DiagSegment,
    l4: DiagSegment,
}

impl FourSegments {
    fn quad(&self, p: &LatticePath) -> bool {
        p.intersects(&self.l1)
            && p.intersects(&self.l2)
            && p.intersects(&self.l3)
            && p.intersects(&self.l4)
    }

    fn ordered(&self, p: &LatticePath) -> bool {
        p.hits_in_order(&self.l1, &self.l2)
    }

    fn band_unordered(&self, p: &LatticePath, m: u64) -> bool {
        if !(p.intersects(&self.l1) && p.intersects(&self.l2) && !self.ordered(p)) {
            return false;
        }
        let tail = p.suffix_from(2 * m as usize);
        tail.stays_between(0, 1) || tail.stays_between(-1, 0)
    }
}

fn four_segments(m: u64) -> FourSegments {
    let s = 4;
    FourSegments {
        l1: seg(SegmentId::L1, m, s),
        l2: seg(SegmentId::L2, m, s),
        l3: seg(SegmentId::L3, m, s),
        l4: seg(SegmentId::L4, m, s),
    }
}

fn count_level0_matching(
    m: u64,
    s: u64,
    budget: u64,
    pred: impl Fn(&LatticePath) -> bool,
) -> Result<BigNat> {
    let spec = PathFamilySpec::new(m, s, 0)?;
    let needed = spec.cardinality();
    if needed > BigNat::from(budget) {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let mut count = 0u64;
    for path in enumerate_family(&spec) {
        if pred(&path) {
            count += 1;
        }
    }
    Ok(BigNat::from(count))
}

/// Demonstration pairing between the two equal-cardinality band-count
/// sets: a member whose tail meets `L4` first pairs with one whose tail
/// stays in the upper band (`L5`/`L6`), a member whose tail meets `L3`
/// first with the lower band (`L6`/`L7`), each class taken in
/// lexicographic order. The pairing preserves heads.
pub fn band_set_pairing(m: u64) -> Result<Vec<(LatticePath, LatticePath)>> {
    band_set_pairing_with_budget(m, DEFAULT_ENUM_BUDGET)
}

pub fn band_set_pairing_with_budget(
    m: u64,
    budget: u64,
) -> Result<Vec<(LatticePath, LatticePath)>> {
    let spec = PathFamilySpec::new(m, 4, 0)?;
    let needed = spec.cardinality();
    if needed > BigNat::from(budget) {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let lines = four_segments(m);
    let mut quad_43 = Vec::new();
    let mut quad_34 = Vec::new();
    let mut band_56 = Vec::new();
    let mut band_67 = Vec::new();
    // Family enumeration is lexicographic, so the class vectors are too.
    for p in enumerate_family(&spec) {
        if lines.quad(&p) && !lines.ordered(&p) {
            match classify_tail(&p.suffix_from(2 * m as usize), m, 4)? {
                TailClass::L4ThenL3 => quad_43.push(p),
                TailClass::L3ThenL4 => quad_34.push(p),
                _ => unreachable!("quad members hit both segments"),
            }
        } else if lines.band_unordered(&p, m) {
            if p.suffix_from(2 * m as usize).stays_between(0, 1) {
                band_56.push(p);
            } else {
                band_67.push(p);
            }
        }
    }
    if quad_43.len() != band_56.len() || quad_34.len() != band_67.len() {
        return Err(Error::InvalidParams(format!(
            "band-set classes differ in size at m={m}: {}x{} vs {}x{}",
            quad_43.len(),
            band_56.len(),
            quad_34.len(),
            band_67.len()
        )));
    }
    Ok(quad_43
        .into_iter()
        .zip(band_56)
        .chain(quad_34.into_iter().zip(band_67))
        .collect())
}

/// Classifies a tail `(m,m) -> (m+s, m+s)` by which of `L3`/`L4` it hits
/// and, when it hits both, which first hit comes earlier.
pub fn classify_tail(tail: &LatticePath, m: u64, s: u64) -> Result<TailClass> {
    let from = GridPoint::new(m as i64, m as i64);
    let to = GridPoint::new((m + s) as i64, (m + s) as i64);
    if tail.origin() != from || tail.end() != to || tail.len() != 2 * s as usize {
        return Err(Error::BadPath(format!(
            "expected a tail {from} -> {to}, got {} -> {} with {} steps",
            tail.origin(),
            tail.end(),
            tail.len()
        )));
    }
    let l3 = seg(SegmentId::L3, m, s);
    let l4 = seg(SegmentId::L4, m, s);
    let first3 = tail.first_hit_index(&l3);
    let first4 = tail.first_hit_index(&l4);
    Ok(match (first3, first4) {
        (None, None) => TailClass::AvoidsBoth,
        (Some(_), None) => TailClass::L3Only,
        (None, Some(_)) => TailClass::L4Only,
        // First hits of distinct diagonals can never coincide.
        (Some(i3), Some(i4)) => {
            if i3 < i4 {
                TailClass::L3ThenL4
            } else {
                TailClass::L4ThenL3
            }
        }
    })
}

/// Level of a family member, read off the endpoint of its first `2m`
/// steps.
fn detect_level(path: &LatticePath, m: u64, s: u64, allowed: &[i64]) -> Result<i64> {
    for &level in allowed {
        let spec = PathFamilySpec::new(m, s, level)?;
        if path.origin() == GridPoint::ORIGIN
            && path.len() == 2 * (m + s) as usize
            && path.end() == spec.end()
            && path.point_at(2 * m as usize) == spec.mid()
        {
            return Ok(level);
        }
    }
    Err(Error::BadPath(format!(
        "path {path} is not a member of the expected families (levels {allowed:?})"
    )))
}

/// Maps a level ±1 family member into the level-0 family.
///
/// For level -1: reflect the head after its last `L1` hit (it now ends at
/// `(m, m)`), translate the tail to start there, and reflect the tail
/// after its last `L4` hit. Level +1 mirrors with `L2` and `L3`. The
/// image hits both pivot segments, and the map is injective.
pub fn inject_level1(path: &LatticePath, m: u64, s: u64) -> Result<LatticePath> {
    inject_level1_with_pivots(path, m, s).map(|(p, _, _)| p)
}

/// As [`inject_level1`], also returning the head pivot visit index and
/// the tail pivot visit index (within the translated tail). Reflecting
/// again at the same pivots recovers the input.
pub fn inject_level1_with_pivots(
    path: &LatticePath,
    m: u64,
    s: u64,
) -> Result<(LatticePath, usize, usize)> {
    if s > 3 {
        return Err(Error::ShiftOutOfRange { s, max: 3 });
    }
    let level = detect_level(path, m, s, &[-1, 1])?;
    let (head_seg, tail_seg) = if level == -1 {
        (seg(SegmentId::L1, m, s), seg(SegmentId::L4, m, s))
    } else {
        (seg(SegmentId::L2, m, s), seg(SegmentId::L3, m, s))
    };

    let head = path.prefix_to(2 * m as usize);
    let head_pivot = head
        .last_hit_index(&head_seg)
        .ok_or(Error::NoIntersection(head_seg.id()))?;
    let head = head.reflect_tail_at(head_pivot)?;

    let tail = path
        .suffix_from(2 * m as usize)
        .translate(GridPoint::new(m as i64, m as i64));
    let tail_pivot = tail
        .last_hit_index(&tail_seg)
        .ok_or(Error::NoIntersection(tail_seg.id()))?;
    let tail = tail.reflect_tail_at(tail_pivot)?;

    Ok((head.concat(&tail)?, head_pivot, tail_pivot))
}

/// Maps a level ±2 family member (shift 4) into the level-0 family.
///
/// Level -2: reflect the head after its last `L8` hit (now ending at
/// `(m-1, m+1)`), then after the last `L1` hit occurring before that
/// pivot (now ending at `(m, m)`), and attach the canonical
/// `L3`-then-`L4` tail. Level +2 mirrors via `L9`, `L2` and the
/// `L4`-then-`L3` tail.
pub fn map_level2(path: &LatticePath, m: u64) -> Result<LatticePath> {
    map_level2_with_pivots(path, m).map(|(p, _, _)| p)
}

/// As [`map_level2`], also returning the two head pivot visit indices
/// (first the outer `L8`/`L9` pivot, then the inner `L1`/`L2` pivot).
pub fn map_level2_with_pivots(path: &LatticePath, m: u64) -> Result<(LatticePath, usize, usize)> {
    let s = 4;
    let level = detect_level(path, m, s, &[-2, 2])?;
    let (outer, inner, canonical_tail) = if level == -2 {
        (
            seg(SegmentId::L8, m, s),
            seg(SegmentId::L1, m, s),
            CANONICAL_TAIL_L3_THEN_L4,
        )
    } else {
        (
            seg(SegmentId::L9, m, s),
            seg(SegmentId::L2, m, s),
            CANONICAL_TAIL_L4_THEN_L3,
        )
    };

    let head = path.prefix_to(2 * m as usize);
    let outer_pivot = head
        .last_hit_index(&outer)
        .ok_or(Error::NoIntersection(outer.id()))?;
    let head = head.reflect_tail_at(outer_pivot)?;

    // Last inner hit strictly before the outer pivot; the prefix up to
    // the outer pivot is untouched by the first reflection.
    let inner_pivot = head
        .points()
        .enumerate()
        .take(outer_pivot)
        .filter(|(_, p)| inner.contains(*p))
        .map(|(i, _)| i)
        .last()
        .ok_or(Error::NoIntersection(inner.id()))?;
    let head = head.reflect_tail_at(inner_pivot)?;

    let tail = LatticePath::parse(canonical_tail, GridPoint::new(m as i64, m as i64))?;
    Ok((head.concat(&tail)?, outer_pivot, inner_pivot))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::super_catalan_direct;
    use crate::lattice::enumerate_paths;
    use std::collections::BTreeSet;

    fn path(text: &str) -> LatticePath {
        LatticePath::parse(text, GridPoint::ORIGIN).unwrap()
    }

    #[test]
    fn small_shift_predicate_examples() {
        assert!(small_shift_predicate(&path("URRURU"), 1, 2).unwrap());
        // Hits L1 at (0,1) and L4 at (3,1).
        assert!(!small_shift_predicate(&path("URRRUU"), 1, 2).unwrap());
        assert!(small_shift_predicate(&path("RU"), 1, 0).unwrap());
        assert!(matches!(
            small_shift_predicate(&path("RURU"), 1, 4),
            Err(Error::ShiftOutOfRange { .. })
        ));
        // Does not pass through (1, 1).
        assert!(matches!(
            small_shift_predicate(&path("RRUUUU"), 1, 2),
            Err(Error::BadPath(_))
        ));
    }

    #[test]
    fn count_small_shift_examples() {
        assert_eq!(count_small_shift(1, 2).unwrap(), BigNat::from(10u32));
        assert_eq!(count_small_shift(2, 0).unwrap(), BigNat::from(6u32));
        assert_eq!(count_small_shift(1, 3).unwrap(), BigNat::from(28u32));
    }

    #[test]
    fn inject_level1_trace() {
        let (image, head_pivot, tail_pivot) =
            inject_level1_with_pivots(&path("UURRRR"), 1, 2).unwrap();
        assert_eq!(image.to_string(), "URRRUU");
        // Reflecting again at the same pivots recovers the input.
        let head = image.prefix_to(2).reflect_tail_at(head_pivot).unwrap();
        let tail = image
            .suffix_from(2)
            .reflect_tail_at(tail_pivot)
            .unwrap()
            .translate(GridPoint::new(0, 2));
        let back = head.concat(&tail.translate(head.end())).unwrap();
        assert_eq!(back.to_string(), "UURRRR");
    }

    #[test]
    fn inject_level1_images_are_the_excluded_sets() {
        for m in 0..=4u64 {
            for s in 0..=3u64 {
                let mut image = BTreeSet::new();
                let mut domain = 0usize;
                for level in [-1i64, 1] {
                    let spec = PathFamilySpec::new(m, s, level).unwrap();
                    for member in enumerate_family(&spec) {
                        domain += 1;
                        let out = inject_level1(&member, m, s).unwrap();
                        assert!(validate_path0(&out, m, s).is_ok());
                        image.insert(out);
                    }
                }
                assert_eq!(image.len(), domain, "injectivity at m={m}, s={s}");

                let expected: BTreeSet<LatticePath> =
                    enumerate_family(&PathFamilySpec::new(m, s, 0).unwrap())
                        .filter(|p| !small_shift_predicate(p, m, s).unwrap())
                        .collect();
                assert_eq!(image, expected, "image characterization at m={m}, s={s}");
            }
        }
    }

    #[test]
    fn classify_tail_examples() {
        let m = 3;
        let tail = |text: &str, s: u64| {
            LatticePath::parse(text, GridPoint::new(m as i64, m as i64))
                .map(|t| classify_tail(&t, m, s).unwrap())
                .unwrap()
        };
        assert_eq!(tail("UURRRRUU", 4), TailClass::L3ThenL4);
        assert_eq!(tail("RRUUUURR", 4), TailClass::L4ThenL3);
        assert_eq!(tail("RURU", 2), TailClass::AvoidsBoth);
        assert_eq!(tail("UURR", 2), TailClass::L3Only);
        assert_eq!(tail("RRUU", 2), TailClass::L4Only);
        let bad = LatticePath::parse("RU", GridPoint::ORIGIN).unwrap();
        assert!(classify_tail(&bad, m, 2).is_err());
    }

    #[test]
    fn double_hit_tail_classes_are_empty_below_shift_4() {
        for m in 0..=3u64 {
            for s in 0..=3u64 {
                let from = GridPoint::new(m as i64, m as i64);
                let to = GridPoint::new((m + s) as i64, (m + s) as i64);
                for tail in enumerate_paths(from, to).unwrap() {
                    let class = classify_tail(&tail, m, s).unwrap();
                    assert!(
                        !matches!(class, TailClass::L3ThenL4 | TailClass::L4ThenL3),
                        "tail {tail} hits both segments at s={s}"
                    );
                }
            }
        }
    }

    #[test]
    fn shift4_canonical_tails_are_unique() {
        let m = 2u64;
        let from = GridPoint::new(m as i64, m as i64);
        let to = GridPoint::new(m as i64 + 4, m as i64 + 4);
        let mut l3_then_l4 = Vec::new();
        let mut l4_then_l3 = Vec::new();
        for tail in enumerate_paths(from, to).unwrap() {
            match classify_tail(&tail, m, 4).unwrap() {
                TailClass::L3ThenL4 => l3_then_l4.push(tail.to_string()),
                TailClass::L4ThenL3 => l4_then_l3.push(tail.to_string()),
                _ => {}
            }
        }
        assert_eq!(l3_then_l4, vec![CANONICAL_TAIL_L3_THEN_L4]);
        assert_eq!(l4_then_l3, vec![CANONICAL_TAIL_L4_THEN_L3]);
    }

    #[test]
    fn map_level2_trace() {
        // m = 2, level -2: head UUUU, forced tail RRRRRRRR.
        let member = path("UUUURRRRRRRR");
        let (image, outer_pivot, inner_pivot) = map_level2_with_pivots(&member, 2).unwrap();
        assert_eq!(image.prefix_to(4).to_string(), "URRU");
        assert_eq!(image.to_string(), "URRUUURRRRUU");
        assert_eq!((outer_pivot, inner_pivot), (3, 1));

        // Round trip of the head at the recorded pivots.
        let head = image.prefix_to(4);
        let back = head
            .reflect_tail_at(inner_pivot)
            .unwrap()
            .reflect_tail_at(outer_pivot)
            .unwrap();
        assert_eq!(back, member.prefix_to(4));
    }

    #[test]
    fn map_level2_image_properties() {
        for m in 2..=5u64 {
            let s = 4;
            let mut images = BTreeSet::new();
            for level in [-2i64, 2] {
                let spec = PathFamilySpec::new(m, s, level).unwrap();
                for member in enumerate_family(&spec) {
                    let out = map_level2(&member, m).unwrap();
                    assert!(validate_path0(&out, m, s).is_ok());
                    let lines = four_segments(m);
                    let (l1, l2) = (&lines.l1, &lines.l2);
                    assert!(lines.quad(&out), "image must hit all four segments");
                    if level == -2 {
                        assert!(out.hits_in_order(l1, l2));
                        assert_eq!(
                            classify_tail(&out.suffix_from(2 * m as usize), m, s).unwrap(),
                            TailClass::L3ThenL4
                        );
                    } else {
                        assert!(out.hits_in_order(l2, l1));
                        assert_eq!(
                            classify_tail(&out.suffix_from(2 * m as usize), m, s).unwrap(),
                            TailClass::L4ThenL3
                        );
                    }
                    assert!(images.insert(out), "images must be pairwise distinct");
                }
            }
        }
    }

    #[test]
    fn shift4_counts_and_band_sets() {
        // m = 1: no head hits both L1 and L2, so both variants reduce to
        // the base condition.
        for variant in OrderVariant::BOTH {
            assert_eq!(count_shift4(1, variant).unwrap(), BigNat::from(84u32));
            assert_eq!(count_shift4(0, variant).unwrap(), BigNat::from(70u32));
        }
        assert_eq!(count_quad_l1_not_first(1).unwrap(), BigNat::from(0u32));
        assert_eq!(count_band_l1_not_first(1).unwrap(), BigNat::from(0u32));

        // The variants agree at m = 2 and first part ways at m = 3.
        for variant in OrderVariant::BOTH {
            assert_eq!(count_shift4(2, variant).unwrap(), BigNat::from(198u32));
        }
        let expected = super_catalan_direct(3, 7).unwrap();
        assert_eq!(
            count_shift4(3, OrderVariant::OrderNegated).unwrap(),
            expected
        );
        assert_ne!(count_shift4(3, OrderVariant::AsStated).unwrap(), expected);
    }

    #[test]
    fn band_set_pairing_is_a_head_preserving_bijection() {
        for m in 0..=4u64 {
            let pairs = band_set_pairing(m).unwrap();
            assert_eq!(
                BigNat::from(pairs.len()),
                count_quad_l1_not_first(m).unwrap(),
                "pairing covers the first set at m={m}"
            );
            let mut lefts = BTreeSet::new();
            let mut rights = BTreeSet::new();
            for (quad, banded) in &pairs {
                assert!(quad_l1_not_first_predicate(quad, m).unwrap());
                assert!(band_l1_not_first_predicate(banded, m).unwrap());
                // The demonstration map only swaps the tail.
                assert_eq!(
                    quad.prefix_to(2 * m as usize),
                    banded.prefix_to(2 * m as usize)
                );
                let quad_class = classify_tail(&quad.suffix_from(2 * m as usize), m, 4).unwrap();
                let upper = banded.suffix_from(2 * m as usize).stays_between(0, 1);
                match quad_class {
                    TailClass::L4ThenL3 => assert!(upper),
                    TailClass::L3ThenL4 => assert!(!upper),
                    other => panic!("unexpected tail class {other:?}"),
                }
                assert!(lefts.insert(quad.clone()));
                assert!(rights.insert(banded.clone()));
            }
        }
    }

    #[test]
    fn level2_count_equality_small() {
        use crate::exact::binomial;
        for m in 0..=5u64 {
            let family = binomial(2 * m, m as i64 - 2) + binomial(2 * m, m as i64 + 2);
            assert_eq!(count_quad_l1_first(m).unwrap(), family, "m={m}");
        }
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(
            count_small_shift_with_budget(3, 2, 100),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
