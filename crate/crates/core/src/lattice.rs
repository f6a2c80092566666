//! Monotone lattice paths, the nine diagonal segments `L1..L9`, and the
//! intersection / ordering / band predicates and reflections used by the
//! path interpretations.
//!
//! A path is an origin plus an ordered sequence of unit `Right`/`Up`
//! steps. The text form over `{R, U}` is the single interchange format
//! across the CLI, reports and tests, and enumeration is always
//! lexicographic with `R < U`.

use std::fmt;
use std::str::FromStr;

use crate::exact::{binomial, BigNat};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GridPoint {
    pub x: i64,
    pub y: i64,
}

impl GridPoint {
    pub const ORIGIN: GridPoint = GridPoint { x: 0, y: 0 };

    pub fn new(x: i64, y: i64) -> Self {
        GridPoint { x, y }
    }

    /// Signed distance from the main diagonal: `y - x`.
    pub fn offset(self) -> i64 {
        self.y - self.x
    }
}

impl fmt::Display for GridPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A unit step. The derived order `Right < Up` is what makes the derived
/// path order lexicographic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    Right,
    Up,
}

impl Step {
    pub fn flip(self) -> Step {
        match self {
            Step::Right => Step::Up,
            Step::Up => Step::Right,
        }
    }

    fn delta(self) -> (i64, i64) {
        match self {
            Step::Right => (1, 0),
            Step::Up => (0, 1),
        }
    }

    fn to_char(self) -> char {
        match self {
            Step::Right => 'R',
            Step::Up => 'U',
        }
    }

    fn from_char(c: char) -> Result<Step> {
        match c {
            'R' => Ok(Step::Right),
            'U' => Ok(Step::Up),
            other => Err(Error::InvalidStepChar(other)),
        }
    }
}

/// A finite monotone lattice path anchored at a grid origin.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePath {
    origin: GridPoint,
    steps: Vec<Step>,
}

impl LatticePath {
    pub fn new(origin: GridPoint, steps: Vec<Step>) -> Self {
        LatticePath { origin, steps }
    }

    /// Parses the `{R, U}` text form; any other character is rejected.
    pub fn parse(text: &str, origin: GridPoint) -> Result<Self> {
        let steps = text.chars().map(Step::from_char).collect::<Result<_>>()?;
        Ok(LatticePath { origin, steps })
    }

    pub fn origin(&self) -> GridPoint {
        self.origin
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn end(&self) -> GridPoint {
        self.point_at(self.steps.len())
    }

    /// The i-th visited point (0 is the origin, `len()` is the endpoint).
    pub fn point_at(&self, index: usize) -> GridPoint {
        assert!(index <= self.steps.len(), "visit index out of range");
        let mut p = self.origin;
        for step in &self.steps[..index] {
            let (dx, dy) = step.delta();
            p.x += dx;
            p.y += dy;
        }
        p
    }

    /// All visited points in order: origin plus prefix sums.
    pub fn points(&self) -> impl Iterator<Item = GridPoint> + '_ {
        let mut p = self.origin;
        std::iter::once(p).chain(self.steps.iter().map(move |step| {
            let (dx, dy) = step.delta();
            p.x += dx;
            p.y += dy;
            p
        }))
    }

    /// Same step sequence re-anchored at a new origin.
    pub fn translate(&self, to: GridPoint) -> LatticePath {
        LatticePath {
            origin: to,
            steps: self.steps.clone(),
        }
    }

    /// The sub-path formed by the first `index` steps.
    pub fn prefix_to(&self, index: usize) -> LatticePath {
        LatticePath {
            origin: self.origin,
            steps: self.steps[..index].to_vec(),
        }
    }

    /// The sub-path starting at visit `index` and running to the end.
    pub fn suffix_from(&self, index: usize) -> LatticePath {
        LatticePath {
            origin: self.point_at(index),
            steps: self.steps[index..].to_vec(),
        }
    }

    /// Appends `other`, which must start where `self` ends.
    pub fn concat(&self, other: &LatticePath) -> Result<LatticePath> {
        if other.origin != self.end() {
            return Err(Error::BadPath(format!(
                "cannot join a path ending at {} with one starting at {}",
                self.end(),
                other.origin
            )));
        }
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        Ok(LatticePath {
            origin: self.origin,
            steps,
        })
    }

    /// Number of Right steps among the first `2m`, minus `m`.
    pub fn antidiagonal_k(&self, m: u64) -> Result<i64> {
        let needed = 2 * m as usize;
        if self.steps.len() < needed {
            return Err(Error::PathTooShort {
                len: self.steps.len(),
                needed,
            });
        }
        let rights = self.steps[..needed]
            .iter()
            .filter(|s| **s == Step::Right)
            .count() as i64;
        Ok(rights - m as i64)
    }

    /// True iff some visited point lies in the segment's point set.
    pub fn intersects(&self, seg: &DiagSegment) -> bool {
        self.points().any(|p| seg.contains(p))
    }

    /// Visit index of the first point in `seg`, if any.
    pub fn first_hit_index(&self, seg: &DiagSegment) -> Option<usize> {
        self.points().position(|p| seg.contains(p))
    }

    /// Visit index of the last point in `seg`, if any.
    pub fn last_hit_index(&self, seg: &DiagSegment) -> Option<usize> {
        let mut last = None;
        for (i, p) in self.points().enumerate() {
            if seg.contains(p) {
                last = Some(i);
            }
        }
        last
    }

    /// True iff there are visit indices `i < j` with `point_i` in `a` and
    /// `point_j` in `b`. Nothing is assumed about other intersections.
    pub fn hits_in_order(&self, a: &DiagSegment, b: &DiagSegment) -> bool {
        match (self.first_hit_index(a), self.last_hit_index(b)) {
            (Some(first_a), Some(last_b)) => first_a < last_b,
            _ => false,
        }
    }

    /// Weak band containment: every visited point keeps `y - x` within
    /// `[low, high]` (touching either boundary line is allowed).
    pub fn stays_between(&self, low: i64, high: i64) -> bool {
        debug_assert!(low < high);
        self.points().all(|p| {
            let d = p.offset();
            low <= d && d <= high
        })
    }

    /// Reflects the suffix after visit `index` across the slope-1 line
    /// through that visit: every later Right becomes Up and vice versa.
    pub fn reflect_tail_at(&self, index: usize) -> Result<LatticePath> {
        if index > self.steps.len() {
            return Err(Error::PathTooShort {
                len: self.steps.len(),
                needed: index,
            });
        }
        let mut steps = self.steps.clone();
        for step in &mut steps[index..] {
            *step = step.flip();
        }
        Ok(LatticePath {
            origin: self.origin,
            steps,
        })
    }

    /// Reflects the suffix after the last intersection with `seg` across
    /// the segment's supporting line `y = x + c`; every subsequent point
    /// `(x, y)` maps to `(y - c, x + c)`.
    pub fn reflect_tail_after_last(&self, seg: &DiagSegment) -> Result<LatticePath> {
        let pivot = self
            .last_hit_index(seg)
            .ok_or(Error::NoIntersection(seg.id()))?;
        self.reflect_tail_at(pivot)
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for step in &self.steps {
            write!(f, "{}", step.to_char())?;
        }
        Ok(())
    }
}

/// Identifier of one of the nine diagonal segments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SegmentId {
    L1,
    L2,
    L3,
    L4,
    L5,
    L6,
    L7,
    L8,
    L9,
}

impl SegmentId {
    pub const ALL: [SegmentId; 9] = [
        SegmentId::L1,
        SegmentId::L2,
        SegmentId::L3,
        SegmentId::L4,
        SegmentId::L5,
        SegmentId::L6,
        SegmentId::L7,
        SegmentId::L8,
        SegmentId::L9,
    ];

    /// Offset `c` of the supporting line `y = x + c`.
    pub fn line_offset(self) -> i64 {
        match self {
            SegmentId::L1 => 1,
            SegmentId::L2 => -1,
            SegmentId::L3 => 2,
            SegmentId::L4 => -2,
            SegmentId::L5 => 1,
            SegmentId::L6 => 0,
            SegmentId::L7 => -1,
            SegmentId::L8 => 3,
            SegmentId::L9 => -3,
        }
    }
}

impl fmt::Display for SegmentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L{}", *self as u8 + 1)
    }
}

impl FromStr for SegmentId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        SegmentId::ALL
            .iter()
            .copied()
            .find(|id| id.to_string().to_ascii_lowercase() == lower)
            .ok_or_else(|| Error::InvalidParams(format!("unknown segment id {s:?}")))
    }
}

/// One of the segments `L1..L9` for parameters `(m, s)`, realized as its
/// list of lattice points on the supporting line `y = x + c`.
///
/// The lists encode the half-integer endpoints of the segment definitions
/// once and for all: a monotone unit-step path can only meet a slope-1
/// line at lattice points, so membership in the list is the whole
/// intersection story.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagSegment {
    id: SegmentId,
    m: u64,
    s: u64,
    offset: i64,
    points: Vec<GridPoint>,
}

impl DiagSegment {
    pub fn new(id: SegmentId, m: u64, s: u64) -> DiagSegment {
        DiagSegment {
            id,
            m,
            s,
            offset: id.line_offset(),
            points: segment_points(id, m, s),
        }
    }

    pub fn id(&self) -> SegmentId {
        self.id
    }

    pub fn line_offset(&self) -> i64 {
        self.offset
    }

    pub fn points(&self) -> &[GridPoint] {
        &self.points
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Point-set membership; the list is sorted by `x`, so this is a
    /// binary search.
    pub fn contains(&self, p: GridPoint) -> bool {
        self.points.binary_search_by(|q| q.x.cmp(&p.x)).is_ok() && p.offset() == self.offset
    }
}

/// Lattice points of segment `id` for parameters `(m, s)`.
///
/// Empty lists are legal (for example `L8` has no points when `m < 2`).
pub fn segment_points(id: SegmentId, m: u64, s: u64) -> Vec<GridPoint> {
    let m = m as i64;
    let s = s as i64;
    let from_range = |range: std::ops::Range<i64>, f: &dyn Fn(i64) -> GridPoint| {
        range.map(f).collect::<Vec<_>>()
    };
    match id {
        SegmentId::L1 => from_range(0..m, &|i| GridPoint::new(i, i + 1)),
        SegmentId::L2 => from_range(0..m, &|i| GridPoint::new(i + 1, i)),
        SegmentId::L3 => from_range(0..s + 1, &|j| GridPoint::new(m - 1 + j, m + 1 + j)),
        SegmentId::L4 => from_range(0..s + 1, &|j| GridPoint::new(m + 1 + j, m - 1 + j)),
        SegmentId::L5 => from_range(0..s, &|j| GridPoint::new(m + j, m + 1 + j)),
        SegmentId::L6 => from_range(0..s + 1, &|j| GridPoint::new(m + j, m + j)),
        SegmentId::L7 => from_range(0..s, &|j| GridPoint::new(m + 1 + j, m + j)),
        SegmentId::L8 => from_range(0..m - 1, &|i| GridPoint::new(i, i + 3)),
        SegmentId::L9 => from_range(0..m - 1, &|i| GridPoint::new(i + 3, i)),
    }
}

/// A two-leg path family: all paths `(0,0) -> mid -> end` where
/// `mid = (m+i, m-i)` and `end = (m+s-i, m+s+i)` for level `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathFamilySpec {
    pub m: u64,
    pub s: u64,
    pub level: i64,
}

impl PathFamilySpec {
    pub fn new(m: u64, s: u64, level: i64) -> Result<Self> {
        if !(-2..=2).contains(&level) {
            return Err(Error::LevelOutOfRange(level));
        }
        Ok(PathFamilySpec { m, s, level })
    }

    pub fn mid(&self) -> GridPoint {
        GridPoint::new(self.m as i64 + self.level, self.m as i64 - self.level)
    }

    pub fn end(&self) -> GridPoint {
        GridPoint::new(
            (self.m + self.s) as i64 - self.level,
            (self.m + self.s) as i64 + self.level,
        )
    }

    /// `C(2m, m+i) * C(2s, s-2i)`; zero when either leg is unreachable.
    pub fn cardinality(&self) -> BigNat {
        binomial(2 * self.m, self.m as i64 + self.level)
            * binomial(2 * self.s, self.s as i64 - 2 * self.level)
    }
}

/// Number of monotone paths in the rectangle spanned by the two corners.
pub fn path_space_size(from: GridPoint, to: GridPoint) -> Result<BigNat> {
    let dx = to.x - from.x;
    let dy = to.y - from.y;
    if dx < 0 || dy < 0 {
        return Err(Error::InvalidRectangle { from, to });
    }
    Ok(binomial((dx + dy) as u64, dx))
}

/// In-place lexicographic stepper over all step sequences with a fixed
/// number of Rights and Ups, starting from `R..RU..U`.
pub(crate) struct StepSeq {
    buf: Vec<Step>,
    exhausted: bool,
}

impl StepSeq {
    pub(crate) fn new(rights: usize, ups: usize) -> StepSeq {
        let mut buf = vec![Step::Right; rights];
        buf.extend(std::iter::repeat_n(Step::Up, ups));
        StepSeq {
            buf,
            exhausted: false,
        }
    }

    pub(crate) fn current(&self) -> &[Step] {
        &self.buf
    }

    /// Standard next-permutation on the two-symbol alphabet with R < U.
    /// Returns false once the last (all-Up-first) sequence has been seen.
    pub(crate) fn advance(&mut self) -> bool {
        if self.exhausted {
            return false;
        }
        let buf = &mut self.buf;
        let n = buf.len();
        // Largest i with buf[i] < buf[i+1].
        let Some(i) = (0..n.saturating_sub(1))
            .rev()
            .find(|&i| buf[i] < buf[i + 1])
        else {
            self.exhausted = true;
            return false;
        };
        // Largest j > i with buf[j] > buf[i]; swap and reverse the suffix.
        let j = (i + 1..n).rev().find(|&j| buf[j] > buf[i]).unwrap();
        buf.swap(i, j);
        buf[i + 1..].reverse();
        true
    }
}

/// Calls `f` on every step sequence with the given composition, in
/// lexicographic order, without allocating per sequence.
pub(crate) fn for_each_seq(rights: usize, ups: usize, mut f: impl FnMut(&[Step])) {
    let mut seq = StepSeq::new(rights, ups);
    loop {
        f(seq.current());
        if !seq.advance() {
            break;
        }
    }
}

/// Iterator over all monotone paths of a rectangle, in lexicographic
/// order with `R < U`.
pub struct PathIter {
    origin: GridPoint,
    seq: Option<StepSeq>,
}

impl Iterator for PathIter {
    type Item = LatticePath;

    fn next(&mut self) -> Option<LatticePath> {
        let seq = self.seq.as_mut()?;
        let path = LatticePath::new(self.origin, seq.current().to_vec());
        if !seq.advance() {
            self.seq = None;
        }
        Some(path)
    }
}

/// Enumerates every monotone path `from -> to` exactly once, first path
/// all-Rights-first, yielding `C(dx+dy, dx)` paths in total.
pub fn enumerate_paths(from: GridPoint, to: GridPoint) -> Result<PathIter> {
    let dx = to.x - from.x;
    let dy = to.y - from.y;
    if dx < 0 || dy < 0 {
        return Err(Error::InvalidRectangle { from, to });
    }
    Ok(PathIter {
        origin: from,
        seq: Some(StepSeq::new(dx as usize, dy as usize)),
    })
}

/// Iterator over a two-leg family: every head `(0,0) -> mid` concatenated
/// with every tail `mid -> end`, heads outermost, both legs lexicographic.
pub struct FamilyIter {
    spec: PathFamilySpec,
    heads: Option<PathIter>,
    current_head: Option<LatticePath>,
    tails: Option<PathIter>,
}

impl FamilyIter {
    fn fresh_tails(spec: &PathFamilySpec) -> Option<PathIter> {
        enumerate_paths(spec.mid(), spec.end()).ok()
    }
}

impl Iterator for FamilyIter {
    type Item = LatticePath;

    fn next(&mut self) -> Option<LatticePath> {
        loop {
            if self.current_head.is_none() {
                self.current_head = self.heads.as_mut()?.next();
                self.current_head.as_ref()?;
                self.tails = Self::fresh_tails(&self.spec);
            }
            match self.tails.as_mut().and_then(|t| t.next()) {
                Some(tail) => {
                    let head = self.current_head.as_ref().unwrap();
                    return Some(head.concat(&tail).expect("legs join at mid"));
                }
                None => self.current_head = None,
            }
        }
    }
}

/// Enumerates a path family. Unreachable mid or end points yield an empty
/// iteration, matching the family's zero cardinality.
pub fn enumerate_family(spec: &PathFamilySpec) -> FamilyIter {
    FamilyIter {
        spec: *spec,
        heads: enumerate_paths(GridPoint::ORIGIN, spec.mid()).ok(),
        current_head: None,
        tails: None,
    }
}
