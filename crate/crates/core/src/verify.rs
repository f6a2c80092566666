//! Campaign runner: executes the identity and interpretation claims over
//! parameter ranges with the exhaustive and DP engines and emits
//! deterministic, machine-readable reports.
//!
//! Ground truth for every expected value is the direct formula; the
//! other formulas, the enumeration counts and the DP counts are all
//! measured against it, never only against each other. When the two
//! engines of a `Both` campaign disagree, the runner bisects the
//! lexicographic path space to name the first path counted by exactly
//! one engine.

use serde::{Deserialize, Serialize};

use crate::census::{self, CountPredicate};
use crate::exact::{binomial, super_catalan_direct, BigNat, SignedBig};
use crate::interp::{self, OrderVariant};
use crate::involution;
use crate::lattice::{
    enumerate_family, enumerate_paths, DiagSegment, GridPoint, LatticePath, PathFamilySpec,
    SegmentId, Step,
};
use crate::{Error, Result, DEFAULT_ENUM_BUDGET};

/// Detail prefix marking a case that failed because the enumeration
/// budget was exceeded rather than because a value disagreed.
pub const RESOURCE_DETAIL_PREFIX: &str = "resource: ";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CampaignKind {
    /// Three-way agreement of the formula routes.
    Identities,
    /// Involution, sign-reversal, fixed-point census and signed sum.
    Involution,
    /// The shift `s <= 3` path count against the formula.
    SmallShift,
    /// The shift-4 count; both order variants run and one is resolved.
    Shift4,
    /// Injectivity and image characterization of the reflection maps.
    Injections,
    /// DP censuses against brute-force censuses, feature by feature.
    CensusCrossCheck,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Engine {
    Brute,
    Dp,
    Both,
}

/// Inclusive integer range, the CLI's `a..b` flag grammar.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InclusiveRange {
    pub lo: u64,
    pub hi: u64,
}

impl InclusiveRange {
    pub fn new(lo: u64, hi: u64) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidRange(format!("{lo}..{hi} is empty")));
        }
        Ok(InclusiveRange { lo, hi })
    }

    pub fn single(value: u64) -> Self {
        InclusiveRange {
            lo: value,
            hi: value,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> {
        self.lo..=self.hi
    }
}

impl std::fmt::Display for InclusiveRange {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

impl std::str::FromStr for InclusiveRange {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::InvalidRange(format!("{text:?} (expected \"a..b\" or \"a\")"));
        if let Some((lo, hi)) = text.split_once("..") {
            let lo = lo.trim().parse().map_err(|_| bad())?;
            let hi = hi.trim().parse().map_err(|_| bad())?;
            InclusiveRange::new(lo, hi)
        } else {
            let v = text.trim().parse().map_err(|_| bad())?;
            Ok(InclusiveRange::single(v))
        }
    }
}

fn default_budget() -> u64 {
    DEFAULT_ENUM_BUDGET
}

/// A verification campaign over rectangular `(m, s)` ranges. Kinds that
/// work with `(m, n)` pairs read `n = m + s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Campaign {
    pub kind: CampaignKind,
    pub m_range: InclusiveRange,
    pub s_range: InclusiveRange,
    pub engine: Engine,
    #[serde(default = "default_budget")]
    pub budget: u64,
}

impl Campaign {
    pub fn new(kind: CampaignKind, m_range: InclusiveRange, s_range: InclusiveRange) -> Self {
        Campaign {
            kind,
            m_range,
            s_range,
            engine: Engine::Both,
            budget: DEFAULT_ENUM_BUDGET,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseResult {
    pub m: u64,
    pub s: u64,
    #[serde(with = "decimal")]
    pub expected: SignedBig,
    #[serde(with = "decimal")]
    pub actual: SignedBig,
    pub pass: bool,
    pub detail: String,
}

impl CaseResult {
    pub fn is_resource_failure(&self) -> bool {
        self.detail.starts_with(RESOURCE_DETAIL_PREFIX)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub passed: u64,
    pub failed: u64,
    pub resolved_variant: Option<OrderVariant>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub campaign: Campaign,
    pub cases: Vec<CaseResult>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn has_resource_failure(&self) -> bool {
        self.cases.iter().any(CaseResult::is_resource_failure)
    }
}

mod decimal {
    use super::SignedBig;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        value: &SignedBig,
        ser: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&value.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        de: D,
    ) -> std::result::Result<SignedBig, D::Error> {
        let text = String::deserialize(de)?;
        text.parse().map_err(D::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

/// Serializes a report with stable field order and decimal numbers.
/// Identical reports produce byte-identical output.
pub fn serialize_report(report: &VerificationReport, format: ReportFormat) -> Result<Vec<u8>> {
    match format {
        ReportFormat::Json => {
            let mut bytes =
                serde_json::to_vec_pretty(report).map_err(|e| Error::Serialize(e.to_string()))?;
            bytes.push(b'\n');
            Ok(bytes)
        }
        ReportFormat::Csv => {
            let mut writer = csv::Writer::from_writer(Vec::new());
            writer
                .write_record(["m", "s", "expected", "actual", "pass", "detail"])
                .map_err(|e| Error::Serialize(e.to_string()))?;
            for case in &report.cases {
                writer
                    .write_record([
                        case.m.to_string(),
                        case.s.to_string(),
                        case.expected.to_string(),
                        case.actual.to_string(),
                        case.pass.to_string(),
                        case.detail.clone(),
                    ])
                    .map_err(|e| Error::Serialize(e.to_string()))?;
            }
            writer
                .into_inner()
                .map_err(|e| Error::Serialize(e.to_string()))
        }
    }
}

pub fn parse_report_json(bytes: &[u8]) -> Result<VerificationReport> {
    serde_json::from_slice(bytes).map_err(|e| Error::Serialize(e.to_string()))
}

/// Runs a campaign. Expected values always come from the direct formula.
pub fn run_campaign(campaign: &Campaign) -> Result<VerificationReport> {
    validate_campaign(campaign)?;
    let mut cases = Vec::new();
    let mut resolved_variant = None;
    match campaign.kind {
        CampaignKind::Identities => {
            for_cases(campaign, &mut cases, identities_case)?;
        }
        CampaignKind::Involution => {
            for_cases(campaign, &mut cases, involution_case)?;
        }
        CampaignKind::SmallShift => {
            for_cases(campaign, &mut cases, small_shift_case)?;
        }
        CampaignKind::Shift4 => {
            let (shift_cases, resolved) = shift4_cases(campaign)?;
            cases = shift_cases;
            resolved_variant = resolved;
        }
        CampaignKind::Injections => {
            for_cases(campaign, &mut cases, injections_case)?;
        }
        CampaignKind::CensusCrossCheck => {
            for_cases(campaign, &mut cases, census_case)?;
        }
    }
    let passed = cases.iter().filter(|c| c.pass).count() as u64;
    let failed = cases.len() as u64 - passed;
    Ok(VerificationReport {
        campaign: *campaign,
        cases,
        summary: Summary {
            passed,
            failed,
            resolved_variant,
        },
    })
}

fn validate_campaign(campaign: &Campaign) -> Result<()> {
    let check_range = |r: &InclusiveRange, name: &str| {
        if r.lo > r.hi {
            return Err(Error::InvalidCampaign(format!("{name} range {r} is empty")));
        }
        Ok(())
    };
    check_range(&campaign.m_range, "m")?;
    check_range(&campaign.s_range, "s")?;
    let s = &campaign.s_range;
    match campaign.kind {
        CampaignKind::SmallShift if s.hi > 3 => Err(Error::InvalidCampaign(format!(
            "small-shift campaigns need s <= 3, got {s}"
        ))),
        CampaignKind::Shift4 if (s.lo, s.hi) != (4, 4) => Err(Error::InvalidCampaign(format!(
            "shift4 campaigns run at s = 4 exactly, got {s}"
        ))),
        CampaignKind::Injections | CampaignKind::CensusCrossCheck if s.hi > 4 => {
            Err(Error::InvalidCampaign(format!(
                "{:?} campaigns need s <= 4, got {s}",
                campaign.kind
            )))
        }
        _ => Ok(()),
    }
}

fn for_cases(
    campaign: &Campaign,
    cases: &mut Vec<CaseResult>,
    f: impl Fn(&Campaign, u64, u64) -> Result<CaseResult>,
) -> Result<()> {
    for m in campaign.m_range.iter() {
        for s in campaign.s_range.iter() {
            cases.push(f(campaign, m, s)?);
        }
    }
    Ok(())
}

fn resource_case(m: u64, s: u64, expected: SignedBig, err: &Error) -> CaseResult {
    CaseResult {
        m,
        s,
        expected,
        actual: SignedBig::from(0),
        pass: false,
        detail: format!("{RESOURCE_DETAIL_PREFIX}{err}"),
    }
}

fn expected_value(m: u64, s: u64) -> Result<SignedBig> {
    Ok(SignedBig::from(super_catalan_direct(m, m + s)?))
}

fn identities_case(_c: &Campaign, m: u64, s: u64) -> Result<CaseResult> {
    let n = m + s;
    let expected = expected_value(m, s)?;
    let vonszily = crate::exact::super_catalan_vonszily(m, n);
    let shifted = crate::exact::super_catalan_shifted(m, s);
    let (actual, pass, detail) = match (&vonszily, &shifted) {
        (Ok(v), Ok(w)) => {
            let v = SignedBig::from(v.clone());
            let w = SignedBig::from(w.clone());
            let pass = v == expected && w == expected;
            let detail = if pass {
                String::new()
            } else {
                format!("vonszily={v} shifted={w}")
            };
            (v, pass, detail)
        }
        (v, w) => {
            let detail = format!("vonszily={v:?} shifted={w:?}");
            (SignedBig::from(0), false, detail)
        }
    };
    Ok(CaseResult {
        m,
        s,
        expected,
        actual,
        pass,
        detail,
    })
}

fn involution_case(c: &Campaign, m: u64, s: u64) -> Result<CaseResult> {
    let n = m + s;
    let expected = expected_value(m, s)?;

    let signed = match involution::signed_path_sum_with_budget(m, n, c.budget) {
        Ok(v) => v,
        Err(err @ Error::BudgetExceeded { .. }) => return Ok(resource_case(m, s, expected, &err)),
        Err(err) => return Err(err),
    };
    let census = involution::fixed_point_census_with_budget(m, n, c.budget)?;

    let mut failures: Vec<String> = Vec::new();
    if signed != expected {
        failures.push(format!("signed sum {signed}"));
    }
    for k in -(m as i64)..=m as i64 {
        let formula = involution::fixed_census_expected(m, n, k);
        let counted = census.get(&k).cloned().unwrap_or_default();
        if counted != formula {
            failures.push(format!("census[{k}]={counted} formula={formula}"));
        }
    }

    // Pointwise involution properties over the same path space.
    let half = (m + n) as i64;
    let to = GridPoint::new(half, half);
    for p in enumerate_paths(GridPoint::ORIGIN, to)? {
        let q = involution::apply(&p, m)?;
        if involution::apply(&q, m)? != p {
            failures.push(format!("not involutive at {p}"));
            break;
        }
        let fixed = involution::is_fixed(&p, m)?;
        if (q == p) != fixed {
            failures.push(format!("fixed-point mismatch at {p}"));
            break;
        }
        if !fixed {
            let dk = q.antidiagonal_k(m)? - p.antidiagonal_k(m)?;
            if dk.abs() != 1 {
                failures.push(format!("sign not reversed at {p}"));
                break;
            }
        }
    }

    Ok(CaseResult {
        m,
        s,
        expected,
        actual: signed,
        pass: failures.is_empty(),
        detail: failures.join("; "),
    })
}

fn small_shift_case(c: &Campaign, m: u64, s: u64) -> Result<CaseResult> {
    let expected = expected_value(m, s)?;
    let brute = match c.engine {
        Engine::Dp => None,
        _ => match interp::count_small_shift_with_budget(m, s, c.budget) {
            Ok(v) => Some(SignedBig::from(v)),
            Err(err @ Error::BudgetExceeded { .. }) => {
                return Ok(resource_case(m, s, expected, &err))
            }
            Err(err) => return Err(err),
        },
    };
    let dp = match c.engine {
        Engine::Brute => None,
        _ => Some(SignedBig::from(census::fast_count(
            m,
            s,
            CountPredicate::SmallShift,
        )?)),
    };

    let actual = brute.clone().or_else(|| dp.clone()).unwrap();
    let mut pass = actual == expected;
    let mut detail = String::new();
    if let (Some(b), Some(d)) = (&brute, &dp) {
        if b != d {
            pass = false;
            let witness = find_first_disagreement(
                m,
                s,
                &|p| interp::small_shift_predicate(p, m, s).unwrap_or(false),
                CountPredicate::SmallShift,
            );
            detail = format!(
                "engines disagree: brute={b} dp={d} witness={}",
                witness.unwrap_or_else(|| "<none>".into())
            );
        } else if d != &expected {
            pass = false;
        }
    } else if let Some(d) = &dp {
        pass = d == &expected;
    }
    if !pass && detail.is_empty() {
        detail = "count differs from the direct formula".into();
    }
    Ok(CaseResult {
        m,
        s,
        expected,
        actual,
        pass,
        detail,
    })
}

fn shift4_count(
    c: &Campaign,
    m: u64,
    variant: OrderVariant,
) -> Result<std::result::Result<(SignedBig, Option<String>), Error>> {
    // Inner Ok carries (count, engine-mismatch detail); inner Err is a
    // budget violation to be reported per-case.
    let brute = match c.engine {
        Engine::Dp => None,
        _ => match interp::count_shift4_with_budget(m, variant, c.budget) {
            Ok(v) => Some(SignedBig::from(v)),
            Err(err @ Error::BudgetExceeded { .. }) => return Ok(Err(err)),
            Err(err) => return Err(err),
        },
    };
    let dp = match c.engine {
        Engine::Brute => None,
        _ => Some(SignedBig::from(census::fast_count(
            m,
            4,
            CountPredicate::Shift4(variant),
        )?)),
    };
    let count = brute.clone().or_else(|| dp.clone()).unwrap();
    let mismatch = match (&brute, &dp) {
        (Some(b), Some(d)) if b != d => {
            let witness = find_first_disagreement(
                m,
                4,
                &|p| interp::shift4_predicate(p, m, variant).unwrap_or(false),
                CountPredicate::Shift4(variant),
            );
            Some(format!(
                "engines disagree on {variant}: brute={b} dp={d} witness={}",
                witness.unwrap_or_else(|| "<none>".into())
            ))
        }
        _ => None,
    };
    Ok(Ok((count, mismatch)))
}

fn shift4_cases(c: &Campaign) -> Result<(Vec<CaseResult>, Option<OrderVariant>)> {
    let mut cases = Vec::new();
    let mut stated_all = true;
    let mut negated_all = true;
    for m in c.m_range.iter() {
        let expected = expected_value(m, 4)?;
        let stated = shift4_count(c, m, OrderVariant::AsStated)?;
        let negated = shift4_count(c, m, OrderVariant::OrderNegated)?;
        let (case, stated_ok, negated_ok) = match (stated, negated) {
            (Ok((a, a_mis)), Ok((b, b_mis))) => {
                let stated_ok = a == expected && a_mis.is_none();
                let negated_ok = b == expected && b_mis.is_none();
                let pass = (a == expected || b == expected) && a_mis.is_none() && b_mis.is_none();
                let mut detail = format!("as-stated={a} order-negated={b}");
                for extra in [a_mis, b_mis].into_iter().flatten() {
                    detail.push_str("; ");
                    detail.push_str(&extra);
                }
                let actual = if a == expected { a } else { b };
                (
                    CaseResult {
                        m,
                        s: 4,
                        expected,
                        actual,
                        pass,
                        detail,
                    },
                    stated_ok,
                    negated_ok,
                )
            }
            (Err(err), _) | (_, Err(err)) => (resource_case(m, 4, expected, &err), false, false),
        };
        stated_all &= stated_ok;
        negated_all &= negated_ok;
        cases.push(case);
    }
    let resolved = match (stated_all, negated_all) {
        (true, false) => Some(OrderVariant::AsStated),
        (false, true) => Some(OrderVariant::OrderNegated),
        _ => None,
    };
    Ok((cases, resolved))
}

/// The resolution protocol: brute force at `m = 2..=6` and return the
/// unique variant that reproduces the formula at every point.
pub fn resolve_order_variant() -> Result<OrderVariant> {
    let campaign = Campaign {
        kind: CampaignKind::Shift4,
        m_range: InclusiveRange::new(2, 6)?,
        s_range: InclusiveRange::single(4),
        engine: Engine::Brute,
        budget: DEFAULT_ENUM_BUDGET,
    };
    run_campaign(&campaign)?
        .summary
        .resolved_variant
        .ok_or_else(|| Error::InvalidCampaign("resolution campaign was not decisive".into()))
}

fn injections_case(c: &Campaign, m: u64, s: u64) -> Result<CaseResult> {
    let path0_size = PathFamilySpec::new(m, s, 0)?.cardinality();
    if path0_size > BigNat::from(c.budget) {
        let expected = expected_value(m, s)?;
        let err = Error::BudgetExceeded {
            needed: path0_size,
            budget: c.budget,
        };
        return Ok(resource_case(m, s, expected, &err));
    }
    if s <= 3 {
        injections_level1_case(m, s)
    } else {
        injections_level2_case(m)
    }
}

fn injections_level1_case(m: u64, s: u64) -> Result<CaseResult> {
    use std::collections::BTreeSet;

    let mut domain = 0u64;
    let mut images: [BTreeSet<LatticePath>; 2] = [BTreeSet::new(), BTreeSet::new()];
    for (slot, level) in [-1i64, 1].into_iter().enumerate() {
        let spec = PathFamilySpec::new(m, s, level)?;
        for member in enumerate_family(&spec) {
            domain += 1;
            let out = interp::inject_level1(&member, m, s)?;
            interp::validate_path0(&out, m, s)?;
            images[slot].insert(out);
        }
    }
    let expected = SignedBig::from(domain);
    let image_count = images[0].len() + images[1].len();

    // Target sets: level -1 covers the L1&L4 hitters, level +1 the
    // L2&L3 hitters.
    let hit_pair = |p: &LatticePath, a: SegmentId, b: SegmentId| {
        p.intersects(&DiagSegment::new(a, m, s)) && p.intersects(&DiagSegment::new(b, m, s))
    };
    let mut targets: [BTreeSet<LatticePath>; 2] = [BTreeSet::new(), BTreeSet::new()];
    for p in enumerate_family(&PathFamilySpec::new(m, s, 0)?) {
        if hit_pair(&p, SegmentId::L1, SegmentId::L4) {
            targets[0].insert(p.clone());
        }
        if hit_pair(&p, SegmentId::L2, SegmentId::L3) {
            targets[1].insert(p);
        }
    }

    let mut failures = Vec::new();
    let injective = image_count as u64 == domain && images[0].is_disjoint(&images[1]);
    if !injective {
        failures.push("map is not injective".to_string());
    }
    for (slot, name) in [(0usize, "level -1"), (1, "level +1")] {
        if images[slot] != targets[slot] {
            let witness = images[slot]
                .symmetric_difference(&targets[slot])
                .next()
                .map(|p| p.to_string())
                .unwrap_or_default();
            failures.push(format!("{name} image mismatch, witness={witness}"));
        }
    }
    if !targets[0].is_disjoint(&targets[1]) {
        failures.push("excluded sets overlap".to_string());
    }

    Ok(CaseResult {
        m,
        s,
        expected,
        actual: SignedBig::from(image_count as u64),
        pass: failures.is_empty(),
        detail: failures.join("; "),
    })
}

fn injections_level2_case(m: u64) -> Result<CaseResult> {
    use std::collections::BTreeSet;

    let expected = SignedBig::from(binomial(2 * m, m as i64 - 2) + binomial(2 * m, m as i64 + 2));
    let actual = SignedBig::from(interp::count_quad_l1_first(m)?);
    let mut failures = Vec::new();
    if actual != expected {
        failures.push("level ±2 count does not match the quad-ordered set".to_string());
    }

    // The double-reflection maps themselves must land in the level-0
    // family, pairwise distinct.
    let mut images: BTreeSet<LatticePath> = BTreeSet::new();
    for level in [-2i64, 2] {
        let spec = PathFamilySpec::new(m, 4, level)?;
        for member in enumerate_family(&spec) {
            let out = interp::map_level2(&member, m)?;
            interp::validate_path0(&out, m, 4)?;
            if !images.insert(out) {
                failures.push("double reflection collided".to_string());
            }
        }
    }
    if SignedBig::from(images.len() as u64) != expected {
        failures.push("double reflection lost members".to_string());
    }

    Ok(CaseResult {
        m,
        s: 4,
        expected,
        actual,
        pass: failures.is_empty(),
        detail: failures.join("; "),
    })
}

fn census_case(c: &Campaign, m: u64, s: u64) -> Result<CaseResult> {
    let head_size = binomial(2 * m, m as i64);
    let tail_size = binomial(2 * s, s as i64);
    let expected = SignedBig::from(&head_size * &tail_size);
    let budget = BigNat::from(c.budget);
    if head_size > budget || tail_size > budget {
        let err = Error::BudgetExceeded {
            needed: head_size.max(tail_size),
            budget: c.budget,
        };
        return Ok(resource_case(m, s, expected, &err));
    }

    let head_dp = census::head_census_dp(m);
    let tail_dp = census::tail_census_dp(s)?;
    let head_brute = census::head_census_brute(m);
    let tail_brute = census::tail_census_brute(s)?;

    let mut failures = Vec::new();
    if head_dp != head_brute {
        let witness = head_dp
            .classes()
            .find(|(f, c)| head_brute.count(f) != **c)
            .map(|(f, _)| format!("{f:?}"))
            .unwrap_or_default();
        failures.push(format!("head census mismatch at {witness}"));
    }
    if tail_dp != tail_brute {
        let witness = tail_dp
            .classes()
            .find(|(f, c)| tail_brute.count(f) != **c)
            .map(|(f, _)| format!("{f:?}"))
            .unwrap_or_default();
        failures.push(format!("tail census mismatch at {witness}"));
    }
    if head_dp.total() != &head_size || tail_dp.total() != &tail_size {
        failures.push("census totals do not match the binomial counts".to_string());
    }

    Ok(CaseResult {
        m,
        s,
        expected,
        actual: SignedBig::from(head_dp.total() * tail_dp.total()),
        pass: failures.is_empty(),
        detail: failures.join("; "),
    })
}

/// Counts, by enumeration, the level-0 members extending `prefix` that
/// satisfy `pred`. Paths that miss `(m, m)` are outside the universe.
fn brute_count_from_prefix(
    m: u64,
    s: u64,
    prefix: &[Step],
    pred: &dyn Fn(&LatticePath) -> bool,
) -> BigNat {
    let total = (m + s) as usize;
    let rights_used = prefix.iter().filter(|st| **st == Step::Right).count();
    let ups_used = prefix.len() - rights_used;
    if rights_used > total || ups_used > total {
        return BigNat::from(0u32);
    }
    let mid = GridPoint::new(m as i64, m as i64);
    let mut count = 0u64;
    crate::lattice::for_each_seq(total - rights_used, total - ups_used, |suffix| {
        let mut steps = prefix.to_vec();
        steps.extend_from_slice(suffix);
        let path = LatticePath::new(GridPoint::ORIGIN, steps);
        if path.point_at(2 * m as usize) == mid && pred(&path) {
            count += 1;
        }
    });
    BigNat::from(count)
}

/// DP count of level-0 members extending `prefix` that satisfy `pred`,
/// by replaying the prefix into a census state and walking the rest.
fn dp_count_from_prefix(m: u64, s: u64, prefix: &[Step], pred: CountPredicate) -> Result<BigNat> {
    let head_len = 2 * m as usize;
    let total_len = 2 * (m + s) as usize;
    debug_assert!(prefix.len() <= total_len);
    if prefix.len() <= head_len {
        let (offset, flags) = census::simulate_head_prefix(prefix);
        let head_final = census::head_walk(offset, flags, (head_len - prefix.len()) as u64);
        let tails = census::tail_census_dp(s)?;
        let mut total = BigNat::from(0u32);
        for (bits, hcount) in head_final {
            let hf = census::head_features_from_bits(bits);
            for (tf, tcount) in tails.classes() {
                if pred.joint(&hf, tf) {
                    total += hcount.clone() * tcount;
                }
            }
        }
        Ok(total)
    } else {
        let (head_part, tail_part) = prefix.split_at(head_len);
        let (head_offset, head_flags) = census::simulate_head_prefix(head_part);
        if head_offset != 0 {
            return Ok(BigNat::from(0u32));
        }
        let hf = census::head_features_from_bits(head_flags);
        let (tail_offset, tail_flags) = census::simulate_tail_prefix(tail_part);
        let tail_final =
            census::tail_walk(tail_offset, tail_flags, (total_len - prefix.len()) as u64);
        let mut total = BigNat::from(0u32);
        for (bits, tcount) in tail_final {
            let tf = census::tail_features_from_bits(bits);
            if pred.joint(&hf, &tf) {
                total += tcount;
            }
        }
        Ok(total)
    }
}

/// Bisects the lexicographic path space to find the first full-length
/// path on which the enumeration route and the DP route disagree.
/// Returns `None` when the two engines agree everywhere.
pub fn find_first_disagreement(
    m: u64,
    s: u64,
    brute_pred: &dyn Fn(&LatticePath) -> bool,
    dp_pred: CountPredicate,
) -> Option<String> {
    let total_len = 2 * (m + s) as usize;
    // A DP error (bad shift) simply means "no witness".
    fn check(
        m: u64,
        s: u64,
        prefix: &[Step],
        brute_pred: &dyn Fn(&LatticePath) -> bool,
        dp_pred: CountPredicate,
    ) -> bool {
        let brute = brute_count_from_prefix(m, s, prefix, brute_pred);
        match dp_count_from_prefix(m, s, prefix, dp_pred) {
            Ok(dp) => brute != dp,
            Err(_) => false,
        }
    }

    let mut prefix: Vec<Step> = Vec::new();
    if !check(m, s, &prefix, brute_pred, dp_pred) {
        return None;
    }
    while prefix.len() < total_len {
        let mut descended = false;
        for step in [Step::Right, Step::Up] {
            prefix.push(step);
            if check(m, s, &prefix, brute_pred, dp_pred) {
                descended = true;
                break;
            }
            prefix.pop();
        }
        if !descended {
            return None;
        }
    }
    Some(LatticePath::new(GridPoint::ORIGIN, prefix).to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_parsing() {
        assert_eq!(
            "0..6".parse::<InclusiveRange>().unwrap(),
            InclusiveRange::new(0, 6).unwrap()
        );
        assert_eq!(
            "5".parse::<InclusiveRange>().unwrap(),
            InclusiveRange::single(5)
        );
        assert!("6..0".parse::<InclusiveRange>().is_err());
        assert!("a..b".parse::<InclusiveRange>().is_err());
        assert_eq!(InclusiveRange::new(2, 4).unwrap().to_string(), "2..4");
    }

    #[test]
    fn campaign_validation() {
        let bad = Campaign::new(
            CampaignKind::SmallShift,
            InclusiveRange::single(1),
            InclusiveRange::new(0, 4).unwrap(),
        );
        assert!(matches!(run_campaign(&bad), Err(Error::InvalidCampaign(_))));
        let bad = Campaign::new(
            CampaignKind::Shift4,
            InclusiveRange::single(1),
            InclusiveRange::single(3),
        );
        assert!(run_campaign(&bad).is_err());
    }
}
