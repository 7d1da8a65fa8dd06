//! Exact power indices from swing tallies.
//!
//! A [`SwingProfile`] counts, for every element and every cardinality, the
//! sets in which that element is critical. Shapley-Shubik and the Banzhaf
//! variants are pure functions of a profile; Deegan-Packel needs the family
//! of minimal sets. Profiles come from three independent producers: an
//! exhaustive truth table, a known minimal-set family, and a
//! pseudo-polynomial count for weighted threshold games.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::enumerate::{
    check_cap, enumerate_marco, families_from_table, tabulate, BruteConfig, TruthTable, MARCO_CAP,
};
use crate::error::{Error, Result};
use crate::family::{FamilyKind, MinimalFamily};
use crate::instances::{ExplicitFamily, Instance, Threshold};
use crate::minimal::Algorithm;
use crate::oracle::{Oracle, Predicate as _};
use crate::subset::{GroundSet, Subset};

/// Per-element, per-cardinality counts of critical sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwingProfile {
    ground: GroundSet,
    /// `by_size[i][s]`: sets of cardinality `s` in which element `i` is critical.
    by_size: Vec<Vec<u64>>,
    /// Sets containing at least one critical element, when known.
    crit_containing: Option<u64>,
}

impl SwingProfile {
    fn empty(ground: GroundSet) -> Self {
        SwingProfile {
            ground,
            by_size: vec![vec![0; ground.size() + 1]; ground.size()],
            crit_containing: Some(0),
        }
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn sigma(&self) -> Vec<u64> {
        self.by_size.iter().map(|row| row.iter().sum()).collect()
    }

    pub fn by_size(&self) -> &[Vec<u64>] {
        &self.by_size
    }

    pub fn crit_containing_sets(&self) -> Option<u64> {
        self.crit_containing
    }

    fn record(&mut self, s: Subset, critical: Subset) {
        if critical.is_empty() {
            return;
        }
        let size = s.len();
        for i in critical.indices() {
            self.by_size[i][size] += 1;
        }
        if let Some(c) = self.crit_containing.as_mut() {
            *c += 1;
        }
    }
}

pub fn profile_from_table(table: &TruthTable) -> SwingProfile {
    let mut profile = SwingProfile::empty(table.ground());
    for s in table.masks() {
        if !table.holds(s) {
            continue;
        }
        let critical = s
            .indices()
            .filter(|&i| !table.holds(s.without(i)))
            .fold(Subset::EMPTY, |acc, i| acc.with(i));
        profile.record(s, critical);
    }
    profile
}

/// Tabulates the oracle over all masks, then counts critical elements.
pub fn swing_profile_brute(oracle: &Oracle, config: BruteConfig) -> Result<SwingProfile> {
    Ok(profile_from_table(&tabulate(oracle, config)?))
}

/// Profile of the simple game whose minimal winning sets are `family`.
///
/// The critical elements of `S` are exactly the elements shared by every
/// member contained in `S`, so no predicate evaluation is needed.
pub fn swing_profile_from_family(family: &MinimalFamily, cap: usize) -> Result<SwingProfile> {
    if family.kind() != FamilyKind::Msp {
        return Err(Error::InapplicableMethod {
            method: "family",
            reason: "profiles are built from minimal sets, not minimal breaks".into(),
        });
    }
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let g = family.ground();
    check_cap(g, cap)?;
    let mut profile = SwingProfile::empty(g);
    for bits in 0..g.power_set_len() {
        let s = Subset(bits);
        let mut shared = None;
        for &z in family.members() {
            if z.is_subset_of(s) {
                shared = Some(shared.map_or(z, |acc| acc & z));
            }
        }
        if let Some(critical) = shared {
            profile.record(s, critical);
        }
    }
    Ok(profile)
}

/// Product of ground size and quota above which the counting table is refused.
pub const DP_TABLE_LIMIT: u64 = 1 << 24;

/// Swing counts for a weighted threshold game without enumerating subsets.
///
/// Counts subsets of N by (cardinality, weight) for weights below the quota,
/// then removes each element's contribution in turn: element `i` is
/// critical in `T ∪ {i}` iff `quota − w_i ≤ w(T) < quota`. The number of
/// sets containing a critical element needs a full table and is filled in
/// only when the ground set is within `brute_cap`.
pub fn swing_profile_threshold_dp(spec: &Threshold, brute_cap: usize) -> Result<SwingProfile> {
    let g = spec.ground();
    let m = g.size();
    let quota = spec.quota();
    if (m as u64 + 1).saturating_mul(quota) > DP_TABLE_LIMIT {
        return Err(Error::InapplicableMethod {
            method: "threshold-dp",
            reason: format!("counting table of {} x {quota} entries is too large", m + 1),
        });
    }
    let q = quota as usize;
    let weights: Vec<usize> = spec
        .weights()
        .iter()
        .map(|&w| usize::try_from(w).unwrap_or(usize::MAX))
        .collect();

    // all[k][w]: subsets of N with |T| = k and weight w < quota
    let mut all = vec![vec![0u64; q]; m + 1];
    all[0][0] = 1;
    for (placed, &wi) in weights.iter().enumerate() {
        if wi >= q {
            continue;
        }
        for k in (1..=placed + 1).rev() {
            let (lower, upper) = all.split_at_mut(k);
            let (prev, row) = (&lower[k - 1], &mut upper[0]);
            for w in (wi..q).rev() {
                row[w] += prev[w - wi];
            }
        }
    }

    let mut profile = SwingProfile::empty(g);
    let mut without = vec![vec![0u64; q]; m + 1];
    for (i, &wi) in weights.iter().enumerate() {
        for k in 0..=m {
            for w in 0..q {
                let mut v = all[k][w];
                if k > 0 && wi < q && w >= wi {
                    v -= without[k - 1][w - wi];
                }
                without[k][w] = v;
            }
        }
        let lo = q.saturating_sub(wi);
        for (k, row) in without.iter().take(m).enumerate() {
            profile.by_size[i][k + 1] = row[lo..q].iter().sum();
        }
    }

    profile.crit_containing = if m <= brute_cap.min(crate::enumerate::MAX_BRUTE_CAP) {
        let oracle = Oracle::new(spec.clone());
        let table = tabulate(&oracle, BruteConfig { cap: m, threads: 1 })?;
        Some(profile_from_table(&table).crit_containing.unwrap_or(0))
    } else {
        None
    };
    Ok(profile)
}

fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> BigRational {
    BigRational::new(num.into(), den.into())
}

fn binomial(n: u64, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

/// `Σ_s by_size[i][s] / (m · C(m−1, s−1))`.
pub fn shapley(profile: &SwingProfile) -> Vec<BigRational> {
    let m = profile.ground.size() as u64;
    let weights: Vec<BigRational> = (1..=m)
        .map(|s| ratio(1, BigInt::from(m) * binomial(m - 1, s - 1)))
        .collect();
    profile
        .by_size
        .iter()
        .map(|row| {
            row.iter()
                .skip(1)
                .zip(&weights)
                .fold(BigRational::zero(), |acc, (&c, w)| acc + w * BigInt::from(c))
        })
        .collect()
}

/// The three Banzhaf readings of a profile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BanzhafColumns {
    /// `σ_i / 2^(m−1)`.
    pub raw: Vec<BigRational>,
    /// `σ_i / #(sets with a critical element)`; `None` when that count is unknown.
    pub frac: Option<Vec<BigRational>>,
    /// `σ_i / Σ_j σ_j`.
    pub norm: Vec<BigRational>,
}

pub fn banzhaf(profile: &SwingProfile) -> BanzhafColumns {
    let sigma = profile.sigma();
    let m = profile.ground.size();
    let half = BigInt::one() << (m - 1);
    let raw = sigma.iter().map(|&s| ratio(s, half.clone())).collect();
    let total: u64 = sigma.iter().sum();
    let share = |den: u64| -> Vec<BigRational> {
        sigma
            .iter()
            .map(|&s| if den == 0 { BigRational::zero() } else { ratio(s, den) })
            .collect()
    };
    BanzhafColumns {
        raw,
        frac: profile.crit_containing.map(share),
        norm: share(total),
    }
}

/// `Σ_{S ∈ 𝕄_i} 1 / (|S| · |𝕄|)`.
pub fn deegan_packel(family: &MinimalFamily) -> Result<Vec<BigRational>> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if family.members().iter().any(|s| s.is_empty()) {
        return Err(Error::spec("the empty set is minimal; the predicate is constant"));
    }
    let count = family.len() as u64;
    let mut out = vec![BigRational::zero(); family.ground().size()];
    for &s in family.members() {
        let share = ratio(1, s.len() as u64 * count);
        for i in s.indices() {
            out[i] += &share;
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IndexKind {
    Shapley,
    BanzhafRaw,
    BanzhafFrac,
    BanzhafNorm,
    DeeganPackel,
}

impl IndexKind {
    pub const ALL: [IndexKind; 5] = [
        IndexKind::Shapley,
        IndexKind::BanzhafRaw,
        IndexKind::BanzhafFrac,
        IndexKind::BanzhafNorm,
        IndexKind::DeeganPackel,
    ];

    /// Row label in rendered reports.
    pub fn key(self) -> &'static str {
        match self {
            IndexKind::Shapley => "shapley",
            IndexKind::BanzhafRaw => "banzhaf_raw",
            IndexKind::BanzhafFrac => "banzhaf_frac",
            IndexKind::BanzhafNorm => "banzhaf_norm",
            IndexKind::DeeganPackel => "deegan_packel",
        }
    }

    /// Name accepted on the command line.
    pub fn flag(self) -> &'static str {
        match self {
            IndexKind::Shapley => "shapley",
            IndexKind::BanzhafRaw => "banzhaf-raw",
            IndexKind::BanzhafFrac => "banzhaf-frac",
            IndexKind::BanzhafNorm => "banzhaf-norm",
            IndexKind::DeeganPackel => "deegan-packel",
        }
    }

    /// Parses a comma-separated list; `all` selects every index. The
    /// result is deduplicated and in canonical order.
    pub fn parse_list(list: &str) -> std::result::Result<Vec<IndexKind>, String> {
        let mut out = Vec::new();
        for name in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            if name == "all" {
                out.extend(IndexKind::ALL);
            } else {
                out.push(name.parse()?);
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl FromStr for IndexKind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        IndexKind::ALL
            .into_iter()
            .find(|k| k.flag() == s || k.key() == s)
            .ok_or_else(|| format!("unknown index `{s}`"))
    }
}

impl fmt::Display for IndexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Auto,
    Brute,
    Family,
    ThresholdDp,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Auto => "auto",
            Method::Brute => "brute",
            Method::Family => "family",
            Method::ThresholdDp => "threshold-dp",
        }
    }
}

impl FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        [Method::Auto, Method::Brute, Method::Family, Method::ThresholdDp]
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| format!("unknown method `{s}`"))
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Column {
    Exact(Vec<BigRational>),
    Unavailable(String),
}

impl Column {
    pub fn values(&self) -> Option<&[BigRational]> {
        match self {
            Column::Exact(v) => Some(v),
            Column::Unavailable(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexReport {
    pub ground_size: usize,
    /// The method that actually ran (never `Auto`).
    pub method: Method,
    /// Problem kind, plus the problem name when one was given.
    pub source: String,
    pub columns: Vec<(IndexKind, Column)>,
}

impl IndexReport {
    pub fn column(&self, kind: IndexKind) -> Option<&Column> {
        self.columns.iter().find(|(k, _)| *k == kind).map(|(_, c)| c)
    }

    pub fn values(&self, kind: IndexKind) -> Option<&[BigRational]> {
        self.column(kind).and_then(Column::values)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportRequest {
    pub indices: Vec<IndexKind>,
    pub method: Method,
    pub brute: BruteConfig,
}

impl Default for ReportRequest {
    fn default() -> Self {
        ReportRequest {
            indices: IndexKind::ALL.to_vec(),
            method: Method::Auto,
            brute: BruteConfig::default(),
        }
    }
}

/// Resolves `Auto`: threshold games use the counting route, explicit
/// families the family route, everything else exhaustive tabulation.
pub fn resolve_method(instance: &Instance, method: Method) -> Method {
    match (method, instance) {
        (Method::Auto, Instance::Threshold(_)) => Method::ThresholdDp,
        (Method::Auto, Instance::MonotoneFamily(_)) => Method::Family,
        (Method::Auto, _) => Method::Brute,
        (m, _) => m,
    }
}

pub fn compute_report(instance: &Instance, name: Option<&str>, request: &ReportRequest) -> Result<IndexReport> {
    let method = resolve_method(instance, request.method);
    let g = instance.ground();
    let needs_family = request.indices.contains(&IndexKind::DeeganPackel);
    let cap = request.brute.cap;

    let (profile, family): (SwingProfile, Option<Result<MinimalFamily>>) = match method {
        Method::Brute => {
            let oracle = instance.oracle()?;
            let table = tabulate(&oracle, request.brute)?;
            let msps = needs_family.then(|| Ok(families_from_table(&table).0));
            (profile_from_table(&table), msps)
        }
        Method::Family => {
            check_cap(g, cap)?;
            let msps = match instance {
                Instance::MonotoneFamily(f) => explicit_as_family(f),
                other => enumerate_marco(&other.oracle()?, FamilyKind::Msp, None, Algorithm::Deletion)?,
            };
            (swing_profile_from_family(&msps, cap)?, Some(Ok(msps)))
        }
        Method::ThresholdDp => {
            let Instance::Threshold(spec) = instance else {
                return Err(Error::InapplicableMethod {
                    method: "threshold-dp",
                    reason: format!("problem kind is {}", instance.kind()),
                });
            };
            let profile = swing_profile_threshold_dp(spec, cap)?;
            let msps = needs_family.then(|| {
                if g.size() > MARCO_CAP {
                    Err(Error::SizeCap { size: g.size(), cap: MARCO_CAP })
                } else {
                    enumerate_marco(&Oracle::new(spec.clone()), FamilyKind::Msp, None, Algorithm::Deletion)
                }
            });
            (profile, msps)
        }
        Method::Auto => unreachable!("resolved above"),
    };

    let mut columns = Vec::new();
    let mut bz = None;
    for &kind in &request.indices {
        let column = match kind {
            IndexKind::Shapley => Column::Exact(shapley(&profile)),
            IndexKind::BanzhafRaw | IndexKind::BanzhafFrac | IndexKind::BanzhafNorm => {
                let b = bz.get_or_insert_with(|| banzhaf(&profile));
                match kind {
                    IndexKind::BanzhafRaw => Column::Exact(b.raw.clone()),
                    IndexKind::BanzhafNorm => Column::Exact(b.norm.clone()),
                    _ => match &b.frac {
                        Some(v) => Column::Exact(v.clone()),
                        None => Column::Unavailable(format!(
                            "needs exhaustive tabulation; ground set exceeds the cap of {cap}"
                        )),
                    },
                }
            }
            IndexKind::DeeganPackel => match family.as_ref().expect("requested above") {
                Ok(f) => Column::Exact(deegan_packel(f)?),
                Err(e) => Column::Unavailable(e.to_string()),
            },
        };
        columns.push((kind, column));
    }
    let source = match name {
        Some(n) => format!("{}:{n}", instance.kind()),
        None => instance.kind().to_string(),
    };
    Ok(IndexReport {
        ground_size: g.size(),
        method,
        source,
        columns,
    })
}

fn explicit_as_family(f: &ExplicitFamily) -> MinimalFamily {
    MinimalFamily::new(f.ground(), FamilyKind::Msp, f.minimal_sets().to_vec())
        .expect("explicit families are validated antichains")
}

/// Decimal rendering with round-half-away-from-zero.
pub fn to_decimal(value: &BigRational, places: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), places);
    let num = value.numer().abs() * &scale;
    let den = value.denom().abs();
    let (mut q, r) = num.div_rem(&den);
    if r * 2 >= den {
        q += 1;
    }
    let digits = q.to_string();
    let digits = if digits.len() <= places {
        format!("{}{digits}", "0".repeat(places + 1 - digits.len()))
    } else {
        digits
    };
    let (int, frac) = digits.split_at(digits.len() - places);
    let negative = value.is_negative() && !q.is_zero();
    let sign = if negative { "-" } else { "" };
    if places == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}
