//! Theorems and classical bounds as falsifiable implications over a corpus.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::analysis::AnalysisRecord;
use crate::builtin;
use crate::chartable::{character_degrees, character_table_mod_p, character_table_with_prime, restriction_multiplicities};
use crate::error::{Error, Result};
use crate::group::PermutationGroup;
use crate::isoclinism::{are_isoclinic_with_cap, proportion_from_orders, RusinCaseId};
use crate::metrics::{ratio, GroupMetrics};
use crate::primes::is_prime_u64;
use crate::quotient::quotient_group;
use crate::subgroup::{derived_subgroup, generated_subgroup, normal_subgroups, Subgroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ClaimId {
    #[serde(rename = "THM_1_1")]
    Thm1_1,
    #[serde(rename = "THM_1_2")]
    Thm1_2,
    #[serde(rename = "THM_1_3")]
    Thm1_3,
    #[serde(rename = "THM_1_4")]
    Thm1_4,
    #[serde(rename = "LEM_2_1")]
    Lem2_1,
    #[serde(rename = "LEM_2_2")]
    Lem2_2,
    #[serde(rename = "LEM_2_3")]
    Lem2_3,
    #[serde(rename = "LEM_2_4")]
    Lem2_4,
    #[serde(rename = "LEM_2_5", alias = "GALLAGHER")]
    Lem2_5,
    #[serde(rename = "LEM_6_2")]
    Lem6_2,
    #[serde(rename = "CITED_4_15")]
    Cited4_15,
    #[serde(rename = "CITED_2_3")]
    Cited2_3,
    #[serde(rename = "HALF_EQUIV")]
    HalfEquiv,
    #[serde(rename = "ISO_INVARIANCE")]
    IsoInvariance,
}

impl ClaimId {
    pub const ALL: [ClaimId; 14] = [
        ClaimId::Thm1_1,
        ClaimId::Thm1_2,
        ClaimId::Thm1_3,
        ClaimId::Thm1_4,
        ClaimId::Lem2_1,
        ClaimId::Lem2_2,
        ClaimId::Lem2_3,
        ClaimId::Lem2_4,
        ClaimId::Lem2_5,
        ClaimId::Lem6_2,
        ClaimId::Cited4_15,
        ClaimId::Cited2_3,
        ClaimId::HalfEquiv,
        ClaimId::IsoInvariance,
    ];

    pub const THEOREMS: [ClaimId; 4] = [ClaimId::Thm1_1, ClaimId::Thm1_2, ClaimId::Thm1_3, ClaimId::Thm1_4];

    pub const CLASSICAL: [ClaimId; 6] =
        [ClaimId::Lem2_1, ClaimId::Lem2_2, ClaimId::Lem2_3, ClaimId::Lem2_4, ClaimId::Cited4_15, ClaimId::Cited2_3];

    pub fn as_str(self) -> &'static str {
        match self {
            ClaimId::Thm1_1 => "THM_1_1",
            ClaimId::Thm1_2 => "THM_1_2",
            ClaimId::Thm1_3 => "THM_1_3",
            ClaimId::Thm1_4 => "THM_1_4",
            ClaimId::Lem2_1 => "LEM_2_1",
            ClaimId::Lem2_2 => "LEM_2_2",
            ClaimId::Lem2_3 => "LEM_2_3",
            ClaimId::Lem2_4 => "LEM_2_4",
            ClaimId::Lem2_5 => "LEM_2_5",
            ClaimId::Lem6_2 => "LEM_6_2",
            ClaimId::Cited4_15 => "CITED_4_15",
            ClaimId::Cited2_3 => "CITED_2_3",
            ClaimId::HalfEquiv => "HALF_EQUIV",
            ClaimId::IsoInvariance => "ISO_INVARIANCE",
        }
    }

    /// Minimum number of groups whose hypothesis must trigger.
    pub fn min_triggers(self) -> u64 {
        match self {
            ClaimId::Thm1_2 => 2,
            ClaimId::Thm1_3 => 5,
            ClaimId::Thm1_4 => 4,
            _ => 1,
        }
    }

    /// Claims that need the group itself rather than its cached record.
    pub fn needs_group(self) -> bool {
        matches!(self, ClaimId::Lem2_3 | ClaimId::Lem2_5 | ClaimId::Lem6_2 | ClaimId::IsoInvariance)
    }

    /// Parses a comma separated list, or `all`.
    pub fn parse_list(s: &str) -> Result<Vec<ClaimId>> {
        if s.trim().eq_ignore_ascii_case("all") {
            return Ok(ClaimId::ALL.to_vec());
        }
        let mut out: Vec<ClaimId> = s.split(',').filter(|p| !p.trim().is_empty()).map(str::parse).collect::<Result<_>>()?;
        out.sort();
        out.dedup();
        if out.is_empty() {
            return Err(Error::Input("empty claim list".into()));
        }
        Ok(out)
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClaimId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_uppercase();
        if key == "GALLAGHER" {
            return Ok(ClaimId::Lem2_5);
        }
        ClaimId::ALL
            .into_iter()
            .find(|c| c.as_str() == key)
            .ok_or_else(|| Error::Input(format!("unknown claim id {:?}", s)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    /// Hypothesis held and so did the conclusion.
    Pass,
    /// Hypothesis never held for this group.
    Vacuous,
    Fail,
    /// Outside the configured caps.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifierConfig {
    pub max_prime: u64,
    pub normal_subgroup_cap: usize,
    pub gallagher_cap: usize,
    pub iso_invariance_cap: usize,
    pub isoclinism_cap: usize,
}

impl Default for VerifierConfig {
    fn default() -> Self {
        VerifierConfig {
            max_prime: 31,
            normal_subgroup_cap: 200,
            gallagher_cap: 48,
            iso_invariance_cap: 100,
            isoclinism_cap: 24,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outcome {
    pub verdict: Verdict,
    pub detail: Option<String>,
}

impl Outcome {
    fn from_checks(triggered: bool, failures: Vec<String>) -> Self {
        if !failures.is_empty() {
            Outcome { verdict: Verdict::Fail, detail: Some(failures.join("; ")) }
        } else if triggered {
            Outcome { verdict: Verdict::Pass, detail: None }
        } else {
            Outcome { verdict: Verdict::Vacuous, detail: None }
        }
    }

    fn skipped(reason: impl Into<String>) -> Self {
        Outcome { verdict: Verdict::Skipped, detail: Some(reason.into()) }
    }
}

/// Evaluates a claim that depends only on the cached record; `None` for claims
/// that need the group.
pub fn evaluate_local(claim: ClaimId, r: &AnalysisRecord, config: &VerifierConfig) -> Option<Outcome> {
    let m = &r.metrics;
    let p = &r.profile;
    let (n, k, t, i) = (m.order as u128, m.class_number as u128, m.degree_sum as u128, m.involution_count as u128);
    let mut fails = Vec::new();
    let triggered = match claim {
        ClaimId::Thm1_1 => {
            let mut any = false;
            for prime in (2..=config.max_prime).filter(|&x| is_prime_u64(x)) {
                let q = prime as u128 * prime as u128;
                let by_k = k * q >= 3 * n;
                let by_t = t * t * q >= 3 * n * n;
                any |= by_k || by_t;
                if (by_k || by_t) && !p.is_p_solvable(prime) {
                    fails.push(format!("p = {} (class bound {}, degree bound {})", prime, by_k, by_t));
                }
            }
            any
        }
        ClaimId::Thm1_2 => {
            let hyp = 4 * t > n;
            let ok = r.a5_times_abelian || (p.solvable && p.fitting_height.is_some_and(|h| h <= 4));
            if hyp && !ok {
                fails.push(format!("4T > |G| but solvable = {}, Fitting height = {:?}", p.solvable, p.fitting_height));
            }
            hyp
        }
        ClaimId::Thm1_3 => {
            let hyp = 8 * t * t > 3 * n * n;
            let rusin = r.rusin_case.case_id != RusinCaseId::None;
            if hyp && !(p.abelian || rusin) {
                fails.push("8T² > 3|G|² but no structure case applies".into());
            }
            if 8 * k > 3 * n && !rusin {
                fails.push("d > 3/8 but no structure case applies".into());
            }
            hyp
        }
        ClaimId::Thm1_4 => {
            let hyp = 2 * t > n;
            if hyp && !p.supersolvable {
                fails.push("2T > |G| but not supersolvable".into());
            }
            hyp
        }
        ClaimId::Lem2_1 => {
            if i > t {
                fails.push(format!("I = {} > T = {}", i, t));
            }
            if t * t > k * n {
                fails.push(format!("T² = {} > k|G| = {}", t * t, k * n));
            }
            if !m.sandwich_holds() {
                fails.push("i² ≤ t² ≤ d fails".into());
            }
            true
        }
        ClaimId::Lem2_2 => {
            let hyp = !p.abelian;
            if hyp && 8 * k > 5 * n {
                fails.push(format!("d = {}/{} > 5/8", k, n));
            }
            hyp
        }
        ClaimId::Lem2_4 => {
            if k * k * r.fitting_index as u128 > n * n {
                fails.push(format!("d² > 1/|G:F| with |G:F| = {}", r.fitting_index));
            }
            true
        }
        ClaimId::Cited4_15 => {
            let hyp_t = 15 * t > 4 * n;
            let hyp_k = t <= 3 * k;
            if (hyp_t || hyp_k) && !p.solvable {
                fails.push(format!("not solvable with 15T > 4|G| = {} or T ≤ 3k = {}", hyp_t, hyp_k));
            }
            hyp_t || hyp_k
        }
        ClaimId::Cited2_3 => {
            let hyp = 3 * t > 2 * n;
            if hyp && !p.nilpotent {
                fails.push("3T > 2|G| but not nilpotent".into());
            }
            hyp
        }
        ClaimId::HalfEquiv => {
            let w = &r.half_bound;
            let direct = 2 * t > n;
            if w.verdict != direct || (w.lhs < w.rhs) != direct || w.rhs * p.derived_order != m.order {
                fails.push(format!("lhs {} rhs {} 2T > |G| {}", w.lhs, w.rhs, direct));
            }
            true
        }
        _ => return None,
    };
    Some(Outcome::from_checks(triggered, fails))
}

/// Evaluates any claim for one group with its cached record.
pub fn evaluate(claim: ClaimId, g: &PermutationGroup, r: &AnalysisRecord, config: &VerifierConfig) -> Result<Outcome> {
    if let Some(o) = evaluate_local(claim, r, config) {
        return Ok(o);
    }
    match claim {
        ClaimId::Lem2_3 => nagao(g, config),
        ClaimId::Lem2_5 => gallagher_all(g, config),
        ClaimId::Lem6_2 => quotient_half_bound(g, r, config),
        ClaimId::IsoInvariance => iso_invariance(g, r, config),
        _ => unreachable!("local claims handled above"),
    }
}

fn nagao(g: &PermutationGroup, config: &VerifierConfig) -> Result<Outcome> {
    if g.order() > config.normal_subgroup_cap {
        return Ok(Outcome::skipped(format!("order above {}", config.normal_subgroup_cap)));
    }
    let k = g.class_count() as u128;
    let mut fails = Vec::new();
    for n in normal_subgroups(g, config.normal_subgroup_cap)? {
        let kn = PermutationGroup::from_elements_of(g, "N", n.generators())?.class_count() as u128;
        let kq = quotient_group(g, &n)?.group().class_count() as u128;
        if k > kn * kq {
            fails.push(format!("|N| = {}: k(G) = {} > k(N)k(G/N) = {}", n.order(), k, kn * kq));
        }
    }
    Ok(Outcome::from_checks(true, fails))
}

/// One `G`-orbit on `Irr(N)` with its character count and bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GallagherOrbit {
    /// Row indices of `N`'s table in the orbit.
    pub rows: Vec<usize>,
    /// Irreducible characters of `G` lying over the orbit.
    pub over: u64,
    /// `k(I(θ)/N)` for a representative `θ`.
    pub bound: u64,
}

impl GallagherOrbit {
    pub fn holds(&self) -> bool {
        self.over <= self.bound
    }
}

/// Orbits of `G` on `Irr(N)` with the counts of characters lying over each.
pub fn gallagher_check(g: &PermutationGroup, n: &Subgroup, cap: usize) -> Result<Vec<GallagherOrbit>> {
    if g.order() > cap {
        return Err(Error::capacity(format!("Gallagher check on {} (order {})", g.name(), g.order()), cap));
    }
    if !n.is_normal() {
        return Err(Error::Domain("Gallagher check needs a normal subgroup".into()));
    }
    let ng = PermutationGroup::from_elements_of(g, "N", n.generators())?;
    let cg = character_table_mod_p(g)?;
    let cn = character_table_with_prime(&ng, cg.modulus)?;
    let mult = restriction_multiplicities(g, n, &ng, &cg, &cn)?;
    let rows = cn.table.len();
    let reps: Vec<u32> = ng
        .classes()
        .iter()
        .map(|c| g.index_of(ng.element(c[0])).expect("N is inside G"))
        .collect();
    // θ ↦ θ^x, as a permutation of rows, for each x in G
    let row_action = |x: u32| -> Result<Vec<usize>> {
        let class_map: Vec<usize> = reps
            .iter()
            .map(|&r| ng.class_of(ng.index_of(g.element(g.conjugate(r, x))).expect("N is normal")))
            .collect();
        (0..rows)
            .map(|j| {
                let moved: Vec<u64> = class_map.iter().map(|&c| cn.table[j][c]).collect();
                cn.table
                    .iter()
                    .position(|row| *row == moved)
                    .ok_or_else(|| Error::Internal("conjugate character missing from table".into()))
            })
            .collect()
    };
    let actions: Vec<Vec<usize>> = g.elements().map(row_action).collect::<Result<_>>()?;
    let mut seen = vec![false; rows];
    let mut out = Vec::new();
    for j in 0..rows {
        if seen[j] {
            continue;
        }
        let mut orbit: Vec<usize> = actions.iter().map(|a| a[j]).collect();
        orbit.sort_unstable();
        orbit.dedup();
        for &o in &orbit {
            seen[o] = true;
        }
        let stabilizer: Vec<u32> = g.elements().filter(|&x| actions[x as usize][j] == j).collect();
        let inertia = PermutationGroup::from_elements_of(g, "I", &stabilizer)?;
        let n_in_inertia: Vec<u32> = n
            .generators()
            .iter()
            .map(|&x| inertia.index_of(g.element(x)).expect("N lies in its inertia group"))
            .collect();
        let n_sub = generated_subgroup(&inertia, &n_in_inertia);
        let bound = quotient_group(&inertia, &n_sub)?.group().class_count() as u64;
        let over = mult.iter().filter(|row| orbit.iter().any(|&o| row[o] > 0)).count() as u64;
        out.push(GallagherOrbit { rows: orbit, over, bound });
    }
    Ok(out)
}

fn gallagher_all(g: &PermutationGroup, config: &VerifierConfig) -> Result<Outcome> {
    if g.order() > config.gallagher_cap {
        return Ok(Outcome::skipped(format!("order above {}", config.gallagher_cap)));
    }
    let mut fails = Vec::new();
    for n in normal_subgroups(g, config.normal_subgroup_cap)? {
        for orbit in gallagher_check(g, &n, config.gallagher_cap)? {
            if !orbit.holds() {
                fails.push(format!("|N| = {}: {} characters over an orbit with bound {}", n.order(), orbit.over, orbit.bound));
            }
        }
    }
    Ok(Outcome::from_checks(true, fails))
}

fn quotient_half_bound(g: &PermutationGroup, r: &AnalysisRecord, config: &VerifierConfig) -> Result<Outcome> {
    if g.order() > config.normal_subgroup_cap {
        return Ok(Outcome::skipped(format!("order above {}", config.normal_subgroup_cap)));
    }
    if 2 * r.metrics.degree_sum <= r.metrics.order || r.profile.abelian {
        return Ok(Outcome::from_checks(false, vec![]));
    }
    let derived = derived_subgroup(g);
    let mut fails = Vec::new();
    for n in normal_subgroups(g, config.normal_subgroup_cap)? {
        if n.is_trivial() || !n.is_subset_of(&derived) {
            continue;
        }
        let q = quotient_group(g, &n)?.into_group();
        let t: u64 = character_degrees(&q)?.iter().sum();
        if 2 * t <= q.order() as u64 {
            fails.push(format!("|N| = {}: T(G/N) = {} with |G/N| = {}", n.order(), t, q.order()));
        }
    }
    Ok(Outcome::from_checks(true, fails))
}

/// Abelian factors used for the isoclinism invariance checks.
pub fn invariance_partners() -> Result<Vec<PermutationGroup>> {
    Ok(vec![
        builtin::cyclic(2)?,
        builtin::cyclic(3)?,
        builtin::direct_product(&[builtin::cyclic(2)?, builtin::cyclic(2)?])?,
    ])
}

fn iso_invariance(g: &PermutationGroup, r: &AnalysisRecord, config: &VerifierConfig) -> Result<Outcome> {
    if g.order() > config.iso_invariance_cap {
        return Ok(Outcome::skipped(format!("order above {}", config.iso_invariance_cap)));
    }
    let mut fails = Vec::new();
    for a in invariance_partners()? {
        let h = builtin::direct_product(&[g.clone(), a.clone()])?;
        let dh = character_degrees(&h)?;
        let (n, m) = (r.metrics.order, h.order() as u64);
        let th: u64 = dh.iter().sum();
        if ratio(th, m) != r.metrics.t {
            fails.push(format!("t differs for {}", h.name()));
        }
        if ratio(h.class_count() as u64, m) != r.metrics.d {
            fails.push(format!("d differs for {}", h.name()));
        }
        if !proportion_from_orders(n, m, &r.degrees, &dh).holds {
            fails.push(format!("degree proportions differ for {}", h.name()));
        }
        if r.metrics.order / r.profile.center_order <= config.isoclinism_cap as u64
            && !are_isoclinic_with_cap(g, &h, config.isoclinism_cap)?
        {
            fails.push(format!("not isoclinic to {}", h.name()));
        }
    }
    Ok(Outcome::from_checks(true, fails))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimRow {
    pub claim_id: ClaimId,
    pub group: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub group: String,
    pub detail: String,
    pub metrics: GroupMetrics,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub claim_id: ClaimId,
    pub groups_checked: u64,
    pub hypotheses_triggered: u64,
    pub counterexamples: Vec<Counterexample>,
    pub min_triggers: u64,
    pub vacuity_ok: bool,
    #[serde(skip)]
    pub rows: Vec<ClaimRow>,
}

impl ClaimReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty() && self.vacuity_ok
    }

    /// Builds a report from per-group outcomes; rows are sorted by group name.
    pub fn assemble(claim: ClaimId, outcomes: Vec<(&AnalysisRecord, Outcome)>) -> Self {
        let mut outcomes = outcomes;
        outcomes.sort_by(|a, b| a.0.name.cmp(&b.0.name));
        let mut report = ClaimReport {
            claim_id: claim,
            groups_checked: 0,
            hypotheses_triggered: 0,
            counterexamples: Vec::new(),
            min_triggers: claim.min_triggers(),
            vacuity_ok: false,
            rows: Vec::new(),
        };
        for (record, outcome) in outcomes {
            if outcome.verdict != Verdict::Skipped {
                report.groups_checked += 1;
            }
            if matches!(outcome.verdict, Verdict::Pass | Verdict::Fail) {
                report.hypotheses_triggered += 1;
            }
            if outcome.verdict == Verdict::Fail {
                report.counterexamples.push(Counterexample {
                    group: record.name.clone(),
                    detail: outcome.detail.clone().unwrap_or_default(),
                    metrics: record.metrics.clone(),
                });
            }
            report.rows.push(ClaimRow {
                claim_id: claim,
                group: record.name.clone(),
                verdict: outcome.verdict,
                detail: outcome.detail,
            });
        }
        report.vacuity_ok = report.hypotheses_triggered >= report.min_triggers;
        report
    }
}

/// A corpus member together with its cached analysis, if available.
#[derive(Clone, Debug)]
pub struct AnalyzedGroup {
    pub group: PermutationGroup,
    pub record: Option<AnalysisRecord>,
}

pub fn verify_theorem(claim: ClaimId, corpus: &[AnalyzedGroup], config: &VerifierConfig) -> Result<ClaimReport> {
    let mut outcomes = Vec::with_capacity(corpus.len());
    for member in corpus {
        let record = member
            .record
            .as_ref()
            .ok_or_else(|| Error::Dependency(format!("no cached analysis for {}", member.group.name())))?;
        outcomes.push((record, evaluate(claim, &member.group, record, config)?));
    }
    Ok(ClaimReport::assemble(claim, outcomes))
}

pub fn verify_classical_bounds(corpus: &[AnalyzedGroup], config: &VerifierConfig) -> Result<Vec<ClaimReport>> {
    ClaimId::CLASSICAL.iter().map(|&c| verify_theorem(c, corpus, config)).collect()
}
