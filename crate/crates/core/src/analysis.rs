//! Per-group analysis record combining metrics, structure and claim verdicts.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::chartable::character_degrees;
use crate::error::Result;
use crate::group::PermutationGroup;
use crate::isoclinism::{rusin_case_classify, stem_check, RusinCase};
use crate::metrics::{commuting_pairs_bruteforce, compute_metrics, half_bound_witness, ratio, GroupMetrics, HalfBoundWitness, DEFAULT_COMMUTING_CAP};
use crate::structure::{is_solvable, structural_predicates, StructuralProfile};
use crate::subgroup::{center, derived_subgroup, generated_subgroup};
use crate::verifier::{evaluate_local, ClaimId, Verdict, VerifierConfig};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisRecord {
    pub schema_version: u32,
    pub name: String,
    pub degree: usize,
    pub metrics: GroupMetrics,
    pub profile: StructuralProfile,
    /// Irreducible character degrees, non-decreasing.
    pub degrees: Vec<u64>,
    pub rusin_case: RusinCase,
    pub half_bound: HalfBoundWitness,
    pub stem_group: bool,
    /// `G = G′ × Z(G)` with `G′` perfect, non-solvable and of order 60.
    pub a5_times_abelian: bool,
    /// `|G : F(G)|`
    pub fitting_index: u64,
    /// Brute-force commuting probability equals `k/|G|`; absent above the cap.
    pub commuting_oracle: Option<bool>,
    pub verdicts: BTreeMap<ClaimId, Verdict>,
}

impl AnalysisRecord {
    pub fn order(&self) -> u64 {
        self.metrics.order
    }
}

/// Structural recognition of `A5 × Z` with `Z` abelian.
pub fn is_a5_times_abelian(g: &PermutationGroup) -> bool {
    let d = derived_subgroup(g);
    if d.order() != 60 {
        return false;
    }
    let z = center(g);
    if d.order() * z.order() != g.order() || !d.intersection(g, &z).is_trivial() {
        return false;
    }
    let dg = match PermutationGroup::from_elements_of(g, "G'", d.generators()) {
        Ok(x) => x,
        Err(_) => return false,
    };
    let perfect = derived_subgroup(&dg).order() == dg.order();
    perfect && !is_solvable(&dg) && generated_subgroup(g, &[d.elements(), z.elements()].concat()).order() == g.order()
}

pub fn analyze(g: &PermutationGroup) -> Result<AnalysisRecord> {
    let degrees = character_degrees(g)?;
    let metrics = compute_metrics(g, &degrees)?;
    let profile = structural_predicates(g)?;
    let half_bound = half_bound_witness(g, &degrees)?;
    let commuting_oracle = if g.order() <= DEFAULT_COMMUTING_CAP {
        Some(commuting_pairs_bruteforce(g)? == ratio(metrics.class_number, metrics.order))
    } else {
        None
    };
    let mut record = AnalysisRecord {
        schema_version: SCHEMA_VERSION,
        name: g.name().to_string(),
        degree: g.degree(),
        fitting_index: metrics.order / profile.fitting_order,
        metrics,
        profile,
        degrees,
        rusin_case: rusin_case_classify(g),
        half_bound,
        stem_group: stem_check(g),
        a5_times_abelian: is_a5_times_abelian(g),
        commuting_oracle,
        verdicts: BTreeMap::new(),
    };
    let config = VerifierConfig::default();
    for claim in ClaimId::ALL {
        if let Some(outcome) = evaluate_local(claim, &record, &config) {
            record.verdicts.insert(claim, outcome.verdict);
        }
    }
    Ok(record)
}
