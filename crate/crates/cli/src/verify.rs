//! Corpus-parallel verification and JSONL reports.

use std::io::Write;

use anyhow::{Context, Result};
use gds_core::verifier::{evaluate, ClaimId, ClaimReport, VerifierConfig};
use gds_core::AnalysisRecord;
use rayon::prelude::*;
use serde_json::json;

use crate::cache::Cache;
use crate::corpus::CorpusEntry;

pub struct VerifyOptions {
    pub claims: Vec<ClaimId>,
    pub max_order: usize,
    pub jobs: usize,
    pub config: VerifierConfig,
}

pub struct VerifyRun {
    pub reports: Vec<ClaimReport>,
    pub records: Vec<AnalysisRecord>,
    /// Corpus members above `max_order`, by name.
    pub excluded: Vec<String>,
}

impl VerifyRun {
    pub fn all_passed(&self) -> bool {
        self.reports.iter().all(ClaimReport::passed)
    }

    pub fn report(&self, claim: ClaimId) -> Option<&ClaimReport> {
        self.reports.iter().find(|r| r.claim_id == claim)
    }
}

pub fn run_verification(corpus: &[CorpusEntry], cache: &Cache, opts: &VerifyOptions) -> Result<VerifyRun> {
    let (members, excluded): (Vec<&CorpusEntry>, Vec<&CorpusEntry>) =
        corpus.iter().partition(|e| e.group.order() <= opts.max_order);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.max(1))
        .build()
        .context("cannot start worker pool")?;
    let per_group: Vec<(AnalysisRecord, Vec<_>)> = pool.install(|| {
        members
            .par_iter()
            .map(|entry| {
                let record = cache.analyze(&entry.file, &entry.group)?;
                let outcomes = opts
                    .claims
                    .iter()
                    .map(|&c| {
                        evaluate(c, &entry.group, &record, &opts.config)
                            .with_context(|| format!("{} on {}", c, entry.file.name))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok((record, outcomes))
            })
            .collect::<Result<_>>()
    })?;
    let reports = opts
        .claims
        .iter()
        .enumerate()
        .map(|(i, &c)| ClaimReport::assemble(c, per_group.iter().map(|(r, o)| (r, o[i].clone())).collect()))
        .collect();
    Ok(VerifyRun {
        reports,
        records: per_group.into_iter().map(|(r, _)| r).collect(),
        excluded: excluded.iter().map(|e| e.file.name.clone()).collect(),
    })
}

/// One row per (claim, group), then the claim's summary row.
pub fn write_report(out: &mut dyn Write, run: &VerifyRun) -> Result<()> {
    for report in &run.reports {
        for row in &report.rows {
            let mut v = serde_json::to_value(row)?;
            v.as_object_mut().expect("row is an object").insert("kind".into(), json!("row"));
            writeln!(out, "{}", serde_json::to_string(&v)?)?;
        }
        let mut v = serde_json::to_value(report)?;
        v.as_object_mut().expect("summary is an object").insert("kind".into(), json!("summary"));
        writeln!(out, "{}", serde_json::to_string(&v)?)?;
    }
    Ok(())
}

pub fn summary_table(run: &VerifyRun) -> String {
    let mut s = format!("{:<16} {:>8} {:>10} {:>8} {:>8}\n", "claim", "checked", "triggered", "failed", "vacuity");
    for r in &run.reports {
        s += &format!(
            "{:<16} {:>8} {:>10} {:>8} {:>8}\n",
            r.claim_id.as_str(),
            r.groups_checked,
            r.hypotheses_triggered,
            r.counterexamples.len(),
            if r.vacuity_ok { "ok" } else { "FAIL" }
        );
    }
    s
}
