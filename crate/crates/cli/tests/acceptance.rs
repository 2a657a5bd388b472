//! Acceptance criteria, one PASS/FAIL line each.

use std::path::Path;
use std::time::{Duration, Instant};

use gds_cli::cache::Cache;
use gds_cli::corpus::{load_corpus, CorpusEntry, REQUIRED};
use gds_cli::verify::{run_verification, VerifyOptions, VerifyRun};
use gds_core::builtin::{self, from_spec};
use gds_core::chartable::{character_degrees, character_table_mod_p};
use gds_core::families::{bound_sweep, family_d, Family, FamilySpec};
use gds_core::isoclinism::{are_isoclinic, multiplicity_proportion_check};
use gds_core::metrics::{commuting_pairs_bruteforce, compute_metrics, half_bound_witness, ratio, DEFAULT_COMMUTING_CAP};
use gds_core::verifier::{ClaimId, VerifierConfig};
use gds_core::{PermutationGroup, Rational};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

fn t_of(spec: &str) -> Result<(u64, Rational), String> {
    let g = from_spec(spec).map_err(e)?;
    let m = compute_metrics(&g, &character_degrees(&g).map_err(e)?).map_err(e)?;
    Ok((m.degree_sum, m.t))
}

fn sharpness() -> Check {
    let (_, t_s3) = t_of("symmetric:3")?;
    let (big_t_a4, _) = t_of("alternating:4")?;
    let (big_t_sl25, t_sl25) = t_of("sl2:5")?;
    let (_, t_a5) = t_of("alternating:5")?;
    ensure(t_s3 == ratio(2, 3), format!("t(S3) = {}", t_s3))?;
    ensure(big_t_a4 == 6, format!("T(A4) = {}", big_t_a4))?;
    ensure(big_t_sl25 == 30, format!("T(SL(2,5)) = {}", big_t_sl25))?;
    ensure(t_a5 == ratio(4, 15), format!("t(A5) = {}", t_a5))?;
    ensure(t_sl25 == ratio(1, 4), format!("t(SL(2,5)) = {}", t_sl25))?;
    Ok("t(S3)=2/3, T(A4)=6, T(SL(2,5))=30, t(A5)=4/15, t(SL(2,5))=1/4".into())
}

fn family_concordance() -> Check {
    for q in [4u64, 5, 7, 8, 9, 11, 13] {
        let g = builtin::psl2(q as usize).map_err(e)?;
        let spec = FamilySpec::new(Family::Psl2, q).map_err(e)?;
        let (d, bound) = family_d(&spec);
        ensure(!bound, "PSL2 value flagged as bound")?;
        let brute = ratio(g.class_count() as u64, g.order() as u64);
        ensure(d == brute, format!("PSL(2,{}): formula {} vs constructed {}", q, d, brute))?;
    }
    let g = builtin::psl3(3).map_err(e)?;
    let brute = ratio(g.class_count() as u64, g.order() as u64);
    ensure(g.order() == 5616 && brute == ratio(1, 468), format!("PSL(3,3): {}", brute))?;
    let (d, _) = family_d(&FamilySpec::new(Family::Psl3, 3).map_err(e)?);
    ensure(d == brute, "PSL(3,3) formula differs")?;
    Ok("PSL(2,q) for q in {4,5,7,8,9,11,13} and d(PSL(3,3)) = 1/468".into())
}

fn family_sweep() -> Check {
    let report = bound_sweep(&Family::ALL, 1 << 10);
    ensure(report.skipped.is_empty(), format!("{} parameters skipped", report.skipped.len()))?;
    ensure(report.violations.is_empty(), report.violations.join("; "))?;
    for f in Family::ALL {
        ensure(report.rows.iter().any(|r| r.family == f), format!("no rows for {}", f))?;
    }
    Ok(format!(
        "{} parameters, 0 violations, {} rows with p²/3 ≥ √|G|",
        report.rows.len(),
        report.lemma31_exceptions().count()
    ))
}

fn claim_summary(run: &VerifyRun, claims: &[ClaimId]) -> Check {
    let mut parts = Vec::new();
    for &c in claims {
        let r = run.report(c).ok_or_else(|| format!("{} missing", c))?;
        ensure(r.counterexamples.is_empty(), format!("{}: counterexamples {:?}", c, r.counterexamples))?;
        ensure(r.vacuity_ok, format!("{}: {} triggers < {}", c, r.hypotheses_triggered, r.min_triggers))?;
        parts.push(format!("{} {}/{}", c, r.hypotheses_triggered, r.groups_checked));
    }
    Ok(parts.join(", "))
}

fn theorem_suite(corpus: &[CorpusEntry], run: &VerifyRun) -> Check {
    ensure(corpus.len() >= 60, format!("corpus has {} groups", corpus.len()))?;
    ensure(corpus.iter().all(|c| c.group.order() <= 5616), "corpus order above 5616")?;
    for name in REQUIRED {
        ensure(corpus.iter().any(|c| c.file.name == *name), format!("corpus lacks {}", name))?;
    }
    ensure(run.excluded.is_empty(), "groups excluded by max order")?;
    claim_summary(run, &ClaimId::THEOREMS)
}

fn record<'a>(run: &'a VerifyRun, name: &str) -> Result<&'a gds_core::AnalysisRecord, String> {
    run.records.iter().find(|r| r.name == name).ok_or_else(|| format!("{} missing", name))
}

fn classical(run: &VerifyRun) -> Check {
    let summary = claim_summary(run, &[ClaimId::Lem2_1, ClaimId::Lem2_2, ClaimId::Lem2_3, ClaimId::Lem2_4])?;
    for name in ["Q8", "D8"] {
        let d = &record(run, name)?.metrics.d;
        ensure(*d == ratio(5, 8), format!("d({}) = {}", name, d))?;
    }
    for name in ["S3", "D8", "S4", "A5"] {
        let m = &record(run, name)?.metrics;
        ensure(m.i == m.t, format!("i({}) = {} but t = {}", name, m.i, m.t))?;
    }
    for r in &run.records {
        ensure(r.metrics.sandwich_holds(), format!("i² ≤ t² ≤ d fails for {}", r.name))?;
    }
    Ok(format!("{}; d = 5/8 at Q8, D8; i = t at S3, D8, S4, A5", summary))
}

fn half_equivalence(run: &VerifyRun) -> Check {
    let summary = claim_summary(run, &[ClaimId::HalfEquiv])?;
    for r in &run.records {
        let direct = 2 * r.metrics.degree_sum > r.metrics.order;
        let w = &r.half_bound;
        ensure(direct == (w.lhs < w.rhs), format!("{}: lhs {} rhs {}", r.name, w.lhs, w.rhs))?;
    }
    let a4 = record(run, "A4")?;
    ensure(a4.half_bound.lhs == 3 && a4.half_bound.rhs == 3 && !a4.half_bound.verdict, "A4 boundary")?;
    let a4g = from_spec("alternating:4").map_err(e)?;
    let w = half_bound_witness(&a4g, &character_degrees(&a4g).map_err(e)?).map_err(e)?;
    ensure((w.lhs, w.rhs) == (3, 3), "A4 witness recomputation")?;
    Ok(format!("{}; A4 lhs = rhs = 3", summary))
}

fn isoclinism(run: &VerifyRun) -> Check {
    let summary = claim_summary(run, &[ClaimId::IsoInvariance])?;
    let small = run.records.iter().filter(|r| r.metrics.order <= 100).count() as u64;
    let iso = run.report(ClaimId::IsoInvariance).unwrap();
    ensure(iso.groups_checked == small, format!("{} of {} groups with |G| ≤ 100 checked", iso.groups_checked, small))?;
    let g = |s: &str| from_spec(s).map_err(e);
    for (a, b) in [("symmetric:3", "product:symmetric:3,cyclic:2"), ("quaternion:8", "dihedral:4")] {
        let (ga, gb) = (g(a)?, g(b)?);
        let c = multiplicity_proportion_check(&ga, &gb, &character_degrees(&ga).map_err(e)?, &character_degrees(&gb).map_err(e)?);
        ensure(c.holds && c.degree_sum_ratio_equal, format!("proportion check fails for ({}, {})", a, b))?;
    }
    ensure(are_isoclinic(&g("dihedral:4")?, &g("quaternion:8")?).map_err(e)?, "D8 ~ Q8")?;
    ensure(are_isoclinic(&g("symmetric:3")?, &g("product:symmetric:3,cyclic:2")?).map_err(e)?, "S3 ~ S3xC2")?;
    ensure(!are_isoclinic(&g("symmetric:3")?, &g("dihedral:5")?).map_err(e)?, "S3 !~ D10")?;
    Ok(format!("{}; proportions at (S3, S3xC2), (Q8, D8); D8~Q8, S3~S3xC2, S3!~D10", summary))
}

fn gallagher(run: &VerifyRun) -> Check {
    let summary = claim_summary(run, &[ClaimId::Lem2_5])?;
    let small = run.records.iter().filter(|r| r.metrics.order <= 48).count() as u64;
    let r = run.report(ClaimId::Lem2_5).unwrap();
    ensure(r.groups_checked == small, format!("{} of {} groups with |G| ≤ 48 checked", r.groups_checked, small))?;
    Ok(summary)
}

fn oracles(corpus: &[CorpusEntry]) -> Check {
    let mut compared = 0;
    for entry in corpus {
        let g: &PermutationGroup = &entry.group;
        let table = character_table_mod_p(g).map_err(e)?;
        let sq: u64 = table.degrees.iter().map(|d| d * d).sum();
        ensure(sq == g.order() as u64, format!("{}: Σ χ(1)² = {}", g.name(), sq))?;
        if g.order() <= DEFAULT_COMMUTING_CAP {
            let brute = commuting_pairs_bruteforce(g).map_err(e)?;
            ensure(brute == ratio(g.class_count() as u64, g.order() as u64), format!("{}: commuting pairs {}", g.name(), brute))?;
            compared += 1;
        }
    }
    Ok(format!("{} commuting-pair oracles, {} character tables", compared, corpus.len()))
}

fn report(id: u32, title: &str, limit: Option<Duration>, f: impl FnOnce() -> Check) -> bool {
    let start = Instant::now();
    let result = f();
    let elapsed = start.elapsed();
    let result = match (result, limit) {
        (Ok(_), Some(l)) if elapsed > l => Err(format!("took {:.1?}, limit {:?}", elapsed, l)),
        (r, _) => r,
    };
    let (tag, detail) = match &result {
        Ok(d) => ("PASS", d.clone()),
        Err(d) => ("FAIL", d.clone()),
    };
    println!("{} criterion {} ({}) [{:.2?}]: {}", tag, id, title, elapsed, detail);
    result.is_ok()
}

fn main() {
    let corpus_dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let mut ok = true;
    ok &= report(1, "sharpness constants", Some(Duration::from_secs(5)), sharpness);
    ok &= report(2, "closed forms against constructed groups", Some(Duration::from_secs(90)), family_concordance);
    ok &= report(3, "family sweep q ≤ 1024", Some(Duration::from_secs(60)), family_sweep);

    let corpus = match load_corpus(&corpus_dir) {
        Ok(c) => c,
        Err(err) => {
            println!("FAIL corpus loading: {:#}", err);
            std::process::exit(1);
        }
    };
    let opts = VerifyOptions { claims: ClaimId::ALL.to_vec(), max_order: 5616, jobs: 4, config: VerifierConfig::default() };
    let start = Instant::now();
    let run = run_verification(&corpus, &Cache::disabled(), &opts);
    let verify_time = start.elapsed();
    let run = match run {
        Ok(r) => r,
        Err(err) => {
            println!("FAIL corpus verification: {:#}", err);
            std::process::exit(1);
        }
    };
    ok &= report(4, "theorem suite over the corpus", None, || {
        ensure(verify_time < Duration::from_secs(300), format!("verification took {:?}", verify_time))?;
        theorem_suite(&corpus, &run).map(|s| format!("{} ({} groups, {:.1?} at 4 jobs)", s, corpus.len(), verify_time))
    });
    ok &= report(5, "classical bounds", None, || classical(&run));
    ok &= report(6, "half-bound equivalence", None, || half_equivalence(&run));
    ok &= report(7, "isoclinism invariance", None, || isoclinism(&run));
    ok &= report(8, "Gallagher bound", None, || gallagher(&run));
    ok &= report(9, "oracle equivalence", None, || oracles(&corpus));
    if !ok {
        std::process::exit(1);
    }
}
