//! Acceptance criteria, one line each. Run with
//! `cargo test -p qsphere --test acceptance`.

use std::process::ExitCode;
use std::time::Instant;

use qsphere::repn::Cutoff;
use qsphere::suite::{run, SuiteConfig, SuiteName, VerificationReport};

struct Outcome {
    pass: bool,
    detail: String,
}

fn timed(cfg: &SuiteConfig) -> (VerificationReport, f64) {
    let start = Instant::now();
    let report = run(cfg).expect("suite runs");
    (report, start.elapsed().as_secs_f64())
}

fn summary(report: &VerificationReport) -> String {
    let failed: Vec<String> = report.records.iter().filter(|r| !r.pass).take(3).map(|r| r.key()).collect();
    let mut s = format!("{}/{} checks", report.summary.passed, report.summary.total);
    if !failed.is_empty() {
        s += &format!(", failing: {}", failed.join("; "));
    }
    s
}

fn suite_within(cfg: SuiteConfig, limit: Option<f64>) -> Outcome {
    let (report, secs) = timed(&cfg);
    let in_time = limit.is_none_or(|l| secs < l);
    let limit = limit.map(|l| format!(" (limit {l}s)")).unwrap_or_default();
    Outcome {
        pass: report.all_passed() && report.summary.total > 0 && in_time,
        detail: format!("{}, {secs:.2}s{limit}", summary(&report)),
    }
}

fn relations() -> Outcome {
    let cfg = SuiteConfig { cutoff: Some(Cutoff::square(24)), ..SuiteConfig::for_suite(SuiteName::Relations) };
    suite_within(cfg, Some(30.0))
}

fn basis() -> Outcome {
    let cfg = SuiteConfig { cutoff: Some(Cutoff::new(12, 8).unwrap()), ..SuiteConfig::for_suite(SuiteName::Basis) };
    suite_within(cfg, Some(60.0))
}

fn identities() -> Outcome {
    suite_within(SuiteConfig::for_suite(SuiteName::Identities), None)
}

fn iso() -> Outcome {
    let cfg = SuiteConfig {
        p: vec![0.5],
        q: vec![0.5],
        theta: vec![0.3],
        k: Some(40),
        cutoff: Some(Cutoff::square(24)),
        ..SuiteConfig::for_suite(SuiteName::Iso)
    };
    let (report, secs) = timed(&cfg);
    let kinds = ["roundtrip", "telescoping", "image relation f", "image relation g"];
    let present = kinds.iter().all(|k| report.find(k).next().is_some());
    Outcome { pass: report.all_passed() && present, detail: format!("{}, {secs:.2}s", summary(&report)) }
}

fn fiber() -> Outcome {
    let mut pass = true;
    let mut details = Vec::new();
    for suite in [SuiteName::Fiber, SuiteName::LemmaGen] {
        let (report, secs) = timed(&SuiteConfig::for_suite(suite));
        pass &= report.all_passed() && report.summary.total > 0;
        details.push(format!("{suite} {}, {secs:.2}s", summary(&report)));
    }
    Outcome { pass, detail: details.join("; ") }
}

fn ktheory() -> Outcome {
    let (report, secs) = timed(&SuiteConfig::for_suite(SuiteName::Ktheory));
    let groups_are_z = ["G0", "G1"].iter().all(|g| {
        let recs: Vec<_> = report.find(g).collect();
        recs.len() == 2 && recs.iter().all(|r| r.pass && r.measured == "Z")
    });
    let pv = report.find("pv sequence").any(|r| r.pass && r.measured == "(Z, Z)");
    Outcome {
        pass: report.all_passed() && groups_are_z && pv && secs < 5.0,
        detail: format!("{}, {secs:.2}s (limit 5s)", summary(&report)),
    }
}

fn determinism() -> Outcome {
    let cfg = SuiteConfig { seed: 42, ..SuiteConfig::default() };
    let (a, _) = timed(&cfg);
    let (b, _) = timed(&cfg);
    let same = a.to_canonical_json() == b.to_canonical_json();
    Outcome { pass: same, detail: format!("{} records compared", a.records.len()) }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("relations on the default grid, N=M=24", relations),
        ("basis independence at N=12, M=8", basis),
        ("exact identities", identities),
        ("isomorphism at p=q=0.5, theta=0.3, K=40", iso),
        ("fiber product and generating families", fiber),
        ("K-groups", ktheory),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = check();
        if !outcome.pass {
            failed += 1;
        }
        println!("{} criterion {} {name}: {}", if outcome.pass { "PASS" } else { "FAIL" }, i + 1, outcome.detail);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
