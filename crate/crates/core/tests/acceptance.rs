//! Acceptance gate: one criterion per check, one printed pass/fail line each.
//! Every criterion is evaluated (and printed) even if an earlier one fails;
//! the test asserts at the end.

use std::path::PathBuf;
use std::time::Instant;

use gvchar::cli::catalog::{build_instance, load_catalog, Catalog};
use gvchar::cli::suite::{run_suite, Suite};
use gvchar::groups::DEFAULT_CAP;

fn catalog_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../catalog/default.json")
}

fn load() -> Catalog {
    load_catalog(&catalog_path()).expect("default catalog loads")
}

struct Gate {
    results: Vec<(String, bool)>,
}

impl Gate {
    fn check(&mut self, name: &str, ok: bool, detail: String) {
        let verdict = if ok { "pass" } else { "FAIL" };
        println!("[{verdict}] {name}: {detail}");
        self.results.push((name.to_string(), ok));
    }
}

#[test]
fn acceptance() {
    let started = Instant::now();
    let mut gate = Gate { results: Vec::new() };
    let catalog = load();
    let report = run_suite(&catalog, Suite::All, DEFAULT_CAP);

    // 1. every instance builds and its table passes the exact self-test
    //    (orthogonality and the degree equation are verified at construction,
    //    so a present table.selftest row is the certificate)
    let built = report
        .instances
        .iter()
        .filter(|i| {
            i.orders.is_some()
                && i.identities
                    .iter()
                    .any(|r| r.identity_id == "table.selftest" && r.ok)
        })
        .count();
    gate.check(
        "table-selftest",
        built == catalog.instances.len() && report.instances.iter().all(|i| i.errors.is_empty()),
        format!("{built}/{} instances built with verified tables", catalog.instances.len()),
    );

    // 2. brute-force oracles agree with the pipeline wherever they ran
    let oracle_rows: Vec<_> = report
        .instances
        .iter()
        .flat_map(|i| &i.identities)
        .filter(|r| r.identity_id.starts_with("oracle."))
        .collect();
    gate.check(
        "oracle-equivalence",
        !oracle_rows.is_empty() && oracle_rows.iter().all(|r| r.ok),
        format!("{} oracle comparisons, all agreeing", oracle_rows.len()),
    );

    // 3. identity suite: zero failures over all instances
    let id_rows: Vec<_> = report
        .instances
        .iter()
        .flat_map(|i| &i.identities)
        .collect();
    let id_failures = id_rows.iter().filter(|r| !r.ok).count();
    gate.check(
        "identity-suite",
        !id_rows.is_empty() && id_failures == 0,
        format!("{} identity checks, {id_failures} failures", id_rows.len()),
    );

    // 4. fusion checked by exhaustion, plus the class-representative count
    let fusion_rows: Vec<_> = id_rows
        .iter()
        .filter(|r| r.identity_id.starts_with("fusion.") || r.identity_id == "S2.count")
        .collect();
    let has_both = fusion_rows.iter().any(|r| r.identity_id == "fusion.cv")
        && fusion_rows.iter().any(|r| r.identity_id == "fusion.vc")
        && fusion_rows.iter().any(|r| r.identity_id == "S2.count");
    gate.check(
        "fusion-exhaustion",
        has_both && fusion_rows.iter().all(|r| r.ok),
        format!("{} fusion/count checks, all holding", fusion_rows.len()),
    );

    // 5. bound suite holds everywhere; the two one-dimensional instances with
    //    a full regular orbit sit exactly on the counting bound (slack 0)
    let bound_rows: Vec<_> = report.instances.iter().flat_map(|i| &i.bounds).collect();
    let bound_failures = bound_rows.iter().filter(|b| !b.holds).count();
    let sharp = ["c2-gf3", "c4-gf5"].iter().all(|label| {
        report
            .instances
            .iter()
            .find(|i| &i.label == label)
            .map(|i| {
                i.bounds
                    .iter()
                    .any(|b| b.bound_id == "regular-orbit" && b.applicable && b.slack == "0")
            })
            .unwrap_or(false)
    });
    gate.check(
        "bound-suite",
        !bound_rows.is_empty() && bound_failures == 0 && sharp,
        format!(
            "{} bound checks, {bound_failures} failures, sharp instances at equality: {sharp}",
            bound_rows.len()
        ),
    );

    // 6. at least two coprime faithful instances with an abelian linear part,
    //    a regular orbit, and the class count equal to |V|
    let mut saturating = Vec::new();
    for entry in &catalog.instances {
        if let Ok(ctx) = build_instance(entry, DEFAULT_CAP) {
            let regular = ctx.regular_witness().ok().flatten().is_some();
            if ctx.faithful
                && ctx.coprime
                && regular
                && ctx.g_abelian()
                && ctx.k_gv() as u64 == ctx.order_v()
            {
                saturating.push(entry.label.clone());
            }
        }
    }
    gate.check(
        "class-count-saturation",
        saturating.len() >= 2,
        format!("instances with k(GV) = |V| and abelian linear part: {saturating:?}"),
    );

    // 7. norm floor over prime-order subgroups: zero violations
    let floor_rows: Vec<_> = id_rows
        .iter()
        .filter(|r| r.identity_id == "robinson" || r.identity_id == "S2.5" || r.identity_id == "S3.5")
        .collect();
    gate.check(
        "norm-floor",
        !floor_rows.is_empty() && floor_rows.iter().all(|r| r.ok),
        format!("{} floor checks, all holding", floor_rows.len()),
    );

    // 8. determinism: an independent rerun serializes byte-identically
    let report2 = run_suite(&load(), Suite::All, DEFAULT_CAP);
    let same_json = report.to_json() == report2.to_json();
    let same_csv = report.to_csv() == report2.to_csv();
    gate.check(
        "deterministic-reports",
        same_json && same_csv,
        format!("json identical: {same_json}, csv identical: {same_csv}"),
    );

    let elapsed = started.elapsed();
    let in_time = elapsed.as_secs() < 120;
    gate.check(
        "runtime-budget",
        in_time,
        format!("full acceptance run took {:.1}s (budget 120s)", elapsed.as_secs_f64()),
    );

    let failed: Vec<_> = gate
        .results
        .iter()
        .filter(|(_, ok)| !ok)
        .map(|(n, _)| n.clone())
        .collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
