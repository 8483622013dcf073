//! Suite orchestration: runs the selected checks over every catalog entry,
//! scanning module orbit representatives and linear class representatives.
//! A failed check is recorded, never fatal; only malformed catalogs abort.

use crate::groups::SubgroupHandle;
use crate::oracle::{
    check_fusion_cv, check_fusion_vc, check_identities_s2, check_identities_s3,
    check_identity_s1, check_induced_formulas, check_oracles, robinson_floor, IdentityReport,
    OracleError,
};
use crate::paperq::{
    bound_centralizer_volume, bound_dual, bound_knorr, bound_prime_element, bound_regular_orbit,
    GvContext,
};

use super::catalog::{build_instance, Catalog, CatalogEntry};
use super::report::{Hypotheses, IdentityRow, InstanceReport, Orders, RunReport, Totals};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Identities,
    Bounds,
    TableSelftest,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Identities => "identities",
            Suite::Bounds => "bounds",
            Suite::TableSelftest => "table-selftest",
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        match s {
            "all" => Some(Suite::All),
            "identities" => Some(Suite::Identities),
            "bounds" => Some(Suite::Bounds),
            "table-selftest" => Some(Suite::TableSelftest),
            _ => None,
        }
    }
}

pub fn run_suite(catalog: &Catalog, suite: Suite, max_order: usize) -> RunReport {
    let mut instances = Vec::new();
    for entry in &catalog.instances {
        instances.push(run_instance(entry, suite, max_order));
    }
    let checks = instances
        .iter()
        .map(|i| i.bounds.len() + i.identities.len())
        .sum();
    let failures = instances
        .iter()
        .map(|i| {
            i.bounds.iter().filter(|b| !b.holds).count()
                + i.identities.iter().filter(|r| !r.ok).count()
        })
        .sum();
    let skipped = instances.iter().map(|i| i.skipped.len()).sum();
    RunReport {
        suite: suite.name().to_string(),
        max_order,
        totals: Totals {
            instances: instances.len(),
            checks,
            failures,
            skipped,
        },
        instances,
    }
}

struct Collector {
    identities: Vec<IdentityRow>,
    skipped: Vec<String>,
    errors: Vec<String>,
}

impl Collector {
    fn take(&mut self, what: &str, r: Result<Vec<IdentityReport>, OracleError>) {
        match r {
            Ok(rows) => self.identities.extend(rows.iter().map(IdentityRow::from)),
            Err(OracleError::Hypothesis(h)) => self.skipped.push(format!("{what}: {h}")),
            Err(e) => self.errors.push(format!("{what}: {e}")),
        }
    }
}

fn run_instance(entry: &CatalogEntry, suite: Suite, max_order: usize) -> InstanceReport {
    let mut report = InstanceReport {
        label: entry.label.clone(),
        p: entry.p,
        n: entry.n,
        tags: entry.tags.clone(),
        orders: None,
        hypotheses: None,
        bounds: Vec::new(),
        identities: Vec::new(),
        skipped: Vec::new(),
        errors: Vec::new(),
    };
    let ctx = match build_instance(entry, max_order) {
        Ok(c) => c,
        Err(e) => {
            report.errors.push(e.to_string());
            return report;
        }
    };
    report.orders = Some(Orders {
        g: ctx.order_g(),
        v: ctx.order_v(),
        gv: ctx.order_gv(),
        k_g: ctx.k_g(),
        k_gv: ctx.k_gv(),
    });
    let regular_orbit = match ctx.regular_witness() {
        Ok(w) => w.is_some(),
        Err(e) => {
            report.errors.push(e.to_string());
            false
        }
    };
    report.hypotheses = Some(Hypotheses {
        faithful: ctx.faithful,
        coprime: ctx.coprime,
        regular_orbit,
    });

    // the table itself: construction already verified orthogonality and the
    // degree equation exactly, so reaching this point is the check
    report.identities.push(IdentityRow {
        identity_id: "table.selftest".into(),
        lhs: ctx
            .table
            .degrees
            .iter()
            .map(|d| i128::from(*d) * i128::from(*d))
            .sum::<i128>()
            .to_string(),
        relation: "eq".into(),
        rhs: ctx.order_gv().to_string(),
        ok: true,
        context: String::new(),
    });
    if suite == Suite::TableSelftest {
        return report;
    }

    let orbit_reps = match ctx.orbit_reps() {
        Ok(r) => r,
        Err(e) => {
            report.errors.push(e.to_string());
            return report;
        }
    };
    let g_reps = match ctx.g_class_reps() {
        Ok(r) => r,
        Err(e) => {
            report.errors.push(e.to_string());
            return report;
        }
    };

    if suite == Suite::All || suite == Suite::Bounds {
        run_bounds(&ctx, &orbit_reps, &g_reps, &mut report);
    }
    if suite == Suite::All || suite == Suite::Identities {
        run_identities(&ctx, &orbit_reps, &g_reps, &mut report);
    }
    report
}

fn run_bounds(
    ctx: &GvContext,
    orbit_reps: &[crate::gfpalg::VecP],
    g_reps: &[usize],
    report: &mut InstanceReport,
) {
    let mut push = |r: Result<Vec<crate::paperq::BoundReport>, crate::paperq::PaperqError>| match r
    {
        Ok(rows) => report.bounds.extend(rows.iter().map(Into::into)),
        Err(e) => report.errors.push(e.to_string()),
    };
    push(bound_regular_orbit(ctx));
    push(bound_centralizer_volume(ctx));
    for v in orbit_reps.iter().filter(|v| !v.is_zero()) {
        push(bound_knorr(ctx, v));
        push(bound_prime_element(ctx, v));
    }
    for &g_idx in g_reps {
        if g_idx == ctx.gv.view.identity_index() {
            continue;
        }
        push(bound_dual(ctx, g_idx));
    }
}

fn run_identities(
    ctx: &GvContext,
    orbit_reps: &[crate::gfpalg::VecP],
    g_reps: &[usize],
    report: &mut InstanceReport,
) {
    let mut col = Collector {
        identities: std::mem::take(&mut report.identities),
        skipped: std::mem::take(&mut report.skipped),
        errors: std::mem::take(&mut report.errors),
    };
    col.take("oracles", check_oracles(ctx));
    for v in orbit_reps.iter().filter(|v| !v.is_zero()) {
        col.take(&format!("S1 at {v}"), check_identity_s1(ctx, v));
        col.take(&format!("induced at {v}"), check_induced_formulas(ctx, v));
        col.take(&format!("S2 at {v}"), check_identities_s2(ctx, v));
        col.take(&format!("fusion.cv at {v}"), check_fusion_cv(ctx, v));
        let floor = ctx.translation_index(v).map_err(OracleError::from).and_then(|idx| {
            let a = SubgroupHandle::cyclic(&ctx.gv.view, idx).map_err(OracleError::from)?;
            robinson_floor(ctx, &a)
        });
        col.take(&format!("floor at {v}"), floor);
    }
    for &g_idx in g_reps {
        if g_idx == ctx.gv.view.identity_index() {
            continue;
        }
        let g_str = format!("{}", ctx.gv.view.element(g_idx));
        col.take(&format!("S3 at {g_str}"), check_identities_s3(ctx, g_idx));
        col.take(&format!("fusion.vc at {g_str}"), check_fusion_vc(ctx, g_idx));
    }
    report.identities = col.identities;
    report.skipped = col.skipped;
    report.errors = col.errors;
}
