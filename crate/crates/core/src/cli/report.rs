//! Serializable run reports. Field order and content are deterministic:
//! repeated runs over the same catalog produce byte-identical output, so no
//! timing or host data is ever serialized.

use serde::Serialize;

use crate::oracle::{IdentityReport, Relation};
use crate::paperq::{Applicability, BoundReport};

#[derive(Debug, Clone, Serialize)]
pub struct Orders {
    pub g: u64,
    pub v: u64,
    pub gv: u64,
    pub k_g: usize,
    pub k_gv: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Hypotheses {
    pub faithful: bool,
    pub coprime: bool,
    pub regular_orbit: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundRow {
    pub bound_id: String,
    pub applicable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
    pub slack: String,
    pub context: String,
}

impl From<&BoundReport> for BoundRow {
    fn from(b: &BoundReport) -> Self {
        let (applicable, reason) = match &b.status {
            Applicability::Satisfied => (true, None),
            Applicability::NotApplicable(r) => (false, Some(r.clone())),
        };
        BoundRow {
            bound_id: b.bound_id.clone(),
            applicable,
            reason,
            lhs: b.lhs.to_string(),
            rhs: b.rhs.to_string(),
            holds: b.holds,
            slack: b.slack.to_string(),
            context: b.context.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityRow {
    pub identity_id: String,
    pub lhs: String,
    pub relation: String,
    pub rhs: String,
    pub ok: bool,
    pub context: String,
}

impl From<&IdentityReport> for IdentityRow {
    fn from(r: &IdentityReport) -> Self {
        IdentityRow {
            identity_id: r.identity_id.clone(),
            lhs: r.lhs.clone(),
            relation: match r.relation {
                Relation::Eq => "eq",
                Relation::Le => "le",
                Relation::Ge => "ge",
            }
            .to_string(),
            rhs: r.rhs.clone(),
            ok: r.ok,
            context: r.context.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceReport {
    pub label: String,
    pub p: u16,
    pub n: usize,
    pub tags: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orders: Option<Orders>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hypotheses: Option<Hypotheses>,
    pub bounds: Vec<BoundRow>,
    pub identities: Vec<IdentityRow>,
    pub skipped: Vec<String>,
    pub errors: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Totals {
    pub instances: usize,
    pub checks: usize,
    pub failures: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub suite: String,
    pub max_order: usize,
    pub instances: Vec<InstanceReport>,
    pub totals: Totals,
}

impl RunReport {
    /// True iff every evaluated check holds and no instance errored.
    pub fn all_ok(&self) -> bool {
        self.totals.failures == 0 && self.instances.iter().all(|i| i.errors.is_empty())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }

    /// One row per check: label,kind,id,applicable,lhs,relation,rhs,ok,context
    pub fn to_csv(&self) -> String {
        let mut out = String::from("label,kind,id,applicable,lhs,relation,rhs,ok,context\n");
        for inst in &self.instances {
            for b in &inst.bounds {
                push_row(
                    &mut out,
                    &[
                        &inst.label,
                        "bound",
                        &b.bound_id,
                        &b.applicable.to_string(),
                        &b.lhs,
                        "le",
                        &b.rhs,
                        &b.holds.to_string(),
                        &b.context,
                    ],
                );
            }
            for r in &inst.identities {
                push_row(
                    &mut out,
                    &[
                        &inst.label,
                        "identity",
                        &r.identity_id,
                        "true",
                        &r.lhs,
                        &r.relation,
                        &r.rhs,
                        &r.ok.to_string(),
                        &r.context,
                    ],
                );
            }
            for e in &inst.errors {
                push_row(
                    &mut out,
                    &[&inst.label, "error", "", "false", "", "", "", "false", e],
                );
            }
        }
        out
    }
}

fn push_row(out: &mut String, fields: &[&str]) {
    for (i, f) in fields.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&csv_escape(f));
    }
    out.push('\n');
}

fn csv_escape(f: &str) -> String {
    if f.contains(',') || f.contains('"') || f.contains('\n') {
        format!("\"{}\"", f.replace('"', "\"\""))
    } else {
        f.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_escaping() {
        assert_eq!(csv_escape("plain"), "plain");
        assert_eq!(csv_escape("a,b"), "\"a,b\"");
        assert_eq!(csv_escape("a\"b"), "\"a\"\"b\"");
    }
}
