//! Instance catalog: JSON descriptions of matrix groups acting on GF(p)^n.
//!
//! Generators are m x m integer matrices with m >= n; the group acts on the
//! module through the leading n coordinates, so when m > n the top-right
//! n x (m - n) block of every generator must vanish (otherwise the leading
//! coordinates are not invariant). m > n is how non-faithful actions are
//! described: the kernel is the set of elements whose top-left block is the
//! identity.

use serde::Deserialize;

use crate::gfpalg::MatP;
use crate::groups::linear_group;
use crate::paperq::{is_prime, GvContext};

use super::CliError;

/// Largest admissible field characteristic.
pub const MAX_PRIME: u16 = 251;

#[derive(Debug, Clone, Deserialize)]
pub struct CatalogEntry {
    pub label: String,
    pub p: u16,
    /// Module dimension; matrix size is read off the generators.
    pub n: usize,
    pub generators: Vec<Vec<Vec<i64>>>,
    #[serde(default)]
    pub tags: Vec<String>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Catalog {
    pub instances: Vec<CatalogEntry>,
}

pub fn load_catalog(path: &std::path::Path) -> Result<Catalog, CliError> {
    let text = std::fs::read_to_string(path)?;
    let catalog: Catalog = serde_json::from_str(&text)?;
    let mut seen = std::collections::BTreeSet::new();
    for entry in &catalog.instances {
        validate_entry(entry)?;
        if !seen.insert(entry.label.clone()) {
            return Err(CliError::Invalid {
                label: entry.label.clone(),
                reason: "duplicate label".into(),
            });
        }
    }
    Ok(catalog)
}

fn validate_entry(entry: &CatalogEntry) -> Result<(), CliError> {
    let fail = |reason: String| CliError::Invalid {
        label: entry.label.clone(),
        reason,
    };
    if !is_prime(u64::from(entry.p)) || entry.p > MAX_PRIME {
        return Err(fail(format!(
            "p = {} must be a prime at most {MAX_PRIME}",
            entry.p
        )));
    }
    if entry.n == 0 {
        return Err(fail("module dimension must be positive".into()));
    }
    if entry.generators.is_empty() {
        return Err(fail("at least one generator is required".into()));
    }
    let m = entry.generators[0].len();
    if m < entry.n {
        return Err(fail(format!(
            "matrix size {m} is smaller than module dimension {}",
            entry.n
        )));
    }
    for (gi, rows) in entry.generators.iter().enumerate() {
        if rows.len() != m || rows.iter().any(|r| r.len() != m) {
            return Err(fail(format!("generator {gi} is not {m} x {m}")));
        }
        // leading coordinates must stay invariant
        for (i, row) in rows.iter().enumerate().take(entry.n) {
            for (j, &x) in row.iter().enumerate().skip(entry.n) {
                if x.rem_euclid(i64::from(entry.p)) != 0 {
                    return Err(fail(format!(
                        "generator {gi} entry ({i},{j}) breaks module invariance"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Builds the full working context for one entry (closure, classes, table).
pub fn build_instance(entry: &CatalogEntry, cap: usize) -> Result<GvContext, CliError> {
    let fail = |reason: String| CliError::Invalid {
        label: entry.label.clone(),
        reason,
    };
    let mats: Vec<MatP> = entry
        .generators
        .iter()
        .map(|rows| MatP::new(rows, entry.p))
        .collect::<Result<_, _>>()
        .map_err(|e| fail(e.to_string()))?;
    let g = linear_group(&entry.label, &mats, entry.n, cap).map_err(|e| fail(e.to_string()))?;
    GvContext::build(&g, entry.p, entry.n, cap).map_err(|e| fail(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(json: &str) -> CatalogEntry {
        serde_json::from_str(json).unwrap()
    }

    #[test]
    fn accepts_valid_entry() {
        let e = entry(r#"{"label":"x","p":3,"n":1,"generators":[[[2]]]}"#);
        assert!(validate_entry(&e).is_ok());
        let ctx = build_instance(&e, 2000).unwrap();
        assert_eq!(ctx.order_gv(), 6);
    }

    #[test]
    fn rejects_composite_characteristic() {
        let e = entry(r#"{"label":"x","p":4,"n":1,"generators":[[[3]]]}"#);
        assert!(validate_entry(&e).is_err());
    }

    #[test]
    fn rejects_noninvariant_block() {
        let e = entry(r#"{"label":"x","p":3,"n":1,"generators":[[[1,1],[0,1]]]}"#);
        assert!(validate_entry(&e).is_err());
    }

    #[test]
    fn accepts_block_action_and_finds_kernel() {
        let e = entry(
            r#"{"label":"x","p":3,"n":2,
                "generators":[[[2,0,0],[0,2,0],[0,0,1]],[[1,0,0],[0,1,0],[0,0,2]]]}"#,
        );
        validate_entry(&e).unwrap();
        let ctx = build_instance(&e, 2000).unwrap();
        assert_eq!(ctx.order_g(), 4);
        assert!(!ctx.faithful);
    }

    #[test]
    fn rejects_singular_generator() {
        let e = entry(r#"{"label":"x","p":3,"n":1,"generators":[[[0]]]}"#);
        assert!(build_instance(&e, 2000).is_err());
    }
}
