//! The full catalog within an `n + m` budget, run in a fixed order.

use std::fs;
use std::io::BufWriter;
use std::path::Path;

use super::cases::{verify, IdentityCase, Thm1Coeffs};
use super::identity::Mode;
use super::report::{write_jsonl, CaseId, Report};
use crate::error::Result;
use crate::exec::Exec;

/// Cases above this size are checked modularly.
pub const SYMBOLIC_LIMIT: i64 = 4;

fn mode_for(size: i64) -> Mode {
    if size <= SYMBOLIC_LIMIT {
        Mode::Symbolic
    } else {
        Mode::MODULAR
    }
}

/// Every case within `budget`, regular cases first and negative controls
/// last, in a fixed order.
pub fn catalog_cases(budget: u32) -> Vec<IdentityCase> {
    let b = budget as i64;
    let mut out = Vec::new();
    let mut add = |id, params: &[i64], mode| out.push(IdentityCase::new(id, params, mode));
    for s in 1..=b {
        for n in 0..s {
            add(CaseId::Thm1, &[n, s - n], mode_for(s));
        }
    }
    for m in 1..=b.min(5) {
        add(CaseId::Thm2, &[m], mode_for(m));
    }
    for id in [CaseId::Cor2_9, CaseId::Cor2_10, CaseId::Cor2_11] {
        for m in 1..=(b - 1).min(4) {
            add(id, &[m], mode_for(m + 1));
        }
    }
    for m in 1..=(b - 1).min(3) {
        for k in 1..=2 {
            for l in 1..=2 {
                add(CaseId::Prop5, &[k, l, m], Mode::RationalPoint { points: 20 });
            }
        }
    }
    for m in 1..=(b - 1).min(4) {
        add(CaseId::Prop6, &[m], mode_for(m + 1));
    }
    for id in [CaseId::Eq44, CaseId::Lem7] {
        for s in 0..=b {
            for n in 0..=s {
                add(id, &[n, s - n], Mode::Symbolic);
            }
        }
    }
    for n in 1..=b.min(6) {
        add(CaseId::NoouEqToda, &[n], Mode::Symbolic);
    }
    for s in 0..=b.min(5) {
        for n in 0..=s {
            for k in 0..=n.min(2) {
                add(CaseId::DetEqSum, &[n, s - n, k], Mode::Symbolic);
            }
        }
    }
    for k in 0..=2 {
        for m in 1..=3 {
            if k + m < b {
                add(CaseId::Rem2, &[k, m], Mode::Symbolic);
            }
        }
    }
    let lb = b.clamp(1, 5);
    add(CaseId::Lem2, &[200, 5], Mode::RationalPoint { points: 5 });
    add(CaseId::Lem3, &[lb], Mode::Symbolic);
    add(CaseId::Lem4, &[lb], Mode::Symbolic);
    add(CaseId::Lem5, &[6], Mode::Symbolic);
    add(CaseId::Lem6, &[lb], Mode::Symbolic);
    out.extend(negative_controls(budget));
    out
}

/// Variants that must fail.
pub fn negative_controls(budget: u32) -> Vec<IdentityCase> {
    let mut out = vec![IdentityCase::control(CaseId::Thm1, &[0, 1], Mode::Symbolic, "free_ring")];
    if budget >= 2 {
        for f in Thm1Coeffs::FIELDS {
            out.push(IdentityCase::control(CaseId::Thm1, &[1, 1], Mode::MODULAR, &format!("mutate_{f}")));
        }
        for id in [CaseId::Cor2_9, CaseId::Cor2_10, CaseId::Cor2_11, CaseId::Prop6] {
            out.push(IdentityCase::control(id, &[1], Mode::Symbolic, "umemura"));
        }
        let rp = Mode::RationalPoint { points: 20 };
        out.push(IdentityCase::control(CaseId::Prop5, &[1, 1, 1], rp, "printed_gauge"));
        out.push(IdentityCase::control(CaseId::Prop5, &[1, 1, 1], rp, "shifted_y"));
        out.push(IdentityCase::control(CaseId::DetEqSum, &[1, 1, 0], Mode::Symbolic, "printed_sign"));
    }
    out.push(IdentityCase::control(CaseId::DetEqSum, &[0, 1, 0], Mode::Symbolic, "no_swap"));
    out
}

/// Run the catalog. Reports come back in case order with `millis` cleared,
/// so equal seeds and budgets give identical output.
pub fn run_catalog(budget: u32, seed: u64, exec: Exec) -> Result<Vec<Report>> {
    let cases = catalog_cases(budget);
    let reports = exec.map(&cases, |c| verify(c, seed));
    reports
        .into_iter()
        .map(|r| {
            r.map(|mut r| {
                r.millis = None;
                r
            })
        })
        .collect()
}

pub fn write_catalog(path: &Path, reports: &[Report]) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    let mut out = BufWriter::new(fs::File::create(path)?);
    write_jsonl(&mut out, reports)
}
