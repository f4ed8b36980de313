//! Acceptance run: one line per criterion.
//!
//! `PASS` means every clause holds as stated. `DEVIATION` means the checks
//! ran and hold under a recorded correction, with at least one clause not
//! attainable as written (the note says which). `FAIL` fails the run.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::time::{Duration, Instant};

use umemura::codec::encode;
use umemura::combinatorics::{subset_weight, IndexSet};
use umemura::exec::Exec;
use umemura::families::{
    closed_form, gen_umemura, noou_u, toda_t, umemura_u, ClosedForm, Orientation,
};
use umemura::lab::{
    cor2_identity, errata_ledger, lemma3_sides, prop6_identity, run_catalog, thm1_sides, thm2_identity, verify,
    write_jsonl, x_recurrences, CaseId, Factor, IdentityCase, Mode, Reading, Status, Term,
};
use umemura::painleve::{
    default_grid, h1m_exact_residual, precision_gain, sweep, CheckId, CheckParams, NumericConfig, PviTuple,
};
use umemura::ring::{q, qi, Assignment, Poly, Var};

enum Verdict {
    Pass(String),
    Deviation(String),
}

fn pass(s: impl Into<String>) -> Verdict {
    Verdict::Pass(s.into())
}

fn z() -> Poly {
    Poly::var(Var::Z)
}
fn w() -> Poly {
    Poly::var(Var::W)
}
fn a() -> Poly {
    Poly::var(Var::A)
}
fn b() -> Poly {
    Poly::var(Var::B)
}
fn c(n: i64) -> Poly {
    Poly::int(n)
}

fn run_case(id: CaseId, params: &[i64], mode: Mode) -> Status {
    verify(&IdentityCase::new(id, params, mode), 7).unwrap_or_else(|e| panic!("{id} {params:?}: {e}")).status
}

fn expand(ts: &[Term]) -> Poly {
    ts.iter()
        .map(|t| {
            t.factors.iter().fold(Poly::constant(t.coeff.clone()), |acc, f| match f {
                Factor::Poly(x) => &acc * &**x,
                Factor::Inv(_) => panic!("unexpected inverse factor"),
            })
        })
        .sum()
}

fn pairs(budget: u32, min_m: u32) -> Vec<(u32, u32)> {
    (0..=budget).flat_map(|n| (min_m..=budget - n).map(move |m| (n, m))).collect()
}

fn c1() -> Verdict {
    let t = Instant::now();
    assert_eq!(gen_umemura(0, 1, 0), &(b() + c(1)) * &w().pow(2) - &(a() + c(1)) * &z().pow(2));
    let (a1, b1, a9, b9) = (a() + c(1), b() + c(1), a() + c(9), b() + c(9));
    let u02 = &(&b1.pow(2) * &b9) * &w().pow(6) - &(&(&a1 * &b1) * &b9).scale(&qi(3)) * &(&z().pow(2) * &w().pow(4))
        + &(&(&a1 * &a9) * &b1).scale(&qi(3)) * &(&z().pow(4) * &w().pow(2))
        - &(&a1.pow(2) * &a9) * &z().pow(6);
    assert_eq!(gen_umemura(0, 2, 0), u02);
    let u20 = &(&b() * &b1) * &w().pow(3)
        + &(&a() * &b1).scale(&qi(3)) * &(&z() * &w().pow(2))
        + &(&a1 * &b()).scale(&qi(3)) * &(&z().pow(2) * &w())
        + &(&a() * &a1) * &z().pow(3);
    assert_eq!(gen_umemura(2, 0, 0), u20);
    assert_eq!(gen_umemura(2, 0, 1), &b1.scale(&qi(3)) * &w().pow(2) + &a1.scale(&qi(3)) * &z().pow(2));
    let el = t.elapsed();
    assert!(el < Duration::from_secs(1), "{el:?}");
    pass(format!("U(0,1,0), U(0,2,0), U(2,0,0), U(2,0,1) exact in {el:.2?}"))
}

fn c2() -> Verdict {
    let t = Instant::now();
    for n in 0..=7 {
        assert_eq!(run_case(CaseId::NoouEqToda, &[n], Mode::Symbolic), Status::Pass, "n = {n}");
    }
    let el = t.elapsed();
    assert!(el < Duration::from_secs(60), "{el:?}");
    pass(format!("2^(n(n-1)) T_n = U_n symbolically for n <= 7 in {el:.1?}"))
}

fn c3() -> Verdict {
    for m in 0..=5 {
        assert_eq!(gen_umemura(0, m, 0), umemura_u(m + 1), "m = {m}");
    }
    pass("U_{0,m} = U_{m+1}(-z^2, w^2) for m <= 5")
}

fn c4() -> Verdict {
    let mut recorded = 0;
    for (n, m) in pairs(6, 1) {
        match run_case(CaseId::Thm1, &[n as i64, m as i64], Mode::Symbolic) {
            Status::Pass => {}
            Status::Recorded => recorded += 1,
            Status::Fail => panic!("symbolic THM1 fails at ({n},{m})"),
        }
    }
    for (n, m) in pairs(9, 1) {
        assert_ne!(run_case(CaseId::Thm1, &[n as i64, m as i64], Mode::MODULAR), Status::Fail, "modular ({n},{m})");
    }
    let (l, r) = thm1_sides(0, 1, Orientation::Reversed);
    let at = Assignment::new().set(Var::A, qi(1)).set(Var::B, qi(2));
    let (lv, rv) = (l.eval_squares(&at, &qi(1), &qi(2)).unwrap(), r.eval_squares(&at, &qi(1), &qi(2)).unwrap());
    assert_eq!((lv.clone(), rv), (qi(320), qi(320)));
    let ctl = verify(&IdentityCase::control(CaseId::Thm1, &[0, 1], Mode::Symbolic, "free_ring"), 7).unwrap();
    assert_eq!(ctl.status, Status::Fail);
    let wit = ctl.witness.unwrap();
    assert_eq!((wit["lhs"].as_str(), wit["rhs"].as_str()), (Some("1391"), Some("1655")));
    Verdict::Deviation(format!(
        "symbolic n+m <= 6, modular 3x5 n+m <= 9; anchor {lv} = 320; free ring 1391 vs 1655; \
         for n >= 1 ({recorded} symbolic cases) the unwanted term holds only with U^(1) built from (i+j)/(j-i), not (i+j)/(i-j) as stated"
    ))
}

fn c5() -> Verdict {
    let mut signed = 0;
    for (n, m) in pairs(7, 0) {
        match run_case(CaseId::Eq44, &[n as i64, m as i64], Mode::Symbolic) {
            Status::Pass => {}
            Status::Recorded => signed += 1,
            Status::Fail => panic!("EQ44 fails at ({n},{m})"),
        }
    }
    let lhs = gen_umemura(0, 2, 0).substitute(&[(Var::B, a())]);
    let stated = &(&(a() + c(1)).pow(2) * &(a() + c(9))) * &(&(z() + w()).pow(3) * &(z() - w()).pow(3));
    assert_eq!(closed_form(ClosedForm::Eq44, 0, 2).unwrap(), stated);
    assert_ne!(lhs, stated);
    assert_eq!(lhs, stated.scale(&qi(-1)));
    Verdict::Deviation(format!(
        "exact for n+m <= 7 with factor (-1)^C(m+1,2) ({signed} cases carry it); anchor as written unattainable: U_{{0,2}}(a,a) = -(a+1)^2(a+9)(z+w)^3(z-w)^3"
    ))
}

fn c6() -> Verdict {
    for (n, m) in pairs(6, 0) {
        assert_eq!(run_case(CaseId::Lem7, &[n as i64, m as i64], Mode::Symbolic), Status::Pass, "({n},{m})");
    }
    let bb = Poly::var(Var::B2).pow(2).scale(&qi(-4));
    let direct = gen_umemura(2, 0, 0).substitute(&[(Var::A, c(0)), (Var::B, bb.clone())]);
    let anchor = &(&bb * &w()) * &(&(&bb + &c(1)) * &w().pow(2) + z().pow(2).scale(&qi(3)));
    assert_eq!(direct, anchor);
    assert_eq!(closed_form(ClosedForm::Eq45, 2, 0).unwrap(), anchor);
    pass("b1 = 0 specializations exact for n+m <= 6; U_{2,0}(0,b2) = b w((b+1)w^2 + 3z^2)")
}

fn c7() -> Verdict {
    for m in 1..=5 {
        assert_eq!(run_case(CaseId::Thm2, &[m], Mode::Symbolic), Status::Pass, "m = {m}");
    }
    let id = thm2_identity(&umemura_u(2));
    let at = Assignment::new().set(Var::B1, qi(1)).set(Var::B2, qi(2));
    let l = expand(&id.lhs).eval_squares(&at, &qi(1), &qi(2)).unwrap();
    let r = expand(&id.rhs).eval_squares(&at, &qi(1), &qi(2)).unwrap();
    assert_eq!((l, r), (qi(-1395), qi(-1395)));
    pass("symbolic for m <= 5; both sides -1395 at (2,1,2,1,2)")
}

fn c8() -> Verdict {
    let ids = [CaseId::Cor2_9, CaseId::Cor2_10, CaseId::Cor2_11];
    for m in 1..=4u32 {
        for id in ids {
            assert_eq!(run_case(id, &[m as i64], Mode::Symbolic), Status::Pass, "{id} m = {m}");
            let alt = cor2_identity(id, m, Reading::Umemura).check(Mode::RationalPoint { points: 3 }, 7).unwrap();
            assert!(!alt.holds(), "{id} m = {m} holds under the Umemura reading");
        }
    }
    let id = cor2_identity(CaseId::Cor2_9, 1, Reading::Generalized);
    let at = Assignment::new().set(Var::B1, qi(1)).set(Var::B2, qi(2));
    let vals: Vec<_> = id.rhs.iter().map(|t| expand(std::slice::from_ref(t)).eval_squares(&at, &qi(1), &qi(2)).unwrap()).collect();
    assert!(vals.contains(&qi(3645)), "{vals:?}");
    assert_eq!(qi(3645), qi(5) * qi(729));
    pass("all three relations for m <= 4 under U_{0,m}; Umemura reading fails; 3645 = 5 * 729 at m = 1")
}

fn c9() -> Verdict {
    let mode = Mode::RationalPoint { points: 20 };
    for k in 1..=2i64 {
        for l in 1..=2 {
            for m in 1..=3 {
                assert_ne!(run_case(CaseId::Prop5, &[k, l, m], mode), Status::Fail, "({k},{l},{m})");
                for (i, r) in x_recurrences(k, l, m).iter().enumerate() {
                    assert!(r.check(mode, 7).unwrap().holds(), "X recurrence {i} at ({k},{l},{m})");
                }
            }
        }
    }
    Verdict::Deviation(
        "exact at 20 rational points for {1,2}x{1,2}x{1,2,3}; X satisfies both recurrences; the lattice equation holds with T = U_{0,m}/X, not U_{0,m} X as stated".into(),
    )
}

fn c10() -> Verdict {
    for m in 1..=4u32 {
        assert_ne!(run_case(CaseId::Prop6, &[m as i64], Mode::Symbolic), Status::Fail, "m = {m}");
        let mut holding = Vec::new();
        for reading in [Reading::Generalized, Reading::Umemura] {
            for sign in [1, -1] {
                if prop6_identity(m, reading, sign).check(Mode::RationalPoint { points: 5 }, 7).unwrap().holds() {
                    holding.push((reading, sign));
                }
            }
        }
        assert_eq!(holding, vec![(Reading::Generalized, -1)], "m = {m}");
    }
    Verdict::Deviation("exactly one reading holds for m <= 4: U_{0,m}, and only with the right-hand side negated".into())
}

fn c11() -> Verdict {
    assert_eq!(run_case(CaseId::Lem2, &[200, 5], Mode::Symbolic), Status::Pass);
    assert_eq!(run_case(CaseId::Lem3, &[5], Mode::Symbolic), Status::Pass);
    assert_eq!(run_case(CaseId::Lem5, &[6], Mode::Symbolic), Status::Pass);
    let lem4 = run_case(CaseId::Lem4, &[5], Mode::Symbolic);
    let lem6 = run_case(CaseId::Lem6, &[5], Mode::Symbolic);
    assert_ne!(lem4, Status::Fail);
    assert_ne!(lem6, Status::Fail);
    let (l, r) = lemma3_sides(&[2], &[]).unwrap();
    assert_eq!((l, r), (qi(8), qi(8)));
    let (l, r) = lemma3_sides(&[1, 2], &[1]).unwrap();
    assert_eq!((l, r), (qi(0), qi(0)));
    let verdict = format!(
        "LEM2 (200 pairs x 5 points), LEM3, LEM5 exact; sum-rule anchors 8 and 0; LEM4 {lem4}, LEM6 {lem6} exhaustively for n+m <= 5"
    );
    if lem4 == Status::Pass && lem6 == Status::Pass {
        pass(verdict)
    } else {
        Verdict::Deviation(verdict + " (LEM4 converse fails at 34 accidental cancellations; LEM6 sign factor is A, not (-1)^A)")
    }
}

fn c12() -> Verdict {
    let t = Instant::now();
    let mut count = 0usize;
    for (n, m) in pairs(10, 0) {
        let set = IndexSet::new(n, m);
        for s in set.subsets() {
            subset_weight(&set, s).unwrap_or_else(|e| panic!("({n},{m}): {e}"));
            count += 1;
        }
    }
    let el = t.elapsed();
    assert!(el < Duration::from_secs(10), "{el:?}");
    pass(format!("{count} subset weights integral for n+m <= 10 in {el:.2?}"))
}

fn numeric(check: CheckId, cp: &CheckParams, tol: i32) -> (bool, f64) {
    let cfg = NumericConfig::new(50).unwrap().tolerance(tol);
    let r = sweep(check, cp, &cfg).unwrap();
    (r.passed(), r.magnitude())
}

fn c13() -> Verdict {
    let grid = default_grid();
    let mut worst: f64 = f64::NEG_INFINITY;
    let mut min_gain = f64::INFINITY;
    let mut expect_pass = |check: CheckId, cp: CheckParams, tol: i32| {
        let (ok, mag) = numeric(check, &cp, tol);
        assert!(ok, "{check} n={} m={} residual 1e{mag:.1}", cp.n, cp.m);
        worst = worst.max(mag);
        let gain = precision_gain(check, &cp, &grid, 50).unwrap();
        assert!(gain >= 10.0, "{check} n={} m={} gain {gain:.1}", cp.n, cp.m);
        min_gain = min_gain.min(gain);
    };
    for m in 0..=4 {
        expect_pass(CheckId::EviH0m, CheckParams::new(0, m), -35);
    }
    for m in 0..=4u32 {
        let (ok, mag) = numeric(CheckId::H1m, &CheckParams::new(1, m), -35);
        assert!(ok, "h1m m={m} 1e{mag:.1}");
        for t in &grid {
            for (b3, b4) in [(q(1, 2), q(3, 2)), (q(-7, 3), qi(5))] {
                assert_eq!(h1m_exact_residual(m, t, &b3, &b4), qi(0));
            }
        }
    }
    for (n, m) in pairs(5, 0).into_iter().filter(|&(n, _)| n >= 1) {
        expect_pass(CheckId::EviHnm, CheckParams::new(n, m), -35);
        expect_pass(CheckId::Reduction, CheckParams::new(n, m), -35);
    }
    let mut stated_fail = 0;
    for m in 1..=3 {
        for tuple in [PviTuple::ThirdParam, PviTuple::FourthParam] {
            let mut cp = CheckParams::new(0, m);
            cp.tuple = tuple;
            let (ok, _) = numeric(CheckId::PviQm, &cp, -30);
            assert!(!ok, "q_m unexpectedly solves the stated tuple {tuple:?} at m={m}");
            stated_fail += 1;
        }
        let mut cp = CheckParams::new(0, m);
        cp.tuple = PviTuple::NegatedThird;
        expect_pass(CheckId::PviQm, cp, -30);
        expect_pass(CheckId::EviHbar, CheckParams::new(0, m), -35);
    }
    Verdict::Deviation(format!(
        "E_VI for h_0m (m <= 4), h_1m exact zeros, h_nm and its reduction to h_0 (n+m <= 5), hbar (1 <= m <= 3) pass; worst 1e{worst:.0}, min precision gain {min_gain:.0} orders; \
         q_m under both stated tuples unattainable ({stated_fail}/6 fail at O(1)); q_m solves P_VI at (b1,b2,-(m+1/2),0) for 1 <= m <= 3"
    ))
}

fn c14() -> Verdict {
    let ledger = errata_ledger(50).unwrap();
    for id in ["T2_DISPLAY", "EVI_SQUARE", "H0_SQRT", "REM2_SIGN", "LEM1_DET"] {
        let e = ledger.iter().find(|e| e.id == id).unwrap_or_else(|| panic!("{id} missing"));
        assert!(e.confirmed, "{id}: {}", e.witness);
    }
    assert!(ledger.iter().all(|e| e.confirmed));
    serde_json::to_string(&ledger).unwrap();
    pass(format!("{} entries, each witness recomputed and confirmed", ledger.len()))
}

fn c15() -> Verdict {
    let render = || {
        let reports = run_catalog(6, 7, Exec::Parallel).unwrap();
        assert!(reports.iter().all(|r| r.as_expected()), "unexpected status in catalog");
        let mut buf = Vec::new();
        write_jsonl(&mut buf, &reports).unwrap();
        (reports.len(), buf)
    };
    let (n, first) = render();
    let (_, second) = render();
    assert_eq!(first, second, "catalog output differs between runs");
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("../cli/tests/golden");
    let mut files = 0;
    let mut check = |name: String, p: Poly| {
        let disk = std::fs::read_to_string(golden.join(&name)).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(disk, encode(&p) + "\n", "{name}");
        files += 1;
    };
    for (nn, m) in pairs(4, 0) {
        for k in 0..=nn {
            check(format!("gen_sum_{nn}_{m}_{k}.json"), gen_umemura(nn, m, k));
        }
    }
    for k in 0..=5 {
        check(format!("toda_t_{k}.json"), toda_t(k).unwrap());
        check(format!("noou_u_{k}.json"), noou_u(k));
    }
    pass(format!("budget 6 seed 7: {n} reports byte-identical across two runs; {files} golden files match"))
}

fn main() {
    type Criterion = (&'static str, fn() -> Verdict);
    let criteria: [Criterion; 15] = [
        ("construction anchors", c1),
        ("Toda / closed form", c2),
        ("bridge to U_{m+1}", c3),
        ("main recurrence", c4),
        ("a = b factorization", c5),
        ("b1 = 0 specializations", c6),
        ("recurrence in b1", c7),
        ("three-term relations", c8),
        ("lattice equation", c9),
        ("b1 = 0 relation", c10),
        ("lemma suite", c11),
        ("integrality", c12),
        ("Painleve numerics", c13),
        ("errata ledger", c14),
        ("determinism", c15),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in criteria.into_iter().enumerate() {
        let t = Instant::now();
        let (tag, note) = match catch_unwind(AssertUnwindSafe(f)) {
            Ok(Verdict::Pass(s)) => ("PASS", s),
            Ok(Verdict::Deviation(s)) => ("DEVIATION", s),
            Err(e) => {
                failed += 1;
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                ("FAIL", msg)
            }
        };
        println!("criterion {:>2} {tag:<9} {name}: {note} [{:.1?}]", i + 1, t.elapsed());
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
