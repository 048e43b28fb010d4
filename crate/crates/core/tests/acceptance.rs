//! Acceptance suite: one PASS/FAIL line per criterion.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use sollab::bijection::{phi, phi_inverse, rr_decompose, BaseKind, KindFamily};
use sollab::family::{classify, count, enumerate, Family, FamilyTag};
use sollab::involution::{
    psi, psi_orbits, theta, theta_orbits, weighted_pairs, LabeledPartition, PsiCase, ThetaCase, WeightedPair,
};
use sollab::registry::{
    counting_sides, enumeration_side, lhs, rhs, verify_counting, verify_enumeration, verify_series, IdentityId,
    VerificationReport,
};
use sollab::{IntPoly, Partition, QSeries, Var};

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn timed(report: VerificationReport, limit: Duration) -> Check {
    ensure(report.is_equal(), || format!("{report}"))?;
    ensure(Duration::from_millis(report.ms) <= limit, || format!("{} took {} ms (limit {limit:?})", report.id, report.ms))
}

/// Partitions of `0..=n` into parts from `allowed` (unbounded multiplicity).
fn dp_unrestricted(allowed: impl Fn(u32) -> bool, n: u32) -> Vec<u64> {
    let mut c = vec![0u64; n as usize + 1];
    c[0] = 1;
    for p in (1..=n).filter(|&p| allowed(p)) {
        for s in p as usize..=n as usize {
            c[s] += c[s - p as usize];
        }
    }
    c
}

/// Partitions of `0..=n` into distinct parts from `allowed`.
fn dp_distinct(allowed: impl Fn(u32) -> bool, n: u32) -> Vec<u64> {
    let mut c = vec![0u64; n as usize + 1];
    c[0] = 1;
    for p in (1..=n).filter(|&p| allowed(p)) {
        for s in (p as usize..=n as usize).rev() {
            c[s] += c[s - p as usize];
        }
    }
    c
}

fn coefficient_at_one(s: &QSeries, e: i64) -> String {
    s.specialize(&[(Var::U, 1)]).coeff(e).constant_term().to_string()
}

fn compare_counts(name: &str, s: &QSeries, want: impl Fn(i64) -> u64, from: i64, through: i64) -> Check {
    for e in from..=through {
        let got = coefficient_at_one(s, e);
        ensure(got == want(e).to_string(), || format!("{name}: q^{e} coefficient {got}, oracle {}", want(e)))?;
    }
    Ok(())
}

fn criterion_1() -> Check {
    let n = 60;
    for id in [
        IdentityId::Id121,
        IdentityId::Id122,
        IdentityId::Id123,
        IdentityId::Id123Prime,
        IdentityId::Au1,
        IdentityId::Au2,
        IdentityId::Rr1,
        IdentityId::Rr2,
        IdentityId::GfOd,
    ] {
        timed(verify_series(id, n).map_err(|e| format!("{id}: {e}"))?, Duration::from_secs(30))?;
    }
    // product sides against independent counts (u = 1)
    let mod_in = |m: u32, rs: &'static [u32]| move |p: u32| rs.contains(&(p % m));
    let rr1 = dp_unrestricted(mod_in(5, &[1, 4]), n);
    let rr2 = dp_unrestricted(mod_in(5, &[2, 3]), n);
    let au1 = dp_unrestricted(mod_in(3, &[1]), n);
    let au2 = dp_unrestricted(mod_in(6, &[2, 3]), n);
    let od = dp_distinct(|p| p % 2 == 1, n + 1);
    let od3 = dp_distinct(|p| p % 2 == 1 && p >= 3, n + 1);
    let d = dp_distinct(|_| true, n);
    let d3 = dp_distinct(|p| p >= 3, n);
    let at = |v: &[u64], e: i64| if e < 0 { 0 } else { v[e as usize] };
    let n = i64::from(n);
    compare_counts("RR1", &rhs(IdentityId::Rr1, 60).unwrap(), |e| at(&rr1, e), 0, n)?;
    compare_counts("RR2", &rhs(IdentityId::Rr2, 60).unwrap(), |e| at(&rr2, e), 0, n)?;
    compare_counts("AU1", &rhs(IdentityId::Au1, 60).unwrap(), |e| at(&au1, e), 0, n)?;
    compare_counts("AU2", &rhs(IdentityId::Au2, 60).unwrap(), |e| at(&au2, e), 0, n)?;
    compare_counts("ID_121", &rhs(IdentityId::Id121, 60).unwrap(), |e| at(&od, e), 0, n)?;
    compare_counts("ID_122", &rhs(IdentityId::Id122, 60).unwrap(), |e| at(&d, e), 0, n)?;
    compare_counts("ID_123", &rhs(IdentityId::Id123, 60).unwrap(), |e| at(&od3, e - 1) + at(&od3, e) + at(&od3, e + 1), -1, n)?;
    compare_counts("ID_123_PRIME", &rhs(IdentityId::Id123Prime, 60).unwrap(), |e| at(&d3, e) + at(&d3, e - 1) + at(&d3, e - 2), 0, n)
}

fn criterion_2() -> Check {
    timed(verify_series(IdentityId::WeiM2Para, 30).map_err(|e| e.to_string())?, Duration::from_secs(60))?;
    let l = lhs(IdentityId::WeiM2Para, 30).unwrap();
    let bivariate = l.terms().any(|(_, c)| c.degree_in(Var::X) > 0 && c.degree_in(Var::Y) > 0);
    ensure(bivariate, || "coefficients are not bivariate".into())
}

fn criterion_3() -> Check {
    let r = verify_series(IdentityId::Equiv122123P, 40).map_err(|e| e.to_string())?;
    ensure(r.is_equal(), || format!("{r}"))?;
    let through = r.through.unwrap_or(40);
    ensure(through > 0 && through <= 40, || format!("comparison order {through}"))
}

fn criterion_4() -> Check {
    let cases = [
        (IdentityId::GfLSol, 25),
        (IdentityId::GfCIj, 20),
        (IdentityId::GfOd, 25),
        (IdentityId::GfWXy, 20),
        (IdentityId::MainKa { k: 2, a: 1 }, 20),
        (IdentityId::MainKa { k: 3, a: 1 }, 20),
        (IdentityId::MainKa { k: 3, a: 2 }, 20),
        (IdentityId::MainKa { k: 4, a: 3 }, 20),
    ];
    for (id, n) in cases {
        timed(verify_enumeration(id, n).map_err(|e| format!("{id}: {e}"))?, Duration::from_secs(60))?;
    }
    let a = enumeration_side(IdentityId::MainKa { k: 2, a: 1 }, 20).unwrap();
    ensure(a == enumeration_side(IdentityId::GfLSol, 20).unwrap(), || "MAIN_KA(2,1) differs from GF_L_SOL".into())
}

fn bracketed(s: &str) -> Partition {
    Partition::from_unsorted(s.replace(['[', ']'], "").split('+').map(|t| t.trim().parse().unwrap()).collect())
}

fn criterion_5() -> Check {
    for n in 0..=30 {
        for lam in enumerate(n, &Family::CFamily.into()).unwrap() {
            let out = psi(&lam).map_err(|e| format!("psi({lam}): {e}"))?;
            let od = lam.is_strict() && lam.parts().iter().all(|p| p % 2 == 1);
            ensure((out.case == PsiCase::Fixed) == od, || format!("fixed status of {lam}"))?;
            if od {
                continue;
            }
            let (s, g) = (lam.stats(), out.output.stats());
            ensure(out.output.weight() == lam.weight() && g.distinct == s.distinct, || format!("psi({lam}) statistics"))?;
            ensure(g.repeated % 2 != s.repeated % 2, || format!("psi({lam}) keeps l_r parity"))?;
            ensure(psi(&out.output).unwrap().output == lam, || format!("psi(psi({lam})) != {lam}"))?;
        }
    }
    let t = psi_orbits(18).unwrap();
    let fixed: BTreeSet<Partition> = ["1+17", "3+15", "5+13", "7+11", "1+3+5+9"].iter().map(|s| bracketed(s)).collect();
    ensure(t.fixed.iter().cloned().collect::<BTreeSet<_>>() == fixed, || format!("fixed points {:?}", t.fixed))?;
    let rows = [
        "18 | [9+9]", "2+16 | 2+[8+8]", "4+14 | 4+[7+7]", "6+12 | [5+5]+8", "8+10 | [4+4]+10",
        "1+3+14 | 1+3+[7+7]", "1+4+13 | [1+1]+3+13", "1+5+12 | 1+[5+5]+7", "1+6+11 | 1+[3+3]+11",
        "1+7+10 | 1+[4+4]+9", "2+4+12 | 2+4+[6+6]", "2+5+11 | [1+1]+5+11", "2+6+10 | 2+[4+4]+8",
        "2+7+9 | [1+1]+7+9", "3+5+10 | [3+3]+5+7", "3+6+9 | [2+2]+5+9", "4+6+8 | [2+2]+6+8",
        "1+3+6+8 | [1+1]+3+5+8", "[1+1]+[3+3]+10 | [1+1]+[3+3]+[5+5]", "[1+1]+[4+4]+8 | [1+1]+6+10",
        "[2+2]+[4+4]+6 | [2+2]+4+10", "[1+1]+[8+8] | [1+1]+16", "[1+1]+4+[6+6] | [1+1]+4+12",
        "[2+2]+[7+7] | [2+2]+14", "[3+3]+[6+6] | [3+3]+12",
    ];
    let canon = |x: Partition, y: Partition| if x <= y { (x, y) } else { (y, x) };
    let want: BTreeSet<_> = rows
        .iter()
        .map(|r| {
            let (x, y) = r.split_once('|').unwrap();
            canon(bracketed(x), bracketed(y))
        })
        .collect();
    let got: BTreeSet<_> = t.pairs.iter().map(|(x, y)| canon(x.clone(), y.clone())).collect();
    ensure(t.pairs.len() == 25 && got == want, || format!("{} orbit pairs differ from the table", t.pairs.len()))
}

fn pair(a: &str, b: &str) -> WeightedPair {
    let b = if b == "∅" { Partition::empty() } else { bracketed(b) };
    WeightedPair::new(a.parse::<LabeledPartition>().unwrap(), b).unwrap()
}

fn criterion_6() -> Check {
    for n in 0..=14 {
        for p in weighted_pairs(n).unwrap() {
            let out = theta(&p).map_err(|e| format!("theta{p}: {e}"))?;
            ensure(theta(&out.output).unwrap().output == p, || format!("theta(theta{p}) != {p}"))?;
            if out.case == ThetaCase::Fixed {
                continue;
            }
            let mut s = p.signed_weight();
            s.add_assign_ref(&out.output.signed_weight());
            ensure(s == IntPoly::zero(), || format!("theta{p} does not negate the weight"))?;
        }
    }
    let t = theta_orbits(6).unwrap();
    let fixed: BTreeSet<_> = ["6x", "2x+4x", "1x+5x", "1+2+3x"].iter().map(|a| pair(a, "∅")).collect();
    ensure(t.fixed.iter().cloned().collect::<BTreeSet<_>>() == fixed, || "weight-6 fixed points differ".into())?;
    let rows = [
        ("6", "∅", "", "6"), ("1", "2+3", "", "1+2+3"), ("1", "5", "", "1+5"), ("1x+5", "∅", "1x", "5"),
        ("2", "4", "", "2+4"), ("2x+4", "∅", "2x", "4"), ("2+4", "∅", "3", "3"), ("2+4x", "∅", "3x", "3"),
        ("1+5", "∅", "4", "2"), ("1+5x", "∅", "4x", "2"), ("1+2+3", "∅", "1+2", "3"), ("1+2x", "3", "1x", "2+3"),
    ];
    let want: BTreeSet<_> = rows.iter().map(|(a, b, c, d)| (pair(a, b), pair(c, d))).collect();
    ensure(t.pairs.iter().cloned().collect::<BTreeSet<_>>() == want, || "weight-6 orbit pairs differ".into())
}

fn increments(n: u32, len: u32, step: u32) -> Vec<Partition> {
    enumerate(n, &FamilyTag::with_max_length(Family::Multiples { m: step }, len as usize)).unwrap().collect()
}

fn round_trips(fam: KindFamily, max_n: u32) -> Check {
    let tag = FamilyTag::from(fam.family());
    for n in 0..=max_n {
        for lam in enumerate(n, &tag).unwrap() {
            let d = phi_inverse(fam, &lam).map_err(|e| format!("phi_inverse({lam}): {e}"))?;
            ensure(d.kind.base_weight() + d.mu.weight() + d.eta.weight() == lam.weight(), || format!("weights of {lam}"))?;
            ensure(phi(d.kind, &d.mu, &d.eta).unwrap().0 == lam, || format!("phi(phi_inverse({lam})) for {fam:?}"))?;
        }
    }
    for i in 0..=max_n {
        for j in 0..=max_n {
            let kind = fam.with_indices(i, j);
            if kind.base_weight() > u64::from(max_n) {
                continue;
            }
            let rest = max_n - kind.base_weight() as u32;
            let (fs, ms) = kind.increment_steps();
            for m in 0..=rest {
                for k in 0..=rest - m {
                    for mu in increments(m, i, fs) {
                        for eta in increments(k, j, ms) {
                            let (lam, _) = phi(kind, &mu, &eta).map_err(|e| format!("phi({kind}, {mu}, {eta}): {e}"))?;
                            ensure(classify(&lam, &tag).unwrap().member, || format!("{lam} outside {tag}"))?;
                            let d = phi_inverse(fam, &lam).unwrap();
                            ensure((d.kind, d.mu, d.eta) == (kind, mu.clone(), eta.clone()), || format!("round trip of {kind}, {mu}, {eta}"))?;
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn criterion_7() -> Check {
    round_trips(KindFamily::Main, 25)?;
    round_trips(KindFamily::CPair, 25)?;
    for (k, a) in [(2, 1), (3, 1), (3, 2), (4, 1), (4, 3)] {
        round_trips(KindFamily::Ka { k, a }, 20)?;
    }
    round_trips(KindFamily::WTriple, 20)?;
    let p = |v: &[u32]| Partition::new(v.to_vec()).unwrap();
    let examples = [
        (BaseKind::Main { i: 2, j: 2 }, p(&[1, 4]), p(&[4, 4]), p(&[2, 4, 5, 6, 7, 11])),
        (BaseKind::Ka { k: 3, a: 1, i: 2, j: 2 }, p(&[1, 2]), p(&[3, 6]), p(&[2, 3, 4, 5, 7, 8, 9, 11])),
        (BaseKind::Ka { k: 3, a: 2, i: 2, j: 2 }, p(&[2, 4]), p(&[3, 9]), p(&[2, 3, 4, 5, 6, 9, 10, 11, 12, 13])),
    ];
    for (kind, mu, eta, want) in examples {
        let (got, _) = phi(kind, &mu, &eta).unwrap();
        ensure(got == want, || format!("phi({kind}, {mu}, {eta}) = {got}, expected {want}"))?;
    }
    let (n, iota) = rr_decompose(&p(&[1, 4, 7, 9])).unwrap();
    ensure(n == 4 && iota == p(&[1, 2, 2]), || format!("rr_decompose gave ({n}, {iota})"))
}

fn criterion_8() -> Check {
    for (id, n) in [
        (IdentityId::LovejoyCount, 30),
        (IdentityId::Au1Par, 30),
        (IdentityId::Au2Par, 30),
        (IdentityId::RrMacmahon, 40),
    ] {
        let r = verify_counting(id, n).map_err(|e| e.to_string())?;
        ensure(r.is_equal(), || format!("{r}"))?;
    }
    let spot = |id| counting_sides(id, 10).unwrap()[0].clone();
    ensure(spot(IdentityId::Au1Par).1 == 5 && spot(IdentityId::Au1Par).2 == 5, || "AU1_PAR at 10".into())?;
    ensure(spot(IdentityId::Au2Par).1 == 3 && spot(IdentityId::Au2Par).2 == 3, || "AU2_PAR at 10".into())?;
    // right sides against the independent residue-class counts
    let au1 = dp_unrestricted(|p| p % 3 == 1, 30);
    let au2 = dp_unrestricted(|p| p % 6 == 2 || p % 6 == 3, 30);
    for n in 0..=30u32 {
        ensure(counting_sides(IdentityId::Au1Par, n).unwrap()[0].2 as u64 == au1[n as usize], || format!("AU1_PAR rhs at {n}"))?;
        ensure(counting_sides(IdentityId::Au2Par, n).unwrap()[0].2 as u64 == au2[n as usize], || format!("AU2_PAR rhs at {n}"))?;
    }
    let rr = count(40, &Family::Rr.into()).unwrap() as u64;
    ensure(rr == dp_unrestricted(|p| p % 5 == 1 || p % 5 == 4, 40)[40], || "RR count at 40".into())
}

fn criterion_9() -> Check {
    for n in 0..=10 {
        let r = verify_series(IdentityId::ChuSpecial { n }, 30).map_err(|e| e.to_string())?;
        ensure(r.is_equal(), || format!("{r}"))?;
    }
    Ok(())
}

fn criterion_10() -> Check {
    let m = |x: u32, y: u32| IntPoly::monomial([x, y, 0, 0], 1);
    let sum = |a: IntPoly, b: IntPoly| {
        let mut s = a;
        s.add_assign_ref(&b);
        s
    };
    let printed = QSeries::from_terms(
        [(0, m(0, 0)), (1, m(1, 1)), (2, m(1, 1)), (3, sum(m(1, 1), m(0, 2))), (4, sum(m(1, 1), m(2, 2)))],
        4,
    )
    .unwrap();
    let l = lhs(IdentityId::GfLSol, 4).map_err(|e| e.to_string())?;
    ensure(l == printed, || format!("double sum gives {l}"))?;
    let e = enumeration_side(IdentityId::GfLSol, 4).unwrap();
    ensure(e == printed, || format!("enumeration gives {e}"))
}

type Criterion = (&'static str, fn() -> Check);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("series identities through q^60", criterion_1),
        ("two-parameter identity through q^30", criterion_2),
        ("difference-equation link from N=40", criterion_3),
        ("double sums against enumeration", criterion_4),
        ("psi involution suite", criterion_5),
        ("theta involution suite", criterion_6),
        ("bijection round trips and worked examples", criterion_7),
        ("counting theorems", criterion_8),
        ("terminating sum for n <= 10 through q^30", criterion_9),
        ("D^{sol,l} through q^4", criterion_10),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(()) => println!("PASS {:>2} {name} ({secs:.3} s)", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.3} s): {why}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
