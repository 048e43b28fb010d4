use std::collections::BTreeMap;

use sollab::bijection::{phi, phi_inverse, rr_compose, rr_decompose, BaseKind, KindFamily, MoveOp};
use sollab::family::{classify, count, enumerate, Family, FamilyTag};
use sollab::Partition;

/// Partitions of `n` into at most `len` parts, each a multiple of `step`.
fn increments(n: u32, len: u32, step: u32) -> Vec<Partition> {
    let tag = FamilyTag::with_max_length(Family::Multiples { m: step }, len as usize);
    enumerate(n, &tag).unwrap().collect()
}

/// Exhaustive check of one kind family up to weight `max_n`: both round
/// trips, weight additivity, block signature and per-(i, j) cardinalities.
fn sweep(fam: KindFamily, max_n: u32) {
    let tag = FamilyTag::from(fam.family());
    let mut images: BTreeMap<(u32, u32, u32), usize> = BTreeMap::new();
    for n in 0..=max_n {
        for lam in enumerate(n, &tag).unwrap() {
            let d = phi_inverse(fam, &lam).unwrap_or_else(|e| panic!("phi_inverse({lam}) failed: {e}"));
            let (back, _) = phi(d.kind, &d.mu, &d.eta).unwrap();
            assert_eq!(back, lam, "phi(phi_inverse(λ)) != λ for {lam} via {}", d.kind);
            let (i, j) = d.kind.indices();
            *images.entry((i, j, n)).or_default() += 1;
        }
    }
    let mut domain: BTreeMap<(u32, u32, u32), usize> = BTreeMap::new();
    for i in 0..=max_n {
        for j in 0..=max_n {
            let kind = fam.with_indices(i, j);
            let base = kind.base_weight();
            if base > u64::from(max_n) {
                continue;
            }
            let (fstep, mstep) = kind.increment_steps();
            for n in base as u32..=max_n {
                let rest = n - base as u32;
                for m in 0..=rest {
                    for mu in increments(m, i, fstep) {
                        for eta in increments(rest - m, j, mstep) {
                            let (lam, trace) = phi(kind, &mu, &eta)
                                .unwrap_or_else(|e| panic!("phi({kind}, {mu}, {eta}) failed: {e}"));
                            assert_eq!(lam.weight(), u64::from(n));
                            let v = classify(&lam, &tag).unwrap();
                            assert!(v.member, "{lam} not in {tag}");
                            assert_eq!(v.indices, Some((i as usize, j as usize)), "signature of {lam}");
                            for (k, s) in trace.steps.iter().enumerate() {
                                if s.op == MoveOp::Adjustment {
                                    assert_eq!(trace.steps[k - 1].op, MoveOp::Forward);
                                }
                                if s.op != MoveOp::Forward && s.op != MoveOp::Backward {
                                    assert_eq!(s.snapshot.to_partition().len(), lam.len());
                                }
                            }
                            let d = phi_inverse(fam, &lam).unwrap();
                            assert_eq!((d.kind, &d.mu, &d.eta), (kind, &mu, &eta), "phi_inverse(phi(..)) for {lam}");
                            *domain.entry((i, j, n)).or_default() += 1;
                        }
                    }
                }
            }
        }
    }
    assert_eq!(domain, images, "per-(i, j, n) cardinalities differ for {fam:?}");
}

#[test]
fn main_round_trips_through_weight_25() {
    sweep(KindFamily::Main, 25);
}

#[test]
fn cpair_round_trips_through_weight_25() {
    sweep(KindFamily::CPair, 25);
}

#[test]
fn ka_round_trips_through_weight_20() {
    for (k, a) in [(2, 1), (3, 1), (3, 2), (4, 1), (4, 3)] {
        sweep(KindFamily::Ka { k, a }, 20);
    }
}

#[test]
fn wtriple_round_trips_through_weight_20() {
    sweep(KindFamily::WTriple, 20);
}

#[test]
fn normalizations_follow_backward_moves() {
    for n in 0..=18 {
        for lam in enumerate(n, &Family::Strict.into()).unwrap() {
            let d = phi_inverse(KindFamily::Main, &lam).unwrap();
            let steps = &d.trace.steps;
            for (k, s) in steps.iter().enumerate() {
                if s.op == MoveOp::Normalization {
                    assert!(matches!(steps[k - 1].op, MoveOp::Backward | MoveOp::Normalization));
                }
            }
            let bw = steps.iter().filter(|s| s.op == MoveOp::Backward).count() as u64;
            assert_eq!(bw * 2, d.eta.weight());
        }
    }
}

#[test]
fn rr_prototype_counts() {
    // |RR with n parts, weight m| = partitions of m - n^2 into at most n parts
    for m in 0..=40u32 {
        let mut by_len: BTreeMap<usize, usize> = BTreeMap::new();
        for lam in enumerate(m, &Family::Rr.into()).unwrap() {
            let (n, iota) = rr_decompose(&lam).unwrap();
            assert_eq!(lam.weight(), (n * n) as u64 + iota.weight());
            assert_eq!(rr_compose(n, &iota).unwrap(), lam);
            *by_len.entry(n).or_default() += 1;
        }
        for n in 0..=20usize {
            let sq = (n * n) as u32;
            let want = if sq > m { 0 } else { count(m - sq, &FamilyTag::with_max_length(Family::All, n)).unwrap() };
            assert_eq!(by_len.get(&n).copied().unwrap_or(0), want, "m={m}, n={n}");
        }
    }
}

#[test]
fn kind_signature_for_main() {
    for i in 0..4u32 {
        for j in 0..3u32 {
            let kind = BaseKind::Main { i, j };
            let (lam, _) = phi(kind, &Partition::new(vec![1; i as usize]).unwrap(), &Partition::new(vec![2; j as usize]).unwrap()).unwrap();
            let s = lam.stats();
            assert_eq!((s.sol, s.length), (Some(i as usize), (i + 2 * j) as usize));
        }
    }
}
