//! Desk-scale checks of the known constructive and impossibility results
//! for totient graphs. Each check is exact; there are no tolerances.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::families::{generate, known_seed, FamilySpec, Isomer};
use crate::graph::{build, closure, construct_seed_with_leaves, depths_match_iteration_length, SeedSet};
use crate::inverse::{inverse_totient, inverse_totient_brute_table};
use crate::recognize::{recognize_family, Verdict, DEFAULT_BUDGET};
use crate::totient::{divisor_totient_sum, is_perfect_totient, is_prime, totient_sum};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    /// First failure, or a short summary on success.
    pub detail: String,
}

type Outcome = std::result::Result<String, String>;
type NamedCheck = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn seed(v: &[u64]) -> SeedSet {
    SeedSet::new(v.iter().copied()).expect("literal seeds are valid")
}

/// Random seed sets with elements in `1..=10^6` and sizes `1..=12`,
/// reproducible from `rng_seed`.
pub fn random_seed_corpus(count: usize, rng_seed: u64) -> Vec<SeedSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    (0..count)
        .map(|_| {
            let size = rng.gen_range(1..=12);
            SeedSet::new((0..size).map(|_| rng.gen_range(1..=1_000_000u64)))
                .expect("elements are positive")
        })
        .collect()
}

/// Fixed corpus seed shared by the random-seed checks.
pub const CORPUS_SEED: u64 = 0x5eed_7071;

fn example_graph() -> Outcome {
    let g = build(&seed(&[3, 7, 11, 20]));
    let want: BTreeSet<u64> = [1, 2, 3, 4, 6, 7, 8, 10, 11, 20].into();
    ensure(g.vertices() == &want, || format!("vertices {:?}", g.vertices()))?;
    let edges = vec![(2, 1), (3, 2), (4, 2), (6, 2), (7, 6), (8, 4), (10, 4), (11, 10), (20, 8)];
    ensure(g.edges() == edges, || format!("edges {:?}", g.edges()))?;
    Ok("10 vertices, 9 edges".into())
}

fn inverse_values() -> Outcome {
    let golden: [(u64, &[u64]); 9] = [
        (1, &[1, 2]),
        (2, &[3, 4, 6]),
        (3, &[]),
        (4, &[5, 8, 10, 12]),
        (5, &[]),
        (6, &[7, 9, 14, 18]),
        (7, &[]),
        (14, &[]),
        (10, &[11, 22]),
    ];
    for (m, want) in golden {
        let got = inverse_totient(m).map_err(|e| e.to_string())?;
        ensure(got.solutions() == want, || format!("φ⁻¹({m}) = {:?}", got.solutions()))?;
    }
    let table = inverse_totient_brute_table(2000).map_err(|e| e.to_string())?;
    for brute in &table {
        let m = brute.target();
        let got = inverse_totient(m).map_err(|e| e.to_string())?;
        ensure(got.solutions() == brute.solutions(), || {
            format!("m = {m}: solver {:?} vs scan {:?}", got.solutions(), brute.solutions())
        })?;
    }
    Ok("golden values and scan agreement for m <= 2000".into())
}

fn gauss() -> Outcome {
    for n in 1..=100_000u64 {
        ensure(divisor_totient_sum(n) == n as u128, || format!("n = {n}"))?;
    }
    Ok("n <= 100000".into())
}

fn tree_and_depth() -> Outcome {
    for a in random_seed_corpus(500, CORPUS_SEED) {
        let g = build(&a);
        ensure(g.is_tree() && g.edge_count() + 1 == g.order(), || format!("seed {a}"))?;
        ensure(depths_match_iteration_length(&g), || format!("depth mismatch for {a}"))?;
    }
    Ok("500 random seed sets".into())
}

fn stars() -> Outcome {
    let closures: [&[u64]; 4] = [&[1, 2], &[1, 2, 3], &[1, 2, 3, 4], &[1, 2, 3, 4, 6]];
    for (n, want) in (1..=4).zip(closures) {
        let r = recognize_family(&FamilySpec::Star(n), DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        let labels = r.labeling().ok_or(format!("K1,{n} not realized"))?;
        let got = closure(&SeedSet::new(labels.iter().copied()).map_err(|e| e.to_string())?);
        ensure(got.iter().copied().eq(want.iter().copied()), || {
            format!("K1,{n} witness closure {got:?}")
        })?;
    }
    for n in 5..=8 {
        let r = recognize_family(&FamilySpec::Star(n), DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        ensure(r.verdict() == Verdict::Refuted, || format!("K1,{n}: {:?}", r.verdict()))?;
    }
    Ok("K1,1..K1,4 realized, K1,5..K1,8 refuted".into())
}

fn refuted(spec: &str) -> std::result::Result<(), String> {
    let spec: FamilySpec = spec.parse().map_err(|e: crate::Error| e.to_string())?;
    let r = recognize_family(&spec, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    ensure(r.verdict() == Verdict::Refuted, || format!("{spec}: {:?}", r.verdict()))
}

fn realized(spec: &FamilySpec) -> std::result::Result<(), String> {
    let r = recognize_family(spec, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    ensure(r.is_realized(), || format!("{spec}: {:?}", r.verdict()))
}

fn corona_banana() -> Outcome {
    for s in [
        "corona:path:2,m=4",
        "corona:path:3,m=4",
        "banana:1x6",
        "banana:2x6",
        "banana:1x7",
    ] {
        refuted(s)?;
    }
    Ok("P2∘K̄4, P3∘K̄4, B(1,6), B(2,6), B(1,7) refuted".into())
}

fn isomorphic_to_seed(spec: &FamilySpec) -> std::result::Result<(), String> {
    let a = known_seed(spec)
        .map_err(|e| e.to_string())?
        .ok_or(format!("{spec} has no seed"))?;
    let (built, _) = build(&a).to_tree();
    let shape = generate(spec).map_err(|e| e.to_string())?;
    ensure(built.is_isomorphic(&shape), || format!("{spec}: seed {a} has wrong shape"))
}

fn centipedes() -> Outcome {
    for n in 2..=20 {
        let spec = FamilySpec::Centipede(n);
        isomorphic_to_seed(&spec)?;
        realized(&spec)?;
    }
    Ok("n = 2..20".into())
}

fn chemical() -> Outcome {
    for i in Isomer::ALL {
        if i != Isomer::Neopentane {
            isomorphic_to_seed(&FamilySpec::Isomer(i))?;
        }
    }
    isomorphic_to_seed(&FamilySpec::NanostarD2)?;
    refuted("isomer:neopentane")?;
    for n in 1..=8 {
        realized(&FamilySpec::Alkane(n))?;
    }
    for n in 6..=12 {
        let a = known_seed(&FamilySpec::Alkane(n))
            .map_err(|e| e.to_string())?
            .ok_or("no alkane seed")?;
        let (t, _) = build(&a).to_tree();
        let d = t.degree_sequence();
        let fours = d.iter().filter(|&&x| x == 4).count();
        let ones = d.iter().filter(|&&x| x == 1).count();
        ensure(fours == n && ones == 2 * n + 2 && t.order() == 3 * n + 2, || {
            format!("alkane {n}: {fours} carbons, {ones} hydrogens, order {}", t.order())
        })?;
    }
    Ok("isomers, nanostar, neopentane, alkanes".into())
}

fn nanostar() -> Outcome {
    let c = closure(&seed(&[3, 256, 376, 384, 564]));
    let want: BTreeSet<u64> =
        [1, 2, 3, 4, 8, 16, 32, 40, 64, 88, 128, 184, 256, 376, 384, 564].into();
    ensure(c == want, || format!("closure {c:?}"))?;
    isomorphic_to_seed(&FamilySpec::NanostarD2)?;
    Ok("16 vertices".into())
}

fn perfect_totients() -> Outcome {
    ensure(totient_sum(15) == 15, || "Φ(15) ≠ 15".into())?;
    let ptn = |n: u64| is_perfect_totient(n).map_err(|e| e.to_string());
    let mut p3 = 1u64;
    for k in 1..=12 {
        p3 *= 3;
        ensure(ptn(p3)?, || format!("3^{k}"))?;
    }
    for p in [2u64, 5, 7, 11, 13] {
        let mut pk = 1u64;
        for k in 1..=8 {
            pk *= p;
            ensure(!ptn(pk)?, || format!("{p}^{k}"))?;
        }
    }
    let mut lifted = 0;
    for n in 2..10_000u64 {
        if ptn(n)? && is_prime(4 * n + 1) {
            ensure(ptn(3 * (4 * n + 1))?, || format!("3(4·{n}+1)"))?;
            lifted += 1;
        }
    }
    Ok(format!("{lifted} lifted perfect totients checked"))
}

fn leaf_bounds() -> Outcome {
    for a in random_seed_corpus(500, CORPUS_SEED) {
        let g = build(&a);
        if g.order() < 2 {
            continue;
        }
        let t = g.leaves().map_err(|e| e.to_string())?.len();
        let min = g.minimal_seed().len();
        ensure(t >= 1 && t <= min + 1, || format!("seed {a}: t = {t}, |A_min| = {min}"))?;
    }
    let b = construct_seed_with_leaves(5, 3).map_err(|e| e.to_string())?;
    let t = build(&b).leaves().map_err(|e| e.to_string())?.len();
    ensure(b.len() == 5 && t == 3, || format!("constructed {b} has {t} leaves"))?;
    Ok(format!("constructed seed {b}"))
}

/// Runs every check in order.
pub fn run_all() -> Vec<Check> {
    let checks: [NamedCheck; 11] = [
        ("graph of {3,7,11,20}", example_graph),
        ("inverse totient values", inverse_values),
        ("divisor totient sum", gauss),
        ("tree and depth laws", tree_and_depth),
        ("star classification", stars),
        ("corona and banana refutation", corona_banana),
        ("centipedes", centipedes),
        ("chemical trees", chemical),
        ("nanostar D2", nanostar),
        ("perfect totient numbers", perfect_totients),
        ("leaf bounds", leaf_bounds),
    ];
    checks
        .into_iter()
        .map(|(name, f)| {
            let (passed, detail) = match f() {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            Check {
                name,
                passed,
                detail,
            }
        })
        .collect()
}
