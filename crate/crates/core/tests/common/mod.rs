//! Seeded property suites shared by the property tests and the acceptance
//! run. Each returns a one-line summary, or a description of the first
//! failure. Seeds appear in the summaries for replay.

#![allow(dead_code)]

use std::collections::HashSet;

use permwit::census::census;
use permwit::witness::{build_sigma, construct_witness};
use permwit::wreath::{check_index2, decompose_index, embed, embedding_report, BlockSystem, WreathElement};
use permwit::{Error, PermGroup, Permutation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Outcome = Result<String, String>;

pub const ORB_SEED: u64 = 0x0b5;
pub const DECOMPOSE_SEED: u64 = 0xdec;
pub const INDEX2_SEED: u64 = 0x1d2;
pub const CHAIN_SEED: u64 = 0xc4a;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A transitive group of degree `n`, from a mix of shapes so that both
/// small and large groups turn up.
pub fn random_transitive(n: usize, rng: &mut ChaCha8Rng) -> PermGroup {
    let tau = Permutation::n_cycle(n);
    loop {
        let g = match rng.gen_range(0..4) {
            0 => PermGroup::new(n, vec![tau.clone()]).unwrap(),
            1 => {
                // tau with a unit multiplier, as in the witness groups
                let units: Vec<u64> = (1..n as u64).filter(|&u| gcd(u, n as u64) == 1).collect();
                let u = units[rng.gen_range(0..units.len())];
                PermGroup::new(n, vec![tau.clone(), build_sigma(n, u).unwrap()]).unwrap()
            }
            2 => {
                let divs: Vec<usize> = (2..n).filter(|d| n % d == 0).collect();
                if divs.is_empty() {
                    PermGroup::new(n, vec![tau.clone()]).unwrap()
                } else {
                    let m = divs[rng.gen_range(0..divs.len())];
                    let top = Permutation::n_cycle(n / m);
                    let base = (0..n / m).map(|_| Permutation::random(m, rng)).collect();
                    let w = WreathElement::new(top, base).unwrap();
                    PermGroup::new(n, vec![w.to_permutation(), Permutation::random(m, rng).pad(n)]).unwrap()
                }
            }
            _ => PermGroup::new(n, vec![Permutation::random(n, rng), Permutation::random(n, rng)]).unwrap(),
        };
        if g.is_transitive() {
            return g.conjugated_by(&Permutation::random(n, rng));
        }
    }
}

/// Orbits of a normal subgroup of a transitive group all have one length,
/// which divides the degree.
pub fn orb_suite(pairs: usize) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(ORB_SEED);
    for case in 0..pairs {
        let n = rng.gen_range(2..=12);
        let g = random_transitive(n, &mut rng);
        let x = g.random_element(&mut rng);
        let seed = if rng.gen_bool(0.5) { x } else { x.pow(rng.gen_range(1..=6)) };
        let nn = g.normal_closure(&[seed]).map_err(|e| e.to_string())?;
        let orbits = nn.orbits();
        let len = orbits[0].len();
        if !nn.is_normal_in(&g).unwrap_or(false) || orbits.iter().any(|o| o.len() != len) || n % len != 0 {
            return Err(format!("seed {ORB_SEED:#x}, case {case}: degree {n}, orbits {orbits:?}"));
        }
    }
    Ok(format!("{pairs} (G, N) pairs, seed {ORB_SEED:#x}"))
}

fn naive_order(group: &PermGroup) -> usize {
    let id = Permutation::identity(group.degree());
    let mut seen = HashSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for s in group.generators() {
            let y = s.mul(&x);
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen.len()
}

/// Stabilizer-chain order equals naive closure on random groups of order
/// at most 5040.
pub fn chain_order_suite(groups: usize) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(CHAIN_SEED);
    let mut tested = 0;
    while tested < groups {
        let n = rng.gen_range(1..=9);
        let count = rng.gen_range(1..=3);
        let gens = (0..count).map(|_| Permutation::random(n, &mut rng)).collect();
        let g = PermGroup::new(n, gens).map_err(|e| e.to_string())?;
        if g.order() > 5040 {
            continue;
        }
        tested += 1;
        let naive = naive_order(&g);
        if naive as u128 != g.order() {
            return Err(format!("seed {CHAIN_SEED:#x}: {:?} has chain order {} but {naive} elements", g.generators(), g.order()));
        }
    }
    Ok(format!("{groups} groups of order <= 5040, seed {CHAIN_SEED:#x}"))
}

/// A group on consecutive blocks fixing each block.
fn random_block_group(blocks: usize, size: usize, rng: &mut ChaCha8Rng) -> PermGroup {
    let count = rng.gen_range(1..=3);
    let gens = (0..count)
        .map(|_| {
            let comps = (0..blocks).map(|_| Permutation::random(size, rng)).collect();
            WreathElement::new(Permutation::identity(blocks), comps)
                .unwrap()
                .to_permutation()
        })
        .collect();
    PermGroup::new(blocks * size, gens).unwrap()
}

pub fn decompose_suite(pairs: usize) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(DECOMPOSE_SEED);
    for case in 0..pairs {
        let blocks = rng.gen_range(2..=3);
        let size = rng.gen_range(2..=5);
        let system = BlockSystem::consecutive(blocks, size);
        let a = random_block_group(blocks, size, &mut rng);
        let b = a.normal_closure(&[a.random_element(&mut rng)]).map_err(|e| e.to_string())?;
        let d = decompose_index(&a, &b, &system).map_err(|e| format!("case {case}: {e}"))?;
        if d.index != a.order() / b.order() || d.product() != d.index || d.factors.len() != blocks {
            return Err(format!("seed {DECOMPOSE_SEED:#x}, case {case}: {d:?}"));
        }
    }
    Ok(format!("{pairs} (A, B) pairs over 2-3 blocks of size <= 5, seed {DECOMPOSE_SEED:#x}"))
}

/// `3 | [A:B]` forces `5 | [A:B]` for sampled `A <= S5 x S5` with
/// transitive projections and `B` normal in `A`.
pub fn index2_suite(samples: usize) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(INDEX2_SEED);
    let transitive5: Vec<PermGroup> = census(5).map_err(|e| e.to_string())?.entries.into_iter().map(|e| e.group).collect();
    let system = BlockSystem::consecutive(2, 5);
    let (mut p_divides, mut done) = (0, 0);
    while done < samples {
        let mut pick = || {
            let h = &transitive5[rng.gen_range(0..transitive5.len())];
            h.conjugated_by(&Permutation::random(5, &mut rng))
        };
        let (h1, h2) = (pick(), pick());
        let count = rng.gen_range(1..=3);
        let gens: Vec<Permutation> = (0..count)
            .map(|_| {
                let comps = vec![h1.random_element(&mut rng), h2.random_element(&mut rng)];
                WreathElement::new(Permutation::identity(2), comps).unwrap().to_permutation()
            })
            .collect();
        let a = PermGroup::new(10, gens).map_err(|e| e.to_string())?;
        let b = a.normal_closure(&[a.random_element(&mut rng)]).map_err(|e| e.to_string())?;
        let report = match check_index2(&a, &b, &system, 3, 5) {
            Ok(r) => r,
            // the sampled generators have an intransitive projection
            Err(Error::Hypothesis(msg)) if msg.contains("not transitive") => continue,
            Err(e) => return Err(e.to_string()),
        };
        done += 1;
        p_divides += report.p_divides_index as usize;
        if !report.passed || report.decomposition.product() != report.index {
            return Err(format!("seed {INDEX2_SEED:#x}, sample {done}: [A:B] = {}", report.index));
        }
    }
    Ok(format!("{samples} samples, {p_divides} with 3 | [A:B], seed {INDEX2_SEED:#x}"))
}

/// Witness embeddings are injective homomorphisms meeting all three
/// conditions; degree-35 inputs are rejected.
pub fn embedding_suite() -> Outcome {
    let mut checked = Vec::new();
    for (n, p) in [(6, 2), (10, 2), (14, 2), (21, 3)] {
        let w = construct_witness(n, p).map_err(|e| e.to_string())?;
        let e = embed(&w.g, &w.n1, &w.n2).map_err(|e| format!("degree {n}: {e}"))?;
        let r = embedding_report(&e, 200, n as u64).map_err(|e| e.to_string())?;
        if !r.passed {
            return Err(format!(
                "degree {n}: homomorphism {}, injective {}, conditions {:?}",
                r.homomorphism_ok, r.embedding.injective, r.embedding.conditions
            ));
        }
        checked.push(n.to_string());
    }
    // 7 orbits of size 5 force 7 to miss |N2|, so the order check fires
    // before the block-size check can
    let tau = Permutation::n_cycle(35);
    let g = PermGroup::new(35, vec![tau.clone()]).unwrap();
    let n2 = PermGroup::new(35, vec![tau.pow(7)]).unwrap();
    match embed(&g, &g, &n2) {
        Err(Error::Hypothesis(msg)) if msg.contains("differs") => {}
        other => return Err(format!("degree 35, N2 = <tau^7>: got {other:?}")),
    }
    let h = PermGroup::new(35, vec![tau.pow(5)]).unwrap();
    match embed(&h, &h, &PermGroup::trivial(35)) {
        Err(Error::Hypothesis(_)) => {}
        other => return Err(format!("degree 35, intransitive G: got {other:?}")),
    }
    if construct_witness(35, 5).is_ok() || construct_witness(35, 7).is_ok() {
        return Err("a witness was built at degree 35".into());
    }
    Ok(format!("embeddings at degrees {} pass; degree-35 inputs rejected", checked.join(", ")))
}
