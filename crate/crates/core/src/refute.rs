//! Search for configurations at degree `pq`, where none should exist when
//! `p < q` and `p` does not divide `q - 1`.
//!
//! The census checks for `q` carry the actual argument. The seeded random
//! search is corroboration: it samples imprimitive groups of degree `pq`,
//! enumerates their normal subgroups, and tests every (transitive N1,
//! intransitive N2) pair with isomorphic quotients.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::census::checks::{self, CheckParams};
use crate::census::{census, Census, MAX_STANDARD_Q};
use crate::error::{Error, Result};
use crate::group::{PermGroup, DEFAULT_ELEMENT_BUDGET};
use crate::numthy::{euler_phi, is_prime};
use crate::perm::Permutation;
use crate::quotient::{isomorphic, quotient, DEFAULT_QUOTIENT_BUDGET};
use crate::witness::{verify_groups, VerificationReport};
use crate::wreath::WreathElement;

pub const METHOD: &str = "lemma chain verified on the complete census of transitive groups of degree q; \
random sampling of imprimitive groups of degree pq is corroboration, not exhaustive enumeration";

#[derive(Clone, Debug, Serialize)]
pub struct CheckVerdict {
    pub check: &'static str,
    pub passed: bool,
    pub violations: usize,
    pub entries_checked: usize,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SampleCounts {
    /// Samples drawn.
    pub drawn: usize,
    /// Generated groups that were not transitive on `pq` points.
    pub intransitive: usize,
    /// Transitive groups over the element budget, not analysed.
    pub skipped_over_budget: usize,
    /// Transitive groups within budget (repeats included).
    pub tested: usize,
    /// Distinct groups among `tested`.
    pub distinct_groups: usize,
    /// Proper normal pairs with N1 transitive and N2 intransitive.
    pub pairs_considered: usize,
    /// Pairs among those with equal orders, whose quotients were compared.
    pub pairs_compared: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RefutationReport {
    pub p: u64,
    pub q: u64,
    pub degree: u64,
    pub seed: u64,
    pub samples: usize,
    pub hypothesis_ok: bool,
    pub method: &'static str,
    pub census_orders: Vec<u128>,
    pub census_verdicts: Vec<CheckVerdict>,
    pub counts: SampleCounts,
    pub counterexamples_found: usize,
    pub counterexamples: Vec<VerificationReport>,
    pub status: &'static str,
    /// Wall time; not serialized, so reports replay byte for byte.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl RefutationReport {
    pub fn passed(&self) -> bool {
        self.counterexamples_found == 0 && self.census_verdicts.iter().all(|v| v.passed)
    }
}

/// Rejects `(p, q)` outside the range where no witness should exist.
pub fn check_refute_hypothesis(p: u64, q: u64) -> Result<()> {
    if !is_prime(p) || !is_prime(q) || p >= q {
        return Err(Error::InvalidArgument(format!(
            "need primes p < q, got p = {p}, q = {q}"
        )));
    }
    if q > MAX_STANDARD_Q {
        return Err(Error::Budget {
            what: "refutation prime q",
            size: q as u128,
            budget: MAX_STANDARD_Q as u128,
        });
    }
    if (q - 1) % p == 0 {
        let n = p * q;
        let phi = euler_phi(n)?;
        let mut msg = format!("{p} divides q - 1 = {}, so the nonexistence claim does not apply", q - 1);
        if phi % p == 0 {
            msg.push_str(&format!(
                "; {p} divides phi({n}) = {phi}, so degree {n} has witnesses (see `permwit witness {n} --prime {p}`)"
            ));
        }
        return Err(Error::Hypothesis(msg));
    }
    Ok(())
}

pub fn refute(p: u64, q: u64, samples: usize, seed: u64) -> Result<RefutationReport> {
    check_refute_hypothesis(p, q)?;
    let start = Instant::now();
    let census_q = census(q)?;
    let census_p = census(p)?;

    let params = CheckParams { p: Some(p) };
    let mut census_verdicts = Vec::new();
    for check in checks::registry() {
        let r = check.run(&census_q, &params)?;
        census_verdicts.push(CheckVerdict {
            check: r.check,
            passed: r.passed,
            violations: r.violations(),
            entries_checked: r.applicable(),
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sampler = Sampler {
        p: p as usize,
        q: q as usize,
        census_p: &census_p,
        census_q: &census_q,
    };
    let mut counts = SampleCounts {
        drawn: samples,
        ..SampleCounts::default()
    };
    let mut seen = HashSet::new();
    let mut counterexamples = Vec::new();
    for _ in 0..samples {
        let g = sampler.draw(&mut rng)?;
        if !g.is_transitive() {
            counts.intransitive += 1;
            continue;
        }
        if g.order() > DEFAULT_ELEMENT_BUDGET {
            counts.skipped_over_budget += 1;
            continue;
        }
        counts.tested += 1;
        if !seen.insert((g.order(), g.fingerprint(DEFAULT_ELEMENT_BUDGET)?)) {
            continue;
        }
        counts.distinct_groups += 1;
        let search = search_group(&g)?;
        counts.pairs_considered += search.considered;
        counts.pairs_compared += search.compared;
        let found = search.counterexamples;
        counterexamples.extend(found);
    }

    let counterexamples_found = counterexamples.len();
    let mut report = RefutationReport {
        p,
        q,
        degree: p * q,
        seed,
        samples,
        hypothesis_ok: true,
        method: METHOD,
        census_orders: census_q.orders(),
        census_verdicts,
        counts,
        counterexamples_found,
        counterexamples,
        status: "",
        elapsed: Duration::ZERO,
    };
    report.status = if report.passed() {
        "consistent"
    } else {
        "THEOREM-VIOLATION"
    };
    report.elapsed = start.elapsed();
    Ok(report)
}

pub struct GroupSearch {
    pub considered: usize,
    pub compared: usize,
    /// Pairs with isomorphic quotients that also pass full verification.
    pub counterexamples: Vec<VerificationReport>,
}

/// Tests every admissible normal pair of `g`.
pub fn search_group(g: &PermGroup) -> Result<GroupSearch> {
    let normals = g.all_normal_subgroups(DEFAULT_ELEMENT_BUDGET)?;
    let (transitive, intransitive): (Vec<_>, Vec<_>) = normals
        .entries
        .iter()
        .filter(|n| n.index > 1)
        .partition(|n| n.group.is_transitive());
    let mut compared = 0;
    let mut found = Vec::new();
    for n1 in &transitive {
        for n2 in intransitive.iter().filter(|n2| n2.order == n1.order) {
            compared += 1;
            let t1 = quotient(g, &n1.group, DEFAULT_QUOTIENT_BUDGET)?;
            let t2 = quotient(g, &n2.group, DEFAULT_QUOTIENT_BUDGET)?;
            if isomorphic(&t1, &t2)?.is_none() {
                continue;
            }
            let report = verify_groups(g, &n1.group, &n2.group, None)?;
            if report.passed() {
                found.push(report);
            }
        }
    }
    Ok(GroupSearch {
        considered: transitive.len() * intransitive.len(),
        compared,
        counterexamples: found,
    })
}

struct Sampler<'a> {
    p: usize,
    q: usize,
    census_p: &'a Census,
    census_q: &'a Census,
}

/// How a sample's generators are drawn.
#[derive(Clone, Copy)]
enum Layout {
    /// `p` blocks of size `q`.
    BlocksOfQ,
    /// `q` blocks of size `p`.
    BlocksOfP,
    /// Block-preserving generators plus one uniform element of `S_pq`.
    Mixed,
}

impl Sampler<'_> {
    fn draw<R: Rng>(&self, rng: &mut R) -> Result<PermGroup> {
        let layout = match rng.gen_range(0..10) {
            0..=5 => Layout::BlocksOfQ,
            6..=8 => Layout::BlocksOfP,
            _ => Layout::Mixed,
        };
        let (blocks, size, tops, bases) = match layout {
            Layout::BlocksOfP => (self.q, self.p, self.census_q, self.census_p),
            _ => (self.p, self.q, self.census_p, self.census_q),
        };
        let top = &tops.entries[rng.gen_range(0..tops.entries.len())].group;
        let base = pick_small(bases, rng);
        let coupling = match rng.gen_range(0..10) {
            0..=3 => Coupling::Product,
            4..=5 => Coupling::Powers,
            6..=7 => Coupling::Shared,
            _ => Coupling::Independent,
        };
        let conj: Vec<Permutation> = match coupling {
            Coupling::Product | Coupling::Powers => {
                vec![Permutation::random(size, rng); blocks]
            }
            _ => (0..blocks).map(|_| Permutation::random(size, rng)).collect(),
        };
        let count = rng.gen_range(2..=4);
        let mut gens = Vec::with_capacity(count);
        for _ in 0..count {
            let shared = base.random_element(rng);
            let order = shared.order() as i64;
            let comps = conj
                .iter()
                .map(|c| {
                    let a = match coupling {
                        Coupling::Product | Coupling::Shared => shared.clone(),
                        Coupling::Powers => shared.pow(rng.gen_range(0..order)),
                        Coupling::Independent => base.random_element(rng),
                    };
                    a.conjugated_by(c)
                })
                .collect();
            let w = WreathElement::new(top.random_element(rng), comps)?;
            gens.push(w.to_permutation());
        }
        if let Layout::Mixed = layout {
            gens[0] = Permutation::random(self.p * self.q, rng);
        }
        PermGroup::new(self.p * self.q, gens)
    }
}

/// How the block components of one generator relate to each other.
#[derive(Clone, Copy)]
enum Coupling {
    /// The same element in every block: subgroups of `T x A`.
    Product,
    /// Powers of one element, one conjugator for all blocks.
    Powers,
    /// The same element under a different conjugator per block.
    Shared,
    /// Independent elements under per-block conjugators.
    Independent,
}

/// A census entry, weighted toward small orders.
fn pick_small<'a, R: Rng>(c: &'a Census, rng: &mut R) -> &'a PermGroup {
    let n = c.entries.len();
    let k = rng.gen_range(0..n).min(rng.gen_range(0..n));
    &c.entries[k].group
}
