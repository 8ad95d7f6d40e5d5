//! Transitive groups of prime degree, enumerated from scratch.
//!
//! A transitive group of prime degree `q` has order divisible by `q`, so it
//! contains a q-cycle and is conjugate to an overgroup of the standard cycle
//! `C = <(1 2 ... q)>`. The census closes `{C}` under `H -> <H, g>` for all
//! `g` in `S_q`, keeping one representative per conjugacy class.

pub mod checks;
pub mod dedupe;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{NormalSubgroupList, PermGroup, DEFAULT_ELEMENT_BUDGET};
use crate::numthy::{is_prime, primitive_root};
use crate::perm::Permutation;
use crate::witness::build_sigma;

pub use checks::{CheckParams, CheckReport, EntryVerdict, LemmaCheck};
pub use dedupe::DedupeStrategy;

/// Largest prime censused without `deep`.
pub const MAX_STANDARD_Q: u64 = 7;
/// Largest prime censused with `deep`.
pub const MAX_DEEP_Q: u64 = 13;
/// Random elements of `S_q` adjoined to each representative above
/// [`MAX_STANDARD_Q`], where sweeping all of `S_q` is out of reach.
pub const DEEP_SAMPLES: usize = 20_000;
const DEEP_SEED: u64 = 0x5eed;

/// `AGL(1, q)` on points `1..=q`, point `k` standing for `k - 1`.
pub fn affine_group(q: u64) -> Result<PermGroup> {
    if !is_prime(q) {
        return Err(Error::InvalidArgument(format!("{q} is not prime")));
    }
    let q_us = q as usize;
    let translation = Permutation::n_cycle(q_us);
    let g = primitive_root(q)?;
    let mut gens = vec![translation];
    if g != 1 {
        gens.push(build_sigma(q_us, g)?);
    }
    PermGroup::new(q_us, gens)
}

/// All permutations of `1..=n` in lexicographic order of image tables.
pub struct SymmetricIter {
    next: Option<Vec<u32>>,
}

impl SymmetricIter {
    pub fn new(n: usize) -> Self {
        Self {
            next: Some((0..n as u32).collect()),
        }
    }
}

impl Iterator for SymmetricIter {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let cur = self.next.take()?;
        let mut nxt = cur.clone();
        if let Some(k) = (0..nxt.len().saturating_sub(1)).rev().find(|&k| nxt[k] < nxt[k + 1]) {
            let l = (k + 1..nxt.len()).rev().find(|&l| nxt[l] > nxt[k]).expect("exists");
            nxt.swap(k, l);
            nxt[k + 1..].reverse();
            self.next = Some(nxt);
        }
        Some(Permutation::from_images0(cur).expect("valid permutation"))
    }
}

#[derive(Clone, Debug)]
pub struct CensusEntry {
    pub q: u64,
    pub group: PermGroup,
    pub order: u128,
    /// `None` only when the order is over the element budget (deep runs).
    pub normal_subgroups: Option<NormalSubgroupList>,
    pub is_simple: Option<bool>,
    pub is_2transitive: bool,
    pub in_affine: bool,
    /// `[N_{S_q}(A) : A]`, for simple entries.
    pub normalizer_index: Option<u128>,
}

#[derive(Clone, Debug)]
pub struct Census {
    pub q: u64,
    pub strategy: &'static str,
    /// False when candidates were sampled rather than swept, so classes may
    /// be missing.
    pub exhaustive: bool,
    pub entries: Vec<CensusEntry>,
}

impl Census {
    pub fn orders(&self) -> Vec<u128> {
        self.entries.iter().map(|e| e.order).collect()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CensusOptions<'a> {
    pub strategy: &'a str,
    /// Permits `q` up to [`MAX_DEEP_Q`].
    pub deep: bool,
    pub element_budget: u128,
}

impl Default for CensusOptions<'_> {
    fn default() -> Self {
        Self {
            strategy: "agl",
            deep: false,
            element_budget: DEFAULT_ELEMENT_BUDGET,
        }
    }
}

pub fn census(q: u64) -> Result<Census> {
    census_with(q, CensusOptions::default())
}

pub fn census_with(q: u64, opts: CensusOptions<'_>) -> Result<Census> {
    if !is_prime(q) {
        return Err(Error::InvalidArgument(format!("{q} is not prime")));
    }
    let limit = if opts.deep { MAX_DEEP_Q } else { MAX_STANDARD_Q };
    if q > limit {
        return Err(Error::Budget {
            what: "census prime",
            size: q as u128,
            budget: limit as u128,
        });
    }
    let mut strategy = dedupe::by_name(opts.strategy, q)?;
    let reps = enumerate_overgroups(q as usize, strategy.as_mut())?;
    let agl = affine_group(q)?;
    let mut entries = reps
        .into_iter()
        .map(|group| build_entry(q, group, &agl, opts.element_budget))
        .collect::<Result<Vec<_>>>()?;
    entries.sort_by_key(|e| e.order);
    Ok(Census {
        q,
        strategy: strategy.name(),
        exhaustive: q <= MAX_STANDARD_Q,
        entries,
    })
}

/// Closes `{C}` under adjoining one element of `S_q` until no new class
/// appears. Returns the class representatives in discovery order.
///
/// Up to [`MAX_STANDARD_Q`] every element of `S_q` is tried. Above it, the
/// candidates are `AGL(1, q)` plus [`DEEP_SAMPLES`] seeded random elements.
pub fn enumerate_overgroups(q: usize, strategy: &mut dyn DedupeStrategy) -> Result<Vec<PermGroup>> {
    let full = factorial(q);
    let sampled = q as u64 > MAX_STANDARD_Q;
    let agl = if sampled {
        affine_group(q as u64)?.elements(u128::MAX)?
    } else {
        Vec::new()
    };
    strategy.insert(PermGroup::cyclic(q))?;
    let mut done = 0;
    while done < strategy.representatives().len() {
        let h = strategy.representatives()[done].clone();
        done += 1;
        if h.order() == full {
            continue;
        }
        let chain = h.chain();
        let candidates: Box<dyn Iterator<Item = Permutation>> = if sampled {
            let mut rng = ChaCha8Rng::seed_from_u64(DEEP_SEED ^ done as u64);
            let random: Vec<Permutation> = (0..DEEP_SAMPLES).map(|_| Permutation::random(q, &mut rng)).collect();
            Box::new(agl.clone().into_iter().chain(random))
        } else {
            Box::new(SymmetricIter::new(q))
        };
        let mut tried = std::collections::HashSet::new();
        for g in candidates {
            // <H, g> depends only on the coset gH.
            if chain.contains(&g) {
                continue;
            }
            let rep = chain.canonical_coset_rep(&g);
            if sampled {
                if !tried.insert(rep.clone()) {
                    continue;
                }
            } else if rep != g {
                continue;
            }
            let mut gens = h.generators().to_vec();
            gens.push(rep);
            strategy.insert(PermGroup::new(q, gens)?)?;
        }
    }
    Ok(strategy.representatives().to_vec())
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

fn build_entry(q: u64, group: PermGroup, agl: &PermGroup, budget: u128) -> Result<CensusEntry> {
    let order = group.order();
    let normal_subgroups = if order <= budget {
        Some(group.all_normal_subgroups(budget)?)
    } else {
        None
    };
    let is_simple = normal_subgroups.as_ref().map(NormalSubgroupList::parent_is_simple);
    // The q-cycle subgroup is normal in any subgroup of AGL(1, q) containing
    // it, so a conjugate of `group` lies in AGL(1, q) only if the conjugator
    // normalizes C; containment is therefore the whole test.
    let in_affine = group.is_subgroup_of(agl)?;
    let normalizer_index = if is_simple == Some(true) {
        Some(normalizer_via_agl(&group, agl)?.order() / order)
    } else {
        None
    };
    Ok(CensusEntry {
        q,
        is_2transitive: group.is_2_transitive(),
        group,
        order,
        normal_subgroups,
        is_simple,
        in_affine,
        normalizer_index,
    })
}

/// `N_{S_q}(A) = A * (N(A) ∩ AGL(1, q))` by the Frattini argument, since
/// `AGL(1, q)` normalizes the Sylow q-subgroup `C` of `A`.
pub fn normalizer_via_agl(a: &PermGroup, agl: &PermGroup) -> Result<PermGroup> {
    let chain = a.chain();
    let mut gens = a.generators().to_vec();
    for x in agl.elements(u128::MAX)? {
        if a.generators().iter().all(|g| chain.contains(&g.conjugated_by(&x))) && !chain.contains(&x) {
            gens.push(x);
        }
    }
    PermGroup::new(a.degree(), gens)
}

/// Brute-force normalizer: filters all of `S_q`.
pub fn normalizer_brute_force(a: &PermGroup) -> Result<PermGroup> {
    let q = a.degree();
    if q as u64 > MAX_STANDARD_Q {
        return Err(Error::Budget {
            what: "brute-force normalizer degree",
            size: q as u128,
            budget: MAX_STANDARD_Q as u128,
        });
    }
    let chain = a.chain();
    let gens: Vec<Permutation> = SymmetricIter::new(q)
        .filter(|x| a.generators().iter().all(|g| chain.contains(&g.conjugated_by(x))))
        .collect();
    PermGroup::new(q, gens)
}

/// Brute-force centralizer of an element in `S_n`.
pub fn centralizer_brute_force(x: &Permutation) -> Result<PermGroup> {
    let n = x.degree();
    if n as u64 > MAX_STANDARD_Q {
        return Err(Error::Budget {
            what: "brute-force centralizer degree",
            size: n as u128,
            budget: MAX_STANDARD_Q as u128,
        });
    }
    let gens = SymmetricIter::new(n).filter(|s| s.mul(x) == x.mul(s)).collect();
    PermGroup::new(n, gens)
}

#[derive(Serialize)]
pub struct EntryJson {
    pub order: u128,
    pub generators: Vec<String>,
    pub normal_subgroup_orders: Option<Vec<u128>>,
    pub is_simple: Option<bool>,
    pub is_2transitive: bool,
    pub in_affine: bool,
    pub normalizer_index: Option<u128>,
}

impl CensusEntry {
    pub fn to_json(&self) -> EntryJson {
        EntryJson {
            order: self.order,
            generators: self.group.generators().iter().map(ToString::to_string).collect(),
            normal_subgroup_orders: self.normal_subgroups.as_ref().map(NormalSubgroupList::orders),
            is_simple: self.is_simple,
            is_2transitive: self.is_2transitive,
            in_affine: self.in_affine,
            normalizer_index: self.normalizer_index,
        }
    }
}
