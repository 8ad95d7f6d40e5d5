//! Machine checks of the prime-degree lemmas over a complete census.
//!
//! Each check implements [`LemmaCheck`] and is registered by name, so the
//! CLI and the refutation driver can select them at runtime.

use serde::Serialize;

use super::{affine_group, centralizer_brute_force, normalizer_brute_force, normalizer_via_agl, Census, CensusEntry, MAX_STANDARD_Q};
use crate::error::{Error, Result};
use crate::group::{PermGroup, DEFAULT_ELEMENT_BUDGET};
use crate::numthy::is_prime;
use crate::perm::Permutation;
use crate::quotient::{isomorphic, quotient, CayleyTable, DEFAULT_QUOTIENT_BUDGET};

#[derive(Clone, Copy, Debug, Default)]
pub struct CheckParams {
    /// The smaller prime, for checks that need one.
    pub p: Option<u64>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryVerdict {
    pub order: u128,
    pub verdict: Verdict,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub check: &'static str,
    pub q: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    pub passed: bool,
    pub entries: Vec<EntryVerdict>,
    /// Extra facts the check established, e.g. a centralizer order.
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn violations(&self) -> usize {
        self.entries.iter().filter(|e| e.verdict == Verdict::Fail).count()
    }

    pub fn applicable(&self) -> usize {
        self.entries
            .iter()
            .filter(|e| e.verdict != Verdict::NotApplicable)
            .count()
    }
}

pub trait LemmaCheck: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn run(&self, census: &Census, params: &CheckParams) -> Result<CheckReport>;
}

static REGISTRY: &[&dyn LemmaCheck] = &[&Wielandt, &Burnside, &LemmaPq, &Contain];

pub fn registry() -> &'static [&'static dyn LemmaCheck] {
    REGISTRY
}

pub fn check_names() -> Vec<&'static str> {
    REGISTRY.iter().map(|c| c.name()).collect()
}

pub fn by_name(name: &str) -> Result<&'static dyn LemmaCheck> {
    REGISTRY.iter().copied().find(|c| c.name() == name).ok_or_else(|| {
        Error::InvalidArgument(format!(
            "unknown check {name:?}; known: {}",
            check_names().join(", ")
        ))
    })
}

fn report(check: &'static str, q: u64, entries: Vec<EntryVerdict>, notes: Vec<String>) -> CheckReport {
    let passed = entries.iter().all(|e| e.verdict != Verdict::Fail);
    CheckReport {
        check,
        q,
        p: None,
        passed,
        entries,
        notes,
    }
}

fn is_abelian(g: &PermGroup) -> bool {
    let gens = g.generators();
    gens.iter()
        .all(|a| gens.iter().all(|b| a.mul(b) == b.mul(a)))
}

fn is_simple(g: &PermGroup) -> Result<bool> {
    Ok(g.all_normal_subgroups(DEFAULT_ELEMENT_BUDGET)?.parent_is_simple())
}

fn cyclic_table(m: usize) -> CayleyTable {
    CayleyTable::from_rows((0..m).map(|a| (0..m).map(|b| (a + b) % m).collect()).collect())
        .expect("cyclic table is valid")
}

/// Normalizer of a simple transitive group modulo itself is cyclic of order
/// dividing `q - 1`.
pub struct Wielandt;

/// Verdict for one entry. Simple entries get a brute-force normalizer
/// (over all of `S_q`, `q <= 7`) checked against the AGL-Frattini route.
pub fn verify_wielandt(entry: &CensusEntry) -> Result<EntryVerdict> {
    let q = entry.q;
    if entry.is_simple != Some(true) || !entry.group.is_transitive() {
        return Ok(EntryVerdict {
            order: entry.order,
            verdict: Verdict::NotApplicable,
            detail: "not simple".into(),
        });
    }
    let agl = affine_group(q)?;
    let via_agl = normalizer_via_agl(&entry.group, &agl)?;
    let normalizer = if q <= MAX_STANDARD_Q {
        let brute = normalizer_brute_force(&entry.group)?;
        if !brute.same_elements(&via_agl) {
            return Ok(EntryVerdict {
                order: entry.order,
                verdict: Verdict::Fail,
                detail: format!(
                    "brute-force normalizer (order {}) disagrees with AGL route (order {})",
                    brute.order(),
                    via_agl.order()
                ),
            });
        }
        brute
    } else {
        via_agl
    };
    let index = normalizer.order() / entry.order;
    let divides = (q as u128 - 1) % index == 0;
    let table = quotient(&normalizer, &entry.group, DEFAULT_QUOTIENT_BUDGET)?;
    let cyclic = isomorphic(&table, &cyclic_table(table.order))?.is_some();
    Ok(EntryVerdict {
        order: entry.order,
        verdict: if divides && cyclic { Verdict::Pass } else { Verdict::Fail },
        detail: format!(
            "|N| = {}, [N:A] = {index} divides q - 1 = {}: {divides}; N/A cyclic: {cyclic}",
            normalizer.order(),
            q - 1
        ),
    })
}

impl LemmaCheck for Wielandt {
    fn name(&self) -> &'static str {
        "wielandt"
    }

    fn description(&self) -> &'static str {
        "N(A)/A is cyclic of order dividing q - 1 for simple transitive A"
    }

    fn run(&self, census: &Census, _: &CheckParams) -> Result<CheckReport> {
        let entries = census
            .entries
            .iter()
            .map(verify_wielandt)
            .collect::<Result<Vec<_>>>()?;
        Ok(report(self.name(), census.q, entries, Vec::new()))
    }
}

/// Each transitive group of prime degree is affine, or doubly transitive
/// with a nonabelian simple normal subgroup.
pub struct Burnside;

pub fn verify_burnside(entry: &CensusEntry) -> Result<EntryVerdict> {
    if entry.in_affine {
        return Ok(EntryVerdict {
            order: entry.order,
            verdict: Verdict::Pass,
            detail: format!("affine: contained in AGL(1, {})", entry.q),
        });
    }
    let Some(normals) = &entry.normal_subgroups else {
        return Ok(EntryVerdict {
            order: entry.order,
            verdict: Verdict::NotApplicable,
            detail: "not affine; normal subgroups over the element budget".into(),
        });
    };
    let mut witness = None;
    for n in &normals.entries {
        if n.order > 1 && !is_abelian(&n.group) && n.group.is_transitive() && is_simple(&n.group)? {
            witness = Some(n.order);
            break;
        }
    }
    let ok = entry.is_2transitive && witness.is_some();
    Ok(EntryVerdict {
        order: entry.order,
        verdict: if ok { Verdict::Pass } else { Verdict::Fail },
        detail: match witness {
            Some(o) => format!(
                "doubly transitive: {}; nonabelian simple transitive normal subgroup of order {o}",
                entry.is_2transitive
            ),
            None => format!(
                "not affine, doubly transitive: {}, no nonabelian simple normal subgroup",
                entry.is_2transitive
            ),
        },
    })
}

impl LemmaCheck for Burnside {
    fn name(&self) -> &'static str {
        "burnside"
    }

    fn description(&self) -> &'static str {
        "affine, or doubly transitive with a nonabelian simple normal subgroup"
    }

    fn run(&self, census: &Census, _: &CheckParams) -> Result<CheckReport> {
        let entries = census
            .entries
            .iter()
            .map(verify_burnside)
            .collect::<Result<Vec<_>>>()?;
        Ok(report(self.name(), census.q, entries, Vec::new()))
    }
}

/// For primes `p < q` with `p` not dividing `q - 1`: whenever `p | [A:B]`
/// for `B` normal in a transitive `A <= S_q`, also `q | [A:B]` and `B = 1`.
pub struct LemmaPq;

pub fn verify_lemma_pq(census: &Census, p: u64) -> Result<CheckReport> {
    let q = census.q;
    if !is_prime(p) || p >= q {
        return Err(Error::Hypothesis(format!("need a prime p < q = {q}, got {p}")));
    }
    if (q - 1) % p == 0 {
        return Err(Error::Hypothesis(format!("{p} divides q - 1 = {}", q - 1)));
    }
    let mut entries = Vec::new();
    let mut pairs = 0usize;
    let mut p_pairs = 0usize;
    for e in &census.entries {
        let Some(normals) = &e.normal_subgroups else {
            entries.push(EntryVerdict {
                order: e.order,
                verdict: Verdict::NotApplicable,
                detail: "normal subgroups over the element budget".into(),
            });
            continue;
        };
        let mut bad = Vec::new();
        for b in &normals.entries {
            pairs += 1;
            let idx = b.index;
            if idx % p as u128 == 0 {
                p_pairs += 1;
                if idx % q as u128 != 0 || b.order != 1 {
                    bad.push(format!("|B| = {}, [A:B] = {idx}", b.order));
                }
            }
        }
        entries.push(EntryVerdict {
            order: e.order,
            verdict: if bad.is_empty() { Verdict::Pass } else { Verdict::Fail },
            detail: if bad.is_empty() {
                format!("{} normal subgroups checked", normals.len())
            } else {
                format!("violations: {}", bad.join("; "))
            },
        });
    }
    let mut r = report(
        "lemma-pq",
        q,
        entries,
        vec![format!(
            "{pairs} (A, B) pairs swept, {p_pairs} with p | [A:B], all required to have B trivial"
        )],
    );
    r.p = Some(p);
    Ok(r)
}

impl LemmaCheck for LemmaPq {
    fn name(&self) -> &'static str {
        "lemma-pq"
    }

    fn description(&self) -> &'static str {
        "p | [A:B] implies q | [A:B] and B trivial, when p < q and p does not divide q - 1"
    }

    fn run(&self, census: &Census, params: &CheckParams) -> Result<CheckReport> {
        let p = params
            .p
            .ok_or_else(|| Error::InvalidArgument("lemma-pq needs a prime p".into()))?;
        verify_lemma_pq(census, p)
    }
}

/// A transitive simple normal subgroup lies in every nontrivial normal
/// subgroup; and the q-cycle's centralizer in `S_q` is the cycle's group.
pub struct Contain;

pub fn verify_contain(census: &Census) -> Result<CheckReport> {
    let q = census.q;
    if q > MAX_STANDARD_Q {
        return Err(Error::Budget {
            what: "contain check prime",
            size: q as u128,
            budget: MAX_STANDARD_Q as u128,
        });
    }
    let cycle = Permutation::n_cycle(q as usize);
    let centralizer = centralizer_brute_force(&cycle)?;
    let centralizer_ok =
        centralizer.order() == q as u128 && centralizer.same_elements(&PermGroup::cyclic(q as usize));

    let mut entries = Vec::new();
    for e in &census.entries {
        let normals = e
            .normal_subgroups
            .as_ref()
            .expect("normal subgroups are enumerated for q <= 7");
        let mut h = None;
        for n in &normals.entries {
            if n.order > 1 && n.group.is_transitive() && is_simple(&n.group)? {
                h = Some(&n.group);
                break;
            }
        }
        let Some(h) = h else {
            entries.push(EntryVerdict {
                order: e.order,
                verdict: Verdict::NotApplicable,
                detail: "no transitive simple normal subgroup".into(),
            });
            continue;
        };
        let missing: Vec<u128> = normals
            .entries
            .iter()
            .filter(|n| n.order > 1)
            .filter(|n| !h.is_subgroup_of(&n.group).unwrap_or(false))
            .map(|n| n.order)
            .collect();
        entries.push(EntryVerdict {
            order: e.order,
            verdict: if missing.is_empty() { Verdict::Pass } else { Verdict::Fail },
            detail: if missing.is_empty() {
                format!(
                    "all {} nontrivial normal subgroups contain H of order {}",
                    normals.len() - 1,
                    h.order()
                )
            } else {
                format!("normal subgroups of orders {missing:?} do not contain H")
            },
        });
    }
    let mut r = report(
        "contain",
        q,
        entries,
        vec![format!(
            "centralizer of the standard {q}-cycle in S_{q} has order {}",
            centralizer.order()
        )],
    );
    r.passed &= centralizer_ok;
    Ok(r)
}

impl LemmaCheck for Contain {
    fn name(&self) -> &'static str {
        "contain"
    }

    fn description(&self) -> &'static str {
        "every nontrivial normal subgroup contains a transitive simple normal H"
    }

    fn run(&self, census: &Census, _: &CheckParams) -> Result<CheckReport> {
        verify_contain(census)
    }
}
