//! Strategies for deduplicating overgroups of the standard q-cycle up to
//! conjugacy in `S_q`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

use super::{affine_group, SymmetricIter};

/// Keeps one representative per conjugacy class of candidate groups.
pub trait DedupeStrategy {
    fn name(&self) -> &'static str;

    /// Records `candidate` unless it is conjugate to a known representative.
    /// Returns whether it was new.
    fn insert(&mut self, candidate: PermGroup) -> Result<bool>;

    fn representatives(&self) -> &[PermGroup];
}

type Constructor = fn(u64) -> Result<Box<dyn DedupeStrategy>>;

/// Registered strategies, in preference order.
pub fn registry() -> &'static [(&'static str, Constructor)] {
    &[
        ("agl", |q| Ok(Box::new(AglConjugacy::new(q)?))),
        ("fingerprint", |q| Ok(Box::new(ElementFingerprint::new(q)?))),
    ]
}

pub fn strategy_names() -> Vec<&'static str> {
    registry().iter().map(|(n, _)| *n).collect()
}

pub fn by_name(name: &str, q: u64) -> Result<Box<dyn DedupeStrategy>> {
    registry()
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, make)| make(q))
        .unwrap_or_else(|| {
            Err(Error::InvalidArgument(format!(
                "unknown dedupe strategy {name:?}; known: {}",
                strategy_names().join(", ")
            )))
        })
}

/// Conjugacy tested only by elements of `AGL(1, q)`, the normalizer of the
/// standard q-cycle. Two overgroups of the cycle conjugate in `S_q` are
/// conjugate by such an element (their cycles are Sylow subgroups).
pub struct AglConjugacy {
    agl: Vec<Permutation>,
    reps: Vec<PermGroup>,
}

impl AglConjugacy {
    pub fn new(q: u64) -> Result<Self> {
        let agl = affine_group(q)?.elements(u128::MAX)?;
        Ok(Self {
            agl,
            reps: Vec::new(),
        })
    }
}

impl DedupeStrategy for AglConjugacy {
    fn name(&self) -> &'static str {
        "agl"
    }

    fn insert(&mut self, candidate: PermGroup) -> Result<bool> {
        let order = candidate.order();
        for rep in self.reps.iter().filter(|r| r.order() == order) {
            let chain = rep.chain();
            let hit = self.agl.iter().any(|a| {
                candidate
                    .generators()
                    .iter()
                    .all(|g| chain.contains(&g.conjugated_by(a)))
            });
            if hit {
                return Ok(false);
            }
        }
        self.reps.push(candidate);
        Ok(true)
    }

    fn representatives(&self) -> &[PermGroup] {
        &self.reps
    }
}

/// Exact subgroups keyed by element-set fingerprint; conjugacy decided by
/// conjugating element sets by every element of `S_q`. Independent of the
/// Sylow argument behind [`AglConjugacy`]; limited to `q <= 7`.
pub struct ElementFingerprint {
    q: usize,
    /// Distinct subgroups seen so far, bucketed by order.
    seen: HashMap<u128, Vec<PermGroup>>,
    /// `(fingerprint, sorted elements)` of each representative.
    rep_sets: Vec<(u64, Vec<Permutation>)>,
    reps: Vec<PermGroup>,
}

const FINGERPRINT_MAX_Q: u64 = 7;

impl ElementFingerprint {
    pub fn new(q: u64) -> Result<Self> {
        if q > FINGERPRINT_MAX_Q {
            return Err(Error::InvalidArgument(format!(
                "fingerprint dedupe enumerates S_q and is limited to q <= {FINGERPRINT_MAX_Q}"
            )));
        }
        Ok(Self {
            q: q as usize,
            seen: HashMap::new(),
            rep_sets: Vec::new(),
            reps: Vec::new(),
        })
    }

    fn sorted_elements(group: &PermGroup) -> Result<Vec<Permutation>> {
        let mut e = group.elements(u128::MAX)?;
        e.sort_unstable();
        Ok(e)
    }

    fn fingerprint(elements: &[Permutation]) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        for g in elements {
            g.images0().hash(&mut h);
        }
        h.finish()
    }
}

impl DedupeStrategy for ElementFingerprint {
    fn name(&self) -> &'static str {
        "fingerprint"
    }

    fn insert(&mut self, candidate: PermGroup) -> Result<bool> {
        let order = candidate.order();
        let bucket = self.seen.entry(order).or_default();
        if bucket.iter().any(|h| h.same_elements(&candidate)) {
            return Ok(false);
        }
        bucket.push(candidate.clone());

        let elements = Self::sorted_elements(&candidate)?;
        let same_order: Vec<usize> = (0..self.reps.len())
            .filter(|&k| self.rep_sets[k].1.len() == elements.len())
            .collect();
        if !same_order.is_empty() {
            for s in SymmetricIter::new(self.q) {
                let mut conj: Vec<Permutation> =
                    elements.iter().map(|g| g.conjugated_by(&s)).collect();
                conj.sort_unstable();
                let fp = Self::fingerprint(&conj);
                if same_order
                    .iter()
                    .any(|&k| self.rep_sets[k].0 == fp && self.rep_sets[k].1 == conj)
                {
                    return Ok(false);
                }
            }
        }
        let fp = Self::fingerprint(&elements);
        self.rep_sets.push((fp, elements));
        self.reps.push(candidate);
        Ok(true)
    }

    fn representatives(&self) -> &[PermGroup] {
        &self.reps
    }
}
