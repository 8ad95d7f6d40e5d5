//! Normal-subgroup enumeration for small groups.

use std::collections::HashMap;

use serde::Serialize;

use super::PermGroup;
use crate::error::Result;
use crate::perm::Permutation;

/// Default cap on the number of elements enumerated.
pub const DEFAULT_ELEMENT_BUDGET: u128 = 10_000;

#[derive(Clone, Debug)]
pub struct NormalSubgroup {
    pub group: PermGroup,
    pub order: u128,
    pub index: u128,
}

impl NormalSubgroup {
    pub fn generators(&self) -> &[Permutation] {
        self.group.generators()
    }
}

#[derive(Clone, Debug)]
pub struct NormalSubgroupList {
    pub parent: PermGroup,
    /// Sorted by order, then by discovery; trivial group first, parent last.
    pub entries: Vec<NormalSubgroup>,
}

#[derive(Serialize)]
struct EntryRepr {
    order: u128,
    index: u128,
    generators: Vec<String>,
}

impl Serialize for NormalSubgroupList {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<EntryRepr> = self
            .entries
            .iter()
            .map(|e| EntryRepr {
                order: e.order,
                index: e.index,
                generators: e.generators().iter().map(ToString::to_string).collect(),
            })
            .collect();
        v.serialize(s)
    }
}

impl NormalSubgroupList {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn orders(&self) -> Vec<u128> {
        self.entries.iter().map(|e| e.order).collect()
    }

    /// Simple: exactly two normal subgroups (so the trivial group is not simple).
    pub fn parent_is_simple(&self) -> bool {
        self.entries.len() == 2
    }
}

impl PermGroup {
    /// Every normal subgroup, as the join-closure of the normal closures of
    /// conjugacy-class representatives.
    pub fn all_normal_subgroups(&self, budget: u128) -> Result<NormalSubgroupList> {
        let parent_order = self.order();
        let classes = self.conjugacy_classes(budget)?;

        let mut found: Vec<PermGroup> = Vec::new();
        let mut keys: HashMap<u64, Vec<usize>> = HashMap::new();
        let mut insert = |g: PermGroup, found: &mut Vec<PermGroup>| -> Result<bool> {
            let fp = g.fingerprint(budget)?;
            let bucket = keys.entry(fp).or_default();
            if bucket.iter().any(|&k| found[k].same_elements(&g)) {
                return Ok(false);
            }
            bucket.push(found.len());
            found.push(g);
            Ok(true)
        };

        for (rep, _) in &classes {
            let closure = self.normal_closure(std::slice::from_ref(rep))?;
            insert(closure, &mut found)?;
        }
        let mut frontier_start = 0;
        loop {
            let n = found.len();
            let mut added = false;
            for a in frontier_start..n {
                for b in 0..n {
                    if b >= frontier_start && b <= a {
                        continue;
                    }
                    if found[a].is_subgroup_of(&found[b])? || found[b].is_subgroup_of(&found[a])? {
                        continue;
                    }
                    let j = found[a].join(&found[b])?;
                    added |= insert(j, &mut found)?;
                }
            }
            if !added {
                break;
            }
            frontier_start = n;
        }

        let mut entries: Vec<NormalSubgroup> = found
            .into_iter()
            .map(|group| {
                let order = group.order();
                NormalSubgroup {
                    group,
                    order,
                    index: parent_order / order,
                }
            })
            .collect();
        entries.sort_by_key(|e| e.order);
        Ok(NormalSubgroupList {
            parent: self.clone(),
            entries,
        })
    }
}
