//! Finite permutation groups given by generators.

mod chain;
mod normal;

use std::collections::VecDeque;
use std::sync::OnceLock;

use rand::Rng;

pub use chain::StabChain;
pub use normal::{NormalSubgroup, NormalSubgroupList, DEFAULT_ELEMENT_BUDGET};

use crate::error::{Error, Result};
use crate::perm::{self, Permutation};

/// A permutation group with a lazily built stabilizer chain.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<StabChain>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidArgument("degree must be at least 1".into()));
        }
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch(degree, g.degree()));
        }
        Ok(Self {
            degree,
            generators,
            chain: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        Self::new(degree, Vec::new()).expect("valid degree")
    }

    pub fn symmetric(degree: usize) -> Self {
        let mut gens = vec![Permutation::n_cycle(degree)];
        if degree > 2 {
            gens.push(Permutation::cycle(degree, &[1, 2]).expect("transposition"));
        }
        Self::new(degree, gens).expect("valid generators")
    }

    pub fn alternating(degree: usize) -> Self {
        let gens = (3..=degree)
            .map(|k| Permutation::cycle(degree, &[1, 2, k]).expect("3-cycle"))
            .collect();
        Self::new(degree, gens).expect("valid generators")
    }

    pub fn cyclic(degree: usize) -> Self {
        Self::new(degree, vec![Permutation::n_cycle(degree)]).expect("valid generator")
    }

    /// Builds a group from cycle-notation generators.
    pub fn from_cycles(degree: usize, gens: &[&str]) -> Result<Self> {
        let gens = gens
            .iter()
            .map(|s| Permutation::parse_cycles(s, degree))
            .collect::<Result<Vec<_>>>()?;
        Self::new(degree, gens)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| StabChain::from_generators(self.degree, &self.generators))
    }

    /// Exact order, saturating at `u128::MAX` (only reachable for degrees
    /// of 35 and above).
    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.iter().all(Permutation::is_identity)
    }

    pub fn contains(&self, g: &Permutation) -> Result<bool> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch(self.degree, g.degree()));
        }
        Ok(self.chain().contains(g))
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        perm::orbits(self.degree, &self.generators)
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        if self.generators.is_empty() {
            return vec![point];
        }
        perm::orbit(point, &self.generators)
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(1).len() == self.degree
    }

    /// Whether every generator of `self` lies in `other`.
    pub fn is_subgroup_of(&self, other: &PermGroup) -> Result<bool> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        Ok(self.generators.iter().all(|g| other.chain().contains(g)))
    }

    /// Same set of elements.
    pub fn same_elements(&self, other: &PermGroup) -> bool {
        self.degree == other.degree
            && self.order() == other.order()
            && self.generators.iter().all(|g| other.chain().contains(g))
    }

    /// Whether `self` is normal in `g`. Errors if `self` is not a subgroup.
    pub fn is_normal_in(&self, g: &PermGroup) -> Result<bool> {
        if !self.is_subgroup_of(g)? {
            return Err(Error::NotSubgroup(
                "a generator of N does not lie in G".into(),
            ));
        }
        let chain = self.chain();
        Ok(g.generators.iter().all(|x| {
            self.generators
                .iter()
                .all(|n| chain.contains(&n.conjugated_by(x)))
        }))
    }

    /// Smallest normal subgroup of `self` containing `seeds`.
    pub fn normal_closure(&self, seeds: &[Permutation]) -> Result<PermGroup> {
        for s in seeds {
            if !self.contains(s)? {
                return Err(Error::NotSubgroup(format!("seed {s} is not in G")));
            }
        }
        let mut chain = StabChain::new(self.degree);
        let mut gens: Vec<Permutation> = Vec::new();
        let mut queue: VecDeque<Permutation> = seeds.iter().cloned().collect();
        while let Some(x) = queue.pop_front() {
            if chain.contains(&x) {
                continue;
            }
            chain.add_generator(&x);
            for g in &self.generators {
                queue.push_back(x.conjugated_by(g));
            }
            gens.push(x);
        }
        let group = PermGroup::new(self.degree, gens)?;
        let _ = group.chain.set(chain);
        Ok(group)
    }

    /// Subgroup generated by the generators of both groups.
    pub fn join(&self, other: &PermGroup) -> Result<PermGroup> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        let mut chain = self.chain().clone();
        let mut gens = self.generators.clone();
        for g in &other.generators {
            if !chain.contains(g) {
                chain.add_generator(g);
                gens.push(g.clone());
            }
        }
        let group = PermGroup::new(self.degree, gens)?;
        let _ = group.chain.set(chain);
        Ok(group)
    }

    /// Generators of the pointwise stabilizer of the given 1-based points.
    pub fn pointwise_stabilizer(&self, points: &[usize]) -> PermGroup {
        let prefix: Vec<usize> = points.iter().map(|p| p - 1).collect();
        let mut chain = StabChain::with_base_prefix(self.degree, &prefix);
        for g in &self.generators {
            chain.add_generator(g);
        }
        let gens = chain.stabilizer_generators(prefix.len());
        PermGroup::new(self.degree, gens).expect("same degree")
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        self.chain().random_element(rng)
    }

    /// All elements; errors when the order exceeds `budget`.
    pub fn elements(&self, budget: u128) -> Result<Vec<Permutation>> {
        let order = self.order();
        if order > budget {
            return Err(Error::Budget {
                what: "group order",
                size: order,
                budget,
            });
        }
        Ok(self.chain().elements())
    }

    /// Conjugate of the whole group by `h`.
    pub fn conjugated_by(&self, h: &Permutation) -> PermGroup {
        let gens = self.generators.iter().map(|g| g.conjugated_by(h)).collect();
        PermGroup::new(self.degree, gens).expect("same degree")
    }

    /// Whether the action on ordered pairs of distinct points is transitive.
    pub fn is_2_transitive(&self) -> bool {
        let n = self.degree;
        if n < 2 {
            return false;
        }
        let mut seen = vec![false; n * n];
        seen[1] = true;
        let mut queue = VecDeque::from([(0usize, 1usize)]);
        let mut count = 1;
        while let Some((a, b)) = queue.pop_front() {
            for g in &self.generators {
                let (x, y) = (g.apply0(a), g.apply0(b));
                if !seen[x * n + y] {
                    seen[x * n + y] = true;
                    count += 1;
                    queue.push_back((x, y));
                }
            }
        }
        count == n * (n - 1)
    }

    /// Conjugacy classes as `(representative, size)`, ordered by first
    /// appearance in the element enumeration.
    pub fn conjugacy_classes(&self, budget: u128) -> Result<Vec<(Permutation, usize)>> {
        Ok(self
            .conjugacy_class_members(budget)?
            .into_iter()
            .map(|c| (c[0].clone(), c.len()))
            .collect())
    }

    pub(crate) fn conjugacy_class_members(&self, budget: u128) -> Result<Vec<Vec<Permutation>>> {
        let elements = self.elements(budget)?;
        let index: std::collections::HashMap<&Permutation, usize> =
            elements.iter().enumerate().map(|(k, g)| (g, k)).collect();
        let mut assigned = vec![false; elements.len()];
        let mut classes = Vec::new();
        for start in 0..elements.len() {
            if assigned[start] {
                continue;
            }
            assigned[start] = true;
            let mut class = vec![elements[start].clone()];
            let mut k = 0;
            while k < class.len() {
                for g in &self.generators {
                    let y = class[k].conjugated_by(g);
                    let j = index[&y];
                    if !assigned[j] {
                        assigned[j] = true;
                        class.push(y);
                    }
                }
                k += 1;
            }
            classes.push(class);
        }
        Ok(classes)
    }

    /// Hash of the sorted element image tables; equal groups hash equal.
    pub fn fingerprint(&self, budget: u128) -> Result<u64> {
        use std::hash::{Hash, Hasher};
        let mut elements = self.elements(budget)?;
        elements.sort_unstable();
        let mut hasher = std::collections::hash_map::DefaultHasher::new();
        self.degree.hash(&mut hasher);
        for g in &elements {
            g.images0().hash(&mut hasher);
        }
        Ok(hasher.finish())
    }
}

#[cfg(test)]
mod tests;
