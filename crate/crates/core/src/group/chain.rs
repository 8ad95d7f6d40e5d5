//! Deterministic Schreier–Sims stabilizer chains.

use rand::Rng;

use crate::perm::Permutation;

#[derive(Clone, Debug)]
pub(crate) struct Level {
    /// 0-based base point.
    pub base: usize,
    /// Generators of the stabilizer of all earlier base points.
    pub gens: Vec<Permutation>,
    /// `transversal[x]` maps `base` to `x`, for `x` in the basic orbit.
    pub transversal: Vec<Option<Permutation>>,
    /// Basic orbit in discovery order.
    pub orbit: Vec<usize>,
}

impl Level {
    fn new(degree: usize, base: usize) -> Self {
        let mut transversal = vec![None; degree];
        transversal[base] = Some(Permutation::identity(degree));
        Self {
            base,
            gens: Vec::new(),
            transversal,
            orbit: vec![base],
        }
    }

    /// Extends the basic orbit under the current generators. Existing
    /// transversal entries are kept.
    fn extend_orbit(&mut self) {
        let mut k = 0;
        while k < self.orbit.len() {
            let x = self.orbit[k];
            for s in &self.gens {
                let y = s.apply0(x);
                if self.transversal[y].is_none() {
                    let u = s.mul(self.transversal[x].as_ref().expect("orbit point"));
                    self.transversal[y] = Some(u);
                    self.orbit.push(y);
                }
            }
            k += 1;
        }
    }
}

/// A base and strong generating set with explicit transversals.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    pub(crate) levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize) -> Self {
        Self {
            degree,
            levels: Vec::new(),
        }
    }

    /// An empty chain whose first base points are fixed in advance. Levels
    /// left trivial by the generators stay in the chain with orbit size 1.
    pub fn with_base_prefix(degree: usize, prefix: &[usize]) -> Self {
        let levels = prefix.iter().map(|&b| Level::new(degree, b)).collect();
        Self { degree, levels }
    }

    pub fn from_generators(degree: usize, gens: &[Permutation]) -> Self {
        let mut chain = Self::new(degree);
        for g in gens {
            chain.add_generator(g);
        }
        chain
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Adds a generator to the group; the chain stays a valid BSGS.
    pub fn add_generator(&mut self, g: &Permutation) {
        assert_eq!(g.degree(), self.degree, "degree mismatch");
        self.insert(0, g.clone());
    }

    fn insert(&mut self, k: usize, g: Permutation) {
        let (residue, _) = self.sift_from(k, &g);
        if residue.is_identity() {
            return;
        }
        if k == self.levels.len() {
            let base = (0..self.degree)
                .find(|&x| g.apply0(x) != x)
                .expect("non-identity element moves a point");
            self.levels.push(Level::new(self.degree, base));
        }
        self.levels[k].gens.push(g);
        self.levels[k].extend_orbit();

        // Every Schreier generator of level k must lie in the next stabilizer.
        let mut idx = 0;
        while idx < self.levels[k].orbit.len() {
            let x = self.levels[k].orbit[idx];
            let mut s_idx = 0;
            while s_idx < self.levels[k].gens.len() {
                let level = &self.levels[k];
                let s = &level.gens[s_idx];
                let ux = level.transversal[x].as_ref().expect("orbit point");
                let y = s.apply0(x);
                let uy = level.transversal[y].as_ref().expect("orbit closed");
                let schreier = uy.inverse().mul(&s.mul(ux));
                if !schreier.is_identity() {
                    self.insert(k + 1, schreier);
                }
                s_idx += 1;
            }
            idx += 1;
        }
    }

    /// Sifts `g` starting at level `k`. Returns the residue and the level at
    /// which sifting stopped (`levels.len()` if it ran through).
    fn sift_from(&self, k: usize, g: &Permutation) -> (Permutation, usize) {
        let mut h = g.clone();
        for (j, level) in self.levels.iter().enumerate().skip(k) {
            let x = h.apply0(level.base);
            match &level.transversal[x] {
                Some(u) => h = u.inverse().mul(&h),
                None => return (h, j),
            }
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift_from(0, g).0.is_identity()
    }

    /// Group order, saturating at `u128::MAX`.
    pub fn order(&self) -> u128 {
        self.levels
            .iter()
            .fold(1u128, |acc, l| acc.saturating_mul(l.orbit.len() as u128))
    }

    /// 1-based base points.
    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base + 1).collect()
    }

    pub fn transversal_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for l in &self.levels {
            for g in &l.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    /// Generators of the stabilizer of the first `k` base points.
    pub fn stabilizer_generators(&self, k: usize) -> Vec<Permutation> {
        self.levels
            .get(k)
            .map(|l| l.gens.clone())
            .unwrap_or_default()
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for l in &self.levels {
            let x = l.orbit[rng.gen_range(0..l.orbit.len())];
            g = g.mul(l.transversal[x].as_ref().expect("orbit point"));
        }
        g
    }

    /// Every element, each exactly once, in a deterministic order.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut out = vec![Permutation::identity(self.degree)];
        for l in &self.levels {
            let mut next = Vec::with_capacity(out.len() * l.orbit.len());
            for g in &out {
                for &x in &l.orbit {
                    next.push(g.mul(l.transversal[x].as_ref().expect("orbit point")));
                }
            }
            out = next;
        }
        out
    }

    /// Canonical representative of the left coset `x * H`, where `H` is the
    /// group of this chain: the coset element whose images of the base
    /// points are lexicographically least.
    pub fn canonical_coset_rep(&self, x: &Permutation) -> Permutation {
        let mut h = x.clone();
        for l in &self.levels {
            // h * u ranges over the coset; minimise the image of this base point.
            let best = l
                .orbit
                .iter()
                .copied()
                .min_by_key(|&y| h.apply0(y))
                .expect("orbit is nonempty");
            h = h.mul(l.transversal[best].as_ref().expect("orbit point"));
        }
        h
    }
}
