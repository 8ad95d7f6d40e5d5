//! Wreath products `S_p wr S_q`, block systems and the block embedding.
//!
//! A [`WreathElement`] `(top; base_1..base_p)` acts on pairs by
//! `(i, j) -> (top(i), base_i(j))`. Pairs are identified with points by
//! `(i, j) <-> (i - 1) q + j`, so the `i`-th block is `{(i-1)q + 1 ..= iq}`.
//! Under the left-action convention
//! `(a b)` has `top = top_a top_b` and `base_i = base_a[top_b(i)] base_b[i]`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::numthy::{is_prime, Factorization};
use crate::perm::Permutation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WreathElement {
    pub p: usize,
    pub q: usize,
    pub top: Permutation,
    pub base: Vec<Permutation>,
}

impl WreathElement {
    pub fn new(top: Permutation, base: Vec<Permutation>) -> Result<Self> {
        let p = top.degree();
        if base.len() != p {
            return Err(Error::InvalidArgument(format!(
                "expected {p} base components, got {}",
                base.len()
            )));
        }
        let q = base[0].degree();
        if let Some(b) = base.iter().find(|b| b.degree() != q) {
            return Err(Error::DegreeMismatch(q, b.degree()));
        }
        Ok(Self { p, q, top, base })
    }

    pub fn identity(p: usize, q: usize) -> Self {
        Self {
            p,
            q,
            top: Permutation::identity(p),
            base: vec![Permutation::identity(q); p],
        }
    }

    pub fn random<R: Rng + ?Sized>(p: usize, q: usize, rng: &mut R) -> Self {
        Self {
            p,
            q,
            top: Permutation::random(p, rng),
            base: (0..p).map(|_| Permutation::random(q, rng)).collect(),
        }
    }

    /// Image of the 1-based pair `(i, j)`.
    pub fn act(&self, i: usize, j: usize) -> (usize, usize) {
        (self.top.image(i), self.base[i - 1].image(j))
    }

    /// `x -> self(other(x))` on pairs.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if (self.p, self.q) != (other.p, other.q) {
            return Err(Error::InvalidArgument(format!(
                "wreath shape mismatch: ({}, {}) vs ({}, {})",
                self.p, self.q, other.p, other.q
            )));
        }
        let base = (0..self.p)
            .map(|i| self.base[other.top.apply0(i)].mul(&other.base[i]))
            .collect();
        Ok(Self {
            p: self.p,
            q: self.q,
            top: self.top.mul(&other.top),
            base,
        })
    }

    /// The action on `{1..pq}` through `(i, j) <-> (i-1)q + j`.
    pub fn to_permutation(&self) -> Permutation {
        let q = self.q;
        let mut images = vec![0u32; self.p * q];
        for i in 0..self.p {
            for j in 0..q {
                let ti = self.top.apply0(i);
                let bj = self.base[i].apply0(j);
                images[i * q + j] = (ti * q + bj) as u32;
            }
        }
        Permutation::from_images0(images).expect("wreath action is a bijection")
    }

    /// Reads a degree-`pq` permutation that permutes the consecutive blocks
    /// of size `q`.
    pub fn from_permutation(g: &Permutation, q: usize) -> Result<Self> {
        let n = g.degree();
        if q == 0 || n % q != 0 {
            return Err(Error::InvalidArgument(format!(
                "degree {n} is not a multiple of block size {q}"
            )));
        }
        let p = n / q;
        let mut top = vec![0u32; p];
        let mut base = Vec::with_capacity(p);
        for (i, top_i) in top.iter_mut().enumerate() {
            let target = g.apply0(i * q) / q;
            let mut b = vec![0u32; q];
            for (j, slot) in b.iter_mut().enumerate() {
                let y = g.apply0(i * q + j);
                if y / q != target {
                    return Err(Error::Hypothesis(format!(
                        "{g} does not permute the blocks of size {q}"
                    )));
                }
                *slot = (y % q) as u32;
            }
            *top_i = target as u32;
            base.push(Permutation::from_images0(b)?);
        }
        Ok(Self {
            p,
            q,
            top: Permutation::from_images0(top)?,
            base,
        })
    }
}

impl fmt::Display for WreathElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "top={}; base=[", self.top)?;
        for (k, b) in self.base.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{b}")?;
        }
        f.write_str("]")
    }
}

/// The top projection.
pub fn project_top(w: &WreathElement) -> Permutation {
    w.top.clone()
}

/// The `i`-th base projection (1-based). Multiplicative only on elements
/// with trivial top.
pub fn project_base(w: &WreathElement, i: usize) -> Result<Permutation> {
    if i == 0 || i > w.p {
        return Err(Error::InvalidArgument(format!(
            "block index {i} out of range 1..={}",
            w.p
        )));
    }
    Ok(w.base[i - 1].clone())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockSystem {
    pub degree: usize,
    /// Sorted blocks, sorted by least point; 1-based points.
    pub blocks: Vec<Vec<usize>>,
}

impl BlockSystem {
    pub fn new(degree: usize, mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; degree];
        let size = blocks.first().map_or(0, Vec::len);
        for b in &mut blocks {
            b.sort_unstable();
            if b.len() != size {
                return Err(Error::InvalidArgument("blocks differ in size".into()));
            }
            for &x in b.iter() {
                if x == 0 || x > degree || seen[x - 1] {
                    return Err(Error::InvalidArgument(format!(
                        "blocks do not partition 1..={degree}"
                    )));
                }
                seen[x - 1] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidArgument(format!(
                "blocks do not cover 1..={degree}"
            )));
        }
        blocks.sort();
        Ok(Self { degree, blocks })
    }

    /// Consecutive blocks `{(i-1)q + 1 ..= iq}`.
    pub fn consecutive(p: usize, q: usize) -> Self {
        let blocks = (0..p).map(|i| (i * q + 1..=(i + 1) * q).collect()).collect();
        Self { degree: p * q, blocks }
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_size(&self) -> usize {
        self.blocks[0].len()
    }

    /// Sends the `j`-th least point of block `i` to `(i-1)q + j`.
    pub fn relabeling(&self) -> Permutation {
        let q = self.block_size();
        let mut images = vec![0u32; self.degree];
        for (i, b) in self.blocks.iter().enumerate() {
            for (j, &x) in b.iter().enumerate() {
                images[x - 1] = (i * q + j) as u32;
            }
        }
        Permutation::from_images0(images).expect("blocks partition the points")
    }

    pub fn is_preserved_by(&self, g: &Permutation) -> bool {
        let mut block_of = vec![0usize; self.degree];
        for (i, b) in self.blocks.iter().enumerate() {
            for &x in b {
                block_of[x - 1] = i;
            }
        }
        self.blocks.iter().all(|b| {
            let target = block_of[g.image(b[0]) - 1];
            b.iter().all(|&x| block_of[g.image(x) - 1] == target)
        })
    }

    pub fn fixes_each_block(&self, g: &Permutation) -> bool {
        self.blocks
            .iter()
            .all(|b| b.iter().all(|&x| b.binary_search(&g.image(x)).is_ok()))
    }

    /// Restriction of `g` to block `i` (0-based), as a permutation of
    /// `1..=q` by rank within the block. `g` must fix the block setwise.
    pub fn restrict(&self, g: &Permutation, i: usize) -> Result<Permutation> {
        let b = &self.blocks[i];
        let images: Option<Vec<u32>> = b
            .iter()
            .map(|&x| b.binary_search(&g.image(x)).ok().map(|k| k as u32))
            .collect();
        match images {
            Some(v) => Permutation::from_images0(v),
            None => Err(Error::Hypothesis(format!(
                "{g} moves points out of block {}",
                i + 1
            ))),
        }
    }
}

/// The orbit partition of `N2`, which must consist of orbits of size `q`.
pub fn blocks_from_orbits(n2: &PermGroup, q: usize) -> Result<BlockSystem> {
    let orbits = n2.orbits();
    if let Some(o) = orbits.iter().find(|o| o.len() != q) {
        return Err(Error::Hypothesis(format!(
            "block embedding hypothesis fails: N2 has an orbit of size {} (expected {q})",
            o.len()
        )));
    }
    BlockSystem::new(n2.degree(), orbits)
}

#[derive(Clone, Debug, Serialize)]
pub struct EmbeddingConditions {
    /// `theta(N1)` is transitive on the pairs.
    pub n1_transitive_on_pairs: bool,
    /// `theta(N2)` lies in the kernel of the top projection.
    pub n2_in_top_kernel: bool,
    /// Every base projection of `theta(N2)` is transitive on `1..=q`.
    pub n2_projections_transitive: Vec<bool>,
}

impl EmbeddingConditions {
    pub fn all_hold(&self) -> bool {
        self.n1_transitive_on_pairs
            && self.n2_in_top_kernel
            && self.n2_projections_transitive.iter().all(|&b| b)
    }
}

#[derive(Clone, Debug)]
pub struct Embedding {
    pub p: usize,
    pub q: usize,
    pub source: PermGroup,
    pub block_system: BlockSystem,
    /// Point relabeling realizing the pair identification.
    pub relabel: Permutation,
    /// Image of each generator of the source.
    pub image_map: Vec<(Permutation, WreathElement)>,
    pub n1_images: Vec<WreathElement>,
    pub n2_images: Vec<WreathElement>,
    pub conditions: EmbeddingConditions,
}

impl Embedding {
    /// `theta(g)` for any `g` preserving the block system.
    pub fn theta(&self, g: &Permutation) -> Result<WreathElement> {
        WreathElement::from_permutation(&g.conjugated_by(&self.relabel), self.q)
    }

    /// `theta(G)` as a group of degree `pq`.
    pub fn image_group(&self) -> PermGroup {
        let gens = self.image_map.iter().map(|(_, w)| w.to_permutation()).collect();
        PermGroup::new(self.p * self.q, gens).expect("same degree")
    }

    /// Checks `theta(gh) = theta(g) theta(h)` on random word pairs.
    pub fn check_homomorphism<R: Rng + ?Sized>(&self, samples: usize, rng: &mut R) -> Result<bool> {
        for _ in 0..samples {
            let g = self.source.random_element(rng);
            let h = self.source.random_element(rng);
            let lhs = self.theta(&g.mul(&h))?;
            let rhs = self.theta(&g)?.multiply(&self.theta(&h)?)?;
            if lhs.to_permutation() != rhs.to_permutation() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Injective iff the image has the order of the source.
    pub fn is_injective(&self) -> bool {
        self.image_group().order() == self.source.order()
    }
}

#[derive(Serialize)]
pub struct EmbeddingJson {
    pub p: usize,
    pub q: usize,
    pub blocks: Vec<Vec<usize>>,
    pub images: Vec<GeneratorImage>,
    pub n1_images: Vec<String>,
    pub n2_images: Vec<String>,
    pub conditions: EmbeddingConditions,
    pub injective: bool,
}

#[derive(Serialize)]
pub struct GeneratorImage {
    pub generator: String,
    pub image: String,
}

impl Embedding {
    pub fn to_json(&self) -> EmbeddingJson {
        EmbeddingJson {
            p: self.p,
            q: self.q,
            blocks: self.block_system.blocks.clone(),
            images: self
                .image_map
                .iter()
                .map(|(g, w)| GeneratorImage {
                    generator: g.to_string(),
                    image: w.to_string(),
                })
                .collect(),
            n1_images: self.n1_images.iter().map(ToString::to_string).collect(),
            n2_images: self.n2_images.iter().map(ToString::to_string).collect(),
            conditions: self.conditions.clone(),
            injective: self.is_injective(),
        }
    }
}

#[derive(Serialize)]
pub struct EmbeddingReport {
    pub embedding: EmbeddingJson,
    pub homomorphism_samples: usize,
    pub homomorphism_ok: bool,
    pub passed: bool,
}

/// Checks an embedding: conditions, homomorphism on `samples` seeded random
/// pairs, and injectivity.
pub fn embedding_report(e: &Embedding, samples: usize, seed: u64) -> Result<EmbeddingReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let homomorphism_ok = e.check_homomorphism(samples, &mut rng)?;
    let embedding = e.to_json();
    let passed = homomorphism_ok && embedding.injective && embedding.conditions.all_hold();
    Ok(EmbeddingReport {
        embedding,
        homomorphism_samples: samples,
        homomorphism_ok,
        passed,
    })
}

/// Splits a degree into primes `p < q` with `pq = degree`.
pub fn split_pq(degree: usize) -> Result<(usize, usize)> {
    let f = Factorization::of(degree as u64)?;
    match f.factors[..] {
        [(p, 1), (q, 1)] => Ok((p as usize, q as usize)),
        _ => Err(Error::Hypothesis(format!(
            "degree {degree} is not a product of two distinct primes"
        ))),
    }
}

/// Embeds `G` into `S_p wr S_q` through the orbit blocks of `N2`.
pub fn embed(g: &PermGroup, n1: &PermGroup, n2: &PermGroup) -> Result<Embedding> {
    let degree = g.degree();
    for h in [n1, n2] {
        if h.degree() != degree {
            return Err(Error::DegreeMismatch(degree, h.degree()));
        }
    }
    let (p, q) = split_pq(degree)?;
    debug_assert!(is_prime(p as u64) && is_prime(q as u64));
    if !g.is_transitive() {
        return Err(Error::Hypothesis("G is not transitive".into()));
    }
    if !n1.is_transitive() || !n1.is_normal_in(g)? {
        return Err(Error::Hypothesis("N1 must be a transitive normal subgroup of G".into()));
    }
    if n2.is_transitive() || !n2.is_normal_in(g)? {
        return Err(Error::Hypothesis("N2 must be a non-transitive normal subgroup of G".into()));
    }
    if n1.order() != n2.order() {
        return Err(Error::Hypothesis(format!(
            "|N1| = {} differs from |N2| = {}",
            n1.order(),
            n2.order()
        )));
    }
    let block_system = blocks_from_orbits(n2, q)?;
    let relabel = block_system.relabeling();
    let to_wreath = |x: &Permutation| -> Result<WreathElement> {
        if !block_system.is_preserved_by(x) {
            return Err(Error::Hypothesis(format!(
                "{x} does not preserve the block system"
            )));
        }
        WreathElement::from_permutation(&x.conjugated_by(&relabel), q)
    };
    let image_map = g
        .generators()
        .iter()
        .map(|x| Ok((x.clone(), to_wreath(x)?)))
        .collect::<Result<Vec<_>>>()?;
    let n1_images = n1.generators().iter().map(&to_wreath).collect::<Result<Vec<_>>>()?;
    let n2_images = n2.generators().iter().map(&to_wreath).collect::<Result<Vec<_>>>()?;

    let n1_pairs = PermGroup::new(degree, n1_images.iter().map(WreathElement::to_permutation).collect())?;
    let n2_in_top_kernel = n2_images.iter().all(|w| w.top.is_identity());
    let n2_projections_transitive = (1..=p)
        .map(|i| {
            let gens = n2_images
                .iter()
                .map(|w| project_base(w, i))
                .collect::<Result<Vec<_>>>()?;
            Ok(PermGroup::new(q, gens)?.is_transitive())
        })
        .collect::<Result<Vec<_>>>()?;
    let conditions = EmbeddingConditions {
        n1_transitive_on_pairs: n1_pairs.is_transitive(),
        n2_in_top_kernel,
        n2_projections_transitive,
    };
    if !conditions.all_hold() {
        return Err(Error::Hypothesis(format!(
            "embedding conditions fail: {conditions:?}"
        )));
    }
    Ok(Embedding {
        p,
        q,
        source: g.clone(),
        block_system,
        relabel,
        image_map,
        n1_images,
        n2_images,
        conditions,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct IndexFactor {
    /// 1-based block number.
    pub block: usize,
    /// Order of the projection of `A`'s kernel subgroup onto this block.
    pub projection_order: u128,
    /// Generators of `M_i`, the projection of `B`'s kernel subgroup.
    pub m_generators: Vec<String>,
    pub m_order: u128,
    pub index: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct IndexDecomposition {
    pub index: u128,
    /// In block order; computed by peeling the last block first.
    pub factors: Vec<IndexFactor>,
}

impl IndexDecomposition {
    pub fn product(&self) -> u128 {
        self.factors.iter().map(|f| f.index).product()
    }
}

/// Writes `[A:B]` as a product of per-block indices: peel the last block
/// (`[pi(A) : pi(B)]`), then recurse on the pointwise stabilizers of that
/// block in `A` and `B`.
pub fn decompose_index(a: &PermGroup, b: &PermGroup, blocks: &BlockSystem) -> Result<IndexDecomposition> {
    if a.degree() != blocks.degree || b.degree() != blocks.degree {
        return Err(Error::DegreeMismatch(blocks.degree, a.degree()));
    }
    if let Some(g) = a.generators().iter().find(|g| !blocks.fixes_each_block(g)) {
        return Err(Error::Hypothesis(format!("{g} moves points across blocks")));
    }
    if !b.is_normal_in(a)? {
        return Err(Error::NotNormal("B is not normal in A".into()));
    }
    let index = a.order() / b.order();
    let mut factors = Vec::with_capacity(blocks.block_count());
    let (mut a_k, mut b_k) = (a.clone(), b.clone());
    for i in (0..blocks.block_count()).rev() {
        let q = blocks.block_size();
        let restrict = |h: &PermGroup| -> Result<PermGroup> {
            let gens = h
                .generators()
                .iter()
                .map(|g| blocks.restrict(g, i))
                .collect::<Result<Vec<_>>>()?;
            PermGroup::new(q, gens)
        };
        let pa = restrict(&a_k)?;
        let pb = restrict(&b_k)?;
        factors.push(IndexFactor {
            block: i + 1,
            projection_order: pa.order(),
            m_generators: pb.generators().iter().map(ToString::to_string).collect(),
            m_order: pb.order(),
            index: pa.order() / pb.order(),
        });
        a_k = a_k.pointwise_stabilizer(&blocks.blocks[i]);
        b_k = b_k.pointwise_stabilizer(&blocks.blocks[i]);
    }
    factors.reverse();
    let d = IndexDecomposition { index, factors };
    if d.product() != index {
        return Err(Error::Hypothesis(format!(
            "index decomposition product {} differs from [A:B] = {index}",
            d.product()
        )));
    }
    Ok(d)
}

#[derive(Clone, Debug, Serialize)]
pub struct Index2Report {
    pub p: u64,
    pub q: u64,
    pub index: u128,
    pub p_divides_index: bool,
    pub q_divides_index: bool,
    pub decomposition: IndexDecomposition,
    pub passed: bool,
}

/// If `p | [A:B]` then `q | [A:B]`, for `A` with transitive projections.
pub fn check_index2(
    a: &PermGroup,
    b: &PermGroup,
    blocks: &BlockSystem,
    p: u64,
    q: u64,
) -> Result<Index2Report> {
    if !is_prime(p) || !is_prime(q) || p >= q {
        return Err(Error::Hypothesis(format!("need primes p < q, got {p}, {q}")));
    }
    if (q - 1) % p == 0 {
        return Err(Error::Hypothesis(format!("{p} divides {q} - 1")));
    }
    if blocks.block_size() as u64 != q {
        return Err(Error::Hypothesis(format!(
            "blocks have size {}, expected {q}",
            blocks.block_size()
        )));
    }
    for i in 0..blocks.block_count() {
        let gens = a
            .generators()
            .iter()
            .map(|g| blocks.restrict(g, i))
            .collect::<Result<Vec<_>>>()?;
        if !PermGroup::new(q as usize, gens)?.is_transitive() {
            return Err(Error::Hypothesis(format!(
                "projection onto block {} is not transitive",
                i + 1
            )));
        }
    }
    let decomposition = decompose_index(a, b, blocks)?;
    let index = decomposition.index;
    let p_div = index % p as u128 == 0;
    let q_div = index % q as u128 == 0;
    Ok(Index2Report {
        p,
        q,
        index,
        p_divides_index: p_div,
        q_divides_index: q_div,
        decomposition,
        passed: !p_div || q_div,
    })
}
