//! Quotient groups as Cayley tables, and isomorphism of small tables.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

pub const DEFAULT_QUOTIENT_BUDGET: u128 = 1_000;
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// Multiplication table of a finite group. Index 0 is the identity.
#[derive(Clone, Debug, Serialize)]
pub struct CayleyTable {
    pub order: usize,
    /// Coset representatives, printed in cycle notation. Empty for tables
    /// built directly from rows.
    #[serde(serialize_with = "serialize_reps")]
    pub reps: Vec<Permutation>,
    pub table: Vec<Vec<usize>>,
}

fn serialize_reps<S: serde::Serializer>(
    reps: &[Permutation],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(reps.iter().map(ToString::to_string))
}

impl CayleyTable {
    /// Validates a table given as rows: Latin square with identity at 0
    /// and associative.
    pub fn from_rows(table: Vec<Vec<usize>>) -> Result<Self> {
        let order = table.len();
        let t = Self {
            order,
            reps: Vec::new(),
            table,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        let m = self.order;
        let bad = |msg: &str| Err(Error::InvalidArgument(format!("Cayley table: {msg}")));
        if m == 0 || self.table.len() != m || self.table.iter().any(|r| r.len() != m) {
            return bad("not square");
        }
        for a in 0..m {
            let mut row = vec![false; m];
            let mut col = vec![false; m];
            for b in 0..m {
                let (r, c) = (self.table[a][b], self.table[b][a]);
                if r >= m || c >= m || row[r] || col[c] {
                    return bad("not a Latin square");
                }
                row[r] = true;
                col[c] = true;
            }
            if self.table[0][a] != a || self.table[a][0] != a {
                return bad("index 0 is not the identity");
            }
        }
        // Exhaustive up to 64 elements, strided above.
        let step = if m <= 64 { 1 } else { m / 61 + 1 };
        for a in (0..m).step_by(step) {
            for b in (0..m).step_by(step) {
                for c in (0..m).step_by(step) {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return bad("not associative");
                    }
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// `(element order, count)` sorted by order.
    pub fn order_histogram(&self) -> Vec<(usize, usize)> {
        let mut h: BTreeMap<usize, usize> = BTreeMap::new();
        for a in 0..self.order {
            *h.entry(self.element_order(a)).or_default() += 1;
        }
        h.into_iter().collect()
    }

    pub fn is_cyclic(&self) -> bool {
        (0..self.order).any(|a| self.element_order(a) == self.order)
    }

    /// Elements of the subgroup generated by `gens`, as a membership mask.
    fn closure(&self, gens: &[usize]) -> Vec<bool> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen
    }

    /// Generators picked greedily: the element of largest order outside the
    /// current closure, lowest index on ties.
    fn greedy_generators(&self) -> Vec<usize> {
        let orders: Vec<usize> = (0..self.order).map(|a| self.element_order(a)).collect();
        let mut gens = Vec::new();
        let mut inside = self.closure(&gens);
        while let Some(next) = (0..self.order)
            .filter(|&a| !inside[a])
            .max_by_key(|&a| (orders[a], std::cmp::Reverse(a)))
        {
            gens.push(next);
            inside = self.closure(&gens);
        }
        gens
    }
}

/// `G/N` with cosets found by canonical coset representatives of `N`.
pub fn quotient(g: &PermGroup, n: &PermGroup, budget: u128) -> Result<CayleyTable> {
    if !n.is_normal_in(g)? {
        return Err(Error::NotNormal("N is not normal in G".into()));
    }
    let index = g.order() / n.order();
    if index > budget {
        return Err(Error::Budget {
            what: "quotient index",
            size: index,
            budget,
        });
    }
    let chain = n.chain();
    let mut reps = vec![chain.canonical_coset_rep(&Permutation::identity(g.degree()))];
    let mut lookup: HashMap<Permutation, usize> = HashMap::from([(reps[0].clone(), 0)]);
    let mut k = 0;
    while k < reps.len() {
        for s in g.generators() {
            let c = chain.canonical_coset_rep(&s.mul(&reps[k]));
            if !lookup.contains_key(&c) {
                lookup.insert(c.clone(), reps.len());
                reps.push(c);
            }
        }
        k += 1;
    }
    debug_assert_eq!(reps.len() as u128, index);
    let table = reps
        .iter()
        .map(|a| {
            reps.iter()
                .map(|b| lookup[&chain.canonical_coset_rep(&a.mul(b))])
                .collect()
        })
        .collect();
    Ok(CayleyTable {
        order: reps.len(),
        reps,
        table,
    })
}

/// An isomorphism `t1 -> t2` as an index map, or `None` if none exists.
pub fn isomorphic(t1: &CayleyTable, t2: &CayleyTable) -> Result<Option<Vec<usize>>> {
    isomorphic_with_budget(t1, t2, DEFAULT_NODE_BUDGET)
}

pub fn isomorphic_with_budget(
    t1: &CayleyTable,
    t2: &CayleyTable,
    node_budget: u64,
) -> Result<Option<Vec<usize>>> {
    if t1.order != t2.order || t1.order_histogram() != t2.order_histogram() {
        return Ok(None);
    }
    let gens = t1.greedy_generators();
    let orders2: Vec<usize> = (0..t2.order).map(|a| t2.element_order(a)).collect();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            let o = t1.element_order(g);
            (0..t2.order).filter(|&b| orders2[b] == o).collect()
        })
        .collect();

    let mut search = Search {
        t1,
        t2,
        gens: &gens,
        candidates: &candidates,
        images: Vec::with_capacity(gens.len()),
        nodes: 0,
        budget: node_budget,
    };
    let found = search.run()?;
    if let Some(map) = &found {
        assert!(is_isomorphism(t1, t2, map), "isomorphism search produced a non-isomorphism");
    }
    Ok(found)
}

struct Search<'a> {
    t1: &'a CayleyTable,
    t2: &'a CayleyTable,
    gens: &'a [usize],
    candidates: &'a [Vec<usize>],
    images: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn run(&mut self) -> Result<Option<Vec<usize>>> {
        let k = self.images.len();
        if k == self.gens.len() {
            return Ok(self.extend());
        }
        for &c in &self.candidates[k] {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::Undecided(self.budget));
            }
            self.images.push(c);
            if let Some(map) = self.extend() {
                if self.images.len() == self.gens.len() {
                    return Ok(Some(map));
                }
                if let Some(done) = self.run()? {
                    return Ok(Some(done));
                }
            }
            self.images.pop();
        }
        Ok(None)
    }

    /// Extends the assignment of generator images to the subgroup they
    /// generate; `None` on a conflict or a collision. Unreached elements map
    /// to `usize::MAX`.
    fn extend(&self) -> Option<Vec<usize>> {
        let m = self.t1.order;
        let mut map = vec![usize::MAX; m];
        let mut used = vec![false; m];
        map[0] = 0;
        used[0] = true;
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            for (j, &img) in self.images.iter().enumerate() {
                let y = self.t1.mul(x, self.gens[j]);
                let fy = self.t2.mul(map[x], img);
                if map[y] == usize::MAX {
                    if used[fy] {
                        return None;
                    }
                    map[y] = fy;
                    used[fy] = true;
                    stack.push(y);
                } else if map[y] != fy {
                    return None;
                }
            }
        }
        Some(map)
    }
}

/// Bijective and multiplicative on every pair.
pub fn is_isomorphism(t1: &CayleyTable, t2: &CayleyTable, map: &[usize]) -> bool {
    if t1.order != t2.order || map.len() != t1.order {
        return false;
    }
    let mut used = vec![false; t2.order];
    for &x in map {
        if x >= t2.order || used[x] {
            return false;
        }
        used[x] = true;
    }
    (0..t1.order).all(|a| {
        (0..t1.order).all(|b| map[t1.mul(a, b)] == t2.mul(map[a], map[b]))
    })
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;

    fn cyclic_table(m: usize) -> CayleyTable {
        CayleyTable::from_rows((0..m).map(|a| (0..m).map(|b| (a + b) % m).collect()).collect())
            .unwrap()
    }

    fn klein() -> CayleyTable {
        CayleyTable::from_rows((0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect()).unwrap()
    }

    fn table_of(g: &PermGroup) -> CayleyTable {
        quotient(g, &PermGroup::trivial(g.degree()), 10_000).unwrap()
    }

    fn witness9() -> (PermGroup, PermGroup) {
        let g = PermGroup::from_cycles(9, &["(1 2 3 4 5 6 7 8 9)", "(2 5 8)(3 9 6)"]).unwrap();
        (g, PermGroup::cyclic(9))
    }

    #[test]
    fn quotient_examples() {
        let s5 = PermGroup::symmetric(5);
        let t = quotient(&s5, &s5, 10).unwrap();
        assert_eq!(t.order, 1);

        let (g, n1) = witness9();
        let t = quotient(&g, &n1, 10).unwrap();
        assert_eq!(t.order, 3);
        assert!(t.is_cyclic());
        t.validate().unwrap();

        let t = quotient(&s5, &PermGroup::alternating(5), 10).unwrap();
        assert_eq!(t.order, 2);
        assert!(t.is_cyclic());
        assert!(t.reps[1].cycle_type().len() % 2 == 0 || t.reps[1].order() == 2);
    }

    #[test]
    fn quotient_errors() {
        let s3 = PermGroup::symmetric(3);
        let t = PermGroup::from_cycles(3, &["(1 2)"]).unwrap();
        assert!(matches!(quotient(&s3, &t, 10), Err(Error::NotNormal(_))));
        let s6 = PermGroup::symmetric(6);
        assert!(matches!(
            quotient(&s6, &PermGroup::trivial(6), 100),
            Err(Error::Budget { size: 720, .. })
        ));
    }

    #[test]
    fn histogram_examples() {
        assert_eq!(cyclic_table(3).order_histogram(), vec![(1, 1), (3, 2)]);
        assert_eq!(klein().order_histogram(), vec![(1, 1), (2, 3)]);
        let s3 = table_of(&PermGroup::symmetric(3));
        assert_eq!(s3.order_histogram(), vec![(1, 1), (2, 3), (3, 2)]);
    }

    #[test]
    fn isomorphism_examples() {
        let s3 = table_of(&PermGroup::symmetric(3));
        let id = isomorphic(&s3, &s3).unwrap().unwrap();
        assert!(is_isomorphism(&s3, &s3, &id));
        assert_eq!(isomorphic(&cyclic_table(4), &klein()).unwrap(), None);
        // C6 and S3 share order but not the histogram.
        assert_eq!(isomorphic(&cyclic_table(6), &s3).unwrap(), None);
        // S3 as permutations of 3 points vs. acting regularly-ish on 6 points.
        let s3b = table_of(&PermGroup::from_cycles(6, &["(1 2)(3 4)(5 6)", "(1 3 5)(2 6 4)"]).unwrap());
        assert!(isomorphic(&s3, &s3b).unwrap().is_some());
        let d4 = table_of(&PermGroup::from_cycles(4, &["(1 2 3 4)", "(1 3)"]).unwrap());
        let q8 = table_of(
            &PermGroup::from_cycles(8, &["(1 2 3 4)(5 6 7 8)", "(1 5 3 7)(2 8 4 6)"]).unwrap(),
        );
        assert_eq!(q8.order, 8);
        assert_eq!(isomorphic(&d4, &q8).unwrap(), None);
    }

    #[test]
    fn same_histogram_non_isomorphic() {
        // C8 x C2 and the modular group <a, b | a^8, b^2, bab = a^5> share
        // an order histogram.
        let c8c2 = table_of(&PermGroup::from_cycles(10, &["(1 2 3 4 5 6 7 8)", "(9 10)"]).unwrap());
        let m16 = table_of(
            &PermGroup::from_cycles(8, &["(1 2 3 4 5 6 7 8)", "(2 6)(4 8)"]).unwrap(),
        );
        assert_eq!(c8c2.order, 16);
        assert_eq!(m16.order, 16);
        assert_eq!(c8c2.order_histogram(), m16.order_histogram());
        assert_eq!(isomorphic(&c8c2, &m16).unwrap(), None);
    }

    #[test]
    fn node_budget_reports_undecided() {
        let a = table_of(&PermGroup::symmetric(4));
        let b = table_of(&PermGroup::symmetric(4).conjugated_by(
            &Permutation::parse_cycles("(1 4)", 4).unwrap(),
        ));
        assert!(matches!(isomorphic_with_budget(&a, &b, 1), Err(Error::Undecided(1))));
        assert!(isomorphic(&a, &b).unwrap().is_some());
    }

    #[test]
    fn invalid_tables_rejected() {
        assert!(CayleyTable::from_rows(vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(CayleyTable::from_rows(vec![vec![1, 0], vec![0, 1]]).is_err());
        // Latin square with identity but not associative (order 5 loop).
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(CayleyTable::from_rows(loop5).is_err());
    }

    #[test]
    fn json_dump() {
        let (g, n1) = witness9();
        let t = quotient(&g, &n1, 10).unwrap();
        let v: serde_json::Value = serde_json::to_value(&t).unwrap();
        assert_eq!(v["order"], 3);
        assert_eq!(v["reps"][0], "()");
        assert_eq!(v["table"].as_array().unwrap().len(), 3);
    }

    /// Random small quotients: reflexive, symmetric, self-checking.
    #[test]
    fn isomorphism_reflexive_and_symmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(50);
        let mut tables = Vec::new();
        while tables.len() < 50 {
            let n = rng.gen_range(3..=6);
            let gens = (0..2).map(|_| Permutation::random(n, &mut rng)).collect();
            let g = PermGroup::new(n, gens).unwrap();
            if g.order() > 720 {
                continue;
            }
            let x = g.random_element(&mut rng);
            let nsub = g.normal_closure(&[x]).unwrap();
            tables.push(quotient(&g, &nsub, 1000).unwrap());
        }
        for (k, a) in tables.iter().enumerate() {
            a.validate().unwrap();
            let m = isomorphic(a, a).unwrap().expect("reflexive");
            assert!(is_isomorphism(a, a, &m));
            for b in &tables[k + 1..] {
                let ab = isomorphic(a, b).unwrap();
                let ba = isomorphic(b, a).unwrap();
                assert_eq!(ab.is_some(), ba.is_some());
                if let Some(m) = ab {
                    assert!(is_isomorphism(a, b, &m));
                }
            }
        }
    }

    #[test]
    fn prime_order_quotients_are_isomorphic() {
        for p in [2usize, 3, 5, 7] {
            let g = PermGroup::cyclic(p * 2);
            let n = g.normal_closure(&[Permutation::n_cycle(p * 2).pow(p as i64)]).unwrap();
            let t = quotient(&g, &n, 100).unwrap();
            assert_eq!(t.order, p);
            assert!(isomorphic(&t, &cyclic_table(p)).unwrap().is_some());
        }
    }
}
