//! Permutations of `{1..n}`.
//!
//! Composition is a left action: `a.compose(&b)` is the map `x -> a(b(x))`.
//! Every other module (in particular wreath multiplication) relies on this.
//! Points are 1-based in all public functions and in cycle notation; the
//! image table is stored 0-based.

use std::collections::VecDeque;
use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!(degree >= 1, "permutation degree must be positive");
        Self {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from a 0-based image table.
    pub fn from_images0(images: Vec<u32>) -> Result<Self> {
        if images.is_empty() {
            return Err(Error::InvalidArgument("degree must be at least 1".into()));
        }
        let mut seen = vec![false; images.len()];
        for &x in &images {
            let x = x as usize;
            if x >= images.len() || seen[x] {
                return Err(Error::InvalidArgument(format!(
                    "image table is not a bijection of {} points",
                    images.len()
                )));
            }
            seen[x] = true;
        }
        Ok(Self { images })
    }

    /// Builds a permutation from a 1-based image table: `images[k-1]` is the
    /// image of point `k`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let zero: Option<Vec<u32>> = images
            .iter()
            .map(|&x| x.checked_sub(1).map(|x| x as u32))
            .collect();
        match zero {
            Some(v) => Self::from_images0(v),
            None => Err(Error::InvalidArgument("point 0 in 1-based image table".into())),
        }
    }

    /// The cycle through the given 1-based points, in order.
    pub fn cycle(degree: usize, points: &[usize]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut seen = vec![false; degree];
        for &p in points {
            if p == 0 || p > degree {
                return Err(Error::InvalidArgument(format!(
                    "point {p} out of range 1..={degree}"
                )));
            }
            if seen[p - 1] {
                return Err(Error::InvalidArgument(format!("repeated point {p}")));
            }
            seen[p - 1] = true;
        }
        for (k, &p) in points.iter().enumerate() {
            let next = points[(k + 1) % points.len()];
            images[p - 1] = (next - 1) as u32;
        }
        Ok(Self { images })
    }

    /// The standard n-cycle `(1 2 ... n)`.
    pub fn n_cycle(degree: usize) -> Self {
        let pts: Vec<usize> = (1..=degree).collect();
        Self::cycle(degree, &pts).expect("standard cycle is valid")
    }

    pub fn random<R: Rng + ?Sized>(degree: usize, rng: &mut R) -> Self {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for k in (1..degree).rev() {
            let j = rng.gen_range(0..=k);
            images.swap(k, j);
        }
        Self { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of a 1-based point.
    pub fn image(&self, point: usize) -> usize {
        self.images[point - 1] as usize + 1
    }

    #[inline]
    pub fn apply0(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images0(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &x)| k == x as usize)
    }

    fn check_degree(&self, other: &Self) -> Result<()> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(())
    }

    /// `x -> self(other(x))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_degree(other)?;
        Ok(self.mul(other))
    }

    /// Unchecked [`compose`](Self::compose); panics on degree mismatch.
    #[inline]
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Self {
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0u32; self.degree()];
        for (k, &x) in self.images.iter().enumerate() {
            images[x as usize] = k as u32;
        }
        Self { images }
    }

    /// `h * g * h^-1`.
    pub fn conjugate(g: &Self, h: &Self) -> Result<Self> {
        g.check_degree(h)?;
        Ok(g.conjugated_by(h))
    }

    /// `h * self * h^-1`, computed directly: it maps `h(x)` to `h(self(x))`.
    pub fn conjugated_by(&self, h: &Self) -> Self {
        assert_eq!(self.degree(), h.degree(), "degree mismatch");
        let mut images = vec![0u32; self.degree()];
        for (x, &gx) in self.images.iter().enumerate() {
            images[h.images[x] as usize] = h.images[gx as usize];
        }
        Self { images }
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            sq = sq.mul(&sq);
            e >>= 1;
        }
        acc
    }

    /// Disjoint cycles of length at least two, each starting at its least
    /// point, sorted by least point. Points are 1-based.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.apply0(start) == start {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x + 1);
                x = self.apply0(x);
            }
            out.push(cyc);
        }
        out
    }

    /// Sorted cycle lengths, fixed points included as 1-cycles.
    pub fn cycle_type(&self) -> Vec<usize> {
        let moved: usize = self.cycles().iter().map(Vec::len).sum();
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.extend(std::iter::repeat_n(1, self.degree() - moved));
        t.sort_unstable();
        t
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    pub fn fixes(&self, point: usize) -> bool {
        self.image(point) == point
    }

    pub fn has_fixed_point(&self) -> bool {
        self.images.iter().enumerate().any(|(k, &x)| k == x as usize)
    }

    /// Extends to a larger degree by fixing the new points.
    pub fn pad(&self, degree: usize) -> Self {
        assert!(degree >= self.degree());
        let mut images = self.images.clone();
        images.extend(self.degree() as u32..degree as u32);
        Self { images }
    }

    /// Parses disjoint cycle notation such as `"(1 2 3)(4 5)"`. Whitespace is
    /// ignored between tokens; commas are accepted as separators.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Parse {
                pos: 0,
                msg: "degree must be at least 1".into(),
            });
        }
        let bytes = text.as_bytes();
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        let mut pos = 0;
        let err = |pos: usize, msg: &str| Error::Parse {
            pos,
            msg: msg.to_string(),
        };
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && (bytes[*pos].is_ascii_whitespace() || bytes[*pos] == b',')
            {
                *pos += 1;
            }
        };
        skip_ws(&mut pos);
        while pos < bytes.len() {
            if bytes[pos] != b'(' {
                return Err(err(pos, "expected '('"));
            }
            pos += 1;
            let mut cyc: Vec<usize> = Vec::new();
            loop {
                skip_ws(&mut pos);
                if pos >= bytes.len() {
                    return Err(err(pos, "unclosed '('"));
                }
                if bytes[pos] == b')' {
                    pos += 1;
                    break;
                }
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if start == pos {
                    return Err(err(pos, "expected a point label"));
                }
                let label: usize = text[start..pos]
                    .parse()
                    .map_err(|_| err(start, "point label too large"))?;
                if label == 0 || label > degree {
                    return Err(err(
                        start,
                        &format!("point {label} out of range 1..={degree}"),
                    ));
                }
                if used[label - 1] {
                    return Err(err(start, &format!("repeated point {label}")));
                }
                used[label - 1] = true;
                cyc.push(label - 1);
            }
            for (k, &x) in cyc.iter().enumerate() {
                images[x] = cyc[(k + 1) % cyc.len()] as u32;
            }
            skip_ws(&mut pos);
        }
        Ok(Self { images })
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (k, x) in c.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self, self.degree())
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// The orbit of a 1-based point under the group generated by `gens`,
/// as a sorted list of 1-based points.
pub fn orbit(point: usize, gens: &[Permutation]) -> Vec<usize> {
    let degree = gens.first().map_or(point, Permutation::degree);
    let mut seen = vec![false; degree.max(point)];
    seen[point - 1] = true;
    let mut queue = VecDeque::from([point - 1]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g.apply0(x);
            if !seen[y] {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    seen.iter()
        .enumerate()
        .filter_map(|(k, &s)| s.then_some(k + 1))
        .collect()
}

/// Partition of `{1..degree}` into orbits, sorted by least point.
pub fn orbits(degree: usize, gens: &[Permutation]) -> Vec<Vec<usize>> {
    let mut assigned = vec![false; degree];
    let mut out = Vec::new();
    for start in 1..=degree {
        if assigned[start - 1] {
            continue;
        }
        let orb = orbit(start, gens);
        for &x in &orb {
            assigned[x - 1] = true;
        }
        out.push(orb);
    }
    out
}
