//! Permutations of `{1..n}` and the two permutations that define a glueing.
//!
//! Labels are 1-based at the API boundary. Internally the image is stored
//! 0-based as `u32`, which keeps the hot loops of the samplers compact.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use rand::Rng;

use crate::error::{Error, Result};

/// A bijection of `{1..n}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    image: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (0..n as u32).collect(),
        }
    }

    /// Builds a permutation from its 1-based one-line notation.
    pub fn from_one_based(image: &[usize]) -> Result<Self> {
        let n = image.len();
        if n == 0 {
            return Err(Error::invalid("a permutation needs n >= 1"));
        }
        let mut seen = vec![false; n];
        let mut zero_based = Vec::with_capacity(n);
        for &v in image {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::invalid(format!(
                    "image {image:?} is not a bijection of 1..={n}"
                )));
            }
            seen[v - 1] = true;
            zero_based.push((v - 1) as u32);
        }
        Ok(Permutation { image: zero_based })
    }

    /// Caller guarantees `image` is a bijection of `0..image.len()`.
    pub(crate) fn from_zero_based_unchecked(image: Vec<u32>) -> Self {
        debug_assert!(is_bijection(&image));
        Permutation { image }
    }

    /// The transposition swapping labels `a` and `b` (1-based).
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        if a == 0 || b == 0 || a > n || b > n || a == b {
            return Err(Error::invalid(format!(
                "transposition ({a} {b}) is not valid on 1..={n}"
            )));
        }
        let mut p = Self::identity(n);
        p.image.swap(a - 1, b - 1);
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    /// Image of the 1-based label `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.image[i - 1] as usize + 1
    }

    pub fn image_one_based(&self) -> Vec<usize> {
        self.image.iter().map(|&v| v as usize + 1).collect()
    }

    pub(crate) fn zero_based(&self) -> &[u32] {
        &self.image
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.n()];
        for (i, &v) in self.image.iter().enumerate() {
            inv[v as usize] = i as u32;
        }
        Permutation { image: inv }
    }

    /// `i ↦ other(self(i))`: first `self`, then `other`.
    pub fn then(&self, other: &Permutation) -> Result<Self> {
        compose(self, other)
    }

    /// `π ∘ self ∘ π⁻¹`, which relabels every cycle of `self` through `π`.
    pub fn conjugate_by(&self, pi: &Permutation) -> Result<Self> {
        check_same_size(self, pi)?;
        let mut out = vec![0u32; self.n()];
        for (i, &v) in self.image.iter().enumerate() {
            out[pi.image[i] as usize] = pi.image[v as usize];
        }
        Ok(Permutation { image: out })
    }

    /// Cycles in 1-based labels, each starting at its smallest element,
    /// ordered by that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for start in 0..self.n() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.image[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_count(&self) -> usize {
        count_cycles(&self.image, &mut vec![false; self.n()])
    }

    pub fn cycle_type(&self) -> CycleType {
        cycle_census(self)
    }

    pub fn sign(&self) -> i8 {
        sign(self)
    }

    pub fn is_fixed_point_free_involution(&self) -> bool {
        self.image
            .iter()
            .enumerate()
            .all(|(i, &v)| v as usize != i && self.image[v as usize] as usize == i)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.image_one_based())
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation, fixed points included: `(1 2 3)(4)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cycle in self.cycles() {
            write!(f, "(")?;
            for (idx, v) in cycle.iter().enumerate() {
                if idx > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

fn is_bijection(image: &[u32]) -> bool {
    let mut seen = vec![false; image.len()];
    image.iter().all(|&v| {
        let v = v as usize;
        v < seen.len() && !std::mem::replace(&mut seen[v], true)
    })
}

fn check_same_size(p: &Permutation, q: &Permutation) -> Result<()> {
    if p.n() != q.n() {
        return Err(Error::invalid(format!(
            "permutation sizes differ: {} vs {}",
            p.n(),
            q.n()
        )));
    }
    Ok(())
}

/// Counts cycles of a 0-based image. `seen` is scratch space of the same
/// length and is left fully set.
pub(crate) fn count_cycles(image: &[u32], seen: &mut [bool]) -> usize {
    seen.iter_mut().for_each(|s| *s = false);
    let mut count = 0;
    for start in 0..image.len() {
        if seen[start] {
            continue;
        }
        count += 1;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = image[x] as usize;
        }
    }
    count
}

/// A cycle type: the multiset of cycle lengths, kept in descending order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType {
    parts: Vec<usize>,
}

impl CycleType {
    pub fn from_parts(mut parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::invalid(format!(
                "cycle type parts must be positive and non-empty, got {parts:?}"
            )));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(CycleType { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of cycles.
    pub fn count(&self) -> usize {
        self.parts.len()
    }

    /// Size of the ground set.
    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn is_even(&self) -> bool {
        (self.n() - self.count()).is_multiple_of(2)
    }

    /// Multiplicity `m_j` of each part length `j`, indexed by `j`.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.parts.first().copied().unwrap_or(0) + 1];
        for &p in &self.parts {
            m[p] += 1;
        }
        m
    }

    /// Centralizer order `Π j^{m_j} m_j!`.
    pub fn centralizer_order(&self) -> BigInt {
        let mut z = BigInt::one();
        for (j, &m) in self.multiplicities().iter().enumerate().skip(1) {
            for r in 1..=m {
                z *= BigInt::from(j) * BigInt::from(r);
            }
        }
        z
    }

    /// Number of permutations of `{1..n}` with this cycle type.
    pub fn class_size(&self) -> BigInt {
        let fact: BigInt = (1..=self.n()).map(BigInt::from).product();
        fact / self.centralizer_order()
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// The canonical `β` with cycles `(1 2 … k)(k+1 … 2k)…`.
pub fn make_beta(n: usize, k: usize) -> Result<Permutation> {
    if k < 3 {
        return Err(Error::invalid(format!("polygon size k = {k} must be >= 3")));
    }
    if n == 0 || !n.is_multiple_of(k) {
        return Err(Error::invalid(format!(
            "n = {n} must be a positive multiple of k = {k}"
        )));
    }
    let image = (0..n)
        .map(|i| {
            let block = i - i % k;
            (block + (i - block + 1) % k) as u32
        })
        .collect();
    Ok(Permutation::from_zero_based_unchecked(image))
}

/// Reusable state for drawing uniform fixed-point-free involutions.
///
/// The lowest unpaired label is paired with a uniform choice among the other
/// unpaired labels until none remain. Each of the `(n-1)!!` matchings has
/// probability `1 / ((n-1)(n-3)…1)`.
#[derive(Clone, Debug)]
pub struct MatchingSampler {
    pool: Vec<u32>,
    pos: Vec<u32>,
}

impl MatchingSampler {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || !n.is_multiple_of(2) {
            return Err(Error::invalid(format!(
                "n = {n} must be positive and even to admit a perfect matching"
            )));
        }
        Ok(MatchingSampler {
            pool: Vec::with_capacity(n),
            pos: vec![0; n],
        })
    }

    pub fn n(&self) -> usize {
        self.pos.len()
    }

    /// Writes a fresh matching (0-based) into `out`.
    pub fn sample_into<R: Rng + ?Sized>(&mut self, rng: &mut R, out: &mut [u32]) {
        let n = self.n();
        debug_assert_eq!(out.len(), n);
        self.pool.clear();
        self.pool.extend(0..n as u32);
        for (i, p) in self.pos.iter_mut().enumerate() {
            *p = i as u32;
        }
        const UNPAIRED: u32 = u32::MAX;
        out.iter_mut().for_each(|o| *o = UNPAIRED);
        for i in 0..n {
            if out[i] != UNPAIRED {
                continue;
            }
            self.remove(i as u32);
            let r = rng.random_range(0..self.pool.len() as u32) as usize;
            let j = self.pool[r];
            self.remove(j);
            out[i] = j;
            out[j as usize] = i as u32;
        }
    }

    fn remove(&mut self, label: u32) {
        let idx = self.pos[label as usize] as usize;
        let last = *self.pool.last().expect("pool is non-empty");
        self.pool.swap_remove(idx);
        if last != label {
            self.pos[last as usize] = idx as u32;
        }
    }

    pub fn sample<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Permutation {
        let mut out = vec![0u32; self.n()];
        self.sample_into(rng, &mut out);
        Permutation::from_zero_based_unchecked(out)
    }
}

/// A uniform fixed-point-free involution of `{1..n}`.
pub fn sample_matching<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Permutation> {
    Ok(MatchingSampler::new(n)?.sample(rng))
}

/// A uniform permutation of `{1..n}` (Fisher-Yates).
pub fn sample_permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Permutation {
    let mut image: Vec<u32> = (0..n as u32).collect();
    for i in (1..n).rev() {
        let j = rng.random_range(0..=i as u32) as usize;
        image.swap(i, j);
    }
    Permutation::from_zero_based_unchecked(image)
}

/// `i ↦ q(p(i))`: first `p`, then `q`.
pub fn compose(p: &Permutation, q: &Permutation) -> Result<Permutation> {
    check_same_size(p, q)?;
    let image = p.image.iter().map(|&v| q.image[v as usize]).collect();
    Ok(Permutation::from_zero_based_unchecked(image))
}

pub fn cycle_census(p: &Permutation) -> CycleType {
    let parts = p.cycles().iter().map(Vec::len).collect();
    CycleType::from_parts(parts).expect("a permutation has at least one cycle")
}

/// `(-1)^(n - cycles)`.
pub fn sign(p: &Permutation) -> i8 {
    if (p.n() - p.cycle_count()).is_multiple_of(2) {
        1
    } else {
        -1
    }
}
