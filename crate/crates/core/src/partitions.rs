//! Set partitions of dense index ranges `0..n`, their joins, transport along
//! maps, composition through a middle set with extraction of closed orbits,
//! and fixed-point-free involutions.

use crate::error::{Error, Result};

/// A set partition of `0..n`, stored as a block label per element.
///
/// Labels are canonical: blocks are numbered in order of their minimal
/// element, so structural equality is partition equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    labels: Vec<usize>,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        parent[hi] = lo;
    }
}

impl Partition {
    /// Builds a partition from arbitrary labels (equal labels share a block).
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut map = std::collections::HashMap::new();
        let labels = labels
            .iter()
            .map(|l| {
                let next = map.len();
                *map.entry(*l).or_insert(next)
            })
            .collect();
        Partition { labels }
    }

    /// Builds a partition of `0..n` from a list of blocks.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut labels = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidArgument("empty block".into()));
            }
            for &x in block {
                if x >= n || labels[x] != usize::MAX {
                    return Err(Error::InvalidArgument(format!("element {x} repeated or out of range")));
                }
                labels[x] = b;
            }
        }
        if labels.contains(&usize::MAX) {
            return Err(Error::InvalidArgument("blocks do not cover the ground set".into()));
        }
        Ok(Self::from_labels(&labels))
    }

    /// The partition into singletons.
    pub fn discrete(n: usize) -> Self {
        Partition { labels: (0..n).collect() }
    }

    /// The partition with a single block (empty when `n = 0`).
    pub fn indiscrete(n: usize) -> Self {
        Partition { labels: vec![0; n] }
    }

    /// Size of the ground set.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    /// Whether the ground set is empty.
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Block label of `x`.
    pub fn block_of(&self, x: usize) -> usize {
        self.labels[x]
    }

    /// Number of blocks.
    pub fn num_blocks(&self) -> usize {
        self.labels.iter().copied().max().map_or(0, |m| m + 1)
    }

    /// Blocks as sorted vectors, ordered by minimal element.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_blocks()];
        for (x, &l) in self.labels.iter().enumerate() {
            out[l].push(x);
        }
        out
    }

    /// Whether `self` refines `other` (every block of `self` lies in a block of `other`).
    pub fn refines(&self, other: &Partition) -> bool {
        self.len() == other.len() && self.join(other).map(|j| &j == other).unwrap_or(false)
    }

    /// Least common coarsening of two partitions of the same ground set.
    pub fn join(&self, other: &Partition) -> Result<Partition> {
        if self.len() != other.len() {
            return Err(Error::InvalidArgument(format!(
                "ground sets differ: {} vs {}",
                self.len(),
                other.len()
            )));
        }
        let n = self.len();
        let mut parent: Vec<usize> = (0..n).collect();
        for p in [self, other] {
            let mut first = vec![usize::MAX; p.num_blocks()];
            for x in 0..n {
                let l = p.labels[x];
                if first[l] == usize::MAX {
                    first[l] = x;
                } else {
                    union(&mut parent, first[l], x);
                }
            }
        }
        let labels: Vec<usize> = (0..n).map(|x| find(&mut parent, x)).collect();
        Ok(Partition::from_labels(&labels))
    }

    /// Least partition of `0..codomain` containing every image of a block.
    /// Points outside the image of `f` are singletons.
    pub fn push(&self, f: &[usize], codomain: usize) -> Result<Partition> {
        if f.len() != self.len() || f.iter().any(|&y| y >= codomain) {
            return Err(Error::InvalidArgument("map does not match the partition".into()));
        }
        let mut parent: Vec<usize> = (0..codomain).collect();
        for block in self.blocks() {
            for w in block.windows(2) {
                union(&mut parent, f[w[0]], f[w[1]]);
            }
        }
        let labels: Vec<usize> = (0..codomain).map(|y| find(&mut parent, y)).collect();
        Ok(Partition::from_labels(&labels))
    }

    /// Partition of the domain of `f` with `x ~ x'` iff `f(x) ~ f(x')`.
    pub fn pull(&self, f: &[usize]) -> Result<Partition> {
        if f.iter().any(|&y| y >= self.len()) {
            return Err(Error::InvalidArgument("map leaves the ground set".into()));
        }
        let labels: Vec<usize> = f.iter().map(|&y| self.labels[y]).collect();
        Ok(Partition::from_labels(&labels))
    }
}

/// Direction of [`transport`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Push,
    Pull,
}

/// Transports `p` along `f: 0..f.len() -> 0..codomain`.
pub fn transport(f: &[usize], codomain: usize, p: &Partition, dir: Direction) -> Result<Partition> {
    match dir {
        Direction::Push => p.push(f, codomain),
        Direction::Pull => {
            if p.len() != codomain {
                return Err(Error::InvalidArgument("pull needs a partition of the codomain".into()));
            }
            p.pull(f)
        }
    }
}

/// Result of composing two partitions through a middle set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Composite {
    /// The composite partition of `X ⊔ Z` (X first).
    pub partition: Partition,
    /// Blocks of the full join that lie entirely in the middle set, as sorted
    /// subsets of `0..|Y|`, ordered by minimal element.
    pub circles: Vec<Vec<usize>>,
}

/// Composes `a` on `X ⊔ Y` (sizes `x`, `y`) with `b` on `Y ⊔ Z`.
pub fn compose_with_cir(a: &Partition, x: usize, b: &Partition, y: usize) -> Result<Composite> {
    if a.len() < x || a.len() - x != y || b.len() < y {
        return Err(Error::InvalidArgument("middle sets do not agree".into()));
    }
    let z = b.len() - y;
    // Ground of the join: X (0..x), Y (x..x+y), Z (x+y..).
    let total = x + y + z;
    let a_emb: Vec<usize> = (0..x + y).collect();
    let b_emb: Vec<usize> = (x..total).collect();
    let ja = a.push(&a_emb, total)?;
    let jb = b.push(&b_emb, total)?;
    let j = ja.join(&jb)?;
    let outer: Vec<usize> = (0..x).chain(x + y..total).collect();
    let partition = j.pull(&outer)?;
    let circles = j
        .blocks()
        .into_iter()
        .filter(|bl| bl.iter().all(|&e| e >= x && e < x + y))
        .map(|bl| bl.into_iter().map(|e| e - x).collect())
        .collect();
    Ok(Composite { partition, circles })
}

/// Every set partition of `0..n`, generated as restricted growth strings.
pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    fn rec(labels: &mut Vec<usize>, n: usize, next: usize, out: &mut Vec<Partition>) {
        if labels.len() == n {
            out.push(Partition { labels: labels.clone() });
            return;
        }
        for l in 0..=next {
            labels.push(l);
            rec(labels, n, next.max(l + 1), out);
            labels.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(n), n, 0, &mut out);
    out
}

/// A partition together with the middle points it has absorbed so far.
///
/// Middle points carry global labels chosen by the caller. Each block
/// records the labels of the hidden points merged into it, and every closed
/// orbit produced along the way is kept as its sorted set of labels. Two
/// bracketings of the same chain then produce literally equal values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tracked {
    pub partition: Partition,
    /// Hidden labels per block of `partition`, sorted.
    pub inner: Vec<Vec<usize>>,
    /// Closed orbits as sorted label sets, sorted.
    pub circles: Vec<Vec<usize>>,
}

impl Tracked {
    /// A partition that has absorbed nothing.
    pub fn leaf(p: Partition) -> Self {
        let inner = vec![Vec::new(); p.num_blocks()];
        Tracked { partition: p, inner, circles: Vec::new() }
    }

    /// Composes `self` on `X ⊔ Y` (sizes `x`, `labels.len()`) with `next`
    /// on `Y ⊔ Z`; `labels` names the points of `Y`.
    pub fn then(&self, x: usize, next: &Tracked, labels: &[usize]) -> Result<Tracked> {
        let y = labels.len();
        let comp = compose_with_cir(&self.partition, x, &next.partition, y)?;
        let z = next.partition.len() - y;
        let total = x + y + z;
        let ja = self.partition.push(&(0..x + y).collect::<Vec<_>>(), total)?;
        let jb = next.partition.push(&(x..total).collect::<Vec<_>>(), total)?;
        let j = ja.join(&jb)?;
        let mut gathered: Vec<Vec<usize>> = vec![Vec::new(); j.num_blocks()];
        for e in 0..total {
            let b = j.block_of(e);
            if e < x + y {
                gathered[b].extend(&self.inner[self.partition.block_of(e)]);
            }
            if e >= x {
                gathered[b].extend(&next.inner[next.partition.block_of(e - x)]);
            }
            if e >= x && e < x + y {
                gathered[b].push(labels[e - x]);
            }
        }
        for g in &mut gathered {
            g.sort_unstable();
            g.dedup();
        }
        let outer: Vec<usize> = (0..x).chain(x + y..total).collect();
        let mut inner = vec![Vec::new(); comp.partition.num_blocks()];
        for (k, &e) in outer.iter().enumerate() {
            inner[comp.partition.block_of(k)] = gathered[j.block_of(e)].clone();
        }
        let mut circles: Vec<Vec<usize>> = self.circles.iter().chain(&next.circles).cloned().collect();
        for (b, g) in gathered.into_iter().enumerate() {
            if !outer.iter().any(|&e| j.block_of(e) == b) {
                circles.push(g);
            }
        }
        circles.sort();
        Ok(Tracked { partition: comp.partition, inner, circles })
    }
}

/// A fixed-point-free involution, stored as its partner table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Involution {
    partner: Vec<usize>,
}

impl Involution {
    /// Validates a partner table.
    pub fn new(partner: Vec<usize>) -> Result<Self> {
        let n = partner.len();
        for (i, &j) in partner.iter().enumerate() {
            if j >= n || j == i || partner[j] != i {
                return Err(Error::InvalidArgument(format!("not a fixed-point-free involution at {i}")));
            }
        }
        Ok(Involution { partner })
    }

    /// Builds an involution on `0..n` from unordered pairs.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut partner = vec![usize::MAX; n];
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::InvalidArgument("pair out of range".into()));
            }
            partner[a] = b;
            partner[b] = a;
        }
        if partner.contains(&usize::MAX) {
            return Err(Error::InvalidArgument("pairs do not cover the ground set".into()));
        }
        Self::new(partner)
    }

    /// The standard involution `(0 1)(2 3)…`.
    pub fn standard(n: usize) -> Result<Self> {
        if n % 2 == 1 {
            return Err(Error::InvalidArgument("odd ground set".into()));
        }
        Ok(Involution { partner: (0..n).map(|i| i ^ 1).collect() })
    }

    /// Ground set size.
    pub fn len(&self) -> usize {
        self.partner.len()
    }

    /// Whether the ground set is empty.
    pub fn is_empty(&self) -> bool {
        self.partner.is_empty()
    }

    /// Image of `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.partner[i]
    }

    /// Partner table.
    pub fn as_slice(&self) -> &[usize] {
        &self.partner
    }

    /// Pairs `(i, j)` with `i < j`, sorted.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len()).filter(|&i| i < self.partner[i]).map(|i| (i, self.partner[i])).collect()
    }

    /// Number of orbits of the group generated by `self` and `other`.
    pub fn orbits_with(&self, other: &Involution) -> Result<usize> {
        if self.len() != other.len() {
            return Err(Error::InvalidArgument("ground sets differ".into()));
        }
        let n = self.len();
        let mut parent: Vec<usize> = (0..n).collect();
        for i in 0..n {
            union(&mut parent, i, self.partner[i]);
            union(&mut parent, i, other.partner[i]);
        }
        Ok((0..n).filter(|&i| find(&mut parent, i) == i).count())
    }
}

/// All fixed-point-free involutions of `0..n`, in lexicographic order of
/// their partner tables. Empty when `n` is odd.
pub fn enumerate_fpfi(n: usize) -> Vec<Involution> {
    fn rec(partner: &mut Vec<usize>, out: &mut Vec<Involution>) {
        let Some(i) = partner.iter().position(|&p| p == usize::MAX) else {
            out.push(Involution { partner: partner.clone() });
            return;
        };
        for j in i + 1..partner.len() {
            if partner[j] == usize::MAX {
                partner[i] = j;
                partner[j] = i;
                rec(partner, out);
                partner[i] = usize::MAX;
                partner[j] = usize::MAX;
            }
        }
    }
    let mut out = Vec::new();
    if n.is_multiple_of(2) {
        rec(&mut vec![usize::MAX; n], &mut out);
    }
    out
}

/// Coefficients (constant term first) of `Σ_σ X^{#orbits⟨σ0, σ⟩}` over all
/// fixed-point-free involutions `σ` of the ground set of `sigma0`.
pub fn fpfi_polynomial(sigma0: &Involution) -> Vec<u64> {
    let n = sigma0.len();
    let mut coeffs = vec![0u64; n / 2 + 1];
    for s in enumerate_fpfi(n) {
        let k = sigma0.orbits_with(&s).expect("same ground set");
        coeffs[k] += 1;
    }
    while coeffs.len() > 1 && *coeffs.last().unwrap() == 0 {
        coeffs.pop();
    }
    if n % 2 == 1 {
        return vec![0];
    }
    coeffs
}

/// Coefficients of `X (X + 2) ⋯ (X + 2(m − 1))`; equals `1` when `m = 0`.
pub fn rising_even_product(m: usize) -> Vec<u64> {
    let mut p = vec![1u64];
    for i in 0..m {
        let shift = 2 * i as u64;
        let mut next = vec![0u64; p.len() + 1];
        for (k, &c) in p.iter().enumerate() {
            next[k + 1] += c;
            next[k] += c * shift;
        }
        p = next;
    }
    p
}

/// The double factorial `(2m − 1)!!`.
pub fn odd_double_factorial(m: usize) -> u64 {
    (1..=m as u64).map(|i| 2 * i - 1).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn join_chains_transitively() {
        let a = Partition::from_blocks(3, &[vec![0, 1], vec![2]]).unwrap();
        let b = Partition::from_blocks(3, &[vec![0], vec![1, 2]]).unwrap();
        assert_eq!(a.join(&b).unwrap(), Partition::indiscrete(3));
        assert_eq!(a.join(&a).unwrap(), a);
        assert_eq!(Partition::discrete(3).join(&b).unwrap(), b);
    }

    #[test]
    fn join_rejects_ground_mismatch() {
        assert!(Partition::discrete(2).join(&Partition::discrete(3)).is_err());
    }

    #[test]
    fn push_along_injection_adds_singletons() {
        let p = Partition::indiscrete(2);
        let q = p.push(&[0, 1], 3).unwrap();
        assert_eq!(q.blocks(), vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn push_along_constant_map() {
        let p = Partition::discrete(3);
        let q = p.push(&[1, 1, 1], 3).unwrap();
        assert_eq!(q.blocks(), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn pull_of_indiscrete_is_indiscrete() {
        let p = Partition::indiscrete(2);
        assert_eq!(p.pull(&[0, 1, 1, 0]).unwrap(), Partition::indiscrete(4));
    }

    #[test]
    fn single_closed_orbit() {
        let a = Partition::indiscrete(2);
        let c = compose_with_cir(&a, 0, &a, 2).unwrap();
        assert!(c.partition.is_empty());
        assert_eq!(c.circles, vec![vec![0, 1]]);
    }

    #[test]
    fn identity_composition() {
        let a = Partition::from_blocks(4, &[vec![0, 2], vec![1], vec![3]]).unwrap();
        let id = Partition::from_labels(&[0, 1, 0, 1]);
        let c = compose_with_cir(&a, 2, &id, 2).unwrap();
        assert_eq!(c.partition, a);
        assert!(c.circles.is_empty());
    }

    #[test]
    fn fpfi_counts_and_polynomials() {
        for m in 0..=4 {
            let s0 = Involution::standard(2 * m).unwrap();
            assert_eq!(enumerate_fpfi(2 * m).len() as u64, odd_double_factorial(m));
            assert_eq!(fpfi_polynomial(&s0), rising_even_product(m));
        }
        assert_eq!(rising_even_product(2), vec![0, 2, 1]);
        assert!(enumerate_fpfi(3).is_empty());
    }
}
