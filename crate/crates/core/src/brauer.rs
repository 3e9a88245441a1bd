//! Oriented Brauer diagrams: perfect matchings of `p` bottom and `q` top
//! boundary points with one beginning point per strand.
//!
//! Points are numbered `0..p` along the bottom and `p..p+q` along the top.
//! A strand runs from its beginning point to its end point. The sign `+`
//! marks a strand that points downwards at the boundary: a bottom point is
//! `+` when it is an end, a top point is `+` when it is a beginning.

use std::fmt;

use crate::error::{Error, Result};

/// Orientation letter of a boundary point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    /// Strand oriented downwards.
    Plus,
    /// Strand oriented upwards.
    Minus,
}

impl Sign {
    /// The opposite letter.
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// `+1` or `-1`.
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// A word of orientation letters.
pub type Word = Vec<Sign>;

/// Parses a word such as `"+-+"`; the empty string is the empty word.
pub fn parse_word(s: &str) -> Result<Word> {
    s.chars()
        .map(|c| match c {
            '+' => Ok(Sign::Plus),
            '-' => Ok(Sign::Minus),
            _ => Err(Error::InvalidArgument(format!("bad sign letter {c:?}"))),
        })
        .collect()
}

/// Renders a word as a string of `+` and `-`.
pub fn format_word(w: &[Sign]) -> String {
    w.iter().map(|s| if *s == Sign::Plus { '+' } else { '-' }).collect()
}

/// Duplicates in place the letters whose positions are listed in `doubled`.
pub fn dbl_word(w: &[Sign], doubled: &[usize]) -> Word {
    let mut out = Vec::with_capacity(w.len() + doubled.len());
    for (i, &s) in w.iter().enumerate() {
        out.push(s);
        if doubled.contains(&i) {
            out.push(s);
        }
    }
    out
}

/// One piece of a composed strand: which factor (0 = first applied, 1 =
/// second) and which of its components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Piece {
    pub factor: u8,
    pub comp: usize,
}

/// Result of composing two oriented Brauer diagrams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Composition {
    /// The composite diagram.
    pub diagram: OrientedBrauer,
    /// Closed middle orbits as sorted middle-point sets, ordered by minimal element.
    pub circles: Vec<Vec<usize>>,
    /// For each component of the composite, the pieces it is made of, from
    /// its beginning to its end.
    pub segment_pieces: Vec<Vec<Piece>>,
    /// For each circle, its pieces along the orientation, starting with the
    /// piece that begins at the minimal middle point.
    pub circle_pieces: Vec<Vec<Piece>>,
}

/// An oriented Brauer diagram.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrientedBrauer {
    p: usize,
    q: usize,
    sigma: Vec<usize>,
    begins: Vec<bool>,
}

impl OrientedBrauer {
    /// Validates and builds a diagram.
    pub fn new(p: usize, q: usize, sigma: Vec<usize>, begins: Vec<bool>) -> Result<Self> {
        let n = p + q;
        if sigma.len() != n || begins.len() != n {
            return Err(Error::InvalidArgument("size mismatch".into()));
        }
        for i in 0..n {
            let j = sigma[i];
            if j >= n || j == i || sigma[j] != i {
                return Err(Error::InvalidArgument(format!("pairing is not a fixed-point-free involution at {i}")));
            }
            if begins[i] == begins[j] {
                return Err(Error::InvalidArgument(format!("strand through {i} needs exactly one beginning point")));
            }
        }
        Ok(OrientedBrauer { p, q, sigma, begins })
    }

    /// The empty diagram.
    pub fn empty() -> Self {
        OrientedBrauer { p: 0, q: 0, sigma: vec![], begins: vec![] }
    }

    /// Identity on a word.
    pub fn identity(w: &[Sign]) -> Self {
        let k = w.len();
        let mut sigma = vec![0; 2 * k];
        let mut begins = vec![false; 2 * k];
        for (i, &s) in w.iter().enumerate() {
            sigma[i] = k + i;
            sigma[k + i] = i;
            match s {
                Sign::Plus => begins[k + i] = true,
                Sign::Minus => begins[i] = true,
            }
        }
        OrientedBrauer { p: k, q: k, sigma, begins }
    }

    /// A cup with target word `first, first.flip()`.
    pub fn cup(first: Sign) -> Self {
        let b = first == Sign::Plus;
        OrientedBrauer { p: 0, q: 2, sigma: vec![1, 0], begins: vec![b, !b] }
    }

    /// A cap with source word `first, first.flip()`.
    pub fn cap(first: Sign) -> Self {
        let b = first == Sign::Minus;
        OrientedBrauer { p: 2, q: 0, sigma: vec![1, 0], begins: vec![b, !b] }
    }

    /// The crossing skeleton: strands `0 -> top 1` and `1 -> top 0`.
    pub fn swap(w: [Sign; 2]) -> Self {
        let mut sigma = vec![0; 4];
        let mut begins = vec![false; 4];
        // bottom 0 <-> top 3 (position 1), bottom 1 <-> top 2 (position 0)
        sigma[0] = 3;
        sigma[3] = 0;
        sigma[1] = 2;
        sigma[2] = 1;
        for (i, s) in w.iter().enumerate() {
            let top = if i == 0 { 3 } else { 2 };
            match s {
                Sign::Plus => begins[top] = true,
                Sign::Minus => begins[i] = true,
            }
        }
        OrientedBrauer { p: 2, q: 2, sigma, begins }
    }

    /// Number of bottom points.
    pub fn p(&self) -> usize {
        self.p
    }

    /// Number of top points.
    pub fn q(&self) -> usize {
        self.q
    }

    /// Partner of a point.
    pub fn partner(&self, i: usize) -> usize {
        self.sigma[i]
    }

    /// Whether a point is a beginning point.
    pub fn is_begin(&self, i: usize) -> bool {
        self.begins[i]
    }

    /// Pairing table.
    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    /// Beginning-point flags.
    pub fn begins(&self) -> &[bool] {
        &self.begins
    }

    /// Source word read along the bottom.
    pub fn source(&self) -> Word {
        (0..self.p).map(|i| if self.begins[i] { Sign::Minus } else { Sign::Plus }).collect()
    }

    /// Target word read along the top.
    pub fn target(&self) -> Word {
        (self.p..self.p + self.q).map(|i| if self.begins[i] { Sign::Plus } else { Sign::Minus }).collect()
    }

    /// Components as `(begin, end)` point pairs, ordered by minimal point.
    pub fn components(&self) -> Vec<(usize, usize)> {
        (0..self.p + self.q)
            .filter(|&i| i < self.sigma[i])
            .map(|i| if self.begins[i] { (i, self.sigma[i]) } else { (self.sigma[i], i) })
            .collect()
    }

    /// Number of components.
    pub fn num_components(&self) -> usize {
        (self.p + self.q) / 2
    }

    /// Component index of every point.
    pub fn component_of_points(&self) -> Vec<usize> {
        let mut out = vec![0; self.p + self.q];
        for (c, (b, e)) in self.components().into_iter().enumerate() {
            out[b] = c;
            out[e] = c;
        }
        out
    }

    /// Forgets orientations: the underlying pairing as sorted pairs.
    pub fn unoriented_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.p + self.q).filter(|&i| i < self.sigma[i]).map(|i| (i, self.sigma[i])).collect()
    }

    /// Composes `self` (applied first) with `next`, which must start where `self` ends.
    pub fn then(&self, next: &OrientedBrauer) -> Result<Composition> {
        if self.target() != next.source() {
            return Err(Error::BoundaryMismatch(format!(
                "target {} does not match source {}",
                format_word(&self.target()),
                format_word(&next.source())
            )));
        }
        let (p, m, r) = (self.p, self.q, next.q);
        let ca = self.component_of_points();
        let cb = next.component_of_points();
        // A walk state: (factor, begin point in that factor).
        let step = |factor: u8, begin: usize| -> (Piece, Option<(u8, usize)>, Option<usize>) {
            if factor == 0 {
                let end = self.sigma[begin];
                let piece = Piece { factor: 0, comp: ca[begin] };
                if end >= p {
                    let mid = end - p;
                    (piece, Some((1, mid)), Some(mid))
                } else {
                    (piece, None, None)
                }
            } else {
                let end = next.sigma[begin];
                let piece = Piece { factor: 1, comp: cb[begin] };
                if end < m {
                    (piece, Some((0, p + end)), Some(end))
                } else {
                    (piece, None, None)
                }
            }
        };
        let n_out = p + r;
        let mut sigma = vec![usize::MAX; n_out];
        let mut begins = vec![false; n_out];
        let mut seen_mid = vec![false; m];
        let mut walks: Vec<(usize, Vec<Piece>)> = Vec::new();
        let out_index = |factor: u8, point: usize| if factor == 0 { point } else { p + point - m };
        let starts: Vec<(u8, usize)> = (0..p)
            .filter(|&i| self.begins[i])
            .map(|i| (0u8, i))
            .chain((m..m + r).filter(|&i| next.begins[i]).map(|i| (1u8, i)))
            .collect();
        for (f0, b0) in starts {
            let mut pieces = Vec::new();
            let (mut f, mut b) = (f0, b0);
            loop {
                let (piece, nxt, mid) = step(f, b);
                pieces.push(piece);
                if let Some(mp) = mid {
                    seen_mid[mp] = true;
                }
                match nxt {
                    Some((nf, nb)) => {
                        f = nf;
                        b = nb;
                    }
                    None => {
                        let end_point = if f == 0 { self.sigma[b] } else { next.sigma[b] };
                        let s = out_index(f0, b0);
                        let e = out_index(f, end_point);
                        sigma[s] = e;
                        sigma[e] = s;
                        begins[s] = true;
                        walks.push((s.min(e), pieces));
                        break;
                    }
                }
            }
        }
        let diagram = OrientedBrauer { p, q: r, sigma, begins };
        walks.sort();
        let segment_pieces = walks.into_iter().map(|(_, w)| w).collect();
        let mut circles = Vec::new();
        let mut circle_pieces = Vec::new();
        for m0 in 0..m {
            if seen_mid[m0] {
                continue;
            }
            let (f0, b0) = if self.begins[p + m0] { (0u8, p + m0) } else { (1u8, m0) };
            let (mut f, mut b) = (f0, b0);
            let mut mids = vec![m0];
            let mut pieces = Vec::new();
            seen_mid[m0] = true;
            loop {
                let (piece, nxt, mid) = step(f, b);
                pieces.push(piece);
                let (nf, nb) = nxt.expect("middle walk stays in the middle");
                let mp = mid.unwrap();
                if (nf, nb) == (f0, b0) {
                    break;
                }
                seen_mid[mp] = true;
                mids.push(mp);
                f = nf;
                b = nb;
            }
            mids.sort();
            circles.push(mids);
            circle_pieces.push(pieces);
        }
        Ok(Composition { diagram, circles, segment_pieces, circle_pieces })
    }

    /// Horizontal juxtaposition with `other` to the right.
    ///
    /// Returns the product and, for each factor, the new index of each of its components.
    pub fn tensor_with_maps(&self, other: &OrientedBrauer) -> (OrientedBrauer, Vec<usize>, Vec<usize>) {
        let (p1, q1, p2, q2) = (self.p, self.q, other.p, other.q);
        let p = p1 + p2;
        let map_a = |i: usize| if i < p1 { i } else { p + (i - p1) };
        let map_b = |i: usize| if i < p2 { p1 + i } else { p + q1 + (i - p2) };
        let n = p + q1 + q2;
        let mut sigma = vec![0; n];
        let mut begins = vec![false; n];
        for i in 0..p1 + q1 {
            sigma[map_a(i)] = map_a(self.sigma[i]);
            begins[map_a(i)] = self.begins[i];
        }
        for i in 0..p2 + q2 {
            sigma[map_b(i)] = map_b(other.sigma[i]);
            begins[map_b(i)] = other.begins[i];
        }
        let out = OrientedBrauer { p, q: q1 + q2, sigma, begins };
        let cmap = out.component_of_points();
        let ma = self.components().iter().map(|&(b, _)| cmap[map_a(b)]).collect();
        let mb = other.components().iter().map(|&(b, _)| cmap[map_b(b)]).collect();
        (out, ma, mb)
    }

    /// Horizontal juxtaposition with `other` to the right.
    pub fn tensor(&self, other: &OrientedBrauer) -> OrientedBrauer {
        self.tensor_with_maps(other).0
    }

    /// Reverses the orientation of one component.
    pub fn co(&self, comp: usize) -> Result<OrientedBrauer> {
        let comps = self.components();
        let &(b, e) = comps
            .get(comp)
            .ok_or_else(|| Error::InvalidArgument(format!("no component {comp}")))?;
        let mut out = self.clone();
        out.begins[b] = false;
        out.begins[e] = true;
        Ok(out)
    }

    /// Doubles the listed components.
    ///
    /// Returns the new diagram and, for every old component, the new indices
    /// of its copies: `[copy0, copy1]` for a doubled component, where copy
    /// `k` starts at the `k`-th lift of the beginning point, and `[new, usize::MAX]` otherwise.
    pub fn dbl(&self, doubled: &[usize]) -> Result<(OrientedBrauer, Vec<[usize; 2]>)> {
        let comps = self.components();
        if let Some(&c) = doubled.iter().find(|&&c| c >= comps.len()) {
            return Err(Error::InvalidArgument(format!("no component {c}")));
        }
        let cop = self.component_of_points();
        let n = self.p + self.q;
        let is_d = |i: usize| doubled.contains(&cop[i]);
        let mut lift = vec![[usize::MAX; 2]; n];
        let mut next = 0;
        let mut new_p = 0;
        for (i, l) in lift.iter_mut().enumerate() {
            l[0] = next;
            next += 1;
            if is_d(i) {
                l[1] = next;
                next += 1;
            }
            if i + 1 == self.p {
                new_p = next;
            }
        }
        if self.p == 0 {
            new_p = 0;
        }
        let total = next;
        let mut sigma = vec![usize::MAX; total];
        let mut begins = vec![false; total];
        for &(b, e) in &comps {
            if is_d(b) {
                let same_side = (b < self.p) == (e < self.p);
                let pairs = if same_side {
                    [(lift[b][0], lift[e][1]), (lift[b][1], lift[e][0])]
                } else {
                    [(lift[b][0], lift[e][0]), (lift[b][1], lift[e][1])]
                };
                for (x, y) in pairs {
                    sigma[x] = y;
                    sigma[y] = x;
                    begins[x] = true;
                }
            } else {
                let (x, y) = (lift[b][0], lift[e][0]);
                sigma[x] = y;
                sigma[y] = x;
                begins[x] = true;
            }
        }
        let out = OrientedBrauer { p: new_p, q: total - new_p, sigma, begins };
        let ncop = out.component_of_points();
        let maps = comps
            .iter()
            .enumerate()
            .map(|(c, &(b, _))| {
                if doubled.contains(&c) {
                    [ncop[lift[b][0]], ncop[lift[b][1]]]
                } else {
                    [ncop[lift[b][0]], usize::MAX]
                }
            })
            .collect();
        Ok((out, maps))
    }

    /// Canonical text encoding, e.g. `3>1:(1,1'),(2,3)` with primes on top points
    /// and the beginning point of each pair listed first.
    pub fn encode(&self) -> String {
        let name = |i: usize| if i < self.p { format!("{}", i + 1) } else { format!("{}'", i - self.p + 1) };
        let parts: Vec<String> = self
            .components()
            .iter()
            .map(|&(b, e)| format!("({},{})", name(b), name(e)))
            .collect();
        format!("{}>{}:{}", self.p, self.q, parts.join(","))
    }
}

impl fmt::Display for OrientedBrauer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Sign::{Minus as M, Plus as P};

    #[test]
    fn cup_words() {
        let c = OrientedBrauer::cup(P);
        assert!(c.source().is_empty());
        assert_eq!(c.target(), vec![P, M]);
        assert_eq!(OrientedBrauer::cap(M).source(), vec![M, P]);
        assert_eq!(OrientedBrauer::identity(&[M, P]).target(), vec![M, P]);
    }

    #[test]
    fn cap_after_cup_is_one_circle() {
        let c = OrientedBrauer::cup(P).then(&OrientedBrauer::cap(P)).unwrap();
        assert_eq!(c.diagram, OrientedBrauer::empty());
        assert_eq!(c.circles, vec![vec![0, 1]]);
        assert_eq!(c.circle_pieces.len(), 1);
    }

    #[test]
    fn mismatched_words_are_rejected() {
        assert!(OrientedBrauer::cup(P).then(&OrientedBrauer::cap(M)).is_err());
    }

    #[test]
    fn dbl_word_duplicates_in_place() {
        assert_eq!(dbl_word(&[P, M], &[0]), vec![P, P, M]);
    }

    #[test]
    fn dbl_identity_strand() {
        let (d, maps) = OrientedBrauer::identity(&[P]).dbl(&[0]).unwrap();
        assert_eq!(d, OrientedBrauer::identity(&[P, P]));
        assert_eq!(maps.len(), 1);
    }

    #[test]
    fn tensor_of_cups() {
        let t = OrientedBrauer::cup(P).tensor(&OrientedBrauer::cup(M));
        assert!(t.source().is_empty());
        assert_eq!(t.target(), vec![P, M, M, P]);
    }
}
