//! Framed oriented tangles written as programs of elementary slices.
//!
//! A program starts from a source word and applies one generator per slice:
//! a crossing of two adjacent strands, a cup creating two adjacent strands,
//! or a cap closing two adjacent strands. Strands not touched by a slice pass
//! straight through. The framing is the blackboard framing of the word, so
//! kinks change it. Every intermediate word is read with the right-comb
//! parenthesization `(w1 (w2 (w3 ...)))`.
//!
//! Components are numbered with the open ones first, in the order of the
//! underlying oriented Brauer diagram, followed by the closed ones in the
//! order in which their closing cap occurs.

pub mod linking;
pub mod parse;

use crate::brauer::{format_word, OrientedBrauer, Sign, Word};
use crate::error::{Error, Result};

pub use linking::{linking, signature, LinkingData};
pub use parse::{parse, preset};

/// One elementary generator acting at a position of the current word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gen {
    /// Crossing of the strands at `pos` and `pos + 1`; `positive` is the
    /// crossing sign in the usual right-hand convention.
    Cross { pos: usize, positive: bool },
    /// A cup inserting the letters `first, first.flip()` at `pos`.
    Cup { pos: usize, first: Sign },
    /// A cap removing the letters `first, first.flip()` at `pos`.
    Cap { pos: usize, first: Sign },
}

impl Gen {
    /// Position of the leftmost strand the generator touches.
    pub fn pos(&self) -> usize {
        match *self {
            Gen::Cross { pos, .. } | Gen::Cup { pos, .. } | Gen::Cap { pos, .. } => pos,
        }
    }

    fn shifted(&self, k: usize) -> Gen {
        match *self {
            Gen::Cross { pos, positive } => Gen::Cross { pos: pos + k, positive },
            Gen::Cup { pos, first } => Gen::Cup { pos: pos + k, first },
            Gen::Cap { pos, first } => Gen::Cap { pos: pos + k, first },
        }
    }

    /// The word after applying the generator to `w`.
    pub fn apply(&self, w: &[Sign]) -> Result<Word> {
        let mut out = w.to_vec();
        match *self {
            Gen::Cross { pos, .. } => {
                if pos + 1 >= w.len() {
                    return Err(Error::BoundaryMismatch(format!(
                        "crossing at {pos} needs width at least {}, found {}",
                        pos + 2,
                        w.len()
                    )));
                }
                out.swap(pos, pos + 1);
            }
            Gen::Cup { pos, first } => {
                if pos > w.len() {
                    return Err(Error::BoundaryMismatch(format!("cup at {pos} beyond width {}", w.len())));
                }
                out.splice(pos..pos, [first, first.flip()]);
            }
            Gen::Cap { pos, first } => {
                if pos + 1 >= w.len() {
                    return Err(Error::BoundaryMismatch(format!(
                        "cap at {pos} needs width at least {}, found {}",
                        pos + 2,
                        w.len()
                    )));
                }
                if w[pos] != first || w[pos + 1] != first.flip() {
                    return Err(Error::BoundaryMismatch(format!(
                        "cap {} does not match letters {} at {pos}",
                        format_word(&[first, first.flip()]),
                        format_word(&w[pos..pos + 2])
                    )));
                }
                out.drain(pos..pos + 2);
            }
        }
        Ok(out)
    }

    /// The oriented Brauer diagram of the slice on source word `w`.
    pub fn brauer(&self, w: &[Sign]) -> Result<OrientedBrauer> {
        self.apply(w)?;
        let (core, left, right) = match *self {
            Gen::Cross { pos, .. } => (OrientedBrauer::swap([w[pos], w[pos + 1]]), &w[..pos], &w[pos + 2..]),
            Gen::Cup { pos, first } => (OrientedBrauer::cup(first), &w[..pos], &w[pos..]),
            Gen::Cap { pos, first } => (OrientedBrauer::cap(first), &w[..pos], &w[pos + 2..]),
        };
        Ok(OrientedBrauer::identity(left).tensor(&core).tensor(&OrientedBrauer::identity(right)))
    }
}

/// A framed oriented tangle as a validated sequence of slices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TangleProgram {
    gens: Vec<Gen>,
    words: Vec<Word>,
}

/// Component labels of every strand at every level of a program.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    /// `labels[l][p]` is the component through position `p` of word `l`.
    pub labels: Vec<Vec<usize>>,
    /// Number of components with boundary points.
    pub open: usize,
    /// Number of closed components.
    pub closed: usize,
}

impl Components {
    /// Total number of components.
    pub fn len(&self) -> usize {
        self.open + self.closed
    }

    /// Whether there are no components.
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl TangleProgram {
    /// Validates a program: every generator must fit the word it acts on.
    pub fn new(source: Word, gens: Vec<Gen>) -> Result<Self> {
        let mut words = vec![source];
        for g in &gens {
            let next = g.apply(words.last().expect("nonempty"))?;
            words.push(next);
        }
        Ok(TangleProgram { gens, words })
    }

    /// The identity program on a word.
    pub fn identity(w: &[Sign]) -> Self {
        TangleProgram { gens: vec![], words: vec![w.to_vec()] }
    }

    /// The empty link.
    pub fn empty() -> Self {
        Self::identity(&[])
    }

    /// Generators in order of application.
    pub fn gens(&self) -> &[Gen] {
        &self.gens
    }

    /// Words between slices: `words()[k]` is the source of slice `k`.
    pub fn words(&self) -> &[Word] {
        &self.words
    }

    /// Source word.
    pub fn source(&self) -> &[Sign] {
        &self.words[0]
    }

    /// Target word.
    pub fn target(&self) -> &[Sign] {
        self.words.last().expect("nonempty")
    }

    /// Whether both boundary words are empty.
    pub fn is_closed(&self) -> bool {
        self.source().is_empty() && self.target().is_empty()
    }

    /// Stacks `next` on top of `self`.
    pub fn then(&self, next: &TangleProgram) -> Result<TangleProgram> {
        if self.target() != next.source() {
            return Err(Error::BoundaryMismatch(format!(
                "target {} does not match source {}",
                format_word(self.target()),
                format_word(next.source())
            )));
        }
        let mut gens = self.gens.clone();
        gens.extend_from_slice(&next.gens);
        TangleProgram::new(self.source().to_vec(), gens)
    }

    /// Places `other` to the right of `self`: first the slices of `self`,
    /// then those of `other` shifted past the target of `self`.
    pub fn tensor(&self, other: &TangleProgram) -> TangleProgram {
        let mut source = self.source().to_vec();
        source.extend_from_slice(other.source());
        let shift = self.target().len();
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().map(|g| g.shifted(shift)));
        TangleProgram::new(source, gens).expect("tensor of valid programs is valid")
    }

    /// Shifts every generator `k` positions to the right and surrounds the
    /// program with identity strands.
    pub fn embedded(&self, left: &[Sign], right: &[Sign]) -> TangleProgram {
        TangleProgram::identity(left).tensor(self).tensor(&TangleProgram::identity(right))
    }

    /// Underlying oriented Brauer diagram and number of closed components.
    pub fn skeleton(&self) -> Result<(OrientedBrauer, usize)> {
        let mut acc = OrientedBrauer::identity(self.source());
        let mut circles = 0;
        for (g, w) in self.gens.iter().zip(&self.words) {
            let c = acc.then(&g.brauer(w)?)?;
            circles += c.circles.len();
            acc = c.diagram;
        }
        Ok((acc, circles))
    }

    /// Labels every strand at every level with its component.
    pub fn components(&self) -> Components {
        let mut offsets = Vec::with_capacity(self.words.len());
        let mut total = 0;
        for w in &self.words {
            offsets.push(total);
            total += w.len();
        }
        let mut uf = UnionFind::new(total);
        let mut closing: Vec<Option<usize>> = vec![None; total];
        for (k, g) in self.gens.iter().enumerate() {
            let (a, b) = (offsets[k], offsets[k + 1]);
            let w = &self.words[k];
            match *g {
                Gen::Cross { pos, .. } => {
                    for p in 0..w.len() {
                        let q = if p == pos {
                            pos + 1
                        } else if p == pos + 1 {
                            pos
                        } else {
                            p
                        };
                        uf.union(a + p, b + q);
                    }
                }
                Gen::Cup { pos, .. } => {
                    for p in 0..w.len() {
                        uf.union(a + p, b + if p < pos { p } else { p + 2 });
                    }
                    uf.union(b + pos, b + pos + 1);
                }
                Gen::Cap { pos, .. } => {
                    for p in 0..w.len() {
                        if p < pos {
                            uf.union(a + p, b + p);
                        } else if p > pos + 1 {
                            uf.union(a + p, b + p - 2);
                        }
                    }
                    uf.union(a + pos, a + pos + 1);
                    closing[a + pos] = Some(k);
                }
            }
        }
        // Open components are ordered by their minimal boundary point:
        // bottom positions first, then top positions.
        let last = self.words.len() - 1;
        let mut boundary: Vec<usize> = (0..self.words[0].len()).map(|p| offsets[0] + p).collect();
        boundary.extend((0..self.words[last].len()).map(|p| offsets[last] + p));
        let mut id = vec![usize::MAX; total];
        let mut open = 0;
        for &node in &boundary {
            let r = uf.find(node);
            if id[r] == usize::MAX {
                id[r] = open;
                open += 1;
            }
        }
        // A closed component is complete at its last cap.
        let mut last_cap = std::collections::BTreeMap::new();
        for (node, c) in closing.iter().enumerate() {
            if let Some(k) = *c {
                let r = uf.find(node);
                if id[r] == usize::MAX {
                    let e = last_cap.entry(r).or_insert(k);
                    *e = (*e).max(k);
                }
            }
        }
        let mut closers: Vec<(usize, usize)> = last_cap.into_iter().map(|(r, k)| (k, r)).collect();
        closers.sort();
        let mut closed = 0;
        for (_, r) in closers {
            id[r] = open + closed;
            closed += 1;
        }
        let labels = self
            .words
            .iter()
            .enumerate()
            .map(|(l, w)| (0..w.len()).map(|p| id[uf.find(offsets[l] + p)]).collect())
            .collect();
        Components { labels, open, closed }
    }

    /// Reverses the orientation of component `c`. Crossings between `c` and
    /// another component change sign; self-crossings of `c` keep theirs.
    pub fn co(&self, c: usize) -> Result<TangleProgram> {
        let comps = self.components();
        if c >= comps.len() {
            return Err(Error::InvalidArgument(format!("no component {c}")));
        }
        let source: Word = self.source().iter().zip(&comps.labels[0]).map(|(&s, &l)| if l == c { s.flip() } else { s }).collect();
        let gens = self
            .gens
            .iter()
            .enumerate()
            .map(|(k, g)| {
                let lab = &comps.labels[k];
                match *g {
                    Gen::Cross { pos, positive } => {
                        let mixed = (lab[pos] == c) != (lab[pos + 1] == c);
                        Gen::Cross { pos, positive: positive != mixed }
                    }
                    Gen::Cup { pos, first } => {
                        let on = comps.labels[k + 1][pos] == c;
                        Gen::Cup { pos, first: if on { first.flip() } else { first } }
                    }
                    Gen::Cap { pos, first } => Gen::Cap { pos, first: if lab[pos] == c { first.flip() } else { first } },
                }
            })
            .collect();
        TangleProgram::new(source, gens)
    }

    /// Replaces the open component `c` by two parallel copies along the
    /// blackboard framing. Crossings with `c` become two or four crossings
    /// of the same sign; cups and caps on `c` become nested pairs.
    pub fn dbl(&self, c: usize) -> Result<TangleProgram> {
        let comps = self.components();
        if c >= comps.open {
            return Err(Error::InvalidArgument(format!(
                "component {c} is not an open component; closed components cannot be doubled"
            )));
        }
        let newpos = |l: usize, p: usize| p + comps.labels[l][..p].iter().filter(|&&x| x == c).count();
        let source = crate::brauer::dbl_word(
            self.source(),
            &(0..self.source().len()).filter(|&p| comps.labels[0][p] == c).collect::<Vec<_>>(),
        );
        let mut gens = Vec::new();
        for (k, g) in self.gens.iter().enumerate() {
            let lab = &comps.labels[k];
            match *g {
                Gen::Cross { pos, positive } => {
                    let base = newpos(k, pos);
                    let seq: &[usize] = match (lab[pos] == c, lab[pos + 1] == c) {
                        (false, false) => &[0],
                        (true, false) => &[1, 0],
                        (false, true) => &[0, 1],
                        (true, true) => &[1, 0, 2, 1],
                    };
                    gens.extend(seq.iter().map(|&o| Gen::Cross { pos: base + o, positive }));
                }
                Gen::Cup { pos, first } => {
                    let base = newpos(k, pos);
                    gens.push(Gen::Cup { pos: base, first });
                    if comps.labels[k + 1][pos] == c {
                        gens.push(Gen::Cup { pos: base + 1, first });
                    }
                }
                Gen::Cap { pos, first } => {
                    let base = newpos(k, pos);
                    if lab[pos] == c {
                        gens.push(Gen::Cap { pos: base + 1, first });
                    }
                    gens.push(Gen::Cap { pos: base, first });
                }
            }
        }
        TangleProgram::new(source, gens)
    }

    /// Disjoint union of two closed programs.
    pub fn disjoint_union(&self, other: &TangleProgram) -> Result<TangleProgram> {
        if !self.is_closed() || !other.is_closed() {
            return Err(Error::InvalidArgument("disjoint union needs closed programs".into()));
        }
        Ok(self.tensor(other))
    }

    /// Kirby I: adjoins a `±1`-framed unknot to the right of a closed program.
    pub fn ki(&self, positive: bool) -> Result<TangleProgram> {
        self.disjoint_union(&parse::unknot(if positive { 1 } else { -1 }))
    }

    /// Renders the program in the line-oriented text format.
    pub fn to_dsl(&self) -> String {
        let mut lines = vec![format!("id:{}", format_word(self.source()))];
        for g in &self.gens {
            lines.push(match *g {
                Gen::Cross { pos, positive } => format!("x{}:{pos}", if positive { '+' } else { '-' }),
                Gen::Cup { pos, first } => format!("@{pos} cup:{}", format_word(&[first, first.flip()])),
                Gen::Cap { pos, first } => format!("@{pos} cap:{}", format_word(&[first, first.flip()])),
            });
        }
        lines.join("\n")
    }
}

/// The two links related by a handle slide, built from a tangle `s` from
/// `+-` to `+-` whose underlying Brauer diagram is the identity.
///
/// The first link closes each strand of `s` separately. The second doubles
/// the upward strand of `s`, closes the outer copy, and joins the inner copy
/// to the downward strand by a cup below and a cap above.
pub fn kii_pair(s: &TangleProgram) -> Result<(TangleProgram, TangleProgram)> {
    use Sign::{Minus, Plus};
    let pm = [Plus, Minus];
    if s.source() != pm || s.target() != pm {
        return Err(Error::InvalidArgument(format!(
            "handle-slide pattern needs boundary +- on both sides, found {} and {}",
            format_word(s.source()),
            format_word(s.target())
        )));
    }
    let (sk, _) = s.skeleton()?;
    if sk != OrientedBrauer::identity(&pm) {
        return Err(Error::InvalidArgument("handle-slide pattern needs the identity skeleton".into()));
    }
    let comps = s.components();
    let up = comps.labels[0][1];
    let cup_minus = |pos| Gen::Cup { pos, first: Minus };
    let cap_minus = |pos| Gen::Cap { pos, first: Minus };

    let mut g1 = vec![cup_minus(0), cup_minus(2)];
    g1.extend(s.gens().iter().map(|g| g.shifted(1)));
    g1.extend([cap_minus(0), cap_minus(0)]);
    let l1 = TangleProgram::new(vec![], g1)?;

    let ds = s.dbl(up)?;
    let mut g2 = vec![Gen::Cup { pos: 0, first: Plus }, cup_minus(2)];
    g2.extend_from_slice(ds.gens());
    g2.extend([Gen::Cap { pos: 0, first: Plus }, cap_minus(0)]);
    let l2 = TangleProgram::new(vec![], g2)?;
    Ok((l1, l2))
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Sign::{Minus, Plus};

    #[test]
    fn identity_skeleton_has_no_circles() {
        let t = TangleProgram::identity(&[Plus, Minus]);
        assert_eq!(t.skeleton().unwrap(), (OrientedBrauer::identity(&[Plus, Minus]), 0));
    }

    #[test]
    fn cup_then_cap_is_one_circle() {
        let t = TangleProgram::new(vec![], vec![Gen::Cup { pos: 0, first: Plus }, Gen::Cap { pos: 0, first: Plus }]).unwrap();
        assert_eq!(t.skeleton().unwrap(), (OrientedBrauer::empty(), 1));
        assert_eq!(t.components().closed, 1);
    }

    #[test]
    fn wrong_cap_letters_are_rejected() {
        let r = TangleProgram::new(vec![Plus, Plus], vec![Gen::Cap { pos: 0, first: Plus }]);
        assert!(matches!(r, Err(Error::BoundaryMismatch(_))));
    }

    #[test]
    fn co_twice_is_identity() {
        let h = parse::hopf(1, -2);
        for c in 0..2 {
            assert_eq!(h.co(c).unwrap().co(c).unwrap(), h);
        }
    }

    #[test]
    fn doubling_the_down_strand_of_the_identity() {
        let t = TangleProgram::identity(&[Plus, Minus]);
        let d = t.dbl(0).unwrap();
        assert_eq!(d.source(), [Plus, Plus, Minus]);
        assert_eq!(d.skeleton().unwrap().0, OrientedBrauer::identity(&[Plus, Plus, Minus]));
    }

    #[test]
    fn doubled_kink_keeps_the_parallel_skeleton() {
        let kink = TangleProgram::new(
            vec![Plus],
            vec![Gen::Cup { pos: 1, first: Minus }, Gen::Cross { pos: 0, positive: true }, Gen::Cap { pos: 0, first: Minus }],
        )
        .unwrap();
        assert_eq!(kink.skeleton().unwrap(), (OrientedBrauer::identity(&[Plus]), 0));
        let d = kink.dbl(0).unwrap();
        assert_eq!(d.skeleton().unwrap(), (OrientedBrauer::identity(&[Plus, Plus]), 0));
        assert_eq!(d.gens().iter().filter(|g| matches!(g, Gen::Cross { .. })).count(), 4);
    }

    #[test]
    fn kii_pair_on_the_identity_has_two_components_each() {
        let (l1, l2) = kii_pair(&TangleProgram::identity(&[Plus, Minus])).unwrap();
        for l in [&l1, &l2] {
            assert!(l.is_closed());
            assert_eq!(l.components().closed, 2);
            assert_eq!(l.skeleton().unwrap().0, OrientedBrauer::empty());
        }
    }

    #[test]
    fn kii_pattern_must_have_identity_skeleton() {
        let t = TangleProgram::new(vec![Plus, Minus], vec![Gen::Cap { pos: 0, first: Plus }, Gen::Cup { pos: 0, first: Plus }]).unwrap();
        assert!(kii_pair(&t).is_err());
    }
}
