//! Jacobi diagrams as flat half-edge structures and their canonical form.
//!
//! A diagram has `L` univalent legs and `T` trivalent vertices. Its ends are
//! numbered `0..L` for legs and `L + 3v + s` for slot `s` of vertex `v`; the
//! slot order of a vertex is its cyclic orientation. Dashed edges are the
//! orbits of the `partner` involution on ends. Closed dashed loops without
//! vertices are counted separately.
//!
//! Every leg carries an [`Anchor`]. Legs on the same segment or circle appear
//! in the `legs` list in their order along that component (linear for a
//! segment, cyclic for a circle). Legs on a color are unordered.

use std::collections::VecDeque;

/// Where a leg is attached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Anchor {
    /// A skeleton strand, by component index.
    Seg(u16),
    /// A circle of the context.
    Circ(u16),
    /// A free color.
    Color(u16),
}

impl Anchor {
    /// Whether the leg is a free color leg.
    pub fn is_color(self) -> bool {
        matches!(self, Anchor::Color(_))
    }
}

/// A Jacobi diagram.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram {
    pub legs: Vec<Anchor>,
    pub partner: Vec<u32>,
    pub loops: u32,
}

/// One end of a dashed edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum End {
    Leg(usize),
    Slot(usize, usize),
}

impl Diagram {
    /// The empty diagram.
    pub fn empty() -> Self {
        Diagram { legs: vec![], partner: vec![], loops: 0 }
    }

    /// `k` dashed loops.
    pub fn loops(k: u32) -> Self {
        Diagram { legs: vec![], partner: vec![], loops: k }
    }

    /// A strut between two anchors.
    pub fn strut(a: Anchor, b: Anchor) -> Self {
        Diagram { legs: vec![a, b], partner: vec![1, 0], loops: 0 }
    }

    /// Number of legs.
    pub fn num_legs(&self) -> usize {
        self.legs.len()
    }

    /// Number of trivalent vertices.
    pub fn num_tri(&self) -> usize {
        (self.partner.len() - self.legs.len()) / 3
    }

    /// Half the number of vertices.
    pub fn degree(&self) -> usize {
        (self.num_tri() + self.num_legs()) / 2
    }

    /// Decodes an end index.
    pub fn end(&self, e: usize) -> End {
        let l = self.legs.len();
        if e < l {
            End::Leg(e)
        } else {
            End::Slot((e - l) / 3, (e - l) % 3)
        }
    }

    /// End index of a vertex slot.
    pub fn slot(&self, v: usize, s: usize) -> usize {
        self.legs.len() + 3 * v + s
    }

    /// Partner of an end.
    pub fn mate(&self, e: usize) -> usize {
        self.partner[e] as usize
    }

    /// Connected components of the dashed graph, as a component id per end.
    /// Component ids are numbered by minimal end.
    pub fn component_ids(&self) -> (Vec<usize>, usize) {
        let n = self.partner.len();
        let l = self.legs.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let unite = |p: &mut Vec<usize>, a: usize, b: usize| {
            let (ra, rb) = (find(p, a), find(p, b));
            if ra != rb {
                p[ra.max(rb)] = ra.min(rb);
            }
        };
        for e in 0..n {
            unite(&mut parent, e, self.partner[e] as usize);
        }
        for v in 0..self.num_tri() {
            unite(&mut parent, l + 3 * v, l + 3 * v + 1);
            unite(&mut parent, l + 3 * v, l + 3 * v + 2);
        }
        let mut ids = vec![usize::MAX; n];
        let mut count = 0;
        let mut root_id = vec![usize::MAX; n];
        for e in 0..n {
            let r = find(&mut parent, e);
            if root_id[r] == usize::MAX {
                root_id[r] = count;
                count += 1;
            }
            ids[e] = root_id[r];
        }
        (ids, count)
    }

    /// Whether some vertex has two slots joined to each other.
    pub fn has_tadpole(&self) -> bool {
        (0..self.num_tri()).any(|v| {
            let base = self.slot(v, 0);
            (0..3).any(|s| {
                let m = self.mate(base + s);
                m >= base && m < base + 3 && m != base + s
            })
        })
    }

    /// Builds a diagram from an arbitrary list of legs and a pairing, where
    /// tri vertices are given as triples of end ids in cyclic order.
    ///
    /// `ends` are abstract ids `0..2E`, `pairs` lists the dashed edges,
    /// `leg_ends[i]` is the abstract end of leg `i` and `tris[v]` the abstract
    /// ends of vertex `v`.
    pub fn assemble(legs: Vec<Anchor>, leg_ends: &[usize], tris: &[[usize; 3]], pairs: &[(usize, usize)], loops: u32) -> Diagram {
        let total = legs.len() + 3 * tris.len();
        let n_abs = pairs.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0);
        let mut pos = vec![usize::MAX; n_abs];
        for (i, &e) in leg_ends.iter().enumerate() {
            pos[e] = i;
        }
        for (v, t) in tris.iter().enumerate() {
            for s in 0..3 {
                pos[t[s]] = legs.len() + 3 * v + s;
            }
        }
        let mut partner = vec![0u32; total];
        for &(a, b) in pairs {
            partner[pos[a]] = pos[b] as u32;
            partner[pos[b]] = pos[a] as u32;
        }
        Diagram { legs, partner, loops }
    }

    /// Deterministic text encoding: `X^k|anchors|pairs`, where anchors are
    /// `s<i>` (strand), `o<i>` (circle) or `c<i>` (color), and each dashed
    /// edge is listed once as `a-b` over end indices.
    pub fn encode(&self) -> String {
        let anchors: Vec<String> = self
            .legs
            .iter()
            .map(|a| match a {
                Anchor::Seg(i) => format!("s{i}"),
                Anchor::Circ(i) => format!("o{i}"),
                Anchor::Color(i) => format!("c{i}"),
            })
            .collect();
        let pairs: Vec<String> = (0..self.partner.len())
            .filter(|&e| e < self.partner[e] as usize)
            .map(|e| format!("{}-{}", e, self.partner[e]))
            .collect();
        format!("X^{}|{}|{}", self.loops, anchors.join(","), pairs.join(","))
    }
}

/// Labeling produced by one traversal.
struct Labels {
    leg_new: Vec<usize>,
    tri_new: Vec<usize>,
    tri_rot: Vec<usize>,
    color_order: Vec<usize>,
    tri_count: usize,
}

impl Labels {
    fn new(d: &Diagram) -> Self {
        Labels {
            leg_new: vec![usize::MAX; d.legs.len()],
            tri_new: vec![usize::MAX; d.num_tri()],
            tri_rot: vec![0; d.num_tri()],
            color_order: Vec::new(),
            tri_count: 0,
        }
    }

    fn arrive(&mut self, d: &Diagram, e: usize, queue: &mut VecDeque<usize>) {
        match d.end(e) {
            End::Leg(i) => {
                if d.legs[i].is_color() && self.leg_new[i] == usize::MAX {
                    self.leg_new[i] = usize::MAX - 1;
                    self.color_order.push(i);
                }
            }
            End::Slot(v, s) => {
                if self.tri_new[v] == usize::MAX {
                    self.tri_new[v] = self.tri_count;
                    self.tri_count += 1;
                    self.tri_rot[v] = s;
                    queue.push_back(d.mate(d.slot(v, (s + 1) % 3)));
                    queue.push_back(d.mate(d.slot(v, (s + 2) % 3)));
                }
            }
        }
    }

    fn run(&mut self, d: &Diagram, mut queue: VecDeque<usize>) {
        while let Some(e) = queue.pop_front() {
            self.arrive(d, e, &mut queue);
        }
    }
}

/// Canonical traversal of a free component from a start end, returning the
/// local diagram (color legs in discovery order) and the labels.
fn free_component_form(d: &Diagram, start: usize) -> (Diagram, Labels) {
    let mut lab = Labels::new(d);
    let mut queue = VecDeque::new();
    match d.end(start) {
        End::Leg(i) => {
            lab.leg_new[i] = usize::MAX - 1;
            lab.color_order.push(i);
            queue.push_back(d.mate(start));
        }
        End::Slot(v, s) => {
            lab.tri_new[v] = 0;
            lab.tri_count = 1;
            lab.tri_rot[v] = s;
            for k in 0..3 {
                queue.push_back(d.mate(d.slot(v, (s + k) % 3)));
            }
        }
    }
    lab.run(d, queue);
    let nl = lab.color_order.len();
    for (r, &i) in lab.color_order.iter().enumerate() {
        lab.leg_new[i] = r;
    }
    let map = |e: usize| -> usize {
        match d.end(e) {
            End::Leg(i) => lab.leg_new[i],
            End::Slot(v, s) => nl + 3 * lab.tri_new[v] + (s + 3 - lab.tri_rot[v]) % 3,
        }
    };
    let total = nl + 3 * lab.tri_count;
    let mut partner = vec![0u32; total];
    let mut legs = Vec::with_capacity(nl);
    for &i in &lab.color_order {
        legs.push(d.legs[i]);
    }
    for e in 0..d.partner.len() {
        let touched = match d.end(e) {
            End::Leg(i) => lab.leg_new[i] != usize::MAX,
            End::Slot(v, _) => lab.tri_new[v] != usize::MAX,
        };
        if touched {
            partner[map(e)] = map(d.mate(e)) as u32;
        }
    }
    (Diagram { legs, partner, loops: 0 }, lab)
}

/// Returns the canonical representative of the isomorphism class of `d`.
///
/// Isomorphisms fix strands, circles and colors, preserve the linear order of
/// legs on strands, the cyclic order on circles and the cyclic orientation of
/// every vertex; they may permute legs of the same color.
pub fn canonical(d: &Diagram) -> Diagram {
    let l = d.legs.len();
    let (comp, ncomp) = d.component_ids();
    // Anchored legs grouped by anchor in list order.
    let mut anchored: Vec<(Anchor, Vec<usize>)> = Vec::new();
    for (i, &a) in d.legs.iter().enumerate() {
        if a.is_color() {
            continue;
        }
        match anchored.iter_mut().find(|(b, _)| *b == a) {
            Some((_, v)) => v.push(i),
            None => anchored.push((a, vec![i])),
        }
    }
    anchored.sort_by_key(|(a, _)| *a);
    let mut attached = vec![false; ncomp];
    for (_, ls) in &anchored {
        for &i in ls {
            attached[comp[i]] = true;
        }
    }
    // Free components: canonical local forms, sorted.
    let mut free: Vec<(Diagram, Labels)> = Vec::new();
    let mut first_end = vec![usize::MAX; ncomp];
    for e in 0..d.partner.len() {
        if first_end[comp[e]] == usize::MAX {
            first_end[comp[e]] = e;
        }
    }
    for c in 0..ncomp {
        if attached[c] {
            continue;
        }
        let ends: Vec<usize> = (0..d.partner.len()).filter(|&e| comp[e] == c).collect();
        let min_color = ends
            .iter()
            .filter(|&&e| e < l)
            .map(|&e| d.legs[e])
            .min();
        let starts: Vec<usize> = match min_color {
            Some(mc) => ends.iter().copied().filter(|&e| e < l && d.legs[e] == mc).collect(),
            None => ends.clone(),
        };
        let best = starts
            .into_iter()
            .map(|s| free_component_form(d, s))
            .min_by(|a, b| a.0.cmp(&b.0))
            .expect("component has an end");
        free.push(best);
    }
    free.sort_by(|a, b| a.0.cmp(&b.0));

    let rotation_counts: Vec<usize> = anchored
        .iter()
        .map(|(a, ls)| if matches!(a, Anchor::Circ(_)) { ls.len().max(1) } else { 1 })
        .collect();
    let mut rot = vec![0usize; anchored.len()];
    let mut best: Option<Diagram> = None;
    loop {
        let cand = build_with_rotation(d, &anchored, &rot, &comp, &free);
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand);
        }
        let mut k = 0;
        while k < rot.len() {
            rot[k] += 1;
            if rot[k] < rotation_counts[k] {
                break;
            }
            rot[k] = 0;
            k += 1;
        }
        if k == rot.len() {
            break;
        }
    }
    best.expect("at least one rotation")
}

fn build_with_rotation(
    d: &Diagram,
    anchored: &[(Anchor, Vec<usize>)],
    rot: &[usize],
    comp: &[usize],
    free: &[(Diagram, Labels)],
) -> Diagram {
    let mut lab = Labels::new(d);
    let mut order: Vec<usize> = Vec::new();
    for ((_, ls), &r) in anchored.iter().zip(rot) {
        let k = ls.len();
        for j in 0..k {
            order.push(ls[(j + r) % k]);
        }
    }
    for (idx, &i) in order.iter().enumerate() {
        lab.leg_new[i] = idx;
    }
    let mut visited = vec![false; comp.iter().copied().max().map_or(0, |m| m + 1)];
    for &i in &order {
        if visited[comp[i]] {
            continue;
        }
        visited[comp[i]] = true;
        let mut q = VecDeque::new();
        q.push_back(d.mate(i));
        lab.run(d, q);
    }
    // Merge free components after the attached part.
    let mut color_legs: Vec<usize> = lab.color_order.clone();
    for (_, fl) in free {
        let base = lab.tri_count;
        for v in 0..d.num_tri() {
            if fl.tri_new[v] != usize::MAX {
                lab.tri_new[v] = base + fl.tri_new[v];
                lab.tri_rot[v] = fl.tri_rot[v];
            }
        }
        lab.tri_count += fl.tri_count;
        color_legs.extend(fl.color_order.iter().copied());
    }
    // Color legs sorted by color, stable in discovery rank.
    let mut ranked: Vec<(Anchor, usize, usize)> = color_legs.iter().enumerate().map(|(r, &i)| (d.legs[i], r, i)).collect();
    ranked.sort();
    let na = order.len();
    for (k, &(_, _, i)) in ranked.iter().enumerate() {
        lab.leg_new[i] = na + k;
    }
    let nl = d.legs.len();
    let map = |e: usize| -> usize {
        if e < nl {
            lab.leg_new[e]
        } else {
            let v = (e - nl) / 3;
            let s = (e - nl) % 3;
            nl + 3 * lab.tri_new[v] + (s + 3 - lab.tri_rot[v]) % 3
        }
    };
    let mut legs = Vec::with_capacity(nl);
    for &i in &order {
        legs.push(d.legs[i]);
    }
    for &(a, _, _) in &ranked {
        legs.push(a);
    }
    let mut partner = vec![0u32; d.partner.len()];
    for e in 0..d.partner.len() {
        partner[map(e)] = map(d.mate(e)) as u32;
    }
    Diagram { legs, partner, loops: d.loops }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theta(rot: usize) -> Diagram {
        // Two vertices joined by three edges; slot s of vertex 0 meets slot
        // s + rot of vertex 1.
        let mut partner = vec![0u32; 6];
        for s in 0..3 {
            let t = 3 + (s + rot) % 3;
            partner[s] = t as u32;
            partner[t] = s as u32;
        }
        Diagram { legs: vec![], partner, loops: 0 }
    }

    #[test]
    fn theta_relabelings_agree() {
        assert_eq!(canonical(&theta(0)), canonical(&theta(1)));
        assert_eq!(canonical(&theta(0)), canonical(&theta(2)));
        let flipped = super::super::relations::flip_vertex(&theta(0), 0);
        assert_ne!(canonical(&theta(0)), canonical(&flipped));
    }

    #[test]
    fn star_and_its_mirror_differ() {
        let star = |o: [Anchor; 3]| Diagram {
            legs: o.to_vec(),
            partner: vec![3, 4, 5, 0, 1, 2],
            loops: 0,
        };
        let a = star([Anchor::Color(0), Anchor::Color(1), Anchor::Color(2)]);
        let b = star([Anchor::Color(0), Anchor::Color(2), Anchor::Color(1)]);
        assert_ne!(canonical(&a), canonical(&b));
        let c = star([Anchor::Color(1), Anchor::Color(2), Anchor::Color(0)]);
        assert_eq!(canonical(&a), canonical(&c));
    }

    #[test]
    fn loops_survive() {
        let mut d = theta(0);
        d.loops = 3;
        assert_eq!(canonical(&d).loops, 3);
    }

    #[test]
    fn circle_rotation_is_an_isomorphism() {
        // Chords (0,2) and (1,3) on a circle versus (0,1),(2,3).
        let cross = Diagram { legs: vec![Anchor::Circ(0); 4], partner: vec![2, 3, 0, 1], loops: 0 };
        let para1 = Diagram { legs: vec![Anchor::Circ(0); 4], partner: vec![1, 0, 3, 2], loops: 0 };
        let para2 = Diagram { legs: vec![Anchor::Circ(0); 4], partner: vec![3, 2, 1, 0], loops: 0 };
        assert_eq!(canonical(&para1), canonical(&para2));
        assert_ne!(canonical(&cross), canonical(&para1));
    }
}
