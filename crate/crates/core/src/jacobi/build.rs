//! Assembly of new diagrams from pieces of existing ones.
//!
//! Legs of the source diagrams are either kept (with a new anchor and a sort
//! key that fixes their order along that anchor) or glued pairwise. Gluing
//! two legs fuses the dashed edges ending at them; chains of glued legs are
//! followed to the end and closed chains become dashed loops.

use std::collections::HashMap;

use super::diagram::{Anchor, Diagram};

/// What happens to a leg when a diagram is imported into a [`Builder`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LegFate {
    /// Keep the leg on this anchor; legs on one anchor are ordered by key.
    Keep(Anchor, u64),
    /// Glue the leg to the other leg carrying the same tag.
    Glue(u64),
    /// The leg is not imported (only valid when its whole component is skipped).
    Skip,
}

#[derive(Debug, Clone, Copy)]
enum Slot {
    Leg(Anchor, u64),
    Tri(usize, usize),
    Glued,
}

/// Incremental diagram assembler.
#[derive(Debug, Default)]
pub struct Builder {
    kinds: Vec<Slot>,
    partner: Vec<usize>,
    glue_tags: HashMap<u64, Vec<usize>>,
    tris: usize,
    loops: u32,
}

impl Builder {
    /// An empty builder.
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds dashed loops.
    pub fn add_loops(&mut self, k: u32) {
        self.loops += k;
    }

    /// Imports `d`, deciding the fate of every leg with `fate`. Legs marked
    /// [`LegFate::Skip`] and the vertices listed as skipped are left out;
    /// `keep_end` decides per end whether it belongs to the imported part.
    pub fn add_filtered<F, K>(&mut self, d: &Diagram, mut fate: F, keep_end: K)
    where
        F: FnMut(usize) -> LegFate,
        K: Fn(usize) -> bool,
    {
        let base = self.kinds.len();
        let n = d.partner.len();
        let l = d.legs.len();
        let mut local = vec![usize::MAX; n];
        let mut next = base;
        let mut fates = Vec::with_capacity(l);
        for (i, slot) in local.iter_mut().enumerate().take(l) {
            let f = if keep_end(i) { fate(i) } else { LegFate::Skip };
            fates.push(f);
            if f != LegFate::Skip {
                *slot = next;
                next += 1;
            }
        }
        for v in 0..d.num_tri() {
            if keep_end(l + 3 * v) {
                for s in 0..3 {
                    local[l + 3 * v + s] = next;
                    next += 1;
                }
            }
        }
        self.kinds.resize(next, Slot::Glued);
        self.partner.resize(next, usize::MAX);
        for (i, f) in fates.iter().enumerate() {
            match *f {
                LegFate::Keep(a, key) => self.kinds[local[i]] = Slot::Leg(a, key),
                LegFate::Glue(tag) => {
                    self.kinds[local[i]] = Slot::Glued;
                    self.glue_tags.entry(tag).or_default().push(local[i]);
                }
                LegFate::Skip => {}
            }
        }
        for v in 0..d.num_tri() {
            if local[l + 3 * v] != usize::MAX {
                for s in 0..3 {
                    self.kinds[local[l + 3 * v + s]] = Slot::Tri(self.tris, s);
                }
                self.tris += 1;
            }
        }
        for e in 0..n {
            if local[e] != usize::MAX {
                self.partner[local[e]] = local[d.mate(e)];
            }
        }
    }

    /// Imports all of `d`.
    pub fn add<F>(&mut self, d: &Diagram, fate: F)
    where
        F: FnMut(usize) -> LegFate,
    {
        self.add_filtered(d, fate, |_| true);
        self.loops += d.loops;
    }

    /// Resolves gluings and returns the assembled diagram (not canonicalized).
    ///
    /// Panics if a glue tag does not occur exactly twice.
    pub fn finish(self) -> Diagram {
        let n = self.kinds.len();
        let mut glue = vec![usize::MAX; n];
        for (tag, ends) in &self.glue_tags {
            assert!(ends.len() == 2, "glue tag {tag} used {} times", ends.len());
            glue[ends[0]] = ends[1];
            glue[ends[1]] = ends[0];
        }
        let mut legs: Vec<(Anchor, u64, usize)> = Vec::new();
        let mut tri_ends: Vec<[usize; 3]> = vec![[0; 3]; self.tris];
        for e in 0..n {
            match self.kinds[e] {
                Slot::Leg(a, k) => legs.push((a, k, e)),
                Slot::Tri(v, s) => tri_ends[v][s] = e,
                Slot::Glued => {}
            }
        }
        legs.sort_by_key(|&(a, k, _)| (a, k));
        let nl = legs.len();
        let mut newpos = vec![usize::MAX; n];
        for (i, &(_, _, e)) in legs.iter().enumerate() {
            newpos[e] = i;
        }
        for (v, t) in tri_ends.iter().enumerate() {
            for s in 0..3 {
                newpos[t[s]] = nl + 3 * v + s;
            }
        }
        let total = nl + 3 * self.tris;
        let mut partner = vec![0u32; total];
        let mut used = vec![false; n];
        for e in 0..n {
            if matches!(self.kinds[e], Slot::Glued) {
                continue;
            }
            let mut x = self.partner[e];
            used[e] = true;
            while matches!(self.kinds[x], Slot::Glued) {
                used[x] = true;
                let y = glue[x];
                used[y] = true;
                x = self.partner[y];
            }
            partner[newpos[e]] = newpos[x] as u32;
        }
        let mut loops = self.loops;
        for e in 0..n {
            if used[e] {
                continue;
            }
            loops += 1;
            let mut x = e;
            loop {
                used[x] = true;
                let y = self.partner[x];
                used[y] = true;
                x = glue[y];
                if used[x] {
                    break;
                }
            }
        }
        Diagram { legs: legs.into_iter().map(|(a, _, _)| a).collect(), partner, loops }
    }
}

/// The fate that keeps every leg on its own anchor, in list order.
pub fn keep_same(d: &Diagram) -> impl FnMut(usize) -> LegFate + '_ {
    move |i| LegFate::Keep(d.legs[i], i as u64)
}
