//! Exhaustive enumeration of diagrams in small slots.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use super::diagram::{canonical, Anchor, Diagram};
use crate::error::{Error, Result};

/// Largest number of ends handled by perfect-matching enumeration.
pub const MAX_MATCHING_ENDS: usize = 14;

/// All ways of placing `n` legs on the given anchors, as leg lists grouped by anchor.
pub fn distributions(anchors: &[Anchor], n: usize) -> Vec<Vec<Anchor>> {
    fn rec(anchors: &[Anchor], n: usize, cur: &mut Vec<Anchor>, out: &mut Vec<Vec<Anchor>>) {
        if anchors.len() == 1 {
            let keep = cur.len();
            cur.extend(std::iter::repeat_n(anchors[0], n));
            out.push(cur.clone());
            cur.truncate(keep);
            return;
        }
        for k in 0..=n {
            let keep = cur.len();
            cur.extend(std::iter::repeat_n(anchors[0], k));
            rec(&anchors[1..], n - k, cur, out);
            cur.truncate(keep);
        }
    }
    let mut out = Vec::new();
    if anchors.is_empty() {
        if n == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(anchors, n, &mut Vec::new(), &mut out);
    out
}

/// Every diagram with the given leg list and `ntri` vertices, up to
/// isomorphism, tadpoles excluded.
pub fn all_matchings(legs: &[Anchor], ntri: usize) -> Result<Vec<Diagram>> {
    matchings_impl(legs, ntri, false)
}

fn matchings_impl(legs: &[Anchor], ntri: usize, keep_tadpoles: bool) -> Result<Vec<Diagram>> {
    let n = legs.len() + 3 * ntri;
    if n % 2 == 1 {
        return Ok(Vec::new());
    }
    if n > MAX_MATCHING_ENDS + 4 {
        return Err(Error::Budget(format!("{n} ends exceed the enumeration limit")));
    }
    let mut seen = BTreeSet::new();
    let mut partner = vec![u32::MAX; n];
    fn rec(legs: &[Anchor], partner: &mut Vec<u32>, seen: &mut BTreeSet<Diagram>, keep: bool) {
        let Some(i) = partner.iter().position(|&p| p == u32::MAX) else {
            let d = Diagram { legs: legs.to_vec(), partner: partner.clone(), loops: 0 };
            if keep || !d.has_tadpole() {
                seen.insert(canonical(&d));
            }
            return;
        };
        for j in i + 1..partner.len() {
            if partner[j] == u32::MAX {
                partner[i] = j as u32;
                partner[j] = i as u32;
                rec(legs, partner, seen, keep);
                partner[i] = u32::MAX;
                partner[j] = u32::MAX;
            }
        }
    }
    rec(legs, &mut partner, &mut seen, keep_tadpoles);
    Ok(seen.into_iter().collect())
}

/// All diagrams with `nlegs` legs spread over `anchors` and `ntri` vertices.
pub fn on_anchors(anchors: &[Anchor], nlegs: usize, ntri: usize) -> Result<Vec<Diagram>> {
    let mut all = BTreeSet::new();
    for legs in distributions(anchors, nlegs) {
        for d in all_matchings(&legs, ntri)? {
            all.insert(d);
        }
    }
    Ok(all.into_iter().collect())
}

type FreeKey = (Vec<u16>, usize);

fn free_cache() -> &'static Mutex<HashMap<FreeKey, Arc<Vec<Diagram>>>> {
    static C: OnceLock<Mutex<HashMap<FreeKey, Arc<Vec<Diagram>>>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Inserts a new vertex carrying a leg of color `c` on the edge through end
/// `e` (or on the dashed loop when `d` is a bare loop).
fn insert_leg(d: &Diagram, e: Option<usize>, c: u16, flip: bool) -> Diagram {
    let l = d.legs.len();
    let t = d.num_tri();
    // New layout: legs = old legs + new leg; vertices = old + new.
    let nl = l + 1;
    let remap = |x: usize| if x < l { x } else { x + 1 };
    let total = nl + 3 * (t + 1);
    let mut partner = vec![0u32; total];
    for x in 0..d.partner.len() {
        partner[remap(x)] = remap(d.mate(x)) as u32;
    }
    let w = nl + 3 * t;
    partner[l] = w as u32;
    partner[w] = l as u32;
    let (s1, s2) = if flip { (w + 2, w + 1) } else { (w + 1, w + 2) };
    match e {
        Some(e) => {
            let a = remap(e);
            let b = remap(d.mate(e));
            partner[a] = s1 as u32;
            partner[s1] = a as u32;
            partner[b] = s2 as u32;
            partner[s2] = b as u32;
        }
        None => {
            partner[s1] = s2 as u32;
            partner[s2] = s1 as u32;
        }
    }
    let mut legs = d.legs.clone();
    legs.push(Anchor::Color(c));
    Diagram { legs, partner, loops: 0 }
}

fn connected_raw(colors: &[u16], ntri: usize) -> Result<Arc<Vec<Diagram>>> {
    let key = (colors.to_vec(), ntri);
    if let Some(v) = free_cache().lock().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let l = colors.len();
    if (l + 3 * ntri) % 2 == 1 {
        return Ok(Arc::new(Vec::new()));
    }
    let result: Vec<Diagram> = if l == 0 {
        if ntri == 0 {
            // The bare loop, represented as a loop count.
            vec![Diagram::loops(1)]
        } else {
            if 3 * ntri > MAX_MATCHING_ENDS {
                return Err(Error::Budget(format!("vacuum diagrams with {ntri} vertices")));
            }
            matchings_impl(&[], ntri, true)?
                .into_iter()
                .filter(|d| d.component_ids().1 == 1)
                .collect()
        }
    } else if ntri == 0 {
        if l == 2 {
            vec![canonical(&Diagram::strut(Anchor::Color(colors[0]), Anchor::Color(colors[1])))]
        } else {
            Vec::new()
        }
    } else {
        if l + ntri > 18 {
            return Err(Error::Budget(format!("connected diagrams with {l} legs and {ntri} vertices")));
        }
        let c = colors[l - 1];
        let smaller = connected_raw(&colors[..l - 1], ntri - 1)?;
        let mut set = BTreeSet::new();
        for d in smaller.iter() {
            if d.partner.is_empty() && d.loops == 1 {
                for flip in [false, true] {
                    set.insert(canonical(&insert_leg(&Diagram::empty(), None, c, flip)));
                }
                continue;
            }
            for e in 0..d.partner.len() {
                if e < d.mate(e) {
                    for flip in [false, true] {
                        set.insert(canonical(&insert_leg(d, Some(e), c, flip)));
                    }
                }
            }
        }
        set.into_iter().collect()
    };
    let arc = Arc::new(result);
    free_cache().lock().unwrap().insert(key, arc.clone());
    Ok(arc)
}

/// Connected diagrams whose legs carry exactly the given (sorted) colors and
/// which have `ntri` vertices, up to isomorphism, tadpoles excluded.
pub fn connected_free(colors: &[u16], ntri: usize) -> Result<Vec<Diagram>> {
    let mut sorted = colors.to_vec();
    sorted.sort();
    let raw = connected_raw(&sorted, ntri)?;
    Ok(raw.iter().filter(|d| !d.has_tadpole() && !(d.partner.is_empty() && d.loops > 0)).cloned().collect())
}

/// Trees with one leg of each color `0..m` (m ≥ 2), up to isomorphism.
pub fn trees(m: usize) -> Result<Vec<Diagram>> {
    let colors: Vec<u16> = (0..m as u16).collect();
    connected_free(&colors, m.saturating_sub(2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distribution_counts() {
        let a = [Anchor::Seg(0), Anchor::Seg(1), Anchor::Circ(0)];
        assert_eq!(distributions(&a, 2).len(), 6);
        assert_eq!(distributions(&[], 0).len(), 1);
    }

    #[test]
    fn tree_counts() {
        // (2m-5)!! shapes times 2^(m-2) orientations.
        assert_eq!(trees(2).unwrap().len(), 1);
        assert_eq!(trees(3).unwrap().len(), 2);
        assert_eq!(trees(4).unwrap().len(), 12);
        assert_eq!(trees(5).unwrap().len(), 120);
    }

    #[test]
    fn theta_graphs() {
        // Two orientation classes of the theta graph up to isomorphism.
        let v = connected_free(&[], 2).unwrap();
        assert!(!v.is_empty());
        assert!(v.len() <= 2);
    }

    #[test]
    fn wheels_with_two_spokes() {
        let w = connected_free(&[0, 0], 2).unwrap();
        assert!(!w.is_empty());
    }
}
