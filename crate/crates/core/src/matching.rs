//! Maximum bipartite matching between a family of sets and their members
//! (augmenting paths, Kuhn's algorithm). Used for systems of distinct
//! representatives.

use crate::bitset::VertexSet;

/// Matches each set to a distinct member. Returns, per set, the matched
/// member or `None`.
pub fn match_sets(sets: &[&VertexSet], width: usize) -> Vec<Option<usize>> {
    let mut owner: Vec<Option<usize>> = vec![None; width];
    let mut assigned: Vec<Option<usize>> = vec![None; sets.len()];
    for s in 0..sets.len() {
        let mut seen = vec![false; width];
        augment(s, sets, &mut owner, &mut assigned, &mut seen);
    }
    assigned
}

fn augment(
    s: usize,
    sets: &[&VertexSet],
    owner: &mut [Option<usize>],
    assigned: &mut [Option<usize>],
    seen: &mut [bool],
) -> bool {
    for v in sets[s].iter() {
        if seen[v] {
            continue;
        }
        seen[v] = true;
        let free = match owner[v] {
            None => true,
            Some(t) => augment(t, sets, owner, assigned, seen),
        };
        if free {
            owner[v] = Some(s);
            assigned[s] = Some(v);
            return true;
        }
    }
    false
}

/// Hall's condition for small families given as bit masks: true iff every
/// mask can be matched to a distinct bit.
pub(crate) fn masks_have_sdr(masks: &[u32]) -> bool {
    let mut owner = [u8::MAX; 32];
    for s in 0..masks.len() {
        let mut seen = 0u32;
        if !augment_mask(s, masks, &mut owner, &mut seen) {
            return false;
        }
    }
    true
}

fn augment_mask(s: usize, masks: &[u32], owner: &mut [u8; 32], seen: &mut u32) -> bool {
    let mut avail = masks[s] & !*seen;
    while avail != 0 {
        let v = avail.trailing_zeros() as usize;
        avail &= avail - 1;
        *seen |= 1 << v;
        let free = owner[v] == u8::MAX || augment_mask(owner[v] as usize, masks, owner, seen);
        if free {
            owner[v] = s as u8;
            return true;
        }
    }
    false
}
