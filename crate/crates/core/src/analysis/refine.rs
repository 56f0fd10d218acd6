use crate::scheme::RelationTable;

/// Marker colour for an individualized point; it sorts after every rank.
const SINGLE: u32 = u32::MAX;

/// Refines a point colouring until each point's colour determines the
/// multiset of `(relation, colour)` pairs in its row. Output colours are the
/// ranks of the signatures, so equal inputs related by an automorphism give
/// equal outputs.
pub(crate) fn refine(table: &RelationTable, colours: &[u32]) -> Vec<u32> {
    let n = table.points();
    let mut cur = colours.to_vec();
    let mut cells = distinct(&cur);
    let mut sigs: Vec<(u32, Vec<u64>)> = vec![(0, Vec::with_capacity(n)); n];
    loop {
        for (x, sig) in sigs.iter_mut().enumerate() {
            sig.0 = cur[x];
            sig.1.clear();
            sig.1.extend(table.row(x).iter().zip(&cur).map(|(&r, &c)| (u64::from(r) << 32) | u64::from(c)));
            sig.1.sort_unstable();
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| sigs[a].cmp(&sigs[b]));
        let mut next = vec![0u32; n];
        let mut rank = 0u32;
        for w in 0..n {
            if w > 0 && sigs[order[w]] != sigs[order[w - 1]] {
                rank += 1;
            }
            next[order[w]] = rank;
        }
        let count = rank as usize + 1;
        cur = next;
        if count == cells {
            return cur;
        }
        cells = count;
    }
}

fn distinct(c: &[u32]) -> usize {
    let mut v = c.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

pub(crate) fn individualize(table: &RelationTable, colours: &[u32], x: usize) -> Vec<u32> {
    let mut c = colours.to_vec();
    c[x] = SINGLE;
    refine(table, &c)
}

/// Number of points of each colour.
pub(crate) fn shape(colours: &[u32]) -> Vec<u32> {
    let mut counts = vec![0u32; colours.len()];
    for &c in colours {
        counts[c as usize] += 1;
    }
    while counts.last() == Some(&0) {
        counts.pop();
    }
    counts
}

/// Colour of the first smallest non-singleton cell, if any.
pub(crate) fn target_cell(colours: &[u32]) -> Option<u32> {
    let counts = shape(colours);
    (0..counts.len() as u32).filter(|&c| counts[c as usize] > 1).min_by_key(|&c| counts[c as usize])
}

pub(crate) fn cell(colours: &[u32], c: u32) -> Vec<usize> {
    (0..colours.len()).filter(|&x| colours[x] == c).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FiniteGroup;
    use crate::scheme::Scheme;

    #[test]
    fn thin_scheme_is_discrete_after_one_point() {
        let s = Scheme::thin_from_group(&FiniteGroup::cyclic(6));
        let root = refine(s.table(), &[0; 6]);
        assert_eq!(shape(&root), vec![6]);
        let c = individualize(s.table(), &root, 2);
        assert_eq!(shape(&c), vec![1; 6]);
        assert_eq!(target_cell(&c), None);
    }
}
