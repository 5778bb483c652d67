use std::collections::BTreeMap;

/// Unlabelled plane rooted tree: children are ordered and every internal
/// vertex has at least two of them.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PlaneTree {
    Leaf,
    Vertex(Vec<PlaneTree>),
}

impl PlaneTree {
    pub fn leaf_count(&self) -> usize {
        match self {
            PlaneTree::Leaf => 1,
            PlaneTree::Vertex(ch) => ch.iter().map(PlaneTree::leaf_count).sum(),
        }
    }

    fn visit_vertices(&self, f: &mut impl FnMut(usize)) {
        if let PlaneTree::Vertex(ch) = self {
            f(ch.len());
            ch.iter().for_each(|c| c.visit_vertices(f));
        }
    }
}

/// All plane trees with `leaves` leaves, listed explicitly.
pub fn plane_trees(leaves: usize) -> Vec<PlaneTree> {
    assert!(leaves >= 1);
    let mut by_size: Vec<Vec<PlaneTree>> = vec![Vec::new(), vec![PlaneTree::Leaf]];
    for l in 2..=leaves {
        let mut out = Vec::new();
        for parts in compositions(l) {
            if parts.len() < 2 {
                continue;
            }
            let mut partial: Vec<Vec<PlaneTree>> = vec![Vec::new()];
            for &p in &parts {
                partial = partial
                    .into_iter()
                    .flat_map(|prefix| {
                        by_size[p].iter().map(move |t| {
                            let mut next = prefix.clone();
                            next.push(t.clone());
                            next
                        })
                    })
                    .collect();
            }
            out.extend(partial.into_iter().map(PlaneTree::Vertex));
        }
        by_size.push(out);
    }
    by_size.swap_remove(leaves)
}

/// Ordered compositions of `n` into positive parts.
fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    (1..=n)
        .flat_map(|first| {
            compositions(n - first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// Plane trees with `leaves` leaves counted without building them:
/// `c(1) = 1`, `c(L) = sum over compositions of L into >= 2 parts of prod c(part)`.
pub fn count_plane_trees(leaves: usize) -> u64 {
    // seq[l] counts sequences of >= 1 trees with l leaves in total
    let mut c = vec![0u64; leaves + 1];
    let mut seq = vec![0u64; leaves + 1];
    for l in 1..=leaves {
        // sequences of >= 2 trees: a first tree followed by a sequence of >= 1
        let at_least_two: u64 = (1..l).map(|f| c[f] * seq[l - f]).sum();
        c[l] = if l == 1 { 1 } else { at_least_two };
        seq[l] = c[l] + at_least_two;
    }
    c[leaves]
}

/// `m_j`: number of vertices with `j + 1` children.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootedTreeProfile {
    m: BTreeMap<u32, u32>,
}

impl RootedTreeProfile {
    pub fn of(tree: &PlaneTree) -> Self {
        let mut m = BTreeMap::new();
        tree.visit_vertices(&mut |children| *m.entry(children as u32 - 1).or_insert(0) += 1);
        RootedTreeProfile { m }
    }

    pub fn get(&self, j: u32) -> u32 {
        self.m.get(&j).copied().unwrap_or(0)
    }

    /// `(j, m_j)` pairs with `m_j > 0`.
    pub fn iter(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.m.iter().map(|(&j, &m)| (j, m))
    }

    pub fn vertex_count(&self) -> u32 {
        self.m.values().sum()
    }

    /// `1 + sum_j j m_j`, the number of leaves of any tree with this profile.
    pub fn leaf_count(&self) -> u32 {
        1 + self.iter().map(|(j, m)| j * m).sum::<u32>()
    }

    /// Number of plane trees with `leaves` leaves for each profile.
    pub fn tally(leaves: u32) -> BTreeMap<RootedTreeProfile, usize> {
        let mut out = BTreeMap::new();
        for t in plane_trees(leaves as usize) {
            let profile = RootedTreeProfile::of(&t);
            debug_assert_eq!(profile.leaf_count(), leaves);
            *out.entry(profile).or_insert(0) += 1;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn little_schroeder_numbers() {
        let want = [1u64, 1, 3, 11, 45, 197, 903, 4279, 20793];
        for (i, &w) in want.iter().enumerate() {
            let l = i + 1;
            assert_eq!(plane_trees(l).len() as u64, w, "L={l}");
            assert_eq!(count_plane_trees(l), w, "L={l}");
        }
    }

    #[test]
    fn three_leaf_profiles() {
        let tally = RootedTreeProfile::tally(3);
        assert_eq!(tally.len(), 2);
        let binary = RootedTreeProfile { m: [(1, 2)].into() };
        let ternary = RootedTreeProfile { m: [(2, 1)].into() };
        assert_eq!(tally[&binary], 2);
        assert_eq!(tally[&ternary], 1);
        assert_eq!(binary.leaf_count(), 3);
        assert_eq!(binary.vertex_count(), 2);
    }

    #[test]
    fn trees_are_distinct() {
        let trees = plane_trees(6);
        let set: std::collections::BTreeSet<_> = trees.iter().collect();
        assert_eq!(set.len(), trees.len());
        assert!(trees.iter().all(|t| t.leaf_count() == 6));
    }
}
