//! Set partitions as restricted growth strings, and integer partitions.

/// A set partition of `{1..n}` with blocks ordered by their minimum element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetPartition {
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    /// Decodes a restricted growth string: element `i + 1` lies in block `rgs[i]`.
    pub fn from_rgs(rgs: &[usize]) -> Self {
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (i, &b) in rgs.iter().enumerate() {
            if b == blocks.len() {
                blocks.push(Vec::new());
            }
            blocks[b].push(i + 1);
        }
        SetPartition { blocks }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

/// Restricted growth strings of length `n` in lexicographic order, optionally
/// restricted to exactly `k` blocks.
///
/// With a block count the generator never visits strings that cannot reach
/// `k` blocks, so the cost is proportional to the output.
#[derive(Clone, Debug)]
pub struct RestrictedGrowth {
    n: usize,
    blocks: Option<usize>,
    current: Option<Vec<usize>>,
    started: bool,
}

impl RestrictedGrowth {
    pub fn new(n: usize, blocks: Option<usize>) -> Self {
        RestrictedGrowth {
            n,
            blocks,
            current: None,
            started: false,
        }
    }

    /// Fills `a[from..]` with the smallest completion given `used` blocks so far.
    fn fill(&self, a: &mut [usize], from: usize, used: usize) -> bool {
        let remaining = self.n - from;
        match self.blocks {
            None => {
                a[from..].iter_mut().for_each(|x| *x = 0);
                true
            }
            Some(k) => {
                if used > k || k - used > remaining {
                    return false;
                }
                let need = k - used;
                let zeros = remaining - need;
                for (i, x) in a[from..].iter_mut().enumerate() {
                    *x = if i < zeros { 0 } else { used + (i - zeros) };
                }
                true
            }
        }
    }

    fn first(&self) -> Option<Vec<usize>> {
        if self.n == 0 {
            return matches!(self.blocks, None | Some(0)).then(Vec::new);
        }
        let mut a = vec![0; self.n];
        self.fill(&mut a, 1, 1).then_some(a)
    }

    fn advance(&self, a: &mut [usize]) -> bool {
        let mut prefix_max = vec![0; self.n];
        for i in 1..self.n {
            prefix_max[i] = prefix_max[i - 1].max(a[i - 1]);
        }
        for i in (1..self.n).rev() {
            let m = prefix_max[i];
            let c = a[i] + 1;
            if c > m + 1 {
                continue;
            }
            let used = m.max(c) + 1;
            if let Some(k) = self.blocks {
                if used > k || k - used > self.n - 1 - i {
                    continue;
                }
            }
            a[i] = c;
            return self.fill(a, i + 1, used);
        }
        false
    }
}

impl Iterator for RestrictedGrowth {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if !self.started {
            self.started = true;
            self.current = self.first();
        } else if let Some(mut a) = self.current.take() {
            if self.advance(&mut a) {
                self.current = Some(a);
            }
        }
        self.current.clone()
    }
}

/// All set partitions of `{1..n}`, or only those with exactly `k` blocks.
pub fn set_partitions(n: usize, blocks: Option<usize>) -> impl Iterator<Item = SetPartition> {
    RestrictedGrowth::new(n, blocks).map(|rgs| SetPartition::from_rgs(&rgs))
}

/// Integer partitions of `n` into exactly `k` parts, parts in non-increasing order.
pub fn integer_partitions(n: u32, k: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, k: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k == 0 {
            if n == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        if n < k {
            return;
        }
        // the first part leaves at least one for each of the other k - 1 parts
        let hi = max.min(n - (k - 1));
        let lo = n.div_ceil(k);
        for part in (lo..=hi).rev() {
            prefix.push(part);
            go(n - part, k - 1, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, k, n, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stirling2(n: usize, k: usize) -> usize {
        match (n, k) {
            (0, 0) => 1,
            (0, _) | (_, 0) => 0,
            _ => k * stirling2(n - 1, k) + stirling2(n - 1, k - 1),
        }
    }

    #[test]
    fn three_into_two() {
        let got: Vec<_> = set_partitions(3, Some(2))
            .map(|p| p.blocks().to_vec())
            .collect();
        assert_eq!(
            got,
            vec![
                vec![vec![1, 2], vec![3]],
                vec![vec![1, 3], vec![2]],
                vec![vec![1], vec![2, 3]],
            ]
        );
    }

    #[test]
    fn counts_match_stirling_and_bell() {
        for n in 0..=8 {
            let mut total = 0;
            for k in 0..=n + 1 {
                let c = RestrictedGrowth::new(n, Some(k)).count();
                assert_eq!(c, stirling2(n, k), "S({n},{k})");
                total += c;
            }
            assert_eq!(RestrictedGrowth::new(n, None).count(), total);
        }
    }

    #[test]
    fn canonical_block_order() {
        for p in set_partitions(6, None) {
            let mins: Vec<_> = p.blocks().iter().map(|b| b[0]).collect();
            assert!(mins.windows(2).all(|w| w[0] < w[1]));
            let mut all: Vec<_> = p.blocks().concat();
            all.sort();
            assert_eq!(all, (1..=6).collect::<Vec<_>>());
        }
    }

    #[test]
    fn integer_partitions_small() {
        assert_eq!(integer_partitions(5, 2), vec![vec![4, 1], vec![3, 2]]);
        assert_eq!(integer_partitions(0, 0), vec![Vec::<u32>::new()]);
        assert!(integer_partitions(2, 3).is_empty());
        assert_eq!(integer_partitions(6, 3).len(), 3);
    }
}
