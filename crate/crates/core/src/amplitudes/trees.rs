use std::fmt;
use std::sync::Arc;

use crate::bell::RestrictedGrowth;

use super::MomentumSubset;

/// A subtree hanging below an edge: either an external leg or an internal
/// vertex with at least two children (so every vertex has degree >= 3).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    Leaf(u32),
    Vertex(Vec<Node>),
}

impl Node {
    pub fn legs(&self) -> MomentumSubset {
        match self {
            Node::Leaf(i) => MomentumSubset::leg(*i),
            Node::Vertex(children) => children
                .iter()
                .map(Node::legs)
                .reduce(MomentumSubset::union)
                .expect("vertices have children"),
        }
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            Node::Leaf(_) => 0,
            Node::Vertex(children) => 1 + children.iter().map(Node::vertex_count).sum::<usize>(),
        }
    }

    fn is_well_formed(&self) -> bool {
        match self {
            Node::Leaf(_) => true,
            Node::Vertex(children) => {
                children.len() >= 2 && children.iter().all(Node::is_well_formed)
            }
        }
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Leaf(i) => write!(f, "{i}"),
            Node::Vertex(children) => {
                f.write_str("(")?;
                for (i, c) in children.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// A tree with legs `1..=n` below the distinguished, possibly off-shell edge `e`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tree {
    n: u32,
    root: Node,
}

impl Tree {
    /// Checks that the legs are exactly `1..=n` and every vertex has degree >= 3.
    pub fn new(n: u32, root: Node) -> Option<Tree> {
        let mut labels = Vec::new();
        collect_labels(&root, &mut labels);
        labels.sort_unstable();
        let expected: Vec<u32> = (1..=n).collect();
        (root.is_well_formed() && labels == expected).then_some(Tree { n, root })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    pub fn vertex_count(&self) -> usize {
        self.root.vertex_count()
    }
}

fn collect_labels(node: &Node, out: &mut Vec<u32>) {
    match node {
        Node::Leaf(i) => out.push(*i),
        Node::Vertex(children) => children.iter().for_each(|c| collect_labels(c, out)),
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.root)
    }
}

type NodeStream = Box<dyn Iterator<Item = Node> + Send>;

/// All subtrees whose leg set is `legs`, generated lazily.
///
/// The root vertex splits `legs` into `k >= 2` blocks (restricted growth
/// strings, so blocks come ordered by their smallest leg) and each block is
/// expanded recursively.
fn subtrees(legs: MomentumSubset) -> NodeStream {
    let labels: Vec<u32> = legs.legs().collect();
    if labels.len() == 1 {
        return Box::new(std::iter::once(Node::Leaf(labels[0])));
    }
    let labels: Arc<[u32]> = labels.into();
    Box::new(
        RestrictedGrowth::new(labels.len(), None)
            .filter(|rgs| rgs.iter().any(|&b| b > 0))
            .flat_map(move |rgs| {
                let blocks = rgs.iter().max().map_or(0, |m| m + 1);
                let mut bits = vec![0u32; blocks];
                for (i, &b) in rgs.iter().enumerate() {
                    bits[b] |= 1 << (labels[i] - 1);
                }
                let blocks: Arc<[MomentumSubset]> =
                    bits.into_iter().map(MomentumSubset::from_bits).collect();
                children(blocks, 0).map(Node::Vertex)
            }),
    )
}

fn children(blocks: Arc<[MomentumSubset]>, i: usize) -> Box<dyn Iterator<Item = Vec<Node>> + Send> {
    if i == blocks.len() {
        return Box::new(std::iter::once(Vec::with_capacity(blocks.len())));
    }
    let first = subtrees(blocks[i]);
    Box::new(first.flat_map(move |head| {
        children(Arc::clone(&blocks), i + 1).map(move |mut tail| {
            tail.insert(0, head.clone());
            tail
        })
    }))
}

/// Every tree with `n` labelled on-shell legs below the edge `e`, each exactly once.
pub fn enumerate_trees(n: u32) -> impl Iterator<Item = Tree> + Send {
    assert!(n >= 1, "at least one leg");
    subtrees(MomentumSubset::all(n)).map(move |root| Tree { n, root })
}
