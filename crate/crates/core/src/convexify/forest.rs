//! Union-find over input polygon ids plus the binary history of merges.

/// A history node: a leaf is an input polygon, an internal node a merge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HistoryNode {
    Leaf(usize),
    Merge(usize, usize),
}

#[derive(Debug, Clone)]
pub struct MergeForest {
    parent: Vec<usize>,
    size: Vec<usize>,
    /// History node of the component rooted at each id (valid for roots).
    node: Vec<usize>,
    history: Vec<HistoryNode>,
}

impl MergeForest {
    pub fn new(n: usize) -> MergeForest {
        MergeForest { parent: (0..n).collect(), size: vec![1; n], node: (0..n).collect(), history: (0..n).map(HistoryNode::Leaf).collect() }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    /// Root lookup without path compression.
    pub fn root_of(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    /// Unites two distinct roots and records the merge; returns the new root.
    pub fn union(&mut self, a: usize, b: usize) -> usize {
        debug_assert!(a != b && self.parent[a] == a && self.parent[b] == b);
        let (big, small) = if self.size[a] >= self.size[b] { (a, b) } else { (b, a) };
        self.parent[small] = big;
        self.size[big] += self.size[small];
        self.history.push(HistoryNode::Merge(self.node[a], self.node[b]));
        self.node[big] = self.history.len() - 1;
        big
    }

    pub fn component_size(&mut self, x: usize) -> usize {
        let r = self.find(x);
        self.size[r]
    }

    pub fn history(&self) -> &[HistoryNode] {
        &self.history
    }

    /// History node of the component containing `x`.
    pub fn node_of(&self, x: usize) -> usize {
        self.node[self.root_of(x)]
    }

    /// Input ids below a history node, in increasing order.
    pub fn polys(&self, node: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![node];
        while let Some(v) = stack.pop() {
            match self.history[v] {
                HistoryNode::Leaf(id) => out.push(id),
                HistoryNode::Merge(l, r) => {
                    stack.push(l);
                    stack.push(r);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Current components as sorted id lists, ordered by smallest id.
    pub fn groups(&self) -> Vec<Vec<usize>> {
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); self.len()];
        for id in 0..self.len() {
            by_root[self.root_of(id)].push(id);
        }
        let mut groups: Vec<Vec<usize>> = by_root.into_iter().filter(|g| !g.is_empty()).collect();
        groups.sort();
        groups
    }
}
