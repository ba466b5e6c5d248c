//! Join-based AVL sequence tree over chain edges.
//!
//! Positions are implicit (by rank). Every node caches its subtree size,
//! height, and the first and last edge stored below it.

use std::sync::Arc;

use crate::geom::Point;

/// A chain edge with endpoints in lexicographic order (`a < b`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub a: Point,
    pub b: Point,
}

pub type EdgeRef = Arc<Edge>;

#[derive(Debug)]
pub struct Node {
    pub edge: EdgeRef,
    pub left: Tree,
    pub right: Tree,
    pub first: EdgeRef,
    pub last: EdgeRef,
    height: u32,
    size: usize,
}

impl Node {
    fn leaf(edge: EdgeRef) -> Box<Node> {
        Box::new(Node { first: edge.clone(), last: edge.clone(), edge, left: Tree::empty(), right: Tree::empty(), height: 1, size: 1 })
    }

    fn update(&mut self) {
        self.height = 1 + self.left.height().max(self.right.height());
        self.size = 1 + self.left.len() + self.right.len();
        self.first = self.left.0.as_ref().map_or_else(|| self.edge.clone(), |n| n.first.clone());
        self.last = self.right.0.as_ref().map_or_else(|| self.edge.clone(), |n| n.last.clone());
    }

    pub fn size(&self) -> usize {
        self.size
    }
}

#[derive(Debug, Default)]
pub struct Tree(pub Option<Box<Node>>);

impl Tree {
    pub fn empty() -> Tree {
        Tree(None)
    }

    pub fn from_sorted(edges: Vec<EdgeRef>) -> Tree {
        fn build(edges: &[EdgeRef]) -> Tree {
            if edges.is_empty() {
                return Tree::empty();
            }
            let mid = edges.len() / 2;
            let mut node = Node::leaf(edges[mid].clone());
            node.left = build(&edges[..mid]);
            node.right = build(&edges[mid + 1..]);
            node.update();
            Tree(Some(node))
        }
        build(&edges)
    }

    pub fn len(&self) -> usize {
        self.0.as_ref().map_or(0, |n| n.size)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_none()
    }

    pub fn height(&self) -> u32 {
        self.0.as_ref().map_or(0, |n| n.height)
    }

    pub fn root(&self) -> Option<&Node> {
        self.0.as_deref()
    }

    pub fn first(&self) -> Option<&EdgeRef> {
        self.0.as_ref().map(|n| &n.first)
    }

    pub fn last(&self) -> Option<&EdgeRef> {
        self.0.as_ref().map(|n| &n.last)
    }

    pub fn get(&self, mut index: usize) -> Option<&EdgeRef> {
        let mut cur = self.0.as_deref();
        while let Some(node) = cur {
            let ls = node.left.len();
            if index < ls {
                cur = node.left.0.as_deref();
            } else if index == ls {
                return Some(&node.edge);
            } else {
                index -= ls + 1;
                cur = node.right.0.as_deref();
            }
        }
        None
    }

    /// Finds the edge whose lexicographic span `[a, b]` contains `q`, with its rank.
    pub fn locate(&self, q: &Point) -> Option<(usize, &EdgeRef)> {
        let mut cur = self.0.as_deref();
        let mut offset = 0;
        while let Some(node) = cur {
            if *q < node.edge.a {
                cur = node.left.0.as_deref();
            } else if *q > node.edge.b {
                offset += node.left.len() + 1;
                cur = node.right.0.as_deref();
            } else {
                return Some((offset + node.left.len(), &node.edge));
            }
        }
        None
    }

    pub fn iter(&self) -> Iter<'_> {
        let mut it = Iter { stack: Vec::new() };
        it.push_left(self.0.as_deref());
        it
    }

    /// Concatenates `left`, `edge`, `right`.
    pub fn join3(left: Tree, edge: EdgeRef, right: Tree) -> Tree {
        let (hl, hr) = (left.height(), right.height());
        if hl > hr + 1 {
            let mut node = left.0.expect("taller tree is non-empty");
            let r = std::mem::take(&mut node.right);
            node.right = Tree::join3(r, edge, right);
            node.update();
            Tree(Some(rebalance(node)))
        } else if hr > hl + 1 {
            let mut node = right.0.expect("taller tree is non-empty");
            let l = std::mem::take(&mut node.left);
            node.left = Tree::join3(left, edge, l);
            node.update();
            Tree(Some(rebalance(node)))
        } else {
            let mut node = Node::leaf(edge);
            node.left = left;
            node.right = right;
            node.update();
            Tree(Some(node))
        }
    }

    pub fn join(left: Tree, right: Tree) -> Tree {
        if left.is_empty() {
            return right;
        }
        if right.is_empty() {
            return left;
        }
        let n = left.len();
        let (rest, last) = left.split_at(n - 1);
        let last_edge = last.0.expect("split keeps one element").edge;
        Tree::join3(rest, last_edge, right)
    }

    /// Splits into the first `index` elements and the rest.
    pub fn split_at(self, index: usize) -> (Tree, Tree) {
        let Some(mut node) = self.0 else {
            return (Tree::empty(), Tree::empty());
        };
        let left = std::mem::take(&mut node.left);
        let right = std::mem::take(&mut node.right);
        let ls = left.len();
        if index <= ls {
            let (a, b) = left.split_at(index);
            (a, Tree::join3(b, node.edge, right))
        } else {
            let (a, b) = right.split_at(index - ls - 1);
            (Tree::join3(left, node.edge, a), b)
        }
    }

    #[cfg(test)]
    pub fn check_invariants(&self) -> bool {
        fn go(t: &Tree) -> Option<(u32, usize)> {
            match &t.0 {
                None => Some((0, 0)),
                Some(n) => {
                    let (hl, sl) = go(&n.left)?;
                    let (hr, sr) = go(&n.right)?;
                    let ok = hl.abs_diff(hr) <= 1
                        && n.height == 1 + hl.max(hr)
                        && n.size == 1 + sl + sr
                        && *n.first == **n.left.first().unwrap_or(&n.edge)
                        && *n.last == **n.right.last().unwrap_or(&n.edge);
                    ok.then_some((n.height, n.size))
                }
            }
        }
        go(self).is_some()
    }
}

fn rotate_left(mut node: Box<Node>) -> Box<Node> {
    let mut r = node.right.0.take().expect("rotate_left needs a right child");
    node.right = std::mem::take(&mut r.left);
    node.update();
    r.left = Tree(Some(node));
    r.update();
    r
}

fn rotate_right(mut node: Box<Node>) -> Box<Node> {
    let mut l = node.left.0.take().expect("rotate_right needs a left child");
    node.left = std::mem::take(&mut l.right);
    node.update();
    l.right = Tree(Some(node));
    l.update();
    l
}

fn rebalance(mut node: Box<Node>) -> Box<Node> {
    let (hl, hr) = (node.left.height(), node.right.height());
    if hl > hr + 1 {
        let l = node.left.0.take().expect("left-heavy");
        let l = if l.left.height() < l.right.height() { rotate_left(l) } else { l };
        node.left = Tree(Some(l));
        rotate_right(node)
    } else if hr > hl + 1 {
        let r = node.right.0.take().expect("right-heavy");
        let r = if r.right.height() < r.left.height() { rotate_right(r) } else { r };
        node.right = Tree(Some(r));
        rotate_left(node)
    } else {
        node
    }
}

pub struct Iter<'a> {
    stack: Vec<&'a Node>,
}

impl<'a> Iter<'a> {
    fn push_left(&mut self, mut cur: Option<&'a Node>) {
        while let Some(n) = cur {
            self.stack.push(n);
            cur = n.left.0.as_deref();
        }
    }
}

impl<'a> Iterator for Iter<'a> {
    type Item = &'a EdgeRef;

    fn next(&mut self) -> Option<Self::Item> {
        let n = self.stack.pop()?;
        self.push_left(n.right.0.as_deref());
        Some(&n.edge)
    }
}
