//! A small deterministic union-find over `usize` node ids.
//!
//! Used by the concordance verifier to track how region instances of a
//! 2-dimensional cut-diagram merge over the course of a movie.  Unions are
//! resolved deterministically (the smaller root becomes the representative),
//! so replaying the same certificate always yields the same classes.

#[derive(Debug, Clone, Default)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new() -> Self {
        UnionFind { parent: Vec::new() }
    }

    /// Adds a fresh singleton node and returns its id.
    pub fn add(&mut self) -> usize {
        let id = self.parent.len();
        self.parent.push(id);
        id
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Representative of the class of `x`, with path compression.
    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Merges the classes of `a` and `b`; the smaller root wins.
    pub fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
    }

    pub fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unions_are_deterministic() {
        let mut uf = UnionFind::new();
        let nodes: Vec<usize> = (0..5).map(|_| uf.add()).collect();
        uf.union(nodes[3], nodes[1]);
        uf.union(nodes[4], nodes[3]);
        assert_eq!(uf.find(nodes[4]), nodes[1]);
        assert!(uf.same(nodes[1], nodes[4]));
        assert!(!uf.same(nodes[0], nodes[1]));
    }
}
