//! Union-find with rollback, where each class carries the set of vertices its
//! trail has already passed through. Merging two classes whose vertex sets
//! overlap is refused: the merged trail would revisit a vertex.

#[derive(Clone)]
pub(crate) struct TrailUnion {
    parent: Vec<u32>,
    size: Vec<u32>,
    words: usize,
    sets: Vec<u64>,
    history: Vec<Undo>,
    saved: Vec<u64>,
}

#[derive(Clone)]
enum Undo {
    Union { child: u32, root: u32, old_size: u32 },
    Mark { root: u32, word: u32, old: u64 },
}

impl TrailUnion {
    pub fn new(nodes: usize, vertices: usize) -> Self {
        let words = vertices.div_ceil(64).max(1);
        Self {
            parent: (0..nodes as u32).collect(),
            size: vec![1; nodes],
            words,
            sets: vec![0; nodes * words],
            history: Vec::new(),
            saved: Vec::new(),
        }
    }

    /// Seeds node `n` with vertex `v` (before any linking).
    pub fn seed(&mut self, n: usize, v: usize) {
        self.sets[n * self.words + v / 64] |= 1 << (v % 64);
    }

    #[inline]
    fn find(&self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            x = self.parent[x as usize];
        }
        x
    }

    #[inline]
    fn has(&self, root: u32, v: usize) -> bool {
        self.sets[root as usize * self.words + v / 64] & (1 << (v % 64)) != 0
    }

    #[cfg(test)]
    pub fn same(&self, a: usize, b: usize) -> bool {
        self.find(a as u32) == self.find(b as u32)
    }

    /// Joins the trails through `a` and `b`, optionally passing through vertex
    /// `via`. Returns false (and changes nothing) if a vertex would repeat.
    pub fn link(&mut self, a: usize, b: usize, via: Option<usize>) -> bool {
        let ra = self.find(a as u32);
        let rb = self.find(b as u32);
        if ra == rb {
            if let Some(v) = via {
                if self.has(ra, v) {
                    return false;
                }
                self.mark(ra, v);
            }
            return true;
        }
        let w = self.words;
        let (oa, ob) = (ra as usize * w, rb as usize * w);
        for k in 0..w {
            if self.sets[oa + k] & self.sets[ob + k] != 0 {
                return false;
            }
        }
        if let Some(v) = via {
            if self.has(ra, v) || self.has(rb, v) {
                return false;
            }
        }
        let (root, child) = if self.size[ra as usize] >= self.size[rb as usize] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        let (or, oc) = (root as usize * w, child as usize * w);
        self.saved.extend_from_slice(&self.sets[or..or + w]);
        for k in 0..w {
            self.sets[or + k] |= self.sets[oc + k];
        }
        self.history.push(Undo::Union {
            child,
            root,
            old_size: self.size[root as usize],
        });
        self.parent[child as usize] = root;
        self.size[root as usize] += self.size[child as usize];
        if let Some(v) = via {
            self.mark(root, v);
        }
        true
    }

    fn mark(&mut self, root: u32, v: usize) {
        let idx = root as usize * self.words + v / 64;
        self.history.push(Undo::Mark {
            root,
            word: (v / 64) as u32,
            old: self.sets[idx],
        });
        self.sets[idx] |= 1 << (v % 64);
    }

    pub fn checkpoint(&self) -> usize {
        self.history.len()
    }

    pub fn rollback(&mut self, to: usize) {
        let w = self.words;
        while self.history.len() > to {
            match self.history.pop().unwrap() {
                Undo::Union {
                    child,
                    root,
                    old_size,
                } => {
                    self.parent[child as usize] = child;
                    self.size[root as usize] = old_size;
                    let or = root as usize * w;
                    let start = self.saved.len() - w;
                    self.sets[or..or + w].copy_from_slice(&self.saved[start..]);
                    self.saved.truncate(start);
                }
                Undo::Mark { root, word, old } => {
                    self.sets[root as usize * w + word as usize] = old;
                }
            }
        }
    }
}
