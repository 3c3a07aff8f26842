/// Union-find whose edges carry an integer displacement.
///
/// Every node stores its lifted position relative to its parent, so `find`
/// yields the position of a node relative to the root of its tree. On the
/// torus the displacement of an edge counts how many times it crosses the
/// period boundary along each axis; an edge that closes a cycle exposes the
/// net displacement around that cycle, which is nonzero exactly when the
/// lift of the component to ℝ³ meets a translate of itself.
#[derive(Clone, Debug)]
pub struct DisplacedUnionFind {
    parent: Vec<u32>,
    rank: Vec<u8>,
    shift: Vec<[i32; 3]>,
    path: Vec<usize>,
}

/// Outcome of [`DisplacedUnionFind::union`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Link {
    /// Two trees were joined; `absorbed` now hangs below `root`.
    Merged { root: usize, absorbed: usize },
    /// Both ends were already connected; the net displacement of the cycle
    /// the edge closes (zero for a contractible cycle).
    Cycle { root: usize, displacement: [i32; 3] },
}

impl DisplacedUnionFind {
    pub fn new(len: usize) -> Self {
        assert!(
            len <= u32::MAX as usize,
            "union-find limited to u32 indices"
        );
        Self {
            parent: (0..len as u32).collect(),
            rank: vec![0; len],
            shift: vec![[0; 3]; len],
            path: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Root of `x` and the position of `x` relative to it, with path compression.
    pub fn find(&mut self, x: usize) -> (usize, [i32; 3]) {
        let mut path = std::mem::take(&mut self.path);
        path.clear();
        let mut cur = x;
        while self.parent[cur] as usize != cur {
            path.push(cur);
            cur = self.parent[cur] as usize;
        }
        let root = cur;
        let mut acc = [0i32; 3];
        for &node in path.iter().rev() {
            acc = add(acc, self.shift[node]);
            self.shift[node] = acc;
            self.parent[node] = root as u32;
        }
        let pos = if path.is_empty() {
            [0; 3]
        } else {
            self.shift[x]
        };
        self.path = path;
        (root, pos)
    }

    /// Joins `a` and `b` with the constraint `lift(b) = lift(a) + step`.
    pub fn union(&mut self, a: usize, b: usize, step: [i32; 3]) -> Link {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        // lift(rb) - lift(ra)
        let delta = sub(add(step, pa), pb);
        if ra == rb {
            return Link::Cycle {
                root: ra,
                displacement: delta,
            };
        }
        let (root, child, child_shift) = if self.rank[ra] >= self.rank[rb] {
            (ra, rb, delta)
        } else {
            (rb, ra, neg(delta))
        };
        self.parent[child] = root as u32;
        self.shift[child] = child_shift;
        if self.rank[ra] == self.rank[rb] {
            self.rank[root] += 1;
        }
        Link::Merged {
            root,
            absorbed: child,
        }
    }

    pub fn connected(&mut self, a: usize, b: usize) -> bool {
        self.find(a).0 == self.find(b).0
    }
}

fn add(a: [i32; 3], b: [i32; 3]) -> [i32; 3] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn sub(a: [i32; 3], b: [i32; 3]) -> [i32; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn neg(a: [i32; 3]) -> [i32; 3] {
    [-a[0], -a[1], -a[2]]
}

/// Up to three linearly independent integer vectors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LatticeBasis(Vec<[i64; 3]>);

impl LatticeBasis {
    /// Adds `v` if it is independent of the current vectors.
    pub fn insert(&mut self, v: [i64; 3]) -> bool {
        let independent = match self.0.as_slice() {
            [] => v != [0; 3],
            [u] => cross(*u, v) != [0; 3],
            [u, w] => det(*u, *w, v) != 0,
            _ => false,
        };
        if independent {
            self.0.push(v);
        }
        independent
    }

    pub fn absorb(&mut self, other: LatticeBasis) {
        for v in other.0 {
            self.insert(v);
        }
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn vectors(&self) -> &[[i64; 3]] {
        &self.0
    }

    /// Whether some vector of the spanned lattice moves along `axis`.
    pub fn spans_axis(&self, axis: usize) -> bool {
        self.0.iter().any(|v| v[axis] != 0)
    }
}

fn cross(a: [i64; 3], b: [i64; 3]) -> [i64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn det(a: [i64; 3], b: [i64; 3], c: [i64; 3]) -> i64 {
    let x = cross(b, c);
    a[0] * x[0] + a[1] * x[1] + a[2] * x[2]
}
