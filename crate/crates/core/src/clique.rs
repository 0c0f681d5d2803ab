//! Exact maximum clique by branch and bound on bitsets with greedy-colouring
//! bounds (BBMC style).

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bitset {
    words: Vec<u64>,
}

impl Bitset {
    pub fn new(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut b = Self::new(len);
        for i in 0..len {
            b.insert(i);
        }
        b
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    fn and_assign(&mut self, other: &Bitset) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    fn and_not_assign(&mut self, other: &Bitset) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    fn and(&self, other: &Bitset) -> Bitset {
        let mut out = self.clone();
        out.and_assign(other);
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * 64 + t)
                }
            })
        })
    }
}

/// Undirected simple graph with bitset rows.
#[derive(Debug, Clone)]
pub struct Graph {
    rows: Vec<Bitset>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Self {
            rows: vec![Bitset::new(n); n],
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u != v {
            self.rows[u].insert(v);
            self.rows[v].insert(u);
        }
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    pub fn degree(&self, u: usize) -> usize {
        self.rows[u].count()
    }
}

/// Search statistics.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CliqueStats {
    pub nodes: u64,
    pub stopped_at_bound: bool,
}

/// Orbits of the stabilizer of `fixed` acting on `candidates`, in original
/// vertex indices. Every orbit must be a subset of `candidates`, and the group
/// must consist of graph automorphisms.
pub type OrbitFn<'a> = dyn Fn(&[usize], &[usize]) -> Vec<Vec<usize>> + Sync + 'a;

/// Symmetry information for [`max_clique_symmetric`].
pub struct Symmetry<'a> {
    pub orbits: &'a OrbitFn<'a>,
    /// Levels of the search tree that branch on orbits before falling back
    /// to plain branching.
    pub depth: usize,
}

struct Search<'a> {
    adj: &'a [Bitset],
    order: &'a [usize],
    pos: &'a [usize],
    best: Vec<usize>,
    current: Vec<usize>,
    target: Option<usize>,
    stats: CliqueStats,
}

impl Search<'_> {
    fn done(&self) -> bool {
        self.target.is_some_and(|t| self.best.len() >= t)
    }

    /// Greedy colouring of `p`; returns `(vertex, colour)` in colour order,
    /// keeping only vertices with colour at least `kmin`.
    fn colour(&self, p: &Bitset, kmin: usize) -> Vec<(usize, usize)> {
        let mut order = Vec::new();
        let mut uncolored = p.clone();
        let mut color = 1;
        while !uncolored.is_empty() {
            let mut q = uncolored.clone();
            while let Some(v) = q.first() {
                uncolored.remove(v);
                q.remove(v);
                q.and_not_assign(&self.adj[v]);
                if color >= kmin {
                    order.push((v, color));
                }
            }
            color += 1;
        }
        order
    }

    fn colour_bound(&self, p: &Bitset) -> usize {
        let mut uncolored = p.clone();
        let mut colours = 0;
        while !uncolored.is_empty() {
            colours += 1;
            let mut q = uncolored.clone();
            while let Some(v) = q.first() {
                uncolored.remove(v);
                q.remove(v);
                q.and_not_assign(&self.adj[v]);
            }
        }
        colours
    }

    fn record(&mut self) {
        if self.current.len() > self.best.len() {
            self.best = self.current.clone();
        }
    }

    /// Moves vertices that some maximum clique is known to contain from `p`
    /// into the current clique: a vertex adjacent to every other candidate,
    /// or one with a single non-neighbour `u` (then `u` is dropped, since
    /// swapping `u` for the vertex never shrinks a clique). Returns how many
    /// vertices were pushed.
    fn reduce(&mut self, p: &mut Bitset) -> usize {
        let mut forced = 0;
        loop {
            let mut changed = false;
            let snapshot: Vec<usize> = p.iter().collect();
            for v in snapshot {
                if !p.contains(v) {
                    continue;
                }
                let mut non = p.clone();
                non.and_not_assign(&self.adj[v]);
                non.remove(v);
                let mut it = non.iter();
                let (first, second) = (it.next(), it.next());
                if second.is_some() {
                    continue;
                }
                self.current.push(v);
                p.remove(v);
                if let Some(u) = first {
                    p.remove(u);
                }
                forced += 1;
                changed = true;
            }
            if !changed {
                return forced;
            }
        }
    }

    fn expand(&mut self, mut p: Bitset) {
        self.stats.nodes += 1;
        let forced = self.reduce(&mut p);
        if p.is_empty() {
            self.record();
        } else {
            self.branch(p);
        }
        self.current.truncate(self.current.len() - forced);
    }

    fn branch(&mut self, mut p: Bitset) {
        // Only vertices whose colour can still beat the incumbent are
        // branched on.
        let kmin = (self.best.len() + 1).saturating_sub(self.current.len());
        let order = self.colour(&p, kmin);
        for &(v, c) in order.iter().rev() {
            if self.current.len() + c <= self.best.len() || self.done() {
                return;
            }
            self.current.push(v);
            let np = p.and(&self.adj[v]);
            if np.is_empty() {
                self.record();
            } else {
                self.expand(np);
            }
            self.current.pop();
            p.remove(v);
        }
    }

    /// Orbital branching: for each orbit `O` of the stabilizer of the current
    /// clique, either some vertex of `O` is in the clique (and by symmetry it
    /// may be taken to be the first one), or none is.
    fn expand_orbits(&mut self, mut p: Bitset, sym: &Symmetry<'_>, depth: usize) {
        self.stats.nodes += 1;
        if depth == 0 {
            return self.expand(p);
        }
        let fixed: Vec<usize> = self.current.iter().map(|&i| self.order[i]).collect();
        let cands: Vec<usize> = p.iter().map(|i| self.order[i]).collect();
        let mut orbits: Vec<Vec<usize>> = (sym.orbits)(&fixed, &cands)
            .into_iter()
            .map(|o| o.into_iter().map(|v| self.pos[v]).collect())
            .collect();
        if orbits.iter().all(|o| o.len() == 1) {
            return self.expand(p);
        }
        // Large orbits first: excluding them shrinks the candidate set fastest.
        orbits.sort_by_key(|o| (std::cmp::Reverse(o.len()), o[0]));
        for o in orbits {
            if self.done() || self.current.len() + self.colour_bound(&p) <= self.best.len() {
                return;
            }
            let v = *o.iter().min().expect("nonempty orbit");
            self.current.push(v);
            let np = p.and(&self.adj[v]);
            if np.is_empty() {
                self.record();
            } else {
                self.expand_orbits(np, sym, depth - 1);
            }
            self.current.pop();
            for u in o {
                p.remove(u);
            }
        }
    }
}

/// Maximum clique of `graph`. `target`, when given, is a known upper bound:
/// the search stops as soon as a clique of that size is found. `initial` is
/// an optional clique used as the starting incumbent.
pub fn max_clique(
    graph: &Graph,
    target: Option<usize>,
    initial: Option<Vec<usize>>,
) -> (Vec<usize>, CliqueStats) {
    search(graph, target, initial, None)
}

/// [`max_clique`] with orbital branching on the top `sym.depth` levels.
pub fn max_clique_symmetric(
    graph: &Graph,
    target: Option<usize>,
    initial: Option<Vec<usize>>,
    sym: &Symmetry<'_>,
) -> (Vec<usize>, CliqueStats) {
    search(graph, target, initial, Some(sym))
}

fn search(
    graph: &Graph,
    target: Option<usize>,
    initial: Option<Vec<usize>>,
    sym: Option<&Symmetry<'_>>,
) -> (Vec<usize>, CliqueStats) {
    let n = graph.len();
    if n == 0 {
        return (Vec::new(), CliqueStats::default());
    }
    // Non-increasing degree order, ties by index.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(graph.degree(v)), v));
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let adj: Vec<Bitset> = order
        .iter()
        .map(|&v| {
            let mut row = Bitset::new(n);
            for u in graph.rows[v].iter() {
                row.insert(pos[u]);
            }
            row
        })
        .collect();
    let best = initial
        .map(|c| c.into_iter().map(|v| pos[v]).collect())
        .unwrap_or_else(|| vec![0]);
    let mut search = Search {
        adj: &adj,
        order: &order,
        pos: &pos,
        best,
        current: Vec::new(),
        target,
        stats: CliqueStats::default(),
    };
    if !search.done() {
        match sym {
            Some(sym) => search.expand_orbits(Bitset::full(n), sym, sym.depth),
            None => search.expand(Bitset::full(n)),
        }
    }
    search.stats.stopped_at_bound = search.done();
    let mut clique: Vec<usize> = search.best.iter().map(|&i| order[i]).collect();
    clique.sort_unstable();
    (clique, search.stats)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force(g: &Graph) -> usize {
        let n = g.len();
        (0u32..1 << n)
            .filter(|&m| {
                (0..n).all(|i| {
                    m >> i & 1 == 0 || (i + 1..n).all(|j| m >> j & 1 == 0 || g.adjacent(i, j))
                })
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn matches_brute_force_on_pseudorandom_graphs() {
        let mut state = 0x9e3779b97f4a7c15u64;
        for n in [1usize, 5, 9, 12, 14] {
            for _ in 0..10 {
                let mut g = Graph::new(n);
                for u in 0..n {
                    for v in u + 1..n {
                        state ^= state << 13;
                        state ^= state >> 7;
                        state ^= state << 17;
                        if state % 100 < 55 {
                            g.add_edge(u, v);
                        }
                    }
                }
                let (c, _) = max_clique(&g, None, None);
                assert_eq!(c.len(), brute_force(&g));
                for (i, &u) in c.iter().enumerate() {
                    for &v in &c[i + 1..] {
                        assert!(g.adjacent(u, v));
                    }
                }
            }
        }
    }

    #[test]
    fn complete_graph_stops_at_target() {
        let mut g = Graph::new(70);
        for u in 0..70 {
            for v in u + 1..70 {
                g.add_edge(u, v);
            }
        }
        let (c, stats) = max_clique(&g, Some(70), None);
        assert_eq!(c.len(), 70);
        assert!(stats.stopped_at_bound);
    }

    #[test]
    fn bitset_iteration() {
        let mut b = Bitset::new(130);
        for i in [0, 63, 64, 129] {
            b.insert(i);
        }
        assert_eq!(b.iter().collect::<Vec<_>>(), vec![0, 63, 64, 129]);
        assert_eq!(b.count(), 4);
    }
}
