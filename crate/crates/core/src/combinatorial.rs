//! Exact `Δ(A)`, `Δ̄(A)` via Cayley-graph cliques, and the constructive
//! algorithms used by the random-set experiments.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::clique::{max_clique, max_clique_symmetric, CliqueStats, Graph, Symmetry};
use crate::error::{Error, Result};
use crate::group::{Automorphism, Group, StandardSet};
use crate::scalar::Rational;

/// Largest group order solved without an explicit override.
pub const EXACT_SOLVER_LIMIT: usize = 4096;

/// Cayley graph `Cay(G, S)`: `x ~ y` iff `x - y ∈ S`. `S` excludes 0.
#[derive(Debug, Clone)]
pub struct CayleyGraph {
    group: Arc<Group>,
    connection: Vec<bool>,
}

impl CayleyGraph {
    pub fn new(group: &Arc<Group>, mut connection: Vec<bool>) -> Result<Self> {
        if connection.len() != group.order() {
            return Err(Error::InvalidGroup(
                "connection table length mismatch".into(),
            ));
        }
        connection[0] = false;
        if (0..connection.len()).any(|x| connection[x] != connection[group.neg(x)]) {
            return Err(Error::NotStandard("connection set is not symmetric".into()));
        }
        Ok(Self {
            group: Arc::clone(group),
            connection,
        })
    }

    pub fn degree(&self) -> usize {
        self.connection.iter().filter(|&&c| c).count()
    }

    pub fn adjacent(&self, x: usize, y: usize) -> bool {
        self.connection[self.group.sub(x, y)]
    }

    /// Whether the connection set is invariant under all coordinate
    /// permutations of `Z_mⁿ`, `n ≥ 2`.
    pub fn coordinate_symmetric(&self) -> bool {
        let g = &self.group;
        let moduli = g.spec().moduli();
        if !g.is_ambient() || moduli.len() < 2 || moduli.iter().any(|&m| m != moduli[0]) {
            return false;
        }
        let r = moduli.len();
        let swap: Vec<usize> = (0..r)
            .map(|i| match i {
                0 => 1,
                1 => 0,
                _ => i,
            })
            .collect();
        let cycle: Vec<usize> = (0..r).map(|i| (i + 1) % r).collect();
        [swap, cycle].into_iter().all(|perm| {
            Automorphism::Permute(perm)
                .table(g)
                .map(|t| (0..t.len()).all(|x| self.connection[x] == self.connection[t[x]]))
                .unwrap_or(false)
        })
    }

    /// Bit masks of the elements of `Z₂ʳ` when `S ∪ {0}` is closed under
    /// clearing coordinates, `None` otherwise.
    fn down_closed_masks(&self) -> Option<Vec<u64>> {
        let g = &self.group;
        let moduli = g.spec().moduli();
        if !g.is_ambient() || moduli.len() >= 64 || moduli.iter().any(|&m| m != 2) {
            return None;
        }
        let masks: Vec<u64> = (0..g.order())
            .map(|x| {
                g.element(x)
                    .0
                    .iter()
                    .enumerate()
                    .fold(0, |m, (i, &r)| m | (r << i))
            })
            .collect();
        let mut by_mask = vec![0; g.order()];
        for (x, &m) in masks.iter().enumerate() {
            by_mask[m as usize] = x;
        }
        let closed = (0..g.order()).filter(|&x| self.connection[x]).all(|x| {
            let m = masks[x];
            (0..moduli.len()).filter(|i| m >> i & 1 == 1).all(|i| {
                let y = by_mask[(m & !(1 << i)) as usize];
                y == 0 || self.connection[y]
            })
        });
        closed.then_some(masks)
    }

    /// Orbits of the coordinate permutations fixing every element of `fixed`,
    /// acting on `candidates`. The stabilizer permutes coordinates within
    /// classes of equal columns, so two candidates share an orbit iff they
    /// carry the same multiset of residues on every class.
    fn coordinate_orbits(&self, fixed: &[usize], candidates: &[usize]) -> Vec<Vec<usize>> {
        let g = &self.group;
        let r = g.spec().rank();
        let fixed_res: Vec<Vec<u64>> = fixed.iter().map(|&x| g.element(x).0).collect();
        let mut cells: HashMap<Vec<u64>, Vec<usize>> = HashMap::new();
        for i in 0..r {
            cells
                .entry(fixed_res.iter().map(|v| v[i]).collect())
                .or_default()
                .push(i);
        }
        let mut cells: Vec<Vec<usize>> = cells.into_values().collect();
        cells.sort();
        let mut orbits: HashMap<Vec<Vec<u64>>, Vec<usize>> = HashMap::new();
        for &c in candidates {
            let res = g.element(c).0;
            let key = cells
                .iter()
                .map(|cell| {
                    let mut vals: Vec<u64> = cell.iter().map(|&i| res[i]).collect();
                    vals.sort_unstable();
                    vals
                })
                .collect();
            orbits.entry(key).or_default().push(c);
        }
        let mut orbits: Vec<Vec<usize>> = orbits.into_values().collect();
        orbits.sort();
        orbits
    }

    /// Maximum clique, found with `0` fixed in the clique (translations are
    /// automorphisms, so this loses nothing). When the connection set is
    /// invariant under coordinate permutations, the top of the search
    /// branches on orbits of those permutations.
    pub fn max_clique(&self, upper_bound: Option<usize>) -> (Vec<usize>, CliqueStats) {
        let nbrs: Vec<usize> = (0..self.connection.len())
            .filter(|&x| self.connection[x])
            .collect();
        let mut g = Graph::new(nbrs.len());
        for (i, &u) in nbrs.iter().enumerate() {
            for (j, &v) in nbrs.iter().enumerate().skip(i + 1) {
                if self.adjacent(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        let target = upper_bound.map(|b| b.saturating_sub(1));
        let (inner, stats) = if nbrs.is_empty() {
            (Vec::new(), CliqueStats::default())
        } else if let Some(masks) = self.down_closed_masks() {
            // Compressing `x ↦ x - e_i` keeps cliques cliques when `S ∪ {0}`
            // is down-closed, so some maximum clique is down-closed, and on
            // down-closed sets `x - y ∈ S` for all pairs iff `x ∨ y ∈ S`.
            // Cliques of the union graph are cliques of `Cay(G, S)` as well.
            let mut by_mask = vec![0; self.connection.len()];
            for (x, &m) in masks.iter().enumerate() {
                by_mask[m as usize] = x;
            }
            let mut u = Graph::new(nbrs.len());
            for (i, &x) in nbrs.iter().enumerate() {
                for (j, &y) in nbrs.iter().enumerate().skip(i + 1) {
                    if self.connection[by_mask[(masks[x] | masks[y]) as usize]] {
                        u.add_edge(i, j);
                    }
                }
            }
            max_clique(&u, target, None)
        } else if self.coordinate_symmetric() {
            let mut index = vec![usize::MAX; self.connection.len()];
            for (i, &u) in nbrs.iter().enumerate() {
                index[u] = i;
            }
            let orbits = |fixed: &[usize], cands: &[usize]| -> Vec<Vec<usize>> {
                let fixed: Vec<usize> = fixed.iter().map(|&i| nbrs[i]).collect();
                let cands: Vec<usize> = cands.iter().map(|&i| nbrs[i]).collect();
                self.coordinate_orbits(&fixed, &cands)
                    .into_iter()
                    .map(|o| o.into_iter().map(|x| index[x]).collect())
                    .collect()
            };
            let sym = Symmetry {
                orbits: &orbits,
                depth: SYMMETRY_DEPTH,
            };
            max_clique_symmetric(&g, target, None, &sym)
        } else {
            max_clique(&g, target, None)
        };
        let mut clique = vec![0];
        clique.extend(inner.into_iter().map(|i| nbrs[i]));
        clique.sort_unstable();
        (clique, stats)
    }
}

/// Search-tree levels that branch on coordinate-permutation orbits.
const SYMMETRY_DEPTH: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessKind {
    /// `(B - B) ∩ A = {0}`.
    Avoiding,
    /// `B - B ⊆ A`.
    Contained,
}

/// An extremal set `B` for `Δ` or `Δ̄`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtremalWitness {
    pub elements: Vec<usize>,
    pub kind: WitnessKind,
}

impl ExtremalWitness {
    pub fn size(&self) -> usize {
        self.elements.len()
    }

    /// Re-checks the defining difference condition against `a`.
    pub fn verify(&self, a: &StandardSet) -> bool {
        let g = a.group();
        self.elements.iter().all(|&x| {
            self.elements.iter().all(|&y| {
                let d = g.sub(x, y);
                match self.kind {
                    WitnessKind::Avoiding => d == 0 || !a.contains(d),
                    WitnessKind::Contained => a.contains(d),
                }
            })
        })
    }
}

/// Options for the clique search.
#[derive(Debug, Clone, Copy, Default)]
pub struct SolverOptions {
    /// Allow groups beyond [`EXACT_SOLVER_LIMIT`].
    pub force: bool,
    /// A proven upper bound on the answer; the search stops when it is met.
    pub upper_bound: Option<usize>,
}

fn guard(a: &StandardSet, opts: &SolverOptions) -> Result<()> {
    let q = a.group().order();
    if q > EXACT_SOLVER_LIMIT && !opts.force {
        return Err(Error::SizeGuard(format!(
            "exact Δ solver limited to q ≤ {EXACT_SOLVER_LIMIT}, got q = {q}"
        )));
    }
    Ok(())
}

/// `Δ(A)` with a witness `B`, `(B - B) ∩ A = {0}`.
pub fn delta_cap(a: &StandardSet) -> Result<(usize, ExtremalWitness)> {
    delta_cap_with(a, &SolverOptions::default())
}

pub fn delta_cap_with(a: &StandardSet, opts: &SolverOptions) -> Result<(usize, ExtremalWitness)> {
    guard(a, opts)?;
    let conn: Vec<bool> = a.membership().iter().map(|m| !m).collect();
    let graph = CayleyGraph::new(a.group(), conn)?;
    let (b, _) = graph.max_clique(opts.upper_bound);
    let w = ExtremalWitness {
        elements: b,
        kind: WitnessKind::Avoiding,
    };
    debug_assert!(w.verify(a));
    Ok((w.size(), w))
}

/// `Δ̄(A)` with a witness `B`, `B - B ⊆ A`. Computed as `Δ(A')`.
pub fn delta_bar(a: &StandardSet) -> Result<(usize, ExtremalWitness)> {
    delta_bar_with(a, &SolverOptions::default())
}

pub fn delta_bar_with(a: &StandardSet, opts: &SolverOptions) -> Result<(usize, ExtremalWitness)> {
    let (n, w) = delta_cap_with(&a.standard_complement(), opts)?;
    let w = ExtremalWitness {
        elements: w.elements,
        kind: WitnessKind::Contained,
    };
    debug_assert!(w.verify(a));
    Ok((n, w))
}

/// `δ(A) = Δ(A)/q`.
pub fn delta_density(delta: usize, q: usize) -> Rational {
    Rational::new((delta as i64).into(), (q as i64).into())
}

/// `δ̄(A) = 1/Δ̄(A)`.
pub fn delta_bar_density(delta_bar: usize) -> Rational {
    Rational::new(1.into(), (delta_bar as i64).into())
}

/// Greedy selection of a `k`-subset `B ⊆ A` with a large difference set.
///
/// Each step adds the element `a` minimising the number of solutions of
/// `a - b_i = b_u - b_v`; ties go to the lexicographically smallest element.
pub fn semisidon_select(group: &Group, a: &[usize], k: usize) -> Result<Vec<usize>> {
    let mut pool = a.to_vec();
    pool.sort_unstable();
    pool.dedup();
    let m = pool.len();
    if k == 0 || k * k > m {
        return Err(Error::OutOfRange(format!(
            "need 1 ≤ k ≤ √m, got k = {k}, m = {m}"
        )));
    }
    let mut chosen: Vec<usize> = Vec::with_capacity(k);
    let mut in_b = vec![false; group.order()];
    // multiplicity of each difference b_u - b_v
    let mut diffs: HashMap<usize, usize> = HashMap::new();
    while chosen.len() < k {
        let mut best: Option<(usize, usize)> = None;
        for &x in &pool {
            if in_b[x] {
                continue;
            }
            let z: usize = chosen
                .iter()
                .map(|&b| diffs.get(&group.sub(x, b)).copied().unwrap_or(0))
                .sum();
            if best.is_none_or(|(bz, _)| z < bz) {
                best = Some((z, x));
            }
        }
        let (_, x) = best.expect("pool has unused elements");
        in_b[x] = true;
        chosen.push(x);
        for &b in &chosen {
            *diffs.entry(group.sub(x, b)).or_default() += 1;
            if b != x {
                *diffs.entry(group.sub(b, x)).or_default() += 1;
            }
        }
    }
    Ok(chosen)
}

/// `1 + (k(k-1)/2)(1 - k(k-1)/(2m))`.
pub fn semisidon_bound(k: usize, m: usize) -> f64 {
    let pairs = (k * (k.saturating_sub(1))) as f64 / 2.0;
    1.0 + pairs * (1.0 - pairs / m as f64)
}

/// `|B - B|`.
pub fn difference_count(group: &Group, b: &[usize]) -> usize {
    let mut seen = vec![false; group.order()];
    for &x in b {
        for &y in b {
            seen[group.sub(x, y)] = true;
        }
    }
    seen.iter().filter(|&&s| s).count()
}

/// `|A|' = |A ∩ (G₁ ∪ G₂)| - 1` with `G₁` the elements of order at most 2 and
/// `G₂` the lexicographically smaller member of each remaining `{x, -x}`.
pub fn effective_cardinality(a: &StandardSet) -> usize {
    let g = a.group();
    a.elements()
        .into_iter()
        .filter(|&x| g.is_involution(x) || g.is_canonical_half(x))
        .count()
        - 1
}

/// Whether some nonzero `a, b, c ∈ R` have `a + b + c = 0`.
pub fn has_three_term_zero_sum(r: &StandardSet) -> bool {
    let g = r.group();
    let nz: Vec<usize> = r.elements().into_iter().filter(|&x| x != 0).collect();
    nz.iter().any(|&x| {
        nz.iter().any(|&y| {
            let c = g.neg(g.add(x, y));
            c != 0 && r.contains(c)
        })
    })
}
