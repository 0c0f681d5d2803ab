//! Finite abelian groups, their subgroups and quotients, and standard sets.
//!
//! Every group is stored as a subquotient `K/N` of a product of cyclic groups
//! `P = Z_{n_1} x ... x Z_{n_r}`. The plain product itself is the case
//! `K = P`, `N = {0}`; restricting to a subgroup shrinks `K`, factoring by a
//! subgroup grows `N`. Elements of `K/N` are numbered by their canonical
//! (lexicographically minimal) coset representatives, and characters are the
//! characters of `P` trivial on `N`, taken modulo those trivial on `K`.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::scalar::exponent_allows_exact;

const NONE: u32 = u32::MAX;

/// A product of cyclic groups `Z_{n_1} x ... x Z_{n_r}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    moduli: Vec<u64>,
    strides: Vec<usize>,
    order: usize,
    exponent: u64,
}

/// An element of a [`GroupSpec`] as a residue vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(pub Vec<u64>);

impl Element {
    pub fn residues(&self) -> &[u64] {
        &self.0
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|r| r.to_string()).collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join("/"))
        }
    }
}

impl GroupSpec {
    /// Builds the product of cyclic groups with the given moduli. An empty
    /// list is the trivial group.
    pub fn new(moduli: Vec<u64>) -> Result<Self> {
        if let Some(bad) = moduli.iter().find(|&&n| n < 2) {
            return Err(Error::InvalidGroup(format!("modulus {bad} is below 2")));
        }
        let mut order: usize = 1;
        for &n in &moduli {
            order = order
                .checked_mul(n as usize)
                .filter(|&o| o <= u32::MAX as usize / 2)
                .ok_or_else(|| Error::InvalidGroup("group order overflows".into()))?;
        }
        let mut strides = vec![1usize; moduli.len()];
        for i in (0..moduli.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * moduli[i + 1] as usize;
        }
        let exponent = moduli.iter().fold(1u64, |acc, &n| acc.lcm(&n));
        Ok(Self {
            moduli,
            strides,
            order,
            exponent,
        })
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(vec![n])
    }

    /// `Z_n^k`.
    pub fn power(n: u64, k: usize) -> Result<Self> {
        Self::new(vec![n; k])
    }

    pub fn product(&self, other: &GroupSpec) -> Result<Self> {
        let mut m = self.moduli.clone();
        m.extend_from_slice(&other.moduli);
        Self::new(m)
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    /// The group order `q`.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// Canonical text form, e.g. `Z4xZ3`, `Z2^5`, `Z1` for the trivial group.
    pub fn label(&self) -> String {
        if self.moduli.is_empty() {
            return "Z1".into();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.moduli.len() {
            let n = self.moduli[i];
            let mut j = i;
            while j < self.moduli.len() && self.moduli[j] == n {
                j += 1;
            }
            if j - i > 1 {
                parts.push(format!("Z{}^{}", n, j - i));
            } else {
                parts.push(format!("Z{n}"));
            }
            i = j;
        }
        parts.join("x")
    }

    pub fn element(&self, index: usize) -> Element {
        Element(self.residues(index))
    }

    pub fn residues(&self, index: usize) -> Vec<u64> {
        self.moduli
            .iter()
            .zip(&self.strides)
            .map(|(&n, &s)| ((index / s) as u64) % n)
            .collect()
    }

    pub fn index_of(&self, e: &Element) -> Result<usize> {
        if e.0.len() != self.moduli.len() {
            return Err(Error::InvalidGroup(format!(
                "element {e} has {} coordinates, group {} has {}",
                e.0.len(),
                self.label(),
                self.moduli.len()
            )));
        }
        let mut idx = 0;
        for ((&r, &n), &s) in e.0.iter().zip(&self.moduli).zip(&self.strides) {
            if r >= n {
                return Err(Error::InvalidGroup(format!(
                    "residue {r} not reduced modulo {n}"
                )));
            }
            idx += r as usize * s;
        }
        Ok(idx)
    }

    /// All elements in lexicographic order; the first one is 0.
    pub fn enumerate(&self) -> Vec<Element> {
        (0..self.order).map(|i| self.element(i)).collect()
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let mut out = 0;
        for (&n, &s) in self.moduli.iter().zip(&self.strides) {
            let n = n as usize;
            out += ((a / s) % n + (b / s) % n) % n * s;
        }
        out
    }

    pub fn neg(&self, a: usize) -> usize {
        let mut out = 0;
        for (&n, &s) in self.moduli.iter().zip(&self.strides) {
            let n = n as usize;
            out += (n - (a / s) % n) % n * s;
        }
        out
    }

    pub fn scale(&self, a: usize, m: u64) -> usize {
        let mut out = 0;
        for (&n, &s) in self.moduli.iter().zip(&self.strides) {
            let r = ((a / s) as u64 % n) * (m % n) % n;
            out += r as usize * s;
        }
        out
    }

    /// Character phase numerator `t` with `γ_y(x) = exp(2πi·t/exponent)`.
    pub fn phase(&self, x: usize, y: usize) -> u64 {
        let l = self.exponent;
        let mut t = 0u64;
        for (&n, &s) in self.moduli.iter().zip(&self.strides) {
            let xi = (x / s) as u64 % n;
            let yi = (y / s) as u64 % n;
            t = (t + (xi * yi % n) * (l / n)) % l;
        }
        t
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Greedy generating set of the subgroup spanned by `elems`.
fn greedy_generators(spec: &GroupSpec, elems: &[usize]) -> Vec<usize> {
    let mut span = vec![false; spec.order()];
    let mut span_list = vec![0usize];
    span[0] = true;
    let mut gens = Vec::new();
    for &x in elems {
        if span[x] {
            continue;
        }
        gens.push(x);
        let current = span_list.clone();
        let mut m = x;
        while m != 0 {
            for &s in &current {
                let v = spec.add(s, m);
                if !span[v] {
                    span[v] = true;
                    span_list.push(v);
                }
            }
            m = spec.add(m, x);
        }
    }
    gens
}

/// A finite abelian group realised as a subquotient `K/N` of a [`GroupSpec`].
#[derive(Debug, Clone)]
pub struct Group {
    spec: GroupSpec,
    label: String,
    reps: Vec<usize>,
    local: Vec<u32>,
    kernel: Vec<usize>,
    neg: Vec<u32>,
    chars: Vec<usize>,
    char_local: Vec<u32>,
    char_neg: Vec<u32>,
    exponent: u64,
    rep_residues: Vec<u64>,
    char_residues: Vec<u64>,
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec && self.reps == other.reps && self.kernel == other.kernel
    }
}

impl Eq for Group {}

impl Group {
    /// The full product group described by `spec`.
    pub fn ambient(spec: GroupSpec) -> Arc<Group> {
        let q = spec.order();
        let all: Vec<usize> = (0..q).collect();
        let label = spec.label();
        Arc::new(Self::build(spec, &all, &[0], label))
    }

    pub fn cyclic(n: u64) -> Result<Arc<Group>> {
        Ok(Self::ambient(GroupSpec::cyclic(n)?))
    }

    pub fn power(n: u64, k: usize) -> Result<Arc<Group>> {
        Ok(Self::ambient(GroupSpec::power(n, k)?))
    }

    fn build(spec: GroupSpec, carrier: &[usize], kernel: &[usize], label: String) -> Group {
        let pq = spec.order();
        let mut local = vec![NONE; pq];
        let mut reps = Vec::new();
        for &p in carrier {
            if local[p] != NONE {
                continue;
            }
            let j = reps.len() as u32;
            reps.push(p);
            for &t in kernel {
                local[spec.add(p, t)] = j;
            }
        }
        let neg = reps.iter().map(|&p| local[spec.neg(p)]).collect();

        // Characters: N^⊥ modulo K^⊥, checked on generators.
        let k_gens = greedy_generators(&spec, carrier);
        let n_gens = greedy_generators(&spec, kernel);
        let trivial_on = |y: usize, gens: &[usize]| gens.iter().all(|&g| spec.phase(g, y) == 0);
        let k_perp: Vec<usize> = (0..pq).filter(|&y| trivial_on(y, &k_gens)).collect();
        let mut char_local = vec![NONE; pq];
        let mut chars = Vec::new();
        for y in 0..pq {
            if char_local[y] != NONE || !trivial_on(y, &n_gens) {
                continue;
            }
            let c = chars.len() as u32;
            chars.push(y);
            for &z in &k_perp {
                char_local[spec.add(y, z)] = c;
            }
        }
        let char_neg = chars.iter().map(|&y| char_local[spec.neg(y)]).collect();

        let mut kernel_sorted = kernel.to_vec();
        kernel_sorted.sort_unstable();
        let mut in_kernel = vec![false; pq];
        for &t in &kernel_sorted {
            in_kernel[t] = true;
        }
        // Exponent: lcm of the orders of local generators.
        let local_gens = greedy_generators(&spec, &reps);
        let mut exponent = 1u64;
        for g in local_gens {
            let mut m = 1u64;
            let mut x = g;
            while !in_kernel[x] {
                x = spec.add(x, g);
                m += 1;
            }
            exponent = exponent.lcm(&m);
        }
        let rep_residues = reps.iter().flat_map(|&p| spec.residues(p)).collect();
        let char_residues = chars.iter().flat_map(|&y| spec.residues(y)).collect();
        Group {
            spec,
            label,
            reps,
            local,
            kernel: kernel_sorted,
            neg,
            chars,
            char_local,
            char_neg,
            exponent,
            rep_residues,
            char_residues,
        }
    }

    /// The product group `P` this group lives in.
    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// True when this is the full product group of its spec.
    pub fn is_ambient(&self) -> bool {
        self.kernel.len() == 1 && self.reps.len() == self.spec.order()
    }

    pub fn order(&self) -> usize {
        self.reps.len()
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// Whether all character values `cos(2πk/e)` are rational.
    pub fn exact_available(&self) -> bool {
        exponent_allows_exact(self.exponent)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.local[self.spec.add(self.reps[a], self.reps[b])] as usize
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    /// `2x = 0`.
    pub fn is_involution(&self, a: usize) -> bool {
        self.neg(a) == a
    }

    /// Representative residues of a local element.
    pub fn element(&self, a: usize) -> Element {
        self.spec.element(self.reps[a])
    }

    pub fn representative(&self, a: usize) -> usize {
        self.reps[a]
    }

    /// Local index of the coset containing the parent element `p`.
    pub fn local_of_parent(&self, p: usize) -> Option<usize> {
        match self.local.get(p) {
            Some(&v) if v != NONE => Some(v as usize),
            _ => None,
        }
    }

    /// Local index of an element given by its residues in the parent spec.
    pub fn index_of(&self, e: &Element) -> Result<usize> {
        let p = self.spec.index_of(e)?;
        self.local_of_parent(p)
            .ok_or_else(|| Error::InvalidGroup(format!("{e} is not an element of {}", self.label)))
    }

    /// Number of characters; equals the group order.
    pub fn char_count(&self) -> usize {
        self.chars.len()
    }

    /// Parent index `y` of the character `γ_y` with local index `c`.
    pub fn character(&self, c: usize) -> usize {
        self.chars[c]
    }

    /// Local index of the conjugate character.
    pub fn char_conj(&self, c: usize) -> usize {
        self.char_neg[c] as usize
    }

    /// Local character index for a parent character `y`, if it is trivial on
    /// the kernel.
    pub fn char_of_parent(&self, y: usize) -> Option<usize> {
        match self.char_local.get(y) {
            Some(&v) if v != NONE => Some(v as usize),
            _ => None,
        }
    }

    /// Phase of `γ_c(x)` as a fraction of a full turn: `(t, L)`.
    pub fn phase(&self, x: usize, c: usize) -> (i64, i64) {
        let r = self.spec.rank();
        let l = self.spec.exponent();
        let xs = &self.rep_residues[x * r..(x + 1) * r];
        let ys = &self.char_residues[c * r..(c + 1) * r];
        let mut t = 0u64;
        for i in 0..r {
            let n = self.spec.moduli()[i];
            t = (t + (xs[i] * ys[i] % n) * (l / n)) % l;
        }
        (t as i64, l as i64)
    }

    /// Parent elements of `K`.
    pub fn carrier(&self) -> Vec<usize> {
        (0..self.spec.order())
            .filter(|&p| self.local[p] != NONE)
            .collect()
    }

    pub fn kernel(&self) -> &[usize] {
        &self.kernel
    }

    fn preimage(&self, h: &Subgroup) -> Vec<usize> {
        let mut out: Vec<usize> = h
            .elements()
            .iter()
            .flat_map(|&a| self.kernel.iter().map(move |&t| (a, t)))
            .map(|(a, t)| self.spec.add(self.reps[a], t))
            .collect();
        out.sort_unstable();
        out
    }

    /// The subgroup `H` as a group in its own right.
    pub fn restrict_to(self: &Arc<Self>, h: &Subgroup) -> Result<Arc<Group>> {
        h.check_parent(self)?;
        let carrier = self.preimage(h);
        let label = format!("{}|H{}", self.label, h.order());
        Ok(Arc::new(Self::build(
            self.spec.clone(),
            &carrier,
            &self.kernel,
            label,
        )))
    }

    /// The factor group `G/H`.
    pub fn quotient(self: &Arc<Self>, h: &Subgroup) -> Result<Arc<Group>> {
        h.check_parent(self)?;
        let kernel = self.preimage(h);
        let carrier = self.carrier();
        let label = format!("{}/H{}", self.label, h.order());
        Ok(Arc::new(Self::build(
            self.spec.clone(),
            &carrier,
            &kernel,
            label,
        )))
    }

    /// Direct product; element `(i, j)` gets local index `i·|other| + j`.
    pub fn product(self: &Arc<Self>, other: &Arc<Group>) -> Result<Arc<Group>> {
        let spec = self.spec.product(&other.spec)?;
        let q2 = other.spec.order();
        let pair = |a: usize, b: usize| a * q2 + b;
        let carrier: Vec<usize> = self
            .carrier()
            .iter()
            .flat_map(|&a| other.carrier().into_iter().map(move |b| pair(a, b)))
            .collect();
        let kernel: Vec<usize> = self
            .kernel
            .iter()
            .flat_map(|&a| other.kernel.iter().map(move |&b| pair(a, b)))
            .collect();
        let label = if self.is_ambient() && other.is_ambient() {
            spec.label()
        } else {
            format!("({})x({})", self.label, other.label)
        };
        Ok(Arc::new(Self::build(spec, &carrier, &kernel, label)))
    }

    /// Canonical half: `x` with `x < -x` in local order.
    pub fn is_canonical_half(&self, a: usize) -> bool {
        a < self.neg(a)
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

/// A subgroup of a [`Group`], stored as sorted local indices.
#[derive(Debug, Clone)]
pub struct Subgroup {
    parent: Arc<Group>,
    elements: Vec<usize>,
}

impl Subgroup {
    /// Validates closure under addition and negation.
    pub fn new(parent: &Arc<Group>, mut elements: Vec<usize>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        let q = parent.order();
        if elements.iter().any(|&a| a >= q) {
            return Err(Error::NotSubgroup("element index out of range".into()));
        }
        let mut member = vec![false; q];
        for &a in &elements {
            member[a] = true;
        }
        if !member.first().copied().unwrap_or(false) {
            return Err(Error::NotSubgroup("does not contain 0".into()));
        }
        for &a in &elements {
            if !member[parent.neg(a)] {
                return Err(Error::NotSubgroup(format!(
                    "not closed under negation at {}",
                    parent.element(a)
                )));
            }
            for &b in &elements {
                if !member[parent.add(a, b)] {
                    return Err(Error::NotSubgroup(format!(
                        "not closed: {} + {}",
                        parent.element(a),
                        parent.element(b)
                    )));
                }
            }
        }
        if !q.is_multiple_of(elements.len()) {
            return Err(Error::NotSubgroup("order does not divide q".into()));
        }
        Ok(Self {
            parent: Arc::clone(parent),
            elements,
        })
    }

    /// The subgroup generated by `gens` (local indices).
    pub fn generated(parent: &Arc<Group>, gens: &[usize]) -> Result<Self> {
        let q = parent.order();
        let mut member = vec![false; q];
        member[0] = true;
        let mut list = vec![0usize];
        for &g in gens {
            if g >= q {
                return Err(Error::NotSubgroup("generator out of range".into()));
            }
            let mut i = 0;
            while i < list.len() {
                let v = parent.add(list[i], g);
                if !member[v] {
                    member[v] = true;
                    list.push(v);
                }
                i += 1;
            }
        }
        Self::new(parent, list)
    }

    pub fn trivial(parent: &Arc<Group>) -> Self {
        Self {
            parent: Arc::clone(parent),
            elements: vec![0],
        }
    }

    pub fn whole(parent: &Arc<Group>) -> Self {
        Self {
            parent: Arc::clone(parent),
            elements: (0..parent.order()).collect(),
        }
    }

    /// All subgroups, found as closures of every subset of cyclic subgroups.
    pub fn all(parent: &Arc<Group>) -> Vec<Subgroup> {
        let q = parent.order();
        let mut found: Vec<Vec<usize>> = vec![vec![0]];
        let mut frontier = found.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for h in &frontier {
                for g in 0..q {
                    if h.binary_search(&g).is_ok() {
                        continue;
                    }
                    let mut gens = h.clone();
                    gens.push(g);
                    let s = Subgroup::generated(parent, &gens).expect("closure is a subgroup");
                    if !found.contains(&s.elements) {
                        found.push(s.elements.clone());
                        next.push(s.elements);
                    }
                }
            }
            frontier = next;
        }
        found.sort_by_key(|e| (e.len(), e.clone()));
        found
            .into_iter()
            .map(|elements| Subgroup {
                parent: Arc::clone(parent),
                elements,
            })
            .collect()
    }

    pub fn parent(&self) -> &Arc<Group> {
        &self.parent
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.elements.binary_search(&a).is_ok()
    }

    fn check_parent(&self, g: &Group) -> Result<()> {
        if *self.parent == *g {
            Ok(())
        } else {
            Err(Error::NotSubgroup(format!(
                "subgroup belongs to {}, not {}",
                self.parent.label(),
                g.label()
            )))
        }
    }
}

/// A symmetric subset containing 0.
#[derive(Debug, Clone)]
pub struct StandardSet {
    group: Arc<Group>,
    members: Vec<bool>,
    size: usize,
}

impl PartialEq for StandardSet {
    fn eq(&self, other: &Self) -> bool {
        *self.group == *other.group && self.members == other.members
    }
}

impl StandardSet {
    /// Validates `0 ∈ A` and `A = -A`; nothing is inserted automatically.
    pub fn from_membership(group: &Arc<Group>, members: Vec<bool>) -> Result<Self> {
        if members.len() != group.order() {
            return Err(Error::NotStandard(format!(
                "membership table has {} entries, group order is {}",
                members.len(),
                group.order()
            )));
        }
        if !members[0] {
            return Err(Error::NotStandard("0 is not a member".into()));
        }
        if let Some(x) = (0..members.len()).find(|&x| members[x] != members[group.neg(x)]) {
            return Err(Error::NotStandard(format!(
                "{} is a member but its negative is not",
                group.element(if members[x] { x } else { group.neg(x) })
            )));
        }
        let size = members.iter().filter(|&&m| m).count();
        Ok(Self {
            group: Arc::clone(group),
            members,
            size,
        })
    }

    pub fn from_elements(group: &Arc<Group>, elements: &[usize]) -> Result<Self> {
        let mut members = vec![false; group.order()];
        for &a in elements {
            if a >= group.order() {
                return Err(Error::NotStandard(format!(
                    "element index {a} out of range"
                )));
            }
            members[a] = true;
        }
        Self::from_membership(group, members)
    }

    /// Closes a membership table under negation and inserts 0.
    pub fn standardize(group: &Arc<Group>, mut members: Vec<bool>) -> Self {
        members[0] = true;
        for x in 0..members.len() {
            if members[x] {
                members[group.neg(x)] = true;
            }
        }
        Self::from_membership(group, members).expect("standardized")
    }

    pub fn zero(group: &Arc<Group>) -> Self {
        let mut members = vec![false; group.order()];
        members[0] = true;
        Self::from_membership(group, members).expect("{0} is standard")
    }

    pub fn full(group: &Arc<Group>) -> Self {
        Self::from_membership(group, vec![true; group.order()]).expect("G is standard")
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn membership(&self) -> &[bool] {
        &self.members
    }

    pub fn contains(&self, a: usize) -> bool {
        self.members[a]
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn elements(&self) -> Vec<usize> {
        (0..self.members.len())
            .filter(|&a| self.members[a])
            .collect()
    }

    pub fn is_full(&self) -> bool {
        self.size == self.members.len()
    }

    pub fn is_zero(&self) -> bool {
        self.size == 1
    }

    pub fn is_subset_of(&self, other: &StandardSet) -> bool {
        self.members
            .iter()
            .zip(&other.members)
            .all(|(&a, &b)| !a || b)
    }

    /// `A' = (G \ A) ∪ {0}`.
    pub fn standard_complement(&self) -> StandardSet {
        let mut members: Vec<bool> = self.members.iter().map(|m| !m).collect();
        members[0] = true;
        Self::from_membership(&self.group, members).expect("complement is standard")
    }

    fn check_same_group(&self, other: &StandardSet) -> Result<()> {
        if *self.group == *other.group {
            Ok(())
        } else {
            Err(Error::GroupMismatch(format!(
                "{} vs {}",
                self.group.label(),
                other.group.label()
            )))
        }
    }

    pub fn union(&self, other: &StandardSet) -> Result<StandardSet> {
        self.check_same_group(other)?;
        let members = self
            .members
            .iter()
            .zip(&other.members)
            .map(|(&a, &b)| a || b)
            .collect();
        Self::from_membership(&self.group, members)
    }

    pub fn intersection(&self, other: &StandardSet) -> Result<StandardSet> {
        self.check_same_group(other)?;
        let members = self
            .members
            .iter()
            .zip(&other.members)
            .map(|(&a, &b)| a && b)
            .collect();
        Self::from_membership(&self.group, members)
    }

    /// `A_1 x A_2` in `G_1 x G_2`.
    pub fn product_set(&self, other: &StandardSet) -> Result<StandardSet> {
        let group = self.group.product(&other.group)?;
        let q2 = other.group.order();
        let mut members = vec![false; group.order()];
        for a in self.elements() {
            for b in other.elements() {
                members[a * q2 + b] = true;
            }
        }
        Self::from_membership(&group, members)
    }

    /// `A ∩ H` as a standard set of the group `H`.
    pub fn restrict_to_subgroup(&self, h: &Subgroup) -> Result<StandardSet> {
        let sub = self.group.restrict_to(h)?;
        let members = (0..sub.order())
            .map(|j| {
                let p = sub.representative(j);
                let a = self.group.local_of_parent(p).expect("H lies in G");
                self.members[a]
            })
            .collect();
        Self::from_membership(&sub, members)
    }

    /// `A/H`: the cosets of `H` meeting `A`.
    pub fn quotient_image(&self, h: &Subgroup) -> Result<StandardSet> {
        let quo = self.group.quotient(h)?;
        let mut members = vec![false; quo.order()];
        for a in self.elements() {
            let c = quo
                .local_of_parent(self.group.representative(a))
                .expect("G maps onto G/H");
            members[c] = true;
        }
        Self::from_membership(&quo, members)
    }

    /// `π(A)` for a supported automorphism of the ambient group.
    pub fn apply_automorphism(&self, pi: &Automorphism) -> Result<StandardSet> {
        let map = pi.table(&self.group)?;
        let mut members = vec![false; self.group.order()];
        for a in self.elements() {
            members[map[a]] = true;
        }
        Self::from_membership(&self.group, members)
    }

    /// `φ(A)` for an injective homomorphism between ambient groups.
    pub fn embed(&self, phi: &Homomorphism) -> Result<StandardSet> {
        if !self.group.is_ambient() || *self.group.spec() != phi.source {
            return Err(Error::GroupMismatch(format!(
                "set lives in {}, map starts at {}",
                self.group.label(),
                phi.source.label()
            )));
        }
        let table = phi.table()?;
        let target = Group::ambient(phi.target.clone());
        let mut members = vec![false; target.order()];
        for a in self.elements() {
            members[table[a]] = true;
        }
        Self::from_membership(&target, members)
    }

    pub fn render(&self) -> String {
        let parts: Vec<String> = self
            .elements()
            .into_iter()
            .map(|a| self.group.element(a).to_string())
            .collect();
        format!("{{{}}}", parts.join(","))
    }
}

impl fmt::Display for StandardSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Supported automorphisms of an ambient product group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Automorphism {
    /// `x ↦ u·x`; requires `gcd(u, n_i) = 1` for every factor.
    Multiply(u64),
    /// Multiply a single coordinate by a unit of its modulus.
    MultiplyFactor { factor: usize, unit: u64 },
    /// Coordinate permutation; `perm[i]` is the destination of coordinate `i`.
    /// Only factors with equal moduli may be exchanged.
    Permute(Vec<usize>),
}

impl Automorphism {
    /// Image table over local indices.
    pub fn table(&self, group: &Group) -> Result<Vec<usize>> {
        if !group.is_ambient() {
            return Err(Error::NotAutomorphism(
                "automorphisms are supported on product groups only".into(),
            ));
        }
        let spec = group.spec();
        let q = spec.order();
        match self {
            Automorphism::Multiply(u) => {
                if let Some(&n) = spec.moduli().iter().find(|&&n| u.gcd(&n) != 1) {
                    return Err(Error::NotAutomorphism(format!(
                        "{u} is not a unit modulo {n}"
                    )));
                }
                Ok((0..q).map(|x| spec.scale(x, *u)).collect())
            }
            Automorphism::MultiplyFactor { factor, unit } => {
                let n = *spec
                    .moduli()
                    .get(*factor)
                    .ok_or_else(|| Error::NotAutomorphism(format!("no coordinate {factor}")))?;
                if unit.gcd(&n) != 1 {
                    return Err(Error::NotAutomorphism(format!(
                        "{unit} is not a unit modulo {n}"
                    )));
                }
                Ok((0..q)
                    .map(|x| {
                        let mut r = spec.residues(x);
                        r[*factor] = r[*factor] * unit % n;
                        spec.index_of(&Element(r)).expect("reduced")
                    })
                    .collect())
            }
            Automorphism::Permute(perm) => {
                let r = spec.rank();
                let mut seen = vec![false; r];
                if perm.len() != r {
                    return Err(Error::NotAutomorphism(
                        "permutation has wrong length".into(),
                    ));
                }
                for (i, &j) in perm.iter().enumerate() {
                    if j >= r || seen[j] {
                        return Err(Error::NotAutomorphism("not a permutation".into()));
                    }
                    seen[j] = true;
                    if spec.moduli()[i] != spec.moduli()[j] {
                        return Err(Error::NotAutomorphism(format!(
                            "coordinates {i} and {j} have different moduli"
                        )));
                    }
                }
                Ok((0..q)
                    .map(|x| {
                        let src = spec.residues(x);
                        let mut dst = vec![0; r];
                        for (i, &j) in perm.iter().enumerate() {
                            dst[j] = src[i];
                        }
                        spec.index_of(&Element(dst)).expect("reduced")
                    })
                    .collect())
            }
        }
    }
}

/// A homomorphism between product groups, given by the images of the
/// standard basis vectors of the source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism {
    pub source: GroupSpec,
    pub target: GroupSpec,
    pub images: Vec<Element>,
}

impl Homomorphism {
    pub fn new(source: GroupSpec, target: GroupSpec, images: Vec<Element>) -> Self {
        Self {
            source,
            target,
            images,
        }
    }

    pub fn identity(spec: &GroupSpec) -> Self {
        let images = (0..spec.rank())
            .map(|i| {
                let mut r = vec![0; spec.rank()];
                r[i] = 1;
                Element(r)
            })
            .collect();
        Self::new(spec.clone(), spec.clone(), images)
    }

    /// Image of every source element; fails unless the map is an injective
    /// homomorphism.
    pub fn table(&self) -> Result<Vec<usize>> {
        if self.images.len() != self.source.rank() {
            return Err(Error::NotEmbedding(format!(
                "{} basis images for a group of rank {}",
                self.images.len(),
                self.source.rank()
            )));
        }
        let imgs: Vec<usize> = self
            .images
            .iter()
            .map(|e| self.target.index_of(e))
            .collect::<Result<_>>()
            .map_err(|e| Error::NotEmbedding(e.to_string()))?;
        for (&n, &g) in self.source.moduli().iter().zip(&imgs) {
            if self.target.scale(g, n) != 0 {
                return Err(Error::NotEmbedding(format!(
                    "image {} does not have order dividing {n}",
                    self.target.element(g)
                )));
            }
        }
        let q = self.source.order();
        let mut seen = vec![false; self.target.order()];
        let mut out = Vec::with_capacity(q);
        for x in 0..q {
            let r = self.source.residues(x);
            let mut v = 0;
            for (&ri, &g) in r.iter().zip(&imgs) {
                v = self.target.add(v, self.target.scale(g, ri));
            }
            if seen[v] {
                return Err(Error::NotEmbedding(format!(
                    "{} is hit twice",
                    self.target.element(v)
                )));
            }
            seen[v] = true;
            out.push(v);
        }
        Ok(out)
    }
}

/// `{0} ∪ {nonzero squares mod q}` for a prime `q ≡ 1 (mod 4)`.
pub fn quadratic_residue_set(q: u64) -> Result<StandardSet> {
    if q < 2
        || (2..q)
            .take_while(|d| d * d <= q)
            .any(|d| q.is_multiple_of(d))
    {
        return Err(Error::Precondition(format!("{q} is not prime")));
    }
    if q % 4 != 1 {
        return Err(Error::Precondition(format!(
            "{q} is not 1 mod 4, so the residues are not symmetric"
        )));
    }
    let group = Group::cyclic(q)?;
    let mut members = vec![false; q as usize];
    for x in 0..q {
        members[(x * x % q) as usize] = true;
    }
    StandardSet::from_membership(&group, members)
}

/// `B - B` as a standard set.
pub fn difference_set(group: &Arc<Group>, b: &[usize]) -> Result<StandardSet> {
    if b.is_empty() {
        return Err(Error::Precondition("difference set of an empty set".into()));
    }
    let mut members = vec![false; group.order()];
    for &x in b {
        for &y in b {
            members[group.sub(x, y)] = true;
        }
    }
    StandardSet::from_membership(group, members)
}

/// Every standard set of `group`, enumerated by subsets of the nonzero
/// `{x, -x}` orbits in orbit order.
pub fn all_standard_sets(group: &Arc<Group>) -> Vec<StandardSet> {
    let orbits: Vec<usize> = (1..group.order()).filter(|&x| x <= group.neg(x)).collect();
    assert!(orbits.len() < 24, "too many standard sets to enumerate");
    (0u64..1 << orbits.len())
        .map(|mask| {
            let mut members = vec![false; group.order()];
            members[0] = true;
            for (i, &x) in orbits.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    members[x] = true;
                    members[group.neg(x)] = true;
                }
            }
            StandardSet::from_membership(group, members).expect("orbit unions are standard")
        })
        .collect()
}
