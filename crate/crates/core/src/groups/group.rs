use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::GroupError;

/// Largest group order handled by table-based algorithms.
pub const MAX_GROUP_ORDER: usize = 256;

/// Orders up to which homomorphism checks compare all pairs of elements.
pub const FULL_CHECK_ORDER: usize = 64;

/// A word in the generators: letter `k+1` is generator `k`, `-(k+1)` its inverse.
pub type Word = Vec<i32>;

/// A finite group given by its multiplication table.
///
/// Alongside the table the group keeps a generating set, optional defining
/// relators and a breadth-first spanning tree of the Cayley graph, which
/// fixes a canonical word for every element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: Option<String>,
    n: usize,
    table: Vec<u32>,
    identity: usize,
    inverse: Vec<usize>,
    generators: Vec<usize>,
    relators: Vec<Word>,
    /// `tree[g] = (parent, j)` with `g = parent * generators[j]`.
    tree: Vec<Option<(usize, usize)>>,
    bfs: Vec<usize>,
}

impl FiniteGroup {
    pub fn from_table(
        table: Vec<Vec<usize>>,
        generators: Vec<usize>,
        relators: Vec<Word>,
        name: Option<String>,
    ) -> Result<FiniteGroup, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::InvalidTable("empty table".into()));
        }
        if n > MAX_GROUP_ORDER {
            return Err(GroupError::TooLarge(n, MAX_GROUP_ORDER));
        }
        for row in &table {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(GroupError::InvalidTable("rows must be permutations of 0..n".into()));
            }
        }
        let flat: Vec<u32> = table.iter().flatten().map(|&x| x as u32).collect();
        let at = |a: usize, b: usize| flat[a * n + b] as usize;
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| at(e, g) == g && at(g, e) == g))
            .ok_or_else(|| GroupError::InvalidTable("no two-sided identity".into()))?;
        let mut seen = vec![false; n];
        for a in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for b in 0..n {
                let x = at(a, b);
                if seen[x] {
                    return Err(GroupError::InvalidTable(format!("row {a} repeats {x}")));
                }
                seen[x] = true;
            }
        }
        let mut inverse = vec![0; n];
        for (a, inv) in inverse.iter_mut().enumerate() {
            *inv = (0..n)
                .find(|&b| at(a, b) == identity)
                .ok_or_else(|| GroupError::InvalidTable(format!("{a} has no inverse")))?;
            if at(*inv, a) != identity {
                return Err(GroupError::InvalidTable(format!("{a} has no two-sided inverse")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = at(a, b);
                for c in 0..n {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(GroupError::InvalidTable(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        if generators.iter().any(|&g| g >= n) {
            return Err(GroupError::InvalidTable("generator index out of range".into()));
        }
        let mut tree = vec![None; n];
        let mut bfs = vec![identity];
        let mut visited = vec![false; n];
        visited[identity] = true;
        let mut queue = VecDeque::from([identity]);
        while let Some(g) = queue.pop_front() {
            for (j, &s) in generators.iter().enumerate() {
                let h = at(g, s);
                if !visited[h] {
                    visited[h] = true;
                    tree[h] = Some((g, j));
                    bfs.push(h);
                    queue.push_back(h);
                }
            }
        }
        if bfs.len() != n {
            return Err(GroupError::NotGenerated { span: bfs.len(), order: n });
        }
        let group =
            FiniteGroup { name, n, table: flat, identity, inverse, generators, relators, tree, bfs };
        for (index, r) in group.relators.iter().enumerate() {
            if r.iter().any(|&l| l == 0 || l.unsigned_abs() as usize > group.generators.len()) {
                return Err(GroupError::InvalidTable(format!("relator {index} uses unknown letters")));
            }
            if group.eval_word(r) != identity {
                return Err(GroupError::RelatorViolation { index });
            }
        }
        Ok(group)
    }

    /// Closure of `gens` under `mul`, indexed in breadth-first order from the
    /// identity. Returns the elements alongside the group.
    pub fn from_closure<T: Clone + Eq + Hash>(
        gens: &[T],
        identity: T,
        mul: impl Fn(&T, &T) -> T,
        relators: Vec<Word>,
        name: Option<String>,
    ) -> Result<(FiniteGroup, Vec<T>), GroupError> {
        let mut elems = vec![identity.clone()];
        let mut index: HashMap<T, usize> = HashMap::from([(identity, 0)]);
        let mut i = 0;
        while i < elems.len() {
            for s in gens {
                let h = mul(&elems[i], s);
                if !index.contains_key(&h) {
                    if elems.len() == MAX_GROUP_ORDER {
                        return Err(GroupError::TooLarge(MAX_GROUP_ORDER + 1, MAX_GROUP_ORDER));
                    }
                    index.insert(h.clone(), elems.len());
                    elems.push(h);
                }
            }
            i += 1;
        }
        let table: Vec<Vec<usize>> = elems
            .iter()
            .map(|a| elems.iter().map(|b| index[&mul(a, b)]).collect())
            .collect();
        let generators = gens.iter().map(|s| index[s]).collect();
        let g = FiniteGroup::from_table(table, generators, relators, name)?;
        Ok((g, elems))
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> FiniteGroup {
        self.name = Some(name.into());
        self
    }

    pub fn label(&self) -> String {
        self.name.clone().unwrap_or_else(|| format!("group of order {}", self.n))
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Defining relators as supplied (possibly empty).
    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Relators forming a complete presentation on the generators: the
    /// supplied ones when present, otherwise one relator per non-tree edge
    /// of the Cayley graph.
    pub fn presentation_relators(&self) -> Vec<Word> {
        if !self.relators.is_empty() {
            return self.relators.clone();
        }
        self.cayley_relators()
    }

    pub fn cayley_relators(&self) -> Vec<Word> {
        let mut out = Vec::new();
        for &g in &self.bfs {
            for (j, &s) in self.generators.iter().enumerate() {
                let h = self.mul(g, s);
                if self.tree[h] == Some((g, j)) {
                    continue;
                }
                let mut w = self.word(g);
                w.push(j as i32 + 1);
                w.extend(invert_word(&self.word(h)));
                out.push(w);
            }
        }
        out
    }

    pub fn tree_parent(&self, g: usize) -> Option<(usize, usize)> {
        self.tree[g]
    }

    /// Elements in breadth-first order from the identity; parents precede children.
    pub fn bfs_order(&self) -> &[usize] {
        &self.bfs
    }

    /// Position of every element in [`FiniteGroup::bfs_order`].
    pub fn bfs_rank(&self) -> Vec<usize> {
        let mut rank = vec![0; self.n];
        for (i, &g) in self.bfs.iter().enumerate() {
            rank[g] = i;
        }
        rank
    }

    /// Canonical word for `g` read off the spanning tree.
    pub fn word(&self, mut g: usize) -> Word {
        let mut w = Vec::new();
        while let Some((parent, j)) = self.tree[g] {
            w.push(j as i32 + 1);
            g = parent;
        }
        w.reverse();
        w
    }

    pub fn eval_word(&self, w: &[i32]) -> usize {
        w.iter().fold(self.identity, |acc, &l| {
            let s = self.generators[l.unsigned_abs() as usize - 1];
            self.mul(acc, if l > 0 { s } else { self.inv(s) })
        })
    }

    pub fn pow(&self, g: usize, e: u64) -> usize {
        (0..e).fold(self.identity, |acc, _| self.mul(acc, g))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.n).map(|g| self.element_order(g)).fold(1, lcm)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        (0..self.n).any(|g| self.element_order(g) == self.n)
    }

    /// Whether the order is a power of `p` (the trivial group counts).
    pub fn is_p_group(&self, p: u32) -> bool {
        let mut n = self.n;
        while n % p as usize == 0 {
            n /= p as usize;
        }
        n == 1
    }

    pub fn prime_divisors(&self) -> Vec<u32> {
        let mut out = Vec::new();
        let mut n = self.n;
        let mut d = 2;
        while n > 1 {
            if n % d == 0 {
                out.push(d as u32);
                while n % d == 0 {
                    n /= d;
                }
            }
            d += 1;
        }
        out
    }

    pub fn subgroup(&self, elements: &[usize]) -> Result<Subgroup, GroupError> {
        let mut els: Vec<usize> = elements.to_vec();
        els.sort_unstable();
        els.dedup();
        if els.iter().any(|&g| g >= self.n) {
            return Err(GroupError::NotSubgroup("element index out of range".into()));
        }
        if els.binary_search(&self.identity).is_err() {
            return Err(GroupError::NotSubgroup("identity missing".into()));
        }
        for &a in &els {
            for &b in &els {
                if els.binary_search(&self.mul(a, b)).is_err() {
                    return Err(GroupError::NotSubgroup(format!("{a}*{b} leaves the subset")));
                }
            }
        }
        Ok(Subgroup { elements: els })
    }

    pub fn generated_subgroup(&self, gens: &[usize]) -> Subgroup {
        let mut seen = vec![false; self.n];
        seen[self.identity] = true;
        let mut els = vec![self.identity];
        let mut i = 0;
        while i < els.len() {
            for &s in gens {
                let h = self.mul(els[i], s);
                if !seen[h] {
                    seen[h] = true;
                    els.push(h);
                }
            }
            i += 1;
        }
        els.sort_unstable();
        Subgroup { elements: els }
    }

    /// The subgroup as a group in its own right, generated greedily by least
    /// index. Returns the group and the embedding `local index -> index here`.
    pub fn subgroup_as_group(&self, h: &Subgroup) -> (FiniteGroup, Vec<usize>) {
        let mut gens = Vec::new();
        let mut span = self.generated_subgroup(&gens);
        for &g in &h.elements {
            if !span.contains(g) {
                gens.push(g);
                span = self.generated_subgroup(&gens);
            }
        }
        let (group, elems) = FiniteGroup::from_closure(
            &gens,
            self.identity,
            |&a, &b| self.mul(a, b),
            Vec::new(),
            None,
        )
        .expect("a subgroup of a valid group is a valid group");
        (group, elems)
    }

    /// Left coset representatives of `h`: the identity for `h` itself, the
    /// least element index for every other coset.
    pub fn left_coset_reps(&self, h: &Subgroup) -> Vec<usize> {
        let mut covered = vec![false; self.n];
        let mut reps = vec![self.identity];
        for &x in &h.elements {
            covered[x] = true;
        }
        for t in 0..self.n {
            if covered[t] {
                continue;
            }
            reps.push(t);
            for &x in &h.elements {
                covered[self.mul(t, x)] = true;
            }
        }
        reps
    }

    /// Subgroups generated by at most two elements (enough for the groups in
    /// the catalog), deduplicated and sorted by order then elements.
    pub fn small_subgroups(&self) -> Vec<Subgroup> {
        let mut set = std::collections::BTreeSet::new();
        for a in 0..self.n {
            for b in a..self.n {
                let s = self.generated_subgroup(&[a, b]);
                set.insert((s.elements.len(), s.elements));
            }
        }
        set.into_iter().map(|(_, elements)| Subgroup { elements }).collect()
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn invert_word(w: &[i32]) -> Word {
    w.iter().rev().map(|&l| -l).collect()
}

/// A subgroup designated by its sorted element indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }
}

#[derive(Serialize, Deserialize)]
struct GroupJson {
    order: usize,
    table: Vec<Vec<usize>>,
    generators: Vec<usize>,
    #[serde(default)]
    relators: Vec<Word>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
}

impl Serialize for FiniteGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GroupJson {
            order: self.n,
            table: (0..self.n).map(|a| (0..self.n).map(|b| self.mul(a, b)).collect()).collect(),
            generators: self.generators.clone(),
            relators: self.relators.clone(),
            name: self.name.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FiniteGroup {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = GroupJson::deserialize(d)?;
        if j.order != j.table.len() {
            return Err(serde::de::Error::custom(format!(
                "order {} does not match table size {}",
                j.order,
                j.table.len()
            )));
        }
        FiniteGroup::from_table(j.table, j.generators, j.relators, j.name)
            .map_err(serde::de::Error::custom)
    }
}
