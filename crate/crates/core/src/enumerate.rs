//! Exhaustive generators for every tree family that the count triangles
//! describe. Nothing here uses the counting formulas; the generators are the
//! ground truth the formulas are checked against.
//!
//! Ordered trees come from ordered tree shapes (preorder out-degree
//! sequences) crossed with label permutations in lexicographic order, so the
//! output order is fixed. Rooted unordered trees come from Prüfer sequences
//! and a choice of root.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use itertools::Itertools;
use num_traits::Zero;
use rayon::prelude::*;
use thiserror::Error;

use crate::numeric::BigNat;
use crate::tree::{Label, OrderedForest, OrderedTree, RootedUnorderedTree};

/// Largest `n` the generators accept unless overridden.
pub const DEFAULT_CAP: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("cannot enumerate trees on an empty label set")]
    EmptyLabelSet,
    #[error("n={n} exceeds the enumeration cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("k={k} is out of range for n={n}")]
    OutOfRange { n: usize, k: usize },
    #[error("rooted unordered trees need at least one vertex")]
    NoVertices,
    #[error("unknown family {0:?} (expected O, Z, F, Decreasing or RootedUnordered)")]
    UnknownFamily(String),
    #[error("repeated label {0} in label set")]
    DuplicateLabel(Label),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    O,
    Z,
    F,
    Decreasing,
    RootedUnordered,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::O => "O",
            Family::Z => "Z",
            Family::F => "F",
            Family::Decreasing => "Decreasing",
            Family::RootedUnordered => "RootedUnordered",
        })
    }
}

impl FromStr for Family {
    type Err = EnumerationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "o" => Ok(Family::O),
            "z" => Ok(Family::Z),
            "f" => Ok(Family::F),
            "decreasing" | "d" => Ok(Family::Decreasing),
            "rootedunordered" | "rooted" | "r" => Ok(Family::RootedUnordered),
            _ => Err(EnumerationError::UnknownFamily(s.to_string())),
        }
    }
}

/// How [`Oracle::z_trees`] produces `Z(n, k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZMode {
    /// Every ordered tree on `[0, n]`, kept when its shape qualifies.
    Filter,
    /// Decreasing trees on each `(k+1)`-subset with the remaining labels
    /// inserted one by one as increasing leaves.
    Construct,
}

/// Census of one family at one size, keyed by the family's statistic:
/// MD edge count for O, Z and Decreasing, improper edge count for rooted
/// unordered trees, number of trees for F.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationReport {
    pub family: Family,
    pub n: usize,
    pub census: BTreeMap<usize, BigNat>,
    pub total: BigNat,
    pub elapsed: Duration,
}

impl EnumerationReport {
    fn new(family: Family, n: usize, counts: BTreeMap<usize, u64>, started: Instant) -> Self {
        let census: BTreeMap<usize, BigNat> = counts
            .into_iter()
            .map(|(k, c)| (k, BigNat::from(c)))
            .collect();
        let total = census.values().fold(BigNat::zero(), |acc, c| acc + c);
        EnumerationReport {
            family,
            n,
            census,
            total,
            elapsed: started.elapsed(),
        }
    }

    /// Census entry, zero when the statistic value never occurred.
    pub fn count(&self, k: usize) -> BigNat {
        self.census.get(&k).cloned().unwrap_or_default()
    }

    /// Census values for `k = 0..len`.
    pub fn row(&self, len: usize) -> Vec<BigNat> {
        (0..len).map(|k| self.count(k)).collect()
    }
}

/// Preorder out-degree sequences of all ordered trees with `vertices`
/// vertices, first child before siblings, smaller degrees first.
pub fn ordered_shapes(vertices: usize) -> Vec<Vec<usize>> {
    fn rec(seq: &mut Vec<usize>, pending: usize, remaining: usize, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            if pending == 0 {
                out.push(seq.clone());
            }
            return;
        }
        // this vertex fills one pending slot and opens d new ones
        let rest = remaining - 1;
        for d in 0..=rest {
            let next = pending - 1 + d;
            if next > rest || (next == 0 && rest > 0) {
                continue;
            }
            seq.push(d);
            rec(seq, next, rest, out);
            seq.pop();
        }
    }
    let mut out = Vec::new();
    if vertices > 0 {
        rec(&mut Vec::with_capacity(vertices), 1, vertices, &mut out);
    }
    out
}

fn sorted_distinct(labels: &[Label]) -> Result<Vec<Label>, EnumerationError> {
    if labels.is_empty() {
        return Err(EnumerationError::EmptyLabelSet);
    }
    let mut v = labels.to_vec();
    v.sort_unstable();
    if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
        return Err(EnumerationError::DuplicateLabel(w[0]));
    }
    Ok(v)
}

fn trees_of_shape(shape: Vec<usize>, labels: Vec<Label>) -> impl Iterator<Item = OrderedTree> {
    let len = labels.len();
    labels
        .into_iter()
        .permutations(len)
        .map(move |perm| OrderedTree::from_preorder(&shape, &perm))
}

/// Every ordered tree on `labels`, each exactly once, shapes outermost and
/// label permutations in lexicographic order within a shape.
pub fn enumerate_ordered_trees(
    labels: &[Label],
) -> Result<impl Iterator<Item = OrderedTree>, EnumerationError> {
    let labels = sorted_distinct(labels)?;
    let shapes = ordered_shapes(labels.len());
    Ok(shapes
        .into_iter()
        .flat_map(move |shape| trees_of_shape(shape, labels.clone())))
}

/// Tallies `stat` over every ordered tree on `labels`, splitting the work by
/// shape. The result does not depend on the thread count.
fn ordered_census<F>(labels: &[Label], stat: F) -> BTreeMap<usize, u64>
where
    F: Fn(&OrderedTree) -> Option<usize> + Sync,
{
    let labels = labels.to_vec();
    ordered_shapes(labels.len())
        .into_par_iter()
        .map(|shape| {
            let mut counts = BTreeMap::new();
            for t in trees_of_shape(shape, labels.clone()) {
                if let Some(k) = stat(&t) {
                    *counts.entry(k).or_insert(0u64) += 1;
                }
            }
            counts
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, c) in b {
                *a.entry(k).or_insert(0) += c;
            }
            a
        })
}

fn prefix_labels(n: usize) -> Vec<Label> {
    (0..=n as Label).collect()
}

/// Inserts `leaves` (ascending) one at a time as increasing leaves under the
/// vertices of `core`, at every child position. Removing the largest leaf
/// undoes the last insertion, so each result arises once.
fn attach_increasing_leaves(core: &OrderedTree, leaves: &[Label], out: &mut Vec<OrderedTree>) {
    let size = core
        .labels()
        .into_iter()
        .chain(leaves.iter().copied())
        .max()
        .unwrap_or(0) as usize
        + 1;
    let mut children: Vec<Vec<Label>> = vec![Vec::new(); size];
    let mut core_vertices = Vec::new();
    fn load(t: &OrderedTree, children: &mut [Vec<Label>], core: &mut Vec<Label>) {
        core.push(t.label());
        for c in t.children() {
            children[t.label() as usize].push(c.label());
            load(c, children, core);
        }
    }
    load(core, &mut children, &mut core_vertices);
    core_vertices.sort_unstable();

    fn build(v: Label, children: &[Vec<Label>]) -> OrderedTree {
        let kids = children[v as usize]
            .iter()
            .map(|&c| build(c, children))
            .collect();
        OrderedTree::new_unchecked(v, kids)
    }
    fn rec(
        root: Label,
        core: &[Label],
        leaves: &[Label],
        children: &mut Vec<Vec<Label>>,
        out: &mut Vec<OrderedTree>,
    ) {
        let Some((&leaf, rest)) = leaves.split_first() else {
            out.push(build(root, children));
            return;
        };
        for &v in core.iter().take_while(|&&v| v < leaf) {
            for pos in 0..=children[v as usize].len() {
                children[v as usize].insert(pos, leaf);
                rec(root, core, rest, children, out);
                children[v as usize].remove(pos);
            }
        }
    }
    rec(core.label(), &core_vertices, leaves, &mut children, out);
}

/// Generators with an upper bound on the size parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle {
    cap: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle { cap: DEFAULT_CAP }
    }
}

impl Oracle {
    pub fn with_cap(cap: usize) -> Self {
        Oracle { cap }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    fn check(&self, n: usize) -> Result<(), EnumerationError> {
        if n > self.cap {
            Err(EnumerationError::CapExceeded { n, cap: self.cap })
        } else {
            Ok(())
        }
    }

    /// Every ordered tree on `[0, n]`.
    pub fn ordered_trees(
        &self,
        n: usize,
    ) -> Result<impl Iterator<Item = OrderedTree>, EnumerationError> {
        self.check(n)?;
        enumerate_ordered_trees(&prefix_labels(n))
    }

    /// Census of `O(n, .)` by MD edge count.
    pub fn tabulate_o(&self, n: usize) -> Result<EnumerationReport, EnumerationError> {
        self.check(n)?;
        let started = Instant::now();
        let counts = ordered_census(&prefix_labels(n), |t| Some(t.md_edge_count()));
        Ok(EnumerationReport::new(Family::O, n, counts, started))
    }

    /// Every tree of `Z(n, k)`. Filter mode yields them in ordered-tree order;
    /// construct mode groups them by the decreasing core.
    pub fn z_trees(
        &self,
        n: usize,
        k: usize,
        mode: ZMode,
    ) -> Result<Box<dyn Iterator<Item = OrderedTree>>, EnumerationError> {
        self.check(n)?;
        match mode {
            ZMode::Filter => Ok(Box::new(
                enumerate_ordered_trees(&prefix_labels(n))?.filter(move |t| t.z_shape() == Some(k)),
            )),
            ZMode::Construct => {
                if k > n {
                    return Ok(Box::new(std::iter::empty()));
                }
                let all = prefix_labels(n);
                let iter = all
                    .clone()
                    .into_iter()
                    .combinations(k + 1)
                    .flat_map(move |core_set| {
                        let leaves: Vec<Label> = all
                            .iter()
                            .copied()
                            .filter(|l| !core_set.contains(l))
                            .collect();
                        enumerate_ordered_trees(&core_set)
                            .expect("nonempty distinct labels")
                            .filter(OrderedTree::is_decreasing)
                            .flat_map(move |core| {
                                let mut out = Vec::new();
                                attach_increasing_leaves(&core, &leaves, &mut out);
                                out
                            })
                    });
                Ok(Box::new(iter))
            }
        }
    }

    /// Census of `Z(n, .)` over all `k`, in the given mode.
    pub fn tabulate_z(&self, n: usize, mode: ZMode) -> Result<EnumerationReport, EnumerationError> {
        self.check(n)?;
        let started = Instant::now();
        let counts = match mode {
            ZMode::Filter => ordered_census(&prefix_labels(n), OrderedTree::z_shape),
            ZMode::Construct => (0..=n)
                .map(|k| Ok((k, self.z_trees(n, k, mode)?.count() as u64)))
                .collect::<Result<_, EnumerationError>>()?,
        };
        Ok(EnumerationReport::new(Family::Z, n, counts, started))
    }

    /// Every forest on `[1, n]` with `k` trees, roots ascending.
    ///
    /// A forest with ascending roots is the same thing as an ordered tree on
    /// `{0} + [1, n]` rooted at 0 whose root children increase, so this walks
    /// the shapes whose root has `k` children and keeps increasing root rows.
    pub fn forests(
        &self,
        n: usize,
        k: usize,
    ) -> Result<impl Iterator<Item = OrderedForest>, EnumerationError> {
        self.check(n)?;
        if k > n {
            return Err(EnumerationError::OutOfRange { n, k });
        }
        let labels: Vec<Label> = (1..=n as Label).collect();
        let shapes: Vec<Vec<usize>> = ordered_shapes(n + 1)
            .into_iter()
            .filter(|s| s[0] == k)
            .collect();
        Ok(shapes.into_iter().flat_map(move |shape| {
            labels
                .clone()
                .into_iter()
                .permutations(n)
                .filter_map(move |perm| {
                    let mut full = Vec::with_capacity(n + 1);
                    full.push(0);
                    full.extend(perm);
                    let t = OrderedTree::from_preorder(&shape, &full);
                    let increasing = t.children().windows(2).all(|w| w[0].label() < w[1].label());
                    increasing.then(|| OrderedForest::new_unchecked(t.children().to_vec()))
                })
        }))
    }

    /// Every rooted labeled unordered tree on `[1, n]`.
    pub fn rooted_unordered(
        &self,
        n: usize,
    ) -> Result<impl Iterator<Item = RootedUnorderedTree>, EnumerationError> {
        self.check(n)?;
        if n == 0 {
            return Err(EnumerationError::NoVertices);
        }
        let sequences = (0..n.saturating_sub(2))
            .map(|_| 0..n)
            .multi_cartesian_product();
        // multi_cartesian_product of nothing is empty, but n <= 2 has one empty sequence
        let sequences: Box<dyn Iterator<Item = Vec<usize>>> = if n <= 2 {
            Box::new(std::iter::once(Vec::new()))
        } else {
            Box::new(sequences)
        };
        Ok(sequences.flat_map(move |seq| {
            let adj = prufer_adjacency(&seq, n);
            (0..n).map(move |root| {
                let parent = root_at(&adj, root);
                RootedUnorderedTree::from_parents(root, &parent, 1)
            })
        }))
    }

    /// Census of rooted unordered trees on `[1, n]` by improper edge count.
    pub fn tabulate_rooted(&self, n: usize) -> Result<EnumerationReport, EnumerationError> {
        let started = Instant::now();
        let mut counts = BTreeMap::new();
        for t in self.rooted_unordered(n)? {
            *counts.entry(t.improper_edge_count()).or_insert(0u64) += 1;
        }
        Ok(EnumerationReport::new(
            Family::RootedUnordered,
            n,
            counts,
            started,
        ))
    }

    /// Census of forests on `[1, n]` by number of trees, for every `k`.
    pub fn tabulate_f(&self, n: usize) -> Result<EnumerationReport, EnumerationError> {
        self.check(n)?;
        let started = Instant::now();
        let counts = (0..=n)
            .map(|k| Ok((k, self.forests(n, k)?.count() as u64)))
            .collect::<Result<_, EnumerationError>>()?;
        Ok(EnumerationReport::new(Family::F, n, counts, started))
    }

    /// Decreasing ordered trees on `[0, n]`, reported under `k = n`.
    pub fn tabulate_decreasing(&self, n: usize) -> Result<EnumerationReport, EnumerationError> {
        self.check(n)?;
        let started = Instant::now();
        let counts = ordered_census(&prefix_labels(n), |t| t.is_decreasing().then_some(n));
        Ok(EnumerationReport::new(
            Family::Decreasing,
            n,
            counts,
            started,
        ))
    }

    /// Runs the generator for `family` at size `n`. With `k` given, the census
    /// is restricted to that statistic value.
    pub fn tabulate_family(
        &self,
        family: Family,
        n: usize,
        k: Option<usize>,
    ) -> Result<EnumerationReport, EnumerationError> {
        let started = Instant::now();
        let mut report = match (family, k) {
            (Family::Z, Some(k)) => {
                let c = self.z_trees(n, k, ZMode::Filter)?.count() as u64;
                EnumerationReport::new(family, n, BTreeMap::from([(k, c)]), started)
            }
            (Family::F, Some(k)) => {
                let c = self.forests(n, k)?.count() as u64;
                EnumerationReport::new(family, n, BTreeMap::from([(k, c)]), started)
            }
            (Family::O, _) => self.tabulate_o(n)?,
            (Family::Z, None) => self.tabulate_z(n, ZMode::Filter)?,
            (Family::F, None) => self.tabulate_f(n)?,
            (Family::Decreasing, _) => self.tabulate_decreasing(n)?,
            (Family::RootedUnordered, _) => self.tabulate_rooted(n)?,
        };
        if let Some(k) = k {
            let c = report.count(k);
            report.census = BTreeMap::from([(k, c.clone())]);
            report.total = c;
        }
        report.elapsed = started.elapsed();
        Ok(report)
    }
}

/// Adjacency lists of the labeled tree on `0..n` encoded by a Prüfer sequence.
fn prufer_adjacency(seq: &[usize], n: usize) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    if n == 1 {
        return adj;
    }
    let mut degree = vec![1usize; n];
    for &v in seq {
        degree[v] += 1;
    }
    for &v in seq {
        let leaf = (0..n)
            .find(|&u| degree[u] == 1)
            .expect("a leaf always exists");
        adj[leaf].push(v);
        adj[v].push(leaf);
        degree[leaf] -= 1;
        degree[v] -= 1;
    }
    let (u, w) = (0..n)
        .filter(|&u| degree[u] == 1)
        .collect_tuple()
        .expect("two vertices remain");
    adj[u].push(w);
    adj[w].push(u);
    adj
}

fn root_at(adj: &[Vec<usize>], root: usize) -> Vec<Option<usize>> {
    let mut parent = vec![None; adj.len()];
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![root];
    seen[root] = true;
    while let Some(u) = stack.pop() {
        for &w in &adj[u] {
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some(u);
                stack.push(w);
            }
        }
    }
    parent
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn nats(v: &[u64]) -> Vec<BigNat> {
        v.iter().copied().map(BigNat::from).collect()
    }

    #[test]
    fn shape_counts_are_catalan() {
        let catalan = [1usize, 1, 2, 5, 14, 42, 132, 429];
        for (n, &c) in catalan.iter().enumerate() {
            assert_eq!(ordered_shapes(n + 1).len(), c);
        }
        assert!(ordered_shapes(0).is_empty());
    }

    #[test]
    fn ordered_tree_counts() {
        assert_eq!(enumerate_ordered_trees(&[0]).unwrap().count(), 1);
        assert_eq!(enumerate_ordered_trees(&[0, 1, 2]).unwrap().count(), 12);
        assert_eq!(enumerate_ordered_trees(&[0, 1, 2, 3]).unwrap().count(), 120);
        assert_eq!(
            enumerate_ordered_trees(&[]).err(),
            Some(EnumerationError::EmptyLabelSet)
        );
        assert_eq!(
            enumerate_ordered_trees(&[1, 1]).err(),
            Some(EnumerationError::DuplicateLabel(1))
        );
    }

    #[test]
    fn ordered_trees_on_two_labels() {
        let got: Vec<String> = enumerate_ordered_trees(&[0, 1])
            .unwrap()
            .map(|t| t.to_string())
            .collect();
        assert_eq!(got, vec!["0(1)", "1(0)"]);
    }

    #[test]
    fn o_census_small() {
        let o = Oracle::default();
        assert_eq!(o.tabulate_o(1).unwrap().row(2), nats(&[1, 1]));
        assert_eq!(o.tabulate_o(2).unwrap().row(3), nats(&[5, 4, 3]));
        let r3 = o.tabulate_o(3).unwrap();
        assert_eq!(r3.row(4), nats(&[46, 34, 25, 15]));
        assert_eq!(r3.total, BigNat::from(120u8));
    }

    #[test]
    fn z21_members() {
        let o = Oracle::default();
        let filter: BTreeSet<String> = o
            .z_trees(2, 1, ZMode::Filter)
            .unwrap()
            .map(|t| t.to_string())
            .collect();
        let built: BTreeSet<String> = o
            .z_trees(2, 1, ZMode::Construct)
            .unwrap()
            .map(|t| t.to_string())
            .collect();
        assert_eq!(filter, built);
        let expected: BTreeSet<String> = ["1(0(2))", "2(0(1))", "1(2,0)", "1(0,2)"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(filter, expected);
        let z10: Vec<String> = o
            .z_trees(1, 0, ZMode::Construct)
            .unwrap()
            .map(|t| t.to_string())
            .collect();
        assert_eq!(z10, vec!["0(1)"]);
    }

    #[test]
    fn forest_examples() {
        let o = Oracle::default();
        let fig: OrderedForest = "2;3(4,1)".parse().unwrap();
        assert!(o.forests(4, 2).unwrap().any(|f| f == fig));
        let f33: Vec<String> = o.forests(3, 3).unwrap().map(|f| f.to_string()).collect();
        assert_eq!(f33, vec!["1;2;3"]);
        assert_eq!(o.forests(3, 2).unwrap().count(), 6);
        assert_eq!(o.forests(0, 0).unwrap().count(), 1);
        assert_eq!(o.forests(3, 0).unwrap().count(), 0);
        assert!(o.forests(2, 3).is_err());
    }

    #[test]
    fn rooted_unordered_small() {
        let o = Oracle::default();
        assert_eq!(o.rooted_unordered(1).unwrap().count(), 1);
        assert_eq!(o.rooted_unordered(2).unwrap().count(), 2);
        let r3 = o.tabulate_rooted(3).unwrap();
        assert_eq!(r3.total, BigNat::from(9u8));
        assert_eq!(r3.row(3), nats(&[2, 4, 3]));
        assert_eq!(
            o.rooted_unordered(0).err(),
            Some(EnumerationError::NoVertices)
        );
    }

    #[test]
    fn family_reports() {
        let o = Oracle::default();
        assert_eq!(
            o.tabulate_family(Family::Decreasing, 3, None)
                .unwrap()
                .total,
            BigNat::from(15u8)
        );
        let f3 = o.tabulate_family(Family::F, 3, None).unwrap();
        assert_eq!(f3.row(4), nats(&[0, 12, 6, 1]));
        assert_eq!(
            o.tabulate_family(Family::O, 2, None).unwrap().row(3),
            nats(&[5, 4, 3])
        );
        let z = o.tabulate_family(Family::Z, 3, Some(1)).unwrap();
        assert_eq!(z.total, BigNat::from(18u8));
        let o1 = o.tabulate_family(Family::O, 3, Some(1)).unwrap();
        assert_eq!(o1.census.len(), 1);
        assert_eq!(o1.total, BigNat::from(34u8));
    }

    #[test]
    fn cap_is_enforced() {
        let o = Oracle::with_cap(3);
        assert_eq!(
            o.tabulate_o(4).err(),
            Some(EnumerationError::CapExceeded { n: 4, cap: 3 })
        );
        assert!(o.tabulate_family(Family::RootedUnordered, 4, None).is_err());
        assert!(o.z_trees(4, 1, ZMode::Construct).is_err());
    }

    #[test]
    fn family_names() {
        assert_eq!("decreasing".parse::<Family>().unwrap(), Family::Decreasing);
        assert_eq!(
            "RootedUnordered".parse::<Family>().unwrap(),
            Family::RootedUnordered
        );
        assert!("X".parse::<Family>().is_err());
    }
}
