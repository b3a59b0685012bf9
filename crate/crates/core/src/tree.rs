//! Ordered labeled trees, forests with unordered roots, and rooted unordered
//! trees, together with the maximal decreasing subtree and the split of an
//! ordered tree into its decreasing core plus the forest hanging below it.
//!
//! Text form (whitespace between tokens is ignored):
//!
//! ```text
//! tree   := label | label '(' tree (',' tree)* ')'
//! label  := [0-9]+
//! forest := tree (';' tree)*        roots strictly increasing
//! ```

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub type Label = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("duplicate label {0}")]
    DuplicateLabel(Label),
    #[error("label set is not {{0, ..., n}}")]
    NotPrefixLabeled,
    #[error("forest roots must be strictly increasing ({prev} is followed by {next})")]
    RootOrder { prev: Label, next: Label },
    #[error("z-part is not a decreasing tree with increasing leaves attached")]
    NotZShape,
    #[error("forest roots {roots:?} differ from the increasing leaves {leaves:?} of the z-part")]
    RootSetMismatch {
        roots: Vec<Label>,
        leaves: Vec<Label>,
    },
    #[error("label {0} occurs both in the z-part and below a forest root")]
    LabelOverlap(Label),
}

/// Rooted tree with significant child order and pairwise distinct labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedTree {
    label: Label,
    children: Vec<OrderedTree>,
}

/// The maximal decreasing subtree of an ordered tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MdResult {
    pub md_vertices: BTreeSet<Label>,
    pub md_edge_count: usize,
    /// `(parent in MD, child outside MD)` in preorder.
    pub increasing_leaf_attachments: Vec<(Label, Label)>,
}

fn check_distinct<'a>(
    labels: impl IntoIterator<Item = &'a Label>,
) -> Result<BTreeSet<Label>, TreeError> {
    let mut seen = BTreeSet::new();
    for &l in labels {
        if !seen.insert(l) {
            return Err(TreeError::DuplicateLabel(l));
        }
    }
    Ok(seen)
}

impl OrderedTree {
    pub fn leaf(label: Label) -> Self {
        OrderedTree {
            label,
            children: Vec::new(),
        }
    }

    /// Builds a tree, rejecting repeated labels.
    pub fn new(label: Label, children: Vec<OrderedTree>) -> Result<Self, TreeError> {
        let t = OrderedTree { label, children };
        check_distinct(&t.labels())?;
        Ok(t)
    }

    /// Caller guarantees distinct labels.
    pub(crate) fn new_unchecked(label: Label, children: Vec<OrderedTree>) -> Self {
        OrderedTree { label, children }
    }

    /// Builds a tree from its preorder out-degree sequence and the labels of
    /// the vertices in the same preorder. Caller guarantees a valid sequence
    /// and distinct labels.
    pub(crate) fn from_preorder(degrees: &[usize], labels: &[Label]) -> Self {
        fn build(degrees: &[usize], labels: &[Label], pos: &mut usize) -> OrderedTree {
            let i = *pos;
            *pos += 1;
            let children = (0..degrees[i])
                .map(|_| build(degrees, labels, pos))
                .collect();
            OrderedTree {
                label: labels[i],
                children,
            }
        }
        debug_assert_eq!(degrees.len(), labels.len());
        build(degrees, labels, &mut 0)
    }

    pub fn label(&self) -> Label {
        self.label
    }

    pub fn children(&self) -> &[OrderedTree] {
        &self.children
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// Number of vertices.
    pub fn len(&self) -> usize {
        1 + self.children.iter().map(OrderedTree::len).sum::<usize>()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Labels in preorder.
    pub fn labels(&self) -> Vec<Label> {
        let mut out = Vec::new();
        self.visit(&mut |t| out.push(t.label));
        out
    }

    fn visit<'a>(&'a self, f: &mut impl FnMut(&'a OrderedTree)) {
        f(self);
        for c in &self.children {
            c.visit(f);
        }
    }

    /// `n` when the label set is exactly `{0, ..., n}`.
    pub fn prefix_size(&self) -> Result<usize, TreeError> {
        let labels = self.labels();
        let n = labels.len() - 1;
        let mut seen = vec![false; labels.len()];
        for l in labels {
            match seen.get_mut(l as usize) {
                Some(s) if !*s => *s = true,
                _ => return Err(TreeError::NotPrefixLabeled),
            }
        }
        Ok(n)
    }

    /// Every edge goes from a larger label to a smaller one.
    pub fn is_decreasing(&self) -> bool {
        self.children
            .iter()
            .all(|c| c.label < self.label && c.is_decreasing())
    }

    /// Edge count of the maximal decreasing subtree, without allocating.
    pub fn md_edge_count(&self) -> usize {
        self.children
            .iter()
            .filter(|c| c.label < self.label)
            .map(|c| 1 + c.md_edge_count())
            .sum()
    }

    /// The maximal subtree containing the root in which every edge decreases.
    pub fn md_subtree(&self) -> MdResult {
        fn walk(t: &OrderedTree, md: &mut BTreeSet<Label>, att: &mut Vec<(Label, Label)>) {
            md.insert(t.label);
            for c in &t.children {
                if c.label < t.label {
                    walk(c, md, att);
                } else {
                    att.push((t.label, c.label));
                }
            }
        }
        let mut md_vertices = BTreeSet::new();
        let mut increasing_leaf_attachments = Vec::new();
        walk(self, &mut md_vertices, &mut increasing_leaf_attachments);
        MdResult {
            md_edge_count: md_vertices.len() - 1,
            md_vertices,
            increasing_leaf_attachments,
        }
    }

    /// The `k` with `self` in `O(n, k)`. Requires labels `{0, ..., n}`.
    pub fn classify_o(&self) -> Result<usize, TreeError> {
        self.prefix_size()?;
        Ok(self.md_edge_count())
    }

    /// `Some(k)` when every vertex outside the maximal decreasing subtree is a
    /// leaf, i.e. the tree is a decreasing tree with `k` edges plus increasing
    /// leaves. Works on any label set.
    pub fn z_shape(&self) -> Option<usize> {
        let mut k = 0;
        for c in &self.children {
            if c.label < self.label {
                k += 1 + c.z_shape()?;
            } else if !c.is_leaf() {
                return None;
            }
        }
        Some(k)
    }

    /// [`Self::z_shape`] for trees labeled `{0, ..., n}`.
    pub fn is_z_tree(&self) -> Result<Option<usize>, TreeError> {
        self.prefix_size()?;
        Ok(self.z_shape())
    }

    /// Splits the tree into the maximal decreasing subtree with its increasing
    /// children kept as bare leaves, and the forest of full subtrees rooted at
    /// those children. The attachment children appear in both parts.
    pub fn decompose(&self) -> Result<(OrderedTree, OrderedForest), TreeError> {
        self.prefix_size()?;
        Ok(self.split_unchecked())
    }

    pub(crate) fn split_unchecked(&self) -> (OrderedTree, OrderedForest) {
        fn walk(t: &OrderedTree, forest: &mut Vec<OrderedTree>) -> OrderedTree {
            let children = t
                .children
                .iter()
                .map(|c| {
                    if c.label < t.label {
                        walk(c, forest)
                    } else {
                        forest.push(c.clone());
                        OrderedTree::leaf(c.label)
                    }
                })
                .collect();
            OrderedTree {
                label: t.label,
                children,
            }
        }
        let mut trees = Vec::new();
        let z = walk(self, &mut trees);
        trees.sort_unstable_by_key(OrderedTree::label);
        (z, OrderedForest { trees })
    }

    /// Inverse of [`Self::decompose`]: replaces each increasing leaf of
    /// `z_part` by the forest tree with the same root label.
    pub fn graft(z_part: &OrderedTree, y_part: &OrderedForest) -> Result<OrderedTree, TreeError> {
        if z_part.z_shape().is_none() {
            return Err(TreeError::NotZShape);
        }
        let leaves: Vec<Label> = {
            let mut l: Vec<Label> = z_part
                .md_subtree()
                .increasing_leaf_attachments
                .into_iter()
                .map(|(_, c)| c)
                .collect();
            l.sort_unstable();
            l
        };
        let roots: Vec<Label> = y_part.roots().collect();
        if leaves != roots {
            return Err(TreeError::RootSetMismatch { roots, leaves });
        }
        let z_labels: BTreeSet<Label> = z_part.labels().into_iter().collect();
        for t in y_part.trees() {
            for l in t.labels().into_iter().skip(1) {
                if z_labels.contains(&l) {
                    return Err(TreeError::LabelOverlap(l));
                }
            }
        }

        fn walk(t: &OrderedTree, y: &OrderedForest) -> OrderedTree {
            let children = t
                .children
                .iter()
                .map(|c| {
                    if c.label < t.label {
                        walk(c, y)
                    } else {
                        y.tree_rooted_at(c.label).expect("root set checked").clone()
                    }
                })
                .collect();
            OrderedTree {
                label: t.label,
                children,
            }
        }
        Ok(walk(z_part, y_part))
    }
}

impl fmt::Display for OrderedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label)?;
        if !self.children.is_empty() {
            f.write_str("(")?;
            for (i, c) in self.children.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{c}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl FromStr for OrderedTree {
    type Err = TreeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser::new(s);
        let t = p.tree()?;
        p.expect_end()?;
        check_distinct(&t.labels())?;
        Ok(t)
    }
}

/// Parses the text form. Same as `text.parse()`.
pub fn parse_tree(text: &str) -> Result<OrderedTree, TreeError> {
    text.parse()
}

pub fn render_tree(t: &OrderedTree) -> String {
    t.to_string()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str) -> Self {
        Parser {
            src: s.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error(&self, msg: impl Into<String>) -> TreeError {
        TreeError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn label(&mut self) -> Result<Label, TreeError> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a label"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        digits.parse().map_err(|_| TreeError::Syntax {
            pos: start,
            msg: format!("label {digits} is too large"),
        })
    }

    fn tree(&mut self) -> Result<OrderedTree, TreeError> {
        let label = self.label()?;
        let mut children = Vec::new();
        if self.peek() == Some(b'(') {
            self.pos += 1;
            loop {
                children.push(self.tree()?);
                match self.peek() {
                    Some(b',') => self.pos += 1,
                    Some(b')') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return Err(self.error("expected ',' or ')'")),
                }
            }
        }
        Ok(OrderedTree { label, children })
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn expect_end(&mut self) -> Result<(), TreeError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input"))
        }
    }
}

/// Ordered trees whose roots carry no order among themselves. Stored with
/// roots strictly increasing so that equal forests compare equal.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedForest {
    trees: Vec<OrderedTree>,
}

impl OrderedForest {
    /// Sorts the trees by root label and rejects repeated labels.
    pub fn new(mut trees: Vec<OrderedTree>) -> Result<Self, TreeError> {
        trees.sort_by_key(OrderedTree::label);
        check_distinct(
            trees
                .iter()
                .flat_map(|t| t.labels())
                .collect::<Vec<_>>()
                .iter(),
        )?;
        Ok(OrderedForest { trees })
    }

    /// Caller guarantees increasing roots and distinct labels.
    pub(crate) fn new_unchecked(trees: Vec<OrderedTree>) -> Self {
        debug_assert!(trees.windows(2).all(|w| w[0].label < w[1].label));
        OrderedForest { trees }
    }

    pub fn trees(&self) -> &[OrderedTree] {
        &self.trees
    }

    pub fn roots(&self) -> impl Iterator<Item = Label> + '_ {
        self.trees.iter().map(OrderedTree::label)
    }

    pub fn tree_rooted_at(&self, root: Label) -> Option<&OrderedTree> {
        self.trees
            .binary_search_by_key(&root, OrderedTree::label)
            .ok()
            .map(|i| &self.trees[i])
    }

    /// Number of trees.
    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.trees.iter().map(OrderedTree::len).sum()
    }
}

impl fmt::Display for OrderedForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.trees.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl FromStr for OrderedForest {
    type Err = TreeError;

    /// The empty string (or only whitespace) is the empty forest.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser::new(s);
        let mut trees: Vec<OrderedTree> = Vec::new();
        if !p.at_end() {
            loop {
                let t = p.tree()?;
                if let Some(prev) = trees.last() {
                    if prev.label >= t.label {
                        return Err(TreeError::RootOrder {
                            prev: prev.label,
                            next: t.label,
                        });
                    }
                }
                trees.push(t);
                match p.peek() {
                    Some(b';') => p.pos += 1,
                    None => break,
                    _ => return Err(p.error("expected ';' or end of input")),
                }
            }
        }
        OrderedForest::new(trees)
    }
}

/// Rooted labeled tree with unordered children, kept in canonical form:
/// children sorted by the smallest label in their subtree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootedUnorderedTree {
    label: Label,
    children: Vec<RootedUnorderedTree>,
}

impl RootedUnorderedTree {
    pub fn new(label: Label, children: Vec<RootedUnorderedTree>) -> Result<Self, TreeError> {
        let t = Self::new_unchecked(label, children);
        let mut labels = Vec::new();
        t.collect_labels(&mut labels);
        check_distinct(&labels)?;
        Ok(t)
    }

    pub(crate) fn new_unchecked(label: Label, mut children: Vec<RootedUnorderedTree>) -> Self {
        children.sort_by_cached_key(RootedUnorderedTree::min_label);
        RootedUnorderedTree { label, children }
    }

    /// Builds the tree rooted at `root` from a parent table, where
    /// `parent[v] == Some(p)` makes `p` the parent of `v`. Caller guarantees
    /// the table describes a tree on the indices.
    pub(crate) fn from_parents(root: usize, parent: &[Option<usize>], offset: Label) -> Self {
        let mut kids: Vec<Vec<usize>> = vec![Vec::new(); parent.len()];
        for (v, p) in parent.iter().enumerate() {
            if let Some(p) = *p {
                kids[p].push(v);
            }
        }
        fn build(v: usize, kids: &[Vec<usize>], offset: Label) -> RootedUnorderedTree {
            let children = kids[v].iter().map(|&c| build(c, kids, offset)).collect();
            RootedUnorderedTree::new_unchecked(v as Label + offset, children)
        }
        build(root, &kids, offset)
    }

    pub fn label(&self) -> Label {
        self.label
    }

    pub fn children(&self) -> &[RootedUnorderedTree] {
        &self.children
    }

    pub fn len(&self) -> usize {
        1 + self
            .children
            .iter()
            .map(RootedUnorderedTree::len)
            .sum::<usize>()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn min_label(&self) -> Label {
        self.children
            .iter()
            .map(RootedUnorderedTree::min_label)
            .fold(self.label, Label::min)
    }

    fn collect_labels(&self, out: &mut Vec<Label>) {
        out.push(self.label);
        for c in &self.children {
            c.collect_labels(out);
        }
    }

    /// Edges `(u, v)` with `u` nearer the root where `u` exceeds some label in
    /// the subtree of `v`.
    pub fn improper_edge_count(&self) -> usize {
        // returns (count, subtree minimum)
        fn walk(t: &RootedUnorderedTree) -> (usize, Label) {
            let mut count = 0;
            let mut min = t.label;
            for c in &t.children {
                let (cc, cm) = walk(c);
                count += cc + usize::from(t.label > cm);
                min = min.min(cm);
            }
            (count, min)
        }
        walk(self).0
    }
}

impl fmt::Display for RootedUnorderedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label)?;
        if !self.children.is_empty() {
            f.write_str("(")?;
            for (i, c) in self.children.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{c}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl FromStr for RootedUnorderedTree {
    type Err = TreeError;

    /// Same grammar as ordered trees; child order in the text is ignored.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        fn convert(t: OrderedTree) -> RootedUnorderedTree {
            let children = t.children.into_iter().map(convert).collect();
            RootedUnorderedTree::new_unchecked(t.label, children)
        }
        Ok(convert(s.parse::<OrderedTree>()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIG: &str = "9(7(1(8,4)),3,6(2,10(0,5)))";

    fn t(s: &str) -> OrderedTree {
        s.parse().unwrap()
    }

    #[test]
    fn md_of_figure_tree() {
        let md = t(FIG).md_subtree();
        assert_eq!(md.md_vertices, BTreeSet::from([9, 7, 1, 3, 6, 2]));
        assert_eq!(md.md_edge_count, 5);
        assert_eq!(
            md.increasing_leaf_attachments,
            vec![(1, 8), (1, 4), (6, 10)]
        );
        assert_eq!(t(FIG).classify_o().unwrap(), 5);
    }

    #[test]
    fn md_small_cases() {
        let md = t("0").md_subtree();
        assert_eq!(md.md_vertices, BTreeSet::from([0]));
        assert_eq!(md.md_edge_count, 0);

        let md = t("0(1,2)").md_subtree();
        assert_eq!(md.md_vertices, BTreeSet::from([0]));
        assert_eq!(md.increasing_leaf_attachments, vec![(0, 1), (0, 2)]);

        assert_eq!(t("1(0)").classify_o().unwrap(), 1);
        assert_eq!(t("0(1)").classify_o().unwrap(), 0);
    }

    #[test]
    fn classify_requires_prefix_labels() {
        assert_eq!(t("1(2)").classify_o(), Err(TreeError::NotPrefixLabeled));
        assert_eq!(t("0(3)").is_z_tree(), Err(TreeError::NotPrefixLabeled));
        assert_eq!(
            t("5(2)").decompose().unwrap_err(),
            TreeError::NotPrefixLabeled
        );
    }

    #[test]
    fn z_tree_membership() {
        assert_eq!(t("2(0,1)").is_z_tree().unwrap(), Some(2));
        assert_eq!(t("1(0(2))").is_z_tree().unwrap(), Some(1));
        assert_eq!(t("0(1(2))").is_z_tree().unwrap(), None);
    }

    #[test]
    fn decompose_figure_tree() {
        let (z, y) = t(FIG).decompose().unwrap();
        assert_eq!(z.to_string(), "9(7(1(8,4)),3,6(2,10))");
        assert_eq!(y.to_string(), "4;8;10(0,5)");
        assert_eq!(y.roots().collect::<Vec<_>>(), vec![4, 8, 10]);
        assert_eq!(z.z_shape(), Some(5));
        assert_eq!(OrderedTree::graft(&z, &y).unwrap(), t(FIG));
    }

    #[test]
    fn decompose_trivial_cases() {
        let (z, y) = t("2(1,0)").decompose().unwrap();
        assert_eq!(z, t("2(1,0)"));
        assert!(y.is_empty());
        assert_eq!(OrderedTree::graft(&z, &y).unwrap(), z);

        let (z, y) = t("0(1)").decompose().unwrap();
        assert_eq!(z, t("0(1)"));
        assert_eq!(y.to_string(), "1");
    }

    #[test]
    fn graft_hand_example() {
        let y: OrderedForest = "2(3)".parse().unwrap();
        let g = OrderedTree::graft(&t("1(0(2))"), &y).unwrap();
        assert_eq!(g, t("1(0(2(3)))"));
        let (z2, y2) = g.decompose().unwrap();
        assert_eq!((z2, y2), (t("1(0(2))"), y));
    }

    #[test]
    fn graft_errors() {
        let y: OrderedForest = "2".parse().unwrap();
        assert_eq!(
            OrderedTree::graft(&t("0(1(2))"), &y),
            Err(TreeError::NotZShape)
        );

        let y: OrderedForest = "3".parse().unwrap();
        assert!(matches!(
            OrderedTree::graft(&t("1(0(2))"), &y),
            Err(TreeError::RootSetMismatch { .. })
        ));

        let y: OrderedForest = "2(1)".parse().unwrap();
        assert_eq!(
            OrderedTree::graft(&t("1(0(2))"), &y),
            Err(TreeError::LabelOverlap(1))
        );
    }

    #[test]
    fn improper_edges() {
        let r = |s: &str| {
            s.parse::<RootedUnorderedTree>()
                .unwrap()
                .improper_edge_count()
        };
        assert_eq!(r("1(2)"), 0);
        assert_eq!(r("2(1)"), 1);
        assert_eq!(r("3(1(2))"), 1);
        // (3,2) is improper because 1 sits below 2
        assert_eq!(r("3(2(1))"), 2);
        assert_eq!(r("1(3(2))"), 1);
    }

    #[test]
    fn unordered_children_canonical() {
        let a: RootedUnorderedTree = "1(3(4),2)".parse().unwrap();
        let b: RootedUnorderedTree = "1(2,3(4))".parse().unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "1(2,3(4))");
        assert!(
            RootedUnorderedTree::new(1, vec![RootedUnorderedTree::new(1, vec![]).unwrap()])
                .is_err()
        );
    }

    #[test]
    fn parse_render() {
        assert_eq!(t("0"), OrderedTree::leaf(0));
        assert_eq!(t(FIG).to_string(), FIG);
        assert_eq!(t(" 9 ( 7 (1( 8 ,4)) ,3,6(2,10(0,5)) ) ").to_string(), FIG);
        assert_eq!(parse_tree("0(1,1)"), Err(TreeError::DuplicateLabel(1)));
        assert_eq!(render_tree(&t("3(1)")), "3(1)");
    }

    #[test]
    fn parse_errors_carry_position() {
        let pos = |s: &str| match parse_tree(s) {
            Err(TreeError::Syntax { pos, .. }) => pos,
            other => panic!("expected syntax error for {s:?}, got {other:?}"),
        };
        assert_eq!(pos(""), 0);
        assert_eq!(pos("0("), 2);
        assert_eq!(pos("0(1"), 3);
        assert_eq!(pos("0(1))"), 4);
        assert_eq!(pos("-1"), 0);
        assert_eq!(pos("0(,1)"), 2);
        assert_eq!(pos("99999999999"), 0);
    }

    #[test]
    fn forest_text() {
        let f: OrderedForest = "2;3(4,1)".parse().unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.vertex_count(), 4);
        assert_eq!(f.to_string(), "2;3(4,1)");
        assert_eq!(
            "3(4,1);2".parse::<OrderedForest>(),
            Err(TreeError::RootOrder { prev: 3, next: 2 })
        );
        assert_eq!(
            "1;2(1)".parse::<OrderedForest>(),
            Err(TreeError::DuplicateLabel(1))
        );
        assert!("".parse::<OrderedForest>().unwrap().is_empty());
        // constructor canonicalizes root order
        let g = OrderedForest::new(vec![t("3(4,1)"), t("2")]).unwrap();
        assert_eq!(g, f);
    }

    #[test]
    fn decreasing_iff_full_md() {
        for s in ["2(1,0)", "1(0)", "0", "3(2(1),0)"] {
            let tr = t(s);
            assert!(tr.is_decreasing());
            assert_eq!(tr.classify_o().unwrap(), tr.len() - 1);
        }
        assert!(!t("2(0(1))").children()[0].is_decreasing());
    }

    #[test]
    fn preorder_builder() {
        let tr = OrderedTree::from_preorder(&[2, 1, 0, 0], &[9, 7, 1, 3]);
        assert_eq!(tr.to_string(), "9(7(1),3)");
    }
}
