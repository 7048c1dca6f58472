//! Labeled, directed Brauer diagrams.
//!
//! A diagram on `k` top and `k` bottom vertices is a perfect matching whose
//! edges carry a label in `ℤ/m`. Reversing an edge and negating its label
//! gives an equivalent diagram; the canonical representative orients every
//! edge from the smaller to the larger vertex in the order
//! `t1 < … < tk < b1 < … < bk` and keeps the edge list sorted.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::coeff::normalize_loop_label;
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Row {
    Top,
    Bottom,
}

/// A vertex of a diagram. `index` is 1-based.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Vertex {
    pub row: Row,
    pub index: usize,
}

impl Vertex {
    pub fn top(index: usize) -> Self {
        Vertex { row: Row::Top, index }
    }

    pub fn bottom(index: usize) -> Self {
        Vertex { row: Row::Bottom, index }
    }

    /// Position in the total order for a diagram with `k` vertices per row.
    fn slot(self, k: usize) -> usize {
        match self.row {
            Row::Top => self.index - 1,
            Row::Bottom => k + self.index - 1,
        }
    }

    fn from_slot(slot: usize, k: usize) -> Self {
        if slot < k {
            Vertex::top(slot + 1)
        } else {
            Vertex::bottom(slot - k + 1)
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.row {
            Row::Top => write!(f, "t{}", self.index),
            Row::Bottom => write!(f, "b{}", self.index),
        }
    }
}

impl FromStr for Vertex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad vertex {s:?}"));
        let (row, rest) = match s.chars().next() {
            Some('t') => (Row::Top, &s[1..]),
            Some('b') => (Row::Bottom, &s[1..]),
            _ => return Err(bad()),
        };
        let index: usize = rest.parse().map_err(|_| bad())?;
        if index == 0 {
            return Err(bad());
        }
        Ok(Vertex { row, index })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Edge {
    pub from: Vertex,
    pub to: Vertex,
    pub label: u32,
}

/// Canonical labeled directed Brauer diagram.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LabeledDiagram {
    k: usize,
    m: u32,
    edges: Vec<Edge>,
}

/// Outcome of concatenating two diagrams: the closed loops that were removed
/// (labels normalized to `min(ℓ, m − ℓ)`, sorted) and the remaining diagram.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CompositionResult {
    pub loops: Vec<u32>,
    pub diagram: LabeledDiagram,
}

/// Brings raw `(from, to, label)` edges into canonical form.
pub fn canonicalize(raw: &[(Vertex, Vertex, u32)], k: usize, m: u32) -> Result<LabeledDiagram> {
    if m == 0 {
        return Err(Error::BadModulus { expected: 1, got: 0 });
    }
    let mut seen = vec![false; 2 * k];
    let mut edges = Vec::with_capacity(raw.len());
    for &(a, b, label) in raw {
        if label >= m {
            return Err(Error::BadLabel { label, m });
        }
        for v in [a, b] {
            if v.index == 0 || v.index > k {
                return Err(Error::NotAMatching(format!("vertex {v} outside 1..={k}")));
            }
            let s = v.slot(k);
            if seen[s] {
                return Err(Error::NotAMatching(format!("vertex {v} has degree > 1")));
            }
            seen[s] = true;
        }
        if a == b {
            return Err(Error::NotAMatching(format!("self-loop at {a}")));
        }
        edges.push(if a < b {
            Edge { from: a, to: b, label }
        } else {
            Edge { from: b, to: a, label: (m - label) % m }
        });
    }
    if let Some(s) = seen.iter().position(|x| !x) {
        return Err(Error::NotAMatching(format!("vertex {} is not covered", Vertex::from_slot(s, k))));
    }
    edges.sort();
    Ok(LabeledDiagram { k, m, edges })
}

impl LabeledDiagram {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn identity(k: usize, m: u32) -> Self {
        Self::marked_identity(k, m, &BTreeSet::new())
    }

    /// Identity matching with label 1 on each strand listed in `marks`.
    pub fn marked_identity(k: usize, m: u32, marks: &BTreeSet<usize>) -> Self {
        let edges = (1..=k)
            .map(|i| Edge {
                from: Vertex::top(i),
                to: Vertex::bottom(i),
                label: if marks.contains(&i) { 1 % m } else { 0 },
            })
            .collect();
        LabeledDiagram { k, m, edges }
    }

    /// The crossing of strands `i` and `i + 1`.
    pub fn transposition(i: usize, k: usize, m: u32) -> Result<Self> {
        check_pair_index(i, k)?;
        let raw: Vec<_> = (1..=k)
            .map(|j| {
                let target = if j == i {
                    i + 1
                } else if j == i + 1 {
                    i
                } else {
                    j
                };
                (Vertex::top(j), Vertex::bottom(target), 0)
            })
            .collect();
        canonicalize(&raw, k, m)
    }

    /// Cap joining top `i, i+1` and cup joining bottom `i, i+1`; other strands vertical.
    pub fn cap_cup(i: usize, k: usize, m: u32) -> Result<Self> {
        check_pair_index(i, k)?;
        let mut raw = vec![(Vertex::top(i), Vertex::top(i + 1), 0), (Vertex::bottom(i), Vertex::bottom(i + 1), 0)];
        raw.extend((1..=k).filter(|&j| j != i && j != i + 1).map(|j| (Vertex::top(j), Vertex::bottom(j), 0)));
        canonicalize(&raw, k, m)
    }

    /// Identity with label `power mod m` on strand `i`.
    pub fn theta(i: usize, power: u32, k: usize, m: u32) -> Result<Self> {
        if i == 0 || i > k {
            return Err(Error::IndexOutOfRange { index: i, range: format!("1..={k}") });
        }
        let mut d = Self::identity(k, m);
        d.edges[i - 1].label = power % m;
        Ok(d)
    }

    /// Partner slot for every vertex slot, with the label seen when leaving
    /// the vertex along its edge.
    fn partner_table(&self) -> Vec<(usize, u32)> {
        let mut table = vec![(0, 0); 2 * self.k];
        for e in &self.edges {
            let (a, b) = (e.from.slot(self.k), e.to.slot(self.k));
            table[a] = (b, e.label);
            table[b] = (a, (self.m - e.label) % self.m);
        }
        table
    }

    /// The same diagram with every label dropped.
    pub fn underlying(&self) -> BrauerDiagram {
        BrauerDiagram { k: self.k, pairs: self.edges.iter().map(|e| (e.from, e.to)).collect() }
    }

    /// `true` when every edge joins the top row to the bottom row.
    pub fn is_through_only(&self) -> bool {
        self.edges.iter().all(|e| e.from.row == Row::Top && e.to.row == Row::Bottom)
    }

    /// For through-strand-only diagrams: the permutation `top i ↦ bottom σ(i)`
    /// (0-based) and the label carried from top to bottom along each strand.
    pub fn as_colored_permutation(&self) -> Option<(Vec<usize>, Vec<u32>)> {
        if !self.is_through_only() {
            return None;
        }
        // Sorted edges start at t1, t2, … in order.
        let perm = self.edges.iter().map(|e| e.to.index - 1).collect();
        let colors = self.edges.iter().map(|e| e.label).collect();
        Some((perm, colors))
    }

    pub fn is_walled(&self, wall: usize) -> bool {
        self.underlying().is_walled(wall)
    }
}

fn check_pair_index(i: usize, k: usize) -> Result<()> {
    if i == 0 || i + 1 > k {
        return Err(Error::IndexOutOfRange { index: i, range: format!("1..={}", k.saturating_sub(1)) });
    }
    Ok(())
}

/// Concatenates `a` (on top) with `b` (below), gluing `a`'s bottom row to
/// `b`'s top row.
pub fn compose(a: &LabeledDiagram, b: &LabeledDiagram) -> Result<CompositionResult> {
    if a.k != b.k || a.m != b.m {
        return Err(Error::SizeMismatch(format!("(k, m) = ({}, {}) vs ({}, {})", a.k, a.m, b.k, b.m)));
    }
    let (k, m) = (a.k, a.m);
    let ta = a.partner_table();
    let tb = b.partner_table();

    // Nodes: result top 0..k (a's top), middle k..2k, result bottom 2k..3k (b's bottom).
    // In `a` the middle row is its bottom (slots k..2k); in `b` it is its top (slots 0..k).
    let a_node = |slot: usize| slot; // a's top ↦ 0..k, a's bottom ↦ k..2k
    let b_node = |slot: usize| slot + k; // b's top ↦ k..2k, b's bottom ↦ 2k..3k

    let mut visited_mid = vec![false; k];
    let mut raw = Vec::with_capacity(k);
    let mut used_outer = vec![false; 2 * k];

    // Walks from an outer node until the next outer node. `in_a` says which
    // diagram's edge leaves the current node.
    let walk = |start: usize, mut in_a: bool, visited_mid: &mut Vec<bool>| -> (usize, u32) {
        let mut node = start;
        let mut acc = 0u32;
        loop {
            let (next, label) = if in_a {
                let (p, l) = ta[node];
                (a_node(p), l)
            } else {
                let (p, l) = tb[node - k];
                (b_node(p), l)
            };
            acc = (acc + label) % m;
            node = next;
            if node < k || node >= 2 * k {
                return (node, acc);
            }
            visited_mid[node - k] = true;
            in_a = !in_a;
        }
    };

    for outer in 0..2 * k {
        if used_outer[outer] {
            continue;
        }
        let (start, in_a) = if outer < k { (outer, true) } else { (outer + k, false) };
        let (end, label) = walk(start, in_a, &mut visited_mid);
        let end_outer = if end < k { end } else { end - k };
        used_outer[outer] = true;
        used_outer[end_outer] = true;
        raw.push((Vertex::from_slot(outer, k), Vertex::from_slot(end_outer, k), label));
    }

    let mut loops = Vec::new();
    for mid in 0..k {
        if visited_mid[mid] {
            continue;
        }
        let start = mid + k;
        let mut node = start;
        let mut in_a = true;
        let mut acc = 0u32;
        loop {
            visited_mid[node - k] = true;
            let (next, label) = if in_a {
                let (p, l) = ta[node];
                (a_node(p), l)
            } else {
                let (p, l) = tb[node - k];
                (b_node(p), l)
            };
            acc = (acc + label) % m;
            node = next;
            in_a = !in_a;
            if node == start {
                break;
            }
        }
        loops.push(normalize_loop_label(acc, m));
    }
    loops.sort_unstable();

    // Walk endpoints are visited in increasing order, so edges are already oriented.
    let mut edges: Vec<Edge> = raw.into_iter().map(|(from, to, label)| Edge { from, to, label }).collect();
    edges.sort();
    Ok(CompositionResult { loops, diagram: LabeledDiagram { k, m, edges } })
}

/// `(2k)!·m^k / (k!·2^k)`, i.e. `(2k − 1)!!·m^k`.
pub fn count_diagrams(k: usize, m: u32) -> u128 {
    let mut n: u128 = 1;
    for j in 1..=k as u128 {
        n = n.checked_mul(2 * j - 1).and_then(|x| x.checked_mul(m as u128)).expect("diagram count overflows u128");
    }
    n
}

/// All canonical diagrams in lexicographic order of their edge lists.
pub fn enumerate_diagrams(k: usize, m: u32) -> Vec<LabeledDiagram> {
    let mut out = Vec::with_capacity(count_diagrams(k, m).min(1 << 24) as usize);
    let mut used = vec![false; 2 * k];
    let mut edges = Vec::with_capacity(k);
    fn rec(k: usize, m: u32, used: &mut Vec<bool>, edges: &mut Vec<Edge>, out: &mut Vec<LabeledDiagram>) {
        let Some(first) = used.iter().position(|u| !u) else {
            out.push(LabeledDiagram { k, m, edges: edges.clone() });
            return;
        };
        used[first] = true;
        for second in first + 1..2 * k {
            if used[second] {
                continue;
            }
            used[second] = true;
            for label in 0..m {
                edges.push(Edge { from: Vertex::from_slot(first, k), to: Vertex::from_slot(second, k), label });
                rec(k, m, used, edges, out);
                edges.pop();
            }
            used[second] = false;
        }
        used[first] = false;
    }
    rec(k, m, &mut used, &mut edges, &mut out);
    out
}

/// Unlabeled Brauer diagram: a perfect matching on `k` top and `k` bottom vertices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct BrauerDiagram {
    k: usize,
    pairs: Vec<(Vertex, Vertex)>,
}

impl BrauerDiagram {
    pub fn new(pairs: &[(Vertex, Vertex)], k: usize) -> Result<Self> {
        let raw: Vec<_> = pairs.iter().map(|&(a, b)| (a, b, 0)).collect();
        Ok(canonicalize(&raw, k, 1)?.underlying())
    }

    pub fn identity(k: usize) -> Self {
        LabeledDiagram::identity(k, 1).underlying()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn pairs(&self) -> &[(Vertex, Vertex)] {
        &self.pairs
    }

    /// The same matching with every label 0 in modulus `m`.
    pub fn to_labeled(&self, m: u32) -> LabeledDiagram {
        LabeledDiagram {
            k: self.k,
            m,
            edges: self.pairs.iter().map(|&(from, to)| Edge { from, to, label: 0 }).collect(),
        }
    }

    /// Through strands stay on one side of the wall after position `wall`,
    /// horizontal strands cross it.
    pub fn is_walled(&self, wall: usize) -> bool {
        let left = |v: Vertex| v.index <= wall;
        self.pairs.iter().all(|&(a, b)| if a.row == b.row { left(a) != left(b) } else { left(a) == left(b) })
    }

    pub fn num_through_strands(&self) -> usize {
        self.pairs.iter().filter(|(a, b)| a.row != b.row).count()
    }
}

impl fmt::Display for BrauerDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_labeled(1), f)
    }
}

/// Perfect matching from `s` top vertices to `t` bottom vertices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct UnevenDiagram {
    s: usize,
    t: usize,
    pairs: Vec<(Vertex, Vertex)>,
}

impl UnevenDiagram {
    pub fn s(&self) -> usize {
        self.s
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn pairs(&self) -> &[(Vertex, Vertex)] {
        &self.pairs
    }
}

/// All perfect matchings on `s` top plus `t` bottom vertices; empty when `s + t` is odd.
pub fn enumerate_uneven(s: usize, t: usize) -> Vec<UnevenDiagram> {
    if (s + t) % 2 == 1 {
        return Vec::new();
    }
    let vertex = |slot: usize| if slot < s { Vertex::top(slot + 1) } else { Vertex::bottom(slot - s + 1) };
    let mut out = Vec::new();
    let mut used = vec![false; s + t];
    let mut pairs = Vec::new();
    fn rec(used: &mut Vec<bool>, pairs: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        let Some(first) = used.iter().position(|u| !u) else {
            out.push(pairs.clone());
            return;
        };
        used[first] = true;
        for second in first + 1..used.len() {
            if !used[second] {
                used[second] = true;
                pairs.push((first, second));
                rec(used, pairs, out);
                pairs.pop();
                used[second] = false;
            }
        }
        used[first] = false;
    }
    let mut raw = Vec::new();
    rec(&mut used, &mut pairs, &mut raw);
    for p in raw {
        out.push(UnevenDiagram { s, t, pairs: p.into_iter().map(|(a, b)| (vertex(a), vertex(b))).collect() });
    }
    out
}

/// A diagram with labels mod 2 written as `θ(top) ∘ bare ∘ θ(bottom)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MarkedFactorization {
    pub top_marks: BTreeSet<usize>,
    pub bare: BrauerDiagram,
    pub bottom_marks: BTreeSet<usize>,
}

impl MarkedFactorization {
    /// Recomposes the three layers.
    pub fn reassemble(&self) -> CompositionResult {
        let k = self.bare.k;
        let top = LabeledDiagram::marked_identity(k, 2, &self.top_marks);
        let bottom = LabeledDiagram::marked_identity(k, 2, &self.bottom_marks);
        let lower = compose(&self.bare.to_labeled(2), &bottom).expect("same size");
        let mut upper = compose(&top, &lower.diagram).expect("same size");
        upper.loops.extend(lower.loops);
        upper
    }
}

/// Splits a marked diagram (`m = 2`) into marked identities around its
/// underlying unmarked diagram. Marks on through strands go to the top layer
/// at the strand's top vertex; marks on horizontal strands go to the layer of
/// their row at the strand's right-most vertex.
pub fn factor_marked(d: &LabeledDiagram) -> Result<MarkedFactorization> {
    if d.m != 2 {
        return Err(Error::BadModulus { expected: 2, got: d.m });
    }
    let mut top_marks = BTreeSet::new();
    let mut bottom_marks = BTreeSet::new();
    for e in d.edges.iter().filter(|e| e.label == 1) {
        match (e.from.row, e.to.row) {
            (Row::Top, Row::Bottom) => {
                top_marks.insert(e.from.index);
            }
            (Row::Top, Row::Top) => {
                top_marks.insert(e.from.index.max(e.to.index));
            }
            (Row::Bottom, Row::Bottom) => {
                bottom_marks.insert(e.from.index.max(e.to.index));
            }
            (Row::Bottom, Row::Top) => unreachable!("canonical edges run top to bottom"),
        }
    }
    Ok(MarkedFactorization { top_marks, bare: d.underlying(), bottom_marks })
}

impl fmt::Display for LabeledDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, e) in self.edges.iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}-{}", e.from, e.to)?;
            if e.label != 0 {
                write!(f, ":{}", e.label)?;
            }
        }
        Ok(())
    }
}

/// Parses the comma-separated edge format, e.g. `t1-b2:1,t2-t3,b1-b3:2`.
pub fn parse_edges(text: &str) -> Result<Vec<(Vertex, Vertex, u32)>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|item| {
            let (pair, label) = match item.split_once(':') {
                Some((p, l)) => {
                    (p, l.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad label in {item:?}")))?)
                }
                None => (item, 0),
            };
            let (a, b) = pair.split_once('-').ok_or_else(|| Error::Parse(format!("edge {item:?} lacks '-'")))?;
            Ok((a.parse()?, b.parse()?, label))
        })
        .collect()
}

/// Parses and canonicalizes a diagram given in the text format.
pub fn parse_diagram(text: &str, k: usize, m: u32) -> Result<LabeledDiagram> {
    canonicalize(&parse_edges(text)?, k, m)
}
