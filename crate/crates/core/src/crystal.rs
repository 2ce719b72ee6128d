//! i-signatures, reduced signatures, normal/good/conormal/cogood nodes,
//! ε_i, the crystal operators `ẽ_i` and `f̃_i`, Cartan data, crystal-graph
//! construction and the Stembridge property check.
//!
//! The rim reading order is implemented as the sort key (row descending,
//! column ascending), which matches walking the rim from bottom left to top
//! right.

use std::collections::BTreeMap;
use std::fmt;

use crate::partition::{enumerate_rpp, Char, Node, Partition, Residue};
use crate::verify::{Counterexample, VerifyReport};
use crate::Error;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

/// Which clause of the removable/addable definition produced a node.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum NodeKind {
    R1,
    R2,
    A1,
    A2,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SignedNode {
    pub node: Node,
    pub sign: Sign,
    pub kind: NodeKind,
}

/// The i-signature of a partition: all i-addable (+) and i-removable (−)
/// nodes in rim order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Signature {
    residue: Residue,
    entries: Vec<SignedNode>,
}

impl Signature {
    pub fn residue(&self) -> Residue {
        self.residue
    }

    pub fn entries(&self) -> &[SignedNode] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The signs as a comma-separated string like `-,-,+,+,-,-,-`.
    pub fn sign_string(&self) -> String {
        let signs: Vec<&str> = self
            .entries
            .iter()
            .map(|e| match e.sign {
                Sign::Plus => "+",
                Sign::Minus => "-",
            })
            .collect();
        signs.join(",")
    }

    pub fn minus_nodes(&self) -> impl Iterator<Item = &SignedNode> {
        self.entries.iter().filter(|e| e.sign == Sign::Minus)
    }

    pub fn plus_nodes(&self) -> impl Iterator<Item = &SignedNode> {
        self.entries.iter().filter(|e| e.sign == Sign::Plus)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.sign_string())
    }
}

/// The i-signature of `λ` in rim order.
pub fn signature(c: Char, la: &Partition, i: Residue) -> Signature {
    let mut entries = Vec::new();
    let h = la.len() as u32;
    for r in 1..=h {
        let end = la.part(r);
        // (R2): A = (r, end-1) with both single and double removal p-strict.
        if i == 0 && end >= 2 && c.content_of_column(u64::from(end) - 1) == 0 && c.content_of_column(u64::from(end)) == 0
        {
            let single = la.remove_end(r);
            let double = single.as_ref().and_then(|mu| mu.remove_end(r));
            if single.is_some_and(|mu| mu.is_p_strict(c))
                && double.is_some_and(|mu| mu.is_p_strict(c))
            {
                entries.push(SignedNode {
                    node: Node::new(r, end - 1),
                    sign: Sign::Minus,
                    kind: NodeKind::R2,
                });
            }
        }
        // (R1): the end node itself.
        if c.content_of_column(u64::from(end)) == i {
            if let Some(mu) = la.remove_end(r) {
                if mu.is_p_strict(c) {
                    entries.push(SignedNode {
                        node: Node::new(r, end),
                        sign: Sign::Minus,
                        kind: NodeKind::R1,
                    });
                }
            }
        }
    }
    for r in 1..=h + 1 {
        let end = la.part(r);
        // (A1): the node just after the row end.
        if c.content_of_column(u64::from(end) + 1) == i {
            if let Some(mu) = la.add_end(r) {
                if mu.is_p_strict(c) {
                    entries.push(SignedNode {
                        node: Node::new(r, end + 1),
                        sign: Sign::Plus,
                        kind: NodeKind::A1,
                    });
                }
            }
        }
        // (A2): B = (r, end+2) with A = (r, end+1) also outside the diagram.
        if i == 0
            && c.content_of_column(u64::from(end) + 1) == 0
            && c.content_of_column(u64::from(end) + 2) == 0
        {
            let single = la.add_end(r);
            let double = single.as_ref().and_then(|mu| mu.add_end(r));
            if single.is_some_and(|mu| mu.is_p_strict(c))
                && double.is_some_and(|mu| mu.is_p_strict(c))
            {
                entries.push(SignedNode {
                    node: Node::new(r, end + 2),
                    sign: Sign::Plus,
                    kind: NodeKind::A2,
                });
            }
        }
    }
    entries.sort_by(|a, b| {
        b.node
            .row
            .cmp(&a.node.row)
            .then(a.node.col.cmp(&b.node.col))
    });
    Signature { residue: i, entries }
}

/// Fixed point of erasing adjacent `+-` pairs: a run of minuses followed by
/// a run of pluses.
pub fn reduced_signature(c: Char, la: &Partition, i: Residue) -> Signature {
    let sig = signature(c, la, i);
    let mut kept: Vec<SignedNode> = Vec::with_capacity(sig.entries.len());
    for e in sig.entries {
        if e.sign == Sign::Minus && kept.last().is_some_and(|k| k.sign == Sign::Plus) {
            kept.pop();
        } else {
            kept.push(e);
        }
    }
    debug_assert!(kept
        .windows(2)
        .all(|w| !(w[0].sign == Sign::Plus && w[1].sign == Sign::Minus)));
    Signature {
        residue: i,
        entries: kept,
    }
}

/// `ε_i(λ)`: the number of i-normal nodes, i.e. minuses surviving reduction.
pub fn epsilon(c: Char, la: &Partition, i: Residue) -> u64 {
    reduced_signature(c, la, i).minus_nodes().count() as u64
}

/// Residues that can possibly carry a non-empty signature for `λ`.
pub fn active_residues(c: Char, la: &Partition) -> Vec<Residue> {
    match c.ell() {
        Some(ell) => (0..=ell).collect(),
        // For p = 0 the largest relevant content is that of column λ₁ + 1.
        None => (0..=u64::from(la.part(1))).collect(),
    }
}

/// The full ε-vector as a sparse map of nonzero entries.
pub fn eps_map(c: Char, la: &Partition) -> BTreeMap<Residue, u64> {
    let mut out = BTreeMap::new();
    for i in active_residues(c, la) {
        let e = epsilon(c, la, i);
        if e > 0 {
            out.insert(i, e);
        }
    }
    out
}

/// Removes the i-good node (the rightmost i-normal node); `None` when
/// `ε_i(λ) = 0`.
///
/// The good node is always of kind R1: an R2 minus is immediately followed
/// in reading order by its R1 partner, so it can never be the rightmost
/// survivor. This is asserted rather than assumed.
pub fn e_tilde(c: Char, la: &Partition, i: Residue) -> Option<Partition> {
    let red = reduced_signature(c, la, i);
    let good = red.minus_nodes().last()?;
    assert_eq!(
        good.kind,
        NodeKind::R1,
        "good node of {la} at i={i} must be R1"
    );
    let mu = la
        .remove_end(good.node.row)
        .expect("R1 removal is a diagram");
    assert!(
        mu.is_restricted(c),
        "e_tilde({la}, {i}) = {mu} left RP_p(n-1)"
    );
    Some(mu)
}

/// Adds the i-cogood node (the leftmost i-conormal node); `None` when no
/// plus survives reduction or when the grown partition is not restricted.
///
/// The cogood node is always of kind A1 (the right member of an addable pair
/// can never be the leftmost survivor), so a single-node addition is valid.
pub fn f_tilde(c: Char, la: &Partition, i: Residue) -> Option<Partition> {
    let red = reduced_signature(c, la, i);
    let cogood = red.plus_nodes().next()?;
    assert_eq!(
        cogood.kind,
        NodeKind::A1,
        "cogood node of {la} at i={i} must be A1"
    );
    let mu = la.add_end(cogood.node.row).expect("A1 addition is a diagram");
    if !mu.is_restricted(c) {
        return None;
    }
    debug_assert_eq!(e_tilde(c, &mu, i).as_ref(), Some(la));
    Some(mu)
}

/// Cartan matrix entry `a_{ij}` of type `A_{2ℓ}^{(2)}` (`B_∞` when p = 0).
pub fn cartan(c: Char, i: Residue, j: Residue) -> Result<i64, Error> {
    if let Some(ell) = c.ell() {
        if i > ell || j > ell {
            let residue = i.max(j);
            return Err(Error::ResidueOutOfRange { residue, p: c.p() });
        }
        if ell == 1 {
            // The 2x2 matrix [[2,-4],[-1,2]].
            return Ok(match (i, j) {
                (0, 1) => -4,
                (1, 0) => -1,
                _ => 2,
            });
        }
        Ok(if i == j {
            2
        } else if i + 1 == j {
            if i == 0 || j == ell {
                -2
            } else {
                -1
            }
        } else if j + 1 == i {
            -1
        } else {
            0
        })
    } else {
        // Half-infinite B_∞ matrix.
        Ok(if i == j {
            2
        } else if i + 1 == j {
            if i == 0 {
                -2
            } else {
                -1
            }
        } else if j + 1 == i {
            -1
        } else {
            0
        })
    }
}

/// The crystal graph on `⋃_{m ≤ nmax} RP_p(m)` with edges
/// `ẽ_i μ  →(i)  μ`.
pub struct CrystalGraph {
    c: Char,
    levels: Vec<Vec<Partition>>,
    /// (level of source λ, index of λ, residue, index of target μ in level+1).
    edges: Vec<(usize, usize, Residue, usize)>,
}

pub fn crystal_graph(c: Char, nmax: u64) -> CrystalGraph {
    let levels: Vec<Vec<Partition>> = (0..=nmax).map(|m| enumerate_rpp(c, m)).collect();
    let index: Vec<BTreeMap<&Partition, usize>> = levels
        .iter()
        .map(|lv| lv.iter().enumerate().map(|(k, la)| (la, k)).collect())
        .collect();
    let mut edges = Vec::new();
    for (m, level) in levels.iter().enumerate().skip(1) {
        for (mu_idx, mu) in level.iter().enumerate() {
            for i in active_residues(c, mu) {
                if let Some(la) = e_tilde(c, mu, i) {
                    let la_idx = index[m - 1][&la];
                    edges.push((m - 1, la_idx, i, mu_idx));
                }
            }
        }
    }
    CrystalGraph { c, levels, edges }
}

impl CrystalGraph {
    pub fn char_of(&self) -> Char {
        self.c
    }

    pub fn nmax(&self) -> u64 {
        self.levels.len() as u64 - 1
    }

    pub fn level(&self, m: u64) -> &[Partition] {
        &self.levels[m as usize]
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|lv| lv.len()).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as (source λ, residue, target μ) with `λ = ẽ_i μ`.
    pub fn edges(&self) -> impl Iterator<Item = (&Partition, Residue, &Partition)> {
        self.edges
            .iter()
            .map(move |&(m, k, i, t)| (&self.levels[m][k], i, &self.levels[m + 1][t]))
    }

    /// True iff every vertex has a directed path down to ∅ along ẽ-edges.
    pub fn all_reach_empty(&self) -> bool {
        self.levels.iter().skip(1).flatten().all(|la| {
            let mut cur = la.clone();
            while !cur.is_empty() {
                let mut moved = false;
                for i in active_residues(self.c, &cur) {
                    if let Some(next) = e_tilde(self.c, &cur, i) {
                        cur = next;
                        moved = true;
                        break;
                    }
                }
                if !moved {
                    return false;
                }
            }
            true
        })
    }

    /// Deterministic DOT rendering: one node per partition (label = its text
    /// form), directed edges labeled with the residue.
    pub fn to_dot(&self) -> String {
        let mut ids: BTreeMap<(usize, usize), String> = BTreeMap::new();
        let mut out = String::from("digraph crystal {\n");
        let mut counter = 0usize;
        for (m, level) in self.levels.iter().enumerate() {
            for (k, la) in level.iter().enumerate() {
                let id = format!("v{counter}");
                counter += 1;
                out.push_str(&format!("  {id} [label=\"{la}\"];\n"));
                ids.insert((m, k), id);
            }
        }
        let mut edges = self.edges.clone();
        edges.sort();
        for (m, k, i, t) in edges {
            out.push_str(&format!(
                "  {} -> {} [label=\"{i}\"];\n",
                ids[&(m, k)],
                ids[&(m + 1, t)]
            ));
        }
        out.push_str("}\n");
        out
    }
}

/// Checks the two Stembridge properties on all of `RP_p(m)`, `m ≤ nmax`:
/// for i ≠ j with `ε_i(λ) > 0`,
/// (i)  `0 ≤ ε_j(ẽ_i λ) − ε_j(λ) ≤ −a_{ji}`, and
/// (ii) `ε_j(ẽ_i λ) = ε_j(λ) > 0` implies `ẽ_i ẽ_j λ = ẽ_j ẽ_i λ`.
pub fn stembridge_check(c: Char, nmax: u64) -> VerifyReport {
    stembridge_over_range(c, 0, nmax)
}

pub(crate) fn stembridge_over_range(c: Char, lo: u64, hi: u64) -> VerifyReport {
    let mut checked = 0u64;
    let mut counterexamples = Vec::new();
    for m in lo..=hi {
        for la in enumerate_rpp(c, m) {
            let residues = active_residues(c, &la);
            for &i in &residues {
                if epsilon(c, &la, i) == 0 {
                    continue;
                }
                let ei = e_tilde(c, &la, i).expect("positive epsilon");
                for &j in &residues {
                    if i == j {
                        continue;
                    }
                    let before = epsilon(c, &la, j) as i64;
                    let after = epsilon(c, &ei, j) as i64;
                    let bound = -cartan(c, j, i).expect("in-range residues");
                    checked += 1;
                    if after - before < 0 || after - before > bound {
                        counterexamples.push(Counterexample::new(
                            c.p(),
                            &la,
                            format!(
                                "eps_{j} jumped {before} -> {after} under e_tilde_{i} (allowed 0..={bound})"
                            ),
                        ));
                        continue;
                    }
                    if after == before && before > 0 {
                        let ej = e_tilde(c, &la, j).expect("positive epsilon");
                        let via_i = e_tilde(c, &ei, j);
                        let via_j = e_tilde(c, &ej, i);
                        checked += 1;
                        if via_i != via_j {
                            counterexamples.push(Counterexample::new(
                                c.p(),
                                &la,
                                format!("e_{i}e_{j} != e_{j}e_{i} despite equal positive eps_{j}"),
                            ));
                        }
                    }
                }
            }
        }
    }
    VerifyReport::new(
        "TStem",
        format!("p={}, n={lo}..={hi}, all residue pairs", c.p()),
        checked,
        counterexamples,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn ch(p: u64) -> Char {
        Char::new(p).unwrap()
    }

    #[test]
    fn worked_zero_signature() {
        let c = ch(5);
        let la = pt("16,11,10,10,9,5,1");
        let sig = signature(c, &la, 0);
        assert_eq!(sig.sign_string(), "-,-,+,+,-,-,-");
        let nodes: Vec<Node> = sig.entries().iter().map(|e| e.node).collect();
        assert_eq!(
            nodes,
            vec![
                Node::new(7, 1),
                Node::new(6, 5),
                Node::new(6, 6),
                Node::new(5, 10),
                Node::new(2, 11),
                Node::new(1, 15),
                Node::new(1, 16),
            ]
        );
        let red = reduced_signature(c, &la, 0);
        assert_eq!(red.sign_string(), "-,-,-");
        let survivors: Vec<Node> = red.entries().iter().map(|e| e.node).collect();
        assert_eq!(
            survivors,
            vec![Node::new(7, 1), Node::new(6, 5), Node::new(1, 16)]
        );
        assert_eq!(epsilon(c, &la, 0), 3);
    }

    #[test]
    fn empty_partition_signature() {
        for p in [0, 3, 7] {
            let c = ch(p);
            let sig = signature(c, &Partition::empty(), 0);
            assert_eq!(sig.sign_string(), "+");
            assert_eq!(sig.entries()[0].node, Node::new(1, 1));
            assert_eq!(epsilon(c, &Partition::empty(), 0), 0);
        }
    }

    #[test]
    fn small_signatures() {
        let c = ch(5);
        assert!(signature(c, &pt("3,2,1"), 2).is_empty());
        let red = reduced_signature(c, &pt("3,2,1"), 0);
        assert_eq!(red.sign_string(), "-");
        assert_eq!(red.entries()[0].node, Node::new(3, 1));
        assert_eq!(epsilon(c, &pt("3,2,1"), 0), 1);
        assert_eq!(epsilon(c, &pt("3,2,1"), 1), 0);
    }

    #[test]
    fn e_tilde_examples() {
        let c = ch(5);
        assert_eq!(e_tilde(c, &pt("3,2,1"), 0), Some(pt("3,2")));
        assert_eq!(
            e_tilde(c, &pt("16,11,10,10,9,5,1"), 0),
            Some(pt("15,11,10,10,9,5,1"))
        );
        assert_eq!(e_tilde(c, &pt("3,2,1"), 1), None);
    }

    #[test]
    fn f_tilde_examples() {
        let c = ch(5);
        assert_eq!(f_tilde(c, &pt("3,2"), 0), Some(pt("3,2,1")));
        // Single-row growth at p = 0.
        let c0 = ch(0);
        let n = 9u64;
        let i = c0.content_of_column(n);
        assert_eq!(f_tilde(c0, &pt("8"), i), Some(pt("9")));
    }

    #[test]
    fn f_tilde_e_tilde_inverse_small() {
        for p in [0, 3, 5, 7] {
            let c = ch(p);
            for n in 0..=12 {
                for la in enumerate_rpp(c, n) {
                    for i in active_residues(c, &la) {
                        if let Some(up) = f_tilde(c, &la, i) {
                            assert_eq!(e_tilde(c, &up, i), Some(la.clone()));
                        }
                        if let Some(down) = e_tilde(c, &la, i) {
                            assert_eq!(f_tilde(c, &down, i), Some(la.clone()));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn cartan_entries() {
        let c7 = ch(7);
        assert_eq!(cartan(c7, 0, 1), Ok(-2));
        assert_eq!(cartan(c7, 1, 0), Ok(-1));
        assert_eq!(cartan(c7, 2, 3), Ok(-2));
        assert_eq!(cartan(c7, 3, 2), Ok(-1));
        assert_eq!(cartan(c7, 1, 2), Ok(-1));
        assert_eq!(cartan(c7, 0, 3), Ok(0));
        assert_eq!(cartan(c7, 2, 2), Ok(2));
        assert!(cartan(c7, 0, 4).is_err());

        let c3 = ch(3);
        assert_eq!(cartan(c3, 0, 1), Ok(-4));
        assert_eq!(cartan(c3, 1, 0), Ok(-1));

        let c0 = ch(0);
        assert_eq!(cartan(c0, 0, 1), Ok(-2));
        assert_eq!(cartan(c0, 1, 0), Ok(-1));
        assert_eq!(cartan(c0, 5, 7), Ok(0));
        assert_eq!(cartan(c0, 6, 7), Ok(-1));
    }

    #[test]
    fn graph_examples() {
        let g = crystal_graph(ch(3), 5);
        assert_eq!(g.level_sizes(), vec![1, 1, 1, 1, 1, 2]);
        // The unique edge out of the bottom is coloured 0.
        let first: Vec<_> = g
            .edges()
            .filter(|(la, _, _)| la.is_empty())
            .map(|(_, i, mu)| (i, mu.clone()))
            .collect();
        assert_eq!(first, vec![(0, pt("1"))]);
        assert!(g.all_reach_empty());
    }

    #[test]
    fn per_residue_in_degree_at_most_one() {
        let g = crystal_graph(ch(5), 10);
        let mut seen = std::collections::BTreeSet::new();
        for (_, i, mu) in g.edges() {
            assert!(seen.insert((i, mu.clone())), "duplicate in-edge at {mu}");
        }
    }

    #[test]
    fn dot_is_deterministic_and_labelled() {
        let g = crystal_graph(ch(3), 3);
        let dot = g.to_dot();
        assert_eq!(dot, crystal_graph(ch(3), 3).to_dot());
        assert!(dot.contains("label=\"\""));
        assert!(dot.contains("label=\"2,1\""));
        assert!(dot.contains("[label=\"0\"]"));
    }

    #[test]
    fn stembridge_small() {
        for p in [3, 5, 0] {
            let rep = stembridge_check(ch(p), 9);
            assert!(rep.pass, "p={p}: {:?}", rep.counterexamples);
        }
    }

    #[test]
    fn sum_eps_positive_for_nonempty() {
        for p in [0, 3, 5, 7] {
            let c = ch(p);
            for n in 1..=14 {
                for la in enumerate_rpp(c, n) {
                    assert!(
                        !eps_map(c, &la).is_empty(),
                        "p={p} lambda={la} has no normal node"
                    );
                }
            }
        }
    }
}
