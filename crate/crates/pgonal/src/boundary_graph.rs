//! Boundary nodal surfaces of one-dimensional strata and the incidence
//! graph that decides adjacency and isolation.
//!
//! For r = 4, pinching any of the three 2+2 curve splits of the four branch
//! points yields a two-piece stable surface identified by its unordered pair
//! of P-labels and the node count over the pinched curve. Two strata are
//! adjacent when they share such a boundary point.

use alloc::vec::Vec;
use core::fmt;

use crate::degeneration::{class_stabilizer, node_multiplicity, p_class};
use crate::residue::{PrimeModulus, Residue};
use crate::strata::{classify_r4_type, enumerate_strata, R4TypeTag, StratumClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryError {
    /// Boundary classification is implemented for r = 4 strata.
    WrongArity(u64),
    /// Split does not partition the positions into sides of size >= 2.
    BadPartition,
}

impl fmt::Display for BoundaryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryError::WrongArity(r) => write!(f, "boundary sets need r = 4, got r = {r}"),
            BoundaryError::BadPartition => write!(f, "each side of a split needs >= 2 positions"),
        }
    }
}

/// A boundary nodal class: unordered P-label pair plus node count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BoundaryPoint {
    /// Sorted pair of P-labels.
    pub pieces: (u64, u64),
    /// Nodes over the pinched curve: 1 or p.
    pub multiplicity: u64,
}

impl fmt::Display for BoundaryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "P{}+P{} ({} node{})",
            self.pieces.0,
            self.pieces.1,
            self.multiplicity,
            if self.multiplicity == 1 { "" } else { "s" }
        )
    }
}

/// The three 2+2 position splits of a 4-tuple.
const SPLITS: [([usize; 2], [usize; 2]); 3] =
    [([0, 1], [2, 3]), ([0, 2], [1, 3]), ([0, 3], [1, 2])];

/// Deduplicated boundary points of an r = 4 stratum, in sorted order.
pub fn boundary_set(s: &StratumClass) -> Result<Vec<BoundaryPoint>, BoundaryError> {
    if s.branch_count() != 4 {
        return Err(BoundaryError::WrongArity(s.branch_count()));
    }
    let v = s.canonical();
    let mut points = Vec::new();
    for (left, right) in SPLITS {
        let (a, b) = (v[left[0]], v[left[1]]);
        let (c, d) = (v[right[0]], v[right[1]]);
        let mut pieces = [
            p_class(a, b).expect("nonzero exponents"),
            p_class(c, d).expect("nonzero exponents"),
        ];
        pieces.sort_unstable();
        let point = BoundaryPoint {
            pieces: (pieces[0], pieces[1]),
            multiplicity: node_multiplicity(a.add(b)),
        };
        if !points.contains(&point) {
            points.push(point);
        }
    }
    points.sort_unstable();
    Ok(points)
}

/// Bipartite incidence of r = 4 strata and their boundary nodal classes.
#[derive(Debug, Clone)]
pub struct StrataGraph {
    pub modulus: PrimeModulus,
    pub strata: Vec<StratumClass>,
    pub boundary_points: Vec<BoundaryPoint>,
    /// Per stratum, indices into `boundary_points`.
    pub incidence: Vec<Vec<usize>>,
}

pub fn build_graph(p: PrimeModulus) -> StrataGraph {
    assert!(p.get() >= 5, "boundary graphs need p >= 5");
    let strata = enumerate_strata(p, 4);
    let mut boundary_points: Vec<BoundaryPoint> = Vec::new();
    let mut incidence = Vec::with_capacity(strata.len());
    for s in &strata {
        let set = boundary_set(s).expect("r = 4 by construction");
        let mut row = Vec::with_capacity(set.len());
        for point in set {
            let idx = match boundary_points.iter().position(|&q| q == point) {
                Some(i) => i,
                None => {
                    boundary_points.push(point);
                    boundary_points.len() - 1
                }
            };
            row.push(idx);
        }
        incidence.push(row);
    }
    StrataGraph {
        modulus: p,
        strata,
        boundary_points,
        incidence,
    }
}

/// Connected components of the strata under boundary-mediated adjacency,
/// each component sorted, components ordered by first member.
pub fn connected_components(g: &StrataGraph) -> Vec<Vec<usize>> {
    let n = g.strata.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    // union strata sharing a boundary point
    let mut owner: Vec<Option<usize>> = alloc::vec![None; g.boundary_points.len()];
    for (s, row) in g.incidence.iter().enumerate() {
        for &b in row {
            match owner[b] {
                Some(o) => {
                    let (ro, rs) = (find(&mut parent, o), find(&mut parent, s));
                    parent[ro.max(rs)] = ro.min(rs);
                }
                None => owner[b] = Some(s),
            }
        }
    }
    let mut components: Vec<Vec<usize>> = Vec::new();
    for s in 0..n {
        let root = find(&mut parent, s);
        match components.iter_mut().find(|c| find(&mut parent, c[0]) == root) {
            Some(c) => c.push(s),
            None => components.push(alloc::vec![s]),
        }
    }
    components
}

/// Stabilizer evidence for one boundary piece: the cone pair of a 2+2 side
/// and every (scalar, swap) symmetry fixing it as an ordered pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PieceStabilizer {
    pub cone_pair: (u64, u64),
    pub p_label: u64,
    /// (scalar value, swap flag); always contains (1, false).
    pub stabilizer: Vec<(u64, bool)>,
}

/// Per-stratum isolation verdict with its adjacency witnesses.
#[derive(Debug, Clone)]
pub struct IsolationEntry {
    pub stratum: StratumClass,
    pub tag: R4TypeTag,
    pub boundary: Vec<BoundaryPoint>,
    pub isolated: bool,
    /// (other stratum index, shared boundary points).
    pub overlaps: Vec<(usize, Vec<BoundaryPoint>)>,
    pub piece_stabilizers: Vec<PieceStabilizer>,
}

/// Isolation report over all r = 4 strata of p.
pub fn isolation_report(p: PrimeModulus) -> Vec<IsolationEntry> {
    let graph = build_graph(p);
    let sets: Vec<Vec<usize>> = graph.incidence.clone();
    let mut report = Vec::with_capacity(graph.strata.len());
    for (i, s) in graph.strata.iter().enumerate() {
        let tag = classify_r4_type(s).expect("r = 4");
        let mut overlaps = Vec::new();
        for (j, other) in sets.iter().enumerate() {
            if i == j {
                continue;
            }
            let shared: Vec<BoundaryPoint> = sets[i]
                .iter()
                .filter(|b| other.contains(b))
                .map(|&b| graph.boundary_points[b])
                .collect();
            if !shared.is_empty() {
                overlaps.push((j, shared));
            }
        }
        let piece_stabilizers = stabilizer_evidence(s);
        report.push(IsolationEntry {
            stratum: s.clone(),
            tag,
            boundary: sets[i].iter().map(|&b| graph.boundary_points[b]).collect(),
            isolated: overlaps.is_empty(),
            overlaps,
            piece_stabilizers,
        });
    }
    report
}

fn stabilizer_evidence(s: &StratumClass) -> Vec<PieceStabilizer> {
    let v = s.canonical();
    let mut out = Vec::new();
    for (left, right) in SPLITS {
        for side in [left, right] {
            let (a, b) = (v[side[0]], v[side[1]]);
            let entry = PieceStabilizer {
                cone_pair: (a.value(), b.value()),
                p_label: p_class(a, b).expect("nonzero"),
                stabilizer: class_stabilizer(a, b)
                    .into_iter()
                    .map(|(c, swap)| (c.value(), swap))
                    .collect(),
            };
            if !out.contains(&entry) {
                out.push(entry);
            }
        }
    }
    out
}

/// Splits an r >= 4 class along one curve: each side keeps its sub-tuple and
/// gains the node exponent closing it to zero sum.
pub fn one_curve_degenerations(
    s: &StratumClass,
    side_a: &[usize],
) -> Result<(Vec<Residue>, Vec<Residue>, u64), BoundaryError> {
    let r = s.branch_count() as usize;
    let mut in_a = alloc::vec![false; r];
    for &i in side_a {
        if i >= r || in_a[i] {
            return Err(BoundaryError::BadPartition);
        }
        in_a[i] = true;
    }
    let size_a = side_a.len();
    if size_a < 2 || r - size_a < 2 {
        return Err(BoundaryError::BadPartition);
    }
    let p = s.modulus();
    let zero = Residue::normalize(0, p);
    let sum_a = side_a
        .iter()
        .fold(zero, |acc, &i| acc.add(s.canonical()[i]));

    let mut tuple_a: Vec<Residue> = side_a.iter().map(|&i| s.canonical()[i]).collect();
    let mut tuple_b: Vec<Residue> = (0..r)
        .filter(|&i| !in_a[i])
        .map(|i| s.canonical()[i])
        .collect();
    tuple_a.push(sum_a.neg());
    tuple_b.push(sum_a);
    Ok((tuple_a, tuple_b, node_multiplicity(sum_a)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monodromy::MonodromyTuple;
    use crate::strata::canonical_form;

    fn p(m: u64) -> PrimeModulus {
        PrimeModulus::new(m).unwrap()
    }

    fn class(pm: u64, exps: &[i64]) -> StratumClass {
        canonical_form(&MonodromyTuple::validate(p(pm), exps).unwrap())
    }

    fn bp(a: u64, b: u64, m: u64) -> BoundaryPoint {
        BoundaryPoint {
            pieces: (a.min(b), a.max(b)),
            multiplicity: m,
        }
    }

    #[test]
    fn boundary_set_genus4() {
        assert_eq!(
            boundary_set(&class(5, &[1, 1, 1, 2])).unwrap(),
            alloc::vec![bp(1, 2, 1)]
        );
        assert_eq!(
            boundary_set(&class(5, &[1, 1, 4, 4])).unwrap(),
            alloc::vec![bp(1, 1, 1), bp(4, 4, 5)]
        );
        assert_eq!(
            boundary_set(&class(5, &[1, 2, 3, 4])).unwrap(),
            alloc::vec![bp(2, 2, 1), bp(4, 4, 5)]
        );
    }

    #[test]
    fn boundary_set_size_bounds() {
        for pm in [5u64, 7, 11, 13] {
            for s in enumerate_strata(p(pm), 4) {
                let n = boundary_set(&s).unwrap().len();
                assert!((1..=3).contains(&n), "p={pm} stratum {s} has {n} points");
            }
        }
    }

    #[test]
    fn graph_genus4() {
        let g = build_graph(p(5));
        assert_eq!(g.strata.len(), 3);
        assert_eq!(
            g.boundary_points,
            alloc::vec![bp(1, 2, 1), bp(1, 1, 1), bp(4, 4, 5), bp(2, 2, 1)]
        );
        // T2 and T3 share exactly the 5-node sphere pair
        let shared: Vec<usize> = g.incidence[1]
            .iter()
            .filter(|b| g.incidence[2].contains(b))
            .copied()
            .collect();
        assert_eq!(shared, alloc::vec![2]);
        assert_eq!(g.boundary_points[2], bp(4, 4, 5));
        assert_eq!(connected_components(&g), alloc::vec![alloc::vec![0], alloc::vec![1, 2]]);
    }

    #[test]
    fn adjacency_is_symmetric() {
        for pm in [5u64, 7, 11, 13] {
            let report = isolation_report(p(pm));
            for (i, e) in report.iter().enumerate() {
                for (j, _) in &e.overlaps {
                    assert!(report[*j].overlaps.iter().any(|(k, _)| *k == i));
                }
            }
        }
    }

    #[test]
    fn isolation_genus4() {
        let report = isolation_report(p(5));
        assert_eq!(report.len(), 3);
        assert!(report[0].isolated); // T1
        assert!(!report[1].isolated); // T2
        assert!(!report[2].isolated); // T3
        assert_eq!(report[1].overlaps[0].1, alloc::vec![bp(4, 4, 5)]);
    }

    #[test]
    fn no_type5_below_eleven() {
        for pm in [5u64, 7] {
            let report = isolation_report(p(pm));
            assert!(report
                .iter()
                .all(|e| !matches!(e.tag, R4TypeTag::T5 { .. })));
        }
    }

    #[test]
    fn type5_isolated_at_eleven() {
        let report = isolation_report(p(11));
        let t5: Vec<_> = report
            .iter()
            .filter(|e| matches!(e.tag, R4TypeTag::T5 { .. }))
            .collect();
        assert!(!t5.is_empty());
        for e in t5 {
            assert!(e.isolated);
            // stabilizer of every boundary piece is just the identity
            for st in &e.piece_stabilizers {
                assert_eq!(st.stabilizer, alloc::vec![(1, false)]);
            }
        }
    }

    #[test]
    fn one_curve_degeneration_examples() {
        let vals = |v: &[Residue]| v.iter().map(|r| r.value()).collect::<Vec<u64>>();

        let (a, b, mult) = one_curve_degenerations(&class(5, &[1, 1, 1, 2]), &[0, 1]).unwrap();
        assert_eq!(vals(&a), [1, 1, 3]);
        assert_eq!(vals(&b), [1, 2, 2]);
        assert_eq!(mult, 1);

        let (a, _, mult) = one_curve_degenerations(&class(5, &[1, 1, 4, 4]), &[0, 2]).unwrap();
        assert_eq!(vals(&a), [1, 4, 0]);
        assert_eq!(mult, 5);

        assert_eq!(
            one_curve_degenerations(&class(5, &[1, 1, 1, 2]), &[0]),
            Err(BoundaryError::BadPartition)
        );
    }

    #[test]
    fn one_curve_degenerations_match_boundary_set() {
        // pinching each 2+2 split reproduces the boundary point pieces
        for pm in [5u64, 7, 11] {
            for s in enumerate_strata(p(pm), 4) {
                let points = boundary_set(&s).unwrap();
                for (left, _) in SPLITS {
                    let (a, b, mult) = one_curve_degenerations(&s, &left).unwrap();
                    let pa = p_class(a[0], a[1]).unwrap();
                    let pb = p_class(b[0], b[1]).unwrap();
                    let point = BoundaryPoint {
                        pieces: (pa.min(pb), pa.max(pb)),
                        multiplicity: mult,
                    };
                    assert!(points.contains(&point));
                }
            }
        }
    }
}
