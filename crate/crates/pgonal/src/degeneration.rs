//! Pinching chain pants decompositions and lifting through the cyclic cover.
//!
//! The quotient sphere carries the chain family of curves where curve i
//! encloses the first i branch points. Pinching every chain curve cuts the
//! sphere into a left disk with two cone points, a run of annuli with one
//! cone point each, and a right disk with two cone points. Each piece lifts
//! through the degree-p cover by Riemann-Hurwitz bookkeeping to a symbolic
//! component (genus, cusp count, label), and each pinched curve contributes a
//! bundle of nodes whose size is p over the order of its monodromy.

use alloc::vec::Vec;
use core::fmt;

use crate::monodromy::{genus_of, MonodromyTuple};
use crate::residue::{PrimeModulus, Residue};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegenerationError {
    /// Curve index outside 2..=r-2.
    OutOfRange { index: u64, r: u64 },
    /// Piece violates the zero-sum or shape invariants.
    InconsistentPiece,
    /// Internal contradiction in the Euler characteristic bookkeeping.
    /// Cannot fire on valid input; indicates an engine bug.
    NonIntegralGenus,
    /// Cone exponents must be nonzero.
    ZeroExponent,
    /// Collar bound needs automorphism order >= 3.
    InvalidOrder(u64),
    /// Chain pinching needs r >= 4.
    ChainTooShort(u64),
}

impl fmt::Display for DegenerationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegenerationError::OutOfRange { index, r } => {
                write!(f, "curve index {index} outside 2..={} for r = {r}", r - 2)
            }
            DegenerationError::InconsistentPiece => write!(f, "piece violates its invariants"),
            DegenerationError::NonIntegralGenus => {
                write!(f, "non-integral genus: internal bookkeeping error")
            }
            DegenerationError::ZeroExponent => write!(f, "cone exponent must be nonzero"),
            DegenerationError::InvalidOrder(d) => write!(f, "order {d} is below 3"),
            DegenerationError::ChainTooShort(r) => write!(f, "chain pinching needs r >= 4, got {r}"),
        }
    }
}

/// Monodromy of chain curve i: sum of the first i exponents mod p.
pub fn curve_monodromy(t: &MonodromyTuple, i: u64) -> Result<Residue, DegenerationError> {
    let r = t.branch_count();
    if i < 2 || i > r - 2 {
        return Err(DegenerationError::OutOfRange { index: i, r });
    }
    let p = t.modulus();
    Ok(t.exponents()[..i as usize]
        .iter()
        .fold(Residue::normalize(0, p), |a, &b| a.add(b)))
}

/// Number of curves upstairs over a pinched curve of monodromy s:
/// p if s = 0, else 1 (p prime, so the image order is 1 or p).
pub fn node_multiplicity(s: Residue) -> u64 {
    if s.is_zero() {
        s.modulus().get()
    } else {
        1
    }
}

/// A sphere piece of the pinched decomposition: boundary curves with
/// signed (outward-oriented) monodromies plus interior cone exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientPiece {
    /// (curve id, outward monodromy) per boundary circle.
    pub boundary: Vec<(u64, Residue)>,
    /// Cone point exponents, all nonzero.
    pub cones: Vec<Residue>,
}

/// Symbolic label of a lifted component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PieceLabel {
    /// Once punctured torus with an order-3 isometry (p = 3).
    Q,
    /// Four times punctured sphere (p = 3).
    X,
    /// Twice punctured torus (p = 3).
    Alpha,
    /// Thrice punctured sphere (p = 3).
    Y,
    /// Cover of the two-cone one-cusp sphere orbifold with cone class j.
    P(u64),
    /// No standard name; identified by (genus, cusps) alone.
    Other,
}

impl fmt::Display for PieceLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PieceLabel::Q => write!(f, "Q"),
            PieceLabel::X => write!(f, "X"),
            PieceLabel::Alpha => write!(f, "α"),
            PieceLabel::Y => write!(f, "Y"),
            PieceLabel::P(j) => write!(f, "P{j}"),
            PieceLabel::Other => write!(f, "?"),
        }
    }
}

/// One component of the lifted stable surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LiftedComponent {
    pub genus: u64,
    pub cusps: u64,
    pub label: PieceLabel,
}

/// Symbolic stable nodal surface: components joined by node bundles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodalSurface {
    pub components: Vec<LiftedComponent>,
    /// (left component index, right component index, node count).
    pub node_bundles: Vec<(usize, usize, u64)>,
}

impl NodalSurface {
    /// Sum of component genera plus first Betti number of the dual graph.
    pub fn arithmetic_genus(&self) -> u64 {
        let genera: u64 = self.components.iter().map(|c| c.genus).sum();
        let nodes: u64 = self.node_bundles.iter().map(|&(_, _, m)| m).sum();
        genera + nodes + 1 - self.components.len() as u64
    }

    /// Chain rendering like "Q -1- X -3- X -1- α -1- Q".
    pub fn chain_string(&self) -> alloc::string::String {
        use core::fmt::Write;
        let mut s = alloc::string::String::new();
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                let mult = self
                    .node_bundles
                    .iter()
                    .find(|&&(l, r, _)| l == i - 1 && r == i)
                    .map(|&(_, _, m)| m)
                    .unwrap_or(0);
                write!(s, " -{mult}- ").unwrap();
            }
            write!(s, "{}", c.label).unwrap();
        }
        s
    }
}

/// Lifts one quotient piece through the degree-p cover.
///
/// The cover restricted to the piece has p / |H| components, where H is the
/// subgroup of Z_p generated by the boundary monodromies and cone exponents;
/// since p is prime that is 1 component unless everything is trivial.
pub fn lift_piece(
    piece: &QuotientPiece,
    p: PrimeModulus,
) -> Result<Vec<LiftedComponent>, DegenerationError> {
    let pv = p.get() as i64;
    if piece.cones.iter().any(|c| c.is_zero()) {
        return Err(DegenerationError::ZeroExponent);
    }
    if piece.boundary.len() + piece.cones.len() < 3 {
        return Err(DegenerationError::InconsistentPiece);
    }
    let total = piece
        .boundary
        .iter()
        .map(|&(_, s)| s)
        .chain(piece.cones.iter().copied())
        .fold(Residue::normalize(0, p), |a, b| a.add(b));
    if !total.is_zero() {
        return Err(DegenerationError::InconsistentPiece);
    }

    let all_trivial =
        piece.cones.is_empty() && piece.boundary.iter().all(|&(_, s)| s.is_zero());
    let n_c = if all_trivial { pv } else { 1 };

    // boundary circles upstairs, split evenly across components
    let lifted_circles: i64 = piece
        .boundary
        .iter()
        .map(|&(_, s)| node_multiplicity(s) as i64)
        .sum();
    if lifted_circles % n_c != 0 {
        return Err(DegenerationError::NonIntegralGenus);
    }
    let cusps = lifted_circles / n_c;

    // p * chi_orb = 2p - p * #boundary - (p-1) * #cones, exact in integers
    let p_chi_orb = 2 * pv
        - pv * piece.boundary.len() as i64
        - (pv - 1) * piece.cones.len() as i64;
    if p_chi_orb % n_c != 0 {
        return Err(DegenerationError::NonIntegralGenus);
    }
    let chi = p_chi_orb / n_c;

    // chi = 2 - 2g - cusps
    let two_g = 2 - cusps - chi;
    if two_g < 0 || two_g % 2 != 0 {
        return Err(DegenerationError::NonIntegralGenus);
    }
    let genus = (two_g / 2) as u64;
    let cusps = cusps as u64;

    let label = label_for(piece, p, genus, cusps)?;
    let component = LiftedComponent { genus, cusps, label };
    Ok((0..n_c).map(|_| component).collect())
}

fn label_for(
    piece: &QuotientPiece,
    p: PrimeModulus,
    genus: u64,
    cusps: u64,
) -> Result<PieceLabel, DegenerationError> {
    if p.get() == 3 {
        return Ok(match (genus, cusps) {
            (1, 1) => PieceLabel::Q,
            (0, 4) => PieceLabel::X,
            (1, 2) => PieceLabel::Alpha,
            (0, 3) => PieceLabel::Y,
            _ => PieceLabel::Other,
        });
    }
    if piece.cones.len() == 2 && piece.boundary.len() == 1 {
        let j = p_class(piece.cones[0], piece.cones[1])?;
        return Ok(PieceLabel::P(j));
    }
    Ok(PieceLabel::Other)
}

/// Pinches every chain curve of a tuple and lifts the pieces, producing the
/// symbolic stable surface upstairs.
pub fn pinch_chain(t: &MonodromyTuple) -> Result<NodalSurface, DegenerationError> {
    let r = t.branch_count();
    if r < 4 {
        return Err(DegenerationError::ChainTooShort(r));
    }
    let p = t.modulus();
    let exps = t.exponents();

    // partial sums s_2 .. s_{r-2}
    let sums: Vec<Residue> = (2..=r - 2)
        .map(|i| curve_monodromy(t, i).expect("index in range"))
        .collect();

    let mut pieces = Vec::with_capacity((r - 2) as usize);
    // left disk: branch points 1, 2; right boundary is curve 2.
    // A piece's left boundary enters with +s and its right boundary with -s,
    // so each piece sums to zero.
    pieces.push(QuotientPiece {
        boundary: alloc::vec![(2, sums[0].neg())],
        cones: alloc::vec![exps[0], exps[1]],
    });
    // middle annuli: piece m holds branch point m + 3
    for m in 0..(r - 4) as usize {
        pieces.push(QuotientPiece {
            boundary: alloc::vec![
                (2 + m as u64, sums[m]),
                (3 + m as u64, sums[m + 1].neg()),
            ],
            cones: alloc::vec![exps[m + 2]],
        });
    }
    // right disk: branch points r-1, r; left boundary is curve r-2
    pieces.push(QuotientPiece {
        boundary: alloc::vec![(r - 2, sums[sums.len() - 1])],
        cones: alloc::vec![exps[(r - 2) as usize], exps[(r - 1) as usize]],
    });

    let mut components = Vec::with_capacity(pieces.len());
    for piece in &pieces {
        let lifted = lift_piece(piece, p)?;
        // every chain piece holds a cone point, so it lifts connectedly
        debug_assert_eq!(lifted.len(), 1);
        components.push(lifted[0]);
    }

    let node_bundles: Vec<(usize, usize, u64)> = sums
        .iter()
        .enumerate()
        .map(|(k, &s)| (k, k + 1, node_multiplicity(s)))
        .collect();

    let surface = NodalSurface {
        components,
        node_bundles,
    };
    assert_eq!(
        surface.arithmetic_genus(),
        genus_of(p, r),
        "arithmetic genus conservation violated: engine bug"
    );
    Ok(surface)
}

/// The P-class of a cone pair: j = min(x, x^-1) with x = a^-1 b. Invariant
/// under common scaling and under swapping the pair.
pub fn p_class(a: Residue, b: Residue) -> Result<u64, DegenerationError> {
    if a.is_zero() || b.is_zero() {
        return Err(DegenerationError::ZeroExponent);
    }
    let x = a.unit_inverse().expect("nonzero").mul(b);
    let xi = x.unit_inverse().expect("nonzero");
    Ok(x.value().min(xi.value()))
}

/// All (c, swap) with c nonzero such that c * (a, b), optionally swapped,
/// equals (a, b) as an ordered pair. Always contains (1, false).
pub fn class_stabilizer(a: Residue, b: Residue) -> Vec<(Residue, bool)> {
    let p = a.modulus();
    let mut out = Vec::new();
    for c in 1..p.get() {
        let c = Residue::normalize(c as i64, p);
        if (a.mul(c), b.mul(c)) == (a, b) {
            out.push((c, false));
        }
        if (b.mul(c), a.mul(c)) == (a, b) {
            out.push((c, true));
        }
    }
    out
}

/// Lower bound 2 arccosh(1 / sin(2 pi / d)) on the length of a closed
/// geodesic through a fixed point of an order-d automorphism. Degenerates to
/// 0 at d = 4; meaningful for the odd d >= 3 used here.
pub fn collar_bound(d: u64) -> Result<f64, DegenerationError> {
    if d < 3 {
        return Err(DegenerationError::InvalidOrder(d));
    }
    let angle = 2.0 * core::f64::consts::PI / d as f64;
    Ok(2.0 * libm::acosh(1.0 / libm::sin(angle)))
}
