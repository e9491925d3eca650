//! The trigonal connector: one nodal surface in the closure of every
//! equisymmetric trigonal stratum of a given genus.
//!
//! Branch points are arranged into same-sign triples plus a short leftover
//! block, the chain decomposition is pinched, and the lifted chain is checked
//! to be independent of the stratum index m_+.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::degeneration::{pinch_chain, NodalSurface, PieceLabel};
use crate::monodromy::{admissible_mplus_set, MonodromyTuple};
use crate::residue::PrimeModulus;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConnectorError {
    /// k is not an admissible m_+ for this genus.
    InadmissibleMPlus { genus: u64, k: u64 },
    /// Neither sign class has 3 points (only possible at g <= 2).
    NoTriple,
    /// The connector construction needs g >= 5.
    GenusTooSmall(u64),
    /// Two admissible m_+ values produced different chains. Cannot happen;
    /// this is the machine statement of chain independence.
    IndependenceViolated { genus: u64 },
}

impl fmt::Display for ConnectorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConnectorError::InadmissibleMPlus { genus, k } => {
                write!(f, "m+ = {k} is not admissible for genus {genus}")
            }
            ConnectorError::NoTriple => write!(f, "no sign class holds a full triple"),
            ConnectorError::GenusTooSmall(g) => write!(f, "connector needs genus >= 5, got {g}"),
            ConnectorError::IndependenceViolated { genus } => {
                write!(f, "chains for genus {genus} disagree across m+ values")
            }
        }
    }
}

/// Leftover block after arranging a maximum number of same-sign triples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Leftover {
    /// r = 0 mod 3: nothing left over.
    None,
    /// r = 2 mod 3: one point of each sign.
    OneOne,
    /// r = 1 mod 3: two points of each sign.
    TwoTwo,
}

/// A canonical ordering of trigonal branch points: plus triples, minus
/// triples, then the leftover block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrigonalArrangement {
    pub genus: u64,
    pub m_plus: u64,
    pub m_minus: u64,
    pub ordering: MonodromyTuple,
    pub triple_count: u64,
    pub leftover: Leftover,
}

/// Arranges the branch points of the (g, m_+ = k) stratum into the canonical
/// triple ordering.
pub fn arrange(g: u64, k: u64) -> Result<TrigonalArrangement, ConnectorError> {
    assert!(g >= 2, "genus must be >= 2");
    let r = g + 2;
    if !admissible_mplus_set(g).contains(&k) {
        return Err(ConnectorError::InadmissibleMPlus { genus: g, k });
    }
    let m_plus = k;
    let m_minus = r - k;
    if m_plus.max(m_minus) < 3 {
        return Err(ConnectorError::NoTriple);
    }
    let plus_triples = m_plus / 3;
    let minus_triples = m_minus / 3;
    let triple_count = plus_triples + minus_triples;

    let leftover = match r % 3 {
        0 => Leftover::None,
        2 => Leftover::OneOne,
        _ => Leftover::TwoTwo,
    };

    let mut exps: Vec<i64> = Vec::with_capacity(r as usize);
    exps.extend(core::iter::repeat_n(1, 3 * plus_triples as usize));
    exps.extend(core::iter::repeat_n(2, 3 * minus_triples as usize));
    match leftover {
        Leftover::None => {}
        Leftover::OneOne => exps.extend([1, 2]),
        Leftover::TwoTwo => exps.extend([1, 1, 2, 2]),
    }
    debug_assert_eq!(exps.len() as u64, r);

    let p3 = PrimeModulus::new(3).expect("3 is prime");
    let ordering = MonodromyTuple::validate(p3, &exps).expect("arrangement is a valid tuple");
    Ok(TrigonalArrangement {
        genus: g,
        m_plus,
        m_minus,
        ordering,
        triple_count,
        leftover,
    })
}

/// Labeled-chain view used for the independence comparison.
fn chain_signature(s: &NodalSurface) -> (Vec<(u64, u64, PieceLabel)>, Vec<u64>) {
    let comps = s
        .components
        .iter()
        .map(|c| (c.genus, c.cusps, c.label))
        .collect();
    let mults = s.node_bundles.iter().map(|&(_, _, m)| m).collect();
    (comps, mults)
}

/// The universal connector surface of genus g: the pinched chain of every
/// admissible arrangement, verified identical across all m_+ values.
pub fn connector_surface(g: u64) -> Result<(NodalSurface, String), ConnectorError> {
    if g < 5 {
        return Err(ConnectorError::GenusTooSmall(g));
    }
    let mut common: Option<NodalSurface> = None;
    for k in admissible_mplus_set(g) {
        let arrangement = arrange(g, k)?;
        let surface = pinch_chain(&arrangement.ordering).expect("arrangement pinches cleanly");
        match &common {
            None => common = Some(surface),
            Some(prev) => {
                if chain_signature(prev) != chain_signature(&surface) {
                    return Err(ConnectorError::IndependenceViolated { genus: g });
                }
            }
        }
    }
    let surface = common.expect("admissible set is nonempty");
    let chain = surface.chain_string();
    Ok((surface, chain))
}

/// Closed-form piece sequence of the connector chain for branch count r.
pub fn case_formula(r: u64) -> Vec<PieceLabel> {
    assert!(r >= 7, "case formulas apply from r = 7 (genus 5)");
    use PieceLabel::{Alpha, Q, X, Y};
    let mut out = Vec::new();
    match r % 3 {
        0 => {
            let t = r / 3;
            out.extend([Q, X]);
            for _ in 0..t - 2 {
                out.extend([X, Alpha, X]);
            }
            out.extend([X, Q]);
        }
        1 => {
            let t = (r - 4) / 3;
            out.extend([Q, X]);
            for _ in 0..t - 1 {
                out.extend([X, Alpha, X]);
            }
            out.extend([X, Alpha, Q]);
        }
        _ => {
            let t = (r - 2) / 3;
            out.extend([Q, X]);
            for _ in 0..t - 1 {
                out.extend([X, Alpha, X]);
            }
            out.push(Y);
        }
    }
    out
}
