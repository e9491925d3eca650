//! Equisymmetric strata: canonical forms under unit scaling and their
//! enumeration.
//!
//! Two tuples give the same stratum iff their exponent multisets differ by a
//! single unit scaling. The canonical representative is the lexicographically
//! least sorted tuple over all p-1 scalings, which makes reports reproducible
//! and class equality a plain comparison.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::monodromy::{genus_of, MonodromyTuple};
use crate::residue::{PrimeModulus, Residue};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrataError {
    /// Type tagging is defined for one-dimensional strata (r = 4) only.
    WrongArity(u64),
}

impl fmt::Display for StrataError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrataError::WrongArity(r) => write!(f, "type tags need r = 4, got r = {r}"),
        }
    }
}

/// Canonical representative of a stratum of the cyclic p-gonal locus.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StratumClass {
    modulus: PrimeModulus,
    canonical: Vec<Residue>,
    genus: u64,
}

impl StratumClass {
    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn canonical(&self) -> &[Residue] {
        &self.canonical
    }

    pub fn branch_count(&self) -> u64 {
        self.canonical.len() as u64
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    /// The canonical representative as a valid (ordered) tuple.
    pub fn representative(&self) -> MonodromyTuple {
        MonodromyTuple::from_residues(self.modulus, self.canonical.clone())
            .expect("canonical form is a valid tuple")
    }
}

impl fmt::Display for StratumClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.canonical.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// The class of a tuple: min over all unit scalings c of sorted(c * t).
pub fn canonical_form(t: &MonodromyTuple) -> StratumClass {
    let p = t.modulus();
    let mut best: Option<Vec<Residue>> = None;
    for c in 1..p.get() {
        let c = Residue::normalize(c as i64, p);
        let mut scaled = t.scaled(c).exponents().to_vec();
        scaled.sort_unstable();
        if best.as_ref().is_none_or(|b| scaled < *b) {
            best = Some(scaled);
        }
    }
    let canonical = best.expect("p >= 3 gives at least one scaling");
    StratumClass {
        modulus: p,
        genus: genus_of(p, t.branch_count()),
        canonical,
    }
}

/// Complete duplicate-free list of strata of branch count r, in lexicographic
/// order of canonical form.
pub fn enumerate_strata(p: PrimeModulus, r: u64) -> Vec<StratumClass> {
    assert!(r >= 3, "branch count must be >= 3");
    let mut seen = BTreeSet::new();
    let mut prefix = Vec::with_capacity(r as usize);
    collect_multisets(p, r as usize, 1, 0, &mut prefix, &mut seen);
    seen.into_iter().collect()
}

// Nondecreasing tuples over 1..p-1 with zero sum, canonicalized on the fly.
fn collect_multisets(
    p: PrimeModulus,
    r: usize,
    min_val: u64,
    sum: u64,
    prefix: &mut Vec<Residue>,
    seen: &mut BTreeSet<StratumClass>,
) {
    if prefix.len() == r {
        if sum.is_multiple_of(p.get()) {
            let t = MonodromyTuple::from_residues(p, prefix.clone())
                .expect("constructed tuple is valid");
            seen.insert(canonical_form(&t));
        }
        return;
    }
    for v in min_val..p.get() {
        prefix.push(Residue::normalize(v as i64, p));
        collect_multisets(p, r, v, sum + v, prefix, seen);
        prefix.pop();
    }
}

/// Topological type tag of an r = 4 stratum, with its normal-form parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum R4TypeTag {
    /// {a,a,a,b}: three equal exponents.
    T1,
    /// {a,a,-a,-a}: two inverse pairs with equal bases.
    T2,
    /// {a,b,-b,-a}: two distinct inverse pairs; normal form (1,i,-i,-1).
    T3 { i: u64 },
    /// {a,a,b,c} with b != c: normal form (1,1,i,p-2-i).
    T4 { i: u64 },
    /// All exponents distinct, no inverse pair; normal form (1,i,j,p-1-i-j).
    T5 { i: u64, j: u64 },
    /// Unreachable for valid classes; kept so exhaustion is observable.
    None,
}

impl R4TypeTag {
    pub fn family(&self) -> &'static str {
        match self {
            R4TypeTag::T1 => "T1",
            R4TypeTag::T2 => "T2",
            R4TypeTag::T3 { .. } => "T3",
            R4TypeTag::T4 { .. } => "T4",
            R4TypeTag::T5 { .. } => "T5",
            R4TypeTag::None => "NONE",
        }
    }
}

impl fmt::Display for R4TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            R4TypeTag::T1 => write!(f, "T1"),
            R4TypeTag::T2 => write!(f, "T2"),
            R4TypeTag::T3 { i } => write!(f, "T3({i})"),
            R4TypeTag::T4 { i } => write!(f, "T4({i})"),
            R4TypeTag::T5 { i, j } => write!(f, "T5({i},{j})"),
            R4TypeTag::None => write!(f, "NONE"),
        }
    }
}

/// Tags an r = 4 stratum by scanning its scaling orbit for the first
/// matching pattern, in order T1, T2, T3, T4, T5.
pub fn classify_r4_type(s: &StratumClass) -> Result<R4TypeTag, StrataError> {
    if s.branch_count() != 4 {
        return Err(StrataError::WrongArity(s.branch_count()));
    }
    let p = s.modulus().get();
    let v: Vec<u64> = s.canonical().iter().map(|e| e.value()).collect();

    // multiplicity profile is scaling-invariant, so one representative is
    // enough to branch on
    let mut counts: Vec<(u64, usize)> = Vec::new();
    for &x in &v {
        match counts.iter_mut().find(|(y, _)| *y == x) {
            Some((_, c)) => *c += 1,
            None => counts.push((x, 1)),
        }
    }
    counts.sort_by_key(|&(_, c)| core::cmp::Reverse(c));

    if counts[0].1 >= 3 {
        return Ok(R4TypeTag::T1);
    }
    if counts.len() == 2 && counts[0].1 == 2 {
        // {a,a,b,b}: validity forces b = -a
        debug_assert_eq!((counts[0].0 + counts[1].0) % p, 0);
        return Ok(R4TypeTag::T2);
    }
    if counts.len() == 3 {
        // {a,a,b,c}: normal form (1,1,i,p-2-i) after scaling a to 1
        let a = counts.iter().find(|(_, c)| *c == 2).expect("doubled entry").0;
        let a_inv = inv(a, p);
        let i = counts
            .iter()
            .filter(|(_, c)| *c == 1)
            .map(|(x, _)| x * a_inv % p)
            .min()
            .expect("two single entries");
        return Ok(R4TypeTag::T4 { i });
    }
    // all four distinct: T3 iff the multiset splits into two inverse pairs
    let pairings = [
        [(0usize, 1usize), (2usize, 3usize)],
        [(0, 2), (1, 3)],
        [(0, 3), (1, 2)],
    ];
    for pairing in pairings {
        if pairing.iter().all(|&(x, y)| (v[x] + v[y]).is_multiple_of(p)) {
            // pairs {a,-a}, {b,-b}: parameter i = b/a normalized into
            // [2, (p-1)/2]; the candidate set is closed under negation and
            // inversion so the minimum in range is well defined
            let (a, b) = (v[pairing[0].0], v[pairing[1].0]);
            let x = b * inv(a, p) % p;
            let xi = inv(x, p);
            let i = [x, p - x, xi, p - xi]
                .into_iter()
                .filter(|&c| c <= (p - 1) / 2)
                .min()
                .expect("negation-closed candidate set");
            return Ok(R4TypeTag::T3 { i });
        }
    }
    // T5: normal form (1,i,j,p-1-i-j); lexicographically least (i,j) over the
    // four scalings that send one entry to 1
    let mut best: Option<(u64, u64)> = None;
    for &e in &v {
        let e_inv = inv(e, p);
        let mut rest: Vec<u64> = v
            .iter()
            .map(|&x| x * e_inv % p)
            .filter(|&x| x != 1)
            .collect();
        if rest.len() != 3 {
            continue; // scaling sent two entries to 1: not a T5 witness
        }
        rest.sort_unstable();
        let cand = (rest[0], rest[1]);
        if best.is_none_or(|b| cand < b) {
            best = Some(cand);
        }
    }
    match best {
        Some((i, j)) => Ok(R4TypeTag::T5 { i, j }),
        Option::None => Ok(R4TypeTag::None),
    }
}

/// Number of type-5 strata at branch count 4.
pub fn count_type5(p: PrimeModulus) -> u64 {
    assert!(p.get() >= 5, "type-5 counting needs p >= 5");
    enumerate_strata(p, 4)
        .iter()
        .filter(|s| matches!(classify_r4_type(s), Ok(R4TypeTag::T5 { .. })))
        .count() as u64
}

fn inv(a: u64, p: u64) -> u64 {
    Residue::normalize(a as i64, PrimeModulus::new(p).expect("valid modulus"))
        .unit_inverse()
        .expect("nonzero")
        .value()
}
