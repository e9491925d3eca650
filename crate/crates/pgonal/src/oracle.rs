//! Independent brute-force ground truth.
//!
//! Orbits are computed by exhaustive enumeration plus union-find closure,
//! deliberately sharing no canonicalization code with the main engine: the
//! raw modular arithmetic is reimplemented here so the two routes can
//! disagree if either is wrong.

use alloc::vec::Vec;
use core::fmt;

use crate::residue::PrimeModulus;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleError {
    /// Instance exceeds the exhaustive-search guard.
    TooLarge,
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::TooLarge => write!(f, "instance exceeds the brute-force guard"),
        }
    }
}

/// A partition of an exhaustively enumerated universe into group orbits.
#[derive(Debug, Clone)]
pub struct OrbitPartition {
    pub p: u64,
    pub r: u64,
    /// Encoded members of the universe (base p-1 digit codes).
    pub members: Vec<u64>,
    /// Block index per member, parallel to `members`.
    pub block_of: Vec<u32>,
    pub block_count: usize,
}

impl OrbitPartition {
    /// Block index of an exponent tuple, if it belongs to the universe.
    pub fn block_of_tuple(&self, exponents: &[u64]) -> Option<u32> {
        let code = encode(exponents, self.p)?;
        let idx = self.members.binary_search(&code).ok()?;
        Some(self.block_of[idx])
    }
}

/// Decodes a member code back to its exponent tuple (values in 1..p-1).
pub fn decode_tuple(code: u64, p: u64, r: u64) -> Vec<u64> {
    let base = p - 1;
    let mut c = code;
    let mut out = Vec::with_capacity(r as usize);
    for _ in 0..r {
        out.push(c % base + 1);
        c /= base;
    }
    out
}

fn encode(exponents: &[u64], p: u64) -> Option<u64> {
    let base = p - 1;
    let mut code = 0u64;
    for &e in exponents.iter().rev() {
        if e == 0 || e >= p {
            return None;
        }
        code = code * base + (e - 1);
    }
    Some(code)
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let g = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = g;
            x = g;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb) as usize] = ra.min(rb);
        }
    }
}

/// Exhaustive orbit partition of all valid ordered exponent tuples of length
/// r under sorting and unit scaling.
pub fn orbit_classes_bruteforce(p: PrimeModulus, r: u64) -> Result<OrbitPartition, OracleError> {
    let pv = p.get();
    if r > 6 {
        return Err(OracleError::TooLarge);
    }
    let base = pv - 1;
    let total = base.checked_pow(r as u32).ok_or(OracleError::TooLarge)?;
    if total > 100_000_000 {
        return Err(OracleError::TooLarge);
    }

    let mut uf = UnionFind::new(total as usize);
    let mut valid = alloc::vec![false; total as usize];
    let mut tuple = alloc::vec![0u64; r as usize];
    let mut scaled = alloc::vec![0u64; r as usize];
    for code in 0..total {
        // decode in place
        let mut c = code;
        let mut sum = 0u64;
        for slot in tuple.iter_mut() {
            *slot = c % base + 1;
            sum += *slot;
            c /= base;
        }
        if !sum.is_multiple_of(pv) {
            continue;
        }
        valid[code as usize] = true;
        // sorting edge
        scaled.copy_from_slice(&tuple);
        scaled.sort_unstable();
        uf.union(code as u32, encode(&scaled, pv).expect("valid digits") as u32);
        // scaling edges
        for c in 2..pv {
            for (dst, &src) in scaled.iter_mut().zip(tuple.iter()) {
                *dst = src * c % pv;
            }
            uf.union(code as u32, encode(&scaled, pv).expect("nonzero entries") as u32);
        }
    }

    collect_blocks(pv, r, total, valid, uf)
}

/// Orbits of nonzero pairs (a, b) under common scaling and swapping; the
/// block count is the number of distinct one-cusp boundary pieces.
pub fn pclass_orbit_bruteforce(p: PrimeModulus) -> Result<OrbitPartition, OracleError> {
    let pv = p.get();
    if pv > 101 {
        return Err(OracleError::TooLarge);
    }
    let base = pv - 1;
    let total = base * base;
    let mut uf = UnionFind::new(total as usize);
    for a in 1..pv {
        for b in 1..pv {
            let code = encode(&[a, b], pv).expect("nonzero") as u32;
            uf.union(code, encode(&[b, a], pv).expect("nonzero") as u32);
            for c in 2..pv {
                let scaled = [a * c % pv, b * c % pv];
                uf.union(code, encode(&scaled, pv).expect("nonzero") as u32);
            }
        }
    }
    collect_blocks(pv, 2, total, alloc::vec![true; total as usize], uf)
}

fn collect_blocks(
    p: u64,
    r: u64,
    total: u64,
    valid: Vec<bool>,
    mut uf: UnionFind,
) -> Result<OrbitPartition, OracleError> {
    let mut block_id = alloc::vec![u32::MAX; total as usize];
    let mut members = Vec::new();
    let mut block_of = Vec::new();
    let mut block_count = 0u32;
    for code in 0..total {
        if !valid[code as usize] {
            continue;
        }
        let root = uf.find(code as u32) as usize;
        if block_id[root] == u32::MAX {
            block_id[root] = block_count;
            block_count += 1;
        }
        members.push(code);
        block_of.push(block_id[root]);
    }
    Ok(OrbitPartition {
        p,
        r,
        members,
        block_of,
        block_count: block_count as usize,
    })
}
