//! Cyclic p-gonal branch data as exponent tuples.
//!
//! A degree-p cyclic cover of the sphere branched over r points is recorded
//! by the exponents (j_1, ..., j_r) of the meridian images: each meridian
//! maps to the j_i-th power of a fixed p-cycle. The product relation of the
//! meridians forces the exponent sum to vanish mod p.

use alloc::vec::Vec;
use core::fmt;

use crate::residue::{scale_tuple, PrimeModulus, Residue};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonodromyError {
    /// Exponent at this index is 0 mod p (meridian image must have order p).
    ZeroExponent(usize),
    /// Exponent sum is this nonzero value mod p.
    SumNotZero(u64),
    /// Fewer than 3 branch points.
    TooShort(usize),
    /// Operation defined only for the trigonal case p = 3.
    WrongModulus(u64),
    /// (p-1) does not divide 2g: no cyclic p-fold cover of the sphere.
    NotRamifiedOverSphere { p: u64, genus: u64 },
    /// Genus below the hyperbolic range g >= 2.
    GenusTooSmall(u64),
}

impl fmt::Display for MonodromyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonodromyError::ZeroExponent(i) => write!(f, "exponent at index {i} is 0 mod p"),
            MonodromyError::SumNotZero(s) => write!(f, "exponent sum is {s}, not 0 mod p"),
            MonodromyError::TooShort(r) => write!(f, "need at least 3 branch points, got {r}"),
            MonodromyError::WrongModulus(p) => write!(f, "operation requires p = 3, got p = {p}"),
            MonodromyError::NotRamifiedOverSphere { p, genus } => {
                write!(f, "2g = {} is not divisible by p-1 = {}", 2 * genus, p - 1)
            }
            MonodromyError::GenusTooSmall(g) => write!(f, "genus {g} is below 2"),
        }
    }
}

/// An ordered exponent tuple (j_1, ..., j_r) over Z_p* with zero sum.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MonodromyTuple {
    modulus: PrimeModulus,
    exponents: Vec<Residue>,
}

impl MonodromyTuple {
    /// Validates raw integer exponents: normalizes mod p, rejects zero
    /// entries, nonzero sum, and tuples shorter than 3.
    pub fn validate(p: PrimeModulus, exponents: &[i64]) -> Result<Self, MonodromyError> {
        let normalized: Vec<Residue> = exponents
            .iter()
            .map(|&e| Residue::normalize(e, p))
            .collect();
        Self::from_residues(p, normalized)
    }

    pub fn from_residues(
        p: PrimeModulus,
        exponents: Vec<Residue>,
    ) -> Result<Self, MonodromyError> {
        if exponents.len() < 3 {
            return Err(MonodromyError::TooShort(exponents.len()));
        }
        for (i, e) in exponents.iter().enumerate() {
            if e.is_zero() {
                return Err(MonodromyError::ZeroExponent(i));
            }
        }
        let sum = exponents
            .iter()
            .fold(Residue::normalize(0, p), |a, &b| a.add(b));
        if !sum.is_zero() {
            return Err(MonodromyError::SumNotZero(sum.value()));
        }
        Ok(MonodromyTuple {
            modulus: p,
            exponents,
        })
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn exponents(&self) -> &[Residue] {
        &self.exponents
    }

    /// Branch point count r.
    pub fn branch_count(&self) -> u64 {
        self.exponents.len() as u64
    }

    /// Genus of the covering surface.
    pub fn genus(&self) -> u64 {
        genus_of(self.modulus, self.branch_count())
    }

    /// Elementwise unit scaling; validity is preserved.
    pub fn scaled(&self, c: Residue) -> MonodromyTuple {
        let exps = scale_tuple(&self.exponents, c).expect("unit scalar");
        MonodromyTuple {
            modulus: self.modulus,
            exponents: exps,
        }
    }
}

/// Riemann-Hurwitz: g = (r-2)(p-1)/2 for a p-fold cyclic cover of the
/// sphere totally ramified over r points.
pub fn genus_of(p: PrimeModulus, r: u64) -> u64 {
    assert!(r >= 3, "branch count must be >= 3");
    (r - 2) * (p.get() - 1) / 2
}

/// Inverse of `genus_of`: r = 2g/(p-1) + 2 when (p-1) divides 2g.
pub fn branch_count(p: PrimeModulus, g: u64) -> Result<u64, MonodromyError> {
    if g < 2 {
        return Err(MonodromyError::GenusTooSmall(g));
    }
    let d = p.get() - 1;
    if !(2 * g).is_multiple_of(d) {
        return Err(MonodromyError::NotRamifiedOverSphere { p: p.get(), genus: g });
    }
    Ok(2 * g / d + 2)
}

/// Counts of trigonal meridians sent to t and to t^-1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignedCounts {
    pub m_plus: u64,
    pub m_minus: u64,
}

/// For p = 3: m_+ = #{j_i = 1}, m_- = #{j_i = 2}.
pub fn signed_counts(t: &MonodromyTuple) -> Result<SignedCounts, MonodromyError> {
    if t.modulus().get() != 3 {
        return Err(MonodromyError::WrongModulus(t.modulus().get()));
    }
    let m_plus = t.exponents().iter().filter(|e| e.value() == 1).count() as u64;
    let m_minus = t.exponents().iter().filter(|e| e.value() == 2).count() as u64;
    Ok(SignedCounts { m_plus, m_minus })
}

/// The admissible m_+ values for trigonal genus g:
/// I = { k in [0, g+2] : k = -(g+2) mod 3 }.
pub fn admissible_mplus_set(g: u64) -> Vec<u64> {
    assert!(g >= 2, "genus must be >= 2");
    let r = g + 2;
    let target = (3 - (r % 3)) % 3;
    (0..=r).filter(|k| k % 3 == target).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(m: u64) -> PrimeModulus {
        PrimeModulus::new(m).unwrap()
    }

    #[test]
    fn validate_examples() {
        let t = MonodromyTuple::validate(p(5), &[1, 1, 1, 2]).unwrap();
        assert_eq!(t.branch_count(), 4);
        assert_eq!(
            MonodromyTuple::validate(p(5), &[1, 1, 1, 1]),
            Err(MonodromyError::SumNotZero(4))
        );
        assert_eq!(
            MonodromyTuple::validate(p(3), &[1, 2]),
            Err(MonodromyError::TooShort(2))
        );
        assert_eq!(
            MonodromyTuple::validate(p(5), &[1, 0, 2, 2]),
            Err(MonodromyError::ZeroExponent(1))
        );
    }

    #[test]
    fn genus_of_examples() {
        assert_eq!(genus_of(p(5), 4), 4);
        assert_eq!(genus_of(p(11), 4), 10);
        for r in 3..20 {
            assert_eq!(genus_of(p(3), r), r - 2);
        }
    }

    #[test]
    fn branch_count_examples() {
        assert_eq!(branch_count(p(5), 4), Ok(4));
        assert_eq!(branch_count(p(3), 5), Ok(7));
        assert_eq!(
            branch_count(p(5), 3),
            Err(MonodromyError::NotRamifiedOverSphere { p: 5, genus: 3 })
        );
        assert_eq!(branch_count(p(5), 1), Err(MonodromyError::GenusTooSmall(1)));
    }

    #[test]
    fn signed_counts_examples() {
        let t = MonodromyTuple::validate(p(3), &[1, 1, 1, 1, 1, 2, 2]).unwrap();
        let c = signed_counts(&t).unwrap();
        assert_eq!(c, SignedCounts { m_plus: 5, m_minus: 2 });
        assert_eq!((c.m_plus + 2 * c.m_minus) % 3, 0);

        let t = MonodromyTuple::validate(p(3), &[1, 1, 1]).unwrap();
        assert_eq!(signed_counts(&t).unwrap(), SignedCounts { m_plus: 3, m_minus: 0 });
        let t = MonodromyTuple::validate(p(3), &[2, 2, 2]).unwrap();
        assert_eq!(signed_counts(&t).unwrap(), SignedCounts { m_plus: 0, m_minus: 3 });

        let t = MonodromyTuple::validate(p(5), &[1, 1, 1, 2]).unwrap();
        assert_eq!(signed_counts(&t), Err(MonodromyError::WrongModulus(5)));
    }

    #[test]
    fn admissible_sets() {
        assert_eq!(admissible_mplus_set(5), alloc::vec![2, 5]);
        assert_eq!(admissible_mplus_set(6), alloc::vec![1, 4, 7]);
        assert_eq!(admissible_mplus_set(4), alloc::vec![0, 3, 6]);
    }

    #[test]
    fn admissible_iff_valid_tuple() {
        // (1 x k, 2 x (g+2-k)) passes validate exactly for k in I.
        for g in 2u64..20 {
            let r = g + 2;
            let admissible = admissible_mplus_set(g);
            for k in 0..=r {
                let mut exps: Vec<i64> = alloc::vec![1; k as usize];
                exps.extend(std::iter::repeat_n(2, (r - k) as usize));
                let ok = MonodromyTuple::validate(p(3), &exps).is_ok();
                assert_eq!(ok, admissible.contains(&k), "g={g} k={k}");
            }
        }
    }

    proptest! {
        #[test]
        fn validate_commutes_with_scaling(
            vals in prop::collection::vec(1i64..100, 3..9),
            c in 1i64..10,
            pm in prop::sample::select(alloc::vec![3u64, 5, 7, 11]),
        ) {
            let m = p(pm);
            let c = Residue::normalize(c, m);
            prop_assume!(!c.is_zero());
            let scaled_raw: Vec<i64> = vals
                .iter()
                .map(|&v| (Residue::normalize(v, m).mul(c)).value() as i64)
                .collect();
            let direct = MonodromyTuple::validate(m, &vals);
            let scaled = MonodromyTuple::validate(m, &scaled_raw);
            // scaling by a unit preserves validity in both directions
            prop_assert_eq!(direct.is_ok(), scaled.is_ok());
            if let (Ok(a), Ok(b)) = (direct, scaled) {
                prop_assert_eq!(a.scaled(c), b);
            }
        }

        #[test]
        fn genus_branch_count_roundtrip(
            g in 2u64..200,
            pm in prop::sample::select(alloc::vec![3u64, 5, 7, 11, 13]),
        ) {
            let m = p(pm);
            if let Ok(r) = branch_count(m, g) {
                prop_assert_eq!(genus_of(m, r), g);
            }
        }
    }
}
