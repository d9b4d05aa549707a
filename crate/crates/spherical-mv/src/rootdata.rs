//! Root-system and Weyl-group data.
//!
//! Rank-one spaces are parametrised by the multiplicities (p, q) of the
//! restricted roots α and 2α. We fix the inner product on 𝔞* so that
//! ‖α‖ = 1 and coordinates on 𝔞 by t = α(H); in this chart ρ corresponds to
//! the scalar p/2 + q and the spectral parameter λ to the scalar ⟨λ, α₀⟩.
//!
//! Type-A Weyl groups are realised as symmetric groups acting on coordinates
//! of ℝ^{l+1}, with roots the coordinate differences e_i − e_j.

use num_complex::Complex64;
use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// A rank-one symmetric space of noncompact type, described by its root
/// multiplicities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankOneSpace {
    /// Multiplicity of the root α.
    pub p: u32,
    /// Multiplicity of the root 2α (zero for real hyperbolic spaces).
    pub q: u32,
    /// Dimension, n = p + q + 1.
    pub n: u32,
}

impl RankOneSpace {
    /// ρ as a scalar in the ‖α‖ = 1 chart: ρ = p/2 + q.
    pub fn rho(&self) -> f64 {
        self.p as f64 / 2.0 + self.q as f64
    }

    /// True when the dimension n is even (Bessel-series regime).
    pub fn is_even(&self) -> bool {
        self.n % 2 == 0
    }

    /// ℓ for the even case, n − 2 = 2ℓ.
    pub fn ell_even(&self) -> Result<u32> {
        if !self.is_even() {
            return Err(Error::invalid(format!("n = {} is odd", self.n)));
        }
        Ok((self.n - 2) / 2)
    }

    /// ℓ for the odd case, n − 3 = 2ℓ.
    pub fn ell_odd(&self) -> Result<u32> {
        if self.is_even() {
            return Err(Error::invalid(format!("n = {} is even", self.n)));
        }
        if self.n < 3 {
            return Err(Error::invalid("odd rank-one space needs n >= 3"));
        }
        Ok((self.n - 3) / 2)
    }
}

/// Construct a rank-one space from the multiplicities (p, q).
///
/// Rejects p = 0: a rank-one space has a nonempty restricted root α.
pub fn build_rank_one(p: i64, q: i64) -> Result<RankOneSpace> {
    if p < 1 {
        return Err(Error::invalid(format!("multiplicity p must be >= 1, got {p}")));
    }
    if q < 0 {
        return Err(Error::invalid(format!("multiplicity q must be >= 0, got {q}")));
    }
    let (p, q) = (p as u32, q as u32);
    Ok(RankOneSpace { p, q, n: p + q + 1 })
}

/// Real hyperbolic space H^n (p = n − 1, q = 0).
pub fn real_hyperbolic(n: u32) -> Result<RankOneSpace> {
    if n < 2 {
        return Err(Error::invalid("real hyperbolic space needs n >= 2"));
    }
    build_rank_one(n as i64 - 1, 0)
}

/// Complex hyperbolic space CH^m of real dimension 2m (p = 2m − 2, q = 1).
pub fn complex_hyperbolic(m: u32) -> Result<RankOneSpace> {
    if m < 2 {
        return Err(Error::invalid("complex hyperbolic space needs m >= 2"));
    }
    build_rank_one(2 * (m as i64) - 2, 1)
}

/// Quaternionic hyperbolic space HH^m of real dimension 4m (p = 4m − 4, q = 3).
pub fn quaternionic_hyperbolic(m: u32) -> Result<RankOneSpace> {
    if m < 2 {
        return Err(Error::invalid("quaternionic hyperbolic space needs m >= 2"));
    }
    build_rank_one(4 * (m as i64) - 4, 3)
}

/// Named-space registry used by the CLI: name → (p, q).
pub fn named_spaces() -> BTreeMap<&'static str, (u32, u32)> {
    let mut m = BTreeMap::new();
    m.insert("H2", (1, 0));
    m.insert("H3", (2, 0));
    m.insert("H4", (3, 0));
    m.insert("H5", (4, 0));
    m.insert("H6", (5, 0));
    m.insert("CH2", (2, 1));
    m.insert("CH3", (4, 1));
    m.insert("HH2", (4, 3));
    m
}

/// Resolve a space by registry name.
pub fn space_by_name(name: &str) -> Result<RankOneSpace> {
    match named_spaces().get(name) {
        Some(&(p, q)) => build_rank_one(p as i64, q as i64),
        None => Err(Error::invalid(format!(
            "unknown space name {name:?}; known: {}",
            named_spaces().keys().cloned().collect::<Vec<_>>().join(", ")
        ))),
    }
}

/// A lattice point μ = kα of the rank-one root lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct LatticePoint {
    pub k: u32,
}

impl LatticePoint {
    /// ‖μ‖ in the ‖α‖ = 1 chart.
    pub fn norm(&self) -> f64 {
        self.k as f64
    }
}

/// One Weyl group element of type A_l: a permutation of {0, .., l} together
/// with its sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    /// perm[i] is the image of coordinate i.
    pub perm: Vec<usize>,
    pub sign: i32,
}

impl WeylElement {
    /// Apply to a real coordinate vector: (σv)_{perm[i]} = v_i.
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; v.len()];
        for (i, &pi) in self.perm.iter().enumerate() {
            out[pi] = v[i];
        }
        out
    }

    /// Apply to a complex coordinate vector.
    pub fn apply_c(&self, v: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
        for (i, &pi) in self.perm.iter().enumerate() {
            out[pi] = v[i];
        }
        out
    }

    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        // (self ∘ other)(i) = self.perm[other.perm[i]]
        let perm = other.perm.iter().map(|&i| self.perm[i]).collect();
        WeylElement {
            perm,
            sign: self.sign * other.sign,
        }
    }
}

/// The Weyl group of type A_l together with its positive roots.
#[derive(Debug, Clone)]
pub struct WeylGroupA {
    pub rank: usize,
    pub elements: Vec<WeylElement>,
    /// Positive roots e_i − e_j (i < j) as index pairs.
    pub positive_roots: Vec<(usize, usize)>,
}

/// Enumerate the Weyl group of type A_l (the symmetric group on l+1 symbols).
///
/// Desk-scale bound: 1 ≤ l ≤ 5, so at most 720 elements.
pub fn weyl_group_a(l: usize) -> Result<WeylGroupA> {
    if !(1..=5).contains(&l) {
        return Err(Error::invalid(format!("type-A rank must be in 1..=5, got {l}")));
    }
    let m = l + 1;
    let mut elements = Vec::with_capacity((1..=m).product());
    let mut perm: Vec<usize> = (0..m).collect();
    permute(&mut perm, 0, 1, &mut elements);
    let positive_roots = (0..m)
        .flat_map(|i| ((i + 1)..m).map(move |j| (i, j)))
        .collect();
    Ok(WeylGroupA {
        rank: l,
        elements,
        positive_roots,
    })
}

fn permute(perm: &mut Vec<usize>, start: usize, sign: i32, out: &mut Vec<WeylElement>) {
    let m = perm.len();
    if start == m {
        out.push(WeylElement {
            perm: perm.clone(),
            sign,
        });
        return;
    }
    for i in start..m {
        perm.swap(start, i);
        let s = if i == start { sign } else { -sign };
        permute(perm, start + 1, s, out);
        perm.swap(start, i);
    }
}

/// The product polynomial π(λ) = ∏_{i<j} (λ_i − λ_j) over the positive roots.
///
/// Accepts either l+1 coordinates summing to zero or l free coordinates,
/// which are completed by λ_{l+1} = −Σ λ_i.
pub fn pi_product(w: &WeylGroupA, lam: &[Complex64]) -> Result<Complex64> {
    let coords = complete_coords(w.rank, lam)?;
    let mut prod = Complex64::new(1.0, 0.0);
    for &(i, j) in &w.positive_roots {
        prod *= coords[i] - coords[j];
    }
    Ok(prod)
}

/// Complete l free coordinates to the sum-zero convention, or validate l+1.
pub fn complete_coords(rank: usize, lam: &[Complex64]) -> Result<Vec<Complex64>> {
    if lam.len() == rank + 1 {
        Ok(lam.to_vec())
    } else if lam.len() == rank {
        let mut v = lam.to_vec();
        let s: Complex64 = v.iter().sum();
        v.push(-s);
        Ok(v)
    } else {
        Err(Error::invalid(format!(
            "expected {} or {} coordinates, got {}",
            rank,
            rank + 1,
            lam.len()
        )))
    }
}
