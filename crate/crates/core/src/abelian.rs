//! Finitely generated abelian groups in primary form: `Z^r` plus cyclic
//! summands of prime-power order.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::intlinalg::{rank, smith_normal_form, IntMatrix};

/// `Z^free_rank ⊕ Z/q1 ⊕ … ⊕ Z/qm` with every `qi` a prime power, sorted
/// ascending.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FgAbelianGroup {
    free_rank: usize,
    torsion: Vec<u64>,
}

/// Splits `n ≥ 2` into its prime-power factors, ascending by prime.
pub fn prime_power_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut q = 1;
            while n.is_multiple_of(p) {
                n /= p;
                q *= p;
            }
            out.push(q);
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl FgAbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        Self {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// Builds `Z^free_rank ⊕ Z/n1 ⊕ …` from arbitrary cyclic orders, splitting
    /// each into primary components. Orders of 1 are dropped; 0 is rejected
    /// (use `free_rank` for infinite cyclic summands).
    pub fn from_cyclic_orders(free_rank: usize, orders: &[u64]) -> Result<Self> {
        let mut torsion = Vec::new();
        for &n in orders {
            if n == 0 {
                return Err(Error::Malformed(
                    "cyclic order 0; count infinite cyclic summands in the free rank".into(),
                ));
            }
            torsion.extend(prime_power_factors(n));
        }
        torsion.sort_unstable();
        Ok(Self { free_rank, torsion })
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Order of the group, or `None` if it is infinite.
    pub fn order(&self) -> Option<u64> {
        if self.free_rank > 0 {
            return None;
        }
        self.torsion
            .iter()
            .try_fold(1u64, |acc, &q| acc.checked_mul(q))
    }

    /// Homology `ker d_k / im d_{k+1}` of a segment
    /// `C_{k+1} --d_{k+1}--> C_k --d_k--> C_{k-1}` of a chain complex.
    pub fn from_boundary_maps(d_k: &IntMatrix, d_k_plus_1: &IntMatrix) -> Result<Self> {
        if d_k.cols() != d_k_plus_1.rows() {
            return Err(Error::DimensionMismatch(format!(
                "outgoing boundary is {}x{} but incoming boundary is {}x{}",
                d_k.rows(),
                d_k.cols(),
                d_k_plus_1.rows(),
                d_k_plus_1.cols()
            )));
        }
        if !d_k.mul(d_k_plus_1)?.is_zero() {
            return Err(Error::CompositionNotZero);
        }
        let cycles = d_k.cols() - rank(d_k);
        let snf = smith_normal_form(d_k_plus_1);
        let free_rank = cycles - snf.diagonal.len();
        let mut orders = Vec::new();
        for d in snf.diagonal.iter().filter(|d| !d.is_one()) {
            debug_assert!(!d.is_zero());
            let d = d
                .to_u64()
                .ok_or_else(|| Error::TorsionTooLarge(d.to_string()))?;
            orders.push(d);
        }
        Self::from_cyclic_orders(free_rank, &orders)
    }

    /// Splitting length: the number of nonzero summands in primary form.
    pub fn sl(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut torsion = self.torsion.clone();
        torsion.extend_from_slice(&other.torsion);
        torsion.sort_unstable();
        Self {
            free_rank: self.free_rank + other.free_rank,
            torsion,
        }
    }

    /// `A ⊗ B` for free abelian `A`, `B`. Tor terms are not modeled.
    pub fn tensor_free(&self, other: &Self) -> Result<Self> {
        if !self.is_free() || !other.is_free() {
            return Err(Error::TorsionNotSupported);
        }
        Ok(Self::free(self.free_rank * other.free_rank))
    }
}

/// Splitting length of a finitely generated abelian group.
pub fn sl_abelian(group: &FgAbelianGroup) -> usize {
    group.sl()
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|q| format!("Z/{q}")));
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

impl FromStr for FgAbelianGroup {
    type Err = Error;

    /// Accepts the `Display` form. `+` may stand in for `⊕`, and cyclic
    /// summands need not be prime powers (`Z/6` is split into `Z/2 ⊕ Z/3`).
    fn from_str(s: &str) -> Result<Self> {
        let err = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let mut free_rank = 0;
        let mut orders = Vec::new();
        for token in s.split(['⊕', '+']).map(str::trim) {
            match token {
                "" => return Err(err("empty summand")),
                "0" | "1" => {}
                "Z" => free_rank += 1,
                t if t.starts_with("Z^") => {
                    free_rank += t[2..].parse::<usize>().map_err(|_| err("bad free rank"))?;
                }
                t if t.starts_with("Z/") => {
                    let n = t[2..].parse::<u64>().map_err(|_| err("bad cyclic order"))?;
                    if n == 0 {
                        return Err(err("cyclic order 0"));
                    }
                    orders.push(n);
                }
                _ => return Err(err("expected 0, Z, Z^r or Z/n")),
            }
        }
        Self::from_cyclic_orders(free_rank, &orders)
    }
}

impl Serialize for FgAbelianGroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FgAbelianGroup {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
