//! Self-checks that re-derive known identities on built-in data.
//!
//! Each suite returns one [`Check`] per subject (catalog group, complex, or
//! batch of random matrices) in a fixed order.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::abelian::sl_abelian;
use crate::error::{Error, Result};
use crate::finitegroup::{catalog, verify_series_agreement, SubgroupLattice};
use crate::intlinalg::{smith_normal_form, IntMatrix};
use crate::topology::{complexes, euler_characteristic};

/// Seed of the random matrices in the `snf` suite.
pub const SNF_SEED: u64 = 0x5eed_5eed;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    SeriesAgree,
    RetractMonotone,
    AbelianBridge,
    Euler,
    Snf,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::SeriesAgree,
        Suite::RetractMonotone,
        Suite::AbelianBridge,
        Suite::Euler,
        Suite::Snf,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::SeriesAgree => "prop32",
            Suite::RetractMonotone => "lemma34",
            Suite::AbelianBridge => "prop36-bridge",
            Suite::Euler => "euler",
            Suite::Snf => "snf",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Parse {
                input: s.into(),
                reason: "unknown verification suite".into(),
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub subject: String,
    pub pass: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "{status} {} {}", self.subject, self.detail)
    }
}

pub fn run(suite: Suite, cap: usize) -> Result<Vec<Check>> {
    match suite {
        Suite::SeriesAgree => series_agreement(cap),
        Suite::RetractMonotone => retract_monotone(cap),
        Suite::AbelianBridge => abelian_bridge(cap),
        Suite::Euler => Ok(euler()),
        Suite::Snf => Ok(snf(1000, SNF_SEED)),
    }
}

/// `n1 = n2 = n3` for every catalog group.
pub fn series_agreement(cap: usize) -> Result<Vec<Check>> {
    catalog::all()
        .into_iter()
        .map(|c| {
            let r = verify_series_agreement(&c.group, cap)?;
            Ok(Check {
                subject: c.name,
                pass: r.holds,
                detail: format!("n1={} n2={} n3={}", r.n1.length, r.n2.length, r.n3),
            })
        })
        .collect()
}

/// For every retract `H` of a catalog group `G`: `n1(H) <= n1(G)`, strictly
/// when `H` is proper.
pub fn retract_monotone(cap: usize) -> Result<Vec<Check>> {
    catalog::all()
        .into_iter()
        .map(|c| {
            let lattice = SubgroupLattice::new(&c.group, cap)?;
            let n1_g = lattice.n1().length;
            let whole = c.group.whole();
            let mut retracts = 0;
            let mut violations = Vec::new();
            for (i, &h) in lattice.subgroups().iter().enumerate() {
                if !lattice.is_retract(i) {
                    continue;
                }
                retracts += 1;
                let n1_h = SubgroupLattice::new(&c.group.restrict(h), cap)?.n1().length;
                let ok = if h == whole {
                    n1_h == n1_g
                } else {
                    n1_h < n1_g
                };
                if !ok {
                    violations.push(format!("{}:{}", catalog::subgroup_label(&c.group, h), n1_h));
                }
            }
            let detail = if violations.is_empty() {
                format!("n1={n1_g} retracts={retracts}")
            } else {
                format!("n1={n1_g} violations={}", violations.join(","))
            };
            Ok(Check {
                subject: c.name,
                pass: violations.is_empty(),
                detail,
            })
        })
        .collect()
}

/// `sl` of the primary decomposition equals `n1` of the Cayley table, for
/// every abelian catalog group.
pub fn abelian_bridge(cap: usize) -> Result<Vec<Check>> {
    catalog::all()
        .into_iter()
        .filter_map(|c| c.abelian.clone().map(|a| (c, a)))
        .map(|(c, a)| {
            let formula = sl_abelian(&a);
            let search = SubgroupLattice::new(&c.group, cap)?.n1().length;
            Ok(Check {
                subject: c.name,
                pass: formula == search,
                detail: format!("primary={a} sl={formula} n1={search}"),
            })
        })
        .collect()
}

/// Alternating cell count equals alternating Betti sum on every built-in
/// complex.
pub fn euler() -> Vec<Check> {
    complexes::all()
        .into_iter()
        .map(|(name, c)| {
            let chi = euler_characteristic(&c);
            let betti = c
                .homology()
                .ok()
                .and_then(|h| h.betti_numbers())
                .unwrap_or_default();
            let alt: i64 = betti
                .iter()
                .enumerate()
                .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
                .sum();
            Check {
                subject: name.into(),
                pass: chi == alt && !betti.is_empty(),
                detail: format!("chi={chi} betti={betti:?}"),
            }
        })
        .collect()
}

/// Problems with one Smith normal form computation, empty when it is valid.
pub fn snf_violations(m: &IntMatrix) -> Vec<&'static str> {
    let r = smith_normal_form(m);
    let mut bad = Vec::new();
    match r.u.mul(m).and_then(|um| um.mul(&r.v)) {
        Ok(p) if p == r.s => {}
        _ => bad.push("UMV != S"),
    }
    for (name, t) in [("U", &r.u), ("V", &r.v)] {
        if !t.determinant().is_ok_and(|d| d.abs().is_one()) {
            bad.push(if name == "U" {
                "U not unimodular"
            } else {
                "V not unimodular"
            });
        }
    }
    let mut diagonal_ok = true;
    for i in 0..r.s.rows() {
        for j in 0..r.s.cols() {
            let v = r.s.get(i, j);
            if i != j && !v.is_zero() {
                diagonal_ok = false;
            }
        }
    }
    let k = r.diagonal.len();
    for t in 0..r.s.rows().min(r.s.cols()) {
        let v = r.s.get(t, t);
        let expected_nonzero = t < k;
        if expected_nonzero != !v.is_zero() || (expected_nonzero && *v != r.diagonal[t]) {
            diagonal_ok = false;
        }
    }
    if !diagonal_ok {
        bad.push("S not diagonal");
    }
    let zero = BigInt::zero();
    if r.diagonal.iter().any(|d| d <= &zero) {
        bad.push("nonpositive invariant factor");
    }
    if r.diagonal.windows(2).any(|w| !(&w[1] % &w[0]).is_zero()) {
        bad.push("divisibility chain broken");
    }
    bad
}

/// Random matrices of shape up to 6x6 with entries in `[-9, 9]`; every third
/// one is built as a product so that ranks below full occur often.
pub fn random_matrix(rng: &mut ChaCha8Rng) -> IntMatrix {
    let rows = rng.gen_range(0..=6);
    let cols = rng.gen_range(0..=6);
    let fill = |r: usize, c: usize, rng: &mut ChaCha8Rng| {
        let entries: Vec<Vec<i64>> = (0..r)
            .map(|_| (0..c).map(|_| rng.gen_range(-9..=9)).collect())
            .collect();
        if r == 0 {
            IntMatrix::zeros(0, c)
        } else {
            IntMatrix::from_rows(&entries).expect("rectangular")
        }
    };
    if rng.gen_ratio(1, 3) {
        let inner = rng.gen_range(1..=3);
        let a = fill(rows, inner, rng);
        let b = fill(inner, cols, rng);
        a.mul(&b).expect("compatible shapes")
    } else {
        fill(rows, cols, rng)
    }
}

/// Checks `count` seeded random matrices, reported as a single line.
pub fn snf(count: usize, seed: u64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for i in 0..count {
        let m = random_matrix(&mut rng);
        let bad = snf_violations(&m);
        if !bad.is_empty() {
            failures.push(format!("#{i}: {}", bad.join("; ")));
        }
    }
    let detail = if failures.is_empty() {
        format!("{count} random matrices, seed {seed:#x}")
    } else {
        format!(
            "{} of {count} failed: {}",
            failures.len(),
            failures.join(" | ")
        )
    };
    vec![Check {
        subject: "random".into(),
        pass: failures.is_empty(),
        detail,
    }]
}
