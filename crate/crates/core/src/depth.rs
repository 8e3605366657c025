//! Depth bounds for polyhedra.
//!
//! Two families of bounds are implemented:
//!
//! * the general bound `sl(π₁) + Σ_{i=2..dim} sl(H_i(universal cover))`,
//!   which needs finitely generated cover homology;
//! * for 2-dimensional spaces, `sl(π₁) + rank H₂`, which uses ordinary
//!   homology and so also covers spaces like `S¹ ∨ S²`.
//!
//! The splitting length `sl` is dispatched on a descriptor of the
//! fundamental group. Exact depths are attached only where they are known:
//! wedges of spheres (computed) and products of two spheres (cited).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::abelian::FgAbelianGroup;
use crate::error::{Error, Result};
use crate::finitegroup::{catalog, splitting_length, FiniteGroup};
use crate::topology::{homology, pi1_of, universal_cover_homology, SpaceExpr};

/// What is known about a fundamental group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Pi1Descriptor {
    Trivial,
    Finite(FiniteGroup),
    FgAbelian(FgAbelianGroup),
    Free(usize),
    /// Elementary amenable with the given Hirsch length. The splitting length
    /// equals the Hirsch length only under finite cohomological dimension.
    ElementaryAmenable {
        hirsch: usize,
        cd_finite: bool,
    },
}

impl Pi1Descriptor {
    /// Free group of the given rank; rank 0 is the trivial group.
    pub fn free(rank: usize) -> Self {
        if rank == 0 {
            Pi1Descriptor::Trivial
        } else {
            Pi1Descriptor::Free(rank)
        }
    }

    pub fn class_name(&self) -> &'static str {
        match self {
            Pi1Descriptor::Trivial => "trivial",
            Pi1Descriptor::Finite(_) => "finite",
            Pi1Descriptor::FgAbelian(_) => "finitely generated abelian",
            Pi1Descriptor::Free(_) => "free",
            Pi1Descriptor::ElementaryAmenable { .. } => "elementary amenable",
        }
    }
}

impl fmt::Display for Pi1Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pi1Descriptor::Trivial => write!(f, "1"),
            Pi1Descriptor::Finite(g) => match catalog::identify(g) {
                Some(name) => write!(f, "{name}"),
                None => write!(f, "finite of order {}", g.order()),
            },
            Pi1Descriptor::FgAbelian(a) => write!(f, "{a}"),
            Pi1Descriptor::Free(r) => write!(f, "F{r}"),
            Pi1Descriptor::ElementaryAmenable { hirsch, cd_finite } => write!(
                f,
                "elementary amenable, h = {hirsch}, cd {}",
                if *cd_finite { "finite" } else { "infinite" }
            ),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum RawPi1 {
    Trivial,
    Finite(RawFinite),
    FgAbelian(FgAbelianGroup),
    Free(usize),
    ElementaryAmenable { hirsch: usize, cd_finite: bool },
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawFinite {
    Catalog { catalog: String },
    Table { table: Vec<Vec<usize>> },
}

impl Serialize for Pi1Descriptor {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let raw = match self {
            Pi1Descriptor::Trivial => RawPi1::Trivial,
            Pi1Descriptor::Finite(g) => RawPi1::Finite(RawFinite::Table { table: g.rows() }),
            Pi1Descriptor::FgAbelian(a) => RawPi1::FgAbelian(a.clone()),
            Pi1Descriptor::Free(r) => RawPi1::Free(*r),
            Pi1Descriptor::ElementaryAmenable { hirsch, cd_finite } => RawPi1::ElementaryAmenable {
                hirsch: *hirsch,
                cd_finite: *cd_finite,
            },
        };
        raw.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Pi1Descriptor {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        Ok(match RawPi1::deserialize(deserializer)? {
            RawPi1::Trivial => Pi1Descriptor::Trivial,
            RawPi1::Finite(RawFinite::Catalog { catalog: name }) => {
                Pi1Descriptor::Finite(catalog::by_name(&name).map_err(D::Error::custom)?.group)
            }
            RawPi1::Finite(RawFinite::Table { table }) => {
                Pi1Descriptor::Finite(FiniteGroup::from_table(&table).map_err(D::Error::custom)?)
            }
            RawPi1::FgAbelian(a) => Pi1Descriptor::FgAbelian(a),
            RawPi1::Free(r) => Pi1Descriptor::free(r),
            RawPi1::ElementaryAmenable { hirsch, cd_finite } => {
                Pi1Descriptor::ElementaryAmenable { hirsch, cd_finite }
            }
        })
    }
}

/// Splitting length of the described group.
pub fn sl_of(d: &Pi1Descriptor, cap: usize) -> Result<usize> {
    match d {
        Pi1Descriptor::Trivial => Ok(0),
        Pi1Descriptor::Finite(g) => splitting_length(g, cap),
        Pi1Descriptor::FgAbelian(a) => Ok(a.sl()),
        Pi1Descriptor::Free(r) => Ok(*r),
        Pi1Descriptor::ElementaryAmenable { hirsch, cd_finite } => {
            if *cd_finite {
                Ok(*hirsch)
            } else {
                Err(Error::CdNotFinite)
            }
        }
    }
}

/// Which bound produced a report. The general and 2-dimensional bounds each
/// have specializations named after the class of the fundamental group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    General,
    TwoDim,
    Finite,
    SimplyConnected,
    Abelian,
    Free,
    Amenable,
    Abelian2Dim,
    Free2Dim,
    Amenable2Dim,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Route {
    General,
    TwoDim,
}

impl Rule {
    pub const ALL: [Rule; 10] = [
        Rule::General,
        Rule::TwoDim,
        Rule::Finite,
        Rule::SimplyConnected,
        Rule::Abelian,
        Rule::Free,
        Rule::Amenable,
        Rule::Abelian2Dim,
        Rule::Free2Dim,
        Rule::Amenable2Dim,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::General => "Thm-general",
            Rule::TwoDim => "Thm-2dim",
            Rule::Finite => "Cor-finite",
            Rule::SimplyConnected => "Cor-simply",
            Rule::Abelian => "Cor-abelian",
            Rule::Free => "Cor-free",
            Rule::Amenable => "Cor-amenable",
            Rule::Abelian2Dim => "Cor-abelian-2dim",
            Rule::Free2Dim => "Cor-free-2dim",
            Rule::Amenable2Dim => "Cor-amenable-2dim",
        }
    }

    fn route(self) -> Route {
        match self {
            Rule::General
            | Rule::Finite
            | Rule::SimplyConnected
            | Rule::Abelian
            | Rule::Free
            | Rule::Amenable => Route::General,
            _ => Route::TwoDim,
        }
    }

    /// The most specific rule of a route for a given fundamental group.
    fn specialize(route: Route, pi1: &Pi1Descriptor) -> Rule {
        match (route, pi1) {
            (Route::General, Pi1Descriptor::Trivial) => Rule::SimplyConnected,
            (Route::General, Pi1Descriptor::Finite(_)) => Rule::Finite,
            (Route::General, Pi1Descriptor::FgAbelian(_)) => Rule::Abelian,
            (Route::General, Pi1Descriptor::Free(_)) => Rule::Free,
            (Route::General, Pi1Descriptor::ElementaryAmenable { .. }) => Rule::Amenable,
            (Route::TwoDim, Pi1Descriptor::FgAbelian(_)) => Rule::Abelian2Dim,
            (Route::TwoDim, Pi1Descriptor::Free(_)) => Rule::Free2Dim,
            (Route::TwoDim, Pi1Descriptor::ElementaryAmenable { .. }) => Rule::Amenable2Dim,
            (Route::TwoDim, _) => Rule::TwoDim,
        }
    }

    fn accepts(self, pi1: &Pi1Descriptor) -> bool {
        matches!(self, Rule::General | Rule::TwoDim) || Rule::specialize(self.route(), pi1) == self
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Rule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Rule::ALL
            .into_iter()
            .find(|r| r.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse {
                input: s.to_string(),
                reason: "unknown rule name".into(),
            })
    }
}

impl Serialize for Rule {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for Rule {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthBoundReport {
    pub rule: Rule,
    pub bound: usize,
    pub sl_pi1: usize,
    /// Splitting lengths of `H_i` of the cover for the general bound, or
    /// `{2: rank H₂}` for the 2-dimensional bound.
    pub per_degree: BTreeMap<usize, usize>,
    pub assumptions: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact_depth: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

impl DepthBoundReport {
    /// `bound = sl_pi1 + Σ per_degree`.
    pub fn is_consistent(&self) -> bool {
        self.bound == self.sl_pi1 + self.per_degree.values().sum::<usize>()
            && self.exact_depth.is_none_or(|d| d <= self.bound)
    }
}

/// Either a bound or the list of hypotheses that failed for every rule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum BoundOutcome {
    Bound(DepthBoundReport),
    NoBoundApplicable { failed_hypotheses: Vec<String> },
}

impl BoundOutcome {
    pub fn report(&self) -> Option<&DepthBoundReport> {
        match self {
            BoundOutcome::Bound(r) => Some(r),
            BoundOutcome::NoBoundApplicable { .. } => None,
        }
    }
}

fn pi1_assumption(pi1: &Pi1Descriptor, sl: usize) -> String {
    format!("π₁ = {pi1} ({}), sl(π₁) = {sl}", pi1.class_name())
}

/// `sl(π₁) + Σ_{i=2..dim} sl(H_i(P̃))`. Fails with `NotFinitelyGenerated`
/// when some cover homology group is not finitely generated.
pub fn bound_general(x: &SpaceExpr, cap: usize) -> Result<DepthBoundReport> {
    let pi1 = pi1_of(x)?;
    let sl_pi1 = sl_of(&pi1, cap)?;
    let cover = universal_cover_homology(x)?;
    let mut per_degree = BTreeMap::new();
    for i in 2..=x.dim() {
        let h = cover.group(i).ok_or(Error::NotFinitelyGenerated(i))?;
        per_degree.insert(i, h.sl());
    }
    let bound = sl_pi1 + per_degree.values().sum::<usize>();
    Ok(DepthBoundReport {
        rule: Rule::specialize(Route::General, &pi1),
        bound,
        sl_pi1,
        per_degree,
        assumptions: vec![
            pi1_assumption(&pi1, sl_pi1),
            format!(
                "H_i of the universal cover finitely generated for 2 ≤ i ≤ {}",
                x.dim()
            ),
        ],
        exact_depth: None,
        provenance: None,
    })
}

/// `sl(π₁) + rank H₂(P)` for 2-dimensional `P`.
pub fn bound_2dim(x: &SpaceExpr, cap: usize) -> Result<DepthBoundReport> {
    if x.dim() != 2 {
        return Err(Error::DimensionNotTwo(x.dim()));
    }
    let pi1 = pi1_of(x)?;
    let sl_pi1 = sl_of(&pi1, cap)?;
    let h2 = homology(x)?
        .group(2)
        .expect("ordinary homology is finitely generated");
    let rank_h2 = h2.free_rank();
    Ok(DepthBoundReport {
        rule: Rule::specialize(Route::TwoDim, &pi1),
        bound: sl_pi1 + rank_h2,
        sl_pi1,
        per_degree: BTreeMap::from([(2, rank_h2)]),
        assumptions: vec![
            pi1_assumption(&pi1, sl_pi1),
            format!("dim P = 2, rank H₂(P) = {rank_h2}"),
        ],
        exact_depth: None,
        provenance: None,
    })
}

/// Runs every applicable rule and keeps the smallest bound; on a tie the
/// general bound wins. Exact depth is attached when known.
pub fn best_bound(x: &SpaceExpr, cap: usize) -> BoundOutcome {
    let general = bound_general(x, cap);
    let two_dim = if x.dim() == 2 {
        bound_2dim(x, cap)
    } else {
        Err(Error::DimensionNotTwo(x.dim()))
    };

    let mut report = match (general, two_dim) {
        (Ok(g), Ok(t)) => {
            let (mut keep, other) = if t.bound < g.bound { (t, g) } else { (g, t) };
            keep.assumptions.push(format!(
                "{} also applies with bound {}",
                other.rule, other.bound
            ));
            keep
        }
        (Ok(r), Err(e)) | (Err(e), Ok(r)) => {
            let mut r = r;
            let skipped = if r.rule.route() == Route::General {
                Rule::TwoDim
            } else {
                Rule::General
            };
            r.assumptions.push(format!("{skipped} not applicable: {e}"));
            r
        }
        (Err(g), Err(t)) => {
            return BoundOutcome::NoBoundApplicable {
                failed_hypotheses: vec![
                    format!("{}: {g}", Rule::General),
                    format!("{}: {t}", Rule::TwoDim),
                ],
            }
        }
    };

    if let Some((depth, provenance)) = known_exact_depth(x) {
        debug_assert!(depth <= report.bound, "bound below a known exact depth");
        report.exact_depth = Some(depth);
        report.provenance = Some(provenance);
    }
    BoundOutcome::Bound(report)
}

/// Evaluates one named rule, checking that it matches the fundamental group.
pub fn bound_with_rule(x: &SpaceExpr, rule: Rule, cap: usize) -> Result<DepthBoundReport> {
    let pi1 = pi1_of(x)?;
    if !rule.accepts(&pi1) {
        return Err(Error::RuleNotApplicable {
            rule: rule.name().into(),
            reason: format!("fundamental group is {}", pi1.class_name()),
        });
    }
    let mut report = match rule.route() {
        Route::General => bound_general(x, cap)?,
        Route::TwoDim => bound_2dim(x, cap)?,
    };
    report.rule = rule;
    Ok(report)
}

fn known_exact_depth(x: &SpaceExpr) -> Option<(usize, String)> {
    if let Some(counts) = x.sphere_counts() {
        let w = wedge_exact_depth(&counts);
        return Some((
            w.depth,
            "computed: wedge of spheres, depth = number of spheres".into(),
        ));
    }
    if let SpaceExpr::Product(parts) = x {
        if let [SpaceExpr::Sphere(_), SpaceExpr::Sphere(_)] = parts.as_slice() {
            return Some((2, "cited: known depth of a product of two spheres".into()));
        }
    }
    None
}

/// Depth and capacity of a wedge of spheres with `counts[n]` copies of `S^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeDepth {
    pub depth: usize,
    pub capacity: BigUint,
    /// Sub-wedges from the point up to the full wedge, each adding one
    /// sphere (lowest degrees first).
    pub chain: Vec<BTreeMap<usize, usize>>,
}

pub fn wedge_exact_depth(counts: &BTreeMap<usize, usize>) -> WedgeDepth {
    let depth = counts.values().sum();
    let capacity = counts
        .values()
        .fold(BigUint::one(), |acc, &r| acc * BigUint::from(r + 1));
    let mut chain = vec![BTreeMap::new()];
    let mut current = BTreeMap::new();
    for (&n, &r) in counts {
        for _ in 0..r {
            *current.entry(n).or_insert(0) += 1;
            chain.push(current.clone());
        }
    }
    WedgeDepth {
        depth,
        capacity,
        chain,
    }
}
