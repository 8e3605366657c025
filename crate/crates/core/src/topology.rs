//! Spaces built from spheres by wedges and products, or given as explicit
//! cellular chain complexes, with their homology and the homology of their
//! universal covers.
//!
//! Universal-cover homology is rule based. Only constructions whose cover is
//! understood are accepted; everything else is an `UnsupportedConstruction`
//! error.

use serde::{Deserialize, Serialize};

use crate::abelian::FgAbelianGroup;
use crate::depth::Pi1Descriptor;
use crate::error::{Error, Result};
use crate::intlinalg::IntMatrix;

/// Cellular chain complex `C_n → … → C_1 → C_0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawComplex", into = "RawComplex")]
pub struct ChainComplex {
    cells: Vec<usize>,
    /// `boundary[k - 1]` is `∂_k : C_k → C_{k-1}`.
    boundary: Vec<IntMatrix>,
}

#[derive(Serialize, Deserialize)]
struct RawComplex {
    cells: Vec<usize>,
    boundary: Vec<IntMatrix>,
}

impl TryFrom<RawComplex> for ChainComplex {
    type Error = Error;

    fn try_from(raw: RawComplex) -> Result<Self> {
        ChainComplex::new(raw.cells, raw.boundary)
    }
}

impl From<ChainComplex> for RawComplex {
    fn from(c: ChainComplex) -> Self {
        RawComplex {
            cells: c.cells,
            boundary: c.boundary,
        }
    }
}

impl ChainComplex {
    pub fn new(cells: Vec<usize>, boundary: Vec<IntMatrix>) -> Result<Self> {
        if cells.is_empty() {
            return Err(Error::Malformed(
                "chain complex needs at least one degree".into(),
            ));
        }
        if boundary.len() != cells.len() - 1 {
            return Err(Error::DimensionMismatch(format!(
                "{} cell counts need {} boundary maps, got {}",
                cells.len(),
                cells.len() - 1,
                boundary.len()
            )));
        }
        for (k, d) in boundary.iter().enumerate().map(|(i, d)| (i + 1, d)) {
            if d.rows() != cells[k - 1] || d.cols() != cells[k] {
                return Err(Error::DimensionMismatch(format!(
                    "boundary in degree {k} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    cells[k - 1],
                    cells[k]
                )));
            }
        }
        for pair in boundary.windows(2) {
            if !pair[0].mul(&pair[1])?.is_zero() {
                return Err(Error::CompositionNotZero);
            }
        }
        Ok(Self { cells, boundary })
    }

    /// One 0-cell and one `n`-cell, all boundaries zero.
    pub fn sphere(n: usize) -> Self {
        let mut cells = vec![0; n + 1];
        cells[0] += 1;
        cells[n] += 1;
        Self::with_zero_boundaries(cells)
    }

    pub fn point() -> Self {
        Self::with_zero_boundaries(vec![1])
    }

    fn with_zero_boundaries(cells: Vec<usize>) -> Self {
        let boundary = (1..cells.len())
            .map(|k| IntMatrix::zeros(cells[k - 1], cells[k]))
            .collect();
        Self { cells, boundary }
    }

    pub fn dim(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    /// `∂_k`, with the zero maps out of `C_0` and into `C_dim` filled in.
    pub fn boundary(&self, k: usize) -> IntMatrix {
        if k == 0 {
            IntMatrix::zeros(0, self.cells[0])
        } else if k > self.dim() {
            IntMatrix::zeros(self.cells.get(k - 1).copied().unwrap_or(0), 0)
        } else {
            self.boundary[k - 1].clone()
        }
    }

    pub fn homology(&self) -> Result<HomologyProfile> {
        let degrees = (0..=self.dim())
            .map(|k| {
                FgAbelianGroup::from_boundary_maps(&self.boundary(k), &self.boundary(k + 1))
                    .map(DegreeHomology::Finite)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(HomologyProfile { degrees })
    }
}

/// Alternating sum of cell counts.
pub fn euler_characteristic(c: &ChainComplex) -> i64 {
    c.cells()
        .iter()
        .enumerate()
        .map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) })
        .sum()
}

/// Homology in one degree. Covers of some wedges have homology that is not
/// finitely generated, which cannot be represented as an `FgAbelianGroup`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DegreeHomology {
    Finite(FgAbelianGroup),
    NotFinitelyGenerated,
}

impl DegreeHomology {
    fn is_zero(&self) -> bool {
        matches!(self, DegreeHomology::Finite(g) if g.is_trivial())
    }
}

/// Homology in degrees `0..=dim`; higher degrees are zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyProfile {
    pub degrees: Vec<DegreeHomology>,
}

impl HomologyProfile {
    fn point(dim: usize) -> Self {
        let mut degrees = vec![DegreeHomology::Finite(FgAbelianGroup::trivial()); dim + 1];
        degrees[0] = DegreeHomology::Finite(FgAbelianGroup::free(1));
        Self { degrees }
    }

    pub fn dim(&self) -> usize {
        self.degrees.len() - 1
    }

    /// The group in degree `k`, or `None` if it is not finitely generated.
    pub fn group(&self, k: usize) -> Option<FgAbelianGroup> {
        match self.degrees.get(k) {
            Some(DegreeHomology::Finite(g)) => Some(g.clone()),
            Some(DegreeHomology::NotFinitelyGenerated) => None,
            None => Some(FgAbelianGroup::trivial()),
        }
    }

    pub fn is_finitely_generated(&self, k: usize) -> bool {
        self.group(k).is_some()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.degrees
            .iter()
            .all(|d| matches!(d, DegreeHomology::Finite(g) if g.is_free()))
    }

    /// Free ranks by degree, if every degree is finitely generated.
    pub fn betti_numbers(&self) -> Option<Vec<usize>> {
        (0..self.degrees.len())
            .map(|k| self.group(k).map(|g| g.free_rank()))
            .collect()
    }

    fn padded(mut self, dim: usize) -> Self {
        while self.degrees.len() < dim + 1 {
            self.degrees
                .push(DegreeHomology::Finite(FgAbelianGroup::trivial()));
        }
        self
    }
}

/// An explicit complex with its fundamental group and, optionally, a
/// cellular structure on its universal cover.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExplicitSpace {
    #[serde(flatten)]
    pub complex: ChainComplex,
    pub pi1: Pi1Descriptor,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cover: Option<ChainComplex>,
}

/// A space description. JSON form is a tagged union, e.g.
/// `{"product":[{"sphere":1},{"sphere":2}]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", try_from = "RawSpace")]
pub enum SpaceExpr {
    Sphere(usize),
    Wedge(Vec<SpaceExpr>),
    Product(Vec<SpaceExpr>),
    Explicit(Box<ExplicitSpace>),
}

#[derive(Deserialize)]
#[serde(rename_all = "snake_case")]
enum RawSpace {
    Sphere(usize),
    Wedge(Vec<SpaceExpr>),
    Product(Vec<SpaceExpr>),
    Explicit(Box<ExplicitSpace>),
}

impl TryFrom<RawSpace> for SpaceExpr {
    type Error = Error;

    fn try_from(raw: RawSpace) -> Result<Self> {
        let expr = match raw {
            RawSpace::Sphere(n) => SpaceExpr::Sphere(n),
            RawSpace::Wedge(parts) => SpaceExpr::Wedge(parts),
            RawSpace::Product(parts) => SpaceExpr::Product(parts),
            RawSpace::Explicit(e) => SpaceExpr::Explicit(e),
        };
        expr.validate()?;
        Ok(expr)
    }
}

impl SpaceExpr {
    pub fn explicit(
        complex: ChainComplex,
        pi1: Pi1Descriptor,
        cover: Option<ChainComplex>,
    ) -> Self {
        SpaceExpr::Explicit(Box::new(ExplicitSpace {
            complex,
            pi1,
            cover,
        }))
    }

    pub fn wedge_of_spheres(degrees: impl IntoIterator<Item = usize>) -> Self {
        SpaceExpr::Wedge(degrees.into_iter().map(SpaceExpr::Sphere).collect())
    }

    /// Checks the structural invariants that the constructors cannot.
    pub fn validate(&self) -> Result<()> {
        match self {
            SpaceExpr::Sphere(0) => Err(Error::Malformed(
                "sphere dimension must be at least 1".into(),
            )),
            SpaceExpr::Sphere(_) => Ok(()),
            SpaceExpr::Wedge(parts) | SpaceExpr::Product(parts) => {
                if parts.is_empty() {
                    return Err(Error::Malformed(
                        "wedge and product need at least one part".into(),
                    ));
                }
                parts.iter().try_for_each(SpaceExpr::validate)
            }
            SpaceExpr::Explicit(e) => {
                if e.complex.cells()[0] == 0 {
                    return Err(Error::Malformed("explicit complex has no 0-cells".into()));
                }
                Ok(())
            }
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            SpaceExpr::Sphere(n) => *n,
            SpaceExpr::Wedge(parts) => parts.iter().map(SpaceExpr::dim).max().unwrap_or(0),
            SpaceExpr::Product(parts) => parts.iter().map(SpaceExpr::dim).sum(),
            SpaceExpr::Explicit(e) => e.complex.dim(),
        }
    }

    fn is_circle(&self) -> bool {
        matches!(self, SpaceExpr::Sphere(1))
    }

    pub fn is_simply_connected(&self) -> bool {
        match self {
            SpaceExpr::Sphere(n) => *n >= 2,
            SpaceExpr::Wedge(parts) | SpaceExpr::Product(parts) => {
                parts.iter().all(SpaceExpr::is_simply_connected)
            }
            SpaceExpr::Explicit(e) => e.pi1 == Pi1Descriptor::Trivial,
        }
    }

    /// Sphere counts by degree if this is a (possibly nested) wedge of
    /// spheres.
    pub fn sphere_counts(&self) -> Option<std::collections::BTreeMap<usize, usize>> {
        let mut counts = std::collections::BTreeMap::new();
        fn walk(x: &SpaceExpr, counts: &mut std::collections::BTreeMap<usize, usize>) -> bool {
            match x {
                SpaceExpr::Sphere(n) => {
                    *counts.entry(*n).or_insert(0) += 1;
                    true
                }
                SpaceExpr::Wedge(parts) => parts.iter().all(|p| walk(p, counts)),
                _ => false,
            }
        }
        walk(self, &mut counts).then_some(counts)
    }
}

fn reduced(h: &HomologyProfile) -> Result<HomologyProfile> {
    let mut out = h.clone();
    match &h.degrees[0] {
        DegreeHomology::Finite(g) if g.free_rank() >= 1 => {
            out.degrees[0] = DegreeHomology::Finite(FgAbelianGroup::free(g.free_rank() - 1));
            Ok(out)
        }
        _ => Err(Error::UnsupportedConstruction(
            "wedge summand is empty".into(),
        )),
    }
}

fn kunneth(a: &HomologyProfile, b: &HomologyProfile) -> Result<HomologyProfile> {
    if !a.is_torsion_free() || !b.is_torsion_free() {
        return Err(Error::TorsionNotSupported);
    }
    let dim = a.dim() + b.dim();
    let mut degrees = Vec::with_capacity(dim + 1);
    for n in 0..=dim {
        let mut acc = FgAbelianGroup::trivial();
        for i in 0..=n.min(a.dim()) {
            if n - i > b.dim() {
                continue;
            }
            let (x, y) = (a.group(i).unwrap(), b.group(n - i).unwrap());
            acc = acc.direct_sum(&x.tensor_free(&y)?);
        }
        degrees.push(DegreeHomology::Finite(acc));
    }
    Ok(HomologyProfile { degrees })
}

/// Integral homology of the space.
///
/// Spheres use their minimal cell structure; wedges add reduced homology;
/// products use the Künneth formula and therefore require torsion-free
/// factors.
pub fn homology(x: &SpaceExpr) -> Result<HomologyProfile> {
    match x {
        SpaceExpr::Sphere(n) => ChainComplex::sphere(*n).homology(),
        SpaceExpr::Wedge(parts) => {
            let mut out = HomologyProfile::point(x.dim());
            for part in parts {
                let r = reduced(&homology(part)?)?;
                for (k, d) in r.degrees.into_iter().enumerate() {
                    let DegreeHomology::Finite(g) = d else {
                        unreachable!("ordinary homology of a finite complex is finitely generated")
                    };
                    if let DegreeHomology::Finite(acc) = &mut out.degrees[k] {
                        *acc = acc.direct_sum(&g);
                    }
                }
            }
            Ok(out)
        }
        SpaceExpr::Product(parts) => {
            let mut acc = homology(&parts[0])?;
            for part in &parts[1..] {
                acc = kunneth(&acc, &homology(part)?)?;
            }
            Ok(acc)
        }
        SpaceExpr::Explicit(e) => e.complex.homology(),
    }
}

/// Homology of the universal cover, for the constructions where it is known:
///
/// * simply connected spaces are their own cover;
/// * `S^1` and products containing circles: circle factors unwrap to lines
///   and are dropped, the rest is combined by Künneth;
/// * wedges of circles with simply connected summands: the cover is a tree
///   carrying infinitely many copies of each summand, so every positive
///   degree where the summands have homology is not finitely generated;
/// * explicit complexes with a supplied cover.
pub fn universal_cover_homology(x: &SpaceExpr) -> Result<HomologyProfile> {
    Ok(cover(x)?.padded(x.dim()))
}

fn cover(x: &SpaceExpr) -> Result<HomologyProfile> {
    if x.is_simply_connected() {
        return homology(x);
    }
    match x {
        SpaceExpr::Sphere(_) => Ok(HomologyProfile::point(x.dim())),
        SpaceExpr::Product(parts) => {
            let mut acc = HomologyProfile::point(0);
            for part in parts.iter().filter(|p| !p.is_circle()) {
                let c = cover(part)?;
                if (0..=c.dim()).any(|k| !c.is_finitely_generated(k)) {
                    return Err(Error::UnsupportedConstruction(
                        "product with a factor whose universal cover has infinitely generated homology"
                            .into(),
                    ));
                }
                acc = kunneth(&acc, &c)?;
            }
            Ok(acc)
        }
        SpaceExpr::Wedge(_) => {
            let mut circles = 0;
            let mut others = Vec::new();
            flatten_wedge(x, &mut circles, &mut others);
            if let Some(bad) = others.iter().find(|p| !p.is_simply_connected()) {
                return Err(Error::UnsupportedConstruction(format!(
                    "wedge summand of dimension {} is neither a circle nor simply connected",
                    bad.dim()
                )));
            }
            debug_assert!(circles > 0);
            let mut out = HomologyProfile::point(x.dim());
            for part in others {
                let r = reduced(&homology(part)?)?;
                for (k, d) in r.degrees.iter().enumerate().skip(1) {
                    if !d.is_zero() {
                        out.degrees[k] = DegreeHomology::NotFinitelyGenerated;
                    }
                }
            }
            Ok(out)
        }
        SpaceExpr::Explicit(e) => match &e.cover {
            Some(c) => c.homology(),
            None => Err(Error::UnsupportedConstruction(
                "explicit complex with nontrivial fundamental group and no cover supplied".into(),
            )),
        },
    }
}

fn flatten_wedge<'a>(x: &'a SpaceExpr, circles: &mut usize, others: &mut Vec<&'a SpaceExpr>) {
    match x {
        SpaceExpr::Wedge(parts) => {
            for p in parts {
                flatten_wedge(p, circles, others);
            }
        }
        SpaceExpr::Sphere(1) => *circles += 1,
        other => others.push(other),
    }
}

/// Betti numbers as polynomial coefficients; requires torsion-free homology.
pub fn poincare_polynomial(x: &SpaceExpr) -> Result<Vec<usize>> {
    let h = homology(x)?;
    if !h.is_torsion_free() {
        return Err(Error::TorsionNotSupported);
    }
    Ok(h.betti_numbers()
        .expect("ordinary homology is finitely generated"))
}

/// Fundamental group of the space, from van Kampen for wedges and the
/// product formula for products. Combinations whose group is neither free,
/// abelian, nor a single factor's group are unsupported.
pub fn pi1_of(x: &SpaceExpr) -> Result<Pi1Descriptor> {
    match x {
        SpaceExpr::Sphere(1) => Ok(Pi1Descriptor::Free(1)),
        SpaceExpr::Sphere(_) => Ok(Pi1Descriptor::Trivial),
        SpaceExpr::Explicit(e) => Ok(e.pi1.clone()),
        SpaceExpr::Wedge(parts) => {
            let groups = nontrivial_pi1s(parts)?;
            match groups.as_slice() {
                [] => Ok(Pi1Descriptor::Trivial),
                [only] => Ok(only.clone()),
                _ => {
                    let mut rank = 0;
                    for g in &groups {
                        rank += match g {
                            Pi1Descriptor::Free(r) => *r,
                            Pi1Descriptor::FgAbelian(a) if a.is_free() && a.free_rank() == 1 => 1,
                            _ => {
                                return Err(Error::UnsupportedConstruction(
                                    "free product of non-free groups".into(),
                                ))
                            }
                        };
                    }
                    Ok(Pi1Descriptor::free(rank))
                }
            }
        }
        SpaceExpr::Product(parts) => {
            let groups = nontrivial_pi1s(parts)?;
            let abelian: Option<Vec<FgAbelianGroup>> = groups
                .iter()
                .map(|g| match g {
                    Pi1Descriptor::Free(1) => Some(FgAbelianGroup::free(1)),
                    Pi1Descriptor::FgAbelian(a) => Some(a.clone()),
                    _ => None,
                })
                .collect();
            match (groups.as_slice(), abelian) {
                ([], _) => Ok(Pi1Descriptor::Trivial),
                (_, Some(parts)) => Ok(Pi1Descriptor::FgAbelian(
                    parts
                        .iter()
                        .fold(FgAbelianGroup::trivial(), |acc, g| acc.direct_sum(g)),
                )),
                ([only], None) => Ok(only.clone()),
                _ => Err(Error::UnsupportedConstruction(
                    "direct product of non-abelian fundamental groups".into(),
                )),
            }
        }
    }
}

fn nontrivial_pi1s(parts: &[SpaceExpr]) -> Result<Vec<Pi1Descriptor>> {
    Ok(parts
        .iter()
        .map(pi1_of)
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|g| *g != Pi1Descriptor::Trivial)
        .collect())
}

/// Small cell complexes with known homology.
pub mod complexes {
    use super::ChainComplex;
    use crate::intlinalg::IntMatrix;

    fn build(cells: Vec<usize>, boundary: &[&[&[i64]]]) -> ChainComplex {
        let maps = boundary
            .iter()
            .zip(cells.windows(2))
            .map(|(rows, w)| {
                if rows.is_empty() {
                    IntMatrix::zeros(w[0], w[1])
                } else {
                    IntMatrix::from_rows(rows).expect("rectangular")
                }
            })
            .collect();
        ChainComplex::new(cells, maps).expect("valid complex")
    }

    pub fn point() -> ChainComplex {
        ChainComplex::point()
    }

    pub fn circle() -> ChainComplex {
        ChainComplex::sphere(1)
    }

    pub fn sphere2() -> ChainComplex {
        ChainComplex::sphere(2)
    }

    /// One vertex, edges `a, b`, face `aba⁻¹b⁻¹`.
    pub fn torus() -> ChainComplex {
        build(vec![1, 2, 1], &[&[&[0, 0]], &[&[0], &[0]]])
    }

    /// Face `abab⁻¹`.
    pub fn klein_bottle() -> ChainComplex {
        build(vec![1, 2, 1], &[&[&[0, 0]], &[&[2], &[0]]])
    }

    /// Face `aa`.
    pub fn rp2() -> ChainComplex {
        build(vec![1, 1, 1], &[&[&[0]], &[&[2]]])
    }

    pub fn rp3() -> ChainComplex {
        build(vec![1, 1, 1, 1], &[&[&[0]], &[&[2]], &[&[0]]])
    }

    /// Face `a^k`.
    pub fn pseudo_projective_plane(k: i64) -> ChainComplex {
        build(vec![1, 1, 1], &[&[&[0]], &[&[k]]])
    }

    /// Face `aaa⁻¹`: contractible.
    pub fn dunce_hat() -> ChainComplex {
        build(vec![1, 1, 1], &[&[&[0]], &[&[1]]])
    }

    pub fn circle_wedge_sphere2() -> ChainComplex {
        build(vec![1, 1, 1], &[&[], &[]])
    }

    /// Two vertices joined by two edges, one face glued along the loop.
    pub fn disk_with_two_vertices() -> ChainComplex {
        build(vec![2, 2, 1], &[&[&[-1, 1], &[1, -1]], &[&[1], &[1]]])
    }

    pub fn all() -> Vec<(&'static str, ChainComplex)> {
        vec![
            ("point", point()),
            ("circle", circle()),
            ("sphere2", sphere2()),
            ("torus", torus()),
            ("klein_bottle", klein_bottle()),
            ("rp2", rp2()),
            ("rp3", rp3()),
            ("pseudo_projective_plane_3", pseudo_projective_plane(3)),
            ("dunce_hat", dunce_hat()),
            ("circle_wedge_sphere2", circle_wedge_sphere2()),
            ("disk_with_two_vertices", disk_with_two_vertices()),
        ]
    }
}
