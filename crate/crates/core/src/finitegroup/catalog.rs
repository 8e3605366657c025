//! Named Cayley tables: every group of order at most 16, the cyclic groups
//! up to order 24, and a few named families.
//!
//! Tables are built from cyclic, dihedral-style (metacyclic) and
//! abelian-by-cyclic semidirect product constructions, then validated by
//! `FiniteGroup::from_table`.

use std::collections::BTreeMap;

use super::{FiniteGroup, Subgroup, SubgroupLattice, MAX_ORDER};
use crate::abelian::FgAbelianGroup;
use crate::error::{Error, Result};

pub fn cyclic(n: usize) -> FiniteGroup {
    let rows: Vec<Vec<usize>> = (0..n)
        .map(|a| (0..n).map(|b| (a + b) % n).collect())
        .collect();
    FiniteGroup::from_table(&rows).expect("cyclic table")
}

/// `⟨x, y | x^m = 1, y^n = x^s, y x y⁻¹ = x^r⟩`, elements `x^i y^j` stored at
/// index `i + m*j`. Panics if the parameters do not define a group of
/// order `m*n`.
pub fn metacyclic(m: usize, n: usize, r: usize, s: usize) -> FiniteGroup {
    let pow_r: Vec<usize> = std::iter::successors(Some(1 % m), |p| Some(p * r % m))
        .take(n)
        .collect();
    let order = m * n;
    let mut rows = vec![vec![0; order]; order];
    for (a, row) in rows.iter_mut().enumerate() {
        let (i, j) = (a % m, a / m);
        for (b, cell) in row.iter_mut().enumerate() {
            let (k, l) = (b % m, b / m);
            let mut x = i + k * pow_r[j];
            let mut y = j + l;
            if y >= n {
                y -= n;
                x += s;
            }
            *cell = x % m + m * y;
        }
    }
    FiniteGroup::from_table(&rows).expect("metacyclic parameters define a group")
}

/// Dihedral group of order `2n`.
pub fn dihedral(n: usize) -> FiniteGroup {
    metacyclic(n, 2, n - 1, 0)
}

/// Generalized quaternion group of order `order` (a power of two, ≥ 8).
pub fn quaternion(order: usize) -> FiniteGroup {
    let m = order / 2;
    metacyclic(m, 2, m - 1, m / 2)
}

/// `(Z/m1 × … × Z/mk) ⋊ Z/k` where the generator of `Z/k` acts by the
/// endomorphism sending basis vector `i` to `images[i]`.
pub fn abelian_by_cyclic(moduli: &[usize], k: usize, images: &[Vec<usize>]) -> FiniteGroup {
    let dim = moduli.len();
    let n_order: usize = moduli.iter().product();
    let decode = |mut idx: usize| {
        let mut v = vec![0; dim];
        for (c, &m) in v.iter_mut().zip(moduli) {
            *c = idx % m;
            idx /= m;
        }
        v
    };
    let encode = |v: &[usize]| {
        v.iter()
            .zip(moduli)
            .rev()
            .fold(0, |acc, (&c, &m)| acc * m + c % m)
    };
    let act = |v: &[usize]| {
        let mut out = vec![0; dim];
        for (i, &c) in v.iter().enumerate() {
            for (o, &img) in out.iter_mut().zip(&images[i]) {
                *o += c * img;
            }
        }
        out.iter()
            .zip(moduli)
            .map(|(&o, &m)| o % m)
            .collect::<Vec<_>>()
    };
    let order = n_order * k;
    let mut rows = vec![vec![0; order]; order];
    for (a, row) in rows.iter_mut().enumerate() {
        let (v, t) = (decode(a % n_order), a / n_order);
        for (b, cell) in row.iter_mut().enumerate() {
            let (mut w, s) = (decode(b % n_order), b / n_order);
            for _ in 0..t {
                w = act(&w);
            }
            let sum: Vec<usize> = v.iter().zip(&w).map(|(x, y)| x + y).collect();
            *cell = encode(&sum) + n_order * ((t + s) % k);
        }
    }
    FiniteGroup::from_table(&rows).expect("action is an automorphism of order dividing k")
}

pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let (na, nb) = (a.order(), b.order());
    let rows: Vec<Vec<usize>> = (0..na * nb)
        .map(|x| {
            (0..na * nb)
                .map(|y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb))
                .collect()
        })
        .collect();
    FiniteGroup::from_table(&rows).expect("direct product table")
}

fn cyclic_product(orders: &[usize]) -> FiniteGroup {
    orders
        .iter()
        .map(|&n| cyclic(n))
        .reduce(|acc, g| direct_product(&acc, &g))
        .unwrap_or_else(|| cyclic(1))
}

#[derive(Clone, Debug)]
pub struct CatalogGroup {
    pub name: String,
    pub group: FiniteGroup,
    /// Primary decomposition, taken from the construction, for abelian
    /// entries.
    pub abelian: Option<FgAbelianGroup>,
}

impl CatalogGroup {
    fn abelian(name: impl Into<String>, cyclic_orders: &[usize]) -> Self {
        let orders: Vec<u64> = cyclic_orders.iter().map(|&n| n as u64).collect();
        Self {
            name: name.into(),
            group: cyclic_product(cyclic_orders),
            abelian: Some(FgAbelianGroup::from_cyclic_orders(0, &orders).expect("positive orders")),
        }
    }

    fn nonabelian(name: &str, group: FiniteGroup) -> Self {
        Self {
            name: name.into(),
            group,
            abelian: None,
        }
    }
}

/// The full catalog, ordered by group order and then by name.
pub fn all() -> Vec<CatalogGroup> {
    let mut groups: Vec<CatalogGroup> = (1..=24)
        .map(|n| CatalogGroup::abelian(format!("Z{n}"), &[n]))
        .collect();

    let abelian: [(&str, &[usize]); 9] = [
        ("Z2xZ2", &[2, 2]),
        ("Z2xZ4", &[2, 4]),
        ("Z2xZ2xZ2", &[2, 2, 2]),
        ("Z3xZ3", &[3, 3]),
        ("Z2xZ6", &[2, 6]),
        ("Z4xZ4", &[4, 4]),
        ("Z2xZ8", &[2, 8]),
        ("Z2xZ2xZ4", &[2, 2, 4]),
        ("Z2xZ2xZ2xZ2", &[2, 2, 2, 2]),
    ];
    groups.extend(
        abelian
            .iter()
            .map(|(name, orders)| CatalogGroup::abelian(*name, orders)),
    );

    let nonabelian = [
        ("S3", dihedral(3)),
        ("D4", dihedral(4)),
        ("Q8", quaternion(8)),
        ("D5", dihedral(5)),
        ("D6", dihedral(6)),
        (
            "A4",
            abelian_by_cyclic(&[2, 2], 3, &[vec![0, 1], vec![1, 1]]),
        ),
        ("Dic3", metacyclic(3, 4, 2, 0)),
        ("D7", dihedral(7)),
        ("D8", dihedral(8)),
        ("Q16", quaternion(16)),
        ("SD16", metacyclic(8, 2, 3, 0)),
        ("M16", metacyclic(8, 2, 5, 0)),
        ("Z4:Z4", metacyclic(4, 4, 3, 0)),
        (
            "(Z4xZ2):Z2",
            abelian_by_cyclic(&[4, 2], 2, &[vec![1, 1], vec![0, 1]]),
        ),
        (
            "Pauli",
            abelian_by_cyclic(&[4, 2], 2, &[vec![1, 0], vec![2, 1]]),
        ),
        ("Z2xD4", direct_product(&cyclic(2), &dihedral(4))),
        ("Z2xQ8", direct_product(&cyclic(2), &quaternion(8))),
    ];
    groups.extend(
        nonabelian
            .into_iter()
            .map(|(name, g)| CatalogGroup::nonabelian(name, g)),
    );

    groups.sort_by(|a, b| (a.group.order(), &a.name).cmp(&(b.group.order(), &b.name)));
    groups
}

pub fn names() -> Vec<String> {
    all().into_iter().map(|c| c.name).collect()
}

pub fn by_name(name: &str) -> Result<CatalogGroup> {
    all()
        .into_iter()
        .find(|c| c.name.eq_ignore_ascii_case(name))
        .ok_or_else(|| Error::UnknownGroup(name.to_string()))
}

/// Isomorphism invariants used to tell catalog groups apart: order,
/// element-order histogram, number of subgroups and of normal subgroups,
/// size of the center, and the subgroup-order histogram.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    pub order: usize,
    pub element_orders: BTreeMap<usize, usize>,
    pub subgroups: usize,
    pub normal_subgroups: usize,
    pub center: usize,
    pub subgroup_orders: BTreeMap<usize, usize>,
}

pub fn signature(g: &FiniteGroup) -> Signature {
    let mut element_orders = BTreeMap::new();
    for a in 0..g.order() {
        *element_orders.entry(g.element_order(a)).or_insert(0) += 1;
    }
    let lattice = SubgroupLattice::new(g, MAX_ORDER).expect("within MAX_ORDER");
    let mut subgroup_orders = BTreeMap::new();
    for s in lattice.subgroups() {
        *subgroup_orders.entry(s.order()).or_insert(0) += 1;
    }
    let center = (0..g.order())
        .filter(|&a| (0..g.order()).all(|b| g.mul(a, b) == g.mul(b, a)))
        .count();
    Signature {
        order: g.order(),
        element_orders,
        subgroups: lattice.len(),
        normal_subgroups: lattice.normal_subgroups().count(),
        center,
        subgroup_orders,
    }
}

/// Name of the catalog group isomorphic to `g`, for orders where the catalog
/// is complete (at most 16) or when `g` is cyclic.
pub fn identify(g: &FiniteGroup) -> Option<String> {
    let order = g.order();
    if (0..order).any(|a| g.element_order(a) == order) {
        return Some(format!("Z{order}"));
    }
    if order > 16 {
        return None;
    }
    let sig = signature(g);
    let mut matches = all()
        .into_iter()
        .filter(|c| c.group.order() == order && signature(&c.group) == sig);
    let first = matches.next()?;
    matches.next().is_none().then_some(first.name)
}

/// Display label for a subgroup of `g`: `1`, the catalog name of its
/// isomorphism type, or `G<order>` when that is not determined.
pub fn subgroup_label(g: &FiniteGroup, h: Subgroup) -> String {
    if h.is_trivial() {
        return "1".into();
    }
    let restricted = g.restrict(h);
    identify(&restricted).unwrap_or_else(|| format!("G{}", h.order()))
}
