//! Finite groups given by Cayley tables, their subgroup lattices, and the
//! three splitting-series lengths:
//!
//! * `n1`: longest normal series whose terms all have a complement in `G`;
//! * `n2`: longest series whose terms are all retracts of `G`;
//! * `n3`: `0` for the trivial group, otherwise one more than the largest
//!   `n3` of a proper retract, with retracts taken intrinsically at each level.
//!
//! All three agree for every finite group; `verify_series_agreement` checks this by
//! computing each one independently.

pub mod catalog;

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default bound on the group order for exhaustive searches.
pub const DEFAULT_CAP: usize = 32;

/// Hard limit imposed by the 128-bit subgroup representation.
pub const MAX_ORDER: usize = 128;

/// A finite group on elements `0..order`, with `0` the identity.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u8>,
    inverse: Vec<u8>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(order {})", self.order)
    }
}

impl FiniteGroup {
    /// Validates and wraps a Cayley table: square, entries in range, a Latin
    /// square with `0` as two-sided identity, and associative.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        if n > MAX_ORDER {
            return Err(Error::InvalidTable(format!(
                "order {n} exceeds the supported maximum {MAX_ORDER}"
            )));
        }
        let mut table = Vec::with_capacity(n * n);
        for (a, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidTable(format!(
                    "row {a} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for &x in row {
                if x >= n {
                    return Err(Error::InvalidTable(format!(
                        "entry {x} out of range in row {a}"
                    )));
                }
                table.push(x as u8);
            }
        }
        let at = |a: usize, b: usize| table[a * n + b] as usize;

        for a in 0..n {
            if at(0, a) != a || at(a, 0) != a {
                return Err(Error::InvalidTable("element 0 is not the identity".into()));
            }
        }
        for a in 0..n {
            let mut row_seen = vec![false; n];
            let mut col_seen = vec![false; n];
            for b in 0..n {
                if std::mem::replace(&mut row_seen[at(a, b)], true) {
                    return Err(Error::InvalidTable(format!("row {a} repeats an element")));
                }
                if std::mem::replace(&mut col_seen[at(b, a)], true) {
                    return Err(Error::InvalidTable(format!(
                        "column {a} repeats an element"
                    )));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = at(a, b);
                for c in 0..n {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(Error::InvalidTable(format!(
                            "not associative: ({a}*{b})*{c} != {a}*({b}*{c})"
                        )));
                    }
                }
            }
        }
        let inverse = (0..n)
            .map(|a| (0..n).find(|&b| at(a, b) == 0).unwrap() as u8)
            .collect();
        Ok(Self {
            order: n,
            table,
            inverse,
        })
    }

    /// Parses the text format: a line with `n`, then `n` lines of `n`
    /// whitespace-separated element indices.
    pub fn parse_table(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::InvalidTable("missing order line".into()))?;
        let n: usize = header
            .parse()
            .map_err(|_| Error::InvalidTable(format!("bad order line `{header}`")))?;
        let mut rows = Vec::with_capacity(n);
        for line in lines {
            let row = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::InvalidTable(format!("bad entry `{t}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        if rows.len() != n {
            return Err(Error::InvalidTable(format!(
                "header says {n} rows, found {}",
                rows.len()
            )));
        }
        Self::from_table(&rows)
    }

    pub fn to_table_text(&self) -> String {
        let mut out = format!("{}\n", self.order);
        for a in 0..self.order {
            let row: Vec<String> = (0..self.order)
                .map(|b| self.mul(a, b).to_string())
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_bits(if self.order == 128 {
            u128::MAX
        } else {
            (1u128 << self.order) - 1
        })
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_bits(1)
    }

    /// Smallest subgroup containing `gens`.
    pub fn generated(&self, gens: &[usize]) -> Subgroup {
        let mut bits = 1u128;
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if bits & (1 << y) == 0 {
                    bits |= 1 << y;
                    frontier.push(y);
                }
            }
        }
        Subgroup::from_bits(bits)
    }

    /// Checks closure of an arbitrary element set; returns it as a subgroup
    /// if it is one.
    pub fn subgroup_from_elements(&self, elements: &[usize]) -> Result<Subgroup> {
        let mut bits = 0u128;
        for &e in elements {
            if e >= self.order {
                return Err(Error::Malformed(format!("element {e} out of range")));
            }
            bits |= 1 << e;
        }
        let s = Subgroup::from_bits(bits);
        if !s.contains(0)
            || s.iter()
                .any(|a| s.iter().any(|b| !s.contains(self.mul(a, b))))
        {
            return Err(Error::Malformed("element set is not a subgroup".into()));
        }
        Ok(s)
    }

    /// The subgroup `h` as a group in its own right, elements relabeled in
    /// increasing order (so the identity stays at 0).
    pub fn restrict(&self, h: Subgroup) -> FiniteGroup {
        let members: Vec<usize> = h.iter().collect();
        let mut index = vec![usize::MAX; self.order];
        for (i, &m) in members.iter().enumerate() {
            index[m] = i;
        }
        let rows: Vec<Vec<usize>> = members
            .iter()
            .map(|&a| members.iter().map(|&b| index[self.mul(a, b)]).collect())
            .collect();
        FiniteGroup::from_table(&rows).expect("restriction of a subgroup is a group")
    }

    fn check_cap(&self, cap: usize) -> Result<()> {
        if self.order > cap {
            return Err(Error::OrderExceedsCap {
                order: self.order,
                cap,
            });
        }
        Ok(())
    }
}

/// Subgroup as a bit set over element indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subgroup {
    members: u128,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Subgroup {
    fn from_bits(members: u128) -> Self {
        Self { members }
    }

    pub fn bits(&self) -> u128 {
        self.members
    }

    pub fn order(&self) -> usize {
        self.members.count_ones() as usize
    }

    pub fn contains(&self, a: usize) -> bool {
        a < 128 && self.members & (1 << a) != 0
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members & !other.members == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.members == 1
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup::from_bits(self.members & other.members)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let bits = self.members;
        (0..128).filter(move |&i| bits & (1 << i) != 0)
    }

    pub fn elements(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

/// Every subgroup of `g`, duplicate-free, ordered by size and then by member
/// bits (so the trivial subgroup is first and `g` itself last).
///
/// Subgroups are grown one generator at a time from the trivial subgroup,
/// which reaches every subgroup of a finite group.
pub fn all_subgroups(g: &FiniteGroup, cap: usize) -> Result<Vec<Subgroup>> {
    Ok(enumerate_with_generators(g, cap)?
        .into_iter()
        .map(|(s, _)| s)
        .collect())
}

fn enumerate_with_generators(g: &FiniteGroup, cap: usize) -> Result<Vec<(Subgroup, Vec<usize>)>> {
    g.check_cap(cap)?;
    let trivial = g.trivial_subgroup();
    let mut seen: HashSet<u128> = HashSet::from([trivial.bits()]);
    let mut found = vec![(trivial, Vec::new())];
    let mut next = 0;
    while next < found.len() {
        let (sub, gens) = found[next].clone();
        next += 1;
        for x in 0..g.order() {
            if sub.contains(x) {
                continue;
            }
            let mut grown_gens = gens.clone();
            grown_gens.push(x);
            let grown = g.generated(&grown_gens);
            if seen.insert(grown.bits()) {
                found.push((grown, grown_gens));
            }
        }
    }
    found.sort_by_key(|(s, _)| (s.order(), s.bits()));
    Ok(found)
}

/// `gHg⁻¹ = H` for every `g` in `G`.
pub fn is_normal(g: &FiniteGroup, h: Subgroup) -> bool {
    (0..g.order()).all(|x| h.iter().all(|y| h.contains(g.conj(x, y))))
}

/// `K` is a complement of `H` in `G`: trivial intersection and `HK = G`.
pub fn is_complement(g: &FiniteGroup, h: Subgroup, k: Subgroup) -> bool {
    h.intersection(&k).is_trivial() && h.order() * k.order() == g.order()
}

/// `H` is a retract of `G`, i.e. has a normal complement.
pub fn is_retract(g: &FiniteGroup, h: Subgroup) -> bool {
    let subgroups = all_subgroups(g, MAX_ORDER).expect("order is within MAX_ORDER");
    subgroups
        .iter()
        .any(|&n| is_complement(g, h, n) && is_normal(g, n))
}

/// A maximal series together with one witness complement per term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesResult {
    pub length: usize,
    /// `G = G_0 > G_1 > … > G_k = 1`.
    pub witness: Vec<Subgroup>,
    /// `complements[i]` is a complement of `witness[i]` in `G` (normal, for
    /// retract series).
    pub complements: Vec<Subgroup>,
}

/// Subgroup lattice of one group with the predicates the series searches
/// need, computed once.
pub struct SubgroupLattice<'g> {
    group: &'g FiniteGroup,
    subgroups: Vec<Subgroup>,
    generators: Vec<Vec<usize>>,
    normal: Vec<bool>,
}

impl<'g> SubgroupLattice<'g> {
    pub fn new(group: &'g FiniteGroup, cap: usize) -> Result<Self> {
        let (subgroups, generators): (Vec<_>, Vec<_>) =
            enumerate_with_generators(group, cap)?.into_iter().unzip();
        let whole = subgroups.len() - 1;
        let mut lattice = Self {
            group,
            subgroups,
            generators,
            normal: Vec::new(),
        };
        lattice.normal = (0..lattice.subgroups.len())
            .map(|i| lattice.normal_in(i, whole))
            .collect();
        Ok(lattice)
    }

    pub fn group(&self) -> &FiniteGroup {
        self.group
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn index_of(&self, h: Subgroup) -> Option<usize> {
        self.subgroups
            .binary_search_by_key(&(h.order(), h.bits()), |s| (s.order(), s.bits()))
            .ok()
    }

    pub fn is_normal(&self, i: usize) -> bool {
        self.normal[i]
    }

    pub fn normal_subgroups(&self) -> impl Iterator<Item = Subgroup> + '_ {
        self.subgroups
            .iter()
            .zip(&self.normal)
            .filter(|(_, &n)| n)
            .map(|(&s, _)| s)
    }

    /// Subgroup `n` is contained in and normal in subgroup `h`. Checking
    /// generators against generators suffices.
    fn normal_in(&self, n: usize, h: usize) -> bool {
        let (ns, hs) = (self.subgroups[n], self.subgroups[h]);
        if !ns.is_subset_of(&hs) {
            return false;
        }
        self.generators[h].iter().all(|&x| {
            self.generators[n]
                .iter()
                .all(|&y| ns.contains(self.group.conj(x, y)))
        })
    }

    /// First subgroup (in lattice order) that complements `i` in `G`.
    pub fn complement_of(&self, i: usize) -> Option<usize> {
        let h = self.subgroups[i];
        (0..self.len()).find(|&j| is_complement(self.group, h, self.subgroups[j]))
    }

    /// First normal subgroup that complements `i` in `G`.
    pub fn normal_complement_of(&self, i: usize) -> Option<usize> {
        let h = self.subgroups[i];
        (0..self.len()).find(|&j| self.normal[j] && is_complement(self.group, h, self.subgroups[j]))
    }

    pub fn is_retract(&self, i: usize) -> bool {
        self.normal_complement_of(i).is_some()
    }

    /// Longest chain from `G` down to `1` through the subgroups accepted by
    /// `admissible` (which must accept both ends). Ties go to the later
    /// subgroup in lattice order, i.e. the larger one, so the witness is
    /// deterministic.
    fn longest_chain(&self, admissible: &[bool]) -> Vec<usize> {
        let n = self.len();
        let mut best: Vec<Option<(usize, usize)>> = vec![None; n];
        best[0] = Some((0, 0));
        for i in 1..n {
            if !admissible[i] {
                continue;
            }
            let hi = self.subgroups[i];
            for j in 0..i {
                let Some((len_j, _)) = best[j] else { continue };
                let hj = self.subgroups[j];
                if hj.order() < hi.order() && hj.is_subset_of(&hi) {
                    match best[i] {
                        Some((len_i, _)) if len_i > len_j + 1 => {}
                        _ => best[i] = Some((len_j + 1, j)),
                    }
                }
            }
        }
        let mut chain = vec![n - 1];
        let mut cur = n - 1;
        while cur != 0 {
            cur = best[cur].expect("trivial subgroup is admissible").1;
            chain.push(cur);
        }
        chain
    }

    pub fn n1(&self) -> SeriesResult {
        let complements: Vec<Option<usize>> = (0..self.len())
            .map(|i| {
                if self.normal[i] {
                    self.complement_of(i)
                } else {
                    None
                }
            })
            .collect();
        let admissible: Vec<bool> = complements.iter().map(Option::is_some).collect();
        let chain = self.longest_chain(&admissible);
        self.series(&chain, |i| complements[i].unwrap())
    }

    pub fn n2(&self) -> SeriesResult {
        let complements: Vec<Option<usize>> = (0..self.len())
            .map(|i| self.normal_complement_of(i))
            .collect();
        let admissible: Vec<bool> = complements.iter().map(Option::is_some).collect();
        let chain = self.longest_chain(&admissible);
        self.series(&chain, |i| complements[i].unwrap())
    }

    fn series(&self, chain: &[usize], complement: impl Fn(usize) -> usize) -> SeriesResult {
        SeriesResult {
            length: chain.len() - 1,
            witness: chain.iter().map(|&i| self.subgroups[i]).collect(),
            complements: chain
                .iter()
                .map(|&i| self.subgroups[complement(i)])
                .collect(),
        }
    }

    /// `n3` for every subgroup, treating each as a group in its own right.
    pub fn n3_all(&self) -> Vec<usize> {
        let n = self.len();
        let mut n3 = vec![0usize; n];
        for h in 1..n {
            let hs = self.subgroups[h];
            let inside: Vec<usize> = (0..h)
                .filter(|&k| self.subgroups[k].is_subset_of(&hs))
                .collect();
            let normal_inside: Vec<usize> = inside
                .iter()
                .copied()
                .chain(std::iter::once(h))
                .filter(|&k| self.normal_in(k, h))
                .collect();
            let is_retract_of_h = |k: usize| {
                let ks = self.subgroups[k];
                normal_inside.iter().any(|&m| {
                    let ms = self.subgroups[m];
                    ks.order() * ms.order() == hs.order() && ks.intersection(&ms).is_trivial()
                })
            };
            n3[h] = 1 + inside
                .iter()
                .filter(|&&k| is_retract_of_h(k))
                .map(|&k| n3[k])
                .max()
                .expect("the trivial subgroup is a proper retract of any nontrivial group");
        }
        n3
    }

    pub fn n3(&self) -> usize {
        *self.n3_all().last().unwrap()
    }
}

pub fn n1(g: &FiniteGroup, cap: usize) -> Result<SeriesResult> {
    Ok(SubgroupLattice::new(g, cap)?.n1())
}

pub fn n2(g: &FiniteGroup, cap: usize) -> Result<SeriesResult> {
    Ok(SubgroupLattice::new(g, cap)?.n2())
}

pub fn n3(g: &FiniteGroup, cap: usize) -> Result<usize> {
    Ok(SubgroupLattice::new(g, cap)?.n3())
}

/// Splitting length of a finite group.
pub fn splitting_length(g: &FiniteGroup, cap: usize) -> Result<usize> {
    Ok(n1(g, cap)?.length)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesAgreement {
    pub n1: SeriesResult,
    pub n2: SeriesResult,
    pub n3: usize,
    pub holds: bool,
}

/// Computes `n1`, `n2` and `n3` separately and reports whether they agree.
pub fn verify_series_agreement(g: &FiniteGroup, cap: usize) -> Result<SeriesAgreement> {
    let lattice = SubgroupLattice::new(g, cap)?;
    let n1 = lattice.n1();
    let n2 = lattice.n2();
    let n3 = lattice.n3();
    let holds = n1.length == n2.length && n2.length == n3;
    Ok(SeriesAgreement { n1, n2, n3, holds })
}
