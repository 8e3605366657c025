//! Brute-force oracles shared by the integration tests. They only read the
//! multiplication table and never call the library's subgroup or series code.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use polydepth::finitegroup::FiniteGroup;
use polydepth::IntMatrix;

pub type Set = u32;

fn elements(s: Set) -> impl Iterator<Item = usize> {
    (0..32).filter(move |&i| s & (1 << i) != 0)
}

fn size(s: Set) -> usize {
    s.count_ones() as usize
}

/// Every subset containing the identity and closed under multiplication.
/// Finite, so closure makes it a subgroup. Only for orders up to 16.
pub fn power_set_subgroups(g: &FiniteGroup) -> Vec<Set> {
    let n = g.order();
    assert!(n <= 16, "power-set oracle is for small groups");
    (0..(1u32 << n))
        .filter(|&s| s & 1 == 1)
        .filter(|&s| elements(s).all(|a| elements(s).all(|b| s & (1 << g.mul(a, b)) != 0)))
        .collect()
}

pub struct Oracle<'g> {
    g: &'g FiniteGroup,
    subgroups: Vec<Set>,
}

impl<'g> Oracle<'g> {
    pub fn new(g: &'g FiniteGroup) -> Self {
        Self {
            g,
            subgroups: power_set_subgroups(g),
        }
    }

    pub fn subgroups(&self) -> &[Set] {
        &self.subgroups
    }

    fn subgroups_of(&self, ambient: Set) -> impl Iterator<Item = Set> + '_ {
        self.subgroups
            .iter()
            .copied()
            .filter(move |&h| h & !ambient == 0)
    }

    pub fn normal_in(&self, h: Set, ambient: Set) -> bool {
        elements(ambient).all(|x| {
            elements(h).all(|a| h & (1 << self.g.mul(self.g.mul(x, a), self.g.inv(x))) != 0)
        })
    }

    pub fn complement_in(&self, h: Set, k: Set, ambient: Set) -> bool {
        h & k == 1 && size(h) * size(k) == size(ambient)
    }

    pub fn has_complement_in(&self, h: Set, ambient: Set) -> bool {
        self.subgroups_of(ambient)
            .any(|k| self.complement_in(h, k, ambient))
    }

    /// `h` has a normal complement in `ambient`.
    pub fn is_retract_in(&self, h: Set, ambient: Set) -> bool {
        self.subgroups_of(ambient)
            .any(|k| self.complement_in(h, k, ambient) && self.normal_in(k, ambient))
    }

    /// Longest strictly descending chain from `top` to 1 whose members all
    /// satisfy `ok`.
    fn longest(&self, top: Set, ok: &dyn Fn(Set) -> bool) -> usize {
        if top == 1 {
            return 0;
        }
        self.subgroups
            .iter()
            .copied()
            .filter(|&h| h != top && h & !top == 0 && ok(h))
            .map(|h| 1 + self.longest(h, ok))
            .max()
            .expect("the trivial subgroup is always allowed")
    }

    pub fn whole(&self) -> Set {
        *self.subgroups.last().unwrap()
    }

    pub fn n1(&self) -> usize {
        let g = self.whole();
        self.longest(g, &|h| self.normal_in(h, g) && self.has_complement_in(h, g))
    }

    pub fn n2(&self) -> usize {
        let g = self.whole();
        self.longest(g, &|h| self.is_retract_in(h, g))
    }

    pub fn n3(&self) -> usize {
        self.n3_of(self.whole())
    }

    fn n3_of(&self, h: Set) -> usize {
        if h == 1 {
            return 0;
        }
        1 + self
            .subgroups_of(h)
            .filter(|&k| k != h && self.is_retract_in(k, h))
            .map(|k| self.n3_of(k))
            .max()
            .unwrap_or(0)
    }

    pub fn retracts(&self) -> Vec<Set> {
        let g = self.whole();
        self.subgroups_of(g)
            .filter(|&h| self.is_retract_in(h, g))
            .collect()
    }
}

pub fn set_of(h: &polydepth::Subgroup) -> Set {
    h.iter().fold(0, |s, i| s | (1 << i))
}

/// Determinant by cofactor expansion along the first row.
pub fn laplace_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut total = BigInt::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * laplace_det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

pub fn to_rows(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).clone()).collect())
        .collect()
}

pub fn naive_mul(
    a: &[Vec<BigInt>],
    b: &[Vec<BigInt>],
    inner: usize,
    cols: usize,
) -> Vec<Vec<BigInt>> {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut with_last = combinations(n - 1, k - 1);
    for c in &mut with_last {
        c.push(n - 1);
    }
    let mut out = combinations(n - 1, k);
    out.extend(with_last);
    out
}

/// Invariant factors from determinantal divisors: `d_k` is the gcd of all
/// `k x k` minors and the `k`-th factor is `d_k / d_{k-1}`.
pub fn invariant_factors_by_minors(m: &[Vec<BigInt>], cols: usize) -> Vec<BigInt> {
    let rows = m.len();
    let mut factors = Vec::new();
    let mut prev = BigInt::from(1);
    for k in 1..=rows.min(cols) {
        let mut d = BigInt::zero();
        for rs in combinations(rows, k) {
            for cs in combinations(cols, k) {
                let minor: Vec<Vec<BigInt>> = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| m[r][c].clone()).collect())
                    .collect();
                d = d.gcd(&laplace_det(&minor));
            }
        }
        if d.is_zero() {
            break;
        }
        factors.push((&d / &prev).abs());
        prev = d;
    }
    factors
}

/// Coefficients of `∏ (1 + x^n)` over the given sphere dimensions.
pub fn sphere_product_polynomial(dims: &[usize]) -> Vec<usize> {
    let mut p = vec![1usize];
    for &n in dims {
        let mut next = vec![0; p.len() + n];
        for (i, &c) in p.iter().enumerate() {
            next[i] += c;
            next[i + n] += c;
        }
        p = next;
    }
    p
}
