//! One PASS/FAIL line per acceptance criterion. Every criterion must pass.

mod common;

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use polydepth::depth::{
    best_bound, bound_2dim, bound_general, sl_of, wedge_exact_depth, BoundOutcome, Pi1Descriptor,
    Rule,
};
use polydepth::finitegroup::{catalog, verify_series_agreement, SubgroupLattice, DEFAULT_CAP};
use polydepth::topology::{complexes, euler_characteristic, homology, universal_cover_homology};
use polydepth::verify::random_matrix;
use polydepth::{smith_normal_form, Error, FgAbelianGroup, SpaceExpr};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{
    invariant_factors_by_minors, laplace_det, naive_mul, set_of, sphere_product_polynomial,
    to_rows, Oracle,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn report(name: &str, outcome: Outcome) -> bool {
    match outcome {
        Ok(detail) => {
            println!("PASS {name}: {detail}");
            true
        }
        Err(why) => {
            println!("FAIL {name}: {why}");
            false
        }
    }
}

/// All vectors `(r_2, …, r_6)` with entries summing to at most 6.
fn wedge_vectors() -> Vec<[usize; 5]> {
    let mut out = Vec::new();
    let mut v = [0usize; 5];
    fn rec(i: usize, left: usize, v: &mut [usize; 5], out: &mut Vec<[usize; 5]>) {
        if i == 5 {
            out.push(*v);
            return;
        }
        for r in 0..=left {
            v[i] = r;
            rec(i + 1, left - r, v, out);
        }
    }
    rec(0, 6, &mut v, &mut out);
    out
}

fn wedges_of_spheres() -> Outcome {
    let vectors = wedge_vectors();
    for r in &vectors {
        let degrees: Vec<usize> = r
            .iter()
            .enumerate()
            .flat_map(|(i, &count)| std::iter::repeat_n(i + 2, count))
            .collect();
        let total: usize = r.iter().sum();
        let capacity: BigUint = r.iter().map(|&c| BigUint::from(c + 1)).product();
        let counts: BTreeMap<usize, usize> = r
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| (i + 2, c))
            .collect();

        let w = wedge_exact_depth(&counts);
        ensure(w.depth == total && w.capacity == capacity, || {
            format!("{r:?}: wedge oracle gave ({}, {})", w.depth, w.capacity)
        })?;
        if degrees.is_empty() {
            continue;
        }
        let x = SpaceExpr::wedge_of_spheres(degrees);
        let b = best_bound(&x, DEFAULT_CAP);
        let rep = b.report().ok_or_else(|| format!("{r:?}: no bound"))?;
        ensure(rep.bound == total && rep.exact_depth == Some(total), || {
            format!(
                "{r:?}: bound {} exact {:?}, expected {total}",
                rep.bound, rep.exact_depth
            )
        })?;
    }
    Ok(format!("{} degree vectors", vectors.len()))
}

fn products_of_spheres() -> Outcome {
    for n in 2..=5 {
        let x = SpaceExpr::Product(vec![SpaceExpr::Sphere(1), SpaceExpr::Sphere(n)]);
        let rep = best_bound(&x, DEFAULT_CAP)
            .report()
            .cloned()
            .ok_or_else(|| format!("S1xS{n}: no bound"))?;
        ensure(rep.bound == 2, || format!("S1xS{n}: bound {}", rep.bound))?;
        let cover = universal_cover_homology(&x).map_err(|e| e.to_string())?;
        let sphere = homology(&SpaceExpr::Sphere(n)).map_err(|e| e.to_string())?;
        for k in 0..=n + 1 {
            ensure(cover.group(k) == sphere.group(k), || {
                format!(
                    "S1xS{n}: cover H{k} = {:?}, S{n} has {:?}",
                    cover.group(k),
                    sphere.group(k)
                )
            })?;
        }
    }

    let cases: [(&str, &[usize]); 3] = [
        ("S2xS2", &[2, 2]),
        ("S2xS3", &[2, 3]),
        ("S1xS1xS2", &[1, 1, 2]),
    ];
    for (name, dims) in cases {
        let x = SpaceExpr::Product(dims.iter().map(|&n| SpaceExpr::Sphere(n)).collect());
        let circles = dims.iter().filter(|&&n| n == 1).count();
        let higher: Vec<usize> = dims.iter().copied().filter(|&n| n > 1).collect();
        let poly = sphere_product_polynomial(&higher);
        let rep = bound_general(&x, DEFAULT_CAP).map_err(|e| format!("{name}: {e}"))?;
        for i in 2..=x.dim() {
            let expected = poly.get(i).copied().unwrap_or(0);
            ensure(rep.per_degree.get(&i) == Some(&expected), || {
                format!(
                    "{name}: degree {i} count {:?}, polynomial gives {expected}",
                    rep.per_degree.get(&i)
                )
            })?;
        }
        let expected_bound = circles + poly.iter().skip(2).sum::<usize>();
        ensure(rep.sl_pi1 == circles && rep.bound == expected_bound, || {
            format!("{name}: bound {} expected {expected_bound}", rep.bound)
        })?;
        let full = sphere_product_polynomial(dims);
        let betti = homology(&x)
            .ok()
            .and_then(|h| h.betti_numbers())
            .ok_or_else(|| format!("{name}: homology"))?;
        ensure(betti == full, || {
            format!("{name}: betti {betti:?} vs {full:?}")
        })?;
    }
    Ok("S1xSn for n=2..5; S2xS2, S2xS3, S1xS1xS2".into())
}

fn wedges_with_circles() -> Outcome {
    for (degrees, expected) in [(vec![1, 2], 2), (vec![1, 1, 2], 3)] {
        let x = SpaceExpr::wedge_of_spheres(degrees.clone());
        let rep = best_bound(&x, DEFAULT_CAP)
            .report()
            .cloned()
            .ok_or_else(|| format!("{degrees:?}: no bound"))?;
        ensure(rep.bound == expected && rep.rule == Rule::Free2Dim, || {
            format!("{degrees:?}: {} via {}", rep.bound, rep.rule)
        })?;
        let two_dim = bound_2dim(&x, DEFAULT_CAP).map_err(|e| e.to_string())?;
        ensure(two_dim.bound == expected, || {
            format!("{degrees:?}: 2-dim bound {}", two_dim.bound)
        })?;
        let general = bound_general(&x, DEFAULT_CAP);
        ensure(general == Err(Error::NotFinitelyGenerated(2)), || {
            format!("{degrees:?}: general route gave {general:?}")
        })?;
    }
    Ok("S1vS2 -> 2, S1vS1vS2 -> 3, general route not finitely generated".into())
}

fn series_agree() -> Outcome {
    let all = catalog::all();
    let mut cross_checked = 0;
    for c in &all {
        let r = verify_series_agreement(&c.group, DEFAULT_CAP)
            .map_err(|e| format!("{}: {e}", c.name))?;
        ensure(r.holds, || {
            format!(
                "{}: n1={} n2={} n3={}",
                c.name, r.n1.length, r.n2.length, r.n3
            )
        })?;
        if c.group.order() <= 8 {
            let o = Oracle::new(&c.group);
            let expected = (o.n1(), o.n2(), o.n3());
            let got = (r.n1.length, r.n2.length, r.n3);
            ensure(got == expected, || {
                format!("{}: {got:?} vs oracle {expected:?}", c.name)
            })?;
            cross_checked += 1;
        }
    }
    for (name, expected) in [("Z6", 2), ("Z4", 1), ("S3", 2), ("Q8", 1), ("Z2xZ2", 2)] {
        let g = catalog::by_name(name).map_err(|e| e.to_string())?.group;
        let o = Oracle::new(&g);
        ensure(o.n1() == expected, || {
            format!("{name}: oracle n1 {}", o.n1())
        })?;
        let got = sl_of(&Pi1Descriptor::Finite(g), DEFAULT_CAP).map_err(|e| e.to_string())?;
        ensure(got == expected, || {
            format!("{name}: sl {got}, expected {expected}")
        })?;
    }
    Ok(format!(
        "{} catalog groups, {cross_checked} against the power-set oracle",
        all.len()
    ))
}

fn abelian_bridge() -> Outcome {
    let mut count = 0;
    for c in catalog::all().into_iter().filter(|c| c.group.order() <= 16) {
        let Some(primary) = &c.abelian else { continue };
        let lattice = SubgroupLattice::new(&c.group, DEFAULT_CAP).map_err(|e| e.to_string())?;
        let n1 = lattice.n1().length;
        ensure(primary.sl() == n1, || {
            format!("{}: sl {} vs n1 {n1}", c.name, primary.sl())
        })?;
        if c.group.order() <= 8 {
            let oracle = Oracle::new(&c.group).n1();
            ensure(oracle == n1, || format!("{}: oracle n1 {oracle}", c.name))?;
        }
        count += 1;
    }
    let z6: FgAbelianGroup = "Z/6".parse().map_err(|e: Error| e.to_string())?;
    ensure(z6.torsion() == [2, 3] && z6.sl() == 2, || {
        format!("Z/6 parsed as {z6}")
    })?;
    Ok(format!("{count} abelian groups of order at most 16"))
}

fn retracts_shrink() -> Outcome {
    let mut pairs = 0;
    for c in catalog::all() {
        let lattice = SubgroupLattice::new(&c.group, DEFAULT_CAP).map_err(|e| e.to_string())?;
        let n1_g = lattice.n1().length;
        let whole = c.group.whole();
        let retracts: Vec<_> = (0..lattice.len())
            .filter(|&i| lattice.is_retract(i))
            .map(|i| lattice.subgroups()[i])
            .collect();
        if c.group.order() <= 8 {
            let mut ours: Vec<u32> = retracts.iter().map(set_of).collect();
            let mut theirs = Oracle::new(&c.group).retracts();
            ours.sort_unstable();
            theirs.sort_unstable();
            ensure(ours == theirs, || {
                format!("{}: retract sets differ", c.name)
            })?;
        }
        for h in retracts {
            let sub = c.group.restrict(h);
            let n1_h = SubgroupLattice::new(&sub, DEFAULT_CAP)
                .map_err(|e| e.to_string())?
                .n1()
                .length;
            let ok = if h == whole {
                n1_h == n1_g
            } else {
                n1_h < n1_g
            };
            ensure(ok, || {
                format!(
                    "{}: retract of order {} has n1 {n1_h}, group has {n1_g}",
                    c.name,
                    h.order()
                )
            })?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} (group, retract) pairs"))
}

fn homology_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20_261_016);
    let samples = 1000;
    for i in 0..samples {
        let m = random_matrix(&mut rng);
        let r = smith_normal_form(&m);
        let (rows, cols) = (m.rows(), m.cols());
        let mr = to_rows(&m);
        let u = to_rows(&r.u);
        let v = to_rows(&r.v);
        let um = naive_mul(&u, &mr, rows, cols);
        let umv = naive_mul(&um, &v, cols, cols);
        ensure(umv == to_rows(&r.s), || format!("sample {i}: UMV != S"))?;
        for (name, t) in [("U", &u), ("V", &v)] {
            let d = laplace_det(t);
            ensure(d.abs().is_one(), || format!("sample {i}: det {name} = {d}"))?;
        }
        for a in 0..rows {
            for b in 0..cols {
                let want = if a == b && a < r.diagonal.len() {
                    r.diagonal[a].clone()
                } else {
                    BigInt::zero()
                };
                ensure(r.s.get(a, b) == &want, || {
                    format!("sample {i}: S[{a}][{b}]")
                })?;
            }
        }
        let by_minors = invariant_factors_by_minors(&mr, cols);
        ensure(by_minors == r.diagonal, || {
            format!(
                "sample {i}: diagonal {:?} vs minors {by_minors:?}",
                r.diagonal
            )
        })?;
        let chain_ok = r.diagonal.iter().all(|d| d.is_positive())
            && r.diagonal.windows(2).all(|w| (&w[1] % &w[0]).is_zero());
        ensure(chain_ok, || format!("sample {i}: divisibility"))?;
    }

    let pinned = [
        ("S2", complexes::sphere2(), vec!["Z", "0", "Z"]),
        ("torus", complexes::torus(), vec!["Z", "Z^2", "Z"]),
        ("RP2", complexes::rp2(), vec!["Z", "Z/2", "0"]),
    ];
    for (name, c, expected) in pinned {
        let h = c.homology().map_err(|e| e.to_string())?;
        let got: Vec<String> = (0..=h.dim())
            .map(|k| h.group(k).map_or("nfg".into(), |g| g.to_string()))
            .collect();
        ensure(got == expected, || format!("{name}: {got:?}"))?;
    }

    let complexes = complexes::all();
    for (name, c) in &complexes {
        let betti = c
            .homology()
            .ok()
            .and_then(|h| h.betti_numbers())
            .ok_or_else(|| format!("{name}: homology"))?;
        let alt: i64 = betti
            .iter()
            .enumerate()
            .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum();
        let cells: i64 = c
            .cells()
            .iter()
            .enumerate()
            .map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum();
        ensure(alt == cells && cells == euler_characteristic(c), || {
            format!("{name}: cells {cells}, homology {alt}")
        })?;
    }
    Ok(format!(
        "{samples} random SNFs, pinned S2/torus/RP2, Euler on {} complexes",
        complexes.len()
    ))
}

fn inapplicability() -> Outcome {
    let pi1 = Pi1Descriptor::ElementaryAmenable {
        hirsch: 2,
        cd_finite: false,
    };
    ensure(sl_of(&pi1, DEFAULT_CAP) == Err(Error::CdNotFinite), || {
        "sl_of did not refuse".into()
    })?;
    let x = SpaceExpr::explicit(complexes::torus(), pi1, None);
    ensure(x.dim() == 2, || "not 2-dimensional".into())?;
    match best_bound(&x, DEFAULT_CAP) {
        BoundOutcome::NoBoundApplicable { failed_hypotheses } => {
            let cd = Error::CdNotFinite.to_string();
            ensure(
                !failed_hypotheses.is_empty() && failed_hypotheses.iter().all(|h| h.contains(&cd)),
                || format!("hypotheses {failed_hypotheses:?}"),
            )?;
            Ok(format!(
                "{} failed hypotheses reported",
                failed_hypotheses.len()
            ))
        }
        BoundOutcome::Bound(r) => Err(format!("emitted bound {}", r.bound)),
    }
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 wedges of spheres", wedges_of_spheres),
        ("2 products of spheres", products_of_spheres),
        ("3 wedges with circles", wedges_with_circles),
        ("4 series lengths agree", series_agree),
        ("5 abelian bridge", abelian_bridge),
        ("6 retracts shrink", retracts_shrink),
        ("7 homology properties", homology_properties),
        ("8 inapplicability", inapplicability),
    ];
    let mut failed = Vec::new();
    for (name, check) in criteria {
        if !report(name, check()) {
            failed.push(name);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
