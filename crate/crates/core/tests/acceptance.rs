//! Acceptance criteria. Runs as a plain binary and prints one PASS/FAIL line
//! per criterion; exits non-zero if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use knotbeck::alexander::{
    alexander_polynomial, burau, burau_generator, extended_module, knot_determinant, presentation_matrix,
};
use knotbeck::beck::{
    check_module, constant_module, derivation_spectrum, derivations, extension, operation_table, QuandleModule,
};
use knotbeck::diagram::{braid_closure, catalog_get, BraidWord, Diagram};
use knotbeck::linalg::{FiniteAbGroup, IntMatrix, LaurentMatrix};
use knotbeck::quandle::{alexander_quandle, check_axioms, colorings, dihedral, trivial, FiniteQuandle};
use knotbeck::rings::LaurentPoly;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cat(name: &str) -> Result<Diagram, String> {
    catalog_get(name).map_err(|e| e.to_string())
}

fn units(n: u64) -> Vec<i64> {
    (1..n as i64).filter(|t| t.gcd(&(n as i64)) == 1).collect()
}

/// Constant modules of order 2..=7 over dihedral(3), dihedral(5) and
/// alexander_quandle(5, 2), every unit `t`.
fn battery() -> Vec<(String, FiniteQuandle, QuandleModule)> {
    let bases = [
        ("dihedral:3", dihedral(3).unwrap()),
        ("dihedral:5", dihedral(5).unwrap()),
        ("alexander:5:2", alexander_quandle(5, 2).unwrap()),
    ];
    let mut out = Vec::new();
    for (name, q) in bases {
        for n in 2..=7u64 {
            for t in units(n) {
                let m = constant_module(&q, n, t).unwrap();
                out.push((format!("{name} constant:{n}:{t}"), q.clone(), m));
            }
        }
    }
    out
}

fn paper_trefoil_matrix() -> Vec<Vec<LaurentPoly>> {
    [["1 - A", "-1", "A"], ["A", "1 - A", "-1"], ["-1", "A", "1 - A"]]
        .iter()
        .map(|r| r.iter().map(|s| lp(s)).collect())
        .collect()
}

fn c1() -> Outcome {
    let m = presentation_matrix(&cat("trefoil")?);
    ensure(equal_up_to_permutation(&m.to_rows(), &paper_trefoil_matrix()), || {
        format!("matrix {m:?} is not a permutation of the expected one")
    })?;
    Ok("3x3 matrix matches up to row/column permutation".into())
}

fn c2() -> Outcome {
    let e = extended_module(&cat("trefoil")?);
    let torsion: Vec<String> = e.torsion().iter().map(|f| f.to_string()).collect();
    ensure(torsion == ["1 - A + A^2"], || format!("torsion factors {torsion:?}"))?;
    ensure(e.free_rank == 1, || format!("free rank {}", e.free_rank))?;
    Ok("torsion 1 - A + A^2, free rank 1".into())
}

fn c3() -> Outcome {
    for name in ["unknot", "unknot_r1", "unknot_r2"] {
        let d = cat(name)?;
        let e = extended_module(&d);
        ensure(e.torsion().is_empty(), || format!("{name}: torsion {:?}", e.torsion()))?;
        ensure(e.free_rank == 1, || format!("{name}: free rank {}", e.free_rank))?;
        let delta = alexander_polynomial(&d).map_err(|e| e.to_string())?;
        ensure(delta.is_one(), || format!("{name}: Δ = {delta}"))?;
    }
    Ok("unknot, unknot_r1, unknot_r2: no torsion, free rank 1, Δ = 1".into())
}

fn c4() -> Outcome {
    for name in ["conway", "kinoshita_terasaka"] {
        let d = cat(name)?;
        ensure(d.crossings().len() == 11, || format!("{name}: {} crossings", d.crossings().len()))?;
        let delta = alexander_polynomial(&d).map_err(|e| e.to_string())?;
        ensure(delta.is_one(), || format!("{name}: Δ = {delta}"))?;
        let det = knot_determinant(&d).map_err(|e| e.to_string())?;
        ensure(det == 1, || format!("{name}: determinant {det}"))?;
        let e = extended_module(&d);
        ensure(e.free_rank == 1, || format!("{name}: free rank {}", e.free_rank))?;
        ensure(e.torsion().is_empty(), || format!("{name}: torsion {:?}", e.torsion()))?;
    }
    Ok("conway, kinoshita_terasaka: Δ = 1, determinant 1, free rank 1".into())
}

fn c5() -> Outcome {
    let d = cat("figure_eight")?;
    let fox = fox_alexander(&d);
    let delta = alexander_polynomial(&d).map_err(|e| e.to_string())?;
    ensure(fox == lp("1 - 3*A + A^2"), || format!("Fox oracle gives {fox}"))?;
    ensure(delta == fox, || format!("Δ = {delta}, Fox oracle {fox}"))?;
    let det = knot_determinant(&d).map_err(|e| e.to_string())?;
    ensure(det == 5, || format!("determinant {det}"))?;
    Ok(format!("Δ = {delta} (Fox oracle agrees), determinant 5"))
}

fn c6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6eb1);
    let bases = [
        dihedral(1).unwrap(),
        dihedral(3).unwrap(),
        dihedral(4).unwrap(),
        dihedral(5).unwrap(),
        alexander_quandle(5, 2).unwrap(),
        alexander_quandle(7, 3).unwrap(),
        trivial(2).unwrap(),
    ];
    let random_constant = |rng: &mut ChaCha8Rng| {
        let q = &bases[rng.gen_range(0..bases.len())];
        let n = rng.gen_range(2..=12u64);
        let us = units(n);
        let t = us[rng.gen_range(0..us.len())];
        constant_module(q, n, t).unwrap()
    };

    let mut good = 0;
    while good < 120 {
        let m = random_constant(&mut rng);
        let r = check_module(&m);
        ensure(r.passes, || format!("constant module rejected: {:?}", r.violations))?;
        let e = extension(&m).map_err(|e| e.to_string())?;
        let a = check_axioms(e.table()).map_err(|e| e.to_string())?;
        ensure(a.is_quandle, || "extension is not a quandle".to_string())?;
        good += 1;
    }

    // Corruptions: a non-invertible α, a shifted ε(x,x), or a random
    // change of one matrix entry. The last kind can accidentally produce a
    // valid module, so every candidate is classified by checking the
    // extension table directly.
    let mut corrupted = 0;
    let mut benign = 0;
    let mut attempts = 0;
    while corrupted < 120 {
        attempts += 1;
        ensure(attempts < 2000, || "too few effective corruptions".to_string())?;
        let m = random_constant(&mut rng);
        let k = m.base().order();
        let n = m.group(0).invariant_factors[0] as i64;
        let (x, y) = (rng.gen_range(0..k), rng.gen_range(0..k));
        let bad = match rng.gen_range(0..3) {
            0 => {
                let zero_divisors: Vec<i64> = (0..n).filter(|s| s.gcd(&n) != 1).collect();
                let s = zero_divisors[rng.gen_range(0..zero_divisors.len())];
                m.with_alpha(x, y, IntMatrix::scalar(1, s))
            }
            1 => {
                let shift = rng.gen_range(1..n);
                let e = &m.eps(x, x)[(0, 0)] + shift;
                m.with_eps(x, x, IntMatrix::scalar(1, e))
            }
            _ => {
                let delta = rng.gen_range(1..n);
                if rng.gen_bool(0.5) {
                    let e = &m.eps(x, y)[(0, 0)] + delta;
                    m.with_eps(x, y, IntMatrix::scalar(1, e))
                } else {
                    let a = &m.alpha(x, y)[(0, 0)] + delta;
                    m.with_alpha(x, y, IntMatrix::scalar(1, a))
                }
            }
        }
        .map_err(|e| e.to_string())?;
        let oracle = check_axioms(&operation_table(&bad)).map_err(|e| e.to_string())?;
        let report = check_module(&bad);
        ensure(report.passes == oracle.is_quandle, || {
            format!("checker says {}, extension table says {}", report.passes, oracle.is_quandle)
        })?;
        if oracle.is_quandle {
            benign += 1;
            continue;
        }
        ensure(!report.violations.is_empty(), || "failure without a witness".to_string())?;
        ensure(extension(&bad).is_err(), || "extension accepted a broken module".to_string())?;
        corrupted += 1;
    }
    Ok(format!(
        "{good} constant modules pass with quandle extensions; {corrupted} corrupted modules fail with witnesses ({benign} perturbations were still modules)"
    ))
}

fn c7() -> Outcome {
    let mut checks = 0;
    for name in ["unknot", "unknot_r1", "unknot_r2"] {
        let d = cat(name)?;
        for (label, q, m) in battery() {
            for c in colorings(&d, &q).map_err(|e| e.to_string())? {
                let g = derivations(&d, &c, &m).map_err(|e| e.to_string())?;
                let expected = m.group(c.color(0));
                ensure(&g.group == expected, || {
                    format!("{name}, {label}, coloring {:?}: got {}, expected {expected}", c.0, g.group)
                })?;
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} (diagram, module, coloring) cases give M(c(a0))"))
}

fn c8() -> Outcome {
    let unknots: Vec<Diagram> = ["unknot", "unknot_r1", "unknot_r2"]
        .iter()
        .map(|n| cat(n))
        .collect::<Result<_, _>>()?;
    let trefoils = [
        ("trefoil", cat("trefoil")?),
        ("s1^3", braid_closure(&BraidWord::parse("s1^3", None).unwrap()).map_err(|e| e.to_string())?),
        ("s1^-3", braid_closure(&BraidWord::parse("s1^-3", None).unwrap()).map_err(|e| e.to_string())?),
    ];
    let mut compared = 0;
    for (label, q, m) in battery() {
        let spec = |d: &Diagram| derivation_spectrum(d, &q, &m).map_err(|e| e.to_string());
        let reference = spec(&unknots[0])?;
        for d in &unknots[1..] {
            ensure(spec(d)? == reference, || format!("unknot spectra differ for {label}"))?;
        }
        let reference = spec(&trefoils[0].1)?;
        for (name, d) in &trefoils[1..] {
            let s = spec(d)?;
            ensure(s == reference, || format!("{name} differs from trefoil for {label}: {s:?} vs {reference:?}"))?;
        }
        compared += 1;
    }
    Ok(format!("spectra agree for all {compared} modules"))
}

fn c9() -> Outcome {
    let names = ["unknot", "unknot_r1", "unknot_r2", "trefoil", "figure_eight"];
    let mut targets: Vec<FiniteQuandle> = (1..=9).map(|n| dihedral(n).unwrap()).collect();
    for (n, t) in [(5, 2), (5, 3), (7, 2), (7, 3), (8, 3), (9, 2), (13, 4)] {
        targets.push(alexander_quandle(n, t).unwrap());
    }
    targets.push(trivial(3).unwrap());
    let mut modules: Vec<(FiniteQuandle, QuandleModule)> =
        battery().into_iter().map(|(_, q, m)| (q, m)).collect();
    for q in [dihedral(4).unwrap(), trivial(2).unwrap()] {
        modules.push((q.clone(), constant_module(&q, 6, 5).unwrap()));
    }
    let mixed = mixed_trivial_module();
    modules.push((mixed.base().clone(), mixed));

    let (mut color_cases, mut der_cases) = (0, 0);
    for name in names {
        let d = cat(name)?;
        ensure(d.crossings().len() <= 4, || format!("{name} has too many crossings"))?;
        for q in &targets {
            if (q.order() as u64).pow(d.num_arcs() as u32) > 1_000_000 {
                continue;
            }
            let fast: Vec<Vec<usize>> = colorings(&d, q)
                .map_err(|e| e.to_string())?
                .into_iter()
                .map(|c| c.0)
                .collect();
            let slow = brute_colorings(&d, q);
            ensure(fast == slow, || format!("{name}: colorings by {q:?} differ from brute force"))?;
            color_cases += 1;
        }
        for (q, m) in &modules {
            for c in colorings(&d, q).map_err(|e| e.to_string())? {
                if section_space(&c.0, m) > 1_000_000 {
                    continue;
                }
                let g = derivations(&d, &c, m).map_err(|e| e.to_string())?;
                let sections = brute_derivations(&d, &c.0, m);
                ensure(group_matches(&g.group, &sections, &c.0, m), || {
                    format!("{name}, coloring {:?}: {} vs {} brute-force sections", c.0, g.group, sections.len())
                })?;
                der_cases += 1;
            }
        }
    }
    Ok(format!("{color_cases} coloring sets and {der_cases} derivation groups match brute force"))
}

fn c10() -> Outcome {
    let w = |n: usize, letters: &[i64]| BraidWord::new(n, letters.to_vec()).unwrap();
    let mut identities = 0;
    for n in 2..=5usize {
        let k = n as i64 - 1;
        for i in 1..=k {
            for s in [1i64, -1] {
                if i < k {
                    let (a, b) = (s * i, s * (i + 1));
                    ensure(burau(&w(n, &[a, b, a])) == burau(&w(n, &[b, a, b])), || {
                        format!("braid relation fails for n = {n}, i = {i}, sign {s}")
                    })?;
                    identities += 1;
                }
                for j in i + 2..=k {
                    for t in [1i64, -1] {
                        let (a, b) = (s * i, t * j);
                        ensure(burau(&w(n, &[a, b])) == burau(&w(n, &[b, a])), || {
                            format!("far commutation fails for n = {n}, {a}, {b}")
                        })?;
                        identities += 1;
                    }
                }
                let g = burau_generator(n, s * i);
                let inv = burau_generator(n, -s * i);
                ensure(g.checked_mul(&inv).unwrap() == LaurentMatrix::identity(n), || {
                    format!("inverse letter fails for n = {n}, {}", s * i)
                })?;
                let det = g.determinant().unwrap();
                ensure(det.is_unit(), || format!("det of letter {} is {det}", s * i))?;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..50 {
        let n = rng.gen_range(2..=5usize);
        let len = rng.gen_range(0..12);
        let letters: Vec<i64> = (0..len)
            .map(|_| {
                let i = rng.gen_range(1..n as i64);
                if rng.gen_bool(0.5) {
                    i
                } else {
                    -i
                }
            })
            .collect();
        let det = burau(&w(n, &letters)).determinant().unwrap();
        ensure(det.is_unit(), || format!("det of {letters:?} is {det}"))?;
    }
    Ok(format!("{identities} relations hold exactly; all determinants are units"))
}

fn main() -> ExitCode {
    type Criterion = (u32, &'static str, u64, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        (1, "trefoil presentation matrix", 1, c1),
        (2, "trefoil extended module", 1, c2),
        (3, "unknot diagrams", 1, c3),
        (4, "Conway and Kinoshita-Terasaka", 60, c4),
        (5, "figure-eight against Fox calculus", 1, c5),
        (6, "Beck module axiom suite", 30, c6),
        (7, "unknot derivations are evaluation", 10, c7),
        (8, "derivation spectra are diagram independent", 30, c8),
        (9, "colorings and derivations against brute force", 60, c9),
        (10, "Burau braid relations", 1, c10),
    ];
    let mut failed = 0;
    for (n, name, limit, f) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let result = match result {
            Ok(detail) if elapsed > Duration::from_secs(limit) => {
                Err(format!("{detail}; but took {elapsed:.2?}, limit {limit} s"))
            }
            r => r,
        };
        match result {
            Ok(detail) => println!("PASS criterion {n:>2} {name} [{elapsed:.2?} < {limit} s]: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {n:>2} {name} [{elapsed:.2?}, limit {limit} s]: {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}

#[allow(dead_code)]
fn _types(_: FiniteAbGroup) {}
