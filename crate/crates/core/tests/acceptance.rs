//! Acceptance suite: one line per criterion, nonzero exit if any fails.

mod common;

use std::time::{Duration, Instant};

use kgonal::chain::plf::{pl_divisor, principal_witness};
use kgonal::chain::{
    canonical_divisor, is_equivalent, k_gonal_chain, normal_form, ChainOfCycles,
};
use kgonal::genus5::genus5_report;
use kgonal::numerics::{rho, rho_bar};
use kgonal::rational::q;
use kgonal::scrollar::{component_dimension_check, independence_slopes, is_scrollar, scrollar_for, ScrollarType};
use kgonal::tableaux::{
    contains, dim_wrd, is_displacement_tableau, is_vertex_avoiding, normal_coords, random_construction_coords,
    random_tableau, rank, special_representatives, torus_dimension, Shape, TorusComponent,
};
use kgonal::tropmap::{
    assign_well_spaced_lengths, build_generic_map, check_assumptions, cycle_span, naive_well_spacedness,
    TropicalMapSkeleton,
};
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn hyperelliptic_collapse() -> Outcome {
    let mut n = 0;
    for g in 2..=20i64 {
        for r in 1..g {
            for d in r..g {
                let v = rho_bar(g, r, d, 2).map_err(|e| e.to_string())?.value;
                ensure(v == d - 2 * r, || format!("g={g} r={r} d={d}: ρ̄_2 = {v}, want {}", d - 2 * r))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} triples"))
}

fn brill_noether_recovery() -> Outcome {
    let mut n = 0;
    for g in 1..=12i64 {
        let k = (g + 3) / 2;
        for r in 0..=g {
            for d in r..=2 * g - 2 {
                let Ok(p) = rho(g, r, d) else { continue };
                if p < 0 {
                    continue;
                }
                let v = rho_bar(g, r, d, k).map_err(|e| e.to_string())?.value;
                ensure(v == p, || format!("g={g} k={k} r={r} d={d}: ρ̄ = {v}, ρ = {p}"))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} triples"))
}

fn genus5_example() -> Outcome {
    let r = genus5_report().map_err(|e| e.to_string())?;
    let table: Vec<(i64, i64)> = r.ranks.iter().map(|row| (row.degree, row.rank)).collect();
    ensure(table == [(8, 4), (5, 2), (2, 0), (-1, -1)], || format!("(degree, rank) = {table:?}"))?;
    ensure(r.ranks[..3].iter().all(|row| row.in_torus == Some(true)), || "a translate is outside its torus".into())?;
    ensure(r.pencil_slopes == [2, 3, 3, 2], || format!("ψ_0 slopes {:?}", r.pencil_slopes))?;
    Ok("ranks 4,2,0,-1; memberships; slopes (2,3,3,2)".into())
}

fn remainder() -> Outcome {
    let mut rng = common::rng(4);
    let mut checked = 0;
    let mut attempts = 0;
    while checked < 200 {
        attempts += 1;
        if attempts > 20_000 {
            return Err(format!("only {checked} shapes generated"));
        }
        let k = rng.gen_range(3..=7usize);
        let n = rng.gen_range(1..k);
        let cols = rng.gen_range(n..=3 * n);
        let rows = rng.gen_range(k - n..=k + 3);
        let g = rng.gen_range(k..=40);
        let ty = ScrollarType::for_columns(n, k, cols).map_err(|e| e.to_string())?;
        let Some(t) = common::embedded_scrollar(ty, cols, rows, g) else { continue };
        let profile = kgonal::chain::k_gonal_profile(g, k as u32);
        ensure(is_scrollar(&t, ty) && is_displacement_tableau(&t, &profile), || format!("bad filling {t:?}"))?;
        let c = component_dimension_check(&t, ty, g).map_err(|e| e.to_string())?;
        let dim = torus_dimension(&t, g) as i64;
        let formula = rho(g as i64, c.r - c.ell, c.d).map_err(|e| e.to_string())? - c.ell * k as i64;
        ensure(dim == formula && c.agrees, || {
            format!("type {ty:?} {cols}x{rows} g={g}: dim {dim}, formula {formula}")
        })?;
        checked += 1;
    }
    Ok(format!("{checked} shapes"))
}

fn pflueger_bound() -> Outcome {
    let (mut tuples, mut equalities) = (0, 0);
    for g in 2..=8usize {
        for k in 2..=4u32 {
            let Ok(chain) = k_gonal_chain(g, k) else { continue };
            if chain.k != Some(k) {
                continue;
            }
            let gi = g as i64;
            for d in 0..=2 * gi - 2 {
                for r in 0..=d {
                    let s = gi - d + r;
                    if !(1..=gi).contains(&s) {
                        continue;
                    }
                    let bound = rho_bar(gi, r, d, k as i64).map_err(|e| e.to_string())?.value;
                    let dim = dim_wrd(&chain, r, d, Some(5_000_000)).map_err(|e| e.to_string())?;
                    ensure(dim.exhaustive, || format!("g={g} k={k} r={r} d={d}: search budget exhausted"))?;
                    ensure(dim.value == -1 || dim.value <= bound, || {
                        format!("g={g} k={k} r={r} d={d}: dim {} > ρ̄ {bound}", dim.value)
                    })?;
                    if scrollar_for(g, r as usize, d as usize, k as usize).map_err(|e| e.to_string())?.is_some() {
                        ensure(dim.value == bound, || {
                            format!("g={g} k={k} r={r} d={d}: dim {} but a scrollar shape gives {bound}", dim.value)
                        })?;
                        equalities += 1;
                    }
                    tuples += 1;
                }
            }
        }
    }
    Ok(format!("{tuples} tuples, equality checked on {equalities}"))
}

fn representatives_suite() -> Outcome {
    let mut rng = common::rng(6);
    let (mut done, mut avoiding, mut attempts) = (0, 0, 0);
    while done < 500 {
        attempts += 1;
        if attempts > 50_000 {
            return Err(format!("only {done} instances generated"));
        }
        let g = rng.gen_range(2..=10);
        let chain = common::random_chain(g, &mut rng);
        let profile = chain.profile();
        let cols = rng.gen_range(1..=3usize);
        let rows = rng.gen_range(1..=(g / cols).clamp(1, 4));
        let Some(t) = random_tableau(Shape::new(&profile, cols, rows), &mut rng) else { continue };
        let cons = random_construction_coords(&chain, &t, &mut rng).map_err(|e| e.to_string())?;
        let d = g as i64 + cols as i64 - 1 - rows as i64;
        let div = normal_coords(&chain, &t, d, &cons).map_err(|e| e.to_string())?;
        let torus = TorusComponent::new(&chain, &t).map_err(|e| e.to_string())?;
        let reps = special_representatives(&chain, &t, &cons).map_err(|e| e.to_string())?;
        for (i, rep) in reps.iter().enumerate() {
            ensure(is_equivalent(&chain, rep, &div.to_chips()).map_err(|e| e.to_string())?, || {
                format!("g={g} t={t:?}: D_{i} not equivalent to D")
            })?;
            let nf = normal_form(&chain, rep).map_err(|e| e.to_string())?;
            ensure(contains(&torus, &nf), || format!("g={g} t={t:?}: D_{i} outside T(t)"))?;
        }
        if is_vertex_avoiding(&chain, &t, &cons).map_err(|e| e.to_string())? {
            let rk = rank(&chain, &div);
            ensure(rk == cols as i64 - 1, || format!("g={g} t={t:?}: rank {rk}, want {}", cols - 1))?;
            avoiding += 1;
        }
        done += 1;
    }
    Ok(format!("{done} instances, {avoiding} vertex-avoiding"))
}

fn riemann_roch() -> Outcome {
    let mut rng = common::rng(7);
    for _ in 0..200 {
        let g = rng.gen_range(1..=6usize);
        let chain = common::random_chain(g, &mut rng);
        let d = rng.gen_range(-2 * g as i64..=2 * g as i64);
        let chips = common::random_chips(&chain, d, &mut rng);
        let div = normal_form(&chain, &chips).map_err(|e| e.to_string())?;
        let kd = normal_form(&chain, &canonical_divisor(&chain))
            .and_then(|k| k.minus(&chain, &chips))
            .map_err(|e| e.to_string())?;
        let (a, b) = (rank(&chain, &div), rank(&chain, &kd));
        ensure(a - b == d - g as i64 + 1, || format!("g={g} d={d}: r(D)={a}, r(K-D)={b}"))?;
    }
    Ok("200 divisors".into())
}

fn independence() -> Outcome {
    let mut rng = common::rng(8);
    let (mut done, mut attempts) = (0, 0);
    while done < 100 {
        attempts += 1;
        if attempts > 20_000 {
            return Err(format!("only {done} inputs generated"));
        }
        let k = rng.gen_range(3..=7usize);
        let n = rng.gen_range(2..k);
        let cols = rng.gen_range(n..=3 * n);
        let rows = rng.gen_range(k - n..=k + 2);
        let g = rng.gen_range(k..=40);
        let ty = ScrollarType::for_columns(n, k, cols).map_err(|e| e.to_string())?;
        let Some(t) = common::embedded_scrollar(ty, cols, rows, g) else { continue };
        let s = independence_slopes(&t, ty, g).map_err(|e| e.to_string())?;
        ensure(s.distinct, || format!("type {ty:?} {cols}x{rows} g={g}: slopes {:?}", s.values))?;
        done += 1;
    }
    Ok(format!("{done} inputs"))
}

fn tuned_and_flipped(map: &TropicalMapSkeleton, label: &str) -> Result<usize, String> {
    let a = check_assumptions(map).map_err(|e| e.to_string())?;
    ensure(a.passed, || format!("{label}: assumptions fail: {:?}", a.violations))?;
    let (tuned, report) = assign_well_spaced_lengths(map, q(1000)).map_err(|e| e.to_string())?;
    ensure(report.report.naively_well_spaced, || format!("{label}: tuned map not well-spaced"))?;
    let a = check_assumptions(&tuned).map_err(|e| e.to_string())?;
    ensure(a.passed, || format!("{label}: tuned assumptions fail: {:?}", a.violations))?;
    let first = report.tuned.first().ok_or_else(|| format!("{label}: no tie was tuned"))?;
    let mut bumped = tuned.clone();
    bumped.set_length(first.edge, first.len + q(1)).map_err(|e| e.to_string())?;
    bumped.integrate_positions().map_err(|e| e.to_string())?;
    let after = naive_well_spacedness(&bumped).map_err(|e| e.to_string())?;
    ensure(!after.naively_well_spaced, || format!("{label}: perturbing edge {} kept the verdict", first.edge))?;
    Ok(report.tuned.len())
}

fn certificates() -> Outcome {
    let mut rng = common::rng(9);
    let mut generic = 0;
    while generic < 20 {
        let g = rng.gen_range(3..=8usize);
        let chain = ChainOfCycles::from_profile(&vec![0; g]).map_err(|e| e.to_string())?;
        let cols = rng.gen_range(2..=3usize);
        let rows = rng.gen_range(1..=(g / cols).max(1));
        let Some(t) = random_tableau(Shape::new(&chain.profile(), cols, rows), &mut rng) else { continue };
        let cons = random_construction_coords(&chain, &t, &mut rng).map_err(|e| e.to_string())?;
        if !is_vertex_avoiding(&chain, &t, &cons).map_err(|e| e.to_string())? {
            continue;
        }
        let map = build_generic_map(&chain, &t, &cons).map_err(|e| e.to_string())?;
        let a = check_assumptions(&map).map_err(|e| e.to_string())?;
        ensure(!a.superabundant, || format!("generic map for {t:?} is superabundant"))?;
        for i in 1..=g {
            let dim = cycle_span(&map, i).map_err(|e| e.to_string())?.dim;
            ensure(dim == cols - 1, || format!("generic map for {t:?}: cycle {i} spans {dim}"))?;
        }
        generic += 1;
    }
    let g5 = genus5_report().map_err(|e| e.to_string())?;
    ensure(g5.cycle_dims == [1, 2, 2, 2, 1], || format!("genus-5 spans {:?}", g5.cycle_dims))?;
    let base = kgonal::genus5::genus5_scroll_map().map_err(|e| e.to_string())?;
    let n5 = tuned_and_flipped(&base, "genus 5")?;
    let n25 = tuned_and_flipped(&common::genus25_scroll_map(25), "(1,2,5,25)")?;
    Ok(format!("{generic} generic maps; genus 5 tuned {n5} edges; (1,2,5,25) tuned {n25} edges"))
}

fn transport_oracle() -> Outcome {
    let mut rng = common::rng(10);
    for case in 0..1000 {
        let g = rng.gen_range(1..=8usize);
        let chain = if rng.gen_bool(0.3) && g >= 4 {
            k_gonal_chain(g, rng.gen_range(2..=((g as u32 + 3) / 2).max(2))).map_err(|e| e.to_string())?
        } else {
            common::random_chain(g, &mut rng)
        };
        // Normal-form coordinates grow with degree and genus; generic cycles must be long enough to hold them.
        let chain = chain.realized_for(q(6 * g as i128 + 10));
        let d = rng.gen_range(-3..=2 * g as i64);
        let chips = common::random_chips(&chain, d, &mut rng);
        let nf = normal_form(&chain, &chips).map_err(|e| e.to_string())?;
        let again = normal_form(&chain, &nf.to_chips()).map_err(|e| e.to_string())?;
        ensure(again == nf, || format!("case {case}: normal form is not idempotent"))?;
        let delta = chips.clone() - nf.to_chips();
        let f = principal_witness(&chain, &delta).map_err(|e| format!("case {case}: {e}"))?;
        let div = pl_divisor(&chain, &f).map_err(|e| format!("case {case}: {e}"))?;
        let (lhs, rhs) = (
            div.simplified(&chain).map_err(|e| e.to_string())?,
            delta.simplified(&chain).map_err(|e| e.to_string())?,
        );
        ensure(lhs == rhs, || format!("case {case}: div f = {lhs:?}, want {rhs:?}"))?;
    }
    Ok("1000 cases".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("1 hyperelliptic collapse", hyperelliptic_collapse, Duration::from_secs(1)),
        ("2 Brill-Noether recovery", brill_noether_recovery, Duration::from_secs(1)),
        ("3 genus-5 example", genus5_example, Duration::from_secs(10)),
        ("4 remainder dimension", remainder, Duration::from_secs(10)),
        ("5 upper bound and attainment", pflueger_bound, Duration::from_secs(600)),
        ("6 special representatives", representatives_suite, Duration::from_secs(60)),
        ("7 Riemann-Roch", riemann_roch, Duration::from_secs(60)),
        ("8 independent slopes", independence, Duration::from_secs(5)),
        ("9 certificates", certificates, Duration::from_secs(10)),
        ("10 transport oracle", transport_oracle, Duration::from_secs(60)),
    ];
    let mut failed = 0;
    for (name, f, budget) in criteria {
        let start = Instant::now();
        let outcome = f();
        let took = start.elapsed();
        match outcome {
            Ok(detail) if took <= budget => println!("PASS  {name}: {detail} ({took:.2?})"),
            Ok(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail}, but took {took:.2?} (budget {budget:?})");
            }
            Err(msg) => {
                failed += 1;
                println!("FAIL  {name}: {msg} ({took:.2?})");
            }
        }
    }
    if failed > 0 {
        println!("{failed} of 10 criteria failed");
        std::process::exit(1);
    }
    println!("all 10 criteria passed");
}
