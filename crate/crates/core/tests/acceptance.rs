//! Acceptance suite: one PASS/FAIL line per criterion, exact comparisons,
//! wall-clock limits pinned below.

use std::time::{Duration, Instant};

use chernkit::chern_calc::{
    drop_c1, reduce_hom, reduced_chern_formula, reduced_chern_roots, sym_power_det_inverse_chern,
    twist, ChernVector,
};
use chernkit::cli::{table_json, verify, Suite};
use chernkit::exact_poly::{binomial, int, rat, Exps, MPoly, Rational, VarTable};
use chernkit::oracle::{check_identity, standard_rings, IdentityKit, IdentityTag, Instance};
use chernkit::symfun::monomial_coefficients;
use chernkit::universal::{s_in_roots, solve_psi, y_roots, UniversalPolys};
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const LIMIT_FORMULA: Duration = Duration::from_secs(30);
const LIMIT_LOW_DEGREE: Duration = Duration::from_secs(1);
const LIMIT_CHARACTERIZATION: Duration = Duration::from_secs(60);
const LIMIT_PIPELINE: Duration = Duration::from_secs(60);
const LIMIT_PIPELINE_RANK5: Duration = Duration::from_secs(600);
const LIMIT_ROUND_TRIP: Duration = Duration::from_secs(120);
const LIMIT_TOY_RINGS: Duration = Duration::from_secs(120);

const RANDOM_SHIFTS: usize = 50;
const TOY_INSTANCES: u64 = 20;

const GOLDEN_TABLE: &str = include_str!("golden/table_max_rank_4.json");

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: chernkit::Error) -> String {
    e.to_string()
}

fn formula_agreement() -> Check {
    for n in 2..=6 {
        for r in 1..=n {
            let closed = reduced_chern_formula(n, r).map_err(err)?;
            let roots = reduced_chern_roots(n, r).map_err(err)?;
            ensure(closed == roots, || {
                format!("n={n} r={r}: closed form differs from σ_r(f)")
            })?;
        }
    }
    Ok(())
}

fn low_degree_values() -> Check {
    for n in 2..=6usize {
        let c = ChernVector::free(n);
        ensure(reduced_chern_formula(n, 1).map_err(err)?.is_zero(), || {
            format!("n={n}: c̄_1 ≠ 0")
        })?;
        let correction = rat(n as i64 - 1, 2 * n as i64);
        let expected = &c.class(2) - &c.class(1).pow(2).scale(&correction);
        ensure(
            reduced_chern_formula(n, 2).map_err(err)? == expected,
            || format!("n={n}: c̄_2 mismatch"),
        )?;
    }
    Ok(())
}

/// Every exponent vector over `c1..cn` of weighted degree `d`.
fn chern_monomials(n: usize, d: u32) -> Vec<Exps> {
    fn go(n: usize, i: usize, rest: u32, prefix: &mut Vec<u32>, out: &mut Vec<Exps>) {
        if i == n {
            if rest == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        let w = i as u32 + 1;
        for k in 0..=rest / w {
            prefix.push(k);
            go(n, i + 1, rest - k * w, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, 0, d, &mut Vec::new(), &mut out);
    out
}

fn characterization() -> Check {
    // (a) c_1 = 0 specialization, all n ≤ 6
    for n in 2..=6 {
        let c = ChernVector::free(n);
        for r in 1..=n {
            let expected = if r == 1 {
                MPoly::zero(c.vars())
            } else {
                c.class(r)
            };
            let got = drop_c1(&reduced_chern_formula(n, r).map_err(err)?);
            ensure(got == expected, || format!("(a) n={n} r={r}"))?;
        }
    }
    // (b) substituting the classes of E ⊗ L gives a t-free result equal to c̄_r
    for n in 2..=4 {
        let moved = twist(&ChernVector::free(n), "t").map_err(err)?;
        let target = moved.vars().clone();
        for r in 1..=n {
            let f = reduced_chern_formula(n, r).map_err(err)?;
            let lhs = f.substitute(moved.classes(), &target).map_err(err)?;
            ensure(lhs.terms().all(|(e, _)| e[n] == 0), || {
                format!("(b) n={n} r={r}: depends on t")
            })?;
            ensure(lhs == f.embed(&target).map_err(err)?, || {
                format!("(b) n={n} r={r}")
            })?;
        }
    }
    // (c) c̄_j is the image of every c_j + s·c_1
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for n in 2..=4 {
        let c = ChernVector::free(n);
        for j in 1..=n {
            let target = reduced_chern_formula(n, j).map_err(err)?;
            let basis = chern_monomials(n, j as u32 - 1);
            for trial in 0..RANDOM_SHIFTS {
                let s = MPoly::from_terms(
                    c.vars(),
                    basis
                        .iter()
                        .map(|e| (e.clone(), rat(rng.gen_range(-9..=9), rng.gen_range(1..=5)))),
                )
                .map_err(err)?;
                let q = &c.class(j) + &(&s * &c.class(1));
                ensure(reduce_hom(&q).map_err(err)? == target, || {
                    format!("(c) n={n} j={j} trial {trial}")
                })?;
            }
        }
    }
    Ok(())
}

fn pipeline(ranks: std::ops::RangeInclusive<usize>) -> Check {
    let expected_counts = [(2, 3), (3, 10), (4, 35), (5, 126), (6, 462)];
    for n in ranks {
        let count = y_roots(n).map_err(err)?.len();
        let want = expected_counts.iter().find(|(k, _)| *k == n).unwrap().1;
        ensure(count == want, || {
            format!("n={n}: {count} roots, want {want}")
        })?;

        for (k, s) in s_in_roots(n, n, n).map_err(err)?.iter().enumerate() {
            let m = monomial_coefficients(s).map_err(err)?;
            ensure(m.is_nonnegative(), || {
                format!("n={n}: s_{} has a negative m-coefficient", k + 1)
            })?;
        }

        let sol = solve_psi(n).map_err(err)?;
        ensure(sol.rows.iter().all(|r| r.lead.is_positive()), || {
            format!("n={n}: non-positive lead")
        })?;
        let lead_1 = Rational::from(binomial(2 * n as u64 - 1, n as u64));
        ensure(sol.rows[0].lead == lead_1, || {
            format!("n={n}: lead_1 = {}", sol.rows[0].lead)
        })?;
        for (k, s) in sol.s_elementary.iter().enumerate() {
            for (e, _) in s.terms() {
                ensure(e[k + 1..].iter().all(|&x| x == 0), || {
                    format!("n={n}: s_{} not triangular", k + 1)
                })?;
            }
        }

        let e = VarTable::elementary(n);
        for (k, psi) in sol.psi.iter().enumerate() {
            let back = psi.substitute(&sol.s_elementary, &e).map_err(err)?;
            ensure(back == MPoly::var(&e, k), || {
                format!("n={n}: ψ_{} round trip", k + 1)
            })?;
        }
    }
    Ok(())
}

fn pipeline_small() -> Check {
    pipeline(2..=4)
}

fn pipeline_rank5() -> Check {
    pipeline(5..=5)
}

fn phi_round_trip() -> Check {
    for n in 2..=5 {
        let cf = sym_power_det_inverse_chern(n, n).map_err(err)?;
        ensure(cf[0].is_zero(), || format!("n={n}: c_1(F) ≠ 0"))?;
        if n > 4 {
            continue;
        }
        let u = UniversalPolys::compute(n).map_err(err)?;
        let one = MPoly::one(&VarTable::chern(n));
        let lhs = u.brauer_reduced(&cf[1..], &one).map_err(err)?;
        for (k, l) in lhs.iter().enumerate() {
            let i = k + 2;
            ensure(*l == reduced_chern_formula(n, i).map_err(err)?, || {
                format!("n={n}: φ_{i} round trip")
            })?;
        }
    }

    // rank two by hand: roots of F are ±(x1 − x2) and 0, so c_2(F) = −(x1 − x2)² = 4c_2 − c_1²
    let c = ChernVector::free(2);
    let cf = sym_power_det_inverse_chern(2, 2).map_err(err)?;
    let want = &c.class(2).scale(&int(4)) - &c.class(1).pow(2);
    ensure(cf[1] == want, || "c_2(F) at n=2".to_string())?;
    let u = VarTable::u_vars(2);
    let phi2 = UniversalPolys::compute(2).map_err(err)?.phi[0].clone();
    ensure(phi2 == MPoly::var(&u, 0).scale(&rat(1, 4)), || {
        "φ_2 at n=2".to_string()
    })?;
    Ok(())
}

fn perturbed(p: &MPoly, mono: &Exps) -> MPoly {
    p + &MPoly::monomial(p.vars(), mono.clone(), int(1))
}

/// True when at least one toy-ring check fails for `kit`.
fn caught(kit: &IdentityKit) -> Result<bool, String> {
    let rings = standard_rings();
    for k in 0..TOY_INSTANCES {
        let inst = Instance::random(&rings[k as usize % rings.len()], kit.n, k).map_err(err)?;
        for tag in IdentityTag::ALL {
            if !check_identity(tag, kit, &inst).map_err(err)?.passed() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

fn toy_ring_transfer() -> Check {
    let reports = verify(Suite::ToyRings, 4, 0, TOY_INSTANCES, None).map_err(err)?;
    for tag in IdentityTag::ALL {
        for n in 2..=4 {
            let count = reports
                .iter()
                .filter(|r| r.identity == tag.as_str() && r.rank == n)
                .count();
            ensure(count as u64 >= TOY_INSTANCES, || {
                format!("{tag} n={n}: only {count} instances")
            })?;
        }
    }
    if let Some(bad) = reports.iter().find(|r| !r.passed()) {
        return Err(format!(
            "{} failed on {} rank {} seed {}",
            bad.identity, bad.ring, bad.rank, bad.seed
        ));
    }

    // mutation sensitivity: every single-coefficient change is caught
    for n in 2..=4 {
        let kit = IdentityKit::build(n).map_err(err)?;
        for i in 0..kit.phi.len() {
            for term in 0..kit.phi[i].num_terms() {
                let bumped = kit.with_phi_bumped(i + 2, term);
                ensure(caught(&bumped)?, || {
                    format!("n={n}: φ_{} term {term} perturbation missed", i + 2)
                })?;
            }
        }
        // the closed form's monomials are c_1^{r−i} c_i, i = 0..r
        for r in 1..=n {
            for i in (0..=r).filter(|&i| i != 1) {
                let mut mono = vec![0u32; n];
                mono[0] = (r - i) as u32;
                if i > 0 {
                    mono[i - 1] += 1;
                }
                let mut mutant = kit.clone();
                mutant.reduced[r - 1] = perturbed(&kit.reduced[r - 1], &mono);
                ensure(caught(&mutant)?, || {
                    format!("n={n}: c̄_{r} monomial {mono:?} perturbation missed")
                })?;
            }
        }
    }
    Ok(())
}

fn determinism() -> Check {
    let first = table_json(4).map_err(err)?;
    let second = table_json(4).map_err(err)?;
    ensure(first == second, || "two runs differ".to_string())?;
    ensure(first == GOLDEN_TABLE, || {
        "output differs from tests/golden/table_max_rank_4.json".to_string()
    })
}

struct Criterion {
    id: &'static str,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Check,
}

fn main() {
    let criteria = [
        Criterion {
            id: "1",
            name: "closed form agrees with root definition, n=2..6",
            limit: Some(LIMIT_FORMULA),
            run: formula_agreement,
        },
        Criterion {
            id: "2",
            name: "c̄_1 = 0 and c̄_2 = c_2 − ((n−1)/2n) c_1², n=2..6",
            limit: Some(LIMIT_LOW_DEGREE),
            run: low_degree_values,
        },
        Criterion {
            id: "3",
            name: "characterization: c_1=0, twist, uniqueness",
            limit: Some(LIMIT_CHARACTERIZATION),
            run: characterization,
        },
        Criterion {
            id: "4",
            name: "root count, positivity, triangularity, ψ round trip, n=2..4",
            limit: Some(LIMIT_PIPELINE),
            run: pipeline_small,
        },
        Criterion {
            id: "4+",
            name: "same pipeline at n=5 (N=126)",
            limit: Some(LIMIT_PIPELINE_RANK5),
            run: pipeline_rank5,
        },
        Criterion {
            id: "5",
            name: "φ round trip n=2..4, c_1(F)=0 n=2..5, pinned n=2 values",
            limit: Some(LIMIT_ROUND_TRIP),
            run: phi_round_trip,
        },
        Criterion {
            id: "6",
            name: "toy-ring transfer and mutation sensitivity, n=2..4",
            limit: Some(LIMIT_TOY_RINGS),
            run: toy_ring_transfer,
        },
        Criterion {
            id: "7",
            name: "table --max-rank 4 is deterministic and matches golden",
            limit: None,
            run: determinism,
        },
    ];

    let mut failed = Vec::new();
    for c in &criteria {
        let start = Instant::now();
        let mut outcome = (c.run)();
        let elapsed = start.elapsed();
        if let (Ok(()), Some(limit)) = (&outcome, c.limit) {
            if elapsed > limit {
                outcome = Err(format!("took {elapsed:.2?}, limit {limit:?}"));
            }
        }
        match &outcome {
            Ok(()) => println!("PASS [{}] {} ({elapsed:.2?})", c.id, c.name),
            Err(why) => {
                println!("FAIL [{}] {} ({elapsed:.2?}): {why}", c.id, c.name);
                failed.push(c.id);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
