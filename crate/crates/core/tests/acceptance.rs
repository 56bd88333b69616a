//! One PASS/FAIL line per acceptance criterion. Runs without the libtest
//! harness so the lines are always printed; exits non-zero on any FAIL.

use std::panic::{self, AssertUnwindSafe};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use serieseig::algebra::rational::{int, log10_abs, parse_rational, pow10, rat, to_f64, to_significant};
use serieseig::algebra::roots::{isolate_real_roots, sturm_count};
use serieseig::hankel::{hankel_eval, hankel_roots, hankel_symbolic, hankel_symbolic_from};
use serieseig::hill::hill_roots;
use serieseig::numerov::{numerov_eigenvalue, Parity, ShootingConfig};
use serieseig::reference::ReferenceData;
use serieseig::reproduce::{reference_potential, reproduce, ReproOptions, Reproduction, Target};
use serieseig::sequence::{scan_width_parameter, table_for};
use serieseig::series::{residual_check, series_coefficients};
use serieseig::{
    det_exact, Backend, EPoly, HankelOptions, HankelSpec, HighPrecFloat, Matrix, Poly, PotentialSpec, Precision,
    Rational, SeriesParams, SeriesTable, WidthMethod,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, detail: String) -> Outcome {
    if cond {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn r(s: &str) -> Rational {
    parse_rational(s).unwrap()
}

fn table1() -> &'static (Reproduction, Duration) {
    static CELL: OnceLock<(Reproduction, Duration)> = OnceLock::new();
    CELL.get_or_init(|| {
        let t = Instant::now();
        let rep = reproduce(Target::Table1, &ReproOptions::default()).unwrap();
        (rep, t.elapsed())
    })
}

fn fig2() -> &'static (Reproduction, Duration) {
    static CELL: OnceLock<(Reproduction, Duration)> = OnceLock::new();
    CELL.get_or_init(|| {
        let t = Instant::now();
        let rep = reproduce(Target::Fig2, &ReproOptions::default()).unwrap();
        (rep, t.elapsed())
    })
}

fn failures(rep: &Reproduction) -> String {
    rep.failures()
        .map(|f| format!("{} #{} printed {} got {}", f.column, f.index, f.printed.as_deref().unwrap_or("-"), f.computed.as_deref().unwrap_or("-")))
        .collect::<Vec<_>>()
        .join("; ")
}

// ---- 1 ----

fn symbolic_identities() -> Outcome {
    type QA = Poly<Rational>;
    let a: QA = Poly::x();
    let c = series_coefficients(&PotentialSpec::quartic(), &a, 0, 3, &QA::one()).unwrap();
    let k = |x: Rational| QA::constant(x);
    let e: Poly<QA> = Poly::x();
    let av: Poly<QA> = Poly::constant(a.clone());
    let cst = |x: Rational| Poly::<QA>::constant(k(x));
    let c1 = av.clone() - e.clone() * cst(rat(1, 2));
    let c2 = av.clone() * av.clone() * cst(rat(1, 2)) - e.clone() * av.clone() * cst(rat(1, 2)) + e.clone() * e.clone() * cst(rat(1, 24));
    let a2 = av.clone() * av.clone();
    let h = av.clone() * cst(rat(1, 30)) - a2.clone() * a2.clone() * cst(rat(1, 12)) - e.clone() * cst(rat(1, 60))
        + e.clone() * a2.clone() * av.clone() * cst(rat(1, 6))
        - e.clone() * e.clone() * a2.clone() * cst(rat(1, 8))
        + e.clone() * e.clone() * e.clone() * av.clone() * cst(rat(7, 360))
        - e.clone() * e.clone() * e.clone() * e.clone() * cst(rat(1, 960));
    let h2 = hankel_symbolic_from(&c, HankelSpec::new(2, 0).unwrap());
    // the same determinant through the numeric-a path at a = 1
    let t = table_for(&PotentialSpec::quartic(), &int(1), 0, 3).unwrap();
    let at_one: EPoly = h.map_coeffs(|q| q.eval(&int(1)));
    let numeric = hankel_symbolic(&t, HankelSpec::new(2, 0).unwrap()).unwrap();
    check(
        c[1] == c1 && c[2] == c2 && h2 == h && numeric == at_one,
        format!("c_1 {}, c_2 {}, H_2^0 {}, a=1 path {}", c[1] == c1, c[2] == c2, h2 == h, numeric == at_one),
    )
}

// ---- 2, 3 ----

fn table1_reproduction() -> Outcome {
    let (rep, took) = table1();
    let n = rep.comparisons.len();
    let bad = rep.failures().count();
    let detail = format!("{}/{} printed cells within one unit, {:.0} s (limit 600 s)", n - bad, n, took.as_secs_f64());
    if bad == 0 && took.as_secs() <= 600 {
        Ok(detail)
    } else {
        Err(format!("{detail}; mismatched: {}", failures(rep)))
    }
}

fn high_precision_anchor() -> Outcome {
    let (rep, _) = table1();
    let digits = |g: &str| {
        rep.reports[g].reference_error.as_ref().and_then(|v| v.last().copied()).map(|e| -e).unwrap_or(f64::NAN)
    };
    let (d1, d10) = (digits("g=1/10"), digits("g=1"));
    check(d1 >= 18.0 && d10 >= 15.0, format!("g=1/10 {d1:.2} digits (need 18), g=1 {d10:.2} digits (need 15)"))
}

// ---- 4 ----

fn table2_reproduction() -> Outcome {
    let t = Instant::now();
    let refs = ReferenceData::load();
    let (lo, hi) = &refs.rational.table2.interval;
    let opts = ReproOptions { table2_interval: (r(lo), r(hi)), ..ReproOptions::default() };
    let rep = reproduce(Target::Table2, &opts).unwrap();
    let took = t.elapsed().as_secs_f64();
    let n = rep.comparisons.len();
    let bad = rep.failures().count();
    let detail = format!("window ({lo}, {hi}): {}/{} rows match, {took:.1} s (limit 60 s)", n - bad, n);
    if bad == 0 && took <= 60.0 {
        Ok(detail)
    } else {
        Err(format!("{detail}; mismatched: {}", failures(&rep)))
    }
}

// ---- 5 ----

fn hill_pathology() -> Outcome {
    let refs = ReferenceData::load();
    let avg = &refs.rational.hill_average;
    let g = r(&avg.g);
    let e_ref = r("1.380531800938045");
    let table = table_for(&reference_potential(&g, 21).unwrap(), &rat(1, 2), 0, 21).unwrap();
    let root = |m: usize| hill_roots(&table, m, &int(1), &int(2), &pow10(-30)).unwrap().nearest(&e_ref).map(|x| x.value.clone());
    let errs: Vec<Rational> = (2..=13).map(|m| root(m).expect("root in (1, 2)") - &e_ref).collect();
    let alternating = errs.windows(2).all(|w| w[0].signum() * w[1].signum() == -Rational::one());
    let e11 = (root(11).unwrap() - &e_ref).abs();
    let e21 = root(21).map(|v| (v - &e_ref).abs());
    let diverging = e21.as_ref().is_some_and(|e| e > &e11);
    let mean = (root(avg.orders.0).unwrap() + root(avg.orders.1).unwrap()) / int(2);
    let mean_ok = to_significant(&mean, 9) == avg.e.text;
    check(
        alternating && diverging && mean_ok,
        format!(
            "alternating M=2..13 {alternating}, |err(21)| = 1e{:.2} > |err(11)| = 1e{:.2} {diverging}, mean(M=10,11) {} vs {}",
            e21.as_ref().map_or(f64::NAN, log10_abs),
            log10_abs(&e11),
            to_significant(&mean, 9),
            avg.e.text
        ),
    )
}

// ---- 6 ----

fn quartic_race() -> Outcome {
    let (rep, took) = fig2();
    let digits = rep.comparisons.last().and_then(|c| c.computed.clone()).unwrap_or_default();
    let detail = format!(
        "{} of {} comparisons hold, Hankel D=15 digits {digits}, {:.0} s (limit 120 s)",
        rep.comparisons.len() - rep.failures().count(),
        rep.comparisons.len(),
        took.as_secs_f64()
    );
    if rep.all_pass() && took.as_secs() <= 120 {
        Ok(detail)
    } else {
        Err(format!("{detail}; failed: {}", failures(rep)))
    }
}

// ---- 7 ----

fn zero_width() -> Outcome {
    let reference = ReferenceData::load().quartic_ground_state.value();
    let table = table_for(&PotentialSpec::quartic(), &int(0), 0, 23).unwrap();
    let opts = HankelOptions::default();
    let err = |d: usize| {
        hankel_roots(&table, HankelSpec::new(d, 0).unwrap(), &int(1), &rat(6, 5), &opts)
            .unwrap()
            .nearest(&reference)
            .map_or(f64::NAN, |x| -log10_abs(&(&x.value - &reference)))
    };
    let (d6, d12) = (err(6), err(12));
    check(d12 >= 6.0 && d12 > d6, format!("a=0 correct digits: D=6 {d6:.2}, D=12 {d12:.2} (need 6)"))
}

// ---- 8 ----

fn width_scan() -> Outcome {
    let refs = ReferenceData::load();
    let opt = &refs.quartic_width_optimum;
    let grid: Vec<Rational> = (1..=8).map(|k| rat(k, 2)).collect();
    let scan = scan_width_parameter(
        WidthMethod::Hill,
        &PotentialSpec::quartic(),
        opt.m,
        &grid,
        &refs.quartic_ground_state.value(),
        &int(0),
        &int(3),
        &HankelOptions::default(),
    )
    .unwrap();
    let (lo, hi) = (r(&opt.bracket.0), r(&opt.bracket.1));
    check(
        scan.best_a >= lo && scan.best_a <= hi,
        format!("M={} best a = {} (need [{}, {}])", opt.m, to_significant(&scan.best_a, 3), opt.bracket.0, opt.bracket.1),
    )
}

// ---- 9 ----

fn oracle_concordance() -> Outcome {
    let prec = Precision::digits(50);
    let mut worst = f64::INFINITY;
    let mut parts = Vec::new();
    let mut numerov_time = Duration::ZERO;
    let mut agree = |name: String, pot: PotentialSpec, hankel: &Rational, lo: Rational, hi: Rational| {
        let t = Instant::now();
        let e = numerov_eigenvalue(|x| pot.value_at(x), &ShootingConfig::standard(Parity::Even), &lo, &hi).unwrap();
        numerov_time += t.elapsed();
        let digits = -log10_abs(&((e.to_rational() - hankel) / hankel));
        worst = worst.min(digits);
        parts.push(format!("{name} {digits:.1}"));
    };
    let (fig, _) = fig2();
    agree("quartic".into(), PotentialSpec::quartic(), &fig.reports["hankel"].limit_estimate, rat(9, 10), rat(6, 5));
    let (t1, _) = table1();
    for g in ["1/10", "1/5", "1"] {
        let est = &t1.reports[&format!("g={g}")].limit_estimate;
        agree(format!("g={g}"), reference_potential(&r(g), 1).unwrap(), est, int(1), int(2));
    }

    let t = Instant::now();
    let harmonic = PotentialSpec::harmonic();
    let solve = |h: Rational| {
        let cfg = ShootingConfig::new(int(12), h, Parity::Even, prec).unwrap();
        numerov_eigenvalue(|x| harmonic.value_at(x), &cfg, &rat(1, 2), &rat(3, 2)).unwrap()
    };
    let one = HighPrecFloat::from_i64(1, prec);
    let fine = (&solve(rat(1, 200)) - &one).abs();
    let coarse = (&solve(rat(1, 100)) - &one).abs();
    numerov_time += t.elapsed();
    let ratio = (&coarse / &fine).to_f64();
    let harmonic_digits = -fine.log10_abs();
    check(
        worst >= 8.0 && harmonic_digits >= 9.0 && (13.0..=19.0).contains(&ratio) && numerov_time.as_secs() <= 60,
        format!(
            "digits vs Hankel: {}; harmonic {harmonic_digits:.1} digits, error ratio h:2h {ratio:.2} (fourth order = 16), Numerov time {:.1} s",
            parts.join(", "),
            numerov_time.as_secs_f64()
        ),
    )
}

// ---- 10 ----

fn small_rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

fn cofactor(m: &[Vec<Rational>]) -> Rational {
    if m.len() == 1 {
        return m[0][0].clone();
    }
    let mut acc = Rational::zero();
    for (j, x) in m[0].iter().enumerate() {
        let minor: Vec<Vec<Rational>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, v)| v.clone()).collect()).collect();
        let term = x * cofactor(&minor);
        acc = if j % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

fn property_suites() -> Outcome {
    let mut runner = TestRunner::new(Config { cases: 48, failure_persistence: None, ..Config::default() });
    let mut done = Vec::new();
    let mut run = |name: &str, res: Result<(), String>| {
        res.map(|()| done.push(name.to_string())).map_err(|e| format!("{name}: {e}"))
    };

    run(
        "residual",
        runner
            .run(
                &(prop::collection::vec(small_rational(), 1..4), (0i64..=6, 1i64..=4), 0u8..=1, 1usize..8, small_rational()),
                |(v, (an, ad), s, j, e)| {
                    prop_assume!(v.iter().any(|x| !x.is_zero()));
                    let t = SeriesTable::generate(
                        &PotentialSpec::polynomial(v).unwrap(),
                        SeriesParams::new(rat(an, ad), s, j).unwrap(),
                    )
                    .unwrap();
                    prop_assert!(residual_check(&t, &e).is_zero());
                    Ok(())
                },
            )
            .map_err(|e| e.to_string()),
    )?;

    run(
        "harmonic 4k+1",
        runner
            .run(&(1usize..8, 0u8..=1), |(m, s)| {
                let t = SeriesTable::generate(&PotentialSpec::harmonic(), SeriesParams::new(rat(1, 2), s, m).unwrap()).unwrap();
                let got: Vec<Rational> =
                    hill_roots(&t, m, &int(0), &int(4 * m as i64 + 4), &pow10(-12)).unwrap().roots.into_iter().map(|x| x.value).collect();
                let want: Vec<Rational> = (0..m as i64).map(|k| int(4 * k + 1 + 2 * s as i64)).collect();
                prop_assert_eq!(got, want);
                Ok(())
            })
            .map_err(|e| e.to_string()),
    )?;

    run(
        "kappa^D",
        runner
            .run(&(small_rational(), 2usize..=4, 0usize..=1), |(kappa, d, off)| {
                prop_assume!(!kappa.is_zero());
                let spec = HankelSpec::new(d, off).unwrap();
                let j = spec.required_j();
                let params = SeriesParams::new(int(1), 0, j).unwrap();
                let base = SeriesTable::generate(&PotentialSpec::quartic(), params.clone()).unwrap();
                let scaled = SeriesTable::generate_normalized(&PotentialSpec::quartic(), params, &kappa).unwrap();
                let k_d = (0..d).fold(Rational::one(), |acc, _| acc * &kappa);
                prop_assert_eq!(hankel_symbolic(&scaled, spec).unwrap(), hankel_symbolic(&base, spec).unwrap().scale(&k_d));
                Ok(())
            })
            .map_err(|e| e.to_string()),
    )?;
    // roots themselves, through the full search
    let spec = HankelSpec::new(3, 0).unwrap();
    let params = SeriesParams::new(int(1), 0, spec.required_j()).unwrap();
    let base = SeriesTable::generate(&PotentialSpec::quartic(), params.clone()).unwrap();
    let scaled = SeriesTable::generate_normalized(&PotentialSpec::quartic(), params, &rat(-7, 3)).unwrap();
    let opts = HankelOptions { grid_n: 60, ..HankelOptions::default() };
    let roots = |t: &SeriesTable| hankel_roots(t, spec, &int(0), &int(3), &opts).unwrap().roots.into_iter().map(|x| x.value).collect::<Vec<_>>();
    run("kappa roots", if roots(&base) == roots(&scaled) { Ok(()) } else { Err("roots moved".into()) })?;

    run(
        "bareiss vs cofactor",
        runner
            .run(&(1usize..=5).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(small_rational(), n), n)), |rows| {
                prop_assert_eq!(det_exact(&Matrix::from_rows(rows.clone())), cofactor(&rows));
                Ok(())
            })
            .map_err(|e| e.to_string()),
    )?;

    run(
        "sturm vs brackets",
        runner
            .run(&(prop::collection::vec(-10i64..=10, 1..6), -12i64..=12, 1i64..=12), |(halves, lo7, width7)| {
                let lo = rat(2 * lo7 + 1, 14);
                let hi = &lo + rat(width7, 7);
                let roots: Vec<Rational> = halves.iter().map(|&h| rat(h, 2)).collect();
                prop_assume!(roots.iter().all(|x| *x != lo && *x != hi));
                let p = roots.iter().fold(EPoly::one(), |acc, x| acc * Poly::new(vec![-x.clone(), Rational::one()]));
                let mut inside: Vec<&Rational> = roots.iter().filter(|x| **x > lo && **x < hi).collect();
                inside.sort();
                inside.dedup();
                let iso = isolate_real_roots(&p, &lo, &hi).unwrap();
                prop_assert_eq!(sturm_count(&p, &lo, &hi), inside.len());
                prop_assert_eq!(iso.distinct_count(), inside.len());
                Ok(())
            })
            .map_err(|e| e.to_string()),
    )?;

    let p = Precision::digits(60);
    run(
        "exact vs float",
        runner
            .run(&(2usize..=5, 1i64..=2, 1i64..=1000), |(d, a2, e_milli)| {
                let spec = HankelSpec::new(d, 0).unwrap();
                let t = table_for(&PotentialSpec::quartic(), &rat(a2, 2), 0, spec.required_j()).unwrap();
                let e = rat(e_milli, 200);
                let exact = hankel_eval(&t, spec, &e, Backend::Exact).unwrap().to_rational();
                let float = hankel_eval(&t, spec, &e, Backend::Float(p)).unwrap().to_rational();
                prop_assume!(!exact.is_zero());
                let rel = log10_abs(&((float - &exact) / &exact));
                prop_assert!(rel <= -(p.decimal_digits() as f64 - 10.0), "D={} E={} relative error 1e{:.1}", d, to_f64(&e), rel);
                Ok(())
            })
            .map_err(|e| e.to_string()),
    )?;

    Ok(format!("{} properties hold: {}", done.len(), done.join(", ")))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("symbolic identities", symbolic_identities),
        ("table 1 (Hankel, rational potential)", table1_reproduction),
        ("high-precision anchors", high_precision_anchor),
        ("table 2 (Hill, stated window)", table2_reproduction),
        ("Hill oscillation and divergence", hill_pathology),
        ("quartic race, Hankel vs Hill", quartic_race),
        ("Hankel at a = 0", zero_width),
        ("width scan optimum", width_scan),
        ("oracle concordance", oracle_concordance),
        ("property suites", property_suites),
    ];
    panic::set_hook(Box::new(|_| {}));
    let results: Vec<(Outcome, f64)> = std::thread::scope(|s| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|(_, f)| {
                s.spawn(move || {
                    let t = Instant::now();
                    let out = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
                        let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
                        Err(format!("panicked: {}", msg.unwrap_or_default()))
                    });
                    (out, t.elapsed().as_secs_f64())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut failed = 0;
    for (i, ((name, _), (out, secs))) in criteria.iter().zip(&results).enumerate() {
        let (tag, detail) = match out {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} {:>2} {name}: {detail} [{secs:.1} s]", i + 1);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
