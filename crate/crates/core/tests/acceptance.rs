//! End-to-end acceptance suite. Runs without the libtest harness so every
//! criterion prints exactly one PASS/FAIL line, followed by any failed checks.
//!
//! cargo test -p geoprob --test acceptance

use std::cell::OnceCell;
use std::f64::consts::{LN_2, PI};
use std::process::ExitCode;
use std::rc::Rc;
use std::time::Instant;

use geoprob::analytic::{self, ObtuseModel};
use geoprob::discrete::{self, Prisoner, PrisonerStrategy, Problem, Sex, TwoBoysProtocol};
use geoprob::runner::{self, Experiment, ExperimentConfig, ExperimentReport, OutputFormat};
use geoprob::samplers::SamplerSpec;
use geoprob::stats::SummaryStats;
use geoprob::stick::{self, CutPolicy, StickMode};
use geoprob::{Rational64, RngStream};
use serde_json::Value;

const TABLE_TRIALS: u64 = 175_000;
const TABLE_SEEDS: [u64; 5] = [1, 2, 3, 4, 5];
const MILLION: u64 = 1_000_000;
const HIT_TEST_POINTS: u64 = 10_000_000;

#[derive(Default)]
struct Checks {
    failures: Vec<String>,
    count: usize,
}

impl Checks {
    fn holds(&mut self, label: impl Into<String>, ok: bool) {
        self.count += 1;
        if !ok {
            self.failures.push(label.into());
        }
    }

    fn close(&mut self, label: &str, got: f64, want: f64, tol: f64) {
        let ok = (got - want).abs() <= tol;
        self.holds(format!("{label}: got {got:.6}, want {want:.6} +/- {tol}"), ok);
    }

    fn within(&mut self, label: &str, got: f64, lo: f64, hi: f64) {
        let ok = (lo..=hi).contains(&got);
        self.holds(format!("{label}: got {got:.6}, want [{lo}, {hi}]"), ok);
    }
}

fn workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn report(experiments: Vec<Experiment>, trials: u64, seed: u64, workers: usize) -> ExperimentReport {
    let config = ExperimentConfig {
        experiments,
        trials,
        seed,
        workers,
        ..ExperimentConfig::default()
    };
    runner::run(&config).expect("run succeeds")
}

fn estimate(name: &str, trials: u64, seed: u64) -> f64 {
    let exp: Experiment = name.parse().unwrap();
    report(vec![exp], trials, seed, workers()).experiments[0].probability
}

fn c1_stick_parallel(c: &mut Checks) {
    c.close("stick-parallel", estimate("stick-parallel", MILLION, 11), 0.25, 0.005);
}

fn c2_stick_random_piece(c: &mut Checks) {
    c.close("stick-random-piece", estimate("stick-random-piece", MILLION, 12), 0.1931, 0.005);
    let q: f64 = stick::integrate_success(0.0, 0.5, 10_000).unwrap();
    c.close("quadrature over [0, 1/2]", q, LN_2 - 0.5, 1e-9);
    c.close("closed form", stick::analytic_probability(StickMode::Sequential(CutPolicy::RandomPiece)), 0.193147, 5e-7);
}

fn c3_stick_larger_piece(c: &mut Checks) {
    c.close("stick-larger-piece", estimate("stick-larger-piece", MILLION, 13), 0.3863, 0.005);
    let oracle: f64 = stick::analytic_probability(StickMode::Sequential(CutPolicy::LargerPiece));
    c.close("closed form", oracle, 2.0 * LN_2 - 1.0, 1e-15);
}

fn c4_bertrand(c: &mut Checks) {
    let r = report(
        ["chord-endpoints", "chord-radius-point", "chord-disk-point"].map(|n| n.parse().unwrap()).to_vec(),
        MILLION,
        14,
        workers(),
    );
    for (name, want) in [("chord-endpoints", 1.0 / 3.0), ("chord-radius-point", 0.5), ("chord-disk-point", 0.25)] {
        c.close(name, r.get(name).unwrap().probability, want, 0.005);
    }
}

/// Hit-test fractions of a bounding box, with predicates written out here
/// independently of the library's region code.
fn region_oracle(
    c: &mut Checks,
    label: &str,
    model: ObtuseModel,
    (x0, x1, y0, y1): (f64, f64, f64, f64),
    in_total: impl Fn(f64, f64) -> bool,
    obtuse: impl Fn(f64, f64) -> bool,
    seed: u64,
) {
    let areas = analytic::region_areas::<f64>(model).unwrap();
    let box_area = (x1 - x0) * (y1 - y0);
    let mut rng = RngStream::new(seed);
    let (mut total, mut fav) = (0u64, 0u64);
    for _ in 0..HIT_TEST_POINTS {
        let x = rng.uniform_in(x0, x1);
        let y = rng.uniform_in(y0, y1);
        if in_total(x, y) {
            total += 1;
            fav += obtuse(x, y) as u64;
        }
    }
    let n = HIT_TEST_POINTS as f64;
    let check_area = |c: &mut Checks, what: &str, hits: u64, area: f64| {
        let p = area / box_area;
        let se = (p * (1.0 - p) / n).sqrt();
        c.close(&format!("{label} {what} area fraction"), hits as f64 / n, p, 4.0 * se);
    };
    check_area(c, "total", total, areas.total);
    check_area(c, "favorable", fav, areas.favorable);
    let r = areas.ratio();
    let se = (r * (1.0 - r) / total as f64).sqrt();
    c.close(&format!("{label} obtuse ratio"), fav as f64 / total as f64, r, 4.0 * se);
}

fn c5_obtuse_analytic(c: &mut Checks) {
    let l: f64 = analytic::analytic_obtuse(ObtuseModel::LMethod);
    let m: f64 = analytic::analytic_obtuse(ObtuseModel::MMethod);
    c.close("L closed form", l, 0.639_382_560_711_962_4, 1e-12);
    c.close("M closed form", m, 0.821_021_053_874_228_7, 1e-12);
    c.close("L rounds to 0.639", l, 0.639, 5e-4);
    c.close("M rounds to 0.821", m, 0.821, 5e-4);
    let big: f64 = analytic::analytic_obtuse(ObtuseModel::BigAngle);
    let line: f64 = analytic::analytic_obtuse(ObtuseModel::AngleLine);
    c.holds(format!("big-angle exactly 0.75 (got {big})"), big == 0.75);
    c.holds(format!("angle-line exactly 0.75 (got {line})"), line == 0.75);

    let s3 = 3f64.sqrt() / 2.0;
    region_oracle(
        c,
        "L",
        ObtuseModel::LMethod,
        (0.5, 1.0, 0.0, s3),
        |x, y| x >= 0.5 && y >= 0.0 && x * x + y * y <= 1.0,
        // angle at the apex exceeds pi/2 inside the circle on the base as diameter
        |x, y| (x - 0.5).powi(2) + y * y < 0.25,
        15,
    );
    region_oracle(
        c,
        "M",
        ObtuseModel::MMethod,
        (0.5, 2.0, 0.0, 1.0),
        |x, y| y >= 0.0 && x * x + y * y >= 1.0 && (x - 1.0).powi(2) + y * y <= 1.0,
        // obtuse at (1, 0) iff the apex lies beyond the perpendicular x = 1
        |x, _| x > 1.0,
        16,
    );
}

fn table_reports() -> Vec<ExperimentReport> {
    let experiments: Vec<Experiment> = SamplerSpec::catalog().into_iter().map(Experiment::Triangle).collect();
    TABLE_SEEDS
        .iter()
        .map(|&seed| report(experiments.clone(), TABLE_TRIALS, seed, workers()))
        .collect()
}

fn seed_mean(reports: &[ExperimentReport], method: &str, f: impl Fn(&runner::ExperimentResult) -> f64) -> f64 {
    reports.iter().map(|r| f(r.get(method).unwrap())).sum::<f64>() / reports.len() as f64
}

fn c6_table(c: &mut Checks, reports: &[ExperimentReport]) {
    for r in reports {
        let p = r.get("generated").unwrap().probability;
        c.holds(format!("generated exactly 0.75 at seed {} (got {p})", r.provenance.seed), p == 0.75);
    }
    let targets = [
        ("polar-uniform", 0.7573),
        ("half-normal", 0.7914),
        ("ellipse-1:1", 0.7213),
        ("ellipse-1:2", 0.7929),
        ("ellipse-1:3", 0.863),
        ("rectangle-1:1", 0.7257),
        ("rectangle-1:2", 0.7981),
        ("rectangle-1:3", 0.8672),
        ("l-method", 0.6401),
        ("m-method", 0.8216),
    ];
    for (name, want) in targets {
        c.close(name, seed_mean(reports, name, |e| e.probability), want, 0.01);
    }
    c.within("fractal", seed_mean(reports, "fractal", |e| e.probability), 0.72, 0.78);
    c.within("quotient", seed_mean(reports, "quotient", |e| e.probability), 0.73, 0.77);
}

fn c7_distribution_stats(c: &mut Checks, reports: &[ExperimentReport]) {
    let rho = |r: &runner::ExperimentResult| r.metrics.as_ref().unwrap().rho.clone();
    c.close("half-normal rho mean", seed_mean(reports, "half-normal", |e| rho(e).mean), 0.80, 0.01);
    c.close("half-normal rho median", seed_mean(reports, "half-normal", |e| rho(e).median), 0.67, 0.01);
    for spec in SamplerSpec::catalog().into_iter().filter(SamplerSpec::is_isotropic) {
        let name = spec.name();
        for r in reports {
            let var = r.get(&name).unwrap().metrics.as_ref().unwrap().theta.variance.unwrap();
            c.close(&format!("{name} theta variance (seed {})", r.provenance.seed), var, 3.29, 0.05);
        }
    }
    for r in reports {
        for e in &r.experiments {
            let min = e.metrics.as_ref().unwrap().mdl.min;
            c.holds(format!("{} MdL min {min} >= 0.5 (seed {})", e.method, r.provenance.seed), min >= 0.5);
        }
    }
}

fn c8_two_boys(c: &mut Checks) {
    c.close("two-boys-filter", estimate("two-boys-filter", MILLION, 18), 1.0 / 3.0, 0.005);
    c.close("two-boys-informant", estimate("two-boys-informant", MILLION, 19), 0.5, 0.005);

    // every family and informant pick is equally likely
    for protocol in [TwoBoysProtocol::FilterFamilies, TwoBoysProtocol::Informant] {
        let (mut kept, mut hits) = (0i64, 0i64);
        for a in [Sex::Boy, Sex::Girl] {
            for b in [Sex::Boy, Sex::Girl] {
                for picked in 0..2 {
                    if let Some(hit) = discrete::two_boys_outcome(protocol, [a, b], picked) {
                        kept += 1;
                        hits += hit as i64;
                    }
                }
            }
        }
        let exact = discrete::exact_value(Problem::TwoBoys(protocol));
        c.holds(
            format!("{protocol:?} enumeration {hits}/{kept} == {exact}"),
            Rational64::new(hits, kept) == exact,
        );
    }
}

fn c9_prisoners(c: &mut Checks) {
    let r = report(
        vec!["prisoners-stay".parse().unwrap(), "prisoners-switch".parse().unwrap()],
        MILLION,
        20,
        workers(),
    );
    let stay = r.get("prisoners-stay").unwrap().probability;
    let switch = r.get("prisoners-switch").unwrap().probability;
    c.close("prisoners-stay", stay, 1.0 / 3.0, 0.005);
    c.close("prisoners-switch", switch, 2.0 / 3.0, 0.005);

    let mut rng = RngStream::new(21);
    for batch in [1, 10, 1000, 100_000] {
        let t = discrete::simulate_prisoners(batch, &mut rng);
        c.holds(
            format!("stay + switch == rounds for batch of {batch}"),
            t.stay_wins + t.switch_wins == t.rounds,
        );
    }

    let sixth = Rational64::new(1, 6);
    let (mut stay_p, mut switch_p) = (Rational64::from_integer(0), Rational64::from_integer(0));
    let (mut b_named, mut a_given_b, mut c_given_b) = (stay_p, stay_p, stay_p);
    for pardoned in [Prisoner::A, Prisoner::B, Prisoner::C] {
        for coin in [true, false] {
            let round = discrete::PrisonersRound {
                pardoned,
                named: discrete::warden_names(pardoned, coin),
            };
            if round.wins(PrisonerStrategy::Stay) {
                stay_p += sixth;
            }
            if round.wins(PrisonerStrategy::Switch) {
                switch_p += sixth;
            }
            if round.named == Prisoner::B {
                b_named += sixth;
                if pardoned == Prisoner::A {
                    a_given_b += sixth;
                }
                if pardoned == Prisoner::C {
                    c_given_b += sixth;
                }
            }
        }
    }
    c.holds(format!("enumerated stay {stay_p}"), stay_p == discrete::exact_value(Problem::Prisoners(PrisonerStrategy::Stay)));
    c.holds(
        format!("enumerated switch {switch_p}"),
        switch_p == discrete::exact_value(Problem::Prisoners(PrisonerStrategy::Switch)),
    );
    c.holds("P(A | B named) == 1/3", a_given_b / b_named == Rational64::new(1, 3));
    c.holds("P(C | B named) == 2/3", c_given_b / b_named == Rational64::new(2, 3));
}

fn values_close(a: &Value, b: &Value, rel: f64) -> bool {
    match (a, b) {
        (Value::Number(x), Value::Number(y)) => {
            let (x, y) = (x.as_f64().unwrap(), y.as_f64().unwrap());
            x == y || (x - y).abs() <= rel * x.abs().max(y.abs())
        }
        (Value::Array(x), Value::Array(y)) => x.len() == y.len() && x.iter().zip(y).all(|(p, q)| values_close(p, q, rel)),
        (Value::Object(x), Value::Object(y)) => {
            x.len() == y.len() && x.iter().all(|(k, v)| y.get(k).is_some_and(|w| values_close(v, w, rel)))
        }
        _ => a == b,
    }
}

fn json_bytes(r: &ExperimentReport) -> Vec<u8> {
    let mut out = Vec::new();
    runner::emit(r, OutputFormat::Json, &mut out).unwrap();
    out
}

fn c10_properties(c: &mut Checks) {
    let mut rng = RngStream::new(22);
    let mut mismatches = 0u64;
    for _ in 0..MILLION {
        let (u1, u2) = (rng.uniform(), rng.uniform());
        let obtuse = analytic::angle_line_obtuse(PI * u1, PI * u2);
        let triangle = stick::pieces_from_cuts(u1, u2).is_some_and(|p| stick::forms_triangle(&p));
        mismatches += (obtuse == triangle) as u64;
    }
    c.holds(format!("stick/angle-line complement ({mismatches} mismatches)"), mismatches == 0);

    let mut rng = RngStream::new(23);
    for round in 0..200 {
        let n = 3 + rng.below(5000) as usize;
        let xs: Vec<f64> = (0..n).map(|_| rng.standard_normal() * 3.0 + rng.uniform()).collect();
        let whole: SummaryStats<f64> = xs.iter().copied().collect();
        let mut merged = SummaryStats::new();
        let mut rest = &xs[..];
        while !rest.is_empty() {
            let k = 1 + rng.below(rest.len() as u32) as usize;
            let part: SummaryStats<f64> = rest[..k].iter().copied().collect();
            merged.merge(&part);
            rest = &rest[k..];
        }
        let (a, b) = (whole.finalize().unwrap(), merged.finalize().unwrap());
        let rel = |x: f64, y: f64| (x - y).abs() <= 1e-9 * x.abs().max(y.abs()).max(1e-12);
        let ok = a.median == b.median
            && a.min == b.min
            && a.max == b.max
            && rel(a.mean, b.mean)
            && rel(a.variance, b.variance)
            && rel(a.skewness, b.skewness);
        c.holds(format!("merge equivalence, partition round {round} (n = {n})"), ok);
    }

    let experiments: Vec<Experiment> = ["generated", "half-normal", "quotient", "m-method", "chord-disk-point", "stick-random-piece", "two-boys-filter"]
        .map(|n| n.parse().unwrap())
        .to_vec();
    let one = report(experiments.clone(), 50_000, 24, 1);
    let eight = report(experiments.clone(), 50_000, 24, 8);
    let (v1, v8) = (serde_json::to_value(&one).unwrap(), serde_json::to_value(&eight).unwrap());
    c.holds("workers 1 vs 8 within 1e-9 relative", values_close(&v1, &v8, 1e-9));

    let again = report(experiments, 50_000, 24, 1);
    c.holds("identical seed gives byte-identical JSON", json_bytes(&one) == json_bytes(&again));
}

fn main() -> ExitCode {
    let started = Instant::now();
    // criteria 6 and 7 share one set of table runs
    let table: Rc<OnceCell<Vec<ExperimentReport>>> = Rc::default();
    let (t6, t7) = (table.clone(), table);

    type Criterion = Box<dyn FnOnce(&mut Checks)>;
    let criteria: Vec<(&str, Criterion)> = vec![
        ("broken stick, parallel", Box::new(c1_stick_parallel)),
        ("broken stick, sequential random piece", Box::new(c2_stick_random_piece)),
        ("broken stick, sequential larger piece", Box::new(c3_stick_larger_piece)),
        ("Bertrand chords", Box::new(c4_bertrand)),
        ("obtuse analytic values and region oracles", Box::new(c5_obtuse_analytic)),
        ("random-triangle table", Box::new(move |c| c6_table(c, t6.get_or_init(table_reports)))),
        ("distribution statistics", Box::new(move |c| c7_distribution_stats(c, t7.get_or_init(table_reports)))),
        ("Two Boys", Box::new(c8_two_boys)),
        ("Three Prisoners", Box::new(c9_prisoners)),
        ("property suite", Box::new(c10_properties)),
    ];

    let mut failed = 0;
    for (i, (title, run)) in criteria.into_iter().enumerate() {
        let t = Instant::now();
        let mut checks = Checks::default();
        run(&mut checks);
        let status = if checks.failures.is_empty() { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2}: {status}  {title} ({} checks, {:.1}s)",
            i + 1,
            checks.count,
            t.elapsed().as_secs_f64()
        );
        for f in &checks.failures {
            println!("    failed: {f}");
        }
        failed += !checks.failures.is_empty() as usize;
    }
    println!("acceptance: {} of 10 criteria passed in {:.1}s", 10 - failed, started.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
