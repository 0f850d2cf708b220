use std::fs::File;
use std::io::{self, Write};

use anyhow::{anyhow, bail, Context, Result};
use pointgame::bounds::{concentrated_rows, explicit_round_lower_bound, isolating_mass, norm_certificate, BoundsError};
use pointgame::concentration::{self, circle_max, circle_samples, diag_rational_log, example_h, Complex64};
use pointgame::io::{read_game, render_game, write_circle_csv, write_game, write_profile_csv, Game, GameDocument};
use pointgame::lp::{build_grid, default_lambda_samples, scan_tau, synthesize_tipg, write_scan_csv, GridSpec, SynthesisOptions, SynthesisStatus};
use pointgame::profile::{
    argument_pairs, check_facts, default_fact_arguments, geometric_arguments, target_move, ExtendedBound, ProfileTable,
};
use pointgame::rational::{int, parse_rational_lenient, rat, to_f64, Rational};
use pointgame::validity::{check_horizontally_valid, check_valid_tdpg, check_valid_tipg, MoveValidity};
use pointgame::{Move2D, Tdpg, Tipg};

use crate::{AsKind, Command, Part};

fn rational(s: &str, what: &str) -> Result<Rational> {
    parse_rational_lenient(s.trim()).map_err(|e| anyhow!("{what}: {e}"))
}

fn output(path: &Option<String>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(File::create(p).with_context(|| format!("cannot create {p}"))?),
        None => Box::new(io::stdout().lock()),
    })
}

fn report_rows(label: &str, v: &MoveValidity) {
    for (y, r) in &v.rows {
        if !r.is_valid() {
            println!("{label} row {y}: {} ({})", r.verdict, r.detail);
        }
    }
}

/// Profile arguments from `n=..,hi=..` or `values=a;b;..`.
fn profile_arguments(spec: &str) -> Result<Vec<ExtendedBound>> {
    let spec = spec.trim();
    if let Some(list) = spec.strip_prefix("values=") {
        return list
            .split(';')
            .filter(|s| !s.trim().is_empty())
            .map(|s| s.parse::<ExtendedBound>().map_err(|e| anyhow!("{e}")))
            .collect();
    }
    let (mut n, mut hi) = (16usize, 1000.0f64);
    for part in spec.split(',').filter(|p| !p.trim().is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| anyhow!("expected key=value, got '{part}'"))?;
        match k.trim() {
            "n" => n = v.trim().parse().context("bad n")?,
            "hi" => hi = v.trim().parse().context("bad hi")?,
            other => bail!("unknown profile grid key '{other}'"),
        }
    }
    if hi.is_nan() || hi < 1.0 {
        bail!("hi must be at least 1");
    }
    Ok(geometric_arguments(n, hi))
}

fn move_of(doc: &GameDocument, part: Part) -> Result<Move2D> {
    match (&doc.game, part) {
        (Game::Move(m), _) => Ok(m.clone()),
        (Game::Tipg(r), Part::First) => Ok(r.first.clone()),
        (Game::Tipg(r), Part::Second) => Ok(r.second.clone()),
        (Game::Tdpg(_), _) => bail!("expected a move2d or tipg document, found tdpg"),
    }
}

fn tau_of(doc: &GameDocument, flag: &Option<String>) -> Result<Rational> {
    match flag {
        Some(t) => rational(t, "tau"),
        None => doc.tau.clone().ok_or_else(|| anyhow!("no tau given and the document carries none")),
    }
}

fn synthesis_options(lambda_samples: usize, max_cuts: usize) -> SynthesisOptions {
    SynthesisOptions {
        lambda_samples: default_lambda_samples(lambda_samples, 1e-4, 1e4),
        max_cut_rounds: max_cuts,
        ..SynthesisOptions::default()
    }
}

pub fn run(cmd: Command) -> Result<bool> {
    match cmd {
        Command::Validate { game, as_kind } => validate(&game, as_kind),
        Command::Profile { game, grid, at, part, out } => {
            let doc = read_game(&game)?;
            let q = move_of(&doc, part)?;
            let points = match (grid, at) {
                (Some(g), _) => argument_pairs(&profile_arguments(&g)?),
                (None, Some(a)) => {
                    let (x, y) = a.split_once(',').ok_or_else(|| anyhow!("--at expects alpha,beta"))?;
                    let x: ExtendedBound = x.parse().map_err(|e| anyhow!("{e}"))?;
                    let y: ExtendedBound = y.parse().map_err(|e| anyhow!("{e}"))?;
                    vec![(x, y)]
                }
                (None, None) => bail!("one of --grid or --at is required"),
            };
            write_profile_csv(&ProfileTable::evaluate(&q, &points), output(&out)?)?;
            Ok(true)
        }
        Command::Target { tau, profile_grid, out } => {
            let tau = rational(&tau, "tau")?;
            let t = target_move(&tau)?;
            match profile_grid {
                Some(g) => {
                    let table = ProfileTable::evaluate(&t, &argument_pairs(&profile_arguments(&g)?));
                    write_profile_csv(&table, output(&out)?)?;
                }
                None => {
                    let doc = GameDocument::new(Game::Move(t)).with_tau(tau);
                    output(&out)?.write_all(render_game(&doc).as_bytes())?;
                }
            }
            Ok(true)
        }
        Command::Synth { tau, grid, out, lambda_samples, max_cuts } => {
            let tau = rational(&tau, "tau")?;
            let spec: GridSpec = grid.parse()?;
            let grid = build_grid(&spec, &tau)?;
            let r = synthesize_tipg(&tau, &grid, &synthesis_options(lambda_samples, max_cuts))?;
            println!("status={}", r.status);
            println!("grid_size={}", r.grid_size);
            println!("cuts={}", r.cut_history.len());
            println!("exact_verified={}", r.exact_verified);
            if let Some(game) = &r.game {
                println!("one_norm={}", r.one_norm);
                println!("one_norm_float={}", to_f64(&r.one_norm));
                write_game(&GameDocument::new(Game::Tipg(game.clone())).with_tau(tau), &out)?;
            } else {
                println!("detail={}", r.detail);
            }
            Ok(r.status == SynthesisStatus::Optimal)
        }
        Command::Scan { tau_list, grid, out, lambda_samples, max_cuts } => {
            let taus = tau_list
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| rational(s, "tau"))
                .collect::<Result<Vec<_>>>()?;
            let spec: GridSpec = grid.parse()?;
            let report = scan_tau(&taus, &spec, &synthesis_options(lambda_samples, max_cuts))?;
            write_scan_csv(&report.rows, File::create(&out).with_context(|| format!("cannot create {out}"))?)?;
            println!("rows={}", report.rows.len());
            println!("monotone={}", report.monotone);
            Ok(true)
        }
        Command::Certify { game, tau } => certify(&game, &tau),
        Command::Bound { epsilon } => {
            let eps = rational(&epsilon, "epsilon")?;
            let t = explicit_round_lower_bound(&eps)?;
            let opt = |v: Option<f64>| v.map_or_else(|| String::from("none"), |x| format!("{x:e}"));
            println!("epsilon={}", t.epsilon);
            println!("tau={}", t.tau);
            println!("a_of_7tau={:e}", t.a_of_7tau);
            println!("isolating_radius={:e}", t.isolating_radius);
            println!("delta={:e}", t.delta);
            println!("theta={}", opt(t.theta));
            println!("exponent={}", opt(t.exponent));
            println!("circle_lower_bound_log2={}", opt(t.circle_lower_bound));
            println!("norm_lower_bound={:e}", t.norm_lower_bound);
            println!("round_lower_bound={:e}", t.round_lower_bound);
            println!("rounds_at_least={}", t.rounds_at_least);
            println!("vacuous={}", t.vacuous);
            Ok(true)
        }
        Command::Concentration { example_h: use_h, game, tau, center, radius, samples, out } => {
            if use_h {
                let f = |z: Complex64| example_h(z).map(|w| w.log2_abs);
                let c0 = center.unwrap_or(0.0);
                write_circle_csv(&circle_samples(&f, c0, radius, samples)?, output(&out)?)?;
                let (t, m) = circle_max(&f, c0, radius, concentration::DEFAULT_COARSE, concentration::DEFAULT_REFINE)?;
                eprintln!("circle_max_log10={} angle={t}", m * std::f64::consts::LOG10_2);
                let ok = match concentration::certify(&f, 0.2, 10_000)? {
                    Some(c) => {
                        eprintln!("nu={:e} predicted_log10={} satisfied={}", c.nu, c.predicted_lower_bound * std::f64::consts::LOG10_2, c.satisfied);
                        c.satisfied
                    }
                    None => true,
                };
                return Ok(ok);
            }
            let path = game.expect("clap enforces one source");
            let doc = read_game(&path)?;
            let mut g = move_of(&doc, Part::First)?;
            if let Some(t) = &tau {
                g = concentrated_rows(&g, &rational(t, "tau")?)?;
            }
            let f = |z: Complex64| diag_rational_log(&g, z).map(|w| w.log2_abs);
            let c0 = center.unwrap_or(4.0);
            write_circle_csv(&circle_samples(&f, c0, radius, samples)?, output(&out)?)?;
            let (t, m) = circle_max(&f, c0, radius, concentration::DEFAULT_COARSE, concentration::DEFAULT_REFINE)?;
            eprintln!("circle_max_log10={} angle={t}", m * std::f64::consts::LOG10_2);
            Ok(true)
        }
    }
}

fn validate(path: &str, as_kind: Option<AsKind>) -> Result<bool> {
    let doc = read_game(path)?;
    let kind = as_kind.unwrap_or(match doc.game {
        Game::Move(_) => AsKind::Move,
        Game::Tipg(_) => AsKind::Tipg,
        Game::Tdpg(_) => AsKind::Tdpg,
    });
    let valid = match (kind, &doc.game) {
        (AsKind::Move, Game::Move(m)) => {
            let v = check_horizontally_valid(m);
            report_rows("move", &v);
            v.valid
        }
        (AsKind::Tipg, g) => {
            let r = match g {
                Game::Move(m) => Tipg::from_symmetric(m.clone()),
                Game::Tipg(r) => r.clone(),
                Game::Tdpg(t) => t.to_tipg(),
            };
            let v = check_valid_tipg(&r);
            report_rows("first", &v.first);
            report_rows("second (column)", &v.second);
            if let Some(tau) = &doc.tau {
                let ok = r.sum() == target_move(tau)?;
                println!("sum_matches_target={ok}");
            }
            v.valid
        }
        (AsKind::Tdpg, g) => {
            let t = match g {
                Game::Tdpg(t) => t.clone(),
                Game::Move(m) => Tdpg::new(vec![m.clone()]),
                Game::Tipg(r) => Tdpg::new(vec![r.first.clone(), r.second.clone()]),
            };
            let v = check_valid_tdpg(&t);
            if !v.configurations_ok {
                println!("configurations: {}", v.detail);
            }
            for (i, m) in v.moves.iter().enumerate() {
                report_rows(&format!("move {}", i + 1), m);
            }
            v.valid
        }
        (AsKind::Move, other) => bail!("--as move needs a move2d document, found {}", other.kind()),
    };
    println!("{}", if valid { "Valid" } else { "Invalid" });
    Ok(valid)
}

fn certify(path: &str, tau: &Option<String>) -> Result<bool> {
    let doc = read_game(path)?;
    let tau = tau_of(&doc, tau)?;
    let g = move_of(&doc, Part::First)?;
    if let Err(e) = norm_certificate(&g, &tau) {
        if let BoundsError::PreconditionFailed(why) = e {
            println!("precondition failed: {why}");
            println!("NotCertified");
            return Ok(false);
        }
        return Err(e.into());
    }
    let facts = check_facts(&g, &tau, &argument_pairs(&default_fact_arguments()), true)?;
    println!("facts_evaluations={}", facts.evaluations);
    println!("facts_violations={}", facts.violations.len());
    for v in facts.violations.iter().take(10) {
        println!("  violation {} at ({}, {}): {} vs {}", v.fact, v.alpha, v.beta.as_ref().map_or_else(|| String::from("-"), |b| b.to_string()), v.lhs, v.rhs);
    }
    for (f, ok) in &facts.certified {
        println!("certified {f}={ok}");
    }
    let mut ok = facts.passed();
    for a in [int(3), rat(7, 2), int(4), rat(9, 2), int(5)] {
        let m = isolating_mass(&g, &tau, &a)?;
        let pass = m >= rat(2, 3);
        ok &= pass;
        println!("isolating_mass a={a} value={m} float={} ok={pass}", to_f64(&m));
    }
    let c = norm_certificate(&g, &tau)?;
    println!("one_norm={}", c.one_norm);
    println!("circle_max_log2={}", c.circle_max_log2);
    println!("implied_lower_bound={}", c.implied_lower_bound);
    println!("central_value={}", c.central_value);
    println!("norm_certificate={}", c.passed);
    ok &= c.passed;
    println!("{}", if ok { "Certified" } else { "NotCertified" });
    Ok(ok)
}
