use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::Path;

use lc_core::analysis::window_extrema;
use lc_core::formats::{
    parse_sequence, write_pattern, write_profile_csv, write_region_csv, write_sequence, write_stats_csv,
    write_trajectory_csv, write_trials_csv,
};
use lc_core::rational::{parse_rational, rational_decimal};
use lc_core::regions::admissibility;
use lc_core::{
    audit_bounds, bdm_random, hausdorff_bounds, measure_constant, profile_oracle, region_geometry, synthesize as build,
    BdmConfig, Error, Field, LimitPair, Mscfa, Rational, Result, SequencePrefix, SynthesisPlan,
};
use num::Signed;

use crate::{BdmArgs, CheckArgs, Outcome, SynthesizeArgs};

fn with_path(path: &Path) -> impl FnOnce(io::Error) -> Error + '_ {
    move |e| Error::Io(io::Error::new(e.kind(), format!("{}: {e}", path.display())))
}

fn sink(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(with_path(p))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn read_sequence(path: &Path) -> Result<SequencePrefix> {
    parse_sequence(&fs::read_to_string(path).map_err(with_path(path))?)
}

fn pair(i: &str, s: &str) -> Result<LimitPair> {
    LimitPair::new(parse_rational(i)?, parse_rational(s)?)
}

fn parse_bits(text: &str) -> Result<Vec<bool>> {
    text.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(Error::InvalidParameter(format!("gap bits must be 0 or 1, found `{c}`"))),
        })
        .collect()
}

pub fn profile(input: &Path, out: Option<&Path>) -> Result<Outcome> {
    let seq = read_sequence(input)?;
    let engine = Mscfa::run(&seq);
    let mut w = sink(out)?;
    write_profile_csv(engine.profile(), seq.sequences(), &mut w)?;
    w.flush()?;
    Ok(Outcome::Ok)
}

pub fn synthesize(args: &SynthesizeArgs) -> Result<Outcome> {
    let field: Field = args.q.parse()?;
    let mut plan = SynthesisPlan::new(field.clone(), args.m, pair(&args.i, &args.s)?, args.n)?;
    if let Some(k) = args.k {
        plan = plan.with_active_count(k)?;
    }
    if let Some(bits) = &args.gaps {
        plan = plan.with_gaps(parse_bits(bits)?);
    }
    if let Some(code) = args.nonzero {
        plan = plan.with_nonzero_symbol(field.element(code)?)?;
    }
    let syn = build(&plan)?;

    let mut w = sink(args.out.as_deref())?;
    write_sequence(&syn.sequence, &mut w)?;
    w.flush()?;
    if let Some(path) = &args.pattern {
        let mut w = sink(Some(path))?;
        write_pattern(&syn.generated.pattern, &mut w)?;
        w.flush()?;
    }
    if let Some(path) = &args.trajectory {
        let mut w = sink(Some(path))?;
        write_trajectory_csv(&syn.generated.trajectory, &mut w)?;
        w.flush()?;
    }

    let g = &syn.generated;
    eprintln!("K={} hexagons={}", plan.k, g.hexagons.len());
    if let Some(h) = g.last_complete_hexagon() {
        let end = h.settled.expect("complete hexagons settle");
        if end > h.start {
            let (lo, hi) = window_extrema(&g.trajectory.profile(), h.start + 1, end)?;
            eprintln!(
                "last complete hexagon {}..{}: L/n in [{}, {}]",
                h.start + 1,
                end,
                rational_decimal(&lo, 6),
                rational_decimal(&hi, 6)
            );
        }
    }
    if args.verify {
        let rt = syn.round_trip();
        eprintln!("pattern_matches={} profile_matches={}", rt.pattern_matches, rt.profile_matches);
        if !(rt.pattern_matches && rt.profile_matches) {
            return Ok(Outcome::Mismatch);
        }
    }
    Ok(Outcome::Ok)
}

pub fn bdm(args: &BdmArgs) -> Result<Outcome> {
    Field::from_order(args.q)?;
    if args.n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let cfg = BdmConfig {
        q: args.q,
        m: args.m,
        n: args.n,
        trials: args.trials,
        master_seed: args.seed,
        eps: parse_rational(&args.eps)?,
        checkpoints: BdmConfig::even_checkpoints(args.n, args.checkpoints),
    };
    let stats = bdm_random(&cfg)?;
    let mut w = sink(Some(&args.out))?;
    write_stats_csv(&stats, &mut w)?;
    w.flush()?;
    if let Some(path) = &args.trials_out {
        let mut w = sink(Some(path))?;
        write_trials_csv(&stats, &mut w)?;
        w.flush()?;
    }
    Ok(Outcome::Ok)
}

pub fn oracle(input: &Path, n: usize, diff: bool) -> Result<Outcome> {
    let seq = read_sequence(input)?;
    if n > seq.len() {
        return Err(Error::InvalidParameter(format!("n = {n} exceeds the prefix length {}", seq.len())));
    }
    let reference = profile_oracle(&seq, n);
    let mut w = sink(None)?;
    writeln!(w, "n,L")?;
    for (i, l) in reference.iter().enumerate() {
        writeln!(w, "{},{l}", i + 1)?;
    }
    w.flush()?;
    if diff {
        let engine = Mscfa::run(&seq.prefix(n));
        if let Some(i) = (0..n).find(|&i| engine.profile()[i] != reference[i]) {
            eprintln!("mismatch at n={}: engine {} oracle {}", i + 1, engine.profile()[i], reference[i]);
            return Ok(Outcome::Mismatch);
        }
        eprintln!("engine and oracle agree on n=1..={n}");
    }
    Ok(Outcome::Ok)
}

pub fn check(args: &CheckArgs) -> Result<Outcome> {
    let seq = read_sequence(&args.input)?;
    let tail = parse_rational(&args.tail)?;
    let slack = parse_rational(&args.slack)?;
    let engine = Mscfa::run(&seq);
    let report = audit_bounds(engine.profile(), seq.sequences(), &tail, &slack)?;
    let mut w = sink(None)?;
    write!(w, "{report}")?;
    writeln!(w, "I_hat_decimal={}", rational_decimal(&report.i_hat, 12))?;
    writeln!(w, "S_hat_decimal={}", rational_decimal(&report.s_hat, 12))?;
    let mut outcome = if report.bounds_ok() && report.monotone() {
        Outcome::Ok
    } else {
        Outcome::Mismatch
    };
    if let (Some(i), Some(s)) = (&args.i, &args.s) {
        let target = pair(i, s)?;
        let tol = parse_rational(&args.tol)?;
        let near = |x: &Rational, y: &Rational| (x - y).abs() <= tol;
        let ok = near(&report.i_hat, &target.i) && near(&report.s_hat, &target.s);
        writeln!(w, "I_target={}", target.i)?;
        writeln!(w, "S_target={}", target.s)?;
        writeln!(w, "tol={tol}")?;
        writeln!(w, "target_ok={ok}")?;
        if !ok {
            outcome = Outcome::Mismatch;
        }
    }
    w.flush()?;
    Ok(outcome)
}

pub fn region(m: usize, out: Option<&Path>, target: Option<(&str, &str)>) -> Result<Outcome> {
    if m == 0 {
        return Err(Error::InvalidParameter("M must be at least 1".into()));
    }
    if out.is_some() || target.is_none() {
        let mut w = sink(out)?;
        write_region_csv(&region_geometry(m), &mut w)?;
        w.flush()?;
    }
    if let Some((i, s)) = target {
        let p = pair(i, s)?;
        let report = admissibility(&p.i, &p.s, m);
        let ks: Vec<String> = report.admissible.iter().map(|k| k.to_string()).collect();
        println!("I={}", p.i);
        println!("S={}", p.s);
        println!("M={m}");
        println!("admissible_K={}", if ks.is_empty() { "none".into() } else { ks.join(",") });
        let k_prime = report.k_prime.ok_or_else(|| Error::Inadmissible {
            i: p.i.to_string(),
            s: p.s.to_string(),
            detail: format!(" for M = {m}"),
        })?;
        let (lo, hi) = hausdorff_bounds(&p.i, &p.s, m)?;
        println!("K_prime={k_prime}");
        println!("hausdorff_lower={lo}");
        println!("hausdorff_upper={hi}");
        println!("measure={}", measure_constant(&p.i, &p.s, m));
    }
    Ok(Outcome::Ok)
}
