//! Text formats: sequence and pattern files, and the CSV outputs.
//!
//! Every writer is deterministic; numbers that are not integers are printed
//! as fixed 12-digit decimals rounded half away from zero.

use std::io::{self, Write};

use crate::algebra::{Field, SequencePrefix};
use crate::analysis::deviation_profile;
use crate::bdm::{BdmStatistics, DiscrepancyPattern, Trajectory};
use crate::error::{Error, Result};
use crate::rational::{decimal, rational_decimal};
use crate::regions::RegionPiece;

pub const DECIMAL_DIGITS: u32 = 12;

/// Non-empty, non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_count(field: &str, line: usize, what: &str) -> Result<usize> {
    field
        .parse()
        .map_err(|_| Error::parse(line, format!("{what} `{field}` is not a nonnegative integer")))
}

/// Header `q_spec M N`, then `N` rows of `M` space-separated symbol codes.
pub fn write_sequence(seq: &SequencePrefix, out: &mut impl Write) -> io::Result<()> {
    writeln!(out, "{} {} {}", seq.field(), seq.sequences(), seq.len())?;
    let mut line = String::new();
    for row in seq.rows() {
        line.clear();
        for (j, a) in row.iter().enumerate() {
            if j > 0 {
                line.push(' ');
            }
            line.push_str(&a.code().to_string());
        }
        writeln!(out, "{line}")?;
    }
    Ok(())
}

pub fn parse_sequence(text: &str) -> Result<SequencePrefix> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header `q M N`"))?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    let [q, m, n] = parts[..] else {
        return Err(Error::parse(hline, "header must be `q M N`"));
    };
    let field: Field = q.parse().map_err(|e: Error| Error::parse(hline, e.to_string()))?;
    let m = parse_count(m, hline, "M")?;
    let n = parse_count(n, hline, "N")?;
    if m == 0 {
        return Err(Error::parse(hline, "M must be at least 1"));
    }
    let mut seq = SequencePrefix::new(field.clone(), m)?;
    let mut row = Vec::with_capacity(m);
    for (ln, line) in lines {
        if seq.len() == n {
            return Err(Error::parse(ln, format!("more than N = {n} rows")));
        }
        row.clear();
        for tok in line.split_whitespace() {
            let code: u32 = tok.parse().map_err(|_| Error::parse(ln, format!("`{tok}` is not a symbol code")))?;
            row.push(field.element(code).map_err(|e| Error::parse(ln, e.to_string()))?);
        }
        if row.len() != m {
            return Err(Error::parse(ln, format!("expected {m} symbols, found {}", row.len())));
        }
        seq.push_row(&row)?;
    }
    if seq.len() != n {
        return Err(Error::parse(text.lines().count().max(1), format!("expected {n} rows, found {}", seq.len())));
    }
    Ok(seq)
}

/// Header `M N`, then `N` lines of `M` characters, `1` for a nonzero discrepancy.
pub fn write_pattern(pattern: &DiscrepancyPattern, out: &mut impl Write) -> io::Result<()> {
    writeln!(out, "{} {}", pattern.sequences(), pattern.len())?;
    let mut line = String::with_capacity(pattern.sequences());
    for row in pattern.rows() {
        line.clear();
        line.extend(row.iter().map(|&f| if f { '1' } else { '0' }));
        writeln!(out, "{line}")?;
    }
    Ok(())
}

pub fn parse_pattern(text: &str) -> Result<DiscrepancyPattern> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header `M N`"))?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    let [m, n] = parts[..] else {
        return Err(Error::parse(hline, "header must be `M N`"));
    };
    let m = parse_count(m, hline, "M")?;
    let n = parse_count(n, hline, "N")?;
    let mut pattern = DiscrepancyPattern::new(m);
    let mut row = Vec::with_capacity(m);
    for (ln, line) in lines {
        if pattern.len() == n {
            return Err(Error::parse(ln, format!("more than N = {n} rows")));
        }
        row.clear();
        for c in line.chars() {
            match c {
                '0' => row.push(false),
                '1' => row.push(true),
                _ => return Err(Error::parse(ln, format!("unexpected character `{c}`"))),
            }
        }
        if row.len() != m {
            return Err(Error::parse(ln, format!("expected {m} flags, found {}", row.len())));
        }
        pattern.push_row(&row);
    }
    if pattern.len() != n {
        return Err(Error::parse(text.lines().count().max(1), format!("expected {n} rows, found {}", pattern.len())));
    }
    Ok(pattern)
}

/// `n,L,d,L_over_n` for `n = 1..=N`.
pub fn write_profile_csv(profile: &[usize], m: usize, out: &mut impl Write) -> io::Result<()> {
    writeln!(out, "n,L,d,L_over_n")?;
    let d = deviation_profile(profile, m);
    for (i, (&l, d)) in profile.iter().zip(&d).enumerate() {
        let n = i + 1;
        writeln!(out, "{n},{l},{d},{}", decimal(l as i128, n as i128, DECIMAL_DIGITS))?;
    }
    Ok(())
}

/// `n,d,b_1,...,b_K,L` for every recorded position.
pub fn write_trajectory_csv(trajectory: &Trajectory, out: &mut impl Write) -> io::Result<()> {
    let k = trajectory.sequences();
    let mut header = String::from("n,d");
    for j in 1..=k {
        header.push_str(&format!(",b_{j}"));
    }
    writeln!(out, "{header},L")?;
    for n in trajectory.start() + 1..=trajectory.end() {
        let mut line = format!("{n},{}", trajectory.drain(n));
        for b in trajectory.batteries(n) {
            line.push_str(&format!(",{b}"));
        }
        writeln!(out, "{line},{}", trajectory.linear_complexity(n))?;
    }
    Ok(())
}

/// `K,vertex_index,I,S`, one row per polygon vertex.
pub fn write_region_csv(pieces: &[RegionPiece], out: &mut impl Write) -> io::Result<()> {
    writeln!(out, "K,vertex_index,I,S")?;
    for piece in pieces {
        for (v, (i, s)) in piece.vertices.iter().enumerate() {
            writeln!(
                out,
                "{},{v},{},{}",
                piece.k,
                rational_decimal(i, DECIMAL_DIGITS),
                rational_decimal(s, DECIMAL_DIGITS)
            )?;
        }
    }
    Ok(())
}

/// Checkpoint statistics, preceded by `#` lines recording the run parameters.
pub fn write_stats_csv(stats: &BdmStatistics, out: &mut impl Write) -> io::Result<()> {
    let c = &stats.config;
    writeln!(out, "# q={} M={} n={} trials={} master_seed={} eps={}", c.q, c.m, c.n, c.trials, c.master_seed, c.eps)?;
    writeln!(out, "# trial seeds: splitmix64(master_seed, trial)")?;
    writeln!(out, "n,d_min,d_max,d_mean,frac_within_eps")?;
    for cp in &stats.checkpoints {
        let trials = cp.trials.max(1) as i128;
        writeln!(
            out,
            "{},{},{},{},{}",
            cp.n,
            cp.d_min,
            cp.d_max,
            decimal(cp.d_sum as i128, trials, DECIMAL_DIGITS),
            decimal(cp.within_eps as i128, trials, DECIMAL_DIGITS)
        )?;
    }
    Ok(())
}

/// One row per trial, ordered by trial index.
pub fn write_trials_csv(stats: &BdmStatistics, out: &mut impl Write) -> io::Result<()> {
    writeln!(out, "trial,seed,d,L,within_eps,invariant_violations")?;
    for t in &stats.trials {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            t.trial,
            t.seed,
            t.final_drain,
            t.final_complexity,
            u8::from(t.within_eps),
            t.invariant_violations
        )?;
    }
    Ok(())
}
