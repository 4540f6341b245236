use std::fmt::Write as _;

use serde_json::Value;
use wythoff::classical;
use wythoff::conjectures::{self, ConjectureId, ConjectureReport, Verdict};
use wythoff::cyclic::{self, PPair};
use wythoff::export;
use wythoff::general;
use wythoff::nim;
use wythoff::oracle::{self, PNGrid};
use wythoff::{Error, GameSpec, Position};

use crate::{
    Artifact, Check, ConjectureArgs, DifftableArgs, Engine, Failure, ImageFormat, PlotArgs,
    ReportFormat, SolveArgs, SolveFormat, TableEngine, VerifyArgs, VoxelArgs, VoxelFormat,
};

fn check_engine(engine: Engine, b: u64) -> Result<(), Failure> {
    if b == 0 {
        return Err(Error::ZeroStride.into());
    }
    match engine {
        Engine::ClosedForm if b != 1 => Err(Failure::usage(format!(
            "engine closed-form requires b = 1, got b = {b}"
        ))),
        Engine::Cyclic if !b.is_power_of_two() => Err(Failure::usage(format!(
            "engine cyclic requires a power of two, got b = {b}"
        ))),
        _ => Ok(()),
    }
}

/// First `count` P-positions in difference-table order from `engine`.
fn indexed(engine: Engine, b: u64, count: usize) -> Result<Vec<PPair>, Failure> {
    let pairs: Vec<(u64, u64)> = match engine {
        Engine::Oracle => oracle::oracle_indexed_pairs(b, count)?,
        Engine::ClosedForm => classical::cold_pairs()
            .take(count)
            .map(|c| (c.lower, c.upper))
            .collect(),
        Engine::Cyclic => return Ok(cyclic::stream_p_positions(b, count as u64)?.collect()),
        Engine::General => {
            let mut generated = count + 1;
            loop {
                let list = general::generate_bb(b, generated)?;
                match oracle::indexed_pairs(&list, b, count) {
                    Err(Error::InsufficientData { .. }) => generated *= 2,
                    other => break other?,
                }
            }
        }
    };
    Ok(pairs
        .into_iter()
        .enumerate()
        .map(|(n, (p, q))| PPair { n: n as u64, p, q })
        .collect())
}

/// P-positions with both coordinates below `bound`, in difference-table order.
fn indexed_below(engine: Engine, b: u64, bound: u64) -> Result<Vec<PPair>, Failure> {
    // every column holds at most one entry, so `bound` entries reach past it
    Ok(indexed(engine, b, bound as usize)?
        .into_iter()
        .take_while(|p| p.p < bound)
        .filter(|p| p.q < bound)
        .collect())
}

fn oracle_grid(b: u64, bound: u64) -> Result<PNGrid, Failure> {
    Ok(oracle::classify_box(&GameSpec::wythoff(b)?, &Position::pair(bound, bound))?)
}

fn pairs_csv(pairs: &[PPair]) -> Result<Vec<u8>, Failure> {
    let mut out = Vec::new();
    cyclic::write_pairs_csv(&mut out, pairs.iter().copied())?;
    Ok(out)
}

fn mismatch_message(r: &general::VerifyReport, engine: Engine) -> Option<String> {
    if r.passed() {
        return None;
    }
    let first = r.missing.first().or(r.extra.first()).copied().unwrap_or_default();
    Some(format!(
        "engine {} disagrees with the oracle for b = {} below {}: {} missing, {} extra, first at {first:?}",
        engine_name(engine),
        r.stride,
        r.bound,
        r.missing.len(),
        r.extra.len()
    ))
}

pub fn solve(args: &SolveArgs) -> Result<Artifact, Failure> {
    check_engine(args.engine, args.b)?;
    if let Some(count) = args.count {
        if args.format != SolveFormat::Csv {
            return Err(Failure::usage("grid formats need --bound, not --count"));
        }
        let pairs = indexed(args.engine, args.b, args.skip + count)?;
        return Ok(Artifact::ok(pairs_csv(&pairs[args.skip..])?));
    }
    let bound = args.bound.expect("clap requires --count or --bound");
    if bound == 0 {
        return Err(Error::EmptyBox.into());
    }
    let pairs = indexed_below(args.engine, args.b, bound)?;
    if args.format == SolveFormat::Csv {
        return Ok(Artifact::ok(pairs_csv(&pairs)?));
    }
    // images always come from the oracle; a constructive engine is checked against it
    let grid = oracle_grid(args.b, bound)?;
    let violation = if args.engine == Engine::Oracle {
        None
    } else {
        let r = general::compare_with_oracle(args.b, bound, pairs.iter().map(|p| (p.p, p.q)))?;
        mismatch_message(&r, args.engine)
    };
    let mut bytes = Vec::new();
    match args.format {
        SolveFormat::GridBinary => grid.write_pngrid(&mut bytes)?,
        SolveFormat::Pgm => export::write_pgm(&grid, &mut bytes)?,
        SolveFormat::Svg => export::write_svg(&grid, &mut bytes)?,
        SolveFormat::Csv => unreachable!(),
    }
    Ok(Artifact { bytes, violation })
}

pub fn difftable(args: &DifftableArgs) -> Result<Artifact, Failure> {
    let a = args.a;
    if a == 0 {
        return Err(Error::ZeroStride.into());
    }
    let count = args.count.unwrap_or((a * a) as usize);
    let values: Vec<i64> = match args.engine {
        TableEngine::Cyclic => {
            if !a.is_power_of_two() {
                return Err(Failure::usage(format!(
                    "engine cyclic requires a power of two, got a = {a}"
                )));
            }
            let table = cyclic::base_difference_table(a)?;
            (0..count as i64)
                .map(|i| table.extended(i).expect("non-negative index"))
                .collect()
        }
        TableEngine::Oracle => oracle::oracle_differences(a, count)?,
    };
    let mut out = String::from("index,d\n");
    for (i, d) in values.iter().enumerate() {
        writeln!(out, "{i},{d}").unwrap();
    }
    Ok(Artifact::ok(out.into_bytes()))
}

fn parameter_name(id: ConjectureId) -> &'static str {
    match id {
        ConjectureId::Grid | ConjectureId::Asymptote => "a",
        ConjectureId::CyclicGames => "b",
        ConjectureId::SierpinskiSponge => "scale",
    }
}

fn id_name(id: ConjectureId) -> String {
    serde_json::to_value(id)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

fn render_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// One line per record: `a=4: holds, count=16, expected=16`.
fn report_text(report: &ConjectureReport) -> String {
    let mut out = String::new();
    let verdict = if report.all_hold() { "no counterexample" } else { "counterexample found" };
    writeln!(out, "{} {}: {verdict}", id_name(report.id), report.range).unwrap();
    for r in &report.records {
        let verdict = match r.verdict {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Measured => "measured",
        };
        write!(out, "{}={}: {verdict}", parameter_name(r.id), r.parameter).unwrap();
        for (k, v) in &r.fields {
            write!(out, ", {k}={}", render_value(v)).unwrap();
        }
        for w in &r.witnesses {
            let values: Vec<String> = w.values.iter().map(i64::to_string).collect();
            write!(out, ", witness {}=[{}]", w.kind, values.join(",")).unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn conjecture(args: &ConjectureArgs) -> Result<Artifact, Failure> {
    let report = match &args.check {
        Check::Grid { a } => {
            if a.contains(&0) {
                return Err(Error::ZeroStride.into());
            }
            conjectures::scan_grid_conjecture(a)?
        }
        Check::Asymptote { a, n } => {
            if *a == 0 {
                return Err(Error::ZeroStride.into());
            }
            conjectures::check_asymptote(*a, *n)?
        }
        Check::CyclicScan { max_b, window } => {
            if *max_b == 0 {
                return Err(Failure::usage("--max-b must be positive"));
            }
            conjectures::scan_cyclic_games(*max_b, *window)?
        }
        Check::Sierpinski { bound } => {
            if *bound == 0 {
                return Err(Error::EmptyBox.into());
            }
            conjectures::sierpinski_analysis(*bound)?
        }
    };
    let bytes = match args.format {
        ReportFormat::ReportText => report_text(&report).into_bytes(),
        ReportFormat::Jsonl => {
            let mut out = Vec::new();
            report.write_jsonl(&mut out)?;
            out
        }
    };
    Ok(Artifact::ok(bytes))
}

pub fn plot(args: &PlotArgs) -> Result<Artifact, Failure> {
    if args.b == 0 {
        return Err(Error::ZeroStride.into());
    }
    if args.bound == 0 {
        return Err(Error::EmptyBox.into());
    }
    let grid = oracle_grid(args.b, args.bound)?;
    let mut bytes = Vec::new();
    match args.format {
        ImageFormat::Pgm => export::write_pgm(&grid, &mut bytes)?,
        ImageFormat::Svg => export::write_svg(&grid, &mut bytes)?,
    }
    Ok(Artifact::ok(bytes))
}

pub fn verify(args: &VerifyArgs) -> Result<Artifact, Failure> {
    check_engine(args.engine, args.b)?;
    if args.engine == Engine::Oracle {
        return Err(Failure::usage("verify compares a constructive engine with the oracle; pick another engine"));
    }
    if args.bound == 0 {
        return Err(Error::EmptyBox.into());
    }
    let pairs = indexed_below(args.engine, args.b, args.bound)?;
    let r = general::compare_with_oracle(args.b, args.bound, pairs.iter().map(|p| (p.p, p.q)))?;
    let status = if r.passed() { "ok" } else { "MISMATCH" };
    let text = format!(
        "b={} bound={} engine={}: {status}, cells={}, missing={}, extra={}\n",
        r.stride,
        r.bound,
        engine_name(args.engine),
        r.checked_cells,
        r.missing.len(),
        r.extra.len()
    );
    Ok(Artifact {
        bytes: text.into_bytes(),
        violation: mismatch_message(&r, args.engine),
    })
}

fn engine_name(engine: Engine) -> &'static str {
    match engine {
        Engine::Oracle => "oracle",
        Engine::ClosedForm => "closed-form",
        Engine::Cyclic => "cyclic",
        Engine::General => "general",
    }
}

pub fn voxels(args: &VoxelArgs) -> Result<Artifact, Failure> {
    if args.bound == 0 {
        return Err(Error::EmptyBox.into());
    }
    let grid = nim::wythoff3d_grid(args.bound)?;
    let mut bytes = Vec::new();
    match args.format {
        VoxelFormat::Csv => nim::write_voxels_csv(&grid, &mut bytes)?,
        VoxelFormat::GridBinary => grid.write_pngrid(&mut bytes)?,
    }
    Ok(Artifact::ok(bytes))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mismatch_becomes_violation() {
        let r = general::compare_with_oracle(2, 16, vec![(0, 0), (1, 1), (2, 4)]).unwrap();
        let msg = mismatch_message(&r, Engine::General).unwrap();
        assert!(msg.starts_with("engine general disagrees"), "{msg}");
        let ok = general::verify_against_oracle(2, 16).unwrap();
        assert!(mismatch_message(&ok, Engine::General).is_none());
    }

    #[test]
    fn general_engine_indexes_in_table_order() {
        let pairs = indexed(Engine::General, 2, 8).unwrap();
        let got: Vec<(u64, u64)> = pairs.iter().map(|p| (p.p, p.q)).collect();
        assert_eq!(got, [(0, 0), (1, 1), (2, 3), (3, 2), (4, 6), (5, 7), (8, 11), (9, 10)]);
    }

    #[test]
    fn report_text_lines() {
        let report = conjectures::check_grid_conjecture(2).unwrap();
        assert_eq!(report_text(&report), "grid a=2: no counterexample\na=2: holds, count=4, expected=4\n");
    }
}
