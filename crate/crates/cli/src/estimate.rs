use std::path::PathBuf;
use std::time::Instant;

use clap::ValueEnum;
use ksnake_core::estimators::*;

use crate::config::Settings;
use crate::error::{CliError, CliResult};
use crate::sample::sampler;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Statistic {
    Volume,
    Boundary,
    Returns,
    Range,
    Tightness,
    Mtp,
    Reversibility,
    Intersection,
    Phase,
}

impl Statistic {
    fn name(self) -> &'static str {
        match self {
            Statistic::Volume => "volume",
            Statistic::Boundary => "boundary",
            Statistic::Returns => "returns",
            Statistic::Range => "range",
            Statistic::Tightness => "tightness",
            Statistic::Mtp => "mtp",
            Statistic::Reversibility => "reversibility",
            Statistic::Intersection => "intersection",
            Statistic::Phase => "phase",
        }
    }

    /// Defaults filled in before the run, so the report records every value
    /// that was used.
    fn defaults(self) -> &'static [(&'static str, &'static str)] {
        match self {
            Statistic::Volume => &[("radius", "10,50,100"), ("trials", "10000")],
            Statistic::Boundary => &[("dim", "5"), ("radius", "16:256:x2"), ("trials", "100000")],
            Statistic::Returns => &[("dim", "1:5"), ("radius", "16,32,64"), ("trials", "10000")],
            Statistic::Range => &[
                ("dim", "4"),
                ("radius", "16,32,64"),
                ("c", "0.05,0.1,0.2"),
                ("eta", "0.25"),
                ("m", "4"),
                ("trials", "2000"),
            ],
            Statistic::Tightness => &[("lambda", "2,5,10,20"), ("radius", "32:512:x2"), ("trials", "10000")],
            Statistic::Mtp => &[("function", "all"), ("trials", "100000")],
            Statistic::Reversibility => &[("n", "1:5")],
            Statistic::Intersection => &[("dim", "1"), ("radius", "1:8"), ("trials", "10000")],
            Statistic::Phase => &[("dim", "1:6"), ("radius", "16:512:x2"), ("trials", "1000")],
        }
    }
}

fn functions(s: &Settings) -> CliResult<Vec<TransportFunction>> {
    let wanted = s.raw("function").unwrap_or("all");
    if wanted == "all" {
        return Ok(TransportFunction::builtins());
    }
    wanted
        .split(',')
        .map(|f| f.trim().parse::<TransportFunction>().map_err(CliError::from))
        .collect()
}

fn rows(stat: Statistic, s: &Settings, run: &RunConfig) -> CliResult<Vec<EstimateReport>> {
    let sm = sampler(s)?;
    let rows = match stat {
        Statistic::Volume => volume_scaling(&sm, &s.u32_grid("radius", "")?, run)?,
        Statistic::Boundary => boundary_decay(&sm, s.single_u32("dim", "")?, &s.u32_grid("radius", "")?, run)?,
        Statistic::Returns => {
            let generations = match s.raw("generations") {
                Some(_) => s.u32_grid("generations", "")?,
                None => Vec::new(),
            };
            let dims = s.u32_grid("dim", "")?;
            let mut rows = recurrence_profile(&sm, &dims, &s.u32_grid("radius", "")?, &generations, run)?;
            if s.raw("k").is_some() {
                rows.extend(per_vertex_returns(&sm, &dims, &s.u32_grid("k", "")?, run)?);
            }
            rows
        }
        Statistic::Phase => recurrence_profile(&sm, &s.u32_grid("dim", "")?, &s.u32_grid("radius", "")?, &[], run)?,
        Statistic::Range => {
            let p = RangeParams {
                dim: s.single_u32("dim", "")?,
                radii: s.u32_grid("radius", "")?,
                cs: s.f64_list("c", "")?,
                eta: s.get_or("eta", 0.25)?,
                m: s.get_or("m", 4.0)?,
            };
            range_linearity(&sm, &p, run)?
        }
        Statistic::Tightness => tightness_curve(&sm, &s.f64_list("lambda", "")?, &s.u32_grid("radius", "")?, run)?,
        Statistic::Mtp => {
            let mut rows = Vec::new();
            for f in functions(s)? {
                let r = s.get::<u32>("r_sample")?.unwrap_or(f.required_radius());
                rows.extend(mtp_check(&sm, f, r, run)?);
            }
            rows.extend(degree_biased_root_degree(&sm, run)?);
            rows
        }
        Statistic::Reversibility => {
            let ns: Vec<usize> = s.u32_grid("n", "")?.into_iter().map(|n| n as usize).collect();
            let mut rows = reversibility_report(&ns)?;
            for r in &mut rows {
                r.seed = run.seed;
            }
            rows
        }
        Statistic::Intersection => {
            intersection_profile(&sm, s.single_u32("dim", "")?, &s.u32_grid("radius", "")?, run)?
        }
    };
    Ok(rows)
}

pub fn run(stat: Statistic, mut s: Settings) -> CliResult<()> {
    match s.raw("statistic") {
        Some(recorded) if recorded != stat.name() => {
            return Err(CliError::Usage(format!(
                "config is for '{recorded}', not '{}'",
                stat.name()
            )))
        }
        _ => s.set("statistic", stat.name().to_string())?,
    }
    for (k, v) in stat.defaults() {
        s.fill(k, v);
    }
    s.fill("law", "geometric");
    let seed = s.seed()?;
    let format = s.format()?;
    let mut run = RunConfig::new(s.count("trials", 1)?, seed).with_workers(s.get_or("workers", 1usize)?);
    run.records = s.get::<PathBuf>("records")?;
    if let Some(path) = &run.records {
        // Records are appended per run; start from an empty file.
        std::fs::write(path, "")?;
    }

    let started = Instant::now();
    let rows = rows(stat, &s, &run)?;
    let mut table = ReportTable::new(&format!("estimate {}", stat.name()), seed, s.recorded());
    table.rows = rows;
    let elapsed = started.elapsed();
    table.set_wall_time(elapsed);
    let text = table.render(format)?;

    let summary = format!(
        "estimate {}: {} rows, seed {seed}, {:.2} s",
        stat.name(),
        table.rows.len(),
        elapsed.as_secs_f64()
    );
    match s.raw("out") {
        Some(path) => {
            std::fs::write(path, text)?;
            println!("{summary} -> {path}");
        }
        None => {
            print!("{text}");
            eprintln!("{summary}");
        }
    }
    Ok(())
}
