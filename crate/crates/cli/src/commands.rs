use std::io::Write;
use std::path::Path;

use patchscope_core::grid::{
    assouad_estimate_with, auto_pairs_base, best_tangent, box_estimate, scale_range, ScalePair,
};
use patchscope_core::io::{format_point_set, read_point_set, write_point_set};
use patchscope_core::numtheory::{
    bhp_subsequence, classify_decay, find_3ap, gen_set, large_set_diagnostics, sieve_primes, Family, IntegerSequence,
};
use patchscope_core::patch::{best_patch_defect, steinhaus_defect};
use patchscope_core::{PointSet, Scalar};
use serde::Serialize;
use serde_json::json;

use crate::battery::{run_battery, BatteryConfig};
use crate::cli::{
    BoxArgs, Command, DimArgs, GenArgs, GenFamily, NumtheoryArgs, NumtheoryTask, PatchArgs, ScaleArgs, SteinhausArgs,
    TangentArgs, VerifyArgs,
};
use crate::Failure;

pub(crate) fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Gen(a) => gen(a, out),
        Command::Dim(a) => dim(a, out),
        Command::Box(a) => boxes(a, out),
        Command::Patch(a) => patch(a, out),
        Command::Steinhaus(a) => steinhaus(a, out),
        Command::Tangent(a) => tangent(a, out),
        Command::Numtheory(a) => numtheory(a, out),
        Command::Verify(a) => verify(a, out, err),
    }
}

fn write_json(out: &mut dyn Write, value: &impl Serialize) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Usage(e.to_string()))?;
    writeln!(out, "{text}")?;
    Ok(())
}

fn read(path: &Path) -> Result<PointSet, Failure> {
    Ok(read_point_set(path)?)
}

fn gen(a: GenArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let need_n = || a.n.ok_or_else(|| Failure::Usage("this family needs --n".into()));
    let family = match a.family {
        GenFamily::EP => Family::EP { p: a.p, n: need_n()? },
        GenFamily::UnionPatches => Family::UnionPatches { base: a.base, count: a.count, dim: a.dim },
        GenFamily::Squares => Family::Squares { n: need_n()? },
        GenFamily::PrimePowers => Family::PrimePowers { m: a.m, n: need_n()? },
        GenFamily::Primes => Family::Primes { n: need_n()? },
        GenFamily::Bhp => Family::Bhp { k_max: need_n()? },
        GenFamily::FullGrid => Family::FullGrid { depth: a.depth, dim: a.dim },
        GenFamily::Cantor => Family::Cantor { depth: a.depth },
    };
    let family = if a.reciprocal {
        if family.sequence().is_none() {
            return Err(Failure::Usage(format!("--reciprocal needs an integer family, got {family}")));
        }
        Family::Reciprocals { of: Box::new(family) }
    } else {
        family
    };
    let set = gen_set(&family)?;
    match a.output {
        Some(path) => {
            write_point_set(&path, &set)?;
            writeln!(out, "wrote {} points of {family} to {}", set.len(), path.display())?;
        }
        None => out.write_all(format_point_set(&set).as_bytes())?,
    }
    Ok(())
}

fn parse_pairs(spec: &str, base: u32) -> Result<Vec<ScalePair>, Failure> {
    spec.split(',')
        .map(|item| {
            let (a, b) = item
                .trim()
                .split_once(':')
                .ok_or_else(|| Failure::Usage(format!("pair {item:?} is not of the form a:b")))?;
            let parse = |s: &str| s.trim().parse::<i32>().map_err(|_| Failure::Usage(format!("bad exponent {s:?}")));
            Ok(ScalePair::power(base, parse(a)?, parse(b)?)?)
        })
        .collect()
}

fn pairs_for(set: &PointSet, s: &ScaleArgs) -> Result<Vec<ScalePair>, Failure> {
    if s.base < 2 {
        return Err(Failure::Usage("--base must be at least 2".into()));
    }
    match &s.pairs {
        Some(spec) => parse_pairs(spec, s.base),
        None => Ok(auto_pairs_base(set, s.base, s.levels)),
    }
}

fn dim(a: DimArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let set = read(&a.file)?;
    let pairs = pairs_for(&set, &a.scales)?;
    let report = assouad_estimate_with(&set, &pairs, a.scales.min_ratio)?;
    if a.csv {
        out.write_all(report.to_csv().as_bytes())?;
        Ok(())
    } else {
        write_json(out, &report)
    }
}

fn boxes(a: BoxArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let set = read(&a.file)?;
    let scales = match &a.scales {
        Some(spec) => spec.split(',').map(|s| s.trim().parse::<Scalar>()).collect::<Result<Vec<_>, _>>()?,
        None => {
            if a.base < 2 {
                return Err(Failure::Usage("--base must be at least 2".into()));
            }
            let (top, bottom) = scale_range(&set, a.base, a.levels);
            let b = Scalar::from(a.base as u64);
            (bottom..=top).rev().map(|e| b.pow(e)).collect()
        }
    };
    let report = box_estimate(&set, &scales)?;
    if a.csv {
        out.write_all(report.to_csv().as_bytes())?;
        Ok(())
    } else {
        write_json(out, &json!({ "rows": report.rows, "finest_slope": report.finest_slope() }))
    }
}

fn patch(a: PatchArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let set = read(&a.file)?;
    let report = best_patch_defect(&set, a.k, a.strategy)?;
    if a.json {
        write_json(out, &report)
    } else {
        writeln!(out, "{}", report.summary())?;
        Ok(())
    }
}

fn steinhaus(a: SteinhausArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let set = read(&a.file)?;
    let pattern = read(&a.pattern)?;
    let report = steinhaus_defect(&set, &pattern, a.strategy)?;
    if a.json {
        write_json(out, &report)
    } else {
        writeln!(out, "{}", report.summary())?;
        Ok(())
    }
}

fn tangent(a: TangentArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let set = read(&a.file)?;
    let pairs = pairs_for(&set, &a.scales)?;
    let (report, zoom) = best_tangent(&set, &pairs, a.scales.min_ratio, &a.resolution)?;
    let row = report.best();
    write_json(
        out,
        &json!({
            "estimate": report.estimate,
            "coarse": row.coarse,
            "fine": row.fine,
            "witness": row.witness,
            "similarity": zoom.similarity,
            "image_points": zoom.image.len(),
            "defect": zoom.defect,
            "defect_decimal": zoom.defect.to_f64(),
            "resolution": zoom.resolution,
            "discretization": zoom.discretization,
        }),
    )
}

fn numtheory(a: NumtheoryArgs, out: &mut dyn Write) -> Result<(), Failure> {
    match a.task {
        NumtheoryTask::Primes => {
            let n = a.n.ok_or_else(|| Failure::Usage("primes needs --N".into()))?;
            let primes = sieve_primes(n)?;
            write_json(out, &json!({ "n": n, "count": primes.len(), "largest": primes.last() }))
        }
        NumtheoryTask::Bhp => {
            let k = a.k.unwrap_or(200);
            let (seq, report) = bhp_subsequence(k)?;
            let decay = classify_decay(&seq.reciprocals()?)?;
            write_json(
                out,
                &json!({
                    "k_max": k,
                    "rows": report.rows,
                    "max_c": report.max_c,
                    "all_below_k4": report.all_below_k4,
                    "class": decay.class,
                    "decreasing_from": decay.decreasing_from,
                    "last_violation": decay.last_violation,
                    "linear_fit": decay.linear_fit,
                    "log_fit": decay.log_fit,
                }),
            )
        }
        NumtheoryTask::No3ap => {
            let family = Family::EP { p: a.p.unwrap_or(3), n: a.n.unwrap_or(300) };
            let set = gen_set(&family)?;
            let found = find_3ap(&set)?;
            write_json(out, &json!({ "family": family.to_string(), "points": set.len(), "progression": found }))
        }
        NumtheoryTask::Blocks => {
            let n = a.n.unwrap_or(1 << 16);
            let report = large_set_diagnostics(&IntegerSequence::primes(n)?, a.kmax.unwrap_or(14))?;
            write_json(out, &report)
        }
    }
}

fn verify(a: VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let mut config = match &a.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            BatteryConfig::from_json(&text)?
        }
        None => BatteryConfig::default(),
    };
    if let Some(k) = a.kmax {
        config.kmax = k;
    }
    let names = config.select(&a.families)?;
    let report = run_battery(&names, &config)?;
    let json = report.to_json();
    match &a.output {
        Some(path) => std::fs::write(path, &json)?,
        None => out.write_all(json.as_bytes())?,
    }
    for (family, flag) in report.flags() {
        let status = match (flag.passed, flag.asserted) {
            (true, _) => "PASS",
            (false, true) => "FAIL",
            (false, false) => "NOTE",
        };
        writeln!(err, "{status} {family} {}: {} [{}]", flag.name, flag.predicate, flag.observed)?;
    }
    match report.failed_assertions() {
        0 => Ok(()),
        n => Err(Failure::Assertion(n)),
    }
}
