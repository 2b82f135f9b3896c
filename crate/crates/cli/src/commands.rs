//! The subcommands.

use std::io::Write;
use std::time::{Duration, Instant};

use carlitz_core::appell::corollary_closed;
use carlitz_core::{ACResult, AppellFamily, CarlitzContext, Method};

use crate::args::{Command, Format, Job, JobArgs, LemmaArgs, MethodSel, SeriesArgs, SeriesKind};
use crate::family_file::render_family;
use crate::lemmas::check_lemmas;
use crate::output::{text_line, Record, SeriesJson};
use crate::Failure;

const BUCKET: usize = 10;

pub fn dispatch(command: &Command, out: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Compute(a) => compute(a, out),
        Command::Crosscheck(a) => crosscheck(a, out),
        Command::Bench(a) => bench(a, out),
        Command::Lemmas(a) => lemmas(a, out),
        Command::Series(a) => series(a, out),
    }
}

fn io(e: std::io::Error) -> Failure {
    Failure::compute(format!("write failed: {e}"))
}

/// Every planned method's values, computed in parallel, in plan order.
pub fn compute_all(job: &Job) -> Result<Vec<(Method, Vec<ACResult>)>, Failure> {
    let plan = job.plan();
    let results: Vec<carlitz_core::Result<Vec<ACResult>>> = std::thread::scope(|s| {
        let handles: Vec<_> =
            plan.iter().map(|&(m, upto)| s.spawn(move || job.family.compute(m, job.ell, upto))).collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    plan.iter().zip(results).map(|(&(m, _), r)| Ok((m, r.map_err(Failure::compute)?))).collect()
}

/// Results ordered by `n`, then method name.
fn rows(columns: &[(Method, Vec<ACResult>)], n_max: usize) -> Vec<Vec<&ACResult>> {
    (0..=n_max).map(|n| columns.iter().filter_map(|(_, v)| v.get(n)).collect()).collect()
}

fn compute(a: &JobArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let job = a.job(MethodSel::Listed(vec![Method::Inversion]))?;
    let columns = compute_all(&job)?;
    let tag = columns.len() > 1;
    for row in rows(&columns, job.n_max) {
        for res in row {
            let line = match job.format {
                Format::Text => text_line(res, tag),
                Format::Json => Record::from_result(res).to_json(),
            };
            writeln!(out, "{line}").map_err(io)?;
        }
    }
    Ok(())
}

/// The first index where the methods disagree, with every method's value there.
pub fn first_mismatch(columns: &[(Method, Vec<ACResult>)], n_max: usize) -> Option<(usize, Vec<&ACResult>)> {
    rows(columns, n_max).into_iter().enumerate().find(|(_, row)| row.windows(2).any(|w| w[0].value != w[1].value))
}

fn crosscheck(a: &JobArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let job = a.job(MethodSel::All)?;
    let columns = compute_all(&job)?;
    if columns.len() < 2 {
        return Err(Failure::usage("crosscheck needs at least two applicable methods"));
    }
    if let Some((n, row)) = first_mismatch(&columns, job.n_max) {
        writeln!(out, "MISMATCH at n={n}").map_err(io)?;
        for res in row {
            writeln!(out, "n={n} method={} value={}", res.method, res.value).map_err(io)?;
        }
        return Err(Failure::mismatch(format!("methods disagree at n={n}")));
    }
    writeln!(out, "OK ({} values, {} methods)", job.n_max + 1, columns.len()).map_err(io)?;
    Ok(())
}

/// Computes `AC_n` alone by `method`; sequence methods compute their prefix.
fn value_at(family: &AppellFamily, method: Method, ell: u32, n: usize) -> carlitz_core::Result<ACResult> {
    match method {
        Method::Closed => family.closed(ell, n),
        Method::Partition => family.partition(n),
        Method::Determinant => family.determinant(ell, n),
        Method::Corollary => corollary_closed(family.label(), family.ctx(), ell, n),
        _ => Ok(family.compute(method, ell, n)?.pop().expect("prefix is nonempty")),
    }
}

fn bench(a: &JobArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let job = a.job(MethodSel::All)?;
    let columns = compute_all(&job)?;
    if let Some((n, row)) = first_mismatch(&columns, job.n_max) {
        writeln!(out, "MISMATCH at n={n}").map_err(io)?;
        for res in row {
            writeln!(out, "n={n} method={} value={}", res.method, res.value).map_err(io)?;
        }
        return Err(Failure::mismatch(format!("methods disagree at n={n}; no timings reported")));
    }
    let buckets = job.n_max / BUCKET + 1;
    let mut header = String::from("method");
    for b in 0..buckets {
        let hi = ((b + 1) * BUCKET - 1).min(job.n_max);
        header.push_str(&format!(",n{}-{}_us", b * BUCKET, hi));
    }
    header.push_str(",total_us");
    writeln!(out, "{header}").map_err(io)?;
    for (method, values) in &columns {
        let mut times = vec![None::<Duration>; buckets];
        for n in 0..values.len() {
            let start = Instant::now();
            value_at(&job.family, *method, job.ell, n).map_err(Failure::compute)?;
            let slot = times[n / BUCKET].get_or_insert(Duration::ZERO);
            *slot += start.elapsed();
        }
        let total: Duration = times.iter().flatten().sum();
        let mut line = method.name().to_string();
        for t in &times {
            match t {
                Some(t) => line.push_str(&format!(",{}", t.as_micros())),
                None => line.push(','),
            }
        }
        line.push_str(&format!(",{}", total.as_micros()));
        writeln!(out, "{line}").map_err(io)?;
    }
    Ok(())
}

fn lemmas(a: &LemmaArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let field = a.field.build()?;
    if a.m_max == 0 {
        return Err(Failure::usage("--m-max must be at least 1"));
    }
    writeln!(out, "seed={}", a.seed).map_err(io)?;
    let report = check_lemmas(&field, a.seed, a.cases, a.m_max).map_err(Failure::compute)?;
    for f in &report.failures {
        writeln!(out, "{f}").map_err(io)?;
    }
    if !report.passed() {
        return Err(Failure::mismatch(format!("{} lemma checks failed (seed={})", report.failures.len(), a.seed)));
    }
    writeln!(out, "OK ({} checks on {} series, r={})", report.checks, report.series, report.r).map_err(io)?;
    Ok(())
}

fn series(a: &SeriesArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let field = a.field.build()?;
    let ctx = CarlitzContext::for_order(&field, a.order).map_err(Failure::compute)?;
    let s = match a.kind {
        SeriesKind::Exp => ctx.exp_series(a.order),
        SeriesKind::Log => ctx.log_series(a.order),
        SeriesKind::Lambda => {
            if a.family == crate::args::FamilyArg::Custom {
                return Err(Failure::usage("--kind lambda needs a named family"));
            }
            ctx.lambda_series(a.family.label(), a.order)
        }
    }
    .map_err(Failure::compute)?;
    let text = match a.format {
        Format::Text => render_family(&s),
        Format::Json => format!("{}\n", serde_json::to_string(&SeriesJson::from_series(&s)).expect("serializes")),
    };
    write!(out, "{text}").map_err(io)
}
