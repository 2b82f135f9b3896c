//! Command-line flags and their validation into a [`Job`].

use std::path::PathBuf;

use carlitz_core::ff::is_prime;
use carlitz_core::{AppellFamily, FamilyLabel, FieldSpec, Method};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::family_file::{field_with_modulus, parse_family_file};
use crate::Failure;

#[derive(Debug, Parser)]
#[command(name = "appell-carlitz", version, about = "Exact Appell-Carlitz numbers over F_r(T)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print AC_n^(ell) for n = 0..=n-max
    Compute(JobArgs),
    /// Compute with several methods and compare exactly
    Crosscheck(JobArgs),
    /// Time each method per block of ten indices, as CSV
    Bench(JobArgs),
    /// Check the Hasse-Teichmueller product, quotient and power rules on random series
    Lemmas(LemmaArgs),
    /// Print e_C, log_C or a family's lambda series
    Series(SeriesArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    BernoulliCarlitz,
    CauchyCarlitz,
    Custom,
}

impl FamilyArg {
    pub fn label(self) -> FamilyLabel {
        match self {
            FamilyArg::BernoulliCarlitz => FamilyLabel::BernoulliCarlitz,
            FamilyArg::CauchyCarlitz => FamilyLabel::CauchyCarlitz,
            FamilyArg::Custom => FamilyLabel::Custom,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct FieldArgs {
    /// Characteristic (a prime)
    #[arg(long)]
    pub p: Option<u64>,
    /// Extension degree
    #[arg(long, default_value_t = 1)]
    pub e: u32,
    /// Irreducible monic modulus in x over F_p, e.g. "x^2+x+1"
    #[arg(long)]
    pub modulus: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct JobArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[command(flatten)]
    pub field: FieldArgs,
    /// Order ell >= 1
    #[arg(long, default_value_t = 1)]
    pub ell: u32,
    #[arg(long, default_value_t = 10)]
    pub n_max: usize,
    /// closed, corollary, determinant, inversion, native, partition,
    /// recurrence, or all; repeatable
    #[arg(long = "method")]
    pub methods: Vec<String>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Lambda coefficients; required for the custom family
    #[arg(long)]
    pub family_file: Option<PathBuf>,
    /// Series truncation order (default n-max + 1)
    #[arg(long)]
    pub order: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct LemmaArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Random series per field
    #[arg(long, default_value_t = 200)]
    pub cases: usize,
    #[arg(long, default_value_t = 8)]
    pub m_max: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeriesKind {
    Exp,
    Log,
    Lambda,
}

#[derive(Debug, Clone, Args)]
pub struct SeriesArgs {
    #[arg(long, value_enum)]
    pub kind: SeriesKind,
    /// Family for --kind lambda
    #[arg(long, value_enum, default_value = "bernoulli-carlitz")]
    pub family: FamilyArg,
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long, default_value_t = 10)]
    pub order: usize,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

/// Which methods to run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MethodSel {
    /// Every method, each over the indices where it applies.
    All,
    Listed(Vec<Method>),
}

/// A validated request.
#[derive(Debug, Clone)]
pub struct Job {
    pub family: AppellFamily,
    pub ell: u32,
    pub n_max: usize,
    pub methods: MethodSel,
    pub format: Format,
}

fn smallest_prime_power(p: u64) -> Option<(u64, u32)> {
    let q = (2..=p).find(|q| p.is_multiple_of(*q))?;
    let mut k = 0;
    let mut rest = p;
    while rest.is_multiple_of(q) {
        rest /= q;
        k += 1;
    }
    (rest == 1).then_some((q, k))
}

impl FieldArgs {
    pub fn build(&self) -> Result<FieldSpec, Failure> {
        let p = self.p.ok_or_else(|| Failure::usage("--p is required"))?;
        if !is_prime(p) {
            return Err(Failure::usage(match smallest_prime_power(p) {
                Some((q, k)) if k >= 2 => {
                    format!("characteristic must be prime; use --p {q} --e {k} --modulus ... for F_{p}")
                }
                _ => format!("characteristic must be prime; {p} is not"),
            }));
        }
        match (&self.modulus, self.e) {
            (None, 1) => FieldSpec::prime(p).map_err(Failure::usage_from),
            (None, _) => Err(Failure::usage(format!(
                "{}; pass --modulus with an irreducible polynomial of degree {} in x",
                carlitz_core::Error::MissingModulus,
                self.e
            ))),
            (Some(_), 1) => Err(Failure::usage_from(carlitz_core::Error::UnexpectedModulus)),
            (Some(m), e) => field_with_modulus(p, e, m).map_err(Failure::usage),
        }
    }
}

pub fn parse_methods(names: &[String]) -> Result<Option<MethodSel>, Failure> {
    if names.is_empty() {
        return Ok(None);
    }
    if names.iter().any(|n| n == "all") {
        return Ok(Some(MethodSel::All));
    }
    let mut methods = Vec::new();
    for name in names {
        let m: Method = name.parse().map_err(Failure::usage_from)?;
        if !methods.contains(&m) {
            methods.push(m);
        }
    }
    methods.sort();
    Ok(Some(MethodSel::Listed(methods)))
}

impl JobArgs {
    /// Validates flags and builds the family. `default` is used when no
    /// `--method` is given.
    pub fn job(&self, default: MethodSel) -> Result<Job, Failure> {
        if self.ell == 0 {
            return Err(Failure::usage("--ell must be at least 1"));
        }
        let methods = parse_methods(&self.methods)?.unwrap_or(default);
        let label = self.family.label();
        let family = match &self.family_file {
            Some(path) => {
                let mut lambda = parse_family_file(path).map_err(Failure::usage_from)?;
                if self.field.p.is_some() && self.field.build()? != *lambda.field() {
                    return Err(Failure::usage("--p/--e/--modulus disagree with the family file's field"));
                }
                if let Some(order) = self.order {
                    if order > lambda.order() {
                        return Err(Failure::usage(format!(
                            "--order {order} exceeds the family file's order {}",
                            lambda.order()
                        )));
                    }
                    lambda = lambda.truncate(order).map_err(Failure::usage_from)?;
                }
                AppellFamily::labeled(label, lambda).map_err(Failure::usage_from)?
            }
            None if label == FamilyLabel::Custom => {
                return Err(Failure::usage("--family custom needs --family-file"));
            }
            None => {
                let field = self.field.build()?;
                let order = self.order.unwrap_or(self.n_max + 1);
                AppellFamily::builtin(label, &field, order).map_err(Failure::compute)?
            }
        };
        let job = Job { family, ell: self.ell, n_max: self.n_max, methods, format: self.format };
        job.validate()?;
        Ok(job)
    }
}

impl Job {
    /// Module preconditions, checked before anything is computed.
    fn validate(&self) -> Result<(), Failure> {
        if self.n_max >= self.family.order() {
            return Err(Failure::compute(carlitz_core::Error::OrderUnderflow {
                index: self.n_max,
                order: self.family.order(),
            }));
        }
        if let MethodSel::Listed(methods) = &self.methods {
            for m in methods {
                m.check(self.family.label(), self.ell, self.n_max).map_err(Failure::compute)?;
            }
        }
        Ok(())
    }

    /// Each method to run with the largest index it covers, in output order.
    pub fn plan(&self) -> Vec<(Method, usize)> {
        let label = self.family.label();
        match &self.methods {
            MethodSel::Listed(methods) => methods.iter().map(|&m| (m, self.n_max)).collect(),
            MethodSel::All => Method::ALL
                .into_iter()
                .filter(|m| m.check(label, self.ell, 0).is_ok())
                .map(|m| {
                    let upto = (0..=self.n_max).rev().find(|&n| m.check(label, self.ell, n).is_ok()).unwrap_or(0);
                    (m, upto)
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(p: u64, e: u32, modulus: Option<&str>) -> Result<FieldSpec, Failure> {
        FieldArgs { p: Some(p), e, modulus: modulus.map(String::from) }.build()
    }

    #[test]
    fn field_flags() {
        assert_eq!(field(3, 1, None).unwrap().r(), 3);
        assert_eq!(field(2, 2, Some("x^2+x+1")).unwrap().r(), 4);
        let e = field(4, 1, None).unwrap_err();
        assert_eq!(e.code, 2);
        assert!(e.message.contains("characteristic must be prime; use --p 2 --e 2 --modulus ..."), "{}", e.message);
        assert!(field(6, 1, None).unwrap_err().message.contains("characteristic must be prime"));
        assert_eq!(field(2, 2, None).unwrap_err().code, 2);
        assert_eq!(field(2, 2, Some("x^2+1")).unwrap_err().code, 2);
        assert_eq!(field(3, 1, Some("x+1")).unwrap_err().code, 2);
    }

    #[test]
    fn method_lists() {
        let names = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        assert_eq!(parse_methods(&[]).unwrap(), None);
        assert_eq!(parse_methods(&names(&["recurrence", "all"])).unwrap(), Some(MethodSel::All));
        assert_eq!(
            parse_methods(&names(&["recurrence", "inversion", "recurrence"])).unwrap(),
            Some(MethodSel::Listed(vec![Method::Inversion, Method::Recurrence]))
        );
        assert_eq!(parse_methods(&names(&["fast"])).unwrap_err().code, 2);
    }

    #[test]
    fn plan_for_all_respects_caps() {
        let f = FieldSpec::prime(3).unwrap();
        let job = Job {
            family: AppellFamily::cauchy_carlitz(&f, 31).unwrap(),
            ell: 2,
            n_max: 30,
            methods: MethodSel::All,
            format: Format::Text,
        };
        let plan = job.plan();
        assert_eq!(
            plan,
            vec![
                (Method::Closed, 20),
                (Method::Corollary, 20),
                (Method::Determinant, 30),
                (Method::Inversion, 30),
                (Method::Recurrence, 30)
            ]
        );
    }
}
