//! Text and JSON renderings of computed numbers and series.

use carlitz_core::{ACResult, FamilyLabel, FieldSpec, RatFunc, TruncSeries};
use serde::{Deserialize, Serialize};

pub fn family_name(label: FamilyLabel) -> &'static str {
    match label {
        FamilyLabel::BernoulliCarlitz => "bernoulli-carlitz",
        FamilyLabel::CauchyCarlitz => "cauchy-carlitz",
        FamilyLabel::Custom => "custom",
    }
}

/// One JSON output line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub family: String,
    pub r: u64,
    pub ell: u32,
    pub n: usize,
    pub method: String,
    pub num: String,
    pub den: String,
}

impl Record {
    pub fn from_result(res: &ACResult) -> Self {
        let (num, den) = res.value.to_parts();
        Record {
            family: family_name(res.family).to_string(),
            r: res.r,
            ell: res.ell,
            n: res.n,
            method: res.method.name().to_string(),
            num,
            den,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }

    pub fn from_json(line: &str) -> serde_json::Result<Self> {
        serde_json::from_str(line)
    }

    /// The value, parsed back into canonical form.
    pub fn value(&self, field: &FieldSpec) -> carlitz_core::Result<RatFunc> {
        RatFunc::new(carlitz_core::Poly::parse(field, &self.num)?, carlitz_core::Poly::parse(field, &self.den)?)
    }
}

/// `BC_2 = 2 / T^3+2*T`, `CC_4^(2) = ...`, with a method tag when asked.
pub fn text_line(res: &ACResult, tag_method: bool) -> String {
    let sup = if res.ell == 1 { String::new() } else { format!("^({})", res.ell) };
    let mut line = format!("{}_{}{} = {}", res.family.symbol(), res.n, sup, res.value);
    if tag_method {
        line.push_str(&format!("  [{}]", res.method.name()));
    }
    line
}

/// `{"order": N, "coeffs": ["1", "0", "1 / T^3+2*T", ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub order: usize,
    pub coeffs: Vec<String>,
}

impl SeriesJson {
    pub fn from_series(s: &TruncSeries) -> Self {
        SeriesJson { order: s.order(), coeffs: s.coeffs().iter().map(ToString::to_string).collect() }
    }

    pub fn to_series(&self, field: &FieldSpec) -> carlitz_core::Result<TruncSeries> {
        let coeffs = self.coeffs.iter().map(|c| RatFunc::parse(field, c)).collect::<carlitz_core::Result<Vec<_>>>()?;
        if coeffs.len() != self.order {
            return Err(carlitz_core::Error::Parse(format!("order {} but {} coefficients", self.order, coeffs.len())));
        }
        TruncSeries::new(field, coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use carlitz_core::{AppellFamily, CarlitzContext, Method};

    #[test]
    fn record_shape_and_round_trip() {
        let f = FieldSpec::prime(3).unwrap();
        let fam = AppellFamily::bernoulli_carlitz(&f, 5).unwrap();
        let res = &fam.recurrence(1, 4).unwrap()[2];
        let rec = Record::from_result(res);
        let json = rec.to_json();
        assert_eq!(
            json,
            r#"{"family":"bernoulli-carlitz","r":3,"ell":1,"n":2,"method":"recurrence","num":"2","den":"T^3+2*T"}"#
        );
        let back = Record::from_json(&json).unwrap();
        assert_eq!(back, rec);
        assert_eq!(back.value(&f).unwrap(), res.value);
        assert_eq!(text_line(res, false), "BC_2 = 2 / T^3+2*T");
        assert_eq!(text_line(res, true), "BC_2 = 2 / T^3+2*T  [recurrence]");
        let hi = &fam.compute(Method::Inversion, 2, 2).unwrap()[2];
        assert!(text_line(hi, false).starts_with("BC_2^(2) = "));
    }

    #[test]
    fn series_json_round_trip() {
        let f = FieldSpec::prime(2).unwrap();
        let ctx = CarlitzContext::for_order(&f, 8).unwrap();
        let s = ctx.log_series(8).unwrap();
        let js = SeriesJson::from_series(&s);
        let text = serde_json::to_string(&js).unwrap();
        let back: SeriesJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_series(&f).unwrap(), s);
        let short = SeriesJson { order: 3, coeffs: vec!["1".into()] };
        assert!(short.to_series(&f).is_err());
    }
}
