//! Structured reports and parameter records for the command-line tool.
//!
//! Exact values are written as `a+b*e` strings in the report's field, whose
//! generator is the slope; decimal values are display-only approximations.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::iet::{normalize, IetSpec};
use crate::invariance::{decide, decide_params, DecisionReport, Synthesis, SynthesisOptions, Verdict};
use crate::qfield::{make_field, parse_field, Branch, Field, FieldDesc, QuadNum};
use crate::sturmian::{sigma01_params, sigma10_params, yasutomi};
use crate::substitution::orbit_complexity;

pub const PREVIEW_DIGITS: u32 = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldJson {
    #[serde(rename = "A")]
    pub a: i64,
    #[serde(rename = "B")]
    pub b: i64,
    #[serde(rename = "C")]
    pub c: i64,
    pub branch: String,
}

impl FieldJson {
    pub fn of(f: &FieldDesc) -> Result<Self> {
        let small = |n: &num_bigint::BigInt| {
            n.to_i64().ok_or_else(|| Error::Parse(format!("coefficient {n} does not fit in 64 bits")))
        };
        Ok(FieldJson {
            a: small(f.a())?,
            b: small(f.b())?,
            c: small(f.c())?,
            branch: f.branch().symbol().to_string(),
        })
    }

    pub fn to_field(&self) -> Result<Field> {
        let branch = match self.branch.as_str() {
            "+" => Branch::Plus,
            "-" => Branch::Minus,
            other => return Err(Error::Parse(format!("branch {other:?} is not + or -"))),
        };
        make_field(self.a, self.b, self.c, branch)
    }
}

/// A field given either as `"A,B,C[,+|-]"` or as an object.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldInput {
    Text(String),
    Coeffs(FieldJson),
}

impl FieldInput {
    pub fn to_field(&self) -> Result<Field> {
        match self {
            FieldInput::Text(s) => parse_field(s),
            FieldInput::Coeffs(j) => j.to_field(),
        }
    }
}

/// One parameter set: normalized `(eps, l, c)` or raw `(alpha1, alpha2,
/// alpha3, x0)`, as exact expressions in `field`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamSet {
    pub field: Option<FieldInput>,
    pub eps: Option<String>,
    pub l: Option<String>,
    pub c: Option<String>,
    pub alpha1: Option<String>,
    pub alpha2: Option<String>,
    pub alpha3: Option<String>,
    pub x0: Option<String>,
}

/// Parsed parameters, not yet validated as a spec.
#[derive(Debug, Clone)]
pub enum Params {
    Normalized { eps: QuadNum, l: QuadNum, c: QuadNum },
    Raw { alpha: [QuadNum; 3], x0: QuadNum },
}

impl ParamSet {
    pub fn parse(&self) -> Result<Params> {
        let field = self
            .field
            .as_ref()
            .ok_or_else(|| Error::Parse("missing field".into()))?
            .to_field()?;
        let get = |name: &str, v: &Option<String>| -> Result<QuadNum> {
            let s = v.as_deref().ok_or_else(|| Error::Parse(format!("missing {name}")))?;
            QuadNum::parse(&field, s)
        };
        let raw = [&self.alpha1, &self.alpha2, &self.alpha3, &self.x0];
        let normalized = [&self.eps, &self.l, &self.c];
        let any_raw = raw.iter().any(|v| v.is_some());
        let any_norm = normalized.iter().any(|v| v.is_some());
        match (any_norm, any_raw) {
            (true, true) => Err(Error::Parse("give either eps/l/c or alpha1..3/x0, not both".into())),
            (false, true) => Ok(Params::Raw {
                alpha: [get("alpha1", &self.alpha1)?, get("alpha2", &self.alpha2)?, get("alpha3", &self.alpha3)?],
                x0: get("x0", &self.x0)?,
            }),
            _ => Ok(Params::Normalized {
                eps: get("eps", &self.eps)?,
                l: get("l", &self.l)?,
                c: get("c", &self.c)?,
            }),
        }
    }

    /// Validated spec.
    pub fn spec(&self) -> Result<IetSpec> {
        match self.parse()? {
            Params::Normalized { eps, l, c } => IetSpec::new(&eps, &l, &c),
            Params::Raw { alpha, x0 } => normalize(&alpha[0], &alpha[1], &alpha[2], &x0),
        }
    }
}

/// The decision on a parameter set; degenerate lengths are reported before
/// the other constraints are validated.
pub fn decide_set(set: &ParamSet, opts: &SynthesisOptions) -> Result<(Option<IetSpec>, DecisionReport)> {
    match set.parse()? {
        Params::Normalized { eps, l, c } => {
            let rep = decide_params(&eps, &l, &c, opts)?;
            let spec = match rep.verdict {
                Verdict::Degenerate => IetSpec::new(&eps, &l, &c).ok(),
                _ => Some(IetSpec::new(&eps, &l, &c)?),
            };
            Ok((spec, rep))
        }
        Params::Raw { alpha, x0 } => {
            let spec = normalize(&alpha[0], &alpha[1], &alpha[2], &x0)?;
            let rep = decide(&spec, opts)?;
            Ok((Some(spec), rep))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawJson {
    pub alpha1: String,
    pub alpha2: String,
    pub alpha3: String,
    pub x0: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionsJson {
    pub sturm: bool,
    pub lower: String,
    pub upper: String,
    pub minus_c_conj: String,
    pub end_conj: String,
    pub minus_c_ok: bool,
    pub end_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChecksJson {
    pub fixed_point: bool,
    pub fixed_point_radius: i64,
    pub eigenvector: bool,
    pub homothety: bool,
    pub block_starts: bool,
    /// `C(n) = 2n+1` for `1 <= n <= n_max`, stable under doubling; only
    /// computed on request.
    pub complexity: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RetryJson {
    pub initial_s: u32,
    pub attempts: Vec<u32>,
    pub engaged: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SturmianJson {
    pub slope: String,
    pub intercept: String,
    pub invariant: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub verdict: String,
    pub field: Option<FieldJson>,
    pub eps: Option<String>,
    pub l: Option<String>,
    pub c: Option<String>,
    pub raw: Option<RawJson>,
    pub conditions: Option<ConditionsJson>,
    pub lambda: Option<String>,
    pub s: Option<u32>,
    #[serde(rename = "J")]
    pub j: Option<[String; 2]>,
    pub substitution: Option<BTreeMap<String, String>>,
    pub return_times: Option<[usize; 3]>,
    pub reversed: Option<bool>,
    pub retry: Option<RetryJson>,
    pub checks: Option<ChecksJson>,
    pub sturmian: Option<BTreeMap<String, SturmianJson>>,
    /// Decimal previews; approximate, for display only.
    pub approx: BTreeMap<String, String>,
}

fn preview(x: &QuadNum) -> String {
    x.to_decimal(PREVIEW_DIGITS)
}

impl Report {
    pub fn build(spec: Option<&IetSpec>, rep: &DecisionReport) -> Result<Self> {
        let mut approx = BTreeMap::new();
        let mut out = Report {
            verdict: rep.verdict.to_string(),
            field: None,
            eps: None,
            l: None,
            c: None,
            raw: None,
            conditions: None,
            lambda: None,
            s: None,
            j: None,
            substitution: None,
            return_times: None,
            reversed: None,
            retry: None,
            checks: None,
            sturmian: None,
            approx: BTreeMap::new(),
        };
        if let Some(spec) = spec {
            out.field = Some(FieldJson::of(spec.field())?);
            out.eps = Some(spec.eps().to_string());
            out.l = Some(spec.l().to_string());
            out.c = Some(spec.c().to_string());
            for (k, v) in [("eps", spec.eps()), ("l", spec.l()), ("c", spec.c())] {
                approx.insert(k.to_string(), preview(v));
            }
            out.raw = spec.raw().map(|r| RawJson {
                alpha1: r.alpha1.to_string(),
                alpha2: r.alpha2.to_string(),
                alpha3: r.alpha3.to_string(),
                x0: r.x0.to_string(),
            });
            if !spec.l().in_z_eps() {
                let mut st = BTreeMap::new();
                for (name, (a, x)) in [("sigma01", sigma01_params(spec)), ("sigma10", sigma10_params(spec))] {
                    st.insert(
                        name.to_string(),
                        SturmianJson { slope: a.to_string(), intercept: x.to_string(), invariant: yasutomi(&a, &x) },
                    );
                }
                out.sturmian = Some(st);
            }
        }
        if let Some(cond) = &rep.conditions {
            for (k, v) in [
                ("lower", &cond.lower),
                ("upper", &cond.upper),
                ("minus_c_conj", &cond.minus_c_conj),
                ("end_conj", &cond.end_conj),
            ] {
                approx.insert(k.to_string(), preview(v));
            }
            out.conditions = Some(ConditionsJson {
                sturm: cond.sturm,
                lower: cond.lower.to_string(),
                upper: cond.upper.to_string(),
                minus_c_conj: cond.minus_c_conj.to_string(),
                end_conj: cond.end_conj.to_string(),
                minus_c_ok: cond.minus_c_ok,
                end_ok: cond.end_ok,
            });
        }
        if let Some(syn) = &rep.synthesis {
            out.add_synthesis(syn, &mut approx);
        }
        out.approx = approx;
        Ok(out)
    }

    fn add_synthesis(&mut self, syn: &Synthesis, approx: &mut BTreeMap<String, String>) {
        self.lambda = Some(syn.unit.lambda.to_string());
        self.s = Some(syn.unit.s);
        self.j = Some([syn.returns.j.0.to_string(), syn.returns.j.1.to_string()]);
        approx.insert("lambda".into(), preview(&syn.unit.lambda));
        approx.insert("J_lo".into(), preview(&syn.returns.j.0));
        approx.insert("J_hi".into(), preview(&syn.returns.j.1));
        let mut sub = BTreeMap::new();
        for letter in *b"ABC" {
            let img = syn.substitution.image(letter).expect("three-letter alphabet");
            sub.insert((letter as char).to_string(), String::from_utf8_lossy(img).into_owned());
        }
        self.substitution = Some(sub);
        self.return_times = Some(syn.returns.return_times());
        self.reversed = Some(syn.reversed);
        self.retry = Some(RetryJson {
            initial_s: syn.initial_s,
            attempts: syn.attempts.clone(),
            engaged: syn.retried(),
        });
        self.checks = Some(ChecksJson {
            fixed_point: syn.checks.fixed_point,
            fixed_point_radius: syn.checks.fixed_point_radius,
            eigenvector: syn.checks.eigenvector,
            homothety: syn.checks.homothety,
            block_starts: syn.checks.block_starts,
            complexity: None,
        });
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        serde_json::to_string(self)
    }

    /// Fills `checks.complexity` with the factor-count test up to `n_max`.
    pub fn add_complexity(&mut self, spec: &IetSpec, n_max: usize) -> Result<()> {
        let prof = orbit_complexity(spec, n_max, 1000 * n_max as i64)?;
        let full = (1..=n_max).all(|n| prof.counts[n] == 2 * n + 1) && prof.stable();
        if let Some(ch) = self.checks.as_mut() {
            ch.complexity = Some(full);
        }
        Ok(())
    }

    /// Spec and substitution named by the report, re-parsed exactly.
    pub fn parse_back(&self) -> Result<(IetSpec, Option<QuadNum>, Option<crate::substitution::Substitution>)> {
        let field = self.field.as_ref().ok_or_else(|| Error::Parse("report has no field".into()))?.to_field()?;
        let get = |name: &str, v: &Option<String>| -> Result<QuadNum> {
            QuadNum::parse(&field, v.as_deref().ok_or_else(|| Error::Parse(format!("report has no {name}")))?)
        };
        let spec = IetSpec::new(&get("eps", &self.eps)?, &get("l", &self.l)?, &get("c", &self.c)?)?;
        let lambda = self.lambda.as_ref().map(|s| QuadNum::parse(&field, s)).transpose()?;
        let sub = match &self.substitution {
            Some(m) => {
                let img = |k: &str| m.get(k).cloned().ok_or_else(|| Error::Parse(format!("substitution lacks {k}")));
                Some(crate::substitution::Substitution::abc(&img("A")?, &img("B")?, &img("C")?)?)
            }
            None => None,
        };
        Ok((spec, lambda, sub))
    }
}
