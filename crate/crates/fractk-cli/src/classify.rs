//! `classify`: the index-arithmetic decisions, parameters given as JSON.

use clap::{Args, ValueEnum};
use fractk::spaces::{
    d0_density_decide, density_decide, kernel_window_check, nullity_classify, q1_equality_decide, Scale,
    SetDescriptor, SetKind, SpaceParams, Verdict,
};
use serde::Deserialize;

use crate::{to_json, CliError, Outcome};

#[derive(Args)]
pub struct ClassifyArgs {
    #[arg(value_enum)]
    question: Question,
    /// Parameters, e.g. `{"n":3,"d":2,"p":2,"s1":-0.9,"s2":-1.4}`.
    #[arg(long)]
    json: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Question {
    /// Is `{u ∈ A^s_{p,q} : supp u ⊂ Γ}` trivial?
    Nullity,
    /// Do the two subspaces attached to a domain coincide?
    Q1,
    /// Is the `s1` space on `Γ` dense in the `s2` one?
    Density,
    /// The same question for a single point, with finite-dimensional spaces.
    D0,
    /// Does `s` lie in the kernel window for trace order `m`?
    KernelWindow,
}

/// Union of every question's parameters; each question reads what it needs.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Params {
    n: u32,
    #[serde(default = "default_scale")]
    family: Scale,
    s: Option<f64>,
    p: Option<f64>,
    #[serde(default = "two")]
    q: f64,
    d: Option<f64>,
    m: Option<u32>,
    s1: Option<f64>,
    s2: Option<f64>,
    p1: Option<f64>,
    q1: Option<f64>,
    p2: Option<f64>,
    q2: Option<f64>,
    #[serde(default)]
    kind: Option<SetKind>,
    /// A full descriptor, overriding `kind` and `d`.
    set: Option<SetDescriptor>,
}

fn default_scale() -> Scale {
    Scale::H
}

fn two() -> f64 {
    2.0
}

fn need<T>(v: Option<T>, name: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("missing parameter {name:?}")))
}

impl Params {
    fn set(&self) -> Result<SetDescriptor, CliError> {
        if let Some(s) = self.set {
            return Ok(s);
        }
        let kind = self.kind.unwrap_or(SetKind::Dset);
        if kind == SetKind::Point {
            return Ok(SetDescriptor::point());
        }
        let d = need(self.d, "d")?;
        Ok(match kind {
            SetKind::Dset => SetDescriptor::dset(d, true),
            SetKind::Hyperplane => {
                if d.fract() != 0.0 || d < 0.0 {
                    return Err(CliError::Usage("a hyperplane needs integer d".into()));
                }
                SetDescriptor::hyperplane(d as u32)
            }
            SetKind::SmoothSubmanifold if d.fract() == 0.0 && d >= 0.0 => SetDescriptor::disc(d as u32),
            SetKind::ThickDomainClosure => SetDescriptor { d, ..SetDescriptor::snowflake_domain() },
            k => SetDescriptor { compact: true, ..SetDescriptor::new(k, d) },
        })
    }

    fn space(&self, s: f64) -> Result<SpaceParams, CliError> {
        Ok(SpaceParams::new(self.family, s, need(self.p, "p")?, self.q, self.n)?)
    }
}

fn decide(q: Question, p: &Params) -> Result<Verdict, CliError> {
    Ok(match q {
        Question::Nullity => nullity_classify(&p.space(need(p.s, "s")?)?, &p.set()?)?,
        Question::Q1 => q1_equality_decide(&p.set()?, &p.space(need(p.s, "s")?)?)?,
        Question::Density => {
            let s1 = need(p.s1, "s1")?;
            density_decide(s1, need(p.s2, "s2")?, &p.space(s1)?, &p.set()?)?
        }
        Question::D0 => {
            let p1 = need(p.p1.or(p.p), "p1")?;
            let p2 = p.p2.or(p.p).unwrap_or(p1);
            d0_density_decide(
                need(p.s1, "s1")?,
                p1,
                p.q1.unwrap_or(p.q),
                need(p.s2, "s2")?,
                p2,
                p.q2.unwrap_or(p.q),
                p.n,
            )?
        }
        Question::KernelWindow => {
            kernel_window_check(p.n, need(p.d, "d")?, need(p.p, "p")?, need(p.m, "m")?, need(p.s, "s")?)?
        }
    })
}

pub fn run(a: ClassifyArgs) -> Result<Outcome, CliError> {
    let params: Params = serde_json::from_str(&a.json).map_err(|e| CliError::Usage(format!("--json: {e}")))?;
    print!("{}", to_json(&decide(a.question, &params)?)?);
    Ok(Outcome::Ok)
}
