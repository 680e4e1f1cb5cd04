//! Index arithmetic for Besov, Triebel-Lizorkin and Bessel potential spaces
//! supported on closed sets.
//!
//! Every verdict is answered from a cited statement or comes back as
//! `Unknown`. Comparisons against window endpoints use a relative guard band
//! of `1e-12`; a query inside the band is treated as sitting on the endpoint.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::prefractal::Family;

const GUARD: f64 = 1e-12;

fn near(a: f64, b: f64) -> bool {
    (a - b).abs() <= GUARD * a.abs().max(b.abs()).max(1.0)
}

fn lt(a: f64, b: f64) -> bool {
    a < b && !near(a, b)
}

fn gt(a: f64, b: f64) -> bool {
    lt(b, a)
}

/// Rounds `x` to the nearest integer when it lies inside the guard band.
fn snap(x: f64) -> f64 {
    if near(x, x.round()) {
        x.round()
    } else {
        x
    }
}

fn is_integer(x: f64) -> bool {
    near(x, x.round())
}

/// Scale of function spaces. `H` is `F` with `q = 2` and `1 < p < ∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Scale {
    B,
    F,
    H,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpaceParams {
    pub family: Scale,
    pub s: f64,
    pub p: f64,
    pub q: f64,
    pub n: u32,
}

impl SpaceParams {
    pub fn new(family: Scale, s: f64, p: f64, q: f64, n: u32) -> Result<Self> {
        let sp = SpaceParams { family, s, p, q, n };
        sp.validate()?;
        Ok(sp)
    }

    /// `H^s_p(ℝⁿ)`.
    pub fn h(s: f64, p: f64, n: u32) -> Result<Self> {
        Self::new(Scale::H, s, p, 2.0, n)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.s.is_finite() || !(self.p > 0.0 && self.p.is_finite()) || !(self.q > 0.0 && self.q.is_finite()) {
            return Err(invalid("need finite s and 0 < p, q < ∞"));
        }
        if self.n == 0 {
            return Err(invalid("dimension n must be at least 1"));
        }
        if self.family == Scale::H && (self.q != 2.0 || self.p <= 1.0) {
            return Err(invalid("H spaces need q = 2 and 1 < p < ∞"));
        }
        Ok(())
    }

    /// True for `H`, and for `F` with `q = 2` and `1 < p < ∞`.
    fn is_bessel(&self) -> bool {
        match self.family {
            Scale::H => true,
            Scale::F => self.q == 2.0 && self.p > 1.0,
            Scale::B => false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SetKind {
    Dset,
    Point,
    Hyperplane,
    SnowflakeBoundary,
    /// A compact smooth `d`-dimensional manifold such as a flat disc.
    SmoothSubmanifold,
    ThickDomainClosure,
    Custom,
}

/// A closed set `Γ ⊂ ℝⁿ`, or a domain `Ω` for the equality questions.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SetDescriptor {
    pub kind: SetKind,
    pub d: f64,
    #[serde(default)]
    pub compact: bool,
    #[serde(default)]
    pub boundary_measure_zero: bool,
    /// Both `I`-thick and `E`-thick.
    #[serde(default)]
    pub thick: bool,
    #[serde(default)]
    pub e_thick: bool,
    #[serde(default)]
    pub i_thick: bool,
    /// `(Ω̄)° = Ω`.
    #[serde(default)]
    pub regular_open: bool,
}

impl SetDescriptor {
    pub fn new(kind: SetKind, d: f64) -> Self {
        SetDescriptor {
            kind,
            d,
            compact: false,
            boundary_measure_zero: false,
            thick: false,
            e_thick: false,
            i_thick: false,
            regular_open: false,
        }
    }

    pub fn dset(d: f64, compact: bool) -> Self {
        SetDescriptor { compact, ..Self::new(SetKind::Dset, d) }
    }

    pub fn point() -> Self {
        SetDescriptor { compact: true, ..Self::new(SetKind::Point, 0.0) }
    }

    pub fn hyperplane(d: u32) -> Self {
        Self::new(SetKind::Hyperplane, d as f64)
    }

    /// A compact flat `d`-disc.
    pub fn disc(d: u32) -> Self {
        SetDescriptor { compact: true, ..Self::new(SetKind::SmoothSubmanifold, d as f64) }
    }

    /// Boundary of a snowflake, with `d` taken from the similarity dimension.
    pub fn snowflake_boundary(family: &Family) -> Result<Self> {
        Ok(SetDescriptor { compact: true, ..Self::new(SetKind::SnowflakeBoundary, family.dimension()?) })
    }

    /// A snowflake domain: thick, with a boundary of measure zero.
    pub fn snowflake_domain() -> Self {
        SetDescriptor {
            boundary_measure_zero: true,
            thick: true,
            e_thick: true,
            i_thick: true,
            regular_open: true,
            ..Self::new(SetKind::ThickDomainClosure, 2.0)
        }
    }

    fn validate(&self, n: u32) -> Result<()> {
        let n = n as f64;
        if !(self.d >= 0.0 && self.d <= n) {
            return Err(invalid(format!("d = {} outside [0, {n}]", self.d)));
        }
        if self.kind == SetKind::Point && self.d != 0.0 {
            return Err(invalid("a point has d = 0"));
        }
        if matches!(self.kind, SetKind::Hyperplane | SetKind::SmoothSubmanifold) && !is_integer(self.d) {
            return Err(invalid("hyperplanes and smooth manifolds have integer dimension"));
        }
        Ok(())
    }

    /// A `d`-set with `0 < d < n`.
    fn is_proper_dset(&self, n: u32) -> bool {
        matches!(
            self.kind,
            SetKind::Dset | SetKind::Hyperplane | SetKind::SnowflakeBoundary | SetKind::SmoothSubmanifold
        ) && self.d > 0.0
            && self.d < n as f64
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Answer {
    Dense,
    NotDense,
    Null,
    NonNull,
    Equal,
    Trivial,
    Applies,
    Borderline,
    Unknown,
}

/// The yes/no reading of an [`Answer`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Polarity {
    Yes,
    No,
    Borderline,
    Unknown,
}

impl Answer {
    pub fn polarity(self) -> Polarity {
        match self {
            Answer::Dense | Answer::Null | Answer::Equal | Answer::Trivial | Answer::Applies => Polarity::Yes,
            Answer::NotDense | Answer::NonNull => Polarity::No,
            Answer::Borderline => Polarity::Borderline,
            Answer::Unknown => Polarity::Unknown,
        }
    }
}

/// Tags for the statements a verdict can rest on.
pub mod tags {
    pub const NULLITY: &str = "nullity-proposition";
    pub const NULLITY_THRESHOLD: &str = "nullity-threshold-remark";
    pub const THICK_A: &str = "thick-domain-corollary-A";
    pub const THICK_H: &str = "thick-domain-corollary-H";
    pub const E_THICK: &str = "e-thick-theorem";
    pub const E_THICK_H: &str = "e-thick-corollary-H";
    pub const I_THICK: &str = "i-thick-theorem";
    pub const NOT_NECESSARY: &str = "thickness-not-necessary-remark";
    pub const DENSITY: &str = "density-theorem";
    pub const LIMIT_CASE: &str = "density-limit-case-remark";
    pub const COUNTEREXAMPLE: &str = "density-counterexample-remark";
    pub const NON_INTEGER_OPEN: &str = "non-integer-optimality-remark";
    pub const HYPERPLANE: &str = "hyperplane-decomposition";
    pub const IDENTICAL: &str = "identical-spaces";
    pub const POINT: &str = "point-support-proposition";
    pub const KERNEL: &str = "kernel-proposition";
    pub const KERNEL_OPEN: &str = "kernel-limit-case-remark";
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub answer: Answer,
    pub polarity: Polarity,
    pub theorem: String,
    pub window: Option<[f64; 2]>,
    pub reason: String,
    /// Dimensions of the two spaces when both are finite dimensional.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub dims: Option<[u64; 2]>,
}

impl Verdict {
    fn new(answer: Answer, theorem: &str, reason: impl Into<String>) -> Self {
        Verdict { answer, polarity: answer.polarity(), theorem: theorem.into(), window: None, reason: reason.into(), dims: None }
    }

    fn window(mut self, lo: f64, hi: f64) -> Self {
        self.window = Some([lo, hi]);
        self
    }
}

/// `p′` with `1/p + 1/p′ = 1`.
pub fn conjugate_exponent(p: f64) -> Result<f64> {
    if !(p > 1.0) || p.is_infinite() {
        return Err(invalid(format!("conjugate exponent needs 1 < p < ∞, got {p}")));
    }
    Ok(p / (p - 1.0))
}

/// Is `Γ` null for `A^s_{p,q}`, that is, is `A^s_{p,q,Γ} = {0}`?
pub fn nullity_classify(sp: &SpaceParams, set: &SetDescriptor) -> Result<Verdict> {
    sp.validate()?;
    set.validate(sp.n)?;
    let n = sp.n as f64;
    if set.kind == SetKind::ThickDomainClosure || set.d >= n {
        return Err(Error::Precondition("the nullity statements need |Γ| = 0".into()));
    }
    if sp.p > 1.0 {
        let th = (set.d - n) / conjugate_exponent(sp.p)?;
        if gt(sp.s, th) {
            return Ok(Verdict::new(Answer::Null, tags::NULLITY, format!("s > (d-n)/p' = {th}")));
        }
        if lt(sp.s, th) {
            return Ok(Verdict::new(Answer::NonNull, tags::NULLITY, format!("s < (d-n)/p' = {th}")));
        }
        let remark_applies = sp.is_bessel()
            && set.is_proper_dset(sp.n)
            && (set.compact || set.kind == SetKind::Hyperplane);
        if remark_applies {
            return Ok(Verdict::new(Answer::Null, tags::NULLITY_THRESHOLD, format!("s = (d-n)/p' = {th}, compact d-set or hyperplane")));
        }
        return Ok(Verdict::new(Answer::Borderline, tags::NULLITY, format!("s = (d-n)/p' = {th} is an excluded case")));
    }
    let th = n * (1.0 / sp.p - 1.0);
    Ok(if gt(sp.s, th) {
        Verdict::new(Answer::Null, tags::NULLITY, format!("0 < p <= 1 and s > n(1/p-1) = {th}"))
    } else if lt(sp.s, th) {
        Verdict::new(Answer::NonNull, tags::NULLITY, format!("0 < p <= 1 and s < n(1/p-1) = {th}"))
    } else {
        Verdict::new(Answer::Borderline, tags::NULLITY, format!("0 < p <= 1 and s = n(1/p-1) = {th} is an excluded case"))
    })
}

/// Does `Ã^s_{p,q}(Ω) = A^s_{p,q,Ω̄}` hold? Never answers no.
pub fn q1_equality_decide(domain: &SetDescriptor, sp: &SpaceParams) -> Result<Verdict> {
    sp.validate()?;
    let (s, p, q, n) = (sp.s, sp.p, sp.q, sp.n as f64);
    let open_range = |x: f64| x > 1.0 && x.is_finite();
    if !domain.boundary_measure_zero {
        return Ok(Verdict::new(Answer::Unknown, tags::NOT_NECESSARY, "boundary measure not known to vanish"));
    }
    if domain.thick {
        if sp.is_bessel() {
            return Ok(Verdict::new(Answer::Equal, tags::THICK_H, "thick, |∂Ω| = 0, 1 < p < ∞"));
        }
        if open_range(p) && open_range(q) && !near(s, 0.0) {
            return Ok(Verdict::new(Answer::Equal, tags::THICK_A, "thick, |∂Ω| = 0, s ≠ 0, 1 < p, q < ∞"));
        }
    }
    let e_thick = domain.thick || domain.e_thick;
    let i_thick = domain.thick || domain.i_thick;
    if e_thick {
        if sp.is_bessel() && s >= 0.0 {
            return Ok(Verdict::new(Answer::Equal, tags::E_THICK_H, "E-thick, |∂Ω| = 0, s >= 0"));
        }
        let floor = match sp.family {
            Scale::F | Scale::H => n * (1.0 / p.min(q).min(1.0) - 1.0),
            Scale::B => n * (1.0 / p.min(1.0) - 1.0),
        };
        if gt(s, floor) {
            return Ok(Verdict::new(Answer::Equal, tags::E_THICK, format!("E-thick, |∂Ω| = 0, s > {floor}")));
        }
    }
    if i_thick && domain.regular_open && lt(s, 0.0) && open_range(p) && open_range(q) {
        return Ok(Verdict::new(Answer::Equal, tags::I_THICK, "I-thick, (Ω̄)° = Ω, |∂Ω| = 0, s < 0"));
    }
    let why = if domain.thick || domain.e_thick || domain.i_thick {
        "index range outside the cited statements"
    } else {
        "no thickness; thickness is sufficient but not necessary"
    };
    Ok(Verdict::new(Answer::Unknown, tags::NOT_NECESSARY, why))
}

/// The `m`-th density window `(−(n−d)/p′ − m − 1, −(n−d)/p′ − m)`, open at both ends.
pub fn density_window(n: u32, d: f64, p: f64, m: u32) -> Result<(f64, f64)> {
    let nf = n as f64;
    if !(d > 0.0 && d < nf) {
        return Err(invalid(format!("density windows need 0 < d < n, got d = {d}")));
    }
    // Step down one unit at a time so that consecutive windows differ by exactly 1.
    let mut hi = -(nf - d) / conjugate_exponent(p)?;
    for _ in 0..m {
        hi -= 1.0;
    }
    Ok((hi - 1.0, hi))
}

/// Is `A^{s1}_{p,q,Γ}` dense in `A^{s2}_{p,q,Γ}`? The smoothness `sp.s` is ignored.
pub fn density_decide(s1: f64, s2: f64, sp: &SpaceParams, set: &SetDescriptor) -> Result<Verdict> {
    sp.validate()?;
    set.validate(sp.n)?;
    if !s1.is_finite() || !s2.is_finite() {
        return Err(invalid("s1 and s2 must be finite"));
    }
    if lt(s1, s2) {
        return Err(invalid(format!("need s1 >= s2, got {s1} < {s2}")));
    }
    if set.kind == SetKind::Point {
        return d0_density_decide(s1, sp.p, sp.q, s2, sp.p, sp.q, sp.n);
    }
    if near(s1, s2) {
        return Ok(Verdict::new(Answer::Dense, tags::IDENTICAL, "s1 = s2, the spaces coincide"));
    }
    let at = |s: f64| SpaceParams { s, ..*sp };
    let v1 = nullity_classify(&at(s1), set)?;
    let v2 = nullity_classify(&at(s2), set)?;
    match (v1.answer, v2.answer) {
        (Answer::Null, Answer::NonNull) => {
            let tag = if v1.theorem == tags::NULLITY_THRESHOLD { tags::NULLITY_THRESHOLD } else { tags::NULLITY };
            return Ok(Verdict::new(Answer::NotDense, tag, "nullity"));
        }
        (Answer::Null, Answer::Null) => {
            return Ok(Verdict::new(Answer::Trivial, tags::NULLITY, "both spaces are {0}"));
        }
        _ => {}
    }
    let n = sp.n as f64;
    let theorem_family = sp.is_bessel() || (sp.family == Scale::B && sp.q > 1.0);
    if !(set.is_proper_dset(sp.n) && sp.p > 1.0 && theorem_family) {
        return Ok(Verdict::new(Answer::Unknown, tags::DENSITY, "hypotheses of the density theorem fail"));
    }
    let t0 = -(n - set.d) / conjugate_exponent(sp.p)?;
    // s1 ∈ [t0 − m − 1, t0 − m).
    let k1 = snap(t0 - s1);
    let m = (k1.ceil() - 1.0).max(0.0);
    let (lo, hi) = (t0 - m - 1.0, t0 - m);

    let hyperplane_h2 = set.kind == SetKind::Hyperplane
        && near(set.d, n - 1.0)
        && sp.is_bessel()
        && sp.p == 2.0;
    if hyperplane_h2 {
        // Dense iff lo <= s2 <= s1 < hi.
        return Ok(if !lt(s2, lo) {
            let tag = if near(s2, lo) || near(s1, lo) { tags::HYPERPLANE } else { tags::DENSITY };
            Verdict::new(Answer::Dense, tag, "window").window(lo, hi)
        } else {
            Verdict::new(Answer::NotDense, tags::HYPERPLANE, "counterexample").window(lo, hi)
        });
    }

    let s1_inside = gt(s1, lo) && lt(s1, hi);
    if s1_inside && gt(s2, lo) {
        return Ok(Verdict::new(Answer::Dense, tags::DENSITY, "window").window(lo, hi));
    }
    if s1_inside && near(s2, lo) {
        return Ok(Verdict::new(Answer::Unknown, tags::LIMIT_CASE, "limit case s2 = -(n-d)/p' - m - 1").window(lo, hi));
    }

    // The counterexample needs s2 < t0 − M < s1 for an integer M ≥ 1.
    let smooth = matches!(set.kind, SetKind::Hyperplane | SetKind::SmoothSubmanifold);
    let big_m = k1.floor() + 1.0;
    let cut = t0 - big_m;
    if lt(s2, cut) && lt(cut, s1) {
        if smooth && is_integer(set.d) {
            return Ok(Verdict::new(Answer::NotDense, tags::COUNTEREXAMPLE, format!("counterexample at s = -s_M with M = {big_m}"))
                .window(cut, cut));
        }
        return Ok(Verdict::new(Answer::Unknown, tags::NON_INTEGER_OPEN, "window straddled; optimality open for this set"));
    }
    Ok(Verdict::new(Answer::Unknown, tags::DENSITY, "no cited statement applies"))
}

fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128) as u64
}

/// `dim span{D^β δ : |β| < −s − n(1 − 1/p)}`.
pub fn point_space_dimension(n: u32, p: f64, s: f64) -> u64 {
    let t = snap(-s - n as f64 * (1.0 - 1.0 / p));
    if t <= 0.0 {
        return 0;
    }
    let top = t.ceil() as u64 - 1;
    binomial(top + n as u64, n as u64)
}

/// Density of `A^{s1}_{p1,q1,{0}}` in `A^{s2}_{p2,q2,{0}}`.
pub fn d0_density_decide(s1: f64, p1: f64, q1: f64, s2: f64, p2: f64, q2: f64, n: u32) -> Result<Verdict> {
    for x in [p1, q1, p2, q2] {
        if !(x > 0.0 && x.is_finite()) {
            return Err(invalid("exponents must lie in (0, ∞)"));
        }
    }
    if !s1.is_finite() || !s2.is_finite() || n == 0 {
        return Err(invalid("need finite s and n >= 1"));
    }
    let nf = n as f64;
    let a1 = snap(s1 + nf * (1.0 - 1.0 / p1));
    let a2 = snap(s2 + nf * (1.0 - 1.0 / p2));
    let dims = [point_space_dimension(n, p1, s1), point_space_dimension(n, p2, s2)];
    let (f1, f2) = (a1.floor(), a2.floor());
    let mut v = if a1 >= 0.0 && a2 >= 0.0 {
        Verdict::new(Answer::Trivial, tags::POINT, "both spaces are {0}")
    } else if f1 == f2 {
        Verdict::new(Answer::Equal, tags::POINT, format!("equal floors {f1}"))
    } else if f2 < 0.0 && f1 > f2 {
        Verdict::new(Answer::NotDense, tags::POINT, format!("floors {f1} > {f2}"))
    } else {
        Verdict::new(Answer::Unknown, tags::POINT, format!("floors {f1} < {f2}: not an inclusion covered by the statement"))
    };
    v.dims = Some(dims);
    Ok(v)
}

/// `N_m = #{β ∈ ℕ₀ⁿ : |β| ≤ m}`.
pub fn trace_codomain_size(n: u32, m: u32) -> u64 {
    binomial(n as u64 + m as u64, n as u64)
}

/// Whether `(n−d)/p + m < s < (n−d)/p + m + 1`, the window of the kernel identity.
pub fn kernel_window_check(n: u32, d: f64, p: f64, m: u32, s: f64) -> Result<Verdict> {
    let nf = n as f64;
    if !(d > 0.0 && d < nf) || !(p > 1.0 && p.is_finite()) || !s.is_finite() {
        return Err(invalid("kernel window needs 0 < d < n, 1 < p < ∞ and finite s"));
    }
    let lo = (nf - d) / p + m as f64;
    let hi = lo + 1.0;
    let v = if near(s, hi) {
        Verdict::new(Answer::Unknown, tags::KERNEL_OPEN, "open problem at s = (n-d)/p + m + 1")
    } else if gt(s, lo) && lt(s, hi) {
        Verdict::new(
            Answer::Applies,
            tags::KERNEL,
            "kernel identity; dual identification isomorphism; tilde-intersection corollary",
        )
    } else {
        Verdict::new(Answer::Unknown, tags::KERNEL, "hypothesis fails")
    };
    Ok(v.window(lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn koch_d() -> f64 {
        4f64.ln() / 3f64.ln()
    }

    #[test]
    fn conjugates() {
        assert_eq!(conjugate_exponent(2.0).unwrap(), 2.0);
        assert!((conjugate_exponent(4.0).unwrap() - 4.0 / 3.0).abs() < 1e-15);
        assert!((conjugate_exponent(1.5).unwrap() - 3.0).abs() < 1e-14);
        assert!(conjugate_exponent(1.0).is_err());
        assert!(conjugate_exponent(0.5).is_err());
    }

    #[test]
    fn nullity_examples() {
        let koch = SetDescriptor::snowflake_boundary(&Family::Classical { beta: std::f64::consts::FRAC_PI_6 }).unwrap();
        assert!((koch.d - koch_d()).abs() < 1e-12);
        let v = nullity_classify(&SpaceParams::h(0.0, 2.0, 2).unwrap(), &koch).unwrap();
        assert_eq!(v.answer, Answer::Null);
        let v = nullity_classify(&SpaceParams::h(-1.0, 2.0, 2).unwrap(), &koch).unwrap();
        assert_eq!(v.answer, Answer::NonNull);
        let th = (koch_d() - 2.0) / 2.0;
        let v = nullity_classify(&SpaceParams::h(th, 2.0, 2).unwrap(), &SetDescriptor::dset(koch_d(), true)).unwrap();
        assert_eq!((v.answer, v.theorem.as_str()), (Answer::Null, tags::NULLITY_THRESHOLD));
        // A non-compact d-set at the threshold is one of the delicate cases.
        let v = nullity_classify(&SpaceParams::h(th, 2.0, 2).unwrap(), &SetDescriptor::dset(koch_d(), false)).unwrap();
        assert_eq!(v.answer, Answer::Borderline);
        let custom = SetDescriptor::new(SetKind::Custom, 0.3);
        let v = nullity_classify(&SpaceParams::new(Scale::B, 3.0, 0.5, 1.0, 1).unwrap(), &custom).unwrap();
        assert_eq!(v.answer, Answer::Null);
        let v = nullity_classify(&SpaceParams::new(Scale::B, 1.0, 0.5, 1.0, 1).unwrap(), &custom).unwrap();
        assert_eq!(v.answer, Answer::Borderline);
    }

    #[test]
    fn nullity_rejects_full_measure() {
        let sp = SpaceParams::h(0.0, 2.0, 2).unwrap();
        assert!(nullity_classify(&sp, &SetDescriptor::dset(2.0, true)).is_err());
        assert!(nullity_classify(&sp, &SetDescriptor::snowflake_domain()).is_err());
    }

    #[test]
    fn h_params_are_checked() {
        assert!(SpaceParams::new(Scale::H, 0.0, 2.0, 3.0, 2).is_err());
        assert!(SpaceParams::new(Scale::H, 0.0, 1.0, 2.0, 2).is_err());
        assert!(SpaceParams::new(Scale::B, 0.0, 0.0, 2.0, 2).is_err());
    }

    #[test]
    fn equality_examples() {
        let dom = SetDescriptor::snowflake_domain();
        let v = q1_equality_decide(&dom, &SpaceParams::h(-7.0, 2.0, 2).unwrap()).unwrap();
        assert_eq!((v.answer, v.theorem.as_str()), (Answer::Equal, tags::THICK_H));
        let v = q1_equality_decide(&dom, &SpaceParams::new(Scale::B, 0.0, 2.0, 3.0, 2).unwrap()).unwrap();
        assert_eq!(v.answer, Answer::Unknown);
        let v = q1_equality_decide(&dom, &SpaceParams::new(Scale::B, 0.5, 2.0, 3.0, 2).unwrap()).unwrap();
        assert_eq!((v.answer, v.theorem.as_str()), (Answer::Equal, tags::THICK_A));
        let plain = SetDescriptor { thick: false, e_thick: false, i_thick: false, ..dom };
        let v = q1_equality_decide(&plain, &SpaceParams::h(1.0, 2.0, 2).unwrap()).unwrap();
        assert_eq!(v.answer, Answer::Unknown);
        // E-thick alone covers F with small p above its floor.
        let e = SetDescriptor { thick: false, i_thick: false, ..dom };
        let v = q1_equality_decide(&e, &SpaceParams::new(Scale::F, 2.5, 0.5, 0.5, 2).unwrap()).unwrap();
        assert_eq!((v.answer, v.theorem.as_str()), (Answer::Equal, tags::E_THICK));
        let v = q1_equality_decide(&e, &SpaceParams::new(Scale::F, 0.5, 0.5, 0.5, 2).unwrap()).unwrap();
        assert_eq!(v.answer, Answer::Unknown);
        let i = SetDescriptor { thick: false, e_thick: false, ..dom };
        let v = q1_equality_decide(&i, &SpaceParams::new(Scale::B, -0.5, 3.0, 3.0, 2).unwrap()).unwrap();
        assert_eq!((v.answer, v.theorem.as_str()), (Answer::Equal, tags::I_THICK));
    }

    #[test]
    fn window_examples() {
        assert_eq!(density_window(2, 1.0, 2.0, 0).unwrap(), (-1.5, -0.5));
        assert_eq!(density_window(2, 1.5, 2.0, 1).unwrap(), (-2.25, -1.25));
        assert!(density_window(2, 2.0, 2.0, 0).is_err());
        assert!(density_window(2, 0.0, 2.0, 0).is_err());
    }

    #[test]
    fn density_examples() {
        let h = |n| SpaceParams::h(0.0, 2.0, n).unwrap();
        let v = density_decide(-0.9, -1.4, &h(3), &SetDescriptor::hyperplane(2)).unwrap();
        assert_eq!(v.answer, Answer::Dense);
        assert_eq!(v.window, Some([-1.5, -0.5]));
        let koch = SetDescriptor::dset(koch_d(), true);
        let v = density_decide(0.0, -1.0, &h(2), &koch).unwrap();
        assert_eq!((v.answer, v.reason.as_str()), (Answer::NotDense, "nullity"));
        let v = density_decide(-1.4, -1.6, &h(3), &SetDescriptor::disc(2)).unwrap();
        assert_eq!((v.answer, v.theorem.as_str()), (Answer::NotDense, tags::COUNTEREXAMPLE));
        let v = density_decide(-1.0, -1.5, &h(3), &SetDescriptor::dset(2.0, true)).unwrap();
        assert_eq!((v.answer, v.theorem.as_str()), (Answer::Unknown, tags::LIMIT_CASE));
        // The flat hyperplane in the H, p = 2 scale includes the limit case.
        let v = density_decide(-1.0, -1.5, &h(3), &SetDescriptor::hyperplane(2)).unwrap();
        assert_eq!((v.answer, v.theorem.as_str()), (Answer::Dense, tags::HYPERPLANE));
        // Straddling for a fractal set is open.
        let v = density_decide(-1.3, -1.5, &h(2), &koch).unwrap();
        assert_eq!(v.answer, Answer::Unknown);
        assert!(density_decide(-1.0, 0.0, &h(2), &koch).is_err());
    }

    #[test]
    fn point_dimension_examples() {
        assert_eq!(point_space_dimension(2, 2.0, -3.0), 3);
        assert_eq!(point_space_dimension(1, 2.0, -2.0), 2);
        assert_eq!(point_space_dimension(2, 2.0, -1.0), 0);
        assert_eq!(point_space_dimension(3, 4.0, 10.0), 0);
    }

    #[test]
    fn d0_examples() {
        let v = d0_density_decide(1.0, 2.0, 2.0, 0.5, 2.0, 2.0, 1).unwrap();
        assert_eq!(v.answer, Answer::Trivial);
        let v = d0_density_decide(-1.6, 2.0, 2.0, -1.9, 2.0, 2.0, 1).unwrap();
        assert_eq!(v.answer, Answer::Equal);
        let v = d0_density_decide(-1.0, 2.0, 2.0, -2.0, 2.0, 2.0, 1).unwrap();
        assert_eq!(v.answer, Answer::NotDense);
        assert_eq!(v.dims, Some([1, 2]));
        // Routed from the general entry point.
        let v = density_decide(-1.0, -2.0, &SpaceParams::h(0.0, 2.0, 1).unwrap(), &SetDescriptor::point()).unwrap();
        assert_eq!(v.answer, Answer::NotDense);
    }

    #[test]
    fn trace_sizes() {
        assert_eq!(trace_codomain_size(2, 0), 1);
        assert_eq!(trace_codomain_size(2, 1), 3);
        assert_eq!(trace_codomain_size(3, 2), 10);
    }

    #[test]
    fn kernel_examples() {
        let v = kernel_window_check(2, 1.5, 2.0, 0, 0.4).unwrap();
        assert_eq!(v.answer, Answer::Applies);
        assert_eq!(v.window, Some([0.25, 1.25]));
        let v = kernel_window_check(2, 1.5, 2.0, 0, 1.25).unwrap();
        assert_eq!((v.answer, v.theorem.as_str()), (Answer::Unknown, tags::KERNEL_OPEN));
        let v = kernel_window_check(2, 1.5, 2.0, 0, 0.1).unwrap();
        assert_eq!((v.answer, v.reason.as_str()), (Answer::Unknown, "hypothesis fails"));
        assert!(kernel_window_check(2, 2.0, 2.0, 0, 0.4).is_err());
    }

    #[test]
    fn verdict_json_shape() {
        let v = density_decide(-0.9, -1.4, &SpaceParams::h(0.0, 2.0, 3).unwrap(), &SetDescriptor::hyperplane(2)).unwrap();
        let j = serde_json::to_value(&v).unwrap();
        assert_eq!(j["answer"], "Dense");
        assert_eq!(j["polarity"], "Yes");
        assert!(j.get("dims").is_none());
    }

    fn count_multi_indices(n: u32, t: f64) -> u64 {
        // |β| < t for β ∈ ℕ₀ⁿ, by direct enumeration.
        fn go(left: u32, budget: i64, t: f64, used: i64) -> u64 {
            if left == 0 {
                return ((used as f64) < t) as u64;
            }
            (0..=budget).map(|b| go(left - 1, budget - b, t, used + b)).sum()
        }
        if t <= 0.0 {
            return 0;
        }
        go(n, t.ceil() as i64, t, 0)
    }

    proptest! {
        #[test]
        fn conjugate_is_involution(p in 1.0001f64..1e4) {
            let pp = conjugate_exponent(conjugate_exponent(p).unwrap()).unwrap();
            prop_assert!((pp - p).abs() <= 1e-12 * p.max(1.0) * 10.0);
        }

        #[test]
        fn window_shift(n in 2u32..6, d_frac in 0.01f64..0.99, p in 1.01f64..20.0, m in 0u32..20) {
            let d = d_frac * n as f64;
            let (a, b) = density_window(n, d, p, m).unwrap();
            let (c, e) = density_window(n, d, p, m + 1).unwrap();
            prop_assert_eq!(c, a - 1.0);
            prop_assert_eq!(e, b - 1.0);
        }

        #[test]
        fn point_dimension_matches_enumeration(n in 1u32..=4, s in -12.0f64..2.0, p in 0.2f64..10.0) {
            let t = -s - n as f64 * (1.0 - 1.0 / p);
            prop_assert_eq!(point_space_dimension(n, p, s), count_multi_indices(n, snap(t)));
        }

        #[test]
        fn point_dimension_monotone(n in 1u32..=4, s in -10.0f64..1.0, ds in 0.0f64..3.0, p in 0.5f64..5.0) {
            prop_assert!(point_space_dimension(n, p, s + ds) <= point_space_dimension(n, p, s));
        }

        #[test]
        fn nullity_and_density_agree(
            n in 1u32..5,
            d_frac in 0.05f64..0.95,
            p in 1.05f64..8.0,
            s2 in -6.0f64..2.0,
            gap in 0.0f64..4.0,
            kind in 0usize..3,
        ) {
            let d = d_frac * n as f64;
            let set = match kind {
                0 => SetDescriptor::dset(d, true),
                1 => SetDescriptor::dset(d, false),
                _ => SetDescriptor::new(SetKind::Custom, d),
            };
            let sp = SpaceParams::h(0.0, p, n).unwrap();
            let v = density_decide(s2 + gap, s2, &sp, &set).unwrap();
            if v.answer == Answer::NotDense && v.reason == "nullity" {
                let a = nullity_classify(&SpaceParams { s: s2 + gap, ..sp }, &set).unwrap();
                let b = nullity_classify(&SpaceParams { s: s2, ..sp }, &set).unwrap();
                prop_assert_eq!(a.answer, Answer::Null);
                prop_assert_eq!(b.answer, Answer::NonNull);
            }
            if matches!(v.polarity, Polarity::Yes | Polarity::No) {
                prop_assert!(!v.theorem.is_empty());
            }
        }
    }
}
