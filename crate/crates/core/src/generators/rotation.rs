//! Codings of circle rotations with exact, certified arithmetic.
//!
//! The slope `θ` is given by a prefix `[a₀; a₁, …, a_d]` of its continued
//! fraction. Any irrational with that prefix lies strictly between the
//! convergent `p_d/q_d` and the mediant `(p_d + p_{d-1})/(q_d + q_{d-1})`.
//! Positions are evaluated with a rational slope inside that interval, and an
//! index is certified when no choice of slope in the interval moves its orbit
//! point across a cut. Cut points and the intercept may depend linearly on
//! `θ` (for example the characteristic Sturmian cut at `θ`).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::seqcore::{Alphabet, Sequence, SequenceSource, SourceKind, Symbol};
use crate::{Error, Result};

// Keeps every product below 2^126.
const MAX_DENOMINATOR: i128 = 1 << 62;

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn too_large() -> Error {
    Error::InvalidRotation("continued fraction too deep for exact 128-bit arithmetic".into())
}

/// Exact rational in lowest terms with a positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rational {
    num: i128,
    den: i128,
}

impl Rational {
    pub fn new(num: i128, den: i128) -> Result<Self> {
        if den == 0 {
            return Err(Error::Parse("zero denominator".into()));
        }
        let g = gcd(num, den).max(1);
        let sign = if den < 0 { -1 } else { 1 };
        Ok(Rational { num: sign * num / g, den: sign * den / g })
    }

    pub fn integer(n: i128) -> Self {
        Rational { num: n, den: 1 }
    }

    pub fn num(&self) -> i128 {
        self.num
    }

    pub fn den(&self) -> i128 {
        self.den
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid rational {s:?}"));
        match s.split_once('/') {
            Some((n, d)) => Rational::new(n.trim().parse().map_err(|_| bad())?, d.trim().parse().map_err(|_| bad())?),
            None => Ok(Rational::integer(s.trim().parse().map_err(|_| bad())?)),
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// A point `constant + theta·θ` on the circle, with rational `constant` and
/// integer `theta`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct SlopeAffine {
    pub constant: Rational,
    pub theta: i64,
}

impl SlopeAffine {
    pub fn rational(constant: Rational) -> Self {
        SlopeAffine { constant, theta: 0 }
    }

    pub fn theta_multiple(theta: i64) -> Self {
        SlopeAffine { constant: Rational::integer(0), theta }
    }
}

impl FromStr for SlopeAffine {
    type Err = Error;

    /// Accepts sums such as `1/3`, `theta`, `2*theta`, `1/2 + theta`, `1 - 2theta`.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty point".into()));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, c) in compact.char_indices() {
            if (c == '+' || c == '-') && i > 0 && !compact[..i].ends_with('/') {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);

        let mut constant = Rational::integer(0);
        let mut theta = 0i64;
        for term in terms {
            let (sign, body) = match term.strip_prefix('-') {
                Some(rest) => (-1, rest),
                None => (1, term.strip_prefix('+').unwrap_or(term)),
            };
            if let Some(coef) = body.strip_suffix("theta") {
                let coef = coef.strip_suffix('*').unwrap_or(coef);
                let c: i64 = if coef.is_empty() {
                    1
                } else {
                    coef.parse().map_err(|_| Error::Parse(format!("invalid theta coefficient in {s:?}")))?
                };
                theta += sign * c;
            } else {
                let r: Rational = body.parse()?;
                constant = Rational::new(
                    constant.num * r.den + sign as i128 * r.num * constant.den,
                    constant.den * r.den,
                )?;
            }
        }
        Ok(SlopeAffine { constant, theta })
    }
}

impl TryFrom<String> for SlopeAffine {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<SlopeAffine> for String {
    fn from(p: SlopeAffine) -> String {
        p.to_string()
    }
}

impl fmt::Display for SlopeAffine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.constant.num == 0, self.theta) {
            (_, 0) => write!(f, "{}", self.constant),
            (true, 1) => write!(f, "theta"),
            (true, t) => write!(f, "{t}*theta"),
            (false, t) if t < 0 => write!(f, "{}-{}*theta", self.constant, -t),
            (false, t) => write!(f, "{}+{}*theta", self.constant, t),
        }
    }
}

/// Left end of a half-open arc and the symbol it codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cut {
    pub at: SlopeAffine,
    pub label: Symbol,
}

/// Rotation by `θ` from `intercept`, coded by a partition of the circle.
///
/// Arc `j` is `[cuts[j], cuts[j+1])`; the last arc wraps around through 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RotationCoding {
    pub slope_cf: Vec<u64>,
    pub intercept: SlopeAffine,
    pub cuts: Vec<Cut>,
}

impl RotationCoding {
    /// Characteristic coding of slope `1/φ² = [0; 2, 1, 1, …]` started at
    /// `2θ`; this reproduces the Fibonacci fixed point of `0 → 01, 1 → 0`.
    pub fn fibonacci(depth: usize) -> Self {
        let mut cf = vec![0, 2];
        cf.extend(std::iter::repeat_n(1, depth.saturating_sub(1)));
        RotationCoding {
            slope_cf: cf,
            intercept: SlopeAffine::theta_multiple(2),
            cuts: vec![
                Cut { at: SlopeAffine::rational(Rational::integer(0)), label: 1 },
                Cut { at: SlopeAffine::theta_multiple(1), label: 0 },
            ],
        }
    }

    /// Slope `√2 − 1 = [0; 2, 2, …]` coded by the halves `[0, 1/2)`, `[1/2, 1)`.
    pub fn silver_halves(depth: usize) -> Self {
        let mut cf = vec![0];
        cf.extend(std::iter::repeat_n(2, depth.max(1)));
        RotationCoding {
            slope_cf: cf,
            intercept: SlopeAffine::rational(Rational::integer(0)),
            cuts: vec![
                Cut { at: SlopeAffine::rational(Rational::integer(0)), label: 0 },
                Cut { at: SlopeAffine::rational(Rational { num: 1, den: 2 }), label: 1 },
            ],
        }
    }

    pub fn depth(&self) -> usize {
        self.slope_cf.len().saturating_sub(1)
    }

    fn validate(&self) -> Result<()> {
        if self.slope_cf.len() < 2 {
            return Err(Error::InvalidRotation("need at least two continued-fraction coefficients".into()));
        }
        if self.slope_cf[1..].contains(&0) {
            return Err(Error::InvalidRotation("coefficients after a₀ must be at least 1".into()));
        }
        if self.cuts.is_empty() {
            return Err(Error::InvalidRotation("partition needs at least one cut".into()));
        }
        Ok(())
    }
}

/// Exact integer representation of the coding over a common denominator.
#[derive(Debug)]
struct Frame {
    denominator: i128,
    scale_r: i128,
    slope_lo: i128,
    slope_hi: i128,
    slope_mid: i128,
}

impl Frame {
    fn build(coding: &RotationCoding) -> Result<Frame> {
        let (mut p_prev, mut q_prev) = (1i128, 0i128);
        let (mut p, mut q) = (coding.slope_cf[0] as i128, 1i128);
        for &a in &coding.slope_cf[1..] {
            let a = a as i128;
            let p_next = a.checked_mul(p).and_then(|x| x.checked_add(p_prev)).ok_or_else(too_large)?;
            let q_next = a.checked_mul(q).and_then(|x| x.checked_add(q_prev)).ok_or_else(too_large)?;
            (p_prev, q_prev, p, q) = (p, q, p_next, q_next);
        }
        let (pm, qm) = (p + p_prev, q + q_prev);
        let w = q.checked_mul(qm).and_then(|x| x.checked_mul(2)).ok_or_else(too_large)?;
        let mut r = 1i128;
        let points = std::iter::once(coding.intercept).chain(coding.cuts.iter().map(|c| c.at));
        for pt in points {
            let d = pt.constant.den;
            r = (r / gcd(r, d)).checked_mul(d).ok_or_else(too_large)?;
        }
        let denominator = w.checked_mul(r).ok_or_else(too_large)?;
        if denominator > MAX_DENOMINATOR {
            return Err(too_large());
        }
        let convergent = 2 * p * qm;
        let mediant = 2 * pm * q;
        Ok(Frame {
            denominator,
            scale_r: r,
            slope_lo: convergent.min(mediant),
            slope_hi: convergent.max(mediant),
            slope_mid: p * qm + pm * q,
        })
    }

    fn constant(&self, c: Rational) -> i128 {
        c.num * (self.denominator / c.den)
    }

    /// Numerator (over `denominator`) of `pt` evaluated at slope numerator `t`.
    fn eval(&self, pt: SlopeAffine, slope: i128) -> i128 {
        self.constant(pt.constant) + pt.theta as i128 * slope * self.scale_r
    }
}

#[derive(Debug)]
struct Rotation {
    alphabet: Alphabet,
    denominator: i128,
    step: i128,
    start_constant: i128,
    start_theta: i128,
    cut_points: Vec<i128>,
    labels: Vec<Symbol>,
}

impl Sequence for Rotation {
    fn at(&self, n: usize) -> Symbol {
        let d = self.denominator;
        let coef = (self.start_theta + n as i128).rem_euclid(d);
        let point = (self.start_constant + coef * self.step).rem_euclid(d);
        let arc = self.cut_points.partition_point(|&c| c <= point);
        if arc == 0 {
            *self.labels.last().expect("non-empty partition")
        } else {
            self.labels[arc - 1]
        }
    }

    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn kind(&self) -> SourceKind {
        SourceKind::Rotation
    }
}

/// Builds the coding and certifies that its first `length_guarantee` symbols
/// agree with the true irrational rotation.
///
/// Indices past the guarantee are still computed with the same rational
/// slope, but carry no certificate.
pub fn rotation_source(coding: &RotationCoding, length_guarantee: usize) -> Result<SequenceSource> {
    coding.validate()?;
    let frame = Frame::build(coding)?;
    let d = frame.denominator;

    // Cut order must hold for every admissible slope.
    let mut bounds: Vec<SlopeAffine> = vec![SlopeAffine::rational(Rational::integer(0))];
    bounds.extend(coding.cuts.iter().map(|c| c.at));
    bounds.push(SlopeAffine::rational(Rational::integer(1)));
    for slope in [frame.slope_lo, frame.slope_hi, frame.slope_mid] {
        let values: Vec<i128> = bounds.iter().map(|&b| frame.eval(b, slope)).collect();
        for (i, pair) in values.windows(2).enumerate() {
            let first_gap = i == 0;
            let ok = if slope == frame.slope_mid && !first_gap { pair[0] < pair[1] } else { pair[0] <= pair[1] };
            if !ok {
                return Err(Error::InvalidRotation(
                    "cut points must be strictly increasing within [0, 1)".into(),
                ));
            }
        }
    }

    let cut_points: Vec<i128> = coding.cuts.iter().map(|c| frame.eval(c.at, frame.slope_mid)).collect();
    let labels: Vec<Symbol> = coding.cuts.iter().map(|c| c.label).collect();
    let alphabet = Alphabet::new(crate::seqcore::observed_symbols(&labels))?;

    let certified = if coding.cuts.len() == 1 {
        length_guarantee
    } else {
        certify(coding, &frame, length_guarantee)
    };
    if certified < length_guarantee {
        return Err(Error::PrecisionExhausted {
            depth: coding.depth(),
            certified,
            requested: length_guarantee,
        });
    }

    Ok(SequenceSource::new(Rotation {
        alphabet,
        denominator: d,
        step: (frame.slope_mid * frame.scale_r).rem_euclid(d),
        start_constant: frame.constant(coding.intercept.constant),
        start_theta: coding.intercept.theta as i128,
        cut_points,
        labels,
    }))
}

/// Number of leading indices whose symbol is independent of the unknown
/// continued-fraction tail.
fn certify(coding: &RotationCoding, frame: &Frame, limit: usize) -> usize {
    let d = frame.denominator;
    for n in 0..limit {
        for cut in &coding.cuts {
            let coef = coding.intercept.theta as i128 + n as i128 - cut.at.theta as i128;
            if coef == 0 {
                continue;
            }
            let base = frame.constant(coding.intercept.constant) - frame.constant(cut.at.constant);
            let a = base + coef * frame.slope_lo * frame.scale_r;
            let b = base + coef * frame.slope_hi * frame.scale_r;
            let (lo, hi) = (a.min(b), a.max(b));
            let next_integer = (lo.div_euclid(d) + 1) * d;
            if next_integer < hi {
                return n;
            }
        }
    }
    limit
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{substitution_source, SubstitutionRule};

    #[test]
    fn parses_points() {
        let p: SlopeAffine = "1/2 + theta".parse().unwrap();
        assert_eq!(p, SlopeAffine { constant: Rational::new(1, 2).unwrap(), theta: 1 });
        let p: SlopeAffine = "1-2*theta".parse().unwrap();
        assert_eq!(p.theta, -2);
        assert_eq!(p.to_string(), "1-2*theta");
        let p: SlopeAffine = "-3/4".parse().unwrap();
        assert_eq!(p.constant, Rational::new(-3, 4).unwrap());
        assert_eq!("2theta".parse::<SlopeAffine>().unwrap().theta, 2);
        assert!("1/0".parse::<SlopeAffine>().is_err());
        assert!("x".parse::<SlopeAffine>().is_err());
    }

    #[test]
    fn golden_rotation_is_fibonacci() {
        let rot = rotation_source(&RotationCoding::fibonacci(30), 2000).unwrap();
        let fib = substitution_source(&SubstitutionRule::fibonacci());
        assert_eq!(rot.prefix(2000).unwrap(), fib.prefix(2000).unwrap());
    }

    #[test]
    fn shallow_convergent_exhausts_precision() {
        let coding = RotationCoding {
            slope_cf: vec![0, 2],
            intercept: SlopeAffine::rational(Rational::integer(0)),
            cuts: vec![
                Cut { at: SlopeAffine::rational(Rational::integer(0)), label: 0 },
                Cut { at: SlopeAffine::rational(Rational::new(1, 2).unwrap()), label: 1 },
            ],
        };
        match rotation_source(&coding, 1000) {
            Err(Error::PrecisionExhausted { depth: 1, certified, requested: 1000 }) => assert!(certified < 1000),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn single_arc_is_constant() {
        let coding = RotationCoding {
            slope_cf: vec![0, 1, 1],
            intercept: SlopeAffine::rational(Rational::new(1, 3).unwrap()),
            cuts: vec![Cut { at: SlopeAffine::rational(Rational::new(1, 5).unwrap()), label: 4 }],
        };
        let s = rotation_source(&coding, 10_000).unwrap();
        assert!(s.prefix(500).unwrap().iter().all(|&x| x == 4));
    }

    #[test]
    fn rejects_bad_codings() {
        let mut c = RotationCoding::fibonacci(10);
        c.slope_cf = vec![0];
        assert!(rotation_source(&c, 10).is_err());
        let mut c = RotationCoding::fibonacci(10);
        c.slope_cf = vec![0, 2, 0, 1];
        assert!(rotation_source(&c, 10).is_err());
        let mut c = RotationCoding::silver_halves(10);
        c.cuts.swap(0, 1);
        assert!(rotation_source(&c, 10).is_err());
        let mut c = RotationCoding::fibonacci(200);
        c.slope_cf.truncate(200);
        assert!(rotation_source(&c, 10).is_err());
    }

    // Floating-point reference away from cut points.
    #[test]
    fn silver_coding_matches_float_reference() {
        let s = rotation_source(&RotationCoding::silver_halves(20), 5000).unwrap();
        let theta = 2f64.sqrt() - 1.0;
        for n in 0..5000 {
            let x = (n as f64 * theta).fract();
            if (x - 0.5).abs() < 1e-9 || x < 1e-9 {
                continue;
            }
            let expected = if x < 0.5 { 0 } else { 1 };
            assert_eq!(s.at(n), expected, "index {n}");
        }
    }
}
