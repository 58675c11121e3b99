//! Finite unions of closed intervals on the extended real line.
//!
//! Sets are kept normalized: intervals sorted, nonempty, and separated by
//! strictly positive gaps. Every operation returns a normalized set, so
//! structural equality is set equality.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::problem::BinaryProblem;
use crate::region::SetMass;
use crate::scalar::{Real, Scalar};

/// Extended real: a finite value or one of the two infinities.
///
/// The derived order puts `NegInf` first and `PosInf` last.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub enum Ext<T> {
    NegInf,
    Finite(T),
    PosInf,
}

impl<T: Scalar> Ext<T> {
    pub fn finite(self) -> Option<T> {
        match self {
            Ext::Finite(x) => Some(x),
            _ => None,
        }
    }

    pub fn shifted(self, d: T) -> Self {
        match self {
            Ext::Finite(x) => Ext::Finite(x + d),
            inf => inf,
        }
    }

    pub fn shifted_down(self, d: T) -> Self {
        self.shifted(-d)
    }

    pub fn negated(self) -> Self {
        match self {
            Ext::NegInf => Ext::PosInf,
            Ext::Finite(x) => Ext::Finite(-x),
            Ext::PosInf => Ext::NegInf,
        }
    }

    pub fn le_value(self, x: T) -> bool {
        self <= Ext::Finite(x)
    }

    pub fn ge_value(self, x: T) -> bool {
        self >= Ext::Finite(x)
    }
}

impl<T: Real> Ext<T> {
    /// Maps infinities to the float infinities.
    pub fn value(self) -> T {
        match self {
            Ext::NegInf => T::neg_infinity(),
            Ext::Finite(x) => x,
            Ext::PosInf => T::infinity(),
        }
    }

    pub fn from_value(x: T) -> Self {
        if x == T::infinity() {
            Ext::PosInf
        } else if x == T::neg_infinity() {
            Ext::NegInf
        } else {
            Ext::Finite(x)
        }
    }
}

impl<T: fmt::Display> fmt::Display for Ext<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ext::NegInf => f.write_str("-inf"),
            Ext::Finite(x) => write!(f, "{x}"),
            Ext::PosInf => f.write_str("inf"),
        }
    }
}

/// Closed interval `[lo, hi]` with `lo <= hi`; infinite ends are open in the
/// usual topology but represent half-lines.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval<T> {
    pub lo: Ext<T>,
    pub hi: Ext<T>,
}

impl<T: Scalar> Interval<T> {
    pub fn new(lo: Ext<T>, hi: Ext<T>) -> Result<Self> {
        if !(lo <= hi) || lo == Ext::PosInf || hi == Ext::NegInf {
            return Err(Error::InvalidParameter(format!("empty interval {lo}..{hi}")));
        }
        Ok(Self { lo, hi })
    }

    pub fn closed(lo: T, hi: T) -> Result<Self> {
        Self::new(Ext::Finite(lo), Ext::Finite(hi))
    }

    pub fn contains(&self, x: T) -> bool {
        self.lo.le_value(x) && self.hi.ge_value(x)
    }

    pub fn contains_interval(&self, other: &Self) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }
}

/// Sorted union of disjoint closed intervals with positive gaps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntervalSet<T = f64> {
    intervals: Vec<Interval<T>>,
}

impl<T: Scalar> Default for IntervalSet<T> {
    fn default() -> Self {
        Self::empty()
    }
}

impl<T: Scalar> IntervalSet<T> {
    pub fn empty() -> Self {
        Self { intervals: Vec::new() }
    }

    pub fn full() -> Self {
        Self { intervals: vec![Interval { lo: Ext::NegInf, hi: Ext::PosInf }] }
    }

    /// `[x, +inf)`.
    pub fn at_least(x: T) -> Self {
        Self { intervals: vec![Interval { lo: Ext::Finite(x), hi: Ext::PosInf }] }
    }

    /// `(-inf, x]`.
    pub fn at_most(x: T) -> Self {
        Self { intervals: vec![Interval { lo: Ext::NegInf, hi: Ext::Finite(x) }] }
    }

    pub fn closed(lo: T, hi: T) -> Result<Self> {
        Ok(Self { intervals: vec![Interval::closed(lo, hi)?] })
    }

    /// Builds a normalized set from arbitrary (possibly overlapping,
    /// unsorted) intervals.
    pub fn from_intervals(mut parts: Vec<Interval<T>>) -> Self {
        parts.sort_by(|a, b| a.lo.partial_cmp(&b.lo).expect("interval endpoints are ordered"));
        let mut out: Vec<Interval<T>> = Vec::with_capacity(parts.len());
        for iv in parts {
            match out.last_mut() {
                Some(last) if last.hi >= iv.lo => {
                    if iv.hi > last.hi {
                        last.hi = iv.hi;
                    }
                }
                _ => out.push(iv),
            }
        }
        Self { intervals: out }
    }

    pub fn from_pairs(pairs: &[(T, T)]) -> Result<Self> {
        let parts = pairs.iter().map(|&(lo, hi)| Interval::closed(lo, hi)).collect::<Result<Vec<_>>>()?;
        Ok(Self::from_intervals(parts))
    }

    pub fn intervals(&self) -> &[Interval<T>] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn is_full(&self) -> bool {
        matches!(self.intervals.as_slice(), [Interval { lo: Ext::NegInf, hi: Ext::PosInf }])
    }

    pub fn contains(&self, x: T) -> bool {
        // Intervals are sorted, so binary search on the left endpoints.
        let k = self.intervals.partition_point(|iv| iv.lo.le_value(x));
        k > 0 && self.intervals[k - 1].hi.ge_value(x)
    }

    /// `A^eps`: all points within `eps` of the set.
    pub fn expand(&self, eps: T) -> Result<Self> {
        check_eps(eps)?;
        if eps == T::zero() {
            return Ok(self.clone());
        }
        let parts =
            self.intervals.iter().map(|iv| Interval { lo: iv.lo.shifted_down(eps), hi: iv.hi.shifted(eps) }).collect();
        Ok(Self::from_intervals(parts))
    }

    /// `A^{-eps} = ((A^c)^eps)^c`, represented in closed form: each component
    /// shrinks by `eps` from both finite ends and disappears when shorter
    /// than `2 eps`.
    pub fn thin(&self, eps: T) -> Result<Self> {
        check_eps(eps)?;
        let intervals = self
            .intervals
            .iter()
            .filter_map(|iv| {
                let lo = iv.lo.shifted(eps);
                let hi = iv.hi.shifted_down(eps);
                (lo <= hi).then_some(Interval { lo, hi })
            })
            .collect();
        Ok(Self { intervals })
    }

    /// Closure of the complement: the gaps, with shared boundary points.
    pub fn complement(&self) -> Self {
        let mut out = Vec::with_capacity(self.intervals.len() + 1);
        let mut cursor = Ext::NegInf;
        for iv in &self.intervals {
            if iv.lo > cursor {
                out.push(Interval { lo: cursor, hi: iv.lo });
            }
            cursor = iv.hi;
        }
        if cursor != Ext::PosInf {
            out.push(Interval { lo: cursor, hi: Ext::PosInf });
        }
        Self { intervals: out }
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut parts = self.intervals.clone();
        parts.extend_from_slice(&other.intervals);
        Self::from_intervals(parts)
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        // Every component must sit inside a single component of `other`.
        self.intervals.iter().all(|iv| {
            let k = other.intervals.partition_point(|o| o.lo <= iv.lo);
            k > 0 && other.intervals[k - 1].contains_interval(iv)
        })
    }

    pub fn reflect(&self) -> Self {
        let parts = self.intervals.iter().map(|iv| Interval { lo: iv.hi.negated(), hi: iv.lo.negated() }).collect();
        Self::from_intervals(parts)
    }

    /// Total weight of the atoms lying in the set.
    pub fn atom_mass(&self, values: &[T], weights: &[T]) -> T {
        values.iter().zip(weights).filter(|(&x, _)| self.contains(x)).fold(T::zero(), |acc, (_, &w)| acc + w)
    }

    /// Parses `lo..hi` atoms separated by commas; `-inf`/`inf` keywords,
    /// `empty` for the empty set.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s.eq_ignore_ascii_case("empty") {
            return Ok(Self::empty());
        }
        let mut parts = Vec::new();
        for atom in s.split(',') {
            let (lo, hi) = atom
                .trim()
                .split_once("..")
                .ok_or_else(|| Error::Format(format!("interval atom `{atom}` lacks `..`")))?;
            parts.push(Interval::new(parse_ext(lo)?, parse_ext(hi)?)?);
        }
        Ok(Self::from_intervals(parts))
    }
}

impl<T: Real> IntervalSet<T> {
    /// Lebesgue measure.
    pub fn length(&self) -> T {
        self.intervals.iter().fold(T::zero(), |acc, iv| acc + (iv.hi.value() - iv.lo.value()))
    }
}

/// Adversarial 0-1 risk of the interval classifier deciding class 1 on `a`:
/// `½ (p0(A^eps) + p1((A^c)^eps))`.
pub fn classifier_risk<T: Real>(problem: &BinaryProblem<T>, a: &IntervalSet<T>, eps: T) -> Result<T> {
    if problem.dim() != 1 {
        return Err(Error::Unsupported(format!(
            "interval classifiers need a univariate problem, got dim {}",
            problem.dim()
        )));
    }
    let err0 = problem.class0.interval_mass(&a.expand(eps)?)?;
    let err1 = problem.class1.interval_mass(&a.complement().expand(eps)?)?;
    Ok(T::lit(0.5) * (err0 + err1))
}

fn check_eps<T: Scalar>(eps: T) -> Result<()> {
    if eps < T::zero() || !eps.is_finite_value() {
        return Err(Error::NegativeEps(eps.to_f64_lossy()));
    }
    Ok(())
}

fn parse_ext<T: Scalar>(s: &str) -> Result<Ext<T>> {
    let s = s.trim();
    match s.to_ascii_lowercase().as_str() {
        "-inf" | "-infinity" => Ok(Ext::NegInf),
        "inf" | "+inf" | "infinity" => Ok(Ext::PosInf),
        _ => {
            let x = T::from_str_radix(s, 10).map_err(|_| Error::Format(format!("cannot parse endpoint `{s}`")))?;
            if !x.is_finite_value() {
                return Err(Error::Format(format!("non-finite endpoint `{s}`")));
            }
            Ok(Ext::Finite(x))
        }
    }
}

impl<T: fmt::Display> fmt::Display for IntervalSet<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return f.write_str("empty");
        }
        for (k, iv) in self.intervals.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}..{}", iv.lo, iv.hi)?;
        }
        Ok(())
    }
}

impl<T: Scalar> FromStr for IntervalSet<T> {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    fn set(s: &str) -> IntervalSet<f64> {
        s.parse().unwrap()
    }

    #[test]
    fn expand_examples() {
        assert_eq!(set("0..1").expand(0.5).unwrap(), set("-0.5..1.5"));
        assert_eq!(set("0..1,1.5..2").expand(0.25).unwrap(), set("-0.25..2.25"));
        assert_eq!(IntervalSet::<f64>::empty().expand(3.0).unwrap(), IntervalSet::empty());
        assert_eq!(set("0..1").expand(0.0).unwrap(), set("0..1"));
        assert!(set("0..1").expand(-0.1).is_err());
    }

    #[test]
    fn merge_after_widening() {
        let a = set("0..1,1.5..2").expand(0.3).unwrap();
        assert_eq!(a.intervals().len(), 1);
        assert_eq!(a.intervals()[0].lo, Ext::Finite(-0.3));
        assert!((a.intervals()[0].hi.finite().unwrap() - 2.3).abs() < 1e-15);
    }

    #[test]
    fn thin_examples() {
        assert!(set("0..1").thin(0.6).unwrap().is_empty());
        assert_eq!(set("0..1").thin(0.25).unwrap(), set("0.25..0.75"));
        assert_eq!(set("-inf..0").thin(0.5).unwrap(), set("-inf..-0.5"));
        assert_eq!(set("0..1").thin(0.5).unwrap(), set("0.5..0.5"));
    }

    #[test]
    fn complement_examples() {
        assert_eq!(set("0..1").complement(), set("-inf..0,1..inf"));
        assert_eq!(IntervalSet::<f64>::empty().complement(), IntervalSet::full());
        assert!(IntervalSet::<f64>::full().complement().is_empty());
        assert_eq!(set("-inf..0,2..3").complement(), set("0..2,3..inf"));
        assert_eq!(set("0..1").complement().complement(), set("0..1"));
    }

    #[test]
    fn single_points_survive_merge() {
        let p = set("1..1");
        assert_eq!(p.intervals().len(), 1);
        assert!(p.contains(1.0));
        assert_eq!(p.expand(0.5).unwrap(), set("0.5..1.5"));
    }

    #[test]
    fn touching_intervals_merge() {
        assert_eq!(set("0..1,1..2"), set("0..2"));
        assert_eq!(set("2..3,0..1"), set("0..1,2..3"));
    }

    #[test]
    fn subset_and_contains() {
        assert!(set("0.25..0.5").is_subset_of(&set("0..1,2..3")));
        assert!(!set("0.5..2.5").is_subset_of(&set("0..1,2..3")));
        assert!(set("empty").is_subset_of(&set("empty")));
        assert!(set("0..1,2..3").contains(2.0));
        assert!(!set("0..1,2..3").contains(1.5));
    }

    #[test]
    fn display_round_trips() {
        let s = set("-inf..-1.2,0.7..inf");
        assert_eq!(s.to_string(), "-inf..-1.2,0.7..inf");
        assert_eq!(set(&s.to_string()), s);
        assert_eq!(IntervalSet::<f64>::empty().to_string(), "empty");
        assert!(IntervalSet::<f64>::parse("0..").is_err());
        assert!(IntervalSet::<f64>::parse("1..0").is_err());
    }

    #[test]
    fn rational_sets_are_exact() {
        let a: IntervalSet<Rational64> = "1/3..2/3".parse().unwrap();
        let t = a.thin(Rational64::new(1, 6)).unwrap();
        assert_eq!(t, IntervalSet::closed(Rational64::new(1, 2), Rational64::new(1, 2)).unwrap());
        assert_eq!(t.expand(Rational64::new(1, 6)).unwrap(), a);
    }

    #[test]
    fn classifier_risk_examples() {
        use crate::measures::{q_tail, UnivariateFamily};
        let p = BinaryProblem::new(
            UnivariateFamily::gaussian(0.0f64, 1.0).unwrap(),
            UnivariateFamily::gaussian(2.0f64, 1.0).unwrap(),
        )
        .unwrap();
        let a = IntervalSet::at_least(1.0);
        assert!((classifier_risk(&p, &a, 0.0).unwrap() - q_tail(1.0)).abs() < 1e-15);
        assert!((classifier_risk(&p, &a, 1.0).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(classifier_risk(&p, &IntervalSet::empty(), 0.0).unwrap(), 0.5);
        assert!(classifier_risk(&p, &a, -1.0).is_err());
    }

    #[test]
    fn reflect_mirrors() {
        assert_eq!(set("-inf..-1,2..3").reflect(), set("-3..-2,1..inf"));
    }
}
