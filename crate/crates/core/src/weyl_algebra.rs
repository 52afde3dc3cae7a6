//! Exact arithmetic in the twisted group algebra spanned by the Weyl
//! unitaries u_α over a fixed skew form σ:
//!
//! ```text
//! u_α u_β = e(Q_αβ) u_{α+β},   Q_αβ = βᵗσα,   e(t) = exp(2πit)
//! ```
//!
//! Covector keys are quantized to multiples of [`KEY_QUANTUM`] so that key
//! arithmetic is exact integer arithmetic and lookups never depend on float
//! rounding.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{q_form, Covector, SkewForm, Vector};

/// Key resolution, 2⁻³² of a unit.
pub const KEY_QUANTUM: f64 = 1.0 / 4_294_967_296.0;
/// Allowed drift of |phase| from 1.
pub const PHASE_TOL: f64 = 1e-14;

/// e(t) = exp(2πit), with the integer part of t removed before the
/// trigonometric evaluation.
pub fn e(t: f64) -> Complex64 {
    let frac = t - t.round();
    let (s, c) = (TAU * frac).sin_cos();
    Complex64::new(c, s)
}

/// A unit-modulus complex number.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Phase(Complex64);

impl Phase {
    pub fn new(value: Complex64) -> Option<Self> {
        ((value.norm() - 1.0).abs() <= PHASE_TOL).then_some(Self(value))
    }

    /// e(t)
    pub fn turns(t: f64) -> Self {
        Self(e(t))
    }

    pub fn value(&self) -> Complex64 {
        self.0
    }
}

/// Quantized covector, in units of [`KEY_QUANTUM`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Key(Vec<i64>);

impl Key {
    pub fn from_covector(alpha: &Covector) -> Self {
        Self(alpha.0.iter().map(|a| (a / KEY_QUANTUM).round() as i64).collect())
    }

    pub fn covector(&self) -> Covector {
        Covector(self.0.iter().map(|&k| k as f64 * KEY_QUANTUM).collect())
    }

    fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn neg(&self) -> Self {
        Self(self.0.iter().map(|a| -a).collect())
    }

    fn is_zero(&self) -> bool {
        self.0.iter().all(|&k| k == 0)
    }
}

/// Finite combination Σ c_α u_α over a fixed σ.
#[derive(Clone, Debug, PartialEq)]
pub struct WeylElement {
    terms: BTreeMap<Key, Complex64>,
    sigma: SkewForm,
}

impl WeylElement {
    pub fn zero(sigma: &SkewForm) -> Self {
        Self { terms: BTreeMap::new(), sigma: sigma.clone() }
    }

    /// u_0
    pub fn unit(sigma: &SkewForm) -> Self {
        unit_u(&Covector::zero(sigma.dim()), sigma)
    }

    pub fn from_terms(
        sigma: &SkewForm,
        terms: impl IntoIterator<Item = (Covector, Complex64)>,
    ) -> Result<Self> {
        let mut out = Self::zero(sigma);
        for (alpha, c) in terms {
            if alpha.dim() != sigma.dim() {
                return Err(Error::Dimension(format!(
                    "covector of length {} over a form of dimension {}",
                    alpha.dim(),
                    sigma.dim()
                )));
            }
            out.accumulate(Key::from_covector(&alpha), c);
        }
        Ok(out)
    }

    pub fn sigma(&self) -> &SkewForm {
        &self.sigma
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in key order, keys expanded back to covectors.
    pub fn terms(&self) -> impl Iterator<Item = (Covector, Complex64)> + '_ {
        self.terms.iter().map(|(k, c)| (k.covector(), *c))
    }

    pub fn coefficient(&self, alpha: &Covector) -> Complex64 {
        self.terms.get(&Key::from_covector(alpha)).copied().unwrap_or_default()
    }

    /// True when every key is the zero covector.
    pub fn is_central(&self) -> bool {
        self.terms.keys().all(Key::is_zero)
    }

    fn accumulate(&mut self, key: Key, c: Complex64) {
        match self.terms.entry(key) {
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if *slot.get() == Complex64::default() {
                    slot.remove();
                }
            }
            Entry::Vacant(slot) => {
                if c != Complex64::default() {
                    slot.insert(c);
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_context(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.accumulate(k.clone(), *c);
        }
        Ok(out)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut out = Self::zero(&self.sigma);
        for (k, c) in &self.terms {
            out.accumulate(k.clone(), c * s);
        }
        out
    }

    fn check_context(&self, other: &Self) -> Result<()> {
        if self.sigma != other.sigma {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    /// Max coefficient difference over the union of supports.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut m: f64 = 0.0;
        for (k, c) in &self.terms {
            m = m.max((c - other.terms.get(k).copied().unwrap_or_default()).norm());
        }
        for (k, c) in &other.terms {
            if !self.terms.contains_key(k) {
                m = m.max(c.norm());
            }
        }
        m
    }
}

/// u_α as a one-term element.
pub fn unit_u(alpha: &Covector, sigma: &SkewForm) -> WeylElement {
    assert_eq!(alpha.dim(), sigma.dim(), "unit_u dimension mismatch");
    let mut out = WeylElement::zero(sigma);
    out.accumulate(Key::from_covector(alpha), Complex64::new(1.0, 0.0));
    out
}

/// Bilinear extension of u_α u_β = e(Q_αβ) u_{α+β}.
///
/// Contributions to each output key are summed in the order of the unordered
/// key pair {α, β}, so `mul(a, b)` and `mul(b, a)` agree bit-for-bit whenever
/// the phases do.
pub fn mul(a: &WeylElement, b: &WeylElement) -> Result<WeylElement> {
    a.check_context(b)?;
    let mut buckets: BTreeMap<Key, Vec<((&Key, &Key), Complex64)>> = BTreeMap::new();
    for (ka, ca) in &a.terms {
        let alpha = ka.covector();
        for (kb, cb) in &b.terms {
            let beta = kb.covector();
            let phase = e(q_form(&a.sigma, &alpha, &beta));
            let pair = if ka <= kb { (ka, kb) } else { (kb, ka) };
            buckets.entry(ka.add(kb)).or_default().push((pair, ca * cb * phase));
        }
    }
    let mut out = WeylElement::zero(&a.sigma);
    for (key, mut parts) in buckets {
        parts.sort_by(|x, y| {
            x.0.cmp(&y.0)
                .then(x.1.re.total_cmp(&y.1.re))
                .then(x.1.im.total_cmp(&y.1.im))
        });
        let total = parts.iter().fold(Complex64::default(), |acc, (_, v)| acc + v);
        out.accumulate(key, total);
    }
    Ok(out)
}

/// (α, c) ↦ (−α, c̄)
pub fn star(a: &WeylElement) -> WeylElement {
    let mut out = WeylElement::zero(&a.sigma);
    for (k, c) in &a.terms {
        out.accumulate(k.neg(), c.conj());
    }
    out
}

/// Group commutator u_α u_β u_α⁻¹ u_β⁻¹ = e(2 Q_αβ).
pub fn commutator_phase(alpha: &Covector, beta: &Covector, sigma: &SkewForm) -> Phase {
    Phase::turns(2.0 * q_form(sigma, alpha, beta))
}

/// Function picture: Σ c_α e(α·q).
pub fn eval_function(a: &WeylElement, q: &Vector) -> Complex64 {
    a.terms.iter().map(|(k, c)| c * e(k.covector().pair(q))).sum()
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermRepr {
    alpha: Vec<f64>,
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ElementRepr {
    sigma: SkewForm,
    terms: Vec<TermRepr>,
}

impl Serialize for WeylElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ElementRepr {
            sigma: self.sigma.clone(),
            terms: self
                .terms()
                .map(|(alpha, c)| TermRepr { alpha: alpha.0, re: c.re, im: c.im })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeylElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = ElementRepr::deserialize(d)?;
        WeylElement::from_terms(
            &repr.sigma,
            repr.terms.into_iter().map(|t| (Covector(t.alpha), Complex64::new(t.re, t.im))),
        )
        .map_err(serde::de::Error::custom)
    }
}
