//! Sparse homogeneous multivariate polynomials over the rationals.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vectors under the
//! graded lexicographic order (within a single homogeneous form this is
//! plain lexicographic), which makes every representation canonical:
//! structural equality is polynomial equality and serialization order is
//! deterministic.

use crate::error::{Error, Result};
use crate::scalar::Rat;
use num_traits::Zero;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

// fast-path limits for packed exponent keys (one byte per variable)
const PACK_VARS: usize = 8;
const PACK_MAX: usize = 255;

fn pack_exponents(e: &Exponents) -> u64 {
    let mut k = 0u64;
    for (i, &v) in e.0.iter().enumerate() {
        k |= (v as u64) << (8 * i);
    }
    k
}

fn unpack_exponents(k: u64, nvars: usize) -> Exponents {
    Exponents((0..nvars).map(|i| ((k >> (8 * i)) & 0xff) as usize).collect())
}

/// Exponent vector of a monomial; one entry per variable.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponents(pub Vec<usize>);

impl Exponents {
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn add(&self, other: &Exponents) -> Exponents {
        Exponents(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

}

/// Enumerate all exponent vectors of total degree `d` in `nvars` variables,
/// in ascending lexicographic order. Deterministic; shared by every
/// coefficient layout in the crate.
pub fn monomials(nvars: usize, d: usize) -> Vec<Exponents> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; nvars];
    fn rec(cur: &mut Vec<usize>, idx: usize, remaining: usize, out: &mut Vec<Exponents>) {
        if idx + 1 == cur.len() {
            cur[idx] = remaining;
            out.push(Exponents(cur.clone()));
            return;
        }
        for e in 0..=remaining {
            cur[idx] = e;
            rec(cur, idx + 1, remaining - e, out);
        }
    }
    if nvars == 0 {
        return out;
    }
    rec(&mut cur, 0, d, &mut out);
    out.sort();
    out
}

/// Sparse homogeneous form of fixed degree.
///
/// The zero form is an empty term collection and is compatible with any
/// degree in additive operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousForm {
    nvars: usize,
    degree: usize,
    terms: BTreeMap<Exponents, Rat>,
}

impl HomogeneousForm {
    pub fn zero(nvars: usize, degree: usize) -> Self {
        HomogeneousForm {
            nvars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut f = HomogeneousForm::zero(nvars, 0);
        if !c.is_zero() {
            f.terms.insert(Exponents(vec![0; nvars]), c);
        }
        f
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, crate::scalar::rat_one())
    }

    /// The single variable `x_i` as a degree-one form.
    pub fn variable(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(Exponents(exps), crate::scalar::rat_one());
        HomogeneousForm {
            nvars,
            degree: 1,
            terms,
        }
    }

    pub fn monomial(nvars: usize, exps: Vec<usize>, coeff: Rat) -> Result<Self> {
        if exps.len() != nvars {
            return Err(Error::ArityMismatch(exps.len(), nvars));
        }
        let degree = exps.iter().sum();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(Exponents(exps), coeff);
        }
        Ok(HomogeneousForm {
            nvars,
            degree,
            terms,
        })
    }

    pub fn from_terms<I>(nvars: usize, degree: usize, iter: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, Rat)>,
    {
        let mut terms: BTreeMap<Exponents, Rat> = BTreeMap::new();
        for (exps, coeff) in iter {
            if exps.len() != nvars {
                return Err(Error::ArityMismatch(exps.len(), nvars));
            }
            let e = Exponents(exps);
            if e.total() != degree {
                return Err(Error::DegreeMismatch(e.total(), degree));
            }
            let entry = terms.entry(e).or_insert_with(crate::scalar::rat_zero);
            *entry += coeff;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(HomogeneousForm {
            nvars,
            degree,
            terms,
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.degree == 0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &Exponents) -> Rat {
        self.terms
            .get(exps)
            .cloned()
            .unwrap_or_else(crate::scalar::rat_zero)
    }

    /// Leading term under the monomial order (largest key).
    pub fn leading(&self) -> Option<(&Exponents, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn add(&self, other: &HomogeneousForm) -> Result<HomogeneousForm> {
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch(self.nvars, other.nvars));
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let entry = terms.entry(e.clone()).or_insert_with(crate::scalar::rat_zero);
            *entry += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(HomogeneousForm {
            nvars: self.nvars,
            degree: self.degree,
            terms,
        })
    }

    pub fn sub(&self, other: &HomogeneousForm) -> Result<HomogeneousForm> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> HomogeneousForm {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), -c.clone()))
            .collect();
        HomogeneousForm {
            nvars: self.nvars,
            degree: self.degree,
            terms,
        }
    }

    pub fn scale(&self, c: &Rat) -> HomogeneousForm {
        if c.is_zero() {
            return HomogeneousForm::zero(self.nvars, self.degree);
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, k)| (e.clone(), k * c))
            .collect();
        HomogeneousForm {
            nvars: self.nvars,
            degree: self.degree,
            terms,
        }
    }

    pub fn mul(&self, other: &HomogeneousForm) -> Result<HomogeneousForm> {
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch(self.nvars, other.nvars));
        }
        let degree = self.degree + other.degree;
        if self.nvars <= PACK_VARS && degree <= PACK_MAX {
            return Ok(self.mul_packed(other, degree));
        }
        let mut terms: BTreeMap<Exponents, Rat> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.add(eb);
                let entry = terms.entry(e).or_insert_with(crate::scalar::rat_zero);
                *entry += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(HomogeneousForm {
            nvars: self.nvars,
            degree,
            terms,
        })
    }

    /// Hash-accumulated product over packed exponent keys: denominators are
    /// cleared once per operand, the convolution runs over `BigInt` with no
    /// per-operation gcd, and each output coefficient is normalized once.
    /// The canonical ordered map is rebuilt at the end, so results are
    /// identical to the generic path.
    fn mul_packed(&self, other: &HomogeneousForm, degree: usize) -> HomogeneousForm {
        use num_bigint::BigInt;
        use num_integer::Integer;
        use num_traits::One;
        let cleared = |f: &HomogeneousForm| -> (BigInt, Vec<(u64, BigInt)>) {
            let mut lcm = BigInt::one();
            for c in f.terms.values() {
                lcm = lcm.lcm(c.denom());
            }
            let ints = f
                .terms
                .iter()
                .map(|(e, c)| (pack_exponents(e), c.numer() * (&lcm / c.denom())))
                .collect();
            (lcm, ints)
        };
        let (la, pa) = cleared(self);
        let (lb, pb) = cleared(other);
        let scale = la * lb;
        let (outer, inner) = if pa.len() <= pb.len() { (&pa, &pb) } else { (&pb, &pa) };
        let mut acc: HashMap<u64, BigInt> =
            HashMap::with_capacity(outer.len() * inner.len() / 2 + 1);
        for (ka, ca) in outer {
            for (kb, cb) in inner {
                let k = ka + kb;
                match acc.entry(k) {
                    std::collections::hash_map::Entry::Occupied(mut o) => {
                        *o.get_mut() += ca * cb;
                    }
                    std::collections::hash_map::Entry::Vacant(v) => {
                        v.insert(ca * cb);
                    }
                }
            }
        }
        let terms: BTreeMap<Exponents, Rat> = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (unpack_exponents(k, self.nvars), Rat::new(c, scale.clone())))
            .collect();
        HomogeneousForm {
            nvars: self.nvars,
            degree,
            terms,
        }
    }

    pub fn pow(&self, e: usize) -> HomogeneousForm {
        let mut acc = HomogeneousForm::one(self.nvars);
        for _ in 0..e {
            acc = acc.mul(self).expect("same nvars");
        }
        acc
    }

    /// Exact evaluation; `pt` must have `nvars` entries.
    pub fn eval(&self, pt: &[Rat]) -> Rat {
        assert_eq!(pt.len(), self.nvars, "evaluation point arity mismatch");
        let mut acc = crate::scalar::rat_zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in pt.iter().zip(e.0.iter()) {
                for _ in 0..k {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitute `images[i]` for variable `i`; a ring homomorphism.
    /// The result is homogeneous of degree `deg(self) * deg(images)`.
    pub fn substitute(&self, images: &FormTuple) -> Result<HomogeneousForm> {
        let mut cache = SubstitutionCache::default();
        self.substitute_cached(images, &mut cache)
    }

    /// Substitution sharing the monomial-value cache across calls with the
    /// same image tuple (tuple composition evaluates many forms against one
    /// tuple; the cached sub-monomial products dominate the cost).
    pub fn substitute_cached(
        &self,
        images: &FormTuple,
        cache: &mut SubstitutionCache,
    ) -> Result<HomogeneousForm> {
        if images.len() != self.nvars {
            return Err(Error::ArityMismatch(images.len(), self.nvars));
        }
        let m = images.nvars();
        let e = images.degree();
        let out_deg = self.degree * e;
        if self.is_zero() {
            return Ok(HomogeneousForm::zero(m, out_deg));
        }
        let mut acc = HomogeneousForm::zero(m, out_deg);
        if self.nvars <= PACK_VARS && self.degree <= PACK_MAX {
            for (exps, coeff) in &self.terms {
                let value = monomial_value(exps, images, cache);
                if !value.is_zero() {
                    acc = acc.add(&value.scale(coeff)).expect("uniform degree");
                }
            }
        } else {
            // many-variable fallback: plain power products per term
            for (exps, coeff) in &self.terms {
                let mut prod = HomogeneousForm::constant(m, coeff.clone());
                for (i, &k) in exps.0.iter().enumerate() {
                    for _ in 0..k {
                        prod = prod.mul(&images.forms()[i])?;
                    }
                }
                acc = acc.add(&prod)?;
            }
        }
        // zero results keep the nominal degree
        if acc.is_zero() {
            acc = HomogeneousForm::zero(m, out_deg);
        }
        Ok(acc)
    }

    /// Re-embed into a larger variable set, shifting indices by `offset`.
    pub fn embed_shift(&self, new_nvars: usize, offset: usize) -> HomogeneousForm {
        assert!(self.nvars + offset <= new_nvars);
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut exps = vec![0usize; new_nvars];
                exps[offset..offset + self.nvars].copy_from_slice(&e.0);
                (Exponents(exps), c.clone())
            })
            .collect();
        HomogeneousForm {
            nvars: new_nvars,
            degree: self.degree,
            terms,
        }
    }

    /// Multiply by the single variable `x_i`.
    pub fn mul_var(&self, i: usize) -> HomogeneousForm {
        self.mul_var_power(i, 1)
    }

    pub fn mul_var_power(&self, i: usize, k: usize) -> HomogeneousForm {
        assert!(i < self.nvars);
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut exps = e.0.clone();
                exps[i] += k;
                (Exponents(exps), c.clone())
            })
            .collect();
        HomogeneousForm {
            nvars: self.nvars,
            degree: self.degree + k,
            terms,
        }
    }

    /// Exact division by the variable `x_i`, if every term admits it.
    pub fn div_var(&self, i: usize) -> Option<HomogeneousForm> {
        assert!(i < self.nvars);
        if self.is_zero() {
            return Some(HomogeneousForm::zero(self.nvars, self.degree.saturating_sub(1)));
        }
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e.0[i] == 0 {
                return None;
            }
            let mut exps = e.0.clone();
            exps[i] -= 1;
            terms.insert(Exponents(exps), c.clone());
        }
        Some(HomogeneousForm {
            nvars: self.nvars,
            degree: self.degree - 1,
            terms,
        })
    }

    /// Degree in a single variable.
    pub fn degree_in(&self, i: usize) -> usize {
        self.terms.keys().map(|e| e.0[i]).max().unwrap_or(0)
    }

    /// Coefficient of `x_i^k` as a form in the same variable set
    /// (the returned form has degree `degree - k` and no `x_i`).
    pub fn coeff_of_power(&self, i: usize, k: usize) -> HomogeneousForm {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e.0[i] == k {
                let mut exps = e.0.clone();
                exps[i] = 0;
                terms.insert(Exponents(exps), c.clone());
            }
        }
        HomogeneousForm {
            nvars: self.nvars,
            degree: self.degree.saturating_sub(k),
            terms,
        }
    }

    /// Drop variable `i` from the variable list. Panics if it occurs.
    pub fn drop_var(&self, i: usize) -> HomogeneousForm {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                assert_eq!(e.0[i], 0, "variable still occurs");
                let mut exps = e.0.clone();
                exps.remove(i);
                (Exponents(exps), c.clone())
            })
            .collect();
        HomogeneousForm {
            nvars: self.nvars - 1,
            degree: self.degree,
            terms,
        }
    }

    /// Divide out the leading coefficient, giving a monic-leading form.
    pub fn normalize_monic(&self) -> HomogeneousForm {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = crate::scalar::rat_one() / c.clone();
                self.scale(&inv)
            }
        }
    }

    /// Flat coefficient vector relative to `monomials(nvars, degree)`.
    pub fn coeff_vector(&self, layout: &[Exponents]) -> Vec<Rat> {
        layout.iter().map(|e| self.coeff(e)).collect()
    }

    /// Equality up to a nonzero scalar.
    pub fn proportional_to(&self, other: &HomogeneousForm) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() == other.is_zero();
        }
        let (ea, ca) = self.leading().unwrap();
        let (eb, cb) = other.leading().unwrap();
        if ea != eb {
            return false;
        }
        let ratio = ca.clone() / cb.clone();
        self.sub(&other.scale(&ratio))
            .map(|d| d.is_zero())
            .unwrap_or(false)
    }
}

/// Memo of monomial substitution values keyed by packed exponent vectors.
#[derive(Default)]
pub struct SubstitutionCache {
    values: HashMap<u64, HomogeneousForm>,
}

/// Value of a single monomial under the substitution, computed by peeling
/// one variable at a time so every sub-monomial product is shared.
fn monomial_value(
    exps: &Exponents,
    images: &FormTuple,
    cache: &mut SubstitutionCache,
) -> HomogeneousForm {
    debug_assert!(exps.len() <= PACK_VARS && exps.total() <= PACK_MAX);
    let key = pack_exponents(exps);
    if let Some(v) = cache.values.get(&key) {
        return v.clone();
    }
    let value = match exps.0.iter().position(|&k| k > 0) {
        None => HomogeneousForm::one(images.nvars()),
        Some(i) => {
            let mut smaller = exps.0.clone();
            smaller[i] -= 1;
            let sub = monomial_value(&Exponents(smaller), images, cache);
            sub.mul(&images.forms()[i]).expect("same nvars")
        }
    };
    cache.values.insert(key, value.clone());
    value
}

/// Binary arithmetic dispatcher kept for symmetry with the operation
/// table; `Scale` expects a constant form on the right.
pub fn form_arith(
    a: &HomogeneousForm,
    b: &HomogeneousForm,
    op: FormOp,
) -> Result<HomogeneousForm> {
    match op {
        FormOp::Add => a.add(b),
        FormOp::Sub => a.sub(b),
        FormOp::Mul => a.mul(b),
        FormOp::Scale => {
            if !b.is_constant() {
                return Err(Error::DegreeMismatch(b.degree(), 0));
            }
            let c = b
                .terms()
                .next()
                .map(|(_, c)| c.clone())
                .unwrap_or_else(crate::scalar::rat_zero);
            Ok(a.scale(&c))
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub enum FormOp {
    Add,
    Sub,
    Mul,
    Scale,
}

impl fmt::Display for HomogeneousForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = crate::scalar::is_negative(c);
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let abs = if neg { -c.clone() } else { c.clone() };
            let is_const_monomial = e.total() == 0;
            let coeff_is_one = abs == crate::scalar::rat_one();
            if !coeff_is_one || is_const_monomial {
                write!(f, "{}", crate::scalar::format_rat(&abs))?;
                if !is_const_monomial {
                    write!(f, "*")?;
                }
            }
            let mut first_var = true;
            for (i, &k) in e.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                if !first_var {
                    write!(f, "*")?;
                }
                first_var = false;
                if k == 1 {
                    write!(f, "x{i}")?;
                } else {
                    write!(f, "x{i}^{k}")?;
                }
            }
        }
        Ok(())
    }
}

/// Ordered list of forms with identical variable count and degree,
/// not all identically zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormTuple {
    forms: Vec<HomogeneousForm>,
    degree: usize,
}

impl FormTuple {
    pub fn new(forms: Vec<HomogeneousForm>) -> Result<Self> {
        if forms.is_empty() {
            return Err(Error::ZeroInput("empty form tuple"));
        }
        let nvars = forms[0].nvars();
        let degree = match forms.iter().find(|f| !f.is_zero()) {
            Some(f) => f.degree(),
            None => return Err(Error::ZeroInput("all tuple entries are zero")),
        };
        let mut normalized = Vec::with_capacity(forms.len());
        for f in forms {
            if f.nvars() != nvars {
                return Err(Error::ArityMismatch(f.nvars(), nvars));
            }
            if f.is_zero() {
                normalized.push(HomogeneousForm::zero(nvars, degree));
            } else if f.degree() != degree {
                return Err(Error::DegreeMismatch(f.degree(), degree));
            } else {
                normalized.push(f);
            }
        }
        Ok(FormTuple {
            forms: normalized,
            degree,
        })
    }

    pub fn forms(&self) -> &[HomogeneousForm] {
        &self.forms
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn nvars(&self) -> usize {
        self.forms[0].nvars()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn eval(&self, pt: &[Rat]) -> Vec<Rat> {
        self.forms.iter().map(|f| f.eval(pt)).collect()
    }

    /// Entry-wise scaling by a form: realizes adding a fixed component.
    pub fn mul_form(&self, h: &HomogeneousForm) -> Result<FormTuple> {
        let forms = self
            .forms
            .iter()
            .map(|f| f.mul(h))
            .collect::<Result<Vec<_>>>()?;
        FormTuple::new(forms)
    }

    /// Substitute another tuple into every entry (tuple composition). The
    /// monomial-value cache is shared across entries.
    pub fn substitute(&self, images: &FormTuple) -> Result<FormTuple> {
        let mut cache = SubstitutionCache::default();
        let forms = self
            .forms
            .iter()
            .map(|f| f.substitute_cached(images, &mut cache))
            .collect::<Result<Vec<_>>>()?;
        if forms.iter().all(|f| f.is_zero()) {
            return Err(Error::ZeroComposite);
        }
        FormTuple::new(forms)
    }

    /// `a` and `b` define the same point map: all 2x2 cross products vanish.
    pub fn projectively_equal(&self, other: &FormTuple) -> bool {
        if self.len() != other.len() || self.nvars() != other.nvars() {
            return false;
        }
        for i in 0..self.len() {
            for j in (i + 1)..self.len() {
                let lhs = self.forms[i].mul(&other.forms[j]).expect("same nvars");
                let rhs = self.forms[j].mul(&other.forms[i]).expect("same nvars");
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }
}
