//! Rational maps of projective space as form tuples: evaluation,
//! composition, exact projective equality, and inverse-pair certification
//! through the fundamental polynomial.
//!
//! Tuples are allowed to share polynomial factors; composition never
//! cancels common factors, so the fundamental-polynomial bookkeeping stays
//! visible. Use [`crate::gcd::remove_common_factor`] for explicit
//! normalization.

use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::poly::{monomials, FormTuple, HomogeneousForm};
use crate::projective::{LinearAutomorphism, ProjectivePoint};
use crate::scalar::Rat;
use num_traits::Zero;

/// A rational map P^source -> P^target given by target+1 forms of a common
/// degree in source+1 variables. Common factors permitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMap {
    tuple: FormTuple,
}

impl RationalMap {
    pub fn new(tuple: FormTuple) -> Self {
        RationalMap { tuple }
    }

    pub fn identity(r: usize) -> Self {
        let forms = (0..=r).map(|i| HomogeneousForm::variable(r + 1, i)).collect();
        RationalMap {
            tuple: FormTuple::new(forms).unwrap(),
        }
    }

    pub fn from_matrix(a: &LinearAutomorphism) -> Self {
        RationalMap {
            tuple: a.to_form_tuple(),
        }
    }

    pub fn tuple(&self) -> &FormTuple {
        &self.tuple
    }

    pub fn source_dim(&self) -> usize {
        self.tuple.nvars() - 1
    }

    pub fn target_dim(&self) -> usize {
        self.tuple.len() - 1
    }

    pub fn degree(&self) -> usize {
        self.tuple.degree()
    }

    /// Evaluate at a point; errors with `IndeterminacyPoint` when every
    /// defining form vanishes there.
    pub fn apply(&self, p: &ProjectivePoint) -> Result<ProjectivePoint> {
        if p.dim() != self.source_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.source_dim(),
                got: p.dim(),
            });
        }
        let vals = self.tuple.eval(p.coords());
        if vals.iter().all(|v| v.is_zero()) {
            return Err(Error::IndeterminacyPoint);
        }
        ProjectivePoint::new(vals)
    }

    /// Left-multiply the tuple by a matrix (compose with a linear map on
    /// the target). Degree is unchanged.
    pub fn linear_after(&self, a: &LinearAutomorphism) -> RationalMap {
        let m = a.matrix();
        assert_eq!(m.ncols(), self.tuple.len());
        let nvars = self.tuple.nvars();
        let deg = self.tuple.degree();
        let forms = (0..m.nrows())
            .map(|i| {
                let mut acc = HomogeneousForm::zero(nvars, deg);
                for (j, f) in self.tuple.forms().iter().enumerate() {
                    if !m.get(i, j).is_zero() {
                        acc = acc.add(&f.scale(m.get(i, j))).unwrap();
                    }
                }
                acc
            })
            .collect();
        RationalMap {
            tuple: FormTuple::new(forms).expect("invertible mix keeps tuple nonzero"),
        }
    }
}

/// g after f. Degree multiplies; no factor cancellation is performed.
pub fn map_compose(g: &RationalMap, f: &RationalMap) -> Result<RationalMap> {
    if f.target_dim() != g.source_dim() {
        return Err(Error::DimensionMismatch {
            expected: g.source_dim(),
            got: f.target_dim(),
        });
    }
    let tuple = g.tuple().substitute(f.tuple())?;
    Ok(RationalMap { tuple })
}

/// Equality as rational maps: all 2x2 cross products of the two tuples
/// vanish identically. Common factors are invisible to this test.
pub fn maps_projectively_equal(f: &RationalMap, g: &RationalMap) -> Result<bool> {
    if f.source_dim() != g.source_dim() || f.target_dim() != g.target_dim() {
        return Err(Error::DimensionMismatch {
            expected: f.source_dim(),
            got: g.source_dim(),
        });
    }
    Ok(f.tuple().projectively_equal(g.tuple()))
}

/// Exact witness that a pair of maps is mutually inverse: the fundamental
/// polynomial Phi with (g o f)_i = Phi * x_i, of degree
/// delta*delta' - 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseCertificate {
    pub phi: HomogeneousForm,
    pub delta: usize,
    pub delta_prime: usize,
}

/// Certify that `g` is inverse to `f` by exact division of the composite
/// by the identity tuple.
pub fn verify_inverse_pair(f: &RationalMap, g: &RationalMap) -> Result<InverseCertificate> {
    if f.source_dim() != f.target_dim() || g.source_dim() != g.target_dim() {
        return Err(Error::DimensionMismatch {
            expected: f.source_dim(),
            got: f.target_dim(),
        });
    }
    let comp = match map_compose(g, f) {
        Ok(c) => c,
        Err(Error::ZeroComposite) => {
            return Err(Error::NotInverse("composite is identically zero".into()))
        }
        Err(e) => return Err(e),
    };
    let tuple = comp.tuple();
    let n = tuple.len();
    let mut phi: Option<HomogeneousForm> = None;
    for i in 0..n {
        let h = &tuple.forms()[i];
        if h.is_zero() {
            continue;
        }
        match h.div_var(i) {
            Some(q) => {
                phi = Some(q);
                break;
            }
            None => {
                return Err(Error::NotInverse(format!(
                    "composite coordinate {i} is not divisible by x{i}"
                )))
            }
        }
    }
    let phi = phi.ok_or_else(|| Error::NotInverse("composite is identically zero".into()))?;
    for i in 0..n {
        let expect = phi.mul_var(i);
        if expect != tuple.forms()[i] {
            return Err(Error::NotInverse(format!(
                "composite coordinate {i} is not Phi * x{i}"
            )));
        }
    }
    let delta = f.degree();
    let delta_prime = g.degree();
    debug_assert_eq!(phi.degree(), delta * delta_prime - 1);
    Ok(InverseCertificate {
        phi,
        delta,
        delta_prime,
    })
}

/// Projective rank of the coefficient matrix of a parametrization tuple:
/// rows are tuple entries, columns the parameter monomials. Rank one means
/// the image is a single point.
pub fn image_rank(tuple: &FormTuple) -> Result<usize> {
    let layout = monomials(tuple.nvars(), tuple.degree());
    let rows: Vec<Vec<Rat>> = tuple.forms().iter().map(|f| f.coeff_vector(&layout)).collect();
    if rows.iter().all(|r| r.iter().all(|c| c.is_zero())) {
        return Err(Error::ZeroInput("image_rank of zero tuple"));
    }
    Ok(QMatrix::from_rows(rows).rank())
}

/// For a rank-one tuple, the constant image point.
pub fn constant_point(tuple: &FormTuple) -> Option<ProjectivePoint> {
    let base = tuple.forms().iter().find(|f| !f.is_zero())?;
    let mut coords = Vec::with_capacity(tuple.len());
    for f in tuple.forms() {
        if f.is_zero() {
            coords.push(crate::scalar::rat_zero());
        } else {
            let q = crate::gcd::div_exact(f, base)?;
            if !q.is_constant() {
                return None;
            }
            let c = q
                .terms()
                .next()
                .map(|(_, c)| c.clone())
                .unwrap_or_else(crate::scalar::rat_zero);
            coords.push(c);
        }
    }
    ProjectivePoint::new(coords).ok()
}

/// One parametrized irreducible component of a reduced scheme: a tuple of
/// r+1 forms in `arity` parameter variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemeComponent {
    pub arity: usize,
    pub tuple: FormTuple,
}

impl SchemeComponent {
    pub fn new(tuple: FormTuple) -> Self {
        SchemeComponent {
            arity: tuple.nvars(),
            tuple,
        }
    }

    /// Projective dimension of the parameter space.
    pub fn param_dim(&self) -> usize {
        self.arity - 1
    }

    pub fn ambient(&self) -> usize {
        self.tuple.len() - 1
    }

    pub fn degree(&self) -> usize {
        self.tuple.degree()
    }

    pub fn eval(&self, params: &[Rat]) -> Result<ProjectivePoint> {
        let vals = self.tuple.eval(params);
        if vals.iter().all(|v| v.is_zero()) {
            return Err(Error::IndeterminacyPoint);
        }
        ProjectivePoint::new(vals)
    }

    /// Push the component through a self-map of the ambient space.
    pub fn map_through(&self, map: &RationalMap) -> Result<SchemeComponent> {
        if map.source_dim() != self.ambient() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient(),
                got: map.source_dim(),
            });
        }
        let tuple = map.tuple().substitute(&self.tuple)?;
        Ok(SchemeComponent::new(tuple))
    }
}

/// A reduced scheme presented as a list of component parametrizations with
/// a shared ambient dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamScheme {
    pub ambient: usize,
    pub components: Vec<SchemeComponent>,
}

impl ParamScheme {
    pub fn new(components: Vec<SchemeComponent>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::ZeroInput("scheme without components"));
        }
        let ambient = components[0].ambient();
        for c in &components {
            if c.ambient() != ambient {
                return Err(Error::DimensionMismatch {
                    expected: ambient,
                    got: c.ambient(),
                });
            }
        }
        Ok(ParamScheme { ambient, components })
    }

    pub fn map_through(&self, map: &RationalMap) -> Result<ParamScheme> {
        let components = self
            .components
            .iter()
            .map(|c| c.map_through(map))
            .collect::<Result<Vec<_>>>()?;
        ParamScheme::new(components)
    }
}
