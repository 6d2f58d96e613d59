//! Monoid hypersurfaces: degree-d hypersurfaces with a vertex of
//! multiplicity exactly d-1, their stereographic projections with explicit
//! inverses, linearization, and the double-projection Cremona map of a
//! bi-vertex monoid.

use crate::dejonquieres::DeJonquieresMap;
use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::poly::{FormTuple, HomogeneousForm};
use crate::projective::{LinearAutomorphism, ProjectivePoint};
use crate::ratmap::RationalMap;
use crate::scalar::rat_one;
use num_traits::Zero;

/// Monoid in vertex-adapted coordinates: the frame sends the vertex to
/// [1,0,...,0] and the equation there is `f_low * x0 + f_high` with
/// `f_low`, `f_high` forms of degree d-1, d in the remaining r variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monoid {
    ambient: usize,
    degree: usize,
    frame: LinearAutomorphism,
    f_low: HomogeneousForm,
    f_high: HomogeneousForm,
}

impl Monoid {
    pub fn new(
        ambient: usize,
        frame: LinearAutomorphism,
        f_low: HomogeneousForm,
        f_high: HomogeneousForm,
    ) -> Result<Self> {
        if f_low.is_zero() {
            return Err(Error::WrongMultiplicity(
                "vertex layer F_{d-1} is identically zero".into(),
            ));
        }
        if f_low.nvars() != ambient || f_high.nvars() != ambient {
            return Err(Error::ArityMismatch(f_low.nvars(), ambient));
        }
        let degree = f_low.degree() + 1;
        if !f_high.is_zero() && f_high.degree() != degree {
            return Err(Error::DegreeMismatch(f_high.degree(), degree));
        }
        if frame.size() != ambient + 1 {
            return Err(Error::DimensionMismatch {
                expected: ambient + 1,
                got: frame.size(),
            });
        }
        Ok(Monoid {
            ambient,
            degree,
            frame,
            f_low,
            f_high,
        })
    }

    /// Decompose an equation at a prescribed vertex. The equation is
    /// conjugated so the vertex sits at [1,0,...,0]; the x0-layers with
    /// exponent >= 2 must vanish and the exponent-1 layer must not.
    pub fn from_equation(eq: &HomogeneousForm, vertex: &ProjectivePoint) -> Result<Monoid> {
        if eq.is_zero() {
            return Err(Error::ZeroInput("monoid equation"));
        }
        let r = vertex.dim();
        if eq.nvars() != r + 1 {
            return Err(Error::ArityMismatch(eq.nvars(), r + 1));
        }
        let frame = LinearAutomorphism::frame_to_origin(vertex);
        let back = frame.inverse();
        let eq_frame = eq.substitute(&back.to_form_tuple())?;
        let d = eq_frame.degree();
        for k in 2..=d {
            if !eq_frame.coeff_of_power(0, k).is_zero() {
                return Err(Error::WrongMultiplicity(format!(
                    "equation has an x0^{k} layer; vertex multiplicity below d-1"
                )));
            }
        }
        let f_low = eq_frame.coeff_of_power(0, 1).drop_var(0);
        if f_low.is_zero() {
            return Err(Error::WrongMultiplicity(
                "x0-layer vanishes; vertex multiplicity exceeds d-1".into(),
            ));
        }
        let f_high = eq_frame.coeff_of_power(0, 0).drop_var(0);
        Monoid::new(r, frame, f_low, f_high)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn frame(&self) -> &LinearAutomorphism {
        &self.frame
    }

    pub fn f_low(&self) -> &HomogeneousForm {
        &self.f_low
    }

    pub fn f_high(&self) -> &HomogeneousForm {
        &self.f_high
    }

    pub fn vertex(&self) -> ProjectivePoint {
        self.frame
            .inverse()
            .apply(&ProjectivePoint::coordinate_point(self.ambient, 0))
    }

    /// Equation in frame coordinates, `x0 * F_{d-1} + F_d`.
    pub fn equation_frame(&self) -> HomogeneousForm {
        let n = self.ambient + 1;
        let low = self.f_low.embed_shift(n, 1).mul_var(0);
        let high = self.f_high.embed_shift(n, 1);
        low.add(&high).expect("degrees match")
    }

    /// Equation in the original coordinates.
    pub fn equation(&self) -> HomogeneousForm {
        self.equation_frame()
            .substitute(&self.frame.to_form_tuple())
            .expect("linear substitution")
    }

    /// Stereographic projection from the vertex and its explicit inverse.
    /// The projection is the linear projection to the hyperplane; the
    /// inverse is the tuple `[-F_d, F_{d-1} x_1, ..., F_{d-1} x_r]`
    /// conjugated by the frame. `equation . inv` vanishes identically.
    pub fn stereographic(&self) -> (RationalMap, RationalMap) {
        let n = self.ambient + 1;
        let frame_tuple = self.frame.to_form_tuple();
        // projection: frame rows 1..r as linear forms
        let proj = RationalMap::new(
            FormTuple::new(frame_tuple.forms()[1..].to_vec()).expect("frame rows independent"),
        );
        // inverse in frame coordinates, then mapped back through M = frame^{-1}
        let mut inv_frame = Vec::with_capacity(n);
        inv_frame.push(self.f_high.neg());
        for i in 0..self.ambient {
            inv_frame.push(self.f_low.mul_var(i));
        }
        let back = self.frame.inverse();
        let m = back.matrix();
        let forms = (0..n)
            .map(|i| {
                let mut acc = HomogeneousForm::zero(self.ambient, self.degree);
                for (j, f) in inv_frame.iter().enumerate() {
                    if !m.get(i, j).is_zero() {
                        acc = acc.add(&f.scale(m.get(i, j))).unwrap();
                    }
                }
                acc
            })
            .collect();
        let inv = RationalMap::new(FormTuple::new(forms).expect("inverse tuple nonzero"));
        (proj, inv)
    }
}

/// The de Jonquières transformation `[X, Y x_1, ..., Y x_r]` mapping the
/// monoid `x` to the hyperplane (y0 = 0). Requires a shared frame and
/// `deg y = deg x - 1`.
pub fn monoid_linearize(x: &Monoid, y: &Monoid) -> Result<DeJonquieresMap> {
    if x.frame != y.frame {
        return Err(Error::DegeneratePosition("monoids must share vertex and frame"));
    }
    if y.degree + 1 != x.degree {
        return Err(Error::DegreeMismatch(y.degree, x.degree - 1));
    }
    DeJonquieresMap::new(
        x.ambient,
        x.frame.clone(),
        x.f_low.clone(),
        x.f_high.clone(),
        y.f_low.clone(),
        y.f_high.clone(),
    )
}

/// Bi-vertex monoid in Construction-4.1 coordinates: the frame sends the
/// vertices to [0,...,0,1] and [0,...,0,1,0]; the equation there is
/// `F_d + x_{r-1} G_{d-1} + x_r F_{d-1} + x_r x_{r-1} F_{d-2}` with parts
/// in x_0..x_{r-2}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiVertexMonoid {
    ambient: usize,
    degree: usize,
    frame: LinearAutomorphism,
    f_d: HomogeneousForm,
    g_dm1: HomogeneousForm,
    f_dm1: HomogeneousForm,
    f_dm2: HomogeneousForm,
}

impl BiVertexMonoid {
    pub fn new(
        ambient: usize,
        degree: usize,
        frame: LinearAutomorphism,
        f_d: HomogeneousForm,
        g_dm1: HomogeneousForm,
        f_dm1: HomogeneousForm,
        f_dm2: HomogeneousForm,
    ) -> Result<Self> {
        let nv = ambient - 1;
        for (part, expected) in [
            (&f_d, degree),
            (&g_dm1, degree.saturating_sub(1)),
            (&f_dm1, degree.saturating_sub(1)),
            (&f_dm2, degree.saturating_sub(2)),
        ] {
            if part.nvars() != nv {
                return Err(Error::ArityMismatch(part.nvars(), nv));
            }
            if !part.is_zero() && part.degree() != expected {
                return Err(Error::DegreeMismatch(part.degree(), expected));
            }
        }
        if f_d.is_zero() && g_dm1.is_zero() && f_dm1.is_zero() && f_dm2.is_zero() {
            return Err(Error::ZeroInput("bi-vertex monoid equation"));
        }
        if frame.size() != ambient + 1 {
            return Err(Error::DimensionMismatch {
                expected: ambient + 1,
                got: frame.size(),
            });
        }
        Ok(BiVertexMonoid {
            ambient,
            degree,
            frame,
            f_d,
            g_dm1,
            f_dm1,
            f_dm2,
        })
    }

    /// Decompose an equation with prescribed distinct vertices `p1 -> e_r`,
    /// `p2 -> e_{r-1}`; the equation must have degree at most one in each
    /// of the last two frame coordinates.
    pub fn from_equation(
        eq: &HomogeneousForm,
        p1: &ProjectivePoint,
        p2: &ProjectivePoint,
    ) -> Result<BiVertexMonoid> {
        let frame = LinearAutomorphism::frame_to_last_two(p1, p2)?;
        Self::from_equation_framed(eq, frame)
    }

    pub fn from_equation_framed(
        eq: &HomogeneousForm,
        frame: LinearAutomorphism,
    ) -> Result<BiVertexMonoid> {
        if eq.is_zero() {
            return Err(Error::ZeroInput("bi-vertex monoid equation"));
        }
        let n = eq.nvars();
        let r = n - 1;
        let back = frame.inverse();
        let eq_f = eq.substitute(&back.to_form_tuple())?;
        let d = eq_f.degree();
        if eq_f.degree_in(r) > 1 || eq_f.degree_in(r - 1) > 1 {
            return Err(Error::WrongMultiplicity(
                "equation is not linear in the two vertex coordinates".into(),
            ));
        }
        let strip = |f: HomogeneousForm| -> HomogeneousForm {
            // remove the two vertex variables (indices r-1 and r)
            f.drop_var(r).drop_var(r - 1)
        };
        let base = eq_f.coeff_of_power(r, 0);
        let with_r = eq_f.coeff_of_power(r, 1);
        let f_d = strip(base.coeff_of_power(r - 1, 0));
        let g_dm1 = strip(base.coeff_of_power(r - 1, 1));
        let f_dm1 = strip(with_r.coeff_of_power(r - 1, 0));
        let f_dm2 = strip(with_r.coeff_of_power(r - 1, 1));
        BiVertexMonoid::new(r, d, frame, f_d, g_dm1, f_dm1, f_dm2)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn frame(&self) -> &LinearAutomorphism {
        &self.frame
    }

    pub fn parts(
        &self,
    ) -> (
        &HomogeneousForm,
        &HomogeneousForm,
        &HomogeneousForm,
        &HomogeneousForm,
    ) {
        (&self.f_d, &self.g_dm1, &self.f_dm1, &self.f_dm2)
    }

    /// Both vertex layers carry multiplicity exactly d-1:
    /// `F_{d-1} + x_{r-1} F_{d-2}` and `G_{d-1} + x_r F_{d-2}` are nonzero.
    pub fn vertex_layers_valid(&self) -> bool {
        (!self.f_dm1.is_zero() || !self.f_dm2.is_zero())
            && (!self.g_dm1.is_zero() || !self.f_dm2.is_zero())
    }

    /// Equation in frame coordinates (nvars = ambient + 1).
    pub fn equation_frame(&self) -> HomogeneousForm {
        let n = self.ambient + 1;
        let r = self.ambient;
        let fd = self.f_d.embed_shift(n, 0);
        let g = self.g_dm1.embed_shift(n, 0).mul_var(r - 1);
        let f1 = self.f_dm1.embed_shift(n, 0).mul_var(r);
        let f0 = self.f_dm2.embed_shift(n, 0).mul_var(r).mul_var(r - 1);
        fd.add(&g)
            .and_then(|a| a.add(&f1))
            .and_then(|a| a.add(&f0))
            .expect("uniform degree")
    }

    pub fn equation(&self) -> HomogeneousForm {
        self.equation_frame()
            .substitute(&self.frame.to_form_tuple())
            .expect("linear substitution")
    }

    /// The double projection as a structured de Jonquières map of
    /// P^{ambient-1} in frame coordinates: input H1 = {x_r = 0}, output
    /// H2 = {x_{r-1} = 0}. Its `forward()` tuple is
    /// `[(F_{d-2} x_{r-1} + F_{d-1}) x_0, ..., -F_d - x_{r-1} G_{d-1}]`.
    /// Callers needing other hyperplanes conjugate externally.
    pub fn double_projection(&self) -> Result<DeJonquieresMap> {
        if self.f_dm2.is_zero() && self.f_dm1.is_zero() {
            return Err(Error::DegenerateDenominator);
        }
        let r = self.ambient;
        // cyclic frame on P^{r-1}: z0 = y_{r-1}, z_i = y_{i-1}
        let mut rot = QMatrix::zeros(r, r);
        rot.set(0, r - 1, rat_one());
        for i in 1..r {
            rot.set(i, i - 1, rat_one());
        }
        let rot = LinearAutomorphism::new(rot).expect("permutation invertible");
        DeJonquieresMap::new(
            r - 1,
            rot,
            self.g_dm1.neg(),
            self.f_d.neg(),
            self.f_dm2.clone(),
            self.f_dm1.clone(),
        )
    }
}
