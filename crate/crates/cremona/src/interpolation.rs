//! Linear systems of (bi-vertex) monoids containing a parametrized reduced
//! scheme. Containment is imposed coefficient-wise on the pulled-back
//! polynomial of every component parametrization, never by point sampling,
//! and the solution space comes from an exact fraction-free nullspace.

use crate::error::{Error, Result};
use crate::gcd;
use crate::matrix::QMatrix;
use crate::monoid::{BiVertexMonoid, Monoid};
use crate::poly::{monomials, Exponents, FormTuple, HomogeneousForm};
use crate::projective::{LinearAutomorphism, ProjectivePoint, Sampler};
use crate::ratmap::{ParamScheme, SchemeComponent};
use crate::scalar::{rat_int, rat_zero, Rat};
use num_traits::Zero;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SystemKind {
    /// Vertex framed to [1,0,...,0]; unknowns (F_{d-1}, F_d) in r variables.
    SingleVertex,
    /// Vertices framed to the last two coordinate points; unknowns
    /// (F_d, G_{d-1}, F_{d-1}, F_{d-2}) in r-1 variables.
    BiVertex,
}

/// Solution space of the containment conditions, together with the
/// coefficient layout that makes members bit-exactly reproducible.
#[derive(Clone, Debug)]
pub struct MonoidSystem {
    pub ambient: usize,
    pub degree: usize,
    pub kind: SystemKind,
    pub frame: LinearAutomorphism,
    /// (block label, block degree, block monomials) in assembly order.
    pub layout: Vec<(String, usize, Vec<Exponents>)>,
    /// Canonical nullspace basis of the containment conditions.
    pub basis: Vec<Vec<Rat>>,
}

impl MonoidSystem {
    pub fn total_unknowns(&self) -> usize {
        self.layout.iter().map(|(_, _, m)| m.len()).sum()
    }

    fn part_nvars(&self) -> usize {
        match self.kind {
            SystemKind::SingleVertex => self.ambient,
            SystemKind::BiVertex => self.ambient - 1,
        }
    }

    /// Assemble the layout blocks from a coefficient vector.
    pub fn member_parts(&self, coeffs: &[Rat]) -> Vec<HomogeneousForm> {
        assert_eq!(coeffs.len(), self.total_unknowns());
        let nv = self.part_nvars();
        let mut out = Vec::with_capacity(self.layout.len());
        let mut idx = 0usize;
        for (_, deg, monos) in &self.layout {
            let f = HomogeneousForm::from_terms(
                nv,
                *deg,
                monos.iter().map(|e| {
                    let c = coeffs[idx].clone();
                    idx += 1;
                    (e.0.clone(), c)
                }),
            )
            .expect("layout degrees consistent");
            out.push(f);
        }
        out
    }

    /// The member equation in frame coordinates (nvars = ambient + 1).
    pub fn member_equation_frame(&self, coeffs: &[Rat]) -> HomogeneousForm {
        let parts = self.member_parts(coeffs);
        let n = self.ambient + 1;
        match self.kind {
            SystemKind::SingleVertex => {
                let low = parts[0].embed_shift(n, 1).mul_var(0);
                let high = parts[1].embed_shift(n, 1);
                low.add(&high).expect("uniform degree")
            }
            SystemKind::BiVertex => {
                let r = self.ambient;
                let fd = parts[0].embed_shift(n, 0);
                let g = parts[1].embed_shift(n, 0).mul_var(r - 1);
                let f1 = parts[2].embed_shift(n, 0).mul_var(r);
                let f0 = parts[3].embed_shift(n, 0).mul_var(r).mul_var(r - 1);
                fd.add(&g)
                    .and_then(|a| a.add(&f1))
                    .and_then(|a| a.add(&f0))
                    .expect("uniform degree")
            }
        }
    }

    /// The member equation in original coordinates.
    pub fn member_equation(&self, coeffs: &[Rat]) -> HomogeneousForm {
        self.member_equation_frame(coeffs)
            .substitute(&self.frame.to_form_tuple())
            .expect("linear substitution")
    }

    pub fn member_monoid(&self, coeffs: &[Rat]) -> Result<Monoid> {
        if self.kind != SystemKind::SingleVertex {
            return Err(Error::DegeneratePosition("not a single-vertex system"));
        }
        let parts = self.member_parts(coeffs);
        Monoid::new(
            self.ambient,
            self.frame.clone(),
            parts[0].clone(),
            parts[1].clone(),
        )
    }

    pub fn member_bivertex(&self, coeffs: &[Rat]) -> Result<BiVertexMonoid> {
        if self.kind != SystemKind::BiVertex {
            return Err(Error::DegeneratePosition("not a bi-vertex system"));
        }
        let parts = self.member_parts(coeffs);
        BiVertexMonoid::new(
            self.ambient,
            self.degree,
            self.frame.clone(),
            parts[0].clone(),
            parts[1].clone(),
            parts[2].clone(),
            parts[3].clone(),
        )
    }

    /// Vertices in the original coordinates.
    pub fn vertices(&self) -> Vec<ProjectivePoint> {
        let back = self.frame.inverse();
        match self.kind {
            SystemKind::SingleVertex => {
                vec![back.apply(&ProjectivePoint::coordinate_point(self.ambient, 0))]
            }
            SystemKind::BiVertex => vec![
                back.apply(&ProjectivePoint::coordinate_point(self.ambient, self.ambient)),
                back.apply(&ProjectivePoint::coordinate_point(
                    self.ambient,
                    self.ambient - 1,
                )),
            ],
        }
    }
}

/// Projective dimension of the system (-1 when empty).
pub fn system_dimension(s: &MonoidSystem) -> i64 {
    s.basis.len() as i64 - 1
}

fn single_layout(r: usize, d: usize) -> Vec<(String, usize, Vec<Exponents>)> {
    vec![
        ("f_low".into(), d - 1, monomials(r, d - 1)),
        ("f_high".into(), d, monomials(r, d)),
    ]
}

fn bivertex_layout(r: usize, d: usize) -> Vec<(String, usize, Vec<Exponents>)> {
    let nv = r - 1;
    vec![
        ("f_d".into(), d, monomials(nv, d)),
        ("g_dm1".into(), d - 1, monomials(nv, d - 1)),
        ("f_dm1".into(), d - 1, monomials(nv, d - 1)),
        (
            "f_dm2".into(),
            d.saturating_sub(2),
            if d >= 2 { monomials(nv, d - 2) } else { Vec::new() },
        ),
    ]
}

/// Frame-transform a component parametrization: returns the tuple of
/// frame coordinates pulled back to the parameters.
fn framed_component(frame: &LinearAutomorphism, comp: &SchemeComponent) -> Vec<HomogeneousForm> {
    let m = frame.matrix();
    let n = m.nrows();
    let deg = comp.tuple.degree();
    let arity = comp.arity;
    (0..n)
        .map(|i| {
            let mut acc = HomogeneousForm::zero(arity, deg);
            for (j, f) in comp.tuple.forms().iter().enumerate() {
                if !m.get(i, j).is_zero() {
                    acc = acc.add(&f.scale(m.get(i, j))).unwrap();
                }
            }
            acc
        })
        .collect()
}

/// Deterministic parameter probes for the vertex screen.
fn probe_params(arity: usize) -> Vec<Vec<Rat>> {
    let mut probes = Vec::new();
    for k in 1..=4i64 {
        let mut v = Vec::with_capacity(arity);
        let mut acc = 1i64;
        for _ in 0..arity {
            v.push(rat_int(acc));
            acc = acc.wrapping_mul(k + 1).rem_euclid(97).max(1);
        }
        probes.push(v);
    }
    probes
}

/// Screen that a framed vertex coordinate point does not lie on the
/// component: the non-vertex coordinate pullbacks must not all vanish,
/// probe evaluations must miss the vertex, and for binary parametrizations
/// the gcd-based check is exact.
fn vertex_screen(framed: &[HomogeneousForm], vertex_index: usize, arity: usize) -> Result<()> {
    let others: Vec<&HomogeneousForm> = framed
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != vertex_index)
        .map(|(_, f)| f)
        .collect();
    if others.iter().all(|f| f.is_zero()) {
        return Err(Error::VertexOnScheme);
    }
    for probe in probe_params(arity) {
        let vals: Vec<Rat> = framed.iter().map(|f| f.eval(&probe)).collect();
        if vals.iter().all(|v| v.is_zero()) {
            continue; // base point of the parametrization, not a scheme point
        }
        let on_vertex = vals
            .iter()
            .enumerate()
            .all(|(i, v)| (i == vertex_index) != v.is_zero());
        if on_vertex {
            return Err(Error::VertexOnScheme);
        }
    }
    if arity == 2 {
        // exact: common zero of the non-vertex coordinates that is not a
        // base point of the whole tuple
        let mut g: Option<HomogeneousForm> = None;
        for f in &others {
            if f.is_zero() {
                continue;
            }
            g = Some(match g {
                None => (*f).clone(),
                Some(a) => gcd::gcd(&a, f),
            });
        }
        let mut g = g.expect("not all zero");
        let v = &framed[vertex_index];
        if !v.is_zero() {
            loop {
                let shared = gcd::gcd(&g, v);
                if shared.is_constant() {
                    break;
                }
                g = gcd::div_exact(&g, &shared).expect("gcd divides");
            }
        }
        if !g.is_constant() {
            return Err(Error::VertexOnScheme);
        }
    }
    Ok(())
}

/// Build the containment rows for one component: the pullback of the
/// member equation must vanish coefficient-wise.
fn containment_rows(
    framed: &[HomogeneousForm],
    layout: &[(String, usize, Vec<Exponents>)],
    kind: SystemKind,
    ambient: usize,
    d: usize,
) -> Vec<Vec<Rat>> {
    let arity = framed[0].nvars();
    let e = framed.iter().find(|f| !f.is_zero()).map(|f| f.degree()).unwrap();
    let target_monos = monomials(arity, d * e);

    // power tables for each framed coordinate
    let mut powers: Vec<Vec<HomogeneousForm>> = framed
        .iter()
        .map(|f| vec![HomogeneousForm::one(arity), f.clone()])
        .collect();
    let power = |i: usize, k: usize, powers: &mut Vec<Vec<HomogeneousForm>>| -> HomogeneousForm {
        while powers[i].len() <= k {
            let next = powers[i].last().unwrap().mul(&framed[i]).unwrap();
            powers[i].push(next);
        }
        powers[i][k].clone()
    };

    // which framed coordinates feed the part monomials, and the per-block
    // multiplier pulled back to the parameters
    let (part_coords, block_factors): (Vec<usize>, Vec<HomogeneousForm>) = match kind {
        SystemKind::SingleVertex => (
            (1..=ambient).collect(),
            vec![
                framed[0].clone(),                       // f_low * gamma_0
                HomogeneousForm::one(arity),             // f_high
            ],
        ),
        SystemKind::BiVertex => {
            let r = ambient;
            let fr1 = framed[r - 1].clone();
            let fr = framed[r].clone();
            let both = fr.mul(&fr1).unwrap();
            (
                (0..=r - 2).collect(),
                vec![HomogeneousForm::one(arity), fr1, fr, both],
            )
        }
    };

    // columns: for each unknown, the pulled-back form's coefficient vector
    let mut columns: Vec<Vec<Rat>> = Vec::new();
    for ((_, _, monos), factor) in layout.iter().zip(block_factors.iter()) {
        for mono in monos {
            let mut prod = factor.clone();
            for (slot, &coord) in part_coords.iter().enumerate() {
                let k = mono.0[slot];
                if k > 0 {
                    prod = prod.mul(&power(coord, k, &mut powers)).unwrap();
                }
            }
            columns.push(prod.coeff_vector(&target_monos));
        }
    }

    // rows = one per target monomial
    let ncols = columns.len();
    let mut rows = vec![vec![rat_zero(); ncols]; target_monos.len()];
    for (c, col) in columns.iter().enumerate() {
        for (rowi, v) in col.iter().enumerate() {
            if !v.is_zero() {
                rows[rowi][c] = v.clone();
            }
        }
    }
    rows.retain(|r| r.iter().any(|v| !v.is_zero()));
    rows
}

fn build_system(
    components: &[SchemeComponent],
    ambient: usize,
    kind: SystemKind,
    frame: LinearAutomorphism,
    d: usize,
    screen: bool,
) -> Result<MonoidSystem> {
    let layout = match kind {
        SystemKind::SingleVertex => single_layout(ambient, d),
        SystemKind::BiVertex => bivertex_layout(ambient, d),
    };
    let total: usize = layout.iter().map(|(_, _, m)| m.len()).sum();
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for comp in components {
        let framed = framed_component(&frame, comp);
        if screen {
            match kind {
                SystemKind::SingleVertex => vertex_screen(&framed, 0, comp.arity)?,
                SystemKind::BiVertex => {
                    vertex_screen(&framed, ambient, comp.arity)?;
                    vertex_screen(&framed, ambient - 1, comp.arity)?;
                }
            }
        }
        rows.extend(containment_rows(&framed, &layout, kind, ambient, d));
    }
    let basis = if rows.is_empty() {
        QMatrix::zeros(1, total).nullspace()
    } else {
        QMatrix::from_rows(rows).nullspace()
    };
    Ok(MonoidSystem {
        ambient,
        degree: d,
        kind,
        frame,
        layout,
        basis,
    })
}

/// Linear system of degree-d monoids with the given vertex containing the
/// scheme.
pub fn monoid_system(z: &ParamScheme, vertex: &ProjectivePoint, d: usize) -> Result<MonoidSystem> {
    if d < 1 {
        return Err(Error::NoSolutionAtDegree(d));
    }
    let r = z.ambient;
    if vertex.dim() != r {
        return Err(Error::DimensionMismatch {
            expected: r,
            got: vertex.dim(),
        });
    }
    let frame = LinearAutomorphism::frame_to_origin(vertex);
    build_system(&z.components, r, SystemKind::SingleVertex, frame, d, true)
}

/// The unconstrained system of degree-d monoids with the given vertex.
pub fn empty_monoid_system(r: usize, vertex: &ProjectivePoint, d: usize) -> Result<MonoidSystem> {
    let frame = LinearAutomorphism::frame_to_origin(vertex);
    build_system(&[], r, SystemKind::SingleVertex, frame, d, true)
}

/// Linear system of degree-d monoids with two prescribed vertices
/// containing the scheme; the frame sends p1 to the last and p2 to the
/// second-to-last coordinate point.
pub fn bivertex_system(
    z: &ParamScheme,
    p1: &ProjectivePoint,
    p2: &ProjectivePoint,
    d: usize,
) -> Result<MonoidSystem> {
    let frame = LinearAutomorphism::frame_to_last_two(p1, p2)?;
    bivertex_system_framed(z, frame, d)
}

/// Bi-vertex system with an externally supplied frame (the pipelines pass
/// frames that keep their bookkeeping coordinates fixed).
pub fn bivertex_system_framed(
    z: &ParamScheme,
    frame: LinearAutomorphism,
    d: usize,
) -> Result<MonoidSystem> {
    if d < 1 {
        return Err(Error::NoSolutionAtDegree(d));
    }
    build_system(&z.components, z.ambient, SystemKind::BiVertex, frame, d, true)
}

/// As [`bivertex_system_framed`] but without the vertex-on-scheme screen.
/// The pipelines need this at their forced final vertex: a fixed divisorial
/// component in the target parametrization can place that vertex on the
/// scheme, and exact per-step sample verification remains the gate.
pub fn bivertex_system_framed_unscreened(
    z: &ParamScheme,
    frame: LinearAutomorphism,
    d: usize,
) -> Result<MonoidSystem> {
    if d < 1 {
        return Err(Error::NoSolutionAtDegree(d));
    }
    build_system(&z.components, z.ambient, SystemKind::BiVertex, frame, d, false)
}

/// The unconstrained bi-vertex system.
pub fn empty_bivertex_system(
    r: usize,
    p1: &ProjectivePoint,
    p2: &ProjectivePoint,
    d: usize,
) -> Result<MonoidSystem> {
    let frame = LinearAutomorphism::frame_to_last_two(p1, p2)?;
    build_system(&[], r, SystemKind::BiVertex, frame, d, true)
}

/// Parametrization of the cone over a component with the given vertex:
/// (s, t, u...) -> s*g(u)*vertex + t*gamma(u), with g a scaling form making
/// the tuple homogeneous. Exact containment test: a form contains the cone
/// iff its pullback under this parametrization vanishes identically.
pub fn cone_parametrization(vertex: &ProjectivePoint, comp: &SchemeComponent) -> SchemeComponent {
    let a = comp.arity;
    let e = comp.degree();
    let new_arity = a + 2;
    let g = HomogeneousForm::variable(new_arity, 2).pow(e); // first u variable
    let forms = (0..comp.tuple.len())
        .map(|i| {
            let gamma = comp.tuple.forms()[i].embed_shift(new_arity, 2).mul_var(1);
            let apex = g.scale(&vertex.coords()[i]).mul_var(0);
            apex.add(&gamma).expect("uniform degree")
        })
        .collect();
    SchemeComponent::new(FormTuple::new(forms).expect("cone tuple nonzero"))
}

/// A seeded member of the system that is layer-valid and avoids every cone
/// over a component from every vertex. Nonzero-pullback proofs prefer an
/// exact witness point on the cone and fall back to the symbolic pullback.
pub fn pick_cone_avoiding(
    s: &MonoidSystem,
    z: &ParamScheme,
    sampler: &mut Sampler,
) -> Result<HomogeneousForm> {
    pick_member(s, z, sampler).map(|(_, eq)| eq)
}

/// As [`pick_cone_avoiding`], also returning the coefficient vector so the
/// member is bit-exactly reproducible from the serialized system.
pub fn pick_member(
    s: &MonoidSystem,
    z: &ParamScheme,
    sampler: &mut Sampler,
) -> Result<(Vec<Rat>, HomogeneousForm)> {
    if s.basis.is_empty() {
        return Err(Error::NoSolutionAtDegree(s.degree));
    }
    let vertices = s.vertices();
    'attempts: for _ in 0..16 {
        let mix = sampler.coeff_vector(s.basis.len(), 5);
        let mut coeffs = vec![rat_zero(); s.total_unknowns()];
        for (c, b) in mix.iter().zip(s.basis.iter()) {
            for (ci, bi) in coeffs.iter_mut().zip(b.iter()) {
                *ci += c * bi;
            }
        }
        // layer validity
        let parts = s.member_parts(&coeffs);
        let valid = match s.kind {
            SystemKind::SingleVertex => !parts[0].is_zero(),
            SystemKind::BiVertex => {
                (!parts[2].is_zero() || !parts[3].is_zero())
                    && (!parts[1].is_zero() || !parts[3].is_zero())
            }
        };
        if !valid {
            continue 'attempts;
        }
        let eq = s.member_equation(&coeffs);
        // containment sanity at one probe per component
        for comp in &z.components {
            for probe in probe_params(comp.arity).into_iter().take(1) {
                let vals = comp.tuple.eval(&probe);
                if vals.iter().all(|v| v.is_zero()) {
                    continue;
                }
                debug_assert!(eq.eval(&vals).is_zero(), "member must contain the scheme");
            }
        }
        // cone avoidance for every vertex x component
        for v in &vertices {
            for comp in &z.components {
                let cone = cone_parametrization(v, comp);
                if !nonzero_on_component(&eq, &cone, sampler) {
                    continue 'attempts;
                }
            }
        }
        return Ok((coeffs, eq));
    }
    Err(Error::AvoidanceExhausted)
}

/// Exact decision that `eq` does not vanish identically on a parametrized
/// component: witness point first, symbolic pullback as fallback.
pub fn nonzero_on_component(
    eq: &HomogeneousForm,
    comp: &SchemeComponent,
    sampler: &mut Sampler,
) -> bool {
    for _ in 0..8 {
        let params: Vec<Rat> = (0..comp.arity).map(|_| sampler.rat(7)).collect();
        let vals = comp.tuple.eval(&params);
        if vals.iter().all(|v| v.is_zero()) {
            continue;
        }
        if !eq.eval(&vals).is_zero() {
            return true;
        }
    }
    match eq.substitute(&comp.tuple) {
        Ok(pullback) => !pullback.is_zero(),
        Err(Error::ZeroComposite) => false,
        Err(_) => false,
    }
}

/// Twisted cubic fixture shared by tests and examples.
pub fn twisted_cubic() -> SchemeComponent {
    let u = HomogeneousForm::variable(2, 0);
    let v = HomogeneousForm::variable(2, 1);
    SchemeComponent::new(
        FormTuple::new(vec![
            u.pow(3),
            u.pow(2).mul(&v).unwrap(),
            u.mul(&v.pow(2)).unwrap(),
            v.pow(3),
        ])
        .unwrap(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::HomogeneousForm;
    use crate::scalar::rat_one;

    fn pt(coords: &[i64]) -> ProjectivePoint {
        ProjectivePoint::from_ints(coords).unwrap()
    }

    fn x(n: usize, i: usize) -> HomogeneousForm {
        HomogeneousForm::variable(n, i)
    }

    fn cubic_scheme() -> ParamScheme {
        ParamScheme::new(vec![twisted_cubic()]).unwrap()
    }

    #[test]
    fn twisted_cubic_quadric_system() {
        let z = cubic_scheme();
        let s = monoid_system(&z, &pt(&[0, 1, 0, 0]), 2).unwrap();
        assert_eq!(system_dimension(&s), 1);
        // contains x1x3 - x2^2 and x0x3 - x1x2
        let n = 4;
        let q1 = x(n, 1).mul(&x(n, 3)).unwrap().sub(&x(n, 2).pow(2)).unwrap();
        let q2 = x(n, 0).mul(&x(n, 3)).unwrap().sub(&x(n, 1).mul(&x(n, 2)).unwrap()).unwrap();
        let members: Vec<HomogeneousForm> = s
            .basis
            .iter()
            .map(|v| s.member_equation(v))
            .collect();
        assert!(crate::dejonquieres::spans_same_space(&members, &[q1, q2]));
    }

    #[test]
    fn twisted_cubic_dimension_closed_form() {
        // d = 2,3,4,5 -> 1, 5, 11, 19 (closed form d^2 - d - 1)
        let z = cubic_scheme();
        for d in 2..=5usize {
            let s = monoid_system(&z, &pt(&[0, 1, 0, 0]), d).unwrap();
            assert_eq!(system_dimension(&s), (d * d - d) as i64 - 1, "degree {d}");
        }
    }

    #[test]
    fn empty_scheme_dimension_is_binomial_count() {
        // r = 3, d = 3: dim = C(4,2) + C(5,2) - 1 = 6 + 10 - 1 = 15
        let s = empty_monoid_system(3, &pt(&[0, 1, 0, 0]), 3).unwrap();
        assert_eq!(system_dimension(&s), 15);
    }

    #[test]
    fn dimension_invariant_under_conjugation() {
        let z = cubic_scheme();
        let mut smp = Sampler::new(55);
        let a = smp.automorphism(4, 3);
        let map = crate::ratmap::RationalMap::from_matrix(&a);
        let z2 = z.map_through(&map).unwrap();
        let v = pt(&[0, 1, 0, 0]);
        let v2 = a.apply(&v);
        for d in 2..=4usize {
            let s1 = monoid_system(&z, &v, d).unwrap();
            let s2 = monoid_system(&z2, &v2, d).unwrap();
            assert_eq!(system_dimension(&s1), system_dimension(&s2));
        }
    }

    #[test]
    fn curve_condition_inequality() {
        // dim M(Z)_d >= dim M_d - sum_j (d * deg_j + 1), exactly
        let z = cubic_scheme();
        let v = pt(&[0, 1, 0, 0]);
        for d in 2..=5usize {
            let full = system_dimension(&empty_monoid_system(3, &v, d).unwrap());
            let constrained = system_dimension(&monoid_system(&z, &v, d).unwrap());
            let bound = full - (d as i64 * 3 + 1);
            assert!(constrained >= bound, "d={d}: {constrained} >= {bound}");
        }
    }

    #[test]
    fn line_through_coordinate_points_d1() {
        // hyperplanes through the line <e1, e2> with vertex e0 in P^3
        let line = SchemeComponent::new(
            FormTuple::new(vec![
                HomogeneousForm::zero(2, 1),
                x(2, 0),
                x(2, 1),
                HomogeneousForm::zero(2, 1),
            ])
            .unwrap(),
        );
        let z = ParamScheme::new(vec![line]).unwrap();
        let s = monoid_system(&z, &pt(&[1, 0, 0, 0]), 1).unwrap();
        // hyperplanes a*x0 + c*x3: projective dimension 1
        assert_eq!(system_dimension(&s), 1);
        for v in &s.basis {
            let eq = s.member_equation(v);
            // vanishes on the line
            let vals = vec![rat_int(0), rat_int(2), rat_int(5), rat_int(0)];
            assert!(eq.eval(&vals).is_zero());
        }
    }

    #[test]
    fn vertex_on_scheme_rejected() {
        let z = cubic_scheme();
        // [1,0,0,0] lies on the twisted cubic (u=1, v=0)
        assert!(matches!(
            monoid_system(&z, &pt(&[1, 0, 0, 0]), 2),
            Err(Error::VertexOnScheme)
        ));
    }

    #[test]
    fn bivertex_counts_and_skew_lines() {
        // empty scheme, d=2, r=3: 3+2+2+1-1 = 7
        let s = empty_bivertex_system(3, &pt(&[0, 0, 0, 1]), &pt(&[0, 0, 1, 0]), 2).unwrap();
        assert_eq!(system_dimension(&s), 7);
        // d=1: hyperplanes; the unconstrained count is 2+1+1-1 = 3
        let s1 = empty_bivertex_system(3, &pt(&[0, 0, 0, 1]), &pt(&[0, 0, 1, 0]), 1).unwrap();
        assert_eq!(system_dimension(&s1), 3);
        // two skew coordinate lines in P^3, generic vertices, d=2: nonempty
        let l1 = SchemeComponent::new(
            FormTuple::new(vec![
                x(2, 0),
                x(2, 1),
                HomogeneousForm::zero(2, 1),
                HomogeneousForm::zero(2, 1),
            ])
            .unwrap(),
        );
        let l2 = SchemeComponent::new(
            FormTuple::new(vec![
                HomogeneousForm::zero(2, 1),
                HomogeneousForm::zero(2, 1),
                x(2, 0),
                x(2, 1),
            ])
            .unwrap(),
        );
        let z = ParamScheme::new(vec![l1, l2]).unwrap();
        let s2 = bivertex_system(&z, &pt(&[1, 2, 3, 5]), &pt(&[5, 3, 2, 1]), 2).unwrap();
        assert!(system_dimension(&s2) >= 0);
        // members contain both lines
        for v in &s2.basis {
            let eq = s2.member_equation(v);
            let vals = vec![rat_int(3), rat_int(7), rat_int(0), rat_int(0)];
            assert!(eq.eval(&vals).is_zero());
            let vals = vec![rat_int(0), rat_int(0), rat_int(4), rat_int(9)];
            assert!(eq.eval(&vals).is_zero());
        }
    }

    #[test]
    fn cone_parametrizations() {
        // cone over a line is a plane: pullback of the plane equation is 0
        let line = SchemeComponent::new(
            FormTuple::new(vec![
                HomogeneousForm::zero(2, 1),
                x(2, 0),
                x(2, 1),
                HomogeneousForm::zero(2, 1),
            ])
            .unwrap(),
        );
        let cone = cone_parametrization(&pt(&[1, 0, 0, 0]), &line);
        assert_eq!(cone.arity, 4);
        // the plane {x3 = 0} contains the cone
        let plane = x(4, 3);
        assert!(plane.substitute(&cone.tuple).unwrap_or_else(|_| HomogeneousForm::zero(4, 1)).is_zero()
            || matches!(plane.substitute(&cone.tuple), Err(Error::ZeroComposite)));
        // quadrics through the cubic vs through its cone
        let cubic = twisted_cubic();
        let cone3 = cone_parametrization(&pt(&[0, 1, 0, 0]), &cubic);
        let n = 4;
        let q1 = x(n, 1).mul(&x(n, 3)).unwrap().sub(&x(n, 2).pow(2)).unwrap();
        // q1 contains the cubic but not its cone from [0,1,0,0]
        let pull_cubic = q1.substitute(&cubic.tuple);
        assert!(matches!(pull_cubic, Err(Error::ZeroComposite)) || pull_cubic.unwrap().is_zero());
        let mut s = Sampler::new(3);
        assert!(nonzero_on_component(&q1, &cone3, &mut s));
        // cone over a point is a line
        let point = SchemeComponent::new(
            FormTuple::new(vec![
                x(1, 0),
                HomogeneousForm::zero(1, 1),
                HomogeneousForm::zero(1, 1),
                x(1, 0),
            ])
            .unwrap(),
        );
        let line_cone = cone_parametrization(&pt(&[0, 1, 0, 0]), &point);
        assert_eq!(crate::ratmap::image_rank(&line_cone.tuple).unwrap(), 2);
    }

    #[test]
    fn pick_avoids_cones_for_the_cubic() {
        let z = cubic_scheme();
        let v = pt(&[0, 1, 0, 0]);
        let s = monoid_system(&z, &v, 3).unwrap();
        let mut smp = Sampler::new(17);
        let eq = pick_cone_avoiding(&s, &z, &mut smp).unwrap();
        // contains the cubic
        let pull = eq.substitute(&z.components[0].tuple);
        assert!(matches!(pull, Err(Error::ZeroComposite)) || pull.unwrap().is_zero());
        // avoids the cone
        let cone = cone_parametrization(&v, &z.components[0]);
        let mut s2 = Sampler::new(18);
        assert!(nonzero_on_component(&eq, &cone, &mut s2));
    }

    #[test]
    fn forced_cone_containment_exhausts() {
        // handcrafted system whose only member contains the cone over the
        // line <e1, e2> from e0: eq = x3*(x0 + x1) as a vertex-e0 monoid
        let line = SchemeComponent::new(
            FormTuple::new(vec![
                HomogeneousForm::zero(2, 1),
                x(2, 0),
                x(2, 1),
                HomogeneousForm::zero(2, 1),
            ])
            .unwrap(),
        );
        let z = ParamScheme::new(vec![line]).unwrap();
        let layout = single_layout(3, 2);
        let total: usize = layout.iter().map(|(_, _, m)| m.len()).sum();
        // f_low = x3 (index of x3 in monomials(3,1) = last), f_high = x1*x3
        let mut member = vec![rat_zero(); total];
        let f_low_monos = &layout[0].2;
        let f_high_monos = &layout[1].2;
        let i_low = f_low_monos.iter().position(|e| e.0 == vec![0, 0, 1]).unwrap();
        member[i_low] = rat_one();
        let i_high = f_high_monos
            .iter()
            .position(|e| e.0 == vec![1, 0, 1])
            .unwrap();
        member[f_low_monos.len() + i_high] = rat_one();
        let s = MonoidSystem {
            ambient: 3,
            degree: 2,
            kind: SystemKind::SingleVertex,
            frame: LinearAutomorphism::identity(4),
            layout,
            basis: vec![member],
        };
        let mut smp = Sampler::new(7);
        assert!(matches!(
            pick_member(&s, &z, &mut smp),
            Err(Error::AvoidanceExhausted)
        ));
    }

    #[test]
    fn avoidance_checks_conjugation_invariant() {
        let z = cubic_scheme();
        let v = pt(&[0, 1, 0, 0]);
        let s = monoid_system(&z, &v, 2).unwrap();
        let mut smp = Sampler::new(23);
        let picked = pick_cone_avoiding(&s, &z, &mut smp);
        // conjugated problem
        let mut smp2 = Sampler::new(77);
        let a = smp2.automorphism(4, 2);
        let map = crate::ratmap::RationalMap::from_matrix(&a);
        let z2 = z.map_through(&map).unwrap();
        let v2 = a.apply(&v);
        let s2 = monoid_system(&z2, &v2, 2).unwrap();
        let mut smp3 = Sampler::new(23);
        let picked2 = pick_cone_avoiding(&s2, &z2, &mut smp3);
        assert_eq!(picked.is_ok(), picked2.is_ok());
    }
}
