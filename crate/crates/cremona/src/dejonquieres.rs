//! de Jonquières maps in Möbius normal form: forward tuples, closed-form
//! inverses (certified a posteriori, never trusted blindly), the linear
//! constraint solver for prescribed moves and fixed points, and the
//! quadro-quadric construction from a point-plus-quadric base locus.

use crate::error::{Error, Result};
use crate::gcd::remove_common_factor;
use crate::matrix::QMatrix;
use crate::poly::{monomials, Exponents, FormTuple, HomogeneousForm};
use crate::projective::{are_aligned, LinearAutomorphism, LinearSubspace, ProjectivePoint, Sampler};
use crate::ratmap::{verify_inverse_pair, InverseCertificate, RationalMap};
use crate::scalar::{rat_one, rat_zero, Rat};
use num_traits::Zero;

/// A de Jonquières transformation of P^r with center framed to
/// [1,0,...,0]. The Möbius data (F0, G0, F, G) are forms of degree
/// (d-1, d, d-2, d-1) in the remaining r variables; the forward tuple
/// `[x0 F0 + G0, x1 (x0 F + G), ..., xr (x0 F + G)]` is homogeneous of
/// degree d, and the determinant `F0 G - F G0` must not vanish
/// identically (birationality).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeJonquieresMap {
    ambient: usize,
    degree: usize,
    frame: LinearAutomorphism,
    f0: HomogeneousForm,
    g0: HomogeneousForm,
    f: HomogeneousForm,
    g: HomogeneousForm,
}

impl DeJonquieresMap {
    pub fn new(
        ambient: usize,
        frame: LinearAutomorphism,
        f0: HomogeneousForm,
        g0: HomogeneousForm,
        f: HomogeneousForm,
        g: HomogeneousForm,
    ) -> Result<Self> {
        let r = ambient;
        if frame.size() != r + 1 {
            return Err(Error::DimensionMismatch {
                expected: r + 1,
                got: frame.size(),
            });
        }
        // degree inferred from the nonzero parts: deg = deg(F0)+1 = deg(G0)
        let degree = if !g0.is_zero() {
            g0.degree()
        } else if !f0.is_zero() {
            f0.degree() + 1
        } else if !g.is_zero() {
            g.degree() + 1
        } else if !f.is_zero() {
            f.degree() + 2
        } else {
            return Err(Error::ZeroInput("all Moebius parts are zero"));
        };
        if degree == 0 {
            return Err(Error::ZeroInput("degree-zero de Jonquieres data"));
        }
        let d = degree;
        for (part, expected, label) in [
            (&f0, d as isize - 1, "F0"),
            (&g0, d as isize, "G0"),
            (&f, d as isize - 2, "F"),
            (&g, d as isize - 1, "G"),
        ] {
            if part.nvars() != r {
                return Err(Error::ArityMismatch(part.nvars(), r));
            }
            if !part.is_zero() && part.degree() as isize != expected {
                let _ = label;
                return Err(Error::DegreeMismatch(part.degree(), expected.max(0) as usize));
            }
        }
        // determinant F0*G - F*G0 not identically zero
        let det = moebius_determinant(&f0, &g0, &f, &g)?;
        if det.is_zero() {
            return Err(Error::ZeroDeterminant);
        }
        Ok(DeJonquieresMap {
            ambient,
            degree,
            frame,
            f0,
            g0,
            f,
            g,
        })
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

    pub fn f0(&self) -> &HomogeneousForm {
        &self.f0
    }

    pub fn g0(&self) -> &HomogeneousForm {
        &self.g0
    }

    pub fn f(&self) -> &HomogeneousForm {
        &self.f
    }

    pub fn g(&self) -> &HomogeneousForm {
        &self.g
    }

    pub fn determinant(&self) -> HomogeneousForm {
        moebius_determinant(&self.f0, &self.g0, &self.f, &self.g).expect("validated at build")
    }

    pub fn center(&self) -> ProjectivePoint {
        self.frame
            .inverse()
            .apply(&ProjectivePoint::coordinate_point(self.ambient, 0))
    }

    /// Normal-form tuple before frame conjugation.
    fn normal_tuple(&self) -> FormTuple {
        let r = self.ambient;
        let n = r + 1;
        let lift = |h: &HomogeneousForm| h.embed_shift(n, 1);
        let numerator = lift(&self.f0).mul_var(0).add(&lift(&self.g0)).unwrap();
        let denom = lift(&self.f).mul_var(0).add(&lift(&self.g)).unwrap();
        let mut forms = Vec::with_capacity(n);
        forms.push(numerator);
        for i in 1..n {
            forms.push(denom.mul_var(i));
        }
        FormTuple::new(forms).expect("normal tuple nonzero")
    }

    /// The forward map in the original coordinates: x -> A^{-1} T(A x).
    pub fn forward(&self) -> RationalMap {
        let t = self.normal_tuple();
        let conj = t
            .substitute(&self.frame.to_form_tuple())
            .expect("linear substitution keeps tuple nonzero");
        RationalMap::new(conj).linear_after(&self.frame.inverse())
    }

    /// Closed-form inverse: Möbius data (G, -G0, -F, F0), same frame.
    pub fn inverse(&self) -> DeJonquieresMap {
        DeJonquieresMap {
            ambient: self.ambient,
            degree: self.degree,
            frame: self.frame.clone(),
            f0: self.g.clone(),
            g0: self.g0.neg(),
            f: self.f.neg(),
            g: self.f0.clone(),
        }
    }

    /// Certify forward/inverse as a mutually inverse pair; the fundamental
    /// polynomial has degree d^2 - 1.
    pub fn certificate(&self) -> Result<InverseCertificate> {
        verify_inverse_pair(&self.forward(), &self.inverse().forward())
    }
}

fn moebius_determinant(
    f0: &HomogeneousForm,
    g0: &HomogeneousForm,
    f: &HomogeneousForm,
    g: &HomogeneousForm,
) -> Result<HomogeneousForm> {
    let lhs = f0.mul(g)?;
    let rhs = f.mul(g0)?;
    lhs.sub(&rhs)
}

/// One prescribed action of the map: carry `from` to `to` (a fixed point
/// when the two coincide). Both must be collinear with the center.
#[derive(Clone, Debug)]
pub struct MoveConstraint {
    pub from: ProjectivePoint,
    pub to: ProjectivePoint,
}

/// Solve the homogeneous linear system of Construction-style constraints
/// at degree `d` over the Möbius coefficient space and pick a seeded
/// solution passing the genericity checks.
///
/// Each move (p, q) with p, q collinear with the vertex contributes one
/// linear equation `a0 F0(a) + G0(a) = b0 (a0 F(a) + G(a))` in the
/// coefficients; fixed points are moves with q = p.
pub fn dj_from_constraints(
    vertex: &ProjectivePoint,
    moves: &[(ProjectivePoint, ProjectivePoint)],
    fixed: &[ProjectivePoint],
    d: usize,
    sampler: &mut Sampler,
) -> Result<DeJonquieresMap> {
    let r = vertex.dim();
    if d < 1 {
        return Err(Error::NoSolutionAtDegree(d));
    }
    for p in fixed.iter().chain(moves.iter().flat_map(|(p, q)| [p, q])) {
        if p == vertex {
            return Err(Error::DegeneratePosition("constrained point equals the vertex"));
        }
        if p.dim() != r {
            return Err(Error::DimensionMismatch {
                expected: r,
                got: p.dim(),
            });
        }
    }
    for (p, q) in moves {
        if p != q && !are_aligned(vertex, p, q)? {
            return Err(Error::DegeneratePosition("move pair not collinear with vertex"));
        }
    }
    for (i, a) in fixed.iter().enumerate() {
        for b in fixed.iter().skip(i + 1) {
            if a == b {
                return Err(Error::NonDistinctPoints);
            }
            if are_aligned(vertex, a, b)? {
                return Err(Error::DegeneratePosition("fixed points aligned with vertex"));
            }
        }
    }

    let frame = LinearAutomorphism::frame_to_origin(vertex);
    let layout = MoebiusLayout::new(r, d);

    // frame coordinates of each constraint, normalized to shared tails
    let mut framed: Vec<(Rat, Rat, Vec<Rat>)> = Vec::new(); // (a0, b0, tail)
    let mut push_pair = |p: &ProjectivePoint, q: &ProjectivePoint| -> Result<()> {
        let pf = frame.apply(p);
        let qf = frame.apply(q);
        let a0 = pf.coords()[0].clone();
        let ptail: Vec<Rat> = pf.coords()[1..].to_vec();
        let qtail: Vec<Rat> = qf.coords()[1..].to_vec();
        let k = ptail
            .iter()
            .position(|c| !c.is_zero())
            .ok_or(Error::DegeneratePosition("constrained point equals the vertex"))?;
        if qtail[k].is_zero() {
            return Err(Error::DegeneratePosition("pair not collinear with vertex"));
        }
        let lambda = &qtail[k] / &ptail[k];
        for (a, b) in ptail.iter().zip(qtail.iter()) {
            if &(a * &lambda) != b {
                return Err(Error::DegeneratePosition("pair not collinear with vertex"));
            }
        }
        let b0 = &qf.coords()[0] / &lambda;
        framed.push((a0, b0, ptail));
        Ok(())
    };
    for (p, q) in moves {
        push_pair(p, q)?;
    }
    for p in fixed {
        push_pair(p, p)?;
    }

    let rows: Vec<Vec<Rat>> = framed
        .iter()
        .map(|(a0, b0, tail)| layout.constraint_row(a0, b0, tail))
        .collect();
    let basis = if rows.is_empty() {
        // unconstrained: the full coefficient space
        QMatrix::zeros(1, layout.total()).nullspace()
    } else {
        QMatrix::from_rows(rows).nullspace()
    };
    if basis.is_empty() {
        return Err(Error::NoSolutionAtDegree(d));
    }

    'attempts: for _ in 0..16 {
        let coeffs = sampler.coeff_vector(basis.len(), 5);
        let mut v = vec![rat_zero(); layout.total()];
        for (c, b) in coeffs.iter().zip(basis.iter()) {
            for (vi, bi) in v.iter_mut().zip(b.iter()) {
                *vi += c * bi;
            }
        }
        let (f0, g0, f, g) = layout.assemble(&v);
        let dj = match DeJonquieresMap::new(r, frame.clone(), f0, g0, f, g) {
            Ok(m) => m,
            Err(_) => continue 'attempts,
        };
        // denominators nonzero at every constrained point
        for (a0, _, tail) in &framed {
            let mut denom = dj.g.eval(tail);
            denom += a0 * &dj.f.eval(tail);
            if denom.is_zero() {
                continue 'attempts;
            }
        }
        // exact verification of every constraint, forward and round-trip
        let fwd = dj.forward();
        let back = dj.inverse().forward();
        let all_pairs = moves
            .iter()
            .cloned()
            .chain(fixed.iter().map(|p| (p.clone(), p.clone())));
        for (p, q) in all_pairs {
            match fwd.apply(&p) {
                Ok(image) if image == q => {}
                _ => continue 'attempts,
            }
            match back.apply(&q) {
                Ok(pre) if pre == p => {}
                _ => continue 'attempts,
            }
        }
        return Ok(dj);
    }
    Err(Error::GenericityExhausted("de Jonquieres coefficient sampling"))
}

/// Escalate the constraint solve from `d_start` to `d_cap`.
pub fn dj_solve_escalating(
    vertex: &ProjectivePoint,
    moves: &[(ProjectivePoint, ProjectivePoint)],
    fixed: &[ProjectivePoint],
    d_start: usize,
    d_cap: usize,
    sampler: &mut Sampler,
) -> Result<DeJonquieresMap> {
    for d in d_start..=d_cap {
        match dj_from_constraints(vertex, moves, fixed, d, sampler) {
            Ok(m) => return Ok(m),
            Err(Error::NoSolutionAtDegree(_)) | Err(Error::GenericityExhausted(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::DegreeEscalationExhausted { cap: d_cap })
}

struct MoebiusLayout {
    nvars: usize,
    f0_monos: Vec<Exponents>,
    g0_monos: Vec<Exponents>,
    f_monos: Vec<Exponents>,
    g_monos: Vec<Exponents>,
    d: usize,
}

impl MoebiusLayout {
    fn new(r: usize, d: usize) -> Self {
        MoebiusLayout {
            nvars: r,
            f0_monos: monomials(r, d - 1),
            g0_monos: monomials(r, d),
            f_monos: if d >= 2 { monomials(r, d - 2) } else { Vec::new() },
            g_monos: monomials(r, d - 1),
            d,
        }
    }

    fn total(&self) -> usize {
        self.f0_monos.len() + self.g0_monos.len() + self.f_monos.len() + self.g_monos.len()
    }

    fn constraint_row(&self, a0: &Rat, b0: &Rat, tail: &[Rat]) -> Vec<Rat> {
        let eval_mono = |e: &Exponents| -> Rat {
            let mut acc = rat_one();
            for (x, &k) in tail.iter().zip(e.0.iter()) {
                for _ in 0..k {
                    acc *= x;
                }
            }
            acc
        };
        let mut row = Vec::with_capacity(self.total());
        for e in &self.f0_monos {
            row.push(a0 * &eval_mono(e));
        }
        for e in &self.g0_monos {
            row.push(eval_mono(e));
        }
        for e in &self.f_monos {
            row.push(-(b0 * a0) * eval_mono(e));
        }
        for e in &self.g_monos {
            row.push(-b0 * &eval_mono(e));
        }
        row
    }

    fn assemble(
        &self,
        v: &[Rat],
    ) -> (
        HomogeneousForm,
        HomogeneousForm,
        HomogeneousForm,
        HomogeneousForm,
    ) {
        let mut idx = 0usize;
        let mut take = |monos: &[Exponents], degree: usize| -> HomogeneousForm {
            let f = HomogeneousForm::from_terms(
                self.nvars,
                degree,
                monos
                    .iter()
                    .map(|e| {
                        let c = v[idx].clone();
                        idx += 1;
                        (e.0.clone(), c)
                    })
                    .collect::<Vec<_>>(),
            )
            .expect("layout degrees consistent");
            f
        };
        let f0 = take(&self.f0_monos, self.d - 1);
        let g0 = take(&self.g0_monos, self.d);
        let f = take(&self.f_monos, self.d.saturating_sub(2));
        let g = take(&self.g_monos, self.d - 1);
        (f0, g0, f, g)
    }
}

/// Result of the quadro-quadric construction: the structured map together
/// with the interpolated basis of the linear system of quadrics through
/// the base locus.
#[derive(Clone, Debug)]
pub struct QuadroQuadric {
    pub map: DeJonquieresMap,
    pub system_basis: Vec<HomogeneousForm>,
}

/// Rank of the symmetric matrix of a quadratic form; a quadric is reduced
/// iff the rank is at least two.
pub fn quadric_rank(q: &HomogeneousForm) -> usize {
    assert_eq!(q.degree(), 2);
    let n = q.nvars();
    let mut m = QMatrix::zeros(n, n);
    for (e, c) in q.terms() {
        let idxs: Vec<usize> = e
            .0
            .iter()
            .enumerate()
            .flat_map(|(i, &k)| std::iter::repeat(i).take(k))
            .collect();
        let (i, j) = (idxs[0], idxs[1]);
        if i == j {
            m.set(i, i, c.clone());
        } else {
            let half = c / &crate::scalar::rat_int(2);
            m.set(i, j, half.clone());
            m.set(j, i, half);
        }
    }
    m.rank()
}

/// Quadro-quadric Cremona transformation with base locus `p` together with
/// the codimension-two quadric `Q = {q_eq = 0}` inside the hyperplane
/// spanned by `h`. `q_eq` is a quadric in the hyperplane's own basis
/// coordinates. The linear system of quadrics through the base locus is
/// computed by exact interpolation, checked to have projective dimension
/// r, and returned alongside the structured degree-2 de Jonquières map.
pub fn quadro_quadric(
    p: &ProjectivePoint,
    h: &LinearSubspace,
    q_eq: &HomogeneousForm,
) -> Result<QuadroQuadric> {
    let r = p.dim();
    if h.ambient() != r || h.dim() != r - 1 {
        return Err(Error::DimensionMismatch {
            expected: r - 1,
            got: h.dim(),
        });
    }
    if q_eq.nvars() != r || q_eq.degree() != 2 {
        return Err(Error::ArityMismatch(q_eq.nvars(), r));
    }
    if q_eq.is_zero() {
        return Err(Error::ZeroInput("quadric equation"));
    }
    if h.contains(p) {
        return Err(Error::DegeneratePosition("base point lies on the hyperplane"));
    }
    if quadric_rank(q_eq) < 2 {
        return Err(Error::DegeneratePosition("quadric is not reduced"));
    }

    // hyperplane parametrization: t -> sum t_i * b_i
    let basis = h.basis();
    let param = FormTuple::new(
        (0..=r)
            .map(|coord| {
                HomogeneousForm::from_terms(
                    r,
                    1,
                    basis.iter().enumerate().map(|(i, b)| {
                        let mut e = vec![0usize; r];
                        e[i] = 1;
                        (e, b.coords()[coord].clone())
                    }),
                )
                .expect("linear form")
            })
            .collect(),
    )?;

    // interpolation: quadrics G on P^r with G|_H = lambda * q_eq and G(p) = 0
    let amb_monos = monomials(r + 1, 2);
    let h_monos = monomials(r, 2);
    let n_unknowns = amb_monos.len() + 1; // + lambda
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(h_monos.len() + 1);
    // pullbacks of the ambient monomials to H
    let pullbacks: Vec<HomogeneousForm> = amb_monos
        .iter()
        .map(|e| {
            HomogeneousForm::monomial(r + 1, e.0.clone(), rat_one())
                .unwrap()
                .substitute(&param)
                .expect("substitution")
        })
        .collect();
    for hm in &h_monos {
        let mut row = Vec::with_capacity(n_unknowns);
        for pb in &pullbacks {
            row.push(pb.coeff(hm));
        }
        row.push(-q_eq.coeff(hm));
        rows.push(row);
    }
    // G(p) = 0
    let mut prow = Vec::with_capacity(n_unknowns);
    for e in &amb_monos {
        let m = HomogeneousForm::monomial(r + 1, e.0.clone(), rat_one()).unwrap();
        prow.push(m.eval(p.coords()));
    }
    prow.push(rat_zero());
    rows.push(prow);

    let ns = QMatrix::from_rows(rows).nullspace();
    let system_basis: Vec<HomogeneousForm> = ns
        .iter()
        .map(|v| {
            HomogeneousForm::from_terms(
                r + 1,
                2,
                amb_monos
                    .iter()
                    .zip(v.iter())
                    .map(|(e, c)| (e.0.clone(), c.clone())),
            )
            .expect("quadric assembly")
        })
        .filter(|f| !f.is_zero())
        .collect();
    if system_basis.len() as i64 - 1 != r as i64 {
        return Err(Error::WrongSystemDimension {
            expected: r as i64,
            got: system_basis.len() as i64 - 1,
        });
    }

    // frame: p -> e0 and H -> {x0 = 0}
    let hyperplane_form = {
        let rows: Vec<Vec<Rat>> = basis.iter().map(|b| b.coords().to_vec()).collect();
        let ns = QMatrix::from_rows(rows).nullspace();
        debug_assert_eq!(ns.len(), 1);
        ns.into_iter().next().unwrap()
    };
    let n = r + 1;
    let mut a = QMatrix::zeros(n, n);
    for j in 0..n {
        a.set(0, j, hyperplane_form[j].clone());
    }
    // greedy completion by standard basis rows
    let mut filled = 1usize;
    for j in 0..n {
        if filled == n {
            break;
        }
        let mut cand = a.clone();
        cand.set(filled, j, rat_one());
        let rank_rows: Vec<Vec<Rat>> = (0..=filled).map(|i| cand.row(i).to_vec()).collect();
        if QMatrix::from_rows(rank_rows).rank() == filled + 1 {
            a.set(filled, j, rat_one());
            filled += 1;
        }
    }
    // adjust rows >= 1 so A p = e0
    let ell_p = {
        let mut acc = rat_zero();
        for j in 0..n {
            acc += a.get(0, j) * &p.coords()[j];
        }
        acc
    };
    debug_assert!(!ell_p.is_zero());
    for i in 1..n {
        let mut row_p = rat_zero();
        for j in 0..n {
            row_p += a.get(i, j) * &p.coords()[j];
        }
        let factor = row_p / &ell_p;
        if factor.is_zero() {
            continue;
        }
        for j in 0..n {
            let v = a.get(i, j) - &(a.get(0, j) * &factor);
            a.set(i, j, v);
        }
    }
    let frame = LinearAutomorphism::new(a)?;

    // q in frame hyperplane coordinates: y_{1..r} = K t with K = (A B)_{1..r}
    let bmat = {
        let mut m = QMatrix::zeros(n, r);
        for (jcol, b) in basis.iter().enumerate() {
            for i in 0..n {
                m.set(i, jcol, b.coords()[i].clone());
            }
        }
        m
    };
    let ab = frame.matrix().mul(&bmat);
    let mut k = QMatrix::zeros(r, r);
    for i in 0..r {
        for j in 0..r {
            k.set(i, j, ab.get(i + 1, j).clone());
        }
    }
    let kinv = k.inverse().ok_or(Error::DegeneratePosition("hyperplane frame degenerate"))?;
    let kinv_tuple = FormTuple::new(
        (0..r)
            .map(|i| {
                HomogeneousForm::from_terms(
                    r,
                    1,
                    (0..r).map(|j| {
                        let mut e = vec![0usize; r];
                        e[j] = 1;
                        (e, kinv.get(i, j).clone())
                    }),
                )
                .expect("linear form")
            })
            .collect(),
    )?;
    let q_frame = q_eq.substitute(&kinv_tuple)?;

    let dj = DeJonquieresMap::new(
        r,
        frame,
        HomogeneousForm::zero(r, 1),
        q_frame,
        HomogeneousForm::one(r),
        HomogeneousForm::zero(r, 1),
    )?;

    // the structured map's tuple spans the interpolated system
    debug_assert!(spans_same_space(
        dj.forward().tuple().forms(),
        &system_basis
    ));

    Ok(QuadroQuadric {
        map: dj,
        system_basis,
    })
}

/// Do two lists of equal-degree forms span the same linear space?
pub fn spans_same_space(a: &[HomogeneousForm], b: &[HomogeneousForm]) -> bool {
    if a.is_empty() || b.is_empty() {
        return a.is_empty() == b.is_empty();
    }
    let nvars = a[0].nvars();
    let degree = a.iter().chain(b.iter()).find(|f| !f.is_zero()).map(|f| f.degree());
    let Some(degree) = degree else { return true };
    let layout = monomials(nvars, degree);
    let rows_a: Vec<Vec<Rat>> = a.iter().map(|f| f.coeff_vector(&layout)).collect();
    let rows_b: Vec<Vec<Rat>> = b.iter().map(|f| f.coeff_vector(&layout)).collect();
    let ra = QMatrix::from_rows(rows_a.clone()).rank();
    let rb = QMatrix::from_rows(rows_b.clone()).rank();
    let mut all = rows_a;
    all.extend(rows_b);
    let rab = QMatrix::from_rows(all).rank();
    ra == rb && rb == rab
}

/// Restriction of a de Jonquières map to a line through its center is a
/// linear automorphism: pull back along the line, remove the common factor,
/// and report the residual degree (one for an honest restriction).
pub fn restriction_degree_on_line(
    dj: &DeJonquieresMap,
    through: &ProjectivePoint,
) -> Result<usize> {
    let center = dj.center();
    if &center == through {
        return Err(Error::NonDistinctPoints);
    }
    let n = dj.ambient() + 1;
    let line = FormTuple::new(
        (0..n)
            .map(|i| {
                HomogeneousForm::from_terms(
                    2,
                    1,
                    vec![
                        (vec![1, 0], center.coords()[i].clone()),
                        (vec![0, 1], through.coords()[i].clone()),
                    ],
                )
                .expect("binary linear form")
            })
            .collect(),
    )?;
    let restricted = dj.forward().tuple().substitute(&line)?;
    let (_, reduced) = remove_common_factor(&restricted);
    Ok(reduced.degree())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projective::span;
    use crate::ratmap::{map_compose, maps_projectively_equal};
    use crate::scalar::rat_int;

    fn x(n: usize, i: usize) -> HomogeneousForm {
        HomogeneousForm::variable(n, i)
    }

    fn pt(coords: &[i64]) -> ProjectivePoint {
        ProjectivePoint::from_ints(coords).unwrap()
    }

    fn example_map() -> DeJonquieresMap {
        // (F0=x1, G0=2x1x2, F=1, G=x1) on P^2
        let r = 2;
        DeJonquieresMap::new(
            r,
            LinearAutomorphism::identity(3),
            x(r, 0),
            x(r, 0).mul(&x(r, 1)).unwrap().scale(&rat_int(2)),
            HomogeneousForm::one(r),
            x(r, 0),
        )
        .unwrap()
    }

    #[test]
    fn forward_assembly_matches_hand_expansion() {
        let dj = example_map();
        let fwd = dj.forward();
        // [x0x1 + 2x1x2, x1(x0 + x1), x2(x0 + x1)]
        let n = 3;
        let expect = FormTuple::new(vec![
            x(n, 0)
                .mul(&x(n, 1))
                .unwrap()
                .add(&x(n, 1).mul(&x(n, 2)).unwrap().scale(&rat_int(2)))
                .unwrap(),
            x(n, 1).mul(&x(n, 0).add(&x(n, 1)).unwrap()).unwrap(),
            x(n, 2).mul(&x(n, 0).add(&x(n, 1)).unwrap()).unwrap(),
        ])
        .unwrap();
        assert_eq!(fwd.tuple(), &expect);
        // maps [0,1,1] to [2,1,1]
        assert_eq!(fwd.apply(&pt(&[0, 1, 1])).unwrap(), pt(&[2, 1, 1]));
    }

    #[test]
    fn degree_one_map_is_linear_automorphism() {
        let r = 2;
        let dj = DeJonquieresMap::new(
            r,
            LinearAutomorphism::identity(3),
            HomogeneousForm::one(r),
            x(r, 0).add(&x(r, 1)).unwrap(),
            HomogeneousForm::zero(r, 0),
            HomogeneousForm::one(r),
        )
        .unwrap();
        assert_eq!(dj.degree(), 1);
        let fwd = dj.forward();
        assert_eq!(fwd.degree(), 1);
        let cert = dj.certificate().unwrap();
        assert_eq!(cert.phi.degree(), 0);
    }

    #[test]
    fn closed_form_inverse_and_certificate() {
        let dj = example_map();
        let inv = dj.inverse();
        // [x0x1 - 2x1x2, x1(x1 - x0), x2(x1 - x0)]
        let n = 3;
        let fwd_inv = inv.forward();
        let expect = FormTuple::new(vec![
            x(n, 0)
                .mul(&x(n, 1))
                .unwrap()
                .sub(&x(n, 1).mul(&x(n, 2)).unwrap().scale(&rat_int(2)))
                .unwrap(),
            x(n, 1).mul(&x(n, 1).sub(&x(n, 0)).unwrap()).unwrap(),
            x(n, 2).mul(&x(n, 1).sub(&x(n, 0)).unwrap()).unwrap(),
        ])
        .unwrap();
        assert!(fwd_inv.tuple().projectively_equal(&expect));
        let cert = dj.certificate().unwrap();
        assert_eq!(cert.phi.degree(), dj.degree() * dj.degree() - 1);
        // Phi = D * (x0 F + G)^{d-1} with D = x1^2 - 2 x1 x2
        let d_form = x(n, 1)
            .pow(2)
            .sub(&x(n, 1).mul(&x(n, 2)).unwrap().scale(&rat_int(2)))
            .unwrap();
        let denom = x(n, 0).add(&x(n, 1)).unwrap();
        assert!(cert.phi.proportional_to(&d_form.mul(&denom).unwrap()));
    }

    #[test]
    fn quadro_quadric_n_is_a_de_jonquieres() {
        // N = [x1x2 - x3^2, x0x1, x0x2, x0x3] arises from
        // (F0=0, G0=x1x2-x3^2, F=1, G=0)
        let r = 3;
        let q = x(r, 0).mul(&x(r, 1)).unwrap().sub(&x(r, 2).pow(2)).unwrap();
        let dj = DeJonquieresMap::new(
            r,
            LinearAutomorphism::identity(4),
            HomogeneousForm::zero(r, 1),
            q.clone(),
            HomogeneousForm::one(r),
            HomogeneousForm::zero(r, 1),
        )
        .unwrap();
        let fwd = dj.forward();
        let n = 4;
        let expect = FormTuple::new(vec![
            x(n, 1).mul(&x(n, 2)).unwrap().sub(&x(n, 3).pow(2)).unwrap(),
            x(n, 0).mul(&x(n, 1)).unwrap(),
            x(n, 0).mul(&x(n, 2)).unwrap(),
            x(n, 0).mul(&x(n, 3)).unwrap(),
        ])
        .unwrap();
        assert_eq!(fwd.tuple(), &expect);
        // involution: inverse tuple projectively equals the forward tuple
        let inv_fwd = dj.inverse().forward();
        assert!(maps_projectively_equal(&fwd, &inv_fwd).unwrap());
        let cert = dj.certificate().unwrap();
        let q_amb = x(n, 1).mul(&x(n, 2)).unwrap().sub(&x(n, 3).pow(2)).unwrap();
        assert!(cert.phi.proportional_to(&x(n, 0).mul(&q_amb).unwrap()));
    }

    #[test]
    fn zero_determinant_rejected() {
        // F0 = x1, G0 = x1x2, F = 0, G = x2: D = x1x2 - 0 = x1x2 != 0 is fine;
        // but F0 = x1, G0 = x1^2, F = 1, G = x1 gives D = x1^2 - x1^2 = 0
        let r = 2;
        let out = DeJonquieresMap::new(
            r,
            LinearAutomorphism::identity(3),
            x(r, 0),
            x(r, 0).pow(2),
            HomogeneousForm::one(r),
            x(r, 0),
        );
        assert!(matches!(out, Err(Error::ZeroDeterminant)));
    }

    #[test]
    fn constraints_single_move_example() {
        // moves [0,1,1] -> [2,1,1], vertex [1,0,0], d=2: the witness
        // (F0=x1, G0=2x1x2, F=1, G=x1) satisfies G0(1,1) = 2 G(1,1)
        let mut s = Sampler::new(2024);
        let dj = dj_from_constraints(
            &pt(&[1, 0, 0]),
            &[(pt(&[0, 1, 1]), pt(&[2, 1, 1]))],
            &[],
            2,
            &mut s,
        )
        .unwrap();
        let fwd = dj.forward();
        assert_eq!(fwd.apply(&pt(&[0, 1, 1])).unwrap(), pt(&[2, 1, 1]));
        assert!(dj.certificate().is_ok());
    }

    #[test]
    fn constraints_fixed_points_only() {
        let mut s = Sampler::new(5);
        let p = pt(&[0, 1, 2]);
        let dj = dj_from_constraints(&pt(&[1, 0, 0]), &[], &[p.clone()], 2, &mut s).unwrap();
        assert_eq!(dj.forward().apply(&p).unwrap(), p);
    }

    #[test]
    fn move_to_self_equals_fixed_constraint() {
        let mut s1 = Sampler::new(9);
        let mut s2 = Sampler::new(9);
        let p = pt(&[0, 1, 2]);
        let a = dj_from_constraints(
            &pt(&[1, 0, 0]),
            &[(p.clone(), p.clone())],
            &[],
            2,
            &mut s1,
        )
        .unwrap();
        let b = dj_from_constraints(&pt(&[1, 0, 0]), &[], &[p.clone()], 2, &mut s2).unwrap();
        assert_eq!(a.forward().tuple(), b.forward().tuple());
    }

    #[test]
    fn restriction_to_general_line_is_linear() {
        let dj = example_map();
        let mut s = Sampler::new(41);
        let mut checked = 0;
        while checked < 5 {
            let q = s.raw_point(2, 6);
            if q == dj.center() {
                continue;
            }
            match restriction_degree_on_line(&dj, &q) {
                Ok(deg) => {
                    assert_eq!(deg, 1);
                    checked += 1;
                }
                Err(_) => continue,
            }
        }
    }

    #[test]
    fn certificates_hold_in_both_directions() {
        let dj = example_map();
        let fwd = dj.forward();
        let inv = dj.inverse().forward();
        let cert_a = verify_inverse_pair(&fwd, &inv).unwrap();
        let cert_b = verify_inverse_pair(&inv, &fwd).unwrap();
        assert_eq!(cert_a.phi.degree(), cert_a.delta * cert_a.delta_prime - 1);
        assert_eq!(cert_b.phi.degree(), cert_b.delta * cert_b.delta_prime - 1);
    }

    #[test]
    fn quadro_quadric_standard_instance() {
        // p = [1,0,0,0], Q = {x0 = 0, x1x2 - x3^2 = 0} in P^3
        let p = pt(&[1, 0, 0, 0]);
        let h = span(&[pt(&[0, 1, 0, 0]), pt(&[0, 0, 1, 0]), pt(&[0, 0, 0, 1])]).unwrap();
        let q = x(3, 0).mul(&x(3, 1)).unwrap().sub(&x(3, 2).pow(2)).unwrap();
        let qq = quadro_quadric(&p, &h, &q).unwrap();
        let n = 4;
        let expected_basis = vec![
            x(n, 0).mul(&x(n, 1)).unwrap(),
            x(n, 0).mul(&x(n, 2)).unwrap(),
            x(n, 0).mul(&x(n, 3)).unwrap(),
            x(n, 1).mul(&x(n, 2)).unwrap().sub(&x(n, 3).pow(2)).unwrap(),
        ];
        assert!(spans_same_space(&qq.system_basis, &expected_basis));
        // composite with itself: Phi = x0 (x1x2 - x3^2)
        let fwd = qq.map.forward();
        let inv = qq.map.inverse().forward();
        let cert = verify_inverse_pair(&fwd, &inv).unwrap();
        assert_eq!(cert.phi.degree(), 3);
        let phi_expect = x(n, 0)
            .mul(&x(n, 1).mul(&x(n, 2)).unwrap().sub(&x(n, 3).pow(2)).unwrap())
            .unwrap();
        assert!(cert.phi.proportional_to(&phi_expect));
        // the involution: N o N is Phi * identity
        let comp = map_compose(&fwd, &fwd).unwrap();
        assert!(maps_projectively_equal(&comp, &RationalMap::identity(3)).unwrap());
    }

    #[test]
    fn quadro_quadric_in_the_plane_is_standard_quadratic() {
        // p general, Q = two points in a line of P^2
        let p = pt(&[1, 1, 1]);
        let h = span(&[pt(&[0, 1, 0]), pt(&[0, 0, 1])]).unwrap();
        // two points = t0 * t1 (roots e1, e2 of the line)
        let q = x(2, 0).mul(&x(2, 1)).unwrap();
        let qq = quadro_quadric(&p, &h, &q).unwrap();
        // base locus {p, [0,1,0], [0,0,1]}: conics through three points
        let n = 3;
        let fwd = qq.map.forward();
        for base in [pt(&[1, 1, 1]), pt(&[0, 1, 0]), pt(&[0, 0, 1])] {
            for f in fwd.tuple().forms() {
                assert!(f.eval(base.coords()).is_zero());
            }
        }
        let cert = qq.map.certificate().unwrap();
        assert_eq!(cert.phi.degree(), 3);
        let _ = n;
    }

    #[test]
    fn quadro_quadric_rejects_non_reduced_quadric() {
        let p = pt(&[1, 0, 0, 0]);
        let h = span(&[pt(&[0, 1, 0, 0]), pt(&[0, 0, 1, 0]), pt(&[0, 0, 0, 1])]).unwrap();
        let q = x(3, 0).pow(2);
        assert!(matches!(
            quadro_quadric(&p, &h, &q),
            Err(Error::DegeneratePosition(_))
        ));
    }

    #[test]
    fn seeded_round_trip_property() {
        // for seeded maps with d in {2,3}, r in {2,3}: certificates exist
        // with deg Phi = d^2 - 1
        let mut s = Sampler::new(314);
        let mut done = 0;
        while done < 12 {
            let r = 2 + (done % 2);
            let d = 2 + (done % 2);
            let layout = MoebiusLayout::new(r, d);
            let v = s.coeff_vector(layout.total(), 3);
            let (f0, g0, f, g) = layout.assemble(&v);
            let frame = s.automorphism(r + 1, 2);
            let dj = match DeJonquieresMap::new(r, frame, f0, g0, f, g) {
                Ok(m) => m,
                Err(_) => continue,
            };
            let cert = dj.certificate().unwrap();
            assert_eq!(cert.phi.degree(), d * d - 1);
            done += 1;
        }
    }
}
