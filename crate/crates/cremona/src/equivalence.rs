//! The three end-to-end algorithms: point-set Cremona equivalence, the
//! double-projection pipeline for reduced parametrized schemes, and
//! contraction of unions of rational varieties. Every emitted chain step
//! carries an exact inverse certificate plus the point/sample claims that
//! make the chain independently re-verifiable without search.

use crate::chain::{ChainStep, ComponentClaim, CremonaChain, FinalClaim, PointClaim, StepKind};
use crate::dejonquieres::{dj_solve_escalating, quadric_rank, quadro_quadric, DeJonquieresMap};
use crate::error::{Error, Result};
use crate::interpolation::{bivertex_system_framed, bivertex_system_framed_unscreened, pick_member};
use crate::matrix::QMatrix;
use crate::poly::{monomials, FormTuple, HomogeneousForm};
use crate::projective::{
    are_aligned, projection_from, span, LinearAutomorphism, LinearSubspace, ProjectivePoint,
    Sampler,
};
use crate::ratmap::{
    constant_point, image_rank, map_compose, verify_inverse_pair, ParamScheme, RationalMap,
    SchemeComponent,
};
use crate::scalar::{rat_one, rat_zero, Rat};
use num_traits::Zero;

/// Search budgets shared by the three algorithms. The existence arguments
/// behind the searches give no effective bounds, so exhaustion turns into
/// structured errors rather than wrong answers.
#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Degree cap for every escalating monoid / de Jonquières search.
    pub degree_cap: usize,
    /// Verified parameter samples per component per step.
    pub samples: usize,
    /// Resampling budget per genericity screen.
    pub resample_budget: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            degree_cap: 10,
            samples: 25,
            resample_budget: 16,
        }
    }
}

// ---------------------------------------------------------------------------
// point-set equivalence
// ---------------------------------------------------------------------------

/// Cremona equivalence of two reduced point sets: a chain of de Jonquières
/// maps carrying `z[i]` to `z_prime[i]` exactly, each step fixing every
/// other live point. When the general-position condition on the move lines
/// fails (or a target is occupied by a different source), a seeded generic
/// quadro-quadric modification of the sources is prepended.
pub fn points_equivalence(
    z: &[ProjectivePoint],
    z_prime: &[ProjectivePoint],
    sampler: &mut Sampler,
    opts: &SearchOptions,
) -> Result<CremonaChain> {
    if z.is_empty() || z.len() != z_prime.len() {
        return Err(Error::DimensionMismatch {
            expected: z.len(),
            got: z_prime.len(),
        });
    }
    let r = z[0].dim();
    if r < 2 {
        return Err(Error::DegeneratePosition(
            "point equivalence needs ambient P^2 or larger",
        ));
    }
    for p in z.iter().chain(z_prime.iter()) {
        if p.dim() != r {
            return Err(Error::DimensionMismatch {
                expected: r,
                got: p.dim(),
            });
        }
    }
    for list in [z, z_prime] {
        for i in 0..list.len() {
            for j in (i + 1)..list.len() {
                if list[i] == list[j] {
                    return Err(Error::NonDistinctPoints);
                }
            }
        }
    }

    let mut chain = CremonaChain::new(r, sampler.seed());
    let mut current: Vec<ProjectivePoint> = z.to_vec();
    let targets: Vec<ProjectivePoint> = z_prime.to_vec();

    if current != targets && configuration_violated(&current, &targets) {
        let step = quadro_quadric_modification(&mut current, &targets, sampler, opts)?;
        chain.steps.push(step);
    }

    let s = current.len();
    for i in 0..s {
        if current[i] == targets[i] {
            continue;
        }
        let mut fixed: Vec<ProjectivePoint> = Vec::new();
        for j in 0..s {
            if j < i {
                fixed.push(targets[j].clone());
            } else if j > i {
                fixed.push(current[j].clone());
                fixed.push(targets[j].clone());
            }
        }
        let mut dedup: Vec<ProjectivePoint> = Vec::new();
        for p in fixed {
            if p != current[i] && p != targets[i] && !dedup.contains(&p) {
                dedup.push(p);
            }
        }
        let fixed = dedup;

        let vertex = move_line_vertex(&current[i], &targets[i], &fixed, sampler)?;
        let dj = dj_solve_escalating(
            &vertex,
            &[(current[i].clone(), targets[i].clone())],
            &fixed,
            2,
            opts.degree_cap,
            sampler,
        )?;
        let forward = dj.forward();
        let inverse = dj.inverse().forward();
        let certificate = verify_inverse_pair(&forward, &inverse)?;
        let mut point_claims = vec![PointClaim {
            from: current[i].clone(),
            to: targets[i].clone(),
        }];
        for f in &fixed {
            point_claims.push(PointClaim {
                from: f.clone(),
                to: f.clone(),
            });
        }
        chain.steps.push(ChainStep {
            kind: StepKind::DeJonquieres,
            forward,
            inverse,
            certificate,
            point_claims,
            component_claims: Vec::new(),
        });
        current[i] = targets[i].clone();
    }

    debug_assert_eq!(current, targets);
    chain.final_claim = FinalClaim::PointsMatch {
        sources: z.to_vec(),
        targets,
    };
    Ok(chain)
}

/// Cross-collision (a target occupied by a different source) or a move
/// line passing through a third live point.
fn configuration_violated(current: &[ProjectivePoint], targets: &[ProjectivePoint]) -> bool {
    let s = current.len();
    for a in 0..s {
        for b in 0..s {
            if a != b && targets[a] == current[b] {
                return true;
            }
        }
    }
    for i in 0..s {
        if current[i] == targets[i] {
            continue;
        }
        for w in current.iter().chain(targets.iter()) {
            if w == &current[i] || w == &targets[i] {
                continue;
            }
            if are_aligned(&current[i], &targets[i], w).unwrap_or(true) {
                return true;
            }
        }
    }
    false
}

/// Seeded generic quadro-quadric map applied to the sources only: it must
/// be an isomorphism near every source and produce a configuration with no
/// collisions and clean move lines.
fn quadro_quadric_modification(
    current: &mut Vec<ProjectivePoint>,
    targets: &[ProjectivePoint],
    sampler: &mut Sampler,
    opts: &SearchOptions,
) -> Result<ChainStep> {
    let r = current[0].dim();
    'attempts: for _ in 0..opts.resample_budget {
        let Ok(qq) = seeded_quadro_quadric(r, sampler) else {
            continue 'attempts;
        };
        let forward = qq.forward();
        let inverse = qq.inverse().forward();
        let mut moved = Vec::with_capacity(current.len());
        for p in current.iter() {
            let Ok(q) = forward.apply(p) else {
                continue 'attempts;
            };
            match inverse.apply(&q) {
                Ok(back) if &back == p => moved.push(q),
                _ => continue 'attempts,
            }
        }
        for i in 0..moved.len() {
            for j in (i + 1)..moved.len() {
                if moved[i] == moved[j] {
                    continue 'attempts;
                }
            }
        }
        if configuration_violated(&moved, targets) {
            continue 'attempts;
        }
        let certificate = verify_inverse_pair(&forward, &inverse)?;
        let point_claims = current
            .iter()
            .zip(moved.iter())
            .map(|(from, to)| PointClaim {
                from: from.clone(),
                to: to.clone(),
            })
            .collect();
        *current = moved;
        return Ok(ChainStep {
            kind: StepKind::QuadroQuadric,
            forward,
            inverse,
            certificate,
            point_claims,
            component_claims: Vec::new(),
        });
    }
    Err(Error::GenericityExhausted("quadro-quadric modification"))
}

/// A seeded generic quadro-quadric map of P^r.
fn seeded_quadro_quadric(r: usize, sampler: &mut Sampler) -> Result<DeJonquieresMap> {
    let h = loop {
        let pts: Vec<ProjectivePoint> = (0..r).map(|_| sampler.raw_point(r, 5)).collect();
        let sp = span(&pts)?;
        if sp.dim() == r - 1 {
            break sp;
        }
    };
    let off_h = |p: &ProjectivePoint| h.contains(p);
    let p = sampler.sample_point(r, &[&off_h])?;
    let q = loop {
        let raw = HomogeneousForm::from_terms(
            r,
            2,
            monomials(r, 2).into_iter().map(|e| (e.0, sampler.rat(5))),
        )
        .expect("layout degrees consistent");
        if !raw.is_zero() && quadric_rank(&raw) >= 2 {
            break raw;
        }
    };
    quadro_quadric(&p, &h, &q).map(|qq| qq.map)
}

/// Seeded vertex on the move line, off the endpoints and the fixed points,
/// with no fixed pair aligned with it.
fn move_line_vertex(
    from: &ProjectivePoint,
    to: &ProjectivePoint,
    fixed: &[ProjectivePoint],
    sampler: &mut Sampler,
) -> Result<ProjectivePoint> {
    'outer: for attempt in 0..60u64 {
        let bound = 5 + attempt / 10;
        let t = sampler.rat(bound);
        if t.is_zero() {
            continue;
        }
        let coords: Vec<Rat> = from
            .coords()
            .iter()
            .zip(to.coords().iter())
            .map(|(a, b)| a + &(&t * b))
            .collect();
        let Ok(p0) = ProjectivePoint::new(coords) else {
            continue;
        };
        if &p0 == from || &p0 == to || fixed.contains(&p0) {
            continue;
        }
        for i in 0..fixed.len() {
            for j in (i + 1)..fixed.len() {
                if are_aligned(&p0, &fixed[i], &fixed[j]).unwrap_or(true) {
                    continue 'outer;
                }
            }
        }
        return Ok(p0);
    }
    Err(Error::GenericityExhausted("vertex choice on the move line"))
}

// ---------------------------------------------------------------------------
// double-projection pipeline
// ---------------------------------------------------------------------------

/// Cremona equivalence of two birational parametrized reduced schemes via
/// a chain of double projections: one round per coordinate swaps a source
/// coordinate function for a target one through a bi-vertex monoid in
/// P^{r+1}.
pub fn pipeline_equivalence(
    x: &ParamScheme,
    y: &ParamScheme,
    sampler: &mut Sampler,
    opts: &SearchOptions,
) -> Result<CremonaChain> {
    let r = x.ambient;
    if r < 3 {
        return Err(Error::DegeneratePosition("pipeline needs ambient P^3 or larger"));
    }
    if y.ambient != r || x.components.len() != y.components.len() {
        return Err(Error::DimensionMismatch {
            expected: x.components.len(),
            got: y.components.len(),
        });
    }
    for (cx, cy) in x.components.iter().zip(y.components.iter()) {
        if cx.arity != cy.arity {
            return Err(Error::ArityMismatch(cx.arity, cy.arity));
        }
        if cx.arity > 1 && cx.param_dim() > r - 2 {
            return Err(Error::DegeneratePosition("component dimension exceeds r-2"));
        }
    }

    let mut chain = CremonaChain::new(r, sampler.seed());

    // per-component degree equalization by a power of a seeded linear form
    let mut xt: Vec<FormTuple> = Vec::new();
    let mut yt: Vec<FormTuple> = Vec::new();
    for (cx, cy) in x.components.iter().zip(y.components.iter()) {
        let (a, b) = equalize_degrees(&cx.tuple, &cy.tuple, sampler)?;
        xt.push(a);
        yt.push(b);
    }

    // generic coordinate changes make every coordinate-subspace projection
    // generic; both are recorded as linear steps
    let lam_x = sampler.automorphism(r + 1, 3);
    let lam_y = sampler.automorphism(r + 1, 3);
    let x0: Vec<FormTuple> = xt
        .iter()
        .map(|t| apply_matrix(&lam_x, t))
        .collect::<Result<_>>()?;
    let yhat: Vec<FormTuple> = yt
        .iter()
        .map(|t| apply_matrix(&lam_y, t))
        .collect::<Result<_>>()?;
    chain
        .steps
        .push(linear_step(&lam_x, &xt, &x0, opts, sampler)?);

    let mut current = x0;
    for round in 0..=r {
        let (step, next) = pipeline_round(r, round, &current, &yhat, sampler, opts)?;
        chain.steps.push(step);
        current = next;
    }

    for (c, t) in current.iter().zip(yhat.iter()) {
        if !c.projectively_equal(t) {
            return Err(Error::StepVerificationFailed(
                "pipeline output differs from the target parametrization".into(),
            ));
        }
    }

    chain
        .steps
        .push(linear_step(&lam_y.inverse(), &yhat, &yt, opts, sampler)?);
    chain.final_claim = FinalClaim::SchemeMatch { targets: yt };
    Ok(chain)
}

/// Multiply the lower-degree tuple by a power of a seeded nonzero linear
/// form in the parameters (a fixed divisorial component; the map is
/// unchanged).
fn equalize_degrees(
    a: &FormTuple,
    b: &FormTuple,
    sampler: &mut Sampler,
) -> Result<(FormTuple, FormTuple)> {
    if a.degree() == b.degree() {
        return Ok((a.clone(), b.clone()));
    }
    let (lo, hi, swapped) = if a.degree() < b.degree() {
        (a, b, false)
    } else {
        (b, a, true)
    };
    let arity = lo.nvars();
    let delta = hi.degree() - lo.degree();
    let ell = loop {
        let f = HomogeneousForm::from_terms(
            arity,
            1,
            (0..arity).map(|i| {
                let mut e = vec![0usize; arity];
                e[i] = 1;
                (e, sampler.rat(4))
            }),
        )
        .expect("linear form");
        if !f.is_zero() {
            break f;
        }
    };
    let padded = lo.mul_form(&ell.pow(delta))?;
    Ok(if swapped {
        (hi.clone(), padded)
    } else {
        (padded, hi.clone())
    })
}

fn apply_matrix(a: &LinearAutomorphism, t: &FormTuple) -> Result<FormTuple> {
    let m = a.matrix();
    let nvars = t.nvars();
    let deg = t.degree();
    let forms = (0..m.nrows())
        .map(|i| {
            let mut acc = HomogeneousForm::zero(nvars, deg);
            for (j, f) in t.forms().iter().enumerate() {
                if !m.get(i, j).is_zero() {
                    acc = acc.add(&f.scale(m.get(i, j))).unwrap();
                }
            }
            acc
        })
        .collect();
    FormTuple::new(forms)
}

fn linear_step(
    a: &LinearAutomorphism,
    before: &[FormTuple],
    after: &[FormTuple],
    opts: &SearchOptions,
    sampler: &mut Sampler,
) -> Result<ChainStep> {
    let forward = RationalMap::from_matrix(a);
    let inverse = RationalMap::from_matrix(&a.inverse());
    let certificate = verify_inverse_pair(&forward, &inverse)?;
    let mut component_claims = Vec::new();
    for (b, f) in before.iter().zip(after.iter()) {
        let samples =
            verified_samples(&forward, &inverse, b, f, opts.samples.min(5), true, sampler)?;
        component_claims.push(ComponentClaim {
            before: b.clone(),
            after: f.clone(),
            samples,
            round_trip: true,
        });
    }
    Ok(ChainStep {
        kind: StepKind::Linear,
        forward,
        inverse,
        certificate,
        point_claims: Vec::new(),
        component_claims,
    })
}

/// Draw parameter samples until `n` of them verify the step exactly
/// (forward image and inverse round trip). Samples hitting base points or
/// indeterminacy redraw within a budget; an honest mismatch aborts.
fn verified_samples(
    forward: &RationalMap,
    inverse: &RationalMap,
    before: &FormTuple,
    after: &FormTuple,
    n: usize,
    round_trip: bool,
    sampler: &mut Sampler,
) -> Result<Vec<Vec<Rat>>> {
    let arity = before.nvars();
    let mut out: Vec<Vec<Rat>> = Vec::with_capacity(n);
    let mut misses = 0usize;
    while out.len() < n {
        if misses > 10 * n + 30 {
            return Err(Error::GenericityExhausted("verification sample draws"));
        }
        let t: Vec<Rat> = (0..arity).map(|_| sampler.rat(9)).collect();
        let Ok(xpt) = ProjectivePoint::new(before.eval(&t)) else {
            misses += 1;
            continue;
        };
        let Ok(ypt) = ProjectivePoint::new(after.eval(&t)) else {
            misses += 1;
            continue;
        };
        let image = match forward.apply(&xpt) {
            Ok(v) => v,
            Err(_) => {
                misses += 1;
                continue;
            }
        };
        if image != ypt {
            return Err(Error::StepVerificationFailed(
                "forward image differs from the projected parametrization".into(),
            ));
        }
        if round_trip {
            let back = match inverse.apply(&ypt) {
                Ok(v) => v,
                Err(_) => {
                    misses += 1;
                    continue;
                }
            };
            if back != xpt {
                return Err(Error::StepVerificationFailed(
                    "inverse round trip differs at a verified sample".into(),
                ));
            }
        }
        out.push(t);
    }
    Ok(out)
}

/// One pipeline round: append the i-th target coordinate, choose a second
/// vertex in the coordinate subspace, find a cone-avoiding bi-vertex
/// monoid, and emit the certified double projection.
fn pipeline_round(
    r: usize,
    i: usize,
    current: &[FormTuple],
    yhat: &[FormTuple],
    sampler: &mut Sampler,
    opts: &SearchOptions,
) -> Result<(ChainStep, Vec<FormTuple>)> {
    let mut zi_comps = Vec::with_capacity(current.len());
    for (c, t) in current.iter().zip(yhat.iter()) {
        let mut forms = c.forms().to_vec();
        forms.push(t.forms()[i].clone());
        zi_comps.push(SchemeComponent::new(FormTuple::new(forms)?));
    }
    let zi = ParamScheme::new(zi_comps)?;

    let block_top = r - i; // the phi block occupies coordinates 0..=block_top
    let mut any_screen_pass = false;
    'vertices: for _ in 0..opts.resample_budget {
        let p = if i == r {
            ProjectivePoint::coordinate_point(r + 1, 0)
        } else {
            let mut coords = vec![rat_zero(); r + 2];
            loop {
                let mut nonzero = false;
                for c in coords.iter_mut().take(block_top + 1) {
                    let v = sampler.rat(5);
                    nonzero |= !v.is_zero();
                    *c = v;
                }
                if nonzero {
                    break;
                }
            }
            ProjectivePoint::new(coords).expect("nonzero draw")
        };
        if !line_projection_screen(&zi, &p, r, opts, sampler)? {
            if std::env::var_os("CREMONA_DEBUG").is_some() {
                eprintln!("[round {i}] injectivity screen rejected p");
            }
            continue 'vertices;
        }
        any_screen_pass = true;

        let frame = match pipeline_frame(r, i, &p) {
            Ok(f) => f,
            Err(_) => continue 'vertices,
        };
        // input-side coordinate change on H1 = {x_{r+1} = 0}
        let b_prime = {
            let m = frame.matrix();
            let mut sub = QMatrix::zeros(r + 1, r + 1);
            for a in 0..=r {
                for b in 0..=r {
                    sub.set(a, b, m.get(a, b).clone());
                }
            }
            LinearAutomorphism::new(sub)?
        };
        // next parametrization: frame rows {0..r-1, r+1} applied to Z_i
        let mut next: Vec<FormTuple> = Vec::with_capacity(zi.components.len());
        let mut degenerate = false;
        for comp in &zi.components {
            match project_rows(frame.matrix(), r, &comp.tuple) {
                Ok(t) => next.push(t),
                Err(_) => {
                    degenerate = true;
                    break;
                }
            }
        }
        if degenerate {
            continue 'vertices;
        }
        // structural invariant: the last i+1 coordinates of the projected
        // parametrization are exactly the target functions already swapped in
        debug_assert!(next.iter().zip(yhat.iter()).all(|(t, y)| {
            (0..=i).all(|j| t.forms()[r - i + j] == y.forms()[j])
        }));

        for d in 1..=opts.degree_cap {
            let sys_result = if i == r {
                bivertex_system_framed_unscreened(&zi, frame.clone(), d)
            } else {
                bivertex_system_framed(&zi, frame.clone(), d)
            };
            let sys = match sys_result {
                Ok(s) => s,
                Err(Error::VertexOnScheme) => {
                    if std::env::var_os("CREMONA_DEBUG").is_some() {
                        eprintln!("[round {i}] vertex on scheme at d={d}");
                    }
                    continue 'vertices;
                }
                Err(e) => return Err(e),
            };
            if sys.basis.is_empty() {
                continue;
            }
            'members: for _ in 0..4 {
                let (coeffs, _eq) = match pick_member(&sys, &zi, sampler) {
                    Ok(v) => v,
                    Err(Error::AvoidanceExhausted) | Err(Error::NoSolutionAtDegree(_)) => {
                        if std::env::var_os("CREMONA_DEBUG").is_some() {
                            eprintln!("[round {i}] pick_member exhausted at d={d}");
                        }
                        break;
                    }
                    Err(e) => return Err(e),
                };
                let w = sys.member_bivertex(&coeffs)?;
                let dj = match w.double_projection() {
                    Ok(d) => d,
                    Err(e) => {
                        if std::env::var_os("CREMONA_DEBUG").is_some() {
                            eprintln!("[round {i}] double projection failed at d={d}: {e}");
                        }
                        continue 'members;
                    }
                };
                let forward =
                    match map_compose(&dj.forward(), &RationalMap::from_matrix(&b_prime)) {
                        Ok(f) => f,
                        Err(_) => continue 'members,
                    };
                let inverse = dj.inverse().forward().linear_after(&b_prime.inverse());
                let certificate = match verify_inverse_pair(&forward, &inverse) {
                    Ok(c) => c,
                    Err(_) => continue 'members,
                };
                let mut component_claims = Vec::with_capacity(current.len());
                let mut retry = false;
                for (before, after) in current.iter().zip(next.iter()) {
                    match verified_samples(
                        &forward,
                        &inverse,
                        before,
                        after,
                        opts.samples,
                        true,
                        sampler,
                    ) {
                        Ok(samples) => component_claims.push(ComponentClaim {
                            before: before.clone(),
                            after: after.clone(),
                            samples,
                            round_trip: true,
                        }),
                        Err(Error::StepVerificationFailed(m)) => {
                            return Err(Error::StepVerificationFailed(m))
                        }
                        Err(e) => {
                            if std::env::var_os("CREMONA_DEBUG").is_some() {
                                eprintln!("[round {i}] sample verify retry at d={d}: {e}");
                            }
                            retry = true;
                            break;
                        }
                    }
                }
                if retry {
                    continue 'members;
                }
                let step = ChainStep {
                    kind: StepKind::DoubleProjection,
                    forward,
                    inverse,
                    certificate,
                    point_claims: Vec::new(),
                    component_claims,
                };
                return Ok((step, next));
            }
        }
    }
    if any_screen_pass {
        Err(Error::MonoidSearchExhausted {
            cap: opts.degree_cap,
        })
    } else {
        Err(Error::InjectivityScreenFailed)
    }
}

/// Frame for round i: sends the second vertex p (inside the coordinate
/// subspace keeping the target block fixed) to e_r, fixes e_{r+1}, keeps
/// the appended target coordinates in order.
fn pipeline_frame(r: usize, i: usize, p: &ProjectivePoint) -> Result<LinearAutomorphism> {
    let n = r + 2;
    let block_top = r - i;
    let block: Vec<Rat> = p.coords()[0..=block_top].to_vec();
    debug_assert!(p.coords()[block_top + 1..].iter().all(|c| c.is_zero()));
    let mut m = QMatrix::zeros(n, n);
    // rows 0..block_top-1: forms on the phi block vanishing at p
    let ns = QMatrix::from_rows(vec![block.clone()]).nullspace();
    debug_assert_eq!(ns.len(), block_top);
    for (row, v) in ns.iter().enumerate() {
        for (col, c) in v.iter().enumerate() {
            m.set(row, col, c.clone());
        }
    }
    // rows block_top..r-1: the shifted target coordinates
    for j in 0..i {
        m.set(block_top + j, block_top + 1 + j, rat_one());
    }
    // row r: a form with value 1 at p
    let k = block
        .iter()
        .position(|c| !c.is_zero())
        .expect("vertex nonzero");
    m.set(r, k, rat_one() / block[k].clone());
    // row r+1: the last coordinate
    m.set(r + 1, r + 1, rat_one());
    LinearAutomorphism::new(m)
}

/// Apply all rows of the matrix except `skip_row` to the tuple.
fn project_rows(m: &QMatrix, skip_row: usize, tuple: &FormTuple) -> Result<FormTuple> {
    let nvars = tuple.nvars();
    let deg = tuple.degree();
    let mut forms = Vec::with_capacity(m.nrows() - 1);
    for row in 0..m.nrows() {
        if row == skip_row {
            continue;
        }
        let mut acc = HomogeneousForm::zero(nvars, deg);
        for (col, f) in tuple.forms().iter().enumerate() {
            if !m.get(row, col).is_zero() {
                acc = acc.add(&f.scale(m.get(row, col))).unwrap();
            }
        }
        forms.push(acc);
    }
    FormTuple::new(forms)
}

/// Sampling screen for birationality of the projection from the line
/// through p and the last coordinate point: seeded pairs of distinct
/// scheme points must stay distinct, within and across components.
fn line_projection_screen(
    zi: &ParamScheme,
    p: &ProjectivePoint,
    r: usize,
    opts: &SearchOptions,
    sampler: &mut Sampler,
) -> Result<bool> {
    let last = ProjectivePoint::coordinate_point(r + 1, r + 1);
    if p == &last {
        return Ok(false);
    }
    let line = span(&[p.clone(), last])?;
    let proj = projection_from(&line, None)?;
    let project = |pt: &ProjectivePoint| -> Option<ProjectivePoint> {
        ProjectivePoint::new(proj.eval(pt.coords())).ok()
    };
    let pair_budget = opts.samples.clamp(3, 8);
    // within components
    for comp in &zi.components {
        if comp.arity <= 1 {
            continue;
        }
        let mut done = 0usize;
        let mut misses = 0usize;
        while done < pair_budget {
            if misses > 40 {
                return Ok(false);
            }
            let t1: Vec<Rat> = (0..comp.arity).map(|_| sampler.rat(7)).collect();
            let t2: Vec<Rat> = (0..comp.arity).map(|_| sampler.rat(7)).collect();
            let (Ok(z1), Ok(z2)) = (comp.eval(&t1), comp.eval(&t2)) else {
                misses += 1;
                continue;
            };
            if z1 == z2 {
                misses += 1;
                continue;
            }
            let (Some(q1), Some(q2)) = (project(&z1), project(&z2)) else {
                return Ok(false); // a scheme point on the projection line
            };
            if q1 == q2 {
                return Ok(false);
            }
            done += 1;
        }
    }
    // across components
    for a in 0..zi.components.len() {
        for b in (a + 1)..zi.components.len() {
            let ca = &zi.components[a];
            let cb = &zi.components[b];
            let mut done = 0usize;
            let mut misses = 0usize;
            while done < pair_budget.min(4) {
                if misses > 40 {
                    return Ok(false);
                }
                let t1: Vec<Rat> = (0..ca.arity).map(|_| sampler.rat(7)).collect();
                let t2: Vec<Rat> = (0..cb.arity).map(|_| sampler.rat(7)).collect();
                let (Ok(z1), Ok(z2)) = (ca.eval(&t1), cb.eval(&t2)) else {
                    misses += 1;
                    continue;
                };
                if z1 == z2 {
                    misses += 1;
                    continue;
                }
                let (Some(q1), Some(q2)) = (project(&z1), project(&z2)) else {
                    return Ok(false);
                };
                if q1 == q2 {
                    return Ok(false);
                }
                done += 1;
            }
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// contraction of unions of rational varieties
// ---------------------------------------------------------------------------

/// Contract a reduced union of rational varieties (dimension at most r-2
/// per component) to a set of distinct points: linearize through the
/// pipeline, then peel one dimension per quadro-quadric step centered at a
/// point plus a codimension-two quadric through prescribed linear spaces.
pub fn contract_union(
    z: &ParamScheme,
    sampler: &mut Sampler,
    opts: &SearchOptions,
) -> Result<CremonaChain> {
    let r = z.ambient;
    let mut chain = CremonaChain::new(r, sampler.seed());
    let mut current: Vec<FormTuple> = z.components.iter().map(|c| c.tuple.clone()).collect();

    // point components must be distinct from the start
    {
        let mut pts: Vec<ProjectivePoint> = Vec::new();
        for t in current.iter().filter(|t| t.nvars() == 1) {
            let p = constant_point(t).ok_or(Error::ZeroInput("degenerate point component"))?;
            if pts.contains(&p) {
                return Err(Error::NonDistinctPoints);
            }
            pts.push(p);
        }
    }

    if current.iter().all(|t| t.nvars() == 1) {
        let points = current
            .iter()
            .map(|t| constant_point(t).ok_or(Error::ZeroInput("degenerate point component")))
            .collect::<Result<Vec<_>>>()?;
        chain.final_claim = FinalClaim::Contraction { points };
        return Ok(chain);
    }
    if r < 3 {
        return Err(Error::DegeneratePosition(
            "contraction of positive-dimensional components needs P^3 or larger",
        ));
    }

    let mut rounds = 0usize;
    loop {
        rounds += 1;
        if rounds > r {
            return Err(Error::GenericityExhausted("contraction did not terminate"));
        }
        let dims: Vec<usize> = current
            .iter()
            .map(effective_linear_dim)
            .collect::<Result<Vec<_>>>()?;
        let m = dims.iter().copied().max().unwrap();
        if m == 0 {
            break;
        }
        let top: Vec<usize> = (0..current.len()).filter(|&c| dims[c] == m).collect();
        contraction_round(r, m, &top, &dims, &mut current, &mut chain, sampler, opts)?;
    }

    // final distinctness
    let points = current
        .iter()
        .map(|t| {
            constant_point(t).ok_or(Error::StepVerificationFailed(
                "component not contracted to a point".into(),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            if points[i] == points[j] {
                return Err(Error::GenericityExhausted("contracted points collide"));
            }
        }
    }
    chain.final_claim = FinalClaim::Contraction { points };
    Ok(chain)
}

/// Linear dimension of the image of a parametrization tuple that
/// parametrizes a linear space (or a point).
fn effective_linear_dim(t: &FormTuple) -> Result<usize> {
    if t.nvars() == 1 {
        return Ok(0);
    }
    let rank = image_rank(t)?;
    Ok(rank - 1)
}

/// One contraction round: move the top components onto spans through a
/// common point with bases inside a codimension-two quadric, then apply
/// the quadro-quadric map, dropping their dimension by one.
#[allow(clippy::too_many_arguments)]
fn contraction_round(
    r: usize,
    m: usize,
    top: &[usize],
    dims: &[usize],
    current: &mut Vec<FormTuple>,
    chain: &mut CremonaChain,
    sampler: &mut Sampler,
    opts: &SearchOptions,
) -> Result<()> {
    'geometry: for _ in 0..opts.resample_budget {
        let h = loop {
            let pts: Vec<ProjectivePoint> = (0..r).map(|_| sampler.raw_point(r, 5)).collect();
            let Ok(sp) = span(&pts) else { continue };
            if sp.dim() == r - 1 {
                break sp;
            }
        };
        // concurrent shortcut: when the top components are lines already
        // meeting in one point, reuse that point instead of moving them
        let shortcut = if m == 1 {
            concurrent_apex(top, current)
        } else {
            None
        };
        let apex = match &shortcut {
            Some(p) => p.clone(),
            None => {
                let off_h = |q: &ProjectivePoint| h.contains(q);
                match sampler.sample_point(r, &[&off_h]) {
                    Ok(p) => p,
                    Err(_) => continue 'geometry,
                }
            }
        };
        if h.contains(&apex) {
            continue 'geometry;
        }

        // base spaces A_c inside H, one per top component
        let mut bases: Vec<Vec<ProjectivePoint>> = Vec::with_capacity(top.len());
        if shortcut.is_some() {
            // A_c = H n line_c, computed exactly
            let hform = hyperplane_form(&h);
            let mut seen: Vec<ProjectivePoint> = Vec::new();
            for &c in top {
                let sp = image_span(&current[c])?;
                if sp.dim() != 1 {
                    continue 'geometry;
                }
                let w = sp
                    .basis()
                    .iter()
                    .find(|b| *b != &apex)
                    .expect("line has two basis points")
                    .clone();
                let lw = eval_linear(&hform, &w);
                let lp = eval_linear(&hform, &apex);
                let coords: Vec<Rat> = apex
                    .coords()
                    .iter()
                    .zip(w.coords().iter())
                    .map(|(a, b)| &(a * &lw) - &(b * &lp))
                    .collect();
                let Ok(q) = ProjectivePoint::new(coords) else {
                    continue 'geometry;
                };
                if seen.contains(&q) {
                    continue 'geometry;
                }
                seen.push(q.clone());
                bases.push(vec![q]);
            }
        } else {
            for _ in top {
                let mut pts = Vec::with_capacity(m);
                for _ in 0..m {
                    let inside = loop {
                        let coeffs = sampler.coeff_vector(h.basis().len(), 4);
                        let mut coords = vec![rat_zero(); r + 1];
                        for (cf, b) in coeffs.iter().zip(h.basis().iter()) {
                            for (ci, bi) in coords.iter_mut().zip(b.coords().iter()) {
                                *ci += cf * bi;
                            }
                        }
                        if let Ok(p) = ProjectivePoint::new(coords) {
                            break p;
                        }
                    };
                    pts.push(inside);
                }
                let Ok(sp) = span(&pts) else { continue 'geometry };
                if sp.dim() != m - 1 {
                    continue 'geometry;
                }
                bases.push(sp.basis().to_vec());
            }
        }

        // quadric on H through every A_c
        let Some(q_eq) = quadric_through_subspaces(&h, &bases, sampler) else {
            continue 'geometry;
        };
        let Ok(qq) = quadro_quadric(&apex, &h, &q_eq) else {
            continue 'geometry;
        };

        // move top components onto the spans <A_c, apex> unless shortcut
        let mut pipeline_steps: Vec<ChainStep> = Vec::new();
        let mut staged: Vec<FormTuple> = current.clone();
        if shortcut.is_none() {
            let mut targets: Vec<FormTuple> = Vec::with_capacity(current.len());
            for (c, tuple) in current.iter().enumerate() {
                if let Some(slot) = top.iter().position(|&tc| tc == c) {
                    let mut gens = bases[slot].clone();
                    gens.push(apex.clone());
                    targets.push(linear_param(&gens)?);
                } else if tuple.nvars() == 1 || dims[c] == 0 {
                    targets.push(tuple.clone());
                } else {
                    let Ok(sp) = ({
                        let gens: Vec<ProjectivePoint> =
                            (0..=dims[c]).map(|_| sampler.raw_point(r, 5)).collect();
                        span(&gens)
                    }) else {
                        continue 'geometry;
                    };
                    if sp.dim() != dims[c] {
                        continue 'geometry;
                    }
                    targets.push(linear_param(sp.basis())?);
                }
            }
            let xsch = scheme_from_tuples(&staged)?;
            let ysch = scheme_from_tuples(&targets)?;
            let sub = match pipeline_equivalence(&xsch, &ysch, sampler, opts) {
                Ok(c) => c,
                Err(Error::StepVerificationFailed(e)) => {
                    return Err(Error::StepVerificationFailed(e))
                }
                Err(_) => continue 'geometry,
            };
            pipeline_steps = sub.steps;
            staged = targets;
        }

        // the contraction step itself
        let forward = qq.map.forward();
        let inverse = qq.map.inverse().forward();
        let Ok(certificate) = verify_inverse_pair(&forward, &inverse) else {
            continue 'geometry;
        };
        let mut after: Vec<FormTuple> = Vec::with_capacity(staged.len());
        let mut claims: Vec<ComponentClaim> = Vec::new();
        let mut ok = true;
        for (c, before) in staged.iter().enumerate() {
            let Ok(img) = compose_tuple(&forward, before) else {
                ok = false;
                break;
            };
            let round_trip = !top.contains(&c);
            match verified_samples(
                &forward,
                &inverse,
                before,
                &img,
                opts.samples,
                round_trip,
                sampler,
            ) {
                Ok(samples) => claims.push(ComponentClaim {
                    before: before.clone(),
                    after: img.clone(),
                    samples,
                    round_trip,
                }),
                Err(Error::StepVerificationFailed(e)) => {
                    return Err(Error::StepVerificationFailed(e))
                }
                Err(_) => {
                    ok = false;
                    break;
                }
            }
            after.push(img);
        }
        if !ok {
            continue 'geometry;
        }
        // top components must have dropped one dimension
        let mut next: Vec<FormTuple> = Vec::with_capacity(after.len());
        for (c, img) in after.iter().enumerate() {
            if top.contains(&c) {
                let rank = image_rank(img)?;
                if rank != m {
                    ok = false;
                    break;
                }
                if m == 1 {
                    let p = constant_point(img).ok_or(Error::StepVerificationFailed(
                        "rank-one tuple without constant point".into(),
                    ))?;
                    next.push(point_param(&p)?);
                } else {
                    let sp = image_span(img)?;
                    if sp.dim() != m - 1 {
                        ok = false;
                        break;
                    }
                    next.push(linear_param(sp.basis())?);
                }
            } else {
                next.push(img.clone());
            }
        }
        if !ok {
            continue 'geometry;
        }
        // collisions of freshly contracted points with existing ones
        if m == 1 {
            let mut pts: Vec<ProjectivePoint> = Vec::new();
            for t in next.iter() {
                if t.nvars() == 1 {
                    let p = constant_point(t).ok_or(Error::StepVerificationFailed(
                        "point component degenerate".into(),
                    ))?;
                    if pts.contains(&p) {
                        ok = false;
                        break;
                    }
                    pts.push(p);
                }
            }
            if !ok {
                continue 'geometry;
            }
        }
        chain.steps.extend(pipeline_steps);
        chain.steps.push(ChainStep {
            kind: StepKind::QuadroQuadric,
            forward,
            inverse,
            certificate,
            point_claims: Vec::new(),
            component_claims: claims,
        });
        *current = next;
        return Ok(());
    }
    Err(Error::GenericityExhausted("contraction geometry sampling"))
}

/// Common point of the top line components, when they are concurrent.
fn concurrent_apex(top: &[usize], current: &[FormTuple]) -> Option<ProjectivePoint> {
    let mut common: Option<LinearSubspace> = None;
    for &c in top {
        let sp = image_span(&current[c]).ok()?;
        if sp.dim() != 1 {
            return None;
        }
        common = Some(match common {
            None => sp,
            Some(acc) => acc.intersect(&sp)?,
        });
    }
    let common = common?;
    if top.len() == 1 {
        // a single line: any point on it works as the apex
        return Some(common.basis()[0].clone());
    }
    if common.dim() == 0 {
        Some(common.basis()[0].clone())
    } else {
        None
    }
}

fn hyperplane_form(h: &LinearSubspace) -> Vec<Rat> {
    let rows: Vec<Vec<Rat>> = h.basis().iter().map(|b| b.coords().to_vec()).collect();
    let ns = QMatrix::from_rows(rows).nullspace();
    ns.into_iter().next().expect("hyperplane has a defining form")
}

fn eval_linear(form: &[Rat], p: &ProjectivePoint) -> Rat {
    form.iter()
        .zip(p.coords().iter())
        .fold(rat_zero(), |acc, (a, b)| acc + a * b)
}

/// Span of the image of a parametrization: the column space of its
/// coefficient matrix.
fn image_span(t: &FormTuple) -> Result<LinearSubspace> {
    let layout = monomials(t.nvars(), t.degree());
    let mut pts: Vec<ProjectivePoint> = Vec::new();
    for e in &layout {
        let col: Vec<Rat> = t.forms().iter().map(|f| f.coeff(e)).collect();
        if col.iter().any(|c| !c.is_zero()) {
            pts.push(ProjectivePoint::new(col)?);
        }
    }
    span(&pts)
}

/// Linear parametrization of the span of the given points.
fn linear_param(gens: &[ProjectivePoint]) -> Result<FormTuple> {
    let arity = gens.len();
    let n = gens[0].dim() + 1;
    let forms = (0..n)
        .map(|coord| {
            HomogeneousForm::from_terms(
                arity,
                1,
                gens.iter().enumerate().map(|(j, g)| {
                    let mut e = vec![0usize; arity];
                    e[j] = 1;
                    (e, g.coords()[coord].clone())
                }),
            )
            .expect("linear form")
        })
        .collect();
    FormTuple::new(forms)
}

/// Canonical arity-one parametrization of a point.
fn point_param(p: &ProjectivePoint) -> Result<FormTuple> {
    let forms = p
        .coords()
        .iter()
        .map(|c| HomogeneousForm::from_terms(1, 1, vec![(vec![1], c.clone())]).expect("linear"))
        .collect();
    FormTuple::new(forms)
}

fn scheme_from_tuples(tuples: &[FormTuple]) -> Result<ParamScheme> {
    ParamScheme::new(
        tuples
            .iter()
            .map(|t| SchemeComponent::new(t.clone()))
            .collect(),
    )
}

/// Push a component tuple through a self-map (tuple substitution).
fn compose_tuple(map: &RationalMap, t: &FormTuple) -> Result<FormTuple> {
    map.tuple().substitute(t)
}

/// Quadric on the hyperplane (in its basis coordinates) containing every
/// listed subspace, seeded and reduced.
fn quadric_through_subspaces(
    h: &LinearSubspace,
    bases: &[Vec<ProjectivePoint>],
    sampler: &mut Sampler,
) -> Option<HomogeneousForm> {
    let r = h.ambient();
    let hdim = h.basis().len(); // = r
    let to_h = |w: &ProjectivePoint| -> Option<Vec<Rat>> {
        let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(r + 1);
        for corow in 0..=r {
            let mut row: Vec<Rat> = h
                .basis()
                .iter()
                .map(|b| b.coords()[corow].clone())
                .collect();
            row.push(-w.coords()[corow].clone());
            rows.push(row);
        }
        let ns = QMatrix::from_rows(rows).nullspace();
        let v = ns.into_iter().next()?;
        let scale = v.last().cloned()?;
        if scale.is_zero() {
            return None;
        }
        Some(v[..hdim].iter().map(|c| c / &scale).collect())
    };
    let q_monos = monomials(hdim, 2);
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for base in bases {
        let k = base.len();
        let hforms: Vec<Vec<Rat>> = base.iter().map(to_h).collect::<Option<Vec<_>>>()?;
        let param = FormTuple::new(
            (0..hdim)
                .map(|coord| {
                    HomogeneousForm::from_terms(
                        k,
                        1,
                        hforms.iter().enumerate().map(|(j, hc)| {
                            let mut e = vec![0usize; k];
                            e[j] = 1;
                            (e, hc[coord].clone())
                        }),
                    )
                    .expect("linear form")
                })
                .collect(),
        )
        .ok()?;
        let pullbacks: Vec<HomogeneousForm> = q_monos
            .iter()
            .map(|e| {
                HomogeneousForm::monomial(hdim, e.0.clone(), rat_one())
                    .unwrap()
                    .substitute(&param)
                    .expect("substitution")
            })
            .collect();
        for target in monomials(k, 2) {
            let row: Vec<Rat> = pullbacks.iter().map(|pb| pb.coeff(&target)).collect();
            if row.iter().any(|c| !c.is_zero()) {
                rows.push(row);
            }
        }
    }
    let basis = if rows.is_empty() {
        QMatrix::zeros(1, q_monos.len()).nullspace()
    } else {
        QMatrix::from_rows(rows).nullspace()
    };
    if basis.is_empty() {
        return None;
    }
    for _ in 0..16 {
        let mix = sampler.coeff_vector(basis.len(), 5);
        let mut coeffs = vec![rat_zero(); q_monos.len()];
        for (c, b) in mix.iter().zip(basis.iter()) {
            for (ci, bi) in coeffs.iter_mut().zip(b.iter()) {
                *ci += c * bi;
            }
        }
        let q = HomogeneousForm::from_terms(
            hdim,
            2,
            q_monos
                .iter()
                .zip(coeffs.iter())
                .map(|(e, c)| (e.0.clone(), c.clone())),
        )
        .expect("quadric assembly");
        if !q.is_zero() && quadric_rank(&q) >= 2 {
            return Some(q);
        }
    }
    None
}
