//! Projective points, linear subspaces, linear automorphisms, linear
//! projections and seeded generic sampling.
//!
//! Points are canonically normalized (first nonzero coordinate equals one)
//! so equality is structural. "General point" choices are realized by
//! deterministic rejection sampling against explicit bad predicates, with
//! the coordinate box doubling on exhaustion.

use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::poly::{FormTuple, HomogeneousForm};
use crate::scalar::{rat_int, rat_one, rat_zero, Rat};
use num_traits::Zero;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectivePoint {
    coords: Vec<Rat>,
}

impl ProjectivePoint {
    pub fn new(coords: Vec<Rat>) -> Result<Self> {
        let lead = coords.iter().position(|c| !c.is_zero());
        match lead {
            None => Err(Error::ZeroInput("projective point with all coordinates zero")),
            Some(k) => {
                let pivot = coords[k].clone();
                let coords = coords.into_iter().map(|c| c / &pivot).collect();
                Ok(ProjectivePoint { coords })
            }
        }
    }

    pub fn from_ints(coords: &[i64]) -> Result<Self> {
        ProjectivePoint::new(coords.iter().map(|&c| rat_int(c)).collect())
    }

    /// The i-th coordinate point of P^r.
    pub fn coordinate_point(r: usize, i: usize) -> Self {
        let mut coords = vec![rat_zero(); r + 1];
        coords[i] = rat_one();
        ProjectivePoint { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }
}

/// Linear subspace given by a canonical spanning basis (reduced echelon
/// rows of the coordinate matrix of the input points).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSubspace {
    ambient: usize,
    basis: Vec<ProjectivePoint>,
}

impl LinearSubspace {
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len() - 1
    }

    pub fn basis(&self) -> &[ProjectivePoint] {
        &self.basis
    }

    pub fn contains(&self, p: &ProjectivePoint) -> bool {
        let mut rows: Vec<Vec<Rat>> = self.basis.iter().map(|b| b.coords().to_vec()).collect();
        let rank0 = QMatrix::from_rows(rows.clone()).rank();
        rows.push(p.coords().to_vec());
        QMatrix::from_rows(rows).rank() == rank0
    }

    /// Intersection as subspaces; `None` when empty.
    pub fn intersect(&self, other: &LinearSubspace) -> Option<LinearSubspace> {
        // x in both spans: x = A^T u = B^T v; solve [A^T | -B^T] kernel.
        let n = self.ambient + 1;
        let ka = self.basis.len();
        let kb = other.basis.len();
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(ka + kb);
            for b in &self.basis {
                row.push(b.coords()[i].clone());
            }
            for b in &other.basis {
                row.push(-b.coords()[i].clone());
            }
            rows.push(row);
        }
        let ns = QMatrix::from_rows(rows).nullspace();
        let mut pts = Vec::new();
        for v in ns {
            let mut coords = vec![rat_zero(); n];
            for (j, b) in self.basis.iter().enumerate() {
                for i in 0..n {
                    coords[i] += &v[j] * &b.coords()[i];
                }
            }
            if coords.iter().any(|c| !c.is_zero()) {
                pts.push(ProjectivePoint::new(coords).unwrap());
            }
        }
        if pts.is_empty() {
            None
        } else {
            Some(span(&pts).unwrap())
        }
    }
}

/// Span of a nonempty point list; dimension = rank − 1.
pub fn span(points: &[ProjectivePoint]) -> Result<LinearSubspace> {
    if points.is_empty() {
        return Err(Error::ZeroInput("span of empty point list"));
    }
    let ambient = points[0].dim();
    for p in points {
        if p.dim() != ambient {
            return Err(Error::DimensionMismatch {
                expected: ambient,
                got: p.dim(),
            });
        }
    }
    // pick independent input rows, then reduce to a canonical basis
    let mut basis_rows: Vec<Vec<Rat>> = Vec::new();
    for p in points {
        let mut candidate = basis_rows.clone();
        candidate.push(p.coords().to_vec());
        if QMatrix::from_rows(candidate.clone()).rank() > basis_rows.len() {
            basis_rows.push(p.coords().to_vec());
        }
    }
    // Gauss-Jordan on the chosen rows
    let k = basis_rows.len();
    let n = ambient + 1;
    let mut a = basis_rows;
    let mut pr = 0usize;
    for pc in 0..n {
        if pr >= k {
            break;
        }
        let sel = (pr..k).find(|&i| !a[i][pc].is_zero());
        let Some(sel) = sel else { continue };
        a.swap(pr, sel);
        let pivot = a[pr][pc].clone();
        for j in 0..n {
            a[pr][j] = &a[pr][j] / &pivot;
        }
        for i in 0..k {
            if i == pr {
                continue;
            }
            let f = a[i][pc].clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..n {
                a[i][j] = &a[i][j] - &(&a[pr][j] * &f);
            }
        }
        pr += 1;
    }
    let basis = a
        .into_iter()
        .map(|row| ProjectivePoint::new(row).expect("independent row nonzero"))
        .collect();
    Ok(LinearSubspace { ambient, basis })
}

/// True iff the three distinct points lie on one line.
pub fn are_aligned(
    a: &ProjectivePoint,
    b: &ProjectivePoint,
    c: &ProjectivePoint,
) -> Result<bool> {
    if a == b || a == c || b == c {
        return Err(Error::NonDistinctPoints);
    }
    let m = QMatrix::from_rows(vec![
        a.coords().to_vec(),
        b.coords().to_vec(),
        c.coords().to_vec(),
    ]);
    Ok(m.rank() <= 2)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearAutomorphism {
    m: QMatrix,
}

impl LinearAutomorphism {
    pub fn new(m: QMatrix) -> Result<Self> {
        assert_eq!(m.nrows(), m.ncols());
        if m.det().is_zero() {
            return Err(Error::DegeneratePosition("singular matrix"));
        }
        Ok(LinearAutomorphism { m })
    }

    pub fn identity(n: usize) -> Self {
        LinearAutomorphism {
            m: QMatrix::identity(n),
        }
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.m
    }

    pub fn size(&self) -> usize {
        self.m.nrows()
    }

    pub fn inverse(&self) -> LinearAutomorphism {
        LinearAutomorphism {
            m: self.m.inverse().expect("invertible by construction"),
        }
    }

    pub fn apply(&self, p: &ProjectivePoint) -> ProjectivePoint {
        ProjectivePoint::new(self.m.mul_vec(p.coords())).expect("automorphism preserves nonzero")
    }

    pub fn compose(&self, other: &LinearAutomorphism) -> LinearAutomorphism {
        LinearAutomorphism {
            m: self.m.mul(&other.m),
        }
    }

    /// Rows as a tuple of linear forms: the degree-one map x -> M x.
    pub fn to_form_tuple(&self) -> FormTuple {
        let n = self.m.ncols();
        let forms = (0..self.m.nrows())
            .map(|i| {
                HomogeneousForm::from_terms(
                    n,
                    1,
                    (0..n).map(|j| {
                        let mut e = vec![0usize; n];
                        e[j] = 1;
                        (e, self.m.get(i, j).clone())
                    }),
                )
                .expect("linear form")
            })
            .collect();
        FormTuple::new(forms).expect("invertible matrix has nonzero rows")
    }

    /// Deterministic frame sending `vertex` to the coordinate point e_0,
    /// using a transposition-style completion.
    pub fn frame_to_origin(vertex: &ProjectivePoint) -> LinearAutomorphism {
        let n = vertex.dim() + 1;
        let k = vertex
            .coords()
            .iter()
            .position(|c| !c.is_zero())
            .expect("point is nonzero");
        // columns: c_0 = vertex, c_j = e_j for j != k, c_k = e_0 (if k != 0)
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, 0, vertex.coords()[i].clone());
        }
        for j in 1..n {
            let target = if j == k { 0 } else { j };
            m.set(target, j, rat_one());
        }
        if k == 0 {
            // columns c_j = e_j for j >= 1 already set; fix c_0 = vertex
            // (nothing else to do)
        }
        let m = LinearAutomorphism::new(m).expect("unit column completion is invertible");
        m.inverse()
    }

    /// Deterministic frame sending `p1 -> e_r` and `p2 -> e_{r-1}`
    /// (the bi-vertex normalization), completed greedily by standard
    /// basis vectors.
    pub fn frame_to_last_two(
        p1: &ProjectivePoint,
        p2: &ProjectivePoint,
    ) -> Result<LinearAutomorphism> {
        let n = p1.dim() + 1;
        if p2.dim() + 1 != n {
            return Err(Error::DimensionMismatch {
                expected: n - 1,
                got: p2.dim(),
            });
        }
        if p1 == p2 {
            return Err(Error::NonDistinctPoints);
        }
        // columns: c_{r} = p1, c_{r-1} = p2, rest greedy standard basis
        let mut cols: Vec<Vec<Rat>> = Vec::with_capacity(n);
        let mut chosen: Vec<Vec<Rat>> = vec![p1.coords().to_vec(), p2.coords().to_vec()];
        for j in 0..n {
            let mut e = vec![rat_zero(); n];
            e[j] = rat_one();
            let mut cand = chosen.clone();
            cand.push(e.clone());
            if QMatrix::from_rows(cand.clone()).rank() > chosen.len() {
                chosen.push(e.clone());
                cols.push(e);
            }
            if cols.len() == n - 2 {
                break;
            }
        }
        if cols.len() != n - 2 {
            return Err(Error::DegeneratePosition("cannot complete bi-vertex frame"));
        }
        cols.push(p2.coords().to_vec());
        cols.push(p1.coords().to_vec());
        let mut m = QMatrix::zeros(n, n);
        for (j, col) in cols.iter().enumerate() {
            for i in 0..n {
                m.set(i, j, col[i].clone());
            }
        }
        Ok(LinearAutomorphism::new(m)?.inverse())
    }
}

/// Tuple of linear forms realizing the projection away from `sub`.
pub fn projection_from(
    sub: &LinearSubspace,
    target_frame: Option<&LinearAutomorphism>,
) -> Result<FormTuple> {
    let n = sub.ambient() + 1;
    if sub.dim() + 1 >= n {
        return Err(Error::DegeneratePosition("projection center is the whole space"));
    }
    let rows: Vec<Vec<Rat>> = sub.basis().iter().map(|b| b.coords().to_vec()).collect();
    let ns = QMatrix::from_rows(rows).nullspace();
    let forms: Vec<HomogeneousForm> = ns
        .iter()
        .map(|v| {
            HomogeneousForm::from_terms(
                n,
                1,
                v.iter().enumerate().map(|(j, c)| {
                    let mut e = vec![0usize; n];
                    e[j] = 1;
                    (e, c.clone())
                }),
            )
            .expect("linear form")
        })
        .collect();
    let tuple = FormTuple::new(forms)?;
    match target_frame {
        None => Ok(tuple),
        Some(a) => {
            assert_eq!(a.size(), tuple.len());
            let m = a.matrix();
            let forms = (0..m.nrows())
                .map(|i| {
                    let mut acc = HomogeneousForm::zero(n, 1);
                    for (j, f) in tuple.forms().iter().enumerate() {
                        acc = acc.add(&f.scale(m.get(i, j))).unwrap();
                    }
                    acc
                })
                .collect();
            FormTuple::new(forms)
        }
    }
}

/// Projective automorphism mapping `src_i -> dst_i` for r+2 points in
/// general position.
pub fn frame_map(
    src: &[ProjectivePoint],
    dst: &[ProjectivePoint],
) -> Result<LinearAutomorphism> {
    if src.len() != dst.len() || src.is_empty() {
        return Err(Error::DegeneratePosition("frame point count mismatch"));
    }
    let n = src[0].dim() + 1;
    if src.len() != n + 1 {
        return Err(Error::DegeneratePosition("frame needs r+2 points"));
    }
    let half = |pts: &[ProjectivePoint]| -> Result<QMatrix> {
        let mut a = QMatrix::zeros(n, n);
        for (j, p) in pts[..n].iter().enumerate() {
            for i in 0..n {
                a.set(i, j, p.coords()[i].clone());
            }
        }
        let inv = a
            .inverse()
            .ok_or(Error::DegeneratePosition("first r+1 frame points dependent"))?;
        let lambda = inv.mul_vec(pts[n].coords());
        if lambda.iter().any(|l| l.is_zero()) {
            return Err(Error::DegeneratePosition("frame points not in general position"));
        }
        let mut scaled = QMatrix::zeros(n, n);
        for j in 0..n {
            for i in 0..n {
                scaled.set(i, j, a.get(i, j) * &lambda[j]);
            }
        }
        Ok(scaled)
    };
    let ms = half(src)?;
    let md = half(dst)?;
    let m = md.mul(&ms.inverse().expect("scaled frame invertible"));
    LinearAutomorphism::new(m)
}

/// Deterministic seeded sampler. Identical (seed, draw sequence) yields
/// identical outputs on every platform.
#[derive(Clone, Debug)]
pub struct Sampler {
    rng: ChaCha8Rng,
    seed: u64,
    draws: u64,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            seed,
            draws: 0,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn draws(&self) -> u64 {
        self.draws
    }

    /// Derive an independent sampler; deterministic given the parent state.
    pub fn fork(&mut self) -> Sampler {
        Sampler::new(self.next_u64())
    }

    fn next_u64(&mut self) -> u64 {
        self.draws += 1;
        self.rng.next_u64()
    }

    /// Uniform-ish integer in [-bound, bound].
    pub fn int(&mut self, bound: u64) -> i64 {
        let span = 2 * bound + 1;
        let v = self.next_u64() % span;
        v as i64 - bound as i64
    }

    /// Nonzero integer in [-bound, bound].
    pub fn nonzero_int(&mut self, bound: u64) -> i64 {
        loop {
            let v = self.int(bound);
            if v != 0 {
                return v;
            }
        }
    }

    pub fn rat(&mut self, bound: u64) -> Rat {
        rat_int(self.int(bound))
    }

    /// Coefficient vector with at least one nonzero entry.
    pub fn coeff_vector(&mut self, len: usize, bound: u64) -> Vec<Rat> {
        loop {
            let v: Vec<Rat> = (0..len).map(|_| self.rat(bound)).collect();
            if v.iter().any(|c| !c.is_zero()) {
                return v;
            }
        }
    }

    /// Raw random point of P^dim with small integer coordinates.
    pub fn raw_point(&mut self, dim: usize, bound: u64) -> ProjectivePoint {
        loop {
            let coords: Vec<Rat> = (0..=dim).map(|_| self.rat(bound)).collect();
            if coords.iter().any(|c| !c.is_zero()) {
                return ProjectivePoint::new(coords).unwrap();
            }
        }
    }

    /// Rejection sampling against explicit avoid predicates; the coordinate
    /// box doubles each time the per-box attempt budget is exhausted.
    pub fn sample_point(
        &mut self,
        dim: usize,
        avoid: &[&dyn Fn(&ProjectivePoint) -> bool],
    ) -> Result<ProjectivePoint> {
        let mut bound = 5u64;
        for _escalation in 0..8 {
            for _attempt in 0..40 {
                let p = self.raw_point(dim, bound);
                if avoid.iter().any(|pred| pred(&p)) {
                    continue;
                }
                return Ok(p);
            }
            bound *= 2;
        }
        Err(Error::SampleBudgetExhausted("sample_point rejection budget"))
    }

    /// Seeded invertible automorphism with small integer entries.
    pub fn automorphism(&mut self, n: usize, bound: u64) -> LinearAutomorphism {
        loop {
            let mut m = QMatrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    m.set(i, j, self.rat(bound));
                }
            }
            if let Ok(a) = LinearAutomorphism::new(m) {
                return a;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(coords: &[i64]) -> ProjectivePoint {
        ProjectivePoint::from_ints(coords).unwrap()
    }

    #[test]
    fn point_normalization_is_canonical() {
        assert_eq!(pt(&[2, 4, 6]), pt(&[1, 2, 3]));
        assert_eq!(pt(&[0, -3, 6]), pt(&[0, 1, -2]));
        assert!(ProjectivePoint::from_ints(&[0, 0, 0]).is_err());
    }

    #[test]
    fn span_of_coordinate_points_is_coordinate_line() {
        let s = span(&[pt(&[1, 0, 0]), pt(&[0, 1, 0])]).unwrap();
        assert_eq!(s.dim(), 1);
        assert!(s.contains(&pt(&[3, 5, 0])));
        assert!(!s.contains(&pt(&[0, 0, 1])));
    }

    #[test]
    fn span_of_single_point() {
        let s = span(&[pt(&[1, 2, 3])]).unwrap();
        assert_eq!(s.dim(), 0);
        assert!(s.contains(&pt(&[2, 4, 6])));
    }

    #[test]
    fn membership_by_rank_oracle() {
        // [2,1,1] in span([0,1,1],[1,0,0])
        let s = span(&[pt(&[0, 1, 1]), pt(&[1, 0, 0])]).unwrap();
        assert!(s.contains(&pt(&[2, 1, 1])));
    }

    #[test]
    fn alignment_cases() {
        assert!(are_aligned(&pt(&[1, 0, 0]), &pt(&[0, 1, 0]), &pt(&[1, 1, 0])).unwrap());
        assert!(!are_aligned(&pt(&[1, 0, 0]), &pt(&[0, 1, 0]), &pt(&[0, 0, 1])).unwrap());
        assert!(are_aligned(&pt(&[1, 0, 0]), &pt(&[0, 1, 1]), &pt(&[2, 1, 1])).unwrap());
        assert!(are_aligned(&pt(&[1, 0, 0]), &pt(&[1, 0, 0]), &pt(&[0, 1, 0])).is_err());
    }

    #[test]
    fn alignment_invariant_under_automorphism() {
        let mut s = Sampler::new(77);
        let a = s.automorphism(3, 4);
        let (p, q, r) = (pt(&[1, 0, 0]), pt(&[0, 1, 1]), pt(&[2, 1, 1]));
        assert_eq!(
            are_aligned(&p, &q, &r).unwrap(),
            are_aligned(&a.apply(&p), &a.apply(&q), &a.apply(&r)).unwrap()
        );
    }

    #[test]
    fn projection_from_coordinate_point() {
        // projection from [0,...,0,1] in P^3 is [x0, x1, x2]
        let c = span(&[pt(&[0, 0, 0, 1])]).unwrap();
        let t = projection_from(&c, None).unwrap();
        assert_eq!(t.len(), 3);
        for (i, f) in t.forms().iter().enumerate() {
            assert_eq!(f, &HomogeneousForm::variable(4, i));
        }
    }

    #[test]
    fn projection_from_line_in_p3() {
        let c = span(&[pt(&[0, 0, 1, 0]), pt(&[0, 0, 0, 1])]).unwrap();
        let t = projection_from(&c, None).unwrap();
        assert_eq!(t.len(), 2);
        // forms vanish on every basis point of the center
        for b in c.basis() {
            for f in t.forms() {
                assert!(f.eval(b.coords()).is_zero());
            }
        }
    }

    #[test]
    fn projection_composed_with_twisted_cubic_drops_last_form() {
        // cubic [u^3, u^2 v, u v^2, v^3]; projecting from e_3 leaves the
        // first three coordinate forms.
        let u = HomogeneousForm::variable(2, 0);
        let v = HomogeneousForm::variable(2, 1);
        let cubic = FormTuple::new(vec![
            u.pow(3),
            u.pow(2).mul(&v).unwrap(),
            u.mul(&v.pow(2)).unwrap(),
            v.pow(3),
        ])
        .unwrap();
        let c = span(&[pt(&[0, 0, 0, 1])]).unwrap();
        let proj = projection_from(&c, None).unwrap();
        let image = proj.substitute(&cubic).unwrap();
        assert_eq!(image.forms()[0], cubic.forms()[0]);
        assert_eq!(image.forms()[1], cubic.forms()[1]);
        assert_eq!(image.forms()[2], cubic.forms()[2]);
    }

    #[test]
    fn frame_map_identity_and_permutation() {
        let std_frame = vec![pt(&[1, 0, 0]), pt(&[0, 1, 0]), pt(&[0, 0, 1]), pt(&[1, 1, 1])];
        let id = frame_map(&std_frame, &std_frame).unwrap();
        for p in &std_frame {
            assert_eq!(id.apply(p), *p);
        }
        let perm = vec![pt(&[0, 1, 0]), pt(&[1, 0, 0]), pt(&[0, 0, 1]), pt(&[1, 1, 1])];
        let swap = frame_map(&std_frame, &perm).unwrap();
        assert_eq!(swap.apply(&pt(&[1, 0, 0])), pt(&[0, 1, 0]));
        assert_eq!(swap.apply(&pt(&[0, 1, 0])), pt(&[1, 0, 0]));
    }

    #[test]
    fn frame_map_round_trip_via_inverse_oracle() {
        let mut s = Sampler::new(13);
        let dims = 3usize;
        'outer: for _ in 0..5 {
            let mut src = Vec::new();
            let mut dst = Vec::new();
            for _ in 0..=dims + 1 {
                src.push(s.raw_point(dims, 6));
                dst.push(s.raw_point(dims, 6));
            }
            let (f, g) = match (frame_map(&src, &dst), frame_map(&dst, &src)) {
                (Ok(f), Ok(g)) => (f, g),
                _ => continue 'outer, // degenerate draw
            };
            let comp = f.compose(&g);
            // comp is proportional to the identity
            let m = comp.matrix();
            let c = m.get(0, 0).clone();
            assert!(!c.is_zero());
            for i in 0..m.nrows() {
                for j in 0..m.ncols() {
                    let expect = if i == j { c.clone() } else { rat_zero() };
                    assert_eq!(m.get(i, j), &expect);
                }
            }
            // and f maps each src_i to a multiple of dst_i
            for (p, q) in src.iter().zip(dst.iter()) {
                assert_eq!(f.apply(p), *q);
            }
        }
    }

    #[test]
    fn sampler_determinism_and_rejection() {
        let mut a = Sampler::new(99);
        let mut b = Sampler::new(99);
        for _ in 0..10 {
            assert_eq!(a.int(10), b.int(10));
        }
        // avoid = [] returns first draw
        let mut c = Sampler::new(5);
        let mut d = Sampler::new(5);
        let p1 = c.sample_point(2, &[]).unwrap();
        let p2 = d.raw_point(2, 5);
        assert_eq!(p1, p2);
        // avoid a fixed hyperplane
        let off_hyperplane = |p: &ProjectivePoint| p.coords()[0].is_zero();
        let mut e = Sampler::new(8);
        let q = e.sample_point(2, &[&off_hyperplane]).unwrap();
        assert!(!q.coords()[0].is_zero());
    }

    #[test]
    fn subspace_intersection() {
        // two planes in P^3 meet in a line
        let a = span(&[pt(&[1, 0, 0, 0]), pt(&[0, 1, 0, 0]), pt(&[0, 0, 1, 0])]).unwrap();
        let b = span(&[pt(&[1, 0, 0, 0]), pt(&[0, 1, 0, 0]), pt(&[0, 0, 0, 1])]).unwrap();
        let line = a.intersect(&b).unwrap();
        assert_eq!(line.dim(), 1);
        assert!(line.contains(&pt(&[3, 5, 0, 0])));
        // two concurrent lines meet in their common point
        let l1 = span(&[pt(&[1, 0, 0, 0]), pt(&[0, 1, 0, 0])]).unwrap();
        let l2 = span(&[pt(&[1, 0, 0, 0]), pt(&[0, 0, 1, 0])]).unwrap();
        let p = l1.intersect(&l2).unwrap();
        assert_eq!(p.dim(), 0);
        assert_eq!(p.basis()[0], pt(&[1, 0, 0, 0]));
        // skew lines do not meet
        let l3 = span(&[pt(&[0, 0, 1, 0]), pt(&[0, 0, 0, 1])]).unwrap();
        assert!(l1.intersect(&l3).is_none());
    }

    #[test]
    fn frame_to_origin_moves_vertex() {
        let v = pt(&[0, 0, 0, 1]);
        let f = LinearAutomorphism::frame_to_origin(&v);
        assert_eq!(f.apply(&v), pt(&[1, 0, 0, 0]));
        let w = pt(&[2, 1, 0]);
        let g = LinearAutomorphism::frame_to_origin(&w);
        assert_eq!(g.apply(&w), pt(&[1, 0, 0]));
    }

    #[test]
    fn frame_to_last_two_moves_vertices() {
        let p1 = pt(&[1, 1, 0, 0]);
        let p2 = pt(&[0, 1, 1, 1]);
        let f = LinearAutomorphism::frame_to_last_two(&p1, &p2).unwrap();
        assert_eq!(f.apply(&p1), pt(&[0, 0, 0, 1]));
        assert_eq!(f.apply(&p2), pt(&[0, 0, 1, 0]));
    }
}
