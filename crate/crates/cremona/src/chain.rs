//! Cremona chains: ordered certified steps with embedded verification
//! claims. A serialized chain file is independently re-checkable without
//! re-running any search: certificates are recomputed by exact division and
//! every point and sample claim is re-evaluated.

use crate::error::{Error, Result};
use crate::poly::FormTuple;
use crate::projective::ProjectivePoint;
use crate::ratmap::{
    constant_point, image_rank, verify_inverse_pair, InverseCertificate, RationalMap,
};
use crate::scalar::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepKind {
    DeJonquieres,
    DoubleProjection,
    QuadroQuadric,
    Linear,
}

impl StepKind {
    pub fn tag(&self) -> &'static str {
        match self {
            StepKind::DeJonquieres => "dejonquieres",
            StepKind::DoubleProjection => "double-projection",
            StepKind::QuadroQuadric => "quadro-quadric",
            StepKind::Linear => "linear",
        }
    }

    pub fn from_tag(tag: &str) -> Result<StepKind> {
        match tag {
            "dejonquieres" => Ok(StepKind::DeJonquieres),
            "double-projection" => Ok(StepKind::DoubleProjection),
            "quadro-quadric" => Ok(StepKind::QuadroQuadric),
            "linear" => Ok(StepKind::Linear),
            _ => Err(Error::Parse(format!("unknown step kind {tag:?}"))),
        }
    }
}

/// Exact point action claimed for one step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointClaim {
    pub from: ProjectivePoint,
    pub to: ProjectivePoint,
}

/// Exact component action claimed for one step: parametrizations before
/// and after, with the parameter samples at which the action and its
/// inverse round-trip were verified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentClaim {
    pub before: FormTuple,
    pub after: FormTuple,
    pub samples: Vec<Vec<Rat>>,
    /// Whether the step is claimed to be an isomorphism near the component
    /// (checked by inverse round trips). Contraction steps set this false
    /// for the components they contract.
    pub round_trip: bool,
}

#[derive(Clone, Debug)]
pub struct ChainStep {
    pub kind: StepKind,
    pub forward: RationalMap,
    pub inverse: RationalMap,
    pub certificate: InverseCertificate,
    pub point_claims: Vec<PointClaim>,
    pub component_claims: Vec<ComponentClaim>,
}

/// End-of-chain claim re-checked by `verify`.
#[derive(Clone, Debug)]
pub enum FinalClaim {
    None,
    /// The composite carries `sources[i]` to `targets[i]` exactly.
    PointsMatch {
        sources: Vec<ProjectivePoint>,
        targets: Vec<ProjectivePoint>,
    },
    /// The last step's component outputs are projectively equal to the
    /// target parametrizations.
    SchemeMatch { targets: Vec<FormTuple> },
    /// Every listed component has been contracted to the stated point and
    /// the points are pairwise distinct.
    Contraction { points: Vec<ProjectivePoint> },
}

#[derive(Clone, Debug)]
pub struct CremonaChain {
    pub ambient: usize,
    pub seed: u64,
    pub steps: Vec<ChainStep>,
    pub final_claim: FinalClaim,
}

impl CremonaChain {
    pub fn new(ambient: usize, seed: u64) -> Self {
        CremonaChain {
            ambient,
            seed,
            steps: Vec::new(),
            final_claim: FinalClaim::None,
        }
    }

    /// Apply every forward map in order.
    pub fn apply(&self, p: &ProjectivePoint) -> Result<ProjectivePoint> {
        let mut cur = p.clone();
        for step in &self.steps {
            cur = step.forward.apply(&cur)?;
        }
        Ok(cur)
    }

    /// Apply every inverse map in reverse order.
    pub fn apply_inverse(&self, p: &ProjectivePoint) -> Result<ProjectivePoint> {
        let mut cur = p.clone();
        for step in self.steps.iter().rev() {
            cur = step.inverse.apply(&cur)?;
        }
        Ok(cur)
    }

    /// Search-free audit of every certificate and claim.
    pub fn verify(&self) -> Result<()> {
        for (i, step) in self.steps.iter().enumerate() {
            let label = |msg: &str| format!("step {i}: {msg}");
            if step.forward.source_dim() != self.ambient
                || step.forward.target_dim() != self.ambient
                || step.inverse.source_dim() != self.ambient
                || step.inverse.target_dim() != self.ambient
            {
                return Err(Error::VerificationFailed(label("dimension mismatch")));
            }
            let cert = verify_inverse_pair(&step.forward, &step.inverse)
                .map_err(|e| Error::VerificationFailed(label(&format!("certificate: {e}"))))?;
            if cert.phi != step.certificate.phi
                || cert.delta != step.certificate.delta
                || cert.delta_prime != step.certificate.delta_prime
            {
                return Err(Error::VerificationFailed(label("certificate mismatch")));
            }
            if cert.phi.degree() != cert.delta * cert.delta_prime - 1 {
                return Err(Error::VerificationFailed(label("degree law violated")));
            }
            for (j, claim) in step.point_claims.iter().enumerate() {
                let image = step.forward.apply(&claim.from).map_err(|e| {
                    Error::VerificationFailed(label(&format!("point claim {j} forward: {e}")))
                })?;
                if image != claim.to {
                    return Err(Error::VerificationFailed(label(&format!(
                        "point claim {j} image differs"
                    ))));
                }
                let back = step.inverse.apply(&claim.to).map_err(|e| {
                    Error::VerificationFailed(label(&format!("point claim {j} inverse: {e}")))
                })?;
                if back != claim.from {
                    return Err(Error::VerificationFailed(label(&format!(
                        "point claim {j} round trip differs"
                    ))));
                }
            }
            for (j, claim) in step.component_claims.iter().enumerate() {
                for (k, params) in claim.samples.iter().enumerate() {
                    let before = claim.before.eval(params);
                    let after = claim.after.eval(params);
                    let fail = |msg: &str| {
                        Error::VerificationFailed(label(&format!(
                            "component {j} sample {k}: {msg}"
                        )))
                    };
                    let x = ProjectivePoint::new(before)
                        .map_err(|_| fail("source sample is a base point"))?;
                    let y = ProjectivePoint::new(after)
                        .map_err(|_| fail("image sample is a base point"))?;
                    let image = step
                        .forward
                        .apply(&x)
                        .map_err(|_| fail("forward undefined at sample"))?;
                    if image != y {
                        return Err(fail("forward image differs"));
                    }
                    if claim.round_trip {
                        let back = step
                            .inverse
                            .apply(&y)
                            .map_err(|_| fail("inverse undefined at sample"))?;
                        if back != x {
                            return Err(fail("inverse round trip differs"));
                        }
                    }
                }
            }
        }
        // consecutive component claims chain as rational maps wherever the
        // shapes match (reparametrization between phases is allowed and
        // changes the parameter arity)
        for i in 1..self.steps.len() {
            let prev = &self.steps[i - 1].component_claims;
            let cur = &self.steps[i].component_claims;
            if !prev.is_empty() && prev.len() == cur.len() {
                for (a, b) in prev.iter().zip(cur.iter()) {
                    if a.after.nvars() == b.before.nvars()
                        && a.after.len() == b.before.len()
                        && !a.after.projectively_equal(&b.before)
                    {
                        return Err(Error::VerificationFailed(format!(
                            "step {i}: component parametrizations do not chain"
                        )));
                    }
                }
            }
        }
        self.verify_final_claim()
    }

    fn verify_final_claim(&self) -> Result<()> {
        match &self.final_claim {
            FinalClaim::None => Ok(()),
            FinalClaim::PointsMatch { sources, targets } => {
                if sources.len() != targets.len() {
                    return Err(Error::VerificationFailed("final: length mismatch".into()));
                }
                for (i, (s, t)) in sources.iter().zip(targets.iter()).enumerate() {
                    let image = self.apply(s).map_err(|e| {
                        Error::VerificationFailed(format!("final: point {i} undefined: {e}"))
                    })?;
                    if &image != t {
                        return Err(Error::VerificationFailed(format!(
                            "final: point {i} misses its target"
                        )));
                    }
                    let back = self.apply_inverse(t).map_err(|e| {
                        Error::VerificationFailed(format!("final: point {i} inverse: {e}"))
                    })?;
                    if &back != s {
                        return Err(Error::VerificationFailed(format!(
                            "final: point {i} does not round trip"
                        )));
                    }
                }
                Ok(())
            }
            FinalClaim::SchemeMatch { targets } => {
                let last = self
                    .steps
                    .last()
                    .ok_or_else(|| Error::VerificationFailed("final: empty chain".into()))?;
                if last.component_claims.len() != targets.len() {
                    return Err(Error::VerificationFailed(
                        "final: component count mismatch".into(),
                    ));
                }
                for (i, (claim, target)) in
                    last.component_claims.iter().zip(targets.iter()).enumerate()
                {
                    if !claim.after.projectively_equal(target) {
                        return Err(Error::VerificationFailed(format!(
                            "final: component {i} differs from target"
                        )));
                    }
                }
                Ok(())
            }
            FinalClaim::Contraction { points } => {
                for i in 0..points.len() {
                    for j in (i + 1)..points.len() {
                        if points[i] == points[j] {
                            return Err(Error::VerificationFailed(format!(
                                "final: image points {i} and {j} coincide"
                            )));
                        }
                    }
                }
                let Some(last) = self.steps.last() else {
                    // all-points input: nothing was moved, distinctness is
                    // the whole claim
                    return Ok(());
                };
                if last.component_claims.len() != points.len() {
                    return Err(Error::VerificationFailed(
                        "final: component count mismatch".into(),
                    ));
                }
                for (i, (claim, point)) in
                    last.component_claims.iter().zip(points.iter()).enumerate()
                {
                    let rank = image_rank(&claim.after).map_err(|e| {
                        Error::VerificationFailed(format!("final: component {i} rank: {e}"))
                    })?;
                    if rank != 1 {
                        return Err(Error::VerificationFailed(format!(
                            "final: component {i} not contracted (rank {rank})"
                        )));
                    }
                    let got = constant_point(&claim.after).ok_or_else(|| {
                        Error::VerificationFailed(format!(
                            "final: component {i} has no constant image"
                        ))
                    })?;
                    if &got != point {
                        return Err(Error::VerificationFailed(format!(
                            "final: component {i} image point differs"
                        )));
                    }
                }
                Ok(())
            }
        }
    }
}
