//! JSON schemas for every public object. Rationals are decimal fraction
//! strings ("p/q" or "p"); forms are term lists under the global monomial
//! order, so serialization is canonical and byte-identical for equal seeds.

use crate::chain::{ChainStep, ComponentClaim, CremonaChain, FinalClaim, PointClaim, StepKind};
use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::monoid::{BiVertexMonoid, Monoid};
use crate::poly::{FormTuple, HomogeneousForm};
use crate::projective::{LinearAutomorphism, LinearSubspace, ProjectivePoint};
use crate::ratmap::{InverseCertificate, ParamScheme, RationalMap, SchemeComponent};
use crate::scalar::{format_rat, parse_rat, Rat};
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct TermJson {
    pub exps: Vec<usize>,
    pub coeff: String,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct FormJson {
    pub nvars: usize,
    pub degree: usize,
    pub terms: Vec<TermJson>,
}

pub fn form_to_json(f: &HomogeneousForm) -> FormJson {
    FormJson {
        nvars: f.nvars(),
        degree: f.degree(),
        terms: f
            .terms()
            .map(|(e, c)| TermJson {
                exps: e.0.clone(),
                coeff: format_rat(c),
            })
            .collect(),
    }
}

pub fn form_from_json(j: &FormJson) -> Result<HomogeneousForm> {
    HomogeneousForm::from_terms(
        j.nvars,
        j.degree,
        j.terms
            .iter()
            .map(|t| Ok((t.exps.clone(), parse_rat(&t.coeff)?)))
            .collect::<Result<Vec<_>>>()?,
    )
}

pub fn point_to_json(p: &ProjectivePoint) -> Vec<String> {
    p.coords().iter().map(format_rat).collect()
}

pub fn point_from_json(coords: &[String]) -> Result<ProjectivePoint> {
    ProjectivePoint::new(
        coords
            .iter()
            .map(|s| parse_rat(s))
            .collect::<Result<Vec<_>>>()?,
    )
}

pub fn rat_vec_to_json(v: &[Rat]) -> Vec<String> {
    v.iter().map(format_rat).collect()
}

pub fn rat_vec_from_json(v: &[String]) -> Result<Vec<Rat>> {
    v.iter().map(|s| parse_rat(s)).collect()
}

pub fn matrix_to_json(m: &QMatrix) -> Vec<Vec<String>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| format_rat(m.get(i, j))).collect())
        .collect()
}

pub fn matrix_from_json(rows: &[Vec<String>]) -> Result<QMatrix> {
    let data = rows
        .iter()
        .map(|r| rat_vec_from_json(r))
        .collect::<Result<Vec<_>>>()?;
    Ok(QMatrix::from_rows(data))
}

pub fn tuple_to_json(t: &FormTuple) -> Vec<FormJson> {
    t.forms().iter().map(form_to_json).collect()
}

pub fn tuple_from_json(forms: &[FormJson]) -> Result<FormTuple> {
    FormTuple::new(
        forms
            .iter()
            .map(form_from_json)
            .collect::<Result<Vec<_>>>()?,
    )
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct MapJson {
    pub source_dim: usize,
    pub target_dim: usize,
    pub degree: usize,
    pub forms: Vec<FormJson>,
}

pub fn map_to_json(m: &RationalMap) -> MapJson {
    MapJson {
        source_dim: m.source_dim(),
        target_dim: m.target_dim(),
        degree: m.degree(),
        forms: tuple_to_json(m.tuple()),
    }
}

pub fn map_from_json(j: &MapJson) -> Result<RationalMap> {
    let t = tuple_from_json(&j.forms)?;
    let m = RationalMap::new(t);
    if m.source_dim() != j.source_dim || m.target_dim() != j.target_dim {
        return Err(Error::Parse("map dimensions disagree with forms".into()));
    }
    Ok(m)
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct CertificateJson {
    pub phi: FormJson,
    pub delta: usize,
    pub delta_prime: usize,
}

pub fn certificate_to_json(c: &InverseCertificate) -> CertificateJson {
    CertificateJson {
        phi: form_to_json(&c.phi),
        delta: c.delta,
        delta_prime: c.delta_prime,
    }
}

pub fn certificate_from_json(j: &CertificateJson) -> Result<InverseCertificate> {
    Ok(InverseCertificate {
        phi: form_from_json(&j.phi)?,
        delta: j.delta,
        delta_prime: j.delta_prime,
    })
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct ComponentJson {
    pub arity: usize,
    pub forms: Vec<FormJson>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct SchemeJson {
    pub ambient_dim: usize,
    pub components: Vec<ComponentJson>,
}

pub fn scheme_to_json(s: &ParamScheme) -> SchemeJson {
    SchemeJson {
        ambient_dim: s.ambient,
        components: s
            .components
            .iter()
            .map(|c| ComponentJson {
                arity: c.arity,
                forms: tuple_to_json(&c.tuple),
            })
            .collect(),
    }
}

pub fn scheme_from_json(j: &SchemeJson) -> Result<ParamScheme> {
    let components = j
        .components
        .iter()
        .map(|c| {
            let t = tuple_from_json(&c.forms)?;
            if t.nvars() != c.arity {
                return Err(Error::Parse("component arity disagrees with forms".into()));
            }
            Ok(SchemeComponent::new(t))
        })
        .collect::<Result<Vec<_>>>()?;
    let s = ParamScheme::new(components)?;
    if s.ambient != j.ambient_dim {
        return Err(Error::Parse(
            "scheme ambient dimension disagrees with forms".into(),
        ));
    }
    Ok(s)
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct MonoidJson {
    pub ambient_dim: usize,
    pub degree: usize,
    pub frame: Vec<Vec<String>>,
    pub f_low: FormJson,
    pub f_high: FormJson,
}

pub fn monoid_to_json(m: &Monoid) -> MonoidJson {
    MonoidJson {
        ambient_dim: m.ambient(),
        degree: m.degree(),
        frame: matrix_to_json(m.frame().matrix()),
        f_low: form_to_json(m.f_low()),
        f_high: form_to_json(m.f_high()),
    }
}

pub fn monoid_from_json(j: &MonoidJson) -> Result<Monoid> {
    let frame = LinearAutomorphism::new(matrix_from_json(&j.frame)?)?;
    Monoid::new(
        j.ambient_dim,
        frame,
        form_from_json(&j.f_low)?,
        form_from_json(&j.f_high)?,
    )
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct BiVertexJson {
    pub ambient_dim: usize,
    pub degree: usize,
    pub frame: Vec<Vec<String>>,
    pub f_d: FormJson,
    pub g_dm1: FormJson,
    pub f_dm1: FormJson,
    pub f_dm2: FormJson,
}

pub fn bivertex_to_json(m: &BiVertexMonoid) -> BiVertexJson {
    let (f_d, g_dm1, f_dm1, f_dm2) = m.parts();
    BiVertexJson {
        ambient_dim: m.ambient(),
        degree: m.degree(),
        frame: matrix_to_json(m.frame().matrix()),
        f_d: form_to_json(f_d),
        g_dm1: form_to_json(g_dm1),
        f_dm1: form_to_json(f_dm1),
        f_dm2: form_to_json(f_dm2),
    }
}

pub fn bivertex_from_json(j: &BiVertexJson) -> Result<BiVertexMonoid> {
    let frame = LinearAutomorphism::new(matrix_from_json(&j.frame)?)?;
    BiVertexMonoid::new(
        j.ambient_dim,
        j.degree,
        frame,
        form_from_json(&j.f_d)?,
        form_from_json(&j.g_dm1)?,
        form_from_json(&j.f_dm1)?,
        form_from_json(&j.f_dm2)?,
    )
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct LayoutBlockJson {
    pub label: String,
    pub degree: usize,
    pub monomials: Vec<Vec<usize>>,
}

/// Serialized monoid system: the coefficient layout makes every member
/// reproducible bit-exactly from its coefficient vector.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct MonoidSystemJson {
    pub ambient_dim: usize,
    pub degree: usize,
    pub kind: String,
    pub frame: Vec<Vec<String>>,
    pub layout: Vec<LayoutBlockJson>,
    pub basis: Vec<Vec<String>>,
}

pub fn system_to_json(s: &crate::interpolation::MonoidSystem) -> MonoidSystemJson {
    MonoidSystemJson {
        ambient_dim: s.ambient,
        degree: s.degree,
        kind: match s.kind {
            crate::interpolation::SystemKind::SingleVertex => "single-vertex".into(),
            crate::interpolation::SystemKind::BiVertex => "bi-vertex".into(),
        },
        frame: matrix_to_json(s.frame.matrix()),
        layout: s
            .layout
            .iter()
            .map(|(label, degree, monos)| LayoutBlockJson {
                label: label.clone(),
                degree: *degree,
                monomials: monos.iter().map(|e| e.0.clone()).collect(),
            })
            .collect(),
        basis: s.basis.iter().map(|v| rat_vec_to_json(v)).collect(),
    }
}

pub fn system_from_json(j: &MonoidSystemJson) -> Result<crate::interpolation::MonoidSystem> {
    use crate::poly::Exponents;
    let kind = match j.kind.as_str() {
        "single-vertex" => crate::interpolation::SystemKind::SingleVertex,
        "bi-vertex" => crate::interpolation::SystemKind::BiVertex,
        other => return Err(Error::Parse(format!("unknown system kind {other:?}"))),
    };
    Ok(crate::interpolation::MonoidSystem {
        ambient: j.ambient_dim,
        degree: j.degree,
        kind,
        frame: LinearAutomorphism::new(matrix_from_json(&j.frame)?)?,
        layout: j
            .layout
            .iter()
            .map(|b| {
                (
                    b.label.clone(),
                    b.degree,
                    b.monomials.iter().map(|e| Exponents(e.clone())).collect(),
                )
            })
            .collect(),
        basis: j
            .basis
            .iter()
            .map(|v| rat_vec_from_json(v))
            .collect::<Result<Vec<_>>>()?,
    })
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct DeJonquieresJson {
    pub ambient_dim: usize,
    pub degree: usize,
    pub frame: Vec<Vec<String>>,
    pub f0: FormJson,
    pub g0: FormJson,
    pub f: FormJson,
    pub g: FormJson,
}

pub fn dejonquieres_to_json(m: &crate::dejonquieres::DeJonquieresMap) -> DeJonquieresJson {
    DeJonquieresJson {
        ambient_dim: m.ambient(),
        degree: m.degree(),
        frame: matrix_to_json(m.frame().matrix()),
        f0: form_to_json(m.f0()),
        g0: form_to_json(m.g0()),
        f: form_to_json(m.f()),
        g: form_to_json(m.g()),
    }
}

pub fn dejonquieres_from_json(j: &DeJonquieresJson) -> Result<crate::dejonquieres::DeJonquieresMap> {
    let frame = LinearAutomorphism::new(matrix_from_json(&j.frame)?)?;
    crate::dejonquieres::DeJonquieresMap::new(
        j.ambient_dim,
        frame,
        form_from_json(&j.f0)?,
        form_from_json(&j.g0)?,
        form_from_json(&j.f)?,
        form_from_json(&j.g)?,
    )
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct PointClaimJson {
    pub from: Vec<String>,
    pub to: Vec<String>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct ComponentClaimJson {
    pub before: Vec<FormJson>,
    pub after: Vec<FormJson>,
    pub samples: Vec<Vec<String>>,
    pub round_trip: bool,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct StepJson {
    pub kind: String,
    pub forward: MapJson,
    pub inverse: MapJson,
    pub certificate: CertificateJson,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub point_claims: Vec<PointClaimJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub component_claims: Vec<ComponentClaimJson>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FinalClaimJson {
    None,
    PointsMatch {
        sources: Vec<Vec<String>>,
        targets: Vec<Vec<String>>,
    },
    SchemeMatch {
        targets: Vec<Vec<FormJson>>,
    },
    Contraction {
        points: Vec<Vec<String>>,
    },
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct ChainJson {
    pub ambient_dim: usize,
    pub seed: u64,
    pub steps: Vec<StepJson>,
    pub final_claim: FinalClaimJson,
}

pub fn chain_to_json(c: &CremonaChain) -> ChainJson {
    ChainJson {
        ambient_dim: c.ambient,
        seed: c.seed,
        steps: c
            .steps
            .iter()
            .map(|s| StepJson {
                kind: s.kind.tag().to_string(),
                forward: map_to_json(&s.forward),
                inverse: map_to_json(&s.inverse),
                certificate: certificate_to_json(&s.certificate),
                point_claims: s
                    .point_claims
                    .iter()
                    .map(|p| PointClaimJson {
                        from: point_to_json(&p.from),
                        to: point_to_json(&p.to),
                    })
                    .collect(),
                component_claims: s
                    .component_claims
                    .iter()
                    .map(|c| ComponentClaimJson {
                        before: tuple_to_json(&c.before),
                        after: tuple_to_json(&c.after),
                        samples: c.samples.iter().map(|v| rat_vec_to_json(v)).collect(),
                        round_trip: c.round_trip,
                    })
                    .collect(),
            })
            .collect(),
        final_claim: match &c.final_claim {
            FinalClaim::None => FinalClaimJson::None,
            FinalClaim::PointsMatch { sources, targets } => FinalClaimJson::PointsMatch {
                sources: sources.iter().map(point_to_json).collect(),
                targets: targets.iter().map(point_to_json).collect(),
            },
            FinalClaim::SchemeMatch { targets } => FinalClaimJson::SchemeMatch {
                targets: targets.iter().map(tuple_to_json).collect(),
            },
            FinalClaim::Contraction { points } => FinalClaimJson::Contraction {
                points: points.iter().map(point_to_json).collect(),
            },
        },
    }
}

pub fn chain_from_json(j: &ChainJson) -> Result<CremonaChain> {
    let steps = j
        .steps
        .iter()
        .map(|s| {
            Ok(ChainStep {
                kind: StepKind::from_tag(&s.kind)?,
                forward: map_from_json(&s.forward)?,
                inverse: map_from_json(&s.inverse)?,
                certificate: certificate_from_json(&s.certificate)?,
                point_claims: s
                    .point_claims
                    .iter()
                    .map(|p| {
                        Ok(PointClaim {
                            from: point_from_json(&p.from)?,
                            to: point_from_json(&p.to)?,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?,
                component_claims: s
                    .component_claims
                    .iter()
                    .map(|c| {
                        Ok(ComponentClaim {
                            before: tuple_from_json(&c.before)?,
                            after: tuple_from_json(&c.after)?,
                            samples: c
                                .samples
                                .iter()
                                .map(|v| rat_vec_from_json(v))
                                .collect::<Result<Vec<_>>>()?,
                            round_trip: c.round_trip,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let final_claim = match &j.final_claim {
        FinalClaimJson::None => FinalClaim::None,
        FinalClaimJson::PointsMatch { sources, targets } => FinalClaim::PointsMatch {
            sources: sources
                .iter()
                .map(|p| point_from_json(p))
                .collect::<Result<Vec<_>>>()?,
            targets: targets
                .iter()
                .map(|p| point_from_json(p))
                .collect::<Result<Vec<_>>>()?,
        },
        FinalClaimJson::SchemeMatch { targets } => FinalClaim::SchemeMatch {
            targets: targets
                .iter()
                .map(|t| tuple_from_json(t))
                .collect::<Result<Vec<_>>>()?,
        },
        FinalClaimJson::Contraction { points } => FinalClaim::Contraction {
            points: points
                .iter()
                .map(|p| point_from_json(p))
                .collect::<Result<Vec<_>>>()?,
        },
    };
    Ok(CremonaChain {
        ambient: j.ambient_dim,
        seed: j.seed,
        steps,
        final_claim,
    })
}

/// Basis points of a linear subspace (hyperplanes in the CLI input files).
pub fn subspace_from_json(basis: &[Vec<String>]) -> Result<LinearSubspace> {
    let pts = basis
        .iter()
        .map(|p| point_from_json(p))
        .collect::<Result<Vec<_>>>()?;
    crate::projective::span(&pts)
}

pub fn to_pretty_string<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projective::Sampler;

    #[test]
    fn form_round_trip() {
        let n = 3;
        let x0 = HomogeneousForm::variable(n, 0);
        let x1 = HomogeneousForm::variable(n, 1);
        let f = x0
            .mul(&x1)
            .unwrap()
            .scale(&crate::scalar::rat_int(-7))
            .add(&x1.pow(2))
            .unwrap();
        let j = form_to_json(&f);
        let back = form_from_json(&j).unwrap();
        assert_eq!(f, back);
    }

    #[test]
    fn chain_round_trip_bit_exact() {
        use crate::equivalence::{points_equivalence, SearchOptions};
        let z = vec![
            ProjectivePoint::from_ints(&[1, 2, 3]).unwrap(),
            ProjectivePoint::from_ints(&[0, 1, 1]).unwrap(),
        ];
        let z2 = vec![
            ProjectivePoint::from_ints(&[2, 1, 1]).unwrap(),
            ProjectivePoint::from_ints(&[1, 0, 1]).unwrap(),
        ];
        let mut s = Sampler::new(31);
        let chain = points_equivalence(&z, &z2, &mut s, &SearchOptions::default()).unwrap();
        let j = chain_to_json(&chain);
        let text = to_pretty_string(&j).unwrap();
        let parsed: ChainJson = serde_json::from_str(&text).unwrap();
        let back = chain_from_json(&parsed).unwrap();
        back.verify().unwrap();
        // byte-identical re-serialization
        assert_eq!(text, to_pretty_string(&chain_to_json(&back)).unwrap());
    }
}
