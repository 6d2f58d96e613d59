//! Multivariate polynomial gcd over the rationals via content/primitive-part
//! recursion and subresultant pseudo-remainder sequences in a chosen main
//! variable. Deterministic and exact; adequate at desk-scale degrees.

use crate::error::{Error, Result};
use crate::poly::{FormTuple, HomogeneousForm};

/// Exact division `f / g` by repeated leading-term elimination under the
/// monomial order. Returns `None` when `g` does not divide `f`.
pub fn div_exact(f: &HomogeneousForm, g: &HomogeneousForm) -> Option<HomogeneousForm> {
    assert!(!g.is_zero(), "division by zero form");
    assert_eq!(f.nvars(), g.nvars());
    if f.is_zero() {
        return Some(HomogeneousForm::zero(
            f.nvars(),
            f.degree().saturating_sub(g.degree()),
        ));
    }
    if f.degree() < g.degree() {
        return None;
    }
    let qdeg = f.degree() - g.degree();
    let mut rem = f.clone();
    let mut quot = HomogeneousForm::zero(f.nvars(), qdeg);
    let (ge, gc) = {
        let (e, c) = g.leading().unwrap();
        (e.clone(), c.clone())
    };
    while !rem.is_zero() {
        let (re, rc) = {
            let (e, c) = rem.leading().unwrap();
            (e.clone(), c.clone())
        };
        if !ge_divides(&ge.0, &re.0) {
            return None;
        }
        let exps: Vec<usize> = re.0.iter().zip(ge.0.iter()).map(|(a, b)| a - b).collect();
        let t = HomogeneousForm::monomial(f.nvars(), exps, rc / gc.clone()).unwrap();
        quot = quot.add(&t).unwrap();
        rem = rem.sub(&t.mul(g).unwrap()).unwrap();
    }
    Some(quot)
}

fn ge_divides(g: &[usize], r: &[usize]) -> bool {
    g.iter().zip(r.iter()).all(|(a, b)| a <= b)
}

/// Pseudo-remainder of `a` by `b` with respect to variable `k`:
/// `lc_k(b)^(deg_k a - deg_k b + 1) * a  mod  b`, computed without fractions.
fn prem(a: &HomogeneousForm, b: &HomogeneousForm, k: usize) -> HomogeneousForm {
    let db = b.degree_in(k);
    let lcb = b.coeff_of_power(k, db);
    let e = a.degree_in(k) + 1 - db;
    let mut r = a.clone();
    let mut steps = 0usize;
    while !r.is_zero() && r.degree_in(k) >= db {
        let dr = r.degree_in(k);
        let lr = r.coeff_of_power(k, dr);
        // r <- lcb*r - lr*x_k^(dr-db)*b
        let left = r.mul(&lcb).unwrap();
        let right = b.mul(&lr).unwrap().mul_var_power(k, dr - db);
        r = left.sub(&right).unwrap();
        steps += 1;
    }
    for _ in steps..e {
        r = r.mul(&lcb).unwrap();
    }
    r
}

/// Content of `f` with respect to variable `k`: gcd of the coefficient forms.
fn content_wrt(f: &HomogeneousForm, k: usize) -> HomogeneousForm {
    let d = f.degree_in(k);
    let mut acc: Option<HomogeneousForm> = None;
    for j in 0..=d {
        let c = f.coeff_of_power(k, j);
        if c.is_zero() {
            continue;
        }
        acc = Some(match acc {
            None => c,
            Some(a) => gcd(&a, &c),
        });
        if let Some(a) = &acc {
            if a.is_constant() {
                break;
            }
        }
    }
    acc.unwrap_or_else(|| HomogeneousForm::one(f.nvars()))
}

fn main_variable(f: &HomogeneousForm, g: &HomogeneousForm) -> Option<usize> {
    for k in (0..f.nvars()).rev() {
        if f.degree_in(k) > 0 || g.degree_in(k) > 0 {
            return Some(k);
        }
    }
    None
}

/// Gcd of two forms, normalized to have leading coefficient one.
/// The gcd of homogeneous forms is homogeneous, so the whole recursion
/// stays inside `HomogeneousForm`.
pub fn gcd(f: &HomogeneousForm, g: &HomogeneousForm) -> HomogeneousForm {
    assert_eq!(f.nvars(), g.nvars());
    if f.is_zero() {
        return g.normalize_monic();
    }
    if g.is_zero() {
        return f.normalize_monic();
    }
    if f.is_constant() || g.is_constant() {
        return HomogeneousForm::one(f.nvars());
    }
    let k = match main_variable(f, g) {
        Some(k) => k,
        None => return HomogeneousForm::one(f.nvars()),
    };
    let df = f.degree_in(k);
    let dg = g.degree_in(k);
    if df == 0 {
        return gcd(f, &content_wrt(g, k));
    }
    if dg == 0 {
        return gcd(&content_wrt(f, k), g);
    }
    let cf = content_wrt(f, k);
    let cg = content_wrt(g, k);
    let c = gcd(&cf, &cg);
    let fp = div_exact(f, &cf).expect("content divides");
    let gp = div_exact(g, &cg).expect("content divides");
    let pp = subresultant_prs(&fp, &gp, k);
    let pp = match div_exact(&pp, &content_wrt(&pp, k)) {
        Some(p) => p,
        None => pp,
    };
    c.mul(&pp).unwrap().normalize_monic()
}

/// Last nonzero member of the subresultant pseudo-remainder sequence of
/// primitive inputs, which contains the gcd of the primitive parts.
fn subresultant_prs(
    fp: &HomogeneousForm,
    gp: &HomogeneousForm,
    k: usize,
) -> HomogeneousForm {
    let (mut a, mut b) = if fp.degree_in(k) >= gp.degree_in(k) {
        (fp.clone(), gp.clone())
    } else {
        (gp.clone(), fp.clone())
    };
    let n = a.nvars();
    let neg_one = HomogeneousForm::one(n).neg();
    let mut delta = a.degree_in(k) - b.degree_in(k);
    let mut beta = if delta % 2 == 0 {
        neg_one.clone()
    } else {
        HomogeneousForm::one(n)
    }; // (-1)^(delta+1)
    let mut psi = neg_one.clone();
    loop {
        let r = prem(&a, &b, k);
        if r.is_zero() {
            // b divides a up to content: gcd of primitive parts is pp(b)
            return b;
        }
        let r = div_exact(&r, &beta).expect("subresultant division is exact");
        let lc_prev = b.coeff_of_power(k, b.degree_in(k));
        a = b;
        b = r;
        if b.degree_in(k) == 0 {
            // coprime in x_k: gcd of primitive parts is trivial
            return HomogeneousForm::one(n);
        }
        // psi <- (-lc_prev)^delta / psi^(delta-1)
        let neg_lc = lc_prev.neg();
        psi = match delta {
            0 => psi,
            1 => neg_lc.clone(),
            _ => {
                let num = neg_lc.pow(delta);
                let den = psi.pow(delta - 1);
                div_exact(&num, &den).expect("psi division is exact")
            }
        };
        delta = a.degree_in(k) - b.degree_in(k);
        beta = neg_lc_mul_psi_pow(&lc_prev, &psi, delta);
    }
}

fn neg_lc_mul_psi_pow(
    lc: &HomogeneousForm,
    psi: &HomogeneousForm,
    delta: usize,
) -> HomogeneousForm {
    lc.neg().mul(&psi.pow(delta)).unwrap()
}

/// True iff the gcd of the two nonzero forms is a constant.
pub fn coprime_test(a: &HomogeneousForm, b: &HomogeneousForm) -> Result<bool> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroInput("coprime_test requires nonzero forms"));
    }
    if a.nvars() != b.nvars() {
        return Err(Error::ArityMismatch(a.nvars(), b.nvars()));
    }
    Ok(gcd(a, b).is_constant())
}

/// Gcd of all nonzero entries of a tuple.
pub fn common_factor(tuple: &FormTuple) -> HomogeneousForm {
    let mut acc: Option<HomogeneousForm> = None;
    for f in tuple.forms() {
        if f.is_zero() {
            continue;
        }
        acc = Some(match acc {
            None => f.normalize_monic(),
            Some(a) => gcd(&a, f),
        });
        if let Some(a) = &acc {
            if a.is_constant() {
                break;
            }
        }
    }
    acc.unwrap_or_else(|| HomogeneousForm::one(tuple.nvars()))
}

/// Split a tuple into its exact common factor and the reduced tuple.
pub fn remove_common_factor(tuple: &FormTuple) -> (HomogeneousForm, FormTuple) {
    let h = common_factor(tuple);
    if h.is_constant() {
        return (HomogeneousForm::one(tuple.nvars()), tuple.clone());
    }
    let forms = tuple
        .forms()
        .iter()
        .map(|f| {
            if f.is_zero() {
                HomogeneousForm::zero(f.nvars(), f.degree() - h.degree())
            } else {
                div_exact(f, &h).expect("common factor divides")
            }
        })
        .collect();
    (h, FormTuple::new(forms).expect("reduced tuple nonzero"))
}
