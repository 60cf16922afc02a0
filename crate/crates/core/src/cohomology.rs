//! Loday-Pirashvili cohomology and the cohomology of an embedding tensor.
//!
//! Cochains: `c^0 = 0`, `c^1 = g`, `c^n = Hom(⊗^{n-1} h, g)`. A cochain of
//! degree `n` is stored as a [`MultiMap`] of arity `n - 1`, so its flat
//! coefficient vector is its coordinate vector in the lex monomial basis.

use serde::{Serialize, Serializer};

use crate::algebra::LeibnizRep;
use crate::error::{Error, Result};
use crate::graded::{MultiMap, Slot, DEFAULT_ARITY_CAP};
use crate::linalg::{add_vectors, axpy, is_zero_vector, sub_vectors, unit_vector, zero_vector, Matrix, Subspace, Vector};
use crate::rational::Rational;
use crate::tensor::{descendent, TensorMap};

pub const DEFAULT_MAX_DEGREE: usize = 4;

/// Size limits for cochain computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_degree: usize,
    pub arity_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_degree: DEFAULT_MAX_DEGREE,
            arity_cap: DEFAULT_ARITY_CAP,
        }
    }
}

/// `ρ^L(u)y = [Tu, y]` and `ρ^R(v)x = [x, Tv] - T(ρ(x)v)` over the descendent algebra.
pub fn induced_rep(t: &TensorMap) -> Result<LeibnizRep> {
    let algebra = descendent(t)?;
    let g = t.g();
    let (dg, dh) = (g.dim(), t.h().dim());
    let rho_l = (0..dh).map(|u| g.left_multiplication(&t.image_of_basis(u))).collect();
    let rho_r = (0..dh)
        .map(|v| {
            let cols: Vec<Vector> = (0..dg)
                .map(|x| {
                    let ex = unit_vector(dg, x);
                    let acted = t.action().act(&ex, &unit_vector(dh, v));
                    sub_vectors(&g.bracket(&ex, &t.image_of_basis(v)), &t.apply(&acted))
                })
                .collect();
            Matrix::from_columns(&cols, dg).expect("square")
        })
        .collect();
    LeibnizRep::new(algebra, dg, rho_l, rho_r)
}

fn sign(k: usize) -> Rational {
    Rational::sign(k)
}

fn check_cochain(f: &MultiMap, domain: usize, codomain: usize) -> Result<()> {
    if f.domain_dim() != domain || f.codomain_dim() != codomain {
        return Err(Error::DimensionMismatch(format!(
            "cochain {} → {} does not match {domain} → {codomain}",
            f.domain_dim(),
            f.codomain_dim()
        )));
    }
    Ok(())
}

/// Slots for `f(x_1, …, x̂_i, …, x_{j-1}, w, x_{j+1}, …)`.
fn bracket_slots<'a>(x: &[usize], i: usize, j: usize, w: &'a [Rational]) -> Vec<Slot<'a>> {
    (0..x.len())
        .filter(|&p| p != i)
        .map(|p| if p == j { Slot::Vector(w) } else { Slot::Basis(x[p]) })
        .collect()
}

fn omit(x: &[usize], i: usize) -> Vec<Slot<'static>> {
    x.iter()
        .enumerate()
        .filter(|&(p, _)| p != i)
        .map(|(_, &a)| Slot::Basis(a))
        .collect()
}

/// The Loday-Pirashvili coboundary of `f ∈ Hom(⊗^k L, V)`.
pub fn lp_coboundary(rep: &LeibnizRep, f: &MultiMap) -> Result<MultiMap> {
    let a = &rep.algebra;
    check_cochain(f, a.dim(), rep.rep_dim)?;
    let k = f.arity();
    Ok(MultiMap::from_fn(k + 1, a.dim(), rep.rep_dim, |x| {
        let mut out = zero_vector(rep.rep_dim);
        for i in 0..k {
            let val = f.eval_slots(&omit(x, i));
            axpy(&mut out, &sign(i), &rep.rho_l[x[i]].apply(&val));
        }
        let head = f.eval_slots(&omit(x, k));
        axpy(&mut out, &sign(k + 1), &rep.rho_r[x[k]].apply(&head));
        for i in 0..=k {
            for j in i + 1..=k {
                let br = a.bracket_basis(x[i], x[j]);
                if !is_zero_vector(br) {
                    axpy(&mut out, &sign(i + 1), &f.eval_slots(&bracket_slots(x, i, j, br)));
                }
            }
        }
        out
    }))
}

/// `∂_T θ` for `θ ∈ Hom(⊗^k h, g)`, any `k ≥ 0`.
pub fn partial_t(t: &TensorMap, theta: &MultiMap) -> Result<MultiMap> {
    t.require_net()?;
    partial_t_unchecked(t, theta)
}

fn partial_t_unchecked(t: &TensorMap, theta: &MultiMap) -> Result<MultiMap> {
    let g = t.g();
    let h = t.h();
    let (dg, dh) = (g.dim(), h.dim());
    check_cochain(theta, dh, dg)?;
    let k = theta.arity();
    let images: Vec<Vector> = (0..dh).map(|u| t.image_of_basis(u)).collect();
    // ρ(Tu_i)u_j + [u_i, u_j]
    let desc: Vec<Vector> = (0..dh * dh)
        .map(|p| {
            let (i, j) = (p / dh, p % dh);
            add_vectors(&t.action().act(&images[i], &unit_vector(dh, j)), h.bracket_basis(i, j))
        })
        .collect();
    Ok(MultiMap::from_fn(k + 1, dh, dg, |u| {
        let mut out = zero_vector(dg);
        for i in 0..k {
            let val = theta.eval_slots(&omit(u, i));
            if !is_zero_vector(&val) {
                axpy(&mut out, &sign(i), &g.bracket(&images[u[i]], &val));
            }
        }
        let head = theta.eval_slots(&omit(u, k));
        if !is_zero_vector(&head) {
            axpy(&mut out, &sign(k + 1), &g.bracket(&head, &images[u[k]]));
            let acted = t.action().act(&head, &unit_vector(dh, u[k]));
            axpy(&mut out, &sign(k), &t.apply(&acted));
        }
        for i in 0..=k {
            for j in i + 1..=k {
                let w = &desc[u[i] * dh + u[j]];
                if !is_zero_vector(w) {
                    axpy(&mut out, &sign(i + 1), &theta.eval_slots(&bracket_slots(u, i, j, w)));
                }
            }
        }
        out
    }))
}

/// `(∂_T x)(u) = Tρ(x)u - [x, Tu]` for `x ∈ g`, as an arity-1 map.
pub fn partial_t_degree_one(t: &TensorMap, x: &[Rational]) -> Result<MultiMap> {
    t.require_net()?;
    let dh = t.h().dim();
    if x.len() != t.g().dim() {
        return Err(Error::DimensionMismatch(format!("element has {} coordinates", x.len())));
    }
    Ok(MultiMap::from_fn(1, dh, t.g().dim(), |u| {
        let eu = unit_vector(dh, u[0]);
        sub_vectors(&t.apply(&t.action().act(x, &eu)), &t.g().bracket(x, &t.image_of_basis(u[0])))
    }))
}

/// Dimension of `c^k(T)`.
pub fn cochain_dim(t: &TensorMap, k: usize) -> usize {
    if k == 0 {
        0
    } else {
        t.g().dim() * t.h().dim().pow((k - 1) as u32)
    }
}

fn check_degree(k: usize, limits: Limits) -> Result<()> {
    if k > limits.max_degree {
        return Err(Error::DegreeOutOfRange {
            degree: k,
            max: limits.max_degree,
        });
    }
    if k > limits.arity_cap {
        return Err(Error::ArityCapExceeded {
            arity: k,
            cap: limits.arity_cap,
        });
    }
    Ok(())
}

/// Matrix of `∂_T: c^k → c^{k+1}` in the monomial bases.
pub fn differential(t: &TensorMap, k: usize, limits: Limits) -> Result<Matrix> {
    t.require_net()?;
    check_degree(k, limits)?;
    let (dg, dh) = (t.g().dim(), t.h().dim());
    let rows = cochain_dim(t, k + 1);
    if k == 0 {
        return Ok(Matrix::zeros(rows, 0));
    }
    let cols = cochain_dim(t, k);
    let mut columns = Vec::with_capacity(cols);
    for p in 0..cols {
        let unit = MultiMap::new(k - 1, dh, dg, unit_vector(cols, p))?;
        columns.push(partial_t_unchecked(t, &unit)?.coeffs().to_vec());
    }
    Matrix::from_columns(&columns, rows)
}

/// The cochain complex `(c^•(T), ∂_T)` up to `max_degree`.
#[derive(Clone, Debug)]
pub struct NetComplex {
    tensor: TensorMap,
    max_degree: usize,
    /// Entry `k` is `∂_T: c^k → c^{k+1}`.
    differentials: Vec<Matrix>,
}

impl NetComplex {
    pub fn new(t: &TensorMap, limits: Limits) -> Result<Self> {
        let differentials = (0..=limits.max_degree)
            .map(|k| differential(t, k, limits))
            .collect::<Result<_>>()?;
        Ok(NetComplex {
            tensor: t.clone(),
            max_degree: limits.max_degree,
            differentials,
        })
    }

    pub fn tensor(&self) -> &TensorMap {
        &self.tensor
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn differentials(&self) -> &[Matrix] {
        &self.differentials
    }

    /// Products `∂_{k+1} ∂_k` that are nonzero, by `k`.
    pub fn square_defects(&self) -> Vec<usize> {
        self.differentials
            .windows(2)
            .enumerate()
            .filter(|(_, w)| !w[1].mul(&w[0]).is_zero())
            .map(|(k, _)| k)
            .collect()
    }

    pub fn cohomology(&self, k: usize) -> Result<CohomologyReport> {
        if k == 0 || k > self.max_degree {
            return Err(Error::DegreeOutOfRange {
                degree: k,
                max: self.max_degree,
            });
        }
        Ok(CohomologyReport::from_matrices(k, &self.differentials[k], &self.differentials[k - 1]))
    }
}

fn serialize_basis<S: Serializer>(s: &Subspace, ser: S) -> std::result::Result<S::Ok, S::Error> {
    s.basis().serialize(ser)
}

/// Dimensions and bases of `Z^k`, `B^k` and `H^k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CohomologyReport {
    pub degree: usize,
    #[serde(rename = "dimZ")]
    pub dim_z: usize,
    #[serde(rename = "dimB")]
    pub dim_b: usize,
    #[serde(rename = "dimH")]
    pub dim_h: usize,
    #[serde(serialize_with = "serialize_basis")]
    pub cocycle_basis: Subspace,
    #[serde(serialize_with = "serialize_basis")]
    pub coboundary_basis: Subspace,
}

impl CohomologyReport {
    fn from_matrices(k: usize, outgoing: &Matrix, incoming: &Matrix) -> Self {
        let cocycles = outgoing.kernel();
        let coboundaries = incoming.image();
        debug_assert!(cocycles.contains_subspace(&coboundaries));
        CohomologyReport {
            degree: k,
            dim_z: cocycles.dim(),
            dim_b: coboundaries.dim(),
            dim_h: cocycles.dim() - coboundaries.dim(),
            cocycle_basis: cocycles,
            coboundary_basis: coboundaries,
        }
    }
}

/// `Z^k(T)`, `B^k(T)` and `H^k(T)` for `1 ≤ k ≤ max_degree`.
pub fn cohomology(t: &TensorMap, k: usize, limits: Limits) -> Result<CohomologyReport> {
    if k == 0 || k > limits.max_degree {
        return Err(Error::DegreeOutOfRange {
            degree: k,
            max: limits.max_degree,
        });
    }
    let outgoing = differential(t, k, limits)?;
    let incoming = differential(t, k - 1, limits)?;
    Ok(CohomologyReport::from_matrices(k, &outgoing, &incoming))
}

/// Whether two degree-`k` cocycles differ by a coboundary.
pub fn class_equals(t: &TensorMap, f: &MultiMap, g: &MultiMap, k: usize, limits: Limits) -> Result<bool> {
    if k == 0 {
        return Err(Error::DegreeOutOfRange {
            degree: k,
            max: limits.max_degree,
        });
    }
    check_degree(k, limits)?;
    for (name, c) in [("first", f), ("second", g)] {
        if c.arity() + 1 != k {
            return Err(Error::DimensionMismatch(format!(
                "{name} cochain has arity {}, degree {k} needs arity {}",
                c.arity(),
                k - 1
            )));
        }
        if !partial_t(t, c)?.is_zero() {
            return Err(Error::NotACocycle(format!("{name} cochain")));
        }
    }
    let diff = f.sub(g)?;
    let incoming = differential(t, k - 1, limits)?;
    Ok(incoming.image().contains(diff.coeffs()))
}
