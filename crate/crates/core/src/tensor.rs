//! Coherent actions and nonabelian embedding tensors.
//!
//! A coherent action of a Lie algebra `g` on a Lie algebra `h` is a Lie
//! homomorphism `ρ: g → Der(h)` with `[ρ(x)u, v] = 0`. A nonabelian
//! embedding tensor is a linear `T: h → g` with
//! `[Tu, Tv] = T(ρ(Tu)v + [u, v])`.

use std::sync::OnceLock;

use serde::Serialize;

use crate::algebra::{check_homomorphism, check_lie, coherent_derivation_lie_algebra, Algebra, Flavor, MatrixLieAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{add_vectors, axpy, sub_vectors, unit_vector, zero_vector, Matrix, Subspace, Vector};
use crate::rational::Rational;
use crate::report::Report;

/// A candidate action `ρ: g → gl(h)` given on the basis of `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionMap {
    source: Algebra,
    target: Algebra,
    rho: Vec<Matrix>,
}

impl ActionMap {
    pub fn new(source: Algebra, target: Algebra, rho: Vec<Matrix>) -> Result<Self> {
        let dh = target.dim();
        if rho.len() != source.dim() || rho.iter().any(|m| m.rows() != dh || m.cols() != dh) {
            return Err(Error::DimensionMismatch(format!(
                "action of {} on {} needs {} matrices of shape {dh}x{dh}",
                source.name(),
                target.name(),
                source.dim()
            )));
        }
        Ok(ActionMap { source, target, rho })
    }

    /// `ad: g → gl(g)`.
    pub fn adjoint(g: &Algebra) -> Self {
        let rho = (0..g.dim()).map(|i| g.ad_basis(i)).collect();
        ActionMap {
            source: g.clone(),
            target: g.clone(),
            rho,
        }
    }

    pub fn zero(g: &Algebra, h: &Algebra) -> Self {
        ActionMap {
            source: g.clone(),
            target: h.clone(),
            rho: vec![Matrix::zeros(h.dim(), h.dim()); g.dim()],
        }
    }

    pub fn source(&self) -> &Algebra {
        &self.source
    }

    pub fn target(&self) -> &Algebra {
        &self.target
    }

    pub fn rho_basis(&self) -> &[Matrix] {
        &self.rho
    }

    /// `ρ(x)` for an arbitrary `x ∈ g`.
    pub fn rho(&self, x: &[Rational]) -> Matrix {
        let d = self.target.dim();
        let mut out = Matrix::zeros(d, d);
        for (m, c) in self.rho.iter().zip(x) {
            if !c.is_zero() {
                out = out.add(&m.scale(c));
            }
        }
        out
    }

    /// `ρ(x)v`
    pub fn act(&self, x: &[Rational], v: &[Rational]) -> Vector {
        let mut out = zero_vector(self.target.dim());
        for (m, c) in self.rho.iter().zip(x) {
            if !c.is_zero() {
                axpy(&mut out, c, &m.apply(v));
            }
        }
        out
    }

    /// `[x + u, y + v]_ρ = [x, y]_g + ρ(x)v + [u, v]_h` on `g ⊕ h`
    /// (coordinates of `g` first).
    pub fn semidirect_bracket(&self, a: &[Rational], b: &[Rational]) -> Vector {
        let dg = self.source.dim();
        let (x, u) = a.split_at(dg);
        let (y, v) = b.split_at(dg);
        let mut out = self.source.bracket(x, y);
        out.extend(add_vectors(&self.act(x, v), &self.target.bracket(u, v)));
        out
    }
}

impl Serialize for ActionMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Json<'a> {
            source: &'a str,
            target: &'a str,
            rho: &'a [Matrix],
        }
        Json {
            source: self.source.name(),
            target: self.target.name(),
            rho: &self.rho,
        }
        .serialize(s)
    }
}

/// Derivation property, Lie homomorphism into `gl(h)`, and coherence
/// `[ρ(e_i)e_j, e_k] = 0`, together with the Lie axioms of both algebras.
pub fn check_coherent_action(a: &ActionMap) -> Report {
    let (g, h) = (&a.source, &a.target);
    let mut report = Report::new("coherent-action");
    report.absorb("source.", check_lie(g));
    report.absorb("target.", check_lie(h));
    for i in 0..g.dim() {
        let r = &a.rho[i];
        for j in 0..h.dim() {
            for k in 0..h.dim() {
                let lhs = r.apply(h.bracket_basis(j, k));
                let mut rhs = h.bracket_right_basis(&r.column(j), k);
                axpy(&mut rhs, &Rational::one(), &h.bracket_left_basis(j, &r.column(k)));
                report.expect_zero("derivation", &[i, j, k], sub_vectors(&lhs, &rhs));
            }
        }
    }
    for i in 0..g.dim() {
        for j in 0..g.dim() {
            let res = a.rho(g.bracket_basis(i, j)).sub(&a.rho[i].commutator(&a.rho[j]));
            report.expect_zero("homomorphism", &[i, j], res.to_flat());
        }
    }
    for i in 0..g.dim() {
        for j in 0..h.dim() {
            let moved = a.rho[i].column(j);
            for k in 0..h.dim() {
                report.expect_zero("coherence", &[i, j, k], h.bracket_right_basis(&moved, k));
            }
        }
    }
    report
}

/// A candidate nonabelian embedding tensor: `matrix` is `dim g x dim h`,
/// column `j` holding `T e_j`.
#[derive(Debug)]
pub struct TensorMap {
    action: ActionMap,
    matrix: Matrix,
    verified: OnceLock<bool>,
}

impl Clone for TensorMap {
    fn clone(&self) -> Self {
        TensorMap {
            action: self.action.clone(),
            matrix: self.matrix.clone(),
            verified: self.verified.clone(),
        }
    }
}

impl PartialEq for TensorMap {
    fn eq(&self, other: &Self) -> bool {
        self.action == other.action && self.matrix == other.matrix
    }
}

impl TensorMap {
    pub fn new(action: ActionMap, matrix: Matrix) -> Result<Self> {
        let (dg, dh) = (action.source.dim(), action.target.dim());
        if matrix.rows() != dg || matrix.cols() != dh {
            return Err(Error::DimensionMismatch(format!(
                "tensor on {} needs a {dg}x{dh} matrix, got {}x{}",
                action.source.name(),
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(TensorMap {
            action,
            matrix,
            verified: OnceLock::new(),
        })
    }

    pub fn zero(action: ActionMap) -> Self {
        let m = Matrix::zeros(action.source.dim(), action.target.dim());
        TensorMap::new(action, m).expect("shape")
    }

    pub fn action(&self) -> &ActionMap {
        &self.action
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn g(&self) -> &Algebra {
        &self.action.source
    }

    pub fn h(&self) -> &Algebra {
        &self.action.target
    }

    pub fn apply(&self, u: &[Rational]) -> Vector {
        self.matrix.apply(u)
    }

    /// `T e_j`
    pub fn image_of_basis(&self, j: usize) -> Vector {
        self.matrix.column(j)
    }

    /// Same action, different matrix.
    pub fn with_matrix(&self, matrix: Matrix) -> Result<TensorMap> {
        TensorMap::new(self.action.clone(), matrix)
    }

    /// Whether the tensor equation holds; computed once per value.
    pub fn is_net(&self) -> bool {
        *self.verified.get_or_init(|| check_net(self).passed())
    }

    pub(crate) fn require_net(&self) -> Result<()> {
        if self.is_net() {
            Ok(())
        } else {
            let r = check_net(self);
            let v = r.first_violation().expect("failing report");
            Err(Error::NotAnEmbeddingTensor(format!(
                "residual nonzero on basis pair {:?}",
                v.indices
            )))
        }
    }
}

impl Serialize for TensorMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.matrix.serialize(s)
    }
}

/// `[Te_i, Te_j]_g - T(ρ(Te_i)e_j + [e_i, e_j]_h)`
pub fn net_residual(t: &TensorMap, i: usize, j: usize) -> Vector {
    let (ti, tj) = (t.image_of_basis(i), t.image_of_basis(j));
    let lhs = t.g().bracket(&ti, &tj);
    let inner = add_vectors(
        &t.action.act(&ti, &unit_vector(t.h().dim(), j)),
        t.h().bracket_basis(i, j),
    );
    sub_vectors(&lhs, &t.apply(&inner))
}

/// The tensor equation on every ordered basis pair; all nonzero residuals are reported.
pub fn check_net(t: &TensorMap) -> Report {
    let n = t.h().dim();
    let mut report = Report::new("net");
    for i in 0..n {
        for j in 0..n {
            report.expect_zero("net", &[i, j], net_residual(t, i, j));
        }
    }
    report
}

/// Homomorphism `(φ_g, φ_h)` from `source` (T′) to `target` (T):
/// both are Lie endomorphisms, `T ∘ φ_h = φ_g ∘ T′`, and
/// `φ_h ρ(x)u = ρ(φ_g x) φ_h u`.
pub fn check_net_homomorphism(
    target: &TensorMap,
    source: &TensorMap,
    phi_g: &Matrix,
    phi_h: &Matrix,
) -> Result<Report> {
    if target.action != source.action {
        return Err(Error::DimensionMismatch(
            "both tensors must share the same action".into(),
        ));
    }
    let (g, h) = (target.g(), target.h());
    let mut report = Report::new("net-homomorphism");
    report.absorb("phi_g.", check_homomorphism(g, g, phi_g)?);
    report.absorb("phi_h.", check_homomorphism(h, h, phi_h)?);
    let lhs = target.matrix.mul(phi_h);
    let rhs = phi_g.mul(&source.matrix);
    for j in 0..h.dim() {
        report.expect_zero("intertwine", &[j], sub_vectors(&lhs.column(j), &rhs.column(j)));
    }
    for i in 0..g.dim() {
        let moved = target.action.rho(&phi_g.column(i));
        for u in 0..h.dim() {
            let a = phi_h.apply(&target.action.rho[i].column(u));
            let b = moved.apply(&phi_h.column(u));
            report.expect_zero("equivariance", &[i, u], sub_vectors(&a, &b));
        }
    }
    Ok(report)
}

/// The Leibniz algebra `g ⋉ h` with bracket `[x,y]_g + ρ(x)v + [u,v]_h`.
pub fn hemisemidirect(a: &ActionMap) -> Result<Algebra> {
    let (dg, dh) = (a.source.dim(), a.target.dim());
    let n = dg + dh;
    Algebra::from_fn(
        format!("{}⋉{}", a.source.name(), a.target.name()),
        n,
        Flavor::Leibniz,
        |i, j| a.semidirect_bracket(&unit_vector(n, i), &unit_vector(n, j)),
    )
}

/// Basis of the graph `{Tu + u}` inside `g ⊕ h`.
pub fn graph_subspace(t: &TensorMap) -> Subspace {
    let vs: Vec<Vector> = (0..t.h().dim())
        .map(|k| graph_vector(t, k))
        .collect();
    Subspace::span(t.g().dim() + t.h().dim(), &vs)
}

fn graph_vector(t: &TensorMap, k: usize) -> Vector {
    let mut w = t.image_of_basis(k);
    w.extend(unit_vector(t.h().dim(), k));
    w
}

/// Closure of the graph under the hemisemidirect bracket; the residual is the
/// component of `[Te_i + e_i, Te_j + e_j]_ρ` outside the graph.
pub fn graph_subalgebra_check(t: &TensorMap) -> Report {
    let graph = graph_subspace(t);
    let n = t.h().dim();
    let mut report = Report::new("graph-subalgebra");
    let ws: Vec<Vector> = (0..n).map(|k| graph_vector(t, k)).collect();
    for i in 0..n {
        for j in 0..n {
            let b = t.action.semidirect_bracket(&ws[i], &ws[j]);
            report.expect_zero("graph-closure", &[i, j], graph.reduce(&b));
        }
    }
    report
}

/// `[u, v]_T = ρ(Tu)v + [u, v]_h`, without checking the tensor equation.
pub(crate) fn descendent_unchecked(t: &TensorMap, flavor: Flavor) -> Result<Algebra> {
    let h = t.h();
    let n = h.dim();
    Algebra::from_fn(format!("{}_T", h.name()), n, flavor, |i, j| {
        add_vectors(
            &t.action.act(&t.image_of_basis(i), &unit_vector(n, j)),
            h.bracket_basis(i, j),
        )
    })
}

/// The descendent Leibniz algebra `(h, [-,-]_T)` of a verified tensor.
pub fn descendent(t: &TensorMap) -> Result<Algebra> {
    t.require_net()?;
    descendent_unchecked(t, Flavor::Leibniz)
}

/// Direct-sum Lie algebra `a ⊕ b`, basis of `a` first.
pub fn direct_sum(a: &Algebra, b: &Algebra) -> Result<Algebra> {
    let (da, db) = (a.dim(), b.dim());
    let flavor = if a.flavor() == Flavor::Lie && b.flavor() == Flavor::Lie {
        Flavor::Lie
    } else {
        Flavor::Unchecked
    };
    Algebra::from_fn(format!("{}⊕{}", a.name(), b.name()), da + db, flavor, |i, j| {
        let mut out = zero_vector(da + db);
        if i < da && j < da {
            out[..da].clone_from_slice(a.bracket_basis(i, j));
        } else if i >= da && j >= da {
            out[da..].clone_from_slice(b.bracket_basis(i - da, j - da));
        }
        out
    })
}

/// The tautological action of `Der̄(h)` on `h`.
pub fn natural_action(h: &Algebra) -> Result<(MatrixLieAlgebra, ActionMap)> {
    let der = coherent_derivation_lie_algebra(h)?;
    let action = ActionMap::new(der.algebra.clone(), h.clone(), der.matrices.clone())?;
    Ok((der, action))
}

/// The projection `Der̄(h) ⊕ h → Der̄(h)` as a tensor on `Der̄(h)` with
/// respect to `ρ(A)(B + v) = Av`.
pub fn projection_net(h: &Algebra) -> Result<TensorMap> {
    let der = coherent_derivation_lie_algebra(h)?;
    let d = der.algebra.dim();
    let n = h.dim();
    let sum = direct_sum(&der.algebra, h)?;
    let rho: Vec<Matrix> = der
        .matrices
        .iter()
        .map(|m| {
            let mut big = Matrix::zeros(d + n, d + n);
            for r in 0..n {
                for c in 0..n {
                    big[(d + r, d + c)] = m[(r, c)].clone();
                }
            }
            big
        })
        .collect();
    let action = ActionMap::new(der.algebra.clone(), sum, rho)?;
    let mut pr = Matrix::zeros(d, d + n);
    for i in 0..d {
        pr[(i, i)] = Rational::one();
    }
    TensorMap::new(action, pr)
}
