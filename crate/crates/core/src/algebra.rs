//! Finite-dimensional algebras given by structure constants.
//!
//! An [`Algebra`] stores, for every ordered pair of basis vectors, the
//! coordinates of `[e_i, e_j]`. Lie and Leibniz flavors are tags that are
//! verified at construction time; they are never assumed.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{axpy, is_zero_vector, sub_vectors, unit_vector, zero_vector, Matrix, Subspace, Vector};
use crate::rational::Rational;
use crate::report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Lie,
    Leibniz,
    Unchecked,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Lie => "lie",
            Flavor::Leibniz => "leibniz",
            Flavor::Unchecked => "unchecked",
        })
    }
}

/// Bilinear algebra on `Q^dim` given by structure constants.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Algebra {
    name: String,
    dim: usize,
    // entry i * dim + j holds the coordinates of [e_i, e_j]
    table: Vec<Vector>,
    flavor: Flavor,
}

impl Algebra {
    /// Builds an algebra from a full `dim x dim` table and verifies the
    /// declared flavor.
    pub fn new(name: impl Into<String>, dim: usize, sc: Vec<Vec<Vector>>, flavor: Flavor) -> Result<Self> {
        let name = name.into();
        if sc.len() != dim || sc.iter().any(|row| row.len() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "{name}: structure-constant table must be {dim}x{dim}"
            )));
        }
        let table: Vec<Vector> = sc.into_iter().flatten().collect();
        if table.iter().any(|v| v.len() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "{name}: every bracket needs {dim} coordinates"
            )));
        }
        let a = Algebra {
            name,
            dim,
            table,
            flavor,
        };
        a.verify_flavor()?;
        Ok(a)
    }

    pub fn from_fn(
        name: impl Into<String>,
        dim: usize,
        flavor: Flavor,
        mut f: impl FnMut(usize, usize) -> Vector,
    ) -> Result<Self> {
        let sc = (0..dim)
            .map(|i| (0..dim).map(|j| f(i, j)).collect())
            .collect();
        Self::new(name, dim, sc, flavor)
    }

    /// Sparse constructor: unlisted brackets are zero. With `antisymmetric`
    /// set, each listed `[e_i, e_j] = v` also sets `[e_j, e_i] = -v`.
    pub fn from_brackets(
        name: impl Into<String>,
        dim: usize,
        flavor: Flavor,
        brackets: &[(usize, usize, Vector)],
        antisymmetric: bool,
    ) -> Result<Self> {
        let mut sc = vec![vec![zero_vector(dim); dim]; dim];
        for (i, j, v) in brackets {
            if *i >= dim || *j >= dim || v.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "bracket ({i},{j}) out of range for dimension {dim}"
                )));
            }
            sc[*i][*j] = v.clone();
            if antisymmetric && i != j {
                sc[*j][*i] = v.iter().map(|x| -x).collect();
            }
        }
        Self::new(name, dim, sc, flavor)
    }

    pub fn abelian(name: impl Into<String>, dim: usize) -> Self {
        Self::from_fn(name, dim, Flavor::Lie, |_, _| zero_vector(dim)).expect("abelian algebra")
    }

    fn verify_flavor(&self) -> Result<()> {
        let report = match self.flavor {
            Flavor::Lie => check_lie(self),
            Flavor::Leibniz => check_leibniz(self),
            Flavor::Unchecked => return Ok(()),
        };
        if report.passed() {
            Ok(())
        } else {
            let v = report.first_violation().expect("failing report has a violation");
            Err(Error::FlavorViolation {
                name: self.name.clone(),
                flavor: self.flavor.to_string(),
                detail: format!("{} fails on basis tuple {:?}", v.law, v.indices),
            })
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    /// Re-tags the algebra, verifying the new flavor.
    pub fn with_flavor(mut self, flavor: Flavor) -> Result<Self> {
        self.flavor = flavor;
        self.verify_flavor()?;
        Ok(self)
    }

    /// Coordinates of `[e_i, e_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &Vector {
        &self.table[i * self.dim + j]
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vector {
        let mut out = zero_vector(self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                axpy(&mut out, &(xi * yj), self.bracket_basis(i, j));
            }
        }
        out
    }

    /// `[e_i, v]`
    pub fn bracket_left_basis(&self, i: usize, v: &[Rational]) -> Vector {
        let mut out = zero_vector(self.dim);
        for (j, c) in v.iter().enumerate() {
            axpy(&mut out, c, self.bracket_basis(i, j));
        }
        out
    }

    /// `[v, e_j]`
    pub fn bracket_right_basis(&self, v: &[Rational], j: usize) -> Vector {
        let mut out = zero_vector(self.dim);
        for (i, c) in v.iter().enumerate() {
            axpy(&mut out, c, self.bracket_basis(i, j));
        }
        out
    }

    /// Matrix of `y ↦ [x, y]`.
    pub fn left_multiplication(&self, x: &[Rational]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim)
            .map(|j| self.bracket_right_basis(x, j))
            .collect();
        Matrix::from_columns(&cols, self.dim).expect("square")
    }

    /// Matrix of `y ↦ [y, x]`.
    pub fn right_multiplication(&self, x: &[Rational]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim)
            .map(|i| self.bracket_left_basis(i, x))
            .collect();
        Matrix::from_columns(&cols, self.dim).expect("square")
    }

    /// `ad_{e_i}`
    pub fn ad_basis(&self, i: usize) -> Matrix {
        self.left_multiplication(&unit_vector(self.dim, i))
    }

    /// Equality of structure constants, ignoring name and flavor tag.
    pub fn same_structure(&self, other: &Algebra) -> bool {
        self.dim == other.dim && self.table == other.table
    }

    pub fn sc(&self) -> Vec<Vec<Vector>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.bracket_basis(i, j).clone()).collect())
            .collect()
    }

    /// The algebra transported along an invertible change of basis `phi`
    /// (columns are the new basis in old coordinates):
    /// `[x, y]' = phi^{-1} [phi x, phi y]`.
    pub fn transport(&self, phi: &Matrix) -> Result<Algebra> {
        let inv = phi
            .inverse()
            .ok_or_else(|| Error::DimensionMismatch("change of basis is singular".into()))?;
        let cols: Vec<Vector> = (0..self.dim).map(|j| phi.column(j)).collect();
        Algebra::from_fn(self.name.clone(), self.dim, self.flavor, |i, j| {
            inv.apply(&self.bracket(&cols[i], &cols[j]))
        })
    }
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Algebra {} (dim {}, {})", self.name, self.dim, self.flavor)?;
        for i in 0..self.dim {
            for j in 0..self.dim {
                let v = self.bracket_basis(i, j);
                if !is_zero_vector(v) {
                    let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                    writeln!(f, "  [e{i}, e{j}] = ({})", s.join(", "))?;
                }
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct AlgebraJson {
    name: String,
    dim: usize,
    flavor: Flavor,
    #[serde(default)]
    sc: Vec<Vec<Vector>>,
}

impl Serialize for Algebra {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        AlgebraJson {
            name: self.name.clone(),
            dim: self.dim,
            flavor: self.flavor,
            sc: self.sc(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Algebra {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = AlgebraJson::deserialize(d)?;
        Algebra::from_json_parts(raw.name, raw.dim, raw.sc, raw.flavor).map_err(serde::de::Error::custom)
    }
}

impl Algebra {
    /// Builds from possibly ragged JSON data: missing rows, missing entries
    /// and empty entries are zero brackets.
    pub fn from_json_parts(name: String, dim: usize, sc: Vec<Vec<Vector>>, flavor: Flavor) -> Result<Self> {
        if sc.len() > dim || sc.iter().any(|row| row.len() > dim) {
            return Err(Error::DimensionMismatch(format!(
                "{name}: structure-constant table larger than {dim}x{dim}"
            )));
        }
        let mut full = vec![vec![zero_vector(dim); dim]; dim];
        for (i, row) in sc.into_iter().enumerate() {
            for (j, v) in row.into_iter().enumerate() {
                if v.is_empty() {
                    continue;
                }
                if v.len() != dim {
                    return Err(Error::DimensionMismatch(format!(
                        "{name}: sc[{i}][{j}] has {} coordinates, expected {dim}",
                        v.len()
                    )));
                }
                full[i][j] = v;
            }
        }
        Algebra::new(name, dim, full, flavor)
    }
}

/// Antisymmetry on all basis pairs, then the Jacobi identity
/// `[x,[y,z]] + [y,[z,x]] + [z,[x,y]] = 0` on all basis triples.
pub fn check_lie(a: &Algebra) -> Report {
    let n = a.dim();
    let mut report = Report::new("lie");
    for i in 0..n {
        for j in i..n {
            let mut r = a.bracket_basis(i, j).clone();
            axpy(&mut r, &Rational::one(), a.bracket_basis(j, i));
            report.expect_zero("antisymmetry", &[i, j], r);
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut r = a.bracket_left_basis(i, a.bracket_basis(j, k));
                axpy(&mut r, &Rational::one(), &a.bracket_left_basis(j, a.bracket_basis(k, i)));
                axpy(&mut r, &Rational::one(), &a.bracket_left_basis(k, a.bracket_basis(i, j)));
                report.expect_zero("jacobi", &[i, j, k], r);
            }
        }
    }
    report
}

/// Residual of the Leibniz identity `[x,[y,z]] - [[x,y],z] - [y,[x,z]]` on basis vectors.
pub fn leibniz_residual(a: &Algebra, i: usize, j: usize, k: usize) -> Vector {
    let mut r = a.bracket_left_basis(i, a.bracket_basis(j, k));
    axpy(&mut r, &-Rational::one(), &a.bracket_right_basis(a.bracket_basis(i, j), k));
    axpy(&mut r, &-Rational::one(), &a.bracket_left_basis(j, a.bracket_basis(i, k)));
    r
}

pub fn check_leibniz(a: &Algebra) -> Report {
    let n = a.dim();
    let mut report = Report::new("leibniz");
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                report.expect_zero("leibniz", &[i, j, k], leibniz_residual(a, i, j, k));
            }
        }
    }
    report
}

/// `[[e_i, e_j], e_k] = 0` on all basis triples.
pub fn check_two_step_nilpotent(a: &Algebra) -> Report {
    let n = a.dim();
    let mut report = Report::new("two-step-nilpotent");
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                report.expect_zero(
                    "two-step",
                    &[i, j, k],
                    a.bracket_right_basis(a.bracket_basis(i, j), k),
                );
            }
        }
    }
    report
}

/// `phi [x, y]_src = [phi x, phi y]_dst` on basis pairs.
pub fn check_homomorphism(src: &Algebra, dst: &Algebra, phi: &Matrix) -> Result<Report> {
    if phi.rows() != dst.dim() || phi.cols() != src.dim() {
        return Err(Error::DimensionMismatch(format!(
            "homomorphism {}->{} needs a {}x{} matrix",
            src.name(),
            dst.name(),
            dst.dim(),
            src.dim()
        )));
    }
    let mut report = Report::new("homomorphism");
    let images: Vec<Vector> = (0..src.dim()).map(|j| phi.column(j)).collect();
    for i in 0..src.dim() {
        for j in 0..src.dim() {
            let lhs = phi.apply(src.bracket_basis(i, j));
            let rhs = dst.bracket(&images[i], &images[j]);
            report.expect_zero("bracket", &[i, j], sub_vectors(&lhs, &rhs));
        }
    }
    Ok(report)
}

/// Representation `(V; ρ^L, ρ^R)` of a Leibniz algebra, given per basis vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LeibnizRep {
    pub algebra: Algebra,
    pub rep_dim: usize,
    pub rho_l: Vec<Matrix>,
    pub rho_r: Vec<Matrix>,
}

impl LeibnizRep {
    pub fn new(algebra: Algebra, rep_dim: usize, rho_l: Vec<Matrix>, rho_r: Vec<Matrix>) -> Result<Self> {
        let n = algebra.dim();
        let ok = rho_l.len() == n
            && rho_r.len() == n
            && rho_l
                .iter()
                .chain(&rho_r)
                .all(|m| m.rows() == rep_dim && m.cols() == rep_dim);
        if !ok {
            return Err(Error::DimensionMismatch(format!(
                "representation of {} needs {n} left and {n} right {rep_dim}x{rep_dim} matrices",
                algebra.name()
            )));
        }
        Ok(LeibnizRep {
            algebra,
            rep_dim,
            rho_l,
            rho_r,
        })
    }

    pub fn zero(algebra: Algebra, rep_dim: usize) -> Self {
        let n = algebra.dim();
        let z = Matrix::zeros(rep_dim, rep_dim);
        LeibnizRep {
            algebra,
            rep_dim,
            rho_l: vec![z.clone(); n],
            rho_r: vec![z; n],
        }
    }

    fn combine(ms: &[Matrix], v: &[Rational], d: usize) -> Matrix {
        let mut out = Matrix::zeros(d, d);
        for (m, c) in ms.iter().zip(v) {
            if !c.is_zero() {
                out = out.add(&m.scale(c));
            }
        }
        out
    }

    pub fn left(&self, v: &[Rational]) -> Matrix {
        Self::combine(&self.rho_l, v, self.rep_dim)
    }

    pub fn right(&self, v: &[Rational]) -> Matrix {
        Self::combine(&self.rho_r, v, self.rep_dim)
    }
}

/// The three representation axioms on all basis pairs `(x, y)`:
/// `ρ^L[x,y] = [ρ^L x, ρ^L y]`, `ρ^R[x,y] = [ρ^L x, ρ^R y]`,
/// `ρ^R(y) ρ^L(x) = -ρ^R(y) ρ^R(x)`.
pub fn check_leibniz_rep(r: &LeibnizRep) -> Report {
    let a = &r.algebra;
    let n = a.dim();
    let mut report = Report::new("leibniz-rep");
    for x in 0..n {
        for y in 0..n {
            let xy = a.bracket_basis(x, y);
            let (lx, ly, ry) = (&r.rho_l[x], &r.rho_l[y], &r.rho_r[y]);
            let res1 = r.left(xy).sub(&lx.commutator(ly));
            report.expect_zero("left-bracket", &[x, y], res1.to_flat());
            let res2 = r.right(xy).sub(&lx.commutator(ry));
            report.expect_zero("right-bracket", &[x, y], res2.to_flat());
            let res3 = ry.mul(lx).add(&ry.mul(&r.rho_r[x]));
            report.expect_zero("right-left", &[x, y], res3.to_flat());
        }
    }
    report
}

/// The ideal `Lei(a)` generated by all squares `[x, x]`.
///
/// Seeded by polarization (`[e_i,e_i]` and `[e_i,e_j] + [e_j,e_i]`), then
/// closed under left and right brackets with basis vectors until the
/// dimension stops growing.
pub fn leibniz_kernel(a: &Algebra) -> Subspace {
    let n = a.dim();
    let mut seeds = Vec::new();
    for i in 0..n {
        seeds.push(a.bracket_basis(i, i).clone());
        for j in i + 1..n {
            let mut s = a.bracket_basis(i, j).clone();
            axpy(&mut s, &Rational::one(), a.bracket_basis(j, i));
            seeds.push(s);
        }
    }
    let mut ideal = Subspace::span(n, &seeds);
    loop {
        let mut gens: Vec<Vector> = ideal.basis().to_vec();
        for b in ideal.basis() {
            for k in 0..n {
                gens.push(a.bracket_left_basis(k, b));
                gens.push(a.bracket_right_basis(b, k));
            }
        }
        let next = Subspace::span(n, &gens);
        if next.dim() == ideal.dim() {
            return ideal;
        }
        ideal = next;
    }
}

/// `a / Lei(a)` with its projection.
#[derive(Clone, Debug)]
pub struct LieQuotient {
    pub algebra: Algebra,
    /// `dim(quotient) x dim(a)` matrix of the projection.
    pub projection: Matrix,
    pub kernel: Subspace,
    /// The original basis vectors whose classes form the quotient basis.
    pub lift_indices: Vec<usize>,
}

impl LieQuotient {
    /// Coordinates of the class of `v`.
    pub fn project(&self, v: &[Rational]) -> Vector {
        self.projection.apply(v)
    }
}

/// Quotient by the Leibniz kernel. The quotient basis is the classes of the
/// non-pivot unit vectors of the kernel's echelon basis.
pub fn quotient_lie(a: &Algebra) -> Result<LieQuotient> {
    let n = a.dim();
    let kernel = leibniz_kernel(a);
    let lift_indices = kernel.complement_indices();
    let qdim = lift_indices.len();
    let mut projection = Matrix::zeros(qdim, n);
    for j in 0..n {
        let reduced = kernel.reduce(&unit_vector(n, j));
        for (r, &c) in lift_indices.iter().enumerate() {
            projection[(r, j)] = reduced[c].clone();
        }
    }
    let algebra = Algebra::from_fn(format!("{}_Lie", a.name()), qdim, Flavor::Lie, |r, s| {
        projection.apply(a.bracket_basis(lift_indices[r], lift_indices[s]))
    })?;
    Ok(LieQuotient {
        algebra,
        projection,
        kernel,
        lift_indices,
    })
}

fn vec_index(n: usize, r: usize, c: usize) -> usize {
    r * n + c
}

/// Linear equations `D[e_i,e_j] - [De_i,e_j] - [e_i,De_j] = 0` on the
/// row-major entries of an `n x n` matrix `D`.
fn derivation_equations(a: &Algebra) -> Vec<Vector> {
    let n = a.dim();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for s in 0..n {
                let mut eq = zero_vector(n * n);
                // (D[e_i,e_j])_s = sum_r D[s][r] c_{ij}^r
                for (r, c) in a.bracket_basis(i, j).iter().enumerate() {
                    eq[vec_index(n, s, r)] += c;
                }
                // ([De_i, e_j])_s = sum_r D[r][i] c_{rj}^s
                for r in 0..n {
                    eq[vec_index(n, r, i)] -= &a.bracket_basis(r, j)[s];
                    eq[vec_index(n, r, j)] -= &a.bracket_basis(i, r)[s];
                }
                rows.push(eq);
            }
        }
    }
    rows
}

/// `Der(a)` as a subspace of `n x n` matrices flattened row-major.
pub fn derivation_algebra(a: &Algebra) -> Subspace {
    let n = a.dim();
    Matrix::from_rows(&derivation_equations(a), n * n)
        .expect("equation width")
        .kernel()
}

/// Coherent derivations: derivations with `[De_i, e_j] = 0` for all `i, j`.
pub fn coherent_derivation_algebra(a: &Algebra) -> Subspace {
    let n = a.dim();
    let mut rows = derivation_equations(a);
    for i in 0..n {
        for j in 0..n {
            for s in 0..n {
                let mut eq = zero_vector(n * n);
                for r in 0..n {
                    eq[vec_index(n, r, i)] += &a.bracket_basis(r, j)[s];
                }
                rows.push(eq);
            }
        }
    }
    Matrix::from_rows(&rows, n * n).expect("equation width").kernel()
}

/// A Lie subalgebra of `gl(n)` materialized as an abstract algebra on its
/// echelon basis.
#[derive(Clone, Debug)]
pub struct MatrixLieAlgebra {
    pub algebra: Algebra,
    pub subspace: Subspace,
    pub matrices: Vec<Matrix>,
    pub n: usize,
}

impl MatrixLieAlgebra {
    /// Fails with [`Error::NotASubspace`] if the span is not closed under commutators.
    pub fn from_subspace(name: impl Into<String>, n: usize, subspace: Subspace) -> Result<Self> {
        let matrices: Vec<Matrix> = subspace
            .basis()
            .iter()
            .map(|b| Matrix::from_flat(n, n, b))
            .collect();
        let d = matrices.len();
        let mut sc = vec![vec![Vec::new(); d]; d];
        for a in 0..d {
            for b in 0..d {
                let c = matrices[a].commutator(&matrices[b]).to_flat();
                sc[a][b] = subspace.coordinates(&c).ok_or(Error::NotASubspace)?;
            }
        }
        let algebra = Algebra::new(name, d, sc, Flavor::Lie)?;
        Ok(MatrixLieAlgebra {
            algebra,
            subspace,
            matrices,
            n,
        })
    }

    /// Coordinates of a matrix in the algebra's basis.
    pub fn coordinates(&self, m: &Matrix) -> Option<Vector> {
        self.subspace.coordinates(&m.to_flat())
    }
}

/// `Der̄(h)` as an abstract Lie algebra together with its defining matrices.
pub fn coherent_derivation_lie_algebra(h: &Algebra) -> Result<MatrixLieAlgebra> {
    MatrixLieAlgebra::from_subspace(
        format!("Der̄({})", h.name()),
        h.dim(),
        coherent_derivation_algebra(h),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{heisenberg, sl2_like};
    use crate::rational::qi;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| qi(x)).collect()
    }

    #[test]
    fn heisenberg_is_lie_and_two_step() {
        let h = heisenberg();
        assert!(check_lie(&h).passed());
        assert!(check_leibniz(&h).passed());
        assert!(check_two_step_nilpotent(&h).passed());
    }

    #[test]
    fn abelian_is_lie() {
        let a = Algebra::abelian("a4", 4);
        assert!(check_lie(&a).passed());
        assert!(check_two_step_nilpotent(&a).passed());
    }

    #[test]
    fn broken_heisenberg_fails_with_witness() {
        let mut sc = heisenberg().sc();
        sc[0][1] = v(&[0, 1, 0]);
        let bad = Algebra::new("bad", 3, sc.clone(), Flavor::Unchecked).unwrap();
        let r = check_lie(&bad);
        assert!(!r.passed());
        let w = r.first_violation().unwrap();
        assert_eq!((w.law.as_str(), w.indices.as_slice()), ("antisymmetry", &[0, 1][..]));
        assert!(matches!(
            Algebra::new("bad", 3, sc, Flavor::Lie),
            Err(Error::FlavorViolation { .. })
        ));
    }

    #[test]
    fn non_leibniz_table_fails() {
        // [e1,e1] = e2, [e2,e1] = e2
        let a = Algebra::from_brackets(
            "nl",
            2,
            Flavor::Unchecked,
            &[(0, 0, v(&[0, 1])), (1, 0, v(&[0, 1]))],
            false,
        )
        .unwrap();
        let r = check_leibniz(&a);
        assert!(!r.passed());
        assert_eq!(r.first_violation().unwrap().indices, vec![0, 0, 0]);
        assert_eq!(r.first_violation().unwrap().residual, v(&[0, -1]));
    }

    #[test]
    fn sl2_like_is_not_two_step() {
        let s = sl2_like();
        assert!(check_lie(&s).passed());
        let r = check_two_step_nilpotent(&s);
        assert!(!r.passed());
        // [[e3, e1], e2] = 2 [e1, e2] = 2 e3
        assert!(r
            .violations
            .iter()
            .any(|w| w.indices == vec![2, 0, 1] && w.residual == v(&[0, 0, 2])));
    }

    #[test]
    fn lie_algebra_has_zero_kernel_and_identity_quotient() {
        let h = heisenberg();
        assert_eq!(leibniz_kernel(&h).dim(), 0);
        let q = quotient_lie(&h).unwrap();
        assert!(q.algebra.same_structure(&h));
        assert_eq!(q.projection, Matrix::identity(3));
    }

    #[test]
    fn derivations_of_heisenberg() {
        let h = heisenberg();
        let der = derivation_algebra(&h);
        assert_eq!(der.dim(), 6);
        let coh = coherent_derivation_algebra(&h);
        // Coherent derivations of H3 are exactly the inner derivations.
        assert_eq!(coh.dim(), 2);
        assert!(der.contains_subspace(&coh));
        for i in 0..3 {
            assert!(coh.contains(&h.ad_basis(i).to_flat()));
        }
        for a in der.basis() {
            for b in der.basis() {
                let c = Matrix::from_flat(3, 3, a).commutator(&Matrix::from_flat(3, 3, b));
                assert!(der.contains(&c.to_flat()));
            }
        }
    }

    #[test]
    fn derivations_of_abelian() {
        let a = Algebra::abelian("a3", 3);
        assert_eq!(derivation_algebra(&a).dim(), 9);
        assert_eq!(coherent_derivation_algebra(&a).dim(), 9);
    }

    #[test]
    fn zero_rep_passes() {
        let r = LeibnizRep::zero(heisenberg(), 2);
        assert!(check_leibniz_rep(&r).passed());
    }

    #[test]
    fn json_round_trip_and_sparse_input() {
        let h = heisenberg();
        let s = serde_json::to_string(&h).unwrap();
        let back: Algebra = serde_json::from_str(&s).unwrap();
        assert_eq!(back, h);
        let sparse: Algebra = serde_json::from_str(
            r#"{"name":"h","dim":3,"flavor":"lie","sc":[[[],[0,0,1]],[[0,0,-1]]]}"#,
        )
        .unwrap();
        assert!(sparse.same_structure(&h));
    }
}
