//! Leibniz-Lie algebras: a Lie algebra `(h, [-,-])` with a product `▷` such that
//!
//! ```text
//! x▷(y▷z) = (x▷y)▷z + y▷(x▷z) + [x,y]▷z
//! x▷[y,z] = [x▷y, z] = 0
//! ```
//!
//! Their subadjacent Leibniz algebra has bracket `x▷y + [x,y]`.

use serde::Serialize;

use crate::algebra::{check_homomorphism, check_lie, quotient_lie, Algebra, Flavor, LeibnizRep};
use crate::error::{Error, Result};
use crate::linalg::{add_vectors, axpy, is_zero_vector, sub_vectors, unit_vector, zero_vector, Matrix, Vector};
use crate::rational::Rational;
use crate::report::Report;
use crate::tensor::{natural_action, ActionMap, TensorMap};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeibnizLie {
    lie: Algebra,
    #[serde(serialize_with = "serialize_table")]
    triangle: Vec<Vector>,
}

fn serialize_table<S: serde::Serializer>(t: &[Vector], s: S) -> std::result::Result<S::Ok, S::Error> {
    let n = t.first().map_or(0, Vec::len);
    let rows: Vec<&[Vector]> = if n == 0 { Vec::new() } else { t.chunks(n).collect() };
    rows.serialize(s)
}

impl LeibnizLie {
    /// `triangle[i][j]` holds the coordinates of `e_i ▷ e_j`.
    pub fn new(lie: Algebra, triangle: Vec<Vec<Vector>>) -> Result<Self> {
        let n = lie.dim();
        if triangle.len() != n
            || triangle.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n))
        {
            return Err(Error::DimensionMismatch(format!(
                "triangle on {} must be {n}x{n} with {n} coordinates per entry",
                lie.name()
            )));
        }
        Ok(LeibnizLie {
            lie,
            triangle: triangle.into_iter().flatten().collect(),
        })
    }

    pub fn lie(&self) -> &Algebra {
        &self.lie
    }

    pub fn dim(&self) -> usize {
        self.lie.dim()
    }

    pub fn triangle_basis(&self, i: usize, j: usize) -> &Vector {
        &self.triangle[i * self.dim() + j]
    }

    pub fn triangle_table(&self) -> Vec<Vec<Vector>> {
        let n = self.dim();
        (0..n)
            .map(|i| (0..n).map(|j| self.triangle_basis(i, j).clone()).collect())
            .collect()
    }

    pub fn triangle(&self, x: &[Rational], y: &[Rational]) -> Vector {
        let n = self.dim();
        let mut out = zero_vector(n);
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if !b.is_zero() {
                    axpy(&mut out, &(a * b), self.triangle_basis(i, j));
                }
            }
        }
        out
    }

    /// Matrix of `ℒ_x = x ▷ -`.
    pub fn left_multiplication(&self, x: &[Rational]) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vector> = (0..n).map(|j| self.triangle(x, &unit_vector(n, j))).collect();
        Matrix::from_columns(&cols, n).expect("square")
    }

    /// Transport along an invertible change of basis (columns of `phi`).
    pub fn transport(&self, phi: &Matrix) -> Result<LeibnizLie> {
        let inv = phi
            .inverse()
            .ok_or_else(|| Error::DimensionMismatch("change of basis is singular".into()))?;
        let n = self.dim();
        let cols: Vec<Vector> = (0..n).map(|j| phi.column(j)).collect();
        let tri = (0..n)
            .map(|i| (0..n).map(|j| inv.apply(&self.triangle(&cols[i], &cols[j]))).collect())
            .collect();
        LeibnizLie::new(self.lie.transport(phi)?, tri)
    }
}

pub fn check_leibniz_lie(l: &LeibnizLie) -> Report {
    let h = l.lie();
    let n = l.dim();
    let mut report = Report::new("leibniz-lie");
    report.absorb("lie.", check_lie(h));
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let ek = unit_vector(n, k);
                let mut r = l.triangle(&unit_vector(n, i), l.triangle_basis(j, k));
                axpy(&mut r, &-Rational::one(), &l.triangle(l.triangle_basis(i, j), &ek));
                axpy(&mut r, &-Rational::one(), &l.triangle(&unit_vector(n, j), l.triangle_basis(i, k)));
                axpy(&mut r, &-Rational::one(), &l.triangle(h.bracket_basis(i, j), &ek));
                report.expect_zero("post-1", &[i, j, k], r);
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                report.expect_zero(
                    "post-2-left",
                    &[i, j, k],
                    l.triangle(&unit_vector(n, i), h.bracket_basis(j, k)),
                );
                report.expect_zero(
                    "post-2-right",
                    &[i, j, k],
                    h.bracket_right_basis(l.triangle_basis(i, j), k),
                );
            }
        }
    }
    report
}

fn require_leibniz_lie(l: &LeibnizLie) -> Result<()> {
    let r = check_leibniz_lie(l);
    match r.first_violation() {
        None => Ok(()),
        Some(v) => Err(Error::NotLeibnizLie(format!("{} fails on {:?}", v.law, v.indices))),
    }
}

/// `[x, y] = x▷y + [x, y]_h`.
pub fn subadjacent(l: &LeibnizLie) -> Result<Algebra> {
    require_leibniz_lie(l)?;
    let h = l.lie();
    Algebra::from_fn(format!("{}^Lei", h.name()), l.dim(), Flavor::Leibniz, |i, j| {
        add_vectors(l.triangle_basis(i, j), h.bracket_basis(i, j))
    })
}

/// `(h; ℒ, 0)` as a representation of the subadjacent algebra.
pub fn left_representation(l: &LeibnizLie) -> Result<LeibnizRep> {
    let sub = subadjacent(l)?;
    let n = l.dim();
    let left = (0..n).map(|i| l.left_multiplication(&unit_vector(n, i))).collect();
    LeibnizRep::new(sub, n, left, vec![Matrix::zeros(n, n); n])
}

/// `u ▷ v = ρ(Tu)v` on `h`.
pub fn induced_leibniz_lie(t: &TensorMap) -> Result<LeibnizLie> {
    t.require_net()?;
    let n = t.h().dim();
    let tri = (0..n)
        .map(|i| {
            let ti = t.image_of_basis(i);
            (0..n).map(|j| t.action().act(&ti, &unit_vector(n, j))).collect()
        })
        .collect();
    LeibnizLie::new(t.h().clone(), tri)
}

/// The projection `h → (h^Lei)_Lie` as a tensor with respect to
/// `ρ(ū)v = u ▷ v`.
pub fn quotient_projection_net(l: &LeibnizLie) -> Result<TensorMap> {
    let sub = subadjacent(l)?;
    let quotient = quotient_lie(&sub)?;
    let n = l.dim();
    for (a, k) in quotient.kernel.basis().iter().enumerate() {
        for j in 0..n {
            if !is_zero_vector(&l.triangle(k, &unit_vector(n, j))) {
                return Err(Error::ActionIllDefined(format!(
                    "kernel basis vector {a} acts nontrivially on e{j}"
                )));
            }
        }
    }
    let rho = quotient
        .lift_indices
        .iter()
        .map(|&i| l.left_multiplication(&unit_vector(n, i)))
        .collect();
    let action = ActionMap::new(quotient.algebra.clone(), l.lie().clone(), rho)?;
    TensorMap::new(action, quotient.projection.clone())
}

/// `ℒ: h → Der̄(h)` as a tensor with respect to the natural action.
pub fn ell_net(l: &LeibnizLie) -> Result<TensorMap> {
    require_leibniz_lie(l)?;
    let (der, action) = natural_action(l.lie())?;
    let n = l.dim();
    let mut cols = Vec::with_capacity(n);
    for i in 0..n {
        let m = l.left_multiplication(&unit_vector(n, i));
        let c = der
            .coordinates(&m)
            .ok_or_else(|| Error::NotCoherentDerivation(format!("ℒ_e{i}")))?;
        cols.push(c);
    }
    let matrix = Matrix::from_columns(&cols, der.algebra.dim())?;
    TensorMap::new(action, matrix)
}

/// Separate verdicts for the possible meanings of a Leibniz-Lie homomorphism.
#[derive(Clone, Debug, Serialize)]
pub struct LeibnizLieHomReport {
    pub triangle: Report,
    pub lie_bracket: Report,
    pub subadjacent_bracket: Report,
}

/// Checks `φ(x▷y) = φx ▷' φy`, `φ[x,y]_h = [φx, φy]_h'` and preservation of
/// the subadjacent brackets, each on basis pairs.
pub fn check_leibniz_lie_homomorphism(
    src: &LeibnizLie,
    dst: &LeibnizLie,
    phi: &Matrix,
) -> Result<LeibnizLieHomReport> {
    let lie_bracket = check_homomorphism(src.lie(), dst.lie(), phi)?;
    let sub_src = subadjacent(src)?;
    let sub_dst = subadjacent(dst)?;
    let subadjacent_bracket = check_homomorphism(&sub_src, &sub_dst, phi)?;
    let mut triangle = Report::new("triangle-homomorphism");
    let images: Vec<Vector> = (0..src.dim()).map(|j| phi.column(j)).collect();
    for i in 0..src.dim() {
        for j in 0..src.dim() {
            let lhs = phi.apply(src.triangle_basis(i, j));
            let rhs = dst.triangle(&images[i], &images[j]);
            triangle.expect_zero("triangle", &[i, j], sub_vectors(&lhs, &rhs));
        }
    }
    Ok(LeibnizLieHomReport {
        triangle,
        lie_bracket,
        subadjacent_bracket,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{check_leibniz, check_leibniz_rep, coherent_derivation_algebra, leibniz_kernel};
    use crate::fixtures::*;
    use crate::rational::qi;
    use crate::tensor::{check_coherent_action, check_net, descendent, hemisemidirect, projection_net};

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| qi(x)).collect()
    }

    #[test]
    fn heisenberg_example_is_leibniz_lie() {
        assert!(check_leibniz_lie(&heisenberg_leibniz_lie()).passed());
    }

    #[test]
    fn broken_example_fails_post_2() {
        let mut tri = heisenberg_leibniz_lie().triangle_table();
        tri[0][1] = v(&[1, 0, 0]);
        let l = LeibnizLie::new(heisenberg(), tri).unwrap();
        let r = check_leibniz_lie(&l);
        assert!(!r.passed());
        // [e1 ▷ e2, e2] = [e1, e2] = e3
        assert!(r.violations.iter().any(|w| w.law == "post-2-right"
            && w.indices == vec![0, 1, 1]
            && w.residual == v(&[0, 0, 1])));
    }

    #[test]
    fn abelian_lie_part_reduces_to_leibniz() {
        let a = Algebra::abelian("a2", 2);
        // [e1,e1] = e2 is Leibniz; adding [e2,e1] = e2 is not.
        let good = LeibnizLie::new(a.clone(), vec![vec![v(&[0, 1]), v(&[0, 0])], vec![v(&[0, 0]), v(&[0, 0])]]).unwrap();
        let bad = LeibnizLie::new(a, vec![vec![v(&[0, 1]), v(&[0, 0])], vec![v(&[0, 1]), v(&[0, 0])]]).unwrap();
        assert!(check_leibniz_lie(&good).passed());
        assert!(!check_leibniz_lie(&bad).passed());
        let sub = subadjacent(&good).unwrap();
        assert_eq!(sub.sc(), good.triangle_table());
    }

    #[test]
    fn subadjacent_of_heisenberg_example() {
        let l = heisenberg_leibniz_lie();
        let s = subadjacent(&l).unwrap();
        assert!(check_leibniz(&s).passed());
        assert_eq!(s.bracket_basis(0, 1), &v(&[0, 0, 2]));
        assert_eq!(s.bracket_basis(1, 0), &v(&[0, 0, -2]));
        assert_eq!(s.bracket_basis(0, 0), &v(&[0, 0, -1]));
        assert!(check_leibniz_rep(&left_representation(&l).unwrap()).passed());
    }

    #[test]
    fn induced_from_zero_and_example() {
        let z = induced_leibniz_lie(&crate::tensor::TensorMap::zero(heisenberg_adjoint())).unwrap();
        assert!(z.triangle_table().iter().flatten().all(|x| is_zero_vector(x)));
        let t = example_net();
        let l = induced_leibniz_lie(&t).unwrap();
        assert!(check_leibniz_lie(&l).passed());
        assert_eq!(l.triangle_basis(0, 0), &v(&[0, 0, -1]));
        assert!(subadjacent(&l).unwrap().same_structure(&descendent(&t).unwrap()));
    }

    #[test]
    fn induced_from_projection_net() {
        let h = heisenberg();
        let t = projection_net(&h).unwrap();
        let l = induced_leibniz_lie(&t).unwrap();
        let d = t.g().dim();
        // (A + u) ▷ (B + v) = Av
        let der = coherent_derivation_algebra(&h);
        for a in 0..d + 3 {
            for b in 0..d + 3 {
                let got = l.triangle_basis(a, b);
                let mut want = zero_vector(d + 3);
                if a < d && b >= d {
                    let m = Matrix::from_flat(3, 3, &der.basis()[a]);
                    want[d..].clone_from_slice(&m.column(b - d));
                }
                assert_eq!(got, &want);
            }
        }
    }

    #[test]
    fn quotient_projection_of_heisenberg_example() {
        let l = heisenberg_leibniz_lie();
        let sub = subadjacent(&l).unwrap();
        let ker = leibniz_kernel(&sub);
        assert!(ker.contains(&v(&[0, 0, 1])));
        let t = quotient_projection_net(&l).unwrap();
        assert_eq!(t.g().dim(), 2);
        assert!(check_coherent_action(t.action()).passed());
        assert!(check_net(&t).passed());
        assert!(descendent(&t).unwrap().same_structure(&sub));
    }

    #[test]
    fn quotient_projection_of_lie_triangle() {
        // abelian Lie part, ▷ a Lie bracket: [e1, e2] = e1
        let a = Algebra::abelian("a2", 2);
        let tri = vec![vec![v(&[0, 0]), v(&[1, 0])], vec![v(&[-1, 0]), v(&[0, 0])]];
        let l = LeibnizLie::new(a, tri).unwrap();
        let t = quotient_projection_net(&l).unwrap();
        assert_eq!(t.matrix(), &Matrix::identity(2));
        assert!(check_net(&t).passed());
    }

    #[test]
    fn ell_net_of_heisenberg_example() {
        let l = heisenberg_leibniz_lie();
        let t = ell_net(&l).unwrap();
        assert!(check_coherent_action(t.action()).passed());
        assert!(check_net(&t).passed());
        assert!(descendent(&t).unwrap().same_structure(&subadjacent(&l).unwrap()));
        let zero = LeibnizLie::new(heisenberg(), vec![vec![v(&[0, 0, 0]); 3]; 3]).unwrap();
        assert!(ell_net(&zero).unwrap().matrix().is_zero());
    }

    #[test]
    fn hemisemidirect_matches_projection_descendent() {
        let h = heisenberg();
        let (_, nat) = natural_action(&h).unwrap();
        let t = projection_net(&h).unwrap();
        let l = induced_leibniz_lie(&t).unwrap();
        assert!(subadjacent(&l).unwrap().same_structure(&hemisemidirect(&nat).unwrap()));
    }
}
