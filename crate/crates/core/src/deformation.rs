//! Linear deformations `T + t𝔗` of an embedding tensor, their equivalence,
//! Nijenhuis elements and Nijenhuis operators.

use serde::Serialize;

use crate::algebra::Algebra;
use crate::cohomology::partial_t_degree_one;
use crate::error::{Error, Result};
use crate::fixtures::family_ii;
use crate::linalg::{add_vectors, axpy, sub_vectors, unit_vector, Matrix, Vector};
use crate::rational::{qi, Rational};
use crate::report::Report;
use crate::tensor::{check_net, TensorMap};

/// A candidate direction `𝔗: h → g` for `T_t = T + t𝔗`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DeformationDirection {
    pub base: TensorMap,
    pub direction: Matrix,
}

impl DeformationDirection {
    pub fn new(base: TensorMap, direction: Matrix) -> Result<Self> {
        if (direction.rows(), direction.cols()) != (base.matrix().rows(), base.matrix().cols()) {
            return Err(Error::DimensionMismatch(format!(
                "direction is {}x{}, tensor is {}x{}",
                direction.rows(),
                direction.cols(),
                base.matrix().rows(),
                base.matrix().cols()
            )));
        }
        Ok(DeformationDirection { base, direction })
    }

    pub fn zero(base: TensorMap) -> Self {
        let direction = Matrix::zeros(base.matrix().rows(), base.matrix().cols());
        DeformationDirection { base, direction }
    }

    /// `T + t𝔗`.
    pub fn at(&self, t: &Rational) -> TensorMap {
        let m = self.base.matrix().add(&self.direction.scale(t));
        self.base.with_matrix(m).expect("same shape")
    }

    fn apply(&self, u: &[Rational]) -> Vector {
        self.direction.apply(u)
    }
}

/// Outcome of [`check_linear_deformation`]: the coefficient equations, and
/// the tensor check of `T + t𝔗` at each probe `t`.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LinearDeformationReport {
    pub coefficients: Report,
    pub probes: Vec<(Rational, bool)>,
    pub routes_agree: bool,
}

impl LinearDeformationReport {
    pub fn passed(&self) -> bool {
        self.coefficients.passed() && self.routes_agree
    }
}

pub const PROBES: [i64; 2] = [1, 2];

/// The coefficients of `t` and `t²` in the tensor equation of `T + t𝔗`:
///
/// ```text
/// [Tu,𝔗v] + [𝔗u,Tv] = T(ρ(𝔗u)v) + 𝔗(ρ(Tu)v + [u,v])
/// [𝔗u,𝔗v] = 𝔗(ρ(𝔗u)v)
/// ```
pub fn check_linear_deformation(d: &DeformationDirection) -> Result<LinearDeformationReport> {
    let t = &d.base;
    t.require_net()?;
    let (g, h) = (t.g(), t.h());
    let dh = h.dim();
    let mut report = Report::new("linear-deformation");
    let tu: Vec<Vector> = (0..dh).map(|u| t.image_of_basis(u)).collect();
    let du: Vec<Vector> = (0..dh).map(|u| d.direction.column(u)).collect();
    for u in 0..dh {
        for v in 0..dh {
            let ev = unit_vector(dh, v);
            let mut first = add_vectors(&g.bracket(&tu[u], &du[v]), &g.bracket(&du[u], &tu[v]));
            axpy(&mut first, &qi(-1), &t.apply(&t.action().act(&du[u], &ev)));
            let desc = add_vectors(&t.action().act(&tu[u], &ev), h.bracket_basis(u, v));
            axpy(&mut first, &qi(-1), &d.apply(&desc));
            report.expect_zero("order-1", &[u, v], first);
        }
    }
    for u in 0..dh {
        for v in 0..dh {
            let ev = unit_vector(dh, v);
            let second = sub_vectors(&g.bracket(&du[u], &du[v]), &d.apply(&t.action().act(&du[u], &ev)));
            report.expect_zero("order-2", &[u, v], second);
        }
    }
    let probes: Vec<(Rational, bool)> = PROBES
        .iter()
        .map(|&p| (qi(p), check_net(&d.at(&qi(p))).passed()))
        .collect();
    let probe_verdict = probes.iter().all(|(_, ok)| *ok);
    Ok(LinearDeformationReport {
        routes_agree: probe_verdict == report.passed(),
        coefficients: report,
        probes,
    })
}

/// `[[x, e_i], [x, e_j]] = 0` for all basis pairs.
fn check_square_of_ad(report: &mut Report, g: &Algebra, x: &[Rational]) {
    let n = g.dim();
    let ad: Vec<Vector> = (0..n).map(|i| g.bracket(x, &unit_vector(n, i))).collect();
    for i in 0..n {
        for j in 0..n {
            report.expect_zero("ad-square", &[i, j], g.bracket(&ad[i], &ad[j]));
        }
    }
}

/// `ρ([x, e_i]) ρ(x) = 0` for all basis vectors; residuals are flattened matrices.
fn check_rho_product(report: &mut Report, t: &TensorMap, x: &[Rational]) {
    let g = t.g();
    let n = g.dim();
    let rx = t.action().rho(x);
    for i in 0..n {
        let m = t.action().rho(&g.bracket(x, &unit_vector(n, i))).mul(&rx);
        report.expect_zero("rho-product", &[i], m.to_flat());
    }
}

/// Conditions for `(Id + t·ad_x, Id + tρ(x))` to map `T + t𝔗_source` to
/// `T + t𝔗_target`:
///
/// ```text
/// (𝔗_source - 𝔗_target)(u) = Tρ(x)u - [x, Tu]
/// 𝔗_target ρ(x) u = [x, 𝔗_source u]
/// [[x,y],[x,z]] = 0,  ρ([x,y])ρ(x) = 0
/// ```
pub fn check_equivalence(
    source: &DeformationDirection,
    target: &DeformationDirection,
    x: &[Rational],
) -> Result<Report> {
    if source.base != target.base {
        return Err(Error::DimensionMismatch("directions deform different tensors".into()));
    }
    let t = &source.base;
    let g = t.g();
    let dh = t.h().dim();
    if x.len() != g.dim() {
        return Err(Error::DimensionMismatch(format!("element has {} coordinates", x.len())));
    }
    let dx = partial_t_degree_one(t, x)?.to_matrix()?;
    let mut report = Report::new("equivalence");
    for u in 0..dh {
        let diff = sub_vectors(&source.direction.column(u), &target.direction.column(u));
        report.expect_zero("difference", &[u], sub_vectors(&diff, &dx.column(u)));
    }
    for u in 0..dh {
        let lhs = target.apply(&t.action().act(x, &unit_vector(dh, u)));
        let rhs = g.bracket(x, &source.direction.column(u));
        report.expect_zero("intertwine", &[u], sub_vectors(&lhs, &rhs));
    }
    check_square_of_ad(&mut report, g, x);
    check_rho_product(&mut report, t, x);
    Ok(report)
}

/// A candidate element `x ∈ g` for `T`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct NijenhuisCandidate {
    pub base: TensorMap,
    pub element: Vector,
}

impl NijenhuisCandidate {
    pub fn new(base: TensorMap, element: Vector) -> Result<Self> {
        if element.len() != base.g().dim() {
            return Err(Error::DimensionMismatch(format!(
                "element has {} coordinates, g has dimension {}",
                element.len(),
                base.g().dim()
            )));
        }
        Ok(NijenhuisCandidate { base, element })
    }
}

/// `[[x,e_i],[x,e_j]] = 0`, `ρ([x,e_i])ρ(x) = 0` and `[x, Tρ(x)u - [x,Tu]] = 0`.
pub fn check_nijenhuis_element(c: &NijenhuisCandidate) -> Result<Report> {
    let t = &c.base;
    let x = &c.element;
    let g = t.g();
    let dx = partial_t_degree_one(t, x)?;
    let mut report = Report::new("nijenhuis-element");
    check_square_of_ad(&mut report, g, x);
    check_rho_product(&mut report, t, x);
    for u in 0..t.h().dim() {
        report.expect_zero("nijenhuis", &[u], g.bracket(x, dx.value(&[u])));
    }
    Ok(report)
}

/// `𝔗 = ∂_T x` for a Nijenhuis element `x`.
pub fn trivial_deformation_from_nijenhuis(c: &NijenhuisCandidate) -> Result<DeformationDirection> {
    let r = check_nijenhuis_element(c)?;
    if let Some(v) = r.first_violation() {
        return Err(Error::NotNijenhuis(format!("{} fails on {:?}", v.law, v.indices)));
    }
    let direction = partial_t_degree_one(&c.base, &c.element)?.to_matrix()?;
    DeformationDirection::new(c.base.clone(), direction)
}

/// `(Id + t·ad_x)^{-1} ∘ T ∘ (Id + tρ(x))` compared with `T + t·∂_T x`.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ConjugationProbe {
    pub t: Rational,
    pub invertible: bool,
    pub conjugated: Option<Matrix>,
    pub matches_deformation: bool,
    pub conjugated_is_tensor: bool,
}

pub fn conjugation_probe(c: &NijenhuisCandidate, t: &Rational) -> Result<ConjugationProbe> {
    let base = &c.base;
    let g = base.g();
    let x = &c.element;
    let n = g.dim();
    let dh = base.h().dim();
    let ad = g.left_multiplication(x);
    let left = Matrix::identity(n).add(&ad.scale(t));
    let right = Matrix::identity(dh).add(&base.action().rho(x).scale(t));
    let dx = partial_t_degree_one(base, x)?.to_matrix()?;
    let expected = base.matrix().add(&dx.scale(t));
    Ok(match left.inverse() {
        None => ConjugationProbe {
            t: t.clone(),
            invertible: false,
            conjugated: None,
            matches_deformation: false,
            conjugated_is_tensor: false,
        },
        Some(inv) => {
            let m = inv.mul(base.matrix()).mul(&right);
            let is_tensor = check_net(&base.with_matrix(m.clone())?).passed();
            ConjugationProbe {
                t: t.clone(),
                invertible: true,
                matches_deformation: m == expected,
                conjugated: Some(m),
                conjugated_is_tensor: is_tensor,
            }
        }
    })
}

/// `[Nu, Nv] = N([Nu, v] + [u, Nv] - N[u, v])` on basis pairs.
pub fn check_nijenhuis_operator(a: &Algebra, n: &Matrix) -> Result<Report> {
    let d = a.dim();
    if (n.rows(), n.cols()) != (d, d) {
        return Err(Error::DimensionMismatch(format!(
            "operator is {}x{}, algebra has dimension {d}",
            n.rows(),
            n.cols()
        )));
    }
    let mut report = Report::new("nijenhuis-operator");
    let images: Vec<Vector> = (0..d).map(|i| n.column(i)).collect();
    for u in 0..d {
        for v in 0..d {
            let lhs = a.bracket(&images[u], &images[v]);
            let mut inner = add_vectors(
                &a.bracket(&images[u], &unit_vector(d, v)),
                &a.bracket(&unit_vector(d, u), &images[v]),
            );
            axpy(&mut inner, &qi(-1), &n.apply(a.bracket_basis(u, v)));
            report.expect_zero("nijenhuis", &[u, v], sub_vectors(&lhs, &n.apply(&inner)));
        }
    }
    Ok(report)
}

/// One rational point of the family `diag(r, r, t)` with bottom row `(a, b, t)`
/// on the Heisenberg algebra, where `r = (t ± √(t² + 4t)) / 2`.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FamilyPoint {
    pub t: Rational,
    pub r: Rational,
    pub is_tensor: bool,
}

/// Verdict on the family `T_t` around `T = [[0,0,0],[0,0,0],[a,b,0]]`.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FamilyReport {
    pub points: Vec<FamilyPoint>,
    /// Whether `(T_t - T)/t` is the same matrix at every point, i.e. whether
    /// the sampled family has the form `T + t𝔗`.
    pub linear_in_t: bool,
    /// For each point, whether `(T_t - T)/t` generates a linear deformation.
    pub directions_deform: Vec<bool>,
}

/// Both rational roots `r` of `r² - t r - t = 0`, when `t² + 4t` is a square.
pub fn family_roots(t: &Rational) -> Option<[Rational; 2]> {
    let disc = t * t + qi(4) * t;
    let s = disc.sqrt_exact()?;
    let half = Rational::new(1, 2);
    Some([&(t + &s) * &half, &(t - &s) * &half])
}

pub fn check_family(ts: &[Rational], a: &Rational, b: &Rational) -> Result<FamilyReport> {
    let z = Rational::zero();
    let base = family_ii(z.clone(), z.clone(), a.clone(), b.clone());
    let mut points = Vec::new();
    let mut slopes: Vec<Matrix> = Vec::new();
    let mut directions_deform = Vec::new();
    for t in ts {
        let roots = family_roots(t)
            .ok_or_else(|| Error::DimensionMismatch(format!("t² + 4t is not a rational square at t = {t}")))?;
        let r = roots[0].clone();
        let tt = family_ii(r.clone(), t.clone(), a.clone(), b.clone());
        points.push(FamilyPoint {
            t: t.clone(),
            r,
            is_tensor: check_net(&tt).passed(),
        });
        let slope = tt.matrix().sub(base.matrix()).scale(&t.recip());
        let d = DeformationDirection::new(base.clone(), slope.clone())?;
        directions_deform.push(check_linear_deformation(&d)?.passed());
        slopes.push(slope);
    }
    let linear_in_t = slopes.windows(2).all(|w| w[0] == w[1]);
    Ok(FamilyReport {
        points,
        linear_in_t,
        directions_deform,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use crate::rational::q;
    use crate::tensor::descendent;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| qi(x)).collect()
    }

    #[test]
    fn zero_direction_deforms() {
        let r = check_linear_deformation(&DeformationDirection::zero(example_net())).unwrap();
        assert!(r.passed());
        assert!(r.probes.iter().all(|(_, ok)| *ok));
    }

    #[test]
    fn direction_on_zero_tensor() {
        let base = TensorMap::zero(heisenberg_adjoint());
        let m = Matrix::from_i64(&[&[0, 0, 0], &[1, 0, 0], &[0, 0, 0]]);
        let r = check_linear_deformation(&DeformationDirection::new(base, m).unwrap()).unwrap();
        assert!(r.passed(), "{}", r.coefficients);
    }

    #[test]
    fn routes_agree_on_failure() {
        let base = family_i_lower(qi(0), qi(0), qi(1), qi(2));
        let m = Matrix::from_i64(&[&[0, 0, 0], &[0, 0, 0], &[0, 0, 1]]);
        let r = check_linear_deformation(&DeformationDirection::new(base, m).unwrap()).unwrap();
        assert!(r.routes_agree);
        let m = Matrix::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]]);
        let base = TensorMap::zero(heisenberg_adjoint());
        let r = check_linear_deformation(&DeformationDirection::new(base, m).unwrap()).unwrap();
        assert!(!r.coefficients.passed());
        assert!(r.routes_agree);
    }

    #[test]
    fn every_element_is_nijenhuis_for_te3_zero() {
        let t = example_net();
        for i in 0..3 {
            let c = NijenhuisCandidate::new(t.clone(), unit_vector(3, i)).unwrap();
            assert!(check_nijenhuis_element(&c).unwrap().passed());
        }
        let c = NijenhuisCandidate::new(t, v(&[1, -2, 5])).unwrap();
        assert!(check_nijenhuis_element(&c).unwrap().passed());
    }

    #[test]
    fn non_nijenhuis_element() {
        // sl2 adjoint, T = 0: [[e3, e1], [e3, e2]] = [2e1, -2e2] = -4e3
        let g = sl2_like();
        let t = TensorMap::zero(crate::tensor::ActionMap::adjoint(&g));
        let c = NijenhuisCandidate::new(t, unit_vector(3, 2)).unwrap();
        let r = check_nijenhuis_element(&c).unwrap();
        assert!(!r.passed());
        assert!(matches!(trivial_deformation_from_nijenhuis(&c), Err(Error::NotNijenhuis(_))));
    }

    #[test]
    fn trivial_deformation_of_example() {
        let t = example_net();
        let c = NijenhuisCandidate::new(t.clone(), unit_vector(3, 0)).unwrap();
        let d = trivial_deformation_from_nijenhuis(&c).unwrap();
        assert_eq!(d.direction, Matrix::from_i64(&[&[0, 0, 0], &[0, 0, 0], &[-1, 0, 0]]));
        assert!(check_linear_deformation(&d).unwrap().passed());
        let zero = DeformationDirection::zero(t.clone());
        assert!(check_equivalence(&d, &zero, &c.element).unwrap().passed());
        assert!(!check_equivalence(&zero, &d, &c.element).unwrap().passed());
        let p = conjugation_probe(&c, &qi(1)).unwrap();
        assert!(p.invertible && p.matches_deformation && p.conjugated_is_tensor);
        let rho = t.action().rho(&c.element);
        assert!(check_nijenhuis_operator(&descendent(&t).unwrap(), &rho).unwrap().passed());
    }

    #[test]
    fn equivalence_with_itself() {
        let d = DeformationDirection::zero(example_net());
        assert!(check_equivalence(&d, &d, &v(&[0, 0, 0])).unwrap().passed());
    }

    #[test]
    fn nijenhuis_operator_basics() {
        let a = descendent(&example_net()).unwrap();
        assert!(check_nijenhuis_operator(&a, &Matrix::identity(3)).unwrap().passed());
        assert!(check_nijenhuis_operator(&a, &Matrix::zeros(3, 3)).unwrap().passed());
        assert!(check_nijenhuis_operator(&a, &Matrix::zeros(2, 2)).is_err());
    }

    #[test]
    fn family_roots_at_four_thirds() {
        let roots = family_roots(&q(4, 3)).unwrap();
        assert_eq!(roots, [qi(2), q(-2, 3)]);
        assert!(family_roots(&q(12, 5)).is_none());
    }

    #[test]
    fn closing_family_is_not_linear() {
        let r = check_family(&[q(4, 3), q(1, 2)], &qi(1), &qi(-3)).unwrap();
        assert!(r.points.iter().all(|p| p.is_tensor));
        assert_eq!(r.points[1].r, qi(1));
        assert!(!r.linear_in_t);
        assert!(r.directions_deform.iter().all(|ok| !ok));
    }
}
