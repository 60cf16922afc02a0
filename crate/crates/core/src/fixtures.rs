//! Standard examples: the Heisenberg algebra, its adjoint action and the
//! embedding-tensor families on it.

use crate::algebra::{Algebra, Flavor};
use crate::leibniz_lie::LeibnizLie;
use crate::linalg::{Matrix, Vector};
use crate::rational::{qi, Rational};
use crate::tensor::{ActionMap, TensorMap};

fn v(xs: &[i64]) -> Vector {
    xs.iter().map(|&x| qi(x)).collect()
}

/// `H3`: `[e1, e2] = e3`, all other brackets of basis vectors zero.
pub fn heisenberg() -> Algebra {
    Algebra::from_brackets("H3", 3, Flavor::Lie, &[(0, 1, v(&[0, 0, 1]))], true)
        .expect("Heisenberg algebra")
}

/// `[e1, e2] = e3, [e3, e1] = 2e1, [e3, e2] = -2e2`.
pub fn sl2_like() -> Algebra {
    Algebra::from_brackets(
        "sl2",
        3,
        Flavor::Lie,
        &[
            (0, 1, v(&[0, 0, 1])),
            (2, 0, v(&[2, 0, 0])),
            (2, 1, v(&[0, -2, 0])),
        ],
        true,
    )
    .expect("sl2 table")
}

pub fn heisenberg_adjoint() -> ActionMap {
    ActionMap::adjoint(&heisenberg())
}

/// Tensor on `H3` from its matrix in the `r_ij` layout (column `j` is `T e_j`).
pub fn heisenberg_tensor(r: [[Rational; 3]; 3]) -> TensorMap {
    let rows: Vec<Vector> = r.iter().map(|row| row.to_vec()).collect();
    TensorMap::new(heisenberg_adjoint(), Matrix::from_rows(&rows, 3).expect("3x3"))
        .expect("tensor shape")
}

/// `T e1 = e2 + 2e3, T e2 = 3e3, T e3 = 0`.
pub fn example_net() -> TensorMap {
    family_i_lower(qi(1), qi(0), qi(2), qi(3))
}

/// `[[c, d, 0], [kc, kd, 0], [a, b, 0]]`
pub fn family_i_upper(c: Rational, d: Rational, k: Rational, a: Rational, b: Rational) -> TensorMap {
    let z = Rational::zero();
    heisenberg_tensor([
        [c.clone(), d.clone(), z.clone()],
        [&k * &c, &k * &d, z.clone()],
        [a, b, z],
    ])
}

/// `[[0, 0, 0], [c, d, 0], [a, b, 0]]`
pub fn family_i_lower(c: Rational, d: Rational, a: Rational, b: Rational) -> TensorMap {
    let z = Rational::zero();
    heisenberg_tensor([[z.clone(), z.clone(), z.clone()], [c, d, z.clone()], [a, b, z]])
}

/// `[[r, 0, 0], [0, r, 0], [a, b, t]]`, a tensor when `r^2 - t r - t = 0`.
pub fn family_ii(r: Rational, t: Rational, a: Rational, b: Rational) -> TensorMap {
    let z = Rational::zero();
    heisenberg_tensor([[r.clone(), z.clone(), z.clone()], [z.clone(), r, z], [a, b, t]])
}

/// `H3` with `e1▷e1 = -e3, e1▷e2 = e3, e2▷e2 = e3, e2▷e1 = -e3`.
pub fn heisenberg_leibniz_lie() -> LeibnizLie {
    let mut tri = vec![vec![v(&[0, 0, 0]); 3]; 3];
    tri[0][0] = v(&[0, 0, -1]);
    tri[0][1] = v(&[0, 0, 1]);
    tri[1][1] = v(&[0, 0, 1]);
    tri[1][0] = v(&[0, 0, -1]);
    LeibnizLie::new(heisenberg(), tri).expect("triangle shape")
}
