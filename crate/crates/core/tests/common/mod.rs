//! Oracles and seeded generators shared by the integration tests.
#![allow(dead_code)]

use etensor::fixtures::{family_i_lower, family_i_upper, heisenberg_adjoint, heisenberg_leibniz_lie, heisenberg_tensor};
use etensor::linalg::Matrix;
use etensor::rational::{qi, Rational};
use etensor::{ActionMap, Algebra, Flavor, LeibnizLie, TensorMap};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A rational with numerator in `-5..=5` and denominator in `1..=4`.
pub fn rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.gen_range(-5i64..=5), rng.gen_range(1i64..=4))
}

/// Mostly zero, otherwise small; gives a useful share of genuine tensors.
pub fn sparse_rational(rng: &mut ChaCha8Rng) -> Rational {
    if rng.gen_bool(0.6) {
        Rational::zero()
    } else {
        Rational::new(rng.gen_range(-2i64..=2), rng.gen_range(1i64..=2))
    }
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, sparse: bool) -> Matrix {
    let data = (0..rows * cols)
        .map(|_| if sparse { sparse_rational(rng) } else { rational(rng) })
        .collect();
    Matrix::from_vec(rows, cols, data).unwrap()
}

/// Rank by fraction-free (Bareiss) elimination over the integers, after
/// clearing denominators row by row.
pub fn bareiss_rank(m: &Matrix) -> usize {
    let mut a: Vec<Vec<BigInt>> = (0..m.rows())
        .map(|i| {
            let row = m.row(i);
            let l: BigInt = row.iter().map(|x| x.denom()).product();
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    let (rows, cols) = (m.rows(), m.cols());
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..rows {
            for k in c + 1..cols {
                let num = &a[rank][c] * &a[r][k] - &a[r][c] * &a[rank][k];
                assert!((&num % &prev).is_zero(), "Bareiss division must be exact");
                a[r][k] = num / &prev;
            }
            a[r][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
    }
    rank
}

/// Membership in the classified tensor families on the Heisenberg algebra
/// with its adjoint action, read off the entries directly.
pub fn in_heisenberg_families(m: &Matrix) -> bool {
    let r = |i: usize, j: usize| m[(i - 1, j - 1)].clone();
    if !r(1, 3).is_zero() || !r(2, 3).is_zero() {
        return false;
    }
    let r33 = r(3, 3);
    if r33.is_zero() {
        &r(1, 1) * &r(2, 2) == &r(1, 2) * &r(2, 1)
    } else {
        let r11 = r(1, 1);
        r(1, 2).is_zero() && r(2, 1).is_zero() && r11 == r(2, 2) && &(&r11 * &r11 - &r33 * &r11) - &r33 == Rational::zero()
    }
}

/// A random tensor from either displayed shape of the `Te3 = 0` family.
pub fn random_family_i(rng: &mut ChaCha8Rng) -> TensorMap {
    let (c, d, a, b) = (rational(rng), rational(rng), rational(rng), rational(rng));
    if rng.gen_bool(0.5) {
        family_i_upper(c, d, rational(rng), a, b)
    } else {
        family_i_lower(c, d, a, b)
    }
}

/// Random matrix on the Heisenberg adjoint action; about half are drawn
/// near the tensor families.
pub fn random_heisenberg_candidate(rng: &mut ChaCha8Rng) -> TensorMap {
    if rng.gen_bool(0.5) {
        let t = random_family_i(rng);
        if rng.gen_bool(0.5) {
            return t;
        }
        let mut m = t.matrix().clone();
        let (i, j) = (rng.gen_range(0..3), rng.gen_range(0..3));
        m[(i, j)] = &m[(i, j)] + &sparse_rational(rng);
        t.with_matrix(m).unwrap()
    } else {
        TensorMap::new(heisenberg_adjoint(), random_matrix(rng, 3, 3, true)).unwrap()
    }
}

/// `g = span{e1, e2}` with `[e1, e2] = e2`, acting on abelian `k³` by
/// `ρ(e1) = diag(1, 0, 0)` and `ρ(e2) = E12`.
pub fn coherent_fixture() -> ActionMap {
    let g = Algebra::from_brackets("b2", 2, Flavor::Lie, &[(0, 1, vec![qi(0), qi(1)])], true).unwrap();
    let h = Algebra::abelian("k3", 3);
    let mut r1 = Matrix::zeros(3, 3);
    r1[(0, 0)] = qi(1);
    let mut r2 = Matrix::zeros(3, 3);
    r2[(0, 1)] = qi(1);
    ActionMap::new(g, h, vec![r1, r2]).unwrap()
}

/// Random 2×3 matrix on the coherent fixture; half have `Te1 = 0` and image
/// in `span{e2}`, which are always tensors.
pub fn random_fixture_candidate(rng: &mut ChaCha8Rng) -> TensorMap {
    let action = coherent_fixture();
    let m = if rng.gen_bool(0.5) {
        let mut m = Matrix::zeros(2, 3);
        m[(1, 1)] = rational(rng);
        m[(1, 2)] = rational(rng);
        if rng.gen_bool(0.3) {
            let (i, j) = (rng.gen_range(0..2), rng.gen_range(0..3));
            m[(i, j)] = &m[(i, j)] + &qi(1);
        }
        m
    } else {
        random_matrix(rng, 2, 3, true)
    };
    TensorMap::new(action, m).unwrap()
}

/// Random invertible matrix (unit lower times unit upper triangular, then
/// a random diagonal scaling).
pub fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    let mut l = Matrix::identity(n);
    let mut u = Matrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            l[(i, j)] = sparse_rational(rng);
            u[(j, i)] = sparse_rational(rng);
        }
    }
    let mut d = Matrix::identity(n);
    for i in 0..n {
        let mut x = rational(rng);
        while x.is_zero() {
            x = rational(rng);
        }
        d[(i, i)] = x;
    }
    l.mul(&d).mul(&u)
}

/// Verified Leibniz-Lie algebras of dimension at most 3: transports of the
/// Heisenberg example, algebras induced by random tensors, and abelian ones
/// with a zero product.
pub fn random_leibniz_lie(rng: &mut ChaCha8Rng) -> LeibnizLie {
    match rng.gen_range(0..4) {
        0 => heisenberg_leibniz_lie().transport(&random_invertible(rng, 3)).unwrap(),
        1 => etensor::leibniz_lie::induced_leibniz_lie(&random_family_i(rng)).unwrap(),
        2 => {
            let n = rng.gen_range(1..=3);
            LeibnizLie::new(Algebra::abelian("ab", n), vec![vec![vec![Rational::zero(); n]; n]; n]).unwrap()
        }
        _ => {
            let r = qi(2);
            let t = heisenberg_tensor([
                [r.clone(), qi(0), qi(0)],
                [qi(0), r, qi(0)],
                [rational(rng), rational(rng), Rational::new(4, 3)],
            ]);
            etensor::leibniz_lie::induced_leibniz_lie(&t).unwrap().transport(&random_invertible(rng, 3)).unwrap()
        }
    }
}
