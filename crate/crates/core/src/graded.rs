//! Multilinear maps, shuffles, the Balavoine bracket on `Hom(⊗V, V)` and the
//! differential graded Lie algebra `(⊕ Hom(⊗^n h, g), ⟦-,-⟧, d_M)` whose
//! Maurer-Cartan elements are embedding tensors.
//!
//! Degrees: a map of arity `p` has Balavoine degree `p - 1`.

use std::fmt;

use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{axpy, is_zero_vector, unit_vector, zero_vector, Matrix, Vector};
use crate::rational::Rational;
use crate::report::Report;
use crate::tensor::{ActionMap, TensorMap};

pub const DEFAULT_ARITY_CAP: usize = 4;

/// Dense multilinear map `⊗^arity V → W` with `dim V = domain_dim` and
/// `dim W = codomain_dim`. The value on `(e_{i1}, …, e_{ip})` has its `j`-th
/// coordinate at flat index `((i1·n + i2)·n + … + ip)·m + j`.
///
/// Arity 0 is allowed and stores a single vector of `W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiMap {
    arity: usize,
    domain_dim: usize,
    codomain_dim: usize,
    coeffs: Vec<Rational>,
}

/// An argument to [`MultiMap::eval_slots`].
#[derive(Clone, Copy, Debug)]
pub enum Slot<'a> {
    Basis(usize),
    Vector(&'a [Rational]),
}

impl MultiMap {
    pub fn new(arity: usize, domain_dim: usize, codomain_dim: usize, coeffs: Vec<Rational>) -> Result<Self> {
        let expected = domain_dim.pow(arity as u32) * codomain_dim;
        if coeffs.len() != expected {
            return Err(Error::DimensionMismatch(format!(
                "arity {arity} map from dim {domain_dim} to dim {codomain_dim} needs {expected} coefficients, got {}",
                coeffs.len()
            )));
        }
        Ok(MultiMap {
            arity,
            domain_dim,
            codomain_dim,
            coeffs,
        })
    }

    pub fn zero(arity: usize, domain_dim: usize, codomain_dim: usize) -> Self {
        let len = domain_dim.pow(arity as u32) * codomain_dim;
        MultiMap {
            arity,
            domain_dim,
            codomain_dim,
            coeffs: vec![Rational::zero(); len],
        }
    }

    /// Builds a map from its values on basis tuples, visited in lex order.
    pub fn from_fn(
        arity: usize,
        domain_dim: usize,
        codomain_dim: usize,
        mut f: impl FnMut(&[usize]) -> Vector,
    ) -> Self {
        let mut coeffs = Vec::with_capacity(domain_dim.pow(arity as u32) * codomain_dim);
        for_each_tuple(arity, domain_dim, |idx| {
            let v = f(idx);
            assert_eq!(v.len(), codomain_dim, "value has wrong length");
            coeffs.extend(v);
        });
        MultiMap {
            arity,
            domain_dim,
            codomain_dim,
            coeffs,
        }
    }

    /// Arity-1 map whose value on `e_i` is column `i`.
    pub fn from_matrix(m: &Matrix) -> Self {
        MultiMap::from_fn(1, m.cols(), m.rows(), |idx| m.column(idx[0]))
    }

    /// Arity-0 map holding `v`.
    pub fn constant(domain_dim: usize, v: Vector) -> Self {
        MultiMap {
            arity: 0,
            domain_dim,
            codomain_dim: v.len(),
            coeffs: v,
        }
    }

    /// Bracket table of an algebra as an arity-2 map.
    pub fn from_algebra(a: &Algebra) -> Self {
        MultiMap::from_fn(2, a.dim(), a.dim(), |idx| a.bracket_basis(idx[0], idx[1]).clone())
    }

    pub fn to_matrix(&self) -> Result<Matrix> {
        if self.arity != 1 {
            return Err(Error::DimensionMismatch(format!("arity {} is not 1", self.arity)));
        }
        let cols: Vec<Vector> = (0..self.domain_dim).map(|i| self.value(&[i]).to_vec()).collect();
        Matrix::from_columns(&cols, self.codomain_dim)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn domain_dim(&self) -> usize {
        self.domain_dim
    }

    pub fn codomain_dim(&self) -> usize {
        self.codomain_dim
    }

    /// Coefficients in monomial order `(i1, …, ip, j)`.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.coeffs)
    }

    fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.arity);
        let flat = idx.iter().fold(0, |acc, &i| acc * self.domain_dim + i);
        flat * self.codomain_dim
    }

    /// Value on a tuple of basis vectors.
    pub fn value(&self, idx: &[usize]) -> &[Rational] {
        let o = self.offset(idx);
        &self.coeffs[o..o + self.codomain_dim]
    }

    fn value_mut(&mut self, idx: &[usize]) -> &mut [Rational] {
        let o = self.offset(idx);
        &mut self.coeffs[o..o + self.codomain_dim]
    }

    /// Evaluates on a mix of basis vectors and coordinate vectors, skipping
    /// zero coordinates.
    pub fn eval_slots(&self, slots: &[Slot<'_>]) -> Vector {
        assert_eq!(slots.len(), self.arity, "wrong number of arguments");
        let mut out = zero_vector(self.codomain_dim);
        let mut idx = vec![0; self.arity];
        self.eval_rec(slots, 0, &Rational::one(), &mut idx, &mut out);
        out
    }

    fn eval_rec(&self, slots: &[Slot<'_>], pos: usize, c: &Rational, idx: &mut Vec<usize>, out: &mut Vector) {
        if pos == slots.len() {
            axpy(out, c, self.value(idx));
            return;
        }
        match slots[pos] {
            Slot::Basis(i) => {
                idx[pos] = i;
                self.eval_rec(slots, pos + 1, c, idx, out);
            }
            Slot::Vector(v) => {
                for (i, a) in v.iter().enumerate() {
                    if !a.is_zero() {
                        idx[pos] = i;
                        self.eval_rec(slots, pos + 1, &(c * a), idx, out);
                    }
                }
            }
        }
    }

    pub fn eval(&self, args: &[Vector]) -> Vector {
        let slots: Vec<Slot<'_>> = args.iter().map(|v| Slot::Vector(v)).collect();
        self.eval_slots(&slots)
    }

    fn check_same_shape(&self, other: &MultiMap) -> Result<()> {
        if (self.arity, self.domain_dim, self.codomain_dim) != (other.arity, other.domain_dim, other.codomain_dim) {
            return Err(Error::DimensionMismatch(format!(
                "maps of shape {:?} and {:?}",
                (self.arity, self.domain_dim, self.codomain_dim),
                (other.arity, other.domain_dim, other.codomain_dim)
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &MultiMap) -> Result<MultiMap> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        axpy(&mut out.coeffs, &Rational::one(), &other.coeffs);
        Ok(out)
    }

    pub fn sub(&self, other: &MultiMap) -> Result<MultiMap> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        axpy(&mut out.coeffs, &-Rational::one(), &other.coeffs);
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> MultiMap {
        let mut out = self.clone();
        for x in &mut out.coeffs {
            *x = &*x * c;
        }
        out
    }

    /// Extends a map `⊗^p h → g` by zero to `⊗^p(g ⊕ h) → g ⊕ h`.
    pub fn embed_h_to_g(&self, g_dim: usize) -> MultiMap {
        let n = g_dim + self.domain_dim;
        let mut out = MultiMap::zero(self.arity, n, n);
        for_each_tuple(self.arity, self.domain_dim, |idx| {
            let shifted: Vec<usize> = idx.iter().map(|i| i + g_dim).collect();
            out.value_mut(&shifted)[..self.codomain_dim].clone_from_slice(self.value(idx));
        });
        out
    }

    /// Restricts a map on `g ⊕ h` to `⊗^p h → g`.
    pub fn restrict_h_to_g(&self, g_dim: usize) -> MultiMap {
        let h_dim = self.domain_dim - g_dim;
        MultiMap::from_fn(self.arity, h_dim, g_dim, |idx| {
            let shifted: Vec<usize> = idx.iter().map(|i| i + g_dim).collect();
            self.value(&shifted)[..g_dim].to_vec()
        })
    }

    fn nested(&self) -> Value {
        fn build(m: &MultiMap, prefix: &mut Vec<usize>) -> Value {
            if prefix.len() == m.arity {
                return Value::Array(m.value(prefix).iter().map(rational_value).collect());
            }
            let mut items = Vec::with_capacity(m.domain_dim);
            for i in 0..m.domain_dim {
                prefix.push(i);
                items.push(build(m, prefix));
                prefix.pop();
            }
            Value::Array(items)
        }
        build(self, &mut Vec::new())
    }
}

fn rational_value(r: &Rational) -> Value {
    serde_json::to_value(r).expect("rational serializes")
}

/// Calls `f` on every index tuple of length `arity` over `0..n`, in lex order.
pub fn for_each_tuple(arity: usize, n: usize, mut f: impl FnMut(&[usize])) {
    if arity > 0 && n == 0 {
        return;
    }
    let mut idx = vec![0; arity];
    loop {
        f(&idx);
        let mut pos = arity;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < n {
                break;
            }
            idx[pos] = 0;
        }
    }
}

impl fmt::Display for MultiMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut res = Ok(());
        for_each_tuple(self.arity, self.domain_dim, |idx| {
            let v = self.value(idx);
            if res.is_err() || is_zero_vector(v) {
                return;
            }
            let vals: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            let args: Vec<String> = idx.iter().map(|i| format!("e{}", i + 1)).collect();
            if !first {
                res = writeln!(f);
            }
            first = false;
            if res.is_ok() {
                res = write!(f, "({}) -> [{}]", args.join(","), vals.join(", "));
            }
        });
        res?;
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct MultiMapJson {
    arity: usize,
    domain_dim: usize,
    codomain_dim: usize,
    coeffs: Value,
}

impl Serialize for MultiMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MultiMapJson {
            arity: self.arity,
            domain_dim: self.domain_dim,
            codomain_dim: self.codomain_dim,
            coeffs: self.nested(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = MultiMapJson::deserialize(d)?;
        let mut flat = Vec::new();
        flatten(&raw.coeffs, raw.arity + 1, &mut flat).map_err(de::Error::custom)?;
        MultiMap::new(raw.arity, raw.domain_dim, raw.codomain_dim, flat).map_err(de::Error::custom)
    }
}

fn flatten(v: &Value, depth: usize, out: &mut Vec<Rational>) -> std::result::Result<(), String> {
    if depth == 0 {
        let r: Rational = serde_json::from_value(v.clone()).map_err(|e| e.to_string())?;
        out.push(r);
        return Ok(());
    }
    match v {
        Value::Array(items) => items.iter().try_for_each(|x| flatten(x, depth - 1, out)),
        _ => Err(format!("expected nested array of depth {depth}")),
    }
}

/// A `(i, k)`-shuffle of `0..i+k` with its sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shuffle {
    pub perm: Vec<usize>,
    pub sign: i32,
}

/// All `(i, k)`-shuffles, ordered lexicographically by their first block.
/// `perm[p]` is the image of position `p`.
pub fn shuffles(i: usize, k: usize) -> Vec<Shuffle> {
    let n = i + k;
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(i);
    fn rec(start: usize, n: usize, i: usize, chosen: &mut Vec<usize>, out: &mut Vec<Shuffle>) {
        if chosen.len() == i {
            let mut perm = chosen.clone();
            perm.extend((0..n).filter(|x| !chosen.contains(x)));
            let inversions: usize = chosen.iter().enumerate().map(|(p, &c)| c - p).sum();
            out.push(Shuffle {
                perm,
                sign: if inversions.is_multiple_of(2) { 1 } else { -1 },
            });
            return;
        }
        for c in start..n {
            chosen.push(c);
            rec(c + 1, n, i, chosen, out);
            chosen.pop();
        }
    }
    rec(0, n, i, &mut chosen, &mut out);
    out
}

fn sign(k: usize) -> Rational {
    Rational::sign(k)
}

fn shuffle_sign(s: &Shuffle) -> Rational {
    Rational::from_integer(s.sign)
}

fn require_endomorphic(p: &MultiMap) -> Result<()> {
    if p.domain_dim != p.codomain_dim {
        return Err(Error::DimensionMismatch(format!(
            "Balavoine bracket needs maps V^⊗p → V, got dims {} → {}",
            p.domain_dim, p.codomain_dim
        )));
    }
    Ok(())
}

/// `P ∘̄ Q = Σ_k P ∘_k Q`.
pub fn compose_bar(p: &MultiMap, q: &MultiMap) -> Result<MultiMap> {
    require_endomorphic(p)?;
    require_endomorphic(q)?;
    if p.domain_dim != q.domain_dim {
        return Err(Error::DimensionMismatch("Balavoine operands on different spaces".into()));
    }
    if p.arity == 0 || q.arity == 0 {
        return Err(Error::DimensionMismatch("Balavoine operands need arity at least 1".into()));
    }
    let n = p.domain_dim;
    let pd = p.arity - 1;
    let qd = q.arity - 1;
    let arity = pd + qd + 1;
    let shuffle_table: Vec<Vec<Shuffle>> = (1..=pd + 1).map(|k| shuffles(k - 1, qd)).collect();
    Ok(MultiMap::from_fn(arity, n, n, |x| {
        let mut out = zero_vector(n);
        for k in 1..=pd + 1 {
            let outer = sign((k - 1) * qd);
            for s in &shuffle_table[k - 1] {
                let c = &outer * &shuffle_sign(s);
                let mut q_args: Vec<Slot<'_>> = s.perm[k - 1..].iter().map(|&a| Slot::Basis(x[a])).collect();
                q_args.push(Slot::Basis(x[k + qd - 1]));
                let inner = q.eval_slots(&q_args);
                if is_zero_vector(&inner) {
                    continue;
                }
                let mut p_args: Vec<Slot<'_>> = s.perm[..k - 1].iter().map(|&a| Slot::Basis(x[a])).collect();
                p_args.push(Slot::Vector(&inner));
                p_args.extend(x[k + qd..].iter().map(|&a| Slot::Basis(a)));
                axpy(&mut out, &c, &p.eval_slots(&p_args));
            }
        }
        out
    }))
}

/// `[P, Q]_B = P ∘̄ Q − (−1)^{pq} Q ∘̄ P`.
pub fn balavoine(p: &MultiMap, q: &MultiMap) -> Result<MultiMap> {
    let pq = compose_bar(p, q)?;
    let qp = compose_bar(q, p)?;
    let degs = (p.arity - 1) * (q.arity - 1);
    pq.sub(&qp.scale(&sign(degs)))
}

/// `Ω` is a Leibniz bracket iff `[Ω, Ω]_B = 0`. Residuals are `½[Ω,Ω]_B`.
pub fn mc_leibniz_check(omega: &MultiMap) -> Result<Report> {
    if omega.arity != 2 {
        return Err(Error::DimensionMismatch(format!("arity {} is not 2", omega.arity)));
    }
    let half = compose_bar(omega, omega)?;
    let mut report = Report::new("mc-leibniz");
    for_each_tuple(3, omega.domain_dim, |idx| {
        report.expect_zero("maurer-cartan", idx, half.value(idx).to_vec());
    });
    Ok(report)
}

/// The data needed for the graded Lie algebra `⊕ Hom(⊗^n h, g)`.
#[derive(Clone, Debug)]
pub struct GradedContext {
    action: ActionMap,
    /// `[x+u, y+v] = [x,y]_g + ρ(x)v` on `g ⊕ h`.
    mu_g: MultiMap,
    /// `[u, v]_h` on `g ⊕ h`.
    mu_h: MultiMap,
    arity_cap: usize,
}

impl GradedContext {
    pub fn new(action: ActionMap) -> Self {
        GradedContext::with_arity_cap(action, DEFAULT_ARITY_CAP)
    }

    pub fn with_arity_cap(action: ActionMap, arity_cap: usize) -> Self {
        let (dg, dh) = (action.source().dim(), action.target().dim());
        let n = dg + dh;
        let g = action.source().clone();
        let h = action.target().clone();
        let mu_g = MultiMap::from_fn(2, n, n, |idx| {
            let (a, b) = (idx[0], idx[1]);
            let mut out = zero_vector(n);
            if a < dg && b < dg {
                out[..dg].clone_from_slice(g.bracket_basis(a, b));
            } else if a < dg {
                out[dg..].clone_from_slice(&action.rho_basis()[a].column(b - dg));
            }
            out
        });
        let mu_h = MultiMap::from_fn(2, n, n, |idx| {
            let mut out = zero_vector(n);
            if idx[0] >= dg && idx[1] >= dg {
                out[dg..].clone_from_slice(h.bracket_basis(idx[0] - dg, idx[1] - dg));
            }
            out
        });
        GradedContext {
            action,
            mu_g,
            mu_h,
            arity_cap,
        }
    }

    pub fn action(&self) -> &ActionMap {
        &self.action
    }

    pub fn mu_g(&self) -> &MultiMap {
        &self.mu_g
    }

    pub fn mu_h(&self) -> &MultiMap {
        &self.mu_h
    }

    pub fn arity_cap(&self) -> usize {
        self.arity_cap
    }

    fn g_dim(&self) -> usize {
        self.action.source().dim()
    }

    fn h_dim(&self) -> usize {
        self.action.target().dim()
    }

    fn check_cochain(&self, f: &MultiMap) -> Result<()> {
        if f.domain_dim != self.h_dim() || f.codomain_dim != self.g_dim() {
            return Err(Error::DimensionMismatch(format!(
                "expected a map h^⊗p → g with dims {} → {}, got {} → {}",
                self.h_dim(),
                self.g_dim(),
                f.domain_dim,
                f.codomain_dim
            )));
        }
        if f.arity == 0 {
            return Err(Error::DimensionMismatch("graded elements need arity at least 1".into()));
        }
        Ok(())
    }

    fn check_cap(&self, arity: usize) -> Result<()> {
        if arity > self.arity_cap {
            return Err(Error::ArityCapExceeded {
                arity,
                cap: self.arity_cap,
            });
        }
        Ok(())
    }

    /// `(d_M f)(v_1..v_{n+1}) = Σ_{i<j} (−1)^{n−1+i} f(…v̂_i…, [v_i,v_j]_h, …)`,
    /// with the bracket in slot `j`.
    pub fn d_m(&self, f: &MultiMap) -> Result<MultiMap> {
        self.check_cochain(f)?;
        let n = f.arity;
        self.check_cap(n + 1)?;
        let h = self.action.target();
        Ok(MultiMap::from_fn(n + 1, self.h_dim(), self.g_dim(), |v| {
            let mut out = zero_vector(self.g_dim());
            for i in 0..=n {
                for j in i + 1..=n {
                    let br = h.bracket_basis(v[i], v[j]);
                    if is_zero_vector(br) {
                        continue;
                    }
                    let slots: Vec<Slot<'_>> = (0..=n)
                        .filter(|&p| p != i)
                        .map(|p| if p == j { Slot::Vector(br) } else { Slot::Basis(v[p]) })
                        .collect();
                    // slot i is v_{i+1}
                    axpy(&mut out, &sign(n + i), &f.eval_slots(&slots));
                }
            }
            out
        }))
    }

    /// `⟦θ, φ⟧` by direct evaluation of its three sums.
    pub fn derived_bracket(&self, theta: &MultiMap, phi: &MultiMap) -> Result<MultiMap> {
        self.check_cochain(theta)?;
        self.check_cochain(phi)?;
        let (m, n) = (theta.arity, phi.arity);
        self.check_cap(m + n)?;
        let g = self.action.source();
        let dg = self.g_dim();
        let rho_term = |outer: &MultiMap, inner: &MultiMap, v: &[usize], out: &mut Vector, prefactor: &dyn Fn(usize) -> usize| {
            let (a, b) = (outer.arity, inner.arity);
            for k in 1..=a {
                let pre = sign(prefactor(k));
                for s in shuffles(k - 1, b) {
                    let c = &pre * &shuffle_sign(&s);
                    let inner_args: Vec<Slot<'_>> = s.perm[k - 1..].iter().map(|&p| Slot::Basis(v[p])).collect();
                    let x = inner.eval_slots(&inner_args);
                    if is_zero_vector(&x) {
                        continue;
                    }
                    let acted = self.action.act(&x, &unit_vector(self.h_dim(), v[k + b - 1]));
                    if is_zero_vector(&acted) {
                        continue;
                    }
                    let mut args: Vec<Slot<'_>> = s.perm[..k - 1].iter().map(|&p| Slot::Basis(v[p])).collect();
                    args.push(Slot::Vector(&acted));
                    args.extend(v[k + b..].iter().map(|&p| Slot::Basis(p)));
                    axpy(out, &c, &outer.eval_slots(&args));
                }
            }
        };
        let mixed = shuffles(m, n);
        Ok(MultiMap::from_fn(m + n, self.h_dim(), dg, |v| {
            let mut out = zero_vector(dg);
            rho_term(theta, phi, v, &mut out, &|k| (k - 1) * n + 1);
            let pre = sign(m * n + 1);
            for s in &mixed {
                let a: Vec<Slot<'_>> = s.perm[..m].iter().map(|&p| Slot::Basis(v[p])).collect();
                let b: Vec<Slot<'_>> = s.perm[m..].iter().map(|&p| Slot::Basis(v[p])).collect();
                let x = theta.eval_slots(&a);
                let y = phi.eval_slots(&b);
                if is_zero_vector(&x) || is_zero_vector(&y) {
                    continue;
                }
                axpy(&mut out, &(&pre * &shuffle_sign(s)), &g.bracket(&x, &y));
            }
            rho_term(phi, theta, v, &mut out, &|k| m * (k + n - 1));
            out
        }))
    }

    /// `(−1)^{m−1}[[μ_g ⊞ ρ, θ]_B, φ]_B` on `g ⊕ h`, before restriction.
    pub fn derived_bracket_nested_full(&self, theta: &MultiMap, phi: &MultiMap) -> Result<MultiMap> {
        self.check_cochain(theta)?;
        self.check_cochain(phi)?;
        self.check_cap(theta.arity + phi.arity)?;
        let dg = self.g_dim();
        let inner = balavoine(&self.mu_g, &theta.embed_h_to_g(dg))?;
        let outer = balavoine(&inner, &phi.embed_h_to_g(dg))?;
        Ok(outer.scale(&sign(theta.arity - 1)))
    }

    /// `⟦θ, φ⟧` through nested Balavoine brackets, restricted to `h^⊗ → g`.
    pub fn derived_bracket_nested(&self, theta: &MultiMap, phi: &MultiMap) -> Result<MultiMap> {
        Ok(self
            .derived_bracket_nested_full(theta, phi)?
            .restrict_h_to_g(self.g_dim()))
    }

    /// `d_M` computed as `[μ_h, f]_B` on `g ⊕ h`, restricted.
    pub fn d_m_nested(&self, f: &MultiMap) -> Result<MultiMap> {
        self.check_cochain(f)?;
        self.check_cap(f.arity + 1)?;
        Ok(balavoine(&self.mu_h, &f.embed_h_to_g(self.g_dim()))?.restrict_h_to_g(self.g_dim()))
    }

    /// `[μ_g⊞ρ, μ_g⊞ρ]_B`, `[μ_h, μ_h]_B` and `[μ_g⊞ρ, μ_h]_B` all vanish.
    pub fn check_invariants(&self) -> Result<Report> {
        let mut report = Report::new("graded-context");
        let n = self.g_dim() + self.h_dim();
        let pairs = [
            ("mu-g-mu-g", &self.mu_g, &self.mu_g),
            ("mu-h-mu-h", &self.mu_h, &self.mu_h),
            ("mu-g-mu-h", &self.mu_g, &self.mu_h),
        ];
        for (law, a, b) in pairs {
            let r = balavoine(a, b)?;
            for_each_tuple(3, n, |idx| report.expect_zero(law, idx, r.value(idx).to_vec()));
        }
        Ok(report)
    }

    /// `d_M T + ½⟦T, T⟧`.
    pub fn mc_residual(&self, t: &MultiMap) -> Result<MultiMap> {
        let half = Rational::new(1, 2);
        self.d_m(t)?.add(&self.derived_bracket(t, t)?.scale(&half))
    }

    /// `d_T f = d_M f + ⟦T, f⟧`.
    pub fn d_t(&self, t: &TensorMap, f: &MultiMap) -> Result<MultiMap> {
        self.require_same_action(t)?;
        t.require_net()?;
        self.d_t_unchecked(&MultiMap::from_matrix(t.matrix()), f)
    }

    fn d_t_unchecked(&self, t: &MultiMap, f: &MultiMap) -> Result<MultiMap> {
        self.d_m(f)?.add(&self.derived_bracket(t, f)?)
    }

    fn require_same_action(&self, t: &TensorMap) -> Result<()> {
        if t.action() != &self.action {
            return Err(Error::DimensionMismatch("tensor is defined over a different action".into()));
        }
        Ok(())
    }
}

fn residual_report(check: &str, r: &MultiMap) -> Report {
    let mut report = Report::new(check);
    for_each_tuple(r.arity, r.domain_dim, |idx| {
        report.expect_zero("maurer-cartan", idx, r.value(idx).to_vec());
    });
    report
}

/// The Maurer-Cartan residual `d_M T + ½⟦T,T⟧` of a tensor, and its report.
pub fn mc_net_check(t: &TensorMap) -> Result<(MultiMap, Report)> {
    let ctx = GradedContext::new(t.action().clone());
    let r = ctx.mc_residual(&MultiMap::from_matrix(t.matrix()))?;
    let report = residual_report("mc-net", &r);
    Ok((r, report))
}

/// `d_T T' + ½⟦T', T'⟧ = 0` for a verified tensor `T`.
pub fn mc_deform_check(t: &TensorMap, t_prime: &Matrix) -> Result<(MultiMap, Report)> {
    t.require_net()?;
    if (t_prime.rows(), t_prime.cols()) != (t.matrix().rows(), t.matrix().cols()) {
        return Err(Error::DimensionMismatch("deformation has the wrong shape".into()));
    }
    let ctx = GradedContext::new(t.action().clone());
    let tp = MultiMap::from_matrix(t_prime);
    let half = Rational::new(1, 2);
    let r = ctx
        .d_t_unchecked(&MultiMap::from_matrix(t.matrix()), &tp)?
        .add(&ctx.derived_bracket(&tp, &tp)?.scale(&half))?;
    let report = residual_report("mc-deform", &r);
    Ok((r, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{check_leibniz, Flavor};
    use crate::fixtures::*;
    use crate::rational::{q, qi};
    use crate::tensor::{check_net, hemisemidirect};

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| qi(x)).collect()
    }

    #[test]
    fn shuffle_edge_cases() {
        assert_eq!(shuffles(0, 3), vec![Shuffle { perm: vec![0, 1, 2], sign: 1 }]);
        assert_eq!(shuffles(3, 0), vec![Shuffle { perm: vec![0, 1, 2], sign: 1 }]);
        let s = shuffles(1, 1);
        assert_eq!(s.len(), 2);
        assert_eq!((s[0].sign, s[1].sign), (1, -1));
        assert_eq!(shuffles(2, 3).len(), 10);
        assert_eq!(shuffles(0, 0).len(), 1);
    }

    #[test]
    fn tuples_in_lex_order() {
        let mut seen = Vec::new();
        for_each_tuple(2, 2, |i| seen.push(i.to_vec()));
        assert_eq!(seen, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        let mut count = 0;
        for_each_tuple(0, 5, |_| count += 1);
        assert_eq!(count, 1);
    }

    #[test]
    fn multimap_json_round_trip() {
        let m = MultiMap::from_fn(2, 2, 1, |i| vec![q(i[0] as i64 + 1, (i[1] + 2) as i64)]);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"arity":2,"domainDim":2,"codomainDim":1,"coeffs":[[["1/2"],["1/3"]],[[1],["2/3"]]]}"#);
        let back: MultiMap = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        let bad = r#"{"arity":1,"domainDim":2,"codomainDim":1,"coeffs":[[1]]}"#;
        assert!(serde_json::from_str::<MultiMap>(bad).is_err());
    }

    #[test]
    fn eval_is_multilinear() {
        let m = MultiMap::from_algebra(&heisenberg());
        let r = m.eval(&[v(&[1, 2, 0]), v(&[3, 1, 5])]);
        assert_eq!(r, v(&[0, 0, 1 - 6]));
    }

    #[test]
    fn matrix_round_trip() {
        let t = example_net();
        assert_eq!(&MultiMap::from_matrix(t.matrix()).to_matrix().unwrap(), t.matrix());
    }

    #[test]
    fn half_bracket_expansion() {
        let a = sl2_like();
        let o = MultiMap::from_algebra(&a);
        let b = balavoine(&o, &o).unwrap();
        let oo = |x: &Vector, y: &Vector| o.eval(&[x.clone(), y.clone()]);
        for_each_tuple(3, 3, |idx| {
            let [x1, x2, x3] = [0, 1, 2].map(|p| unit_vector(3, idx[p]));
            let mut want = oo(&oo(&x1, &x2), &x3);
            axpy(&mut want, &qi(-1), &oo(&x1, &oo(&x2, &x3)));
            axpy(&mut want, &qi(1), &oo(&x2, &oo(&x1, &x3)));
            let got: Vector = b.value(idx).iter().map(|x| x * &q(1, 2)).collect();
            assert_eq!(got, want);
        });
    }

    #[test]
    fn mc_matches_leibniz_on_examples() {
        let h = MultiMap::from_algebra(&heisenberg());
        assert!(mc_leibniz_check(&h).unwrap().passed());
        let hs = MultiMap::from_algebra(&hemisemidirect(&heisenberg_adjoint()).unwrap());
        assert!(mc_leibniz_check(&hs).unwrap().passed());
        let bad = Algebra::from_brackets("bad", 2, Flavor::Unchecked, &[(0, 0, v(&[0, 1])), (1, 0, v(&[1, 0]))], false).unwrap();
        assert!(!check_leibniz(&bad).passed());
        assert!(!mc_leibniz_check(&MultiMap::from_algebra(&bad)).unwrap().passed());
    }

    #[test]
    fn balavoine_with_zero() {
        let o = MultiMap::from_algebra(&sl2_like());
        assert!(balavoine(&o, &MultiMap::zero(3, 3, 3)).unwrap().is_zero());
        assert!(balavoine(&o, &MultiMap::zero(2, 3, 2)).is_err());
    }

    #[test]
    fn d_m_in_degree_one() {
        let ctx = GradedContext::new(heisenberg_adjoint());
        let f = MultiMap::from_matrix(example_net().matrix());
        let d = ctx.d_m(&f).unwrap();
        // −f([e1, e2]) = −f(e3) = 0 here; use a map with f(e3) ≠ 0 instead
        assert!(d.is_zero());
        let g = MultiMap::from_matrix(&Matrix::from_i64(&[&[0, 0, 1], &[0, 0, 2], &[0, 0, 0]]));
        let d = ctx.d_m(&g).unwrap();
        assert_eq!(d.value(&[0, 1]), &v(&[-1, -2, 0])[..]);
        assert_eq!(d.value(&[1, 0]), &v(&[1, 2, 0])[..]);
        assert_eq!(ctx.d_m_nested(&g).unwrap(), d);
    }

    #[test]
    fn d_m_vanishes_on_abelian() {
        let a = Algebra::abelian("a3", 3);
        let ctx = GradedContext::new(crate::tensor::ActionMap::zero(&heisenberg(), &a));
        let f = MultiMap::from_fn(2, 3, 3, |i| v(&[i[0] as i64, i[1] as i64, 1]));
        assert!(ctx.d_m(&f).unwrap().is_zero());
    }

    #[test]
    fn derived_bracket_of_tensor_with_itself() {
        let ctx = GradedContext::new(heisenberg_adjoint());
        let t = example_net();
        let tm = MultiMap::from_matrix(t.matrix());
        let b = ctx.derived_bracket(&tm, &tm).unwrap();
        let g = t.g();
        for_each_tuple(2, 3, |idx| {
            let (tu, tv) = (t.image_of_basis(idx[0]), t.image_of_basis(idx[1]));
            let mut want = g.bracket(&tu, &tv);
            axpy(&mut want, &qi(-1), &t.apply(&t.action().act(&tu, &unit_vector(3, idx[1]))));
            let want: Vector = want.iter().map(|x| x * &qi(2)).collect();
            assert_eq!(b.value(idx), &want[..]);
        });
        assert_eq!(ctx.derived_bracket_nested(&tm, &tm).unwrap(), b);
    }

    #[test]
    fn mc_residual_matches_expansion() {
        let t = heisenberg_tensor([[qi(1), qi(2), qi(0)], [qi(0), qi(1), qi(1)], [qi(3), qi(0), qi(1)]]);
        let (r, report) = mc_net_check(&t).unwrap();
        assert!(!report.passed());
        assert!(!check_net(&t).passed());
        for_each_tuple(2, 3, |idx| {
            assert_eq!(r.value(idx), &crate::tensor::net_residual(&t, idx[0], idx[1])[..]);
        });
        assert!(mc_net_check(&example_net()).unwrap().1.passed());
    }

    #[test]
    fn invariants_for_heisenberg() {
        assert!(GradedContext::new(heisenberg_adjoint()).check_invariants().unwrap().passed());
    }

    #[test]
    fn arity_cap_is_enforced() {
        let ctx = GradedContext::with_arity_cap(heisenberg_adjoint(), 2);
        let f = MultiMap::zero(2, 3, 3);
        assert!(matches!(ctx.d_m(&f), Err(Error::ArityCapExceeded { arity: 3, cap: 2 })));
    }

    #[test]
    fn d_t_squares_to_zero_on_example() {
        let t = example_net();
        let ctx = GradedContext::new(t.action().clone());
        let f = MultiMap::from_fn(1, 3, 3, |i| v(&[1, i[0] as i64, 2]));
        let once = ctx.d_t(&t, &f).unwrap();
        assert!(ctx.d_t(&t, &once).unwrap().is_zero());
        let z = TensorMap::zero(heisenberg_adjoint());
        assert_eq!(ctx.d_t(&z, &f).unwrap(), ctx.d_m(&f).unwrap());
    }

    #[test]
    fn mc_deform_zero_and_family() {
        let t = example_net();
        assert!(mc_deform_check(&t, &Matrix::zeros(3, 3)).unwrap().1.passed());
        let tp = Matrix::from_i64(&[&[0, 0, 0], &[1, 0, 0], &[0, 0, 0]]);
        let sum = t.with_matrix(t.matrix().add(&tp)).unwrap();
        assert_eq!(mc_deform_check(&t, &tp).unwrap().1.passed(), check_net(&sum).passed());
    }
}
