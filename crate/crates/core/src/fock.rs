//! The q-deformed Clifford algebra on `Lambda(V)` and `Lambda(V) (x) Lambda(V)`,
//! the induced `U'_q(g)` generators, and exact checks that the module induces
//! the combinatorial crystals.
//!
//! Basis vectors are indexed like crystal elements: a monomial
//! `psi_nbar^{m_n} ... psi_1bar^{m_1} |0>` has index bit `n-a` set iff
//! `m_a = 1`, and the tensor product uses `i1 | i2 << n`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Signed;
use rayon::prelude::*;
use serde::Serialize;

use crate::cartan::{cartan_data, AffineType, CartanData, DiamondShape, KacLabel};
use crate::crystal::{delta_word, v_kl, CrystalOps};
use crate::error::{Error, Result};
use crate::laurent::{LaurentScalar, RationalScalar, Scalar};

/// Sparse square matrix stored by columns; zero entries are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseOperator<S> {
    dim: usize,
    cols: Vec<BTreeMap<usize, S>>,
}

impl<S: Scalar> SparseOperator<S> {
    pub fn zero(dim: usize) -> Self {
        Self { dim, cols: vec![BTreeMap::new(); dim] }
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal((0..dim).map(|_| S::one()).collect())
    }

    pub fn diagonal(entries: Vec<S>) -> Self {
        let mut op = Self::zero(entries.len());
        for (j, s) in entries.into_iter().enumerate() {
            op.add_entry(j, j, s);
        }
        op
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn add_entry(&mut self, row: usize, col: usize, s: S) {
        if s.is_zero() {
            return;
        }
        let col = &mut self.cols[col];
        let sum = match col.get(&row) {
            Some(old) => old.add(&s),
            None => s,
        };
        if sum.is_zero() {
            col.remove(&row);
        } else {
            col.insert(row, sum);
        }
    }

    pub fn get(&self, row: usize, col: usize) -> Option<&S> {
        self.cols[col].get(&row)
    }

    pub fn column(&self, col: usize) -> &BTreeMap<usize, S> {
        &self.cols[col]
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &S)> {
        self.cols.iter().enumerate().flat_map(|(c, col)| col.iter().map(move |(&r, s)| (r, c, s)))
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(BTreeMap::is_empty)
    }

    /// `self * rhs`, i.e. apply `rhs` first.
    pub fn compose(&self, rhs: &Self) -> Self {
        let mut out = Self::zero(self.dim);
        for (c, col) in rhs.cols.iter().enumerate() {
            for (k, b) in col {
                for (r, a) in &self.cols[*k] {
                    out.add_entry(*r, c, a.mul(b));
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (r, c, s) in rhs.entries() {
            out.add_entry(r, c, s.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(&S::one().neg()))
    }

    pub fn scale(&self, s: &S) -> Self {
        let mut out = Self::zero(self.dim);
        for (r, c, x) in self.entries() {
            out.add_entry(r, c, s.mul(x));
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.dim);
        for (r, c, x) in self.entries() {
            out.add_entry(c, r, x.clone());
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::identity(self.dim), |acc, _| self.compose(&acc))
    }

    /// `a (x) b` with `a` on the low index bits.
    pub fn kron(a: &Self, b: &Self) -> Self {
        let mut out = Self::zero(a.dim * b.dim);
        for (r2, c2, y) in b.entries() {
            for (r1, c1, x) in a.entries() {
                out.add_entry(r1 + a.dim * r2, c1 + a.dim * c2, x.mul(y));
            }
        }
        out
    }

    pub fn apply(&self, v: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.dim];
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, a) in &self.cols[c] {
                out[*r] = out[*r].add(&a.mul(x));
            }
        }
        out
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> SparseOperator<T> {
        let mut out = SparseOperator::zero(self.dim);
        for (r, c, x) in self.entries() {
            out.add_entry(r, c, f(x));
        }
        out
    }
}

type Op = SparseOperator<LaurentScalar>;
type ROp = SparseOperator<RationalScalar>;
/// Sign discrepancy `(node, operator, source, target)`.
type SignNote = (usize, char, usize, usize);
type CrystalStep = fn(&CrystalOps, usize, u64) -> Option<u64>;

fn qs(e: i64) -> LaurentScalar {
    LaurentScalar::q_pow(e)
}

/// `psi_a`, `psi*_a`, `omega_a^{+-1}` on `Lambda(V)`, stored at index `a-1`.
#[derive(Debug, Clone)]
pub struct CliffordOps {
    pub n: usize,
    pub q_exp: i64,
    pub psi: Vec<Op>,
    pub psi_star: Vec<Op>,
    pub omega: Vec<Op>,
    pub omega_inv: Vec<Op>,
}

impl CliffordOps {
    pub fn psi(&self, a: usize) -> &Op {
        &self.psi[a - 1]
    }
    pub fn psi_star(&self, a: usize) -> &Op {
        &self.psi_star[a - 1]
    }
    pub fn omega(&self, a: usize) -> &Op {
        &self.omega[a - 1]
    }
    pub fn omega_inv(&self, a: usize) -> &Op {
        &self.omega_inv[a - 1]
    }
}

/// Clifford generators with `q = qs^q_exp`. `omega_a` acts by `q^{m_a - 1}`.
pub fn clifford_ops(n: usize, q_exp: i64) -> CliffordOps {
    let dim = 1usize << n;
    let bit = |a: usize| 1usize << (n - a);
    let sign = |bits: usize, a: usize| {
        if (bits & (bit(a) - 1)).count_ones().is_multiple_of(2) {
            LaurentScalar::one()
        } else {
            LaurentScalar::from_int(-1)
        }
    };
    let mut psi = Vec::new();
    let mut psi_star = Vec::new();
    let mut omega = Vec::new();
    let mut omega_inv = Vec::new();
    for a in 1..=n {
        let mut p = Op::zero(dim);
        let mut ps = Op::zero(dim);
        for m in 0..dim {
            if m & bit(a) == 0 {
                p.add_entry(m | bit(a), m, sign(m, a));
            } else {
                ps.add_entry(m & !bit(a), m, sign(m, a));
            }
        }
        psi.push(p);
        psi_star.push(ps);
        let ex = |m: usize| if m & bit(a) == 0 { -q_exp } else { 0 };
        omega.push(Op::diagonal((0..dim).map(|m| qs(ex(m))).collect()));
        omega_inv.push(Op::diagonal((0..dim).map(|m| qs(-ex(m))).collect()));
    }
    CliffordOps { n, q_exp, psi, psi_star, omega, omega_inv }
}

/// Images of `e_i, f_i, t_i, t_i^{-1}` for all `i`.
#[derive(Debug, Clone)]
pub struct Representation {
    pub affine_type: AffineType,
    pub cartan: CartanData,
    pub copies: usize,
    pub dim: usize,
    e: Vec<Op>,
    f: Vec<Op>,
    t: Vec<Op>,
    t_inv: Vec<Op>,
}

struct Gens {
    e: Op,
    f: Op,
    t: Op,
    t_inv: Op,
}

/// Parity `(-1)^{deg}` on `Lambda(V)`.
fn parity(n: usize) -> Op {
    Op::diagonal((0..1usize << n).map(|m| LaurentScalar::from_int(if m.count_ones() % 2 == 0 { 1 } else { -1 })).collect())
}

/// Odd end generators twisted by the parity, `e -> e P`, `f -> P f`, so
/// they commute with the odd generators of the opposite end.
fn twisted(g: Gens, p: &Op) -> Gens {
    Gens { e: g.e.compose(p), f: p.compose(&g.f), t: g.t, t_inv: g.t_inv }
}

fn single_copy_gens(cl: &CliffordOps, cd: &CartanData, i: usize, shape: Option<DiamondShape>) -> Gens {
    let n = cl.n;
    let qi = cd.qi_exp[i];
    let c = |x: &Op, y: &Op| x.compose(y);
    match (i, shape) {
        (0, Some(DiamondShape::S1)) => Gens {
            e: cl.psi(1).clone(),
            f: cl.psi_star(1).clone(),
            t: cl.omega(1).scale(&qs(qi)),
            t_inv: cl.omega_inv(1).scale(&qs(-qi)),
        },
        (0, Some(DiamondShape::S11)) => Gens {
            e: c(cl.psi(1), cl.psi(2)),
            f: c(cl.psi_star(2), cl.psi_star(1)),
            t: c(cl.omega(1), cl.omega(2)).scale(&qs(qi)),
            t_inv: c(cl.omega_inv(1), cl.omega_inv(2)).scale(&qs(-qi)),
        },
        (_, Some(DiamondShape::S1)) => Gens {
            e: cl.psi_star(n).clone(),
            f: cl.psi(n).clone(),
            t: cl.omega_inv(n).scale(&qs(-qi)),
            t_inv: cl.omega(n).scale(&qs(qi)),
        },
        (_, Some(DiamondShape::S11)) => Gens {
            e: c(cl.psi_star(n), cl.psi_star(n - 1)),
            f: c(cl.psi(n - 1), cl.psi(n)),
            t: c(cl.omega_inv(n), cl.omega_inv(n - 1)).scale(&qs(-qi)),
            t_inv: c(cl.omega(n), cl.omega(n - 1)).scale(&qs(qi)),
        },
        (_, Some(DiamondShape::S2)) => unreachable!("handled on the tensor square"),
        (_, None) => Gens {
            e: c(cl.psi(i + 1), cl.psi_star(i)),
            f: c(cl.psi(i), cl.psi_star(i + 1)),
            t: c(cl.omega(i + 1), cl.omega_inv(i)),
            t_inv: c(cl.omega_inv(i + 1), cl.omega(i)),
        },
    }
}

fn double_end_gens(cl: &CliffordOps, cd: &CartanData, i: usize) -> Gens {
    let n = cl.n;
    let qi = cd.qi_exp[i];
    let ex = (cd.qi_exp[i] / cd.qi_exp[1]) as u32;
    let k = |a: &Op, b: &Op| Op::kron(a, b);
    if i == 0 {
        let w = k(cl.omega(1), cl.omega(1)).pow(ex);
        let wi = k(cl.omega_inv(1), cl.omega_inv(1)).pow(ex);
        Gens {
            e: k(cl.psi(1), cl.psi(1)),
            f: k(cl.psi_star(1), cl.psi_star(1)),
            t: w.scale(&qs(qi)),
            t_inv: wi.scale(&qs(-qi)),
        }
    } else {
        let w = k(cl.omega(n), cl.omega(n)).pow(ex);
        let wi = k(cl.omega_inv(n), cl.omega_inv(n)).pow(ex);
        Gens {
            e: k(cl.psi_star(n), cl.psi_star(n)),
            f: k(cl.psi(n), cl.psi(n)),
            t: wi.scale(&qs(-qi)),
            t_inv: w.scale(&qs(qi)),
        }
    }
}

/// Generator images on `Lambda(V)^{(x) N}`, with `N` fixed by the diamond
/// pair.
pub fn representation(t: &AffineType) -> Representation {
    let cd = cartan_data(t);
    let n = t.n;
    let cl = clifford_ops(n, cd.clifford_exp());
    let copies = t.copies();
    let one = Op::identity(1 << n);
    let p = parity(n);
    let (d0, dn) = t.diamond();
    let odd = |s: DiamondShape| s != DiamondShape::S11;
    let twist = |i: usize| {
        (i == n && dn == DiamondShape::S1 && odd(d0)) || (i == 0 && d0 == DiamondShape::S1 && dn == DiamondShape::S2)
    };
    let gens: Vec<Gens> = (0..=n)
        .map(|i| {
            let shape = t.end_shape(i);
            let single = || {
                let g = single_copy_gens(&cl, &cd, i, shape);
                if twist(i) {
                    twisted(g, &p)
                } else {
                    g
                }
            };
            if copies == 1 {
                single()
            } else if shape == Some(DiamondShape::S2) {
                double_end_gens(&cl, &cd, i)
            } else {
                let g = single();
                Gens {
                    e: Op::kron(&g.e, &g.t_inv).add(&Op::kron(&one, &g.e)),
                    f: Op::kron(&g.f, &one).add(&Op::kron(&g.t, &g.f)),
                    t: Op::kron(&g.t, &g.t),
                    t_inv: Op::kron(&g.t_inv, &g.t_inv),
                }
            }
        })
        .collect();
    let mut rep = Representation {
        affine_type: *t,
        cartan: cd,
        copies,
        dim: 1 << (n * copies),
        e: Vec::new(),
        f: Vec::new(),
        t: Vec::new(),
        t_inv: Vec::new(),
    };
    for g in gens {
        rep.e.push(g.e);
        rep.f.push(g.f);
        rep.t.push(g.t);
        rep.t_inv.push(g.t_inv);
    }
    rep
}

impl Representation {
    pub fn n(&self) -> usize {
        self.affine_type.n
    }
    pub fn e(&self, i: usize) -> &Op {
        &self.e[i]
    }
    pub fn f(&self, i: usize) -> &Op {
        &self.f[i]
    }
    pub fn t(&self, i: usize) -> &Op {
        &self.t[i]
    }
    pub fn t_inv(&self, i: usize) -> &Op {
        &self.t_inv[i]
    }
    pub fn q_exp(&self, i: usize) -> i64 {
        self.cartan.qi_exp[i]
    }

    /// `<h_i, wt>` read off the diagonal of each `T_i`; `None` if some
    /// `T_i` is not diagonal with monomial entries in powers of `q_i`.
    pub fn basis_weight(&self, b: usize) -> Option<Vec<i64>> {
        (0..=self.n())
            .map(|i| {
                let col = self.t[i].column(b);
                if col.len() != 1 {
                    return None;
                }
                let (r, x) = col.iter().next()?;
                let (c, e) = x.as_monomial()?;
                let qi = self.q_exp(i);
                (*r == b && c == &num_rational::BigRational::from_integer(1.into()) && e % qi == 0).then(|| e / qi)
            })
            .collect()
    }

    /// Basis indices grouped by weight.
    pub fn weight_spaces(&self) -> Result<BTreeMap<Vec<i64>, Vec<usize>>> {
        let mut out: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
        for b in 0..self.dim {
            let w = self
                .basis_weight(b)
                .ok_or_else(|| Error::DomainViolation(format!("basis vector {b} is not a weight vector")))?;
            out.entry(w).or_default().push(b);
        }
        Ok(out)
    }
}

/// One named check inside a [`FockReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckItem {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FockReport {
    pub check: String,
    pub affine_type: String,
    pub n: usize,
    pub passed: bool,
    pub items: Vec<CheckItem>,
    /// Entries equal to `-1` at `qs = 0`, as `(color, op, row, col)`.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub negative_signs: Vec<(usize, char, usize, usize)>,
}

impl FockReport {
    fn new(check: &str, t: &AffineType, items: Vec<CheckItem>) -> Self {
        Self {
            check: check.to_string(),
            affine_type: t.label.cli_name().to_string(),
            n: t.n,
            passed: items.iter().all(|c| c.passed),
            items,
            negative_signs: Vec::new(),
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckItem> {
        self.items.iter().filter(|c| !c.passed)
    }
}

fn item(name: String, passed: bool, detail: Option<String>) -> CheckItem {
    CheckItem { name, passed, detail }
}

fn serre(rep: &Representation, x: &[Op], i: usize, j: usize) -> Op {
    let aij = rep.cartan.matrix[i][j];
    let m = (1 - aij) as u32;
    let qi = rep.q_exp(i);
    let mut sum = Op::zero(rep.dim);
    for k in 0..=m {
        let coeff = LaurentScalar::q_binomial(m as i64, k as i64, qi);
        let coeff = if k % 2 == 0 { coeff } else { -&coeff };
        let term = x[i].pow(k).compose(&x[j]).compose(&x[i].pow(m - k));
        sum = sum.add(&term.scale(&coeff));
    }
    sum
}

/// Every defining relation as an exact operator identity, plus the weight
/// compatibility of the monomial basis with the crystal.
pub fn verify_relations(rep: &Representation) -> FockReport {
    let n = rep.n();
    let dim = rep.dim;
    let one = &Op::identity(dim);
    let mut jobs: Vec<(String, Box<dyn Fn() -> bool + Sync + '_>)> = Vec::new();
    for i in 0..=n {
        jobs.push((format!("T{i} T{i}^-1 = 1"), Box::new(move || rep.t(i).compose(rep.t_inv(i)) == *one)));
        for j in 0..=n {
            jobs.push((
                format!("T{i} T{j} = T{j} T{i}"),
                Box::new(move || rep.t(i).compose(rep.t(j)) == rep.t(j).compose(rep.t(i))),
            ));
            let a = rep.cartan.matrix[i][j];
            let qi = rep.q_exp(i);
            jobs.push((
                format!("T{i} E{j} T{i}^-1 = q{i}^{a} E{j}"),
                Box::new(move || rep.t(i).compose(rep.e(j)).compose(rep.t_inv(i)) == rep.e(j).scale(&qs(qi * a))),
            ));
            jobs.push((
                format!("T{i} F{j} T{i}^-1 = q{i}^{} F{j}", -a),
                Box::new(move || rep.t(i).compose(rep.f(j)).compose(rep.t_inv(i)) == rep.f(j).scale(&qs(-qi * a))),
            ));
            jobs.push((
                format!("[E{i}, F{j}]"),
                Box::new(move || {
                    let comm = rep.e(i).compose(rep.f(j)).sub(&rep.f(j).compose(rep.e(i)));
                    if i == j {
                        let lhs = comm.scale(&(&qs(qi) - &qs(-qi)));
                        lhs == rep.t(i).sub(rep.t_inv(i))
                    } else {
                        comm.is_zero()
                    }
                }),
            ));
            if i != j {
                jobs.push((format!("Serre E{i} E{j}"), Box::new(move || serre(rep, &rep.e, i, j).is_zero())));
                jobs.push((format!("Serre F{i} F{j}"), Box::new(move || serre(rep, &rep.f, i, j).is_zero())));
            }
        }
    }
    let mut items: Vec<CheckItem> = jobs.par_iter().map(|(name, job)| item(name.clone(), job(), None)).collect();
    let ops = CrystalOps::new(rep.affine_type);
    let bad: Vec<usize> = (0..dim).filter(|&b| rep.basis_weight(b) != Some(ops.weight(b as u64).0)).collect();
    items.push(item(
        "monomial weights equal crystal weights".to_string(),
        bad.is_empty(),
        (!bad.is_empty()).then(|| format!("{} basis vectors differ, first {}", bad.len(), bad[0])),
    ));
    FockReport::new("relations", &rep.affine_type, items)
}

/// `transpose(M(x)) = M(eta(x))` for the identity Gram matrix, with
/// `eta(e_i) = q_i^{-1} t_i^{-1} f_i`, `eta(f_i) = q_i^{-1} t_i e_i`,
/// `eta(t_i) = t_i`.
pub fn verify_polarization(rep: &Representation) -> FockReport {
    let items = (0..=rep.n())
        .into_par_iter()
        .flat_map_iter(|i| {
            let qi = qs(-rep.q_exp(i));
            let eta_e = rep.t_inv(i).compose(rep.f(i)).scale(&qi);
            let eta_f = rep.t(i).compose(rep.e(i)).scale(&qi);
            [
                item(format!("eta(E{i})"), rep.e(i).transpose() == eta_e, None),
                item(format!("eta(F{i})"), rep.f(i).transpose() == eta_f, None),
                item(format!("eta(T{i})"), rep.t(i).transpose() == *rep.t(i), None),
            ]
        })
        .collect();
    FockReport::new("polarization", &rep.affine_type, items)
}

mod linalg {
    use super::*;

    pub type Mat = Vec<Vec<RationalScalar>>;

    /// Basis of `{x : m x = 0}` for an `r x c` matrix.
    #[allow(clippy::needless_range_loop)]
    pub fn nullspace(m: &Mat, cols: usize) -> Vec<Vec<RationalScalar>> {
        let mut a: Mat = m.clone();
        let mut pivots: Vec<usize> = Vec::new();
        let mut row = 0;
        for col in 0..cols {
            let Some(p) = (row..a.len()).find(|&r| !a[r][col].is_zero()) else { continue };
            a.swap(row, p);
            let inv = a[row][col].inv().expect("nonzero pivot");
            for x in a[row].iter_mut() {
                *x = &*x * &inv;
            }
            for r in 0..a.len() {
                if r != row && !a[r][col].is_zero() {
                    let factor = a[r][col].clone();
                    for c in 0..cols {
                        if !a[row][c].is_zero() {
                            a[r][c] = &a[r][c] - &(&factor * &a[row][c]);
                        }
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![RationalScalar::zero(); cols];
                v[fc] = RationalScalar::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -&a[r][fc];
                }
                v
            })
            .collect()
    }

    #[allow(clippy::needless_range_loop)]
    pub fn inverse(m: &Mat) -> Option<Mat> {
        let d = m.len();
        let mut a: Mat = m
            .iter()
            .enumerate()
            .map(|(r, row)| {
                let mut v = row.clone();
                v.extend((0..d).map(|c| if c == r { RationalScalar::one() } else { RationalScalar::zero() }));
                v
            })
            .collect();
        for col in 0..d {
            let p = (col..d).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, p);
            let inv = a[col][col].inv().ok()?;
            for x in a[col].iter_mut() {
                *x = &*x * &inv;
            }
            for r in 0..d {
                if r != col && !a[r][col].is_zero() {
                    let factor = a[r][col].clone();
                    for c in 0..2 * d {
                        if !a[col][c].is_zero() {
                            a[r][c] = &a[r][c] - &(&factor * &a[col][c]);
                        }
                    }
                }
            }
        }
        Some(a.into_iter().map(|row| row[d..].to_vec()).collect())
    }
}

fn to_rational(op: &Op) -> ROp {
    op.map(|x| RationalScalar::from(x.clone()))
}

fn add_weights(a: &[i64], b: &[i64], k: i64) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + k * y).collect()
}

/// `x^{(m)} v`.
fn divided_power(x: &ROp, m: i64, qi: i64, v: &[RationalScalar]) -> Vec<RationalScalar> {
    let mut out = v.to_vec();
    for _ in 0..m {
        out = x.apply(&out);
    }
    let fact = RationalScalar::from(LaurentScalar::q_factorial(m, qi)).inv().expect("nonzero factorial");
    out.iter().map(|x| x * &fact).collect()
}

/// Modified root operators `(e~_i, f~_i)` computed from the `i`-string
/// decomposition on each weight space.
#[derive(Debug, Clone)]
pub struct KashiwaraPair {
    pub e: ROp,
    pub f: ROp,
}

pub fn kashiwara_from_module(rep: &Representation, i: usize) -> Result<KashiwaraPair> {
    let spaces = rep.weight_spaces()?;
    let alpha = rep.cartan.root_column(i);
    let qi = rep.q_exp(i);
    let dim = rep.dim;
    let e = to_rational(rep.e(i));
    let f = to_rational(rep.f(i));
    let embed = |idx: &[usize], local: &[RationalScalar]| {
        let mut v = vec![RationalScalar::zero(); dim];
        for (&b, x) in idx.iter().zip(local) {
            v[b] = x.clone();
        }
        v
    };
    // Kernel of E_i on each weight space, as full vectors.
    let mut kernels: BTreeMap<Vec<i64>, Vec<Vec<RationalScalar>>> = BTreeMap::new();
    for (w, idx) in &spaces {
        let up = add_weights(w, &alpha, 1);
        let basis: Vec<Vec<RationalScalar>> = match spaces.get(&up) {
            None => idx.iter().map(|&b| embed(&[b], &[RationalScalar::one()])).collect(),
            Some(up_idx) => {
                let m: linalg::Mat = up_idx
                    .iter()
                    .map(|&r| idx.iter().map(|&c| e.get(r, c).cloned().unwrap_or_else(RationalScalar::zero)).collect())
                    .collect();
                linalg::nullspace(&m, idx.len()).iter().map(|v| embed(idx, v)).collect()
            }
        };
        kernels.insert(w.clone(), basis);
    }
    let mut out_e = ROp::zero(dim);
    let mut out_f = ROp::zero(dim);
    for (w, idx) in &spaces {
        let mut cols: Vec<Vec<RationalScalar>> = Vec::new();
        let mut lowered: Vec<Vec<RationalScalar>> = Vec::new();
        let mut raised: Vec<Vec<RationalScalar>> = Vec::new();
        let mut r = 0i64;
        loop {
            let nu = add_weights(w, &alpha, r);
            let Some(ks) = kernels.get(&nu) else { break };
            for k in ks {
                let col = divided_power(&f, r, qi, k);
                if col.iter().all(|x| x.is_zero()) {
                    continue;
                }
                cols.push(col);
                raised.push(if r == 0 { vec![RationalScalar::zero(); dim] } else { divided_power(&f, r - 1, qi, k) });
                lowered.push(divided_power(&f, r + 1, qi, k));
            }
            r += 1;
        }
        let c: linalg::Mat = idx.iter().map(|&b| cols.iter().map(|col| col[b].clone()).collect()).collect();
        if cols.len() != idx.len() {
            return Err(Error::SingularChangeOfBasis(format!("{w:?}: {} string vectors for dimension {}", cols.len(), idx.len())));
        }
        let cinv = linalg::inverse(&c).ok_or_else(|| Error::SingularChangeOfBasis(format!("{w:?}")))?;
        for (j, &b) in idx.iter().enumerate() {
            for (s, row) in cinv.iter().enumerate() {
                let coeff = &row[j];
                if coeff.is_zero() {
                    continue;
                }
                for (target, img) in [(&mut out_e, &raised[s]), (&mut out_f, &lowered[s])] {
                    for (rr, x) in img.iter().enumerate() {
                        if !x.is_zero() {
                            target.add_entry(rr, b, x * coeff);
                        }
                    }
                }
            }
        }
    }
    Ok(KashiwaraPair { e: out_e, f: out_f })
}

/// Regularity of the module's modified root operators and agreement at
/// `qs = 0` with the combinatorial operators up to sign.
pub fn lattice_and_crystal_match(rep: &Representation) -> FockReport {
    let ops = CrystalOps::new(rep.affine_type);
    let results: Vec<(Vec<CheckItem>, Vec<SignNote>)> = (0..=rep.n())
        .into_par_iter()
        .map(|i| {
            let pair = match kashiwara_from_module(rep, i) {
                Ok(p) => p,
                Err(e) => return (vec![item(format!("extract {i}"), false, Some(e.to_string()))], Vec::new()),
            };
            let mut items = Vec::new();
            let mut signs = Vec::new();
            for (name, op) in [('e', &pair.e), ('f', &pair.f)] {
                let irregular = op.entries().filter(|(_, _, x)| !x.is_regular()).count();
                items.push(item(
                    format!("{name}~{i} entries regular"),
                    irregular == 0,
                    (irregular > 0).then(|| format!("{irregular} entries with a pole")),
                ));
                let mut mismatches = Vec::new();
                for b in 0..rep.dim {
                    let expected = if name == 'e' { ops.e(i, b as u64) } else { ops.f(i, b as u64) };
                    let at_zero: Vec<(usize, num_rational::BigRational)> = op
                        .column(b)
                        .iter()
                        .filter_map(|(&r, x)| x.eval_at_zero().ok().filter(|v| !num_traits::Zero::is_zero(v)).map(|v| (r, v)))
                        .collect();
                    let ok = match expected {
                        None => at_zero.is_empty(),
                        Some(t) => at_zero.len() == 1 && at_zero[0].0 == t as usize && {
                            let v = &at_zero[0].1;
                            let one = num_rational::BigRational::from_integer(1.into());
                            if *v == -one.clone() {
                                signs.push((i, name, t as usize, b));
                            }
                            *v == one || *v == -one
                        },
                    };
                    if !ok {
                        mismatches.push(b);
                    }
                }
                items.push(item(
                    format!("{name}~{i} at qs=0 equals crystal"),
                    mismatches.is_empty(),
                    (!mismatches.is_empty()).then(|| {
                        format!("{} columns differ, first {}", mismatches.len(), ops.element(mismatches[0] as u64).text())
                    }),
                ));
            }
            (items, signs)
        })
        .collect();
    let mut items = Vec::new();
    let mut signs = Vec::new();
    for (it, sg) in results {
        items.extend(it);
        signs.extend(sg);
    }
    let mut rep_out = FockReport::new("crystal-match", &rep.affine_type, items);
    rep_out.negative_signs = signs;
    rep_out
}

/// Kernel of `E_1, ..., E_n` on one weight space, as full vectors.
pub fn highest_vectors(rep: &Representation, weight: &[i64]) -> Result<Vec<Vec<RationalScalar>>> {
    let spaces = rep.weight_spaces()?;
    let Some(idx) = spaces.get(weight) else { return Ok(Vec::new()) };
    let mut rows: linalg::Mat = Vec::new();
    for i in 1..=rep.n() {
        let e = rep.e(i);
        let targets: BTreeSet<usize> = idx.iter().flat_map(|&c| e.column(c).keys().copied()).collect();
        for r in targets {
            rows.push(
                idx.iter()
                    .map(|&c| e.get(r, c).map(|x| RationalScalar::from(x.clone())).unwrap_or_else(RationalScalar::zero))
                    .collect(),
            );
        }
    }
    let local = linalg::nullspace(&rows, idx.len());
    Ok(local
        .into_iter()
        .map(|v| {
            let mut full = vec![RationalScalar::zero(); rep.dim];
            for (&b, x) in idx.iter().zip(v) {
                full[b] = x;
            }
            full
        })
        .collect())
}

/// Re-express `basis` so its coordinates on `support` form the identity.
fn normalize_on(basis: &[Vec<RationalScalar>], support: &[usize]) -> Option<Vec<Vec<RationalScalar>>> {
    let p: linalg::Mat = basis.iter().map(|v| support.iter().map(|&s| v[s].clone()).collect()).collect();
    let pinv = linalg::inverse(&p)?;
    Some(
        (0..support.len())
            .map(|h| {
                let mut out = vec![RationalScalar::zero(); basis[0].len()];
                for (j, v) in basis.iter().enumerate() {
                    let c = &pinv[h][j];
                    if !c.is_zero() {
                        for (o, x) in out.iter_mut().zip(v) {
                            *o = &*o + &(x * c);
                        }
                    }
                }
                out
            })
            .collect(),
    )
}

fn in_q_lattice(x: &RationalScalar) -> bool {
    x.valuation().is_none_or(|v| v > 0)
}

/// For every weight, the `U_q(g_0)`-highest vectors match the classically
/// highest crystal elements: same count, and after normalizing on those
/// elements every other coefficient lies in `qs A`.
pub fn verify_highest(rep: &Representation) -> FockReport {
    let ops = CrystalOps::new(rep.affine_type);
    let spaces = match rep.weight_spaces() {
        Ok(s) => s,
        Err(e) => return FockReport::new("highest", &rep.affine_type, vec![item("weights".into(), false, Some(e.to_string()))]),
    };
    let items = spaces
        .par_iter()
        .map(|(w, idx)| {
            let support: Vec<usize> = idx.iter().copied().filter(|&b| ops.is_classical_highest(b as u64)).collect();
            let name = format!("weight {w:?}");
            let basis = match highest_vectors(rep, w) {
                Ok(b) => b,
                Err(e) => return item(name, false, Some(e.to_string())),
            };
            if basis.len() != support.len() {
                return item(name, false, Some(format!("kernel dimension {} but {} highest elements", basis.len(), support.len())));
            }
            if basis.is_empty() {
                return item(name, true, None);
            }
            let Some(norm) = normalize_on(&basis, &support) else {
                return item(name, false, Some("highest elements do not coordinatize the kernel".into()));
            };
            let off = norm
                .iter()
                .flat_map(|v| v.iter().enumerate().filter(|(b, x)| !support.contains(b) && !in_q_lattice(x)))
                .count();
            item(name, off == 0, (off > 0).then(|| format!("{off} coefficients outside qs A")))
        })
        .collect();
    FockReport::new("highest", &rep.affine_type, items)
}

/// The delta word, applied to extremal vectors by divided powers, swaps the
/// highest vectors normalized at `v_{k,n-k}` and `v_{k,n-k-1}` modulo `qs`.
pub fn verify_deltaword_module(rep: &Representation, k: usize) -> Result<FockReport> {
    let t = rep.affine_type;
    if t.label != KacLabel::A2Odd {
        return Err(Error::WrongType(format!("delta word needs A_{{2n-1}}^(2), got {t}")));
    }
    let n = t.n;
    let word = delta_word(&t, k)?;
    let mut weight = rep.cartan.level_zero_fundamental(k);
    let mut starts = highest_vectors(rep, &weight)?;
    let mut images = starts.clone();
    let e: Vec<ROp> = (0..=n).map(|i| to_rational(rep.e(i))).collect();
    let f: Vec<ROp> = (0..=n).map(|i| to_rational(rep.f(i))).collect();
    for &i in &word {
        let h = weight[i];
        let (kill, step) = if h >= 0 { (&e[i], &f[i]) } else { (&f[i], &e[i]) };
        let killed: Vec<Vec<RationalScalar>> = images.iter().map(|v| kill.apply(v)).collect();
        let m: linalg::Mat = (0..rep.dim).map(|r| killed.iter().map(|v| v[r].clone()).collect()).collect();
        let combos = linalg::nullspace(&m, images.len());
        let combine = |vs: &[Vec<RationalScalar>]| -> Vec<Vec<RationalScalar>> {
            combos
                .iter()
                .map(|c| {
                    let mut out = vec![RationalScalar::zero(); rep.dim];
                    for (x, v) in c.iter().zip(vs) {
                        if !x.is_zero() {
                            for (o, y) in out.iter_mut().zip(v) {
                                *o = &*o + &(y * x);
                            }
                        }
                    }
                    out
                })
                .collect()
        };
        starts = combine(&starts);
        images = combine(&images).iter().map(|v| divided_power(step, h.abs(), rep.q_exp(i), v)).collect();
        let alpha = rep.cartan.root_column(i);
        weight = add_weights(&weight, &alpha, -h);
    }
    // Crystal elements extremal along the same word, in the classically
    // highest part of weight cl(varpi_k).
    let ops = CrystalOps::new(t);
    let target = crate::crystal::Weight(rep.cartan.level_zero_fundamental(k));
    let crystal_extremal = |mut x: u64| -> bool {
        for &i in &word {
            let h = ops.weight(x).0[i];
            let (blocked, step): (CrystalStep, CrystalStep) =
                if h >= 0 { (CrystalOps::e, CrystalOps::f) } else { (CrystalOps::f, CrystalOps::e) };
            if blocked(&ops, i, x).is_some() {
                return false;
            }
            for _ in 0..h.abs() {
                match step(&ops, i, x) {
                    Some(y) => x = y,
                    None => return false,
                }
            }
        }
        true
    };
    let support: Vec<usize> = (0..ops.ground_size())
        .filter(|&x| ops.is_classical_highest(x) && ops.weight(x) == target && crystal_extremal(x))
        .map(|x| x as usize)
        .collect();
    let a = v_kl(n, k, n - k)?.id() as usize;
    let b = v_kl(n, k, n - k - 1)?.id() as usize;
    let mut items = vec![item(
        "extremal subspace matches the crystal".into(),
        starts.len() == support.len() && support.contains(&a) && support.contains(&b),
        Some(format!("dimension {}, {} crystal elements", starts.len(), support.len())),
    )];
    if items[0].passed {
        let stacked: Vec<Vec<RationalScalar>> = starts.iter().zip(&images).map(|(s, im)| s.iter().chain(im).cloned().collect()).collect();
        match normalize_on(&stacked, &support) {
            None => items.push(item("normalization".into(), false, Some("crystal elements do not coordinatize".into()))),
            Some(norm) => {
                let dim = rep.dim;
                let pos = |x: usize| support.iter().position(|&s| s == x).expect("in support");
                for (src, dst, label) in [(a, b, "a->b"), (b, a, "b->a")] {
                    let u = &norm[pos(src)][..dim];
                    let img = &norm[pos(src)][dim..];
                    let off_ok = u.iter().enumerate().all(|(x, c)| support.contains(&x) || in_q_lattice(c));
                    items.push(item(format!("normalized start {label} lies in L"), off_ok, None));
                    let lead = img[dst].eval_at_zero().ok();
                    let unit = lead.is_some_and(|v| v.abs() == num_rational::BigRational::from_integer(1.into()));
                    let rest = img.iter().enumerate().all(|(x, c)| x == dst || in_q_lattice(c));
                    items.push(item(
                        format!("image {label} is +-target mod qs"),
                        unit && rest,
                        Some(format!("leading coefficient {}", img[dst])),
                    ));
                }
            }
        }
    }
    Ok(FockReport::new("deltaword", &t, items))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(l: KacLabel, n: usize) -> AffineType {
        AffineType::new(l, n).unwrap()
    }

    fn basis(dim: usize, b: usize) -> Vec<LaurentScalar> {
        (0..dim).map(|x| if x == b { LaurentScalar::one() } else { LaurentScalar::zero() }).collect()
    }

    #[test]
    fn clifford_relations() {
        let n = 3;
        let cl = clifford_ops(n, 1);
        let dim = 1 << n;
        let q = qs(1);
        let qi = qs(-1);
        for a in 1..=n {
            assert!(cl.psi_star(a).apply(&basis(dim, 0)).iter().all(|x| x.is_zero()));
            assert!(cl.psi(a).compose(cl.psi(a)).is_zero());
            let lhs = cl.psi(a).compose(cl.psi_star(a)).scale(&(&q - &qi));
            let rhs = cl.omega(a).scale(&q).sub(&cl.omega_inv(a).scale(&qi));
            assert_eq!(lhs, rhs);
            for b in 1..=n {
                if a != b {
                    let ac = cl.psi(a).compose(cl.psi(b)).add(&cl.psi(b).compose(cl.psi(a)));
                    assert!(ac.is_zero());
                    let mixed = cl.psi(a).compose(cl.psi_star(b)).add(&cl.psi_star(b).compose(cl.psi(a)));
                    assert!(mixed.is_zero());
                }
            }
        }
        let v = cl.psi_star(1).compose(cl.psi(1)).apply(&basis(dim, 0));
        assert_eq!(v, basis(dim, 0));
    }

    #[test]
    fn generator_examples() {
        let rep = representation(&ty(KacLabel::B1, 2));
        // psi_1bar |0> is bit 1 (row 1 is bit n-1); psi_2bar |0> is bit 0.
        assert_eq!(rep.e(1).apply(&basis(4, 0b10)), basis(4, 0b01));
        let c = representation(&ty(KacLabel::C1, 2));
        let vac = basis(16, 0);
        let psi_n = 0b01 | (0b01 << 2);
        assert_eq!(c.f(2).apply(&vac), basis(16, psi_n));
    }

    #[test]
    fn relations_and_polarization_n2() {
        for l in KacLabel::ALL {
            let rep = representation(&ty(l, 2));
            let r = verify_relations(&rep);
            assert!(r.passed, "{l:?}: {:?}", r.failures().collect::<Vec<_>>());
            let p = verify_polarization(&rep);
            assert!(p.passed, "{l:?}: {:?}", p.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn crystal_match_n2() {
        for l in KacLabel::ALL {
            let rep = representation(&ty(l, 2));
            let r = lattice_and_crystal_match(&rep);
            assert!(r.passed, "{l:?}: {:?}", r.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn highest_n2() {
        for l in KacLabel::ALL {
            let r = verify_highest(&representation(&ty(l, 2)));
            assert!(r.passed, "{l:?}: {:?}", r.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn deltaword_small() {
        for n in 2..=3 {
            let rep = representation(&ty(KacLabel::A2Odd, n));
            for k in 1..n {
                let r = verify_deltaword_module(&rep, k).unwrap();
                assert!(r.passed, "n={n} k={k}: {:?}", r.items);
            }
        }
        assert!(verify_deltaword_module(&representation(&ty(KacLabel::C1, 2)), 1).is_err());
    }

    #[test]
    fn kashiwara_string_calculus() {
        let rep = representation(&ty(KacLabel::C1, 2));
        for i in 0..=2 {
            let p = kashiwara_from_module(&rep, i).unwrap();
            assert_eq!(p.f.compose(&p.e).compose(&p.f), p.f);
            assert_eq!(p.e.compose(&p.f).compose(&p.e), p.e);
        }
    }
}

