//! Crystals on binary vectors (one column) and two-column binary matrices.
//!
//! Row `a` (written `a-bar`, ordered `n-bar < ... < 1-bar`) of a column is
//! stored at bit `n - a`, so the top row `n-bar` is the least significant
//! bit. A matrix id packs column 1 in the low `n` bits and column 2 above.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cartan::{AffineType, DiamondShape};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryVector {
    n: usize,
    bits: u32,
}

impl BinaryVector {
    pub fn zero(n: usize) -> Self {
        Self { n, bits: 0 }
    }

    pub fn from_bits(n: usize, bits: u32) -> Self {
        debug_assert!(n <= 16 && bits >> n == 0);
        Self { n, bits }
    }

    /// Vector with ones exactly in the given rows.
    pub fn from_rows(n: usize, rows: impl IntoIterator<Item = usize>) -> Self {
        rows.into_iter().fold(Self::zero(n), |v, a| v.with(a, true))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn get(&self, a: usize) -> bool {
        get_bit(self.n, self.bits, a)
    }

    pub fn with(&self, a: usize, value: bool) -> Self {
        Self { n: self.n, bits: set_bit(self.n, self.bits, a, value) }
    }

    /// `|m|`, the number of ones.
    pub fn size(&self) -> u32 {
        self.bits.count_ones()
    }

    /// Rows from `n-bar` down to `1-bar`, one character each, `/`-separated.
    pub fn text(&self) -> String {
        (1..=self.n)
            .rev()
            .map(|a| if self.get(a) { "1" } else { "0" })
            .collect::<Vec<_>>()
            .join("/")
    }

    pub fn parse(s: &str) -> Result<Self> {
        let rows: Vec<&str> = s.trim().split('/').collect();
        let n = rows.len();
        let mut v = Self::zero(n);
        for (k, r) in rows.iter().enumerate() {
            let a = n - k;
            match *r {
                "0" => {}
                "1" => v = v.with(a, true),
                _ => return Err(Error::Parse(s.to_string())),
            }
        }
        Ok(v)
    }
}

#[inline]
fn get_bit(n: usize, bits: u32, a: usize) -> bool {
    bits >> (n - a) & 1 == 1
}

#[inline]
fn set_bit(n: usize, bits: u32, a: usize, value: bool) -> u32 {
    if value {
        bits | 1 << (n - a)
    } else {
        bits & !(1 << (n - a))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryMatrix {
    cols: [BinaryVector; 2],
}

impl BinaryMatrix {
    pub fn new(c1: BinaryVector, c2: BinaryVector) -> Self {
        assert_eq!(c1.n, c2.n);
        Self { cols: [c1, c2] }
    }

    pub fn zero(n: usize) -> Self {
        Self::new(BinaryVector::zero(n), BinaryVector::zero(n))
    }

    pub fn from_id(n: usize, id: u64) -> Self {
        let mask = (1u64 << n) - 1;
        Self::new(
            BinaryVector::from_bits(n, (id & mask) as u32),
            BinaryVector::from_bits(n, (id >> n) as u32),
        )
    }

    pub fn id(&self) -> u64 {
        self.cols[0].bits as u64 | (self.cols[1].bits as u64) << self.n()
    }

    pub fn n(&self) -> usize {
        self.cols[0].n
    }

    /// Column `b` in `{1, 2}`.
    pub fn column(&self, b: usize) -> BinaryVector {
        self.cols[b - 1]
    }

    /// Row `a` as `[m_a1, m_a2]`.
    pub fn row(&self, a: usize) -> [bool; 2] {
        [self.cols[0].get(a), self.cols[1].get(a)]
    }

    pub fn with_row(&self, a: usize, row: [bool; 2]) -> Self {
        Self::new(self.cols[0].with(a, row[0]), self.cols[1].with(a, row[1]))
    }

    pub fn size(&self) -> u32 {
        self.cols[0].size() + self.cols[1].size()
    }

    /// Rows `n-bar` to `1-bar`, e.g. `10/11/01`.
    pub fn text(&self) -> String {
        (1..=self.n())
            .rev()
            .map(|a| {
                let [x, y] = self.row(a);
                format!("{}{}", x as u8, y as u8)
            })
            .collect::<Vec<_>>()
            .join("/")
    }

    pub fn parse(s: &str) -> Result<Self> {
        let rows: Vec<&str> = s.trim().split('/').collect();
        let n = rows.len();
        let mut m = Self::zero(n);
        for (k, r) in rows.iter().enumerate() {
            let bytes = r.as_bytes();
            if bytes.len() != 2 || !bytes.iter().all(|b| *b == b'0' || *b == b'1') {
                return Err(Error::Parse(s.to_string()));
            }
            m = m.with_row(n - k, [bytes[0] == b'1', bytes[1] == b'1']);
        }
        Ok(m)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CrystalElement {
    Vector(BinaryVector),
    Matrix(BinaryMatrix),
}

impl CrystalElement {
    pub fn id(&self) -> u64 {
        match self {
            Self::Vector(v) => v.bits as u64,
            Self::Matrix(m) => m.id(),
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Self::Vector(v) => v.n,
            Self::Matrix(m) => m.n(),
        }
    }

    pub fn text(&self) -> String {
        match self {
            Self::Vector(v) => v.text(),
            Self::Matrix(m) => m.text(),
        }
    }

    pub fn as_matrix(&self) -> Option<BinaryMatrix> {
        match self {
            Self::Matrix(m) => Some(*m),
            Self::Vector(_) => None,
        }
    }

    /// Parses either text form, choosing by row width.
    pub fn parse(s: &str) -> Result<Self> {
        if s.split('/').next().is_some_and(|r| r.len() == 2) {
            BinaryMatrix::parse(s).map(Self::Matrix)
        } else {
            BinaryVector::parse(s).map(Self::Vector)
        }
    }
}

impl fmt::Display for CrystalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

/// `(<h_i, wt>)_{i in I}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight(pub Vec<i64>);

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Kashiwara operators of one affine type, acting on element ids.
///
/// All single-column strings have length at most one, so `eps`/`phi` of a
/// column are just whether the column operator applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrystalOps {
    t: AffineType,
}

impl CrystalOps {
    pub fn new(t: AffineType) -> Self {
        Self { t }
    }

    pub fn affine_type(&self) -> AffineType {
        self.t
    }

    pub fn n(&self) -> usize {
        self.t.n
    }

    pub fn is_matrix(&self) -> bool {
        self.t.is_matrix()
    }

    /// Size of the ground set.
    pub fn ground_size(&self) -> u64 {
        1u64 << (self.n() * self.t.copies())
    }

    pub fn element(&self, id: u64) -> CrystalElement {
        if self.is_matrix() {
            CrystalElement::Matrix(BinaryMatrix::from_id(self.n(), id))
        } else {
            CrystalElement::Vector(BinaryVector::from_bits(self.n(), id as u32))
        }
    }

    pub fn check(&self, x: &CrystalElement) -> Result<()> {
        let ok = x.n() == self.n() && matches!(x, CrystalElement::Matrix(_)) == self.is_matrix();
        if ok {
            Ok(())
        } else {
            Err(Error::VariantMismatch(format!("{} for {}", x.text(), self.t)))
        }
    }

    /// Column operator for color `i` (type A in the middle, the B/D-type end
    /// rules at `0` and `n`). Panics for a C-type end, which has no
    /// single-column crystal.
    fn col_e(&self, i: usize, b: u32) -> Option<u32> {
        let n = self.n();
        let g = |a| get_bit(n, b, a);
        let s = |bits, a, v| set_bit(n, bits, a, v);
        if i > 0 && i < n {
            return (!g(i + 1) && g(i)).then(|| s(s(b, i + 1, true), i, false));
        }
        match (i, self.t.end_shape(i).expect("end node")) {
            (0, DiamondShape::S1) => (!g(1)).then(|| s(b, 1, true)),
            (0, DiamondShape::S11) => (!g(1) && !g(2)).then(|| s(s(b, 1, true), 2, true)),
            (_, DiamondShape::S1) => g(n).then(|| s(b, n, false)),
            (_, DiamondShape::S11) => (g(n) && g(n - 1)).then(|| s(s(b, n, false), n - 1, false)),
            (_, DiamondShape::S2) => unreachable!("C-type end has no column crystal"),
        }
    }

    fn col_f(&self, i: usize, b: u32) -> Option<u32> {
        let n = self.n();
        let g = |a| get_bit(n, b, a);
        let s = |bits, a, v| set_bit(n, bits, a, v);
        if i > 0 && i < n {
            return (g(i + 1) && !g(i)).then(|| s(s(b, i + 1, false), i, true));
        }
        match (i, self.t.end_shape(i).expect("end node")) {
            (0, DiamondShape::S1) => g(1).then(|| s(b, 1, false)),
            (0, DiamondShape::S11) => (g(1) && g(2)).then(|| s(s(b, 1, false), 2, false)),
            (_, DiamondShape::S1) => (!g(n)).then(|| s(b, n, true)),
            (_, DiamondShape::S11) => (!g(n) && !g(n - 1)).then(|| s(s(b, n, true), n - 1, true)),
            (_, DiamondShape::S2) => unreachable!("C-type end has no column crystal"),
        }
    }

    fn split(&self, id: u64) -> (u32, u32) {
        let n = self.n();
        ((id & ((1 << n) - 1)) as u32, (id >> n) as u32)
    }

    fn join(&self, b1: u32, b2: u32) -> u64 {
        b1 as u64 | (b2 as u64) << self.n()
    }

    /// Two-factor tensor rule for `e`.
    fn tensor_e(&self, i: usize, id: u64) -> Option<u64> {
        let (b1, b2) = self.split(id);
        let phi1 = self.col_f(i, b1).is_some() as u8;
        let eps2 = self.col_e(i, b2).is_some() as u8;
        if phi1 >= eps2 {
            self.col_e(i, b1).map(|c| self.join(c, b2))
        } else {
            self.col_e(i, b2).map(|c| self.join(b1, c))
        }
    }

    fn tensor_f(&self, i: usize, id: u64) -> Option<u64> {
        let (b1, b2) = self.split(id);
        let phi1 = self.col_f(i, b1).is_some() as u8;
        let eps2 = self.col_e(i, b2).is_some() as u8;
        if phi1 > eps2 {
            self.col_f(i, b1).map(|c| self.join(c, b2))
        } else {
            self.col_f(i, b2).map(|c| self.join(b1, c))
        }
    }

    /// Row-local rules at an end node of a matrix crystal.
    fn matrix_end_e(&self, i: usize, id: u64) -> Option<u64> {
        let n = self.n();
        let m = BinaryMatrix::from_id(n, id);
        let shape = self.t.end_shape(i).expect("end node");
        let out = match (i == 0, shape) {
            (_, DiamondShape::S2) => {
                let a = if i == 0 { 1 } else { n };
                match (i == 0, m.row(a)) {
                    (true, [false, false]) => Some(m.with_row(a, [true, true])),
                    (false, [true, true]) => Some(m.with_row(a, [false, false])),
                    _ => None,
                }
            }
            (false, DiamondShape::S1) => match m.row(n) {
                [true, false] => Some(m.with_row(n, [false, false])),
                [true, true] => Some(m.with_row(n, [true, false])),
                _ => None,
            },
            (true, DiamondShape::S1) => match m.row(1) {
                [false, false] => Some(m.with_row(1, [false, true])),
                [false, true] => Some(m.with_row(1, [true, true])),
                _ => None,
            },
            (false, DiamondShape::S11) => {
                let ([p, q], [s, t]) = (m.row(n), m.row(n - 1));
                if (p || s) && q && t {
                    Some(m.with_row(n, [p, false]).with_row(n - 1, [s, false]))
                } else if p && s && !(q && t) {
                    Some(m.with_row(n, [false, q]).with_row(n - 1, [false, t]))
                } else {
                    None
                }
            }
            (true, DiamondShape::S11) => {
                let ([p, q], [s, t]) = (m.row(2), m.row(1));
                if !(p && s) && !q && !t {
                    Some(m.with_row(2, [p, true]).with_row(1, [s, true]))
                } else if !p && !s && (q || t) {
                    Some(m.with_row(2, [true, q]).with_row(1, [true, t]))
                } else {
                    None
                }
            }
        };
        out.map(|m| m.id())
    }

    fn matrix_end_f(&self, i: usize, id: u64) -> Option<u64> {
        let n = self.n();
        if self.t.end_shape(i) == Some(DiamondShape::S2) {
            let m = BinaryMatrix::from_id(n, id);
            let a = if i == 0 { 1 } else { n };
            return match (i == 0, m.row(a)) {
                (true, [true, true]) => Some(m.with_row(a, [false, false]).id()),
                (false, [false, false]) => Some(m.with_row(a, [true, true]).id()),
                _ => None,
            };
        }
        self.tensor_f(i, id)
    }

    /// `e~_i` on an id; `None` where the rule gives 0.
    pub fn e(&self, i: usize, id: u64) -> Option<u64> {
        if !self.is_matrix() {
            return self.col_e(i, id as u32).map(u64::from);
        }
        if i > 0 && i < self.n() {
            self.tensor_e(i, id)
        } else {
            self.matrix_end_e(i, id)
        }
    }

    /// `f~_i` on an id.
    pub fn f(&self, i: usize, id: u64) -> Option<u64> {
        if !self.is_matrix() {
            return self.col_f(i, id as u32).map(u64::from);
        }
        if i > 0 && i < self.n() {
            self.tensor_f(i, id)
        } else {
            self.matrix_end_f(i, id)
        }
    }

    /// The tensor-rule `e~_i` at a B- or D-type end of a matrix crystal.
    /// Kept separate so tests can compare it with the row-local rules.
    pub fn tensor_rule_e(&self, i: usize, id: u64) -> Option<u64> {
        self.tensor_e(i, id)
    }

    /// `(eps_i, phi_i)`.
    pub fn string_lengths(&self, i: usize, id: u64) -> (i64, i64) {
        let count = |step: &dyn Fn(u64) -> Option<u64>| {
            let mut k = 0;
            let mut cur = id;
            while let Some(next) = step(cur) {
                cur = next;
                k += 1;
            }
            k
        };
        (count(&|x| self.e(i, x)), count(&|x| self.f(i, x)))
    }

    pub fn weight(&self, id: u64) -> Weight {
        Weight(
            (0..=self.n())
                .map(|i| {
                    let (e, f) = self.string_lengths(i, id);
                    f - e
                })
                .collect(),
        )
    }

    /// True when `e~_i` vanishes for every `i` in `1..=n`.
    pub fn is_classical_highest(&self, id: u64) -> bool {
        (1..=self.n()).all(|i| self.e(i, id).is_none())
    }

    /// Applies the simple reflection action `S_{s_i}`.
    pub fn reflect(&self, i: usize, id: u64) -> Result<u64> {
        let (eps, phi) = self.string_lengths(i, id);
        let h = phi - eps;
        let mut cur = id;
        for _ in 0..h.abs() {
            let next = if h > 0 { self.f(i, cur) } else { self.e(i, cur) };
            cur = next.ok_or(Error::NonRegularCrystal(i))?;
        }
        Ok(cur)
    }

    /// Sorted ids of the connected component containing `id`.
    pub fn component_ids(&self, id: u64) -> Vec<u64> {
        let mut seen = BTreeSet::from([id]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            let fs = (0..=self.n()).map(|i| self.f(i, x));
            let es = (0..=self.n()).map(|i| self.e(i, x));
            for y in fs.chain(es).flatten() {
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen.into_iter().collect()
    }
}

/// Public wrapper for `e~_i`.
pub fn e_tilde(t: &AffineType, i: usize, x: &CrystalElement) -> Result<Option<CrystalElement>> {
    let ops = CrystalOps::new(*t);
    t.check_index(i)?;
    ops.check(x)?;
    Ok(ops.e(i, x.id()).map(|y| ops.element(y)))
}

/// Public wrapper for `f~_i`.
pub fn f_tilde(t: &AffineType, i: usize, x: &CrystalElement) -> Result<Option<CrystalElement>> {
    let ops = CrystalOps::new(*t);
    t.check_index(i)?;
    ops.check(x)?;
    Ok(ops.f(i, x.id()).map(|y| ops.element(y)))
}

pub fn string_lengths(t: &AffineType, i: usize, x: &CrystalElement) -> Result<(i64, i64)> {
    let ops = CrystalOps::new(*t);
    t.check_index(i)?;
    ops.check(x)?;
    Ok(ops.string_lengths(i, x.id()))
}

pub fn weight(t: &AffineType, x: &CrystalElement) -> Result<Weight> {
    let ops = CrystalOps::new(*t);
    ops.check(x)?;
    Ok(ops.weight(x.id()))
}

/// The matrix `v_{k,l}`: column 1 has ones in rows `n..n-l+1`, column 2 in
/// rows `n-l..k+1`.
pub fn v_kl(n: usize, k: usize, l: usize) -> Result<BinaryMatrix> {
    if k > n || l > n - k {
        return Err(Error::InvalidParameters(format!("(k,l)=({k},{l}) for n={n}")));
    }
    let c1 = BinaryVector::from_rows(n, n - l + 1..=n);
    let c2 = BinaryVector::from_rows(n, k + 1..=n - l);
    Ok(BinaryMatrix::new(c1, c2))
}

/// The spin representatives `v_n = 0` and `v_{n-1} = e_{n-bar}`.
pub fn v_spin(n: usize, k: usize) -> Result<BinaryVector> {
    if k == n {
        Ok(BinaryVector::zero(n))
    } else if k + 1 == n {
        Ok(BinaryVector::zero(n).with(n, true))
    } else {
        Err(Error::InvalidParameters(format!("spin representative k={k} for n={n}")))
    }
}

/// Connected component with per-vertex annotations. Vertices are sorted by
/// id; edges `(src, dst, i)` mean `f~_i src = dst`, listed by source then
/// color.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrystalGraph {
    pub affine_type: AffineType,
    pub vertices: Vec<CrystalElement>,
    pub weights: Vec<Weight>,
    pub edges: Vec<(u64, u64, usize)>,
    index: HashMap<u64, usize>,
}

impl CrystalGraph {
    pub fn from_ids(ops: &CrystalOps, ids: &[u64]) -> Self {
        let mut ids = ids.to_vec();
        ids.sort_unstable();
        ids.dedup();
        let index: HashMap<u64, usize> = ids.iter().enumerate().map(|(k, id)| (*id, k)).collect();
        let mut edges = Vec::new();
        for &x in &ids {
            for i in 0..=ops.n() {
                if let Some(y) = ops.f(i, x) {
                    if index.contains_key(&y) {
                        edges.push((x, y, i));
                    }
                }
            }
        }
        Self {
            affine_type: ops.affine_type(),
            vertices: ids.iter().map(|&id| ops.element(id)).collect(),
            weights: ids.iter().map(|&id| ops.weight(id)).collect(),
            edges,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, id: u64) -> bool {
        self.index.contains_key(&id)
    }

    pub fn position(&self, id: u64) -> Option<usize> {
        self.index.get(&id).copied()
    }

    pub fn ids(&self) -> impl Iterator<Item = u64> + '_ {
        self.vertices.iter().map(|v| v.id())
    }
}

pub fn component(t: &AffineType, x: &CrystalElement) -> Result<CrystalGraph> {
    let ops = CrystalOps::new(*t);
    ops.check(x)?;
    Ok(CrystalGraph::from_ids(&ops, &ops.component_ids(x.id())))
}

/// Applies `S_{s_i}` for the letters of `word` in the order listed.
pub fn weyl_action(t: &AffineType, word: &[usize], x: &CrystalElement) -> Result<CrystalElement> {
    let ops = CrystalOps::new(*t);
    ops.check(x)?;
    let mut cur = x.id();
    for &i in word {
        t.check_index(i)?;
        cur = ops.reflect(i, cur)?;
    }
    Ok(ops.element(cur))
}

/// The word `(w_k ... w_1) s_n ... s_2 s_0 (w_k ... w_2)^{-1}` with
/// `w_i = s_i s_{i+1} ... s_{n-k+i-1}`, for the `((1,1),(2))` type.
pub fn delta_word(t: &AffineType, k: usize) -> Result<Vec<usize>> {
    if t.diamond() != (DiamondShape::S11, DiamondShape::S2) {
        return Err(Error::WrongType(format!("delta word needs A_{{2n-1}}^(2), got {t}")));
    }
    let n = t.n;
    if k == 0 || k >= n {
        return Err(Error::InvalidParameters(format!("k={k} must lie in 1..n-1 for n={n}")));
    }
    let w = |i: usize| -> Vec<usize> { (i..=n - k + i - 1).collect() };
    let mut word: Vec<usize> = (1..=k).rev().flat_map(w).collect();
    word.extend((2..=n).rev());
    word.push(0);
    let tail: Vec<usize> = (2..=k).rev().flat_map(w).collect();
    word.extend(tail.into_iter().rev());
    Ok(word)
}
