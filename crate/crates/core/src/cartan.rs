//! Affine Cartan data for the seven non-exceptional labelings, encoded by a
//! pair of end shapes attached at nodes `0` and `n`.

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Shape of the sub-diagram attached at an end node: B-like `(1)`,
/// C-like `(2)` or D-like `(1,1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DiamondShape {
    S1,
    S2,
    S11,
}

impl DiamondShape {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().trim_matches(|c| c == '(' || c == ')') {
            "1" => Ok(Self::S1),
            "2" => Ok(Self::S2),
            "1,1" | "11" => Ok(Self::S11),
            other => Err(Error::Parse(other.to_string())),
        }
    }
}

impl fmt::Display for DiamondShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::S1 => "(1)",
            Self::S2 => "(2)",
            Self::S11 => "(1,1)",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum KacLabel {
    B1,
    C1,
    D1,
    A2Even,
    A2EvenDagger,
    A2Odd,
    D2,
}

impl KacLabel {
    pub const ALL: [KacLabel; 7] = [
        Self::B1,
        Self::C1,
        Self::D1,
        Self::A2Even,
        Self::A2EvenDagger,
        Self::A2Odd,
        Self::D2,
    ];

    pub fn diamond(self) -> (DiamondShape, DiamondShape) {
        use DiamondShape::*;
        match self {
            Self::B1 => (S11, S1),
            Self::C1 => (S2, S2),
            Self::D1 => (S11, S11),
            Self::A2Even => (S1, S2),
            Self::A2EvenDagger => (S2, S1),
            Self::A2Odd => (S11, S2),
            Self::D2 => (S1, S1),
        }
    }

    pub fn from_diamond(d0: DiamondShape, dn: DiamondShape) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|l| l.diamond() == (d0, dn))
            .ok_or_else(|| Error::UnknownLabel(format!("({d0},{dn})")))
    }

    /// Short name used on the command line.
    pub fn cli_name(self) -> &'static str {
        match self {
            Self::B1 => "B1",
            Self::C1 => "C1",
            Self::D1 => "D1",
            Self::A2Even => "A2even",
            Self::A2EvenDagger => "A2evenDagger",
            Self::A2Odd => "A2odd",
            Self::D2 => "D2",
        }
    }

    /// Kac-style label, e.g. `A_{2n-1}^(2)`.
    pub fn kac_name(self) -> &'static str {
        match self {
            Self::B1 => "B_n^(1)",
            Self::C1 => "C_n^(1)",
            Self::D1 => "D_n^(1)",
            Self::A2Even => "A_{2n}^(2)",
            Self::A2EvenDagger => "A_{2n}^(2)dagger",
            Self::A2Odd => "A_{2n-1}^(2)",
            Self::D2 => "D_{n+1}^(2)",
        }
    }

    /// Accepts CLI names, Kac names (with or without braces around the
    /// superscript) and diamond syntax such as `(2,1)` or `((1,1),(2))`.
    pub fn parse(label: &str) -> Result<Self> {
        let s: String = label.chars().filter(|c| !c.is_whitespace()).collect();
        for l in Self::ALL {
            if s.eq_ignore_ascii_case(l.cli_name()) || s == l.kac_name() {
                return Ok(l);
            }
        }
        let norm = s.replace(['{', '}'], "").replace('†', "dagger");
        let kac = match norm.as_str() {
            "B_n^(1)" | "B_n^1" => Some(Self::B1),
            "C_n^(1)" | "C_n^1" => Some(Self::C1),
            "D_n^(1)" | "D_n^1" => Some(Self::D1),
            "A_2n^(2)" | "A_2n^2" => Some(Self::A2Even),
            "A_2n^(2)dagger" | "A_2n^2dagger" => Some(Self::A2EvenDagger),
            "A_2n-1^(2)" | "A_2n-1^2" => Some(Self::A2Odd),
            "D_n+1^(2)" | "D_n+1^2" => Some(Self::D2),
            _ => None,
        };
        if let Some(l) = kac {
            return Ok(l);
        }
        if let Some((d0, dn)) = parse_diamond(&s) {
            return Self::from_diamond(d0, dn);
        }
        Err(Error::UnknownLabel(label.to_string()))
    }
}

/// Parses `a,b` (single-digit shapes) or `(x),(y)` with each side one of
/// `1`, `2`, `1,1`.
fn parse_diamond(s: &str) -> Option<(DiamondShape, DiamondShape)> {
    let inner = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(s);
    if inner.contains('(') {
        let close = inner.find(')')?;
        let left = &inner[..=close];
        let right = inner[close + 1..].strip_prefix(',')?;
        return Some((DiamondShape::parse(left).ok()?, DiamondShape::parse(right).ok()?));
    }
    let parts: Vec<&str> = inner.split(',').collect();
    let shape = |p: &str| match p {
        "1" => Some(DiamondShape::S1),
        "2" => Some(DiamondShape::S2),
        "11" => Some(DiamondShape::S11),
        _ => None,
    };
    match parts.as_slice() {
        [a, b] => Some((shape(a)?, shape(b)?)),
        _ => None,
    }
}

/// An affine type together with its rank `n` (nodes `0..=n`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineType {
    pub label: KacLabel,
    pub n: usize,
}

impl AffineType {
    pub fn new(label: KacLabel, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::RankTooSmall(n));
        }
        Ok(Self { label, n })
    }

    pub fn from_label(label: &str, n: usize) -> Result<Self> {
        Self::new(KacLabel::parse(label)?, n)
    }

    pub fn diamond(&self) -> (DiamondShape, DiamondShape) {
        self.label.diamond()
    }

    /// Shape attached at end node `r` (0 or n).
    pub fn end_shape(&self, r: usize) -> Option<DiamondShape> {
        let (d0, dn) = self.diamond();
        if r == 0 {
            Some(d0)
        } else if r == self.n {
            Some(dn)
        } else {
            None
        }
    }

    /// True when the crystal lives on two-column matrices.
    pub fn is_matrix(&self) -> bool {
        let (d0, dn) = self.diamond();
        d0 == DiamondShape::S2 || dn == DiamondShape::S2
    }

    /// Number of tensor factors of the exterior algebra (1 or 2).
    pub fn copies(&self) -> usize {
        if self.is_matrix() {
            2
        } else {
            1
        }
    }

    pub fn num_nodes(&self) -> usize {
        self.n + 1
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i > self.n {
            Err(Error::IndexOutOfRange { index: i, max: self.n })
        } else {
            Ok(())
        }
    }

    /// Simple root `alpha_i` projected to the classical span, in coordinates
    /// indexed by rows `1..=n` (entry `a-1` is the coefficient of `eps_a`).
    pub fn classical_root(&self, i: usize) -> Vec<i64> {
        self.root_pair(i).0
    }

    /// Simple coroot `h_i` in the same coordinates.
    pub fn classical_coroot(&self, i: usize) -> Vec<i64> {
        self.root_pair(i).1
    }

    fn root_pair(&self, i: usize) -> (Vec<i64>, Vec<i64>) {
        let n = self.n;
        let mut root = vec![0i64; n];
        let mut coroot = vec![0i64; n];
        let idx = |a: usize| a - 1;
        if i > 0 && i < n {
            root[idx(i + 1)] = 1;
            root[idx(i)] = -1;
            coroot.clone_from(&root);
        } else if i == 0 {
            match self.diamond().0 {
                DiamondShape::S1 => {
                    root[idx(1)] = 1;
                    coroot[idx(1)] = 2;
                }
                DiamondShape::S2 => {
                    root[idx(1)] = 2;
                    coroot[idx(1)] = 1;
                }
                DiamondShape::S11 => {
                    root[idx(1)] = 1;
                    root[idx(2)] = 1;
                    coroot.clone_from(&root);
                }
            }
        } else {
            match self.diamond().1 {
                DiamondShape::S1 => {
                    root[idx(n)] = -1;
                    coroot[idx(n)] = -2;
                }
                DiamondShape::S2 => {
                    root[idx(n)] = -2;
                    coroot[idx(n)] = -1;
                }
                DiamondShape::S11 => {
                    root[idx(n)] = -1;
                    root[idx(n - 1)] = -1;
                    coroot.clone_from(&root);
                }
            }
        }
        (root, coroot)
    }
}

impl fmt::Display for AffineType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (n={})", self.label.kac_name(), self.n)
    }
}

/// Full Cartan datum of an affine type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CartanData {
    pub affine_type: AffineType,
    /// `a[i][j] = <h_i, alpha_j>`.
    pub matrix: Vec<Vec<i64>>,
    pub marks: Vec<i64>,
    pub comarks: Vec<i64>,
    /// `(alpha_i, alpha_i)`, normalized by `(delta, lambda) = <c, lambda>`.
    #[serde(serialize_with = "ser_ratios")]
    pub root_norms: Vec<Ratio<i64>>,
    /// Smallest positive integer with every `(alpha_i,alpha_i)/2` in `(1/d) Z`.
    pub d: i64,
    /// `q_i = qs^{qi_exp[i]}` with `qs = q^{1/d}`.
    pub qi_exp: Vec<i64>,
    /// Periods `d_i` of the translations `varpi_i + k delta` in the Weyl orbit.
    pub periods: Vec<i64>,
}

fn ser_ratios<S: serde::Serializer>(v: &[Ratio<i64>], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| r.to_string()))
}

/// Marks (labels of the null root) as tabulated functions of `n`.
fn marks_table(t: &AffineType) -> Vec<i64> {
    let n = t.n;
    (0..=n)
        .map(|i| match t.label {
            KacLabel::B1 => {
                if i <= 1 {
                    1
                } else {
                    2
                }
            }
            KacLabel::C1 => {
                if i == 0 || i == n {
                    1
                } else {
                    2
                }
            }
            KacLabel::D1 => {
                if n == 2 {
                    // D_2^(1) splits off node 1 as an isolated A_1.
                    [1, 0, 1][i]
                } else if i <= 1 || i >= n - 1 {
                    1
                } else {
                    2
                }
            }
            KacLabel::A2Even => {
                if i == n {
                    1
                } else {
                    2
                }
            }
            KacLabel::A2EvenDagger => {
                if i == 0 {
                    1
                } else {
                    2
                }
            }
            KacLabel::A2Odd => {
                if i <= 1 || i == n {
                    1
                } else {
                    2
                }
            }
            KacLabel::D2 => 1,
        })
        .collect()
}

/// Comarks (labels of the canonical central element).
fn comarks_table(t: &AffineType) -> Vec<i64> {
    let n = t.n;
    (0..=n)
        .map(|i| match t.label {
            KacLabel::B1 => {
                if i <= 1 || i == n {
                    1
                } else {
                    2
                }
            }
            KacLabel::C1 => 1,
            KacLabel::D1 => marks_table(t)[i],
            KacLabel::A2Even => {
                if i == 0 {
                    1
                } else {
                    2
                }
            }
            KacLabel::A2EvenDagger => {
                if i == n {
                    1
                } else {
                    2
                }
            }
            KacLabel::A2Odd => {
                if i <= 1 {
                    1
                } else {
                    2
                }
            }
            KacLabel::D2 => {
                if i == 0 || i == n {
                    1
                } else {
                    2
                }
            }
        })
        .collect()
}

pub fn cartan_data(t: &AffineType) -> CartanData {
    let nodes = t.num_nodes();
    let roots: Vec<Vec<i64>> = (0..nodes).map(|j| t.classical_root(j)).collect();
    let coroots: Vec<Vec<i64>> = (0..nodes).map(|i| t.classical_coroot(i)).collect();
    let matrix: Vec<Vec<i64>> = coroots
        .iter()
        .map(|h| roots.iter().map(|a| h.iter().zip(a).map(|(x, y)| x * y).sum()).collect())
        .collect();
    let marks = marks_table(t);
    let comarks = comarks_table(t);
    let root_norms: Vec<Ratio<i64>> = (0..nodes)
        .map(|i| {
            if marks[i] == 0 {
                // Isolated simply-laced node of the degenerate D_2^(1).
                Ratio::from_integer(2)
            } else {
                Ratio::new(2 * comarks[i], marks[i])
            }
        })
        .collect();
    let d = root_norms
        .iter()
        .map(|r| (r / 2).denom().to_owned())
        .fold(1i64, |acc, x| acc.lcm(&x));
    let qi_exp: Vec<i64> = root_norms
        .iter()
        .map(|r| {
            let v = r * d / 2;
            debug_assert!(v.is_integer());
            v.to_integer()
        })
        .collect();
    let periods = (0..nodes)
        .map(|i| {
            let exceptional = match t.label {
                KacLabel::A2Even => i == t.n,
                KacLabel::A2EvenDagger => i == 0,
                _ => false,
            };
            let half = root_norms[i] / 2;
            if exceptional || half <= Ratio::from_integer(1) {
                1
            } else {
                half.ceil().to_integer()
            }
        })
        .collect();
    CartanData { affine_type: *t, matrix, marks, comarks, root_norms, d, qi_exp, periods }
}

impl CartanData {
    pub fn n(&self) -> usize {
        self.affine_type.n
    }

    /// Exponent of `qs` for the Clifford parameter `q_1`.
    pub fn clifford_exp(&self) -> i64 {
        self.qi_exp[1]
    }

    /// `cl(varpi_k)` as the vector `(<h_i, varpi_k>)_i`; zero for `k = 0`.
    /// The multiple of `Lambda_k` is the least one that keeps the `Lambda_0`
    /// coefficient integral, which gives `2 Lambda_n - Lambda_0` for the
    /// relabeled `A_{2n}^(2)`.
    pub fn level_zero_fundamental(&self, k: usize) -> Vec<i64> {
        let mut w = vec![0i64; self.n() + 1];
        if k == 0 {
            return w;
        }
        let a0 = self.comarks[0];
        let ak = self.comarks[k];
        let c = a0 / a0.gcd(&ak);
        w[k] += c;
        w[0] -= c * ak / a0;
        w
    }

    /// `sum_i a_i^vee <h_i, lambda>`.
    pub fn level(&self, weight: &[i64]) -> i64 {
        self.comarks.iter().zip(weight).map(|(a, w)| a * w).sum()
    }

    /// `<h_j, alpha_i>` for all `j`: the shift of a weight under `alpha_i`.
    pub fn root_column(&self, i: usize) -> Vec<i64> {
        self.matrix.iter().map(|row| row[i]).collect()
    }

    /// Rank of the Cartan matrix over the rationals.
    #[allow(clippy::needless_range_loop)]
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<Ratio<i64>>> = self
            .matrix
            .iter()
            .map(|r| r.iter().map(|&x| Ratio::from_integer(x)).collect())
            .collect();
        let (rows, cols) = (m.len(), m[0].len());
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..rows).find(|&r| m[r][c] != Ratio::from_integer(0)) else {
                continue;
            };
            m.swap(rank, p);
            let pivot = m[rank][c];
            for r in 0..rows {
                if r != rank && m[r][c] != Ratio::from_integer(0) {
                    let factor = m[r][c] / pivot;
                    for cc in 0..cols {
                        let sub = m[rank][cc] * factor;
                        m[r][cc] -= sub;
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}
