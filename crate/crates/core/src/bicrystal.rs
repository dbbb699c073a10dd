//! Row operators `E~`, `F~` on two-column matrices, the statistic `sigma`,
//! and the involution `varsigma` on `A_{2n-1}^(2)` components.
//!
//! Rows are read as the tensor product `m_(1) (x) m_(2) (x) ... (x) m_(n)`.
//! A row `[0 1]` can be raised (`E~[0 1] = [1 0]`), a row `[1 0]` lowered.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::cartan::{AffineType, DiamondShape};
use crate::crystal::{BinaryMatrix, CrystalGraph, CrystalOps, Weight};
use crate::error::{Error, Result};

/// `(eps, phi)` for the row crystal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SigmaPair {
    pub eps: i64,
    pub phi: i64,
}

impl SigmaPair {
    pub fn new(eps: i64, phi: i64) -> Self {
        Self { eps, phi }
    }
}

impl std::fmt::Display for SigmaPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.eps, self.phi)
    }
}

/// Unmatched rows after cancellation: raisable rows (`[0 1]`) and lowerable
/// rows (`[1 0]`), in reading order.
fn reduced_signature(m: &BinaryMatrix) -> (Vec<usize>, Vec<usize>) {
    let mut raisable = Vec::new();
    let mut open_lowerable: Vec<usize> = Vec::new();
    for a in 1..=m.n() {
        match m.row(a) {
            [true, false] => open_lowerable.push(a),
            [false, true]
                if open_lowerable.pop().is_none() => {
                    raisable.push(a);
                }
            _ => {}
        }
    }
    (raisable, open_lowerable)
}

/// `E~ m`: raises the last unmatched `[0 1]` row.
pub fn big_e(m: &BinaryMatrix) -> Option<BinaryMatrix> {
    let (raisable, _) = reduced_signature(m);
    raisable.last().map(|&a| m.with_row(a, [true, false]))
}

/// `F~ m`: lowers the first unmatched `[1 0]` row.
pub fn big_f(m: &BinaryMatrix) -> Option<BinaryMatrix> {
    let (_, lowerable) = reduced_signature(m);
    lowerable.first().map(|&a| m.with_row(a, [false, true]))
}

/// `sigma` from the string lengths of `E~` and `F~`.
pub fn sigma(m: &BinaryMatrix) -> SigmaPair {
    let (r, l) = reduced_signature(m);
    SigmaPair::new(r.len() as i64, l.len() as i64)
}

/// `sigma` from the closed max-formulas with `<k> = max(k, 0)`.
pub fn sigma_closed(m: &BinaryMatrix) -> SigmaPair {
    let n = m.n();
    let pos = |k: i64| k.max(0);
    let x = |a: usize, b: usize| m.row(a)[b - 1] as i64;
    let eps = (1..=n)
        .map(|k| {
            let plus: i64 = (1..=k).map(|i| pos(x(i, 2) - x(i, 1))).sum();
            let minus: i64 = (1..k).map(|i| pos(x(i, 1) - x(i, 2))).sum();
            plus - minus
        })
        .max()
        .unwrap_or(0);
    let phi = (1..=n)
        .map(|k| {
            let body: i64 = (k..n).map(|i| pos(x(i, 1) - x(i, 2)) - pos(x(i + 1, 2) - x(i + 1, 1))).sum();
            body + pos(x(n, 1) - x(n, 2))
        })
        .max()
        .unwrap_or(0);
    SigmaPair::new(eps, phi)
}

fn require_double_end(t: &AffineType) -> Result<()> {
    if t.diamond() == (DiamondShape::S11, DiamondShape::S2) {
        Ok(())
    } else {
        Err(Error::WrongType(format!("varsigma needs A_{{2n-1}}^(2), got {t}")))
    }
}

/// `varsigma(m)`: `F~ m` when `phi(m) = n-k`, `E~ m` when `phi(m) = n-k-1`.
pub fn varsigma(t: &AffineType, k: usize, m: &BinaryMatrix) -> Result<BinaryMatrix> {
    require_double_end(t)?;
    let n = t.n;
    if k == 0 || k >= n {
        return Err(Error::InvalidParameters(format!("k={k} must lie in 1..n-1")));
    }
    let phi = sigma(m).phi;
    let out = if phi == (n - k) as i64 {
        big_f(m)
    } else if phi + 1 == (n - k) as i64 {
        big_e(m)
    } else {
        return Err(Error::DomainViolation(format!("phi({}) = {phi} for k={k}", m.text())));
    };
    out.ok_or_else(|| Error::DomainViolation(format!("varsigma undefined at {}", m.text())))
}

/// Graph on `varsigma`-orbits `{m, varsigma(m)}`. Each orbit is named by its
/// smaller id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientGraph {
    pub affine_type: AffineType,
    pub k: usize,
    /// `(representative, partner)` sorted by representative.
    pub orbits: Vec<(BinaryMatrix, BinaryMatrix)>,
    pub weights: Vec<Weight>,
    /// `(src orbit, dst orbit, color)` by orbit representative id.
    pub edges: Vec<(u64, u64, usize)>,
}

impl QuotientGraph {
    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }
}

/// Quotient of a full component `C(v_{k,n-k})` by `varsigma`. Fails if the
/// edges between orbits depend on the representative.
pub fn quotient_graph(g: &CrystalGraph, k: usize) -> Result<QuotientGraph> {
    let t = g.affine_type;
    require_double_end(&t)?;
    let n = t.n;
    let mut rep_of: BTreeMap<u64, u64> = BTreeMap::new();
    let mut orbits = Vec::new();
    for v in &g.vertices {
        let m = v.as_matrix().ok_or_else(|| Error::VariantMismatch(v.text()))?;
        let partner = varsigma(&t, k, &m)?;
        if partner == m || !g.contains(partner.id()) {
            return Err(Error::DomainViolation(format!("varsigma not an involution at {}", m.text())));
        }
        let rep = m.id().min(partner.id());
        rep_of.insert(m.id(), rep);
        if rep == m.id() {
            orbits.push((m, partner));
        }
    }
    let ops = CrystalOps::new(t);
    let mut edges = BTreeSet::new();
    for &(a, b) in &orbits {
        for i in 0..=n {
            let targets: Vec<Option<u64>> = [a, b].iter().map(|x| ops.f(i, x.id()).map(|y| rep_of[&y])).collect();
            if targets[0] != targets[1] {
                return Err(Error::DomainViolation(format!("quotient edge of color {i} at {} is ill-defined", a.text())));
            }
            if let Some(dst) = targets[0] {
                edges.insert((a.id(), dst, i));
            }
        }
    }
    Ok(QuotientGraph {
        affine_type: t,
        k,
        weights: orbits.iter().map(|(a, _)| ops.weight(a.id())).collect(),
        orbits,
        edges: edges.into_iter().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::KacLabel;
    use crate::crystal::v_kl;

    fn mx(s: &str) -> BinaryMatrix {
        BinaryMatrix::parse(s).unwrap()
    }

    #[test]
    fn worked_example() {
        let m = mx("10/11/01");
        assert_eq!(sigma(&m), SigmaPair::new(1, 1));
        assert_eq!(sigma_closed(&m), SigmaPair::new(1, 1));
        assert_eq!(big_e(&m), Some(mx("10/11/10")));
        let t = AffineType::new(KacLabel::A2Odd, 3).unwrap();
        assert_eq!(varsigma(&t, 1, &m).unwrap(), mx("10/11/10"));
    }

    #[test]
    fn trivial_cases() {
        let z = BinaryMatrix::zero(4);
        assert_eq!((big_e(&z), big_f(&z)), (None, None));
        let full = mx("11/11/11");
        assert_eq!(sigma(&full), SigmaPair::new(0, 0));
    }

    #[test]
    fn representatives_sigma() {
        for n in 2..=6 {
            for k in 0..=n {
                for l in 0..=n - k {
                    let v = v_kl(n, k, l).unwrap();
                    let expect = SigmaPair::new((n - k - l) as i64, l as i64);
                    assert_eq!(sigma(&v), expect);
                    assert_eq!(sigma_closed(&v), expect);
                }
            }
        }
    }

    #[test]
    fn closed_formulas_small_n() {
        for n in 2..=6 {
            for id in 0..1u64 << (2 * n) {
                let m = BinaryMatrix::from_id(n, id);
                assert_eq!(sigma(&m), sigma_closed(&m), "{}", m.text());
                if let Some(y) = big_e(&m) {
                    assert_eq!(big_f(&y), Some(m));
                }
            }
        }
    }

    #[test]
    fn varsigma_maps_representatives() {
        for n in 2..=6 {
            let t = AffineType::new(KacLabel::A2Odd, n).unwrap();
            for k in 1..n {
                let v = v_kl(n, k, n - k).unwrap();
                assert_eq!(varsigma(&t, k, &v).unwrap(), v_kl(n, k, n - k - 1).unwrap());
            }
        }
        let c = AffineType::new(KacLabel::C1, 3).unwrap();
        assert!(varsigma(&c, 1, &mx("10/11/01")).is_err());
    }
}
