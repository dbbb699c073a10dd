//! Exhaustive verification suites for the decomposition statements, and the
//! decomposition report.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use petgraph::unionfind::UnionFind;
use rayon::prelude::*;
use serde::Serialize;

use crate::bicrystal::{quotient_graph, sigma, sigma_closed, varsigma, SigmaPair};
use crate::cartan::{cartan_data, AffineType, CartanData, DiamondShape, KacLabel};
use crate::crystal::{delta_word, v_kl, v_spin, BinaryMatrix, CrystalGraph, CrystalOps, Weight};
use crate::error::{Error, Result};

/// Outcome of one suite: pass/fail plus every discrepancy found.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub affine_type: String,
    pub n: usize,
    pub k: Option<usize>,
    pub passed: bool,
    pub checks: u64,
    pub discrepancies: Vec<String>,
}

impl SuiteReport {
    fn new(suite: &str, t: &AffineType, k: Option<usize>) -> Self {
        Self {
            suite: suite.to_string(),
            affine_type: t.label.cli_name().to_string(),
            n: t.n,
            k,
            passed: true,
            checks: 0,
            discrepancies: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.passed = false;
            self.discrepancies.push(msg());
        }
    }

    fn absorb(&mut self, other: SuiteReport) {
        self.checks += other.checks;
        self.passed &= other.passed;
        self.discrepancies.extend(other.discrepancies);
    }
}

fn require_matrix(t: &AffineType) -> Result<()> {
    if t.is_matrix() {
        Ok(())
    } else {
        Err(Error::WrongType(format!("{t} has a spin crystal, the suite needs matrices")))
    }
}

fn require_spin(t: &AffineType) -> Result<()> {
    if t.is_matrix() {
        Err(Error::WrongType(format!("{t} has a matrix crystal, the suite needs a spin type")))
    } else {
        Ok(())
    }
}

fn require_a2odd(t: &AffineType) -> Result<()> {
    if t.label == KacLabel::A2Odd {
        Ok(())
    } else {
        Err(Error::WrongType(format!("suite needs A_{{2n-1}}^(2), got {t}")))
    }
}

/// Index set of the component representatives `v_{k,l}`.
pub fn h_diamond(t: &AffineType) -> Result<Vec<(usize, usize)>> {
    require_matrix(t)?;
    let n = t.n;
    let pairs = match t.label {
        KacLabel::C1 => (0..=n).flat_map(|k| (0..=n - k).map(move |l| (k, l))).collect(),
        KacLabel::A2Even => (0..=n).map(|k| (k, n - k)).collect(),
        KacLabel::A2EvenDagger => (0..=n).map(|k| (k, 0)).collect(),
        KacLabel::A2Odd => {
            let mut v: Vec<(usize, usize)> = (0..=n).map(|k| (k, n - k)).collect();
            v.push((0, n - 1));
            v
        }
        _ => unreachable!("matrix types are covered above"),
    };
    Ok(pairs)
}

/// Connected components by repeated breadth-first search, ordered by their
/// smallest id.
pub fn components_bfs(ops: &CrystalOps) -> Vec<Vec<u64>> {
    let size = ops.ground_size();
    let mut seen = vec![false; size as usize];
    let mut out = Vec::new();
    for id in 0..size {
        if !seen[id as usize] {
            let comp = ops.component_ids(id);
            for &x in &comp {
                seen[x as usize] = true;
            }
            out.push(comp);
        }
    }
    out
}

/// Independent partition: union-find over every `f~_i` edge of the ground set.
pub fn components_union_find(ops: &CrystalOps) -> Vec<Vec<u64>> {
    let size = ops.ground_size() as usize;
    let mut uf = UnionFind::<usize>::new(size);
    for id in 0..size {
        for i in 0..=ops.n() {
            if let Some(y) = ops.f(i, id as u64) {
                uf.union(id, y as usize);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<u64>> = BTreeMap::new();
    for id in 0..size {
        groups.entry(uf.find(id)).or_default().push(id as u64);
    }
    let mut comps: Vec<Vec<u64>> = groups.into_values().collect();
    comps.sort_by_key(|c| c[0]);
    comps
}

/// Classical (`I_0 = {1..n}`) components inside a set of ids.
fn classical_components(ops: &CrystalOps, ids: &[u64]) -> Vec<Vec<u64>> {
    let mut seen: BTreeSet<u64> = BTreeSet::new();
    let mut out = Vec::new();
    for &start in ids {
        if seen.contains(&start) {
            continue;
        }
        let mut comp = vec![start];
        seen.insert(start);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for i in 1..=ops.n() {
                for y in [ops.e(i, x), ops.f(i, x)].into_iter().flatten() {
                    if seen.insert(y) {
                        comp.push(y);
                        queue.push_back(y);
                    }
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Expected weights of the classical highest elements of `C(v_{k,l})`.
pub fn expected_branching(t: &AffineType, cd: &CartanData, k: usize) -> Vec<Weight> {
    let n = t.n;
    let w = |j: usize| Weight(cd.level_zero_fundamental(j));
    let mut out: Vec<Weight> = if k == 0 {
        vec![w(0)]
    } else {
        match t.label {
            KacLabel::C1 | KacLabel::A2EvenDagger => vec![w(k)],
            KacLabel::A2Even => (0..=k).map(|i| w(k - i)).collect(),
            KacLabel::A2Odd if k == n => (0..=n / 2).map(|i| w(n - 2 * i)).collect(),
            KacLabel::A2Odd => (0..=k / 2).flat_map(|i| [w(k - 2 * i), w(k - 2 * i)]).collect(),
            _ => Vec::new(),
        }
    };
    out.sort();
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BranchTerm {
    pub highest: String,
    pub weight: Weight,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentRow {
    pub representative: String,
    pub element: String,
    pub k: Option<usize>,
    pub l: Option<usize>,
    pub size: usize,
    pub weight: Weight,
    pub branching: Vec<BranchTerm>,
    /// Multiplicities of `sigma` values (matrix crystals only).
    pub sigma: Vec<(SigmaPair, usize)>,
    /// Sizes of `phi = n-k` and `phi = n-k-1` parts, for the components
    /// carrying `varsigma`.
    pub plus_minus: Option<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub affine_type: String,
    pub kac_label: String,
    pub n: usize,
    pub ground_size: u64,
    pub components: Vec<ComponentRow>,
    /// Components not containing any expected representative.
    pub unmatched: Vec<Vec<String>>,
}

fn build_row(
    ops: &CrystalOps,
    label: String,
    rep: u64,
    k: Option<usize>,
    l: Option<usize>,
    comp: &[u64],
) -> ComponentRow {
    let t = ops.affine_type();
    let mut branching: Vec<BranchTerm> = classical_components(ops, comp)
        .into_iter()
        .flat_map(|cc| {
            let size = cc.len();
            cc.into_iter()
                .filter(|&x| ops.is_classical_highest(x))
                .map(move |x| (x, size))
                .collect::<Vec<_>>()
        })
        .map(|(x, size)| BranchTerm { highest: ops.element(x).text(), weight: ops.weight(x), size })
        .collect();
    branching.sort_by(|a, b| (&b.weight, &a.highest).cmp(&(&a.weight, &b.highest)));
    let mut sig: BTreeMap<SigmaPair, usize> = BTreeMap::new();
    let mut plus_minus = None;
    if ops.is_matrix() {
        for &x in comp {
            *sig.entry(sigma(&BinaryMatrix::from_id(t.n, x))).or_default() += 1;
        }
        if let (KacLabel::A2Odd, Some(k), Some(l)) = (t.label, k, l) {
            if k > 0 && k < t.n && l == t.n - k {
                let plus = sig.iter().filter(|(s, _)| s.phi == (t.n - k) as i64).map(|(_, c)| c).sum();
                let minus = sig.iter().filter(|(s, _)| s.phi + 1 == (t.n - k) as i64).map(|(_, c)| c).sum();
                plus_minus = Some((plus, minus));
            }
        }
    }
    ComponentRow {
        representative: label,
        element: ops.element(rep).text(),
        k,
        l,
        size: comp.len(),
        weight: ops.weight(rep),
        branching,
        sigma: sig.into_iter().collect(),
        plus_minus,
    }
}

type Representative = (String, u64, Option<usize>, Option<usize>);

/// Expected representatives `(label, id, k, l)`.
fn representatives(t: &AffineType) -> Result<Vec<Representative>> {
    let n = t.n;
    if t.is_matrix() {
        Ok(h_diamond(t)?
            .into_iter()
            .map(|(k, l)| (format!("v_{{{k},{l}}}"), v_kl(n, k, l).expect("valid").id(), Some(k), Some(l)))
            .collect())
    } else {
        let ks: Vec<usize> = if t.diamond() == (DiamondShape::S11, DiamondShape::S11) {
            vec![n, n - 1]
        } else {
            vec![n]
        };
        Ok(ks
            .into_iter()
            .map(|k| (format!("v_{k}"), v_spin(n, k).expect("valid").bits() as u64, Some(k), None))
            .collect())
    }
}

pub fn decompose(t: &AffineType) -> Result<DecompositionReport> {
    let ops = CrystalOps::new(*t);
    let comps = components_bfs(&ops);
    let mut owner: HashMap<u64, usize> = HashMap::new();
    for (c, comp) in comps.iter().enumerate() {
        for &x in comp {
            owner.insert(x, c);
        }
    }
    let mut used = BTreeSet::new();
    let mut rows = Vec::new();
    for (label, rep, k, l) in representatives(t)? {
        let c = owner[&rep];
        used.insert(c);
        rows.push(build_row(&ops, label, rep, k, l, &comps[c]));
    }
    let unmatched = comps
        .iter()
        .enumerate()
        .filter(|(c, _)| !used.contains(c))
        .map(|(_, comp)| comp.iter().map(|&x| ops.element(x).text()).collect())
        .collect();
    Ok(DecompositionReport {
        affine_type: t.label.cli_name().to_string(),
        kac_label: t.label.kac_name().to_string(),
        n: t.n,
        ground_size: ops.ground_size(),
        components: rows,
        unmatched,
    })
}

/// The ground set splits into the components of the `v_{k,l}`, `(k,l)` in
/// `H`, one each, and both partition algorithms agree.
pub fn verify_prop41(t: &AffineType) -> Result<SuiteReport> {
    require_matrix(t)?;
    let mut rep = SuiteReport::new("prop41", t, None);
    let ops = CrystalOps::new(*t);
    let n = t.n;
    let bfs = components_bfs(&ops);
    let uf = components_union_find(&ops);
    rep.check(bfs == uf, || "breadth-first and union-find partitions differ".to_string());
    let mut owner: HashMap<u64, usize> = HashMap::new();
    for (c, comp) in uf.iter().enumerate() {
        for &x in comp {
            owner.insert(x, c);
        }
    }
    let h = h_diamond(t)?;
    let mut hit = BTreeMap::new();
    for &(k, l) in &h {
        let c = owner[&v_kl(n, k, l)?.id()];
        if let Some(prev) = hit.insert(c, (k, l)) {
            rep.check(false, || format!("v_{{{k},{l}}} shares a component with v_{:?}", prev));
        }
    }
    rep.check(hit.len() == uf.len(), || format!("{} components but {} representatives", uf.len(), h.len()));
    let total: usize = uf.iter().map(Vec::len).sum();
    rep.check(total as u64 == ops.ground_size(), || format!("component sizes sum to {total}"));
    if t.label == KacLabel::A2Odd {
        for l in [n, n - 1] {
            let c = owner[&v_kl(n, 0, l)?.id()];
            rep.check(uf[c].len() == 1, || format!("C(v_{{0,{l}}}) has {} elements", uf[c].len()));
        }
        for k in 1..n {
            let a = owner[&v_kl(n, k, n - k)?.id()];
            let b = owner[&v_kl(n, k, n - k - 1)?.id()];
            rep.check(a == b, || format!("v_{{{k},{}}} and v_{{{k},{}}} lie in different components", n - k, n - k - 1));
        }
    }
    Ok(rep)
}

/// Classical branching of every `C(v_{k,l})`.
pub fn verify_thm42(t: &AffineType) -> Result<SuiteReport> {
    require_matrix(t)?;
    let mut rep = SuiteReport::new("thm42", t, None);
    let ops = CrystalOps::new(*t);
    let cd = cartan_data(t);
    for (k, l) in h_diamond(t)? {
        let comp = ops.component_ids(v_kl(t.n, k, l)?.id());
        let mut highest: Vec<Weight> = Vec::new();
        for cc in classical_components(&ops, &comp) {
            let tops: Vec<u64> = cc.iter().copied().filter(|&x| ops.is_classical_highest(x)).collect();
            rep.check(tops.len() == 1, || {
                format!("C(v_{{{k},{l}}}): classical component with {} highest elements", tops.len())
            });
            highest.extend(tops.into_iter().map(|x| ops.weight(x)));
        }
        highest.sort();
        let expected = expected_branching(t, &cd, k);
        rep.check(highest == expected, || {
            format!("C(v_{{{k},{l}}}): highest weights {:?}, expected {:?}", fmt_ws(&highest), fmt_ws(&expected))
        });
    }
    Ok(rep)
}

fn fmt_ws(ws: &[Weight]) -> Vec<String> {
    ws.iter().map(|w| w.to_string()).collect()
}

fn check_k(t: &AffineType, k: usize, lo: usize, hi: usize) -> Result<()> {
    if k < lo || k > hi {
        return Err(Error::InvalidParameters(format!("k={k} outside {lo}..={hi} for n={}", t.n)));
    }
    Ok(())
}

/// Range of `sigma` on `C(v_{k,n-k})` and the `phi` split.
pub fn verify_lem44(t: &AffineType, k: usize) -> Result<SuiteReport> {
    require_a2odd(t)?;
    check_k(t, k, 1, t.n - 1)?;
    let n = t.n as i64;
    let k64 = k as i64;
    let mut rep = SuiteReport::new("lem44", t, Some(k));
    let ops = CrystalOps::new(*t);
    let comp = ops.component_ids(v_kl(t.n, k, t.n - k)?.id());
    let (mut plus, mut minus) = (0usize, 0usize);
    for &x in &comp {
        let m = BinaryMatrix::from_id(t.n, x);
        let s = sigma(&m);
        let ok = (0..=k64 / 2).any(|i| s == SigmaPair::new(2 * i, n - k64) || s == SigmaPair::new(2 * i + 1, n - k64 - 1));
        rep.check(ok, || format!("sigma({}) = {s}", m.text()));
        if s.phi == n - k64 {
            plus += 1;
        } else if s.phi == n - k64 - 1 {
            minus += 1;
        }
    }
    rep.check(plus == minus, || format!("split sizes {plus} and {minus} differ"));
    Ok(rep)
}

/// `varsigma` is a fixed-point-free involution commuting with every
/// `e~_i`, `f~_i`.
pub fn verify_prop46(t: &AffineType, k: usize) -> Result<SuiteReport> {
    require_a2odd(t)?;
    check_k(t, k, 1, t.n - 1)?;
    let mut rep = SuiteReport::new("prop46", t, Some(k));
    let ops = CrystalOps::new(*t);
    let comp = ops.component_ids(v_kl(t.n, k, t.n - k)?.id());
    let members: BTreeSet<u64> = comp.iter().copied().collect();
    let vs = |x: u64| varsigma(t, k, &BinaryMatrix::from_id(t.n, x)).map(|m| m.id());
    for &x in &comp {
        let text = || ops.element(x).text();
        let Ok(y) = vs(x) else {
            rep.check(false, || format!("varsigma undefined at {}", text()));
            continue;
        };
        rep.check(y != x, || format!("varsigma fixes {}", text()));
        rep.check(members.contains(&y), || format!("varsigma({}) leaves the component", text()));
        rep.check(vs(y).ok() == Some(x), || format!("varsigma^2 moves {}", text()));
        for i in 0..=t.n {
            let lhs_e = ops.e(i, y);
            let rhs_e = ops.e(i, x).map(|z| vs(z).ok());
            rep.check(lhs_e == rhs_e.flatten() && (rhs_e.is_none() || rhs_e.flatten().is_some()), || {
                format!("e~_{i} and varsigma do not commute at {}", text())
            });
            let lhs_f = ops.f(i, y);
            let rhs_f = ops.f(i, x).map(|z| vs(z).ok());
            rep.check(lhs_f == rhs_f.flatten() && (rhs_f.is_none() || rhs_f.flatten().is_some()), || {
                format!("f~_{i} and varsigma do not commute at {}", text())
            });
        }
    }
    Ok(rep)
}

pub fn verify_lem44_prop46(t: &AffineType, k: usize) -> Result<SuiteReport> {
    let mut rep = verify_lem44(t, k)?;
    rep.suite = "lem44+prop46".to_string();
    rep.absorb(verify_prop46(t, k)?);
    Ok(rep)
}

fn sigma_set(n: usize, pred: impl Fn(SigmaPair) -> bool + Sync) -> BTreeSet<u64> {
    (0..1u64 << (2 * n))
        .into_par_iter()
        .filter(|&x| pred(sigma(&BinaryMatrix::from_id(n, x))))
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

/// The components realizing `B(W(varpi_k))` coincide with the subsets of the
/// ground set cut out by `sigma`.
pub fn verify_thm58(t: &AffineType, k: usize) -> Result<SuiteReport> {
    require_matrix(t)?;
    check_k(t, k, 1, t.n)?;
    let mut rep = SuiteReport::new("thm58", t, Some(k));
    let ops = CrystalOps::new(*t);
    let n = t.n;
    let (ni, ki) = (n as i64, k as i64);
    let comp_of = |l: usize| -> Result<BTreeSet<u64>> {
        Ok(ops.component_ids(v_kl(n, k, l)?.id()).into_iter().collect())
    };
    let compare = |rep: &mut SuiteReport, what: String, comp: &BTreeSet<u64>, set: &BTreeSet<u64>| {
        rep.check(comp == set, || {
            format!("{what}: component has {} elements, sigma set has {}, {} disagree", comp.len(), set.len(), comp.symmetric_difference(set).count())
        });
    };
    match t.label {
        KacLabel::C1 => {
            for l in 0..=n - k {
                let target = SigmaPair::new(ni - ki - l as i64, l as i64);
                let set = sigma_set(n, |s| s == target);
                compare(&mut rep, format!("C(v_{{{k},{l}}}) vs sigma={target}"), &comp_of(l)?, &set);
            }
        }
        KacLabel::A2Even => {
            let set = sigma_set(n, |s| s.phi == ni - ki && s.eps <= ki);
            compare(&mut rep, format!("C(v_{{{k},{}}})", n - k), &comp_of(n - k)?, &set);
        }
        KacLabel::A2EvenDagger => {
            let set = sigma_set(n, |s| s.eps == ni - ki && s.phi <= ki);
            compare(&mut rep, format!("C(v_{{{k},0}})"), &comp_of(0)?, &set);
        }
        KacLabel::A2Odd if k == n => {
            let set = sigma_set(n, |s| s.phi == 0 && s.eps % 2 == 0 && s.eps <= ni);
            compare(&mut rep, format!("C(v_{{{n},0}})"), &comp_of(0)?, &set);
        }
        KacLabel::A2Odd => {
            let comp = comp_of(n - k)?;
            let plus: BTreeSet<u64> = comp
                .iter()
                .copied()
                .filter(|&x| sigma(&BinaryMatrix::from_id(n, x)).phi == ni - ki)
                .collect();
            let set = sigma_set(n, |s| s.phi == ni - ki && s.eps % 2 == 0 && s.eps <= 2 * (ni / 2));
            compare(&mut rep, format!("plus part of C(v_{{{k},{}}})", n - k), &plus, &set);
            let orbits = |ids: &BTreeSet<u64>| -> Result<BTreeSet<(u64, u64)>> {
                ids.iter()
                    .map(|&x| {
                        let y = varsigma(t, k, &BinaryMatrix::from_id(n, x))?.id();
                        Ok((x.min(y), x.max(y)))
                    })
                    .collect()
            };
            let from_comp = orbits(&comp)?;
            let from_set = orbits(&set)?;
            rep.check(from_comp == from_set, || "orbit sets differ".to_string());
        }
        _ => unreachable!(),
    }
    Ok(rep)
}

pub fn verify_thm58_all(t: &AffineType) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("thm58", t, None);
    for k in 1..=t.n {
        rep.absorb(verify_thm58(t, k)?);
    }
    Ok(rep)
}

/// Colored-digraph isomorphism by simultaneous search from two anchors.
pub fn aligned_isomorphic(ops: &CrystalOps, a: u64, b: u64) -> bool {
    let ca = ops.component_ids(a);
    let cb = ops.component_ids(b);
    if ca.len() != cb.len() {
        return false;
    }
    let mut fwd: HashMap<u64, u64> = HashMap::from([(a, b)]);
    let mut bwd: HashMap<u64, u64> = HashMap::from([(b, a)]);
    let mut queue = VecDeque::from([(a, b)]);
    while let Some((x, y)) = queue.pop_front() {
        for i in 0..=ops.n() {
            for (sx, sy) in [(ops.f(i, x), ops.f(i, y)), (ops.e(i, x), ops.e(i, y))] {
                match (sx, sy) {
                    (None, None) => {}
                    (Some(p), Some(q)) => match (fwd.get(&p), bwd.get(&q)) {
                        (None, None) => {
                            fwd.insert(p, q);
                            bwd.insert(q, p);
                            queue.push_back((p, q));
                        }
                        (Some(&q2), Some(&p2)) if q2 == q && p2 == p => {}
                        _ => return false,
                    },
                    _ => return false,
                }
            }
        }
    }
    fwd.len() == ca.len()
}

/// The unique element of `comp` with the given weight, if unique.
fn unique_of_weight(ops: &CrystalOps, comp: &[u64], w: &Weight) -> Option<u64> {
    let hits: Vec<u64> = comp.iter().copied().filter(|&x| &ops.weight(x) == w).collect();
    (hits.len() == 1).then(|| hits[0])
}

/// Multiplicities of the `W(varpi_k)` summands.
pub fn verify_cor57(t: &AffineType) -> Result<SuiteReport> {
    require_matrix(t)?;
    let mut rep = SuiteReport::new("cor57", t, None);
    let ops = CrystalOps::new(*t);
    let cd = cartan_data(t);
    let n = t.n;
    let h = h_diamond(t)?;
    let count = |k: usize| h.iter().filter(|p| p.0 == k).count();
    match t.label {
        KacLabel::C1 => {
            for k in 0..=n {
                rep.check(count(k) == n - k + 1, || format!("k={k}: {} components", count(k)));
                let w = Weight(cd.level_zero_fundamental(k));
                let anchor = |l: usize| -> Option<u64> {
                    let comp = ops.component_ids(v_kl(n, k, l).ok()?.id());
                    unique_of_weight(&ops, &comp, &w)
                };
                let base = anchor(0);
                rep.check(base.is_some(), || format!("C(v_{{{k},0}}) lacks a unique extremal element"));
                for l in 1..=n - k {
                    let other = anchor(l);
                    let iso = matches!((base, other), (Some(a), Some(b)) if aligned_isomorphic(&ops, a, b));
                    rep.check(iso, || format!("C(v_{{{k},{l}}}) is not isomorphic to C(v_{{{k},0}})"));
                }
            }
        }
        KacLabel::A2Even | KacLabel::A2EvenDagger => {
            for k in 0..=n {
                rep.check(count(k) == 1, || format!("k={k}: {} components", count(k)));
            }
        }
        KacLabel::A2Odd => {
            rep.check(count(n) == 1, || format!("k=n: {} components", count(n)));
            let singles = h
                .iter()
                .filter(|p| p.0 == 0)
                .filter(|&&(k, l)| ops.component_ids(v_kl(n, k, l).expect("valid").id()).len() == 1)
                .count();
            rep.check(count(0) == 2 && singles == 2, || format!("k=0: {} components, {singles} singletons", count(0)));
            for k in 1..n {
                rep.check(count(k) == 1, || format!("k={k}: {} components", count(k)));
                let g = CrystalGraph::from_ids(&ops, &ops.component_ids(v_kl(n, k, n - k)?.id()));
                match quotient_graph(&g, k) {
                    Ok(q) => {
                        rep.check(2 * q.len() == g.len(), || format!("k={k}: quotient has {} of {} vertices", q.len(), g.len()));
                        let w = Weight(cd.level_zero_fundamental(k));
                        let extremal = q.weights.iter().filter(|x| **x == w).count();
                        rep.check(extremal == 1, || format!("k={k}: quotient has {extremal} orbits of weight {w}"));
                    }
                    Err(e) => rep.check(false, || format!("k={k}: {e}")),
                }
            }
        }
        _ => unreachable!(),
    }
    Ok(rep)
}

/// Spin crystals: one component, or two for the `((1,1),(1,1))` type, all
/// weights of multiplicity one.
pub fn verify_spin(t: &AffineType) -> Result<SuiteReport> {
    require_spin(t)?;
    let mut rep = SuiteReport::new("spin", t, None);
    let ops = CrystalOps::new(*t);
    let comps = components_bfs(&ops);
    let n = t.n;
    let vn = v_spin(n, n)?.bits() as u64;
    let vn1 = v_spin(n, n - 1)?.bits() as u64;
    let find = |x: u64| comps.iter().position(|c| c.binary_search(&x).is_ok());
    if t.diamond() == (DiamondShape::S11, DiamondShape::S11) {
        rep.check(comps.len() == 2, || format!("{} components", comps.len()));
        rep.check(find(vn) != find(vn1), || "v_n and v_{n-1} share a component".to_string());
    } else {
        rep.check(comps.len() == 1, || format!("{} components", comps.len()));
    }
    let total: usize = comps.iter().map(Vec::len).sum();
    rep.check(total as u64 == ops.ground_size(), || format!("sizes sum to {total}"));
    for comp in &comps {
        let mut mult: HashMap<Weight, usize> = HashMap::new();
        for &x in comp {
            *mult.entry(ops.weight(x)).or_default() += 1;
        }
        for (w, c) in mult {
            rep.check(c == 1, || format!("weight {w} has multiplicity {c}"));
        }
    }
    Ok(rep)
}

/// `S_w` along the delta word swaps `v_{k,n-k}` and `v_{k,n-k-1}`, read in
/// either direction.
pub fn verify_deltaword(t: &AffineType, k: usize) -> Result<SuiteReport> {
    require_a2odd(t)?;
    check_k(t, k, 1, t.n - 1)?;
    let mut rep = SuiteReport::new("deltaword", t, Some(k));
    let ops = CrystalOps::new(*t);
    let word = delta_word(t, k)?;
    let a = v_kl(t.n, k, t.n - k)?.id();
    let b = v_kl(t.n, k, t.n - k - 1)?.id();
    let apply = |letters: Vec<usize>, x: u64| -> Result<u64> { letters.into_iter().try_fold(x, |cur, i| ops.reflect(i, cur)) };
    for (from, to) in [(a, b), (b, a)] {
        let fwd = apply(word.clone(), from)?;
        let rev = apply(word.iter().rev().copied().collect(), from)?;
        rep.check(fwd == to, || format!("word {word:?} sends {} to {}", ops.element(from).text(), ops.element(fwd).text()));
        rep.check(rev == to, || format!("reversed word sends {} to {}", ops.element(from).text(), ops.element(rev).text()));
    }
    Ok(rep)
}

/// Closed formulas for `sigma` against the row string lengths on all of
/// the ground set.
pub fn verify_sigma_formulas(n: usize) -> SuiteReport {
    let t = AffineType::new(KacLabel::C1, n.max(2)).expect("valid rank");
    let mut rep = SuiteReport::new("sigma", &t, None);
    let bad: Vec<u64> = (0..1u64 << (2 * n))
        .into_par_iter()
        .filter(|&x| {
            let m = BinaryMatrix::from_id(n, x);
            sigma(&m) != sigma_closed(&m)
        })
        .collect();
    rep.checks = 1u64 << (2 * n);
    if !bad.is_empty() {
        rep.passed = false;
        rep.discrepancies = bad.iter().take(20).map(|&x| BinaryMatrix::from_id(n, x).text()).collect();
    }
    rep
}

/// Suite names understood by [`run_suite`].
pub const SUITES: [&str; 9] = ["prop41", "thm42", "lem44", "prop46", "thm58", "cor57", "spin", "deltaword", "sigma"];

/// Runs a suite by name; `k = None` means every admissible `k`. `all` runs
/// every suite that applies to the type.
pub fn run_suite(name: &str, t: &AffineType, k: Option<usize>) -> Result<SuiteReport> {
    let per_k = |f: fn(&AffineType, usize) -> Result<SuiteReport>, lo: usize, hi: usize| -> Result<SuiteReport> {
        match k {
            Some(k) => f(t, k),
            None => {
                let mut all = SuiteReport::new(name, t, None);
                for k in lo..=hi {
                    all.absorb(f(t, k)?);
                }
                Ok(all)
            }
        }
    };
    match name {
        "prop41" => verify_prop41(t),
        "thm42" => verify_thm42(t),
        "lem44" => per_k(verify_lem44, 1, t.n - 1),
        "prop46" => per_k(verify_prop46, 1, t.n - 1),
        "thm58" => per_k(verify_thm58, 1, t.n),
        "cor57" => verify_cor57(t),
        "spin" => verify_spin(t),
        "deltaword" => per_k(verify_deltaword, 1, t.n - 1),
        "sigma" => Ok(verify_sigma_formulas(t.n)),
        "all" => {
            let names: Vec<&str> = if !t.is_matrix() {
                vec!["spin"]
            } else if t.label == KacLabel::A2Odd {
                vec!["prop41", "thm42", "lem44", "prop46", "thm58", "cor57", "deltaword", "sigma"]
            } else {
                vec!["prop41", "thm42", "thm58", "cor57", "sigma"]
            };
            let mut all = SuiteReport::new("all", t, k);
            for s in names {
                all.absorb(run_suite(s, t, k)?);
            }
            Ok(all)
        }
        other => Err(Error::InvalidParameters(format!("unknown suite `{other}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(l: KacLabel, n: usize) -> AffineType {
        AffineType::new(l, n).unwrap()
    }

    #[test]
    fn h_sets() {
        assert_eq!(h_diamond(&ty(KacLabel::C1, 2)).unwrap().len(), 6);
        assert_eq!(h_diamond(&ty(KacLabel::A2Even, 2)).unwrap(), vec![(0, 2), (1, 1), (2, 0)]);
        assert_eq!(h_diamond(&ty(KacLabel::A2Odd, 2)).unwrap(), vec![(0, 2), (1, 1), (2, 0), (0, 1)]);
        assert!(h_diamond(&ty(KacLabel::B1, 2)).is_err());
    }

    #[test]
    fn small_suites_pass() {
        for l in [KacLabel::C1, KacLabel::A2Even, KacLabel::A2EvenDagger, KacLabel::A2Odd] {
            for n in 2..=4 {
                let r = run_suite("all", &ty(l, n), None).unwrap();
                assert!(r.passed, "{l:?} n={n}: {:?}", r.discrepancies);
            }
        }
        for l in [KacLabel::B1, KacLabel::D1, KacLabel::D2] {
            let r = run_suite("all", &ty(l, 4), None).unwrap();
            assert!(r.passed, "{l:?}: {:?}", r.discrepancies);
        }
    }

    #[test]
    fn decomposition_rows() {
        let d = decompose(&ty(KacLabel::C1, 2)).unwrap();
        assert_eq!(d.components.len(), 6);
        assert_eq!(d.components.iter().map(|r| r.size).sum::<usize>(), 16);
        assert!(d.unmatched.is_empty());
        let s = decompose(&ty(KacLabel::D1, 3)).unwrap();
        assert_eq!(s.components.iter().map(|r| r.size).collect::<Vec<_>>(), vec![4, 4]);
        let o = decompose(&ty(KacLabel::A2Odd, 2)).unwrap();
        assert_eq!(o.components.iter().filter(|r| r.size == 1).count(), 2);
    }

    #[test]
    fn wrong_types_are_rejected() {
        assert!(verify_prop41(&ty(KacLabel::B1, 3)).is_err());
        assert!(verify_spin(&ty(KacLabel::C1, 3)).is_err());
        assert!(verify_prop46(&ty(KacLabel::C1, 3), 1).is_err());
        assert!(verify_deltaword(&ty(KacLabel::A2Odd, 3), 3).is_err());
    }
}
