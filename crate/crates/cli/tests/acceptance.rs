//! Acceptance run: one line per criterion, non-zero exit on any failure.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use wedge_crystal::bicrystal::{sigma, varsigma, SigmaPair};
use wedge_crystal::crystal::{v_kl, CrystalOps};
use wedge_crystal::fock::{
    lattice_and_crystal_match, representation, verify_deltaword_module, verify_highest, verify_polarization,
    verify_relations,
};
use wedge_crystal::theorems::{
    components_union_find, decompose, verify_cor57, verify_deltaword, verify_lem44, verify_prop41, verify_prop46,
    verify_sigma_formulas, verify_spin, verify_thm42, verify_thm58,
};
use wedge_crystal::{AffineType, BinaryMatrix, KacLabel};
use wedge_crystal_cli::{graph_document, to_dot, to_json, GraphDocument};

const MATRIX_TYPES: [KacLabel; 4] = [KacLabel::C1, KacLabel::A2Even, KacLabel::A2EvenDagger, KacLabel::A2Odd];
const SPIN_TYPES: [KacLabel; 3] = [KacLabel::B1, KacLabel::D1, KacLabel::D2];

fn ty(l: KacLabel, n: usize) -> AffineType {
    AffineType::new(l, n).unwrap()
}

#[derive(Default)]
struct Outcome {
    failures: Vec<String>,
    checks: u64,
}

impl Outcome {
    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(msg());
        }
    }

    fn suite(&mut self, r: wedge_crystal::Result<wedge_crystal::SuiteReport>, what: &str) {
        match r {
            Ok(r) => {
                self.checks += r.checks;
                if !r.passed {
                    self.failures.push(format!("{what}: {:?}", r.discrepancies.iter().take(3).collect::<Vec<_>>()));
                }
            }
            Err(e) => self.failures.push(format!("{what}: {e}")),
        }
    }
}

fn binom(n: usize, k: i64) -> usize {
    if k < 0 || k as usize > n {
        return 0;
    }
    let k = k as usize;
    (0..k).fold(1usize, |acc, j| acc * (n - j) / (j + 1))
}

/// Classical dimension of `W(varpi_k)`.
fn w_dim(l: KacLabel, n: usize, k: usize) -> usize {
    let k = k as i64;
    match l {
        KacLabel::C1 => binom(2 * n, k) - binom(2 * n, k - 2),
        KacLabel::A2Even | KacLabel::A2EvenDagger => binom(2 * n + 1, k),
        KacLabel::A2Odd => binom(2 * n, k),
        _ => unreachable!(),
    }
}

fn criterion1() -> Outcome {
    let mut o = Outcome::default();
    for l in MATRIX_TYPES {
        for n in 2..=6 {
            let t = ty(l, n);
            let start = Instant::now();
            o.suite(verify_prop41(&t), &format!("{l:?} n={n}"));
            let elapsed = start.elapsed();
            o.check(elapsed < Duration::from_secs(10), || format!("{l:?} n={n} took {elapsed:?}"));
            // Component sizes against classical dimensions.
            let d = decompose(&t).unwrap();
            for c in &d.components {
                let (k, l_) = (c.k.unwrap(), c.l.unwrap());
                let expected = match l {
                    KacLabel::A2Odd if k > 0 && k < n => 2 * w_dim(l, n, k),
                    _ => w_dim(l, n, k),
                };
                o.check(c.size == expected, || format!("{l:?} n={n} C(v_{{{k},{l_}}}) has {} elements, expected {expected}", c.size));
            }
        }
    }
    o
}

fn criterion2() -> Outcome {
    let mut o = Outcome::default();
    for l in SPIN_TYPES {
        for n in 2..=10 {
            o.suite(verify_spin(&ty(l, n)), &format!("{l:?} n={n}"));
        }
    }
    o
}

fn criterion3() -> Outcome {
    let mut o = Outcome::default();
    for l in MATRIX_TYPES {
        for n in 2..=6 {
            o.suite(verify_thm42(&ty(l, n)), &format!("{l:?} n={n}"));
        }
    }
    o
}

fn criterion4() -> Outcome {
    let mut o = Outcome::default();
    for n in 2..=8 {
        o.suite(Ok(verify_sigma_formulas(n)), &format!("n={n}"));
    }
    o
}

fn criterion5() -> Outcome {
    let mut o = Outcome::default();
    for n in 2..=6 {
        let t = ty(KacLabel::A2Odd, n);
        for k in 1..n {
            o.suite(verify_lem44(&t, k), &format!("lem44 n={n} k={k}"));
            o.suite(verify_prop46(&t, k), &format!("prop46 n={n} k={k}"));
        }
    }
    o
}

fn criterion6() -> Outcome {
    let mut o = Outcome::default();
    for n in 2..=6 {
        let t = ty(KacLabel::A2Odd, n);
        for k in 1..n {
            o.suite(verify_deltaword(&t, k), &format!("n={n} k={k}"));
        }
    }
    o
}

fn criterion7() -> Outcome {
    let mut o = Outcome::default();
    for l in MATRIX_TYPES {
        for n in 2..=6 {
            let t = ty(l, n);
            for k in 1..=n {
                o.suite(verify_thm58(&t, k), &format!("{l:?} n={n} k={k}"));
            }
        }
    }
    o
}

fn criterion8() -> Outcome {
    let mut o = Outcome::default();
    for l in MATRIX_TYPES {
        for n in 2..=6 {
            o.suite(verify_cor57(&ty(l, n)), &format!("{l:?} n={n}"));
        }
    }
    o
}

fn criterion9() -> Outcome {
    let mut o = Outcome::default();
    for l in KacLabel::ALL {
        for n in 2..=3 {
            let rep = representation(&ty(l, n));
            let mut reports =
                vec![verify_relations(&rep), verify_polarization(&rep), lattice_and_crystal_match(&rep), verify_highest(&rep)];
            if l == KacLabel::A2Odd {
                reports.extend((1..n).map(|k| verify_deltaword_module(&rep, k).unwrap()));
            }
            for r in reports {
                o.checks += r.items.len() as u64;
                if !r.passed {
                    let names: Vec<String> = r.failures().map(|c| c.name.clone()).collect();
                    o.failures.push(format!("{l:?} n={n} {}: {names:?}", r.check));
                }
            }
        }
    }
    o
}

struct Drawing {
    label: &'static str,
    t: AffineType,
    k: usize,
    l: Option<usize>,
    quotient: bool,
    in_sigma_set: fn(SigmaPair) -> bool,
}

fn criterion10() -> Outcome {
    let mut o = Outcome::default();
    let drawings = [
        Drawing { label: "C_3^(1) C(v_{2,1})", t: ty(KacLabel::C1, 3), k: 2, l: Some(1), quotient: false, in_sigma_set: |s| s == SigmaPair::new(0, 1) },
        Drawing { label: "A_6^(2) C(v_{2,1})", t: ty(KacLabel::A2Even, 3), k: 2, l: None, quotient: false, in_sigma_set: |s| s.phi == 1 && s.eps <= 2 },
        Drawing { label: "A_6^(2)+ C(v_{2,0})", t: ty(KacLabel::A2EvenDagger, 3), k: 2, l: None, quotient: false, in_sigma_set: |s| s.eps == 1 && s.phi <= 2 },
        Drawing { label: "A_5^(2) C(v_{2,1})/varsigma", t: ty(KacLabel::A2Odd, 3), k: 2, l: None, quotient: true, in_sigma_set: |s| s.phi == 1 && s.eps % 2 == 0 && s.eps <= 2 },
    ];
    for fig in drawings {
        let doc = match graph_document(&fig.t, fig.k, fig.l, fig.quotient) {
            Ok(d) => d,
            Err(e) => {
                o.failures.push(format!("{}: {e}", fig.label));
                continue;
            }
        };
        let n = fig.t.n;
        let ops = CrystalOps::new(fig.t);
        // Oracle: union-find closure over the whole ground set.
        let start = v_kl(n, fig.k, doc.header.l.unwrap()).unwrap().id();
        let comp: BTreeSet<u64> =
            components_union_find(&ops).into_iter().find(|c| c.contains(&start)).unwrap().into_iter().collect();
        let sigma_set: BTreeSet<u64> = (0..ops.ground_size())
            .filter(|&x| (fig.in_sigma_set)(sigma(&BinaryMatrix::from_id(n, x))))
            .collect();
        let ids: BTreeSet<u64> = doc.vertices.iter().map(|v| v.id).collect();
        if fig.quotient {
            let orbit = |x: u64| {
                let y = varsigma(&fig.t, fig.k, &BinaryMatrix::from_id(n, x)).unwrap().id();
                x.min(y)
            };
            let orbits: BTreeSet<u64> = comp.iter().map(|&x| orbit(x)).collect();
            let edges: BTreeSet<(u64, u64, usize)> = comp
                .iter()
                .flat_map(|&x| (0..=n).filter_map(move |i| ops.f(i, x).map(|y| (x, y, i))))
                .map(|(x, y, i)| (orbit(x), orbit(y), i))
                .collect();
            o.check(ids == orbits, || format!("{}: vertex set differs from the oracle", fig.label));
            o.check(doc.edges.len() == edges.len(), || format!("{}: {} edges, oracle {}", fig.label, doc.edges.len(), edges.len()));
            let per_orbit: BTreeMap<u64, usize> =
                sigma_set.iter().fold(BTreeMap::new(), |mut m, &x| {
                    *m.entry(orbit(x)).or_default() += 1;
                    m
                });
            o.check(sigma_set.is_subset(&comp) && per_orbit.len() == ids.len() && per_orbit.values().all(|&c| c == 1), || {
                format!("{}: sigma set does not pick one element per orbit", fig.label)
            });
        } else {
            let edges = comp.iter().map(|&x| (0..=n).filter(|&i| ops.f(i, x).is_some()).count()).sum::<usize>();
            o.check(ids == comp, || format!("{}: vertex set differs from the oracle", fig.label));
            o.check(doc.edges.len() == edges, || format!("{}: {} edges, oracle {edges}", fig.label, doc.edges.len()));
            o.check(ids == sigma_set, || format!("{}: vertex set differs from its sigma description", fig.label));
        }
        let again: GraphDocument = serde_json::from_str(&to_json(&doc)).unwrap();
        o.check(again == doc && to_json(&again) == to_json(&doc), || format!("{}: JSON round trip", fig.label));
        let redo = graph_document(&fig.t, fig.k, fig.l, fig.quotient).unwrap();
        o.check(to_dot(&redo) == to_dot(&doc), || format!("{}: DOT output not stable", fig.label));
    }
    // C(v_{2,1}) of C_3^(1) is isomorphic to C(v_{2,0}) = {sigma = (1, 0)}.
    let c3 = ty(KacLabel::C1, 3);
    let fig1 = graph_document(&c3, 2, Some(1), false).unwrap();
    let alt = (0..64u64).filter(|&x| sigma(&BinaryMatrix::from_id(3, x)) == SigmaPair::new(1, 0)).count();
    o.check(fig1.vertices.len() == alt, || format!("C(v_{{2,1}}) has {} vertices, sigma=(1,0) has {alt}", fig1.vertices.len()));
    o
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("component partition equals {C(v_kl)}, n=2..6", criterion1),
        ("spin decomposition and multiplicity one, n=2..10", criterion2),
        ("classical branching multisets, n=2..6", criterion3),
        ("closed formulas for eps/phi, n=2..8", criterion4),
        ("sigma range and varsigma commutation, n=2..6", criterion5),
        ("delta word swaps v_{k,n-k} and v_{k,n-k-1}, n=2..6", criterion6),
        ("sigma-set equalities, n=2..6", criterion7),
        ("multiplicities of W(varpi_k), n=2..6", criterion8),
        ("Clifford module relations, polarization, crystal match, n=2,3", criterion9),
        ("graph export against union-find closure", criterion10),
    ];
    let mut failed = 0;
    for (idx, (desc, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let status = if out.failures.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {status}: {desc} ({} checks, {:.2?})", idx + 1, out.checks, start.elapsed());
        for f in out.failures.iter().take(10) {
            println!("    {f}");
        }
        if !out.failures.is_empty() {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} of 10 criteria failed");
        std::process::exit(1);
    }
    println!("all 10 criteria passed");
}
