//! End-to-end acceptance checks. Each test prints one `PASS`/`FAIL` line to
//! stderr (uncaptured, so it shows in a plain `cargo test` run) and then
//! asserts.

use std::collections::BTreeSet;
use std::io::Write;
use std::time::Instant;

use alphaform::alpha::*;
use alphaform::combinat::perfect_matchings;
use alphaform::dodgson::Dodgson;
use alphaform::forms::{AlphaForm, DiffForm, Generator, ScalarPrefactor};
use alphaform::graph::families::{self, dunce_cap, multiedge};
use alphaform::graph::Graph;
use alphaform::poly::{parse_poly, MPoly};
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(n: usize, title: &str, failures: &[String]) {
    let mut err = std::io::stderr().lock();
    if failures.is_empty() {
        let _ = writeln!(err, "criterion {n:>2} PASS  {title}");
    } else {
        let _ = writeln!(err, "criterion {n:>2} FAIL  {title}: {}", failures.join("; "));
    }
    assert!(failures.is_empty(), "criterion {n}: {}", failures.join("; "));
}

fn check(failures: &mut Vec<String>, ok: bool, what: impl Into<String>) {
    if !ok {
        failures.push(what.into());
    }
}

fn da(es: &[usize]) -> Vec<Generator> {
    es.iter().map(|&e| Generator::DA(e)).collect()
}

fn wedge_vanishes(a: &AlphaForm) -> Result<bool, AlphaError> {
    Ok(wedge_self(a)?.iter().all(|c| c.value.is_zero()))
}

#[test]
fn c01_dunce_cap_alpha() {
    let mut f = Vec::new();
    let start = Instant::now();
    let a = alpha_tree_sum(&dunce_cap()).unwrap();
    let elapsed = start.elapsed();

    let reg = dunce_cap().edge_registry();
    let p = |s: &str| parse_poly(&reg, s).unwrap();
    let mut body = DiffForm::zero(&reg);
    body.add_term(da(&[1, 3]), p("a4"));
    body.add_term(da(&[2, 3]), p("a4"));
    body.add_term(da(&[1, 4]), p("-a3"));
    body.add_term(da(&[2, 4]), p("-a3"));
    body.add_term(da(&[3, 4]), p("a1 + a2"));
    let mut pre = ScalarPrefactor::rational(BigRational::new(1.into(), 8.into()), 4);
    pre.pi_half = a.prefactor.pi_half;
    pre.psi_half = -3;

    check(&mut f, a.psi == p("a1*a3 + a2*a3 + a1*a4 + a2*a4 + a3*a4"), format!("psi = {}", a.psi));
    check(&mut f, a.body == body, format!("body = {}", a.body));
    check(&mut f, a.prefactor == pre, format!("prefactor = {:?}", a.prefactor));
    check(&mut f, a.render_text(false).starts_with("1/(8·ψ^(3/2))"), "rendered prefactor");
    check(&mut f, elapsed.as_secs_f64() < 1.0, format!("took {elapsed:?}"));
    report(1, &format!("dunce's cap alpha, term for term ({elapsed:.1?})"), &f);
}

#[test]
fn c02_dunce_cap_dodgsons() {
    let mut f = Vec::new();
    let d = Dodgson::new(&dunce_cap());
    let p = |s: &str| parse_poly(d.registry(), s).unwrap();
    for (v, w, want) in [(1, 1, "a1*a2*a3 + a1*a2*a4 + a2*a3*a4"), (1, 2, "-a2*a3*a4"), (2, 2, "a1*a3*a4 + a2*a3*a4")] {
        let got = d.vertex(v, w).unwrap();
        check(&mut f, got == p(want), format!("psi^{{{v},{w}}} = {got}"));
    }
    report(2, "dunce's cap vertex Dodgson polynomials", &f);
}

#[test]
fn c03_tree_signs() {
    let g = dunce_cap();
    let trees = [[1, 3], [1, 4], [1, 2], [2, 3], [2, 4]];
    let got: Vec<i64> = trees.iter().map(|t| g.tree_sign(t).unwrap()).collect();
    let mut f = Vec::new();
    check(&mut f, got == [-1, 1, 1, 1, -1], format!("signs {got:?}"));
    let listed: BTreeSet<Vec<usize>> = g.spanning_trees().into_iter().collect();
    let expected: BTreeSet<Vec<usize>> = trees.iter().map(|t| t.to_vec()).collect();
    check(&mut f, listed == expected, format!("trees {listed:?}"));
    report(3, "dunce's cap tree signs", &f);
}

#[test]
fn c04_multiedge_vanishes() {
    let mut f = Vec::new();
    let g = multiedge();
    let a = alpha_tree_sum(&g).unwrap();
    let b = alpha_brute(&g).unwrap();
    check(&mut f, a.is_zero(), "tree sum nonzero");
    check(&mut f, b.is_zero(), "brute force nonzero");
    check(&mut f, zero_reason(&g) == Some("odd loop number"), "zero reason");
    report(4, "two-edge multiedge has alpha = 0", &f);
}

#[test]
fn c05_pipelines_agree() {
    let start = Instant::now();
    let mut graphs = families::enumerate_multigraphs(4, 6);
    let exhaustive = graphs.len();
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for _ in 0..100 {
        let v = rng.gen_range(2..=5);
        let e = rng.gen_range(v - 1..=8);
        graphs.push(families::random_connected(rng.gen(), v, e).unwrap());
    }
    let mut f = Vec::new();
    for g in &graphs {
        let a = pipelines_agree(g).unwrap();
        check(&mut f, a.agree, format!("{:?}: witness {:?}", g.edges(), a.witness.map(|w| w.0)));
    }
    let elapsed = start.elapsed();
    check(&mut f, elapsed.as_secs() < 300, format!("took {elapsed:?}"));
    report(5, &format!("brute force = tree sum on {exhaustive} enumerated + 100 random graphs ({elapsed:.1?})"), &f);
}

#[test]
fn c06_nilpotency_on_corpus() {
    let start = Instant::now();
    let mut f = Vec::new();
    let mut checked = Vec::new();
    for (name, g) in families::corpus() {
        let loops = g.loop_number();
        if !g.connectivity_profile().one_pi || loops == 0 || loops % 2 == 1 || g.edge_count() > 10 {
            continue;
        }
        let a = alpha_tree_sum(&g).unwrap();
        check(&mut f, wedge_vanishes(&a).unwrap(), format!("{name}: alpha^alpha != 0"));
        checked.push(name);
    }
    for required in ["dunce-cap", "k4-doubled", "banana-3", "theta-2-2-2"] {
        check(&mut f, checked.iter().any(|n| n == required), format!("{required} not covered"));
    }
    let elapsed = start.elapsed();
    check(&mut f, elapsed.as_secs() < 600, format!("took {elapsed:?}"));
    report(6, &format!("alpha^alpha = 0 on {} corpus graphs ({elapsed:.1?})", checked.len()), &f);
}

#[test]
fn c07_formal_quadratic_expression() {
    let mut f = Vec::new();
    let start = Instant::now();
    let q2 = qe_formal(2).unwrap();
    check(&mut f, q2.is_zero(), format!("L = 2: {q2}"));
    check(&mut f, qe_formal_unquotiented(2).unwrap().is_zero(), "L = 2 unquotiented");
    let q4 = qe_formal(4).unwrap();
    check(&mut f, q4.is_zero(), format!("L = 4: {} terms left", q4.num_terms()));
    let elapsed = start.elapsed();
    check(&mut f, elapsed.as_secs() < 300, format!("took {elapsed:?}"));
    report(7, &format!("formal sum vanishes for L = 2 and 4 ({elapsed:.1?})"), &f);
}

#[test]
fn c08_cancellation_certificates() {
    let mut f = Vec::new();
    for (loops, terms) in [(2, 24), (4, 362_880)] {
        let c = cancellation_certificate(loops).unwrap();
        check(&mut f, c.terms == terms, format!("L = {loops}: {} terms", c.terms));
        check(&mut f, c.complete(), format!("L = {loops}: {} unpaired, {} failures", c.unpaired.len(), c.failures.len()));
        check(&mut f, 2 * c.entries.len() == c.terms, format!("L = {loops}: {} pairs", c.entries.len()));
    }

    // The first pair at two loops: (1,2)⊕(3,4) against (1,3)⊕(2,4).
    let t = CertTerm::new(vec![1, 2, 3, 4], &[(1, 2)], &[(3, 4)]);
    let (p, fixed, swapped) = partner(&t);
    check(&mut f, p.s == [1, 3, 2, 4] && fixed == (1, 4) && swapped == [(2, 3)], format!("L = 2 partner {}", p.render()));
    check(&mut f, t.sign() == -p.sign(), "L = 2 signs");

    // The two four-loop terms: one cycle through every label, and two cycles.
    let one = CertTerm::new(vec![1, 5, 2, 7, 3, 4, 6, 8], &[(1, 7), (2, 5)], &[(3, 4), (6, 8)]);
    check(&mut f, AuxiliaryGraph::of(&one).cycles == [vec![1, 3, 4, 5, 2, 6, 8, 7]], "single-cycle term: cycle");
    let (p, fixed, swapped) = partner(&one);
    let want = CertTerm::new(vec![1, 6, 2, 3, 7, 8, 5, 4], &[(1, 3), (2, 6)], &[(7, 8), (4, 5)]);
    check(&mut f, p == want && fixed == (1, 2) && swapped == [(3, 7), (4, 8), (5, 6)], format!("single-cycle partner {}", p.render()));
    check(&mut f, one.sign() == -p.sign() && one.factors() == p.factors(), "single-cycle term: sign/product");

    let two = CertTerm::new(vec![1, 5, 2, 7, 3, 4, 6, 8], &[(1, 5), (2, 7)], &[(3, 4), (6, 8)]);
    check(&mut f, AuxiliaryGraph::of(&two).cycles.len() == 2, "two-cycle term: cycles");
    let (p, fixed, swapped) = partner(&two);
    let want = CertTerm::new(vec![1, 3, 2, 7, 5, 4, 6, 8], &[(1, 3), (2, 7)], &[(5, 4), (6, 8)]);
    check(&mut f, p == want && fixed == (1, 4) && swapped == [(3, 5)], format!("two-cycle partner {}", p.render()));
    check(&mut f, two.sign() == -p.sign() && two.factors() == p.factors(), "two-cycle term: sign/product");
    report(8, "complete sign-reversing pairings for L = 2 and 4", &f);
}

#[test]
fn c09_dodgson_identities() {
    let mut f = Vec::new();
    let mut n = 0;
    for (name, g) in families::corpus() {
        for c in Dodgson::new(&g).identity_suite().unwrap() {
            n += 1;
            check(&mut f, c.holds(), format!("{name}: {}", c.name));
        }
    }
    let g = families::theta_subdivided(5, 5, 5).unwrap();
    let d = Dodgson::new(&g);
    let p = |s: &str| parse_poly(d.registry(), s).unwrap();
    for (e1, e2, mag) in [(2, 8, "a2*a8*a11 + a2*a8*a12 + a2*a8*a13 + a2*a8*a14 + a2*a8*a15"), (10, 15, "a1*a10*a15 + a2*a10*a15 + a3*a10*a15 + a4*a10*a15 + a5*a10*a15")] {
        let c = d.edge_edge(e1, e2).unwrap();
        n += 1;
        let mag = p(mag);
        check(&mut f, c.holds(), format!("theta-5-5-5 edge-edge ({e1},{e2}) fails"));
        check(&mut f, c.rhs == mag || c.rhs == mag.negate(), format!("edge-edge ({e1},{e2}) = {}", c.rhs));
    }
    report(9, &format!("{n} Dodgson identity checks on the corpus"), &f);
}

#[test]
fn c10_matching_counts() {
    let mut f = Vec::new();
    for (l, want) in [(2usize, 1usize), (4, 3), (6, 15), (8, 105)] {
        let direct = perfect_matchings(&(1..=l).collect::<Vec<_>>()).len();
        check(&mut f, direct == want, format!("{l} points: {direct} matchings"));
        // A banana with l + 1 edges has l loops.
        let g = families::banana(l + 1).unwrap();
        for t in tree_terms(&g, &Dodgson::new(&g)).unwrap() {
            let distinct: BTreeSet<_> = t.matchings.iter().collect();
            check(&mut f, distinct.len() == want, format!("L = {l}: {} distinct summands", distinct.len()));
        }
    }
    report(10, "distinct summands 1, 3, 15, 105", &f);
}

#[test]
fn c11_factorization() {
    let mut f = Vec::new();
    let d = dunce_cap();
    let disjoint = factorization_check(&d.disjoint_union(&d)).unwrap();
    check(&mut f, disjoint.kind == FactorizationKind::Disconnected && disjoint.alpha_zero, "disjoint union: alpha != 0");

    let joined = factorization_check(&d.vertex_join(1, &d, 1).unwrap()).unwrap();
    check(&mut f, matches!(joined.kind, FactorizationKind::CutVertex(_)), format!("shared vertex detected as {:?}", joined.kind));
    check(&mut f, joined.holds && joined.sign.is_some_and(|s| s != 0), "shared vertex: alpha != ±alpha1^alpha2");

    let bridged = factorization_check(&d.bridge_join(1, &d, 2).unwrap()).unwrap();
    check(&mut f, matches!(bridged.kind, FactorizationKind::Bridge(_)), format!("bridge detected as {:?}", bridged.kind));
    if bridged.bridge_two_a_holds != Some(true) {
        let exact = if bridged.holds { "alpha = ±sqrt(pi) alpha1^alpha2 holds exactly instead" } else { "no factorization found" };
        f.push(format!("bridge: alpha != ±2 a_e alpha1^alpha2 ({exact})"));
    }
    report(11, "factorization over joins of two dunce's caps", &f);
}

/// Random relabeling of vertices and edges plus random reorientations.
fn shuffle(g: &Graph, rng: &mut ChaCha8Rng) -> (Graph, Vec<usize>) {
    let mut vmap: Vec<usize> = (1..=g.vertex_count()).collect();
    let mut emap: Vec<usize> = (1..=g.edge_count()).collect();
    vmap.shuffle(rng);
    emap.shuffle(rng);
    let flips: Vec<bool> = (0..g.edge_count()).map(|_| rng.gen()).collect();
    (g.relabel(&vmap, &emap, &flips).unwrap(), emap)
}

#[test]
fn c12_convention_robustness() {
    let corpus: Vec<(String, Graph)> = families::corpus().into_iter().filter(|(_, g)| g.edge_count() <= 9).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut f = Vec::new();
    for round in 0..50 {
        let (name, g) = &corpus[rng.gen_range(0..corpus.len())];
        let (h, emap) = shuffle(g, &mut rng);
        let a = alpha_tree_sum(g).unwrap();
        let b = alpha_tree_sum(&h).unwrap();
        let pushed = relabel_alpha(&a, &emap, h.v_star()).unwrap();
        let psi: MPoly = Dodgson::new(&h).psi();
        check(&mut f, psi == pushed.psi, format!("round {round} ({name}): psi changed"));
        check(&mut f, b.sign_relative_to(&pushed).is_some(), format!("round {round} ({name}): alpha differs beyond a sign"));
        if wedge_vanishes(&a).unwrap() {
            check(&mut f, wedge_vanishes(&b).unwrap(), format!("round {round} ({name}): alpha^alpha != 0"));
        }
    }
    report(12, "50 random relabelings and reorientations", &f);
}
