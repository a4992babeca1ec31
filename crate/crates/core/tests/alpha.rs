use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use alphaform::alpha::*;
use alphaform::combinat::perfect_matchings;
use alphaform::dodgson::Dodgson;
use alphaform::forms::{AlphaForm, Generator};
use alphaform::graph::families::{self, dunce_cap, multiedge};
use alphaform::graph::Graph;
use alphaform::poly::{parse_poly, MPoly, Monomial, VarRegistry};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn da(es: &[usize]) -> Vec<Generator> {
    es.iter().map(|&e| Generator::DA(e)).collect()
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[test]
fn rho_of_dunce_cap() {
    let g = dunce_cap();
    let reg = ax_registry(&g);
    let r1 = rho(&g, &reg, 1).unwrap();
    assert_eq!(r1.coefficient(&da(&[1])), parse_poly(&reg, "x1 - x2").unwrap());
    assert_eq!(r1.coefficient(&[Generator::DX(1)]), parse_poly(&reg, "-2*a1").unwrap());
    assert_eq!(r1.coefficient(&[Generator::DX(2)]), parse_poly(&reg, "2*a1").unwrap());
    let r2 = rho(&g, &reg, 2).unwrap();
    assert_eq!(r2.coefficient(&da(&[2])), parse_poly(&reg, "x1").unwrap());
    assert_eq!(r2.coefficient(&[Generator::DX(1)]), parse_poly(&reg, "-2*a2").unwrap());
    assert_eq!(r2.num_terms(), 2);
}

#[test]
fn pbar_of_multiedge() {
    let g = multiedge();
    let p = pbar(&g).unwrap();
    let reg = p.registry().clone();
    assert_eq!(p.num_terms(), 3);
    assert_eq!(p.coefficient(&da(&[1, 2])), parse_poly(&reg, "x1^2").unwrap());
    assert_eq!(p.coefficient(&[Generator::DA(2), Generator::DX(1)]), parse_poly(&reg, "2*a1*x1").unwrap());
    assert_eq!(p.coefficient(&[Generator::DA(1), Generator::DX(1)]), parse_poly(&reg, "-2*a2*x1").unwrap());
    assert_eq!(p_select(&g, &p).num_terms(), 2);
}

#[test]
fn pbar_of_dunce_cap_sizes() {
    let g = dunce_cap();
    let p = pbar(&g).unwrap();
    let summands = |f: &alphaform::forms::DiffForm| f.terms().map(|(_, c)| c.num_terms()).sum::<usize>();
    assert_eq!(p.num_terms(), 11);
    assert_eq!(summands(&p), 17);
    let sel = p_select(&g, &p);
    assert_eq!(sel.num_terms(), 5);
    assert_eq!(summands(&sel), 7);
    let reg = sel.registry();
    let word = [Generator::DA(1), Generator::DA(3), Generator::DX(1), Generator::DX(2)];
    assert_eq!(sel.coefficient(&word), parse_poly(reg, "-4*a2*a4*x1*x2 + 4*a2*a4*x2^2").unwrap());
}

#[test]
fn pbar_of_single_edge_is_rho() {
    let g = families::path(1).unwrap();
    let reg = ax_registry(&g);
    assert_eq!(pbar(&g).unwrap(), rho(&g, &reg, 1).unwrap());
}

#[test]
fn p_select_on_a_tree_is_one_term() {
    let g = families::path(3).unwrap();
    let sel = p_select(&g, &pbar(&g).unwrap());
    assert_eq!(sel.num_terms(), 1);
    let (w, c) = sel.terms().next().unwrap();
    assert!(w.iter().all(|x| matches!(x, Generator::DX(_))));
    let reg = sel.registry();
    let expected = parse_poly(reg, "8*a1*a2*a3").unwrap();
    assert!(c == &expected || c == &expected.negate());
}

fn dunce_golden() -> AlphaForm {
    let g = dunce_cap();
    let reg = g.edge_registry();
    let p = |s: &str| parse_poly(&reg, s).unwrap();
    let mut body = alphaform::forms::DiffForm::zero(&reg);
    body.add_term(da(&[1, 3]), p("a4"));
    body.add_term(da(&[2, 3]), p("a4"));
    body.add_term(da(&[1, 4]), p("-a3"));
    body.add_term(da(&[2, 4]), p("-a3"));
    body.add_term(da(&[3, 4]), p("a1 + a2"));
    let mut prefactor = alphaform::forms::ScalarPrefactor::rational(q(1, 8), 4);
    prefactor.pi_half = 2;
    prefactor.psi_half = -3;
    AlphaForm { prefactor, body, psi: p("a1*a3 + a2*a3 + a1*a4 + a2*a4 + a3*a4"), v_star: 3 }
}

#[test]
fn dunce_cap_tree_sum_golden() {
    let a = alpha_tree_sum(&dunce_cap()).unwrap();
    let golden = dunce_golden();
    assert_eq!(a.prefactor, golden.prefactor);
    assert_eq!(a.body, golden.body);
    assert_eq!(a.psi, golden.psi);
}

#[test]
fn dunce_cap_brute_golden() {
    let a = alpha_brute(&dunce_cap()).unwrap();
    let golden = dunce_golden();
    assert_eq!(a.prefactor, golden.prefactor);
    assert_eq!(a.body, golden.body);
}

#[test]
fn dunce_cap_single_coefficient() {
    let a = alpha_tree_sum(&dunce_cap()).unwrap();
    let reg = a.psi.registry();
    assert_eq!(a.body.coefficient(&da(&[2, 4])).scale(&a.prefactor.rational), parse_poly(reg, "-1/8*a3").unwrap());
}

#[test]
fn dunce_cap_tree_terms() {
    let g = dunce_cap();
    let d = Dodgson::new(&g);
    let terms = tree_terms(&g, &d).unwrap();
    assert_eq!(terms.len(), 5);
    for t in &terms {
        assert_eq!(t.matchings.len(), 1);
        assert_eq!(t.multiplicity, BigInt::from(2));
        assert!(t.dodgson_sum.is_homogeneous());
        // L/2 factors of degree L - 1.
        assert_eq!(t.dodgson_sum.total_degree(), Some(1));
    }
}

#[test]
fn odd_loops_and_disconnected_vanish() {
    for g in [multiedge(), families::cycle(3).unwrap(), families::complete(4).unwrap(), families::banana(4).unwrap()] {
        assert!(alpha_tree_sum(&g).unwrap().is_zero());
        assert!(alpha_brute(&g).unwrap().is_zero());
    }
    let two = dunce_cap().disjoint_union(&dunce_cap());
    assert!(alpha_tree_sum(&two).unwrap().is_zero());
    assert!(alpha_brute(&two).unwrap().is_zero());
}

#[test]
fn tree_is_a_scalar_of_magnitude_pi() {
    for g in [families::path(2).unwrap(), Graph::new(4, vec![(1, 4), (2, 4), (4, 3)]).unwrap()] {
        for a in [alpha_brute(&g).unwrap(), alpha_tree_sum(&g).unwrap()] {
            assert_eq!(a.degree(), Some(0));
            assert_eq!(a.prefactor.pi_half, i32::try_from(g.edge_count()).unwrap());
            assert_eq!(a.psi, MPoly::one(a.psi.registry()));
            let value = a.body.coefficient(&[]).constant_value().unwrap() * &a.prefactor.rational;
            assert!(value == BigRational::one() || value == -BigRational::one());
        }
    }
}

#[test]
fn brute_size_guard() {
    let g = families::banana(BRUTE_MAX_EDGES + 1).unwrap();
    assert!(matches!(alpha_brute(&g), Err(AlphaError::TooLarge { .. })));
}

#[test]
fn pipelines_agree_on_corpus_pieces() {
    for g in [dunce_cap(), families::k4_doubled(), families::dunce_cap_subdivided(2).unwrap(), families::banana(3).unwrap(), families::wheel(4).unwrap()] {
        let r = pipelines_agree(&g).unwrap();
        assert!(r.agree, "{:?}", r.witness);
    }
}

/// Gaussian expectation of an `x`-polynomial under `exp(-x^T L x)`, normalized
/// to total mass 1, from `exp(¼ C_jk ∂_j ∂_k)` with `C = L^{-1}`.
fn gaussian_expectation(p: &MPoly, cov: &[Vec<BigRational>]) -> BigRational {
    let n = cov.len();
    let reg = p.registry().clone();
    let mut cur = p.clone();
    let mut total = cur.constant_value().unwrap_or_else(BigRational::zero);
    let mut k = 0i64;
    let mut fact = BigRational::one();
    while !cur.is_zero() {
        let mut next = MPoly::zero(&reg);
        for (m, c) in cur.terms() {
            for j in 0..n {
                for l in 0..n {
                    let mut e = m.exps().to_vec();
                    let mut coeff = c * &cov[j][l] / BigRational::from_integer(4.into());
                    if e[j] == 0 {
                        continue;
                    }
                    coeff *= BigRational::from_integer(e[j].into());
                    e[j] -= 1;
                    if e[l] == 0 {
                        continue;
                    }
                    coeff *= BigRational::from_integer(e[l].into());
                    e[l] -= 1;
                    next.add_term(Monomial::from_exps(e), coeff);
                }
            }
        }
        k += 1;
        fact *= BigRational::from_integer(k.into());
        cur = next;
        if let Some(c) = cur.constant_value() {
            total += c / &fact;
        }
    }
    total
}

fn invert(m: &[Vec<BigRational>]) -> (Vec<Vec<BigRational>>, BigRational) {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m.to_vec();
    let mut inv: Vec<Vec<BigRational>> = (0..n).map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect()).collect();
    let mut det = BigRational::one();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero()).expect("invertible");
        if p != c {
            a.swap(p, c);
            inv.swap(p, c);
            det = -det;
        }
        let piv = a[c][c].clone();
        det *= &piv;
        for j in 0..n {
            a[c][j] = &a[c][j] / &piv;
            inv[c][j] = &inv[c][j] / &piv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for j in 0..n {
                    let (x, y) = (&a[c][j] * &f, &inv[c][j] * &f);
                    a[r][j] -= x;
                    inv[r][j] -= y;
                }
            }
        }
    }
    (inv, det)
}

/// Evaluate the brute-force body at a rational point and compare with an
/// integration that uses a numerically inverted Laplacian instead of Dodgsons.
fn check_against_numeric_gaussian(g: &Graph, point: &[i64]) {
    let m = g.edge_count();
    let n = g.reduced_dim();
    let loops = g.loop_number();
    let a: Vec<BigRational> = point.iter().map(|&x| BigRational::from_integer(x.into())).collect();
    let inc = g.incidence_reduced();
    let lap: Vec<Vec<BigRational>> = (0..n)
        .map(|j| (0..n).map(|k| (0..m).map(|e| BigRational::from_integer((inc.get(e, j) * inc.get(e, k)).into()) / &a[e]).sum()).collect())
        .collect();
    let (cov, det) = invert(&lap);
    let prod_a: BigRational = a.iter().product();
    let psi = &det * &prod_a;

    let alpha = alpha_brute(g).unwrap();
    let sel = p_select(g, &pbar(g).unwrap());
    let xreg = Arc::new(VarRegistry::edges_and_vertices(0, n));
    for (word, coeff) in sel.terms() {
        let da_word: Vec<Generator> = word.iter().copied().filter(|x| matches!(x, Generator::DA(_))).collect();
        let values: Vec<MPoly> = (0..m + n)
            .map(|i| if i < m { MPoly::constant(&xreg, a[i].clone()) } else { MPoly::var(&xreg, i - m) })
            .collect();
        let xpoly = coeff.substitute(&xreg, &values).unwrap();
        let expectation = gaussian_expectation(&xpoly, &cov);
        let sign = if m % 2 == 0 { BigRational::one() } else { -BigRational::one() };
        let lhs = sign / BigRational::from_integer(BigInt::from(2).pow(m as u32)) * psi.pow(loops as i32 / 2) * expectation;
        let body = alpha.body.coefficient(&da_word).evaluate(&a).unwrap();
        let rhs = &alpha.prefactor.rational * body * &prod_a;
        assert_eq!(lhs, rhs, "word {word:?}");
    }
}

#[test]
fn brute_matches_numeric_gaussian() {
    check_against_numeric_gaussian(&dunce_cap(), &[2, 3, 5, 7]);
    check_against_numeric_gaussian(&families::k4_doubled(), &[1, 2, 3, 1, 2, 5, 4]);
    check_against_numeric_gaussian(&families::wheel(4).unwrap(), &[3, 1, 4, 1, 5, 9, 2, 6]);
}

#[test]
fn matching_counts() {
    let counts: Vec<usize> = [2usize, 4, 6, 8].iter().map(|&l| perfect_matchings(&(1..=l).collect::<Vec<_>>()).len()).collect();
    assert_eq!(counts, vec![1, 3, 15, 105]);
    for (k, expected) in [(3usize, 1usize), (5, 3), (7, 15), (9, 105)] {
        let g = families::banana(k).unwrap();
        let d = Dodgson::new(&g);
        let terms = tree_terms(&g, &d).unwrap();
        assert_eq!(terms.len(), k);
        for t in terms {
            assert_eq!(t.matchings.len(), expected);
            let distinct: BTreeSet<_> = t.matchings.iter().collect();
            assert_eq!(distinct.len(), expected);
        }
    }
}

#[test]
fn wedge_of_dunce_cap_vanishes() {
    let a = alpha_tree_sum(&dunce_cap()).unwrap();
    let coeffs = wedge_self(&a).unwrap();
    assert_eq!(coeffs.len(), 1);
    assert!(coeffs.iter().all(|c| c.value.is_zero()));
    assert_eq!(a.prefactor.mul(&a.prefactor).rational, q(1, 64));
    assert_eq!(a.prefactor.mul(&a.prefactor).psi_half, -6);
}

#[test]
fn edge_bound() {
    assert!(edge_bound_check(&families::banana(3).unwrap()));
    assert!(!edge_bound_check(&dunce_cap()));
    // 4-regular graphs have |E| = 2|V| > 2|V| - 2; cubic graphs stay inside.
    assert!(edge_bound_check(&families::complete(5).unwrap()));
    assert!(!edge_bound_check(&families::k33()));
    assert!(!edge_bound_check(&families::prism()));
    let a = alpha_tree_sum(&families::banana(3).unwrap()).unwrap();
    assert!(!a.is_zero());
    assert!(wedge_self(&a).unwrap().is_empty());
}

#[test]
fn wedge_vanishes_on_small_one_pi_graphs() {
    for g in [families::k4_doubled(), families::wheel(4).unwrap(), families::dunce_cap_subdivided(1).unwrap(), families::theta_subdivided(2, 2, 1).unwrap()] {
        let a = alpha_tree_sum(&g).unwrap();
        assert!(wedge_self(&a).unwrap().iter().all(|c| c.value.is_zero()));
    }
}

#[test]
fn qe_on_graphs() {
    let g = dunce_cap();
    assert!(qe_graph(&g, &[1, 2, 3, 4]).unwrap().is_zero());
    assert!(qe_graph(&g, &[1, 1, 3, 4]).is_err());
    assert!(qe_graph(&g, &[1, 2, 3]).is_err());
    let theta = families::theta_subdivided(5, 5, 5).unwrap();
    for e in [[1, 2, 3, 4], [2, 8, 10, 15], [1, 6, 11, 14]] {
        assert!(qe_graph(&theta, &e).unwrap().is_zero());
    }
}

#[test]
fn formal_sums_vanish() {
    assert!(qe_formal(2).unwrap().is_zero());
    assert!(qe_formal_unquotiented(2).unwrap().is_zero());
    assert!(qe_formal(4).unwrap().is_zero());
    assert!(matches!(qe_formal(3), Err(AlphaError::OddLoops(3))));
    assert!(matches!(qe_formal(6), Err(AlphaError::LoopsOutOfRange(6))));
}

#[test]
fn formal_symbols_are_symmetric() {
    let reg = formal_registry(2);
    assert_eq!(reg.len(), 6);
    assert_eq!(formal_symbol(&reg, 3, 1), formal_symbol(&reg, 1, 3));
}

#[test]
fn certificate_two_loops() {
    let c = cancellation_certificate(2).unwrap();
    assert_eq!(c.terms, 24);
    assert!(c.complete(), "{:?}", c.failures);
    let t = CertTerm::new(vec![1, 2, 3, 4], &[(1, 2)], &[(3, 4)]);
    assert_eq!(t.sign(), 1);
    let (p, fixed, swapped) = partner(&t);
    assert_eq!(fixed, (1, 4));
    assert_eq!(swapped, vec![(2, 3)]);
    assert_eq!(p.sign(), -1);
    assert_eq!(p.s, vec![1, 3, 2, 4]);

    // Terms related by reordering both halves together, or by exchanging the
    // halves, are the same product: six families in three cancelling pairs.
    let family = |t: &CertTerm| {
        let mut d = t.dashed().iter().map(|&(a, b)| (a.min(b), a.max(b))).collect::<Vec<_>>();
        d.sort_unstable();
        let mut halves = [t.m1.clone(), t.m2.clone()];
        halves.sort();
        (d, halves)
    };
    let mut families: HashMap<_, i8> = HashMap::new();
    for t in all_terms(2) {
        let s = families.entry(family(&t)).or_insert(t.sign());
        assert_eq!(*s, t.sign());
    }
    assert_eq!(families.len(), 6);
    let pairs: BTreeSet<_> = c.entries.iter().map(|e| BTreeSet::from([family(&e.term), family(&e.partner)])).collect();
    assert_eq!(pairs.len(), 3);
}

#[test]
fn certificate_four_loop_figure_terms() {
    let left = CertTerm::new(vec![1, 5, 2, 7, 3, 4, 6, 8], &[(1, 7), (2, 5)], &[(3, 4), (6, 8)]);
    assert_eq!(left.sign(), 1);
    let aux = AuxiliaryGraph::of(&left);
    assert_eq!(aux.cycles, vec![vec![1, 3, 4, 5, 2, 6, 8, 7]]);
    let (p, fixed, swapped) = partner(&left);
    assert_eq!(fixed, (1, 2));
    assert_eq!(swapped, vec![(3, 7), (4, 8), (5, 6)]);
    assert_eq!(p, CertTerm::new(vec![1, 6, 2, 3, 7, 8, 5, 4], &[(1, 3), (2, 6)], &[(7, 8), (4, 5)]));
    assert_eq!(p.sign(), -1);
    assert_eq!(p.factors(), left.factors());

    let right = CertTerm::new(vec![1, 5, 2, 7, 3, 4, 6, 8], &[(1, 5), (2, 7)], &[(3, 4), (6, 8)]);
    assert_eq!(AuxiliaryGraph::of(&right).cycles.len(), 2);
    let (p, fixed, swapped) = partner(&right);
    assert_eq!(fixed, (1, 4));
    assert_eq!(swapped, vec![(3, 5)]);
    assert_eq!(p, CertTerm::new(vec![1, 3, 2, 7, 5, 4, 6, 8], &[(1, 3), (2, 7)], &[(5, 4), (6, 8)]));
    assert_eq!(p.sign(), -1);
}

#[test]
fn certificate_rejects_bad_loops() {
    assert!(cancellation_certificate(3).is_err());
    assert!(cancellation_certificate(0).is_err());
}

#[test]
fn factorization_cases() {
    let d = dunce_cap();
    let disjoint = factorization_check(&d.disjoint_union(&d)).unwrap();
    assert_eq!(disjoint.kind, FactorizationKind::Disconnected);
    assert!(disjoint.holds && disjoint.alpha_zero);

    let joined = factorization_check(&d.vertex_join(1, &d, 1).unwrap()).unwrap();
    assert!(matches!(joined.kind, FactorizationKind::CutVertex(_)));
    assert!(joined.psi_factorizes);
    assert!(joined.holds);
    assert!(joined.sign.is_some_and(|s| s != 0));

    let bridged = factorization_check(&d.bridge_join(1, &d, 2).unwrap()).unwrap();
    assert_eq!(bridged.kind, FactorizationKind::Bridge(5));
    assert!(bridged.psi_factorizes);
    assert!(bridged.holds);
    assert_eq!(bridged.bridge_two_a_holds, Some(false));
}

#[test]
fn relabeling_pushforward() {
    let g = families::k4_doubled();
    let a = alpha_tree_sum(&g).unwrap();
    let edge_map = [3, 1, 7, 2, 6, 5, 4];
    let h = g.relabel(&[1, 2, 3, 4], &edge_map, &[false; 7]).unwrap();
    let b = alpha_tree_sum(&h).unwrap();
    let pushed = relabel_alpha(&a, &edge_map, h.v_star()).unwrap();
    assert_eq!(Dodgson::new(&h).psi(), pushed.psi);
    assert!(b.sign_relative_to(&pushed).is_some());
    assert!(relabel_alpha(&a, &[1, 1, 2, 3, 4, 5, 6], 4).is_err());
}

#[test]
fn changing_v_star_flips_at_most_a_sign() {
    let g = families::k4_doubled();
    let a = alpha_tree_sum(&g).unwrap();
    for v in 1..=g.vertex_count() {
        let b = alpha_tree_sum(&g.set_v_star(v).unwrap()).unwrap();
        assert!(b.sign_relative_to(&a).is_some_and(|s| s != 0));
    }
}

fn small_graph() -> impl Strategy<Value = Graph> {
    (any::<u64>(), 2usize..=4, 0usize..=4).prop_filter_map("valid", |(seed, v, extra)| {
        families::random_connected(seed, v, v - 1 + extra).ok()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn pipelines_agree_on_random_graphs(g in small_graph()) {
        let r = pipelines_agree(&g).unwrap();
        prop_assert!(r.agree, "{:?} {:?}", g, r.witness);
    }

    #[test]
    fn reorienting_one_edge_flips_a_global_sign(g in small_graph(), e in 0usize..8) {
        let e = e % g.edge_count();
        let mut flip = vec![false; g.edge_count()];
        flip[e] = true;
        let ids: Vec<usize> = (1..=g.vertex_count()).collect();
        let edges: Vec<usize> = (1..=g.edge_count()).collect();
        let h = g.relabel(&ids, &edges, &flip).unwrap();
        let (a, b) = (alpha_tree_sum(&g).unwrap(), alpha_tree_sum(&h).unwrap());
        prop_assert!(a.sign_relative_to(&b).is_some());
    }

    #[test]
    fn body_degree_is_loop_number(g in small_graph()) {
        let a = alpha_tree_sum(&g).unwrap();
        if !a.is_zero() {
            prop_assert_eq!(a.degree(), Some(g.loop_number()));
        }
    }

    #[test]
    fn wedge_coefficients_match_the_full_product(g in small_graph()) {
        let a = alpha_tree_sum(&g).unwrap();
        let full = a.body.wedge(&a.body).unwrap();
        for c in wedge_self(&a).unwrap() {
            prop_assert_eq!(&c.value, &full.coefficient(&da(&c.edges)));
        }
    }
}
