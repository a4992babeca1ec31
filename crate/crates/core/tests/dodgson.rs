use alphaform::dodgson::{symanzik_from_trees, symanzik_second, superficial_degree, DIndex, Dodgson};
use alphaform::graph::families::{self, dunce_cap};
use alphaform::graph::Graph;
use alphaform::poly::{parse_poly, MPoly};
use itertools::Itertools;
use num_rational::BigRational;
use proptest::prelude::*;

fn poly(d: &Dodgson, s: &str) -> MPoly {
    parse_poly(d.registry(), s).unwrap()
}

#[test]
fn dunce_cap_psi() {
    let d = Dodgson::new(&dunce_cap());
    assert_eq!(d.psi(), poly(&d, "a1*a3 + a2*a3 + a1*a4 + a2*a4 + a3*a4"));
}

#[test]
fn dunce_cap_vertex_dodgsons() {
    let d = Dodgson::new(&dunce_cap());
    assert_eq!(d.vertex(1, 1).unwrap(), poly(&d, "a1*a2*a3 + a1*a2*a4 + a2*a3*a4"));
    assert_eq!(d.vertex(1, 2).unwrap(), poly(&d, "-a2*a3*a4"));
    assert_eq!(d.vertex(2, 1).unwrap(), poly(&d, "-a2*a3*a4"));
    assert_eq!(d.vertex(2, 2).unwrap(), poly(&d, "a1*a3*a4 + a2*a3*a4"));
    assert!(d.vertex(3, 1).is_err());
}

#[test]
fn inverse_laplacian_times_laplacian_is_identity() {
    // L = I^T D^{-1} I; check ψ · Σ_k L_jk (L^{-1})_kl = ψ δ_jl after clearing Π a.
    for g in [dunce_cap(), families::k4_doubled(), families::wheel(4).unwrap()] {
        let d = Dodgson::new(&g);
        let reg = d.registry();
        let m = g.edge_count();
        let n = g.reduced_dim();
        let inc = g.incidence_reduced();
        let prod_a = (0..m).fold(MPoly::one(reg), |acc, e| &acc * &MPoly::var(reg, e));
        // (Π a) L_jk as a polynomial.
        let lap = |j: usize, k: usize| {
            let mut p = MPoly::zero(reg);
            for e in 0..m {
                let c = inc.get(e, j) * inc.get(e, k);
                if c != 0 {
                    let others = (0..m).filter(|&f| f != e).fold(MPoly::one(reg), |acc, f| &acc * &MPoly::var(reg, f));
                    p.add_assign_ref(&others.scale_int(c));
                }
            }
            p
        };
        let psi = d.psi();
        for j in 0..n {
            for l in 0..n {
                let mut s = MPoly::zero(reg);
                for k in 0..n {
                    s.add_assign_ref(&(&lap(j, k) * &d.inverse_laplacian_numerator(k + 1, l + 1).unwrap()));
                }
                let expected = if j == l { &prod_a * &psi } else { MPoly::zero(reg) };
                assert_eq!(s, expected, "entry ({j}, {l})");
            }
        }
    }
}

#[test]
fn psi_matches_tree_sum_on_corpus() {
    for (name, g) in families::corpus().into_iter().filter(|(_, g)| g.edge_count() <= 10) {
        assert_eq!(Dodgson::new(&g).psi(), symanzik_from_trees(&g), "{name}");
    }
}

#[test]
fn antisymmetry_of_mixed_dodgsons() {
    let d = Dodgson::new(&families::k4_doubled());
    for e in 1..=7 {
        for v in 1..=3 {
            let ev = d.dodgson(&[DIndex::Edge(e)], &[DIndex::Vertex(v)]).unwrap();
            let ve = d.dodgson(&[DIndex::Vertex(v)], &[DIndex::Edge(e)]).unwrap();
            assert_eq!(ev, ve.negate());
        }
        for f in 1..=7 {
            assert_eq!(d.edge(e, f).unwrap(), d.edge(f, e).unwrap());
        }
    }
}

#[test]
fn long_two_loop_edge_edge_combinations() {
    let g = families::theta_subdivided(5, 5, 5).unwrap();
    let d = Dodgson::new(&g);
    let c = d.edge_edge(2, 8).unwrap();
    assert!(c.holds());
    let mag = poly(&d, "a2*a8*a11 + a2*a8*a12 + a2*a8*a13 + a2*a8*a14 + a2*a8*a15");
    assert!(c.rhs == mag || c.rhs == mag.negate(), "{}", c.rhs);
    let c = d.edge_edge(10, 15).unwrap();
    assert!(c.holds());
    let mag = poly(&d, "a10*a15*a1 + a10*a15*a2 + a10*a15*a3 + a10*a15*a4 + a10*a15*a5");
    assert!(c.rhs == mag || c.rhs == mag.negate(), "{}", c.rhs);
}

#[test]
fn identities_on_fixed_graphs() {
    for g in [dunce_cap(), families::k4_doubled(), families::prism(), families::theta_subdivided(2, 3, 2).unwrap()] {
        let d = Dodgson::new(&g);
        let m = g.edge_count();
        for e in 1..=m {
            for v in g.reduced_vertices() {
                assert!(d.vertex_edge(e, v).unwrap().holds(), "vertex-edge e{e} v{v}");
            }
            for f in 1..=m {
                if e != f {
                    assert!(d.edge_edge(e, f).unwrap().holds(), "edge-edge e{e} e{f}");
                }
            }
        }
    }
}

#[test]
fn jacobi_and_forest_on_k4_doubled() {
    let g = families::k4_doubled();
    let d = Dodgson::new(&g);
    for (a, b) in (1..=7).tuple_combinations::<(usize, usize)>().zip((1..=7).rev().tuple_combinations::<(usize, usize)>()) {
        let (rows, cols) = ([a.0, a.1], [b.0, b.1]);
        assert!(d.jacobi(&rows, &cols).unwrap().holds());
        assert_eq!(d.forest_expansion(&rows, &cols).unwrap(), d.raw(&rows, &cols).unwrap(), "{rows:?} {cols:?}");
    }
    // Mixed vertex/edge index sets for Jacobi.
    assert!(d.jacobi(&[1, 8, 9], &[2, 10, 3]).unwrap().holds());
}

#[test]
fn dodgson_errors() {
    let d = Dodgson::new(&dunce_cap());
    assert!(d.raw(&[1], &[]).is_err());
    assert!(d.raw(&[1, 1], &[2, 3]).is_err());
    assert!(d.raw(&[7], &[1]).is_err());
    assert!(d.edge(5, 1).is_err());
}

#[test]
fn second_symanzik_of_the_bubble() {
    let g = families::banana(2).unwrap();
    let s = symanzik_second(&g).unwrap();
    let expected = parse_poly(&s.registry, "s_1_1*a1*a2 - a1^2*mu_1 - a1*a2*mu_1 - a1*a2*mu_2 - a2^2*mu_2").unwrap();
    assert_eq!(s.phi, expected);
}

#[test]
fn second_symanzik_massless_part_is_quadratic_in_psi_minors() {
    let s = symanzik_second(&dunce_cap()).unwrap();
    // Degree L+1 = 3 in a, linear in kinematics.
    for (m, _) in s.phi.terms() {
        let a_deg: u16 = m.exps()[..4].iter().sum();
        let k_deg: u16 = m.exps()[4..].iter().sum();
        assert_eq!((a_deg + k_deg, k_deg), (4, 1));
    }
}

#[test]
fn superficial_degrees() {
    let r = |n: i64| BigRational::from_integer(n.into());
    let g = dunce_cap();
    assert_eq!(superficial_degree(&g, &r(4), &vec![r(1); 4]).unwrap(), r(0));
    assert_eq!(superficial_degree(&families::wheel(3).unwrap(), &r(4), &vec![r(1); 6]).unwrap(), r(0));
    assert!(superficial_degree(&g, &r(4), &[r(1)]).is_err());
}

fn random_graph() -> impl Strategy<Value = Graph> {
    (0u64..1000, 2usize..5, 0usize..4).prop_map(|(s, v, x)| families::random_connected(s, v, v + x).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn jacobi_identity(g in random_graph(), pick in prop::collection::vec(0usize..100, 4)) {
        let d = Dodgson::new(&g);
        let size = d.size();
        prop_assume!(size >= 2);
        let k = 1 + pick[0] % 2;
        let rows: Vec<usize> = (0..size).map(|i| (i + pick[1]) % size + 1).take(k).collect();
        let cols: Vec<usize> = (0..size).map(|i| (i * 3 + pick[2]) % size + 1).unique().take(k).collect();
        prop_assume!(cols.len() == k);
        prop_assert!(d.jacobi(&rows, &cols).unwrap().holds());
    }

    #[test]
    fn forest_expansion(g in random_graph(), shift in 0usize..50) {
        let d = Dodgson::new(&g);
        let m = g.edge_count();
        let a = shift % m + 1;
        let b = (shift / 3) % m + 1;
        prop_assert_eq!(d.forest_expansion(&[a], &[b]).unwrap(), d.edge(a, b).unwrap());
        if m >= 4 && g.loop_number() >= 2 {
            let rows = [1, 2 + shift % (m - 2)];
            let cols = [m, 2 + (shift / 2) % (m - 2)];
            if rows[1] != cols[1] {
                prop_assert_eq!(d.forest_expansion(&rows, &cols).unwrap(), d.raw(&rows, &cols).unwrap());
            }
        }
    }

    #[test]
    fn edge_lemmas(g in random_graph(), e in 1usize..20, f in 1usize..20) {
        let d = Dodgson::new(&g);
        let m = g.edge_count();
        let (e, f) = ((e - 1) % m + 1, (f - 1) % m + 1);
        for v in g.reduced_vertices() {
            prop_assert!(d.vertex_edge(e, v).unwrap().holds());
        }
        if e != f {
            prop_assert!(d.edge_edge(e, f).unwrap().holds());
        }
    }

    #[test]
    fn psi_from_determinant_equals_tree_sum(g in random_graph()) {
        prop_assert_eq!(Dodgson::new(&g).psi(), symanzik_from_trees(&g));
    }
}
