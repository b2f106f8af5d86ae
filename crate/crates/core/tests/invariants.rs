mod common;

use common::{relabel, same_up_to_label_permutation};
use proptest::prelude::*;
use torsion_bench::adem::{normalize, Degree, Generator, SteenrodElement};
use torsion_bench::modules::{
    direct_sum, is_decomposable, is_decomposable_exhaustive, moore_module, shift, sphere_module, tensor, FiniteModule,
};
use torsion_bench::oracle::oracle_equal;
use torsion_bench::stems::{moore_homotopy, mult_by_n, AbelianGroup, StemsTable};
use torsion_bench::Prime;

fn prime() -> impl Strategy<Value = Prime> {
    prop::sample::select(vec![Prime::TWO, Prime::THREE, Prime::FIVE])
}

/// A word of total degree at most `max_degree`.
fn word(p: Prime, max_len: usize, max_degree: i64) -> impl Strategy<Value = Vec<Generator>> {
    let gens = Generator::up_to_degree(p, max_degree);
    prop::collection::vec(prop::sample::select(gens), 1..=max_len).prop_map(move |w| {
        let mut out = Vec::new();
        let mut d = 0;
        for g in w {
            if d + g.degree(p) <= max_degree {
                d += g.degree(p);
                out.push(g);
            }
        }
        out
    })
}

fn element(p: Prime, max_degree: i64) -> impl Strategy<Value = SteenrodElement> {
    prop::collection::vec((1..p.value() as i64, word(p, 4, max_degree)), 1..=3).prop_map(move |terms| {
        terms
            .into_iter()
            .fold(SteenrodElement::zero(p), |acc, (c, w)| acc.add(&SteenrodElement::term(p, c, &w).unwrap()).unwrap())
    })
}

fn with_prime<T: std::fmt::Debug>(
    f: impl Fn(Prime) -> BoxedStrategy<T> + 'static,
) -> impl Strategy<Value = (Prime, T)> {
    prime().prop_flat_map(move |p| (Just(p), f(p)))
}

/// Small realizable modules: shifted spheres and Moore modules.
fn cell(p: Prime) -> impl Strategy<Value = FiniteModule> {
    (any::<bool>(), -3i64..6).prop_map(
        move |(moore, s)| {
            if moore {
                shift(&moore_module(p), s)
            } else {
                sphere_module(p, s)
            }
        },
    )
}

fn consistent_module(p: Prime) -> impl Strategy<Value = FiniteModule> {
    (cell(p), cell(p), 0..3usize).prop_map(|(a, b, how)| match how {
        0 => tensor(&a, &b).unwrap(),
        1 => direct_sum(&a, &b).unwrap(),
        _ => a,
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normalization_is_idempotent((_p, e) in with_prime(|p| element(p, 30).boxed())) {
        let n = normalize(&e);
        prop_assert!(n.is_admissible());
        prop_assert_eq!(normalize(&n), n);
    }

    #[test]
    fn normalization_is_linear((p, (a, b, c)) in with_prime(|p| (element(p, 24), element(p, 24), 1..p.value()).boxed())) {
        let lhs = normalize(&a.scale(c).add(&b).unwrap());
        let rhs = normalize(&a).scale(c).add(&normalize(&b)).unwrap();
        prop_assert_eq!(lhs, rhs, "p = {}", p);
    }

    #[test]
    fn normalization_preserves_degree((p, w) in with_prime(|p| word(p, 5, 30).boxed())) {
        let e = SteenrodElement::word(p, &w).unwrap();
        let n = normalize(&e);
        if !n.is_zero() {
            prop_assert_eq!(n.degree(), e.degree());
        }
        prop_assert!(matches!(n.degree(), Degree::Homogeneous(_) | Degree::Any));
    }

    #[test]
    fn oracle_sees_normal_forms_as_equal((p, w) in with_prime(|p| word(p, 5, 20).boxed())) {
        let e = SteenrodElement::word(p, &w).unwrap();
        prop_assert!(oracle_equal(&e, &normalize(&e), 20).unwrap());
    }

    #[test]
    fn oracle_separates_distinct_normal_forms((p, (a, b)) in with_prime(|p| (word(p, 3, 16), word(p, 3, 16)).boxed())) {
        let (a, b) = (SteenrodElement::word(p, &a).unwrap(), SteenrodElement::word(p, &b).unwrap());
        let same = normalize(&a) == normalize(&b);
        prop_assert_eq!(oracle_equal(&a, &b, 16).unwrap(), same);
    }

    #[test]
    fn action_respects_composition(
        (p, (m, u, v)) in with_prime(|p| (consistent_module(p), word(p, 3, 14), word(p, 3, 14)).boxed())
    ) {
        let eu = SteenrodElement::word(p, &u).unwrap();
        let ev = SteenrodElement::word(p, &v).unwrap();
        let uv = eu.multiply(&ev).unwrap();
        let Degree::Homogeneous(dv) = ev.degree() else { unreachable!() };
        for d in m.degrees().collect::<Vec<_>>() {
            let lhs = m.act_element(&uv, d).unwrap();
            let rhs = m.act_element(&eu, d + dv).unwrap().mul(&m.act_element(&ev, d).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn realizable_modules_respect_adem_relations((p, (m, w)) in with_prime(|p| (consistent_module(p), word(p, 4, 16)).boxed())) {
        let e = SteenrodElement::word(p, &w).unwrap();
        let n = normalize(&e);
        for d in m.degrees().collect::<Vec<_>>() {
            let lhs = m.act_element(&e, d).unwrap();
            let rhs = m.act_element(&n, d).unwrap();
            if n.is_zero() {
                prop_assert!(lhs.is_zero());
            } else {
                prop_assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn tensor_is_coassociative((p, (a, b, c)) in with_prime(|p| (cell(p), cell(p), cell(p)).boxed())) {
        prop_assume!(a.total_dim() * b.total_dim() * c.total_dim() <= 8);
        let (a, b, c) = (relabel(&a, "a"), relabel(&b, "b"), relabel(&c, "c"));
        let left = tensor(&tensor(&a, &b).unwrap(), &c).unwrap();
        let right = tensor(&a, &tensor(&b, &c).unwrap()).unwrap();
        prop_assert!(same_up_to_label_permutation(&left, &right), "p = {}", p);
    }

    #[test]
    fn sphere_is_a_tensor_unit((p, m) in with_prime(|p| consistent_module(p).boxed())) {
        let m = relabel(&m, "m");
        let mut unit = sphere_module(p, 0);
        unit.set_labels(0, vec!["u".into()]).unwrap();
        let left = tensor(&unit, &m).unwrap();
        let right = tensor(&m, &unit).unwrap();
        let mut expect_left = m.clone();
        let mut expect_right = m.clone();
        for d in m.degrees().collect::<Vec<_>>() {
            expect_left.set_labels(d, m.labels(d).iter().map(|l| format!("u⊗{l}")).collect()).unwrap();
            expect_right.set_labels(d, m.labels(d).iter().map(|l| format!("{l}⊗u")).collect()).unwrap();
        }
        prop_assert!(same_up_to_label_permutation(&left, &expect_left));
        prop_assert!(same_up_to_label_permutation(&right, &expect_right));
    }

    #[test]
    fn direct_sums_decompose((_p, (a, b)) in with_prime(|p| (consistent_module(p), cell(p)).boxed())) {
        prop_assume!(a.total_dim() + b.total_dim() <= 8);
        let s = direct_sum(&a, &b).unwrap();
        let d = is_decomposable(&s).unwrap();
        prop_assert!(d.is_decomposable());
        let split = d.splitting().unwrap();
        prop_assert!(split.idempotent.is_idempotent());
        prop_assert!(split.idempotent.is_module_map(&s));
        prop_assert_eq!(split.image.total_dim() + split.kernel.total_dim(), s.total_dim());
    }

    #[test]
    fn decomposition_routes_agree((_p, m) in with_prime(|p| consistent_module(p).boxed())) {
        prop_assume!(m.total_dim() <= 6);
        let fast = is_decomposable(&m).unwrap().is_decomposable();
        prop_assert_eq!(fast, is_decomposable_exhaustive(&m).unwrap());
    }

    #[test]
    fn multiplication_by_one_is_an_isomorphism(factors in prop::collection::vec(2u64..60, 0..4), rank in 0usize..3) {
        let mut g = (0..rank).fold(AbelianGroup::trivial(), |acc, _| acc.direct_sum(&AbelianGroup::z()));
        for f in factors {
            g = g.direct_sum(&AbelianGroup::cyclic(f));
        }
        let (ker, coker) = mult_by_n(&g, 1);
        prop_assert!(ker.is_trivial() && coker.is_trivial());
    }

    #[test]
    fn finite_kernel_and_cokernel_of_n_have_equal_order(factors in prop::collection::vec(2u64..60, 1..4), n in 1u64..40) {
        let g = factors.iter().fold(AbelianGroup::trivial(), |acc, &f| acc.direct_sum(&AbelianGroup::cyclic(f)));
        let (ker, coker) = mult_by_n(&g, n);
        prop_assert_eq!(ker.order(), coker.order());
    }
}

fn les_bookkeeping(t: &StemsTable) -> usize {
    let mut checked = 0;
    for k in 0..=40 {
        for n in 2..=36u64 {
            let Some(order) = moore_homotopy(t, n, k).order() else { continue };
            let coker = |g: AbelianGroup| mult_by_n(&g, n).1.order();
            let ker = |g: AbelianGroup| mult_by_n(&g, n).0.order();
            let below = if k == 0 { Some(AbelianGroup::trivial()) } else { t.group(k - 1) };
            if let (Some(top), Some(below)) = (t.group(k), below) {
                assert_eq!(Some(order), coker(top).zip(ker(below)).map(|(a, b)| a * b), "π_{k}(S/{n})");
                checked += 1;
            }
        }
    }
    checked
}

#[test]
fn les_orders_match_kernel_times_cokernel() {
    assert!(les_bookkeeping(&StemsTable::reference()) > 0);
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/stems_literature.json");
    assert!(les_bookkeeping(&StemsTable::with_file(path).unwrap()) > 100);
}
