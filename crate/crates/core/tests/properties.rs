use milnor_ktk_core::element::{toeplitz_power, ElementMatrix};
use milnor_ktk_core::hopfgalois::{reconstruct, spectral_component};
use milnor_ktk_core::ktheory::{
    fredholm_index, k_invariant, milnor_idempotent, winding_number, KInvariant, MilnorData,
};
use milnor_ktk_core::matrix::{compress_interior, TruncationProfile};
use milnor_ktk_core::models::{build_space, domain_letters, hom_defect, toeplitz_of, word, MapName, SpaceId};
use milnor_ktk_core::{ComplexMatrix, Element, LaurentElement, Layout, Leg, QParameters, Tensor, C64};
use proptest::prelude::*;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn small_matrix(n: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec((-2.0..2.0f64, -2.0..2.0f64), n * n)
        .prop_map(move |v| ComplexMatrix::from_fn(n, n, |i, j| c(v[i * n + j].0, v[i * n + j].1)))
}

/// `u^k (1 + Σ a_j u^{j})` with `Σ|a_j| < 0.2`, so its winding number is `k`
/// and kernel vectors of the finite section decay fast.
fn invertible_laurent() -> impl Strategy<Value = (LaurentElement, i64)> {
    (-3i64..=3, prop::collection::vec((-1i64..=2, 0.0..0.1f64, 0.0..6.3f64), 0..3)).prop_map(|(k, tail)| {
        let mut v = LaurentElement::monomial(k, c(1.0, 0.0));
        for (d, r, phase) in tail {
            if d == 0 {
                continue;
            }
            v.add_term(k + d, C64::from_polar(r, phase));
        }
        (v, k)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn adjoint_reverses_products(a in small_matrix(4), b in small_matrix(4)) {
        let lhs = (&a * &b).adjoint();
        let rhs = &b.adjoint() * &a.adjoint();
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-12);
    }

    #[test]
    fn kronecker_mixed_product(a in small_matrix(2), b in small_matrix(3), x in small_matrix(2), y in small_matrix(3)) {
        let lhs = a.tensor(&b).matmul(&x.tensor(&y));
        let rhs = a.matmul(&x).tensor(&b.matmul(&y));
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-12);
    }

    #[test]
    fn compression_of_diagonal_keeps_interior(d in prop::collection::vec(-5.0..5.0f64, 12)) {
        let m = ComplexMatrix::diagonal(&d.iter().map(|&x| c(x, 0.0)).collect::<Vec<_>>()).with_legs(vec![3, 4]).unwrap();
        let prof = TruncationProfile::fock(vec![3, 4], 1).unwrap();
        let out = compress_interior(&m, &prof).unwrap();
        prop_assert_eq!(out.rows(), 2 * 3);
        for (pos, &idx) in prof.interior_indices().iter().enumerate() {
            prop_assert_eq!(out.get(pos, pos), c(d[idx], 0.0));
        }
    }

    #[test]
    fn winding_is_additive((v, k) in invertible_laurent(), (w, l) in invertible_laurent()) {
        prop_assert_eq!(winding_number(&v).unwrap(), k);
        prop_assert_eq!(winding_number(&(&v * &w)).unwrap(), k + l);
    }

    #[test]
    fn index_is_additive((v, k) in invertible_laurent(), (w, l) in invertible_laurent()) {
        // products are truncated at depth up to the summed degrees
        let p = QParameters::new(0.5, 48, 8, 12).unwrap();
        let (t1, t2) = (toeplitz_of(&v, 48), toeplitz_of(&w, 48));
        prop_assert_eq!(fredholm_index(&t1, &p).unwrap(), -k);
        prop_assert_eq!(fredholm_index(&(&t1 * &t2), &p).unwrap(), -k - l);
    }
}

fn graded_element() -> impl Strategy<Value = Element> {
    prop::collection::vec((-3i64..=3, prop::collection::vec(-1.0..1.0f64, 8)), 1..5).prop_map(|parts| {
        let layout = Layout::new(vec![Leg::fock_charged(8)]);
        let mut acc = Element::zero();
        for (k, diag) in parts {
            let d = ComplexMatrix::diagonal(&diag.iter().map(|&x| c(x, 0.5 * x)).collect::<Vec<_>>());
            let m = toeplitz_power(8, k).matmul(&d).with_legs(vec![8]).unwrap();
            acc = acc.add(&Element::Tensor(Tensor::matrix(layout.clone(), m).unwrap())).unwrap();
        }
        acc
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn spectral_components_reconstruct(x in graded_element()) {
        prop_assert_eq!(reconstruct(&x, 16).unwrap(), x);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn spectral_products_are_homogeneous(x in graded_element(), y in graded_element(), k in -3i64..=3, l in -3i64..=3) {
        let xk = spectral_component(&x, k, 16).unwrap();
        let yl = spectral_component(&y, l, 16).unwrap();
        let prod = xk.mul(&yl).unwrap();
        for d in prod.degrees_present() {
            prop_assert_eq!(d, k + l);
        }
    }
}

fn laurent_entry(j: i64, k: i64, coeff: C64) -> Element {
    let layout = Layout::new(vec![Leg::circle(), Leg::circle_charged()]);
    Element::Tensor(Tensor::term(layout, vec![j, k], ComplexMatrix::identity(1)).unwrap()).scale(coeff)
}

/// `R(θ, ψ) · diag(u^{j₁}⊗u^{k₁}, u^{j₂}⊗u^{k₂}) · R(φ, χ)*` with `R` a
/// unitary 2×2 scalar matrix.
fn unitary_on_circle_base() -> impl Strategy<Value = ElementMatrix> {
    (
        (0.0..6.3f64, 0.0..6.3f64, 0.0..6.3f64, 0.0..6.3f64),
        (-2i64..=2, -2i64..=2, -2i64..=2, -2i64..=2),
    )
        .prop_map(|((t, s, f, x), (j1, k1, j2, k2))| {
            let rot = |a: f64, b: f64| {
                let (ca, sa) = (a.cos(), a.sin());
                let e = C64::from_polar(1.0, b);
                [c(ca, 0.0), -e.conj() * sa, e * sa, c(ca, 0.0)]
            };
            let scalar = |r: [C64; 4]| ElementMatrix::from_fn(2, |i, j| Element::Scalar(r[2 * i + j]));
            let diag = ElementMatrix::from_fn(2, |i, j| match (i, j) {
                (0, 0) => laurent_entry(j1, k1, c(1.0, 0.0)),
                (1, 1) => laurent_entry(j2, k2, c(1.0, 0.0)),
                _ => Element::zero(),
            });
            scalar(rot(t, s)).mul(&diag).unwrap().mul(&scalar(rot(f, x)).adjoint()).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn milnor_idempotency_on_random_unitaries(a in unitary_on_circle_base()) {
        let p = QParameters::new(0.5, 16, 8, 2).unwrap();
        let d = build_space(SpaceId::Suq2, &p).unwrap().diagram;
        let data = MilnorData::from_unitary(&d, a).unwrap();
        let pa = milnor_idempotent(&d, &data).unwrap();
        prop_assert!(pa.idempotent_defect(2).unwrap() <= 1e-9);
        prop_assert!(pa.selfadjoint_defect(2).unwrap() <= 1e-9);
    }

    #[test]
    fn k_invariant_is_additive(n1 in -2i64..=2, n2 in -2i64..=2) {
        let p = QParameters::new(0.5, 16, 8, 2).unwrap();
        let d = build_space(SpaceId::Suq2, &p).unwrap().diagram;
        let idem = |n: i64| {
            let a = ElementMatrix::scalar(laurent_entry(n, 0, c(1.0, 0.0)));
            milnor_idempotent(&d, &MilnorData::from_unitary(&d, a).unwrap()).unwrap()
        };
        let (x, y) = (idem(n1), idem(n2));
        let kx = k_invariant(&d, &x).unwrap();
        let ky = k_invariant(&d, &y).unwrap();
        prop_assert_eq!(kx, KInvariant::new(1, -n1));
        prop_assert_eq!(k_invariant(&d, &x.direct_sum(&y).unwrap()).unwrap(), kx + ky);
    }
}

fn hom_case() -> impl Strategy<Value = (usize, Vec<usize>, Vec<usize>)> {
    (0..MapName::ALL.len(), prop::collection::vec(0usize..64, 1..=4), prop::collection::vec(0usize..64, 1..=4))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn registered_maps_are_star_homomorphisms((m, wx, wy) in hom_case()) {
        let name = MapName::ALL[m];
        let p = if name == MapName::F {
            QParameters::new(0.5, 8, 4, 2).unwrap()
        } else {
            QParameters::new(0.5, 16, 8, 2).unwrap()
        };
        let letters = domain_letters(name, &p).unwrap();
        let pick = |w: &[usize]| w.iter().map(|i| i % letters.len()).collect::<Vec<_>>();
        let x = word(&letters, &pick(&wx)).unwrap();
        let y = word(&letters, &pick(&wy)).unwrap();
        let d = hom_defect(name, &x, &y, &p).unwrap();
        prop_assert!(d <= 1e-9, "{} defect {}", name, d);
    }
}
