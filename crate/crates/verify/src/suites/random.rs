//! Seeded generators for the randomized checks.

use milnor_ktk_core::element::{toeplitz_power, ElementMatrix};
use milnor_ktk_core::{ComplexMatrix, Element, LaurentElement, Layout, Leg, Tensor, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Independent stream per check name, so suites stay deterministic when
/// run alone or in parallel.
pub fn stream(seed: u64, name: &str) -> ChaCha8Rng {
    let h = name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3));
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

/// `u^k (1 + Σ a_j u^j)` with `Σ|a_j| < 0.2`, returned with its winding `k`.
pub fn invertible_laurent(rng: &mut ChaCha8Rng) -> (LaurentElement, i64) {
    let k = rng.gen_range(-3..=3);
    let mut v = LaurentElement::u(k);
    for _ in 0..rng.gen_range(0..3) {
        let d = rng.gen_range(-1i64..=2);
        if d != 0 {
            v.add_term(k + d, C64::from_polar(rng.gen_range(0.0..0.1), rng.gen_range(0.0..std::f64::consts::TAU)));
        }
    }
    (v, k)
}

/// Sum of `s^k D` with random diagonals `D`, on one charged Fock leg.
pub fn graded_element(rng: &mut ChaCha8Rng, n: usize) -> Element {
    let layout = Layout::new(vec![Leg::fock_charged(n)]);
    let mut acc = Element::zero();
    for _ in 0..rng.gen_range(1..5) {
        let k = rng.gen_range(-3..=3);
        let d: Vec<C64> = (0..n).map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        let m = toeplitz_power(n, k).matmul(&ComplexMatrix::diagonal(&d)).with_legs(vec![n]).expect("square");
        let t = Element::Tensor(Tensor::matrix(layout.clone(), m).expect("one leg"));
        acc = acc.add(&t).expect("same layout");
    }
    acc
}

fn monomial(j: i64, k: i64) -> Element {
    let layout = Layout::new(vec![Leg::circle(), Leg::circle_charged()]);
    Element::Tensor(Tensor::term(layout, vec![j, k], ComplexMatrix::identity(1)).expect("scalar coefficient"))
}

fn rotation(rng: &mut ChaCha8Rng) -> ElementMatrix {
    let (a, b) = (rng.gen_range(0.0..std::f64::consts::TAU), rng.gen_range(0.0..std::f64::consts::TAU));
    let e = C64::from_polar(1.0, b);
    let r = [C64::new(a.cos(), 0.0), -e.conj() * a.sin(), e * a.sin(), C64::new(a.cos(), 0.0)];
    ElementMatrix::from_fn(2, |i, j| Element::Scalar(r[2 * i + j]))
}

/// `R · diag(u^{j₁}⊗u^{k₁}, u^{j₂}⊗u^{k₂}) · R′*` over `C(S¹)⊗C(S¹)`.
pub fn circle_unitary(rng: &mut ChaCha8Rng) -> ElementMatrix {
    let mut deg = || rng.gen_range(-2i64..=2);
    let (j1, k1, j2, k2) = (deg(), deg(), deg(), deg());
    let diag = ElementMatrix::from_fn(2, |i, j| match (i, j) {
        (0, 0) => monomial(j1, k1),
        (1, 1) => monomial(j2, k2),
        _ => Element::zero(),
    });
    let (r1, r2) = (rotation(rng), rotation(rng));
    r1.mul(&diag).and_then(|m| m.mul(&r2.adjoint())).expect("2×2 products")
}

/// Letter indices of a word of length `1..=max_len`.
pub fn word(rng: &mut ChaCha8Rng, letters: usize, max_len: usize) -> Vec<usize> {
    let len = rng.gen_range(1..=max_len);
    (0..len).map(|_| rng.gen_range(0..letters)).collect()
}
