use dncodes::census::{component_self_dual_solutions, trial_rng};
use dncodes::codekit::CodeSpec;
use dncodes::factorshape::{dickson_factorization, factor_shape, Sign};
use dncodes::galois::{
    entropy_q, field_of_order, make_field, norm_fiber, norm_with, prime_power, Elem, Embedding, FieldCtx, Poly,
};
use dncodes::graydist::{gray_generator_matrix, gray_phi, gray_word_phi_inverse, GrayMap};
use dncodes::linalg::rank;
use dncodes::semiring::{RElement, RRing};
use proptest::prelude::*;
use rand::Rng;

const FIELD_ORDERS: [u64; 12] = [2, 3, 4, 5, 7, 8, 9, 13, 25, 27, 49, 81];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn field_axioms(qi in 0..FIELD_ORDERS.len(), seed in any::<u64>()) {
        let f = field_of_order(FIELD_ORDERS[qi]).unwrap();
        let mut rng = trial_rng(seed, 0);
        let mut pick = || rng.gen_range(0..f.q());
        let (a, b, c) = (pick(), pick(), pick());
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        prop_assert_eq!(f.add(a, 0), a);
        prop_assert_eq!(f.mul(a, 1), a);
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        } else {
            prop_assert!(f.inv(a).is_none());
        }
    }

    #[test]
    fn entropy_is_increasing(q in prop::sample::select(vec![2u64, 3, 5, 7, 13, 25]), s in 0.0f64..1.0, t in 0.0f64..1.0) {
        let right = (q as f64 - 1.0) / q as f64;
        let (lo, hi) = if s < t { (s, t) } else { (t, s) };
        prop_assume!(hi - lo > 1e-9);
        prop_assert!(entropy_q(lo * right, q).unwrap() < entropy_q(hi * right, q).unwrap());
    }
}

/// Every `(q, n)` with `q^n <= 169`, `n >= 2`.
fn small_extensions() -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13] {
        let mut n = 2;
        while q.pow(n) <= 169 {
            out.push((q, n));
            n += 1;
        }
    }
    out
}

fn extension(q: u64, n: u32) -> (FieldCtx, FieldCtx, Embedding) {
    let (p, m) = prime_power(q).unwrap();
    let base = make_field(p as u64, m).unwrap();
    let ext = make_field(p as u64, m * n).unwrap();
    let emb = Embedding::new(&base, &ext).unwrap();
    (base, ext, emb)
}

#[test]
fn norm_is_multiplicative() {
    for (q, n) in small_extensions() {
        let (base, ext, emb) = extension(q, n);
        let norms: Vec<Elem> = ext.elements().map(|x| norm_with(x, &ext, &base, &emb).unwrap()).collect();
        for x in ext.elements() {
            for y in ext.elements() {
                let lhs = norms[ext.mul(x, y) as usize];
                assert_eq!(lhs, base.mul(norms[x as usize], norms[y as usize]), "q={q} n={n}");
            }
        }
    }
}

#[test]
fn norm_fibers_have_equal_size() {
    for (q, n) in small_extensions() {
        let base = field_of_order(q).unwrap();
        let expected = (q.pow(n) - 1) / (q - 1);
        for c in base.elements().skip(1) {
            let (_, fiber) = norm_fiber(c, &base, n).unwrap();
            assert_eq!(fiber.len() as u64, expected, "q={q} n={n} c={c}");
        }
        assert_eq!(norm_fiber(0, &base, n).unwrap().1, vec![0]);
    }
}

#[test]
fn phi_is_linear_over_fq() {
    let f = field_of_order(5).unwrap();
    let ring = RRing::over(&f);
    for z in ring.elements() {
        let pz = gray_phi(z, &f).unwrap();
        for c in f.elements() {
            let scaled = gray_phi(ring.scale(c, z), &f).unwrap();
            assert_eq!(scaled, (f.mul(c, pz.0), f.mul(c, pz.1)));
        }
        for w in ring.elements() {
            let pw = gray_phi(w, &f).unwrap();
            let sum = gray_phi(ring.add(z, w), &f).unwrap();
            assert_eq!(sum, (f.add(pz.0, pw.0), f.add(pz.1, pw.1)));
        }
    }
}

fn random_spec(f: &FieldCtx, n: usize, sign: Sign, rng: &mut impl Rng) -> CodeSpec {
    let mut coeffs = || (0..n).map(|_| rng.gen_range(0..f.q())).collect::<Vec<_>>();
    let (a1, a2) = (coeffs(), coeffs());
    CodeSpec::new(f, n, sign, a1, a2).unwrap()
}

/// Self-dual and LCD specs keep their property under both Gray maps. The
/// converse is checked on the same specs as an empirical observation.
#[test]
fn duality_transport() {
    for q in [5u64, 13] {
        let f = field_of_order(q).unwrap();
        for n in 1..=4 {
            for sign in [Sign::Minus, Sign::Plus] {
                let mut rng = trial_rng(q * 100 + n as u64, sign as u64);
                let sols = component_self_dual_solutions(&f, n, sign).unwrap();
                for t in 0..200 {
                    let spec = if t % 2 == 0 && !sols.is_empty() {
                        let (c0, c1) = (&sols[rng.gen_range(0..sols.len())], &sols[rng.gen_range(0..sols.len())]);
                        CodeSpec::from_components(&f, n, sign, c0, c1).unwrap()
                    } else {
                        random_spec(&f, n, sign, &mut rng)
                    };
                    for map in [GrayMap::Phi, GrayMap::Beta] {
                        let image = gray_generator_matrix(&spec, map).unwrap();
                        assert_eq!(spec.is_self_dual(), image.is_self_dual(), "q={q} n={n} {map} {spec:?}");
                        assert_eq!(spec.is_lcd(), image.is_lcd(), "q={q} n={n} {map} {spec:?}");
                    }
                }
            }
        }
    }
}

/// Rows of the phi block matrix pulled back through phi are codewords, and
/// the block matrix has full rank, for every spec with q = 5, n <= 2.
#[test]
fn phi_block_matrix_spans_the_image() {
    let f = field_of_order(5).unwrap();
    let ring = RRing::over(&f);
    for sign in [Sign::Minus, Sign::Plus] {
        for n in 1..=2usize {
            let total = 25u32.pow(n as u32);
            for idx in 0..total {
                let a: Vec<RElement> = (0..n)
                    .map(|i| {
                        let d = idx / 25u32.pow(i as u32) % 25;
                        RElement::new(d % 5, d / 5)
                    })
                    .collect();
                let spec = CodeSpec::new(&f, n, sign, a.iter().map(|z| z.a).collect(), a.iter().map(|z| z.b).collect()).unwrap();
                let code = gray_generator_matrix(&spec, GrayMap::Phi).unwrap();
                assert_eq!(rank(code.generator(), &f), 2 * n);
                for row in code.generator() {
                    let word = gray_word_phi_inverse(row, &f).unwrap();
                    assert!(spec.contains(&word).unwrap());
                }
                assert_eq!(ring.size().pow(n as u32), 5u64.pow(2 * n as u32));
            }
        }
    }
}

fn dickson_multiset(q: u64, a: u32) -> (Vec<Poly>, Vec<Poly>) {
    let f = field_of_order(q).unwrap();
    let mut closed = dickson_factorization(a, &f).unwrap();
    let shape = factor_shape(Sign::Plus, 1 << a, &f).unwrap();
    let mut generic: Vec<Poly> = shape.factors().into_iter().cloned().collect();
    closed.sort_by(|x, y| x.canonical_cmp(y));
    generic.sort_by(|x, y| x.canonical_cmp(y));
    (closed, generic)
}

#[test]
fn dickson_closed_form_matches_generic_factoring() {
    for q in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 41] {
        for a in 2..=4 {
            let (closed, generic) = dickson_multiset(q, a);
            assert_eq!(closed, generic, "q={q} n={}", 1 << a);
        }
    }
}
