//! Shared helpers for the integration suites: an exhaustive cup-length
//! oracle independent of the ideal-power iteration, and a generator of
//! small valid custom algebras.

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use tcn_core::algebra::SpaceDescriptor;
use tcn_core::scalar::FieldSpec;
use tcn_core::tensor::{TensorAlgebra, TensorElement};
use tcn_core::GradedAlgebra;

/// Exhaustive zero-divisor cup-length: depth-first search over products of
/// kernel-basis elements with the degree budget, pruning zero partials.
/// Factors are taken with non-decreasing index — reordering homogeneous
/// factors only flips the sign, so nonvanishing is unaffected — which makes
/// the search run over multisets. Deliberately ignorant of the ideal-power
/// iteration it cross-checks.
pub fn brute_force_zcl(base: &GradedAlgebra, n: usize) -> usize {
    let tensor = TensorAlgebra::new(base, n).expect("oracle instances are small");
    let kernel = tensor.kernel_of_diagonal(None);
    let elements: Vec<TensorElement> = kernel.elements().cloned().collect();
    if elements.is_empty() {
        return 0;
    }
    let top = tensor.top_degree();

    // kernel elements come out sorted by degree, so the budget check can
    // stop the scan early
    fn dfs(
        elements: &[TensorElement],
        start: usize,
        current: &TensorElement,
        budget: u32,
    ) -> usize {
        let mut best = 0;
        for i in start..elements.len() {
            let degree = elements[i].degree().expect("kernel elements are homogeneous");
            if degree > budget {
                break;
            }
            let product = current.mul(&elements[i]).expect("same tensor algebra");
            if product.is_zero() {
                continue;
            }
            best = best.max(1 + dfs(elements, i, &product, budget - degree));
        }
        best
    }

    dfs(&elements, 0, &tensor.unit(), top)
}

fn random_field(rng: &mut ChaCha8Rng) -> FieldSpec {
    match rng.random_range(0..3u8) {
        0 => FieldSpec::rationals(),
        1 => FieldSpec::prime(2).unwrap(),
        _ => FieldSpec::prime(5).unwrap(),
    }
}

/// A random valid custom algebra with basis size at most 4, drawn from
/// three families: square-zero extensions (all positive products vanish),
/// truncated polynomial algebras, and rank-2 exterior algebras with odd
/// generator degrees. Every output passes `validate`.
pub fn random_custom_space(rng: &mut ChaCha8Rng, tag: usize) -> SpaceDescriptor {
    let field = random_field(rng);
    let algebra = match rng.random_range(0..3u8) {
        0 => {
            let count = rng.random_range(1..=3usize);
            let degrees: Vec<u32> = (0..count).map(|_| rng.random_range(1..=3u32)).collect();
            let mut basis = vec![("1".to_string(), 0u32)];
            for (i, d) in degrees.iter().enumerate() {
                basis.push((format!("g{i}"), *d));
            }
            let mut products = BTreeMap::new();
            for i in 1..basis.len() {
                for j in 1..basis.len() {
                    products.insert((i, j), Vec::new());
                }
            }
            GradedAlgebra::new(field, basis, 0, products).expect("square-zero is valid")
        }
        1 => {
            let height = rng.random_range(1..=3u32);
            // odd generator degrees are only graded-commutative in char 2
            let gen_degree = if field.characteristic() == 2 {
                rng.random_range(1..=2u32)
            } else {
                2 * rng.random_range(1..=2u32)
            };
            let basis: Vec<(String, u32)> = (0..=height)
                .map(|i| (if i == 0 { "1".into() } else { format!("x{i}") }, i * gen_degree))
                .collect();
            let mut products = BTreeMap::new();
            for i in 0..=height as usize {
                for j in 0..=height as usize {
                    let result = if i + j <= height as usize {
                        vec![(i + j, field.one())]
                    } else {
                        Vec::new()
                    };
                    products.insert((i, j), result);
                }
            }
            GradedAlgebra::new(field, basis, 0, products).expect("truncated algebra is valid")
        }
        _ => {
            let da = 2 * rng.random_range(0..=1u32) + 1;
            let db = 2 * rng.random_range(0..=1u32) + 1;
            let basis = vec![
                ("1".to_string(), 0),
                ("a".to_string(), da),
                ("b".to_string(), db),
                ("ab".to_string(), da + db),
            ];
            let mut products = BTreeMap::new();
            products.insert((1, 1), Vec::new());
            products.insert((2, 2), Vec::new());
            products.insert((1, 2), vec![(3, field.one())]);
            products.insert((1, 3), Vec::new());
            products.insert((2, 3), Vec::new());
            products.insert((3, 3), Vec::new());
            GradedAlgebra::new(field, basis, 0, products).expect("exterior pair is valid")
        }
    };
    let formal_dim = algebra.top_degree();
    SpaceDescriptor::new(format!("custom-{tag}"), algebra, formal_dim, 0, Some(formal_dim), None)
        .expect("metadata is consistent")
}
