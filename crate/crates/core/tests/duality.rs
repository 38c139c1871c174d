mod common;

use chainqc::code::presets;
use chainqc::cyclotomic::FactorCache;
use chainqc::gray::gray_image_code;
use common::{all_codes, brute_force_contains_dual, brute_force_dual, ORACLE_CONFIGS};

#[test]
fn dual_matches_brute_force_null_space() {
    for (n, m, k) in ORACLE_CONFIGS {
        for code in all_codes(n, m, k) {
            let oracle = brute_force_dual(&code);
            assert!(
                code.dual().linear_code().same_space(&oracle),
                "dual mismatch at ({n},{m},{k}) index {}",
                code.assignment().index()
            );
        }
    }
}

#[test]
fn component_criterion_matches_oracle() {
    for (n, m, k) in ORACLE_CONFIGS {
        for code in all_codes(n, m, k) {
            let oracle = brute_force_contains_dual(&code);
            assert_eq!(code.is_dual_containing_by_components(), oracle);
            assert_eq!(code.contains_dual(), oracle);
        }
    }
}

#[test]
fn divisibility_criterion_exact_for_two_levels() {
    for (n, m, k) in ORACLE_CONFIGS.into_iter().filter(|c| c.2 == 1) {
        for code in all_codes(n, m, k) {
            assert_eq!(
                code.is_dual_containing(),
                brute_force_contains_dual(&code),
                "({n},{m},{k}) index {}",
                code.assignment().index()
            );
        }
    }
}

#[test]
fn divisibility_criterion_disagrees_for_four_levels() {
    let disagree: Vec<u64> = all_codes(3, 1, 2)
        .into_iter()
        .filter(|c| c.is_dual_containing() != brute_force_contains_dual(c))
        .map(|c| c.assignment().index())
        .collect();
    assert_eq!(disagree.len(), 5, "disagreements at {disagree:?}");
    let c = presets::length15_k3(FactorCache::global()).unwrap();
    assert!(c.is_dual_containing());
    assert!(!brute_force_contains_dual(&c));
    assert_eq!(c.containment_violations(), vec![0]);
}

#[test]
fn gray_image_of_dual_is_dual_of_gray_image() {
    for (n, m, k) in ORACLE_CONFIGS {
        for code in all_codes(n, m, k) {
            let lhs = gray_image_code(&code).dual_code();
            let rhs = gray_image_code(&code.dual());
            assert!(lhs.same_space(&rhs), "({n},{m},{k}) index {}", code.assignment().index());
        }
    }
}

#[test]
fn sizes_of_code_and_dual_add_up() {
    for (n, m, k) in ORACLE_CONFIGS {
        for code in all_codes(n, m, k) {
            let total = m as usize * (k + 1) * n;
            assert_eq!(code.log2_size() + code.dual().log2_size(), total);
            assert_eq!(m as usize * (code.linear_code().dim() + brute_force_dual(&code).dim()), total);
            assert_eq!(code.log2_size(), m as usize * code.linear_code().dim());
        }
    }
}

#[test]
fn enumerated_codes_are_shift_invariant() {
    for (n, m, k) in ORACLE_CONFIGS {
        for code in all_codes(n, m, k) {
            let words = code.enumerate(1 << 16).unwrap();
            assert_eq!(words.len() as u128, 1u128 << code.log2_size());
            for w in &words {
                assert!(code.contains(&w.shift()).unwrap());
            }
        }
    }
}

#[test]
fn dual_is_orthogonal_and_involutive() {
    for (n, m, k) in ORACLE_CONFIGS {
        for code in all_codes(n, m, k) {
            assert!(code.is_orthogonal_to(&code.dual()).unwrap());
            assert_eq!(code.dual().dual().type_vector(), code.type_vector());
        }
    }
}
