use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tridend_core::coeff::{int, rat};
use tridend_core::omega::{builtin, check_ets, Builtin};
use tridend_core::rota_baxter::{check_rb, induced_tridend};
use tridend_core::words::UniversalMorphism;
use tridend_core::{
    LinComb, MatchingAlgebra, OmegaRbAlgebra, OmegaTable, Tridendriform, TypedWord, TypedWords,
};

proptest! {
    #[test]
    fn table_json_roundtrip(size in 1usize..4, seed in any::<u64>()) {
        let t = OmegaTable::random(size, &mut ChaCha8Rng::seed_from_u64(seed));
        let back = OmegaTable::from_json_str(&t.to_json_string()).unwrap();
        prop_assert!(back == t);
        prop_assert!(t.opposite().opposite() == t);
    }

    #[test]
    fn ets_is_stable_under_opposite(size in 1usize..3, seed in any::<u64>()) {
        let t = OmegaTable::random(size, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(check_ets(&t).passed(), check_ets(&t.opposite()).passed());
    }
}

#[test]
fn algebra_json_roundtrip() {
    let m = MatchingAlgebra::pointwise(3, &[int(1), rat(-1, 2)]);
    let back = MatchingAlgebra::from_json_str(&m.to_json_string()).unwrap();
    assert_eq!(back.to_json_string(), m.to_json_string());

    let p = vec![vec![int(0), int(0)], vec![int(1), int(0)]];
    let rb = OmegaRbAlgebra::pointwise(2, vec![p], vec![int(1)]).unwrap();
    let back = OmegaRbAlgebra::from_json_str(&rb.to_json_string()).unwrap();
    assert_eq!(back.to_json_string(), rb.to_json_string());
}

// Φ into a Rota-Baxter-induced algebra, on a few products.
#[test]
fn words_map_into_rota_baxter_algebra() {
    let t = builtin(Builtin::Trivial, 1, None, None).unwrap();
    let p = vec![vec![int(0), int(0)], vec![int(1), int(0)]];
    let rb = OmegaRbAlgebra::pointwise(2, vec![p], vec![int(1)]).unwrap();
    assert!(check_rb(&rb, &t).unwrap().passed());
    let target = induced_tridend(&rb, &t, false).unwrap();
    let words = TypedWords::new(t.clone(), MatchingAlgebra::pointwise(2, &[int(1)])).unwrap();
    let phi = vec![LinComb::basis(0), LinComb::basis(1)];
    let morph = UniversalMorphism::new(words.algebra(), phi, &target).unwrap();
    let a = LinComb::basis(TypedWord::parse("0 :0 1", None).unwrap());
    let b = LinComb::basis(TypedWord::parse("1", None).unwrap());
    for op in tridend_core::TriOp::ALL {
        let lhs = morph.apply(&words.product(op, 0, &a, &b));
        let rhs = target.product(op, 0, &morph.apply(&a), &morph.apply(&b));
        assert_eq!(lhs, rhs, "{op}");
    }
}
