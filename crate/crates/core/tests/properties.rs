use nsot_core::bounds::{
    delta_for, ell_ideal, ell_robust, ideal_bound_real, robust_bound_real, secure_predicate,
};
use nsot_core::protocol::{
    run_honest_trial, BitString, ChannelParams, ProtocolParams, ToeplitzHash, Transcript,
};
use nsot_core::qmath::{binary_entropy, QubitBasis};
use nsot_core::uncertainty::t_closed_form;
use proptest::prelude::*;

fn eps() -> impl Strategy<Value = f64> {
    prop_oneof![Just(1e-3), Just(1e-2), 0.001f64..0.05]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ideal_monotone_in_n_and_t(n in 2_000u64..5_000_000, k in 1u64..4, eps in eps(), t in 0.05f64..0.5, dt in 0.0f64..0.5) {
        let base = ell_ideal(n, eps, t).unwrap();
        if base.ell_max >= 1 {
            prop_assert!(ell_ideal(n * k, eps, t).unwrap().ell_max >= base.ell_max);
        }
        prop_assert!(ell_ideal(n, eps, (t + dt).min(1.0)).unwrap().ell_max >= base.ell_max);
    }

    #[test]
    fn robust_monotone(
        n in 50_000u64..5_000_000,
        eps in eps(),
        t in 0.1f64..0.5,
        p_error in 0.0f64..0.1,
        dp in 0.0f64..0.1,
        p_erase in 0.0f64..0.5,
        de in 0.0f64..0.3,
    ) {
        let base = ell_robust(n, eps, t, p_error, p_erase).unwrap().ell_max;
        prop_assert!(ell_robust(n, eps, t, p_error + dp, p_erase).unwrap().ell_max <= base);
        prop_assert!(ell_robust(n, eps, t, p_error, p_erase + de).unwrap().ell_max <= base);
        prop_assert!(ell_robust(n, eps, (t + 0.1).min(1.0), p_error, p_erase).unwrap().ell_max >= base);
        if base >= 1 {
            prop_assert!(ell_robust(2 * n, eps, t, p_error, p_erase).unwrap().ell_max >= base);
        }
    }

    #[test]
    fn robust_core_reduces_to_ideal(n in 1_000u64..10_000_000, eps in eps(), t in 0.0f64..1.0) {
        let delta = delta_for(n as f64, eps);
        let robust = robust_bound_real(n, eps, t, delta, 0.0, 0.0) + eps * n as f64 / 2.0;
        let ideal = ideal_bound_real(n, eps, t, delta);
        prop_assert!((robust - ideal).abs() <= 1e-9 * ideal.abs().max(1.0));
    }

    #[test]
    fn secure_predicate_monotone(r in 0.0f64..1.0, dr in 0.0f64..1.0, p in 0.0f64..0.49, dp in 0.0f64..0.49) {
        let (secure, _) = secure_predicate(r, p).unwrap();
        // less faithful storage and fewer errors can only help
        if secure {
            let r2 = (r - dr).max(0.0);
            let p2 = (p - dp).max(0.0);
            prop_assert!(secure_predicate(r2, p2).unwrap().0);
        }
    }

    #[test]
    fn secure_predicate_consistent_with_t(r in 0.0f64..1.0, p in 0.0f64..0.49) {
        if binary_entropy(p).unwrap() >= t_closed_form(r).unwrap() {
            prop_assert!(!secure_predicate(r, p).unwrap().0);
        }
    }

    #[test]
    fn bitstring_base64_round_trip(bits in prop::collection::vec(0u8..2, 0..200)) {
        let b = BitString::from_bits(bits.clone());
        let back = BitString::from_base64(&b.to_base64(), bits.len()).unwrap();
        prop_assert_eq!(back.bits(), &bits[..]);
        let json = serde_json::to_string(&b).unwrap();
        prop_assert_eq!(serde_json::from_str::<BitString>(&json).unwrap(), b);
    }

    #[test]
    fn toeplitz_is_linear(
        x in prop::collection::vec(0u8..2, 1..40),
        y_seed in any::<u64>(),
        hash_seed in prop::collection::vec(0u8..2, 0..80),
        n_out in 1usize..8,
    ) {
        let n_in = x.len();
        let seed: Vec<u8> = (0..n_in + n_out - 1).map(|i| hash_seed.get(i).copied().unwrap_or((i % 3 == 0) as u8)).collect();
        let h = ToeplitzHash::new(n_in, n_out, BitString::from_bits(seed)).unwrap();
        let x = BitString::from_bits(x);
        let y = BitString::from_bits((0..n_in).map(|i| (y_seed >> (i % 64) & 1) as u8));
        let lhs = h.apply(&x.xor(&y).unwrap()).unwrap();
        let rhs = h.apply(&x).unwrap().xor(&h.apply(&y).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn transcript_round_trip(seed in any::<u64>(), p_error in 0.0f64..0.1, p_erase in 0.0f64..0.4, plus in any::<bool>()) {
        let channel = ChannelParams::new(p_error, p_erase).unwrap();
        let params = ProtocolParams::new(160, 4, 0.2, channel, 0.5, seed).unwrap();
        let choice = if plus { QubitBasis::Computational } else { QubitBasis::Hadamard };
        let run = run_honest_trial(&params, choice, 0).unwrap();
        let text = run.transcript.to_jsonl();
        let back = Transcript::from_jsonl(&text).unwrap();
        prop_assert_eq!(&back, &run.transcript);
        prop_assert_eq!(back.to_jsonl(), text);
        prop_assert_eq!(run.agree.is_none(), back.aborted());
        prop_assert_eq!(back.reveal().is_none(), back.aborted());
    }
}
