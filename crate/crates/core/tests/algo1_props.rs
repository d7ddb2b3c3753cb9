mod common;

use common::{extension, oracle_simulate};
use jointcode_core::algo1::{build_decoder_de, default_sigma, run_algorithm1, Algo1Inputs};
use jointcode_core::bounds::lower_bound;
use jointcode_core::decode::find_decoding_matrix;
use jointcode_core::extension::ExtensionSpec;
use jointcode_core::minrank::exact_minrank;
use jointcode_core::problem::completes;
use jointcode_core::{BinMatrix, Condition, Error, Permutation, TriMatrix};
use proptest::collection::vec;
use proptest::prelude::*;

/// A code for `fm` from the completion picked by `bits`: its basis rows,
/// with the matching decoder.
fn code_from(fm: &TriMatrix, bits: &[bool]) -> (BinMatrix, BinMatrix) {
    let u = fm.unknown_count();
    let f = fm.completion_with(&bits[..u]).unwrap();
    let g = f.select_rows(&f.basis_rows());
    let d = find_decoding_matrix(&g, fm).unwrap().decoder().unwrap();
    (g, d)
}

fn optimal_code(fm: &TriMatrix) -> (BinMatrix, BinMatrix) {
    let f = exact_minrank(fm, 24).unwrap().witness;
    let g = f.select_rows(&f.basis_rows());
    let d = find_decoding_matrix(&g, fm).unwrap().decoder().unwrap();
    (g, d)
}

#[derive(Debug)]
struct Case {
    spec: ExtensionSpec,
    codes: Vec<BinMatrix>,
    decoders: Vec<BinMatrix>,
    base_code: BinMatrix,
    base_decoder: BinMatrix,
}

/// Random extension with codes drawn from random completions.
fn case(optimal: bool) -> impl Strategy<Value = Case> {
    extension(4, 3, 0.35, 0.4)
        .prop_flat_map(|spec| {
            let m = spec.components().len();
            (Just(spec), vec(vec(any::<bool>(), 9), m), vec(any::<bool>(), 16))
        })
        .prop_map(move |(spec, comp_bits, base_bits)| {
            let (codes, decoders): (Vec<_>, Vec<_>) = spec
                .components()
                .iter()
                .zip(&comp_bits)
                .map(|(c, b)| if optimal { optimal_code(c) } else { code_from(c, b) })
                .unzip();
            let (base_code, base_decoder) = code_from(spec.base(), &base_bits);
            Case {
                spec,
                codes,
                decoders,
                base_code,
                base_decoder,
            }
        })
}

fn inputs(c: &Case, sigma: Option<Permutation>) -> Algo1Inputs {
    Algo1Inputs::new(
        c.codes.clone(),
        c.base_code.clone(),
        c.base_decoder.clone(),
        c.spec.base().clone(),
        sigma,
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn synthesized_codes_decode(c in case(false)) {
        let inp = inputs(&c, None);
        let (result, trace) = run_algorithm1(&inp).unwrap();
        let m_b = c.spec.base().cols();
        prop_assert!(trace.iterations.len() <= m_b);
        prop_assert!(trace.iterations.last().unwrap().psi_after.is_empty());
        prop_assert_eq!(result.blockrow_heights.len(), c.base_code.rows());
        prop_assert_eq!(result.codelength, result.blockrow_heights.iter().sum::<usize>());
        let smallest = c.codes.iter().map(BinMatrix::rows).min().unwrap();
        prop_assert!(result.blockrow_heights.iter().all(|&h| h >= smallest));

        let de = build_decoder_de(&c.spec, &inp, &c.decoders, &result).unwrap();
        let fe = c.spec.fitting_matrix();
        prop_assert!(completes(&de.mul(&result.encoder).unwrap(), &fe).unwrap());
        if fe.cols() <= 12 {
            prop_assert!(oracle_simulate(&result.encoder, &de, &fe));
        }
    }

    #[test]
    fn any_rank_compatible_order_works(c in case(false), seed in any::<u64>()) {
        let ranks: Vec<usize> = c.codes.iter().map(BinMatrix::rows).collect();
        // Shuffle within runs of equal rank.
        let mut order = default_sigma(&ranks).mapping().to_vec();
        let mut s = seed;
        for i in (1..order.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let j = (s >> 33) as usize % (i + 1);
            if ranks[order[i]] == ranks[order[j]] && (j..=i).all(|k| ranks[order[k]] == ranks[order[i]]) {
                order.swap(i, j);
            }
        }
        let inp = inputs(&c, Some(Permutation::new(order).unwrap()));
        let (result, _) = run_algorithm1(&inp).unwrap();
        let de = build_decoder_de(&c.spec, &inp, &c.decoders, &result).unwrap();
        prop_assert!(completes(&de.mul(&result.encoder).unwrap(), &c.spec.fitting_matrix()).unwrap());
    }

    #[test]
    fn optimal_codes_respect_the_lower_bound(c in case(true)) {
        let ranks: Vec<usize> = c.codes.iter().map(BinMatrix::rows).collect();
        let (result, _) = run_algorithm1(&inputs(&c, None)).unwrap();
        prop_assert!(result.codelength >= lower_bound(&c.spec, &ranks).unwrap().value);
    }
}

#[test]
fn order_against_ranks_is_rejected() {
    let base = TriMatrix::from_strs(&["1x", "x1"]).unwrap();
    let g1 = BinMatrix::identity(2);
    let g2 = BinMatrix::identity(1);
    let gb = BinMatrix::identity(2);
    let err = Algo1Inputs::new(
        vec![g1.clone(), g2.clone()],
        gb.clone(),
        gb.clone(),
        base.clone(),
        Some(Permutation::new(vec![1, 0]).unwrap()),
    )
    .unwrap_err();
    assert_eq!(err, Error::Precondition(Condition::RankOrder { position: 1 }));
    let dependent = BinMatrix::from_rows(&[[1u8, 1], [1, 1]]).unwrap();
    assert!(matches!(
        Algo1Inputs::new(vec![dependent, g2], gb.clone(), gb, base, None),
        Err(Error::Precondition(Condition::NotFullRank { .. }))
    ));
}

/// No ordering between the two constructions is asserted; the tallies are
/// printed for inspection and both codes must decode.
#[test]
fn algorithm1_against_explicit_completion() {
    use jointcode_core::bounds::{lemma2_construct, lemma2_search};
    use proptest::strategy::ValueTree;
    use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

    let mut runner = TestRunner::new_with_rng(
        Config::default(),
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    );
    let (mut shorter, mut equal, mut longer) = (0, 0, 0);
    let strategy = extension(4, 3, 0.35, 0.4);
    for _ in 0..300 {
        let spec = strategy.new_tree(&mut runner).unwrap().current();
        let completions: Vec<BinMatrix> =
            spec.components().iter().map(|c| exact_minrank(c, 24).unwrap().witness).collect();
        let Some(l2) = lemma2_search(&spec, completions.clone(), None, 24).unwrap() else {
            continue;
        };
        let built = lemma2_construct(&spec, &l2).unwrap();

        // Same component codes, base code taken from the same base completion.
        let (codes, decoders): (Vec<_>, Vec<_>) = spec
            .components()
            .iter()
            .zip(&completions)
            .map(|(fm, f)| {
                let g = f.select_rows(&f.basis_rows());
                let d = find_decoding_matrix(&g, fm).unwrap().decoder().unwrap();
                (g, d)
            })
            .unzip();
        let fb = l2.base_completion();
        let gb = fb.select_rows(&fb.basis_rows());
        let db = find_decoding_matrix(&gb, spec.base()).unwrap().decoder().unwrap();
        let inp = Algo1Inputs::new(codes, gb, db, spec.base().clone(), None).unwrap();
        let (result, _) = run_algorithm1(&inp).unwrap();
        let de = build_decoder_de(&spec, &inp, &decoders, &result).unwrap();
        assert!(completes(&de.mul(&result.encoder).unwrap(), &spec.fitting_matrix()).unwrap());

        match result.codelength.cmp(&built.codelength) {
            std::cmp::Ordering::Less => shorter += 1,
            std::cmp::Ordering::Equal => equal += 1,
            std::cmp::Ordering::Greater => longer += 1,
        }
    }
    println!("algorithm 1 vs explicit completion: shorter {shorter}, equal {equal}, longer {longer}");
    assert!(shorter + equal + longer > 0);
}
