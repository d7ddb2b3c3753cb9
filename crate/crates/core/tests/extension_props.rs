mod common;

use common::extension;
use jointcode_core::extension::{build_extension, recognize_extension};
use jointcode_core::{Entry, ProblemInstance, TriMatrix};
use proptest::prelude::*;

proptest! {
    #[test]
    fn blocks_follow_the_base(spec in extension(4, 3, 0.4, 0.4)) {
        let (fe, layout) = build_extension(spec.base(), spec.components()).unwrap();
        let base = spec.base();
        let comps = spec.components();
        prop_assert_eq!(
            layout.n_e(),
            (0..base.cols()).map(|j| comps[j].rows() * layout.ones_per_col[j]).sum::<usize>()
        );
        prop_assert_eq!(layout.m_e(), comps.iter().map(TriMatrix::cols).sum::<usize>());
        prop_assert_eq!(fe.dims(), (layout.n_e(), layout.m_e()));

        let mut copies = vec![0usize; base.cols()];
        for i in 0..base.rows() {
            for j in 0..base.cols() {
                let block = layout.block(&fe, i, j).unwrap();
                let (h, w) = (comps[base.demand_of_row(i).unwrap()].rows(), comps[j].cols());
                match base.get(i, j) {
                    Entry::One => {
                        prop_assert_eq!(&block, &comps[j]);
                        copies[j] += 1;
                    }
                    Entry::Unknown => prop_assert_eq!(block, TriMatrix::filled(h, w, Entry::Unknown)),
                    Entry::Zero => prop_assert_eq!(block, TriMatrix::filled(h, w, Entry::Zero)),
                }
            }
        }
        prop_assert_eq!(&copies, &layout.ones_per_col);
        prop_assert!(recognize_extension(&fe, base, comps));
        // The extension is itself a valid problem.
        prop_assert!(ProblemInstance::problem_of(&fe).is_ok());
    }

    #[test]
    fn altered_matrices_are_not_recognized(spec in extension(3, 3, 0.4, 0.4), r in any::<prop::sample::Index>(), c in any::<prop::sample::Index>()) {
        let mut fe = spec.fitting_matrix();
        let (r, c) = (r.index(fe.rows()), c.index(fe.cols()));
        let flipped = match fe.get(r, c) {
            Entry::Zero => Entry::Unknown,
            _ => Entry::Zero,
        };
        fe.set(r, c, flipped);
        prop_assert!(!recognize_extension(&fe, spec.base(), spec.components()));
    }
}
