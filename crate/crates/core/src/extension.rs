//! Joint extensions: the base fitting matrix decides where copies of the
//! component fitting matrices sit.
//!
//! Block `(i, j)` of the extended matrix is the component `j` fitting
//! matrix where the base has `1`, all unknown where it has `x`, and zero
//! otherwise. Block-row `i` is as tall as the component demanded by base
//! row `i`; block-column `j` is as wide as component `j`.

use alloc::vec::Vec;

use crate::gf2::{BlockShape, Blocks};
use crate::{Entry, Error, Result, TriMatrix};

/// Block bookkeeping of an extended fitting matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockLayout {
    pub base_rows: usize,
    pub base_cols: usize,
    /// `n_{j_i}` for every base row `i`.
    pub row_heights: Vec<usize>,
    /// `m_j` for every base column `j`.
    pub col_widths: Vec<usize>,
    /// `j_i`, the column of the `1` in base row `i`.
    pub demand_of_blockrow: Vec<usize>,
    /// `l_j`, the number of base rows demanding message `j`.
    pub ones_per_col: Vec<usize>,
    shape: BlockShape,
}

impl BlockLayout {
    pub fn n_e(&self) -> usize {
        self.shape.total_rows()
    }

    pub fn m_e(&self) -> usize {
        self.shape.total_cols()
    }

    pub fn shape(&self) -> &BlockShape {
        &self.shape
    }

    /// Shape for an encoder whose block-rows have the given heights.
    pub fn encoder_shape(&self, heights: Vec<usize>) -> BlockShape {
        BlockShape::new(heights, self.col_widths.clone())
    }

    pub fn row_offset(&self, i: usize) -> usize {
        self.shape.row_offset(i)
    }

    pub fn col_offset(&self, j: usize) -> usize {
        self.shape.col_offset(j)
    }

    /// Block `(i, j)` of a matrix laid out by `self`.
    pub fn block<M: Blocks>(&self, m: &M, i: usize, j: usize) -> Result<M> {
        self.shape.extract(m, i, j)
    }
}

/// A base fitting matrix together with one component per base message.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionSpec {
    base: TriMatrix,
    components: Vec<TriMatrix>,
    layout: BlockLayout,
}

impl ExtensionSpec {
    pub fn new(base: TriMatrix, components: Vec<TriMatrix>) -> Result<Self> {
        let demands = base.demands()?;
        if components.len() != base.cols() {
            return Err(Error::ComponentCount {
                expected: base.cols(),
                found: components.len(),
            });
        }
        for c in &components {
            c.check_fitting()?;
        }
        let mut ones_per_col = alloc::vec![0; base.cols()];
        for &j in &demands {
            ones_per_col[j] += 1;
        }
        if let Some(message) = ones_per_col.iter().position(|&l| l == 0) {
            return Err(Error::UndemandedMessage { message });
        }
        let row_heights: Vec<usize> = demands.iter().map(|&j| components[j].rows()).collect();
        let col_widths: Vec<usize> = components.iter().map(TriMatrix::cols).collect();
        let layout = BlockLayout {
            base_rows: base.rows(),
            base_cols: base.cols(),
            shape: BlockShape::new(row_heights.clone(), col_widths.clone()),
            row_heights,
            col_widths,
            demand_of_blockrow: demands,
            ones_per_col,
        };
        Ok(ExtensionSpec {
            base,
            components,
            layout,
        })
    }

    pub fn base(&self) -> &TriMatrix {
        &self.base
    }

    pub fn components(&self) -> &[TriMatrix] {
        &self.components
    }

    pub fn layout(&self) -> &BlockLayout {
        &self.layout
    }

    /// The extended fitting matrix.
    pub fn fitting_matrix(&self) -> TriMatrix {
        let l = &self.layout;
        let blocks: Vec<Vec<TriMatrix>> = (0..l.base_rows)
            .map(|i| {
                (0..l.base_cols)
                    .map(|j| {
                        let (h, w) = (l.row_heights[i], l.col_widths[j]);
                        match self.base.get(i, j) {
                            Entry::One => self.components[j].clone(),
                            Entry::Unknown => TriMatrix::filled(h, w, Entry::Unknown),
                            Entry::Zero => TriMatrix::filled(h, w, Entry::Zero),
                        }
                    })
                    .collect()
            })
            .collect();
        // Block sizes come from the layout itself, so assembly cannot fail.
        l.shape.assemble(&blocks).expect("blocks follow the layout")
    }
}

/// Builds the extended fitting matrix and its layout.
pub fn build_extension(base: &TriMatrix, components: &[TriMatrix]) -> Result<(TriMatrix, BlockLayout)> {
    let spec = ExtensionSpec::new(base.clone(), components.to_vec())?;
    Ok((spec.fitting_matrix(), spec.layout.clone()))
}

/// Whether `fm` is exactly the extension of `base` by `components`.
pub fn recognize_extension(fm: &TriMatrix, base: &TriMatrix, components: &[TriMatrix]) -> bool {
    build_extension(base, components).is_ok_and(|(built, _)| &built == fm)
}
