//! Free resolutions used to bound and explain the first row: the EN type
//! resolutions of scroll modules, the relative resolution of the Segre ring
//! over the scroll, the horizontal chain maps between them and the kernel
//! computation at the top of the mapping cone.

mod en;
mod relres;
mod chainmap;
mod cone;
mod kernel;
pub mod free;

pub use en::{en_resolution_degree_piece, verify_en_exactness, EnComplex, EnRow, EnTerm};
pub use relres::{relative_resolution_degree_piece, verify_relative_resolution, RelativeSlice};
pub use chainmap::{horizontal_chain_map, verify_chain_map_squares, HorizontalMaps};
pub use cone::{mapping_cone_ledger, ConeSummand, LedgerPosition, MappingConeLedger};
pub use kernel::{
    first_chain_map, kernel_basis_expressions, kernel_map, uncomplemented_kernel_map, verify_kernel_lemma, KernelMap,
};

/// Index `x` if it lies in `lo..=hi`, else `None`. Every "out of range
/// terms are deleted" rule (`B_{-1}`, `g_0`, grid points off the rectangle)
/// goes through here.
pub(crate) fn clamp(x: i64, lo: i64, hi: i64) -> Option<u32> {
    (lo..=hi).contains(&x).then_some(x as u32)
}
