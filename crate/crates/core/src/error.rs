use core::fmt;

/// The three amplitude classes of a symmetric partial-search state.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum AmplitudeClass {
    /// The marked item.
    Target,
    /// The other items of the target block.
    Block,
    /// Items in every other block.
    Outside,
}

impl fmt::Display for AmplitudeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AmplitudeClass::Target => "target",
            AmplitudeClass::Block => "target-block",
            AmplitudeClass::Outside => "outside",
        })
    }
}

/// Errors raised by the engines and the analysis layer.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// `n_items` or `n_blocks` was zero.
    EmptyGeometry,
    /// `n_blocks` does not divide `n_items`.
    BlocksDoNotDivide {
        /// Requested number of items.
        n_items: u64,
        /// Requested number of blocks.
        n_blocks: u64,
    },
    /// The target block or the target item within it is out of range.
    TargetOutOfRange {
        /// Requested target block.
        target_block: u64,
        /// Requested target item within the block.
        target_item: u64,
    },
    /// Amplitudes whose squared norm is not 1.
    NotNormalized {
        /// Observed squared norm.
        norm_squared: f64,
    },
    /// A dense amplitude vector has the wrong length for its space.
    LengthMismatch {
        /// Expected number of amplitudes.
        expected: u64,
        /// Number supplied.
        actual: u64,
    },
    /// A dense state is not constant on one of the amplitude classes, so it
    /// cannot be projected onto the reduced description.
    NotClassUniform {
        /// The offending class.
        class: AmplitudeClass,
        /// Largest deviation from the class representative.
        spread: f64,
    },
    /// The dense engine was asked for more items than its cap allows.
    CapExceeded {
        /// Requested number of items.
        n_items: u64,
        /// Configured cap.
        cap: u64,
    },
    /// The Step-1 iteration count of the canonical schedule is negative,
    /// which happens when the blocks are too large compared to `N`.
    RawNegative {
        /// Raw real-valued global iteration count.
        raw_global: f64,
    },
    /// A sweep range with `lo > hi`.
    EmptyRange,
    /// An iteration count outside the domain where a formula is defined.
    EtaOutOfRange {
        /// Requested iteration count.
        eta: f64,
        /// Largest accepted value.
        max: f64,
    },
    /// A block too small for the requested check.
    BlockTooSmall {
        /// Block size.
        block_size: u64,
    },
    /// The geometry has no non-target blocks.
    NoOutsideBlocks,
    /// The trace does not end with a final global iteration.
    NoFinalStep,
}

/// Result alias used across the crate.
pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Error::EmptyGeometry => f.write_str("n_items and n_blocks must be positive"),
            Error::BlocksDoNotDivide { n_items, n_blocks } => write!(
                f,
                "n_blocks must divide n_items (got n_items={n_items}, n_blocks={n_blocks})"
            ),
            Error::TargetOutOfRange {
                target_block,
                target_item,
            } => write!(
                f,
                "target (block {target_block}, item {target_item}) is outside the search space"
            ),
            Error::NotNormalized { norm_squared } => {
                write!(f, "state is not normalized (squared norm {norm_squared})")
            }
            Error::LengthMismatch { expected, actual } => {
                write!(f, "expected {expected} amplitudes, got {actual}")
            }
            Error::NotClassUniform { class, spread } => write!(
                f,
                "state is not uniform on the {class} class (spread {spread:e})"
            ),
            Error::CapExceeded { n_items, cap } => write!(
                f,
                "statevector engine limited to {cap} items, requested {n_items}"
            ),
            Error::RawNegative { raw_global } => write!(
                f,
                "canonical global iteration count is negative ({raw_global:.4}); blocks too large for partial search"
            ),
            Error::EmptyRange => f.write_str("iteration range is empty"),
            Error::EtaOutOfRange { eta, max } => {
                write!(f, "iteration count {eta} outside [0, {max}]")
            }
            Error::BlockTooSmall { block_size } => {
                write!(f, "block size {block_size} is too small for this check")
            }
            Error::NoOutsideBlocks => f.write_str("geometry has no non-target blocks"),
            Error::NoFinalStep => f.write_str("run has no final global iteration"),
        }
    }
}

impl core::error::Error for Error {}
