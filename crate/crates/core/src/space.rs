use crate::error::{Error, Result};

/// A database of `n_items` split into `n_blocks` contiguous blocks of
/// `block_size` items, with one marked item.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SearchSpace {
    n_items: u64,
    n_blocks: u64,
    block_size: u64,
    target_block: u64,
    target_item: u64,
}

impl SearchSpace {
    /// Geometry with the target at item 0 of block 0.
    pub fn new(n_items: u64, n_blocks: u64) -> Result<Self> {
        Self::with_target(n_items, n_blocks, 0, 0)
    }

    /// Geometry with an explicit target; `target_item` indexes into the
    /// target block.
    pub fn with_target(
        n_items: u64,
        n_blocks: u64,
        target_block: u64,
        target_item: u64,
    ) -> Result<Self> {
        if n_items == 0 || n_blocks == 0 {
            return Err(Error::EmptyGeometry);
        }
        if !n_items.is_multiple_of(n_blocks) {
            return Err(Error::BlocksDoNotDivide { n_items, n_blocks });
        }
        let block_size = n_items / n_blocks;
        if target_block >= n_blocks || target_item >= block_size {
            return Err(Error::TargetOutOfRange {
                target_block,
                target_item,
            });
        }
        Ok(Self {
            n_items,
            n_blocks,
            block_size,
            target_block,
            target_item,
        })
    }

    /// `N`.
    pub fn n_items(&self) -> u64 {
        self.n_items
    }

    /// `K`.
    pub fn n_blocks(&self) -> u64 {
        self.n_blocks
    }

    /// `b = N / K`.
    pub fn block_size(&self) -> u64 {
        self.block_size
    }

    /// Index of the block holding the target.
    pub fn target_block(&self) -> u64 {
        self.target_block
    }

    /// Position of the target inside its block.
    pub fn target_item(&self) -> u64 {
        self.target_item
    }

    /// Global index of the target item, with `block(i) = i / b`.
    pub fn target_index(&self) -> u64 {
        self.target_block * self.block_size + self.target_item
    }

    /// Block containing global item `index`.
    pub fn block_of(&self, index: u64) -> u64 {
        index / self.block_size
    }

    /// Number of non-target items in the target block, `b - 1`.
    pub fn block_class_size(&self) -> u64 {
        self.block_size - 1
    }

    /// Number of items outside the target block, `N - b`.
    pub fn outside_class_size(&self) -> u64 {
        self.n_items - self.block_size
    }

    pub(crate) fn sqrt_n(&self) -> f64 {
        libm::sqrt(self.n_items as f64)
    }

    pub(crate) fn sqrt_b(&self) -> f64 {
        libm::sqrt(self.block_size as f64)
    }
}

/// Iteration counts of one partial-search run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Schedule {
    /// Global Grover iterations (Step 1).
    pub global_iters: u64,
    /// Block-local Grover iterations (Step 2).
    pub local_iters: u64,
    /// Whether the final global iteration (Step 3) is applied.
    pub apply_final_step: bool,
}

impl Schedule {
    /// Builds a schedule.
    pub fn new(global_iters: u64, local_iters: u64, apply_final_step: bool) -> Self {
        Self {
            global_iters,
            local_iters,
            apply_final_step,
        }
    }

    /// Oracle calls spent by the schedule. One local iteration queries every
    /// block at once and costs a single call.
    pub fn query_count(&self) -> u64 {
        self.global_iters + self.local_iters + u64::from(self.apply_final_step)
    }

    /// The iterations in execution order.
    pub fn steps(&self) -> impl Iterator<Item = crate::Step> {
        use crate::Step;
        use core::iter::repeat_n;
        repeat_n(Step::Global, self.global_iters as usize)
            .chain(repeat_n(Step::Local, self.local_iters as usize))
            .chain(self.apply_final_step.then_some(Step::Global))
    }

    /// Chebyshev distance between the `(global, local)` pairs.
    pub fn distance(&self, other: &Schedule) -> u64 {
        self.global_iters
            .abs_diff(other.global_iters)
            .max(self.local_iters.abs_diff(other.local_iters))
    }
}
