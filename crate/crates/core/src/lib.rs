//! Domino tilings of the box `[0,2]^n`, their cube tiling codes, and flips.

pub mod bridge;
pub mod codes;
pub mod constructions;
pub mod explorer;
pub mod regularity;
pub mod text;
pub mod tiling;
pub mod word;
