//! Adaptive spatial-domain image watermarking.
//!
//! Each 3×3 block of an 8-bit grayscale image carries one message bit. A
//! block is classified by summing the most significant bits of its nine
//! pixels: sums of 4, 5 or 6 mark a disordered (busy) block, which takes the
//! bit in plane 5, while ordered blocks take it in plane 3. The enhanced mode
//! also writes the complemented bit into the next lower plane, cutting the
//! expected squared pixel error from `2·4^i` to `1.5·4^i`. Extraction is blind:
//! it recomputes the classification and takes a 9-way majority vote.
//!
//! Modules:
//!
//! - [`image`], [`pgm`]: pixels, blocks, bit-planes, PGM I/O
//! - [`congestion`]: the MSB-sum classifier plus DCT, entropy and Canny scorers
//! - [`codec`], [`distortion`]: embedding, extraction, distortion model
//! - [`attacks`], [`metrics`]: JPEG/noise/median attacks, PSNR/SSIM/NC
//! - [`hwsim`]: gate-level compressor, indicator and mux, and the row pipeline
//! - [`report`], [`synth`]: experiment harnesses and synthetic images
//!
//! ```
//! use adaptive_wm::{codec, synth, EmbedMode, WatermarkMessage};
//!
//! let host = synth::natural_like(99, 99, 1);
//! let msg = WatermarkMessage::random(33 * 33, 7);
//! let marked = codec::embed(&host, &msg, EmbedMode::EnhancedAdaptive).unwrap();
//! assert_eq!(codec::extract(&marked).unwrap(), msg);
//! ```

pub mod attacks;
pub mod canny;
pub mod codec;
pub mod congestion;
pub mod dct;
pub mod distortion;
pub mod error;
pub mod hwsim;
pub mod image;
pub mod metrics;
pub mod pgm;
pub mod report;
pub mod synth;

pub use attacks::AttackSpec;
pub use codec::{embed, extract, EmbedMode, WatermarkMessage};
pub use congestion::{analyze, BlockType, CongestionMap};
pub use error::{Error, Result};
pub use image::{BitPlane, BlockGrid, GrayImage};
pub use pgm::{load_image, store_image};
