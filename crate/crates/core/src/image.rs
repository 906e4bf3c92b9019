//! Grayscale images, 3×3 block addressing and bit-plane access.
//!
//! Every block-based operation in the crate walks blocks in row-major order:
//! left to right within a block row, block rows top to bottom. Pixels that do
//! not fall inside a complete block (the trailing `width % 3` columns and
//! `height % 3` rows) belong to no block and are never modified.

use crate::error::{Error, Result};

/// Side length of a block.
pub const BLOCK: usize = 3;
/// Pixels per block.
pub const BLOCK_PIXELS: usize = BLOCK * BLOCK;

/// An 8-bit grayscale image stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self> {
        if pixels.len() != width * height {
            return Err(Error::PixelCount {
                width,
                height,
                len: pixels.len(),
            });
        }
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    pub fn filled(width: usize, height: usize, value: u8) -> Self {
        Self {
            width,
            height,
            pixels: vec![value; width * height],
        }
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> u8) -> Self {
        let mut pixels = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                pixels.push(f(x, y));
            }
        }
        Self {
            width,
            height,
            pixels,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn pixels_mut(&mut self) -> &mut [u8] {
        &mut self.pixels
    }

    pub fn into_pixels(self) -> Vec<u8> {
        self.pixels
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.pixels[y * self.width + x]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, value: u8) {
        self.pixels[y * self.width + x] = value;
    }

    pub fn row(&self, y: usize) -> &[u8] {
        &self.pixels[y * self.width..(y + 1) * self.width]
    }

    /// Pixel at `(x, y)` with coordinates clamped into the image.
    #[inline]
    pub fn get_clamped(&self, x: isize, y: isize) -> u8 {
        let x = x.clamp(0, self.width as isize - 1) as usize;
        let y = y.clamp(0, self.height as isize - 1) as usize;
        self.get(x, y)
    }

    pub fn same_dimensions(&self, other: &GrayImage) -> Result<()> {
        if self.width != other.width || self.height != other.height {
            return Err(Error::DimensionMismatch {
                a_width: self.width,
                a_height: self.height,
                b_width: other.width,
                b_height: other.height,
            });
        }
        Ok(())
    }

    /// Block partition of this image; fails when no complete block fits.
    pub fn partition(&self) -> Result<BlockGrid> {
        BlockGrid::new(self.width, self.height)
    }

    /// The nine pixels of a block, row-major.
    pub fn block(&self, grid: &BlockGrid, index: usize) -> [u8; BLOCK_PIXELS] {
        let mut out = [0u8; BLOCK_PIXELS];
        for (k, (x, y)) in grid.pixel_coords(index).enumerate() {
            out[k] = self.get(x, y);
        }
        out
    }

    pub fn blocks<'a>(&'a self, grid: &'a BlockGrid) -> impl Iterator<Item = [u8; BLOCK_PIXELS]> + 'a {
        (0..grid.len()).map(move |i| self.block(grid, i))
    }
}

/// Row-major addressing of the non-overlapping 3×3 blocks of an image.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockGrid {
    pub blocks_x: usize,
    pub blocks_y: usize,
    pub width: usize,
    pub height: usize,
}

impl BlockGrid {
    pub fn new(width: usize, height: usize) -> Result<Self> {
        if width < BLOCK || height < BLOCK {
            return Err(Error::NoBlocks { width, height });
        }
        Ok(Self {
            blocks_x: width / BLOCK,
            blocks_y: height / BLOCK,
            width,
            height,
        })
    }

    pub fn len(&self) -> usize {
        self.blocks_x * self.blocks_y
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `(bx, by)` of the block with the given row-major index.
    pub fn position(&self, index: usize) -> (usize, usize) {
        (index % self.blocks_x, index / self.blocks_x)
    }

    pub fn index(&self, bx: usize, by: usize) -> usize {
        by * self.blocks_x + bx
    }

    /// Pixel coordinates of a block, row-major inside the block.
    pub fn pixel_coords(&self, index: usize) -> impl Iterator<Item = (usize, usize)> {
        let (bx, by) = self.position(index);
        (0..BLOCK_PIXELS).map(move |k| (bx * BLOCK + k % BLOCK, by * BLOCK + k / BLOCK))
    }

    /// Block containing pixel `(x, y)`, or `None` in the excluded margin.
    pub fn block_of(&self, x: usize, y: usize) -> Option<usize> {
        let (bx, by) = (x / BLOCK, y / BLOCK);
        (bx < self.blocks_x && by < self.blocks_y).then(|| self.index(bx, by))
    }
}

/// A bit-plane number in `[1, 8]`; plane 1 is the LSB, plane 8 the MSB.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BitPlane(u8);

impl BitPlane {
    pub const MSB: BitPlane = BitPlane(8);

    /// Compile-time constructor; panics on an out-of-range plane.
    pub const fn from_const(plane: u8) -> Self {
        assert!(plane >= 1 && plane <= 8, "bit-plane outside [1, 8]");
        BitPlane(plane)
    }

    pub fn new(plane: u8) -> Result<Self> {
        if (1..=8).contains(&plane) {
            Ok(BitPlane(plane))
        } else {
            Err(Error::InvalidPlane(plane))
        }
    }

    pub const fn get(self) -> u8 {
        self.0
    }

    /// Bit mask of weight `2^(plane-1)`.
    pub const fn mask(self) -> u8 {
        1 << (self.0 - 1)
    }

    /// The next lower plane, if any.
    pub fn lower(self) -> Option<BitPlane> {
        (self.0 > 1).then(|| BitPlane(self.0 - 1))
    }
}

#[inline]
pub fn get_bit(pixel: u8, plane: BitPlane) -> bool {
    (pixel >> (plane.0 - 1)) & 1 == 1
}

#[inline]
pub fn set_bit(pixel: u8, plane: BitPlane, value: bool) -> u8 {
    if value {
        pixel | plane.mask()
    } else {
        pixel & !plane.mask()
    }
}
