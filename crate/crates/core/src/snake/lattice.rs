//! Points of `Z^d` packed into one `u128`, 16 bits per axis.
//!
//! Each lane stores `coordinate + 0x8000`, so a unit step is a single
//! add or subtract on the packed word. Lanes never carry as long as every
//! coordinate stays within `±32767`, which holds whenever the tree depth
//! does.

use std::fmt;

use crate::error::{Error, Result};
use crate::rng::RngStream;

pub const MAX_DIM: u32 = 8;
/// Largest depth (hence coordinate) the packing can hold.
pub const MAX_RADIUS: u32 = 0x7FFF;

const LANE_BITS: u32 = 16;
const BIAS: u128 = 0x8000;

/// Packed lattice point; compare and hash it directly.
pub type Packed = u128;

/// A dimension `1 <= d <= 8` together with its packed origin.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Lattice {
    dim: u32,
    origin: Packed,
}

impl Lattice {
    pub fn new(dim: u32) -> Result<Self> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::invalid(format!("dimension must be in 1..={MAX_DIM}, got {dim}")));
        }
        let origin = (0..dim).fold(0u128, |acc, a| acc | (BIAS << (LANE_BITS * a)));
        Ok(Lattice { dim, origin })
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    #[inline(always)]
    pub fn origin(&self) -> Packed {
        self.origin
    }

    /// Rejects radii whose walks could overflow a lane.
    pub fn check_radius(&self, r: u32) -> Result<()> {
        if r > MAX_RADIUS {
            Err(Error::SizeGuard {
                what: "radius",
                value: u64::from(r),
                limit: u64::from(MAX_RADIUS),
            })
        } else {
            Ok(())
        }
    }

    /// Uniform index in `0..2d`: axis `idx / 2`, sign `+` for even `idx`.
    #[inline(always)]
    pub fn draw_direction(&self, rng: &mut RngStream) -> u8 {
        rng.uniform_below(2 * self.dim) as u8
    }

    #[inline(always)]
    pub fn step(&self, p: Packed, direction: u8) -> Packed {
        let unit = 1u128 << (LANE_BITS * u32::from(direction >> 1));
        if direction & 1 == 0 {
            p.wrapping_add(unit)
        } else {
            p.wrapping_sub(unit)
        }
    }

    #[inline]
    pub fn coord(&self, p: Packed, axis: u32) -> i32 {
        ((p >> (LANE_BITS * axis)) & 0xFFFF) as i32 - BIAS as i32
    }

    /// `max_a |x_a|`.
    #[inline]
    pub fn sup_norm(&self, p: Packed) -> u32 {
        (0..self.dim)
            .map(|a| self.coord(p, a).unsigned_abs())
            .max()
            .unwrap_or(0)
    }

    /// Sum of coordinates; its parity equals the parity of the walk length.
    #[inline]
    pub fn coord_sum(&self, p: Packed) -> i64 {
        (0..self.dim).map(|a| i64::from(self.coord(p, a))).sum()
    }

    /// `p - q` componentwise, re-biased.
    #[inline]
    pub fn translate(&self, p: Packed, by_minus: Packed) -> Packed {
        (0..self.dim).fold(0u128, |acc, a| {
            let c = self.coord(p, a) - self.coord(by_minus, a);
            acc | (((c as i64 + BIAS as i64) as u128 & 0xFFFF) << (LANE_BITS * a))
        })
    }

    pub fn unpack(&self, p: Packed) -> LatticePoint {
        LatticePoint((0..self.dim).map(|a| self.coord(p, a)).collect())
    }

    pub fn pack(&self, point: &LatticePoint) -> Result<Packed> {
        if point.0.len() != self.dim as usize {
            return Err(Error::invalid("point dimension mismatch"));
        }
        point.0.iter().enumerate().try_fold(0u128, |acc, (a, &c)| {
            if c.unsigned_abs() > MAX_RADIUS {
                return Err(Error::invalid(format!("coordinate {c} out of packable range")));
            }
            Ok(acc | (((c + BIAS as i32) as u128) << (LANE_BITS * a as u32)))
        })
    }
}

/// A point of `Z^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticePoint(pub Vec<i32>);

impl LatticePoint {
    pub fn origin(dim: u32) -> Self {
        LatticePoint(vec![0; dim as usize])
    }

    pub fn dim(&self) -> u32 {
        self.0.len() as u32
    }

    pub fn is_origin(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}
