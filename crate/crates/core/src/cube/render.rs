use std::fmt::Write;

use super::{CubeError, FractalCube};

pub const DEFAULT_MAX_PIXELS: u128 = 1 << 24;

/// Plain PBM (P1) picture of the depth-`k` approximation.
///
/// For `d = 2` the image is `n^k × n^k`; row 0 is the top edge `y = 1`
/// and column 0 is `x = 0`. For `d = 1` it is a single row. Pixels are
/// `1` (black) for cells in the approximation, separated by single
/// spaces, one image row per line.
pub fn render_pbm(cube: &FractalCube, depth: u32, max_pixels: u128) -> Result<String, CubeError> {
    let d = cube.d();
    if d > 2 {
        return Err(CubeError::UnsupportedDimension(d));
    }
    let n = cube.n() as u128;
    let side = n.checked_pow(depth).unwrap_or(u128::MAX);
    let pixels = side.saturating_pow(d);
    if pixels > max_pixels {
        return Err(CubeError::TooManyPixels {
            pixels,
            limit: max_pixels,
        });
    }
    let side = side as usize;
    let n = cube.n() as usize;
    let (width, height) = if d == 1 { (side, 1) } else { (side, side) };

    // Dense digit membership table indexed by x + n*y.
    let mut member = vec![false; n.pow(d)];
    for digit in cube.digits() {
        let idx = digit[0] as usize + if d == 2 { n * digit[1] as usize } else { 0 };
        member[idx] = true;
    }
    let inside = |mut x: usize, mut y: usize| {
        for _ in 0..depth {
            if !member[x % n + n * (y % n)] {
                return false;
            }
            x /= n;
            y /= n;
        }
        true
    };

    let mut out = String::with_capacity(16 + 2 * width * height);
    writeln!(out, "P1").expect("string write");
    writeln!(out, "{width} {height}").expect("string write");
    for row in 0..height {
        let y = height - 1 - row;
        for x in 0..width {
            if x > 0 {
                out.push(' ');
            }
            out.push(if inside(x, y) { '1' } else { '0' });
        }
        out.push('\n');
    }
    Ok(out)
}
