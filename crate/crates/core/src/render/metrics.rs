use crate::error::{Error, Result};
use crate::render::raster::{RasterImage, BLACK};

/// Fraction of pixels exactly equal to black.
pub fn clarity(img: &RasterImage) -> f64 {
    let black = img.as_bytes().chunks_exact(3).filter(|p| *p == BLACK).count();
    black as f64 / img.pixel_count() as f64
}

/// `clarity(extra) / clarity(clique)`; `None` when the clique image has no
/// black pixel left.
pub fn clarity_gain(extra_img: &RasterImage, clique_img: &RasterImage) -> Result<Option<f64>> {
    if (extra_img.width(), extra_img.height()) != (clique_img.width(), clique_img.height()) {
        return Err(Error::InvalidImage(format!(
            "cannot compare a {}x{} image with a {}x{} one",
            extra_img.width(),
            extra_img.height(),
            clique_img.width(),
            clique_img.height()
        )));
    }
    Ok(ratio(clarity(extra_img), clarity(clique_img)))
}

pub(crate) fn ratio(num: f64, den: f64) -> Option<f64> {
    (den > 0.0).then(|| num / den)
}

/// Binary entropy in bits, with `H(0) = H(1) = 0`.
pub fn entropy(c: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&c) {
        return Err(Error::OutOfUnitInterval(c));
    }
    let term = |p: f64| if p > 0.0 { p * p.log2() } else { 0.0 };
    Ok(-(term(c) + term(1.0 - c)))
}
