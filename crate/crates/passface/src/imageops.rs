//! `ImageTensor` and the pixel-level primitives the rest of the crate
//! builds on: PNG round-trips, flips, crops, bilinear resize, Gaussian
//! blur and luminance conversion.

use std::path::Path;

use ndarray::{Array3, Array4, ArrayView3};

use crate::error::{Error, Result};

/// H×W×C image, channel values in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ImageTensor {
    data: Array3<f32>,
}

impl ImageTensor {
    pub fn new(data: Array3<f32>) -> Self {
        Self { data }
    }

    pub fn zeros(height: usize, width: usize, channels: usize) -> Self {
        Self {
            data: Array3::zeros((height, width, channels)),
        }
    }

    pub fn filled(height: usize, width: usize, channels: usize, value: f32) -> Self {
        Self {
            data: Array3::from_elem((height, width, channels), value),
        }
    }

    pub fn height(&self) -> usize {
        self.data.dim().0
    }

    pub fn width(&self) -> usize {
        self.data.dim().1
    }

    pub fn channels(&self) -> usize {
        self.data.dim().2
    }

    pub fn data(&self) -> &Array3<f32> {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut Array3<f32> {
        &mut self.data
    }

    pub fn view(&self) -> ArrayView3<'_, f32> {
        self.data.view()
    }

    pub fn into_inner(self) -> Array3<f32> {
        self.data
    }

    pub fn get(&self, y: usize, x: usize, c: usize) -> f32 {
        self.data[(y, x, c)]
    }

    /// Reverse the width axis.
    pub fn hflip(&self) -> Self {
        let (h, w, c) = self.data.dim();
        let mut out = Array3::zeros((h, w, c));
        for y in 0..h {
            for x in 0..w {
                for ch in 0..c {
                    out[(y, x, ch)] = self.data[(y, w - 1 - x, ch)];
                }
            }
        }
        Self { data: out }
    }

    /// Pixel-box crop `[y0, y1) x [x0, x1)`, no interpolation.
    pub fn crop_pixels(&self, x0: usize, y0: usize, x1: usize, y1: usize) -> Result<Self> {
        let (h, w, c) = self.data.dim();
        if x0 >= x1 || y0 >= y1 || x1 > w || y1 > h {
            return Err(Error::argument(format!(
                "degenerate crop box x[{x0},{x1}) y[{y0},{y1}) on {w}x{h} image"
            )));
        }
        let mut out = Array3::zeros((y1 - y0, x1 - x0, c));
        for y in y0..y1 {
            for x in x0..x1 {
                for ch in 0..c {
                    out[(y - y0, x - x0, ch)] = self.data[(y, x, ch)];
                }
            }
        }
        Ok(Self { data: out })
    }

    /// Bilinear resize (half-pixel centers, clamped edges).
    pub fn resize(&self, new_h: usize, new_w: usize) -> Self {
        let (h, w, c) = self.data.dim();
        if (h, w) == (new_h, new_w) {
            return self.clone();
        }
        let mut out = Array3::zeros((new_h, new_w, c));
        let sy = h as f32 / new_h as f32;
        let sx = w as f32 / new_w as f32;
        for oy in 0..new_h {
            let fy = ((oy as f32 + 0.5) * sy - 0.5).clamp(0.0, (h - 1) as f32);
            let y0 = fy.floor() as usize;
            let y1 = (y0 + 1).min(h - 1);
            let wy = fy - y0 as f32;
            for ox in 0..new_w {
                let fx = ((ox as f32 + 0.5) * sx - 0.5).clamp(0.0, (w - 1) as f32);
                let x0 = fx.floor() as usize;
                let x1 = (x0 + 1).min(w - 1);
                let wx = fx - x0 as f32;
                for ch in 0..c {
                    let a = self.data[(y0, x0, ch)];
                    let b = self.data[(y0, x1, ch)];
                    let d = self.data[(y1, x0, ch)];
                    let e = self.data[(y1, x1, ch)];
                    let top = a + (b - a) * wx;
                    let bot = d + (e - d) * wx;
                    out[(oy, ox, ch)] = top + (bot - top) * wy;
                }
            }
        }
        Self { data: out }
    }

    /// Separable Gaussian blur with edge clamping; `sigma == 0` is a no-op.
    pub fn gaussian_blur(&self, sigma: f32) -> Self {
        if sigma <= 0.0 {
            return self.clone();
        }
        let radius = (3.0 * sigma).ceil() as i64;
        let mut kernel = Vec::with_capacity((2 * radius + 1) as usize);
        let inv = 1.0 / (2.0 * sigma * sigma);
        for k in -radius..=radius {
            kernel.push((-(k * k) as f32 * inv).exp());
        }
        let sum: f32 = kernel.iter().sum();
        for v in &mut kernel {
            *v /= sum;
        }

        let (h, w, c) = self.data.dim();
        let mut tmp = Array3::zeros((h, w, c));
        for y in 0..h {
            for x in 0..w {
                for ch in 0..c {
                    let mut acc = 0.0;
                    for (ki, kv) in kernel.iter().enumerate() {
                        let sx = (x as i64 + ki as i64 - radius).clamp(0, w as i64 - 1) as usize;
                        acc += kv * self.data[(y, sx, ch)];
                    }
                    tmp[(y, x, ch)] = acc;
                }
            }
        }
        let mut out = Array3::zeros((h, w, c));
        for y in 0..h {
            for x in 0..w {
                for ch in 0..c {
                    let mut acc = 0.0;
                    for (ki, kv) in kernel.iter().enumerate() {
                        let sy = (y as i64 + ki as i64 - radius).clamp(0, h as i64 - 1) as usize;
                        acc += kv * tmp[(sy, x, ch)];
                    }
                    out[(y, x, ch)] = acc;
                }
            }
        }
        Self { data: out }
    }

    /// Per-pixel luminance (0.299 R + 0.587 G + 0.114 B); single-channel
    /// images pass through.
    pub fn luminance(&self) -> Array3<f32> {
        let (h, w, c) = self.data.dim();
        let mut out = Array3::zeros((h, w, 1));
        for y in 0..h {
            for x in 0..w {
                let v = if c >= 3 {
                    0.299 * self.data[(y, x, 0)]
                        + 0.587 * self.data[(y, x, 1)]
                        + 0.114 * self.data[(y, x, 2)]
                } else {
                    self.data[(y, x, 0)]
                };
                out[(y, x, 0)] = v;
            }
        }
        out
    }

    pub fn clamp01(&mut self) {
        self.data.mapv_inplace(|v| v.clamp(0.0, 1.0));
    }

    /// NCHW view of a single image, for feeding networks.
    pub fn to_nchw(&self) -> Array4<f32> {
        let (h, w, c) = self.data.dim();
        let mut out = Array4::zeros((1, c, h, w));
        for y in 0..h {
            for x in 0..w {
                for ch in 0..c {
                    out[(0, ch, y, x)] = self.data[(y, x, ch)];
                }
            }
        }
        out
    }

    pub fn from_chw(chw: ndarray::ArrayView3<'_, f32>) -> Self {
        let (c, h, w) = chw.dim();
        let mut out = Array3::zeros((h, w, c));
        for ch in 0..c {
            for y in 0..h {
                for x in 0..w {
                    out[(y, x, ch)] = chw[(ch, y, x)];
                }
            }
        }
        Self { data: out }
    }

    /// 8-bit PNG encode. Values are clamped then rounded to the nearest
    /// of 256 levels, so save → load is the identity on saved files.
    pub fn save_png(&self, path: &Path) -> Result<()> {
        let (h, w, c) = self.data.dim();
        if c != 3 && c != 1 {
            return Err(Error::argument(format!("png save expects 1 or 3 channels, got {c}")));
        }
        let mut buf = Vec::with_capacity(h * w * 3);
        for y in 0..h {
            for x in 0..w {
                for ch in 0..3 {
                    let v = self.data[(y, x, ch.min(c - 1))];
                    buf.push((v.clamp(0.0, 1.0) * 255.0).round() as u8);
                }
            }
        }
        if let Some(parent) = path.parent() {
            std::fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
        }
        let img = image::RgbImage::from_raw(w as u32, h as u32, buf)
            .expect("buffer sized from dimensions");
        img.save(path)?;
        Ok(())
    }

    pub fn load_png(path: &Path) -> Result<Self> {
        let img = image::open(path)?.to_rgb8();
        let (w, h) = img.dimensions();
        let mut data = Array3::zeros((h as usize, w as usize, 3));
        for (x, y, px) in img.enumerate_pixels() {
            for ch in 0..3 {
                data[(y as usize, x as usize, ch)] = f32::from(px.0[ch]) / 255.0;
            }
        }
        Ok(Self { data })
    }
}

/// Exact antisymmetric pixel-center coordinates: index `i` of `n` maps to
/// `(2i + 1 - n) / (2n)`, so `coord[n-1-i] == -coord[i]` bit-exactly.
/// Renderers built on this grid produce bit-mirror-symmetric output for
/// symmetric scenes.
pub fn centered_coords(n: usize) -> Vec<f32> {
    (0..n)
        .map(|i| (2 * i as i64 + 1 - n as i64) as f32 / (2 * n as i64) as f32)
        .collect()
}

/// Tile images into a rows×cols grid with a 2-pixel white gutter.
pub fn image_grid(images: &[ImageTensor], cols: usize) -> Result<ImageTensor> {
    if images.is_empty() || cols == 0 {
        return Err(Error::argument("image_grid needs at least one image and one column"));
    }
    let (h, w, c) = images[0].data.dim();
    if images.iter().any(|im| im.data.dim() != (h, w, c)) {
        return Err(Error::argument("image_grid requires uniform image shapes"));
    }
    let rows = images.len().div_ceil(cols);
    let gut = 2usize;
    let gh = rows * h + (rows - 1) * gut;
    let gw = cols * w + (cols - 1) * gut;
    let mut out = ImageTensor::filled(gh, gw, c, 1.0);
    for (idx, im) in images.iter().enumerate() {
        let r = idx / cols;
        let col = idx % cols;
        let oy = r * (h + gut);
        let ox = col * (w + gut);
        for y in 0..h {
            for x in 0..w {
                for ch in 0..c {
                    out.data[(oy + y, ox + x, ch)] = im.data[(y, x, ch)];
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hflip_is_involutive() {
        let mut im = ImageTensor::zeros(2, 3, 1);
        im.data_mut()[(0, 0, 0)] = 0.25;
        im.data_mut()[(1, 2, 0)] = 0.75;
        assert_eq!(im.hflip().hflip(), im);
        assert_eq!(im.hflip().get(0, 2, 0), 0.25);
    }

    #[test]
    fn centered_coords_are_antisymmetric() {
        for n in [3usize, 4, 64, 128] {
            let c = centered_coords(n);
            for i in 0..n {
                assert_eq!(c[i], -c[n - 1 - i], "n={n} i={i}");
            }
        }
    }

    #[test]
    fn png_round_trip_preserves_quantized_values() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.png");
        let mut im = ImageTensor::zeros(4, 5, 3);
        for (i, v) in im.data_mut().iter_mut().enumerate() {
            *v = (i as f32 * 37.0 % 256.0) / 255.0;
        }
        im.save_png(&path).unwrap();
        let back = ImageTensor::load_png(&path).unwrap();
        for (a, b) in im.data().iter().zip(back.data().iter()) {
            assert!((a - b).abs() < 1.0 / 510.0, "{a} vs {b}");
        }
        // saved file re-saves to identical pixels
        let again = back.clone();
        again.save_png(&path).unwrap();
        assert_eq!(ImageTensor::load_png(&path).unwrap(), back);
    }

    #[test]
    fn crop_rejects_degenerate_boxes() {
        let im = ImageTensor::zeros(4, 4, 3);
        assert!(im.crop_pixels(2, 0, 2, 4).is_err());
        assert!(im.crop_pixels(0, 0, 5, 4).is_err());
        assert!(im.crop_pixels(0, 0, 4, 4).is_ok());
    }

    #[test]
    fn blur_preserves_constant_images() {
        let im = ImageTensor::filled(8, 8, 3, 0.6);
        let blurred = im.gaussian_blur(1.5);
        for v in blurred.data().iter() {
            assert!((v - 0.6).abs() < 1e-6);
        }
    }

    #[test]
    fn resize_identity_and_mean_preservation() {
        let mut im = ImageTensor::zeros(8, 8, 1);
        for (i, v) in im.data_mut().iter_mut().enumerate() {
            *v = (i % 7) as f32 / 7.0;
        }
        assert_eq!(im.resize(8, 8), im);
        let down = im.resize(4, 4);
        let m0: f32 = im.data().iter().sum::<f32>() / 64.0;
        let m1: f32 = down.data().iter().sum::<f32>() / 16.0;
        assert!((m0 - m1).abs() < 0.05);
    }
}
