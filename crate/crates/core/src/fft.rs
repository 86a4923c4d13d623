//! Unnormalized fast Fourier transforms for any length.
//!
//! Power-of-two lengths use an iterative radix-2 kernel; other lengths go
//! through Bluestein's chirp-z identity on a power-of-two buffer.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;
#[allow(unused_imports)] // inherent when a dependency links std
use num_traits::Float;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Direction {
    /// `X_k = Σ x_n exp(-2iπkn/P)`
    Forward,
    /// `X_k = Σ x_n exp(+2iπkn/P)`
    Backward,
}

impl Direction {
    fn sign(self) -> f64 {
        match self {
            Direction::Forward => -1.0,
            Direction::Backward => 1.0,
        }
    }
}

pub(crate) fn transform(data: &mut [Complex64], dir: Direction) {
    let len = data.len();
    if len <= 1 {
        return;
    }
    if len.is_power_of_two() {
        radix2(data, dir);
    } else {
        bluestein(data, dir);
    }
}

/// `exp(sign·2iπ k/len)` with the argument reduced exactly in integers.
fn twiddle(k: usize, len: usize, sign: f64) -> Complex64 {
    let k = k % len;
    let angle = sign * 2.0 * PI * (k as f64) / (len as f64);
    Complex64::new(angle.cos(), angle.sin())
}

fn radix2(data: &mut [Complex64], dir: Direction) {
    let len = data.len();
    let bits = len.trailing_zeros();
    for i in 0..len {
        let j = i.reverse_bits() >> (usize::BITS - bits);
        if j > i {
            data.swap(i, j);
        }
    }
    let sign = dir.sign();
    // Twiddles for the largest stage; smaller stages stride through it.
    let half = len / 2;
    let table: Vec<Complex64> = (0..half).map(|k| twiddle(k, len, sign)).collect();
    let mut size = 2;
    while size <= len {
        let step = len / size;
        let half_size = size / 2;
        for start in (0..len).step_by(size) {
            for k in 0..half_size {
                let w = table[k * step];
                let u = data[start + k];
                let v = data[start + k + half_size] * w;
                data[start + k] = u + v;
                data[start + k + half_size] = u - v;
            }
        }
        size *= 2;
    }
}

fn bluestein(data: &mut [Complex64], dir: Direction) {
    let len = data.len();
    let sign = dir.sign();
    let m = (2 * len - 1).next_power_of_two();
    // chirp_k = exp(sign·iπ k²/len); k² is reduced mod 2·len to keep the angle small.
    let chirp: Vec<Complex64> = (0..len)
        .map(|k| {
            let k2 = ((k as u128 * k as u128) % (2 * len as u128)) as f64;
            let angle = sign * PI * k2 / len as f64;
            Complex64::new(angle.cos(), angle.sin())
        })
        .collect();

    let mut a = vec![Complex64::new(0.0, 0.0); m];
    for k in 0..len {
        a[k] = data[k] * chirp[k];
    }
    let mut b = vec![Complex64::new(0.0, 0.0); m];
    b[0] = chirp[0].conj();
    for k in 1..len {
        b[k] = chirp[k].conj();
        b[m - k] = chirp[k].conj();
    }
    radix2(&mut a, Direction::Forward);
    radix2(&mut b, Direction::Forward);
    for (x, y) in a.iter_mut().zip(&b) {
        *x *= *y;
    }
    radix2(&mut a, Direction::Backward);
    let scale = 1.0 / m as f64;
    for k in 0..len {
        data[k] = a[k] * scale * chirp[k];
    }
}
