//! Shared helpers for the integration test suites.
#![allow(dead_code)]

use centroid_bm::{Point2, Rational, Triangle};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn random_rational(rng: &mut ChaCha8Rng, max_abs_num: i64, max_den: i64) -> Rational {
    let den = rng.gen_range(1..=max_den);
    let num = rng.gen_range(-max_abs_num..=max_abs_num);
    Rational::new(num.into(), den.into())
}

pub fn random_point(rng: &mut ChaCha8Rng) -> Point2 {
    Point2::new(
        random_rational(rng, 40, 8),
        random_rational(rng, 40, 8),
    )
}

pub fn random_triangle(rng: &mut ChaCha8Rng) -> Triangle {
    loop {
        let (a, b, c) = (random_point(rng), random_point(rng), random_point(rng));
        if let Ok(t) = Triangle::new(a, b, c) {
            return t;
        }
    }
}

/// Vertex multiset as a sorted list, for order-insensitive comparison.
pub fn vertex_key(t: &Triangle) -> Vec<Point2> {
    let mut v: Vec<Point2> = t.vertices().iter().map(|&p| p.clone()).collect();
    v.sort();
    v
}
