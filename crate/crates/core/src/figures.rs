//! SVG illustrations computed from the library's own data: the two covering
//! case families with their 5/2-scaled images, the corresponding parameter
//! regions with their threshold curves, the two extremal triangles, and the
//! dual configuration found by the estimator.

use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::certifier::{extremal_triangle, second_extremal_triangle, Case1Params, Case2Params};
use crate::estimator::{estimate_distance, EstimatorError, SearchConfig};
use crate::geometry::{
    apply_affine, gauge_factor, point, unit_square, AffineMap2, ConvexPolygon, Point2, Triangle,
};
use crate::rational::{rat, rat_int, to_f64};

/// Error from figure generation.
#[derive(Debug, Error)]
pub enum FiguresError {
    #[error("cannot write figure: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Estimator(#[from] EstimatorError),
}

const CANVAS: f64 = 720.0;
const WORLD: f64 = 3.0;

/// Accumulates SVG elements over the fixed [-3, 3]^2 viewport.
struct Canvas {
    body: String,
}

fn px(v: f64) -> String {
    format!("{v:.4}")
}

impl Canvas {
    fn new(title: &str) -> Self {
        let mut body = String::new();
        body.push_str(&format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{c}\" height=\"{c}\" \
             viewBox=\"0 0 {c} {c}\">\n<!-- generated by centroid-bm v{} -->\n<title>{title}</title>\n\
             <rect width=\"{c}\" height=\"{c}\" fill=\"white\"/>\n",
            env!("CARGO_PKG_VERSION"),
            c = CANVAS,
        ));
        let mut canvas = Self { body };
        canvas.axes();
        canvas
    }

    fn map(&self, p: (f64, f64)) -> (f64, f64) {
        (
            (p.0 + WORLD) / (2.0 * WORLD) * CANVAS,
            (WORLD - p.1) / (2.0 * WORLD) * CANVAS,
        )
    }

    fn axes(&mut self) {
        let style = "stroke=\"#cccccc\" stroke-width=\"1\"";
        self.raw_line(self.map((-WORLD, 0.0)), self.map((WORLD, 0.0)), style);
        self.raw_line(self.map((0.0, -WORLD)), self.map((0.0, WORLD)), style);
    }

    fn raw_line(&mut self, a: (f64, f64), b: (f64, f64), style: &str) {
        self.body.push_str(&format!(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" {style}/>\n",
            px(a.0),
            px(a.1),
            px(b.0),
            px(b.1),
        ));
    }

    fn path_points(&self, pts: &[(f64, f64)]) -> String {
        pts.iter()
            .map(|&p| {
                let (x, y) = self.map(p);
                format!("{},{}", px(x), px(y))
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    fn polygon(&mut self, pts: &[(f64, f64)], style: &str) {
        self.body.push_str(&format!(
            "<polygon points=\"{}\" {style}/>\n",
            self.path_points(pts)
        ));
    }

    fn polyline(&mut self, pts: &[(f64, f64)], style: &str) {
        self.body.push_str(&format!(
            "<polyline points=\"{}\" fill=\"none\" {style}/>\n",
            self.path_points(pts)
        ));
    }

    fn mark(&mut self, p: (f64, f64), label: &str) {
        let (x, y) = self.map(p);
        self.body.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"#b3261e\"/>\n",
            px(x),
            px(y)
        ));
        self.body.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"16\">{label}</text>\n",
            px(x + 8.0),
            px(y - 8.0)
        ));
    }

    fn finish(mut self) -> String {
        self.body.push_str("</svg>\n");
        self.body
    }
}

fn poly_f64(p: &ConvexPolygon) -> Vec<(f64, f64)> {
    p.vertices()
        .iter()
        .map(|v| (to_f64(&v.x), to_f64(&v.y)))
        .collect()
}

const BODY_STYLE: &str = "fill=\"none\" stroke=\"#1a3d7c\" stroke-width=\"2\"";
const TRIANGLE_STYLE: &str = "fill=\"rgba(26,127,55,0.12)\" stroke=\"#1a7f37\" stroke-width=\"2\"";
const SCALED_STYLE: &str =
    "fill=\"none\" stroke=\"#b3261e\" stroke-width=\"2\" stroke-dasharray=\"9,5\"";
const REGION_STYLE: &str =
    "fill=\"rgba(26,61,124,0.12)\" stroke=\"#1a3d7c\" stroke-width=\"1.5\"";
const SOLID_CURVE: &str = "stroke=\"#1a7f37\" stroke-width=\"2\"";
const DASHED_CURVE: &str = "stroke=\"#b3261e\" stroke-width=\"2\" stroke-dasharray=\"9,5\"";
const DOTTED_CURVE: &str = "stroke=\"#1a3d7c\" stroke-width=\"2\" stroke-dasharray=\"2,5\"";

fn triangle_with_scaled_figure(title: &str, tri: &Triangle) -> String {
    let mut canvas = Canvas::new(title);
    let square = unit_square();
    canvas.polygon(&poly_f64(&square), BODY_STYLE);
    let tri_poly = tri.to_polygon();
    canvas.polygon(&poly_f64(&tri_poly), TRIANGLE_STYLE);
    let scaled = tri_poly
        .homothety(&point(0, 0), &rat(5, 2))
        .expect("positive ratio");
    canvas.polygon(&poly_f64(&scaled), SCALED_STYLE);
    canvas.finish()
}

/// Square, a sample triangle of the first family, and its 5/2-scaled image.
pub fn render_fig1() -> String {
    let params = Case1Params::new(rat(3, 4), rat(1, 8)).expect("inside the parameter region");
    let tri = params.triangle().expect("nondegenerate sample");
    triangle_with_scaled_figure("first family sample", &tri)
}

/// Parameter region of the first family with its two threshold lines and
/// their meeting point (1/2, 1/2).
pub fn render_fig2() -> String {
    let mut canvas = Canvas::new("first family parameter region");
    let region = [(0.0, 0.0), (1.0, -1.0), (1.0, 0.0), (0.0, 1.0)];
    canvas.polygon(&region, REGION_STYLE);
    // alpha + 3 beta = 2, from the bottom-side crossing of the a-c line.
    let ac: Vec<(f64, f64)> = [-0.5f64, 1.5]
        .iter()
        .map(|&a| (a, (2.0 - a) / 3.0))
        .collect();
    canvas.polyline(&ac, SOLID_CURVE);
    // 3 alpha + beta = 2, from the left-side crossing of the b-c line.
    let bc: Vec<(f64, f64)> = [0.0f64, 1.2]
        .iter()
        .map(|&a| (a, 2.0 - 3.0 * a))
        .collect();
    canvas.polyline(&bc, DASHED_CURVE);
    canvas.mark((0.5, 0.5), "(1/2, 1/2)");
    canvas.finish()
}

/// Square, a sample triangle of the second family, and its 5/2-scaled image.
pub fn render_fig3() -> String {
    let params = Case2Params::new(rat(3, 4), rat(-1, 2)).expect("inside the parameter region");
    let tri = params.triangle().expect("nondegenerate sample");
    triangle_with_scaled_figure("second family sample", &tri)
}

/// Parameter box of the second family with the three threshold curves
/// (solid a-c, dashed b-c, dotted a-b) meeting at (1/5, -1/5).
pub fn render_fig4() -> String {
    let mut canvas = Canvas::new("second family parameter region");
    let region = [(0.0, -1.0), (1.0, -1.0), (1.0, 0.0), (0.0, 0.0)];
    canvas.polygon(&region, REGION_STYLE);
    let sample_curve = |f: &dyn Fn(f64) -> f64| -> Vec<(f64, f64)> {
        let mut pts = Vec::new();
        for i in 0..=400 {
            let a = i as f64 / 400.0;
            let g = f(a);
            if (-1.0..=0.0).contains(&g) {
                pts.push((a, g));
            }
        }
        pts
    };
    let ac = sample_curve(&|a| (-1.0 + 2.0 * a) / (2.0 + 5.0 * a));
    canvas.polyline(&ac, SOLID_CURVE);
    let bc = sample_curve(&|a| (1.0 - 2.0 * a) / (-4.0 + 5.0 * a));
    canvas.polyline(&bc, DASHED_CURVE);
    let ab = sample_curve(&|a| {
        if (5.0 * a - 2.0).abs() < 1e-9 {
            f64::NAN
        } else {
            (1.0 - 4.0 * a) / (-2.0 + 5.0 * a)
        }
    });
    canvas.polyline(&ab, DOTTED_CURVE);
    canvas.mark((0.2, -0.2), "(1/5, -1/5)");
    canvas.finish()
}

/// The two extremal triangles in the square with their 5/2-scaled images.
pub fn render_fig5() -> String {
    let mut canvas = Canvas::new("extremal triangles");
    let square = unit_square();
    canvas.polygon(&poly_f64(&square), BODY_STYLE);
    let o = point(0, 0);
    for tri in [extremal_triangle(), second_extremal_triangle()] {
        let p = tri.to_polygon();
        canvas.polygon(&poly_f64(&p), TRIANGLE_STYLE);
        let scaled = p.homothety(&o, &rat(5, 2)).expect("positive ratio");
        canvas.polygon(&poly_f64(&scaled), SCALED_STYLE);
    }
    canvas.finish()
}

/// Dual configuration: the triangle as target, with the estimator's best
/// image of the square drawn at its inscribed scale (dashed) and at the
/// covering scale (dotted).
pub fn render_fig6() -> Result<String, FiguresError> {
    let tri = Triangle::new(
        point(1, 0),
        Point2::new(rat(-1, 2), rat_int(1)),
        Point2::new(rat(-1, 2), rat_int(-1)),
    )
    .expect("nondegenerate")
    .to_polygon();
    let square = unit_square();
    let est = estimate_distance(&tri, &square, &SearchConfig::default())?;
    let lin = AffineMap2::linear(
        est.best_map.m11.clone(),
        est.best_map.m12.clone(),
        est.best_map.m21.clone(),
        est.best_map.m22.clone(),
    );
    let o = point(0, 0);
    let tri0 = tri.translated_to_origin(&tri.centroid());
    let image = apply_affine(&lin, &square.translated_to_origin(&square.centroid()))
        .map_err(EstimatorError::from)?;
    // Inscribe the image exactly, then cover with the certified factor.
    let fit = gauge_factor(&image, &tri0, &o).expect("origin is interior");
    let inscribed = image.homothety(&o, &(rat_int(1) / &fit)).expect("positive");
    let covering_ratio = &est.exact_gauges.target_in_image * &est.exact_gauges.image_in_target;
    let covering = inscribed
        .homothety(&o, &covering_ratio)
        .expect("positive ratio");
    let mut canvas = Canvas::new("dual configuration");
    canvas.polygon(&poly_f64(&tri0), TRIANGLE_STYLE);
    canvas.polygon(&poly_f64(&inscribed), DASHED_CURVE_POLY);
    canvas.polygon(&poly_f64(&covering), DOTTED_CURVE_POLY);
    Ok(canvas.finish())
}

const DASHED_CURVE_POLY: &str =
    "fill=\"none\" stroke=\"#b3261e\" stroke-width=\"2\" stroke-dasharray=\"9,5\"";
const DOTTED_CURVE_POLY: &str =
    "fill=\"none\" stroke=\"#1a3d7c\" stroke-width=\"2\" stroke-dasharray=\"2,5\"";

/// Writes all six figures into the directory and returns their paths.
pub fn emit_figures(outdir: &Path) -> Result<Vec<PathBuf>, FiguresError> {
    fs::create_dir_all(outdir)?;
    let files: [(&str, String); 6] = [
        ("fig1.svg", render_fig1()),
        ("fig2.svg", render_fig2()),
        ("fig3.svg", render_fig3()),
        ("fig4.svg", render_fig4()),
        ("fig5.svg", render_fig5()),
        ("fig6.svg", render_fig6()?),
    ];
    let mut out = Vec::with_capacity(files.len());
    for (name, content) in files {
        let path = outdir.join(name);
        fs::write(&path, content)?;
        out.push(path);
    }
    Ok(out)
}
