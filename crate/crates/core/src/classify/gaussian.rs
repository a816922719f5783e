use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    Singleton,
    Geminate,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Gaussian1D {
    pub mean: f64,
    pub std: f64,
    pub n: usize,
}

impl Gaussian1D {
    /// A model given directly by its parameters (`n` is 0).
    pub fn new(mean: f64, std: f64) -> Result<Self> {
        if !mean.is_finite() || !(std > 0.0) || !std.is_finite() {
            return Err(Error::DegenerateFit("standard deviation must be positive and finite"));
        }
        Ok(Gaussian1D { mean, std, n: 0 })
    }

    /// Twice the negative log density, up to a shared constant.
    fn cost(&self, x: f64) -> f64 {
        let z = (x - self.mean) / self.std;
        z * z + 2.0 * self.std.ln()
    }

    pub fn negated(&self) -> Self {
        Gaussian1D { mean: -self.mean, ..*self }
    }
}

pub fn fit_gaussian_1d(values: &[f64]) -> Result<Gaussian1D> {
    if values.len() < 2 {
        return Err(Error::InsufficientData { need: 2, got: values.len() });
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::Precondition("non-finite value in sample".into()));
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
    let std = (ss / (n - 1.0)).sqrt();
    if !(std > 0.0) {
        return Err(Error::DegenerateFit("zero variance"));
    }
    Ok(Gaussian1D { mean, std, n: values.len() })
}

/// Crossing of the two densities that lies between the means.
pub fn pep_threshold(g_s: &Gaussian1D, g_g: &Gaussian1D) -> Result<f64> {
    let (ms, ss, mg, sg) = (g_s.mean, g_s.std, g_g.mean, g_g.std);
    if !(ms < mg) {
        return Err(Error::Precondition(format!("singleton mean {ms} must be below geminate mean {mg}")));
    }
    if ss == sg {
        return Ok(0.5 * (ms + mg));
    }
    let (ws, wg) = (1.0 / (ss * ss), 1.0 / (sg * sg));
    let a = ws - wg;
    let b = -2.0 * (ms * ws - mg * wg);
    let c = ms * ms * ws - mg * mg * wg + 2.0 * (ss / sg).ln();
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return Err(Error::NoPepRoot);
    }
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    let mut roots = Vec::with_capacity(2);
    if a != 0.0 {
        roots.push(q / a);
    }
    if q != 0.0 {
        roots.push(c / q);
    }
    roots.into_iter().find(|&r| r > ms && r < mg).ok_or(Error::NoPepRoot)
}

/// Equal-prior maximum-likelihood decision; exact ties go to geminate.
pub fn classify_mlc_1d(g_s: &Gaussian1D, g_g: &Gaussian1D, x: f64) -> Label {
    if g_g.cost(x) <= g_s.cost(x) {
        Label::Geminate
    } else {
        Label::Singleton
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Gaussian2D {
    pub mean: [f64; 2],
    pub covariance: [[f64; 2]; 2],
    pub n: usize,
}

impl Gaussian2D {
    pub fn new(mean: [f64; 2], covariance: [[f64; 2]; 2]) -> Result<Self> {
        let g = Gaussian2D { mean, covariance, n: 0 };
        let [[a, b], [c, d]] = covariance;
        if b != c || !(a > 0.0) || !(g.det() > 0.0) || !(a.is_finite() && d.is_finite() && b.is_finite()) {
            return Err(Error::DegenerateFit("covariance must be symmetric positive definite"));
        }
        Ok(g)
    }

    pub fn det(&self) -> f64 {
        let [[a, b], [c, d]] = self.covariance;
        a * d - b * c
    }

    fn cost(&self, p: [f64; 2]) -> f64 {
        let [[a, b], [_, d]] = self.covariance;
        let det = self.det();
        let (x, y) = (p[0] - self.mean[0], p[1] - self.mean[1]);
        (d * x * x - 2.0 * b * x * y + a * y * y) / det + det.ln()
    }
}

pub fn fit_gaussian_2d(pairs: &[[f64; 2]]) -> Result<Gaussian2D> {
    if pairs.len() < 3 {
        return Err(Error::InsufficientData { need: 3, got: pairs.len() });
    }
    if pairs.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::Precondition("non-finite value in sample".into()));
    }
    let n = pairs.len() as f64;
    let mx = pairs.iter().map(|p| p[0]).sum::<f64>() / n;
    let my = pairs.iter().map(|p| p[1]).sum::<f64>() / n;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for p in pairs {
        let (dx, dy) = (p[0] - mx, p[1] - my);
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    let k = 1.0 / (n - 1.0);
    let cov = [[sxx * k, sxy * k], [sxy * k, syy * k]];
    let det = cov[0][0] * cov[1][1] - cov[0][1] * cov[0][1];
    if !(det > 1e-12 * cov[0][0] * cov[1][1]) {
        return Err(Error::DegenerateFit("singular covariance"));
    }
    Ok(Gaussian2D { mean: [mx, my], covariance: cov, n: pairs.len() })
}

/// Quadratic discriminant with per-class covariance; ties go to geminate.
pub fn classify_mlc_2d(g_s: &Gaussian2D, g_g: &Gaussian2D, point: [f64; 2]) -> Label {
    if g_g.cost(point) <= g_s.cost(point) {
        Label::Geminate
    } else {
        Label::Singleton
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fit_small() {
        let g = fit_gaussian_1d(&[1.0, 2.0, 3.0]).unwrap();
        assert_eq!((g.mean, g.std, g.n), (2.0, 1.0, 3));
        assert!(matches!(fit_gaussian_1d(&[5.0, 5.0, 5.0]), Err(Error::DegenerateFit(_))));
        assert!(matches!(fit_gaussian_1d(&[5.0]), Err(Error::InsufficientData { .. })));
    }

    #[test]
    fn pep_values() {
        let g = |m, s| Gaussian1D::new(m, s).unwrap();
        assert_eq!(pep_threshold(&g(0.0, 1.0), &g(2.0, 1.0)).unwrap(), 1.0);
        let t = pep_threshold(&g(0.80, 0.33), &g(1.97, 0.70)).unwrap();
        assert!((t - 1.3104).abs() < 1e-3, "{t}");
        let t = pep_threshold(&g(1.30, 0.64), &g(2.42, 0.77)).unwrap();
        assert!((t - 1.8887).abs() < 1e-3, "{t}");
        assert!(pep_threshold(&g(2.0, 1.0), &g(0.0, 1.0)).is_err());
    }

    #[test]
    fn pep_equal_density() {
        let (s, g) = (Gaussian1D::new(81.79, 25.02).unwrap(), Gaussian1D::new(133.29, 33.03).unwrap());
        let t = pep_threshold(&s, &g).unwrap();
        assert!((s.cost(t) - g.cost(t)).abs() < 1e-9);
    }

    #[test]
    fn mlc_1d_sides() {
        let s = Gaussian1D::new(0.0, 1.0).unwrap();
        let g = Gaussian1D::new(2.0, 1.0).unwrap();
        assert_eq!(classify_mlc_1d(&s, &g, 0.9), Label::Singleton);
        assert_eq!(classify_mlc_1d(&s, &g, 1.1), Label::Geminate);
        assert_eq!(classify_mlc_1d(&s, &g, 1.0), Label::Geminate);
    }

    #[test]
    fn mlc_2d_shared_covariance() {
        let cov = [[1.0, 0.0], [0.0, 1.0]];
        let s = Gaussian2D::new([0.0, 0.0], cov).unwrap();
        let g = Gaussian2D::new([2.0, 2.0], cov).unwrap();
        assert_eq!(classify_mlc_2d(&s, &g, [0.5, 0.5]), Label::Singleton);
        assert_eq!(classify_mlc_2d(&s, &g, [1.0, 1.0]), Label::Geminate);
    }

    #[test]
    fn fit_2d_rejects_collinear() {
        let pts = [[1.0, 2.0], [2.0, 4.0], [3.0, 6.0]];
        assert!(matches!(fit_gaussian_2d(&pts), Err(Error::DegenerateFit(_))));
        let g = fit_gaussian_2d(&[[0.0, 0.0], [2.0, 0.0], [0.0, 2.0], [2.0, 2.0]]).unwrap();
        assert_eq!(g.mean, [1.0, 1.0]);
        assert_eq!(g.covariance, [[4.0 / 3.0, 0.0], [0.0, 4.0 / 3.0]]);
    }
}
