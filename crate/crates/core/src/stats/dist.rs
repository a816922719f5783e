use statrs::function::beta::beta_reg;

use crate::error::{Error, Result};

/// Upper tail `P(F > f)` of the F distribution with `(df1, df2)` degrees of freedom.
pub fn f_survival(f: f64, df1: f64, df2: f64) -> Result<f64> {
    if !(df1 >= 1.0 && df2 >= 1.0) || !df1.is_finite() || !df2.is_finite() {
        return Err(Error::InvalidDf { df1, df2 });
    }
    if f.is_nan() || f < 0.0 {
        return Err(Error::Precondition(format!("F statistic {f} must be >= 0")));
    }
    if f == 0.0 {
        return Ok(1.0);
    }
    if f.is_infinite() {
        return Ok(0.0);
    }
    let denom = df2 + df1 * f;
    let x = df2 / denom;
    let p =
        if x < 0.5 { beta_reg(df2 / 2.0, df1 / 2.0, x) } else { 1.0 - beta_reg(df1 / 2.0, df2 / 2.0, df1 * f / denom) };
    Ok(p.clamp(0.0, 1.0))
}

/// Two-sided p-value of a Student-t statistic.
pub fn t_two_sided(t: f64, df: f64) -> Result<f64> {
    if !(df >= 1.0) || !df.is_finite() {
        return Err(Error::InvalidDf { df1: df, df2: f64::NAN });
    }
    if t.is_nan() {
        return Err(Error::Precondition("t statistic is NaN".into()));
    }
    if t.is_infinite() {
        return Ok(0.0);
    }
    let t2 = t * t;
    let x = df / (df + t2);
    let p = if x < 0.5 { beta_reg(df / 2.0, 0.5, x) } else { 1.0 - beta_reg(0.5, df / 2.0, t2 / (df + t2)) };
    Ok(p.clamp(0.0, 1.0))
}

/// Standard normal distribution function.
pub fn normal_cdf(z: f64) -> f64 {
    0.5 * libm::erfc(-z / std::f64::consts::SQRT_2)
}
