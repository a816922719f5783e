use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::dist::f_survival;
use crate::error::{Error, Result};

/// One tested effect.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnovaCell {
    pub effect: String,
    pub ss: f64,
    pub df1: usize,
    pub df2: usize,
    pub ms: f64,
    pub f: f64,
    pub p: f64,
    pub significant: bool,
}

/// An error stratum used as a denominator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorTerm {
    pub name: String,
    pub ss: f64,
    pub df: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnovaTable {
    pub cells: Vec<AnovaCell>,
    pub errors: Vec<ErrorTerm>,
    pub ss_total: f64,
}

impl AnovaTable {
    pub fn cell(&self, effect: &str) -> Option<&AnovaCell> {
        self.cells.iter().find(|c| c.effect == effect)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Observation {
    pub levels: BTreeMap<String, String>,
    pub value: f64,
}

/// A repeated-measures observation: `subject` sits in one `between` level and is
/// measured at every combination of the within factors.
#[derive(Debug, Clone, PartialEq)]
pub struct SubjectObservation {
    pub subject: String,
    pub between: String,
    pub within: BTreeMap<String, String>,
    pub value: f64,
}

/// Dense table over factors with `dims` levels each, first factor slowest.
struct Layout {
    dims: Vec<usize>,
}

impl Layout {
    fn k(&self) -> usize {
        self.dims.len()
    }

    fn cells(&self) -> usize {
        self.dims.iter().product()
    }

    fn cells_of(&self, mask: usize) -> usize {
        (0..self.k()).filter(|i| mask >> i & 1 == 1).map(|i| self.dims[i]).product()
    }

    fn decode(&self, mut idx: usize) -> Vec<usize> {
        let mut code = vec![0; self.k()];
        for i in (0..self.k()).rev() {
            code[i] = idx % self.dims[i];
            idx /= self.dims[i];
        }
        code
    }

    fn project(&self, code: &[usize], mask: usize) -> usize {
        (0..self.k()).filter(|i| mask >> i & 1 == 1).fold(0, |acc, i| acc * self.dims[i] + code[i])
    }

    fn decode_mask(&self, mut idx: usize, mask: usize) -> Vec<usize> {
        let mut code = vec![0; self.k()];
        for i in (0..self.k()).rev().filter(|i| mask >> i & 1 == 1) {
            code[i] = idx % self.dims[i];
            idx /= self.dims[i];
        }
        code
    }

    /// Marginal means of a complete table for every factor subset.
    fn marginals(&self, table: &[f64]) -> Vec<Vec<f64>> {
        let total = self.cells();
        (0..1usize << self.k())
            .map(|mask| {
                let m = self.cells_of(mask);
                let mut acc = vec![0.0; m];
                for (idx, v) in table.iter().enumerate() {
                    acc[self.project(&self.decode(idx), mask)] += v;
                }
                let per = (total / m) as f64;
                acc.iter().map(|s| s / per).collect()
            })
            .collect()
    }

    /// Effect contrasts by inclusion-exclusion over subsets, indexed `[mask][cell of mask]`.
    /// The entry for mask 0 is the grand mean.
    fn contrasts(&self, table: &[f64]) -> Vec<Vec<f64>> {
        let marg = self.marginals(table);
        (0..1usize << self.k())
            .map(|mask| {
                (0..self.cells_of(mask))
                    .map(|idx| {
                        if mask == 0 {
                            return marg[0][0];
                        }
                        let code = self.decode_mask(idx, mask);
                        let mut sum = 0.0;
                        let mut sub = mask;
                        loop {
                            let sign = if (mask ^ sub).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
                            sum += sign * marg[sub][self.project(&code, sub)];
                            if sub == 0 {
                                break;
                            }
                            sub = (sub - 1) & mask;
                        }
                        sum
                    })
                    .collect()
            })
            .collect()
    }

    fn df(&self, mask: usize) -> usize {
        (0..self.k()).filter(|i| mask >> i & 1 == 1).map(|i| self.dims[i] - 1).product()
    }
}

/// Non-empty subsets ordered by size, then by factor order.
fn effect_masks(k: usize) -> Vec<usize> {
    let mut masks: Vec<usize> = (1..1usize << k).collect();
    masks.sort_by_key(|&m| {
        let bits: Vec<usize> = (0..k).filter(|i| m >> i & 1 == 1).collect();
        (bits.len(), bits)
    });
    masks
}

fn effect_name(names: &[&str], mask: usize) -> String {
    names.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, n)| *n).collect::<Vec<_>>().join("*")
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::Precondition(format!("alpha {alpha} must lie in (0, 1)")))
    }
}

/// F test of `ss` against an error term. A vanishing error mean square gives
/// F = 0 when the effect also vanishes and F = inf otherwise; "vanishing" is
/// relative to the total sum of squares.
fn f_test(effect: String, ss: f64, df1: usize, err: &ErrorTerm, ss_total: f64, alpha: f64) -> Result<AnovaCell> {
    let ss = ss.max(0.0);
    let tiny = 1e-12 * ss_total;
    let ms = ss / df1 as f64;
    let (f, p) = if err.ss <= tiny {
        if ss <= tiny {
            (0.0, 1.0)
        } else {
            (f64::INFINITY, 0.0)
        }
    } else {
        let f = ms / (err.ss / err.df as f64);
        (f, f_survival(f, df1 as f64, err.df as f64)?)
    };
    Ok(AnovaCell { effect, ss, df1, df2: err.df, ms, f, p, significant: p < alpha })
}

fn levels_of<'a>(values: impl Iterator<Item = &'a str>) -> Vec<String> {
    let mut v: Vec<String> = values.map(str::to_string).collect();
    v.sort();
    v.dedup();
    v
}

fn lookup<'a>(map: &'a BTreeMap<String, String>, factor: &str) -> Result<&'a str> {
    map.get(factor).map(String::as_str).ok_or_else(|| Error::Malformed(format!("observation lacks factor `{factor}`")))
}

fn cell_label(names: &[&str], levels: &[Vec<String>], code: &[usize]) -> String {
    names.iter().zip(code).enumerate().map(|(i, (n, &c))| format!("{n}={}", levels[i][c])).collect::<Vec<_>>().join(",")
}

/// Full-factorial univariate ANOVA on a balanced design.
pub fn anova_factorial(obs: &[Observation], factors: &[&str], alpha: f64) -> Result<AnovaTable> {
    check_alpha(alpha)?;
    if factors.is_empty() {
        return Err(Error::Precondition("at least one factor required".into()));
    }
    if obs.iter().any(|o| !o.value.is_finite()) {
        return Err(Error::Precondition("non-finite observation".into()));
    }
    let mut levels = Vec::new();
    for f in factors {
        let vals = obs.iter().map(|o| lookup(&o.levels, f)).collect::<Result<Vec<_>>>()?;
        levels.push(levels_of(vals.into_iter()));
    }
    let layout = Layout { dims: levels.iter().map(Vec::len).collect() };
    let mut sums = vec![0.0; layout.cells()];
    let mut counts = vec![0usize; layout.cells()];
    let mut cell_of = Vec::with_capacity(obs.len());
    for o in obs {
        let code: Vec<usize> = factors
            .iter()
            .zip(&levels)
            .map(|(f, lv)| {
                let v = &o.levels[*f];
                lv.iter().position(|l| l == v).unwrap_or(0)
            })
            .collect();
        let idx = layout.project(&code, (1 << factors.len()) - 1);
        sums[idx] += o.value;
        counts[idx] += 1;
        cell_of.push(idx);
    }
    if let Some(empty) = counts.iter().position(|&c| c == 0) {
        return Err(Error::EmptyCell(cell_label(factors, &levels, &layout.decode(empty))));
    }
    let n = counts[0];
    if let Some(odd) = counts.iter().position(|&c| c != n) {
        return Err(Error::Unbalanced(format!(
            "cell {} has {} observations, expected {n}",
            cell_label(factors, &levels, &layout.decode(odd)),
            counts[odd]
        )));
    }
    let means: Vec<f64> = sums.iter().map(|s| s / n as f64).collect();
    let total_n = obs.len();
    let resid_df = total_n - layout.cells();
    if resid_df == 0 {
        return Err(Error::InsufficientData { need: layout.cells() + 1, got: total_n });
    }
    let tau = layout.contrasts(&means);
    let grand = tau[0][0];
    let ss_total: f64 = obs.iter().map(|o| (o.value - grand).powi(2)).sum();
    let resid = ErrorTerm {
        name: "Residual".into(),
        ss: obs.iter().zip(&cell_of).map(|(o, &c)| (o.value - means[c]).powi(2)).sum(),
        df: resid_df,
    };
    let mut cells = Vec::new();
    for mask in effect_masks(factors.len()) {
        let per = (total_n / layout.cells_of(mask)) as f64;
        let ss = per * tau[mask].iter().map(|t| t * t).sum::<f64>();
        cells.push(f_test(effect_name(factors, mask), ss, layout.df(mask), &resid, ss_total, alpha)?);
    }
    Ok(AnovaTable { cells, errors: vec![resid], ss_total })
}

/// Split-plot ANOVA: one between-subjects factor and any number of within-subjects
/// factors. Repetitions of a subject × within cell are averaged first. Each within
/// effect `W` and `between*W` are tested against `W*Subjects/between`; no sphericity
/// correction is applied.
pub fn anova_mixed(obs: &[SubjectObservation], between: &str, within: &[&str], alpha: f64) -> Result<AnovaTable> {
    check_alpha(alpha)?;
    if obs.iter().any(|o| !o.value.is_finite()) {
        return Err(Error::Precondition("non-finite observation".into()));
    }
    let mut levels = Vec::new();
    for f in within {
        let vals = obs.iter().map(|o| lookup(&o.within, f)).collect::<Result<Vec<_>>>()?;
        levels.push(levels_of(vals.into_iter()));
    }
    let layout = Layout { dims: levels.iter().map(Vec::len).collect() };
    let full = (1usize << within.len()) - 1;
    let c = layout.cells();

    struct Subject {
        group: String,
        sums: Vec<f64>,
        counts: Vec<usize>,
    }
    let mut subjects: BTreeMap<&str, Subject> = BTreeMap::new();
    for o in obs {
        let s = subjects.entry(&o.subject).or_insert_with(|| Subject {
            group: o.between.clone(),
            sums: vec![0.0; c],
            counts: vec![0; c],
        });
        if s.group != o.between {
            return Err(Error::Precondition(format!(
                "subject `{}` appears in {between} groups `{}` and `{}`",
                o.subject, s.group, o.between
            )));
        }
        let code: Vec<usize> =
            within.iter().zip(&levels).map(|(f, lv)| lv.iter().position(|l| *l == o.within[*f]).unwrap_or(0)).collect();
        let idx = layout.project(&code, full);
        s.sums[idx] += o.value;
        s.counts[idx] += 1;
    }
    let mut groups: Vec<String> = subjects.values().map(|s| s.group.clone()).collect();
    groups.sort();
    groups.dedup();
    let n_subj = subjects.len();
    let g = groups.len();
    if g < 2 {
        return Err(Error::Precondition(format!("{between} needs at least two levels")));
    }
    if n_subj <= g {
        return Err(Error::InsufficientData { need: g + 1, got: n_subj });
    }

    // Per-subject cell means and contrasts.
    let mut group_of = Vec::with_capacity(n_subj);
    let mut tau_s = Vec::with_capacity(n_subj);
    let mut tables = Vec::with_capacity(n_subj);
    for (name, s) in &subjects {
        if let Some(miss) = s.counts.iter().position(|&k| k == 0) {
            return Err(Error::EmptyCell(format!(
                "subject `{name}` has no observation at {}",
                cell_label(within, &levels, &layout.decode(miss))
            )));
        }
        let table: Vec<f64> = s.sums.iter().zip(&s.counts).map(|(a, &k)| a / k as f64).collect();
        tau_s.push(layout.contrasts(&table));
        tables.push(table);
        group_of.push(groups.iter().position(|x| *x == s.group).unwrap_or(0));
    }
    let n_g: Vec<usize> = (0..g).map(|k| group_of.iter().filter(|&&x| x == k).count()).collect();
    let grand = tau_s.iter().map(|t| t[0][0]).sum::<f64>() / n_subj as f64;
    let group_mean: Vec<f64> = (0..g)
        .map(|k| {
            tau_s.iter().zip(&group_of).filter(|(_, &x)| x == k).map(|(t, _)| t[0][0]).sum::<f64>() / n_g[k] as f64
        })
        .collect();
    let cf = c as f64;
    let ss_total: f64 = tables.iter().flatten().map(|y| (y - grand).powi(2)).sum();
    let ss_b = cf * (0..g).map(|k| n_g[k] as f64 * (group_mean[k] - grand).powi(2)).sum::<f64>();
    let subj_err = ErrorTerm {
        name: format!("Subjects/{between}"),
        ss: cf * tau_s.iter().zip(&group_of).map(|(t, &k)| (t[0][0] - group_mean[k]).powi(2)).sum::<f64>(),
        df: n_subj - g,
    };
    let mut cells = vec![f_test(between.to_string(), ss_b, g - 1, &subj_err, ss_total, alpha)?];
    let mut errors = vec![subj_err];

    for mask in effect_masks(within.len()) {
        let m = layout.cells_of(mask);
        let r = cf / m as f64;
        let mean_all: Vec<f64> =
            (0..m).map(|i| tau_s.iter().map(|t| t[mask][i]).sum::<f64>() / n_subj as f64).collect();
        let mean_grp: Vec<Vec<f64>> = (0..g)
            .map(|k| {
                (0..m)
                    .map(|i| {
                        tau_s.iter().zip(&group_of).filter(|(_, &x)| x == k).map(|(t, _)| t[mask][i]).sum::<f64>()
                            / n_g[k] as f64
                    })
                    .collect()
            })
            .collect();
        let ss_w = n_subj as f64 * r * mean_all.iter().map(|v| v * v).sum::<f64>();
        let ss_wb = r
            * (0..g)
                .map(|k| n_g[k] as f64 * (0..m).map(|i| (mean_grp[k][i] - mean_all[i]).powi(2)).sum::<f64>())
                .sum::<f64>();
        let ss_err = r * tau_s
            .iter()
            .zip(&group_of)
            .map(|(t, &k)| (0..m).map(|i| (t[mask][i] - mean_grp[k][i]).powi(2)).sum::<f64>())
            .sum::<f64>();
        let name = effect_name(within, mask);
        let df = layout.df(mask);
        let err = ErrorTerm { name: format!("{name}*Subjects/{between}"), ss: ss_err, df: df * (n_subj - g) };
        cells.push(f_test(name.clone(), ss_w, df, &err, ss_total, alpha)?);
        cells.push(f_test(format!("{between}*{name}"), ss_wb, df * (g - 1), &err, ss_total, alpha)?);
        errors.push(err);
    }
    Ok(AnovaTable { cells, errors, ss_total })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_way(groups: &[&[f64]]) -> Vec<Observation> {
        groups
            .iter()
            .enumerate()
            .flat_map(|(g, vals)| {
                vals.iter().map(move |&v| Observation {
                    levels: BTreeMap::from([("G".to_string(), format!("g{g}"))]),
                    value: v,
                })
            })
            .collect()
    }

    #[test]
    fn identical_groups() {
        let t = anova_factorial(&one_way(&[&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]]), &["G"], 0.05).unwrap();
        assert_eq!(t.cells[0].f, 0.0);
        assert_eq!(t.cells[0].p, 1.0);
    }

    #[test]
    fn hand_computed_f() {
        let t = anova_factorial(&one_way(&[&[1.0, 2.0], &[3.0, 5.0]]), &["G"], 0.05).unwrap();
        let c = &t.cells[0];
        assert_eq!(c.ss, 6.25);
        assert_eq!(t.errors[0].ss, 2.5);
        assert_eq!((c.df1, c.df2), (1, 2));
        assert_eq!(c.f, 5.0);
    }

    #[test]
    fn additive_two_way_has_no_interaction() {
        let mut obs = Vec::new();
        for (a, ea) in [("a1", 0.0), ("a2", 3.0)] {
            for (b, eb) in [("b1", 0.0), ("b2", 5.0)] {
                for _ in 0..3 {
                    obs.push(Observation {
                        levels: BTreeMap::from([("A".into(), a.into()), ("B".into(), b.into())]),
                        value: 10.0 + ea + eb,
                    });
                }
            }
        }
        let t = anova_factorial(&obs, &["A", "B"], 0.05).unwrap();
        let names: Vec<&str> = t.cells.iter().map(|c| c.effect.as_str()).collect();
        assert_eq!(names, ["A", "B", "A*B"]);
        assert_eq!(t.cell("A*B").unwrap().f, 0.0);
        assert_eq!(t.cell("A").unwrap().f, f64::INFINITY);
    }

    #[test]
    fn unbalanced_and_empty() {
        let err = anova_factorial(&one_way(&[&[1.0, 2.0], &[3.0, 5.0, 6.0]]), &["G"], 0.05).unwrap_err();
        assert!(matches!(err, Error::Unbalanced(ref m) if m.contains("G=g1")));
        let mut obs = one_way(&[&[1.0, 2.0], &[3.0, 5.0]]);
        for (i, o) in obs.iter_mut().enumerate() {
            o.levels.insert("H".into(), if i < 2 { "h0".into() } else { "h1".into() });
        }
        assert!(matches!(anova_factorial(&obs, &["G", "H"], 0.05), Err(Error::EmptyCell(_))));
    }

    fn split_plot(values: impl Fn(usize, usize, usize) -> f64, per_group: usize) -> Vec<SubjectObservation> {
        let mut obs = Vec::new();
        for grp in 0..2 {
            for s in 0..per_group {
                for v in 0..3 {
                    for c in 0..4 {
                        obs.push(SubjectObservation {
                            subject: format!("{grp}-{s}"),
                            between: format!("g{grp}"),
                            within: BTreeMap::from([
                                ("Vowel".into(), format!("v{v}")),
                                ("Consonant".into(), format!("c{c}")),
                            ]),
                            value: values(grp * per_group + s, v, c),
                        });
                    }
                }
            }
        }
        obs
    }

    #[test]
    fn mixed_df_structure() {
        let obs = split_plot(|s, v, c| ((s * 7 + v * 3 + c * 5) % 11) as f64, 3);
        let t = anova_mixed(&obs, "Form", &["Vowel", "Consonant"], 0.05).unwrap();
        let df = |e: &str| {
            let c = t.cell(e).unwrap();
            (c.df1, c.df2)
        };
        assert_eq!(df("Form"), (1, 4));
        assert_eq!(df("Vowel"), (2, 8));
        assert_eq!(df("Consonant"), (3, 12));
        assert_eq!(df("Vowel*Consonant"), (6, 24));
        assert_eq!(df("Form*Vowel*Consonant"), (6, 24));
        let parts: f64 = t.cells.iter().filter(|c| !c.effect.starts_with("Form*")).map(|c| c.ss).sum::<f64>()
            + t.cells.iter().filter(|c| c.effect.starts_with("Form*")).map(|c| c.ss).sum::<f64>()
            + t.errors.iter().map(|e| e.ss).sum::<f64>();
        assert!((parts - t.ss_total).abs() <= 1e-9 * t.ss_total);
    }

    #[test]
    fn mixed_identical_groups() {
        let obs = split_plot(|_, v, c| (v * 4 + c) as f64, 3);
        let t = anova_mixed(&obs, "Form", &["Vowel", "Consonant"], 0.05).unwrap();
        assert_eq!(t.cell("Form").unwrap().f, 0.0);
    }

    #[test]
    fn mixed_subject_in_two_groups() {
        let mut obs = split_plot(|s, v, c| (s + v + c) as f64, 3);
        obs[0].between = "g1".into();
        assert!(matches!(anova_mixed(&obs, "Form", &["Vowel", "Consonant"], 0.05), Err(Error::Precondition(_))));
    }

    #[test]
    fn mixed_missing_cell() {
        let mut obs = split_plot(|s, v, c| (s + v + c) as f64, 3);
        obs.remove(5);
        assert!(matches!(anova_mixed(&obs, "Form", &["Vowel", "Consonant"], 0.05), Err(Error::EmptyCell(_))));
    }

    #[test]
    fn mixed_averages_repetitions() {
        let base = split_plot(|s, v, c| (s * s + v * c) as f64 + 0.5 * s as f64, 3);
        let mut doubled = Vec::new();
        for o in &base {
            let mut a = o.clone();
            a.value += 1.0;
            let mut b = o.clone();
            b.value -= 1.0;
            doubled.push(a);
            doubled.push(b);
        }
        let t1 = anova_mixed(&base, "Form", &["Vowel", "Consonant"], 0.05).unwrap();
        let t2 = anova_mixed(&doubled, "Form", &["Vowel", "Consonant"], 0.05).unwrap();
        for (a, b) in t1.cells.iter().zip(&t2.cells) {
            assert!(a.f == b.f || (a.f - b.f).abs() <= 1e-9 * a.f.abs().max(1.0), "{a:?} {b:?}");
        }
    }
}
