use std::collections::BTreeMap;

use gemination::stats::*;
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// ---------- mixed ANOVA against least-squares projections ----------

/// One cell-mean observation of a split-plot design.
struct Cell {
    group: usize,
    subject: usize,
    within: Vec<usize>,
    y: f64,
}

/// A model term: grouping by the between factor, the subject, and a subset of
/// within factors. `subject` implies the between factor.
#[derive(Clone, PartialEq)]
struct Term {
    between: bool,
    subject: bool,
    within: Vec<usize>,
}

impl Term {
    fn key(&self, c: &Cell) -> Vec<usize> {
        let mut k = Vec::new();
        if self.subject {
            k.push(c.subject);
        } else if self.between {
            k.push(c.group);
        }
        k.extend(self.within.iter().map(|&w| c.within[w]));
        k
    }

    /// Terms one factor smaller.
    fn parents(&self) -> Vec<Term> {
        let mut out = Vec::new();
        if self.subject {
            out.push(Term { between: true, subject: false, within: self.within.clone() });
        } else if self.between {
            out.push(Term { between: false, subject: false, within: self.within.clone() });
        }
        for i in 0..self.within.len() {
            let mut w = self.within.clone();
            w.remove(i);
            out.push(Term { between: self.between, subject: self.subject, within: w });
        }
        out
    }
}

fn indicators(cells: &[Cell], terms: &[Term]) -> DMatrix<f64> {
    let mut cols: Vec<Vec<f64>> = vec![vec![1.0; cells.len()]];
    for t in terms {
        let mut keys: Vec<Vec<usize>> = cells.iter().map(|c| t.key(c)).collect();
        keys.sort();
        keys.dedup();
        for k in keys {
            cols.push(cells.iter().map(|c| if t.key(c) == k { 1.0 } else { 0.0 }).collect());
        }
    }
    DMatrix::from_fn(cells.len(), cols.len(), |i, j| cols[j][i])
}

fn project(x: &DMatrix<f64>, y: &DVector<f64>) -> DVector<f64> {
    let xtx = x.transpose() * x;
    let pinv = xtx.pseudo_inverse(1e-9).unwrap();
    x * (pinv * (x.transpose() * y))
}

/// Sum of squares attributable to `term` beyond its parents.
fn term_ss(cells: &[Cell], term: &Term) -> f64 {
    let y = DVector::from_iterator(cells.len(), cells.iter().map(|c| c.y));
    let full = project(&indicators(cells, std::slice::from_ref(term)), &y);
    let reduced = project(&indicators(cells, &term.parents()), &y);
    (full - reduced).norm_squared()
}

fn within_name(names: &[&str], w: &[usize]) -> String {
    w.iter().map(|&i| names[i]).collect::<Vec<_>>().join("*")
}

fn subsets(k: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (1..1usize << k).map(|m| (0..k).filter(|i| m >> i & 1 == 1).collect()).collect();
    out.sort_by_key(|s| (s.len(), s.clone()));
    out
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1e-12)
}

#[test]
fn mixed_matches_projection_oracle() {
    let names = ["W1", "W2"];
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for design in 0..24 {
        let g = rng.gen_range(2..=3);
        let per = rng.gen_range(2..=4);
        let k = rng.gen_range(1..=2);
        let dims: Vec<usize> = (0..k).map(|_| rng.gen_range(2..=3)).collect();
        let mut cells = Vec::new();
        let mut obs = Vec::new();
        for grp in 0..g {
            for s in 0..per {
                let subject = grp * per + s;
                let n_cells: usize = dims.iter().product();
                for code in 0..n_cells {
                    let mut rem = code;
                    let within: Vec<usize> = dims
                        .iter()
                        .map(|&d| {
                            let v = rem % d;
                            rem /= d;
                            v
                        })
                        .collect();
                    let y = rng.gen_range(-5.0..5.0) + grp as f64 + within[0] as f64 * 0.7;
                    obs.push(SubjectObservation {
                        subject: format!("s{subject}"),
                        between: format!("b{grp}"),
                        within: within
                            .iter()
                            .enumerate()
                            .map(|(i, &v)| (names[i].to_string(), format!("l{v}")))
                            .collect::<BTreeMap<_, _>>(),
                        value: y,
                    });
                    cells.push(Cell { group: grp, subject, within, y });
                }
            }
        }
        let table = anova_mixed(&obs, "B", &names[..k], 0.05).unwrap();
        let n_subj = g * per;

        let b = Term { between: true, subject: false, within: vec![] };
        let subj = Term { between: true, subject: true, within: vec![] };
        let ss_b = term_ss(&cells, &b);
        let ss_subj = term_ss(&cells, &subj);
        let cell = table.cell("B").unwrap();
        assert!(close(cell.ss, ss_b), "design {design}: B {} vs {ss_b}", cell.ss);
        assert_eq!((cell.df1, cell.df2), (g - 1, n_subj - g));
        assert!(close(cell.f, (ss_b / (g - 1) as f64) / (ss_subj / (n_subj - g) as f64)));

        for w in subsets(k) {
            let name = within_name(&names, &w);
            let df_w: usize = w.iter().map(|&i| dims[i] - 1).product();
            let ss_w = term_ss(&cells, &Term { between: false, subject: false, within: w.clone() });
            let ss_bw = term_ss(&cells, &Term { between: true, subject: false, within: w.clone() });
            let ss_err = term_ss(&cells, &Term { between: true, subject: true, within: w.clone() });
            let df_err = df_w * (n_subj - g);

            let c = table.cell(&name).unwrap();
            assert!(close(c.ss, ss_w), "design {design}: {name}");
            assert_eq!((c.df1, c.df2), (df_w, df_err));
            assert!(close(c.f, (ss_w / df_w as f64) / (ss_err / df_err as f64)));

            let c = table.cell(&format!("B*{name}")).unwrap();
            assert!(close(c.ss, ss_bw), "design {design}: B*{name}");
            assert_eq!((c.df1, c.df2), (df_w * (g - 1), df_err));
            assert!(close(c.f, (ss_bw / (df_w * (g - 1)) as f64) / (ss_err / df_err as f64)));

            let e = table.errors.iter().find(|e| e.name == format!("{name}*Subjects/B")).unwrap();
            assert!(close(e.ss, ss_err));
        }
    }
}

#[test]
fn table_three_df_structure() {
    // 6 subjects in 2 groups, 3 x 4 within cells, 2 repetitions each.
    let mut obs = Vec::new();
    for s in 0..6 {
        for v in 0..3 {
            for c in 0..4 {
                for r in 0..2 {
                    obs.push(SubjectObservation {
                        subject: format!("s{s}"),
                        between: if s < 3 { "singleton".into() } else { "geminate".into() },
                        within: BTreeMap::from([
                            ("Vowel".to_string(), format!("v{v}")),
                            ("Consonant".to_string(), format!("c{c}")),
                        ]),
                        value: ((s * 13 + v * 5 + c * 3 + r * 7) % 17) as f64,
                    });
                }
            }
        }
    }
    let t = anova_mixed(&obs, "Form", &["Vowel", "Consonant"], 0.05).unwrap();
    let df = |e: &str| {
        let c = t.cell(e).unwrap();
        (c.df1, c.df2)
    };
    assert_eq!(df("Form"), (1, 4));
    assert_eq!(df("Vowel"), (2, 8));
    assert_eq!(df("Consonant"), (3, 12));
    assert_eq!(df("Form*Vowel"), (2, 8));
    assert_eq!(df("Form*Consonant"), (3, 12));
}

#[test]
fn factorial_hand_instance() {
    let obs: Vec<Observation> = [("g1", 1.0), ("g1", 2.0), ("g2", 3.0), ("g2", 5.0)]
        .iter()
        .map(|&(g, v)| Observation { levels: BTreeMap::from([("G".to_string(), g.to_string())]), value: v })
        .collect();
    let t = anova_factorial(&obs, &["G"], 0.05).unwrap();
    let c = t.cell("G").unwrap();
    assert_eq!(c.f, 5.0);
    assert_eq!((c.df1, c.df2), (1, 2));
}

// ---------- F tail against quadrature ----------

/// ln of the Beta(a, b) density at u, given u and 1 - u separately.
fn ln_beta_pdf(u: f64, one_minus_u: f64, a: f64, b: f64) -> f64 {
    let ln_b = libm::lgamma(a) + libm::lgamma(b) - libm::lgamma(a + b);
    (a - 1.0) * u.ln() + (b - 1.0) * one_minus_u.ln() - ln_b
}

/// Tanh-sinh quadrature of the Beta(a, b) density over [lo, 1].
fn beta_upper(lo: f64, a: f64, b: f64) -> f64 {
    let half = 0.5 * (1.0 - lo);
    let h = 1.0 / 256.0;
    let mut sum = 0.0;
    let mut k: i64 = -8 * 256;
    while k <= 8 * 256 {
        let t = k as f64 * h;
        let s = std::f64::consts::FRAC_PI_2 * t.sinh();
        let ch = s.cosh();
        let w = std::f64::consts::FRAC_PI_2 * t.cosh() / (ch * ch);
        // Distances to both ends without cancellation.
        let e = (-2.0 * s.abs()).exp();
        let near = half * 2.0 * e / (1.0 + e);
        let far = 2.0 * half - near;
        let (from_lo, to_hi) = if s < 0.0 { (near, far) } else { (far, near) };
        let u = lo + from_lo;
        if from_lo > 0.0 && to_hi > 0.0 {
            sum += w * ln_beta_pdf(u, to_hi, a, b).exp();
        }
        k += 1;
    }
    sum * h * half
}

#[test]
fn f_survival_matches_quadrature() {
    for &df1 in &[1.0, 2.0, 3.0, 6.0] {
        for &df2 in &[1.0, 2.0, 4.0, 8.0, 12.0, 24.0, 60.0] {
            for &f in &[0.05, 0.3, 1.0, 2.5, 5.0, 12.0, 40.0] {
                let lo = df1 * f / (df2 + df1 * f);
                let oracle = beta_upper(lo, df1 / 2.0, df2 / 2.0);
                let p = f_survival(f, df1, df2).unwrap();
                assert!((p - oracle).abs() < 1e-8, "F({df1},{df2}) at {f}: {p} vs {oracle}");
            }
        }
    }
}

// ---------- ranks and correlation ----------

fn oracle_ranks(x: &[f64]) -> Vec<f64> {
    x.iter()
        .map(|v| {
            let less = x.iter().filter(|w| *w < v).count() as f64;
            let equal = x.iter().filter(|w| *w == v).count() as f64;
            less + (equal + 1.0) / 2.0
        })
        .collect()
}

#[test]
fn ranks_match_exhaustive_oracle() {
    let mut checked = 0;
    for len in 1..=6u32 {
        for code in 0..3usize.pow(len) {
            let mut rem = code;
            let x: Vec<f64> = (0..len)
                .map(|_| {
                    let v = (rem % 3 + 1) as f64;
                    rem /= 3;
                    v
                })
                .collect();
            assert_eq!(average_ranks(&x), oracle_ranks(&x), "{x:?}");
            checked += 1;
        }
    }
    assert_eq!(checked, 3 + 9 + 27 + 81 + 243 + 729);
}

#[test]
fn spearman_invariant_under_increasing_maps() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut done = 0;
    while done < 100 {
        let n = rng.gen_range(4..40);
        let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-20..20) as f64 * 0.5).collect();
        let y: Vec<f64> = (0..n).map(|_| rng.gen_range(-20..20) as f64).collect();
        let Ok(base) = spearman(&x, &y) else { continue };
        let fx: Vec<f64> = x.iter().map(|v| (v / 4.0).exp() + v * v * v).collect();
        let fy: Vec<f64> = y.iter().map(|v| 3.0 * v - 7.0).collect();
        let t = spearman(&fx, &fy).unwrap();
        assert_eq!(t.coefficient.to_bits(), base.coefficient.to_bits());
        done += 1;
    }
}

#[test]
fn spearman_monotone_extremes() {
    let x: Vec<f64> = (0..25).map(|i| i as f64).collect();
    let up: Vec<f64> = x.iter().map(|v| v.powi(3)).collect();
    let down: Vec<f64> = x.iter().map(|v| -v.exp()).collect();
    assert_eq!(spearman(&x, &up).unwrap().coefficient, 1.0);
    assert_eq!(spearman(&x, &down).unwrap().coefficient, -1.0);
}
