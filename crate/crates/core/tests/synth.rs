use gemination::classify::Gaussian1D;
use gemination::corpus::{ConsonantClass, Form};
use gemination::measurement::{parse_measurements, write_measurements, MeasurementRow};
use gemination::synth::*;

fn density(g: &Gaussian1D, x: f64) -> f64 {
    let z = (x - g.mean) / g.std;
    (-0.5 * z * z).exp() / (g.std * (2.0 * std::f64::consts::PI).sqrt())
}

/// Half the overlap area of the two densities, by the trapezoid rule on the
/// single-threshold partition: singleton mass above t plus geminate mass below t.
fn integrated_error(s: &Gaussian1D, g: &Gaussian1D, t: f64) -> f64 {
    let lo = s.mean.min(g.mean) - 12.0 * s.std.max(g.std);
    let hi = s.mean.max(g.mean) + 12.0 * s.std.max(g.std);
    let n = 400_000;
    let h = (hi - lo) / n as f64;
    let mut area = 0.0;
    for i in 0..=n {
        let x = lo + i as f64 * h;
        let f = if x >= t { density(s, x) } else { density(g, x) };
        let w = if i == 0 || i == n { 0.5 } else { 1.0 };
        area += w * f * h;
    }
    50.0 * area
}

/// Bayes overlap: half the integral of min(f_s, f_g).
fn integrated_min(s: &Gaussian1D, g: &Gaussian1D) -> f64 {
    let lo = s.mean.min(g.mean) - 12.0 * s.std.max(g.std);
    let hi = s.mean.max(g.mean) + 12.0 * s.std.max(g.std);
    let n = 400_000;
    let h = (hi - lo) / n as f64;
    (0..=n)
        .map(|i| {
            let x = lo + i as f64 * h;
            let w = if i == 0 || i == n { 0.5 } else { 1.0 };
            w * density(s, x).min(density(g, x)) * h
        })
        .sum::<f64>()
        * 50.0
}

fn g(m: f64, s: f64) -> Gaussian1D {
    Gaussian1D::new(m, s).unwrap()
}

#[test]
fn analytic_error_matches_integration() {
    let pairs = [
        (g(81.79, 25.02), g(133.29, 33.03)),
        (g(0.80, 0.33), g(1.97, 0.70)),
        (g(1.30, 0.64), g(2.42, 0.77)),
        (g(0.0, 1.0), g(2.0, 1.0)),
        (g(128.41, 27.08), g(175.0, 24.12)),
    ];
    for (s, gg) in pairs {
        let a = analytic_min_error(&s, &gg).unwrap();
        let t = gemination::classify::pep_threshold(&s, &gg).unwrap();
        assert!((a - integrated_error(&s, &gg, t)).abs() < 1e-6, "{s:?} {gg:?}");
        assert!((a - integrated_min(&s, &gg)).abs() <= 0.05, "{a} vs {}", integrated_min(&s, &gg));
    }
}

#[test]
fn affricate_closure_error_pinned() {
    let e = analytic_min_error(&g(81.79, 25.02), &g(133.29, 33.03)).unwrap();
    let t = gemination::classify::pep_threshold(&g(81.79, 25.02), &g(133.29, 33.03)).unwrap();
    assert!((e - integrated_error(&g(81.79, 25.02), &g(133.29, 33.03), t)).abs() < 1e-6);
    assert!((e - 18.466).abs() < 1e-3, "{e}");
}

#[test]
fn analytic_error_decreases_with_separation() {
    for (ss, sg, start) in [(2.0, 2.0, 0.0), (2.0, 3.0, 2.0), (3.0, 2.0, 2.0)] {
        let s = g(10.0, ss);
        let mut last = 50.0;
        for i in 1..60 {
            let e = analytic_min_error(&s, &g(10.0 + start + 0.25 * i as f64, sg)).unwrap();
            assert!(e < last, "step {i}: {e} !< {last}");
            last = e;
        }
    }
}

#[test]
fn fricative_singleton_mean_converges() {
    let stats = load_builtin_stats("tableXX").unwrap();
    let rows = sample_corpus(&stats, 100_000, 17).unwrap();
    let cd: Vec<f64> = rows
        .iter()
        .filter(|r| r.class == ConsonantClass::Fricative && r.form == Form::Singleton)
        .map(|r| r.time.cd.as_ms())
        .collect();
    assert_eq!(cd.len(), 100_000);
    let mean = cd.iter().sum::<f64>() / cd.len() as f64;
    assert!((mean - 134.91).abs() < 0.5, "{mean}");
}

fn directly_drawn(cell: &CellStats) -> Vec<Param> {
    let mut p = vec![Param::V1d, Param::Cd, Param::V2d];
    if cell.class.has_closure() {
        p.push(Param::C1d);
    }
    p
}

fn value(r: &MeasurementRow, p: Param) -> f64 {
    match p {
        Param::V1d => r.time.v1d.as_ms(),
        Param::Cd => r.time.cd.as_ms(),
        Param::C1d => r.time.c1d.unwrap().as_ms(),
        Param::V2d => r.time.v2d.as_ms(),
        _ => unreachable!(),
    }
}

/// Cells far from the floor and without the paired closure redraw converge
/// to the fixture mean within three standard errors.
#[test]
fn well_separated_cells_converge() {
    let n = 100_000;
    for table in ["tableXXVIII", "tableXX"] {
        let stats = load_builtin_stats(table).unwrap();
        let rows = sample_corpus(&stats, n, 23).unwrap();
        for (k, cell) in stats.cells.iter().enumerate() {
            if cell.class.has_closure() {
                continue;
            }
            let chunk = &rows[k * n..(k + 1) * n];
            for p in directly_drawn(cell) {
                let ms = cell.get(p).unwrap();
                if ms.mean <= 3.0 * ms.std {
                    continue;
                }
                let mean = chunk.iter().map(|r| value(r, p)).sum::<f64>() / n as f64;
                let bound = 3.0 * ms.std / (n as f64).sqrt();
                assert!((mean - ms.mean).abs() < bound, "{} {:?}: {mean} vs {}", cell.id, p, ms.mean);
            }
        }
    }
}

#[test]
fn identities_hold_on_every_token() {
    for table in ["tableXX", "tableXXVI", "tableXXVIII"] {
        let stats = load_builtin_stats(table).unwrap();
        for r in sample_corpus(&stats, 500, 99).unwrap() {
            let t = r.time;
            if let (Some(c1), Some(c2)) = (t.c1d, t.c2d) {
                assert_eq!(c1 + c2, t.cd);
            }
            assert_eq!(t.v1d + t.cd + t.v2d, t.utd);
            assert!(t.c2d.is_none_or(|d| d.as_ms() >= 1.0));
        }
    }
}

#[test]
fn csv_output_is_deterministic_and_round_trips() {
    let stats = load_builtin_stats("tableXXVI").unwrap();
    let rows = sample_corpus(&stats, 100, 7).unwrap();
    assert_eq!(rows.len(), 24 * 100);
    let a = write_measurements(&rows, &["table=tableXXVI".into()]).unwrap();
    let b = write_measurements(&sample_corpus(&stats, 100, 7).unwrap(), &["table=tableXXVI".into()]).unwrap();
    assert_eq!(a, b);
    assert_eq!(parse_measurements(&a).unwrap(), rows);
}

#[test]
fn cells_are_order_independent() {
    let stats = load_builtin_stats("tableXX").unwrap();
    let full = sample_corpus(&stats, 20, 5).unwrap();
    let mut single = stats.clone();
    single.cells.retain(|c| c.id == "stop-geminate");
    let part = sample_corpus(&single, 20, 5).unwrap();
    let from_full: Vec<_> = full.into_iter().filter(|r| r.token_id.starts_with("stop-geminate")).collect();
    assert_eq!(from_full, part);
}
