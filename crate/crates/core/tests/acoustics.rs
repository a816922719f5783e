use std::f64::consts::PI;

use gemination::acoustics::*;
use gemination::corpus::{build_token, load_word_inventory, Gender, Msec, ReferenceTimes, Waveform, WordIdentity};
use gemination::framing::{frame_for, FrameKind, FrameSpan};
use gemination::measurement::measure_token;

const FS: u32 = 16_000;

/// Impulse train at `f0` through a cascade of two-pole resonators.
fn resonator_signal(formants: &[(f64, f64)], f0: f64, n: usize) -> Vec<f64> {
    let fs = f64::from(FS);
    let period = (fs / f0).round() as usize;
    let mut x: Vec<f64> = (0..n).map(|i| if i % period == 0 { 1.0 } else { 0.0 }).collect();
    for &(f, bw) in formants {
        let r = (-PI * bw / fs).exp();
        let (a1, a2) = (2.0 * r * (2.0 * PI * f / fs).cos(), -r * r);
        let mut y = vec![0.0; n];
        for i in 0..n {
            let y1 = if i >= 1 { y[i - 1] } else { 0.0 };
            let y2 = if i >= 2 { y[i - 2] } else { 0.0 };
            y[i] = x[i] + a1 * y1 + a2 * y2;
        }
        x = y;
    }
    x
}

fn sine(f: f64, n: usize) -> Waveform {
    let fs = f64::from(FS);
    Waveform::new((0..n).map(|i| (2.0 * PI * f * i as f64 / fs).sin()).collect(), FS).unwrap()
}

#[test]
fn pure_sines_within_one_hz() {
    let cfg = AnalysisConfig::default();
    for f in [100.0, 220.0, 330.0] {
        let w = sine(f, 4000);
        for start in [0, 1000, 3000, 4000 - 256] {
            let est = estimate_f0(&w, FrameSpan { start }, &cfg).unwrap().hz().unwrap();
            assert!((est - f).abs() <= 1.0, "{f} Hz at {start}: {est}");
        }
    }
}

#[test]
fn two_resonators_give_their_frequencies() {
    let cfg = AnalysisConfig::default();
    let w = Waveform::new(resonator_signal(&[(700.0, 80.0), (1200.0, 80.0)], 120.0, 2400), FS).unwrap();
    let span = FrameSpan { start: 1000 };
    let found = formant_candidates(&w, span, &cfg).unwrap();
    assert_eq!(found.len(), 2, "{found:?}");
    assert!((found[0] - 700.0).abs() <= 50.0, "{found:?}");
    assert!((found[1] - 1200.0).abs() <= 50.0, "{found:?}");
    match estimate_formants(&w, span, &cfg) {
        Err(gemination::Error::InsufficientResonances { found: f }) => assert_eq!(f, found),
        other => panic!("{other:?}"),
    }
}

#[test]
fn three_resonators_are_ordered_and_close() {
    let cfg = AnalysisConfig::default();
    let truth = [(500.0, 60.0), (1500.0, 90.0), (2500.0, 120.0)];
    let w = Waveform::new(resonator_signal(&truth, 110.0, 3000), FS).unwrap();
    let f = estimate_formants(&w, FrameSpan { start: 1200 }, &cfg).unwrap();
    assert!(f.f1 < f.f2 && f.f2 < f.f3);
    for (est, (t, _)) in [f.f1, f.f2, f.f3].into_iter().zip(truth) {
        assert!((est - t).abs() <= 80.0, "{f:?}");
    }
    let g = estimate_formants(&w.scaled(7.5), FrameSpan { start: 1200 }, &cfg).unwrap();
    assert!((g.f1 - f.f1).abs() < 1e-6 && (g.f3 - f.f3).abs() < 1e-6);
}

#[test]
fn energy_shifts_by_twenty_log_k() {
    let w = Waveform::new(resonator_signal(&[(600.0, 100.0)], 130.0, 3000), FS).unwrap();
    for k in [0.01, 0.5, 3.0, 1000.0] {
        let a = segment_energy(&w, (100, 2900)).unwrap();
        let b = segment_energy(&w.scaled(k), (100, 2900)).unwrap();
        let shift = 20.0 * k.log10();
        assert!((b.e_tot - a.e_tot - shift).abs() < 1e-9);
        assert!((b.p - a.p - shift).abs() < 1e-9);
        let fa = frame_energy(&w, FrameSpan { start: 700 }).unwrap();
        let fb = frame_energy(&w.scaled(k), FrameSpan { start: 700 }).unwrap();
        assert!((fb - fa - shift).abs() < 1e-9);
    }
}

#[test]
fn known_sum_of_squares() {
    // 400 samples of amplitude 10 give 10 log10(40000).
    let w = Waveform::new(vec![10.0; 400], FS).unwrap();
    let e = segment_energy(&w, (0, 400)).unwrap();
    assert!((e.e_tot - 10.0 * 40_000f64.log10()).abs() < 1e-12);
    assert!((e.p - 20.0).abs() < 1e-12);
}

#[test]
fn vowel_token_end_to_end() {
    // Vowel, 100 ms of low-level noise as the fricative, vowel again.
    let inv = load_word_inventory();
    let w = inv.word("afa").unwrap();
    let vowel = resonator_signal(&[(700.0, 80.0), (1200.0, 90.0), (2600.0, 120.0)], 120.0, 3200);
    let mut samples = vec![0.0; 800];
    samples.extend(&vowel);
    let mut s: u64 = 99;
    samples.extend((0..1600).map(|_| {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        0.05 * (((s >> 11) as f64 / (1u64 << 53) as f64) - 0.5)
    }));
    samples.extend(&vowel);
    samples.extend(vec![0.0; 800]);
    let wave = Waveform::new(samples, FS).unwrap();
    let times = ReferenceTimes {
        v1_onset: Msec::from_ms(50.0),
        v1_offset: Msec::from_ms(250.0),
        c1_offset: None,
        v2_onset: Msec::from_ms(350.0),
        v2_offset: Msec::from_ms(550.0),
    };
    let id = WordIdentity {
        word_id: w.word_id.clone(),
        speaker_id: "s1".into(),
        gender: Gender::Male,
        repetition: 1,
        vowel: w.vowel,
        consonant: w.consonant.clone(),
        form: w.form,
    };
    let token = build_token(id, times, Some(wave.clone())).unwrap();
    let row = measure_token("t1", &token, &AnalysisConfig::default()).unwrap();
    let freq = row.freq.as_ref().unwrap();
    let centre = freq.get(FrameKind::V1Centre).unwrap();
    let f = centre.formants.unwrap();
    assert!(f.f1 < f.f2 && f.f2 < f.f3, "{f:?}");
    let f0 = centre.f0.unwrap().hz().unwrap();
    assert!((f0 - 120.0).abs() < 2.0, "{f0}");
    let span = frame_for(&times, FrameKind::V1Centre, w.consonant.class, FS, wave.len()).unwrap();
    assert_eq!(span.start, 2400 - 128);
    let energy = row.energy.unwrap();
    assert!(energy.e_tot_v1 > energy.e_tot_c);
}
