use std::io::Cursor;

use crate::error::{Error, Result};

/// Mono samples normalised to [-1, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct Waveform {
    pub samples: Vec<f64>,
    pub sample_rate: u32,
}

impl Waveform {
    pub fn new(samples: Vec<f64>, sample_rate: u32) -> Result<Self> {
        if sample_rate == 0 {
            return Err(Error::UnsupportedAudio("sample rate 0".into()));
        }
        Ok(Waveform { samples, sample_rate })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn scaled(&self, k: f64) -> Waveform {
        Waveform { samples: self.samples.iter().map(|x| x * k).collect(), sample_rate: self.sample_rate }
    }

    /// Encodes as 16-bit mono PCM WAVE, clipping to the representable range.
    pub fn to_wav_bytes(&self) -> Result<Vec<u8>> {
        let spec = hound::WavSpec {
            channels: 1,
            sample_rate: self.sample_rate,
            bits_per_sample: 16,
            sample_format: hound::SampleFormat::Int,
        };
        let mut buf = Cursor::new(Vec::new());
        {
            let mut w = hound::WavWriter::new(&mut buf, spec).map_err(wav_err)?;
            for &x in &self.samples {
                let v = (x * 32768.0).round().clamp(-32768.0, 32767.0) as i16;
                w.write_sample(v).map_err(wav_err)?;
            }
            w.finalize().map_err(wav_err)?;
        }
        Ok(buf.into_inner())
    }
}

/// Decodes a RIFF WAVE container holding 16-bit linear PCM, mono.
pub fn load_audio(bytes: &[u8]) -> Result<Waveform> {
    let reader = hound::WavReader::new(Cursor::new(bytes)).map_err(wav_err)?;
    let spec = reader.spec();
    if spec.channels != 1 {
        return Err(Error::UnsupportedAudio(format!("channel count {} (mono required)", spec.channels)));
    }
    if spec.sample_format != hound::SampleFormat::Int {
        return Err(Error::UnsupportedAudio("floating-point encoding".into()));
    }
    if spec.bits_per_sample != 16 {
        return Err(Error::UnsupportedAudio(format!("bit depth {} (16 required)", spec.bits_per_sample)));
    }
    let declared = reader.len() as usize;
    let samples = reader
        .into_samples::<i16>()
        .map(|s| s.map(|v| f64::from(v) / 32768.0))
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|e| match e {
            // Reading from memory only fails when the data chunk runs out.
            hound::Error::IoError(io) => Error::TruncatedAudio(io.to_string()),
            other => wav_err(other),
        })?;
    if samples.len() < declared {
        return Err(Error::TruncatedAudio(format!("{} of {declared} samples present", samples.len())));
    }
    Waveform::new(samples, spec.sample_rate)
}

fn wav_err(e: hound::Error) -> Error {
    match e {
        hound::Error::IoError(io) if io.kind() == std::io::ErrorKind::UnexpectedEof => {
            Error::TruncatedAudio(io.to_string())
        }
        hound::Error::IoError(io) => Error::Io(io.to_string()),
        hound::Error::Unsupported => Error::UnsupportedAudio("encoding not supported".into()),
        other => Error::UnsupportedAudio(other.to_string()),
    }
}
