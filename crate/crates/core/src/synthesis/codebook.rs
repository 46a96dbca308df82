//! Layered codebooks, their binary file format and the beam cache.

use std::collections::HashMap;
use std::io::{Read, Write};
use std::sync::Arc;

use num_complex::Complex64;
use parking_lot::RwLock;

use super::gs::{desired_gain, gs_design};
use super::manifold::{Manifold, UniformManifold};
use super::{dft_codebook, DEFAULT_MAX_ITERS, DEFAULT_OVERSAMPLING};
use crate::pattern::{slot_coverage, CoverageSet, SpaceTimeBeamPattern};
use crate::{exact_log2, Error, Result};

const MAGIC: &[u8; 8] = b"CBTBOOK\0";
const VERSION: u32 = 1;

/// One beamforming weight vector and the directions it is meant to cover.
#[derive(Debug, Clone, PartialEq)]
pub struct Codeword {
    pub weights: Vec<Complex64>,
    pub coverage: CoverageSet,
}

/// Ordered layers of unit-norm codewords.
#[derive(Debug, Clone, PartialEq)]
pub struct Codebook {
    pub n_antennas: usize,
    /// Manifold samples used for synthesis (0 when nothing was synthesized).
    pub n_samples: usize,
    pub seed: u64,
    pub layers: Vec<Vec<Codeword>>,
}

impl Codebook {
    /// Single layer holding the `N_T` DFT codewords.
    pub fn dft(n_antennas: usize) -> Result<Self> {
        let layer = dft_codebook(n_antennas)?
            .into_iter()
            .enumerate()
            .map(|(i, weights)| Codeword {
                weights,
                coverage: CoverageSet::from_segments(n_antennas, [i]),
            })
            .collect();
        Ok(Self {
            n_antennas,
            n_samples: 0,
            seed: 0,
            layers: vec![layer],
        })
    }

    /// One codeword per `(layer, slot)` of a beam pattern.
    pub fn from_pattern(pattern: &SpaceTimeBeamPattern, synth: &BeamSynthesizer) -> Result<Self> {
        let layers = (0..pattern.n_layers())
            .map(|l| {
                (0..pattern.slots_per_layer())
                    .map(|s| {
                        let coverage = slot_coverage(pattern, l, s)?;
                        Ok(Codeword {
                            weights: synth.beam(&coverage)?.to_vec(),
                            coverage,
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(synth.wrap(layers))
    }

    /// Binary-tree codebook: layer `l` (0-based) splits `[-1, 1)` into
    /// `2^(l+1)` dyadic intervals; the last layer is the DFT codebook.
    pub fn hierarchical(synth: &BeamSynthesizer) -> Result<Self> {
        let n = synth.n_antennas();
        let depth = exact_log2(n)
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::invalid(format!("N_T = {n} is not a power of two >= 2")))?;
        let mut layers = Vec::with_capacity(depth);
        for l in 0..depth - 1 {
            let width = 1usize << (l + 1);
            let layer = (0..width)
                .map(|j| {
                    let coverage = CoverageSet::from_segments(width, [j]);
                    Ok(Codeword {
                        weights: synth.beam(&coverage)?.to_vec(),
                        coverage,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            layers.push(layer);
        }
        layers.extend(Self::dft(n)?.layers);
        Ok(synth.wrap(layers))
    }

    pub fn n_codewords(&self) -> usize {
        self.layers.iter().map(Vec::len).sum()
    }

    pub fn codeword(&self, layer: usize, index: usize) -> &Codeword {
        &self.layers[layer][index]
    }

    /// Writes the little-endian binary format described in the README.
    pub fn write_to<W: Write>(&self, mut out: W) -> Result<()> {
        out.write_all(MAGIC)?;
        out.write_all(&VERSION.to_le_bytes())?;
        for v in [
            self.n_antennas as u64,
            self.layers.len() as u64,
            self.n_samples as u64,
            self.seed,
            self.n_codewords() as u64,
        ] {
            out.write_all(&v.to_le_bytes())?;
        }
        for (l, layer) in self.layers.iter().enumerate() {
            for (i, cw) in layer.iter().enumerate() {
                if cw.weights.len() != self.n_antennas {
                    return Err(Error::DimensionMismatch {
                        expected: self.n_antennas,
                        found: cw.weights.len(),
                    });
                }
                for v in [l, i, cw.coverage.n_segments()] {
                    out.write_all(&(v as u64).to_le_bytes())?;
                }
                let mask: Vec<u8> = cw.coverage.mask().iter().map(|&c| c as u8).collect();
                out.write_all(&mask)?;
                for z in &cw.weights {
                    out.write_all(&z.re.to_le_bytes())?;
                    out.write_all(&z.im.to_le_bytes())?;
                }
            }
        }
        Ok(())
    }

    pub fn to_bytes(&self) -> Result<Vec<u8>> {
        let mut buf = Vec::new();
        self.write_to(&mut buf)?;
        Ok(buf)
    }

    pub fn read_from<R: Read>(mut input: R) -> Result<Self> {
        let mut magic = [0u8; 8];
        input.read_exact(&mut magic)?;
        if &magic != MAGIC {
            return Err(format_err("bad magic"));
        }
        let mut version = [0u8; 4];
        input.read_exact(&mut version)?;
        if u32::from_le_bytes(version) != VERSION {
            return Err(format_err("unsupported version"));
        }
        let n_antennas = read_len(&mut input, 1 << 24)?;
        let n_layers = read_len(&mut input, 1 << 24)?;
        let n_samples = read_len(&mut input, 1 << 32)?;
        let seed = read_u64(&mut input)?;
        let n_codewords = read_len(&mut input, 1 << 24)?;

        if n_layers == 0 && n_codewords > 0 {
            return Err(format_err("codewords without layers"));
        }
        let mut layers: Vec<Vec<Codeword>> = vec![Vec::new(); n_layers];
        for _ in 0..n_codewords {
            let layer = read_len(&mut input, n_layers.saturating_sub(1))?;
            let index = read_u64(&mut input)? as usize;
            if index != layers[layer].len() {
                return Err(format_err("codewords out of order"));
            }
            let n_segments = read_len(&mut input, 1 << 30)?;
            let mut mask = vec![0u8; n_segments];
            input.read_exact(&mut mask)?;
            if mask.iter().any(|&b| b > 1) {
                return Err(format_err("coverage mask byte is not 0 or 1"));
            }
            let mut weights = Vec::with_capacity(n_antennas);
            for _ in 0..n_antennas {
                let re = read_f64(&mut input)?;
                let im = read_f64(&mut input)?;
                weights.push(Complex64::new(re, im));
            }
            layers[layer].push(Codeword {
                weights,
                coverage: CoverageSet::from_bits(&mask),
            });
        }
        let mut rest = [0u8; 1];
        if input.read(&mut rest)? != 0 {
            return Err(format_err("trailing bytes"));
        }
        Ok(Self {
            n_antennas,
            n_samples,
            seed,
            layers,
        })
    }
}

fn format_err(detail: &str) -> Error {
    Error::Format {
        what: "codebook file",
        detail: detail.to_string(),
    }
}

fn read_u64<R: Read>(input: &mut R) -> Result<u64> {
    let mut b = [0u8; 8];
    input.read_exact(&mut b)?;
    Ok(u64::from_le_bytes(b))
}

fn read_len<R: Read>(input: &mut R, max: usize) -> Result<usize> {
    let v = read_u64(input)?;
    if v > max as u64 {
        return Err(format_err(&format!("field value {v} exceeds {max}")));
    }
    Ok(v as usize)
}

fn read_f64<R: Read>(input: &mut R) -> Result<f64> {
    let mut b = [0u8; 8];
    input.read_exact(&mut b)?;
    Ok(f64::from_le_bytes(b))
}

/// GS parameters shared by every beam of one codebook family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SynthesisParams {
    /// `K / N_T`.
    pub oversampling: usize,
    pub max_iters: usize,
    pub seed: u64,
}

impl Default for SynthesisParams {
    fn default() -> Self {
        Self {
            oversampling: DEFAULT_OVERSAMPLING,
            max_iters: DEFAULT_MAX_ITERS,
            seed: 0,
        }
    }
}

/// Memoizing GS beam factory for one array size.
///
/// Beams are keyed by the canonical form of their coverage set and seeded
/// from `(seed, coverage)`, so the same set always yields the same beam no
/// matter which thread asks first.
pub struct BeamSynthesizer {
    manifold: UniformManifold,
    params: SynthesisParams,
    cache: RwLock<HashMap<CoverageSet, Arc<Vec<Complex64>>>>,
}

impl BeamSynthesizer {
    pub fn new(n_antennas: usize, params: SynthesisParams) -> Result<Self> {
        if params.oversampling == 0 || params.max_iters == 0 {
            return Err(Error::invalid("oversampling and max_iters must be >= 1"));
        }
        Ok(Self {
            manifold: UniformManifold::new(n_antennas, params.oversampling * n_antennas)?,
            params,
            cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn n_antennas(&self) -> usize {
        self.manifold.n_antennas()
    }

    pub fn n_samples(&self) -> usize {
        self.params.oversampling * self.n_antennas()
    }

    pub fn params(&self) -> SynthesisParams {
        self.params
    }

    pub fn cached_beams(&self) -> usize {
        self.cache.read().len()
    }

    pub fn beam(&self, coverage: &CoverageSet) -> Result<Arc<Vec<Complex64>>> {
        let key = coverage.canonical();
        if let Some(beam) = self.cache.read().get(&key) {
            return Ok(Arc::clone(beam));
        }
        let spec = desired_gain(&key, self.n_samples())?;
        let beam = Arc::new(gs_design(
            &spec,
            &self.manifold,
            self.params.max_iters,
            beam_seed(self.params.seed, &key),
        )?);
        // a racing writer computed the identical beam; keep whichever landed
        Ok(Arc::clone(self.cache.write().entry(key).or_insert(beam)))
    }

    fn wrap(&self, layers: Vec<Vec<Codeword>>) -> Codebook {
        Codebook {
            n_antennas: self.n_antennas(),
            n_samples: self.n_samples(),
            seed: self.params.seed,
            layers,
        }
    }
}

/// FNV-1a over the seed and the mask; stable across platforms and builds.
fn beam_seed(seed: u64, coverage: &CoverageSet) -> u64 {
    const PRIME: u64 = 0x0000_0100_0000_01b3;
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let bytes = seed
        .to_le_bytes()
        .into_iter()
        .chain((coverage.n_segments() as u64).to_le_bytes())
        .chain(coverage.mask().iter().map(|&c| c as u8));
    for b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(PRIME);
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::{conv_pattern, hamming_pattern};
    use approx::assert_abs_diff_eq;

    fn synth(n: usize) -> BeamSynthesizer {
        BeamSynthesizer::new(
            n,
            SynthesisParams {
                seed: 11,
                ..Default::default()
            },
        )
        .unwrap()
    }

    #[test]
    fn cache_reuses_equal_sets() {
        let s = synth(16);
        let a = s.beam(&CoverageSet::from_bits(&[1, 0])).unwrap();
        let b = s.beam(&CoverageSet::from_bits(&[1, 1, 0, 0])).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        assert_eq!(s.cached_beams(), 1);
        // a fresh synthesizer with the same seed reproduces the beam
        assert_eq!(
            *synth(16)
                .beam(&CoverageSet::from_bits(&[1, 1, 0, 0]))
                .unwrap(),
            *a
        );
        assert!(s.beam(&CoverageSet::empty(4)).is_err());
    }

    #[test]
    fn hierarchical_shape() {
        let cb = Codebook::hierarchical(&synth(16)).unwrap();
        assert_eq!(cb.layers.len(), 4);
        for (l, layer) in cb.layers.iter().enumerate() {
            assert_eq!(layer.len(), 2 << l);
            for cw in layer {
                assert_abs_diff_eq!(crate::array::norm(&cw.weights), 1.0, epsilon = 1e-9);
                assert_abs_diff_eq!(cw.coverage.measure(), 2.0 / layer.len() as f64);
            }
        }
        assert_eq!(cb.layers[3], Codebook::dft(16).unwrap().layers[0]);
        assert!(Codebook::hierarchical(&synth(12)).is_err());
    }

    #[test]
    fn pattern_codebooks() {
        let h = Codebook::from_pattern(&hamming_pattern(), &synth(16)).unwrap();
        assert_eq!(h.layers.len(), 7);
        assert!(h.layers.iter().all(|l| l.len() == 2));
        let c = Codebook::from_pattern(&conv_pattern(3).unwrap(), &synth(16)).unwrap();
        assert_eq!(c.layers.len(), 6);
        assert_eq!(c.n_codewords(), 6);
    }

    #[test]
    fn binary_round_trip() {
        let cb = Codebook::from_pattern(&conv_pattern(3).unwrap(), &synth(16)).unwrap();
        let bytes = cb.to_bytes().unwrap();
        // header 8 + 4 + 5·8, per codeword 3·8 + 8 mask bytes + 16·16
        assert_eq!(bytes.len(), 52 + 6 * (24 + 8 + 256));
        let back = Codebook::read_from(bytes.as_slice()).unwrap();
        assert_eq!(back, cb);

        let mut bad = bytes.clone();
        bad[0] = b'X';
        assert!(matches!(
            Codebook::read_from(bad.as_slice()),
            Err(Error::Format { .. })
        ));
        assert!(Codebook::read_from(&bytes[..bytes.len() - 1]).is_err());
        let mut long = bytes.clone();
        long.push(0);
        assert!(Codebook::read_from(long.as_slice()).is_err());
    }
}
