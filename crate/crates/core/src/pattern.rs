//! Space-time 0/1 beam patterns and angular coverage sets.
//!
//! The spatial-direction interval `[-1, 1)` is split into `n` equal
//! half-open segments; segment `i` is `[-1 + 2i/n, -1 + 2(i+1)/n)` and its
//! index is read MSB first from the direction bits. A pattern bit of 1 means
//! the beam should illuminate that segment.
//!
//! Layers, slots and segments are 0-based in this API.

use std::fmt::Write as _;

use crate::codes::{conv_encode, HammingCode74};
use crate::{index_to_bits, Bit, Error, Result};

/// Binary masks per `(layer, slot, segment)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceTimeBeamPattern {
    n_segments: usize,
    // masks[layer][slot][segment]
    masks: Vec<Vec<Vec<Bit>>>,
}

impl SpaceTimeBeamPattern {
    pub fn from_masks(masks: Vec<Vec<Vec<Bit>>>) -> Result<Self> {
        let n_segments = masks
            .first()
            .and_then(|l| l.first())
            .map(|s| s.len())
            .ok_or_else(|| Error::invalid("pattern needs at least one layer"))?;
        let slots = masks[0].len();
        for layer in &masks {
            if layer.len() != slots {
                return Err(Error::invalid("every layer needs the same number of slots"));
            }
            for slot in layer {
                if slot.len() != n_segments {
                    return Err(Error::DimensionMismatch {
                        expected: n_segments,
                        found: slot.len(),
                    });
                }
                if slot.iter().any(|&b| b > 1) {
                    return Err(Error::invalid("pattern entries must be 0 or 1"));
                }
            }
        }
        Ok(Self { n_segments, masks })
    }

    pub fn n_layers(&self) -> usize {
        self.masks.len()
    }

    pub fn n_segments(&self) -> usize {
        self.n_segments
    }

    pub fn slots_per_layer(&self) -> usize {
        self.masks[0].len()
    }

    pub fn mask(&self, layer: usize, slot: usize) -> &[Bit] {
        &self.masks[layer][slot]
    }

    pub fn value(&self, layer: usize, slot: usize, segment: usize) -> Bit {
        self.masks[layer][slot][segment]
    }

    /// First-slot bits of one segment across all layers: the code word of
    /// that segment's index.
    pub fn column(&self, segment: usize) -> Vec<Bit> {
        self.masks.iter().map(|l| l[0][segment]).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Bit>> {
        (0..self.n_segments).map(|i| self.column(i)).collect()
    }

    /// Plain-text grid: one line per layer, slots separated by one space.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for layer in &self.masks {
            let slots: Vec<String> = layer
                .iter()
                .map(|m| m.iter().map(|&b| if b == 1 { '1' } else { '0' }).collect())
                .collect();
            let _ = writeln!(out, "{}", slots.join(" "));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let masks = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|line| {
                line.split_whitespace()
                    .map(|slot| {
                        slot.chars()
                            .map(|c| match c {
                                '0' => Ok(0),
                                '1' => Ok(1),
                                other => Err(Error::Format {
                                    what: "beam pattern",
                                    detail: format!("unexpected character {other:?}"),
                                }),
                            })
                            .collect::<Result<Vec<Bit>>>()
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_masks(masks)
    }
}

/// Seven two-slot layers over 16 segments from the (7,4) Hamming code;
/// slot 1 is the complement of slot 0.
pub fn hamming_pattern() -> SpaceTimeBeamPattern {
    let code = HammingCode74::new();
    let words: Vec<[Bit; 7]> = (0..16)
        .map(|i| {
            let b = index_to_bits(i, 4);
            code.encode(&[b[0], b[1], b[2], b[3]])
        })
        .collect();
    let masks = (0..7)
        .map(|l| {
            let first: Vec<Bit> = words.iter().map(|w| w[l]).collect();
            let second = first.iter().map(|b| b ^ 1).collect();
            vec![first, second]
        })
        .collect();
    SpaceTimeBeamPattern {
        n_segments: 16,
        masks,
    }
}

/// `2L` single-slot layers over `2^L` segments from the convolutional code.
pub fn conv_pattern(l: usize) -> Result<SpaceTimeBeamPattern> {
    if l == 0 || l > 24 {
        return Err(Error::invalid(format!(
            "convolutional pattern needs 1 <= L <= 24, got {l}"
        )));
    }
    let n = 1usize << l;
    let words: Vec<Vec<Bit>> = (0..n).map(|i| conv_encode(&index_to_bits(i, l))).collect();
    let masks = (0..2 * l)
        .map(|layer| vec![words.iter().map(|w| w[layer]).collect()])
        .collect();
    Ok(SpaceTimeBeamPattern {
        n_segments: n,
        masks,
    })
}

/// Union of equal-width segments of `[-1, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoverageSet {
    mask: Vec<bool>,
}

impl CoverageSet {
    pub fn empty(n_segments: usize) -> Self {
        Self {
            mask: vec![false; n_segments],
        }
    }

    pub fn full(n_segments: usize) -> Self {
        Self {
            mask: vec![true; n_segments],
        }
    }

    pub fn from_mask(mask: Vec<bool>) -> Self {
        Self { mask }
    }

    pub fn from_bits(bits: &[Bit]) -> Self {
        Self {
            mask: bits.iter().map(|&b| b == 1).collect(),
        }
    }

    pub fn from_segments(n_segments: usize, segments: impl IntoIterator<Item = usize>) -> Self {
        let mut set = Self::empty(n_segments);
        for s in segments {
            set.mask[s] = true;
        }
        set
    }

    pub fn n_segments(&self) -> usize {
        self.mask.len()
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn segments(&self) -> impl Iterator<Item = usize> + '_ {
        self.mask
            .iter()
            .enumerate()
            .filter(|(_, &c)| c)
            .map(|(i, _)| i)
    }

    pub fn count(&self) -> usize {
        self.mask.iter().filter(|&&c| c).count()
    }

    pub fn is_empty(&self) -> bool {
        self.count() == 0
    }

    /// Total interval length `|B|`, in `[0, 2]`.
    pub fn measure(&self) -> f64 {
        self.count() as f64 * 2.0 / self.n_segments() as f64
    }

    /// Segment containing `phi`; `phi = 1` belongs to the last segment.
    pub fn segment_of(n_segments: usize, phi: f64) -> usize {
        let idx = ((phi + 1.0) * n_segments as f64 / 2.0).floor();
        (idx.max(0.0) as usize).min(n_segments - 1)
    }

    pub fn contains(&self, phi: f64) -> bool {
        if !(-1.0..=1.0).contains(&phi) {
            return false;
        }
        self.mask[Self::segment_of(self.n_segments(), phi)]
    }

    /// Covered intervals `[lo, hi)` with adjacent segments merged.
    pub fn intervals(&self) -> Vec<(f64, f64)> {
        let n = self.n_segments() as f64;
        let edge = |i: usize| -1.0 + 2.0 * i as f64 / n;
        let mut out: Vec<(f64, f64)> = Vec::new();
        let mut start = None;
        for (i, &c) in self.mask.iter().chain(std::iter::once(&false)).enumerate() {
            match (c, start) {
                (true, None) => start = Some(i),
                (false, Some(s)) => {
                    out.push((edge(s), edge(i)));
                    start = None;
                }
                _ => {}
            }
        }
        out
    }

    /// Same set on a grid `factor` times finer.
    pub fn refine(&self, factor: usize) -> Self {
        Self {
            mask: self
                .mask
                .iter()
                .flat_map(|&c| std::iter::repeat_n(c, factor))
                .collect(),
        }
    }

    /// Same set on the coarsest grid that still represents it exactly.
    pub fn canonical(&self) -> Self {
        let mut mask = self.mask.clone();
        while mask.len() > 1 && mask.len().is_multiple_of(2) && mask.chunks(2).all(|c| c[0] == c[1])
        {
            mask = mask.chunks(2).map(|c| c[0]).collect();
        }
        Self { mask }
    }

    /// Both sets on the finer of their two grids.
    fn aligned(&self, other: &Self) -> Result<(Self, Self)> {
        let (a, b) = (self.n_segments(), other.n_segments());
        let n = a.max(b);
        if n % a != 0 || n % b != 0 {
            return Err(Error::invalid(format!(
                "segment grids {a} and {b} do not nest"
            )));
        }
        Ok((self.refine(n / a), other.refine(n / b)))
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.aligned(other)?;
        Ok(Self {
            mask: a.mask.iter().zip(&b.mask).map(|(x, y)| *x && *y).collect(),
        })
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.aligned(other)?;
        Ok(Self {
            mask: a.mask.iter().zip(&b.mask).map(|(x, y)| *x || *y).collect(),
        })
    }

    pub fn is_subset_of(&self, other: &Self) -> Result<bool> {
        let (a, b) = self.aligned(other)?;
        Ok(a.mask.iter().zip(&b.mask).all(|(x, y)| !*x || *y))
    }
}

/// Coverage of one layer's first slot.
pub fn coverage_set(pattern: &SpaceTimeBeamPattern, layer: usize) -> Result<CoverageSet> {
    slot_coverage(pattern, layer, 0)
}

pub fn slot_coverage(
    pattern: &SpaceTimeBeamPattern,
    layer: usize,
    slot: usize,
) -> Result<CoverageSet> {
    if layer >= pattern.n_layers() || slot >= pattern.slots_per_layer() {
        return Err(Error::invalid(format!(
            "no layer {layer} slot {slot} in a {}-layer pattern",
            pattern.n_layers()
        )));
    }
    Ok(CoverageSet::from_bits(pattern.mask(layer, slot)))
}

/// Directions still consistent with the survivor prefixes.
///
/// Every path of `d` bits selects one interval of the `2^d`-way partition
/// of `[-1, 1)`; the result is their union. An empty prefix (or no paths at
/// all before the first trellis step) leaves the whole space.
pub fn survivor_directions<P: AsRef<[Bit]>>(paths: &[P]) -> Result<CoverageSet> {
    let depth = match paths.first() {
        None => return Ok(CoverageSet::full(1)),
        Some(p) => p.as_ref().len(),
    };
    if paths.iter().any(|p| p.as_ref().len() != depth) {
        return Err(Error::invalid("survivor paths must share one length"));
    }
    if depth > 30 {
        return Err(Error::invalid("survivor paths too long"));
    }
    Ok(CoverageSet::from_segments(
        1 << depth,
        paths.iter().map(|p| crate::bits_to_index(p.as_ref())),
    ))
}

/// `B ∩ S` on the finer grid.
pub fn adaptive_coverage(base: &CoverageSet, survivors: &CoverageSet) -> Result<CoverageSet> {
    base.intersection(survivors)
}
