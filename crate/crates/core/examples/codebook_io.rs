//! Synthesizes the coded codebook for 128 antennas, writes it in the binary
//! codebook format and reads it back.

use coded_beam::pattern::conv_pattern;
use coded_beam::synthesis::{coverage_contrast_db, BeamSynthesizer, Codebook, SynthesisParams};

fn main() -> coded_beam::Result<()> {
    let n = 128;
    let synth = BeamSynthesizer::new(
        n,
        SynthesisParams {
            seed: 7,
            ..Default::default()
        },
    )?;
    let codebook = Codebook::from_pattern(&conv_pattern(6)?, &synth)?;

    for (l, layer) in codebook.layers.iter().enumerate() {
        let cw = &layer[0];
        println!(
            "layer {l:>2}: {:>3} of 64 segments covered, contrast {:5.1} dB",
            cw.coverage.count(),
            coverage_contrast_db(&cw.weights, &cw.coverage, 16 * n)
        );
    }

    let path = std::env::temp_dir().join("coded_beam_example.cbk");
    codebook.write_to(std::fs::File::create(&path)?)?;
    let back = Codebook::read_from(std::fs::File::open(&path)?)?;
    println!(
        "{} bytes at {}, identical after reload: {}",
        std::fs::metadata(&path)?.len(),
        path.display(),
        back == codebook
    );
    Ok(())
}
