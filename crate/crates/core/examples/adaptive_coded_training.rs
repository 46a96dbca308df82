//! Fixed and adaptive convolutionally coded training at 64 antennas and low
//! SNR. The adaptive trace shows the beams narrowing level by level.

use coded_beam::array::{los_channel, LinkBudget};
use coded_beam::codes::LlrKind;
use coded_beam::protocols::{run_scheme, trace_csv, Scheme, TrainingCodebooks, TrainingLink};
use coded_beam::synthesis::SynthesisParams;
use coded_beam::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> coded_beam::Result<()> {
    let n = 64;
    let books = TrainingCodebooks::new(n, SynthesisParams::default())?;
    let budget = LinkBudget::normalized(-2.0);
    let channel = los_channel(Complex64::new(1.0, 0.0), 0.217, n)?;

    for scheme in [
        Scheme::FixedCoded(LlrKind::ChiSquared),
        Scheme::AdaptiveCoded(LlrKind::ChiSquared),
    ] {
        let mut hits = 0;
        for seed in 0..200 {
            let mut link = TrainingLink::new(&channel, &budget, ChaCha8Rng::seed_from_u64(seed));
            hits += run_scheme(scheme, &mut link, &books)?.success as usize;
        }
        println!("{scheme}: {hits}/200 noise draws select the right beam");
    }

    let mut link = TrainingLink::new(&channel, &budget, ChaCha8Rng::seed_from_u64(0)).traced();
    let out = run_scheme(
        Scheme::AdaptiveCoded(LlrKind::ChiSquared),
        &mut link,
        &books,
    )?;
    println!("\nadaptive trace (codeword column: layer | coverage mask, coarsest grid):");
    print!("{}", trace_csv(link.trace()));
    println!(
        "decoded bits {:?} -> codeword {}",
        out.decoded_bits,
        out.selected_index + 1
    );
    Ok(())
}
