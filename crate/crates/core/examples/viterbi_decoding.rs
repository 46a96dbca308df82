//! Rate-1/2 convolutional coding of a direction index and soft Viterbi
//! decoding from noisy LLRs, checked against brute-force ML.

use coded_beam::codes::{conv_encode, ml_decode_llrs, viterbi_decode, TrellisState};
use coded_beam::pattern::conv_pattern;
use coded_beam::{bits_to_index, index_to_bits};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

fn main() -> coded_beam::Result<()> {
    let l = 6;
    let message = index_to_bits(45, l);
    let code = conv_encode(&message);
    println!("message {message:?}\ncode    {code:?}");

    let noise = Normal::new(0.0, 1.2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let llrs: Vec<f64> = code
        .iter()
        .map(|&b| 2.0 * (b as f64 * 2.0 - 1.0) + noise.sample(&mut rng))
        .collect();
    let hard_errors = llrs
        .iter()
        .zip(&code)
        .filter(|(x, &b)| (**x > 0.0) != (b == 1))
        .count();
    println!("{hard_errors} of {} hard decisions wrong", code.len());

    // step the trellis by hand to show the survivors
    let mut state = TrellisState::new();
    for pair in llrs.chunks(2) {
        state = state.step((pair[0], pair[1]));
        let alive: Vec<String> = state
            .survivors()
            .map(|(s, loss, p)| format!("s{s}:{loss:.2}:{p:?}"))
            .collect();
        println!("level {}: {}", state.level(), alive.join("  "));
    }

    let decoded = viterbi_decode(&llrs)?;
    let ml = ml_decode_llrs(&llrs, &conv_pattern(l)?.columns())?;
    println!(
        "viterbi -> {} ({decoded:?}), ML -> {ml}, sent {}",
        bits_to_index(&decoded),
        bits_to_index(&message)
    );
    Ok(())
}
