//! Hamming(7,4) beam training at 16 antennas: encode a direction index,
//! flip one received bit, and watch the syndrome put it back.

use coded_beam::codes::{hamming_correct, hamming_encode};
use coded_beam::index_to_bits;
use coded_beam::pattern::hamming_pattern;

fn main() -> coded_beam::Result<()> {
    let message = index_to_bits(2, 4);
    let sent = hamming_encode(&message)?;
    println!("direction 3 -> message {message:?} -> codeword {sent:?}");

    for pos in 0..7 {
        let mut received = sent;
        received[pos] ^= 1;
        let fix = hamming_correct(&received)?;
        println!(
            "flip bit {}: received {received:?}, syndrome {:?}, corrected {:?}",
            pos + 1,
            fix.syndrome,
            fix.message()
        );
    }

    // each layer's first slot covers the segments whose codeword bit is 1
    println!("\nspace-time beam pattern (slot 1 | slot 2 per layer):");
    print!("{}", hamming_pattern().to_text());
    Ok(())
}
