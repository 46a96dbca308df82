//! Exhaustive sweep and binary hierarchical search on one channel draw,
//! printing the slot-by-slot signaling trace.

use coded_beam::array::{los_channel, LinkBudget};
use coded_beam::protocols::{
    achievable_rate, run_scheme, trace_csv, Scheme, TrainingCodebooks, TrainingLink,
};
use coded_beam::synthesis::SynthesisParams;
use coded_beam::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> coded_beam::Result<()> {
    let n = 16;
    let books = TrainingCodebooks::new(n, SynthesisParams::default())?;
    let budget = LinkBudget::normalized(0.0);
    let channel = los_channel(Complex64::from_polar(1.0, 0.7), -0.65, n)?;

    for scheme in [Scheme::Exhaustive, Scheme::Hierarchical] {
        let mut link = TrainingLink::new(&channel, &budget, ChaCha8Rng::seed_from_u64(1)).traced();
        let out = run_scheme(scheme, &mut link, &books)?;
        let w = &books.dft().layers[0][out.selected_index].weights;
        println!(
            "== {scheme}: codeword {} (success {}), {} training + {} feedback slots, rate {:.2} bit/s/Hz",
            out.selected_index + 1,
            out.success,
            out.slots_used,
            out.feedback_slots,
            achievable_rate(&channel, &budget, w)?
        );
        print!("{}", trace_csv(link.trace()));
    }
    Ok(())
}
