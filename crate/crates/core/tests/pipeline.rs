use coded_beam::array::{los_channel, LinkBudget};
use coded_beam::codes::LlrKind;
use coded_beam::harness::{read_csv, run_experiment, write_csv, ExperimentConfig, Grid};
use coded_beam::protocols::{
    overhead, run_scheme, trace_csv, Scheme, TrainingCodebooks, TrainingLink,
};
use coded_beam::synthesis::{Codebook, SynthesisParams};
use coded_beam::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn csv_round_trip_preserves_rows() {
    let cfg = ExperimentConfig {
        n_antennas: 16,
        schemes: Scheme::ALL.to_vec(),
        grid: Grid::SnrDb(vec![-3.5, 8.0]),
        n_trials: 60,
        ..Default::default()
    };
    let rows = run_experiment(&cfg).unwrap();
    assert_eq!(rows.len(), 18);
    let mut buf = Vec::new();
    write_csv(&rows, &mut buf).unwrap();
    assert_eq!(read_csv(std::str::from_utf8(&buf).unwrap()).unwrap(), rows);
    for r in &rows {
        let scheme = Scheme::parse(&r.scheme).unwrap();
        assert_eq!((r.slots, r.feedback_slots), overhead(scheme, 16).unwrap());
    }
}

#[test]
fn codebooks_survive_serialization() {
    let books = TrainingCodebooks::new(
        64,
        SynthesisParams {
            seed: 3,
            ..Default::default()
        },
    )
    .unwrap();
    for cb in [
        books.conv().unwrap(),
        books.hierarchical().unwrap(),
        books.dft(),
    ] {
        let bytes = cb.to_bytes().unwrap();
        assert_eq!(&Codebook::read_from(bytes.as_slice()).unwrap(), cb);
        assert!(Codebook::read_from(&bytes[..bytes.len() - 1]).is_err());
    }
}

#[test]
fn trace_accounts_for_every_slot() {
    let books = TrainingCodebooks::new(32, SynthesisParams::default()).unwrap();
    let budget = LinkBudget::normalized(0.0);
    let h = los_channel(Complex64::new(0.0, 1.0), -0.41, 32).unwrap();
    for scheme in [
        Scheme::Exhaustive,
        Scheme::Hierarchical,
        Scheme::FixedCoded(LlrKind::ChiSquared),
        Scheme::AdaptiveMlCoded,
    ] {
        let mut link = TrainingLink::new(&h, &budget, ChaCha8Rng::seed_from_u64(9)).traced();
        let out = run_scheme(scheme, &mut link, &books).unwrap();
        let csv = trace_csv(link.trace());
        assert_eq!(
            csv.lines().count(),
            1 + out.slots_used + out.feedback_slots,
            "{scheme}"
        );
    }
}

#[test]
fn shipped_configs_parse() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs");
    let mut n = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let cfg = ExperimentConfig::from_file(&path)
            .unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        cfg.validate().unwrap();
        n += 1;
    }
    assert_eq!(n, 3);
}
