#![no_main]

use libfuzzer_sys::fuzz_target;
use ordtop::finstruct::{validate_topology, Carrier, PointSet, SetFamily};

// First byte picks the carrier size, each following pair of bytes one set.
fuzz_target!(|data: &[u8]| {
    let Some((&first, rest)) = data.split_first() else {
        return;
    };
    let n = usize::from(first % 9);
    let mask = (1u32 << n) - 1;
    let sets = rest
        .chunks_exact(2)
        .map(|b| PointSet::from_bits(u32::from(u16::from_le_bytes([b[0], b[1]])) & mask));
    let family = SetFamily::new(sets.collect());
    if let Ok(t) = validate_topology(&Carrier::standard(n), family) {
        assert!(t.is_open(PointSet::EMPTY) && t.is_open(PointSet::full(n)));
    }
});
