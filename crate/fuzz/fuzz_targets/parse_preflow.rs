#![no_main]

use libfuzzer_sys::fuzz_target;
use warmstart_bench::format::{parse_preflow, write_preflow};
use warmstart_core::FlowNetwork;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let net = FlowNetwork::new(
        4,
        [
            (0, 1, 3, 0),
            (0, 2, 2, 0),
            (1, 2, 1, 0),
            (1, 3, 2, 0),
            (2, 3, 3, 0),
            (1, 2, 4, 0),
        ],
        0,
        3,
    )
    .unwrap();
    if let Ok(f) = parse_preflow(text, &net) {
        assert_eq!(f.len(), net.m());
        assert_eq!(parse_preflow(&write_preflow(&net, &f), &net).unwrap(), f);
    }
});
