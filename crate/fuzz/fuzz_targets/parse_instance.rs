#![no_main]

use libfuzzer_sys::fuzz_target;
use warmstart_bench::format::{parse_instance, write_instance};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(inst) = parse_instance(text) {
        // Anything accepted must survive a write/parse round trip.
        let again = parse_instance(&write_instance(&inst)).expect("written instance parses");
        assert_eq!(again, inst);
    }
});
