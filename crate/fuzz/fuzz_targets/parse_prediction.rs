#![no_main]

use libfuzzer_sys::fuzz_target;
use warmstart_bench::format::{parse_prediction, write_prediction};

fuzz_target!(|data: &[u8]| {
    let Some((&dim, rest)) = data.split_first() else {
        return;
    };
    let Ok(text) = std::str::from_utf8(rest) else {
        return;
    };
    if let Ok(y) = parse_prediction(text, dim as usize).map(|d| d.0) {
        assert_eq!(y.len(), dim as usize);
        assert_eq!(
            parse_prediction(&write_prediction(&y), y.len()).unwrap().0,
            y
        );
    }
});
