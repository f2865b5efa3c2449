#![no_main]

use libfuzzer_sys::fuzz_target;
use ordtop::finstruct::parse_structure;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(s) = parse_structure(text) {
            let again = parse_structure(&s.to_text()).expect("canonical text reparses");
            assert_eq!(again, s);
        }
    }
});
