#![no_main]

use libfuzzer_sys::fuzz_target;
use ordtop::finstruct::parse_json;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(s) = parse_json(text) {
            let again = parse_json(&s.to_json()).expect("canonical json reparses");
            assert_eq!(again, s);
        }
    }
});
