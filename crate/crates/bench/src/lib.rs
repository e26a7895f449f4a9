//! Inputs shared by the benchmarks.

use std::sync::Arc;

use ringsums::FiniteRing;

/// Rings enumerated by the brute-force benchmarks, smallest first.
pub const ENUMERATED: [&str; 4] = ["GF(16)", "Zmod(49)", "Mat(2,GF(3))", "Mat(2,Zmod(6))"];

/// Rings whose power sums have closed forms but are too large to enumerate.
pub const CLOSED_ONLY: [&str; 3] = ["GF(1024)", "Zmod(1048583)", "Prod(GF(4096),Zmod(3125))"];

/// Rings and degree bounds for the invariant-space benchmarks.
pub const INVARIANT: [(&str, usize); 3] = [("GF(4)", 8), ("Zmod(8)", 16), ("Nil(GF(3),2)", 9)];

pub fn ring(spec: &str) -> Arc<FiniteRing> {
    FiniteRing::parse(spec).expect("benchmark ring spec")
}

#[cfg(test)]
mod tests {
    use super::*;
    use ringsums::closedform::power_sum_closed;
    use ringsums::RingSpec;

    #[test]
    fn inputs_are_valid() {
        for s in ENUMERATED {
            ring(s);
        }
        for (s, _) in INVARIANT {
            ring(s);
        }
        for s in CLOSED_ONLY {
            assert!(power_sum_closed(&RingSpec::parse(s).unwrap(), 3).is_ok(), "{s}");
        }
    }
}
