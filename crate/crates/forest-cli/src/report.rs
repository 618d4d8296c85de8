//! Result envelopes. Every subcommand prints exactly one JSON envelope on
//! standard output: the command name, the SHA-256 digest of the input
//! graph file (null for commands that take none), the result payload, and
//! the tool version. Bound values are exact fraction strings ("213/44"),
//! never decimals, and parse back to the same rational.

use forest::bounds::Rational;
use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Serialize)]
struct Envelope<T: Serialize> {
    command: &'static str,
    input_digest: Option<String>,
    result: T,
    version: &'static str,
}

/// Print the envelope of a finished command.
pub fn print<T: Serialize>(command: &'static str, input_digest: Option<String>, result: T) {
    let envelope = Envelope {
        command,
        input_digest,
        result,
        version: env!("CARGO_PKG_VERSION"),
    };
    println!(
        "{}",
        serde_json::to_string_pretty(&envelope).expect("envelope serializes")
    );
}

/// Hex SHA-256 of the raw input bytes.
pub fn sha256_hex(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

/// Exact fraction string of a rational: "213/44", or "5" when integral.
pub fn frac(r: Rational) -> String {
    r.to_string()
}

/// Smallest integer at least r.
pub fn ceil_i64(r: Rational) -> i64 {
    r.ceil().to_integer()
}

#[cfg(test)]
mod tests {
    use super::*;
    use forest::bounds::rat;

    #[test]
    fn fractions_round_trip_through_strings() {
        for r in [rat(213, 44), rat(5, 1), rat(-3, 16), rat(310, 23), rat(0, 1)] {
            let s = frac(r);
            assert!(!s.contains('.'), "{s}");
            assert_eq!(s.parse::<Rational>().unwrap(), r, "{s}");
        }
        assert_eq!(frac(rat(5, 1)), "5");
        assert_eq!(frac(rat(38, 44)), "19/22");
    }

    #[test]
    fn ceil_rounds_up() {
        assert_eq!(ceil_i64(rat(213, 44)), 5);
        assert_eq!(ceil_i64(rat(310, 23)), 14);
        assert_eq!(ceil_i64(rat(14, 1)), 14);
        assert_eq!(ceil_i64(rat(-3, 2)), -1);
    }

    #[test]
    fn digest_is_hex_sha256() {
        assert_eq!(
            sha256_hex(b""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
        assert_eq!(sha256_hex(b"p forest 1 0\n").len(), 64);
    }
}
