//! Prime-field arithmetic contexts and number-theoretic transforms for
//! word-size primes.

mod arith;
mod field;
mod ntt;

pub use arith::{factor, is_prime};
pub use field::FieldCtx;
pub use ntt::NttPlan;

/// An NTT-friendly 20-bit prime, `3 * 2^18 + 1`.
pub const PRIME_20_NTT: u64 = 786_433;
/// An NTT-friendly 60-bit prime, `49 * 2^54 + 1`.
pub const PRIME_60_NTT: u64 = 882_705_526_964_617_217;
/// A 60-bit prime with two-adicity 1.
pub const PRIME_60_GENERAL: u64 = 1_152_921_504_606_846_883;

/// 62-bit NTT primes used to lift products over arbitrary primes.
pub(crate) const CRT_PRIMES: [u64; 3] = [
    4_179_340_454_199_820_289, // 29 * 2^57 + 1
    2_485_986_994_308_513_793, // 69 * 2^55 + 1
    2_936_346_957_045_563_393, // 163 * 2^54 + 1
];
