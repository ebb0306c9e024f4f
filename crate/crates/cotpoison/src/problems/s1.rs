use super::{Answer, Symbol, S1_MODULUS};
use crate::error::{Error, Result};

/// Exact residue mod 1000 of the `S1` product for `x >= 1`.
///
/// * `f(x) = x! mod 1000`
/// * `g(x) = F(1)F(2)...F(x) mod 1000`, Fibonacci with `F1 = F2 = 1`
/// * `h(x) = L(1)L(2)...L(x) mod 1000`, Lucas with `L1 = 1, L2 = 3`
/// * `i(x) = M(1)M(2)...M(x) mod 1000`, Mersenne `M(n) = 2^n - 1`
///
/// Every intermediate product is reduced mod 1000, so `x` may be arbitrarily
/// large without overflow.
pub fn solve_s1(symbol: Symbol, x: u64) -> Result<Answer> {
    if x < 1 {
        return Err(Error::invalid("S1 requires x >= 1"));
    }
    let m = S1_MODULUS;
    let value = match symbol {
        Symbol::F => {
            let mut product = 1u64;
            for k in 1..=x {
                product = product * (k % m) % m;
            }
            product
        }
        Symbol::G => product_of_recurrence(1, 1, x),
        Symbol::H => product_of_recurrence(1, 3, x),
        Symbol::I => {
            // Track 2^n mod 1000 and fold in M(n) = 2^n - 1 one term at a time.
            let mut product = 1u64;
            let mut pow2 = 1u64;
            for _ in 1..=x {
                pow2 = pow2 * 2 % m;
                let mersenne = (pow2 + m - 1) % m;
                product = product * mersenne % m;
            }
            product
        }
    };
    Ok(Answer::residue(value))
}

/// Product of the first `x` terms of `a(n) = a(n-1) + a(n-2)`, all mod 1000.
fn product_of_recurrence(first: u64, second: u64, x: u64) -> u64 {
    let m = S1_MODULUS;
    let (mut a, mut b) = (first, second);
    let mut product = 1u64;
    for _ in 1..=x {
        product = product * a % m;
        let next = (a + b) % m;
        a = b;
        b = next;
    }
    product
}
