use num_bigint::BigUint;
use num_traits::One;

/// The first `n` primes.
pub fn first_primes(n: usize) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::with_capacity(n);
    let mut c = 2u64;
    while out.len() < n {
        if out.iter().take_while(|&&p| p * p <= c).all(|&p| c % p != 0) {
            out.push(c);
        }
        c += 1;
    }
    out
}

/// Running products `p_0^{e_0} ⋯ p_n^{e_n}` over `n < exponents.len()`.
fn running_products(exponents: impl ExactSizeIterator<Item = u64>) -> Vec<BigUint> {
    let primes = first_primes(exponents.len());
    let mut acc = BigUint::one();
    exponents
        .zip(primes)
        .map(|(e, p)| {
            acc *= BigUint::from(p).pow(e as u32);
            acc.clone()
        })
        .collect()
}

/// The first `α.len()` elements of `S_α`, where the `n`-th is
/// `p_0^{α(0)+1} ⋯ p_n^{α(n)+1}`. Entries of `alpha` are bits.
pub fn prime_coded(alpha: &[u8]) -> Vec<BigUint> {
    running_products(alpha.iter().map(|&b| u64::from(b) + 1))
}

/// `p_0^{ν(0)+2} ⋯ p_n^{ν(n)+2} − 1` for `n < ν.len()`.
pub fn prime_coded_shifted(nu: &[u64]) -> Vec<BigUint> {
    running_products(nu.iter().map(|&x| x + 2)).into_iter().map(|x| x - 1u32).collect()
}

/// The increasing enumeration of `S_α`, as far as `alpha` determines it.
pub fn nu_alpha(alpha: &[u8], count: usize) -> Vec<BigUint> {
    let mut v = prime_coded(alpha);
    v.truncate(count);
    v
}
