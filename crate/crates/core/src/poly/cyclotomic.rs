use super::ZPoly;

pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn mobius(mut n: u64) -> i32 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// The n-th cyclotomic polynomial via `prod_{d | n} (u^d - 1)^{mu(n/d)}`.
pub fn cyclotomic(n: u64) -> ZPoly {
    assert!(n >= 1);
    let mut num = ZPoly::one();
    let mut den = ZPoly::one();
    for d in 1..=n {
        if !n.is_multiple_of(d) {
            continue;
        }
        match mobius(n / d) {
            1 => num = num.mul(&ZPoly::x_pow_minus_one(d as usize)),
            -1 => den = den.mul(&ZPoly::x_pow_minus_one(d as usize)),
            _ => {}
        }
    }
    num.exact_div(&den).expect("cyclotomic division is exact")
}

/// Indices `n` whose cyclotomic polynomial could divide a polynomial of the
/// given degree, i.e. all `n` with `phi(n) <= degree`. Uses `phi(n) >= sqrt(n/2)`
/// to bound the search.
pub fn candidate_indices(degree: usize) -> Vec<u64> {
    let limit = 2 * (degree as u64).pow(2) + 2;
    (1..=limit)
        .filter(|&n| euler_phi(n) <= degree as u64)
        .collect()
}

/// The smallest `n` such that `Phi_n` divides `p`, if any.
pub fn smallest_cyclotomic_divisor(p: &ZPoly) -> Option<u64> {
    if p.deg() == 0 {
        return None;
    }
    candidate_indices(p.deg())
        .into_iter()
        .find(|&n| p.exact_div(&cyclotomic(n)).is_some())
}
