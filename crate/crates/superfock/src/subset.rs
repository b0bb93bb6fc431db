//! Bitmask subsets of `{0, .., d-1}` and the sign bookkeeping of the exterior algebra.
//!
//! A subset `A` is stored as a `usize` with bit `k` set when mode `k` belongs to
//! it. Ordering subsets by the integer value of the mask gives the canonical
//! basis order.

/// Number of pairs `(a, b)` in `A x B` with `a > b`.
pub fn tau(a: usize, b: usize) -> u32 {
    let mut count = 0;
    let mut rest = b;
    while rest != 0 {
        let y = rest.trailing_zeros();
        count += a.checked_shr(y + 1).unwrap_or(0).count_ones();
        rest &= rest - 1;
    }
    count
}

/// `(-1)^t` as a float.
#[inline]
pub fn parity_sign(t: u32) -> f64 {
    if t & 1 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Sign of `e_A ^ e_B = sign * e_(A u B)`, zero when the sets overlap.
#[inline]
pub fn wedge_sign(a: usize, b: usize) -> f64 {
    if a & b != 0 {
        0.0
    } else {
        parity_sign(tau(a, b))
    }
}

/// Sign picked up by the involution on a basis element: `(-1)^(p(p-1)/2)`.
#[inline]
pub fn star_sign(a: usize) -> f64 {
    let p = a.count_ones();
    parity_sign(p * p.saturating_sub(1) / 2)
}

/// Number of elements of `a` strictly below `k`.
#[inline]
pub fn below(a: usize, k: usize) -> u32 {
    (a & ((1usize << k) - 1)).count_ones()
}

/// Elements of `a` in increasing order.
pub fn members(a: usize) -> impl Iterator<Item = usize> {
    let mut rest = a;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let k = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(k)
        }
    })
}

/// All submasks of `m`, from `m` down to the empty set.
pub fn submasks(m: usize) -> impl Iterator<Item = usize> {
    let mut next = Some(m);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & m) };
        Some(cur)
    })
}

/// Mask with the lowest `n` bits set.
#[inline]
pub fn full(n: usize) -> usize {
    (1usize << n) - 1
}

/// `p!` as a float.
pub fn factorial(p: usize) -> f64 {
    (1..=p).map(|k| k as f64).product()
}
