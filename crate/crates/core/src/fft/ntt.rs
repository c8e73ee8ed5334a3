//! Exact integer convolution by number-theoretic transforms over up to three
//! NTT-friendly primes, recombined with the Chinese remainder theorem.

use crate::error::{Error, Result};

/// Longest supported transform.
pub const MAX_LEN: usize = 1 << 23;

const P0: u64 = 998_244_353;
const P1: u64 = 167_772_161;
const P2: u64 = 469_762_049;
const ROOT: u64 = 3;

#[inline]
fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    r
}

fn ntt<const P: u64>(a: &mut [u64], invert: bool) {
    let p = P;
    let n = a.len();
    let mut j = 0;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            a.swap(i, j);
        }
    }
    let mut len = 2;
    while len <= n {
        let mut w = pow_mod(ROOT, (p - 1) / len as u64, p);
        if invert {
            w = pow_mod(w, p - 2, p);
        }
        let half = len / 2;
        let mut tw = Vec::with_capacity(half);
        let mut cur = 1;
        for _ in 0..half {
            tw.push(cur);
            cur = mul_mod(cur, w, p);
        }
        for chunk in a.chunks_exact_mut(len) {
            let (lo, hi) = chunk.split_at_mut(half);
            for k in 0..half {
                let u = lo[k];
                let v = hi[k] * tw[k] % P;
                lo[k] = if u + v >= p { u + v - p } else { u + v };
                hi[k] = if u >= v { u - v } else { u + p - v };
            }
        }
        len <<= 1;
    }
    if invert {
        let inv = pow_mod(n as u64, p - 2, p);
        for x in a.iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
    }
}

fn convolve_mod<const P: u64>(u: &[u64], v: &[u64], size: usize) -> Vec<u64> {
    let p = P;
    let mut fa = vec![0u64; size];
    let mut fb = vec![0u64; size];
    for (d, s) in fa.iter_mut().zip(u) {
        *d = s % p;
    }
    for (d, s) in fb.iter_mut().zip(v) {
        *d = s % p;
    }
    ntt::<P>(&mut fa, false);
    ntt::<P>(&mut fb, false);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x = *x * *y % P;
    }
    ntt::<P>(&mut fa, true);
    fa
}

fn schoolbook(u: &[u64], v: &[u64]) -> Result<Vec<u64>> {
    let mut z = vec![0u128; u.len() + v.len() - 1];
    for (i, &x) in u.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in v.iter().enumerate() {
            z[i + j] += x as u128 * y as u128;
        }
    }
    z.into_iter()
        .map(|c| u64::try_from(c).map_err(|_| Error::Overflow(format!("convolution entry {c} exceeds u64"))))
        .collect()
}

/// `z_k = sum_i u_i v_{k-i}`, exact. Output length `|u| + |v| - 1`
/// (empty if either input is empty).
pub fn convolve(u: &[u64], v: &[u64]) -> Result<Vec<u64>> {
    if u.is_empty() || v.is_empty() {
        return Ok(Vec::new());
    }
    let out_len = u.len() + v.len() - 1;
    if out_len > MAX_LEN {
        return Err(Error::CapExceeded { len: out_len as u64, cap: MAX_LEN as u64 });
    }
    if u.len().min(v.len()) <= 32 {
        return schoolbook(u, v);
    }
    let mu = *u.iter().max().unwrap() as u128;
    let mv = *v.iter().max().unwrap() as u128;
    let bound = mu.checked_mul(mv).and_then(|x| x.checked_mul(u.len().min(v.len()) as u128));
    let bound = match bound {
        Some(b) if b <= u64::MAX as u128 => b,
        _ => {
            return Err(Error::Overflow(format!(
                "convolution entries may reach {mu} * {mv} * {}, beyond u64",
                u.len().min(v.len())
            )))
        }
    };
    let size = out_len.next_power_of_two();
    let (p0, p1, p2) = (P0, P1, P2);
    let r0 = convolve_mod::<P0>(u, v, size);
    if bound < p0 as u128 {
        return Ok(r0[..out_len].to_vec());
    }
    let r1 = convolve_mod::<P1>(u, v, size);
    let inv01 = pow_mod(p0, p1 - 2, p1);
    if bound < p0 as u128 * p1 as u128 {
        return Ok((0..out_len)
            .map(|k| {
                let t = mul_mod((r1[k] + p1 - r0[k] % p1) % p1, inv01, p1);
                r0[k] + p0 * t
            })
            .collect());
    }
    let r2 = convolve_mod::<P2>(u, v, size);
    let p01 = p0 as u128 * p1 as u128;
    let inv012 = pow_mod((p01 % p2 as u128) as u64, p2 - 2, p2);
    let mut out = Vec::with_capacity(out_len);
    for k in 0..out_len {
        let t1 = mul_mod((r1[k] + p1 - r0[k] % p1) % p1, inv01, p1);
        let x01 = r0[k] as u128 + p0 as u128 * t1 as u128;
        let t2 = mul_mod((r2[k] + p2 - (x01 % p2 as u128) as u64) % p2, inv012, p2);
        let x = x01 + p01 * t2 as u128;
        out.push(x as u64);
    }
    Ok(out)
}
