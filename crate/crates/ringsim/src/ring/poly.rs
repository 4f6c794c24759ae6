//! Dense polynomials over `F_p`, just enough for irreducibility tests.

type Poly = Vec<u64>;

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime: Fermat.
    let mut base = a % p;
    let mut exp = p - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn rem(a: &[u64], m: &[u64], p: u64) -> Poly {
    let mut a = trim(a.to_vec());
    let m = trim(m.to_vec());
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while a.len() > dm && !a.is_empty() {
        let da = a.len() - 1;
        let c = a[da] * lead_inv % p;
        for (i, &mi) in m.iter().enumerate() {
            let j = da - dm + i;
            a[j] = (a[j] + p - c * mi % p) % p;
        }
        a = trim(a);
    }
    a
}

fn mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    rem(&out, m, p)
}

fn pow_mod(a: &[u64], mut exp: u64, m: &[u64], p: u64) -> Poly {
    let mut base = rem(a, m, p);
    let mut acc = vec![1u64];
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(&acc, &base, m, p);
        }
        base = mul_mod(&base, &base, m, p);
        exp >>= 1;
    }
    acc
}

fn gcd(a: &[u64], b: &[u64], p: u64) -> Poly {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn sub_x(a: &[u64], p: u64) -> Poly {
    let mut out = a.to_vec();
    if out.len() < 2 {
        out.resize(2, 0);
    }
    out[1] = (out[1] + p - 1) % p;
    trim(out)
}

/// Rabin's test for a monic `f` (low-to-high, reduced mod `p`).
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let f = trim(f.to_vec());
    let n = f.len() - 1;
    if n <= 1 {
        return n == 1;
    }
    // frob[i] = x^{p^i} mod f
    let mut frob = vec![rem(&[0, 1], &f, p)];
    for i in 1..=n {
        let next = pow_mod(&frob[i - 1], p, &f, p);
        frob.push(next);
    }
    if !sub_x(&frob[n], p).is_empty() {
        return false;
    }
    let primes = super::factorize(n as u64);
    primes.iter().all(|&(q, _)| {
        let g = gcd(&f, &sub_x(&frob[n / q as usize], p), p);
        g.len() == 1
    })
}
