//! Integer octonions and four-square decompositions.

/// The lexicographically smallest `(a, b, c, d)` with `a >= b >= c >= d >= 0`
/// and `a² + b² + c² + d² = m`.
pub fn four_squares(m: u64) -> (u64, u64, u64, u64) {
    let isqrt = |x: u64| {
        let mut r = (x as f64).sqrt() as u64;
        while r * r > x {
            r -= 1;
        }
        while (r + 1) * (r + 1) <= x {
            r += 1;
        }
        r
    };
    // The largest of j remaining squares is at least a j-th of their sum.
    let min_root = |x: u64, j: u64| {
        let r = isqrt(x / j);
        if j * r * r >= x {
            r
        } else {
            r + 1
        }
    };
    for a in min_root(m, 4)..=isqrt(m) {
        let ra = m - a * a;
        for b in min_root(ra, 3)..=a.min(isqrt(ra)) {
            let rb = ra - b * b;
            for c in min_root(rb, 2)..=b.min(isqrt(rb)) {
                let rc = rb - c * c;
                let d = isqrt(rc);
                if d * d == rc && d <= c {
                    return (a, b, c, d);
                }
            }
        }
    }
    unreachable!("every nonnegative integer is a sum of four squares")
}

fn cd_conj(x: &[i64]) -> Vec<i64> {
    x.iter().enumerate().map(|(i, &v)| if i == 0 { v } else { -v }).collect()
}

/// Cayley–Dickson product `(a,b)(c,d) = (ac − d̄b, da + bc̄)` on `2^j` components.
fn cd_mul(x: &[i64], y: &[i64]) -> Vec<i64> {
    let n = x.len();
    if n == 1 {
        return vec![x[0] * y[0]];
    }
    let h = n / 2;
    let (a, b) = x.split_at(h);
    let (c, d) = y.split_at(h);
    let ac = cd_mul(a, c);
    let db = cd_mul(&cd_conj(d), b);
    let da = cd_mul(d, a);
    let bc = cd_mul(b, &cd_conj(c));
    let mut out: Vec<i64> = ac.iter().zip(&db).map(|(p, q)| p - q).collect();
    out.extend(da.iter().zip(&bc).map(|(p, q)| p + q));
    out
}

pub fn octonion_mul(u: &[i64; 8], v: &[i64; 8]) -> [i64; 8] {
    let prod = cd_mul(u, v);
    let mut out = [0i64; 8];
    out.copy_from_slice(&prod);
    out
}

pub fn octonion_conj(u: &[i64; 8]) -> [i64; 8] {
    let mut out = [0i64; 8];
    out.copy_from_slice(&cd_conj(u));
    out
}

/// Sum of squares of the components.
pub fn octonion_norm(u: &[i64; 8]) -> i64 {
    u.iter().map(|x| x * x).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn e(i: usize) -> [i64; 8] {
        let mut v = [0; 8];
        v[i] = 1;
        v
    }

    fn brute_four_squares(m: u64) -> (u64, u64, u64, u64) {
        let mut all = Vec::new();
        for a in 0..=m {
            for b in 0..=a {
                for c in 0..=b {
                    for d in 0..=c {
                        if a * a + b * b + c * c + d * d == m {
                            all.push((a, b, c, d));
                        }
                    }
                }
            }
        }
        all.into_iter().min().unwrap()
    }

    #[test]
    fn four_square_examples() {
        assert_eq!(four_squares(1), (1, 0, 0, 0));
        assert_eq!(four_squares(4), (1, 1, 1, 1));
        assert_eq!(four_squares(6), (2, 1, 1, 0));
        for m in 0..60 {
            assert_eq!(four_squares(m), brute_four_squares(m), "m = {m}");
        }
    }

    #[test]
    fn unit_octonions() {
        let v = [3, -1, 4, 1, -5, 9, 2, -6];
        assert_eq!(octonion_mul(&e(0), &v), v);
        assert_eq!(octonion_mul(&v, &e(0)), v);
        let mut minus_one = [0; 8];
        minus_one[0] = -1;
        for i in 1..8 {
            assert_eq!(octonion_mul(&e(i), &e(i)), minus_one);
        }
    }

    proptest! {
        #[test]
        fn four_squares_sum(m in 0u64..100_000) {
            let (a, b, c, d) = four_squares(m);
            prop_assert_eq!(a * a + b * b + c * c + d * d, m);
            prop_assert!(a >= b && b >= c && c >= d);
        }

        #[test]
        fn norm_is_multiplicative(u in prop::array::uniform8(-20i64..20), v in prop::array::uniform8(-20i64..20)) {
            let uv = octonion_mul(&u, &v);
            prop_assert_eq!(octonion_norm(&uv), octonion_norm(&u) * octonion_norm(&v));
        }

        #[test]
        fn conjugate_gives_norm(u in prop::array::uniform8(-20i64..20)) {
            let n = octonion_mul(&octonion_conj(&u), &u);
            let mut expect = [0; 8];
            expect[0] = octonion_norm(&u);
            prop_assert_eq!(n, expect);
        }
    }
}
