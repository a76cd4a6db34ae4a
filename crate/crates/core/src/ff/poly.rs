//! Dense univariate polynomial arithmetic over a table-based finite
//! field.  Coefficients are stored little-endian (constant term first)
//! with no trailing zeros, so the zero polynomial is the empty vector.

use super::field::Ff;

pub type Poly = Vec<usize>;

pub fn trim(mut p: Poly) -> Poly {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

pub fn deg(p: &Poly) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

pub fn is_zero(p: &Poly) -> bool {
    p.is_empty()
}

pub fn add(f: &Ff, a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![0usize; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = f.add(x, y);
    }
    trim(out)
}

pub fn neg(f: &Ff, a: &Poly) -> Poly {
    a.iter().map(|&c| f.neg(c)).collect()
}

pub fn sub(f: &Ff, a: &Poly, b: &Poly) -> Poly {
    add(f, a, &neg(f, b))
}

pub fn mul(f: &Ff, a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0usize; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(ai, bj));
        }
    }
    trim(out)
}

pub fn scale(f: &Ff, c: usize, a: &Poly) -> Poly {
    trim(a.iter().map(|&x| f.mul(c, x)).collect())
}

/// Quotient and remainder of a by b (b nonzero).
pub fn divmod(f: &Ff, a: &Poly, b: &Poly) -> (Poly, Poly) {
    assert!(!b.is_empty(), "division by the zero polynomial");
    let mut rem = a.clone();
    let db = b.len() - 1;
    let lead_inv = f.inv(*b.last().unwrap());
    let mut quot = vec![0usize; a.len().saturating_sub(db)];
    while rem.len() > db {
        let shift = rem.len() - 1 - db;
        let c = f.mul(*rem.last().unwrap(), lead_inv);
        quot[shift] = c;
        for (i, &bi) in b.iter().enumerate() {
            rem[shift + i] = f.sub(rem[shift + i], f.mul(c, bi));
        }
        rem = trim(rem);
        if rem.len() <= db {
            break;
        }
    }
    (trim(quot), trim(rem))
}

pub fn rem(f: &Ff, a: &Poly, b: &Poly) -> Poly {
    divmod(f, a, b).1
}

pub fn monic(f: &Ff, a: &Poly) -> Poly {
    match a.last() {
        None => Vec::new(),
        Some(&l) => scale(f, f.inv(l), a),
    }
}

pub fn gcd(f: &Ff, a: &Poly, b: &Poly) -> Poly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, &x)
}

/// Extended gcd: (g, s, t) with s·a + t·b = g, g monic (or zero).
pub fn xgcd(f: &Ff, a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (vec![1usize], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1usize]);
    while !r1.is_empty() {
        let (q, r) = divmod(f, &r0, &r1);
        let s = sub(f, &s0, &mul(f, &q, &s1));
        let t = sub(f, &t0, &mul(f, &q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    match r0.last() {
        None => (Vec::new(), Vec::new(), Vec::new()),
        Some(&l) => {
            let li = f.inv(l);
            (scale(f, li, &r0), scale(f, li, &s0), scale(f, li, &t0))
        }
    }
}

pub fn derivative(f: &Ff, a: &Poly) -> Poly {
    let mut out = Vec::new();
    for (i, &c) in a.iter().enumerate().skip(1) {
        // multiply by i in the prime field
        let mut m = 0usize;
        for _ in 0..(i as u64 % f.p) {
            m = f.add(m, c);
        }
        out.push(m);
    }
    trim(out)
}

/// Squarefree test by gcd with the derivative (valid in odd
/// characteristic for the degrees in play, where f' = 0 forces a repeated
/// factor).
pub fn is_squarefree(f: &Ff, a: &Poly) -> bool {
    if a.is_empty() {
        return false;
    }
    let d = derivative(f, a);
    if d.is_empty() {
        return a.len() == 1; // nonzero constant
    }
    gcd(f, a, &d).len() == 1
}

pub fn eval(f: &Ff, a: &Poly, x: usize) -> usize {
    let mut acc = 0usize;
    for &c in a.iter().rev() {
        acc = f.add(f.mul(acc, x), c);
    }
    acc
}

/// Evaluate after pushing the coefficients through a subfield embedding.
pub fn eval_embedded(f_big: &Ff, emb: &[usize], a: &Poly, x: usize) -> usize {
    let mut acc = 0usize;
    for &c in a.iter().rev() {
        acc = f_big.add(f_big.mul(acc, x), emb[c]);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divmod_roundtrip() {
        let f = Ff::new(7).unwrap();
        let a = vec![3, 0, 5, 1, 2];
        let b = vec![1, 4, 1];
        let (q, r) = divmod(&f, &a, &b);
        assert_eq!(add(&f, &mul(&f, &q, &b), &r), trim(a));
        assert!(r.len() < b.len());
    }

    #[test]
    fn xgcd_bezout() {
        let f = Ff::new(5).unwrap();
        let a = vec![1, 2, 1]; // (x+1)^2
        let b = vec![4, 0, 1]; // x^2 - 1
        let (g, s, t) = xgcd(&f, &a, &b);
        assert_eq!(g, vec![1, 1]); // x + 1
        let lhs = add(&f, &mul(&f, &s, &a), &mul(&f, &t, &b));
        assert_eq!(lhs, g);
    }

    #[test]
    fn squarefree_detects_squares() {
        let f = Ff::new(5).unwrap();
        assert!(is_squarefree(&f, &vec![1, 0, 0, 1])); // x^3 + 1 over F_5
        assert!(!is_squarefree(&f, &vec![1, 2, 1])); // (x+1)^2
        assert!(is_squarefree(&f, &vec![0, 1, 0, 1])); // x^3 + x = x(x^2+1)
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn divmod_reconstructs(
                a in proptest::collection::vec(0usize..7, 0..8),
                b in proptest::collection::vec(0usize..7, 1..5),
            ) {
                let f = Ff::new(7).unwrap();
                let b = {
                    let mut b = b;
                    *b.last_mut().unwrap() = 1; // keep b nonzero
                    trim(b)
                };
                let a = trim(a);
                let (q, r) = divmod(&f, &a, &b);
                prop_assert_eq!(add(&f, &mul(&f, &q, &b), &r), a);
                prop_assert!(r.len() < b.len() || r.is_empty());
            }

            #[test]
            fn gcd_divides_both(
                a in proptest::collection::vec(0usize..5, 1..6),
                b in proptest::collection::vec(0usize..5, 1..6),
            ) {
                let f = Ff::new(5).unwrap();
                let (a, b) = (trim(a), trim(b));
                prop_assume!(!a.is_empty() || !b.is_empty());
                let g = gcd(&f, &a, &b);
                if !a.is_empty() {
                    prop_assert!(rem(&f, &a, &g).is_empty());
                }
                if !b.is_empty() {
                    prop_assert!(rem(&f, &b, &g).is_empty());
                }
            }
        }
    }

    #[test]
    fn eval_horner() {
        let f = Ff::new(7).unwrap();
        let a = vec![2, 3, 1]; // x^2 + 3x + 2
        assert_eq!(eval(&f, &a, 0), 2);
        assert_eq!(eval(&f, &a, 1), 6);
        assert_eq!(eval(&f, &a, 5), (25 + 15 + 2) % 7);
    }
}
