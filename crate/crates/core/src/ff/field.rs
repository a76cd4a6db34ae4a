//! Table-based arithmetic for GF(p^k), feasible for the small fields the
//! point counts need (q ≤ a few hundred), plus subfield embeddings.

use super::FfError;

/// GF(p^k) with full operation tables.  Elements are indices 0..q whose
/// base-p digits are the coefficients of the residue polynomial
/// (constant digit first), so 0 and 1 are the field's 0 and 1.
pub struct Ff {
    pub p: u64,
    pub k: u32,
    pub q: usize,
    /// Defining polynomial coefficients c_0..c_{k-1} of the monic
    /// irreducible x^k + Σ c_i x^i (empty for k = 1).
    pub modulus: Vec<u64>,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    sqrt: Vec<Option<u32>>,
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Multiply residue polynomials modulo x^k + Σ c_i x^i over F_p.
fn poly_mulmod(a: &[u64], b: &[u64], c: &[u64], p: u64) -> Vec<u64> {
    let k = c.len();
    let mut prod = vec![0u64; 2 * k - 1];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    for d in (k..prod.len()).rev() {
        let top = prod[d];
        if top != 0 {
            prod[d] = 0;
            for i in 0..k {
                // x^k ≡ −Σ c_i x^i
                prod[d - k + i] = (prod[d - k + i] + (p - c[i]) * top) % p;
            }
        }
    }
    prod.truncate(k);
    prod
}

/// Lexicographically least monic irreducible of degree k over F_p, as its
/// lower coefficients c_0..c_{k-1}; irreducibility by exhaustive root /
/// factor search (k ≤ 4 in practice).
fn least_irreducible(p: u64, k: u32) -> Vec<u64> {
    let kk = k as usize;
    let total = p.pow(k);
    'cand: for code in 0..total {
        let mut c = vec![0u64; kk];
        let mut x = code;
        for ci in c.iter_mut() {
            *ci = x % p;
            x /= p;
        }
        // full poly: x^k + Σ c_i x^i; test divisibility by every monic
        // poly of degree 1..k/2
        for d in 1..=(kk / 2).max(1) {
            let dtotal = p.pow(d as u32);
            for dcode in 0..dtotal {
                let mut dc = vec![0u64; d + 1];
                let mut y = dcode;
                for e in dc.iter_mut().take(d) {
                    *e = y % p;
                    y /= p;
                }
                dc[d] = 1;
                // long division of x^k + Σ c_i x^i by dc
                let mut rem: Vec<u64> = {
                    let mut f = c.clone();
                    f.push(1);
                    f
                };
                while rem.len() > d && rem.len() >= dc.len() {
                    let lead = *rem.last().unwrap();
                    if lead != 0 {
                        let shift = rem.len() - dc.len();
                        for (i, &e) in dc.iter().enumerate() {
                            rem[shift + i] = (rem[shift + i] + (p - e % p) * lead) % p;
                        }
                    }
                    rem.pop();
                }
                if rem.iter().all(|&e| e == 0) {
                    continue 'cand;
                }
            }
        }
        return c;
    }
    unreachable!("irreducible polynomial of every degree exists")
}

impl Ff {
    pub fn new(q: u64) -> Result<Ff, FfError> {
        if q < 3 || q % 2 == 0 {
            return Err(FfError::BadFieldSize(q));
        }
        let mut p = q;
        let mut k = 1u32;
        // factor q = p^k
        for cand in 2..=q {
            if q % cand == 0 {
                p = cand;
                break;
            }
        }
        if p != q {
            let mut v = q;
            k = 0;
            while v > 1 {
                if v % p != 0 {
                    return Err(FfError::BadFieldSize(q));
                }
                v /= p;
                k += 1;
            }
        }
        if !is_prime(p) {
            return Err(FfError::BadFieldSize(q));
        }
        if q > 2048 {
            return Err(FfError::Budget(format!("field size {q} exceeds table budget")));
        }
        let qs = q as usize;
        let modulus = if k == 1 { Vec::new() } else { least_irreducible(p, k) };
        let digits = |mut e: usize| -> Vec<u64> {
            let mut d = vec![0u64; k as usize];
            for di in d.iter_mut() {
                *di = (e as u64) % p;
                e /= p as usize;
            }
            d
        };
        let undigits = |d: &[u64]| -> usize {
            let mut e = 0usize;
            for &di in d.iter().rev() {
                e = e * p as usize + di as usize;
            }
            e
        };
        let mut add = vec![0u32; qs * qs];
        let mut mul = vec![0u32; qs * qs];
        let mut neg = vec![0u32; qs];
        for a in 0..qs {
            let da = digits(a);
            neg[a] = undigits(&da.iter().map(|&x| (p - x) % p).collect::<Vec<_>>()) as u32;
            for b in 0..qs {
                let db = digits(b);
                let sum: Vec<u64> = da.iter().zip(&db).map(|(&x, &y)| (x + y) % p).collect();
                add[a * qs + b] = undigits(&sum) as u32;
                let prod = if k == 1 {
                    vec![da[0] * db[0] % p]
                } else {
                    poly_mulmod(&da, &db, &modulus, p)
                };
                mul[a * qs + b] = undigits(&prod) as u32;
            }
        }
        let mut inv = vec![0u32; qs];
        let mut sqrt = vec![None; qs];
        sqrt[0] = Some(0);
        for a in 1..qs {
            for b in 1..qs {
                if mul[a * qs + b] == 1 {
                    inv[a] = b as u32;
                }
            }
            let sq = mul[a * qs + a] as usize;
            if sqrt[sq].is_none() {
                sqrt[sq] = Some(a as u32);
            }
        }
        Ok(Ff {
            p,
            k,
            q: qs,
            modulus,
            add,
            mul,
            neg,
            inv,
            sqrt,
        })
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b] as usize
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg[b] as usize)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        assert!(a != 0, "division by zero");
        self.inv[a] as usize
    }

    /// A square root if the element is a square.
    pub fn sqrt(&self, a: usize) -> Option<usize> {
        self.sqrt[a].map(|x| x as usize)
    }

    pub fn is_square(&self, a: usize) -> bool {
        self.sqrt[a].is_some()
    }

    /// Least non-square element (exists since q is odd).
    pub fn least_nonsquare(&self) -> usize {
        (1..self.q).find(|&a| !self.is_square(a)).expect("odd q has a nonsquare")
    }

    /// The canonical embedding into an extension field, as an index map:
    /// the generator goes to the lexicographically least root of the
    /// defining polynomial.
    pub fn embedding(&self, big: &Ff) -> Result<Vec<usize>, FfError> {
        if big.p != self.p || big.k % self.k != 0 {
            return Err(FfError::Budget(format!(
                "no embedding GF({}^{}) -> GF({}^{})",
                self.p, self.k, big.p, big.k
            )));
        }
        if self.k == 1 {
            // prime subfield: integer multiples of 1 have matching indices
            return Ok((0..self.q).collect());
        }
        // find a root of x^k + Σ c_i x^i in the big field
        let root = (0..big.q)
            .find(|&r| {
                let mut acc = 0usize; // value of the polynomial at r
                let mut pw = 1usize;
                for &c in &self.modulus {
                    acc = big.add(acc, big.mul(c as usize, pw));
                    pw = big.mul(pw, r);
                }
                big.add(acc, pw) == 0
            })
            .expect("defining polynomial splits in the extension");
        let mut map = vec![0usize; self.q];
        for e in 0..self.q {
            let mut digitsrem = e;
            let mut val = 0usize;
            let mut pw = 1usize;
            for _ in 0..self.k {
                let d = digitsrem % self.p as usize;
                digitsrem /= self.p as usize;
                val = big.add(val, big.mul(d, pw));
                pw = big.mul(pw, root);
            }
            map[e] = val;
        }
        Ok(map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn axioms(f: &Ff) {
        for a in 0..f.q {
            assert_eq!(f.add(a, 0), a);
            assert_eq!(f.mul(a, 1), a);
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
            for b in 0..f.q {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in 0..f.q.min(12) {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn prime_fields() {
        for q in [3u64, 5, 7] {
            let f = Ff::new(q).unwrap();
            assert_eq!((f.p, f.k), (q, 1));
            axioms(&f);
        }
    }

    #[test]
    fn gf9_and_gf49() {
        for q in [9u64, 49] {
            let f = Ff::new(q).unwrap();
            assert_eq!(f.q as u64, q);
            axioms(&f);
            // squares: exactly (q+1)/2 elements including 0
            let squares = (0..f.q).filter(|&a| f.is_square(a)).count();
            assert_eq!(squares, (f.q + 1) / 2);
        }
    }

    #[test]
    fn rejects_bad_sizes() {
        assert!(Ff::new(6).is_err());
        assert!(Ff::new(8).is_err());
        assert!(Ff::new(1).is_err());
    }

    #[test]
    fn embedding_is_ring_hom() {
        let small = Ff::new(7).unwrap();
        let big = Ff::new(49).unwrap();
        let map = small.embedding(&big).unwrap();
        assert_eq!(map[0], 0);
        assert_eq!(map[1], 1);
        for a in 0..7 {
            for b in 0..7 {
                assert_eq!(map[small.add(a, b)], big.add(map[a], map[b]));
                assert_eq!(map[small.mul(a, b)], big.mul(map[a], map[b]));
            }
        }
        let s9 = Ff::new(9).unwrap();
        let b81 = Ff::new(81).unwrap();
        let m = s9.embedding(&b81).unwrap();
        for a in 0..9 {
            for b in 0..9 {
                assert_eq!(m[s9.mul(a, b)], b81.mul(m[a], m[b]));
                assert_eq!(m[s9.add(a, b)], b81.add(m[a], m[b]));
            }
        }
    }
}
