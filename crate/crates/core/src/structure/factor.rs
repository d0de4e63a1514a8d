//! Factorisation of rational polynomials into irreducibles over `Q`.
//!
//! The square-free part is made primitive in `Z[x]`, factored modulo a single
//! prime larger than twice a coefficient bound for its factors, and the modular
//! factors are recombined by exact trial division. Because the prime exceeds
//! the bound no Hensel lifting is needed.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::Polynomial;
use crate::rational::Rational;
use crate::rng::SplitMix64;

type ZPoly = Vec<BigInt>;

fn trim(mut p: ZPoly) -> ZPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn deg(p: &ZPoly) -> usize {
    p.len().saturating_sub(1)
}

/// Primitive integer polynomial with positive leading coefficient, up to a
/// rational scalar.
fn primitive(p: &Polynomial) -> ZPoly {
    let denom = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: ZPoly = p.coeffs().iter().map(|c| (c * Rational::from_integer(denom.clone())).to_integer()).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let sign = if ints.last().is_some_and(Signed::is_negative) { -BigInt::one() } else { BigInt::one() };
    trim(ints.into_iter().map(|c| c / &content * &sign).collect())
}

fn to_rational(p: &ZPoly) -> Polynomial {
    Polynomial::new(p.iter().map(|c| Rational::from_integer(c.clone())).collect())
}

// --- arithmetic modulo a prime -------------------------------------------------

struct Field {
    p: BigInt,
}

impl Field {
    fn red(&self, x: &BigInt) -> BigInt {
        x.mod_floor(&self.p)
    }

    fn inv(&self, x: &BigInt) -> BigInt {
        x.modpow(&(&self.p - 2u32), &self.p)
    }

    fn norm(&self, a: &[BigInt]) -> ZPoly {
        trim(a.iter().map(|c| self.red(c)).collect())
    }

    fn sub(&self, a: &ZPoly, b: &ZPoly) -> ZPoly {
        let n = a.len().max(b.len());
        let zero = BigInt::zero();
        self.norm(&(0..n).map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero)).collect::<Vec<_>>())
    }

    fn mul(&self, a: &ZPoly, b: &ZPoly) -> ZPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        self.norm(&out)
    }

    fn div_rem(&self, a: &ZPoly, b: &ZPoly) -> (ZPoly, ZPoly) {
        let db = deg(b);
        let lead_inv = self.inv(b.last().expect("non-zero divisor"));
        let mut rem = a.clone();
        if rem.len() <= db {
            return (Vec::new(), rem);
        }
        let mut quot = vec![BigInt::zero(); rem.len() - db];
        for i in (0..quot.len()).rev() {
            let c = self.red(&(&rem[i + db] * &lead_inv));
            if !c.is_zero() {
                for (j, bc) in b.iter().enumerate() {
                    rem[i + j] = self.red(&(&rem[i + j] - &c * bc));
                }
            }
            quot[i] = c;
        }
        rem.truncate(db);
        (trim(quot), trim(rem))
    }

    fn rem(&self, a: &ZPoly, b: &ZPoly) -> ZPoly {
        self.div_rem(a, b).1
    }

    fn monic(&self, a: &ZPoly) -> ZPoly {
        match a.last() {
            None => Vec::new(),
            Some(l) => {
                let li = self.inv(l);
                self.norm(&a.iter().map(|c| c * &li).collect::<Vec<_>>())
            }
        }
    }

    fn gcd(&self, a: &ZPoly, b: &ZPoly) -> ZPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    fn pow_mod(&self, base: &ZPoly, exp: &BigInt, modulus: &ZPoly) -> ZPoly {
        let mut result: ZPoly = vec![BigInt::one()];
        let mut b = self.rem(base, modulus);
        let bits = exp.bits();
        for i in 0..bits {
            if exp.bit(i) {
                result = self.rem(&self.mul(&result, &b), modulus);
            }
            if i + 1 < bits {
                b = self.rem(&self.mul(&b, &b), modulus);
            }
        }
        result
    }

    fn derivative(&self, a: &ZPoly) -> ZPoly {
        self.norm(&a.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect::<Vec<_>>())
    }

    fn random_below(&self, rng: &mut SplitMix64) -> BigInt {
        let words = (self.p.bits() / 64 + 2) as usize;
        let digits: Vec<u64> = (0..words).map(|_| rng.next_u64()).collect();
        let mut x = BigInt::zero();
        for w in digits {
            x = (x << 64) + BigInt::from(w);
        }
        self.red(&x)
    }

    /// Monic irreducible factors of a monic square-free `f`.
    fn factor_squarefree(&self, f: &ZPoly, rng: &mut SplitMix64) -> Vec<ZPoly> {
        let x: ZPoly = vec![BigInt::zero(), BigInt::one()];
        let mut rest = f.clone();
        let mut h = x.clone();
        let mut out = Vec::new();
        let mut i = 1;
        while deg(&rest) >= 2 * i {
            h = self.pow_mod(&h, &self.p, &rest);
            let g = self.gcd(&rest, &self.sub(&h, &x));
            if deg(&g) > 0 {
                out.extend(self.equal_degree(&g, i, rng));
                rest = self.div_rem(&rest, &g).0;
                h = self.rem(&h, &rest);
            }
            i += 1;
        }
        if deg(&rest) > 0 {
            out.push(self.monic(&rest));
        }
        out
    }

    fn equal_degree(&self, f: &ZPoly, d: usize, rng: &mut SplitMix64) -> Vec<ZPoly> {
        if deg(f) == d {
            return vec![self.monic(f)];
        }
        let exp = (num_traits::pow(self.p.clone(), d) - 1u32) / 2u32;
        loop {
            let a: ZPoly = trim((0..deg(f)).map(|_| self.random_below(rng)).collect());
            if deg(&a) == 0 {
                continue;
            }
            let b = self.sub(&self.pow_mod(&a, &exp, f), &vec![BigInt::one()]);
            let g = self.gcd(f, &b);
            if deg(&g) > 0 && deg(&g) < deg(f) {
                let other = self.div_rem(f, &g).0;
                let mut out = self.equal_degree(&g, d, rng);
                out.extend(self.equal_degree(&other, d, rng));
                return out;
            }
        }
    }
}

// --- primes --------------------------------------------------------------------

const WITNESSES: [u32; 20] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71];

fn is_probable_prime(n: &BigInt) -> bool {
    if *n < BigInt::from(2) {
        return false;
    }
    for &w in &WITNESSES {
        let w = BigInt::from(w);
        if *n == w {
            return true;
        }
        if (n % &w).is_zero() {
            return false;
        }
    }
    let n1 = n - 1u32;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'witness: for &w in &WITNESSES {
        let mut x = BigInt::from(w).modpow(&d, n);
        if x.is_one() || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&BigInt::from(2), n);
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Bound on the coefficients of `lc(f) · h` for any factor `h` of `f`.
fn factor_bound(f: &ZPoly) -> BigInt {
    let n = deg(f);
    let norm_sq: BigInt = f.iter().map(|c| c * c).sum();
    let norm = norm_sq.sqrt() + 1u32;
    let lead = f.last().expect("non-zero").abs();
    (BigInt::one() << n) * norm * lead
}

fn symmetric(c: &BigInt, p: &BigInt) -> BigInt {
    let r = c.mod_floor(p);
    if &r * 2u32 > *p {
        r - p
    } else {
        r
    }
}

/// Exact division in `Z[x]`; `None` unless `b` divides `a`.
fn exact_div(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    let (q, r) = to_rational(a).div_rem(&to_rational(b));
    if !r.is_zero() || q.coeffs().iter().any(|c| !c.is_integer()) {
        return None;
    }
    Some(q.coeffs().iter().map(Rational::to_integer).collect())
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn factor_primitive_squarefree(f: &ZPoly) -> Vec<ZPoly> {
    if deg(f) <= 1 {
        return vec![f.clone()];
    }
    let mut candidate = factor_bound(f) * 2u32 + 1u32;
    let field = loop {
        if candidate.is_even() {
            candidate += 1u32;
        }
        if is_probable_prime(&candidate) {
            let field = Field { p: candidate.clone() };
            let fp = field.norm(f);
            if deg(&fp) == deg(f) && deg(&field.gcd(&fp, &field.derivative(&fp))) == 0 {
                break field;
            }
        }
        candidate += 2u32;
    };
    let p = field.p.clone();
    let mut rng = SplitMix64::new(0x5eed_f00d);
    let mut modular = field.factor_squarefree(&field.monic(&field.norm(f)), &mut rng);
    let mut rest = f.clone();
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= modular.len() {
        let mut split = None;
        for subset in combinations(modular.len(), size) {
            let lead = rest.last().expect("non-zero").clone();
            let product = subset
                .iter()
                .fold(vec![lead], |acc, &i| field.mul(&acc, &modular[i]));
            let lifted: ZPoly = trim(product.iter().map(|c| symmetric(c, &p)).collect());
            let candidate = primitive(&to_rational(&lifted));
            if let Some(q) = exact_div(&rest, &candidate) {
                split = Some((subset, candidate, q));
                break;
            }
        }
        match split {
            Some((subset, factor, quotient)) => {
                found.push(factor);
                rest = primitive(&to_rational(&quotient));
                modular = modular
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, m)| m)
                    .collect();
            }
            None => size += 1,
        }
    }
    if deg(&rest) > 0 {
        found.push(rest);
    }
    found
}

/// Distinct monic irreducible factors over `Q` of a non-constant polynomial.
pub fn irreducible_factors(f: &Polynomial) -> Vec<Polynomial> {
    if f.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let squarefree = f.div_rem(&f.gcd(&f.derivative())).0;
    let mut z = primitive(&squarefree);
    let mut out = Vec::new();
    if z[0].is_zero() {
        out.push(vec![BigInt::zero(), BigInt::one()]);
        z.remove(0);
    }
    out.extend(factor_primitive_squarefree(&z));
    let mut polys: Vec<Polynomial> = out
        .into_iter()
        .filter(|p| deg(p) > 0)
        .map(|p| to_rational(&p).monic())
        .collect();
    polys.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.coeffs().cmp(b.coeffs()))
    });
    polys
}
