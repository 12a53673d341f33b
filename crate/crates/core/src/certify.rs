//! Pseudo-Anosov certificates from the homology action.
//!
//! On the torus the homology action decides everything: a class is Anosov
//! exactly when `|trace| > 2`. For genus at least two only a one-sided
//! sufficient test is possible from homology, in the style of the
//! Casson–Bleiler criterion: if the characteristic polynomial of the action
//! is irreducible over the rationals, has no cyclotomic factor and is not a
//! polynomial in `t^k` for any `k > 1`, the class is pseudo-Anosov. When any
//! of the three checks fails the certificate is `inconclusive`, never
//! `certified-not-pA` — homology cannot refute the property in genus >= 2,
//! and every report says so explicitly via the `one_sided` flag.
//!
//! Irreducibility over `Q` is decided without a computer-algebra dependency:
//! a Rabin irreducibility test modulo small primes serves as a fast
//! sufficient path, and otherwise an exhaustive search for monic integer
//! divisors inside the Mignotte coefficient bounds settles the question.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::mapping_class::MappingClass;
use crate::IntPolynomial;

/// Primes for the sufficient "irreducible mod p" path.
const FAST_PATH_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "certified-pA")]
    CertifiedPseudoAnosov,
    #[serde(rename = "certified-not-pA")]
    CertifiedNotPseudoAnosov,
    #[serde(rename = "inconclusive")]
    Inconclusive,
}

/// One named check with its outcome and a human-readable explanation.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CertCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CertCheck {
    fn new(name: &str, passed: bool, detail: String) -> Self {
        Self {
            name: name.to_string(),
            passed,
            detail,
        }
    }
}

/// Certificate for the pseudo-Anosov property of a monodromy.
///
/// `certified-not-pA` is only ever produced by the torus trace test; for
/// genus >= 2 the verdict is `certified-pA` or `inconclusive` and
/// `one_sided` is set.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PACertificate {
    pub verdict: Verdict,
    pub checks: Vec<CertCheck>,
    pub one_sided: bool,
}

impl PACertificate {
    pub fn check(&self, name: &str) -> Option<&CertCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub fn certify_pseudo_anosov(f: &MappingClass) -> PACertificate {
    if f.genus() == 1 {
        let trace = f.trace();
        let anosov = trace.abs() > BigInt::from(2);
        let detail = if anosov {
            format!("trace = {trace}, |trace| > 2: Anosov")
        } else {
            format!("trace = {trace}, |trace| <= 2: periodic or reducible")
        };
        return PACertificate {
            verdict: if anosov {
                Verdict::CertifiedPseudoAnosov
            } else {
                Verdict::CertifiedNotPseudoAnosov
            },
            checks: vec![CertCheck::new("torus-trace", anosov, detail)],
            one_sided: false,
        };
    }

    let poly = f
        .matrix()
        .characteristic_polynomial()
        .expect("monodromy matrices are square");
    let degree = poly.degree().expect("characteristic polynomial is monic");

    let irreducible_check = match irreducible_over_q(&poly) {
        Irreducibility::Irreducible { witness } => CertCheck::new(
            "irreducible",
            true,
            format!("char poly {poly} is irreducible over Q ({witness})"),
        ),
        Irreducibility::Reducible { factor } => CertCheck::new(
            "irreducible",
            false,
            format!("reducible char poly: ({factor}) divides ({poly})"),
        ),
    };

    let cyclotomic_check = match cyclotomic_factor(&poly) {
        None => CertCheck::new(
            "cyclotomic-free",
            true,
            format!("no cyclotomic polynomial of degree <= {degree} divides the char poly"),
        ),
        Some(n) => CertCheck::new(
            "cyclotomic-free",
            false,
            format!("the {n}-th cyclotomic polynomial divides the char poly"),
        ),
    };

    let power_check = match power_substitution(&poly) {
        None => CertCheck::new(
            "not-power-substitution",
            true,
            "char poly is not a polynomial in t^k for any k > 1".to_string(),
        ),
        Some(k) => CertCheck::new(
            "not-power-substitution",
            false,
            format!("char poly is a polynomial in t^{k}"),
        ),
    };

    let checks = vec![irreducible_check, cyclotomic_check, power_check];
    let verdict = if checks.iter().all(|c| c.passed) {
        Verdict::CertifiedPseudoAnosov
    } else {
        Verdict::Inconclusive
    };
    PACertificate {
        verdict,
        checks,
        one_sided: true,
    }
}

/// Outcome of the rational irreducibility decision for a monic polynomial.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Irreducibility {
    Irreducible { witness: String },
    Reducible { factor: IntPolynomial },
}

/// Decides irreducibility over `Q` for a monic integer polynomial.
pub fn irreducible_over_q(poly: &IntPolynomial) -> Irreducibility {
    debug_assert!(poly.is_monic());
    let degree = poly.degree().expect("nonzero polynomial");
    if degree <= 1 {
        return Irreducibility::Irreducible {
            witness: "degree <= 1".to_string(),
        };
    }
    if poly.coeff(0).is_zero() {
        return Irreducibility::Reducible {
            factor: IntPolynomial::monomial(BigInt::one(), 1),
        };
    }
    for p in FAST_PATH_PRIMES {
        if irreducible_mod_p(poly, p) {
            return Irreducibility::Irreducible {
                witness: format!("irreducible mod {p}"),
            };
        }
    }
    match find_monic_factor(poly) {
        Some(factor) => Irreducibility::Reducible { factor },
        None => Irreducibility::Irreducible {
            witness: format!(
                "no monic divisor of degree <= {} within the Mignotte coefficient bounds",
                degree / 2
            ),
        },
    }
}

/// Smallest `n` such that the `n`-th cyclotomic polynomial divides `poly`.
///
/// Scans `n <= 2 deg^2`, which covers every candidate since
/// `phi(n) >= sqrt(n/2)`.
pub fn cyclotomic_factor(poly: &IntPolynomial) -> Option<usize> {
    let degree = poly.degree()?;
    if degree == 0 {
        return None;
    }
    let mut memo = HashMap::new();
    for n in 1..=2 * degree * degree {
        if euler_phi(n) > degree {
            continue;
        }
        if poly.exact_div(&cyclotomic_memo(n, &mut memo)).is_some() {
            return Some(n);
        }
    }
    None
}

/// The `n`-th cyclotomic polynomial, by exact division of `t^n - 1` by the
/// cyclotomic polynomials of the proper divisors of `n`.
pub fn cyclotomic_polynomial(n: usize) -> IntPolynomial {
    cyclotomic_memo(n, &mut HashMap::new())
}

fn cyclotomic_memo(n: usize, memo: &mut HashMap<usize, IntPolynomial>) -> IntPolynomial {
    assert!(n > 0);
    if let Some(hit) = memo.get(&n) {
        return hit.clone();
    }
    let mut result = IntPolynomial::power_minus_one(n);
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_memo(d, memo);
            result = result
                .exact_div(&phi_d)
                .expect("cyclotomic polynomials divide t^n - 1 exactly");
        }
    }
    memo.insert(n, result.clone());
    result
}

pub fn euler_phi(mut n: usize) -> usize {
    let mut phi = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            phi -= phi / p;
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    phi
}

/// Smallest `k > 1` dividing the degree such that every exponent in the
/// support of `poly` is a multiple of `k`.
pub fn power_substitution(poly: &IntPolynomial) -> Option<usize> {
    let degree = poly.degree()?;
    (2..=degree)
        .filter(|k| degree % k == 0)
        .find(|&k| poly.support().iter().all(|&e| e % k == 0))
}

// ---------------------------------------------------------------------------
// Rabin irreducibility test modulo a small prime
// ---------------------------------------------------------------------------

/// Dense polynomial over `Z/p` with ascending coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
struct PolyZp {
    p: u64,
    c: Vec<u64>,
}

impl PolyZp {
    fn from_int_poly(poly: &IntPolynomial, p: u64) -> Self {
        let pb = BigInt::from(p);
        let c = poly
            .coeffs()
            .iter()
            .map(|v| v.mod_floor(&pb).to_u64().expect("residue fits"))
            .collect();
        Self { p, c }.trimmed()
    }

    fn x(p: u64) -> Self {
        Self { p, c: vec![0, 1] }
    }

    fn trimmed(mut self) -> Self {
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    fn sub(&self, other: &Self) -> Self {
        let n = self.c.len().max(other.c.len());
        let c = (0..n)
            .map(|i| {
                let a = self.c.get(i).copied().unwrap_or(0);
                let b = other.c.get(i).copied().unwrap_or(0);
                (a + self.p - b) % self.p
            })
            .collect();
        Self { p: self.p, c }.trimmed()
    }

    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self {
                p: self.p,
                c: vec![],
            };
        }
        let mut c = vec![0u64; self.c.len() + other.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.c.iter().enumerate() {
                c[i + j] = (c[i + j] + a * b) % self.p;
            }
        }
        Self { p: self.p, c }.trimmed()
    }

    /// Remainder modulo a polynomial with invertible leading coefficient.
    fn rem(&self, modulus: &Self) -> Self {
        let d = modulus.degree().expect("nonzero modulus");
        let lead_inv = mod_inverse(*modulus.c.last().unwrap(), self.p);
        let mut c = self.c.clone();
        while c.len() > d {
            let top = c.len() - 1;
            let head = c[top];
            if head != 0 {
                let q = head * lead_inv % self.p;
                for (i, &m) in modulus.c.iter().enumerate() {
                    let idx = top - d + i;
                    c[idx] = (c[idx] + self.p - q * m % self.p) % self.p;
                }
            }
            debug_assert_eq!(c[top], 0);
            c.pop();
        }
        Self { p: self.p, c }.trimmed()
    }

    /// `self^e mod modulus` by square and multiply.
    fn pow_mod(&self, mut e: u64, modulus: &Self) -> Self {
        let mut base = self.rem(modulus);
        let mut acc = Self {
            p: self.p,
            c: vec![1],
        };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            e >>= 1;
        }
        acc
    }

    fn gcd(a: &Self, b: &Self) -> Self {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // p is prime and a != 0 mod p; Fermat.
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// Rabin's criterion: monic `f` of degree `n` is irreducible over `F_p` iff
/// `x^{p^n} = x (mod f)` and `gcd(x^{p^{n/q}} - x, f) = 1` for every prime
/// `q | n`.
fn irreducible_mod_p(poly: &IntPolynomial, p: u64) -> bool {
    let n = poly.degree().expect("nonzero polynomial");
    debug_assert!(n >= 2);
    let f = PolyZp::from_int_poly(poly, p);
    if f.degree() != Some(n) {
        return false;
    }
    let x = PolyZp::x(p);
    let x_mod_f = x.rem(&f);
    let checkpoints: HashSet<usize> = prime_divisors(n).into_iter().map(|q| n / q).collect();
    let mut frob = x_mod_f.clone();
    for i in 1..=n {
        frob = frob.pow_mod(p, &f);
        if checkpoints.contains(&i) {
            let g = PolyZp::gcd(&frob.sub(&x_mod_f), &f);
            if g.degree() != Some(0) {
                return false;
            }
        }
    }
    frob == x_mod_f
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut divs = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            divs.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        divs.push(n);
    }
    divs
}

// ---------------------------------------------------------------------------
// Exhaustive monic divisor search within Mignotte bounds
// ---------------------------------------------------------------------------

/// Finds a monic factor of degree `<= deg/2`, or proves there is none.
///
/// Candidate coefficients range over the Mignotte box
/// `|g_i| <= C(k-1, i) ||p||_2 + C(k-1, i-1)`; candidates are pruned by the
/// divisibilities `g(0) | p(0)`, `g(1) | p(1)` and `g(-1) | p(-1)` before
/// attempting an exact division. Small coefficients are tried first so that
/// genuinely reducible inputs are settled quickly.
fn find_monic_factor(poly: &IntPolynomial) -> Option<IntPolynomial> {
    let n = poly.degree()?;
    let p0 = poly.coeff(0);
    debug_assert!(!p0.is_zero());
    let p1 = poly.eval(&BigInt::one());
    let pm1 = poly.eval(&-BigInt::one());
    let norm = l2_norm_ceil(poly);
    for k in 1..=n / 2 {
        let bounds: Vec<BigInt> = (0..k)
            .map(|i| binomial(k - 1, i) * &norm + binomial_or_zero(k - 1, i))
            .collect();
        let mut coeffs = vec![BigInt::zero(); k];
        if let Some(g) = search_factor(poly, &p0, &p1, &pm1, &bounds, &mut coeffs, 0) {
            return Some(g);
        }
    }
    None
}

fn binomial_or_zero(n: usize, i: usize) -> BigInt {
    if i == 0 {
        BigInt::zero() // stands for C(n, -1)
    } else {
        binomial(n, i - 1)
    }
}

fn search_factor(
    poly: &IntPolynomial,
    p0: &BigInt,
    p1: &BigInt,
    pm1: &BigInt,
    bounds: &[BigInt],
    coeffs: &mut Vec<BigInt>,
    pos: usize,
) -> Option<IntPolynomial> {
    let k = bounds.len();
    if pos == k {
        let mut g_coeffs = coeffs.clone();
        g_coeffs.push(BigInt::one());
        let g = IntPolynomial::new(g_coeffs);
        if !divides_or_zero(&g.eval(&BigInt::one()), p1) {
            return None;
        }
        if !divides_or_zero(&g.eval(&-BigInt::one()), pm1) {
            return None;
        }
        return poly.exact_div(&g).map(|_| g);
    }
    let bound = bounds[pos].to_i64().unwrap_or(i64::MAX);
    for value in spiral(bound) {
        if pos == 0 {
            // A factor's constant term divides p(0) != 0.
            if value == 0 || !(p0 % BigInt::from(value)).is_zero() {
                continue;
            }
        }
        coeffs[pos] = BigInt::from(value);
        if let Some(g) = search_factor(poly, p0, p1, pm1, bounds, coeffs, pos + 1) {
            return Some(g);
        }
    }
    coeffs[pos] = BigInt::zero();
    None
}

/// `d | v`, treating `v = 0` as divisible by everything and `d = 0` as
/// dividing only zero.
fn divides_or_zero(d: &BigInt, v: &BigInt) -> bool {
    if v.is_zero() {
        return true;
    }
    if d.is_zero() {
        return false;
    }
    (v % d).is_zero()
}

/// `0, 1, -1, 2, -2, ..., bound, -bound`
fn spiral(bound: i64) -> impl Iterator<Item = i64> {
    std::iter::once(0).chain((1..=bound).flat_map(|v| [v, -v]))
}

fn l2_norm_ceil(poly: &IntPolynomial) -> BigInt {
    let sum: BigInt = poly.coeffs().iter().map(|c| c * c).sum();
    let root = sum.sqrt();
    if &root * &root < sum {
        root + 1
    } else {
        root
    }
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k.min(n - k) {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}
