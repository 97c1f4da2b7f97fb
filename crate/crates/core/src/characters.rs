//! Exact Dirichlet character arithmetic.
//!
//! Character values are stored as exponents k with chi(u) = e^(2 pi i k/N),
//! where N is the exponent of the unit group mod q. All structural queries
//! (multiplicativity, conductor, parity, enumeration order) are integer
//! computations; interval-valued complex numbers appear only when a value is
//! actually evaluated, so enumeration and labels are exactly reproducible.

use crate::complex::ComplexInterval;
use crate::error::{Error, Result};
use crate::interval::{Interval, TWO_PI};

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

pub fn moebius(n: u64) -> i64 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factorize(n) {
        let prev = out.clone();
        let mut pe = 1;
        for _ in 0..e {
            pe *= p;
            out.extend(prev.iter().map(|d| d * pe));
        }
    }
    out.sort_unstable();
    out
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

pub(crate) fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    let mut base = (b % m) as u128;
    let m = m as u128;
    let mut acc = 1u128 % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc as u64
}

/// Smallest generator of the (cyclic) unit group mod p^e, p an odd prime.
fn smallest_primitive_root(pe: u64, p: u64) -> u64 {
    let m = euler_phi(pe);
    let prime_factors = factorize(m);
    'candidate: for g in 2..pe {
        if g % p == 0 {
            continue;
        }
        for &(r, _) in &prime_factors {
            if pow_mod(g, m / r, pe) == 1 {
                continue 'candidate;
            }
        }
        return g;
    }
    unreachable!("odd prime powers always have a primitive root")
}

/// One cyclic factor of the unit group, with a discrete-log table over its
/// prime-power piece of the modulus.
struct Component {
    order: u64,
    part: u64,
    dlog: Vec<u32>,
}

const NO_DLOG: u32 = u32::MAX;

impl Component {
    fn cyclic(part: u64, generator: u64, order: u64) -> Component {
        let mut dlog = vec![NO_DLOG; part as usize];
        let mut r = 1u64;
        for j in 0..order {
            dlog[r as usize] = j as u32;
            r = (r as u128 * generator as u128 % part as u128) as u64;
        }
        Component { order, part, dlog }
    }
}

struct UnitGroup {
    components: Vec<Component>,
    exponent: u64,
}

fn unit_group(q: u64) -> UnitGroup {
    let mut components = Vec::new();
    for (p, e) in factorize(q) {
        let part = p.pow(e);
        if p == 2 {
            match e {
                1 => {}
                2 => components.push(Component::cyclic(4, 3, 2)),
                _ => {
                    // Units mod 2^e (e >= 3) are (-1)^s * 5^t.
                    let half = part >> 2;
                    let mut sign = vec![NO_DLOG; part as usize];
                    let mut five = vec![NO_DLOG; part as usize];
                    let mut r = 1u64;
                    for t in 0..half {
                        sign[r as usize] = 0;
                        five[r as usize] = t as u32;
                        let neg = part - r;
                        sign[neg as usize] = 1;
                        five[neg as usize] = t as u32;
                        r = (r as u128 * 5 % part as u128) as u64;
                    }
                    components.push(Component {
                        order: 2,
                        part,
                        dlog: sign,
                    });
                    components.push(Component {
                        order: half,
                        part,
                        dlog: five,
                    });
                }
            }
        } else {
            let g = smallest_primitive_root(part, p);
            components.push(Component::cyclic(part, g, euler_phi(part)));
        }
    }
    let exponent = components.iter().fold(1, |acc, c| lcm(acc, c.order));
    UnitGroup {
        components,
        exponent,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CharacterMeta {
    pub conductor: u64,
    /// 0 when chi(-1) = 1, 1 when chi(-1) = -1.
    pub parity: u8,
    pub is_primitive: bool,
    pub is_real: bool,
}

#[derive(Clone, Debug)]
pub struct DirichletCharacter {
    modulus: u64,
    root_order: u64,
    orders: Vec<u64>,
    exponents: Vec<u64>,
    table: Vec<Option<u64>>,
}

impl DirichletCharacter {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Denominator N of the stored exponents: chi(u) = e^(2 pi i k_u / N).
    pub fn root_order(&self) -> u64 {
        self.root_order
    }

    /// Exponent k with chi(n) = e^(2 pi i k / N), or None when gcd(n,q) > 1.
    pub fn exponent_of(&self, n: u64) -> Option<u64> {
        self.table[(n % self.modulus.max(1)) as usize]
    }

    /// Interval enclosure of chi(n); exact at quarter turns and at zero.
    pub fn value(&self, n: u64) -> ComplexInterval {
        let Some(k) = self.exponent_of(n) else {
            return ComplexInterval::ZERO;
        };
        let n_ord = self.root_order;
        if k == 0 {
            ComplexInterval::ONE
        } else if 2 * k == n_ord {
            -ComplexInterval::ONE
        } else if 4 * k == n_ord {
            ComplexInterval::I
        } else if 4 * k == 3 * n_ord {
            -ComplexInterval::I
        } else {
            let angle = Interval::from_ratio(k as i64, n_ord as i64) * *TWO_PI;
            ComplexInterval::unit_circle(angle)
        }
    }

    pub fn is_principal(&self) -> bool {
        self.exponents.iter().all(|&c| c == 0)
    }

    /// Position in the lexicographic enumeration of all characters mod q.
    pub fn index(&self) -> u64 {
        self.orders
            .iter()
            .zip(&self.exponents)
            .fold(0, |acc, (&m, &c)| acc * m + c)
    }

    pub fn label(&self) -> String {
        format!("{}.{}", self.modulus, self.index())
    }

    pub fn conjugate(&self) -> DirichletCharacter {
        let n_ord = self.root_order;
        DirichletCharacter {
            modulus: self.modulus,
            root_order: n_ord,
            orders: self.orders.clone(),
            exponents: self
                .orders
                .iter()
                .zip(&self.exponents)
                .map(|(&m, &c)| (m - c) % m)
                .collect(),
            table: self
                .table
                .iter()
                .map(|e| e.map(|k| (n_ord - k) % n_ord))
                .collect(),
        }
    }

    pub fn meta(&self) -> CharacterMeta {
        let q = self.modulus;
        // Smallest d | q such that chi is trivial on units congruent to
        // 1 mod d; non-units are skipped by the None arm.
        let conductor = divisors(q)
            .into_iter()
            .find(|&d| {
                (1..q.max(2))
                    .filter(|&u| u % d == 1 % d)
                    .all(|u| matches!(self.table[u as usize], None | Some(0)))
            })
            .unwrap_or(q);
        let parity = if q <= 2 {
            0
        } else {
            match self.table[(q - 1) as usize] {
                Some(0) => 0,
                Some(k) if 2 * k == self.root_order => 1,
                other => unreachable!("chi(-1) must be a square root of 1, got {other:?}"),
            }
        };
        let is_real = self
            .table
            .iter()
            .flatten()
            .all(|&k| k == 0 || 2 * k == self.root_order);
        CharacterMeta {
            conductor,
            parity,
            is_primitive: conductor == q,
            is_real,
        }
    }
}

/// All characters mod q in lexicographic order of their exponent vectors on
/// the fixed generators (2-power factor first, then odd primes ascending).
pub fn enumerate_all(q: u64) -> Vec<DirichletCharacter> {
    assert!(q >= 1);
    let group = unit_group(q);
    let n_ord = group.exponent;
    // Weighted discrete logs: k_u = sum_i c_i * weight_i(u) mod N.
    let size = q.max(1) as usize;
    let mut weights: Vec<Option<Vec<u64>>> = vec![None; size];
    'residue: for u in 0..q.max(1) {
        if q == 1 || gcd(u, q) == 1 {
            let mut w = Vec::with_capacity(group.components.len());
            for comp in &group.components {
                let d = comp.dlog[(u % comp.part) as usize];
                if d == NO_DLOG {
                    continue 'residue;
                }
                w.push(d as u64 * (n_ord / comp.order) % n_ord);
            }
            weights[u as usize] = Some(w);
        }
    }
    let orders: Vec<u64> = group.components.iter().map(|c| c.order).collect();
    let count: u64 = orders.iter().product();
    let mut out = Vec::with_capacity(count as usize);
    let mut tuple = vec![0u64; orders.len()];
    loop {
        let table: Vec<Option<u64>> = weights
            .iter()
            .map(|w| {
                w.as_ref().map(|wv| {
                    let mut k = 0u128;
                    for (c, wt) in tuple.iter().zip(wv) {
                        k += *c as u128 * *wt as u128;
                    }
                    (k % n_ord as u128) as u64
                })
            })
            .collect();
        out.push(DirichletCharacter {
            modulus: q,
            root_order: n_ord,
            orders: orders.clone(),
            exponents: tuple.clone(),
            table,
        });
        // Odometer increment, least-significant position last.
        let mut pos = orders.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            tuple[pos] += 1;
            if tuple[pos] < orders[pos] {
                break;
            }
            tuple[pos] = 0;
        }
    }
}

/// Primitive characters mod q in enumeration order. With `one_per_pair`,
/// keeps only the lexicographically earlier member of each conjugate pair
/// (real characters are self-paired and always kept).
pub fn enumerate_primitive(q: u64, one_per_pair: bool) -> Vec<DirichletCharacter> {
    enumerate_all(q)
        .into_iter()
        .filter(|chi| chi.meta().is_primitive)
        .filter(|chi| !one_per_pair || chi.index() <= chi.conjugate().index())
        .collect()
}

/// Number of primitive characters mod q, by Moebius inversion over divisors.
pub fn primitive_count(q: u64) -> u64 {
    divisors(q)
        .into_iter()
        .map(|d| moebius(q / d) * euler_phi(d) as i64)
        .sum::<i64>()
        .max(0) as u64
}

/// Gauss sum tau(chi) and the root number epsilon(chi) = tau/(i^a sqrt q).
pub fn gauss_root(chi: &DirichletCharacter) -> Result<(ComplexInterval, ComplexInterval)> {
    let meta = chi.meta();
    let q = chi.modulus();
    if !meta.is_primitive || q < 2 {
        return Err(Error::NotPrimitive {
            conductor: meta.conductor,
            modulus: q,
        });
    }
    let n_ord = chi.root_order();
    let common = n_ord as i64 * q as i64;
    let mut tau = ComplexInterval::ZERO;
    for u in 1..q {
        if let Some(k) = chi.exponent_of(u) {
            // chi(u) e^(2 pi i u/q) = e^(2 pi i (k q + u N)/(N q)), exactly.
            let num = (k as i64 * q as i64 + u as i64 * n_ord as i64) % common;
            let angle = Interval::from_ratio(num, common) * *TWO_PI;
            tau = tau + ComplexInterval::unit_circle(angle);
        }
    }
    let sqrt_q = ComplexInterval::from_real(Interval::point(q as f64).sqrt()?);
    let denom = if meta.parity == 1 {
        sqrt_q.mul_i()
    } else {
        sqrt_q
    };
    let eps = tau.checked_div(denom)?;
    Ok((tau, eps))
}
