//! Desk-scale factorization over Q.
//!
//! Squarefree decomposition, rational-root extraction and Kronecker
//! interpolation for the remaining factors. The degree is capped: every
//! polynomial this crate needs to split is small, and general factorization
//! is out of scope.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::AlgebraError;
use crate::exactalg::rat::{Rat, RatField};
use crate::exactalg::ring::{Field, Ring};
use crate::exactalg::upoly::UPoly;

pub const DESK_DEGREE_BOUND: u32 = 12;
const VALUE_BOUND_DIGITS: usize = 18;
const COMBINATION_BOUND: u64 = 2_000_000;

pub type QPoly = UPoly<RatField>;

/// A factorization `constant * prod factor_i ^ mult_i` into primitive
/// integer polynomials with positive leading coefficients, irreducible
/// over Q, sorted canonically.
#[derive(Clone, Debug, PartialEq)]
pub struct Factorization {
    pub constant: Rat,
    pub factors: Vec<(QPoly, u32)>,
}

impl Factorization {
    pub fn product(&self) -> QPoly {
        let mut acc = QPoly::constant(RatField, self.constant.clone());
        for (f, m) in &self.factors {
            acc = acc.mul(&f.pow(*m));
        }
        acc
    }
}

/// Clear denominators and the integer content; make the leading coefficient
/// positive. Returns (primitive polynomial, scalar) with
/// input = scalar * primitive.
pub fn primitive_int_poly(f: &QPoly) -> (QPoly, Rat) {
    if f.is_zero() {
        return (f.clone(), Rat::from_int(1));
    }
    let mut den_lcm = BigInt::one();
    for c in &f.coeffs {
        den_lcm = den_lcm.lcm(c.denom());
    }
    let mut content = BigInt::zero();
    for c in &f.coeffs {
        content = content.gcd(&(c.numer() * (&den_lcm / c.denom())));
    }
    let mut scale = Rat(num_rational::BigRational::new(den_lcm, content));
    let mut g = f.scale(&scale);
    if g.leading().is_negative() {
        g = g.neg();
        scale = RatField.neg(&scale);
    }
    (g, RatField.inv(&scale).expect("nonzero scale"))
}

fn divisors_with_sign(n: &BigInt) -> Result<Vec<BigInt>, AlgebraError> {
    let a = n.abs();
    if a.is_zero() {
        return Err(AlgebraError::FactorSearchExhausted(
            "divisor search at a root".into(),
        ));
    }
    if a.to_string().len() > VALUE_BOUND_DIGITS {
        return Err(AlgebraError::FactorSearchExhausted(format!(
            "evaluation value too large: {a}"
        )));
    }
    // trial-division factorization; values are desk-sized by the bound above
    let mut rest = a.clone();
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        let mut e = 0;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        if e > 0 {
            primes.push((p.clone(), e));
        }
        p += if p == BigInt::from(2) { BigInt::one() } else { BigInt::from(2) };
    }
    if rest > BigInt::one() {
        primes.push((rest, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    let mut out = Vec::with_capacity(divs.len() * 2);
    for d in divs {
        out.push(-&d);
        out.push(d);
    }
    Ok(out)
}

/// All rational roots of f, via the classical p/q divisor test.
pub fn rational_roots(f: &QPoly) -> Result<Vec<Rat>, AlgebraError> {
    if f.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let (g, _) = primitive_int_poly(f);
    if g.deg() == 0 {
        return Ok(vec![]);
    }
    let mut roots = Vec::new();
    // strip the root at zero
    let mut h = g.clone();
    while RatField.is_zero(&h.coeff(0)) {
        if !roots.contains(&Rat::from_int(0)) {
            roots.push(Rat::from_int(0));
        }
        h = h.exact_div(&QPoly::var(RatField))?;
        if h.deg() == 0 {
            roots.sort();
            return Ok(roots);
        }
    }
    let a0 = h.coeff(0).numer().clone();
    let an = h.leading().numer().clone();
    for p in divisors_with_sign(&a0)? {
        for q in divisors_with_sign(&an)? {
            if q <= BigInt::zero() {
                continue;
            }
            if p.gcd(&q) != BigInt::one() {
                continue;
            }
            let cand = Rat(num_rational::BigRational::new(p.clone(), q.clone()));
            if RatField.is_zero(&h.eval(&cand)) && !roots.contains(&cand) {
                roots.push(cand);
            }
        }
    }
    roots.sort();
    Ok(roots)
}

/// Lagrange interpolation through integer nodes.
fn interpolate(points: &[(Rat, Rat)]) -> QPoly {
    let ring = RatField;
    let mut acc = QPoly::zero(ring);
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis = QPoly::constant(ring, yi.clone());
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let denom = ring.sub(xi, xj);
            let inv = ring.inv(&denom).expect("distinct nodes");
            // (x - xj) / (xi - xj)
            let lin = QPoly::new(ring, vec![ring.neg(xj), ring.one()]).scale(&inv);
            basis = basis.mul(&lin);
        }
        acc = acc.add(&basis);
    }
    acc
}

/// Find one nontrivial factor of a squarefree primitive integer polynomial
/// with no rational roots, by Kronecker interpolation. Returns None if
/// irreducible.
fn kronecker_factor(f: &QPoly) -> Result<Option<QPoly>, AlgebraError> {
    let n = f.deg();
    for d in 2..=(n / 2) {
        let xs: Vec<Rat> = (0..=d as i64)
            .map(|i| {
                // 0, 1, -1, 2, -2, ...
                let k = (i + 1) / 2;
                Rat::from_int(if i % 2 == 1 { k } else { -k })
            })
            .collect();
        let values: Vec<BigInt> = xs
            .iter()
            .map(|x| {
                let v = f.eval(x);
                debug_assert!(v.is_integer());
                v.numer().clone()
            })
            .collect();
        let div_lists: Vec<Vec<BigInt>> = values
            .iter()
            .map(|v| divisors_with_sign(v))
            .collect::<Result<_, _>>()?;
        let mut combos: u64 = 1;
        for l in &div_lists {
            combos = combos.saturating_mul(l.len() as u64);
        }
        if combos > COMBINATION_BOUND {
            return Err(AlgebraError::FactorSearchExhausted(format!(
                "kronecker search space {combos} exceeds bound"
            )));
        }
        // fix the sign of the first choice: g and -g generate the same factor
        let mut idx = vec![0usize; div_lists.len()];
        let first_positive: Vec<BigInt> = div_lists[0]
            .iter()
            .filter(|d| d.is_positive())
            .cloned()
            .collect();
        'outer: loop {
            let choice: Vec<&BigInt> = idx
                .iter()
                .enumerate()
                .map(|(i, &k)| {
                    if i == 0 {
                        &first_positive[k]
                    } else {
                        &div_lists[i][k]
                    }
                })
                .collect();
            let pts: Vec<(Rat, Rat)> = xs
                .iter()
                .zip(&choice)
                .map(|(x, y)| (x.clone(), Rat::from_bigint((*y).clone())))
                .collect();
            let cand = interpolate(&pts);
            if cand.degree() == Some(d) {
                let (g, _) = primitive_int_poly(&cand);
                if g.deg() == d {
                    if let Ok(q) = f.exact_div(&g) {
                        let _ = q;
                        return Ok(Some(g));
                    }
                }
            }
            // advance odometer
            for i in 0..idx.len() {
                let cap = if i == 0 { first_positive.len() } else { div_lists[i].len() };
                idx[i] += 1;
                if idx[i] < cap {
                    continue 'outer;
                }
                idx[i] = 0;
            }
            break;
        }
    }
    Ok(None)
}

fn factor_squarefree(f: &QPoly) -> Result<Vec<QPoly>, AlgebraError> {
    let (mut g, _) = primitive_int_poly(f);
    let mut out = Vec::new();
    // linear factors from rational roots
    for r in rational_roots(&g)? {
        // x - r, made integer-primitive: q x - p
        let lin = QPoly::new(RatField, vec![RatField.neg(&r), RatField.one()]);
        let (lin, _) = primitive_int_poly(&lin);
        while let Ok(q) = g.exact_div(&lin) {
            out.push(lin.clone());
            g = primitive_int_poly(&q).0;
            if g.deg() == 0 {
                break;
            }
        }
    }
    // degrees 2 and 3 without rational roots are irreducible
    while g.deg() >= 4 {
        match kronecker_factor(&g)? {
            Some(fac) => {
                g = primitive_int_poly(&g.exact_div(&fac)?).0;
                out.push(fac);
            }
            None => break,
        }
    }
    if g.deg() >= 1 {
        out.push(g);
    }
    out.sort_by(canonical_poly_order);
    Ok(out)
}

fn canonical_poly_order(a: &QPoly, b: &QPoly) -> std::cmp::Ordering {
    a.deg()
        .cmp(&b.deg())
        .then_with(|| {
            for i in (0..=a.deg()).rev() {
                let o = a.coeff(i).cmp(&b.coeff(i));
                if o != std::cmp::Ordering::Equal {
                    return o;
                }
            }
            std::cmp::Ordering::Equal
        })
}

/// Factor a univariate rational polynomial into Q-irreducible parts.
/// Degree is capped at [`DESK_DEGREE_BOUND`].
pub fn factor_desk(f: &QPoly) -> Result<Factorization, AlgebraError> {
    if f.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let deg = f.deg() as u32;
    if deg > DESK_DEGREE_BOUND {
        return Err(AlgebraError::DegreeAboveDeskBound(deg, DESK_DEGREE_BOUND));
    }
    if deg == 0 {
        return Ok(Factorization { constant: f.coeff(0), factors: vec![] });
    }
    let mut factors: Vec<(QPoly, u32)> = Vec::new();
    for (sf, mult) in f.squarefree_decomposition()? {
        for irr in factor_squarefree(&sf)? {
            if let Some(slot) = factors.iter_mut().find(|(g, _)| *g == irr) {
                slot.1 += mult;
            } else {
                factors.push((irr, mult));
            }
        }
    }
    factors.sort_by(|(a, _), (b, _)| canonical_poly_order(a, b));
    // pin the constant so the product is exactly f
    let prod = factors
        .iter()
        .fold(QPoly::one(RatField), |acc, (g, m)| acc.mul(&g.pow(*m)));
    let constant = RatField.div(f.leading(), prod.leading())?;
    let check = prod.scale(&constant);
    debug_assert_eq!(&check, f, "factorization product mismatch");
    Ok(Factorization { constant, factors })
}
