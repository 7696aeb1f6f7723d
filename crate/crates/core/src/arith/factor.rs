//! Polynomial factorization at desk scale: Cantor–Zassenhaus over finite
//! fields, bounded Zassenhaus over the rationals (degree cap 8, height cap
//! 1e9), and a root-driven fallback over rational function fields.

use crate::arith::field::{FieldDescriptor, FieldElement, Repr};
use crate::arith::finite::FqElem;
use crate::arith::poly::Polynomial;
use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;

pub const Q_DEGREE_CAP: usize = 8;
pub const Q_HEIGHT_CAP: u64 = 1_000_000_000;

#[derive(Clone, Debug)]
pub struct Factorization {
    pub unit: FieldElement,
    pub factors: Vec<(Polynomial, u32)>,
}

impl Factorization {
    /// unit * prod factors^mult
    pub fn product(&self) -> Result<Polynomial> {
        let field = &self.unit.field;
        let var = self
            .factors
            .first()
            .map(|(f, _)| f.var.clone())
            .unwrap_or_else(|| "x".into());
        let mut acc = Polynomial::constant(field, &var, self.unit.clone());
        for (f, m) in &self.factors {
            acc = acc.mul(&f.pow(*m)?)?;
        }
        Ok(acc)
    }
}

/// Canonical order on factors: degree, then lexicographic coefficients
/// from the top degree down.
fn factor_key(f: &Polynomial) -> (usize, Vec<String>) {
    let d = f.degree().unwrap_or(0);
    let coeffs: Vec<String> = (0..=d).rev().map(|i| format!("{}", f.coeff(i))).collect();
    (d, coeffs)
}

fn sort_factors(factors: &mut [(Polynomial, u32)]) {
    factors.sort_by(|a, b| factor_key(&a.0).cmp(&factor_key(&b.0)));
}

/// Factor a nonzero univariate polynomial over F_q or Q into irreducibles.
pub fn gf_factor(f: &Polynomial) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    match &f.field {
        FieldDescriptor::Finite { .. } => factor_fq(f),
        FieldDescriptor::Rationals => factor_q(f),
        other => Err(Error::UnsupportedField(format!(
            "factorization over {other} is not supported"
        ))),
    }
}

// ---------------------------------------------------------------------------
// finite fields
// ---------------------------------------------------------------------------

fn fq_card(field: &FieldDescriptor) -> (u64, u32) {
    match field {
        FieldDescriptor::Finite { p, k } => (*p, *k),
        _ => unreachable!(),
    }
}

fn factor_fq(f: &Polynomial) -> Result<Factorization> {
    let unit = f.leading().unwrap().clone();
    let monic = f.monic()?;
    let mut factors = vec![];
    for (g, m) in squarefree_fq(&monic)? {
        for (h, d) in distinct_degree(&g)? {
            for irr in equal_degree(&h, d)? {
                factors.push((irr, m));
            }
        }
    }
    sort_factors(&mut factors);
    Ok(Factorization { unit, factors })
}

/// Squarefree decomposition in characteristic p (handles f = g(x^p)).
fn squarefree_fq(f: &Polynomial) -> Result<Vec<(Polynomial, u32)>> {
    let (p, k) = fq_card(&f.field);
    if f.degree() == Some(0) || f.degree().is_none() {
        return Ok(vec![]);
    }
    let fp = f.derivative()?;
    let mut out: Vec<(Polynomial, u32)> = vec![];
    if fp.is_zero() {
        // f = g(x^p); Frobenius-inverse the coefficients of g
        let d = f.degree().unwrap();
        let mut gc = vec![];
        for i in 0..=(d / p as usize) {
            let c = f.coeff(i * p as usize);
            let cf = c.as_fq()?;
            // p^(k-1)-th power inverts x -> x^p on F_{p^k}
            let root = cf.pow(p.pow(k - 1))?;
            gc.push(FieldElement {
                field: f.field.clone(),
                repr: Repr::F(root),
            });
        }
        let g = Polynomial::new(&f.field, &f.var, gc);
        for (q, m) in squarefree_fq(&g)? {
            out.push((q, m * p as u32));
        }
        return Ok(out);
    }
    let mut g = f.gcd(&fp)?;
    let mut w = f.divrem(&g)?.0;
    let mut i = 1u32;
    while w.degree() != Some(0) {
        let y = w.gcd(&g)?;
        let fac = w.divrem(&y)?.0;
        if fac.degree().unwrap_or(0) > 0 {
            out.push((fac, i));
        }
        w = y;
        g = g.divrem(&w)?.0;
        i += 1;
    }
    if g.degree().unwrap_or(0) > 0 {
        // leftover is a p-th power part
        for (q, m) in squarefree_fq(&g)? {
            merge_factor(&mut out, q, m);
        }
    }
    Ok(out)
}

fn merge_factor(out: &mut Vec<(Polynomial, u32)>, q: Polynomial, m: u32) {
    for (f, mm) in out.iter_mut() {
        if *f == q {
            *mm += m;
            return;
        }
    }
    out.push((q, m));
}

/// x^(q^j) mod f
fn frob_pow(f: &Polynomial, j: u32) -> Result<Polynomial> {
    let (p, k) = fq_card(&f.field);
    let q = BigUint::from(p).pow(k);
    let mut x = Polynomial::var_poly(&f.field, &f.var);
    for _ in 0..j {
        x = poly_powmod(&x, &q, f)?;
    }
    Ok(x)
}

fn poly_powmod(base: &Polynomial, e: &BigUint, m: &Polynomial) -> Result<Polynomial> {
    let mut acc = Polynomial::one(&m.field, &m.var);
    let mut b = base.divrem(m)?.1;
    let bits = e.bits();
    for i in 0..bits {
        if e.bit(i) {
            acc = acc.mul(&b)?.divrem(m)?.1;
        }
        b = b.mul(&b)?.divrem(m)?.1;
    }
    Ok(acc)
}

/// Distinct-degree factorization of a squarefree monic polynomial.
fn distinct_degree(f: &Polynomial) -> Result<Vec<(Polynomial, usize)>> {
    let mut out = vec![];
    let mut g = f.clone();
    let mut h = Polynomial::var_poly(&f.field, &f.var);
    let x = Polynomial::var_poly(&f.field, &f.var);
    let mut d = 0usize;
    let (p, k) = fq_card(&f.field);
    let q = BigUint::from(p).pow(k);
    while g.degree().unwrap_or(0) > 0 {
        d += 1;
        if 2 * d > g.degree().unwrap() {
            out.push((g.clone(), g.degree().unwrap()));
            break;
        }
        h = poly_powmod(&h, &q, &g)?;
        let part = g.gcd(&h.sub(&x)?)?;
        if part.degree().unwrap_or(0) > 0 {
            out.push((part.clone(), d));
            g = g.divrem(&part)?.0;
            h = h.divrem(&g)?.1;
        }
    }
    Ok(out)
}

/// Cantor–Zassenhaus equal-degree splitting; deterministic output order via
/// canonical sorting downstream, RNG seeded from the polynomial.
fn equal_degree(f: &Polynomial, d: usize) -> Result<Vec<Polynomial>> {
    let n = f.degree().unwrap();
    if n == d {
        return Ok(vec![f.clone()]);
    }
    let (p, k) = fq_card(&f.field);
    let seed = n as u64 ^ (d as u64) << 8 ^ p << 16 ^ (k as u64) << 40;
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let q = BigUint::from(p).pow(k);
    loop {
        // random polynomial of degree < n
        let mut coeffs = vec![];
        for _ in 0..n {
            let idx = rng.random_range(0..p.pow(k));
            coeffs.push(FieldElement {
                field: f.field.clone(),
                repr: Repr::F(FqElem::from_index(p, k, idx)),
            });
        }
        let a = Polynomial::new(&f.field, &f.var, coeffs);
        if a.degree().is_none() {
            continue;
        }
        let g0 = f.gcd(&a)?;
        if g0.degree().unwrap_or(0) > 0 && g0.degree().unwrap() < n {
            let mut out = equal_degree(&g0, d)?;
            out.extend(equal_degree(&f.divrem(&g0)?.0, d)?);
            return Ok(out);
        }
        let b = if p == 2 {
            // trace map sum a^(2^i), i < k*d
            let mut acc = Polynomial::zero(&f.field, &f.var);
            let mut t = a.clone();
            for _ in 0..(k as usize * d) {
                acc = acc.add(&t)?.divrem(f)?.1;
                t = t.mul(&t)?.divrem(f)?.1;
            }
            acc
        } else {
            let e = (q.pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
            let t = poly_powmod(&a, &e, f)?;
            t.sub(&Polynomial::one(&f.field, &f.var))?
        };
        let g = f.gcd(&b)?;
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let mut out = equal_degree(&g, d)?;
            out.extend(equal_degree(&f.divrem(&g)?.0, d)?);
            return Ok(out);
        }
    }
}

// ---------------------------------------------------------------------------
// rationals: bounded Zassenhaus
// ---------------------------------------------------------------------------

fn factor_q(f: &Polynomial) -> Result<Factorization> {
    // height gate on the input
    for c in &f.coeffs {
        let r = c.as_rational()?;
        let h = r.numer().abs().max(r.denom().abs());
        if h > BigInt::from(Q_HEIGHT_CAP) {
            return Err(Error::HeightExceeded);
        }
    }
    if f.degree().unwrap_or(0) > Q_DEGREE_CAP {
        return Err(Error::HeightExceeded);
    }
    let unit = f.leading().unwrap().clone();
    let monic = f.monic()?;
    // clear denominators: primitive integer polynomial
    let zpoly = to_primitive_int(&monic)?;
    let mut factors: Vec<(Polynomial, u32)> = vec![];
    let mut rem = zpoly;
    // squarefree part first
    while int_deg(&rem) > 0 {
        let sqfree = squarefree_part_z(&rem)?;
        for g in factor_squarefree_z(&sqfree)? {
            // count multiplicity in rem
            let mut m = 0u32;
            loop {
                match int_poly_exact_div(&rem, &g) {
                    Some(q) => {
                        rem = q;
                        m += 1;
                    }
                    None => break,
                }
            }
            let gq = int_to_monic_q(&g, &f.field, &f.var)?;
            factors.push((gq, m));
        }
    }
    sort_factors(&mut factors);
    Ok(Factorization { unit, factors })
}

type ZPoly = Vec<BigInt>;

fn int_deg(f: &ZPoly) -> usize {
    f.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
}

fn int_trim(f: &mut ZPoly) {
    while f.len() > 1 && f.last().map(|c| c.is_zero()) == Some(true) {
        f.pop();
    }
}

fn to_primitive_int(f: &Polynomial) -> Result<ZPoly> {
    let mut den = BigInt::one();
    for c in &f.coeffs {
        den = den.lcm(c.as_rational()?.denom());
    }
    let mut out: ZPoly = f
        .coeffs
        .iter()
        .map(|c| {
            let r = c.as_rational().unwrap();
            r.numer() * &den / r.denom()
        })
        .collect();
    let mut content = BigInt::zero();
    for c in &out {
        content = content.gcd(c);
    }
    if !content.is_zero() && !content.is_one() {
        for c in out.iter_mut() {
            *c /= &content;
        }
    }
    if out.last().map(|c| c.is_negative()) == Some(true) {
        for c in out.iter_mut() {
            *c = -c.clone();
        }
    }
    int_trim(&mut out);
    Ok(out)
}

fn int_to_monic_q(g: &ZPoly, field: &FieldDescriptor, var: &str) -> Result<Polynomial> {
    let coeffs = g
        .iter()
        .map(|c| FieldElement::from_rational(field, BigRational::from(c.clone())))
        .collect::<Result<Vec<_>>>()?;
    Polynomial::new(field, var, coeffs).monic()
}

fn int_poly_mul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    int_trim(&mut out);
    out
}

fn int_poly_exact_div(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    let da = int_deg(a);
    let db = int_deg(b);
    if a.iter().all(|c| c.is_zero()) {
        return None;
    }
    if da < db {
        return None;
    }
    let mut rem = a.clone();
    rem.resize(da + 1, BigInt::zero());
    let mut quot = vec![BigInt::zero(); da - db + 1];
    for i in (0..=(da - db)).rev() {
        let lead = rem[db + i].clone();
        if lead.is_zero() {
            continue;
        }
        let (q, r) = lead.div_rem(&b[db]);
        if !r.is_zero() {
            return None;
        }
        quot[i] = q.clone();
        for j in 0..=db {
            let t = &b[j] * &q;
            rem[i + j] -= t;
        }
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return None;
    }
    int_trim(&mut quot);
    Some(quot)
}

fn int_derivative(f: &ZPoly) -> ZPoly {
    let mut out = vec![];
    for (i, c) in f.iter().enumerate().skip(1) {
        out.push(c * BigInt::from(i));
    }
    if out.is_empty() {
        out.push(BigInt::zero());
    }
    int_trim(&mut out);
    out
}

fn squarefree_part_z(f: &ZPoly) -> Result<ZPoly> {
    // gcd over Q via rational polynomials
    let q = FieldDescriptor::Rationals;
    let fq = Polynomial::new(
        &q,
        "x",
        f.iter()
            .map(|c| FieldElement::from_rational(&q, BigRational::from(c.clone())).unwrap())
            .collect(),
    );
    let g = fq.gcd(&fq.derivative()?)?;
    let (quot, _) = fq.divrem(&g)?;
    to_primitive_int(&quot)
}

/// Factor a primitive squarefree integer polynomial into irreducible
/// primitive integer polynomials (Zassenhaus: factor mod p, Hensel lift,
/// subset recombination). Works with the monicized transform
/// g(x) = lc^(n-1) f(x/lc) so all lifting stays monic.
fn factor_squarefree_z(f: &ZPoly) -> Result<Vec<ZPoly>> {
    let n = int_deg(f);
    if n == 0 {
        return Ok(vec![]);
    }
    if n == 1 {
        return Ok(vec![f.clone()]);
    }
    let lc = f[n].clone();
    let monic = monicize(f, &lc);
    // choose a prime where the monic transform stays squarefree
    let mut p = 3u64;
    let (fp_poly, prime) = loop {
        if p > 10_000 {
            return Err(Error::Internal("no good prime for factorization".into()));
        }
        if crate::arith::finite::is_prime(p) {
            let fp = int_to_fp(&monic, p)?;
            if fp.degree() == Some(n) {
                let d = fp.gcd(&fp.derivative()?)?;
                if d.degree() == Some(0) {
                    break (fp, p);
                }
            }
        }
        p += 2;
    };
    let modular = factor_fq(&fp_poly)?;
    if modular.factors.len() == 1 {
        return Ok(vec![f.clone()]);
    }
    // lift to p^e beyond twice the factor-coefficient bound
    let bound = landau_mignotte(&monic);
    let mut e = 1u32;
    let mut pe = BigInt::from(prime);
    let target = BigInt::from(2) * &bound;
    while pe <= target {
        pe *= BigInt::from(prime);
        e += 1;
    }
    let lifted = hensel_lift_list(
        &monic,
        &modular.factors.iter().map(|(g, _)| g.clone()).collect::<Vec<_>>(),
        prime,
        e,
        &pe,
    )?;
    // subset recombination against the monic transform
    let mut remaining: Vec<ZPoly> = lifted;
    let mut rem_poly = monic;
    let mut out = vec![];
    let mut subset_size = 1usize;
    while 2 * subset_size <= remaining.len() {
        let mut found = None;
        'subsets: for subset in subsets_of(remaining.len(), subset_size) {
            let mut cand = vec![BigInt::one()];
            for &i in &subset {
                cand = int_poly_mul(&cand, &remaining[i]);
                cand = int_mod_sym(&cand, &pe);
            }
            if let Some(q) = int_poly_exact_div(&rem_poly, &cand) {
                out.push(demonicize(&cand, &lc));
                rem_poly = q;
                found = Some(subset);
                break 'subsets;
            }
        }
        match found {
            Some(subset) => {
                let mut keep = vec![];
                for (i, g) in remaining.into_iter().enumerate() {
                    if !subset.contains(&i) {
                        keep.push(g);
                    }
                }
                remaining = keep;
            }
            None => subset_size += 1,
        }
    }
    if int_deg(&rem_poly) > 0 {
        out.push(demonicize(&rem_poly, &lc));
    }
    Ok(out)
}

/// g(x) = lc^(n-1) * f(x/lc), monic integer polynomial.
fn monicize(f: &ZPoly, lc: &BigInt) -> ZPoly {
    let n = int_deg(f);
    let mut out = vec![BigInt::zero(); n + 1];
    // coefficient of x^i in g is f_i * lc^(n-1-i)
    for (i, c) in f.iter().enumerate().take(n + 1) {
        out[i] = c * lc.pow((n - i) as u32) / lc;
    }
    out[n] = BigInt::one();
    out
}

/// Map a monic factor H of the monicized transform back to a primitive
/// factor of f: primitive part of lc^(deg H) * H(x * ... ) evaluated via
/// coefficient scaling H_i * lc^i has roots scaled back down.
fn demonicize(h: &ZPoly, lc: &BigInt) -> ZPoly {
    let d = int_deg(h);
    let mut out = vec![BigInt::zero(); d + 1];
    for (i, c) in h.iter().enumerate().take(d + 1) {
        // x -> lc*x scales coefficient of x^i by lc^i
        out[i] = c * lc.pow(i as u32);
    }
    primitive_part(&out)
}

fn subsets_of(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(idx.clone());
        // next combination
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn landau_mignotte(f: &ZPoly) -> BigInt {
    let n = int_deg(f);
    let maxc = f.iter().map(|c| c.abs()).max().unwrap_or_else(BigInt::one);
    BigInt::from(2).pow(n as u32) * maxc * BigInt::from(n as u64 + 1)
}

fn int_to_fp(f: &ZPoly, p: u64) -> Result<Polynomial> {
    let fp = FieldDescriptor::finite(p, 1)?;
    let coeffs = f
        .iter()
        .map(|c| FieldElement::from_rational(&fp, BigRational::from(c.clone())))
        .collect::<Result<Vec<_>>>()?;
    Ok(Polynomial::new(&fp, "x", coeffs))
}

fn int_mod_sym(f: &ZPoly, m: &BigInt) -> ZPoly {
    let half = m / BigInt::from(2);
    let mut out: ZPoly = f
        .iter()
        .map(|c| {
            let mut r = c.mod_floor(m);
            if r > half {
                r -= m;
            }
            r
        })
        .collect();
    int_trim(&mut out);
    out
}

fn primitive_part(f: &ZPoly) -> ZPoly {
    let mut content = BigInt::zero();
    for c in f {
        content = content.gcd(c);
    }
    let mut out = f.clone();
    if !content.is_zero() && !content.is_one() {
        for c in out.iter_mut() {
            *c /= &content;
        }
    }
    if out.last().map(|c| c.is_negative()) == Some(true) {
        for c in out.iter_mut() {
            *c = -c.clone();
        }
    }
    out
}

/// Lift monic f = prod(g_i) mod p to mod p^e by repeated pairwise Hensel
/// steps. Returns monic integer factors in symmetric representation.
fn hensel_lift_list(
    f: &ZPoly,
    gs: &[Polynomial],
    p: u64,
    e: u32,
    pe: &BigInt,
) -> Result<Vec<ZPoly>> {
    if gs.len() == 1 {
        return Ok(vec![int_mod_sym(f, pe)]);
    }
    let mid = gs.len() / 2;
    let (left, right) = gs.split_at(mid);
    let fp = FieldDescriptor::finite(p, 1)?;
    let mut gprod = Polynomial::one(&fp, "x");
    for g in left {
        gprod = gprod.mul(g)?;
    }
    let mut hprod = Polynomial::one(&fp, "x");
    for h in right {
        hprod = hprod.mul(h)?;
    }
    let (g_lift, h_lift) = hensel_lift_pair(f, &gprod, &hprod, p, e)?;
    let mut out = hensel_lift_list(&g_lift, left, p, e, pe)?;
    out.extend(hensel_lift_list(&h_lift, right, p, e, pe)?);
    Ok(out)
}

/// Linear Hensel lifting of a coprime monic factorization f = g*h mod p.
/// Invariant per step: f = G*H mod p^i, G = g0 and H = h0 mod p, G, H monic.
fn hensel_lift_pair(
    f: &ZPoly,
    g0: &Polynomial,
    h0: &Polynomial,
    p: u64,
    e: u32,
) -> Result<(ZPoly, ZPoly)> {
    // Bezout: s*g0 + t*h0 = 1 mod p
    let (s, t) = poly_bezout(g0, h0)?;
    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    let mut g = fp_to_int(g0);
    let mut h = fp_to_int(h0);
    for _ in 1..e {
        // delta = (f - G*H)/modulus mod p
        let prod = int_poly_mul(&g, &h);
        let mut err: ZPoly = f.clone();
        err.resize(f.len().max(prod.len()), BigInt::zero());
        for (i, c) in prod.iter().enumerate() {
            err[i] -= c;
        }
        let delta_int: ZPoly = err
            .iter()
            .map(|c| {
                debug_assert!((c % &modulus).is_zero());
                c / &modulus
            })
            .collect();
        let delta = int_to_fp(&delta_int, p)?;
        // dg = (delta*t mod g0); dh = delta*s + q*h0 where q is the quotient
        let (q, dg) = delta.mul(&t)?.divrem(g0)?;
        let dh = delta.mul(&s)?.add(&q.mul(h0)?)?;
        if dh.degree().unwrap_or(0) >= h0.degree().unwrap_or(1)
            && !(dh.is_zero() || h0.degree().is_none())
        {
            return Err(Error::Internal("hensel correction degree overflow".into()));
        }
        let dgz = fp_to_int(&dg);
        let dhz = fp_to_int(&dh);
        for (i, c) in dgz.iter().enumerate() {
            if g.len() <= i {
                g.resize(i + 1, BigInt::zero());
            }
            g[i] += c * &modulus;
        }
        for (i, c) in dhz.iter().enumerate() {
            if h.len() <= i {
                h.resize(i + 1, BigInt::zero());
            }
            h[i] += c * &modulus;
        }
        modulus *= &pb;
        g = g.iter().map(|c| c.mod_floor(&modulus)).collect();
        h = h.iter().map(|c| c.mod_floor(&modulus)).collect();
        int_trim(&mut g);
        int_trim(&mut h);
    }
    Ok((int_mod_sym(&g, &modulus), int_mod_sym(&h, &modulus)))
}

fn fp_to_int(g: &Polynomial) -> ZPoly {
    let mut out = vec![];
    for c in &g.coeffs {
        let v = match &c.repr {
            Repr::F(f) => BigInt::from(f.c[0]),
            _ => BigInt::zero(),
        };
        out.push(v);
    }
    if out.is_empty() {
        out.push(BigInt::zero());
    }
    out
}

/// Bezout coefficients s, t with s*g + t*h = 1 for coprime g, h over F_p.
fn poly_bezout(g: &Polynomial, h: &Polynomial) -> Result<(Polynomial, Polynomial)> {
    let field = &g.field;
    let var = &g.var;
    let (mut r0, mut r1) = (g.clone(), h.clone());
    let (mut s0, mut s1) = (Polynomial::one(field, var), Polynomial::zero(field, var));
    let (mut t0, mut t1) = (Polynomial::zero(field, var), Polynomial::one(field, var));
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1)?;
        let s = s0.sub(&q.mul(&s1)?)?;
        let t = t0.sub(&q.mul(&t1)?)?;
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    // r0 = gcd (a unit for coprime inputs)
    let inv = r0
        .coeff(0)
        .inv()
        .map_err(|_| Error::Internal("factors not coprime in Hensel step".into()))?;
    if r0.degree() != Some(0) {
        return Err(Error::Internal("factors not coprime in Hensel step".into()));
    }
    Ok((s0.mul_elem(&inv)?, t0.mul_elem(&inv)?))
}

// ---------------------------------------------------------------------------
// function fields (root-driven, degree <= 3)
// ---------------------------------------------------------------------------

/// Factor a polynomial in one variable over a rational function field k1,
/// where k1 is Q or F_p(t). Supports degree <= 3 (root search); higher
/// degrees only when the polynomial is a pure power of the variable or
/// splits off roots down to degree <= 3.
pub fn factor_over_field(f: &Polynomial) -> Result<Factorization> {
    match &f.field {
        FieldDescriptor::Finite { .. } | FieldDescriptor::Rationals => gf_factor(f),
        FieldDescriptor::RationalFunction { .. } => factor_by_roots(f),
    }
}

fn factor_by_roots(f: &Polynomial) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    let unit = f.leading().unwrap().clone();
    let mut rem = f.monic()?;
    let mut factors: Vec<(Polynomial, u32)> = vec![];
    // strip roots while possible
    'outer: while rem.degree().unwrap_or(0) > 0 {
        if rem.degree() == Some(1) {
            merge_factor(&mut factors, rem.clone(), 1);
            break;
        }
        for root in root_candidates(&rem)? {
            if rem.eval(&root.lift_to(&rem.field).unwrap_or(root.clone()))?.is_zero() {
                let lin = Polynomial::new(
                    &rem.field,
                    &rem.var,
                    vec![root.neg(), FieldElement::one(&rem.field)],
                );
                merge_factor(&mut factors, lin.clone(), 1);
                rem = rem.divrem(&lin)?.0;
                continue 'outer;
            }
        }
        // no root: irreducible for degree <= 3
        if rem.degree().unwrap() <= 3 {
            merge_factor(&mut factors, rem.clone(), 1);
            break;
        }
        return Err(Error::UnsupportedField(format!(
            "cannot factor degree-{} polynomial over {}",
            rem.degree().unwrap(),
            rem.field
        )));
    }
    sort_factors(&mut factors);
    Ok(Factorization { unit, factors })
}

/// Candidate roots a/b with a dividing the constant term and b the leading
/// term, in the coefficient polynomial ring of k1.
fn root_candidates(f: &Polynomial) -> Result<Vec<FieldElement>> {
    let field = &f.field;
    let c0 = f.coeff(0);
    if c0.is_zero() {
        return Ok(vec![FieldElement::zero(field)]);
    }
    match field {
        FieldDescriptor::RationalFunction { base, .. } => {
            let rf = c0.as_ratfn()?;
            let base_cf = field.const_base();
            // divisors of numerator polynomial in the single inner variable
            let inner_vars = field.all_vars();
            if inner_vars.len() != 1 {
                return Err(Error::UnsupportedField(
                    "root candidates need a single-variable coefficient field".into(),
                ));
            }
            let tvar = &inner_vars[0];
            let num_poly = Polynomial::from_element(
                &FieldElement::from_ratfn(
                    field,
                    crate::arith::field::RatFn {
                        num: rf.num.clone(),
                        den: crate::arith::multipoly::MultiPoly::one(base_cf, 1),
                    },
                ),
                base.as_ref(),
                tvar,
            )?;
            let fac = factor_over_field(&num_poly)?;
            // all monic divisors times constants
            let mut divisors = vec![Polynomial::one(base, tvar)];
            for (g, m) in &fac.factors {
                let mut next = vec![];
                for d in &divisors {
                    let mut acc = d.clone();
                    next.push(acc.clone());
                    for _ in 0..*m {
                        acc = acc.mul(g)?;
                        next.push(acc.clone());
                    }
                }
                divisors = next;
            }
            let mut out = vec![];
            let consts: Vec<FieldElement> = constant_units(base)?;
            for d in &divisors {
                for c in &consts {
                    let e = d.to_element(field)?.mul(&c.lift_to(field)?)?;
                    out.push(e.clone());
                    out.push(e.neg());
                }
            }
            Ok(out)
        }
        _ => Err(Error::UnsupportedField("root candidates".into())),
    }
}

fn constant_units(base: &FieldDescriptor) -> Result<Vec<FieldElement>> {
    match base {
        FieldDescriptor::Finite { p, k } => {
            let q = p.pow(*k);
            Ok((1..q)
                .map(|i| FieldElement {
                    field: base.clone(),
                    repr: Repr::F(FqElem::from_index(*p, *k, i)),
                })
                .collect())
        }
        FieldDescriptor::Rationals => {
            // small rational candidates: unit content handled by monic form
            Ok((1..=6i64)
                .map(|n| FieldElement::from_int(base, n))
                .collect())
        }
        _ => Ok(vec![FieldElement::one(base)]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_field;

    fn poly(field: &str, var: &str, s: &str) -> Polynomial {
        Polynomial::parse(&parse_field(field).unwrap(), var, s).unwrap()
    }

    #[test]
    fn factor_x2_minus_1_over_f5() {
        let f = poly("F5", "x", "x^2-1");
        let fac = gf_factor(&f).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert_eq!(fac.factors[0].0, poly("F5", "x", "x+1"));
        assert_eq!(fac.factors[1].0, poly("F5", "x", "x+4"));
        assert_eq!(fac.product().unwrap(), f);
    }

    #[test]
    fn factor_x2_plus_1_over_f5() {
        // 2^2 = -1 mod 5
        let f = poly("F5", "x", "x^2+1");
        let fac = gf_factor(&f).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert_eq!(fac.product().unwrap(), f);
        for (g, _) in &fac.factors {
            assert_eq!(g.degree(), Some(1));
        }
    }

    #[test]
    fn factor_x2_plus_1_over_q() {
        let f = poly("Q", "x", "x^2+1");
        let fac = gf_factor(&f).unwrap();
        assert_eq!(fac.factors.len(), 1);
        assert_eq!(fac.factors[0], (poly("Q", "x", "x^2+1"), 1));
    }

    #[test]
    fn factor_x4_plus_4_over_q() {
        // classic split without rational roots
        let f = poly("Q", "x", "x^4+4");
        let fac = gf_factor(&f).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert_eq!(fac.product().unwrap(), f);
        for (g, m) in &fac.factors {
            assert_eq!((g.degree(), *m), (Some(2), 1));
        }
    }

    #[test]
    fn factor_with_multiplicity() {
        let f = poly("F3", "x", "x^4 + 2*x^3 + x^2");
        let fac = gf_factor(&f).unwrap();
        assert_eq!(fac.product().unwrap(), f);
        let mults: Vec<u32> = fac.factors.iter().map(|(_, m)| *m).collect();
        assert_eq!(mults, vec![2, 2]);
    }

    #[test]
    fn factor_frobenius_power() {
        // x^5 - x = x(x-1)(x-2)(x-3)(x-4) over F5
        let f = poly("F5", "x", "x^5-x");
        let fac = gf_factor(&f).unwrap();
        assert_eq!(fac.factors.len(), 5);
        assert_eq!(fac.product().unwrap(), f);
    }

    #[test]
    fn factor_over_function_field_roots() {
        let f5t = parse_field("F5(t)").unwrap();
        let f = Polynomial::parse(&f5t, "x", "x^2 - t^2").unwrap();
        let fac = factor_over_field(&f).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert_eq!(fac.product().unwrap(), f);
    }

    #[test]
    fn height_cap_enforced() {
        let q = FieldDescriptor::Rationals;
        let big = FieldElement::from_rational(
            &q,
            BigRational::from(BigInt::from(2_000_000_000i64)),
        )
        .unwrap();
        let f = Polynomial::new(&q, "x", vec![big, FieldElement::one(&q)]);
        assert!(matches!(gf_factor(&f), Err(Error::HeightExceeded)));
    }
}
