//! Discrete valuations: place valuations, order-of-vanishing (x-adic)
//! valuations with arbitrary centers, Gauss extensions, and lexicographic
//! composites with staged evaluation.

use crate::arith::field::{FieldDescriptor, FieldElement, RatFn};
use crate::arith::multipoly::MultiPoly;
use crate::arith::poly::Polynomial;
use crate::error::{Error, Result};
use crate::local::place::{place_root, GlobalField, Place};
use std::collections::BTreeMap;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Center {
    /// A center living in the field with the variable removed.
    At(FieldElement),
    Infinity,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Valuation {
    /// A place valuation on a global field, or on L(x) for the last
    /// variable x (polynomial and degree places).
    Place {
        field: FieldDescriptor,
        place: Place,
    },
    /// Order of vanishing of `var` at a center.
    XAdic {
        field: FieldDescriptor,
        var: String,
        center: Center,
    },
    /// Coefficient-minimum extension of a rank-1 valuation to a polynomial
    /// ring in `vars`; `base: None` is the trivial valuation.
    Gauss {
        field: FieldDescriptor,
        base: Option<Box<Valuation>>,
        vars: Vec<String>,
    },
    Composite(Vec<Valuation>),
}

/// Value of a valuation: a lexicographic integer tuple, or infinity at 0.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Val {
    Finite(Vec<i64>),
    Infinity,
}

impl Val {
    pub fn rank1(v: i64) -> Val {
        Val::Finite(vec![v])
    }

    pub fn as_rank1(&self) -> Option<i64> {
        match self {
            Val::Finite(v) if v.len() == 1 => Some(v[0]),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Val::Finite(v) if v.iter().all(|&x| x == 0))
    }

    /// Lexicographic comparison; Infinity is larger than everything.
    pub fn lex_cmp(&self, other: &Val) -> std::cmp::Ordering {
        match (self, other) {
            (Val::Infinity, Val::Infinity) => std::cmp::Ordering::Equal,
            (Val::Infinity, _) => std::cmp::Ordering::Greater,
            (_, Val::Infinity) => std::cmp::Ordering::Less,
            (Val::Finite(a), Val::Finite(b)) => a.cmp(b),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Val::Infinity => false,
            Val::Finite(v) => v.iter().find(|&&x| x != 0).map(|&x| x < 0).unwrap_or(false),
        }
    }
}

impl std::fmt::Display for Val {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Val::Infinity => write!(f, "inf"),
            Val::Finite(v) if v.len() == 1 => write!(f, "{}", v[0]),
            Val::Finite(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
        }
    }
}

impl Valuation {
    pub fn place(field: &FieldDescriptor, place: Place) -> Valuation {
        Valuation::Place {
            field: field.clone(),
            place,
        }
    }

    pub fn x_adic(field: &FieldDescriptor, var: &str, center: Center) -> Valuation {
        Valuation::XAdic {
            field: field.clone(),
            var: var.to_string(),
            center,
        }
    }

    pub fn domain(&self) -> Result<FieldDescriptor> {
        match self {
            Valuation::Place { field, .. }
            | Valuation::XAdic { field, .. }
            | Valuation::Gauss { field, .. } => Ok(field.clone()),
            Valuation::Composite(stages) => stages
                .first()
                .ok_or_else(|| Error::StageMismatch("empty composite".into()))?
                .domain(),
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            Valuation::Composite(stages) => stages.iter().map(|s| s.rank()).sum(),
            _ => 1,
        }
    }

    pub fn residue_field(&self) -> Result<FieldDescriptor> {
        match self {
            Valuation::Place { field, place } => place_residue_field(field, place),
            Valuation::XAdic { field, var, .. } => field_drop_var(field, var),
            Valuation::Gauss { base, vars, field } => {
                let rbase = match base {
                    None => constant_of(field),
                    Some(b) => b.residue_field()?,
                };
                FieldDescriptor::function_field(rbase, vars.clone())
            }
            Valuation::Composite(stages) => stages.last().unwrap().residue_field(),
        }
    }

    pub fn uniformizer(&self) -> Result<FieldElement> {
        match self {
            Valuation::Place { field, place } => place_uniformizer(field, place),
            Valuation::XAdic { field, var, center } => match center {
                Center::At(c) => {
                    let x = FieldElement::var(field, var)?;
                    x.sub(&c.lift_to(field)?)
                }
                Center::Infinity => FieldElement::var(field, var)?.inv(),
            },
            Valuation::Gauss { field, base, .. } => match base {
                None => Ok(FieldElement::one(field)),
                Some(b) => b.uniformizer()?.lift_to(field),
            },
            Valuation::Composite(_) => Err(Error::DomainMismatch(
                "composite valuations have no single uniformizer".into(),
            )),
        }
    }

    pub fn val_eval(&self, a: &FieldElement) -> Result<Val> {
        if a.is_zero() {
            return Ok(Val::Infinity);
        }
        match self {
            Valuation::Place { field, place } => {
                Ok(Val::rank1(place_val(field, place, a)?.unwrap()))
            }
            Valuation::XAdic { field, var, center } => {
                check_domain(field, a)?;
                let (v, _, _) = xadic_split(field, var, center, a)?;
                Ok(Val::rank1(v))
            }
            Valuation::Gauss { field, base, vars } => {
                check_domain(field, a)?;
                let (v, _) = gauss_split(field, base.as_deref(), vars, a)?;
                Ok(Val::rank1(v))
            }
            Valuation::Composite(stages) => {
                let mut cur = a.clone();
                let mut parts = vec![];
                for (i, stage) in stages.iter().enumerate() {
                    let v = stage.val_eval(&cur)?;
                    let v1 = v
                        .as_rank1()
                        .ok_or_else(|| Error::StageMismatch("stage is not rank 1".into()))?;
                    parts.push(v1);
                    if i + 1 < stages.len() {
                        let pi = stage.uniformizer()?;
                        let unit = cur.div(&pi.pow(v1)?)?;
                        cur = stage.residue_of(&unit)?;
                    }
                }
                Ok(Val::Finite(parts))
            }
        }
    }

    /// Residue of a valuation unit in the residue field.
    pub fn residue_of(&self, a: &FieldElement) -> Result<FieldElement> {
        match self {
            Valuation::Place { field, place } => place_residue(field, place, a),
            Valuation::XAdic { field, var, center } => {
                check_domain(field, a)?;
                let (v, num_r, den_r) = xadic_split(field, var, center, a)?;
                if v != 0 {
                    return Err(Error::NotAUnit(v.to_string()));
                }
                num_r.div(&den_r)
            }
            Valuation::Gauss { field, base, vars } => {
                check_domain(field, a)?;
                let (v, r) = gauss_split(field, base.as_deref(), vars, a)?;
                if v != 0 {
                    return Err(Error::NotAUnit(v.to_string()));
                }
                Ok(r)
            }
            Valuation::Composite(stages) => {
                let mut cur = a.clone();
                for stage in stages {
                    let v = stage.val_eval(&cur)?;
                    if !v.is_zero() {
                        return Err(Error::NotAUnit(format!("{v}")));
                    }
                    cur = stage.residue_of(&cur)?;
                }
                Ok(cur)
            }
        }
    }
}

/// Build a composite (lexicographic) valuation, checking that each stage
/// lives on the residue field of the previous one.
pub fn compose_vals(stages: Vec<Valuation>) -> Result<Valuation> {
    if stages.is_empty() {
        return Err(Error::StageMismatch("empty composite".into()));
    }
    for s in &stages {
        if matches!(s, Valuation::Composite(_)) {
            return Err(Error::StageMismatch("stages must be rank 1".into()));
        }
    }
    for i in 0..stages.len() - 1 {
        let rf = stages[i].residue_field()?;
        let dom = stages[i + 1].domain()?;
        if rf != dom {
            return Err(Error::StageMismatch(format!(
                "stage {} has residue field {rf} but stage {} lives on {dom}",
                i,
                i + 1
            )));
        }
    }
    if stages.len() == 1 {
        Ok(stages.into_iter().next().unwrap())
    } else {
        Ok(Valuation::Composite(stages))
    }
}

/// Gauss extension of a place valuation to a rational function field.
pub fn gauss_extend(base: &Valuation, vars: &[String]) -> Result<Valuation> {
    if vars.is_empty() {
        return Err(Error::StageMismatch("gauss extension needs variables".into()));
    }
    let dom = base.domain()?;
    let field = FieldDescriptor::function_field(dom, vars.to_vec())?;
    Ok(Valuation::Gauss {
        field,
        base: Some(Box::new(base.clone())),
        vars: vars.to_vec(),
    })
}

fn check_domain(field: &FieldDescriptor, a: &FieldElement) -> Result<()> {
    if *field != a.field {
        return Err(Error::DomainMismatch(format!("{} vs {}", a.field, field)));
    }
    Ok(())
}

fn constant_of(field: &FieldDescriptor) -> FieldDescriptor {
    match field.const_base() {
        crate::arith::scalar::ConstField::Q => FieldDescriptor::Rationals,
        crate::arith::scalar::ConstField::Fq { p, k } => FieldDescriptor::Finite { p, k },
    }
}

/// Remove one variable from a function-field descriptor.
pub fn field_drop_var(field: &FieldDescriptor, var: &str) -> Result<FieldDescriptor> {
    match field {
        FieldDescriptor::RationalFunction { base, vars } => {
            if vars.iter().any(|v| v == var) {
                let rest: Vec<String> = vars.iter().filter(|v| *v != var).cloned().collect();
                if rest.is_empty() {
                    Ok(base.as_ref().clone())
                } else {
                    FieldDescriptor::function_field(base.as_ref().clone(), rest)
                }
            } else {
                let inner = field_drop_var(base, var)?;
                FieldDescriptor::function_field(inner, vars.clone())
            }
        }
        _ => Err(Error::DomainMismatch(format!("{field} has no variable {var}"))),
    }
}

/// Reinterpret a multipoly with zero exponent at the dropped indices in the
/// field with those variables removed.
fn mp_drop_vars(mp: &MultiPoly, drop_idx: &[usize], small: &FieldDescriptor) -> FieldElement {
    let base = small.const_base();
    let arity = small.all_vars().len();
    let mut out = MultiPoly::zero(base, arity);
    for (m, c) in &mp.terms {
        let mut e = Vec::with_capacity(arity);
        for (i, &ei) in m.0.iter().enumerate() {
            if !drop_idx.contains(&i) {
                e.push(ei);
            }
        }
        out.terms.insert(crate::arith::multipoly::Mono(e), c.clone());
    }
    if arity == 0 {
        let c = out
            .constant_value()
            .unwrap_or_else(|| crate::arith::scalar::Scalar::zero(base));
        match c {
            crate::arith::scalar::Scalar::Q(q) => FieldElement::from_rational(small, q).unwrap(),
            crate::arith::scalar::Scalar::F(f) => FieldElement {
                field: small.clone(),
                repr: crate::arith::field::Repr::F(f),
            },
        }
    } else {
        FieldElement::from_ratfn(
            small,
            RatFn {
                num: out,
                den: MultiPoly::one(base, arity),
            },
        )
    }
}

fn mp_drop_var(mp: &MultiPoly, idx: usize, small: &FieldDescriptor) -> FieldElement {
    mp_drop_vars(mp, &[idx], small)
}

/// Coefficients of a multipoly viewed as univariate in `idx`, living in the
/// field with the variable removed.
fn poly_coeffs_in(
    mp: &MultiPoly,
    idx: usize,
    small: &FieldDescriptor,
) -> Vec<FieldElement> {
    let uni = mp.as_uni(idx);
    let maxdeg = uni.keys().next_back().copied().unwrap_or(0);
    let mut out = vec![FieldElement::zero(small); maxdeg as usize + 1];
    for (e, c) in uni {
        out[e as usize] = mp_drop_var(&c, idx, small);
    }
    out
}

/// Order of vanishing at the center together with the nonzero evaluations
/// of the reduced numerator and denominator (the residue data).
fn xadic_split(
    field: &FieldDescriptor,
    var: &str,
    center: &Center,
    a: &FieldElement,
) -> Result<(i64, FieldElement, FieldElement)> {
    let idx = field
        .var_index(var)
        .ok_or_else(|| Error::DomainMismatch(format!("{field} has no variable {var}")))?;
    let small = field_drop_var(field, var)?;
    let rf = a.as_ratfn()?;
    match center {
        Center::At(c) => {
            if c.field != small {
                return Err(Error::DomainMismatch(format!(
                    "center lives in {}, expected {}",
                    c.field, small
                )));
            }
            let (vn, rn) = ord_at(&poly_coeffs_in(&rf.num, idx, &small), c)?;
            let (vd, rd) = ord_at(&poly_coeffs_in(&rf.den, idx, &small), c)?;
            Ok((vn - vd, rn, rd))
        }
        Center::Infinity => {
            let num = poly_coeffs_in(&rf.num, idx, &small);
            let den = poly_coeffs_in(&rf.den, idx, &small);
            let dn = num.len() as i64 - 1;
            let dd = den.len() as i64 - 1;
            Ok((dd - dn, num.last().unwrap().clone(), den.last().unwrap().clone()))
        }
    }
}

/// Synthetic division: largest k with (x-c)^k dividing the polynomial,
/// plus the value of the cofactor at c.
fn ord_at(coeffs: &[FieldElement], c: &FieldElement) -> Result<(i64, FieldElement)> {
    let mut cur: Vec<FieldElement> = coeffs.to_vec();
    let mut ord = 0i64;
    loop {
        // Horner evaluation and quotient in one pass
        let mut q = vec![FieldElement::zero(&c.field); cur.len().saturating_sub(1)];
        let mut acc = FieldElement::zero(&c.field);
        for (j, cj) in cur.iter().enumerate().rev() {
            acc = acc.mul(c)?.add(cj)?;
            if j > 0 {
                q[j - 1] = acc.clone();
            }
        }
        if acc.is_zero() {
            ord += 1;
            cur = q;
            if cur.is_empty() {
                return Err(Error::Internal("zero polynomial in ord_at".into()));
            }
        } else {
            return Ok((ord, acc));
        }
    }
}

/// Gauss valuation: minimum of the base valuation over the coefficients of
/// the numerator minus the same for the denominator; residue for units.
fn gauss_split(
    field: &FieldDescriptor,
    base: Option<&Valuation>,
    vars: &[String],
    a: &FieldElement,
) -> Result<(i64, FieldElement)> {
    let rf = a.as_ratfn()?;
    let (vn, rn) = gauss_poly(field, base, vars, &rf.num)?;
    let (vd, rd) = gauss_poly(field, base, vars, &rf.den)?;
    let v = vn - vd;
    if v == 0 {
        Ok((0, rn.div(&rd)?))
    } else {
        // residue only demanded for units; return a placeholder numerator
        Ok((v, rn))
    }
}

fn gauss_poly(
    field: &FieldDescriptor,
    base: Option<&Valuation>,
    vars: &[String],
    mp: &MultiPoly,
) -> Result<(i64, FieldElement)> {
    let all = field.all_vars();
    let var_idx: Vec<usize> = vars
        .iter()
        .map(|v| all.iter().position(|w| w == v).unwrap())
        .collect();
    let coeff_field = {
        let mut fd = field.clone();
        for v in vars {
            fd = field_drop_var(&fd, v)?;
        }
        fd
    };
    // gather coefficients by the exponent pattern on `vars`
    let mut groups: BTreeMap<Vec<u16>, MultiPoly> = BTreeMap::new();
    for (m, c) in &mp.terms {
        let key: Vec<u16> = var_idx.iter().map(|&i| m.0[i]).collect();
        let mut rest = m.clone();
        for &i in &var_idx {
            rest.0[i] = 0;
        }
        groups
            .entry(key)
            .or_insert_with(|| MultiPoly::zero(mp.base, mp.arity))
            .terms
            .insert(rest, c.clone());
    }
    let mut best: Option<i64> = None;
    let mut coeffs: Vec<(Vec<u16>, FieldElement, i64)> = vec![];
    for (key, g) in groups {
        let celem = mp_drop_vars(&g, &var_idx, &coeff_field);
        if celem.is_zero() {
            continue;
        }
        let v = match base {
            None => 0,
            Some(b) => b
                .val_eval(&celem)?
                .as_rank1()
                .ok_or_else(|| Error::StageMismatch("gauss base not rank 1".into()))?,
        };
        if best.is_none() || v < best.unwrap() {
            best = Some(v);
        }
        coeffs.push((key, celem, v));
    }
    let v = best.ok_or(Error::ZeroInput)?;
    // residue: coefficients of minimal value, reduced; assembled over the
    // residue field of the base
    let rbase = match base {
        None => constant_of(field),
        Some(b) => b.residue_field()?,
    };
    let rfield = FieldDescriptor::function_field(rbase, vars.to_vec())?;
    let mut res = FieldElement::zero(&rfield);
    for (key, celem, cv) in coeffs {
        if cv != v {
            continue;
        }
        let unit = match base {
            None => celem,
            Some(b) => {
                let pi = b.uniformizer()?;
                celem.div(&pi.pow(v)?)?
            }
        };
        let runit = match base {
            None => unit.lift_to(&rfield)?,
            Some(b) => b.residue_of(&unit)?.lift_to(&rfield)?,
        };
        let mut mono = FieldElement::one(&rfield);
        for (j, v_name) in vars.iter().enumerate() {
            let x = FieldElement::var(&rfield, v_name)?;
            mono = mono.mul(&x.pow(key[j] as i64)?)?;
        }
        res = res.add(&runit.mul(&mono)?)?;
    }
    Ok((v, res))
}

pub fn place_val(field: &FieldDescriptor, place: &Place, a: &FieldElement) -> Result<Option<i64>> {
    if a.is_zero() {
        return Ok(None);
    }
    check_domain(field, a)?;
    if let Ok(g) = GlobalField::new(field) {
        return g.val_at(place, a);
    }
    // general function field in a last variable
    match place {
        Place::Real | Place::Padic(_) => Err(Error::DomainMismatch(format!(
            "{place} does not live on {field}"
        ))),
        Place::Degree | Place::IrrPoly(_) => {
            let (coeff_field, var) = field.drop_last_var()?;
            let rf = a.as_ratfn()?;
            let idx = field.var_index(&var).unwrap();
            let num = poly_coeffs_in(&rf.num, idx, &coeff_field);
            let den = poly_coeffs_in(&rf.den, idx, &coeff_field);
            match place {
                Place::Degree => Ok(Some(den.len() as i64 - num.len() as i64)),
                Place::IrrPoly(f) => {
                    let pn = Polynomial::new(&coeff_field, &var, num);
                    let pd = Polynomial::new(&coeff_field, &var, den);
                    Ok(Some(
                        crate::local::place::poly_ord(&pn, f)?
                            - crate::local::place::poly_ord(&pd, f)?,
                    ))
                }
                _ => unreachable!(),
            }
        }
    }
}

pub fn place_residue_field(field: &FieldDescriptor, place: &Place) -> Result<FieldDescriptor> {
    if let Ok(g) = GlobalField::new(field) {
        return g.residue_field(place);
    }
    match place {
        Place::Degree => field.drop_last_var().map(|(f, _)| f),
        Place::IrrPoly(f) if f.degree() == Some(1) => field.drop_last_var().map(|(f, _)| f),
        _ => Err(Error::UnsupportedField(format!(
            "residue field of {place} on {field}"
        ))),
    }
}

pub fn place_residue(
    field: &FieldDescriptor,
    place: &Place,
    a: &FieldElement,
) -> Result<FieldElement> {
    if let Ok(g) = GlobalField::new(field) {
        return g.residue_at(place, a);
    }
    let v = place_val(field, place, a)?;
    if v != Some(0) {
        return Err(Error::NotAUnit(format!("{v:?}")));
    }
    let (coeff_field, var) = field.drop_last_var()?;
    let rf = a.as_ratfn()?;
    let idx = field.var_index(&var).unwrap();
    let num = poly_coeffs_in(&rf.num, idx, &coeff_field);
    let den = poly_coeffs_in(&rf.den, idx, &coeff_field);
    match place {
        Place::Degree => num.last().unwrap().div(den.last().unwrap()),
        Place::IrrPoly(f) => {
            let rfld = place_residue_field(field, place)?;
            let root = place_root(f, &rfld)?;
            let pn = Polynomial::new(&coeff_field, &var, num);
            let pd = Polynomial::new(&coeff_field, &var, den);
            pn.eval(&root)?.div(&pd.eval(&root)?)
        }
        _ => unreachable!(),
    }
}

pub fn place_uniformizer(field: &FieldDescriptor, place: &Place) -> Result<FieldElement> {
    if let Ok(g) = GlobalField::new(field) {
        return g.uniformizer(place);
    }
    match place {
        Place::Degree => {
            let (_, var) = field.drop_last_var()?;
            FieldElement::var(field, &var)?.inv()
        }
        Place::IrrPoly(f) => f.to_element(field),
        _ => Err(Error::DomainMismatch(format!("{place} on {field}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_element, parse_field};

    #[test]
    fn five_adic_of_50() {
        let q = FieldDescriptor::Rationals;
        let v = Valuation::place(&q, Place::Padic(5));
        let a = parse_element(&q, "50").unwrap();
        assert_eq!(v.val_eval(&a).unwrap(), Val::rank1(2));
    }

    #[test]
    fn xadic_of_rational_function() {
        let fd = parse_field("Q(x)").unwrap();
        let v = Valuation::x_adic(&fd, "x", Center::At(FieldElement::zero(
            &FieldDescriptor::Rationals,
        )));
        let a = parse_element(&fd, "x^3/(x+1)").unwrap();
        assert_eq!(v.val_eval(&a).unwrap(), Val::rank1(3));
        assert_eq!(v.val_eval(&FieldElement::zero(&fd)).unwrap(), Val::Infinity);
    }

    #[test]
    fn xadic_residue() {
        let fd = parse_field("Q(x)").unwrap();
        let v = Valuation::x_adic(&fd, "x", Center::At(FieldElement::zero(
            &FieldDescriptor::Rationals,
        )));
        let a = parse_element(&fd, "(1+x)/(1-x)").unwrap();
        let r = v.residue_of(&a).unwrap();
        assert!(r.is_one());
    }

    #[test]
    fn composite_x_then_padic() {
        // v = [(x-1)-adic over Q(x), then 2-adic on Q]: x/2 -> (0, -1)
        let fd = parse_field("Q(x)").unwrap();
        let q = FieldDescriptor::Rationals;
        let s1 = Valuation::x_adic(&fd, "x", Center::At(FieldElement::one(&q)));
        let s2 = Valuation::place(&q, Place::Padic(2));
        let v = compose_vals(vec![s1, s2]).unwrap();
        let a = parse_element(&fd, "x/2").unwrap();
        assert_eq!(v.val_eval(&a).unwrap(), Val::Finite(vec![0, -1]));
    }

    #[test]
    fn composite_examples_from_stages() {
        // [x-adic at 0 on Q(x), 3-adic]: 3x -> (1,1); x/3 -> (1,-1)
        let fd = parse_field("Q(x)").unwrap();
        let q = FieldDescriptor::Rationals;
        let s1 = Valuation::x_adic(&fd, "x", Center::At(FieldElement::zero(&q)));
        let s2 = Valuation::place(&q, Place::Padic(3));
        let v = compose_vals(vec![s1, s2]).unwrap();
        assert_eq!(
            v.val_eval(&parse_element(&fd, "3*x").unwrap()).unwrap(),
            Val::Finite(vec![1, 1])
        );
        assert_eq!(
            v.val_eval(&parse_element(&fd, "x/3").unwrap()).unwrap(),
            Val::Finite(vec![1, -1])
        );
    }

    #[test]
    fn gauss_examples() {
        // 2-adic Gauss: 2x+4 -> 1; x^2+3 (3-adic) -> 0; (2x+4)/(6x) -> 0
        let q = FieldDescriptor::Rationals;
        let base2 = Valuation::place(&q, Place::Padic(2));
        let g2 = gauss_extend(&base2, &["x".to_string()]).unwrap();
        let fd = g2.domain().unwrap();
        assert_eq!(
            g2.val_eval(&parse_element(&fd, "2*x+4").unwrap()).unwrap(),
            Val::rank1(1)
        );
        let base3 = Valuation::place(&q, Place::Padic(3));
        let g3 = gauss_extend(&base3, &["x".to_string()]).unwrap();
        assert_eq!(
            g3.val_eval(&parse_element(&fd, "x^2+3").unwrap()).unwrap(),
            Val::rank1(0)
        );
        assert_eq!(
            g2.val_eval(&parse_element(&fd, "(2*x+4)/(6*x)").unwrap())
                .unwrap(),
            Val::rank1(0)
        );
    }

    #[test]
    fn stage_mismatch_detected() {
        let fd = parse_field("Q(x)").unwrap();
        let q = FieldDescriptor::Rationals;
        let s1 = Valuation::place(&q, Place::Padic(3));
        let s2 = Valuation::x_adic(&fd, "x", Center::At(FieldElement::one(&q)));
        assert!(compose_vals(vec![s1, s2]).is_err());
    }

    #[test]
    fn middle_variable_xadic() {
        // evaluate x1 at 1 inside Q(x1,x2)
        let fd = parse_field("Q(x1,x2)").unwrap();
        let small = parse_field("Q(x2)").unwrap();
        let v = Valuation::x_adic(&fd, "x1", Center::At(FieldElement::one(&small)));
        let a = parse_element(&fd, "(x1-1)^2*x2/(x1+x2)").unwrap();
        assert_eq!(v.val_eval(&a).unwrap(), Val::rank1(2));
        let u = parse_element(&fd, "(x1+x2)/x2").unwrap();
        let r = v.residue_of(&u).unwrap();
        assert_eq!(r, parse_element(&small, "(1+x2)/x2").unwrap());
    }
}
