//! Symbolic elimination of `a`.

use serde::Serialize;

use crate::bipoly::BiPoly;
use crate::error::Error;
use crate::modred::mod_red_symbolic;
use crate::solver::{check_exponents, linear_forms, CoefficientPattern, LinearForms};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Elimination {
    /// `L0 C1 - C0 L1`, content-normalized.
    pub condition: BiPoly,
    /// Nonzero `L1` and `C1`: where one of the two expressions for `a` has a
    /// vanishing denominator.
    pub excluded_loci: Vec<BiPoly>,
}

pub fn symbolic_forms(pattern: CoefficientPattern, exps: (u32, u32, u32)) -> LinearForms<BiPoly> {
    let table: Vec<_> = (0..=exps.0 as usize).map(mod_red_symbolic).collect();
    linear_forms(
        pattern,
        exps,
        |i| table[i].a.clone(),
        |i| table[i].b.clone(),
        BiPoly::zero(),
        BiPoly::one(),
    )
}

pub fn eliminate(pattern: CoefficientPattern, exps: (u32, u32, u32)) -> Result<Elimination, Error> {
    check_exponents(exps.0, exps.1, exps.2)?;
    let f = symbolic_forms(pattern, exps);
    if f.l1.is_zero() && f.c1.is_zero() {
        return Err(Error::ANotDetermined);
    }
    let e = &(&f.l0 * &f.c1) - &(&f.c0 * &f.l1);
    if e.is_zero() {
        return Err(Error::ANotDetermined);
    }
    let excluded_loci = [f.l1, f.c1]
        .into_iter()
        .filter(|x| !x.is_zero())
        .map(|x| x.content_normalize())
        .collect();
    Ok(Elimination {
        condition: e.content_normalize(),
        excluded_loci,
    })
}
