//! Shift and difference operators and the compatibility test for WZ-forms.

use num_traits::One;

use crate::error::{Error, Result};
use crate::factor::Factorization;
use crate::fsum::{factor_den, FactoredSum};
use crate::poly::Q;
use crate::rational::RationalFunction;

/// `f(x + m)`.
pub fn apply_shift(f: &RationalFunction, m: &[i64]) -> RationalFunction {
    assert_eq!(m.len(), f.nvars(), "shift vector length must match the variable count");
    f.shift(m)
}

/// Forward difference `σ_i(f) - f`.
pub fn delta(f: &RationalFunction, i: usize) -> RationalFunction {
    f.shift_var(i, 1).sub(f)
}

/// The cyclic operator `(σ_i^m - 1)/(σ_i - 1)` applied to `h`.
pub fn cyclic_apply(h: &RationalFunction, i: usize, m: i64) -> RationalFunction {
    let mut acc = RationalFunction::zero(h.nvars());
    if m > 0 {
        for t in 0..m {
            acc = acc.add(&h.shift_var(i, t));
        }
    } else {
        for t in m..0 {
            acc = acc.sub(&h.shift_var(i, t));
        }
    }
    acc
}

fn pair_compatible(components: &[RationalFunction], facs: &[Factorization], i: usize, j: usize) -> bool {
    let n = components.len();
    let mut ei = vec![0; n];
    ei[i] = 1;
    let mut ej = vec![0; n];
    ej[j] = 1;
    let zero = vec![0; n];
    let (one, minus) = (Q::one(), -Q::one());
    let mut sum = FactoredSum::new(n);
    sum.add_shifted(&components[j], &facs[j], &ei, &one);
    sum.add_shifted(&components[j], &facs[j], &zero, &minus);
    sum.add_shifted(&components[i], &facs[i], &ej, &minus);
    sum.add_shifted(&components[i], &facs[i], &zero, &one);
    sum.sums_to_zero()
}

/// True iff `Δ_i(f_j) = Δ_j(f_i)` for every pair.
pub fn is_wz_form(components: &[RationalFunction]) -> bool {
    let n = components.len();
    if components.iter().any(|c| c.nvars() != n) {
        return false;
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        let facs: Vec<Factorization> = components.par_iter().map(factor_den).collect();
        pairs.par_iter().all(|&(i, j)| pair_compatible(components, &facs, i, j))
    }
    #[cfg(not(feature = "parallel"))]
    {
        let facs: Vec<Factorization> = components.iter().map(factor_den).collect();
        pairs.iter().all(|&(i, j)| pair_compatible(components, &facs, i, j))
    }
}

/// A tuple `(f_1, …, f_n)` satisfying the compatibility conditions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WZForm {
    components: Vec<RationalFunction>,
}

impl WZForm {
    pub fn new(components: Vec<RationalFunction>) -> Result<Self> {
        let n = components.len();
        if n == 0 {
            return Err(Error::InvalidInput("a WZ-form needs at least one component".into()));
        }
        if components.iter().any(|c| c.nvars() != n) {
            return Err(Error::InvalidInput(format!("expected {n} components over {n} variables")));
        }
        if !is_wz_form(&components) {
            return Err(Error::NotAWZForm("compatibility conditions fail".into()));
        }
        Ok(WZForm { components })
    }

    /// Skips the compatibility check; callers guarantee it by construction.
    pub(crate) fn new_unchecked(components: Vec<RationalFunction>) -> Self {
        WZForm { components }
    }

    pub fn components(&self) -> &[RationalFunction] {
        &self.components
    }

    pub fn into_components(self) -> Vec<RationalFunction> {
        self.components
    }

    pub fn nvars(&self) -> usize {
        self.components.len()
    }

    /// The exact form `(Δ_1 g, …, Δ_n g)`.
    pub fn exact(g: &RationalFunction) -> Self {
        WZForm { components: (0..g.nvars()).map(|i| delta(g, i)).collect() }
    }
}
