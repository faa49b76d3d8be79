//! Batch drivers over independent inputs, parallel when the `parallel`
//! feature is on.

use crate::additive::{decompose, generate, AdditiveRepresentation};
use crate::error::Error;
use crate::random::{random_additive_rep, RandomParams};
use crate::rational::RationalFunction;
use crate::shift::{is_wz_form, WZForm};

/// A failed generate → decompose → generate round trip.
#[derive(Clone, Debug)]
pub struct Counterexample {
    pub seed: u64,
    pub rep: AdditiveRepresentation,
    pub form: WZForm,
    pub reason: String,
}

/// Parameters used for seed `seed` in the fuzz suite: `n` cycles through 1..=4.
pub fn fuzz_params(seed: u64) -> RandomParams {
    RandomParams { n: 1 + (seed % 4) as usize, ..RandomParams::default() }
}

/// One round trip; `Err` carries the counterexample.
pub fn round_trip(seed: u64, params: &RandomParams) -> Result<(), Box<Counterexample>> {
    let rep = random_additive_rep(seed, params);
    let form = generate(&rep);
    let fail = |reason: String| Box::new(Counterexample { seed, rep: rep.clone(), form: form.clone(), reason });
    if !is_wz_form(form.components()) {
        return Err(fail("generated tuple is not a WZ-form".into()));
    }
    let back = decompose(&form).map_err(|e| fail(e.to_string()))?;
    let again = generate(&back);
    if again != form {
        return Err(fail("regenerated form differs".into()));
    }
    Ok(())
}

pub fn round_trips_seq(seeds: &[u64]) -> Vec<Result<(), Box<Counterexample>>> {
    seeds.iter().map(|&s| round_trip(s, &fuzz_params(s))).collect()
}

#[cfg(feature = "parallel")]
pub fn round_trips_par(seeds: &[u64]) -> Vec<Result<(), Box<Counterexample>>> {
    use rayon::prelude::*;
    seeds.par_iter().map(|&s| round_trip(s, &fuzz_params(s))).collect()
}

/// Round trips for every seed, in seed order.
pub fn round_trips(seeds: &[u64]) -> Vec<Result<(), Box<Counterexample>>> {
    #[cfg(feature = "parallel")]
    return round_trips_par(seeds);
    #[cfg(not(feature = "parallel"))]
    return round_trips_seq(seeds);
}

/// `is_wz_form` on every tuple.
pub fn verify_all(tuples: &[Vec<RationalFunction>]) -> Vec<bool> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        tuples.par_iter().map(|t| is_wz_form(t)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    tuples.iter().map(|t| is_wz_form(t)).collect()
}

/// `decompose` on every form.
pub fn decompose_all(forms: &[WZForm]) -> Vec<Result<AdditiveRepresentation, Error>> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        forms.par_iter().map(decompose).collect()
    }
    #[cfg(not(feature = "parallel"))]
    forms.iter().map(decompose).collect()
}
