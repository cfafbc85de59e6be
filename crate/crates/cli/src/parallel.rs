//! Rayon-backed sweeps. Results always come back in input order.

use hurwitz_core::closedform::{closed_form, monotone_closed_form_from, simple_closed_form_from};
use hurwitz_core::npoint::{
    check_degree, enumerate_cycles, monotone_from_census, monotone_generating_parts,
    simple_from_census, simple_generating_parts, AffineCensus,
};
use hurwitz_core::oracle::{conjugacy_class, count_from_root};
use hurwitz_core::{ConstellationQuery, GenusClosedForm, Kind, Partition, Result};
use num_bigint::BigUint;
use rayon::prelude::*;

/// Below this many parts the cycle sum is too small to be worth splitting.
const PARALLEL_PARTS: usize = 6;

fn census(parts: &[u32]) -> AffineCensus {
    enumerate_cycles(parts.len())
        .par_iter()
        .fold(AffineCensus::new, |mut acc, cycle| {
            acc.add_cycle(parts, cycle);
            acc
        })
        .reduce(AffineCensus::new, |mut a, b| {
            a.merge(b);
            a
        })
}

/// Same result as the serial closed form, splitting the cycle sum across threads.
pub fn closed_form_par(kind: Kind, mu: &Partition) -> Result<GenusClosedForm> {
    let parts = mu.parts();
    if parts.len() < PARALLEL_PARTS {
        return closed_form(kind, mu);
    }
    check_degree(parts)?;
    let c = census(parts);
    match kind {
        Kind::Monotone => monotone_closed_form_from(mu, &monotone_from_census(parts, &c)),
        Kind::Simple => simple_closed_form_from(mu, &simple_from_census(parts, &c)),
    }
}

pub fn closed_forms(kind: Kind, mus: &[Partition]) -> Vec<Result<GenusClosedForm>> {
    mus.par_iter().map(|mu| closed_form_par(kind, mu)).collect()
}

/// Serial engine, kept for cross-checking the parallel path.
pub fn closed_form_serial(kind: Kind, mu: &Partition) -> Result<GenusClosedForm> {
    match kind {
        Kind::Monotone => monotone_closed_form_from(mu, &monotone_generating_parts(mu.parts())?),
        Kind::Simple => simple_closed_form_from(mu, &simple_generating_parts(mu.parts())?),
    }
}

/// Constellation count, one task per root permutation.
pub fn count_constellations_par(q: &ConstellationQuery) -> Result<BigUint> {
    q.check_limits()?;
    let roots = conjugacy_class(&q.mu);
    Ok(roots
        .par_iter()
        .map(|root| BigUint::from(count_from_root(root, q.b, q.monotone)))
        .reduce(BigUint::default, |a, b| a + b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use hurwitz_core::count_constellations;

    #[test]
    fn parallel_engine_matches_serial() {
        for parts in ["2,1,1,1,1,1", "1,1,1,1,1,1", "3,1,1,1,1,1"] {
            let mu: Partition = parts.parse().unwrap();
            for kind in [Kind::Simple, Kind::Monotone] {
                assert_eq!(
                    closed_form_par(kind, &mu).unwrap(),
                    closed_form_serial(kind, &mu).unwrap()
                );
            }
        }
    }

    #[test]
    fn parallel_oracle_matches_serial() {
        let q = ConstellationQuery::new("3,1,1".parse().unwrap(), 5, true);
        assert_eq!(count_constellations_par(&q).unwrap(), count_constellations(&q).unwrap());
    }

    #[test]
    fn sweep_preserves_order() {
        let mus = hurwitz_core::partitions::partitions_of(5);
        let forms = closed_forms(Kind::Simple, &mus);
        for (mu, form) in mus.iter().zip(forms) {
            assert_eq!(&form.unwrap().mu, mu);
        }
    }
}
