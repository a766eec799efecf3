//! Theory against oracle over whole design spaces, plus identities every
//! design must satisfy.

use anyhow::Result;
use qcdesign::search::enumerate_lambdas;
use qcdesign::theory::{projectivity_bound, theory_spectrum};
use qcdesign::{build_design, oracle, Branch, Family, GeneratorSpec, LambdaProfile, Rational, Resolution};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Largest run count whose projectivity is measured; the DFS gets slow beyond it.
const PROJECTIVITY_MAX_RUNS: usize = 1 << 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub spec: String,
    pub check: &'static str,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub designs: usize,
    pub failures: usize,
    pub first: Option<Counterexample>,
}

impl Tally {
    fn absorb(&mut self, other: Tally) {
        self.designs += other.designs;
        self.failures += other.failures;
        if self.first.is_none() {
            self.first = other.first;
        }
    }
}

fn describe(spec: &GeneratorSpec) -> String {
    let digits = |xs: &[u8]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    let mut s = format!(
        "{} n={} lambda={} u={} v={}",
        spec.family(),
        spec.n(),
        spec.lambda(),
        digits(spec.u()),
        digits(spec.v())
    );
    if let Some(b) = spec.branch() {
        s.push_str(&format!(" u0v0={b}"));
    }
    s
}

/// Runs every check on one design and returns the first failure.
pub fn check_design(spec: &GeneratorSpec) -> Result<Option<Counterexample>> {
    let fail = |check, detail: String| {
        Ok(Some(Counterexample {
            spec: describe(spec),
            check,
            detail,
        }))
    };
    let design = build_design(spec);
    let measured = oracle::spectrum_bruteforce(&design)?;
    let predicted = theory_spectrum(spec.family(), &spec.lambda(), spec.branch())?;
    if measured != predicted {
        return fail("theory = oracle", format!("oracle {measured}, theory {predicted}"));
    }

    let q = design.factors();
    let (resolution, wlp) = measured.metrics(q)?;
    let total = wlp.iter().fold(Rational::from_integer(1), |acc, a| acc + a);
    let expected = Rational::new(1i64 << q, design.runs() as i64);
    if total != expected {
        return fail("parseval", format!("1 + sum A_k = {total}, expected {expected}"));
    }

    if design.runs() <= PROJECTIVITY_MAX_RUNS {
        let p = oracle::projectivity(&design);
        let lower = match resolution {
            Resolution::Finite(r) => (r.ceil().to_integer() as usize).saturating_sub(1),
            Resolution::Unbounded => q,
        };
        let upper = measured.complete_words().map(|g| g.length - 1).min().unwrap_or(q);
        if p < lower || p > upper {
            return fail(
                "projectivity bounds",
                format!("projectivity {p} outside [{lower}, {upper}]"),
            );
        }
        if let Ok(bound) = projectivity_bound(spec.n(), spec.family()) {
            if p > bound {
                return fail("closed-form bound", format!("projectivity {p} above {bound}"));
            }
        }
    }
    Ok(None)
}

fn run(specs: Vec<GeneratorSpec>) -> Result<Tally> {
    let results: Vec<Option<Counterexample>> = specs.par_iter().map(check_design).collect::<Result<_>>()?;
    let mut tally = Tally {
        designs: results.len(),
        ..Tally::default()
    };
    for c in results.into_iter().flatten() {
        tally.failures += 1;
        tally.first.get_or_insert(c);
    }
    Ok(tally)
}

fn branches(family: Family) -> Vec<Option<Branch>> {
    if family.is_odd_run() {
        Branch::all().map(Some).collect()
    } else {
        vec![None]
    }
}

/// Every lambda profile of length `n`, with all sixteen `u0v0` pairs for
/// branched families.
pub fn exhaustive(n: usize, family: Family) -> Result<Tally> {
    let lambdas: Vec<LambdaProfile> = enumerate_lambdas(n).collect();
    let mut specs = Vec::new();
    for lambda in &lambdas {
        for b in branches(family) {
            specs.push(GeneratorSpec::from_lambda(family, lambda, b)?);
        }
    }
    run(specs)
}

/// `count` designs with uniformly random generators, drawn from a seeded stream.
pub fn sampled(n: usize, family: Family, count: usize, rng: &mut ChaCha8Rng) -> Result<Tally> {
    let mut specs = Vec::with_capacity(count);
    for _ in 0..count {
        let u: Vec<u8> = (0..n).map(|_| rng.gen_range(0..4)).collect();
        let v: Vec<u8> = (0..n).map(|_| rng.gen_range(0..4)).collect();
        let branch = if family.is_odd_run() {
            Some(Branch::new(rng.gen_range(0..4), rng.gen_range(0..4))?)
        } else {
            None
        };
        specs.push(GeneratorSpec::new(family, u, v, branch)?);
    }
    run(specs)
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn combine(tallies: impl IntoIterator<Item = Tally>) -> Tally {
    let mut total = Tally::default();
    for t in tallies {
        total.absorb(t);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_spaces_pass() {
        for family in Family::ALL {
            let t = exhaustive(1, family).unwrap();
            assert_eq!(t.failures, 0, "{:?}", t.first);
        }
        assert_eq!(exhaustive(2, Family::SixteenthEven).unwrap().designs, 55);
        assert_eq!(exhaustive(1, Family::EighthOdd).unwrap().designs, 160);
    }

    #[test]
    fn sampling_is_reproducible() {
        let a = sampled(3, Family::EighthOdd, 5, &mut seeded(7)).unwrap();
        let b = sampled(3, Family::EighthOdd, 5, &mut seeded(7)).unwrap();
        assert_eq!(a, b);
        assert_eq!((a.designs, a.failures), (5, 0));
    }
}
