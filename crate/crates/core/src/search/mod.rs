//! Exhaustive optimization over lambda profiles and branch classes.
//!
//! Because the spectrum depends on `(u, v)` only through the lambda
//! profile (and on `(u0, v0)` only through its table column class), a
//! search over every composition of `n` into ten parts, times one
//! representative per class, covers every design of a family.

mod reference;
mod tables;

pub use reference::{reference_rows, ReferenceRow, RegularComparison, RegularReference, TableId};
pub use tables::{orthogonal_array_ceiling, reproduce_table, Check, Fraction, TableReport, TableRow};

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::combinatorics::Compositions;
use crate::error::{Error, Result};
use crate::oracle;
use crate::qc::{build_design, Branch, Family, GeneratorSpec, LambdaProfile};
use crate::spectrum::{Rational, Resolution};
use crate::theory::{theory_spectrum, Table1Class, Table2Class};

/// Largest `n` accepted by [`optimize`].
pub const DEFAULT_MAX_N: usize = 8;

/// Every lambda profile with `n` pairs, in lexicographic order.
pub fn enumerate_lambdas(n: usize) -> impl Iterator<Item = LambdaProfile> {
    Compositions::new(n, 10).map(|parts| {
        let values: [usize; 10] = parts.try_into().expect("ten parts");
        LambdaProfile::new(values)
    })
}

/// One branch pair per table column class, or `[None]` for even-run families.
pub fn branch_representatives(family: Family) -> Vec<Option<Branch>> {
    match family {
        Family::SixteenthEven | Family::EighthEven => vec![None],
        Family::SixteenthOdd => Table1Class::ALL.iter().map(|c| Some(c.representative())).collect(),
        Family::EighthOdd => Table2Class::ALL.iter().map(|c| Some(c.representative())).collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Criterion {
    MaxResolution,
    MinAberration,
    MaxProjectivity,
}

impl Criterion {
    pub const ALL: [Criterion; 3] = [
        Criterion::MaxResolution,
        Criterion::MinAberration,
        Criterion::MaxProjectivity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Criterion::MaxResolution => "resolution",
            Criterion::MinAberration => "aberration",
            Criterion::MaxProjectivity => "projectivity",
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Criterion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Criterion::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::UnknownCriterion(s.to_string()))
    }
}

/// A design of the search space with its closed-form metrics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub family: Family,
    pub lambda: LambdaProfile,
    pub branch: Option<Branch>,
    pub resolution: Resolution,
    /// `A_1, …, A_q`.
    pub wlp: Vec<Rational>,
    /// Shortest word with aliasing index 1, if any.
    pub shortest_complete_word: Option<usize>,
    /// Filled in only when the projectivity criterion is in use.
    pub projectivity: Option<usize>,
}

impl Candidate {
    pub fn spec(&self) -> GeneratorSpec {
        GeneratorSpec::from_lambda(self.family, &self.lambda, self.branch).expect("search candidates are valid")
    }

    fn key(&self) -> (LambdaProfile, Option<Branch>) {
        (self.lambda, self.branch)
    }
}

pub fn evaluate(family: Family, lambda: &LambdaProfile, branch: Option<Branch>) -> Result<Candidate> {
    let spectrum = theory_spectrum(family, lambda, branch)?;
    let (resolution, wlp) = spectrum.metrics(family.factors(lambda.n()))?;
    Ok(Candidate {
        family,
        lambda: *lambda,
        branch,
        resolution,
        wlp,
        shortest_complete_word: spectrum.complete_words().map(|g| g.length).min(),
        projectivity: None,
    })
}

/// Compares two candidates by criterion alone; `Less` means `a` is better.
///
/// Projectivity compares as unknown-is-worst, so fill it in first.
pub fn compare(criterion: Criterion, a: &Candidate, b: &Candidate) -> Ordering {
    match criterion {
        Criterion::MaxResolution => b.resolution.cmp(&a.resolution),
        Criterion::MinAberration => a.wlp.cmp(&b.wlp),
        Criterion::MaxProjectivity => b.projectivity.cmp(&a.projectivity),
    }
}

impl Criterion {
    /// The criterion followed by the other two, in the order used to break ties.
    pub fn chain(self) -> [Criterion; 3] {
        use Criterion::*;
        match self {
            MaxResolution => [MaxResolution, MinAberration, MaxProjectivity],
            MinAberration => [MinAberration, MaxResolution, MaxProjectivity],
            MaxProjectivity => [MaxProjectivity, MaxResolution, MinAberration],
        }
    }
}

/// Every candidate of `(n, family)` evaluated by the closed-form theory.
pub fn candidates(n: usize, family: Family) -> Result<Vec<Candidate>> {
    if n == 0 {
        return Err(Error::ZeroLength);
    }
    let lambdas: Vec<LambdaProfile> = enumerate_lambdas(n).collect();
    let branches = branch_representatives(family);
    lambdas
        .par_iter()
        .flat_map_iter(|lambda| branches.iter().map(move |&b| evaluate(family, lambda, b)))
        .collect()
}

/// Outcome of an exhaustive search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub family: Family,
    pub n: usize,
    pub criterion: Criterion,
    pub lambda: LambdaProfile,
    pub branch: Option<Branch>,
    pub resolution: Resolution,
    pub wlp: Vec<Rational>,
    /// Measured by the oracle on the realized design.
    pub projectivity: usize,
    /// The minimum-aberration optimum also attains the maximum resolution.
    pub criteria_coincide: bool,
    pub regular_reference: Option<RegularReference>,
    /// Every candidate equivalent to the optimum under the criterion, in tie-break order.
    pub ties: Vec<(LambdaProfile, Option<Branch>)>,
}

pub fn optimize(n: usize, family: Family, criterion: Criterion) -> Result<SearchResult> {
    optimize_with_limit(n, family, criterion, DEFAULT_MAX_N)
}

pub fn optimize_with_limit(n: usize, family: Family, criterion: Criterion, max_n: usize) -> Result<SearchResult> {
    if n == 0 || n > max_n {
        return Err(Error::SearchRange { n, max: max_n });
    }
    check_oracle_size(family, n)?;
    let pool = candidates(n, family)?;
    let max_resolution = best_of(&pool, Criterion::MaxResolution).resolution;
    let ma_resolution = best_by_chain(pool.clone(), [Criterion::MinAberration, Criterion::MaxResolution])
        .iter()
        .map(|c| c.resolution)
        .max()
        .expect("candidate pool is nonempty");

    let mut ties = best_by_chain(pool, criterion.chain());
    ties.sort_by_key(Candidate::key);
    let best = ties[0].clone();

    Ok(SearchResult {
        family,
        n,
        criterion,
        lambda: best.lambda,
        branch: best.branch,
        resolution: best.resolution,
        wlp: best.wlp,
        projectivity: best.projectivity.expect("projectivity is part of every chain"),
        criteria_coincide: ma_resolution == max_resolution,
        regular_reference: reference::regular_for(family, n),
        ties: ties.iter().map(Candidate::key).collect(),
    })
}

fn best_of(pool: &[Candidate], criterion: Criterion) -> &Candidate {
    pool.par_iter()
        .min_by(|a, b| compare(criterion, a, b))
        .expect("candidate pool is nonempty")
}

/// Narrows the pool to the candidates optimal under each criterion in
/// turn. Projectivity is measured only for candidates that reach it.
fn best_by_chain<const K: usize>(mut pool: Vec<Candidate>, chain: [Criterion; K]) -> Vec<Candidate> {
    for criterion in chain {
        if criterion == Criterion::MaxProjectivity {
            pool = most_projective(pool);
            continue;
        }
        let best = best_of(&pool, criterion).clone();
        pool.retain(|c| compare(criterion, c, &best) == Ordering::Equal);
    }
    pool
}

/// Keeps the candidates of maximum projectivity and records it.
///
/// A complete word of length `L` halves its `L`-column projection, so
/// projectivity is below the shortest complete word; it is at least
/// `⌈R⌉ - 1`. Levels are tried from the largest upper bound downward, and
/// projectivity `>= k` needs only the `k`-column projections to be full.
fn most_projective(pool: Vec<Candidate>) -> Vec<Candidate> {
    let bounded: Vec<(usize, usize, Candidate)> = pool
        .into_iter()
        .map(|c| {
            let q = c.family.factors(c.lambda.n());
            let upper = c.shortest_complete_word.map_or(q, |l| l - 1);
            let lower = match c.resolution {
                Resolution::Finite(r) => (r.ceil().to_integer() as usize).saturating_sub(1),
                Resolution::Unbounded => q,
            };
            (lower.min(upper), upper, c)
        })
        .collect();
    let mut level = bounded.iter().map(|&(_, upper, _)| upper).max().unwrap_or(0);
    loop {
        let winners: Vec<Candidate> = bounded
            .par_iter()
            .filter(|(lower, upper, c)| {
                *upper >= level && (*lower >= level || oracle::all_projections_full(&build_design(&c.spec()), level))
            })
            .map(|(_, _, c)| Candidate {
                projectivity: Some(level),
                ..c.clone()
            })
            .collect();
        if !winners.is_empty() || level == 0 {
            return winners;
        }
        level -= 1;
    }
}

fn check_oracle_size(family: Family, n: usize) -> Result<()> {
    let q = family.factors(n);
    if q > 64 {
        return Err(Error::TooManyColumns { q, cap: 64 });
    }
    Ok(())
}

/// Builds the design for every one of the 16 branch pairs and checks its
/// brute-force spectrum against the closed form for the pair's class
/// representative. Slow: one full J-transform per (lambda, pair).
pub fn verify_branch_classes(n: usize, family: Family) -> Result<()> {
    if !family.is_odd_run() {
        return Err(Error::MissingBranch { family });
    }
    for lambda in enumerate_lambdas(n) {
        for b in Branch::all() {
            let rep = match family {
                Family::SixteenthOdd => Table1Class::of(b).representative(),
                _ => Table2Class::of(b).representative(),
            };
            let spec = GeneratorSpec::from_lambda(family, &lambda, Some(b))?;
            let own = oracle::spectrum_bruteforce(&build_design(&spec))?;
            let class = theory_spectrum(family, &lambda, Some(rep))?;
            if own != class {
                return Err(Error::BranchClassMismatch {
                    lambda: lambda.to_string(),
                    branch: b.to_string(),
                });
            }
        }
    }
    Ok(())
}
