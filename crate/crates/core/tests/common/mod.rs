//! Structural checks shared by the property and acceptance suites.
#![allow(dead_code)]

use qcdesign::oracle::{all_projections_full, j_characteristics, projectivity, spectrum_bruteforce, spectrum_from_j};
use qcdesign::{build_design, Branch, DesignMatrix, GeneratorSpec, Rational, Resolution, WordSpectrum};

/// Words of the design that avoid column `c`, as if `c` had been deleted.
pub fn spectrum_avoiding(design: &DesignMatrix, c: usize) -> WordSpectrum {
    let j = j_characteristics(design).unwrap();
    WordSpectrum::from_groups(
        j.words()
            .filter(|(s, _)| s >> c & 1 == 0)
            .map(|(s, _)| (s.count_ones() as usize, j.aliasing(s), 1)),
    )
}

/// The eighth-fraction design's spectrum is the sixteenth-fraction
/// spectrum restricted to subsets without F1.
pub fn deletion_restriction(spec: &GeneratorSpec) -> Result<(), String> {
    let family = spec.family().sixteenth();
    let sixteenth = build_design(&spec.with_family(family, spec.branch()).unwrap());
    let eighth = build_design(&spec.with_family(family.eighth(), spec.branch()).unwrap());
    let restricted = spectrum_avoiding(&sixteenth, 0);
    let measured = spectrum_bruteforce(&eighth).unwrap();
    if restricted == measured {
        Ok(())
    } else {
        Err(format!("restricted {restricted} vs eighth {measured}"))
    }
}

/// The four generator relabelings behind the deletion symmetry: identity,
/// `u <-> v`, `(u, v) -> (3u, 3v)`, and both.
pub fn relabelings(spec: &GeneratorSpec) -> Vec<GeneratorSpec> {
    let triple = |x: &[u8]| x.iter().map(|&d| 3 * d % 4).collect::<Vec<u8>>();
    let forms = [
        (spec.u().to_vec(), spec.v().to_vec(), spec.branch()),
        (
            spec.v().to_vec(),
            spec.u().to_vec(),
            spec.branch().map(|b| Branch { u0: b.v0, v0: b.u0 }),
        ),
        (
            triple(spec.u()),
            triple(spec.v()),
            spec.branch().map(|b| Branch {
                u0: 3 * b.u0 % 4,
                v0: 3 * b.v0 % 4,
            }),
        ),
        (
            triple(spec.v()),
            triple(spec.u()),
            spec.branch().map(|b| Branch {
                u0: 3 * b.v0 % 4,
                v0: 3 * b.u0 % 4,
            }),
        ),
    ];
    forms
        .into_iter()
        .map(|(u, v, b)| GeneratorSpec::new(spec.family(), u, v, b).unwrap())
        .collect()
}

/// Deleting any one of F1–F4 gives a design whose spectrum some relabeled
/// generator pair also attains with F1 deleted, so the four eighth-fraction
/// classes coincide.
pub fn four_way_deletion(spec: &GeneratorSpec) -> Result<(), String> {
    let family = spec.family().sixteenth();
    let spec = spec.with_family(family, spec.branch()).unwrap();
    let design = build_design(&spec);
    let f1_deleted: Vec<WordSpectrum> = relabelings(&spec)
        .iter()
        .map(|s| spectrum_from_j(&j_characteristics(&build_design(s).without_column(0)).unwrap()))
        .collect();
    for c in 0..4 {
        let spectrum = spectrum_from_j(&j_characteristics(&design.without_column(c)).unwrap());
        if !f1_deleted.contains(&spectrum) {
            return Err(format!(
                "deleting F{} gives {spectrum}, matched by no relabeling with F1 deleted",
                c + 1
            ));
        }
    }
    Ok(())
}

/// `1 + Σ A_k = 2^q / N`.
pub fn parseval(design: &DesignMatrix) -> Result<(), String> {
    let (_, wlp) = spectrum_bruteforce(design).unwrap().metrics(design.factors()).unwrap();
    let total = wlp.iter().fold(Rational::from_integer(1), |acc, a| acc + a);
    let expected = Rational::new(1 << design.factors(), design.runs() as i64);
    if total == expected {
        Ok(())
    } else {
        Err(format!("1 + sum A_k = {total}, expected {expected}"))
    }
}

/// Projectivity is at least `⌈R⌉ - 1`, and every level below it is full.
pub fn projectivity_properties(design: &DesignMatrix) -> Result<(), String> {
    let (resolution, _) = spectrum_bruteforce(design).unwrap().metrics(design.factors()).unwrap();
    let p = projectivity(design);
    if let Resolution::Finite(r) = resolution {
        let lower = r.ceil().to_integer() - 1;
        if (p as i64) < lower {
            return Err(format!("projectivity {p} below ceil(R) - 1 = {lower} (R = {r})"));
        }
    }
    if let Some(level) = (1..p).find(|&k| !all_projections_full(design, k)) {
        return Err(format!("projectivity {p} but some {level}-projection is deficient"));
    }
    if p < design.factors() && all_projections_full(design, p + 1) {
        return Err(format!("projectivity {p} but every {}-projection is full", p + 1));
    }
    Ok(())
}
