//! Tropical compactifications: which strata the closure of `Y` meets, the
//! properness criterion `Trop_{X'}(Y) ⊆ Σ_X`, and the refine-and-select
//! construction of a compactifying fan.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cones::{common_refinement, is_covered, support_contains, support_equal, Cone, Fan};
use crate::error::{Error, Result};
use crate::exactlin::{solve_nonneg, IntegerVector, RationalMatrix};
use crate::trop::TropFan;

/// Whether `|t|` meets the relative interior of `sigma`. On success returns
/// a witness: the sum of the rays of a refined cell whose relative interior
/// lies in `relint(sigma) ∩ |t|`.
pub fn tevelev_meets(t: &TropFan, sigma: &Cone) -> Result<Option<IntegerVector>> {
    let refined = common_refinement(&t.fan, &Fan::from_cone(sigma))?;
    for cell in refined.cones() {
        if strictly_inside(&cell.cone, sigma) {
            let w = cell.cone.interior_point();
            debug_assert!(sigma.relative_interior_contains(&w.to_rational()));
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Whether some point of `cell ⊆ sigma` satisfies every facet inequality of
/// `sigma` strictly, decided on the coefficients `λ ≥ 0` of the cell's rays.
fn strictly_inside(cell: &Cone, sigma: &Cone) -> bool {
    let k = cell.rays().len();
    let facets = sigma.facets();
    if facets.is_empty() {
        return true;
    }
    if k == 0 {
        return false;
    }
    let mut entries = Vec::with_capacity((k + facets.len()) * k);
    for i in 0..k {
        for j in 0..k {
            entries.push(if i == j {
                BigRational::one()
            } else {
                BigRational::zero()
            });
        }
    }
    for a in facets {
        for r in cell.rays() {
            entries.push(BigRational::from_integer(a.dot(r)));
        }
    }
    let m = RationalMatrix::new(k + facets.len(), k, entries).expect("shape");
    let strict: BTreeSet<usize> = (k..k + facets.len()).collect();
    solve_nonneg(&m, &strict).is_some()
}

/// One row of a compactification report, for a cone `σ` of `Σ_X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeReport {
    /// Indices into the rays of `Σ_X`.
    pub rays: Vec<usize>,
    pub dim: usize,
    /// The closure of `Y` meets the stratum of `σ`.
    pub meets: bool,
    pub witness: Option<IntegerVector>,
    /// `dim Y − dim σ`, reported only when the premise `|Trop| ⊇ |Σ_X|`
    /// holds.
    pub expected_dim: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompactificationReport {
    /// `|Trop_{X'}(Y)| ⊆ |Σ_X|`; absent for dimension checks.
    pub proper: Option<bool>,
    /// `|Trop_{X'}(Y)| ⊇ |Σ_X|`; absent for properness checks.
    pub premise_holds: Option<bool>,
    /// A point of `|Σ_X| ∖ |Trop|` when the premise fails.
    pub premise_witness: Option<IntegerVector>,
    /// Cones of `Σ_X`, ordered lexicographically by their ray lists.
    pub cones: Vec<ConeReport>,
}

fn meets_table(t: &TropFan, sigma_x: &Fan) -> Result<Vec<ConeReport>> {
    let mut rows = sigma_x
        .cones()
        .iter()
        .map(|c| {
            let witness = tevelev_meets(t, &c.cone)?;
            Ok(ConeReport {
                rays: c.rays.clone(),
                dim: c.cone.dim(),
                meets: witness.is_some(),
                witness,
                expected_dim: None,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by(|a, b| a.rays.cmp(&b.rays));
    Ok(rows)
}

fn same_dim(t: &TropFan, f: &Fan) -> Result<()> {
    if t.ambient_dim() != f.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: f.ambient_dim(),
            found: t.ambient_dim(),
        });
    }
    Ok(())
}

/// Properness of the closure of `Y` in `X(Σ_X)`, where `Σ_X` is a subfan of
/// the complete fan `Σ_X'`.
pub fn check_proper(
    t: &TropFan,
    sigma_x: &Fan,
    sigma_complete: &Fan,
) -> Result<CompactificationReport> {
    same_dim(t, sigma_x)?;
    same_dim(t, sigma_complete)?;
    if !sigma_x.is_subfan_of(sigma_complete) {
        let missing = sigma_x
            .cones()
            .iter()
            .find(|c| sigma_complete.position(&c.cone).is_none())
            .map(|c| {
                let rays: Vec<String> = c.cone.rays().iter().map(ToString::to_string).collect();
                format!(
                    "cone spanned by [{}] is not in the complete fan",
                    rays.join(", ")
                )
            })
            .unwrap_or_default();
        return Err(Error::NotSubfan(missing));
    }
    if !sigma_complete.is_complete() {
        return Err(Error::NotComplete);
    }
    Ok(CompactificationReport {
        proper: Some(support_contains(sigma_x, &t.fan)?),
        premise_holds: None,
        premise_witness: None,
        cones: meets_table(t, sigma_x)?,
    })
}

/// Checks `|t| ⊇ |Σ_X|` and, when it holds, reports the expected dimension
/// `dim Y − dim σ` of the intersection of the closure of `Y` with each
/// stratum.
pub fn check_dimensions(
    t: &TropFan,
    sigma_x: &Fan,
    dim_y: usize,
) -> Result<CompactificationReport> {
    same_dim(t, sigma_x)?;
    let premise = support_contains(&t.fan, sigma_x)?;
    let mut cones = meets_table(t, sigma_x)?;
    let premise_witness =
        if premise {
            for row in &mut cones {
                row.expected_dim = Some(dim_y as i64 - row.dim as i64);
            }
            None
        } else {
            Some(outside_witness(&t.fan, sigma_x).ok_or_else(|| {
                Error::Postcondition("no witness found for |Σ_X| ⊄ |Trop|".into())
            })?)
        };
    Ok(CompactificationReport {
        proper: None,
        premise_holds: Some(premise),
        premise_witness,
        cones,
    })
}

/// A lattice point of `|g| ∖ |f|`: rays of `g` first, then positive
/// combinations of the rays of each cone with growing coefficients.
fn outside_witness(f: &Fan, g: &Fan) -> Option<IntegerVector> {
    for r in g.rays() {
        if !f.contains_lattice_point(r) {
            return Some(r.clone());
        }
    }
    const MAX_COEFF: i64 = 12;
    for c in g.cones().iter().filter(|c| c.cone.dim() >= 2) {
        let rays = c.cone.rays();
        for bound in 1..=MAX_COEFF {
            let mut coeffs = vec![1i64; rays.len()];
            loop {
                if coeffs.contains(&bound) || bound == 1 {
                    let w = rays
                        .iter()
                        .zip(&coeffs)
                        .fold(IntegerVector::zeros(g.ambient_dim()), |acc, (r, &k)| {
                            acc.combine(&BigInt::one(), r, &BigInt::from(k))
                        });
                    if !f.contains_lattice_point(&w) {
                        return Some(w);
                    }
                }
                let mut i = 0;
                while i < coeffs.len() && coeffs[i] == bound {
                    coeffs[i] = 1;
                    i += 1;
                }
                if i == coeffs.len() {
                    break;
                }
                coeffs[i] += 1;
            }
        }
    }
    None
}

/// The output of the compactification construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Compactification {
    /// `Σ_X`: the cones of the refined fan lying in `|t|`.
    pub fan: Fan,
    /// `Σ''`: the refinement of `Σ_star` in which `t` is a subcomplex.
    pub refined: Fan,
    pub report: CompactificationReport,
}

/// Builds `Σ_X` with `X(Σ_X)` a tropical compactification of `Y`.
///
/// `Σ_star` is refined by the hyperplanes cutting out the linear span of
/// every nonzero cone of `t`, which makes `t` a union of cones; the cones lying in `|t|`
/// form the output. The subcomplex, properness and all-strata-met
/// postconditions are verified before returning.
pub fn build_compactification(t: &TropFan, sigma_star: &Fan) -> Result<Compactification> {
    same_dim(t, sigma_star)?;
    if !sigma_star.is_complete() {
        return Err(Error::NotComplete);
    }
    let n = t.ambient_dim();
    let maximal_t: Vec<&Cone> = t.fan.maximal_cones().into_iter().map(|c| &c.cone).collect();
    // Each facet of a cone of t spans a hyperplane of that cone's span cut
    // out by one of the facet's own equations, so the spans suffice.
    let hyperplanes: BTreeSet<IntegerVector> = t
        .fan
        .cones()
        .iter()
        .filter(|c| !c.cone.is_zero())
        .flat_map(|c| c.cone.equations().iter().cloned())
        .collect();
    let mut refined = sigma_star.clone();
    for a in &hyperplanes {
        refined = slice(&refined, a)?;
    }
    let selected: Vec<Cone> = refined
        .maximal_cones()
        .iter()
        .flat_map(|c| c.cone.faces())
        .filter(|c| maximal_t.iter().any(|tau| tau.contains_cone(c)))
        .collect();
    let fan = Fan::assemble(n, selected)?;

    // (a) every cone of t is a union of cones of the output.
    for tau in &maximal_t {
        let cells: Vec<Cone> = fan
            .cones()
            .iter()
            .filter(|c| tau.contains_cone(&c.cone))
            .map(|c| c.cone.clone())
            .collect();
        if !is_covered(tau, &cells) {
            return Err(Error::Postcondition(
                "tropical fan is not a subcomplex of the refinement".into(),
            ));
        }
    }
    if !support_equal(&fan, &t.fan)? {
        return Err(Error::Postcondition(
            "output support differs from |Trop|".into(),
        ));
    }
    // (b) properness.
    let report = check_proper(t, &fan, &refined)?;
    if report.proper != Some(true) {
        return Err(Error::Postcondition("closure is not proper".into()));
    }
    // (c) every stratum is met.
    if let Some(row) = report.cones.iter().find(|r| !r.meets) {
        return Err(Error::Postcondition(format!(
            "stratum of cone {:?} is not met",
            row.rays
        )));
    }
    Ok(Compactification {
        fan,
        refined,
        report,
    })
}

/// Refines `f` by the hyperplane `a·w = 0`.
fn slice(f: &Fan, a: &IntegerVector) -> Result<Fan> {
    let n = f.ambient_dim();
    let mut cones = Vec::new();
    for c in f.maximal_cones() {
        let lo = c.cone.rays().iter().any(|r| a.dot(r) < BigInt::zero());
        let hi = c.cone.rays().iter().any(|r| a.dot(r) > BigInt::zero());
        if !(lo && hi) {
            cones.push(c.cone.clone());
            continue;
        }
        for side in [a.clone(), a.neg()] {
            let mut ineqs = c.cone.facets().to_vec();
            ineqs.push(side);
            cones.push(Cone::from_inequalities(n, &ineqs, c.cone.equations())?);
        }
    }
    Fan::assemble(n, cones)
}
