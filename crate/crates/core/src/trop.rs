//! Constant-coefficient tropicalization of subvarieties of tori.
//!
//! Under the trivial valuation only the supports of Laurent polynomials
//! matter. The tropical hypersurface of `f` is the set of `w ∈ N_R` where
//! `min_u ⟨w, u⟩` over the support is attained at least twice: the union of
//! the normal cones of the edges of the Newton polytope.

use std::collections::BTreeSet;

use crate::cones::{common_refinement, Cone, Fan};
use crate::error::{Error, Result};
use crate::exactlin::{saturated_basis, solve_in_basis, IntegerVector, RationalVector};

/// Support of a Laurent polynomial in `rank` variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolySupport {
    rank: usize,
    exponents: Vec<IntegerVector>,
}

impl PolySupport {
    /// Exponents are deduplicated and sorted.
    pub fn new(rank: usize, exponents: Vec<IntegerVector>) -> Result<PolySupport> {
        for u in &exponents {
            if u.dim() != rank {
                return Err(Error::DimensionMismatch {
                    expected: rank,
                    found: u.dim(),
                });
            }
        }
        let set: BTreeSet<IntegerVector> = exponents.into_iter().collect();
        match set.len() {
            0 => Err(Error::InvalidSupport("no exponents".into())),
            1 => Err(Error::EmptyHypersurface),
            _ => Ok(PolySupport {
                rank,
                exponents: set.into_iter().collect(),
            }),
        }
    }

    pub fn from_i64s(rank: usize, exponents: &[&[i64]]) -> Result<PolySupport> {
        PolySupport::new(
            rank,
            exponents
                .iter()
                .map(|u| IntegerVector::from_i64s(u))
                .collect(),
        )
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn exponents(&self) -> &[IntegerVector] {
        &self.exponents
    }

    fn differences(&self) -> Vec<IntegerVector> {
        let u0 = &self.exponents[0];
        self.exponents[1..]
            .iter()
            .map(|u| u.add(&u0.neg()))
            .collect()
    }

    /// Whether `min_u ⟨w, u⟩` is attained at least twice.
    pub fn is_tie(&self, w: &RationalVector) -> bool {
        let values: Vec<_> = self.exponents.iter().map(|u| u.dot_rational(w)).collect();
        let min = values.iter().min().expect("nonempty support");
        values.iter().filter(|v| *v == min).count() >= 2
    }

    /// Edges of the Newton polytope as pairs of exponent indices, read off
    /// the 2-faces of the cone over `{1} × support`.
    fn edges(&self) -> Vec<(usize, usize)> {
        let lifted: Vec<IntegerVector> = self
            .exponents
            .iter()
            .map(|u| {
                let mut e = vec![num_bigint::BigInt::from(1)];
                e.extend(u.entries().iter().cloned());
                IntegerVector::new(e)
            })
            .collect();
        let cone = Cone::from_rays(self.rank + 1, &lifted).expect("homogenized cone is pointed");
        let index = |r: &IntegerVector| lifted.iter().position(|l| l == r).expect("vertex");
        cone.face_lattice()
            .iter()
            .filter(|f| f.dim == 2)
            .map(|f| {
                let a = index(&cone.rays()[f.rays[0]]);
                let b = index(&cone.rays()[f.rays[1]]);
                (a.min(b), a.max(b))
            })
            .collect()
    }

    /// H-representation of the normal cone of the edge `(a, b)`.
    fn edge_cone(&self, a: usize, b: usize) -> (Vec<IntegerVector>, Vec<IntegerVector>) {
        let ua = &self.exponents[a];
        let ineqs = self
            .exponents
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != a && k != b)
            .map(|(_, u)| u.add(&ua.neg()))
            .collect();
        (ineqs, vec![self.exponents[b].add(&ua.neg())])
    }

    fn recoordinatize(&self, basis: &[IntegerVector]) -> PolySupport {
        let u0 = &self.exponents[0];
        let exponents = self
            .exponents
            .iter()
            .map(|u| {
                let c = solve_in_basis(basis, &u.add(&u0.neg()).to_rational())
                    .expect("difference lies in the span");
                IntegerVector::new(
                    c.entries()
                        .iter()
                        .map(|q| {
                            assert!(q.is_integer());
                            q.to_integer()
                        })
                        .collect(),
                )
            })
            .collect();
        PolySupport {
            rank: basis.len(),
            exponents,
        }
    }
}

/// A tropical fan, with a flag recording whether it is asserted to be the
/// tropical variety (the supports form a tropical basis) rather than only a
/// prevariety.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TropFan {
    pub fan: Fan,
    pub declared_variety: bool,
    /// Rows `b_j` of the quotient map `N → N / L, w ↦ (⟨w, b_j⟩)` when the
    /// tie locus had a lineality space `L` that was quotiented out.
    pub quotient: Option<Vec<IntegerVector>>,
}

impl TropFan {
    /// A user-supplied tropical fan.
    pub fn new(fan: Fan, declared_variety: bool) -> TropFan {
        TropFan {
            fan,
            declared_variety,
            quotient: None,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.fan.ambient_dim()
    }
}

/// Options for computing tropical fans from supports.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TropOptions {
    /// The supports form a tropical basis.
    pub tropical_basis: bool,
    /// Work in `N / L` instead of rejecting a lineality space `L`.
    pub quotient_lineality: bool,
}

pub fn trop_hypersurface(f: &PolySupport, opts: TropOptions) -> Result<TropFan> {
    trop_prevariety(std::slice::from_ref(f), opts)
}

/// Intersection of the tropical hypersurfaces of `fs`: the union, over
/// choices of one Newton-polytope edge per polynomial, of the intersected
/// edge normal cones, closed under faces.
#[allow(clippy::mutable_key_type)]
pub fn trop_prevariety(fs: &[PolySupport], opts: TropOptions) -> Result<TropFan> {
    let first = fs.first().ok_or(Error::EmptyPrevariety)?;
    let n = first.rank();
    for f in fs {
        if f.rank() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: f.rank(),
            });
        }
    }
    let diffs: Vec<IntegerVector> = fs.iter().flat_map(PolySupport::differences).collect();
    let span = saturated_basis(&diffs, n);
    let (fs, quotient): (Vec<PolySupport>, Option<Vec<IntegerVector>>) = if span.len() < n {
        if !opts.quotient_lineality {
            return Err(Error::Lineality(n - span.len()));
        }
        (
            fs.iter().map(|f| f.recoordinatize(&span)).collect(),
            Some(span.clone()),
        )
    } else {
        (fs.to_vec(), None)
    };
    let dim = quotient.as_ref().map_or(n, Vec::len);

    let mut pieces: Vec<(Vec<IntegerVector>, Vec<IntegerVector>)> = vec![(vec![], vec![])];
    for f in &fs {
        let edges = f.edges();
        let mut next = Vec::new();
        for (ineqs, eqs) in &pieces {
            for &(a, b) in &edges {
                let (ei, ee) = f.edge_cone(a, b);
                let mut i2 = ineqs.clone();
                i2.extend(ei);
                let mut e2 = eqs.clone();
                e2.extend(ee);
                next.push((i2, e2));
            }
        }
        // Collapse to canonical cones to keep the product small.
        let mut seen = BTreeSet::new();
        pieces = Vec::new();
        for (i, e) in next {
            match Cone::from_inequalities(dim, &i, &e) {
                Ok(cone) => {
                    if seen.insert(cone.clone()) {
                        pieces.push((cone.facets().to_vec(), cone.equations().to_vec()));
                    }
                }
                // Lineality can persist until every polynomial is included.
                Err(Error::NotStrictlyConvex) => pieces.push((i, e)),
                Err(err) => return Err(err),
            }
        }
    }
    let cones: Vec<Cone> = pieces
        .iter()
        .map(|(i, e)| Cone::from_inequalities(dim, i, e))
        .collect::<Result<_>>()?;
    Ok(TropFan {
        fan: Fan::assemble(dim, cones)?,
        declared_variety: opts.tropical_basis,
        quotient,
    })
}

/// `Trop_X(Y) = Trop(Y) ∩ |Δ|` for the toric variety `X(Δ)`.
pub fn restrict_to_fan(t: &TropFan, delta: &Fan) -> Result<TropFan> {
    Ok(TropFan {
        fan: common_refinement(&t.fan, delta)?,
        declared_variety: t.declared_variety,
        quotient: t.quotient.clone(),
    })
}

pub fn trop_dim(t: &TropFan) -> usize {
    t.fan.dim()
}

/// Tropical dimension compared with the dimension of the source variety.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionReport {
    pub trop_dim: usize,
    pub source_dim: Option<usize>,
    /// `trop_dim ≤ source_dim`.
    pub bound_holds: Option<bool>,
    /// `trop_dim < source_dim`.
    pub dimension_drop: Option<bool>,
}

/// Fails with [`Error::DimensionBound`] when the fan is declared to be a
/// tropical variety and exceeds `source_dim`.
pub fn dimension_report(t: &TropFan, source_dim: Option<usize>) -> Result<DimensionReport> {
    let d = trop_dim(t);
    if let Some(bound) = source_dim {
        if t.declared_variety && d > bound {
            return Err(Error::DimensionBound { dim: d, bound });
        }
    }
    Ok(DimensionReport {
        trop_dim: d,
        source_dim,
        bound_holds: source_dim.map(|b| d <= b),
        dimension_drop: source_dim.map(|b| d < b),
    })
}

/// Whether `w` is in the prevariety of `fs`, by direct evaluation.
pub fn in_prevariety(fs: &[PolySupport], w: &RationalVector) -> bool {
    fs.iter().all(|f| f.is_tie(w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn iv(v: &[i64]) -> IntegerVector {
        IntegerVector::from_i64s(v)
    }

    fn line() -> PolySupport {
        PolySupport::from_i64s(2, &[&[0, 0], &[1, 0], &[0, 1]]).unwrap()
    }

    fn fan(n: usize, rays: &[&[i64]], cones: &[&[usize]]) -> Fan {
        let rays: Vec<IntegerVector> = rays.iter().map(|r| iv(r)).collect();
        let cones: Vec<Vec<usize>> = cones.iter().map(|c| c.to_vec()).collect();
        Fan::from_ray_indices(n, &rays, &cones).unwrap()
    }

    fn p2() -> Fan {
        fan(
            2,
            &[&[1, 0], &[0, 1], &[-1, -1]],
            &[&[0, 1], &[1, 2], &[0, 2]],
        )
    }

    fn quadrant() -> Fan {
        fan(2, &[&[1, 0], &[0, 1]], &[&[0, 1]])
    }

    fn ray_set(f: &Fan) -> BTreeSet<IntegerVector> {
        f.rays().iter().cloned().collect()
    }

    #[test]
    fn tropical_line() {
        let t = trop_hypersurface(&line(), TropOptions::default()).unwrap();
        let expected: BTreeSet<_> = [iv(&[1, 0]), iv(&[0, 1]), iv(&[-1, -1])]
            .into_iter()
            .collect();
        assert_eq!(ray_set(&t.fan), expected);
        assert_eq!(t.fan.cones().len(), 4);
        assert_eq!(trop_dim(&t), 1);
    }

    #[test]
    fn rank_one_binomial_is_the_origin() {
        let f = PolySupport::from_i64s(1, &[&[0], &[1]]).unwrap();
        let t = trop_hypersurface(&f, TropOptions::default()).unwrap();
        assert_eq!(t.fan.cones().len(), 1);
        assert_eq!(trop_dim(&t), 0);
    }

    #[test]
    fn lineality_needs_quotient_mode() {
        let f = PolySupport::from_i64s(2, &[&[0, 0], &[2, 0]]).unwrap();
        assert_eq!(
            trop_hypersurface(&f, TropOptions::default()).unwrap_err(),
            Error::Lineality(1)
        );
        let opts = TropOptions {
            quotient_lineality: true,
            ..Default::default()
        };
        let t = trop_hypersurface(&f, opts).unwrap();
        assert_eq!(t.ambient_dim(), 1);
        assert_eq!(t.fan.cones().len(), 1);
        assert_eq!(t.quotient, Some(vec![iv(&[1, 0])]));
    }

    #[test]
    fn support_errors() {
        assert_eq!(
            PolySupport::from_i64s(2, &[&[1, 1]]).unwrap_err(),
            Error::EmptyHypersurface
        );
        assert_eq!(
            PolySupport::from_i64s(2, &[&[1, 1], &[1, 1]]).unwrap_err(),
            Error::EmptyHypersurface
        );
        assert!(matches!(
            PolySupport::from_i64s(2, &[&[1, 1], &[1]]).unwrap_err(),
            Error::DimensionMismatch { .. }
        ));
        assert_eq!(
            trop_prevariety(&[], TropOptions::default()).unwrap_err(),
            Error::EmptyPrevariety
        );
    }

    #[test]
    fn prevariety_examples() {
        let opts = TropOptions::default();
        let single = trop_prevariety(&[line()], opts).unwrap();
        assert_eq!(single, trop_hypersurface(&line(), opts).unwrap());
        assert_eq!(trop_prevariety(&[line(), line()], opts).unwrap(), single);
        let diag = PolySupport::from_i64s(2, &[&[0, 0], &[1, 1]]).unwrap();
        let t = trop_prevariety(&[line(), diag], opts).unwrap();
        assert_eq!(t.fan.cones().len(), 1);
        assert_eq!(trop_dim(&t), 0);

        let x = PolySupport::from_i64s(2, &[&[0, 0], &[1, 0]]).unwrap();
        let y = PolySupport::from_i64s(2, &[&[0, 0], &[0, 1]]).unwrap();
        assert_eq!(trop_prevariety(&[x, y], opts).unwrap().fan, Fan::origin(2));
    }

    #[test]
    fn restriction_examples() {
        let t = trop_hypersurface(&line(), TropOptions::default()).unwrap();
        assert_eq!(restrict_to_fan(&t, &p2()).unwrap().fan, t.fan);
        let q = restrict_to_fan(&t, &quadrant()).unwrap();
        let expected: BTreeSet<_> = [iv(&[1, 0]), iv(&[0, 1])].into_iter().collect();
        assert_eq!(ray_set(&q.fan), expected);
        assert_eq!(trop_dim(&q), 1);

        let origin = TropFan::new(Fan::origin(1), true);
        let ray = fan(1, &[&[1]], &[&[0]]);
        let r = restrict_to_fan(&origin, &ray).unwrap();
        assert_eq!(r.fan, Fan::origin(1));
        let report = dimension_report(&r, Some(1)).unwrap();
        assert_eq!(report.dimension_drop, Some(true));
    }

    #[test]
    fn declared_varieties_respect_the_dimension_bound() {
        let mut t = trop_hypersurface(&line(), TropOptions::default()).unwrap();
        assert!(dimension_report(&t, Some(0)).unwrap().bound_holds == Some(false));
        t.declared_variety = true;
        assert_eq!(
            dimension_report(&t, Some(0)).unwrap_err(),
            Error::DimensionBound { dim: 1, bound: 0 }
        );
    }

    fn small_support(n: usize) -> impl Strategy<Value = PolySupport> {
        proptest::collection::btree_set(proptest::collection::vec(-2i64..3, n), 2..6).prop_map(
            move |s| PolySupport::new(n, s.into_iter().map(|u| iv(&u)).collect()).unwrap(),
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn hypersurface_matches_brute_force(f in small_support(2)) {
            let opts = TropOptions { quotient_lineality: true, ..Default::default() };
            let t = trop_hypersurface(&f, opts).unwrap();
            let g = match &t.quotient {
                Some(b) => f.recoordinatize(b),
                None => f.clone(),
            };
            let d = t.ambient_dim();
            let range: Vec<i64> = (-6..=6).collect();
            let points: Vec<Vec<i64>> = if d == 1 {
                range.iter().map(|&a| vec![a]).collect()
            } else {
                range.iter().flat_map(|&a| range.iter().map(move |&b| vec![a, b])).collect()
            };
            for p in points {
                let w = RationalVector::from_i64s(&p);
                prop_assert_eq!(t.fan.contains_point(&w), g.is_tie(&w), "w = {:?}", p);
            }
        }

        #[test]
        fn spanning_hypersurfaces_have_codimension_one(f in small_support(3)) {
            let span = saturated_basis(&f.differences(), 3);
            prop_assume!(span.len() == 3);
            let t = trop_hypersurface(&f, TropOptions::default()).unwrap();
            prop_assert_eq!(trop_dim(&t), 2);
        }

        #[test]
        fn restriction_to_complete_fans_keeps_the_support(f in small_support(2)) {
            let span = saturated_basis(&f.differences(), 2);
            prop_assume!(span.len() == 2);
            let t = trop_hypersurface(&f, TropOptions::default()).unwrap();
            let r = restrict_to_fan(&t, &p2()).unwrap();
            prop_assert!(crate::cones::support_equal(&r.fan, &t.fan).unwrap());
        }
    }
}
