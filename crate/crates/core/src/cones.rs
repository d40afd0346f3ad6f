//! Strictly convex rational polyhedral cones and fans embedded in `N_R`.
//!
//! A [`Cone`] carries both representations: primitive extreme rays and an
//! H-representation made of facet inequalities `a·x ≥ 0` (normals chosen in
//! the linear span of the cone) plus equations cutting out that span. The
//! conversion between the two is the double description method.
//!
//! Rays are always listed in decreasing lexicographic order.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{
    canonical_row_basis, integer_rank, primitive, IntegerVector, RationalVector,
};

// ---------------------------------------------------------------------------
// Double description

#[derive(Clone, Debug, PartialEq, Eq)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn new(bits: usize) -> Self {
        BitSet(vec![0; bits.div_ceil(64).max(1)])
    }
    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, other: &BitSet) -> BitSet {
        BitSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }
    fn is_subset(&self, other: &BitSet) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
    fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

/// Generators of `{x : ineqs·x ≥ 0, eqs·x = 0}`: a basis of the lineality
/// space and one primitive vector per extreme ray modulo lineality.
#[derive(Debug, Clone)]
struct Generators {
    lineality: Vec<IntegerVector>,
    rays: Vec<IntegerVector>,
}

fn double_description(n: usize, ineqs: &[IntegerVector], eqs: &[IntegerVector]) -> Generators {
    let constraints: Vec<(&IntegerVector, bool)> = eqs
        .iter()
        .map(|e| (e, true))
        .chain(ineqs.iter().map(|a| (a, false)))
        .filter(|(a, _)| !a.is_zero())
        .collect();
    let m = constraints.len();
    let mut lineality: Vec<IntegerVector> = (0..n).map(|i| IntegerVector::unit(n, i)).collect();
    let mut rays: Vec<(IntegerVector, BitSet)> = Vec::new();

    for (c, &(a, is_eq)) in constraints.iter().enumerate() {
        if let Some(pivot) = lineality.iter().position(|l| !a.dot(l).is_zero()) {
            let mut l = lineality.remove(pivot);
            let mut al = a.dot(&l);
            if al.is_negative() {
                l = l.neg();
                al = -al;
            }
            for other in lineality.iter_mut() {
                let ao = a.dot(other);
                if !ao.is_zero() {
                    *other = normalize(&other.combine(&al, &l, &-ao));
                }
            }
            for (r, tight) in rays.iter_mut() {
                let ar = a.dot(r);
                if !ar.is_zero() {
                    *r = normalize(&r.combine(&al, &l, &-ar));
                }
                tight.insert(c);
            }
            if !is_eq {
                let mut tight = BitSet::new(m);
                for prev in 0..c {
                    tight.insert(prev);
                }
                rays.push((normalize(&l), tight));
            }
            continue;
        }

        let values: Vec<BigInt> = rays.iter().map(|(r, _)| a.dot(r)).collect();
        let pos: Vec<usize> = (0..rays.len())
            .filter(|&i| values[i].is_positive())
            .collect();
        let neg: Vec<usize> = (0..rays.len())
            .filter(|&i| values[i].is_negative())
            .collect();
        let needed = n.saturating_sub(lineality.len() + 2);

        let mut next: Vec<(IntegerVector, BitSet)> = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].1.and(&rays[q].1);
                if common.len() < needed {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(i, (_, z))| i == p || i == q || !common.is_subset(z));
                if !adjacent {
                    continue;
                }
                let ap = &values[p];
                let aq = -&values[q];
                let v = normalize(&rays[q].0.combine(ap, &rays[p].0, &aq));
                let mut tight = common;
                tight.insert(c);
                next.push((v, tight));
            }
        }
        for (i, (r, tight)) in rays.into_iter().enumerate() {
            if values[i].is_zero() {
                let mut tight = tight;
                tight.insert(c);
                next.push((r, tight));
            } else if values[i].is_positive() && !is_eq {
                next.push((r, tight));
            }
        }
        rays = next;
    }

    let mut out: Vec<IntegerVector> = rays.into_iter().map(|(r, _)| r).collect();
    out.sort();
    out.dedup();
    Generators {
        lineality,
        rays: out,
    }
}

fn normalize(v: &IntegerVector) -> IntegerVector {
    if v.is_zero() {
        v.clone()
    } else {
        primitive(v).expect("nonzero")
    }
}

/// Orthogonal projection of `v` onto the complement of span(`basis`),
/// rescaled to a primitive integer vector.
fn project_out(v: &IntegerVector, orthogonal: &[RationalVector]) -> IntegerVector {
    let mut p = v.to_rational();
    for b in orthogonal {
        let coeff = p.dot(b) / b.dot(b);
        p = RationalVector::new(
            p.entries()
                .iter()
                .zip(b.entries())
                .map(|(x, y)| x - &coeff * y)
                .collect(),
        );
    }
    p.to_primitive_integer()
}

fn gram_schmidt(basis: &[IntegerVector]) -> Vec<RationalVector> {
    let mut out: Vec<RationalVector> = Vec::new();
    for v in basis {
        let mut p = v.to_rational();
        for b in &out {
            let coeff = p.dot(b) / b.dot(b);
            p = RationalVector::new(
                p.entries()
                    .iter()
                    .zip(b.entries())
                    .map(|(x, y)| x - &coeff * y)
                    .collect(),
            );
        }
        if !p.is_zero() {
            out.push(p);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Cones

/// A face of a cone, recorded by the indices of the rays it contains and of
/// the facets that vanish on it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Face {
    pub dim: usize,
    pub rays: Vec<usize>,
    pub tight_facets: Vec<usize>,
}

/// A strictly convex rational polyhedral cone.
#[derive(Debug)]
pub struct Cone {
    ambient_dim: usize,
    rays: Vec<IntegerVector>,
    facets: Vec<IntegerVector>,
    equations: Vec<IntegerVector>,
    dim: usize,
    lattice: OnceLock<Vec<Face>>,
}

impl Clone for Cone {
    fn clone(&self) -> Self {
        Cone {
            ambient_dim: self.ambient_dim,
            rays: self.rays.clone(),
            facets: self.facets.clone(),
            equations: self.equations.clone(),
            dim: self.dim,
            lattice: self.lattice.clone(),
        }
    }
}

impl PartialEq for Cone {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim && self.rays == other.rays
    }
}

impl Eq for Cone {}

impl PartialOrd for Cone {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cone {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.ambient_dim, self.dim)
            .cmp(&(other.ambient_dim, other.dim))
            .then_with(|| self.rays.cmp(&other.rays))
    }
}

impl std::hash::Hash for Cone {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ambient_dim.hash(state);
        self.rays.hash(state);
    }
}

impl Cone {
    /// The cone `{0}`.
    pub fn zero(ambient_dim: usize) -> Cone {
        Cone {
            ambient_dim,
            rays: Vec::new(),
            facets: Vec::new(),
            equations: (0..ambient_dim)
                .map(|i| IntegerVector::unit(ambient_dim, i))
                .collect(),
            dim: 0,
            lattice: OnceLock::new(),
        }
    }

    /// Cone generated by `rays`. Generators are normalized to primitive
    /// extreme rays; redundant generators are dropped.
    pub fn from_rays(ambient_dim: usize, rays: &[IntegerVector]) -> Result<Cone> {
        let mut gens: Vec<IntegerVector> = Vec::new();
        for r in rays {
            if r.dim() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    found: r.dim(),
                });
            }
            if !r.is_zero() {
                gens.push(primitive(r)?);
            }
        }
        gens.sort();
        gens.dedup();
        if gens.is_empty() {
            return Ok(Cone::zero(ambient_dim));
        }

        // The dual cone {a : g·a ≥ 0}: its lineality is the orthogonal
        // complement of the span, its rays are the facet normals.
        let dual = double_description(ambient_dim, &gens, &[]);
        let mut all = dual.lineality.clone();
        all.extend(dual.rays.iter().cloned());
        if integer_rank(&all, ambient_dim) < ambient_dim {
            return Err(Error::NotStrictlyConvex);
        }
        let equations = canonical_row_basis(&dual.lineality, ambient_dim);
        let orth = gram_schmidt(&dual.lineality);
        let mut facets: Vec<IntegerVector> =
            dual.rays.iter().map(|r| project_out(r, &orth)).collect();
        facets.sort_by(|a, b| b.cmp(a));
        facets.dedup();
        let dim = ambient_dim - equations.len();

        let mut extreme: Vec<IntegerVector> = gens
            .into_iter()
            .filter(|g| {
                let mut tight: Vec<IntegerVector> = equations.clone();
                tight.extend(facets.iter().filter(|f| f.dot(g).is_zero()).cloned());
                integer_rank(&tight, ambient_dim) == ambient_dim - 1
            })
            .collect();
        extreme.sort_by(|a, b| b.cmp(a));

        Ok(Cone {
            ambient_dim,
            rays: extreme,
            facets,
            equations,
            dim,
            lattice: OnceLock::new(),
        })
    }

    /// Cone `{x : a·x ≥ 0 for a in ineqs, e·x = 0 for e in eqs}`.
    pub fn from_inequalities(
        ambient_dim: usize,
        ineqs: &[IntegerVector],
        eqs: &[IntegerVector],
    ) -> Result<Cone> {
        for v in ineqs.iter().chain(eqs) {
            if v.dim() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    found: v.dim(),
                });
            }
        }
        let gens = double_description(ambient_dim, ineqs, eqs);
        if !gens.lineality.is_empty() {
            return Err(Error::NotStrictlyConvex);
        }
        Cone::from_rays(ambient_dim, &gens.rays)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[IntegerVector] {
        &self.rays
    }

    /// Inequality normals `a` with `a·x ≥ 0` on the cone, one per facet.
    pub fn facets(&self) -> &[IntegerVector] {
        &self.facets
    }

    /// Basis of the orthogonal complement of the linear span.
    pub fn equations(&self) -> &[IntegerVector] {
        &self.equations
    }

    pub fn is_zero(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn is_simplicial(&self) -> bool {
        self.rays.len() == self.dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.ambient_dim
    }

    pub fn contains_point(&self, x: &RationalVector) -> bool {
        self.equations.iter().all(|e| e.dot_rational(x).is_zero())
            && self.facets.iter().all(|f| !f.dot_rational(x).is_negative())
    }

    pub fn contains_lattice_point(&self, x: &IntegerVector) -> bool {
        self.equations.iter().all(|e| e.dot(x).is_zero())
            && self.facets.iter().all(|f| !f.dot(x).is_negative())
    }

    /// Membership in the relative interior: inside the cone and strictly
    /// inside every facet inequality. The origin is the relative interior of
    /// the zero cone.
    pub fn relative_interior_contains(&self, x: &RationalVector) -> bool {
        self.equations.iter().all(|e| e.dot_rational(x).is_zero())
            && self.facets.iter().all(|f| f.dot_rational(x).is_positive())
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.rays.iter().all(|r| self.contains_lattice_point(r))
    }

    /// Sum of the primitive ray generators, a canonical point of the
    /// relative interior.
    pub fn interior_point(&self) -> IntegerVector {
        self.rays
            .iter()
            .fold(IntegerVector::zeros(self.ambient_dim), |acc, r| acc.add(r))
    }

    pub fn intersect(&self, other: &Cone) -> Result<Cone> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        let mut ineqs = self.facets.clone();
        ineqs.extend(other.facets.iter().cloned());
        let mut eqs = self.equations.clone();
        eqs.extend(other.equations.iter().cloned());
        Cone::from_inequalities(self.ambient_dim, &ineqs, &eqs)
    }

    /// All faces, from `{0}` up to the cone itself, sorted by dimension and
    /// then by ray indices.
    pub fn face_lattice(&self) -> &[Face] {
        self.lattice.get_or_init(|| self.compute_faces())
    }

    fn compute_faces(&self) -> Vec<Face> {
        let top: Vec<usize> = (0..self.rays.len()).collect();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut queue = vec![top.clone()];
        seen.insert(top);
        while let Some(face) = queue.pop() {
            for f in &self.facets {
                let sub: Vec<usize> = face
                    .iter()
                    .copied()
                    .filter(|&i| f.dot(&self.rays[i]).is_zero())
                    .collect();
                if sub.len() < face.len() && seen.insert(sub.clone()) {
                    queue.push(sub);
                }
            }
        }
        let mut faces: Vec<Face> = seen
            .into_iter()
            .map(|rays| {
                let vecs: Vec<IntegerVector> = rays.iter().map(|&i| self.rays[i].clone()).collect();
                let tight_facets = (0..self.facets.len())
                    .filter(|&j| vecs.iter().all(|r| self.facets[j].dot(r).is_zero()))
                    .collect();
                Face {
                    dim: integer_rank(&vecs, self.ambient_dim),
                    rays,
                    tight_facets,
                }
            })
            .collect();
        faces.sort();
        faces
    }

    pub fn face_cone(&self, face: &Face) -> Cone {
        let rays: Vec<IntegerVector> = face.rays.iter().map(|&i| self.rays[i].clone()).collect();
        Cone::from_rays(self.ambient_dim, &rays).expect("faces of pointed cones are pointed")
    }

    /// All faces as cones, including `{0}` and the cone itself.
    pub fn faces(&self) -> Vec<Cone> {
        self.face_lattice()
            .iter()
            .map(|f| self.face_cone(f))
            .collect()
    }

    /// Faces of codimension one.
    pub fn facet_faces(&self) -> Vec<&Face> {
        self.face_lattice()
            .iter()
            .filter(|f| f.dim + 1 == self.dim)
            .collect()
    }

    /// Whether `self` is a face of `other`.
    pub fn is_face_of(&self, other: &Cone) -> bool {
        if self.ambient_dim != other.ambient_dim || !other.contains_cone(self) {
            return false;
        }
        let inside: Vec<usize> = (0..other.rays.len())
            .filter(|&i| self.contains_lattice_point(&other.rays[i]))
            .collect();
        let face_rays: Vec<IntegerVector> = inside.iter().map(|&i| other.rays[i].clone()).collect();
        if face_rays != self.rays {
            return false;
        }
        other.face_lattice().iter().any(|f| f.rays == inside)
    }
}

/// Cone generated by `rays`; rejects cones containing a line.
pub fn cone_from_rays(ambient_dim: usize, rays: &[IntegerVector]) -> Result<Cone> {
    Cone::from_rays(ambient_dim, rays)
}

/// All faces of `c`, including `{0}` and `c`.
pub fn faces(c: &Cone) -> Vec<Cone> {
    c.faces()
}

// ---------------------------------------------------------------------------
// Fans

/// A cone of a fan, indexed into the fan's ray list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanCone {
    pub rays: Vec<usize>,
    pub cone: Cone,
}

/// A rational polyhedral fan of pointed cones, closed under faces, in which
/// any two cones meet in a common face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    ambient_dim: usize,
    rays: Vec<IntegerVector>,
    cones: Vec<FanCone>,
}

impl Fan {
    /// Validated construction: the face closure of `cones` must be a fan.
    pub fn from_cones(ambient_dim: usize, cones: Vec<Cone>) -> Result<Fan> {
        let fan = Fan::assemble(ambient_dim, cones)?;
        fan.validate()?;
        Ok(fan)
    }

    /// Face closure without checking the intersection property; callers
    /// guarantee it by construction.
    pub(crate) fn assemble(ambient_dim: usize, cones: Vec<Cone>) -> Result<Fan> {
        let mut all: BTreeMap<Vec<IntegerVector>, Cone> = BTreeMap::new();
        all.insert(Vec::new(), Cone::zero(ambient_dim));
        for c in cones {
            if c.ambient_dim() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    found: c.ambient_dim(),
                });
            }
            if all.contains_key(c.rays()) {
                continue;
            }
            for f in c.faces() {
                all.entry(f.rays().to_vec()).or_insert(f);
            }
        }
        let mut rays: Vec<IntegerVector> = all
            .values()
            .filter(|c| c.dim() == 1)
            .map(|c| c.rays()[0].clone())
            .collect();
        rays.sort_by(|a, b| b.cmp(a));
        let index: BTreeMap<&IntegerVector, usize> =
            rays.iter().enumerate().map(|(i, r)| (r, i)).collect();
        let mut cones: Vec<FanCone> = all
            .values()
            .map(|c| FanCone {
                rays: c.rays().iter().map(|r| index[r]).collect(),
                cone: c.clone(),
            })
            .collect();
        cones.sort_by(|a, b| (a.cone.dim(), &a.rays).cmp(&(b.cone.dim(), &b.rays)));
        Ok(Fan {
            ambient_dim,
            rays,
            cones,
        })
    }

    /// Builds a fan from a ray table and maximal cones given as index lists.
    pub fn from_ray_indices(
        ambient_dim: usize,
        rays: &[IntegerVector],
        cones: &[Vec<usize>],
    ) -> Result<Fan> {
        let mut built = Vec::with_capacity(cones.len());
        for idx in cones {
            let mut gens = Vec::with_capacity(idx.len());
            for &i in idx {
                let r = rays
                    .get(i)
                    .ok_or_else(|| Error::InvalidFan(format!("ray index {i} out of range")))?;
                gens.push(r.clone());
            }
            built.push(Cone::from_rays(ambient_dim, &gens)?);
        }
        Fan::from_cones(ambient_dim, built)
    }

    /// The fan consisting of the origin alone.
    pub fn origin(ambient_dim: usize) -> Fan {
        Fan::assemble(ambient_dim, Vec::new()).expect("origin fan")
    }

    /// The fan of all faces of a single cone.
    pub fn from_cone(cone: &Cone) -> Fan {
        Fan::assemble(cone.ambient_dim(), vec![cone.clone()]).expect("faces of one cone")
    }

    /// The complete fan of `(P^1)^n`: the `2^n` coordinate orthants, i.e. the
    /// face fan of the cross-polytope.
    pub fn orthants(ambient_dim: usize) -> Fan {
        let mut cones = Vec::new();
        for signs in 0u64..(1u64 << ambient_dim) {
            let rays: Vec<IntegerVector> = (0..ambient_dim)
                .map(|i| {
                    let u = IntegerVector::unit(ambient_dim, i);
                    if signs >> i & 1 == 1 {
                        u.neg()
                    } else {
                        u
                    }
                })
                .collect();
            cones.push(Cone::from_rays(ambient_dim, &rays).expect("orthant"));
        }
        Fan::assemble(ambient_dim, cones).expect("orthant fan")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rays(&self) -> &[IntegerVector] {
        &self.rays
    }

    /// Every cone of the fan, sorted by dimension, `{0}` first.
    pub fn cones(&self) -> &[FanCone] {
        &self.cones
    }

    pub fn maximal_cones(&self) -> Vec<&FanCone> {
        self.cones
            .iter()
            .filter(|c| {
                !self.cones.iter().any(|d| {
                    d.rays.len() > c.rays.len() && c.rays.iter().all(|i| d.rays.contains(i))
                })
            })
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.cones.iter().map(|c| c.cone.dim()).max().unwrap_or(0)
    }

    pub fn is_simplicial(&self) -> bool {
        self.cones.iter().all(|c| c.cone.is_simplicial())
    }

    pub fn position(&self, cone: &Cone) -> Option<usize> {
        self.cones.iter().position(|c| &c.cone == cone)
    }

    pub fn contains_point(&self, x: &RationalVector) -> bool {
        self.maximal_cones()
            .iter()
            .any(|c| c.cone.contains_point(x))
    }

    pub fn contains_lattice_point(&self, x: &IntegerVector) -> bool {
        self.maximal_cones()
            .iter()
            .any(|c| c.cone.contains_lattice_point(x))
    }

    /// Whether every cone of `self` is a cone of `other`.
    pub fn is_subfan_of(&self, other: &Fan) -> bool {
        self.ambient_dim == other.ambient_dim
            && self.cones.iter().all(|c| other.position(&c.cone).is_some())
    }

    /// Checks that maximal cones pairwise intersect in a common face.
    pub fn validate(&self) -> Result<()> {
        let maximal = self.maximal_cones();
        for (i, a) in maximal.iter().enumerate() {
            for b in &maximal[i + 1..] {
                let meet = a.cone.intersect(&b.cone)?;
                if !meet.is_face_of(&a.cone) || !meet.is_face_of(&b.cone) {
                    return Err(Error::InvalidFan(format!(
                        "cones {:?} and {:?} do not meet in a common face",
                        a.rays, b.rays
                    )));
                }
            }
        }
        Ok(())
    }

    /// Subfan consisting of the listed cones and their faces.
    pub fn subfan(&self, indices: &[usize]) -> Fan {
        let cones = indices
            .iter()
            .map(|&i| self.cones[i].cone.clone())
            .collect();
        Fan::assemble(self.ambient_dim, cones).expect("subfan of a fan")
    }

    /// Checks that the support is all of `N_R`.
    pub fn is_complete(&self) -> bool {
        support_contains(self, &Fan::orthants(self.ambient_dim)).unwrap_or(false)
    }
}

fn check_dims(f: &Fan, g: &Fan) -> Result<()> {
    if f.ambient_dim != g.ambient_dim {
        return Err(Error::DimensionMismatch {
            expected: f.ambient_dim,
            found: g.ambient_dim,
        });
    }
    Ok(())
}

/// The fan of all intersections `σ ∩ τ`; its support is `|f| ∩ |g|`.
pub fn common_refinement(f: &Fan, g: &Fan) -> Result<Fan> {
    check_dims(f, g)?;
    let mut cones = Vec::new();
    let mut seen = BTreeSet::new();
    for a in f.maximal_cones() {
        for b in g.maximal_cones() {
            let meet = a.cone.intersect(&b.cone)?;
            if seen.insert(meet.rays().to_vec()) {
                cones.push(meet);
            }
        }
    }
    Fan::assemble(f.ambient_dim, cones)
}

/// Whether `tau` is the union of `cells`, each of which lies inside `tau`
/// and which together form a fan.
///
/// The full-dimensional cells cover `tau` exactly when every facet of a cell
/// either lies on the boundary of `tau` or is shared with a second cell.
pub fn is_covered(tau: &Cone, cells: &[Cone]) -> bool {
    if tau.dim() == 0 {
        return !cells.is_empty();
    }
    let full: Vec<&Cone> = cells.iter().filter(|c| c.dim() == tau.dim()).collect();
    if full.is_empty() {
        return false;
    }
    for (i, c) in full.iter().enumerate() {
        for facet in c.facet_faces() {
            let rays: Vec<&IntegerVector> = facet.rays.iter().map(|&k| &c.rays()[k]).collect();
            let on_boundary = tau
                .facets()
                .iter()
                .any(|a| rays.iter().all(|r| a.dot(r).is_zero()));
            if on_boundary {
                continue;
            }
            let shared = full
                .iter()
                .enumerate()
                .any(|(j, d)| j != i && rays.iter().all(|r| d.contains_lattice_point(r)));
            if !shared {
                return false;
            }
        }
    }
    true
}

/// `|g| ⊆ |f|`.
pub fn support_contains(f: &Fan, g: &Fan) -> Result<bool> {
    check_dims(f, g)?;
    let f_max = f.maximal_cones();
    for tau in g.maximal_cones() {
        if f_max.iter().any(|s| s.cone.contains_cone(&tau.cone)) {
            continue;
        }
        let mut cells = Vec::new();
        for s in &f_max {
            cells.push(s.cone.intersect(&tau.cone)?);
        }
        if !is_covered(&tau.cone, &cells) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `|f| = |g|`, by mutual containment.
pub fn support_equal(f: &Fan, g: &Fan) -> Result<bool> {
    Ok(support_contains(f, g)? && support_contains(g, f)?)
}

/// Pulling triangulation of a cone: simplices are returned as index lists
/// into `cone.rays()`. Rays are pulled in increasing `key` order, so the
/// triangulation restricts to the pulling triangulation of every face and
/// neighbouring cones triangulate shared faces identically.
pub fn pulling_triangulation<K: Ord>(
    cone: &Cone,
    key: &impl Fn(&IntegerVector) -> K,
) -> Vec<Vec<usize>> {
    if cone.is_simplicial() {
        return vec![(0..cone.rays().len()).collect()];
    }
    let apex = (0..cone.rays().len())
        .min_by_key(|&i| key(&cone.rays()[i]))
        .expect("non-simplicial cones have rays");
    let mut out = Vec::new();
    for facet in cone.facet_faces() {
        if facet.rays.contains(&apex) {
            continue;
        }
        let sub = cone.face_cone(facet);
        for simplex in pulling_triangulation(&sub, key) {
            let mut s: Vec<usize> = simplex
                .iter()
                .map(|&k| facet.rays[position_in(&sub, facet, k, cone)])
                .collect();
            s.push(apex);
            s.sort_unstable();
            out.push(s);
        }
    }
    out.sort();
    out
}

/// Maps ray `k` of the face cone `sub` back to its position in `facet.rays`.
fn position_in(sub: &Cone, facet: &Face, k: usize, parent: &Cone) -> usize {
    let r = &sub.rays()[k];
    facet
        .rays
        .iter()
        .position(|&i| &parent.rays()[i] == r)
        .expect("face rays are parent rays")
}

/// Simplicial subdivision with no new rays: every cone is replaced by its
/// pulling triangulation with rays ordered lexicographically (smallest
/// pulled first). Simplicial fans are returned unchanged.
pub fn triangulate(f: &Fan) -> Fan {
    if f.is_simplicial() {
        return f.clone();
    }
    let key = |r: &IntegerVector| r.clone();
    let mut cones = Vec::new();
    for c in f.maximal_cones() {
        for simplex in pulling_triangulation(&c.cone, &key) {
            let rays: Vec<IntegerVector> =
                simplex.iter().map(|&i| c.cone.rays()[i].clone()).collect();
            cones.push(Cone::from_rays(f.ambient_dim, &rays).expect("subcone of a pointed cone"));
        }
    }
    Fan::assemble(f.ambient_dim, cones).expect("triangulation")
}

/// Stellar subdivision of `f` at the ray through `w`, which must lie in the
/// support.
pub fn stellar_subdivision(f: &Fan, w: &IntegerVector) -> Result<Fan> {
    if w.dim() != f.ambient_dim {
        return Err(Error::DimensionMismatch {
            expected: f.ambient_dim,
            found: w.dim(),
        });
    }
    let w = primitive(w)?;
    if !f.contains_lattice_point(&w) {
        return Err(Error::InvalidFan(format!("{w} is outside the support")));
    }
    let mut cones = Vec::new();
    for c in f.maximal_cones() {
        if !c.cone.contains_lattice_point(&w) {
            cones.push(c.cone.clone());
            continue;
        }
        for facet in c.cone.facet_faces() {
            let mut rays: Vec<IntegerVector> = facet
                .rays
                .iter()
                .map(|&i| c.cone.rays()[i].clone())
                .collect();
            if Cone::from_rays(f.ambient_dim, &rays)?.contains_lattice_point(&w) {
                continue;
            }
            rays.push(w.clone());
            cones.push(Cone::from_rays(f.ambient_dim, &rays)?);
        }
    }
    Fan::assemble(f.ambient_dim, cones)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn iv(v: &[i64]) -> IntegerVector {
        IntegerVector::from_i64s(v)
    }

    pub(crate) fn cone(rays: &[&[i64]]) -> Cone {
        let n = rays[0].len();
        Cone::from_rays(n, &rays.iter().map(|r| iv(r)).collect::<Vec<_>>()).unwrap()
    }

    fn fan(n: usize, rays: &[&[i64]], cones: &[&[usize]]) -> Fan {
        let rays: Vec<IntegerVector> = rays.iter().map(|r| iv(r)).collect();
        let cones: Vec<Vec<usize>> = cones.iter().map(|c| c.to_vec()).collect();
        Fan::from_ray_indices(n, &rays, &cones).unwrap()
    }

    fn quadrant_fan() -> Fan {
        fan(2, &[&[1, 0], &[0, 1]], &[&[0, 1]])
    }

    fn p2_fan() -> Fan {
        fan(
            2,
            &[&[1, 0], &[0, 1], &[-1, -1]],
            &[&[0, 1], &[1, 2], &[0, 2]],
        )
    }

    fn line_fan() -> Fan {
        fan(2, &[&[1, 0], &[0, 1], &[-1, -1]], &[&[0], &[1], &[2]])
    }

    fn square_cone() -> Cone {
        cone(&[&[1, 0, 0], &[1, 1, 0], &[1, 0, 1], &[1, 1, 1]])
    }

    #[test]
    fn quadrant_h_representation() {
        let q = cone(&[&[1, 0], &[0, 1]]);
        assert_eq!(q.dim(), 2);
        assert_eq!(q.facets(), &[iv(&[1, 0]), iv(&[0, 1])]);
        assert!(q.equations().is_empty());
    }

    #[test]
    fn full_line_is_rejected() {
        let err = Cone::from_rays(2, &[iv(&[1, 0]), iv(&[-1, 0])]).unwrap_err();
        assert_eq!(err, Error::NotStrictlyConvex);
        assert_eq!(
            err.to_string(),
            "not strictly convex: the cone contains a line"
        );
    }

    #[test]
    fn cone_over_square_facets() {
        let c = square_cone();
        assert_eq!(c.dim(), 3);
        let mut facets = c.facets().to_vec();
        facets.sort();
        let mut expected = vec![
            iv(&[0, 1, 0]),
            iv(&[0, 0, 1]),
            iv(&[1, -1, 0]),
            iv(&[1, 0, -1]),
        ];
        expected.sort();
        assert_eq!(facets, expected);
    }

    #[test]
    fn redundant_generators_are_dropped() {
        let c = cone(&[&[1, 0], &[0, 1], &[1, 1], &[2, 0]]);
        assert_eq!(c.rays(), &[iv(&[1, 0]), iv(&[0, 1])]);
    }

    #[test]
    fn ray_has_equation_and_facet() {
        let r = cone(&[&[1, 1]]);
        assert_eq!(r.dim(), 1);
        assert_eq!(r.facets(), &[iv(&[1, 1])]);
        assert_eq!(r.equations().len(), 1);
        assert!(r.contains_lattice_point(&iv(&[3, 3])));
        assert!(!r.contains_lattice_point(&iv(&[-1, -1])));
    }

    #[test]
    fn face_counts() {
        assert_eq!(cone(&[&[1, 0], &[0, 1]]).faces().len(), 4);
        assert_eq!(cone(&[&[1, 1]]).faces().len(), 2);
        assert_eq!(square_cone().faces().len(), 10);
    }

    #[test]
    fn intersection_of_pointed_cones() {
        let a = cone(&[&[1, 0], &[1, 2]]);
        let b = cone(&[&[1, 1], &[0, 1]]);
        let meet = a.intersect(&b).unwrap();
        assert_eq!(meet.rays(), &[iv(&[1, 2]), iv(&[1, 1])]);
        let far = cone(&[&[-1, 0]]);
        assert!(a.intersect(&far).unwrap().is_zero());
    }

    #[test]
    fn fan_validation_rejects_overlaps() {
        let overlapping = vec![cone(&[&[1, 0], &[0, 1]]), cone(&[&[1, 1], &[-1, 1]])];
        assert!(Fan::from_cones(2, overlapping).is_err());
    }

    #[test]
    fn refinement_examples() {
        let p2 = p2_fan();
        assert_eq!(common_refinement(&p2, &p2).unwrap(), p2);

        let f = fan(2, &[&[1, 0], &[0, 1], &[-1, 0]], &[&[0, 1], &[1, 2]]);
        let g = fan(2, &[&[1, 0], &[1, 1], &[-1, 0]], &[&[0, 1], &[1, 2]]);
        let r = common_refinement(&f, &g).unwrap();
        assert_eq!(r.maximal_cones().len(), 3);
        assert_eq!(
            r.rays(),
            &[iv(&[1, 1]), iv(&[1, 0]), iv(&[0, 1]), iv(&[-1, 0])]
        );
        assert!(support_equal(&r, &f).unwrap());

        let refined = common_refinement(&p2, &line_fan()).unwrap();
        assert_eq!(refined, line_fan());
        assert!(refined.is_subfan_of(&p2));
    }

    #[test]
    fn support_containment_examples() {
        assert!(support_contains(&quadrant_fan(), &Fan::origin(2)).unwrap());
        assert!(!support_contains(&quadrant_fan(), &line_fan()).unwrap());
        assert!(support_contains(&p2_fan(), &line_fan()).unwrap());
        assert!(p2_fan().is_complete());
        assert!(!quadrant_fan().is_complete());
    }

    #[test]
    fn support_containment_across_subdivisions() {
        // A quadrant split along (1,1) covers the quadrant although no single
        // cone does.
        let split = fan(2, &[&[1, 0], &[1, 1], &[0, 1]], &[&[0, 1], &[1, 2]]);
        assert!(support_contains(&split, &quadrant_fan()).unwrap());
        assert!(support_equal(&split, &quadrant_fan()).unwrap());
    }

    #[test]
    fn triangulation_examples() {
        assert_eq!(triangulate(&p2_fan()), p2_fan());
        let t = triangulate(&Fan::from_cone(&square_cone()));
        let max = t.maximal_cones();
        assert_eq!(max.len(), 2);
        assert!(max
            .iter()
            .all(|c| c.cone.dim() == 3 && c.cone.is_simplicial()));
        let shared = max[0].cone.intersect(&max[1].cone).unwrap();
        assert_eq!(shared.dim(), 2);
        assert_eq!(t.rays().len(), 4);
        assert!(support_equal(&t, &Fan::from_cone(&square_cone())).unwrap());
    }

    #[test]
    fn stellar_subdivision_of_quadrant() {
        let s = stellar_subdivision(&quadrant_fan(), &iv(&[2, 2])).unwrap();
        assert_eq!(s.maximal_cones().len(), 2);
        assert!(support_equal(&s, &quadrant_fan()).unwrap());
        assert!(stellar_subdivision(&quadrant_fan(), &iv(&[-1, 0])).is_err());
    }

    #[test]
    fn stellar_subdivision_on_a_boundary_ray() {
        let s = stellar_subdivision(&Fan::orthants(3), &iv(&[1, 1, 0])).unwrap();
        assert_eq!(s.maximal_cones().len(), 10);
        assert!(s.is_complete());
        s.validate().unwrap();
    }

    fn random_rays(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        proptest::collection::vec(proptest::collection::vec(-3i64..4, n), 1..6)
    }

    fn positive_rays(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        // Rays with positive first coordinate always span a pointed cone.
        proptest::collection::vec(
            (1i64..4, proptest::collection::vec(-3i64..4, n - 1)).prop_map(|(h, mut rest)| {
                rest.insert(0, h);
                rest
            }),
            1..7,
        )
    }

    proptest! {
        #[test]
        fn double_description_round_trip(rays in positive_rays(3)) {
            let gens: Vec<IntegerVector> = rays.iter().map(|r| iv(r)).collect();
            let c = Cone::from_rays(3, &gens).unwrap();
            for g in &gens {
                prop_assert!(c.contains_lattice_point(g));
            }
            let back = Cone::from_inequalities(3, c.facets(), c.equations()).unwrap();
            prop_assert_eq!(&back, &c);
            prop_assert_eq!(c.dim(), integer_rank(c.rays(), 3));
        }

        #[test]
        fn pointedness_is_detected(rays in random_rays(2)) {
            let gens: Vec<IntegerVector> = rays.iter().map(|r| iv(r)).collect();
            if let Ok(c) = Cone::from_rays(2, &gens) {
                // No generator's negation may lie in the cone.
                for g in gens.iter().filter(|g| !g.is_zero()) {
                    prop_assert!(!c.contains_lattice_point(&g.neg()));
                }
            }
        }

        #[test]
        fn simplicial_face_count(k in 1usize..5) {
            let rays: Vec<IntegerVector> = (0..k).map(|i| IntegerVector::unit(4, i)).collect();
            let c = Cone::from_rays(4, &rays).unwrap();
            prop_assert_eq!(c.faces().len(), 1 << k);
        }

        #[test]
        fn refinement_is_commutative_on_supports(
            a in proptest::collection::vec(0i64..3, 2),
            b in proptest::collection::vec(0i64..3, 2),
        ) {
            let f = stellar_subdivision(&Fan::orthants(2), &iv(&[a[0] + 1, a[1] + 1])).unwrap();
            let g = stellar_subdivision(&Fan::orthants(2), &iv(&[-b[0] - 1, b[1] + 1])).unwrap();
            let fg = common_refinement(&f, &g).unwrap();
            let gf = common_refinement(&g, &f).unwrap();
            prop_assert_eq!(&fg, &gf);
            fg.validate().unwrap();
            prop_assert!(fg.is_complete());
        }

        #[test]
        fn triangulation_preserves_support(rays in positive_rays(3)) {
            let gens: Vec<IntegerVector> = rays.iter().map(|r| iv(r)).collect();
            let f = Fan::from_cone(&Cone::from_rays(3, &gens).unwrap());
            let t = triangulate(&f);
            prop_assert!(t.is_simplicial());
            prop_assert!(support_equal(&f, &t).unwrap());
            prop_assert_eq!(t.rays(), f.rays());
            t.validate().unwrap();
        }
    }
}
