//! Toric monoids, monoid spectra and Kato fans, and the cone complexes they
//! determine.
//!
//! A fine saturated monoid is stored as the rational cone it spans together
//! with its group `P^gp = Z^r`; Hilbert bases are never computed. A Kato fan
//! is a finite poset of points (ordered by specialization) carrying sharp
//! toric stalks, plus, for each specialization step `x ≤ y`, the lattice
//! embedding of `Hom(stalk(x), R≥0)` onto a face of `Hom(stalk(y), R≥0)`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::cones::{support_contains, Cone, Fan};
use crate::error::{Error, Result};
use crate::exactlin::{
    integer_kernel_basis, integer_rank, saturated_basis, solve_in_basis, IntegerVector,
    RationalVector,
};

/// A lattice-linear map `Z^cols → Z^rows`, stored by rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<IntegerVector>,
}

impl IntegerMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<IntegerVector>) -> Result<Self> {
        if data.len() != rows || data.iter().any(|r| r.dim() != cols) {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.iter().map(IntegerVector::dim).sum(),
            });
        }
        Ok(IntegerMatrix { rows, cols, data })
    }

    pub fn identity(n: usize) -> Self {
        IntegerMatrix {
            rows: n,
            cols: n,
            data: (0..n).map(|i| IntegerVector::unit(n, i)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row_vectors(&self) -> &[IntegerVector] {
        &self.data
    }

    pub fn apply(&self, v: &IntegerVector) -> IntegerVector {
        IntegerVector::new(self.data.iter().map(|r| r.dot(v)).collect())
    }

    pub fn apply_rational(&self, v: &RationalVector) -> RationalVector {
        RationalVector::new(self.data.iter().map(|r| r.dot_rational(v)).collect())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &IntegerMatrix) -> IntegerMatrix {
        let columns: Vec<IntegerVector> = (0..other.cols)
            .map(|j| {
                IntegerVector::new(other.data.iter().map(|r| r.entries()[j].clone()).collect())
            })
            .collect();
        IntegerMatrix {
            rows: self.rows,
            cols: other.cols,
            data: self
                .data
                .iter()
                .map(|r| IntegerVector::new(columns.iter().map(|c| r.dot(c)).collect()))
                .collect(),
        }
    }

    pub fn transpose(&self) -> IntegerMatrix {
        IntegerMatrix {
            rows: self.cols,
            cols: self.rows,
            data: (0..self.cols)
                .map(|j| {
                    IntegerVector::new(self.data.iter().map(|r| r.entries()[j].clone()).collect())
                })
                .collect(),
        }
    }

    fn rank(&self) -> usize {
        integer_rank(&self.data, self.cols)
    }
}

// ---------------------------------------------------------------------------
// Monoids

/// A toric monoid `P = C ∩ Z^r`, where `C` is the rational cone spanned by
/// `P` and `Z^r = P^gp`. Stored sharpened: `cone` is the image of `C` in
/// `P^gp / P^*`, a full-dimensional pointed cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToricMonoid {
    rank: usize,
    unit_rank: usize,
    cone: Cone,
}

impl ToricMonoid {
    /// The sharp monoid `cone ∩ Z^r` of a full-dimensional pointed cone.
    pub fn sharp(cone: Cone) -> Result<ToricMonoid> {
        if !cone.is_full_dimensional() {
            return Err(Error::InvalidMonoid(format!(
                "cone of dimension {} does not span its lattice of rank {}",
                cone.dim(),
                cone.ambient_dim()
            )));
        }
        Ok(ToricMonoid {
            rank: cone.ambient_dim(),
            unit_rank: 0,
            cone,
        })
    }

    /// The saturated monoid of lattice points of the cone spanned by
    /// `generators` inside `Z^ambient_dim`. Its group is the saturated
    /// lattice spanned by the generators; units (a lineality space) are
    /// recorded and quotiented out.
    pub fn from_generators(
        ambient_dim: usize,
        generators: &[IntegerVector],
    ) -> Result<ToricMonoid> {
        for g in generators {
            if g.dim() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    found: g.dim(),
                });
            }
        }
        let group = saturated_basis(generators, ambient_dim);
        let rank = group.len();
        let coords: Vec<IntegerVector> = generators
            .iter()
            .map(|g| {
                solve_in_basis(&group, &g.to_rational())
                    .expect("generator lies in its own span")
                    .to_primitive_integer_coords()
            })
            .collect();
        // Hom(P, R≥0) is pointed because P spans its group; its span is the
        // annihilator of the units.
        let dual = Cone::from_inequalities(rank, &coords, &[])?;
        let quotient = saturated_basis(dual.rays(), rank);
        let unit_rank = rank - quotient.len();
        let projection = IntegerMatrix::new(quotient.len(), rank, quotient)?;
        let images: Vec<IntegerVector> = coords.iter().map(|y| projection.apply(y)).collect();
        let cone = Cone::from_rays(rank - unit_rank, &images)?;
        Ok(ToricMonoid {
            rank,
            unit_rank,
            cone,
        })
    }

    /// Rank of `P^gp`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn unit_rank(&self) -> usize {
        self.unit_rank
    }

    pub fn is_sharp(&self) -> bool {
        self.unit_rank == 0
    }

    /// Rank of the sharpening `P / P^*`.
    pub fn sharp_rank(&self) -> usize {
        self.rank - self.unit_rank
    }

    /// The cone spanned by the sharpening `P / P^*`.
    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn sharpened(&self) -> ToricMonoid {
        ToricMonoid {
            rank: self.sharp_rank(),
            unit_rank: 0,
            cone: self.cone.clone(),
        }
    }

    /// `Hom(P, R≥0)` for the sharpening, a full-dimensional pointed cone in
    /// the dual lattice.
    pub fn hom_cone(&self) -> Cone {
        dual_of_full(&self.cone)
    }
}

/// Dual of a full-dimensional pointed cone: generated by its facet normals.
fn dual_of_full(cone: &Cone) -> Cone {
    Cone::from_rays(cone.ambient_dim(), cone.facets()).expect("dual of a full pointed cone")
}

trait IntegralCoords {
    fn to_primitive_integer_coords(&self) -> IntegerVector;
}

impl IntegralCoords for RationalVector {
    /// Exact conversion of an integral rational vector.
    fn to_primitive_integer_coords(&self) -> IntegerVector {
        IntegerVector::new(
            self.entries()
                .iter()
                .map(|q| {
                    assert!(
                        q.is_integer(),
                        "coordinates in a lattice basis are integral"
                    );
                    q.to_integer()
                })
                .collect(),
        )
    }
}

/// Matrix `T` with `lower = T · upper` when the row lattice of `lower` sits
/// inside that of `upper`.
fn transition(lower: &[IntegerVector], upper: &[IntegerVector]) -> Result<IntegerMatrix> {
    let data = lower
        .iter()
        .map(|row| {
            solve_in_basis(upper, &row.to_rational())
                .map(|y| y.to_primitive_integer_coords())
                .ok_or_else(|| Error::InvalidKatoFan("sublattice is not contained".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    IntegerMatrix::new(lower.len(), upper.len(), data)
}

// ---------------------------------------------------------------------------
// Kato fans

/// A finite sharp monoidal poset: points ordered by specialization (`x ≤ y`
/// when `y` lies in the closure of `x`), sharp toric stalks, and for each
/// listed specialization step the embedding of cells
/// `Hom(stalk(x), R≥0) → Hom(stalk(y), R≥0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KatoFan {
    names: Vec<String>,
    stalks: Vec<ToricMonoid>,
    steps: BTreeMap<(usize, usize), IntegerMatrix>,
    leq: Vec<Vec<bool>>,
    composites: BTreeMap<(usize, usize), IntegerMatrix>,
}

impl KatoFan {
    /// Validates and builds a Kato fan.
    ///
    /// `steps` maps pairs `(x, y)` with `x` a generization of `y` to the
    /// embedding of cells; their transitive closure is the order. Checks:
    /// stalks are sharp, ranks grow along specialization, embeddings are
    /// injective onto faces, composites agree along all chains, and the
    /// generizations of every point correspond bijectively to the faces of
    /// its cell (no self-gluing).
    pub fn new(
        names: Vec<String>,
        stalks: Vec<ToricMonoid>,
        steps: BTreeMap<(usize, usize), IntegerMatrix>,
    ) -> Result<KatoFan> {
        let n = names.len();
        let bad = |m: String| Err(Error::InvalidKatoFan(m));
        if stalks.len() != n {
            return bad(format!("{} points but {} stalks", n, stalks.len()));
        }
        let unique: BTreeSet<&String> = names.iter().collect();
        if unique.len() != n {
            return bad("duplicate point names".into());
        }
        for (i, s) in stalks.iter().enumerate() {
            if !s.is_sharp() {
                return bad(format!("stalk at {} is not sharp", names[i]));
            }
        }
        let cells: Vec<Cone> = stalks.iter().map(ToricMonoid::hom_cone).collect();

        // Order: reflexive-transitive closure of the steps.
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(x, y) in steps.keys() {
            if x >= n || y >= n {
                return bad(format!("step ({x},{y}) references an unknown point"));
            }
            if x == y {
                return bad(format!("self-gluing at {}", names[x]));
            }
            leq[x][y] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if leq[i][j] && leq[j][i] {
                    return bad(format!(
                        "order has a cycle through {} and {}",
                        names[i], names[j]
                    ));
                }
            }
        }

        for (&(x, y), m) in &steps {
            let (dx, dy) = (stalks[x].rank(), stalks[y].rank());
            if dx > dy {
                return bad(format!(
                    "stalk rank drops from {} at {} to {} at {}",
                    dx, names[x], dy, names[y]
                ));
            }
            if m.rows() != dy || m.cols() != dx {
                return bad(format!("map {}→{} has the wrong shape", names[x], names[y]));
            }
            if m.rank() != dx {
                return bad(format!("map {}→{} is not injective", names[x], names[y]));
            }
            let image = image_cone(m, &cells[x])?;
            if !image.is_face_of(&cells[y]) {
                return bad(format!(
                    "map {}→{} does not identify a face",
                    names[x], names[y]
                ));
            }
            if cells[x].rays().iter().any(|r| !m.apply(r).is_primitive()) {
                return bad(format!(
                    "map {}→{} does not preserve the integral structure",
                    names[x], names[y]
                ));
            }
        }
        for x in 0..n {
            for y in 0..n {
                if leq[x][y] && stalks[x].rank() > stalks[y].rank() {
                    return bad(format!("stalk rank drops along {}≤{}", names[x], names[y]));
                }
            }
        }

        // Composites along chains, processed in order of increasing rank.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (stalks[i].rank(), i));
        let mut composites: BTreeMap<(usize, usize), IntegerMatrix> = BTreeMap::new();
        for &y in &order {
            composites.insert((y, y), IntegerMatrix::identity(stalks[y].rank()));
        }
        for &y in &order {
            for (&(z, y2), step) in steps.iter() {
                if y2 != y {
                    continue;
                }
                let below: Vec<(usize, IntegerMatrix)> = composites
                    .iter()
                    .filter(|((_, t), _)| *t == z)
                    .map(|(&(x, _), m)| (x, step.compose(m)))
                    .collect();
                for (x, m) in below {
                    match composites.get(&(x, y)) {
                        Some(existing) if *existing != m => {
                            return bad(format!(
                                "attaching maps {}→{} disagree along different chains",
                                names[x], names[y]
                            ));
                        }
                        Some(_) => {}
                        None => {
                            composites.insert((x, y), m);
                        }
                    }
                }
            }
        }

        // Affine charts: generizations of y ↔ faces of cell(y).
        for y in 0..n {
            let faces = cells[y].face_lattice();
            let mut hit: BTreeSet<Vec<IntegerVector>> = BTreeSet::new();
            for x in (0..n).filter(|&x| leq[x][y]) {
                let image = image_cone(&composites[&(x, y)], &cells[x])?;
                if image.dim() != cells[x].dim() || !image.is_face_of(&cells[y]) {
                    return bad(format!(
                        "{} does not embed as a face of {}",
                        names[x], names[y]
                    ));
                }
                if !hit.insert(image.rays().to_vec()) {
                    return bad(format!(
                        "self-gluing: two generizations of {} share a face",
                        names[y]
                    ));
                }
            }
            if hit.len() != faces.len() {
                return bad(format!(
                    "{} has {} generizations but its cone has {} faces",
                    names[y],
                    hit.len(),
                    faces.len()
                ));
            }
        }

        Ok(KatoFan {
            names,
            stalks,
            steps,
            leq,
            composites,
        })
    }

    /// The Kato fan of the toric variety of `fan`: one point per cone, with
    /// stalk `σ^∨ ∩ M` modulo units.
    pub fn from_fan(fan: &Fan) -> Result<KatoFan> {
        let n = fan.ambient_dim();
        let bases: Vec<Vec<IntegerVector>> = fan
            .cones()
            .iter()
            .map(|c| saturated_basis(c.cone.rays(), n))
            .collect();
        let mut stalks = Vec::new();
        for (c, basis) in fan.cones().iter().zip(&bases) {
            let coords: Vec<IntegerVector> = c
                .cone
                .rays()
                .iter()
                .map(|r| {
                    solve_in_basis(basis, &r.to_rational())
                        .expect("ray in its span")
                        .to_primitive_integer_coords()
                })
                .collect();
            let cell = Cone::from_rays(basis.len(), &coords)?;
            stalks.push(ToricMonoid::sharp(dual_of_full(&cell))?);
        }
        let mut steps = BTreeMap::new();
        for (i, a) in fan.cones().iter().enumerate() {
            for (j, b) in fan.cones().iter().enumerate() {
                if a.cone.dim() + 1 == b.cone.dim() && a.cone.is_face_of(&b.cone) {
                    let t = transition(&bases[i], &bases[j])?;
                    steps.insert((i, j), t.transpose());
                }
            }
        }
        let names = fan
            .cones()
            .iter()
            .map(|c| {
                let idx: Vec<String> = c.rays.iter().map(usize::to_string).collect();
                format!("c[{}]", idx.join(","))
            })
            .collect();
        KatoFan::new(names, stalks, steps)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn stalk(&self, x: usize) -> &ToricMonoid {
        &self.stalks[x]
    }

    pub fn stalks(&self) -> &[ToricMonoid] {
        &self.stalks
    }

    /// `x ≤ y`: `y` is a specialization of `x`.
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x][y]
    }

    /// The listed specialization steps with their cell embeddings.
    pub fn steps(&self) -> &BTreeMap<(usize, usize), IntegerMatrix> {
        &self.steps
    }

    /// Generizations of `y`: the points of the affine chart `U(y) ≅ Spec(stalk(y))`.
    pub fn generizations(&self, y: usize) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.leq[x][y]).collect()
    }

    /// Maximal stalk rank.
    pub fn dim(&self) -> usize {
        self.stalks.iter().map(ToricMonoid::rank).max().unwrap_or(0)
    }
}

fn image_cone(m: &IntegerMatrix, cell: &Cone) -> Result<Cone> {
    let rays: Vec<IntegerVector> = cell.rays().iter().map(|r| m.apply(r)).collect();
    Cone::from_rays(m.rows(), &rays)
}

/// `Spec P`: one point per prime ideal of the sharpening of `P`, realized as
/// the complement of a face `F` of the cone spanned by `P`. The stalk at
/// `P ∖ F` is the image of `P` in the quotient lattice by `span(F)`.
pub fn spec(p: &ToricMonoid) -> Result<KatoFan> {
    let p = p.sharpened();
    let r = p.rank();
    let cone = p.cone();
    let faces = cone.face_lattice();
    // Quotient lattice coordinates: rows span (span F)^⊥ ∩ Z^r.
    let projections: Vec<Vec<IntegerVector>> = faces
        .iter()
        .map(|f| {
            let rays: Vec<IntegerVector> = f.rays.iter().map(|&i| cone.rays()[i].clone()).collect();
            integer_kernel_basis(&rays, r)
        })
        .collect();
    let mut points: Vec<usize> = (0..faces.len()).collect();
    // Generic point (the whole cone, empty prime) first.
    points.sort_by(|&a, &b| {
        faces[b]
            .dim
            .cmp(&faces[a].dim)
            .then_with(|| faces[a].rays.cmp(&faces[b].rays))
    });
    let mut stalks = Vec::new();
    for &f in &points {
        let b = &projections[f];
        let proj = IntegerMatrix::new(b.len(), r, b.clone())?;
        let images: Vec<IntegerVector> = cone.rays().iter().map(|g| proj.apply(g)).collect();
        stalks.push(ToricMonoid::sharp(Cone::from_rays(b.len(), &images)?)?);
    }
    let mut steps = BTreeMap::new();
    for (i, &fa) in points.iter().enumerate() {
        for (j, &fb) in points.iter().enumerate() {
            let (a, b) = (&faces[fa], &faces[fb]);
            // p_a ⊂ p_b ⇔ F_a ⊃ F_b; a covering step drops one dimension.
            if a.dim == b.dim + 1 && b.rays.iter().all(|k| a.rays.contains(k)) {
                let t = transition(&projections[fa], &projections[fb])?;
                steps.insert((i, j), t.transpose());
            }
        }
    }
    let names = (0..points.len()).map(|i| format!("p{i}")).collect();
    KatoFan::new(names, stalks, steps)
}

// ---------------------------------------------------------------------------
// Cone complexes

/// The cone complex `Σ_F`: one cell `Hom(stalk(ξ), R≥0)` per point, glued
/// along the embeddings of the Kato fan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbstractConeComplex {
    names: Vec<String>,
    cells: Vec<Cone>,
    leq: Vec<Vec<bool>>,
    composites: BTreeMap<(usize, usize), IntegerMatrix>,
    steps: BTreeMap<(usize, usize), IntegerMatrix>,
}

pub fn cone_complex(f: &KatoFan) -> AbstractConeComplex {
    AbstractConeComplex {
        names: f.names.clone(),
        cells: f.stalks.iter().map(ToricMonoid::hom_cone).collect(),
        leq: f.leq.clone(),
        composites: f.composites.clone(),
        steps: f.steps.clone(),
    }
}

impl AbstractConeComplex {
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn cell(&self, x: usize) -> &Cone {
        &self.cells[x]
    }

    pub fn cells(&self) -> &[Cone] {
        &self.cells
    }

    pub fn dim(&self) -> usize {
        self.cells.iter().map(Cone::dim).max().unwrap_or(0)
    }

    /// Attaching maps for the listed specialization steps.
    pub fn attaching(&self) -> &BTreeMap<(usize, usize), IntegerMatrix> {
        &self.steps
    }

    /// Whether cell `x` is (identified with) a face of cell `y`.
    pub fn is_face(&self, x: usize, y: usize) -> bool {
        self.leq[x][y]
    }

    /// Embedding of cell `x` into cell `y`, when `x` is a face of `y`.
    pub fn embedding(&self, x: usize, y: usize) -> Option<&IntegerMatrix> {
        self.composites.get(&(x, y))
    }

    /// Faces of cell `y`: pairs of the point indexing the face and the
    /// indices of the rays of cell `y` spanning it.
    pub fn faces_of(&self, y: usize) -> Vec<(usize, Vec<usize>)> {
        let cell = &self.cells[y];
        (0..self.len())
            .filter(|&x| self.leq[x][y])
            .map(|x| {
                let m = &self.composites[&(x, y)];
                let images: BTreeSet<IntegerVector> =
                    self.cells[x].rays().iter().map(|r| m.apply(r)).collect();
                let idx = (0..cell.rays().len())
                    .filter(|&i| images.contains(&cell.rays()[i]))
                    .collect();
                (x, idx)
            })
            .collect()
    }

    /// The reduction map: the point `ξ` whose open cell contains `w`, for
    /// `w` given in the coordinates of cell `y`.
    pub fn reduce(&self, y: usize, w: &RationalVector) -> Option<usize> {
        let cell = &self.cells[y];
        if w.dim() != cell.ambient_dim() || !cell.contains_point(w) {
            return None;
        }
        let tight: Vec<&IntegerVector> = cell
            .facets()
            .iter()
            .filter(|a| a.dot_rational(w).is_zero())
            .collect();
        let support: Vec<usize> = (0..cell.rays().len())
            .filter(|&i| tight.iter().all(|a| a.dot(&cell.rays()[i]).is_zero()))
            .collect();
        self.faces_of(y)
            .into_iter()
            .find(|(_, rays)| *rays == support)
            .map(|(x, _)| x)
    }
}

/// One row of the strata–cone correspondence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumCell {
    pub point: usize,
    pub name: String,
    pub cell_dim: usize,
    /// Codimension of the stratum `E(ξ)`, equal to `dim σ(ξ)`.
    pub stratum_codim: usize,
}

/// The order-reversing bijection between points (strata) and cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrataConeTable {
    pub rows: Vec<StratumCell>,
    /// `ξ ≤ ξ'` exactly when `σ(ξ)` is a face of `σ(ξ')`, and then the
    /// stratum `E(ξ')` lies in the closure of `E(ξ)` with larger codimension.
    pub order_reversing: bool,
}

impl StrataConeTable {
    pub fn cell_of(&self, point: usize) -> usize {
        self.rows
            .iter()
            .position(|r| r.point == point)
            .expect("every point has a cell")
    }

    pub fn point_of(&self, cell: usize) -> usize {
        self.rows[cell].point
    }
}

pub fn strata_cone_table(f: &KatoFan) -> StrataConeTable {
    let complex = cone_complex(f);
    let rows: Vec<StratumCell> = (0..f.len())
        .map(|x| StratumCell {
            point: x,
            name: f.names[x].clone(),
            cell_dim: complex.cells[x].dim(),
            stratum_codim: f.stalks[x].rank(),
        })
        .collect();
    let mut order_reversing = true;
    for x in 0..f.len() {
        let cx = &complex.cells[x];
        for y in 0..f.len() {
            let face = match complex.embedding(x, y) {
                Some(m) => image_cone(m, cx)
                    .map(|img| img.is_face_of(&complex.cells[y]))
                    .unwrap_or(false),
                None => false,
            };
            if face != f.leq(x, y) {
                order_reversing = false;
            }
            if x != y && f.leq(x, y) && rows[x].stratum_codim >= rows[y].stratum_codim {
                order_reversing = false;
            }
        }
        if rows[x].cell_dim != rows[x].stratum_codim {
            order_reversing = false;
        }
    }
    StrataConeTable {
        rows,
        order_reversing,
    }
}

// ---------------------------------------------------------------------------
// Proper subdivisions

/// Evidence for or against `Σ' → Σ` being a proper subdivision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubdivisionCertificate {
    pub proper: bool,
    /// For each cone of `Σ'`, the index of the smallest cone of `Σ`
    /// containing it.
    pub containing: Vec<Option<usize>>,
    pub supports_equal: bool,
}

/// Whether `sub` is a proper subdivision of `base`: every cone of `sub` lies
/// in a cone of `base` and both have the same support (so lattice points of
/// the supports correspond bijectively).
pub fn is_proper_subdivision(sub: &Fan, base: &Fan) -> Result<SubdivisionCertificate> {
    if sub.ambient_dim() != base.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: base.ambient_dim(),
            found: sub.ambient_dim(),
        });
    }
    let containing: Vec<Option<usize>> = sub
        .cones()
        .iter()
        .map(|c| {
            base.cones()
                .iter()
                .enumerate()
                .filter(|(_, b)| b.cone.contains_cone(&c.cone))
                .min_by_key(|(_, b)| b.cone.dim())
                .map(|(i, _)| i)
        })
        .collect();
    let supports_equal = support_contains(sub, base)? && support_contains(base, sub)?;
    Ok(SubdivisionCertificate {
        proper: supports_equal && containing.iter().all(Option::is_some),
        containing,
        supports_equal,
    })
}
