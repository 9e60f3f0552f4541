//! Limit and colimit constructions: products, subcomplexes, quotients,
//! pushouts and coequalizers (degreewise gluing with Eilenberg–Zilber
//! renormalization), pullbacks, smash products, and the mediating maps their
//! universal properties provide.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::Error;
use crate::sset::map::SMap;
use crate::sset::space::{max_dim, SimplexId, SimplexRef, Space, SpaceBuilder};
use crate::sset::word::Word;

// ---------------------------------------------------------------------------
// Products

/// Binary product with projection witnesses and the pair table.
#[derive(Clone)]
pub struct Product {
    pub space: Arc<Space>,
    pub proj1: SMap,
    pub proj2: SMap,
    pairs: Vec<Vec<(SimplexRef, SimplexRef)>>,
    index: HashMap<(SimplexRef, SimplexRef), SimplexId>,
}

/// Canonical form of a pair of equal-dimension references: extract the common
/// degeneracy word, leaving a jointly nondegenerate pair.
fn joint_normal_form(a: &SimplexRef, b: &SimplexRef) -> (Word, SimplexRef, SimplexRef) {
    debug_assert_eq!(a.dim(), b.dim());
    let common: Vec<u32> = a
        .word
        .letters()
        .iter()
        .copied()
        .filter(|i| b.word.contains(*i))
        .collect();
    if common.is_empty() {
        return (Word::empty(), a.clone(), b.clone());
    }
    let n = a.dim();
    let shared = Word::normalize(&common);
    let g = shared.surjection(n - shared.len());
    let residual = |r: &SimplexRef| -> SimplexRef {
        let full = r.word.surjection(r.base.dim);
        let mut reduced = vec![0usize; n - shared.len() + 1];
        for k in 0..=n {
            reduced[g[k]] = full[k];
        }
        SimplexRef { base: r.base, word: Word::from_surjection(&reduced) }
    };
    let (ra, rb) = (residual(a), residual(b));
    (shared, ra, rb)
}

impl Product {
    pub fn new(x: &Arc<Space>, y: &Arc<Space>) -> Result<Product, Error> {
        let top = x.top_dim() + y.top_dim();
        if top > max_dim() && !x.is_empty() && !y.is_empty() {
            return Err(Error::DimensionCap { dim: top, cap: max_dim() });
        }
        let mut builder = SpaceBuilder::new();
        let mut pairs: Vec<Vec<(SimplexRef, SimplexRef)>> = Vec::new();
        let mut index: HashMap<(SimplexRef, SimplexRef), SimplexId> = HashMap::new();
        for n in 0..=top {
            pairs.push(Vec::new());
            let xs = x.all_refs(n);
            let ys = y.all_refs(n);
            for s in &xs {
                for t in &ys {
                    if s.word.letters().iter().any(|i| t.word.contains(*i)) {
                        continue; // jointly degenerate
                    }
                    let name = format!("({}|{})", x.ref_name(s), y.ref_name(t));
                    let faces = if n == 0 {
                        Vec::new()
                    } else {
                        let mut faces = Vec::with_capacity(n + 1);
                        for i in 0..=n as u32 {
                            let fs = x.face(i, s)?;
                            let ft = y.face(i, t)?;
                            let (w, ps, pt) = joint_normal_form(&fs, &ft);
                            let base = *index.get(&(ps.clone(), pt.clone())).ok_or_else(|| {
                                Error::Validation("product face missing from table".into())
                            })?;
                            faces.push(SimplexRef { base, word: w });
                        }
                        faces
                    };
                    let id = builder.add(n, name, faces);
                    index.insert((s.clone(), t.clone()), id);
                    pairs[n].push((s.clone(), t.clone()));
                }
            }
            if x.is_empty() || y.is_empty() {
                break;
            }
        }
        let space = builder.build()?;
        let proj1 = SMap::from_fn(space.clone(), x.clone(), false, |id| {
            Ok(pairs[id.dim][id.idx].0.clone())
        })?;
        let proj2 = SMap::from_fn(space.clone(), y.clone(), false, |id| {
            Ok(pairs[id.dim][id.idx].1.clone())
        })?;
        Ok(Product { space, proj1, proj2, pairs, index })
    }

    pub fn components(&self, id: SimplexId) -> &(SimplexRef, SimplexRef) {
        &self.pairs[id.dim][id.idx]
    }

    /// Components of an arbitrary reference into the product.
    pub fn components_of(&self, r: &SimplexRef) -> (SimplexRef, SimplexRef) {
        let (a, b) = self.components(r.base);
        (a.under_word(&r.word), b.under_word(&r.word))
    }

    /// The canonical reference of a pair of equal-dimension references.
    pub fn pair_ref(&self, a: &SimplexRef, b: &SimplexRef) -> Result<SimplexRef, Error> {
        if a.dim() != b.dim() {
            return Err(Error::SpaceMismatch { context: "pair of unequal dimensions" });
        }
        let (w, pa, pb) = joint_normal_form(a, b);
        let base = *self
            .index
            .get(&(pa, pb))
            .ok_or(Error::SpaceMismatch { context: "pair not in product table" })?;
        Ok(SimplexRef { base, word: w })
    }

    /// Mediating map into the product from a cone `q1: W -> X`, `q2: W -> Y`.
    pub fn pair_map(&self, q1: &SMap, q2: &SMap) -> Result<SMap, Error> {
        if q1.domain().as_ref() != q2.domain().as_ref() {
            return Err(Error::NonCommutingCone { context: "product cone domains differ" });
        }
        SMap::from_fn(q1.domain().clone(), self.space.clone(), false, |id| {
            self.pair_ref(&q1.eval(&SimplexRef::nondeg(id)), &q2.eval(&SimplexRef::nondeg(id)))
        })
    }

    /// Componentwise map of products: `f x g` from `source` to `self`.
    pub fn map_from(&self, source: &Product, f: &SMap, g: &SMap) -> Result<SMap, Error> {
        SMap::from_fn(source.space.clone(), self.space.clone(), false, |id| {
            let (a, b) = source.components(id);
            self.pair_ref(&f.eval(a), &g.eval(b))
        })
    }
}

// ---------------------------------------------------------------------------
// Subcomplexes

/// A full subfamily of nondegenerate simplices closed under faces.
#[derive(Clone)]
pub struct Subcomplex {
    pub space: Arc<Space>,
    pub incl: SMap,
    fwd: Vec<Vec<Option<SimplexId>>>,
}

impl Subcomplex {
    pub fn new(ambient: &Arc<Space>, keep: impl Fn(SimplexId) -> bool) -> Result<Subcomplex, Error> {
        let mut fwd: Vec<Vec<Option<SimplexId>>> = Vec::new();
        let mut back: Vec<Vec<SimplexId>> = Vec::new();
        for dim in 0..=ambient.top_dim() {
            fwd.push(vec![None; ambient.rank(dim)]);
            back.push(Vec::new());
            for id in ambient.ids(dim) {
                if keep(id) {
                    fwd[dim][id.idx] = Some(SimplexId { dim, idx: back[dim].len() });
                    back[dim].push(id);
                }
            }
        }
        let mut builder = SpaceBuilder::new();
        for dim in 0..back.len() {
            for &amb in &back[dim] {
                let rec = ambient.record(amb);
                let faces = rec
                    .faces
                    .iter()
                    .map(|f| {
                        fwd[f.base.dim][f.base.idx]
                            .map(|sub| SimplexRef { base: sub, word: f.word.clone() })
                            .ok_or_else(|| {
                                Error::Validation(format!(
                                    "subfamily not closed under faces at {}",
                                    rec.name
                                ))
                            })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                builder.add(dim, rec.name.clone(), faces);
            }
        }
        let space = builder.build()?;
        let incl = SMap::from_fn(space.clone(), ambient.clone(), false, |id| {
            Ok(SimplexRef::nondeg(back[id.dim][id.idx]))
        })?;
        Ok(Subcomplex { space, incl, fwd })
    }

    /// Restrict an ambient reference to the subcomplex, if it lies inside.
    pub fn restrict(&self, r: &SimplexRef) -> Option<SimplexRef> {
        self.fwd
            .get(r.base.dim)?
            .get(r.base.idx)?
            .map(|base| SimplexRef { base, word: r.word.clone() })
    }
}

// ---------------------------------------------------------------------------
// Quotients by a subobject

/// Quotient of `z` by the image of a degreewise-injective map, pointed at the
/// collapsed class.
#[derive(Clone)]
pub struct Quotient {
    pub space: Arc<Space>,
    pub proj: SMap,
    lifts: Vec<Vec<Option<SimplexId>>>, // per quotient id: the z id it came from
}

impl Quotient {
    pub fn new(z: &Arc<Space>, incl: &SMap) -> Result<Quotient, Error> {
        if incl.codomain().as_ref() != z.as_ref() {
            return Err(Error::SpaceMismatch { context: "quotient inclusion target" });
        }
        if !incl.is_mono() {
            return Err(Error::NotInjective { context: "quotient requires an inclusion" });
        }
        if incl.domain().is_empty() {
            return Err(Error::Validation(
                "quotient by the empty subobject: use plus_basepoint".into(),
            ));
        }
        let a = incl.domain();
        let mut collapsed: Vec<Vec<bool>> = (0..=z.top_dim()).map(|d| vec![false; z.rank(d)]).collect();
        for dim in 0..=a.top_dim() {
            for id in a.ids(dim) {
                let img = incl.image_of(id);
                debug_assert!(img.word.is_empty(), "mono sends nondegenerate to nondegenerate");
                collapsed[img.base.dim][img.base.idx] = true;
            }
        }
        let mut builder = SpaceBuilder::new();
        let bp = builder.vertex("*");
        let mut fwd: Vec<Vec<Option<SimplexId>>> = Vec::new();
        let mut lifts: Vec<Vec<Option<SimplexId>>> = vec![Vec::new(); z.top_dim() + 1];
        lifts[0].push(None); // the fresh basepoint at index 0
        for dim in 0..=z.top_dim() {
            fwd.push(vec![None; z.rank(dim)]);
            for id in z.ids(dim) {
                if !collapsed[dim][id.idx] {
                    let idx = lifts[dim].len();
                    fwd[dim][id.idx] = Some(SimplexId { dim, idx });
                    lifts[dim].push(Some(id));
                }
            }
        }
        let to_ref = |f: &SimplexRef, fwd: &Vec<Vec<Option<SimplexId>>>| -> SimplexRef {
            match fwd[f.base.dim][f.base.idx] {
                Some(base) => SimplexRef { base, word: f.word.clone() },
                None => SimplexRef { base: bp, word: Word::vertex_to_dim(f.dim()) },
            }
        };
        for dim in 0..=z.top_dim() {
            for id in z.ids(dim) {
                if collapsed[dim][id.idx] {
                    continue;
                }
                let rec = z.record(id);
                let faces = rec.faces.iter().map(|f| to_ref(f, &fwd)).collect();
                builder.add(dim, rec.name.clone(), faces);
            }
        }
        builder.basepoint(bp);
        let space = builder.build()?;
        let proj = SMap::from_fn(z.clone(), space.clone(), false, |id| {
            Ok(match fwd[id.dim][id.idx] {
                Some(base) => SimplexRef::nondeg(base),
                None => SimplexRef { base: bp, word: Word::vertex_to_dim(id.dim) },
            })
        })?;
        Ok(Quotient { space, proj, lifts })
    }

    /// The `z`-simplex a non-basepoint nondegenerate class came from.
    pub fn lift(&self, id: SimplexId) -> Option<SimplexId> {
        self.lifts[id.dim][id.idx]
    }
}

// ---------------------------------------------------------------------------
// Disjoint basepoint

/// `X_+`: the same table with one fresh basepoint vertex appended.
#[derive(Clone)]
pub struct Plus {
    pub space: Arc<Space>,
    pub incl: SMap,
}

impl Plus {
    pub fn new(x: &Arc<Space>) -> Result<Plus, Error> {
        let mut builder = SpaceBuilder::new();
        for dim in 0..=x.top_dim() {
            for id in x.ids(dim) {
                let rec = x.record(id);
                builder.add(dim, rec.name.clone(), rec.faces.clone());
            }
        }
        let bp = builder.vertex("+");
        builder.basepoint(bp);
        let space = builder.build()?;
        let incl = SMap::from_fn(x.clone(), space.clone(), false, |id| Ok(SimplexRef::nondeg(id)))?;
        Ok(Plus { space, incl })
    }

    /// References of `X_+` coming from `X` keep their ids; the extra vertex is
    /// the basepoint.
    pub fn from_x(&self, r: &SimplexRef) -> SimplexRef {
        r.clone()
    }

    /// View a non-basepoint reference as a reference in `X`.
    pub fn to_x(&self, r: &SimplexRef) -> Option<SimplexRef> {
        if self.space.is_basepoint_ref(r) {
            None
        } else {
            Some(r.clone())
        }
    }

    /// The collapse `X_+ -> e_+ = S^0` killing `X` to the non-basepoint pole.
    pub fn eps(&self) -> Result<(SMap, Arc<Space>), Error> {
        let s0 = crate::sset::space::standard(crate::sset::space::Standard::Sphere(0))?;
        let pole = SimplexId { dim: 0, idx: 1 }; // the non-basepoint vertex "c"
        let bp_here = self.space.basepoint().expect("plus space is pointed");
        let map = SMap::from_fn(self.space.clone(), s0.clone(), true, |id| {
            Ok(if id == bp_here {
                SimplexRef::nondeg(SimplexId { dim: 0, idx: 0 })
            } else {
                SimplexRef { base: pole, word: Word::vertex_to_dim(id.dim) }
            })
        })?;
        Ok((map, s0))
    }
}

// ---------------------------------------------------------------------------
// Gluing (degreewise set colimits with renormalization)

/// Result of gluing a family of spaces along generated relations: the glued
/// space, one structure map per side, and class lookup.
pub struct Glued {
    pub space: Arc<Space>,
    pub maps: Vec<SMap>,
    side_index: Vec<Vec<HashMap<SimplexRef, usize>>>, // [side][dim] -> universe slot
    canon: Vec<Vec<Option<SimplexRef>>>,              // [dim][slot root] -> canonical ref
    roots: Vec<Vec<usize>>,                           // [dim][slot] -> root slot
}

impl Glued {
    /// Canonical reference of the class of a side reference.
    pub fn class_ref(&self, side: usize, r: &SimplexRef) -> SimplexRef {
        let dim = r.dim();
        let slot = self.side_index[side][dim][r];
        let root = self.roots[dim][slot];
        self.canon[dim][root].clone().expect("canonical form computed for every class")
    }
}

/// Glue `sides` along `relations` (pairs of equal-dimension references that
/// become equal). The relation family must be simplicially generated, i.e.
/// closed under faces and degeneracies as a consequence of its generators;
/// relations obtained by evaluating simplicial maps on all references are.
pub fn glue(
    sides: &[Arc<Space>],
    relations: &[((usize, SimplexRef), (usize, SimplexRef))],
    basepoint: Option<(usize, SimplexId)>,
) -> Result<Glued, Error> {
    let top = sides.iter().map(|s| s.top_dim()).max().unwrap_or(0);
    if top > max_dim() {
        return Err(Error::DimensionCap { dim: top, cap: max_dim() });
    }
    // Universe of all references per dimension, with union-find.
    let mut side_refs: Vec<Vec<Vec<SimplexRef>>> = Vec::new(); // [dim][side]
    let mut side_index: Vec<Vec<HashMap<SimplexRef, usize>>> =
        vec![vec![HashMap::new(); top + 1]; sides.len()];
    let mut uf: Vec<Vec<usize>> = Vec::new();
    for dim in 0..=top {
        let mut this_dim: Vec<Vec<SimplexRef>> = Vec::new();
        let mut slot = 0usize;
        for (si, space) in sides.iter().enumerate() {
            let refs = space.all_refs(dim);
            for r in &refs {
                side_index[si][dim].insert(r.clone(), slot);
                slot += 1;
            }
            this_dim.push(refs);
        }
        side_refs.push(this_dim);
        uf.push((0..slot).collect());
    }
    fn find(uf: &mut Vec<usize>, mut x: usize) -> usize {
        while uf[x] != x {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        x
    }
    for ((sa, ra), (sb, rb)) in relations {
        let dim = ra.dim();
        if rb.dim() != dim {
            return Err(Error::SpaceMismatch { context: "glue relation dimensions" });
        }
        let a = side_index[*sa][dim][ra];
        let b = side_index[*sb][dim][rb];
        let (ra, rb) = (find(&mut uf[dim], a), find(&mut uf[dim], b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            uf[dim][hi] = lo;
        }
    }
    // Resolve slots to (side, ref).
    let locate = |dim: usize, mut slot: usize| -> (usize, &SimplexRef) {
        for (si, refs) in side_refs[dim].iter().enumerate() {
            if slot < refs.len() {
                return (si, &refs[slot]);
            }
            slot -= refs.len();
        }
        unreachable!()
    };
    let mut roots: Vec<Vec<usize>> = Vec::with_capacity(top + 1);
    for dim in 0..=top {
        let n = uf[dim].len();
        let mut r = Vec::with_capacity(n);
        for slot in 0..n {
            r.push(find(&mut uf[dim], slot));
        }
        // Canonicalize roots to the minimum slot of the class.
        let mut min_of: HashMap<usize, usize> = HashMap::new();
        for slot in 0..n {
            let e = min_of.entry(r[slot]).or_insert(slot);
            if slot < *e {
                *e = slot;
            }
        }
        for slot in 0..n {
            r[slot] = min_of[&r[slot]];
        }
        roots.push(r);
    }
    // Class-level face map (checked well-defined on every member).
    let mut face_of: Vec<HashMap<(usize, u32), usize>> = vec![HashMap::new(); top + 1]; // (root, i) -> root at dim-1
    for dim in 1..=top {
        let n = uf[dim].len();
        for slot in 0..n {
            let (si, r) = locate(dim, slot);
            let root = roots[dim][slot];
            for i in 0..=dim as u32 {
                let f = sides[si].face(i, r)?;
                let froot = roots[dim - 1][side_index[si][dim - 1][&f]];
                match face_of[dim].get(&(root, i)) {
                    None => {
                        face_of[dim].insert((root, i), froot);
                    }
                    Some(&prev) => {
                        if prev != froot {
                            return Err(Error::Validation(
                                "glue relations are not simplicially generated".into(),
                            ));
                        }
                    }
                }
            }
        }
    }
    // Detect degenerate classes and compute canonical forms, dimension up.
    let mut canon: Vec<Vec<Option<SimplexRef>>> = (0..=top).map(|d| vec![None; uf[d].len()]).collect();
    let mut builder = SpaceBuilder::new();
    let mut record_faces: Vec<(usize, String, Vec<usize>)> = Vec::new(); // dim, name, face roots
    let mut per_dim_count = vec![0usize; top + 1];
    for dim in 0..=top {
        let n = uf[dim].len();
        let mut seen_roots: Vec<usize> = Vec::new();
        for slot in 0..n {
            if roots[dim][slot] == slot {
                seen_roots.push(slot);
            }
        }
        for &root in &seen_roots {
            // Degenerate iff s_i d_i x = x for some i.
            let mut witness: Option<(u32, usize)> = None; // (i, face root)
            if dim >= 1 {
                for i in 0..dim as u32 {
                    let froot = face_of[dim][&(root, i)];
                    // Compute s_i of the face class via any member.
                    let (si, fref) = locate(dim - 1, froot);
                    let s = sides[si].degeneracy(i, fref)?;
                    let sroot = roots[dim][side_index[si][dim][&s]];
                    if sroot == root {
                        witness = Some((i, froot));
                        break;
                    }
                }
            }
            match witness {
                Some((i, froot)) => {
                    let below = canon[dim - 1][froot]
                        .clone()
                        .expect("lower canonical forms already computed");
                    canon[dim][root] = Some(below.degenerate(i));
                }
                None => {
                    let (si, rep) = locate(dim, root);
                    debug_assert!(rep.word.is_empty(), "nondegenerate class with degenerate member");
                    let name = sides[si].ref_name(rep);
                    let id = SimplexId { dim, idx: per_dim_count[dim] };
                    per_dim_count[dim] += 1;
                    canon[dim][root] = Some(SimplexRef::nondeg(id));
                    let faces = (0..if dim == 0 { 0 } else { dim + 1 })
                        .map(|i| face_of[dim][&(root, i as u32)])
                        .collect();
                    record_faces.push((dim, name, faces));
                }
            }
        }
    }
    for (dim, name, faces) in record_faces {
        let refs = faces
            .iter()
            .map(|froot| canon[dim - 1][*froot].clone().expect("face canonical form"))
            .collect();
        builder.add(dim, name, refs);
    }
    let mut glued_basepoint = None;
    if let Some((side, v)) = basepoint {
        let root = roots[0][side_index[side][0][&SimplexRef::nondeg(v)]];
        let r = canon[0][root].clone().expect("basepoint class");
        glued_basepoint = Some(r.base);
    }
    if let Some(bp) = glued_basepoint {
        builder.basepoint(bp);
    }
    let space = builder.build()?;
    let glued = Glued { space, maps: Vec::new(), side_index, canon, roots };
    // Wait to build maps until the final ids exist; redo canonical refs are
    // already in terms of the final ids, so the structure maps read off.
    let mut maps = Vec::with_capacity(sides.len());
    for (si, side) in sides.iter().enumerate() {
        let m = SMap::from_fn(side.clone(), glued.space.clone(), false, |id| {
            Ok(glued.class_ref(si, &SimplexRef::nondeg(id)))
        })?;
        maps.push(m);
    }
    Ok(Glued { maps, ..glued })
}

/// Pushout of `f: A -> B` and `g: A -> C`, glued degreewise.
pub struct Pushout {
    pub glued: Glued,
    pub inj1: SMap,
    pub inj2: SMap,
}

impl Pushout {
    pub fn space(&self) -> &Arc<Space> {
        &self.glued.space
    }
}

pub fn pushout(f: &SMap, g: &SMap) -> Result<Pushout, Error> {
    pushout_pointed(f, g, None)
}

pub fn pushout_pointed(
    f: &SMap,
    g: &SMap,
    basepoint: Option<(usize, SimplexId)>,
) -> Result<Pushout, Error> {
    if f.domain().as_ref() != g.domain().as_ref() {
        return Err(Error::SpaceMismatch { context: "pushout legs must share a domain" });
    }
    let a = f.domain();
    let top = f.codomain().top_dim().max(g.codomain().top_dim());
    let mut rels = Vec::new();
    for dim in 0..=top {
        for r in a.all_refs(dim) {
            rels.push(((0usize, f.eval(&r)), (1usize, g.eval(&r))));
        }
    }
    let glued = glue(&[f.codomain().clone(), g.codomain().clone()], &rels, basepoint)?;
    let inj1 = glued.maps[0].clone();
    let inj2 = glued.maps[1].clone();
    Ok(Pushout { glued, inj1, inj2 })
}

/// Coequalizer of a parallel pair `f, g: A -> B`.
pub struct Coequalizer {
    pub glued: Glued,
    pub proj: SMap,
}

pub fn coequalizer(f: &SMap, g: &SMap) -> Result<Coequalizer, Error> {
    if f.domain().as_ref() != g.domain().as_ref()
        || f.codomain().as_ref() != g.codomain().as_ref()
    {
        return Err(Error::SpaceMismatch { context: "coequalizer parallel pair" });
    }
    let a = f.domain();
    let top = f.codomain().top_dim();
    let mut rels = Vec::new();
    for dim in 0..=top {
        for r in a.all_refs(dim) {
            rels.push(((0usize, f.eval(&r)), (0usize, g.eval(&r))));
        }
    }
    let glued = glue(&[f.codomain().clone()], &rels, None)?;
    let proj = glued.maps[0].clone();
    Ok(Coequalizer { glued, proj })
}

/// Mediating map out of a pushout, given a commuting cocone.
pub fn induced_from_pushout(po: &Pushout, u: &SMap, v: &SMap) -> Result<SMap, Error> {
    if u.codomain().as_ref() != v.codomain().as_ref() {
        return Err(Error::NonCommutingCone { context: "pushout cocone targets differ" });
    }
    // Consistency across every class member is exactly commutation of the
    // cocone with the generating relations.
    let space = po.space().clone();
    let mut images: Vec<Vec<Option<SimplexRef>>> =
        (0..=space.top_dim()).map(|d| vec![None; space.rank(d)]).collect();
    let legs = [u, v];
    for (side, leg) in legs.iter().enumerate() {
        for dim in 0..=leg.domain().top_dim() {
            for id in leg.domain().ids(dim) {
                let class = po.glued.class_ref(side, &SimplexRef::nondeg(id));
                let img = leg.eval(&SimplexRef::nondeg(id));
                if class.word.is_empty() {
                    match &images[class.base.dim][class.base.idx] {
                        None => images[class.base.dim][class.base.idx] = Some(img),
                        Some(prev) => {
                            if *prev != img {
                                return Err(Error::NonCommutingCone {
                                    context: "pushout cocone disagrees on a shared class",
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    // Classes whose every member is degenerate cannot exist for nondegenerate
    // records, so all images are set.
    let out = SMap::from_fn(space, u.codomain().clone(), false, |id| {
        images[id.dim][id.idx]
            .clone()
            .ok_or(Error::NonCommutingCone { context: "pushout class without nondegenerate member" })
    })?;
    // Full commutation check: u = out ∘ inj1 and v = out ∘ inj2.
    if !po.inj1.then(&out)?.same_images(u) || !po.inj2.then(&out)?.same_images(v) {
        return Err(Error::NonCommutingCone { context: "cocone does not commute" });
    }
    Ok(out)
}

/// Mediating map out of a coequalizer.
pub fn induced_from_coequalizer(c: &Coequalizer, u: &SMap) -> Result<SMap, Error> {
    let space = c.glued.space.clone();
    let mut images: Vec<Vec<Option<SimplexRef>>> =
        (0..=space.top_dim()).map(|d| vec![None; space.rank(d)]).collect();
    for dim in 0..=u.domain().top_dim() {
        for id in u.domain().ids(dim) {
            let class = c.glued.class_ref(0, &SimplexRef::nondeg(id));
            let img = u.eval(&SimplexRef::nondeg(id));
            if class.word.is_empty() {
                match &images[class.base.dim][class.base.idx] {
                    None => images[class.base.dim][class.base.idx] = Some(img),
                    Some(prev) => {
                        if *prev != img {
                            return Err(Error::NonCommutingCone {
                                context: "map does not coequalize the pair",
                            });
                        }
                    }
                }
            }
        }
    }
    let out = SMap::from_fn(space, u.codomain().clone(), false, |id| {
        images[id.dim][id.idx]
            .clone()
            .ok_or(Error::NonCommutingCone { context: "class without nondegenerate member" })
    })?;
    if !c.proj.then(&out)?.same_images(u) {
        return Err(Error::NonCommutingCone { context: "map does not factor through the quotient" });
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Pullbacks

/// Degreewise fiber product, realized inside the binary product.
pub struct PullbackSpace {
    pub product: Product,
    pub sub: Subcomplex,
    pub space: Arc<Space>,
    pub proj1: SMap,
    pub proj2: SMap,
}

pub fn pullback(f: &SMap, p: &SMap) -> Result<PullbackSpace, Error> {
    if f.codomain().as_ref() != p.codomain().as_ref() {
        return Err(Error::SpaceMismatch { context: "pullback legs must share a codomain" });
    }
    let product = Product::new(f.domain(), p.domain())?;
    let prod_space = product.space.clone();
    let sub = Subcomplex::new(&prod_space, |id| {
        let (a, b) = product.components(id);
        f.eval(a) == p.eval(b)
    })?;
    let proj1 = sub.incl.then(&product.proj1)?;
    let proj2 = sub.incl.then(&product.proj2)?;
    Ok(PullbackSpace { space: sub.space.clone(), product, sub, proj1, proj2 })
}

impl PullbackSpace {
    /// The reference of a compatible pair.
    pub fn pair_ref(&self, a: &SimplexRef, b: &SimplexRef) -> Result<SimplexRef, Error> {
        let in_prod = self.product.pair_ref(a, b)?;
        self.sub
            .restrict(&in_prod)
            .ok_or(Error::NonCommutingCone { context: "pair not in the fiber product" })
    }

    pub fn components(&self, id: SimplexId) -> (SimplexRef, SimplexRef) {
        let amb = self.sub.incl.image_of(id);
        debug_assert!(amb.word.is_empty());
        self.product.components(amb.base).clone()
    }

    /// Mediating map into the pullback from a commuting cone.
    pub fn induced(&self, q1: &SMap, q2: &SMap) -> Result<SMap, Error> {
        if q1.domain().as_ref() != q2.domain().as_ref() {
            return Err(Error::NonCommutingCone { context: "pullback cone domains differ" });
        }
        SMap::from_fn(q1.domain().clone(), self.space.clone(), false, |id| {
            self.pair_ref(&q1.eval(&SimplexRef::nondeg(id)), &q2.eval(&SimplexRef::nondeg(id)))
        })
    }
}

// ---------------------------------------------------------------------------
// Smash products

/// Smash product of pointed spaces: product, then collapse the wedge.
pub struct Smash {
    pub product: Product,
    pub wedge: Subcomplex,
    pub quotient: Quotient,
    pub space: Arc<Space>,
}

pub fn smash(y1: &Arc<Space>, y2: &Arc<Space>) -> Result<Smash, Error> {
    let (Some(b1), Some(b2)) = (y1.basepoint(), y2.basepoint()) else {
        return Err(Error::NotPointed);
    };
    let product = Product::new(y1, y2)?;
    let prod_space = product.space.clone();
    let wedge = Subcomplex::new(&prod_space, |id| {
        let (a, b) = product.components(id);
        a.base == b1 || b.base == b2
    })?;
    let quotient = Quotient::new(&prod_space, &wedge.incl)?;
    Ok(Smash { space: quotient.space.clone(), product, wedge, quotient })
}

impl Smash {
    /// Class of the pair `a ∧ b`.
    pub fn smash_ref(&self, a: &SimplexRef, b: &SimplexRef) -> Result<SimplexRef, Error> {
        let pair = self.product.pair_ref(a, b)?;
        Ok(self.quotient.proj.eval(&pair))
    }

    /// Components of a non-basepoint nondegenerate smash simplex.
    pub fn components(&self, id: SimplexId) -> Option<(SimplexRef, SimplexRef)> {
        let z = self.quotient.lift(id)?;
        Some(self.product.components(z).clone())
    }

    /// `f ∧ g` against another smash table.
    pub fn map_from(&self, source: &Smash, f: &SMap, g: &SMap) -> Result<SMap, Error> {
        let bp = self.space.basepoint().ok_or(Error::NotPointed)?;
        SMap::from_fn(source.space.clone(), self.space.clone(), true, |id| {
            match source.components(id) {
                None => Ok(SimplexRef { base: bp, word: Word::vertex_to_dim(id.dim) }),
                Some((a, b)) => self.smash_ref(&f.eval(&a), &g.eval(&b)),
            }
        })
    }
}

/// Wedge of two pointed spaces, as the pushout over the point.
pub fn wedge(y1: &Arc<Space>, y2: &Arc<Space>) -> Result<Pushout, Error> {
    let (Some(b1), Some(b2)) = (y1.basepoint(), y2.basepoint()) else {
        return Err(Error::NotPointed);
    };
    let pt = crate::sset::space::standard(crate::sset::space::Standard::Point)?;
    let f = SMap::constant(pt.clone(), y1.clone(), b1)?;
    let g = SMap::constant(pt, y2.clone(), b2)?;
    pushout_pointed(&f, &g, Some((0, b1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::space::{standard, Standard};

    fn sphere(n: usize) -> Arc<Space> {
        standard(Standard::Sphere(n)).unwrap()
    }

    #[test]
    fn square_counts() {
        // Delta[1] x Delta[1]: 4 vertices, 5 edges, 2 triangles.
        let d1 = standard(Standard::Simplex(1)).unwrap();
        let p = Product::new(&d1, &d1).unwrap();
        assert_eq!(p.space.counts(), vec![4, 5, 2]);
        p.proj1.validate().unwrap();
        p.proj2.validate().unwrap();
    }

    #[test]
    fn product_with_point_preserves_counts() {
        let pt = standard(Standard::Point).unwrap();
        for x in [sphere(1), standard(Standard::Simplex(2)).unwrap()] {
            let p = Product::new(&x, &pt).unwrap();
            assert_eq!(p.space.counts(), x.counts());
            assert!(p.proj1.is_iso());
        }
    }

    #[test]
    fn torus_counts() {
        let s1 = sphere(1);
        let t = Product::new(&s1, &s1).unwrap();
        assert_eq!(t.space.counts(), vec![1, 3, 2]);
    }

    #[test]
    fn diagonal_into_product() {
        let s1 = sphere(1);
        let p = Product::new(&s1, &s1).unwrap();
        let id = SMap::identity(s1.clone());
        let diag = p.pair_map(&id, &id).unwrap();
        assert!(diag.then(&p.proj1).unwrap().is_identity_table());
        assert!(diag.then(&p.proj2).unwrap().is_identity_table());
    }

    #[test]
    fn circle_as_quotient() {
        // Delta[1]/boundary = S^1.
        let d1 = standard(Standard::Simplex(1)).unwrap();
        let b = standard(Standard::Boundary(1)).unwrap();
        let inc = SMap::from_fn(b.clone(), d1.clone(), false, |id| Ok(SimplexRef::nondeg(id)))
            .unwrap();
        let q = Quotient::new(&d1, &inc).unwrap();
        assert_eq!(q.space.counts(), vec![1, 1]);
        assert_eq!(q.space.as_ref(), sphere(1).as_ref());
        // Composite A -> Z -> Q is constant at the basepoint.
        let comp = inc.then(&q.proj).unwrap();
        for id in b.ids(0) {
            assert!(q.space.is_basepoint_ref(comp.image_of(id)));
        }
    }

    #[test]
    fn sphere2_as_quotient() {
        let d2 = standard(Standard::Simplex(2)).unwrap();
        let b = standard(Standard::Boundary(2)).unwrap();
        let inc = SMap::from_fn(b.clone(), d2.clone(), false, |id| Ok(SimplexRef::nondeg(id)))
            .unwrap();
        let q = Quotient::new(&d2, &inc).unwrap();
        assert_eq!(q.space.counts(), vec![1, 0, 1]);
        assert_eq!(q.space.as_ref(), sphere(2).as_ref());
    }

    #[test]
    fn pushout_along_identity_is_other_leg() {
        let s1 = sphere(1);
        let d2 = standard(Standard::Simplex(2)).unwrap();
        let pt = standard(Standard::Point).unwrap();
        let f = SMap::identity(pt.clone());
        let g = SMap::constant(pt, d2.clone(), SimplexId { dim: 0, idx: 0 }).unwrap();
        let po = pushout(&f, &g).unwrap();
        assert_eq!(po.space().counts(), d2.counts());
        assert!(po.inj2.is_iso());
        let _ = s1;
    }

    #[test]
    fn wedge_of_circles() {
        let a = sphere(1);
        let b = sphere(1);
        let w = wedge(&a, &b).unwrap();
        assert_eq!(w.space().counts(), vec![1, 2]);
        assert!(w.space().is_pointed());
    }

    #[test]
    fn mapping_cylinder_collapse() {
        // Pushout of S^1 x Delta[1] <- S^1 -> point has the simplex counts of
        // the cone on S^1.
        let s1 = sphere(1);
        let d1 = standard(Standard::Simplex(1)).unwrap();
        let cyl = Product::new(&s1, &d1).unwrap();
        let pt = standard(Standard::Point).unwrap();
        // Include S^1 at level 1 of the cylinder.
        let one = SimplexId { dim: 0, idx: 1 }; // vertex "1" of Delta[1]
        let at1 = {
            let c = SMap::constant(s1.clone(), d1.clone(), one).unwrap();
            let idm = SMap::identity(s1.clone());
            cyl.pair_map(&idm, &c).unwrap()
        };
        let collapse = SMap::constant(s1.clone(), pt.clone(), SimplexId { dim: 0, idx: 0 }).unwrap();
        let po = pushout(&at1, &collapse).unwrap();
        po.space().validate().unwrap();
        // Cone on S^1: the level-1 circle is crushed.
        assert!(po.inj1.then(&SMap::identity(po.space().clone())).is_ok());
    }

    #[test]
    fn pullback_along_identity() {
        let s1 = sphere(1);
        let d2 = standard(Standard::Simplex(2)).unwrap();
        let f = SMap::constant(d2.clone(), s1.clone(), SimplexId { dim: 0, idx: 0 }).unwrap();
        let idm = SMap::identity(s1.clone());
        let pb = pullback(&f, &idm).unwrap();
        assert_eq!(pb.space.counts(), d2.counts());
        assert!(pb.proj1.is_iso());
    }

    #[test]
    fn pullback_of_inclusions_is_intersection() {
        // Two edges of Delta[2] meet in one vertex.
        let d2 = standard(Standard::Simplex(2)).unwrap();
        let e01 = Subcomplex::new(&d2, |id| {
            matches!(d2.name(id), "0" | "1" | "01")
        })
        .unwrap();
        let e12 = Subcomplex::new(&d2, |id| {
            matches!(d2.name(id), "1" | "2" | "12")
        })
        .unwrap();
        let pb = pullback(&e01.incl, &e12.incl).unwrap();
        assert_eq!(pb.space.counts(), vec![1]);
    }

    #[test]
    fn smash_unit() {
        // S^0 ∧ Y ≅ Y.
        let s0 = sphere(0);
        let y = sphere(1); // pointed circle
        let sm = smash(&s0, &y).unwrap();
        assert_eq!(sm.space.counts(), y.counts());
        // Y ∧ point_+?? point with basepoint: smashing with the one-point
        // pointed space is a point.
        let pt_pointed = standard(Standard::Point).unwrap().pointed_at(SimplexId { dim: 0, idx: 0 }).unwrap();
        let sm2 = smash(&y, &pt_pointed).unwrap();
        assert_eq!(sm2.space.counts(), vec![1]);
    }

    #[test]
    fn smash_of_circles_counts() {
        // The torus has three nondegenerate edges; the two axis circles form
        // the wedge and collapse, the diagonal survives alongside both 2-cells.
        let s1 = sphere(1);
        let sm = smash(&s1, &s1).unwrap();
        assert_eq!(sm.space.counts(), vec![1, 1, 2]);
    }

    #[test]
    fn plus_basepoint_counts() {
        let s1 = sphere(1);
        let p = Plus::new(&s1).unwrap();
        assert_eq!(p.space.counts(), vec![2, 1]);
        let (eps, s0) = p.eps().unwrap();
        eps.validate().unwrap();
        assert_eq!(eps.codomain().as_ref(), s0.as_ref());
    }

    #[test]
    fn quotient_of_empty_subobject_rejected() {
        let d1 = standard(Standard::Simplex(1)).unwrap();
        let empty = standard(Standard::Boundary(0)).unwrap();
        let inc = SMap::from_fn(empty.clone(), d1.clone(), false, |_| unreachable!()).unwrap();
        assert!(Quotient::new(&d1, &inc).is_err());
    }

    #[test]
    fn coequalizer_folds() {
        // Coequalizing the two vertex inclusions point -> Delta[1] glues the
        // endpoints into a circle-shaped set.
        let d1 = standard(Standard::Simplex(1)).unwrap();
        let pt = standard(Standard::Point).unwrap();
        let v0 = SMap::constant(pt.clone(), d1.clone(), SimplexId { dim: 0, idx: 0 }).unwrap();
        let v1 = SMap::constant(pt.clone(), d1.clone(), SimplexId { dim: 0, idx: 1 }).unwrap();
        let c = coequalizer(&v0, &v1).unwrap();
        assert_eq!(c.glued.space.counts(), vec![1, 1]);
        // Mediating map to S^1 exists and is unique on tables.
        let s1 = sphere(1);
        let u = SMap::from_fn(d1.clone(), s1.clone(), false, |id| {
            Ok(if id.dim == 0 {
                SimplexRef::nondeg(SimplexId { dim: 0, idx: 0 })
            } else {
                SimplexRef::nondeg(SimplexId { dim: 1, idx: 0 })
            })
        })
        .unwrap();
        let med = induced_from_coequalizer(&c, &u).unwrap();
        assert!(med.is_iso());
    }

    #[test]
    fn fold_map_from_pushout() {
        // Fold: pushout of identity legs maps back by the identity.
        let s1 = sphere(1);
        let idm = SMap::identity(s1.clone());
        let po = pushout(&idm, &idm).unwrap();
        assert_eq!(po.space().counts(), s1.counts());
        let fold = induced_from_pushout(&po, &idm, &idm).unwrap();
        assert!(fold.is_iso());
    }

    #[test]
    fn non_commuting_cocone_rejected() {
        let d1 = standard(Standard::Simplex(1)).unwrap();
        let pt = standard(Standard::Point).unwrap();
        let v0 = SMap::constant(pt.clone(), d1.clone(), SimplexId { dim: 0, idx: 0 }).unwrap();
        let po = pushout(&v0, &SMap::identity(pt.clone())).unwrap();
        // Cocone legs that disagree on the glued vertex.
        let u = SMap::constant(d1.clone(), d1.clone(), SimplexId { dim: 0, idx: 1 }).unwrap();
        let v = SMap::constant(pt, d1, SimplexId { dim: 0, idx: 0 }).unwrap();
        assert!(induced_from_pushout(&po, &u, &v).is_err());
    }
}
