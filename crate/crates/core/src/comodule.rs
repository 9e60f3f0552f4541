//! Comodules over a base simplicial set, in canonical labeled form: a pointed
//! space together with an equal-dimension base simplex attached to every
//! non-basepoint nondegenerate simplex, compatibly with faces and
//! degeneracies. The coaction map is derived from the labels; the counit
//! axiom forces this shape, and coassociativity holds for free once it does.

use std::sync::Arc;

use crate::error::Error;
use crate::sset::{
    enumerate_maps, induced_from_pushout, pullback, pushout_pointed, smash, Plus, Product,
    PullbackSpace, Pushout, SMap, SimplexId, SimplexRef, Smash, Space, Word,
};

/// A comodule over `base`: pointed `total` plus the label function.
#[derive(Clone)]
pub struct Comodule {
    pub base: Arc<Space>,
    pub total: Arc<Space>,
    labels: Vec<Vec<Option<SimplexRef>>>, // None exactly at the basepoint
}

impl Comodule {
    /// Build from a label assignment on non-basepoint nondegenerate simplices.
    pub fn from_labels(
        base: Arc<Space>,
        total: Arc<Space>,
        mut label: impl FnMut(SimplexId) -> Option<SimplexRef>,
    ) -> Result<Comodule, Error> {
        let bp = total.basepoint().ok_or(Error::NotPointed)?;
        let mut labels = Vec::new();
        for dim in 0..=total.top_dim() {
            let mut row = Vec::with_capacity(total.rank(dim));
            for id in total.ids(dim) {
                if id == bp {
                    row.push(None);
                } else {
                    let l = label(id).ok_or_else(|| {
                        Error::BadLabels(format!("no label for simplex {}", total.name(id)))
                    })?;
                    row.push(Some(l));
                }
            }
            labels.push(row);
        }
        let c = Comodule { base, total, labels };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<(), Error> {
        let bp = self.total.basepoint().ok_or(Error::NotPointed)?;
        for dim in 0..=self.total.top_dim() {
            for id in self.total.ids(dim) {
                if id == bp {
                    continue;
                }
                let l = self.labels[dim][id.idx].as_ref().ok_or_else(|| {
                    Error::BadLabels(format!("missing label at {}", self.total.name(id)))
                })?;
                if l.dim() != dim || !self.base.contains(l.base) {
                    return Err(Error::BadLabels(format!(
                        "label of {} has wrong dimension",
                        self.total.name(id)
                    )));
                }
                // Face compatibility wherever the face misses the basepoint.
                for i in 0..=dim as u32 {
                    if dim == 0 {
                        break;
                    }
                    let fy = self.total.face(i, &SimplexRef::nondeg(id))?;
                    if fy.base == bp {
                        continue;
                    }
                    let expected = self.base.face(i, l)?;
                    let actual = self.label_of(&fy)?;
                    if actual != expected {
                        return Err(Error::BadLabels(format!(
                            "label of d_{i} {} disagrees with d_{i} of its label",
                            self.total.name(id)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The label of any non-basepoint reference, extended over degeneracies.
    pub fn label_of(&self, y: &SimplexRef) -> Result<SimplexRef, Error> {
        match &self.labels[y.base.dim][y.base.idx] {
            Some(l) => Ok(l.under_word(&y.word)),
            None => Err(Error::BadLabels("basepoint has no label".into())),
        }
    }

    pub fn label_at(&self, id: SimplexId) -> Option<&SimplexRef> {
        self.labels[id.dim][id.idx].as_ref()
    }

    pub fn is_basepoint(&self, id: SimplexId) -> bool {
        Some(id) == self.total.basepoint()
    }

    pub fn counts(&self) -> Vec<usize> {
        self.total.counts()
    }

    /// The coaction as an explicit pointed map into `total ∧ base_+`,
    /// together with the smash witness.
    pub fn induce_rho(&self) -> Result<(SMap, Smash, Plus), Error> {
        let plus = Plus::new(&self.base)?;
        let sm = smash(&self.total, &plus.space)?;
        let bp_ref = |n: usize| sm.space.basepoint_ref(n).expect("smash is pointed");
        let rho = SMap::from_fn(self.total.clone(), sm.space.clone(), true, |id| {
            if self.is_basepoint(id) {
                Ok(bp_ref(id.dim))
            } else {
                let l = self.labels[id.dim][id.idx].clone().expect("labeled");
                sm.smash_ref(&SimplexRef::nondeg(id), &l)
            }
        })?;
        Ok((rho, sm, plus))
    }

    /// Check two comodules are equal on the nose: same tables, same labels.
    pub fn same_tables(&self, other: &Comodule) -> bool {
        self.base.as_ref() == other.base.as_ref()
            && self.total.as_ref() == other.total.as_ref()
            && self.labels == other.labels
    }
}

/// Recover a comodule from an explicit coaction map `rho: Y -> Y ∧ X_+`.
/// The counit axiom forces `rho(y) = (y, label)`; any violation is reported.
/// Coassociativity then holds identically, and is re-verified through label
/// validation.
pub fn from_rho(base: &Arc<Space>, rho: &SMap, sm: &Smash) -> Result<Comodule, Error> {
    let total = rho.domain().clone();
    let bp = total.basepoint().ok_or(Error::NotPointed)?;
    if rho.codomain().as_ref() != sm.space.as_ref() {
        return Err(Error::SpaceMismatch { context: "coaction target" });
    }
    let mut labels: Vec<Vec<Option<SimplexRef>>> = Vec::new();
    for dim in 0..=total.top_dim() {
        let mut row = Vec::with_capacity(total.rank(dim));
        for id in total.ids(dim) {
            if id == bp {
                row.push(None);
                continue;
            }
            let img = rho.image_of(id);
            if !img.word.is_empty() || sm.space.is_basepoint_ref(img) {
                return Err(Error::CounitViolation { simplex: total.name(id).to_string() });
            }
            let (y_part, x_part) = sm
                .components(img.base)
                .ok_or(Error::CounitViolation { simplex: total.name(id).to_string() })?;
            if y_part != SimplexRef::nondeg(id) {
                return Err(Error::CounitViolation { simplex: total.name(id).to_string() });
            }
            row.push(Some(x_part));
        }
        labels.push(row);
    }
    let c = Comodule { base: base.clone(), total, labels };
    c.validate()?;
    Ok(c)
}

/// A morphism of comodules: a pointed map preserving labels.
#[derive(Clone)]
pub struct ComodMap {
    pub source: Comodule,
    pub target: Comodule,
    pub map: SMap,
}

impl ComodMap {
    pub fn new(source: Comodule, target: Comodule, map: SMap) -> Result<Self, Error> {
        let m = ComodMap { source, target, map };
        m.validate()?;
        Ok(m)
    }

    pub fn identity(c: &Comodule) -> Result<Self, Error> {
        ComodMap::new(c.clone(), c.clone(), SMap::identity_pointed(c.total.clone())?)
    }

    pub fn validate(&self) -> Result<(), Error> {
        if self.source.base.as_ref() != self.target.base.as_ref() {
            return Err(Error::SpaceMismatch { context: "comodule map bases" });
        }
        if self.map.domain().as_ref() != self.source.total.as_ref()
            || self.map.codomain().as_ref() != self.target.total.as_ref()
        {
            return Err(Error::SpaceMismatch { context: "comodule map underlying spaces" });
        }
        let tbp = self.target.total.basepoint().ok_or(Error::NotPointed)?;
        let sbp = self.source.total.basepoint().ok_or(Error::NotPointed)?;
        if self.map.image_of(sbp) != &SimplexRef::nondeg(tbp) {
            return Err(Error::MapNotPointed);
        }
        for dim in 0..=self.source.total.top_dim() {
            for id in self.source.total.ids(dim) {
                if id == sbp {
                    continue;
                }
                let img = self.map.image_of(id);
                if img.base == tbp {
                    continue;
                }
                let want = self.source.label_at(id).expect("labeled");
                let got = self.target.label_of(img)?;
                if got != *want {
                    return Err(Error::BadLabels(format!(
                        "map does not preserve the label of {}",
                        self.source.total.name(id)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn then(&self, other: &ComodMap) -> Result<ComodMap, Error> {
        ComodMap::new(self.source.clone(), other.target.clone(), self.map.then(&other.map)?)
    }

    pub fn is_iso(&self) -> bool {
        self.map.is_iso()
    }
}

/// The cofree comodule on a pointed space: `Y ∧ X_+` labeled by the base
/// coordinate.
pub struct Cofree {
    pub comodule: Comodule,
    pub smash: Smash,
    pub plus: Plus,
}

pub fn cofree(y: &Arc<Space>, base: &Arc<Space>) -> Result<Cofree, Error> {
    let plus = Plus::new(base)?;
    let sm = smash(y, &plus.space)?;
    let comodule = Comodule::from_labels(base.clone(), sm.space.clone(), |id| {
        let (_, x_part) = sm.components(id)?;
        // Non-basepoint smash simplices have base-side second coordinate.
        Some(x_part)
    })?;
    Ok(Cofree { comodule, smash: sm, plus })
}

/// Forgetful functor to pointed spaces.
pub fn forget(c: &Comodule) -> Arc<Space> {
    c.total.clone()
}

/// Tensor with a pointed space: `Y ∧ K` with labels inherited from `Y`.
pub struct Tensor {
    pub comodule: Comodule,
    pub smash: Smash,
}

pub fn tensor_sset(c: &Comodule, k: &Arc<Space>) -> Result<Tensor, Error> {
    let sm = smash(&c.total, k)?;
    let comodule = Comodule::from_labels(c.base.clone(), sm.space.clone(), |id| {
        let (y_part, _) = sm.components(id)?;
        c.label_of(&y_part).ok()
    })?;
    Ok(Tensor { comodule, smash: sm })
}

/// Functorial action of `- ⊗ K` on a comodule map.
pub fn tensor_map(f: &ComodMap, k: &Arc<Space>, src: &Tensor, dst: &Tensor) -> Result<ComodMap, Error> {
    let idk = SMap::identity_pointed(k.clone())?;
    let raw = dst.smash.map_from(&src.smash, &f.map, &idk)?;
    ComodMap::new(src.comodule.clone(), dst.comodule.clone(), raw)
}

/// Pushforward along `a: X' -> X`: same space, labels pushed through `a`.
pub fn pushforward_comod(a: &SMap, c: &Comodule) -> Result<Comodule, Error> {
    if a.domain().as_ref() != c.base.as_ref() {
        return Err(Error::SpaceMismatch { context: "comodule pushforward base map" });
    }
    Comodule::from_labels(a.codomain().clone(), c.total.clone(), |id| {
        c.label_at(id).map(|l| a.eval(l))
    })
}

/// Pointed map `X'_+ -> X_+` induced by `a: X' -> X`.
pub fn plus_map(a: &SMap, src: &Plus, dst: &Plus) -> Result<SMap, Error> {
    if src.incl.domain().as_ref() != a.domain().as_ref()
        || dst.incl.domain().as_ref() != a.codomain().as_ref()
    {
        return Err(Error::SpaceMismatch { context: "plus_map" });
    }
    let src_bp = src.space.basepoint().expect("plus pointed");
    let dst_bp = dst.space.basepoint().expect("plus pointed");
    SMap::from_fn(src.space.clone(), dst.space.clone(), true, |id| {
        Ok(if id == src_bp {
            SimplexRef::nondeg(dst_bp)
        } else {
            // X simplices keep their ids inside X_+.
            a.eval(&SimplexRef::nondeg(id))
        })
    })
}

/// Pullback along `a: X' -> X`: the fiber of the coaction against
/// `Y ∧ a_+`, carrying the restricted cofree coaction.
pub struct ComodPullback {
    pub comodule: Comodule,
    /// Projection `a*Y -> Y` (pointed-domain copy of the fiber projection).
    pub to_total: SMap,
    /// `a*Y -> Y ∧ X'_+`.
    pub to_smash: SMap,
    fiber: PullbackSpace,
}

pub fn pullback_comod(a: &SMap, c: &Comodule) -> Result<ComodPullback, Error> {
    if a.codomain().as_ref() != c.base.as_ref() {
        return Err(Error::SpaceMismatch { context: "comodule pullback base map" });
    }
    let (rho, sm, plus_dst) = c.induce_rho()?;
    let plus_src = Plus::new(a.domain())?;
    let sm_src = smash(&c.total, &plus_src.space)?;
    let a_plus = plus_map(a, &plus_src, &plus_dst)?;
    let idy = SMap::identity_pointed(c.total.clone())?;
    let smash_a = sm.map_from(&sm_src, &idy, &a_plus)?;
    let fiber = pullback(&rho, &smash_a)?;
    // The fiber is born unpointed; point it at (bp, bp).
    let bp_pair = fiber
        .pair_ref(
            &SimplexRef::nondeg(c.total.basepoint().expect("pointed")),
            &SimplexRef::nondeg(sm_src.space.basepoint().expect("pointed")),
        )
        .map_err(|_| Error::Validation("fiber product misses the basepoint pair".into()))?;
    debug_assert!(bp_pair.word.is_empty());
    let pointed_space = fiber.space.pointed_at(bp_pair.base)?;
    let to_total = fiber.proj1.repoint_domain(pointed_space.clone())?;
    let to_smash = fiber.proj2.repoint_domain(pointed_space.clone())?;
    let comodule = Comodule::from_labels(a.domain().clone(), pointed_space, |id| {
        let (_, s) = fiber.components(id);
        // s refers into Y ∧ X'_+; base-side labels live in X'.
        let (_, x_part) = sm_src.components(s.base)?;
        Some(x_part.under_word(&s.word))
    })?;
    Ok(ComodPullback { comodule, to_total, to_smash, fiber })
}

impl ComodPullback {
    /// Mediating pointed map into the fiber from a commuting cone, landing in
    /// the comodule's pointed total space.
    pub fn induced(&self, q1: &SMap, q2: &SMap) -> Result<SMap, Error> {
        let raw = self.fiber.induced(q1, q2)?;
        raw.repoint_codomain(self.comodule.total.clone())
    }
}

/// Functorial action of `a^*` on comodule maps.
pub fn pullback_comod_map(
    f: &ComodMap,
    src: &ComodPullback,
    dst: &ComodPullback,
) -> Result<ComodMap, Error> {
    // First leg: a*Y -> Y -> Y'.
    let leg1 = src.to_total.then(&f.map)?;
    // Second leg: a*Y -> Y ∧ X'_+ -> Y' ∧ X'_+, via f ∧ id.
    let plus_src = Plus::new(&src.comodule.base)?;
    let sm_y = smash(&f.source.total, &plus_src.space)?;
    let sm_y2 = smash(&f.target.total, &plus_src.space)?;
    let id_plus = SMap::identity_pointed(plus_src.space.clone())?;
    let f_smash = sm_y2.map_from(&sm_y, &f.map, &id_plus)?;
    let leg2 = src.to_smash.then(&f_smash)?;
    let raw = dst.induced(&leg1, &leg2)?;
    ComodMap::new(src.comodule.clone(), dst.comodule.clone(), raw)
}

/// Discrete simplicial monoid data: a finite monoid acting as labels.
pub struct Monoid {
    pub space: Arc<Space>, // discrete simplicial set on the elements
    pub product: Product,  // space x space
    pub mul: SMap,
    pub unit: SimplexId,
}

impl Monoid {
    /// Build from a multiplication table (`table[i][j] = i * j`).
    pub fn discrete(names: &[&str], table: &[Vec<usize>], unit: usize) -> Result<Monoid, Error> {
        let n = names.len();
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::BadMonoid("table shape".into()));
        }
        let mut b = crate::sset::SpaceBuilder::new();
        for name in names {
            b.vertex(*name);
        }
        let space = b.build()?;
        let product = Product::new(&space, &space)?;
        let mul = SMap::from_fn(product.space.clone(), space.clone(), false, |id| {
            let (a, c) = product.components(id);
            let (av, cv) = (a.base.idx, c.base.idx);
            Ok(SimplexRef {
                base: SimplexId { dim: 0, idx: table[av][cv] },
                word: Word::vertex_to_dim(id.dim),
            })
        })?;
        let m = Monoid { space, product, mul, unit: SimplexId { dim: 0, idx: unit } };
        m.validate_table(table)?;
        Ok(m)
    }

    fn validate_table(&self, table: &[Vec<usize>]) -> Result<(), Error> {
        let n = table.len();
        let u = self.unit.idx;
        for (i, row) in table.iter().enumerate() {
            if row[u] != i || table[u][i] != i {
                return Err(Error::BadMonoid(format!("unit fails at element {i}")));
            }
            for j in 0..n {
                for k in 0..n {
                    if table[table[i][j]][k] != table[i][table[j][k]] {
                        return Err(Error::BadMonoid(format!(
                            "associativity fails at ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.space.rank(0);
        (0..n).all(|i| {
            (0..n).all(|j| {
                let a = self.apply(i, j);
                let b = self.apply(j, i);
                a == b
            })
        })
    }

    fn apply(&self, i: usize, j: usize) -> usize {
        let pair = self
            .product
            .pair_ref(
                &SimplexRef::nondeg(SimplexId { dim: 0, idx: i }),
                &SimplexRef::nondeg(SimplexId { dim: 0, idx: j }),
            )
            .expect("vertices pair");
        self.mul.eval(&pair).base.idx
    }

    /// Multiply two equal-dimension label references.
    pub fn mul_refs(&self, a: &SimplexRef, b: &SimplexRef) -> Result<SimplexRef, Error> {
        let pair = self.product.pair_ref(a, b)?;
        Ok(self.mul.eval(&pair))
    }

    /// The monoidal unit comodule `(S^0, rho_u)`.
    pub fn unit_comodule(&self) -> Result<Comodule, Error> {
        let s0 = crate::sset::standard(crate::sset::Standard::Sphere(0))?;
        let unit = self.unit;
        Comodule::from_labels(self.space.clone(), s0, move |_| Some(SimplexRef::nondeg(unit)))
    }
}

/// Monoidal product of comodules over a simplicial monoid: `Y ∧ Y'` labeled by
/// the product of labels.
pub struct MonoidalProduct {
    pub comodule: Comodule,
    pub smash: Smash,
}

pub fn monoidal_product(c: &Comodule, c2: &Comodule, m: &Monoid) -> Result<MonoidalProduct, Error> {
    if c.base.as_ref() != m.space.as_ref() || c2.base.as_ref() != m.space.as_ref() {
        return Err(Error::BadMonoid("comodules not over the monoid".into()));
    }
    let sm = smash(&c.total, &c2.total)?;
    let comodule = Comodule::from_labels(m.space.clone(), sm.space.clone(), |id| {
        let (y, y2) = sm.components(id)?;
        let l = c.label_of(&y).ok()?;
        let l2 = c2.label_of(&y2).ok()?;
        m.mul_refs(&l, &l2).ok()
    })?;
    Ok(MonoidalProduct { comodule, smash: sm })
}

/// External product: `Y ∧ Y'` over `X x X'`, labeled by the pair of labels.
pub struct ExternalProduct {
    pub comodule: Comodule,
    pub smash: Smash,
    pub base_product: Product,
}

pub fn external_product(c: &Comodule, c2: &Comodule) -> Result<ExternalProduct, Error> {
    let base_product = Product::new(&c.base, &c2.base)?;
    let sm = smash(&c.total, &c2.total)?;
    let comodule = Comodule::from_labels(base_product.space.clone(), sm.space.clone(), |id| {
        let (y, y2) = sm.components(id)?;
        let l = c.label_of(&y).ok()?;
        let l2 = c2.label_of(&y2).ok()?;
        base_product.pair_ref(&l, &l2).ok()
    })?;
    Ok(ExternalProduct { comodule, smash: sm, base_product })
}

/// Pushout of a span of comodules: computed on underlying pointed spaces,
/// with labels induced from any representative (comodule maps preserve
/// labels, so representatives agree; validation re-checks).
pub struct ComodulePushout {
    pub comodule: Comodule,
    pub inj1: ComodMap,
    pub inj2: ComodMap,
    pub pushout: Pushout,
}

pub fn comodule_pushout(f: &ComodMap, g: &ComodMap) -> Result<ComodulePushout, Error> {
    if !f.source.same_tables(&g.source) {
        return Err(Error::SpaceMismatch { context: "comodule pushout span" });
    }
    let bp1 = f.target.total.basepoint().ok_or(Error::NotPointed)?;
    let po = pushout_pointed(&f.map, &g.map, Some((0, bp1)))?;
    let space = po.space().clone();
    let bp = space.basepoint().expect("pointed pushout");
    // Label of a nondegenerate class: through any nondegenerate member.
    let mut labels: Vec<Vec<Option<SimplexRef>>> =
        (0..=space.top_dim()).map(|d| vec![None; space.rank(d)]).collect();
    for (side, c) in [(0usize, &f.target), (1usize, &g.target)] {
        for dim in 0..=c.total.top_dim() {
            for id in c.total.ids(dim) {
                let Some(l) = c.label_at(id) else { continue };
                let class = po.glued.class_ref(side, &SimplexRef::nondeg(id));
                if class.word.is_empty() && class.base != bp {
                    match &labels[class.base.dim][class.base.idx] {
                        None => labels[class.base.dim][class.base.idx] = Some(l.clone()),
                        Some(prev) => {
                            if prev != l {
                                return Err(Error::BadLabels(
                                    "pushout identifies simplices with different labels".into(),
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    let comodule = Comodule::from_labels(f.target.base.clone(), space, |id| {
        labels[id.dim][id.idx].clone()
    })?;
    let inj1 = ComodMap::new(f.target.clone(), comodule.clone(), po.inj1.clone().into_pointed()?)?;
    let inj2 = ComodMap::new(g.target.clone(), comodule.clone(), po.inj2.clone().into_pointed()?)?;
    Ok(ComodulePushout { comodule, inj1, inj2, pushout: po })
}

/// Mediating map out of a comodule pushout, on underlying spaces.
pub fn pushout_mediating(po: &ComodulePushout, u: &SMap, v: &SMap) -> Result<SMap, Error> {
    induced_from_pushout(&po.pushout, u, v)
}

/// All comodule maps between two comodules, by filtered enumeration of the
/// pointed maps of underlying spaces.
pub fn enumerate_comod_maps(
    a: &Comodule,
    b: &Comodule,
    budget: usize,
) -> Result<Vec<ComodMap>, Error> {
    let raw = enumerate_maps(&a.total, &b.total, true, budget)?;
    Ok(raw
        .into_iter()
        .filter_map(|map| ComodMap::new(a.clone(), b.clone(), map).ok())
        .collect())
}
