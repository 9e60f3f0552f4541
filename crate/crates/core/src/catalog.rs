//! Deterministic generation of small test objects: simplicial sets,
//! retractive spaces, and comodules over a handful of bases. Everything is
//! validated on construction, and generation under a fixed seed is
//! reproducible bit for bit.

use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::comodule::{cofree, tensor_sset, Cofree, ComodMap, Comodule, Monoid};
use crate::error::Error;
use crate::retractive::{relative_suspension, ret_functor, RetractiveSpace};
use crate::sset::{
    projective_plane, standard, wedge, Plus, Product, SMap, SimplexId, SimplexRef, Space,
    SpaceBuilder, Standard, Word,
};

pub struct Catalog {
    pub bases: Vec<(String, Arc<Space>)>,
    pub pointed: Vec<(String, Arc<Space>)>,
    pub retractives: Vec<(String, RetractiveSpace)>,
    pub comodules: Vec<(String, Comodule)>,
    pub monoids: Vec<(String, Monoid)>,
}

/// The comodule with trivial underlying space.
pub fn zero_comodule(base: &Arc<Space>) -> Result<Comodule, Error> {
    let pt = standard(Standard::Point)?.pointed_at(SimplexId { dim: 0, idx: 0 })?;
    Comodule::from_labels(base.clone(), pt, |_| None)
}

/// The comodule map collapsing everything to the basepoint.
pub fn collapse_to_zero(c: &Comodule) -> Result<ComodMap, Error> {
    let zero = zero_comodule(&c.base)?;
    let bp = zero.total.basepoint().expect("pointed");
    let map = SMap::from_fn(c.total.clone(), zero.total.clone(), true, |id| {
        Ok(SimplexRef { base: bp, word: Word::vertex_to_dim(id.dim) })
    })?;
    ComodMap::new(c.clone(), zero, map)
}

/// Transpose a pointed map `U(c) -> W` into a comodule map `c -> F(W)`.
pub fn into_cofree(c: &Comodule, u: &SMap, target: &Cofree) -> Result<ComodMap, Error> {
    let bp = target.comodule.total.basepoint().expect("pointed");
    let map = SMap::from_fn(c.total.clone(), target.comodule.total.clone(), true, |id| {
        match c.label_at(id) {
            None => Ok(SimplexRef { base: bp, word: Word::vertex_to_dim(id.dim) }),
            Some(l) => target.smash.smash_ref(&u.eval(&SimplexRef::nondeg(id)), l),
        }
    })?;
    ComodMap::new(c.clone(), target.comodule.clone(), map)
}

/// A retractive space obtained by hanging one whisker cell off the base:
/// a fresh vertex and an edge into the section, with the retraction chosen
/// among the compatible options.
fn random_attachment(x: &Arc<Space>, rng: &mut ChaCha8Rng) -> Result<RetractiveSpace, Error> {
    let mut b = SpaceBuilder::new();
    for dim in 0..=x.top_dim() {
        for id in x.ids(dim) {
            let rec = x.record(id);
            b.add(dim, rec.name.clone(), rec.faces.clone());
        }
    }
    let v0 = SimplexId { dim: 0, idx: rng.gen_range(0..x.rank(0)) };
    let w = b.vertex("whisker");
    b.add(
        1,
        "whisker-edge",
        vec![SimplexRef::nondeg(w), SimplexRef::nondeg(v0)],
    );
    let total = b.build()?;
    let new_edge = SimplexId { dim: 1, idx: x.rank(1) };
    let incl = SMap::from_fn(x.clone(), total.clone(), false, |id| Ok(SimplexRef::nondeg(id)))?;
    // Retraction: send the whisker along an outgoing edge of v0, or collapse
    // it onto v0.
    let out_edges: Vec<SimplexId> = x
        .ids(1)
        .filter(|e| x.record(*e).faces[1].base == v0 && x.record(*e).faces[1].word.is_empty())
        .collect();
    let (rw, redge) = if !out_edges.is_empty() && rng.gen_bool(0.5) {
        let e = out_edges[rng.gen_range(0..out_edges.len())];
        (x.record(e).faces[0].clone(), SimplexRef::nondeg(e))
    } else {
        (SimplexRef::nondeg(v0), SimplexRef::nondeg(v0).degenerate(0))
    };
    let retr = SMap::from_fn(total.clone(), x.clone(), false, |id| {
        if id == w {
            Ok(rw.clone())
        } else if id == new_edge {
            Ok(redge.clone())
        } else {
            Ok(SimplexRef::nondeg(id))
        }
    })?;
    RetractiveSpace::new(x.clone(), total, incl, retr)
}

/// Random compatible labels, chosen for the top cells first and propagated to
/// faces; incompatible draws are rejected. Falls back to the constant
/// labeling through the first vertex, which is always compatible.
fn random_comodule(
    base: &Arc<Space>,
    total: &Arc<Space>,
    rng: &mut ChaCha8Rng,
) -> Result<Comodule, Error> {
    let bp = total.basepoint().ok_or(Error::NotPointed)?;
    'attempt: for _ in 0..8 {
        let mut labels: Vec<Vec<Option<SimplexRef>>> =
            (0..=total.top_dim()).map(|d| vec![None; total.rank(d)]).collect();
        for dim in (0..=total.top_dim()).rev() {
            for id in total.ids(dim) {
                if id == bp || labels[dim][id.idx].is_some() {
                    continue;
                }
                let candidates = base.all_refs(dim);
                let mut placed = false;
                'draw: for _ in 0..12 {
                    let cand = candidates[rng.gen_range(0..candidates.len())].clone();
                    // Propagate through nondegenerate faces; reject conflicts.
                    let mut stack = vec![(id, cand.clone())];
                    let mut writes: Vec<(SimplexId, SimplexRef)> = Vec::new();
                    let mut tentative: std::collections::HashMap<SimplexId, SimplexRef> =
                        Default::default();
                    while let Some((yid, l)) = stack.pop() {
                        let existing =
                            labels[yid.dim][yid.idx].clone().or_else(|| tentative.get(&yid).cloned());
                        match existing {
                            Some(prev) => {
                                if prev != l {
                                    continue 'draw;
                                }
                                continue;
                            }
                            None => {
                                tentative.insert(yid, l.clone());
                                writes.push((yid, l.clone()));
                            }
                        }
                        if yid.dim == 0 {
                            continue;
                        }
                        for i in 0..=yid.dim as u32 {
                            let fy = total.face(i, &SimplexRef::nondeg(yid))?;
                            if fy.base == bp || !fy.word.is_empty() {
                                continue;
                            }
                            let fl = base.face(i, &l)?;
                            stack.push((fy.base, fl));
                        }
                    }
                    for (yid, l) in writes {
                        labels[yid.dim][yid.idx] = Some(l);
                    }
                    placed = true;
                    break 'draw;
                }
                if !placed {
                    continue 'attempt;
                }
            }
        }
        let built = Comodule::from_labels(base.clone(), total.clone(), |id| {
            labels[id.dim][id.idx].clone()
        });
        if let Ok(c) = built {
            return Ok(c);
        }
    }
    // Constant coaction through the first base vertex.
    Comodule::from_labels(base.clone(), total.clone(), |id| {
        Some(SimplexRef { base: SimplexId { dim: 0, idx: 0 }, word: Word::vertex_to_dim(id.dim) })
    })
}

/// The identity-labeled comodule `X_+` over `X`.
pub fn base_plus(base: &Arc<Space>) -> Result<Comodule, Error> {
    let plus = Plus::new(base)?;
    Comodule::from_labels(base.clone(), plus.space.clone(), |id| Some(SimplexRef::nondeg(id)))
}

/// A comodule with the constant coaction through the first vertex of the
/// base; valid for every pointed total space.
pub fn constant_comodule(base: &Arc<Space>, total: &Arc<Space>) -> Result<Comodule, Error> {
    Comodule::from_labels(base.clone(), total.clone(), |id| {
        Some(SimplexRef { base: SimplexId { dim: 0, idx: 0 }, word: Word::vertex_to_dim(id.dim) })
    })
}

/// The cylinder object `(X x Delta[1], i_0, proj_1)`.
pub fn cylinder(base: &Arc<Space>) -> Result<RetractiveSpace, Error> {
    let d1 = standard(Standard::Simplex(1))?;
    let p = Product::new(base, &d1)?;
    let c0 = SMap::constant(base.clone(), d1, SimplexId { dim: 0, idx: 0 })?;
    let incl = p.pair_map(&SMap::identity(base.clone()), &c0)?;
    RetractiveSpace::new(base.clone(), p.space.clone(), incl, p.proj1.clone())
}

pub fn generate(seed: u64, budget: usize) -> Result<Catalog, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s1 = standard(Standard::Sphere(1))?.unpointed();
    let s2 = standard(Standard::Sphere(2))?.unpointed();
    let figure8 = wedge(
        &standard(Standard::Sphere(1))?,
        &standard(Standard::Sphere(1))?,
    )?
    .space()
    .unpointed();
    let bases: Vec<(String, Arc<Space>)> = vec![
        ("point".into(), standard(Standard::Point)?),
        ("delta2".into(), standard(Standard::Simplex(2))?),
        ("circle".into(), s1.clone()),
        ("sphere2".into(), s2.clone()),
        ("figure8".into(), figure8.clone()),
        ("rp2".into(), projective_plane()?),
    ];
    let d1_pointed = standard(Standard::Simplex(1))?.pointed_at(SimplexId { dim: 0, idx: 0 })?;
    let pointed: Vec<(String, Arc<Space>)> = vec![
        ("s0".into(), standard(Standard::Sphere(0))?),
        ("s1".into(), standard(Standard::Sphere(1))?),
        ("s2".into(), standard(Standard::Sphere(2))?),
        ("interval0".into(), d1_pointed),
        ("circle_plus".into(), Plus::new(&s1)?.space),
    ];

    let mut retractives: Vec<(String, RetractiveSpace)> = Vec::new();
    let mut comodules: Vec<(String, Comodule)> = Vec::new();
    let per_base = (budget / bases.len()).max(3);
    for (bname, base) in &bases {
        retractives.push((format!("{bname}/zero"), RetractiveSpace::zero(base.clone())));
        retractives.push((format!("{bname}/cylinder"), cylinder(base)?));
        for (yname, y) in pointed.iter().take(4) {
            let (obj, _) = ret_functor(y, base)?;
            retractives.push((format!("{bname}/ret-{yname}"), obj));
        }
        // A suspension and a couple of whisker attachments.
        let (r0, _) = ret_functor(&pointed[0].1, base)?;
        retractives.push((format!("{bname}/suspension"), relative_suspension(&r0)?));
        for k in 0..per_base.min(3) {
            retractives
                .push((format!("{bname}/whisker{k}"), random_attachment(base, &mut rng)?));
        }

        comodules.push((format!("{bname}/base-plus"), base_plus(base)?));
        comodules.push((format!("{bname}/zero"), zero_comodule(base)?));
        for (yname, y) in pointed.iter().take(3) {
            comodules.push((format!("{bname}/cofree-{yname}"), cofree(y, base)?.comodule));
        }
        // Tensor one of them with the pointed interval.
        let t = tensor_sset(&comodules.last().expect("nonempty").1, &pointed[3].1)?;
        comodules.push((format!("{bname}/tensor-interval"), t.comodule));
        // Slashes of a couple of retractive objects.
        let sl = crate::adjunction::slash(&cylinder(base)?)?;
        comodules.push((format!("{bname}/slash-cylinder"), sl.comodule));
        for k in 0..per_base.min(3) {
            let total = match k % 3 {
                0 => Plus::new(&s1)?.space,
                1 => standard(Standard::Sphere(1))?,
                _ => Plus::new(&standard(Standard::Simplex(1))?)?.space,
            };
            comodules.push((
                format!("{bname}/random{k}"),
                random_comodule(base, &total, &mut rng)?,
            ));
        }
    }

    let monoids = vec![
        ("trivial".into(), Monoid::discrete(&["e"], &[vec![0]], 0)?),
        ("z2".into(), Monoid::discrete(&["e", "g"], &[vec![0, 1], vec![1, 0]], 0)?),
        (
            "z3".into(),
            Monoid::discrete(
                &["e", "a", "b"],
                &[vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]],
                0,
            )?,
        ),
    ];
    Ok(Catalog { bases, pointed, retractives, comodules, monoids })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_sizes_and_validity() {
        let c = generate(7, 60).unwrap();
        assert!(c.bases.len() >= 4);
        assert!(c.retractives.len() >= 50, "got {}", c.retractives.len());
        assert!(c.comodules.len() >= 50, "got {}", c.comodules.len());
        for (name, r) in &c.retractives {
            r.validate().unwrap_or_else(|e| panic!("{name}: {e}"));
        }
        for (name, cm) in &c.comodules {
            cm.validate().unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }

    #[test]
    fn catalog_deterministic() {
        let a = generate(42, 40).unwrap();
        let b = generate(42, 40).unwrap();
        assert_eq!(a.retractives.len(), b.retractives.len());
        for ((na, ra), (nb, rb)) in a.retractives.iter().zip(&b.retractives) {
            assert_eq!(na, nb);
            assert_eq!(ra.total.as_ref(), rb.total.as_ref());
            assert!(ra.retr.same_images(&rb.retr));
        }
        for ((na, ca), (nb, cb)) in a.comodules.iter().zip(&b.comodules) {
            assert_eq!(na, nb);
            assert!(ca.same_tables(cb), "{na} differs between runs");
        }
    }

    #[test]
    fn different_seeds_differ_somewhere() {
        let a = generate(1, 40).unwrap();
        let b = generate(2, 40).unwrap();
        let same = a
            .comodules
            .iter()
            .zip(&b.comodules)
            .all(|((_, ca), (_, cb))| ca.same_tables(cb));
        assert!(!same, "seeds should influence the random objects");
    }
}
