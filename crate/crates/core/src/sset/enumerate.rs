//! Exhaustive enumeration of simplicial maps between small spaces, used as an
//! independent oracle for adjunction bijections and universal properties.
//! Exponential; guarded by an explicit budget.

use std::sync::Arc;

use crate::error::Error;
use crate::sset::map::SMap;
use crate::sset::space::{SimplexId, SimplexRef, Space};

/// All simplicial maps `domain -> codomain` (pointed when requested).
/// Fails with `BudgetExceeded` once more than `budget` candidate assignments
/// have been explored.
pub fn enumerate_maps(
    domain: &Arc<Space>,
    codomain: &Arc<Space>,
    pointed: bool,
    budget: usize,
) -> Result<Vec<SMap>, Error> {
    enumerate_maps_where(domain, codomain, pointed, budget, &|_, _| true)
}

/// Enumeration with an extra per-simplex admissibility constraint, applied
/// before face pruning. Used to search for mediating maps without exploring
/// the full hom set.
pub fn enumerate_maps_where(
    domain: &Arc<Space>,
    codomain: &Arc<Space>,
    pointed: bool,
    budget: usize,
    allow: &dyn Fn(SimplexId, &SimplexRef) -> bool,
) -> Result<Vec<SMap>, Error> {
    if pointed && (domain.basepoint().is_none() || codomain.basepoint().is_none()) {
        return Err(Error::NotPointed);
    }
    let slots: Vec<SimplexId> = (0..=domain.top_dim()).flat_map(|d| domain.ids(d)).collect();
    let mut images: Vec<Vec<Option<SimplexRef>>> =
        (0..=domain.top_dim()).map(|d| vec![None; domain.rank(d)]).collect();
    let mut out = Vec::new();
    let mut steps = 0usize;
    search(
        domain,
        codomain,
        pointed,
        &slots,
        0,
        &mut images,
        &mut out,
        &mut steps,
        budget,
        allow,
    )?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn search(
    domain: &Arc<Space>,
    codomain: &Arc<Space>,
    pointed: bool,
    slots: &[SimplexId],
    at: usize,
    images: &mut Vec<Vec<Option<SimplexRef>>>,
    out: &mut Vec<SMap>,
    steps: &mut usize,
    budget: usize,
    allow: &dyn Fn(SimplexId, &SimplexRef) -> bool,
) -> Result<(), Error> {
    if at == slots.len() {
        let table: Vec<Vec<SimplexRef>> = images
            .iter()
            .map(|row| row.iter().map(|r| r.clone().expect("assigned")).collect())
            .collect();
        // Construction re-validates; by pruning it always succeeds.
        out.push(SMap::new(domain.clone(), codomain.clone(), table, pointed)?);
        return Ok(());
    }
    let id = slots[at];
    let candidates: Vec<SimplexRef> = if pointed && Some(id) == domain.basepoint() {
        vec![SimplexRef::nondeg(codomain.basepoint().expect("pointed"))]
    } else {
        codomain.all_refs(id.dim)
    };
    'next: for cand in candidates {
        *steps += 1;
        if *steps > budget {
            return Err(Error::BudgetExceeded { budget });
        }
        if !allow(id, &cand) {
            continue;
        }
        // Faces of id are already assigned (lower dimension first).
        if id.dim > 0 {
            for i in 0..=id.dim as u32 {
                let df = domain.face(i, &SimplexRef::nondeg(id))?;
                let assigned = images[df.base.dim][df.base.idx]
                    .as_ref()
                    .expect("faces assigned before cofaces")
                    .under_word(&df.word);
                if codomain.face(i, &cand)? != assigned {
                    continue 'next;
                }
            }
        }
        images[id.dim][id.idx] = Some(cand);
        search(domain, codomain, pointed, slots, at + 1, images, out, steps, budget, allow)?;
        images[id.dim][id.idx] = None;
    }
    Ok(())
}
