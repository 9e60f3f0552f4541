//! The document format: line-oriented JSON for simplicial sets, maps,
//! retractive spaces, comodules, and discrete monoids. Faces and images are
//! written as `[degeneracy-word, base-id]` pairs; serialization is canonical
//! (sorted keys, fixed field order) so round-trips are byte-exact.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::comodule::{Comodule, Monoid};
use crate::error::Error;
use crate::retractive::RetractiveSpace;
use crate::sset::{SMap, SimplexId, SimplexRef, Space, SpaceBuilder, Word};

/// `[word, base-id]`.
pub type RefDoc = (Vec<u32>, String);

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SimplexDoc {
    pub id: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub faces: Vec<RefDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SsetDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basepoint: Option<String>,
    pub dims: Vec<Vec<SimplexDoc>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MapDoc {
    pub domain: SsetDoc,
    pub codomain: SsetDoc,
    #[serde(default)]
    pub pointed: bool,
    pub images: BTreeMap<String, RefDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RetractiveDoc {
    pub base: SsetDoc,
    pub total: SsetDoc,
    pub incl: BTreeMap<String, RefDoc>,
    pub retr: BTreeMap<String, RefDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComoduleDoc {
    pub base: SsetDoc,
    pub total: SsetDoc,
    pub labels: BTreeMap<String, RefDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MonoidDoc {
    pub elements: Vec<String>,
    pub unit: String,
    pub table: Vec<Vec<String>>,
}

/// A named document of any supported kind.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Sset(SsetDoc),
    Map(MapDoc),
    Retractive(RetractiveDoc),
    Comodule(ComoduleDoc),
    Monoid(MonoidDoc),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Document {
    pub name: String,
    #[serde(flatten)]
    pub payload: Payload,
}

/// A parsed and validated document.
pub enum Parsed {
    Space(Arc<Space>),
    Map(SMap),
    Retractive(RetractiveSpace),
    Comodule(Comodule),
    Monoid(Monoid),
}

impl std::fmt::Debug for Parsed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Parsed({})", self.kind())
    }
}

impl Parsed {
    pub fn kind(&self) -> &'static str {
        match self {
            Parsed::Space(_) => "sset",
            Parsed::Map(_) => "map",
            Parsed::Retractive(_) => "retractive",
            Parsed::Comodule(_) => "comodule",
            Parsed::Monoid(_) => "monoid",
        }
    }

    /// The simplicial set homology applies to: a space itself, or the total
    /// space of a structured object.
    pub fn homology_space(&self) -> Result<Arc<Space>, Error> {
        match self {
            Parsed::Space(s) => Ok(s.clone()),
            Parsed::Retractive(r) => Ok(r.total.clone()),
            Parsed::Comodule(c) => Ok(c.total.clone()),
            Parsed::Map(_) | Parsed::Monoid(_) => {
                Err(Error::Parse("this document kind has no underlying space".into()))
            }
        }
    }
}

pub fn parse(text: &str) -> Result<(Document, Parsed), Error> {
    let doc: Document =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    let parsed = load(&doc)?;
    Ok((doc, parsed))
}

pub fn load(doc: &Document) -> Result<Parsed, Error> {
    match &doc.payload {
        Payload::Sset(s) => Ok(Parsed::Space(space_from_doc(s)?)),
        Payload::Map(m) => Ok(Parsed::Map(map_from_doc(m)?)),
        Payload::Retractive(r) => {
            let base = space_from_doc(&r.base)?;
            let total = space_from_doc(&r.total)?;
            let incl = images_to_map(&base, &total, &r.incl, false)?;
            let retr = images_to_map(&total, &base, &r.retr, false)?;
            Ok(Parsed::Retractive(RetractiveSpace::new(base, total, incl, retr)?))
        }
        Payload::Comodule(c) => {
            let base = space_from_doc(&c.base)?;
            let total = space_from_doc(&c.total)?;
            if total.basepoint().is_none() {
                return Err(Error::Parse("comodule total must declare a basepoint".into()));
            }
            let base_index = id_index(&c.base);
            let total_index = id_index(&c.total);
            let mut labels: BTreeMap<SimplexId, SimplexRef> = BTreeMap::new();
            for (id, (word, target)) in &c.labels {
                let yid = *total_index
                    .get(id.as_str())
                    .ok_or_else(|| Error::Parse(format!("label on unknown simplex {id}")))?;
                let base_id = *base_index
                    .get(target.as_str())
                    .ok_or_else(|| Error::Parse(format!("label targets unknown simplex {target}")))?;
                labels.insert(yid, SimplexRef { base: base_id, word: Word::normalize(word) });
            }
            let comod = Comodule::from_labels(base, total, |id| labels.get(&id).cloned())?;
            Ok(Parsed::Comodule(comod))
        }
        Payload::Monoid(m) => {
            let index: BTreeMap<&str, usize> =
                m.elements.iter().enumerate().map(|(i, e)| (e.as_str(), i)).collect();
            let unit = *index
                .get(m.unit.as_str())
                .ok_or_else(|| Error::Parse("unit is not an element".into()))?;
            let table: Vec<Vec<usize>> = m
                .table
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|e| {
                            index
                                .get(e.as_str())
                                .copied()
                                .ok_or_else(|| Error::Parse(format!("unknown element {e}")))
                        })
                        .collect()
                })
                .collect::<Result<_, _>>()?;
            let names: Vec<&str> = m.elements.iter().map(|s| s.as_str()).collect();
            Ok(Parsed::Monoid(Monoid::discrete(&names, &table, unit)?))
        }
    }
}

fn id_index(doc: &SsetDoc) -> BTreeMap<&str, SimplexId> {
    let mut out = BTreeMap::new();
    for (dim, row) in doc.dims.iter().enumerate() {
        for (idx, s) in row.iter().enumerate() {
            out.insert(s.id.as_str(), SimplexId { dim, idx });
        }
    }
    out
}

pub fn space_from_doc(doc: &SsetDoc) -> Result<Arc<Space>, Error> {
    let index = id_index(doc);
    if index.len() != doc.dims.iter().map(|r| r.len()).sum::<usize>() {
        return Err(Error::Parse("duplicate simplex ids".into()));
    }
    let mut b = SpaceBuilder::new();
    for (dim, row) in doc.dims.iter().enumerate() {
        for s in row {
            let faces = s
                .faces
                .iter()
                .map(|(word, id)| {
                    let base = *index
                        .get(id.as_str())
                        .ok_or_else(|| Error::Parse(format!("unknown face id {id}")))?;
                    Ok(SimplexRef { base, word: Word::normalize(word) })
                })
                .collect::<Result<Vec<_>, Error>>()?;
            b.add(dim, s.id.clone(), faces);
        }
    }
    if let Some(bp) = &doc.basepoint {
        let id = *index
            .get(bp.as_str())
            .ok_or_else(|| Error::Parse(format!("unknown basepoint {bp}")))?;
        b.basepoint(id);
    }
    b.build()
}

fn images_to_map(
    domain: &Arc<Space>,
    codomain: &Arc<Space>,
    images: &BTreeMap<String, RefDoc>,
    pointed: bool,
) -> Result<SMap, Error> {
    let dom_index: BTreeMap<String, SimplexId> = (0..=domain.top_dim())
        .flat_map(|d| domain.ids(d))
        .map(|id| (domain.name(id).to_string(), id))
        .collect();
    let cod_index: BTreeMap<String, SimplexId> = (0..=codomain.top_dim())
        .flat_map(|d| codomain.ids(d))
        .map(|id| (codomain.name(id).to_string(), id))
        .collect();
    let mut table: Vec<Vec<Option<SimplexRef>>> =
        (0..=domain.top_dim()).map(|d| vec![None; domain.rank(d)]).collect();
    for (id, (word, target)) in images {
        let did = *dom_index
            .get(id)
            .ok_or_else(|| Error::Parse(format!("image for unknown simplex {id}")))?;
        let tid = *cod_index
            .get(target)
            .ok_or_else(|| Error::Parse(format!("image targets unknown simplex {target}")))?;
        table[did.dim][did.idx] = Some(SimplexRef { base: tid, word: Word::normalize(word) });
    }
    let full: Vec<Vec<SimplexRef>> = table
        .into_iter()
        .enumerate()
        .map(|(dim, row)| {
            row.into_iter()
                .enumerate()
                .map(|(idx, r)| {
                    r.ok_or_else(|| {
                        Error::Parse(format!(
                            "missing image for simplex {}",
                            domain.name(SimplexId { dim, idx })
                        ))
                    })
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;
    SMap::new(domain.clone(), codomain.clone(), full, pointed)
}

fn map_from_doc(doc: &MapDoc) -> Result<SMap, Error> {
    let domain = space_from_doc(&doc.domain)?;
    let codomain = space_from_doc(&doc.codomain)?;
    images_to_map(&domain, &codomain, &doc.images, doc.pointed)
}

/// Unique serialization ids for a space: the record names when globally
/// unique, disambiguated by position otherwise.
fn doc_ids(space: &Space) -> Vec<Vec<String>> {
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for dim in 0..=space.top_dim() {
        for id in space.ids(dim) {
            *counts.entry(space.name(id)).or_insert(0) += 1;
        }
    }
    (0..=space.top_dim())
        .map(|dim| {
            space
                .ids(dim)
                .map(|id| {
                    let name = space.name(id);
                    if counts[name] == 1 {
                        name.to_string()
                    } else {
                        format!("{name}#{}.{}", id.dim, id.idx)
                    }
                })
                .collect()
        })
        .collect()
}

pub fn space_to_doc(space: &Space) -> SsetDoc {
    let ids = doc_ids(space);
    let ref_doc = |r: &SimplexRef| -> RefDoc {
        (r.word.letters().to_vec(), ids[r.base.dim][r.base.idx].clone())
    };
    let dims = (0..=space.top_dim())
        .map(|dim| {
            space
                .ids(dim)
                .map(|id| SimplexDoc {
                    id: ids[dim][id.idx].clone(),
                    faces: space.record(id).faces.iter().map(ref_doc).collect(),
                })
                .collect()
        })
        .collect();
    SsetDoc { basepoint: space.basepoint().map(|bp| ids[0][bp.idx].clone()), dims }
}

fn map_images_doc(f: &SMap) -> BTreeMap<String, RefDoc> {
    let dom_ids = doc_ids(f.domain());
    let cod_ids = doc_ids(f.codomain());
    let mut out = BTreeMap::new();
    for dim in 0..=f.domain().top_dim() {
        for id in f.domain().ids(dim) {
            let img = f.image_of(id);
            out.insert(
                dom_ids[dim][id.idx].clone(),
                (img.word.letters().to_vec(), cod_ids[img.base.dim][img.base.idx].clone()),
            );
        }
    }
    out
}

pub fn map_to_doc(name: &str, f: &SMap) -> Document {
    Document {
        name: name.to_string(),
        payload: Payload::Map(MapDoc {
            domain: space_to_doc(f.domain()),
            codomain: space_to_doc(f.codomain()),
            pointed: f.is_pointed_flagged(),
            images: map_images_doc(f),
        }),
    }
}

pub fn sset_to_doc(name: &str, space: &Space) -> Document {
    Document { name: name.to_string(), payload: Payload::Sset(space_to_doc(space)) }
}

pub fn retractive_to_doc(name: &str, obj: &RetractiveSpace) -> Document {
    Document {
        name: name.to_string(),
        payload: Payload::Retractive(RetractiveDoc {
            base: space_to_doc(&obj.base),
            total: space_to_doc(&obj.total),
            incl: map_images_doc(&obj.incl),
            retr: map_images_doc(&obj.retr),
        }),
    }
}

pub fn comodule_to_doc(name: &str, c: &Comodule) -> Document {
    let total_ids = doc_ids(&c.total);
    let base_ids = doc_ids(&c.base);
    let mut labels = BTreeMap::new();
    for dim in 0..=c.total.top_dim() {
        for id in c.total.ids(dim) {
            if let Some(l) = c.label_at(id) {
                labels.insert(
                    total_ids[dim][id.idx].clone(),
                    (l.word.letters().to_vec(), base_ids[l.base.dim][l.base.idx].clone()),
                );
            }
        }
    }
    Document {
        name: name.to_string(),
        payload: Payload::Comodule(ComoduleDoc {
            base: space_to_doc(&c.base),
            total: space_to_doc(&c.total),
            labels,
        }),
    }
}

pub fn to_text(doc: &Document) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("serializable");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{projective_plane, standard, Standard};

    fn circle_doc_text() -> String {
        // The stock document: one vertex, one edge with both faces the vertex.
        r#"{
  "name": "circle",
  "kind": "sset",
  "dims": [
    [ { "id": "v" } ],
    [ { "id": "e", "faces": [[[], "v"], [[], "v"]] } ]
  ]
}"#
        .to_string()
    }

    #[test]
    fn parse_circle() {
        let (_, parsed) = parse(&circle_doc_text()).unwrap();
        let Parsed::Space(s) = parsed else { panic!("expected sset") };
        assert_eq!(s.counts(), vec![1, 1]);
        assert_eq!(s.as_ref(), standard(Standard::Sphere(1)).unwrap().unpointed().as_ref());
    }

    #[test]
    fn invalid_identity_reported_with_simplex() {
        // A 2-simplex whose faces break d_0 d_2 = d_1 d_0.
        let text = r#"{
  "name": "bad",
  "kind": "sset",
  "dims": [
    [ {"id": "a"}, {"id": "b"}, {"id": "c"} ],
    [ {"id": "ab", "faces": [[[], "b"], [[], "a"]]},
      {"id": "ac", "faces": [[[], "c"], [[], "a"]]},
      {"id": "cb", "faces": [[[], "b"], [[], "c"]]} ],
    [ {"id": "t", "faces": [[[], "cb"], [[], "ab"], [[], "ab"]]} ]
  ]
}"#;
        let err = parse(text).unwrap_err();
        let msg = format!("{err}");
        assert!(msg.contains('t'), "error should name the simplex: {msg}");
    }

    #[test]
    fn round_trip_spaces() {
        for (name, space) in [
            ("rp2", projective_plane().unwrap()),
            ("delta3", standard(Standard::Simplex(3)).unwrap()),
            ("s2", standard(Standard::Sphere(2)).unwrap()),
        ] {
            let doc = sset_to_doc(name, &space);
            let text = to_text(&doc);
            let (doc2, parsed) = parse(&text).unwrap();
            assert_eq!(to_text(&doc2), text, "canonical serialization is stable");
            let Parsed::Space(s) = parsed else { panic!() };
            assert_eq!(s.as_ref(), space.as_ref());
        }
    }

    #[test]
    fn round_trip_comodule() {
        let x = standard(Standard::Sphere(1)).unwrap().unpointed();
        let plus = crate::sset::Plus::new(&x).unwrap();
        let c = Comodule::from_labels(x, plus.space.clone(), |id| {
            Some(SimplexRef::nondeg(id))
        })
        .unwrap();
        let doc = comodule_to_doc("bp", &c);
        let text = to_text(&doc);
        let (_, parsed) = parse(&text).unwrap();
        let Parsed::Comodule(c2) = parsed else { panic!() };
        assert!(c2.same_tables(&c));
    }

    #[test]
    fn round_trip_retractive() {
        let x = standard(Standard::Sphere(1)).unwrap().unpointed();
        let y = standard(Standard::Sphere(0)).unwrap();
        let (obj, _) = crate::retractive::ret_functor(&y, &x).unwrap();
        let doc = retractive_to_doc("rets0", &obj);
        let (_, parsed) = parse(&to_text(&doc)).unwrap();
        let Parsed::Retractive(r) = parsed else { panic!() };
        assert_eq!(r.counts(), obj.counts());
    }

    #[test]
    fn monoid_doc() {
        let text = r#"{
  "name": "z2",
  "kind": "monoid",
  "elements": ["e", "g"],
  "unit": "e",
  "table": [["e", "g"], ["g", "e"]]
}"#;
        let (_, parsed) = parse(text).unwrap();
        let Parsed::Monoid(m) = parsed else { panic!() };
        assert!(m.is_commutative());
    }
}
