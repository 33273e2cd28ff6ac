use serde::{Deserialize, Serialize};

use super::{ComplexError, CubicalComplex, FaceId, FaceKey, RawFace};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FaceJson {
    pub id: usize,
    pub dim: usize,
    pub covered: Vec<usize>,
    pub key: String,
}

/// Wire form of a complex: faces in canonical order, `dim` the maximal face
/// dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexJson {
    pub dim: usize,
    pub faces: Vec<FaceJson>,
}

impl From<&CubicalComplex> for ComplexJson {
    fn from(k: &CubicalComplex) -> Self {
        let faces = k
            .ids()
            .map(|id| FaceJson {
                id: id.index(),
                dim: k.face_dim(id),
                covered: k.covered(id).iter().map(|c| c.index()).collect(),
                key: k.key(id).to_string(),
            })
            .collect();
        ComplexJson { dim: k.dim(), faces }
    }
}

impl TryFrom<ComplexJson> for CubicalComplex {
    type Error = ComplexError;

    /// Ids in the input only need to be a permutation of `0..n`; the result
    /// is reordered canonically.
    fn try_from(j: ComplexJson) -> Result<Self, Self::Error> {
        let n = j.faces.len();
        let mut slot = vec![usize::MAX; n];
        for (pos, f) in j.faces.iter().enumerate() {
            if f.id >= n || slot[f.id] != usize::MAX {
                return Err(ComplexError::BadIdSet(n));
            }
            slot[f.id] = pos;
        }
        let actual = j.faces.iter().map(|f| f.dim).max().ok_or(ComplexError::Empty)?;
        if actual != j.dim {
            return Err(ComplexError::DimMismatch { declared: j.dim, actual });
        }
        let raw = j
            .faces
            .into_iter()
            .map(|f| {
                let covered = f
                    .covered
                    .iter()
                    .map(|&c| {
                        slot.get(c).copied().ok_or(ComplexError::InvalidId { face: f.id, id: c })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(RawFace { dim: f.dim, covered, key: FaceKey::parse(&f.key) })
            })
            .collect::<Result<Vec<_>, ComplexError>>()?;
        CubicalComplex::from_faces(raw)
    }
}

impl CubicalComplex {
    pub fn to_json(&self) -> ComplexJson {
        ComplexJson::from(self)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("complex JSON serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self, ComplexError> {
        let j: ComplexJson = serde_json::from_str(s).map_err(|e| ComplexError::Json(e.to_string()))?;
        CubicalComplex::try_from(j)
    }

    /// Face id by rendered key, mostly for tests and tooling.
    pub fn find_key(&self, key: &str) -> Option<FaceId> {
        let key = FaceKey::parse(key);
        self.ids().find(|&id| *self.key(id) == key)
    }
}
