//! JSON file formats.
//!
//! ```text
//! space     { "points": ["x", "y"], "rho": [[0, 1], [1, 0]] }
//! measure   { "space": <space>, "lambda": { "x": 0, "y": "-inf" } }
//! coupling  { "left": <measure>, "right": <measure>, "gamma": [[0, "-inf"], ...] }
//! sequence  { "space": <space>, "limit": {..lambda..}, "terms": [{..}, ...] }
//! map       { "source": <space>, "target": <space>, "map": { "x": "a", ... } }
//! ```
//!
//! A `<space>` or `<measure>` reference is either a path (relative to the
//! referring file) or the object inlined. Points missing from a `lambda`
//! mapping have density `−∞`. Finite values are plain numbers and `−∞` is
//! the string `"-inf"`.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use thiserror::Error;

use crate::convergence::MeasureSequence;
use crate::coupling::Coupling;
use crate::error::Error;
use crate::maxplus::{MaxPlus, NegInf};
use crate::measure::{IdempotentMeasure, PointMap};
use crate::space::FiniteMetricSpace;

#[derive(Debug, Error)]
pub enum FileError {
    #[error("{path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },

    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: serde_json::Error },

    #[error("{path}: {source}")]
    Invalid { path: PathBuf, source: Error },

    #[error("{path}: cannot tell which kind of file this is (expected one of the keys gamma, terms, map, lambda, rho)")]
    UnknownKind { path: PathBuf },
}

impl FileError {
    fn invalid(path: &Path, source: Error) -> Self {
        FileError::Invalid { path: path.to_path_buf(), source }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpaceFile {
    pub points: Vec<String>,
    pub rho: Vec<Vec<f64>>,
}

impl From<&FiniteMetricSpace> for SpaceFile {
    fn from(space: &FiniteMetricSpace) -> Self {
        Self { points: space.labels().to_vec(), rho: space.rows() }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Ref<T> {
    Path(PathBuf),
    Inline(T),
}

pub type Lambda = Map<String, Value>;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MeasureFile {
    pub space: Ref<SpaceFile>,
    pub lambda: Lambda,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CouplingFile {
    pub left: Ref<MeasureFile>,
    pub right: Ref<MeasureFile>,
    pub gamma: Vec<Vec<MaxPlus>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SequenceFile {
    pub space: Ref<SpaceFile>,
    pub limit: Lambda,
    pub terms: Vec<Lambda>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MapFile {
    pub source: Ref<SpaceFile>,
    pub target: Ref<SpaceFile>,
    pub map: Map<String, Value>,
}

/// What a file on disk turned out to be.
#[derive(Debug, Clone)]
pub enum Loaded {
    Space(Arc<FiniteMetricSpace>),
    Measure(IdempotentMeasure),
    Coupling(Coupling),
    Sequence(MeasureSequence),
    Map(PointMap),
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, FileError> {
    let text = fs::read_to_string(path).map_err(|source| FileError::Read { path: path.to_path_buf(), source })?;
    serde_json::from_str(&text).map_err(|source| FileError::Parse { path: path.to_path_buf(), source })
}

fn base_dir(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

fn resolve<T, U>(
    reference: &Ref<T>,
    referrer: &Path,
    inline: impl FnOnce(&T, &Path) -> Result<U, FileError>,
    load: impl FnOnce(&Path) -> Result<U, FileError>,
) -> Result<U, FileError> {
    match reference {
        Ref::Inline(value) => inline(value, referrer),
        Ref::Path(p) => load(&base_dir(referrer).join(p)),
    }
}

pub fn space_from_file(file: &SpaceFile, path: &Path) -> Result<Arc<FiniteMetricSpace>, FileError> {
    FiniteMetricSpace::new(file.points.clone(), file.rho.clone())
        .map(Arc::new)
        .map_err(|e| FileError::invalid(path, e))
}

pub fn load_space(path: &Path) -> Result<Arc<FiniteMetricSpace>, FileError> {
    space_from_file(&read_json(path)?, path)
}

fn space_ref(reference: &Ref<SpaceFile>, referrer: &Path) -> Result<Arc<FiniteMetricSpace>, FileError> {
    resolve(reference, referrer, space_from_file, load_space)
}

fn parse_value(value: &Value) -> Result<MaxPlus, Error> {
    serde_json::from_value::<MaxPlus>(value.clone()).map_err(|e| Error::NotMaxPlus(e.to_string()))
}

pub fn lambda_from_map(space: &Arc<FiniteMetricSpace>, lambda: &Lambda) -> Result<IdempotentMeasure, Error> {
    let mut values = vec![NegInf; space.len()];
    for (label, value) in lambda {
        values[space.index_of(label)?] = parse_value(value)?;
    }
    IdempotentMeasure::new(space.clone(), values)
}

pub fn measure_from_file(file: &MeasureFile, path: &Path) -> Result<IdempotentMeasure, FileError> {
    let space = space_ref(&file.space, path)?;
    lambda_from_map(&space, &file.lambda).map_err(|e| FileError::invalid(path, e))
}

pub fn load_measure(path: &Path) -> Result<IdempotentMeasure, FileError> {
    measure_from_file(&read_json(path)?, path)
}

fn measure_ref(reference: &Ref<MeasureFile>, referrer: &Path) -> Result<IdempotentMeasure, FileError> {
    resolve(reference, referrer, measure_from_file, load_measure)
}

pub fn coupling_from_file(file: &CouplingFile, path: &Path) -> Result<Coupling, FileError> {
    let left = measure_ref(&file.left, path)?;
    let right = measure_ref(&file.right, path)?;
    Coupling::new(file.gamma.clone(), left, right).map_err(|e| FileError::invalid(path, e))
}

pub fn load_coupling(path: &Path) -> Result<Coupling, FileError> {
    coupling_from_file(&read_json(path)?, path)
}

pub fn sequence_from_file(file: &SequenceFile, path: &Path) -> Result<MeasureSequence, FileError> {
    let space = space_ref(&file.space, path)?;
    let build = || -> Result<MeasureSequence, Error> {
        let limit = lambda_from_map(&space, &file.limit)?;
        let terms = file.terms.iter().map(|t| lambda_from_map(&space, t)).collect::<Result<_, _>>()?;
        MeasureSequence::new(terms, limit)
    };
    build().map_err(|e| FileError::invalid(path, e))
}

pub fn load_sequence(path: &Path) -> Result<MeasureSequence, FileError> {
    sequence_from_file(&read_json(path)?, path)
}

pub fn map_from_file(file: &MapFile, path: &Path) -> Result<PointMap, FileError> {
    let source = space_ref(&file.source, path)?;
    let target = space_ref(&file.target, path)?;
    let build = || -> Result<PointMap, Error> {
        let mut image = vec![None; source.len()];
        for (from, to) in &file.map {
            let to = to.as_str().ok_or_else(|| Error::UnknownPoint(to.to_string()))?;
            image[source.index_of(from)?] = Some(target.index_of(to)?);
        }
        let image = image
            .into_iter()
            .enumerate()
            .map(|(i, y)| y.ok_or_else(|| Error::UnknownPoint(format!("no image for {}", source.label(i)))))
            .collect::<Result<Vec<_>, _>>()?;
        PointMap::new(source.clone(), target.clone(), image)
    };
    build().map_err(|e| FileError::invalid(path, e))
}

pub fn load_map(path: &Path) -> Result<PointMap, FileError> {
    map_from_file(&read_json(path)?, path)
}

/// Loads any of the five file kinds, dispatching on its keys.
pub fn load_any(path: &Path) -> Result<Loaded, FileError> {
    let value: Value = read_json(path)?;
    let has = |key: &str| value.get(key).is_some();
    macro_rules! from {
        ($t:ty) => {
            serde_json::from_value::<$t>(value.clone())
                .map_err(|source| FileError::Parse { path: path.to_path_buf(), source })?
        };
    }
    if has("gamma") {
        Ok(Loaded::Coupling(coupling_from_file(&from!(CouplingFile), path)?))
    } else if has("terms") {
        Ok(Loaded::Sequence(sequence_from_file(&from!(SequenceFile), path)?))
    } else if has("map") {
        Ok(Loaded::Map(map_from_file(&from!(MapFile), path)?))
    } else if has("lambda") {
        Ok(Loaded::Measure(measure_from_file(&from!(MeasureFile), path)?))
    } else if has("rho") {
        Ok(Loaded::Space(space_from_file(&from!(SpaceFile), path)?))
    } else {
        Err(FileError::UnknownKind { path: path.to_path_buf() })
    }
}

/// `lambda` mapping in point order.
pub fn lambda_map(measure: &IdempotentMeasure) -> Lambda {
    let space = measure.space();
    (0..space.len())
        .map(|i| (space.label(i).to_string(), serde_json::to_value(measure.density(i)).expect("serializable")))
        .collect()
}

/// A self-contained measure file with the space inlined.
pub fn measure_file(measure: &IdempotentMeasure) -> MeasureFile {
    MeasureFile { space: Ref::Inline(SpaceFile::from(measure.space().as_ref())), lambda: lambda_map(measure) }
}

/// A self-contained coupling file with both marginals inlined.
pub fn coupling_file(xi: &Coupling) -> CouplingFile {
    CouplingFile {
        left: Ref::Inline(measure_file(xi.left())),
        right: Ref::Inline(measure_file(xi.right())),
        gamma: xi.rows(),
    }
}

pub fn sequence_file(seq: &MeasureSequence) -> SequenceFile {
    SequenceFile {
        space: Ref::Inline(SpaceFile::from(seq.space().as_ref())),
        limit: lambda_map(seq.limit()),
        terms: seq.terms().iter().map(lambda_map).collect(),
    }
}

pub fn to_pretty_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("file types serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
        let p = dir.join(name);
        fs::write(&p, text).unwrap();
        p
    }

    fn scratch(tag: &str) -> PathBuf {
        let dir = std::env::temp_dir().join(format!("imetric-io-{tag}-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        dir
    }

    #[test]
    fn measure_with_space_path() {
        let dir = scratch("measure");
        write(&dir, "space.json", r#"{"points": ["x", "y"], "rho": [[0, 1], [1, 0]]}"#);
        let m = write(&dir, "mu.json", r#"{"space": "space.json", "lambda": {"x": 0, "y": -2}}"#);
        let mu = load_measure(&m).unwrap();
        assert_eq!(mu.lambda(), &[MaxPlus::ONE, MaxPlus::lit(-2.0)]);
        let d = write(&dir, "dirac.json", r#"{"space": "space.json", "lambda": {"y": 0, "x": "-inf"}}"#);
        assert_eq!(load_measure(&d).unwrap().support(), vec![1]);
    }

    #[test]
    fn validation_errors_carry_indices() {
        let dir = scratch("invalid");
        let p = write(&dir, "bad.json", r#"{"points": ["x", "y"], "rho": [[0, 1], [2, 0]]}"#);
        let err = load_space(&p).unwrap_err();
        assert!(matches!(err, FileError::Invalid { source: Error::Asymmetric { i: 0, j: 1, .. }, .. }));
        let p = write(&dir, "broken.json", r#"{"points": ["x", "y"], "rho": [[0, 1], [1, 0]"#);
        let msg = load_space(&p).unwrap_err().to_string();
        assert!(msg.contains("line 1"), "{msg}");
        let p = write(&dir, "weird.json", r#"{"hello": 1}"#);
        assert!(matches!(load_any(&p), Err(FileError::UnknownKind { .. })));
    }

    #[test]
    fn coupling_file_round_trip() {
        let space = Arc::new(FiniteMetricSpace::new(vec!["x".into(), "y".into()], vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap());
        let mu1 = IdempotentMeasure::new(space.clone(), vec![MaxPlus::ONE, MaxPlus::lit(-2.0)]).unwrap();
        let mu2 = IdempotentMeasure::new(space, vec![MaxPlus::ONE, MaxPlus::lit(-4.0)]).unwrap();
        let xi = Coupling::xi_zero(&mu1, &mu2).unwrap();
        let dir = scratch("coupling");
        let p = write(&dir, "xi.json", &to_pretty_json(&coupling_file(&xi)));
        match load_any(&p).unwrap() {
            Loaded::Coupling(back) => assert_eq!(back, xi),
            other => panic!("wrong kind: {other:?}"),
        }
        let text = fs::read_to_string(&p).unwrap();
        assert!(text.contains("\"-inf\""));
    }

    #[test]
    fn map_file() {
        let dir = scratch("map");
        write(&dir, "three.json", r#"{"points": ["x", "y", "w"], "rho": [[0, 1, 2], [1, 0, 1], [2, 1, 0]]}"#);
        write(&dir, "two.json", r#"{"points": ["z", "w"], "rho": [[0, 1], [1, 0]]}"#);
        let p = write(&dir, "f.json", r#"{"source": "three.json", "target": "two.json", "map": {"x": "z", "y": "z", "w": "w"}}"#);
        let f = load_map(&p).unwrap();
        assert_eq!(f.image(), &[0, 0, 1]);
        let p = write(&dir, "partial.json", r#"{"source": "three.json", "target": "two.json", "map": {"x": "z"}}"#);
        assert!(load_map(&p).is_err());
    }
}
