//! JSON file formats.
//!
//! Rationals are strings (`"3"`, `"-1/2"`), matrices are row-major nested lists,
//! and a homogeneous polynomial is `{"degree": d, "terms": [["c", a, b], ...]}`
//! standing for `sum c s^a t^b`.

use serde_json::{json, Map, Value};

use crate::arsys::ARSystem;
use crate::error::{Error, Result};
use crate::grassmann::GrassmannPoint;
use crate::pencil::PencilSystem;
use crate::poly::{
    format_rational, parse_rational, HomPoly, HomPolyMatrix, RatMatrix, Rational, UniPoly,
};
use crate::realization::{StateSpace, MFD};

/// A parsed input file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SystemFile {
    StateSpace(StateSpace),
    Mfd(MFD),
    Ar(ARSystem),
    Pencil(PencilSystem),
    Transform(RatMatrix),
}

impl SystemFile {
    pub fn kind(&self) -> &'static str {
        match self {
            SystemFile::StateSpace(_) => "state_space",
            SystemFile::Mfd(_) => "mfd",
            SystemFile::Ar(_) => "ar",
            SystemFile::Pencil(_) => "pencil",
            SystemFile::Transform(_) => "transform",
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            SystemFile::StateSpace(ss) => state_space_to_json(ss),
            SystemFile::Mfd(mfd) => mfd_to_json(mfd),
            SystemFile::Ar(ar) => ar_to_json(ar),
            SystemFile::Pencil(ps) => pencil_to_json(ps),
            SystemFile::Transform(t) => json!({"kind": "transform", "T": matrix_to_json(t)}),
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = object(v, "file")?;
        let kind = obj
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| parse_err("missing \"kind\""))?;
        match kind {
            "state_space" => state_space_from_json(obj).map(SystemFile::StateSpace),
            "mfd" => mfd_from_json(obj).map(SystemFile::Mfd),
            "ar" => ar_from_json(obj).map(SystemFile::Ar),
            "pencil" => pencil_from_json(obj).map(SystemFile::Pencil),
            "transform" => transform_from_json(obj).map(SystemFile::Transform),
            other => Err(parse_err(&format!("unknown kind \"{other}\""))),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&v)
    }
}

fn parse_err(msg: &str) -> Error {
    Error::Parse(msg.to_string())
}

fn object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| parse_err(&format!("{what} must be an object")))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| parse_err(&format!("missing \"{key}\"")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| parse_err(&format!("{what} must be a list")))
}

fn uint(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| parse_err(&format!("{what} must be a non-negative integer")))
}

pub fn rational_to_json(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

pub fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().unwrap().into())),
        _ => Err(parse_err("rationals must be strings like \"p/q\"")),
    }
}

pub fn matrix_to_json(m: &RatMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(rational_to_json).collect()))
            .collect(),
    )
}

/// `cols` is used when the list has no rows.
pub fn matrix_from_json(v: &Value, cols: Option<usize>) -> Result<RatMatrix> {
    let rows = array(v, "matrix")?;
    if rows.is_empty() {
        return Ok(RatMatrix::zeros(0, cols.unwrap_or(0)));
    }
    let rows = rows
        .iter()
        .map(|r| {
            array(r, "matrix row")?
                .iter()
                .map(rational_from_json)
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    RatMatrix::from_rows(rows)
}

pub fn hompoly_to_json(f: &HomPoly) -> Value {
    let terms: Vec<Value> = f
        .terms()
        .into_iter()
        .map(|(c, a, b)| json!([format_rational(&c), a, b]))
        .collect();
    json!({"degree": f.degree(), "terms": terms})
}

pub fn hompoly_from_json(v: &Value) -> Result<HomPoly> {
    let obj = object(v, "polynomial")?;
    let degree = uint(field(obj, "degree")?, "degree")?;
    let terms = array(field(obj, "terms")?, "terms")?
        .iter()
        .map(|t| {
            let t = array(t, "term")?;
            if t.len() != 3 {
                return Err(parse_err("a term is [coefficient, a, b]"));
            }
            Ok((
                rational_from_json(&t[0])?,
                uint(&t[1], "exponent")?,
                uint(&t[2], "exponent")?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    HomPoly::from_terms(degree, &terms)
}

pub fn hom_matrix_to_json(m: &HomPolyMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(hompoly_to_json).collect()))
            .collect(),
    )
}

pub fn hom_matrix_from_json(v: &Value) -> Result<HomPolyMatrix> {
    let rows = array(v, "polynomial matrix")?
        .iter()
        .map(|r| {
            array(r, "polynomial row")?
                .iter()
                .map(hompoly_from_json)
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    HomPolyMatrix::from_rows(rows)
}

pub fn ar_to_json(ar: &ARSystem) -> Value {
    json!({
        "kind": "ar",
        "m": ar.inputs(),
        "p": ar.outputs(),
        "row_degrees": ar.row_degrees(),
        "P": hom_matrix_to_json(ar.matrix()),
    })
}

fn degrees(v: &Value) -> Result<Vec<usize>> {
    array(v, "row_degrees")?
        .iter()
        .map(|d| uint(d, "row degree"))
        .collect()
}

fn ar_from_json(obj: &Map<String, Value>) -> Result<ARSystem> {
    let m = uint(field(obj, "m")?, "m")?;
    let p = uint(field(obj, "p")?, "p")?;
    let matrix = hom_matrix_from_json(field(obj, "P")?)?;
    ARSystem::validate(matrix, degrees(field(obj, "row_degrees")?)?, m, p)
}

fn state_space_to_json(ss: &StateSpace) -> Value {
    json!({
        "kind": "state_space",
        "A": matrix_to_json(&ss.a),
        "B": matrix_to_json(&ss.b),
        "C": matrix_to_json(&ss.c),
        "D": matrix_to_json(&ss.d),
    })
}

fn state_space_from_json(obj: &Map<String, Value>) -> Result<StateSpace> {
    let a = matrix_from_json(field(obj, "A")?, Some(0))?;
    let c = matrix_from_json(field(obj, "C")?, Some(a.rows()))?;
    let d = matrix_from_json(field(obj, "D")?, None)?;
    let b = matrix_from_json(field(obj, "B")?, Some(d.cols()))?;
    let d = if d.rows() == 0 && c.rows() > 0 {
        RatMatrix::zeros(c.rows(), b.cols())
    } else {
        d
    };
    StateSpace::new(a, b, c, d)
}

/// Univariate entries are ascending coefficient lists.
fn unipoly_matrix_to_json(m: &[Vec<UniPoly>]) -> Value {
    Value::Array(
        m.iter()
            .map(|r| {
                Value::Array(
                    r.iter()
                        .map(|f| Value::Array(f.coeffs().iter().map(rational_to_json).collect()))
                        .collect(),
                )
            })
            .collect(),
    )
}

fn unipoly_matrix_from_json(v: &Value) -> Result<Vec<Vec<UniPoly>>> {
    array(v, "polynomial matrix")?
        .iter()
        .map(|r| {
            array(r, "polynomial row")?
                .iter()
                .map(|f| {
                    Ok(UniPoly::new(
                        array(f, "coefficients")?
                            .iter()
                            .map(rational_from_json)
                            .collect::<Result<_>>()?,
                    ))
                })
                .collect()
        })
        .collect()
}

fn mfd_to_json(mfd: &MFD) -> Value {
    json!({
        "kind": "mfd",
        "row_degrees": mfd.row_degrees,
        "D": unipoly_matrix_to_json(&mfd.dmat),
        "N": unipoly_matrix_to_json(&mfd.nmat),
    })
}

fn mfd_from_json(obj: &Map<String, Value>) -> Result<MFD> {
    let dmat = unipoly_matrix_from_json(field(obj, "D")?)?;
    let nmat = unipoly_matrix_from_json(field(obj, "N")?)?;
    match obj.get("row_degrees") {
        Some(v) => MFD::new(dmat, nmat, degrees(v)?),
        None => MFD::with_natural_degrees(dmat, nmat),
    }
}

fn pencil_to_json(ps: &PencilSystem) -> Value {
    json!({
        "kind": "pencil",
        "p": ps.outputs(),
        "K": matrix_to_json(&ps.k),
        "L": matrix_to_json(&ps.l),
        "M": matrix_to_json(&ps.m),
    })
}

fn pencil_from_json(obj: &Map<String, Value>) -> Result<PencilSystem> {
    let k = matrix_from_json(field(obj, "K")?, Some(0))?;
    let l = matrix_from_json(field(obj, "L")?, Some(k.cols()))?;
    let m = matrix_from_json(field(obj, "M")?, Some(0))?;
    let p = match obj.get("p") {
        Some(v) => uint(v, "p")?,
        None => k
            .rows()
            .checked_sub(k.cols())
            .ok_or_else(|| parse_err("K must have at least as many rows as columns"))?,
    };
    PencilSystem::new(k, l, m, p)
}

/// `{"T": ...}` or the blocks `T1, F, G, T2` of `[[T1, F], [G, T2]]`.
fn transform_from_json(obj: &Map<String, Value>) -> Result<RatMatrix> {
    let t = if let Some(t) = obj.get("T") {
        matrix_from_json(t, None)?
    } else {
        let t1 = matrix_from_json(field(obj, "T1")?, None)?;
        let t2 = matrix_from_json(field(obj, "T2")?, None)?;
        let f = match obj.get("F") {
            Some(v) => matrix_from_json(v, Some(t2.cols()))?,
            None => RatMatrix::zeros(t1.rows(), t2.cols()),
        };
        let g = match obj.get("G") {
            Some(v) => matrix_from_json(v, Some(t1.cols()))?,
            None => RatMatrix::zeros(t2.rows(), t1.cols()),
        };
        if f.rows() != t1.rows()
            || f.cols() != t2.cols()
            || g.rows() != t2.rows()
            || g.cols() != t1.cols()
        {
            return Err(Error::ShapeMismatch(
                "blocks of [[T1, F], [G, T2]] do not fit".into(),
            ));
        }
        t1.hstack(&f).vstack(&g.hstack(&t2))
    };
    if t.rows() != t.cols() {
        return Err(Error::NotSquare {
            rows: t.rows(),
            cols: t.cols(),
        });
    }
    Ok(t)
}

pub fn grassmann_to_json(point: &GrassmannPoint, with_pluecker: bool) -> Value {
    let mut v = json!({
        "subspace_dim": point.subspace_dim(),
        "ambient_dim": point.ambient_dim(),
        "canonical_basis": matrix_to_json(point.canonical_basis()),
        "pivots": point.pivots(),
    });
    if with_pluecker {
        v["pluecker"] = Value::Array(point.pluecker().iter().map(rational_to_json).collect());
    }
    v
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::fixtures;
    use crate::realization::left_coprime_mfd;
    use crate::sample;

    fn round_trip(file: SystemFile) {
        let text = serde_json::to_string(&file.to_json()).unwrap();
        assert_eq!(SystemFile::parse(&text).unwrap(), file);
    }

    #[test]
    fn hompoly_format() {
        let f = HomPoly::from_i64(&[1, 0, -1]);
        let v = hompoly_to_json(&f);
        assert_eq!(
            v,
            json!({"degree": 2, "terms": [["1", 2, 0], ["-1", 0, 2]]})
        );
        assert_eq!(hompoly_from_json(&v).unwrap(), f);
        assert!(hompoly_from_json(&json!({"degree": 2, "terms": [["1", 1, 0]]})).is_err());
        assert_eq!(
            hompoly_from_json(&json!({"degree": 1, "terms": [["1/2", 1, 0], [3, 0, 1]]}))
                .unwrap()
                .coeffs()[0],
            crate::poly::frac(1, 2)
        );
    }

    #[test]
    fn fixture_round_trips() {
        round_trip(SystemFile::Ar(fixtures::degenerate_stable_system()));
        let ss = StateSpace::strictly_proper(
            RatMatrix::from_i64(&[&[0, 1], &[0, 0]]),
            RatMatrix::from_i64(&[&[0], &[1]]),
            RatMatrix::from_i64(&[&[1, 0]]),
        )
        .unwrap();
        round_trip(SystemFile::Mfd(left_coprime_mfd(&ss).unwrap()));
        round_trip(SystemFile::Pencil(PencilSystem::from_state_space(&ss)));
        round_trip(SystemFile::StateSpace(ss));
        round_trip(SystemFile::Transform(RatMatrix::from_i64(&[
            &[1, 2],
            &[3, 4],
        ])));
    }

    #[test]
    fn empty_state_space() {
        let ss = StateSpace::new(
            RatMatrix::zeros(0, 0),
            RatMatrix::zeros(0, 2),
            RatMatrix::zeros(1, 0),
            RatMatrix::from_i64(&[&[1, 2]]),
        )
        .unwrap();
        round_trip(SystemFile::StateSpace(ss));
    }

    #[test]
    fn block_transform() {
        let v = json!({"kind": "transform", "T1": [["1"]], "F": [["2"]], "T2": [["3"]]});
        let SystemFile::Transform(t) = SystemFile::from_json(&v).unwrap() else {
            panic!()
        };
        assert_eq!(t, RatMatrix::from_i64(&[&[1, 2], &[0, 3]]));
        let bad = json!({"kind": "transform", "T1": [["1"]], "F": [["2", "1"]], "T2": [["3"]]});
        assert!(SystemFile::from_json(&bad).is_err());
    }

    #[test]
    fn rejects_malformed() {
        assert!(SystemFile::parse("{").is_err());
        assert!(SystemFile::parse(r#"{"kind": "nope"}"#).is_err());
        assert!(SystemFile::parse(r#"{"kind": "ar", "m": 1, "p": 1, "row_degrees": [1], "P": [[{"degree": 1, "terms": [["1/0", 1, 0]]}]]}"#).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn random_round_trips(seed in any::<u64>(), n in 1usize..4, m in 1usize..3, p in 1usize..3) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let ss = sample::random_state_space(&mut rng, n, m, p, true, 5);
            round_trip(SystemFile::Pencil(PencilSystem::from_state_space(&ss)));
            round_trip(SystemFile::Mfd(left_coprime_mfd(&ss).unwrap()));
            round_trip(SystemFile::StateSpace(ss));
            round_trip(SystemFile::Ar(sample::random_ar(&mut rng, m, &sample::balanced_degrees(n, p), 5)));
            round_trip(SystemFile::Transform(sample::random_invertible(&mut rng, m + p, 5)));
        }
    }
}
