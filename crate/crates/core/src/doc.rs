//! JSON input documents: fields, algebras, quadratic forms, ideals, motive
//! expressions and K0 models. Every diagnostic names the JSON pointer of
//! the first offending value.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::Value;

use crate::algebra::{self, Algebra, Flags, GlobalDim, IdealBasis};
use crate::error::{Error, Result};
use crate::exactmath::field::parse_rational;
use crate::exactmath::{Field, FieldKind, Mat, Poly, Scalar};
use crate::k0ring::K0RingModel;
use crate::motives::{motive_atom, Atom, CoefficientRing, MotiveExpr};
use crate::quadform::{self, QuadraticForm};

/// What a document is expected to contain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DocKind {
    Field,
    Algebra,
    Form,
    K0Model,
    Expr,
}

#[derive(Clone, Debug)]
pub enum Document {
    Field(Field),
    Algebra(Algebra),
    Form(QuadraticForm),
    K0Model(K0RingModel),
    Expr(MotiveExpr),
}

pub fn parse_json(bytes: &[u8]) -> Result<Value> {
    serde_json::from_slice(bytes).map_err(|e| Error::Parse(e.to_string()))
}

/// Parses and validates a document of the given kind. Motive expressions
/// are built over `ring`.
pub fn parse_document(bytes: &[u8], kind: DocKind, ring: &CoefficientRing) -> Result<Document> {
    let v = parse_json(bytes)?;
    let n = Node::root(&v);
    Ok(match kind {
        DocKind::Field => Document::Field(field(&n)?),
        DocKind::Algebra => Document::Algebra(algebra_doc(&n)?),
        DocKind::Form => Document::Form(form(&n)?),
        DocKind::K0Model => Document::K0Model(k0_model(&n)?),
        DocKind::Expr => Document::Expr(expr(&n, ring)?),
    })
}

/// A value together with its JSON pointer.
#[derive(Clone)]
pub struct Node<'a> {
    pub value: &'a Value,
    pub path: String,
}

impl<'a> Node<'a> {
    pub fn root(value: &'a Value) -> Node<'a> {
        Node { value, path: String::new() }
    }

    fn err(&self, message: impl Into<String>) -> Error {
        let path = if self.path.is_empty() { "/".to_string() } else { self.path.clone() };
        Error::Schema { path, message: message.into() }
    }

    fn opt(&self, key: &str) -> Option<Node<'a>> {
        self.value.get(key).map(|value| Node { value, path: format!("{}/{}", self.path, escape(key)) })
    }

    fn get(&self, key: &str) -> Result<Node<'a>> {
        if !self.value.is_object() {
            return Err(self.err("expected an object"));
        }
        self.opt(key).ok_or_else(|| self.err(format!("missing key \"{key}\"")))
    }

    fn items(&self) -> Result<Vec<Node<'a>>> {
        let arr = self.value.as_array().ok_or_else(|| self.err("expected an array"))?;
        Ok(arr.iter().enumerate().map(|(i, value)| Node { value, path: format!("{}/{i}", self.path) }).collect())
    }

    fn items_len(&self, len: usize) -> Result<Vec<Node<'a>>> {
        let items = self.items()?;
        if items.len() != len {
            return Err(self.err(format!("expected {len} entries, found {}", items.len())));
        }
        Ok(items)
    }

    fn str(&self) -> Result<&'a str> {
        self.value.as_str().ok_or_else(|| self.err("expected a string"))
    }

    fn usize(&self) -> Result<usize> {
        self.value.as_u64().map(|x| x as usize).ok_or_else(|| self.err("expected a nonnegative integer"))
    }

    fn integer(&self) -> Result<BigInt> {
        match self.value {
            Value::Number(n) => n
                .as_i64()
                .map(BigInt::from)
                .or_else(|| n.as_u64().map(BigInt::from))
                .ok_or_else(|| self.err("expected an integer")),
            Value::String(s) => s.trim().parse().map_err(|_| self.err(format!("expected an integer, found {s:?}"))),
            _ => Err(self.err("expected an integer")),
        }
    }

    fn rational(&self) -> Result<BigRational> {
        match self.value {
            Value::Number(_) => self.integer().map(BigRational::from_integer),
            Value::String(s) => parse_rational(s).ok_or_else(|| self.err(format!("expected a rational \"num/den\", found {s:?}"))),
            _ => Err(self.err("expected a rational number")),
        }
    }
}

fn escape(key: &str) -> String {
    key.replace('~', "~0").replace('/', "~1")
}

/// `Q`, `F7` / `Fp7` / `GF7` shorthands used by inline flags.
pub fn field_from_name(s: &str) -> Result<Field> {
    let t = s.trim();
    if t == "Q" || t == "QQ" {
        return Ok(Field::rationals());
    }
    let digits = t.trim_start_matches("GF").trim_start_matches("Fp").trim_start_matches('F');
    match digits.parse::<u64>() {
        Ok(p) if digits.len() < t.len() => Field::prime(p),
        _ => Err(Error::InvalidArgument(format!("unknown field {s:?} (expected Q or F<p>)"))),
    }
}

pub fn field(n: &Node) -> Result<Field> {
    if let Value::String(s) = n.value {
        return field_from_name(s).map_err(|e| n.err(e.to_string()));
    }
    let kind = n.get("kind")?;
    match kind.str()? {
        "Q" => Ok(Field::rationals()),
        "Fp" => {
            let p = n.get("p")?;
            let pv = p.value.as_u64().ok_or_else(|| p.err("expected a prime"))?;
            Field::prime(pv).map_err(|e| p.err(e.to_string()))
        }
        "ext" => {
            let base = field(&n.get("base")?)?;
            let mp = n.get("minpoly")?;
            let coeffs = mp.items()?.iter().map(|c| scalar(&base, c)).collect::<Result<Vec<_>>>()?;
            Field::extension(&base, Poly::new(&base, coeffs)).map_err(|e| mp.err(e.to_string()))
        }
        other => Err(kind.err(format!("unknown field kind {other:?} (Q, Fp, ext)"))),
    }
}

/// Integers, `"num/den"` strings, or for extension fields a coefficient
/// list over the base.
pub fn scalar(f: &Field, n: &Node) -> Result<Scalar> {
    if let FieldKind::Extension { base, .. } = f.kind() {
        if let Value::Array(_) = n.value {
            let items = n.items_len(f.degree())?;
            let cs = items.iter().map(|c| scalar(base, c)).collect::<Result<Vec<_>>>()?;
            return Ok(f.from_poly(&Poly::new(base, cs)));
        }
        return Ok(f.embed(&scalar(base, n)?));
    }
    let q = n.rational()?;
    f.from_rational(&q).map_err(|e| n.err(e.to_string()))
}

fn vector(f: &Field, n: &Node, len: usize) -> Result<Vec<Scalar>> {
    n.items_len(len)?.iter().map(|c| scalar(f, c)).collect()
}

fn gldim(n: &Node) -> Result<GlobalDim> {
    match n.str()? {
        "yes" => Ok(GlobalDim::Yes),
        "no" => Ok(GlobalDim::No),
        "unknown" => Ok(GlobalDim::Unknown),
        other => Err(n.err(format!("expected yes, no or unknown, found {other:?}"))),
    }
}

/// Either a structure-constant table document or a `{"make": ...}`
/// constructor shorthand.
pub fn algebra_doc(n: &Node) -> Result<Algebra> {
    let a = if n.opt("make").is_some() { make(n)? } else { table(n)? };
    let a = match n.opt("label") {
        Some(l) => a.with_label(l.str()?),
        None => a,
    };
    match n.opt("flags").and_then(|f| f.opt("finite_global_dimension")) {
        Some(g) if n.opt("make").is_some() => {
            let provenance = a.flags().provenance.clone();
            Ok(a.with_flags(Flags::new(gldim(&g)?, provenance)))
        }
        _ => Ok(a),
    }
}

fn table(n: &Node) -> Result<Algebra> {
    let f = field(&n.get("field")?)?;
    let dim_node = n.get("dim")?;
    let dim = dim_node.usize()?;
    if dim == 0 || dim > algebra::MAX_DIM {
        return Err(dim_node.err(format!("dim must be in 1..={}", algebra::MAX_DIM)));
    }
    let t = n.get("table")?;
    let mut dense = Vec::with_capacity(dim);
    for row in t.items_len(dim)? {
        let mut r = Vec::with_capacity(dim);
        for v in row.items_len(dim)? {
            r.push(vector(&f, &v, dim)?);
        }
        dense.push(r);
    }
    let unit = vector(&f, &n.get("unit")?, dim)?;
    let g = match n.opt("flags").and_then(|fl| fl.opt("finite_global_dimension")) {
        Some(g) => gldim(&g)?,
        None => GlobalDim::Unknown,
    };
    let label = match n.opt("label") {
        Some(l) => l.str()?.to_string(),
        None => "A".to_string(),
    };
    Algebra::from_dense(&f, &dense, unit, Flags::new(g, "custom"), label).map_err(|e| match e {
        Error::InvalidStructureConstants(m) => Error::InvalidStructureConstants(format!("{m} (at {}/table)", n.path)),
        e => e,
    })
}

fn make(n: &Node) -> Result<Algebra> {
    let name_node = n.get("make")?;
    let name = name_node.str()?;
    let f = match n.opt("field") {
        Some(fnode) => field(&fnode)?,
        None => Field::rationals(),
    };
    let size = |key: &str| -> Result<usize> { n.get(key)?.usize() };
    let sub = |key: &str| -> Result<Algebra> { algebra_doc(&n.get(key)?) };
    let with_path = |r: Result<Algebra>| r.map_err(|e| argument_at(n, e));
    match name {
        "matrix" => with_path(algebra::matrix(&f, size("n")?)),
        "field" => with_path(algebra::field_algebra(&f)),
        "quaternion" => {
            let a = scalar(&f, &n.get("a")?)?;
            let b = scalar(&f, &n.get("b")?)?;
            with_path(algebra::quaternion(&f, &a, &b))
        }
        "path" => {
            let vertices = size("vertices")?;
            let mut arrows = Vec::new();
            for arrow in n.get("arrows")?.items()? {
                let st = arrow.items_len(2)?;
                arrows.push((st[0].usize()?, st[1].usize()?));
            }
            with_path(algebra::path_algebra(&f, vertices, &arrows))
        }
        "kronecker" => with_path(algebra::kronecker(&f)),
        "upper_triangular" => with_path(algebra::upper_triangular(&f, size("n")?)),
        "poly_quotient" => {
            let cs = n.get("poly")?.items()?.iter().map(|c| scalar(&f, c)).collect::<Result<Vec<_>>>()?;
            with_path(algebra::poly_quotient(&f, &Poly::new(&f, cs)))
        }
        "dual_numbers" => with_path(algebra::dual_numbers(&f)),
        "cyclic_group" => with_path(algebra::cyclic_group_algebra(&f, size("n")?)),
        "weyl_fiber" => {
            let p = n.get("p")?.value.as_u64().ok_or_else(|| n.err("p must be a prime"))?;
            let small = |key: &str| -> Result<i64> {
                match n.opt(key) {
                    Some(v) => v.value.as_i64().ok_or_else(|| v.err("expected an integer")),
                    None => Ok(0),
                }
            };
            with_path(algebra::weyl_fiber(p, small("a")?, small("b")?))
        }
        "triangular_t" => with_path(algebra::triangular_t(&sub("of")?)),
        "opposite" => Ok(algebra::opposite(&sub("of")?)),
        "product" | "tensor" => {
            let factors = n.get("factors")?;
            let mut it = factors.items()?.into_iter();
            let first = it.next().ok_or_else(|| factors.err("expected at least one factor"))?;
            let mut acc = algebra_doc(&first)?;
            for g in it {
                let b = algebra_doc(&g)?;
                acc = if name == "product" { algebra::product(&acc, &b) } else { algebra::tensor(&acc, &b) }
                    .map_err(|e| argument_at(&g, e))?;
            }
            Ok(acc)
        }
        "clifford" | "even_clifford" => {
            let q = form(&n.get("form")?)?;
            if name == "clifford" {
                quadform::clifford(&q)
            } else {
                quadform::even_clifford(&q)
            }
        }
        other => Err(name_node.err(format!(
            "unknown constructor {other:?} (matrix, field, quaternion, path, kronecker, upper_triangular, \
             poly_quotient, dual_numbers, cyclic_group, weyl_fiber, triangular_t, opposite, product, tensor, \
             clifford, even_clifford)"
        ))),
    }
}

/// Attaches the document path to argument errors from constructors.
fn argument_at(n: &Node, e: Error) -> Error {
    match e {
        Error::InvalidArgument(m) => n.err(m),
        e => e,
    }
}

pub fn form(n: &Node) -> Result<QuadraticForm> {
    let f = field(&n.get("field")?)?;
    if let Some(d) = n.opt("diag") {
        let diag = d.items()?.iter().map(|c| scalar(&f, c)).collect::<Result<Vec<_>>>()?;
        if diag.is_empty() {
            return Err(d.err("a form needs at least one entry"));
        }
        return QuadraticForm::diagonal(&f, &diag).map_err(|e| argument_at(&d, e));
    }
    let g = n.get("gram").map_err(|_| n.err("expected \"diag\" or \"gram\""))?;
    let rows = g.items()?;
    let size = rows.len();
    let m = rows.iter().map(|r| vector(&f, r, size)).collect::<Result<Vec<_>>>()?;
    if size == 0 {
        return Err(g.err("a form needs at least one entry"));
    }
    QuadraticForm::new(&f, Mat::from_rows(&f, m)).map_err(|e| argument_at(&g, e))
}

/// `{"basis": [[...], ...]}` or a bare list of vectors, in the
/// coordinates of `a`.
pub fn ideal(n: &Node, a: &Algebra) -> Result<IdealBasis> {
    let list = n.opt("basis").unwrap_or_else(|| n.clone());
    let vs = list.items()?.iter().map(|v| vector(a.field(), v, a.dim())).collect::<Result<Vec<_>>>()?;
    IdealBasis::new(a, vs)
}

/// A list of `{"atom": ..., "coeff": "a/b"}`, optionally wrapped as
/// `{"terms": [...]}`. Atoms are algebra documents, `{"field_minpoly":
/// [...], "field": ...}`, or `{"tensor_power": <algebra>, "exponent": i}`.
pub fn expr(n: &Node, ring: &CoefficientRing) -> Result<MotiveExpr> {
    let list = match n.value {
        Value::Array(_) => n.clone(),
        _ => n.get("terms")?,
    };
    let mut e = MotiveExpr::zero(ring);
    for term in list.items()? {
        let atom_node = term.get("atom")?;
        let c = match term.opt("coeff") {
            Some(c) => c.rational()?,
            None => BigRational::from_integer(1.into()),
        };
        let piece = if let Some(mp) = atom_node.opt("field_minpoly") {
            let f = field(&atom_node.get("field")?)?;
            let cs = mp.items()?.iter().map(|c| scalar(&f, c)).collect::<Result<Vec<_>>>()?;
            MotiveExpr::atom(ring, Atom::field_from_minpoly(&f, &Poly::new(&f, cs)).map_err(|e| argument_at(&mp, e))?)
        } else if let Some(base) = atom_node.opt("tensor_power") {
            let a = algebra_doc(&base)?;
            let exp = atom_node.get("exponent")?;
            let i = exp.usize()?;
            if i < 1 {
                return Err(exp.err("exponent must be at least 1"));
            }
            if i == 1 {
                motive_atom(&a, ring)
            } else {
                MotiveExpr::atom(ring, Atom::TensorPower { base: a.into(), exponent: i as u32 })
            }
        } else {
            motive_atom(&algebra_doc(&atom_node)?, ring)
        };
        let scaled = piece.scale(&c).map_err(|err| match err {
            Error::CoefficientDenominator { .. } => term.err(err.to_string()),
            err => err,
        })?;
        e = e.add(&scaled)?;
    }
    Ok(e)
}

/// Either `{"builtin": "P1"}` or a full presentation
/// `{"free_rank", "torsion", "mult", "unit", "rank_map", "label"}`.
pub fn k0_model(n: &Node) -> Result<K0RingModel> {
    if let Some(b) = n.opt("builtin") {
        return K0RingModel::builtin(b.str()?).map_err(|e| argument_at(&b, e));
    }
    let g = n.get("free_rank")?.usize()?;
    let torsion = match n.opt("torsion") {
        Some(t) => t.items()?.iter().map(|c| c.integer()).collect::<Result<Vec<_>>>()?,
        None => Vec::new(),
    };
    let len = g + torsion.len();
    let ints = |node: &Node, len: usize| -> Result<Vec<BigInt>> {
        node.items_len(len)?.iter().map(|c| c.integer()).collect()
    };
    let mult_node = n.get("mult")?;
    let mut mult = Vec::with_capacity(len);
    for row in mult_node.items_len(len)? {
        let mut r = Vec::with_capacity(len);
        for v in row.items_len(len)? {
            r.push(ints(&v, len)?);
        }
        mult.push(r);
    }
    let unit = ints(&n.get("unit")?, len)?;
    let rm = n.get("rank_map")?;
    let rank_map = rm.items()?.iter().map(|r| ints(r, len)).collect::<Result<Vec<_>>>()?;
    if rank_map.is_empty() {
        return Err(rm.err("rank map needs at least one row"));
    }
    let label = match n.opt("label") {
        Some(l) => l.str()?.to_string(),
        None => "custom".to_string(),
    };
    K0RingModel::new(label, g, torsion, mult, unit, rank_map).map_err(|e| argument_at(n, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(kind: DocKind, s: &str) -> Result<Document> {
        parse_document(s.as_bytes(), kind, &CoefficientRing::integers())
    }

    #[test]
    fn make_matrix() {
        let Document::Algebra(a) = parse(DocKind::Algebra, r#"{"make":"matrix","n":2,"field":{"kind":"Q"}}"#).unwrap()
        else {
            panic!()
        };
        assert_eq!(a.dim(), 4);
    }

    #[test]
    fn diagonal_form() {
        let Document::Form(q) = parse(DocKind::Form, r#"{"field":{"kind":"Q"},"diag":[1,1,1]}"#).unwrap() else {
            panic!()
        };
        assert_eq!(q.dim(), 3);
    }

    #[test]
    fn malformed_mult_names_its_path() {
        let err = parse(DocKind::K0Model, r#"{"free_rank":2,"mult":[[1,0]],"unit":[1,0],"rank_map":[[1,0]]}"#)
            .unwrap_err();
        match err {
            Error::Schema { path, .. } => assert_eq!(path, "/mult"),
            e => panic!("{e:?}"),
        }
        let err = parse(DocKind::K0Model, r#"{"free_rank":2,"mult":"x","unit":[1,0],"rank_map":[[1,0]]}"#).unwrap_err();
        assert!(matches!(err, Error::Schema { ref path, .. } if path == "/mult"));
        let err = parse(DocKind::K0Model, r#"{"free_rank":1,"mult":[[["a"]]],"unit":[1],"rank_map":[[1]]}"#).unwrap_err();
        assert!(matches!(err, Error::Schema { ref path, .. } if path == "/mult/0/0/0"));
    }

    #[test]
    fn table_document_round_trip() {
        let doc = r#"{"field":{"kind":"Fp","p":2},"dim":2,
            "table":[[[1,0],[0,1]],[[0,1],[0,0]]],"unit":[1,0],
            "flags":{"finite_global_dimension":"no"},"label":"F2[e]"}"#;
        let Document::Algebra(a) = parse(DocKind::Algebra, doc).unwrap() else { panic!() };
        assert_eq!(a.flags().finite_global_dimension, GlobalDim::No);
        assert!(a.table_eq(&algebra::dual_numbers(&Field::prime(2).unwrap()).unwrap()));
    }

    #[test]
    fn bad_unit_is_rejected() {
        // the declared unit b1 does not act as the identity
        let doc = r#"{"field":{"kind":"Q"},"dim":2,"table":[[[1,0],[0,1]],[[0,1],[1,0]]],"unit":[0,1]}"#;
        assert!(matches!(parse(DocKind::Algebra, doc), Err(Error::InvalidStructureConstants(_))));
    }

    #[test]
    fn bad_json_and_fields() {
        assert!(matches!(parse(DocKind::Field, "{"), Err(Error::Parse(_))));
        assert!(matches!(parse(DocKind::Field, r#"{"kind":"Fp","p":6}"#), Err(Error::Schema { .. })));
        let Document::Field(f) = parse(DocKind::Field, r#"{"kind":"ext","base":{"kind":"Q"},"minpoly":[1,0,1]}"#).unwrap()
        else {
            panic!()
        };
        assert_eq!(f.degree(), 2);
        assert_eq!(field_from_name("F7").unwrap().characteristic(), 7);
        assert!(field_from_name("R").is_err());
    }

    #[test]
    fn expressions() {
        let ring = CoefficientRing::inverting(&[2]).unwrap();
        let doc = r#"[{"atom":{"make":"field"},"coeff":"1/2"},{"atom":{"make":"matrix","n":2},"coeff":1}]"#;
        let Document::Expr(e) = parse_document(doc.as_bytes(), DocKind::Expr, &ring).unwrap() else { panic!() };
        assert_eq!(e.render(), "1/2*U(Q) + U(M_2(Q))");
        let err = parse(DocKind::Expr, r#"[{"atom":{"make":"field"},"coeff":"1/2"}]"#).unwrap_err();
        assert!(matches!(err, Error::Schema { ref path, .. } if path == "/0"));
    }
}
