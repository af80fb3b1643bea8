use crate::input::{self, InputError};
use relhom::algebra::{
    homology, ss_converges, ss_page, Coefficients, ExactnessReport, Field, HomologyResult, Orientation, PrimeField,
    Rationals, SSPage,
};
use relhom::category::{
    adjunction_from_galois, category_homology, cograph, fiber_coefficient_homology, graph, loop_free_check,
    profunctor_double_complex, profunctor_from_adjunction, verify_les_profunctor, CoefficientSide, FiniteCategory,
    ProfunctorData,
};
use relhom::cosheaf::{cosheaf_homology, global_cosection, homology_cosheaf, relation_cosheaf, relational_double_complex};
use relhom::random;
use relhom::relational::{
    cover_nerve, dowker_complex, dowker_galois, good_cover_check, induced_complex_relation, relational_join,
    relational_product, verify_les_relational, ComplexRelation, Cover, Relation, Side,
};
use relhom::simplicial::{contractibility_certificate, fiber, galois_check, order_complex, FiberSide, SimplicialComplex};
use serde_json::{json, Map, Value};
use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CommandError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error("{0}")]
    Unsupported(String),
}

pub struct Settings {
    pub coeff: Coefficients,
    pub seed: u64,
    pub max_degree: Option<usize>,
    pub verbose: bool,
}

/// A finished run: the verdict decides the exit status, the body is the report.
pub struct Report {
    pub verdict: bool,
    pub body: Map<String, Value>,
}

impl Report {
    fn new(command: &str, verdict: bool, s: &Settings) -> Self {
        let mut body = Map::new();
        body.insert("command".into(), json!(command));
        body.insert("coefficients".into(), json!(s.coeff.to_string()));
        body.insert("verdict".into(), json!(verdict));
        Report { verdict, body }
    }

    fn with(mut self, key: &str, v: Value) -> Self {
        self.body.insert(key.into(), v);
        self
    }
}

/// Field used for field-only computations: the chosen prime field, or Q otherwise.
enum FieldChoice {
    Q(Rationals),
    P(PrimeField),
}

fn field_of(c: Coefficients) -> FieldChoice {
    match c {
        Coefficients::Prime(p) => FieldChoice::P(PrimeField::new(p).expect("validated when parsed")),
        _ => FieldChoice::Q(Rationals),
    }
}

macro_rules! with_field {
    ($coeff:expr, |$f:ident| $body:expr) => {
        match field_of($coeff) {
            FieldChoice::Q(ref $f) => $body,
            FieldChoice::P(ref $f) => $body,
        }
    };
}

fn field_name(c: Coefficients) -> String {
    match c {
        Coefficients::Prime(_) => c.to_string(),
        _ => "Q".into(),
    }
}

fn homology_json(h: &HomologyResult) -> Value {
    let degrees: Vec<Value> = h
        .degrees
        .iter()
        .map(|d| {
            let torsion: Vec<String> = d.torsion.iter().map(|t| t.to_string()).collect();
            json!({"degree": d.degree, "betti": d.betti, "torsion": torsion})
        })
        .collect();
    json!({"betti": h.betti_numbers(), "degrees": degrees})
}

fn complex_json(k: &SimplicialComplex, verbose: bool) -> Value {
    let mut m = Map::new();
    m.insert("counts".into(), json!(k.counts()));
    m.insert("euler_characteristic".into(), json!(k.euler_characteristic()));
    if verbose {
        let facets: Vec<String> = k.facets().into_iter().map(|f| k.name(f)).collect();
        m.insert("facets".into(), json!(facets));
    }
    Value::Object(m)
}

fn page_json(p: &SSPage) -> Value {
    let cells: Vec<Value> = p.nonzero().into_iter().map(|((a, b), d)| json!([a, b, d])).collect();
    json!(cells)
}

fn les_json(r: &ExactnessReport) -> Value {
    let degrees: Vec<Value> = r
        .degrees
        .iter()
        .map(|d| {
            json!({
                "degree": d.degree,
                "dims": [d.first, d.middle, d.last],
                "ranks": [d.rank_alpha, d.rank_beta],
                "exact": d.composite_zero && d.exact_at_middle && d.connecting_fits,
            })
        })
        .collect();
    json!({"exact": r.exact, "degrees": degrees})
}

fn hz(k: &SimplicialComplex, c: Coefficients) -> HomologyResult {
    homology(&k.chain_complex(), c).expect("simplicial chain complexes are valid")
}

fn read(path: &PathBuf) -> Result<(String, String), InputError> {
    Ok((path.display().to_string(), input::read(path)?))
}

/// Relation from a CSV file, or a seeded random one when no file is given.
pub fn load_relation(path: Option<&PathBuf>, s: &Settings) -> Result<Relation, CommandError> {
    match path {
        Some(p) => {
            let (name, text) = read(p)?;
            Ok(input::parse_relation(&name, &text)?)
        }
        None => Ok(random::random_relation(&mut random::rng(s.seed), 6, 6, 0.4)),
    }
}

#[derive(Default)]
pub struct ComplexSource {
    pub relation: Option<PathBuf>,
    pub cover: Option<PathBuf>,
    pub source: Option<PathBuf>,
    pub target: Option<PathBuf>,
    pub generators: Option<PathBuf>,
}

pub fn load_complex_relation(src: &ComplexSource, s: &Settings) -> Result<ComplexRelation, CommandError> {
    if let Some(p) = &src.cover {
        let (name, text) = read(p)?;
        return Ok(cover_nerve(&input::parse_cover(&name, &text)?).1);
    }
    match (&src.source, &src.target, &src.generators) {
        (Some(k), Some(m), Some(g)) => {
            let (kn, kt) = read(k)?;
            let (mn, mt) = read(m)?;
            let (gn, gt) = read(g)?;
            let k = input::parse_complex(&kn, &kt)?;
            let m = input::parse_complex(&mn, &mt)?;
            Ok(input::parse_generators(&gn, &gt, k, m)?)
        }
        (None, None, None) => Ok(induced_complex_relation(&load_relation(src.relation.as_ref(), s)?)),
        _ => Err(CommandError::Unsupported("--source, --target and --generators go together".into())),
    }
}

pub fn dowker(r: &Relation, s: &Settings) -> Report {
    let da = dowker_complex(r, Side::Source);
    let dx = dowker_complex(r, Side::Target);
    let (ha, hx) = (hz(&da, s.coeff), hz(&dx, s.coeff));
    Report::new("dowker", ha.signature(0) == hx.signature(0), s)
        .with("rows", json!(r.rows().len()))
        .with("columns", json!(r.cols().len()))
        .with("pairs", json!(r.pairs().len()))
        .with("source_complex", complex_json(&da, s.verbose))
        .with("target_complex", complex_json(&dx, s.verbose))
        .with("source_homology", homology_json(&ha))
        .with("target_homology", homology_json(&hx))
}

pub fn galois(r: &Relation, s: &Settings) -> Result<Report, CommandError> {
    let (l, u) = dowker_galois(r).map_err(|e| CommandError::Unsupported(e.to_string()))?;
    let verdict = galois_check(&l, &u).map_err(|e| CommandError::Unsupported(e.to_string()))?;
    let map_json = |m: &relhom::simplicial::PosetMap| {
        let mut o = Map::new();
        for i in 0..m.source().len() {
            o.insert(m.source().label(i).to_string(), json!(m.target().label(m.apply(i))));
        }
        Value::Object(o)
    };
    let lower_cones = (0..l.target().len()).filter(|&q| contractibility_certificate(&fiber(&l, q, FiberSide::Below)).is_cone()).count();
    let upper_cones = (0..u.target().len()).filter(|&p| contractibility_certificate(&fiber(&u, p, FiberSide::Above)).is_cone()).count();
    let hp = homology(&order_complex(l.source()).chain_complex(), s.coeff).expect("valid");
    let hq = homology(&order_complex(l.target()).chain_complex(), s.coeff).expect("valid");
    let check = match &verdict {
        relhom::simplicial::GaloisVerdict::Holds => json!("holds"),
        relhom::simplicial::GaloisVerdict::Fails { source, target } => json!({"fails_at": [source, target]}),
    };
    Ok(Report::new("galois", verdict.holds(), s)
        .with("lower", map_json(&l))
        .with("upper", map_json(&u))
        .with("galois_check", check)
        .with("cone_fibers", json!({"lower": [lower_cones, l.target().len()], "upper": [upper_cones, u.target().len()]}))
        .with("source_poset_homology", homology_json(&hp))
        .with("target_poset_homology", homology_json(&hq)))
}

pub fn join(cr: &ComplexRelation, s: &Settings) -> Report {
    let j = relational_join(cr);
    let prod = relational_product(cr);
    let chi = cr.source().euler_characteristic() + cr.target().euler_characteristic() - prod.euler_characteristic();
    Report::new("join", j.euler_characteristic() == chi, s)
        .with("pairs", json!(cr.len()))
        .with("join", complex_json(&j, s.verbose))
        .with("join_homology", homology_json(&hz(&j, s.coeff)))
        .with("euler_check", json!({"join": j.euler_characteristic(), "source_plus_target_minus_product": chi}))
}

pub fn product(cr: &ComplexRelation, s: &Settings) -> Report {
    let prod = relational_product(cr);
    let cellular = homology(&prod.chain_complex(), s.coeff).expect("valid");
    let subdivided = homology(&order_complex(&prod.face_poset()).chain_complex(), s.coeff).expect("valid");
    Report::new("product", cellular.signature(0) == subdivided.signature(0), s)
        .with("pairs", json!(cr.len()))
        .with("cell_counts", json!(prod.counts()))
        .with("euler_characteristic", json!(prod.euler_characteristic()))
        .with("product_homology", homology_json(&cellular))
        .with("subdivision_homology", homology_json(&subdivided))
}

pub fn les(cr: &ComplexRelation, s: &Settings) -> Result<Report, CommandError> {
    let r = with_field!(s.coeff, |f| verify_les_relational(f, cr)).map_err(|e| CommandError::Unsupported(e.to_string()))?;
    let prod = homology(&relational_product(cr).chain_complex(), s.coeff).expect("valid");
    Ok(Report::new("les", r.exact, s)
        .with("field", json!(field_name(s.coeff)))
        .with("sequence", les_json(&r))
        .with("product_homology", homology_json(&prod)))
}

fn pages<F: Field>(f: &F, dc: &relhom::algebra::DoubleComplex) -> Result<(bool, Value), CommandError> {
    let err = |e: relhom::algebra::AlgebraError| CommandError::Unsupported(e.to_string());
    let report = ss_converges(f, dc).map_err(err)?;
    let mut out = Map::new();
    for (name, o, stable, limit) in [
        ("columns_first", Orientation::ColumnsFirst, report.columns_stable_page, &report.columns_limit),
        ("rows_first", Orientation::RowsFirst, report.rows_stable_page, &report.rows_limit),
    ] {
        let e1 = ss_page(f, dc, 1, o).map_err(err)?;
        let e2 = ss_page(f, dc, 2, o).map_err(err)?;
        out.insert(
            name.into(),
            json!({"E1": page_json(&e1), "E2": page_json(&e2), "limit": page_json(limit), "stable_page": stable}),
        );
    }
    let totals: Vec<Value> = report
        .degrees
        .iter()
        .map(|d| json!({"degree": d.degree, "columns": d.columns_limit, "rows": d.rows_limit, "total": d.total}))
        .collect();
    out.insert("antidiagonals".into(), json!(totals));
    out.insert("converges".into(), json!(report.converges));
    Ok((report.converges, Value::Object(out)))
}

pub fn ss(cr: &ComplexRelation, augmented: bool, s: &Settings) -> Result<Report, CommandError> {
    let dc = relational_double_complex(cr, augmented);
    let (ok, body) = with_field!(s.coeff, |f| pages(f, &dc))?;
    Ok(Report::new("ss", ok, s)
        .with("field", json!(field_name(s.coeff)))
        .with("augmented", json!(augmented))
        .with("spectral_sequences", body))
}

pub fn cosheaf(cr: &ComplexRelation, s: &Settings) -> Report {
    let c = relation_cosheaf(cr, Side::Source);
    let global = global_cosection(&c);
    let matches = global.label_set() == cr.target().label_set();
    let top = cr.target().dim().max(0);
    let per_q: Vec<Value> = (0..=top)
        .map(|q| {
            let h = with_field!(s.coeff, |f| cosheaf_homology(f, &homology_cosheaf(f, &c, q)));
            json!({"fiber_degree": q, "betti": h.betti_numbers()})
        })
        .collect();
    let mut sections = Map::new();
    for id in c.base().ids() {
        let sec = c.section(id);
        sections.insert(c.base().name(id), json!(sec.counts()));
    }
    let mut r = Report::new("cosheaf", matches, s)
        .with("field", json!(field_name(s.coeff)))
        .with("cosheaf_homology", json!(per_q))
        .with("global_cosection", complex_json(&global, s.verbose))
        .with("global_cosection_is_target", json!(matches));
    if s.verbose {
        r = r.with("section_counts", Value::Object(sections));
    }
    r
}

pub fn nerve(cover: &Cover, s: &Settings) -> Result<Report, CommandError> {
    let (n, rel) = cover_nerve(cover);
    let certs: Vec<Value> = good_cover_check(cover)
        .into_iter()
        .map(|(names, c)| json!({"members": names, "certificate": format!("{c:?}")}))
        .collect();
    let good = relhom::relational::is_good_cover(cover);
    let (hk, hn) = (hz(cover.base(), s.coeff), hz(&n, s.coeff));
    let les = with_field!(s.coeff, |f| verify_les_relational(f, &rel)).map_err(|e| CommandError::Unsupported(e.to_string()))?;
    let agree = hk.signature(0) == hn.signature(0);
    Ok(Report::new("nerve", les.exact && (!good || agree), s)
        .with("nerve", complex_json(&n, s.verbose))
        .with("base_homology", homology_json(&hk))
        .with("nerve_homology", homology_json(&hn))
        .with("good_cover", json!(good))
        .with("intersections", json!(certs))
        .with("sequence", les_json(&les)))
}

pub fn cat(c: &FiniteCategory, s: &Settings) -> Result<Report, CommandError> {
    let lf = loop_free_check(c);
    let h = category_homology(c, s.coeff, s.max_degree).map_err(|e| {
        CommandError::Unsupported(format!("{e}; pass --max-degree to compute a truncated nerve"))
    })?;
    Ok(Report::new("cat", true, s)
        .with("objects", json!(c.objects().len()))
        .with("morphisms", json!(c.morphisms().len()))
        .with("loop_free", json!(lf.holds()))
        .with("approximate", json!(h.approximate))
        .with("homology", homology_json(&h.homology)))
}

pub fn profunctor_from_relation(r: &Relation) -> Result<ProfunctorData, CommandError> {
    let (l, u) = dowker_galois(r).map_err(|e| CommandError::Unsupported(e.to_string()))?;
    let a = adjunction_from_galois(&l, &u).map_err(|e| CommandError::Unsupported(e.to_string()))?;
    Ok(profunctor_from_adjunction(&a))
}

fn prof_field<F: Field>(f: &F, p: &ProfunctorData) -> Result<(bool, Value, Value, bool), CommandError> {
    let err = |e: relhom::category::CategoryError| CommandError::Unsupported(e.to_string());
    let les = verify_les_profunctor(f, p).map_err(err)?;
    let dc = profunctor_double_complex(p, false).map_err(err)?;
    let (conv, ss) = pages(f, &dc)?;
    let cols = ss_page(f, &dc, 2, Orientation::ColumnsFirst).map_err(|e| CommandError::Unsupported(e.to_string()))?;
    let top = cols.cells.keys().map(|&(a, b)| a.max(b)).max().unwrap_or(0).max(0) as usize;
    let mut e2_ok = true;
    for q in 0..=top {
        let h = fiber_coefficient_homology(f, p, CoefficientSide::First, q).map_err(err)?;
        for pp in 0..=top {
            e2_ok &= cols.dim(pp as i64, q as i64) == h.get(pp).copied().unwrap_or(0);
        }
    }
    Ok((les.exact, les_json(&les), ss, conv && e2_ok))
}

pub fn prof(p: &ProfunctorData, s: &Settings) -> Result<Report, CommandError> {
    let err = |e: relhom::category::CategoryError| CommandError::Unsupported(e.to_string());
    let hom = |c: &FiniteCategory| -> Result<Value, CommandError> {
        if c.objects().is_empty() {
            return Ok(json!({"betti": [], "degrees": []}));
        }
        Ok(homology_json(&category_homology(c, s.coeff, None).map_err(err)?.homology))
    };
    let (j, _, _) = cograph(p);
    let (g, _, _) = graph(p);
    let (exact, les, ss, ss_ok) = with_field!(s.coeff, |f| prof_field(f, p))?;
    Ok(Report::new("prof", exact && ss_ok, s)
        .with("field", json!(field_name(s.coeff)))
        .with("heteromorphisms", json!(p.hets().len()))
        .with("first_homology", hom(p.first())?)
        .with("second_homology", hom(p.second())?)
        .with("cograph_homology", hom(&j)?)
        .with("graph_homology", hom(&g)?)
        .with("sequence", les)
        .with("spectral_sequences", ss)
        .with("second_page_matches_fiber_coefficients", json!(ss_ok)))
}

/// Indented `key: value` rendering of a report; arrays of scalars stay on one line.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    write_text(v, 0, &mut out);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Object(_) => None,
        Value::Array(a) => {
            let parts: Option<Vec<String>> = a.iter().map(scalar).collect();
            parts.map(|p| format!("[{}]", p.join(", ")))
        }
        Value::String(s) => Some(s.clone()),
        other => Some(other.to_string()),
    }
}

/// One-line form of an object whose values are all scalars.
fn inline(v: &Value) -> Option<String> {
    let m = v.as_object()?;
    let parts: Option<Vec<String>> = m.iter().map(|(k, x)| scalar(x).map(|s| format!("{k}: {s}"))).collect();
    parts.map(|p| p.join(", "))
}

fn write_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        write_text(x, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                match scalar(x).or_else(|| inline(x)) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        write_text(x, indent + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}
