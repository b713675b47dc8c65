use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Subcommand};
use k3rm::cliffordks::{check_riemann, default_seed, trace_pairing, KSStructure, MAX_RIEMANN_GENERATORS};
use k3rm::cores::build_cores_embedding;
use k3rm::field::{format_rational, Field, OrderedField, Rationals, Q};
use k3rm::matrix;
use k3rm::numfield::{power_basis_discriminant, quadratic_sqrt, Embedding, NumberField};
use k3rm::quadform::{det_square_class, qform_diagonal, signature, QBilinearForm};
use k3rm::rmhodge::{
    build_double_cover_example, check_sign_pattern, construct_period, construct_rm_structure,
    det_class_identity, double_cover_with, embedding_signatures, is_polarization, recover_f_bilinear,
    simplicity_check, trace_form, twist_det_identity, twist_polarization, PeriodData, RMStructure, Simplicity,
};
use k3rm::serial::{
    format_element, lattice_to_json, matrix_to_json, parse_element, parse_element_list, parse_rational_matrix,
    structure_constants_to_json, vector_to_json, weights_to_json, NumberFieldJson, RMStructureJson,
};
use k3rm::spinbranch::{check_branching, decompose_sl2k, wedge2};
use k3rm::zlattice::{
    discriminant_group, int_mul, is_primitive_embedding, orthogonal_complement, smith_normal_form, IntegerLattice,
};
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::input::{parse_field, parse_int_matrix, parse_lattice, parse_vector, read_structure};
use crate::report::Report;
use crate::show::Show;

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build V = F^m with ψ = tr ∘ diag(a_1, …, a_m).
    ConstructRm(ConstructRm),
    /// Twist ψ by a field element and decide whether ψ_a is a polarization.
    Twist(Twist),
    /// Signatures, determinant classes and the recovered F-bilinear form.
    Invariants(StructureArgs),
    /// Construct a period in the special eigenspace.
    Period(StructureArgs),
    /// Decide whether the Hodge structure of a period is simple.
    Simplicity(PeriodArgs),
    /// Kuga-Satake complex structure J and a Riemann form on C⁺.
    Ks(KsArgs),
    /// Restrict the spin representation of so(nm) to so(m)^n.
    SpinBranch(SpinBranch),
    /// Corestriction of C⁺_F(Φ) and its embedding into C⁺(ψ).
    Cores(CoresArgs),
    /// Integral lattice utilities.
    #[command(subcommand)]
    Lattice(LatticeCommand),
    /// The double-cover example over Q(√d).
    ExampleDoubleCover(DoubleCover),
}

#[derive(Args, Debug)]
pub struct ConstructRm {
    /// "Q", a radicand d for Q(√d), or a monic polynomial such as "x^3 - 3x + 1".
    #[arg(long)]
    pub field: String,
    #[arg(long)]
    pub m: usize,
    /// Diagonal coefficients separated by ';', in the generator a.
    #[arg(long)]
    pub a: String,
    /// Special embedding index (0-based); found from the signs of a if omitted.
    #[arg(long)]
    pub eps: Option<usize>,
    /// Also write the structure JSON to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct StructureArgs {
    /// Structure JSON as written by construct-rm.
    #[arg(long)]
    pub structure: PathBuf,
    /// Special embedding index; the embedding with a negative plane if omitted.
    #[arg(long)]
    pub eps: Option<usize>,
}

#[derive(Args, Debug)]
pub struct Twist {
    #[command(flatten)]
    pub base: StructureArgs,
    /// Twisting element, in the generator a.
    #[arg(long)]
    pub a: String,
}

#[derive(Args, Debug)]
pub struct PeriodArgs {
    #[arg(long, conflicts_with = "psi")]
    pub structure: Option<PathBuf>,
    #[arg(long, requires = "structure")]
    pub eps: Option<usize>,
    /// Rational Gram matrix, e.g. "diag(1,-1,-1,1)" or a JSON matrix.
    #[arg(long, requires_all = ["x", "y"])]
    pub psi: Option<String>,
    /// Period real part: "e3" or a comma-separated rational vector.
    #[arg(long)]
    pub x: Option<String>,
    /// Period imaginary part.
    #[arg(long)]
    pub y: Option<String>,
}

#[derive(Args, Debug)]
pub struct KsArgs {
    #[command(flatten)]
    pub period: PeriodArgs,
    /// Riemann form seed vectors; the first negative pair of ψ if omitted.
    #[arg(long, requires = "e2")]
    pub e1: Option<String>,
    #[arg(long)]
    pub e2: Option<String>,
}

#[derive(Args, Debug)]
pub struct SpinBranch {
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub n: usize,
}

#[derive(Args, Debug)]
pub struct CoresArgs {
    /// Radicand d of the quadratic field.
    #[arg(long, conflicts_with = "structure")]
    pub field: Option<i64>,
    /// Diagonal of Φ separated by ';'.
    #[arg(long, requires = "field")]
    pub phi: Option<String>,
    #[arg(long)]
    pub eps: Option<usize>,
    #[arg(long)]
    pub structure: Option<PathBuf>,
    /// Include the structure constants of the corestriction.
    #[arg(long)]
    pub constants: bool,
}

#[derive(Subcommand, Debug)]
pub enum LatticeCommand {
    /// Smith normal form U·M·V = D.
    Snf(LatticeSource),
    /// Primitive basis of the orthogonal complement of a sublattice.
    Complement(Complement),
    /// Check that B maps T isometrically and primitively into L.
    EmbedCheck(EmbedCheck),
}

#[derive(Args, Debug)]
pub struct LatticeSource {
    /// Fixture name (U, U2, E8minus, LambdaK3, minus2).
    #[arg(long, conflicts_with = "matrix")]
    pub fixture: Option<String>,
    /// Integer matrix as JSON, or a file holding one.
    #[arg(long)]
    pub matrix: Option<String>,
}

#[derive(Args, Debug)]
pub struct Complement {
    /// Ambient lattice: fixture name, JSON Gram matrix or file.
    #[arg(long, default_value = "LambdaK3")]
    pub lattice: String,
    /// Rows spanning the sublattice, in the ambient basis.
    #[arg(long)]
    pub sub: String,
}

#[derive(Args, Debug)]
pub struct EmbedCheck {
    #[arg(long, default_value = "LambdaK3")]
    pub ambient: String,
    #[arg(long)]
    pub target: String,
    /// Rows are images of the basis of T in the ambient basis.
    #[arg(long)]
    pub map: String,
}

#[derive(Args, Debug)]
pub struct DoubleCover {
    /// Odd squarefree d > 1 that is a sum of two squares.
    #[arg(long)]
    pub d: i64,
    /// Decomposition d = e² + c²; the smallest e if omitted.
    #[arg(long, requires = "c")]
    pub e: Option<i64>,
    #[arg(long)]
    pub c: Option<i64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(cmd: &Command) -> Result<Report> {
    match cmd {
        Command::ConstructRm(a) => construct_rm(a),
        Command::Twist(a) => twist(a),
        Command::Invariants(a) => invariants(a),
        Command::Period(a) => period(a),
        Command::Simplicity(a) => simplicity(a),
        Command::Ks(a) => ks(a),
        Command::SpinBranch(a) => spin_branch(a),
        Command::Cores(a) => cores(a),
        Command::Lattice(LatticeCommand::Snf(a)) => lattice_snf(a),
        Command::Lattice(LatticeCommand::Complement(a)) => lattice_complement(a),
        Command::Lattice(LatticeCommand::EmbedCheck(a)) => lattice_embed_check(a),
        Command::ExampleDoubleCover(a) => double_cover(a),
    }
}

fn sig_json(s: (usize, usize)) -> Value {
    json!([s.0, s.1])
}

fn write_structure(path: &Option<PathBuf>, s: &RMStructure) -> Result<()> {
    if let Some(p) = path {
        let text = serde_json::to_string_pretty(&RMStructureJson::from_structure(s))?;
        fs::write(p, text).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

/// The requested embedding, or the first one satisfying `ok`.
fn pick_embedding(field: &NumberField, eps: Option<usize>, ok: impl Fn(&Embedding) -> bool) -> Result<Embedding> {
    if let Some(i) = eps {
        return Ok(field.embedding(i)?);
    }
    let all = field.embeddings();
    Ok(all.iter().find(|e| ok(e)).unwrap_or(&all[0]).clone())
}

/// The embedding where the eigenspace has a negative plane.
fn special_embedding(s: &RMStructure, eps: Option<usize>) -> Result<Embedding> {
    let sigs = embedding_signatures(s)?;
    pick_embedding(s.field(), eps, |e| sigs[e.root_index()].1 == 2)
}

/// Checks shared by every structure-valued command.
fn structure_checks(rep: &mut Report, s: &RMStructure) -> Result<()> {
    let m = s.m();
    let sig = signature(s.psi())?;
    let sigs = embedding_signatures(s)?;
    let (lhs, rhs) = det_class_identity(s)?;
    let phi = recover_f_bilinear(s)?;
    let back = trace_form(s.field(), &phi.phi, Some(&phi.frame));
    let f = s.field();
    let (disc, disc_class) = power_basis_discriminant(f)?;
    rep.result("dim", s.dim());
    rep.result("n", f.degree());
    rep.result("m", m);
    rep.result("signature", sig_json(sig));
    rep.result("embedding_signatures", sigs.iter().map(|&x| sig_json(x)).collect::<Vec<_>>());
    rep.result("det_class", lhs.to_string());
    rep.result("field_discriminant", format_rational(&disc));
    rep.result("field_discriminant_class", disc_class.to_string());
    let phi_strings: Vec<Vec<String>> =
        phi.phi.to_rows().iter().map(|r| r.iter().map(|x| format_element(f, x)).collect()).collect();
    rep.result("phi", phi_strings);

    let n = f.degree();
    let special = sigs.iter().filter(|&&x| x == (m - 2, 2)).count();
    let definite = sigs.iter().filter(|&&x| x == (m, 0)).count();
    rep.check(
        "one embedding of signature (m-2,2), the rest (m,0)",
        special == 1 && definite + 1 == sigs.len(),
        json!(sigs.iter().map(|&x| sig_json(x)).collect::<Vec<_>>()),
    );
    rep.check(
        "signature of ψ is (nm-2, 2)",
        sig == (n * m - 2, 2),
        sig_json(sig),
    );
    rep.check(
        "det ψ ≡ D_F^m · N(det Φ) mod squares",
        lhs == rhs,
        json!({"det_psi": lhs.to_string(), "disc_norm": rhs.to_string()}),
    );
    rep.check("tr ∘ Φ recovers ψ", back.gram() == s.psi().gram(), json!(null));
    Ok(())
}

fn construct_rm(args: &ConstructRm) -> Result<Report> {
    let f = parse_field(&args.field)?;
    let a = parse_element_list(&f, &args.a)?;
    let eps = pick_embedding(&f, args.eps, |e| check_sign_pattern(&f, &a, e).is_ok())?;
    let mut rep = Report::new("construct-rm");
    rep.input("field", NumberFieldJson::from_field(&f));
    rep.input("m", args.m);
    rep.input("a", a.iter().map(|x| format_element(&f, x)).collect::<Vec<_>>());
    rep.input("eps", eps.root_index());
    let s = construct_rm_structure(&f, args.m, &a, &eps)?;
    write_structure(&args.out, &s)?;
    rep.result("structure", RMStructureJson::from_structure(&s));
    structure_checks(&mut rep, &s)?;
    Ok(rep)
}

fn load(args: &StructureArgs, rep: &mut Report) -> Result<(RMStructure, Embedding)> {
    let s = read_structure(&args.structure)?;
    let eps = special_embedding(&s, args.eps)?;
    rep.input("structure", RMStructureJson::from_structure(&s));
    rep.input("eps", eps.root_index());
    Ok((s, eps))
}

fn invariants(args: &StructureArgs) -> Result<Report> {
    let mut rep = Report::new("invariants");
    let (s, _) = load(args, &mut rep)?;
    structure_checks(&mut rep, &s)?;
    Ok(rep)
}

fn twist(args: &Twist) -> Result<Report> {
    let mut rep = Report::new("twist");
    let (s, eps) = load(&args.base, &mut rep)?;
    let f = s.field();
    let a = parse_element(f, &args.a)?;
    rep.input("a", format_element(f, &a));
    let tw = twist_polarization(&s, &a)?;
    let p = construct_period(&s, &eps)?;
    let verdict = is_polarization(&tw.form, &s, &p)?;
    let (lhs, rhs) = twist_det_identity(&s, &a)?;
    rep.result("psi_a", matrix_to_json(tw.form.gram()));
    rep.result("identical", tw.form.gram() == s.psi().gram());
    rep.result("totally_positive", tw.polarization);
    rep.result("sign_vector", f.sign_vector(&a));
    rep.result("polarization", verdict);
    rep.result("norm", format_rational(&f.norm(&a)));
    rep.result("det_class_before", det_square_class(s.psi())?.to_string());
    rep.result("det_class_after", lhs.to_string());
    rep.check(
        "det ψ_a ≡ N(a)^m · det ψ mod squares",
        lhs == rhs,
        json!({"det_psi_a": lhs.to_string(), "norm_twist": rhs.to_string()}),
    );
    rep.check(
        "ψ_a polarizes the period iff a is totally positive",
        verdict == tw.polarization,
        json!({"polarization": verdict, "totally_positive": tw.polarization}),
    );
    Ok(rep)
}

fn period_results<K: OrderedField + Show>(rep: &mut Report, p: &PeriodData<K>) {
    let k = &p.field;
    rep.result("x", k.show_vec(&p.x));
    rep.result("y", k.show_vec(&p.y));
    rep.result("s", k.show(&p.s));
}

fn period(args: &StructureArgs) -> Result<Report> {
    let mut rep = Report::new("period");
    let (s, eps) = load(args, &mut rep)?;
    let p = construct_period(&s, &eps)?;
    rep.result("p", format_element(s.field(), p.field.radicand()));
    period_results(&mut rep, &p);
    let simple = simplicity_check(s.psi(), &p);
    rep.result("simple", simple.is_simple());
    let relations = PeriodData::new(p.field.clone(), s.psi(), p.x.clone(), p.y.clone()).is_ok();
    rep.check("ψ(x,x) = ψ(y,y) < 0, ψ(x,y) = 0", relations, json!(p.field.show(&p.s)));
    let pol = is_polarization(s.psi(), &s, &p)?;
    rep.check("ψ polarizes the period", pol, json!(null));
    Ok(rep)
}

fn rational_period(psi: &str, x: &str, y: &str, rep: &mut Report) -> Result<(QBilinearForm, PeriodData<Rationals>)> {
    let psi = QBilinearForm::new(Rationals, parse_rational_matrix(psi)?)?;
    let d = psi.dim();
    let x = parse_vector(x, d)?;
    let y = parse_vector(y, d)?;
    rep.input("psi", matrix_to_json(psi.gram()));
    rep.input("x", vector_to_json(&x));
    rep.input("y", vector_to_json(&y));
    let p = PeriodData::new(Rationals, &psi, x, y)?;
    Ok((psi, p))
}

fn simplicity_results<K: k3rm::field::AlgebraicField + OrderedField + Show>(
    rep: &mut Report,
    psi: &QBilinearForm,
    p: &PeriodData<K>,
) {
    period_results(rep, p);
    match simplicity_check(psi, p) {
        Simplicity::Simple => {
            rep.result("simple", true);
            rep.result("kernel_basis", Vec::<Vec<String>>::new());
        }
        Simplicity::KernelBasis(b) => {
            rep.result("simple", false);
            rep.result("kernel_basis", b.iter().map(|v| vector_to_json(v)).collect::<Vec<_>>());
        }
    }
    rep.check("ψ(x,x) = ψ(y,y) < 0, ψ(x,y) = 0", true, json!(p.field.show(&p.s)));
}

fn simplicity(args: &PeriodArgs) -> Result<Report> {
    let mut rep = Report::new("simplicity");
    match (&args.structure, &args.psi) {
        (Some(path), _) => {
            let sa = StructureArgs { structure: path.clone(), eps: args.eps };
            let (s, eps) = load(&sa, &mut rep)?;
            let p = construct_period(&s, &eps)?;
            rep.result("p", format_element(s.field(), p.field.radicand()));
            simplicity_results(&mut rep, s.psi(), &p);
        }
        (None, Some(psi)) => {
            let (x, y) = (args.x.as_deref().unwrap_or(""), args.y.as_deref().unwrap_or(""));
            let (psi, p) = rational_period(psi, x, y, &mut rep)?;
            simplicity_results(&mut rep, &psi, &p);
        }
        (None, None) => bail!("give --structure, or --psi with --x and --y"),
    }
    Ok(rep)
}

fn ks_report<K: OrderedField + Show>(
    rep: &mut Report,
    psi: &QBilinearForm,
    p: PeriodData<K>,
    seed: Option<(Vec<Q>, Vec<Q>)>,
) -> Result<()> {
    let d = psi.dim();
    let k = p.field.clone();
    let ks = KSStructure::new(psi, p)?;
    let j: BTreeMap<String, String> = ks.j.terms().iter().map(|(mask, c)| (mask.to_string(), k.show(c))).collect();
    let j_ok = ks.j_squared_is_minus_one();
    rep.result("J", j);
    rep.result("J_check", j_ok);
    rep.result("even_dim", ks.algebra.even_dim());
    rep.result("psi_signature", sig_json(signature(psi)?));
    rep.check("J² = -1", j_ok, json!(null));
    let mult = ks.eigen_multiplicities();
    rep.result("signatures", mult.as_ref().ok().map(|&m| sig_json(m)));
    rep.check(
        "±i eigenspaces of L_J have equal dimension",
        matches!(mult, Ok((a, b)) if a == b),
        json!(mult.as_ref().map_err(|e| e.to_string()).ok().map(|&m| sig_json(m))),
    );
    if d > MAX_RIEMANN_GENERATORS {
        rep.result("E_valid", Value::Null);
        rep.result("E_skipped", format!("Riemann form is only computed for dim V ≤ {MAX_RIEMANN_GENERATORS}"));
        return Ok(());
    }
    let (e1, e2) = match seed {
        Some(s) => s,
        None => default_seed(psi)?,
    };
    rep.result("E_seed", json!([vector_to_json(&e1), vector_to_json(&e2)]));
    let base = trace_pairing(psi, &e1, &e2)?;
    let mut passing = Vec::new();
    let mut outcomes = serde_json::Map::new();
    for sign in [1i8, -1] {
        let gram = if sign == 1 { base.clone() } else { base.map(|x| -x) };
        let c = check_riemann(&ks, &gram);
        outcomes.insert(
            sign.to_string(),
            json!({"alternating": c.alternating, "J_invariant": c.j_invariant, "positive": c.positive}),
        );
        if c.all() {
            passing.push(sign);
        }
    }
    rep.result("E_valid", !passing.is_empty());
    rep.result("E_sign", passing.first());
    rep.check("exactly one sign gives a Riemann form", passing.len() == 1, Value::Object(outcomes));
    Ok(())
}

fn seed(args: &KsArgs, d: usize) -> Result<Option<(Vec<Q>, Vec<Q>)>> {
    match (&args.e1, &args.e2) {
        (Some(a), Some(b)) => Ok(Some((parse_vector(a, d)?, parse_vector(b, d)?))),
        _ => Ok(None),
    }
}

fn ks(args: &KsArgs) -> Result<Report> {
    let mut rep = Report::new("ks");
    let pa = &args.period;
    match (&pa.structure, &pa.psi) {
        (Some(path), _) => {
            let sa = StructureArgs { structure: path.clone(), eps: pa.eps };
            let (s, eps) = load(&sa, &mut rep)?;
            let p = construct_period(&s, &eps)?;
            rep.result("p", format_element(s.field(), p.field.radicand()));
            let seed = seed(args, s.dim())?;
            ks_report(&mut rep, s.psi(), p, seed)?;
        }
        (None, Some(psi)) => {
            let (x, y) = (pa.x.as_deref().unwrap_or(""), pa.y.as_deref().unwrap_or(""));
            let (psi, p) = rational_period(psi, x, y, &mut rep)?;
            let seed = seed(args, psi.dim())?;
            ks_report(&mut rep, &psi, p, seed)?;
        }
        (None, None) => bail!("give --structure, or --psi with --x and --y"),
    }
    Ok(rep)
}

fn superscript(n: u64) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string().chars().map(|c| DIGITS[c.to_digit(10).unwrap() as usize]).collect()
}

fn spin_branch(args: &SpinBranch) -> Result<Report> {
    let mut rep = Report::new("spin-branch");
    rep.input("m", args.m);
    rep.input("n", args.n);
    let c = check_branching(args.m, args.n)?;
    let dim = c.restricted.dim();
    let w = dim / c.copies.max(1);
    let nm = args.m * args.n;
    let identity = if c.copies == 1 {
        format!("S({nm}) = W, dim {dim}")
    } else {
        format!("S({nm}) = W{}, dim {dim} = {}·{w}", superscript(c.copies), c.copies)
    };
    rep.result("W", format!("S({})^⊠{}", args.m, args.n));
    rep.result("identity", identity);
    rep.result("dim", dim);
    rep.result("copies", c.copies);
    rep.result("restricted", weights_to_json(&c.restricted));
    rep.result("product", weights_to_json(&c.product));
    if args.m == 3 {
        // so(3) = sl(2) and S(3) is the standard representation
        let mut dec = decompose_sl2k(&wedge2(&c.restricted))?;
        dec.sort();
        let parts: Vec<Value> = dec.iter().map(|(hw, mult)| json!({"highest": hw, "mult": mult})).collect();
        rep.result("wedge2_decomposition", parts);
    }
    rep.check("restriction equals copies of W", c.holds, json!({"copies": c.copies, "dim": dim}));
    Ok(rep)
}

fn cores(args: &CoresArgs) -> Result<Report> {
    let mut rep = Report::new("cores");
    let s = match (&args.structure, args.field, &args.phi) {
        (Some(path), _, _) => {
            let s = read_structure(path)?;
            rep.input("structure", RMStructureJson::from_structure(&s));
            s
        }
        (None, Some(d), Some(phi)) => {
            let f = NumberField::quadratic(d)?;
            let a = parse_element_list(&f, phi)?;
            let eps = pick_embedding(&f, args.eps, |e| check_sign_pattern(&f, &a, e).is_ok())?;
            rep.input("field", d);
            rep.input("phi", a.iter().map(|x| format_element(&f, x)).collect::<Vec<_>>());
            rep.input("eps", eps.root_index());
            construct_rm_structure(&f, a.len(), &a, &eps)?
        }
        _ => bail!("give --structure, or --field with --phi"),
    };
    let e = build_cores_embedding(&s)?;
    let r = 1usize << (s.m() - 1);
    rep.result("dim_even_clifford_over_F", r);
    rep.result("cores_dim", e.cores.dim());
    rep.result("target_dim", e.target_dim);
    if args.constants {
        rep.result("basis", e.cores.basis.iter().map(|v| vector_to_json(v)).collect::<Vec<_>>());
        rep.result("structure_constants", structure_constants_to_json(&e.cores.consts));
        rep.result("images", matrix_to_json(&e.images));
    }
    rep.check("cores has dimension r²", e.cores.dim() == r * r, json!({"r": r, "dim": e.cores.dim()}));
    rep.check("map is unital", e.unital, json!(null));
    rep.check("map is injective", e.injective, json!(null));
    rep.check(
        "map is multiplicative on all basis pairs",
        e.homomorphism,
        json!({"pairs": e.cores.dim() * e.cores.dim()}),
    );
    Ok(rep)
}

fn lattice_snf(args: &LatticeSource) -> Result<Report> {
    let mut rep = Report::new("lattice snf");
    let m = match (&args.fixture, &args.matrix) {
        (Some(name), _) => {
            rep.input("fixture", name);
            parse_lattice(name)?.gram().clone()
        }
        (None, Some(text)) => parse_int_matrix(text)?,
        (None, None) => bail!("give --fixture or --matrix"),
    };
    rep.input("matrix", k3rm::serial::int_matrix_to_json(&m));
    let snf = smith_normal_form(&m);
    let factors: Vec<String> = snf.invariant_factors().iter().map(|x| x.abs().to_string()).collect();
    rep.result("D", k3rm::serial::int_matrix_to_json(&snf.d));
    rep.result("U", k3rm::serial::int_matrix_to_json(&snf.u));
    rep.result("V", k3rm::serial::int_matrix_to_json(&snf.v));
    rep.result("invariant_factors", &factors);
    rep.result("diag", format!("diag({})", factors.join(",")));
    let product = int_mul(&int_mul(&snf.u, &m), &snf.v);
    rep.check("U·M·V = D", product == snf.d, json!(null));
    let ud = k3rm::zlattice::int_det(&snf.u);
    let vd = k3rm::zlattice::int_det(&snf.v);
    rep.check(
        "U and V are unimodular",
        ud.abs().is_one() && vd.abs().is_one(),
        json!({"det_U": ud.to_string(), "det_V": vd.to_string()}),
    );
    let f = snf.invariant_factors();
    let chain = f.windows(2).all(|w| (&w[1] % &w[0]).is_zero());
    rep.check("each invariant factor divides the next", chain, json!(factors));
    Ok(rep)
}

fn lattice_complement(args: &Complement) -> Result<Report> {
    let mut rep = Report::new("lattice complement");
    let l = parse_lattice(&args.lattice)?;
    let s = parse_int_matrix(&args.sub)?;
    if s.cols() != l.rank() {
        bail!("sublattice rows have length {}, lattice has rank {}", s.cols(), l.rank());
    }
    rep.input("lattice", lattice_to_json(&l));
    rep.input("sub", k3rm::serial::int_matrix_to_json(&s));
    let c = orthogonal_complement(&l, &s);
    rep.result("basis", k3rm::serial::int_matrix_to_json(&c));
    rep.result("rank", c.rows());
    if c.rows() > 0 {
        let t = IntegerLattice::new(l.sublattice_gram(&c))?;
        rep.result("gram", lattice_to_json(&t));
        rep.result("signature", sig_json(t.signature()?));
        let dg: Vec<String> = discriminant_group(&t)?.iter().map(|x| x.to_string()).collect();
        rep.result("discriminant_group", dg);
        let cross = int_mul(&int_mul(&s, l.gram()), &c.transpose());
        rep.check("complement is orthogonal to the sublattice", cross.entries().iter().all(Zero::is_zero), json!(null));
        let f = smith_normal_form(&c).invariant_factors();
        rep.check(
            "complement is primitive",
            f.len() == c.rows() && f.iter().all(|x| x.abs().is_one()),
            json!(f.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
        );
    }
    Ok(rep)
}

fn lattice_embed_check(args: &EmbedCheck) -> Result<Report> {
    let mut rep = Report::new("lattice embed-check");
    let l = parse_lattice(&args.ambient)?;
    let t = parse_lattice(&args.target)?;
    let b = parse_int_matrix(&args.map)?;
    rep.input("ambient", lattice_to_json(&l));
    rep.input("target", lattice_to_json(&t));
    rep.input("map", k3rm::serial::int_matrix_to_json(&b));
    let primitive = is_primitive_embedding(&b, &l, &t)?;
    rep.result("primitive", primitive);
    rep.check("B·G_L·Bᵀ = G_T", true, json!(null));
    rep.check("image is primitive", primitive, json!(null));
    Ok(rep)
}

fn double_cover(args: &DoubleCover) -> Result<Report> {
    let mut rep = Report::new("example-double-cover");
    rep.input("d", args.d);
    let s = match (args.e, args.c) {
        (Some(e), Some(c)) => {
            rep.input("e", e);
            rep.input("c", c);
            double_cover_with(args.d, e, c)?
        }
        _ => build_double_cover_example(args.d)?,
    };
    write_structure(&args.out, &s)?;
    let q = &Rationals;
    let f = s.field();
    let root = quadratic_sqrt(f, &f.from_int(args.d)).ok_or_else(|| anyhow!("no square root of d in F"))?;
    let a = s.rho(&root);
    rep.result("structure", RMStructureJson::from_structure(&s));
    rep.result("a", matrix_to_json(&a));
    let dd = matrix::scale(q, &Q::from_integer(args.d.into()), &matrix::identity(q, s.dim()));
    rep.check("a² = d·I", matrix::mul(q, &a, &a) == dd, json!(null));
    let g = s.psi().gram();
    rep.check(
        "a is ψ-self-adjoint",
        matrix::mul(q, &a.transpose(), g) == matrix::mul(q, g, &a),
        json!(null),
    );
    let sigs = embedding_signatures(&s)?;
    let mut sorted = sigs.clone();
    sorted.sort();
    rep.result("embedding_signatures", sigs.iter().map(|&x| sig_json(x)).collect::<Vec<_>>());
    rep.check(
        "eigenspace signatures are (3,0) and (1,2)",
        sorted == vec![(1, 2), (3, 0)],
        json!(sigs.iter().map(|&x| sig_json(x)).collect::<Vec<_>>()),
    );
    // ψ is negative on the period plane; the cup product is -ψ
    let cup = QBilinearForm::new(Rationals, g.map(|x| -x))?;
    let model = qform_diagonal(&[1, 1, -1, -1, -1, -1]);
    let (sig, class) = (signature(&cup)?, det_square_class(&cup)?);
    rep.result("psi_signature", sig_json(signature(s.psi())?));
    rep.result("cup_signature", sig_json(sig));
    rep.result("cup_det_class", class.to_string());
    rep.check(
        "-ψ has the signature and determinant class of ⟨1⟩²⊕⟨−1⟩⁴",
        sig == signature(&model)? && class == det_square_class(&model)?,
        json!({"signature": sig_json(sig), "det_class": class.to_string()}),
    );
    Ok(rep)
}
