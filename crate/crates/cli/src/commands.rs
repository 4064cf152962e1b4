use kmx_core::affine::{self, AffineElementJson};
use kmx_core::affweyl::{build_affine_weyl, evaluate_poly, AffineWeylCoset};
use kmx_core::charclass::{grr_det_class, string_bundle_c2};
use kmx_core::dynkin::{self, binom3, IndexReport};
use kmx_core::field::parse_rational;
use kmx_core::latgrass::{self, LatticePointJson, LatticeSubspace, LoopMatrix, TruncWindow};
use kmx_core::matrix::Matrix;
use kmx_core::repchar::{self, sl2_character};
use kmx_core::rootsys::{build_root_system, RootSystem, TypeLabel, Weight};
use kmx_core::{Error, Rational};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::{Cli, CliError, Command, Identity, LatgrassCommand};

type Outcome = Result<(Value, Vec<String>), CliError>;

fn provenance(keys: &[&str]) -> Vec<String> {
    keys.iter()
        .map(|k| {
            match *k {
                "dual_coxeter" => "dual Coxeter number computed as 1 + <rho, theta coroot>",
                "dual_coxeter_table" => "classical table of dual Coxeter numbers by Cartan type",
                "weight_sum" => "Dynkin index as one half of the sum of n_lambda <lambda, theta coroot>^2",
                "string_sum" => "Dynkin index as the sum of C(m_i + 1, 3) over sl2(theta) string dimensions",
                "freudenthal" => "weight multiplicities by the Freudenthal recursion",
                "integrable" => "integrability criterion: level >= <lambda, theta coroot>",
                "bracket" => "loop bracket with the residue cocycle <X, Y> Res(P' Q) times K",
                "cosets" => "minimal coset representatives of the affine Weyl group modulo the finite Weyl group",
                "bruhat" => "Bruhat order on cosets via the subword property",
                "poincare" => "Poincaré polynomial as the sum of q^length over Schubert cells",
                "lattice_window" => "lattice points as t-stable half-dimensional subspaces of t^-n L0 / t^n L0",
                "echelon_scan" => "finite-field point count by shift-closed echelon-pattern enumeration",
                "determinant" => "determinant normalization by a diagonal corrector on the last basis vector",
                "chern" => "c2 of the sl2 irreducibles by the Clebsch-Gordan recursion in H*(S^4)",
                "grr" => "Grothendieck-Riemann-Roch pushforward along the curve factor",
                "jacobi" => "antisymmetry and Jacobi identity with central terms",
                other => other,
            }
            .to_string()
        })
        .collect()
}

fn root_system(label: TypeLabel, rank: usize) -> Result<RootSystem, CliError> {
    Ok(build_root_system(label, rank)?)
}

fn weight_arg(rs: &RootSystem, w: &[i64]) -> Weight {
    if w == [0] {
        Weight::zero(rs.rank())
    } else {
        Weight(w.to_vec())
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("payload types serialize to JSON")
}

#[derive(Serialize, Deserialize)]
pub struct IndexPayload {
    #[serde(rename = "type")]
    pub label: TypeLabel,
    pub rank: usize,
    pub weight: Weight,
    pub dimension: u64,
    #[serde(flatten)]
    pub report: IndexReport,
    pub strings: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
pub struct DualCoxeterRow {
    pub family: String,
    pub formula: String,
    pub ranks: Vec<usize>,
    pub expected: Vec<i64>,
    pub computed: Vec<i64>,
    pub matches: bool,
}

#[derive(Serialize, Deserialize)]
pub struct SchubertRow {
    #[serde(flatten)]
    pub coset: AffineWeylCoset,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub poincare: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub poincare_at_q: Option<u128>,
}

pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Index { ty, weight } => index(ty.label, ty.rank, &weight.0),
        Command::DualCoxeter { all: true, .. } => dual_coxeter_table(),
        Command::DualCoxeter { label, rank, .. } => {
            let rs = root_system(label.expect("required by clap"), rank.expect("required by clap"))?;
            let payload = json!({
                "type": rs.type_label(),
                "rank": rs.rank(),
                "theta": rs.highest_root(),
                "dual_coxeter": rs.dual_coxeter(),
            });
            Ok((payload, provenance(&["dual_coxeter"])))
        }
        Command::IntegrableWeights { ty, level } => {
            let rs = root_system(ty.label, ty.rank)?;
            if *level < 0 {
                return Err(Error::InvalidInput(format!("level {level} is negative")).into());
            }
            let rows = affine::enumerate_level_weights(&rs, *level);
            Ok((to_value(&rows), provenance(&["integrable"])))
        }
        Command::AffineBracket { n, lhs, rhs } => {
            let parse = |s: &str| {
                serde_json::from_str::<AffineElementJson>(s).map_err(|e| CliError::Usage(format!("bad element JSON: {e}")))
            };
            let x = parse(lhs)?.into_element(*n)?;
            let y = parse(rhs)?.into_element(*n)?;
            let z = affine::bracket(&x, &y)?;
            Ok((to_value(&AffineElementJson::from(&z)), provenance(&["bracket"])))
        }
        Command::Schubert { ty, upto, poincare, q } => schubert(ty.label, ty.rank, *upto, *poincare, *q),
        Command::Latgrass { action } => latgrass(action, cli.budget),
        Command::DetClass { l, label, rank, weight } => det_class(*l, *label, *rank, weight.as_ref().map(|w| w.0.as_slice())),
        Command::IdentityCheck { identity, upto, seed } => identity_check(*identity, *upto, *seed),
    }
}

fn index(label: TypeLabel, rank: usize, weight: &[i64]) -> Outcome {
    let rs = root_system(label, rank)?;
    let lambda = weight_arg(&rs, weight);
    let ch = repchar::weight_multiplicities(&rs, &lambda)?;
    let strings = repchar::sl2_theta_decompose(&rs, &ch)?;
    let report = dynkin::index_report(&rs, &lambda)?;
    let payload = IndexPayload { label, rank, dimension: ch.dimension(), weight: lambda, report, strings: strings.dims };
    Ok((to_value(&payload), provenance(&["freudenthal", "weight_sum", "string_sum"])))
}

/// Families with their closed forms; parametrized ones are evaluated at ranks 2..=8.
fn dual_coxeter_table() -> Outcome {
    type Family = (&'static str, &'static str, TypeLabel, Vec<usize>, fn(i64) -> i64);
    let families: Vec<Family> = vec![
        ("A_l", "l+1", TypeLabel::A, (2..=8).collect(), |l| l + 1),
        ("B_l", "2l-1", TypeLabel::B, (2..=8).collect(), |l| 2 * l - 1),
        ("C_l", "l+1", TypeLabel::C, (2..=8).collect(), |l| l + 1),
        ("D_l", "2l-2", TypeLabel::D, (3..=8).collect(), |l| 2 * l - 2),
        ("E_6", "12", TypeLabel::E, vec![6], |_| 12),
        ("E_7", "18", TypeLabel::E, vec![7], |_| 18),
        ("E_8", "30", TypeLabel::E, vec![8], |_| 30),
        ("G_2", "4", TypeLabel::G, vec![2], |_| 4),
        ("F_4", "9", TypeLabel::F, vec![4], |_| 9),
    ];
    let mut rows = Vec::new();
    for (family, formula, label, ranks, f) in families {
        let expected: Vec<i64> = ranks.iter().map(|&r| f(r as i64)).collect();
        let computed = ranks
            .iter()
            .map(|&r| root_system(label, r).map(|rs| rs.dual_coxeter()))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(DualCoxeterRow {
            family: family.into(),
            formula: formula.into(),
            matches: expected == computed,
            ranks,
            expected,
            computed,
        });
    }
    Ok((to_value(&rows), provenance(&["dual_coxeter", "dual_coxeter_table"])))
}

fn schubert(label: TypeLabel, rank: usize, upto: usize, poincare: bool, q: Option<u64>) -> Outcome {
    let rs = root_system(label, rank)?;
    let group = build_affine_weyl(&rs);
    let rows: Vec<SchubertRow> = group
        .enumerate_cosets_upto(upto)
        .into_iter()
        .map(|coset| {
            let poly = poincare.then(|| group.schubert_poincare_poly(&coset.cocharacter));
            let at_q = q.zip(poly.as_ref()).map(|(q, p)| evaluate_poly(p, q));
            SchubertRow { coset, poincare: poly, poincare_at_q: at_q }
        })
        .collect();
    let mut prov = vec!["cosets"];
    if poincare {
        prov.extend(["bruhat", "poincare"]);
    }
    Ok((to_value(&rows), provenance(&prov)))
}

fn parse_json<T: for<'de> Deserialize<'de>>(what: &str, s: &str) -> Result<T, CliError> {
    serde_json::from_str(s).map_err(|e| CliError::Usage(format!("bad {what} JSON: {e}")))
}

fn latgrass(action: &LatgrassCommand, budget: u64) -> Outcome {
    match action {
        LatgrassCommand::Count { size, depth, q } => {
            let count = latgrass::count_points(*size, *depth, *q, budget)?;
            Ok((json!({"N": size, "n": depth, "q": q, "count": count}), provenance(&["lattice_window", "echelon_scan"])))
        }
        LatgrassCommand::Member { size, depth, basis } => {
            let rows: Vec<Vec<String>> = parse_json("basis", basis)?;
            let parsed = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|s| parse_rational(s).ok_or_else(|| CliError::Usage(format!("bad rational {s:?}"))))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            let m = Matrix::from_rows(parsed).ok_or_else(|| CliError::Usage("ragged basis matrix".into()))?;
            let w = LatticeSubspace::from_basis_matrix(TruncWindow::new::<Rational>(*size, *depth), &m)?;
            Ok((to_value(&LatticePointJson::from(&w)), provenance(&["lattice_window"])))
        }
        LatgrassCommand::Lattice { depth, matrix } => {
            let rows: Vec<Vec<String>> = parse_json("matrix", matrix)?;
            let g = LoopMatrix::parse(&rows)?;
            let normalized = latgrass::normalize_determinant(&g, latgrass::sufficient_precision(&g, *depth))?;
            let minimal_depth = latgrass::minimal_depth(&normalized)?;
            let w = latgrass::lattice_from_group(&normalized, *depth)?;
            let payload = json!({
                "determinant": g.det().to_string(),
                "normalized": normalized.to_strings(),
                "minimal_depth": minimal_depth,
                "lattice": LatticePointJson::from(&w),
            });
            Ok((payload, provenance(&["determinant", "lattice_window"])))
        }
        LatgrassCommand::Cocharacter { depth, mu } => {
            let w: LatticeSubspace = latgrass::cocharacter_point(&mu.0, *depth)?;
            Ok((json!({"mu": mu.0, "lattice": LatticePointJson::from(&w)}), provenance(&["lattice_window"])))
        }
    }
}

fn det_class(l: Option<i64>, label: Option<TypeLabel>, rank: Option<usize>, weight: Option<&[i64]>) -> Outcome {
    if let Some(l) = l {
        return Ok((json!({"c2_coefficient": l, "det_class_alpha": grr_det_class(l)}), provenance(&["grr"])));
    }
    let (Some(label), Some(rank), Some(weight)) = (label, rank, weight) else {
        return Err(CliError::Usage("give either --l or --type, --rank and --weight".into()));
    };
    let rs = root_system(label, rank)?;
    let lambda = weight_arg(&rs, weight);
    let ch = repchar::weight_multiplicities(&rs, &lambda)?;
    let strings = repchar::sl2_theta_decompose(&rs, &ch)?;
    let index = dynkin::index_string_sum(&strings);
    let l = string_bundle_c2(&strings);
    let alpha = grr_det_class(l);
    let payload = json!({
        "type": label,
        "rank": rank,
        "weight": lambda,
        "dynkin_index": index,
        "c2_coefficient": l,
        "det_class_alpha": alpha,
        "agrees": alpha == index as i64,
    });
    Ok((payload, provenance(&["string_sum", "chern", "grr"])))
}

fn identity_check(identity: Identity, upto: u64, seed: u64) -> Outcome {
    let (rows, prov): (Vec<Value>, &[&str]) = match identity {
        Identity::WeightString => (
            (0..=upto)
                .map(|m| {
                    let (ws, ss) = dynkin::sl2_string_identity(m);
                    let equal = ws == Rational::from_integer(ss.into());
                    json!({"m": m, "weight_sum": ws.to_string(), "string_sum": ss, "equal": equal})
                })
                .collect(),
            &["weight_sum", "string_sum"],
        ),
        Identity::ChernC2 => (
            (0..=upto)
                .map(|m| {
                    let c2 = kmx_core::charclass::c2_of_wm(m);
                    let b = binom3(m + 2);
                    json!({"m": m, "c2": c2, "binomial": b, "equal": c2 == b as i64})
                })
                .collect(),
            &["chern"],
        ),
        Identity::TwoRouteIndex => {
            let rs = root_system(TypeLabel::A, 1)?;
            let rows = (0..=upto)
                .map(|m| {
                    let ch = sl2_character(m);
                    let ws = dynkin::index_weight_sum(&rs, &ch);
                    let ss = dynkin::index_string_sum(&repchar::sl2_theta_decompose(&rs, &ch)?);
                    let equal = ws == Rational::from_integer(ss.into());
                    Ok(json!({"m": m, "weight_sum": ws.to_string(), "string_sum": ss, "equal": equal}))
                })
                .collect::<Result<Vec<_>, Error>>()?;
            (rows, &["weight_sum", "string_sum"])
        }
        Identity::BracketLaws => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut rows = Vec::new();
            for n in 2..=4 {
                let (mut anti, mut jacobi) = (0u64, 0u64);
                for _ in 0..upto {
                    let x = affine::random_element(&mut rng, n, 3, 5);
                    let y = affine::random_element(&mut rng, n, 3, 5);
                    let z = affine::random_element(&mut rng, n, 3, 5);
                    let xy = affine::bracket(&x, &y)?;
                    if xy.add(&affine::bracket(&y, &x)?)?.is_zero() {
                        anti += 1;
                    }
                    let j = affine::bracket(&x, &affine::bracket(&y, &z)?)?
                        .add(&affine::bracket(&y, &affine::bracket(&z, &x)?)?)?
                        .add(&affine::bracket(&z, &xy)?)?;
                    if j.is_zero() {
                        jacobi += 1;
                    }
                }
                let equal = anti == upto && jacobi == upto;
                rows.push(json!({"n": n, "trials": upto, "antisymmetric": anti, "jacobi": jacobi, "equal": equal}));
            }
            (rows, &["bracket", "jacobi"])
        }
    };
    let equal = rows.iter().filter(|r| r["equal"] == Value::Bool(true)).count();
    let payload = json!({
        "identity": identity_name(identity),
        "seed": seed,
        "cases": rows.len(),
        "equal": equal,
        "rows": rows,
    });
    Ok((payload, provenance(prov)))
}

fn identity_name(identity: Identity) -> &'static str {
    match identity {
        Identity::WeightString => "weight-string",
        Identity::ChernC2 => "chern-c2",
        Identity::TwoRouteIndex => "two-route-index",
        Identity::BracketLaws => "bracket-laws",
    }
}
