//! `cartier` — exact computations with finite commutative group and
//! monoid schemes: dualization, axiom verification, Fourier inversion,
//! Smith normal forms, characters, tangent spaces, local decompositions,
//! Grothendieck completions, and exponential pairings.
//!
//! Every subcommand reads JSON (inline, from a file, or `-` for standard
//! input) and writes canonical JSON: object keys sorted, rationals as
//! exact `"a/b"` strings, no floating point.  Exit codes: 0 = success or
//! verified pass; 1 = a verification ran and failed (the report carries a
//! counterexample); 2 = malformed input or a violated precondition, with
//! a one-line diagnostic on standard error naming the precondition.

use cartier_core::field::Field;
use cartier_core::fourier::{character_tables, verify_inversion};
use cartier_core::group::{
    characters, gm_subgroup_dual, grothendieck_group, is_classic_affine, is_classic_cayley,
};
use cartier_core::hopf::{
    additive_truncated, additive_truncated_over, cartier_dual, double_dual_iso, function_algebra,
    group_algebra, tangent_space, AlgebraPoint, HopfAlgebra,
};
use cartier_core::intmat::snf;
use cartier_core::io;
use cartier_core::series::{exp_element, ga_pairing};
use clap::{Parser, Subcommand};
use num_rational::BigRational;
use serde_json::{json, Value};
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "cartier",
    version,
    about = "Exact duality computations for finite commutative group and monoid schemes"
)]
struct Cli {
    /// Write the output to a file instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dualize a Hopf algebra (writes the dual as bare Hopf JSON).
    Dualize {
        /// Hopf algebra JSON: inline, a file path, or '-' for stdin.
        input: String,
    },
    /// Check every Hopf axiom and the double-dual identity.
    Verify {
        /// Hopf algebra JSON: inline, a file path, or '-' for stdin.
        input: String,
    },
    /// Verify Fourier inversion and the integral triangle for a group.
    Fourier {
        /// Group: invariant-factor list like "[2,4]" or a descriptor object.
        #[arg(long)]
        group: String,
        /// Prime modulus (shorthand for --field p:<prime>).
        #[arg(long)]
        prime: Option<u64>,
        /// Coefficient field: "q" or "p:<prime>".
        #[arg(long)]
        field: Option<String>,
        /// Also emit the full character table.
        #[arg(long)]
        table: bool,
    },
    /// Smith normal form of an integer matrix.
    Snf {
        /// Integer matrix JSON: inline, a file path, or '-' for stdin.
        input: String,
    },
    /// All characters of a finite abelian group with values in F_p.
    Characters {
        /// Group: invariant-factor list like "[2,4]" or a descriptor object.
        #[arg(long)]
        group: String,
        /// Prime modulus for the character values.
        #[arg(long)]
        prime: u64,
    },
    /// Tangent space of a Hopf algebra at a rational point.
    Tangent {
        /// Hopf algebra JSON: inline, a file path, or '-' for stdin.
        input: String,
        /// Point as a vector of field values (default: the counit).
        #[arg(long)]
        point: Option<String>,
    },
    /// Radical and decomposition into local factors.
    Decompose {
        /// Hopf algebra or bare algebra JSON: inline, a file path, or '-'.
        input: String,
    },
    /// Grothendieck group completion of a commutative monoid.
    Grothendieck {
        /// Monoid JSON {"table": [[..]], "identity": i}: inline, file, or '-'.
        input: String,
    },
    /// Is the monoid a classic (group-reflecting) one?
    Classic {
        /// Monoid JSON, or an affine monoid descriptor with --affine.
        input: String,
        /// Treat the input as an affine monoid {"dim": d, "generators": [[..]]}.
        #[arg(long)]
        affine: bool,
    },
    /// Exponential pairing of a rational algebra with the additive formal group.
    GaPair {
        /// Algebra (or Hopf algebra) JSON: inline, a file path, or '-'.
        #[arg(long)]
        algebra: String,
        /// Rational scalar, e.g. "3/2".
        #[arg(long)]
        alpha: String,
        /// Nilpotent element as a coordinate vector, e.g. "[0,1,0]".
        #[arg(long)]
        element: String,
        /// Also emit exp(alpha·z) as a series truncated at this order.
        #[arg(long)]
        trunc: Option<usize>,
    },
    /// Classify the diagonalizable subgroup scheme cut out by characters.
    GmSubgroups {
        /// Integer exponent matrix JSON: inline, a file path, or '-'.
        input: String,
    },
    /// Construct a standard Hopf algebra (writes bare Hopf JSON).
    Build {
        /// One of: group-algebra, function-algebra, additive-truncated.
        #[arg(long)]
        construction: String,
        /// Group: invariant-factor list like "[2,4]" or a descriptor object.
        #[arg(long)]
        group: Option<String>,
        /// Monoid JSON {"table": [[..]], "identity": i}.
        #[arg(long)]
        monoid: Option<String>,
        /// Truncation prime for additive-truncated.
        #[arg(long)]
        prime: Option<u64>,
        /// Coefficient field: "q" or "p:<prime>" (default "q";
        /// additive-truncated defaults to its own prime).
        #[arg(long)]
        field: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((text, code)) => {
            let write_result = match &cli.out {
                Some(path) => std::fs::write(path, &text)
                    .map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            match write_result {
                Ok(()) => ExitCode::from(code),
                Err(diag) => {
                    eprintln!("{diag}");
                    ExitCode::from(2)
                }
            }
        }
        Err(diag) => {
            eprintln!("{diag}");
            ExitCode::from(2)
        }
    }
}

/// Reads a JSON argument: inline JSON, `-` for standard input, or a path.
fn read_json_arg(arg: &str) -> Result<Value, String> {
    let text = if arg == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| format!("cannot read standard input: {e}"))?;
        buf
    } else {
        let head = arg.trim_start();
        if head.starts_with('{') || head.starts_with('[') || head.starts_with('"') {
            arg.to_string()
        } else {
            std::fs::read_to_string(arg).map_err(|e| format!("cannot read {arg}: {e}"))?
        }
    };
    serde_json::from_str(&text).map_err(|e| format!("malformed JSON: {e}"))
}

fn report(subcommand: &str, status: &str, payload: Value) -> Value {
    json!({
        "subcommand": subcommand,
        "status": status,
        "payload": payload,
    })
}

fn err2<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn run(command: Command) -> Result<(String, u8), String> {
    match command {
        Command::Dualize { input } => {
            let h = io::hopf_from_json(&read_json_arg(&input)?).map_err(err2)?;
            let dual = cartier_dual(&h).map_err(err2)?;
            Ok((io::to_canonical_string(&io::hopf_to_json(&dual)), 0))
        }

        Command::Verify { input } => {
            let h = io::hopf_from_json(&read_json_arg(&input)?).map_err(err2)?;
            let axiom_report = h.verify_axioms();
            let axioms: Vec<Value> = axiom_report
                .checks
                .iter()
                .map(|c| match &c.failure {
                    None => json!({ "name": c.name, "status": "pass" }),
                    Some(idx) => json!({
                        "name": c.name,
                        "status": "fail",
                        "counterexample": idx,
                    }),
                })
                .collect();
            if axiom_report.all_pass() {
                let iso = double_dual_iso(&h).map_err(err2)?;
                let payload = json!({
                    "axioms": axioms,
                    "double_dual": "pass",
                    "double_dual_iso": io::matrix_to_json(&iso),
                });
                Ok((io::to_canonical_string(&report("verify", "pass", payload)), 0))
            } else {
                let payload = json!({ "axioms": axioms, "double_dual": "skipped" });
                Ok((io::to_canonical_string(&report("verify", "fail", payload)), 1))
            }
        }

        Command::Fourier { group, prime, field, table } => {
            let g = io::group_from_json(&read_json_arg(&group)?).map_err(err2)?;
            let field = resolve_field(prime, field.as_deref(), None)?;
            let inv = verify_inversion(&g, field).map_err(err2)?;
            let mut payload = serde_json::Map::new();
            payload.insert(
                "inversion".into(),
                json!(if inv.product_is_identity { "pass" } else { "fail" }),
            );
            payload.insert(
                "triangle".into(),
                json!(if inv.triangle_holds { "pass" } else { "fail" }),
            );
            if let Some((i, j)) = inv.product_counterexample {
                payload.insert("inversion_counterexample".into(), json!([i, j]));
            }
            if let Some(i) = inv.triangle_counterexample {
                payload.insert("triangle_counterexample".into(), json!([i]));
            }
            if table {
                let rows = character_tables(&g, field).map_err(err2)?;
                payload.insert(
                    "character_table".into(),
                    Value::Array(rows.iter().map(|r| io::vector_to_json(r)).collect()),
                );
            }
            let pass = inv.all_pass();
            let status = if pass { "pass" } else { "fail" };
            let doc = report("fourier", status, Value::Object(payload));
            Ok((io::to_canonical_string(&doc), u8::from(!pass)))
        }

        Command::Snf { input } => {
            let m = io::intmatrix_from_json(&read_json_arg(&input)?).map_err(err2)?;
            let form = snf(&m);
            assert_eq!(form.u.mul(&m).mul(&form.v), form.d, "Smith form identity");
            let payload = json!({
                "d": io::intmatrix_to_json(&form.d),
                "u": io::intmatrix_to_json(&form.u),
                "v": io::intmatrix_to_json(&form.v),
                "diagonal": form.diagonal().iter().map(io::bigint_to_json).collect::<Vec<_>>(),
            });
            Ok((io::to_canonical_string(&report("snf", "pass", payload)), 0))
        }

        Command::Characters { group, prime } => {
            let g = io::group_from_json(&read_json_arg(&group)?).map_err(err2)?;
            Field::prime(prime).map_err(err2)?;
            let chars = characters(&g, prime).map_err(err2)?;
            let payload = json!({
                "count": chars.len(),
                "characters": chars
                    .iter()
                    .map(|c| json!({ "images": c.images(), "values": c.value_table() }))
                    .collect::<Vec<_>>(),
            });
            Ok((io::to_canonical_string(&report("characters", "pass", payload)), 0))
        }

        Command::Tangent { input, point } => {
            let h = io::hopf_from_json(&read_json_arg(&input)?).map_err(err2)?;
            let pt = match point {
                None => h.counit_point(),
                Some(s) => {
                    let values =
                        io::vector_from_json(h.field(), &read_json_arg(&s)?).map_err(err2)?;
                    AlgebraPoint { images: values.into_iter().map(|v| vec![v]).collect() }
                }
            };
            let basis = tangent_space(&h, &pt).map_err(err2)?;
            let payload = json!({
                "dimension": basis.len(),
                "basis": basis.iter().map(|v| io::vector_to_json(v)).collect::<Vec<_>>(),
                "point": pt
                    .field_values()
                    .map(|v| io::vector_to_json(&v))
                    .expect("points into the base field have scalar values"),
            });
            Ok((io::to_canonical_string(&report("tangent", "pass", payload)), 0))
        }

        Command::Decompose { input } => {
            let v = read_json_arg(&input)?;
            let algebra = io::algebra_from_json(&v).map_err(err2)?;
            let radical = algebra.radical();
            let dec = algebra.local_decomposition().map_err(err2)?;
            let payload = json!({
                "radical": {
                    "dimension": radical.len(),
                    "basis": radical.iter().map(|v| io::vector_to_json(v)).collect::<Vec<_>>(),
                },
                "local_factors": dec
                    .factors
                    .iter()
                    .map(|f| json!({
                        "idempotent": io::vector_to_json(&f.idempotent),
                        "dimension": f.basis.len(),
                    }))
                    .collect::<Vec<_>>(),
                "count": dec.factors.len(),
            });
            Ok((io::to_canonical_string(&report("decompose", "pass", payload)), 0))
        }

        Command::Grothendieck { input } => {
            let m = io::monoid_from_json(&read_json_arg(&input)?).map_err(err2)?;
            let completion = grothendieck_group(&m);
            let payload = json!({
                "group": io::group_to_json(&completion.group),
                "images": completion.images,
            });
            Ok((io::to_canonical_string(&report("grothendieck", "pass", payload)), 0))
        }

        Command::Classic { input, affine } => {
            let v = read_json_arg(&input)?;
            let verdict = if affine {
                let a = io::affine_from_json(&v).map_err(err2)?;
                is_classic_affine(&a)
            } else {
                let m = io::monoid_from_json(&v).map_err(err2)?;
                is_classic_cayley(&m)
            };
            let payload = json!({ "classic": verdict.classic, "reason": verdict.reason });
            Ok((io::to_canonical_string(&report("classic", "pass", payload)), 0))
        }

        Command::GaPair { algebra, alpha, element, trunc } => {
            let alg = io::algebra_from_json(&read_json_arg(&algebra)?).map_err(err2)?;
            let alpha: BigRational =
                io::rational_from_json(&Value::String(alpha)).map_err(err2)?;
            let u =
                io::vector_from_json(alg.field(), &read_json_arg(&element)?).map_err(err2)?;
            if u.len() != alg.dim() {
                return Err(format!(
                    "malformed input: element has {} coordinates, algebra has dimension {}",
                    u.len(),
                    alg.dim()
                ));
            }
            let pairing = ga_pairing(&alg).map_err(err2)?;
            let image = pairing.exp(&alpha, &u).map_err(err2)?;
            let mut payload = serde_json::Map::new();
            payload.insert(
                "radical".into(),
                Value::Array(pairing.radical().iter().map(|v| io::vector_to_json(v)).collect()),
            );
            payload.insert("exp".into(), io::vector_to_json(&image));
            if let Some(n) = trunc {
                payload.insert("series".into(), io::series_to_json(&exp_element(&alpha, n)));
            }
            let doc = report("ga-pair", "pass", Value::Object(payload));
            Ok((io::to_canonical_string(&doc), 0))
        }

        Command::GmSubgroups { input } => {
            let m = io::intmatrix_from_json(&read_json_arg(&input)?).map_err(err2)?;
            let dual = gm_subgroup_dual(&m).map_err(err2)?;
            let payload = json!({
                "free_rank": dual.free_rank,
                "mu_orders": dual.mu_orders,
                "epimorphism_exponents": io::intmatrix_to_json(&dual.epimorphism_exponents),
            });
            Ok((io::to_canonical_string(&report("gm-subgroups", "pass", payload)), 0))
        }

        Command::Build { construction, group, monoid, prime, field } => {
            let h = build_hopf(&construction, group, monoid, prime, field)?;
            Ok((io::to_canonical_string(&io::hopf_to_json(&h)), 0))
        }
    }
}

fn resolve_field(
    prime: Option<u64>,
    field_flag: Option<&str>,
    default: Option<Field>,
) -> Result<Field, String> {
    match (prime, field_flag) {
        (Some(_), Some(_)) => {
            Err("malformed input: pass either --prime or --field, not both".into())
        }
        (Some(p), None) => Field::prime(p).map_err(err2),
        (None, Some(f)) => io::field_from_flag(f).map_err(err2),
        (None, None) => {
            default.ok_or_else(|| "malformed input: a field is required (--prime or --field)".into())
        }
    }
}

fn build_hopf(
    construction: &str,
    group: Option<String>,
    monoid: Option<String>,
    prime: Option<u64>,
    field: Option<String>,
) -> Result<HopfAlgebra, String> {
    let read_monoid = |group: &Option<String>, monoid: &Option<String>| {
        match (group, monoid) {
            (Some(_), Some(_)) => {
                Err("malformed input: pass either --group or --monoid, not both".to_string())
            }
            (Some(g), None) => {
                let g = io::group_from_json(&read_json_arg(g)?).map_err(err2)?;
                if !g.is_finite() {
                    return Err(
                        "NotFinite: only finite groups have finite-dimensional algebras".into()
                    );
                }
                Ok(g.cayley_table())
            }
            (None, Some(m)) => io::monoid_from_json(&read_json_arg(m)?).map_err(err2),
            (None, None) => {
                Err("malformed input: this construction needs --group or --monoid".to_string())
            }
        }
    };
    match construction {
        "group-algebra" => {
            let m = read_monoid(&group, &monoid)?;
            let f = match field {
                Some(s) => io::field_from_flag(&s).map_err(err2)?,
                None => Field::Rationals,
            };
            Ok(group_algebra(&m, f))
        }
        "function-algebra" => {
            let m = read_monoid(&group, &monoid)?;
            let f = match field {
                Some(s) => io::field_from_flag(&s).map_err(err2)?,
                None => Field::Rationals,
            };
            Ok(function_algebra(&m, f))
        }
        "additive-truncated" => {
            let p = prime
                .ok_or_else(|| "malformed input: additive-truncated needs --prime".to_string())?;
            if group.is_some() || monoid.is_some() {
                return Err(
                    "malformed input: additive-truncated takes no --group or --monoid".into(),
                );
            }
            match field {
                None => {
                    Field::prime(p).map_err(err2)?;
                    Ok(additive_truncated(p))
                }
                Some(s) => {
                    let f = io::field_from_flag(&s).map_err(err2)?;
                    Field::prime(p).map_err(err2)?;
                    Ok(additive_truncated_over(f, p))
                }
            }
        }
        other => Err(format!(
            "malformed input: unknown construction {other:?} \
             (expected group-algebra, function-algebra, or additive-truncated)"
        )),
    }
}
