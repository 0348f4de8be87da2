use std::io::Write;
use std::process::ExitCode;

use braidcryst::bieberbach::{build_gn_tilde, manifold_report, verify_bieberbach};
use braidcryst::crystal::{conjugacy_test, is_crystallographic, DEFAULT_ENUMERATION_CAP};
use braidcryst::families::{relator_catalogue, relator_check};
use braidcryst::json::{element_from_str, element_to_json, int_value};
use braidcryst::oracle::{
    brute_conjugacy, brute_order, faithfulness_enum, relation_suite, BruteConjugacy, BruteOrder,
    NaiveElement, NaiveGroup,
};
use braidcryst::torsion::{
    conjugacy_normal_form, make_random_torsion_element, make_torsion_element,
    realize_virtually_cyclic, torsion_certificate,
};
use braidcryst::{evaluate, parse, quotient, CrystalGroup, Element, Error, Family, Order};
use clap::{Args, Parser, Subcommand};
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde_json::{json, Value};

/// Computations in crystallographic quotients of virtual braid-like groups.
///
/// Elements are given as generator words (`"s1 l[2,3]^-1 r2"`) or as element
/// JSON objects. Results are written to stdout as JSON.
#[derive(Parser)]
#[command(name = "braidcryst", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct GroupArgs {
    /// vb, vt, plbext or kb3.
    #[arg(long, default_value = "vb", value_parser = parse_family)]
    family: Family,
    /// Number of strands.
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Accepted for scripting; output is always JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a word and report the element and its order.
    Eval {
        #[command(flatten)]
        group: GroupArgs,
        word: String,
    },
    /// Order of an element with its orbit-sum certificate.
    Order {
        #[command(flatten)]
        group: GroupArgs,
        element: String,
    },
    /// Decide whether two elements are conjugate.
    Conj {
        #[command(flatten)]
        group: GroupArgs,
        first: String,
        second: String,
    },
    /// Canonical representative of a conjugacy class (vb and kb3).
    NormalForm {
        #[command(flatten)]
        group: GroupArgs,
        element: String,
    },
    /// Build a torsion element with a prescribed cycle type.
    TorsionMake {
        #[command(flatten)]
        group: GroupArgs,
        /// Comma-separated cycle lengths, e.g. `2,3`.
        #[arg(long, value_delimiter = ',', required = true)]
        cycle_type: Vec<usize>,
        /// Draw the free coefficients at random from `-bound..=bound`.
        #[arg(long)]
        bound: Option<i64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Realize Z_n ⋊ Z with twist k inside the vb or vt quotient.
    VcRealize {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        k: usize,
    },
    /// Invariants of the flat manifold built from the vb quotient on n strands.
    Bieberbach {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate one of the relator families in vb or vt.
    Relcheck {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        arrow: u8,
    },
    /// Check the defining relations and faithfulness of the point-group action.
    Crystcheck {
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Brute-force reference computations.
    Oracle {
        #[command(subcommand)]
        query: OracleQuery,
    },
}

#[derive(Subcommand)]
enum OracleQuery {
    /// Smallest k <= cap with e^k = 1.
    Order {
        #[command(flatten)]
        group: GroupArgs,
        element: String,
        #[arg(long, default_value_t = 24)]
        cap: u64,
    },
    /// Search for a conjugator with translation in a box.
    Conj {
        #[command(flatten)]
        group: GroupArgs,
        first: String,
        second: String,
        #[arg(long, default_value_t = 2)]
        radius: u32,
    },
    /// Nontrivial point-group elements acting trivially.
    Kernel {
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Every defining relation evaluated in the quotient.
    Relations {
        #[command(flatten)]
        group: GroupArgs,
    },
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse()
        .map_err(|_| format!("unknown family '{s}' (expected vb, vt, plbext or kb3)"))
}

/// Largest brute conjugacy box searched.
const MAX_BOX: u64 = 1 << 30;

fn group_of(args: &GroupArgs) -> braidcryst::Result<CrystalGroup> {
    quotient(args.family, args.n)
}

/// A word in `group`, or an element JSON object naming its own group.
fn element_arg(args: &GroupArgs, text: &str) -> braidcryst::Result<(CrystalGroup, Element)> {
    if text.trim_start().starts_with('{') {
        return element_from_str(text);
    }
    let group = group_of(args)?;
    let e = evaluate(&parse(text)?, &group)?;
    Ok((group, e))
}

fn same_group(a: &CrystalGroup, b: &CrystalGroup) -> braidcryst::Result<()> {
    if a.name() != b.name() {
        return Err(Error::AmbientMismatch {
            group: a.name(),
            reason: format!("second element lives in {}", b.name()),
        });
    }
    Ok(())
}

fn order_value(order: Order) -> Value {
    serde_json::to_value(order).expect("plain data")
}

fn label(&(i, j): &(usize, usize)) -> String {
    format!("{i},{j}")
}

fn naive_json(g: &CrystalGroup, ng: &NaiveGroup, e: &NaiveElement) -> Value {
    element_to_json(g, &ng.to_element(g, e))
}

fn run(command: Command) -> braidcryst::Result<Value> {
    Ok(match command {
        Command::Eval { group, word } => {
            let g = group_of(&group)?;
            let parsed = parse(&word)?;
            let e = evaluate(&parsed, &g)?;
            json!({
                "group": g.name(),
                "word": parsed.to_string(),
                "order": order_value(g.order(&e)?),
                "element": element_to_json(&g, &e),
            })
        }
        Command::Order { group, element } => {
            let (g, e) = element_arg(&group, &element)?;
            let cert = torsion_certificate(&g, &e)?;
            let sums: Vec<Value> = cert
                .orbit_sums
                .iter()
                .map(|s| {
                    json!({
                        "representative": label(&s.representative),
                        "members": s.members.iter().map(label).collect::<Vec<_>>(),
                        "sum": int_value(&s.sum),
                        "self_inverse": s.self_inverse,
                    })
                })
                .collect();
            json!({
                "group": g.name(),
                "order": order_value(cert.order),
                "orbit_sums": sums,
                "transversal": cert.transversal.iter().map(label).collect::<Vec<_>>(),
            })
        }
        Command::Conj {
            group,
            first,
            second,
        } => {
            let (g, e1) = element_arg(&group, &first)?;
            let (g2, e2) = element_arg(&group, &second)?;
            same_group(&g, &g2)?;
            let verdict = conjugacy_test(&g, &e1, &e2)?;
            let witness = verdict.witness().map(|w| element_to_json(&g, w));
            json!({
                "group": g.name(),
                "conjugate": witness.is_some(),
                "witness": witness,
            })
        }
        Command::NormalForm { group, element } => {
            let (g, e) = element_arg(&group, &element)?;
            let nf = conjugacy_normal_form(&g, &e)?;
            json!({ "group": g.name(), "normal_form": element_to_json(&g, &nf) })
        }
        Command::TorsionMake {
            group,
            cycle_type,
            bound,
            seed,
        } => {
            let g = group_of(&group)?;
            let e = match bound {
                Some(b) => make_random_torsion_element(
                    &g,
                    &cycle_type,
                    b,
                    &mut StdRng::seed_from_u64(seed),
                )?,
                None => make_torsion_element(&g, &cycle_type)?,
            };
            json!({
                "group": g.name(),
                "cycle_type": cycle_type,
                "order": order_value(g.order(&e)?),
                "element": element_to_json(&g, &e),
            })
        }
        Command::VcRealize { group, k } => {
            let r = realize_virtually_cyclic(group.family, group.n, k)?;
            let g = group_of(&group)?;
            json!({
                "group": g.name(),
                "k": r.k,
                "a": element_to_json(&g, &r.a),
                "b": element_to_json(&g, &r.b),
                "gamma": r.gamma.images(),
                "a_has_order_n": r.a_has_order_n,
                "conjugation_holds": r.conjugation_holds,
                "b_infinite": r.b_infinite,
                "trivial_intersection": r.trivial_intersection,
                "transcript": r.transcript,
            })
        }
        Command::Bieberbach { n, .. } => {
            let report = manifold_report(n)?;
            let sub = build_gn_tilde(n)?;
            let mut value = serde_json::to_value(&report).expect("plain data");
            let bieberbach = verify_bieberbach(&sub)?.is_bieberbach();
            value["bieberbach"] = Value::Bool(bieberbach);
            value
        }
        Command::Relcheck { group, arrow } => {
            let g = group_of(&group)?;
            let report = relator_check(&g, arrow)?;
            let relation = relator_catalogue()
                .into_iter()
                .find(|t| t.arrow == arrow)
                .map(|t| t.relation);
            let images: Vec<Value> = report
                .images
                .iter()
                .map(|(i, e)| json!({ "i": i, "image": element_to_json(&g, e) }))
                .collect();
            json!({
                "trivial": report.trivial,
                "group": g.name(),
                "arrow": arrow,
                "relation": relation,
                "images": images,
            })
        }
        Command::Crystcheck { group } => {
            let g = group_of(&group)?;
            let relations = relation_suite(group.family, group.n)?;
            let verdict = is_crystallographic(&g, DEFAULT_ENUMERATION_CAP)?;
            json!({
                "group": g.name(),
                "relations_hold": relations.iter().all(|(_, ok)| *ok),
                "failed_relations": relations.iter().filter(|(_, ok)| !ok).map(|(r, _)| r).collect::<Vec<_>>(),
                "crystallographic": verdict.faithful,
                "point_group_size": verdict.point_group_size.to_string(),
                "kernel_witness": verdict.kernel_witness.map(|w| w.to_string()),
            })
        }
        Command::Oracle { query } => run_oracle(query)?,
    })
}

fn naive_of(g: &CrystalGroup, e: &Element) -> braidcryst::Result<NaiveElement> {
    NaiveGroup::new(g.family(), g.n())
        .from_element(g, e)
        .ok_or_else(|| Error::Precondition("coefficients exceed the oracle's i64 range".into()))
}

fn run_oracle(query: OracleQuery) -> braidcryst::Result<Value> {
    Ok(match query {
        OracleQuery::Order {
            group,
            element,
            cap,
        } => {
            let (g, e) = element_arg(&group, &element)?;
            let ng = NaiveGroup::new(g.family(), g.n());
            let order = match brute_order(&ng, &naive_of(&g, &e)?, cap) {
                BruteOrder::Finite(k) => json!(k),
                BruteOrder::Unknown => Value::Null,
            };
            json!({ "group": g.name(), "cap": cap, "order": order })
        }
        OracleQuery::Conj {
            group,
            first,
            second,
            radius,
        } => {
            let (g, e1) = element_arg(&group, &first)?;
            let (g2, e2) = element_arg(&group, &second)?;
            same_group(&g, &g2)?;
            let ng = NaiveGroup::new(g.family(), g.n());
            let side = 2 * radius as u64 + 1;
            if side
                .checked_pow(ng.rank() as u32)
                .is_none_or(|b| b > MAX_BOX)
            {
                return Err(Error::Precondition(format!(
                    "search box {side}^{} exceeds {MAX_BOX}",
                    ng.rank()
                )));
            }
            let witness =
                match brute_conjugacy(&ng, &naive_of(&g, &e1)?, &naive_of(&g, &e2)?, radius) {
                    BruteConjugacy::Witness(w) => naive_json(&g, &ng, &w),
                    BruteConjugacy::NotFoundWithin(_) => Value::Null,
                };
            json!({ "group": g.name(), "radius": radius, "witness": witness })
        }
        OracleQuery::Kernel { group } => {
            let g = group_of(&group)?;
            let ng = NaiveGroup::new(g.family(), g.n());
            let kernel: Vec<Value> = faithfulness_enum(&ng)?
                .into_iter()
                .map(|w| {
                    naive_json(
                        &g,
                        &ng,
                        &NaiveElement {
                            v: vec![0; ng.rank()],
                            w,
                        },
                    )
                })
                .collect();
            json!({ "group": g.name(), "kernel": kernel })
        }
        OracleQuery::Relations { group } => {
            let relations: Vec<Value> = relation_suite(group.family, group.n)?
                .into_iter()
                .map(|(r, ok)| json!({ "relation": r, "holds": ok }))
                .collect();
            json!({ "family": group.family, "n": group.n, "relations": relations })
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(cli.command) {
        Ok(value) => {
            let text = serde_json::to_string_pretty(&value).expect("plain data");
            // a closed pipe downstream is not an error of ours
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_parse_error() { 2 } else { 1 })
        }
    }
}
