//! Command-line front end: argument definitions and the subcommand runner.
//!
//! Every subcommand produces a [`Report`] holding its text, JSON and CSV
//! renderings plus a flag saying whether all checked equalities held.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use bvoa::branching::{branching_product, branching_weylsum, denominator_identity_check};
use bvoa::characters::{invariant_series_oracle_with, theorem2_character_with};
use bvoa::fock::{FockSpace, Generators};
use bvoa::modealg::{
    bracket, griess_product, jordan_product, parse_rational_list, simplicity_scan, GenKey,
    SymMatrix,
};
use bvoa::qseries::TruncSeries;
use bvoa::rational::{format_rational, parse_rational, Rational};
use bvoa::rootsys::Weight;
use bvoa::weylchar::{sorted_multiplicities, CharacterTable};
use bvoa::{Caps, Error};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Debug, Parser)]
#[command(name = "bvoa", version, about = "Exact characters and mode algebra for type-B Jordan vertex algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Largest Weyl group order that may be enumerated.
    #[arg(long, default_value_t = 100_000, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub weyl_cap: u64,

    /// Largest Fock basis of a single degree.
    #[arg(long, default_value_t = 20_000, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub basis_cap: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Sum of `m^0` times products of branching functions over weight multisets.
    Theorem2,
    /// Trivial isotypic part of the fermionic character.
    Oracle,
    /// Invariant dimensions computed in the Fock space.
    Fock,
    /// All three, with a diff.
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenMode {
    Creation,
    Field,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Branching function B_lambda(q) by the product and Weyl-sum formulas.
    Branching {
        #[arg(long)]
        n: usize,
        /// Dominant weight, e.g. `0,1`.
        #[arg(long, default_value = "")]
        lambda: String,
        #[arg(long)]
        trunc: usize,
    },
    /// Multiplicities of L(mu) in a tensor product of irreducibles.
    Tensor {
        #[arg(long)]
        n: usize,
        /// Semicolon-separated dominant weights, e.g. `0,1;0,1`.
        #[arg(long)]
        weights: String,
        /// Only report this weight.
        #[arg(long)]
        mu: Option<String>,
    },
    /// Graded dimension of the vacuum module quotient.
    Char {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        trunc: usize,
        #[arg(long, value_enum, default_value_t = Method::Theorem2)]
        method: Method,
    },
    /// The so(2n+1) denominator identity.
    DenomCheck {
        #[arg(long)]
        n: usize,
    },
    /// Degree-2 product of two symmetric matrices, against the Jordan product.
    Griess {
        #[arg(long)]
        d: usize,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        r: Rational,
        /// Row-major entries, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
    /// Bracket of two generators `L[a,b](m,n)`.
    Bracket {
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        r: Rational,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Pairs violating the irreducibility criterion.
    Simplicity {
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        r: Rational,
        #[arg(long)]
        d: usize,
        #[arg(long = "N")]
        big_n: usize,
    },
    /// Dimensions of the sp(2n)-invariants of the Fock space by degree.
    FockInvariants {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        maxlevel: usize,
    },
    /// Central charge and grading from the Fock space.
    Virasoro {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 4)]
        levels: usize,
    },
    /// Span of the states generated from the vacuum against the invariants.
    Generation {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        maxlevel: usize,
        #[arg(long, value_enum, default_value_t = GenMode::Creation)]
        generators: GenMode,
    },
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// Output of one subcommand.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub text: String,
    pub json: Value,
    pub csv: String,
    /// All equalities checked by the subcommand held.
    pub ok: bool,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Json => serde_json::to_string_pretty(&self.json).expect("values serialize") + "\n",
            Format::Csv => self.csv.clone(),
        }
    }
}

fn series_json(s: &TruncSeries) -> Value {
    serde_json::to_value(s).expect("series serialize")
}

fn series_csv(cols: &[(&str, &TruncSeries)]) -> String {
    let mut out = String::from("k");
    for (name, _) in cols {
        write!(out, ",{name}").unwrap();
    }
    out.push('\n');
    let trunc = cols.iter().map(|(_, s)| s.trunc()).min().unwrap_or(0);
    for k in 0..=trunc {
        write!(out, "{k}").unwrap();
        for (_, s) in cols {
            write!(out, ",{}", s.coeff(k)).unwrap();
        }
        out.push('\n');
    }
    out
}

fn coeff_list(s: &TruncSeries) -> String {
    let v: Vec<String> = s.coeffs().iter().map(|c| c.to_string()).collect();
    format!("[{}]", v.join(","))
}

/// Lines `k: a vs b` for every coefficient where two series differ.
fn series_diff(a_name: &str, a: &TruncSeries, b_name: &str, b: &TruncSeries) -> Vec<String> {
    let trunc = a.trunc().min(b.trunc());
    (0..=trunc)
        .filter(|k| a.coeff(*k) != b.coeff(*k))
        .map(|k| format!("q^{k}: {a_name} {} vs {b_name} {}", a.coeff(k), b.coeff(k)))
        .collect()
}

fn parse_weight(s: &str, n: usize, offset: usize) -> Result<Weight, Error> {
    let w: Weight = s.parse().map_err(|e| shift_pos(e, offset))?;
    if w.rank() != n {
        return Err(Error::RankMismatch { left: w.rank(), right: n });
    }
    if !w.is_dominant() {
        return Err(Error::NotDominant(w.to_string()));
    }
    Ok(w)
}

fn shift_pos(e: Error, offset: usize) -> Error {
    match e {
        Error::Parse { pos, msg } => Error::Parse { pos: pos + offset, msg },
        other => other,
    }
}

pub fn run(cli: &Cli) -> Result<Report, Error> {
    let caps = Caps {
        weyl: cli.weyl_cap as u128,
        basis: cli.basis_cap as usize,
    };
    match &cli.command {
        Command::Branching { n, lambda, trunc } => {
            let lambda = if lambda.trim().is_empty() {
                Weight::zero(*n)
            } else {
                parse_weight(lambda, *n, 0)?
            };
            let p = branching_product(&lambda, *n, *trunc)?;
            let w = branching_weylsum(&lambda, *n, *trunc, &caps)?;
            let ok = p == w;
            let mut text = format!("lambda: {lambda}\nproduct:  {p}\nweyl-sum: {w}\nequal: {ok}\n");
            for line in series_diff("product", &p, "weyl-sum", &w) {
                writeln!(text, "diff {line}").unwrap();
            }
            Ok(Report {
                text,
                json: json!({"lambda": lambda.to_string(), "series": series_json(&p), "weyl_sum": series_json(&w), "equal": ok}),
                csv: series_csv(&[("product", &p), ("weyl_sum", &w)]),
                ok,
            })
        }
        Command::Tensor { n, weights, mu } => {
            let mut lambdas = Vec::new();
            let mut pos = 0;
            for part in weights.split(';') {
                lambdas.push(parse_weight(part, *n, pos)?);
                pos += part.len() + 1;
            }
            let table = CharacterTable::new(*n, &caps)?;
            let rows: Vec<(Weight, num_bigint::BigInt)> = match mu {
                Some(m) => {
                    let m = parse_weight(m, *n, 0)?;
                    let c = table.tensor_multiplicity(&lambdas, &m)?;
                    vec![(m, c)]
                }
                None => sorted_multiplicities(&table.tensor_decomposition(&lambdas)?),
            };
            let mut text = String::new();
            let mut csv = String::from("mu,m\n");
            for (w, c) in &rows {
                writeln!(text, "L({w}): {c}").unwrap();
                writeln!(csv, "\"{w}\",{c}").unwrap();
            }
            let list: Vec<Value> = rows
                .iter()
                .map(|(w, c)| json!({"mu": w.to_string(), "m": c.to_string()}))
                .collect();
            Ok(Report {
                text,
                json: json!({"multiplicities": list}),
                csv,
                ok: true,
            })
        }
        Command::Char { n, d, trunc, method } => {
            let want = |m: Method| *method == m || *method == Method::All;
            let mut series: BTreeMap<&str, TruncSeries> = BTreeMap::new();
            if want(Method::Theorem2) || want(Method::Oracle) {
                let table = CharacterTable::new(*n, &caps)?;
                if want(Method::Theorem2) {
                    series.insert("theorem2", theorem2_character_with(&table, *d, *trunc)?);
                }
                if want(Method::Oracle) {
                    series.insert("oracle", invariant_series_oracle_with(&table, *d, *trunc)?);
                }
            }
            if want(Method::Fock) {
                series.insert("fock", fock_series(*n, *d, *trunc, &caps)?);
            }
            let names: Vec<&str> = ["theorem2", "oracle", "fock"]
                .into_iter()
                .filter(|k| series.contains_key(k))
                .collect();
            let first = &series[names[0]];
            let mut diffs = Vec::new();
            for other in &names[1..] {
                diffs.extend(series_diff(names[0], first, other, &series[other]));
            }
            let ok = diffs.is_empty();
            let mut text = String::new();
            for name in &names {
                writeln!(text, "{name}: {}", coeff_list(&series[name])).unwrap();
            }
            if names.len() > 1 {
                writeln!(text, "equal: {ok}").unwrap();
            }
            for line in &diffs {
                writeln!(text, "diff {line}").unwrap();
            }
            let methods: serde_json::Map<String, Value> = names
                .iter()
                .map(|k| (k.to_string(), series_json(&series[k])))
                .collect();
            let cols: Vec<(&str, &TruncSeries)> = names.iter().map(|k| (*k, &series[k])).collect();
            Ok(Report {
                text,
                json: json!({"series": series_json(first), "methods": methods, "equal": ok, "diff": diffs}),
                csv: series_csv(&cols),
                ok,
            })
        }
        Command::DenomCheck { n } => {
            let (lhs, rhs) = denominator_identity_check(*n, &caps)?;
            let ok = lhs == rhs;
            Ok(Report {
                text: format!("product:  {lhs}\nweyl-sum: {rhs}\nequal: {ok}\n"),
                json: json!({"product": lhs.to_string(), "weyl_sum": rhs.to_string(), "equal": ok}),
                csv: format!("side,value\nproduct,\"{lhs}\"\nweyl_sum,\"{rhs}\"\n"),
                ok,
            })
        }
        Command::Griess { d, r, x, y } => {
            let xm = SymMatrix::new(*d, parse_rational_list(x)?)?;
            let ym = SymMatrix::new(*d, parse_rational_list(y)?)?;
            let g = griess_product(&xm, &ym, r)?;
            let j = jordan_product(&xm, &ym)?;
            let ok = g == j;
            let flat = |m: &SymMatrix| -> Vec<String> { m.entries().iter().map(format_rational).collect() };
            Ok(Report {
                text: format!("griess: {g}\njordan: {j}\nequal: {ok}\n"),
                json: json!({"griess": flat(&g), "jordan": flat(&j), "equal": ok}),
                csv: format!("product,entries\ngriess,\"{}\"\njordan,\"{}\"\n", flat(&g).join(" "), flat(&j).join(" ")),
                ok,
            })
        }
        Command::Bracket { r, x, y } => {
            let kx: GenKey = x.parse()?;
            let ky: GenKey = y.parse()?;
            let b = bracket(&kx, &ky, r);
            let terms: Vec<Value> = b
                .terms
                .iter()
                .map(|(k, c)| json!({"generator": k.to_string(), "coeff": format_rational(c)}))
                .collect();
            let mut csv = String::from("generator,coeff\n");
            for (k, c) in &b.terms {
                writeln!(csv, "\"{k}\",{}", format_rational(c)).unwrap();
            }
            writeln!(csv, "central,{}", format_rational(&b.central)).unwrap();
            Ok(Report {
                text: format!("[{kx}, {ky}] = {b}\n"),
                json: json!({"terms": terms, "central": format_rational(&b.central)}),
                csv,
                ok: true,
            })
        }
        Command::Simplicity { r, d, big_n } => {
            let v = simplicity_scan(r, *d, *big_n)?;
            let status = if !v.is_empty() {
                "reducible-consistent"
            } else if r.is_integer() {
                "inconclusive"
            } else {
                "irreducible-consistent"
            };
            let mut text = String::new();
            let mut csv = String::from("k,l,value\n");
            for x in &v {
                writeln!(text, "({},{}) value {}", x.k, x.l, x.value).unwrap();
                writeln!(csv, "{},{},{}", x.k, x.l, x.value).unwrap();
            }
            writeln!(text, "violations: {}\nstatus: {status}", v.len()).unwrap();
            let pairs: Vec<Value> = v.iter().map(|x| json!([x.k, x.l])).collect();
            let values: Vec<String> = v.iter().map(|x| x.value.to_string()).collect();
            Ok(Report {
                text,
                json: json!({"violations": pairs, "values": values, "status": status}),
                csv,
                ok: true,
            })
        }
        Command::FockInvariants { n, d, maxlevel } => {
            let s = fock_series(*n, *d, *maxlevel, &caps)?;
            Ok(Report {
                text: format!("dims: {}\n", coeff_list(&s)),
                json: json!({"series": series_json(&s)}),
                csv: series_csv(&[("dim", &s)]),
                ok: true,
            })
        }
        Command::Virasoro { n, d, levels } => {
            let fock = FockSpace::new(*n, *d)?;
            let rep = fock.virasoro_check(*levels, &caps)?;
            let ok = rep.passed();
            Ok(Report {
                text: format!(
                    "omega(3)omega: {}\nc: {}\nexpected c: {}\ngrading to level {}: {}\nok: {ok}\n",
                    rep.omega3_omega,
                    format_rational(&rep.c),
                    format_rational(&rep.expected_c),
                    rep.grading_levels,
                    rep.grading_ok
                ),
                json: json!({
                    "omega3_omega": rep.omega3_omega.to_string(),
                    "c": format_rational(&rep.c),
                    "expected_c": format_rational(&rep.expected_c),
                    "grading_ok": rep.grading_ok,
                    "grading_levels": rep.grading_levels,
                    "ok": ok,
                }),
                csv: format!(
                    "c,expected_c,grading_ok\n{},{},{}\n",
                    format_rational(&rep.c),
                    format_rational(&rep.expected_c),
                    rep.grading_ok
                ),
                ok,
            })
        }
        Command::Generation { n, d, maxlevel, generators } => {
            let fock = FockSpace::new(*n, *d)?;
            let mode = match generators {
                GenMode::Creation => Generators::Creation,
                GenMode::Field => Generators::FieldModes,
            };
            let levels = fock.generation_check(*maxlevel, mode, &caps)?;
            let ok = levels.iter().all(|l| l.ok());
            let mut text = String::new();
            let mut csv = String::from("level,generated,invariant,ok\n");
            for l in &levels {
                writeln!(text, "level {}: generated {} invariant {} {}", l.level, l.generated, l.invariant, if l.ok() { "ok" } else { "DEFICIENT" }).unwrap();
                writeln!(csv, "{},{},{},{}", l.level, l.generated, l.invariant, l.ok()).unwrap();
            }
            let rows: Vec<Value> = levels
                .iter()
                .map(|l| json!({"level": l.level, "generated": l.generated, "invariant": l.invariant, "ok": l.ok()}))
                .collect();
            Ok(Report {
                text,
                json: json!({"levels": rows, "ok": ok}),
                csv,
                ok,
            })
        }
    }
}

fn fock_series(n: usize, d: usize, top: usize, caps: &Caps) -> Result<TruncSeries, Error> {
    let fock = FockSpace::new(n, d)?;
    let dims = (0..=top)
        .map(|k| fock.invariant_subspace(k, caps).map(|s| s.dim as i64))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TruncSeries::from_i64s(top, &dims))
}
