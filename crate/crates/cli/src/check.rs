use std::fmt::Debug;
use std::io::Write;
use std::path::Path;

use diagram_core::algebra::Monoid;
use diagram_core::annular::{build_ann_monoid, enumerate_affine, AffineMonoid};
use diagram_core::auxmonoids::{
    je_integers, je_parity, A21Monoid, CircleForest, ReesL2Element, ReesL2Monoid, SDPElement, SDPMonoid, A21,
};
use diagram_core::cobordisms::CobordismMonoid;
use diagram_core::identities::{
    check_by_criterion, check_identity, check_identity_sampled, named_identity, parse_identity, Alphabet, Domain,
    Evidence, Identity, Mode, Verdict,
};
use diagram_core::partitions::{enumerate_partitions, is_irreducible_idempotent, Partition, PartitionMonoid};
use diagram_harness::gen;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::{read_input, split_size, write_out, CliError};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    /// The criterion for `M` and `N`, a search everywhere else.
    #[default]
    Auto,
    Criterion,
    Search,
}

#[derive(Clone, Debug, Default)]
pub struct CheckOptions {
    pub strategy: Strategy,
    /// Substitutions to try; each target has its own default.
    pub budget: Option<usize>,
    pub seed: u64,
}

const POOL_BUDGET: usize = 1_000_000;
const SAMPLE_BUDGET: usize = 10_000;

fn word_error(e: impl std::fmt::Display) -> CliError {
    CliError::Parse(e.to_string())
}

fn literal(s: &str) -> Result<(Identity, Alphabet), CliError> {
    let (l, r) = s.split_once('=').or_else(|| s.split_once('~')).unwrap_or((s, ""));
    let mode = if l.trim() == "1" || r.trim() == "1" { Mode::Monoid } else { Mode::Semigroup };
    parse_identity(s, mode).map_err(word_error)
}

fn named(s: &str) -> Option<(Identity, Alphabet)> {
    let id = named_identity(s.trim())?;
    let k = id.letters().into_iter().max().unwrap_or(0);
    Some((id, Alphabet::indexed(k)))
}

/// A registered name, a literal `u = v`, or a file whose first non-blank,
/// non-`#` line is one of those.
pub fn resolve_identity(spec: &str) -> Result<(Identity, Alphabet), CliError> {
    if let Some(r) = named(spec) {
        return Ok(r);
    }
    if spec.contains(['=', '~']) {
        return literal(spec);
    }
    if Path::new(spec).is_file() || spec == "-" {
        let text = read_input(spec)?;
        let line = text
            .lines()
            .map(str::trim)
            .find(|l| !l.is_empty() && !l.starts_with('#'))
            .ok_or_else(|| CliError::Parse(format!("{spec}: no identity found")))?;
        return named(line).map_or_else(|| literal(line), Ok);
    }
    Err(CliError::Parse(format!("{spec:?} is neither a registered identity, an equation nor a file")))
}

fn verdict_line<E>(v: &Verdict<E>, alpha: &Alphabet, show: impl Fn(&E) -> String) -> String {
    match v {
        Verdict::Holds(Evidence::Exhausted) => "Holds (all substitutions tried)".to_string(),
        Verdict::Holds(Evidence::Criterion) => "Holds (criterion)".to_string(),
        Verdict::Fails(w) => {
            let parts: Vec<String> = w.iter().map(|(x, e)| format!("{} = {}", alpha.name(*x), show(e))).collect();
            format!("Fails: {}", parts.join(", "))
        }
        Verdict::Unknown { tried } => format!("Unknown: no witness in {tried} substitutions"),
    }
}

fn finish<E>(v: Verdict<E>, alpha: &Alphabet, show: impl Fn(&E) -> String, out: &mut impl Write) -> Result<i32, CliError> {
    write_out(out, &verdict_line(&v, alpha, show))?;
    Ok(if v.is_fail() { 1 } else { 0 })
}

fn debug<E: Debug>(e: &E) -> String {
    format!("{e:?}")
}

fn search<M: Monoid>(
    id: &Identity,
    m: &M,
    domain: Domain<'_, M::Elem>,
    budget: usize,
    alpha: &Alphabet,
    show: impl Fn(&M::Elem) -> String,
    out: &mut impl Write,
) -> Result<i32, CliError> {
    finish(check_identity(id, m, domain, budget), alpha, show, out)
}

fn forests() -> Vec<CircleForest> {
    let c = CircleForest::circle();
    vec![CircleForest::zero(), c.clone(), c.add(&c), c.enclose()]
}

pub fn cmd_check(identity: &str, monoid: &str, opts: &CheckOptions, out: &mut impl Write) -> Result<i32, CliError> {
    let (id, alpha) = resolve_identity(identity)?;
    let criterion_target = matches!(monoid, "M" | "N");
    if opts.strategy == Strategy::Criterion && !criterion_target {
        return Err(CliError::Usage(format!("--criterion applies to M and N only, not {monoid}")));
    }
    if criterion_target && opts.strategy != Strategy::Search {
        let holds = check_by_criterion(&id, monoid == "M")
            .ok_or_else(|| CliError::Usage("the criterion decides identities without starred letters only".to_string()))?;
        let line = if holds { "Holds (criterion)" } else { "Fails (criterion)" };
        write_out(out, line)?;
        return Ok(if holds { 0 } else { 1 });
    }
    let pool_budget = opts.budget.unwrap_or(POOL_BUDGET);
    let full_budget = opts.budget.unwrap_or(usize::MAX);
    let sample_budget = opts.budget.unwrap_or(SAMPLE_BUDGET);
    match monoid {
        "M" => {
            let je = je_integers();
            let mut pool = Vec::new();
            for l in -2..=2 {
                pool.push(je.s(l));
                pool.extend((-2..=2).map(|r| je.pair(l, r)));
            }
            search(&id, &je, Domain::Pool(&pool), pool_budget, &alpha, |e| debug(&e.kind), out)
        }
        "N" => {
            let je = je_parity();
            let mut pool: Vec<_> = (-2..=2).map(|s| je.s(s)).collect();
            for l in 0..2 {
                pool.extend((0..2).map(|r| je.pair(l, r)));
            }
            search(&id, &je, Domain::Pool(&pool), pool_budget, &alpha, |e| debug(&e.kind), out)
        }
        "A21" => search(&id, &A21Monoid, Domain::Full(&A21::all()), full_budget, &alpha, A21::to_string, out),
        "SDP" => {
            let fs = forests();
            let mut pool = Vec::new();
            for a in &fs {
                for b in &fs {
                    pool.extend((-2..=2).map(|k| SDPElement::new(a.clone(), b.clone(), k)));
                }
            }
            search(&id, &SDPMonoid, Domain::Pool(&pool), pool_budget, &alpha, debug, out)
        }
        "Rees" => {
            let fs = &forests()[..3];
            let mut pool = vec![None];
            for a in fs {
                for b in fs {
                    pool.extend(fs.iter().map(|c| Some(ReesL2Element::new(a.clone(), b.clone(), c.clone()))));
                }
            }
            search(&id, &ReesL2Monoid, Domain::Pool(&pool), pool_budget, &alpha, debug, out)
        }
        _ => sized(&id, &alpha, monoid, opts, full_budget, pool_budget, sample_budget, out),
    }
}

#[allow(clippy::too_many_arguments)]
fn sized(
    id: &Identity,
    alpha: &Alphabet,
    monoid: &str,
    opts: &CheckOptions,
    full_budget: usize,
    pool_budget: usize,
    sample_budget: usize,
    out: &mut impl Write,
) -> Result<i32, CliError> {
    let unknown = || CliError::UnknownMonoid(monoid.to_string());
    let (head, suffix) = match monoid.split_once('-') {
        Some((h, s)) => (h, Some(s)),
        None => (monoid, None),
    };
    let (name, n) = split_size(head).ok_or_else(unknown)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    match (name, suffix) {
        ("P", None) => {
            let all: Vec<Partition> = enumerate_partitions(n, n).map_err(|e| CliError::Invalid(e.to_string()))?.collect();
            search(id, &PartitionMonoid { n }, Domain::Full(&all), full_budget, alpha, Partition::to_string, out)
        }
        ("Ann", None) => {
            let ann = build_ann_monoid(n).map_err(|e| CliError::Invalid(e.to_string()))?;
            let all: Vec<usize> = (0..ann.elements.len()).collect();
            search(id, &ann.table, Domain::Full(&all), full_budget, alpha, |&i| ann.elements[i].to_string(), out)
        }
        ("aTLe", None) => {
            let pool = enumerate_affine(n, n, 1);
            search(id, &AffineMonoid { n }, Domain::Pool(&pool), pool_budget, alpha, debug, out)
        }
        ("Cob", None | Some("bar")) => {
            let regular = suffix.is_some();
            write_out(out, &format!("seed {}", opts.seed))?;
            let m = CobordismMonoid { n, regular };
            let v = check_identity_sampled(id, &m, || gen::cobordism(&mut rng, n, n, regular), sample_budget);
            finish(v, alpha, debug, out)
        }
        ("Cob", Some("fiber")) => {
            let bases: Vec<Partition> = enumerate_partitions(n, n)
                .map_err(|e| CliError::Invalid(e.to_string()))?
                .filter(|e| is_irreducible_idempotent(e).unwrap_or(false))
                .collect();
            write_out(out, &format!("seed {}", opts.seed))?;
            let m = CobordismMonoid { n, regular: false };
            let per = (sample_budget / bases.len().max(1)).max(1);
            let mut tried = 0;
            for e in &bases {
                let v = check_identity_sampled(id, &m, || gen::cobordism_over(&mut rng, e.clone(), false), per);
                match v {
                    Verdict::Fails(_) => {
                        write_out(out, &format!("fibre over {e}"))?;
                        return finish(v, alpha, debug, out);
                    }
                    Verdict::Unknown { tried: t } => tried += t,
                    Verdict::Holds(_) => {}
                }
            }
            write_out(out, &format!("Unknown: no witness in {tried} substitutions over {} irreducible idempotents", bases.len()))?;
            Ok(0)
        }
        _ => Err(unknown()),
    }
}
