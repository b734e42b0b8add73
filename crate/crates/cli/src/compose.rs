use std::fmt;
use std::io::Write;
use std::str::FromStr;

use diagram_core::annular::{AnnularPartition, DeformedAnnular};
use diagram_core::partitions::compose as compose_partitions;
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use crate::json::{self, AffineJson, PartitionJson};
use crate::{read_input, write_out, CliError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    P,
    Pd,
    Cob,
    Cob0,
    ATLe,
    ATL,
    ATLd,
    Ann,
    Annd,
}

/// A family together with the regular (`-bar`) flag.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Category {
    pub family: Family,
    pub regular: bool,
}

impl FromStr for Category {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let (name, regular) = match s.strip_suffix("-bar") {
            Some(n) => (n, true),
            None => (s, false),
        };
        let family = match name {
            "P" => Family::P,
            "Pd" => Family::Pd,
            "Cob" => Family::Cob,
            "Cob0" => Family::Cob0,
            "aTLe" => Family::ATLe,
            "aTL" => Family::ATL,
            "aTLd" => Family::ATLd,
            "Ann" => Family::Ann,
            "Annd" => Family::Annd,
            _ => return Err(CliError::Usage(format!("unknown category {s:?}"))),
        };
        if regular && matches!(family, Family::P | Family::ATLe | Family::Ann) {
            return Err(CliError::Usage(format!("{name} has no regular version")));
        }
        Ok(Category { family, regular })
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.family {
            Family::P => "P",
            Family::Pd => "Pd",
            Family::Cob => "Cob",
            Family::Cob0 => "Cob0",
            Family::ATLe => "aTLe",
            Family::ATL => "aTL",
            Family::ATLd => "aTLd",
            Family::Ann => "Ann",
            Family::Annd => "Annd",
        };
        write!(f, "{name}{}", if self.regular { "-bar" } else { "" })
    }
}

/// Every JSON value in the given sources, in order. A source may hold
/// several values or an array of them; the `product` of an earlier
/// `compose` output is accepted in place of a bare value.
pub fn load_values(paths: &[String]) -> Result<Vec<Value>, CliError> {
    let mut out = Vec::new();
    for path in paths {
        let text = read_input(path)?;
        for v in serde_json::Deserializer::from_str(&text).into_iter::<Value>() {
            match v? {
                Value::Array(items) => out.extend(items),
                Value::Object(mut o) if o.contains_key("product") => out.push(o.remove("product").unwrap()),
                v => out.push(v),
            }
        }
    }
    Ok(out)
}

fn typed<T: DeserializeOwned>(v: &Value) -> Result<T, CliError> {
    Ok(serde_json::from_value(v.clone())?)
}

fn invalid(e: impl fmt::Display) -> CliError {
    CliError::Invalid(e.to_string())
}

fn dead(a: &diagram_core::Partition, b: &diagram_core::Partition) -> Value {
    json!({ "dead_blocks": compose_partitions(a, b).map(|r| r.dead_count()).unwrap_or(0) })
}

/// Left-to-right product with a diagnostic per step.
fn fold<T>(
    items: Vec<T>,
    shape: impl Fn(&T) -> (usize, usize),
    step: impl Fn(&T, &T) -> Result<(T, Value), CliError>,
) -> Result<(T, Vec<Value>), CliError> {
    let mut it = items.into_iter().enumerate();
    let (_, mut acc) = it.next().ok_or_else(|| CliError::Usage("nothing to compose".to_string()))?;
    let mut diags = Vec::new();
    for (i, x) in it {
        let (left, right) = (shape(&acc).1, shape(&x).0);
        if left != right {
            return Err(CliError::Shape(format!("factor {i} ends in [{left}] but factor {} starts in [{right}]", i + 1)));
        }
        let (p, d) = step(&acc, &x)?;
        diags.push(d);
        acc = p;
    }
    Ok((acc, diags))
}

fn has_partners(v: &Value) -> bool {
    v.get("partners").is_some()
}

/// Composes the values in order and returns the product with the
/// per-step diagnostics.
pub fn compose_values(cat: Category, values: &[Value]) -> Result<Value, CliError> {
    let reg = cat.regular;
    let (product, steps): (Value, Vec<Value>) = match cat.family {
        Family::P => {
            let xs = values.iter().map(|v| json::parse_partition(&typed(v)?)).collect::<Result<Vec<_>, _>>()?;
            let (p, d) = fold(xs, |x| (x.m(), x.n()), |a, b| {
                let r = compose_partitions(a, b).map_err(invalid)?;
                let d = json!({ "dead_blocks": r.dead_count() });
                Ok((r.product, d))
            })?;
            (serde_json::to_value(json::partition(&p))?, d)
        }
        Family::Pd => {
            let xs = values.iter().map(|v| json::parse_deformed(&typed(v)?, reg)).collect::<Result<Vec<_>, _>>()?;
            let (p, d) = fold(xs, |x| (x.base().m(), x.base().n()), |a, b| {
                Ok((a.compose(b).map_err(invalid)?, dead(a.base(), b.base())))
            })?;
            (serde_json::to_value(json::deformed(&p))?, d)
        }
        Family::Cob => {
            let xs = values.iter().map(|v| json::parse_cobordism(&typed(v)?, reg)).collect::<Result<Vec<_>, _>>()?;
            let (p, d) = fold(xs, |x| (x.base().m(), x.base().n()), |a, b| {
                Ok((a.compose(b).map_err(invalid)?, dead(a.base(), b.base())))
            })?;
            (serde_json::to_value(json::cobordism(&p))?, d)
        }
        Family::Cob0 => {
            let xs = values.iter().map(|v| json::parse_labeled(&typed(v)?, reg)).collect::<Result<Vec<_>, _>>()?;
            let (p, d) = fold(xs, |x| (x.base().m(), x.base().n()), |a, b| {
                Ok((a.compose(b).map_err(invalid)?, dead(a.base(), b.base())))
            })?;
            (serde_json::to_value(json::labeled(&p))?, d)
        }
        Family::ATLe => {
            let xs = values.iter().map(|v| json::parse_affine(&typed(v)?)).collect::<Result<Vec<_>, _>>()?;
            let (p, d) = fold(xs, |x| (x.m(), x.n()), |a, b| {
                let c = a.compose(b).map_err(invalid)?;
                Ok((c.product, json!({ "b0": c.b0, "bw": c.bw })))
            })?;
            (serde_json::to_value(json::affine(&p))?, d)
        }
        Family::ATL => {
            let xs = values.iter().map(|v| json::parse_pair(&typed(v)?, reg)).collect::<Result<Vec<_>, _>>()?;
            let (p, d) = fold(xs, |x| (x.skeleton().m(), x.skeleton().n()), |a, b| {
                let c = a.skeleton().compose(b.skeleton()).map_err(invalid)?;
                Ok((a.compose(b).map_err(invalid)?, json!({ "b0": c.b0, "bw": c.bw })))
            })?;
            (serde_json::to_value(json::pair(&p))?, d)
        }
        Family::ATLd => {
            let xs = values.iter().map(|v| json::parse_triple(&typed(v)?, reg)).collect::<Result<Vec<_>, _>>()?;
            let (p, d) = fold(xs, |x| (x.skeleton().m(), x.skeleton().n()), |a, b| {
                let c = a.skeleton().compose(b.skeleton()).map_err(invalid)?;
                Ok((a.compose(b).map_err(invalid)?, json!({ "b0": c.b0, "bw": c.bw })))
            })?;
            (serde_json::to_value(json::triple(&p))?, d)
        }
        Family::Ann => {
            let xs = values.iter().map(parse_annular).collect::<Result<Vec<_>, _>>()?;
            let (p, d) = fold(xs, |x| (x.base().m(), x.base().n()), |a, b| {
                Ok((a.compose(b).map_err(invalid)?, dead(a.base(), b.base())))
            })?;
            (serde_json::to_value(json::annular(&p))?, d)
        }
        Family::Annd => {
            let xs = values.iter().map(|v| parse_deformed_annular(v, reg)).collect::<Result<Vec<_>, _>>()?;
            let (p, d) = fold(xs, |x| (x.base().base().m(), x.base().base().n()), |a, b| {
                Ok((a.compose(b).map_err(invalid)?, dead(a.base().base(), b.base().base())))
            })?;
            (serde_json::to_value(json::deformed_annular(&p))?, d)
        }
    };
    Ok(json!({ "category": cat.to_string(), "product": product, "steps": steps }))
}

/// An affine diagram (projected) or a partition taken as annular.
pub fn parse_annular(v: &Value) -> Result<AnnularPartition, CliError> {
    if has_partners(v) {
        Ok(AnnularPartition::from_affine(&json::parse_affine(&typed::<AffineJson>(v)?)?))
    } else {
        Ok(AnnularPartition::from_base(json::parse_partition(&typed::<PartitionJson>(v)?)?))
    }
}

/// An affine triple (all circles counted together) or a partition with `k`.
pub fn parse_deformed_annular(v: &Value, regular: bool) -> Result<DeformedAnnular, CliError> {
    if has_partners(v) {
        Ok(DeformedAnnular::from_triple(&json::parse_triple(&typed::<AffineJson>(v)?, regular)?))
    } else {
        let j: PartitionJson = typed(v)?;
        let base = AnnularPartition::from_base(json::parse_partition(&j)?);
        DeformedAnnular::new(base, j.k.unwrap_or(0), regular).map_err(invalid)
    }
}

pub fn cmd_compose(category: &str, inputs: &[String], out: &mut impl Write) -> Result<i32, CliError> {
    let cat: Category = category.parse()?;
    let values = load_values(inputs)?;
    let result = compose_values(cat, &values)?;
    write_out(out, &serde_json::to_string(&result)?)?;
    Ok(0)
}
