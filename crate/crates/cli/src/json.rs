//! JSON forms of the diagram values.
//!
//! Partitions are `{"m", "n", "blocks": [[{"side", "index"}, …], …]}`;
//! affine diagrams are `{"m", "n", "partners": [{"from", "to"}, …]}` with
//! `to` carrying an `offset`. Labelled variants add `genus`, keyed by the
//! least vertex of each block (`"In1"`, `"Out2"`), and `spectrum`, a map from
//! genus to count. Scalar and circle counts are `s`, `k` and `k0`.

use std::collections::BTreeMap;

use diagram_core::annular::{APoint, AffineDiagram, AffinePair, AffineTriple, AnnularPartition, DeformedAnnular};
use diagram_core::cobordisms::{Cobordism, DeformedPartition, LabeledPartition, Spectrum};
use diagram_core::partitions::{Partition, Side, Vertex};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub side: SideJson,
    pub index: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SideJson {
    In,
    Out,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointJson {
    pub offset: i64,
    pub side: SideJson,
    pub index: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PartitionJson {
    pub m: usize,
    pub n: usize,
    pub blocks: Vec<Vec<VertexJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus: Option<BTreeMap<String, i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<BTreeMap<i64, i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartnerJson {
    pub from: VertexJson,
    pub to: PointJson,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct AffineJson {
    pub m: usize,
    pub n: usize,
    pub partners: Vec<PartnerJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k0: Option<i64>,
}

fn side(s: Side) -> SideJson {
    match s {
        Side::In => SideJson::In,
        Side::Out => SideJson::Out,
    }
}

fn unside(s: SideJson) -> Side {
    match s {
        SideJson::In => Side::In,
        SideJson::Out => Side::Out,
    }
}

fn vertex(v: Vertex) -> VertexJson {
    VertexJson { side: side(v.side), index: v.index }
}

fn unvertex(v: VertexJson) -> Vertex {
    Vertex { side: unside(v.side), index: v.index }
}

pub fn vertex_key(v: Vertex) -> String {
    match v.side {
        Side::In => format!("In{}", v.index),
        Side::Out => format!("Out{}", v.index),
    }
}

fn invalid(e: impl std::fmt::Display) -> CliError {
    CliError::Invalid(e.to_string())
}

fn missing(field: &str) -> CliError {
    CliError::Parse(format!("missing field `{field}`"))
}

pub fn partition(p: &Partition) -> PartitionJson {
    PartitionJson {
        m: p.m(),
        n: p.n(),
        blocks: p.blocks().into_iter().map(|b| b.into_iter().map(vertex).collect()).collect(),
        ..Default::default()
    }
}

pub fn parse_partition(j: &PartitionJson) -> Result<Partition, CliError> {
    let blocks: Vec<Vec<Vertex>> = j.blocks.iter().map(|b| b.iter().copied().map(unvertex).collect()).collect();
    Partition::new(j.m, j.n, &blocks).map_err(invalid)
}

fn genus_map(p: &Partition, genus: &[i64]) -> BTreeMap<String, i64> {
    genus.iter().enumerate().map(|(b, &g)| (vertex_key(p.least_vertex(b)), g)).collect()
}

fn parse_genus(p: &Partition, j: &PartitionJson) -> Result<Vec<i64>, CliError> {
    let map = j.genus.as_ref().ok_or_else(|| missing("genus"))?;
    if map.len() != p.num_blocks() {
        return Err(CliError::Invalid(format!("{} genus labels for {} blocks", map.len(), p.num_blocks())));
    }
    (0..p.num_blocks())
        .map(|b| {
            let key = vertex_key(p.least_vertex(b));
            map.get(&key).copied().ok_or_else(|| CliError::Invalid(format!("no genus for the block of {key}")))
        })
        .collect()
}

pub fn deformed(x: &DeformedPartition) -> PartitionJson {
    PartitionJson { s: Some(x.s()), ..partition(x.base()) }
}

pub fn parse_deformed(j: &PartitionJson, regular: bool) -> Result<DeformedPartition, CliError> {
    DeformedPartition::new(parse_partition(j)?, j.s.ok_or_else(|| missing("s"))?, regular).map_err(invalid)
}

pub fn labeled(x: &LabeledPartition) -> PartitionJson {
    PartitionJson { genus: Some(genus_map(x.base(), x.genus())), ..partition(x.base()) }
}

pub fn parse_labeled(j: &PartitionJson, regular: bool) -> Result<LabeledPartition, CliError> {
    let p = parse_partition(j)?;
    let g = parse_genus(&p, j)?;
    LabeledPartition::new(p, g, regular).map_err(invalid)
}

pub fn cobordism(x: &Cobordism) -> PartitionJson {
    PartitionJson {
        genus: Some(genus_map(x.base(), x.genus())),
        spectrum: Some(x.closed().iter().collect()),
        ..partition(x.base())
    }
}

pub fn parse_cobordism(j: &PartitionJson, regular: bool) -> Result<Cobordism, CliError> {
    let p = parse_partition(j)?;
    let g = parse_genus(&p, j)?;
    let s = Spectrum::from_pairs(j.spectrum.clone().unwrap_or_default());
    Cobordism::new(p, g, s, regular).map_err(invalid)
}

pub fn affine(a: &AffineDiagram) -> AffineJson {
    let partners = (1..=a.m())
        .map(|i| APoint::input(0, i))
        .chain((1..=a.n()).map(|i| APoint::output(0, i)))
        .map(|p| {
            let q = a.partner_of(p);
            PartnerJson { from: vertex(p.vertex()), to: PointJson { offset: q.offset, side: side(q.side), index: q.index } }
        })
        .collect();
    AffineJson { m: a.m(), n: a.n(), partners, ..Default::default() }
}

pub fn parse_affine(j: &AffineJson) -> Result<AffineDiagram, CliError> {
    let partners: Vec<(Vertex, APoint)> = j
        .partners
        .iter()
        .map(|p| (unvertex(p.from), APoint { offset: p.to.offset, side: unside(p.to.side), index: p.to.index }))
        .collect();
    AffineDiagram::new(j.m, j.n, &partners).map_err(invalid)
}

pub fn pair(x: &AffinePair) -> AffineJson {
    AffineJson { k: Some(x.k()), ..affine(x.skeleton()) }
}

pub fn parse_pair(j: &AffineJson, regular: bool) -> Result<AffinePair, CliError> {
    AffinePair::new(parse_affine(j)?, j.k.unwrap_or(0), regular).map_err(invalid)
}

pub fn triple(x: &AffineTriple) -> AffineJson {
    AffineJson { k: Some(x.k()), k0: Some(x.k0()), ..affine(x.skeleton()) }
}

pub fn parse_triple(j: &AffineJson, regular: bool) -> Result<AffineTriple, CliError> {
    AffineTriple::new(parse_affine(j)?, j.k.unwrap_or(0), j.k0.unwrap_or(0), regular).map_err(invalid)
}

pub fn annular(x: &AnnularPartition) -> PartitionJson {
    partition(x.base())
}

pub fn deformed_annular(x: &DeformedAnnular) -> PartitionJson {
    PartitionJson { k: Some(x.k()), ..partition(x.base().base()) }
}
