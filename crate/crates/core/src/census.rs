//! Sweep over cataloged `(G, H, g)` and every `L` with `g² ∈ L < H`.

use rayon::prelude::*;
use serde::Serialize;

use crate::cosetgraph::CosetGraph;
use crate::error::{Error, Result};
use crate::extender::{ClassificationReport, ExtenderPair};
use crate::families::{alternating, dihedral, px_graph_in, px_group, symmetric};
use crate::group::PermutationGroup;
use crate::perm::Permutation;
use crate::spec::{perm_from_cycles, CatalogSpec};
use crate::subgroups::subgroups_containing;
use crate::tetra::psl2_example;

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub group: PermutationGroup,
    pub stabilizer: PermutationGroup,
    pub flip: Permutation,
}

impl CatalogEntry {
    pub fn new(name: impl Into<String>, group: PermutationGroup, stabilizer: PermutationGroup, flip: Permutation) -> Self {
        CatalogEntry { name: name.into(), group, stabilizer, flip }
    }

    pub fn sigma(&self) -> Result<CosetGraph> {
        CosetGraph::new(&self.group, &self.stabilizer, &self.flip)
    }
}

fn cyc(n: usize, cycles: &[&[usize]]) -> Permutation {
    Permutation::from_cycles(n, &cycles.iter().map(|c| c.to_vec()).collect::<Vec<_>>()).expect("valid")
}

fn grp(n: usize, gens: &[&[&[usize]]]) -> PermutationGroup {
    PermutationGroup::new(n, gens.iter().map(|c| cyc(n, c)).collect()).expect("valid")
}

/// Small named graphs plus the Praeger–Xu graphs `C(2, r, s)` for
/// `3 ≤ r ≤ 6` and `C(3, r, s)` for `r ∈ {3, 4}`.
pub fn default_catalog() -> Result<Vec<CatalogEntry>> {
    let mut out = vec![
        CatalogEntry::new("K3 (S3)", symmetric(3)?, grp(3, &[&[&[0, 1]]]), cyc(3, &[&[1, 2]])),
        CatalogEntry::new(
            "K4 (S4)",
            symmetric(4)?,
            grp(4, &[&[&[0, 1, 2]], &[&[0, 1]]]),
            cyc(4, &[&[0, 3]]),
        ),
        CatalogEntry::new("K4 (A4)", alternating(4)?, grp(4, &[&[&[0, 1, 2]]]), cyc(4, &[&[0, 3], &[1, 2]])),
        CatalogEntry::new("cube (S4)", symmetric(4)?, grp(4, &[&[&[0, 1, 2]]]), cyc(4, &[&[0, 3]])),
        CatalogEntry::new("C4 (D8)", dihedral(8)?, grp(4, &[&[&[1, 3]]]), cyc(4, &[&[0, 1], &[2, 3]])),
        CatalogEntry::new(
            "K2 (D8)",
            dihedral(8)?,
            grp(4, &[&[&[1, 3]], &[&[0, 2], &[1, 3]]]),
            cyc(4, &[&[0, 1], &[2, 3]]),
        ),
        CatalogEntry::new(
            "Petersen (S5)",
            symmetric(5)?,
            grp(5, &[&[&[0, 1]], &[&[2, 3, 4]], &[&[2, 3]]]),
            cyc(5, &[&[0, 2], &[1, 3]]),
        ),
        CatalogEntry::new(
            "Petersen (S5 x Z2)",
            grp(7, &[&[&[0, 1, 2, 3, 4]], &[&[0, 1]], &[&[5, 6]]]),
            grp(7, &[&[&[0, 1]], &[&[2, 3, 4]], &[&[2, 3]], &[&[5, 6]]]),
            cyc(7, &[&[0, 2], &[1, 3], &[5, 6]]),
        ),
        CatalogEntry::new("K5 (S5)", symmetric(5)?, grp(5, &[&[&[0, 1, 2, 3]], &[&[0, 1]]]), cyc(5, &[&[0, 4]])),
        CatalogEntry::new(
            "K3,3 (S3 wr S2)",
            grp(6, &[&[&[0, 1, 2]], &[&[0, 1]], &[&[0, 3], &[1, 4], &[2, 5]]]),
            grp(6, &[&[&[1, 2]], &[&[3, 4, 5]], &[&[3, 4]]]),
            cyc(6, &[&[0, 3], &[1, 4], &[2, 5]]),
        ),
        CatalogEntry::new(
            "octahedron (S4 on pairs)",
            symmetric(4)?,
            grp(4, &[&[&[0, 1]], &[&[2, 3]]]),
            cyc(4, &[&[1, 2]]),
        ),
    ];
    for (p, rmax) in [(2u64, 6usize), (3, 4)] {
        for r in 3..=rmax {
            let g = px_group(p, r)?;
            for s in 1..r {
                let cg = px_graph_in(&g, s)?;
                out.push(CatalogEntry::new(
                    format!("C({p},{r},{s})"),
                    g.group.clone(),
                    cg.stabilizer().clone(),
                    cg.flip().clone(),
                ));
            }
        }
    }
    Ok(out)
}

/// The `PSL(2, 17)` graph on 153 vertices; kept out of the default catalog
/// because its 19 subgroups give graphs of up to 2448 vertices.
pub fn psl2_entry() -> Result<CatalogEntry> {
    let ex = psl2_example(17)?;
    Ok(CatalogEntry::new("PSL(2,17)", ex.sigma.group().clone(), ex.sigma.stabilizer().clone(), ex.flip))
}

pub fn catalog_from_spec(spec: &CatalogSpec) -> Result<Vec<CatalogEntry>> {
    spec.entries
        .iter()
        .map(|e| {
            let group = e.group.to_group()?;
            let gens = e
                .stabilizer
                .iter()
                .map(|c| perm_from_cycles(group.degree(), c))
                .collect::<Result<Vec<_>>>()?;
            let stabilizer = PermutationGroup::new(group.degree(), gens)
                .map_err(|err| Error::Spec(format!("{}: {err}", e.name)))?;
            let flip = perm_from_cycles(group.degree(), &e.flip)?;
            Ok(CatalogEntry::new(e.name.clone(), group, stabilizer, flip))
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    MulticoverOnly,
    Cover,
    Pseudocover,
    ValencyMismatch,
}

impl Verdict {
    pub fn of(r: &ClassificationReport) -> Verdict {
        if r.val_gamma == r.val_sigma {
            if r.is_cover {
                Verdict::Cover
            } else {
                Verdict::Pseudocover
            }
        } else if r.is_multicover {
            Verdict::MulticoverOnly
        } else {
            Verdict::ValencyMismatch
        }
    }
}

/// Version of the [`CensusRow`] column layout, written as its first column.
pub const CENSUS_SCHEMA: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct CensusRow {
    pub schema: u32,
    pub group_name: String,
    pub group_order: u64,
    pub h_order: u64,
    pub l_order: u64,
    pub l_generators: String,
    pub flip: String,
    pub val_gamma: usize,
    pub val_sigma: usize,
    pub verdict: Verdict,
    pub gamma_connected: bool,
    pub sigma_connected: bool,
    pub gamma_locally_primitive: bool,
    pub is_multicover: bool,
    pub is_cover: bool,
    pub is_pseudocover: bool,
    pub criterion_b: bool,
    pub criterion_c: bool,
    pub criterion_d: bool,
    pub g_alpha_betabar: u64,
    pub g_alphabar_beta: u64,
    pub g_alpha_beta: u64,
}

/// Non-identity generators in cycle notation, or `()` for the trivial group.
fn generator_text(l: &PermutationGroup) -> String {
    let gens: Vec<String> = l.generators().iter().filter(|p| !p.is_identity()).map(|p| p.to_string()).collect();
    if gens.is_empty() {
        "()".into()
    } else {
        gens.join(" ")
    }
}

struct Job<'a> {
    entry: &'a CatalogEntry,
    sigma: &'a CosetGraph,
    sigma_connected: bool,
    inner: PermutationGroup,
}

fn run_job(job: &Job<'_>) -> Result<CensusRow> {
    let e = job.entry;
    let gamma = CosetGraph::new(&e.group, &job.inner, &e.flip)?;
    let gamma_connected = gamma.is_connected()?;
    let gamma_locally_primitive = gamma.valency()? > 1 && gamma.is_locally_primitive()?;
    let pair = ExtenderPair::from_graphs(gamma, job.sigma.clone())?;
    let r = pair.classify()?;
    Ok(CensusRow {
        schema: CENSUS_SCHEMA,
        group_name: e.name.clone(),
        group_order: e.group.order(),
        h_order: e.stabilizer.order(),
        l_order: job.inner.order(),
        l_generators: generator_text(&job.inner),
        flip: e.flip.to_string(),
        val_gamma: r.val_gamma,
        val_sigma: r.val_sigma,
        verdict: Verdict::of(&r),
        gamma_connected,
        sigma_connected: job.sigma_connected,
        gamma_locally_primitive,
        is_multicover: r.is_multicover,
        is_cover: r.is_cover,
        is_pseudocover: r.is_pseudocover,
        criterion_b: r.criterion_b,
        criterion_c: r.criterion_c,
        criterion_d: r.criterion_d,
        g_alpha_betabar: r.stabilizer_orders.g_alpha_betabar,
        g_alphabar_beta: r.stabilizer_orders.g_alphabar_beta,
        g_alpha_beta: r.stabilizer_orders.g_alpha_beta,
    })
}

/// One row per `(entry, L)`; rows follow catalog order, then the subgroup
/// order of [`subgroups_containing`].
pub fn run_census(entries: &[CatalogEntry]) -> Result<Vec<CensusRow>> {
    let sigmas = entries
        .par_iter()
        .map(|e| {
            let sigma = e.sigma()?;
            let connected = sigma.is_connected()?;
            let subs = subgroups_containing(&e.stabilizer, &[e.flip.compose(&e.flip)])?;
            Ok((sigma, connected, subs))
        })
        .collect::<Result<Vec<_>>>()?;
    let jobs: Vec<Job<'_>> = entries
        .iter()
        .zip(&sigmas)
        .flat_map(|(entry, (sigma, sigma_connected, subs))| {
            subs.iter()
                .filter(|l| l.order() < entry.stabilizer.order())
                .map(move |l| Job { entry, sigma, sigma_connected: *sigma_connected, inner: l.clone() })
        })
        .collect();
    jobs.par_iter().map(run_job).collect()
}
