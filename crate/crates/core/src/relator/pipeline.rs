use super::{
    extract_relator, normalize_relator, pair_by_peeling, route_lengths, solve_substitutions,
    CutTree, Normalization, Pairing, RelatorError, RelatorResult, SubstitutionCertificate,
};
use crate::quiver::{Contraction, CutData, QuiverWithPotential};
use crate::tiling::{Dimer, RotationSystem, SpanningTree};
use crate::words::{FreeGroupMap, SearchOptions, Word};

/// Choices left open by the construction; `None` means automatic.
#[derive(Clone, Debug, Default)]
pub struct PipelineOptions {
    /// Cut arrows; must be dual to a dimer.
    pub cut: Option<Vec<String>>,
    /// Spanning tree of the quiver without the cut.
    pub tree: Option<Vec<String>>,
    /// Tiling edges extending the dimer to a spanning tree.
    pub complement: Option<Vec<String>>,
    /// Cut arrow to leave unpaired.
    pub root: Option<String>,
    pub search: SearchOptions,
}

/// Every intermediate object of one run, indices referring to the dual quiver
/// unless stated otherwise.
#[derive(Clone, Debug)]
pub struct PipelineRun {
    pub tiling: RotationSystem,
    pub genus: usize,
    pub qp: QuiverWithPotential,
    pub dimer: Dimer,
    pub cut: CutData,
    pub spanning_tree: SpanningTree,
    pub contraction: Contraction,
    pub cut_tree: CutTree,
    pub pairing: Pairing,
    pub route_lengths: Vec<usize>,
    /// Over the contracted quiver.
    pub certificate: SubstitutionCertificate,
    pub relator: RelatorResult,
    pub normalization: Option<Normalization>,
}

impl PipelineRun {
    fn contracted(&self, arrow: usize) -> usize {
        self.contraction
            .kept
            .iter()
            .position(|&k| k == arrow)
            .expect("cut and complement arrows survive contraction")
    }

    /// Contracted index of the unpaired cut arrow.
    pub fn leftover(&self) -> usize {
        self.contracted(self.pairing.leftover)
    }

    /// Contracted indices `(h, e)` of the pairs.
    pub fn contracted_pairs(&self) -> Vec<(usize, usize)> {
        self.pairing
            .pairs
            .iter()
            .map(|&(h, e)| (self.contracted(h), self.contracted(e)))
            .collect()
    }

    /// Contracted cut arrows in increasing order.
    pub fn contracted_cut(&self) -> &[usize] {
        &self.contraction.cut
    }

    /// For each non-cut arrow of the contracted quiver, its word in the
    /// standard generators: the normalization applied after the substitutions.
    pub fn arrow_words(&self) -> Result<Vec<(usize, Word)>, RelatorError> {
        let norm = self.normalization.as_ref().ok_or_else(|| {
            RelatorError::Normalization("no normalization available".into())
        })?;
        let tau = self.certificate.tau();
        let mut out = Vec::new();
        for a in self.contraction.free_arrows() {
            let w = tau.apply(&Word::reduce(
                self.contraction.qp.alphabet(),
                [crate::words::Letter::positive(a)],
            )?)?;
            let w = w.translate(&self.relator.reduced_alphabet)?;
            out.push((a, norm.map.apply(&w)?));
        }
        Ok(out)
    }

    /// The contracted-quiver map sending free arrows to their standard words
    /// and cut arrows to the identity.
    pub fn arrow_map(&self) -> Result<FreeGroupMap, RelatorError> {
        let words = self.arrow_words()?;
        let surface = crate::words::Alphabet::surface(self.genus);
        let mut images = vec![Word::identity(&surface); self.contraction.qp.quiver().num_arrows()];
        for (a, w) in words {
            images[a] = w;
        }
        Ok(FreeGroupMap::new(self.contraction.qp.alphabet(), &surface, images)?)
    }
}

/// The breadth-first tree when it admits a disjoint tiling complement,
/// otherwise the first such tree in lexicographic order.
fn auto_tree(
    tiling: &RotationSystem,
    qp: &QuiverWithPotential,
    dimer: &Dimer,
    complement: Option<&SpanningTree>,
) -> Result<Vec<usize>, RelatorError> {
    let fits = |tree: &[usize]| match complement {
        Some(t) => t.complement.iter().all(|e| !tree.contains(e)),
        None => tiling.extend_to_spanning_tree(dimer, tree).is_ok(),
    };
    let first = qp.auto_tree(&dimer.edges)?;
    if fits(&first) {
        return Ok(first);
    }
    qp.enumerate_trees(&dimer.edges, usize::MAX)
        .into_iter()
        .find(|t| fits(t))
        .ok_or_else(|| {
            RelatorError::Pairing("no spanning tree of the quiver avoids a tiling complement".into())
        })
}

/// dimer → cut → tree → contraction → pairing → substitutions → relator → normalization.
pub fn run_pipeline(
    tiling: &RotationSystem,
    options: &PipelineOptions,
) -> Result<PipelineRun, RelatorError> {
    let genus = tiling.genus()?;
    let qp = QuiverWithPotential::dual_of(tiling)?;
    let q = qp.quiver();
    let dimer = match &options.cut {
        Some(ids) => tiling.dimer_from_edges(ids)?,
        None => tiling.find_dimer()?,
    };
    let cut = dimer.edges.clone();
    let given = match &options.complement {
        Some(ids) => Some(tiling.spanning_tree_from_complement(&dimer, ids)?),
        None => None,
    };
    let tree = match &options.tree {
        Some(ids) => q.arrow_indices(ids)?,
        None => auto_tree(tiling, &qp, &dimer, given.as_ref())?,
    };
    let cut_data = qp.cut_data(&cut, &tree)?;
    let spanning_tree = match given {
        Some(t) => {
            if let Some(&e) = t.complement.iter().find(|e| cut_data.tree.contains(e)) {
                return Err(RelatorError::Pairing(format!(
                    "complement edge `{}` is dual to a tree arrow",
                    tiling.edges[e].id
                )));
            }
            t
        }
        None => tiling.extend_to_spanning_tree(&dimer, &cut_data.tree)?,
    };
    let contraction = qp.contract(&cut_data)?;
    let cut_tree = CutTree::from_tiling(tiling, &dimer, &spanning_tree)?;
    let root = match &options.root {
        Some(id) => Some(q.arrow_index(id)?),
        None => None,
    };
    let pairing = pair_by_peeling(&cut_tree, root)?;
    let lengths = route_lengths(&cut_tree, &pairing)?;
    let position = |a: usize| contraction.kept.iter().position(|&k| k == a).expect("kept");
    let pairs: Vec<(usize, usize)> = pairing
        .pairs
        .iter()
        .map(|&(h, e)| (position(h), position(e)))
        .collect();
    let certificate = solve_substitutions(&contraction.qp, &pairs, &lengths)?;
    certificate.replay(&contraction.qp)?;
    let relator = extract_relator(
        &contraction.qp,
        &contraction.free_arrows(),
        &certificate,
        position(pairing.leftover),
        genus,
    )?;
    let normalization = normalize_relator(&relator, genus, options.search)?;
    Ok(PipelineRun {
        tiling: tiling.clone(),
        genus,
        qp,
        dimer,
        cut: cut_data,
        spanning_tree,
        contraction,
        cut_tree,
        pairing,
        route_lengths: lengths,
        certificate,
        relator,
        normalization,
    })
}

/// Explicit `(cut, tree, complement)` choices for the tiling, interleaved
/// across dimers so that a truncated list still visits every dimer.
pub fn enumerate_choices(
    tiling: &RotationSystem,
    limit: usize,
) -> Result<Vec<PipelineOptions>, RelatorError> {
    let qp = QuiverWithPotential::dual_of(tiling)?;
    let q = qp.quiver();
    let ids = |v: &[usize]| -> Vec<String> { v.iter().map(|&a| q.arrow(a).id.clone()).collect() };
    let mut per_dimer: Vec<Vec<PipelineOptions>> = Vec::new();
    for dimer in tiling.enumerate_dimers(usize::MAX)? {
        let mut runs = Vec::new();
        for tree in qp.enumerate_trees(&dimer.edges, usize::MAX) {
            for st in tiling.enumerate_spanning_trees(&dimer, &tree, usize::MAX)? {
                runs.push(PipelineOptions {
                    cut: Some(ids(&dimer.edges)),
                    tree: Some(ids(&tree)),
                    complement: Some(st.complement_ids(tiling).iter().map(|s| s.to_string()).collect()),
                    ..PipelineOptions::default()
                });
            }
        }
        per_dimer.push(runs);
    }
    let mut out = Vec::new();
    let longest = per_dimer.iter().map(Vec::len).max().unwrap_or(0);
    for k in 0..longest {
        for runs in &per_dimer {
            if out.len() == limit {
                return Ok(out);
            }
            if let Some(r) = runs.get(k) {
                out.push(r.clone());
            }
        }
    }
    Ok(out)
}
