//! CSV outputs of a simulation study.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::experiment::run::{ExperimentResults, PolicyResults, ReplicateResult};
use crate::io::{write_scores_csv, write_votes_csv};

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

/// `policy,distribution,coefficient,mean,sd`; `sd` is `NA` for a single
/// replicate.
pub fn write_summary_csv<W: Write>(out: W, results: &ExperimentResults) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(out);
    wtr.write_record(["policy", "distribution", "coefficient", "mean", "sd"])?;
    for p in &results.policies {
        for s in &p.summary {
            wtr.write_record([
                p.policy.as_str(),
                results.distribution.as_str(),
                s.name,
                &s.mean.to_string(),
                &s.sd.map_or_else(|| "NA".to_string(), |v| v.to_string()),
            ])?;
        }
    }
    wtr.flush()?;
    Ok(())
}

/// `seed,rho_w,tau_w,rho,tau`, one row per replicate in replicate order.
pub fn write_replicates_csv<W: Write>(out: W, results: &PolicyResults) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(out);
    wtr.write_record(["seed", "rho_w", "tau_w", "rho", "tau"])?;
    for r in &results.replicates {
        let c = r.coefficients;
        wtr.write_record([
            r.seed.to_string(),
            c.rho_w.to_string(),
            c.tau_w.to_string(),
            c.rho.to_string(),
            c.tau.to_string(),
        ])?;
    }
    wtr.flush()?;
    Ok(())
}

/// Writes plot-ready data for one replicate into `dir`:
///
/// * `fig4_ballot_scores.csv`: `theoretical_rank,ballot_index,x` for every
///   ballot an item took part in;
/// * `fig4_final_scores.csv`: `theoretical_rank,ybar_final`;
/// * `fig2_rescale.csv` (only with a second ballot):
///   `item_id,x2,ybar1,intercept,slope` for the items of ballot 2.
pub fn export_figure_data(replicate: &ReplicateResult, dir: &Path) -> Result<Vec<PathBuf>> {
    let snap = replicate.snapshot.as_ref().ok_or_else(|| {
        Error::Config("figure export needs a replicate run with snapshots enabled".into())
    })?;
    fs::create_dir_all(dir)?;
    let table = &snap.run.table;
    let mut written = Vec::new();

    let path = dir.join("fig4_ballot_scores.csv");
    let mut wtr = csv::Writer::from_writer(create(&path)?);
    wtr.write_record(["theoretical_rank", "ballot_index", "x"])?;
    for (item, h) in table.items.iter().enumerate() {
        let rank = snap.theoretical.rank(item).to_string();
        for r in &h.records {
            wtr.write_record([rank.clone(), r.ballot.to_string(), r.x.to_string()])?;
        }
    }
    wtr.flush()?;
    written.push(path);

    let path = dir.join("fig4_final_scores.csv");
    let mut wtr = csv::Writer::from_writer(create(&path)?);
    wtr.write_record(["theoretical_rank", "ybar_final"])?;
    for (item, h) in table.items.iter().enumerate() {
        if let Some(ybar) = h.final_ybar() {
            wtr.write_record([snap.theoretical.rank(item).to_string(), ybar.to_string()])?;
        }
    }
    wtr.flush()?;
    written.push(path);

    if let Some(fit) = table.fit(2) {
        let path = dir.join("fig2_rescale.csv");
        let mut wtr = csv::Writer::from_writer(create(&path)?);
        wtr.write_record(["item_id", "x2", "ybar1", "intercept", "slope"])?;
        for (item, h) in table.items.iter().enumerate() {
            let (Some(first), Some(second)) = (h.records.first(), h.records.get(1)) else {
                continue;
            };
            wtr.write_record([
                item.to_string(),
                second.x.to_string(),
                first.ybar.to_string(),
                fit.intercept.to_string(),
                fit.slope.to_string(),
            ])?;
        }
        wtr.flush()?;
        written.push(path);
    }
    Ok(written)
}

/// Writes `summary.csv` into `dir` and, per policy, a subdirectory holding
/// `replicates.csv` plus the vote log, score table and figure data of the
/// first replicate (when snapshots were kept).
pub fn write_outputs(results: &ExperimentResults, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();

    let path = dir.join("summary.csv");
    write_summary_csv(create(&path)?, results)?;
    written.push(path);

    for p in &results.policies {
        let sub = dir.join(p.policy.as_str());
        fs::create_dir_all(&sub)?;
        let path = sub.join("replicates.csv");
        write_replicates_csv(create(&path)?, p)?;
        written.push(path);

        let Some(first) = p.replicates.first() else {
            continue;
        };
        let Some(snap) = &first.snapshot else {
            continue;
        };
        let path = sub.join("votes.csv");
        write_votes_csv(create(&path)?, &snap.run.votes)?;
        written.push(path);
        let path = sub.join("scores.csv");
        write_scores_csv(create(&path)?, &snap.run.table)?;
        written.push(path);
        written.extend(export_figure_data(first, &sub)?);
    }
    Ok(written)
}
