//! CSV formats for rankings, vote logs and score tables.

use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::metrics::{Ranking, WeightVector};
use crate::protocol::{LoggedVote, Pair, ScoreTable, VoteOutcome};

/// Writes `item_id,rank` rows, plus a `weight` column when weights are given.
pub fn write_ranking_csv<W: Write>(
    out: W,
    ranking: &Ranking,
    weights: Option<&WeightVector>,
) -> Result<()> {
    if let Some(w) = weights {
        if w.len() != ranking.len() {
            return Err(Error::LengthMismatch {
                left: ranking.len(),
                right: w.len(),
            });
        }
    }
    let mut wtr = csv::Writer::from_writer(out);
    if weights.is_some() {
        wtr.write_record(["item_id", "rank", "weight"])?;
    } else {
        wtr.write_record(["item_id", "rank"])?;
    }
    for (id, rank) in ranking.ranks().iter().enumerate() {
        let mut row = vec![id.to_string(), rank.to_string()];
        if let Some(w) = weights {
            row.push(w.as_slice()[id].to_string());
        }
        wtr.write_record(&row)?;
    }
    wtr.flush()?;
    Ok(())
}

/// Reads a ranking from `item_id,rank[,weight]` rows. Item ids must cover
/// `0..n` exactly once, in any order; extra columns are ignored.
pub fn read_ranking_csv<R: Read>(input: R) -> Result<Ranking> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(input);
    let headers = rdr.headers()?.clone();
    let column = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::Config(format!("ranking CSV lacks a '{name}' column")))
    };
    let id_col = column("item_id")?;
    let rank_col = column("rank")?;

    let mut rows: Vec<(usize, f64)> = Vec::new();
    for (line, record) in rdr.records().enumerate() {
        let record = record?;
        let bad = |what: &str| Error::Config(format!("ranking CSV row {}: bad {what}", line + 2));
        let id: usize = record
            .get(id_col)
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| bad("item_id"))?;
        let rank: f64 = record
            .get(rank_col)
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| bad("rank"))?;
        rows.push((id, rank));
    }
    let n = rows.len();
    let mut ranks = vec![f64::NAN; n];
    for (id, rank) in rows {
        if id >= n || !ranks[id].is_nan() {
            return Err(Error::Config(format!(
                "ranking CSV item ids must be 0..{n} without repeats (saw {id})"
            )));
        }
        ranks[id] = rank;
    }
    Ranking::new(ranks)
}

/// Vote log rows: `ballot_index,item_a,item_b,voter_id,result` with result
/// `A`, `B` or `T`.
pub fn write_votes_csv<W: Write>(out: W, votes: &[LoggedVote]) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(out);
    wtr.write_record(["ballot_index", "item_a", "item_b", "voter_id", "result"])?;
    for v in votes {
        wtr.write_record([
            v.ballot.to_string(),
            v.outcome.pair.first.to_string(),
            v.outcome.pair.second.to_string(),
            v.outcome.voter.to_string(),
            v.outcome.result.code().to_string(),
        ])?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn read_votes_csv<R: Read>(input: R) -> Result<Vec<LoggedVote>> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(input);
    let mut out = Vec::new();
    for (line, record) in rdr.records().enumerate() {
        let record = record?;
        let field = |i: usize| record.get(i).unwrap_or("");
        let bad = || Error::Config(format!("vote log row {} is malformed", line + 2));
        out.push(LoggedVote {
            ballot: field(0).parse().map_err(|_| bad())?,
            outcome: VoteOutcome {
                pair: Pair::new(
                    field(1).parse().map_err(|_| bad())?,
                    field(2).parse().map_err(|_| bad())?,
                ),
                voter: field(3).parse().map_err(|_| bad())?,
                result: field(4).parse()?,
            },
        });
    }
    Ok(out)
}

/// One row per (item, ballot):
/// `item_id,ballot_index,appearances,wins,ties,x,y,ybar,eliminated_at`.
/// `eliminated_at` is empty for items that reached the end.
pub fn write_scores_csv<W: Write>(out: W, table: &ScoreTable) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(out);
    wtr.write_record([
        "item_id",
        "ballot_index",
        "appearances",
        "wins",
        "ties",
        "x",
        "y",
        "ybar",
        "eliminated_at",
    ])?;
    for (id, h) in table.items.iter().enumerate() {
        let eliminated = h.eliminated_at.map(|k| k.to_string()).unwrap_or_default();
        for r in &h.records {
            wtr.write_record([
                id.to_string(),
                r.ballot.to_string(),
                r.appearances.to_string(),
                r.wins.to_string(),
                r.ties.to_string(),
                r.x.to_string(),
                r.y.to_string(),
                r.ybar.to_string(),
                eliminated.clone(),
            ])?;
        }
    }
    wtr.flush()?;
    Ok(())
}
