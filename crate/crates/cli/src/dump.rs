use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use anyhow::{bail, Context, Result};
use facet_strength::enumeration::{EdgeIndexer, ExtremePointSet, Family};
use serde_json::json;

use crate::config::{DumpFormat, EnumerateArgs};
use crate::output::{Metadata, Table};
use crate::parallel;

pub const MAGIC: &[u8; 8] = b"FSDUMP1\n";

fn row_bytes(m: usize) -> usize {
    m.div_ceil(8)
}

/// Bytes of one point, edge `i` at bit `i % 8` of byte `i / 8`.
fn pack(bits: &[u64], m: usize, out: &mut Vec<u8>) {
    for b in 0..row_bytes(m) {
        out.push((bits[b / 8] >> (8 * (b % 8))) as u8);
    }
}

/// Vertices of an edge mask joined by `-`, 1-based.
pub fn edge_label(mask: u32) -> String {
    (0..32).filter(|v| mask >> v & 1 == 1).map(|v| (v + 1).to_string()).collect::<Vec<_>>().join("-")
}

pub fn write_binary(w: &mut dyn Write, meta: &Metadata, points: &ExtremePointSet) -> Result<()> {
    let meta = serde_json::to_vec(meta)?;
    let idx = points.indexer();
    w.write_all(MAGIC)?;
    w.write_all(&(meta.len() as u32).to_le_bytes())?;
    w.write_all(&meta)?;
    w.write_all(&[idx.family().tag()])?;
    w.write_all(&(idx.n() as u32).to_le_bytes())?;
    w.write_all(&(idx.dim() as u32).to_le_bytes())?;
    w.write_all(&(points.len() as u64).to_le_bytes())?;
    let mut buf = Vec::with_capacity(row_bytes(idx.dim()));
    for p in points.iter() {
        buf.clear();
        pack(p, idx.dim(), &mut buf);
        w.write_all(&buf)?;
    }
    Ok(())
}

pub fn write_text(w: &mut dyn Write, meta: &Metadata, points: &ExtremePointSet) -> Result<()> {
    for line in meta.comment_lines() {
        writeln!(w, "{line}")?;
    }
    let idx = points.indexer();
    writeln!(w, "# family: {} n: {} edges: {} points: {}", idx.family(), idx.n(), idx.dim(), points.len())?;
    for p in points.iter() {
        let labels: Vec<String> = idx.decode(p).into_iter().map(edge_label).collect();
        writeln!(w, "{}", labels.join(" "))?;
    }
    Ok(())
}

/// A binary dump read back into memory.
#[derive(Debug)]
pub struct Dump {
    pub metadata: serde_json::Value,
    pub points: ExtremePointSet,
}

fn take<const N: usize>(r: &mut dyn Read) -> Result<[u8; N]> {
    let mut b = [0u8; N];
    r.read_exact(&mut b).context("truncated dump")?;
    Ok(b)
}

pub fn read_binary(r: &mut dyn Read) -> Result<Dump> {
    if &take::<8>(r)? != MAGIC {
        bail!("not a facet-strength dump");
    }
    let len = u32::from_le_bytes(take(r)?) as usize;
    let mut meta = vec![0u8; len];
    r.read_exact(&mut meta).context("truncated metadata")?;
    let metadata = serde_json::from_slice(&meta)?;
    let [tag] = take::<1>(r)?;
    let family = Family::from_tag(tag).with_context(|| format!("unknown family tag {tag}"))?;
    let n = u32::from_le_bytes(take(r)?) as usize;
    let m = u32::from_le_bytes(take(r)?) as usize;
    let count = u64::from_le_bytes(take(r)?);
    let idx = EdgeIndexer::new(family, n)?;
    if idx.dim() != m {
        bail!("edge count {m} does not match {family} n={n}");
    }
    let mut points = ExtremePointSet::new(idx);
    let mut row = vec![0u8; row_bytes(m)];
    let mut bits = vec![0u64; points.words()];
    for _ in 0..count {
        r.read_exact(&mut row).context("truncated point rows")?;
        bits.iter_mut().for_each(|w| *w = 0);
        for (b, &byte) in row.iter().enumerate() {
            bits[b / 8] |= (byte as u64) << (8 * (b % 8));
        }
        points.push(&bits);
    }
    Ok(Dump { metadata, points })
}

pub fn read_file(path: &Path) -> Result<Dump> {
    let f = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    read_binary(&mut BufReader::new(f))
}

pub fn summary(dump: &Dump) -> Table {
    let idx = dump.points.indexer();
    let mut t = Table::new(&["family", "n", "edges", "points"]);
    t.push(vec![json!(idx.family().name()), json!(idx.n()), json!(idx.dim()), json!(dump.points.len())]);
    t
}

/// Enumerates and writes a dump; returns `None`, or a summary table with `--read`.
pub fn run(args: &EnumerateArgs, meta: &Metadata) -> Result<Option<Table>> {
    if let Some(path) = &args.read {
        return Ok(Some(summary(&read_file(path)?)));
    }
    let (Some(family), Some(n), Some(out)) = (args.family, args.n, args.out.as_ref()) else {
        bail!("--family, --n and --out are required");
    };
    let points = parallel::enumerate(family.into(), n, args.allow_large)?;
    let f = File::create(out).with_context(|| format!("creating {}", out.display()))?;
    let mut w = BufWriter::new(f);
    match args.format {
        DumpFormat::Bin => write_binary(&mut w, meta, &points)?,
        DumpFormat::Text => write_text(&mut w, meta, &points)?,
    }
    w.flush()?;
    Ok(None)
}
