use facet_strength::enumeration::{Enumerator, ExtremePointSet, Family};
use facet_strength::Error;
use rayon::prelude::*;

/// Enumerate extreme points on the rayon pool, assembled in prefix order.
pub fn enumerate(family: Family, n: usize, allow_large: bool) -> Result<ExtremePointSet, Error> {
    let gen = Enumerator::new(family, n, allow_large)?;
    let chunks: Vec<Vec<u64>> = (0..gen.prefixes())
        .into_par_iter()
        .map(|p| {
            let mut buf = Vec::new();
            gen.visit_prefix(p, &mut |bits| buf.extend_from_slice(bits));
            buf
        })
        .collect();
    let mut set = ExtremePointSet::new(gen.indexer().clone());
    let words = set.words();
    for chunk in &chunks {
        for row in chunk.chunks(words) {
            set.push(row);
        }
    }
    Ok(set)
}
