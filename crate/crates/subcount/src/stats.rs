//! Average cycle counts over corpora of graph files.

use std::fs;
use std::path::{Path, PathBuf};

use subcount_core::programs::{cycle_counts, CycleStats};
use subcount_core::Executor;

use crate::formats::{load_graphs, Format};

/// Stats for one corpus plus the files that could not be used.
#[derive(Debug)]
pub struct CorpusStats {
    pub corpus: String,
    pub stats: CycleStats,
    pub errors: Vec<(PathBuf, String)>,
}

/// Files of a corpus: the directory's regular files sorted by name, or the
/// path itself when it is a file.
pub fn corpus_files(path: &Path) -> std::io::Result<Vec<PathBuf>> {
    if path.is_file() {
        return Ok(vec![path.to_path_buf()]);
    }
    let mut files = Vec::new();
    for entry in fs::read_dir(path)? {
        let p = entry?.path();
        if p.is_file() {
            files.push(p);
        }
    }
    files.sort();
    Ok(files)
}

pub fn corpus_stats<E: Executor>(path: &Path, exec: &E) -> std::io::Result<CorpusStats> {
    let mut rows = Vec::new();
    let mut errors = Vec::new();
    for file in corpus_files(path)? {
        let graphs = match load_graphs(&file, Format::from_path(&file)) {
            Ok(g) => g,
            Err(e) => {
                errors.push((file, e.to_string()));
                continue;
            }
        };
        for g in graphs {
            match cycle_counts(&g, exec) {
                Ok(r) => rows.push(r),
                Err(e) => errors.push((file.clone(), e.to_string())),
            }
        }
    }
    Ok(CorpusStats {
        corpus: path.display().to_string(),
        stats: CycleStats::from_counts(&rows),
        errors,
    })
}
