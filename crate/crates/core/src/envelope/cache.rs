//! Write-once, checksummed on-disk store of envelope lists, one file per
//! (mode, n):
//!
//! ```text
//! mode=A5 n=6 version=1 count=2
//! 0 3
//! 2 2
//! checksum=<sha256 of all preceding bytes, lowercase hex>
//! ```

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use super::{CountPoint, EnvelopeList, Mode};
use crate::error::{Error, Result};

pub const CACHE_VERSION: u32 = 1;

#[derive(Clone, Debug)]
pub struct EnvelopeCache {
    root: PathBuf,
}

fn checksum(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// The full file contents for `list`.
pub fn serialize(list: &EnvelopeList) -> String {
    let mut s = format!(
        "mode={} n={} version={} count={}\n",
        list.mode.tag(),
        list.n,
        CACHE_VERSION,
        list.points.len()
    );
    s.push_str(&list.body());
    let sum = checksum(s.as_bytes());
    s.push_str(&format!("checksum={sum}\n"));
    s
}

/// Parses and fully validates a cache file.
pub fn parse(text: &str, path: &Path) -> Result<EnvelopeList> {
    let corrupt = |message: String| Error::CacheCorrupt {
        path: path.to_owned(),
        message,
    };
    let body_end = text
        .rfind("checksum=")
        .filter(|&i| i == 0 || text.as_bytes()[i - 1] == b'\n')
        .ok_or_else(|| corrupt("missing checksum line".into()))?;
    let stated = text[body_end + "checksum=".len()..].trim_end_matches('\n');
    let actual = checksum(&text.as_bytes()[..body_end]);
    if stated != actual {
        return Err(corrupt(format!(
            "checksum mismatch: file says {stated}, contents hash to {actual}"
        )));
    }
    let mut lines = text[..body_end].lines();
    let header = lines.next().ok_or_else(|| corrupt("empty file".into()))?;
    let mut mode = None;
    let mut n = None;
    let mut count = None;
    for field in header.split(' ') {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| corrupt(format!("bad header field {field:?}")))?;
        match key {
            "mode" => mode = Some(value.parse::<Mode>().map_err(|e| corrupt(e.to_string()))?),
            "n" => n = value.parse::<usize>().ok(),
            "version" if value == CACHE_VERSION.to_string() => {}
            "version" => return Err(corrupt(format!("unsupported version {value}"))),
            "count" => count = value.parse::<usize>().ok(),
            _ => return Err(corrupt(format!("unknown header field {key}"))),
        }
    }
    let (mode, n, count) = match (mode, n, count) {
        (Some(m), Some(n), Some(c)) => (m, n, c),
        _ => return Err(corrupt("incomplete header".into())),
    };
    let points = lines
        .map(|line| {
            let (c, p) = line
                .split_once(' ')
                .ok_or_else(|| corrupt(format!("bad line {line:?}")))?;
            match (c.parse::<u128>(), p.parse::<u128>()) {
                (Ok(c), Ok(p)) => Ok(CountPoint::new(n, p, c)),
                _ => Err(corrupt(format!("bad line {line:?}"))),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    if points.len() != count {
        return Err(corrupt(format!("header count {count}, found {} points", points.len())));
    }
    let list = EnvelopeList { n, mode, points };
    list.check_invariants().map_err(corrupt)?;
    Ok(list)
}

impl EnvelopeCache {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        EnvelopeCache { root: root.into() }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn path(&self, mode: &Mode, n: usize) -> PathBuf {
        self.root.join(mode.dir_name()).join(format!("{n}.env"))
    }

    /// The stored L(n), `None` if absent; a damaged or mismatched file is an error.
    pub fn load(&self, mode: &Mode, n: usize) -> Result<Option<EnvelopeList>> {
        let path = self.path(mode, n);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let list = parse(&text, &path)?;
        if list.n != n || list.mode != *mode {
            return Err(Error::CacheCorrupt {
                path,
                message: format!("holds {} n={}, expected {} n={n}", list.mode.tag(), list.n, mode.tag()),
            });
        }
        Ok(Some(list))
    }

    /// Stores `list` atomically. An existing file must hold the same list.
    pub fn store(&self, list: &EnvelopeList) -> Result<()> {
        let path = self.path(&list.mode, list.n);
        if let Some(existing) = self.load(&list.mode, list.n)? {
            return self.same_or_conflict(&existing, list, path);
        }
        let dir = path.parent().expect("cache path has a parent");
        fs::create_dir_all(dir)?;
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        tmp.write_all(serialize(list).as_bytes())?;
        tmp.as_file().sync_all()?;
        match tmp.persist_noclobber(&path) {
            Ok(_) => Ok(()),
            Err(e) if e.error.kind() == std::io::ErrorKind::AlreadyExists => {
                let existing = self.load(&list.mode, list.n)?.expect("file exists");
                self.same_or_conflict(&existing, list, path)
            }
            Err(e) => Err(e.error.into()),
        }
    }

    fn same_or_conflict(&self, existing: &EnvelopeList, list: &EnvelopeList, path: PathBuf) -> Result<()> {
        if existing == list {
            Ok(())
        } else {
            Err(Error::CacheCorrupt {
                path,
                message: "differs from the freshly computed list".into(),
            })
        }
    }

    /// Largest n with a stored list for `mode`, scanning file names only.
    pub fn largest_cached(&self, mode: &Mode) -> Option<usize> {
        fs::read_dir(self.root.join(mode.dir_name()))
            .ok()?
            .filter_map(|e| e.ok()?.file_name().to_str()?.strip_suffix(".env")?.parse().ok())
            .max()
    }
}
