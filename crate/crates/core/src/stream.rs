//! Text streams of `<item> [<delta>]` updates.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StreamUpdate {
    pub item: u64,
    pub delta: i64,
}

/// One update per line; the delta defaults to `+1`. Blank and `#` lines are
/// skipped.
pub fn parse_stream(text: &str) -> Result<Vec<StreamUpdate>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| Error::Parse {
            line: idx + 1,
            message,
        };
        let mut fields = line.split_whitespace();
        let item = fields.next().unwrap();
        let item = item
            .parse::<u64>()
            .map_err(|_| err(format!("bad item id {item:?}")))?;
        let delta = match fields.next() {
            None => 1,
            Some(d) => d
                .strip_prefix('+')
                .unwrap_or(d)
                .parse::<i64>()
                .map_err(|_| err(format!("bad delta {d:?}")))?,
        };
        if fields.next().is_some() {
            return Err(err("expected `<item> [<delta>]`".into()));
        }
        out.push(StreamUpdate { item, delta });
    }
    Ok(out)
}
