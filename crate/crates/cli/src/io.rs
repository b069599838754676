use std::io::Read;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;

use shiftinv::error::Error;
use shiftinv::subgroup::RatVec;

/// Reads a document from a path, or from stdin when the path is `-`.
pub fn read_input(path: &Path) -> Result<String, Error> {
    if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::Parse(format!("stdin: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
    }
}

/// Parses a per-axis window of inclusive ranges, e.g. `0..3,-1..1`, into the
/// box of integer tiles it spans.
pub fn parse_window(text: &str) -> Result<Vec<Vec<i64>>, Error> {
    let mut axes: Vec<(i64, i64)> = Vec::new();
    for part in text.split(',') {
        let (lo, hi) = part
            .split_once("..")
            .ok_or_else(|| Error::Parse(format!("window axis `{part}` must look like lo..hi")))?;
        let lo: i64 =
            lo.trim().parse().map_err(|_| Error::Parse(format!("bad window bound `{lo}`")))?;
        let hi: i64 =
            hi.trim().parse().map_err(|_| Error::Parse(format!("bad window bound `{hi}`")))?;
        if hi < lo {
            return Err(Error::Parse(format!("empty window axis `{part}`")));
        }
        axes.push((lo, hi));
    }
    if axes.is_empty() {
        return Err(Error::Parse("window must have at least one axis".into()));
    }
    let mut tiles: Vec<Vec<i64>> = vec![Vec::new()];
    for &(lo, hi) in &axes {
        let mut next = Vec::new();
        for prefix in &tiles {
            for v in lo..=hi {
                let mut tile = prefix.clone();
                tile.push(v);
                next.push(tile);
            }
        }
        tiles = next;
    }
    Ok(tiles)
}

/// Parses a grid specification `n1,n2,...`.
pub fn parse_grid(text: &str) -> Result<Vec<usize>, Error> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad grid subdivision `{part}`")))
                .and_then(|n| {
                    if n == 0 {
                        Err(Error::Parse("grid subdivisions must be positive".into()))
                    } else {
                        Ok(n)
                    }
                })
        })
        .collect()
}

/// Parses a rational vector given as JSON `[[num,den],...]`.
pub fn parse_point(text: &str) -> Result<RatVec, Error> {
    let pairs: Vec<[i64; 2]> =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("point: {e}")))?;
    pairs
        .into_iter()
        .map(|[n, d]| {
            if d == 0 {
                Err(Error::Parse(format!("rational {n}/{d} has zero denominator")))
            } else {
                Ok(BigRational::new(BigInt::from(n), BigInt::from(d)))
            }
        })
        .collect()
}

/// Parses a list of rational vectors (modulation samples).
pub fn parse_samples(text: &str) -> Result<Vec<RatVec>, Error> {
    let rows: Vec<Vec<[i64; 2]>> =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("samples: {e}")))?;
    rows.into_iter()
        .map(|row| {
            row.into_iter()
                .map(|[n, d]| {
                    if d == 0 {
                        Err(Error::Parse(format!("rational {n}/{d} has zero denominator")))
                    } else {
                        Ok(BigRational::new(BigInt::from(n), BigInt::from(d)))
                    }
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_box_2d() {
        let tiles = parse_window("0..1,-1..0").unwrap();
        assert_eq!(
            tiles,
            vec![vec![0, -1], vec![0, 0], vec![1, -1], vec![1, 0]]
        );
    }

    #[test]
    fn window_rejects_backwards_range() {
        assert!(parse_window("3..0").is_err());
    }

    #[test]
    fn grid_parses() {
        assert_eq!(parse_grid("4,2").unwrap(), vec![4, 2]);
        assert!(parse_grid("0").is_err());
    }

    #[test]
    fn point_parses() {
        let p = parse_point("[[1,2],[0,1]]").unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p[0], BigRational::new(BigInt::from(1), BigInt::from(2)));
    }
}
