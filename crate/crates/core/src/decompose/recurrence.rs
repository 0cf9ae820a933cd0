use crate::seqcore::{SequenceSource, Symbol};
use crate::{Error, Result};

/// Z-array: `z[n]` is the length of the longest common prefix of `s` and `s[n..]`.
fn z_array(s: &[Symbol]) -> Vec<usize> {
    let n = s.len();
    let mut z = vec![0; n];
    if n == 0 {
        return z;
    }
    z[0] = n;
    let (mut l, mut r) = (0, 0);
    for i in 1..n {
        if i < r {
            z[i] = (r - i).min(z[i - l]);
        }
        while i + z[i] < n && s[z[i]] == s[i + z[i]] {
            z[i] += 1;
        }
        if i + z[i] > r {
            l = i;
            r = i + z[i];
        }
    }
    z
}

/// For each `L = 1..=l_max`, the largest gap between consecutive occurrences
/// of the length-`L` prefix starting in `[0, scan_length)`; `None` when it
/// occurs only once.
pub fn uniform_recurrence_profile(
    source: &SequenceSource,
    l_max: usize,
    scan_length: usize,
) -> Result<Vec<Option<usize>>> {
    if l_max == 0 {
        return Err(Error::InvalidArgument("l_max must be at least 1".into()));
    }
    if scan_length < 100 * l_max {
        return Err(Error::InsufficientScan(format!(
            "scan length {scan_length} is below 100 * l_max = {}",
            100 * l_max
        )));
    }
    let z = z_array(&source.prefix(scan_length + l_max - 1)?);
    Ok((1..=l_max)
        .map(|len| {
            let mut last = 0;
            let mut gap = None;
            for (n, &z_n) in z.iter().enumerate().take(scan_length).skip(1) {
                if z_n >= len {
                    gap = Some(gap.unwrap_or(0).max(n - last));
                    last = n;
                }
            }
            gap
        })
        .collect())
}
