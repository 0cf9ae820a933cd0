use super::{SearchConfig, WindowSearch};
use crate::par;
use crate::seqcore::{SequenceSource, Window};
use crate::Result;

/// First `k`-window, in order of increasing max index and then
/// lexicographically, on which both sources show at least `2k` words.
/// `None` means the horizon was exhausted.
pub fn shared_window_search(
    a: &SequenceSource,
    b: &SequenceSource,
    k: usize,
    config: &SearchConfig,
) -> Result<Option<Window>> {
    config.validate_for(k)?;
    let sa = WindowSearch::new(a, config)?;
    let sb = WindowSearch::new(b, config)?;
    let target = 2 * k;
    let hits = |w: &[usize]| -> bool {
        let ta = sa.table();
        let tb = sb.table();
        ta.evaluate(w, &mut ta.scratch()).count >= target && tb.evaluate(w, &mut tb.scratch()).count >= target
    };
    if k == 1 {
        return Ok(hits(&[0]).then(|| Window::block(1).expect("k = 1")));
    }
    let cands = config.candidates();
    // One work item per (max index, first inner index); items are in
    // enumeration order so the leftmost hit is the answer.
    let mut items: Vec<(usize, Option<usize>)> = Vec::new();
    for (ti, &t) in cands.iter().enumerate() {
        if k == 2 {
            items.push((t, None));
        } else if ti >= k - 2 {
            items.extend((0..=ti - (k - 2)).map(|p| (ti, Some(p))));
        }
    }
    let found = par::find_first(&items, config.parallelism, |&(ti_or_t, first)| match first {
        None => {
            let w = [0, ti_or_t];
            hits(&w).then(|| w.to_vec())
        }
        Some(p) => {
            let ti = ti_or_t;
            let inner = &cands[p + 1..ti];
            let mut combo: Vec<usize> = (0..k - 3).collect();
            loop {
                if combo.len() <= inner.len() {
                    let mut w = vec![0, cands[p]];
                    w.extend(combo.iter().map(|&c| inner[c]));
                    w.push(cands[ti]);
                    if hits(&w) {
                        return Some(w);
                    }
                }
                if !next_combination(&mut combo, inner.len()) {
                    return None;
                }
            }
        }
    });
    Ok(found.map(|w| Window::new(w).expect("enumerated windows are increasing")))
}

/// Advances `combo` (strictly increasing indices below `n`) to the next
/// combination in lexicographic order.
fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let r = combo.len();
    if r > n {
        return false;
    }
    for i in (0..r).rev() {
        if combo[i] < n - r + i {
            combo[i] += 1;
            for j in i + 1..r {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
