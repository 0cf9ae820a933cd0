use super::{SearchConfig, WindowSearch};
use crate::seqcore::{SequenceSource, Window};
use crate::{Error, Result};

/// Smallest `h ∈ (max τ, H]` whose extension `τ ∪ {h}` gains at least two
/// words, with the gain. `None` when every extension within the horizon adds
/// at most one word.
pub fn immediate_extension_growth(
    source: &SequenceSource,
    window: &Window,
    config: &SearchConfig,
) -> Result<Option<(usize, usize)>> {
    if window.max_index() >= config.horizon {
        return Err(Error::InvalidWindow(format!(
            "window {window} leaves no room for an extension within horizon {}",
            config.horizon
        )));
    }
    let search = WindowSearch::new(source, config)?;
    let table = search.table();
    let mut scratch = table.scratch();
    let base = table.evaluate(window.indices(), &mut scratch).count;
    let mut extended = window.indices().to_vec();
    extended.push(0);
    for h in config.candidates().into_iter().filter(|&h| h > window.max_index()) {
        *extended.last_mut().expect("non-empty") = h;
        let count = table.evaluate(&extended, &mut scratch).count;
        if count >= base + 2 {
            return Ok(Some((h, count - base)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{example_6_1, fibonacci, periodic_source};

    #[test]
    fn fibonacci_grows_at_two() {
        let got = immediate_extension_growth(&fibonacci(), &Window::block(1).unwrap(), &SearchConfig::new(30, 5000));
        assert_eq!(got.unwrap(), Some((2, 2)));
    }

    #[test]
    fn period_two_never_grows() {
        let src = periodic_source(&[0, 1]).unwrap();
        let got = immediate_extension_growth(&src, &Window::block(1).unwrap(), &SearchConfig::new(30, 5000));
        assert_eq!(got.unwrap(), None);
    }

    #[test]
    fn interleaved_example_grows() {
        let src = example_6_1(3).unwrap();
        let (_, gain) = immediate_extension_growth(&src, &Window::block(1).unwrap(), &SearchConfig::new(30, 5000))
            .unwrap()
            .unwrap();
        assert!(gain >= 2);
    }

    #[test]
    fn window_at_horizon_is_rejected() {
        let w = Window::new(vec![0, 30]).unwrap();
        assert!(immediate_extension_growth(&fibonacci(), &w, &SearchConfig::new(30, 5000)).is_err());
    }
}
