use crate::seqcore::Window;
use crate::{Error, Result};

/// `mτ ∪ {h₁, …, h_{m−1}}` where `h₁` is the least index above `anchor`
/// congruent to 1 mod `m` and each `h_{i+1}` is the least index above `h_i`
/// congruent to `i + 1`.
pub fn lifted_window(tau: &Window, m: usize, k_total: usize, anchor: usize) -> Result<Window> {
    if m == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    if k_total + 1 < m || tau.size() != k_total + 1 - m {
        return Err(Error::InvalidWindow(format!(
            "window {tau} has size {}, expected k_total - (m - 1) = {}",
            tau.size(),
            (k_total + 1).saturating_sub(m)
        )));
    }
    let floor = m * tau.max_index();
    if anchor < floor {
        return Err(Error::InvalidArgument(format!("anchor {anchor} is below m * max(tau) = {floor}")));
    }
    let mut indices: Vec<usize> = tau.indices().iter().map(|&t| m * t).collect();
    if m > 1 {
        let h1 = anchor + 1 + (m + 1 - (anchor + 1) % m) % m;
        indices.extend((0..m - 1).map(|i| h1 + i));
    }
    Window::new(indices)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[usize]) -> Window {
        Window::new(v.to_vec()).unwrap()
    }

    #[test]
    fn forced_examples() {
        assert_eq!(lifted_window(&w(&[0, 1]), 2, 3, 2).unwrap(), w(&[0, 2, 3]));
        assert_eq!(lifted_window(&w(&[0, 2]), 3, 4, 6).unwrap(), w(&[0, 6, 7, 8]));
        assert_eq!(lifted_window(&w(&[0]), 2, 2, 0).unwrap(), w(&[0, 1]));
        assert_eq!(lifted_window(&w(&[0, 1]), 1, 2, 5).unwrap(), w(&[0, 1]));
    }

    #[test]
    fn residues_follow_the_anchor() {
        let out = lifted_window(&w(&[0, 1, 3]), 4, 6, 20).unwrap();
        assert_eq!(out.indices(), &[0, 4, 12, 21, 22, 23]);
    }

    #[test]
    fn violations_rejected() {
        assert!(lifted_window(&w(&[0, 1]), 2, 4, 2).is_err());
        assert!(lifted_window(&w(&[0, 2]), 3, 4, 5).is_err());
        assert!(lifted_window(&w(&[0]), 0, 1, 0).is_err());
    }
}
