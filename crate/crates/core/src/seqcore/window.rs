use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A strictly increasing set of indices starting at 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Window(Vec<usize>);

impl Window {
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        match indices.first() {
            None => return Err(Error::InvalidWindow("a window needs at least one index".into())),
            Some(&first) if first != 0 => {
                return Err(Error::InvalidWindow(format!("first index must be 0, got {first}")))
            }
            _ => {}
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidWindow(format!("indices must be strictly increasing: {indices:?}")));
        }
        Ok(Window(indices))
    }

    /// The block window `{0, 1, ..., k-1}`.
    pub fn block(k: usize) -> Result<Self> {
        Window::new((0..k).collect())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn max_index(&self) -> usize {
        *self.0.last().expect("windows are non-empty")
    }

    /// Immediate extension `τ ∪ {h}`, `h > max τ`.
    pub fn extend(&self, h: usize) -> Result<Window> {
        if h <= self.max_index() {
            return Err(Error::InvalidWindow(format!(
                "extension index {h} must exceed current maximum {}",
                self.max_index()
            )));
        }
        let mut v = self.0.clone();
        v.push(h);
        Ok(Window(v))
    }

    /// Drops the largest index. `None` for single-index windows.
    pub fn restriction(&self) -> Option<Window> {
        (self.0.len() > 1).then(|| Window(self.0[..self.0.len() - 1].to_vec()))
    }

    /// The scaled window `mτ`.
    pub fn scaled(&self, m: usize) -> Result<Window> {
        if m == 0 {
            return Err(Error::InvalidArgument("scale factor must be at least 1".into()));
        }
        Ok(Window(self.0.iter().map(|&i| i * m).collect()))
    }
}

impl TryFrom<Vec<usize>> for Window {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Window::new(v)
    }
}

impl From<Window> for Vec<usize> {
    fn from(w: Window) -> Self {
        w.0
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_indices() {
        assert!(Window::new(vec![]).is_err());
        assert!(Window::new(vec![1, 2]).is_err());
        assert!(Window::new(vec![0, 2, 2]).is_err());
        assert!(Window::new(vec![0, 3, 1]).is_err());
        assert_eq!(Window::new(vec![0, 2, 5]).unwrap().max_index(), 5);
    }

    #[test]
    fn extension_and_restriction() {
        let w = Window::new(vec![0, 2]).unwrap();
        assert!(w.extend(2).is_err());
        let e = w.extend(7).unwrap();
        assert_eq!(e.indices(), &[0, 2, 7]);
        assert_eq!(e.restriction().unwrap(), w);
        assert!(Window::block(1).unwrap().restriction().is_none());
    }

    #[test]
    fn scaling_and_display() {
        let w = Window::new(vec![0, 1, 4]).unwrap();
        assert_eq!(w.scaled(3).unwrap().to_string(), "{0,3,12}");
    }

    #[test]
    fn serde_validates() {
        let w: Window = serde_json::from_str("[0,1,3]").unwrap();
        assert_eq!(w.size(), 3);
        assert!(serde_json::from_str::<Window>("[1,3]").is_err());
    }
}
