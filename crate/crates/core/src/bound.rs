use crate::error::{Error, Result};

/// A length bound for an enumerating procedure, checked against a safety cap.
///
/// Each procedure has its own default cap; [`Bound::with_cap`] overrides it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bound {
    pub len: usize,
    pub cap: Option<usize>,
}

impl Bound {
    pub fn len(len: usize) -> Self {
        Bound { len, cap: None }
    }

    pub fn with_cap(self, cap: usize) -> Self {
        Bound {
            cap: Some(cap),
            ..self
        }
    }

    pub(crate) fn checked(self, default_cap: usize) -> Result<usize> {
        let cap = self.cap.unwrap_or(default_cap);
        if self.len > cap {
            Err(Error::CapExceeded {
                requested: self.len,
                cap,
            })
        } else {
            Ok(self.len)
        }
    }
}

impl From<usize> for Bound {
    fn from(len: usize) -> Self {
        Bound::len(len)
    }
}
