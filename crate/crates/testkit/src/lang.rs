//! Membership predicates for the example languages, written directly from
//! their set-builder definitions.

fn s<S: AsRef<str>>(word: &[S]) -> Vec<&str> {
    word.iter().map(AsRef::as_ref).collect()
}

/// { 0ⁿ1ⁿ2ⁿ : n ≥ 0 }
pub fn is_leq<S: AsRef<str>>(word: &[S]) -> bool {
    let w = s(word);
    if !w.len().is_multiple_of(3) {
        return false;
    }
    let n = w.len() / 3;
    (0..w.len()).all(|i| w[i] == ["0", "1", "2"][i / n.max(1)])
}

/// { w#w : w ∈ {0,1}* }
pub fn is_lw<S: AsRef<str>>(word: &[S]) -> bool {
    let w = s(word);
    let Some(mid) = w.iter().position(|a| *a == "#") else {
        return false;
    };
    let (left, right) = (&w[..mid], &w[mid + 1..]);
    left == right && left.iter().all(|a| *a == "0" || *a == "1")
}

/// { wwᴿ : w ∈ {0,1}* }
pub fn is_wwr<S: AsRef<str>>(word: &[S]) -> bool {
    let w = s(word);
    w.len().is_multiple_of(2)
        && w.iter().eq(w.iter().rev())
        && w.iter().all(|a| *a == "0" || *a == "1")
}

/// { 0ⁿ1ⁿ : n ≥ 0 }
pub fn is_anbn<S: AsRef<str>>(word: &[S]) -> bool {
    let w = s(word);
    let n = w.len() / 2;
    w.len().is_multiple_of(2)
        && w[..n].iter().all(|a| *a == "0")
        && w[n..].iter().all(|a| *a == "1")
}

/// n-th Catalan number.
pub fn catalan(n: u64) -> u64 {
    (0..n).fold(1, |c, k| c * 2 * (2 * k + 1) / (k + 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chars;

    #[test]
    fn predicates() {
        assert!(is_leq(&chars("")) && is_leq(&chars("012")) && is_leq(&chars("001122")));
        assert!(!is_leq(&chars("0012")) && !is_leq(&chars("021")) && !is_leq(&chars("012012")));
        assert!(is_lw(&chars("#")) && is_lw(&chars("01#01")));
        assert!(!is_lw(&chars("01#10")) && !is_lw(&chars("0#0#0")) && !is_lw(&chars("")));
        assert!(
            is_wwr(&chars(""))
                && is_wwr(&chars("0110"))
                && !is_wwr(&chars("010"))
                && !is_wwr(&chars("0101"))
        );
        assert!(is_anbn(&chars("0011")) && !is_anbn(&chars("0101")));
        assert_eq!(
            (0..7).map(catalan).collect::<Vec<_>>(),
            vec![1, 1, 2, 5, 14, 42, 132]
        );
    }
}
