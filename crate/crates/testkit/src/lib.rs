//! Test support for `sm-core`: language predicates, exhaustive word lists, a
//! configuration-search oracle for classical PDAs, random machine generators
//! and a small DOT syntax checker.

pub mod dot;
pub mod gen;
pub mod lang;
pub mod pda1;

/// Every word over `alphabet` of length at most `max_len`, shortest first.
pub fn words(alphabet: &[&str], max_len: usize) -> Vec<Vec<String>> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Vec<String>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for a in alphabet {
                let mut v = w.clone();
                v.push(a.to_string());
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Every sequence over `letters` of length at most `max_len`.
pub fn sequences<T: Clone>(letters: &[T], max_len: usize) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Vec<T>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for a in letters {
                let mut v = w.clone();
                v.push(a.clone());
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Splits a string of one-character symbols.
pub fn chars(text: &str) -> Vec<String> {
    text.chars().map(String::from).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_counts() {
        assert_eq!(words(&["0", "1"], 3).len(), 1 + 2 + 4 + 8);
        assert_eq!(sequences(&[1, 2, 3], 2).len(), 1 + 3 + 9);
    }
}
