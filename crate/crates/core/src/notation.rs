//! Text form of windows, lists and words.
//!
//! Windows print as `[2,-4,-1,5,3]`. On input the brackets and commas are
//! optional (`2 -4 -1 5 3` is accepted) and `id` names the identity.

use crate::error::{Error, Result};
use crate::perm::Word;

pub fn format_window(values: &[i32]) -> String {
    let body: Vec<String> = values.iter().map(i32::to_string).collect();
    format!("[{}]", body.join(","))
}

/// A parsed window: either explicit entries or the `id` keyword, which needs
/// a rank from elsewhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WindowSpec {
    Identity,
    Entries(Vec<i32>),
}

impl WindowSpec {
    pub fn resolve(&self, rank: usize) -> Vec<i32> {
        match self {
            WindowSpec::Identity => (1..=rank as i32).collect(),
            WindowSpec::Entries(v) => v.clone(),
        }
    }

    pub fn rank(&self) -> Option<usize> {
        match self {
            WindowSpec::Identity => None,
            WindowSpec::Entries(v) => Some(v.len()),
        }
    }
}

pub fn parse_window(text: &str) -> Result<WindowSpec> {
    let trimmed = text.trim();
    if trimmed.eq_ignore_ascii_case("id") || trimmed.eq_ignore_ascii_case("e") {
        return Ok(WindowSpec::Identity);
    }
    parse_list(trimmed).map(WindowSpec::Entries)
}

/// Parses a bracketed or separator-delimited list of integers. `[]` is the
/// empty list.
pub fn parse_list(text: &str) -> Result<Vec<i32>> {
    let trimmed = text.trim();
    let inner = match (trimmed.strip_prefix('['), trimmed.strip_suffix(']')) {
        (Some(_), Some(_)) if trimmed.len() >= 2 => &trimmed[1..trimmed.len() - 1],
        (None, None) => trimmed,
        _ => return Err(Error::Parse(format!("unbalanced brackets in {text:?}"))),
    };
    inner
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|tok| !tok.is_empty())
        .map(|tok| {
            tok.parse::<i32>()
                .map_err(|_| Error::Parse(format!("{tok:?} is not an integer")))
        })
        .collect()
}

/// Parses `s_1s_2s_1`, `s1 s2 s1` or `1 2 1` into a word. `id` and the empty
/// string give the empty word.
pub fn parse_word(text: &str) -> Result<Word> {
    let trimmed = text.trim();
    if trimmed.is_empty() || trimmed.eq_ignore_ascii_case("id") {
        return Ok(Word::empty());
    }
    let bad = || Error::Parse(format!("cannot read {text:?} as a word"));
    let mut letters = Vec::new();
    if trimmed.contains('s') {
        for part in trimmed.split('s').skip(1) {
            let digits = part
                .trim()
                .trim_start_matches('_')
                .trim_matches(|c: char| c == ',' || c.is_whitespace());
            letters.push(digits.parse::<usize>().map_err(|_| bad())?);
        }
        if !trimmed.trim_start().starts_with('s') {
            return Err(bad());
        }
    } else {
        for tok in trimmed
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
        {
            letters.push(tok.parse::<usize>().map_err(|_| bad())?);
        }
    }
    Ok(Word::new(letters))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_forms() {
        assert_eq!(
            parse_window("[2,-4,-1,5,3]").unwrap(),
            WindowSpec::Entries(vec![2, -4, -1, 5, 3])
        );
        assert_eq!(
            parse_window("2 -4 -1 5 3").unwrap(),
            WindowSpec::Entries(vec![2, -4, -1, 5, 3])
        );
        assert_eq!(
            parse_window(" [ 1, 2 ,3 ] ").unwrap(),
            WindowSpec::Entries(vec![1, 2, 3])
        );
        assert_eq!(parse_window("id").unwrap(), WindowSpec::Identity);
        assert_eq!(WindowSpec::Identity.resolve(3), vec![1, 2, 3]);
        assert!(parse_window("[1,2").is_err());
        assert!(parse_window("1,x").is_err());
        assert_eq!(parse_list("[]").unwrap(), Vec::<i32>::new());
    }

    #[test]
    fn format_round_trip() {
        let w = vec![-1, -3, -4, -2, 5];
        let text = format_window(&w);
        assert_eq!(text, "[-1,-3,-4,-2,5]");
        assert_eq!(parse_window(&text).unwrap(), WindowSpec::Entries(w));
    }

    #[test]
    fn words() {
        assert_eq!(
            parse_word("s_1s_2s_1s_3s_5s_3s_2").unwrap().letters(),
            &[1, 2, 1, 3, 5, 3, 2]
        );
        assert_eq!(parse_word("s1 s2").unwrap().letters(), &[1, 2]);
        assert_eq!(parse_word("3 1 2").unwrap().letters(), &[3, 1, 2]);
        assert!(parse_word("id").unwrap().is_empty());
        assert!(parse_word("s_x").is_err());
    }
}
