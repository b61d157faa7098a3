//! Deterministic lowercase tokenizer shared by every text metric.

/// Punctuation characters split off as standalone tokens.
pub const PUNCTUATION: [char; 6] = ['.', ',', '!', '?', ';', ':'];

/// A tokenized sentence: lowercase tokens, none empty, none containing
/// whitespace.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct TokenSeq {
    tokens: Vec<String>,
}

impl TokenSeq {
    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Tokens with punctuation dropped, for metrics that ignore it.
    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.tokens
            .iter()
            .filter(|t| !is_punctuation(t))
            .map(String::as_str)
    }
}

impl From<Vec<String>> for TokenSeq {
    fn from(tokens: Vec<String>) -> Self {
        debug_assert!(tokens.iter().all(|t| !t.is_empty() && !t.contains(char::is_whitespace)));
        TokenSeq { tokens }
    }
}

impl FromIterator<String> for TokenSeq {
    fn from_iter<I: IntoIterator<Item = String>>(iter: I) -> Self {
        TokenSeq::from(iter.into_iter().collect::<Vec<_>>())
    }
}

pub fn is_punctuation(token: &str) -> bool {
    let mut chars = token.chars();
    matches!((chars.next(), chars.next()), (Some(c), None) if PUNCTUATION.contains(&c))
}

/// Lowercases, splits the punctuation set into standalone tokens, then splits
/// on whitespace.
pub fn tokenize(s: &str) -> TokenSeq {
    let mut spaced = String::with_capacity(s.len() + 8);
    for ch in s.to_lowercase().chars() {
        if PUNCTUATION.contains(&ch) {
            spaced.push(' ');
            spaced.push(ch);
            spaced.push(' ');
        } else {
            spaced.push(ch);
        }
    }
    spaced
        .split_whitespace()
        .map(str::to_string)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn toks(s: &str) -> Vec<String> {
        tokenize(s).tokens().to_vec()
    }

    #[test]
    fn splits_words_and_punctuation() {
        assert_eq!(
            toks("A yellow ball is in the water."),
            ["a", "yellow", "ball", "is", "in", "the", "water", "."]
        );
        assert_eq!(toks("power lines above train."), ["power", "lines", "above", "train", "."]);
    }

    #[test]
    fn empty_input_gives_no_tokens() {
        assert!(tokenize("").is_empty());
        assert!(tokenize("   \t ").is_empty());
    }

    #[test]
    fn consecutive_punctuation_separates() {
        assert_eq!(toks("well, well... done!?"), ["well", ",", "well", ".", ".", ".", "done", "!", "?"]);
    }

    #[test]
    fn words_drops_punctuation() {
        let seq = tokenize("a ball, in the water.");
        let words: Vec<&str> = seq.words().collect();
        assert_eq!(words, ["a", "ball", "in", "the", "water"]);
    }

    proptest! {
        #[test]
        fn tokens_are_lowercase_nonempty_and_whitespace_free(s in "\\PC{0,60}") {
            for t in tokenize(&s).tokens() {
                prop_assert!(!t.is_empty());
                prop_assert!(!t.contains(char::is_whitespace));
                prop_assert_eq!(t.clone(), t.to_lowercase());
            }
        }

        #[test]
        fn tokenize_is_idempotent_on_its_own_output(s in "[a-zA-Z ,.!?;:]{0,60}") {
            let once = tokenize(&s);
            let again = tokenize(&once.tokens().join(" "));
            prop_assert_eq!(once, again);
        }
    }
}
