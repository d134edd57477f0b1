//! Case folding and punctuation stripping.
//!
//! Both operations are character-for-character: `lowercase` maps each cased
//! character to its lowercase form, and `strip_punctuation` replaces each
//! stripped character with exactly one ASCII space. Runs of punctuation
//! therefore become runs of spaces, which tokenization absorbs. Because the
//! stripped sets contain no cased characters, the two operations commute.

use unicode_normalization::UnicodeNormalization;
use unicode_properties::{GeneralCategoryGroup, UnicodeGeneralCategory};

/// All 32 ASCII punctuation characters, the canonical stripped set.
pub const ASCII_PUNCTUATION: &str = "!\"#$%&'()*+,-./:;<=>?@[\\]^_`{|}~";

/// Same set minus the double quote and vertical bar.
const PAPER_STATA_PUNCTUATION: &str = "!#$%&'()*+,-./:;<=>?@[\\]^_`{}~";

/// Same set minus the dollar sign and vertical bar (apostrophe included).
const PAPER_PYTHON_PUNCTUATION: &str = "!\"#%&'()*+,-./:;<=>?@[\\]^_`{}~";

const fn ascii_table(set: &str) -> [bool; 128] {
    let mut table = [false; 128];
    let bytes = set.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        table[bytes[i] as usize] = true;
        i += 1;
    }
    table
}

static FULL_TABLE: [bool; 128] = ascii_table(ASCII_PUNCTUATION);
static PAPER_STATA_TABLE: [bool; 128] = ascii_table(PAPER_STATA_PUNCTUATION);
static PAPER_PYTHON_TABLE: [bool; 128] = ascii_table(PAPER_PYTHON_PUNCTUATION);

/// Which punctuation set `strip_punctuation_with` removes.
///
/// `Full` is the canonical set. The two `Paper*` presets reproduce the
/// character lists of the original Stata and Python implementations, whose
/// sets differ only through the quoting limits of each language: the Stata
/// variant omits `"` and `|`, the Python variant omits `$` and `|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PunctPreset {
    #[default]
    Full,
    PaperStata,
    PaperPython,
}

impl PunctPreset {
    /// The characters this preset strips, in ASCII order.
    pub fn chars(self) -> &'static str {
        match self {
            PunctPreset::Full => ASCII_PUNCTUATION,
            PunctPreset::PaperStata => PAPER_STATA_PUNCTUATION,
            PunctPreset::PaperPython => PAPER_PYTHON_PUNCTUATION,
        }
    }

    fn table(self) -> &'static [bool; 128] {
        match self {
            PunctPreset::Full => &FULL_TABLE,
            PunctPreset::PaperStata => &PAPER_STATA_TABLE,
            PunctPreset::PaperPython => &PAPER_PYTHON_TABLE,
        }
    }
}

/// Options for [`strip_punctuation_with`].
#[derive(Debug, Clone, Copy, Default)]
pub struct NormalizeOptions {
    pub preset: PunctPreset,
    /// Also strip characters in the Unicode punctuation category (off by
    /// default; the canonical pipeline is ASCII-only).
    pub unicode_punct: bool,
}

/// Lowercases every cased character, leaving all others unchanged.
///
/// Uses the one-to-one mapping: the handful of characters whose lowercase
/// form expands to several characters are left as-is, so the output always
/// has the same character count as the input.
pub fn lowercase(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        if c.is_ascii() {
            out.push(c.to_ascii_lowercase());
            continue;
        }
        let mut lower = c.to_lowercase();
        match (lower.next(), lower.next()) {
            (Some(l), None) => out.push(l),
            _ => out.push(c),
        }
    }
    out
}

/// Replaces each canonical punctuation character, plus TAB, LF, and CR, with
/// one space.
pub fn strip_punctuation(text: &str) -> String {
    strip_punctuation_with(text, &NormalizeOptions::default())
}

/// As [`strip_punctuation`], with a configurable punctuation set.
pub fn strip_punctuation_with(text: &str, opts: &NormalizeOptions) -> String {
    let table = opts.preset.table();
    text.chars()
        .map(|c| {
            if matches!(c, '\t' | '\n' | '\r') {
                ' '
            } else if (c as u32) < 128 && table[c as usize] {
                ' '
            } else if opts.unicode_punct
                && c.general_category_group() == GeneralCategoryGroup::Punctuation
            {
                ' '
            } else {
                c
            }
        })
        .collect()
}

/// Canonical-composition (NFC) pre-pass, for corpora where the same word may
/// appear in composed and decomposed forms.
pub fn nfc(text: &str) -> String {
    text.nfc().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    // Independent character-by-character oracle for the one-space-per-character rule.
    fn strip_oracle(text: &str, set: &str) -> String {
        text.chars()
            .map(|c| {
                if c == '\t' || c == '\n' || c == '\r' || set.contains(c) {
                    ' '
                } else {
                    c
                }
            })
            .collect()
    }

    #[test]
    fn preset_sets_have_expected_sizes() {
        assert_eq!(ASCII_PUNCTUATION.len(), 32);
        assert_eq!(PAPER_STATA_PUNCTUATION.len(), 30);
        assert_eq!(PAPER_PYTHON_PUNCTUATION.len(), 30);
        assert!(!PAPER_STATA_PUNCTUATION.contains('"'));
        assert!(!PAPER_STATA_PUNCTUATION.contains('|'));
        assert!(!PAPER_PYTHON_PUNCTUATION.contains('$'));
        assert!(!PAPER_PYTHON_PUNCTUATION.contains('|'));
        assert!(PAPER_PYTHON_PUNCTUATION.contains('\''));
    }

    #[test]
    fn lowercase_ascii() {
        assert_eq!(
            lowercase("HAMLET, Prince of Denmark"),
            "hamlet, prince of denmark"
        );
        assert_eq!(lowercase("to be"), "to be");
        assert_eq!(lowercase(""), "");
    }

    #[test]
    fn lowercase_preserves_char_count() {
        // U+0130 has a multi-character full lowercase mapping and is kept as-is.
        for s in ["Grüße", "ΣΟΦΟΣ", "İstanbul", "ǅungla"] {
            assert_eq!(lowercase(s).chars().count(), s.chars().count());
        }
    }

    #[test]
    fn strip_one_space_per_character() {
        // Expected values first computed with the oracle, then frozen.
        let cases = [
            ("to be, or not to be:", "to be  or not to be "),
            ("o'er-grown", "o er grown"),
            ("line1\nline2\tend", "line1 line2 end"),
        ];
        for (input, expected) in cases {
            assert_eq!(strip_oracle(input, ASCII_PUNCTUATION), expected);
            assert_eq!(strip_punctuation(input), expected);
        }
    }

    #[test]
    fn strip_matches_oracle_on_every_ascii_char() {
        let all_ascii: String = (0u8..128).map(|b| b as char).collect();
        for preset in [
            PunctPreset::Full,
            PunctPreset::PaperStata,
            PunctPreset::PaperPython,
        ] {
            let opts = NormalizeOptions {
                preset,
                unicode_punct: false,
            };
            assert_eq!(
                strip_punctuation_with(&all_ascii, &opts),
                strip_oracle(&all_ascii, preset.chars()),
                "preset {preset:?}"
            );
        }
    }

    #[test]
    fn paper_presets_keep_their_omitted_characters() {
        let stata = NormalizeOptions {
            preset: PunctPreset::PaperStata,
            unicode_punct: false,
        };
        assert_eq!(strip_punctuation_with("say \"hi\"|now", &stata), "say \"hi\"|now");
        let python = NormalizeOptions {
            preset: PunctPreset::PaperPython,
            unicode_punct: false,
        };
        assert_eq!(strip_punctuation_with("$5|x don't", &python), "$5|x don t");
    }

    #[test]
    fn unicode_punct_is_opt_in() {
        let text = "\u{201C}quoted\u{201D} \u{2014} em";
        assert_eq!(strip_punctuation(text), text);
        let opts = NormalizeOptions {
            preset: PunctPreset::Full,
            unicode_punct: true,
        };
        assert_eq!(strip_punctuation_with(text, &opts), " quoted    em");
    }

    #[test]
    fn nfc_composes() {
        // "e" + combining acute accent composes to a single scalar.
        assert_eq!(nfc("cafe\u{0301}"), "caf\u{e9}");
    }
}
