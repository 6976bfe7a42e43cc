//! Built-in stopword lists and per-run overrides.
//!
//! Lists are matched against lowercased raw tokens before stemming. A
//! directory of `<lang>.txt` files (one token per line, `#` comments allowed)
//! replaces the built-in list for that language.

use std::collections::{BTreeMap, HashSet};
use std::path::Path;

use crate::error::{Error, Result};

const ENGLISH: &str = "a about above after again against all am an and any are as at be because \
been before being below between both but by cannot could did do does doing down during each few \
for from further had has have having he her here hers herself him himself his how i if in into \
is it its itself just me more most my myself no nor not of off on once only or other our ours \
ourselves out over own same she should so some such than that the their theirs them themselves \
then there these they this those through to too under until up very was we were what when where \
which while who whom why will with would you your yours yourself yourselves also can may might \
must shall upon via however therefore thus within without among whereas per towards toward";

const FRENCH: &str = "au aux avec ce ces cet cette dans de des du elle elles en et eux il ils je \
la le les leur leurs lui ma mais me même mes moi mon ne nos notre nous on ou où par pas pour qu \
que qui sa se ses son sur ta te tes toi ton tu un une vos votre vous y été être est sont ont a \
ainsi alors aussi autre autres avant bien car cela celle celui comme comment dont encore entre \
ici plus sans si selon tout tous toute toutes très vers chez deux donc";

const SPANISH: &str = "a al algo algunas algunos ante antes como con contra cual cuando de del \
desde donde durante e el ella ellas ellos en entre era eres es esa esas ese eso esos esta estas \
este esto estos fue ha han hasta hay la las le les lo los más me mi mis mucho muy nada ni no nos \
nosotros o os otra otras otro otros para pero poco por porque que quien se sea según ser si sin \
sobre son su sus también te tiene todo todos tu tus un una unas unos y ya yo";

const GERMAN: &str = "aber alle allem allen aller alles als also am an andere anderen auch auf \
aus bei bin bis bist da damit dann das dass dem den denn der des dessen die dies diese diesem \
diesen dieser dieses doch dort du durch ein eine einem einen einer eines er es für gegen hab \
habe haben hat hatte hier ich ihr ihre im in ist ja jede jedem jeden jeder jedes kann kein \
keine können mehr mein mich mir mit muss nach nicht noch nun nur ob oder ohne sehr sein seine \
sich sie sind so über um und uns unter vom von vor war waren was weil weiter wenn werden wie \
wieder wir wird wo zu zum zur zwischen";

/// Per-language stopword sets.
#[derive(Debug, Clone)]
pub struct Stopwords {
    sets: BTreeMap<String, HashSet<String>>,
}

impl Default for Stopwords {
    fn default() -> Self {
        Stopwords::builtin()
    }
}

impl Stopwords {
    /// The built-in lists (en, fr, es, de).
    pub fn builtin() -> Self {
        let mut sets = BTreeMap::new();
        for (lang, words) in [("en", ENGLISH), ("fr", FRENCH), ("es", SPANISH), ("de", GERMAN)] {
            sets.insert(
                lang.to_string(),
                words.split_whitespace().map(str::to_string).collect(),
            );
        }
        Stopwords { sets }
    }

    /// Built-in lists with per-language overrides from `<dir>/<lang>.txt`.
    pub fn with_overrides(dir: &Path) -> Result<Self> {
        let mut sw = Stopwords::builtin();
        let entries = std::fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
        for entry in entries {
            let entry = entry.map_err(|e| Error::io(dir, e))?;
            let path = entry.path();
            if path.extension().and_then(|e| e.to_str()) != Some("txt") {
                continue;
            }
            let Some(lang) = path.file_stem().and_then(|s| s.to_str()).map(str::to_string) else {
                continue;
            };
            let text = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
            let words: HashSet<String> = text
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(|l| l.to_lowercase())
                .collect();
            sw.sets.insert(lang, words);
        }
        Ok(sw)
    }

    pub fn is_stopword(&self, lang: &str, token: &str) -> bool {
        self.sets.get(lang).is_some_and(|set| set.contains(token))
    }

    /// Languages with a list available.
    pub fn languages(&self) -> impl Iterator<Item = &str> {
        self.sets.keys().map(String::as_str)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_lists_cover_function_words() {
        let sw = Stopwords::builtin();
        assert!(sw.is_stopword("en", "the"));
        assert!(sw.is_stopword("en", "of"));
        assert!(sw.is_stopword("fr", "les"));
        assert!(sw.is_stopword("es", "para"));
        assert!(sw.is_stopword("de", "und"));
        assert!(!sw.is_stopword("en", "transport"));
        assert!(!sw.is_stopword("xx", "the"));
    }

    #[test]
    fn override_replaces_single_language() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("en.txt"), "# custom\nfoo\nBar\n").unwrap();
        let sw = Stopwords::with_overrides(dir.path()).unwrap();
        assert!(sw.is_stopword("en", "foo"));
        assert!(sw.is_stopword("en", "bar"));
        assert!(!sw.is_stopword("en", "the"));
        // untouched language keeps the builtin list
        assert!(sw.is_stopword("fr", "les"));
    }
}
