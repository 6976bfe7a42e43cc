//! Suffix-stripping stemmers.
//!
//! English uses the classic Porter algorithm (fixed rule tables, five steps).
//! French and Spanish use light plural-folding profiles: abstracts in those
//! languages are a small minority of a typical corpus and aggressive
//! derivational stripping hurts more than it helps there, so only number
//! inflection is folded.

/// Stemmer profile, selected per document language.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StemProfile {
    English,
    French,
    Spanish,
}

impl StemProfile {
    /// Profile for an ISO-639-1 code. `None` for languages without a profile
    /// (callers fall back to English and flag the fallback).
    pub fn for_language(code: &str) -> Option<StemProfile> {
        match code {
            "en" => Some(StemProfile::English),
            "fr" => Some(StemProfile::French),
            "es" => Some(StemProfile::Spanish),
            _ => None,
        }
    }
}

/// Stem a single lowercase token under the given profile.
pub fn stem(word: &str, profile: StemProfile) -> String {
    match profile {
        StemProfile::English => porter(word),
        StemProfile::French => french_light(word),
        StemProfile::Spanish => spanish_light(word),
    }
}

fn french_light(word: &str) -> String {
    let chars: Vec<char> = word.chars().collect();
    let n = chars.len();
    if n < 4 {
        return word.to_string();
    }
    if word.ends_with("eaux") {
        return word[..word.len() - 1].to_string();
    }
    if word.ends_with("aux") && n > 4 {
        return format!("{}al", &word[..word.len() - 3]);
    }
    if word.ends_with('s') && !word.ends_with("ss") && !word.ends_with("us") {
        return word[..word.len() - 1].to_string();
    }
    word.to_string()
}

fn spanish_light(word: &str) -> String {
    let chars: Vec<char> = word.chars().collect();
    let n = chars.len();
    if n < 4 {
        return word.to_string();
    }
    if word.ends_with("es") && n >= 6 {
        return word[..word.len() - 2].to_string();
    }
    if word.ends_with('s') && !word.ends_with("ss") {
        return word[..word.len() - 1].to_string();
    }
    word.to_string()
}

/// Porter stemmer. Operates on ASCII-alphabetic words; anything else (digits,
/// accented letters) is returned unchanged, which keeps foreign terms intact
/// when they slip into an English-tagged document.
pub fn porter(word: &str) -> String {
    if word.len() <= 2 || !word.bytes().all(|b| b.is_ascii_lowercase()) {
        return word.to_string();
    }
    let mut p = Porter {
        b: word.as_bytes().to_vec(),
        k: word.len() as isize - 1,
        j: 0,
    };
    p.step1ab();
    p.step1c();
    p.step2();
    p.step3();
    p.step4();
    p.step5();
    String::from_utf8_lossy(&p.b[..=(p.k as usize)]).into_owned()
}

struct Porter {
    b: Vec<u8>,
    /// Index of the last letter of the current word.
    k: isize,
    /// Index of the last letter of the stem once a suffix has matched.
    j: isize,
}

impl Porter {
    fn at(&self, i: isize) -> u8 {
        self.b[i as usize]
    }

    fn is_consonant(&self, i: isize) -> bool {
        match self.at(i) {
            b'a' | b'e' | b'i' | b'o' | b'u' => false,
            b'y' => {
                if i == 0 {
                    true
                } else {
                    !self.is_consonant(i - 1)
                }
            }
            _ => true,
        }
    }

    /// Number of consonant sequences in the stem 0..=j: the m of [C](VC)^m[V].
    fn measure(&self) -> usize {
        let mut n = 0;
        let mut i = 0isize;
        loop {
            if i > self.j {
                return n;
            }
            if !self.is_consonant(i) {
                break;
            }
            i += 1;
        }
        i += 1;
        loop {
            loop {
                if i > self.j {
                    return n;
                }
                if self.is_consonant(i) {
                    break;
                }
                i += 1;
            }
            i += 1;
            n += 1;
            loop {
                if i > self.j {
                    return n;
                }
                if !self.is_consonant(i) {
                    break;
                }
                i += 1;
            }
            i += 1;
        }
    }

    fn vowel_in_stem(&self) -> bool {
        (0..=self.j).any(|i| !self.is_consonant(i))
    }

    fn double_consonant(&self, i: isize) -> bool {
        i >= 1 && self.at(i) == self.at(i - 1) && self.is_consonant(i)
    }

    /// cvc at i: consonant-vowel-consonant ending where the final consonant
    /// is not w, x or y (restores an e, as in hop(p)ing -> hope... no: hop).
    fn cvc(&self, i: isize) -> bool {
        if i < 2 || !self.is_consonant(i) || self.is_consonant(i - 1) || !self.is_consonant(i - 2) {
            return false;
        }
        !matches!(self.at(i), b'w' | b'x' | b'y')
    }

    fn ends(&mut self, s: &[u8]) -> bool {
        let len = s.len() as isize;
        if len > self.k + 1 {
            return false;
        }
        if &self.b[(self.k - len + 1) as usize..=(self.k as usize)] != s {
            return false;
        }
        self.j = self.k - len;
        true
    }

    fn set_to(&mut self, s: &[u8]) {
        self.b.truncate((self.j + 1) as usize);
        self.b.extend_from_slice(s);
        self.k = self.j + s.len() as isize;
    }

    fn replace_if_measure(&mut self, s: &[u8]) {
        if self.measure() > 0 {
            self.set_to(s);
        }
    }

    fn step1ab(&mut self) {
        if self.at(self.k) == b's' {
            if self.ends(b"sses") {
                self.k -= 2;
            } else if self.ends(b"ies") {
                self.set_to(b"i");
            } else if self.at(self.k - 1) != b's' {
                self.k -= 1;
            }
        }
        if self.ends(b"eed") {
            if self.measure() > 0 {
                self.k -= 1;
            }
        } else if (self.ends(b"ed") || self.ends(b"ing")) && self.vowel_in_stem() {
            self.k = self.j;
            if self.ends(b"at") {
                self.set_to(b"ate");
            } else if self.ends(b"bl") {
                self.set_to(b"ble");
            } else if self.ends(b"iz") {
                self.set_to(b"ize");
            } else if self.double_consonant(self.k) {
                self.k -= 1;
                if matches!(self.at(self.k), b'l' | b's' | b'z') {
                    self.k += 1;
                }
            } else if self.measure() == 1 && self.cvc(self.k) {
                self.set_to(b"e");
            }
        }
    }

    fn step1c(&mut self) {
        if self.ends(b"y") && self.vowel_in_stem() {
            self.b[self.k as usize] = b'i';
        }
    }

    // Rule arms mirror the published suffix tables; `ends` records the stem
    // boundary as a side effect, so arms cannot be merged or reordered.
    #[allow(clippy::if_same_then_else, clippy::collapsible_match)]
    fn step2(&mut self) {
        if self.k < 1 {
            return;
        }
        match self.at(self.k - 1) {
            b'a' => {
                if self.ends(b"ational") {
                    self.replace_if_measure(b"ate");
                } else if self.ends(b"tional") {
                    self.replace_if_measure(b"tion");
                }
            }
            b'c' => {
                if self.ends(b"enci") {
                    self.replace_if_measure(b"ence");
                } else if self.ends(b"anci") {
                    self.replace_if_measure(b"ance");
                }
            }
            b'e' => {
                if self.ends(b"izer") {
                    self.replace_if_measure(b"ize");
                }
            }
            b'l' => {
                if self.ends(b"bli") {
                    self.replace_if_measure(b"ble");
                } else if self.ends(b"alli") {
                    self.replace_if_measure(b"al");
                } else if self.ends(b"entli") {
                    self.replace_if_measure(b"ent");
                } else if self.ends(b"eli") {
                    self.replace_if_measure(b"e");
                } else if self.ends(b"ousli") {
                    self.replace_if_measure(b"ous");
                }
            }
            b'o' => {
                if self.ends(b"ization") {
                    self.replace_if_measure(b"ize");
                } else if self.ends(b"ation") {
                    self.replace_if_measure(b"ate");
                } else if self.ends(b"ator") {
                    self.replace_if_measure(b"ate");
                }
            }
            b's' => {
                if self.ends(b"alism") {
                    self.replace_if_measure(b"al");
                } else if self.ends(b"iveness") {
                    self.replace_if_measure(b"ive");
                } else if self.ends(b"fulness") {
                    self.replace_if_measure(b"ful");
                } else if self.ends(b"ousness") {
                    self.replace_if_measure(b"ous");
                }
            }
            b't' => {
                if self.ends(b"aliti") {
                    self.replace_if_measure(b"al");
                } else if self.ends(b"iviti") {
                    self.replace_if_measure(b"ive");
                } else if self.ends(b"biliti") {
                    self.replace_if_measure(b"ble");
                }
            }
            b'g' => {
                if self.ends(b"logi") {
                    self.replace_if_measure(b"log");
                }
            }
            _ => {}
        }
    }

    #[allow(clippy::collapsible_match)]
    fn step3(&mut self) {
        match self.at(self.k) {
            b'e' => {
                if self.ends(b"icate") {
                    self.replace_if_measure(b"ic");
                } else if self.ends(b"ative") {
                    self.replace_if_measure(b"");
                } else if self.ends(b"alize") {
                    self.replace_if_measure(b"al");
                }
            }
            b'i' => {
                if self.ends(b"iciti") {
                    self.replace_if_measure(b"ic");
                }
            }
            b'l' => {
                if self.ends(b"ical") {
                    self.replace_if_measure(b"ic");
                } else if self.ends(b"ful") {
                    self.replace_if_measure(b"");
                }
            }
            b's' => {
                if self.ends(b"ness") {
                    self.replace_if_measure(b"");
                }
            }
            _ => {}
        }
    }

    fn step4(&mut self) {
        if self.k < 1 {
            return;
        }
        let matched = match self.at(self.k - 1) {
            b'a' => self.ends(b"al"),
            b'c' => self.ends(b"ance") || self.ends(b"ence"),
            b'e' => self.ends(b"er"),
            b'i' => self.ends(b"ic"),
            b'l' => self.ends(b"able") || self.ends(b"ible"),
            b'n' => {
                self.ends(b"ant") || self.ends(b"ement") || self.ends(b"ment") || self.ends(b"ent")
            }
            b'o' => {
                (self.ends(b"ion") && self.j >= 0 && matches!(self.at(self.j), b's' | b't'))
                    || self.ends(b"ou")
            }
            b's' => self.ends(b"ism"),
            b't' => self.ends(b"ate") || self.ends(b"iti"),
            b'u' => self.ends(b"ous"),
            b'v' => self.ends(b"ive"),
            b'z' => self.ends(b"ize"),
            _ => false,
        };
        if matched && self.measure() > 1 {
            self.k = self.j;
        }
    }

    fn step5(&mut self) {
        self.j = self.k;
        if self.at(self.k) == b'e' {
            let a = self.measure();
            if a > 1 || (a == 1 && !self.cvc(self.k - 1)) {
                self.k -= 1;
            }
        }
        if self.at(self.k) == b'l' && self.double_consonant(self.k) && self.measure() > 1 {
            self.k -= 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn en(w: &str) -> String {
        stem(w, StemProfile::English)
    }

    #[test]
    fn porter_classic_pairs() {
        // Plurals and -ed/-ing
        assert_eq!(en("caresses"), "caress");
        assert_eq!(en("ponies"), "poni");
        assert_eq!(en("cats"), "cat");
        assert_eq!(en("feed"), "feed");
        assert_eq!(en("agreed"), "agre");
        assert_eq!(en("plastered"), "plaster");
        assert_eq!(en("motoring"), "motor");
        assert_eq!(en("sing"), "sing");
        assert_eq!(en("conflated"), "conflat");
        assert_eq!(en("hopping"), "hop");
        assert_eq!(en("filing"), "file");
        // y -> i
        assert_eq!(en("happy"), "happi");
        assert_eq!(en("sky"), "sky");
        // Derivational steps
        assert_eq!(en("relational"), "relat");
        assert_eq!(en("conditional"), "condit");
        assert_eq!(en("rational"), "ration");
        assert_eq!(en("digitizer"), "digit");
        assert_eq!(en("operator"), "oper");
        assert_eq!(en("feudalism"), "feudal");
        assert_eq!(en("decisiveness"), "decis");
        assert_eq!(en("electricity"), "electr");
        assert_eq!(en("hopefulness"), "hope");
        assert_eq!(en("formality"), "formal");
        assert_eq!(en("adjustable"), "adjust");
        assert_eq!(en("replacement"), "replac");
        assert_eq!(en("adoption"), "adopt");
        assert_eq!(en("communism"), "commun");
        assert_eq!(en("effective"), "effect");
        assert_eq!(en("controlling"), "control");
        assert_eq!(en("roll"), "roll");
    }

    #[test]
    fn porter_domain_terms() {
        assert_eq!(en("sustainable"), "sustain");
        assert_eq!(en("urban"), "urban");
        assert_eq!(en("accessibility"), "access");
        assert_eq!(en("mitigation"), "mitig");
        assert_eq!(en("resilience"), "resili");
        assert_eq!(en("classification"), "classif");
        assert_eq!(en("transport"), "transport");
        assert_eq!(en("measure"), "measur");
        assert_eq!(en("networks"), "network");
        assert_eq!(en("interaction"), "interact");
    }

    #[test]
    fn non_ascii_passes_through() {
        assert_eq!(en("système"), "système");
        assert_eq!(en("ab"), "ab");
    }

    #[test]
    fn porter_idempotent_on_common_words() {
        for w in [
            "sustainable",
            "accessibility",
            "planning",
            "networks",
            "interaction",
            "communities",
            "modeling",
        ] {
            let once = en(w);
            assert_eq!(en(&once), once, "{w} not idempotent");
        }
    }

    #[test]
    fn french_plural_folding() {
        let fr = |w: &str| stem(w, StemProfile::French);
        assert_eq!(fr("territoires"), "territoire");
        assert_eq!(fr("réseaux"), "réseau");
        assert_eq!(fr("système"), "système");
        assert_eq!(fr("développement"), "développement");
        assert_eq!(fr("les"), "les");
    }

    #[test]
    fn spanish_plural_folding() {
        let es = |w: &str| stem(w, StemProfile::Spanish);
        assert_eq!(es("ciudades"), "ciudad");
        assert_eq!(es("urbanas"), "urbana");
        assert_eq!(es("movilidad"), "movilidad");
    }

    #[test]
    fn profile_lookup() {
        assert_eq!(StemProfile::for_language("en"), Some(StemProfile::English));
        assert_eq!(StemProfile::for_language("fr"), Some(StemProfile::French));
        assert_eq!(StemProfile::for_language("de"), None);
    }
}
