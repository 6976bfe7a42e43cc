//! Title normalization used for cross-source deduplication.

/// Collapse a title to a lowercase alphanumeric key: accents folded to their
/// ASCII base letter, everything that is not alphanumeric dropped. The result
/// is a deterministic, idempotent function of the title; an empty title maps
/// to an empty key (callers decide whether that is acceptable).
pub fn normalize_title(title: &str) -> String {
    let mut key = String::with_capacity(title.len());
    for c in title.chars() {
        for lc in c.to_lowercase() {
            match fold_accent(lc) {
                Some(folded) => key.push_str(folded),
                None => {
                    if lc.is_alphanumeric() {
                        key.push(lc);
                    }
                }
            }
        }
    }
    key
}

/// ASCII folding for the Latin accented letters that occur in bibliographic
/// data (titles folded after lowercasing, so only lowercase forms appear).
fn fold_accent(c: char) -> Option<&'static str> {
    Some(match c {
        'à' | 'á' | 'â' | 'ã' | 'ä' | 'å' | 'ā' | 'ă' | 'ą' => "a",
        'ç' | 'ć' | 'č' | 'ĉ' | 'ċ' => "c",
        'ď' | 'đ' => "d",
        'è' | 'é' | 'ê' | 'ë' | 'ē' | 'ĕ' | 'ė' | 'ę' | 'ě' => "e",
        'ĝ' | 'ğ' | 'ġ' | 'ģ' => "g",
        'ĥ' | 'ħ' => "h",
        'ì' | 'í' | 'î' | 'ï' | 'ĩ' | 'ī' | 'ĭ' | 'į' | 'ı' => "i",
        'ĵ' => "j",
        'ķ' => "k",
        'ĺ' | 'ļ' | 'ľ' | 'ł' => "l",
        'ñ' | 'ń' | 'ņ' | 'ň' => "n",
        'ò' | 'ó' | 'ô' | 'õ' | 'ö' | 'ø' | 'ō' | 'ŏ' | 'ő' => "o",
        'ŕ' | 'ř' => "r",
        'ś' | 'ŝ' | 'ş' | 'š' | 'ș' => "s",
        'ţ' | 'ť' | 'ț' => "t",
        'ù' | 'ú' | 'û' | 'ü' | 'ũ' | 'ū' | 'ŭ' | 'ů' | 'ű' | 'ų' => "u",
        'ŵ' => "w",
        'ý' | 'ÿ' | 'ŷ' => "y",
        'ź' | 'ż' | 'ž' => "z",
        'æ' => "ae",
        'œ' => "oe",
        'ß' => "ss",
        'þ' => "th",
        'ð' => "d",
        _ => return None,
    })
}
