//! A small deterministic tagger: closed-class lexicon, a verb-form table and
//! suffix heuristics, with left-to-right context for the ambiguous cases.
//! It is good enough to drive the sentence rules on caption-like text; it is
//! not a general-purpose tagger.

use std::collections::HashMap;

use super::{PennTag, TagError, TagSource, TaggedCaption, Tagger};
use PennTag::*;

const CLOSED: &[(&str, PennTag)] = &[
    ("the", Dt),
    ("a", Dt),
    ("an", Dt),
    ("this", Dt),
    ("these", Dt),
    ("those", Dt),
    ("each", Dt),
    ("every", Dt),
    ("some", Dt),
    ("any", Dt),
    ("no", Dt),
    ("another", Dt),
    ("all", Dt),
    ("both", Dt),
    ("either", Dt),
    ("neither", Dt),
    ("of", In),
    ("in", In),
    ("on", In),
    ("at", In),
    ("by", In),
    ("for", In),
    ("with", In),
    ("from", In),
    ("into", In),
    ("onto", In),
    ("upon", In),
    ("about", In),
    ("above", In),
    ("across", In),
    ("after", In),
    ("against", In),
    ("along", In),
    ("alongside", In),
    ("among", In),
    ("amongst", In),
    ("around", In),
    ("before", In),
    ("behind", In),
    ("below", In),
    ("beneath", In),
    ("beside", In),
    ("besides", In),
    ("between", In),
    ("beyond", In),
    ("during", In),
    ("except", In),
    ("inside", In),
    ("near", In),
    ("off", In),
    ("outside", In),
    ("over", In),
    ("since", In),
    ("through", In),
    ("throughout", In),
    ("toward", In),
    ("towards", In),
    ("under", In),
    ("underneath", In),
    ("until", In),
    ("unlike", In),
    ("via", In),
    ("within", In),
    ("without", In),
    ("although", In),
    ("because", In),
    ("if", In),
    ("though", In),
    ("unless", In),
    ("whereas", In),
    ("while", In),
    ("whether", In),
    ("than", In),
    ("as", In),
    ("like", In),
    ("per", In),
    ("despite", In),
    ("amid", In),
    ("amidst", In),
    ("circa", In),
    ("c.", In),
    ("ca.", In),
    ("to", To),
    ("and", Cc),
    ("or", Cc),
    ("but", Cc),
    ("nor", Cc),
    ("&", Cc),
    ("plus", Cc),
    ("yet", Cc),
    ("i", Prp),
    ("you", Prp),
    ("he", Prp),
    ("she", Prp),
    ("it", Prp),
    ("we", Prp),
    ("they", Prp),
    ("me", Prp),
    ("him", Prp),
    ("us", Prp),
    ("them", Prp),
    ("itself", Prp),
    ("himself", Prp),
    ("herself", Prp),
    ("themselves", Prp),
    ("myself", Prp),
    ("my", PrpS),
    ("your", PrpS),
    ("his", PrpS),
    ("its", PrpS),
    ("our", PrpS),
    ("their", PrpS),
    ("her", PrpS),
    ("which", Wdt),
    ("whichever", Wdt),
    ("who", Wp),
    ("whom", Wp),
    ("what", Wp),
    ("whoever", Wp),
    ("whose", WpS),
    ("where", Wrb),
    ("when", Wrb),
    ("why", Wrb),
    ("how", Wrb),
    ("whereby", Wrb),
    ("wherein", Wrb),
    ("can", Md),
    ("could", Md),
    ("may", Md),
    ("might", Md),
    ("must", Md),
    ("shall", Md),
    ("should", Md),
    ("will", Md),
    ("would", Md),
    ("ought", Md),
    ("'ll", Md),
    ("cannot", Md),
    ("not", Rb),
    ("n't", Rb),
    ("also", Rb),
    ("very", Rb),
    ("often", Rb),
    ("always", Rb),
    ("never", Rb),
    ("still", Rb),
    ("just", Rb),
    ("already", Rb),
    ("only", Rb),
    ("even", Rb),
    ("again", Rb),
    ("now", Rb),
    ("then", Rb),
    ("here", Rb),
    ("soon", Rb),
    ("later", Rb),
    ("once", Rb),
    ("almost", Rb),
    ("quite", Rb),
    ("rather", Rb),
    ("too", Rb),
    ("well", Rb),
    ("ever", Rb),
    ("perhaps", Rb),
    ("today", Rb),
    ("together", Rb),
    ("away", Rb),
    ("back", Rb),
    ("left", Rb),
    ("right", Rb),
    ("so", Rb),
    ("there", Rb),
    ("more", Rbr),
    ("less", Rbr),
    ("most", Rbs),
    ("least", Rbs),
    ("up", Rp),
    ("down", Rp),
    ("out", Rp),
    ("new", Jj),
    ("old", Jj),
    ("large", Jj),
    ("small", Jj),
    ("big", Jj),
    ("main", Jj),
    ("first", Jj),
    ("last", Jj),
    ("other", Jj),
    ("former", Jj),
    ("early", Jj),
    ("late", Jj),
    ("young", Jj),
    ("great", Jj),
    ("high", Jj),
    ("long", Jj),
    ("many", Jj),
    ("several", Jj),
    ("few", Jj),
    ("same", Jj),
    ("different", Jj),
    ("famous", Jj),
    ("second", Jj),
    ("red", Jj),
    ("blue", Jj),
    ("green", Jj),
    ("white", Jj),
    ("black", Jj),
    ("yellow", Jj),
    ("grey", Jj),
    ("gray", Jj),
    ("brown", Jj),
    ("north", Jj),
    ("south", Jj),
    ("east", Jj),
    ("west", Jj),
    ("northern", Jj),
    ("southern", Jj),
    ("eastern", Jj),
    ("western", Jj),
    ("morning", Nn),
    ("evening", Nn),
    ("ceiling", Nn),
    ("wedding", Nn),
    ("king", Nn),
    ("ring", Nn),
    ("string", Nn),
    ("thing", Nn),
    ("spring", Nn),
    ("wing", Nn),
    ("cathedral", Nn),
    ("third", Jj),
    ("fourth", Jj),
    ("fifth", Jj),
    ("tenth", Jj),
    ("twelfth", Jj),
    ("one", Cd),
    ("two", Cd),
    ("three", Cd),
    ("four", Cd),
    ("five", Cd),
    ("six", Cd),
    ("seven", Cd),
    ("eight", Cd),
    ("nine", Cd),
    ("ten", Cd),
    ("eleven", Cd),
    ("twelve", Cd),
    ("twenty", Cd),
    ("hundred", Cd),
    ("thousand", Cd),
    ("million", Cd),
    ("'s", Pos),
    ("’s", Pos),
];

/// Irregular and spelling-irregular verbs: base, 3rd singular, past, past participle, gerund.
const IRREGULAR: &[[&str; 5]] = &[
    ["be", "is", "was", "been", "being"],
    ["have", "has", "had", "had", "having"],
    ["do", "does", "did", "done", "doing"],
    ["become", "becomes", "became", "become", "becoming"],
    ["begin", "begins", "began", "begun", "beginning"],
    ["bear", "bears", "bore", "born", "bearing"],
    ["beat", "beats", "beat", "beaten", "beating"],
    ["break", "breaks", "broke", "broken", "breaking"],
    ["bring", "brings", "brought", "brought", "bringing"],
    ["build", "builds", "built", "built", "building"],
    ["buy", "buys", "bought", "bought", "buying"],
    ["catch", "catches", "caught", "caught", "catching"],
    ["choose", "chooses", "chose", "chosen", "choosing"],
    ["come", "comes", "came", "come", "coming"],
    ["cut", "cuts", "cut", "cut", "cutting"],
    ["dig", "digs", "dug", "dug", "digging"],
    ["draw", "draws", "drew", "drawn", "drawing"],
    ["drive", "drives", "drove", "driven", "driving"],
    ["drop", "drops", "dropped", "dropped", "dropping"],
    ["eat", "eats", "ate", "eaten", "eating"],
    ["fall", "falls", "fell", "fallen", "falling"],
    ["feel", "feels", "felt", "felt", "feeling"],
    ["fight", "fights", "fought", "fought", "fighting"],
    ["find", "finds", "found", "found", "finding"],
    ["fly", "flies", "flew", "flown", "flying"],
    ["forget", "forgets", "forgot", "forgotten", "forgetting"],
    ["get", "gets", "got", "gotten", "getting"],
    ["give", "gives", "gave", "given", "giving"],
    ["go", "goes", "went", "gone", "going"],
    ["grow", "grows", "grew", "grown", "growing"],
    ["hang", "hangs", "hung", "hung", "hanging"],
    ["hear", "hears", "heard", "heard", "hearing"],
    ["hide", "hides", "hid", "hidden", "hiding"],
    ["hit", "hits", "hit", "hit", "hitting"],
    ["hold", "holds", "held", "held", "holding"],
    ["keep", "keeps", "kept", "kept", "keeping"],
    ["know", "knows", "knew", "known", "knowing"],
    ["lay", "lays", "laid", "laid", "laying"],
    ["leave", "leaves", "left", "left", "leaving"],
    ["lead", "leads", "led", "led", "leading"],
    ["lie", "lies", "lay", "lain", "lying"],
    ["lose", "loses", "lost", "lost", "losing"],
    ["make", "makes", "made", "made", "making"],
    ["meet", "meets", "met", "met", "meeting"],
    ["occur", "occurs", "occurred", "occurred", "occurring"],
    ["pay", "pays", "paid", "paid", "paying"],
    ["plan", "plans", "planned", "planned", "planning"],
    ["put", "puts", "put", "put", "putting"],
    ["read", "reads", "read", "read", "reading"],
    ["ride", "rides", "rode", "ridden", "riding"],
    ["rise", "rises", "rose", "risen", "rising"],
    ["run", "runs", "ran", "run", "running"],
    ["say", "says", "said", "said", "saying"],
    ["see", "sees", "saw", "seen", "seeing"],
    ["sell", "sells", "sold", "sold", "selling"],
    ["send", "sends", "sent", "sent", "sending"],
    ["set", "sets", "set", "set", "setting"],
    ["shake", "shakes", "shook", "shaken", "shaking"],
    ["ship", "ships", "shipped", "shipped", "shipping"],
    ["shoot", "shoots", "shot", "shot", "shooting"],
    ["show", "shows", "showed", "shown", "showing"],
    ["sing", "sings", "sang", "sung", "singing"],
    ["sink", "sinks", "sank", "sunk", "sinking"],
    ["sit", "sits", "sat", "sat", "sitting"],
    ["speak", "speaks", "spoke", "spoken", "speaking"],
    ["spend", "spends", "spent", "spent", "spending"],
    ["spread", "spreads", "spread", "spread", "spreading"],
    ["stand", "stands", "stood", "stood", "standing"],
    ["steal", "steals", "stole", "stolen", "stealing"],
    ["stop", "stops", "stopped", "stopped", "stopping"],
    ["strike", "strikes", "struck", "struck", "striking"],
    ["swim", "swims", "swam", "swum", "swimming"],
    ["take", "takes", "took", "taken", "taking"],
    ["teach", "teaches", "taught", "taught", "teaching"],
    ["tell", "tells", "told", "told", "telling"],
    ["think", "thinks", "thought", "thought", "thinking"],
    ["throw", "throws", "threw", "thrown", "throwing"],
    ["undergo", "undergoes", "underwent", "undergone", "undergoing"],
    ["wear", "wears", "wore", "worn", "wearing"],
    ["win", "wins", "won", "won", "winning"],
    ["write", "writes", "wrote", "written", "writing"],
];

/// Regular verbs common in captions; inflections are generated.
const REGULAR: &[&str] = &[
    "appear",
    "arrive",
    "attack",
    "award",
    "call",
    "capture",
    "carry",
    "cause",
    "celebrate",
    "clear",
    "close",
    "collide",
    "complete",
    "compose",
    "consider",
    "consist",
    "construct",
    "contain",
    "cover",
    "create",
    "cross",
    "damage",
    "defend",
    "depict",
    "describe",
    "design",
    "destroy",
    "direct",
    "discover",
    "display",
    "end",
    "exhibit",
    "feature",
    "film",
    "finish",
    "flow",
    "form",
    "help",
    "honor",
    "honour",
    "host",
    "house",
    "illustrate",
    "include",
    "join",
    "kill",
    "land",
    "launch",
    "live",
    "locate",
    "look",
    "love",
    "mark",
    "marry",
    "mount",
    "move",
    "name",
    "occupy",
    "open",
    "own",
    "paint",
    "pass",
    "perform",
    "photograph",
    "place",
    "play",
    "pose",
    "prepare",
    "present",
    "print",
    "produce",
    "protect",
    "raise",
    "reach",
    "receive",
    "record",
    "release",
    "remain",
    "replace",
    "represent",
    "restore",
    "return",
    "serve",
    "settle",
    "sign",
    "start",
    "surround",
    "train",
    "turn",
    "use",
    "view",
    "visit",
    "walk",
    "watch",
    "work",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum VerbForm {
    Base,
    Present,
    Third,
    Past,
    Participle,
    PastOrParticiple,
    Gerund,
}

const ABBREVIATIONS: &[&str] = &[
    "c", "ca", "st", "mr", "mrs", "ms", "dr", "jr", "sr", "mt", "ft", "no", "vs", "fig", "gen", "col", "lt", "capt",
    "sgt", "rev", "prof", "etc",
];

fn is_consonant(c: char) -> bool {
    c.is_ascii_alphabetic() && !"aeiou".contains(c)
}

fn third_person(base: &str) -> String {
    let prev = base.chars().rev().nth(1).unwrap_or('a');
    if base.ends_with('y') && is_consonant(prev) {
        format!("{}ies", &base[..base.len() - 1])
    } else if ["s", "sh", "ch", "x", "z", "o"].iter().any(|s| base.ends_with(s)) {
        format!("{base}es")
    } else {
        format!("{base}s")
    }
}

fn past(base: &str) -> String {
    let prev = base.chars().rev().nth(1).unwrap_or('a');
    if base.ends_with('e') {
        format!("{base}d")
    } else if base.ends_with('y') && is_consonant(prev) {
        format!("{}ied", &base[..base.len() - 1])
    } else {
        format!("{base}ed")
    }
}

fn gerund(base: &str) -> String {
    if let Some(stem) = base.strip_suffix("ie") {
        format!("{stem}ying")
    } else if base.ends_with('e') && !base.ends_with("ee") {
        format!("{}ing", &base[..base.len() - 1])
    } else {
        format!("{base}ing")
    }
}

/// Lexicon-driven tagger with suffix fallbacks.
#[derive(Debug, Clone)]
pub struct BuiltinTagger {
    closed: HashMap<&'static str, PennTag>,
    verbs: HashMap<String, VerbForm>,
}

impl Default for BuiltinTagger {
    fn default() -> Self {
        Self::new()
    }
}

impl BuiltinTagger {
    pub fn new() -> Self {
        let closed = CLOSED.iter().copied().collect();
        let mut verbs = HashMap::new();
        let mut add = |form: String, kind: VerbForm| {
            verbs.entry(form).or_insert(kind);
        };
        for [base, third, past_form, participle, ger] in IRREGULAR {
            add(base.to_string(), VerbForm::Base);
            add(third.to_string(), VerbForm::Third);
            add(ger.to_string(), VerbForm::Gerund);
            if past_form == participle {
                add(past_form.to_string(), VerbForm::PastOrParticiple);
            } else {
                add(past_form.to_string(), VerbForm::Past);
                add(participle.to_string(), VerbForm::Participle);
            }
        }
        for (form, kind) in [
            ("am", VerbForm::Present),
            ("are", VerbForm::Present),
            ("were", VerbForm::Past),
        ] {
            verbs.insert(form.to_owned(), kind);
        }
        // "become"/"come"/"run" participles coincide with the base; prefer base.
        for base in ["become", "come", "run"] {
            verbs.insert(base.to_owned(), VerbForm::Base);
        }
        for base in REGULAR {
            verbs.entry(base.to_string()).or_insert(VerbForm::Base);
            verbs.entry(third_person(base)).or_insert(VerbForm::Third);
            verbs.entry(past(base)).or_insert(VerbForm::PastOrParticiple);
            verbs.entry(gerund(base)).or_insert(VerbForm::Gerund);
        }
        BuiltinTagger { closed, verbs }
    }

    /// Splits caption text into word and punctuation tokens.
    pub fn tokenize(text: &str) -> Vec<String> {
        let chars: Vec<char> = text.chars().collect();
        let mut tokens = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if !c.is_alphanumeric() {
                tokens.push(c.to_string());
                i += 1;
                continue;
            }
            let start = i;
            i += 1;
            while i < chars.len() {
                let c = chars[i];
                let next_alnum = chars.get(i + 1).is_some_and(|n| n.is_alphanumeric());
                let joins = match c {
                    '-' | '\'' | '’' => next_alnum,
                    '.' | ',' => next_alnum && chars[i - 1].is_ascii_digit() && chars[i + 1].is_ascii_digit(),
                    _ => c.is_alphanumeric(),
                };
                if !joins {
                    break;
                }
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            let lower = word.to_lowercase();
            if chars.get(i) == Some(&'.')
                && (word.chars().count() == 1 && word.chars().all(char::is_alphabetic)
                    || ABBREVIATIONS.contains(&lower.as_str()))
            {
                tokens.push(format!("{word}."));
                i += 1;
                continue;
            }
            let split_at = ["'s", "’s"]
                .iter()
                .find(|suffix| lower.ends_with(*suffix) && lower.len() > suffix.len())
                .map(|suffix| word.len() - suffix.len())
                .or_else(|| (lower.ends_with("n't") && lower.len() > 3).then(|| word.len() - 3));
            match split_at {
                Some(at) => {
                    tokens.push(word[..at].to_owned());
                    tokens.push(word[at..].to_owned());
                }
                None => tokens.push(word),
            }
        }
        tokens
    }

    fn punctuation_tag(token: &str, prev: Option<&str>) -> PennTag {
        match token {
            "." | "!" | "?" => Period,
            "," => Comma,
            ";" | ":" | "-" | "–" | "—" | "…" => Colon,
            "(" | "[" | "{" => Lrb,
            ")" | "]" | "}" => Rrb,
            "“" | "‘" | "`" => OpenQuote,
            "”" | "’" | "'" => CloseQuote,
            "\"" => {
                if prev.is_none_or(|p| matches!(p, "(" | "[" | ":" | ",")) {
                    OpenQuote
                } else {
                    CloseQuote
                }
            }
            "$" | "£" | "€" => Dollar,
            "#" => Hash,
            _ => Sym,
        }
    }

    fn resolve_verb(form: VerbForm, tags: &[PennTag], lowers: &[String], i: usize) -> PennTag {
        let prev = tags.last().copied();
        let subject_like = |t: Option<PennTag>| t.is_some_and(|t| t.is_noun() || matches!(t, Prp | Ex | Wdt | Wp));
        let nominal_context = |t: Option<PennTag>| matches!(t, Some(Dt | PrpS | Jj | Pos | Cd | In));
        match form {
            VerbForm::Gerund if matches!(prev, Some(Dt | PrpS)) => Nn,
            VerbForm::Gerund => Vbg,
            VerbForm::Past => Vbd,
            VerbForm::Participle => Vbn,
            VerbForm::Present => Vbp,
            VerbForm::Base => {
                let before = if prev.is_some_and(|t| t.is_adverb()) {
                    tags.len().checked_sub(2).map(|k| tags[k])
                } else {
                    prev
                };
                let after_do = i > 0 && matches!(lowers[i - 1].as_str(), "do" | "does" | "did");
                if matches!(before, Some(To | Md)) || after_do {
                    Vb
                } else if subject_like(prev) {
                    Vbp
                } else if nominal_context(prev) {
                    Nn
                } else {
                    Vb
                }
            }
            VerbForm::Third => {
                if i == 0 || nominal_context(prev) {
                    Nns
                } else {
                    Vbz
                }
            }
            VerbForm::PastOrParticiple => {
                let auxiliary = lowers[..i].iter().rev().take(3).any(|w| {
                    matches!(
                        w.as_str(),
                        "is" | "was" | "are" | "were" | "be" | "been" | "being" | "has" | "have" | "had" | "'s"
                    )
                });
                let agent = lowers.get(i + 1).is_some_and(|w| w == "by");
                if auxiliary || agent {
                    Vbn
                } else if subject_like(prev) {
                    Vbd
                } else {
                    Vbn
                }
            }
        }
    }

    fn suffix_tag(lower: &str, tags: &[PennTag], lowers: &[String], i: usize) -> PennTag {
        let len = lower.chars().count();
        if lower.ends_with("ing") && len >= 5 {
            return Self::resolve_verb(VerbForm::Gerund, tags, lowers, i);
        }
        if lower.ends_with("ed") && len >= 4 {
            return Self::resolve_verb(VerbForm::PastOrParticiple, tags, lowers, i);
        }
        if lower.ends_with("ly") && len >= 4 {
            return Rb;
        }
        const ADJ: &[&str] = &[
            "ous", "ful", "ive", "able", "ible", "ical", "ic", "ish", "less", "ese", "ian",
        ];
        if ADJ.iter().any(|s| lower.ends_with(s)) && len > 4 {
            return Jj;
        }
        let plural = lower.ends_with('s') && !["ss", "us", "is"].iter().any(|s| lower.ends_with(s)) && len >= 3;
        if plural {
            let prev = tags.last().copied();
            let next_closed = lowers.get(i + 1).is_none_or(|w| {
                matches!(
                    w.as_str(),
                    "the"
                        | "a"
                        | "an"
                        | "to"
                        | "into"
                        | "through"
                        | "in"
                        | "on"
                        | "at"
                        | "from"
                        | "over"
                        | "with"
                        | "."
                )
            });
            if matches!(prev, Some(Nn | Nnp | Prp)) && next_closed {
                return Vbz;
            }
            return Nns;
        }
        Nn
    }

    fn tag_tokens(&self, tokens: &[String]) -> Vec<PennTag> {
        let lowers: Vec<String> = tokens.iter().map(|t| t.to_lowercase()).collect();
        let mut tags: Vec<PennTag> = Vec::with_capacity(tokens.len());
        for (i, token) in tokens.iter().enumerate() {
            let lower = &lowers[i];
            let first = token.chars().next().unwrap_or(' ');
            let prev_token = i.checked_sub(1).map(|k| tokens[k].as_str());
            let tag = if !first.is_alphanumeric() {
                Self::punctuation_tag(token, prev_token)
            } else if token.chars().any(|c| c.is_ascii_digit()) {
                if ["st", "nd", "rd", "th"].iter().any(|s| lower.ends_with(s)) {
                    Jj
                } else {
                    Cd
                }
            } else {
                let sentence_initial = tags.iter().all(|t| t.is_punctuation()) || tags.last() == Some(&Period);
                let capitalized = first.is_uppercase();
                if capitalized && !sentence_initial && token != "I" {
                    Nnp
                } else if let Some(tag) = self.closed.get(lower.as_str()) {
                    match (lower.as_str(), *tag) {
                        ("that", _) => unreachable!(),
                        ("there", _)
                            if lowers
                                .get(i + 1)
                                .is_some_and(|w| matches!(w.as_str(), "is" | "was" | "are" | "were" | "'s")) =>
                        {
                            Ex
                        }
                        _ => *tag,
                    }
                } else if lower == "that" {
                    if tags.last().is_some_and(|t| t.is_noun()) {
                        Wdt
                    } else {
                        In
                    }
                } else if let Some(form) = self.verbs.get(lower.as_str()) {
                    Self::resolve_verb(*form, &tags, &lowers, i)
                } else if capitalized
                    && tokens
                        .get(i + 1)
                        .and_then(|t| t.chars().next())
                        .is_some_and(char::is_uppercase)
                {
                    Nnp
                } else {
                    Self::suffix_tag(lower, &tags, &lowers, i)
                }
            };
            tags.push(tag);
        }
        tags
    }
}

impl Tagger for BuiltinTagger {
    fn tag(&self, caption: &str) -> Result<TaggedCaption, TagError> {
        let tokens = Self::tokenize(caption);
        if tokens.is_empty() {
            return Err(TagError::EmptyCaption);
        }
        let tags = self.tag_tokens(&tokens);
        TaggedCaption::new(tokens, tags, TagSource::BuiltinTagger)
    }
}
