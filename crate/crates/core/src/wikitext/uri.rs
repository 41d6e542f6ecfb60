use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UriError {
    #[error("no media prefix in {0:?}")]
    MissingPrefix(String),
    #[error("empty file name in {0:?}")]
    EmptyName(String),
}

/// Namespace prefixes that denote a media file, compared case-insensitively.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MediaAliases {
    aliases: Vec<String>,
}

impl Default for MediaAliases {
    fn default() -> Self {
        Self::new(["File", "Image"])
    }
}

impl MediaAliases {
    pub fn new<I, S>(aliases: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        MediaAliases {
            aliases: aliases.into_iter().map(|a| a.as_ref().trim().to_lowercase()).collect(),
        }
    }

    /// Adds localized prefixes such as `Datei` or `Fichier`.
    pub fn with<I, S>(mut self, extra: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        self.aliases
            .extend(extra.into_iter().map(|a| a.as_ref().trim().to_lowercase()));
        self
    }

    pub fn is_media_prefix(&self, prefix: &str) -> bool {
        let p = prefix.trim().replace('_', " ").to_lowercase();
        self.aliases.contains(&p)
    }

    /// Splits `raw` into `(prefix, name)` when it starts with a media prefix.
    pub fn split<'a>(&self, raw: &'a str) -> Option<(&'a str, &'a str)> {
        let (prefix, name) = raw.trim().split_once(':')?;
        self.is_media_prefix(prefix).then_some((prefix, name))
    }

    pub fn normalize(&self, raw: &str) -> Result<String, UriError> {
        let (_, name) = self.split(raw).ok_or_else(|| UriError::MissingPrefix(raw.to_owned()))?;
        let name = name.replace('_', " ");
        let name = name.split_whitespace().collect::<Vec<_>>().join(" ");
        let mut chars = name.chars();
        let Some(first) = chars.next() else {
            return Err(UriError::EmptyName(raw.to_owned()));
        };
        let mut out = String::with_capacity(name.len() + 5);
        out.push_str("File:");
        out.extend(first.to_uppercase());
        out.push_str(chars.as_str());
        Ok(out)
    }
}

/// Rewrites a media reference to its canonical `File:<Name>` form: any media
/// prefix becomes `File`, underscores become spaces, whitespace is collapsed
/// and the first letter of the file name is uppercased.
pub fn normalize_image_uri(raw: &str) -> Result<String, UriError> {
    MediaAliases::default().normalize(raw)
}
