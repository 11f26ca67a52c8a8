use super::AlignError;
use std::collections::{BTreeMap, HashMap};

/// Sparse vector as (column, value) pairs sorted by column.
pub type SparseVector = Vec<(usize, f64)>;

/// Lowercases, splits on non-alphanumeric characters and drops tokens
/// shorter than two characters.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|t| t.chars().count() >= 2)
        .map(|t| t.to_lowercase())
        .collect()
}

/// Smoothed TF-IDF: `idf(t) = ln((1 + D) / (1 + df(t))) + 1`, raw term
/// counts, L2-normalised rows.
#[derive(Debug, Clone, PartialEq)]
pub struct TfIdfVectorizer {
    vocabulary: HashMap<String, usize>,
    idf: Vec<f64>,
}

impl TfIdfVectorizer {
    pub fn fit<S: AsRef<str>>(documents: &[S]) -> Result<Self, AlignError> {
        let mut df: BTreeMap<String, usize> = BTreeMap::new();
        for doc in documents {
            let mut tokens = tokenize(doc.as_ref());
            tokens.sort_unstable();
            tokens.dedup();
            for t in tokens {
                *df.entry(t).or_default() += 1;
            }
        }
        if df.is_empty() {
            return Err(AlignError::EmptyVocabulary);
        }
        let n_docs = documents.len() as f64;
        let mut vocabulary = HashMap::with_capacity(df.len());
        let mut idf = Vec::with_capacity(df.len());
        for (col, (token, count)) in df.into_iter().enumerate() {
            idf.push(((1.0 + n_docs) / (1.0 + count as f64)).ln() + 1.0);
            vocabulary.insert(token, col);
        }
        Ok(Self { vocabulary, idf })
    }

    pub fn vocabulary_size(&self) -> usize {
        self.idf.len()
    }

    pub fn column(&self, token: &str) -> Option<usize> {
        self.vocabulary.get(token).copied()
    }

    pub fn idf(&self, column: usize) -> f64 {
        self.idf[column]
    }

    /// Empty when the text has no in-vocabulary token.
    pub fn transform(&self, text: &str) -> SparseVector {
        let mut counts: BTreeMap<usize, f64> = BTreeMap::new();
        for token in tokenize(text) {
            if let Some(&col) = self.vocabulary.get(&token) {
                *counts.entry(col).or_default() += 1.0;
            }
        }
        let mut v: SparseVector = counts.into_iter().map(|(col, tf)| (col, tf * self.idf[col])).collect();
        let norm = v.iter().map(|(_, x)| x * x).sum::<f64>().sqrt();
        if norm > 0.0 {
            for (_, x) in &mut v {
                *x /= norm;
            }
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokenizer_rule() {
        assert_eq!(tokenize("The x-ray, \\alpha_2 a OK"), vec!["the", "ray", "alpha", "ok"]);
    }

    #[test]
    fn idf_formula() {
        let v = TfIdfVectorizer::fit(&["aa bb", "aa cc", "aa"]).unwrap();
        let aa = v.column("aa").unwrap();
        let bb = v.column("bb").unwrap();
        assert!((v.idf(aa) - 1.0).abs() < 1e-12);
        assert!((v.idf(bb) - ((4.0f64 / 2.0).ln() + 1.0)).abs() < 1e-12);
    }

    #[test]
    fn rows_are_unit_norm() {
        let v = TfIdfVectorizer::fit(&["aa bb bb", "cc"]).unwrap();
        let row = v.transform("aa bb bb zz");
        let norm: f64 = row.iter().map(|(_, x)| x * x).sum();
        assert!((norm - 1.0).abs() < 1e-12);
        assert!(v.transform("zz qq").is_empty());
    }

    #[test]
    fn empty_vocabulary() {
        assert_eq!(
            TfIdfVectorizer::fit(&["a b", "!"]).unwrap_err(),
            AlignError::EmptyVocabulary
        );
    }
}
