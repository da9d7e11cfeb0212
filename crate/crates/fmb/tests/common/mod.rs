//! Test helpers: deterministic English-like corpus generation and random
//! texts over small alphabets.

use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const COMMON_WORDS: &[&str] = &[
    "the", "of", "and", "to", "a", "in", "that", "is", "was", "he", "for", "it", "with", "as",
    "his", "on", "be", "at", "by", "had", "not", "are", "but", "from", "or", "have", "an",
    "they", "which", "one", "you", "were", "her", "all", "she", "there", "would", "their",
    "we", "him", "been", "has", "when", "who", "will", "more", "no", "if", "out", "so",
    "said", "what", "up", "its", "about", "into", "than", "them", "can", "only", "other",
    "new", "some", "could", "time", "these", "two", "may", "then", "do", "first", "any",
    "my", "now", "such", "like", "our", "over", "man", "me", "even", "most", "made", "after",
    "also", "did", "many", "before", "must", "through", "back", "years", "where", "much",
    "your", "way", "well", "down", "should", "because", "each", "just", "those", "people",
    "how", "too", "little", "state", "good", "very", "make", "world", "still", "own", "see",
    "men", "work", "long", "get", "here", "between", "both", "life", "being", "under",
    "never", "day", "same", "another", "know", "while", "last", "might", "us", "great",
];

/// Deterministic vocabulary: common words first, then syllable-built words,
/// sampled with Zipf-like weights so the byte statistics resemble prose.
fn vocabulary() -> Vec<String> {
    let onsets = ["b", "c", "d", "f", "g", "h", "l", "m", "n", "p", "r", "s", "t", "v", "st", "tr", "ch", "gr"];
    let nuclei = ["a", "e", "i", "o", "u", "ai", "ea", "ou"];
    let codas = ["", "n", "r", "s", "t", "l", "nd", "st", "ck", "m"];

    let mut words: Vec<String> = COMMON_WORDS.iter().map(|s| s.to_string()).collect();
    'outer: for syllables in 2..=3usize {
        let mut idx = vec![0usize; syllables * 3];
        loop {
            let mut w = String::new();
            for s in 0..syllables {
                w.push_str(onsets[idx[s * 3] % onsets.len()]);
                w.push_str(nuclei[idx[s * 3 + 1] % nuclei.len()]);
                w.push_str(codas[idx[s * 3 + 2] % codas.len()]);
            }
            words.push(w);
            if words.len() >= 4000 {
                break 'outer;
            }
            // Odometer over the syllable components.
            let mut carry = true;
            let dims = [onsets.len(), nuclei.len(), codas.len()];
            for (i, slot) in idx.iter_mut().enumerate() {
                if !carry {
                    break;
                }
                *slot += 1;
                if *slot < dims[i % 3] {
                    carry = false;
                } else {
                    *slot = 0;
                }
            }
        }
    }
    words
}

/// English-like text of roughly `size` bytes, reproducible for a seed.
pub fn english_like(size: usize, seed: u64) -> Vec<u8> {
    let vocab = vocabulary();
    let weights: Vec<f64> = (0..vocab.len()).map(|r| 1.0 / (r + 1) as f64).collect();
    let dist = WeightedIndex::new(&weights).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut out = Vec::with_capacity(size + 64);
    let mut words_in_sentence = 0usize;
    let mut sentence_len = rng.gen_range(5..15);
    let mut words_on_line = 0usize;
    while out.len() < size {
        let word = &vocab[dist.sample(&mut rng)];
        if words_in_sentence == 0 {
            let mut chars = word.chars();
            if let Some(c) = chars.next() {
                out.extend(c.to_uppercase().to_string().bytes());
                out.extend(chars.as_str().bytes());
            }
        } else {
            out.extend(word.bytes());
        }
        words_in_sentence += 1;
        words_on_line += 1;
        if words_in_sentence >= sentence_len {
            out.push(b'.');
            words_in_sentence = 0;
            sentence_len = rng.gen_range(5..15);
        }
        if words_on_line >= 13 {
            out.push(b'\n');
            words_on_line = 0;
        } else {
            out.push(b' ');
        }
    }
    out.truncate(size);
    // The truncation point may leave trailing whitespace; keep payload
    // sentinel-free and non-empty regardless.
    debug_assert!(!out.contains(&0));
    out
}

/// Random text over an alphabet of the given size (symbols 1..=sigma).
pub fn random_text(sigma: u8, n: usize, rng: &mut ChaCha8Rng) -> Vec<u8> {
    (0..n).map(|_| rng.gen_range(1..=sigma)).collect()
}
