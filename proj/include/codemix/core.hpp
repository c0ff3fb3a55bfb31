#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "codemix/errors.hpp"

namespace codemix {

enum class Script { Roman, NonRoman };

/// A supported English-X language pair. English is always the embedded
/// language; the matrix language supplies the sentence frame.
struct LanguagePair {
    std::string embedded = "en";
    std::string matrix = "hi";
    Script matrix_script = Script::NonRoman;

    /// Look up a registered matrix language ("hi", "bn", "fr", "es").
    /// Throws FormatError for unknown codes; use custom() to extend.
    static LanguagePair of(std::string_view matrix_code);

    /// Parse a pair spec of the form "en-hi".
    static LanguagePair parse(std::string_view spec);

    /// Register-free constructor for language pairs beyond the built-in set.
    static LanguagePair custom(std::string_view matrix_code, Script script);

    std::string code() const { return embedded + "-" + matrix; }
    bool non_roman() const { return matrix_script == Script::NonRoman; }

    bool operator==(const LanguagePair&) const = default;
};

/// Lowercased, punctuation-free sentence. `text` is always the tokens
/// joined by single spaces; construct via preprocess().
struct NormalizedSentence {
    std::string text;
    std::vector<std::string> tokens;

    bool empty() const { return text.empty(); }
};

/// Normalize raw text: compose Unicode, lowercase, strip punctuation and
/// symbols, collapse whitespace. Idempotent.
NormalizedSentence preprocess(std::string_view raw);

/// Whitespace tokens of a normalized sentence, in order.
std::vector<std::string> tokenize(const NormalizedSentence& s);

/// True when the sentence contains any character outside Latin letters,
/// ASCII digits, and whitespace. Accented Latin counts as Roman.
bool has_non_roman(const NormalizedSentence& s);

/// A token split into leading punctuation, core word, trailing punctuation.
struct TokenAffixes {
    std::string leading;
    std::string core;
    std::string trailing;
};

TokenAffixes split_token_affixes(std::string_view token);

/// Plain whitespace split of arbitrary text; no empty tokens.
std::vector<std::string> split_whitespace(std::string_view text);

/// Apply the fixed composed normalization form used before all string
/// comparisons. Covers Latin combining sequences and Indic nukta forms.
std::string normalize_composed(std::string_view text);

/// Latin-aware lowercasing; non-Latin code points pass through.
std::string to_lower(std::string_view text);

// Code-point classification used by preprocessing.
bool is_punct_or_symbol(char32_t cp);
bool is_space_cp(char32_t cp);
bool is_roman_cp(char32_t cp);

namespace utf8 {

/// True when the byte sequence is well-formed UTF-8.
bool valid(std::string_view bytes);

/// Decode to code points; ill-formed sequences become U+FFFD.
std::u32string decode(std::string_view bytes);

std::string encode(std::u32string_view code_points);
void append(std::string& out, char32_t cp);

} // namespace utf8

} // namespace codemix
