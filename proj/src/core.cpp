#include "codemix/core.hpp"

#include <algorithm>
#include <array>
#include <cstdint>

namespace codemix {

namespace utf8 {

namespace {
constexpr char32_t kReplacement = 0xFFFD;
} // namespace

bool valid(std::string_view bytes) {
    size_t i = 0;
    const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
    const size_t n = bytes.size();
    while (i < n) {
        unsigned char b = p[i];
        size_t len;
        char32_t cp;
        if (b < 0x80) {
            i += 1;
            continue;
        } else if ((b & 0xE0) == 0xC0) {
            len = 2;
            cp = b & 0x1F;
        } else if ((b & 0xF0) == 0xE0) {
            len = 3;
            cp = b & 0x0F;
        } else if ((b & 0xF8) == 0xF0) {
            len = 4;
            cp = b & 0x07;
        } else {
            return false;
        }
        if (i + len > n) return false;
        for (size_t k = 1; k < len; ++k) {
            if ((p[i + k] & 0xC0) != 0x80) return false;
            cp = (cp << 6) | (p[i + k] & 0x3F);
        }
        // Reject overlong forms, surrogates, and out-of-range values.
        if (len == 2 && cp < 0x80) return false;
        if (len == 3 && cp < 0x800) return false;
        if (len == 4 && cp < 0x10000) return false;
        if (cp >= 0xD800 && cp <= 0xDFFF) return false;
        if (cp > 0x10FFFF) return false;
        i += len;
    }
    return true;
}

std::u32string decode(std::string_view bytes) {
    std::u32string out;
    out.reserve(bytes.size());
    size_t i = 0;
    const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
    const size_t n = bytes.size();
    while (i < n) {
        unsigned char b = p[i];
        if (b < 0x80) {
            out.push_back(b);
            i += 1;
            continue;
        }
        size_t len;
        char32_t cp;
        if ((b & 0xE0) == 0xC0) {
            len = 2;
            cp = b & 0x1F;
        } else if ((b & 0xF0) == 0xE0) {
            len = 3;
            cp = b & 0x0F;
        } else if ((b & 0xF8) == 0xF0) {
            len = 4;
            cp = b & 0x07;
        } else {
            out.push_back(kReplacement);
            i += 1;
            continue;
        }
        if (i + len > n) {
            out.push_back(kReplacement);
            break;
        }
        bool ok = true;
        for (size_t k = 1; k < len; ++k) {
            if ((p[i + k] & 0xC0) != 0x80) {
                ok = false;
                break;
            }
            cp = (cp << 6) | (p[i + k] & 0x3F);
        }
        if (!ok || (len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
            (len == 4 && cp < 0x10000) || (cp >= 0xD800 && cp <= 0xDFFF) ||
            cp > 0x10FFFF) {
            out.push_back(kReplacement);
            i += 1;
            continue;
        }
        out.push_back(cp);
        i += len;
    }
    return out;
}

void append(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

std::string encode(std::u32string_view code_points) {
    std::string out;
    out.reserve(code_points.size() * 2);
    for (char32_t cp : code_points) append(out, cp);
    return out;
}

} // namespace utf8

namespace {

struct Range {
    char32_t lo;
    char32_t hi;
};

constexpr bool in_ranges(char32_t cp, const Range* ranges, size_t n) {
    for (size_t i = 0; i < n; ++i) {
        if (cp >= ranges[i].lo && cp <= ranges[i].hi) return true;
    }
    return false;
}

// Punctuation and symbol ranges stripped by preprocess(). Covers the
// general/Latin/Indic/CJK punctuation blocks, currency, arrows, math and
// misc symbols, and emoji.
constexpr Range kPunctSymbolRanges[] = {
    {0x0021, 0x002F}, {0x003A, 0x0040}, {0x005B, 0x0060}, {0x007B, 0x007E},
    {0x00A1, 0x00A9}, {0x00AB, 0x00B9}, {0x00BB, 0x00BF}, {0x00D7, 0x00D7},
    {0x00F7, 0x00F7}, {0x0964, 0x0965}, {0x0970, 0x0970}, {0x09F2, 0x09FD},
    {0x200B, 0x200F}, {0x2010, 0x2027}, {0x202A, 0x202E}, {0x2030, 0x205E},
    {0x2060, 0x2064}, {0x20A0, 0x20CF}, {0x2100, 0x2125}, {0x2127, 0x2BFF},
    {0x3001, 0x303F}, {0xFE10, 0xFE19}, {0xFE30, 0xFE6F}, {0xFF01, 0xFF0F},
    {0xFF1A, 0xFF20}, {0xFF3B, 0xFF40}, {0xFF5B, 0xFF65}, {0xFFFD, 0xFFFD},
    {0x1F000, 0x1FAFF},
};

constexpr Range kSpaceRanges[] = {
    {0x0009, 0x000D}, {0x0020, 0x0020}, {0x0085, 0x0085}, {0x00A0, 0x00A0},
    {0x1680, 0x1680}, {0x2000, 0x200A}, {0x2028, 0x2029}, {0x202F, 0x202F},
    {0x205F, 0x205F}, {0x3000, 0x3000},
};

// Latin-script letters: ASCII, Latin-1 letters, Latin Extended-A/B, IPA,
// and Latin Extended Additional.
constexpr Range kLatinLetterRanges[] = {
    {0x0041, 0x005A}, {0x0061, 0x007A}, {0x00AA, 0x00AA}, {0x00BA, 0x00BA},
    {0x00C0, 0x00D6}, {0x00D8, 0x00F6}, {0x00F8, 0x024F}, {0x0250, 0x02AF},
    {0x1E00, 0x1EFF},
};

// Precomposed Latin forms for base letter + combining mark sequences, so
// that decomposed provider output compares equal to composed text.
struct Composition {
    char32_t base;
    char32_t mark;
    char32_t composed;
};

constexpr Composition kLatinCompositions[] = {
    {U'A', 0x0300, 0x00C0}, {U'A', 0x0301, 0x00C1}, {U'A', 0x0302, 0x00C2},
    {U'A', 0x0303, 0x00C3}, {U'A', 0x0308, 0x00C4}, {U'A', 0x030A, 0x00C5},
    {U'C', 0x0327, 0x00C7}, {U'E', 0x0300, 0x00C8}, {U'E', 0x0301, 0x00C9},
    {U'E', 0x0302, 0x00CA}, {U'E', 0x0308, 0x00CB}, {U'I', 0x0300, 0x00CC},
    {U'I', 0x0301, 0x00CD}, {U'I', 0x0302, 0x00CE}, {U'I', 0x0308, 0x00CF},
    {U'N', 0x0303, 0x00D1}, {U'O', 0x0300, 0x00D2}, {U'O', 0x0301, 0x00D3},
    {U'O', 0x0302, 0x00D4}, {U'O', 0x0303, 0x00D5}, {U'O', 0x0308, 0x00D6},
    {U'U', 0x0300, 0x00D9}, {U'U', 0x0301, 0x00DA}, {U'U', 0x0302, 0x00DB},
    {U'U', 0x0308, 0x00DC}, {U'Y', 0x0301, 0x00DD}, {U'a', 0x0300, 0x00E0},
    {U'a', 0x0301, 0x00E1}, {U'a', 0x0302, 0x00E2}, {U'a', 0x0303, 0x00E3},
    {U'a', 0x0308, 0x00E4}, {U'a', 0x030A, 0x00E5}, {U'c', 0x0327, 0x00E7},
    {U'e', 0x0300, 0x00E8}, {U'e', 0x0301, 0x00E9}, {U'e', 0x0302, 0x00EA},
    {U'e', 0x0308, 0x00EB}, {U'i', 0x0300, 0x00EC}, {U'i', 0x0301, 0x00ED},
    {U'i', 0x0302, 0x00EE}, {U'i', 0x0308, 0x00EF}, {U'n', 0x0303, 0x00F1},
    {U'o', 0x0300, 0x00F2}, {U'o', 0x0301, 0x00F3}, {U'o', 0x0302, 0x00F4},
    {U'o', 0x0303, 0x00F5}, {U'o', 0x0308, 0x00F6}, {U'u', 0x0300, 0x00F9},
    {U'u', 0x0301, 0x00FA}, {U'u', 0x0302, 0x00FB}, {U'u', 0x0308, 0x00FC},
    {U'y', 0x0301, 0x00FD}, {U'y', 0x0308, 0x00FF},
};

// Devanagari and Bengali nukta letters are composition exclusions: the
// composed code point decomposes to base letter + nukta.
struct NuktaDecomposition {
    char32_t composed;
    char32_t base;
    char32_t nukta;
};

constexpr NuktaDecomposition kNuktaForms[] = {
    {0x0929, 0x0928, 0x093C}, {0x0931, 0x0930, 0x093C}, {0x0934, 0x0933, 0x093C},
    {0x0958, 0x0915, 0x093C}, {0x0959, 0x0916, 0x093C}, {0x095A, 0x0917, 0x093C},
    {0x095B, 0x091C, 0x093C}, {0x095C, 0x0921, 0x093C}, {0x095D, 0x0922, 0x093C},
    {0x095E, 0x092B, 0x093C}, {0x095F, 0x092F, 0x093C}, {0x09DC, 0x09A1, 0x09BC},
    {0x09DD, 0x09A2, 0x09BC}, {0x09DF, 0x09AF, 0x09BC},
};

char32_t lower_cp(char32_t cp) {
    if (cp >= U'A' && cp <= U'Z') return cp + 0x20;
    if (cp >= 0x00C0 && cp <= 0x00DE && cp != 0x00D7) return cp + 0x20;
    if (cp == 0x0130) return U'i';
    if (cp == 0x0178) return 0x00FF;
    if (cp >= 0x0100 && cp <= 0x0137 && (cp % 2) == 0) return cp + 1;
    if (cp >= 0x0139 && cp <= 0x0148 && (cp % 2) == 1) return cp + 1;
    if (cp >= 0x014A && cp <= 0x0177 && (cp % 2) == 0) return cp + 1;
    if (cp >= 0x0179 && cp <= 0x017E && (cp % 2) == 1) return cp + 1;
    if (cp >= 0x0200 && cp <= 0x0232 && (cp % 2) == 0) return cp + 1;
    if (cp >= 0x1E00 && cp <= 0x1EFF && (cp % 2) == 0) return cp + 1;
    return cp;
}

std::u32string compose_points(std::u32string_view in) {
    std::u32string out;
    out.reserve(in.size());
    for (char32_t cp : in) {
        bool combined = false;
        if (!out.empty()) {
            for (const auto& c : kLatinCompositions) {
                if (c.mark == cp && c.base == out.back()) {
                    out.back() = c.composed;
                    combined = true;
                    break;
                }
            }
        }
        if (combined) continue;
        bool decomposed = false;
        for (const auto& n : kNuktaForms) {
            if (n.composed == cp) {
                out.push_back(n.base);
                out.push_back(n.nukta);
                decomposed = true;
                break;
            }
        }
        if (!decomposed) out.push_back(cp);
    }
    return out;
}

} // namespace

bool is_punct_or_symbol(char32_t cp) {
    return in_ranges(cp, kPunctSymbolRanges, std::size(kPunctSymbolRanges));
}

bool is_space_cp(char32_t cp) {
    return in_ranges(cp, kSpaceRanges, std::size(kSpaceRanges));
}

bool is_roman_cp(char32_t cp) {
    if (cp >= U'0' && cp <= U'9') return true;
    if (is_space_cp(cp)) return true;
    return in_ranges(cp, kLatinLetterRanges, std::size(kLatinLetterRanges));
}

std::string normalize_composed(std::string_view text) {
    return utf8::encode(compose_points(utf8::decode(text)));
}

std::string to_lower(std::string_view text) {
    std::u32string cps = utf8::decode(text);
    for (char32_t& cp : cps) cp = lower_cp(cp);
    return utf8::encode(cps);
}

NormalizedSentence preprocess(std::string_view raw) {
    std::u32string cps = compose_points(utf8::decode(raw));
    NormalizedSentence out;
    std::string current;
    auto flush = [&] {
        if (current.empty()) return;
        if (!out.text.empty()) out.text.push_back(' ');
        out.text += current;
        out.tokens.push_back(std::move(current));
        current.clear();
    };
    for (char32_t cp : cps) {
        if (is_space_cp(cp)) {
            flush();
        } else if (!is_punct_or_symbol(cp)) {
            utf8::append(current, lower_cp(cp));
        }
    }
    flush();
    return out;
}

std::vector<std::string> tokenize(const NormalizedSentence& s) {
    return s.tokens;
}

bool has_non_roman(const NormalizedSentence& s) {
    for (char32_t cp : utf8::decode(s.text)) {
        if (!is_roman_cp(cp)) return true;
    }
    return false;
}

TokenAffixes split_token_affixes(std::string_view token) {
    std::u32string cps = utf8::decode(token);
    size_t begin = 0;
    size_t end = cps.size();
    while (begin < end && is_punct_or_symbol(cps[begin])) ++begin;
    while (end > begin && is_punct_or_symbol(cps[end - 1])) --end;
    TokenAffixes parts;
    parts.leading = utf8::encode(std::u32string_view(cps).substr(0, begin));
    parts.core = utf8::encode(std::u32string_view(cps).substr(begin, end - begin));
    parts.trailing = utf8::encode(std::u32string_view(cps).substr(end));
    return parts;
}

std::vector<std::string> split_whitespace(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    for (char32_t cp : utf8::decode(text)) {
        if (is_space_cp(cp)) {
            if (!current.empty()) tokens.push_back(std::move(current)), current.clear();
        } else {
            utf8::append(current, cp);
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

LanguagePair LanguagePair::of(std::string_view matrix_code) {
    if (matrix_code == "hi") return {"en", "hi", Script::NonRoman};
    if (matrix_code == "bn") return {"en", "bn", Script::NonRoman};
    if (matrix_code == "fr") return {"en", "fr", Script::Roman};
    if (matrix_code == "es") return {"en", "es", Script::Roman};
    throw FormatError("unknown matrix language code: " + std::string(matrix_code));
}

LanguagePair LanguagePair::parse(std::string_view spec) {
    auto dash = spec.find('-');
    if (dash == std::string_view::npos || spec.substr(0, dash) != "en") {
        throw FormatError("language pair must look like \"en-hi\": " + std::string(spec));
    }
    return of(spec.substr(dash + 1));
}

LanguagePair LanguagePair::custom(std::string_view matrix_code, Script script) {
    if (matrix_code == "en" || matrix_code.empty()) {
        throw FormatError("matrix language must differ from embedded English");
    }
    return {"en", std::string(matrix_code), script};
}

} // namespace codemix
