#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "codemix/cg.hpp"
#include "codemix/providers.hpp"
#include "json.hpp"

namespace codemix {

/// Decomposition of an inflected Hindi verb against its base form: the stem
/// shared with the base (base minus its infinitive marker) and whatever the
/// actual word carries after it.
struct SuffixAnalysis {
    std::string stem;
    std::string suffix;
    bool base_ends_na = false; // base form ends with the infinitive marker
};

/// The fixed suffix-rule tables mapping (suffix, voice, next word, sentence
/// end) to the auxiliary inserted after a replaced English verb. Shipped as
/// a versioned JSON data file so the lists can be patched without code
/// changes; the branching structure is fixed.
struct InflectionRuleTable {
    int version = 1;

    // Rule 1: infinitive forms, normally replaced bare.
    std::vector<std::string> infinitive_suffixes;
    std::vector<std::string> clause_end_markers;
    std::string infinitive_end_added;

    // Rule 2: imperfective/oblique participles.
    std::vector<std::string> participle_suffixes;
    std::string participle_passive_stem;
    std::string participle_active_stem;
    std::vector<std::string> participle_bare_suffixes; // no suffix appended

    // Rule 3: no suffix at all.
    std::string bare_added;
    std::vector<std::string> bare_skip_next;

    // Rule 4: perfective forms.
    std::vector<std::string> perfective_suffixes;
    std::vector<std::string> perfective_skip_next;
    std::map<std::string, std::string> perfective_passive;
    std::vector<std::string> perfective_passive_light_verbs;
    std::string perfective_stem;
    std::map<std::string, std::string> perfective_irregular;

    // Rule 5: imperatives.
    std::vector<std::string> imperative_suffixes;
    std::string imperative_added;

    // Rule 6: feminine perfectives.
    std::vector<std::string> feminine_suffixes;
    std::vector<std::string> feminine_skip_next;
    std::string feminine_passive_added;
    std::string feminine_added;

    // Entry cleaning.
    std::vector<std::string> stoplist;
    std::vector<std::string> optional_stoplist;

    static const InflectionRuleTable& builtin();
    static InflectionRuleTable load(const std::filesystem::path& path);
    static InflectionRuleTable from_json(const nlohmann::json& doc);
    nlohmann::json to_json() const;

    bool operator==(const InflectionRuleTable&) const = default;
};

struct CleanOptions {
    /// Also drop words conventionally kept in the matrix language.
    bool remove_optional_words = true;
};

/// Drop stopword entries and entries with tags outside the requested set
/// (nouns, adjectives, adverbs, conjunctions, interjections, verbs).
std::vector<WordEntry> clean_entries(std::vector<WordEntry> entries,
                                     const CleanOptions& options = {},
                                     const InflectionRuleTable& rules =
                                         InflectionRuleTable::builtin());

/// Split an inflected verb against its base form. Throws StemMismatch when
/// the base stem is not a prefix of the actual word.
SuffixAnalysis analyze_suffix(const std::string& matrix_word, const std::string& base_matrix);

/// The auxiliary word inserted after the English verb root, per the rule
/// table. Empty when nothing is added. Throws UnhandledSuffix for suffixes
/// outside every enumerated set.
std::string added_word(const SuffixAnalysis& analysis, VerbVoice voice,
                       const std::optional<std::string>& next_word, bool at_sentence_end,
                       const InflectionRuleTable& rules = InflectionRuleTable::builtin());

/// Like apply_plan, but each replaced verb contributes its English root
/// followed by the rule table's auxiliary.
std::string apply_hindi_inflection(const std::string& matrix_sentence,
                                   const ReplacementPlan& plan,
                                   const InflectionRuleTable& rules =
                                       InflectionRuleTable::builtin(),
                                   std::vector<std::string>* warnings = nullptr);

} // namespace codemix
