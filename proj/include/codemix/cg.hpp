#pragma once

#include <string>
#include <vector>

#include "codemix/core.hpp"
#include "codemix/providers.hpp"
#include "codemix/vocab.hpp"
#include "json.hpp"

namespace codemix {

/// Code-mixing degree: the fraction of replaceable words switched to the
/// embedded language. Validated to [0, 1] at construction.
class CodeMixDegree {
  public:
    explicit CodeMixDegree(double value) : value_(value) {
        if (!(value >= 0.0 && value <= 1.0)) {
            throw Error("code-mixing degree must lie in [0,1], got " + std::to_string(value));
        }
    }

    double value() const { return value_; }

  private:
    double value_;
};

/// floor(cmd * n): the number of replacements the degree allows.
int replacement_budget(CodeMixDegree cmd, int n);

struct ScoredEntry {
    WordEntry entry;
    Score score;
    int position = 0; // index in the cleaned entry list (sentence order)
};

struct PlanDecision {
    WordEntry entry;
    Score score;
    int position = 0;
    int anchor = 0; // which occurrence of matrix_word this entry binds
    bool replace = false;
};

/// The ordered switch-point choices for one sentence. Decisions are sorted
/// by score descending (infinite first), ties by sentence position.
struct ReplacementPlan {
    std::vector<PlanDecision> decisions;
    int budget = 0;
    int n_replaced = 0;
};

/// Choose which entries to replace for the given degree. Every
/// infinite-score entry is replaced first, even beyond the budget; the rest
/// fill up the budget in descending score order.
ReplacementPlan plan_replacements(const std::vector<ScoredEntry>& entries, CodeMixDegree cmd);

/// Substitute each replaced entry's matrix word with its English word.
/// Matching is token-bounded: only whole words are replaced, and
/// punctuation attached to a token survives. Entries whose anchor cannot be
/// found are skipped with a warning.
std::string apply_plan(const std::string& matrix_sentence, const ReplacementPlan& plan,
                       std::vector<std::string>* warnings = nullptr);

// Anchor resolution shared by the plain applier and the Hindi verb rules.
enum class AnchorSide { MatrixWord, EnglishWord };

struct TokenSpan {
    size_t first = 0;
    size_t count = 0;
};

struct ResolvedAnchor {
    size_t decision_index = 0;
    TokenSpan span;
};

/// Map each replacing decision to a concrete token span. The k-th entry
/// naming a repeated word binds the k-th occurrence; when that occurrence
/// is taken or missing, the first unbound one is used; otherwise the entry
/// is skipped and a warning recorded.
std::vector<ResolvedAnchor> resolve_anchors(const std::vector<std::string>& tokens,
                                            const ReplacementPlan& plan, AnchorSide side,
                                            std::vector<std::string>* warnings = nullptr);

/// Rebuild a sentence with each anchored span's core text replaced; outer
/// punctuation of the span survives. Returns the sentence unchanged when
/// there are no anchors.
std::string substitute_spans(const std::string& sentence,
                             const std::vector<std::string>& tokens,
                             const std::vector<ResolvedAnchor>& anchors,
                             const std::vector<std::string>& replacements);

struct CodeMixedSentence {
    std::string text;
    LanguagePair pair;
    double cmd = 0.0;
    ReplacementPlan plan;
    std::string matrix_sentence;
    std::vector<std::string> warnings;
};

struct GenerateOptions {
    /// HindiSpecific switches base creation to the verb-aware prompt and
    /// applies the inflection rules.
    BaseCreationMode mode = BaseCreationMode::Generic;
    /// Score every entry as infinite instead of consulting a vocabulary;
    /// any nonzero degree then replaces everything.
    bool no_vocab = false;
    /// Count the English lemma instead of the surface word when scoring.
    bool score_base_form = false;
};

/// Full generation pipeline: base creation, cleaning, scoring, planning,
/// replacement, and romanization of non-Roman output.
CodeMixedSentence generate(const std::string& english, const LanguagePair& pair,
                           CodeMixDegree cmd, const FrequencyVocab& vocab,
                           const ProviderSet& providers, const GenerateOptions& options = {});

/// Variant with English as the matrix language: matrix-language words
/// (their most frequent Roman spelling) replace English words, lowest
/// scores first.
CodeMixedSentence generate_english_matrix(const std::string& english, const LanguagePair& pair,
                                          CodeMixDegree cmd, const FrequencyVocab& vocab,
                                          const ProviderSet& providers,
                                          const GenerateOptions& options = {});

/// Tag filter for base-creation output: nouns, adjectives, adverbs,
/// coordinating conjunctions, interjections; verbs too when requested.
bool tag_allowed(std::string_view pos_tag, bool include_verbs);
std::vector<WordEntry> filter_entries_by_tag(std::vector<WordEntry> entries, bool include_verbs);

/// The spelling variant with the highest corpus count (first listed wins
/// ties), used when embedding matrix words into English text.
std::string best_variant(const WordEntry& entry, const FrequencyVocab& vocab);

/// Audit record for one generation: input, degree, matrix sentence, every
/// decision with its score, output text, warnings.
nlohmann::json generation_report(const std::string& input, const CodeMixedSentence& result);

} // namespace codemix
