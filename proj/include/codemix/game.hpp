#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "codemix/core.hpp"
#include "codemix/providers.hpp"
#include "json.hpp"

namespace codemix {

/// Cross-language homonyms for one pair: words spelled identically in
/// English and the matrix language but used overwhelmingly as matrix words.
/// The mapped replacement is applied verbatim, before any language
/// identification.
struct HomonymDictionary {
    LanguagePair pair;
    std::map<std::string, std::string> entries; // lowercase token -> replacement

    std::optional<std::string> lookup(const std::string& token) const;

    static HomonymDictionary load(const std::filesystem::path& path);
    void save(const std::filesystem::path& path) const;

    /// Built-in seed dictionaries ("par" for en-hi, "soy" for en-es);
    /// other pairs start empty.
    static HomonymDictionary defaults_for(const LanguagePair& pair);
};

enum class GateMode { Strict, Lenient };

/// Which reconstruction the similarity is computed against. Reconstruction
/// is the default; FirstTranslation mirrors a pseudocode-compatible mode.
enum class SimilarityArg { Reconstruction, FirstTranslation };

enum class Gate { Ok, NonRoman, NotCodeMixed };

std::string to_string(Gate gate);

/// Every intermediate artifact of one evaluation.
struct GameTrace {
    NormalizedSentence reference;               // normalized reference
    NormalizedSentence candidate;               // normalized candidate
    std::string temp_translation;               // round-trip English used for tagging
    std::map<std::string, std::string> pos_map; // candidate tokens found in the round trip
    std::vector<std::string> first_translation; // tokens after word replacement
    std::string reconstruction;                 // English rebuilt from the candidate
    int english_detected = 0;                   // words identified as English
    double q = 0.0;                             // in [-1, 1]
    Gate gate = Gate::Ok;

    /// Score scaled to the 0-100 convention, rounded to 2 decimals.
    double display() const;
};

/// A provider failed mid-pipeline; carries the stage name and the partial
/// trace accumulated so far.
class EvaluationError : public ProviderError {
  public:
    EvaluationError(std::string stage, GameTrace trace, const std::string& cause)
        : ProviderError("evaluation failed at stage \"" + stage + "\": " + cause),
          stage_(std::move(stage)), trace_(std::move(trace)) {}

    const std::string& stage() const { return stage_; }
    const GameTrace& trace() const { return trace_; }

  private:
    std::string stage_;
    GameTrace trace_;
};

struct GameOptions {
    GateMode gate_mode = GateMode::Strict;
    SimilarityArg similarity_arg = SimilarityArg::Reconstruction;
};

/// Round-trip the candidate through the matrix language to English and tag
/// it; candidate tokens that reappear in the round trip get its tags.
struct PosTagAcquisition {
    std::string temp_translation;
    std::map<std::string, std::string> pos_map;
};

PosTagAcquisition acquire_pos_tags(const NormalizedSentence& candidate,
                                   const LanguagePair& pair, const ProviderSet& providers);

/// Token-by-token pass: homonyms map verbatim, detected English words are
/// translated into the matrix language (by tag when known), matrix words
/// pass through.
struct WordReplacement {
    std::vector<std::string> first_translation;
    int english_detected = 0;
};

WordReplacement replace_words(const NormalizedSentence& candidate,
                              const std::map<std::string, std::string>& pos_map,
                              const HomonymDictionary& homonyms, const LanguagePair& pair,
                              const ProviderSet& providers);

/// Join the replaced tokens and translate them back into English (through
/// the matrix script for non-Roman pairs); returns a normalized sentence.
std::string reconstruct(const std::vector<std::string>& first_translation,
                        const LanguagePair& pair, const ProviderSet& providers);

/// Full evaluation of a candidate against an English reference. Returns
/// the trace with q in [-1, 1]; gated traces carry q = 0.
GameTrace evaluate(const std::string& reference, const std::string& candidate,
                   const LanguagePair& pair, const ProviderSet& providers,
                   const HomonymDictionary& homonyms, const GameOptions& options = {});

/// The audit-trail document for one evaluation.
nlohmann::json trace_report(const GameTrace& trace);

} // namespace codemix
