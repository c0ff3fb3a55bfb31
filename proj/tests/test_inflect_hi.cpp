#include "codemix/inflect_hi.hpp"

#include <filesystem>

#include "doctest.h"

using namespace codemix;

namespace {

WordEntry verb_entry(std::string eng, std::string base_eng, std::string matrix_word,
                     std::string base_matrix, VerbVoice voice) {
    WordEntry e;
    e.eng = std::move(eng);
    e.base_eng = std::move(base_eng);
    e.pos_tag = "VB";
    e.matrix_word = std::move(matrix_word);
    e.base_matrix = std::move(base_matrix);
    e.verb_voice = voice;
    e.roman_variants = {"v1", "v2", "v3"};
    return e;
}

WordEntry noun_entry(std::string eng, std::string matrix_word) {
    WordEntry e;
    e.eng = std::move(eng);
    e.base_eng = e.eng;
    e.pos_tag = "NN";
    e.matrix_word = std::move(matrix_word);
    e.roman_variants = {"v1", "v2", "v3"};
    return e;
}

ReplacementPlan plan_for(std::vector<WordEntry> entries) {
    std::vector<ScoredEntry> scored;
    for (size_t i = 0; i < entries.size(); ++i) {
        scored.push_back({entries[i], Score::infinite(), static_cast<int>(i)});
    }
    return plan_replacements(scored, CodeMixDegree(1.0));
}

std::string added(const char* word, const char* base, VerbVoice voice,
                  std::optional<std::string> next = std::nullopt, bool at_end = false) {
    return added_word(analyze_suffix(word, base), voice, next, at_end);
}

} // namespace

TEST_CASE("cleaning removes auxiliaries and disallowed tags") {
    std::vector<WordEntry> entries;
    entries.push_back(noun_entry("was", "था"));
    entries.push_back(noun_entry("questions", "प्रश्न"));
    entries.push_back(noun_entry("said", "कहा"));
    entries.push_back(noun_entry("from", "से"));
    entries.back().pos_tag = "IN";
    entries.push_back(verb_entry("plays", "play", "खेलता", "खेलना", VerbVoice::Active));

    const std::vector<WordEntry> cleaned = clean_entries(entries);
    REQUIRE(cleaned.size() == 2);
    CHECK(cleaned[0].eng == "questions");
    CHECK(cleaned[1].eng == "plays");

    const std::vector<WordEntry> keep_optional =
        clean_entries(entries, {.remove_optional_words = false});
    REQUIRE(keep_optional.size() == 3);
    CHECK(keep_optional[1].eng == "said");

    // Case-insensitive stoplist match.
    std::vector<WordEntry> cased = {noun_entry("Was", "था"), noun_entry("This", "यह")};
    CHECK(clean_entries(cased).empty());
}

TEST_CASE("suffix analysis splits word against base form") {
    const SuffixAnalysis plays = analyze_suffix("खेलता", "खेलना");
    CHECK(plays.base_ends_na);
    CHECK(plays.stem == "खेल");
    CHECK(plays.suffix == "ता");

    const SuffixAnalysis infinitive = analyze_suffix("खेलना", "खेलना");
    CHECK(infinitive.suffix == "ना");

    const SuffixAnalysis oblique = analyze_suffix("बदलने", "बदलना");
    CHECK(oblique.stem == "बदल");
    CHECK(oblique.suffix == "ने");

    const SuffixAnalysis imperative = analyze_suffix("चुनें", "चुनना");
    CHECK(imperative.suffix == "ें");

    // Base without the infinitive marker: treated as a plain replacement.
    CHECK_FALSE(analyze_suffix("सुंदर", "सुंदर").base_ends_na);

    CHECK_THROWS_AS(analyze_suffix("खाता", "खेलना"), StemMismatch);
    CHECK_THROWS_AS(analyze_suffix("", "खेलना"), EmptyInput);
}

TEST_CASE("rule 1: infinitive forms add the auxiliary only at a clause end") {
    CHECK(added("करना", "करना", VerbVoice::Active) == "");
    CHECK(added("उलटना", "उलटना", VerbVoice::Active, std::nullopt, true) == "करना");
    CHECK(added("उलटना", "उलटना", VerbVoice::Active, "और") == "करना");
    CHECK(added("उलटना", "उलटना", VerbVoice::Active, "।") == "करना");
    CHECK(added("उलटना", "उलटना", VerbVoice::Active, "के") == "");
}

TEST_CASE("rule 2: participle suffixes pair with a light verb") {
    CHECK(added("खेलता", "खेलना", VerbVoice::Active) == "करता");
    CHECK(added("खेलती", "खेलना", VerbVoice::Active) == "करती");
    CHECK(added("खेलते", "खेलना", VerbVoice::Active) == "करते");
    CHECK(added("बदलने", "बदलना", VerbVoice::Passive) == "होने");
    CHECK(added("बदलने", "बदलना", VerbVoice::Active) == "करने");
    CHECK(added("बदलनी", "बदलना", VerbVoice::Passive) == "होनी");
    // The bare-suffix subcase appends nothing after the passive stem.
    CHECK(added("खेलो", "खेलना", VerbVoice::Passive) == "हो");
    CHECK(added("खेलो", "खेलना", VerbVoice::Active) == "करो");
}

TEST_CASE("rule 3: no suffix adds the bare light verb unless already present") {
    CHECK(added("बदल", "बदलना", VerbVoice::Active) == "कर");
    for (const char* next : {"कर", "करें", "करता", "करती", "करते", "करो", "हुआ", "हुए", "हुई"}) {
        CHECK(added("बदल", "बदलना", VerbVoice::Active, next) == "");
    }
    CHECK(added("बदल", "बदलना", VerbVoice::Active, "कुछ") == "कर");
}

TEST_CASE("rule 4: perfective suffixes") {
    // Already followed by a perfect auxiliary: nothing is added.
    CHECK(added("बदला", "बदलना", VerbVoice::Active, "हुआ") == "");
    CHECK(added("बदले", "बदलना", VerbVoice::Passive, "हुए") == "");
    // Passive forms take the perfect auxiliary...
    CHECK(added("बदला", "बदलना", VerbVoice::Passive) == "हुआ");
    CHECK(added("बदले", "बदलना", VerbVoice::Passive) == "हुए");
    CHECK(added("बदलया", "बदलना", VerbVoice::Passive) == "हुआ");
    // ...except before a light verb, where the transitive stem is used.
    CHECK(added("बदला", "बदलना", VerbVoice::Passive, "गया") == "किया");
    CHECK(added("बदलया", "बदलना", VerbVoice::Passive, "गई") == "किया");
    CHECK(added("बदले", "बदलना", VerbVoice::Passive, "गए") == "किये");
    // Active perfectives always take the transitive stem.
    CHECK(added("बदला", "बदलना", VerbVoice::Active) == "किया");
    CHECK(added("बदले", "बदलना", VerbVoice::Active) == "किये");
    CHECK(added("बदलया", "बदलना", VerbVoice::Active) == "किया");
}

TEST_CASE("rule 5: imperative suffixes, including the anusvara forms") {
    CHECK(added("चुनें", "चुनना", VerbVoice::Active) == "करें");
    CHECK(added("बदलए", "बदलना", VerbVoice::Active) == "करें");
    CHECK(added("बदलएं", "बदलना", VerbVoice::Passive) == "करें");
}

TEST_CASE("rule 6: feminine perfective suffixes") {
    CHECK(added("बदली", "बदलना", VerbVoice::Active) == "की");
    CHECK(added("बदली", "बदलना", VerbVoice::Passive) == "हुई");
    CHECK(added("बदली", "बदलना", VerbVoice::Active, "हुई") == "");
    CHECK(added("बदली", "बदलना", VerbVoice::Active, "की") == "");
    CHECK(added("बदलई", "बदलना", VerbVoice::Passive) == "हुई");
}

TEST_CASE("suffixes outside every rule set raise UnhandledSuffix") {
    SuffixAnalysis odd;
    odd.base_ends_na = true;
    odd.stem = "खेल";
    odd.suffix = "xyz";
    CHECK_THROWS_AS(added_word(odd, VerbVoice::Active, std::nullopt, false), UnhandledSuffix);
}

TEST_CASE("rule table is total over the enumerated grid") {
    const InflectionRuleTable& rules = InflectionRuleTable::builtin();
    std::vector<std::string> suffixes;
    suffixes.insert(suffixes.end(), rules.infinitive_suffixes.begin(),
                    rules.infinitive_suffixes.end());
    suffixes.insert(suffixes.end(), rules.participle_suffixes.begin(),
                    rules.participle_suffixes.end());
    suffixes.push_back("");
    suffixes.insert(suffixes.end(), rules.perfective_suffixes.begin(),
                    rules.perfective_suffixes.end());
    suffixes.insert(suffixes.end(), rules.imperative_suffixes.begin(),
                    rules.imperative_suffixes.end());
    suffixes.insert(suffixes.end(), rules.feminine_suffixes.begin(),
                    rules.feminine_suffixes.end());

    std::vector<std::optional<std::string>> next_words = {std::nullopt,
                                                          std::string("कुछ")};
    for (const auto& list :
         {rules.clause_end_markers, rules.bare_skip_next, rules.perfective_skip_next,
          rules.perfective_passive_light_verbs, rules.feminine_skip_next}) {
        for (const std::string& w : list) next_words.emplace_back(w);
    }

    size_t cases = 0;
    for (const std::string& suffix : suffixes) {
        for (VerbVoice voice : {VerbVoice::Active, VerbVoice::Passive}) {
            for (const auto& next : next_words) {
                for (bool at_end : {false, true}) {
                    SuffixAnalysis analysis;
                    analysis.base_ends_na = true;
                    analysis.stem = "खेल";
                    analysis.suffix = suffix;
                    CHECK_NOTHROW(added_word(analysis, voice, next, at_end));
                    ++cases;
                }
            }
        }
    }
    CHECK(cases > 500);
}

TEST_CASE("inflection applies the light verb after the English root") {
    std::vector<WordEntry> entries = {
        verb_entry("plays", "play", "खेलता", "खेलना", VerbVoice::Active)};
    const std::string out = apply_hindi_inflection("वह खेलता है", plan_for(entries));
    CHECK(out == "वह play करता है");
}

TEST_CASE("the full invert/select sentence") {
    std::vector<WordEntry> entries = {
        verb_entry("Select", "select", "चुनें", "चुनना", VerbVoice::Active),
        noun_entry("Line", "रेखा"),
        verb_entry("invert", "invert", "उलटने", "उलटना", VerbVoice::Active),
    };
    const std::string out =
        apply_hindi_inflection("रेखा को उलटने के लिए चुनें", plan_for(entries));
    CHECK(out == "Line को invert करने के लिए select करें");
}

TEST_CASE("plans without verbs match the plain applier") {
    std::vector<WordEntry> entries = {noun_entry("questions", "प्रश्न"),
                                      noun_entry("types", "प्रकार")};
    const ReplacementPlan plan = plan_for(entries);
    const std::string sentence = "प्रश्न चार प्रकार के होते हैं";
    CHECK(apply_hindi_inflection(sentence, plan) == apply_plan(sentence, plan));
}

TEST_CASE("inflection is idempotent on its own output") {
    std::vector<WordEntry> entries = {
        verb_entry("plays", "play", "खेलता", "खेलना", VerbVoice::Active)};
    const ReplacementPlan plan = plan_for(entries);
    const std::string once = apply_hindi_inflection("वह खेलता है", plan);
    std::vector<std::string> warnings;
    CHECK(apply_hindi_inflection(once, plan, InflectionRuleTable::builtin(), &warnings) == once);
}

TEST_CASE("verbs at the sentence end see the clause boundary") {
    std::vector<WordEntry> entries = {
        verb_entry("invert", "invert", "उलटना", "उलटना", VerbVoice::Active)};
    CHECK(apply_hindi_inflection("रेखा को उलटना", plan_for(entries)) ==
          "रेखा को invert करना");
    CHECK(apply_hindi_inflection("रेखा को उलटना।", plan_for(entries)) ==
          "रेखा को invert करना।");
    CHECK(apply_hindi_inflection("रेखा को उलटना है", plan_for(entries)) ==
          "रेखा को invert है");
}

TEST_CASE("unhandled suffixes degrade to a bare replacement with a warning") {
    std::vector<WordEntry> entries = {
        verb_entry("jumps", "jump", "खेलxyz", "खेलना", VerbVoice::Active)};
    std::vector<std::string> warnings;
    const std::string out = apply_hindi_inflection("वह खेलxyz है", plan_for(entries),
                                                   InflectionRuleTable::builtin(), &warnings);
    CHECK(out == "वह jump है");
    REQUIRE_FALSE(warnings.empty());
}

TEST_CASE("the shipped rule table matches the builtin") {
    const auto path = std::filesystem::path(CODEMIX_REPO_DATA_DIR) /
                      "hindi_inflection_rules.json";
    const InflectionRuleTable loaded = InflectionRuleTable::load(path);
    CHECK(loaded == InflectionRuleTable::builtin());
}

TEST_CASE("rule table JSON round trip") {
    const InflectionRuleTable& rules = InflectionRuleTable::builtin();
    CHECK(InflectionRuleTable::from_json(rules.to_json()) == rules);
}
