#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "codemix/cg.hpp"
#include "codemix/dataset.hpp"
#include "codemix/game.hpp"
#include "codemix/metrics.hpp"
#include "codemix/provider_factory.hpp"
#include "codemix/vocab.hpp"

namespace {

using codemix::CodeMixDegree;
using codemix::LanguagePair;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitPartial = 1;
constexpr int kExitUsage = 2;

std::string fmt2(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", value);
    return buf;
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw codemix::IoError("cannot open input file: " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) lines.push_back(line);
    }
    return lines;
}

/// Parse "--cmd" values: a single degree or a sweep "a:b:step" (an optional
/// "sweep " prefix is accepted).
std::vector<double> parse_cmd_values(std::string spec) {
    if (spec.rfind("sweep ", 0) == 0) spec = spec.substr(6);
    if (spec.rfind("sweep:", 0) == 0) spec = spec.substr(6);
    auto parse_double = [](const std::string& text) {
        try {
            size_t used = 0;
            const double value = std::stod(text, &used);
            if (used != text.size()) throw std::invalid_argument(text);
            return value;
        } catch (const std::exception&) {
            throw codemix::FormatError("not a number in --cmd: \"" + text + "\"");
        }
    };
    std::vector<double> values;
    if (spec.find(':') == std::string::npos) {
        values.push_back(parse_double(spec));
        return values;
    }
    std::istringstream in(spec);
    std::string part;
    std::vector<double> parts;
    while (std::getline(in, part, ':')) parts.push_back(parse_double(part));
    if (parts.size() != 3 || parts[2] <= 0.0) {
        throw codemix::FormatError("sweep must be start:stop:step with a positive step");
    }
    for (double v = parts[0]; v <= parts[1] + 1e-9; v += parts[2]) {
        values.push_back(std::min(std::max(v, 0.0), 1.0));
    }
    return values;
}

/// Run fn(0..count-1) on a bounded worker pool. fn must not throw.
void run_indexed(size_t count, int workers, const std::function<void(size_t)>& fn) {
    if (workers < 1) workers = 1;
    std::atomic<size_t> next{0};
    auto work = [&] {
        for (size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < workers && static_cast<size_t>(w) < count; ++w) {
        pool.emplace_back(work);
    }
    work();
    for (auto& t : pool) t.join();
}

struct ProviderArgs {
    std::string config_path;
    std::string cache_path;
    std::string mode = "replay";

    codemix::ProviderSet make(const LanguagePair& pair) const {
        codemix::ProviderConfig config = codemix::ProviderConfig::load(config_path);
        std::optional<std::filesystem::path> cache;
        if (!cache_path.empty()) cache = cache_path;
        return codemix::make_providers(config, pair, codemix::run_mode_from_string(mode), cache);
    }
};

void add_provider_options(CLI::App* cmd, ProviderArgs& args) {
    cmd->add_option("--providers", args.config_path, "provider config JSON")->required();
    cmd->add_option("--cache", args.cache_path,
                    "record/replay cache file (JSONL); required unless --mode live");
    cmd->add_option("--mode", args.mode, "record | replay | live")
        ->check(CLI::IsMember({"record", "replay", "live"}))
        ->capture_default_str();
}

// ---------------------------------------------------------------------------
// vocab build
// ---------------------------------------------------------------------------

int cmd_vocab_build(const std::string& corpus_path, const std::string& pair_code,
                    const std::string& out_path) {
    const LanguagePair pair = LanguagePair::parse(pair_code);
    std::ifstream corpus(corpus_path, std::ios::binary);
    if (!corpus) {
        std::cerr << "error: cannot open corpus: " << corpus_path << "\n";
        return kExitUsage;
    }
    codemix::VocabBuildStats stats;
    codemix::FrequencyVocab vocab = codemix::build_vocab(corpus, pair, &stats);
    codemix::save_vocab(vocab, out_path);
    std::cout << "tokens: " << vocab.total_tokens << "\n";
    std::cout << "types: " << vocab.counts.size() << "\n";
    if (stats.skipped_non_utf8 > 0) {
        std::cout << "skipped non-utf8 lines: " << stats.skipped_non_utf8 << "\n";
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// generate
// ---------------------------------------------------------------------------

struct GenerateRow {
    bool ok = false;
    std::string text;
    std::string error;
    json report;
};

int cmd_generate(const std::string& input_path, const std::string& pair_code,
                 const std::string& cmd_spec, const std::string& vocab_path,
                 const std::string& matrix, bool hindi_rules, bool no_vocab,
                 const ProviderArgs& provider_args, const std::string& report_path,
                 int workers, bool strict) {
    const LanguagePair pair = LanguagePair::parse(pair_code);
    const std::vector<double> cmd_values = parse_cmd_values(cmd_spec);
    const std::vector<std::string> sentences = read_lines(input_path);

    codemix::FrequencyVocab vocab;
    vocab.pair = pair;
    if (!no_vocab) {
        if (vocab_path.empty()) {
            std::cerr << "error: --vocab is required unless --no-vocab is set\n";
            return kExitUsage;
        }
        vocab = codemix::load_vocab(vocab_path);
    }
    const codemix::ProviderSet providers = provider_args.make(pair);

    codemix::GenerateOptions options;
    options.mode = hindi_rules ? codemix::BaseCreationMode::HindiSpecific
                               : codemix::BaseCreationMode::Generic;
    options.no_vocab = no_vocab;
    const bool english_matrix = matrix == "en";

    struct Job {
        size_t sentence;
        double cmd;
    };
    std::vector<Job> jobs;
    for (size_t s = 0; s < sentences.size(); ++s) {
        for (double value : cmd_values) jobs.push_back({s, value});
    }
    std::vector<GenerateRow> rows(jobs.size());

    run_indexed(jobs.size(), workers, [&](size_t i) {
        GenerateRow& row = rows[i];
        const std::string& english = sentences[jobs[i].sentence];
        try {
            const CodeMixDegree cmd(jobs[i].cmd);
            const codemix::CodeMixedSentence result =
                english_matrix
                    ? codemix::generate_english_matrix(english, pair, cmd, vocab, providers,
                                                       options)
                    : codemix::generate(english, pair, cmd, vocab, providers, options);
            row.ok = true;
            row.text = result.text;
            row.report = codemix::generation_report(english, result);
        } catch (const std::exception& e) {
            row.error = e.what();
            row.report = {{"input", english}, {"cmd", jobs[i].cmd}, {"error", row.error}};
        }
    });

    std::ofstream report;
    if (!report_path.empty()) {
        report.open(report_path, std::ios::binary | std::ios::trunc);
        if (!report) {
            std::cerr << "error: cannot open report file: " << report_path << "\n";
            return kExitUsage;
        }
    }
    size_t failed = 0;
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].ok) {
            std::cout << rows[i].text << "\n";
        } else {
            ++failed;
            std::cout << "skipped: " << rows[i].error << "\n";
        }
        if (report.is_open()) report << rows[i].report.dump() << "\n";
    }
    if (failed > 0) {
        std::cerr << failed << " of " << rows.size() << " generations failed\n";
        if (strict) return kExitPartial;
    }
    return failed > 0 ? kExitPartial : kExitOk;
}

// ---------------------------------------------------------------------------
// evaluate
// ---------------------------------------------------------------------------

struct EvaluateRow {
    bool ok = false;
    double display = 0.0;
    std::string error;
    json trace;
};

int cmd_evaluate(const std::string& pairs_path, const std::string& pair_code,
                 const ProviderArgs& provider_args, const std::string& gate,
                 const std::string& similarity_arg, const std::string& homonyms_path,
                 const std::string& trace_path, int workers, bool strict) {
    const LanguagePair pair = LanguagePair::parse(pair_code);
    const codemix::ProviderSet providers = provider_args.make(pair);
    const codemix::HomonymDictionary homonyms =
        homonyms_path.empty() ? codemix::HomonymDictionary::defaults_for(pair)
                              : codemix::HomonymDictionary::load(homonyms_path);

    codemix::GameOptions options;
    options.gate_mode =
        gate == "lenient" ? codemix::GateMode::Lenient : codemix::GateMode::Strict;
    options.similarity_arg = similarity_arg == "first_translation"
                                 ? codemix::SimilarityArg::FirstTranslation
                                 : codemix::SimilarityArg::Reconstruction;

    struct Row {
        std::string reference;
        std::string candidate;
    };
    std::vector<Row> inputs;
    {
        std::ifstream in(pairs_path, std::ios::binary);
        if (!in) {
            std::cerr << "error: cannot open pairs file: " << pairs_path << "\n";
            return kExitUsage;
        }
        std::string line;
        while (std::getline(in, line)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            const json doc = json::parse(line);
            inputs.push_back(
                {doc.at("reference").get<std::string>(), doc.at("candidate").get<std::string>()});
        }
    }

    std::vector<EvaluateRow> rows(inputs.size());
    run_indexed(inputs.size(), workers, [&](size_t i) {
        EvaluateRow& row = rows[i];
        try {
            const codemix::GameTrace trace = codemix::evaluate(
                inputs[i].reference, inputs[i].candidate, pair, providers, homonyms, options);
            row.ok = true;
            row.display = trace.display();
            row.trace = codemix::trace_report(trace);
        } catch (const codemix::EvaluationError& e) {
            row.error = e.what();
            row.trace = codemix::trace_report(e.trace());
            row.trace["skipped_at"] = e.stage();
        } catch (const std::exception& e) {
            row.error = e.what();
            row.trace = {{"error", row.error}};
        }
    });

    std::ofstream trace_out;
    if (!trace_path.empty()) {
        trace_out.open(trace_path, std::ios::binary | std::ios::trunc);
        if (!trace_out) {
            std::cerr << "error: cannot open trace file: " << trace_path << "\n";
            return kExitUsage;
        }
    }
    size_t skipped = 0;
    double sum = 0.0;
    for (const EvaluateRow& row : rows) {
        if (row.ok) {
            std::cout << fmt2(row.display) << "\n";
            sum += row.display;
        } else {
            ++skipped;
            std::cout << "skipped: " << row.error << "\n";
        }
        if (trace_out.is_open()) trace_out << row.trace.dump() << "\n";
    }
    const size_t scored = rows.size() - skipped;
    std::cout << "mean: " << (scored > 0 ? fmt2(sum / static_cast<double>(scored)) : "n/a")
              << " (" << scored << " scored, " << skipped << " skipped)\n";
    if (skipped > 0 && strict) return kExitPartial;
    return skipped > 0 ? kExitPartial : kExitOk;
}

// ---------------------------------------------------------------------------
// compare
// ---------------------------------------------------------------------------

int cmd_compare(const std::string& groups_path, const std::string& pair_code,
                const std::string& metrics_csv, const ProviderArgs& provider_args,
                const std::string& gate, const std::string& smoothing_name, int workers) {
    const LanguagePair pair = LanguagePair::parse(pair_code);

    std::vector<std::string> metrics;
    {
        std::istringstream in(metrics_csv);
        std::string name;
        while (std::getline(in, name, ',')) {
            if (name != "game" && name != "bleu") {
                std::cerr << "error: unknown metric \"" << name << "\"\n";
                return kExitUsage;
            }
            metrics.push_back(name);
        }
    }
    codemix::Smoothing smoothing = codemix::Smoothing::Add1;
    if (smoothing_name == "none") smoothing = codemix::Smoothing::None;
    if (smoothing_name == "epsilon") smoothing = codemix::Smoothing::Epsilon;

    struct Group {
        std::string english;
        std::vector<std::string> variants;
        std::vector<std::string> references;
    };
    std::vector<Group> groups;
    {
        std::ifstream in(groups_path, std::ios::binary);
        if (!in) {
            std::cerr << "error: cannot open groups file: " << groups_path << "\n";
            return kExitUsage;
        }
        std::string line;
        while (std::getline(in, line)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            const json doc = json::parse(line);
            Group group;
            group.english = doc.at("english").get<std::string>();
            group.variants = doc.at("variants").get<std::vector<std::string>>();
            group.references = doc.value("references", std::vector<std::string>());
            if (group.variants.empty()) continue;
            groups.push_back(std::move(group));
        }
    }

    const bool want_game =
        std::find(metrics.begin(), metrics.end(), "game") != metrics.end();
    const bool want_bleu =
        std::find(metrics.begin(), metrics.end(), "bleu") != metrics.end();

    std::map<std::string, std::vector<std::vector<double>>> scores;
    size_t skipped = 0;

    if (want_game) {
        const codemix::ProviderSet providers = provider_args.make(pair);
        const codemix::HomonymDictionary homonyms =
            codemix::HomonymDictionary::defaults_for(pair);
        codemix::GameOptions options;
        options.gate_mode =
            gate == "lenient" ? codemix::GateMode::Lenient : codemix::GateMode::Strict;

        struct Job {
            size_t group;
            size_t variant;
        };
        std::vector<Job> jobs;
        for (size_t g = 0; g < groups.size(); ++g) {
            for (size_t v = 0; v < groups[g].variants.size(); ++v) jobs.push_back({g, v});
        }
        std::vector<std::optional<double>> results(jobs.size());
        std::vector<std::string> errors(jobs.size());
        run_indexed(jobs.size(), workers, [&](size_t i) {
            try {
                const codemix::GameTrace trace =
                    codemix::evaluate(groups[jobs[i].group].english,
                                      groups[jobs[i].group].variants[jobs[i].variant], pair,
                                      providers, homonyms, options);
                results[i] = trace.display();
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        });
        auto& game_groups = scores["game"];
        game_groups.resize(groups.size());
        for (size_t i = 0; i < jobs.size(); ++i) {
            if (results[i]) {
                game_groups[jobs[i].group].push_back(*results[i]);
            } else {
                ++skipped;
                std::cerr << "skipped variant (game): " << errors[i] << "\n";
            }
        }
    }

    if (want_bleu) {
        auto& bleu_groups = scores["bleu"];
        bleu_groups.resize(groups.size());
        for (size_t g = 0; g < groups.size(); ++g) {
            std::vector<std::vector<std::string>> reference_tokens;
            for (const std::string& ref : groups[g].references) {
                reference_tokens.push_back(codemix::preprocess(ref).tokens);
            }
            if (reference_tokens.empty()) {
                std::cerr << "skipped group " << g << " (bleu): no references\n";
                ++skipped;
                continue;
            }
            for (const std::string& variant : groups[g].variants) {
                const std::vector<std::string> hyp = codemix::preprocess(variant).tokens;
                double best = 0.0;
                for (const auto& ref : reference_tokens) {
                    best = std::max(best,
                                    codemix::sentence_bleu(ref, hyp, smoothing).value);
                }
                bleu_groups[g].push_back(best * 100.0);
            }
        }
    }

    // Drop groups with fewer than one score and align output.
    std::map<std::string, std::vector<std::vector<double>>> aligned;
    for (auto& [metric, metric_groups] : scores) {
        for (auto& group : metric_groups) {
            if (!group.empty()) aligned[metric].push_back(group);
        }
    }
    const std::vector<codemix::MetricReport> reports = codemix::compare_metrics(aligned);

    for (const std::string& metric : metrics) {
        for (const codemix::MetricReport& report : reports) {
            if (report.metric != metric) continue;
            std::cout << metric << ": average stddev " << fmt2(report.average_stddev)
                      << ", average score " << fmt2(report.average_score) << " over "
                      << report.groups.size() << " groups\n";
            for (size_t g = 0; g < report.groups.size(); ++g) {
                std::cout << "  group " << g << ": stddev " << fmt2(report.groups[g].stddev)
                          << ", mean " << fmt2(report.groups[g].mean) << " ("
                          << report.groups[g].scores.size() << " variants)\n";
            }
        }
    }
    return skipped > 0 ? kExitPartial : kExitOk;
}

// ---------------------------------------------------------------------------
// dataset validate / stats
// ---------------------------------------------------------------------------

int cmd_dataset(const std::string& file, bool stats_only) {
    std::ifstream in(file, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot open dataset: " << file << "\n";
        return kExitUsage;
    }
    std::vector<codemix::DatasetViolation> violations;
    const std::vector<codemix::DatasetRecord> records = codemix::load_dataset(in, &violations);
    if (stats_only) {
        const codemix::DatasetStats stats = codemix::dataset_stats(records);
        for (const auto& [pair, count] : stats.per_pair) {
            std::cout << pair << ": " << count << "\n";
        }
        std::cout << "total: " << stats.total << "\n";
        std::cout << "duplicates: " << stats.duplicates << "\n";
        if (!violations.empty()) {
            std::cout << "invalid records: " << violations.size() << "\n";
        }
        return kExitOk;
    }
    for (const auto& violation : violations) {
        std::cout << "line " << violation.line << ": " << violation.message << "\n";
    }
    std::cout << records.size() << " valid records, " << violations.size() << " violations\n";
    return violations.empty() ? kExitOk : kExitPartial;
}

// ---------------------------------------------------------------------------
// cache stats
// ---------------------------------------------------------------------------

int cmd_cache_stats(const std::string& file) {
    auto store = codemix::RecordStore::open_replay(file);
    std::map<std::string, size_t> per_provider;
    for (const codemix::ProviderRecord& record : store->records()) {
        ++per_provider[record.provider_id];
    }
    for (const auto& [provider, count] : per_provider) {
        std::cout << provider << ": " << count << "\n";
    }
    std::cout << "total: " << store->size() << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Code-mixed sentence generation and reference-free evaluation"};
    app.require_subcommand(1);

    // vocab build
    auto* vocab_cmd = app.add_subcommand("vocab", "frequency vocabulary tools");
    auto* vocab_build = vocab_cmd->add_subcommand("build", "count tokens in a corpus");
    std::string corpus_path, vocab_pair, vocab_out;
    vocab_build->add_option("--corpus", corpus_path, "one utterance per line")->required();
    vocab_build->add_option("--pair", vocab_pair, "language pair, e.g. en-hi")->required();
    vocab_build->add_option("--out", vocab_out, "output vocab file")->required();

    // generate
    auto* generate = app.add_subcommand("generate", "controlled code-mixed generation");
    std::string gen_input, gen_pair, gen_cmd, gen_vocab, gen_matrix = "x", gen_report;
    bool gen_hindi_rules = false, gen_no_vocab = false, gen_strict = false;
    int gen_workers = 4;
    ProviderArgs gen_providers;
    generate->add_option("--input", gen_input, "file with one English sentence per line")
        ->required();
    generate->add_option("--pair", gen_pair, "language pair, e.g. en-hi")->required();
    generate->add_option("--cmd", gen_cmd, "degree in [0,1], or sweep start:stop:step")
        ->required();
    generate->add_option("--vocab", gen_vocab, "frequency vocab file");
    generate->add_option("--matrix", gen_matrix,
                         "\"en\" switches to the English-as-matrix variant");
    generate->add_flag("--hindi-rules", gen_hindi_rules,
                       "verb-aware base creation and inflection rules (en-hi)");
    generate->add_flag("--no-vocab", gen_no_vocab,
                       "score every entry as infinite (no corpus available)");
    generate->add_option("--report", gen_report, "write per-generation JSONL report");
    generate->add_option("--workers", gen_workers, "worker pool size")->capture_default_str();
    generate->add_flag("--strict", gen_strict, "abort on the first failed sentence");
    add_provider_options(generate, gen_providers);

    // evaluate
    auto* evaluate = app.add_subcommand("evaluate", "score candidates against references");
    std::string eval_pairs, eval_pair, eval_gate = "strict", eval_sim = "reconstruction";
    std::string eval_homonyms, eval_trace;
    bool eval_strict = false;
    int eval_workers = 4;
    ProviderArgs eval_providers;
    evaluate->add_option("--pairs", eval_pairs, "JSONL of {reference, candidate}")->required();
    evaluate->add_option("--pair", eval_pair, "language pair, e.g. en-hi")->required();
    evaluate->add_option("--gate", eval_gate, "strict | lenient")
        ->check(CLI::IsMember({"strict", "lenient"}))
        ->capture_default_str();
    evaluate
        ->add_option("--similarity-arg", eval_sim,
                     "reconstruction | first_translation")
        ->check(CLI::IsMember({"reconstruction", "first_translation"}))
        ->capture_default_str();
    evaluate->add_option("--homonyms", eval_homonyms, "homonym dictionary JSON");
    evaluate->add_option("--trace", eval_trace, "write per-row JSONL traces");
    evaluate->add_option("--workers", eval_workers, "worker pool size")->capture_default_str();
    evaluate->add_flag("--strict", eval_strict, "exit nonzero when any row was skipped");
    add_provider_options(evaluate, eval_providers);

    // compare
    auto* compare = app.add_subcommand("compare", "metric robustness over variant groups");
    std::string cmp_groups, cmp_pair, cmp_metrics = "game,bleu", cmp_gate = "strict";
    std::string cmp_smoothing = "add1";
    int cmp_workers = 4;
    ProviderArgs cmp_providers;
    compare->add_option("--groups", cmp_groups, "JSONL of {english, variants, references}")
        ->required();
    compare->add_option("--pair", cmp_pair, "language pair, e.g. en-hi")->required();
    compare->add_option("--metrics", cmp_metrics, "comma list of game,bleu")
        ->capture_default_str();
    compare->add_option("--gate", cmp_gate, "strict | lenient")
        ->check(CLI::IsMember({"strict", "lenient"}))
        ->capture_default_str();
    compare->add_option("--smoothing", cmp_smoothing, "none | add1 | epsilon")
        ->check(CLI::IsMember({"none", "add1", "epsilon"}))
        ->capture_default_str();
    compare->add_option("--workers", cmp_workers, "worker pool size")->capture_default_str();
    add_provider_options(compare, cmp_providers);

    // dataset
    auto* dataset = app.add_subcommand("dataset", "dataset validation and statistics");
    auto* dataset_validate = dataset->add_subcommand("validate", "schema-check a dataset");
    auto* dataset_stats = dataset->add_subcommand("stats", "per-pair counts and duplicates");
    std::string dataset_file_validate, dataset_file_stats;
    dataset_validate->add_option("--file", dataset_file_validate, "JSONL dataset")->required();
    dataset_stats->add_option("--file", dataset_file_stats, "JSONL dataset")->required();

    // cache
    auto* cache = app.add_subcommand("cache", "provider cache management");
    auto* cache_stats = cache->add_subcommand("stats", "per-provider record counts");
    std::string cache_file;
    cache_stats->add_option("--file", cache_file, "cache file (JSONL)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (vocab_build->parsed()) return cmd_vocab_build(corpus_path, vocab_pair, vocab_out);
        if (generate->parsed()) {
            return cmd_generate(gen_input, gen_pair, gen_cmd, gen_vocab, gen_matrix,
                                gen_hindi_rules, gen_no_vocab, gen_providers, gen_report,
                                gen_workers, gen_strict);
        }
        if (evaluate->parsed()) {
            return cmd_evaluate(eval_pairs, eval_pair, eval_providers, eval_gate, eval_sim,
                                eval_homonyms, eval_trace, eval_workers, eval_strict);
        }
        if (compare->parsed()) {
            return cmd_compare(cmp_groups, cmp_pair, cmp_metrics, cmp_providers, cmp_gate,
                               cmp_smoothing, cmp_workers);
        }
        if (dataset_validate->parsed()) return cmd_dataset(dataset_file_validate, false);
        if (dataset_stats->parsed()) return cmd_dataset(dataset_file_stats, true);
        if (cache_stats->parsed()) return cmd_cache_stats(cache_file);
        std::cerr << "error: no subcommand\n";
        return kExitUsage;
    } catch (const codemix::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const codemix::FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPartial;
    }
}
