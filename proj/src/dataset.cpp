#include "codemix/dataset.hpp"

#include <istream>
#include <set>

#include "json.hpp"

namespace codemix {

using nlohmann::json;

namespace {

const std::set<std::string> kSources = {"gupta2020", "twitter-corrected", "other"};

} // namespace

std::vector<DatasetRecord> load_dataset(std::istream& in,
                                        std::vector<DatasetViolation>* violations) {
    std::vector<DatasetRecord> records;
    std::string line;
    size_t line_no = 0;
    auto violate = [&](const std::string& message) {
        if (violations) violations->push_back({line_no, message});
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json doc;
        try {
            doc = json::parse(line);
        } catch (const json::parse_error& e) {
            violate(std::string("not valid JSON: ") + e.what());
            continue;
        }
        if (!doc.is_object()) {
            violate("record is not a JSON object");
            continue;
        }
        DatasetRecord record;
        bool ok = true;
        auto read_string = [&](const char* field, std::string& out, bool required_nonempty) {
            if (!doc.contains(field) || !doc.at(field).is_string()) {
                violate(std::string("missing or non-string field \"") + field + "\"");
                ok = false;
                return;
            }
            out = doc.at(field).get<std::string>();
            if (required_nonempty && out.empty()) {
                violate(std::string("field \"") + field + "\" is empty");
                ok = false;
            }
        };
        read_string("id", record.id, true);
        std::string pair_code;
        read_string("pair", pair_code, true);
        if (ok) {
            try {
                record.pair = LanguagePair::parse(pair_code);
            } catch (const FormatError& e) {
                violate(e.what());
                ok = false;
            }
        }
        read_string("english", record.english, true);
        read_string("codemixed", record.codemixed, true);
        read_string("source", record.source, true);
        if (ok && !kSources.contains(record.source)) {
            violate("unknown source \"" + record.source + "\"");
            ok = false;
        }
        if (ok) records.push_back(std::move(record));
    }
    return records;
}

DatasetStats dataset_stats(const std::vector<DatasetRecord>& records) {
    DatasetStats stats;
    std::set<std::string> seen;
    for (const DatasetRecord& record : records) {
        ++stats.per_pair[record.pair.code()];
        ++stats.total;
        const std::string key =
            record.pair.code() + '\x1f' + record.english + '\x1f' + record.codemixed;
        if (!seen.insert(key).second) ++stats.duplicates;
    }
    return stats;
}

} // namespace codemix
