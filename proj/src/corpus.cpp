#include "newscycle/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "newscycle/datetime.hpp"

namespace newscycle::corpus {

namespace {

using nlohmann::json;

std::string lowercase_ascii(std::string_view text) {
    std::string out(text);
    for (char& c : out) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return out;
}

std::string trim(std::string_view text) {
    std::size_t first = 0, last = text.size();
    while (first < last && std::isspace(static_cast<unsigned char>(text[first]))) ++first;
    while (last > first && std::isspace(static_cast<unsigned char>(text[last - 1]))) --last;
    return std::string(text.substr(first, last - first));
}

[[noreturn]] void fail(const std::string& source, std::size_t line, const std::string& what) {
    throw CorpusError(source + ": line " + std::to_string(line) + ": " + what);
}

std::optional<std::int64_t> parse_published(const std::string& source, std::size_t line,
                                            const std::string& text) {
    if (text.empty()) return std::nullopt;
    auto ts = datetime::parse_iso8601(text);
    if (!ts) fail(source, line, "unparseable timestamp '" + text + "'");
    return ts;
}

// RFC4180-ish single-line row split: double quotes, "" escapes, embedded
// commas. Embedded newlines are not supported.
std::vector<std::string> split_csv_row(const std::string& source, std::size_t line_no,
                                       const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    std::size_t i = 0;
    while (i < line.size()) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            if (!field.empty()) fail(source, line_no, "stray quote inside unquoted field");
            quoted = true;
        } else if (c == ',') {
            fields.push_back(field);
            field.clear();
        } else {
            field += c;
        }
        ++i;
    }
    if (quoted) fail(source, line_no, "unterminated quoted field");
    fields.push_back(field);
    return fields;
}

Corpus parse_jsonl(const std::string& text, const std::string& source, LoadReport& report) {
    Corpus corpus;
    corpus.source = source;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    std::unordered_set<std::string> seen_ids;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        ++report.records_read;
        json record = json::parse(line, nullptr, /*allow_exceptions=*/false);
        if (record.is_discarded() || !record.is_object()) {
            fail(source, line_no, "invalid JSON object");
        }
        Document doc;
        if (!record.contains("id") || !record["id"].is_string()) {
            fail(source, line_no, "missing string field 'id'");
        }
        doc.id = record["id"].get<std::string>();
        if (!record.contains("title") || !record["title"].is_string()) {
            fail(source, line_no, "missing string field 'title'");
        }
        doc.title = record["title"].get<std::string>();
        if (!record.contains("keywords") || !record["keywords"].is_array()) {
            fail(source, line_no, "missing array field 'keywords'");
        }
        std::vector<std::string> raw;
        for (const auto& kw : record["keywords"]) {
            if (!kw.is_string()) fail(source, line_no, "non-string keyword");
            raw.push_back(kw.get<std::string>());
        }
        doc.keywords = normalize_keywords(raw);
        if (record.contains("published") && !record["published"].is_null()) {
            if (!record["published"].is_string()) fail(source, line_no, "'published' must be a string");
            doc.published = parse_published(source, line_no, record["published"].get<std::string>());
        }
        if (record.contains("url") && !record["url"].is_null()) {
            if (!record["url"].is_string()) fail(source, line_no, "'url' must be a string");
            doc.url = record["url"].get<std::string>();
        }
        if (doc.id.empty()) fail(source, line_no, "empty id");
        if (!seen_ids.insert(doc.id).second) {
            fail(source, line_no, "duplicate document id '" + doc.id + "'");
        }
        if (doc.keywords.empty()) {
            ++report.dropped_empty_keywords;
            continue;
        }
        corpus.documents.push_back(std::move(doc));
    }
    return corpus;
}

constexpr const char* kCsvHeader = "id,title,keywords,published,url";

Corpus parse_csv(const std::string& text, const std::string& source, LoadReport& report) {
    Corpus corpus;
    corpus.source = source;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    std::unordered_set<std::string> seen_ids;
    if (!std::getline(in, line)) throw CorpusError(source + ": empty file");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kCsvHeader) {
        fail(source, line_no, std::string("expected header '") + kCsvHeader + "'");
    }
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        ++report.records_read;
        auto fields = split_csv_row(source, line_no, line);
        if (fields.size() != 5) {
            fail(source, line_no, "expected 5 fields, got " + std::to_string(fields.size()));
        }
        Document doc;
        doc.id = fields[0];
        doc.title = fields[1];
        std::vector<std::string> raw;
        std::istringstream kw_in(fields[2]);
        std::string kw;
        while (std::getline(kw_in, kw, '|')) raw.push_back(kw);
        doc.keywords = normalize_keywords(raw);
        doc.published = parse_published(source, line_no, fields[3]);
        doc.url = fields[4];
        if (doc.id.empty()) fail(source, line_no, "empty id");
        if (!seen_ids.insert(doc.id).second) {
            fail(source, line_no, "duplicate document id '" + doc.id + "'");
        }
        if (doc.keywords.empty()) {
            ++report.dropped_empty_keywords;
            continue;
        }
        corpus.documents.push_back(std::move(doc));
    }
    return corpus;
}

}  // namespace

std::vector<std::string> normalize_keywords(std::span<const std::string> raw) {
    std::vector<std::string> out;
    out.reserve(raw.size());
    for (const auto& kw : raw) {
        auto cleaned = lowercase_ascii(trim(kw));
        if (!cleaned.empty()) out.push_back(std::move(cleaned));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Corpus parse_corpus(const std::string& text, Format format, const std::string& source,
                    LoadReport* report) {
    LoadReport local;
    LoadReport& rep = report ? *report : local;
    rep = LoadReport{};
    return format == Format::Jsonl ? parse_jsonl(text, source, rep)
                                   : parse_csv(text, source, rep);
}

Corpus load_corpus(const std::string& path, Format format, LoadReport* report) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CorpusError("cannot read corpus file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    const char* tag = format == Format::Jsonl ? "jsonl:" : "csv:";
    return parse_corpus(buf.str(), format, tag + path, report);
}

Corpus window_corpus(const Corpus& corpus, std::int64_t from, std::int64_t to) {
    if (from > to) {
        throw std::invalid_argument("window_corpus: inverted range (from > to)");
    }
    Corpus out;
    out.source = corpus.source;
    for (const auto& doc : corpus.documents) {
        if (doc.published && *doc.published >= from && *doc.published < to) {
            out.documents.push_back(doc);
        }
    }
    return out;
}

std::string to_jsonl(const Corpus& corpus) {
    std::string out;
    for (const auto& doc : corpus.documents) {
        json record;
        record["id"] = doc.id;
        record["title"] = doc.title;
        record["keywords"] = doc.keywords;
        if (doc.published) record["published"] = datetime::format_iso8601(*doc.published);
        if (!doc.url.empty()) record["url"] = doc.url;
        out += record.dump();
        out += '\n';
    }
    return out;
}

void save_jsonl(const Corpus& corpus, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CorpusError("cannot write corpus file: " + path);
    out << to_jsonl(corpus);
}

std::optional<Format> format_from_path(const std::string& path) {
    const auto dot = path.find_last_of('.');
    if (dot == std::string::npos) return std::nullopt;
    const auto ext = lowercase_ascii(path.substr(dot + 1));
    if (ext == "jsonl" || ext == "ndjson") return Format::Jsonl;
    if (ext == "csv") return Format::Csv;
    return std::nullopt;
}

}  // namespace newscycle::corpus
