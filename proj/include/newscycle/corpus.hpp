#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace newscycle::corpus {

struct CorpusError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One news item. Keywords are lowercased, deduplicated and kept sorted so a
// Document compares and hashes deterministically.
struct Document {
    std::string id;
    std::string title;
    std::vector<std::string> keywords;
    std::optional<std::int64_t> published;  // UTC epoch seconds
    std::string url;

    bool operator==(const Document&) const = default;
};

// Document order is load order and stays fixed: it defines the row order of
// every matrix built downstream.
struct Corpus {
    std::vector<Document> documents;
    std::string source;

    bool operator==(const Corpus&) const = default;
};

enum class Format { Jsonl, Csv };

struct LoadReport {
    std::size_t records_read = 0;
    std::size_t dropped_empty_keywords = 0;
};

// Lowercases (ASCII range), trims, drops empties, dedupes and sorts.
std::vector<std::string> normalize_keywords(std::span<const std::string> raw);

// Parses corpus text. Records whose keyword set normalizes to empty are
// dropped and counted in the report; duplicate ids are a hard error.
Corpus parse_corpus(const std::string& text, Format format, const std::string& source,
                    LoadReport* report = nullptr);

Corpus load_corpus(const std::string& path, Format format, LoadReport* report = nullptr);

// Sub-corpus of documents with from <= published < to, order preserved.
// Documents without a timestamp are excluded. Throws on from > to.
Corpus window_corpus(const Corpus& corpus, std::int64_t from, std::int64_t to);

std::string to_jsonl(const Corpus& corpus);
void save_jsonl(const Corpus& corpus, const std::string& path);

// Infers the format from the file extension (.jsonl/.ndjson/.csv).
std::optional<Format> format_from_path(const std::string& path);

}  // namespace newscycle::corpus
