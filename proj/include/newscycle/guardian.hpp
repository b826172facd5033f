#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "newscycle/corpus.hpp"

namespace newscycle::guardian {

struct AuthError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct RateLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Malformed payloads and unexpected HTTP statuses.
struct UpstreamError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ApiQuery {
    std::string from_date;  // YYYY-MM-DD
    std::string to_date;    // YYYY-MM-DD
    std::optional<std::string> section;
    int page_size = 50;  // [1,200]
    std::string api_key;
    std::string base_url = "https://content.guardianapis.com/search";
    int max_pages = 100;
};

struct Tag {
    std::string id;
    std::string title;
};

// Wire shape of one upstream article.
struct RawArticle {
    std::string api_id;
    std::string web_title;
    std::string web_url;
    std::string publication_date;  // ISO-8601
    std::vector<Tag> tags;
};

struct HttpResponse {
    int status = 0;
    std::string body;
};

// All network behavior is injected, so the module is fully testable offline.
using Transport = std::function<HttpResponse(const std::string& url)>;
using Sleeper = std::function<void(std::chrono::milliseconds)>;

Sleeper default_sleeper();

std::string build_url(const ApiQuery& query, int page);

// Tag titles become the keyword set; an unparseable date keeps the document
// with no timestamp and pushes a warning.
corpus::Document map_article(const RawArticle& raw,
                             std::vector<std::string>* warnings = nullptr);

// Paginates until the reported total is exhausted (never beyond it) or the
// page cap is hit. 401/403 fail immediately; 429 retries up to 3 times with
// exponential backoff, then fails.
corpus::Corpus fetch_articles(const ApiQuery& query, const Transport& transport,
                              const Sleeper& sleeper = default_sleeper(),
                              std::vector<std::string>* warnings = nullptr);

}  // namespace newscycle::guardian
