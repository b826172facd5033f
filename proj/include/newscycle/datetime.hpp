#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace newscycle::datetime {

// Parses an ISO-8601 timestamp ("2014-03-01", "2014-03-01T09:30:00Z",
// "2014-03-01T09:30:00+01:00") into UTC epoch seconds. Fractional seconds are
// accepted and truncated. Returns nullopt on anything malformed.
std::optional<std::int64_t> parse_iso8601(std::string_view text);

// Formats UTC epoch seconds as "YYYY-MM-DDTHH:MM:SSZ".
std::string format_iso8601(std::int64_t epoch_seconds);

}  // namespace newscycle::datetime
