#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

namespace twistrank {

using Json = nlohmann::ordered_json;

struct RecordError {
    int code = 0;
    std::string message;

    friend bool operator==(const RecordError&, const RecordError&) = default;
};

/// One line of machine-readable CLI output. Big integers travel as decimal strings.
struct OutputRecord {
    std::string command;
    std::vector<std::pair<std::string, std::string>> inputs;
    Json result = Json::object();
    std::optional<RecordError> error;

    bool ok() const { return !error.has_value(); }

    /// Single-line JSON, keys in a fixed order.
    std::string to_json_line() const;
    /// Throws std::invalid_argument on malformed input.
    static OutputRecord from_json_line(std::string_view line);

    friend bool operator==(const OutputRecord&, const OutputRecord&) = default;
};

}  // namespace twistrank
