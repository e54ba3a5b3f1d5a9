#include "twistrank/record.hpp"

#include <stdexcept>

namespace twistrank {

std::string OutputRecord::to_json_line() const {
    Json j;
    j["command"] = command;
    Json in = Json::object();
    for (const auto& [key, value] : inputs) in[key] = value;
    j["inputs"] = std::move(in);
    if (error) {
        j["status"] = "error";
        j["error"] = {{"code", error->code}, {"message", error->message}};
    } else {
        j["status"] = "ok";
        j["result"] = result;
    }
    return j.dump();
}

OutputRecord OutputRecord::from_json_line(std::string_view line) {
    Json j;
    try {
        j = Json::parse(line);
    } catch (const Json::parse_error& err) {
        throw std::invalid_argument(std::string("record is not valid JSON: ") + err.what());
    }
    if (!j.is_object() || !j.contains("command") || !j.contains("status") || !j.contains("inputs")) {
        throw std::invalid_argument("record lacks command, inputs or status");
    }
    OutputRecord out;
    out.command = j.at("command").get<std::string>();
    for (const auto& [key, value] : j.at("inputs").items()) out.inputs.emplace_back(key, value.get<std::string>());
    const std::string status = j.at("status").get<std::string>();
    if (status == "ok") {
        out.result = j.value("result", Json::object());
    } else if (status == "error") {
        const Json& e = j.at("error");
        out.error = RecordError{e.at("code").get<int>(), e.at("message").get<std::string>()};
    } else {
        throw std::invalid_argument("unknown record status '" + status + "'");
    }
    return out;
}

}  // namespace twistrank
