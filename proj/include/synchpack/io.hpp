#pragma once

#include "synchpack/model.hpp"

#include <json.hpp>

#include <string>

namespace synchpack {

using Json = nlohmann::json;

// Integers, JSON decimals and strings ("3/4", "1.25") are all read exactly.
Rational rational_from_json(const Json& value);
Json rational_to_json(const Rational& value);

Instance instance_from_json(const Json& doc);
Json instance_to_json(const Instance& instance);

Schedule schedule_from_json(const Json& doc);
Json schedule_to_json(const Schedule& schedule);

Json report_to_json(const ValidationReport& report);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace synchpack
