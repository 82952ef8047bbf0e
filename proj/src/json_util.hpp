// Copyright 2026 The balclust Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

#include <cmath>
#include <string>
#include <string_view>

#include <json.hpp>

#include "balclust/instance.hpp"

namespace balclust::detail {

inline nlohmann::ordered_json parse_json(std::string_view text) {
    try {
        return nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError("", std::string("malformed JSON: ") + e.what());
    }
}

inline const nlohmann::ordered_json& require(const nlohmann::ordered_json& obj,
                                             const char* key, const std::string& path) {
    if (!obj.is_object() || !obj.contains(key)) {
        throw InputError(path.empty() ? key : path + "." + key, "missing required field");
    }
    return obj[key];
}

inline double as_number(const nlohmann::ordered_json& v, const std::string& path) {
    if (!v.is_number()) throw InputError(path, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw InputError(path, "expected a finite number");
    return d;
}

inline int as_int(const nlohmann::ordered_json& v, const std::string& path) {
    if (v.is_number_integer()) return v.get<int>();
    if (v.is_number_float()) {
        const double d = v.get<double>();
        if (std::floor(d) == d) return static_cast<int>(d);
    }
    throw InputError(path, "expected an integer");
}

inline bool as_bool(const nlohmann::ordered_json& v, const std::string& path) {
    if (!v.is_boolean()) throw InputError(path, "expected true or false");
    return v.get<bool>();
}

}  // namespace balclust::detail
