// SPDX-License-Identifier: Apache-2.0
//
// mmwthz - mmWave/THz propagation modelling and coverage simulation
// Copyright (C) 2026 The mmwthz authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Internal helpers for strict JSON document parsing. Every failure surfaces as ConfigError.

#ifndef MMWTHZ_JSON_UTIL_HPP
#define MMWTHZ_JSON_UTIL_HPP

#include "mmwthz/errors.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <string_view>

namespace mmwthz::detail
{
    inline nlohmann::json read_json_file(const std::filesystem::path &file)
    {
        std::ifstream in(file);
        if (!in)
            throw ConfigError("Cannot open '" + file.string() + "'");
        try
        {
            return nlohmann::json::parse(in);
        }
        catch (const nlohmann::json::parse_error &e)
        {
            throw ConfigError("Malformed JSON in '" + file.string() + "': " + e.what());
        }
    }

    inline void require_object(const nlohmann::json &j, std::string_view what)
    {
        if (!j.is_object())
            throw ConfigError(std::string(what) + " must be a JSON object");
    }

    inline void reject_unknown_keys(const nlohmann::json &j, std::initializer_list<std::string_view> allowed,
                                    std::string_view what)
    {
        for (const auto &item : j.items())
        {
            bool ok = false;
            for (auto a : allowed)
                ok = ok || item.key() == a;
            if (!ok)
                throw ConfigError("Unknown key '" + item.key() + "' in " + std::string(what));
        }
    }

    template <typename T>
    T require(const nlohmann::json &j, const std::string &key)
    {
        if (!j.contains(key))
            throw ConfigError("Missing required key '" + key + "'");
        try
        {
            return j.at(key).get<T>();
        }
        catch (const nlohmann::json::exception &)
        {
            throw ConfigError("Key '" + key + "' has the wrong type");
        }
    }

    template <typename T>
    T optional(const nlohmann::json &j, const std::string &key, T fallback)
    {
        if (!j.contains(key))
            return fallback;
        return require<T>(j, key);
    }

    inline const nlohmann::json &require_array(const nlohmann::json &j, const std::string &key)
    {
        if (!j.contains(key) || !j.at(key).is_array())
            throw ConfigError("Key '" + key + "' must be an array");
        return j.at(key);
    }
}

#endif
