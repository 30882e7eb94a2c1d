// Copyright 2026 The lambdacav Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "report.hpp"

#include <cstdio>
#include <stdexcept>

namespace lambdacav::cli {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

// CSV field, quoted only when it contains a delimiter, quote, or newline.
std::string csv_escape(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string json_escape(const std::string &s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"':
                out += "\\\"";
                break;
            case '\\':
                out += "\\\\";
                break;
            case '\n':
                out += "\\n";
                break;
            case '\t':
                out += "\\t";
                break;
            default:
                out += c;
        }
    }
    out += '"';
    return out;
}

}  // namespace

void Report::config(const std::string &key, const std::string &value) {
    if (began_) throw std::logic_error("config() must precede begin()");
    config_.emplace_back(key, value);
}

void Report::begin(std::vector<std::string> columns) {
    columns_ = std::move(columns);
    began_ = true;
    if (format_ == Format::Csv) {
        for (const auto &[key, value] : config_) os_ << "# " << key << "=" << value << "\n";
        for (std::size_t i = 0; i < columns_.size(); ++i) {
            if (i > 0) os_ << ",";
            os_ << csv_escape(columns_[i]);
        }
        os_ << "\n";
    } else {
        os_ << "{\"record\":\"config\"";
        for (const auto &[key, value] : config_) {
            os_ << "," << json_escape(key) << ":" << json_escape(value);
        }
        os_ << "}\n";
    }
}

void Report::row(const std::vector<Cell> &cells) {
    if (!began_ || cells.size() != columns_.size()) {
        throw std::logic_error("row shape does not match the declared columns");
    }
    if (format_ == Format::Csv) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i > 0) os_ << ",";
            if (!cells[i].empty) os_ << csv_escape(cells[i].text);
        }
        os_ << "\n";
    } else {
        os_ << "{";
        bool first = true;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (cells[i].empty) continue;
            if (!first) os_ << ",";
            first = false;
            os_ << json_escape(columns_[i]) << ":"
                << (cells[i].quote ? json_escape(cells[i].text) : cells[i].text);
        }
        os_ << "}\n";
    }
}

}  // namespace lambdacav::cli
