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

#ifndef LAMBDACAV_TOOLS_REPORT_HPP
#define LAMBDACAV_TOOLS_REPORT_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace lambdacav::cli {

enum class Format { Csv, Json };

/// Formats a double with 17 significant digits (round-trip exact).
std::string fmt17(double v);

/// One table cell. `text` is emitted verbatim in CSV; in JSON it is either
/// a raw token (numbers) or a quoted string. Empty cells are skipped in
/// JSON and left blank in CSV.
struct Cell {
    std::string text;
    bool quote = false;
    bool empty = false;

    static Cell num(double v) { return {fmt17(v), false, false}; }
    static Cell integer(long long v) { return {std::to_string(v), false, false}; }
    static Cell uinteger(std::uint64_t v) { return {std::to_string(v), false, false}; }
    static Cell str(std::string s) { return {std::move(s), true, false}; }
    static Cell none() { return {"", false, true}; }
};

/// Deterministic tabular report writer.
///
/// CSV: `# key=value` comment lines echoing the resolved configuration, a
/// header row, then data rows. JSON lines: one `{"record":"config",...}`
/// object followed by one object per row keyed by column name.
class Report {
   public:
    Report(std::ostream &os, Format format) : os_(os), format_(format) {}

    void config(const std::string &key, const std::string &value);
    void config_num(const std::string &key, double value) { config(key, fmt17(value)); }
    void config_int(const std::string &key, long long value) {
        config(key, std::to_string(value));
    }

    /// Emits the config block and the CSV header. Call once, before row().
    void begin(std::vector<std::string> columns);
    void row(const std::vector<Cell> &cells);

   private:
    std::ostream &os_;
    Format format_;
    std::vector<std::pair<std::string, std::string>> config_;
    std::vector<std::string> columns_;
    bool began_ = false;
};

}  // namespace lambdacav::cli

#endif
