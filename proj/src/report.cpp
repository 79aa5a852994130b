// Copyright 2026 The sdfmig Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "sdfmig/report.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace sdfmig {

Report make_report(const Exploration& exploration, std::string title) {
    Report r;
    r.title = std::move(title);
    r.fps_before = exploration.baseline_fps;
    for (const ExplorationEntry& e : exploration.entries) {
        r.rows.push_back({e.actor, e.fps, e.gain, e.diagnostic});
    }
    return r;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

} // namespace

std::string emit_report(const Report& report, ReportFormat format) {
    const int p = report.precision;
    const std::string before = report.fps_before.to_decimal(p);
    std::ostringstream out;

    if (format == ReportFormat::csv) {
        out << "actor,fps_before,fps_after,gain_fps\n";
        for (const ReportRow& row : report.rows) {
            out << csv_field(row.actor) << ',' << before << ',';
            if (row.diagnostic.empty()) {
                out << row.fps_after.to_decimal(p) << ',' << row.gain.to_decimal(p);
            } else {
                out << ',';
            }
            out << '\n';
        }
        return out.str();
    }

    if (!report.title.empty()) out << report.title << '\n';
    out << "Throughput without migration (f/s): " << before << '\n';
    if (report.rows.empty()) return out.str();

    std::size_t width = 5;
    for (const ReportRow& row : report.rows) width = std::max(width, row.actor.size());
    out << '\n'
        << std::left << std::setw(static_cast<int>(width)) << "actor" << "  " << std::right << std::setw(12)
        << "fps_after" << "  " << std::setw(10) << "gain_fps" << '\n';
    for (const ReportRow& row : report.rows) {
        out << std::left << std::setw(static_cast<int>(width)) << row.actor << "  " << std::right;
        if (row.diagnostic.empty()) {
            out << std::setw(12) << row.fps_after.to_decimal(p) << "  " << std::setw(10) << row.gain.to_decimal(p);
        } else {
            out << "failed: " << row.diagnostic;
        }
        out << '\n';
    }
    return out.str();
}

} // namespace sdfmig
