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


#ifndef SDFMIG_REPORT_HPP
#define SDFMIG_REPORT_HPP

#include <string>
#include <vector>

#include "sdfmig/migration.hpp"

namespace sdfmig {

enum class ReportFormat { text, csv };

struct ReportRow {
    ActorId actor;
    Rational fps_after;
    Rational gain;
    std::string diagnostic; ///< non-empty when the candidate failed

    friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct Report {
    std::string title;
    Rational fps_before;
    std::vector<ReportRow> rows;
    int precision = 2;
};

Report make_report(const Exploration& exploration, std::string title = {});

/// Text mirrors a before/after/gain table; csv has the header
/// `actor,fps_before,fps_after,gain_fps` and one line per row.
std::string emit_report(const Report& report, ReportFormat format);

} // namespace sdfmig

#endif // SDFMIG_REPORT_HPP
