//
// Copyright 2026 The gaussdp Authors
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
//

#ifndef GAUSSDP_REPORT_H_
#define GAUSSDP_REPORT_H_

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>

#include "gaussdp/bench.h"

namespace gaussdp {

// Shortest decimal string that parses back to exactly `value`.
std::string FormatDouble(double value);

// RFC 4180 field: quoted (with doubled quotes) only when it contains a
// comma, quote, CR or LF.
std::string CsvField(std::string_view field);

// Writers emit a header row for CSV, one JSON object per line for JSONL.
// Absent optionals become an empty CSV field or JSON null.
void WriteSweepCsv(std::ostream& out, std::span<const SweepRow> rows);
void WriteSweepJsonl(std::ostream& out, std::span<const SweepRow> rows);
void WriteRecordsCsv(std::ostream& out,
                     std::span<const ExperimentRecord> records);
void WriteRecordsJsonl(std::ostream& out,
                       std::span<const ExperimentRecord> records);
void WriteSummaryCsv(std::ostream& out, std::span<const SummaryRow> rows);
void WriteSummaryJsonl(std::ostream& out, std::span<const SummaryRow> rows);

}  // namespace gaussdp

#endif  // GAUSSDP_REPORT_H_
