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

#include "gaussdp/report.h"

#include <charconv>
#include <cmath>
#include <system_error>

#include "json.hpp"

namespace gaussdp {
namespace {

using Json = nlohmann::ordered_json;

std::string OptionalField(const std::optional<double>& value) {
  return value.has_value() ? FormatDouble(*value) : std::string();
}

Json OptionalJson(const std::optional<double>& value) {
  return value.has_value() ? Json(*value) : Json(nullptr);
}

}  // namespace

std::string FormatDouble(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[64];
  const std::to_chars_result r =
      std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, r.ptr);
}

std::string CsvField(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

void WriteSweepCsv(std::ostream& out, std::span<const SweepRow> rows) {
  out << "epsilon,delta,sigma_classical,sigma_analytic,variance_gain\r\n";
  for (const SweepRow& r : rows) {
    out << FormatDouble(r.epsilon) << ',' << FormatDouble(r.delta) << ','
        << OptionalField(r.sigma_classical) << ','
        << FormatDouble(r.sigma_analytic) << ','
        << OptionalField(r.variance_gain) << "\r\n";
  }
}

void WriteSweepJsonl(std::ostream& out, std::span<const SweepRow> rows) {
  for (const SweepRow& r : rows) {
    Json j;
    j["epsilon"] = r.epsilon;
    j["delta"] = r.delta;
    j["sigma_classical"] = OptionalJson(r.sigma_classical);
    j["sigma_analytic"] = r.sigma_analytic;
    j["variance_gain"] = OptionalJson(r.variance_gain);
    out << j.dump() << '\n';
  }
}

void WriteRecordsCsv(std::ostream& out,
                     std::span<const ExperimentRecord> records) {
  out << "method,d,epsilon,delta,trial,error,error_l2,error_l1,sigma_used\r\n";
  for (const ExperimentRecord& r : records) {
    out << CsvField(MethodName(r.method)) << ',' << r.d << ','
        << FormatDouble(r.epsilon) << ',' << FormatDouble(r.delta) << ','
        << r.trial << ',' << FormatDouble(r.error) << ','
        << FormatDouble(r.error_l2) << ',' << FormatDouble(r.error_l1) << ','
        << FormatDouble(r.sigma_used) << "\r\n";
  }
}

void WriteRecordsJsonl(std::ostream& out,
                       std::span<const ExperimentRecord> records) {
  for (const ExperimentRecord& r : records) {
    Json j;
    j["method"] = std::string(MethodName(r.method));
    j["d"] = r.d;
    j["epsilon"] = r.epsilon;
    j["delta"] = r.delta;
    j["trial"] = r.trial;
    j["error"] = r.error;
    j["error_l2"] = r.error_l2;
    j["error_l1"] = r.error_l1;
    j["sigma_used"] = r.sigma_used;
    out << j.dump() << '\n';
  }
}

void WriteSummaryCsv(std::ostream& out, std::span<const SummaryRow> rows) {
  out << "method,d,count,mean_error,stderr\r\n";
  for (const SummaryRow& r : rows) {
    out << CsvField(MethodName(r.method)) << ',' << r.d << ',' << r.count
        << ',' << FormatDouble(r.mean_error) << ','
        << FormatDouble(r.std_error) << "\r\n";
  }
}

void WriteSummaryJsonl(std::ostream& out, std::span<const SummaryRow> rows) {
  for (const SummaryRow& r : rows) {
    Json j;
    j["method"] = std::string(MethodName(r.method));
    j["d"] = r.d;
    j["count"] = r.count;
    j["mean_error"] = r.mean_error;
    j["stderr"] = r.std_error;
    out << j.dump() << '\n';
  }
}

}  // namespace gaussdp
