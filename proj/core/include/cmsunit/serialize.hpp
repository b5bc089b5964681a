#pragma once

// CSV and JSON renderings of survey records, tables, bounds and witness
// reports. Big integers always travel as decimal strings.

#include <nlohmann/json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

#include "cmsunit/grosslattice.hpp"
#include "cmsunit/heights.hpp"
#include "cmsunit/survey.hpp"

namespace cmsunit {

using Json = nlohmann::ordered_json;

/// Column order of the record CSV; fixed.
inline constexpr const char* kRecordCsvHeader = "delta,class_number,norm_sign,factorization,s,complete";

/// One CSV line without the newline. s is empty when the factorization is incomplete.
std::string to_csv_row(const SurveyRecord& r);
void write_csv(std::ostream& out, const std::vector<SurveyRecord>& records);

/// Same fields as the CSV; s is null when incomplete.
Json to_json(const SurveyRecord& r);
/// Inverse of to_json(SurveyRecord); throws InvalidArgument on schema mismatch.
SurveyRecord record_from_json(const Json& j);
Json to_json(const std::vector<SurveyRecord>& records);

Json to_json(const Factorization& f);
Json to_json(const TableRow& row);
Json to_json(const std::vector<TableRow>& rows);
/// Fixed-width table, both prime inventories.
std::string table_text(const std::vector<TableRow>& rows);

Json to_json(const BoundBreakdown& b);
Json to_json(const Threshold& t);
Json to_json(const WitnessReport& w);
Json to_json(const NicePair& np);

/// Scientific notation with the given digits after the point.
std::string to_string(const Float& x, int digits = 12);

}  // namespace cmsunit
