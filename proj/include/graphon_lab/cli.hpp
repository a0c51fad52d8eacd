#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "graphon_lab/bifurcation.hpp"
#include "graphon_lab/ensemble.hpp"
#include "graphon_lab/optimizer/report.hpp"
#include "graphon_lab/optimizer/scan.hpp"

namespace graphon_lab::cli {

/// Parses argv, runs the subcommand and writes its payload to out. Returns
/// 0 on success, 2 on a usage error and 1 on a computation error; errors go
/// to err as a JSON object and nothing is written to out.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// %.17g, with nan/inf spelled out.
std::string format_double(double v);

/// RFC 4180 quoting: fields containing a comma, quote or line break are
/// wrapped in quotes with inner quotes doubled.
std::string csv_field(const std::string& s);

class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  CsvWriter& cell(const std::string& s);
  CsvWriter& cell(double v);
  CsvWriter& cell(long long v);
  CsvWriter& cell(bool v);
  CsvWriter& empty();
  void end_row();
  std::string str() const { return text_; }

 private:
  void sep();
  std::size_t columns_;
  std::size_t filled_ = 0;
  std::string text_;
};

// JSON encodings of the payloads. Non-finite doubles become null.
nlohmann::json to_json(const opt::OptimumReport& r);
nlohmann::json to_json(const opt::PhaseDiagramRow& r);
nlohmann::json to_json(const bifurcation::CriticalPoint& c);
nlohmann::json to_json(const bifurcation::StabilityReport& s);
nlohmann::json to_json(const ensemble::GraphCensusRow& r);
nlohmann::json to_json(const ensemble::TypicalityResult& r);

std::string optimize_csv(const opt::OptimumReport& r);
std::string scan_csv(const std::vector<opt::PhaseDiagramRow>& rows);
std::string census_csv(const std::vector<ensemble::GraphCensusRow>& rows);

}  // namespace graphon_lab::cli
