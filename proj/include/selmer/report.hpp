#pragma once

// Report emission: a human-readable table layout and line-oriented
// `key = value` records. Output depends only on the data added, so identical
// runs give identical bytes.

#include <string>
#include <utility>
#include <vector>

#include "selmer/descent.hpp"
#include "selmer/theorems.hpp"

namespace selmer {

inline constexpr const char* kToolVersion = "0.1.0";

enum class OutputFormat { table, records };
OutputFormat parse_output_format(const std::string& text);

class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)) {}

  /// Configuration entry, printed in the header of both formats.
  void config(const std::string& key, const std::string& value);
  /// Machine-readable entry; also listed in the table format.
  void record(const std::string& key, const std::string& value);
  void record(const std::string& key, long long value) { record(key, std::to_string(value)); }
  /// Table shown in the table format only (the same facts must also be recorded).
  void table(std::string title, std::vector<std::string> header, std::vector<std::vector<std::string>> rows);
  void note(const std::string& line);

  std::string render(OutputFormat f) const;

 private:
  struct Table {
    std::string title;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
  };
  std::string command_;
  std::vector<std::pair<std::string, std::string>> config_;
  std::vector<std::pair<std::string, std::string>> records_;
  std::vector<Table> tables_;
  std::vector<std::string> notes_;
};

std::string format_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows);

void add_selmer(Report& r, const SelmerBasis& sel, const std::string& prefix);
void add_certificate(Report& r, const TwistCertificate& c, const std::string& prefix);
void add_crucial(Report& r, const CrucialReport& c, const std::string& prefix);
void add_ptd(Report& r, const PtdReport& p, const std::string& prefix);
void add_parity(Report& r, const ParityReport& p, const std::string& prefix);

}  // namespace selmer
