#pragma once

// Externally computed 2-Selmer ranks, one record per line:
//   curve-label : twist-d : selmer2-rank

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>

#include "selmer/arith.hpp"

namespace selmer {

struct RankRecord {
  std::string label;
  Integer d;
  int rank = 0;
  std::string str() const;
};

RankRecord parse_rank_record(const std::string& line, int line_no = 0);

class Datastore {
 public:
  Datastore() = default;

  /// Reads records; blank and '#' lines are skipped. When `known_labels` is given,
  /// records for other labels are rejected.
  static Datastore load(std::istream& in, const std::set<std::string>* known_labels = nullptr,
                        std::string source = "stream");
  static Datastore load_file(const std::string& path, const std::set<std::string>* known_labels = nullptr);

  /// Adds a record; an identical duplicate is accepted, a conflicting one throws InvalidInput.
  void add(const RankRecord& r);
  std::optional<int> rank(const std::string& label, const Integer& d) const;
  std::size_t size() const { return ranks_.size(); }
  const std::string& source() const { return source_; }

  /// Records sorted by label, then d.
  void dump(std::ostream& out) const;

 private:
  std::map<std::pair<std::string, Integer>, int> ranks_;
  std::string source_ = "empty";
};

}  // namespace selmer
