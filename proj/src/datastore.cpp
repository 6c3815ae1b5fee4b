#include "selmer/datastore.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include <boost/algorithm/string.hpp>

#include "selmer/errors.hpp"

namespace selmer {

std::string RankRecord::str() const { return label + " : " + to_string(d) + " : " + std::to_string(rank); }

RankRecord parse_rank_record(const std::string& line, int line_no) {
  std::vector<std::string> parts;
  boost::split(parts, line, boost::is_any_of(":"));
  if (parts.size() != 3) throw ParseError("expected 'curve-label : twist-d : selmer2-rank'", line_no);
  for (auto& p : parts) boost::trim(p);
  RankRecord r;
  r.label = parts[0];
  if (r.label.empty()) throw ParseError("empty curve label", line_no);
  try {
    r.d = Integer(parts[1]);
    std::size_t used = 0;
    r.rank = std::stoi(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument(parts[2]);
  } catch (const std::exception&) {
    throw ParseError("malformed integer in '" + line + "'", line_no);
  }
  if (r.d == 0 || !is_squarefree(r.d)) throw ParseError("twist " + parts[1] + " is not a nonzero squarefree integer", line_no);
  if (r.rank < 0) throw ParseError("negative rank", line_no);
  return r;
}

Datastore Datastore::load(std::istream& in, const std::set<std::string>* known_labels, std::string source) {
  Datastore ds;
  ds.source_ = std::move(source);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = boost::trim_copy(line);
    if (t.empty() || t[0] == '#') continue;
    const RankRecord r = parse_rank_record(t, line_no);
    if (known_labels && !known_labels->count(r.label)) throw ParseError("unknown curve label '" + r.label + "'", line_no);
    try {
      ds.add(r);
    } catch (const InvalidInput& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  return ds;
}

Datastore Datastore::load_file(const std::string& path, const std::set<std::string>* known_labels) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open datastore '" + path + "'");
  return load(in, known_labels, path);
}

void Datastore::add(const RankRecord& r) {
  const auto key = std::make_pair(r.label, r.d);
  const auto it = ranks_.find(key);
  if (it != ranks_.end() && it->second != r.rank) {
    throw InvalidInput("conflicting ranks for " + r.label + " twist " + to_string(r.d) + ": " +
                       std::to_string(it->second) + " and " + std::to_string(r.rank));
  }
  ranks_[key] = r.rank;
}

std::optional<int> Datastore::rank(const std::string& label, const Integer& d) const {
  const auto it = ranks_.find({label, d});
  if (it == ranks_.end()) return std::nullopt;
  return it->second;
}

void Datastore::dump(std::ostream& out) const {
  for (const auto& [key, rank] : ranks_) out << RankRecord{key.first, key.second, rank}.str() << '\n';
}

}  // namespace selmer
