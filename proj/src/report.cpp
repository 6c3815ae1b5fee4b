#include "selmer/report.hpp"

#include <algorithm>
#include <sstream>

#include "selmer/errors.hpp"

namespace selmer {

OutputFormat parse_output_format(const std::string& text) {
  if (text == "table") return OutputFormat::table;
  if (text == "records") return OutputFormat::records;
  throw InvalidInput("unknown output format '" + text + "' (table, records)");
}

void Report::config(const std::string& key, const std::string& value) { config_.emplace_back(key, value); }

void Report::record(const std::string& key, const std::string& value) { records_.emplace_back(key, value); }

void Report::table(std::string title, std::vector<std::string> header, std::vector<std::vector<std::string>> rows) {
  tables_.push_back({std::move(title), std::move(header), std::move(rows)});
}

void Report::note(const std::string& line) { notes_.push_back(line); }

std::string format_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> w(header.size(), 0);
  for (std::size_t i = 0; i < header.size(); ++i) w[i] = header[i].size();
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size() && i < w.size(); ++i) w[i] = std::max(w[i], row[i].size());
  }
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const std::string c = i < cells.size() ? cells[i] : "";
      s += (i ? "  " : "") + c + std::string(w[i] - c.size(), ' ');
    }
    while (!s.empty() && s.back() == ' ') s.pop_back();
    os << s << '\n';
  };
  line(header);
  std::vector<std::string> rule;
  for (auto n : w) rule.push_back(std::string(n, '-'));
  line(rule);
  for (const auto& row : rows) line(row);
  return os.str();
}

std::string Report::render(OutputFormat f) const {
  std::ostringstream os;
  if (f == OutputFormat::records) {
    os << "tool = selmer2\n";
    os << "version = " << kToolVersion << '\n';
    os << "command = " << command_ << '\n';
    for (const auto& [k, v] : config_) os << "config." << k << " = " << v << '\n';
    for (const auto& [k, v] : records_) os << k << " = " << v << '\n';
    return os.str();
  }
  os << "selmer2 " << kToolVersion << "  " << command_ << '\n';
  std::vector<std::vector<std::string>> cfg;
  for (const auto& [k, v] : config_) cfg.push_back({k, v});
  if (!cfg.empty()) os << '\n' << format_table({"config", "value"}, cfg);
  for (const auto& t : tables_) {
    os << '\n' << t.title << '\n' << format_table(t.header, t.rows);
  }
  if (!records_.empty()) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& [k, v] : records_) rows.push_back({k, v});
    os << '\n' << format_table({"key", "value"}, rows);
  }
  for (const auto& n : notes_) os << '\n' << n << '\n';
  return os.str();
}

// ---------------------------------------------------------------- helpers

namespace {

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string element_str(const SelmerBasis& sel, const F2Vector& e) {
  if (sel.representation == Representation::full_pairs) {
    const auto [d1, d2] = sel.pair(e);
    return "(" + to_string(d1) + ", " + to_string(d2) + ")";
  }
  return QuadField(*sel.field_D).str(sel.field_element(e));
}

}  // namespace

void add_selmer(Report& r, const SelmerBasis& sel, const std::string& p) {
  r.record(p + "curve", sel.curve.name());
  r.record(p + "twist", to_string(sel.twist));
  r.record(p + "variant", sel.variant.str());
  r.record(p + "rank", static_cast<long long>(sel.rank));
  r.record(p + "provenance", to_string(sel.provenance));
  r.record(p + "source", sel.source);
  r.record(p + "representation", to_string(sel.representation));
  if (sel.representation == Representation::opaque) return;
  std::string places;
  for (const auto& v : sel.S) places += (places.empty() ? "" : ",") + v.str();
  r.record(p + "places", places);
  std::vector<std::vector<std::string>> rows;
  std::size_t i = 0;
  for (const auto& b : sel.elements.basis()) {
    const std::string s = element_str(sel, b);
    r.record(p + "basis." + std::to_string(i), s);
    rows.push_back({std::to_string(i++), s});
  }
  r.table("Selmer basis of " + sel.curve.name() + " twisted by " + to_string(sel.twist), {"#", "element"}, rows);
}

void add_certificate(Report& r, const TwistCertificate& c, const std::string& p) {
  r.record(p + "case", c.case_label);
  r.record(p + "chi.d", to_string(c.chi.d()));
  r.record(p + "q", static_cast<long long>(c.q));
  std::string aux;
  for (auto a : c.auxiliary) aux += (aux.empty() ? "" : ",") + std::to_string(a);
  r.record(p + "auxiliary", aux.empty() ? "none" : aux);
  for (std::size_t i = 0; i < c.steps.size(); ++i) {
    r.record(p + "step." + std::to_string(i), c.steps[i].label + " d=" + to_string(c.steps[i].d) +
                                                  " q=" + std::to_string(c.steps[i].q));
  }
  std::vector<std::vector<std::string>> rank_rows;
  for (const auto& e : c.ranks) {
    r.record(p + "rank." + e.curve, std::to_string(e.rank) + " (" + to_string(e.provenance) + ")");
    rank_rows.push_back({e.curve, to_string(e.d), std::to_string(e.rank), to_string(e.provenance)});
  }
  std::vector<std::vector<std::string>> local_rows;
  for (const auto& l : c.local_reports) {
    const auto& lr = l.report;
    r.record(p + "h." + l.curve + "." + lr.place.str(), lr.h);
    local_rows.push_back({l.curve, lr.place.str(), std::to_string(lr.dim_beta_trivial), std::to_string(lr.dim_beta_chi),
                          std::to_string(lr.h), lr.prime_class ? std::to_string(*lr.prime_class) : "-"});
  }
  std::vector<std::vector<std::string>> claim_rows;
  for (std::size_t i = 0; i < c.claims.size(); ++i) {
    r.record(p + "claim." + std::to_string(i), std::string(c.claims[i].verified ? "verified: " : "FAILED: ") + c.claims[i].text);
    claim_rows.push_back({c.claims[i].verified ? "ok" : "FAIL", c.claims[i].text});
  }
  if (c.gap_increase) r.record(p + "gap_increase", static_cast<long long>(*c.gap_increase));
  r.record(p + "certified", yes_no(c.ok()));
  const std::string title = c.case_label + " certificate, chi_" + to_string(c.chi.d()) + ", q = " + std::to_string(c.q);
  r.table(title + ": ranks", {"curve", "d", "r2", "provenance"}, rank_rows);
  r.table(title + ": local conditions", {"curve", "place", "dim beta(1)", "dim beta(chi)", "h", "prime class"}, local_rows);
  r.table(title + ": claims", {"status", "claim"}, claim_rows);
}

void add_crucial(Report& r, const CrucialReport& c, const std::string& p) {
  r.record(p + "q", static_cast<long long>(c.q));
  r.record(p + "rank", static_cast<long long>(c.rank));
  r.record(p + "strict", static_cast<long long>(c.strict));
  r.record(p + "relaxed", static_cast<long long>(c.relaxed));
  r.record(p + "res_dim", static_cast<long long>(c.res_dim));
  r.record(p + "clause", c.clause == 1 ? "i" : "iii");
  if (c.matching) r.record(p + "matching", to_string(*c.matching));
  r.record(p + "twisted_rank.q", static_cast<long long>(c.twisted_rank_q));
  r.record(p + "twisted_rank.uq", static_cast<long long>(c.twisted_rank_uq));
  r.record(p + "ok", yes_no(c.ok));
}

void add_ptd(Report& r, const PtdReport& x, const std::string& p) {
  r.record(p + "q", static_cast<long long>(x.q));
  r.record(p + "strict", static_cast<long long>(x.strict));
  r.record(p + "classical", static_cast<long long>(x.classical));
  r.record(p + "relaxed", static_cast<long long>(x.relaxed));
  r.record(p + "relaxed_minus_strict", static_cast<long long>(x.relaxed) - static_cast<long long>(x.strict));
  r.record(p + "res_classical_dim", static_cast<long long>(x.res_classical_dim));
  r.record(p + "res_relaxed_dim", static_cast<long long>(x.res_relaxed_dim));
  r.record(p + "res_relaxed_isotropic", yes_no(x.res_relaxed_isotropic));
  r.record(p + "ok", yes_no(x.ok));
}

void add_parity(Report& r, const ParityReport& x, const std::string& p) {
  r.record(p + "d", to_string(x.d));
  r.record(p + "rank", static_cast<long long>(x.rank_E));
  r.record(p + "rank_twist", static_cast<long long>(x.rank_twist));
  r.record(p + "sum_h", x.sum_h);
  r.record(p + "ok", yes_no(x.ok));
}

}  // namespace selmer
