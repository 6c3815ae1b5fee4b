// selmer2: command-line front end for the 2-Selmer workbench.
//
// Exit codes: 0 success, 2 when a search finds nothing or an ingested rank is
// missing, 1 for every other error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <boost/algorithm/string.hpp>

#include "selmer/characters.hpp"
#include "selmer/curves.hpp"
#include "selmer/datastore.hpp"
#include "selmer/descent.hpp"
#include "selmer/errors.hpp"
#include "selmer/f2.hpp"
#include "selmer/report.hpp"
#include "selmer/theorems.hpp"

using namespace selmer;

namespace {

struct WorkbenchConfig {
  std::uint64_t prime_bound = 100000;
  std::uint64_t twist_bound = 1000000;
  std::uint64_t sampling_seed = 1;
  std::size_t descent_candidate_cap = 40;
  std::string datastore_path;
  std::string curves_path;
  std::string output_format = "table";

  void validate() const {
    if (prime_bound == 0 || twist_bound == 0 || descent_candidate_cap == 0) {
      throw InvalidInput("bounds must be positive");
    }
    parse_output_format(output_format);
  }
  SearchBounds bounds() const { return {prime_bound, twist_bound, sampling_seed, descent_candidate_cap}; }
  DescentOptions descent() const { return bounds().descent(); }

  void stamp(Report& r) const {
    r.config("prime_bound", std::to_string(prime_bound));
    r.config("twist_bound", std::to_string(twist_bound));
    r.config("seed", std::to_string(sampling_seed));
    r.config("candidate_cap", std::to_string(descent_candidate_cap));
    r.config("datastore", datastore_path.empty() ? "none" : datastore_path);
    r.config("curves", curves_path.empty() ? "none" : curves_path);
  }
};

std::vector<CurveQ> read_curve_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open curve file '" + path + "'");
  return parse_curves(in);
}

// A curve argument is a label from --curves or a coefficient list "[a1,a2,a3,a4,a6]".
CurveQ resolve_curve(const std::string& arg, const WorkbenchConfig& cfg) {
  std::string t = boost::algorithm::trim_copy(arg);
  if (!t.empty() && (t.front() == '[' || t.find(',') != std::string::npos)) {
    if (t.front() == '[') {
      if (t.back() != ']') throw InvalidInput("unterminated coefficient list '" + arg + "'");
      t = t.substr(1, t.size() - 2);
    }
    std::vector<std::string> parts;
    boost::algorithm::split(parts, t, boost::is_any_of(","));
    if (parts.size() != 5) throw InvalidInput("expected five coefficients in '" + arg + "'");
    std::vector<Rational> a;
    for (const auto& p : parts) a.push_back(parse_rational(boost::algorithm::trim_copy(p)));
    return CurveQ(a[0], a[1], a[2], a[3], a[4]);
  }
  if (cfg.curves_path.empty()) throw InvalidInput("curve label '" + arg + "' given without --curves");
  for (const auto& E : read_curve_file(cfg.curves_path)) {
    if (E.label() == t) return E;
  }
  throw InvalidInput("no curve labelled '" + t + "' in " + cfg.curves_path);
}

Integer parse_twist(const std::string& s) {
  const Rational r = parse_rational(s);
  if (denominator(r) != 1) throw InvalidInput("twist must be an integer: '" + s + "'");
  const Integer d = numerator(r);
  if (d == 0 || !is_squarefree(d)) throw InvalidInput("twist must be a nonzero squarefree integer: '" + s + "'");
  return d;
}

std::optional<Datastore> load_store(const WorkbenchConfig& cfg) {
  if (cfg.datastore_path.empty()) return std::nullopt;
  if (cfg.curves_path.empty()) return Datastore::load_file(cfg.datastore_path);
  std::set<std::string> labels;
  for (const auto& E : read_curve_file(cfg.curves_path)) labels.insert(E.label());
  return Datastore::load_file(cfg.datastore_path, &labels);
}

std::string curve_record(const CurveQ& E) { return E.label().empty() ? E.str() : E.label() + " " + E.str(); }

// ---------------------------------------------------------------- verbs

Report cmd_classify(const std::string& path, const WorkbenchConfig& cfg) {
  Report r("classify " + path);
  cfg.stamp(r);
  const auto curves = read_curve_file(path);
  r.record("count", static_cast<long long>(curves.size()));
  std::vector<TwoTorsionFieldInfo> info;
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < curves.size(); ++i) {
    info.push_back(classify_two_torsion_field(curves[i]));
    const auto& t = info.back();
    std::string roots;
    for (const auto& e : t.rational_roots) roots += (roots.empty() ? "" : ",") + to_string(e);
    const std::string p = "curve." + std::to_string(i) + ".";
    r.record(p + "name", curves[i].name());
    r.record(p + "coefficients", curves[i].str());
    r.record(p + "cubic", t.cubic.str());
    r.record(p + "degree", t.degree);
    r.record(p + "factorization", to_string(t.factorization));
    r.record(p + "disc_class", to_string(t.disc_square_class));
    r.record(p + "rational_roots", roots.empty() ? "none" : roots);
    rows.push_back({curves[i].name(), t.cubic.str(), std::to_string(t.degree), to_string(t.factorization),
                    to_string(t.disc_square_class), roots.empty() ? "-" : roots});
  }
  if (curves.empty()) return r;
  r.table("2-torsion fields", {"curve", "2-division cubic", "[M:Q]", "splitting", "disc class", "roots"}, rows);
  std::vector<std::string> header{"M = M'"};
  for (const auto& E : curves) header.push_back(E.name());
  std::vector<std::vector<std::string>> matrix;
  for (std::size_t i = 0; i < curves.size(); ++i) {
    std::vector<std::string> row{curves[i].name()};
    std::string bits;
    for (std::size_t j = 0; j < curves.size(); ++j) {
      const bool same = same_two_torsion_field(curves[i], curves[j]);
      row.push_back(same ? "=" : ".");
      bits += same ? '1' : '0';
    }
    r.record("same_field." + std::to_string(i), bits);
    matrix.push_back(row);
  }
  r.table("Equal 2-torsion fields", header, matrix);
  return r;
}

Report cmd_selmer(const std::string& curve, const std::string& d_arg, const std::string& variant_arg,
                  const std::string& backend_arg, const WorkbenchConfig& cfg) {
  const CurveQ E = resolve_curve(curve, cfg);
  const Integer d = parse_twist(d_arg);
  const SelmerVariant variant = SelmerVariant::parse(variant_arg);
  const Backend backend = parse_backend(backend_arg);
  const auto store = load_store(cfg);
  Report r("selmer " + curve + " " + to_string(d) + " --variant " + variant.str() + " --backend " + to_string(backend));
  cfg.stamp(r);
  r.record("curve.record", curve_record(E));
  const SelmerBasis sel = selmer_group(E, d, backend, store ? &*store : nullptr, variant, cfg.descent());
  add_selmer(r, sel, "selmer.");
  if (variant.mode() == SelmerVariant::Mode::strict || variant.mode() == SelmerVariant::Mode::relaxed) {
    add_ptd(r, verify_ptd(E, d, variant.q(), cfg.descent()), "ptd.");
  }
  return r;
}

Report cmd_verify_ptd(const std::string& curve, std::uint64_t q, const std::string& d_arg, const WorkbenchConfig& cfg) {
  const CurveQ E = resolve_curve(curve, cfg);
  const Integer d = parse_twist(d_arg);
  Report r("verify-ptd " + curve + " " + std::to_string(q) + " " + to_string(d));
  cfg.stamp(r);
  r.record("curve.record", curve_record(E));
  const PtdReport p = verify_ptd(E, d, q, cfg.descent());
  add_ptd(r, p, "ptd.");
  r.table("Strict, classical and relaxed Selmer ranks at q = " + std::to_string(q),
          {"strict", "classical", "relaxed", "dim res_q(classical)", "dim res_q(relaxed)", "isotropic", "ok"},
          {{std::to_string(p.strict), std::to_string(p.classical), std::to_string(p.relaxed),
            std::to_string(p.res_classical_dim), std::to_string(p.res_relaxed_dim),
            p.res_relaxed_isotropic ? "yes" : "no", p.ok ? "yes" : "no"}});
  return r;
}

std::optional<TheoremCase> parse_case(const std::string& s) {
  if (s == "auto") return std::nullopt;
  if (s == "1") return TheoremCase::case1;
  if (s == "2") return TheoremCase::case2;
  if (s == "3") return TheoremCase::case3;
  throw InvalidInput("unknown case '" + s + "' (auto, 1, 2, 3)");
}

void add_chain(Report& r, const std::vector<TwistCertificate>& chain) {
  r.record("rounds", static_cast<long long>(chain.size()));
  for (std::size_t i = 0; i < chain.size(); ++i) add_certificate(r, chain[i], "round." + std::to_string(i) + ".");
}

Report cmd_find_twist(const std::string& e_arg, const std::string& a_arg, const std::string& case_arg, int gap,
                      const WorkbenchConfig& cfg) {
  const CurveQ E = resolve_curve(e_arg, cfg);
  const CurveQ A = resolve_curve(a_arg, cfg);
  const auto forced = parse_case(case_arg);
  const TheoremCase routed = classify_pair(E, A);
  const TheoremCase which = forced.value_or(routed);
  if (gap < 0) throw InvalidInput("--gap must be nonnegative");
  const auto store = load_store(cfg);
  if (which == TheoremCase::case1 && !store) throw InvalidInput("case 1 needs ingested ranks (--datastore)");

  Report r("find-twist " + e_arg + " " + a_arg + " --case " + case_arg + " --gap " + std::to_string(gap));
  cfg.stamp(r);
  r.record("E.record", curve_record(E));
  r.record("A.record", curve_record(A));
  r.record("routed_case", static_cast<long long>(routed));
  r.record("case", static_cast<long long>(which));
  const SearchBounds b = cfg.bounds();
  if (gap > 0) {
    add_chain(r, gap_amplifier(E, A, gap, b, store ? &*store : nullptr, which));
    return r;
  }
  TwistCertificate c;
  switch (which) {
    case TheoremCase::case1: c = demo_case1(E, A, *store, b); break;
    case TheoremCase::case2: c = demo_case2(E, A, b); break;
    case TheoremCase::case3: c = demo_case3(E, A, b); break;
  }
  add_chain(r, {c});
  return r;
}

Report cmd_parity_audit(const std::string& curve, int count, const WorkbenchConfig& cfg) {
  const CurveQ E = resolve_curve(curve, cfg);
  if (count < 0) throw InvalidInput("--count must be nonnegative");
  const auto store = load_store(cfg);
  Report r("parity-audit " + curve + " --count " + std::to_string(count));
  cfg.stamp(r);
  r.record("curve.record", curve_record(E));
  int passed = 0, failed = 0;
  std::vector<std::vector<std::string>> rows;
  Integer d = 1;
  for (int found = 0; found < count;) {
    ++d;
    if (d > cfg.twist_bound) throw NotFound("only " + std::to_string(found) + " admissible twists up to " +
                                            std::to_string(cfg.twist_bound));
    if (!is_squarefree(d) || !is_admissible_twist(E, d)) continue;
    const ParityReport p = kramer_parity_check(E, d, cfg.descent(), store ? &*store : nullptr);
    add_parity(r, p, "twist." + std::to_string(found) + ".");
    (p.ok ? passed : failed)++;
    rows.push_back({to_string(d), std::to_string(p.rank_E), std::to_string(p.rank_twist), std::to_string(p.sum_h),
                    p.ok ? "pass" : "FAIL"});
    ++found;
  }
  r.record("passed", passed);
  r.record("failed", failed);
  if (!rows.empty()) r.table("Parity audit of " + E.name(), {"d", "r2(E)", "r2(E^d)", "sum h", "result"}, rows);
  return r;
}

Report cmd_lagrangian(int n, const WorkbenchConfig& cfg) {
  if (n < 1 || n > 4) throw InvalidInput("lagrangian: n must lie in 1..4 for exhaustive enumeration");
  Report r("lagrangian " + std::to_string(n));
  cfg.stamp(r);
  const auto space = standard_metabolic(static_cast<std::size_t>(n));
  std::vector<F2Vector> gens;
  for (int i = 0; i < n; ++i) gens.push_back(F2Vector::unit(2 * n, 2 * i));
  const auto x = F2Subspace::span(2 * n, gens);
  const std::size_t count = count_disjoint_lagrangians(space, x);
  const std::size_t expected = std::size_t{1} << (n * (n - 1) / 2);
  r.record("n", n);
  r.record("lagrangians", static_cast<long long>(space.lagrangians().size()));
  r.record("disjoint_from_x", static_cast<long long>(count));
  r.record("expected", static_cast<long long>(expected));
  r.record("match", count == expected ? "yes" : "no");
  r.table("Lagrangians of H^" + std::to_string(n) + " meeting x = <e0, e2, ...> trivially",
          {"n", "counted", "2^(n(n-1)/2)", "match"},
          {{std::to_string(n), std::to_string(count), std::to_string(expected), count == expected ? "yes" : "no"}});
  return r;
}

Report cmd_ingest(const std::string& path, const std::string& output, const WorkbenchConfig& cfg) {
  WorkbenchConfig c = cfg;
  c.datastore_path = path;
  const Datastore store = *load_store(c);
  Report r("ingest " + path);
  cfg.stamp(r);
  r.record("source", store.source());
  r.record("records", static_cast<long long>(store.size()));
  std::ostringstream dump;
  store.dump(dump);
  std::istringstream lines(dump.str());
  std::string line;
  std::vector<std::vector<std::string>> rows;
  for (int i = 0; std::getline(lines, line); ++i) {
    r.record("record." + std::to_string(i), line);
    std::vector<std::string> f;
    boost::algorithm::split(f, line, boost::is_any_of(":"));
    for (auto& s : f) boost::algorithm::trim(s);
    rows.push_back(f);
  }
  r.table("Ingested 2-Selmer ranks", {"label", "d", "rank"}, rows);
  if (!output.empty()) {
    std::ofstream out(output);
    if (!out) throw InvalidInput("cannot write '" + output + "'");
    store.dump(out);
    r.record("written", output);
  }
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"2-Selmer groups of quadratic twists and rank-changing twist searches"};
  app.require_subcommand(1);
  app.fallthrough();
  WorkbenchConfig cfg;
  app.add_option("--bound", cfg.prime_bound, "Prime search bound")->capture_default_str();
  app.add_option("--twist-bound", cfg.twist_bound, "Largest |d| for a constructed twist")->capture_default_str();
  app.add_option("--seed", cfg.sampling_seed, "Sampling seed")->capture_default_str();
  app.add_option("--cap", cfg.descent_candidate_cap, "Largest descent ambient dimension")->capture_default_str();
  app.add_option("--datastore", cfg.datastore_path, "Ingested rank file");
  app.add_option("--curves", cfg.curves_path, "Curve file used to resolve labels");
  app.add_option("--format", cfg.output_format, "table or records")
      ->check(CLI::IsMember({"table", "records"}))
      ->capture_default_str();

  std::function<Report()> run;

  auto* classify = app.add_subcommand("classify", "2-torsion field of every curve in a file");
  std::string classify_path;
  classify->add_option("file", classify_path)->required();
  classify->callback([&] { run = [&] { return cmd_classify(classify_path, cfg); }; });

  auto* sel = app.add_subcommand("selmer", "2-Selmer group of a twist");
  std::string sel_curve, sel_d = "1", sel_variant = "classical", sel_backend = "auto";
  sel->add_option("curve", sel_curve)->required();
  sel->add_option("d", sel_d)->capture_default_str();
  sel->add_option("--variant", sel_variant)->capture_default_str();
  sel->add_option("--backend", sel_backend)->capture_default_str();
  sel->callback([&] { run = [&] { return cmd_selmer(sel_curve, sel_d, sel_variant, sel_backend, cfg); }; });

  auto* ptd = app.add_subcommand("verify-ptd", "Strict/relaxed rank identity at q");
  std::string ptd_curve, ptd_d = "1";
  std::uint64_t ptd_q = 0;
  ptd->add_option("curve", ptd_curve)->required();
  ptd->add_option("q", ptd_q)->required();
  ptd->add_option("d", ptd_d)->capture_default_str();
  ptd->callback([&] { run = [&] { return cmd_verify_ptd(ptd_curve, ptd_q, ptd_d, cfg); }; });

  auto* find = app.add_subcommand("find-twist", "Search for a twist separating two 2-Selmer ranks");
  std::string find_e, find_a, find_case = "auto";
  int find_gap = 0;
  find->add_option("E", find_e)->required();
  find->add_option("A", find_a)->required();
  find->add_option("--case", find_case)->capture_default_str();
  find->add_option("--gap", find_gap, "Iterate until the rank gap has grown by this much")->capture_default_str();
  find->callback([&] { run = [&] { return cmd_find_twist(find_e, find_a, find_case, find_gap, cfg); }; });

  auto* parity = app.add_subcommand("parity-audit", "Parity check over admissible twists");
  std::string parity_curve;
  int parity_count = 25;
  parity->add_option("curve", parity_curve)->required();
  parity->add_option("--count", parity_count)->capture_default_str();
  parity->callback([&] { run = [&] { return cmd_parity_audit(parity_curve, parity_count, cfg); }; });

  auto* lag = app.add_subcommand("lagrangian", "Count Lagrangians disjoint from a fixed one");
  int lag_n = 0;
  lag->add_option("n", lag_n)->required();
  lag->callback([&] { run = [&] { return cmd_lagrangian(lag_n, cfg); }; });

  auto* ingest = app.add_subcommand("ingest", "Validate and normalise a rank file");
  std::string ingest_path, ingest_out;
  ingest->add_option("file", ingest_path)->required();
  ingest->add_option("--output", ingest_out, "Write the normalised records here");
  ingest->callback([&] { run = [&] { return cmd_ingest(ingest_path, ingest_out, cfg); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    cfg.validate();
    const Report r = run();
    std::cout << r.render(parse_output_format(cfg.output_format));
    return 0;
  } catch (const PartialChain& e) {
    Report r("find-twist (partial)");
    cfg.stamp(r);
    add_chain(r, e.chain());
    std::cout << r.render(parse_output_format(cfg.output_format));
    std::cerr << "not found: " << e.what() << '\n';
    return 2;
  } catch (const MissingIngestedRank& e) {
    std::cerr << "missing ingested rank: " << e.what() << "\nadd this record: " << e.record() << '\n';
    return 2;
  } catch (const NotFound& e) {
    std::cerr << "not found: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error at line " << e.line() << ": " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
