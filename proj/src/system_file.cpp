#include "dindex/system_file.hpp"

#include "dindex/error.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace dindex {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(Errc::InvalidSystemFile, msg); }

void allow_keys(const Json& obj, const std::string& where, std::initializer_list<const char*> keys) {
  if (!obj.is_object()) bad(where + " must be an object");
  for (const auto& [k, v] : obj.items()) {
    if (std::none_of(keys.begin(), keys.end(), [&](const char* x) { return k == x; })) {
      bad("unexpected key \"" + k + "\" in " + where);
    }
  }
}

std::vector<std::string> string_list(const Json& v, const std::string& where) {
  if (!v.is_array()) bad(where + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& x : v) {
    if (!x.is_string()) bad(where + " must be an array of strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

std::map<std::string, std::string> string_map(const Json& v, const std::string& where) {
  if (!v.is_object()) bad(where + " must be an object of strings");
  std::map<std::string, std::string> out;
  for (const auto& [k, x] : v.items()) {
    if (!x.is_string()) bad(where + "." + k + " must be a string");
    out[k] = x.get<std::string>();
  }
  return out;
}

DifferenceField field_from(const Json& v, const std::string& where) {
  allow_keys(v, where, {"generators", "sigma"});
  std::vector<std::string> gens;
  if (v.contains("generators")) gens = string_list(v["generators"], where + ".generators");
  std::map<std::string, std::string> sigma;
  if (v.contains("sigma")) sigma = string_map(v["sigma"], where + ".sigma");
  return make_field(gens, sigma);
}

}  // namespace

SystemFile parse_system_json(const Json& doc) {
  allow_keys(doc, "system file", {"coefficient_field", "variables", "equations", "specialization"});
  if (!doc.contains("variables")) bad("missing \"variables\"");
  if (!doc.contains("equations")) bad("missing \"equations\"");
  DifferenceField k;
  if (doc.contains("coefficient_field")) k = field_from(doc["coefficient_field"], "coefficient_field");
  SystemFile out{make_system(std::move(k), string_list(doc["variables"], "variables"),
                             string_list(doc["equations"], "equations")),
                 std::nullopt};
  if (doc.contains("specialization")) {
    const Json& sp = doc["specialization"];
    allow_keys(sp, "specialization", {"target_field", "assign"});
    if (!sp.contains("assign")) bad("specialization needs \"assign\"");
    DifferenceField l;
    if (sp.contains("target_field")) l = field_from(sp["target_field"], "specialization.target_field");
    out.specialization = make_specialization(out.system, std::move(l), string_map(sp["assign"], "specialization.assign"));
    validate_specialization(out.system, *out.specialization);
  }
  return out;
}

SystemFile load_system_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    bad(path + " is not valid JSON: " + e.what());
  }
  return parse_system_json(doc);
}

const Specialization& require_specialization(const SystemFile& f) {
  if (!f.specialization) bad("this command needs a \"specialization\" section");
  return *f.specialization;
}

Json example_system_json() {
  Json doc;
  doc["coefficient_field"] = {{"generators", Json::array()}, {"sigma", Json::object()}};
  doc["variables"] = {"y1", "y2"};
  doc["equations"] = {"y1@2 - y1", "y1@1 - y2", "y1*y2 - 1"};
  Json target;
  target["generators"] = {"t"};
  target["sigma"] = {{"t", "1/t"}};
  Json assign;
  assign["y1"] = "t";
  assign["y2"] = "1/t";
  doc["specialization"] = {{"target_field", target}, {"assign", assign}};
  return doc;
}

std::string example_system_text() { return example_system_json().dump(2) + "\n"; }

namespace {

Json i_invariance_json(const IInvarianceReport& r) {
  Json j;
  j["i_values"] = r.i_values;
  j["kmax"] = r.kmax;
  Json mu = Json::object();
  for (const auto& [i, v] : r.mu) mu[std::to_string(i)] = v;
  j["mu"] = mu;
  j["mismatches"] = r.mismatches;
  return j;
}

}  // namespace

Json report_to_json(const IndexReport& rep) {
  Json j;
  j["n"] = rep.n;
  j["r"] = rep.r;
  j["e"] = rep.e;
  j["d"] = rep.d;
  j["s"] = rep.s;
  j["rho"] = rep.rho;
  j["mu"] = rep.mu;
  j["omega"] = rep.omega;
  j["a"] = rep.a;
  j["sigma_dim"] = rep.sigma_dim;
  j["ord_p"] = rep.ord_p;
  j["regularity_bound"] = rep.regularity_bound;
  j["ranks_Jk"] = rep.ranks_Jk;
  j["ranks_Jki"] = rep.ranks_Jki;
  j["engine"] = engine_name(rep.options.engine);
  j["warnings"] = rep.warnings;
  j["psi"] = rep.psi;
  j["psi_polynomial"] = affine_text(rep.d, rep.s);
  j["rank_polynomial"] = affine_text(rep.rank_slope, rep.rank_intercept);
  j["mu_tail"] = affine_text(rep.d + static_cast<long>(rep.r) - static_cast<long>(rep.n), rep.a);
  j["i"] = rep.i;
  j["kmax_psi"] = rep.kmax_psi;
  j["kmax_mu"] = rep.kmax_mu;
  j["onset_bounds"] = {{"psi", rep.psi_onset_bound}, {"mu", rep.mu_onset_bound}, {"rho_plus_e", rep.rho + rep.e}};
  if (rep.options.engine == Engine::Probabilistic) {
    j["trials"] = rep.options.trials;
    j["seed"] = rep.options.seed;
  }
  if (rep.i_invariance) j["i_invariance"] = i_invariance_json(*rep.i_invariance);
  j["violations"] = rep.violations;
  j["caveats"] = rep.caveats;
  return j;
}

namespace {

std::string pad(const std::string& s, std::size_t w) { return s + std::string(w > s.size() ? w - s.size() : 0, ' '); }

std::string join(const std::vector<long>& v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) out += (k ? "," : "") + std::to_string(v[k]);
  return out;
}

}  // namespace

std::string grid_text(const std::vector<std::vector<std::string>>& cells) {
  std::vector<std::size_t> width;
  for (const auto& row : cells) {
    if (width.size() < row.size()) width.resize(row.size(), 0);
    for (std::size_t j = 0; j < row.size(); ++j) width[j] = std::max(width[j], row[j].size());
  }
  std::ostringstream os;
  for (const auto& row : cells) {
    std::string line;
    for (std::size_t j = 0; j < row.size(); ++j) {
      line += std::string(width[j] - row[j].size(), ' ') + row[j];
      if (j + 1 < row.size()) line += "  ";
    }
    os << line << "\n";
  }
  return os.str();
}

Json grid_json(const std::vector<std::vector<std::string>>& cells) {
  Json j = Json::array();
  for (const auto& row : cells) j.push_back(row);
  return j;
}

std::string report_to_text(const IndexReport& rep) {
  std::ostringstream os;
  os << "system: n=" << rep.n << " r=" << rep.r << " e=" << rep.e << "  engine: " << engine_name(rep.options.engine);
  if (rep.options.engine == Engine::Probabilistic) os << " (trials " << rep.options.trials << ", seed " << rep.options.seed << ")";
  os << "\n\n";
  std::vector<std::vector<std::string>> table{
      {"k", "rank(J_k)", "psi(k)", "rank(J_{k," + std::to_string(rep.i) + "})", "mu_k"}};
  const std::size_t rows = std::max(rep.psi.size(), rep.mu.size());
  for (std::size_t k = 0; k < rows; ++k) {
    auto at = [k](const auto& v) { return k < v.size() ? std::to_string(v[k]) : std::string("-"); };
    table.push_back({std::to_string(k), at(rep.ranks_Jk), at(rep.psi), at(rep.ranks_Jki), at(rep.mu)});
  }
  os << grid_text(table) << "\n";
  const long slope = rep.d + static_cast<long>(rep.r) - static_cast<long>(rep.n);
  os << pad("psi(k)", 28) << affine_text(rep.d, rep.s) << " for k >= " << rep.rho << "\n";
  os << pad("rank(J_k)", 28) << affine_text(rep.rank_slope, rep.rank_intercept) << " for k >= " << rep.rho << "\n";
  os << pad("mu_k", 28) << affine_text(slope, rep.a) << " for k >= " << rep.omega << "\n";
  os << pad("d = sigma-dim", 28) << rep.d << "\n";
  os << pad("s", 28) << rep.s << "\n";
  os << pad("rho", 28) << rep.rho << "\n";
  os << pad("omega (difference index)", 28) << rep.omega << "\n";
  os << pad("a", 28) << rep.a << "\n";
  os << pad("ord", 28) << rep.ord_p << "\n";
  os << pad("regularity bound", 28) << rep.regularity_bound << "\n";
  os << pad("onset bounds", 28) << "psi " << rep.psi_onset_bound << ", mu " << rep.mu_onset_bound << ", rho+e "
     << rep.rho + rep.e << "\n";
  if (rep.i_invariance) {
    os << "\ni-invariance, k <= " << rep.i_invariance->kmax << ":\n";
    for (const auto& [i, v] : rep.i_invariance->mu) os << "  i=" << i << ": " << join(v) << "\n";
    if (rep.i_invariance->mismatches.empty()) os << "  all equal\n";
  }
  if (!rep.warnings.empty()) {
    os << "\nwarnings:\n";
    for (const auto& w : rep.warnings) os << "  - " << w << "\n";
  }
  if (!rep.violations.empty()) {
    os << "\nviolations:\n";
    for (const auto& v : rep.violations) os << "  - " << v << "\n";
  }
  os << "\ncaveats:\n";
  for (const auto& c : rep.caveats) os << "  - " << c << "\n";
  return os.str();
}

namespace {

Json bound_json(const BoundValue& b, std::size_t digit_limit) {
  Json j;
  j["N"] = b.N;
  j["m"] = b.m;
  j["degree_bound"] = b.symbolic;
  if (b.exact) {
    const std::string s = b.exact->get_str();
    j["digits"] = s.size();
    if (s.size() <= digit_limit) j["exact"] = s;
  }
  if (b.log10_value) j["log10"] = *b.log10_value;
  return j;
}

std::string bound_text(const BoundValue& b, std::size_t digit_limit) {
  std::ostringstream os;
  os << "  N = " << b.N << "\n  m = (N+e+1)n = " << b.m << "\n  degree bound = " << b.symbolic << "\n";
  if (b.exact) {
    const std::string s = b.exact->get_str();
    if (s.size() <= digit_limit) os << "  exact value (" << s.size() << " digits) = " << s << "\n";
    else os << "  exact value has " << s.size() << " digits (--full-digits prints it)\n";
  } else if (b.log10_value) {
    os << "  log10 of the bound = " << std::setprecision(6) << *b.log10_value << "\n";
  }
  return os.str();
}

}  // namespace

Json membership_to_json(const MembershipBound& mb, std::size_t digit_limit) {
  Json j;
  j["D"] = mb.D;
  j["ord_f"] = mb.ord_f;
  j["hypothesis_met"] = mb.hypothesis_met;
  j["hypothesis"] = mb.hypothesis;
  j["bound"] = mb.main ? bound_json(*mb.main, digit_limit) : Json(nullptr);
  j["fallback"] = bound_json(mb.fallback, digit_limit);
  return j;
}

std::string membership_to_text(const MembershipBound& mb, std::size_t digit_limit) {
  std::ostringstream os;
  os << "D = " << mb.D << ", ord(f) = " << mb.ord_f << "\n";
  os << "hypothesis: " << mb.hypothesis << (mb.hypothesis_met ? "" : " (not met)") << "\n";
  if (mb.main) os << "\nbound from the difference index:\n" << bound_text(*mb.main, digit_limit);
  os << "\nfallback from the onset bound e(min{r,n}+2):\n" << bound_text(mb.fallback, digit_limit);
  return os.str();
}

Json lemma_lab_to_json(const LemmaLabReport& rep) {
  Json j;
  j["kind"] = std::string(1, rep.options.kind);
  j["t"] = rep.options.t;
  j["p"] = rep.options.p;
  j["q"] = rep.options.q;
  j["trials"] = rep.options.trials;
  j["seed"] = rep.options.seed;
  j["bound"] = rep.bound;
  j["kmax"] = rep.kmax;
  Json hist = Json::object();
  for (const auto& [onset, count] : rep.onset_histogram) hist[std::to_string(onset)] = count;
  j["onset_histogram"] = hist;
  j["failures"] = rep.failures;
  Json fails = Json::array();
  for (const auto& tr : rep.trials) {
    if (!tr.ok) fails.push_back({{"trial", tr.trial}, {"ranks", tr.ranks}, {"dump", tr.counterexample}});
  }
  j["counterexamples"] = fails;
  return j;
}

std::string lemma_lab_to_text(const LemmaLabReport& rep) {
  std::ostringstream os;
  os << rep.options.kind << "_k with t=" << rep.options.t << " p=" << rep.options.p << " q=" << rep.options.q << ": "
     << rep.options.trials << " trials, seed " << rep.options.seed << "\n";
  os << "onset bound " << rep.bound << ", k <= " << rep.kmax << "\n";
  os << "onset histogram:";
  for (const auto& [onset, count] : rep.onset_histogram) os << " " << onset << ":" << count;
  os << "\nfailures: " << rep.failures << "\n";
  for (const auto& tr : rep.trials) {
    if (!tr.ok) os << "\ntrial " << tr.trial << ":\n" << tr.counterexample;
  }
  return os.str();
}

}  // namespace dindex
