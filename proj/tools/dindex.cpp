#include "dindex/error.hpp"
#include "dindex/index_core.hpp"
#include "dindex/oracle.hpp"
#include "dindex/system_file.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

using namespace dindex;

namespace {

struct EngineFlags {
  bool probabilistic = false;
  unsigned trials = 3;
  std::uint64_t seed = 0;
  unsigned threads = 0;

  void attach(CLI::App* cmd) {
    cmd->add_flag("--probabilistic", probabilistic, "Rank at random points instead of exactly");
    cmd->add_option("--trials", trials, "Random points per matrix")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", seed, "Base seed for random points");
    cmd->add_option("--threads", threads, "Worker threads, 0 = all cores");
  }

  RankOptions options() const {
    RankOptions o;
    o.engine = probabilistic ? Engine::Probabilistic : Engine::Exact;
    o.trials = trials;
    o.seed = seed;
    o.threads = threads;
    return o;
  }
};

void print_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

int finish_report(const IndexReport& rep, bool json) {
  if (json) print_json(report_to_json(rep));
  else std::cout << report_to_text(rep);
  if (!rep.violations.empty()) {
    std::cerr << errc_name(Errc::InvariantViolation) << ": " << rep.violations.front();
    if (rep.violations.size() > 1) std::cerr << " (and " << rep.violations.size() - 1 << " more)";
    std::cerr << "\n";
    return exit_code_for(Errc::InvariantViolation);
  }
  return 0;
}

std::vector<std::vector<std::string>> symbolic_cells(const SymbolicMatrix& m, const SystemSpec& s) {
  std::vector<std::vector<std::string>> out(m.rows(), std::vector<std::string>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = s.to_string(m(i, j));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Difference index analysis of algebraic difference systems"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_help_all_flag("--help-all");

  // analyze
  std::string path;
  bool json = false;
  std::optional<unsigned> kmax;
  std::optional<unsigned> index_i;
  std::vector<unsigned> check_i;
  EngineFlags analyze_engine;
  auto* analyze = app.add_subcommand("analyze", "Rank profiles, difference index and derived invariants");
  analyze->add_option("file", path, "System file")->required();
  analyze->add_option("--kmax", kmax, "Largest k for both profiles");
  analyze->add_option("--i", index_i, "Level i of J_{k,i} (default e-1)");
  analyze->add_option("--check-i-invariance", check_i, "Compare mu_{k,i} for these i, k <= rho+e")->delimiter(',');
  analyze->add_flag("--json", json, "Emit JSON");
  analyze_engine.attach(analyze);

  // ranks
  std::string dump;
  std::optional<unsigned> dump_k;
  bool symbolic = false;
  EngineFlags ranks_engine;
  auto* ranks = app.add_subcommand("ranks", "Ranks of J_k and J_{k,i}, optionally dumping one matrix");
  ranks->add_option("file", path, "System file")->required();
  ranks->add_option("--kmax", kmax, "Largest k");
  ranks->add_option("--i", index_i, "Level i of J_{k,i} (default e-1)");
  ranks->add_option("--dump", dump, "Matrix to print")->check(CLI::IsMember({"Jk", "Jki"}));
  ranks->add_option("--k", dump_k, "k of the dumped matrix");
  ranks->add_flag("--symbolic", symbolic, "Dump entries before specialization");
  ranks->add_flag("--json", json, "Emit JSON");
  ranks_engine.attach(ranks);

  // membership
  std::optional<long> ord_f;
  std::string poly;
  std::optional<unsigned> degree;
  unsigned threshold = kExactDegreeThreshold;
  EngineFlags member_engine;
  auto* membership = app.add_subcommand("membership", "Order and degree bounds for ideal membership");
  membership->add_option("file", path, "System file")->required();
  auto* ord_opt = membership->add_option("--ord-f", ord_f, "Order of f");
  auto* poly_opt = membership->add_option("--poly", poly, "The polynomial f; its order is used");
  ord_opt->excludes(poly_opt);
  membership->add_option("--degree", degree, "Degree bound D (default: maximal degree of F)");
  membership->add_option("--exact-threshold", threshold, "Largest m for an exact degree bound");
  bool full_digits = false;
  membership->add_flag("--full-digits", full_digits, "Print exact bounds of any length");
  membership->add_option("--kmax", kmax, "Largest k for both profiles");
  membership->add_flag("--json", json, "Emit JSON");
  member_engine.attach(membership);

  // lemma-lab
  LemmaLabOptions lab;
  std::string kind = "M";
  std::string lab_sigma = "t+1";
  std::string dump_dir;
  auto* lemma = app.add_subcommand("lemma-lab", "Random twisted block families M_k / N_k");
  lemma->add_option("--kind", kind, "M or N")->check(CLI::IsMember({"M", "N"}));
  lemma->add_option("--t", lab.t, "Number of blocks")->check(CLI::PositiveNumber);
  lemma->add_option("--p", lab.p, "Block rows")->check(CLI::PositiveNumber);
  lemma->add_option("--q", lab.q, "Block columns")->check(CLI::PositiveNumber);
  lemma->add_option("--trials", lab.trials, "Random instances");
  lemma->add_option("--seed", lab.seed, "Base seed");
  lemma->add_option("--sigma", lab_sigma, "Image of t in Q(t)");
  lemma->add_option("--threads", lab.threads, "Worker threads, 0 = all cores");
  lemma->add_option("--dump-dir", dump_dir, "Write counterexamples here");
  lemma->add_flag("--json", json, "Emit JSON");

  // oracle
  bool force = false;
  unsigned oi = 0, oh = 0, ohmax = 6, ok = 1;
  auto* oracle = app.add_subcommand("oracle", "Groebner basis checks on the truncations Delta_k");
  oracle->add_option("file", path, "System file")->required();
  oracle->add_flag("--force", force, "Ignore the variable limit");
  oracle->add_flag("--json", json, "Emit JSON");
  oracle->require_subcommand(1);
  auto* elim = oracle->add_subcommand("elim", "Basis of Delta_h cap A_i");
  elim->add_option("--i", oi, "Retained level")->required();
  elim->add_option("--h", oh, "Truncation level")->required();
  auto* scan = oracle->add_subcommand("scan", "Least h where Delta_h cap A_i stabilizes");
  scan->add_option("--i", oi, "Retained level")->required();
  scan->add_option("--hmax", ohmax, "Largest h tried");
  auto* member = oracle->add_subcommand("member", "Is f in Delta_h?");
  member->add_option("--poly", poly, "The polynomial f")->required();
  member->add_option("--h", oh, "Truncation level")->required();
  auto* trdeg = oracle->add_subcommand("trdeg", "Dimension of A_{k-1+e}/Delta_k");
  trdeg->add_option("--k", ok, "Truncation level")->required();

  // example
  std::string output;
  auto* example = app.add_subcommand("example", "Write the bundled example system file");
  example->add_option("--output,-o", output, "Destination (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*example) {
      const std::string text = example_system_text();
      if (output.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(output, std::ios::binary);
        if (!out) throw Error(Errc::InvalidArgument, "cannot write " + output);
        out << text;
      }
      return 0;
    }

    if (*lemma) {
      lab.kind = kind[0];
      lab.field = make_field({"t"}, {{"t", lab_sigma}});
      const LemmaLabReport rep = lemma_lab(lab);
      if (json) print_json(lemma_lab_to_json(rep));
      else std::cout << lemma_lab_to_text(rep);
      if (rep.failures == 0) return 0;
      if (!dump_dir.empty()) {
        std::filesystem::create_directories(dump_dir);
        for (const auto& tr : rep.trials) {
          if (tr.ok) continue;
          std::ofstream(std::filesystem::path(dump_dir) / ("trial_" + std::to_string(tr.trial) + ".txt"))
              << tr.counterexample;
        }
      }
      throw Error(Errc::OnsetExceedsBound, std::to_string(rep.failures) + " of " + std::to_string(lab.trials) +
                                               " instances exceed the onset bound " + std::to_string(rep.bound));
    }

    const SystemFile file = load_system_file(path);
    const SystemSpec& sys = file.system;

    if (*analyze) {
      AnalyzeOptions opt;
      opt.rank = analyze_engine.options();
      opt.kmax = kmax;
      opt.i = index_i;
      opt.check_i = check_i;
      return finish_report(difference_index(sys, require_specialization(file), opt), json);
    }

    if (*ranks) {
      const Specialization& sp = require_specialization(file);
      const RankOptions ro = ranks_engine.options();
      const unsigned i = index_i.value_or(sys.e - 1);
      if (!dump.empty()) {
        if (!dump_k || *dump_k == 0) throw Error(Errc::InvalidArgument, "--dump needs --k >= 1");
        const SymbolicMatrix m = dump == "Jk" ? build_Jk(sys, *dump_k) : build_Jki(sys, *dump_k, i);
        Evaluator ev(sys, sp);
        const EvaluatedMatrix em = ev.evaluate(m);
        const auto cells = symbolic ? symbolic_cells(m, sys) : entry_strings(em, sp.target);
        const std::size_t rk = rank_with(em, ro, 0);
        const std::string name = dump == "Jk" ? "J_" + std::to_string(*dump_k)
                                              : "J_{" + std::to_string(*dump_k) + "," + std::to_string(i) + "}";
        if (json) {
          print_json({{"matrix", name}, {"rows", m.rows()}, {"cols", m.cols()}, {"rank", rk},
                      {"symbolic", symbolic}, {"entries", grid_json(cells)}});
        } else {
          std::cout << name << " (" << m.rows() << "x" << m.cols() << ", rank " << rk << ")\n" << grid_text(cells);
        }
        return 0;
      }
      const unsigned top = kmax.value_or(mu_bound(sys) + 2);
      const auto jk = ranks_Jk(sys, sp, ro, top);
      const auto jki = ranks_Jki(sys, sp, ro, i, top);
      if (json) {
        print_json({{"i", i}, {"engine", engine_name(ro.engine)}, {"ranks_Jk", jk}, {"ranks_Jki", jki}});
      } else {
        std::vector<std::vector<std::string>> table{{"k", "rank(J_k)", "rank(J_{k," + std::to_string(i) + "})"}};
        for (std::size_t k = 0; k < jk.size(); ++k) {
          table.push_back({std::to_string(k), std::to_string(jk[k]), std::to_string(jki[k])});
        }
        std::cout << grid_text(table);
      }
      return 0;
    }

    if (*membership) {
      if (!ord_f && poly.empty()) throw Error(Errc::InvalidArgument, "give --ord-f or --poly");
      if (!poly.empty()) ord_f = parse_sigma_polynomial(poly, sys.variables, sys.field).max_order().value_or(0);
      AnalyzeOptions opt;
      opt.rank = member_engine.options();
      opt.kmax = kmax;
      const IndexReport rep = difference_index(sys, require_specialization(file), opt);
      const MembershipBound mb = membership_bounds(sys, rep, *ord_f, degree, threshold);
      const std::size_t limit = full_digits ? std::string::npos : 1000;
      if (json) print_json(membership_to_json(mb, limit));
      else std::cout << "rho = " << rep.rho << ", omega = " << rep.omega << ", e = " << rep.e << "\n" << membership_to_text(mb, limit);
      if (!mb.hypothesis_met) throw Error(Errc::HypothesisUnmet, mb.hypothesis + "; only the fallback bound applies");
      return 0;
    }

    if (*oracle) {
      OracleOptions oo;
      oo.force = force;
      auto basis_json = [&](const std::vector<SigmaPolynomial>& b) {
        Json arr = Json::array();
        for (const auto& p : b) arr.push_back(sys.to_string(p));
        return arr;
      };
      const std::string note = "unlocalized check; for a localized prime this is one-sided";
      if (*elim) {
        const auto b = eliminate(truncated_ideal(sys, oh), oi, oo);
        if (json) {
          print_json({{"h", oh}, {"i", oi}, {"basis", basis_json(b)}, {"note", note}});
        } else {
          std::cout << "Delta_" << oh << " cap A_" << oi << ":\n";
          if (b.empty()) std::cout << "  (0)\n";
          for (const auto& p : b) std::cout << "  " << sys.to_string(p) << "\n";
          std::cout << "note: " << note << "\n";
        }
      } else if (*scan) {
        const ScanResult r = stabilization_scan(sys, oi, ohmax, oo);
        if (json) {
          Json levels = Json::array();
          for (const auto& b : r.levels) levels.push_back(basis_json(b));
          print_json({{"i", oi}, {"h", r.h}, {"levels", levels}, {"note", note}});
        } else {
          for (std::size_t k = 0; k < r.levels.size(); ++k) {
            std::cout << "Delta_" << k << " cap A_" << oi << ":";
            if (r.levels[k].empty()) std::cout << " (0)";
            for (const auto& p : r.levels[k]) std::cout << "  " << sys.to_string(p);
            std::cout << "\n";
          }
          std::cout << "stabilizes at h = " << r.h << "\nnote: " << note << "\n";
        }
      } else if (*member) {
        const SigmaPolynomial f = parse_sigma_polynomial(poly, sys.variables, sys.field);
        const bool in = membership_test(f, truncated_ideal(sys, oh), oo);
        if (json) print_json({{"poly", sys.to_string(f)}, {"h", oh}, {"member", in}});
        else std::cout << sys.to_string(f) << (in ? " is" : " is not") << " in Delta_" << oh << "\n";
      } else if (*trdeg) {
        const long d = trdeg_oracle(truncated_ideal(sys, ok), oo);
        if (json) print_json({{"k", ok}, {"trdeg", d}});
        else std::cout << "trdeg(Delta_" << ok << ") = " << d << "\n";
      }
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
