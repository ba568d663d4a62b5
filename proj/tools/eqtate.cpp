// Command-line front end: verification over the corpus and the simplicial
// examples, plus a generator for explicit join triangulations.
#include "eqtate/verifier.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <regex>

using namespace eqtate;

namespace {

const std::string kData = EQTATE_DATA_DIR;

DegreeWindow parse_window(const std::string& s) {
  static const std::regex re(R"(^\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*$)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) throw CLI::ValidationError("--window", "expected a..b, got '" + s + "'");
  DegreeWindow w{std::stoi(m[1]), std::stoi(m[2])};
  if (w.lo > w.hi) throw CLI::ValidationError("--window", "empty window " + s);
  return w;
}

struct Options {
  std::string window = "-3..6";
  std::string format = "md";
  bool self_test = false;
  std::string corpus;
  std::string complexes;
  std::string output;
};

void emit(const Report& rep, const Options& o) {
  std::string text = o.format == "json" ? to_json(rep).dump(2) + "\n" : to_markdown(rep);
  if (o.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.output);
  if (!out) throw std::runtime_error("cannot write " + o.output);
  out << text;
}

// Every check that ran on a falsified fixture must have failed at least once.
int self_test_status(const Report& rep) {
  std::map<std::string, bool> failed;
  for (const auto& r : rep.results) failed[r.check] = failed[r.check] || r.verdict == Verdict::Fail;
  int vacuous = 0;
  for (const auto& [check, f] : failed)
    if (!f) {
      std::cerr << "self-test: check '" << check << "' did not fail on any falsified fixture\n";
      ++vacuous;
    }
  std::cerr << "self-test: " << rep.count(Verdict::Fail) << " expected failures over " << failed.size() << " checks\n";
  return vacuous ? 3 : 1;
}

int run(const std::string& mode, const Options& o) {
  const DegreeWindow w = parse_window(o.window);
  Report rep;
  const bool arith = mode == "arithmetic" || mode == "all";
  const bool topo = mode == "topology" || mode == "all";
  if (arith) {
    const std::string path =
        !o.corpus.empty() ? o.corpus : kData + (o.self_test ? "/selftest_corpus.json" : "/corpus.json");
    for (auto& r : run_arithmetic(load_corpus(path), w).results) rep.results.push_back(std::move(r));
  }
  if (topo) {
    const std::string path =
        !o.complexes.empty() ? o.complexes : kData + (o.self_test ? "/selftest_complexes.json" : "/complexes.json");
    for (auto& r : run_topology(load_complexes(path), w).results) rep.results.push_back(std::move(r));
  }
  emit(rep, o);
  if (o.self_test) return self_test_status(rep);
  return rep.ok() ? 0 : 1;
}

nlohmann::json complex_json(const std::string& id, const SimplicialGComplex& k) {
  nlohmann::json j;
  j["id"] = id;
  j["group"] = {{"type", "cyclic"}, {"order", k.group().order()}};
  j["vertices"] = k.nvertices();
  j["facets"] = nlohmann::json::array();
  const int d = k.dim();
  for (int q = d; q >= 0; --q)
    for (const auto& s : k.simplices(q)) {
      bool maximal = true;
      if (q < d)
        for (const auto& t : k.simplices(q + 1))
          if (std::includes(t.begin(), t.end(), s.begin(), s.end())) {
            maximal = false;
            break;
          }
      if (maximal) j["facets"].push_back(s);
    }
  j["generator_perms"] = k.generator_perms();
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tate-style equivariant cohomology and ramification bound verifier"};
  app.require_subcommand(1);
  Options o;

  auto* verify = app.add_subcommand("verify", "run theorem checks");
  verify->require_subcommand(1);
  auto add_common = [&](CLI::App* c) {
    c->add_option("--window", o.window, "Tate degree window a..b")->capture_default_str();
    c->add_option("--report", o.format, "report format")->check(CLI::IsMember({"json", "md"}))->capture_default_str();
    c->add_flag("--self-test", o.self_test, "run on the falsified fixtures; exits nonzero");
    c->add_option("-o,--output", o.output, "write the report to a file");
  };
  auto* arith = verify->add_subcommand("arithmetic", "number-field corpus");
  arith->add_option("corpus", o.corpus, "corpus JSON file");
  add_common(arith);
  auto* topo = verify->add_subcommand("topology", "simplicial examples");
  topo->add_option("complexes", o.complexes, "complexes JSON file");
  add_common(topo);
  auto* all = verify->add_subcommand("all", "corpus and simplicial examples");
  all->add_option("--corpus", o.corpus, "corpus JSON file");
  all->add_option("--complexes", o.complexes, "complexes JSON file");
  add_common(all);

  auto* gen = app.add_subcommand("join", "print an explicit S^3 join triangulation as a complexes entry");
  std::size_t p = 3, m = 3;
  bool free_action = false;
  gen->add_option("-p", p, "prime order of the rotation")->capture_default_str();
  gen->add_option("-m", m, "size of the fixed polygon")->capture_default_str();
  gen->add_flag("--free", free_action, "join of two free circles instead");

  CLI11_PARSE(app, argc, argv);
  try {
    if (gen->parsed()) {
      const auto k = free_action ? free_join(p) : branched_join(p, m);
      auto j = complex_json(free_action ? "free_join_p" + std::to_string(p)
                                        : "branched_join_p" + std::to_string(p) + "_m" + std::to_string(m),
                            k);
      j["provenance"] = "derived-by: eqtate join";
      std::cout << nlohmann::json::array({j}).dump(2) << "\n";
      return 0;
    }
    for (auto* c : {arith, topo, all})
      if (c->parsed()) return run(c->get_name(), o);
  } catch (const CorpusError& e) {
    std::cerr << "corpus error: " << e.what() << "\n";
    return 2;
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
