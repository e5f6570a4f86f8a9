// costas_nd: command-line front end.
//
// Exit codes:
//   0  success (check: valid and Costas)
//   1  reproduce: claim did not match its expectation
//   2  malformed input, bad shape/split, unknown claim, usage error
//   3  check: valid array that is not Costas
//   4  enumerate: budget exhausted, result incomplete (result file still written)

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "costas_nd/claims.hpp"
#include "costas_nd/costas_nd.hpp"
#include "costas_nd/sampling.hpp"

namespace fs = std::filesystem;
using namespace costas_nd;

namespace {

constexpr int kExitMismatch = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitNotCostas = 3;
constexpr int kExitIncomplete = 4;

bool want_json(const std::string& output) {
  if (output == "json") return true;
  if (output == "text") return false;
  return isatty(STDOUT_FILENO) == 0;
}

std::vector<int> parse_shape(const std::string& text) {
  std::vector<int> sizes;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, 'x')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(part, &used);
    } catch (const std::exception&) {
      throw Error("bad shape '" + text + "': expected sides like 2x2x4");
    }
    if (used != part.size()) throw Error("bad shape '" + text + "': expected sides like 2x2x4");
    sizes.push_back(v);
  }
  return sizes;
}

// "2x2x4:2" -> split shape with k = 2.
SplitShape parse_split(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw Error("bad shape '" + text + "': expected SHAPE:K, e.g. 2x2x4:2");
  return SplitShape(parse_shape(text.substr(0, colon)), std::stoi(text.substr(colon + 1)));
}

void print_kv(const json& j) {
  for (const auto& [key, value] : j.items()) std::cout << key << ": " << value.dump() << '\n';
}

std::string checkpoint_default(const SearchSpec& spec) {
  const char* dir = std::getenv("COSTAS_ND_CHECKPOINT_DIR");
  if (!dir || !*dir) return {};
  std::string name = "checkpoint-" + spec.split.shape().to_string() + "-k" + std::to_string(spec.split.k()) +
                     "-" + to_string(spec.mode);
  if (spec.symmetry_reduction) name += "-sym";
  if (!spec.exact_costas_count) name += "-periodic-only";
  return (fs::path(dir) / (name + ".json")).string();
}

int cmd_check(const std::string& file, bool as_json) {
  ArrayDocument doc;
  try {
    doc = read_array_file(file);
  } catch (const ParseError& e) {
    json j{{"valid", false}, {"error", e.what()}};
    if (as_json) std::cout << j.dump() << '\n';
    std::cerr << "error: " << file << ": " << e.what() << '\n';
    return kExitBadInput;
  }
  const bool perm = doc.permutation.has_value();
  const bool costas = perm && is_costas(doc.array);
  json j{{"valid", true},
         {"is_permutation", perm},
         {"is_costas", costas},
         {"is_modular_costas", perm && is_modular_costas(doc.array)},
         {"is_periodic_costas", costas && is_periodic_costas(doc.array)}};
  if (as_json)
    std::cout << j.dump() << '\n';
  else
    print_kv(j);
  return costas ? 0 : kExitNotCostas;
}

PermutationArray load_permutation(const std::string& file) {
  ArrayDocument doc = read_array_file(file);
  if (!doc.permutation) throw ParseError(file + ": dots do not form a permutation array for k=" + std::to_string(doc.k));
  return *doc.permutation;
}

int cmd_analyze(const std::string& file, bool debug, bool as_json) {
  const PermutationArray p = load_permutation(file);
  const json j = to_json(analyze(p), debug);
  if (as_json)
    std::cout << j.dump() << '\n';
  else
    std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_freq(const std::string& file, bool as_json) {
  const PermutationArray p = load_permutation(file);
  const auto table = frequency_table(p.dots(), p.split());
  if (as_json) {
    json rows = json::array();
    for (const auto& [v, c] : table) rows.push_back({{"vector", v.v}, {"count", c}});
    std::cout << json{{"shape", p.shape().sizes()}, {"k", p.split().k()}, {"frequencies", rows}}.dump() << '\n';
    return 0;
  }
  for (const auto& [v, c] : table) {
    std::cout << "<" << join(v.span()) << "> " << c;
    if (has_half_component(v, p.shape())) std::cout << "  (half)";
    std::cout << '\n';
  }
  return 0;
}

// "1,1,1;2,2,3" (1-based) -> dot pair.
DotPair parse_pair(const std::string& text) {
  const auto semi = text.find(';');
  if (semi == std::string::npos) throw Error("bad pair '" + text + "': expected a1,...;w1,...");
  auto dot = [](const std::string& s) {
    std::vector<int> v;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ',')) v.push_back(std::stoi(part) - 1);
    return Dot(std::move(v));
  };
  return {dot(text.substr(0, semi)), dot(text.substr(semi + 1))};
}

int cmd_witness(const std::string& file, const std::string& pair1, const std::string& pair2, bool as_json) {
  const ArrayDocument doc = read_array_file(file);
  std::optional<WindowWitness> w;
  if (!pair1.empty() || !pair2.empty()) {
    if (pair1.empty() || pair2.empty()) throw Error("--pair1 and --pair2 go together");
    try {
      w = construct_witness(doc.array, parse_pair(pair1), parse_pair(pair2));
    } catch (const WitnessPreconditionError& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kExitBadInput;
    }
  } else if (doc.permutation) {
    if (auto pw = pigeonhole_witness(*doc.permutation))
      w = construct_witness(doc.array, pw->first, pw->second);
  }
  if (!w) w = find_witness(doc.array);
  const json j{{"witness", w ? to_json(*w) : json(nullptr)}};
  std::cout << (as_json ? j.dump() : j.dump(2)) << '\n';
  return 0;
}

int cmd_enumerate(SearchSpec spec, const std::string& emit_dir, std::string result_path, bool as_json) {
  if (!emit_dir.empty()) spec.emit_arrays = true;
  if (spec.checkpoint_path.empty()) spec.checkpoint_path = checkpoint_default(spec);
  const SearchResult r = enumerate(spec);
  if (result_path.empty())
    result_path = "enumerate-" + spec.split.shape().to_string() + "-k" + std::to_string(spec.split.k()) + "-" +
                  to_string(spec.mode) + ".json";
  const json j = to_json(spec, r);
  {
    std::ofstream out(result_path);
    if (!out) throw Error("cannot write " + result_path);
    out << j.dump(2) << '\n';
  }
  if (!emit_dir.empty()) {
    fs::create_directories(emit_dir);
    const auto& list = spec.mode == SearchMode::costas ? r.costas_exemplars : r.periodic_exemplars;
    const char* prefix = spec.mode == SearchMode::costas ? "costas-" : "periodic-";
    for (std::size_t i = 0; i < list.size(); ++i) {
      std::ostringstream name;
      name << prefix << std::setw(5) << std::setfill('0') << i + 1 << ".json";
      write_array_file((fs::path(emit_dir) / name.str()).string(), list[i]);
    }
  }
  if (as_json)
    std::cout << j.dump() << '\n';
  else
    std::cout << summary_line(r) << '\n';
  return r.complete ? 0 : kExitIncomplete;
}

int cmd_taylor(int from, int to, int threads, bool as_json) {
  json rows = json::array();
  for (int n = from; n <= to; ++n) {
    const auto r = taylor_scan(n, threads);
    if (as_json)
      rows.push_back({{"n", n}, {"costas", r.costas}, {"periodic", *r.periodic}, {"complete", r.complete}});
    else
      std::cout << "n=" << n << " " << summary_line(r) << '\n';
  }
  if (as_json) std::cout << rows.dump() << '\n';
  return 0;
}

int cmd_scan(const std::vector<std::string>& shapes, std::optional<std::uint64_t> budget, int threads,
             bool as_json) {
  std::vector<SplitShape> splits;
  for (const auto& s : shapes) splits.push_back(parse_split(s));
  const auto entries = conjecture_scan(splits, budget, threads);
  json rows = json::array();
  bool counterexample = false;
  for (const auto& e : entries) {
    counterexample = counterexample || e.counterexample;
    json ex = json::array();
    for (const auto& p : e.result.periodic_exemplars) ex.push_back(to_json(p));
    rows.push_back({{"shape", e.split.shape().sizes()},
                    {"k", e.split.k()},
                    {"order", e.split.order()},
                    {"periodic", *e.result.periodic},
                    {"complete", e.result.complete},
                    {"nodes_visited", e.result.nodes_visited},
                    {"conjecture_allows_shape", e.conjecture_allows_shape},
                    {"counterexample", e.counterexample},
                    {"status", e.status},
                    {"periodic_exemplars", ex}});
    if (!as_json)
      std::cout << e.split.to_string() << " periodic=" << *e.result.periodic
                << " complete=" << (e.result.complete ? "true" : "false") << " " << e.status << '\n';
  }
  if (as_json) std::cout << json{{"entries", rows}, {"counterexample_found", counterexample}}.dump() << '\n';
  if (counterexample) std::cerr << "finding: periodic Costas array on a shape the conjecture excludes\n";
  return 0;
}

int cmd_reproduce(const std::string& id, const ClaimOptions& opts, bool as_json) {
  if (id == "list") {
    for (const auto& c : claim_registry())
      std::cout << c.id << (c.long_running ? " (long)" : "") << "  " << c.description << '\n';
    return 0;
  }
  const Claim* claim = find_claim(id);
  if (!claim) {
    std::cerr << "error: unknown claim '" << id << "' (try 'reproduce list')\n";
    return kExitBadInput;
  }
  const ClaimOutcome out = claim->run(opts);
  if (as_json)
    std::cout << json{{"claim", claim->id}, {"pass", out.pass}, {"detail", out.detail}}.dump() << '\n';
  else
    std::cout << (out.pass ? "PASS " : "FAIL ") << claim->id << ": " << out.detail << '\n';
  return out.pass ? 0 : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multidimensional Costas arrays: checks, analysis and exhaustive search"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string output = "auto";
  app.add_option("--output", output, "json|text (default: text on a terminal, json when piped)")
      ->check(CLI::IsMember({"auto", "json", "text"}));

  std::string file;
  auto* check = app.add_subcommand("check", "validate an array file and report its predicates");
  check->add_option("file", file, "array file")->required();

  bool debug = false;
  auto* analyze_cmd = app.add_subcommand("analyze", "full analysis report for an array file");
  analyze_cmd->add_option("file", file, "array file")->required();
  analyze_cmd->add_flag("--debug", debug, "include inclusion-exclusion internals");

  auto* freq = app.add_subcommand("freq", "frequency table of toroidal vectors");
  freq->add_option("file", file, "array file")->required();

  std::string pair1, pair2;
  auto* witness = app.add_subcommand("witness", "window witness of a repeated difference vector");
  witness->add_option("file", file, "array file")->required();
  witness->add_option("--pair1", pair1, "first dot pair, 1-based: a1,a2,...;w1,w2,...");
  witness->add_option("--pair2", pair2, "second dot pair, 1-based");

  std::string shape_text, mode_text = "periodic", emit_dir, result_path, checkpoint;
  int k = 0, threads = 1;
  std::uint64_t budget = 0;
  bool symmetry = false, periodic_only = false;
  auto* enumerate_cmd = app.add_subcommand("enumerate", "exhaustive search over the bijections of a shape");
  enumerate_cmd->add_option("--shape", shape_text, "side lengths, e.g. 2x2x4")->required();
  enumerate_cmd->add_option("--k", k, "split index")->required();
  enumerate_cmd->add_option("--mode", mode_text, "all|costas|periodic")
      ->check(CLI::IsMember({"all", "costas", "periodic"}));
  enumerate_cmd->add_flag("--symmetry", symmetry, "certified translation reduction");
  enumerate_cmd->add_flag("--periodic-only", periodic_only,
                          "cut subtrees that cannot be periodic (Costas count becomes partial)");
  enumerate_cmd->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  enumerate_cmd->add_option("--budget", budget, "node budget");
  enumerate_cmd->add_option("--emit", emit_dir, "directory for exemplar array files");
  enumerate_cmd->add_option("--result", result_path, "result file (default enumerate-SHAPE-kK-MODE.json)");
  enumerate_cmd->add_option("--checkpoint", checkpoint,
                            "checkpoint file (default from COSTAS_ND_CHECKPOINT_DIR when set)");

  int from = 2, to = 7;
  auto* taylor = app.add_subcommand("taylor", "2D periodic Costas counts");
  taylor->add_option("--from", from, "smallest order")->check(CLI::Range(2, 12));
  taylor->add_option("--to", to, "largest order")->check(CLI::Range(2, 12));
  taylor->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);

  std::vector<std::string> shapes;
  auto* scan = app.add_subcommand("scan", "periodic Costas counts per shape, flagging conjecture counterexamples");
  scan->add_option("--shapes", shapes, "shapes as SHAPE:K, e.g. 2x2x4:2 2x6x12:2")->required()->delimiter(',');
  scan->add_option("--budget", budget, "node budget per shape");
  scan->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);

  std::string claim_id;
  ClaimOptions claim_opts;
  auto* reproduce = app.add_subcommand("reproduce", "run a registered claim ('list' shows them)");
  reproduce->add_option("claim", claim_id, "claim id")->required();
  reproduce->add_option("--seed", claim_opts.seed, "seed for randomized claims");
  reproduce->add_option("--threads", claim_opts.threads, "worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitBadInput;
  }

  const bool as_json = want_json(output);
  try {
    if (*check) return cmd_check(file, as_json);
    if (*analyze_cmd) return cmd_analyze(file, debug, as_json);
    if (*freq) return cmd_freq(file, as_json);
    if (*witness) return cmd_witness(file, pair1, pair2, as_json);
    if (*enumerate_cmd) {
      SearchSpec spec{SplitShape(parse_shape(shape_text), k), parse_mode(mode_text)};
      spec.symmetry_reduction = symmetry;
      spec.exact_costas_count = !periodic_only;
      spec.parallel_width = threads;
      if (budget > 0) spec.node_budget = budget;
      spec.checkpoint_path = checkpoint;
      return cmd_enumerate(spec, emit_dir, result_path, as_json);
    }
    if (*taylor) return cmd_taylor(from, to, threads, as_json);
    if (*scan) return cmd_scan(shapes, budget > 0 ? std::optional<std::uint64_t>(budget) : std::nullopt, threads,
                               as_json);
    if (*reproduce) return cmd_reproduce(claim_id, claim_opts, as_json);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadInput;
  }
  return kExitBadInput;
}
