#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "substar/diagram.hpp"
#include "substar/report.hpp"

using namespace substar;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kInputError = 2;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int emit(const Json& doc, const RunConfig& cfg) {
  if (cfg.format == "json") {
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << render_text(doc);
  }
  return doc.contains("pass") && !doc["pass"].get<bool>() ? kCheckFailed : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Substitution C*-algebra toolkit: classification, relations, traces, K-theory"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  std::string file;
  bool mutant = false;

  app.add_option("--depth", cfg.depth, "diagram depth")->envname("SUBSTAR_DEPTH")->capture_default_str();
  app.add_option("--probe-depth", cfg.probe_depth, "prefix level of oracle probe paths")
      ->envname("SUBSTAR_PROBE_DEPTH")
      ->capture_default_str();
  app.add_option("--bound", cfg.bound, "periodicity bound (0: certification threshold)")
      ->envname("SUBSTAR_BOUND")
      ->capture_default_str();
  app.add_option("--stages", cfg.stages, "K-theory oracle stages")->envname("SUBSTAR_STAGES")->capture_default_str();
  app.add_option("--samples", cfg.samples, "KMS sample pairs")->envname("SUBSTAR_SAMPLES")->capture_default_str();
  app.add_option("--seed", cfg.seed, "seed for all sampling")->envname("SUBSTAR_SEED")->capture_default_str();
  app.add_option("--format", cfg.format, "text, json or dot")->envname("SUBSTAR_FORMAT")->capture_default_str();

  auto* classify = app.add_subcommand("classify", "primitivity, properness, periodicity, para-periodicity");
  auto* relations = app.add_subcommand("relations", "check the generating relations on the operator model");
  relations->add_flag("--mutant", mutant, "append a deliberately wrong relation");
  auto* kgroups = app.add_subcommand("kgroups", "K-groups with the brute-force oracle transcript");
  auto* report = app.add_subcommand("report", "full document with every section");
  auto* dot = app.add_subcommand("dot", "ordered Bratteli diagram in DOT");
  for (auto* sub : {classify, relations, kgroups, report, dot}) {
    sub->add_option("file", file, "substitution file, - for stdin")->required();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (dot->parsed()) cfg.format = "dot";
    cfg.validate();
    if (cfg.format == "dot" && !dot->parsed()) throw Error("--format dot is only available for the dot command");
    const auto s = parse_substitution(read_input(file));
    if (dot->parsed()) {
      std::cout << Diagram(s, cfg.depth).to_dot();
      return kOk;
    }
    if (classify->parsed()) return emit(classify_json(s, cfg), cfg);
    if (relations->parsed()) return emit(relations_json(s, cfg, mutant), cfg);
    if (kgroups->parsed()) return emit(kgroups_json(s, cfg), cfg);
    return emit(report_json(s, cfg), cfg);
  } catch (const ParseError& e) {
    std::cerr << "substar: " << file << ": " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    std::cerr << "substar: " << e.what() << "\n";
    return kInputError;
  }
}
