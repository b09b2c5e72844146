#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "seqwit/definable_set.hpp"
#include "seqwit/function.hpp"
#include "seqwit/sequence.hpp"
#include "seqwit/suites.hpp"
#include "seqwit/testset.hpp"

namespace {

int write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << "\n";
    return 0;
  }
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "error: cannot write " << out_path << "\n";
    return 2;
  }
  out << text << "\n";
  return 0;
}

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw seqwit::Error(seqwit::ErrorCode::ParseError,
                        "cannot read " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw seqwit::Error(seqwit::ErrorCode::ParseError,
                        path + ": " + e.what());
  }
}

nlohmann::json field(const nlohmann::json& doc, const char* name) {
  if (doc.contains(name)) return doc.at(name);
  return doc;  // allow the descriptor directly at top level
}

nlohmann::json run_query(const nlohmann::json& doc, const std::string& query) {
  using namespace seqwit;
  if (query == "member") {
    DefinableSet m = definable_set_from_json(doc.at("set"));
    FanPoint p = fan_point_from_json(doc.at("point"));
    return {{"result", member(m, p)}};
  }
  if (query == "converges") {
    Decision d = converges_to_apex(sequence_from_json(field(doc, "sequence")));
    return {{"result", d.value}, {"certificate", d.certificate}};
  }
  if (query == "injective") {
    Decision d = is_injective(sequence_from_json(field(doc, "sequence")));
    return {{"result", d.value}, {"certificate", d.certificate}};
  }
  if (query == "in-ip") {
    Decision d = in_IP(definable_set_from_json(field(doc, "set")));
    return {{"result", d.value}, {"certificate", d.certificate}};
  }
  if (query == "almost-disjoint") {
    DefinableSet a = definable_set_from_json(doc.at("first"));
    DefinableSet b = definable_set_from_json(doc.at("second"));
    IntersectionResult inter = intersection_class(a, b);
    return {{"result", !inter.size.infinite},
            {"certificate", inter.certificate}};
  }
  if (query == "in-witness-family") {
    Decision d = in_witness_family(function_from_json(doc.at("function")),
                                   sequence_from_json(doc.at("sequence")));
    return {{"result", d.value}, {"certificate", d.certificate}};
  }
  if (query == "discontinuous") {
    Decision d = discontinuous_at_apex(function_from_json(field(doc, "function")));
    return {{"result", d.value}, {"certificate", d.certificate}};
  }
  if (query == "test-set-relative") {
    TestSetVerdict v = is_test_set_relative(testset_from_json(doc.at("testset")),
                                            corpus_from_json(doc.at("corpus")));
    return {{"result", v.pass}, {"certificate", v.details}};
  }
  throw Error(ErrorCode::UnknownQuery, "unknown query: " + query);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"seqwit: certificate-emitting verification suites for "
               "sequential test sets on the fan"};
  app.require_subcommand(0, 1);

  seqwit::SuiteConfig config;
  if (const char* env_seed = std::getenv("SEQWIT_SEED"))
    config.seed = std::strtoull(env_seed, nullptr, 10);
  std::string out_path;

  app.add_option("--suite", config.suite, "suite name")
      ->check(CLI::IsMember(seqwit::suite_names()));
  app.add_option("--max-spoke", config.max_spoke, "spoke truncation bound");
  app.add_option("--max-depth", config.max_depth, "depth truncation bound");
  app.add_option("--probes", config.probes, "probe count");
  app.add_option("--seed", config.seed, "PRNG seed (fallback: SEQWIT_SEED)");
  app.add_option("--format", config.format, "output format")
      ->check(CLI::IsMember({"json", "markdown"}));
  app.add_option("--out", out_path, "output path (default: stdout)");

  auto* eval = app.add_subcommand("eval", "evaluate a query on a descriptor file");
  std::string eval_path, eval_query;
  eval->add_option("path", eval_path, "descriptor JSON file")->required();
  eval->add_option("--query", eval_query, "query name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (eval->parsed()) {
      nlohmann::json answer = run_query(load_json(eval_path), eval_query);
      answer["schema"] = "seqwit/1";
      return write_output(answer.dump(2), out_path);
    }
    if (config.suite.empty()) {
      std::cerr << "error: --suite or the eval subcommand is required\n";
      return 2;
    }
    seqwit::SuiteReport report = seqwit::run_suite(config);
    std::string text = config.format == "markdown"
                           ? report.to_markdown()
                           : report.to_json().dump(2);
    int io = write_output(text, out_path);
    if (io != 0) return io;
    return report.pass() ? 0 : 1;
  } catch (const seqwit::Error& e) {
    std::cerr << "error [" << seqwit::error_code_name(e.code()) << "]: "
              << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
