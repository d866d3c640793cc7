// segre: recover tensor-product structure from the cone of simple vectors.
//
// Exit codes: 0 ok, 1 verification or property failure, 2 bad arguments or
// malformed input, 3 sampling budget exhausted.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "segre/error.hpp"
#include "segre/foliation.hpp"
#include "segre/io.hpp"
#include "segre/props.hpp"
#include "segre/reconstruct.hpp"
#include "segre/squares.hpp"

namespace {

using segre::io::Json;

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kBadInput = 2;
constexpr int kExhausted = 3;

struct Globals {
  std::uint64_t seed = 1;
  std::size_t trials = 50;
  std::string out;
  bool quiet = false;
};

void emit(const Globals& g, const Json& j) {
  if (g.out.empty())
    std::cout << segre::io::dump(j);
  else
    segre::io::write_file(g.out, j);
}

void say(const Globals& g, const std::string& line) {
  if (!g.quiet) std::cout << line << "\n";
}

std::vector<segre::FactorShape> parse_dims(const std::string& text) {
  std::vector<segre::FactorShape> shapes;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto x = item.find('x');
    if (x == std::string::npos) throw segre::ParseError("expected MxN, got '" + item + "'");
    try {
      std::size_t used_m = 0, used_n = 0;
      long m = std::stol(item.substr(0, x), &used_m), n = std::stol(item.substr(x + 1), &used_n);
      if (used_m != x || used_n != item.size() - x - 1 || m < 1 || n < 1) throw std::invalid_argument(item);
      shapes.push_back({static_cast<std::size_t>(m), static_cast<std::size_t>(n)});
    } catch (const std::logic_error&) {
      throw segre::ParseError("expected MxN with positive sizes, got '" + item + "'");
    }
  }
  if (shapes.empty()) throw segre::ParseError("no shapes given");
  return shapes;
}

segre::Vector parse_vector_arg(const std::string& text) {
  if (!text.empty() && text.front() == '[') {
    try {
      return segre::io::vector_from_json(Json::parse(text));
    } catch (const nlohmann::json::exception& e) {
      throw segre::ParseError(e.what());
    }
  }
  std::vector<segre::Scalar> xs;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) xs.push_back(segre::parse_scalar(item));
  return segre::Vector(std::move(xs));
}

int cmd_gen(const Globals& g, std::size_t m, std::size_t n, bool pointed, bool fault) {
  segre::GenerateOptions options;
  options.inject_fault = fault;
  auto inst = segre::TensorSpaceInstance::generate({m, n}, g.seed, pointed, options);
  emit(g, segre::io::instance_to_json(inst));
  return kOk;
}

int cmd_recover(const Globals& g, const std::string& path) {
  auto inst = segre::io::instance_from_json(segre::io::read_file(path));
  segre::Rng rng(g.seed);
  segre::Reconstruction recon = segre::recover_factors(inst, rng);
  segre::RoundTripReport report = segre::verify_round_trip(inst, recon);
  emit(g, segre::io::report_to_json(report));
  if (!g.quiet)
    std::cerr << (report.success ? "recovered" : "mismatch") << " sheets " << report.sheet_dims[0] << "x"
              << report.sheet_dims[1] << " oracle calls " << report.oracle_calls << "\n";
  return report.success ? kOk : kFailure;
}

int cmd_simple_check(const Globals& g, const std::string& path, const std::string& vector_text) {
  auto inst = segre::io::instance_from_json(segre::io::read_file(path));
  segre::Vector v = parse_vector_arg(vector_text);
  if (v.size() != inst.dim()) throw segre::ParseError("vector length does not match the instance");
  Json j;
  j["simple"] = inst.is_simple(v);
  emit(g, j);
  return kOk;
}

int cmd_square_complete(const Globals& g, const std::string& path, const std::string& input) {
  auto inst = segre::io::instance_from_json(segre::io::read_file(path));
  Json triple = segre::io::read_file(input);
  for (const char* key : {"a", "b", "c"})
    if (!triple.contains(key)) throw segre::ParseError(std::string("square input lacks '") + key + "'");
  segre::Vector a = segre::io::vector_from_json(triple["a"]);
  segre::Vector b = segre::io::vector_from_json(triple["b"]);
  segre::Vector c = segre::io::vector_from_json(triple["c"]);
  for (const auto* v : {&a, &b, &c})
    if (v->size() != inst.dim()) throw segre::ParseError("square input vector has the wrong length");
  segre::SquareCompletion done = segre::complete_square(inst, a, b, c);
  Json j;
  j["d"] = segre::io::to_json(done.d);
  j["t"] = segre::io::to_json(done.t);
  j["case"] = segre::to_string(done.kind);
  emit(g, j);
  return kOk;
}

int cmd_props(const Globals& g, const std::string& suite, bool fault) {
  segre::SuiteOptions options;
  options.trials = g.trials;
  options.seed = g.seed;
  options.inject_fault = fault;
  auto results = segre::run_suite(suite, options);
  bool ok = true;
  for (const auto& r : results) {
    ok = ok && r.ok();
    say(g, std::string(r.ok() ? "PASS " : "FAIL ") + r.name + " " + std::to_string(r.passed) + "/" +
               std::to_string(r.trials));
  }
  Json j;
  j["suite"] = suite;
  j["seed"] = g.seed;
  j["trials"] = g.trials;
  j["ok"] = ok;
  j["properties"] = segre::results_to_json(results);
  if (!g.out.empty()) segre::io::write_file(g.out, j);
  if (!ok) {
    for (const auto& r : results)
      if (r.counterexample) std::cerr << "counterexample " << r.counterexample->dump() << "\n";
  }
  return ok ? kOk : kFailure;
}

int cmd_spin_demo(const Globals& g, const std::string& dims) {
  auto shapes = parse_dims(dims);
  Json rows = Json::array();
  say(g, "shape  dim V  dim T  m+n-1");
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    const auto& shape = shapes[i];
    auto inst = segre::TensorSpaceInstance::generate(shape, segre::Rng::derive(g.seed, i), false);
    segre::Rng rng(segre::Rng::derive(g.seed, 1000 + i));
    std::size_t tangent = segre::tangent_space(inst, inst.sample_simple(rng)).dim();
    std::string line = std::to_string(shape.m) + "x" + std::to_string(shape.n) + "  " + std::to_string(shape.dim()) +
                       "  " + std::to_string(tangent) + "  " + std::to_string(shape.m + shape.n - 1);
    if (shape.trivial()) line += "  (trivial: S = V)";
    say(g, line);
    Json row{{"m", shape.m}, {"n", shape.n}, {"dim", shape.dim()}, {"tangent_dim", tangent},
             {"expected", shape.m + shape.n - 1}, {"trivial", shape.trivial()}};
    rows.push_back(std::move(row));
  }
  if (!g.out.empty()) segre::io::write_file(g.out, Json{{"shapes", rows}});
  return kOk;
}

int cmd_naturality(const Globals& g, const std::string& dims) {
  segre::SuiteOptions options;
  options.trials = g.trials;
  options.seed = g.seed;
  if (!dims.empty()) options.shapes = parse_dims(dims);
  auto results = segre::naturality_properties(options);
  auto passed = [&](const std::string& name) -> std::size_t {
    for (const auto& r : results)
      if (r.name == name) return r.passed;
    return 0;
  };
  std::size_t trials = 0;
  bool ok = true;
  for (const auto& r : results) {
    ok = ok && r.ok();
    if (r.name == "psi-naturality") trials = r.trials;
    if (!r.ok() && r.counterexample) std::cerr << "counterexample " << r.counterexample->dump() << "\n";
  }
  std::size_t functor = std::min(passed("functor-identity"), passed("functor-composition"));
  Json j{{"trials", trials},
         {"psi_pass", passed("psi-naturality")},
         {"phi_pass", passed("phi-naturality")},
         {"functor_law_pass", functor},
         {"ok", ok}};
  emit(g, j);
  return ok ? kOk : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Recover the factors of a tensor product from its simple vectors"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Seed for every random choice");
  app.add_option("--trials", g.trials, "Trials per property and shape")->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "Write JSON output to this file");
  app.add_flag("--quiet", g.quiet, "Suppress human-readable output");

  std::size_t m = 0, n = 0;
  bool pointed = false, fault = false;
  std::string instance, vector_text, input, suite = "all", dims;

  auto* gen = app.add_subcommand("gen", "Generate a scrambled instance");
  gen->add_option("--m", m, "Dimension of the first factor")->required()->check(CLI::PositiveNumber);
  gen->add_option("--n", n, "Dimension of the second factor")->required()->check(CLI::PositiveNumber);
  gen->add_flag("--pointed", pointed, "Attach a simple base point");
  gen->add_flag("--inject-fault", fault)->group("");

  auto* recover = app.add_subcommand("recover", "Recover the factors of an instance and verify them");
  recover->add_option("instance", instance, "Instance JSON")->required();

  auto* simple = app.add_subcommand("simple-check", "Ask the membership oracle about one vector");
  simple->add_option("instance", instance, "Instance JSON")->required();
  simple->add_option("--vector", vector_text, "Comma-separated scalars or a JSON array")->required();

  auto* square = app.add_subcommand("square-complete", "Complete a square from a, b, c");
  square->add_option("instance", instance, "Instance JSON")->required();
  square->add_option("--input", input, "JSON file with a, b, c")->required();

  auto* props = app.add_subcommand("props", "Run property suites");
  props->add_option("--suite", suite, "Suite name")->check(CLI::IsMember(segre::suite_names()));
  props->add_flag("--inject-fault", fault)->group("");

  auto* spin = app.add_subcommand("spin-demo", "Tangent dimensions of several shapes");
  spin->add_option("--dims", dims, "Shapes such as 4x3,2x6")->required();

  auto* natural = app.add_subcommand("naturality", "Check naturality of Ψ and Φ on random morphisms");
  natural->add_option("--dims", dims, "Shapes (default 2x2,2x3,3x2,3x3)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    if (*gen) return cmd_gen(g, m, n, pointed, fault);
    if (*recover) return cmd_recover(g, instance);
    if (*simple) return cmd_simple_check(g, instance, vector_text);
    if (*square) return cmd_square_complete(g, instance, input);
    if (*props) return cmd_props(g, suite, fault);
    if (*spin) return cmd_spin_demo(g, dims);
    if (*natural) return cmd_naturality(g, dims);
  } catch (const segre::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const segre::Malformed& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const segre::DimensionMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const segre::RetryExhausted& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExhausted;
  } catch (const segre::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kBadInput;
}
