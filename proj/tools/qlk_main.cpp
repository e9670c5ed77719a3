#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>

#include <CLI11.hpp>

#include "qlk/assoc_variety.hpp"
#include "qlk/errors.hpp"
#include "qlk/level_class.hpp"
#include "qlk/lie_core.hpp"
#include "qlk/modular_mlde.hpp"
#include "qlk/report.hpp"
#include "qlk/vacuum_engine.hpp"

namespace {

using qlk::Error;
using qlk::ErrorCode;
using qlk::Json;
using qlk::Rat;

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::ParseError:
    case ErrorCode::InvalidType:
      return 2;
    case ErrorCode::CriticalLevel:
    case ErrorCode::NotDeligneSeries:
    case ErrorCode::ExcludedLevel:
    case ErrorCode::LogarithmicCase:
    case ErrorCode::ResonantRoot:
    case ErrorCode::UnitIdeal:
      return 3;
    case ErrorCode::TruncationError:
    case ErrorCode::InsufficientTruncation:
      return 4;
    default:
      return 1;
  }
}

Rat parse_level(const std::string& s) {
  const auto r = qlk::rat_from_string(s);
  if (!r)
    throw Error(ErrorCode::ParseError, "cli",
                "invalid rational level '" + s + "'");
  return *r;
}

qlk::SimpleLieAlgebraData parse_type(const std::string& s) {
  if (s.size() < 2)
    throw Error(ErrorCode::ParseError, "cli", "invalid type '" + s + "'");
  for (std::size_t i = 1; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw Error(ErrorCode::ParseError, "cli", "invalid type '" + s + "'");
  return qlk::build(static_cast<char>(std::toupper(
                        static_cast<unsigned char>(s[0]))),
                    std::stoi(s.substr(1)));
}

// File format: first line "alpha num/den", then one coefficient per line.
qlk::QSeries read_qseries(std::istream& in) {
  qlk::QSeries f;
  std::string tag, value;
  if (!(in >> tag >> value) || tag != "alpha")
    throw Error(ErrorCode::ParseError, "cli",
                "q-series input must start with 'alpha <num/den>'");
  f.alpha = parse_level(value);
  while (in >> value) f.c.push_back(parse_level(value));
  if (f.c.empty())
    throw Error(ErrorCode::ParseError, "cli",
                "q-series input has no coefficients");
  return f;
}

void emit(const Json& payload, const std::string& format,
          const std::string& out_path) {
  Json doc;
  doc["schema"] = "1";
  for (const auto& [key, value] : payload.items()) doc[key] = value;
  const std::string text = qlk::render(doc, format);
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out)
    throw Error(ErrorCode::ParseError, "cli",
                "cannot open output file '" + out_path + "'");
  out << text;
}

Json cmd_classify(const std::string& g_str, const std::string& k_str) {
  const auto g = parse_type(g_str);
  const Rat k = parse_level(k_str);
  Json j;
  j["type"] = qlk::series_name(g.series) + std::to_string(g.rank);
  const Json body = qlk::level_report_json(qlk::classify(g, k));
  for (const auto& [key, value] : body.items()) j[key] = value;
  return j;
}

Json cmd_variety(const std::string& k_str, int N) {
  const Rat k = parse_level(k_str);
  Json j;
  j["k"] = qlk::rat_to_string(k);
  const Json body = qlk::variety_json(qlk::variety_of_level(k, N));
  for (const auto& [key, value] : body.items()) j[key] = value;
  return j;
}

Json cmd_char(const std::string& k_str, int N) {
  const Rat k = parse_level(k_str);
  Json j;
  j["k"] = qlk::rat_to_string(k);
  const Json body = qlk::character_json(qlk::simple_character(k, N));
  for (const auto& [key, value] : body.items()) j[key] = value;
  return j;
}

Json cmd_mlde(const std::string& level_str, const std::string& file,
              int N, int max_order) {
  qlk::QSeries chi;
  Json j;
  if (!level_str.empty()) {
    const Rat k = parse_level(level_str);
    chi = qlk::simple_character(k, N);
    j["k"] = qlk::rat_to_string(k);
  } else if (file.empty() || file == "-") {
    chi = read_qseries(std::cin);
  } else {
    std::ifstream in(file);
    if (!in)
      throw Error(ErrorCode::ParseError, "cli",
                  "cannot open q-series file '" + file + "'");
    chi = read_qseries(in);
  }
  const auto fit = qlk::minimal_mlde({chi}, max_order);
  if (!fit) {
    j["status"] = "NoSolution <= " + std::to_string(max_order);
    return j;
  }
  const Json body = qlk::mlde_json(fit->second);
  for (const auto& [key, value] : body.items()) j[key] = value;
  j["residual_zero"] = qlk::mlde_apply(fit->second, chi).is_zero();
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact-arithmetic toolkit for simple affine vertex algebras: level "
      "classification, vacuum characters, associated varieties and modular "
      "linear differential equations."};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "json", out_path;
  int threads = 0;
  app.add_option("--format", format, "Output format: json or text")
      ->capture_default_str();
  app.add_option("--out", out_path, "Write output to a file instead of stdout");
  app.add_option("--threads", threads,
                 "Worker threads for block-parallel phases");

  std::string g_str = "A1", k_str, level_str, file_str;
  int N = 12, max_order = 4;

  auto* classify = app.add_subcommand(
      "classify", "Classify a rational level for a simple type");
  classify->add_option("--g", g_str, "Simple type, e.g. A1, E8")
      ->capture_default_str();
  classify->add_option("--k", k_str, "Rational level, e.g. -1/2")->required();

  auto* deligne = app.add_subcommand(
      "deligne", "Exceptional-series table at k = -h_check/6 - 1");

  auto* variety = app.add_subcommand(
      "variety", "Associated variety of the simple sl2 vacuum algebra");
  variety->add_option("--k", k_str, "Rational level")->required();
  variety->add_option("--N", N, "Singular-vector search depth")
      ->capture_default_str();

  auto* chr = app.add_subcommand(
      "char", "Normalized vacuum character of the simple sl2 algebra");
  chr->add_option("--k", k_str, "Rational level")->required();
  chr->add_option("--N", N, "Truncation order")->capture_default_str();

  auto* mlde = app.add_subcommand(
      "mlde", "Fit a monic modular linear differential equation");
  mlde->add_option("--level", level_str,
                   "Fit the character of this sl2 level");
  mlde->add_option("--file", file_str,
                   "q-series input file ('-' or omitted: stdin)");
  mlde->add_option("--N", N, "Truncation for --level characters")
      ->capture_default_str();
  mlde->add_option("--max-order", max_order, "Largest order to try")
      ->capture_default_str();

  auto* rep = app.add_subcommand(
      "report-deligne-a1", "End-to-end consistency report at A1, k = -4/3");
  rep->add_option("--N", N, "Singular-vector search depth")
      ->capture_default_str();
  rep->add_option("--max-order", max_order, "Largest MLDE order to try")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (threads > 0)
      setenv("QLK_THREADS", std::to_string(threads).c_str(), 1);
    Json payload;
    if (classify->parsed())
      payload = cmd_classify(g_str, k_str);
    else if (deligne->parsed())
      payload = qlk::deligne_table_json();
    else if (variety->parsed())
      payload = cmd_variety(k_str, N);
    else if (chr->parsed())
      payload = cmd_char(k_str, N);
    else if (mlde->parsed())
      payload = cmd_mlde(level_str, file_str, N, max_order);
    else if (rep->parsed())
      payload = qlk::report_deligne_a1(N, max_order);
    emit(payload, format, out_path);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "[cli] " << e.what() << "\n";
    return 1;
  }
  return 0;
}
