#include "qlk/report.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qlk/errors.hpp"

namespace qlk {

namespace {

Json int_json(const Int& z) {
  if (z.fits_slong_p()) return Json(static_cast<long long>(z.get_si()));
  return Json(z.get_str());
}

const char* verdict_name(int state) {
  return state > 0 ? "CONSISTENT" : state == 0 ? "INCONCLUSIVE"
                                               : "INCONSISTENT";
}

void render_into(const Json& j, int indent, std::string& out) {
  const std::string pad(indent, ' ');
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (value.is_object() || value.is_array()) {
        out += pad + key + ":\n";
        render_into(value, indent + 2, out);
      } else if (value.is_string()) {
        out += pad + key + ": " + value.get<std::string>() + "\n";
      } else {
        out += pad + key + ": " + value.dump() + "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& value : j) {
      if (value.is_object() || value.is_array()) {
        out += pad + "-\n";
        render_into(value, indent + 2, out);
      } else if (value.is_string()) {
        out += pad + "- " + value.get<std::string>() + "\n";
      } else {
        out += pad + "- " + value.dump() + "\n";
      }
    }
  } else {
    out += pad + j.dump() + "\n";
  }
}

}  // namespace

Json level_report_json(const LevelReport& rep) {
  Json j;
  j["k"] = rat_to_string(rep.k);
  j["admissible"] = rep.admissible;
  if (rep.p) j["p"] = int_json(*rep.p);
  if (rep.q) j["q"] = int_json(*rep.q);
  j["integrable"] = rep.integrable;
  j["critical"] = rep.critical;
  if (rep.deligne_index) j["deligne_index"] = *rep.deligne_index;
  if (rep.c_defined) j["c_sugawara"] = rat_to_string(rep.c_sugawara);
  j["predicted_variety"] = predicted_variety_name(rep.predicted_variety);
  return j;
}

Json deligne_table_json() {
  static const std::pair<char, int> kSeries[] = {
      {'A', 1}, {'A', 2}, {'G', 2}, {'D', 4},
      {'F', 4}, {'E', 6}, {'E', 7}, {'E', 8},
  };
  Json rows = Json::array();
  for (const auto& [letter, rank] : kSeries) {
    const SimpleLieAlgebraData g = build(letter, rank);
    const Level k = deligne_level(g, 0);
    const LevelReport rep = classify(g, k);
    Json row;
    row["type"] = series_name(g.series) + std::to_string(g.rank);
    row["k"] = rat_to_string(k);
    row["admissible"] = rep.admissible;
    row["predicted_variety"] = predicted_variety_name(rep.predicted_variety);
    if ((letter == 'D' && rank == 4) || (letter == 'F' && rank == 4))
      row["paper-discrepancy"] =
          "the two published lists for the exceptional series disagree on "
          "this type; the verdict here follows the admissibility criterion";
    rows.push_back(std::move(row));
  }
  Json j;
  j["n"] = 0;
  j["rows"] = std::move(rows);
  return j;
}

Json character_json(const QCharacter& chi) {
  Json coeffs = Json::array();
  for (const Rat& a : chi.c) coeffs.push_back(rat_to_string(a));
  Json j;
  j["alpha"] = rat_to_string(chi.alpha);
  j["coeffs"] = std::move(coeffs);
  return j;
}

Json variety_json(const VarietyResult& v) {
  Json gens = Json::array();
  for (const Poly& g : v.ideal.generators) gens.push_back(poly_to_string(g));
  Json j;
  j["krull_dim"] = v.report.krull_dim;
  j["in_nilcone"] = v.report.in_nilcone;
  j["lisse"] = v.report.lisse;
  j["quasi_lisse_sl2"] = v.report.quasi_lisse_sl2;
  j["truncation_degree"] = v.report.truncation_degree;
  j["ideal"] = std::move(gens);
  return j;
}

Json slodowy_json(const SlodowyResult& s) {
  Json gens = Json::array();
  for (const Poly& g : s.restricted)
    gens.push_back(poly_to_string(g, {"s", "x_h", "x_f", "t"}));
  Json j;
  j["restricted"] = std::move(gens);
  j["dim"] = s.dim;
  return j;
}

Json mlde_json(const MLDE& m) {
  Json coeffs = Json::array();
  for (const ModularForm& f : m.coeff_forms) {
    Json monos = Json::object();
    const auto basis = modular_basis(f.weight);
    for (std::size_t i = 0; i < basis.size(); ++i)
      monos[monomial_key(basis[i].first, basis[i].second)] =
          rat_to_string(f.coords[i]);
    Json entry;
    entry["weight"] = f.weight;
    entry["monomials"] = std::move(monos);
    coeffs.push_back(std::move(entry));
  }
  Json j;
  j["order"] = m.order;
  j["coeffs"] = std::move(coeffs);
  const IndicialInfo info = indicial_roots(m);
  std::vector<Rat> roots = info.roots;
  std::sort(roots.begin(), roots.end());
  Json rj = Json::array();
  for (const Rat& r : roots) rj.push_back(rat_to_string(r));
  j["indicial_roots"] = std::move(rj);
  j["indicial_complete"] = info.complete;
  return j;
}

Json report_deligne_a1(int N, int max_order) {
  const SimpleLieAlgebraData g = build('A', 1);
  const Rat k = rat(-4, 3);

  Json doc;
  doc["level"] = level_report_json(classify(g, k));

  const VarietyResult v = variety_of_level(k, N);
  Json vj = variety_json(v);
  if (v.ideal.generators.empty())
    vj["note"] = "no singular vector found <= " + std::to_string(N);
  doc["variety"] = std::move(vj);

  const SlodowyResult s = slodowy_restrict(v.ideal);
  doc["slodowy"] = slodowy_json(s);

  const QCharacter chi = simple_character(k, N);
  doc["character"] = character_json(chi);

  std::optional<std::pair<int, MLDE>> fit;
  bool too_short = false;
  try {
    fit = minimal_mlde({chi}, max_order);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::InsufficientTruncation) throw;
    too_short = true;
  }
  bool residual_zero = false;
  Json mj;
  if (fit) {
    mj = mlde_json(fit->second);
    residual_zero = mlde_apply(fit->second, chi).is_zero();
    mj["residual_zero"] = residual_zero;
  } else if (too_short) {
    mj["status"] = "InsufficientTruncation at N = " + std::to_string(N);
  } else {
    mj["status"] = "NoSolution <= " + std::to_string(max_order);
  }
  doc["mlde"] = std::move(mj);

  // The computed variety only ever over-approximates, so a too-large answer
  // is inconclusive (deepen N), while a too-small one is a contradiction.
  const int variety_state =
      (v.report.krull_dim == 2 && v.report.in_nilcone) ? 1
      : (v.report.krull_dim >= 2)                      ? 0
                                                       : -1;
  const int slodowy_state = s.dim == 0 ? 1 : s.dim > 0 ? 0 : -1;
  const int alpha_state = chi.alpha == rat(1, 4) ? 1 : -1;
  const int mlde_state = fit ? (residual_zero ? 1 : -1) : 0;

  Json verdicts;
  verdicts["variety_is_nilpotent_cone"] = verdict_name(variety_state);
  verdicts["slodowy_dim_zero"] = verdict_name(slodowy_state);
  verdicts["character_alpha_quarter"] = verdict_name(alpha_state);
  verdicts["mlde_order_le_max"] = verdict_name(mlde_state);
  doc["verdicts"] = std::move(verdicts);

  const int agg = std::min(std::min(variety_state, slodowy_state),
                           std::min(alpha_state, mlde_state));
  doc["verdict"] = verdict_name(agg);
  return doc;
}

std::string render_text(const Json& doc) {
  std::string out;
  render_into(doc, 0, out);
  return out;
}

std::string render(const Json& doc, const std::string& format) {
  if (format == "json") return doc.dump(2) + "\n";
  if (format == "text") return render_text(doc);
  throw Error(ErrorCode::ParseError, "cli", "unknown format '" + format +
                                                "' (expected json or text)");
}

}  // namespace qlk
