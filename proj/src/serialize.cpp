#include "dtower/serialize.hpp"

#include <stdexcept>

namespace dtower {

using nlohmann::json;

namespace {

json meta_json(const JacobiFormMeta& m) {
  json norm = json::array();
  for (const auto& d : m.norm_form) norm.push_back(to_string(d));
  return {{"weight2", m.weight2},
          {"index", to_string(m.index)},
          {"norm_form", norm},
          {"lattice", m.lattice},
          {"symmetry", m.symmetry}};
}

JacobiFormMeta meta_from_json(const json& j) {
  JacobiFormMeta m;
  m.weight2 = j.at("weight2").get<int>();
  m.index = parse_rational(j.at("index").get<std::string>());
  for (const auto& d : j.at("norm_form")) m.norm_form.push_back(parse_rational(d.get<std::string>()));
  m.lattice = j.value("lattice", "");
  m.symmetry = j.value("symmetry", "");
  return m;
}

}  // namespace

json to_json(const QExpansion& a) {
  json coeffs = json::array();
  for (const auto& [e, p] : a.coefficients()) {
    json terms = json::array();
    for (const auto& [m, c] : p.terms()) {
      json exps = json::array();
      for (std::size_t i = 0; i < a.nvars(); ++i) exps.push_back(m.doubled[i]);
      terms.push_back({{"exp", exps}, {"c", to_string(c)}});
    }
    coeffs.push_back({{"q24", e}, {"terms", terms}});
  }
  return {{"schema", kSchemaId},
          {"nvars", a.nvars()},
          {"trunc24", a.trunc24()},
          {"meta", a.meta() ? meta_json(*a.meta()) : json(nullptr)},
          {"coefficients", coeffs}};
}

QExpansion from_json(const json& j) {
  try {
    if (j.at("schema").get<std::string>() != kSchemaId)
      throw std::invalid_argument("unsupported schema '" + j.at("schema").get<std::string>() + "'");
    const auto n = j.at("nvars").get<std::size_t>();
    if (n > kMaxVars) throw std::invalid_argument("too many variables");
    QExpansion out(n, j.at("trunc24").get<int>());
    for (const auto& level : j.at("coefficients")) {
      const int e = level.at("q24").get<int>();
      if (e >= out.trunc24()) throw std::invalid_argument("coefficient at or beyond trunc24");
      std::vector<LaurentPoly::Term> terms;
      for (const auto& t : level.at("terms")) {
        const auto exps = t.at("exp").get<std::vector<int>>();
        if (exps.size() != n) throw std::invalid_argument("exponent vector length differs from nvars");
        terms.emplace_back(Monomial::from_doubled(exps), parse_rational(t.at("c").get<std::string>()));
      }
      out.add_term(e, LaurentPoly::from_terms(n, std::move(terms)));
    }
    if (!j.at("meta").is_null()) {
      JacobiFormMeta m = meta_from_json(j.at("meta"));
      if (!m.norm_form.empty() && m.norm_form.size() != n)
        throw std::invalid_argument("norm_form length differs from nvars");
      if (m.norm_form.empty() && n > 0 && m.index != 0) throw std::invalid_argument("norm_form missing");
      out.set_meta(m);
    }
    return out;
  } catch (const json::exception& ex) {
    throw std::invalid_argument(std::string("malformed expansion: ") + ex.what());
  } catch (const std::overflow_error& ex) {
    throw std::invalid_argument(std::string("malformed expansion: ") + ex.what());
  }
}

std::string serialize(const QExpansion& a) { return to_json(a).dump(); }

QExpansion deserialize(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& ex) {
    throw std::invalid_argument(std::string("invalid JSON: ") + ex.what());
  }
  return from_json(j);
}

}  // namespace dtower
