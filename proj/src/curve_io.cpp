#include "wsg/curve_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace wsg {

namespace {

std::string value_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw Error(ErrorKind::ParseError, "coefficient values must be strings or integers");
}

}  // namespace

Curve curve_from_json(const Json& doc) {
  try {
    const int p = doc.at("p").get<int>();
    const int q = doc.at("q").get<int>();
    const TypePQ t(p, q);
    const auto& list = doc.at("coeffs");
    if (!list.is_array()) throw Error(ErrorKind::ParseError, "\"coeffs\" must be an array");
    if (doc.contains("precision_bits")) {
      const auto bits = doc.at("precision_bits").get<unsigned>();
      if (bits < 53) throw Error(ErrorKind::ParseError, "precision_bits must be at least 53");
      PrecisionScope scope(bits);
      const auto exps = coefficient_exponents(t);
      std::vector<Real> coeffs(exps.size(), Real(0));
      std::map<std::pair<int, int>, Rational> seen;  // validation only
      for (const auto& e : list) {
        const std::pair<int, int> key{e.at("nu").get<int>(), e.at("mu").get<int>()};
        seen[key] = 0;
        validate_curve(p, q, seen);
        const auto it = std::find(exps.begin(), exps.end(), key);
        const std::string text = value_text(e.at("value"));
        try {
          coeffs[static_cast<std::size_t>(it - exps.begin())] = Real(text);
        } catch (const std::exception&) {
          throw Error(ErrorKind::ParseError, "bad decimal \"" + text + "\"");
        }
      }
      return Curve::approx(t, coeffs, bits);
    }
    std::map<std::pair<int, int>, Rational> coeffs;
    for (const auto& e : list) {
      const std::pair<int, int> key{e.at("nu").get<int>(), e.at("mu").get<int>()};
      if (coeffs.count(key)) throw Error(ErrorKind::ParseError, "coefficient listed twice");
      coeffs[key] = parse_rational(value_text(e.at("value")));
    }
    return Curve::exact(t, coeffs);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("curve document: ") + e.what());
  }
}

Json curve_to_json(const Curve& c) {
  Json doc;
  doc["p"] = c.type().p();
  doc["q"] = c.type().q();
  if (!c.is_exact()) doc["precision_bits"] = c.precision_bits();
  Json list = Json::array();
  const auto exps = coefficient_exponents(c.type());
  for (std::size_t i = 0; i < exps.size(); ++i) {
    std::string value;
    if (c.is_exact()) {
      if (c.exact_coeffs()[i] == 0) continue;
      value = to_string(c.exact_coeffs()[i]);
    } else {
      value = c.approx_strings()[i];
      if (Real(value) == 0) continue;
    }
    Json e;
    e["nu"] = exps[i].first;
    e["mu"] = exps[i].second;
    e["value"] = value;
    list.push_back(std::move(e));
  }
  doc["coeffs"] = std::move(list);
  return doc;
}

Curve read_curve_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  Json doc;
  try {
    doc = Json::parse(ss.str());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, path.string() + ": " + e.what());
  }
  return curve_from_json(doc);
}

void write_curve_file(const std::filesystem::path& path, const Curve& c) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::ParseError, "cannot write " + path.string());
  out << curve_to_json(c).dump(2) << "\n";
}

}  // namespace wsg
