#include "tuttebraid/number_json.hpp"

#include <sstream>
#include <string>
#include <vector>

#include "tuttebraid/errors.hpp"

namespace tuttebraid {

json to_json(const Rat& x) { return x.str(); }

json to_json(const Golden& x) { return json{{"a", x.a().str()}, {"b", x.b().str()}}; }

json to_json(const Cyc20& x) {
  json arr = json::array();
  for (const auto& c : x.coeffs()) arr.push_back(c.str());
  return arr;
}

json to_json(const LaurentA& x) {
  json obj = json::object();
  for (const auto& [e, c] : x.terms()) obj[std::to_string(e)] = c.get_str();
  return obj;
}

json to_json(const CDouble& x) { return json{{"re", x.real()}, {"im", x.imag()}}; }

Rat rat_from_json(const json& j) {
  if (j.is_string()) return Rat::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rat(j.get<long long>());
  throw ParseError("expected a rational string, got " + j.dump());
}

Golden golden_from_json(const json& j) {
  if (!j.is_object() || !j.contains("a") || !j.contains("b")) {
    throw ParseError("expected {\"a\": ..., \"b\": ...} golden element, got " + j.dump());
  }
  return Golden(rat_from_json(j.at("a")), rat_from_json(j.at("b")));
}

Cyc20 cyc20_from_json(const json& j) {
  if (!j.is_array() || j.size() != Cyc20::kDegree) {
    throw ParseError("expected an 8-element coefficient array, got " + j.dump());
  }
  std::array<Rat, Cyc20::kDegree> c{};
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = rat_from_json(j[i]);
  return Cyc20(c);
}

LaurentA laurent_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("expected an exponent→coefficient map, got " + j.dump());
  LaurentA::Terms terms;
  for (const auto& [key, value] : j.items()) {
    int e = 0;
    try {
      std::size_t used = 0;
      e = std::stoi(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw ParseError("bad Laurent exponent '" + key + "'");
    }
    mpz_class c;
    if (value.is_string()) {
      if (c.set_str(value.get<std::string>(), 10) != 0) throw ParseError("bad coefficient " + value.dump());
    } else if (value.is_number_integer()) {
      c = static_cast<long>(value.get<long long>());
    } else {
      throw ParseError("bad coefficient " + value.dump());
    }
    terms[e] += c;
  }
  return LaurentA(std::move(terms));
}

namespace {

std::vector<std::string> split_commas(std::string_view s) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s) {
    if (ch == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);
  return parts;
}

double parse_double(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("not a floating-point number: '" + s + "'");
  }
}

}  // namespace

Number parse_number(std::string_view text) {
  const std::string s(text);
  if (s.rfind("g:", 0) == 0) {
    auto parts = split_commas(std::string_view(s).substr(2));
    if (parts.size() != 2) throw ParseError("golden literal needs two coordinates: '" + s + "'");
    return Golden(Rat::parse(parts[0]), Rat::parse(parts[1]));
  }
  if (s.rfind("z:", 0) == 0) {
    auto parts = split_commas(std::string_view(s).substr(2));
    if (parts.size() != Cyc20::kDegree) throw ParseError("cyclotomic literal needs 8 coefficients: '" + s + "'");
    std::array<Rat, Cyc20::kDegree> c{};
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = Rat::parse(parts[i]);
    return Cyc20(c);
  }
  if (s.rfind("c:", 0) == 0) {
    auto parts = split_commas(std::string_view(s).substr(2));
    if (parts.size() != 2) throw ParseError("complex literal needs re,im: '" + s + "'");
    return CDouble(parse_double(parts[0]), parse_double(parts[1]));
  }
  const bool negate = !s.empty() && s.front() == '-';
  const std::string name = negate ? s.substr(1) : s;
  const auto consts = golden_constants();
  auto named = [&](const Golden& g) -> Number { return negate ? -g : g; };
  if (name == "tau") return named(consts.tau);
  if (name == "B5") return named(consts.B5);
  if (name == "B10") return named(consts.B10);
  if (name == "sqrt5") return named(consts.sqrt5);
  return Rat::parse(s);
}

json to_json(const Number& x) {
  return std::visit([](const auto& v) { return to_json(v); }, x);
}

std::string number_kind(const Number& x) {
  switch (x.index()) {
    case 0: return "rational";
    case 1: return "golden";
    case 2: return "cyclotomic";
    default: return "complex";
  }
}

CDouble approx(const Number& x) {
  return std::visit(
      [](const auto& v) -> CDouble {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Rat>) {
          return {v.to_double(), 0.0};
        } else if constexpr (std::is_same_v<T, CDouble>) {
          return v;
        } else {
          return embed(v);
        }
      },
      x);
}

}  // namespace tuttebraid
