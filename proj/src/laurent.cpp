#include "rsf/laurent.hpp"

#include <regex>
#include <sstream>
#include <stdexcept>

namespace rsf {

LaurentValue::LaurentValue(const Rational& constant) {
  add_term(constant, 0, 0);
}

LaurentValue LaurentValue::monomial(const Rational& coef, int n_power, int c_power) {
  LaurentValue v;
  v.add_term(coef, n_power, c_power);
  return v;
}

bool LaurentValue::has_c() const {
  for (auto& [k, v] : terms_)
    if (k.second != 0) return true;
  return false;
}

void LaurentValue::add_term(const Rational& coef, int n_power, int c_power) {
  if (c_power < 0) throw std::invalid_argument("negative power of c");
  if (coef == 0) return;
  Key key{n_power, c_power};
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, coef);
    return;
  }
  it->second += coef;
  if (it->second == 0) terms_.erase(it);
}

LaurentValue& LaurentValue::operator+=(const LaurentValue& o) {
  for (auto& [k, v] : o.terms_) add_term(v, k.first, k.second);
  return *this;
}

LaurentValue& LaurentValue::operator-=(const LaurentValue& o) {
  for (auto& [k, v] : o.terms_) add_term(-v, k.first, k.second);
  return *this;
}

LaurentValue& LaurentValue::operator*=(const LaurentValue& o) {
  LaurentValue r;
  for (auto& [a, x] : terms_)
    for (auto& [b, y] : o.terms_) r.add_term(x * y, a.first + b.first, a.second + b.second);
  *this = std::move(r);
  return *this;
}

LaurentValue LaurentValue::operator-() const {
  LaurentValue r;
  for (auto& [k, v] : terms_) r.terms_.emplace(k, -v);
  return r;
}

LaurentValue LaurentValue::shifted(int k) const {
  LaurentValue r;
  for (auto& [key, v] : terms_) r.terms_.emplace(Key{key.first + k, key.second}, v);
  return r;
}

LaurentValue LaurentValue::constant_term() const {
  LaurentValue r;
  for (auto& [k, v] : terms_)
    if (k.first == 0) r.terms_.emplace(k, v);
  return r;
}

std::optional<int> LaurentValue::max_n_power() const {
  std::optional<int> m;
  for (auto& [k, v] : terms_)
    if (!m || k.first > *m) m = k.first;
  return m;
}

namespace {

Rational rpow(const Rational& x, int k) {
  Rational r(1);
  Rational base = k < 0 ? Rational(1) / x : x;
  for (int i = 0; i < (k < 0 ? -k : k); ++i) r *= base;
  return r;
}

}  // namespace

Rational LaurentValue::evaluate(const Rational& N, const Rational& c) const {
  if (N == 0) throw std::invalid_argument("cannot evaluate at N = 0");
  Rational s(0);
  for (auto& [k, v] : terms_) s += v * rpow(N, k.first) * rpow(c, k.second);
  return s;
}

LaurentValue LaurentValue::substitute_c(const Rational& c) const {
  LaurentValue r;
  for (auto& [k, v] : terms_) r.add_term(v * rpow(c, k.second), k.first, 0);
  return r;
}

namespace {

std::string key_string(const LaurentValue::Key& k) {
  std::string s = "N^" + std::to_string(k.first);
  if (k.second) s += "*c^" + std::to_string(k.second);
  return s;
}

}  // namespace

nlohmann::json LaurentValue::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) j[key_string(it->first)] = rsf::to_string(it->second);
  return j;
}

LaurentValue LaurentValue::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("Laurent value must be a JSON object");
  static const std::regex key_re(R"(N\^(-?\d+)(?:\*c\^(\d+))?)");
  LaurentValue v;
  for (auto& [key, val] : j.items()) {
    std::smatch m;
    if (!std::regex_match(key, m, key_re)) throw std::invalid_argument("bad Laurent key '" + key + "'");
    int np = std::stoi(m[1].str());
    int cp = m[2].matched ? std::stoi(m[2].str()) : 0;
    Rational coef = val.is_string() ? parse_rational(val.get<std::string>()) : parse_rational(val.dump());
    v.add_term(coef, np, cp);
  }
  return v;
}

std::string LaurentValue::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    auto [np, cp] = it->first;
    Rational coef = it->second;
    bool neg = coef < 0;
    if (neg) coef = -coef;
    os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
    first = false;
    bool bare = np == 0 && cp == 0;
    if (coef != 1 || bare) os << rsf::to_string(coef) << (bare ? "" : "*");
    std::string mono;
    if (np != 0) mono += "N^" + std::to_string(np);
    if (cp != 0) mono += (mono.empty() ? "" : "*") + std::string("c") + (cp > 1 ? "^" + std::to_string(cp) : "");
    os << mono;
  }
  return os.str();
}

}  // namespace rsf
