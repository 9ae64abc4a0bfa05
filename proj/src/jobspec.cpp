#include "rsf/jobspec.hpp"

#include <cctype>
#include <cstring>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "rsf/asymptotics.hpp"
#include "rsf/montecarlo.hpp"
#include "rsf/oracle.hpp"

namespace rsf {

using nlohmann::json;

namespace {

// Line of every value in a JSON text, keyed by JSON pointer.
class LineIndex {
 public:
  explicit LineIndex(const std::string& text) : s_(text) {
    if (s_.empty()) return;
    try {
      value("");
    } catch (...) {
      // malformed text is reported by the real parser
    }
  }
  int line(const std::string& ptr) const {
    std::string p = ptr;
    while (true) {
      auto it = lines_.find(p);
      if (it != lines_.end()) return it->second;
      auto slash = p.rfind('/');
      if (slash == std::string::npos) return 0;
      p = p.substr(0, slash);
    }
  }

 private:
  void ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) {
      if (s_[i_] == '\n') ++line_;
      ++i_;
    }
  }
  std::string str() {
    std::string out;
    ++i_;
    while (i_ < s_.size() && s_[i_] != '"') {
      if (s_[i_] == '\\') ++i_;
      if (i_ < s_.size()) out.push_back(s_[i_++]);
    }
    ++i_;
    return out;
  }
  static std::string escape(const std::string& k) {
    std::string o;
    for (char c : k) {
      if (c == '~')
        o += "~0";
      else if (c == '/')
        o += "~1";
      else
        o.push_back(c);
    }
    return o;
  }
  void value(const std::string& ptr) {
    ws();
    lines_[ptr] = line_;
    if (i_ >= s_.size()) throw 0;
    char c = s_[i_];
    if (c == '{') {
      ++i_;
      ws();
      if (s_[i_] == '}') {
        ++i_;
        return;
      }
      while (true) {
        ws();
        std::string key = str();
        ws();
        ++i_;  // ':'
        value(ptr + "/" + escape(key));
        ws();
        if (s_.at(i_++) == '}') return;
      }
    } else if (c == '[') {
      ++i_;
      ws();
      if (s_[i_] == ']') {
        ++i_;
        return;
      }
      for (int k = 0;; ++k) {
        value(ptr + "/" + std::to_string(k));
        ws();
        if (s_.at(i_++) == ']') return;
      }
    } else if (c == '"') {
      str();
    } else {
      while (i_ < s_.size() && !std::strchr(",]} \t\r\n", s_[i_])) ++i_;
    }
  }

  const std::string& s_;
  std::size_t i_ = 0;
  int line_ = 1;
  std::map<std::string, int> lines_;
};

class Ctx {
 public:
  explicit Ctx(const std::string& text) : index_(text), has_text_(!text.empty()) {}
  [[noreturn]] void fail(const std::string& ptr, const std::string& msg) const {
    std::ostringstream os;
    if (has_text_) os << "line " << index_.line(ptr) << ": ";
    os << (ptr.empty() ? "/" : ptr) << ": " << msg;
    throw SchemaError(os.str());
  }

 private:
  LineIndex index_;
  bool has_text_;
};

Rational json_rational(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number()) return parse_rational(j.dump());
  throw std::invalid_argument("expected a number or a rational string");
}

Letter parse_letter_json(const json& j) {
  if (j.is_string()) {
    Expression e = parse_expression("tr(" + j.get<std::string>() + ")");
    if (e.traces[0].letters.size() != 1) throw std::invalid_argument("expected a single letter");
    return e.traces[0].letters[0];
  }
  if (!j.is_object() || !j.contains("colour")) throw std::invalid_argument("a letter needs a colour");
  Letter l;
  l.colour = j.at("colour").get<std::string>();
  if (j.contains("label")) l.label = j.at("label").get<std::string>();
  if (j.contains("transpose")) l.transpose = j.at("transpose").get<bool>();
  return l;
}

std::vector<Letter> parse_letters_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected a list of letters");
  std::vector<Letter> out;
  for (auto& x : j) out.push_back(parse_letter_json(x));
  return out;
}

Expression parse_structured(const json& j) {
  std::string type = j.value("type", "moment");
  bool normalized = j.value("normalized", true);
  Expression e;
  if (type == "centred" || type == "centered") {
    e.kind = j.value("cumulant", true) ? ExpressionKind::Cumulant : ExpressionKind::Moment;
    if (!j.contains("traces")) throw std::invalid_argument("centred expressions need 'traces'");
    for (auto& t : j.at("traces")) {
      TraceTerm tt;
      tt.normalized = normalized;
      tt.centred = true;
      for (auto& f : t) tt.factors.push_back(parse_letters_json(f));
      e.traces.push_back(std::move(tt));
    }
    return e;
  }
  if (type == "moment")
    e.kind = ExpressionKind::Moment;
  else if (type == "cumulant")
    e.kind = ExpressionKind::Cumulant;
  else
    throw std::invalid_argument("unknown expression type '" + type + "'");
  if (!j.contains("letters")) throw std::invalid_argument("expression needs 'expr' or 'letters'");
  auto letters = parse_letters_json(j.at("letters"));
  int n = static_cast<int>(letters.size());
  SignedPermutation gamma;
  if (j.contains("gamma")) {
    gamma = SignedPermutation::parse(j.at("gamma").get<std::string>());
  } else {
    std::map<int, int> m;
    for (int k = 1; k <= n; ++k) m[k] = k == n ? 1 : k + 1;
    gamma = n ? SignedPermutation::from_map(m) : SignedPermutation();
  }
  if (!is_subset(gamma.support(), interval(n))) throw std::invalid_argument("gamma must permute 1..n");
  for (auto& c : gamma.cycles(interval(n))) {
    TraceTerm tt;
    tt.normalized = normalized;
    for (int k : c) tt.letters.push_back(letters[k - 1]);
    e.traces.push_back(std::move(tt));
  }
  if (e.traces.empty()) e.traces.emplace_back();
  return e;
}

}  // namespace

EnsembleModel parse_model(const json& j) {
  if (j.is_string()) return parse_model_shorthand(j.get<std::string>());
  if (!j.is_object() || !j.contains("kind")) throw std::invalid_argument("a model needs a 'kind'");
  EnsembleKind kind = parse_ensemble_kind(j.at("kind").get<std::string>());
  if (kind != EnsembleKind::Wishart) {
    if (j.contains("c") || j.contains("D")) throw std::invalid_argument("only Wishart models take 'c' or 'D'");
    return kind == EnsembleKind::GOE ? EnsembleModel::goe() : EnsembleModel::ginibre();
  }
  if (j.contains("D")) {
    if (j.contains("c")) throw std::invalid_argument("give either 'c' or 'D', not both");
    std::map<std::string, RMatrix> d;
    for (auto& [label, rows] : j.at("D").items()) {
      if (!rows.is_array() || rows.empty()) throw std::invalid_argument("D matrix '" + label + "' must be a nonempty list of rows");
      RMatrix m(rows.size(), rows[0].size());
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (!rows[r].is_array() || rows[r].size() != rows[0].size())
          throw std::invalid_argument("D matrix '" + label + "' has ragged rows");
        for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = json_rational(rows[r][c]);
      }
      d.emplace(label, std::move(m));
    }
    return EnsembleModel::wishart_explicit(std::move(d));
  }
  if (j.contains("c")) {
    Rational c = json_rational(j.at("c"));
    if (c <= 0) throw std::invalid_argument("c must be positive");
    return EnsembleModel::wishart(c);
  }
  return EnsembleModel::wishart();
}

EnsembleModel parse_model_shorthand(const std::string& s) {
  auto colon = s.find(':');
  std::string kind = s.substr(0, colon);
  EnsembleKind k = parse_ensemble_kind(kind);
  if (colon == std::string::npos) {
    switch (k) {
      case EnsembleKind::GOE: return EnsembleModel::goe();
      case EnsembleKind::Ginibre: return EnsembleModel::ginibre();
      case EnsembleKind::Wishart: return EnsembleModel::wishart();
    }
  }
  std::string rest = s.substr(colon + 1);
  if (k != EnsembleKind::Wishart || rest.rfind("c=", 0) != 0)
    throw std::invalid_argument("model shorthand '" + s + "' not understood (use wishart:c=p/q)");
  Rational c = parse_rational(rest.substr(2));
  if (c <= 0) throw std::invalid_argument("c must be positive");
  return EnsembleModel::wishart(c);
}

JobSpec parse_jobspec(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < std::min(e.byte, text.size()); ++i)
      if (text[i] == '\n') ++line;
    throw SchemaError("line " + std::to_string(line) + ": invalid JSON: " + e.what());
  }
  return parse_jobspec(j, text);
}

JobSpec parse_jobspec(const json& j, const std::string& text) {
  Ctx ctx(text);
  JobSpec spec;
  if (!j.is_object()) ctx.fail("", "the job specification must be a JSON object");
  static const std::set<std::string> keys{"ensembles", "expressions", "modes", "N",  "samples", "seed",
                                          "threads",   "output",      "max_terms"};
  for (auto& [k, v] : j.items())
    if (!keys.count(k)) ctx.fail("/" + k, "unknown key '" + k + "'");

  if (j.contains("ensembles")) {
    const json& e = j.at("ensembles");
    if (!e.is_object()) ctx.fail("/ensembles", "must be an object of colour -> model");
    for (auto& [name, desc] : e.items()) {
      try {
        if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0])))
          throw std::invalid_argument("colour names must start with a letter");
        if (name == "I" || name == "tr" || name == "Tr" || name == "k")
          throw std::invalid_argument("'" + name + "' is reserved");
        spec.ensembles.emplace(name, parse_model(desc));
      } catch (const std::exception& ex) {
        ctx.fail("/ensembles/" + name, ex.what());
      }
    }
  }
  if (j.contains("modes")) {
    const json& m = j.at("modes");
    if (!m.is_array()) ctx.fail("/modes", "must be a list");
    spec.modes.clear();
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (!m[i].is_string() || !known_modes().count(m[i].get<std::string>()))
        ctx.fail("/modes/" + std::to_string(i), "unknown mode");
      spec.modes.insert(m[i].get<std::string>());
    }
  }
  if (j.contains("N")) {
    const json& n = j.at("N");
    json list = n.is_array() ? n : json::array({n});
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (!list[i].is_number_integer() || list[i].get<long long>() < 1)
        ctx.fail("/N" + (n.is_array() ? "/" + std::to_string(i) : std::string()), "N must be a positive integer");
      spec.N.push_back(list[i].get<int>());
    }
  }
  auto positive = [&](const char* key, auto& field) {
    if (!j.contains(key)) return;
    const json& v = j.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) ctx.fail(std::string("/") + key, "must be a nonnegative integer");
    field = static_cast<std::remove_reference_t<decltype(field)>>(v.get<unsigned long long>());
  };
  positive("samples", spec.samples);
  positive("seed", spec.seed);
  positive("threads", spec.threads);
  if (j.contains("max_terms")) {
    if (!j.at("max_terms").is_number() || j.at("max_terms").get<double>() <= 0) ctx.fail("/max_terms", "must be positive");
    spec.max_terms = j.at("max_terms").get<double>();
  }
  if (j.contains("output")) {
    const json& o = j.at("output");
    if (!o.is_object()) ctx.fail("/output", "must be an object");
    if (o.contains("path")) spec.out_path = o.at("path").get<std::string>();
    if (o.contains("format")) {
      spec.format = o.at("format").get<std::string>();
      if (spec.format != "json" && spec.format != "csv") ctx.fail("/output/format", "format must be json or csv");
    }
  }
  if (j.contains("expressions")) {
    const json& ex = j.at("expressions");
    if (!ex.is_array()) ctx.fail("/expressions", "must be a list");
    std::set<std::string> names;
    for (std::size_t i = 0; i < ex.size(); ++i) {
      std::string ptr = "/expressions/" + std::to_string(i);
      const json& x = ex[i];
      ExpressionSpec es;
      try {
        if (x.is_string()) {
          es.expr = parse_expression(x.get<std::string>());
        } else if (x.is_object()) {
          if (x.contains("expr"))
            es.expr = parse_expression(x.at("expr").get<std::string>());
          else
            es.expr = parse_structured(x);
          if (x.contains("name")) es.name = x.at("name").get<std::string>();
        } else {
          throw std::invalid_argument("an expression is a string or an object");
        }
        es.expr.validate(spec.ensembles);
      } catch (const std::exception& e) {
        ctx.fail(ptr, e.what());
      }
      if (es.name.empty()) es.name = "e" + std::to_string(i + 1);
      if (!names.insert(es.name).second) ctx.fail(ptr, "duplicate expression name '" + es.name + "'");
      spec.expressions.push_back(std::move(es));
    }
  }
  if (spec.modes.count("mc")) {
    if (spec.N.empty()) ctx.fail("/N", "mode mc needs at least one N");
    if (spec.samples < 2) ctx.fail("/samples", "mode mc needs at least two samples");
    for (auto& [name, m] : spec.ensembles)
      if (m.kind == EnsembleKind::Wishart && !m.explicit_d() && !m.ratio)
        ctx.fail("/ensembles/" + name, "mode mc needs a numeric c");
  }
  return spec;
}

JobSpec load_jobspec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot read job specification '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_jobspec(ss.str());
  } catch (const SchemaError& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

namespace {

bool alternating(const std::vector<std::vector<Letter>>& f, bool cyclic = true) {
  try {
    require_alternating(f, cyclic);
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

json verdict(const std::string& check, bool pass) {
  return json{{"check", check}, {"verdict", check + ": " + (pass ? "pass" : "fail")}, {"pass", pass}};
}

std::string colour_of(const Expression& e) {
  std::string c;
  for (auto& t : e.traces)
    for (auto& l : t.word()) {
      if (c.empty()) c = l.colour;
      if (l.colour != c) return "";
    }
  return c;
}

// Power p if the word is p copies of one untransposed-or-not letter.
int letter_power(const std::vector<Letter>& w) {
  if (w.empty()) return 0;
  for (auto& l : w)
    if (l.colour != w[0].colour || l.label != w[0].label) return 0;
  return static_cast<int>(w.size());
}

std::vector<int> oracle_ns(const JobSpec& spec) {
  std::vector<int> ns;
  for (int n : spec.N)
    if (n <= 4) ns.push_back(n);
  if (ns.empty()) ns = {2, 3};
  return ns;
}

bool all_numeric(const Expression& e, const ModelMap& models) {
  for (auto& t : e.traces)
    for (auto& l : t.word()) {
      auto& m = models.at(l.colour);
      if (m.kind == EnsembleKind::Wishart && !m.explicit_d() && !m.ratio) return false;
    }
  return true;
}

}  // namespace

RunResult run_job(const JobSpec& spec) {
  RunResult res;
  json results = json::array();
  int guard_count = 0, failed = 0, checks = 0;
  ExactOptions xo;
  xo.max_terms = spec.max_terms;

  for (std::size_t idx = 0; idx < spec.expressions.size(); ++idx) {
    const auto& es = spec.expressions[idx];
    const Expression& e = es.expr;
    json r{{"name", es.name}, {"expression", e.to_string()}};
    json errors = json::array();
    bool guard_hit = false;
    std::optional<LaurentValue> exact;

    auto guarded = [&](const std::string& mode, const std::function<void()>& fn) {
      try {
        fn();
      } catch (const GuardExceeded& g) {
        guard_hit = true;
        errors.push_back({{"mode", mode}, {"kind", "guard"}, {"message", g.what()},
                          {"projected", static_cast<double>(g.projected())}});
      } catch (const std::exception& ex) {
        ++failed;
        errors.push_back({{"mode", mode}, {"kind", "error"}, {"message", ex.what()}});
      }
    };
    auto need_exact = [&]() -> const LaurentValue& {
      if (!exact) exact = exact_value(e, spec.ensembles, xo);
      return *exact;
    };

    if (spec.modes.count("exact"))
      guarded("exact", [&] {
        const LaurentValue& v = need_exact();
        r["exact"] = v.to_json();
        r["exact_text"] = v.to_string();
      });

    if (spec.modes.count("asymptotic"))
      guarded("asymptotic", [&] {
        json a;
        const LaurentValue& v = need_exact();
        a["constant_term"] = v.constant_term().to_json();
        auto top = v.max_n_power();
        a["max_n_power"] = top ? json(*top) : json(nullptr);
        a["provenance"] = "constant term of the exact value";
        std::string colour = colour_of(e);
        if (!e.centred() && !colour.empty() && !spec.ensembles.at(colour).explicit_d()) {
          const EnsembleModel& m = spec.ensembles.at(colour);
          if (e.kind == ExpressionKind::Moment && e.order() == 1 && e.traces[0].normalized &&
              e.traces[0].letters.size() <= 10) {
            a["enumeration"] = phi1(e.traces[0].letters, m).value.to_json();
            a["enumeration_provenance"] = "disc-noncrossing enumeration";
          }
          if (e.kind == ExpressionKind::Cumulant && e.order() == 2 && !e.traces[0].normalized &&
              !e.traces[1].normalized && e.traces[0].letters.size() + e.traces[1].letters.size() <= 10) {
            a["enumeration"] = phi2(e.traces[0].letters, e.traces[1].letters, m).value.to_json();
            a["enumeration_provenance"] = "annular-noncrossing enumeration, both orientations";
            int p = letter_power(e.traces[0].letters), q = letter_power(e.traces[1].letters);
            if (p && q && m.kind != EnsembleKind::Ginibre) {
              Rational cf = m.kind == EnsembleKind::GOE ? closed_form_goe_fluct(p, q) : closed_form_wishart_fluct(p, q);
              bool applicable = m.kind == EnsembleKind::GOE || (m.ratio && *m.ratio == 1);
              if (applicable) {
                a["closed_form"] = to_string(cf);
                bool agrees = LaurentValue(cf) == LaurentValue::from_json(a["enumeration"]);
                a["closed_form_agrees"] = agrees;
                if (!agrees) a["discrepancy"] = "closed form differs from enumeration; enumeration is authoritative";
              }
            }
          }
        }
        if (e.kind == ExpressionKind::Cumulant && e.order() >= 3) a["vanishes_in_limit"] = vanishes_in_limit(v);
        r["asymptotic"] = a;
      });

    if (spec.modes.count("oracle")) {
      json rows = json::array();
      for (int n : oracle_ns(spec))
        guarded("oracle", [&] {
          Rational o = mc_crosscheck_value(e, spec.ensembles, n);
          json row{{"N", n}, {"value", to_string(o)}};
          if (all_numeric(e, spec.ensembles)) {
            Rational x = need_exact().evaluate(Rational(n));
            row["exact"] = to_string(x);
            row["agree"] = x == o;
          }
          rows.push_back(row);
        });
      r["oracle"] = rows;
    }

    if (spec.modes.count("mc")) {
      json rows = json::array();
      for (int n : spec.N)
        guarded("mc", [&] {
          MCOptions mo;
          mo.samples = spec.samples;
          mo.threads = spec.threads;
          mo.seed = block_seed(block_seed(spec.seed, idx), static_cast<std::uint64_t>(n));
          MCEstimate est = estimate(e, spec.ensembles, n, mo);
          json row{{"N", n}, {"samples", est.samples}, {"seed", est.seed}, {"mean", est.mean}, {"se", est.std_error}};
          for (auto& t : e.traces)
            for (auto& l : t.word()) {
              auto& m = spec.ensembles.at(l.colour);
              if (m.kind == EnsembleKind::Wishart) row["M:" + l.colour] = wishart_rows(m, n);
            }
          try {
            double x = to_double(need_exact().evaluate(Rational(n)));
            row["exact"] = x;
            row["z"] = est.std_error > 0 ? std::abs(est.mean - x) / est.std_error : 0.0;
          } catch (const GuardExceeded&) {
            row["exact"] = nullptr;
          }
          rows.push_back(row);
        });
      r["mc"] = rows;
    }

    if (spec.modes.count("verify")) {
      json checks_out = json::array();
      guarded("verify", [&] {
        std::vector<std::vector<std::vector<Letter>>> groups;
        for (auto& t : e.traces) groups.push_back(t.factors);
        if (e.centred() && e.order() == 1 && alternating(groups[0], false)) {
          LaurentValue d = freeness_defect(groups[0], spec.ensembles, xo);
          json c = verdict("freeness", d.constant_term().is_zero());
          c["defect"] = d.to_json();
          checks_out.push_back(c);
        } else if (e.centred() && e.kind == ExpressionKind::Cumulant && e.order() == 2 && alternating(groups[0]) &&
                   alternating(groups[1])) {
          LaurentValue lhs = second_order_lhs(groups[0], groups[1], spec.ensembles, xo);
          LaurentValue rhs = second_order_rhs(groups[0], groups[1], spec.ensembles, xo);
          bool zero = groups[0].size() != groups[1].size();
          json c = verdict(zero ? "zero-limit" : "second-order", lhs == rhs && (!zero || lhs.is_zero()));
          c["lhs"] = lhs.to_json();
          c["rhs"] = rhs.to_json();
          checks_out.push_back(c);
        } else if (e.kind == ExpressionKind::Cumulant && e.order() >= 3 && !e.centred()) {
          std::vector<std::vector<Letter>> words;
          for (auto& t : e.traces) words.push_back(t.letters);
          bool nonempty = true;
          for (auto& w : words) nonempty = nonempty && !w.empty();
          LaurentValue v = nonempty ? higher_cumulant(words, spec.ensembles, xo) : LaurentValue();
          json c = verdict("higher-cumulant-vanishing", vanishes_in_limit(v));
          c["value"] = v.to_json();
          checks_out.push_back(c);
        } else {
          if (!all_numeric(e, spec.ensembles)) throw std::invalid_argument("oracle agreement needs a numeric c");
          bool ok = true;
          json detail = json::array();
          for (int n : oracle_ns(spec)) {
            Rational o = oracle_value(e, spec.ensembles, n);
            Rational x = need_exact().evaluate(Rational(n));
            ok = ok && o == x;
            detail.push_back({{"N", n}, {"oracle", to_string(o)}, {"exact", to_string(x)}});
          }
          json c = verdict("oracle-agreement", ok);
          c["detail"] = detail;
          checks_out.push_back(c);
        }
      });
      for (auto& c : checks_out) {
        ++checks;
        if (!c["pass"].get<bool>()) ++failed;
      }
      r["verify"] = checks_out;
    }

    if (!errors.empty()) r["errors"] = errors;
    if (guard_hit) ++guard_count;
    results.push_back(r);
  }

  res.report = json{{"results", results},
                    {"summary",
                     {{"expressions", spec.expressions.size()},
                      {"verifications", checks},
                      {"failures", failed},
                      {"guard_exceeded", guard_count}}}};
  if (!spec.expressions.empty() && guard_count == static_cast<int>(spec.expressions.size()))
    res.exit_code = kGuard;
  else if (failed > 0)
    res.exit_code = kVerifyFailed;
  else
    res.exit_code = kPass;
  return res;
}

namespace {

std::string csv_cell(const json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : (v.is_null() ? "" : v.dump());
  if (s.find_first_of(",\"\n") != std::string::npos) {
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  return s;
}

}  // namespace

std::string report_csv(const json& report) {
  std::ostringstream os;
  os << "name,mode,N,samples,seed,value,se,exact,z,verdict\n";
  auto row = [&](const json& r, const std::string& mode, const json& N, const json& samples, const json& seed,
                 const json& value, const json& se, const json& exact, const json& z, const json& verdict) {
    os << csv_cell(r["name"]) << ',' << mode << ',' << csv_cell(N) << ',' << csv_cell(samples) << ','
       << csv_cell(seed) << ',' << csv_cell(value) << ',' << csv_cell(se) << ',' << csv_cell(exact) << ','
       << csv_cell(z) << ',' << csv_cell(verdict) << '\n';
  };
  for (auto& r : report.at("results")) {
    if (r.contains("exact")) row(r, "exact", nullptr, nullptr, nullptr, r["exact_text"], nullptr, nullptr, nullptr, nullptr);
    if (r.contains("asymptotic"))
      row(r, "asymptotic", nullptr, nullptr, nullptr, LaurentValue::from_json(r["asymptotic"]["constant_term"]).to_string(),
          nullptr, nullptr, nullptr, nullptr);
    if (r.contains("oracle"))
      for (auto& o : r["oracle"])
        row(r, "oracle", o["N"], nullptr, nullptr, o["value"], nullptr, o.value("exact", json(nullptr)), nullptr,
            nullptr);
    if (r.contains("mc"))
      for (auto& m : r["mc"])
        row(r, "mc", m["N"], m["samples"], m["seed"], m["mean"], m["se"], m.value("exact", json(nullptr)),
            m.value("z", json(nullptr)), nullptr);
    if (r.contains("verify"))
      for (auto& v : r["verify"]) row(r, "verify", nullptr, nullptr, nullptr, nullptr, nullptr, nullptr, nullptr, v["verdict"]);
    if (r.contains("errors"))
      for (auto& e : r["errors"])
        row(r, e["mode"].get<std::string>() + ":" + e["kind"].get<std::string>(), nullptr, nullptr, nullptr,
            e["message"], nullptr, nullptr, nullptr, nullptr);
  }
  return os.str();
}

std::string render_report(const JobSpec& spec, const json& report) {
  std::string text = spec.format == "csv" ? report_csv(report) : report.dump(2) + "\n";
  if (!spec.out_path.empty()) {
    std::ofstream out(spec.out_path);
    if (!out) throw std::runtime_error("cannot write report '" + spec.out_path + "'");
    out << text;
  }
  return text;
}

}  // namespace rsf
