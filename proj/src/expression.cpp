#include "rsf/expression.hpp"

#include <cctype>
#include <stdexcept>

namespace rsf {

std::vector<Letter> TraceTerm::word() const {
  if (!centred) return letters;
  std::vector<Letter> out;
  for (auto& f : factors) out.insert(out.end(), f.begin(), f.end());
  return out;
}

bool Expression::centred() const {
  for (auto& t : traces)
    if (t.centred) return true;
  return false;
}

std::string to_string(const Letter& l) {
  std::string s = l.colour;
  if (!l.label.empty()) s += "{" + l.label + "}";
  if (l.transpose) s += "'";
  return s;
}

std::vector<Letter> transpose_word(const std::vector<Letter>& w) {
  std::vector<Letter> out(w.rbegin(), w.rend());
  for (auto& l : out) l.transpose = !l.transpose;
  return out;
}

namespace {

std::string join_letters(const std::vector<Letter>& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? " " : "") + to_string(w[i]);
  return s;
}

std::string trace_string(const TraceTerm& t) {
  std::string s = t.normalized ? "tr(" : "Tr(";
  if (t.centred) {
    for (auto& f : t.factors) s += "[" + join_letters(f) + "]";
  } else {
    s += join_letters(t.letters);
  }
  return s + ")";
}

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  Expression parse() {
    Expression e;
    skip();
    if (peek_word() == "k" && lookahead_paren(1)) {
      pos_ += 1;
      expect('(');
      e.kind = ExpressionKind::Cumulant;
      e.traces.push_back(trace());
      while (accept(',')) e.traces.push_back(trace());
      expect(')');
    } else {
      e.kind = ExpressionKind::Moment;
      while (skip(), pos_ < s_.size()) e.traces.push_back(trace());
      if (e.traces.empty()) fail("empty expression");
    }
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument("expression '" + s_ + "' at column " + std::to_string(pos_ + 1) + ": " + msg);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
  std::string peek_word() const {
    std::size_t p = pos_;
    while (p < s_.size() && ident_char(s_[p])) ++p;
    return s_.substr(pos_, p - pos_);
  }
  bool lookahead_paren(std::size_t len) const {
    std::size_t p = pos_ + len;
    while (p < s_.size() && std::isspace(static_cast<unsigned char>(s_[p]))) ++p;
    return p < s_.size() && s_[p] == '(';
  }
  std::string ident() {
    skip();
    if (pos_ >= s_.size() || !ident_start(s_[pos_])) fail("expected an identifier");
    std::string w = peek_word();
    pos_ += w.size();
    return w;
  }

  TraceTerm trace() {
    skip();
    std::string w = peek_word();
    if (w != "tr" && w != "Tr") fail("expected tr( or Tr(");
    pos_ += 2;
    expect('(');
    TraceTerm t;
    t.normalized = w == "tr";
    skip();
    if (pos_ < s_.size() && s_[pos_] == '[') {
      t.centred = true;
      while (accept('[')) {
        std::vector<Letter> f;
        while (skip(), pos_ < s_.size() && s_[pos_] != ']') letters_into(f);
        expect(']');
        if (f.empty()) fail("empty centred factor");
        t.factors.push_back(std::move(f));
      }
    } else {
      while (skip(), pos_ < s_.size() && s_[pos_] != ')') letters_into(t.letters);
    }
    expect(')');
    return t;
  }

  void letters_into(std::vector<Letter>& out) {
    Letter l;
    l.colour = ident();
    if (l.colour == "tr" || l.colour == "Tr" || l.colour == "k") fail("reserved name used as a letter");
    if (accept('{')) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && s_[pos_] != '}') ++pos_;
      l.label = s_.substr(start, pos_ - start);
      expect('}');
    }
    if (accept('\'')) l.transpose = true;
    int power = 1;
    if (accept('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected an exponent");
      power = std::stoi(s_.substr(start, pos_ - start));
    }
    if (l.colour == "I") return;
    for (int i = 0; i < power; ++i) out.push_back(l);
  }

  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string Expression::to_string() const {
  std::string s;
  if (kind == ExpressionKind::Cumulant) {
    s = "k(";
    for (std::size_t i = 0; i < traces.size(); ++i) s += (i ? "," : "") + trace_string(traces[i]);
    return s + ")";
  }
  for (std::size_t i = 0; i < traces.size(); ++i) s += (i ? " " : "") + trace_string(traces[i]);
  return s;
}

void Expression::validate(const ModelMap& models) const {
  if (traces.empty()) throw std::invalid_argument("expression has no traces");
  for (auto& t : traces) {
    for (auto& l : t.word()) {
      auto it = models.find(l.colour);
      if (it == models.end()) throw std::invalid_argument("undeclared colour '" + l.colour + "'");
      if (it->second.explicit_d()) it->second.matrix(l.label);
    }
    if (t.centred)
      for (auto& f : t.factors) {
        if (f.empty()) throw std::invalid_argument("empty centred factor");
        for (auto& l : f)
          if (l.colour != f.front().colour) throw std::invalid_argument("a centred factor must use a single colour");
      }
  }
  if (centred()) {
    for (auto& t : traces)
      if (!t.centred) throw std::invalid_argument("centred and plain traces cannot be mixed");
    if (kind == ExpressionKind::Moment && traces.size() > 1)
      throw std::invalid_argument("products of centred traces must be written as a cumulant k(...)");
  }
}

Expression parse_expression(const std::string& text) {
  return Parser(text).parse();
}

LaurentValue exact_value(const Expression& e, const ModelMap& models, const ExactOptions& opt) {
  e.validate(models);
  int tr_count = 0;
  for (auto& t : e.traces) tr_count += t.normalized ? 1 : 0;
  int Tr_count = static_cast<int>(e.traces.size()) - tr_count;

  if (e.centred()) {
    CentredExpression ce;
    for (auto& t : e.traces) ce.traces.push_back(t.factors);
    return exact_centred_cumulant(ce, models, opt).shifted(-tr_count);
  }

  std::vector<std::vector<Letter>> nonempty;
  bool has_constant = false;
  for (auto& t : e.traces) {
    if (t.letters.empty())
      has_constant = true;
    else
      nonempty.push_back(t.letters);
  }

  if (e.kind == ExpressionKind::Moment) {
    LaurentValue v(Rational(1));
    if (!nonempty.empty()) v = exact_moment(TraceExpression::from_traces(nonempty), models, opt);
    return v.shifted(Tr_count);
  }
  if (has_constant) {
    if (e.traces.size() >= 2) return {};
    return LaurentValue(Rational(1)).shifted(Tr_count);
  }
  return exact_trace_cumulant(TraceExpression::from_traces(nonempty), models, opt).shifted(-tr_count);
}

double centring_constant(const std::vector<Letter>& factor, const ModelMap& models, int N) {
  LaurentValue v = exact_moment(TraceExpression::from_traces({factor}), models);
  if (v.has_c()) throw std::invalid_argument("centring a Wishart factor needs a numeric c");
  return to_double(v.evaluate(Rational(N)));
}

}  // namespace rsf
