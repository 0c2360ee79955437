#include "frobsurf/poly.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace frobsurf {

bool grlex_before(const Exponents& a, const Exponents& b) {
  const auto da = a[0] + a[1] + a[2] + a[3];
  const auto db = b[0] + b[1] + b[2] + b[3];
  if (da != db) return da > db;
  return a > b;
}

namespace {

struct GrlexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const { return grlex_before(a, b); }
};

using TermMap = std::map<Exponents, Elem, GrlexGreater>;

int total_degree(const Exponents& e) { return static_cast<int>(e[0] + e[1] + e[2] + e[3]); }

void require_same_field(const Poly& a, const Poly& b) {
  if (a.field().get() != b.field().get())
    throw Error(Errc::FieldMismatch, "polynomials over different fields");
}

}  // namespace

Poly Poly::from_terms(FieldPtr field, std::vector<Term> terms) {
  const Field& F = *field;
  TermMap acc;
  for (const auto& t : terms) {
    if (t.coeff == 0) continue;
    auto [it, inserted] = acc.try_emplace(t.exps, t.coeff);
    if (!inserted) it->second = F.add(it->second, t.coeff);
  }
  Poly out(std::move(field));
  for (const auto& [e, c] : acc) {
    if (c == 0) continue;
    const int d = total_degree(e);
    if (out.degree_ >= 0 && d != out.degree_)
      throw Error(Errc::NotHomogeneous, "terms of total degree " + std::to_string(out.degree_) +
                                            " and " + std::to_string(d));
    out.degree_ = d;
    out.terms_.push_back({e, c});
  }
  return out;
}

Poly Poly::variable(FieldPtr field, int i) {
  Exponents e{0, 0, 0, 0};
  e[i] = 1;
  return monomial(std::move(field), e, 1);
}

Poly Poly::constant(FieldPtr field, Elem c) {
  return monomial(std::move(field), {0, 0, 0, 0}, c);
}

Poly Poly::monomial(FieldPtr field, const Exponents& e, Elem c) {
  return from_terms(std::move(field), {{e, c}});
}

Elem Poly::coeff(const Exponents& e) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                             [](const Term& t, const Exponents& x) { return grlex_before(t.exps, x); });
  if (it != terms_.end() && it->exps == e) return it->coeff;
  return 0;
}

Poly Poly::operator+(const Poly& o) const {
  require_same_field(*this, o);
  std::vector<Term> all = terms_;
  all.insert(all.end(), o.terms_.begin(), o.terms_.end());
  return from_terms(field_, std::move(all));
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (auto& t : out.terms_) t.coeff = field_->neg(t.coeff);
  return out;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  require_same_field(*this, o);
  const Field& F = *field_;
  std::vector<Term> prod;
  prod.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : o.terms_)
      prod.push_back({{a.exps[0] + b.exps[0], a.exps[1] + b.exps[1], a.exps[2] + b.exps[2],
                       a.exps[3] + b.exps[3]},
                      F.mul(a.coeff, b.coeff)});
  return from_terms(field_, std::move(prod));
}

Poly Poly::scaled(Elem c) const {
  std::vector<Term> out = terms_;
  for (auto& t : out) t.coeff = field_->mul(t.coeff, c);
  return from_terms(field_, std::move(out));
}

Poly Poly::pow(unsigned k) const {
  Poly result = constant(field_, 1);
  Poly base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

bool Poly::operator==(const Poly& o) const {
  if (field_.get() != o.field_.get() || terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].exps != o.terms_[i].exps || terms_[i].coeff != o.terms_[i].coeff) return false;
  return true;
}

Poly Poly::embedded(const FieldPtr& ext) const {
  if (ext.get() == field_.get()) return *this;
  Poly out(ext);
  out.degree_ = degree_;
  out.terms_.reserve(terms_.size());
  for (const auto& t : terms_) out.terms_.push_back({t.exps, field_->embed_into(t.coeff, *ext)});
  return out;
}

Elem Poly::eval(const Coords& x) const {
  const Field& F = *field_;
  Elem acc = 0;
  for (const auto& t : terms_) {
    Elem v = t.coeff;
    for (int i = 0; i < 4 && v != 0; ++i)
      if (t.exps[i]) v = F.mul(v, F.pow(x[i], t.exps[i]));
    acc = F.add(acc, v);
  }
  return acc;
}

Poly Poly::substitute_linear(const std::array<std::array<Elem, 4>, 4>& m) const {
  if (is_zero()) return *this;
  std::array<Poly, 4> forms{Poly(field_), Poly(field_), Poly(field_), Poly(field_)};
  for (int i = 0; i < 4; ++i) {
    std::vector<Term> t;
    for (int j = 0; j < 4; ++j) {
      Exponents e{0, 0, 0, 0};
      e[j] = 1;
      t.push_back({e, m[i][j]});
    }
    forms[i] = from_terms(field_, std::move(t));
  }
  std::array<std::vector<Poly>, 4> powers;
  for (int i = 0; i < 4; ++i) {
    powers[i].push_back(constant(field_, 1));
    for (int k = 1; k <= degree_; ++k) powers[i].push_back(powers[i].back() * forms[i]);
  }
  std::vector<Term> acc;
  for (const auto& t : terms_) {
    Poly v = constant(field_, t.coeff);
    for (int i = 0; i < 4; ++i)
      if (t.exps[i]) v = v * powers[i][t.exps[i]];
    acc.insert(acc.end(), v.terms_.begin(), v.terms_.end());
  }
  return from_terms(field_, std::move(acc));
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) out << '+';
    first = false;
    const bool constant_term = total_degree(t.exps) == 0;
    std::string c = field_->to_string(t.coeff);
    const bool compound = c.find('+') != std::string::npos;
    if (constant_term) {
      out << (compound ? "(" + c + ")" : c);
      continue;
    }
    if (t.coeff != 1) out << (compound ? "(" + c + ")" : c) << '*';
    bool first_var = true;
    for (int i = 0; i < 4; ++i) {
      if (!t.exps[i]) continue;
      if (!first_var) out << '*';
      first_var = false;
      out << 'X' << i;
      if (t.exps[i] > 1) out << '^' << t.exps[i];
    }
  }
  return out.str();
}

Poly partial_derivative(const Poly& f, int i) {
  const Field& F = *f.field();
  std::vector<Term> out;
  for (const auto& t : f.terms()) {
    if (t.exps[i] == 0) continue;
    const Elem mult = F.from_int(t.exps[i] % F.characteristic());
    if (mult == 0) continue;
    Term d = t;
    d.exps[i] -= 1;
    d.coeff = F.mul(t.coeff, mult);
    out.push_back(d);
  }
  return Poly::from_terms(f.field(), std::move(out));
}

Poly build_h(const Poly& f, std::uint64_t q) {
  std::vector<Term> out;
  for (int i = 0; i < 4; ++i) {
    const Poly fi = partial_derivative(f, i);
    for (auto t : fi.terms()) {
      t.exps[i] += static_cast<std::uint32_t>(q);
      out.push_back(t);
    }
  }
  return Poly::from_terms(f.field(), std::move(out));
}

DivisionResult divide(const Poly& g, const Poly& f) {
  if (f.is_zero()) throw Error(Errc::ZeroDivisor, "division by the zero polynomial");
  require_same_field(g, f);
  const Field& F = *f.field();
  const Term lead = f.terms().front();
  const Elem lead_inv = F.inv(lead.coeff);

  TermMap rest;
  for (const auto& t : g.terms()) rest.emplace(t.exps, t.coeff);
  std::vector<Term> quot, rem;
  while (!rest.empty()) {
    auto it = rest.begin();
    const Exponents e = it->first;
    const Elem c = it->second;
    rest.erase(it);
    bool divisible = true;
    for (int i = 0; i < 4; ++i) divisible = divisible && e[i] >= lead.exps[i];
    if (!divisible) {
      rem.push_back({e, c});
      continue;
    }
    Exponents qe;
    for (int i = 0; i < 4; ++i) qe[i] = e[i] - lead.exps[i];
    const Elem qc = F.mul(c, lead_inv);
    quot.push_back({qe, qc});
    for (std::size_t k = 1; k < f.terms().size(); ++k) {
      const auto& t = f.terms()[k];
      Exponents te;
      for (int i = 0; i < 4; ++i) te[i] = t.exps[i] + qe[i];
      const Elem delta = F.neg(F.mul(qc, t.coeff));
      auto [pos, inserted] = rest.try_emplace(te, delta);
      if (!inserted) {
        pos->second = F.add(pos->second, delta);
        if (pos->second == 0) rest.erase(pos);
      }
    }
  }
  return {Poly::from_terms(f.field(), std::move(quot)), Poly::from_terms(f.field(), std::move(rem))};
}

bool divides(const Poly& f, const Poly& g) { return divide(g, f).remainder.is_zero(); }

FieldElement evaluate(const Poly& f, const std::array<FieldElement, 4>& point) {
  const FieldPtr& ext = point[0].field();
  for (const auto& c : point)
    if (c.field().get() != ext.get())
      throw Error(Errc::FieldMismatch, "point coordinates in different fields");
  if (!f.field()->is_subfield_of(*ext))
    throw Error(Errc::FieldMismatch, "point field does not contain the coefficient field");
  const Coords x{point[0].value(), point[1].value(), point[2].value(), point[3].value()};
  return {ext, f.embedded(ext).eval(x)};
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const FieldPtr& field, std::optional<Elem> gen)
      : s_(text), field_(field), F_(*field), gen_(gen) {}

  Poly parse() {
    std::vector<Term> terms;
    skip_ws();
    if (at_end()) fail("empty polynomial");
    bool negative = false;
    if (peek() == '-' || peek() == '+') {
      negative = get() == '-';
      skip_ws();
    }
    for (;;) {
      Term t = parse_term();
      if (negative) t.coeff = F_.neg(t.coeff);
      terms.push_back(t);
      skip_ws();
      if (at_end()) break;
      const char op = get();
      if (op != '+' && op != '-') fail(std::string("expected '+' or '-', found '") + op + "'", pos_ - 1);
      negative = op == '-';
      skip_ws();
    }
    int deg = -1;
    for (const auto& t : terms) {
      if (t.coeff == 0) continue;
      const int d = total_degree(t.exps);
      if (deg >= 0 && d != deg)
        throw Error(Errc::NotHomogeneous, "monomials of degree " + std::to_string(deg) + " and " +
                                              std::to_string(d));
      deg = d;
    }
    return Poly::from_terms(field_, std::move(terms));
  }

 private:
  [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
    throw Error(Errc::SyntaxError, msg + " at position " + std::to_string(at), at);
  }
  [[noreturn]] void fail(const std::string& msg) const { fail(msg, pos_); }

  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[pos_]; }
  char get() { return s_[pos_++]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  std::uint64_t parse_uint() {
    skip_ws();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected integer");
    std::uint64_t v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + static_cast<std::uint64_t>(get() - '0');
      if (v > (1ull << 40)) fail("integer literal too large");
    }
    return v;
  }

  std::uint64_t parse_exponent() {
    skip_ws();
    if (peek() != '^') return 1;
    get();
    return parse_uint();
  }

  Elem generator() {
    if (gen_) return *gen_;
    if (F_.degree() == 1)
      throw Error(Errc::BadFieldLiteral, "generator 'a' used in prime field GF(" +
                                             std::to_string(F_.characteristic()) + ")");
    return F_.generator();
  }

  // int | a^k | "(" sum of such products ")"
  Elem parse_field_atom() {
    skip_ws();
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c)))
      return F_.from_int(static_cast<long long>(parse_uint() % F_.characteristic()));
    if (c == 'a') {
      get();
      return F_.pow(generator(), parse_exponent());
    }
    if (c == '(') {
      get();
      Elem acc = 0;
      bool negative = false;
      skip_ws();
      if (peek() == '-' || peek() == '+') negative = get() == '-';
      for (;;) {
        Elem prod = parse_field_atom();
        skip_ws();
        while (peek() == '*') {
          get();
          prod = F_.mul(prod, parse_field_atom());
          skip_ws();
        }
        acc = F_.add(acc, negative ? F_.neg(prod) : prod);
        skip_ws();
        if (peek() == ')') {
          get();
          return acc;
        }
        if (peek() != '+' && peek() != '-') fail("expected ')' in coefficient");
        negative = get() == '-';
      }
    }
    fail("expected coefficient");
  }

  Term parse_term() {
    Term t{{0, 0, 0, 0}, 1};
    bool any = false;
    for (;;) {
      skip_ws();
      const char c = peek();
      const std::size_t start = pos_;
      if (c == 'X' || c == 'x') {
        get();
        skip_ws();
        const char v = peek();
        if (v < '0' || v > '9') fail("expected variable index", pos_);
        get();
        if (v > '3' || std::isdigit(static_cast<unsigned char>(peek())))
          throw Error(Errc::UnknownVariable, "variable index out of range at position " +
                                                 std::to_string(start), start);
        const auto e = parse_exponent();
        t.exps[v - '0'] += static_cast<std::uint32_t>(e);
      } else if (std::isdigit(static_cast<unsigned char>(c)) || c == 'a' || c == '(') {
        t.coeff = F_.mul(t.coeff, parse_field_atom());
      } else if (std::isalpha(static_cast<unsigned char>(c))) {
        throw Error(Errc::UnknownVariable, std::string("unknown symbol '") + c + "' at position " +
                                               std::to_string(start), start);
      } else {
        if (!any) fail("expected term");
        return t;
      }
      any = true;
      skip_ws();
      if (peek() == '*') {
        get();
        skip_ws();
        if (at_end()) fail("dangling '*'");
      }
    }
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  FieldPtr field_;
  const Field& F_;
  std::optional<Elem> gen_;
};

}  // namespace

Poly parse_poly(std::string_view text, const FieldPtr& field, std::optional<Elem> generator) {
  return Parser(text, field, generator).parse();
}

std::vector<Poly> parse_system(std::string_view text, const FieldPtr& field, std::optional<Elem> generator) {
  std::vector<Poly> out;
  std::size_t start = 0;
  for (;;) {
    const auto semi = text.find(';', start);
    const auto piece = text.substr(start, semi == std::string_view::npos ? std::string_view::npos : semi - start);
    if (piece.find_first_not_of(" \t\r\n") != std::string_view::npos) {
      try {
        out.push_back(parse_poly(piece, field, generator));
      } catch (const Error& e) {
        if (!e.position()) throw;
        throw Error(e.code(), std::string(e.what()).substr(std::string(errc_name(e.code())).size() + 2),
                    start + *e.position());
      }
    }
    if (semi == std::string_view::npos) break;
    start = semi + 1;
  }
  if (out.empty()) throw Error(Errc::SyntaxError, "empty system");
  return out;
}

}  // namespace frobsurf
