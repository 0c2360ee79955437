#include "frobsurf/jobfile.hpp"

#include <fstream>
#include <sstream>

namespace frobsurf {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void fail(Errc code, std::size_t line, std::size_t col, const std::string& msg) {
  throw Error(code, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
}

std::vector<std::string> words(std::string_view s) {
  std::istringstream in{std::string(s)};
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

bool valid_name(const std::string& n) {
  if (n.empty() || !(std::isalpha(static_cast<unsigned char>(n[0])) || n[0] == '_')) return false;
  for (char c : n)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.')) return false;
  return true;
}

}  // namespace

const Surface& JobFile::surface(const std::string& name) const {
  if (surfaces.empty()) throw Error(Errc::Usage, "job file declares no surface");
  if (name.empty()) return surfaces.front().second;
  for (const auto& [n, s] : surfaces)
    if (n == name) return s;
  throw Error(Errc::Usage, "no surface named '" + name + "'");
}

const CurveSpec& JobFile::curve(const std::string& name) const {
  for (const auto& c : curves)
    if (c.name == name) return c;
  throw Error(Errc::Usage, "no curve named '" + name + "'");
}

Elem generator_for_modulus(const FieldPtr& F, const std::vector<std::uint32_t>& low_to_high) {
  if (low_to_high.size() != F->degree() + 1 || low_to_high.back() == 0)
    throw Error(Errc::BadFieldLiteral, "modulus must have degree " + std::to_string(F->degree()));
  for (auto c : low_to_high)
    if (c >= F->characteristic()) throw Error(Errc::BadFieldLiteral, "modulus coefficient out of range");
  for (Elem r : F->prime_poly_roots(low_to_high)) {
    // a root generating the whole field; otherwise the modulus factors
    if (ProjectivePoint{F, {1, r, 0, 0}}.field_of_definition_degree() == F->degree()) return r;
  }
  throw Error(Errc::BadFieldLiteral, "modulus is not irreducible of degree " + std::to_string(F->degree()));
}

JobFile parse_jobfile(std::string_view text) {
  JobFile job;
  std::vector<std::string> lines;
  {
    std::string cur;
    for (char c : text) {
      if (c == '\n') {
        lines.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    lines.push_back(cur);
  }

  struct Pending {
    std::size_t line;
    std::string kind, name, arg;
  };
  std::vector<Pending> asserts;
  std::optional<std::vector<std::uint32_t>> modulus;
  std::size_t modulus_line = 0;

  auto parse_polys = [&](const std::string& raw, std::size_t lineno, std::size_t offset, bool system) {
    try {
      return system ? parse_system(raw, job.field, job.generator)
                    : std::vector<Poly>{parse_poly(raw, job.field, job.generator)};
    } catch (const Error& e) {
      const std::string what = e.what();
      const std::size_t col = offset + e.position().value_or(0) + 1;
      fail(e.code(), lineno, col, what.substr(what.find(": ") + 2));
    }
  };

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    std::string line = lines[i];
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const std::size_t indent = line.find_first_not_of(" \t");
    const auto w = words(line);
    const std::string& kw = w[0];

    if (kw == "field") {
      if (job.field) fail(Errc::SyntaxError, lineno, indent + 1, "second field line");
      std::optional<long> p, e;
      for (std::size_t k = 1; k < w.size(); ++k) {
        const auto eq = w[k].find('=');
        const std::string key = w[k].substr(0, eq);
        if (eq == std::string::npos || (key != "p" && key != "e"))
          fail(Errc::SyntaxError, lineno, line.find(w[k]) + 1, "expected p=<int> or e=<int>");
        try {
          std::size_t used = 0;
          const long v = std::stol(w[k].substr(eq + 1), &used);
          if (used != w[k].size() - eq - 1) throw std::invalid_argument("trailing");
          (key == "p" ? p : e) = v;
        } catch (const std::exception&) {
          fail(Errc::SyntaxError, lineno, line.find(w[k]) + eq + 2, "expected an integer");
        }
      }
      if (!p) fail(Errc::SyntaxError, lineno, indent + 1, "field needs p=<int>");
      if (*p < 2 || e.value_or(1) < 1) fail(Errc::NotPrime, lineno, indent + 1, "bad field parameters");
      try {
        job.field = make_field(static_cast<std::uint32_t>(*p), static_cast<unsigned>(e.value_or(1)));
      } catch (const Error& err) {
        const std::string what = err.what();
        fail(err.code(), lineno, indent + 1, what.substr(what.find(": ") + 2));
      }
      continue;
    }
    if (!job.field) fail(Errc::SyntaxError, lineno, indent + 1, "the field line must come first");

    if (kw == "modulus") {
      if (modulus) fail(Errc::SyntaxError, lineno, indent + 1, "second modulus line");
      if (!job.surfaces.empty() || !job.curves.empty())
        fail(Errc::SyntaxError, lineno, indent + 1, "modulus must precede surfaces and curves");
      std::vector<std::uint32_t> hi_to_lo;
      for (std::size_t k = 1; k < w.size(); ++k) {
        try {
          hi_to_lo.push_back(static_cast<std::uint32_t>(std::stoul(w[k])));
        } catch (const std::exception&) {
          fail(Errc::SyntaxError, lineno, line.find(w[k]) + 1, "expected an integer coefficient");
        }
      }
      modulus.emplace(hi_to_lo.rbegin(), hi_to_lo.rend());
      modulus_line = lineno;
      try {
        job.generator = generator_for_modulus(job.field, *modulus);
      } catch (const Error& err) {
        const std::string what = err.what();
        fail(err.code(), modulus_line, indent + 1, what.substr(what.find(": ") + 2));
      }
      continue;
    }

    if (kw == "surface" || kw == "curve") {
      const auto eq = line.find('=');
      if (eq == std::string::npos) fail(Errc::SyntaxError, lineno, line.size() + 1, "expected '='");
      const auto head = words(line.substr(0, eq));
      std::string name;
      if (head.size() == 2) name = head[1];
      else if (head.size() != 1 || kw == "curve")
        fail(Errc::SyntaxError, lineno, indent + 1, kw + " needs a single name before '='");
      if (kw == "surface" && name.empty()) name = "f";
      if (!valid_name(name)) fail(Errc::SyntaxError, lineno, line.find(name) + 1, "bad name '" + name + "'");
      for (const auto& [n, s] : job.surfaces)
        if (n == name) fail(Errc::SyntaxError, lineno, indent + 1, "duplicate name '" + name + "'");
      for (const auto& c : job.curves)
        if (c.name == name) fail(Errc::SyntaxError, lineno, indent + 1, "duplicate name '" + name + "'");
      const std::string body = line.substr(eq + 1);
      auto polys = parse_polys(body, lineno, eq + 1, kw == "curve");
      if (kw == "surface") {
        if (polys.front().degree() < 1) fail(Errc::SyntaxError, lineno, eq + 2, "surface needs a nonconstant form");
        job.surfaces.emplace_back(name, Surface{polys.front(), false});
      } else {
        CurveSpec C;
        C.name = name;
        C.polys = std::move(polys);
        job.curves.push_back(std::move(C));
      }
      continue;
    }

    if (kw == "assert") {
      if (w.size() < 3) fail(Errc::SyntaxError, lineno, indent + 1, "assert <irreducible|complete|degree> <name>");
      const std::string& what = w[1];
      if (what == "irreducible" || what == "complete") {
        if (w.size() != 3) fail(Errc::SyntaxError, lineno, indent + 1, "trailing words after the name");
        asserts.push_back({lineno, what, w[2], ""});
      } else if (what == "degree") {
        if (w.size() != 4) fail(Errc::SyntaxError, lineno, indent + 1, "assert degree <name> <int>");
        asserts.push_back({lineno, what, w[2], w[3]});
      } else {
        fail(Errc::SyntaxError, lineno, line.find(what) + 1, "unknown assertion '" + what + "'");
      }
      continue;
    }
    fail(Errc::SyntaxError, lineno, indent + 1, "unknown statement '" + kw + "'");
  }
  if (!job.field) throw Error(Errc::SyntaxError, "line 1, column 1: missing field line");

  for (const auto& a : asserts) {
    Surface* S = nullptr;
    CurveSpec* C = nullptr;
    for (auto& [n, s] : job.surfaces)
      if (n == a.name) S = &s;
    for (auto& c : job.curves)
      if (c.name == a.name) C = &c;
    if (!S && !C) fail(Errc::SyntaxError, a.line, 1, "assertion names unknown '" + a.name + "'");
    if (a.kind == "irreducible") {
      if (S) S->irreducible_asserted = true;
      if (C) C->irreducible_asserted = true;
    } else if (a.kind == "complete") {
      if (!C) fail(Errc::SyntaxError, a.line, 1, "complete applies to curves");
      C->complete_asserted = true;
    } else {
      if (!C) fail(Errc::SyntaxError, a.line, 1, "degree applies to curves");
      try {
        std::size_t used = 0;
        const int d = std::stoi(a.arg, &used);
        if (used != a.arg.size() || d < 1) throw std::invalid_argument("bad");
        C->delta = d;
      } catch (const std::exception&) {
        fail(Errc::SyntaxError, a.line, 1, "degree must be a positive integer");
      }
    }
  }
  return job;
}

JobFile load_jobfile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_jobfile(ss.str());
}

}  // namespace frobsurf
