// Command-line front end.  Exit codes: 0 ok, 1 an asserted outcome failed, 2 usage or input error.
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "frobsurf/frobsurface.hpp"
#include "frobsurf/jobfile.hpp"
#include "frobsurf/replay.hpp"
#include "frobsurf/scan.hpp"

using namespace frobsurf;
using nlohmann::json;

namespace {

struct Globals {
  std::string field;
  std::uint64_t seed = 1;
  std::uint64_t budget = kDefaultPointBudget;
  unsigned max_ext = 6;
  int trials = 5;
  std::string out;
  std::string format = "text";
  unsigned jobs = 1;
};

constexpr const char* kJobGrammar =
    "job file grammar:\n"
    "  field p=<int> e=<int>\n"
    "  modulus <c_n> ... <c_0>\n"
    "  surface [<name>] = <poly>\n"
    "  curve <name> = <poly> [; <poly>]*\n"
    "  assert irreducible|complete <name>\n"
    "  assert degree <name> <int>\n";

bool input_error(Errc c) {
  switch (c) {
    case Errc::SyntaxError:
    case Errc::UnknownVariable:
    case Errc::NotHomogeneous:
    case Errc::BadFieldLiteral:
    case Errc::NotPrime:
    case Errc::DegreeTooLarge:
    case Errc::IoError:
    case Errc::Usage:
    case Errc::BadDegree:
    case Errc::IrreducibilityNotAsserted:
      return true;
    default:
      return false;
  }
}

FieldPtr parse_field_arg(const std::string& s) {
  const auto caret = s.find('^');
  try {
    if (caret != std::string::npos)
      return make_field(static_cast<std::uint32_t>(std::stoul(s.substr(0, caret))),
                        static_cast<unsigned>(std::stoul(s.substr(caret + 1))));
    std::uint64_t q = std::stoull(s);
    for (std::uint32_t p = 2; p <= q; ++p) {
      if (q % p) continue;
      unsigned e = 0;
      while (q % p == 0) {
        q /= p;
        ++e;
      }
      if (q != 1) break;
      return make_field(p, e);
    }
  } catch (const std::logic_error&) {
  }
  throw Error(Errc::Usage, "--field expects p^e or a prime power, got '" + s + "'");
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw Error(Errc::IoError, "cannot write " + path);
    }
  }
  std::ostream& os() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

JobFile job_from(const std::string& path, const Globals& g) {
  JobFile job = load_jobfile(path);
  if (!g.field.empty() && parse_field_arg(g.field).get() != job.field.get())
    throw Error(Errc::Usage, "--field disagrees with the job file");
  return job;
}

OrderOptions order_opts(const Globals& g) {
  OrderOptions o;
  o.seed = g.seed;
  o.max_ext = g.max_ext;
  o.trials = g.trials;
  o.point_budget = g.budget;
  return o;
}

ContainmentOptions containment_opts(const Globals& g) {
  ContainmentOptions c;
  c.seed = g.seed;
  c.max_ext = g.max_ext;
  c.point_budget = g.budget;
  return c;
}

std::string orders_str(const OrderProfile& p) {
  std::ostringstream os;
  if (p.degenerate) {
    os << "degenerate (lies in a plane)";
    return os.str();
  }
  if (p.eps) os << "eps = (" << (*p.eps)[0] << "," << (*p.eps)[1] << "," << (*p.eps)[2] << "," << (*p.eps)[3] << ")";
  if (p.nu) os << "  nu = (" << (*p.nu)[0] << "," << (*p.nu)[1] << ")" << (p.nu_probabilistic ? " [probabilistic]" : "");
  if (p.deleted_index) os << "  I = " << *p.deleted_index;
  return os.str();
}

void print_text(std::ostream& os, const json& j, int indent = 0) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    os << std::string(indent, ' ') << it.key() << ":";
    if (it->is_object()) {
      os << "\n";
      print_text(os, *it, indent + 2);
    } else if (it->is_string()) {
      os << " " << it->get<std::string>() << "\n";
    } else {
      os << " " << it->dump() << "\n";
    }
  }
}

void emit(const Globals& g, const json& j) {
  Output out(g.out);
  if (g.format == "json") out.os() << j.dump(2) << "\n";
  else print_text(out.os(), j);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frobenius tangency curves of surfaces in P^3 over finite fields"};
  app.require_subcommand(1);
  app.fallthrough();
  app.footer(kJobGrammar);
  Globals g;
  app.add_option("--field", g.field, "field as p^e (or q) for commands without a job file");
  app.add_option("--seed", g.seed, "seed for every randomized step");
  app.add_option("--budget-points", g.budget, "largest P^3(GF(Q)) size enumerated, as Q^3");
  app.add_option("--max-ext", g.max_ext, "largest extension degree sampled")->check(CLI::Range(1u, 20u));
  app.add_option("--trials", g.trials, "smooth points per extension for orders")->check(CLI::Range(1, 1000));
  app.add_option("--out", g.out, "output path");
  app.add_option("--format", g.format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--jobs", g.jobs, "worker threads for scan")->check(CLI::Range(1u, 256u));

  std::string job_path, surface_name, curve_name, poly_text, example;
  unsigned kmax = 1;
  bool assume_irreducible = false, assume_conjecture = false, no_lines = false;
  std::optional<std::int64_t> delta, d, q, genus;
  std::vector<std::int64_t> nu;
  bool figure = false;
  int scan_degree = 2;
  bool resume = false, all_quadrics = false, smooth_only = false;
  std::uint64_t checkpoint_every = 10'000;

  auto* fcs = app.add_subcommand("check-fcs", "Frobenius classicality of a surface");
  fcs->add_option("job", job_path, "job file")->required();
  fcs->add_option("--surface", surface_name);
  fcs->add_flag("--assume-irreducible", assume_irreducible);

  auto* phi = app.add_subcommand("phi", "Phi^S: degree, F_q-lines, point counts");
  phi->add_option("job", job_path, "job file")->required();
  phi->add_option("--surface", surface_name);
  phi->add_option("-k", kmax, "point counts over GF(q^k), k <= K")->check(CLI::Range(1u, 8u));
  phi->add_flag("--no-lines", no_lines);
  phi->add_flag("--assume-irreducible", assume_irreducible);

  auto* pts = app.add_subcommand("points", "rational points of a surface or curve");
  pts->add_option("job", job_path, "job file");
  pts->add_option("--surface", surface_name);
  pts->add_option("--curve", curve_name);
  pts->add_option("--poly", poly_text, "\"g1; g2; ...\" over --field instead of a job file");
  pts->add_option("-k", kmax, "count over GF(q^k), k <= K")->check(CLI::Range(1u, 12u));

  auto* ord = app.add_subcommand("orders", "order sequence and Frobenius orders of a curve");
  ord->add_option("job", job_path, "job file")->required();
  ord->add_option("--curve", curve_name)->required();

  auto* cls = app.add_subcommand("classify", "orders of a curve and its position relative to Phi^S");
  cls->add_option("job", job_path, "job file")->required();
  cls->add_option("--curve", curve_name)->required();
  cls->add_option("--surface", surface_name);
  cls->add_flag("--assume-conjecture", assume_conjecture);

  auto* bnd = app.add_subcommand("bound", "main bound, or a full bound check for a curve in a job file");
  bnd->add_option("job", job_path, "job file");
  bnd->add_option("--curve", curve_name);
  bnd->add_option("--surface", surface_name);
  bnd->add_option("--delta", delta);
  bnd->add_option("--d", d);
  bnd->add_option("--q", q);

  auto* cmp = app.add_subcommand("compare", "compare bounds for (delta, d, q)");
  cmp->add_option("--delta", delta);
  cmp->add_option("--d", d)->required();
  cmp->add_option("--q", q)->required();
  cmp->add_option("--genus", genus);
  cmp->add_option("--nu", nu)->delimiter(',')->expected(2);
  cmp->add_flag("--figure", figure, "all delta = 1..q");

  auto* scn = app.add_subcommand("scan", "scan every surface of a degree over a small field");
  scn->add_option("--degree", scan_degree)->check(CLI::Range(2, 6));
  scn->add_option("-k", kmax, "Phi^S point counts over GF(q^k), k <= K")->check(CLI::Range(1u, 4u));
  scn->add_option("--checkpoint-every", checkpoint_every)->check(CLI::PositiveNumber);
  scn->add_flag("--resume", resume);
  scn->add_flag("--all-quadrics", all_quadrics, "analyze reducible quadrics too");
  scn->add_flag("--smooth-only", smooth_only);

  auto* rep = app.add_subcommand("replay-example", "replay a built-in example and check its recorded outcomes");
  rep->add_option("id", example, "2.2, 4.6, 4.8 or 4.9")->required()->check(CLI::IsMember(builtin_job_ids()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*fcs) {
      JobFile job = job_from(job_path, g);
      Surface S = job.surface(surface_name);
      if (assume_irreducible) S.irreducible_asserted = true;
      auto r = frobenius_classicality(S);
      emit(g, {{"frobenius_classical", r.classical}, {"h", build_h(S.f).to_string()}, {"warnings", r.warnings}});
      return 0;
    }
    if (*phi) {
      JobFile job = job_from(job_path, g);
      Surface S = job.surface(surface_name);
      if (assume_irreducible) S.irreducible_asserted = true;
      SurfaceReportOptions o;
      o.max_k = kmax;
      o.point_budget = g.budget;
      o.lines = !no_lines;
      emit(g, to_json(surface_report(S, o)));
      return 0;
    }
    if (*pts) {
      std::vector<Poly> polys;
      FieldPtr F;
      if (!poly_text.empty()) {
        if (g.field.empty()) throw Error(Errc::Usage, "--poly needs --field");
        F = parse_field_arg(g.field);
        polys = parse_system(poly_text, F);
      } else {
        if (job_path.empty()) throw Error(Errc::Usage, "points needs a job file or --poly");
        JobFile job = job_from(job_path, g);
        F = job.field;
        polys = curve_name.empty() ? std::vector<Poly>{job.surface(surface_name).f} : job.curve(curve_name).polys;
      }
      json counts = json::object();
      for (unsigned k = 1; k <= kmax; ++k) counts[std::to_string(k)] = count_points(F, polys, k, g.budget);
      emit(g, {{"q", F->size()}, {"points", counts}});
      return 0;
    }
    if (*ord) {
      JobFile job = job_from(job_path, g);
      auto prof = order_profile(job.curve(curve_name), order_opts(g));
      if (g.format == "json") {
        emit(g, to_json(prof, *job.field));
      } else {
        Output out(g.out);
        out.os() << "seed: " << prof.seed << "\ndelta: " << prof.delta << "\n" << orders_str(prof) << "\n";
        for (const auto& a : prof.alarms) out.os() << "ALARM: " << a << "\n";
        for (const auto& n : prof.notes) out.os() << "note: " << n << "\n";
      }
      return prof.alarms.empty() ? 0 : 1;
    }
    if (*cls) {
      JobFile job = job_from(job_path, g);
      const Surface& S = job.surface(surface_name);
      auto c = classify(job.curve(curve_name), S, order_opts(g), containment_opts(g));
      auto dec = bound_applicability(c, S, assume_conjecture);
      json j = to_json(c, *job.field);
      j["applicability"] = {{"decision", to_string(dec.decision)}, {"rule", dec.rule}};
      if (g.format == "json") {
        emit(g, j);
      } else {
        Output out(g.out);
        out.os() << "seed: " << g.seed << "\n" << orders_str(c.profile) << "\n"
                 << "frobenius classical: " << (c.profile.frobenius_classical ? "yes" : "no") << "\n"
                 << "containment in Phi^S: " << to_string(c.containment.verdict) << " ("
                 << c.containment.certificate << ")\n"
                 << "bound: " << to_string(dec.decision) << " - " << dec.rule << "\n";
        for (const auto& a : c.alarms) out.os() << "ALARM: " << a << "\n";
      }
      return c.alarms.empty() ? 0 : 1;
    }
    if (*bnd) {
      if (!job_path.empty()) {
        if (curve_name.empty()) throw Error(Errc::Usage, "bound with a job file needs --curve");
        JobFile job = job_from(job_path, g);
        auto b = verify_bound(job.surface(surface_name), job.curve(curve_name), containment_opts(g));
        json j = to_json(b);
        j["seed"] = g.seed;
        emit(g, j);
        return b.contradiction ? 1 : 0;
      }
      if (!delta || !d || !q) throw Error(Errc::Usage, "bound needs --delta, --d and --q (or a job file)");
      auto b = main_bound(*delta, *d, *q);
      Output out(g.out);
      if (g.format == "json")
        out.os() << json{{"exact", to_string(b.value)}, {"floor", b.floor}}.dump(2) << "\n";
      else
        out.os() << b.floor << (b.value.denominator() == 1 ? "" : " (" + to_string(b.value) + ")") << "\n";
      return 0;
    }
    if (*cmp) {
      Output out(g.out);
      if (figure) {
        out.os() << figure_csv(*q, *d);
        return 0;
      }
      if (!delta) throw Error(Errc::Usage, "compare needs --delta or --figure");
      std::optional<std::array<std::int64_t, 2>> nus;
      if (!nu.empty()) nus = std::array<std::int64_t, 2>{nu[0], nu[1]};
      auto r = compare(*delta, *d, *q, genus, nus);
      if (g.format == "csv") {
        out.os() << kBoundsCsvHeader << "\n" << csv_row(r) << "\n";
        return 0;
      }
      json j{{"delta", r.delta},
             {"d", r.d},
             {"q", r.q},
             {"genus_bound", r.genus_bound},
             {"harris_unbranched", r.harris.unbranched},
             {"harris_branched", r.harris.branched},
             {"nu", {r.nu1, r.nu2}},
             {"main", to_string(r.main.value)},
             {"main_floor", r.main.floor},
             {"homma", r.homma},
             {"stohr_voloch", r.stohr_voloch},
             {"stohr_voloch_figure_expression", to_string(r.stohr_voloch_figure)},
             {"serre_weil", r.serre_weil},
             {"winner", r.winner},
             {"notes", r.notes}};
      if (g.format == "json") out.os() << j.dump(2) << "\n";
      else print_text(out.os(), j);
      return 0;
    }
    if (*scn) {
      ScanConfig cfg;
      const FieldPtr F = parse_field_arg(g.field.empty() ? "2" : g.field);
      cfg.p = F->characteristic();
      cfg.e = F->degree();
      cfg.d = scan_degree;
      cfg.point_budget = g.budget;
      cfg.max_k = kmax;
      cfg.seed = g.seed;
      cfg.irreducible_only = !all_quadrics;
      cfg.smooth_only = smooth_only;
      cfg.out = g.out;
      cfg.checkpoint_every = checkpoint_every;
      cfg.resume = resume;
      cfg.jobs = g.jobs;
      auto s = scan_conjecture(cfg);
      json j = to_json(s);
      if (g.format == "json") std::cout << j.dump(2) << "\n";
      else print_text(std::cout, j);
      return s.flags.count("CandidateCounterexample") && s.flags.at("CandidateCounterexample") ? 1 : 0;
    }
    if (*rep) {
      ReplayOptions o;
      o.seed = g.seed;
      o.max_ext = g.max_ext;
      o.trials = g.trials;
      o.point_budget = g.budget;
      auto r = run_replay(example, o);
      Output out(g.out);
      if (g.format == "json") {
        out.os() << r.report.dump(2) << "\n";
      } else {
        out.os() << "example " << r.id << " (seed " << o.seed << ")\n";
        for (const auto& c : r.checks)
          out.os() << (c.passed ? "  ok    " : "  FAIL  ") << c.name << (c.detail.empty() ? "" : ": " + c.detail)
                   << "\n";
        for (const auto& n : r.notes) out.os() << "  note  " << n << "\n";
        for (const auto& a : r.alarms) out.os() << "  ALARM " << a << "\n";
      }
      return r.passed() ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (e.code() == Errc::SyntaxError && !job_path.empty()) std::cerr << kJobGrammar;
    return input_error(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
