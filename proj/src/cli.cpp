#include "ushuf/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ushuf/error.hpp"
#include "ushuf/io.hpp"
#include "ushuf/relations.hpp"
#include "ushuf/series.hpp"
#include "ushuf/shuffle.hpp"
#include "ushuf/specialize.hpp"
#include "ushuf/text.hpp"

namespace ushuf::cli {

namespace {

struct RunConfig {
  std::string flavor = "curve";
  std::string spec;  // specialization name; empty selects the universal kernel
  int spec_n = 0;    // resolution parameter for the an family
  int arity_bound = 6;
  int order = 10;  // series window
  int range = 2;   // verify grid half-width
  int poles_max_k = 3, poles_max_abs = 2;
  int leading_max_k = 4, leading_max_n = 3;
  int hl_max_size = 4, hl_max_k = 4;
  int rank = 2;
  int integral_n = 1;
  int k = 0;  // spec apply / spec check arity
  int lhs_arity = 0, rhs_arity = 0;
  long long seed = 0;  // reserved: every suite is deterministic
  bool json = false;
  std::vector<int> ns;
  std::string lhs, rhs, input, expr, name;
};

Flavor flavor_from(const std::string& s) {
  if (s == "curve") return Flavor::Curve;
  if (s == "surface") return Flavor::Surface;
  fail(Errc::UsageError, "flavor must be curve or surface, got " + s);
}

// Series expressions are parsed over one fixed scalar ring with two units.
RingPtr series_ring() {
  return RingSpec::free_laurent({"L", "M"}, {"L", "M"}, 1);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::UsageError, "cannot read input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void render_text(std::ostream& out, const VerificationReport& rep) {
  out << "report " << rep.identity << " :: " << rep.grid << "\n";
  if (!rep.note.empty()) out << "note " << rep.note << "\n";
  for (const auto& inst : rep.instances)
    out << (inst.pass ? "  pass " : "  FAIL ") << inst.params
        << (inst.witness.empty() ? "" : " :: " + inst.witness) << "\n";
  out << "summary all_pass=" << (rep.all_pass ? "true" : "false")
      << " instances=" << rep.instances.size() << "\n";
}

int render_reports(std::ostream& out, const std::vector<VerificationReport>& reps, bool json_mode) {
  bool ok = true;
  for (const auto& rep : reps) ok = ok && rep.all_pass;
  if (json_mode) {
    out << json_reports(reps) << "\n";
  } else {
    for (const auto& rep : reps) render_text(out, rep);
  }
  return ok ? 0 : 1;
}

struct KernelChoice {
  Kernel ker;
  Flavor flavor;
};

KernelChoice choose_kernel(const RunConfig& cfg, bool flavor_explicit) {
  if (cfg.spec.empty()) {
    Flavor f = flavor_from(cfg.flavor);
    return {Kernel::universal(f), f};
  }
  Specialization sp = make_specialization(cfg.spec, 1, cfg.spec_n);
  if (flavor_explicit && flavor_from(cfg.flavor) != sp.flavor())
    fail(Errc::UsageError, "--flavor conflicts with the flavor of specialization " + cfg.spec);
  return {kernel_for(cfg.spec, cfg.spec_n), sp.flavor()};
}

int do_gen(const RunConfig& cfg, bool flavor_explicit, std::ostream& out) {
  KernelChoice kc = choose_kernel(cfg, flavor_explicit);
  ShuffleElement e = generator_product(cfg.ns, kc.flavor, kc.ker);
  out << (cfg.json ? json_shuffle(e) : text(e.value)) << "\n";
  return 0;
}

int do_mul(const RunConfig& cfg, std::ostream& out) {
  Flavor f = flavor_from(cfg.flavor);
  if (cfg.lhs_arity < 0 || cfg.rhs_arity < 0)
    fail(Errc::UsageError, "factor arities must be >= 0");
  RingPtr ra = universal_ring(f, cfg.lhs_arity);
  RingPtr rb = universal_ring(f, cfg.rhs_arity);
  ShuffleElement a = make_shuffle(f, parse_ratfun(ra, cfg.lhs_arity, cfg.lhs));
  ShuffleElement b = make_shuffle(f, parse_ratfun(rb, cfg.rhs_arity, cfg.rhs));
  ShuffleElement c = shuffle_mul(a, b);
  out << (cfg.json ? json_shuffle(c) : text(c.value)) << "\n";
  return 0;
}

int do_certify(const RunConfig& cfg, bool flavor_explicit, std::ostream& out) {
  KernelChoice kc = choose_kernel(cfg, flavor_explicit);
  ShuffleElement e = generator_product(cfg.ns, kc.flavor, kc.ker);
  LaurentPoly cert = pole_certificate(e, kc.ker);
  out << (cfg.json ? json_poly(cert) : text(cert)) << "\n";
  return 0;
}

int do_spec_apply(const RunConfig& cfg, std::ostream& out) {
  if (cfg.k < 1) fail(Errc::UsageError, "--k must be >= 1");
  if (cfg.input.empty() == cfg.expr.empty())
    fail(Errc::UsageError, "exactly one of --input and --expr is required");
  Specialization sp = make_specialization(cfg.name, cfg.k, cfg.spec_n);
  RingPtr ur = universal_ring(sp.flavor(), cfg.k);
  std::string src = cfg.expr.empty() ? slurp(cfg.input) : cfg.expr;
  ShuffleElement e = make_shuffle(sp.flavor(), parse_ratfun(ur, cfg.k, src));
  ShuffleElement s = specialize_element(sp, e);
  out << (cfg.json ? json_shuffle(s) : text(s.value)) << "\n";
  return 0;
}

int do_spec_check(const RunConfig& cfg, std::ostream& out) {
  if (cfg.k < 1) fail(Errc::UsageError, "--k must be >= 1");
  CompatibilityReport rep = check_spec_compatibility(make_specialization(cfg.name, cfg.k, cfg.spec_n));
  if (cfg.json) {
    out << json_report(rep) << "\n";
  } else {
    out << "report compatibility[" << rep.spec_name << "] :: k=" << rep.arity << "\n";
    for (const auto& item : rep.items)
      out << (item.pass ? "  pass " : "  FAIL ") << item.identity
          << (item.pass ? "" : " :: " + text(item.witness)) << "\n";
    out << "summary all_pass=" << (rep.all_pass ? "true" : "false")
        << " items=" << rep.items.size() << "\n";
  }
  return rep.all_pass ? 0 : 1;
}

int do_pushforward(const RunConfig& cfg, std::ostream& out) {
  if (cfg.rank < 1) fail(Errc::UsageError, "--rank must be >= 1");
  std::vector<std::string> names;
  for (int i = 1; i <= cfg.rank; ++i) names.push_back("L" + std::to_string(i));
  RingPtr r = RingSpec::free_laurent(names, names, 1);
  std::vector<std::pair<Monomial, int>> entries;
  for (const auto& name : names) entries.emplace_back(Monomial::gen(GeneratorId::named(name)), 1);
  PushforwardReport rep = proj_pushforward_check(make_line_class_sum(r, entries), cfg.order);
  if (cfg.json) {
    out << json_report(rep) << "\n";
  } else {
    out << "report pushforward :: rank=" << rep.rank << " order=" << rep.order << "\n";
    for (const auto& item : rep.items)
      out << (item.pass ? "  pass " : "  FAIL ") << item.identity
          << (item.pass ? "" : " :: " + text(item.witness)) << "\n";
    out << "summary all_pass=" << (rep.all_pass ? "true" : "false")
        << " items=" << rep.items.size() << "\n";
  }
  return rep.all_pass ? 0 : 1;
}

int do_delta_check(const RunConfig& cfg, std::ostream& out) {
  LaurentPoly p = parse_poly(series_ring(), 1, cfg.expr);
  bool ok = delta_property_check(p, cfg.order);
  VerificationReport rep;
  rep.identity = "delta-multiplication";
  rep.grid = "order=" + std::to_string(cfg.order);
  rep.add("poly=" + text(p), ok, ok ? "" : "coefficient mismatch");
  return render_reports(out, {rep}, cfg.json);
}

int do_integral(const RunConfig& cfg, std::ostream& out) {
  RatFun f = parse_ratfun(series_ring(), 1, cfg.expr);
  CoeffElement v = integral_inf_minus_zero(cfg.integral_n, f);
  out << (cfg.json ? json_coeff(v) : text(v)) << "\n";
  return 0;
}

int do_verify_quadratic(const RunConfig& cfg, std::ostream& out) {
  std::string spec = cfg.spec.empty() ? "universal" : cfg.spec;
  return render_reports(out, {verify_quadratic_grid(cfg.range, spec)}, cfg.json);
}

int do_verify_serre(const RunConfig& cfg, std::ostream& out) {
  std::vector<VerificationReport> reps;
  for (int n = -cfg.range; n <= cfg.range; ++n) reps.push_back(verify_serre(n));
  for (int n = -cfg.range; n <= cfg.range; ++n) reps.push_back(verify_serre_restricted(n));
  return render_reports(out, reps, cfg.json);
}

int do_verify_hl(const RunConfig& cfg, std::ostream& out) {
  std::vector<VerificationReport> reps;
  for (const auto& lambda : partitions_up_to(cfg.hl_max_size, cfg.hl_max_k)) {
    int min_k = std::max<int>(1, static_cast<int>(lambda.size()));
    for (int k = min_k; k <= cfg.hl_max_k; ++k)
      reps.push_back(verify_hall_littlewood(lambda, k));
  }
  return render_reports(out, reps, cfg.json);
}

int do_verify_poles(const RunConfig& cfg, std::ostream& out) {
  VerificationReport rep =
      cfg.spec.empty()
          ? verify_pole_batch(cfg.poles_max_abs, cfg.poles_max_k, flavor_from(cfg.flavor))
          : verify_pole_batch(cfg.poles_max_abs, cfg.poles_max_k, cfg.spec, cfg.spec_n);
  return render_reports(out, {rep}, cfg.json);
}

int do_verify_leading(const RunConfig& cfg, std::ostream& out) {
  return render_reports(out, {verify_leading_batch(cfg.leading_max_n, cfg.leading_max_k)},
                        cfg.json);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  if (const char* env = std::getenv("SHUFFLE_MAX_ARITY")) {
    try {
      cfg.arity_bound = std::stoi(env);
    } catch (const std::exception&) {
      err << "error: SHUFFLE_MAX_ARITY must be an integer, got '" << env << "'\n";
      return 2;
    }
  }

  CLI::App app{
      "Exact calculator and identity verifier for universal shuffle algebras, their\n"
      "K-theory specializations, and the associated series and relation suites"};
  app.name("ushuf");
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", cfg.json, "emit machine-readable JSON (shape: docs/schema.json)");
  app.add_option("--arity-bound", cfg.arity_bound,
                 "cap on combined variable count (overrides SHUFFLE_MAX_ARITY; default 6)");
  app.add_option("--seed", cfg.seed, "randomness seed (reserved; all suites are deterministic)");

  auto* shuffle = app.add_subcommand("shuffle", "build and multiply shuffle-algebra elements");
  shuffle->require_subcommand(1);
  shuffle->fallthrough();

  auto* gen = shuffle->add_subcommand("gen", "iterated product of one-variable generators");
  gen->fallthrough();
  gen->add_option("--ns", cfg.ns, "comma-separated generator exponents")->required()->delimiter(',');
  auto* gen_flavor = gen->add_option("--flavor", cfg.flavor, "curve|surface (default curve)");
  gen->add_option("--spec", cfg.spec, "multiply over this specialization's kernel");
  gen->add_option("--n", cfg.spec_n, "resolution parameter for --spec an");

  auto* mul = shuffle->add_subcommand("mul", "shuffle product of two parsed elements");
  mul->fallthrough();
  mul->add_option("--lhs", cfg.lhs, "left factor (canonical text form)")->required();
  mul->add_option("--rhs", cfg.rhs, "right factor (canonical text form)")->required();
  mul->add_option("--lhs-arity", cfg.lhs_arity, "variable count of the left factor")->required();
  mul->add_option("--rhs-arity", cfg.rhs_arity, "variable count of the right factor")->required();
  mul->add_option("--flavor", cfg.flavor, "curve|surface (default curve)");

  auto* certify = shuffle->add_subcommand("certify", "Laurent pole certificate of a generator product");
  certify->fallthrough();
  certify->add_option("--ns", cfg.ns, "comma-separated generator exponents")->required()->delimiter(',');
  auto* cert_flavor = certify->add_option("--flavor", cfg.flavor, "curve|surface (default curve)");
  certify->add_option("--spec", cfg.spec, "certify over this specialization's kernel");
  certify->add_option("--n", cfg.spec_n, "resolution parameter for --spec an");

  auto* spec = app.add_subcommand("spec", "apply and check K-theory specializations");
  spec->require_subcommand(1);
  spec->fallthrough();

  auto* apply = spec->add_subcommand("apply", "substitute a specialization into an element");
  apply->fallthrough();
  apply->add_option("--name", cfg.name, "specialization: a2|p2|p1|a1|an|diagonal")->required();
  apply->add_option("--n", cfg.spec_n, "resolution parameter for an");
  apply->add_option("--k", cfg.k, "variable count of the element")->required();
  apply->add_option("--input", cfg.input, "file holding the element in canonical text form");
  apply->add_option("--expr", cfg.expr, "element as a command-line expression");

  auto* check = spec->add_subcommand("check", "compatibility identities of the universal relation");
  check->fallthrough();
  check->add_option("--name", cfg.name, "specialization: a2|p2|p1|a1|an|diagonal")->required();
  check->add_option("--n", cfg.spec_n, "resolution parameter for an");
  check->add_option("--k", cfg.k, "index arity to check")->required();

  auto* series = app.add_subcommand("series", "chart expansions, residues, delta identities");
  series->require_subcommand(1);
  series->fallthrough();

  auto* push = series->add_subcommand("pushforward", "tautological delta-series pushforward check");
  push->fallthrough();
  push->add_option("--rank", cfg.rank, "number of line-class entries (default 2)");
  push->add_option("--order", cfg.order, "expansion window half-width (default 10)");

  auto* dcheck = series->add_subcommand("delta-check", "delta(z/w) P(z) = delta(z/w) P(w) check");
  dcheck->fallthrough();
  dcheck->add_option("--poly", cfg.expr, "one-variable Laurent polynomial, e.g. \"z^2+3\"")->required();
  dcheck->add_option("--order", cfg.order, "coefficient window half-width (default 10)");

  auto* integral = series->add_subcommand("integral", "infinity-minus-zero residue coefficient");
  integral->fallthrough();
  integral->add_option("--n", cfg.integral_n, "extract the coefficient of z^{-n} (default 1)");
  integral->add_option("--expr", cfg.expr, "one-variable rational function")->required();

  auto* verify = app.add_subcommand("verify", "closed-form identity suites");
  verify->require_subcommand(1);
  verify->fallthrough();

  auto* vquad = verify->add_subcommand("quadratic", "quadratic interchange relation on a grid");
  vquad->fallthrough();
  vquad->add_option("--range", cfg.range, "check all (n,m) in [-range,range]^2 (default 2)");
  vquad->add_option("--spec", cfg.spec, "universal|a2|p2|diagonal (default universal)");

  auto* vserre = verify->add_subcommand("serre", "cubic identities, factored and restricted forms");
  vserre->fallthrough();
  vserre->add_option("--range", cfg.range, "check all n in [-range,range] (default 2)");

  auto* vhl = verify->add_subcommand("hl", "Hall-Littlewood specialization oracle");
  vhl->fallthrough();
  vhl->add_option("--max-size", cfg.hl_max_size, "partition size bound (default 4)");
  vhl->add_option("--max-k", cfg.hl_max_k, "variable count bound (default 4)");

  auto* vpoles = verify->add_subcommand("poles", "pole certificates over a generator grid");
  vpoles->fallthrough();
  vpoles->add_option("--flavor", cfg.flavor, "curve|surface (default curve)");
  vpoles->add_option("--max-k", cfg.poles_max_k, "arity bound (default 3)");
  vpoles->add_option("--max-abs", cfg.poles_max_abs, "exponent magnitude bound (default 2)");
  vpoles->add_option("--spec", cfg.spec, "run over this specialization's kernel instead");
  vpoles->add_option("--n", cfg.spec_n, "resolution parameter for --spec an");

  auto* vleading = verify->add_subcommand("leading", "leading-order prediction for curve products");
  vleading->fallthrough();
  vleading->add_option("--max-k", cfg.leading_max_k, "arity bound (default 4)");
  vleading->add_option("--max-n", cfg.leading_max_n, "entry bound (default 3)");

  std::vector<const char*> argv;
  argv.push_back("ushuf");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (cfg.arity_bound < 1) fail(Errc::UsageError, "arity bound must be >= 1");
    set_max_arity(cfg.arity_bound);
    if (gen->parsed()) return do_gen(cfg, gen_flavor->count() > 0, out);
    if (mul->parsed()) return do_mul(cfg, out);
    if (certify->parsed()) return do_certify(cfg, cert_flavor->count() > 0, out);
    if (apply->parsed()) return do_spec_apply(cfg, out);
    if (check->parsed()) return do_spec_check(cfg, out);
    if (push->parsed()) return do_pushforward(cfg, out);
    if (dcheck->parsed()) return do_delta_check(cfg, out);
    if (integral->parsed()) return do_integral(cfg, out);
    if (vquad->parsed()) return do_verify_quadratic(cfg, out);
    if (vserre->parsed()) return do_verify_serre(cfg, out);
    if (vhl->parsed()) return do_verify_hl(cfg, out);
    if (vpoles->parsed()) return do_verify_poles(cfg, out);
    if (vleading->parsed()) return do_verify_leading(cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    switch (e.code()) {
      case Errc::ConventionFailure:
      case Errc::InternalMismatch:
      case Errc::NotInClaimedForm:
        return 1;  // a mathematical assertion failed
      default:
        return 2;  // bad input or usage
    }
  }
  err << "error: no subcommand executed\n";
  return 2;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace ushuf::cli
