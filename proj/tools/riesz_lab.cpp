#include "riesz_lab.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "riesz/beta.hpp"
#include "riesz/constructions.hpp"
#include "riesz/distributions.hpp"
#include "riesz/errors.hpp"
#include "riesz/identify.hpp"
#include "riesz/riesz.hpp"
#include "riesz/shape_json.hpp"

#ifndef RIESZ_LAB_VERSION
#define RIESZ_LAB_VERSION "0.0.0"
#endif

namespace riesz::lab {

using nlohmann::json;

namespace {

struct Options {
  std::string command;
  std::vector<std::string> argv;
  std::string shape, model, config, out, format, z, q, eps;
  std::size_t pairs = 1'000'000;
  std::uint64_t seed = 0;
  int bins = -1;
  double tfit = -1.0;
  double r1 = 0.5, r2 = 0.5, separation = 1.0;
  int diameter_n = 64;
};

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_real(const std::string& s, const char* what) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') throw ValidationError(std::string("bad ") + what + " '" + s + "'");
  return v;
}

// "x", "x+yi", "x-yi"
Complex parse_complex(const std::string& s) {
  const char* p = s.c_str();
  char* end = nullptr;
  const double re = std::strtod(p, &end);
  if (end == p) throw ValidationError("bad z value '" + s + "'");
  if (*end == '\0') return {re, 0.0};
  const char* q = end;
  const double im = std::strtod(q, &end);
  if (end == q || *end != 'i' || end[1] != '\0') throw ValidationError("bad z value '" + s + "'");
  return {re, im};
}

std::vector<Complex> z_list(const Options& o) {
  if (o.z.empty()) throw ValidationError("--z is required");
  std::vector<Complex> zs;
  for (const auto& t : split(o.z)) zs.push_back(parse_complex(t));
  if (zs.empty()) throw ValidationError("--z is empty");
  return zs;
}

std::vector<double> real_list(const std::string& s, const char* what) {
  std::vector<double> v;
  for (const auto& t : split(s)) v.push_back(parse_real(t, what));
  return v;
}

PairPlan plan_of(const Options& o) {
  PairPlan p;
  p.n_pairs = o.pairs;
  p.seed = o.seed;
  validate(p);
  return p;
}

ProfileOptions profile_options(const Options& o) {
  ProfileOptions p;
  p.t_fit = o.tfit;
  if (o.bins > 0) {
    p.method = ProfileMethod::kBinned;
    p.bins = o.bins;
  }
  return p;
}

Shape need_shape(const Options& o) {
  if (o.shape.empty()) throw ValidationError("--shape is required");
  return load_shape(o.shape);
}

std::string command_line(const Options& o) {
  std::string s = "riesz-lab";
  for (const auto& a : o.argv) s += " " + a;
  return s;
}

json meta(const Options& o) {
  return {{"tool", "riesz-lab"},
          {"version", RIESZ_LAB_VERSION},
          {"command", o.command},
          {"argv", o.argv},
          {"seed", o.seed},
          {"pairs", o.pairs}};
}

void csv_header(std::ostream& os, const Options& o) {
  os << "# riesz-lab " << RIESZ_LAB_VERSION << '\n'
     << "# command: " << command_line(o) << '\n'
     << "# seed: " << o.seed << '\n'
     << "# pairs: " << o.pairs << '\n';
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json profile_json(const ProfilePolynomial& p) {
  json c = json::array();
  for (std::size_t i = 0; i < p.powers.size(); ++i) {
    c.push_back({{"k", p.powers[i]},
                 {"c", p.coeffs[i]},
                 {"stderr", p.coefficient_error(p.powers[i])}});
  }
  return {{"stratum", to_string(p.stratum)},
          {"weight", to_string(p.weight)},
          {"exponent", p.exponent},
          {"t_fit", p.t_fit},
          {"coefficients", c}};
}

void need_format(const Options& o, const char* allowed) {
  if (o.format != allowed) {
    throw ValidationError("'" + o.command + "' writes " + allowed + " only");
  }
}

void cmd_energy(const Options& o, std::ostream& os) {
  const Shape shape = need_shape(o);
  const PairPlan plan = plan_of(o);
  std::vector<EnergyValue> vals;
  for (const auto& z : z_list(o)) vals.push_back(riesz_energy(shape, z, plan));
  if (o.format == "csv") {
    csv_header(os, o);
    os << "z_re,z_im,re,im,stderr,method\n";
    for (const auto& v : vals) {
      os << v.z.real() << ',' << v.z.imag() << ',' << v.value.real() << ',' << v.value.imag()
         << ',' << v.std_error << ',' << to_string(v.method) << '\n';
    }
    return;
  }
  json arr = json::array();
  for (const auto& v : vals) {
    arr.push_back({{"z", complex_json(v.z)},
                   {"re", v.value.real()},
                   {"im", v.value.imag()},
                   {"stderr", v.std_error},
                   {"method", to_string(v.method)}});
  }
  os << json{{"meta", meta(o)}, {"shape", shape.label()}, {"energy", arr}}.dump(2) << '\n';
}

void cmd_beta(const Options& o, std::ostream& os) {
  const Shape shape = need_shape(o);
  const PairPlan plan = plan_of(o);
  const auto zs = z_list(o);
  const auto prof = fit_beta_profile(shape, profile_options(o), plan);
  MeromorphicSummary sum;
  sum.values = beta_eval_many(shape, zs, prof, -1.0, plan);
  if (o.format == "csv") {
    csv_header(os, o);
    os << "z_re,z_im,re,im,stderr\n";
    for (const auto& v : sum.values) {
      os << v.z.real() << ',' << v.z.imag() << ',' << v.value.real() << ',' << v.value.imag()
         << ',' << v.std_error << '\n';
    }
    return;
  }
  json j = sum.to_json();
  j["meta"] = meta(o);
  j["shape"] = shape.label();
  j["profile"] = profile_json(prof);
  os << j.dump(2) << '\n';
}

void cmd_residues(const Options& o, std::ostream& os) {
  const Shape shape = need_shape(o);
  const PairPlan plan = plan_of(o);
  const auto prof = fit_beta_profile(shape, profile_options(o), plan);
  const auto sum = residues(shape, prof, plan);
  if (o.format == "csv") {
    csv_header(os, o);
    os << "z,res,stderr,method\n";
    for (const auto& p : sum.poles) {
      os << p.z << ',' << p.residue << ',' << p.std_error << ',' << p.method << '\n';
    }
    return;
  }
  json j = sum.to_json();
  j["meta"] = meta(o);
  j["shape"] = shape.label();
  j["profile"] = profile_json(prof);
  os << j.dump(2) << '\n';
}

void cmd_distro(const Options& o, std::ostream& os) {
  const Shape shape = need_shape(o);
  const auto dist = interpoint_cdf(shape, o.pairs, o.seed);
  if (o.format == "csv") {
    if (!o.q.empty()) throw ValidationError("--q needs --format json");
    csv_header(os, o);
    write_csv(os, dist, o.bins > 0 ? o.bins + 1 : 257);
    return;
  }
  json checks = json::array();
  if (!o.q.empty()) {
    PairPlan plan = plan_of(o);
    plan.seed = o.seed ^ 0x9E3779B9ULL;
    for (double q : real_list(o.q, "q value")) {
      const auto e = riesz_energy(shape, Complex(q - 1.0, 0.0), plan);
      const auto [mom, mom_err] = dist.integral([q](double t) { return std::pow(t, q - 1.0); });
      checks.push_back({{"q", q},
                        {"moment", mom},
                        {"moment_stderr", mom_err},
                        {"energy", e.value.real()},
                        {"energy_stderr", e.std_error},
                        {"residual", mellin_check(dist, q, e)}});
    }
  }
  const double vol = shape.volume();
  os << json{{"meta", meta(o)},
             {"shape", shape.label()},
             {"diam", dist.diam},
             {"total", dist.total()},
             {"volume_squared", vol * vol},
             {"effective_size", dist.effective_size()},
             {"mellin", checks}}
            .dump(2)
     << '\n';
}

void cmd_chord(const Options& o, std::ostream& os) {
  const Shape shape = need_shape(o);
  const auto ch = chord_length_distribution(shape, o.pairs, o.seed);
  if (o.format == "csv") {
    csv_header(os, o);
    write_csv(os, ch);
    return;
  }
  const auto c = crofton_moments(ch);
  os << json{{"meta", meta(o)},
             {"shape", shape.label()},
             {"dim", ch.dim},
             {"n_lines", ch.n_lines},
             {"hitting_measure", ch.hitting_measure},
             {"hitting_stderr", ch.hitting_error},
             {"mean_length", ch.mean_length()},
             {"crofton",
              {{"volume", c.volume},
               {"volume_stderr", c.volume_error},
               {"boundary", c.boundary},
               {"boundary_stderr", c.boundary_error}}}}
            .dump(2)
     << '\n';
}

void cmd_moebius(const Options& o, std::ostream& os) {
  need_format(o, "json");
  const Shape shape = need_shape(o);
  const int grid = o.bins > 0 ? o.bins : 2048;
  const double e = moebius_energy(shape, grid);
  const PairPlan plan = plan_of(o);
  const auto prof = fit_beta_profile(shape, profile_options(o), plan);
  const auto b = beta_eval(shape, Complex(-2.0, 0.0), prof, -1.0, plan);
  os << json{{"meta", meta(o)},
             {"shape", shape.label()},
             {"grid", grid},
             {"energy", e},
             {"energy_minus_4", e - 4.0},
             {"B(-2)", {{"re", b.value.real()}, {"stderr", b.std_error}}}}
            .dump(2)
     << '\n';
}

void cmd_identify(const Options& o, std::ostream& os) {
  need_format(o, "json");
  const Shape shape = need_shape(o);
  if (o.model.empty()) throw ValidationError("--model is required");
  const Shape model = load_shape(o.model);
  FingerprintBudget budget;
  budget.plan = plan_of(o);
  budget.diameter_n = o.diameter_n;
  const auto fp = fingerprint(shape, budget);
  budget.plan.seed = o.seed + 1;
  const auto ref = fingerprint(model, budget);
  const auto v = classify(fp, ref);
  os << json{{"meta", meta(o)},
             {"verdict", v.to_json()},
             {"fingerprint", fp.to_json()},
             {"reference", ref.to_json()}}
            .dump(2)
     << '\n';
}

void cmd_caelli(const Options& o, std::ostream& os) {
  need_format(o, "json");
  const CaelliConfig cfg = o.config.empty() ? caelli_default() : load_caelli(o.config);
  const auto pair = caelli_pair(cfg);
  json checks = json::array();
  for (const auto& c : pair.checks) {
    checks.push_back({{"name", c.name},
                      {"defect", c.defect},
                      {"tolerance", c.tolerance},
                      {"expect_equal", c.expect_equal},
                      {"pass", c.pass}});
  }
  json ks = json::array();
  for (std::uint64_t k = 0; k < 3; ++k) {
    const std::uint64_t s = o.seed + k;
    const auto a = interpoint_cdf(pair.x, o.pairs, s);
    const auto b = interpoint_cdf(pair.x_prime, o.pairs, s ^ 0xCAE111ULL);
    const double d = ks_distance(a, b), thr = ks_threshold(a, b);
    ks.push_back({{"seed", s}, {"distance", d}, {"threshold", thr}, {"pass", d < thr}});
  }
  os << json{{"meta", meta(o)},
             {"config", to_json(cfg)},
             {"preconditions", checks},
             {"area", pair.area},
             {"symmetric_difference", pair.symmetric_difference},
             {"caption_defect", pair.caption_defect},
             {"degenerate", pair.degenerate},
             {"ks", ks}}
            .dump(2)
     << '\n';
}

void cmd_tails(const Options& o, std::ostream& os) {
  need_format(o, "json");
  const auto eps = real_list(o.eps.empty() ? std::string("0.05,0.1,0.2") : o.eps, "eps value");
  TwoSphereConfig cfg{o.r1, o.r2, o.separation};
  validate(cfg);
  for (double e : eps) {
    if (!(e < cfg.eps1())) throw ValidationError("eps must be below eps1 = " + std::to_string(cfg.eps1()));
  }
  json single = json::array(), two = json::array();
  for (double e : eps) {
    const auto t = single_sphere_tail(e, o.pairs, o.seed);
    single.push_back({{"eps", e}, {"tail", t.value}, {"stderr", t.std_error}, {"exact", e - e * e / 4.0}});
    const auto r = tail_volume_ratio(cfg, e, o.pairs, o.seed);
    two.push_back({{"eps", e},
                   {"ratio", r.value},
                   {"stderr", r.std_error},
                   {"cap_bound", cfg.cap_bound(e)},
                   {"c_eps2", cfg.c() * e * e}});
  }
  const Shape u = equal_area_sphere_union();
  const auto up = sphere_union_parameters(u);
  const auto ut = tail_fraction(u, 2.0 - up.epsilon, o.pairs, o.seed);
  const auto st = single_sphere_tail(up.epsilon, o.pairs, o.seed + 1);
  os << json{{"meta", meta(o)},
             {"single_sphere", single},
             {"two_sphere",
              {{"r1", cfg.r1}, {"r2", cfg.r2}, {"separation", cfg.separation}, {"C", cfg.c()},
               {"ratios", two}}},
             {"sphere_union",
              {{"radii", up.radii},
               {"eps0", up.eps0},
               {"C0", up.c0},
               {"eps", up.epsilon},
               {"union_tail", ut.value},
               {"union_stderr", ut.std_error},
               {"sphere_tail", st.value},
               {"sphere_stderr", st.std_error}}}}
            .dump(2)
     << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Beta functions, residues and interpoint distances of shapes", "riesz-lab"};
  app.require_subcommand(1);
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--pairs", o.pairs, "sample budget (pairs, lines)")->check(CLI::PositiveNumber);
    sub->add_option("--seed", o.seed, "random seed");
    sub->add_option("--out", o.out, "output file (default stdout)");
    sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  };
  struct Sub {
    const char* name;
    const char* help;
    void (*fn)(const Options&, std::ostream&);
  };
  const Sub subs[] = {
      {"energy", "Riesz energy I_z for each --z", cmd_energy},
      {"beta", "continued beta function at each --z", cmd_beta},
      {"residues", "residues at the poles of the beta function", cmd_residues},
      {"distro", "interpoint distance distribution; Mellin checks for --q", cmd_distro},
      {"chord", "chord lengths of a disk or ball and Crofton moments", cmd_chord},
      {"moebius", "Moebius energy of a closed curve and B(-2)", cmd_moebius},
      {"identify", "classify --shape against --model", cmd_identify},
      {"caelli", "Caelli pair with equal interpoint distributions", cmd_caelli},
      {"tails", "far-pair tail volumes of sphere configurations", cmd_tails},
  };
  std::vector<std::pair<CLI::App*, const Sub*>> made;
  for (const auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    const std::string n = s.name;
    add_common(sub);
    if (n != "caelli" && n != "tails") sub->add_option("--shape", o.shape, "shape descriptor (JSON)");
    if (n == "energy" || n == "beta") sub->add_option("--z", o.z, "comma separated, e.g. 1,-0.5,-3+0.5i");
    if (n == "distro") sub->add_option("--q", o.q, "comma separated Mellin exponents");
    if (n == "distro" || n == "beta" || n == "residues" || n == "moebius") {
      sub->add_option("--bins", o.bins, "output radii (distro), grid (moebius), fit bins (beta)");
    }
    if (n == "beta" || n == "residues" || n == "moebius") sub->add_option("--tfit", o.tfit, "profile fitting radius");
    if (n == "identify") {
      sub->add_option("--model", o.model, "model shape descriptor");
      sub->add_option("--diameter-n", o.diameter_n, "largest exponent of the diameter sequence");
    }
    if (n == "caelli") sub->add_option("--config", o.config, "Caelli config (JSON)");
    if (n == "tails") {
      sub->add_option("--eps", o.eps, "comma separated tail widths");
      sub->add_option("--r1", o.r1, "first sphere radius");
      sub->add_option("--r2", o.r2, "second sphere radius");
      sub->add_option("--separation", o.separation, "centre distance");
    }
    made.emplace_back(sub, &s);
  }

  std::vector<const char*> cargv;
  for (const auto& a : args) cargv.push_back(a.c_str());
  std::vector<std::string> rest(args.begin() + (args.empty() ? 0 : 1), args.end());
  o.argv = rest;
  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "riesz-lab: " << e.what() << '\n';
    return kExitValidation;
  }
  for (const auto& [sub, s] : made) {
    if (!sub->parsed()) continue;
    o.command = s->name;
    if (o.format.empty()) {
      const bool tabular = (o.command == "distro" && o.q.empty()) || o.command == "chord";
      o.format = tabular ? "csv" : "json";
    }
    try {
      std::ostringstream buf;
      buf << std::setprecision(12);
      s->fn(o, buf);
      if (o.out.empty()) {
        out << buf.str();
      } else {
        std::ofstream f(o.out, std::ios::binary);
        if (!f) throw ValidationError("cannot write " + o.out);
        f << buf.str();
      }
      return kExitOk;
    } catch (const ValidationError& e) {
      err << "riesz-lab: " << e.what() << '\n';
      return kExitValidation;
    } catch (const DomainError& e) {
      err << "riesz-lab: " << e.what() << '\n';
      return kExitDomain;
    } catch (const std::exception& e) {
      err << "riesz-lab: internal error: " << e.what() << '\n';
      return 1;
    }
  }
  return kExitValidation;
}

}  // namespace riesz::lab
