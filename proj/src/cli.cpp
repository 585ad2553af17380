#include "modstar/cli.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "modstar/charfn.hpp"
#include "modstar/csv.hpp"
#include "modstar/cumulants.hpp"
#include "modstar/density.hpp"
#include "modstar/error.hpp"
#include "modstar/geodesic.hpp"
#include "modstar/specialfn.hpp"
#include "modstar/vardi.hpp"

namespace modstar {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ParamSpec {
  const char* name;
  const char* help;
  const char* fallback;  // nullptr: required
  bool flag = false;
  bool list = false;
};

class Params {
 public:
  Params(const std::map<std::string, std::string>& given, const std::vector<ParamSpec>& specs)
      : given_(given), specs_(specs) {}

  std::string text(const std::string& name) const {
    if (auto it = given_.find(name); it != given_.end()) return it->second;
    const ParamSpec& s = spec(name);
    if (!s.fallback) throw UsageError("missing required flag --" + name);
    return s.fallback;
  }

  bool flag(const std::string& name) const {
    const std::string v = text(name);
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0" || v.empty()) return false;
    throw UsageError("flag --" + name + " takes no value");
  }

  double real(const std::string& name) const { return parse_real(name, text(name)); }

  long integer(const std::string& name) const { return parse_integer(name, text(name)); }

  std::vector<double> reals(const std::string& name) const {
    std::vector<double> out;
    for (const auto& item : split(text(name))) out.push_back(parse_real(name, item));
    return out;
  }

  std::vector<long> integers(const std::string& name) const {
    std::vector<long> out;
    for (const auto& item : split(text(name))) out.push_back(parse_integer(name, item));
    return out;
  }

 private:
  const ParamSpec& spec(const std::string& name) const {
    for (const auto& s : specs_)
      if (name == s.name) return s;
    throw std::logic_error("undeclared parameter " + name);
  }

  static std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
      if (ch == ',') {
        out.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
    out.push_back(cur);
    return out;
  }

  // Decimal only, independent of the process locale.
  static double parse_real(const std::string& name, const std::string& v) {
    double x = 0.0;
    const char* first = v.data();
    if (!v.empty() && v[0] == '+') ++first;
    auto res = std::from_chars(first, v.data() + v.size(), x);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size() || v.empty())
      throw UsageError("flag --" + name + " expects a decimal number, got '" + v + "'");
    return x;
  }

  static long parse_integer(const std::string& name, const std::string& v) {
    // Accept integral decimals such as 1e6.
    const double x = parse_real(name, v);
    if (x != std::floor(x) || std::abs(x) > 9.0e15)
      throw UsageError("flag --" + name + " expects an integer, got '" + v + "'");
    return static_cast<long>(x);
  }

  const std::map<std::string, std::string>& given_;
  const std::vector<ParamSpec>& specs_;
};

using Meta = std::vector<std::pair<std::string, std::string>>;
using Handler = std::function<void(const Params&, const RunConfig&, std::ostream&, Meta&)>;

struct CommandSpec {
  const char* name;
  const char* help;
  std::vector<ParamSpec> params;
  Handler handler;
};

constexpr double kPi = std::numbers::pi;

void iid_modgauss(const Params& p, const RunConfig&, std::ostream& out, Meta& meta) {
  const int k = static_cast<int>(p.integer("k"));
  BaseLaw base = BaseLaw::plus_minus(1.0);
  if (const auto atoms_text = p.text("atoms"); !atoms_text.empty()) {
    std::vector<Atom> atoms;
    const auto vals = p.reals("atoms");
    if (vals.size() % 2) throw UsageError("--atoms expects value,weight pairs");
    for (std::size_t i = 0; i < vals.size(); i += 2) atoms.push_back({vals[i], vals[i + 1]});
    base = BaseLaw::from_ensemble(WeightedEnsemble(std::move(atoms)));
  }
  const auto cumulants = moments_to_cumulants(base.moments(k + 1));
  const double c = cumulants.c[static_cast<std::size_t>(k + 1)];
  meta.emplace_back("cumulant", csv::format(c));
  const double lmax = p.real("lambda-max");
  const auto grid = LambdaGrid::uniform(-lmax, lmax, static_cast<std::size_t>(p.integer("points")));
  out << "lambda,re,im,label,n\n";
  auto emit = [&](const CharTrace& tr, const std::string& n) {
    const auto pts = tr.grid.points();
    for (std::size_t i = 0; i < pts.size(); ++i)
      csv::write_row(out, {csv::format(pts[i]), csv::format(tr.values[i].real()), csv::format(tr.values[i].imag()),
                           csv::escape(tr.label), n});
  };
  for (long n : p.integers("n")) emit(cum1_trace(base, k, static_cast<double>(n), grid), csv::format(static_cast<std::int64_t>(n)));
  emit(cum1_limit_trace(k, c, grid), "inf");
}

void density_check(const Params& p, const RunConfig&, std::ostream& out, Meta& meta) {
  const RealPolynomial poly(p.reals("coeffs"));
  const double rf = p.real("radius-factor");
  const long points = p.integer("points");
  DensityReport rep;
  if (const auto s = p.text("sigma"); !s.empty())
    rep = certify_density(poly, p.real("sigma"), rf, points);
  else
    rep = find_sigma0(poly, rf, points, p.real("initial-sigma"));
  meta.emplace_back("certified", rep.certified ? "true" : "false");
  write_density_csv(out, {rep});
}

void dedekind_figure(const Params& p, const RunConfig&, std::ostream& out, Meta& meta) {
  const double t = p.real("t");
  const auto regime = vardi_regime(t);
  if (p.flag("claim-convergent") && regime != WindowRegime::Convergent)
    throw Error("refusing to label the trace convergent: a limit is only established for |t| < 4 pi/3");
  const auto trace = figure_trace(t, p.integer("n-max"), p.integer("stride"));
  meta.emplace_back("regime", std::string(to_string(regime)));
  write_figure_csv(out, std::span<const FigureTrace>(&trace, 1));
}

void vardi_phi_cmd(const Params& p, const RunConfig& cfg, std::ostream& out, Meta& meta) {
  const double t = p.real("t");
  if (p.flag("quadrature")) {
    const long nodes = p.integer("nodes");
    const double v = vardi_phi_quadrature(t, static_cast<int>(nodes), static_cast<int>(nodes));
    meta.emplace_back("method", "tensor-midpoint");
    write_phi_csv(out, t, {v, 0.0}, nodes * nodes, cfg.seed);
    return;
  }
  const long samples = p.integer("samples");
  meta.emplace_back("method", "monte-carlo");
  write_phi_csv(out, t, vardi_phi(t, samples, cfg.seed, cfg.chunks), samples, cfg.seed);
}

void vardi_law(const Params& p, const RunConfig&, std::ostream& out, Meta&) {
  std::vector<std::int64_t> ns;
  for (long n : p.integers("n")) ns.push_back(n);
  std::int64_t largest = 0;
  for (auto n : ns) {
    if (n < 3) throw Error("law check needs N >= 3");
    largest = std::max(largest, n);
  }
  const auto buckets = DedekindBuckets::build(largest);
  std::vector<double> d;
  for (auto n : ns) d.push_back(vardi_law_check(buckets, n));
  write_law_csv(out, ns, d);
}

void geodesics(const Params& p, const RunConfig&, std::ostream& out, Meta& meta) {
  const auto ens = enumerate_classes(p.real("x"));
  meta.emplace_back("count", std::to_string(ens.classes.size()));
  write_classes_csv(out, ens);
}

void sarnak(const Params& p, const RunConfig&, std::ostream& out, Meta& meta) {
  const double t = p.real("t");
  const double x = p.real("x");
  const bool exploratory = p.flag("exploratory");
  const auto v = sarnak_trace(t, x, exploratory);
  if (exploratory && std::isnan(v.phi1)) meta.emplace_back("window", "exploratory");
  out << "t,x,value,phi1\n";
  csv::write_row(out, {csv::format(t), csv::format(x), csv::format(v.value), csv::format(v.phi1)});
}

void selberg(const Params& p, const RunConfig&, std::ostream& out, Meta&) {
  out << "x,ratio,count\n";
  for (double x : p.reals("x")) {
    if (!(x >= 7.0)) throw Error("selberg_check needs x >= 7");
    const auto ens = enumerate_classes(x);
    csv::write_row(out, {csv::format(x), csv::format(selberg_check(ens)),
                         csv::format(static_cast<std::int64_t>(ens.classes.size()))});
  }
}

void wieand(const Params& p, const RunConfig&, std::ostream& out, Meta&) {
  const double gamma = p.real("gamma");
  const double tmax = p.real("t-max");
  if (!(tmax < kPi)) throw Error("outside restricted window: wieand-limit needs t-max < pi");
  const auto grid = LambdaGrid::uniform(-tmax, tmax, static_cast<std::size_t>(p.integer("points")), kPi);
  CharTrace tr{grid, {}, "wieand gamma=" + csv::format(gamma)};
  for (double t : grid.points()) tr.values.emplace_back(wieand_limit(t, gamma), 0.0);
  write_trace_csv(out, std::span<const CharTrace>(&tr, 1));
}

void counterexample(const Params& p, const RunConfig&, std::ostream& out, Meta& meta) {
  const double lmax = p.real("lambda-max");
  const double radius = p.real("radius");
  const auto grid = LambdaGrid::uniform(-lmax, lmax, static_cast<std::size_t>(p.integer("points")));
  std::vector<CharTrace> traces;
  for (auto [which, label] : {std::pair{CounterexampleMeasure::A, "A"}, std::pair{CounterexampleMeasure::B, "B"}}) {
    CharTrace tr{grid, {}, label};
    for (double lam : grid.points()) tr.values.emplace_back(counterexample_fourier(which, lam, radius), 0.0);
    traces.push_back(std::move(tr));
  }
  meta.emplace_back("tail_bound", csv::format(counterexample_tail_bound(radius)));
  write_trace_csv(out, traces);
}

void invert_limit(const Params& p, const RunConfig&, std::ostream& out, Meta&) {
  const int k = static_cast<int>(p.integer("k"));
  const double c = p.real("c");
  const double xmax = p.real("x-max");
  const auto grid = LambdaGrid::uniform(-xmax, xmax, static_cast<std::size_t>(p.integer("points")));
  const auto values = inverse_fourier_limit(k, c, grid.points());
  out << "x,value\n";
  for (std::size_t i = 0; i < values.size(); ++i) csv::write_row(out, {csv::format(grid.points()[i]), csv::format(values[i])});
}

const std::vector<CommandSpec>& commands() {
  static const std::vector<CommandSpec> specs = {
      {"iid-modgauss",
       "Renormalized characteristic function of N^{-1/(k+1)}(X_1+...+X_N) against its limit "
       "exp(c_{k+1}(i lambda)^{k+1}/(k+1)!). Default base law: P[X=1]=P[X=-1]=1/2.",
       {{"k", "moment-matching order (>= 2)", "3"},
        {"n", "sample sizes N, comma separated", "1000000", false, true},
        {"lambda-max", "grid half-width", "2"},
        {"points", "grid points", "41"},
        {"atoms", "optional base law as value,weight,value,weight,...", ""}},
       iid_modgauss},
      {"density-check",
       "Certify g_{P,sigma} >= 0 and report its mass. Without --sigma, search sigma by doubling.",
       {{"coeffs", "coefficients of P from degree 0; P(0) must be 1", "1,0,1", false, true},
        {"sigma", "certify at this sigma instead of searching", ""},
        {"initial-sigma", "first sigma of the doubling search", "1"},
        {"radius-factor", "certification grid radius in units of sigma^2", "6"},
        {"points", "certification grid points", "200001"}},
       density_check},
      {"dedekind-figure",
       "exp(gamma_N|t|) Re E_N(exp(i t s(d,c))) over F_N for N = 3, 3+stride, ... <= n-max. "
       "A limit is established only for |t| < 4 pi/3 (uniform error bound for |t| < 2 pi).",
       {{"t", "frequency t", nullptr},
        {"n-max", "largest N", "5000"},
        {"stride", "step in N", "1"},
        {"claim-convergent", "fail unless |t| < 4 pi/3", "false", true}},
       dedekind_figure},
      {"vardi-phi",
       "Limiting function Phi(t) by integration over the modular fundamental domain. "
       "Requires |t| < 4 pi (pole at |t| = 4 pi).",
       {{"t", "frequency t, |t| < 4 pi", nullptr},
        {"samples", "Monte-Carlo samples", "1000000"},
        {"quadrature", "use the deterministic tensor midpoint rule", "false", true},
        {"nodes", "nodes per axis for --quadrature", "400"}},
       vardi_phi_cmd},
      {"vardi-law",
       "Kolmogorov-Smirnov distance of s(d,c)/((log c)/2 pi) over F_N to the standard Cauchy law.",
       {{"n", "values of N, comma separated", "5000", false, true}},
       vardi_law},
      {"geodesics",
       "Primitive hyperbolic conjugacy classes of PSL(2,Z) with norm <= x.",
       {{"x", "norm cutoff", nullptr}},
       geodesics},
      {"sarnak",
       "exp(gamma_x|t|) E_x(exp(i t psi)) with length weights, against Phi_1(t) = 1/(1-3|t|/pi). "
       "The theorem covers |t| <= pi/12; larger |t| needs --exploratory and carries no Phi_1.",
       {{"t", "frequency t, |t| <= pi/12", nullptr},
        {"x", "norm cutoff", nullptr},
        {"exploratory", "allow |t| > pi/12", "false", true}},
       sarnak},
      {"selberg",
       "Prime geodesic normalization sum of lengths / x.",
       {{"x", "norm cutoffs, comma separated", nullptr, false, true}},
       selberg},
      {"wieand-limit",
       "(2-2cos 4 pi gamma)^{t^2/4pi^2} G(1-t/2pi) G(1+t/2pi) on a grid in [-t-max, t-max]. "
       "Requires |t| < pi.",
       {{"gamma", "arc half-width in (0, 1/2)", "0.25"},
        {"t-max", "grid half-width, < pi", "3"},
        {"points", "grid points", "61"}},
       wieand},
      {"counterexample",
       "Fourier transforms of (1-cos x)/(pi x^2) dx (A) and delta_0/2 + (1-cos(x/2))/(pi x^2) dx (B).",
       {{"points", "grid points", "101"},
        {"lambda-max", "grid half-width", "0.5"},
        {"radius", "quadrature radius X; tail bound 2/(pi X)", "20000"}},
       counterexample},
      {"invert-limit",
       "Inverse Fourier transform of exp(c (i lambda)^{k+1}/(k+1)!); k+1 even, decaying integrand.",
       {{"k", "order k", "3"},
        {"c", "cumulant c_{k+1}", "-2"},
        {"x-max", "grid half-width", "6"},
        {"points", "grid points", "121"}},
       invert_limit},
  };
  return specs;
}

const CommandSpec* find_command(const std::string& name) {
  for (const auto& c : commands())
    if (name == c.name) return &c;
  return nullptr;
}

void write_meta(const std::string& path, const RunConfig& cfg, const Meta& meta, double seconds) {
  std::ofstream m(path + ".meta");
  if (!m) throw Error("cannot write metadata file " + path + ".meta");
  m << "subcommand=" << cfg.subcommand << '\n';
  for (const auto& [k, v] : cfg.params) m << "param." << k << '=' << v << '\n';
  m << "seed=" << cfg.seed << '\n';
  m << "chunks=" << cfg.chunks << '\n';
  m << "output=" << cfg.output_path << '\n';
  m << "version=" << kVersion << '\n';
  for (const auto& [k, v] : meta) m << k << '=' << v << '\n';
  m << "wall_clock_seconds=" << csv::format(seconds) << '\n';
}

}  // namespace

const std::vector<std::string>& subcommand_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& c : commands()) n.emplace_back(c.name);
    return n;
  }();
  return names;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const CommandSpec* cmd = find_command(config.subcommand);
  if (!cmd) {
    err << "usage error: unknown subcommand '" << config.subcommand << "'\n";
    return kExitUsage;
  }
  for (const auto& [key, value] : config.params) {
    bool known = false;
    for (const auto& s : cmd->params) known = known || key == s.name;
    if (!known) {
      err << "usage error: unknown flag --" << key << " for " << cmd->name << '\n';
      return kExitUsage;
    }
  }
  if (config.chunks < 1) {
    err << "usage error: --chunks must be >= 1\n";
    return kExitUsage;
  }
  const auto start = std::chrono::steady_clock::now();
  std::ostringstream csv_text;
  Meta meta;
  try {
    Params params(config.params, cmd->params);
    cmd->handler(params, config, csv_text, meta);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (config.output_path.empty() || config.output_path == "-") {
    out << csv_text.str();
    return kExitOk;
  }
  try {
    std::ofstream f(config.output_path, std::ios::binary);
    if (!f) throw Error("cannot open output file " + config.output_path);
    f << csv_text.str();
    write_meta(config.output_path, config, meta, seconds);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mod-* convergence laboratory: characteristic functions, Dedekind sums and modular geodesics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  struct Bound {
    std::map<std::string, std::string> scalars;
    std::map<std::string, std::vector<std::string>> lists;
    std::map<std::string, bool> flags;
    std::uint64_t seed = 0;
    int chunks = 1;
    int threads = 0;
    std::string output;
  };
  std::map<std::string, Bound> bound;
  std::map<std::string, CLI::App*> subs;
  for (const auto& cmd : commands()) {
    Bound& b = bound[cmd.name];
    b.output = std::string(cmd.name) + ".csv";
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    subs[cmd.name] = sub;
    for (const auto& ps : cmd.params) {
      const std::string flag = std::string("--") + ps.name;
      std::string help = ps.help;
      if (ps.fallback && !ps.flag && *ps.fallback) help += std::string(" [default: ") + ps.fallback + "]";
      if (ps.flag) {
        sub->add_flag(flag, b.flags[ps.name], help);
      } else if (ps.list) {
        auto* opt = sub->add_option(flag, b.lists[ps.name], help)->delimiter(',')->allow_extra_args(false);
        if (!ps.fallback) opt->required();
      } else {
        auto* opt = sub->add_option(flag, b.scalars[ps.name], help);
        if (!ps.fallback) opt->required();
      }
    }
    sub->add_option("--seed", b.seed, "random seed [default: 0]");
    sub->add_option("--chunks", b.chunks, "logical parallel partition count [default: 1]")->check(CLI::PositiveNumber);
    sub->add_option("--threads", b.threads, "worker threads, 0 for the OpenMP default");
    sub->add_option("--output", b.output, std::string("CSV path, - for stdout [default: ") + cmd.name + ".csv]");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  for (const auto& cmd : commands()) {
    CLI::App* sub = subs[cmd.name];
    if (!sub->parsed()) continue;
    Bound& b = bound[cmd.name];
    RunConfig cfg;
    cfg.subcommand = cmd.name;
    cfg.seed = b.seed;
    cfg.chunks = b.chunks;
    cfg.output_path = b.output;
    for (const auto& ps : cmd.params) {
      const std::string flag = std::string("--") + ps.name;
      if (sub->count(flag) == 0) continue;
      if (ps.flag) {
        cfg.params[ps.name] = "true";
      } else if (ps.list) {
        std::string joined;
        for (const auto& v : b.lists[ps.name]) joined += (joined.empty() ? "" : ",") + v;
        cfg.params[ps.name] = joined;
      } else {
        cfg.params[ps.name] = b.scalars[ps.name];
      }
    }
    if (b.threads > 0) omp_set_num_threads(b.threads);
    return run(cfg, out, err);
  }
  return kExitUsage;
}

}  // namespace modstar
