#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>

#include "flightlab/densities.hpp"
#include "flightlab/format.hpp"
#include "flightlab/pdecheck.hpp"
#include "flightlab/quadrature.hpp"
#include "flightlab/random.hpp"
#include "flightlab/rates.hpp"
#include "flightlab/samplers.hpp"
#include "flightlab/specfun.hpp"
#include "flightlab/stats.hpp"
#include "flightlab/transmute.hpp"

namespace flightlab::cli {
namespace {

using P = ParamType;

std::vector<Param> sampler_params() {
  return {
      {"law", P::String, "", "exact 1D sampler: epd | conditional-even"},
      {"process", P::String, "",
       "process sampler: telegraph | four-dir | epd-dd | planar | projected | ufrak"},
      {"alpha", P::Number, 0.5, "EPD shape"},
      {"k", P::Integer, 1, "ConditionalEven half count"},
      {"rate", P::String, "constant:1", "rate model kind:value"},
      {"c", P::Number, 1.0, "speed"},
      {"t", P::Number, 1.0, "time"},
      {"n", P::Integer, 1000, "number of samples"},
      {"gamma", P::Number, 1.0, "EPD flight shape"},
      {"d", P::Integer, 2, "dimension"},
      {"count", P::String, "fixed:2", "planar change count: fixed:N | odd:lambda | even:lambda"},
      {"changes", P::Integer, 2, "direction changes of a projected flight"},
      {"dirichlet_shape", P::Number, 1.0, "Dirichlet shape of the leg durations"},
      {"t0_fraction", P::Number, 1e-4, "start time fraction for divergent rates"},
  };
}

std::vector<Command> build_commands() {
  std::vector<Command> cmds;
  cmds.push_back({"sample", "draw positions from a sampler", true, sampler_params()});

  cmds.push_back({"density",
                  "tabulate a closed-form law",
                  false,
                  {
                      {"law", P::String, "epd",
                       "epd | tanh | coth | classical | conditional-even | epd-dd | marginal | "
                       "flight3d | planar-conditional | planar-unconditional | parity-odd | "
                       "parity-even"},
                      {"alpha", P::Number, 0.5, "EPD shape"},
                      {"lambda", P::Number, 1.0, "rate parameter"},
                      {"k", P::Integer, 1, "ConditionalEven half count"},
                      {"gamma", P::Number, 1.0, "EPD flight shape"},
                      {"d", P::Integer, 2, "dimension"},
                      {"m", P::Integer, 1, "marginal dimension"},
                      {"kind", P::String, "uniform", "planar kind: uniform | projx | projy"},
                      {"changes", P::Integer, 2, "direction changes (planar-conditional)"},
                      {"rate", P::String, "square:1", "rate model (planar-unconditional)"},
                      {"c", P::Number, 1.0, "speed"},
                      {"t", P::Number, 1.0, "time"},
                      {"points", P::Integer, 201, "grid points per axis"},
                      {"grid", P::String, "auto", "auto | line | radial | plane"},
                      {"plot_script", P::Integer, 0, "1: also write a gnuplot script"},
                  }});

  cmds.push_back({"verify",
                  "finite-difference residual convergence of a named suite",
                  false,
                  {
                      {"suite", P::String, "epd-1d", "suite name"},
                      {"alpha", P::Number, 1.5, "EPD / transmutation shape"},
                      {"lambda", P::Number, 1.0, "rate parameter"},
                      {"gamma", P::Number, 2.0, "EPD flight shape"},
                      {"d", P::Integer, 3, "dimension"},
                      {"m", P::Integer, 1, "marginal dimension"},
                      {"c", P::Number, 1.0, "speed"},
                      {"t", P::Number, 1.0, "final time of the residual box"},
                      {"datum", P::String, "gaussian", "initial datum or forcing name"},
                      {"steps", P::NumberList, Json::array({0.02, 0.01, 0.005}), "grid steps"},
                      {"min_order", P::Number, 1.8, "required convergence order"},
                  }});

  auto cmp = sampler_params();
  cmp.push_back({"ks_threshold", P::Number, 0.0, "KS threshold (0: 1% critical value)"});
  cmp.push_back({"atom_sigma", P::Number, 3.0, "boundary fraction tolerance in sigmas"});
  cmp.push_back({"bins", P::Integer, 50, "histogram bins"});
  cmds.push_back({"compare", "goodness of fit of a sampler against its closed-form law", true, cmp});

  cmds.push_back({"charfn",
                  "characteristic function table of the EPD flight",
                  false,
                  {
                      {"gamma", P::Number, 1.0, "shape"},
                      {"d", P::Integer, 2, "dimension"},
                      {"c", P::Number, 1.0, "speed"},
                      {"t", P::Number, 1.0, "time"},
                      {"kmax", P::Number, 5.0, "largest frequency"},
                      {"points", P::Integer, 11, "number of frequencies"},
                      {"n", P::Integer, 0, "samples for the empirical column (0: none)"},
                      {"tolerance", P::Number, 0.01, "max |empirical - exact|"},
                  }});

  cmds.push_back({"moments",
                  "even moments of the EPD law, closed form against quadrature",
                  false,
                  {
                      {"alpha", P::Number, 0.5, "shape"},
                      {"c", P::Number, 1.0, "speed"},
                      {"t", P::Number, 1.0, "time"},
                      {"kmax", P::Integer, 3, "largest k"},
                      {"tolerance", P::Number, 1e-8, "max relative difference"},
                  }});
  return cmds;
}

double num(const Json& c, const char* key) { return c.at(key).get<double>(); }
long long integer(const Json& c, const char* key) { return c.at(key).get<long long>(); }
std::string str(const Json& c, const char* key) { return c.at(key).get<std::string>(); }

int positive_int(const Json& c, const char* key) {
  const long long v = integer(c, key);
  if (v < 0 || v > std::numeric_limits<int>::max()) {
    throw ConfigError(std::string(key) + " is out of range");
  }
  return static_cast<int>(v);
}

std::size_t count_param(const Json& c, const char* key) {
  const long long v = integer(c, key);
  if (v < 1) throw ConfigError(std::string(key) + " must be >= 1");
  return static_cast<std::size_t>(v);
}

std::uint64_t require_seed(const Context& ctx, const std::string& command) {
  if (!ctx.seed) throw ConfigError(command + ": --seed is required");
  return *ctx.seed;
}

RunManifest start(const std::string& command, const Json& config, const Context& ctx) {
  RunManifest m;
  m.command = command;
  m.config = config;
  m.seed = ctx.seed.value_or(0);
  return m;
}

std::ofstream open_output(const Context& ctx, RunManifest& m, const std::string& name) {
  std::filesystem::create_directories(ctx.out_dir);
  std::ofstream os(ctx.out_dir / name, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot write " + (ctx.out_dir / name).string());
  m.outputs.push_back(name);
  return os;
}

// Sampler selection shared by sample and compare.

std::string sampler_name(const Json& c) {
  const std::string law = str(c, "law");
  const std::string process = str(c, "process");
  if (law.empty() == process.empty()) {
    throw ConfigError("exactly one of --law and --process must be given");
  }
  if (!law.empty()) {
    if (law != "epd" && law != "conditional-even") {
      throw ConfigError("unknown exact law '" + law + "' (epd | conditional-even)");
    }
    return law;
  }
  static const std::vector<std::string> known = {"telegraph", "four-dir", "epd-dd",
                                                 "planar",    "projected", "ufrak"};
  if (std::find(known.begin(), known.end(), process) == known.end()) {
    throw ConfigError("unknown process '" + process + "'");
  }
  return process;
}

CountSource parse_count(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw ConfigError("count must look like fixed:N | odd:L | even:L");
  const std::string kind = spec.substr(0, colon);
  const std::string value = spec.substr(colon + 1);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (value.empty() || used != value.size()) throw ConfigError("malformed count value '" + value + "'");
  if (kind == "fixed") {
    if (v < 1.0 || v != std::floor(v)) throw ConfigError("fixed count must be an integer >= 1");
    return CountSource::fixed(static_cast<int>(v));
  }
  if (!(v > 0.0)) throw ConfigError("parity count rate must be positive");
  if (kind == "odd") return CountSource::parity_poisson(Parity::Odd, v);
  if (kind == "even") return CountSource::parity_poisson(Parity::Even, v);
  throw ConfigError("unknown count kind '" + kind + "'");
}

RateModel rate_param(const Json& c) {
  try {
    return parse_rate(str(c, "rate"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

SampleBatch draw(const Json& c, std::uint64_t seed, unsigned threads) {
  const std::string which = sampler_name(c);
  const double speed = num(c, "c");
  const double t = num(c, "t");
  const std::size_t n = count_param(c, "n");
  if (which == "epd") return sample_exact_1d(Law1D::epd(num(c, "alpha"), speed, t), n, seed, threads);
  if (which == "conditional-even") {
    return sample_exact_1d(Law1D::conditional_even(positive_int(c, "k"), speed, t), n, seed,
                           threads);
  }
  if (which == "telegraph") {
    return sample_telegraph_path(rate_param(c), speed, t, num(c, "t0_fraction"), n, seed, threads);
  }
  if (which == "four-dir") {
    return sample_four_directions(rate_param(c), speed, t, num(c, "t0_fraction"), n, seed, threads);
  }
  if (which == "epd-dd") {
    return sample_epd_dd(num(c, "gamma"), positive_int(c, "d"), speed, t, n, seed, threads);
  }
  if (which == "planar") {
    return sample_planar_flight(parse_count(str(c, "count")), speed, t, n, seed, threads,
                                num(c, "dirichlet_shape"));
  }
  if (which == "projected") {
    return sample_projected_flight(positive_int(c, "d"), positive_int(c, "changes"), speed, t, n,
                                   seed, threads, num(c, "dirichlet_shape"));
  }
  // ufrak
  SampleBatch b;
  b.dims = 1;
  b.positions = sample_ufrak(num(c, "alpha"), t, n, seed, threads);
  b.boundary.assign(n, 0);
  b.seed = seed;
  b.c = 1.0;
  b.t = t;
  b.descriptor = "ufrak";
  return b;
}

void write_samples(std::ostream& os, const SampleBatch& b) {
  for (int j = 0; j < b.dims; ++j) os << 'x' << (j + 1) << ',';
  os << "boundary\n";
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (int j = 0; j < b.dims; ++j) os << format_real(b.at(i, j)) << ',';
    os << static_cast<int>(b.boundary[i]) << '\n';
  }
}

// Closed-form reference for the compare command.
struct Reference {
  std::string statistic;  // description of the compared scalar
  std::function<double(const SampleBatch&, std::size_t)> stat;
  std::function<double(double)> cdf;  // law of the statistic given no boundary event
  std::vector<double> reference_sample;  // two-sample comparison when non-empty
  double lo = 0.0;
  double hi = 1.0;
  double boundary_expected = 0.0;
  bool relaxed = false;  // divergent-rate trajectory: fixed KS tolerance 0.02
};

double coord0(const SampleBatch& b, std::size_t i) { return b.at(i, 0); }
double radius(const SampleBatch& b, std::size_t i) {
  double s = 0.0;
  for (int j = 0; j < b.dims; ++j) s += b.at(i, j) * b.at(i, j);
  return std::sqrt(s);
}

// CDF of the radius of the disc profile with shape g: 1 - (1 - r^2/R^2)^g.
std::function<double(double)> disc_radius_cdf(double g, double R) {
  return [g, R](double r) {
    const double s = std::clamp(r / R, 0.0, 1.0);
    return -std::expm1(g * std::log1p(-s * s));
  };
}

Reference make_reference(const Json& c, std::uint64_t seed, unsigned threads) {
  const std::string which = sampler_name(c);
  const double speed = num(c, "c");
  const double t = num(c, "t");
  const double ct = speed * t;
  Reference ref;
  ref.lo = -ct;
  ref.hi = ct;
  ref.stat = coord0;
  ref.statistic = "x1";
  if (which == "epd") {
    const double a = num(c, "alpha");
    ref.cdf = [a, ct](double x) { return transmute::symmetric_beta_cdf(a, std::clamp(x / ct, -1.0, 1.0)); };
    return ref;
  }
  if (which == "conditional-even") {
    const double k = positive_int(c, "k");
    ref.cdf = [k, ct](double x) {
      return specfun::reg_inc_beta(k, k, std::clamp(0.5 * (1.0 + x / ct), 0.0, 1.0));
    };
    return ref;
  }
  if (which == "telegraph") {
    const RateModel model = rate_param(c);
    const double p = model.parameter();
    Law1D law;
    switch (model.kind()) {
      case RateKind::Constant:
        law = Law1D::classical(p, speed, t);
        break;
      case RateKind::Tanh:
        law = Law1D::tanh(p, speed, t);
        break;
      case RateKind::Coth:
        law = Law1D::coth(p, speed, t);
        break;
      case RateKind::EPD:
        law = Law1D::epd(p, speed, t);
        break;
      case RateKind::SquareHazard:
        throw ConfigError("compare: no closed-form telegraph law for the square hazard");
    }
    law.validate();
    ref.relaxed = model.divergent_at_origin();
    ref.boundary_expected = 2.0 * atom_mass_1d(law);
    if (model.kind() == RateKind::EPD) {
      ref.cdf = [p, ct](double x) { return transmute::symmetric_beta_cdf(p, std::clamp(x / ct, -1.0, 1.0)); };
    } else {
      auto tab = std::make_shared<stats::TabulatedCdf>(
          [law](double x) { return density_1d(law, x); }, -ct, ct, 2048);
      ref.cdf = [tab](double x) { return (*tab)(x) / tab->total(); };
    }
    return ref;
  }
  if (which == "four-dir") {
    const RateModel model = rate_param(c);
    if (model.kind() != RateKind::Constant) {
      throw ConfigError("compare: the four-direction reference needs a constant rate");
    }
    const double lambda = model.parameter();
    const std::size_t n = count_param(c, "n");
    const auto half = RateModel::constant(0.5 * lambda);
    const double f0 = num(c, "t0_fraction");
    const auto u = sample_telegraph_path(half, 0.5 * speed, t, f0, n, derive_seed(seed, 1), threads);
    const auto v = sample_telegraph_path(half, 0.5 * speed, t, f0, n, derive_seed(seed, 2), threads);
    ref.reference_sample.resize(n);
    for (std::size_t i = 0; i < n; ++i) ref.reference_sample[i] = u.at(i, 0) + v.at(i, 0);
    ref.stat = [](const SampleBatch& b, std::size_t i) { return b.at(i, 0) + b.at(i, 1); };
    ref.statistic = "x1+x2";
    ref.boundary_expected = std::exp(-lambda * t);
    return ref;
  }
  // Radial statistics from here on.
  ref.lo = 0.0;
  ref.stat = radius;
  ref.statistic = "radius";
  if (which == "epd-dd") {
    const double g = num(c, "gamma");
    const double d = positive_int(c, "d");
    ref.cdf = [g, d, ct](double r) {
      const double s = std::clamp(r / ct, 0.0, 1.0);
      return specfun::reg_inc_beta(0.5 * d, g, s * s);
    };
    return ref;
  }
  if (which == "planar") {
    const CountSource src = parse_count(str(c, "count"));
    if (src.kind == CountSource::Kind::Fixed) {
      if (num(c, "dirichlet_shape") != 1.0) {
        throw ConfigError("compare: closed form only for uniform change times (dirichlet_shape 1)");
      }
      ref.cdf = disc_radius_cdf(0.5 * src.changes, ct);
      return ref;
    }
    const double lt = src.lambda * t;
    const double k = src.lambda / speed;
    if (src.parity == Parity::Odd) {
      ref.cdf = [=](double r) {
        const double rho = std::sqrt(std::max(0.0, (ct - r) * (ct + r)));
        return 1.0 - std::sinh(k * rho) / std::sinh(lt);
      };
    } else {
      ref.boundary_expected = parity_boundary_mass(Parity::Even, src.lambda, t);
      ref.cdf = [=](double r) {
        const double rho = std::sqrt(std::max(0.0, (ct - r) * (ct + r)));
        return (std::cosh(lt) - std::cosh(k * rho)) / (std::cosh(lt) - 1.0);
      };
    }
    return ref;
  }
  if (which == "projected") {
    const int d = positive_int(c, "d");
    const int changes = positive_int(c, "changes");
    const double shape = num(c, "dirichlet_shape");
    const double matching = d == 2 ? 1.0 : d - 1.0;
    if (shape != matching) {
      throw ConfigError("compare: the projected law needs dirichlet_shape = d - 1 (1 for d = 2)");
    }
    if (changes < 1) throw ConfigError("compare: projected flights need changes >= 1");
    const auto law = PlanarConditional::proj_x(d, changes);
    law.validate();
    ref.cdf = disc_radius_cdf(law.shape(), ct);
    return ref;
  }
  // ufrak: |X| / c with X from the EPD law, on (0, t).
  const double a = num(c, "alpha");
  ref.stat = coord0;
  ref.statistic = "u";
  ref.hi = t;
  ref.cdf = [a, t](double u) {
    return 2.0 * transmute::symmetric_beta_cdf(a, std::clamp(u / t, 0.0, 1.0)) - 1.0;
  };
  return ref;
}

}  // namespace

const std::vector<Command>& commands() {
  static const std::vector<Command> cmds = build_commands();
  return cmds;
}

const Command& find_command(const std::string& name) {
  for (const auto& c : commands()) {
    if (c.name == name) return c;
  }
  throw ConfigError("unknown command '" + name + "'");
}

Json normalize_config(const Command& command, const Json& given) {
  if (!given.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, value] : given.items()) {
    const bool known = std::any_of(command.params.begin(), command.params.end(),
                                   [&](const Param& p) { return p.key == key; });
    if (!known) throw ConfigError(command.name + ": unknown config key '" + key + "'");
  }
  Json out = Json::object();
  for (const auto& p : command.params) {
    const Json v = given.contains(p.key) ? given.at(p.key) : p.default_value;
    switch (p.type) {
      case ParamType::Number:
        if (!v.is_number()) throw ConfigError(p.key + " must be a number");
        if (!std::isfinite(v.get<double>())) throw ConfigError(p.key + " must be finite");
        out[p.key] = v.get<double>();
        break;
      case ParamType::Integer:
        if (!v.is_number_integer()) throw ConfigError(p.key + " must be an integer");
        out[p.key] = v.get<long long>();
        break;
      case ParamType::String:
        if (!v.is_string()) throw ConfigError(p.key + " must be a string");
        out[p.key] = v;
        break;
      case ParamType::NumberList: {
        if (!v.is_array() || v.empty()) throw ConfigError(p.key + " must be a nonempty number list");
        Json list = Json::array();
        for (const auto& e : v) {
          if (!e.is_number()) throw ConfigError(p.key + " must be a number list");
          list.push_back(e.get<double>());
        }
        out[p.key] = list;
        break;
      }
    }
  }
  return out;
}

Json RunManifest::to_json() const {
  Json j = Json::object();
  j["command"] = command;
  j["config"] = config;
  j["seed"] = seed;
  j["outputs"] = outputs;
  j["summary"] = summary;
  return j;
}

RunManifest execute(const Command& command, const Json& config, const Context& ctx) {
  RunManifest m;
  if (command.name == "sample") {
    m = cmd_sample(config, ctx);
  } else if (command.name == "density") {
    m = cmd_density(config, ctx);
  } else if (command.name == "verify") {
    m = cmd_verify(config, ctx);
  } else if (command.name == "compare") {
    m = cmd_compare(config, ctx);
  } else if (command.name == "charfn") {
    m = cmd_charfn(config, ctx);
  } else if (command.name == "moments") {
    m = cmd_moments(config, ctx);
  } else {
    throw ConfigError("unknown command '" + command.name + "'");
  }
  std::filesystem::create_directories(ctx.out_dir);
  std::ofstream os(ctx.out_dir / "manifest.json", std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot write manifest.json");
  os << m.to_json().dump(2) << '\n';
  return m;
}

RunManifest cmd_sample(const Json& c, const Context& ctx) {
  const std::uint64_t seed = require_seed(ctx, "sample");
  sampler_name(c);
  RunManifest m = start("sample", c, ctx);
  const SampleBatch b = draw(c, seed, ctx.threads);
  {
    auto os = open_output(ctx, m, "samples.csv");
    write_samples(os, b);
  }
  const auto x = stats::summarize(b.coordinate(0));
  const auto r = stats::summarize(b.norms());
  m.summary["n"] = b.size();
  m.summary["boundary_fraction"] = b.boundary_fraction();
  m.summary["mean"] = x.mean;
  m.summary["variance"] = x.variance;
  m.summary["mean_norm"] = r.mean;
  m.summary["variance_norm"] = r.variance;
  return m;
}

RunManifest cmd_density(const Json& c, const Context& ctx) {
  RunManifest m = start("density", c, ctx);
  const std::string law = str(c, "law");
  const double speed = num(c, "c");
  const double t = num(c, "t");
  const double ct = speed * t;
  const int points = positive_int(c, "points");
  if (points < 2) throw ConfigError("points must be >= 2");

  std::function<double(double)> f;
  bool radial = true;
  std::optional<double> atom, boundary_mass, continuous_mass;

  auto line_law = [&](const Law1D& l) {
    l.validate();
    f = [l](double x) { return density_1d(l, x); };
    radial = false;
    atom = atom_mass_1d(l);
    continuous_mass = continuous_mass_1d(l);
  };
  if (law == "epd") {
    line_law(Law1D::epd(num(c, "alpha"), speed, t));
  } else if (law == "tanh") {
    line_law(Law1D::tanh(num(c, "lambda"), speed, t));
  } else if (law == "coth") {
    line_law(Law1D::coth(num(c, "lambda"), speed, t));
  } else if (law == "classical") {
    line_law(Law1D::classical(num(c, "lambda"), speed, t));
  } else if (law == "conditional-even") {
    line_law(Law1D::conditional_even(positive_int(c, "k"), speed, t));
  } else if (law == "epd-dd") {
    const RadialLawDD l{num(c, "gamma"), positive_int(c, "d"), speed, t};
    l.validate();
    f = [l](double r) { return density_epd_dd_radial(l, r); };
    continuous_mass = ball_mass_epd_dd(l);
  } else if (law == "marginal") {
    const double g = num(c, "gamma");
    const int d = positive_int(c, "d");
    const int mm = positive_int(c, "m");
    f = [=](double r) { return density_marginal_radial(g, d, mm, std::fabs(r), speed, t); };
    f(0.0);
    radial = mm > 1;
  } else if (law == "flight3d") {
    const double lambda = num(c, "lambda");
    f = [=](double r) { return density_flight3d_radial(lambda, speed, t, r); };
    boundary_mass = sphere_atom_mass(lambda, t);
    continuous_mass = ball_mass_flight3d(lambda, speed, t);
  } else if (law == "planar-conditional" || law == "planar-unconditional") {
    const std::string kind = str(c, "kind");
    const int d = positive_int(c, "d");
    PlanarKind pk;
    if (kind == "uniform") {
      pk = PlanarKind::UniformN;
    } else if (kind == "projx") {
      pk = PlanarKind::ProjX;
    } else if (kind == "projy") {
      pk = PlanarKind::ProjY;
    } else {
      throw ConfigError("unknown planar kind '" + kind + "'");
    }
    if (law == "planar-conditional") {
      const PlanarConditional pc{pk, pk == PlanarKind::UniformN ? 2 : d, positive_int(c, "changes")};
      pc.validate();
      f = [=](double r) { return density_planar_conditional(pc, r, speed, t); };
    } else {
      if (pk == PlanarKind::UniformN) throw ConfigError("planar-unconditional needs kind projx | projy");
      const RateModel model = rate_param(c);
      f = [=](double r) { return density_planar_unconditional(pk, d, model, r, speed, t); };
    }
  } else if (law == "parity-odd" || law == "parity-even") {
    const Parity parity = law == "parity-odd" ? Parity::Odd : Parity::Even;
    const double lambda = num(c, "lambda");
    f = [=](double r) { return density_planar_parity(parity, lambda, speed, t, r); };
    boundary_mass = parity_boundary_mass(parity, lambda, t);
    continuous_mass = disc_mass_parity(parity, lambda, speed, t);
  } else {
    throw ConfigError("unknown law '" + law + "'");
  }

  std::string grid = str(c, "grid");
  if (grid == "auto") grid = radial ? "radial" : "line";
  if (grid != "line" && grid != "radial" && grid != "plane") {
    throw ConfigError("grid must be auto | line | radial | plane");
  }
  if (!radial && grid != "line") throw ConfigError("one-dimensional laws need grid = line");

  double max_value = 0.0, argmax = 0.0;
  {
    auto os = open_output(ctx, m, "density.csv");
    auto node = [&](int i, double lo, double hi) {
      return i == points - 1 ? hi : lo + (hi - lo) * static_cast<double>(i) / (points - 1);
    };
    auto track = [&](double v, double where) {
      if (v > max_value) {
        max_value = v;
        argmax = where;
      }
    };
    if (grid == "plane") {
      os << "coord1,coord2,value\n";
      for (int i = 0; i < points; ++i) {
        for (int j = 0; j < points; ++j) {
          const double x = node(i, -ct, ct), y = node(j, -ct, ct);
          const double r = std::hypot(x, y);
          const double v = r < ct ? f(r) : 0.0;
          track(v, r);
          os << format_real(x) << ',' << format_real(y) << ',' << format_real(v) << '\n';
        }
      }
    } else {
      os << "coord1,value\n";
      const double lo = grid == "line" ? -ct : 0.0;
      for (int i = 0; i < points; ++i) {
        const double x = node(i, lo, ct);
        const double v = std::fabs(x) < ct ? f(x) : 0.0;
        track(v, x);
        os << format_real(x) << ',' << format_real(v) << '\n';
      }
    }
  }
  if (integer(c, "plot_script") != 0) {
    auto os = open_output(ctx, m, "density.gp");
    os << "set datafile separator ','\n";
    if (grid == "plane") {
      os << "set view map\nsplot 'density.csv' skip 1 using 1:2:3 with pm3d notitle\n";
    } else {
      os << "plot 'density.csv' skip 1 using 1:2 with lines title '" << law << "'\n";
    }
  }
  if (atom) m.summary["atom_mass"] = *atom;
  if (boundary_mass) m.summary["boundary_mass"] = *boundary_mass;
  if (continuous_mass) m.summary["continuous_mass"] = *continuous_mass;
  m.summary["max_value"] = max_value;
  m.summary["argmax"] = argmax;
  return m;
}

RunManifest cmd_verify(const Json& c, const Context& ctx) {
  RunManifest m = start("verify", c, ctx);
  std::string suite = str(c, "suite");
  SuiteParams sp;
  sp.alpha = num(c, "alpha");
  sp.lambda = num(c, "lambda");
  sp.gamma = num(c, "gamma");
  sp.d = positive_int(c, "d");
  sp.m = positive_int(c, "m");
  sp.c = num(c, "c");
  sp.T = num(c, "t");
  sp.datum = str(c, "datum");
  sp.steps = c.at("steps").get<std::vector<double>>();
  const double min_order = num(c, "min_order");

  if (suite == "coeffs-constant-lambda") {
    const double l = sp.lambda;
    const double cc = sp.c * sp.c;
    const auto got = fourth_order_coefficients(RateModel::constant(l), sp.T, sp.c);
    // (d_t + l)^2 (d_tt + 2 l d_t - (c^2/2) Lap) + (c^4/16) M, solved for d_tttt.
    const std::vector<std::pair<std::string, std::pair<double, double>>> rows = {
        {"a3", {got.a3, -4.0 * l}},
        {"a2_const", {got.a2_const, -(4.0 * l * l + l * l)}},
        {"a2_lap", {got.a2_lap, cc / 2.0}},
        {"a1_const", {got.a1_const, -2.0 * l * l * l}},
        {"a1_lap", {got.a1_lap, l * cc}},
        {"a0_mixed", {got.a0_mixed, -cc * cc / 16.0}},
        {"a0_lap", {got.a0_lap, l * l * cc / 2.0}},
    };
    bool exact = true;
    auto os = open_output(ctx, m, "coefficients.csv");
    os << "name,value,expected\n";
    for (const auto& [name, v] : rows) {
      os << name << ',' << format_real(v.first) << ',' << format_real(v.second) << '\n';
      exact = exact && v.first == v.second;
    }
    m.summary["exact_match"] = exact;
    m.passed = exact;
    return m;
  }
  if (suite == "epd-1d-coth") suite = "telegraph-coth";
  if (suite == "transmute-gaussian" || suite == "transmute-cosine" || suite == "transmute-poly4") {
    sp.datum = suite.substr(std::string("transmute-").size());
    suite = "transmute";
  }
  const auto names = suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end()) {
    throw ConfigError("unknown suite '" + suite + "'");
  }
  const ConvergenceStudy study = run_suite(suite, sp);
  {
    auto os = open_output(ctx, m, "residuals.csv");
    os << "level,h,max_norm,l2_norm,order\n";
    for (std::size_t i = 0; i < study.levels.size(); ++i) {
      const auto& lv = study.levels[i];
      os << i << ',' << format_real(lv.h) << ',' << format_real(lv.norms.max_norm) << ','
         << format_real(lv.norms.l2_norm) << ',' << format_real(lv.order) << '\n';
    }
  }
  m.summary["observed_order"] = study.observed_order();
  m.summary["monotone"] = study.monotone();
  m.summary["rounding_level"] = study.at_rounding_level(1e-8);
  m.passed = study.passes(min_order);
  m.summary["passed"] = m.passed;
  return m;
}

RunManifest cmd_compare(const Json& c, const Context& ctx) {
  const std::uint64_t seed = require_seed(ctx, "compare");
  sampler_name(c);
  RunManifest m = start("compare", c, ctx);
  const Reference ref = make_reference(c, seed, ctx.threads);
  const SampleBatch b = draw(c, seed, ctx.threads);
  const std::size_t bins = count_param(c, "bins");

  std::vector<double> stat;
  stat.reserve(b.size());
  std::size_t on_boundary = 0;
  const bool two_sample = !ref.reference_sample.empty();
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b.boundary[i] && !two_sample) {
      ++on_boundary;
      continue;
    }
    if (b.boundary[i]) ++on_boundary;
    stat.push_back(ref.stat(b, i));
  }
  if (stat.empty()) throw std::runtime_error("compare: no continuous samples");

  double ks = 0.0, critical = 0.0;
  std::vector<double> expected(bins, 0.0);
  const auto h = stats::histogram(stat, ref.lo, ref.hi, bins);
  if (two_sample) {
    ks = stats::ks_two_sample(stat, ref.reference_sample);
    critical = stats::ks_two_sample_critical_1pct(stat.size(), ref.reference_sample.size());
    const auto hr = stats::histogram(ref.reference_sample, ref.lo, ref.hi, bins);
    for (std::size_t i = 0; i < bins; ++i) {
      expected[i] = static_cast<double>(hr.counts[i]) / static_cast<double>(hr.total);
    }
  } else {
    ks = stats::ks_statistic(stat, ref.cdf);
    critical = ref.relaxed ? 0.02 : stats::ks_critical_1pct(stat.size());
    for (std::size_t i = 0; i < bins; ++i) expected[i] = ref.cdf(h.edge(i + 1)) - ref.cdf(h.edge(i));
  }
  const double threshold = num(c, "ks_threshold") > 0.0 ? num(c, "ks_threshold") : critical;

  double l1 = 0.0;
  {
    auto os = open_output(ctx, m, "histogram.csv");
    os << "bin_lo,bin_hi,empirical,expected\n";
    for (std::size_t i = 0; i < bins; ++i) {
      const double emp = static_cast<double>(h.counts[i]) / static_cast<double>(h.total);
      l1 += std::fabs(emp - expected[i]);
      os << format_real(h.edge(i)) << ',' << format_real(h.edge(i + 1)) << ',' << format_real(emp)
         << ',' << format_real(expected[i]) << '\n';
    }
  }

  const double n = static_cast<double>(b.size());
  const double bf = static_cast<double>(on_boundary) / n;
  const double pe = ref.boundary_expected;
  const double tol = num(c, "atom_sigma") * std::sqrt(pe * (1.0 - pe) / n);
  const bool boundary_ok = pe == 0.0 ? on_boundary == 0 : std::fabs(bf - pe) <= tol;
  const bool ks_ok = ks <= threshold;

  m.summary["statistic"] = ref.statistic;
  m.summary["n"] = b.size();
  m.summary["n_compared"] = stat.size();
  m.summary["ks"] = ks;
  m.summary["ks_threshold"] = threshold;
  m.summary["ks_two_sample"] = two_sample;
  m.summary["l1_binned"] = l1;
  m.summary["boundary_fraction"] = bf;
  m.summary["boundary_expected"] = pe;
  m.summary["boundary_tolerance"] = tol;
  m.summary["ks_passed"] = ks_ok;
  m.summary["boundary_passed"] = boundary_ok;
  m.passed = ks_ok && boundary_ok;
  m.summary["passed"] = m.passed;
  return m;
}

RunManifest cmd_charfn(const Json& c, const Context& ctx) {
  const std::size_t n = static_cast<std::size_t>(std::max<long long>(0, integer(c, "n")));
  if (integer(c, "n") < 0) throw ConfigError("n must be >= 0");
  if (n > 0) require_seed(ctx, "charfn with n > 0");
  RunManifest m = start("charfn", c, ctx);
  const double g = num(c, "gamma");
  const int d = positive_int(c, "d");
  const double speed = num(c, "c");
  const double t = num(c, "t");
  const double kmax = num(c, "kmax");
  const int points = positive_int(c, "points");
  if (points < 2 || !(kmax > 0.0)) throw ConfigError("need points >= 2 and kmax > 0");

  std::vector<double> x1;
  if (n > 0) x1 = sample_epd_dd(g, d, speed, t, n, *ctx.seed, ctx.threads).coordinate(0);
  double worst = 0.0;
  {
    auto os = open_output(ctx, m, "charfn.csv");
    os << (n > 0 ? "k,value,empirical\n" : "k,value\n");
    for (int i = 0; i < points; ++i) {
      const double k = kmax * static_cast<double>(i) / (points - 1);
      const double v = charfn_flight(g, d, speed, t, k);
      os << format_real(k) << ',' << format_real(v);
      if (n > 0) {
        double s = 0.0;
        for (double x : x1) s += std::cos(k * x);
        const double emp = s / static_cast<double>(n);
        worst = std::max(worst, std::fabs(emp - v));
        os << ',' << format_real(emp);
      }
      os << '\n';
    }
  }
  if (n > 0) {
    m.summary["max_abs_diff"] = worst;
    m.passed = worst <= num(c, "tolerance");
    m.summary["passed"] = m.passed;
  }
  return m;
}

RunManifest cmd_moments(const Json& c, const Context& ctx) {
  RunManifest m = start("moments", c, ctx);
  const double a = num(c, "alpha");
  const double speed = num(c, "c");
  const double t = num(c, "t");
  const int kmax = positive_int(c, "kmax");
  if (!(a > 0.0) || !(speed > 0.0) || !(t > 0.0)) throw ConfigError("need alpha, c, t > 0");
  const double ct = speed * t;
  const double norm = specfun::beta(a, a);
  double worst = 0.0;
  {
    auto os = open_output(ctx, m, "moments.csv");
    os << "k,closed_form,quadrature,relative_difference\n";
    for (int k = 0; k <= kmax; ++k) {
      const double closed = moment_2k(a, speed, t, k);
      const double quad = quadrature::jacobi_weighted(
                              [=](double v) { return std::pow(ct * (2.0 * v - 1.0), 2 * k); }, 0.0,
                              1.0, a - 1.0, a - 1.0, 64) /
                          norm;
      const double rel = std::fabs(closed - quad) / std::fabs(closed);
      worst = std::max(worst, rel);
      os << k << ',' << format_real(closed) << ',' << format_real(quad) << ',' << format_real(rel)
         << '\n';
    }
  }
  m.summary["max_relative_difference"] = worst;
  m.passed = worst <= num(c, "tolerance");
  m.summary["passed"] = m.passed;
  return m;
}

}  // namespace flightlab::cli
