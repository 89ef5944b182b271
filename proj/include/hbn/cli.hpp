#pragma once
// Batch front end: hm, hardy, member, norms, verify, report.
// Exit codes: 0 success, 1 verification failure, 2 usage error.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "json.hpp"

#include "hbn/catalog.hpp"
#include "hbn/errors.hpp"
#include "hbn/function_norms.hpp"
#include "hbn/geometry.hpp"
#include "hbn/hardy_estimator.hpp"
#include "hbn/identities.hpp"
#include "hbn/io.hpp"
#include "hbn/membership.hpp"
#include "hbn/oracles.hpp"
#include "hbn/profile.hpp"
#include "hbn/wos.hpp"

namespace hbn::cli {

enum class Command { Hm, Hardy, Member, Norms, Verify, Report };

inline std::string to_string(Command c) {
  switch (c) {
    case Command::Hm: return "hm";
    case Command::Hardy: return "hardy";
    case Command::Member: return "member";
    case Command::Norms: return "norms";
    case Command::Verify: return "verify";
    case Command::Report: return "report";
  }
  return "unknown";
}

struct RunConfig {
  Command command = Command::Verify;
  std::string domain_path;
  std::uint64_t seed = 1;
  std::uint64_t n_samples = 10'000;
  std::optional<RadiusGrid> grid;
  std::optional<double> p;
  std::optional<double> alpha;
  std::string output_dir = "hbn_out";
  ProfileMethod method = ProfileMethod::LevelSplitting;
  /// Use the closed-form profile instead of walk-on-spheres.
  bool oracle = false;
  std::string function = "cayley";
  int tail_window = kDefaultTailWindow;
  double margin = kDefaultMargin;
  int threads = 0;

  void validate() const {
    const bool needs_domain = command == Command::Hm || command == Command::Hardy ||
                              command == Command::Member || command == Command::Report;
    if (needs_domain) {
      require(!domain_path.empty(), ErrorCode::InvalidArgument,
              to_string(command) + " needs --domain");
      require(std::filesystem::exists(domain_path), ErrorCode::InvalidArgument,
              "domain file not found: " + domain_path);
    }
    if (command == Command::Member)
      require(p.has_value(), ErrorCode::InvalidArgument, "member needs --p");
    if (grid) grid->radii();
    require(n_samples >= 1, ErrorCode::InvalidArgument, "--samples must be >= 1");
    require(tail_window >= 1, ErrorCode::InvalidArgument, "--window must be >= 1");
    require(margin >= 0.0, ErrorCode::InvalidArgument, "--margin must be >= 0");
    if (p) require(std::isfinite(*p) && *p > 0.0, ErrorCode::InvalidArgument, "--p must be positive");
    if (alpha)
      require(std::isfinite(*alpha) && *alpha > -1.0, ErrorCode::InvalidArgument,
              "--alpha must exceed -1");
  }
};

struct ParseOutcome {
  std::optional<RunConfig> config;
  int exit_code = 0;  // meaningful when config is empty (help or usage error)
};

inline RadiusGrid parse_grid(const std::string& text) {
  std::stringstream ss(text);
  std::string a, b, c;
  require(std::getline(ss, a, ',') && std::getline(ss, b, ',') && std::getline(ss, c, ',') &&
              ss.peek() == std::char_traits<char>::eof(),
          ErrorCode::InvalidArgument, "--grid expects r0,ratio,count");
  RadiusGrid g;
  try {
    std::size_t used = 0;
    g.r0 = std::stod(a);
    g.ratio = std::stod(b);
    g.count = std::stoi(c, &used);
    require(used == c.size(), ErrorCode::InvalidArgument, "--grid count must be an integer");
  } catch (const std::logic_error&) {
    fail(ErrorCode::InvalidArgument, "--grid expects r0,ratio,count");
  }
  g.radii();
  return g;
}

inline CatalogFunction parse_function(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  auto param = [&]() {
    require(colon != std::string::npos, ErrorCode::InvalidArgument, kind + " needs :<parameter>");
    try {
      return std::stod(text.substr(colon + 1));
    } catch (const std::logic_error&) {
      fail(ErrorCode::InvalidArgument, "bad parameter in " + text);
    }
  };
  if (kind == "cayley") return CatalogFunction::cayley();
  if (kind == "identity") return CatalogFunction::identity();
  if (kind == "sector_power") return CatalogFunction::sector_power(param());
  if (kind == "exp_cayley") return CatalogFunction::exp_cayley(colon == std::string::npos ? 1.0 : param());
  fail(ErrorCode::InvalidArgument, "unknown function " + text);
}

inline ParseOutcome parse_args(int argc, const char* const* argv, std::ostream& out,
                               std::ostream& err) {
  CLI::App app{"Hardy and Bergman numbers of planar domains"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string grid_text, method_text = "splitting";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--domain", cfg.domain_path, "domain JSON file");
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--samples", cfg.n_samples, "walks per radius");
    sub->add_option("--grid", grid_text, "radius grid r0,ratio,count");
    sub->add_option("--p", cfg.p, "exponent p");
    sub->add_option("--alpha", cfg.alpha, "Bergman weight alpha");
    sub->add_option("--out", cfg.output_dir, "output directory");
    sub->add_option("--method", method_text, "splitting | shared | independent")
        ->check(CLI::IsMember({"splitting", "shared", "independent"}));
    sub->add_flag("--oracle", cfg.oracle, "closed-form profile instead of walk-on-spheres");
    sub->add_option("--function", cfg.function,
                    "cayley | sector_power:<beta> | exp_cayley:<R> | identity");
    sub->add_option("--window", cfg.tail_window, "tail window");
    sub->add_option("--margin", cfg.margin, "membership margin");
    sub->add_option("--threads", cfg.threads, "OpenMP threads (0 = runtime default)");
  };

  const std::vector<std::pair<Command, const char*>> commands = {
      {Command::Hm, "decay profile of the tail harmonic measure"},
      {Command::Hardy, "Hardy number estimate"},
      {Command::Member, "H^p or A^p_alpha membership verdict"},
      {Command::Norms, "norm profiles and empirical h(f), b(f) of a catalog map"},
      {Command::Verify, "identity suite and Monte Carlo vs closed-form checks"},
      {Command::Report, "gnuplot script of the decay profile"},
  };
  for (const auto& [cmd, help] : commands) {
    CLI::App* sub = app.add_subcommand(to_string(cmd), help);
    add_common(sub);
    sub->callback([&cfg, cmd = cmd] { cfg.command = cmd; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return {std::nullopt, 0};
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return {std::nullopt, 2};
  }

  try {
    if (!grid_text.empty()) cfg.grid = parse_grid(grid_text);
    cfg.method = method_text == "shared"        ? ProfileMethod::SharedWalks
                 : method_text == "independent" ? ProfileMethod::Independent
                                                : ProfileMethod::LevelSplitting;
    cfg.validate();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return {std::nullopt, 2};
  }
  return {cfg, 0};
}

namespace detail {

inline std::string out_path(const RunConfig& cfg, const std::string& name) {
  return (std::filesystem::path(cfg.output_dir) / name).string();
}

inline DecayProfile build_profile(const RunConfig& cfg, const DomainSpec& d) {
  const auto radii = cfg.grid.value_or(default_grid(d)).radii();
  if (cfg.oracle) return oracle_profile(d, radii);
  WosConfig wc;
  wc.seed = cfg.seed;
  wc.n_samples = cfg.n_samples;
  return make_profile(estimate_profile(d, radii, wc, cfg.method));
}

inline std::string profile_csv(const DecayProfile& p) {
  std::ostringstream ss;
  io::write_profile_csv(ss, p);
  return ss.str();
}

inline io::json run_info(const RunConfig& cfg, const DomainSpec& d) {
  return {{"command", to_string(cfg.command)},
          {"domain", io::domain_to_json(d)},
          {"seed", cfg.seed},
          {"samples", cfg.n_samples},
          {"method", cfg.oracle ? std::string("oracle") : hbn::to_string(cfg.method)}};
}

inline MembershipQuery query_of(const RunConfig& cfg) { return {*cfg.p, cfg.alpha}; }

inline int cmd_hm(const RunConfig& cfg, std::ostream& out) {
  const DomainSpec d = io::load_domain(cfg.domain_path);
  const DecayProfile p = build_profile(cfg, d);
  io::write_text(out_path(cfg, "profile.csv"), profile_csv(p));
  out << "wrote " << out_path(cfg, "profile.csv") << "\n";
  return 0;
}

inline int cmd_hardy(const RunConfig& cfg, std::ostream& out) {
  const DomainSpec d = io::load_domain(cfg.domain_path);
  const DecayProfile p = build_profile(cfg, d);
  const HardyNumberEstimate est = estimate_hardy_number(p, cfg.tail_window, DomainTraits::of(d));
  io::json j = io::hardy_json(est);
  j["run"] = run_info(cfg, d);
  io::write_text(out_path(cfg, "profile.csv"), profile_csv(p));
  io::write_text(out_path(cfg, "hardy.json"), io::dump(j));
  out << "h(D) = " << io::format_double(est.value) << "\n";
  return 0;
}

inline int cmd_member(const RunConfig& cfg, std::ostream& out) {
  const DomainSpec d = io::load_domain(cfg.domain_path);
  const DecayProfile p = build_profile(cfg, d);
  const MembershipQuery q = query_of(cfg);
  io::json j;
  const auto zero = std::find_if(p.entries.begin(), p.entries.end(),
                                 [](const ProfileEntry& e) { return e.omega <= 0.0; });
  if (zero != p.entries.end()) {
    // omega vanishes: no decay rate to compare against.
    j = {{"p", q.p},
         {"alpha", q.alpha ? io::number(*q.alpha) : io::json(nullptr)},
         {"verdict", to_string(Verdict::Inconclusive)},
         {"margin", cfg.margin},
         {"rationale", "zero_measure_tail"},
         {"critical_ratio", io::number(std::numeric_limits<double>::infinity())},
         {"query_ratio", q.ratio()}};
  } else {
    const DecayFit fit = fit_decay(p, cfg.tail_window);
    const MembershipVerdict v =
        q.alpha ? classify_bergman(fit, q, cfg.margin) : classify_hardy(fit, q, cfg.margin);
    j = io::verdict_json(q, v);
    j["fit"] = io::fit_json(fit);
    const CriterionIntegral ci = criterion_integral(p, q, cfg.tail_window);
    j["criterion_integral"] = {{"value", io::number(ci.value())},
                               {"truncated", io::number(ci.truncated)},
                               {"tail", io::number(ci.tail)},
                               {"divergent", ci.divergent}};
  }
  j["run"] = run_info(cfg, d);
  io::write_text(out_path(cfg, "verdict.json"), io::dump(j));
  out << "verdict: " << j["verdict"].get<std::string>() << "\n";
  return 0;
}

inline int cmd_norms(const RunConfig& cfg, std::ostream& out) {
  const CatalogFunction f = parse_function(cfg.function);
  if (cfg.p) {
    auto write = [&](const std::string& name, const NormProfile& prof) {
      std::ostringstream ss;
      io::write_norm_profile_csv(ss, prof);
      io::write_text(out_path(cfg, name), ss.str());
    };
    write("hardy_profile.csv", hardy_profile(f, *cfg.p));
    write("bergman_profile.csv", bergman_profile(f, *cfg.p, cfg.alpha.value_or(0.0)));
    if (f.zero_free() || *cfg.p >= 2.0)
      write("yamashita_profile.csv", yamashita_profile(f, *cfg.p, norms::default_deltas(), cfg.alpha));
  }
  const EmpiricalHB hb = empirical_hb(f);
  io::write_text(out_path(cfg, "empirical_hb.json"), io::dump(io::empirical_hb_json(f.name(), hb)));
  out << "h_hat = " << io::format_double(hb.h_hat()) << ", b_hat = " << io::format_double(hb.b_hat())
      << "\n";
  return 0;
}

struct McCheck {
  std::string domain;
  double r;
  double exact;
  double estimate;
  double std_error;
  bool pass;
};

// Monte Carlo against the closed form at one radius per reference domain,
// accepted within 4 standard errors.
inline std::vector<McCheck> mc_checks(const RunConfig& cfg) {
  std::vector<McCheck> out;
  WosConfig wc;
  wc.seed = cfg.seed;
  wc.n_samples = cfg.n_samples;
  for (const auto& [d, r] : {std::pair{DomainSpec::half_plane(), 10.0},
                             std::pair{DomainSpec::sector(std::numbers::pi / 2), 4.0},
                             std::pair{DomainSpec::slit_plane(), 10.0}}) {
    const HmEstimate e = estimate_hm(d, TailQuery(r), wc);
    const double exact = exact_hm(d, r);
    out.push_back({shape_name(d), r, exact, e.value, e.std_error,
                   std::abs(e.value - exact) <= 4.0 * e.std_error + 1e-12});
  }
  return out;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const auto reports = run_identity_suite();
  const auto checks = mc_checks(cfg);
  bool pass = all_pass(reports);
  io::json mc = io::json::array();
  for (const auto& c : checks) {
    pass = pass && c.pass;
    mc.push_back({{"domain", c.domain},
                  {"r", c.r},
                  {"exact", c.exact},
                  {"estimate", c.estimate},
                  {"stderr", c.std_error},
                  {"pass", c.pass}});
  }
  const io::json j = {{"identities", io::identity_array(reports)},
                      {"monte_carlo", mc},
                      {"seed", cfg.seed},
                      {"samples", cfg.n_samples},
                      {"pass", pass}};
  io::write_text(out_path(cfg, "verify.json"), io::dump(j));
  int failed = 0;
  for (const auto& r : reports) failed += r.pass ? 0 : 1;
  for (const auto& c : checks) failed += c.pass ? 0 : 1;
  out << (pass ? "PASS" : "FAIL") << ": " << reports.size() + checks.size() - failed << "/"
      << reports.size() + checks.size() << " checks\n";
  return pass ? 0 : 1;
}

inline int cmd_report(const RunConfig& cfg, std::ostream& out) {
  const DomainSpec d = io::load_domain(cfg.domain_path);
  const DecayProfile p = build_profile(cfg, d);
  DecayProfile positive;
  for (const auto& e : p.entries)
    if (e.omega > 0.0) positive.entries.push_back(e);
  require(positive.size() >= 2, ErrorCode::ZeroMeasure,
          "fewer than two radii with positive omega, nothing to plot");
  const DecayFit fit = fit_decay(positive, cfg.tail_window);
  std::ostringstream ss;
  io::write_gnuplot_report(ss, shape_name(d), positive, fit);
  io::write_text(out_path(cfg, "report.gp"), ss.str());
  io::write_text(out_path(cfg, "profile.csv"), profile_csv(p));
  out << "wrote " << out_path(cfg, "report.gp") << "\n";
  return 0;
}

}  // namespace detail

inline int run(const RunConfig& cfg, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  try {
    cfg.validate();
#ifdef _OPENMP
    if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
#endif
    std::filesystem::create_directories(cfg.output_dir);
    switch (cfg.command) {
      case Command::Hm: return detail::cmd_hm(cfg, out);
      case Command::Hardy: return detail::cmd_hardy(cfg, out);
      case Command::Member: return detail::cmd_member(cfg, out);
      case Command::Norms: return detail::cmd_norms(cfg, out);
      case Command::Verify: return detail::cmd_verify(cfg, out);
      case Command::Report: return detail::cmd_report(cfg, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

inline int main_entry(int argc, const char* const* argv, std::ostream& out = std::cout,
                      std::ostream& err = std::cerr) {
  const ParseOutcome parsed = parse_args(argc, argv, out, err);
  if (!parsed.config) return parsed.exit_code;
  return run(*parsed.config, out, err);
}

}  // namespace hbn::cli
