#pragma once
// Domain JSON, profile CSV and result JSON. Floating-point CSV fields use
// 17 significant digits; non-finite values are written as "inf", "-inf" or
// "nan" in both formats.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "hbn/errors.hpp"
#include "hbn/function_norms.hpp"
#include "hbn/geometry.hpp"
#include "hbn/hardy_estimator.hpp"
#include "hbn/identities.hpp"
#include "hbn/membership.hpp"
#include "hbn/profile.hpp"

namespace hbn::io {

using nlohmann::json;

inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline json number(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

inline double read_number(const json& j, const char* what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  fail(ErrorCode::Parse, std::string(what) + " must be a number");
}

inline PlanePoint read_point(const json& j, const char* what) {
  require(j.is_array() && j.size() == 2, ErrorCode::Parse,
          std::string(what) + " must be a [re, im] array");
  return {read_number(j[0], what), read_number(j[1], what)};
}

inline json point_json(PlanePoint z) { return json::array({number(z.real()), number(z.imag())}); }

// ---------------------------------------------------------------- domains

inline DomainSpec domain_from_json(const json& j) {
  require(j.is_object(), ErrorCode::Parse, "domain must be a JSON object");
  require(j.contains("shape") && j["shape"].is_string(), ErrorCode::Parse,
          "domain needs a \"shape\" string");
  const std::string shape = j["shape"].get<std::string>();
  const bool has_base = j.contains("basepoint");
  auto base_or = [&](PlanePoint fallback) {
    return has_base ? read_point(j["basepoint"], "basepoint") : fallback;
  };
  auto field = [&](const char* key) {
    require(j.contains(key), ErrorCode::Parse, shape + " needs \"" + key + "\"");
    return read_number(j[key], key);
  };

  if (shape == "half_plane") return DomainSpec::half_plane(base_or({1.0, 0.0}));
  if (shape == "sector") return DomainSpec::sector(field("opening"), base_or({1.0, 0.0}));
  if (shape == "slit_plane") return DomainSpec::slit_plane(base_or({1.0, 0.0}));
  if (shape == "disk") return DomainSpec::disk(field("radius"), base_or({0.0, 0.0}));
  if (shape == "disk_exterior") {
    const double radius = field("radius");
    return DomainSpec::disk_exterior(radius, base_or({2.0 * radius, 0.0}));
  }
  if (shape == "affine") {
    require(j.contains("base"), ErrorCode::Parse, "affine domain needs \"base\"");
    const DomainSpec base = domain_from_json(j["base"]);
    const PlanePoint scale = j.contains("scale") ? read_point(j["scale"], "scale") : PlanePoint{1.0, 0.0};
    const PlanePoint shift = j.contains("shift") ? read_point(j["shift"], "shift") : PlanePoint{};
    const DomainSpec image = affine_image(base, scale, shift);
    return has_base ? image.with_basepoint(read_point(j["basepoint"], "basepoint")) : image;
  }
  fail(ErrorCode::Parse, "unknown shape \"" + shape + "\"");
}

inline json domain_to_json(const DomainSpec& d) {
  json j;
  std::visit(detail::overloaded{
                 [&](const HalfPlane&) { j["shape"] = "half_plane"; },
                 [&](const Sector& s) {
                   j["shape"] = "sector";
                   j["opening"] = number(s.opening);
                 },
                 [&](const DiskExterior& e) {
                   j["shape"] = "disk_exterior";
                   j["radius"] = number(e.radius);
                 },
                 [&](const Disk& k) {
                   j["shape"] = "disk";
                   j["radius"] = number(k.radius);
                 },
                 [&](const GenericSdf& g) {
                   require(static_cast<bool>(g.source), ErrorCode::UnsupportedShape,
                           "only affine images of built-in shapes serialize");
                   j["shape"] = "affine";
                   j["base"] = domain_to_json(g.source->base);
                   j["scale"] = point_json(g.source->scale);
                   j["shift"] = point_json(g.source->shift);
                 },
             },
             d.shape());
  j["basepoint"] = point_json(d.basepoint());
  j["regular"] = d.regular();
  return j;
}

inline DomainSpec parse_domain(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::Parse, e.what());
  }
  return domain_from_json(j);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorCode::InvalidArgument, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline DomainSpec load_domain(const std::string& path) { return parse_domain(read_file(path)); }

// ---------------------------------------------------------------- profiles

/// Columns r, omega, stderr, local_slope; the slope in row k belongs to the
/// segment [r_{k-1}, r_k] and is empty in the first row or next to omega = 0.
inline void write_profile_csv(std::ostream& out, const DecayProfile& p) {
  out << "r,omega,stderr,local_slope\n";
  for (std::size_t k = 0; k < p.size(); ++k) {
    const auto& e = p.entries[k];
    out << format_double(e.r) << ',' << format_double(e.omega) << ',' << format_double(e.std_error)
        << ',';
    if (k > 0 && e.omega > 0.0 && p.entries[k - 1].omega > 0.0) {
      const auto& prev = p.entries[k - 1];
      out << format_double((std::log(prev.omega) - std::log(e.omega)) /
                           (std::log(e.r) - std::log(prev.r)));
    }
    out << '\n';
  }
}

inline DecayProfile read_profile_csv(std::istream& in) {
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), ErrorCode::Parse, "empty profile CSV");
  require(line.rfind("r,omega,stderr", 0) == 0, ErrorCode::Parse, "unexpected profile CSV header");
  DecayProfile p;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    double vals[3];
    for (double& v : vals) {
      require(static_cast<bool>(std::getline(ss, cell, ',')), ErrorCode::Parse, "short CSV row");
      try {
        v = std::stod(cell);
      } catch (const std::exception&) {
        fail(ErrorCode::Parse, "bad CSV number \"" + cell + "\"");
      }
    }
    p.entries.push_back({vals[0], vals[1], vals[2]});
  }
  return p;
}

inline json hardy_json(const HardyNumberEstimate& est) {
  json j;
  j["value"] = number(est.value);
  j["ci"] = number(est.ci_halfwidth);
  j["warnings"] = json::array();
  for (auto w : est.warnings) j["warnings"].push_back(to_string(w));
  j["tail_window"] = est.tail_window;
  j["local_slopes"] = json::array();
  for (double s : est.local_slopes) j["local_slopes"].push_back(number(s));
  return j;
}

inline json verdict_json(const MembershipQuery& q, const MembershipVerdict& v) {
  json j;
  j["p"] = number(q.p);
  j["alpha"] = q.alpha ? number(*q.alpha) : json(nullptr);
  j["verdict"] = to_string(v.verdict);
  j["margin"] = number(v.margin);
  j["rationale"] = to_string(v.rationale);
  j["critical_ratio"] = number(v.critical_ratio);
  j["query_ratio"] = number(v.query_ratio);
  if (v.integral_converges) j["integral_converges"] = *v.integral_converges;
  return j;
}

inline json fit_json(const DecayFit& fit) {
  return {{"exponent", number(fit.exponent)},
          {"log_intercept", number(fit.log_intercept)},
          {"residual", number(fit.residual)},
          {"fit_range", json::array({number(fit.fit_range.first), number(fit.fit_range.second)})}};
}

/// Columns r|delta, integral, classification (growth of the profile up to
/// that row), log_integral.
inline void write_norm_profile_csv(std::ostream& out, const NormProfile& p) {
  out << (p.kind == TruncationKind::Radius ? "r" : "delta") << ",integral,classification,log_integral\n";
  for (std::size_t k = 0; k < p.parameters.size(); ++k) {
    out << format_double(p.parameters[k]) << ',' << format_double(std::exp(p.log_values[k])) << ','
        << to_string(p.growth_so_far[k]) << ',' << format_double(p.log_values[k]) << '\n';
  }
}

inline json bracket_json(const ExponentBracket& b) {
  return {{"estimate", number(b.estimate)},
          {"lo", number(b.lo)},
          {"hi", number(b.hi)},
          {"inconclusive_probes", b.inconclusive_probes}};
}

inline json empirical_hb_json(const std::string& function, const EmpiricalHB& hb) {
  return {{"function", function},
          {"h_hat", number(hb.h_hat())},
          {"b_hat", number(hb.b_hat())},
          {"hardy", bracket_json(hb.hardy)},
          {"bergman", bracket_json(hb.bergman)}};
}

inline json identity_json(const IdentityReport& r) {
  return {{"name", r.name},
          {"parameters", r.parameters},
          {"kind", r.kind == CheckKind::Equality ? "equality" : "inequality"},
          {"lhs", number(r.lhs)},
          {"rhs", number(r.rhs)},
          {"relative_error", number(r.relative_error)},
          {"tolerance", number(r.tolerance)},
          {"pass", r.pass}};
}

inline json identity_array(const std::vector<IdentityReport>& reports) {
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(identity_json(r));
  return arr;
}

/// Self-contained gnuplot script: the profile as inline data, log(1/omega)
/// against log r, with the fitted line.
inline void write_gnuplot_report(std::ostream& out, const std::string& title, const DecayProfile& p,
                                 const DecayFit& fit) {
  out << "# log(1/omega) against log r\n";
  out << "$profile << EOD\n";
  for (const auto& e : p.entries)
    if (e.omega > 0.0)
      out << format_double(std::log(e.r)) << ' ' << format_double(-std::log(e.omega)) << '\n';
  out << "EOD\n";
  out << "q = " << format_double(fit.exponent) << '\n';
  out << "b = " << format_double(fit.log_intercept) << '\n';
  out << "set title \"" << title << "\"\n";
  out << "set xlabel \"log r\"\n";
  out << "set ylabel \"log 1/omega\"\n";
  out << "set key top left\n";
  out << "plot $profile using 1:2 with points pt 7 title \"profile\", \\\n";
  out << "     b + q*x with lines title sprintf(\"fit, slope %.4f\", q)\n";
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), ErrorCode::InvalidArgument, "cannot write " + path);
  out << text;
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace hbn::io
