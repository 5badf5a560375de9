#ifndef NEHARI_ACCEPTANCE_HPP
#define NEHARI_ACCEPTANCE_HPP

// The acceptance suite: thirteen property checks, each with a tolerance and
// a wall-time limit.  Every criterion draws from its own generator seeded by
// (seed, id), so criteria can be run alone with unchanged inputs.  The
// values section of a result depends only on the seed; timings live in the
// diagnostics.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "bmo.hpp"
#include "carleson.hpp"
#include "hankel.hpp"
#include "io.hpp"
#include "model.hpp"
#include "pick.hpp"
#include "random.hpp"

namespace nehari {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;  ///< the property holds and the run met the time limit
  bool holds = false;   ///< the property alone, a function of the seed
  double seconds = 0.0;
  double limit = 0.0;  ///< seconds
  std::string summary;
  json values;
  json diagnostics;
};

struct SuiteOptions {
  std::uint64_t seed = 20240917;
  bool quick = false;     ///< smaller samples; same tolerances and limits
  std::set<int> only;     ///< empty runs every criterion
};

namespace detail {

inline std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

inline TrigPoly1 random_analytic1(Rng& rng, int N, double scale) {
  return random_poly<1>(rng, N, Sector::Px) * scale;
}

inline TrigPoly2 random_analytic2(Rng& rng, int N, double sup) {
  const TrigPoly2 G = random_poly<2>(rng, N, Sector::Pfull);
  return G * (sup / sup_norm(G));
}

/// max over true zeros of the distance to the nearest found zero.
inline double zero_recovery(std::span<const cplx> truth, const std::vector<cplx>& found) {
  double worst = 0.0;
  for (cplx a : truth) {
    double d = std::numeric_limits<double>::infinity();
    for (cplx b : found) d = std::min(d, std::abs(a - b));
    worst = std::max(worst, d);
  }
  return worst;
}

inline json to_json(const ZeroPair& z) { return json{{"x", nehari::to_json(z.x)}, {"y", nehari::to_json(z.y)}}; }

// ---------------------------------------------------------------------------

inline CriterionResult reproducing_kernel(Rng& rng, bool quick) {
  CriterionResult r{1, "reproducing kernel identity <f, phi_z> = (1 - |z|^2)^(1/2) f(z)", false, false, 0, 1.0, {}, {}, {}};
  const int trials = quick ? 20 : 100, N = 32;
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const TrigPoly1 f = random_poly<1>(rng, N, Sector::Px);
    const cplx z = random_in_disk(rng, 0.95);
    cplx fz{}, p = 1.0;
    for (int n = 0; n <= N; ++n, p *= z) fz += f(n) * p;
    const cplx lhs = inner(f, kernel(z, N).coeffs);
    const cplx rhs = std::sqrt(1.0 - std::norm(z)) * fz;
    worst = std::max(worst, std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-300));
  }
  r.passed = worst < 1e-9;
  r.values = {{"trials", trials}, {"N", N}, {"max_rel_error", worst}};
  r.summary = "max rel error " + num(worst) + " (tol 1e-9)";
  return r;
}

inline CriterionResult model_closed_forms(Rng& rng, bool quick) {
  CriterionResult r{2, "closed-form projection onto K_{z zeta} and its norm identity", false, false, 0, 10.0, {}, {}, {}};
  const int trials = quick ? 20 : 100, N = 16;
  double proj = 0.0, norm = 0.0;
  for (int t = 0; t < trials; ++t) {
    const TrigPoly2 f = random_poly<2>(rng, N, Sector::Pfull);
    const cplx z = random_in_disk(rng, 0.9), zeta = random_in_disk(rng, 0.9);
    const TrigPoly2 a = project_Kzz(f, z, zeta, N);
    const TrigPoly2 b = project_Kzz_tensor(f, z, zeta, N);
    proj = std::max(proj, norm2(a - b) / std::max(norm2(b), 1e-300));
    // Coefficients of the projection decay like max(|z|, |zeta|)^k beyond the degree of f.
    const double rmax = std::max(std::abs(z), std::abs(zeta));
    const int M = N + static_cast<int>(std::ceil(std::log(1e-13) / std::log(std::max(rmax, 0.1))));
    const double deep = norm2(project_Kzz(f, z, zeta, M));
    norm = std::max(norm, rel_err(norm_Kzz_closed(f, z, zeta), deep * deep));
  }
  r.passed = proj < 1e-8 && norm < 1e-8;
  r.values = {{"trials", trials}, {"N", N}, {"projection_rel_error", proj}, {"norm_identity_rel_error", norm}};
  r.summary = "projection " + num(proj) + ", norm identity " + num(norm) + " (tol 1e-8)";
  return r;
}

inline CriterionResult theorem_a_sandwich(Rng& rng, bool quick) {
  CriterionResult r{3, "||psi||_BMOr <= ||Gamma|| <= sqrt 2 ||psi||_BMOr", false, false, 0, 300.0, {}, {}, {}};
  const int trials = quick ? 8 : 50, N = 12, deg = 3, K = 24, G = 100;
  const double tol = 0.02;
  int violations = 0;
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  bool converged = true;
  for (int t = 0; t < trials; ++t) {
    const TrigPoly2 psi = random_poly<2>(rng, deg, Sector::IminusPfull);
    const DecompositionA d = theoremA_decompose(build(psi, N), K, G, tol);
    const double b = std::max(d.norm1, d.norm2);
    converged = converged && d.converged;
    lo = std::min(lo, d.gamma_norm / b);
    hi = std::max(hi, d.gamma_norm / b);
    if (!(b <= d.gamma_norm * (1.0 + tol)) || !(d.gamma_norm <= std::sqrt(2.0) * b * (1.0 + tol))) ++violations;
  }
  r.passed = violations == 0;
  r.values = {{"trials", trials}, {"N", N},           {"symbol_degree", deg},
              {"K", K},           {"grid", G},        {"violations", violations},
              {"min_ratio", lo},  {"max_ratio", hi},  {"converged", converged}};
  r.summary = std::to_string(violations) + " violations; ||Gamma|| / ||psi||_BMOr in [" + num(lo) + ", " +
              num(hi) + "], allowed [" + num(1.0 / (1.0 + tol)) + ", " +
              num(std::sqrt(2.0) * (1.0 + tol)) + "]";
  return r;
}

inline CriterionResult nehari_1d(Rng& rng, bool quick) {
  CriterionResult r{4, "||Gamma_phi|| = dist(phi, H^inf) in one variable", false, false, 0, 120.0, {}, {}, {}};
  const int trials = quick ? 10 : 50, N = 24, K = 3 * N, G = 4 * K + 4;
  double worst = 0.0;
  bool converged = true;
  for (int t = 0; t < trials; ++t) {
    const TrigPoly1 phi = random_poly<1>(rng, N);
    const double s = op_norm(build(phi, N));
    const NehariResult n = nehari_distance_1d(phi, K, G);
    converged = converged && n.converged;
    worst = std::max(worst, rel_err(n.value, s));
  }
  r.passed = worst < 0.02;
  r.values = {{"trials", trials}, {"N", N}, {"K", K}, {"grid", G}, {"max_rel_gap", worst}, {"converged", converged}};
  r.summary = "max |minimax - SVD| / SVD = " + num(worst) + " (tol 0.02)";
  return r;
}

inline CriterionResult pick_bridge(Rng& rng, bool quick) {
  CriterionResult r{5, "1D Pick matrix PSD <=> ||Gamma_{conj(b) G}|| <= 1", false, false, 0, 120.0, {}, {}, {}};
  const int trials = quick ? 20 : 100;
  const double eig_tol = 1e-6, norm_tol = 0.01;
  int clear = 0, disagreements = 0, psd = 0;
  double consistency = 0.0;
  for (int t = 0; t < trials; ++t) {
    const auto z = random_nodes(rng, 1 + t % 4, 0.7);
    const TrigPoly1 G = random_analytic1(rng, 3, uniform(rng, 0.3, 2.0));
    const PickBridge1D b = pick_bridge_1d(z, G);
    consistency = std::max(consistency, rel_err(b.gamma_norm, std::max(b.model_norm, 1e-300)));
    if (std::abs(b.min_eig) <= eig_tol || std::abs(b.gamma_norm - 1.0) <= norm_tol) continue;
    ++clear;
    psd += b.psd ? 1 : 0;
    if (b.psd != b.bounded) ++disagreements;
  }
  r.passed = disagreements == 0 && clear > 0;
  r.values = {{"trials", trials},  {"clear", clear},           {"clear_psd", psd},
              {"disagreements", disagreements}, {"hankel_vs_model_rel", consistency}};
  r.summary = std::to_string(disagreements) + " disagreements among " + std::to_string(clear) +
              " instances outside the bands (eig 1e-6, norm 1%); " + std::to_string(psd) + " PSD";
  return r;
}

inline CriterionResult pick_2d(Rng& rng, bool quick) {
  CriterionResult r{6, "Pick on D^2: (iv) => ||Gamma|| <= sqrt 2; ||Gamma|| <= 1 => interpolants", false, false, 0, 600.0,
                    {}, {}, {}};
  const int trials = quick ? 6 : 30;
  int iv_cases = 0, ii_cases = 0, iv_viol = 0, ii_viol = 0, iff_viol = 0;
  double worst_interp = 0.0, worst_sup = 0.0, worst_gamma_iv = 0.0;
  for (int t = 0; t < trials; ++t) {
    PickSystem s;
    const int n = 1 + t % 3;
    s.z = random_nodes(rng, n, 0.6);
    s.w = random_nodes(rng, n, 0.6);
    s.G = random_analytic2(rng, 2, uniform(rng, 0.5, 1.2));
    for (int k = 0; k < n; ++k)
      s.lambda.push_back(eval_bidisk(*s.G, s.z[static_cast<std::size_t>(k)], s.w[static_cast<std::size_t>(k)]));
    const PickCertificate c = certify_via_hankel(s, {}, true);
    if (c.holds_iv) {
      ++iv_cases;
      worst_gamma_iv = std::max(worst_gamma_iv, c.gamma_norm);
      if (!c.iv_implies_ii) ++iv_viol;
    }
    if (c.holds_ii) {
      ++ii_cases;
      worst_interp = std::max({worst_interp, c.F1->interp_error, c.F2->interp_error});
      worst_sup = std::max({worst_sup, c.F1->sup, c.F2->sup});
      if (!c.ii_implies_iv) ++ii_viol;
    }
    if (!c.i_iff_iv) ++iff_viol;
  }
  r.passed = iv_viol == 0 && ii_viol == 0 && iv_cases > 0 && ii_cases > 0;
  r.values = {{"trials", trials},
              {"iv_cases", iv_cases},
              {"ii_cases", ii_cases},
              {"iv_implies_ii_violations", iv_viol},
              {"ii_implies_iv_violations", ii_viol},
              {"i_iff_iv_disagreements", iff_viol},
              {"max_gamma_under_iv", worst_gamma_iv},
              {"max_interp_error", worst_interp},
              {"max_interpolant_sup", worst_sup}};
  r.summary = std::to_string(iv_viol + ii_viol) + " violations; (iv) in " + std::to_string(iv_cases) +
              " systems with max ||Gamma|| " + num(worst_gamma_iv) + " (<= " +
              num(std::sqrt(2.0) * 1.02) + "), (ii) in " + std::to_string(ii_cases) +
              " with interp error " + num(worst_interp) + " and sup " + num(worst_sup);
  return r;
}

inline CriterionResult theorem_b_trend(Rng& rng, bool quick) {
  CriterionResult r{7, "s_n(Gamma) >= ||Gamma|| / sqrt 2 as a truncation trend", false, false, 0, 600.0, {}, {}, {}};
  const int trials = quick ? 3 : 10, deg = 2;
  const std::vector<int> Ns{8, 16, 24};
  // The index range is fixed by the coarsest box, dim = (N0 + 1)^2.
  const int nmax = (Ns.front() + 1) * (Ns.front() + 1) / 8;
  const double target = 1.0 / std::sqrt(2.0);
  int not_decreasing = 0, above = 0;
  json table = json::array(), literal = json::array();
  for (int t = 0; t < trials; ++t) {
    const TrigPoly2 psi = random_poly<2>(rng, deg, Sector::IminusPfull);
    std::vector<double> def;
    json lit = json::array();
    for (int N : Ns) {
      const int dim = (N + 1) * (N + 1);
      const auto s = singular_numbers(build(psi, N), std::max(nmax, dim / 8) + 1);
      double d = 0.0, dl = 0.0;
      for (int k = 0; k <= nmax; ++k) d = std::max(d, target - s[static_cast<std::size_t>(k)] / s[0]);
      for (int k = 0; k <= dim / 8; ++k) dl = std::max(dl, target - s[static_cast<std::size_t>(k)] / s[0]);
      def.push_back(std::max(0.0, d));
      lit.push_back(std::max(0.0, dl));
    }
    for (std::size_t i = 1; i < def.size(); ++i)
      if (!(def[i] < def[i - 1] || def[i] == 0.0)) ++not_decreasing;
    if (!(def.back() < 0.1)) ++above;
    table.push_back(def);
    literal.push_back(lit);
  }
  r.passed = not_decreasing == 0 && above == 0;
  r.values = {{"trials", trials},     {"symbol_degree", deg}, {"N", Ns},
              {"n_max", nmax},        {"deficits", table},    {"not_decreasing", not_decreasing},
              {"final_above_0.1", above}};
  r.diagnostics["deficits_with_n_up_to_dim_over_8_at_each_N"] = literal;
  r.summary = std::to_string(not_decreasing) + " non-decreasing steps, " + std::to_string(above) +
              " symbols with deficit >= 0.1 at N = 24 (n <= " + std::to_string(nmax) + ")";
  return r;
}

inline CriterionResult finite_type(Rng& rng, bool quick) {
  CriterionResult r{8, "sigma_{mn} = 0 for finite-type symbols of type (m, n)", false, false, 0, 600.0, {}, {}, {}};
  const std::vector<std::pair<int, int>> types{{1, 1}, {2, 1}};
  const int per_type = quick ? 1 : 2, N = 8;
  SearchConfig cfg;
  cfg.restarts = 8;
  cfg.seed = rng();
  int failures = 0;
  json cases = json::array();
  for (auto [m, n] : types)
    for (int k = 0; k < per_type; ++k) {
      const BlaschkeProduct b1(random_nodes(rng, m, 0.5, 0.2)), b2(random_nodes(rng, n, 0.5, 0.2));
      const SeparableSymbol sep = finite_type_separable(b1, b2, TrigPoly1::constant(1.0), TrigPoly1::constant(1.0));
      const SigmaSearchReport rep = sigma_numbers(sep, m, n, N, cfg);
      const double rx = zero_recovery(b1.zeros(), rep.zeros.x), ry = zero_recovery(b2.zeros(), rep.zeros.y);
      const bool ok = rep.value < 1e-3 * rep.s0 && std::max(rx, ry) < 1e-2;
      failures += ok ? 0 : 1;
      cases.push_back({{"m", m}, {"n", n}, {"sigma_over_s0", rep.value / rep.s0}, {"zero_error", std::max(rx, ry)},
                       {"zeros", to_json(rep.zeros)}});
    }
  r.passed = failures == 0;
  r.values = {{"N", N}, {"cases", cases}, {"failures", failures}};
  r.summary = std::to_string(failures) + " of " + std::to_string(cases.size()) +
              " symbols fail sigma < 1e-3 s0 or zero recovery to 1e-2";
  return r;
}

inline CriterionResult delta_sandwich(Rng& rng, bool quick) {
  CriterionResult r{9, "sigma_{mn} / sqrt 2 <= delta(phi, BMOA + R_{mn}) <= sigma_{mn}", false, false, 0, 1200.0, {}, {}, {}};
  const std::vector<std::pair<int, int>> mn{{1, 0}, {0, 1}, {1, 1}, {2, 1}, {1, 2}, {2, 2}, {1, 1}, {2, 0}, {0, 2}, {2, 2}};
  const int trials = quick ? 3 : 10, N = 10;
  DeltaConfig cfg;
  cfg.search.seed = rng();
  int violations = 0;
  json cases = json::array();
  for (int t = 0; t < trials; ++t) {
    const auto [m, n] = mn[static_cast<std::size_t>(t)];
    const SeparableSymbol phi = separate_lowrank(random_poly<2>(rng, 2, Sector::IminusPfull));
    const DeltaReport d = aak_delta(phi, m, n, N, cfg);
    const bool ok = d.sandwich_lower && d.sandwich_upper;
    violations += ok ? 0 : 1;
    cases.push_back({{"m", m}, {"n", n}, {"delta", d.value}, {"sigma", d.sigma}, {"converged", d.converged}});
  }
  r.passed = violations == 0;
  r.values = {{"N", N}, {"tol", cfg.tol}, {"cases", cases}, {"violations", violations}};
  r.summary = std::to_string(violations) + " of " + std::to_string(trials) + " outside [sigma/sqrt2 - 3%, sigma + 3%]";
  return r;
}

inline CriterionResult multiplier_equality(Rng& rng, bool quick) {
  CriterionResult r{10, "||Gamma^phi|| on K_{b1 b2} = ||Gamma_phi||", false, false, 0, 600.0, {}, {}, {}};
  const int trials = quick ? 4 : 20, N = 12, n = 2, L = 192;
  const int K = default_model_degree(N, n);
  double gap = 0.0, drift = 0.0, identity = 0.0;
  for (int t = 0; t < trials; ++t) {
    const BlaschkeProduct b1(random_nodes(rng, n, 0.6)), b2(random_nodes(rng, n, 0.6));
    const TrigPoly1 G1 = random_analytic1(rng, 3, 1.0), G2 = random_analytic1(rng, 3, 1.0);
    const MultiplierReport a = multiplier_Gamma_phi(G1, G2, ModelSpace2(b1, b2, K));
    const MultiplierReport b = multiplier_Gamma_phi(G1, G2, ModelSpace2(b1, b2, 2 * K));
    SeparableSymbol phi;
    phi.terms.push_back({multiply(conjugate(coeffs(b1, detail::series_degree(b1))), G1),
                         multiply(conjugate(coeffs(b2, detail::series_degree(b2))), G2)});
    const double full = BlaschkeGram(phi, N).arm_norm({}, {}, L).value;
    gap = std::max(gap, rel_err(b.norm_multiplier, full));
    drift = std::max(drift, rel_err(a.norm_multiplier, b.norm_multiplier));
    identity = std::max({identity, a.relative_gap, b.relative_gap});
  }
  r.passed = gap < 0.02 && drift < 0.02;
  r.values = {{"trials", trials}, {"N", N},          {"n", n},
              {"K", K},           {"arm", L},        {"max_rel_gap", gap},
              {"max_K_drift", drift}, {"max_multiplier_vs_restricted", identity}};
  r.summary = "max gap to the full operator " + num(gap) + ", K -> 2K drift " + num(drift) +
              " (tol 0.02)";
  return r;
}

inline CriterionResult carleson_identity(Rng& rng, bool quick) {
  CriterionResult r{11, "Carleson embedding constant = vector Hankel norm", false, false, 0, 120.0, {}, {}, {}};
  const int trials = quick ? 5 : 20, N = 12;
  double worst = 0.0, drift = 0.0;
  for (int t = 0; t < trials; ++t) {
    DiscreteMeasure m;
    const int atoms = 1 + t % 6;
    for (int k = 0; k < atoms; ++k)
      m.atoms.push_back({random_in_disk(rng, 0.7), random_in_disk(rng, 0.7), uniform(rng, 0.1, 1.0)});
    const CarlesonReport a = embedding_constant(m, N), b = vector_hankel_constant(m, N);
    worst = std::max(worst, rel_err(a.C, b.C));
    drift = std::max(drift, a.drift);
  }
  r.passed = worst < 1e-9;
  r.values = {{"trials", trials}, {"N", N}, {"max_rel_difference", worst}, {"max_N_drift", drift}};
  r.summary = "max rel difference " + num(worst) + " (tol 1e-9)";
  return r;
}

inline CriterionResult gallery_trends(Rng&, bool quick) {
  CriterionResult r{12, "gallery ratios grow with N", false, false, 0, 300.0, {}, {}, {}};
  const std::vector<int> Ns = quick ? std::vector<int>{8, 16, 32} : std::vector<int>{8, 16, 32, 64};
  std::vector<double> a, b, c;
  bool converged = true;
  for (int N : Ns) {
    const int G = 4 * N + 4;
    const GalleryExample ea = gallery(GalleryKind::prop12a, N);
    const BmoReport sa = bmo_small_norm(ea.phi, N, G);
    a.push_back(sup_norm(ea.phi) / sa.value);
    const GalleryExample eb = gallery(GalleryKind::prop12b, N);
    const BmoReport sb = bmo_small_norm(eb.phi, N, G), rb = bmor_norm(eb.phi, N, G);
    b.push_back(sb.value / rb.value);
    const GalleryExample ec = gallery(GalleryKind::prop13, N);
    const TrigPoly2 pp = project(project(ec.phi, Sector::Px), Sector::Py);
    const int Q = 16 * N + 16;
    c.push_back(tri_norm_lower(ec.phi) / (norm1_grid(pp, Q) + norm1_grid(ec.phi - pp, Q)));
    converged = converged && sa.converged && sb.converged && rb.converged;
  }
  auto increasing = [](const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
      if (!(v[i] > v[i - 1])) return false;
    return true;
  };
  r.passed = increasing(a) && increasing(b) && increasing(c) && converged;
  r.values = {{"N", Ns},
              {"prop12a_sup_over_bmo", a},
              {"prop12b_bmo_over_bmor", b},
              {"prop13_tri_over_partition", c},
              {"converged", converged}};
  auto fmt = [](const std::vector<double>& v) {
    std::string s;
    for (double x : v) s += (s.empty() ? "" : " ") + num(x);
    return s;
  };
  r.summary = "12a [" + fmt(a) + "], 12b [" + fmt(b) + "], 13 [" + fmt(c) + "]";
  return r;
}

using CriterionFn = std::function<CriterionResult(Rng&, bool)>;

inline const std::map<int, CriterionFn>& criteria() {
  static const std::map<int, CriterionFn> table{
      {1, reproducing_kernel}, {2, model_closed_forms}, {3, theorem_a_sandwich}, {4, nehari_1d},
      {5, pick_bridge},        {6, pick_2d},            {7, theorem_b_trend},    {8, finite_type},
      {9, delta_sandwich},     {10, multiplier_equality}, {11, carleson_identity}, {12, gallery_trends}};
  return table;
}

inline double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

}  // namespace detail

inline CriterionResult run_criterion(int id, std::uint64_t seed, bool quick) {
  const auto& table = detail::criteria();
  const auto it = table.find(id);
  if (it == table.end()) throw ConfigError("acceptance: no criterion " + std::to_string(id));
  Rng rng(detail::mix_seed(seed, id, 0, 0xACCE));
  const auto t0 = std::chrono::steady_clock::now();
  CriterionResult r = it->second(rng, quick);
  r.seconds = detail::seconds_since(t0);
  r.diagnostics["seconds"] = r.seconds;
  r.diagnostics["within_time_limit"] = r.seconds <= r.limit;
  r.holds = r.passed;
  r.passed = r.holds && r.seconds <= r.limit;
  return r;
}

inline json values_of(const std::vector<CriterionResult>& rs) {
  json v = json::object();
  for (const auto& r : rs) v[std::to_string(r.id)] = {{"holds", r.holds}, {"values", r.values}};
  return v;
}

/// Criterion 13: the quick suite of criteria 1-12, run twice, must give identical values.
inline CriterionResult determinism(std::uint64_t seed) {
  CriterionResult r{13, "verify-all is deterministic for a fixed seed", false, false, 0, 600.0, {}, {}, {}};
  const auto t0 = std::chrono::steady_clock::now();
  std::string dump[2];
  for (auto& d : dump) {
    std::vector<CriterionResult> rs;
    for (const auto& [id, fn] : detail::criteria()) {
      Rng rng(detail::mix_seed(seed, id, 0, 0xACCE));
      rs.push_back(fn(rng, true));
      rs.back().holds = rs.back().passed;
    }
    d = values_of(rs).dump();
  }
  r.seconds = detail::seconds_since(t0);
  r.holds = dump[0] == dump[1];
  r.passed = r.holds && r.seconds <= r.limit;
  r.values = {{"identical", dump[0] == dump[1]}, {"bytes", dump[0].size()}};
  r.diagnostics["seconds"] = r.seconds;
  r.summary = std::string(dump[0] == dump[1] ? "identical" : "DIFFERENT") + " values over two quick runs (" +
              std::to_string(dump[0].size()) + " bytes)";
  return r;
}

inline std::vector<CriterionResult> run_suite(const SuiteOptions& opt,
                                              const std::function<void(const CriterionResult&)>& report = {}) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= 13; ++id) {
    if (!opt.only.empty() && !opt.only.count(id)) continue;
    out.push_back(id == 13 ? determinism(opt.seed) : run_criterion(id, opt.seed, opt.quick));
    if (report) report(out.back());
  }
  return out;
}

inline std::string format_line(const CriterionResult& r) {
  char head[64];
  std::snprintf(head, sizeof head, "[%s] %2d  ", r.passed ? "PASS" : "FAIL", r.id);
  char tail[96];
  std::snprintf(tail, sizeof tail, "  (%.1f s, limit %.0f s)", r.seconds, r.limit);
  return std::string(head) + r.name + ": " + r.summary + tail;
}

}  // namespace nehari

#endif
