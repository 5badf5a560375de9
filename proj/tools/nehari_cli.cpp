// nehari_cli: every experiment as a subcommand, one JSON envelope per run.
//
// Exit status: 0 ok, 1 usage, 2 configuration, 3 solver non-convergence,
// 4 acceptance violation in verify-all, 5 accuracy or conditioning failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nehari/nehari.hpp"

namespace {

using namespace nehari;

constexpr int kExitUsage = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNonConvergence = 3;
constexpr int kExitViolation = 4;
constexpr int kExitAccuracy = 5;

const char* const kGrammar = R"(Symbols are trigonometric polynomials on T^2 written as expressions:

  expr    := term (('+' | '-') term)*
  term    := unary (['*'] power)*         juxtaposition multiplies
  unary   := '-' unary | '+' unary | power
  power   := primary ['^' integer]
  primary := number | 'i' | 'pi' | 'x' | 'y' | '(' expr ')'
           | 'exp' '(' expr ')' | 'conj' '(' expr ')'
           | 'B_x' '(' zeros ')' | 'B_y' '(' zeros ')'
  zeros   := expr (',' expr)*             constants in the open disk

x and y appear only inside exp, whose argument must reduce to
c + i(m x + n y) with integers m, n.  B_x(a, ...) is the Blaschke product
in x with those zeros, expanded to 1e-15 in l^1.  Complex parameters such
as --z take constant expressions, e.g. "0.3-0.2i".

  exp(-ix) + exp(-iy)          conj(B_x(0.5)) * exp(ix)
  0.5 exp(-2ix - iy)           (1 + exp(-ix))^2

Coefficient files (--coeffs) hold rows  m, n, re, im  (or m, re, im on T).
Node files hold  re z, im z, re w, im w, re lambda, im lambda  (D^2) or
re z, im z, re lambda, im lambda  (D).  Atom files hold
re z, im z, re zeta, im zeta, mu.

A JSON file given to the top-level --config holds {"subcommand": name,
option: value, ...}; flags after it override its entries.  Every envelope
echoes its config in this form.

Exit status: 0 ok, 1 usage, 2 configuration, 3 solver non-convergence,
4 acceptance violation (verify-all), 5 accuracy or conditioning failure.)";

struct Outcome {
  json values = json::object();
  json diagnostics = json::object();
  bool converged = true;
  bool violation = false;
  std::string csv_header;
  std::vector<std::vector<double>> csv_rows;
};

struct Common {
  std::uint64_t seed = 1;
  std::string out;
  std::string csv;
  double tol = 1e-4;  ///< minimax relative gap
  int max_iter = 4000;
};

struct Command {
  CLI::App* app = nullptr;
  std::function<Outcome()> run;
};

// ---------------------------------------------------------------------------
// Inputs.

struct SymbolInput {
  std::string expr;
  std::string file;
};

void add_symbol(CLI::App* s, SymbolInput& in, const std::string& name = "--symbol") {
  auto* e = s->add_option(name, in.expr, "symbol expression (grammar in the top-level --help)");
  auto* f = s->add_option("--coeffs", in.file, "coefficient CSV instead of an expression");
  e->excludes(f);
}

TrigPoly2 load2(const SymbolInput& in, const std::string& what = "symbol") {
  if (!in.file.empty()) return read_coefficients_file(in.file);
  require(!in.expr.empty(), what + ": give an expression or --coeffs");
  return parse_symbol(in.expr);
}

TrigPoly1 to_one_dim(const TrigPoly2& p, const std::string& what) {
  TrigPoly1 out(p.N());
  for (int m = -p.N(); m <= p.N(); ++m)
    for (int n = -p.N(); n <= p.N(); ++n) {
      if (n == 0)
        out(m) = p(m, 0);
      else
        require(p(m, n) == cplx{}, what + ": must not depend on y");
    }
  return out.trimmed();
}

TrigPoly1 load1(const SymbolInput& in, const std::string& what = "symbol") {
  if (!in.file.empty()) return to_one_dim(read_coefficients_file(in.file), what);
  require(!in.expr.empty(), what + ": give an expression or --coeffs");
  return parse_symbol_1d(in.expr);
}

TrigPoly1 parse1(const std::string& expr, const std::string& what) {
  require(!expr.empty(), what + ": missing expression");
  return parse_symbol_1d(expr);
}

cplx parse_complex(const std::string& s, const std::string& what) {
  require(!s.empty(), what + ": missing value");
  const TrigPoly2 p = parse_symbol(s);
  require(p.N() == 0, what + ": '" + s + "' is not a constant");
  return p(0, 0);
}

std::vector<cplx> parse_points(const std::vector<std::string>& v, const std::string& what) {
  std::vector<cplx> out;
  for (const auto& s : v) out.push_back(parse_complex(s, what));
  return out;
}

json to_json(const ZeroPair& z) { return {{"x", nehari::to_json(z.x)}, {"y", nehari::to_json(z.y)}}; }

json coeff_list(const TrigPoly2& p) {
  json a = json::array();
  for (int m = -p.N(); m <= p.N(); ++m)
    for (int n = -p.N(); n <= p.N(); ++n)
      if (p(m, n) != cplx{}) a.push_back({m, n, p(m, n).real(), p(m, n).imag()});
  return a;
}

void coeff_rows(const TrigPoly2& p, Outcome& o) {
  o.csv_header = "m,n,re,im";
  for (int m = -p.N(); m <= p.N(); ++m)
    for (int n = -p.N(); n <= p.N(); ++n)
      if (p(m, n) != cplx{})
        o.csv_rows.push_back({double(m), double(n), p(m, n).real(), p(m, n).imag()});
}

MinimaxOptions minimax_options(const Common& c) {
  MinimaxOptions o;
  o.gap_tol = c.tol;
  o.max_iter = c.max_iter;
  return o;
}

void positive(CLI::Option* o) { o->check(CLI::PositiveNumber); }
void nonnegative(CLI::Option* o) { o->check(CLI::NonNegativeNumber); }

// ---------------------------------------------------------------------------
// Hankel matrices.

Command hankel_norm(CLI::App& app, const Common&) {
  struct Opts {
    SymbolInput sym;
    int N = 16;
    int arm = 0;
    bool one_dim = false;
  };
  auto o = std::make_shared<Opts>();
  auto* s = app.add_subcommand("hankel-norm", "s_0 of the Hankel matrix on the box [0, N]^d");
  add_symbol(s, o->sym);
  nonnegative(s->add_option("--N", o->N, "truncation"));
  nonnegative(s->add_option("--arm", o->arm, "also the norm on H^2(T^2) with arms of this length; 0 skips"));
  s->add_flag("--one-dim", o->one_dim, "symbol on T");
  return {s, [o] {
            Outcome r;
            if (o->one_dim) {
              const auto H = build(load1(o->sym), o->N);
              r.values = {{"s0", op_norm(H)}, {"rows", H.matrix.rows()}, {"cols", H.matrix.cols()}};
              return r;
            }
            const TrigPoly2 phi = load2(o->sym);
            const auto H = build(phi, o->N);
            r.values = {{"s0", op_norm(H)}, {"rows", H.matrix.rows()}, {"cols", H.matrix.cols()}};
            if (o->arm > 0) {
              const ArmNorm a = BlaschkeGram(separate_lowrank(project(phi, Sector::IminusPfull)), o->N)
                                    .arm_norm({}, {}, std::max(o->arm, o->N));
              r.values["s0_arm"] = a.value;
              r.values["arm"] = a.arm;
              r.diagnostics["arm_iterations"] = a.iterations;
              r.converged = a.converged;
            }
            return r;
          }};
}

Command singular(CLI::App& app, const Common&) {
  struct Opts {
    SymbolInput sym;
    int N = 16;
    int count = 8;
    bool one_dim = false;
  };
  auto o = std::make_shared<Opts>();
  auto* s = app.add_subcommand("singular", "leading singular numbers s_0 >= s_1 >= ... on the box");
  add_symbol(s, o->sym);
  nonnegative(s->add_option("--N", o->N, "truncation"));
  positive(s->add_option("--count", o->count, "how many"));
  s->add_flag("--one-dim", o->one_dim, "symbol on T");
  return {s, [o] {
            Outcome r;
            const std::vector<double> sv = o->one_dim ? singular_numbers(build(load1(o->sym), o->N), o->count)
                                                      : singular_numbers(build(load2(o->sym), o->N), o->count);
            r.values = {{"singular_values", sv}, {"N", o->N}};
            r.csv_header = "n,s_n";
            for (std::size_t k = 0; k < sv.size(); ++k) r.csv_rows.push_back({double(k), sv[k]});
            return r;
          }};
}

Command sigma_table_cmd(CLI::App& app, const Common& c) {
  struct Opts {
    SymbolInput sym;
    int N = 8, mmax = 1, nmax = 1, restarts = 16, arm = 192;
  };
  auto o = std::make_shared<Opts>();
  auto* s = app.add_subcommand("sigma-table", "best-found sigma_{mn} = inf ||Gamma_{(b1 (x) b2) phi}|| over Blaschke products");
  add_symbol(s, o->sym);
  positive(s->add_option("--N", o->N, "search box"));
  nonnegative(s->add_option("--mmax", o->mmax, "zeros in x"));
  nonnegative(s->add_option("--nmax", o->nmax, "zeros in y"));
  positive(s->add_option("--restarts", o->restarts, "search starts per cell"));
  nonnegative(s->add_option("--arm", o->arm, "arm length for the final evaluations; 0 keeps the box"));
  return {s, [o, &c] {
            Outcome r;
            SearchConfig cfg;
            cfg.restarts = o->restarts;
            cfg.seed = c.seed;
            cfg.arm = o->arm;
            const SeparableSymbol phi = separate_lowrank(project(load2(o->sym), Sector::IminusPfull));
            const auto T = sigma_table(phi, o->mmax, o->nmax, o->N, cfg);
            json sigma = json::array(), zeros = json::array();
            long evals = 0;
            r.csv_header = "m,n,sigma,sigma_box";
            for (const auto& row : T) {
              json line = json::array();
              for (const auto& cell : row) {
                line.push_back(cell.value);
                zeros.push_back({{"m", cell.m}, {"n", cell.n}, {"zeros", to_json(cell.zeros)}});
                r.csv_rows.push_back({double(cell.m), double(cell.n), cell.value, cell.value_truncated});
                evals += cell.evaluations;
              }
              sigma.push_back(line);
            }
            r.values = {{"sigma", sigma}, {"s0", T[0][0].s0}, {"zeros", zeros}, {"N", o->N}};
            r.diagnostics["evaluations"] = evals;
            return r;
          }};
}

// ---------------------------------------------------------------------------
// Distances.

Command nehari_1d(CLI::App& app, const Common& c) {
  struct Opts {
    SymbolInput sym;
    int K = 0, G = 0;
  };
  auto o = std::make_shared<Opts>();
  auto* s = app.add_subcommand("nehari-1d", "grid minimax dist(phi, H^infty) on T against the Hankel SVD");
  add_symbol(s, o->sym);
  nonnegative(s->add_option("--K", o->K, "degree of the analytic approximant; 0 selects 3N"));
  nonnegative(s->add_option("--G", o->G, "grid; 0 selects 4K + 4"));
  return {s, [o, &c] {
            Outcome r;
            const TrigPoly1 phi = load1(o->sym);
            const int K = o->K > 0 ? o->K : std::max(3 * phi.N(), 1);
            const int G = o->G > 0 ? o->G : 4 * K + 4;
            const NehariResult d = nehari_distance_1d(phi, K, G, minimax_options(c));
            const TrigPoly1 anti = project(phi, Sector::PminusX).trimmed();
            const double svd = anti.is_zero() ? 0.0 : op_norm(build(anti, std::max(anti.N(), 1) - 1));
            r.values = {{"distance", d.value}, {"lower_bound", d.lower_bound}, {"hankel_norm", svd},
                        {"relative_gap", svd > 0.0 ? std::abs(d.value - svd) / svd : 0.0},
                        {"K", K}, {"G", G}, {"approximant", nehari::to_json(d.approximant)}};
            r.diagnostics["iterations"] = d.iterations;
            r.converged = d.converged;
            return r;
          }};
}

Command aak_delta_cmd(CLI::App& app, const Common& c) {
  struct Opts {
    SymbolInput sym;
    int m = 1, n = 1, N = 10, lines = 256, restarts = 16, K = 0;
    double sigma = -1.0;
  };
  auto o = std::make_shared<Opts>();
  auto* s = app.add_subcommand("aak-delta", "delta(phi, BMOA + R_{mn}) and the sandwich against sigma_{mn}");
  add_symbol(s, o->sym);
  nonnegative(s->add_option("--m", o->m, "zeros in x"));
  nonnegative(s->add_option("--n", o->n, "zeros in y"));
  positive(s->add_option("--N", o->N, "search box"));
  positive(s->add_option("--lines", o->lines, "transverse lines"));
  positive(s->add_option("--restarts", o->restarts, "search starts"));
  nonnegative(s->add_option("--K", o->K, "slice minimax degree; 0 selects 4N"));
  s->add_option("--sigma", o->sigma, "known sigma_{mn}; negative runs a sigma search");
  return {s, [o, &c] {
            Outcome r;
            DeltaConfig cfg;
            cfg.search.restarts = o->restarts;
            cfg.search.seed = c.seed;
            cfg.lines = o->lines;
            cfg.K = o->K;
            cfg.minimax = minimax_options(c);
            const SeparableSymbol phi = separate_lowrank(project(load2(o->sym), Sector::IminusPfull));
            const DeltaReport d = aak_delta(phi, o->m, o->n, o->N, cfg, o->sigma);
            r.values = {{"delta", d.value},           {"delta_search", d.value_search},
                        {"dist_x", d.dist_x},         {"dist_y", d.dist_y},
                        {"sigma", d.sigma},           {"sandwich_lower", d.sandwich_lower},
                        {"sandwich_upper", d.sandwich_upper}, {"zeros", to_json(d.zeros)},
                        {"m", d.m},                   {"n", d.n}};
            r.diagnostics["evaluations"] = d.evaluations;
            r.converged = d.converged;
            return r;
          }};
}

Outcome bmo_outcome(const BmoReport& b, const std::string& name) {
  Outcome r;
  r.values = {{name, b.value}, {"lower_bound", b.lower_bound}, {"K", b.K}, {"grid", b.grid}};
  for (const auto& [k, v] : b.parts) r.values["parts"][k] = v;
  r.converged = b.converged;
  r.csv_header = "part,i,j,re,im";
  int idx = 0;
  for (const auto& [k, V] : b.decomposition) {
    r.diagnostics["csv_parts"][std::to_string(idx)] = k;
    for (Eigen::Index i = 0; i < V.rows(); ++i)
      for (Eigen::Index j = 0; j < V.cols(); ++j)
        r.csv_rows.push_back({double(idx), double(i), double(j), V(i, j).real(), V(i, j).imag()});
    ++idx;
  }
  return r;
}

Command bmo_cmd(CLI::App& app, const Common& c, bool restricted) {
  struct Opts {
    SymbolInput sym;
    int K = 0, G = 0;
  };
  auto o = std::make_shared<Opts>();
  auto* s = restricted ? app.add_subcommand("bmor-norm", "||phi||_BMOr by slice-wise grid minimax")
                       : app.add_subcommand("bmo-norm", "||phi||_bmo, the small BMO norm, by slice-wise grid minimax");
  add_symbol(s, o->sym);
  nonnegative(s->add_option("--K", o->K, "approximation degree; 0 selects N"));
  nonnegative(s->add_option("--G", o->G, "grid; 0 selects 4K + 4"));
  return {s, [o, &c, restricted] {
            const TrigPoly2 phi = load2(o->sym);
            const int K = o->K > 0 ? o->K : std::max(phi.N(), 1);
            const int G = o->G > 0 ? o->G : 4 * K + 4;
            return restricted ? bmo_outcome(bmor_norm(phi, K, G, minimax_options(c)), "bmor")
                              : bmo_outcome(bmo_small_norm(phi, K, G, minimax_options(c)), "bmo");
          }};
}

Command rect_osc(CLI::App& app, const Common&) {
  struct Opts {
    SymbolInput sym;
    int G = 0;
  };
  auto o = std::make_shared<Opts>();
  auto* s = app.add_subcommand("rect-osc", "max mean oscillation over dyadic rectangles of the grid");
  add_symbol(s, o->sym);
  nonnegative(s->add_option("--G", o->G, "grid; 0 selects 4N + 4"));
  return {s, [o] {
            Outcome r;
            const TrigPoly2 phi = load2(o->sym);
            const int G = o->G > 0 ? o->G : 4 * phi.N() + 4;
            const OscillationReport q = rect_mean_osc(sample(phi, G));
            r.values = {{"oscillation", q.value},
                        {"grid", G},
                        {"I", {q.I.start, q.I.length}},
                        {"J", {q.J.start, q.J.length}}};
            return r;
          }};
}

Command gallery_cmd(CLI::App& app, const Common& c) {
  struct Opts {
    std::string kind = "prop12a";
    int N = 16;
  };
  auto o = std::make_shared<Opts>();
  auto* s = app.add_subcommand("gallery", "examples separating the BMO norms, with their designated ratio");
  s->add_option("--kind", o->kind, "prop12a | prop12b | prop12c | prop13");
  positive(s->add_option("--N", o->N, "truncation"));
  return {s, [o, &c] {
            Outcome r;
            const GalleryExample ex = gallery(gallery_kind(o->kind), o->N);
            const int N = o->N, G = 4 * N + 4, Q = 16 * N + 16;
            const MinimaxOptions mo = minimax_options(c);
            for (const auto& [k, v] : ex.metadata) r.values["metadata"][k] = v;
            r.values["symbol"] = coeff_list(ex.phi);
            switch (ex.kind) {
              case GalleryKind::prop12a: {
                const BmoReport b = bmo_small_norm(ex.phi, N, G, mo);
                r.values["sup"] = sup_norm(ex.phi);
                r.values["bmo"] = b.value;
                r.values["ratio"] = sup_norm(ex.phi) / b.value;
                r.values["ratio_name"] = "sup / bmo";
                r.converged = b.converged;
                break;
              }
              case GalleryKind::prop12b: {
                const BmoReport b = bmo_small_norm(ex.phi, N, G, mo), br = bmor_norm(ex.phi, N, G, mo);
                r.values["bmo"] = b.value;
                r.values["bmor"] = br.value;
                r.values["ratio"] = b.value / br.value;
                r.values["ratio_name"] = "bmo / bmor";
                r.converged = b.converged && br.converged;
                break;
              }
              case GalleryKind::prop12c: {
                const BmoReport b = bmo_small_norm(ex.phi, N, G, mo), br = bmor_norm(ex.phi, N, G, mo);
                r.values["sup"] = sup_norm(ex.phi);
                r.values["bmo"] = b.value;
                r.values["bmor"] = br.value;
                r.values["ratio"] = sup_norm(ex.phi) / br.value;
                r.values["ratio_name"] = "sup / bmor";
                r.converged = b.converged && br.converged;
                break;
              }
              case GalleryKind::prop13: {
                const TrigPoly2 pp = project(project(ex.phi, Sector::Px), Sector::Py);
                const double tri = tri_norm_lower(ex.phi), part = norm1_grid(pp, Q) + norm1_grid(ex.phi - pp, Q);
                r.values["tri_norm_lower"] = tri;
                r.values["partition_upper"] = part;
                r.values["ratio"] = tri / part;
                r.values["ratio_name"] = "tri / partition";
                break;
              }
            }
            return r;
          }};
}

Command hs_weight(CLI::App& app, const Common&) {
  struct Opts {
    std::string weight;
    int N = 4, G = 0;
  };
  auto o = std::make_shared<Opts>();
  auto* s = app.add_subcommand("hs-weight", "best M with int |Hf|^2 w <= M^2 int |f|^2 w, H = H_x H_y");
  s->add_option("--weight", o->weight, "positive weight as a real symbol expression")->required();
  nonnegative(s->add_option("--N", o->N, "polynomial box [-N, N]^2"));
  nonnegative(s->add_option("--G", o->G, "quadrature grid; 0 selects 4 max(N, deg w) + 4"));
  return {s, [o] {
            Outcome r;
            const TrigPoly2 w = parse_symbol(o->weight);
            const int G = o->G > 0 ? o->G : 4 * std::max(o->N, w.N()) + 4;
            const Eigen::MatrixXcd V = sample(w, G);
            const double scale = std::max(V.cwiseAbs().maxCoeff(), 1e-300);
            require(V.imag().cwiseAbs().maxCoeff() <= 1e-12 * scale, "hs-weight: weight must be real");
            const Eigen::MatrixXd wr = V.real();
            r.values = {{"M", weighted_hilbert_norm(wr, o->N)}, {"N", o->N}, {"grid", G},
                        {"weight_min", wr.minCoeff()},        {"weight_max", wr.maxCoeff()}};
            return r;
          }};
}

// ---------------------------------------------------------------------------
// Pick problems.

PickSystem load_nodes(const std::string& path) {
  require(!path.empty(), "pick: --nodes is required");
  return read_pick_file(path);
}

Command pick_1d(CLI::App& app, const Common&) {
  struct Opts {
    std::string nodes;
    std::vector<std::string> zeros;
    std::string G;
  };
  auto o = std::make_shared<Opts>();
  auto* s = app.add_subcommand("pick-1d", "Pick matrix on D, and with --G the bridge to ||Gamma_{conj(b) G}||");
  s->add_option("--nodes", o->nodes, "CSV re z, im z, re lambda, im lambda");
  s->add_option("--zeros", o->zeros, "nodes z_k as constants; values come from --G");
  s->add_option("--G", o->G, "analytic symbol on T; lambda_k = G(z_k)");
  return {s, [o] {
            Outcome r;
            std::vector<cplx> z, lambda;
            if (!o->nodes.empty()) {
              const PickSystem sys = load_nodes(o->nodes);
              require(sys.w.empty(), "pick-1d: nodes must have four columns");
              z = sys.z;
              lambda = sys.lambda;
            } else {
              z = parse_points(o->zeros, "pick-1d --zeros");
            }
            require(!z.empty(), "pick-1d: give --nodes or --zeros");
            if (!o->G.empty()) {
              const TrigPoly1 G = parse1(o->G, "pick-1d --G");
              const PickBridge1D b = pick_bridge_1d(z, G);
              r.values = {{"min_eig", b.min_eig},     {"psd", b.psd},           {"gamma_norm", b.gamma_norm},
                          {"model_norm", b.model_norm}, {"bounded", b.bounded}, {"agree", b.psd == b.bounded}};
              if (!lambda.empty()) {
                double err = 0.0;
                for (std::size_t k = 0; k < z.size(); ++k) err = std::max(err, std::abs(eval_disk(G, z[k]) - lambda[k]));
                r.values["lambda_mismatch"] = err;
              }
              return r;
            }
            require(!lambda.empty(), "pick-1d: values need --nodes with lambda or --G");
            const CMatrix P = pick_matrix_1d(z, lambda);
            r.values = {{"min_eig", min_eigenvalue(P)}, {"psd", is_psd(P)}, {"n", z.size()}};
            return r;
          }};
}

Command pick_2d(CLI::App& app, const Common&) {
  struct Opts {
    std::string nodes;
    int grid = 128;
  };
  auto o = std::make_shared<Opts>();
  auto* s = app.add_subcommand("pick-2d", "the two Pick families on D^2 and the product-split matrices");
  s->add_option("--nodes", o->nodes, "CSV re z, im z, re w, im w, re lambda, im lambda")->required();
  positive(s->add_option("--grid", o->grid, "points on T per family"));
  return {s, [o] {
            Outcome r;
            const PickSystem sys = load_nodes(o->nodes);
            require(!sys.w.empty(), "pick-2d: nodes must have six columns");
            const PickFamilies f = pick_matrices_2d(sys, o->grid);
            const CorollaryResult c = corollary_matrices(sys);
            r.values = {{"families",
                         {{"min_eig_x", f.min_eig_x}, {"min_eig_y", f.min_eig_y}, {"margin", f.margin}, {"psd", f.psd},
                          {"grid", f.grid}}},
                        {"split",
                         {{"min_eig1", c.min_eig1}, {"min_eig2", c.min_eig2}, {"psd", c.psd}, {"sup1", c.sup1},
                          {"sup2", c.sup2}, {"interp_error", c.interp_error}}},
                        {"n", sys.size()}};
            r.diagnostics["coarse"] = {f.min_eig_x_coarse, f.min_eig_y_coarse};
            return r;
          }};
}

json to_json(const LineInterpolant& F) {
  return {{"sup", F.sup},
          {"sup_exact", F.sup_exact},
          {"interp_error", F.interp_error},
          {"analytic_leak", F.analytic_leak},
          {"lines", F.lines},
          {"K", F.K},
          {"converged", F.converged}};
}

Command pick_certify(CLI::App& app, const Common& c) {
  struct Opts {
    std::string nodes, G;
    PickConfig cfg;
    bool interpolants = false;
  };
  auto o = std::make_shared<Opts>();
  auto* s = app.add_subcommand("pick-certify", "conditions (i), (ii), (iv) on D^2 for lambda_k = G(z_k, w_k)");
  s->add_option("--nodes", o->nodes, "CSV with columns re z, im z, re w, im w[, re lambda, im lambda]")->required();
  s->add_option("--G", o->G, "analytic symbol on T^2")->required();
  positive(s->add_option("--K", o->cfg.K, "structured basis degree"));
  positive(s->add_option("--grid", o->cfg.grid, "points on T per Pick family"));
  positive(s->add_option("--lines", o->cfg.lines, "lines for the interpolants"));
  positive(s->add_option("--line-degree", o->cfg.line_degree, "degree per line"));
  s->add_flag("--interpolants", o->interpolants, "build F_1, F_2 even when ||Gamma|| > 1");
  return {s, [o, &c] {
            Outcome r;
            PickSystem sys = load_nodes(o->nodes);
            if (sys.w.empty()) std::swap(sys.w, sys.lambda);
            sys.G = parse_symbol(o->G);
            double mismatch = 0.0;
            const bool given = !sys.lambda.empty();
            std::vector<cplx> l;
            for (int k = 0; k < sys.size(); ++k) {
              const cplx v = eval_bidisk(*sys.G, sys.z[std::size_t(k)], sys.w[std::size_t(k)]);
              if (given) mismatch = std::max(mismatch, std::abs(v - sys.lambda[std::size_t(k)]));
              l.push_back(v);
            }
            sys.lambda = l;
            PickConfig cfg = o->cfg;
            cfg.minimax = minimax_options(c);
            const PickCertificate p = certify_via_hankel(sys, cfg, o->interpolants);
            r.values = {{"holds_i", p.holds_i},
                        {"holds_ii", p.holds_ii},
                        {"holds_iv", p.holds_iv},
                        {"gamma_norm", p.gamma_norm},
                        {"gamma_norm_half_K", p.gamma_norm_half},
                        {"pick_margin", p.families.margin},
                        {"iv_implies_ii", p.iv_implies_ii},
                        {"ii_implies_iv", p.ii_implies_iv},
                        {"i_iff_iv", p.i_iff_iv}};
            if (given) r.values["lambda_mismatch"] = mismatch;
            if (p.F1) {
              r.values["F1"] = to_json(*p.F1);
              r.values["F2"] = to_json(*p.F2);
              r.converged = p.F1->converged && p.F2->converged;
            }
            return r;
          }};
}

// ---------------------------------------------------------------------------
// Model spaces.

Command model_project(CLI::App& app, const Common&) {
  struct Opts {
    SymbolInput f;
    std::string z = "0", zeta = "0";
    int N = 16;
  };
  auto o = std::make_shared<Opts>();
  auto* s = app.add_subcommand("model-project", "P_{z zeta} f onto K_{z zeta} = H^2 minus (b_z (x) b_zeta) H^2");
  add_symbol(s, o->f, "--f");
  s->add_option("--z", o->z, "first coordinate");
  s->add_option("--zeta", o->zeta, "second coordinate");
  nonnegative(s->add_option("--N", o->N, "coefficients kept in [0, N]^2"));
  return {s, [o] {
            Outcome r;
            const TrigPoly2 f = load2(o->f, "model-project --f");
            const cplx z = parse_complex(o->z, "--z"), zeta = parse_complex(o->zeta, "--zeta");
            const TrigPoly2 p = project_Kzz(f, z, zeta, o->N);
            const TrigPoly2 t = project_Kzz_tensor(f, z, zeta, o->N);
            r.values = {{"norm_truncated", norm2(p)},
                        {"norm_closed", std::sqrt(std::max(0.0, norm_Kzz_closed(f, z, zeta)))},
                        {"tensor_route_difference", norm2(p - t)},
                        {"N", o->N},
                        {"projection", coeff_list(p)}};
            coeff_rows(p, r);
            return r;
          }};
}

Command model_multiplier(CLI::App& app, const Common&) {
  struct Opts {
    std::vector<std::string> zeros1, zeros2;
    std::string G1, G2;
    int K = 0, arm = 192;
  };
  auto o = std::make_shared<Opts>();
  auto* s = app.add_subcommand("model-multiplier",
                               "||Gamma^phi|| on K_{b1 b2} against ||Gamma_phi||, phi = conj(b1 (x) b2) (G1 (x) G2)");
  s->add_option("--zeros1", o->zeros1, "zeros of b1")->required();
  s->add_option("--zeros2", o->zeros2, "zeros of b2")->required();
  s->add_option("--G1", o->G1, "analytic symbol on T")->required();
  s->add_option("--G2", o->G2, "analytic symbol on T")->required();
  nonnegative(s->add_option("--K", o->K, "basis degree; 0 selects max(4 (N - n), 8), N = deg G"));
  nonnegative(s->add_option("--arm", o->arm, "arm length for the full operator; 0 skips"));
  return {s, [o] {
            Outcome r;
            const BlaschkeProduct b1(parse_points(o->zeros1, "--zeros1")), b2(parse_points(o->zeros2, "--zeros2"));
            const TrigPoly1 G1 = parse1(o->G1, "--G1"), G2 = parse1(o->G2, "--G2");
            const int N = std::max(G1.N(), G2.N());
            const int K = o->K > 0 ? o->K : default_model_degree(N, b1.degree());
            const MultiplierReport a = multiplier_Gamma_phi(G1, G2, ModelSpace2(b1, b2, K));
            const MultiplierReport b = multiplier_Gamma_phi(G1, G2, ModelSpace2(b1, b2, 2 * K));
            r.values = {{"norm_multiplier", a.norm_multiplier},
                        {"norm_hankel", a.norm_hankel},
                        {"relative_gap", a.relative_gap},
                        {"norm_multiplier_2K", b.norm_multiplier},
                        {"K_drift", std::abs(b.norm_multiplier - a.norm_multiplier) / std::max(b.norm_multiplier, 1e-300)},
                        {"K", K}};
            r.diagnostics["gram_condition"] = a.gram_condition;
            if (o->arm > 0) {
              SeparableSymbol phi;
              phi.terms.push_back({multiply(conjugate(coeffs(b1, detail::series_degree(b1))), G1),
                                   multiply(conjugate(coeffs(b2, detail::series_degree(b2))), G2)});
              const ArmNorm full = BlaschkeGram(phi, std::max(N, 1)).arm_norm({}, {}, o->arm);
              r.values["norm_full"] = full.value;
              r.values["arm"] = full.arm;
              r.converged = full.converged;
            }
            return r;
          }};
}

// ---------------------------------------------------------------------------
// Carleson measures.

Command carleson(CLI::App& app, const Common&) {
  struct Opts {
    std::string atoms;
    int N = 12;
  };
  auto o = std::make_shared<Opts>();
  auto* s = app.add_subcommand("carleson", "embedding constant of an atomic measure and the vector Hankel norm");
  s->add_option("--atoms", o->atoms, "CSV re z, im z, re zeta, im zeta, mu")->required();
  nonnegative(s->add_option("--N", o->N, "truncation; 2N is the stability check"));
  return {s, [o] {
            Outcome r;
            const DiscreteMeasure m = read_atoms_file(o->atoms);
            const CarlesonReport a = embedding_constant(m, o->N), b = vector_hankel_constant(m, o->N);
            r.values = {{"C", a.C},
                        {"C_2N", a.C_double},
                        {"N_drift", a.drift},
                        {"vector_hankel_norm", b.C},
                        {"relative_difference", std::abs(a.C - b.C) / std::max(b.C, 1e-300)},
                        {"N", o->N},
                        {"atoms", m.atoms.size()}};
            r.csv_header = "N,C,vector_hankel_norm";
            r.csv_rows = {{double(o->N), a.C, b.C}, {double(2 * o->N), a.C_double, b.C_double}};
            return r;
          }};
}

// ---------------------------------------------------------------------------
// The acceptance suite.

Command verify_all(CLI::App& app, const Common& c) {
  struct Opts {
    bool quick = false;
    std::vector<int> only;
  };
  auto o = std::make_shared<Opts>();
  auto* s = app.add_subcommand("verify-all", "the acceptance suite; exit 4 on any failed criterion");
  s->add_flag("--quick", o->quick, "smaller samples, same tolerances");
  s->add_option("--only", o->only, "criterion ids")->check(CLI::Range(1, 13));
  return {s, [o, &c] {
            Outcome r;
            SuiteOptions opt;
            opt.seed = c.seed;
            opt.quick = o->quick;
            opt.only.insert(o->only.begin(), o->only.end());
            const auto results = run_suite(opt, [](const CriterionResult& cr) {
              std::fprintf(stderr, "%s\n", format_line(cr).c_str());
            });
            r.values = values_of(results);
            int failed = 0;
            for (const auto& cr : results) {
              failed += cr.passed ? 0 : 1;
              r.diagnostics[std::to_string(cr.id)] = cr.diagnostics;
              r.diagnostics[std::to_string(cr.id)]["passed"] = cr.passed;
            }
            r.diagnostics["failed"] = failed;
            r.violation = failed > 0;
            return r;
          }};
}

// ---------------------------------------------------------------------------
// Plumbing.

json scalar(const std::string& s) {
  if (s == "true") return true;
  if (s == "false") return false;
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  return s;
}

/// Option values in the --config form: {subcommand, name: value, ...}.
json echo_config(const CLI::App& app, const CLI::App& sub) {
  json cfg = json::object();
  cfg["subcommand"] = sub.get_name();
  for (const CLI::App* a : {&app, &sub})
    for (const CLI::Option* opt : a->get_options()) {
      const std::string name = opt->get_single_name();
      if (name == "help" || name == "config") continue;
      std::vector<std::string> vals = opt->count() > 0 ? opt->results() : std::vector<std::string>{};
      if (opt->count() == 0 && !opt->get_default_str().empty()) vals = {opt->get_default_str()};
      if (opt->get_type_size() == 0) {
        cfg[name] = opt->count() > 0;
      } else if (opt->get_expected_max() > 1) {
        json arr = json::array();
        if (!(vals.size() == 1 && vals[0] == "[]"))
          for (const auto& v : vals) arr.push_back(scalar(v));
        cfg[name] = arr;
      } else {
        cfg[name] = vals.empty() ? json(nullptr) : scalar(vals.front());
      }
    }
  return cfg;
}

/// argv from a --config file: subcommand, then --name value pairs, then `rest`.
/// Options named in `rest` replace the file's entries.
std::vector<std::string> args_from_config(const std::string& path, const std::vector<std::string>& rest) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError("config: " + std::string(e.what()));
  }
  require(j.is_object() && j.contains("subcommand") && j["subcommand"].is_string(),
          "config: needs an object with a \"subcommand\" string");
  std::vector<std::string> out{j["subcommand"].get<std::string>()};
  auto text = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  for (const auto& [k, v] : j.items()) {
    if (k == "subcommand" || v.is_null()) continue;
    if (std::find(rest.begin(), rest.end(), "--" + k) != rest.end()) continue;
    if (v.is_boolean()) {
      if (v.get<bool>()) out.push_back("--" + k);
    } else if (v.is_array()) {
      if (v.empty()) continue;
      out.push_back("--" + k);
      for (const auto& e : v) out.push_back(text(e));
    } else if (v.is_object()) {
      throw ConfigError("config: nested object at '" + k + "'");
    } else {
      out.push_back("--" + k);
      out.push_back(text(v));
    }
  }
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

void write_csv(const std::string& path, const Outcome& r) {
  std::ofstream f(path);
  if (!f) throw ConfigError("csv: cannot write '" + path + "'");
  f << r.csv_header << "\n";
  f.precision(17);
  for (const auto& row : r.csv_rows) {
    for (std::size_t k = 0; k < row.size(); ++k) f << (k ? "," : "") << row[k];
    f << "\n";
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Numerical lab for big Hankel operators on the torus.\n\n" + std::string(kGrammar)};
  app.require_subcommand(1);
  app.fallthrough();
  app.option_defaults()->always_capture_default();
  Common common;
  std::string config;
  app.add_option("--config", config, "JSON run configuration (see below)");
  app.add_option("--seed", common.seed, "master seed");
  app.add_option("--tol", common.tol, "minimax relative gap")->check(CLI::PositiveNumber);
  app.add_option("--max-iter", common.max_iter, "minimax iteration budget")->check(CLI::PositiveNumber);
  app.add_option("--out", common.out, "write the JSON envelope here instead of stdout");
  app.add_option("--csv", common.csv, "write the table of the run here");

  std::vector<Command> cmds{hankel_norm(app, common),      singular(app, common),        sigma_table_cmd(app, common),
                            nehari_1d(app, common),        aak_delta_cmd(app, common),   bmo_cmd(app, common, true),
                            bmo_cmd(app, common, false),   rect_osc(app, common),        gallery_cmd(app, common),
                            hs_weight(app, common),        pick_1d(app, common),         pick_2d(app, common),
                            pick_certify(app, common),     model_project(app, common),   model_multiplier(app, common),
                            carleson(app, common),         verify_all(app, common)};

  // A leading --config FILE expands into the subcommand and its options.
  std::vector<std::string> args;
  for (int k = 1; k < argc; ++k) args.emplace_back(argv[k]);
  if (args.size() >= 2 && args[0] == "--config") {
    args = args_from_config(args[1], std::vector<std::string>(args.begin() + 2, args.end()));
  }
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ValidationError& e) {
    app.exit(e);
    return kExitConfig;
  } catch (const CLI::ConversionError& e) {
    app.exit(e);
    return kExitConfig;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  require(config.empty(), "config: --config must come first");

  const auto t0 = std::chrono::steady_clock::now();
  for (const auto& c : cmds) {
    if (!c.app->parsed()) continue;
    const Outcome r = c.run();
    const json env = envelope(c.app->get_name(), echo_config(app, *c.app), common.seed, r.values, r.diagnostics,
                              detail::seconds_since(t0));
    if (common.out.empty()) {
      std::cout << env.dump(2) << "\n";
    } else {
      std::ofstream f(common.out);
      if (!f) throw ConfigError("out: cannot write '" + common.out + "'");
      f << env.dump(2) << "\n";
    }
    if (!common.csv.empty()) {
      if (r.csv_header.empty()) throw ConfigError("csv: " + c.app->get_name() + " has no table");
      write_csv(common.csv, r);
    }
    if (r.violation) return kExitViolation;
    if (!r.converged) {
      std::fprintf(stderr, "%s: solver did not converge\n", c.app->get_name().c_str());
      return kExitNonConvergence;
    }
    return 0;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const nehari::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const nehari::NonConvergence& e) {
    std::fprintf(stderr, "non-convergence: %s\n", e.what());
    return kExitNonConvergence;
  } catch (const nehari::ToleranceError& e) {
    std::fprintf(stderr, "accuracy: %s\n", e.what());
    return kExitAccuracy;
  } catch (const nehari::ConditioningError& e) {
    std::fprintf(stderr, "conditioning: %s\n", e.what());
    return kExitAccuracy;
  }
}
