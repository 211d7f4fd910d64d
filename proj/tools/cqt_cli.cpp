// cqt: command line front end for the quasi-Toeplitz algebra.
//
// Exit codes: 0 success, 2 precondition violated, 3 no convergence,
// 64 usage error, 1 anything else (I/O, malformed input files).

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "cqt/bench.hpp"
#include "cqt/error.hpp"
#include "cqt/funm_contour.hpp"
#include "cqt/funm_series.hpp"
#include "cqt/io.hpp"
#include "cqt/oracles.hpp"

namespace {

using cqt::AnyMatrix;
using cqt::cplx;
using cqt::CqtMatrix;
using cqt::Error;
using cqt::ErrorKind;
using cqt::FiniteQtMatrix;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitPrecondition = 2;
constexpr int kExitNoConvergence = 3;
constexpr int kExitUsage = 64;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code(const Error& e) {
  if (e.kind() == ErrorKind::NoConvergence) return kExitNoConvergence;
  if (e.kind() == ErrorKind::InvalidArgument) return kExitUsage;
  if (cqt::is_precondition_failure(e.kind())) return kExitPrecondition;
  return kExitFailure;
}

cplx parse_complex(const std::string& s) {
  std::string t = s;
  for (char& c : t) {
    if (c == ',') c = ' ';
  }
  std::istringstream in(t);
  double re = 0.0, im = 0.0;
  if (!(in >> re)) throw UsageError("bad complex number '" + s + "'");
  if (!(in >> im)) im = 0.0;
  std::string rest;
  if (in >> rest) throw UsageError("bad complex number '" + s + "'");
  return {re, im};
}

std::vector<cqt::Index> parse_sizes(const std::string& s) {
  std::vector<cqt::Index> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    char* end = nullptr;
    const long v = std::strtol(item.c_str(), &end, 10);
    if (*end != '\0' || v < 2) throw UsageError("bad size '" + item + "' (need integers >= 2)");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("--sizes needs a non-empty comma-separated list");
  return out;
}

// "index re [im]" per line; '#' starts a comment.
std::map<int, cplx> read_coeff_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::MalformedFile, "cannot open coefficient file '" + path + "'");
  std::map<int, cplx> c;
  std::string line;
  int line_no = 0;
  while (std::getline(f, line)) {
    ++line_no;
    if (const auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream in(line);
    int i = 0;
    double re = 0.0, im = 0.0;
    if (!(in >> i)) continue;
    if (!(in >> re)) {
      throw Error(ErrorKind::MalformedFile, path + ":" + std::to_string(line_no) + ": expected 'index re [im]'");
    }
    if (!(in >> im)) im = 0.0;
    c[i] += cplx{re, im};
  }
  if (c.empty()) throw Error(ErrorKind::MalformedFile, path + ": no coefficients");
  return c;
}

struct FunctionChoice {
  std::string name;
  std::optional<cqt::SeriesSpec> series;  // power or Laurent series, when defined
  std::function<cplx(cplx)> scalar;       // for the contour engine
};

FunctionChoice choose_function(const std::string& func, const std::string& method) {
  FunctionChoice fc;
  fc.name = func;
  if (func == "exp") {
    fc.series = cqt::SeriesSpec::exp();
    fc.scalar = [](cplx z) { return std::exp(z); };
  } else if (func == "log1p") {
    fc.series = cqt::SeriesSpec::log1p();
    fc.scalar = [](cplx z) { return std::log(1.0 + z); };
  } else if (func == "sqrt1p") {
    fc.series = cqt::SeriesSpec::sqrt1p();
    fc.scalar = [](cplx z) { return std::sqrt(1.0 + z); };
  } else if (func == "sqrt") {
    fc.scalar = [](cplx z) { return std::sqrt(z); };
  } else if (func == "log") {
    fc.scalar = [](cplx z) { return std::log(z); };
  } else if (func.rfind("coeff-file:", 0) == 0) {
    const auto c = read_coeff_file(func.substr(11));
    const int hi = std::max(0, c.rbegin()->first);
    const int lo = std::min(0, c.begin()->first);
    std::vector<cplx> pos(static_cast<std::size_t>(hi + 1)), neg(static_cast<std::size_t>(-lo));
    for (const auto& [i, v] : c) {
      if (i >= 0) pos[static_cast<std::size_t>(i)] = v;
      else neg[static_cast<std::size_t>(-i - 1)] = v;
    }
    if (lo < 0 && method == "series") {
      throw UsageError("coefficient file has negative powers: use --method laurent or contour");
    }
    fc.series = lo < 0 || method == "laurent" ? cqt::SeriesSpec::laurent_polynomial(pos, neg)
                                              : cqt::SeriesSpec::polynomial(pos);
    fc.scalar = [c](cplx z) {
      cplx s = 0.0;
      for (const auto& [i, v] : c) s += v * std::pow(z, i);
      return s;
    };
  } else {
    throw UsageError("unknown --func '" + func + "'");
  }
  if (method == "laurent" && fc.series && !fc.series->laurent) {
    cqt::SeriesSpec s = *fc.series;
    s.laurent = true;
    s.r_inner = 0.0;
    s.r_outer = s.radius;
    s.neg_degree = 0;
    fc.series = s;
  }
  if ((method == "series" || method == "laurent") && !fc.series) {
    throw UsageError("'" + func + "' has no series at the origin: use --method contour (or " + func +
                     "1p)");
  }
  return fc;
}

// Largest entry error of the leading block of exp(A) against the dense
// exponential of a larger section; finite inputs are compared in full.
std::optional<double> exp_residual(const AnyMatrix& a, const AnyMatrix& f) {
  if (const auto* x = std::get_if<CqtMatrix>(&a)) {
    const auto& fx = std::get<CqtMatrix>(f);
    const cqt::Matrix ref = cqt::dense_expm(cqt::finite_section(*x, 600));
    return (cqt::finite_section(fx, 80) - ref.topLeftCorner(80, 80)).cwiseAbs().maxCoeff();
  }
  const auto& x = std::get<FiniteQtMatrix>(a);
  if (x.m > 1000) return std::nullopt;
  const cqt::Matrix ref = cqt::dense_expm(cqt::fqt_to_dense(x));
  return (cqt::fqt_to_dense(std::get<FiniteQtMatrix>(f)) - ref).cwiseAbs().maxCoeff();
}

struct FunmArgs {
  std::string func, method = "series", input, output;
  double tol = 0.0;
  std::string center = "1.5,0";
  double radius = 1.0;
  int max_terms = 0, max_levels = 0, threads = 1;
};

int cmd_funm(const FunmArgs& args, cqt::ToleranceConfig cfg) {
  if (args.tol > 0.0) cfg.tol_stop = args.tol;
  if (args.max_terms > 0) cfg.max_terms = args.max_terms;
  if (args.max_levels > 0) cfg.max_levels = args.max_levels;
  if (args.method != "series" && args.method != "laurent" && args.method != "contour") {
    throw UsageError("--method must be series, laurent or contour");
  }
  const FunctionChoice fc = choose_function(args.func, args.method);
  const cqt::ContourSpec contour = cqt::ContourSpec::circle(parse_complex(args.center), args.radius);
  const AnyMatrix a = cqt::read_matrix(args.input);

  cqt::BenchRow row;
  row.case_id = "funm-" + (args.func.rfind("coeff-file:", 0) == 0 ? std::string("coeff") : args.func);
  const auto t0 = std::chrono::steady_clock::now();
  const AnyMatrix result = std::visit(
      [&](const auto& x) -> AnyMatrix {
        using T = std::decay_t<decltype(x)>;
        if (args.method == "contour") return cqt::funm_contour(x, fc.scalar, contour, cfg, nullptr, args.threads);
        if (args.method == "laurent") return cqt::funm_laurent(x, *fc.series, cfg);
        return T(cqt::funm_taylor(x, *fc.series, cfg));
      },
      a);
  row.time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::visit(
      [&](const auto& x) {
        row.band = std::max(cqt::symbol_of(x).neg_extent(), cqt::symbol_of(x).pos_extent());
        const auto s = cqt::correction_shape(x);
        row.rows = s.rows;
        row.columns = s.cols;
        row.rank = s.rank;
      },
      result);
  if (const auto* fx = std::get_if<FiniteQtMatrix>(&result)) row.size = static_cast<long>(fx->m);
  cqt::write_matrix(args.output, result);
  if (args.func == "exp") row.error = exp_residual(a, result);
  std::cout << cqt::BenchReport{{row}}.table();
  return kExitOk;
}

template <class Op>
int binary_op(const std::string& lhs, const std::string& rhs, const std::string& out, Op op) {
  const AnyMatrix a = cqt::read_matrix(lhs);
  const AnyMatrix b = cqt::read_matrix(rhs);
  if (a.index() != b.index()) {
    throw Error(ErrorKind::SizeMismatch, "operands are of different kinds (semi-infinite vs finite)");
  }
  const AnyMatrix r = std::visit(
      [&](const auto& x) -> AnyMatrix {
        using T = std::decay_t<decltype(x)>;
        return op(x, std::get<T>(b));
      },
      a);
  cqt::write_matrix(out, r);
  return kExitOk;
}

int finish_bench(const cqt::BenchReport& rep, const std::string& csv_path) {
  std::cout << rep.table();
  if (!csv_path.empty()) {
    std::ofstream f(csv_path);
    if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write '" + csv_path + "'");
    f << rep.csv();
  }
  return rep.all_ok() ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cqt: quasi-Toeplitz matrix algebra and matrix functions"};
  app.require_subcommand(1);

  FunmArgs funm;
  auto* f = app.add_subcommand("funm", "Matrix function of a CQT or finite QT matrix");
  f->add_option("--func", funm.func, "exp|log1p|sqrt1p|sqrt|log|coeff-file:<path>")->required();
  f->add_option("--method", funm.method, "series|laurent|contour")->capture_default_str();
  f->add_option("--input", funm.input, "Input matrix file")->required();
  f->add_option("--output", funm.output, "Output matrix file")->required();
  f->add_option("--tol", funm.tol, "Stopping tolerance (default 1e-12)");
  f->add_option("--contour-center", funm.center, "Circle center re,im")->capture_default_str();
  f->add_option("--contour-radius", funm.radius, "Circle radius")->capture_default_str();
  f->add_option("--max-terms", funm.max_terms, "Series term cap");
  f->add_option("--max-levels", funm.max_levels, "Contour doubling-level cap");
  f->add_option("--threads", funm.threads, "Threads for contour resolvents")->capture_default_str();

  std::string lhs, rhs, out, scale = "1";
  auto* add = app.add_subcommand("add", "C = A + s B");
  add->add_option("A", lhs)->required();
  add->add_option("B", rhs)->required();
  add->add_option("-o,--output", out)->required();
  add->add_option("--scale", scale, "s as re[,im]")->capture_default_str();
  auto* mul = app.add_subcommand("mul", "C = A B");
  mul->add_option("A", lhs)->required();
  mul->add_option("B", rhs)->required();
  mul->add_option("-o,--output", out)->required();
  auto* inv = app.add_subcommand("inv", "C = A^-1");
  inv->add_option("A", lhs)->required();
  inv->add_option("-o,--output", out)->required();
  auto* norm = app.add_subcommand("norm", "Print ||A||_CQT");
  norm->add_option("A", lhs)->required();

  auto* bench = app.add_subcommand("bench", "Benchmark sweeps with oracle residuals");
  bench->require_subcommand(1);
  int kmax = 5;
  std::string sizes, bench_func = "sqrt", csv, bench_center = "1.5,0";
  double bench_radius = 1.0;
  int bench_threads = 1;
  auto* hess = bench->add_subcommand("hessenberg-exp", "exp(T(a)), a(z) = sum_{i=-1}^k z^i");
  hess->add_option("--kmax", kmax)->capture_default_str();
  hess->add_option("--csv", csv, "Also write rows as CSV");
  auto* fexp = bench->add_subcommand("finite-exp", "exp(H^10) against the sine-transform oracle");
  fexp->add_option("--sizes", sizes, "m1,m2,...")->required();
  fexp->add_option("--csv", csv, "Also write rows as CSV");
  auto* cont = bench->add_subcommand("contour", "sqrt/log of I + H^10 by the contour engine");
  cont->add_option("--func", bench_func, "sqrt|log")->capture_default_str();
  cont->add_option("--sizes", sizes, "m1,m2,...")->required();
  cont->add_option("--contour-center", bench_center)->capture_default_str();
  cont->add_option("--contour-radius", bench_radius)->capture_default_str();
  cont->add_option("--threads", bench_threads)->capture_default_str();
  cont->add_option("--csv", csv, "Also write rows as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const cqt::ToleranceConfig cfg = cqt::ToleranceConfig::from_environment();
    if (*f) return cmd_funm(funm, cfg);
    if (*add) {
      const cplx s = parse_complex(scale);
      return binary_op(lhs, rhs, out, [&](const auto& a, const auto& b) { return cqt::plus(a, b, cfg, s); });
    }
    if (*mul) {
      return binary_op(lhs, rhs, out, [&](const auto& a, const auto& b) { return cqt::times(a, b, cfg); });
    }
    if (*inv) {
      const AnyMatrix a = cqt::read_matrix(lhs);
      cqt::write_matrix(out, std::visit([&](const auto& x) -> AnyMatrix { return cqt::inverse(x, cfg); }, a));
      return kExitOk;
    }
    if (*norm) {
      const AnyMatrix a = cqt::read_matrix(lhs);
      std::printf("%.17g\n", std::visit([](const auto& x) { return cqt::algebra_norm(x); }, a));
      return kExitOk;
    }
    cqt::BenchOptions opt;
    opt.cfg = cfg;
    if (*hess) {
      if (kmax < 1) throw UsageError("--kmax must be >= 1");
      return finish_bench(cqt::bench_hessenberg_exp(kmax, opt), csv);
    }
    if (*fexp) return finish_bench(cqt::bench_finite_exp(parse_sizes(sizes), opt), csv);
    if (*cont) {
      if (bench_func != "sqrt" && bench_func != "log") throw UsageError("--func must be sqrt or log");
      opt.contour = cqt::ContourSpec::circle(parse_complex(bench_center), bench_radius);
      opt.threads = bench_threads;
      return finish_bench(cqt::bench_contour(bench_func, parse_sizes(sizes), opt), csv);
    }
  } catch (const UsageError& e) {
    std::cerr << "cqt: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "cqt: " << e.what() << '\n';
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "cqt: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
