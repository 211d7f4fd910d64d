#include "cqt/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "cqt/error.hpp"
#include "cqt/funm_series.hpp"
#include "cqt/oracles.hpp"

namespace cqt {
namespace {

template <class F>
double timed(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <QtAlgebra T>
void describe(BenchRow& row, const T& x) {
  row.band = std::max(symbol_of(x).neg_extent(), symbol_of(x).pos_extent());
  const CorrectionShape s = correction_shape(x);
  row.rows = s.rows;
  row.columns = s.cols;
  row.rank = s.rank;
}

template <class F>
BenchRow run_case(std::string id, long size, F&& body) {
  BenchRow row;
  row.case_id = std::move(id);
  row.size = size;
  try {
    body(row);
  } catch (const Error& e) {
    row.failure = e.what();
  }
  return row;
}

std::string fmt_error(const BenchRow& r) {
  if (!r.failure.empty()) return "FAILED";
  if (!r.error) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", *r.error);
  return buf;
}

}  // namespace

std::string BenchReport::table() const {
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-16s %6s %10s %6s %6s %8s %6s %11s\n", "case", "size", "time",
                "band", "rows", "columns", "rank", "error");
  out += buf;
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%-16s %6ld %10.4f %6d %6ld %8ld %6ld %11s\n", r.case_id.c_str(),
                  r.size, r.time, r.band, static_cast<long>(r.rows), static_cast<long>(r.columns),
                  static_cast<long>(r.rank), fmt_error(r).c_str());
    out += buf;
  }
  for (const auto& r : rows) {
    if (!r.failure.empty()) out += r.case_id + " " + std::to_string(r.size) + ": " + r.failure + '\n';
  }
  return out;
}

std::string BenchReport::csv() const {
  std::string out = "case,size,time,band,rows,columns,rank,error\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%s,%ld,%.6f,%d,%ld,%ld,%ld,%s\n", r.case_id.c_str(), r.size,
                  r.time, r.band, static_cast<long>(r.rows), static_cast<long>(r.columns),
                  static_cast<long>(r.rank), fmt_error(r).c_str());
    out += buf;
  }
  return out;
}

bool BenchReport::all_ok() const {
  for (const auto& r : rows) {
    if (!r.failure.empty()) return false;
  }
  return true;
}

FiniteQtMatrix laplacian_power(Index m, int k, const ToleranceConfig& cfg) {
  if (m < 2 || k < 1) throw Error(ErrorKind::InvalidArgument, "laplacian_power needs m >= 2, k >= 1");
  const double s = 2.0 + 2.0 * std::cos(std::numbers::pi / static_cast<double>(m + 1));
  const FiniteQtMatrix h = FiniteQtMatrix::toeplitz(m, LaurentSymbol(-1, {1 / s, 2 / s, 1 / s}));
  FiniteQtMatrix p = h;
  for (int i = 1; i < k; ++i) p = fqt_mul(p, h, cfg);
  return p;
}

BenchReport bench_hessenberg_exp(int kmax, const BenchOptions& opt) {
  BenchReport rep;
  for (int k = 1; k <= kmax; ++k) {
    rep.rows.push_back(run_case("hessenberg-exp", k, [&](BenchRow& row) {
      const CqtMatrix a = CqtMatrix::toeplitz(LaurentSymbol(-1, std::vector<cplx>(static_cast<std::size_t>(k + 2), 1.0)));
      CqtMatrix f;
      row.time = timed([&] { f = funm_taylor(a, SeriesSpec::exp(), opt.cfg); });
      describe(row, f);
      const Matrix ref = dense_expm(finite_section(a, opt.dense_rows));
      row.error = (finite_section(f, opt.check_rows) - ref.topLeftCorner(opt.check_rows, opt.check_rows))
                      .cwiseAbs()
                      .maxCoeff();
    }));
  }
  return rep;
}

BenchReport bench_finite_exp(const std::vector<Index>& sizes, const BenchOptions& opt) {
  BenchReport rep;
  for (Index m : sizes) {
    rep.rows.push_back(run_case("finite-exp", static_cast<long>(m), [&](BenchRow& row) {
      const FiniteQtMatrix a = laplacian_power(m, 10, opt.cfg);
      FiniteQtMatrix f;
      row.time = timed([&] { f = funm_taylor(a, SeriesSpec::exp(), opt.cfg); });
      describe(row, f);
      const Vector ref = sine_transform_oracle(
          m, [](cplx x) { return std::exp(x); }, 0, [](double l) { return cplx{std::pow(l, 10)}; });
      row.error = (fqt_column(f, 0) - ref).norm();
    }));
  }
  return rep;
}

BenchReport bench_contour(const std::string& func, const std::vector<Index>& sizes,
                          const BenchOptions& opt) {
  std::function<cplx(cplx)> f;
  if (func == "sqrt") {
    f = [](cplx z) { return std::sqrt(z); };
  } else if (func == "log") {
    f = [](cplx z) { return std::log(z); };
  } else {
    throw Error(ErrorKind::InvalidArgument, "contour bench supports sqrt and log, not '" + func + "'");
  }
  BenchReport rep;
  for (Index m : sizes) {
    rep.rows.push_back(run_case("contour-" + func, static_cast<long>(m), [&](BenchRow& row) {
      const FiniteQtMatrix a =
          fqt_add(FiniteQtMatrix::identity(m), laplacian_power(m, 10, opt.cfg), opt.cfg);
      FiniteQtMatrix r;
      row.time = timed([&] { r = funm_contour(a, f, opt.contour, opt.cfg, nullptr, opt.threads); });
      describe(row, r);
      const Vector ref =
          sine_transform_oracle(m, f, 0, [](double l) { return cplx{1.0 + std::pow(l, 10)}; });
      row.error = (fqt_column(r, 0) - ref).norm();
    }));
  }
  return rep;
}

}  // namespace cqt
