#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <string>

#include "cqt/error.hpp"
#include "cqt/io.hpp"
#include "support/oracle.hpp"

using cqt::AnyMatrix;
using cqt::CqtMatrix;
using cqt::FiniteQtMatrix;
using cqt::LaurentSymbol;

namespace {

bool same_bits(const oracle::Matrix& a, const oracle::Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j)
      if (a(i, j).real() != b(i, j).real() || a(i, j).imag() != b(i, j).imag()) return false;
  return true;
}

bool same_symbol(const LaurentSymbol& a, const LaurentSymbol& b) {
  if (a.min_deg() != b.min_deg() || a.coeffs().size() != b.coeffs().size()) return false;
  for (std::size_t k = 0; k < a.coeffs().size(); ++k)
    if (a.coeffs()[k] != b.coeffs()[k]) return false;
  return true;
}

bool same_corr(const cqt::Correction& a, const cqt::Correction& b) {
  return same_bits(a.u, b.u) && same_bits(a.v, b.v);
}

std::string error_of(const std::string& text) {
  try {
    cqt::parse(text);
  } catch (const cqt::Error& e) {
    CHECK(e.kind() == cqt::ErrorKind::MalformedFile);
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("semi-infinite round trip is bit exact") {
  oracle::Random rng(11);
  for (int t = 0; t < 20; ++t) {
    CqtMatrix a(rng.symbol(-rng.integer(0, 4), rng.integer(0, 4), rng.uniform(0.1, 9.0)),
                rng.correction(rng.integer(1, 7), rng.integer(1, 7), rng.integer(1, 3)));
    const AnyMatrix back = cqt::parse(cqt::serialize(a));
    REQUIRE(std::holds_alternative<CqtMatrix>(back));
    const auto& b = std::get<CqtMatrix>(back);
    CHECK(same_symbol(a.symbol, b.symbol));
    CHECK(same_corr(a.corr, b.corr));
  }
}

TEST_CASE("finite round trip is bit exact") {
  oracle::Random rng(12);
  for (int t = 0; t < 20; ++t) {
    FiniteQtMatrix a;
    a.m = rng.integer(8, 40);
    a.symbol = rng.symbol(-rng.integer(0, 3), rng.integer(0, 3));
    a.tl = rng.correction(rng.integer(1, 5), rng.integer(1, 5), rng.integer(1, 2));
    if (t % 3) a.br = rng.correction(rng.integer(1, 5), rng.integer(1, 5), 1);
    const AnyMatrix back = cqt::parse(cqt::serialize(a));
    REQUIRE(std::holds_alternative<FiniteQtMatrix>(back));
    const auto& b = std::get<FiniteQtMatrix>(back);
    CHECK(b.m == a.m);
    CHECK(same_symbol(a.symbol, b.symbol));
    CHECK(same_corr(a.tl, b.tl));
    CHECK(same_corr(a.br, b.br));
  }
}

TEST_CASE("identity and empty corrections") {
  const std::string text = cqt::serialize(CqtMatrix::identity());
  CHECK(text == "CQT 1 semi-infinite\nsymbol 0 1\n1 0\ncorrection 0 0 0\n");
  const auto b = std::get<CqtMatrix>(cqt::parse("# comment\n\nCQT 1 semi-infinite\nsymbol 0 1\n1 0\n\ncorrection 0 0 0\n"));
  CHECK(b.corr.is_zero());
  CHECK(b.symbol.coeff(0) == oracle::cplx{1.0});
  const auto f = std::get<FiniteQtMatrix>(cqt::parse(cqt::serialize(FiniteQtMatrix::identity(5))));
  CHECK(f.m == 5);
  CHECK(oracle::max_abs(oracle::dense(f) - oracle::Matrix::Identity(5, 5)) == 0.0);
}

TEST_CASE("malformed input names the line") {
  CHECK(error_of("") .find("line 1") != std::string::npos);
  CHECK(error_of("CQT 2 semi-infinite\n").find("unsupported format version") != std::string::npos);
  CHECK(error_of("CQT 1 semi-infinite\nsymbol 0 1\n1 zz\n").find("line 3: bad number 'zz'") !=
        std::string::npos);
  CHECK(error_of("CQT 1 semi-infinite\nsymbol 0 1\n1 0\n").find("expected correction header") !=
        std::string::npos);
  CHECK(error_of("CQT 1 semi-infinite\nsymbol 0 1\n1 0\ncorrection 1 1 1\n1 0 2\n")
            .find("line 5: expected 2 numbers, found 3") != std::string::npos);
  CHECK(error_of("CQT 1 semi-infinite\nsymbol 0 1\n1 0\ncorrection 0 0 0\nextra\n")
            .find("line 5: trailing content") != std::string::npos);
  CHECK(error_of("CQT 1 finite 3\nsymbol -3 1\n1 0\ncorrection 0 0 0\ncorrection 0 0 0\n")
            .find("(-m, m)") != std::string::npos);
  CHECK(error_of("CQT 1 semi-infinite\nsymbol 0 1\nnan 0\ncorrection 0 0 0\n").find("non-finite") !=
        std::string::npos);
  CHECK(error_of("CQT 1 toeplitz\n").find("unknown kind") != std::string::npos);
}

TEST_CASE("files carry the path in diagnostics") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto good = dir / "cqt_io_test_good.cqt";
  cqt::write_matrix(good, FiniteQtMatrix::identity(3));
  CHECK(std::get<FiniteQtMatrix>(cqt::read_matrix(good)).m == 3);
  std::filesystem::remove(good);

  const auto bad = dir / "cqt_io_test_bad.cqt";
  {
    std::FILE* f = std::fopen(bad.c_str(), "w");
    std::fputs("CQT 1 semi-infinite\nsymbol x 1\n", f);
    std::fclose(f);
  }
  try {
    cqt::read_matrix(bad);
    FAIL("expected MalformedFile");
  } catch (const cqt::Error& e) {
    const std::string msg = e.what();
    CHECK(msg.find(bad.string() + ":2:") != std::string::npos);
    CHECK(msg.find("MalformedFile") == msg.rfind("MalformedFile"));
  }
  std::filesystem::remove(bad);
  CHECK_THROWS_AS(cqt::read_matrix(dir / "cqt_io_test_missing.cqt"), cqt::Error);
}
