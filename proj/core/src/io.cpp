#include "cqt/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "cqt/error.hpp"

namespace cqt {
namespace {

constexpr int kFormatVersion = 1;

void put(std::string& out, double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  out += buf;
}

void put_pair(std::string& out, cplx z) {
  put(out, z.real());
  out += ' ';
  put(out, z.imag());
}

void put_symbol(std::string& out, const LaurentSymbol& s) {
  out += "symbol " + std::to_string(s.min_deg()) + ' ' + std::to_string(s.coeffs().size()) + '\n';
  for (const cplx& c : s.coeffs()) {
    put_pair(out, c);
    out += '\n';
  }
}

void put_rows(std::string& out, const Matrix& m) {
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index k = 0; k < m.cols(); ++k) {
      if (k > 0) out += ' ';
      put_pair(out, m(i, k));
    }
    out += '\n';
  }
}

void put_correction(std::string& out, const Correction& e) {
  if (e.is_zero()) {
    out += "correction 0 0 0\n";
    return;
  }
  out += "correction " + std::to_string(e.rows()) + ' ' + std::to_string(e.cols()) + ' ' +
         std::to_string(e.rank()) + '\n';
  put_rows(out, e.u);
  put_rows(out, e.v);
}

// Line reader with 1-based numbering that skips blanks and comments.
class Lines {
 public:
  Lines(std::string_view text, std::string source) : text_(text), source_(std::move(source)) {}

  std::vector<std::string_view> next(const char* what) {
    while (pos_ <= text_.size()) {
      const std::size_t end = std::min(text_.find('\n', pos_), text_.size());
      std::string_view line = text_.substr(pos_, end - pos_);
      pos_ = end + 1;
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      auto tokens = split(line);
      if (tokens.empty() || tokens.front().front() == '#') continue;
      return tokens;
    }
    fail(std::string("unexpected end of file, expected ") + what);
  }

  // True if only blanks and comments remain.  Otherwise the reader stops on
  // the first content line so a following fail() names it.
  bool at_end() {
    while (pos_ <= text_.size()) {
      const std::size_t end = std::min(text_.find('\n', pos_), text_.size());
      auto tokens = split(text_.substr(pos_, end - pos_));
      pos_ = end + 1;
      ++line_no_;
      if (!tokens.empty() && tokens.front().front() != '#') return false;
    }
    return true;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    const std::string where = source_.empty() ? "line " : source_ + ":";
    throw Error(ErrorKind::MalformedFile, where + std::to_string(line_no_) + ": " + msg);
  }

  long integer(std::string_view tok, const char* field) const {
    long v = 0;
    const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || p != tok.data() + tok.size()) {
      fail(std::string("bad integer for ") + field + ": '" + std::string(tok) + "'");
    }
    return v;
  }

  double real(std::string_view tok) const {
    const std::string s(tok);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || s.empty()) fail("bad number '" + s + "'");
    if (!std::isfinite(v)) fail("non-finite number '" + s + "'");
    return v;
  }

 private:
  static std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      const std::size_t start = i;
      while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
      if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
  }

  std::string_view text_;
  std::string source_;
  std::size_t pos_ = 0;
  std::size_t line_no_ = 0;
};

LaurentSymbol read_symbol(Lines& in) {
  const auto head = in.next("symbol header");
  if (head.size() != 3 || head[0] != "symbol") in.fail("expected 'symbol <min_deg> <count>'");
  const long lo = in.integer(head[1], "min_deg");
  const long count = in.integer(head[2], "count");
  if (count < 0) in.fail("negative coefficient count");
  std::vector<cplx> c;
  c.reserve(static_cast<std::size_t>(count));
  for (long k = 0; k < count; ++k) {
    const auto t = in.next("symbol coefficient");
    if (t.size() != 2) in.fail("expected '<re> <im>'");
    c.emplace_back(in.real(t[0]), in.real(t[1]));
  }
  return {static_cast<int>(lo), std::move(c)};
}

Matrix read_rows(Lines& in, long rows, long rank) {
  Matrix m(rows, rank);
  for (long i = 0; i < rows; ++i) {
    const auto t = in.next("factor row");
    if (static_cast<long>(t.size()) != 2 * rank) {
      in.fail("expected " + std::to_string(2 * rank) + " numbers, found " + std::to_string(t.size()));
    }
    for (long k = 0; k < rank; ++k) m(i, k) = {in.real(t[2 * k]), in.real(t[2 * k + 1])};
  }
  return m;
}

Correction read_correction(Lines& in) {
  const auto head = in.next("correction header");
  if (head.size() != 4 || head[0] != "correction") in.fail("expected 'correction <p> <q> <r>'");
  const long p = in.integer(head[1], "p");
  const long q = in.integer(head[2], "q");
  const long r = in.integer(head[3], "r");
  if (p < 0 || q < 0 || r < 0) in.fail("negative correction size");
  if (r == 0 || p == 0 || q == 0) {
    if (p != 0 || q != 0 || r != 0) in.fail("an empty correction is written 'correction 0 0 0'");
    return {};
  }
  Matrix u = read_rows(in, p, r);
  Matrix v = read_rows(in, q, r);
  return {std::move(u), std::move(v)};
}

}  // namespace

std::string serialize(const CqtMatrix& a) {
  std::string out = "CQT " + std::to_string(kFormatVersion) + " semi-infinite\n";
  put_symbol(out, a.symbol);
  put_correction(out, a.corr);
  return out;
}

std::string serialize(const FiniteQtMatrix& a) {
  std::string out = "CQT " + std::to_string(kFormatVersion) + " finite " + std::to_string(a.m) + '\n';
  put_symbol(out, a.symbol);
  put_correction(out, a.tl);
  put_correction(out, a.br);
  return out;
}

std::string serialize(const AnyMatrix& a) {
  return std::visit([](const auto& x) { return serialize(x); }, a);
}

namespace {

AnyMatrix parse_from(std::string_view text, std::string source) {
  Lines in(text, std::move(source));
  const auto head = in.next("header");
  if (head.size() < 3 || head[0] != "CQT") in.fail("missing 'CQT <version> <kind>' header");
  if (in.integer(head[1], "version") != kFormatVersion) {
    in.fail("unsupported format version '" + std::string(head[1]) + "'");
  }
  AnyMatrix result;
  if (head[2] == "semi-infinite" && head.size() == 3) {
    CqtMatrix a;
    a.symbol = read_symbol(in);
    a.corr = read_correction(in);
    result = std::move(a);
  } else if (head[2] == "finite" && head.size() == 4) {
    const long m = in.integer(head[3], "m");
    if (m < 1) in.fail("finite size must be >= 1");
    FiniteQtMatrix a;
    a.m = m;
    a.symbol = read_symbol(in);
    if (!a.symbol.is_zero() && (a.symbol.min_deg() <= -m || a.symbol.max_deg() >= m)) {
      in.fail("symbol degrees must lie in (-m, m)");
    }
    a.tl = read_correction(in);
    a.br = read_correction(in);
    if (a.tl.rows() > m || a.tl.cols() > m || a.br.rows() > m || a.br.cols() > m) {
      in.fail("corner correction larger than the matrix");
    }
    result = std::move(a);
  } else {
    in.fail("unknown kind '" + std::string(head[2]) + "'");
  }
  if (!in.at_end()) in.fail("trailing content after the last correction block");
  return result;
}

}  // namespace

AnyMatrix parse(std::string_view text) { return parse_from(text, {}); }

AnyMatrix read_matrix(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::MalformedFile, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_from(ss.str(), path.string());
}

void write_matrix(const std::filesystem::path& path, const AnyMatrix& a) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write '" + path.string() + "'");
  f << serialize(a);
  if (!f) throw Error(ErrorKind::InvalidArgument, "write to '" + path.string() + "' failed");
}

}  // namespace cqt
