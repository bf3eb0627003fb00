#include <coorbitsym/errors.hpp>
#include <coorbitsym/rational_matrix.hpp>

#include <algorithm>
#include <cctype>
#include <sstream>
#include <utility>

namespace coorbitsym {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  if (s.empty()) throw ParseError("empty rational literal");

  auto parse_integer = [&](const std::string& part) {
    std::size_t start = (part[0] == '-' || part[0] == '+') ? 1 : 0;
    if (start == part.size() ||
        !std::all_of(part.begin() + start, part.end(), [](unsigned char c) { return std::isdigit(c); })) {
      throw ParseError("malformed rational literal: '" + s + "'");
    }
    return mpz_class(part[0] == '+' ? part.substr(1) : part, 10);
  };

  if (auto slash = s.find('/'); slash != std::string::npos) {
    mpz_class num = parse_integer(s.substr(0, slash));
    mpz_class den = parse_integer(s.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + s + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string whole = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    bool negative = !whole.empty() && whole[0] == '-';
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    if (frac.empty() || !std::all_of(frac.begin(), frac.end(), [](unsigned char c) { return std::isdigit(c); })) {
      throw ParseError("malformed decimal literal: '" + s + "'");
    }
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    mpz_class integral = parse_integer(whole);
    mpz_class fractional(frac, 10);
    mpz_class num = abs(integral) * scale + fractional;
    if (negative) num = -num;
    Rational q(num, scale);
    q.canonicalize();
    return q;
  }
  return Rational(parse_integer(s));
}

Rational make_rational(long p, long q) {
  if (q == 0) throw ParseError("zero denominator");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) { return value.get_str(); }

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

RationalMatrix::RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  entries_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("ragged matrix literal");
    entries_.insert(entries_.end(), r.begin(), r.end());
  }
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::unit(std::size_t rows, std::size_t cols, std::size_t i, std::size_t j) {
  RationalMatrix m(rows, cols);
  m(i, j) = 1;
  return m;
}

RationalMatrix RationalMatrix::diagonal(std::span<const Rational> entries) {
  RationalMatrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

RationalVector RationalMatrix::column(std::size_t j) const {
  RationalVector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

RationalMatrix RationalMatrix::block(std::size_t row0, std::size_t col0, std::size_t nrows,
                                     std::size_t ncols) const {
  if (row0 + nrows > rows_ || col0 + ncols > cols_) throw DimensionError("block out of range");
  RationalMatrix b(nrows, ncols);
  for (std::size_t i = 0; i < nrows; ++i)
    for (std::size_t j = 0; j < ncols; ++j) b(i, j) = (*this)(row0 + i, col0 + j);
  return b;
}

void RationalMatrix::set_block(std::size_t row0, std::size_t col0, const RationalMatrix& b) {
  if (row0 + b.rows() > rows_ || col0 + b.cols() > cols_) throw DimensionError("block out of range");
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) (*this)(row0 + i, col0 + j) = b(i, j);
}

bool RationalMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Rational& q) { return q == 0; });
}

bool RationalMatrix::is_strictly_upper_triangular() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      if ((*this)(i, j) != 0) return false;
  return true;
}

RationalMatrix& RationalMatrix::operator+=(const RationalMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionError("shape mismatch in addition");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += other.entries_[k];
  return *this;
}

RationalMatrix& RationalMatrix::operator-=(const RationalMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionError("shape mismatch in subtraction");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= other.entries_[k];
  return *this;
}

RationalMatrix& RationalMatrix::operator*=(const Rational& scalar) {
  for (auto& e : entries_) e *= scalar;
  return *this;
}

RationalMatrix operator+(RationalMatrix a, const RationalMatrix& b) { return a += b; }
RationalMatrix operator-(RationalMatrix a, const RationalMatrix& b) { return a -= b; }
RationalMatrix operator*(const Rational& s, RationalMatrix a) { return a *= s; }

RationalMatrix mat_mul(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("cannot multiply " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                         " by " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  RationalMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Rational& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

RationalVector mat_vec(const RationalMatrix& a, std::span<const Rational> x) {
  if (a.cols() != x.size()) throw DimensionError("matrix-vector size mismatch");
  RationalVector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
  return y;
}

RationalMatrix mat_inverse(const RationalMatrix& a) {
  if (!a.is_square()) throw DimensionError("inverse of a non-square matrix");
  const std::size_t n = a.rows();
  RationalMatrix work = a;
  RationalMatrix inv = RationalMatrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && work(pivot, col) == 0) ++pivot;
    if (pivot == n) throw SingularMatrixError("matrix is singular");
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(work(pivot, j), work(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    }
    const Rational scale = 1 / work(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      work(col, j) *= scale;
      inv(col, j) *= scale;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || work(i, col) == 0) continue;
      const Rational f = work(i, col);
      for (std::size_t j = 0; j < n; ++j) {
        work(i, j) -= f * work(col, j);
        inv(i, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

Rational trace(const RationalMatrix& a) {
  if (!a.is_square()) throw DimensionError("trace of a non-square matrix");
  Rational t = 0;
  for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

RationalMatrix mat_power(const RationalMatrix& a, unsigned exponent) {
  if (!a.is_square()) throw DimensionError("power of a non-square matrix");
  RationalMatrix result = RationalMatrix::identity(a.rows());
  RationalMatrix base = a;
  while (exponent > 0) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1U;
    if (exponent > 0) base = base * base;
  }
  return result;
}

RationalMatrix commutator(const RationalMatrix& a, const RationalMatrix& b) { return a * b - b * a; }

namespace {

// Row echelon form of an integer matrix by Bareiss' fraction-free elimination.
// Every division is exact. Returns the pivot column of each nonzero row.
std::vector<std::size_t> bareiss_echelon(std::vector<std::vector<mpz_class>>& m, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  mpz_class previous = 1;
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
    std::size_t p = row;
    while (p < m.size() && m[p][col] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[row]);
    for (std::size_t i = row + 1; i < m.size(); ++i) {
      for (std::size_t j = col + 1; j < ncols; ++j) {
        m[i][j] = m[row][col] * m[i][j] - m[i][col] * m[row][j];
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), previous.get_mpz_t());
      }
      m[i][col] = 0;
    }
    previous = m[row][col];
    pivots.push_back(col);
    ++row;
  }
  m.resize(row);
  return pivots;
}

std::vector<std::vector<mpz_class>> integer_rows(std::span<const RationalVector> rows, std::size_t dimension) {
  std::vector<std::vector<mpz_class>> out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    if (r.size() != dimension) throw DimensionError("constraint length does not match the unknown count");
    mpz_class scale = 1;
    for (const auto& q : r) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), q.get_den_mpz_t());
    std::vector<mpz_class> ints(dimension);
    bool nonzero = false;
    for (std::size_t j = 0; j < dimension; ++j) {
      ints[j] = r[j].get_num() * (scale / r[j].get_den());
      nonzero = nonzero || ints[j] != 0;
    }
    if (nonzero) out.push_back(std::move(ints));
  }
  return out;
}

}  // namespace

std::vector<RationalVector> solve_linear_subspace(std::span<const RationalVector> constraint_rows,
                                                  std::size_t dimension) {
  auto m = integer_rows(constraint_rows, dimension);
  const auto pivots = bareiss_echelon(m, dimension);

  std::vector<bool> is_pivot(dimension, false);
  for (auto c : pivots) is_pivot[c] = true;

  std::vector<RationalVector> basis;
  for (std::size_t free = 0; free < dimension; ++free) {
    if (is_pivot[free]) continue;
    RationalVector x(dimension);
    x[free] = 1;
    for (std::size_t k = pivots.size(); k-- > 0;) {
      const std::size_t pc = pivots[k];
      Rational acc = 0;
      for (std::size_t j = pc + 1; j < dimension; ++j) {
        if (m[k][j] != 0 && x[j] != 0) acc += Rational(m[k][j]) * x[j];
      }
      x[pc] = -acc / Rational(m[k][pc]);
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

std::vector<RationalVector> kernel(const RationalMatrix& a) {
  std::vector<RationalVector> rows;
  rows.reserve(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) rows.emplace_back(a.row(i).begin(), a.row(i).end());
  return solve_linear_subspace(rows, a.cols());
}

std::size_t rank(const RationalMatrix& a) { return a.cols() - kernel(a).size(); }

Rational determinant(const RationalMatrix& a) {
  if (!a.is_square()) throw DimensionError("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  RationalMatrix w = a;
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && w(p, col) == 0) ++p;
    if (p == n) return 0;
    if (p != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(w(p, j), w(col, j));
      det = -det;
    }
    det *= w(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      if (w(i, col) == 0) continue;
      const Rational f = w(i, col) / w(col, col);
      for (std::size_t j = col; j < n; ++j) w(i, j) -= f * w(col, j);
    }
  }
  return det;
}

std::optional<RationalVector> span_coordinates(std::span<const RationalMatrix> basis,
                                               const RationalMatrix& target) {
  const std::size_t entries = target.rows() * target.cols();
  const std::size_t k = basis.size();
  // Columns: basis elements, then the negated target; a kernel vector with
  // last coordinate 1 gives the coordinates.
  RationalMatrix system(entries, k + 1);
  for (std::size_t b = 0; b < k; ++b) {
    if (basis[b].rows() != target.rows() || basis[b].cols() != target.cols())
      throw DimensionError("span membership with mismatched shapes");
    for (std::size_t e = 0; e < entries; ++e) system(e, b) = basis[b].entries()[e];
  }
  for (std::size_t e = 0; e < entries; ++e) system(e, k) = -target.entries()[e];
  for (const auto& v : kernel(system)) {
    if (v[k] != 0) {
      RationalVector coords(k);
      for (std::size_t b = 0; b < k; ++b) coords[b] = v[b] / v[k];
      return coords;
    }
  }
  return std::nullopt;
}

RationalMatrix reshape(std::span<const Rational> flat, std::size_t rows, std::size_t cols) {
  if (flat.size() != rows * cols) throw DimensionError("reshape size mismatch");
  RationalMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = flat[i * cols + j];
  return m;
}

std::string to_string(const RationalMatrix& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << to_string(m(i, j));
    os << ']';
  }
  os << ']';
  return os.str();
}

}  // namespace coorbitsym
