#include "chord/spectral.hpp"

#include "chord/crystal.hpp"
#include "chord/errors.hpp"

#include <sstream>
#include <utility>

namespace chord {

IntMatrix IntMatrix::identity(int size) {
  IntMatrix m(size, size);
  for (int i = 0; i < size; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

std::int64_t IntMatrix::trace() const {
  std::int64_t t = 0;
  for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

bool IntMatrix::is_zero() const {
  for (auto x : data_)
    if (x != 0) return false;
  return true;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch in product");
  IntMatrix c(a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int l = 0; l < a.cols_; ++l) {
      const std::int64_t x = a(i, l);
      if (x == 0) continue;
      for (int j = 0; j < b.cols_; ++j) c(i, j) += x * b(l, j);
    }
  return c;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch in sum");
  IntMatrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
  return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) { return a + (-1) * b; }

IntMatrix operator*(std::int64_t s, const IntMatrix& a) {
  IntMatrix c = a;
  for (auto& x : c.data_) x *= s;
  return c;
}

GraphMatrices build_matrices(int k) {
  if (k < 2) throw DomainError("graph matrices need k >= 2");
  const auto edges = complete_graph_edges(k);
  const int V = k + 1;
  const int E = static_cast<int>(edges.size());
  GraphMatrices g;
  g.k = k;
  g.edges = E;
  g.A = IntMatrix(V, V);
  for (int i = 0; i < V; ++i)
    for (int j = 0; j < V; ++j) g.A(i, j) = i != j;
  g.B = IntMatrix(V, E);
  for (int e = 0; e < E; ++e) {
    g.B(edges[static_cast<std::size_t>(e)].first, e) = 1;
    g.B(edges[static_cast<std::size_t>(e)].second, e) = 1;
  }
  // Two edges are adjacent in the line graph when they share an endpoint.
  g.L = IntMatrix(E, E);
  for (int e = 0; e < E; ++e)
    for (int f = 0; f < E; ++f) {
      if (e == f) continue;
      auto [a, b] = edges[static_cast<std::size_t>(e)];
      auto [c, d] = edges[static_cast<std::size_t>(f)];
      g.L(e, f) = a == c || a == d || b == c || b == d;
    }
  g.M = (k - 2) * IntMatrix::identity(E) - g.L;

  const IntMatrix Bt = g.B.transpose();
  if (!(g.B * Bt == k * IntMatrix::identity(V) + g.A)) throw ContractViolation("B B^T != kI + A");
  if (!(Bt * g.B == 2 * IntMatrix::identity(E) + g.L)) throw ContractViolation("B^T B != 2I + L");
  return g;
}

// ---------------------------------------------------------------------------

BigInt determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const int size = m.rows();
  if (size == 0) return 1;
  std::vector<std::vector<BigInt>> a(static_cast<std::size_t>(size), std::vector<BigInt>(static_cast<std::size_t>(size)));
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j);
  BigInt previous = 1;
  int sign = 1;
  for (int p = 0; p < size - 1; ++p) {
    auto P = static_cast<std::size_t>(p);
    if (a[P][P] == 0) {
      int swap_row = -1;
      for (int r = p + 1; r < size; ++r)
        if (a[static_cast<std::size_t>(r)][P] != 0) {
          swap_row = r;
          break;
        }
      if (swap_row < 0) return 0;
      std::swap(a[P], a[static_cast<std::size_t>(swap_row)]);
      sign = -sign;
    }
    for (int i = p + 1; i < size; ++i)
      for (int j = p + 1; j < size; ++j) {
        auto I = static_cast<std::size_t>(i), J = static_cast<std::size_t>(j);
        a[I][J] = (a[I][J] * a[P][P] - a[I][P] * a[P][J]) / previous;  // exact by Sylvester's identity
      }
    previous = a[P][P];
  }
  BigInt det = a.back().back();
  return sign > 0 ? det : BigInt(-det);
}

std::vector<Rational> solve_exact(const IntMatrix& m, std::span<const std::int64_t> rhs) {
  const int size = m.rows();
  if (m.cols() != size || static_cast<int>(rhs.size()) != size) throw std::invalid_argument("solve shape mismatch");
  std::vector<std::vector<Rational>> a(static_cast<std::size_t>(size), std::vector<Rational>(static_cast<std::size_t>(size + 1)));
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j < size; ++j) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j);
    a[static_cast<std::size_t>(i)][static_cast<std::size_t>(size)] = rhs[static_cast<std::size_t>(i)];
  }
  for (int p = 0; p < size; ++p) {
    auto P = static_cast<std::size_t>(p);
    int pivot = -1;
    for (int r = p; r < size; ++r)
      if (a[static_cast<std::size_t>(r)][P] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) throw ContractViolation("singular system in exact solve");
    std::swap(a[P], a[static_cast<std::size_t>(pivot)]);
    for (int r = 0; r < size; ++r) {
      auto R = static_cast<std::size_t>(r);
      if (r == p || a[R][P] == 0) continue;
      const Rational factor = a[R][P] / a[P][P];
      for (int c = p; c <= size; ++c) a[R][static_cast<std::size_t>(c)] -= factor * a[P][static_cast<std::size_t>(c)];
    }
  }
  std::vector<Rational> x(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i)
    x[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(size)] / a[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
  return x;
}

// ---------------------------------------------------------------------------

namespace {

std::string describe(const std::vector<Eigenvalue>& spectrum) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < spectrum.size(); ++i)
    os << (i ? ", " : "") << to_decimal(spectrum[i].value) << ":" << spectrum[i].multiplicity;
  os << "}";
  return os.str();
}

// Certifies the spectrum of a symmetric integer matrix X against distinct
// claimed eigenvalues: prod (X - lambda I) = 0 bounds the spectrum to the
// claimed values, and tr(X^p) = sum m_i lambda_i^p for p < r fixes the
// multiplicities through a Vandermonde solve.
SpectrumReport certify(std::string name, int k, const IntMatrix& X, std::vector<Eigenvalue> claimed) {
  SpectrumReport report;
  report.matrix = std::move(name);
  report.k = k;
  report.claimed = std::move(claimed);
  const int size = X.rows();
  const int r = static_cast<int>(report.claimed.size());

  IntMatrix annihilator = IntMatrix::identity(size);
  for (const auto& e : report.claimed) {
    const auto lambda = static_cast<std::int64_t>(boost::multiprecision::numerator(e.value));
    annihilator = annihilator * (X - lambda * IntMatrix::identity(size));
  }
  const bool annihilated = annihilator.is_zero();

  IntMatrix vandermonde(r, r);
  std::vector<std::int64_t> traces(static_cast<std::size_t>(r));
  IntMatrix power = IntMatrix::identity(size);
  for (int p = 0; p < r; ++p) {
    traces[static_cast<std::size_t>(p)] = power.trace();
    for (int i = 0; i < r; ++i) {
      std::int64_t lp = 1;
      const auto lambda = static_cast<std::int64_t>(boost::multiprecision::numerator(report.claimed[static_cast<std::size_t>(i)].value));
      for (int t = 0; t < p; ++t) lp *= lambda;
      vandermonde(p, i) = lp;
    }
    power = power * X;
  }
  const auto multiplicities = solve_exact(vandermonde, traces);
  bool multiplicities_match = true;
  std::ostringstream os;
  os << "annihilator " << (annihilated ? "vanishes" : "NONZERO") << "; traces p=0.." << r - 1 << " give multiplicities [";
  for (int i = 0; i < r; ++i) {
    const Rational& m = multiplicities[static_cast<std::size_t>(i)];
    os << (i ? ", " : "") << to_decimal(m);
    multiplicities_match = multiplicities_match && m == report.claimed[static_cast<std::size_t>(i)].multiplicity;
  }
  os << "] vs claimed " << describe(report.claimed);
  report.verified = annihilated && multiplicities_match;
  report.certificate = os.str();
  return report;
}

Eigenvalue ev(std::int64_t value, std::int64_t multiplicity) { return {Rational(value), multiplicity}; }

}  // namespace

SpectrumReport verify_spectrum_A(int k) {
  const auto g = build_matrices(k);
  return certify("A", k, g.A, {ev(k, 1), ev(-1, k)});
}

SpectrumReport verify_spectrum_BBt(int k) {
  const auto g = build_matrices(k);
  return certify("BBt", k, g.B * g.B.transpose(), {ev(2 * k, 1), ev(k - 1, k)});
}

SpectrumReport verify_spectrum_L(int k) {
  const auto g = build_matrices(k);
  return certify("L", k, g.L, {ev(2 * (k - 1), 1), ev(k - 3, k), ev(-2, (k + 1) * (k - 2) / 2)});
}

SpectrumReport verify_spectrum_M(int k) {
  const auto g = build_matrices(k);
  return certify("M", k, g.M, {ev(-k, 1), ev(1, k), ev(k, (k + 1) * (k - 2) / 2)});
}

Rational grand_sum_inverse(int k) {
  const auto g = build_matrices(k);
  const std::vector<std::int64_t> ones(static_cast<std::size_t>(g.edges), 1);
  // Eigenvector route: M j = -k j gives j^T M^{-1} j = -E / k.
  for (int i = 0; i < g.edges; ++i) {
    std::int64_t row = 0;
    for (int j = 0; j < g.edges; ++j) row += g.M(i, j);
    if (row != -k) throw ContractViolation("j is not an eigenvector of M with eigenvalue -k");
  }
  const Rational by_eigenvector(-g.edges, k);
  Rational by_solve = 0;
  for (const auto& x : solve_exact(g.M, ones)) by_solve += x;
  if (by_solve != by_eigenvector) throw ContractViolation("grand sum routes disagree");
  return by_solve;
}

Rational corollary_product(int k) {
  const auto g = build_matrices(k);
  return grand_sum_inverse(k) * Rational(determinant(g.M));
}

SpectrumReport verify_grand_sum_and_product(int k) {
  SpectrumReport report;
  report.matrix = "M^-1 grand sum";
  report.k = k;
  const auto g = build_matrices(k);
  const Rational grand = grand_sum_inverse(k);
  const BigInt det = determinant(g.M);
  const Rational product = grand * Rational(det);

  const int big = (k + 1) * (k - 2) / 2;
  BigInt eigen_det = -BigInt(k) * boost::multiprecision::pow(BigInt(k), static_cast<unsigned>(big));
  const Rational grand_claim(-(k + 1), 2);
  const Rational product_claim(BigInt(k + 1) * boost::multiprecision::pow(BigInt(k), static_cast<unsigned>(k * (k - 1) / 2)), BigInt(2));
  report.claimed = {{grand_claim, 1}, {product_claim, 1}};
  report.verified = grand == grand_claim && det == eigen_det && product == product_claim;
  std::ostringstream os;
  os << "grand sum " << to_decimal(grand) << " (claimed " << to_decimal(grand_claim) << "); det M "
     << to_decimal(det) << " (eigenvalue product " << to_decimal(eigen_det) << "); product "
     << to_decimal(product) << " (claimed " << to_decimal(product_claim) << ")";
  report.certificate = os.str();
  return report;
}

std::vector<SpectrumReport> spectral_certificates(int k) {
  return {verify_spectrum_A(k), verify_spectrum_BBt(k), verify_spectrum_L(k), verify_spectrum_M(k),
          verify_grand_sum_and_product(k)};
}

}  // namespace chord
