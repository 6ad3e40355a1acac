#include "iscp/simplex.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace iscp::lp {

namespace {

// Tableau layout follows the usual "dictionary" form: m constraint rows,
// row m is the objective, row m+1 the phase-one objective. Column n holds
// the artificial variable, column n+1 the right-hand side.
class Tableau {
 public:
  Tableau(const std::vector<std::vector<double>>& a,
          const std::vector<double>& b, const std::vector<double>& c,
          double eps)
      : m_(b.size()),
        n_(c.size()),
        eps_(eps),
        basis_(m_),
        nonbasis_(n_ + 1),
        d_(m_ + 2, std::vector<double>(n_ + 2, 0.0)) {
    for (std::size_t i = 0; i < m_; ++i) {
      if (a[i].size() != n_) throw std::invalid_argument("ragged LP rows");
      for (std::size_t j = 0; j < n_; ++j) d_[i][j] = a[i][j];
      d_[i][n_] = -1.0;
      d_[i][n_ + 1] = b[i];
      basis_[i] = n_ + i;
    }
    for (std::size_t j = 0; j < n_; ++j) {
      nonbasis_[j] = j;
      d_[m_][j] = -c[j];
    }
    nonbasis_[n_] = kArtificial;
    d_[m_ + 1][n_] = 1.0;
  }

  Result solve() {
    Result result;
    std::size_t r = 0;
    for (std::size_t i = 1; i < m_; ++i) {
      if (d_[i][n_ + 1] < d_[r][n_ + 1]) r = i;
    }
    if (m_ > 0 && d_[r][n_ + 1] < -eps_) {
      pivot(r, n_);
      if (!run(1) || d_[m_ + 1][n_ + 1] < -eps_) {
        result.status = Status::kInfeasible;
        return result;
      }
      for (std::size_t i = 0; i < m_; ++i) {
        if (basis_[i] == kArtificial) {
          std::size_t s = 0;
          for (std::size_t j = 1; j <= n_; ++j) {
            if (entering_better(j, s, i)) s = j;
          }
          pivot(i, s);
        }
      }
    }
    if (!run(2)) {
      result.status = Status::kUnbounded;
      result.value = std::numeric_limits<double>::infinity();
      return result;
    }
    result.status = Status::kOptimal;
    result.x.assign(n_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) result.x[basis_[i]] = d_[i][n_ + 1];
    }
    result.value = d_[m_][n_ + 1];
    return result;
  }

 private:
  static constexpr std::size_t kArtificial =
      std::numeric_limits<std::size_t>::max();

  bool entering_better(std::size_t j, std::size_t s, std::size_t row) const {
    const double dj = d_[row][j];
    const double ds = d_[row][s];
    if (dj < ds) return true;
    return dj == ds && nonbasis_[j] < nonbasis_[s];
  }

  void pivot(std::size_t r, std::size_t s) {
    const double inv = 1.0 / d_[r][s];
    for (std::size_t i = 0; i < m_ + 2; ++i) {
      if (i == r || std::abs(d_[i][s]) <= 0.0) continue;
      const double factor = d_[i][s] * inv;
      for (std::size_t j = 0; j < n_ + 2; ++j) d_[i][j] -= d_[r][j] * factor;
      d_[i][s] = -factor;
    }
    for (std::size_t j = 0; j < n_ + 2; ++j) d_[r][j] *= inv;
    d_[r][s] = inv;
    std::swap(basis_[r], nonbasis_[s]);
  }

  // Bland's rule on the phase objective row.
  bool run(int phase) {
    const std::size_t x = phase == 1 ? m_ + 1 : m_;
    for (;;) {
      std::size_t s = n_ + 1;
      for (std::size_t j = 0; j <= n_; ++j) {
        if (phase == 2 && nonbasis_[j] == kArtificial) continue;
        if (d_[x][j] >= -eps_) continue;
        if (s == n_ + 1 || nonbasis_[j] < nonbasis_[s]) s = j;
      }
      if (s == n_ + 1) return true;
      std::size_t r = m_;
      for (std::size_t i = 0; i < m_; ++i) {
        if (d_[i][s] <= eps_) continue;
        if (r == m_) {
          r = i;
          continue;
        }
        const double lhs = d_[i][n_ + 1] / d_[i][s];
        const double rhs = d_[r][n_ + 1] / d_[r][s];
        if (lhs < rhs - eps_ ||
            (std::abs(lhs - rhs) <= eps_ && basis_[i] < basis_[r])) {
          r = i;
        }
      }
      if (r == m_) return false;
      pivot(r, s);
    }
  }

  std::size_t m_;
  std::size_t n_;
  double eps_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> nonbasis_;
  std::vector<std::vector<double>> d_;
};

}  // namespace

Result maximize(const std::vector<std::vector<double>>& rows,
                const std::vector<double>& rhs,
                const std::vector<double>& objective, double eps) {
  if (rows.size() != rhs.size()) {
    throw std::invalid_argument("LP row/rhs count mismatch");
  }
  Tableau tableau(rows, rhs, objective, eps);
  return tableau.solve();
}

}  // namespace iscp::lp
