#include "girthgen/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace girthgen {

DenseSymMatrix::DenseSymMatrix(std::size_t n, double fill) : n_(n), data_(n * n, fill) {}

DenseSymMatrix DenseSymMatrix::identity(std::size_t n) {
  DenseSymMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = 1.0;
  }
  return m;
}

DenseSymMatrix DenseSymMatrix::adjacency(const Graph &g) {
  DenseSymMatrix m(g.order());
  for (const Edge &e : g.edges()) {
    m(e.u, e.v) = 1.0;
    m(e.v, e.u) = 1.0;
  }
  return m;
}

void DenseSymMatrix::symmetrize() {
  // Tiled so the mirrored reads stay in cache.
  constexpr std::size_t tile = 64;
  for (std::size_t bi = 0; bi < n_; bi += tile) {
    const std::size_t ei = std::min(n_, bi + tile);
    for (std::size_t bj = bi; bj < n_; bj += tile) {
      const std::size_t ej = std::min(n_, bj + tile);
      for (std::size_t i = bi; i < ei; ++i) {
        for (std::size_t j = std::max(bj, i + 1); j < ej; ++j) {
          const double mean = 0.5 * (data_[i * n_ + j] + data_[j * n_ + i]);
          data_[i * n_ + j] = mean;
          data_[j * n_ + i] = mean;
        }
      }
    }
  }
}

double DenseSymMatrix::max_asymmetry() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      worst = std::max(worst, std::abs(data_[i * n_ + j] - data_[j * n_ + i]));
    }
  }
  return worst;
}

DenseSymMatrix DenseSymMatrix::commuting_product(const DenseSymMatrix &rhs) const {
  if (rhs.n_ != n_) {
    throw std::invalid_argument("commuting_product: dimension mismatch");
  }
  DenseSymMatrix out(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    auto dst = out.row(i);
    for (std::size_t l = 0; l < n_; ++l) {
      const double a = data_[i * n_ + l];
      if (a == 0.0) {
        continue;
      }
      auto src = rhs.row(l);
      for (std::size_t j = 0; j < n_; ++j) {
        dst[j] += a * src[j];
      }
    }
  }
  out.symmetrize();
  return out;
}

DenseSymMatrix &DenseSymMatrix::operator+=(const DenseSymMatrix &rhs) {
  if (rhs.n_ != n_) {
    throw std::invalid_argument("operator+=: dimension mismatch");
  }
  for (std::size_t idx = 0; idx < data_.size(); ++idx) {
    data_[idx] += rhs.data_[idx];
  }
  return *this;
}

double max_abs_diff(const DenseSymMatrix &a, const DenseSymMatrix &b) {
  if (a.n_ != b.n_) {
    throw std::invalid_argument("max_abs_diff: dimension mismatch");
  }
  double worst = 0.0;
  for (std::size_t idx = 0; idx < a.data_.size(); ++idx) {
    worst = std::max(worst, std::abs(a.data_[idx] - b.data_[idx]));
  }
  return worst;
}

PowerCache::PowerCache(std::size_t n, int k) : n_(n), k_(k) {
  if (k < 2 || k > kMaxGirthParameter) {
    throw std::invalid_argument("PowerCache: k must be in [2, 10], got " + std::to_string(k));
  }
  if (n == 0 || n > kMaxVertices) {
    throw std::invalid_argument("PowerCache: vertex count out of range");
  }
  powers_.assign(static_cast<std::size_t>(k - 1), DenseSymMatrix(n));
  row_sums_.assign(static_cast<std::size_t>(k - 1), std::vector<double>(n, 0.0));
}

PowerCache PowerCache::from_graph(const Graph &g, int k) {
  PowerCache cache(g.order(), k);
  cache.powers_[0] = DenseSymMatrix::adjacency(g);
  for (std::size_t r = 1; r < cache.powers_.size(); ++r) {
    cache.powers_[r] = cache.powers_[r - 1].commuting_product(cache.powers_[0]);
  }
  for (std::size_t r = 0; r < cache.powers_.size(); ++r) {
    for (std::size_t a = 0; a < g.order(); ++a) {
      double acc = 0.0;
      for (double v : cache.powers_[r].row(a)) {
        acc += v;
      }
      cache.row_sums_[r][a] = acc;
    }
  }
  cache.edges_ = g.size();
  return cache;
}

namespace {

/// Vector with the positions of its nonzero entries.
struct SparseColumn {
  std::vector<double> values;
  std::vector<std::size_t> support;

  explicit SparseColumn(std::vector<double> v) : values(std::move(v)) {
    for (std::size_t a = 0; a < values.size(); ++a) {
      if (values[a] != 0.0) {
        support.push_back(a);
      }
    }
  }
};

SparseColumn column(const DenseSymMatrix &m, std::size_t j) {
  auto r = m.row(j); // symmetric: column j equals row j
  return SparseColumn({r.begin(), r.end()});
}

SparseColumn unit(std::size_t n, std::size_t i) {
  std::vector<double> e(n, 0.0);
  e[i] = 1.0;
  return SparseColumn(std::move(e));
}

// dst += x y^T over the nonzero entries only; sums tracks dst 1.
void add_outer(DenseSymMatrix &dst, std::vector<double> &sums, const SparseColumn &x,
               const SparseColumn &y) {
  double ysum = 0.0;
  for (std::size_t b : y.support) {
    ysum += y.values[b];
  }
  for (std::size_t a : x.support) {
    const double xa = x.values[a];
    auto row = dst.row(a);
    for (std::size_t b : y.support) {
      row[b] += xa * y.values[b];
    }
    sums[a] += xa * ysum;
  }
}

} // namespace

void PowerCache::add_edge(Vertex i, Vertex j) {
  if (i == j || i >= n_ || j >= n_) {
    throw std::invalid_argument("PowerCache::add_edge: invalid pair");
  }
  if (has_edge(i, j)) {
    throw std::invalid_argument("PowerCache::add_edge: edge (" + std::to_string(i) + "," +
                                std::to_string(j) + ") already present");
  }
  const std::size_t top = powers_.size(); // k - 1

  // Columns i and j of the old powers A^0 .. A^(k-2).
  std::vector<SparseColumn> old_i{unit(n_, i)};
  std::vector<SparseColumn> old_j{unit(n_, j)};
  for (std::size_t p = 1; p < top; ++p) {
    old_i.push_back(column(powers_[p - 1], i));
    old_j.push_back(column(powers_[p - 1], j));
  }
  // Columns i and j of the new powers, filled as they become available.
  std::vector<SparseColumn> new_i{unit(n_, i)};
  std::vector<SparseColumn> new_j{unit(n_, j)};

  std::vector<std::uint8_t> in_block(n_, 0);
  std::vector<std::size_t> block;
  auto cover = [&](const SparseColumn &v) {
    for (std::size_t a : v.support) {
      if (!in_block[a]) {
        in_block[a] = 1;
        block.push_back(a);
      }
    }
  };

  for (std::size_t r = 1; r <= top; ++r) {
    DenseSymMatrix &target = powers_[r - 1];
    for (std::size_t s = 0; s < r; ++s) {
      const std::size_t p = r - 1 - s;
      add_outer(target, row_sums_[r - 1], new_i[s], old_j[p]);
      add_outer(target, row_sums_[r - 1], new_j[s], old_i[p]);
      cover(new_i[s]);
      cover(new_j[s]);
      cover(old_i[p]);
      cover(old_j[p]);
    }
    // Only entries in block x block changed; re-pair their mirrors.
    for (std::size_t x = 0; x < block.size(); ++x) {
      for (std::size_t y = x + 1; y < block.size(); ++y) {
        const std::size_t a = block[x];
        const std::size_t b = block[y];
        const double mean = 0.5 * (target(a, b) + target(b, a));
        target(a, b) = mean;
        target(b, a) = mean;
      }
    }
    if (r < top) {
      new_i.push_back(column(target, i));
      new_j.push_back(column(target, j));
    }
  }
  ++edges_;
}

PowerCache apply_edge_update(PowerCache cache, Edge edge) {
  cache.add_edge(edge.u, edge.v);
  return cache;
}

std::size_t PairMask::count() const {
  std::size_t c = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      c += bits_[i * n_ + j];
    }
  }
  return c;
}

PairMask suitable_mask(const PowerCache &cache) {
  const std::size_t n = cache.dim();
  PairMask mask(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      bool reachable = false;
      for (int r = 1; r <= cache.max_power() && !reachable; ++r) {
        reachable = cache.power(r)(i, j) > 0.5;
      }
      if (!reachable) {
        mask.set(i, j, true);
      }
    }
  }
  return mask;
}

DenseSymMatrix exponent_matrix_naive(const PowerCache &cache, double q) {
  const std::size_t n = cache.dim();
  const int k = cache.girth_parameter();
  DenseSymMatrix sum(n);
  if (k <= 2) {
    return sum;
  }
  const DenseSymMatrix &adj = cache.power(1);
  DenseSymMatrix x(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) {
        x(i, j) = adj(i, j) > 0.5 ? 1.0 : q;
      }
    }
  }
  DenseSymMatrix walk = x;
  for (int a = 2; a <= k - 1; ++a) {
    walk = walk.commuting_product(x);
    sum += walk;
  }
  return sum;
}

AffineExponent::AffineExponent(const PowerCache &cache, double q) : cache_(&cache) {
  const std::size_t n = cache.dim();
  const int k = cache.girth_parameter();
  if (k <= 2) {
    return;
  }
  const std::size_t top = static_cast<std::size_t>(k - 1);
  const double alpha = 1.0 - q;

  // binom[a][s] = C(a, s)
  std::vector<std::vector<double>> binom(top + 1, std::vector<double>(top + 1, 0.0));
  for (std::size_t a = 0; a <= top; ++a) {
    binom[a][0] = 1.0;
    for (std::size_t s = 1; s <= a; ++s) {
      binom[a][s] = binom[a - 1][s - 1] + (s <= a - 1 ? binom[a - 1][s] : 0.0);
    }
  }
  // coef[a][s]: weight of M^s in B^a.
  std::vector<std::vector<double>> coef(top + 1, std::vector<double>(top + 1, 0.0));
  for (std::size_t a = 0; a <= top; ++a) {
    for (std::size_t s = 0; s <= a; ++s) {
      coef[a][s] = binom[a][s] * std::pow(alpha, static_cast<double>(s)) *
                   std::pow(-q, static_cast<double>(a - s));
    }
  }

  // Row sums of M^t, t = 0..top.
  std::vector<std::vector<double>> rowsum{std::vector<double>(n, 1.0)};
  for (std::size_t t = 1; t <= top; ++t) {
    rowsum.push_back(cache.row_sums(static_cast<int>(t)));
  }
  // w_s = B^s 1 and c_s = 1^T w_s.
  std::vector<std::vector<double>> w(top + 1, std::vector<double>(n, 0.0));
  std::vector<double> c(top + 1, 0.0);
  for (std::size_t s = 0; s <= top; ++s) {
    for (std::size_t t = 0; t <= s; ++t) {
      const double f = coef[s][t];
      for (std::size_t i = 0; i < n; ++i) {
        w[s][i] += f * rowsum[t][i];
      }
    }
    for (double v : w[s]) {
      c[s] += v;
    }
  }

  // X^a = B^a + sum_{s,t} d[s][t] w_s w_t^T. Start from X^1 and multiply by
  // X = B + q 1 1^T on the right:
  //   w_s w_t^T B        = w_s w_{t+1}^T
  //   w_s w_t^T q 1 1^T  = q c_t w_s w_0^T
  //   B^a q 1 1^T        = q w_a w_0^T
  using Table = std::vector<std::vector<double>>;
  Table d(top + 1, std::vector<double>(top + 1, 0.0));
  Table dsum = d;
  d[0][0] = q;
  for (std::size_t a = 1; a < top; ++a) {
    Table next(top + 1, std::vector<double>(top + 1, 0.0));
    for (std::size_t s = 0; s <= top; ++s) {
      double closure = 0.0;
      for (std::size_t t = 0; t <= top; ++t) {
        if (d[s][t] == 0.0) {
          continue;
        }
        if (t + 1 <= top) {
          next[s][t + 1] += d[s][t];
        }
        closure += d[s][t] * c[t];
      }
      next[s][0] += q * closure;
    }
    next[a][0] += q;
    for (std::size_t s = 0; s <= top; ++s) {
      for (std::size_t t = 0; t <= top; ++t) {
        dsum[s][t] += next[s][t];
      }
    }
    d = std::move(next);
  }

  // Polynomial part: sum_{a=2}^{top} B^a = sum_s gamma_s M^s.
  gamma_.assign(top + 1, 0.0);
  for (std::size_t a = 2; a <= top; ++a) {
    for (std::size_t s = 0; s <= a; ++s) {
      gamma_[s] += coef[a][s];
    }
  }

  // Low-rank part: sum_s w_s z_s^T with z_s = sum_t dsum[s][t] w_t. Stored
  // halved so that each entry can be evaluated in symmetric form.
  for (std::size_t s = 0; s <= top; ++s) {
    std::vector<double> z(n, 0.0);
    bool any = false;
    for (std::size_t t = 0; t <= top; ++t) {
      if (dsum[s][t] == 0.0) {
        continue;
      }
      any = true;
      for (std::size_t i = 0; i < n; ++i) {
        z[i] += 0.5 * dsum[s][t] * w[t][i];
      }
    }
    if (any) {
      w_.push_back(w[s]);
      z_.push_back(std::move(z));
    }
  }
}

void AffineExponent::fill_row(std::size_t i, std::size_t from, std::span<double> out) const {
  const std::size_t n = cache_->dim();
  const std::size_t len = n - from;
  std::fill(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(len), 0.0);
  if (gamma_.empty()) {
    return;
  }
  double *dst = out.data();
  for (std::size_t s = 1; s < gamma_.size(); ++s) {
    const double g = gamma_[s];
    if (g == 0.0) {
      continue;
    }
    const double *row = cache_->power(static_cast<int>(s)).row(i).data() + from;
    for (std::size_t x = 0; x < len; ++x) {
      dst[x] += g * row[x];
    }
  }
  for (std::size_t r = 0; r < w_.size(); ++r) {
    const double wi = w_[r][i];
    const double zi = z_[r][i];
    const double *w = w_[r].data() + from;
    const double *z = z_[r].data() + from;
    for (std::size_t x = 0; x < len; ++x) {
      dst[x] += wi * z[x] + zi * w[x];
    }
  }
  if (from <= i) {
    dst[i - from] += gamma_[0];
  }
}

double AffineExponent::operator()(std::size_t i, std::size_t j) const {
  if (gamma_.empty()) {
    return 0.0;
  }
  double e = i == j ? gamma_[0] : 0.0;
  for (std::size_t s = 1; s < gamma_.size(); ++s) {
    e += gamma_[s] * cache_->power(static_cast<int>(s))(i, j);
  }
  for (std::size_t r = 0; r < w_.size(); ++r) {
    e += w_[r][i] * z_[r][j] + z_[r][i] * w_[r][j];
  }
  return e;
}

DenseSymMatrix exponent_matrix_affine(const PowerCache &cache, double q) {
  const std::size_t n = cache.dim();
  DenseSymMatrix out(n);
  if (cache.girth_parameter() <= 2) {
    return out;
  }
  const AffineExponent e(cache, q);
  for (std::size_t i = 0; i < n; ++i) {
    e.fill_row(i, 0, out.row(i));
  }
  return out;
}

} // namespace girthgen
