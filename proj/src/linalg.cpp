#include "fiberres/linalg.hpp"

#include <algorithm>

#include "fiberres/kernels.hpp"

namespace fiberres {

void axpy(const PrimeField& F, std::span<Scalar> dst, std::span<const Scalar> src, Scalar m) {
  kernels::axpy_mod(dst, src, m, F.characteristic());
}

Vec scaled(const PrimeField& F, std::span<const Scalar> v, Scalar m) {
  Vec out(v.begin(), v.end());
  kernels::scale_mod(out, m, F.characteristic());
  return out;
}

void Matrix::set_column(std::size_t c, std::span<const Scalar> v) {
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

Vec Matrix::apply(const PrimeField& F, std::span<const Scalar> x) const {
  Vec out(rows_, 0);
  const std::uint64_t p = F.characteristic();
  // with p < 2^28 eight products fit in 64 bits before reducing
  const std::size_t batch = p < (1u << 28) ? 8 : 1;
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint64_t acc = 0;
    const Scalar* row_ptr = data_.data() + r * cols_;
    for (std::size_t c = 0; c < cols_; ++c) {
      acc += static_cast<std::uint64_t>(row_ptr[c]) * x[c];
      if ((c + 1) % batch == 0) acc %= p;
    }
    out[r] = static_cast<Scalar>(acc % p);
  }
  return out;
}

void Matrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  std::swap_ranges(data_.begin() + a * cols_, data_.begin() + (a + 1) * cols_,
                   data_.begin() + b * cols_);
}

namespace {

// In-place RREF on m; companion (may be empty) receives the same row ops.
std::vector<std::size_t> reduce_in_place(const PrimeField& F, Matrix& m, Matrix* companion) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && m(piv, c) == 0) ++piv;
    if (piv == m.rows()) continue;
    m.swap_rows(r, piv);
    if (companion) companion->swap_rows(r, piv);
    Scalar inv = F.inv(m(r, c));
    kernels::scale_mod(m.row(r), inv, F.characteristic());
    if (companion) kernels::scale_mod(companion->row(r), inv, F.characteristic());
    for (std::size_t o = 0; o < m.rows(); ++o) {
      if (o == r || m(o, c) == 0) continue;
      Scalar factor = F.neg(m(o, c));
      axpy(F, m.row(o), m.row(r), factor);
      if (companion) axpy(F, companion->row(o), companion->row(r), factor);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

RowEchelon rref(const PrimeField& F, Matrix m) {
  auto pivots = reduce_in_place(F, m, nullptr);
  return {std::move(m), std::move(pivots)};
}

std::size_t rank(const PrimeField& F, Matrix m) { return reduce_in_place(F, m, nullptr).size(); }

Vec NullSpace::coordinates(std::span<const Scalar> v) const {
  Vec out(free_columns.size());
  for (std::size_t i = 0; i < free_columns.size(); ++i) out[i] = v[free_columns[i]];
  return out;
}

NullSpace nullspace(const PrimeField& F, const Matrix& m) {
  RowEchelon e = rref(F, m);
  NullSpace ns;
  std::vector<char> is_pivot(m.cols(), 0);
  for (auto c : e.pivots) is_pivot[c] = 1;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vec v(m.cols(), 0);
    v[f] = 1;
    for (std::size_t r = 0; r < e.rank(); ++r) v[e.pivots[r]] = F.neg(e.reduced(r, f));
    ns.basis.push_back(std::move(v));
    ns.free_columns.push_back(f);
  }
  return ns;
}

LinearSolver::LinearSolver(const PrimeField& F, const Matrix& a)
    : F_(F), rows_(a.rows()), cols_(a.cols()), transform_(a.rows(), a.rows()) {
  for (std::size_t i = 0; i < rows_; ++i) transform_(i, i) = 1;
  Matrix work = a;
  pivots_ = reduce_in_place(F, work, &transform_);
}

std::optional<Vec> LinearSolver::solve(std::span<const Scalar> b) const {
  Vec y = transform_.apply(F_, b);
  for (std::size_t r = pivots_.size(); r < rows_; ++r)
    if (y[r] != 0) return std::nullopt;
  Vec x(cols_, 0);
  for (std::size_t r = 0; r < pivots_.size(); ++r) x[pivots_[r]] = y[r];
  return x;
}

Vec EchelonBasis::reduce(std::span<const Scalar> v) const {
  Vec out(v.begin(), v.end());
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    Scalar c = out[pivots_[i]];
    if (c != 0) axpy(F_, out, rows_[i], F_.neg(c));
  }
  return out;
}

bool EchelonBasis::insert(std::span<const Scalar> v) {
  Vec r = reduce(v);
  auto it = std::find_if(r.begin(), r.end(), [](Scalar x) { return x != 0; });
  if (it == r.end()) return false;
  std::size_t c = static_cast<std::size_t>(it - r.begin());
  kernels::scale_mod(r, F_.inv(r[c]), F_.characteristic());
  for (auto& row : rows_)
    if (row[c] != 0) axpy(F_, row, r, F_.neg(row[c]));
  // keep rows ordered by pivot column
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), c);
  auto idx = pos - pivots_.begin();
  pivots_.insert(pos, c);
  rows_.insert(rows_.begin() + idx, std::move(r));
  return true;
}

}  // namespace fiberres
