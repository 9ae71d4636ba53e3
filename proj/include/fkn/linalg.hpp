#pragma once

// Field policies and elimination kernels shared by the graded-dimension code.

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "fkn/cyclotomic.hpp"

namespace fkn {

/// Q(zeta_N).
struct ExactOps {
  using value_type = CyclotomicNumber;

  explicit ExactOps(std::uint32_t conductor) : n(conductor) {
    for (std::uint32_t e = 0; e < n; ++e)
      roots.push_back(CyclotomicNumber::root(n, e));
  }

  std::uint32_t n;
  std::vector<CyclotomicNumber> roots;

  value_type zero() const { return CyclotomicNumber(n); }
  value_type one() const { return roots[0]; }
  const value_type &root(std::uint32_t e) const { return roots[e % n]; }
  bool is_zero(const value_type &x) const { return x.is_zero(); }
  value_type add(const value_type &a, const value_type &b) const { return a + b; }
  value_type sub(const value_type &a, const value_type &b) const { return a - b; }
  value_type mul(const value_type &a, const value_type &b) const { return a * b; }
  value_type neg(const value_type &a) const { return -a; }
  value_type inv(const value_type &a) const { return a.inverse(); }
  void add_to(value_type &acc, const value_type &x) const { acc += x; }
};

/// F_q with zeta_N sent to spec.zeta.
struct ModularOps {
  using value_type = std::uint64_t;

  explicit ModularOps(const ModularSpec &s) : spec(s) {
    spec.validate();
    std::uint64_t z = 1;
    for (std::uint32_t e = 0; e < spec.conductor; ++e) {
      roots.push_back(z);
      z = z * spec.zeta % spec.prime;
    }
  }

  ModularSpec spec;
  std::vector<std::uint64_t> roots;

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type root(std::uint32_t e) const { return roots[e % spec.conductor]; }
  bool is_zero(value_type x) const { return x == 0; }
  value_type add(value_type a, value_type b) const { return (a + b) % spec.prime; }
  value_type sub(value_type a, value_type b) const { return (a + spec.prime - b) % spec.prime; }
  value_type mul(value_type a, value_type b) const { return a * b % spec.prime; }
  value_type neg(value_type a) const { return (spec.prime - a) % spec.prime; }
  value_type inv(value_type a) const { return inv_mod(a, spec.prime); }
  void add_to(value_type &acc, value_type x) const { acc = (acc + x) % spec.prime; }
};

template <class V> using SparseRow = std::vector<std::pair<std::uint32_t, V>>;

/// Incrementally built row space in semi-echelon form: every stored row is
/// normalized to leading coefficient 1 at a column no other row leads at.
template <class Ops> class EchelonBasis {
public:
  using V = typename Ops::value_type;

  EchelonBasis(const Ops &ops, std::size_t cols) : ops_(&ops), pivot_of_(cols, -1) {}

  std::size_t rank() const { return rows_.size(); }
  const std::vector<SparseRow<V>> &rows() const { return rows_; }

  /// Reduces row against the basis and keeps the remainder if nonzero.
  /// Returns true when the rank grew.
  bool insert(const SparseRow<V> &row) {
    std::map<std::uint32_t, V> work;
    for (const auto &[c, v] : row) {
      if (ops_->is_zero(v))
        continue;
      auto [it, fresh] = work.try_emplace(c, v);
      if (!fresh)
        ops_->add_to(it->second, v);
    }
    auto it = work.begin();
    while (it != work.end()) {
      if (ops_->is_zero(it->second)) {
        it = work.erase(it);
        continue;
      }
      const int p = pivot_of_[it->first];
      if (p < 0)
        break;
      const V f = it->second;
      for (const auto &[c, v] : rows_[p]) {
        auto [jt, fresh] = work.try_emplace(c, ops_->zero());
        jt->second = ops_->sub(jt->second, ops_->mul(f, v));
      }
      it = work.erase(it);
    }
    while (it != work.end() && ops_->is_zero(it->second))
      it = work.erase(it);
    if (it == work.end())
      return false;
    const std::uint32_t lead = it->first;
    const V inv = ops_->inv(it->second);
    SparseRow<V> out;
    out.reserve(work.size());
    for (auto jt = it; jt != work.end(); ++jt) {
      if (!ops_->is_zero(jt->second))
        out.emplace_back(jt->first, jt == it ? ops_->one() : ops_->mul(inv, jt->second));
    }
    pivot_of_[lead] = static_cast<int>(rows_.size());
    rows_.push_back(std::move(out));
    return true;
  }

private:
  const Ops *ops_;
  std::vector<int> pivot_of_;
  std::vector<SparseRow<V>> rows_;
};

/// Basis of {x : A x = 0} for a dense matrix given row by row.
template <class Ops>
std::vector<std::vector<typename Ops::value_type>>
nullspace(const Ops &ops, std::vector<std::vector<typename Ops::value_type>> a, std::size_t cols) {
  using V = typename Ops::value_type;
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t piv = r;
    while (piv < a.size() && ops.is_zero(a[piv][c]))
      ++piv;
    if (piv == a.size())
      continue;
    std::swap(a[piv], a[r]);
    const V inv = ops.inv(a[r][c]);
    for (auto &x : a[r])
      x = ops.mul(x, inv);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || ops.is_zero(a[i][c]))
        continue;
      const V f = a[i][c];
      for (std::size_t j = 0; j < cols; ++j)
        a[i][j] = ops.sub(a[i][j], ops.mul(f, a[r][j]));
    }
    pivot_cols.push_back(c);
    ++r;
  }
  std::vector<std::vector<V>> basis;
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_cols)
    is_pivot[c] = true;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free])
      continue;
    std::vector<V> v(cols, ops.zero());
    v[free] = ops.one();
    for (std::size_t k = 0; k < pivot_cols.size(); ++k)
      v[pivot_cols[k]] = ops.neg(a[k][free]);
    basis.push_back(std::move(v));
  }
  return basis;
}

} // namespace fkn
