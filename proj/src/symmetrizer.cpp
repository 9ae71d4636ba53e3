#include "fkn/symmetrizer.hpp"

#include <algorithm>
#include <numeric>

#include "fkn/errors.hpp"
#include "fkn/linalg.hpp"
#include "fkn/parallel.hpp"

namespace fkn {

MonomialMatrix MonomialMatrix::identity(std::uint64_t dim, std::uint32_t scalar_order) {
  MonomialMatrix m;
  m.scalar_order = scalar_order;
  m.target.resize(dim);
  std::iota(m.target.begin(), m.target.end(), std::uint64_t{0});
  m.scalar.assign(dim, 0);
  return m;
}

MonomialMatrix operator*(const MonomialMatrix &a, const MonomialMatrix &b) {
  if (a.dim() != b.dim() || a.scalar_order != b.scalar_order)
    throw DomainError("MonomialMatrix: incompatible factors");
  MonomialMatrix out;
  out.scalar_order = a.scalar_order;
  out.target.resize(b.dim());
  out.scalar.resize(b.dim());
  for (std::uint64_t j = 0; j < b.dim(); ++j) {
    const auto mid = b.target[j];
    out.target[j] = a.target[mid];
    out.scalar[j] = (a.scalar[mid] + b.scalar[j]) % a.scalar_order;
  }
  return out;
}

BraidedSpace BraidedSpace::from_diagonal(const DiagonalBraiding &braiding) {
  BraidedSpace s;
  s.dim = braiding.rank();
  s.scalar_order = braiding.order();
  s.grading.resize(s.dim);
  std::iota(s.grading.begin(), s.grading.end(), 0u);
  for (std::uint32_t i = 0; i < s.dim; ++i)
    s.label_names.push_back(std::to_string(i + 1));
  s.braiding = MonomialMatrix::identity(std::uint64_t{s.dim} * s.dim, s.scalar_order);
  for (std::uint32_t i = 0; i < s.dim; ++i)
    for (std::uint32_t j = 0; j < s.dim; ++j) {
      s.braiding.target[i * s.dim + j] = std::uint64_t{j} * s.dim + i;
      s.braiding.scalar[i * s.dim + j] = braiding.b(i, j);
    }
  return s;
}

BraidedSpace BraidedSpace::from_yd(const YDModule &module) {
  BraidedSpace s;
  s.dim = module.dim();
  s.scalar_order = module.scalar_order;
  s.grading.assign(s.dim, 0);
  const auto summands = decompose_yd(module);
  for (std::uint32_t k = 0; k < summands.size(); ++k) {
    s.label_names.push_back(summands[k].label);
    for (auto b : summands[k].members)
      s.grading[b] = k;
  }
  s.braiding = MonomialMatrix::identity(std::uint64_t{s.dim} * s.dim, s.scalar_order);
  for (std::uint32_t a = 0; a < s.dim; ++a)
    for (std::uint32_t b = 0; b < s.dim; ++b) {
      s.braiding.target[a * s.dim + b] = std::uint64_t{module.target(a, b)} * s.dim + a;
      s.braiding.scalar[a * s.dim + b] = module.scalar_exp(a, b);
    }
  return s;
}

namespace {

std::uint64_t checked_power(std::uint64_t base, std::uint32_t exp, std::uint64_t limit) {
  std::uint64_t r = 1;
  for (std::uint32_t k = 0; k < exp; ++k) {
    if (base != 0 && r > limit / base)
      throw ResourceError("tensor power V^" + std::to_string(exp) + " too large", limit + 1, limit);
    r *= base;
  }
  return r;
}

// Weight of tensor position i in V^{(x) d}.
std::vector<std::uint64_t> position_weights(std::uint32_t dim, std::uint32_t degree) {
  std::vector<std::uint64_t> w(degree, 1);
  for (std::uint32_t i = degree; i-- > 1;)
    w[i - 1] = w[i] * dim;
  return w;
}

// Applies Psi at positions (pos, pos + 1) to e_x; returns (image, scalar exponent).
std::pair<std::uint64_t, std::uint32_t> apply_generator(const BraidedSpace &space, const std::vector<std::uint64_t> &w,
                                                        std::uint32_t pos, std::uint64_t x) {
  const std::uint64_t dd = std::uint64_t{space.dim} * space.dim;
  const std::uint64_t pair = (x / w[pos + 1]) % dd;
  const std::uint64_t to = space.braiding.target[pair];
  return {x - pair * w[pos + 1] + to * w[pos + 1], space.braiding.scalar[pair]};
}

struct Orbits {
  std::vector<std::uint32_t> orbit_of;
  std::vector<std::uint32_t> local_of;
  std::vector<std::vector<std::uint64_t>> members; // ordered by smallest element
};

std::uint32_t find_root(std::vector<std::uint32_t> &parent, std::uint32_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

// Orbits of the braid group on basis tensors of V^{(x) d}.
Orbits braid_orbits(const BraidedSpace &space, std::uint32_t degree, std::uint64_t size) {
  std::vector<std::uint32_t> parent(size);
  std::iota(parent.begin(), parent.end(), 0u);
  const auto w = position_weights(space.dim, degree);
  for (std::uint32_t pos = 0; pos + 1 < degree; ++pos)
    for (std::uint64_t x = 0; x < size; ++x) {
      const auto y = apply_generator(space, w, pos, x).first;
      auto a = find_root(parent, static_cast<std::uint32_t>(x));
      auto b = find_root(parent, static_cast<std::uint32_t>(y));
      if (a != b)
        parent[std::max(a, b)] = std::min(a, b);
    }
  Orbits o;
  o.orbit_of.resize(size);
  o.local_of.resize(size);
  std::vector<std::uint32_t> id_of_root(size, UINT32_MAX);
  for (std::uint64_t x = 0; x < size; ++x) {
    const auto r = find_root(parent, static_cast<std::uint32_t>(x));
    if (id_of_root[r] == UINT32_MAX) {
      id_of_root[r] = static_cast<std::uint32_t>(o.members.size());
      o.members.emplace_back();
    }
    const auto id = id_of_root[r];
    o.orbit_of[x] = id;
    o.local_of[x] = static_cast<std::uint32_t>(o.members[id].size());
    o.members[id].push_back(x);
  }
  return o;
}

std::vector<std::uint32_t> label_counts(const BraidedSpace &space, std::uint32_t degree, std::uint64_t x) {
  std::vector<std::uint32_t> counts(space.label_names.size(), 0);
  for (std::uint32_t k = 0; k < degree; ++k) {
    ++counts[space.grading[x % space.dim]];
    x /= space.dim;
  }
  return counts;
}

void check_block(std::uint64_t size, const SymmetrizerOptions &opts) {
  const auto limit = opts.effective_block_limit();
  if (size > limit)
    throw ResourceError("orbit block too large", size, limit);
}

HilbertData start_data(const BraidedSpace &space, std::uint32_t max_degree) {
  HilbertData h;
  h.max_degree = max_degree;
  h.per_degree.assign(max_degree + 1, 0);
  h.per_degree[0] = 1;
  h.per_multidegree[std::vector<std::uint32_t>(space.label_names.size(), 0)] = 1;
  return h;
}

void record_blocks(HilbertData &h, const BraidedSpace &space, std::uint32_t degree, const Orbits &orbits,
                   const std::vector<std::uint64_t> &dims) {
  for (std::size_t b = 0; b < dims.size(); ++b) {
    if (dims[b] == 0)
      continue;
    h.per_degree[degree] += dims[b];
    h.per_multidegree[label_counts(space, degree, orbits.members[b].front())] += dims[b];
  }
}

template <class Ops>
HilbertData nichols_recursive(const BraidedSpace &space, std::uint32_t max_degree, const SymmetrizerOptions &opts,
                              const Ops &ops) {
  using V = typename Ops::value_type;
  HilbertData h = start_data(space, max_degree);
  const std::uint64_t dd = std::uint64_t{space.dim} * space.dim;

  // Row action of Psi: (y Psi)_j = c_j y_{target(j)}.
  std::vector<std::uint64_t> inv_target(dd);
  std::vector<std::uint32_t> inv_scalar(dd);
  for (std::uint64_t j = 0; j < dd; ++j) {
    inv_target[space.braiding.target[j]] = j;
    inv_scalar[space.braiding.target[j]] = space.braiding.scalar[j];
  }

  // Degree 0: one orbit {empty word} with row basis {1}.
  std::vector<std::vector<std::uint64_t>> prev_members{{0}};
  std::vector<std::vector<SparseRow<V>>> prev_rows{{SparseRow<V>{{0, ops.one()}}}};

  for (std::uint32_t d = 1; d <= max_degree; ++d) {
    const bool any = std::any_of(prev_rows.begin(), prev_rows.end(), [](const auto &r) { return !r.empty(); });
    if (!any)
      break;
    const std::uint64_t size = checked_power(space.dim, d, opts.space_limit);
    const Orbits orbits = braid_orbits(space, d, size);
    const auto w = position_weights(space.dim, d);

    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> sources(orbits.members.size());
    for (std::uint32_t o = 0; o < prev_rows.size(); ++o) {
      if (prev_rows[o].empty())
        continue;
      for (std::uint32_t v = 0; v < space.dim; ++v)
        sources[orbits.orbit_of[prev_members[o].front() * space.dim + v]].emplace_back(o, v);
    }

    std::vector<std::vector<SparseRow<V>>> rows(orbits.members.size());
    std::vector<std::uint64_t> dims(orbits.members.size(), 0);
    parallel_for(orbits.members.size(), opts.jobs, [&](std::size_t b) {
      if (sources[b].empty())
        return;
      const auto block_size = orbits.members[b].size();
      check_block(block_size, opts);
      EchelonBasis<Ops> basis(ops, block_size);
      std::vector<std::pair<std::uint64_t, V>> cur, acc;
      for (const auto &[o, v] : sources[b]) {
        for (const auto &p : prev_rows[o]) {
          if (basis.rank() == block_size)
            break;
          cur.clear();
          for (const auto &[c, val] : p)
            cur.emplace_back(prev_members[o][c] * space.dim + v, val);
          acc = cur;
          // y T_d = y + y Psi_{d-2} + y Psi_{d-2} Psi_{d-3} + ... + y Psi_{d-2} ... Psi_0.
          for (std::uint32_t pos = d - 1; pos-- > 0;) {
            for (auto &[x, val] : cur) {
              const std::uint64_t pair = (x / w[pos + 1]) % dd;
              x = x - pair * w[pos + 1] + inv_target[pair] * w[pos + 1];
              val = ops.mul(ops.root(inv_scalar[pair]), val);
            }
            acc.insert(acc.end(), cur.begin(), cur.end());
          }
          SparseRow<V> row;
          row.reserve(acc.size());
          for (const auto &[x, val] : acc)
            row.emplace_back(orbits.local_of[x], val);
          basis.insert(row);
        }
      }
      dims[b] = basis.rank();
      rows[b] = basis.rows();
    });
    record_blocks(h, space, d, orbits, dims);
    prev_members = orbits.members;
    prev_rows = std::move(rows);
  }
  return h;
}

std::vector<std::vector<std::uint32_t>> all_reduced_words(std::uint32_t degree) {
  std::vector<std::uint32_t> perm(degree);
  std::iota(perm.begin(), perm.end(), 0u);
  std::vector<std::vector<std::uint32_t>> words;
  do
    words.push_back(reduced_word(perm));
  while (std::next_permutation(perm.begin(), perm.end()));
  return words;
}

template <class Ops>
HilbertData nichols_direct(const BraidedSpace &space, std::uint32_t max_degree, const SymmetrizerOptions &opts,
                           const Ops &ops) {
  using V = typename Ops::value_type;
  HilbertData h = start_data(space, max_degree);
  for (std::uint32_t d = 1; d <= max_degree; ++d) {
    if (h.per_degree[d - 1] == 0)
      break;
    const std::uint64_t size = checked_power(space.dim, d, opts.space_limit);
    const Orbits orbits = braid_orbits(space, d, size);
    const auto w = position_weights(space.dim, d);
    const auto words = all_reduced_words(d);
    std::vector<std::uint64_t> dims(orbits.members.size(), 0);
    parallel_for(orbits.members.size(), opts.jobs, [&](std::size_t b) {
      const auto &members = orbits.members[b];
      check_block(members.size(), opts);
      EchelonBasis<Ops> basis(ops, members.size());
      for (auto x0 : members) {
        SparseRow<V> column;
        column.reserve(words.size());
        for (const auto &word : words) {
          std::uint64_t x = x0;
          std::uint32_t e = 0;
          for (auto it = word.rbegin(); it != word.rend(); ++it) {
            const auto [y, s] = apply_generator(space, w, *it, x);
            x = y;
            e = (e + s) % space.scalar_order;
          }
          column.emplace_back(orbits.local_of[x], ops.root(e));
        }
        basis.insert(column);
      }
      dims[b] = basis.rank();
    });
    record_blocks(h, space, d, orbits, dims);
  }
  return h;
}

// Cycles of the braiding permutation on V (x) V, each starting at its smallest pair.
std::vector<std::vector<std::uint64_t>> braiding_cycles(const BraidedSpace &space) {
  const auto &t = space.braiding.target;
  std::vector<bool> seen(t.size(), false);
  std::vector<std::vector<std::uint64_t>> cycles;
  for (std::uint64_t p = 0; p < t.size(); ++p) {
    if (seen[p])
      continue;
    cycles.emplace_back();
    for (auto q = p; !seen[q]; q = t[q]) {
      seen[q] = true;
      cycles.back().push_back(q);
    }
  }
  return cycles;
}

// Kernel of Psi + Id on the span of one cycle, in cycle coordinates.
template <class Ops>
std::vector<std::vector<typename Ops::value_type>> cycle_kernel(const BraidedSpace &space,
                                                                const std::vector<std::uint64_t> &cycle,
                                                                const Ops &ops) {
  using V = typename Ops::value_type;
  const std::size_t c = cycle.size();
  std::vector<std::vector<V>> m(c, std::vector<V>(c, ops.zero()));
  for (std::size_t k = 0; k < c; ++k) {
    ops.add_to(m[k][k], ops.one());
    ops.add_to(m[(k + 1) % c][k], ops.root(space.braiding.scalar[cycle[k]]));
  }
  return nullspace(ops, std::move(m), c);
}

template <class Ops>
HilbertData quadratic_impl(const BraidedSpace &space, std::uint32_t max_degree, const SymmetrizerOptions &opts,
                           const Ops &ops) {
  using V = typename Ops::value_type;
  HilbertData h = start_data(space, max_degree);
  const std::uint64_t dd = std::uint64_t{space.dim} * space.dim;

  struct Relation {
    std::uint64_t lead; // smallest pair of the cycle
    std::vector<std::pair<std::uint64_t, V>> terms;
  };
  std::vector<std::vector<Relation>> relations_at(dd); // indexed by the cycle's smallest pair
  for (const auto &cycle : braiding_cycles(space))
    for (const auto &k : cycle_kernel(space, cycle, ops)) {
      Relation r{cycle.front(), {}};
      for (std::size_t i = 0; i < cycle.size(); ++i)
        if (!ops.is_zero(k[i]))
          r.terms.emplace_back(cycle[i], k[i]);
      relations_at[cycle.front()].push_back(std::move(r));
    }

  for (std::uint32_t d = 1; d <= max_degree; ++d) {
    if (h.per_degree[d - 1] == 0)
      break;
    const std::uint64_t size = checked_power(space.dim, d, opts.space_limit);
    const Orbits orbits = braid_orbits(space, d, size);
    const auto w = position_weights(space.dim, d);
    std::vector<std::uint64_t> dims(orbits.members.size(), 0);
    parallel_for(orbits.members.size(), opts.jobs, [&](std::size_t b) {
      const auto &members = orbits.members[b];
      std::vector<SparseRow<V>> generators;
      for (auto x : members)
        for (std::uint32_t pos = 0; pos + 1 < d; ++pos) {
          const std::uint64_t pair = (x / w[pos + 1]) % dd;
          for (const auto &r : relations_at[pair]) {
            SparseRow<V> row;
            for (const auto &[q, val] : r.terms)
              row.emplace_back(orbits.local_of[x - pair * w[pos + 1] + q * w[pos + 1]], val);
            generators.push_back(std::move(row));
          }
        }
      if (generators.empty()) {
        dims[b] = members.size();
        return;
      }
      check_block(members.size(), opts);
      EchelonBasis<Ops> basis(ops, members.size());
      for (const auto &g : generators) {
        if (basis.rank() == members.size())
          break;
        basis.insert(g);
      }
      dims[b] = members.size() - basis.rank();
    });
    record_blocks(h, space, d, orbits, dims);
  }
  return h;
}

template <class F> HilbertData with_ops(const BraidedSpace &space, const SymmetrizerOptions &opts, F &&f) {
  if (opts.arithmetic == Arithmetic::Exact)
    return f(ExactOps(space.scalar_order));
  return f(ModularOps(ModularSpec::find(space.scalar_order, opts.seed)));
}

} // namespace

bool satisfies_yang_baxter(const BraidedSpace &space) {
  if (space.dim == 0)
    return true;
  const auto a = braid_generator(space, 3, 0);
  const auto b = braid_generator(space, 3, 1);
  return a * b * a == b * a * b;
}

MonomialMatrix braid_generator(const BraidedSpace &space, std::uint32_t degree, std::uint32_t pos) {
  if (pos + 1 >= degree)
    throw DomainError("braid_generator: position " + std::to_string(pos) + " out of range for degree " +
                      std::to_string(degree));
  const std::uint64_t size = checked_power(space.dim, degree, UINT64_MAX / 2);
  const auto w = position_weights(space.dim, degree);
  MonomialMatrix m = MonomialMatrix::identity(size, space.scalar_order);
  for (std::uint64_t x = 0; x < size; ++x) {
    const auto [y, e] = apply_generator(space, w, pos, x);
    m.target[x] = y;
    m.scalar[x] = e;
  }
  return m;
}

MonomialMatrix braid_word_lift(const BraidedSpace &space, std::uint32_t degree,
                               const std::vector<std::uint32_t> &word) {
  const std::uint64_t size = checked_power(space.dim, degree, UINT64_MAX / 2);
  MonomialMatrix m = MonomialMatrix::identity(size, space.scalar_order);
  for (auto pos : word)
    m = m * braid_generator(space, degree, pos);
  return m;
}

std::vector<std::uint32_t> reduced_word(const std::vector<std::uint32_t> &perm) {
  std::vector<std::uint32_t> w = perm, steps;
  for (;;) {
    std::size_t i = 0;
    while (i + 1 < w.size() && w[i] < w[i + 1])
      ++i;
    if (i + 1 >= w.size())
      break;
    std::swap(w[i], w[i + 1]); // w <- w o s_i
    steps.push_back(static_cast<std::uint32_t>(i));
  }
  // perm = s_{i_k} o ... o s_{i_1}.
  std::reverse(steps.begin(), steps.end());
  return steps;
}

MonomialMatrix braid_lift(const BraidedSpace &space, std::uint32_t degree, const std::vector<std::uint32_t> &perm) {
  if (perm.size() != degree)
    throw DomainError("braid_lift: permutation size differs from degree");
  return braid_word_lift(space, degree, reduced_word(perm));
}

std::uint64_t HilbertData::total() const {
  return std::accumulate(per_degree.begin(), per_degree.end(), std::uint64_t{0});
}

HilbertData nichols_hilbert(const BraidedSpace &space, std::uint32_t max_degree, const SymmetrizerOptions &opts) {
  return with_ops(space, opts, [&](const auto &ops) {
    return opts.method == SymmetrizerMethod::Recursive ? nichols_recursive(space, max_degree, opts, ops)
                                                       : nichols_direct(space, max_degree, opts, ops);
  });
}

std::uint64_t nichols_graded_dim(const BraidedSpace &space, std::uint32_t degree, const SymmetrizerOptions &opts) {
  return nichols_hilbert(space, degree, opts).per_degree[degree];
}

std::vector<std::vector<std::pair<std::uint64_t, CyclotomicNumber>>> quadratic_relations(const BraidedSpace &space) {
  const ExactOps ops(space.scalar_order);
  std::vector<std::vector<std::pair<std::uint64_t, CyclotomicNumber>>> out;
  for (const auto &cycle : braiding_cycles(space))
    for (const auto &k : cycle_kernel(space, cycle, ops)) {
      out.emplace_back();
      for (std::size_t i = 0; i < cycle.size(); ++i)
        if (!k[i].is_zero())
          out.back().emplace_back(cycle[i], k[i]);
      std::sort(out.back().begin(), out.back().end(),
                [](const auto &a, const auto &b) { return a.first < b.first; });
    }
  return out;
}

HilbertData quadratic_hilbert(const BraidedSpace &space, std::uint32_t max_degree, const SymmetrizerOptions &opts) {
  return with_ops(space, opts, [&](const auto &ops) { return quadratic_impl(space, max_degree, opts, ops); });
}

std::uint64_t quadratic_graded_dim(const BraidedSpace &space, std::uint32_t degree, const SymmetrizerOptions &opts) {
  return quadratic_hilbert(space, degree, opts).per_degree[degree];
}

HilbertComparison hilbert_compare(const BraidedSpace &space, std::uint32_t max_degree,
                                  const SymmetrizerOptions &opts) {
  HilbertComparison c{nichols_hilbert(space, max_degree, opts), quadratic_hilbert(space, max_degree, opts), {}};
  for (std::uint32_t d = 0; d <= max_degree; ++d)
    if (c.nichols.per_degree[d] != c.quadratic.per_degree[d]) {
      c.divergence = d;
      break;
    }
  return c;
}

} // namespace fkn
