#include <numeric>

#include "locclab/config.hpp"
#include "locclab/errors.hpp"
#include "locclab/symmetry.hpp"

namespace locclab {

void ExponentSystem::validate() const {
  if (modulus < 1) throw InvalidArgument("exponent system modulus must be >= 1");
  if (num_vars < 1) throw InvalidArgument("exponent system needs at least one variable");
  for (const auto& row : equations) {
    if (static_cast<int>(row.size()) != num_vars) throw DimensionMismatch("exponent row length != num_vars");
  }
}

ExponentSystem psi_phase_system(int n, int k, int d) {
  if (n < 2 || d < 2 || k < 1 || k >= n) throw InvalidArgument("psi phase system needs n >= 2, d >= 2, 1 <= k < n");
  ExponentSystem sys{d, n, {}};
  for (int i = 0; i < d; ++i) {
    std::vector<int> row(static_cast<std::size_t>(d), 0);
    row[static_cast<std::size_t>(i)] = n;
    sys.equations.push_back(row);
  }
  for (int i = 1; i < d; ++i) {
    std::vector<int> row(static_cast<std::size_t>(d), 0);
    row[static_cast<std::size_t>(i)] = k;
    row[static_cast<std::size_t>(i - 1)] = n - k;
    sys.equations.push_back(row);
  }
  return sys;
}

ExponentSystem build_exponent_system(Family family, int n, int d) {
  auto row_of = [d](std::initializer_list<std::pair<int, int>> entries) {
    std::vector<int> row(static_cast<std::size_t>(d), 0);
    for (auto [var, coeff] : entries) row[static_cast<std::size_t>(var)] += coeff;
    return row;
  };
  switch (family) {
    case Family::Psi: {
      const auto k = select_k(n);
      if (!k) throw UndefinedFamily("no valid k for n = " + std::to_string(n));
      if (d < 2) throw InvalidArgument("psi system needs d >= 2");
      return psi_phase_system(n, *k, d);
    }
    case Family::Phi4: {
      if (n != 4) throw InvalidArgument("phi4 system is 4-partite (n = 4)");
      if (d < 3) throw UndefinedFamily("phi4 needs d >= 3");
      ExponentSystem sys{d, 4, {}};
      for (int i = 0; i < d; ++i) sys.equations.push_back(row_of({{i, 4}}));
      for (int i = 1; i < d; ++i) sys.equations.push_back(row_of({{i, 3}, {i - 1, 1}}));
      for (int i = 1; i < d; ++i) sys.equations.push_back(row_of({{i, 2}, {i - 1, 2}}));
      return sys;
    }
    case Family::Phi6: {
      if (n != 6) throw InvalidArgument("phi6 system is 6-partite (n = 6)");
      if (d < 2) throw InvalidArgument("phi6 needs d >= 2");
      ExponentSystem sys{d, 6, {}};
      for (int i = 0; i < d; ++i) sys.equations.push_back(row_of({{i, 6}}));
      sys.equations.push_back(row_of({{0, 1}, {1, 5}}));
      for (int i = 2; i < d; ++i) sys.equations.push_back(row_of({{i, 1}, {i - 1, 3}, {i - 2, 2}}));
      return sys;
    }
    default:
      throw InvalidArgument("no exponent system for family " + family_name(family));
  }
}

DiagonalCount enumerate_diagonal_symmetries(const ExponentSystem& sys, std::int64_t budget) {
  sys.validate();
  const int m = sys.modulus;
  const int v = sys.num_vars;
  std::int64_t total = 1;
  for (int i = 0; i < v; ++i) {
    if (total > budget / m) throw BudgetExceeded("enumeration needs modulus^vars > " + std::to_string(budget) + " candidates");
    total *= m;
  }

  // Reduced coefficients so the running sums stay small.
  std::vector<std::vector<int>> rows;
  for (const auto& r : sys.equations) {
    std::vector<int> red(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) red[i] = ((r[i] % m) + m) % m;
    rows.push_back(std::move(red));
  }

  // Chunk over the value of the first variable.
  std::vector<std::int64_t> per_chunk(static_cast<std::size_t>(m), 0);
  parallel_for(static_cast<std::size_t>(m), [&](std::size_t first) {
    std::vector<int> e(static_cast<std::size_t>(v), 0);
    e[0] = static_cast<int>(first);
    std::int64_t found = 0;
    while (true) {
      bool ok = true;
      for (const auto& r : rows) {
        long long acc = 0;
        for (int i = 0; i < v; ++i) acc += static_cast<long long>(r[static_cast<std::size_t>(i)]) * e[static_cast<std::size_t>(i)];
        if (acc % m != 0) {
          ok = false;
          break;
        }
      }
      if (ok) ++found;
      int pos = v - 1;
      while (pos >= 1 && ++e[static_cast<std::size_t>(pos)] == m) e[static_cast<std::size_t>(pos--)] = 0;
      if (pos < 1) break;
    }
    per_chunk[first] = found;
  });

  DiagonalCount out;
  out.solutions = std::accumulate(per_chunk.begin(), per_chunk.end(), std::int64_t{0});
  for (int t = 0; t < m; ++t) {
    bool preserves = true;
    for (const auto& r : sys.equations) {
      const long long sum = std::accumulate(r.begin(), r.end(), 0LL);
      if ((static_cast<long long>(t) * sum) % m != 0) {
        preserves = false;
        break;
      }
    }
    if (preserves) ++out.phase_orbit;
  }
  // The global-phase action is free, so every orbit has phase_orbit elements.
  out.count = out.solutions / out.phase_orbit;
  return out;
}

std::int64_t count_diagonal_symmetries(const ExponentSystem& sys, std::int64_t budget) {
  return enumerate_diagonal_symmetries(sys, budget).count;
}

}  // namespace locclab
