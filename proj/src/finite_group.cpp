#include "gfred/finite_group.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "gfred/common.hpp"

namespace gfred {

FiniteGroup::FiniteGroup(std::vector<std::string> names, std::vector<int> table)
    : names_(std::move(names)), table_(std::move(table)) {
  const int n = order();
  if (n == 0) throw InputError("group: empty element list");
  if (table_.size() != static_cast<std::size_t>(n) * n)
    throw InputError("group: multiplication table must be order x order");
  for (int v : table_)
    if (v < 0 || v >= n) throw InputError("group: table entry out of range");
  for (int a = 0; a < n; ++a)
    if (multiply(0, a) != a || multiply(a, 0) != a)
      throw InputError("group: element 0 is not the identity (witness " + names_[a] + ")");
  inverse_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (multiply(a, b) == 0 && multiply(b, a) == 0) inverse_[a] = b;
    if (inverse_[a] < 0) throw InputError("group: no inverse for " + names_[a]);
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (multiply(multiply(a, b), c) != multiply(a, multiply(b, c)))
          throw InputError("group: associativity fails at (" + names_[a] + ", " + names_[b] +
                           ", " + names_[c] + ")");
}

FiniteGroup FiniteGroup::trivial() { return cyclic(1); }

FiniteGroup FiniteGroup::cyclic(int n) {
  if (n < 1) throw InputError("cyclic group order must be positive");
  std::vector<std::string> names(n);
  std::vector<int> table(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    names[a] = std::to_string(a);
    for (int b = 0; b < n; ++b) table[a * n + b] = (a + b) % n;
  }
  return FiniteGroup(std::move(names), std::move(table));
}

namespace {

FiniteGroup from_permutations(std::vector<std::vector<int>> perms, const std::string& prefix) {
  // perms[0] must be the identity; composition (a·b)(i) = a(b(i)).
  std::map<std::vector<int>, int> index;
  for (std::size_t i = 0; i < perms.size(); ++i) index[perms[i]] = static_cast<int>(i);
  const int n = static_cast<int>(perms.size());
  std::vector<int> table(static_cast<std::size_t>(n) * n);
  std::vector<std::string> names(n);
  for (int a = 0; a < n; ++a) {
    names[a] = prefix;
    for (int v : perms[a]) names[a] += std::to_string(v);
    for (int b = 0; b < n; ++b) {
      std::vector<int> c(perms[a].size());
      for (std::size_t i = 0; i < c.size(); ++i) c[i] = perms[a][perms[b][i]];
      table[a * n + b] = index.at(c);
    }
  }
  return FiniteGroup(std::move(names), std::move(table));
}

}  // namespace

FiniteGroup FiniteGroup::symmetric(int n) {
  if (n < 1 || n > 5) throw InputError("symmetric group supported for 1 <= n <= 5");
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> perms;
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return from_permutations(std::move(perms), "p");
}

FiniteGroup FiniteGroup::dihedral(int n) {
  if (n < 3) throw InputError("dihedral group needs n >= 3");
  // Symmetries of the n-gon as permutations of its vertices.
  std::vector<std::vector<int>> perms;
  for (int s = 0; s < 2; ++s)
    for (int k = 0; k < n; ++k) {
      std::vector<int> p(n);
      for (int i = 0; i < n; ++i) p[i] = s == 0 ? (i + k) % n : ((k - i) % n + n) % n;
      perms.push_back(p);
    }
  return from_permutations(std::move(perms), "d");
}

FiniteGroup FiniteGroup::product(const FiniteGroup& a, const FiniteGroup& b) {
  const int na = a.order(), nb = b.order(), n = na * nb;
  std::vector<std::string> names(n);
  std::vector<int> table(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x) {
    names[x] = "(" + a.name(x / nb) + "," + b.name(x % nb) + ")";
    for (int y = 0; y < n; ++y)
      table[x * n + y] = a.multiply(x / nb, y / nb) * nb + b.multiply(x % nb, y % nb);
  }
  return FiniteGroup(std::move(names), std::move(table));
}

int FiniteGroup::element_order(int a) const {
  int k = 1;
  for (int p = a; p != 0; p = multiply(p, a)) ++k;
  return k;
}

std::vector<int> FiniteGroup::generated_subgroup(const std::vector<int>& gens) const {
  std::vector<bool> in(order(), false);
  std::vector<int> members{0};
  in[0] = true;
  for (std::size_t i = 0; i < members.size(); ++i)
    for (int g : gens) {
      const int p = multiply(members[i], g);
      if (!in[p]) {
        in[p] = true;
        members.push_back(p);
      }
    }
  std::sort(members.begin(), members.end());
  return members;
}

}  // namespace gfred
