#pragma once

#include <string>
#include <vector>

namespace gfred {

/// Finite group given by its multiplication table; element 0 is the identity.
class FiniteGroup {
 public:
  FiniteGroup() = default;
  /// Validates closure, identity at 0, inverses and associativity; throws
  /// InputError otherwise.
  FiniteGroup(std::vector<std::string> names, std::vector<int> table);

  static FiniteGroup trivial();
  static FiniteGroup cyclic(int n);
  static FiniteGroup dihedral(int n);
  static FiniteGroup symmetric(int n);
  static FiniteGroup product(const FiniteGroup& a, const FiniteGroup& b);

  int order() const { return static_cast<int>(names_.size()); }
  int identity() const { return 0; }
  int multiply(int a, int b) const { return table_[static_cast<std::size_t>(a) * names_.size() + b]; }
  int inverse(int a) const { return inverse_[a]; }
  int element_order(int a) const;
  const std::string& name(int a) const { return names_[a]; }
  const std::vector<std::string>& names() const { return names_; }

  /// Subgroup generated by `gens`, ascending.
  std::vector<int> generated_subgroup(const std::vector<int>& gens) const;

 private:
  std::vector<std::string> names_;
  std::vector<int> table_;
  std::vector<int> inverse_;
};

}  // namespace gfred
