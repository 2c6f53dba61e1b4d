// Prints a few values, the depth-2 desingularization expansion and one
// product of words, then checks the depth-2 product formula on one instance.

#include <iostream>

#include "mzv/gr_coeff.hpp"
#include "mzv/verify.hpp"
#include "mzv/word_algebra.hpp"

int main() {
  using mzv::MultiIndex;

  for (const MultiIndex& k : {MultiIndex{0}, MultiIndex{1}, MultiIndex{0, 0}, MultiIndex{1, 2}, MultiIndex{2, 1, 0}}) {
    std::cout << "k = " << mzv::index_str(k) << "  zeta_des = " << mzv::zeta_des(k) << "  zeta_EMS = "
              << mzv::zeta_ems(k) << "\n";
  }

  std::cout << "\n" << mzv::desing_expression(2).to_text();

  std::cout << "\ndy sh0 dy = " << mzv::shuffle0("dy", "dy").str() << "\n";

  const MultiIndex k{1};
  const MultiIndex l{1, 1};
  mzv::Rational rhs;
  for (const auto& t : mzv::shuffle_product_terms(k, l)) {
    rhs += t.coef * mzv::zeta_des(t.index);
  }
  std::cout << "zeta_des(-1) * zeta_des(-1,-1) = " << mzv::zeta_des(k) * mzv::zeta_des(l) << " = " << rhs << "\n";
}
