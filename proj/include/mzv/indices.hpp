#pragma once

#include <algorithm>
#include <string>
#include <vector>

namespace mzv {

using MultiIndex = std::vector<int>;

/// Visits every index in {0..cap}^r in lexicographic order.
template <typename F>
void for_each_index(int r, int cap, F&& visit) {
  if (r <= 0 || cap < 0) {
    return;
  }
  MultiIndex k(r, 0);
  while (true) {
    visit(static_cast<const MultiIndex&>(k));
    int pos = r - 1;
    while (pos >= 0 && k[pos] == cap) {
      k[pos] = 0;
      --pos;
    }
    if (pos < 0) {
      return;
    }
    ++k[pos];
  }
}

/// Visits every (i, j) with i_a + j_a = total_a componentwise, i ascending lexicographically.
template <typename F>
void for_each_split(const MultiIndex& total, F&& visit) {
  const int n = static_cast<int>(total.size());
  MultiIndex i(n, 0);
  MultiIndex j = total;
  while (true) {
    visit(static_cast<const MultiIndex&>(i), static_cast<const MultiIndex&>(j));
    int pos = n - 1;
    while (pos >= 0 && i[pos] == total[pos]) {
      i[pos] = 0;
      j[pos] = total[pos];
      --pos;
    }
    if (pos < 0) {
      return;
    }
    ++i[pos];
    --j[pos];
  }
}

inline int index_weight(const MultiIndex& k) {
  int w = 0;
  for (int x : k) {
    w += x;
  }
  return w;
}

inline int max_entry(const MultiIndex& k) { return k.empty() ? 0 : *std::max_element(k.begin(), k.end()); }

inline std::string index_str(const MultiIndex& k) {
  std::string out = "(";
  for (std::size_t a = 0; a < k.size(); ++a) {
    out += (a ? "," : "") + std::to_string(k[a]);
  }
  return out + ")";
}

} // namespace mzv
