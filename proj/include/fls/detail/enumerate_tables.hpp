#pragma once

#include <string>
#include <vector>

#include "fls/error.hpp"

namespace fls {

template <class DomComp, class CodComp>
std::vector<Table> enumerate_tables(std::size_t dom_size, std::size_t cod_size, DomComp&& dom_comp,
                                    CodComp&& cod_comp, std::size_t cap) {
  std::vector<Table> out;
  Table current(dom_size, 0);
  // Depth-first over positions; a value is admissible when it keeps # with
  // every earlier position that is # in the domain.
  auto admissible = [&](std::size_t pos) {
    for (std::size_t q = 0; q < pos; ++q)
      if (dom_comp(pos, q) && !cod_comp(current[pos], current[q])) return false;
    return true;
  };
  std::size_t pos = 0;
  std::vector<std::size_t> next(dom_size + 1, 0);
  while (true) {
    if (pos == dom_size) {
      if (out.size() == cap) {
        throw Error(ErrorKind::SizeLimitExceeded,
                    "more than " + std::to_string(cap) + " tables in one carrier");
      }
      out.push_back(current);
      if (pos == 0) break;
      --pos;
      continue;
    }
    bool placed = false;
    while (next[pos] < cod_size) {
      current[pos] = next[pos]++;
      if (admissible(pos)) {
        placed = true;
        break;
      }
    }
    if (placed) {
      ++pos;
      next[pos] = 0;
    } else {
      if (pos == 0) break;
      next[pos] = 0;
      --pos;
    }
  }
  return out;
}

}  // namespace fls
