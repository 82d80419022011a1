#pragma once

#include <cstddef>
#include <span>
#include <unordered_set>
#include <vector>

namespace abelsplit {

enum class ClosureStatus { Complete, Overflow, Rejected };

template <class T>
struct Closure {
  ClosureStatus status = ClosureStatus::Complete;
  std::vector<T> elements;  // elements[0] is the identity

  bool complete() const { return status == ClosureStatus::Complete; }
};

/// Dimino's algorithm: the subgroup generated by `gens`, built one generator
/// at a time as a union of right cosets of the previous subgroup. Stops with
/// Overflow as soon as more than `cap` elements would be held, and with
/// Rejected as soon as a new element satisfies `reject`.
template <class T, class Hash, class Mul, class Reject>
Closure<T> dimino_closure(const T& identity, std::span<const T> gens, std::size_t cap, Mul mul,
                          Reject reject) {
  Closure<T> out;
  out.elements.push_back(identity);
  std::unordered_set<T, Hash> seen;
  seen.insert(identity);
  auto& elems = out.elements;

  auto add = [&](T x) {
    if (reject(x)) {
      out.status = ClosureStatus::Rejected;
      return false;
    }
    if (elems.size() >= cap) {
      out.status = ClosureStatus::Overflow;
      return false;
    }
    seen.insert(x);
    elems.push_back(std::move(x));
    return true;
  };

  std::vector<T> used;
  for (const T& g : gens) {
    if (seen.contains(g)) continue;
    used.push_back(g);
    const std::size_t prev = elems.size();
    for (std::size_t i = 0; i < prev; ++i) {
      if (!add(mul(elems[i], g))) return out;
    }
    for (std::size_t rep = prev; rep < elems.size(); rep += prev) {
      for (const T& s : used) {
        T y = mul(elems[rep], s);
        if (seen.contains(y)) continue;
        for (std::size_t i = 0; i < prev; ++i) {
          if (!add(mul(elems[i], y))) return out;
        }
      }
    }
  }
  return out;
}

template <class T, class Hash, class Mul>
Closure<T> dimino_closure(const T& identity, std::span<const T> gens, std::size_t cap, Mul mul) {
  return dimino_closure<T, Hash>(identity, gens, cap, mul, [](const T&) { return false; });
}

}  // namespace abelsplit
