#include "vcsmc/ltl/prefix.hpp"

namespace vcsmc::ltl {

using K = Kleene;

const char* to_string(PrefixVerdict v) {
  switch (v) {
    case PrefixVerdict::Holds: return "Holds";
    case PrefixVerdict::Violated: return "Violated";
    case PrefixVerdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

K k_not(K a) { return a == K::Unknown ? K::Unknown : (a == K::True ? K::False : K::True); }

K k_and(K a, K b) {
  if (a == K::False || b == K::False) return K::False;
  if (a == K::True && b == K::True) return K::True;
  return K::Unknown;
}

K k_or(K a, K b) {
  if (a == K::True || b == K::True) return K::True;
  if (a == K::False && b == K::False) return K::False;
  return K::Unknown;
}

std::vector<K> evaluate(const Formula& f, std::span<const sem::State> p) {
  const std::size_t n = p.size();
  std::vector<K> out(n, K::Unknown);
  auto kid = [&](std::size_t i) { return evaluate(*f.kids[i], p); };
  switch (f.op) {
    case LtlOp::Atom:
      for (std::size_t i = 0; i < n; ++i) out[i] = sem::eval(*f.atom, p[i]) ? K::True : K::False;
      break;
    case LtlOp::True: out.assign(n, K::True); break;
    case LtlOp::False: out.assign(n, K::False); break;
    case LtlOp::Not: {
      auto a = kid(0);
      for (std::size_t i = 0; i < n; ++i) out[i] = k_not(a[i]);
      break;
    }
    case LtlOp::And:
    case LtlOp::Or:
    case LtlOp::Implies: {
      auto a = kid(0), b = kid(1);
      for (std::size_t i = 0; i < n; ++i) {
        if (f.op == LtlOp::And) out[i] = k_and(a[i], b[i]);
        else if (f.op == LtlOp::Or) out[i] = k_or(a[i], b[i]);
        else out[i] = k_or(k_not(a[i]), b[i]);
      }
      break;
    }
    case LtlOp::X: {
      auto a = kid(0);
      for (std::size_t i = 0; i + 1 < n; ++i) out[i] = a[i + 1];
      break;
    }
    case LtlOp::F:
    case LtlOp::G: {
      auto a = kid(0);
      K later = K::Unknown;
      for (std::size_t i = n; i-- > 0;) {
        later = f.op == LtlOp::F ? k_or(a[i], later) : k_and(a[i], later);
        out[i] = later;
      }
      break;
    }
    case LtlOp::U:
    case LtlOp::R: {
      auto a = kid(0), b = kid(1);
      K later = K::Unknown;
      for (std::size_t i = n; i-- > 0;) {
        later = f.op == LtlOp::U ? k_or(b[i], k_and(a[i], later)) : k_and(b[i], k_or(a[i], later));
        out[i] = later;
      }
      break;
    }
    case LtlOp::BoundedF:
    case LtlOp::BoundedG: {
      auto a = kid(0);
      const bool is_f = f.op == LtlOp::BoundedF;
      for (std::size_t i = 0; i < n; ++i) {
        K acc = is_f ? K::False : K::True;
        for (std::size_t j = i + static_cast<std::size_t>(f.lo); j <= i + static_cast<std::size_t>(f.hi); ++j) {
          K v = j < n ? a[j] : K::Unknown;
          acc = is_f ? k_or(acc, v) : k_and(acc, v);
          if (j >= n) break;  // everything further is unknown as well
        }
        out[i] = acc;
      }
      break;
    }
    case LtlOp::O:
    case LtlOp::H: {
      auto a = kid(0);
      K acc = f.op == LtlOp::O ? K::False : K::True;
      for (std::size_t i = 0; i < n; ++i) {
        acc = f.op == LtlOp::O ? k_or(acc, a[i]) : k_and(acc, a[i]);
        out[i] = acc;
      }
      break;
    }
    case LtlOp::Y: {
      auto a = kid(0);
      for (std::size_t i = 0; i < n; ++i) out[i] = i == 0 ? K::False : a[i - 1];
      break;
    }
  }
  return out;
}

PrefixVerdict holds_on_prefix(const Formula& f, std::span<const sem::State> prefix) {
  if (prefix.empty()) return PrefixVerdict::Inconclusive;
  switch (evaluate(f, prefix)[0]) {
    case K::True: return PrefixVerdict::Holds;
    case K::False: return PrefixVerdict::Violated;
    case K::Unknown: break;
  }
  return PrefixVerdict::Inconclusive;
}

PrefixVerdict holds_on_prefix(const Formula& f, const sem::Trace& trace) {
  return holds_on_prefix(f, std::span<const sem::State>(trace.states));
}

}  // namespace vcsmc::ltl
