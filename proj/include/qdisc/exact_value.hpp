#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qdisc {

/// An element of Q u Q/sqrt3: num / den, or num / (den * sqrt3).
/// Every printed certificate entry has this form. Text forms: "0", "7",
/// "7/8", "-1/(16*sqrt3)".
struct ExactValue {
  std::int64_t num = 0;
  std::int64_t den = 1;
  bool over_sqrt3 = false;

  static ExactValue make(std::int64_t p, std::int64_t q, bool sqrt3 = false) {
    if (q == 0) throw std::invalid_argument("ExactValue: zero denominator");
    if (q < 0) {
      p = -p;
      q = -q;
    }
    const std::int64_t g = std::gcd(p < 0 ? -p : p, q);
    if (g > 1) {
      p /= g;
      q /= g;
    }
    if (p == 0) return {0, 1, false};
    return {p, q, sqrt3};
  }

  double value() const {
    const double v = static_cast<double>(num) / static_cast<double>(den);
    return over_sqrt3 ? v / std::sqrt(3.0) : v;
  }

  std::string str() const {
    if (num == 0) return "0";
    if (over_sqrt3) {
      if (den == 1) return std::to_string(num) + "/sqrt3";
      return std::to_string(num) + "/(" + std::to_string(den) + "*sqrt3)";
    }
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }

  static ExactValue parse(std::string_view s) {
    auto fail = [&] { return std::invalid_argument("cannot parse exact value '" + std::string(s) + "'"); };
    auto to_int = [&](std::string_view t) -> std::int64_t {
      if (t.empty()) throw fail();
      std::size_t used = 0;
      std::int64_t v = 0;
      try {
        v = std::stoll(std::string(t), &used);
      } catch (const std::exception&) {
        throw fail();
      }
      if (used != t.size()) throw fail();
      return v;
    };
    const auto slash = s.find('/');
    if (slash == std::string_view::npos) return make(to_int(s), 1);
    const std::int64_t p = to_int(s.substr(0, slash));
    std::string_view rest = s.substr(slash + 1);
    if (rest == "sqrt3") return make(p, 1, true);
    if (rest.size() > 2 && rest.front() == '(' && rest.back() == ')') {
      rest = rest.substr(1, rest.size() - 2);
      constexpr std::string_view kSuffix = "*sqrt3";
      if (rest.size() <= kSuffix.size() || rest.substr(rest.size() - kSuffix.size()) != kSuffix) throw fail();
      return make(p, to_int(rest.substr(0, rest.size() - kSuffix.size())), true);
    }
    return make(p, to_int(rest));
  }

  friend bool operator==(const ExactValue&, const ExactValue&) = default;
};

inline ExactValue frac(std::int64_t p, std::int64_t q = 1) { return ExactValue::make(p, q); }
inline ExactValue frac_sqrt3(std::int64_t p, std::int64_t q = 1) { return ExactValue::make(p, q, true); }

}  // namespace qdisc
