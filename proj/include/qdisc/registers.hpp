#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qdisc {

/// Named qubit registers. The `b` suffix marks the barred copy of a register.
/// Enumerator order is the canonical global order (1, 2b, 3, 4b, 5, 6b).
enum class Register : std::uint8_t { r1, r2b, r3, r4b, r5, r6b };

inline constexpr std::array<Register, 6> kAllRegisters = {
    Register::r1, Register::r2b, Register::r3, Register::r4b, Register::r5, Register::r6b};

inline std::string_view to_string(Register r) {
  switch (r) {
    case Register::r1: return "1";
    case Register::r2b: return "2b";
    case Register::r3: return "3";
    case Register::r4b: return "4b";
    case Register::r5: return "5";
    case Register::r6b: return "6b";
  }
  return "?";
}

inline Register parse_register(std::string_view s) {
  for (Register r : kAllRegisters) {
    if (to_string(r) == s) return r;
  }
  throw std::invalid_argument("unknown register label '" + std::string(s) + "'");
}

/// Ordered list of distinct qubit registers. The first register is the most
/// significant tensor factor of any matrix laid out over it.
class SystemLayout {
 public:
  SystemLayout() = default;
  SystemLayout(std::initializer_list<Register> regs) : SystemLayout(std::vector<Register>(regs)) {}
  explicit SystemLayout(std::vector<Register> regs) : regs_(std::move(regs)) {
    for (std::size_t i = 0; i < regs_.size(); ++i) {
      for (std::size_t j = i + 1; j < regs_.size(); ++j) {
        if (regs_[i] == regs_[j]) {
          throw std::invalid_argument("duplicate register '" + std::string(to_string(regs_[i])) +
                                      "' in layout");
        }
      }
    }
  }

  const std::vector<Register>& registers() const { return regs_; }
  std::size_t size() const { return regs_.size(); }
  bool empty() const { return regs_.empty(); }
  std::size_t dim() const { return std::size_t{1} << regs_.size(); }
  Register operator[](std::size_t i) const { return regs_[i]; }
  auto begin() const { return regs_.begin(); }
  auto end() const { return regs_.end(); }

  std::optional<std::size_t> position(Register r) const {
    auto it = std::find(regs_.begin(), regs_.end(), r);
    if (it == regs_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - regs_.begin());
  }
  bool contains(Register r) const { return position(r).has_value(); }

  std::size_t index_of(Register r) const {
    auto p = position(r);
    if (!p) throw std::invalid_argument("register '" + std::string(to_string(r)) + "' not in layout " + str());
    return *p;
  }

  bool same_set(const SystemLayout& other) const {
    if (other.size() != size()) return false;
    return std::all_of(regs_.begin(), regs_.end(), [&](Register r) { return other.contains(r); });
  }

  SystemLayout canonical() const {
    auto sorted = regs_;
    std::sort(sorted.begin(), sorted.end());
    return SystemLayout(std::move(sorted));
  }

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < regs_.size(); ++i) {
      if (i) s += ",";
      s += to_string(regs_[i]);
    }
    return s + ")";
  }

  friend bool operator==(const SystemLayout&, const SystemLayout&) = default;

 private:
  std::vector<Register> regs_;
};

/// The six-register layout all cross-module comparisons use.
inline SystemLayout canonical_layout() {
  return SystemLayout(std::vector<Register>(kAllRegisters.begin(), kAllRegisters.end()));
}

}  // namespace qdisc
