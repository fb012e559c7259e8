#pragma once
// Variable naming and ranking.
//
// Algebraic mode: x_1 < ... < x_n get ids 1..n.
// Differential mode: y_i^(j) gets id (i << 16) | j, so integer order equals
// the elimination ranking (class first, then derivative order).

#include <optional>
#include <string>
#include <vector>

#include "tdecomp/poly.hpp"

namespace tdecomp {

inline constexpr unsigned kOrderBits = 16;
inline constexpr Var kOrderMask = (Var{1} << kOrderBits) - 1;

inline Var diff_var(unsigned base, unsigned order) { return (Var(base) << kOrderBits) | Var(order); }
inline unsigned diff_base(Var v) { return v >> kOrderBits; }
inline unsigned diff_order(Var v) { return v & kOrderMask; }

class VarOrder {
public:
  enum class Kind { algebraic, differential };

  VarOrder() = default;
  static VarOrder algebraic(std::vector<std::string> names) { return VarOrder(Kind::algebraic, std::move(names)); }
  static VarOrder differential(std::vector<std::string> names) { return VarOrder(Kind::differential, std::move(names)); }

  Kind kind() const { return kind_; }
  bool is_differential() const { return kind_ == Kind::differential; }
  const std::vector<std::string>& names() const { return names_; }
  std::size_t size() const { return names_.size(); }

  // Variable (order 0 in differential mode) for the i-th name, 0-based.
  Var var(std::size_t i) const {
    return is_differential() ? diff_var(static_cast<unsigned>(i + 1), 0) : static_cast<Var>(i + 1);
  }
  std::vector<Var> vars() const {
    std::vector<Var> out;
    for (std::size_t i = 0; i < names_.size(); ++i) out.push_back(var(i));
    return out;
  }
  std::optional<Var> find(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return var(i);
    return std::nullopt;
  }

  // Index (0-based) of the name a variable belongs to.
  std::optional<std::size_t> index_of(Var v) const {
    if (is_aux(v)) return std::nullopt;
    std::size_t i = is_differential() ? diff_base(v) : v;
    if (i == 0 || i > names_.size()) return std::nullopt;
    return i - 1;
  }
  bool knows(Var v) const { return index_of(v).has_value(); }

  std::string name(Var v) const {
    switch (v) {
    case kY0: return "Y0";
    case kY1: return "Y1";
    case kU: return "U";
    case kU0: return "U0";
    case kU1: return "U1";
    default: break;
    }
    auto idx = index_of(v);
    std::string base = idx ? names_[*idx] : "v" + std::to_string(v);
    if (!is_differential()) return base;
    unsigned j = diff_order(v);
    if (j <= 3) return base + std::string(j, '\'');
    return base + "^(" + std::to_string(j) + ")";
  }

private:
  VarOrder(Kind k, std::vector<std::string> names) : kind_(k), names_(std::move(names)) {
    for (std::size_t i = 0; i < names_.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (names_[i] == names_[j]) throw Error("duplicate variable name: " + names_[i]);
  }

  Kind kind_ = Kind::algebraic;
  std::vector<std::string> names_;
};

} // namespace tdecomp
