#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace unfree {

/// Interned identifier. Comparison is by id; the spelling lives in a
/// process-wide table guarded by a mutex, so reading is thread-safe.
class Symbol {
public:
  Symbol() = default;

  static Symbol intern(std::string_view name);

  [[nodiscard]] const std::string& name() const;
  [[nodiscard]] std::uint32_t id() const { return id_; }
  [[nodiscard]] bool valid() const { return id_ != 0; }

  friend bool operator==(Symbol a, Symbol b) { return a.id_ == b.id_; }
  friend bool operator!=(Symbol a, Symbol b) { return a.id_ != b.id_; }

private:
  explicit Symbol(std::uint32_t id) : id_(id) {}
  std::uint32_t id_ = 0;
};

} // namespace unfree

template <>
struct std::hash<unfree::Symbol> {
  std::size_t operator()(unfree::Symbol s) const noexcept { return s.id(); }
};
