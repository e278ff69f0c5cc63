#include "unfree/symbol.hpp"

#include <deque>
#include <mutex>
#include <unordered_map>

#include "unfree/error.hpp"

namespace unfree {
namespace {

struct SymbolTable {
  std::mutex mutex;
  std::deque<std::string> names{""};
  std::unordered_map<std::string_view, std::uint32_t> ids;
};

SymbolTable& table() {
  static SymbolTable t;
  return t;
}

} // namespace

Symbol Symbol::intern(std::string_view name) {
  auto& t = table();
  std::lock_guard lock(t.mutex);
  if (auto it = t.ids.find(name); it != t.ids.end()) return Symbol(it->second);
  auto id = static_cast<std::uint32_t>(t.names.size());
  const auto& stored = t.names.emplace_back(name);
  t.ids.emplace(stored, id);
  return Symbol(id);
}

const std::string& Symbol::name() const {
  auto& t = table();
  std::lock_guard lock(t.mutex);
  return t.names[id_];
}

std::string SourcePos::str() const {
  return std::to_string(line) + ":" + std::to_string(column);
}

Error::Error(const std::string& message, std::optional<SourcePos> pos)
    : std::runtime_error(pos && pos->known() ? pos->str() + ": " + message : message),
      message_(message),
      pos_(pos) {}

} // namespace unfree
