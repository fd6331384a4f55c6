#ifndef PHISUM_SYMBOL_TABLE_H_
#define PHISUM_SYMBOL_TABLE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace phisum {

// Interns names to dense ids in first-seen order.
class SymbolTable {
 public:
  int32_t Intern(std::string_view name);
  std::optional<int32_t> Find(std::string_view name) const;
  const std::string& Name(int32_t id) const { return names_[id]; }
  int32_t size() const { return static_cast<int32_t>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }

  bool operator==(const SymbolTable& other) const {
    return names_ == other.names_;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, int32_t> ids_;
};

}  // namespace phisum

#endif  // PHISUM_SYMBOL_TABLE_H_
