#ifndef PHISUM_SEMIRING_H_
#define PHISUM_SEMIRING_H_

#include <algorithm>
#include <charconv>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>

namespace phisum {

// A semiring is a stateless traits type over a value type `Weight`.
// Rings add Minus; division rings add Inverse (defined for non-zero weights).
template <class K>
concept Semiring = requires(typename K::Weight a, typename K::Weight b,
                            std::string_view text) {
  { K::Zero() } -> std::same_as<typename K::Weight>;
  { K::One() } -> std::same_as<typename K::Weight>;
  { K::Plus(a, b) } -> std::same_as<typename K::Weight>;
  { K::Times(a, b) } -> std::same_as<typename K::Weight>;
  { K::Equal(a, b) } -> std::same_as<bool>;
  { K::Parse(text) } -> std::same_as<std::optional<typename K::Weight>>;
  { K::Format(a) } -> std::same_as<std::string>;
  { K::kName } -> std::convertible_to<std::string_view>;
};

template <class K>
concept Ring = Semiring<K> && requires(typename K::Weight a,
                                       typename K::Weight b) {
  { K::Minus(a, b) } -> std::same_as<typename K::Weight>;
};

template <class K>
concept DivisionRing = Ring<K> && requires(typename K::Weight a) {
  { K::Inverse(a) } -> std::same_as<typename K::Weight>;
};

namespace internal {

inline std::optional<double> ParseDouble(std::string_view text) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return std::nullopt;
  double value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(),
                                   value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    return std::nullopt;
  }
  return value;
}

// Shortest representation that parses back to the same double.
inline std::string FormatDouble(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace internal

struct BooleanSemiring {
  using Weight = uint8_t;  // avoids std::vector<bool>
  static constexpr std::string_view kName = "boolean";
  static Weight Zero() { return 0; }
  static Weight One() { return 1; }
  static Weight Plus(Weight a, Weight b) { return a | b; }
  static Weight Times(Weight a, Weight b) { return a & b; }
  static bool Equal(Weight a, Weight b) { return a == b; }
  static std::optional<Weight> Parse(std::string_view text) {
    if (text == "0") return Weight{0};
    if (text == "1") return Weight{1};
    return std::nullopt;
  }
  static std::string Format(Weight a) { return a ? "1" : "0"; }
};

// min-plus over R ∪ {+inf}.
struct TropicalMinSemiring {
  using Weight = double;
  static constexpr std::string_view kName = "tropical-min";
  static Weight Zero() { return std::numeric_limits<double>::infinity(); }
  static Weight One() { return 0.0; }
  static Weight Plus(Weight a, Weight b) { return std::min(a, b); }
  static Weight Times(Weight a, Weight b) { return a + b; }
  static bool Equal(Weight a, Weight b) { return a == b; }
  static std::optional<Weight> Parse(std::string_view text) {
    auto v = internal::ParseDouble(text);
    if (!v || std::isnan(*v) || *v == -Zero()) return std::nullopt;
    return v;
  }
  static std::string Format(Weight a) { return internal::FormatDouble(a); }
};

// max-plus over R ∪ {-inf}.
struct TropicalMaxSemiring {
  using Weight = double;
  static constexpr std::string_view kName = "tropical-max";
  static Weight Zero() { return -std::numeric_limits<double>::infinity(); }
  static Weight One() { return 0.0; }
  static Weight Plus(Weight a, Weight b) { return std::max(a, b); }
  static Weight Times(Weight a, Weight b) { return a + b; }
  static bool Equal(Weight a, Weight b) { return a == b; }
  static std::optional<Weight> Parse(std::string_view text) {
    auto v = internal::ParseDouble(text);
    if (!v || std::isnan(*v) || *v == -Zero()) return std::nullopt;
    return v;
  }
  static std::string Format(Weight a) { return internal::FormatDouble(a); }
};

struct RealSemiring {
  using Weight = double;
  static constexpr std::string_view kName = "real";
  static Weight Zero() { return 0.0; }
  static Weight One() { return 1.0; }
  static Weight Plus(Weight a, Weight b) { return a + b; }
  static Weight Times(Weight a, Weight b) { return a * b; }
  static Weight Minus(Weight a, Weight b) { return a - b; }
  static Weight Inverse(Weight a) { return 1.0 / a; }
  static bool Equal(Weight a, Weight b) { return a == b; }
  static std::optional<Weight> Parse(std::string_view text) {
    auto v = internal::ParseDouble(text);
    if (!v || !std::isfinite(*v)) return std::nullopt;
    return v;
  }
  static std::string Format(Weight a) { return internal::FormatDouble(a); }
};

// Weights are log-values; Plus is log(exp a + exp b). Deliberately not a
// ring: subtracting in log space loses precision and can leave the domain.
struct LogSemiring {
  using Weight = double;
  static constexpr std::string_view kName = "log";
  static Weight Zero() { return -std::numeric_limits<double>::infinity(); }
  static Weight One() { return 0.0; }
  static Weight Plus(Weight a, Weight b) {
    if (a == Zero()) return b;
    if (b == Zero()) return a;
    const double hi = std::max(a, b);
    const double lo = std::min(a, b);
    return hi + std::log1p(std::exp(lo - hi));
  }
  static Weight Times(Weight a, Weight b) { return a + b; }
  static bool Equal(Weight a, Weight b) { return a == b; }
  static std::optional<Weight> Parse(std::string_view text) {
    auto v = internal::ParseDouble(text);
    if (!v || std::isnan(*v) || *v == -Zero()) return std::nullopt;
    return v;
  }
  static std::string Format(Weight a) { return internal::FormatDouble(a); }
};

// Integers under + and ×; a ring, so path counts support subtraction.
struct CountSemiring {
  using Weight = int64_t;
  static constexpr std::string_view kName = "count";
  static Weight Zero() { return 0; }
  static Weight One() { return 1; }
  static Weight Plus(Weight a, Weight b) { return a + b; }
  static Weight Times(Weight a, Weight b) { return a * b; }
  static Weight Minus(Weight a, Weight b) { return a - b; }
  static bool Equal(Weight a, Weight b) { return a == b; }
  static std::optional<Weight> Parse(std::string_view text) {
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    Weight value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(),
                                     value);
    if (text.empty() || ec != std::errc() ||
        ptr != text.data() + text.size()) {
      return std::nullopt;
    }
    return value;
  }
  static std::string Format(Weight a) { return std::to_string(a); }
};

// Counts of semiring operations performed through an Ops wrapper.
struct OpCounts {
  uint64_t oplus = 0;
  uint64_t otimes = 0;
  uint64_t ominus = 0;
  uint64_t inverse = 0;
};

// Semiring operations that bump an optional OpCounts.
template <Semiring K>
class Ops {
 public:
  using Weight = typename K::Weight;

  explicit Ops(OpCounts* counts = nullptr) : counts_(counts) {}

  Weight Plus(const Weight& a, const Weight& b) const {
    if (counts_) ++counts_->oplus;
    return K::Plus(a, b);
  }
  Weight Times(const Weight& a, const Weight& b) const {
    if (counts_) ++counts_->otimes;
    return K::Times(a, b);
  }
  Weight Minus(const Weight& a, const Weight& b) const
    requires Ring<K>
  {
    if (counts_) ++counts_->ominus;
    return K::Minus(a, b);
  }
  Weight Inverse(const Weight& a) const
    requires DivisionRing<K>
  {
    if (counts_) ++counts_->inverse;
    return K::Inverse(a);
  }

  OpCounts* counts() const { return counts_; }

 private:
  OpCounts* counts_;
};

// Calls f(K{}) for the semiring named `name`; returns false if unknown.
template <class F>
bool DispatchSemiring(std::string_view name, F&& f) {
  if (name == BooleanSemiring::kName) {
    f(BooleanSemiring{});
  } else if (name == TropicalMinSemiring::kName) {
    f(TropicalMinSemiring{});
  } else if (name == TropicalMaxSemiring::kName) {
    f(TropicalMaxSemiring{});
  } else if (name == RealSemiring::kName) {
    f(RealSemiring{});
  } else if (name == LogSemiring::kName) {
    f(LogSemiring{});
  } else if (name == CountSemiring::kName) {
    f(CountSemiring{});
  } else {
    return false;
  }
  return true;
}

// Agreement used when comparing results of different algorithms: exact for
// discrete semirings, relative 1e-9 for real (with a tiny absolute floor,
// since subtraction can leave a residue near an exact zero), absolute 1e-6
// for log.
template <Semiring K>
bool WeightsAgree(const typename K::Weight& a, const typename K::Weight& b) {
  if constexpr (std::is_same_v<K, RealSemiring>) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return std::abs(a - b) <= std::max(1e-9 * scale, 1e-14);
  } else if constexpr (std::is_same_v<K, LogSemiring>) {
    if (a == b) return true;  // covers both -inf
    return std::abs(a - b) <= 1e-6;
  } else {
    return K::Equal(a, b);
  }
}

inline constexpr std::string_view kSemiringNames[] = {
    BooleanSemiring::kName, TropicalMinSemiring::kName,
    TropicalMaxSemiring::kName, RealSemiring::kName,
    LogSemiring::kName, CountSemiring::kName};

}  // namespace phisum

#endif  // PHISUM_SEMIRING_H_
