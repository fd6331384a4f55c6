#ifndef PHISUM_AGGREGATOR_H_
#define PHISUM_AGGREGATOR_H_

#include <bit>
#include <concepts>
#include <cstdint>
#include <functional>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "phisum/errors.h"
#include "phisum/semiring.h"
#include "phisum/types.h"

namespace phisum {

// A map from keys to weights with an O(1) total, undoable updates and a
// global left-multiplication. Each Set or Mult is one undoable update.
template <class A>
concept Aggregator = requires(A a, const A ca, Label key,
                              typename A::Weight w, size_t n) {
  a.Set(key, w);
  a.Mult(w);
  a.Undo(n);
  { ca.Get(key) } -> std::same_as<typename A::Weight>;
  { ca.Value() } -> std::same_as<typename A::Weight>;
  { ca.Contains(key) } -> std::same_as<bool>;
  { ca.size() } -> std::convertible_to<size_t>;
  { ca.pending_updates() } -> std::convertible_to<size_t>;
  { ca.Clone() } -> std::same_as<A>;
  { ca.Entries() } -> std::same_as<std::vector<std::pair<Label, typename A::Weight>>>;
};

struct AggregatorStats {
  uint64_t sets = 0;
  uint64_t mults = 0;
  uint64_t undone = 0;
  uint64_t node_writes = 0;
  uint64_t last_update_node_writes = 0;
  uint64_t multiplier_touches = 0;
};

using LabelNamer = std::function<std::string(Label)>;

namespace internal {

// Keys interned to dense slots in insertion order; undo pops the newest.
class KeySlots {
 public:
  int32_t Find(Label key) const {
    auto it = slot_.find(key);
    return it == slot_.end() ? -1 : it->second;
  }
  int32_t Add(Label key) {
    const auto slot = static_cast<int32_t>(keys_.size());
    keys_.push_back(key);
    slot_.emplace(key, slot);
    return slot;
  }
  void PopLast() {
    slot_.erase(keys_.back());
    keys_.pop_back();
  }
  size_t size() const { return keys_.size(); }
  Label key(int32_t slot) const { return keys_[slot]; }

 private:
  std::vector<Label> keys_;
  std::unordered_map<Label, int32_t> slot_;
};

}  // namespace internal

// General-semiring aggregator: a complete binary tree over the slots, laid
// out in order (leaf n at position 2n, root of a 2^L-leaf tree at 2^L - 1)
// so that doubling the capacity only appends nodes. Every node holds a
// multiplier m and a sum u; its scaled value is m ⊗ u, and
// u = scaled(left) ⊕ scaled(right) holds at internal nodes. Mult scales the
// root multiplier; Set pushes multipliers off its root-to-leaf path on the
// way down and recomputes sums on the way up.
template <Semiring K>
class FenwickAggregator {
 public:
  using Weight = typename K::Weight;

  explicit FenwickAggregator(OpCounts* ops = nullptr) : ops_(ops) {}

  void Set(Label key, const Weight& v) {
    undo_.push_back({Op::kSentinel, 0, {}});
    ++sentinels_;
    ++stats_.sets;
    uint64_t writes = 0;
    int32_t slot = keys_.Find(key);
    if (slot < 0) slot = Intern(key, &writes);

    const int64_t leaf = 2 * int64_t{slot};
    path_.clear();
    int64_t x = Root();
    Weight carry = K::One();
    for (int h = levels_; h > 0; --h) {
      path_.push_back(x);
      const Weight mx = TimesUnlessOne(carry, nodes_[x].m);
      const int64_t half = int64_t{1} << (h - 1);
      const bool go_left = leaf < x;
      const int64_t sibling = go_left ? x + half : x - half;
      if (!K::Equal(mx, K::One())) {
        Write(sibling, {ops_.Times(mx, nodes_[sibling].m), nodes_[sibling].u});
        ++writes;
      }
      carry = mx;
      x = go_left ? x - half : x + half;
    }
    Write(x, {K::One(), v});
    ++writes;
    for (size_t i = path_.size(); i-- > 0;) {
      const int64_t j = path_[i];
      Write(j, {K::One(), ChildSum(j)});
      ++writes;
    }
    stats_.node_writes += writes;
    stats_.last_update_node_writes = writes;
  }

  Weight Get(Label key) const {
    const int32_t slot = keys_.Find(key);
    if (slot < 0) return K::Zero();
    const int64_t leaf = 2 * int64_t{slot};
    Weight acc = K::One();
    int64_t x = Root();
    for (int h = levels_; h > 0; --h) {
      acc = TimesUnlessOne(acc, nodes_[x].m);
      const int64_t half = int64_t{1} << (h - 1);
      x = leaf < x ? x - half : x + half;
    }
    return TimesUnlessOne(acc, Scaled(x));
  }

  Weight Value() const { return levels_ < 0 ? K::Zero() : Scaled(Root()); }

  void Mult(const Weight& m) {
    undo_.push_back({Op::kSentinel, 0, {}});
    ++sentinels_;
    ++stats_.mults;
    stats_.last_update_node_writes = 0;
    if (levels_ < 0) return;  // nothing to scale
    const int64_t r = Root();
    Write(r, {ops_.Times(m, nodes_[r].m), nodes_[r].u});
    ++stats_.node_writes;
    stats_.last_update_node_writes = 1;
  }

  void Undo(size_t n = 1) {
    if (n > sentinels_) {
      throw UnderflowError("undo of " + std::to_string(n) + " updates with " +
                           std::to_string(sentinels_) + " recorded");
    }
    while (n > 0) {
      const Record rec = undo_.back();
      undo_.pop_back();
      switch (rec.kind) {
        case Op::kSentinel:
          --sentinels_;
          --n;
          ++stats_.undone;
          break;
        case Op::kNode:
          nodes_[rec.pos] = rec.old;
          break;
        case Op::kIntern:
          keys_.PopLast();
          break;
        case Op::kGrow:
          --levels_;
          break;
      }
    }
  }

  bool Contains(Label key) const { return keys_.Find(key) >= 0; }
  size_t size() const { return keys_.size(); }
  size_t pending_updates() const { return sentinels_; }
  int levels() const { return levels_; }
  const AggregatorStats& stats() const { return stats_; }

  // Scaled value of every key, in slot order. Linear in the capacity.
  std::vector<std::pair<Label, Weight>> Entries() const {
    std::vector<std::pair<Label, Weight>> out(keys_.size());
    if (levels_ >= 0) Collect(Root(), levels_, K::One(), out);
    return out;
  }

  // Independent copy with multipliers folded into the leaves; linear time.
  FenwickAggregator Clone() const {
    return FromEntries(Entries(), ops_.counts());
  }

  // Copy, left-multiply everything by `scale` (if given), then apply
  // `updates`, building the new tree once.
  FenwickAggregator CopyAndUpdate(
      const Weight* scale,
      std::span<const std::pair<Label, Weight>> updates) const {
    auto entries = Entries();
    if (scale != nullptr) {
      for (auto& e : entries) e.second = ops_.Times(*scale, e.second);
    }
    for (const auto& [key, v] : updates) {
      const int32_t slot = keys_.Find(key);
      if (slot >= 0) {
        entries[slot].second = v;
      } else {
        entries.push_back({key, v});
      }
    }
    return FromEntries(std::move(entries), ops_.counts());
  }

  static FenwickAggregator FromEntries(
      std::vector<std::pair<Label, Weight>> entries, OpCounts* ops = nullptr) {
    FenwickAggregator a(ops);
    const size_t n = entries.size();
    if (n == 0) return a;
    int levels = 0;
    while ((size_t{1} << levels) < n) ++levels;
    a.levels_ = levels;
    const int64_t capacity = int64_t{1} << levels;
    a.nodes_.assign(2 * capacity - 1, Node{K::One(), K::Zero()});
    for (size_t i = 0; i < n; ++i) {
      a.keys_.Add(entries[i].first);
      a.nodes_[2 * i].u = entries[i].second;
    }
    for (int h = 1; h <= levels; ++h) {
      const int64_t step = int64_t{1} << (h + 1);
      for (int64_t x = (int64_t{1} << h) - 1; x < 2 * capacity - 1; x += step) {
        a.nodes_[x].u = a.ChildSum(x);
      }
    }
    return a;
  }

  // Every internal node's sum equals the sum of its children's scaled values.
  bool CheckInvariant() const {
    if (levels_ <= 0) return true;
    const int64_t capacity = int64_t{1} << levels_;
    for (int64_t x = 1; x < 2 * capacity - 1; x += 2) {
      if (!K::Equal(nodes_[x].u, ChildSum(x))) return false;
    }
    return true;
  }

  void Dump(std::ostream& out, const LabelNamer& name) const {
    out << "fenwick keys=" << keys_.size() << " levels=" << levels_ << '\n';
    for (const auto& [key, v] : Entries()) {
      out << "  " << name(key) << " -> " << K::Format(v) << '\n';
    }
    if (levels_ < 0) return;
    const int64_t count = 2 * (int64_t{1} << levels_) - 1;
    for (int64_t x = 0; x < count; ++x) {
      out << "  node " << x << " m=" << K::Format(nodes_[x].m)
          << " u=" << K::Format(nodes_[x].u) << '\n';
    }
  }

 private:
  struct Node {
    Weight m;
    Weight u;
  };
  enum class Op : uint8_t { kSentinel, kNode, kIntern, kGrow };
  struct Record {
    Op kind;
    int64_t pos;
    Node old;
  };

  int64_t Root() const { return (int64_t{1} << levels_) - 1; }

  Weight TimesUnlessOne(const Weight& a, const Weight& b) const {
    if (K::Equal(a, K::One())) return b;
    if (K::Equal(b, K::One())) return a;
    return ops_.Times(a, b);
  }

  Weight Scaled(int64_t x) const {
    return TimesUnlessOne(nodes_[x].m, nodes_[x].u);
  }

  Weight ChildSum(int64_t x) const {
    const int64_t half = int64_t{1} << (std::countr_one(uint64_t(x)) - 1);
    return ops_.Plus(Scaled(x - half), Scaled(x + half));
  }

  void Write(int64_t pos, const Node& node) {
    undo_.push_back({Op::kNode, pos, nodes_[pos]});
    nodes_[pos] = node;
  }

  // Nodes past the high-water mark start as (One, Zero). Nodes below it that
  // lie outside the current capacity are back in that state, because every
  // write made while they were in use has been undone.
  void EnsureNodes(int64_t count) {
    if (static_cast<int64_t>(nodes_.size()) < count) {
      nodes_.resize(count, Node{K::One(), K::Zero()});
    }
  }

  int32_t Intern(Label key, uint64_t* writes) {
    const int32_t slot = keys_.Add(key);
    undo_.push_back({Op::kIntern, 0, {}});
    if (levels_ < 0) {
      EnsureNodes(1);
      levels_ = 0;
      undo_.push_back({Op::kGrow, 0, {}});
    } else if (slot >= (int64_t{1} << levels_)) {
      const int64_t capacity = int64_t{1} << levels_;
      EnsureNodes(4 * capacity - 1);
      ++levels_;
      undo_.push_back({Op::kGrow, 0, {}});
      const int64_t r = Root();
      Write(r, {K::One(), ChildSum(r)});
      ++*writes;
    }
    return slot;
  }

  void Collect(int64_t x, int h, const Weight& carry,
               std::vector<std::pair<Label, Weight>>& out) const {
    const Weight mx = TimesUnlessOne(carry, nodes_[x].m);
    if (h == 0) {
      const int64_t slot = x / 2;
      if (slot < static_cast<int64_t>(out.size())) {
        out[slot] = {keys_.key(static_cast<int32_t>(slot)),
                     TimesUnlessOne(mx, nodes_[x].u)};
      }
      return;
    }
    const int64_t half = int64_t{1} << (h - 1);
    // Skip right subtrees that hold no slot.
    Collect(x - half, h - 1, mx, out);
    if ((x + half - (half - 1)) / 2 < static_cast<int64_t>(out.size())) {
      Collect(x + half, h - 1, mx, out);
    }
  }

  Ops<K> ops_;
  internal::KeySlots keys_;
  std::vector<Node> nodes_;
  int levels_ = -1;  // capacity 2^levels_; -1 when no key was ever set
  std::vector<Record> undo_;
  size_t sentinels_ = 0;
  std::vector<int64_t> path_;
  AggregatorStats stats_;
};

// Products of a growing sequence of multipliers m_1..m_I, kept in a Fenwick
// tree where node t holds m_t ⊗ … ⊗ m_{t-lowbit(t)+1} (later factors on the
// left). SuffixProduct(i) = m_I ⊗ … ⊗ m_{i+1}.
template <Semiring K>
class MultiplierLog {
 public:
  using Weight = typename K::Weight;

  explicit MultiplierLog(OpCounts* ops = nullptr)
      : ops_(ops), raw_(1, K::One()), tree_(1, K::One()) {}

  uint32_t size() const { return static_cast<uint32_t>(raw_.size() - 1); }

  void Push(const Weight& m) {
    const uint32_t t = size() + 1;
    Weight val = m;
    const uint32_t low = t & (~t + 1);
    for (uint32_t j = t - 1; j > t - low; j -= j & (~j + 1)) {
      val = ops_.Times(val, tree_[j]);
      ++touches_;
    }
    raw_.push_back(m);
    tree_.push_back(val);
  }

  void Pop() {
    raw_.pop_back();
    tree_.pop_back();
  }

  Weight SuffixProduct(uint32_t i) const {
    Weight acc = K::One();
    uint32_t r = size();
    while (r > i) {
      const uint32_t low = r & (~r + 1);
      if (r - low >= i) {
        acc = ops_.Times(acc, tree_[r]);
        r -= low;
      } else {
        acc = ops_.Times(acc, raw_[r]);
        --r;
      }
      ++touches_;
    }
    return acc;
  }

  // All suffix products at once, index i in [0, size()].
  std::vector<Weight> AllSuffixProducts() const {
    std::vector<Weight> out(raw_.size(), K::One());
    for (uint32_t i = size(); i > 0; --i) {
      out[i - 1] = ops_.Times(out[i], raw_[i]);
    }
    return out;
  }

  uint64_t touches() const { return touches_; }

 private:
  Ops<K> ops_;
  std::vector<Weight> raw_;
  std::vector<Weight> tree_;
  mutable uint64_t touches_ = 0;
};

// Ring aggregator: a running total patched by differences. Each entry keeps
// its raw value and the number of multipliers applied before it was set;
// Get scales it by the product of the multipliers that came later.
template <Ring K>
class RingAggregator {
 public:
  using Weight = typename K::Weight;

  explicit RingAggregator(OpCounts* ops = nullptr)
      : ops_(ops), mults_(ops), total_(K::Zero()) {}

  void Set(Label key, const Weight& v) {
    undo_.push_back({Op::kSentinel, 0, {}, {}});
    ++sentinels_;
    ++stats_.sets;
    int32_t slot = keys_.Find(key);
    if (slot < 0) {
      slot = keys_.Add(key);
      entries_.push_back({K::Zero(), mults_.size()});
      undo_.push_back({Op::kIntern, 0, {}, {}});
    }
    const Weight old = GetSlot(slot);
    undo_.push_back({Op::kEntry, slot, entries_[slot], total_});
    total_ = ops_.Plus(total_, ops_.Minus(v, old));
    entries_[slot] = {v, mults_.size()};
    stats_.node_writes += 2;
    stats_.last_update_node_writes = 2;
  }

  Weight Get(Label key) const {
    const int32_t slot = keys_.Find(key);
    return slot < 0 ? K::Zero() : GetSlot(slot);
  }

  Weight Value() const { return total_; }

  void Mult(const Weight& m) {
    undo_.push_back({Op::kSentinel, 0, {}, {}});
    ++sentinels_;
    ++stats_.mults;
    undo_.push_back({Op::kMult, 0, {}, total_});
    total_ = ops_.Times(m, total_);
    const uint64_t before = mults_.touches();
    mults_.Push(m);
    stats_.last_update_node_writes = 1 + (mults_.touches() - before);
    stats_.node_writes += stats_.last_update_node_writes;
  }

  void Undo(size_t n = 1) {
    if (n > sentinels_) {
      throw UnderflowError("undo of " + std::to_string(n) + " updates with " +
                           std::to_string(sentinels_) + " recorded");
    }
    while (n > 0) {
      const Record rec = undo_.back();
      undo_.pop_back();
      switch (rec.kind) {
        case Op::kSentinel:
          --sentinels_;
          --n;
          ++stats_.undone;
          break;
        case Op::kEntry:
          entries_[rec.slot] = rec.old;
          total_ = rec.total;
          break;
        case Op::kIntern:
          keys_.PopLast();
          entries_.pop_back();
          break;
        case Op::kMult:
          mults_.Pop();
          total_ = rec.total;
          break;
      }
    }
  }

  bool Contains(Label key) const { return keys_.Find(key) >= 0; }
  size_t size() const { return keys_.size(); }
  size_t pending_updates() const { return sentinels_; }
  AggregatorStats stats() const {
    AggregatorStats s = stats_;
    s.multiplier_touches = mults_.touches();
    return s;
  }

  std::vector<std::pair<Label, Weight>> Entries() const {
    const auto suffix = mults_.AllSuffixProducts();
    std::vector<std::pair<Label, Weight>> out;
    out.reserve(entries_.size());
    for (size_t i = 0; i < entries_.size(); ++i) {
      const Entry& e = entries_[i];
      out.push_back({keys_.key(static_cast<int32_t>(i)),
                     e.epoch == mults_.size() ? e.v
                                              : ops_.Times(suffix[e.epoch], e.v)});
    }
    return out;
  }

  RingAggregator Clone() const {
    return FromEntries(Entries(), ops_.counts());
  }

  RingAggregator CopyAndUpdate(
      const Weight* scale,
      std::span<const std::pair<Label, Weight>> updates) const {
    auto entries = Entries();
    if (scale != nullptr) {
      for (auto& e : entries) e.second = ops_.Times(*scale, e.second);
    }
    for (const auto& [key, v] : updates) {
      const int32_t slot = keys_.Find(key);
      if (slot >= 0) {
        entries[slot].second = v;
      } else {
        entries.push_back({key, v});
      }
    }
    return FromEntries(std::move(entries), ops_.counts());
  }

  static RingAggregator FromEntries(
      std::vector<std::pair<Label, Weight>> entries, OpCounts* ops = nullptr) {
    RingAggregator a(ops);
    for (const auto& [key, v] : entries) {
      a.keys_.Add(key);
      a.entries_.push_back({v, 0});
      a.total_ = a.ops_.Plus(a.total_, v);
    }
    return a;
  }

  void Dump(std::ostream& out, const LabelNamer& name) const {
    out << "ring keys=" << keys_.size() << " multipliers=" << mults_.size()
        << " total=" << K::Format(total_) << '\n';
    for (size_t i = 0; i < entries_.size(); ++i) {
      const int32_t slot = static_cast<int32_t>(i);
      out << "  " << name(keys_.key(slot)) << " -> "
          << K::Format(GetSlot(slot)) << " (raw " << K::Format(entries_[i].v)
          << " epoch " << entries_[i].epoch << ")\n";
    }
  }

 private:
  struct Entry {
    Weight v;
    uint32_t epoch;
  };
  enum class Op : uint8_t { kSentinel, kEntry, kIntern, kMult };
  struct Record {
    Op kind;
    int32_t slot;
    Entry old;
    Weight total;
  };

  Weight GetSlot(int32_t slot) const {
    const Entry& e = entries_[slot];
    if (e.epoch == mults_.size()) return e.v;
    return ops_.Times(mults_.SuffixProduct(e.epoch), e.v);
  }

  Ops<K> ops_;
  internal::KeySlots keys_;
  std::vector<Entry> entries_;
  MultiplierLog<K> mults_;
  Weight total_;
  std::vector<Record> undo_;
  size_t sentinels_ = 0;
  AggregatorStats stats_;
};

// Division-ring aggregator: keeps the product M of the multipliers and
// stores M⁻¹ ⊗ v, so Get is M ⊗ stored and Mult only touches M. A zero
// multiplier wipes every current entry; it starts a new generation instead
// of storing placeholders, so values set afterwards read back unscaled.
template <DivisionRing K>
class DivisionRingAggregator {
 public:
  using Weight = typename K::Weight;

  explicit DivisionRingAggregator(OpCounts* ops = nullptr)
      : ops_(ops), product_(K::One()), total_(K::Zero()) {}

  void Set(Label key, const Weight& v) {
    undo_.push_back({Op::kSentinel, 0, {}, {}, {}, 0});
    ++sentinels_;
    ++stats_.sets;
    int32_t slot = keys_.Find(key);
    if (slot < 0) {
      slot = keys_.Add(key);
      entries_.push_back({K::Zero(), generation_});
      undo_.push_back({Op::kIntern, 0, {}, {}, {}, 0});
    }
    const Entry& e = entries_[slot];
    const Weight old = e.generation == generation_ ? e.stored : K::Zero();
    const Weight stored =
        K::Equal(product_, K::One()) ? v
                                     : ops_.Times(ops_.Inverse(product_), v);
    undo_.push_back({Op::kEntry, slot, e, total_, {}, 0});
    total_ = ops_.Plus(total_, ops_.Minus(stored, old));
    entries_[slot] = {stored, generation_};
    stats_.node_writes += 2;
    stats_.last_update_node_writes = 2;
  }

  Weight Get(Label key) const {
    const int32_t slot = keys_.Find(key);
    if (slot < 0) return K::Zero();
    const Entry& e = entries_[slot];
    if (e.generation != generation_) return K::Zero();
    return ops_.Times(product_, e.stored);
  }

  Weight Value() const { return ops_.Times(product_, total_); }

  void Mult(const Weight& m) {
    undo_.push_back({Op::kSentinel, 0, {}, {}, {}, 0});
    ++sentinels_;
    ++stats_.mults;
    undo_.push_back({Op::kMult, 0, {}, total_, product_, generation_});
    if (K::Equal(m, K::Zero())) {
      ++generation_;
      total_ = K::Zero();
      product_ = K::One();
    } else {
      product_ = ops_.Times(m, product_);
    }
    stats_.node_writes += 1;
    stats_.last_update_node_writes = 1;
  }

  void Undo(size_t n = 1) {
    if (n > sentinels_) {
      throw UnderflowError("undo of " + std::to_string(n) + " updates with " +
                           std::to_string(sentinels_) + " recorded");
    }
    while (n > 0) {
      const Record rec = undo_.back();
      undo_.pop_back();
      switch (rec.kind) {
        case Op::kSentinel:
          --sentinels_;
          --n;
          ++stats_.undone;
          break;
        case Op::kEntry:
          entries_[rec.slot] = rec.old;
          total_ = rec.total;
          break;
        case Op::kIntern:
          keys_.PopLast();
          entries_.pop_back();
          break;
        case Op::kMult:
          total_ = rec.total;
          product_ = rec.product;
          generation_ = rec.generation;
          break;
      }
    }
  }

  bool Contains(Label key) const { return keys_.Find(key) >= 0; }
  size_t size() const { return keys_.size(); }
  size_t pending_updates() const { return sentinels_; }
  const AggregatorStats& stats() const { return stats_; }

  std::vector<std::pair<Label, Weight>> Entries() const {
    std::vector<std::pair<Label, Weight>> out;
    out.reserve(entries_.size());
    for (size_t i = 0; i < entries_.size(); ++i) {
      const Label key = keys_.key(static_cast<int32_t>(i));
      out.push_back({key, Get(key)});
    }
    return out;
  }

  DivisionRingAggregator Clone() const {
    return FromEntries(Entries(), ops_.counts());
  }

  DivisionRingAggregator CopyAndUpdate(
      const Weight* scale,
      std::span<const std::pair<Label, Weight>> updates) const {
    auto entries = Entries();
    if (scale != nullptr) {
      for (auto& e : entries) e.second = ops_.Times(*scale, e.second);
    }
    for (const auto& [key, v] : updates) {
      const int32_t slot = keys_.Find(key);
      if (slot >= 0) {
        entries[slot].second = v;
      } else {
        entries.push_back({key, v});
      }
    }
    return FromEntries(std::move(entries), ops_.counts());
  }

  static DivisionRingAggregator FromEntries(
      std::vector<std::pair<Label, Weight>> entries, OpCounts* ops = nullptr) {
    DivisionRingAggregator a(ops);
    for (const auto& [key, v] : entries) {
      a.keys_.Add(key);
      a.entries_.push_back({v, 0});
      a.total_ = a.ops_.Plus(a.total_, v);
    }
    return a;
  }

  void Dump(std::ostream& out, const LabelNamer& name) const {
    out << "division-ring keys=" << keys_.size()
        << " product=" << K::Format(product_)
        << " generation=" << generation_ << '\n';
    for (const auto& [key, v] : Entries()) {
      out << "  " << name(key) << " -> " << K::Format(v) << '\n';
    }
  }

 private:
  struct Entry {
    Weight stored;
    uint32_t generation;
  };
  enum class Op : uint8_t { kSentinel, kEntry, kIntern, kMult };
  struct Record {
    Op kind;
    int32_t slot;
    Entry old;
    Weight total;
    Weight product;
    uint32_t generation;
  };

  Ops<K> ops_;
  internal::KeySlots keys_;
  std::vector<Entry> entries_;
  Weight product_;
  Weight total_;
  uint32_t generation_ = 0;
  std::vector<Record> undo_;
  size_t sentinels_ = 0;
  AggregatorStats stats_;
};

// The cheapest aggregator the semiring supports.
template <Semiring K>
struct DefaultAggregator {
  using type = FenwickAggregator<K>;
};
template <Ring K>
struct DefaultAggregator<K> {
  using type = RingAggregator<K>;
};
template <DivisionRing K>
struct DefaultAggregator<K> {
  using type = DivisionRingAggregator<K>;
};

}  // namespace phisum

#endif  // PHISUM_AGGREGATOR_H_
