#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lcc/config.hpp"

namespace lcc {

// One named configuration. Empty strings mark cells with no entry.
struct GlossaryRow {
  int index;
  ClosureScope c;
  OrderScope o;
  WaitingBound::Kind r;
  std::string name;
  std::string vvModel;
  std::string example;
};

inline const std::vector<GlossaryRow>& glossary() {
  using C = ClosureScope;
  using O = OrderScope;
  using R = WaitingBound::Kind;
  static const std::vector<GlossaryRow> rows = {
      {1, C::None, O::Trivial, R::Absent, "No guarantees", "Weak consistency", "UDP, unreliable mail"},
      {2, C::None, O::Trivial, R::Infinite, "Eventual delivery", "Eventual consistency", "Dynamo anti-entropy"},
      {3, C::None, O::Trivial, R::Delta, "Bounded eventual", "Bounded staleness", "QoS networks"},
      {4, C::None, O::PerObject, R::Absent, "Per-object unread log", "", "WAL before recovery"},
      {5, C::None, O::PerObject, R::Infinite, "Per-object ordered", "FIFO consistency", "Kafka per-partition"},
      {6, C::None, O::PerObject, R::Delta, "Bounded per-object order", "Bounded staleness", "Cosmos DB bounded"},
      {7, C::None, O::All, R::Absent, "Global unread log", "", "Raft log before apply"},
      {8, C::None, O::All, R::Infinite, "Total-order broadcast", "TOB / Consistent prefix", "Redis replication"},
      {9, C::None, O::All, R::Delta, "Bounded total order", "", "MySQL semi-sync"},
      {10, C::None, O::All, R::Zero, "Instant total order", "", "Network switch"},
      {11, C::Object, O::Trivial, R::Absent, "Per-object snapshot", "", ""},
      {12, C::Object, O::Trivial, R::Infinite, "Per-object causal", "Per-object causal / Slow memory", ""},
      {13, C::Object, O::Trivial, R::Delta, "Bounded per-object causal", "", ""},
      {14, C::Object, O::PerObject, R::Absent, "Per-object ordered snapshot", "", ""},
      {15, C::Object, O::PerObject, R::Infinite, "Per-object sequential", "Per-object sequential / Coherence", "Cassandra per-key"},
      {16, C::Object, O::PerObject, R::Delta, "Bounded per-object sequential", "", ""},
      {17, C::Object, O::All, R::Absent, "Global per-object unread log", "", ""},
      {18, C::Object, O::All, R::Infinite, "Per-object globally ordered", "", "Single-leader-per-shard"},
      {19, C::Object, O::All, R::Delta, "Bounded per-object global", "", ""},
      {20, C::Object, O::All, R::Zero, "Per-object sequential (current)", "", ""},
      {21, C::Session, O::Trivial, R::Absent, "Session snapshot", "", "Frozen session"},
      {22, C::Session, O::Trivial, R::Infinite, "Session causal", "PRAM / RYW / Monotonic reads", "MongoDB causal sessions"},
      {23, C::Session, O::Trivial, R::Delta, "Bounded session causal", "", ""},
      {24, C::Session, O::PerObject, R::Absent, "Session per-object snapshot", "", ""},
      {25, C::Session, O::PerObject, R::Infinite, "Session per-object causal", "Monotonic writes / Processor / WFR", ""},
      {26, C::Session, O::PerObject, R::Delta, "Bounded session per-object causal", "", ""},
      {27, C::Session, O::All, R::Absent, "Global session unread log", "", ""},
      {28, C::Session, O::All, R::Infinite, "Session sequential", "", ""},
      {29, C::Session, O::All, R::Delta, "Bounded session sequential", "", ""},
      {30, C::Session, O::All, R::Zero, "Session sequential (current)", "", ""},
      {31, C::Explicit, O::Trivial, R::Absent, "Consistent snapshot", "", "Point-in-time backup"},
      {32, C::Explicit, O::Trivial, R::Infinite, "Causal consistency", "Causal consistency", ""},
      {33, C::Explicit, O::Trivial, R::Delta, "Bounded causal", "Bounded causal", "Geo-distributed causal"},
      {34, C::Explicit, O::PerObject, R::Absent, "Per-object causal snapshot", "", ""},
      {35, C::Explicit, O::PerObject, R::Infinite, "Causal per-object order", "Causal+", "COPS, Eiger"},
      {36, C::Explicit, O::PerObject, R::Delta, "Bounded causal per-object", "", ""},
      {37, C::Explicit, O::All, R::Absent, "Global causal unread log", "", "Finalized blockchain"},
      {38, C::Explicit, O::All, R::Infinite, "Sequential consistency", "Sequential", "ZooKeeper"},
      {39, C::Explicit, O::All, R::Delta, "Bounded sequential", "Timed serial", ""},
      {40, C::Explicit, O::All, R::Zero, "Sequential (current)", "Sequential", "Single-node, mutex"},
  };
  return rows;
}

inline std::string to_string(WaitingBound::Kind k) {
  switch (k) {
    case WaitingBound::Kind::Absent: return "absent";
    case WaitingBound::Kind::Delta: return "delta";
    case WaitingBound::Kind::Infinite: return "inf";
    case WaitingBound::Kind::Zero: return "0";
  }
  return "?";
}

// FNV-1a over the rows, one field per line.
inline std::uint64_t glossary_checksum() {
  std::uint64_t h = 1469598103934665603ull;
  auto feed = [&](const std::string& s) {
    for (unsigned char ch : s) {
      h ^= ch;
      h *= 1099511628211ull;
    }
    h ^= static_cast<unsigned char>('\n');
    h *= 1099511628211ull;
  };
  for (const auto& r : glossary()) {
    feed(std::to_string(r.index));
    feed(to_string(r.c));
    feed(to_string(r.o));
    feed(to_string(r.r));
    feed(r.name);
    feed(r.vvModel);
    feed(r.example);
  }
  return h;
}

inline constexpr std::uint64_t kGlossaryChecksum = 0x5839be4fa1faa7cbull;

// Raw (C, O, R) combinations; R=0 below O(all) is degenerate.
inline constexpr int kRawCombinations = 4 * 3 * 4;
inline constexpr int kDegenerateCombinations = 4 * 2;

// R=0 with a non-global order coincides with the O(all) row: there is no
// frontier left to wait on.
inline const GlossaryRow& name_lookup(const Configuration& cfg) {
  if (!is_user_closure(cfg.c)) throw Error("user-facing closure", "object+session has no glossary row");
  OrderScope o = cfg.r.kind == WaitingBound::Kind::Zero ? OrderScope::All : cfg.o;
  for (const auto& r : glossary())
    if (r.c == cfg.c && r.o == o && r.r == cfg.r.kind) return r;
  throw Error("configuration in the glossary", "no glossary row for " + to_string(cfg));
}

}  // namespace lcc
