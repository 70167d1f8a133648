#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "lcc/error.hpp"

namespace lcc {

// Closure scopes. ObjectSession is the join of Object and Session and only
// appears as an effective closure, never in a user configuration.
enum class ClosureScope { None, Object, Session, ObjectSession, Explicit };

// Chain Trivial < PerObject < All.
enum class OrderScope { Trivial, PerObject, All };

enum class Regime { CausalArbitration, Unconstrained };

inline constexpr ClosureScope kUserClosures[] = {
    ClosureScope::None, ClosureScope::Object, ClosureScope::Session,
    ClosureScope::Explicit};
inline constexpr OrderScope kOrderScopes[] = {
    OrderScope::Trivial, OrderScope::PerObject, OrderScope::All};

namespace detail {

// Each scope is the set of edge kinds it requires: bit 0 same-object,
// bit 1 same-session, bit 2 everything else. Order is inclusion.
constexpr unsigned closure_bits(ClosureScope c) {
  switch (c) {
    case ClosureScope::None: return 0u;
    case ClosureScope::Object: return 1u;
    case ClosureScope::Session: return 2u;
    case ClosureScope::ObjectSession: return 3u;
    case ClosureScope::Explicit: return 7u;
  }
  return 0u;
}

inline ClosureScope closure_from_bits(unsigned b) {
  switch (b) {
    case 0u: return ClosureScope::None;
    case 1u: return ClosureScope::Object;
    case 2u: return ClosureScope::Session;
    case 3u: return ClosureScope::ObjectSession;
    case 7u: return ClosureScope::Explicit;
    default: break;
  }
  throw Error("closure lattice", "bit pattern outside the closure lattice");
}

inline std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return out;
}

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      parts.emplace_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return parts;
}

}  // namespace detail

inline bool closure_leq(ClosureScope a, ClosureScope b) {
  unsigned x = detail::closure_bits(a), y = detail::closure_bits(b);
  return (x & ~y) == 0u;
}

inline ClosureScope closure_join(ClosureScope a, ClosureScope b) {
  unsigned j = detail::closure_bits(a) | detail::closure_bits(b);
  // Object|Session|other only arises with Explicit already present.
  if (j & 4u) return ClosureScope::Explicit;
  return detail::closure_from_bits(j);
}

inline ClosureScope closure_meet(ClosureScope a, ClosureScope b) {
  return detail::closure_from_bits(detail::closure_bits(a) & detail::closure_bits(b));
}

inline bool is_user_closure(ClosureScope c) { return c != ClosureScope::ObjectSession; }

inline bool order_leq(OrderScope a, OrderScope b) {
  return static_cast<int>(a) <= static_cast<int>(b);
}

inline OrderScope order_min(OrderScope a, OrderScope b) { return order_leq(a, b) ? a : b; }

// Closure entailed by an order scope under causal arbitration.
inline ClosureScope kappa(OrderScope o) {
  switch (o) {
    case OrderScope::Trivial: return ClosureScope::None;
    case OrderScope::PerObject: return ClosureScope::Object;
    case OrderScope::All: return ClosureScope::Explicit;
  }
  return ClosureScope::None;
}

inline ClosureScope effective_closure(ClosureScope c, OrderScope o,
                                      Regime regime = Regime::CausalArbitration) {
  if (regime == Regime::Unconstrained) return c;
  return closure_join(c, kappa(o));
}

inline std::string to_string(ClosureScope c) {
  switch (c) {
    case ClosureScope::None: return "none";
    case ClosureScope::Object: return "object";
    case ClosureScope::Session: return "session";
    case ClosureScope::ObjectSession: return "object+session";
    case ClosureScope::Explicit: return "explicit";
  }
  return "?";
}

inline std::string to_string(OrderScope o) {
  switch (o) {
    case OrderScope::Trivial: return "trivial";
    case OrderScope::PerObject: return "per-object";
    case OrderScope::All: return "all";
  }
  return "?";
}

inline std::string to_string(Regime r) {
  return r == Regime::CausalArbitration ? "causal" : "unconstrained";
}

inline ClosureScope parse_closure(std::string_view text) {
  std::string s = detail::lower(detail::trim(text));
  if (s == "none") return ClosureScope::None;
  if (s == "object") return ClosureScope::Object;
  if (s == "session") return ClosureScope::Session;
  if (s == "explicit") return ClosureScope::Explicit;
  throw ParseError("unknown closure scope '" + std::string(text) + "'");
}

inline OrderScope parse_order(std::string_view text) {
  std::string s = detail::lower(detail::trim(text));
  if (s == "trivial") return OrderScope::Trivial;
  if (s == "per-object" || s == "perobject" || s == "object") return OrderScope::PerObject;
  if (s == "all") return OrderScope::All;
  throw ParseError("unknown order scope '" + std::string(text) + "'");
}

inline Regime parse_regime(std::string_view text) {
  std::string s = detail::lower(detail::trim(text));
  if (s == "causal") return Regime::CausalArbitration;
  if (s == "unconstrained" || s == "free") return Regime::Unconstrained;
  throw ParseError("unknown regime '" + std::string(text) + "'");
}

enum class DeltaUnit { WallClock, MessageCount, VersionDistance, OrderPosition };

inline std::string to_string(DeltaUnit u) {
  switch (u) {
    case DeltaUnit::WallClock: return "wall-clock";
    case DeltaUnit::MessageCount: return "message-count";
    case DeltaUnit::VersionDistance: return "version-distance";
    case DeltaUnit::OrderPosition: return "order-position";
  }
  return "?";
}

struct WaitingBound {
  enum class Kind { Absent, Delta, Infinite, Zero };
  Kind kind = Kind::Infinite;
  double delta = 0.0;
  DeltaUnit unit = DeltaUnit::WallClock;

  static WaitingBound absent() { return {Kind::Absent, 0.0, DeltaUnit::WallClock}; }
  static WaitingBound infinite() { return {Kind::Infinite, 0.0, DeltaUnit::WallClock}; }
  static WaitingBound zero() { return {Kind::Zero, 0.0, DeltaUnit::WallClock}; }
  static WaitingBound bounded(double d, DeltaUnit u) {
    if (!(d > 0.0)) throw Error("delta > 0", "waiting bound delta must be positive");
    return {Kind::Delta, d, u};
  }

  friend bool operator==(const WaitingBound& a, const WaitingBound& b) {
    if (a.kind != b.kind) return false;
    return a.kind != Kind::Delta || (a.delta == b.delta && a.unit == b.unit);
  }
};

inline std::string to_string(const WaitingBound& r) {
  switch (r.kind) {
    case WaitingBound::Kind::Absent: return "absent";
    case WaitingBound::Kind::Infinite: return "inf";
    case WaitingBound::Kind::Zero: return "0";
    case WaitingBound::Kind::Delta: {
      std::ostringstream os;
      os << "d:" << r.delta << ":" << to_string(r.unit);
      return os.str();
    }
  }
  return "?";
}

inline WaitingBound parse_waiting(std::string_view text) {
  std::string s = detail::lower(detail::trim(text));
  if (s == "absent") return WaitingBound::absent();
  if (s == "inf" || s == "infinite") return WaitingBound::infinite();
  if (s == "0" || s == "zero") return WaitingBound::zero();
  auto parts = detail::split(s, ':');
  if (parts.size() == 3 && parts[0] == "d") {
    double d = 0.0;
    try {
      std::size_t used = 0;
      d = std::stod(parts[1], &used);
      if (used != parts[1].size()) throw ParseError("bad delta '" + parts[1] + "'");
    } catch (const std::logic_error&) {
      throw ParseError("bad delta '" + parts[1] + "'");
    }
    DeltaUnit unit;
    if (parts[2] == "wall-clock") unit = DeltaUnit::WallClock;
    else if (parts[2] == "message-count") unit = DeltaUnit::MessageCount;
    else if (parts[2] == "version-distance") unit = DeltaUnit::VersionDistance;
    else if (parts[2] == "order-position") unit = DeltaUnit::OrderPosition;
    else throw ParseError("unknown delta unit '" + parts[2] + "'");
    if (!(d > 0.0)) throw ParseError("delta must be positive");
    return WaitingBound::bounded(d, unit);
  }
  throw ParseError("unknown waiting bound '" + std::string(text) + "'");
}

struct Selector {
  enum class Kind { Latest, KLatest, AnyConcurrent, Anything, Computed, Multi };
  Kind kind = Kind::Latest;
  int k = 1;
  std::string fn;

  static Selector latest() { return {Kind::Latest, 1, {}}; }
  static Selector k_latest(int k) {
    if (k < 1) throw Error("k >= 1", "k-latest needs k >= 1");
    return {Kind::KLatest, k, {}};
  }
  static Selector any_concurrent() { return {Kind::AnyConcurrent, 1, {}}; }
  static Selector anything() { return {Kind::Anything, 1, {}}; }
  static Selector computed(std::string id) { return {Kind::Computed, 1, std::move(id)}; }
  static Selector multi() { return {Kind::Multi, 1, {}}; }

  friend bool operator==(const Selector& a, const Selector& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == Kind::KLatest) return a.k == b.k;
    if (a.kind == Kind::Computed) return a.fn == b.fn;
    return true;
  }
};

inline std::string to_string(const Selector& f) {
  switch (f.kind) {
    case Selector::Kind::Latest: return "latest";
    case Selector::Kind::KLatest: return "k-latest:" + std::to_string(f.k);
    case Selector::Kind::AnyConcurrent: return "any-concurrent";
    case Selector::Kind::Anything: return "anything";
    case Selector::Kind::Computed: return "computed:" + f.fn;
    case Selector::Kind::Multi: return "multi";
  }
  return "?";
}

// Built-in merge functions for Computed selectors, with their confluence.
// A confluent function's output depends only on the set of messages seen.
struct MergeFunctionInfo {
  std::string id;
  bool confluent;
};

inline const std::vector<MergeFunctionInfo>& merge_functions() {
  static const std::vector<MergeFunctionInfo> fns = {
      {"max", true}, {"min", true}, {"union", true}, {"count", true},
      {"lww-arrival", false}};
  return fns;
}

inline std::optional<MergeFunctionInfo> find_merge_function(std::string_view id) {
  for (const auto& f : merge_functions())
    if (f.id == id) return f;
  return std::nullopt;
}

inline Selector parse_selector(std::string_view text) {
  std::string raw = detail::trim(text);
  std::string s = detail::lower(raw);
  if (s == "latest") return Selector::latest();
  if (s == "any-concurrent" || s == "anyconc") return Selector::any_concurrent();
  if (s == "anything" || s == "any") return Selector::anything();
  if (s == "multi") return Selector::multi();
  if (s.rfind("k-latest:", 0) == 0) {
    std::string num = s.substr(9);
    int k = 0;
    auto [p, ec] = std::from_chars(num.data(), num.data() + num.size(), k);
    if (ec != std::errc() || p != num.data() + num.size() || k < 1)
      throw ParseError("bad k in '" + raw + "'");
    return Selector::k_latest(k);
  }
  if (s.rfind("computed:", 0) == 0) {
    std::string id = raw.substr(9);
    if (id.empty()) throw ParseError("computed selector needs a function id");
    if (!find_merge_function(id)) throw ParseError("unknown merge function '" + id + "'");
    return Selector::computed(id);
  }
  throw ParseError("unknown selector '" + raw + "'");
}

// Whether resolution under f needs no retained frontier.
inline bool is_confluent(const Selector& f) {
  if (f.kind == Selector::Kind::Anything) return true;
  if (f.kind != Selector::Kind::Computed) return false;
  auto info = find_merge_function(f.fn);
  if (!info) throw Error("known merge function", "unknown merge function '" + f.fn + "'");
  return info->confluent;
}

// Restrictiveness of reportable-value sets: a <= b when a's sets are
// contained in b's. Chains: Latest < KLatest(k) < KLatest(k+1) < AnyConcurrent
// < Anything, and Computed/Multi < Anything. Computed and Multi are
// incomparable with the latest-family.
inline bool selector_leq(const Selector& a, const Selector& b) {
  using K = Selector::Kind;
  if (a == b) return true;
  if (b.kind == K::Anything) return true;
  if (a.kind == K::Anything) return false;
  auto rank = [](const Selector& s) -> int {
    switch (s.kind) {
      case K::Latest: return 1;
      case K::KLatest: return s.k;
      case K::AnyConcurrent: return 1 << 30;
      default: return -1;
    }
  };
  int ra = rank(a), rb = rank(b);
  if (ra < 0 || rb < 0) return false;
  return ra <= rb;
}

struct Configuration {
  ClosureScope c = ClosureScope::None;
  OrderScope o = OrderScope::Trivial;
  WaitingBound r = WaitingBound::infinite();
  Selector f = Selector::latest();

  friend bool operator==(const Configuration& a, const Configuration& b) {
    return a.c == b.c && a.o == b.o && a.r == b.r && a.f == b.f;
  }
};

inline Configuration make_config(ClosureScope c, OrderScope o) {
  Configuration cfg;
  cfg.c = c;
  cfg.o = o;
  return cfg;
}

inline std::string to_string(const Configuration& cfg) {
  return "C=" + to_string(cfg.c) + ",O=" + to_string(cfg.o) + ",R=" + to_string(cfg.r) +
         ",F=" + to_string(cfg.f);
}

// Parses "C=explicit,O=all,R=inf,F=latest" (case-insensitive keys and
// values). R defaults to inf and F to latest when omitted.
inline Configuration parse_configuration(std::string_view text) {
  Configuration cfg;
  bool seen_c = false, seen_o = false, seen_r = false, seen_f = false;
  for (const auto& part : detail::split(text, ',')) {
    std::string item = detail::trim(part);
    if (item.empty()) throw ParseError("empty field in '" + std::string(text) + "'");
    auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("field '" + item + "' lacks '='");
    std::string key = detail::lower(detail::trim(item.substr(0, eq)));
    std::string value = item.substr(eq + 1);
    auto once = [&](bool& flag) {
      if (flag) throw ParseError("duplicate field '" + key + "'");
      flag = true;
    };
    if (key == "c") {
      once(seen_c);
      cfg.c = parse_closure(value);
    } else if (key == "o") {
      once(seen_o);
      cfg.o = parse_order(value);
    } else if (key == "r") {
      once(seen_r);
      cfg.r = parse_waiting(value);
    } else if (key == "f") {
      once(seen_f);
      cfg.f = parse_selector(value);
    } else {
      throw ParseError("unknown field '" + key + "'");
    }
  }
  if (!seen_c || !seen_o) throw ParseError("configuration needs both C and O");
  return cfg;
}

}  // namespace lcc
