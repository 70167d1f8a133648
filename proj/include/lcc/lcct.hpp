#pragma once

// .lcct trace files and the other JSON inputs of the command line tool.

#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "json.hpp"
#include "lcc/merge.hpp"
#include "lcc/scars.hpp"
#include "lcc/sim.hpp"
#include "lcc/trace.hpp"

namespace lcc {

using Json = nlohmann::json;

namespace detail {

inline void expect(bool ok, const std::string& what) {
  if (!ok) throw ParseError(what);
}

inline void only_keys(const Json& j, std::initializer_list<const char*> keys, const std::string& where) {
  expect(j.is_object(), where + " must be an object");
  std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, v] : j.items()) expect(allowed.count(k) > 0, "unknown field '" + k + "' in " + where);
}

inline std::string str(const Json& j, const char* key, const std::string& where) {
  expect(j.contains(key) && j.at(key).is_string(), where + "." + key + " must be a string");
  return j.at(key).get<std::string>();
}

inline std::int64_t integer(const Json& j, const char* key, const std::string& where) {
  expect(j.contains(key) && j.at(key).is_number_integer(), where + "." + key + " must be an integer");
  return j.at(key).get<std::int64_t>();
}

}  // namespace detail

inline Json to_json(const Trace& t) {
  const auto& dag = t.dag;
  Json j;
  j["messages"] = Json::array();
  for (MessageIndex m = 0; m < dag.size(); ++m) {
    const auto& meta = dag.meta(m);
    j["messages"].push_back({{"id", dag.id(m).value},
                             {"object", meta.object},
                             {"session", meta.session},
                             {"creator", meta.creator.value},
                             {"createIndex", meta.createIndex}});
  }
  j["edges"] = Json::array();
  for (auto [p, c] : dag.edges()) j["edges"].push_back({dag.id(p).value, dag.id(c).value});
  j["deliveries"] = Json::array();
  for (const auto& d : t.deliveries) {
    Json e{{"time", d.time}, {"observer", d.observer.value}, {"id", dag.id(d.message).value}};
    if (d.retract) e["retract"] = true;
    j["deliveries"].push_back(e);
  }
  j["orders"] = Json::object();
  for (const auto& [n, ord] : t.orders) {
    Json ids = Json::array();
    for (auto m : ord) ids.push_back(dag.id(m).value);
    j["orders"][n.value] = ids;
  }
  j["observers"] = Json::array();
  for (const auto& n : t.observers) j["observers"].push_back(n.value);
  return j;
}

inline Trace trace_from_json(const Json& j) {
  using detail::expect;
  detail::only_keys(j, {"messages", "edges", "deliveries", "orders", "observers"}, "trace");
  expect(j.contains("messages") && j["messages"].is_array(), "trace.messages must be an array");
  Trace t;
  if (j.contains("observers")) {
    expect(j["observers"].is_array(), "trace.observers must be an array");
    for (const auto& n : j["observers"]) {
      expect(n.is_string(), "observer names must be strings");
      t.add_observer(ObserverId{n.get<std::string>()});
    }
  }
  for (const auto& m : j["messages"]) {
    detail::only_keys(m, {"id", "object", "session", "creator", "createIndex"}, "message");
    MessageMeta meta{detail::str(m, "object", "message"), detail::str(m, "session", "message"),
                     ObserverId{detail::str(m, "creator", "message")}, detail::integer(m, "createIndex", "message")};
    t.add_observer(meta.creator);
    t.dag.add_message(MessageId{detail::str(m, "id", "message")}, meta);
  }
  auto lookup = [&](const Json& id) {
    expect(id.is_string(), "message references must be strings");
    auto m = t.dag.find(MessageId{id.get<std::string>()});
    if (!m) throw Error("known message", "unknown message id '" + id.get<std::string>() + "'");
    return *m;
  };
  if (j.contains("edges")) {
    expect(j["edges"].is_array(), "trace.edges must be an array");
    for (const auto& e : j["edges"]) {
      expect(e.is_array() && e.size() == 2, "each edge is a [parent, child] pair");
      t.dag.add_edge(lookup(e[0]), lookup(e[1]));
    }
  }
  if (j.contains("deliveries")) {
    expect(j["deliveries"].is_array(), "trace.deliveries must be an array");
    for (const auto& d : j["deliveries"]) {
      detail::only_keys(d, {"time", "observer", "id", "retract"}, "delivery");
      expect(d.contains("id"), "delivery.id is required");
      bool retract = false;
      if (d.contains("retract")) {
        expect(d["retract"].is_boolean(), "delivery.retract must be a boolean");
        retract = d["retract"].get<bool>();
      }
      ObserverId n{detail::str(d, "observer", "delivery")};
      t.add_observer(n);
      t.deliveries.push_back({detail::integer(d, "time", "delivery"), n, lookup(d["id"]), retract});
    }
  }
  if (j.contains("orders")) {
    expect(j["orders"].is_object(), "trace.orders must map observers to id lists");
    for (const auto& [n, ids] : j["orders"].items()) {
      expect(ids.is_array(), "orders." + n + " must be an array");
      ResolvedOrder ord;
      for (const auto& id : ids) ord.push_back(lookup(id));
      t.orders[ObserverId{n}] = ord;
    }
  }
  return t;
}

inline Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(origin + ": " + e.what());
  }
}

inline Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("readable input file", "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path);
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("writable output path", "cannot write '" + path + "'");
  out << text;
}

inline Trace read_trace(const std::string& path) {
  try {
    return trace_from_json(read_json(path));
  } catch (const Json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline void write_trace(const std::string& path, const Trace& t) { write_text(path, to_json(t).dump(2) + "\n"); }

// {"n1": ["a", "b"], "n2": ["b", "a"]}
inline CommitMap commits_from_json(const Json& j) {
  detail::expect(j.is_object(), "commit map must be an object");
  CommitMap out;
  for (const auto& [n, ids] : j.items()) {
    detail::expect(ids.is_array(), "commits of '" + n + "' must be an array");
    auto& seq = out[ObserverId{n}];
    for (const auto& id : ids) {
      detail::expect(id.is_string(), "commit ids must be strings");
      seq.push_back(MessageId{id.get<std::string>()});
    }
  }
  return out;
}

inline ScenarioParams params_from_json(const Json& j) {
  using detail::expect;
  detail::only_keys(j, {"observers", "objects", "sessions", "writeRate", "latency", "jitter", "partitions",
                        "skewModel", "horizon", "seed"},
                    "params");
  ScenarioParams p;
  auto count = [&](const char* key, std::size_t& field) {
    if (!j.contains(key)) return;
    expect(j[key].is_number_unsigned(), std::string("params.") + key + " must be a non-negative integer");
    field = j[key].get<std::size_t>();
  };
  count("observers", p.observers);
  count("objects", p.objects);
  count("sessions", p.sessions);
  if (j.contains("writeRate")) {
    expect(j["writeRate"].is_number(), "params.writeRate must be a number");
    p.writeRate = j["writeRate"].get<double>();
  }
  if (j.contains("latency")) p.latency = detail::integer(j, "latency", "params");
  if (j.contains("jitter")) p.jitter = detail::integer(j, "jitter", "params");
  if (j.contains("horizon")) p.horizon = detail::integer(j, "horizon", "params");
  if (j.contains("skewModel")) p.skewModel = detail::str(j, "skewModel", "params");
  if (j.contains("seed")) {
    expect(j["seed"].is_number_unsigned(), "params.seed must be a non-negative integer");
    p.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("partitions")) {
    expect(j["partitions"].is_array(), "params.partitions must be an array");
    for (const auto& w : j["partitions"]) {
      detail::only_keys(w, {"start", "end", "group"}, "partition");
      PartitionWindow win;
      win.start = detail::integer(w, "start", "partition");
      win.end = detail::integer(w, "end", "partition");
      expect(w.contains("group") && w["group"].is_array(), "partition.group must be an array");
      for (const auto& n : w["group"]) {
        expect(n.is_string(), "partition members must be observer names");
        win.group.insert(n.get<std::string>());
      }
      p.partitions.push_back(win);
    }
  }
  return p;
}

inline Json to_json(const ScenarioParams& p) {
  Json parts = Json::array();
  for (const auto& w : p.partitions) parts.push_back({{"start", w.start}, {"end", w.end}, {"group", w.group}});
  return {{"observers", p.observers}, {"objects", p.objects},   {"sessions", p.sessions},
          {"writeRate", p.writeRate}, {"latency", p.latency},   {"jitter", p.jitter},
          {"partitions", parts},      {"skewModel", p.skewModel}, {"horizon", p.horizon},
          {"seed", p.seed}};
}

// Two replica views over one shared DAG. Each file's cut is every message it
// lists; its order is its single entry under "orders".
struct ViewPair {
  CausalDag dag;
  View a;
  View b;
};

inline ViewPair views_from_traces(const Trace& ta, const Trace& tb) {
  ViewPair out;
  auto absorb = [&](const Trace& t) {
    for (MessageIndex m = 0; m < t.dag.size(); ++m) {
      auto have = out.dag.find(t.dag.id(m));
      if (!have) {
        out.dag.add_message(t.dag.id(m), t.dag.meta(m));
        continue;
      }
      const auto& x = out.dag.meta(*have);
      const auto& y = t.dag.meta(m);
      if (x.object != y.object || x.session != y.session || x.creator != y.creator || x.createIndex != y.createIndex)
        throw Error("views agree on message labels", "views disagree on '" + t.dag.id(m).value + "'");
    }
  };
  absorb(ta);
  absorb(tb);
  for (const Trace* t : {&ta, &tb})
    for (auto [p, c] : t->dag.edges())
      out.dag.add_edge(*out.dag.find(t->dag.id(p)), *out.dag.find(t->dag.id(c)));
  auto view_of = [&](const Trace& t, const char* name) {
    if (t.orders.size() != 1)
      throw Error("one order per view", std::string("view ") + name + " must carry exactly one order");
    View v{Cut(out.dag.size()), {}};
    for (MessageIndex m = 0; m < t.dag.size(); ++m) v.cut.insert(*out.dag.find(t.dag.id(m)));
    for (auto m : t.orders.begin()->second) v.order.push_back(*out.dag.find(t.dag.id(m)));
    validate_view(out.dag, v);
    return v;
  };
  out.a = view_of(ta, "a");
  out.b = view_of(tb, "b");
  return out;
}

}  // namespace lcc
