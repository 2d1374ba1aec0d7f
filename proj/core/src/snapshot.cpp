#include "whitham/snapshot.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "whitham/csv_io.hpp"

namespace whitham {

namespace {

using nlohmann::json;

json coeff_list(const std::vector<double>& v) {
  json arr = json::array();
  for (double x : v) arr.push_back(fmt17(x));
  return arr;
}

std::vector<double> coeff_parse(const json& arr) {
  std::vector<double> out;
  out.reserve(arr.size());
  for (const auto& s : arr) out.push_back(parse_number(s.get<std::string>()));
  return out;
}

const char* mode_name(FlowMode::Kind k) {
  return k == FlowMode::Kind::GenusOpening ? "genus_opening" : "family_tracing";
}

FlowMode::Kind mode_kind(const std::string& name) {
  if (name == "genus_opening") return FlowMode::Kind::GenusOpening;
  if (name == "family_tracing") return FlowMode::Kind::FamilyTracing;
  throw std::runtime_error("snapshot: unknown mode '" + name + "'");
}

}  // namespace

Snapshot Snapshot::capture(const FlowCursor& cursor,
                           const std::map<std::string, std::string>& config_echo,
                           double ci, double ce, double ca) {
  Snapshot s;
  s.cursor = cursor;
  s.config = config_echo;
  s.ci_inf = ci;
  s.ce_inf = ce;
  s.ca_inf = ca;
  if (const char* ts = std::getenv("WHITHAM_TIMESTAMP")) s.timestamp = ts;
  return s;
}

std::string snapshot_to_json(const Snapshot& snap) {
  const FlowState& st = snap.cursor.state;
  json j;
  j["schema"] = snap.schema;
  j["software"] = snap.software;
  j["timestamp"] = snap.timestamp;
  j["config"] = json::object();
  for (const auto& kv : snap.config) j["config"][kv.first] = kv.second;

  json state;
  state["mode"] = mode_name(st.mode.kind);
  state["frozen"] = fmt17(st.mode.frozen);
  state["t"] = fmt17(st.t);
  state["u"] = fmt17(st.u);
  state["residual_norm"] = fmt17(st.residual_norm);
  state["shape"] = {{"d_p", st.A.shape.d_p}, {"d_q", st.A.shape.d_q},
                    {"N", st.A.shape.N}};
  json p = json::array(), q = json::array();
  for (int k = 0; k < 4; ++k) {
    p.push_back(coeff_list(st.A.p[k]));
    q.push_back(coeff_list(st.A.q[k]));
  }
  state["p"] = p;
  state["q"] = q;
  state["xhat"] = coeff_list(st.A.xhat);
  state["yhat"] = coeff_list(st.A.yhat);
  j["state"] = state;

  j["cursor"] = {{"dt", fmt17(snap.cursor.dt)},
                 {"accept_streak", snap.cursor.accept_streak}};
  j["residuals"] = {{"ci_inf", fmt17(snap.ci_inf)},
                    {"ce_inf", fmt17(snap.ce_inf)},
                    {"ca_inf", fmt17(snap.ca_inf)}};
  return j.dump(1) + "\n";
}

Snapshot snapshot_from_json(const std::string& text) {
  json j = json::parse(text);
  Snapshot s;
  s.schema = j.at("schema").get<int>();
  if (s.schema != 1)
    throw std::runtime_error("snapshot: unsupported schema version " +
                             std::to_string(s.schema));
  s.software = j.at("software").get<std::string>();
  s.timestamp = j.at("timestamp").get<std::string>();
  for (auto it = j.at("config").begin(); it != j.at("config").end(); ++it)
    s.config[it.key()] = it.value().get<std::string>();

  const json& state = j.at("state");
  FlowState& st = s.cursor.state;
  st.mode.kind = mode_kind(state.at("mode").get<std::string>());
  st.mode.frozen = parse_number(state.at("frozen").get<std::string>());
  st.t = parse_number(state.at("t").get<std::string>());
  st.u = parse_number(state.at("u").get<std::string>());
  st.residual_norm = parse_number(state.at("residual_norm").get<std::string>());
  st.A.shape.d_p = state.at("shape").at("d_p").get<int>();
  st.A.shape.d_q = state.at("shape").at("d_q").get<int>();
  st.A.shape.N = state.at("shape").at("N").get<int>();
  for (int k = 0; k < 4; ++k) {
    st.A.p[k] = coeff_parse(state.at("p").at(k));
    st.A.q[k] = coeff_parse(state.at("q").at(k));
  }
  st.A.xhat = coeff_parse(state.at("xhat"));
  st.A.yhat = coeff_parse(state.at("yhat"));
  st.A.validate();

  s.cursor.dt = parse_number(j.at("cursor").at("dt").get<std::string>());
  s.cursor.accept_streak = j.at("cursor").at("accept_streak").get<int>();
  s.ci_inf = parse_number(j.at("residuals").at("ci_inf").get<std::string>());
  s.ce_inf = parse_number(j.at("residuals").at("ce_inf").get<std::string>());
  s.ca_inf = parse_number(j.at("residuals").at("ca_inf").get<std::string>());
  return s;
}

void save_snapshot(const std::string& path, const Snapshot& snap) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("snapshot: cannot write '" + path + "'");
  out << snapshot_to_json(snap);
}

Snapshot load_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("snapshot: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return snapshot_from_json(ss.str());
}

}  // namespace whitham
