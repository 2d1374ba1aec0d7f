#pragma once

#include <map>
#include <string>

#include "whitham/flow.hpp"

namespace whitham {

// Resumable run state. All floating-point fields are serialized as 17
// significant digit decimal strings, which round-trip doubles bit-for-bit.
// The timestamp stays empty unless the WHITHAM_TIMESTAMP environment
// variable is set, keeping outputs byte-identical across reruns.
struct Snapshot {
  int schema = 1;
  std::map<std::string, std::string> config;  // RunConfig echo, as read
  FlowCursor cursor;
  double ci_inf = 0.0, ce_inf = 0.0, ca_inf = 0.0;
  std::string software = "whitham 0.1.0";
  std::string timestamp;

  static Snapshot capture(const FlowCursor& cursor,
                          const std::map<std::string, std::string>& config_echo,
                          double ci, double ce, double ca);
};

std::string snapshot_to_json(const Snapshot& snap);
Snapshot snapshot_from_json(const std::string& text);

void save_snapshot(const std::string& path, const Snapshot& snap);
Snapshot load_snapshot(const std::string& path);

}  // namespace whitham
