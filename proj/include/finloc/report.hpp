#pragma once

#include <string>
#include <vector>

namespace finloc {

// One check outcome; every fail carries a witness, skips name the guard.
struct CheckResult {
  std::string check;
  std::string status;  // pass | fail | skipped(guard)
  std::string witness;
};

// Accumulated command report. JSON output is deterministic: identical
// inputs yield byte-identical bytes, so wall-clock duration stays on the
// diagnostic stream and out of the JSON body.
struct Report {
  std::string command;
  std::vector<std::pair<std::string, std::string>> inputs;  // path, digest
  std::vector<CheckResult> results;
  long long duration_ms = 0;

  void add_input(const std::string& path, const std::string& bytes);
  void pass(const std::string& check, const std::string& witness = "");
  void fail(const std::string& check, const std::string& witness);
  void skip(const std::string& check, const std::string& witness);
  void merge(const Report& other);

  bool ok() const;  // no fail entries

  std::string to_json() const;  // schema: 1
  std::string to_text() const;  // one line per result
};

// FNV-1a 64-bit digest, hex.
std::string content_digest(const std::string& bytes);

}  // namespace finloc
