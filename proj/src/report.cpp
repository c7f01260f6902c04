#include "finloc/report.hpp"

#include <cstdint>

#include "json.hpp"

namespace finloc {

void Report::add_input(const std::string& path, const std::string& bytes) {
  inputs.emplace_back(path, content_digest(bytes));
}

void Report::pass(const std::string& check, const std::string& witness) {
  results.push_back({check, "pass", witness});
}

void Report::fail(const std::string& check, const std::string& witness) {
  results.push_back({check, "fail", witness});
}

void Report::skip(const std::string& check, const std::string& witness) {
  results.push_back({check, "skipped(guard)", witness});
}

void Report::merge(const Report& other) {
  for (const auto& in : other.inputs) inputs.push_back(in);
  for (const auto& r : other.results) results.push_back(r);
  duration_ms += other.duration_ms;
}

bool Report::ok() const {
  for (const auto& r : results)
    if (r.status == "fail") return false;
  return true;
}

std::string Report::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["command"] = command;
  j["inputs"] = nlohmann::ordered_json::array();
  for (const auto& [path, digest] : inputs)
    j["inputs"].push_back({{"file", path}, {"digest", digest}});
  j["results"] = nlohmann::ordered_json::array();
  for (const auto& r : results) {
    nlohmann::ordered_json e{{"check", r.check}, {"status", r.status}};
    if (!r.witness.empty()) e["witness"] = r.witness;
    j["results"].push_back(e);
  }
  return j.dump(2) + "\n";
}

std::string Report::to_text() const {
  std::string out;
  for (const auto& r : results) {
    out += r.status == "pass" ? "pass " : r.status == "fail" ? "FAIL " : "skip ";
    out += r.check;
    if (!r.witness.empty()) out += "  [" + r.witness + "]";
    out += "\n";
  }
  return out;
}

std::string content_digest(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = hex[h & 0xf];
    h >>= 4;
  }
  return out;
}

}  // namespace finloc
