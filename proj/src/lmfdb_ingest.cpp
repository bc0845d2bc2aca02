#include "avcyc/lmfdb_ingest.hpp"

#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>

#include "httplib.h"
#include "json.hpp"

#include "avcyc/error.hpp"
#include "avcyc/weil_poly.hpp"

namespace avcyc::ingest {

using nlohmann::json;

namespace {

const std::vector<std::string> kFields = {"label", "q", "g", "poly", "is_ordinary_claimed",
                                          "point_count_claimed"};

// Integers may arrive as JSON numbers or as decimal strings.
Int json_int(const json& v, const char* what) {
  if (v.is_number_integer()) return Int(v.dump());
  if (v.is_string()) {
    try {
      return parse_int(v.get<std::string>());
    } catch (const Error&) {
    }
  }
  throw Error(ErrorCode::Parse, std::string(what) + " is not an integer");
}

ExternalClassRecord record_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::Parse, "not a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::find(kFields.begin(), kFields.end(), it.key()) == kFields.end())
      throw Error(ErrorCode::Parse, "unknown field \"" + it.key() + "\"");
  for (const char* k : {"label", "q", "g", "poly"})
    if (!j.contains(k)) throw Error(ErrorCode::Parse, std::string("missing field \"") + k + "\"");

  ExternalClassRecord rec;
  if (!j["label"].is_string()) throw Error(ErrorCode::Parse, "label is not a string");
  rec.label = j["label"].get<std::string>();
  rec.q = json_int(j["q"], "q");
  auto pp = as_prime_power(rec.q);
  if (!pp) throw Error(ErrorCode::NotPrimePower, "q = " + to_string(rec.q) + " is not a prime power");
  rec.p = pp->first;
  rec.r = pp->second;
  Int g = json_int(j["g"], "g");
  if (g < 1 || g > 64) throw Error(ErrorCode::InvalidArgument, "g out of range");
  rec.g = static_cast<unsigned>(g.get_ui());

  if (!j["poly"].is_array()) throw Error(ErrorCode::Parse, "poly is not an array");
  for (const auto& c : j["poly"]) rec.poly.push_back(json_int(c, "poly coefficient"));
  if (rec.poly.size() != 2 * rec.g + 1)
    throw Error(ErrorCode::WrongDegree, "poly has " + std::to_string(rec.poly.size()) +
                                            " coefficients, expected " + std::to_string(2 * rec.g + 1));
  if (rec.poly.back() != 1) throw Error(ErrorCode::NonMonic, "poly is not monic");
  rec.high_first.assign(rec.poly.rbegin(), rec.poly.rend());

  if (j.contains("is_ordinary_claimed")) {
    if (!j["is_ordinary_claimed"].is_boolean()) throw Error(ErrorCode::Parse, "is_ordinary_claimed is not a boolean");
    rec.is_ordinary_claimed = j["is_ordinary_claimed"].get<bool>();
  }
  if (j.contains("point_count_claimed")) rec.point_count_claimed = json_int(j["point_count_claimed"], "point_count_claimed");
  return rec;
}

nlohmann::ordered_json int_json(const Int& x) {
  if (fits_i64(x)) return to_i64(x);
  return to_string(x);
}

}  // namespace

LoadResult parse_fixture(std::string_view text) {
  LoadResult out;
  std::size_t line_no = 0, pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) {
      if (end == text.size()) break;
      continue;
    }
    try {
      out.records.push_back(record_from_json(json::parse(line)));
    } catch (const json::parse_error& e) {
      out.rejected.push_back({line_no, "malformed JSON at byte " + std::to_string(e.byte)});
    } catch (const Error& e) {
      out.rejected.push_back({line_no, e.what()});
    }
    if (end == text.size()) break;
  }
  if (out.records.empty()) {
    std::string msg = "no valid records";
    if (!out.rejected.empty())
      msg += " (line " + std::to_string(out.rejected[0].line) + ": " + out.rejected[0].message + ")";
    throw Error(ErrorCode::Parse, msg);
  }
  return out;
}

LoadResult load_fixture(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::Io, "read error on " + path.string());
  return parse_fixture(ss.str());
}

std::string to_json_line(const ExternalClassRecord& rec) {
  nlohmann::ordered_json j;
  j["label"] = rec.label;
  j["q"] = int_json(rec.q);
  j["g"] = rec.g;
  auto poly = nlohmann::ordered_json::array();
  for (const auto& c : rec.poly) poly.push_back(int_json(c));
  j["poly"] = poly;
  if (rec.is_ordinary_claimed) j["is_ordinary_claimed"] = *rec.is_ordinary_claimed;
  if (rec.point_count_claimed) j["point_count_claimed"] = int_json(*rec.point_count_claimed);
  return j.dump();
}

RemoteConfig remote_config_from_env() {
  RemoteConfig cfg;
  if (const char* e = std::getenv("AVCYC_LMFDB_ENDPOINT")) cfg.endpoint = e;
  if (const char* c = std::getenv("AVCYC_CACHE_DIR")) cfg.cache_dir = c;
  return cfg;
}

std::filesystem::path cache_file(const RemoteConfig& cfg, const RemoteQuery& query) {
  return cfg.cache_dir / ("isogeny_q" + to_string(query.q) + "_g" + std::to_string(query.g) + ".jsonl");
}

std::vector<ExternalClassRecord> parse_response(std::string_view body) {
  json j;
  try {
    j = json::parse(body);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Parse, "malformed response body at byte " + std::to_string(e.byte));
  }
  const json* arr = &j;
  if (j.is_object() && j.contains("records")) arr = &j["records"];
  if (!arr->is_array()) throw Error(ErrorCode::Parse, "response is not an array of records");
  std::vector<ExternalClassRecord> out;
  for (std::size_t i = 0; i < arr->size(); ++i) {
    try {
      out.push_back(record_from_json((*arr)[i]));
    } catch (const Error& e) {
      throw Error(ErrorCode::Parse, "record " + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

std::vector<ExternalClassRecord> fetch_remote(const RemoteQuery& query, const RemoteConfig& cfg) {
  if (!cfg.network_enabled) throw Error(ErrorCode::Capability, "network access is disabled");
  std::filesystem::path cached;
  if (!cfg.cache_dir.empty()) {
    cached = cache_file(cfg, query);
    if (std::filesystem::exists(cached)) return load_fixture(cached).records;
  }
  if (cfg.endpoint.empty()) throw Error(ErrorCode::InvalidArgument, "no endpoint configured");

  static const std::regex url(R"(^(https?)://([^/:]+)(?::(\d+))?(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(cfg.endpoint, m, url)) throw Error(ErrorCode::InvalidArgument, "bad endpoint " + cfg.endpoint);
  if (m[1] == "https") throw Error(ErrorCode::Capability, "https endpoints are not supported");
  int port = m[3].matched ? std::stoi(m[3]) : 80;
  std::string path = m[4].matched ? m[4].str() : "/";

  httplib::Client cli(m[2].str(), port);
  cli.set_connection_timeout(cfg.timeout_seconds);
  cli.set_read_timeout(cfg.timeout_seconds);
  httplib::Params params{{"q", to_string(query.q)}, {"g", std::to_string(query.g)}};
  auto res = cli.Get(path, params, httplib::Headers{});
  if (!res) throw Error(ErrorCode::Network, "request to " + cfg.endpoint + " failed: " + httplib::to_string(res.error()));
  if (res->status != 200)
    throw Error(ErrorCode::Network, "request to " + cfg.endpoint + " returned HTTP " + std::to_string(res->status));

  auto records = parse_response(res->body);
  if (!cached.empty()) {
    std::filesystem::create_directories(cfg.cache_dir);
    std::string text;
    for (const auto& r : records) text += to_json_line(r) + "\n";
    auto tmp = cached;
    tmp += ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      out << text;
      if (!out) throw Error(ErrorCode::Io, "cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, cached);
  }
  return records;
}

CrossValidation cross_validate(const std::vector<ExternalClassRecord>& records) {
  CrossValidation cv;
  cv.records = records.size();
  for (const auto& rec : records) {
    std::vector<Int> low(rec.high_first.rbegin(), rec.high_first.rend());
    if (rec.is_ordinary_claimed) {
      ++cv.fields_compared;
      bool ord = is_ordinary(low, rec.p);
      if (ord != *rec.is_ordinary_claimed)
        cv.mismatches.push_back({rec.label, "is_ordinary", *rec.is_ordinary_claimed ? "true" : "false",
                                 ord ? "true" : "false"});
    }
    if (rec.point_count_claimed) {
      ++cv.fields_compared;
      Int n = point_count(low);
      if (n != *rec.point_count_claimed)
        cv.mismatches.push_back({rec.label, "point_count", to_string(*rec.point_count_claimed), to_string(n)});
    }
  }
  return cv;
}

std::string CrossValidation::to_json() const {
  nlohmann::ordered_json j;
  j["records"] = std::to_string(records);
  j["fields_compared"] = std::to_string(fields_compared);
  auto arr = nlohmann::ordered_json::array();
  for (const auto& m : mismatches)
    arr.push_back({{"label", m.label}, {"field", m.field}, {"claimed", m.claimed}, {"computed", m.computed}});
  j["mismatches"] = arr;
  return j.dump(2);
}

}  // namespace avcyc::ingest
