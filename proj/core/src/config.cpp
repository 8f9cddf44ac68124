#include "corpusforge/config.hpp"

#include <cmath>
#include <set>

#include "corpusforge/error.hpp"
#include "corpusforge/io.hpp"

namespace corpusforge {

namespace {

using nlohmann::json;

// Reads the keys of one JSON object, remembering which ones were consumed
// so leftovers can be reported as unknown fields.
class Section {
 public:
  Section(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw ConfigError(path_.empty() ? "config" : path_, "expected an object");
  }

  std::string field(std::string_view key) const {
    return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
  }

  const json* find(const std::string& key) {
    seen_.insert(key);
    const auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  void number(const std::string& key, double& out) {
    if (const json* v = find(key)) {
      if (!v->is_number()) throw ConfigError(field(key), "expected a number");
      out = v->get<double>();
      if (!std::isfinite(out)) throw ConfigError(field(key), "must be finite");
    }
  }

  template <typename Int>
  void integer(const std::string& key, Int& out) {
    if (const json* v = find(key)) {
      if (!v->is_number_integer()) throw ConfigError(field(key), "expected an integer");
      out = v->get<Int>();
    }
  }

  void boolean(const std::string& key, bool& out) {
    if (const json* v = find(key)) {
      if (!v->is_boolean()) throw ConfigError(field(key), "expected true or false");
      out = v->get<bool>();
    }
  }

  bool string(const std::string& key, std::string& out) {
    if (const json* v = find(key)) {
      if (!v->is_string()) throw ConfigError(field(key), "expected a string");
      out = v->get<std::string>();
      return true;
    }
    return false;
  }

  std::vector<std::string> strings(const std::string& key) {
    std::vector<std::string> out;
    if (const json* v = find(key)) {
      if (!v->is_array()) throw ConfigError(field(key), "expected an array of strings");
      for (const auto& item : *v) {
        if (!item.is_string()) throw ConfigError(field(key), "expected an array of strings");
        out.push_back(item.get<std::string>());
      }
    }
    return out;
  }

  void finish() const {
    for (const auto& [key, value] : obj_.items()) {
      if (!seen_.contains(key)) throw ConfigError(field(key), "unknown field");
    }
  }

 private:
  const json& obj_;
  std::string path_;
  std::set<std::string> seen_;
};

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  if (path.is_absolute() || base.empty()) return path.lexically_normal();
  return (base / path).lexically_normal();
}

// Re-labels errors raised by a sub-config's own validate(), whose field
// names use a different prefix.
template <typename Fn>
void relabel(std::string_view from, const std::string& to, Fn&& fn) {
  try {
    fn();
  } catch (const ConfigError& e) {
    std::string field = e.field();
    if (field.starts_with(from)) field = to + field.substr(from.size());
    else if (!field.starts_with(to)) field = to + "." + field;
    const std::string what = e.what();
    throw ConfigError(field, what.substr(what.find(": ") + 2));
  }
}

AdapterSpec parse_adapter(const json& obj, std::size_t index, const std::filesystem::path& base) {
  Section s(obj, "adapters[" + std::to_string(index) + "]");
  AdapterSpec spec;
  if (!s.string("name", spec.id.name) || spec.id.name.empty()) {
    throw ConfigError(s.field("name"), "required non-empty string");
  }
  if (!s.string("type", spec.type)) throw ConfigError(s.field("type"), "required");
  spec.id.priority = static_cast<int>(index);
  s.integer("priority", spec.id.priority);
  s.boolean("trainee", spec.id.trainee);
  double timeout_s = 60.0;
  s.number("timeout_s", timeout_s);
  if (!(timeout_s > 0.0)) throw ConfigError(s.field("timeout_s"), "must be positive");
  spec.timeout = std::chrono::milliseconds(std::llround(timeout_s * 1000.0));

  std::string path;
  const bool has_path = s.string("path", path);
  spec.command = s.strings("command");
  const bool has_url = s.string("url", spec.url);
  std::string cwd;
  const bool has_cwd = s.string("cwd", cwd);
  s.finish();

  if (spec.type == "cached") {
    if (!has_path) throw ConfigError(s.field("path"), "required for a cached adapter");
    spec.path = resolve(base, path);
  } else if (spec.type == "subprocess") {
    if (spec.command.empty()) throw ConfigError(s.field("command"), "required for a subprocess adapter");
    spec.working_dir = has_cwd ? resolve(base, cwd) : base;
  } else if (spec.type == "http") {
    if (!has_url) throw ConfigError(s.field("url"), "required for an http adapter");
    if (!spec.url.starts_with("http://")) throw ConfigError(s.field("url"), "expected an http:// URL");
  } else {
    throw ConfigError(s.field("type"), "expected \"cached\", \"subprocess\" or \"http\"");
  }
  return spec;
}

nlohmann::ordered_json rules_json(const NormRules& r) {
  nlohmann::ordered_json j;
  j["special_terms"] = nlohmann::ordered_json::array();
  for (const auto& [raw, spoken] : r.special_terms) j["special_terms"].push_back({raw, spoken});
  j["abbreviations"] = nlohmann::ordered_json::object();
  for (const auto& [key, a] : r.abbreviations) {
    j["abbreviations"][key] = {{"plain", a.plain}, {"street", a.street}, {"title", a.title}};
  }
  j["year_range"] = {r.year_range.low, r.year_range.high};
  j["keep_apostrophe"] = r.keep_apostrophe;
  j["common_words"] = r.common_words;
  return j;
}

}  // namespace

void PipelineConfig::validate(bool check_adapters) const {
  if (input_dir.empty()) throw ConfigError("input_dir", "required");
  if (output_dir.empty()) throw ConfigError("output_dir", "required");
  if (iteration < 0) throw ConfigError("iteration", "must be >= 0");
  relabel("silence", "segmentation", [&] { silence.validate(); });
  if (!(min_duration_s >= 0.0)) throw ConfigError("duration.min_s", "must be >= 0");
  if (!(max_duration_s > min_duration_s)) throw ConfigError("duration.max_s", "must exceed duration.min_s");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("committee.alpha", "must lie in [0, 1]");
  if (max_in_flight < 1) throw ConfigError("committee.max_in_flight", "must be >= 1");
  thresholds.validate();
  frequency.validate();
  length.validate();
  relabel("rules", "textnorm", [&] { norm_rules.validate(); });
  if (!check_adapters) return;
  if (adapters.size() < 2) throw ConfigError("adapters", "a committee needs at least two adapters");
  std::vector<RecognizerId> ids;
  for (const auto& a : adapters) ids.push_back(a.id);
  relabel("committee.adapters", "adapters", [&] { validate_committee(ids); });
}

nlohmann::ordered_json PipelineConfig::to_json() const {
  nlohmann::ordered_json j;
  j["input_dir"] = input_dir.generic_string();
  j["output_dir"] = output_dir.generic_string();
  j["iteration"] = iteration;
  j["segmentation"] = {{"enabled", segment},
                       {"threshold_dbfs", silence.threshold_dbfs},
                       {"min_silence_ms", silence.min_silence_ms},
                       {"frame_ms", silence.frame_ms},
                       {"pad_ms", silence.pad_ms},
                       {"resampler", resample_quality == ResampleQuality::kSinc ? "sinc" : "linear"}};
  j["duration"] = {{"min_s", min_duration_s}, {"max_s", max_duration_s}};
  j["committee"] = {{"alpha", alpha}, {"max_in_flight", max_in_flight}};
  j["thresholds"] = {{"max_er", thresholds.max_er},
                     {"max_wer", thresholds.max_wer},
                     {"max_cer", thresholds.max_cer},
                     {"trainee_min_wer", thresholds.trainee_min_wer},
                     {"trainee_min_cer", thresholds.trainee_min_cer},
                     {"trainee_combine",
                      thresholds.trainee_combine == TraineeCombine::kAny ? "any" : "all"}};
  j["frequency"] = {{"max_per_signature", frequency.max_per_signature},
                    {"stopwords", frequency.stopwords}};
  j["length"] = {{"min_chars", length.min_chars}, {"min_s", length.min_s}, {"max_s", length.max_s}};
  j["textnorm"] = rules_json(norm_rules);
  auto& list = j["adapters"] = nlohmann::ordered_json::array();
  for (const auto& a : adapters) {
    nlohmann::ordered_json item = {{"name", a.id.name},
                                   {"type", a.type},
                                   {"priority", a.id.priority},
                                   {"trainee", a.id.trainee},
                                   {"timeout_s", static_cast<double>(a.timeout.count()) / 1000.0}};
    if (a.type == "cached") item["path"] = a.path.generic_string();
    if (a.type == "subprocess") {
      item["command"] = a.command;
      item["cwd"] = a.working_dir.generic_string();
    }
    if (a.type == "http") item["url"] = a.url;
    list.push_back(std::move(item));
  }
  return j;
}

std::string PipelineConfig::hash() const { return fnv1a_hex(to_json().dump()); }

PipelineConfig PipelineConfig::from_json(const nlohmann::json& config,
                                         const std::filesystem::path& base_dir) {
  PipelineConfig c;
  Section top(config, "");
  std::string dir;
  if (top.string("input_dir", dir)) c.input_dir = resolve(base_dir, dir);
  if (top.string("output_dir", dir)) c.output_dir = resolve(base_dir, dir);
  top.integer("iteration", c.iteration);

  if (const json* v = top.find("segmentation")) {
    Section s(*v, "segmentation");
    s.boolean("enabled", c.segment);
    s.number("threshold_dbfs", c.silence.threshold_dbfs);
    s.integer("min_silence_ms", c.silence.min_silence_ms);
    s.integer("frame_ms", c.silence.frame_ms);
    s.integer("pad_ms", c.silence.pad_ms);
    std::string resampler;
    if (s.string("resampler", resampler)) {
      if (resampler == "sinc") c.resample_quality = ResampleQuality::kSinc;
      else if (resampler == "linear") c.resample_quality = ResampleQuality::kLinear;
      else throw ConfigError("segmentation.resampler", "expected \"sinc\" or \"linear\"");
    }
    s.finish();
  }
  if (const json* v = top.find("duration")) {
    Section s(*v, "duration");
    s.number("min_s", c.min_duration_s);
    s.number("max_s", c.max_duration_s);
    s.finish();
  }
  if (const json* v = top.find("committee")) {
    Section s(*v, "committee");
    s.number("alpha", c.alpha);
    s.integer("max_in_flight", c.max_in_flight);
    s.finish();
  }
  if (const json* v = top.find("thresholds")) {
    Section s(*v, "thresholds");
    s.number("max_er", c.thresholds.max_er);
    s.number("max_wer", c.thresholds.max_wer);
    s.number("max_cer", c.thresholds.max_cer);
    s.number("trainee_min_wer", c.thresholds.trainee_min_wer);
    s.number("trainee_min_cer", c.thresholds.trainee_min_cer);
    std::string combine;
    if (s.string("trainee_combine", combine)) {
      if (combine == "any") c.thresholds.trainee_combine = TraineeCombine::kAny;
      else if (combine == "all") c.thresholds.trainee_combine = TraineeCombine::kAll;
      else throw ConfigError("thresholds.trainee_combine", "expected \"any\" or \"all\"");
    }
    s.finish();
  }
  if (const json* v = top.find("frequency")) {
    Section s(*v, "frequency");
    s.integer("max_per_signature", c.frequency.max_per_signature);
    if (s.find("stopwords")) {
      const auto words = s.strings("stopwords");
      c.frequency.stopwords = {words.begin(), words.end()};
    }
    for (const auto& w : s.strings("extra_stopwords")) c.frequency.stopwords.insert(w);
    s.finish();
  }
  if (const json* v = top.find("length")) {
    Section s(*v, "length");
    s.integer("min_chars", c.length.min_chars);
    s.number("min_s", c.length.min_s);
    s.number("max_s", c.length.max_s);
    s.finish();
  }
  if (const json* v = top.find("textnorm")) {
    relabel("rules", "textnorm", [&] {
      if (v->is_string()) {
        c.norm_rules = NormRules::load(resolve(base_dir, v->get<std::string>()));
      } else {
        c.norm_rules = NormRules::from_json(*v);
      }
    });
  }
  if (const json* v = top.find("adapters")) {
    if (!v->is_array()) throw ConfigError("adapters", "expected an array");
    for (std::size_t i = 0; i < v->size(); ++i) c.adapters.push_back(parse_adapter((*v)[i], i, base_dir));
  }
  top.finish();
  return c;
}

PipelineConfig PipelineConfig::load(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_file_text(path);
  } catch (const Error& e) {
    throw ConfigError("config", e.what());
  }
  json config;
  try {
    config = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("config", path.string() + ": " + e.what());
  }
  auto base = path.parent_path();
  if (base.empty()) base = ".";
  return from_json(config, std::filesystem::absolute(base).lexically_normal());
}

}  // namespace corpusforge
