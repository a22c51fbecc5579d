#include "pandora/instance_io.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include <json.hpp>

#include "pandora/distribution.hpp"
#include "pandora/errors.hpp"

namespace pandora {

namespace {

using ordered_json = nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& message) {
  throw Error(ErrorKind::BadInstanceFile, message);
}

// Strict by design: any key outside `keys` is a rejection, so files written
// by a future schema cannot be silently misread.
void require_exact_keys(const ordered_json& obj,
                        std::initializer_list<const char*> keys,
                        const std::string& where) {
  if (!obj.is_object()) bad(where + " must be an object");
  for (const char* key : keys) {
    if (!obj.contains(key)) {
      bad(where + " is missing field \"" + key + "\"");
    }
  }
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : keys) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) bad(where + " has unknown field \"" + item.key() + "\"");
  }
}

double number_field(const ordered_json& v, const std::string& where) {
  if (!v.is_number()) bad(where + " must be a number");
  return v.get<double>();
}

bool bool_field(const ordered_json& v, const std::string& where) {
  if (!v.is_boolean()) bad(where + " must be a boolean");
  return v.get<bool>();
}

}  // namespace

std::string emit_instance(const Instance& instance) {
  ordered_json root;
  root["schema_version"] = 1;
  ordered_json variant;
  variant["objective"] =
      instance.variant.objective == Objective::Min ? "min" : "max";
  variant["commitment"] = instance.variant.commitment;
  variant["observation_cost"] = instance.variant.observation_cost;
  variant["order_selection"] = instance.variant.order_selection;
  root["variant"] = std::move(variant);
  ordered_json boxes = ordered_json::array();
  for (const Box& box : instance.boxes) {
    ordered_json b;
    b["cost"] = box.cost;
    ordered_json dist = ordered_json::array();
    for (std::size_t j = 0; j < box.dist.size(); ++j) {
      dist.push_back(
          ordered_json::array({box.dist.values[j], box.dist.probs[j]}));
    }
    b["dist"] = std::move(dist);
    boxes.push_back(std::move(b));
  }
  root["boxes"] = std::move(boxes);
  return root.dump();
}

Instance parse_instance(const std::string& text) {
  ordered_json root;
  try {
    root = ordered_json::parse(text);
  } catch (const std::exception& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
  require_exact_keys(root, {"schema_version", "variant", "boxes"},
                     "instance file");
  const auto& ver = root["schema_version"];
  if (!ver.is_number_integer() || ver.get<std::int64_t>() != 1) {
    bad("unsupported schema_version (expected 1)");
  }

  const auto& var = root["variant"];
  require_exact_keys(
      var, {"objective", "commitment", "observation_cost", "order_selection"},
      "variant");
  Instance inst;
  const auto& obj = var["objective"];
  if (!obj.is_string() ||
      (obj.get<std::string>() != "min" && obj.get<std::string>() != "max")) {
    bad("variant.objective must be \"min\" or \"max\"");
  }
  inst.variant.objective =
      obj.get<std::string>() == "min" ? Objective::Min : Objective::Max;
  inst.variant.commitment = bool_field(var["commitment"], "variant.commitment");
  inst.variant.observation_cost =
      bool_field(var["observation_cost"], "variant.observation_cost");
  inst.variant.order_selection =
      bool_field(var["order_selection"], "variant.order_selection");

  const auto& boxes = root["boxes"];
  if (!boxes.is_array()) bad("boxes must be an array");
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    const std::string where = "boxes[" + std::to_string(i) + "]";
    const auto& b = boxes[i];
    require_exact_keys(b, {"cost", "dist"}, where);
    Box box;
    box.cost = number_field(b["cost"], where + ".cost");
    const auto& dist = b["dist"];
    if (!dist.is_array()) bad(where + ".dist must be an array");
    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(dist.size());
    for (std::size_t j = 0; j < dist.size(); ++j) {
      const std::string entry =
          where + ".dist[" + std::to_string(j) + "]";
      const auto& pair = dist[j];
      if (!pair.is_array() || pair.size() != 2) {
        bad(entry + " must be a [value, probability] pair");
      }
      pairs.emplace_back(number_field(pair[0], entry + " value"),
                         number_field(pair[1], entry + " probability"));
    }
    box.dist = make_distribution(pairs);
    inst.boxes.push_back(std::move(box));
  }
  inst.validate();
  return inst;
}

Instance read_instance_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) bad("cannot read instance file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

void write_instance_file(const Instance& instance, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out.good()) bad("cannot write instance file: " + path);
  out << emit_instance(instance) << '\n';
  if (!out.good()) bad("write failed: " + path);
}

}  // namespace pandora
