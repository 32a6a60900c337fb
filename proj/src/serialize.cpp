#include "spinstep/serialize.hpp"

#include <cmath>
#include <cstdio>

namespace spinstep {

std::string format_number(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string json_quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", static_cast<unsigned>(ch));
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out + "\"";
}

void JsonObject::key(const std::string& k) {
  if (!body_.empty()) body_ += ",";
  body_ += json_quote(k) + ":";
}

JsonObject& JsonObject::field(const std::string& k, double value) {
  key(k);
  body_ += format_number(value);
  return *this;
}

JsonObject& JsonObject::field(const std::string& k, bool value) {
  key(k);
  body_ += value ? "true" : "false";
  return *this;
}

JsonObject& JsonObject::field(const std::string& k, long long value) {
  key(k);
  body_ += std::to_string(value);
  return *this;
}

JsonObject& JsonObject::field(const std::string& k, const char* value) {
  key(k);
  body_ += json_quote(value);
  return *this;
}

JsonObject& JsonObject::field(const std::string& k, const std::string& value) {
  return field(k, value.c_str());
}

JsonObject& JsonObject::raw(const std::string& k, const std::string& json) {
  key(k);
  body_ += json;
  return *this;
}

std::string to_json(const AlgebraReport& report) {
  std::string out = "[";
  bool first = true;
  for (const auto& c : report.checks()) {
    out += first ? "\n  " : ",\n  ";
    first = false;
    out += JsonObject{}
               .field("check_name", c.name)
               .field("max_deviation", c.max_deviation)
               .field("pass", c.pass)
               .str();
  }
  return out + (first ? "]" : "\n]");
}

std::string to_json(const PlaneWaveState& state) {
  std::string comps = "[";
  for (std::size_t i = 0; i < 4; ++i) {
    if (i) comps += ",";
    comps += "[" + format_number(state.spinor[i].real()) + "," + format_number(state.spinor[i].imag()) + "]";
  }
  comps += "]";
  return JsonObject{}
      .raw("components", comps)
      .field("momentum", state.momentum)
      .field("energy", state.energy)
      .field("spin", to_string(state.spin))
      .field("direction", to_string(state.direction))
      .str();
}

void append_fields(JsonObject& obj, const ScatteringCoefficients& c) {
  if (c.branch == Branch::Propagating) {
    obj.field("t1", c.t1).field("t2", c.t2).field("r1", c.r1).field("r2", c.r2);
  } else {
    obj.field("r1_prime", c.r1).field("r2_prime", c.r2);
  }
  obj.field("sum", c.sum());
}

void append_fields(JsonObject& obj, const CurrentDensities& j) {
  obj.field("j_inc", j.j_inc)
      .field("j_refl_up", j.j_refl_up)
      .field("j_refl_down", j.j_refl_down)
      .field("j_trans_up", j.j_trans_up)
      .field("j_trans_down", j.j_trans_down);
}

}  // namespace spinstep
