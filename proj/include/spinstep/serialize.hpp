#ifndef SPINSTEP_SERIALIZE_HPP
#define SPINSTEP_SERIALIZE_HPP

#include <string>

#include "spinstep/algebra.hpp"
#include "spinstep/eigensystem.hpp"
#include "spinstep/scattering.hpp"

namespace spinstep {

// Every number the library writes goes through format_number: 17 significant
// digits, which round-trips any double exactly.
std::string format_number(double x);

/// Minimal single-line JSON object builder.
class JsonObject {
 public:
  JsonObject& field(const std::string& key, double value);
  JsonObject& field(const std::string& key, bool value);
  JsonObject& field(const std::string& key, long long value);
  JsonObject& field(const std::string& key, const char* value);
  JsonObject& field(const std::string& key, const std::string& value);
  /// Inserts pre-serialized JSON verbatim.
  JsonObject& raw(const std::string& key, const std::string& json);

  std::string str() const { return "{" + body_ + "}"; }

 private:
  void key(const std::string& k);
  std::string body_;
};

std::string json_quote(const std::string& s);

/// [{"check_name": ..., "max_deviation": ..., "pass": ...}, ...]
std::string to_json(const AlgebraReport& report);

/// {"components": [[re, im] x4], "momentum", "energy", "spin", "direction"}
std::string to_json(const PlaneWaveState& state);

/// t1, t2, r1, r2 (propagating) or r1_prime, r2_prime (evanescent), plus sum.
void append_fields(JsonObject& obj, const ScatteringCoefficients& c);
/// j_inc, j_refl_up, j_refl_down, j_trans_up, j_trans_down.
void append_fields(JsonObject& obj, const CurrentDensities& j);

}  // namespace spinstep

#endif  // SPINSTEP_SERIALIZE_HPP
