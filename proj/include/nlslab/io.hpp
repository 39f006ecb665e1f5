#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "nlslab/grid.hpp"
#include "nlslab/rational.hpp"
#include "nlslab/spectral.hpp"

namespace nlslab {

using Json = nlohmann::ordered_json;

/// Binary field container: header (n: u64, L: f64, endianness tag: u32
/// written as 0x01020304 by the host), payload n interleaved re/im float64
/// pairs.  Round-trips bit exactly.
void write_field(const std::filesystem::path& path, const ComplexField& f);
ComplexField read_field(const std::filesystem::path& path);

/// CSV with header "x,re,im".
void write_field_csv(const std::filesystem::path& path, const ComplexField& f);

/// CSV with header "t,norm".
void write_norm_series_csv(const std::filesystem::path& path, const NormTimeSeries& series);

struct NormsRow {
  double t = 0.0;
  double u_dual = 0.0;    ///< ||u(t)||_{p'}
  double v_twisted = 0.0; ///< ||U(-t)u(t)||_p
  double mass = 0.0;
  double leakage = 0.0;
};

/// The harness norms.csv contract: "t,u_lp_dual,v_lp,mass,leakage".
void write_norms_csv(const std::filesystem::path& path, const std::vector<NormsRow>& rows);

Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j);

/// FNV-1a 64-bit hash, hex encoded; used for config provenance.
std::string fnv1a_hex(const std::string& bytes);

/// Shortest decimal round-trip formatting used by every CSV writer.
std::string format_double(double v);

}  // namespace nlslab
