#include "nlslab/io.hpp"

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace nlslab {

namespace {

constexpr std::uint32_t kEndianTag = 0x01020304u;

void write_bytes(std::ofstream& out, const void* p, std::size_t n) {
  out.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
}

void read_bytes(std::ifstream& in, void* p, std::size_t n) {
  in.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
  if (!in) throw std::runtime_error("read_field: truncated container");
}

}  // namespace

void write_field(const std::filesystem::path& path, const ComplexField& f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_field: cannot open " + path.string());
  const std::uint64_t n = f.grid.n;
  const double half_width = f.grid.half_width;
  write_bytes(out, &n, sizeof n);
  write_bytes(out, &half_width, sizeof half_width);
  write_bytes(out, &kEndianTag, sizeof kEndianTag);
  for (const Complex& c : f.values) {
    const double re = c.real(), im = c.imag();
    write_bytes(out, &re, sizeof re);
    write_bytes(out, &im, sizeof im);
  }
  if (!out) throw std::runtime_error("write_field: write failed for " + path.string());
}

ComplexField read_field(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_field: cannot open " + path.string());
  std::uint64_t n = 0;
  double half_width = 0.0;
  std::uint32_t tag = 0;
  read_bytes(in, &n, sizeof n);
  read_bytes(in, &half_width, sizeof half_width);
  read_bytes(in, &tag, sizeof tag);
  if (tag != kEndianTag)
    throw std::runtime_error("read_field: endianness mismatch in " + path.string());
  std::vector<Complex> values(n);
  for (std::uint64_t j = 0; j < n; ++j) {
    double re = 0.0, im = 0.0;
    read_bytes(in, &re, sizeof re);
    read_bytes(in, &im, sizeof im);
    values[j] = Complex(re, im);
  }
  return ComplexField(GridSpec(static_cast<std::size_t>(n), half_width), std::move(values));
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_field_csv(const std::filesystem::path& path, const ComplexField& f) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_field_csv: cannot open " + path.string());
  out << "x,re,im\n";
  for (std::size_t j = 0; j < f.grid.n; ++j)
    out << format_double(f.grid.point(j)) << ',' << format_double(f.values[j].real()) << ','
        << format_double(f.values[j].imag()) << '\n';
}

void write_norm_series_csv(const std::filesystem::path& path, const NormTimeSeries& series) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_norm_series_csv: cannot open " + path.string());
  out << "t,norm\n";
  for (std::size_t i = 0; i < series.times.size(); ++i)
    out << format_double(series.times[i]) << ',' << format_double(series.norms[i]) << '\n';
}

void write_norms_csv(const std::filesystem::path& path, const std::vector<NormsRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_norms_csv: cannot open " + path.string());
  out << "t,u_lp_dual,v_lp,mass,leakage\n";
  for (const NormsRow& r : rows)
    out << format_double(r.t) << ',' << format_double(r.u_dual) << ','
        << format_double(r.v_twisted) << ',' << format_double(r.mass) << ','
        << format_double(r.leakage) << '\n';
}

Json rational_to_json(const Rational& r) { return Json(r.str()); }

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_number_float()) return Rational::from_double(j.get<double>());
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  throw std::invalid_argument("rational_from_json: expected \"num/den\" string or number");
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace nlslab
