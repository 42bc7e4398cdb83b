#include "biqwlct/bqf_io.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>

#include "biqwlct/error.hpp"

namespace biqwlct {

namespace {

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int b = 0; b < 8; ++b) out.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
}

void put_f64(std::vector<std::uint8_t>& out, double x) { put_u64(out, std::bit_cast<std::uint64_t>(x)); }

std::uint64_t get_u64(const std::uint8_t* p) {
  std::uint64_t v = 0;
  for (int b = 7; b >= 0; --b) v = (v << 8) | p[b];
  return v;
}

double get_f64(const std::uint8_t* p) { return std::bit_cast<double>(get_u64(p)); }

}  // namespace

std::vector<std::uint8_t> encode_bqf(const Field2D& f) {
  std::vector<std::uint8_t> out;
  out.reserve(kBqfHeaderBytes + f.size() * 64);
  out.insert(out.end(), std::begin(kBqfMagic), std::end(kBqfMagic));
  const GridSpec& g = f.grid();
  put_u64(out, g.axis1.n);
  put_u64(out, g.axis2.n);
  put_f64(out, g.axis1.origin);
  put_f64(out, g.axis2.origin);
  put_f64(out, g.axis1.step);
  put_f64(out, g.axis2.step);
  for (const auto& h : f.values()) {
    for (double x : h.to_reals()) put_f64(out, x);
  }
  return out;
}

Field2D decode_bqf(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < kBqfHeaderBytes || std::memcmp(bytes.data(), kBqfMagic, 4) != 0) {
    throw Error(ErrorCode::Format, "not a BQF1 file");
  }
  const std::uint8_t* p = bytes.data() + 4;
  const std::uint64_t n1 = get_u64(p), n2 = get_u64(p + 8);
  GridSpec g{{static_cast<std::size_t>(n1), get_f64(p + 16), get_f64(p + 32)},
             {static_cast<std::size_t>(n2), get_f64(p + 24), get_f64(p + 40)}};
  try {
    g.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::Format, std::string("bad BQF1 grid: ") + e.what());
  }
  const std::size_t payload = bytes.size() - kBqfHeaderBytes;
  if (n1 > payload || n2 > payload || n1 * n2 * 64 != payload) {
    throw Error(ErrorCode::Format, "BQF1 record count does not match the header");
  }
  std::vector<Biquaternion> values(n1 * n2);
  const std::uint8_t* r = bytes.data() + kBqfHeaderBytes;
  for (auto& h : values) {
    std::array<double, 8> c{};
    for (auto& x : c) {
      x = get_f64(r);
      r += 8;
      if (!std::isfinite(x)) throw Error(ErrorCode::Format, "BQF1 record holds a non-finite value");
    }
    h = Biquaternion::from_reals(c);
  }
  return Field2D{g, std::move(values)};
}

void write_bqf(const std::filesystem::path& path, const Field2D& f) {
  const auto bytes = encode_bqf(f);
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  os.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!os) throw Error(ErrorCode::InvalidArgument, "cannot write " + path.string());
}

Field2D read_bqf(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(ErrorCode::InvalidArgument, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
  return decode_bqf(bytes);
}

}  // namespace biqwlct
