#include <array>
#include <cstdio>
#include <cstring>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "iep/error.hpp"
#include "iep/poly.hpp"

namespace iep {

namespace {

constexpr std::array<char, 4> kMagic{'I', 'E', 'P', 'C'};

template <typename U>
void put_le(std::ostream& out, U value) {
  std::array<char, sizeof(U)> bytes{};
  for (std::size_t i = 0; i < sizeof(U); ++i) bytes[i] = static_cast<char>((value >> (8 * i)) & 0xff);
  out.write(bytes.data(), bytes.size());
}

template <typename U>
U get_le(std::istream& in) {
  std::array<unsigned char, sizeof(U)> bytes{};
  in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (!in) throw PersistenceError("truncated binary coefficient record");
  U value = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) value |= static_cast<U>(bytes[i]) << (8 * i);
  return value;
}

void put_i64(std::ostream& out, std::int64_t v) { put_le<std::uint64_t>(out, static_cast<std::uint64_t>(v)); }
std::int64_t get_i64(std::istream& in) { return static_cast<std::int64_t>(get_le<std::uint64_t>(in)); }

std::string header_line(const CoefficientVector& v) {
  std::ostringstream os;
  os << "# iep-coefficients v" << kCoeffFormatVersion << " p=" << v.triple.p << " q=" << v.triple.q
     << " r=" << v.triple.r << " degree=" << v.degree << " engine=" << engine_name(v.engine);
  return os.str();
}

void check_shape(const CoefficientVector& v) {
  if (v.degree < 0 || static_cast<std::int64_t>(v.coeffs.size()) != v.degree + 1) {
    throw PersistenceError("coefficient record length does not match its degree");
  }
}

}  // namespace

CoeffFormat parse_coeff_format(std::string_view name) {
  if (name == "text") return CoeffFormat::text;
  if (name == "csv") return CoeffFormat::csv;
  if (name == "json") return CoeffFormat::json;
  if (name == "bin") return CoeffFormat::bin;
  throw InvalidParameters("unknown coefficient format '" + std::string(name) + "'");
}

void write_coefficients(std::ostream& out, const CoefficientVector& v, CoeffFormat format) {
  check_shape(v);
  switch (format) {
    case CoeffFormat::text: {
      out << "Q" << v.triple.str() << "  degree " << v.degree << "  engine " << engine_name(v.engine) << '\n';
      for (std::int64_t m = 0; m <= v.degree; ++m) {
        out << v[m] << ((m % 20 == 19 || m == v.degree) ? '\n' : ' ');
      }
      break;
    }
    case CoeffFormat::csv: {
      out << header_line(v) << '\n' << "index,coefficient\n";
      for (std::int64_t m = 0; m <= v.degree; ++m) out << m << ',' << v[m] << '\n';
      break;
    }
    case CoeffFormat::json: {
      nlohmann::ordered_json j;
      j["version"] = kCoeffFormatVersion;
      j["p"] = v.triple.p;
      j["q"] = v.triple.q;
      j["r"] = v.triple.r;
      j["degree"] = v.degree;
      j["engine"] = engine_name(v.engine);
      j["coeffs"] = v.coeffs;
      out << j.dump() << '\n';
      break;
    }
    case CoeffFormat::bin: {
      out.write(kMagic.data(), kMagic.size());
      put_le<std::uint32_t>(out, kCoeffFormatVersion);
      put_i64(out, v.triple.p);
      put_i64(out, v.triple.q);
      put_i64(out, v.triple.r);
      put_i64(out, v.degree);
      put_le<std::uint32_t>(out, static_cast<std::uint32_t>(v.engine));
      put_le<std::uint32_t>(out, 0);
      for (auto c : v.coeffs) put_i64(out, c);
      break;
    }
  }
  if (!out) throw PersistenceError("failed writing coefficient record");
}

CoefficientVector read_coefficients_binary(std::istream& in) {
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw PersistenceError("not a binary coefficient record (bad magic)");
  auto version = get_le<std::uint32_t>(in);
  if (version != kCoeffFormatVersion) {
    throw PersistenceError("unsupported coefficient record version " + std::to_string(version));
  }
  CoefficientVector v;
  v.triple.p = get_i64(in);
  v.triple.q = get_i64(in);
  v.triple.r = get_i64(in);
  v.degree = get_i64(in);
  auto engine = get_le<std::uint32_t>(in);
  if (engine > 1) throw PersistenceError("unknown engine id " + std::to_string(engine));
  v.engine = static_cast<EngineId>(engine);
  get_le<std::uint32_t>(in);
  if (v.degree < 0) throw PersistenceError("negative degree in coefficient record");
  v.coeffs.resize(static_cast<std::size_t>(v.degree + 1));
  for (auto& c : v.coeffs) c = get_i64(in);
  return v;
}

CoefficientVector read_coefficients_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw PersistenceError("empty CSV coefficient record");
  CoefficientVector v;
  char engine[16] = {};
  unsigned version = 0;
  long long p = 0, q = 0, r = 0, deg = 0;
  if (std::sscanf(line.c_str(), "# iep-coefficients v%u p=%lld q=%lld r=%lld degree=%lld engine=%15s", &version,
                  &p, &q, &r, &deg, engine) != 6) {
    throw PersistenceError("malformed CSV header: " + line);
  }
  if (version != kCoeffFormatVersion) throw PersistenceError("unsupported CSV record version");
  v.triple = {p, q, r};
  v.degree = deg;
  v.engine = parse_engine(engine);
  if (!std::getline(in, line) || line != "index,coefficient") throw PersistenceError("missing CSV column header");
  v.coeffs.reserve(static_cast<std::size_t>(deg + 1));
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    long long idx = 0, c = 0;
    if (std::sscanf(line.c_str(), "%lld,%lld", &idx, &c) != 2 ||
        idx != static_cast<long long>(v.coeffs.size())) {
      throw PersistenceError("malformed CSV row: " + line);
    }
    v.coeffs.push_back(c);
  }
  check_shape(v);
  return v;
}

}  // namespace iep
