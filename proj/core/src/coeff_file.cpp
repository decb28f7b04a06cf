#include "polyconv/coeff_file.hpp"

#include <charconv>
#include <cstdint>
#include <cstring>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

namespace polyconv::io {
namespace {

constexpr char kMagic[4] = {'P', 'X', 'F', '1'};

// Shortest decimal spelling that parses back to the same double.
// Used for basis parameters, where readability wins.
std::string fmt(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Coefficient lines carry a fixed 17 significant digits.
std::string fmt17(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

double parse_double(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw ParseError(std::string(what) + ": trailing characters in '" + s + "'");
    return v;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError(std::string(what) + ": cannot parse number '" + s + "'");
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string family_name(Family f) {
  switch (f) {
    case Family::chebyshev: return "chebyshev";
    case Family::legendre: return "legendre";
    case Family::ultraspherical: return "ultraspherical";
    case Family::jacobi: return "jacobi";
    case Family::laguerre: return "laguerre";
  }
  return "unknown";
}

std::string params_csv(const Basis& b) {
  switch (b.family) {
    case Family::ultraspherical:
    case Family::laguerre:
      return fmt(b.alpha);
    case Family::jacobi:
      return fmt(b.alpha) + "," + fmt(b.beta);
    default:
      return "";
  }
}

Basis basis_from(const std::string& family, const std::string& csv) {
  std::vector<std::string> p;
  if (!csv.empty()) p = split(csv, ',');
  auto expect = [&](std::size_t count) {
    if (p.size() != count) {
      throw ParseError("basis " + family + " expects " +
                       std::to_string(count) + " parameter(s)");
    }
  };
  if (family == "chebyshev") {
    expect(0);
    return Basis::chebyshev();
  }
  if (family == "legendre") {
    expect(0);
    return Basis::legendre();
  }
  if (family == "ultraspherical") {
    expect(1);
    return Basis::ultraspherical(parse_double(p[0], "ultraspherical"));
  }
  if (family == "jacobi") {
    expect(2);
    return Basis::jacobi(parse_double(p[0], "jacobi"),
                         parse_double(p[1], "jacobi"));
  }
  if (family == "laguerre") {
    expect(1);
    return Basis::laguerre(parse_double(p[0], "laguerre"));
  }
  throw ParseError("unknown basis family '" + family + "'");
}

void put_u64(std::ostream& out, std::uint64_t v) {
  char b[8];
  for (int i = 0; i < 8; ++i) {
    b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  }
  out.write(b, 8);
}

std::uint64_t get_u64(std::istream& in) {
  unsigned char b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  if (!in) throw ParseError("binary stream truncated");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) {
    v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  }
  return v;
}

}  // namespace

Basis parse_basis_spec(const std::string& spec) {
  const std::size_t colon = spec.find(':');
  const std::string family =
      colon == std::string::npos ? spec : spec.substr(0, colon);
  const std::string csv =
      colon == std::string::npos ? "" : spec.substr(colon + 1);
  try {
    return basis_from(family, csv);
  } catch (const ParseError& e) {
    // The CLI spelling is user parameter input, not file content.
    throw InvalidParameter(e.what());
  }
}

std::string basis_spec(const Basis& basis) {
  const std::string csv = params_csv(basis);
  return csv.empty() ? family_name(basis.family)
                     : family_name(basis.family) + ":" + csv;
}

void write_text(std::ostream& out, const CoefficientVector& cv) {
  out << "# basis=" << family_name(cv.basis.family)
      << " params=" << params_csv(cv.basis) << " n=" << cv.values.size()
      << "\n";
  for (double v : cv.values) out << fmt17(v) << "\n";
}

CoefficientVector read_text(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw ParseError("empty coefficient file");
  if (header.empty() || header[0] != '#') {
    throw ParseError("missing '# basis=... params=... n=...' header");
  }
  std::istringstream hs(header.substr(1));
  std::string token, family, csv;
  std::uint64_t n = 0;
  bool have_family = false, have_n = false;
  while (hs >> token) {
    if (token.rfind("basis=", 0) == 0) {
      family = token.substr(6);
      have_family = true;
    } else if (token.rfind("params=", 0) == 0) {
      csv = token.substr(7);
    } else if (token.rfind("n=", 0) == 0) {
      n = std::stoull(token.substr(2));
      have_n = true;
    } else {
      throw ParseError("unrecognized header field '" + token + "'");
    }
  }
  if (!have_family || !have_n) {
    throw ParseError("header must carry basis= and n= fields");
  }
  CoefficientVector cv;
  cv.basis = basis_from(family, csv);
  cv.values.reserve(n);
  std::string line;
  while (cv.values.size() < n && std::getline(in, line)) {
    if (line.empty()) continue;
    cv.values.push_back(parse_double(line, "coefficient"));
  }
  if (cv.values.size() != n) {
    throw ParseError("expected " + std::to_string(n) + " coefficients, got " +
                     std::to_string(cv.values.size()));
  }
  return cv;
}

void write_binary(std::ostream& out, std::span<const double> values) {
  out.write(kMagic, 4);
  put_u64(out, values.size());
  for (double d : values) {
    std::uint64_t bits = 0;
    std::memcpy(&bits, &d, 8);
    put_u64(out, bits);
  }
}

std::vector<double> read_binary(std::istream& in) {
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0) {
    throw ParseError("missing PXF1 magic");
  }
  const std::uint64_t n = get_u64(in);
  std::vector<double> values(n);
  for (auto& d : values) {
    const std::uint64_t bits = get_u64(in);
    std::memcpy(&d, &bits, 8);
  }
  return values;
}

bool looks_binary(std::istream& in) {
  char magic[4];
  in.read(magic, 4);
  const bool ok = in.gcount() == 4 && std::memcmp(magic, kMagic, 4) == 0;
  in.clear();
  in.seekg(0);
  return ok;
}

}  // namespace polyconv::io
