#include "bliss/fcidump.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <tuple>
#include <vector>

#include "bliss/errors.hpp"

namespace bliss {

namespace {

constexpr double kDuplicateTolerance = 1e-10;

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return s;
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string tok; is >> tok;) out.push_back(tok);
  return out;
}

std::optional<double> to_double(std::string tok) {
  for (char& c : tok)
    if (c == 'D' || c == 'd') c = 'E';
  const char* begin = tok.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<long> to_long(const std::string& tok) {
  const char* begin = tok.c_str();
  char* end = nullptr;
  const long v = std::strtol(begin, &end, 10);
  if (end == begin || *end != '\0') return std::nullopt;
  return v;
}

struct Header {
  std::optional<long> norb;
  std::optional<long> nelec;
  long ms2 = 0;
  long isym = 1;
  std::vector<int> orbsym;
  bool uhf = false;
};

Header parse_header(const std::string& text, std::size_t line) {
  std::string spaced;
  for (char c : text) {
    if (c == ',') {
      spaced += ' ';
    } else if (c == '=') {
      spaced += " = ";
    } else {
      spaced += c;
    }
  }
  const auto tokens = split_ws(spaced);
  Header hdr;
  std::size_t i = 0;
  while (i < tokens.size()) {
    if (i + 1 >= tokens.size() || tokens[i + 1] != "=") {
      throw ParseError(line, "unexpected token '" + tokens[i] + "' in header");
    }
    const std::string key = upper(tokens[i]);
    std::vector<std::string> values;
    std::size_t j = i + 2;
    while (j < tokens.size() && !(j + 1 < tokens.size() && tokens[j + 1] == "=")) {
      values.push_back(tokens[j]);
      ++j;
    }
    i = j;

    auto single_int = [&]() -> long {
      if (values.size() != 1)
        throw ParseError(line, "header key " + key + " expects one integer");
      const auto v = to_long(values[0]);
      if (!v)
        throw ParseError(line, "header key " + key + " has non-integer value '" +
                                   values[0] + "'");
      return *v;
    };

    if (key == "NORB") {
      hdr.norb = single_int();
    } else if (key == "NELEC") {
      hdr.nelec = single_int();
    } else if (key == "MS2") {
      hdr.ms2 = single_int();
    } else if (key == "ISYM") {
      hdr.isym = single_int();
    } else if (key == "ORBSYM") {
      for (const auto& v : values) {
        const auto s = to_long(v);
        if (!s) throw ParseError(line, "ORBSYM has non-integer entry '" + v + "'");
        hdr.orbsym.push_back(static_cast<int>(*s));
      }
    } else if (key == "UHF" || key == "IUHF") {
      const std::string v = values.empty() ? "" : upper(values[0]);
      hdr.uhf = v == ".TRUE." || v == "T" || v == "TRUE" || v == "1";
    }
    // Other namelist keys (ST, TREL, ...) are ignored.
  }
  return hdr;
}

// Shortest text that reads back as the same double.
std::string shortest(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

struct Entry {
  double value;
  std::size_t line;
};

template <class Key>
void record(std::map<Key, Entry>& table, const Key& key, double value,
            std::size_t line, const char* what) {
  auto [it, inserted] = table.try_emplace(key, Entry{value, line});
  if (inserted) return;
  if (std::abs(it->second.value - value) > kDuplicateTolerance) {
    std::ostringstream msg;
    msg << "conflicting duplicate " << what << ": value " << shortest(it->second.value)
        << " (line " << it->second.line << ") versus " << shortest(value);
    throw ParseError(line, msg.str());
  }
  it->second = Entry{value, line};
}

using OrbitKey = std::array<std::size_t, 4>;

OrbitKey canonical_orbit(std::size_t i, std::size_t j, std::size_t k,
                         std::size_t l) {
  if (i < j) std::swap(i, j);
  if (k < l) std::swap(k, l);
  if (std::make_pair(i, j) < std::make_pair(k, l)) {
    std::swap(i, k);
    std::swap(j, l);
  }
  return {i, j, k, l};
}

}  // namespace

MolecularHamiltonian parse_fcidump(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;

  // Namelist header: "&FCI ... &END" or "... /", possibly over several lines.
  std::string header_text;
  bool started = false;
  bool terminated = false;
  std::size_t header_line = 0;
  while (!terminated && std::getline(in, line)) {
    ++line_no;
    std::string u = upper(line);
    if (!started) {
      const auto first = u.find_first_not_of(" \t\r");
      if (first == std::string::npos) continue;
      if (u.compare(first, 4, "&FCI") != 0 && u.compare(first, 4, "$FCI") != 0)
        throw ParseError(line_no, "expected FCIDUMP header starting with &FCI");
      started = true;
      header_line = line_no;
      u = u.substr(first + 4);
      line = line.substr(first + 4);
    }
    std::size_t stop = std::string::npos;
    for (const char* term : {"&END", "$END", "/"}) {
      const auto pos = u.find(term);
      if (pos != std::string::npos) stop = std::min(stop, pos);
    }
    if (stop != std::string::npos) {
      header_text += ' ' + line.substr(0, stop);
      terminated = true;
    } else {
      header_text += ' ' + line;
    }
  }
  if (!started) throw ParseError(0, "empty input: missing FCIDUMP header");
  if (!terminated)
    throw ParseError(header_line, "FCIDUMP header is not terminated by &END or /");

  const Header hdr = parse_header(header_text, header_line);
  if (!hdr.norb) throw ParseError(header_line, "header is missing NORB");
  if (!hdr.nelec) throw ParseError(header_line, "header is missing NELEC");
  if (*hdr.norb < 0) throw ParseError(header_line, "NORB must be non-negative");
  if (hdr.uhf) throw ParseError(header_line, "UHF integral files are not supported");
  const auto n = static_cast<std::size_t>(*hdr.norb);
  if (*hdr.nelec < 0 || static_cast<std::size_t>(*hdr.nelec) > 2 * n)
    throw ParseError(header_line, "NELEC outside [0, 2*NORB]");
  if (n > 0 && !hdr.orbsym.empty() && hdr.orbsym.size() != n)
    throw ParseError(header_line, "ORBSYM length does not match NORB");

  std::map<OrbitKey, Entry> two_body;
  std::map<std::pair<std::size_t, std::size_t>, Entry> one_body;
  std::map<int, Entry> core;

  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    if (tokens.size() != 5)
      throw ParseError(line_no, "expected 'value i j k l', found " +
                                    std::to_string(tokens.size()) + " tokens");
    const auto value = to_double(tokens[0]);
    if (!value) throw ParseError(line_no, "non-numeric value '" + tokens[0] + "'");
    std::array<std::size_t, 4> idx{};
    for (int t = 0; t < 4; ++t) {
      const auto v = to_long(tokens[t + 1]);
      if (!v) throw ParseError(line_no, "non-integer index '" + tokens[t + 1] + "'");
      if (*v < 0 || *v > *hdr.norb)
        throw ParseError(line_no, "index " + tokens[t + 1] + " outside [0, " +
                                      std::to_string(n) + "]");
      idx[t] = static_cast<std::size_t>(*v);
    }
    const auto [i, j, k, l] = idx;
    if (i == 0 && j == 0 && k == 0 && l == 0) {
      record(core, 0, *value, line_no, "core energy");
    } else if (i > 0 && j > 0 && k == 0 && l == 0) {
      record(one_body, std::make_pair(std::max(i, j) - 1, std::min(i, j) - 1),
             *value, line_no, "one-electron integral");
    } else if (i > 0 && j == 0 && k == 0 && l == 0) {
      // Orbital energy.
    } else if (i > 0 && j > 0 && k > 0 && l > 0) {
      record(two_body, canonical_orbit(i - 1, j - 1, k - 1, l - 1), *value,
             line_no, "two-electron integral");
    } else {
      throw ParseError(line_no, "invalid index pattern");
    }
  }

  MolecularHamiltonian H = MolecularHamiltonian::zero(n, static_cast<int>(*hdr.nelec));
  H.ms2 = static_cast<int>(hdr.ms2);
  H.isym = static_cast<int>(hdr.isym);
  if (!hdr.orbsym.empty()) H.orbsym = hdr.orbsym;

  TwoBodyTensor eri(n);
  for (const auto& [key, entry] : two_body)
    eri.set_symmetric(key[0], key[1], key[2], key[3], entry.value);
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                            static_cast<Eigen::Index>(n));
  for (const auto& [key, entry] : one_body) {
    const auto a = static_cast<Eigen::Index>(key.first);
    const auto b = static_cast<Eigen::Index>(key.second);
    t(a, b) = entry.value;
    t(b, a) = entry.value;
  }
  if (!core.empty()) H.e_const = core.begin()->second.value;

  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      double fold = 0.0;
      for (std::size_t c = 0; c < n; ++c) fold += eri(a, c, c, b);
      H.h(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
          t(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) - 0.5 * fold;
    }
  for (std::size_t q = 0; q < eri.data().size(); ++q)
    H.g.data()[q] = 0.5 * eri.data()[q];
  return H;
}

MolecularHamiltonian parse_fcidump(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_fcidump(in);
}

MolecularHamiltonian read_fcidump(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open FCIDUMP file '" + path.string() + "'");
  try {
    return parse_fcidump(in);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path.string() + ": " + e.detail());
  }
}

void write_fcidump(std::ostream& out, const MolecularHamiltonian& H) {
  const std::size_t n = H.n_orb;
  out << "&FCI NORB=" << n << ",NELEC=" << H.n_elec << ",MS2=" << H.ms2 << ",\n";
  out << " ORBSYM=";
  for (std::size_t i = 0; i < n; ++i)
    out << (H.orbsym.size() == n ? H.orbsym[i] : 1) << ',';
  out << "\n ISYM=" << H.isym << ",\n&END\n";

  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::scientific << std::setprecision(16);
  auto emit = [&](double v, std::size_t i, std::size_t j, std::size_t k,
                  std::size_t l) {
    out << std::setw(24) << v << ' ' << std::setw(4) << i << ' ' << std::setw(4)
        << j << ' ' << std::setw(4) << k << ' ' << std::setw(4) << l << '\n';
  };

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      for (std::size_t k = 0; k <= i; ++k)
        for (std::size_t l = 0; l <= (k == i ? j : k); ++l) {
          const double v = 2.0 * H.g(i, j, k, l);
          if (v != 0.0) emit(v, i + 1, j + 1, k + 1, l + 1);
        }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      double t = H.h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      for (std::size_t k = 0; k < n; ++k) t += H.g(i, k, k, j);
      if (t != 0.0) emit(t, i + 1, j + 1, 0, 0);
    }
  emit(H.e_const, 0, 0, 0, 0);
  out.flags(flags);
  out.precision(precision);
}

std::string write_fcidump(const MolecularHamiltonian& H) {
  std::ostringstream os;
  write_fcidump(os, H);
  return os.str();
}

void write_fcidump(const std::filesystem::path& path,
                   const MolecularHamiltonian& H) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_fcidump(out, H);
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace bliss
