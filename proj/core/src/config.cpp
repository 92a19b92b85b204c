#include "piforge/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "piforge/errors.hpp"

namespace piforge {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return std::string(s.substr(b, e - b));
}

template <typename T>
T positive(const std::string& v, std::size_t line, std::size_t col) {
  T out{};
  const auto* end = v.data() + v.size();
  auto [p, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || p != end || !(out > T(0)))
    throw ParseError("expected a positive number, got '" + v + "'", line, col);
  return out;
}

using Setter = std::function<void(RunConfig&, const std::string&, std::size_t, std::size_t)>;

template <typename T>
Setter field(T RunConfig::*m) {
  return [m](RunConfig& c, const std::string& v, std::size_t l, std::size_t col) {
    c.*m = positive<T>(v, l, col);
  };
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> m = {
      {"digits_numeric", field(&RunConfig::digits_numeric)},
      {"digits_companion", field(&RunConfig::digits_companion)},
      {"digits_slow", field(&RunConfig::digits_slow)},
      {"slow_gap", field(&RunConfig::slow_gap)},
      {"order_rational", field(&RunConfig::order_rational)},
      {"order_surd", field(&RunConfig::order_surd)},
      {"order_involution", field(&RunConfig::order_involution)},
      {"term_cap", field(&RunConfig::term_cap)},
      {"leaf_size", field(&RunConfig::leaf_size)},
      {"workers", field(&RunConfig::workers)},
      {"pi_digits", field(&RunConfig::pi_digits)},
      {"pmax", field(&RunConfig::pmax)},
      {"oracle_pmax", field(&RunConfig::oracle_pmax)},
      {"modular_digits", field(&RunConfig::modular_digits)},
  };
  return m;
}

}  // namespace

RunConfig RunConfig::parse(std::string_view text) {
  RunConfig c;
  std::size_t number = 0, pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++number;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    const std::size_t eq = raw.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", number, 1);
    const std::string key = trim(raw.substr(0, eq));
    const auto it = setters().find(key);
    if (it == setters().end()) throw ParseError("unknown config key '" + key + "'", number, 1);
    it->second(c, trim(raw.substr(eq + 1)), number, eq + 2);
  }
  return c;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::InvalidArgument, "cannot open config '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

RunConfig RunConfig::resolve(const std::optional<std::filesystem::path>& explicit_path) {
  if (explicit_path) return load(*explicit_path);
  if (const char* env = std::getenv("PIFORGE_CONFIG"); env && *env) return load(env);
  return {};
}

std::string RunConfig::serialize() const {
  std::ostringstream os;
  os << "digits_numeric = " << digits_numeric << '\n'
     << "digits_companion = " << digits_companion << '\n'
     << "digits_slow = " << digits_slow << '\n'
     << "slow_gap = " << slow_gap << '\n'
     << "order_rational = " << order_rational << '\n'
     << "order_surd = " << order_surd << '\n'
     << "order_involution = " << order_involution << '\n'
     << "term_cap = " << term_cap << '\n'
     << "leaf_size = " << leaf_size << '\n'
     << "workers = " << workers << '\n'
     << "pi_digits = " << pi_digits << '\n'
     << "pmax = " << pmax << '\n'
     << "oracle_pmax = " << oracle_pmax << '\n'
     << "modular_digits = " << modular_digits << '\n';
  return os.str();
}

}  // namespace piforge
