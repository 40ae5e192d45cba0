#include "steiner/catalog.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <sstream>

#include "steiner/errors.hpp"

namespace steiner::catalog {

namespace {

constexpr std::array<std::pair<Family, std::string_view>, 10> kFamilyNames{{
    {Family::B2_twisted, "2B2"},
    {Family::G2_twisted, "2G2"},
    {Family::F4_twisted, "2F4"},
    {Family::D4_triality, "3D4"},
    {Family::G2, "G2"},
    {Family::F4, "F4"},
    {Family::E6, "E6"},
    {Family::E6_twisted, "2E6"},
    {Family::E7, "E7"},
    {Family::E8, "E8"},
}};

std::string lowercase(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 digest failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out.push_back(kHex[md[i] >> 4]);
    out.push_back(kHex[md[i] & 15]);
  }
  return out;
}

// ------------------------------------------------------------------ TOML subset

struct Value {
  enum class Kind { String, Int, Bool, StringArray, IntArray } kind = Kind::String;
  std::string str;
  Integer integer;
  bool boolean = false;
  std::vector<std::string> strings;
  std::vector<Integer> ints;
  std::size_t line = 0;
};

struct RawEntry {
  std::string id;
  std::size_t line = 0;
  std::vector<std::pair<std::string, Value>> fields;
};

class TomlReader {
 public:
  TomlReader(std::string_view line, std::size_t line_no, std::string_view context)
      : text_(line), line_no_(line_no), context_(context) {}

  Value value() {
    Value v;
    v.line = line_no_;
    skip_ws();
    if (peek() == '"') {
      v.kind = Value::Kind::String;
      v.str = string();
    } else if (peek() == '[') {
      ++pos_;
      skip_ws();
      if (peek() == '"') {
        v.kind = Value::Kind::StringArray;
      } else {
        v.kind = Value::Kind::IntArray;
      }
      while (true) {
        skip_ws();
        if (peek() == ']') {
          ++pos_;
          break;
        }
        if (v.kind == Value::Kind::StringArray) {
          v.strings.push_back(string());
        } else {
          v.ints.push_back(integer());
        }
        skip_ws();
        if (peek() == ',') {
          ++pos_;
        } else if (peek() != ']') {
          fail("expected ',' or ']' in array");
        }
      }
    } else if (rest().starts_with("true")) {
      v.kind = Value::Kind::Bool;
      v.boolean = true;
      pos_ += 4;
    } else if (rest().starts_with("false")) {
      v.kind = Value::Kind::Bool;
      pos_ += 5;
    } else {
      v.kind = Value::Kind::Int;
      v.integer = integer();
    }
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] != '#') fail("trailing characters after value");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("catalog line " + std::to_string(line_no_) + " (" + std::string(context_) + "): " + msg,
                     line_no_);
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  std::string_view rest() const { return text_.substr(pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  std::string string() {
    if (peek() != '"') fail("expected string");
    ++pos_;
    std::string out;
    while (true) {
      if (pos_ >= text_.size()) fail("unterminated string");
      char c = text_[pos_++];
      if (c == '"') return out;
      if (c == '\\') {
        if (pos_ >= text_.size()) fail("unterminated escape");
        char esc = text_[pos_++];
        if (esc == '"' || esc == '\\') {
          out.push_back(esc);
        } else if (esc == 'n') {
          out.push_back('\n');
        } else {
          fail(std::string("unsupported escape \\") + esc);
        }
      } else {
        out.push_back(c);
      }
    }
  }

  Integer integer() {
    std::size_t start = pos_;
    if (peek() == '-' || peek() == '+') ++pos_;
    while (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '_') ++pos_;
    std::string digits;
    for (char c : text_.substr(start, pos_ - start))
      if (c != '_') digits.push_back(c);
    if (digits.empty() || digits == "-" || digits == "+") fail("expected a value");
    if (digits.front() == '+') digits.erase(0, 1);
    return Integer(digits);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_no_;
  std::string_view context_;
};

std::vector<RawEntry> read_entries(std::string_view text) {
  std::vector<RawEntry> entries;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') {
      if (end == text.size()) break;
      continue;
    }
    if (body.front() == '[') {
      if (!body.starts_with("[entry.") || body.back() != ']')
        throw ParseError("catalog line " + std::to_string(line_no) + ": expected [entry.<id>] section header",
                         line_no);
      std::string_view id = body.substr(7, body.size() - 8);
      if (id.empty() || std::any_of(id.begin(), id.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); }))
        throw ParseError("catalog line " + std::to_string(line_no) + ": invalid entry id", line_no);
      entries.push_back({std::string(id), line_no, {}});
    } else {
      std::size_t eq = body.find('=');
      if (eq == std::string_view::npos)
        throw ParseError("catalog line " + std::to_string(line_no) + ": expected key = value", line_no);
      std::string key(trim(body.substr(0, eq)));
      if (entries.empty())
        throw ParseError("catalog line " + std::to_string(line_no) + ": field '" + key + "' outside an entry",
                         line_no);
      RawEntry& entry = entries.back();
      std::string context = "entry " + entry.id + ", field " + key;
      for (const auto& [existing, _] : entry.fields)
        if (existing == key)
          throw ParseError("catalog line " + std::to_string(line_no) + " (" + context + "): duplicate field", line_no);
      TomlReader reader(body.substr(eq + 1), line_no, context);
      entry.fields.emplace_back(key, reader.value());
    }
    if (end == text.size()) break;
  }
  return entries;
}

// ------------------------------------------------------------------ entry build

class EntryBuilder {
 public:
  explicit EntryBuilder(const RawEntry& raw) : raw_(raw) {}

  CandidateEntry build() {
    CandidateEntry e;
    e.id = raw_.id;
    for (const auto& [key, value] : raw_.fields) {
      if (key == "family") {
        auto f = family_from_name(str(key, value));
        if (!f) fail(key, value, "unknown family '" + value.str + "'");
        e.family = *f;
        seen_family_ = true;
      } else if (key == "t_name") {
        e.t_name = str(key, value);
      } else if (key == "stab_name") {
        e.stab_name = str(key, value);
      } else if (key == "t_order") {
        e.t_order = poly(key, value);
        seen_t_ = true;
      } else if (key == "stab_order") {
        e.stab_order = poly(key, value);
        seen_stab_ = true;
      } else if (key == "out_coeff") {
        e.out_coeff = small_uint(key, value);
        seen_out_ = true;
      } else if (key == "p") {
        if (value.kind == Value::Kind::String && value.str == "any") continue;
        e.q.p = small_uint(key, value);
      } else if (key == "e_parity") {
        std::string s = str(key, value);
        if (s == "odd") {
          e.q.e_parity = Parity::Odd;
        } else if (s == "even") {
          e.q.e_parity = Parity::Even;
        } else if (s == "any") {
          e.q.e_parity = Parity::Any;
        } else {
          fail(key, value, "expected \"odd\", \"even\" or \"any\"");
        }
      } else if (key == "e_min") {
        e.q.e_min = small_uint(key, value);
      } else if (key == "q_min") {
        e.q.q_min = integer(key, value);
      } else if (key == "q_fixed") {
        e.q.q_fixed = integer(key, value);
      } else if (key == "q_excluded") {
        if (value.kind != Value::Kind::IntArray) fail(key, value, "expected an integer list");
        e.q.q_excluded = value.ints;
      } else if (key == "subdegrees") {
        if (value.kind != Value::Kind::StringArray) fail(key, value, "expected a list of polynomial strings");
        for (const std::string& s : value.strings) e.subdegrees.push_back(parse_poly(key, value, s));
      } else if (key == "subdegrees_complete") {
        if (value.kind != Value::Kind::Bool) fail(key, value, "expected true or false");
        e.subdegrees_complete = value.boolean;
      } else if (key == "known_k") {
        e.known_k = poly(key, value);
      } else if (key == "known_family") {
        if (value.kind != Value::Kind::Bool) fail(key, value, "expected true or false");
        e.known_family = value.boolean;
      } else if (key == "notes") {
        e.notes = str(key, value);
      } else {
        fail(key, value, "unknown field");
      }
    }
    if (!seen_family_) missing("family");
    if (!seen_t_) missing("t_order");
    if (!seen_stab_) missing("stab_order");
    if (!seen_out_) missing("out_coeff");
    if (e.t_name.empty()) e.t_name = family_name(e.family);
    if (e.stab_name.empty()) e.stab_name = e.id;
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& key, const Value& v, const std::string& msg) const {
    throw ParseError("catalog line " + std::to_string(v.line) + " (entry " + raw_.id + ", field " + key + "): " + msg,
                     v.line);
  }

  [[noreturn]] void missing(const std::string& key) const {
    throw ParseError("catalog line " + std::to_string(raw_.line) + " (entry " + raw_.id + "): missing field " + key,
                     raw_.line);
  }

  const std::string& str(const std::string& key, const Value& v) const {
    if (v.kind != Value::Kind::String) fail(key, v, "expected a string");
    return v.str;
  }

  const Integer& integer(const std::string& key, const Value& v) const {
    if (v.kind != Value::Kind::Int) fail(key, v, "expected an integer");
    return v.integer;
  }

  unsigned small_uint(const std::string& key, const Value& v) const {
    const Integer& i = integer(key, v);
    if (i < 0 || i > 1'000'000'000) fail(key, v, "out of range");
    return static_cast<unsigned>(i.get_ui());
  }

  QPoly parse_poly(const std::string& key, const Value& v, const std::string& text) const {
    try {
      return polycert::poly_parse(text);
    } catch (const ParseError& err) {
      fail(key, v, err.what());
    }
  }

  QPoly poly(const std::string& key, const Value& v) const { return parse_poly(key, v, str(key, v)); }

  const RawEntry& raw_;
  bool seen_family_ = false;
  bool seen_t_ = false;
  bool seen_stab_ = false;
  bool seen_out_ = false;
};

std::string canonical_form(const CandidateEntry& e) {
  std::ostringstream os;
  os << "id=" << e.id << '\n'
     << "family=" << family_name(e.family) << '\n'
     << "t_name=" << e.t_name << '\n'
     << "stab_name=" << e.stab_name << '\n'
     << "t_order=" << polycert::poly_print(e.t_order) << '\n'
     << "stab_order=" << polycert::poly_print(e.stab_order) << '\n'
     << "out_coeff=" << e.out_coeff << '\n'
     << "p=" << (e.q.p ? std::to_string(*e.q.p) : "any") << '\n'
     << "e_parity=" << (e.q.e_parity == Parity::Odd ? "odd" : e.q.e_parity == Parity::Even ? "even" : "any") << '\n'
     << "e_min=" << e.q.e_min << '\n'
     << "q_min=" << e.q.q_min.get_str() << '\n'
     << "q_fixed=" << (e.q.q_fixed ? e.q.q_fixed->get_str() : "") << '\n'
     << "q_excluded=";
  for (const Integer& x : e.q.q_excluded) os << x.get_str() << ',';
  os << "\nsubdegrees=";
  for (const QPoly& d : e.subdegrees) os << polycert::poly_print(d) << ';';
  os << "\nsubdegrees_complete=" << (e.subdegrees_complete ? "true" : "false");
  os << "\nknown_k=" << (e.known_k ? polycert::poly_print(*e.known_k) : "") << '\n'
     << "known_family=" << (e.known_family ? "true" : "false") << '\n'
     << "notes=" << e.notes << '\n';
  return os.str();
}

[[noreturn]] void invalid(const CandidateEntry& e, const std::string& msg) {
  throw ValidationError("catalog entry " + e.id + ": " + msg);
}

}  // namespace

std::string_view family_name(Family f) {
  for (const auto& [family, name] : kFamilyNames)
    if (family == f) return name;
  return "?";
}

std::optional<Family> family_from_name(std::string_view name) {
  for (const auto& [family, n] : kFamilyNames)
    if (n == name) return family;
  return std::nullopt;
}

bool QConstraints::admits(const arith::PrimePower& pq) const {
  if (q_fixed) return pq.q == *q_fixed;
  if (p && pq.p != *p) return false;
  if (e_parity == Parity::Odd && pq.e % 2 == 0) return false;
  if (e_parity == Parity::Even && pq.e % 2 == 1) return false;
  if (pq.e < e_min || pq.q < q_min) return false;
  return std::find(q_excluded.begin(), q_excluded.end(), pq.q) == q_excluded.end();
}

Integer CandidateEntry::v_at(const Integer& q) const {
  if (v_poly) return polycert::poly_eval_integer(*v_poly, q);
  Integer t = polycert::poly_eval_integer(t_order, q);
  Integer s = polycert::poly_eval_integer(stab_order, q);
  if (s <= 0 || t % s != 0)
    throw ValidationError("catalog entry " + id + ": |T_alpha| does not divide |T| at q = " + q.get_str());
  return t / s;
}

std::vector<arith::PrimePower> CandidateEntry::admitted_upto(std::uint64_t limit) const {
  if (q.q_fixed) {
    auto pq = arith::as_prime_power(*q.q_fixed);
    if (!pq) return {};
    return {*pq};
  }
  std::vector<arith::PrimePower> out;
  if (limit < 2) return out;
  for (const arith::PrimePower& pq : arith::prime_powers_upto(limit))
    if (q.admits(pq)) out.push_back(pq);
  return out;
}

bool CandidateEntry::is_known_survivor(const Integer& qv, const Integer& k) const {
  if (known_family) return true;
  return known_k && polycert::poly_eval(*known_k, qv) == Rational(k);
}

void validate_entry(const CandidateEntry& e) {
  using polycert::poly_eval;
  if (e.out_coeff < 1) invalid(e, "out_coeff must be >= 1");
  if (e.t_order.is_zero() || e.stab_order.is_zero()) invalid(e, "orders must be nonzero polynomials");
  if (e.q.p && !arith::is_prime(Integer(static_cast<unsigned long>(*e.q.p)))) invalid(e, "p must be prime");
  if (e.q.e_min < 1) invalid(e, "e_min must be >= 1");
  if (e.q.q_fixed) {
    auto pq = arith::as_prime_power(*e.q.q_fixed);
    if (!pq) invalid(e, "q_fixed must be a prime power");
    if (e.q.p && pq->p != *e.q.p) invalid(e, "q_fixed is not a power of p");
    if (e.t_order.degree() > 0 || e.stab_order.degree() > 0)
      invalid(e, "fixed-q entries store integer orders, not polynomials in q");
  }

  std::vector<arith::PrimePower> sample = e.admitted_upto(100);
  if (sample.empty()) invalid(e, "q constraints admit no prime power");
  for (const arith::PrimePower& pq : sample) {
    Rational t = poly_eval(e.t_order, pq.q);
    Rational s = poly_eval(e.stab_order, pq.q);
    std::string at = " at q = " + pq.q.get_str();
    if (t.get_den() != 1 || t <= 0) invalid(e, "|T| is not a positive integer" + at);
    if (s.get_den() != 1 || s <= 0) invalid(e, "|T_alpha| is not a positive integer" + at);
    Integer ti = t.get_num(), si = s.get_num();
    if (ti % si != 0) invalid(e, "|T_alpha| does not divide |T|" + at);
    Integer v = ti / si;
    if (v < 2) invalid(e, "v < 2" + at);
    if (e.v_poly && poly_eval(*e.v_poly, pq.q) != Rational(v)) invalid(e, "v_poly disagrees with |T|/|T_alpha|" + at);
    if (!e.subdegrees.empty() && pq.q <= 50) {
      Integer sum = 1;
      for (const QPoly& d : e.subdegrees) {
        Rational dv = poly_eval(d, pq.q);
        if (dv.get_den() != 1 || dv < 1) invalid(e, "subdegree is not a positive integer" + at);
        sum += dv.get_num();
      }
      if (e.subdegrees_complete && sum != v) invalid(e, "1 + sum of subdegrees != v" + at);
      if (!e.subdegrees_complete && sum >= v) invalid(e, "1 + sum of listed subdegrees >= v" + at);
    }
  }
}

Catalog::Catalog(std::vector<CandidateEntry> entries) : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    auto [it, inserted] = index_.emplace(lowercase(entries_[i].id), i);
    if (!inserted) throw ValidationError("duplicate catalog id " + entries_[i].id);
  }
}

const CandidateEntry* Catalog::find(std::string_view id) const {
  auto it = index_.find(lowercase(id));
  return it == index_.end() ? nullptr : &entries_[it->second];
}

const CandidateEntry& Catalog::at(std::string_view id) const {
  if (const CandidateEntry* e = find(id)) return *e;
  throw UnknownCandidate("unknown candidate '" + std::string(id) + "'");
}

Catalog catalog_parse(std::string_view text) {
  std::vector<CandidateEntry> entries;
  for (const RawEntry& raw : read_entries(text)) {
    CandidateEntry e = EntryBuilder(raw).build();
    polycert::DivMod dm = polycert::divmod(e.t_order, e.stab_order);
    if (dm.remainder.is_zero()) e.v_poly = dm.quotient;
    validate_entry(e);
    e.checksum = sha256_hex(canonical_form(e));
    entries.push_back(std::move(e));
  }
  return Catalog(std::move(entries));
}

Catalog catalog_load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open catalog file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return catalog_parse(buf.str());
}

const Catalog& catalog_builtin() {
  static const Catalog builtin = catalog_parse(catalog_builtin_text());
  return builtin;
}

}  // namespace steiner::catalog
