#pragma once

#include <charconv>
#include <cstdint>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "heffter/construct.hpp"
#include "heffter/cycles.hpp"
#include "heffter/designs.hpp"
#include "heffter/error.hpp"
#include "heffter/field.hpp"
#include "heffter/packing.hpp"

namespace heffter {

/// Line-oriented text certificate:
///
///   HEFFTER-CERT 1
///   # comment
///   field p=71 n=1 q=71 modulus=64,1 generator=7
///   kind space
///   param k=5
///   halfset 1 2 ...
///   class P1
///   block 1 24 25 43 49
///   end
///
/// Comments may appear anywhere on input and are written back right after
/// the version line.
struct Certificate {
  static constexpr std::string_view magic = "HEFFTER-CERT 1";
  static constexpr std::string_view kinds[] = {"halfset", "system", "space", "ruler", "packing", "netseed", "basecycles"};

  std::vector<std::string> comments;
  std::uint32_t p = 0, n = 0;
  std::vector<std::uint32_t> modulus;
  std::uint32_t generator = 0;
  std::string kind;
  std::vector<std::pair<std::string, std::string>> params;
  std::optional<std::vector<Elem>> halfset;
  std::vector<std::pair<std::string, BlockClass>> classes;

  friend bool operator==(const Certificate&, const Certificate&) = default;

  Field field() const { return Field::build(p, n, modulus, generator); }

  void set_field(const Field& F) {
    const auto pp = as_prime_power(F.order());
    p = static_cast<std::uint32_t>(pp->first);
    n = pp->second;
    modulus = F.modulus();
    generator = F.generator().code;
  }

  std::optional<std::string> param(std::string_view key) const {
    for (const auto& [k, v] : params)
      if (k == key) return v;
    return std::nullopt;
  }

  std::uint64_t param_uint(std::string_view key) const {
    const auto v = param(key);
    if (!v) throw Error(Errc::parse_error, "missing param " + std::string(key));
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
    if (ec != std::errc{} || ptr != v->data() + v->size())
      throw Error(Errc::parse_error, "param " + std::string(key) + " is not a number");
    return out;
  }
};

inline std::string serialize(const Certificate& c) {
  std::ostringstream os;
  os << Certificate::magic << "\n";
  for (const auto& line : c.comments) os << "#" << (line.empty() ? "" : " ") << line << "\n";
  os << "field p=" << c.p << " n=" << c.n << " q=" << ipow(c.p, c.n) << " modulus=";
  for (std::size_t i = 0; i < c.modulus.size(); ++i) os << (i ? "," : "") << c.modulus[i];
  os << " generator=" << c.generator << "\n";
  os << "kind " << c.kind << "\n";
  for (const auto& [k, v] : c.params) os << "param " << k << "=" << v << "\n";
  auto codes = [&](std::string_view head, std::span<const Elem> xs) {
    os << head;
    for (Elem x : xs) os << " " << x.code;
    os << "\n";
  };
  if (c.halfset) codes("halfset", *c.halfset);
  for (const auto& [name, blocks] : c.classes) {
    os << "class " << name << "\n";
    for (const auto& b : blocks) codes("block", b);
  }
  os << "end\n";
  return os.str();
}

namespace detail {

inline std::vector<std::string_view> split_words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && s[i] == ' ') ++i;
    const std::size_t j = s.find(' ', i);
    const std::size_t end = j == std::string_view::npos ? s.size() : j;
    if (end > i) out.push_back(s.substr(i, end - i));
    i = end;
  }
  return out;
}

inline std::uint32_t parse_code(std::string_view w, std::size_t line) {
  std::uint32_t v = 0;
  const auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
  if (ec != std::errc{} || ptr != w.data() + w.size())
    throw Error(Errc::parse_error, "line " + std::to_string(line) + ": bad number '" + std::string(w) + "'");
  return v;
}

}  // namespace detail

/// Parses a certificate; throws ParseError naming the line. The field
/// header is checked to describe a valid field.
inline Certificate parse_certificate(std::string_view text) {
  Certificate c;
  std::size_t lineno = 0, pos = 0;
  bool seen_magic = false, seen_field = false, seen_end = false;
  auto fail = [&](const std::string& what) -> Error {
    return Error(Errc::parse_error, "line " + std::to_string(lineno) + ": " + what);
  };
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (seen_end) {
      if (!line.empty()) throw fail("content after end");
      continue;
    }
    if (!seen_magic) {
      if (line != Certificate::magic) throw fail("expected '" + std::string(Certificate::magic) + "'");
      seen_magic = true;
      continue;
    }
    if (line.empty()) continue;
    if (line.front() == '#') {
      line.remove_prefix(1);
      if (!line.empty() && line.front() == ' ') line.remove_prefix(1);
      c.comments.emplace_back(line);
      continue;
    }
    const auto words = detail::split_words(line);
    const std::string_view head = words.front();
    if (head == "field") {
      if (seen_field) throw fail("second field header");
      seen_field = true;
      std::optional<std::uint64_t> q;
      for (std::size_t i = 1; i < words.size(); ++i) {
        const auto eq = words[i].find('=');
        if (eq == std::string_view::npos) throw fail("field attribute without '='");
        const auto key = words[i].substr(0, eq), val = words[i].substr(eq + 1);
        if (key == "p") c.p = detail::parse_code(val, lineno);
        else if (key == "n") c.n = detail::parse_code(val, lineno);
        else if (key == "q") q = detail::parse_code(val, lineno);
        else if (key == "generator") c.generator = detail::parse_code(val, lineno);
        else if (key == "modulus") {
          std::size_t s = 0;
          while (s <= val.size()) {
            std::size_t comma = val.find(',', s);
            if (comma == std::string_view::npos) comma = val.size();
            c.modulus.push_back(detail::parse_code(val.substr(s, comma - s), lineno));
            s = comma + 1;
          }
        } else {
          throw fail("unknown field attribute '" + std::string(key) + "'");
        }
      }
      if (c.p == 0 || c.n == 0 || c.modulus.empty() || !q) throw fail("incomplete field header");
      if (*q != ipow(c.p, c.n)) throw fail("q does not equal p^n");
      try {
        (void)c.field();
      } catch (const Error& e) {
        throw fail(std::string("invalid field: ") + e.what());
      }
    } else if (head == "kind") {
      if (!c.kind.empty() || words.size() != 2) throw fail("malformed kind line");
      c.kind = std::string(words[1]);
      if (std::find(std::begin(Certificate::kinds), std::end(Certificate::kinds), c.kind) == std::end(Certificate::kinds))
        throw fail("unknown kind '" + c.kind + "'");
    } else if (head == "param") {
      if (words.size() != 2 || words[1].find('=') == std::string_view::npos) throw fail("malformed param line");
      const auto eq = words[1].find('=');
      c.params.emplace_back(std::string(words[1].substr(0, eq)), std::string(words[1].substr(eq + 1)));
    } else if (head == "halfset") {
      if (c.halfset) throw fail("second halfset line");
      c.halfset.emplace();
      for (std::size_t i = 1; i < words.size(); ++i) c.halfset->push_back(Elem{detail::parse_code(words[i], lineno)});
    } else if (head == "class") {
      if (words.size() != 2) throw fail("class needs one name");
      c.classes.emplace_back(std::string(words[1]), BlockClass{});
    } else if (head == "block") {
      if (c.classes.empty()) throw fail("block outside a class");
      OrderedBlock b;
      for (std::size_t i = 1; i < words.size(); ++i) b.push_back(Elem{detail::parse_code(words[i], lineno)});
      if (b.empty()) throw fail("empty block");
      c.classes.back().second.push_back(std::move(b));
    } else if (head == "end") {
      if (words.size() != 1) throw fail("malformed end line");
      seen_end = true;
    } else {
      throw fail("unknown keyword '" + std::string(head) + "'");
    }
  }
  if (!seen_magic) throw Error(Errc::parse_error, "empty input");
  if (!seen_end) throw Error(Errc::parse_error, "missing end line (truncated file?)");
  if (!seen_field) throw Error(Errc::parse_error, "missing field header");
  if (c.kind.empty()) throw Error(Errc::parse_error, "missing kind");
  const std::uint64_t q = ipow(c.p, c.n);
  auto in_range = [&](std::span<const Elem> xs) {
    for (Elem x : xs)
      if (x.code >= q) throw Error(Errc::parse_error, "element code " + std::to_string(x.code) + " outside the field");
  };
  if (c.halfset) in_range(*c.halfset);
  for (const auto& [name, blocks] : c.classes)
    for (const auto& b : blocks) in_range(b);
  return c;
}

inline Certificate parse_certificate(std::istream& in) {
  std::ostringstream os;
  os << in.rdbuf();
  return parse_certificate(os.str());
}

// Builders for each kind.

inline Certificate certificate_for(const Field& F, const HeffterSpace& S, std::string_view kind = "space",
                                   std::string_view class_prefix = "P") {
  Certificate c;
  c.set_field(F);
  c.kind = kind;
  c.halfset = S.halfset;
  for (std::size_t i = 0; i < S.classes.size(); ++i)
    c.classes.emplace_back(std::string(class_prefix) + std::to_string(i + 1), S.classes[i]);
  return c;
}

inline Certificate certificate_for(const Field& F, const HeffterSystem& S) {
  Certificate c;
  c.set_field(F);
  c.kind = "system";
  c.halfset = S.halfset;
  c.classes.emplace_back("P1", S.blocks);
  return c;
}

inline Certificate halfset_certificate(const Field& F, const std::vector<Elem>& V) {
  Certificate c;
  c.set_field(F);
  c.kind = "halfset";
  c.halfset = V;
  return c;
}

inline Certificate ruler_certificate(const Field& F, std::uint32_t k, const DifferencePacking& rulers) {
  Certificate c;
  c.set_field(F);
  c.kind = rulers.size() == 1 ? "ruler" : "packing";
  c.params.emplace_back("k", std::to_string(k));
  c.classes.emplace_back(c.kind, rulers);
  return c;
}

inline Certificate netseed_certificate(const Field& F, const NetSeed& seed) {
  Certificate c;
  c.set_field(F);
  c.kind = "netseed";
  c.params.emplace_back("n", std::to_string(seed.n));
  c.params.emplace_back("x", std::to_string(seed.x.code));
  c.classes.emplace_back("Y", BlockClass{seed.Y});
  return c;
}

inline Certificate basecycles_certificate(const Field& F, const std::vector<std::vector<Cycle>>& sets) {
  Certificate c;
  c.set_field(F);
  c.kind = "basecycles";
  for (std::size_t i = 0; i < sets.size(); ++i) c.classes.emplace_back("F" + std::to_string(i + 1), sets[i]);
  return c;
}

// Extraction.

inline HeffterSpace space_of(const Certificate& c) {
  if (!c.halfset) throw Error(Errc::parse_error, "certificate has no halfset");
  HeffterSpace S;
  S.halfset = *c.halfset;
  for (const auto& [name, blocks] : c.classes) S.classes.push_back(blocks);
  return S;
}

inline DifferencePacking rulers_of(const Certificate& c) {
  DifferencePacking out;
  for (const auto& [name, blocks] : c.classes) out.insert(out.end(), blocks.begin(), blocks.end());
  return out;
}

inline NetSeed netseed_of(const Certificate& c) {
  if (c.classes.size() != 1 || c.classes[0].second.size() != 1) throw Error(Errc::parse_error, "netseed needs one Y block");
  NetSeed s;
  s.n = static_cast<std::uint32_t>(c.param_uint("n"));
  s.x = Elem{static_cast<std::uint32_t>(c.param_uint("x"))};
  s.Y = c.classes[0].second[0];
  return s;
}

inline std::vector<std::vector<Cycle>> cycle_sets_of(const Certificate& c) {
  std::vector<std::vector<Cycle>> out;
  for (const auto& [name, blocks] : c.classes) out.push_back(blocks);
  return out;
}

/// Outcome of checking a certificate against the verifier for its kind.
struct CertificateReport {
  bool valid = false;
  std::string kind;
  std::string parameters;
  std::optional<Rational> density;
  std::vector<std::string> violations;
  std::vector<std::pair<std::string, std::string>> extra;

  std::string summary() const {
    std::ostringstream os;
    os << (valid ? "VALID " : "INVALID ") << kind;
    if (!parameters.empty()) os << " " << parameters;
    os << "\n";
    if (density) os << "density " << format_rational(*density) << "\n";
    for (const auto& [k, v] : extra) os << k << " " << v << "\n";
    for (const auto& v : violations) os << "violation " << v << "\n";
    return os.str();
  }

  std::string structured() const {
    std::ostringstream os;
    os << "valid=" << (valid ? "true" : "false") << "\n";
    os << "kind=" << kind << "\n";
    if (!parameters.empty()) os << "parameters=" << parameters << "\n";
    if (density) os << "density=" << format_rational(*density) << "\n";
    for (const auto& [k, v] : extra) os << k << "=" << v << "\n";
    os << "violations=" << violations.size() << "\n";
    for (std::size_t i = 0; i < violations.size(); ++i) os << "violation." << i << "=" << violations[i] << "\n";
    return os.str();
  }
};

namespace detail {

inline CertificateReport from_design(const DesignReport& d) {
  CertificateReport r;
  r.valid = d.valid();
  r.kind = std::string(kind_name(d.kind));
  r.parameters = d.parameters();
  r.density = d.density;
  r.violations = d.violations;
  return r;
}

}  // namespace detail

/// Runs the verifier matching the certificate kind. Structural faults in the
/// object (wrong shape for the kind) are reported as violations, not thrown.
inline CertificateReport verify_certificate(const Certificate& c) {
  const Field F = c.field();
  try {
    if (c.kind == "halfset") {
      CertificateReport r;
      r.kind = "halfset";
      if (!c.halfset) r.violations.push_back("no halfset line");
      else if (auto why = half_set_problem(F, std::span<const Elem>(*c.halfset))) r.violations.push_back(*why);
      if (c.halfset) r.parameters = "(" + std::to_string(c.halfset->size()) + ")";
      r.valid = r.violations.empty();
      return r;
    }
    if (c.kind == "system") {
      if (!c.halfset || c.classes.size() != 1) return {false, "system", "", {}, {"a system needs a halfset and one class"}, {}};
      return detail::from_design(verify_heffter_system(F, HeffterSystem{*c.halfset, c.classes[0].second}));
    }
    if (c.kind == "space") {
      if (!c.halfset) return {false, "space", "", {}, {"no halfset line"}, {}};
      return detail::from_design(verify_heffter_space(F, space_of(c)));
    }
    if (c.kind == "ruler" || c.kind == "packing") {
      const auto k = static_cast<std::uint32_t>(c.param_uint("k"));
      const auto rulers = rulers_of(c);
      if (c.kind == "ruler" && rulers.size() != 1) return {false, "ruler", "", {}, {"a ruler certificate holds one block"}, {}};
      auto r = detail::from_design(c.kind == "ruler" ? verify_ruler(F, k, rulers[0]) : verify_packing(F, k, rulers));
      return r;
    }
    if (c.kind == "netseed") {
      const NetSeed seed = netseed_of(c);
      CertificateReport r;
      r.kind = "netseed";
      try {
        check_net_seed(F, seed);
        const auto rep = verify_heffter_space(F, net_via_roots(F, seed).space);
        r.parameters = rep.parameters();
        r.density = rep.density;
        r.extra.emplace_back("net", std::string(kind_name(rep.kind)));
        for (const auto& v : rep.violations) r.violations.push_back(v);
      } catch (const Error& e) {
        r.violations.push_back(e.what());
      }
      r.valid = r.violations.empty();
      return r;
    }
    if (c.kind == "basecycles") {
      CertificateReport r;
      r.kind = "basecycles";
      const auto sets = cycle_sets_of(c);
      for (std::size_t i = 0; i < sets.size(); ++i) {
        const auto rep = verify_base_cycles(F, sets[i]);
        if (!rep.ok) {
          std::istringstream lines(rep.summary());
          std::string line;
          std::getline(lines, line);
          while (std::getline(lines, line)) r.violations.push_back(c.classes[i].first + ": " + line.substr(line.find(' ') + 1));
        }
      }
      std::size_t pairs = 0;
      if (r.violations.empty())
        for (std::size_t i = 0; i < sets.size(); ++i)
          for (std::size_t j = i + 1; j < sets.size(); ++j) {
            ++pairs;
            const auto o = base_cycles_orthogonal(F, sets[i], sets[j]);
            if (!o.orthogonal)
              r.violations.push_back(c.classes[i].first + " and " + c.classes[j].first + " share " +
                                     std::to_string(o.shared) + " edges in one cycle pair");
          }
      const std::size_t k = sets.empty() || sets[0].empty() ? 0 : sets[0][0].size();
      r.parameters = "(" + std::to_string(F.order()) + "," + std::to_string(k) + ";" + std::to_string(sets.size()) + ")";
      r.extra.emplace_back("orthogonal_pairs", std::to_string(r.violations.empty() ? pairs : 0));
      r.valid = r.violations.empty();
      return r;
    }
  } catch (const Error& e) {
    if (e.code() == Errc::parse_error) throw;
    return {false, c.kind, "", {}, {e.what()}, {}};
  }
  throw Error(Errc::parse_error, "unknown kind " + c.kind);
}

}  // namespace heffter
